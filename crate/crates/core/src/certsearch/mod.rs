//! End-to-end search for finite groups violating an iterated identity:
//! cyclic groups for words with a nonzero exponent sum, `SL(2)` over small
//! fields otherwise. Results are emitted as verifiable certificates.

mod bounds;
mod certificate;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use bounds::{theoretical_bounds, BoundsReport};
pub use certificate::{
    coprime_modulus, cyclic_step, verify_certificate, verify_certificate_json, CertField, Certificate,
    CertificateKind, Witness, SCHEMA_VERSION,
};

use crate::dynamics::{verbal_iterates, DynamicsError, Sl2VerbalGraph, TwistedSolution};
use crate::freegroup::{Generator, Word, WordError};
use crate::gfield::{is_prime, sl2_order, sqrt_or_extend, Field, FieldError, Matrix2, DEFAULT_SL2_BUDGET};
use crate::symbolic::{y_degenerate_mod, IntMatrix2};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CertError {
    #[error("the word is freely trivial")]
    TrivialWord,
    #[error("every exponent sum is zero; the cyclic construction does not apply")]
    CommutatorBranch,
    #[error("system size must be at least 1")]
    InvalidSystemSize,
    #[error("matrix has zero determinant")]
    DetZero,
    #[error("no witness within the budget after {cells_tried} fields; last field tried: {}", frontier_text(.frontier))]
    BudgetExhausted {
        frontier: Option<FieldCell>,
        cells_tried: usize,
    },
    #[error("the normalized point satisfies neither sign of the Frobenius relation")]
    NotTwisted,
    #[error("malformed certificate: {0}")]
    Malformed(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

fn frontier_text(f: &Option<FieldCell>) -> String {
    match f {
        Some(c) => format!("F_{}^{} (order {})", c.q, c.k, c.order),
        None => "none".into(),
    }
}

/// One `(q, k)` cell of the field search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCell {
    pub q: u64,
    pub k: usize,
    pub order: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_field_order: u64,
    pub max_prime: u64,
    pub max_extension_degree: usize,
    pub time_limit: Duration,
    /// Cap on `|SL(2, F)|` for a single functional-graph search.
    pub sl2_budget: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_field_order: 10_000,
            max_prime: 10_000,
            max_extension_degree: 4,
            time_limit: Duration::from_secs(60),
            sl2_budget: DEFAULT_SL2_BUDGET,
        }
    }
}

impl SearchBudget {
    /// Fields `F_{q^k}` with `q >= 3`, ascending by order, ties to smaller `q`.
    pub fn cells(&self) -> Vec<FieldCell> {
        let mut out = Vec::new();
        for q in (3..=self.max_prime).filter(|&q| is_prime(q)) {
            if q > self.max_field_order {
                break;
            }
            let mut order = 1u64;
            for k in 1..=self.max_extension_degree {
                match order.checked_mul(q) {
                    Some(o) if o <= self.max_field_order => order = o,
                    _ => break,
                }
                out.push(FieldCell { q, k, order });
            }
        }
        out.sort_by_key(|c| (c.order, c.q));
        out
    }
}

/// Certificate in `Z/M` for a word with a nonzero exponent sum. The word
/// acts as `x_1 -> a x_1 + sum_j b_j x_j` on residues.
pub fn cyclic_counterexample(w: &Word) -> Result<Certificate, CertError> {
    let w = w.reduce();
    let m = w.alphabet_size();
    let sums: Vec<i64> = (0..m).map(|i| w.exponent_sum(Generator(i))).collect();
    let a = sums[0];
    let (modulus, values) = if a != 0 {
        let modulus = coprime_modulus(a);
        let mut values = vec![0u64; m];
        values[0] = 1;
        (modulus, values)
    } else {
        let j = sums.iter().position(|&e| e != 0).ok_or(CertError::CommutatorBranch)?;
        let b = sums[j];
        let modulus = coprime_modulus(b);
        let mut values = vec![0u64; m];
        values[j] = 1;
        values[0] = b.rem_euclid(modulus as i64) as u64;
        (modulus, values)
    };
    // the orbit of x_1 is purely periodic: x -> a x + c with a a unit
    let mut state = values.clone();
    let mut period = 0;
    loop {
        state[0] = cyclic_step(&w, &state, modulus);
        period += 1;
        if state[0] == values[0] {
            break;
        }
    }
    Ok(Certificate {
        schema_version: SCHEMA_VERSION,
        word: w.to_string(),
        kind: CertificateKind::Cyclic,
        field: CertField::Cyclic { m: modulus },
        y: Vec::new(),
        witness: Witness::Residues(values),
        period,
        group_order: modulus.to_string(),
        search_meta: serde_json::json!({
            "branch": "cyclic",
            "exponent_sums": sums,
        }),
    })
}

/// `x / sqrt(det x)`, in `field` or in its quadratic extension.
pub fn normalize_to_sl2(x: &Matrix2, field: &Field) -> Result<(Field, Matrix2), CertError> {
    let det = x.det(field);
    if field.is_zero(&det) {
        return Err(CertError::DetZero);
    }
    let out = sqrt_or_extend(&det, field)?;
    let target = out.field;
    let x = match &out.embedding {
        Some(e) => x.map(|a| e.apply(a)),
        None => x.clone(),
    };
    let inv = target.inv(&out.root)?;
    Ok((target.clone(), x.scale(&inv, &target)))
}

/// Turns a solution `a` of `H(a) = a^Q` (with `H` built from `w` and `y`)
/// into a point `z = ±a / sqrt(det a)` of `SL(2)` satisfying
/// `w(z, ȳ) = z^Q` entrywise, so `z` is periodic for `x -> w(x, ȳ)`.
pub fn twisted_to_periodic(
    sol: &TwistedSolution,
    w: &Word,
    y: &IntMatrix2,
) -> Result<(Field, Matrix2), CertError> {
    if sol.point.len() != 4 {
        return Err(CertError::Malformed(format!("{} coordinates, expected 4", sol.point.len())));
    }
    let a = Matrix2 {
        entries: sol.point.clone().try_into().expect("four coordinates"),
    };
    let (field, z) = normalize_to_sl2(&a, &sol.field)?;
    let y_bar = y.reduce(&field);
    let minus_one = field.neg(&field.one());
    for candidate in [z.clone(), z.scale(&minus_one, &field)] {
        let image = &verbal_iterates(w, &candidate, &y_bar, &field, 1)?[0];
        if *image == candidate.map(|e| field.pow(e, sol.q_power)) {
            return Ok((field, candidate));
        }
    }
    Err(CertError::NotTwisted)
}

/// Searches for a certificate that `w` is not an iterated identity.
///
/// Words with a nonzero exponent sum get a cyclic certificate. Otherwise the
/// word is brought to two letters and fields are scanned in ascending order;
/// the first field with a periodic point off the identity wins, and within
/// it the point with the smallest period (then smallest rank).
pub fn counterexample_search(w: &Word, budget: &SearchBudget) -> Result<Certificate, CertError> {
    let reduced = w.reduce();
    if reduced.is_empty() {
        return Err(CertError::TrivialWord);
    }
    let has_nonzero_sum = (0..reduced.alphabet_size()).any(|i| reduced.exponent_sum(Generator(i)) != 0);
    if has_nonzero_sum {
        let mut cert = cyclic_counterexample(&reduced)?;
        cert.search_meta["original_word"] = w.to_string().into();
        return Ok(cert);
    }
    let two = reduced.two_letter_reduction()?;
    let y = IntMatrix2::default_y();
    let y_ints = y.to_i64().expect("small entries");
    let start = Instant::now();
    let mut tried: Vec<serde_json::Value> = Vec::new();
    let mut frontier = None;
    for cell in budget.cells() {
        if start.elapsed() > budget.time_limit {
            break;
        }
        if y_degenerate_mod(&y, cell.q) {
            tried.push(serde_json::json!({"q": cell.q, "k": cell.k, "result": "skipped: y degenerate"}));
            continue;
        }
        if sl2_order(cell.order) > budget.sl2_budget as u128 {
            break;
        }
        let field = Field::build(cell.q, cell.k)?;
        let graph = Sl2VerbalGraph::build(&two, &y, &field, budget.sl2_budget)?;
        frontier = Some(cell.clone());
        let periodic = graph.periodic_ranks();
        let Some(&(rank, period)) = periodic.iter().min_by_key(|&&(r, p)| (p, r)) else {
            tried.push(serde_json::json!({"q": cell.q, "k": cell.k, "result": "no periodic point"}));
            continue;
        };
        let x = graph.matrix(rank);
        let bounds = theoretical_bounds(&two, 1)?;
        let meta = serde_json::json!({
            "branch": "sl2",
            "original_word": w.to_string(),
            "order": "ascending field order, ties by smaller q",
            "fields_tried": tried,
            "periodic_points_in_field": periodic.len(),
            "witness_rank": rank,
            "theoretical_q": bounds.q,
            "theoretical_q_min": bounds.q_min.to_string(),
        });
        return Ok(Certificate {
            schema_version: SCHEMA_VERSION,
            word: two.to_string(),
            kind: CertificateKind::Sl2,
            field: CertField::Finite {
                q: field.characteristic(),
                k: field.degree(),
                modulus: field.modulus().to_vec(),
            },
            y: y_ints.to_vec(),
            witness: Witness::Matrix(x.entries.iter().map(|e| e.coeffs().to_vec()).collect()),
            period,
            group_order: sl2_order(field.order()).to_string(),
            search_meta: meta,
        });
    }
    Err(CertError::BudgetExhausted {
        cells_tried: tried.len(),
        frontier,
    })
}
