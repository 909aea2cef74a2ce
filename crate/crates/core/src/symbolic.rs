//! Two-letter words `w(x, y)` with a fixed integer matrix `y` as a polynomial
//! matrix `H` in the entries of a generic `x`, with `w(x, y) = H / det(x)^s`.
//!
//! The generic matrix uses the variables `x1 = x11`, `x2 = x12`, `x3 = x21`,
//! `x4 = x22`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{Word, WordError};
use crate::gfield::{Field, Matrix2};
use crate::polyring::{CoeffRing, Integers, Monomial, Poly, PolyError, PrimeField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("y has determinant {0}, expected 1 or -1")]
    NonUnimodularY(BigInt),
    #[error("x has determinant {0}, but the word contains x^-1")]
    NonUnimodularX(BigInt),
    #[error("word uses {0} letters, expected at most 2")]
    WrongAlphabet(usize),
    #[error("y needs 4 entries, got {0}")]
    BadY(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("malformed matrix JSON: {0}")]
    Json(String),
}

/// A 2x2 matrix `[[e[0], e[1]], [e[2], e[3]]]` of exact integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix2 {
    pub entries: [BigInt; 4],
}

impl IntMatrix2 {
    pub fn new(entries: [BigInt; 4]) -> Self {
        IntMatrix2 { entries }
    }

    pub fn from_i64(e: [i64; 4]) -> Self {
        IntMatrix2 {
            entries: e.map(BigInt::from),
        }
    }

    pub fn identity() -> Self {
        IntMatrix2::from_i64([1, 0, 0, 1])
    }

    /// `[[1, 0], [2, 1]]`, the default `y`.
    pub fn default_y() -> Self {
        IntMatrix2::from_i64([1, 0, 2, 1])
    }

    /// `[[1, 2], [0, 1]]`, the standard test value of `x`.
    pub fn sanov_x() -> Self {
        IntMatrix2::from_i64([1, 2, 0, 1])
    }

    pub fn det(&self) -> BigInt {
        let [a, b, c, d] = &self.entries;
        a * d - b * c
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    pub fn mul(&self, other: &IntMatrix2) -> IntMatrix2 {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        IntMatrix2::new([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    pub fn adjugate(&self) -> IntMatrix2 {
        let [a, b, c, d] = &self.entries;
        IntMatrix2::new([d.clone(), -b, -c, a.clone()])
    }

    /// Exact inverse, defined when `det = ±1`.
    pub fn inverse(&self) -> Option<IntMatrix2> {
        let det = self.det();
        if !det.abs().is_one() {
            return None;
        }
        // 1/det = det for det = ±1
        Some(self.adjugate().scale(&det))
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix2 {
        IntMatrix2::new(self.entries.clone().map(|e| e * c))
    }

    pub fn pow(&self, e: u32) -> IntMatrix2 {
        (0..e).fold(IntMatrix2::identity(), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMatrix2::identity()
    }

    pub fn commutes_with(&self, other: &IntMatrix2) -> bool {
        self.mul(other) == other.mul(self)
    }

    pub fn max_abs_entry(&self) -> BigInt {
        self.entries.iter().map(|e| e.abs()).max().unwrap_or_default()
    }

    /// Reduction into the prime subfield of `field`.
    pub fn reduce(&self, field: &Field) -> Matrix2 {
        let q = BigInt::from(field.characteristic());
        let entries = self.entries.clone().map(|e| {
            let r = ((e % &q) + &q) % &q;
            field.from_int(r.to_i64().expect("residue fits"))
        });
        Matrix2 { entries }
    }

    /// Entries as `i64`, when they fit.
    pub fn to_i64(&self) -> Option<[i64; 4]> {
        let [a, b, c, d] = &self.entries;
        Some([a.to_i64()?, b.to_i64()?, c.to_i64()?, d.to_i64()?])
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.entries;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// `w(x, y) = H / det(x)^s`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMatrix {
    pub h: [Poly<Integers>; 4],
    pub s: u32,
    pub y: IntMatrix2,
    /// The reduced word.
    pub word: Word,
}

#[derive(Serialize, Deserialize)]
struct RationalMatrixJson {
    entries: Vec<String>,
    s: u32,
    y: Vec<i64>,
    word: String,
}

type PolyMatrix = [Poly<Integers>; 4];

fn poly_mat_mul(x: &PolyMatrix, y: &PolyMatrix) -> PolyMatrix {
    let [a, b, c, d] = x;
    let [e, f, g, h] = y;
    [
        a.mul(e).add(&b.mul(g)),
        a.mul(f).add(&b.mul(h)),
        c.mul(e).add(&d.mul(g)),
        c.mul(f).add(&d.mul(h)),
    ]
}

fn constant_matrix(m: &IntMatrix2) -> PolyMatrix {
    m.entries.clone().map(|e| Poly::constant(Integers, 4, e))
}

fn generic_matrix() -> PolyMatrix {
    [0, 1, 2, 3].map(|i| Poly::var(Integers, 4, i))
}

fn generic_adjugate() -> PolyMatrix {
    let [a, b, c, d] = generic_matrix();
    [d, b.neg(), c.neg(), a]
}

fn two_letter(w: &Word) -> Result<Word, SymbolicError> {
    match w.alphabet_size() {
        1 => Ok(w.widen(2)?),
        2 => Ok(w.clone()),
        m => Err(SymbolicError::WrongAlphabet(m)),
    }
}

/// Builds `H` and `s` for `w` (reduced first) by an exact left-to-right
/// product of polynomial matrices.
pub fn word_to_h(w: &Word, y: &IntMatrix2) -> Result<RationalMatrix, SymbolicError> {
    let w = two_letter(w)?.reduce();
    let y_inv = y.inverse().ok_or_else(|| SymbolicError::NonUnimodularY(y.det()))?;
    let factors = [
        generic_matrix(),
        generic_adjugate(),
        constant_matrix(y),
        constant_matrix(&y_inv),
    ];
    let mut h = constant_matrix(&IntMatrix2::identity());
    let mut s = 0;
    for l in w.letters() {
        let idx = 2 * l.generator.index() + usize::from(l.inverse);
        if idx == 1 {
            s += 1;
        }
        h = poly_mat_mul(&h, &factors[idx]);
    }
    Ok(RationalMatrix {
        h,
        s,
        y: y.clone(),
        word: w,
    })
}

/// The literal product of the letters of `w` at `(x, y)`.
pub fn eval_int(w: &Word, x: &IntMatrix2, y: &IntMatrix2) -> Result<IntMatrix2, SymbolicError> {
    let w = two_letter(w)?;
    let mut x_inv: Option<IntMatrix2> = None;
    let mut y_inv: Option<IntMatrix2> = None;
    let mut acc = IntMatrix2::identity();
    for l in w.letters() {
        let factor = match (l.generator.index(), l.inverse) {
            (0, false) => x.clone(),
            (1, false) => y.clone(),
            (0, true) => match &x_inv {
                Some(m) => m.clone(),
                None => {
                    let m = x.inverse().ok_or_else(|| SymbolicError::NonUnimodularX(x.det()))?;
                    x_inv = Some(m.clone());
                    m
                }
            },
            _ => match &y_inv {
                Some(m) => m.clone(),
                None => {
                    let m = y.inverse().ok_or_else(|| SymbolicError::NonUnimodularY(y.det()))?;
                    y_inv = Some(m.clone());
                    m
                }
            },
        };
        acc = acc.mul(&factor);
    }
    Ok(acc)
}

impl RationalMatrix {
    /// `H(x)` without the determinant factor.
    pub fn eval_h(&self, x: &IntMatrix2) -> IntMatrix2 {
        IntMatrix2::new(self.h.clone().map(|p| p.eval(&x.entries)))
    }

    /// `H(x) / det(x)^s`, exact for unimodular `x`.
    pub fn eval(&self, x: &IntMatrix2) -> Result<IntMatrix2, SymbolicError> {
        let det = x.det();
        if self.s == 0 {
            return Ok(self.eval_h(x));
        }
        if !det.abs().is_one() {
            return Err(SymbolicError::NonUnimodularX(det));
        }
        let factor = if self.s.is_multiple_of(2) { BigInt::one() } else { det };
        Ok(self.eval_h(x).scale(&factor))
    }

    pub fn max_degree(&self) -> u32 {
        self.h.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.h.iter().map(|p| p.max_abs_coeff()).max().unwrap_or_default()
    }

    /// `H` is the identity matrix and `s = 0`.
    pub fn is_identity(&self) -> bool {
        let one = Poly::one(Integers, 4);
        let zero = Poly::zero(Integers, 4);
        self.s == 0 && self.h[0] == one && self.h[3] == one && self.h[1] == zero && self.h[2] == zero
    }

    pub fn to_json(&self) -> serde_json::Value {
        let y = self
            .y
            .entries
            .iter()
            .map(|e| e.to_i64().expect("y entries fit in i64"))
            .collect();
        serde_json::to_value(RationalMatrixJson {
            entries: self.h.iter().map(|p| p.to_text()).collect(),
            s: self.s,
            y,
            word: self.word.to_string(),
        })
        .expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<RationalMatrix, SymbolicError> {
        let raw: RationalMatrixJson =
            serde_json::from_value(value.clone()).map_err(|e| SymbolicError::Json(e.to_string()))?;
        if raw.entries.len() != 4 {
            return Err(SymbolicError::Json(format!("{} entries", raw.entries.len())));
        }
        let y: [i64; 4] = raw
            .y
            .as_slice()
            .try_into()
            .map_err(|_| SymbolicError::BadY(raw.y.len()))?;
        let mut h = Vec::with_capacity(4);
        for text in &raw.entries {
            h.push(Poly::parse(text, Integers, 4)?);
        }
        Ok(RationalMatrix {
            h: h.try_into().expect("four entries"),
            s: raw.s,
            y: IntMatrix2::from_i64(y),
            word: Word::parse(&raw.word, 2)?,
        })
    }
}

/// `H` reduced modulo a prime.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedMatrix {
    pub h: [Poly<PrimeField>; 4],
    pub s: u32,
    pub field: PrimeField,
    /// `y mod q` is scalar, so it commutes with every `x` and the verbal map
    /// degenerates.
    pub y_degenerate: bool,
}

/// Coefficient-wise reduction mod `q`.
pub fn reduce_mod(rm: &RationalMatrix, q: u64) -> Result<ReducedMatrix, SymbolicError> {
    let field = PrimeField::new(q)?;
    Ok(ReducedMatrix {
        h: rm.h.clone().map(|p| p.reduce_mod(field)),
        s: rm.s,
        field,
        y_degenerate: y_degenerate_mod(&rm.y, q),
    })
}

/// `y mod q` is a scalar matrix.
pub fn y_degenerate_mod(y: &IntMatrix2, q: u64) -> bool {
    let q = BigInt::from(q);
    let r = |e: &BigInt| ((e % &q) + &q) % &q;
    let [a, b, c, d] = &y.entries;
    r(b).is_zero() && r(c).is_zero() && r(a) == r(d)
}

impl ReducedMatrix {
    /// Evaluates `H` at a matrix over an extension of `F_q`.
    pub fn eval_h(&self, x: &Matrix2, field: &Field) -> Matrix2 {
        let entries = self.h.clone().map(|p| {
            p.eval_with(
                &x.entries,
                |c| field.from_int(*c as i64),
                field.one(),
                |a, b| field.add(a, b),
                |a, b| field.mul(a, b),
            )
        });
        Matrix2 { entries }
    }

    pub fn max_degree(&self) -> u32 {
        self.h.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }
}

/// Total degree of every term of `p` equals `deg`.
pub fn is_homogeneous<R: CoeffRing>(p: &Poly<R>, deg: u32) -> bool {
    p.terms().all(|(m, _): (&Monomial, _)| m.degree() == deg)
}
