//! Iteration of polynomial maps and verbal maps over finite fields: symbolic
//! composition, iteration congruences modulo `I_Q`, exhaustive solving of
//! twisted systems `f(a) = a^Q`, and periodic points of verbal maps on
//! `SL(2, F)` found from the full functional graph.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{Generator, Word, WordError, WordSystem};
use crate::gfield::{sl2_order, Field, FieldElement, FieldError, FieldTables, Matrix2};
use crate::polyring::{CoeffRing, Monomial, Poly, PolyError, PrimeField, TwistedBasis};
use crate::symbolic::{IntMatrix2, SymbolicError};

/// Default cap on the number of terms of any composed polynomial.
pub const DEFAULT_TERM_CAP: usize = 10_000;

/// Largest exponent `Q^j` accepted by [`verify_iteration_congruence`].
pub const MAX_CONGRUENCE_EXPONENT: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("a map needs n polynomials in n variables, got {polys} in {nvars}")]
    Arity { polys: usize, nvars: usize },
    #[error("polynomials of a map must share one coefficient field")]
    MixedFields,
    #[error("iteration count must be at least 1")]
    ZeroIterations,
    #[error("composition produced {got} terms, cap is {cap}")]
    TermCap { got: usize, cap: usize },
    #[error("exponent {got} exceeds the cap {cap}")]
    ExponentCap { got: u128, cap: u64 },
    #[error("the generators f_i - x_i^Q do not form a Groebner basis")]
    NotGroebner,
    #[error("search space of {needed} states exceeds the budget {budget}")]
    Budget { needed: u128, budget: u64 },
    #[error("y reduces to a scalar matrix over {0}; the verbal map is degenerate")]
    DegenerateY(Field),
    #[error("the verbal map does not preserve SL(2) (det y = -1 with odd y exponent sum)")]
    LeavesSl2,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
}

/// `f = (f_1, ..., f_n)` from `F_q^n` to itself.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMap {
    polys: Vec<Poly<PrimeField>>,
}

impl PolyMap {
    pub fn new(polys: Vec<Poly<PrimeField>>) -> Result<Self, DynamicsError> {
        let n = polys.len();
        let bad = polys.iter().find(|p| p.nvars() != n);
        if n == 0 || bad.is_some() {
            return Err(DynamicsError::Arity {
                polys: n,
                nvars: bad.map_or(0, |p| p.nvars()),
            });
        }
        let ring = *polys[0].ring();
        if polys.iter().any(|p| *p.ring() != ring) {
            return Err(DynamicsError::MixedFields);
        }
        Ok(PolyMap { polys })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        PolyMap {
            polys: (0..n).map(|i| Poly::var(field, n, i)).collect(),
        }
    }

    pub fn polys(&self) -> &[Poly<PrimeField>] {
        &self.polys
    }

    pub fn nvars(&self) -> usize {
        self.polys.len()
    }

    pub fn field(&self) -> PrimeField {
        *self.polys[0].ring()
    }

    pub fn max_degree(&self) -> u32 {
        self.polys.iter().filter_map(|p| p.degree()).max().unwrap_or(0)
    }

    /// `f ∘ g`.
    pub fn compose(&self, g: &PolyMap) -> Result<PolyMap, DynamicsError> {
        let polys = self
            .polys
            .iter()
            .map(|p| p.compose(&g.polys))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyMap { polys })
    }

    /// Evaluation at a point of `F_q^n`.
    pub fn apply(&self, point: &[u64]) -> Vec<u64> {
        self.polys.iter().map(|p| p.eval(point)).collect()
    }

    /// Evaluation at a point over an extension of `F_q`.
    pub fn apply_in(&self, field: &Field, point: &[FieldElement]) -> Vec<FieldElement> {
        self.polys.iter().map(|p| eval_in(p, field, point)).collect()
    }
}

/// Evaluates a polynomial over `F_q` at a point of an extension field.
pub fn eval_in(p: &Poly<PrimeField>, field: &Field, point: &[FieldElement]) -> FieldElement {
    p.eval_with(
        point,
        |c| field.from_int(*c as i64),
        field.one(),
        |a, b| field.add(a, b),
        |a, b| field.mul(a, b),
    )
}

/// The `j`-th iterate `f^(j)`, failing once any coordinate exceeds
/// `term_cap` terms.
pub fn compose_map(f: &PolyMap, j: usize, term_cap: usize) -> Result<PolyMap, DynamicsError> {
    if j == 0 {
        return Err(DynamicsError::ZeroIterations);
    }
    let check = |m: &PolyMap| -> Result<(), DynamicsError> {
        let got = m.polys.iter().map(|p| p.num_terms()).max().unwrap_or(0);
        if got > term_cap {
            return Err(DynamicsError::TermCap { got, cap: term_cap });
        }
        Ok(())
    };
    check(f)?;
    let mut current = f.clone();
    for _ in 1..j {
        current = f.compose(&current)?;
        check(&current)?;
    }
    Ok(current)
}

/// Checks `f_i^(j) - x_i^(Q^j) ∈ I_Q` for every `i` and `1 <= j <= j_max` by
/// normal forms.
pub fn verify_iteration_congruence(tb: &TwistedBasis, j_max: usize) -> Result<bool, DynamicsError> {
    if j_max == 0 {
        return Err(DynamicsError::ZeroIterations);
    }
    if !tb.check_groebner() {
        return Err(DynamicsError::NotGroebner);
    }
    let exponent = (tb.q_power() as u128).pow(j_max as u32);
    if exponent > MAX_CONGRUENCE_EXPONENT as u128 {
        return Err(DynamicsError::ExponentCap {
            got: exponent,
            cap: MAX_CONGRUENCE_EXPONENT,
        });
    }
    let n = tb.nvars();
    let field = tb.field();
    let f = PolyMap::new(tb.polys().to_vec())?;
    let mut current = f.clone();
    for j in 1..=j_max {
        if j > 1 {
            current = f.compose(&current)?;
            let got = current.polys.iter().map(|p| p.num_terms()).max().unwrap_or(0);
            if got > DEFAULT_TERM_CAP {
                return Err(DynamicsError::TermCap {
                    got,
                    cap: DEFAULT_TERM_CAP,
                });
            }
        }
        let e = tb.q_power().pow(j as u32) as u32;
        for (i, fi) in current.polys.iter().enumerate() {
            let mut diff = fi.clone();
            diff.add_term(Monomial::var(n, i, e), field.neg(&1));
            if !tb.ideal_member(&diff)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A point with `f_i(point) = point_i^Q` for all `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedSolution {
    pub field: Field,
    pub point: Vec<FieldElement>,
    pub q_power: u64,
}

impl TwistedSolution {
    /// Re-checks the defining equations by direct evaluation.
    pub fn verify(&self, polys: &[Poly<PrimeField>]) -> bool {
        polys.len() == self.point.len()
            && polys.iter().zip(&self.point).all(|(f, a)| {
                eval_in(f, &self.field, &self.point) == self.field.pow(a, self.q_power)
            })
    }

    /// `point^(Q^l)` for `l` applications of the `Q`-power map.
    pub fn frobenius_power(&self, l: u64) -> Vec<FieldElement> {
        let mut p = self.point.clone();
        for _ in 0..l {
            p = p.iter().map(|a| self.field.pow(a, self.q_power)).collect();
        }
        p
    }
}

// Terms of a polynomial with coefficients encoded for a table field.
fn encode_terms(p: &Poly<PrimeField>, tables: &FieldTables) -> Vec<(u32, Vec<u32>)> {
    let field = tables.field();
    p.terms()
        .map(|(m, c)| (tables.encode(&field.from_int(*c as i64)), m.exponents().to_vec()))
        .collect()
}

fn eval_encoded(terms: &[(u32, Vec<u32>)], point: &[u32], tables: &FieldTables) -> u32 {
    let mut acc = 0;
    for (c, exps) in terms {
        let mut t = *c;
        for (&x, &e) in point.iter().zip(exps) {
            if e > 0 {
                t = tables.mul(t, tables.pow(x, e as u64));
            }
        }
        acc = tables.add(acc, t);
    }
    acc
}

/// All points over `F_{q^k}`, `k <= k_max`, with `f_i(a) = a_i^Q` and
/// `D(a) != 0` when a filter `D` is given. Each point is reported once, over
/// the smallest field that contains it. This is only the part of the
/// solution set visible in small extensions.
pub fn twisted_solutions(
    tb: &TwistedBasis,
    k_max: usize,
    d: Option<&Poly<PrimeField>>,
    budget: u64,
) -> Result<Vec<TwistedSolution>, DynamicsError> {
    let n = tb.nvars();
    let q = tb.field().characteristic();
    let mut out = Vec::new();
    for k in 1..=k_max {
        let field = Field::build(q, k)?;
        let order = field.order();
        let needed = (order as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if needed > budget as u128 {
            return Err(DynamicsError::Budget { needed, budget });
        }
        let tables = FieldTables::new(&field)?;
        let fs: Vec<_> = tb.polys().iter().map(|p| encode_terms(p, &tables)).collect();
        let filter = d.map(|p| encode_terms(p, &tables));
        let subfield_exponents: Vec<u64> = (1..k).filter(|j| k % j == 0).map(|j| q.pow(j as u32)).collect();
        let mut point = vec![0u32; n];
        for code in 0..needed {
            let mut c = code;
            for slot in point.iter_mut().rev() {
                *slot = (c % order as u128) as u32;
                c /= order as u128;
            }
            let in_subfield = subfield_exponents
                .iter()
                .any(|&e| point.iter().all(|&a| tables.pow(a, e) == a));
            if in_subfield {
                continue;
            }
            let solves = fs
                .iter()
                .zip(&point)
                .all(|(f, &a)| eval_encoded(f, &point, &tables) == tables.pow(a, tb.q_power()));
            if !solves {
                continue;
            }
            if let Some(dt) = &filter {
                if eval_encoded(dt, &point, &tables) == 0 {
                    continue;
                }
            }
            out.push(TwistedSolution {
                field: field.clone(),
                point: point.iter().map(|&a| tables.decode(a)).collect(),
                q_power: tb.q_power(),
            });
        }
    }
    Ok(out)
}

/// `block * l`, with `l` the least number of `Q`-power steps returning the
/// point to itself.
pub fn frobenius_period(sol: &TwistedSolution, block: u64) -> u64 {
    let mut p = sol.point.clone();
    let mut l = 0;
    loop {
        p = p.iter().map(|a| sol.field.pow(a, sol.q_power)).collect();
        l += 1;
        if p == sol.point {
            return block * l;
        }
    }
}

/// Orbit of a point under a map on a finite set: `tail_length` steps lead
/// into a cycle of length `period`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitRecord<P> {
    pub start: P,
    pub tail_length: usize,
    pub period: usize,
    pub cycle: Vec<P>,
}

/// A map on `0..n` given by its successor array.
#[derive(Clone, Debug)]
pub struct FunctionalGraph {
    succ: Vec<u32>,
}

impl FunctionalGraph {
    pub fn new(succ: Vec<u32>) -> Self {
        let n = succ.len();
        assert!(succ.iter().all(|&s| (s as usize) < n), "successor out of range");
        FunctionalGraph { succ }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn succ(&self, v: usize) -> usize {
        self.succ[v] as usize
    }

    /// Every cycle exactly once, each listed along the map from the first
    /// vertex reached by a scan in increasing vertex order.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        const NEW: u8 = 0;
        const ON_PATH: u8 = 1;
        const DONE: u8 = 2;
        let mut state = vec![NEW; self.succ.len()];
        let mut path = Vec::new();
        let mut out = Vec::new();
        for start in 0..self.succ.len() {
            if state[start] != NEW {
                continue;
            }
            let mut v = start;
            while state[v] == NEW {
                state[v] = ON_PATH;
                path.push(v);
                v = self.succ(v);
            }
            if state[v] == ON_PATH {
                let pos = path.iter().position(|&u| u == v).expect("on path");
                out.push(path[pos..].to_vec());
            }
            for u in path.drain(..) {
                state[u] = DONE;
            }
        }
        out
    }

    pub fn orbit(&self, start: usize) -> OrbitRecord<usize> {
        let mut seen = std::collections::HashMap::new();
        let mut v = start;
        let mut step = 0;
        while let std::collections::hash_map::Entry::Vacant(e) = seen.entry(v) {
            e.insert(step);
            v = self.succ(v);
            step += 1;
        }
        let tail_length = seen[&v];
        let period = step - tail_length;
        let mut cycle = Vec::with_capacity(period);
        let mut u = v;
        for _ in 0..period {
            cycle.push(u);
            u = self.succ(u);
        }
        OrbitRecord {
            start,
            tail_length,
            period,
            cycle,
        }
    }
}

/// Value of `w` with letter `i` sent to `images[i]`, over a field.
pub fn eval_word_matrix(w: &Word, images: &[Matrix2], field: &Field) -> Result<Matrix2, DynamicsError> {
    if images.len() != w.alphabet_size() {
        return Err(WordError::ArityMismatch {
            expected: w.alphabet_size(),
            got: images.len(),
        }
        .into());
    }
    let mut acc = Matrix2::identity(field);
    for l in w.letters() {
        let m = &images[l.generator.index()];
        acc = if l.inverse {
            acc.mul(&m.inverse(field)?, field)
        } else {
            acc.mul(m, field)
        };
    }
    Ok(acc)
}

/// The first `steps` iterates `w(x, y), w(w(x, y), y), ...` of a two-letter
/// word over a field.
pub fn verbal_iterates(
    w: &Word,
    x: &Matrix2,
    y: &Matrix2,
    field: &Field,
    steps: u64,
) -> Result<Vec<Matrix2>, DynamicsError> {
    let w = two_letter(w)?;
    let y_inv = y.inverse(field)?;
    let mut out = Vec::with_capacity(steps.min(1 << 20) as usize);
    let mut cur = x.clone();
    for _ in 0..steps {
        let cur_inv = cur.inverse(field)?;
        let mut acc = Matrix2::identity(field);
        for l in w.letters() {
            let m = match (l.generator.index(), l.inverse) {
                (0, false) => &cur,
                (0, true) => &cur_inv,
                (_, false) => y,
                (_, true) => &y_inv,
            };
            acc = acc.mul(m, field);
        }
        cur = acc;
        out.push(cur.clone());
    }
    Ok(out)
}

// Word evaluation on encoded matrices with precomputed inverses.
fn eval_word_codes(w: &Word, images: &[[u32; 4]], inverses: &[[u32; 4]], tables: &FieldTables) -> [u32; 4] {
    let mut acc = tables.identity_matrix();
    for l in w.letters() {
        let i = l.generator.index();
        let m = if l.inverse { &inverses[i] } else { &images[i] };
        acc = tables.mat_mul(&acc, m);
    }
    acc
}

fn two_letter(w: &Word) -> Result<Word, DynamicsError> {
    match w.alphabet_size() {
        1 => Ok(w.widen(2)?.reduce()),
        2 => Ok(w.reduce()),
        m => Err(SymbolicError::WrongAlphabet(m).into()),
    }
}

/// `ȳ = y mod q` inside `field`, checked to give a map on `SL(2, field)` that
/// is not degenerate.
pub fn reduce_y_for(w: &Word, y: &IntMatrix2, field: &Field) -> Result<Matrix2, DynamicsError> {
    if !y.is_unimodular() {
        return Err(SymbolicError::NonUnimodularY(y.det()).into());
    }
    let y_bar = y.reduce(field);
    if y_bar.is_scalar(field) {
        return Err(DynamicsError::DegenerateY(field.clone()));
    }
    let det = y_bar.det(field);
    if det != field.one() && w.exponent_sum(Generator(1)) % 2 != 0 {
        return Err(DynamicsError::LeavesSl2);
    }
    Ok(y_bar)
}

/// The functional graph of `x -> w(x, ȳ)` on `SL(2, F)`, vertices being
/// [`FieldTables::sl2_rank`] codes.
pub struct Sl2VerbalGraph {
    pub tables: FieldTables,
    pub graph: FunctionalGraph,
    pub identity_rank: usize,
}

impl Sl2VerbalGraph {
    pub fn build(w: &Word, y: &IntMatrix2, field: &Field, budget: u64) -> Result<Self, DynamicsError> {
        let w = two_letter(w)?;
        let y_bar = reduce_y_for(&w, y, field)?;
        let needed = sl2_order(field.order());
        if needed > budget as u128 {
            return Err(DynamicsError::Budget { needed, budget });
        }
        let tables = FieldTables::new(field)?;
        let y_code = tables.encode_matrix(&y_bar);
        let y_inv = tables.encode_matrix(&y_bar.inverse(field)?);
        let succ: Vec<u32> = (0..tables.sl2_size())
            .into_par_iter()
            .map(|r| {
                let x = tables.sl2_unrank(r);
                let x_inv = tables.sl2_inv(&x);
                let img = eval_word_codes(&w, &[x, y_code], &[x_inv, y_inv], &tables);
                tables.sl2_rank(&img) as u32
            })
            .collect();
        let identity_rank = tables.sl2_rank(&tables.identity_matrix());
        Ok(Sl2VerbalGraph {
            tables,
            graph: FunctionalGraph::new(succ),
            identity_rank,
        })
    }

    /// `(rank, period)` of every element on a cycle that avoids the
    /// identity, in rank order.
    pub fn periodic_ranks(&self) -> Vec<(usize, u64)> {
        let mut out: Vec<(usize, u64)> = self
            .graph
            .cycles()
            .into_iter()
            .filter(|c| !c.contains(&self.identity_rank))
            .flat_map(|c| {
                let p = c.len() as u64;
                c.into_iter().map(move |v| (v, p))
            })
            .collect();
        out.sort_unstable();
        out
    }

    pub fn matrix(&self, rank: usize) -> Matrix2 {
        self.tables.decode_matrix(&self.tables.sl2_unrank(rank))
    }
}

/// Every element of `SL(2, F)` on a cycle of `x -> w(x, ȳ)` that avoids the
/// identity, with its minimal period, in rank order.
pub fn cycle_search_sl2(
    w: &Word,
    y: &IntMatrix2,
    field: &Field,
    budget: u64,
) -> Result<Vec<(Matrix2, u64)>, DynamicsError> {
    let g = Sl2VerbalGraph::build(w, y, field, budget)?;
    Ok(g.periodic_ranks()
        .into_iter()
        .map(|(r, p)| (g.matrix(r), p))
        .collect())
}

/// Periodic tuples of `(a_1..a_s) -> (w_1(a), ..., w_s(a))` on `SL(2, F)^s`
/// whose cycles never have an identity coordinate, in index order.
pub fn cycle_search_tuples(
    ws: &WordSystem,
    field: &Field,
    budget: u64,
) -> Result<Vec<(Vec<Matrix2>, u64)>, DynamicsError> {
    let s = ws.len();
    let base = sl2_order(field.order());
    let needed = base.checked_pow(s as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 || needed > u32::MAX as u128 {
        return Err(DynamicsError::Budget { needed, budget });
    }
    let tables = FieldTables::new(field)?;
    let size = base as usize;
    let words: Vec<Word> = ws.words().iter().map(|w| w.reduce()).collect();
    let decode = |mut idx: usize| -> Vec<[u32; 4]> {
        let mut out = vec![[0u32; 4]; s];
        for slot in out.iter_mut().rev() {
            *slot = tables.sl2_unrank(idx % size);
            idx /= size;
        }
        out
    };
    let encode = |tuple: &[[u32; 4]]| -> usize { tuple.iter().fold(0, |acc, m| acc * size + tables.sl2_rank(m)) };
    let succ: Vec<u32> = (0..needed as usize)
        .into_par_iter()
        .map(|idx| {
            let a = decode(idx);
            let inv: Vec<[u32; 4]> = a.iter().map(|m| tables.sl2_inv(m)).collect();
            let img: Vec<[u32; 4]> = words.iter().map(|w| eval_word_codes(w, &a, &inv, &tables)).collect();
            encode(&img) as u32
        })
        .collect();
    let graph = FunctionalGraph::new(succ);
    let id = tables.identity_matrix();
    let mut out = Vec::new();
    for cycle in graph.cycles() {
        let tuples: Vec<Vec<[u32; 4]>> = cycle.iter().map(|&v| decode(v)).collect();
        if tuples.iter().any(|t| t.contains(&id)) {
            continue;
        }
        let p = cycle.len() as u64;
        for (v, t) in cycle.into_iter().zip(tuples) {
            out.push((v, t, p));
        }
    }
    out.sort_unstable_by_key(|e| e.0);
    Ok(out
        .into_iter()
        .map(|(_, t, p)| (t.iter().map(|m| tables.decode_matrix(m)).collect(), p))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn map(texts: &[&str], q: u64) -> PolyMap {
        let n = texts.len();
        PolyMap::new(texts.iter().map(|t| Poly::parse(t, fp(q), n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn compose_square() {
        let f = map(&["x1^2"], 5);
        let f2 = compose_map(&f, 2, DEFAULT_TERM_CAP).unwrap();
        assert_eq!(f2.polys()[0], Poly::parse("x1^4", fp(5), 1).unwrap());
        let id = PolyMap::identity(fp(3), 2);
        assert_eq!(compose_map(&id, 5, 10).unwrap(), id);
        let g = map(&["x1^2 + x1 + 1"], 7);
        assert!(matches!(compose_map(&g, 6, 20), Err(DynamicsError::TermCap { .. })));
    }

    #[test]
    fn congruence_square_map() {
        let tb = TwistedBasis::new(vec![Poly::parse("x1^2", fp(2), 1).unwrap()], 4).unwrap();
        assert!(verify_iteration_congruence(&tb, 2).unwrap());
    }

    #[test]
    fn twisted_square_map() {
        let tb = TwistedBasis::new(vec![Poly::parse("x1^2", fp(2), 1).unwrap()], 4).unwrap();
        let all = twisted_solutions(&tb, 1, None, 1000).unwrap();
        let pts: Vec<_> = all.iter().map(|s| s.point[0].coeffs().to_vec()).collect();
        assert_eq!(pts, vec![vec![0], vec![1]]);
        let d = Poly::parse("x1", fp(2), 1).unwrap();
        let kept = twisted_solutions(&tb, 1, Some(&d), 1000).unwrap();
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].point[0].coeffs(), &[1]);
    }

    #[test]
    fn frobenius_examples() {
        let f3 = Field::build(3, 1).unwrap();
        let sol = TwistedSolution {
            point: vec![f3.from_int(2)],
            field: f3,
            q_power: 3,
        };
        assert_eq!(frobenius_period(&sol, 1), 1);
        let f9 = Field::build(3, 2).unwrap();
        let sol = TwistedSolution {
            point: vec![f9.generator()],
            field: f9,
            q_power: 3,
        };
        assert_eq!(frobenius_period(&sol, 4), 8);
    }

    #[test]
    fn functional_graph_cycles_and_orbits() {
        // 0 -> 1 -> 2 -> 1, 3 -> 3, 4 -> 0
        let g = FunctionalGraph::new(vec![1, 2, 1, 3, 0]);
        assert_eq!(g.cycles(), vec![vec![1, 2], vec![3]]);
        let o = g.orbit(4);
        assert_eq!((o.tail_length, o.period), (2, 2));
        assert_eq!(o.cycle, vec![1, 2]);
    }

    #[test]
    fn identity_word_fixes_everything() {
        let f3 = Field::build(3, 1).unwrap();
        let w = Word::parse("a", 2).unwrap();
        let found = cycle_search_sl2(&w, &IntMatrix2::default_y(), &f3, 1000).unwrap();
        assert_eq!(found.len(), 23);
        assert!(found.iter().all(|(_, p)| *p == 1));
    }

    #[test]
    fn degenerate_y_rejected() {
        let f2 = Field::build(2, 1).unwrap();
        let w = Word::parse("ABab", 2).unwrap();
        assert!(matches!(
            cycle_search_sl2(&w, &IntMatrix2::default_y(), &f2, 1000),
            Err(DynamicsError::DegenerateY(_))
        ));
    }

    #[test]
    fn collapsing_tuple_system_has_no_cycles() {
        let f3 = Field::build(3, 1).unwrap();
        let ws = WordSystem::parse("ABab,ABab").unwrap();
        assert!(cycle_search_tuples(&ws, &f3, 1000).unwrap().is_empty());
        let id = WordSystem::identity(2).unwrap();
        // tuples with no identity coordinate: 23^2
        assert_eq!(cycle_search_tuples(&id, &f3, 1000).unwrap().len(), 23 * 23);
    }
}
