use std::collections::HashMap;

use num_bigint::BigUint;
use num_integer::binomial;

use super::{CoeffField, CoeffRing, Monomial, Poly, PolyError, PrimeField};

/// A nonzero `psi` in `n + 1` variables with `psi(F_1, ..., F_{n+1}) = 0`.
#[derive(Clone, Debug)]
pub struct Dependence {
    pub psi: Poly<PrimeField>,
    /// Degree bound used to set up the linear system.
    pub chosen_degree: u32,
    /// The cruder sufficient bound `(n + 1) d^n`.
    pub crude_degree: u64,
}

/// `C(s + n + 1, n + 1) >= C(s d + n, n)`.
pub fn binomial_bound_holds(s: u64, n: u64, d: u64) -> bool {
    unknowns(s, n) >= equations(s, n, d)
}

fn unknowns(s: u64, n: u64) -> BigUint {
    binomial(BigUint::from(s + n + 1), BigUint::from(n + 1))
}

fn equations(s: u64, n: u64, d: u64) -> BigUint {
    binomial(BigUint::from(s * d + n), BigUint::from(n))
}

/// Smallest `s >= 1` with strictly more unknowns than equations, which is
/// what forces a nonzero kernel vector.
pub fn smallest_dependence_degree(n: u64, d: u64) -> u64 {
    let mut s = 1;
    while unknowns(s, n) <= equations(s, n, d) {
        s += 1;
    }
    s
}

/// All monomials of total degree `<= s` in `nvars` variables, ascending.
fn monomials_up_to(nvars: usize, s: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Monomial>) {
        if left == 0 {
            out.push(Monomial::new(prefix.clone()));
            return;
        }
        for e in 0..=budget {
            prefix.push(e);
            rec(prefix, left - 1, budget - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), nvars, s, &mut out);
    out.sort();
    out
}

/// Finds a nonzero `psi` of degree at most the smallest admissible `s` by
/// solving the linear system on its coefficients. Among all solutions the
/// one with the smallest graded-lex leading monomial is returned, scaled to
/// leading coefficient 1.
pub fn algebraic_dependence(fs: &[Poly<PrimeField>], d: u32) -> Result<Dependence, PolyError> {
    let first = fs.first().ok_or(PolyError::AllZero)?;
    let n = first.nvars();
    let field = *first.ring();
    if fs.len() != n + 1 {
        return Err(PolyError::RingMismatch(n + 1, fs.len()));
    }
    for f in fs {
        if f.nvars() != n {
            return Err(PolyError::RingMismatch(n, f.nvars()));
        }
        if let Some(deg) = f.degree() {
            if deg > d {
                return Err(PolyError::DegreeTooLarge { got: deg, bound: d });
            }
        }
    }
    if fs.iter().all(|f| f.is_zero()) {
        return Err(PolyError::AllZero);
    }
    let s = smallest_dependence_degree(n as u64, d as u64) as u32;
    let crude_degree = (n as u64 + 1) * (d as u64).pow(n as u32);

    let columns = monomials_up_to(n + 1, s);
    // images of every column monomial, built from cached powers
    let mut powers: Vec<Vec<Poly<PrimeField>>> = fs
        .iter()
        .map(|f| vec![Poly::one(field, n), f.clone()])
        .collect();
    let mut images = Vec::with_capacity(columns.len());
    for m in &columns {
        let mut img = Poly::one(field, n);
        for (i, &e) in m.exponents().iter().enumerate() {
            while powers[i].len() <= e as usize {
                let next = powers[i].last().unwrap().mul(&fs[i]);
                powers[i].push(next);
            }
            if e > 0 {
                img = img.mul(&powers[i][e as usize]);
            }
        }
        images.push(img);
    }
    let mut row_of: HashMap<Monomial, usize> = HashMap::new();
    for img in &images {
        for (m, _) in img.terms() {
            let next = row_of.len();
            row_of.entry(m.clone()).or_insert(next);
        }
    }
    let mut matrix = vec![vec![0u64; columns.len()]; row_of.len()];
    for (j, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            matrix[row_of[m]][j] = *c;
        }
    }
    let kernel = first_kernel_vector(&mut matrix, columns.len(), field)
        .expect("more unknowns than equations");
    let psi = Poly::from_terms(
        field,
        n + 1,
        columns.into_iter().zip(kernel).filter(|(_, c)| *c != 0),
    );
    Ok(Dependence {
        psi,
        chosen_degree: s,
        crude_degree,
    })
}

/// Row reduces in place (pivot: first nonzero entry in column order) and
/// returns the kernel vector for the first free column, if any.
fn first_kernel_vector(rows: &mut [Vec<u64>], ncols: usize, field: PrimeField) -> Option<Vec<u64>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut r = 0;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            // free column: assemble the kernel vector now
            let mut v = vec![0u64; ncols];
            v[col] = 1;
            for &(prow, pcol) in &pivots {
                v[pcol] = field.neg(&rows[prow][col]);
            }
            return Some(v);
        };
        rows.swap(r, pr);
        let inv = field.inv(&rows[r][col]).expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = field.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let factor = row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(x, &field.mul(&factor, p));
                }
            }
        }
        pivots.push((r, col));
        r += 1;
    }
    None
}
