//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's arithmetic.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;

/// Letters as `(generator, inverse)`.
pub type Letters = Vec<(usize, bool)>;

pub fn letters_to_text(ls: &[(usize, bool)]) -> String {
    ls.iter()
        .map(|&(g, inv)| {
            let c = (b'a' + g as u8) as char;
            if inv {
                c.to_ascii_uppercase()
            } else {
                c
            }
        })
        .collect()
}

/// Free reduction by repeatedly deleting the leftmost cancelling pair.
pub fn naive_reduce(ls: &[(usize, bool)]) -> Letters {
    let mut v = ls.to_vec();
    loop {
        let pos = v.windows(2).position(|p| p[0].0 == p[1].0 && p[0].1 != p[1].1);
        match pos {
            Some(i) => {
                v.drain(i..i + 2);
            }
            None => return v,
        }
    }
}

pub fn random_letters(rng: &mut impl Rng, m: usize, max_len: usize) -> Letters {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| (rng.gen_range(0..m), rng.gen_bool(0.5))).collect()
}

/// A random freely reduced word of length `1..=max_len` on `m` letters.
pub fn random_reduced(rng: &mut impl Rng, m: usize, max_len: usize) -> Letters {
    let len = rng.gen_range(1..=max_len);
    let mut v: Letters = Vec::with_capacity(len);
    while v.len() < len {
        let l = (rng.gen_range(0..m), rng.gen_bool(0.5));
        if let Some(&last) = v.last() {
            if last.0 == l.0 && last.1 != l.1 {
                continue;
            }
        }
        v.push(l);
    }
    v
}

// 2x2 integer matrices as [a, b, c, d] = [[a, b], [c, d]].
pub type BigMat = [BigInt; 4];

pub fn big(e: [i64; 4]) -> BigMat {
    e.map(BigInt::from)
}

pub fn big_mul(x: &BigMat, y: &BigMat) -> BigMat {
    [
        &x[0] * &y[0] + &x[1] * &y[2],
        &x[0] * &y[1] + &x[1] * &y[3],
        &x[2] * &y[0] + &x[3] * &y[2],
        &x[2] * &y[1] + &x[3] * &y[3],
    ]
}

pub fn big_det(x: &BigMat) -> BigInt {
    &x[0] * &x[3] - &x[1] * &x[2]
}

/// Inverse of a determinant `±1` matrix.
pub fn big_inv(x: &BigMat) -> BigMat {
    let d = big_det(x);
    [&x[3] * &d, -&x[1] * &d, -&x[2] * &d, &x[0] * &d]
}

/// Product of the letters at `(x, y)`, straight from the definition.
pub fn big_word(ls: &[(usize, bool)], x: &BigMat, y: &BigMat) -> BigMat {
    let xi = big_inv(x);
    let yi = big_inv(y);
    let mut acc = big([1, 0, 0, 1]);
    for &(g, inv) in ls {
        let m = match (g, inv) {
            (0, false) => x,
            (0, true) => &xi,
            (_, false) => y,
            (_, true) => &yi,
        };
        acc = big_mul(&acc, m);
    }
    acc
}

/// A random unimodular integer matrix: a product of elementary matrices,
/// sometimes times `diag(1, -1)`.
pub fn random_unimodular(rng: &mut impl Rng) -> BigMat {
    let mut m = big([1, 0, 0, 1]);
    for _ in 0..rng.gen_range(1..4) {
        let k = rng.gen_range(-3..=3);
        let e = if rng.gen_bool(0.5) { [1, k, 0, 1] } else { [1, 0, k, 1] };
        m = big_mul(&m, &big(e));
    }
    if rng.gen_bool(0.25) {
        m = big_mul(&m, &big([1, 0, 0, -1]));
    }
    m
}

// 2x2 matrices over a prime field F_p with plain i64 arithmetic.
pub type ModMat = [i64; 4];

pub fn mod_mul(x: &ModMat, y: &ModMat, p: i64) -> ModMat {
    [
        (x[0] * y[0] + x[1] * y[2]).rem_euclid(p),
        (x[0] * y[1] + x[1] * y[3]).rem_euclid(p),
        (x[2] * y[0] + x[3] * y[2]).rem_euclid(p),
        (x[2] * y[1] + x[3] * y[3]).rem_euclid(p),
    ]
}

pub fn mod_inv_scalar(a: i64, p: i64) -> i64 {
    (1..p).find(|&b| (a * b).rem_euclid(p) == 1).expect("invertible")
}

pub fn mod_inv(x: &ModMat, p: i64) -> ModMat {
    let d = (x[0] * x[3] - x[1] * x[2]).rem_euclid(p);
    let di = mod_inv_scalar(d, p);
    [
        (x[3] * di).rem_euclid(p),
        (-x[1] * di).rem_euclid(p),
        (-x[2] * di).rem_euclid(p),
        (x[0] * di).rem_euclid(p),
    ]
}

pub fn mod_word(ls: &[(usize, bool)], x: &ModMat, y: &ModMat, p: i64) -> ModMat {
    let xi = mod_inv(x, p);
    let yi = mod_inv(y, p);
    let mut acc = [1, 0, 0, 1];
    for &(g, inv) in ls {
        let m = match (g, inv) {
            (0, false) => x,
            (0, true) => &xi,
            (_, false) => y,
            (_, true) => &yi,
        };
        acc = mod_mul(&acc, m, p);
    }
    acc
}

/// Every element of `SL(2, F_p)` by filtering all `p^4` matrices.
pub fn sl2_brute(p: i64) -> Vec<ModMat> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d - b * c).rem_euclid(p) == 1 {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}

/// Minimal period of `x` under `step`, if `x` returns within `limit` steps
/// without passing through `avoid`.
pub fn return_time<T: PartialEq + Clone>(x: &T, limit: usize, avoid: &T, step: impl Fn(&T) -> T) -> Option<usize> {
    let mut cur = x.clone();
    for n in 1..=limit {
        cur = step(&cur);
        if cur == *avoid {
            return None;
        }
        if cur == *x {
            return Some(n);
        }
    }
    None
}
