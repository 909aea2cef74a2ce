//! Sparse multivariate polynomials over `Z` and `F_q` in graded-lex order,
//! with the division algorithm, twisted bases `f_i - x_i^Q`, normal forms,
//! standard monomials and the algebraic-dependence solver.
//!
//! Text format: terms joined by `" + "`, each `c*x1^a1*x2^a2` with the
//! exponent omitted when it is 1 and the variable omitted when it is 0.
//! A constant term is just `c`; the zero polynomial is `0`.

mod dependence;
mod groebner;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::ops::Bound;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use dependence::{algebraic_dependence, binomial_bound_holds, smallest_dependence_degree, Dependence};
pub use groebner::{
    divide, is_groebner, s_polynomial, standard_monomial_count, standard_monomials, Division,
    TwistedBasis,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("monomials have {0} and {1} variables")]
    LengthMismatch(usize, usize),
    #[error("polynomials live in rings with {0} and {1} variables")]
    RingMismatch(usize, usize),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("basis is not a Groebner basis")]
    NotGroebner,
    #[error("{0} is not a power of the characteristic {1}")]
    NotCharacteristicPower(u64, u64),
    #[error("all input polynomials are zero")]
    AllZero,
    #[error("input polynomial of degree {got} exceeds the declared bound {bound}")]
    DegreeTooLarge { got: u32, bound: u32 },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("term count {got} exceeds the cap {cap}")]
    TermCap { got: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// A commutative coefficient ring, passed by value next to the data.
pub trait CoeffRing: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, v: &BigInt) -> Self::Elem;
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// Coefficient rings with inverses of nonzero elements.
pub trait CoeffField: CoeffRing {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
}

/// The integers, arbitrary precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl CoeffRing for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, v: &BigInt) -> BigInt {
        v.clone()
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// The prime field `F_q`, residues in `0..q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Result<Self, PolyError> {
        if !crate::gfield::is_prime(q) || q >= 1 << 31 {
            return Err(PolyError::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn characteristic(&self) -> u64 {
        self.q
    }

    pub fn residue(&self, v: i64) -> u64 {
        v.rem_euclid(self.q as i64) as u64
    }
}

impl CoeffRing for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.q
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.q
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.q - a) % self.q
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.q
    }
    fn from_int(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.q);
        let r = ((v % &m) + &m) % &m;
        r.try_into().expect("residue fits")
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl CoeffField for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r, mut b, mut e) = (1u64, *a, self.q - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.q;
            }
            b = b * b % self.q;
            e >>= 1;
        }
        Some(r)
    }
}

/// Exponent vector, ordered graded-lex: total degree first, then
/// lexicographic with `x_1` most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded-lex comparison with a length check.
pub fn grlex_cmp(a: &Monomial, b: &Monomial) -> Result<Ordering, PolyError> {
    if a.nvars() != b.nvars() {
        return Err(PolyError::LengthMismatch(a.nvars(), b.nvars()));
    }
    Ok(a.cmp(b))
}

/// Polynomial with terms keyed by monomial in graded-lex order; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<R: CoeffRing> {
    ring: R,
    nvars: usize,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: CoeffRing> Poly<R> {
    pub fn zero(ring: R, nvars: usize) -> Self {
        Poly {
            ring,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: R, nvars: usize, c: R::Elem) -> Self {
        let mut p = Poly::zero(ring, nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(ring: R, nvars: usize) -> Self {
        let c = ring.one();
        Poly::constant(ring, nvars, c)
    }

    /// The variable `x_{i+1}`.
    pub fn var(ring: R, nvars: usize, i: usize) -> Self {
        Poly::monomial(ring.clone(), Monomial::var(nvars, i, 1), ring.one())
    }

    pub fn monomial(ring: R, m: Monomial, c: R::Elem) -> Self {
        let mut p = Poly::zero(ring, m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: R, nvars: usize, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut p = Poly::zero(ring, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> R::Elem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: R::Elem) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if self.ring.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = self.ring.add(existing, &c);
                if self.ring.is_zero(&sum) {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Adds `c * m * other` in place.
    pub fn add_scaled(&mut self, other: &Poly<R>, c: &R::Elem, m: &Monomial) {
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), self.ring.mul(c, oc));
        }
    }

    pub fn pop_leading(&mut self) -> Option<(Monomial, R::Elem)> {
        self.terms.pop_last()
    }

    pub fn add(&self, other: &Poly<R>) -> Poly<R> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly<R> {
        Poly {
            ring: self.ring.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly<R>) -> Poly<R> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Poly<R> {
        let mut out = Poly::zero(self.ring.clone(), self.nvars);
        for (m, oc) in &self.terms {
            out.add_term(m.clone(), self.ring.mul(c, oc));
        }
        out
    }

    pub fn mul(&self, other: &Poly<R>) -> Poly<R> {
        let mut out = Poly::zero(self.ring.clone(), self.nvars);
        for (m, c) in &self.terms {
            out.add_scaled(other, c, m);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly<R> {
        let mut result = Poly::one(self.ring.clone(), self.nvars);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitutes `subs[i]` for `x_{i+1}`; the result lives in the ring of
    /// the substituted polynomials.
    pub fn compose(&self, subs: &[Poly<R>]) -> Result<Poly<R>, PolyError> {
        if subs.len() != self.nvars {
            return Err(PolyError::RingMismatch(self.nvars, subs.len()));
        }
        let target = subs.first().map_or(0, |p| p.nvars);
        if subs.iter().any(|p| p.nvars != target) {
            return Err(PolyError::RingMismatch(target, target + 1));
        }
        // cache powers per variable
        let mut powers: Vec<Vec<Poly<R>>> = subs
            .iter()
            .map(|p| vec![Poly::one(self.ring.clone(), target), p.clone()])
            .collect();
        let mut out = Poly::zero(self.ring.clone(), target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(self.ring.clone(), target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&subs[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][e as usize]);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Evaluates at a point of any ring that the coefficients map into.
    pub fn eval_with<T: Clone>(
        &self,
        point: &[T],
        coeff: impl Fn(&R::Elem) -> T,
        one: T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        let mut acc: Option<T> = None;
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = mul(&t, x);
                }
            }
            acc = Some(match acc {
                None => t,
                Some(a) => add(&a, &t),
            });
        }
        match acc {
            Some(a) => a,
            None => {
                // zero polynomial: 0 = one * coeff(0)
                mul(&one, &coeff(&self.ring.zero()))
            }
        }
    }

    /// Evaluates at a point with coordinates in the coefficient ring.
    pub fn eval(&self, point: &[R::Elem]) -> R::Elem {
        let ring = &self.ring;
        self.eval_with(
            point,
            |c| c.clone(),
            ring.one(),
            |a, b| ring.add(a, b),
            |a, b| ring.mul(a, b),
        )
    }

    /// Maps coefficients into another ring (e.g. reduction mod q).
    pub fn map_ring<S: CoeffRing>(&self, target: S, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S> {
        let mut out = Poly::zero(target, self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Terms strictly below `m` in graded-lex order.
    pub fn terms_below(&self, m: &Monomial) -> impl Iterator<Item = (&Monomial, &R::Elem)> {
        self.terms.range((Bound::Unbounded, Bound::Excluded(m)))
    }

    /// Textual form in descending term order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut s = self.ring.format(c);
                for (i, &e) in m.exponents().iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!("*x{}", i + 1)),
                        _ => s.push_str(&format!("*x{}^{}", i + 1, e)),
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }

    /// Parses the text format. Coefficients are read as integers and mapped
    /// into the ring; a missing coefficient means 1, and `-x1` means `-1*x1`.
    pub fn parse(text: &str, ring: R, nvars: usize) -> Result<Poly<R>, PolyError> {
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        // split on '+' and on '-' that starts a term
        let mut pieces: Vec<String> = Vec::new();
        let mut current = String::new();
        let mut prev: Option<char> = None;
        for ch in cleaned.chars() {
            let starts_term = ch == '+' || (ch == '-' && !matches!(prev, None | Some('+') | Some('^') | Some('*')));
            if starts_term {
                if !current.is_empty() {
                    pieces.push(std::mem::take(&mut current));
                }
                if ch == '-' {
                    current.push('-');
                }
            } else {
                current.push(ch);
            }
            prev = Some(ch);
        }
        if !current.is_empty() {
            pieces.push(current);
        }
        let mut out = Poly::zero(ring.clone(), nvars);
        for piece in pieces {
            let (negative, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, piece.clone()),
            };
            let mut coeff = BigInt::one();
            let mut exps = vec![0u32; nvars];
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(PolyError::Parse(format!("empty factor in {piece:?}")));
                }
                if let Some(var) = factor.strip_prefix('x') {
                    let (idx, exp) = match var.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (var, "1"),
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad variable {factor:?}")))?;
                    let exp: u32 = exp
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad exponent {factor:?}")))?;
                    if idx == 0 || idx > nvars {
                        return Err(PolyError::Parse(format!(
                            "variable x{idx} outside x1..x{nvars}"
                        )));
                    }
                    exps[idx - 1] += exp;
                } else {
                    let c: BigInt = factor
                        .parse()
                        .map_err(|_| PolyError::Parse(format!("bad coefficient {factor:?}")))?;
                    coeff *= c;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Monomial(exps), ring.from_int(&coeff));
        }
        Ok(out)
    }
}

impl Poly<Integers> {
    /// Largest absolute value of a coefficient (zero for the zero polynomial).
    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Coefficient-wise reduction into `F_q`.
    pub fn reduce_mod(&self, field: PrimeField) -> Poly<PrimeField> {
        self.map_ring(field, |c| field.from_int(c))
    }
}

impl<R: CoeffRing> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
