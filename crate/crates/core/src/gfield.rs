//! Explicit finite fields `F_{q^k} = F_q[t] / (m(t))` with a canonical
//! (lexicographically smallest) irreducible modulus, Frobenius, square roots
//! with canonical quadratic extensions, and `SL(2)` enumeration.
//!
//! Elements are coefficient vectors in the power basis of `t`, low degree
//! first. Elements are ordered lexicographically on that vector, which is
//! also the order of [`Field::encode`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of `SL(2)` elements an enumeration may visit.
pub const DEFAULT_SL2_BUDGET: u64 = 1_000_000;

/// Largest field order for which dense arithmetic tables are built.
pub const TABLE_ORDER_LIMIT: u64 = 2048;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (must be below 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {q}^{k} does not fit in 64 bits")]
    OrderOverflow { q: u64, k: usize },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("modulus is not a monic irreducible polynomial of degree {0}")]
    BadModulus(usize),
    #[error("element has {got} coordinates, field needs {expected} residues below {q}")]
    BadElement { expected: usize, got: usize, q: u64 },
    #[error("enumeration needs {needed} elements, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("field order {0} too large for dense tables")]
    TooLargeForTables(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense univariate polynomials over F_q, low degree first, no trailing zeros.
mod upoly {
    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn inv_mod(a: u64, q: u64) -> u64 {
        pow_mod(a, q - 2, q)
    }

    pub fn pow_mod(mut b: u64, mut e: u64, q: u64) -> u64 {
        let mut r = 1 % q;
        b %= q;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % q;
            }
            b = b * b % q;
            e >>= 1;
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + q - y) % q
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % q;
            }
        }
        trim(out)
    }

    /// Remainder modulo a nonzero `m`.
    pub fn rem(a: &[u64], m: &[u64], q: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], q);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % q;
            if c != 0 {
                let shift = top - dm;
                for (j, &mj) in m.iter().enumerate() {
                    r[shift + j] = (r[shift + j] + q - c * mj % q) % q;
                }
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y, q);
            x = y;
            y = r;
        }
        x
    }

    /// `base^e mod m`.
    pub fn pow_rem(base: &[u64], mut e: u64, m: &[u64], q: u64) -> Vec<u64> {
        let mut result = vec![1];
        let mut b = rem(base, m, q);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, q), m, q);
            }
            b = rem(&mul(&b, &b, q), m, q);
            e >>= 1;
        }
        rem(&result, m, q)
    }
}

/// Ben-Or irreducibility test: a monic `f` of degree `k` over `F_q` is
/// irreducible iff `gcd(t^{q^i} - t, f) = 1` for every `1 <= i <= k/2`.
pub fn is_irreducible(f: &[u64], q: u64) -> bool {
    let f = upoly::trim(f.to_vec());
    if f.len() < 2 {
        return false;
    }
    let k = f.len() - 1;
    let t = vec![0, 1];
    let mut power = upoly::rem(&t, &f, q);
    for _ in 1..=k / 2 {
        power = upoly::pow_rem(&power, q, &f, q);
        let diff = upoly::sub(&power, &t, q);
        let g = upoly::gcd(&f, &diff, q);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// A coordinate vector in the power basis of the field generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `F_{q^k}` with a stored monic irreducible modulus (low degree first,
/// length `k + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    q: u64,
    k: usize,
    modulus: Vec<u64>,
}

impl Field {
    /// `F_{q^k}` with the lexicographically smallest monic irreducible modulus.
    pub fn build(q: u64, k: usize) -> Result<Field, FieldError> {
        if !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        if q >= 1 << 31 {
            return Err(FieldError::CharacteristicTooLarge(q));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        q.checked_pow(k as u32)
            .ok_or(FieldError::OrderOverflow { q, k })?;
        if k == 1 {
            return Ok(Field {
                q,
                k,
                modulus: vec![0, 1],
            });
        }
        // Candidates t^k + c_{k-1} t^{k-1} + ... + c_0, scanned with c_0
        // varying slowest.
        let mut lower = vec![0u64; k];
        loop {
            let mut candidate = lower.clone();
            candidate.push(1);
            if is_irreducible(&candidate, q) {
                return Ok(Field {
                    q,
                    k,
                    modulus: candidate,
                });
            }
            // odometer, last coordinate fastest
            let mut i = k;
            loop {
                if i == 0 {
                    unreachable!("irreducible polynomials exist in every degree");
                }
                i -= 1;
                lower[i] += 1;
                if lower[i] < q {
                    break;
                }
                lower[i] = 0;
            }
        }
    }

    /// Rebuilds a field from a serialized modulus, checking it.
    pub fn from_modulus(q: u64, k: usize, modulus: Vec<u64>) -> Result<Field, FieldError> {
        if !is_prime(q) {
            return Err(FieldError::NotPrime(q));
        }
        if q >= 1 << 31 {
            return Err(FieldError::CharacteristicTooLarge(q));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        q.checked_pow(k as u32)
            .ok_or(FieldError::OrderOverflow { q, k })?;
        if modulus.len() != k + 1
            || modulus[k] != 1
            || modulus.iter().any(|&c| c >= q)
            || !is_irreducible(&modulus, q)
        {
            return Err(FieldError::BadModulus(k));
        }
        Ok(Field { q, k, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.q.pow(self.k as u32)
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement, FieldError> {
        if coeffs.len() != self.k || coeffs.iter().any(|&c| c >= self.q) {
            return Err(FieldError::BadElement {
                expected: self.k,
                got: coeffs.len(),
                q: self.q,
            });
        }
        Ok(FieldElement { coeffs })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        coeffs[0] = v.rem_euclid(self.q as i64) as u64;
        FieldElement { coeffs }
    }

    /// The class of `t`; for `k = 1` this is the root `0` of the modulus `t`.
    pub fn generator(&self) -> FieldElement {
        if self.k == 1 {
            return self.zero();
        }
        let mut coeffs = vec![0; self.k];
        coeffs[1] = 1;
        FieldElement { coeffs }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| (x + y) % self.q)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        FieldElement {
            coeffs: a.coeffs.iter().map(|x| (self.q - x) % self.q).collect(),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let prod = upoly::mul(&a.coeffs, &b.coeffs, self.q);
        let mut coeffs = upoly::rem(&prod, &self.modulus, self.q);
        coeffs.resize(self.k, 0);
        FieldElement { coeffs }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        result
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    /// `a^q`.
    pub fn frobenius(&self, a: &FieldElement) -> FieldElement {
        self.pow(a, self.q)
    }

    /// Index in `0..order`, with `c_0` most significant so that numeric
    /// order agrees with element order.
    pub fn encode(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().fold(0, |acc, &c| acc * self.q + c)
    }

    pub fn decode(&self, mut index: u64) -> FieldElement {
        let mut coeffs = vec![0; self.k];
        for slot in coeffs.iter_mut().rev() {
            *slot = index % self.q;
            index /= self.q;
        }
        FieldElement { coeffs }
    }

    /// All elements in ascending order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.decode(i))
    }

    /// Euler's criterion (every element is a square in characteristic 2).
    pub fn is_square(&self, a: &FieldElement) -> bool {
        if self.is_zero(a) || self.q == 2 {
            return true;
        }
        self.pow(a, (self.order() - 1) / 2) == self.one()
    }

    /// Canonical square root (the smaller of `±r`) if `a` is a square.
    pub fn sqrt(&self, a: &FieldElement) -> Option<FieldElement> {
        if self.is_zero(a) {
            return Some(self.zero());
        }
        let n = self.order();
        if self.q == 2 {
            return Some(self.pow(a, n / 2));
        }
        if !self.is_square(a) {
            return None;
        }
        // Tonelli-Shanks on n - 1 = 2^e * m
        let mut m = n - 1;
        let mut e = 0u32;
        while m.is_multiple_of(2) {
            m /= 2;
            e += 1;
        }
        let non_residue = (1..n)
            .map(|i| self.decode(i))
            .find(|z| !self.is_square(z))
            .expect("odd order fields have non-squares");
        let mut c = self.pow(&non_residue, m);
        let mut t = self.pow(a, m);
        let mut r = self.pow(a, m.div_ceil(2));
        let mut s = e;
        let one = self.one();
        while t != one {
            let mut i = 0;
            let mut t2 = t.clone();
            while t2 != one {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(s - i - 1) {
                b = self.mul(&b, &b);
            }
            r = self.mul(&r, &b);
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            s = i;
        }
        let neg = self.neg(&r);
        Some(if neg < r { neg } else { r })
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: &FieldElement) -> Result<u64, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::ZeroInverse);
        }
        let mut ord = self.order() - 1;
        for p in prime_divisors(ord) {
            while ord.is_multiple_of(p) && self.pow(a, ord / p) == self.one() {
                ord /= p;
            }
        }
        Ok(ord)
    }

    /// Smallest element (in element order) generating the multiplicative group.
    pub fn primitive_element(&self) -> FieldElement {
        let n = self.order();
        (1..n)
            .map(|i| self.decode(i))
            .find(|g| self.multiplicative_order(g).ok() == Some(n - 1))
            .expect("multiplicative group is cyclic")
    }

    /// Evaluates a polynomial with prime-field coefficients (low degree first).
    pub fn eval_poly(&self, coeffs: &[u64], x: &FieldElement) -> FieldElement {
        coeffs.iter().rev().fold(self.zero(), |acc, &c| {
            self.add(&self.mul(&acc, x), &self.from_int(c as i64))
        })
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.q)
        } else {
            write!(f, "F_{}^{} mod {:?}", self.q, self.k, self.modulus)
        }
    }
}

/// Field map `source -> target` fixing `F_q`, determined by the image of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: Field,
    pub target: Field,
    pub image_of_generator: FieldElement,
}

impl Embedding {
    /// The canonical embedding: `t` goes to the smallest root of the source
    /// modulus in the target. Requires `source.degree()` to divide
    /// `target.degree()` and equal characteristics.
    pub fn canonical(source: &Field, target: &Field) -> Option<Embedding> {
        if source.q != target.q || !target.k.is_multiple_of(source.k) {
            return None;
        }
        let root = target
            .elements()
            .find(|z| target.is_zero(&target.eval_poly(&source.modulus, z)))?;
        Some(Embedding {
            source: source.clone(),
            target: target.clone(),
            image_of_generator: root,
        })
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        let t = &self.target;
        a.coeffs.iter().rev().fold(t.zero(), |acc, &c| {
            t.add(&t.mul(&acc, &self.image_of_generator), &t.from_int(c as i64))
        })
    }
}

/// Result of [`sqrt_or_extend`].
#[derive(Clone, Debug)]
pub struct SqrtOutcome {
    pub field: Field,
    pub root: FieldElement,
    /// Present when the root lives in the degree `2k` extension.
    pub embedding: Option<Embedding>,
    /// The input was zero.
    pub degenerate: bool,
}

/// A square root of `a`, in `field` when possible, otherwise in the
/// canonical degree `2k` field, together with the embedding used.
pub fn sqrt_or_extend(a: &FieldElement, field: &Field) -> Result<SqrtOutcome, FieldError> {
    if let Some(root) = field.sqrt(a) {
        return Ok(SqrtOutcome {
            field: field.clone(),
            degenerate: field.is_zero(a),
            root,
            embedding: None,
        });
    }
    let big = Field::build(field.q, 2 * field.k)?;
    let emb = Embedding::canonical(field, &big).expect("degree 2k contains degree k");
    let image = emb.apply(a);
    let root = big
        .sqrt(&image)
        .expect("every element becomes a square in the quadratic extension");
    Ok(SqrtOutcome {
        field: big,
        root,
        embedding: Some(emb),
        degenerate: false,
    })
}

/// A 2x2 matrix `[[e11, e12], [e21, e22]]` over a field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matrix2 {
    pub entries: [FieldElement; 4],
}

impl Matrix2 {
    pub fn new(e11: FieldElement, e12: FieldElement, e21: FieldElement, e22: FieldElement) -> Self {
        Matrix2 {
            entries: [e11, e12, e21, e22],
        }
    }

    pub fn identity(field: &Field) -> Self {
        Matrix2::new(field.one(), field.zero(), field.zero(), field.one())
    }

    /// Reduction of an integer matrix `[a, b, c, d]` into the prime subfield.
    pub fn from_ints(field: &Field, e: [i64; 4]) -> Self {
        Matrix2 {
            entries: e.map(|v| field.from_int(v)),
        }
    }

    pub fn mul(&self, other: &Matrix2, field: &Field) -> Matrix2 {
        let [a, b, c, d] = &self.entries;
        let [e, f, g, h] = &other.entries;
        Matrix2::new(
            field.add(&field.mul(a, e), &field.mul(b, g)),
            field.add(&field.mul(a, f), &field.mul(b, h)),
            field.add(&field.mul(c, e), &field.mul(d, g)),
            field.add(&field.mul(c, f), &field.mul(d, h)),
        )
    }

    pub fn det(&self, field: &Field) -> FieldElement {
        let [a, b, c, d] = &self.entries;
        field.sub(&field.mul(a, d), &field.mul(b, c))
    }

    /// `[[d, -b], [-c, a]]`.
    pub fn adjugate(&self, field: &Field) -> Matrix2 {
        let [a, b, c, d] = &self.entries;
        Matrix2::new(d.clone(), field.neg(b), field.neg(c), a.clone())
    }

    pub fn inverse(&self, field: &Field) -> Result<Matrix2, FieldError> {
        let inv_det = field.inv(&self.det(field))?;
        Ok(self.adjugate(field).scale(&inv_det, field))
    }

    pub fn scale(&self, c: &FieldElement, field: &Field) -> Matrix2 {
        Matrix2 {
            entries: self.entries.clone().map(|e| field.mul(&e, c)),
        }
    }

    pub fn map(&self, f: impl Fn(&FieldElement) -> FieldElement) -> Matrix2 {
        Matrix2 {
            entries: [
                f(&self.entries[0]),
                f(&self.entries[1]),
                f(&self.entries[2]),
                f(&self.entries[3]),
            ],
        }
    }

    pub fn is_identity(&self, field: &Field) -> bool {
        *self == Matrix2::identity(field)
    }

    /// Scalar matrices commute with every matrix.
    pub fn is_scalar(&self, field: &Field) -> bool {
        let [a, b, c, d] = &self.entries;
        field.is_zero(b) && field.is_zero(c) && a == d
    }

    pub fn in_sl2(&self, field: &Field) -> bool {
        self.det(field) == field.one()
    }
}

/// `|SL(2, F_N)| = N^3 - N`.
pub fn sl2_order(n: u64) -> u128 {
    let n = n as u128;
    n * n * n - n
}

/// Dense add/mul/neg/inv tables on encoded elements, for enumeration work.
#[derive(Clone, Debug)]
pub struct FieldTables {
    field: Field,
    n: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    one: u32,
}

impl FieldTables {
    pub fn new(field: &Field) -> Result<FieldTables, FieldError> {
        let order = field.order();
        if order > TABLE_ORDER_LIMIT {
            return Err(FieldError::TooLargeForTables(order));
        }
        let n = order as usize;
        let elems: Vec<FieldElement> = field.elements().collect();
        let mut add = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let s = field.encode(&field.add(&elems[i], &elems[j])) as u32;
                add[i * n + j] = s;
                add[j * n + i] = s;
            }
        }
        // multiplication through discrete logs of a primitive element
        let g = field.primitive_element();
        let mut exp = vec![0u32; n - 1];
        let mut log = vec![0usize; n];
        let mut cur = field.one();
        for (e, slot) in exp.iter_mut().enumerate() {
            let code = field.encode(&cur) as usize;
            *slot = code as u32;
            log[code] = e;
            cur = field.mul(&cur, &g);
        }
        let mut mul = vec![0u32; n * n];
        for i in 1..n {
            for j in 1..n {
                mul[i * n + j] = exp[(log[i] + log[j]) % (n - 1)];
            }
        }
        let neg = elems
            .iter()
            .map(|e| field.encode(&field.neg(e)) as u32)
            .collect();
        let mut inv = vec![0u32; n];
        for (i, slot) in inv.iter_mut().enumerate().skip(1) {
            *slot = exp[(n - 1 - log[i]) % (n - 1)];
        }
        Ok(FieldTables {
            field: field.clone(),
            n,
            add,
            mul,
            neg,
            inv,
            one: field.encode(&field.one()) as u32,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Code of the multiplicative identity.
    #[inline]
    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn identity_matrix(&self) -> [u32; 4] {
        [self.one, 0, 0, self.one]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero encoded element (zero maps to zero).
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut r = self.one;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn encode(&self, a: &FieldElement) -> u32 {
        self.field.encode(a) as u32
    }

    pub fn decode(&self, a: u32) -> FieldElement {
        self.field.decode(a as u64)
    }

    #[inline]
    pub fn mat_mul(&self, x: &[u32; 4], y: &[u32; 4]) -> [u32; 4] {
        [
            self.add(self.mul(x[0], y[0]), self.mul(x[1], y[2])),
            self.add(self.mul(x[0], y[1]), self.mul(x[1], y[3])),
            self.add(self.mul(x[2], y[0]), self.mul(x[3], y[2])),
            self.add(self.mul(x[2], y[1]), self.mul(x[3], y[3])),
        ]
    }

    /// Inverse of a determinant-one matrix.
    #[inline]
    pub fn sl2_inv(&self, x: &[u32; 4]) -> [u32; 4] {
        [x[3], self.neg(x[1]), self.neg(x[2]), x[0]]
    }

    pub fn encode_matrix(&self, m: &Matrix2) -> [u32; 4] {
        [
            self.encode(&m.entries[0]),
            self.encode(&m.entries[1]),
            self.encode(&m.entries[2]),
            self.encode(&m.entries[3]),
        ]
    }

    pub fn decode_matrix(&self, m: &[u32; 4]) -> Matrix2 {
        Matrix2 {
            entries: m.map(|e| self.decode(e)),
        }
    }

    /// Rank of a determinant-one matrix in `0..N^3 - N`. Matrices with
    /// `a != 0` come first, indexed by `(a, b, c)`; then `a = 0`, indexed by
    /// `(b, d)`.
    #[inline]
    pub fn sl2_rank(&self, m: &[u32; 4]) -> usize {
        let n = self.n;
        let [a, b, c, d] = m.map(|e| e as usize);
        if a != 0 {
            ((a - 1) * n + b) * n + c
        } else {
            (n - 1) * n * n + (b - 1) * n + d
        }
    }

    pub fn sl2_unrank(&self, rank: usize) -> [u32; 4] {
        let n = self.n;
        let split = (n - 1) * n * n;
        if rank < split {
            let c = (rank % n) as u32;
            let b = ((rank / n) % n) as u32;
            let a = (rank / (n * n) + 1) as u32;
            // d = (1 + b c) / a
            let d = self.mul(self.add(self.one, self.mul(b, c)), self.inv(a));
            [a, b, c, d]
        } else {
            let r = rank - split;
            let d = (r % n) as u32;
            let b = (r / n + 1) as u32;
            // -b c = 1
            let c = self.neg(self.inv(b));
            [0, b, c, d]
        }
    }

    pub fn sl2_size(&self) -> usize {
        self.n * self.n * self.n - self.n
    }
}

/// Every element of `SL(2, field)` exactly once, in rank order.
pub fn sl2_enumerate(
    field: &Field,
    budget: u64,
) -> Result<impl Iterator<Item = Matrix2>, FieldError> {
    let needed = sl2_order(field.order());
    if needed > budget as u128 {
        return Err(FieldError::BudgetExceeded { needed, budget });
    }
    let tables = FieldTables::new(field)?;
    Ok((0..tables.sl2_size()).map(move |r| tables.decode_matrix(&tables.sl2_unrank(r))))
}
