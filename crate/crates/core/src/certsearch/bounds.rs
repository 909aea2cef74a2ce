use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::CertError;
use crate::freegroup::Word;
use crate::gfield::is_prime;

/// Exact instances of the bounds behind the existence argument, for a word
/// of length `l` and a system of `s` words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub l: u64,
    pub s: u64,
    /// Number of variables, `4s`.
    pub n: u64,
    /// Degree bound, `l`.
    pub d: u64,
    /// `3s`.
    pub d0: u64,
    /// `ceil(2 ln 3 * l^4)`.
    pub q_bound: u64,
    /// Largest prime not above `q_bound`.
    pub q: u64,
    /// `D0 * n * (n + 1) * d^(n^2 + 1)`.
    #[serde(with = "decimal")]
    pub threshold: BigUint,
    /// Smallest power of `q` strictly above `threshold`.
    #[serde(with = "decimal")]
    pub q_min: BigUint,
    pub q_min_exponent: u32,
    /// `(n + 1) * d^(n^2)`.
    #[serde(with = "decimal")]
    pub k_lemma: BigUint,
    /// `(k_lemma - 1) * n + 1`.
    #[serde(with = "decimal")]
    pub big_k_lemma: BigUint,
    pub cardinality_bound_expr: String,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

fn largest_prime_at_most(n: u64) -> u64 {
    (2..=n.max(2)).rev().find(|&p| is_prime(p)).unwrap_or(2)
}

impl BoundsReport {
    /// Bounds for length `l` and `s` words, `l, s >= 1`.
    pub fn for_length(l: u64, s: u64) -> Result<BoundsReport, CertError> {
        if l == 0 {
            return Err(CertError::TrivialWord);
        }
        if s == 0 {
            return Err(CertError::InvalidSystemSize);
        }
        let n = 4 * s;
        let d = l;
        let d0 = 3 * s;
        let q_bound = (2.0 * 3f64.ln() * (l as f64).powi(4)).ceil() as u64;
        let q = largest_prime_at_most(q_bound);
        let big_d = BigUint::from(d);
        let nn = u32::try_from(n * n).map_err(|_| CertError::InvalidSystemSize)?;
        let threshold = BigUint::from(d0) * n * (n + 1) * big_d.pow(nn + 1);
        let mut q_min = BigUint::one();
        let mut q_min_exponent = 0;
        while q_min <= threshold {
            q_min *= q;
            q_min_exponent += 1;
        }
        let k_lemma = BigUint::from(n + 1) * big_d.pow(nn);
        let big_k_lemma = (&k_lemma - 1u32) * n + 1u32;
        let cardinality_bound_expr = if s == 1 {
            format!("{q}^(2*Q^4*3) with Q = Q_min; claimed <= exp(l^(68+eps)) for large l")
        } else {
            format!("{q}^(2*Q^{n}*3*{s}) with Q = Q_min; claimed <= exp(L^C) with C depending on {s}")
        };
        Ok(BoundsReport {
            l,
            s,
            n,
            d,
            d0,
            q_bound,
            q,
            threshold,
            q_min,
            q_min_exponent,
            k_lemma,
            big_k_lemma,
            cardinality_bound_expr,
        })
    }

    /// `Q_min > D0 * n * (n + 1) * d^(n^2 + 1)`, recomputed.
    pub fn inequality_holds(&self) -> bool {
        let rhs = BigUint::from(self.d0) * self.n * (self.n + 1) * BigUint::from(self.d).pow((self.n * self.n + 1) as u32);
        self.q_min > rhs
    }
}

/// Bounds for the reduced length of `w` and a system of `s` words.
pub fn theoretical_bounds(w: &Word, s: u64) -> Result<BoundsReport, CertError> {
    let l = w.reduce().len() as u64;
    BoundsReport::for_length(l, s)
}
