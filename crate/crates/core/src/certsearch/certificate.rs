use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::CertError;
use crate::dynamics::verbal_iterates;
use crate::freegroup::Word;
use crate::gfield::{sl2_order, Field, Matrix2};
use crate::symbolic::IntMatrix2;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateKind {
    Sl2,
    Cyclic,
}

/// The group the certificate lives in: `SL(2)` over an explicit finite
/// field, or `Z/M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CertField {
    Finite { q: u64, k: usize, modulus: Vec<u64> },
    Cyclic { m: u64 },
}

/// Matrix entries `[e11, e12, e21, e22]` as coefficient vectors, or one
/// residue per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Witness {
    Matrix(Vec<Vec<u64>>),
    Residues(Vec<u64>),
}

/// A self-contained record that `word` is not an iterated identity in a
/// named finite group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub word: String,
    pub kind: CertificateKind,
    pub field: CertField,
    /// `y` for `SL(2)` certificates, empty otherwise.
    pub y: Vec<i64>,
    pub witness: Witness,
    pub period: u64,
    /// Decimal string.
    pub group_order: String,
    #[serde(default)]
    pub search_meta: serde_json::Value,
}

impl Certificate {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Certificate, CertError> {
        serde_json::from_str(text).map_err(|e| CertError::Malformed(e.to_string()))
    }

    /// The field of an `SL(2)` certificate, rebuilt and validated.
    pub fn finite_field(&self) -> Result<Field, CertError> {
        match &self.field {
            CertField::Finite { q, k, modulus } => {
                Field::from_modulus(*q, *k, modulus.clone()).map_err(|e| CertError::Malformed(e.to_string()))
            }
            CertField::Cyclic { .. } => Err(CertError::Malformed("expected a finite field".into())),
        }
    }

    /// The witness matrix of an `SL(2)` certificate.
    pub fn witness_matrix(&self, field: &Field) -> Result<Matrix2, CertError> {
        let Witness::Matrix(rows) = &self.witness else {
            return Err(CertError::Malformed("expected a matrix witness".into()));
        };
        if rows.len() != 4 {
            return Err(CertError::Malformed(format!("matrix witness has {} entries", rows.len())));
        }
        let mut entries = Vec::with_capacity(4);
        for r in rows {
            entries.push(field.element(r.clone()).map_err(|e| CertError::Malformed(e.to_string()))?);
        }
        Ok(Matrix2 {
            entries: entries.try_into().expect("four entries"),
        })
    }
}

/// Re-derives every claim of the certificate from scratch. `Ok(false)` means
/// a claim is wrong; `Err` means the certificate could not be read.
pub fn verify_certificate(c: &Certificate) -> Result<bool, CertError> {
    if c.schema_version != SCHEMA_VERSION {
        return Err(CertError::Malformed(format!(
            "schema version {} (expected {SCHEMA_VERSION})",
            c.schema_version
        )));
    }
    match c.kind {
        CertificateKind::Sl2 => verify_sl2(c),
        CertificateKind::Cyclic => verify_cyclic(c),
    }
}

/// Parses and verifies certificate JSON.
pub fn verify_certificate_json(text: &str) -> Result<bool, CertError> {
    verify_certificate(&Certificate::from_json(text)?)
}

fn verify_sl2(c: &Certificate) -> Result<bool, CertError> {
    let field = c.finite_field()?;
    let w = Word::parse(&c.word, 2).map_err(|e| CertError::Malformed(e.to_string()))?;
    let y: [i64; 4] = c
        .y
        .as_slice()
        .try_into()
        .map_err(|_| CertError::Malformed(format!("y has {} entries", c.y.len())))?;
    let x = c.witness_matrix(&field)?;
    if c.group_order != sl2_order(field.order()).to_string() {
        return Ok(false);
    }
    let y_bar = IntMatrix2::from_i64(y).reduce(&field);
    if field.is_zero(&y_bar.det(&field)) || !x.in_sl2(&field) || x.is_identity(&field) || c.period == 0 {
        return Ok(false);
    }
    let iterates = match verbal_iterates(&w, &x, &y_bar, &field, c.period) {
        Ok(v) => v,
        Err(_) => return Ok(false),
    };
    for (i, m) in iterates.iter().enumerate() {
        if m.is_identity(&field) || !m.in_sl2(&field) {
            return Ok(false);
        }
        let last = i + 1 == iterates.len();
        if (*m == x) != last {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One step of the cyclic iteration: the new value of the first generator.
pub fn cyclic_step(w: &Word, values: &[u64], m: u64) -> u64 {
    w.letters().iter().fold(0, |acc, l| {
        let v = values[l.generator.index()] % m;
        if l.inverse {
            (acc + m - v) % m
        } else {
            (acc + v) % m
        }
    })
}

fn verify_cyclic(c: &Certificate) -> Result<bool, CertError> {
    let CertField::Cyclic { m } = c.field else {
        return Err(CertError::Malformed("expected a cyclic modulus".into()));
    };
    let Witness::Residues(values) = &c.witness else {
        return Err(CertError::Malformed("expected a residue witness".into()));
    };
    if values.is_empty() {
        return Err(CertError::Malformed("empty residue witness".into()));
    }
    let w = Word::parse(&c.word, values.len()).map_err(|e| CertError::Malformed(e.to_string()))?;
    if m < 2 || c.period == 0 || c.group_order != m.to_string() || values.iter().any(|&v| v >= m) {
        return Ok(false);
    }
    let mut state = values.clone();
    for step in 1..=c.period {
        state[0] = cyclic_step(&w, &state, m);
        if state[0] == 0 {
            return Ok(false);
        }
        if (state[0] == values[0]) != (step == c.period) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `M > |e|` coprime to `e`.
pub fn coprime_modulus(e: i64) -> u64 {
    let a = e.unsigned_abs();
    (a + 1..).find(|m| m.gcd(&a) == 1).expect("some modulus is coprime")
}
