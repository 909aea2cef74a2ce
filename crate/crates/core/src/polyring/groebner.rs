use std::sync::OnceLock;

use super::{CoeffField, CoeffRing, Monomial, Poly, PolyError, PrimeField};

/// Output of the division algorithm: `f = sum quotients[i] * divisors[i] + remainder`.
#[derive(Clone, Debug, PartialEq)]
pub struct Division<R: CoeffRing> {
    pub quotients: Vec<Poly<R>>,
    pub remainder: Poly<R>,
}

/// Multivariate division in graded-lex order. At every step the leading
/// term of the running polynomial is divided by the first divisor whose
/// leading term divides it; otherwise it moves to the remainder.
pub fn divide<R: CoeffField>(f: &Poly<R>, divisors: &[Poly<R>]) -> Result<Division<R>, PolyError> {
    let (remainder, quotients) = reduce(f, divisors, true)?;
    Ok(Division {
        quotients: quotients.expect("quotients tracked"),
        remainder,
    })
}

fn reduce<R: CoeffField>(
    f: &Poly<R>,
    divisors: &[Poly<R>],
    track: bool,
) -> Result<(Poly<R>, Option<Vec<Poly<R>>>), PolyError> {
    let ring = f.ring().clone();
    let n = f.nvars();
    let mut leads = Vec::with_capacity(divisors.len());
    for d in divisors {
        if d.nvars() != n {
            return Err(PolyError::RingMismatch(n, d.nvars()));
        }
        let (lm, lc) = d.leading_term().ok_or(PolyError::ZeroDivisor)?;
        let inv = ring.inv(lc).ok_or(PolyError::ZeroDivisor)?;
        let mut tail = d.clone();
        tail.pop_leading();
        leads.push((lm.clone(), inv, tail));
    }
    let mut quotients = track.then(|| vec![Poly::zero(ring.clone(), n); divisors.len()]);
    let mut remainder = Poly::zero(ring.clone(), n);
    let mut p = f.clone();
    while let Some((m, c)) = p.pop_leading() {
        match leads.iter().position(|(lm, _, _)| lm.divides(&m)) {
            Some(i) => {
                let (lm, inv, tail) = &leads[i];
                let t = lm.quotient_of(&m);
                let coef = ring.mul(&c, inv);
                // p -= coef * t * divisor; the leading term is already gone
                p.add_scaled(tail, &ring.neg(&coef), &t);
                if let Some(qs) = quotients.as_mut() {
                    qs[i].add_term(t, coef);
                }
            }
            None => remainder.add_term(m, c),
        }
    }
    Ok((remainder, quotients))
}

/// `S(f, g) = (L / LT(f)) f - (L / LT(g)) g` with `L = lcm(LM(f), LM(g))`.
pub fn s_polynomial<R: CoeffField>(f: &Poly<R>, g: &Poly<R>) -> Result<Poly<R>, PolyError> {
    let ring = f.ring().clone();
    let (fm, fc) = f.leading_term().ok_or(PolyError::ZeroDivisor)?;
    let (gm, gc) = g.leading_term().ok_or(PolyError::ZeroDivisor)?;
    let l = fm.lcm(gm);
    let mut out = Poly::zero(ring.clone(), f.nvars());
    out.add_scaled(f, &ring.inv(fc).ok_or(PolyError::ZeroDivisor)?, &fm.quotient_of(&l));
    out.add_scaled(
        g,
        &ring.neg(&ring.inv(gc).ok_or(PolyError::ZeroDivisor)?),
        &gm.quotient_of(&l),
    );
    Ok(out)
}

/// Buchberger's criterion: every S-polynomial reduces to zero. Zero
/// elements make the answer `false`.
pub fn is_groebner<R: CoeffField>(basis: &[Poly<R>]) -> bool {
    if basis.iter().any(|p| p.is_zero()) {
        return false;
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = match s_polynomial(&basis[i], &basis[j]) {
                Ok(s) => s,
                Err(_) => return false,
            };
            match reduce(&s, basis, false) {
                Ok((r, _)) if r.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

/// The generators `f_i - x_i^Q` of `I_Q` over `F_q`, with `Q` a power of `q`.
#[derive(Debug)]
pub struct TwistedBasis {
    polys: Vec<Poly<PrimeField>>,
    q_power: u64,
    generators: Vec<Poly<PrimeField>>,
    groebner: OnceLock<bool>,
}

impl Clone for TwistedBasis {
    fn clone(&self) -> Self {
        TwistedBasis {
            polys: self.polys.clone(),
            q_power: self.q_power,
            generators: self.generators.clone(),
            groebner: self.groebner.clone(),
        }
    }
}

impl TwistedBasis {
    /// `polys` are `f_1..f_n` in `n` variables over one prime field.
    pub fn new(polys: Vec<Poly<PrimeField>>, q_power: u64) -> Result<Self, PolyError> {
        let n = polys.len();
        let field = *polys.first().ok_or(PolyError::AllZero)?.ring();
        for p in &polys {
            if p.nvars() != n {
                return Err(PolyError::RingMismatch(n, p.nvars()));
            }
            if *p.ring() != field {
                return Err(PolyError::NotCharacteristicPower(
                    p.ring().characteristic(),
                    field.characteristic(),
                ));
            }
        }
        let q = field.characteristic();
        let mut x = q_power;
        while x > 1 && x.is_multiple_of(q) {
            x /= q;
        }
        if x != 1 || q_power < q || q_power > u32::MAX as u64 {
            return Err(PolyError::NotCharacteristicPower(q_power, q));
        }
        let generators = polys
            .iter()
            .enumerate()
            .map(|(i, f)| {
                let mut g = f.clone();
                g.add_term(Monomial::var(n, i, q_power as u32), field.neg(&1));
                g
            })
            .collect();
        Ok(TwistedBasis {
            polys,
            q_power,
            generators,
            groebner: OnceLock::new(),
        })
    }

    pub fn polys(&self) -> &[Poly<PrimeField>] {
        &self.polys
    }

    pub fn q_power(&self) -> u64 {
        self.q_power
    }

    pub fn field(&self) -> PrimeField {
        *self.polys[0].ring()
    }

    pub fn nvars(&self) -> usize {
        self.polys.len()
    }

    /// `f_i - x_i^Q`.
    pub fn generators(&self) -> &[Poly<PrimeField>] {
        &self.generators
    }

    /// Every `f_i` has degree below `Q`, so the leading terms are `x_i^Q`.
    pub fn degrees_below_q(&self) -> bool {
        self.polys
            .iter()
            .all(|p| p.degree().is_none_or(|d| (d as u64) < self.q_power))
    }

    /// `deg f_i < Q` for all `i` and Buchberger's criterion holds. Cached.
    pub fn check_groebner(&self) -> bool {
        *self
            .groebner
            .get_or_init(|| self.degrees_below_q() && is_groebner(&self.generators))
    }

    /// Unique remainder modulo `I_Q`.
    pub fn normal_form(&self, f: &Poly<PrimeField>) -> Result<Poly<PrimeField>, PolyError> {
        if !self.check_groebner() {
            return Err(PolyError::NotGroebner);
        }
        reduce(f, &self.generators, false).map(|(r, _)| r)
    }

    pub fn ideal_member(&self, f: &Poly<PrimeField>) -> Result<bool, PolyError> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Number of monomials in `n` variables with every exponent below `Q`: `Q^n`.
pub fn standard_monomial_count(n: usize, q_power: u64) -> u128 {
    (q_power as u128).pow(n as u32)
}

/// Monomials with all exponents below `Q`, `x_n` varying fastest.
pub fn standard_monomials(n: usize, q_power: u32) -> impl Iterator<Item = Monomial> {
    let total = standard_monomial_count(n, q_power as u64);
    (0..total).map(move |mut code| {
        let mut e = vec![0u32; n];
        for slot in e.iter_mut().rev() {
            *slot = (code % q_power as u128) as u32;
            code /= q_power as u128;
        }
        Monomial::new(e)
    })
}
