use engelcert::polyring::{
    algebraic_dependence, binomial_bound_holds, divide, is_groebner, smallest_dependence_degree,
    standard_monomial_count, standard_monomials, Monomial, Poly, PrimeField, TwistedBasis,
};
use proptest::prelude::*;

type P = Poly<PrimeField>;

fn poly(q: u64, n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = P> {
    let term = (prop::collection::vec(0..=max_deg, n), 1..q);
    prop::collection::vec(term, 0..=max_terms).prop_map(move |terms| {
        let field = PrimeField::new(q).unwrap();
        let mut p = Poly::zero(field, n);
        for (exps, c) in terms {
            // clip to total degree max_deg
            let mut left = max_deg;
            let exps: Vec<u32> = exps
                .into_iter()
                .map(|e| {
                    let e = e.min(left);
                    left -= e;
                    e
                })
                .collect();
            p.add_term(Monomial::new(exps), c);
        }
        p
    })
}

/// Term-by-term evaluation with plain modular arithmetic.
fn oracle_eval(p: &P, point: &[u64], q: u64) -> u64 {
    p.terms().fold(0, |acc, (m, c)| {
        let mut t = *c;
        for (x, &e) in point.iter().zip(m.exponents()) {
            for _ in 0..e {
                t = t * x % q;
            }
        }
        (acc + t) % q
    })
}

fn all_points(q: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..q).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(5, 2, 3, 4), b in poly(5, 2, 3, 4), c in poly(5, 2, 3, 4)) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly(7, 3, 3, 4), b in poly(7, 3, 3, 4), pt in prop::collection::vec(0u64..7, 3)) {
        prop_assert_eq!(a.eval(&pt), oracle_eval(&a, &pt, 7));
        prop_assert_eq!(a.mul(&b).eval(&pt), oracle_eval(&a, &pt, 7) * oracle_eval(&b, &pt, 7) % 7);
        prop_assert_eq!(a.add(&b).eval(&pt), (oracle_eval(&a, &pt, 7) + oracle_eval(&b, &pt, 7)) % 7);
    }

    #[test]
    fn composition_commutes_with_evaluation(
        f in poly(3, 2, 3, 4),
        g1 in poly(3, 2, 2, 3),
        g2 in poly(3, 2, 2, 3),
        pt in prop::collection::vec(0u64..3, 2),
    ) {
        let composed = f.compose(&[g1.clone(), g2.clone()]).unwrap();
        let inner = [oracle_eval(&g1, &pt, 3), oracle_eval(&g2, &pt, 3)];
        prop_assert_eq!(oracle_eval(&composed, &pt, 3), oracle_eval(&f, &inner, 3));
    }

    #[test]
    fn division_identity(f in poly(5, 2, 5, 6), g1 in poly(5, 2, 3, 3), g2 in poly(5, 2, 3, 3)) {
        prop_assume!(!g1.is_zero() && !g2.is_zero());
        let divisors = [g1, g2];
        let div = divide(&f, &divisors).unwrap();
        let mut rebuilt = div.remainder.clone();
        for (qi, gi) in div.quotients.iter().zip(&divisors) {
            rebuilt = rebuilt.add(&qi.mul(gi));
        }
        prop_assert_eq!(rebuilt, f);
        for (m, _) in div.remainder.terms() {
            for g in &divisors {
                prop_assert!(!g.leading_monomial().unwrap().divides(m));
            }
        }
    }

    #[test]
    fn twisted_bases_are_groebner(
        fs in prop::collection::vec(poly(2, 3, 3, 4), 3),
    ) {
        let tb = TwistedBasis::new(fs, 4).unwrap();
        prop_assert!(tb.check_groebner());
        prop_assert!(is_groebner(tb.generators()));
    }

    #[test]
    fn generators_are_members_and_standard_polys_are_not(
        fs in prop::collection::vec(poly(3, 2, 2, 3), 2),
        g in poly(3, 2, 8, 5),
        h in poly(3, 2, 4, 3),
    ) {
        let tb = TwistedBasis::new(fs, 9).unwrap();
        for gen in tb.generators() {
            prop_assert!(tb.ideal_member(&gen.mul(&h)).unwrap());
        }
        // total degree <= 8 < 9 means every exponent is below Q
        prop_assert_eq!(tb.ideal_member(&g).unwrap(), g.is_zero());
        prop_assert_eq!(tb.normal_form(&g).unwrap(), g);
    }

    #[test]
    fn parse_round_trips(p in poly(7, 3, 4, 5)) {
        prop_assert_eq!(Poly::parse(&p.to_text(), PrimeField::new(7).unwrap(), 3).unwrap(), p);
    }
}

#[test]
fn standard_monomial_counts() {
    for (n, qq) in [(1usize, 4u32), (2, 3), (2, 4), (3, 2)] {
        let ms: Vec<Monomial> = standard_monomials(n, qq).collect();
        assert_eq!(ms.len() as u128, (qq as u128).pow(n as u32));
        assert_eq!(standard_monomial_count(n, qq as u64), ms.len() as u128);
        assert!(ms.iter().all(|m| m.exponents().iter().all(|&e| e < qq)));
    }
}

#[test]
fn solutions_of_a_twisted_system_are_bounded_by_q_to_the_n() {
    // f = (x2, x1) with Q = 2: fixed points of the swap composed with Frobenius
    let f = PrimeField::new(2).unwrap();
    let x = |i| Poly::var(f, 2, i);
    let tb = TwistedBasis::new(vec![x(1), x(0)], 2).unwrap();
    assert!(tb.check_groebner());
    let sols = all_points(2, 2)
        .into_iter()
        .filter(|p| tb.generators().iter().all(|g| oracle_eval(g, p, 2) == 0))
        .count();
    assert!(sols as u128 <= standard_monomial_count(2, 2));
}

#[test]
fn dependence_degree_is_minimal() {
    for (n, d) in [(1u64, 2u64), (2, 2), (2, 3), (3, 2)] {
        let s = smallest_dependence_degree(n, d);
        assert!(binomial_bound_holds(s, n, d));
        assert!(s <= (n + 1) * d.pow(n as u32));
    }
    assert_eq!(smallest_dependence_degree(2, 2), 8);
}

#[test]
fn dependence_kills_the_polynomials() {
    let field = PrimeField::new(3).unwrap();
    let fs: Vec<P> = ["x1^2 + x2", "x1*x2", "x2^2 + 2*x1"]
        .iter()
        .map(|t| Poly::parse(t, field, 2).unwrap())
        .collect();
    let dep = algebraic_dependence(&fs, 2).unwrap();
    assert!(!dep.psi.is_zero());
    assert!(dep.psi.degree().unwrap() <= 12);
    assert!(dep.psi.compose(&fs).unwrap().is_zero());
    for pt in all_points(3, 2) {
        let vals: Vec<u64> = fs.iter().map(|f| oracle_eval(f, &pt, 3)).collect();
        assert_eq!(oracle_eval(&dep.psi, &vals, 3), 0);
    }
}

#[test]
fn non_twisted_input_is_rejected() {
    let field = PrimeField::new(3).unwrap();
    let x = Poly::var(field, 1, 0);
    assert!(TwistedBasis::new(vec![x.clone()], 4).is_err());
    let tb = TwistedBasis::new(vec![x.pow(3)], 3).unwrap();
    assert!(!tb.check_groebner());
    assert!(tb.normal_form(&x).is_err());
}
