mod common;

use std::collections::HashMap;

use common::{mod_word, return_time};
use engelcert::certsearch::twisted_to_periodic;
use engelcert::dynamics::{
    compose_map, cycle_search_sl2, cycle_search_tuples, frobenius_period, twisted_solutions, verbal_iterates,
    verify_iteration_congruence, FunctionalGraph, PolyMap, DEFAULT_TERM_CAP,
};
use engelcert::freegroup::{Word, WordSystem};
use engelcert::gfield::Field;
use engelcert::polyring::{Monomial, Poly, PrimeField, TwistedBasis};
use engelcert::symbolic::{reduce_mod, word_to_h, IntMatrix2};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type P = Poly<PrimeField>;

fn random_poly(rng: &mut impl Rng, q: u64, n: usize, max_deg: u32, terms: usize) -> P {
    let field = PrimeField::new(q).unwrap();
    let mut p = Poly::zero(field, n);
    for _ in 0..rng.gen_range(0..=terms) {
        let mut left = max_deg;
        let exps = (0..n)
            .map(|_| {
                let e = rng.gen_range(0..=left);
                left -= e;
                e
            })
            .collect();
        p.add_term(Monomial::new(exps), rng.gen_range(1..q));
    }
    p
}

fn oracle_apply(fs: &[P], pt: &[u64], q: u64) -> Vec<u64> {
    fs.iter()
        .map(|p| {
            p.terms().fold(0, |acc, (m, c)| {
                let mut t = *c;
                for (x, &e) in pt.iter().zip(m.exponents()) {
                    for _ in 0..e {
                        t = t * x % q;
                    }
                }
                (acc + t) % q
            })
        })
        .collect()
}

#[test]
fn composed_maps_agree_with_repeated_application() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10 {
        let fs: Vec<P> = (0..2).map(|_| random_poly(&mut rng, 3, 2, 2, 3)).collect();
        let f = PolyMap::new(fs.clone()).unwrap();
        let f3 = compose_map(&f, 3, DEFAULT_TERM_CAP).unwrap();
        for _ in 0..50 {
            let pt = vec![rng.gen_range(0..3), rng.gen_range(0..3)];
            let mut want = pt.clone();
            for _ in 0..3 {
                want = oracle_apply(&fs, &want, 3);
            }
            assert_eq!(f3.apply(&pt), want);
        }
    }
}

#[test]
fn term_cap_is_enforced() {
    let field = PrimeField::new(5).unwrap();
    let fs: Vec<P> = ["x1^2 + x2 + 1", "x1*x2 + x2^2 + x1"]
        .iter()
        .map(|t| Poly::parse(t, field, 2).unwrap())
        .collect();
    let f = PolyMap::new(fs).unwrap();
    assert!(compose_map(&f, 6, 20).is_err());
    assert!(compose_map(&f, 0, 20).is_err());
}

#[test]
fn iteration_congruence_holds_on_random_bases() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let n = rng.gen_range(1..=2);
        let fs: Vec<P> = (0..n).map(|_| random_poly(&mut rng, 2, n, 2, 3)).collect();
        let tb = TwistedBasis::new(fs, 4).unwrap();
        assert!(verify_iteration_congruence(&tb, 2).unwrap());
    }
}

#[test]
fn iteration_congruence_rejects_non_groebner_input() {
    let field = PrimeField::new(2).unwrap();
    let tb = TwistedBasis::new(vec![Poly::var(field, 1, 0).pow(5)], 4).unwrap();
    assert!(verify_iteration_congruence(&tb, 1).is_err());
}

proptest! {
    #[test]
    fn functional_graph_matches_naive_orbits(succ in prop::collection::vec(0u32..40, 1..40)) {
        let n = succ.len() as u32;
        let succ: Vec<u32> = succ.into_iter().map(|s| s % n).collect();
        let g = FunctionalGraph::new(succ.clone());
        // naive: v is periodic iff it returns to itself within n steps
        let step = |v: &u32| succ[*v as usize];
        let mut periodic = HashMap::new();
        for v in 0..n {
            if let Some(p) = return_time(&v, n as usize, &u32::MAX, step) {
                periodic.insert(v as usize, p);
            }
        }
        let cycles = g.cycles();
        let mut seen = 0;
        for c in &cycles {
            for &v in c {
                prop_assert_eq!(periodic.get(&v), Some(&c.len()));
            }
            seen += c.len();
        }
        prop_assert_eq!(seen, periodic.len());
        for v in 0..n as usize {
            let o = g.orbit(v);
            let mut u = v;
            for _ in 0..o.tail_length {
                u = succ[u] as usize;
            }
            prop_assert_eq!(o.cycle[0], u);
            prop_assert_eq!(periodic.get(&u), Some(&o.period));
            prop_assert!(o.tail_length == 0 || !periodic.contains_key(&v));
        }
    }
}

#[test]
fn sl2_cycles_match_return_time_oracle() {
    let y = [1, 0, 2, 1];
    for (text, p) in [("ABab", 5i64), ("ABab", 7), ("AABBaabb", 5), ("AbaB", 7)] {
        let w = Word::parse(text, 2).unwrap();
        let ls: Vec<(usize, bool)> = w.letters().iter().map(|l| (l.generator.index(), l.inverse)).collect();
        let field = Field::build(p as u64, 1).unwrap();
        let found = cycle_search_sl2(&w, &IntMatrix2::from_i64(y), &field, 1_000_000).unwrap();
        let found: HashMap<Vec<i64>, u64> = found
            .into_iter()
            .map(|(m, per)| (m.entries.iter().map(|e| field.encode(e) as i64).collect(), per))
            .collect();
        let id = [1, 0, 0, 1];
        let step = |x: &[i64; 4]| mod_word(&ls, x, &y, p);
        let size = common::sl2_brute(p).len();
        let mut expected = 0;
        for x in common::sl2_brute(p) {
            if x == id {
                continue;
            }
            if let Some(per) = return_time(&x, size, &id, step) {
                expected += 1;
                assert_eq!(found.get(&x.to_vec()), Some(&(per as u64)), "{text} over F_{p}");
            }
        }
        assert_eq!(found.len(), expected, "{text} over F_{p}");
    }
}

#[test]
fn tuple_cycles_on_f3() {
    // (x1, x2) -> ([x1, x2], x2)
    let ws = WordSystem::parse("ABab,b").unwrap();
    let field = Field::build(3, 1).unwrap();
    let found = cycle_search_tuples(&ws, &field, 1_000_000).unwrap();
    assert!(!found.is_empty());
    for (t, per) in &found {
        let y = &t[1];
        let mut cur = t.clone();
        for i in 1..=*per {
            let w = Word::parse("ABab", 2).unwrap();
            let next = verbal_iterates(&w, &cur[0], y, &field, 1).unwrap().remove(0);
            cur = vec![next, y.clone()];
            assert!(cur.iter().all(|m| !m.is_identity(&field)));
            assert_eq!(cur == *t, i == *per);
        }
    }
}

#[test]
fn twisted_solutions_solve_their_equations() {
    let field = PrimeField::new(3).unwrap();
    let fs: Vec<P> = ["x2", "x1"].iter().map(|t| Poly::parse(t, field, 2).unwrap()).collect();
    let tb = TwistedBasis::new(fs.clone(), 3).unwrap();
    let sols = twisted_solutions(&tb, 2, None, 1_000_000).unwrap();
    assert!(!sols.is_empty());
    for s in &sols {
        assert!(s.verify(&fs));
        let l = frobenius_period(s, 1);
        assert_eq!(s.frobenius_power(l), s.point);
    }
    // x2 = x1^3, x1 = x2^3 forces x1^9 = x1: everything lives in F_9
    assert_eq!(sols.len(), 9);
}

/// Runs the bridge on one word and returns how many solutions it checked.
fn bridge_instances(text: &str, q: u64, k_max: usize, d: &str) -> usize {
    let w = Word::parse(text, 2).unwrap();
    let y = IntMatrix2::from_i64([1, 0, 2, 1]);
    let rm = word_to_h(&w, &y).unwrap();
    let red = reduce_mod(&rm, q).unwrap();
    let field = red.field;
    let tb = TwistedBasis::new(red.h.to_vec(), q).unwrap();
    let d = Poly::parse(d, field, 4).unwrap();
    let sols = twisted_solutions(&tb, k_max, Some(&d), 10_000_000).unwrap();
    for sol in &sols {
        let (f, z) = twisted_to_periodic(sol, &w, &y).unwrap();
        let bound = frobenius_period(sol, 4);
        let its = verbal_iterates(&w, &z, &y.reduce(&f), &f, bound).unwrap();
        assert!(its.iter().all(|m| !m.is_identity(&f)), "{text}");
        let period = its.iter().position(|m| *m == z).expect("returns within the bound") as u64 + 1;
        assert_eq!(bound % period, 0, "{text}");
    }
    sols.len()
}

#[test]
fn twisted_points_become_periodic_points() {
    let mut total = 0;
    // D = x12 det(x) or x21 det(x) keeps non-scalar invertible points
    for d in ["x1*x2*x4 - x2^2*x3", "x1*x3*x4 - x2*x3^2"] {
        for (text, q, k) in [("ABab", 3, 2), ("ABab", 5, 1), ("AbaB", 3, 2), ("AABBaabb", 3, 2), ("ABab", 3, 3)] {
            let n = bridge_instances(text, q, k, d);
            total += n;
        }
    }
    assert!(total > 0);
}
