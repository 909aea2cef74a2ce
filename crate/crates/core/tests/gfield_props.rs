mod common;

use std::collections::BTreeSet;

use engelcert::gfield::{
    is_irreducible, sl2_enumerate, sl2_order, sqrt_or_extend, Embedding, Field, FieldElement, FieldTables,
    Matrix2,
};
use proptest::prelude::*;

const SMALL_FIELDS: [(u64, usize); 8] = [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (2, 4)];

fn field_and_elems(count: usize) -> impl Strategy<Value = (Field, Vec<FieldElement>)> {
    (0..SMALL_FIELDS.len()).prop_flat_map(move |i| {
        let (q, k) = SMALL_FIELDS[i];
        let field = Field::build(q, k).unwrap();
        let order = field.order();
        prop::collection::vec(0..order, count).prop_map(move |codes| {
            let elems = codes.iter().map(|&c| field.decode(c)).collect();
            (field.clone(), elems)
        })
    })
}

// Schoolbook product of coefficient vectors reduced by the monic modulus.
fn oracle_mul(a: &[u64], b: &[u64], modulus: &[u64], q: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % q;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let idx = top - k + j;
            prod[idx] = (prod[idx] + q * q - c * m % q) % q;
        }
    }
    prod.truncate(k);
    prod
}

proptest! {
    #[test]
    fn multiplication_matches_schoolbook((f, e) in field_and_elems(2)) {
        let got = f.mul(&e[0], &e[1]);
        let want = oracle_mul(e[0].coeffs(), e[1].coeffs(), f.modulus(), f.characteristic());
        prop_assert_eq!(got.coeffs(), &want[..]);
    }

    #[test]
    fn field_axioms((f, e) in field_and_elems(3)) {
        let (a, b, c) = (&e[0], &e[1], &e[2]);
        prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
        prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
        prop_assert_eq!(f.add(a, &f.neg(a)), f.zero());
        if !f.is_zero(a) {
            prop_assert_eq!(f.mul(a, &f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn frobenius_is_a_field_automorphism_of_order_k((f, e) in field_and_elems(2)) {
        let (a, b) = (&e[0], &e[1]);
        prop_assert_eq!(f.frobenius(&f.add(a, b)), f.add(&f.frobenius(a), &f.frobenius(b)));
        prop_assert_eq!(f.frobenius(&f.mul(a, b)), f.mul(&f.frobenius(a), &f.frobenius(b)));
        let mut x = a.clone();
        for _ in 0..f.degree() {
            x = f.frobenius(&x);
        }
        prop_assert_eq!(&x, a);
    }

    #[test]
    fn encode_decode_round_trip((f, e) in field_and_elems(1)) {
        prop_assert_eq!(f.decode(f.encode(&e[0])), e[0].clone());
    }

    #[test]
    fn square_roots_square_back((f, e) in field_and_elems(1)) {
        let a = &e[0];
        let out = sqrt_or_extend(a, &f).unwrap();
        let image = match &out.embedding {
            Some(emb) => emb.apply(a),
            None => a.clone(),
        };
        prop_assert_eq!(out.field.mul(&out.root, &out.root), image);
        prop_assert_eq!(out.embedding.is_none(), f.is_square(a));
    }

    #[test]
    fn tables_agree_with_field((f, e) in field_and_elems(2)) {
        let t = FieldTables::new(&f).unwrap();
        let (a, b) = (t.encode(&e[0]), t.encode(&e[1]));
        prop_assert_eq!(t.decode(t.mul(a, b)), f.mul(&e[0], &e[1]));
        prop_assert_eq!(t.decode(t.add(a, b)), f.add(&e[0], &e[1]));
        prop_assert_eq!(t.decode(t.pow(a, 5)), f.pow(&e[0], 5));
    }
}

#[test]
fn embeddings_are_ring_homomorphisms() {
    for (q, k, big) in [(2u64, 1usize, 2usize), (2, 2, 4), (3, 1, 2), (3, 2, 4), (5, 1, 2)] {
        let src = Field::build(q, k).unwrap();
        let dst = Field::build(q, big).unwrap();
        let emb = Embedding::canonical(&src, &dst).unwrap();
        for a in src.elements() {
            for b in src.elements() {
                assert_eq!(emb.apply(&src.mul(&a, &b)), dst.mul(&emb.apply(&a), &emb.apply(&b)));
                assert_eq!(emb.apply(&src.add(&a, &b)), dst.add(&emb.apply(&a), &emb.apply(&b)));
            }
        }
    }
}

#[test]
fn moduli_are_irreducible_and_primitive_elements_generate() {
    for (q, k) in SMALL_FIELDS {
        let f = Field::build(q, k).unwrap();
        assert!(is_irreducible(f.modulus(), q));
        let g = f.primitive_element();
        assert_eq!(f.multiplicative_order(&g).unwrap(), f.order() - 1);
        let powers: BTreeSet<u64> = (0..f.order() - 1).map(|e| f.encode(&f.pow(&g, e))).collect();
        assert_eq!(powers.len() as u64, f.order() - 1);
    }
}

#[test]
fn sl2_enumeration_matches_determinant_filter() {
    for p in [3i64, 5, 7] {
        let f = Field::build(p as u64, 1).unwrap();
        let got: BTreeSet<[i64; 4]> = sl2_enumerate(&f, 1_000_000)
            .unwrap()
            .map(|m| m.entries.clone().map(|e| e.coeffs()[0] as i64))
            .collect();
        let want: BTreeSet<[i64; 4]> = common::sl2_brute(p).into_iter().collect();
        assert_eq!(got, want);
        assert_eq!(got.len() as u128, sl2_order(p as u64));
    }
    // extension field: count and membership
    let f9 = Field::build(3, 2).unwrap();
    let all: Vec<Matrix2> = sl2_enumerate(&f9, 1_000_000).unwrap().collect();
    assert_eq!(all.len() as u128, sl2_order(9));
    assert!(all.iter().all(|m| m.in_sl2(&f9)));
    let distinct: BTreeSet<&Matrix2> = all.iter().collect();
    assert_eq!(distinct.len(), all.len());
}

#[test]
fn budget_is_enforced() {
    let f = Field::build(7, 1).unwrap();
    assert!(sl2_enumerate(&f, 100).is_err());
}
