//! Property-based suites: field axioms on random samples, parser round
//! trips, span-basis invariants and mu-symmetry validation.

mod common;

use proptest::prelude::*;
use qp2::field::{Field, Scalar};
use qp2::gsca::MuMatrix;
use qp2::linalg::Matrix;
use qp2::ncpoly::{span_basis, GenCtx, NcPoly, Word};
use qp2::parse::{parse_ncpoly, parse_scalar};

fn fields_under_test() -> Vec<Field> {
    vec![
        common::q(),
        Field::prime(7).unwrap(),
        Field::prime(2).unwrap(),
        common::q_i(),
        {
            let f3 = Field::prime(3).unwrap();
            f3.adjoin_root(&[f3.one(), f3.zero(), f3.one()], false)
                .unwrap()
        },
    ]
}

fn scalar_from_seed(field: &Field, seed: (i64, i64)) -> Scalar {
    let a = field.scalar_from_i64(seed.0 % 50);
    match field.gen_t() {
        Ok(t) => a.add(&t.mul(&field.scalar_from_i64(seed.1 % 50))),
        Err(_) => a,
    }
}

proptest! {
    #[test]
    fn field_axioms(sa in (-200i64..200, -200i64..200),
                    sb in (-200i64..200, -200i64..200),
                    sc in (-200i64..200, -200i64..200)) {
        for field in fields_under_test() {
            let a = scalar_from_seed(&field, sa);
            let b = scalar_from_seed(&field, sb);
            let c = scalar_from_seed(&field, sc);
            // associativity and commutativity
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            // distributivity
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            // inverses
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv()).is_one());
            }
            prop_assert!(a.add(&a.neg()).is_zero());
        }
    }

    #[test]
    fn scalar_text_roundtrip(sa in (-200i64..200, -200i64..200), d in 1i64..40) {
        for field in fields_under_test() {
            let a = scalar_from_seed(&field, sa);
            let a = a.try_div(&field.scalar_from_i64(d)).unwrap_or(a);
            let text = a.to_string();
            let back = parse_scalar(&text, &field).unwrap();
            prop_assert_eq!(back, a, "field ~{:?}, text {}", field.characteristic(), text);
        }
    }

    #[test]
    fn ncpoly_text_roundtrip(coeffs in proptest::collection::vec((-30i64..30, 0usize..9, 0usize..9), 1..6)) {
        let field = common::q();
        let ctx = GenCtx::new(&field, &["x1", "x2", "x3"]).unwrap();
        let mut p = NcPoly::zero(&ctx);
        for (c, w1, w2) in coeffs {
            let word = Word(vec![(w1 % 3) as u8, (w2 % 3) as u8]);
            p = p.add(&NcPoly::monomial(&ctx, word, field.scalar_from_i64(c)));
        }
        let text = p.to_string();
        let back = parse_ncpoly(&text, &ctx).unwrap();
        prop_assert_eq!(back, p, "text {}", text);
    }

    #[test]
    fn span_basis_dimension_bounds(rows in proptest::collection::vec(
        proptest::collection::vec(-10i64..10, 9), 1..7)) {
        let field = common::q();
        let ctx = GenCtx::new(&field, &["x1", "x2", "x3"]).unwrap();
        let words = ctx.words_of_degree(2);
        let elems: Vec<NcPoly> = rows.iter().map(|row| {
            let mut p = NcPoly::zero(&ctx);
            for (w, &c) in words.iter().zip(row.iter()) {
                if c != 0 {
                    p = p.add(&NcPoly::monomial(&ctx, w.clone(), field.scalar_from_i64(c)));
                }
            }
            p
        }).collect();
        let basis = span_basis(&elems).unwrap();
        prop_assert!(basis.len() <= elems.len().min(9));
        // idempotence
        let again = span_basis(&basis).unwrap();
        prop_assert_eq!(again, basis);
    }

    #[test]
    fn mu_symmetry_validation_rejects_perturbations(
        m12 in 1i64..10, m13 in 1i64..10, m23 in 1i64..10,
        entries in proptest::collection::vec(-5i64..5, 9),
        bump_at in 0usize..6)
    {
        let field = common::q();
        let upper = [m12, m13, m23].map(|v| field.scalar_from_i64(v));
        let mu = MuMatrix::from_upper_triangle(&field, &upper).unwrap();
        // build a mu-symmetric matrix from the upper triangle of `entries`
        let mut m = Matrix::zero(&field, 3, 3);
        let mut k = 0;
        for i in 0..3 {
            for j in i..3 {
                let v = field.scalar_from_i64(entries[k]);
                k += 1;
                if i == j {
                    *m.at_mut(i, i) = v;
                } else {
                    *m.at_mut(i, j) = mu.at(i, j).mul(&v);
                    *m.at_mut(j, i) = v;
                }
            }
        }
        prop_assert!(mu.is_mu_symmetric(&m));
        // any off-diagonal bump breaks mu-symmetry
        let offdiag = [(0usize, 1usize), (0, 2), (1, 2), (1, 0), (2, 0), (2, 1)];
        let (bi, bj) = offdiag[bump_at];
        let mut bad = m.clone();
        *bad.at_mut(bi, bj) = bad.at(bi, bj).add(&field.one());
        prop_assert!(!mu.is_mu_symmetric(&bad));
    }
}

#[test]
fn extension_relation_is_satisfied() {
    // substituting the generator into the minimal polynomial gives zero
    for field in fields_under_test() {
        if !field.has_extension() {
            continue;
        }
        let t = field.gen_t().unwrap();
        let m = field.minpoly().unwrap();
        let mut acc = field.zero();
        for c in m.iter().rev() {
            acc = acc.mul(&t).add(&field.embed(c).unwrap());
        }
        assert!(acc.is_zero());
    }
}
