#![allow(dead_code)]

//! Shared fixtures for the integration suites: a standard list of catalog
//! instances and the brute-force Hilbert oracle.

use qp2::catalog;
use qp2::field::{Field, Scalar};
use qp2::linalg::{rref, Matrix};
use qp2::ncpoly::{NcPoly, Word};
use qp2::parse::parse_scalar;
use qp2::quadalg::QuadraticAlgebra;
use std::collections::BTreeMap;

pub fn q() -> Field {
    Field::rationals()
}

pub fn q_i() -> Field {
    let f = q();
    f.adjoin_root(&[f.one(), f.zero(), f.one()], false).unwrap()
}

/// Q(w) with w^2 + w + 1 = 0 (primitive cube root of unity).
pub fn q_w3() -> Field {
    let f = q();
    f.adjoin_root(&[f.one(), f.one(), f.one()], false).unwrap()
}

/// Q(w) with w^2 - w + 1 = 0 (primitive sixth root of unity).
pub fn q_w6() -> Field {
    let f = q();
    f.adjoin_root(&[f.one(), f.scalar_from_i64(-1), f.one()], false)
        .unwrap()
}

pub fn params(field: &Field, kv: &[(&str, &str)]) -> BTreeMap<String, Scalar> {
    kv.iter()
        .map(|(k, v)| (k.to_string(), parse_scalar(v, field).unwrap()))
        .collect()
}

pub fn build(name: &str, field: &Field, kv: &[(&str, &str)]) -> QuadraticAlgebra {
    catalog::build(name, &params(field, kv), field, false)
        .unwrap_or_else(|e| panic!("building {}: {}", name, e))
        .algebra
}

/// A representative instance of every catalog entry.
pub fn standard_instances() -> Vec<(String, QuadraticAlgebra)> {
    let f3 = Field::prime(3).unwrap();
    let mut out: Vec<(String, QuadraticAlgebra)> = Vec::new();
    out.push(("nodal(2)".into(), build("nodal", &q(), &[("lambda", "2")])));
    out.push(("nodal(-1)".into(), build("nodal", &q(), &[("lambda", "-1")])));
    out.push(("cuspidal".into(), build("cuspidal", &q(), &[])));
    out.push(("typeH".into(), build("typeH", &q_i(), &[])));
    out.push(("typeB(2)".into(), build("typeB", &q(), &[("a", "2")])));
    out.push((
        "typeA(1,1,2)".into(),
        build("typeA", &q(), &[("a", "1"), ("b", "1"), ("c", "2")]),
    ));
    out.push(("skew3(2)".into(), build("skew3", &q(), &[("c", "2")])));
    out.push((
        "lemma16(1,1,1)".into(),
        build("lemma16", &q(), &[("d", "1"), ("e", "1"), ("f", "1")]),
    ));
    out.push((
        "prop12(case 2)".into(),
        build(
            "prop12",
            &q(),
            &[
                ("case", "2"),
                ("q", "2"),
                ("alpha", "1"),
                ("beta", "1"),
                ("gamma", "1"),
            ],
        ),
    ));
    out.push((
        "prop2_star(1,1,1)".into(),
        build("prop2_star", &f3, &[("a", "1"), ("c", "1"), ("e", "1")]),
    ));
    out.push((
        "prop17_dual(1,w,1,1)".into(),
        build(
            "prop17_dual",
            &q_w3(),
            &[("a", "1"), ("b", "t"), ("c", "1"), ("e", "1")],
        ),
    ));
    out.push((
        "example_gsca(case 2)".into(),
        build(
            "example_gsca",
            &q(),
            &[
                ("case", "2"),
                ("mu12", "1"),
                ("mu13", "2"),
                ("mu23", "1"),
                ("alpha1", "0"),
                ("alpha2", "0"),
                ("alpha3", "0"),
            ],
        ),
    ));
    out.push((
        "example_gsca(case 6)".into(),
        build(
            "example_gsca",
            &q(),
            &[
                ("case", "6"),
                ("mu12", "1"),
                ("mu13", "1"),
                ("mu23", "1"),
                ("alpha1", "1"),
                ("alpha2", "1"),
                ("alpha3", "1"),
            ],
        ),
    ));
    out.push((
        "nodal_dual(2)".into(),
        build("nodal_dual", &q(), &[("lambda", "2")]),
    ));
    out.push((
        "cusp_char3_candidate(2,0)".into(),
        build(
            "cusp_char3_candidate",
            &f3,
            &[("lambda1", "2"), ("lambda2", "0")],
        ),
    ));
    out
}

/// Brute-force graded dimensions of the quotient by the two-sided ideal of
/// the relations: `dim A_d = 3^d - dim I_d` with
/// `I_2 = span(relations)` and `I_d = F_1 I_{d-1} + I_{d-1} F_1`,
/// computed by plain linear algebra over the word basis. Independent of the
/// Groebner engine.
pub fn oracle_hilbert(algebra: &QuadraticAlgebra, dmax: usize) -> Vec<usize> {
    let ctx = algebra.ctx().clone();
    let field = ctx.field().clone();
    let n = ctx.ngens();
    let mut dims = vec![1usize];
    if dmax >= 1 {
        dims.push(n);
    }
    let mut ideal_component: Vec<NcPoly> = algebra.relations().to_vec();
    for d in 2..=dmax {
        if d > 2 {
            let mut next: Vec<NcPoly> = Vec::new();
            for g in 0..n {
                let x = NcPoly::generator(&ctx, g as u8);
                for p in &ideal_component {
                    next.push(x.mul(p));
                    next.push(p.mul(&x));
                }
            }
            ideal_component = next;
        }
        // dimension of the span by row reduction over the full word basis
        let words: Vec<Word> = ctx.words_of_degree(d);
        let mut rows: Vec<Vec<Scalar>> = ideal_component
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| words.iter().map(|w| p.coeff(w)).collect())
            .collect();
        let rank = rref(&field, &mut rows).len();
        dims.push(words.len() - rank);
        // keep only a basis to stop the generating set exploding
        let mut basis: Vec<NcPoly> = Vec::new();
        for row in rows.into_iter().take(rank) {
            if row.iter().all(|c| c.is_zero()) {
                continue;
            }
            let mut p = NcPoly::zero(&ctx);
            for (w, c) in words.iter().zip(row) {
                if !c.is_zero() {
                    p = p.add(&NcPoly::monomial(&ctx, w.clone(), c));
                }
            }
            basis.push(p);
        }
        ideal_component = basis;
    }
    dims
}

/// Deterministic pseudo-random scalar stream for property tests.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn small_scalar(&mut self, field: &Field) -> Scalar {
        let v = (self.next_u64() % 7) as i64 - 3;
        field.scalar_from_i64(v)
    }

    /// A random invertible matrix with small entries.
    pub fn invertible_matrix(&mut self, field: &Field, n: usize) -> Matrix {
        loop {
            let rows: Vec<Vec<Scalar>> = (0..n)
                .map(|_| (0..n).map(|_| self.small_scalar(field)).collect())
                .collect();
            let m = Matrix::from_rows(field, rows);
            if m.inverse().is_ok() {
                return m;
            }
        }
    }
}
