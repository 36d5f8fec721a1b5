//! Helpers for the acceptance suite: invoking the CLI binary, temporary spec
//! files, and a self-contained brute-force Hilbert oracle.

#![allow(dead_code)]

use qp2::field::{Field, Scalar};
use qp2::linalg::rref;
use qp2::ncpoly::{NcPoly, Word};
use qp2::parse::parse_scalar;
use qp2::quadalg::QuadraticAlgebra;
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

pub struct CliRun {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_cli(args: &[&str]) -> CliRun {
    let out = Command::new(env!("CARGO_BIN_EXE_qp2"))
        .args(args)
        .output()
        .expect("run qp2 binary");
    CliRun {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn run_cli_json(args: &[&str]) -> (i32, Value) {
    let mut full: Vec<&str> = args.to_vec();
    full.push("--format");
    full.push("structured");
    let run = run_cli(&full);
    let value: Value = serde_json::from_str(&run.stdout).unwrap_or_else(|e| {
        panic!(
            "structured output is not JSON ({}): stdout={} stderr={}",
            e, run.stdout, run.stderr
        )
    });
    (run.code, value)
}

/// Write a spec file under the target temp directory and return its path.
pub fn write_spec(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("qp2-acceptance");
    std::fs::create_dir_all(&dir).expect("create temp dir");
    let path = dir.join(format!("{}.spec", name));
    std::fs::write(&path, body).expect("write spec file");
    path
}

pub fn q() -> Field {
    Field::rationals()
}

pub fn q_i() -> Field {
    let f = q();
    f.adjoin_root(&[f.one(), f.zero(), f.one()], false).unwrap()
}

/// Primitive cube root of unity: t^2 + t + 1 = 0.
pub fn q_w3() -> Field {
    let f = q();
    f.adjoin_root(&[f.one(), f.one(), f.one()], false).unwrap()
}

/// Primitive sixth root of unity: t^2 - t + 1 = 0.
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

pub fn catalog_algebra(name: &str, field: &Field, kv: &[(&str, &str)]) -> QuadraticAlgebra {
    qp2::catalog::build(name, &params(field, kv), field, false)
        .unwrap_or_else(|e| panic!("build {}: {}", name, e))
        .algebra
}

/// Parse a projective point from a structured-output coordinate array.
pub fn point_from_json(v: &Value, field: &Field) -> Vec<Scalar> {
    v.as_array()
        .expect("coordinate array")
        .iter()
        .map(|c| parse_scalar(c.as_str().expect("coordinate string"), field).unwrap())
        .collect()
}

pub fn normalize(p: &[Scalar]) -> Vec<Scalar> {
    qp2::commalg::normalize_point(p)
}

/// Relations listed in a structured-output document, re-parsed over a
/// context.
pub fn relations_from_json(
    v: &Value,
    ctx: &qp2::ncpoly::GenCtx,
) -> Vec<NcPoly> {
    v.as_array()
        .expect("relation array")
        .iter()
        .map(|r| qp2::parse::parse_ncpoly(r.as_str().expect("relation string"), ctx).unwrap())
        .collect()
}

/// Brute-force graded dimensions of the quotient, independent of the
/// Groebner engine: `I_2 = span(relations)`, `I_d = F_1 I_{d-1} + I_{d-1} F_1`.
pub fn oracle_hilbert(algebra: &QuadraticAlgebra, dmax: usize) -> Vec<usize> {
    let ctx = algebra.ctx().clone();
    let field = ctx.field().clone();
    let n = ctx.ngens();
    let mut dims = vec![1usize];
    if dmax >= 1 {
        dims.push(n);
    }
    let mut component: Vec<NcPoly> = algebra.relations().to_vec();
    for d in 2..=dmax {
        if d > 2 {
            let mut next = Vec::new();
            for g in 0..n {
                let x = NcPoly::generator(&ctx, g as u8);
                for p in &component {
                    next.push(x.mul(p));
                    next.push(p.mul(&x));
                }
            }
            component = next;
        }
        let words: Vec<Word> = ctx.words_of_degree(d);
        let mut rows: Vec<Vec<Scalar>> = component
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| words.iter().map(|w| p.coeff(w)).collect())
            .collect();
        let rank = rref(&field, &mut rows).len();
        dims.push(words.len() - rank);
        let mut basis = Vec::new();
        for row in rows.into_iter().take(rank) {
            let mut p = NcPoly::zero(&ctx);
            for (w, c) in words.iter().zip(row) {
                if !c.is_zero() {
                    p = p.add(&NcPoly::monomial(&ctx, w.clone(), c));
                }
            }
            if !p.is_zero() {
                basis.push(p);
            }
        }
        component = basis;
    }
    dims
}

/// Deterministic pseudo-random generator for substitution matrices.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn invertible_matrix(&mut self, field: &Field, n: usize) -> qp2::linalg::Matrix {
        loop {
            let rows: Vec<Vec<Scalar>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| field.scalar_from_i64((self.next_u64() % 5) as i64 - 2))
                        .collect()
                })
                .collect();
            let m = qp2::linalg::Matrix::from_rows(field, rows);
            if m.inverse().is_ok() {
                return m;
            }
        }
    }
}

/// Graph-form nodal relations (the span vanishing on the automorphism graph
/// of the nodal cubic before the generator normalization).
pub fn nodal_graph_relations_src(lambda: i64) -> String {
    let l = lambda;
    let l2 = l * l;
    let k = l * l * l - 1;
    format!(
        "({l})*x1*x2 - x2*x1 ; ({l2})*x2*x3 - ({l})*x3*x2 + ({k})*x1^2 ; ({l2})*x3*x1 - ({l})*x1*x3 + ({k})*x2^2"
    )
}

pub fn spec_inline(field_lines: &str, generators: &str, relations: &str) -> String {
    format!(
        "format_version = 1\n[field]\n{}\n[algebra]\ngenerators = {}\nrelations = {}\n",
        field_lines, generators, relations
    )
}

pub fn spec_catalog(field_lines: &str, name: &str, params: &[(&str, &str)]) -> String {
    let mut body = format!(
        "format_version = 1\n[field]\n{}\n[catalog]\nname = {}\n",
        field_lines, name
    );
    for (k, v) in params {
        body.push_str(&format!("{} = {}\n", k, v));
    }
    body
}
