//! Quadratic algebras presented by generators and a space of degree-2
//! relations, with the three constructions everything else is phrased in:
//! Koszul dual, twist by a graded automorphism, and Ore extension.
//!
//! Conventions, frozen by unit tests below:
//! - twist: `a * b = a phi(b)`, so the relation space transforms by
//!   `id (x) phi^{-1}`;
//! - Ore extension `B[z; phi, delta]`: `z b = phi(b) z + delta(b)` with
//!   `delta` a left phi-derivation given on generators.

use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::ncgroebner::{buchberger_truncated, hilbert_function, GbError, TruncatedGb};
use crate::ncpoly::{span_basis, spans_equal, GenCtx, MapMode, NcError, NcPoly, Word};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuadError {
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("invalid Ore data: {0}")]
    InvalidOreData(String),
    #[error("{0} generators unsupported (need 2 to 4)")]
    BadGeneratorCount(usize),
    #[error("relations must be homogeneous of degree 2")]
    BadRelationDegree,
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Gb(#[from] GbError),
}

/// A graded algebra presented by degree-one generators and a reduced space of
/// degree-two relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticAlgebra {
    ctx: GenCtx,
    relations: Vec<NcPoly>,
}

impl QuadraticAlgebra {
    pub fn new(ctx: &GenCtx, relations: &[NcPoly]) -> Result<QuadraticAlgebra, QuadError> {
        let n = ctx.ngens();
        if !(2..=4).contains(&n) {
            return Err(QuadError::BadGeneratorCount(n));
        }
        for r in relations {
            if !r.is_zero() && r.homogeneous_degree().map_err(QuadError::Nc)? != 2 {
                return Err(QuadError::BadRelationDegree);
            }
        }
        let relations = span_basis(relations)?;
        Ok(QuadraticAlgebra {
            ctx: ctx.clone(),
            relations,
        })
    }

    pub fn ctx(&self) -> &GenCtx {
        &self.ctx
    }

    pub fn field(&self) -> &Field {
        self.ctx.field()
    }

    pub fn ngens(&self) -> usize {
        self.ctx.ngens()
    }

    /// Reduced, deterministic basis of the relation space.
    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn dim_relations(&self) -> usize {
        self.relations.len()
    }

    /// Three generators, three relations: the shape of a quantum plane
    /// candidate.
    pub fn is_quantum_p2_shaped(&self) -> bool {
        self.ngens() == 3 && self.dim_relations() == 3
    }

    pub fn groebner(&self, degree_bound: usize) -> Result<TruncatedGb, QuadError> {
        Ok(buchberger_truncated(&self.ctx, &self.relations, degree_bound)?)
    }

    pub fn hilbert(&self, max_degree: usize) -> Result<Vec<usize>, QuadError> {
        Ok(hilbert_function(&self.ctx, &self.relations, max_degree)?)
    }

    pub fn relation_space_equals(&self, other: &QuadraticAlgebra) -> bool {
        if self.ctx != other.ctx {
            return false;
        }
        // both are reduced bases, so equality is literal
        self.relations == other.relations
    }

    /// The same algebra with extra degree-2 relations appended.
    pub fn with_relations(&self, extra: &[NcPoly]) -> Result<QuadraticAlgebra, QuadError> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        QuadraticAlgebra::new(&self.ctx, &rels)
    }

    /// Koszul dual: the algebra on the dual generators whose relation space
    /// is the annihilator of this one under
    /// `<z_i z_j, x_k x_l> = delta_ik delta_jl`.
    pub fn koszul_dual(&self) -> QuadraticAlgebra {
        let n = self.ctx.ngens();
        let field = self.field().clone();
        let words: Vec<Word> = self.ctx.words_of_degree(2);
        let rows: Vec<Vec<Scalar>> = self
            .relations
            .iter()
            .map(|r| words.iter().map(|w| r.coeff(w)).collect())
            .collect();
        let dnames = dual_names(self.ctx.names());
        let dname_refs: Vec<&str> = dnames.iter().map(|s| s.as_str()).collect();
        let dual_ctx = GenCtx::new(&field, &dname_refs).expect("dual names are valid");
        let kernel = if rows.is_empty() {
            // free algebra: the dual has the full space of relations
            let mut basis = Vec::new();
            for k in 0..words.len() {
                let mut v = vec![field.zero(); words.len()];
                v[k] = field.one();
                basis.push(v);
            }
            basis
        } else {
            Matrix::from_rows(&field, rows).kernel()
        };
        let dual_relations: Vec<NcPoly> = kernel
            .into_iter()
            .map(|v| {
                let mut p = NcPoly::zero(&dual_ctx);
                for (w, c) in words.iter().zip(v) {
                    if !c.is_zero() {
                        p = p.add(&NcPoly::monomial(&dual_ctx, w.clone(), c));
                    }
                }
                p
            })
            .collect();
        debug_assert_eq!(dual_relations.len(), n * n - self.relations.len());
        QuadraticAlgebra::new(&dual_ctx, &dual_relations).expect("dual relations are quadratic")
    }

    /// Twist by a graded automorphism: relation space becomes
    /// `(id (x) phi^{-1}) W`.
    pub fn twist(&self, phi: &Matrix) -> Result<QuadraticAlgebra, QuadError> {
        let phi_inv = phi.inverse().map_err(|_| QuadError::SingularMatrix)?;
        let twisted: Result<Vec<NcPoly>, NcError> = self
            .relations
            .iter()
            .map(|r| r.apply_linear_map(&phi_inv, MapMode::SecondTensorFactor))
            .collect();
        QuadraticAlgebra::new(&self.ctx, &twisted?)
    }

    /// Change of generators: the relation space transforms in both tensor
    /// factors.
    pub fn substitute_generators(&self, m: &Matrix) -> Result<QuadraticAlgebra, QuadError> {
        if m.inverse().is_err() {
            return Err(QuadError::SingularMatrix);
        }
        let mapped: Result<Vec<NcPoly>, NcError> = self
            .relations
            .iter()
            .map(|r| r.apply_linear_map(m, MapMode::All))
            .collect();
        QuadraticAlgebra::new(&self.ctx, &mapped?)
    }
}

/// Dual generator names, involutive: `x<k>` and `z<k>` swap; otherwise the
/// names toggle case; otherwise a `_d` suffix toggles.
pub fn dual_names(names: &[String]) -> Vec<String> {
    let all_match = |prefix: char| {
        names
            .iter()
            .all(|n| n.starts_with(prefix) && n.len() > 1 && n[1..].chars().all(|c| c.is_ascii_digit()))
    };
    if all_match('x') {
        return names.iter().map(|n| format!("z{}", &n[1..])).collect();
    }
    if all_match('z') {
        return names.iter().map(|n| format!("x{}", &n[1..])).collect();
    }
    if names.iter().all(|n| n.chars().all(|c| !c.is_ascii_uppercase())) {
        return names.iter().map(|n| n.to_ascii_uppercase()).collect();
    }
    if names.iter().all(|n| n.chars().all(|c| !c.is_ascii_lowercase())) {
        return names.iter().map(|n| n.to_ascii_lowercase()).collect();
    }
    names
        .iter()
        .map(|n| match n.strip_suffix("_d") {
            Some(base) => base.to_string(),
            None => format!("{}_d", n),
        })
        .collect()
}

/// Data for an Ore extension `B[z; phi, delta]`.
#[derive(Clone, Debug)]
pub struct OreData {
    base: QuadraticAlgebra,
    phi: Matrix,
    /// `delta(x_i)`, a degree-2 element of the base (or zero), per generator.
    delta: Vec<NcPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OreValidation {
    Ok,
    Fail { reason: String },
}

impl OreData {
    pub fn new(
        base: QuadraticAlgebra,
        phi: Matrix,
        delta: Vec<NcPoly>,
    ) -> Result<OreData, QuadError> {
        let n = base.ngens();
        if phi.nrows() != n || phi.ncols() != n {
            return Err(QuadError::InvalidOreData(format!(
                "phi must be {}x{}",
                n, n
            )));
        }
        if delta.len() != n {
            return Err(QuadError::InvalidOreData(format!(
                "delta must assign a value to each of the {} generators",
                n
            )));
        }
        for d in &delta {
            if !d.is_zero() && d.homogeneous_degree().map_err(QuadError::Nc)? != 2 {
                return Err(QuadError::InvalidOreData(
                    "delta values must be homogeneous of degree 2".into(),
                ));
            }
        }
        Ok(OreData { base, phi, delta })
    }

    pub fn base(&self) -> &QuadraticAlgebra {
        &self.base
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn delta(&self) -> &[NcPoly] {
        &self.delta
    }

    fn phi_image(&self, i: usize) -> NcPoly {
        let ctx = self.base.ctx();
        let mut img = NcPoly::zero(ctx);
        for j in 0..self.base.ngens() {
            let c = self.phi.at(j, i);
            if !c.is_zero() {
                img = img.add(&NcPoly::monomial(ctx, Word::single(j as u8), c.clone()));
            }
        }
        img
    }

    /// Extend `delta` to degree-2 words by the left phi-derivation rule
    /// `delta(ab) = phi(a) delta(b) + delta(a) b` and apply it to a degree-2
    /// element.
    pub fn delta_on_degree_two(&self, p: &NcPoly) -> NcPoly {
        let ctx = self.base.ctx();
        let mut out = NcPoly::zero(ctx);
        for (w, c) in p.terms() {
            assert_eq!(w.degree(), 2);
            let (a, b) = (w.0[0] as usize, w.0[1] as usize);
            let xa = NcPoly::generator(ctx, a as u8);
            let part = self
                .phi_image(a)
                .mul(&self.delta[b])
                .add(&self.delta[a].mul(&NcPoly::generator(ctx, b as u8)));
            let _ = xa;
            out = out.add(&part.scale(c));
        }
        out
    }

    /// Check that `phi` is an automorphism of the base and `delta` a left
    /// phi-derivation: phi preserves the relation space, and the derivation
    /// rule kills every relation modulo the base ideal (a degree-3 check).
    pub fn validate(&self) -> Result<OreValidation, QuadError> {
        if self.phi.inverse().is_err() {
            return Ok(OreValidation::Fail {
                reason: "phi is singular".into(),
            });
        }
        for r in self.base.relations() {
            let image = r.apply_linear_map(&self.phi, MapMode::All)?;
            let mut with_image = self.base.relations().to_vec();
            with_image.push(image);
            if span_basis(&with_image)?.len() != self.base.dim_relations() {
                return Ok(OreValidation::Fail {
                    reason: format!("phi does not preserve the relation <{}>", r),
                });
            }
        }
        let gb = self.base.groebner(3)?;
        for r in self.base.relations() {
            let dr = self.delta_on_degree_two(r);
            if !gb.normal_form(&dr)?.is_zero() {
                return Ok(OreValidation::Fail {
                    reason: format!(
                        "delta is not a left phi-derivation on the relation <{}>",
                        r
                    ),
                });
            }
        }
        Ok(OreValidation::Ok)
    }
}

/// Build the Ore extension as a quadratic algebra on one more generator.
/// Validation runs first; its failure is the error.
pub fn ore_extension(data: &OreData, new_name: &str) -> Result<QuadraticAlgebra, QuadError> {
    match data.validate()? {
        OreValidation::Ok => {}
        OreValidation::Fail { reason } => return Err(QuadError::InvalidOreData(reason)),
    }
    let base_ctx = data.base.ctx();
    let n = data.base.ngens();
    let mut names: Vec<&str> = base_ctx.names().iter().map(|s| s.as_str()).collect();
    names.push(new_name);
    let field = data.base.field().clone();
    let ctx = GenCtx::new(&field, &names)?;
    // lift a base polynomial verbatim (generator indices are unchanged)
    let lift = |p: &NcPoly| -> NcPoly {
        let mut out = NcPoly::zero(&ctx);
        for (w, c) in p.terms() {
            out = out.add(&NcPoly::monomial(&ctx, w.clone(), c.clone()));
        }
        out
    };
    let mut relations: Vec<NcPoly> = data.base.relations().iter().map(&lift).collect();
    let z = NcPoly::generator(&ctx, n as u8);
    for i in 0..n {
        let xi = NcPoly::generator(&ctx, i as u8);
        let rel = z
            .mul(&xi)
            .sub(&lift(&data.phi_image(i)).mul(&z))
            .sub(&lift(&data.delta[i]));
        relations.push(rel);
    }
    QuadraticAlgebra::new(&ctx, &relations)
}

/// Relation-space equality of two presentations over the same context.
pub fn same_relation_space(a: &QuadraticAlgebra, b: &QuadraticAlgebra) -> bool {
    a.ctx() == b.ctx()
        && spans_equal(a.relations(), b.relations()).unwrap_or(false)
}
