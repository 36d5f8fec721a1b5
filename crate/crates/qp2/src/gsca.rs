//! Graded skew Clifford algebras: construction from a mu-matrix and
//! mu-symmetric coefficient matrices, and the two-part regularity criterion
//! (normalizing sequence plus empty zero locus) used to recognise them.

use crate::commalg::{projective_empty, CommError, Emptiness};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::ncgroebner::{is_normalizing_sequence, GbError, NormalizingVerdict};
use crate::ncpoly::{GenCtx, NcPoly, Word};
use crate::pointscheme::multilinearize;
use crate::quadalg::{QuadError, QuadraticAlgebra};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GscaError {
    #[error("invalid mu-matrix: {0}")]
    MuInvalid(String),
    #[error("matrix {index} is not mu-symmetric at entry ({i}, {j})")]
    NotMuSymmetric { index: usize, i: usize, j: usize },
    #[error("the construction requires characteristic different from 2")]
    CharTwoUnsupported,
    #[error("the diagonal system for the degree-two generators is singular")]
    DiagonalSystemSingular,
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Comm(#[from] CommError),
}

/// Matrix of skew constants: `mu_ii = 1`, `mu_ij mu_ji = 1`, all entries
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuMatrix {
    field: Field,
    entries: Matrix,
}

impl MuMatrix {
    pub fn new(entries: Matrix) -> Result<MuMatrix, GscaError> {
        let n = entries.nrows();
        if entries.ncols() != n {
            return Err(GscaError::MuInvalid("matrix must be square".into()));
        }
        let field = entries.field().clone();
        for i in 0..n {
            if !entries.at(i, i).is_one() {
                return Err(GscaError::MuInvalid(format!("mu_{}{} must be 1", i + 1, i + 1)));
            }
            for j in 0..n {
                if entries.at(i, j).is_zero() {
                    return Err(GscaError::MuInvalid(format!(
                        "mu_{}{} must be nonzero",
                        i + 1,
                        j + 1
                    )));
                }
                if i != j && !entries.at(i, j).mul(entries.at(j, i)).is_one() {
                    return Err(GscaError::MuInvalid(format!(
                        "mu_{}{} * mu_{}{} must be 1",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(MuMatrix { field, entries })
    }

    /// Build from the strict upper triangle; the lower triangle is filled
    /// with inverses.
    pub fn from_upper_triangle(field: &Field, upper: &[Scalar]) -> Result<MuMatrix, GscaError> {
        // upper listed row-wise: (1,2), (1,3), ..., (2,3), ...
        let n = match upper.len() {
            1 => 2,
            3 => 3,
            6 => 4,
            _ => {
                return Err(GscaError::MuInvalid(
                    "upper triangle must have n(n-1)/2 entries for n in 2..=4".into(),
                ))
            }
        };
        let mut m = Matrix::identity(field, n);
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap().clone();
                if v.is_zero() {
                    return Err(GscaError::MuInvalid(format!(
                        "mu_{}{} must be nonzero",
                        i + 1,
                        j + 1
                    )));
                }
                *m.at_mut(j, i) = v.inv();
                *m.at_mut(i, j) = v;
            }
        }
        MuMatrix::new(m)
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        self.entries.at(i, j)
    }

    /// Check a matrix for mu-symmetry: `M_ij = mu_ij M_ji`.
    pub fn is_mu_symmetric(&self, m: &Matrix) -> bool {
        let n = self.n();
        if m.nrows() != n || m.ncols() != n {
            return false;
        }
        for i in 0..n {
            for j in 0..n {
                if *m.at(i, j) != self.at(i, j).mul(m.at(j, i)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Specification of a graded skew Clifford algebra: the mu constants and one
/// mu-symmetric matrix per generator.
#[derive(Clone, Debug)]
pub struct GscaSpec {
    pub mu: MuMatrix,
    pub forms: Vec<Matrix>,
}

impl GscaSpec {
    pub fn new(mu: MuMatrix, forms: Vec<Matrix>) -> Result<GscaSpec, GscaError> {
        if forms.len() != mu.n() {
            return Err(GscaError::MuInvalid(format!(
                "need {} coefficient matrices",
                mu.n()
            )));
        }
        for (index, m) in forms.iter().enumerate() {
            if !mu.is_mu_symmetric(m) {
                let n = mu.n();
                for i in 0..n {
                    for j in 0..n {
                        if *m.at(i, j) != mu.at(i, j).mul(m.at(j, i)) {
                            return Err(GscaError::NotMuSymmetric { index, i, j });
                        }
                    }
                }
            }
        }
        Ok(GscaSpec { mu, forms })
    }
}

/// The skew polynomial ring of a mu-matrix: relations
/// `z_i z_j = mu_ji z_j z_i` for `i < j`, on the given generator names.
pub fn skew_poly_ring(mu: &MuMatrix, names: &[&str]) -> Result<QuadraticAlgebra, GscaError> {
    let n = mu.n();
    assert_eq!(names.len(), n);
    let ctx = GenCtx::new(mu.field(), names).map_err(QuadError::Nc)?;
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let zij = NcPoly::monomial(&ctx, Word(vec![i as u8, j as u8]), mu.field().one());
            let zji = NcPoly::monomial(&ctx, Word(vec![j as u8, i as u8]), mu.at(j, i).clone());
            relations.push(zij.sub(&zji));
        }
    }
    Ok(QuadraticAlgebra::new(&ctx, &relations)?)
}

/// Result of building a graded skew Clifford algebra from its definition.
#[derive(Clone, Debug)]
pub struct Gsca {
    pub algebra: QuadraticAlgebra,
    /// The degree-two generators solved as expressions in the `x_i`.
    pub y_expressions: Vec<NcPoly>,
    /// Verdict of the normalizing-sequence check on the `y` expressions;
    /// a failure is reported but the algebra is still returned.
    pub normalizing: NormalizingVerdict,
}

/// Build the quadratic algebra of a graded skew Clifford specification by
/// solving the diagonal relations `2 x_i^2 = sum_k (M_k)_ii y_k` for the
/// `y_k` and substituting into the off-diagonal relations.
pub fn gsca_from_definition(spec: &GscaSpec) -> Result<Gsca, GscaError> {
    let mu = &spec.mu;
    let field = mu.field().clone();
    if field.characteristic() == 2 {
        return Err(GscaError::CharTwoUnsupported);
    }
    let n = mu.n();
    let names: Vec<String> = (1..=n).map(|k| format!("x{}", k)).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let ctx = GenCtx::new(&field, &name_refs).map_err(QuadError::Nc)?;
    // diagonal system D_ik = (M_k)_ii
    let d = Matrix::from_rows(
        &field,
        (0..n)
            .map(|i| (0..n).map(|k| spec.forms[k].at(i, i).clone()).collect())
            .collect(),
    );
    let d_inv = d.inverse().map_err(|_| GscaError::DiagonalSystemSingular)?;
    let two = field.scalar_from_i64(2);
    let y_expressions: Vec<NcPoly> = (0..n)
        .map(|k| {
            let mut y = NcPoly::zero(&ctx);
            for i in 0..n {
                let coeff = d_inv.at(k, i).mul(&two);
                if !coeff.is_zero() {
                    y = y.add(&NcPoly::monomial(
                        &ctx,
                        Word(vec![i as u8, i as u8]),
                        coeff,
                    ));
                }
            }
            y
        })
        .collect();
    let mut relations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut rel = NcPoly::monomial(&ctx, Word(vec![i as u8, j as u8]), field.one());
            rel = rel.add(&NcPoly::monomial(
                &ctx,
                Word(vec![j as u8, i as u8]),
                mu.at(i, j).clone(),
            ));
            for k in 0..n {
                let c = spec.forms[k].at(i, j);
                if !c.is_zero() {
                    rel = rel.sub(&y_expressions[k].scale(c));
                }
            }
            relations.push(rel);
        }
    }
    let algebra = QuadraticAlgebra::new(&ctx, &relations)?;
    let normalizing = is_normalizing_sequence(&ctx, algebra.relations(), &y_expressions)?;
    Ok(Gsca {
        algebra,
        y_expressions,
        normalizing,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CvStage {
    NormalizingSequence,
    EmptyLocus,
}

/// Outcome of the geometric regularity criterion.
#[derive(Debug, Clone)]
pub enum CvOutcome {
    /// Both checks pass; the Koszul dual of `S` modulo the quadrics is the
    /// regular graded skew Clifford algebra.
    Pass { dual: QuadraticAlgebra },
    Fail {
        stage: CvStage,
        /// Failing sequence index (stage 1).
        index: Option<usize>,
        /// Witness zero of the stacked system (stage 2), over a possibly
        /// extended field.
        witness: Option<(Field, Vec<Scalar>)>,
    },
    /// The emptiness test could not be decided within the extension policy.
    Inconclusive,
}

/// The two-part criterion: the quadrics must form a normalizing sequence in
/// `S`, and the multilinearized span of the relations of `S` together with
/// the quadrics must have empty zero locus in `P^2 x P^2` (checked through
/// the 3x3 minors of the stacked matrix of linear forms).
pub fn cv_regularity_check(
    s: &QuadraticAlgebra,
    quadrics: &[NcPoly],
    power_bound: usize,
) -> Result<CvOutcome, GscaError> {
    match is_normalizing_sequence(s.ctx(), s.relations(), quadrics) {
        Ok(NormalizingVerdict::Valid { .. }) => {}
        Ok(NormalizingVerdict::FailsAt { index }) => {
            return Ok(CvOutcome::Fail {
                stage: CvStage::NormalizingSequence,
                index: Some(index),
                witness: None,
            })
        }
        Err(GbError::ZeroInAlgebra) => {
            return Ok(CvOutcome::Fail {
                stage: CvStage::NormalizingSequence,
                index: None,
                witness: None,
            })
        }
        Err(e) => return Err(e.into()),
    }
    let extended = s.with_relations(quadrics)?;
    let sys = multilinearize(&extended);
    let minors = sys.minors().map_err(|_| {
        GscaError::MuInvalid("regularity check needs three generators".into())
    })?;
    match projective_empty(&minors, power_bound)? {
        Emptiness::Empty { .. } => Ok(CvOutcome::Pass {
            dual: extended.koszul_dual(),
        }),
        Emptiness::NonEmpty { field, witness } => Ok(CvOutcome::Fail {
            stage: CvStage::EmptyLocus,
            index: None,
            witness: Some((field, witness)),
        }),
        Emptiness::Inconclusive => Ok(CvOutcome::Inconclusive),
    }
}
