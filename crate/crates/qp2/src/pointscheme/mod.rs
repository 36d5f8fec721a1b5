//! Multilinearization of relation spaces and the geometry it produces: the
//! cubic divisor cut out by `det M(u)`, pointwise evaluation of the curve
//! automorphism, graph verification, and fitting a linear extension of the
//! automorphism to the whole plane.

mod classify;

pub use classify::{classify_cubic, ConicKind, CubicClass};

use crate::commalg::{normalize_point, roots_in_field, CommError, CommPoly};
use crate::field::{Field, Scalar};
use crate::linalg::{self, Matrix};
use crate::ncpoly::Word;
use crate::quadalg::QuadraticAlgebra;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PsError {
    #[error("need a square system: 3 relations on 3 generators")]
    NotSquare,
    #[error("sigma is not single-valued at this point (rank deficient)")]
    RankDeficient,
    #[error("point does not lie on the point scheme")]
    NotOnScheme,
    #[error("sample set is degenerate")]
    DegenerateSampleSet,
    #[error(transparent)]
    Comm(#[from] CommError),
}

/// The multilinearized relations of a quadratic algebra: for each relation
/// `sum c_ij x_i x_j`, the bilinear form `sum c_ij u_i v_j` on `P^2 x P^2`,
/// packaged as the matrix of linear forms `M(u)` with `M(u) v = 0` cutting
/// out the zero locus.
#[derive(Clone, Debug)]
pub struct BilinearSystem {
    field: Field,
    n: usize,
    /// Coefficient tensor per relation: `tensors[s].at(i, j)` is the
    /// coefficient of the word `x_i x_j`.
    tensors: Vec<Matrix>,
}

/// Rows follow the algebra's reduced relation basis.
pub fn multilinearize(algebra: &QuadraticAlgebra) -> BilinearSystem {
    let n = algebra.ngens();
    let field = algebra.field().clone();
    let tensors = algebra
        .relations()
        .iter()
        .map(|r| {
            let mut t = Matrix::zero(&field, n, n);
            for (w, c) in r.terms() {
                let (i, j) = (w.0[0] as usize, w.0[1] as usize);
                *t.at_mut(i, j) = c.clone();
            }
            t
        })
        .collect();
    BilinearSystem { field, n, tensors }
}

impl BilinearSystem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_relations(&self) -> usize {
        self.tensors.len()
    }

    pub fn ngens(&self) -> usize {
        self.n
    }

    pub fn tensors(&self) -> &[Matrix] {
        &self.tensors
    }

    /// Merge in the forms of another system over the same field (stacking
    /// rows), as used by the regularity criterion.
    pub fn stacked_with(&self, other: &BilinearSystem) -> BilinearSystem {
        assert_eq!(self.n, other.n);
        let mut tensors = self.tensors.clone();
        tensors.extend(other.tensors.iter().cloned());
        BilinearSystem {
            field: self.field.clone(),
            n: self.n,
            tensors,
        }
    }

    /// Numeric `M(u)` at a point: entry `(s, j) = sum_i c^s_ij u_i`.
    pub fn matrix_at(&self, u: &[Scalar]) -> Matrix {
        let m = self.tensors.len();
        let mut out = Matrix::zero(&self.field, m, self.n);
        for (s, t) in self.tensors.iter().enumerate() {
            for j in 0..self.n {
                let mut acc = self.field.zero();
                for (i, ui) in u.iter().enumerate() {
                    acc = acc.add(&t.at(i, j).mul(ui));
                }
                *out.at_mut(s, j) = acc;
            }
        }
        out
    }

    /// Value of bilinear form `s` at `(u, v)`.
    pub fn bilinear_value(&self, s: usize, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let mut acc = self.field.zero();
        for i in 0..self.n {
            for j in 0..self.n {
                acc = acc.add(&self.tensors[s].at(i, j).mul(&u[i]).mul(&v[j]));
            }
        }
        acc
    }

    /// Entries of `M(u)` as degree-one polynomials in `x, y, z`.
    fn symbolic_matrix(&self) -> Vec<Vec<CommPoly>> {
        let mut rows = Vec::with_capacity(self.tensors.len());
        for t in &self.tensors {
            let mut row = Vec::with_capacity(self.n);
            for j in 0..self.n {
                let mut entry = CommPoly::zero(&self.field);
                for i in 0..self.n {
                    let c = t.at(i, j);
                    if !c.is_zero() {
                        let mut e = [0u32; 3];
                        e[i] = 1;
                        entry = entry.add(&CommPoly::monomial(&self.field, e, c.clone()));
                    }
                }
                row.push(entry);
            }
            rows.push(row);
        }
        rows
    }

    /// The cubic divisor `det M(u)` of a square 3x3 system; identically zero
    /// is a legitimate output (the scheme is all of `P^2`).
    pub fn pointscheme_cubic(&self) -> Result<CommPoly, PsError> {
        if self.n != 3 || self.tensors.len() != 3 {
            return Err(PsError::NotSquare);
        }
        let m = self.symbolic_matrix();
        let det = m[0][0]
            .mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])))
            .sub(&m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0]))))
            .add(&m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0]))));
        Ok(det)
    }

    /// All 3x3 minors of the stacked `M(u)`, as cubics in `u`; their common
    /// zero locus is the projection of the zero locus in `P^2 x P^2`.
    pub fn minors(&self) -> Result<Vec<CommPoly>, PsError> {
        if self.n != 3 || self.tensors.len() < 3 {
            return Err(PsError::NotSquare);
        }
        let m = self.symbolic_matrix();
        let rows = m.len();
        let mut out = Vec::new();
        for a in 0..rows {
            for b in a + 1..rows {
                for c in b + 1..rows {
                    let det = m[a][0]
                        .mul(&m[b][1].mul(&m[c][2]).sub(&m[b][2].mul(&m[c][1])))
                        .sub(&m[a][1].mul(&m[b][0].mul(&m[c][2]).sub(&m[b][2].mul(&m[c][0]))))
                        .add(&m[a][2].mul(&m[b][0].mul(&m[c][1]).sub(&m[b][1].mul(&m[c][0]))));
                    out.push(det);
                }
            }
        }
        Ok(out)
    }

    /// The image of a curve point under the scheme automorphism: the unique
    /// null direction of `M(p)` when it has rank exactly `n - 1`.
    pub fn sigma_eval(&self, p: &[Scalar]) -> Result<Vec<Scalar>, PsError> {
        let m = self.matrix_at(p);
        let kernel = m.kernel();
        match kernel.len() {
            0 => Err(PsError::NotOnScheme),
            1 => Ok(normalize_point(&kernel[0])),
            _ => Err(PsError::RankDeficient),
        }
    }

    /// Check that every bilinear form vanishes on `(p, sigma(p))` for every
    /// sample, evaluating the forms directly.
    pub fn verify_graph(&self, samples: &[Vec<Scalar>]) -> Result<bool, PsError> {
        for p in samples {
            let q = self.sigma_eval(p)?;
            for s in 0..self.tensors.len() {
                if !self.bilinear_value(s, p, &q).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Fit a single matrix `T` with `T p ~ sigma(p)` across the samples.
    /// With eight or more samples the last three are held out for
    /// validation. Returns `None` when no consistent invertible map exists.
    pub fn fit_projective_extension(
        &self,
        samples: &[Vec<Scalar>],
    ) -> Result<Option<Matrix>, PsError> {
        if samples.len() < 5 {
            return Err(PsError::DegenerateSampleSet);
        }
        let fit_count = if samples.len() >= 8 {
            samples.len() - 3
        } else {
            samples.len()
        };
        let field = self.field.clone();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for p in &samples[..fit_count] {
            let q = self.sigma_eval(p)?;
            // (T p)_i q_j - (T p)_j q_i = 0 for i < j
            for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                let mut row = vec![field.zero(); 9];
                for k in 0..3 {
                    row[i * 3 + k] = row[i * 3 + k].add(&p[k].mul(&q[j]));
                    row[j * 3 + k] = row[j * 3 + k].sub(&p[k].mul(&q[i]));
                }
                rows.push(row);
            }
        }
        let kernel = Matrix::from_rows(&field, rows).kernel();
        match kernel.len() {
            0 => Ok(None),
            1 => {
                let v = &kernel[0];
                let t = Matrix::from_rows(
                    &field,
                    (0..3).map(|i| v[i * 3..(i + 1) * 3].to_vec()).collect(),
                );
                if t.inverse().is_err() {
                    return Ok(None);
                }
                // validate on every sample, including any held out
                for p in samples {
                    let q = self.sigma_eval(p)?;
                    let tp = t.mul_vec(p);
                    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
                        let lhs = tp[i].mul(&q[j]).sub(&tp[j].mul(&q[i]));
                        if !lhs.is_zero() {
                            return Ok(None);
                        }
                    }
                }
                Ok(Some(t))
            }
            _ => Err(PsError::DegenerateSampleSet),
        }
    }

    /// Deterministically sample points of the cubic where the automorphism
    /// is defined (rank of `M(p)` exactly 2), scanning small parameter
    /// values.
    pub fn sample_curve_points(&self, want: usize) -> Result<Vec<Vec<Scalar>>, PsError> {
        let cubic = self.pointscheme_cubic()?;
        let field = self.field.clone();
        let mut pool: Vec<Scalar> = Vec::new();
        if field.characteristic() == 0 {
            for n in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7] {
                pool.push(field.scalar_from_i64(n));
            }
            for (a, b) in [(1i64, 2i64), (-1, 2), (3, 2), (1, 3), (-1, 3)] {
                pool.push(field.scalar_from_fraction(a, b).unwrap());
            }
            if field.has_extension() {
                let t = field.gen_t().unwrap();
                for n in [0i64, 1, -1, 2, -2] {
                    pool.push(t.add(&field.scalar_from_i64(n)));
                }
            }
        } else if let Some(elems) = field.enumerate() {
            pool = elems;
        }
        let mut out: Vec<Vec<Scalar>> = Vec::new();
        let push_if_new = |out: &mut Vec<Vec<Scalar>>, p: Vec<Scalar>| {
            let p = normalize_point(&p);
            if !out.contains(&p) && self.matrix_at(&p).kernel().len() == 1 {
                out.push(p);
            }
        };
        // points (1, b, z): roots of the cubic specialised in z
        'outer: for (bi, b) in pool.iter().enumerate() {
            let slice = cubic
                .substitute_value(0, &field.one())
                .substitute_value(1, b);
            let coeffs: Vec<Scalar> = {
                let mut v: Vec<Scalar> = Vec::new();
                for (e, c) in slice.terms() {
                    let k = e[2] as usize;
                    if v.len() <= k {
                        v.resize(k + 1, field.zero());
                    }
                    v[k] = c.clone();
                }
                v
            };
            if coeffs.iter().all(|c| c.is_zero()) {
                // the whole line lies on the scheme: pick z values that vary
                // with the line so the sample set stays in general position
                for k in 0..2usize {
                    let zv = &pool[(bi + 2 * k + 1) % pool.len()];
                    push_if_new(&mut out, vec![field.one(), b.clone(), zv.clone()]);
                    if out.len() >= want {
                        break 'outer;
                    }
                }
                continue;
            }
            if let Some(search) = roots_in_field(&coeffs, &field) {
                for (z0, _) in search.roots {
                    push_if_new(&mut out, vec![field.one(), b.clone(), z0]);
                    if out.len() >= want {
                        break 'outer;
                    }
                }
            }
        }
        if out.len() < want {
            for zv in &pool {
                let p = vec![field.zero(), field.one(), zv.clone()];
                if cubic.eval(&p).is_zero() {
                    push_if_new(&mut out, p);
                    if out.len() >= want {
                        break;
                    }
                }
            }
            let p = vec![field.zero(), field.zero(), field.one()];
            if cubic.eval(&p).is_zero() {
                push_if_new(&mut out, p);
            }
        }
        Ok(out)
    }
}

/// Homogeneous degree-2 words of the relation, exposed for tests building
/// systems by hand.
pub fn word_pair(w: &Word) -> (usize, usize) {
    (w.0[0] as usize, w.0[1] as usize)
}

pub use linalg::solve as solve_linear;
