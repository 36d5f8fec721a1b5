//! Commutative polynomial geometry in the three variables `x, y, z`:
//! Groebner bases, projective emptiness certificates, singular loci of
//! cubics, binary-form gcds and linear substitutions.

mod binary;
mod groebner;
mod roots;
mod solve;

pub use binary::{
    binary_gcd, binary_square_root, cubic_root_pattern, quadratic_is_square, BinaryForm,
    CubicRootPattern,
};
pub use groebner::{comm_groebner, normal_form_comm, MonomialOrder};
pub use roots::{roots_in_field, RootSearch};
pub use solve::{
    line_through, normalize_point, projective_empty, singular_locus, solve_projective,
    Emptiness, SingularLocus, SolveOutcome,
};

use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CommError {
    #[error("expected a homogeneous form of the stated degree")]
    WrongDegree,
    #[error("ideal generators must be homogeneous")]
    InhomogeneousInput,
    #[error("gcd of two zero forms")]
    BothZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("computation needs a field extension of degree >= 3, or an extension tower")]
    NeedsExtension,
    #[error("operands belong to different fields")]
    FieldMismatch,
}

pub type Exponents = [u32; 3];

/// Sparse commutative polynomial in `x, y, z`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommPoly {
    field: Field,
    terms: BTreeMap<Exponents, Scalar>,
}

impl CommPoly {
    pub fn zero(field: &Field) -> CommPoly {
        CommPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Field, c: Scalar) -> CommPoly {
        let mut p = CommPoly::zero(field);
        if !c.is_zero() {
            p.terms.insert([0, 0, 0], c);
        }
        p
    }

    pub fn variable(field: &Field, var: usize) -> CommPoly {
        let mut e = [0u32; 3];
        e[var] = 1;
        CommPoly::monomial(field, e, field.one())
    }

    pub fn monomial(field: &Field, exps: Exponents, coeff: Scalar) -> CommPoly {
        let mut p = CommPoly::zero(field);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &Exponents) -> Scalar {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| (e[0] + e[1] + e[2]) as usize)
            .max()
            .unwrap_or(0)
    }

    /// Common degree of all terms; zero polynomial reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut deg = None;
        for e in self.terms.keys() {
            let d = (e[0] + e[1] + e[2]) as usize;
            match deg {
                None => deg = Some(d),
                Some(x) if x == d => {}
                _ => return None,
            }
        }
        Some(deg.unwrap_or(0))
    }

    fn insert_add(&mut self, e: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(existing) => {
                let s = existing.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CommPoly) -> CommPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CommPoly {
        CommPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> CommPoly {
        if c.is_zero() {
            return CommPoly::zero(&self.field);
        }
        CommPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero(&self.field);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]];
                out.insert_add(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        let mut acc = CommPoly::constant(&self.field, self.field.one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, var: usize) -> CommPoly {
        let mut out = CommPoly::zero(&self.field);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[var] -= 1;
            let factor = self.field.scalar_from_i64(e[var] as i64);
            out.insert_add(e2, c.mul(&factor));
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), 3);
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (v, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term = term.mul(&point[v]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitute `var := value` (a scalar), producing a polynomial in the
    /// remaining variables.
    pub fn substitute_value(&self, var: usize, value: &Scalar) -> CommPoly {
        let mut out = CommPoly::zero(&self.field);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            for _ in 0..e[var] {
                coeff = coeff.mul(value);
            }
            let mut e2 = *e;
            e2[var] = 0;
            out.insert_add(e2, coeff);
        }
        out
    }

    /// Compose with an invertible linear change of coordinates: the result is
    /// `v -> f(M v)`.
    pub fn substitute_linear(&self, m: &Matrix) -> Result<CommPoly, CommError> {
        if m.nrows() != 3 || m.ncols() != 3 {
            return Err(CommError::SingularMatrix);
        }
        if m.inverse().is_err() {
            return Err(CommError::SingularMatrix);
        }
        let images: Vec<CommPoly> = (0..3)
            .map(|i| {
                let mut img = CommPoly::zero(&self.field);
                for j in 0..3 {
                    let mut e = [0u32; 3];
                    e[j] = 1;
                    img.insert_add(e, m.at(i, j).clone());
                }
                img
            })
            .collect();
        let mut out = CommPoly::zero(&self.field);
        for (e, c) in &self.terms {
            let mut term = CommPoly::constant(&self.field, c.clone());
            for (v, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term = term.mul(&images[v]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Map every coefficient into an extension of the same prime field.
    pub fn embed(&self, bigger: &Field) -> Result<CommPoly, CommError> {
        let mut out = CommPoly::zero(bigger);
        for (e, c) in &self.terms {
            let c2 = bigger.embed(c).map_err(|_| CommError::FieldMismatch)?;
            out.insert_add(*e, c2);
        }
        Ok(out)
    }

    /// Coefficient of `z^k`, as a polynomial in `x, y`.
    pub fn z_coefficient(&self, k: u32) -> CommPoly {
        let mut out = CommPoly::zero(&self.field);
        for (e, c) in &self.terms {
            if e[2] == k {
                out.insert_add([e[0], e[1], 0], c.clone());
            }
        }
        out
    }

    /// Canonical representative of the divisor class: over the rationals the
    /// coefficients are cleared to coprime integers with the grevlex-leading
    /// one positive; otherwise the leading coefficient is made 1.
    pub fn primitive_normalized(&self) -> CommPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lead = self
            .terms
            .keys()
            .max_by(|a, b| cmp_grevlex(a, b))
            .cloned()
            .unwrap();
        if self.field.characteristic() == 0 && !self.field.has_extension() {
            use num_bigint::BigInt;
            use num_traits::{One, Signed, Zero};
            let mut denom_lcm = BigInt::one();
            let mut numer_gcd = BigInt::zero();
            for c in self.terms.values() {
                let r = c.to_rational().expect("rational coefficient");
                denom_lcm = num_integer::lcm(denom_lcm, r.denom().clone());
                numer_gcd = num_integer::gcd(numer_gcd, r.numer().clone());
            }
            if numer_gcd.is_zero() {
                numer_gcd = BigInt::one();
            }
            let scale_num = self.field.scalar_from_bigint(&denom_lcm);
            let scale_den = self.field.scalar_from_bigint(&numer_gcd);
            let mut out = self.scale(&scale_num.try_div(&scale_den).expect("nonzero"));
            let lead_coeff = out.coeff(&lead).to_rational().expect("rational");
            if lead_coeff.is_negative() {
                out = out.neg();
            }
            out
        } else {
            let inv = self.coeff(&lead).inv();
            self.scale(&inv)
        }
    }

    /// Whether two nonzero polynomials agree up to a nonzero scalar.
    pub fn proportional_to(&self, other: &CommPoly) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (e0, c0) = self.terms.iter().next().unwrap();
        let d0 = other.terms.get(e0);
        let Some(d0) = d0 else { return false };
        let ratio = match d0.try_div(c0) {
            Ok(r) => r,
            Err(_) => return false,
        };
        self.scale(&ratio) == *other
    }

    /// Exact division by a linear form, when it divides.
    pub fn divide_by_linear(&self, line: &CommPoly) -> Option<CommPoly> {
        if line.homogeneous_degree() != Some(1) || line.is_zero() {
            return None;
        }
        // change coordinates so the line becomes `x`, divide, map back
        let coeffs: Vec<Scalar> = (0..3)
            .map(|v| {
                let mut e = [0u32; 3];
                e[v] = 1;
                line.coeff(&e)
            })
            .collect();
        let pivot = (0..3).find(|&v| !coeffs[v].is_zero())?;
        // M maps x -> line (in row `pivot` position) and keeps the other two
        // coordinates; build its inverse action instead: substitute so that
        // f = l * g  <=>  f(M v) = v_pivot * g(M v)
        let mut m = Matrix::identity(&self.field, 3);
        for v in 0..3 {
            *m.at_mut(pivot, v) = coeffs[v].clone();
        }
        // m sends e_pivot-coordinate to the line functional; invert to change
        // variables: in new coordinates w = m * v the line is w_pivot.
        let m_inv = m.inverse().ok()?;
        let transformed = self.substitute_linear(&m_inv).ok()?;
        // now the line is exactly the coordinate `pivot`
        let mut quotient = CommPoly::zero(&self.field);
        for (e, c) in &transformed.terms {
            if e[pivot] == 0 {
                return None;
            }
            let mut e2 = *e;
            e2[pivot] -= 1;
            quotient.insert_add(e2, c.clone());
        }
        quotient.substitute_linear(&m).ok()
    }
}

pub(crate) fn cmp_grevlex(a: &Exponents, b: &Exponents) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let da = a[0] + a[1] + a[2];
    let db = b[0] + b[1] + b[2];
    match da.cmp(&db) {
        Ordering::Equal => {}
        other => return other,
    }
    for k in (0..3).rev() {
        if a[k] != b[k] {
            // smaller exponent in the last differing (least) variable wins
            return b[k].cmp(&a[k]);
        }
    }
    Ordering::Equal
}

pub(crate) fn cmp_lex(a: &Exponents, b: &Exponents) -> std::cmp::Ordering {
    a.cmp(b)
}

impl fmt::Display for CommPoly {
    /// Canonical text: grevlex-descending terms, `^` for powers, explicit `*`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| cmp_grevlex(b, a));
        let mut first = true;
        for e in keys {
            let c = &self.terms[e];
            let (neg, mag) = crate::ncpoly::coeff_display(c);
            if first {
                if neg {
                    write!(out, "-")?;
                }
                first = false;
            } else if neg {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            for (v, name) in ["x", "y", "z"].iter().enumerate() {
                match e[v] {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    k => parts.push(format!("{}^{}", name, k)),
                }
            }
            let word = parts.join("*");
            match (mag.as_str(), word.is_empty()) {
                ("1", false) => write!(out, "{}", word)?,
                (_, false) => write!(out, "{}*{}", mag, word)?,
                (_, true) => write!(out, "{}", mag)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_commpoly;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn display_matches_grevlex_descending() {
        let f = q();
        let p = parse_commpoly("7*x*y*z + 2*y^3 + 2*x^3", &f).unwrap();
        assert_eq!(p.to_string(), "2*x^3 + 2*y^3 + 7*x*y*z");
    }

    #[test]
    fn substitution_normalizes_nodal_form() {
        // 8x^3 + y^3 + xyz under x -> x/2, y -> y, z -> 2z becomes x^3+y^3+xyz
        let f = q();
        let p = parse_commpoly("8*x^3 + y^3 + x*y*z", &f).unwrap();
        let m = Matrix::diagonal(
            &f,
            &[
                f.scalar_from_fraction(1, 2).unwrap(),
                f.one(),
                f.scalar_from_i64(2),
            ],
        );
        let q2 = p.substitute_linear(&m).unwrap();
        assert_eq!(q2, parse_commpoly("x^3 + y^3 + x*y*z", &f).unwrap());
    }

    #[test]
    fn char3_normal_form_map() {
        // alpha3 != 0 case over F_3 lands on y^3 + x^2 z + x y^2
        let f3 = Field::prime(3).unwrap();
        let a1 = f3.scalar_from_i64(1);
        let a2 = f3.scalar_from_i64(1);
        let a3 = f3.scalar_from_i64(2);
        // f = a1 x^3 + a2 x^2 y + a3 x y^2 + y^3 + x^2 z
        let f = {
            let x = CommPoly::variable(&f3, 0);
            let y = CommPoly::variable(&f3, 1);
            let z = CommPoly::variable(&f3, 2);
            x.pow(3)
                .scale(&a1)
                .add(&x.pow(2).mul(&y).scale(&a2))
                .add(&x.mul(&y.pow(2)).scale(&a3))
                .add(&y.pow(3))
                .add(&x.pow(2).mul(&z))
        };
        // x -> a3^{-1} x, y -> y, z -> a3^2 z - a1 a3^{-1} x - a2 y
        let a3inv = a3.inv();
        let mut m = Matrix::zero(&f3, 3, 3);
        *m.at_mut(0, 0) = a3inv.clone();
        *m.at_mut(1, 1) = f3.one();
        *m.at_mut(2, 0) = a1.mul(&a3inv).neg();
        *m.at_mut(2, 1) = a2.neg();
        *m.at_mut(2, 2) = a3.mul(&a3);
        let g = f.substitute_linear(&m).unwrap();
        let expected = {
            let x = CommPoly::variable(&f3, 0);
            let y = CommPoly::variable(&f3, 1);
            let z = CommPoly::variable(&f3, 2);
            y.pow(3).add(&x.pow(2).mul(&z)).add(&x.mul(&y.pow(2)))
        };
        assert_eq!(g, expected);
    }

    #[test]
    fn euler_identity_char_zero() {
        let f = q();
        let p = parse_commpoly("x^3 + 2*y^3 - x*y*z + 5*z^3", &f).unwrap();
        let lhs = CommPoly::variable(&f, 0)
            .mul(&p.partial(0))
            .add(&CommPoly::variable(&f, 1).mul(&p.partial(1)))
            .add(&CommPoly::variable(&f, 2).mul(&p.partial(2)));
        assert_eq!(lhs, p.scale(&f.scalar_from_i64(3)));
    }

    #[test]
    fn divide_by_linear_factor() {
        let f = q();
        let p = parse_commpoly("x^2*z - y^2*z", &f).unwrap();
        let line = parse_commpoly("x - y", &f).unwrap();
        let quotient = p.divide_by_linear(&line).unwrap();
        assert_eq!(quotient.mul(&line), p);
        let nonfactor = parse_commpoly("x + 2*y", &f).unwrap();
        assert!(p.divide_by_linear(&nonfactor).is_none());
    }

    #[test]
    fn proportionality() {
        let f = q();
        let p = parse_commpoly("x^3 + y^3 + x*y*z", &f).unwrap();
        let q2 = p.scale(&f.scalar_from_i64(-7));
        assert!(p.proportional_to(&q2));
        assert!(!p.proportional_to(&parse_commpoly("x^3 + y^3", &f).unwrap()));
    }
}
