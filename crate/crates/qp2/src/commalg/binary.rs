//! Homogeneous forms in two variables: Euclidean gcd (tracking the point at
//! infinity) and the characteristic-aware multiplicity analysis the cubic
//! classifier leans on.

use super::roots::{up_degree, up_gcd_monic, up_trim};
use super::{CommError, CommPoly};
use crate::field::{Field, Scalar};

/// Homogeneous binary form of degree `coeffs.len() - 1`:
/// `sum_i coeffs[i] * x^(d-i) * y^i`. The zero form stores no coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(field: &Field, coeffs: Vec<Scalar>) -> BinaryForm {
        let mut f = BinaryForm {
            field: field.clone(),
            coeffs,
        };
        if f.coeffs.iter().all(|c| c.is_zero()) {
            f.coeffs.clear();
        }
        f
    }

    pub fn zero(field: &Field) -> BinaryForm {
        BinaryForm {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    /// Read a polynomial in `x, y` (no `z`) as a binary form of its
    /// homogeneous degree.
    pub fn from_commpoly(p: &CommPoly) -> Option<BinaryForm> {
        if p.is_zero() {
            return Some(BinaryForm::zero(p.field()));
        }
        let d = p.homogeneous_degree()?;
        let mut coeffs = vec![p.field().zero(); d + 1];
        for (e, c) in p.terms() {
            if e[2] != 0 {
                return None;
            }
            coeffs[e[1] as usize] = c.clone();
        }
        Some(BinaryForm::new(p.field(), coeffs))
    }

    pub fn to_commpoly(&self) -> CommPoly {
        let mut out = CommPoly::zero(&self.field);
        let d = self.degree().unwrap_or(0) as u32;
        for (i, c) in self.coeffs.iter().enumerate() {
            out = out.add(&CommPoly::monomial(
                &self.field,
                [d - i as u32, i as u32, 0],
                c.clone(),
            ));
        }
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Write `f = y^k * g` with `y` not dividing `g`; returns `(k, g(x, 1))`
    /// where the second component is a univariate polynomial in `x`
    /// (constant-first coefficients).
    fn split_infinity(&self) -> (usize, Vec<Scalar>) {
        let d = self.coeffs.len() - 1;
        // y | f iff the x^d coefficient is zero; y^k | f iff the top k
        // x-coefficients vanish
        let mut k = 0;
        while k <= d && self.coeffs[k].is_zero() {
            k += 1;
        }
        // g = f / y^k has x-degree d - k; univariate in x:
        // coefficient of x^j in g(x,1) is coeffs[(d - k) - j + k] = coeffs[d - j]
        let mut uni = Vec::with_capacity(d - k + 1);
        for j in 0..=(d - k) {
            uni.push(self.coeffs[d - j].clone());
        }
        up_trim(&mut uni);
        (k, uni)
    }

    fn from_parts(field: &Field, y_power: usize, uni: &[Scalar]) -> BinaryForm {
        // rehomogenise `uni` (a polynomial in x) to degree deg(uni), then
        // multiply by y^y_power
        let du = up_degree(uni).map(|d| d) .unwrap_or(0);
        let d = du + y_power;
        let mut coeffs = vec![field.zero(); d + 1];
        for j in 0..=du {
            // x^j term of uni becomes x^j y^(du - j), then * y^y_power:
            // index by y-exponent = du - j + y_power
            coeffs[du - j + y_power] = uni.get(j).cloned().unwrap_or_else(|| field.zero());
        }
        BinaryForm::new(field, coeffs)
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        let d = match self.degree() {
            Some(d) => d,
            None => return acc,
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut term = c.clone();
            for _ in 0..(d - i) {
                term = term.mul(x);
            }
            for _ in 0..i {
                term = term.mul(y);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// Monic gcd of two binary forms via the Euclidean algorithm on
/// dehomogenisations, with the common power of the second variable (the
/// point at infinity) tracked separately.
pub fn binary_gcd(f: &BinaryForm, g: &BinaryForm) -> Result<BinaryForm, CommError> {
    if f.is_zero() && g.is_zero() {
        return Err(CommError::BothZero);
    }
    if f.is_zero() {
        return Ok(monic(g));
    }
    if g.is_zero() {
        return Ok(monic(f));
    }
    let field = f.field.clone();
    let (kf, uf) = f.split_infinity();
    let (kg, ug) = g.split_infinity();
    let k = kf.min(kg);
    let uni = up_gcd_monic(&uf, &ug, &field);
    Ok(BinaryForm::from_parts(&field, k, &uni))
}

fn monic(f: &BinaryForm) -> BinaryForm {
    let lead = f
        .coeffs
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero form");
    BinaryForm::new(
        &f.field,
        f.coeffs.iter().map(|c| c.mul(&lead.inv())).collect(),
    )
}

/// Multiplicity pattern of a binary cubic over the algebraic closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubicRootPattern {
    ThreeDistinct,
    /// Witness: the repeated linear factor, when expressible in the field.
    DoublePlusSimple(Option<BinaryForm>),
    Triple(Option<BinaryForm>),
}

/// Closure-correct multiplicity pattern of a nonzero binary cubic, decided by
/// gcds with the partials so no root extraction is needed. Characteristics 2
/// and 3 take their own branches.
pub fn cubic_root_pattern(f: &BinaryForm) -> Result<CubicRootPattern, CommError> {
    if f.degree() != Some(3) {
        return Err(CommError::WrongDegree);
    }
    let field = f.field.clone();
    let p = field.characteristic();
    let fx = partial_x(f);
    let fy = partial_y(f);
    if p == 3 && fx.is_zero() && fy.is_zero() {
        // f = a x^3 + b y^3 = (a^(1/3) x + b^(1/3) y)^3 over the closure
        let witness = frobenius_cube_root_line(f);
        return Ok(CubicRootPattern::Triple(witness));
    }
    let rep = {
        let g1 = binary_gcd(f, &fx)?;
        binary_gcd(&g1, &fy)?
    };
    let deg = rep.degree().unwrap_or(0);
    if p == 2 {
        // in characteristic 2 both l^2 m and l^3 give a degree-2 repeated part
        return match deg {
            0 => Ok(CubicRootPattern::ThreeDistinct),
            2 => {
                let line = binary_square_root(&rep);
                match &line {
                    Some(l) => {
                        let l3 = multiply(&multiply(l, l), l);
                        if proportional(&l3, f) {
                            Ok(CubicRootPattern::Triple(line))
                        } else {
                            Ok(CubicRootPattern::DoublePlusSimple(line))
                        }
                    }
                    None => Ok(CubicRootPattern::DoublePlusSimple(None)),
                }
            }
            // a single repeated line of multiplicity exactly 2 shows up with
            // degree 1 here only in characteristic 2 when the line is the
            // gcd itself
            1 => Ok(CubicRootPattern::DoublePlusSimple(Some(rep))),
            _ => Ok(CubicRootPattern::Triple(None)),
        };
    }
    match deg {
        0 => Ok(CubicRootPattern::ThreeDistinct),
        1 => Ok(CubicRootPattern::DoublePlusSimple(Some(rep))),
        _ => {
            // rep = l^2 for f = l^3 (char != 2, 3); recover l from rep
            let line = binary_square_root(&rep)
                .or_else(|| frobenius_cube_root_line(f));
            Ok(CubicRootPattern::Triple(line))
        }
    }
}

/// Whether a binary quadratic is a perfect square of a linear form.
/// Characteristic 2 uses the cross-term test, otherwise the discriminant.
pub fn quadratic_is_square(q: &BinaryForm) -> Result<bool, CommError> {
    if q.degree() != Some(2) {
        return Err(CommError::WrongDegree);
    }
    let a = q.coeffs[0].clone();
    let b = q.coeffs[1].clone();
    let c = q.coeffs[2].clone();
    if q.field.characteristic() == 2 {
        return Ok(b.is_zero());
    }
    // discriminant b^2 - 4ac
    let four = q.field.scalar_from_i64(4);
    let disc = b.mul(&b).sub(&four.mul(&a).mul(&c));
    Ok(disc.is_zero())
}

/// Square root of a perfect-square binary quadratic, in the field when the
/// needed scalar square roots exist there.
pub fn binary_square_root(q: &BinaryForm) -> Option<BinaryForm> {
    if q.degree() != Some(2) {
        return None;
    }
    let field = q.field.clone();
    let a = &q.coeffs[0];
    let b = &q.coeffs[1];
    let c = &q.coeffs[2];
    // (r x + s y)^2 = r^2 x^2 + 2 r s x y + s^2 y^2
    if !a.is_zero() {
        let r = a.sqrt_in_field()?;
        let two_r = r.add(&r);
        let s = if two_r.is_zero() {
            // characteristic 2: s = sqrt(c)
            c.sqrt_in_field()?
        } else {
            b.try_div(&two_r).ok()?
        };
        let cand = BinaryForm::new(&field, vec![r, s]);
        let sq = multiply(&cand, &cand);
        if &sq == q {
            return Some(cand);
        }
        return None;
    }
    if !b.is_zero() {
        return None; // a = 0, b != 0: q = y(bx + cy) is not a square
    }
    let s = c.sqrt_in_field()?;
    Some(BinaryForm::new(&field, vec![field.zero(), s]))
}

fn partial_x(f: &BinaryForm) -> BinaryForm {
    let d = f.coeffs.len() - 1;
    let mut coeffs = Vec::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        if i == d {
            continue;
        }
        let k = f.field.scalar_from_i64((d - i) as i64);
        coeffs.push(c.mul(&k));
    }
    BinaryForm::new(&f.field, coeffs)
}

fn partial_y(f: &BinaryForm) -> BinaryForm {
    let mut coeffs = Vec::new();
    for (i, c) in f.coeffs.iter().enumerate() {
        if i == 0 {
            continue;
        }
        let k = f.field.scalar_from_i64(i as i64);
        coeffs.push(c.mul(&k));
    }
    BinaryForm::new(&f.field, coeffs)
}

pub(crate) fn multiply(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
    if f.is_zero() || g.is_zero() {
        return BinaryForm::zero(&f.field);
    }
    let mut coeffs = vec![f.field.zero(); f.coeffs.len() + g.coeffs.len() - 1];
    for (i, a) in f.coeffs.iter().enumerate() {
        for (j, b) in g.coeffs.iter().enumerate() {
            coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
        }
    }
    BinaryForm::new(&f.field, coeffs)
}

fn proportional(f: &BinaryForm, g: &BinaryForm) -> bool {
    f.to_commpoly().proportional_to(&g.to_commpoly())
}

/// In characteristic 3, `a x^3 + b y^3 = (a^(1/3) x + b^(1/3) y)^3`; cube
/// roots are the inverse Frobenius, available in finite fields.
fn frobenius_cube_root_line(f: &BinaryForm) -> Option<BinaryForm> {
    let field = f.field.clone();
    if field.characteristic() != 3 {
        return None;
    }
    let a = &f.coeffs[0];
    let b = &f.coeffs[3];
    if !f.coeffs[1].is_zero() || !f.coeffs[2].is_zero() {
        return None;
    }
    let cube_root = |s: &Scalar| -> Option<Scalar> {
        field
            .enumerate()?
            .into_iter()
            .find(|x| x.mul(x).mul(x) == *s)
    };
    let r = cube_root(a)?;
    let s = cube_root(b)?;
    Some(BinaryForm::new(&field, vec![r, s]))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn bf(field: &Field, coeffs: &[i64]) -> BinaryForm {
        BinaryForm::new(
            field,
            coeffs.iter().map(|&n| field.scalar_from_i64(n)).collect(),
        )
    }

    #[test]
    fn gcd_of_monomials() {
        // gcd(xy, x^2) = x
        let f = q();
        let xy = bf(&f, &[0, 1, 0]);
        let x2 = bf(&f, &[1, 0, 0]);
        let g = binary_gcd(&xy, &x2).unwrap();
        assert_eq!(g, bf(&f, &[1, 0]));
    }

    #[test]
    fn gcd_with_irreducible_common_factor() {
        // gcd(x^2 + y^2, x^4 - y^4) = x^2 + y^2
        let f = q();
        let a = bf(&f, &[1, 0, 1]);
        let b = bf(&f, &[1, 0, 0, 0, -1]);
        let g = binary_gcd(&a, &b).unwrap();
        assert_eq!(g, bf(&f, &[1, 0, 1]));
    }

    #[test]
    fn gcd_tracks_point_at_infinity() {
        // gcd(y^2, xy) = y
        let f = q();
        let y2 = bf(&f, &[0, 0, 1]);
        let xy = bf(&f, &[0, 1, 0]);
        let g = binary_gcd(&y2, &xy).unwrap();
        assert_eq!(g, bf(&f, &[0, 1]));
    }

    #[test]
    fn tangent_cone_shares_a_line_with_the_cubic_part() {
        // f = z(y^2 - xz) moved so its singular point (1,0,0) sits at
        // (0,0,1) reads x*y^2 - x^2*z: the z-coefficient -x^2 and the
        // cubic part x*y^2 share the line factor x
        let f = q();
        let q2 = bf(&f, &[-1, 0, 0]); // -x^2
        let c3 = bf(&f, &[0, 0, 1, 0]); // x y^2
        let g = binary_gcd(&q2, &c3).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert_eq!(g, bf(&f, &[1, 0]));
    }

    #[test]
    fn both_zero_is_an_error() {
        let f = q();
        assert_eq!(
            binary_gcd(&BinaryForm::zero(&f), &BinaryForm::zero(&f)).unwrap_err(),
            CommError::BothZero
        );
    }

    #[test]
    fn pattern_three_distinct() {
        // xy(x - y)
        let f = q();
        let p = multiply(&multiply(&bf(&f, &[1, 0]), &bf(&f, &[0, 1])), &bf(&f, &[1, -1]));
        assert_eq!(
            cubic_root_pattern(&p).unwrap(),
            CubicRootPattern::ThreeDistinct
        );
        // x^3 + y^3 also has three distinct roots over the closure
        let s = bf(&f, &[1, 0, 0, 1]);
        assert_eq!(
            cubic_root_pattern(&s).unwrap(),
            CubicRootPattern::ThreeDistinct
        );
    }

    #[test]
    fn pattern_double_plus_simple() {
        // x^2 y
        let f = q();
        let p = bf(&f, &[0, 1, 0, 0]);
        match cubic_root_pattern(&p).unwrap() {
            CubicRootPattern::DoublePlusSimple(Some(l)) => {
                assert_eq!(l, bf(&f, &[1, 0]));
            }
            other => panic!("expected double+simple, got {:?}", other),
        }
    }

    #[test]
    fn pattern_triple() {
        // (x + 2y)^3
        let f = q();
        let l = bf(&f, &[1, 2]);
        let p = multiply(&multiply(&l, &l), &l);
        match cubic_root_pattern(&p).unwrap() {
            CubicRootPattern::Triple(Some(w)) => {
                assert!(proportional(&w, &l));
            }
            other => panic!("expected triple, got {:?}", other),
        }
    }

    #[test]
    fn pattern_triple_char3() {
        // over F_3: x^3 + 2 y^3 = (x + 2^(1/3) y)^3 and cube roots are unique
        let f3 = Field::prime(3).unwrap();
        let p = bf(&f3, &[1, 0, 0, 2]);
        match cubic_root_pattern(&p).unwrap() {
            CubicRootPattern::Triple(Some(l)) => {
                let l3 = multiply(&multiply(&l, &l), &l);
                assert!(proportional(&l3, &p));
            }
            other => panic!("expected char-3 triple, got {:?}", other),
        }
    }

    #[test]
    fn square_tests() {
        let f = q();
        // (x - 3y)^2 = x^2 - 6xy + 9y^2
        let sq = bf(&f, &[1, -6, 9]);
        assert!(quadratic_is_square(&sq).unwrap());
        assert_eq!(binary_square_root(&sq).unwrap(), bf(&f, &[1, -3]));
        // xy is not a square
        assert!(!quadratic_is_square(&bf(&f, &[0, 1, 0])).unwrap());
        // char 2: x^2 + y^2 is a square (cross term zero)
        let f2 = Field::prime(2).unwrap();
        assert!(quadratic_is_square(&bf(&f2, &[1, 0, 1])).unwrap());
        assert!(!quadratic_is_square(&bf(&f2, &[1, 1, 1])).unwrap());
    }
}
