//! Classification of ternary cubic divisors: smooth, nodal, cuspidal, and
//! the reducible shapes (triangle, concurrent lines, conic plus secant or
//! tangent line, double line plus line, triple line).
//!
//! The decision procedure works over the algebraic closure while computing
//! only in the input field or a single quadratic extension of its prime
//! field; anything deeper is reported as `NeedsExtension` rather than
//! approximated.

use crate::commalg::{
    binary_gcd, cubic_root_pattern, quadratic_is_square, roots_in_field, singular_locus,
    BinaryForm, CommError, CommPoly, CubicRootPattern, SingularLocus,
};
use crate::commalg::line_through;
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubicClass {
    IdenticallyZero,
    /// Smooth cubic.
    Elliptic,
    Nodal {
        point: Vec<Scalar>,
    },
    Cuspidal {
        point: Vec<Scalar>,
    },
    /// Three distinct lines, no common point.
    Triangle,
    /// Three distinct lines through one point.
    ConcurrentLines {
        point: Vec<Scalar>,
    },
    ConicPlusSecantLine {
        line: CommPoly,
    },
    ConicPlusTangentLine {
        line: CommPoly,
    },
    DoubleLinePlusLine {
        double_line: CommPoly,
    },
    TripleLine {
        line: CommPoly,
    },
    /// A witness would need an extension of degree >= 3 (or a tower).
    NeedsExtension {
        detail: String,
    },
}

impl CubicClass {
    pub fn tag(&self) -> &'static str {
        match self {
            CubicClass::IdenticallyZero => "IdenticallyZero",
            CubicClass::Elliptic => "Elliptic",
            CubicClass::Nodal { .. } => "Nodal",
            CubicClass::Cuspidal { .. } => "Cuspidal",
            CubicClass::Triangle => "Triangle",
            CubicClass::ConcurrentLines { .. } => "ConcurrentLines",
            CubicClass::ConicPlusSecantLine { .. } => "ConicPlusSecantLine",
            CubicClass::ConicPlusTangentLine { .. } => "ConicPlusTangentLine",
            CubicClass::DoubleLinePlusLine { .. } => "DoubleLinePlusLine",
            CubicClass::TripleLine { .. } => "TripleLine",
            CubicClass::NeedsExtension { .. } => "NeedsExtension",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConicKind {
    Nondegenerate,
    TwoLines,
    DoubleLine,
}

pub fn classify_cubic(f: &CommPoly) -> Result<CubicClass, CommError> {
    if f.is_zero() {
        return Ok(CubicClass::IdenticallyZero);
    }
    if f.homogeneous_degree() != Some(3) {
        return Err(CommError::WrongDegree);
    }
    match singular_locus(f) {
        Err(CommError::NeedsExtension) => Ok(CubicClass::NeedsExtension {
            detail: "singular locus needs a deep extension".into(),
        }),
        Err(e) => Err(e),
        Ok(SingularLocus::NotACurve) => Ok(CubicClass::IdenticallyZero),
        Ok(SingularLocus::SmoothCurve) => Ok(CubicClass::Elliptic),
        Ok(SingularLocus::PositiveDimensional { .. }) => positive_dimensional_case(f),
        Ok(SingularLocus::FinitePoints { field, points }) => {
            let fe = f.embed(&field)?;
            if points.len() == 1 {
                unique_singular_point(&fe, &field, &points[0])
            } else {
                several_singular_points(&fe, &field, &points)
            }
        }
    }
}

/// Matrix sending `(0,0,1)` to `p`, completed by standard basis vectors.
fn move_to_origin(field: &Field, p: &[Scalar]) -> Matrix {
    let pivot = (0..3).find(|&i| !p[i].is_zero()).expect("projective point");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let mut m = Matrix::zero(field, 3, 3);
    for (col, &v) in others.iter().enumerate() {
        *m.at_mut(v, col) = field.one();
    }
    for i in 0..3 {
        *m.at_mut(i, 2) = p[i].clone();
    }
    m
}

fn unique_singular_point(
    f: &CommPoly,
    field: &Field,
    p: &[Scalar],
) -> Result<CubicClass, CommError> {
    let a = move_to_origin(field, p);
    let g = f.substitute_linear(&a)?;
    debug_assert!(g.z_coefficient(3).is_zero() && g.z_coefficient(2).is_zero());
    let q2 = BinaryForm::from_commpoly(&g.z_coefficient(1)).expect("binary form");
    let c3 = BinaryForm::from_commpoly(&g.z_coefficient(0)).expect("binary form");
    if q2.is_zero() {
        // three lines through the singular point
        return match cubic_root_pattern(&c3)? {
            CubicRootPattern::ThreeDistinct => Ok(CubicClass::ConcurrentLines {
                point: p.to_vec(),
            }),
            CubicRootPattern::DoublePlusSimple(line) => Ok(CubicClass::DoubleLinePlusLine {
                double_line: map_line_back(field, line, &a)?
                    .unwrap_or_else(|| CommPoly::zero(field)),
            }),
            CubicRootPattern::Triple(line) => Ok(CubicClass::TripleLine {
                line: map_line_back(field, line, &a)?.unwrap_or_else(|| CommPoly::zero(field)),
            }),
        };
    }
    let common = binary_gcd(&q2, &c3)?;
    let common_degree = common.degree().unwrap_or(0);
    if common_degree == 0 {
        // irreducible: node or cusp by the tangent cone
        return if quadratic_is_square(&q2)? {
            Ok(CubicClass::Cuspidal { point: p.to_vec() })
        } else {
            Ok(CubicClass::Nodal { point: p.to_vec() })
        };
    }
    // a line through the singular point divides the cubic
    let lines = match binary_lines(&common, field)? {
        BinaryLines::Lines(ls) => ls,
        BinaryLines::Irreducible(quad) => {
            if field.has_extension() {
                return Ok(CubicClass::NeedsExtension {
                    detail: "component line lives in a tower extension".into(),
                });
            }
            let (bigger, _root) = field
                .adjoin_quadratic(&quad[0], &quad[1])
                .map_err(|_| CommError::NeedsExtension)?;
            return classify_cubic(&f.embed(&bigger)?);
        }
    };
    for l in lines {
        let l3 = l.to_commpoly();
        if let Some(conic) = g.divide_by_linear(&l3) {
            return match conic_kind(&conic)? {
                ConicKind::Nondegenerate => Ok(CubicClass::ConicPlusTangentLine {
                    line: l3.substitute_linear(&a.inverse().expect("invertible"))?,
                }),
                // three lines with a unique common singular point are
                // concurrent
                ConicKind::TwoLines => Ok(CubicClass::ConcurrentLines { point: p.to_vec() }),
                ConicKind::DoubleLine => Ok(CubicClass::DoubleLinePlusLine {
                    double_line: CommPoly::zero(field),
                }),
            };
        }
    }
    Ok(CubicClass::NeedsExtension {
        detail: "no component line found in the working field".into(),
    })
}

fn several_singular_points(
    f: &CommPoly,
    field: &Field,
    points: &[Vec<Scalar>],
) -> Result<CubicClass, CommError> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let Some(line) = line_through(field, &points[i], &points[j]) else {
                continue;
            };
            if let Some(conic) = f.divide_by_linear(&line) {
                return match conic_kind(&conic)? {
                    ConicKind::Nondegenerate => {
                        Ok(CubicClass::ConicPlusSecantLine { line })
                    }
                    ConicKind::TwoLines => Ok(CubicClass::Triangle),
                    ConicKind::DoubleLine => Ok(CubicClass::DoubleLinePlusLine {
                        double_line: conic_square_root(&conic)
                            .unwrap_or_else(|| CommPoly::zero(field)),
                    }),
                };
            }
        }
    }
    Ok(CubicClass::NeedsExtension {
        detail: "no line through two singular points divides the cubic".into(),
    })
}

fn positive_dimensional_case(f: &CommPoly) -> Result<CubicClass, CommError> {
    let field = f.field().clone();
    if let Some(line) = perfect_cube_line(f) {
        return Ok(CubicClass::TripleLine { line });
    }
    // f = l^2 m: the repeated line divides every partial derivative
    let mut candidates: Vec<CommPoly> = Vec::new();
    for v in 0..3 {
        let partial = f.partial(v);
        if partial.is_zero() {
            continue;
        }
        match conic_kind(&partial)? {
            ConicKind::Nondegenerate => continue,
            ConicKind::DoubleLine => {
                if let Some(l) = conic_square_root(&partial) {
                    candidates.push(l);
                }
            }
            ConicKind::TwoLines => {
                if let Some((l1, l2)) = conic_split_lines(&partial)? {
                    candidates.push(l1);
                    candidates.push(l2);
                }
            }
        }
    }
    for l in candidates {
        if let Some(quot) = f.divide_by_linear(&l) {
            if let Some(rest) = quot.divide_by_linear(&l) {
                if rest.proportional_to(&l) {
                    return Ok(CubicClass::TripleLine { line: l });
                }
                return Ok(CubicClass::DoubleLinePlusLine { double_line: l });
            }
        }
    }
    let _ = field;
    Ok(CubicClass::NeedsExtension {
        detail: "repeated component not expressible in the working field".into(),
    })
}

enum BinaryLines {
    Lines(Vec<BinaryForm>),
    /// Monic irreducible quadratic `[c0, c1, 1]` whose roots would split it.
    Irreducible([Scalar; 3]),
}

/// Linear factors of a nonzero binary form of degree 1 or 2.
fn binary_lines(b: &BinaryForm, field: &Field) -> Result<BinaryLines, CommError> {
    match b.degree() {
        Some(1) => Ok(BinaryLines::Lines(vec![b.clone()])),
        Some(2) => {
            let c = b.coeffs();
            let (a, bb, cc) = (c[0].clone(), c[1].clone(), c[2].clone());
            if a.is_zero() {
                // y (b x + c y)
                let l1 = BinaryForm::new(field, vec![field.zero(), field.one()]);
                if bb.is_zero() {
                    return Ok(BinaryLines::Lines(vec![l1]));
                }
                let l2 = BinaryForm::new(field, vec![bb, cc]);
                return Ok(BinaryLines::Lines(vec![l1, l2]));
            }
            // roots of a w^2 + b w + c give factors (x - r y)
            let poly = vec![cc, bb, a.clone()];
            let search = roots_in_field(&poly, field).ok_or(CommError::NeedsExtension)?;
            if search.leftover_degree == 0 {
                let lines = search
                    .roots
                    .iter()
                    .map(|(r, _)| BinaryForm::new(field, vec![field.one(), r.neg()]))
                    .collect();
                Ok(BinaryLines::Lines(lines))
            } else {
                Ok(BinaryLines::Irreducible(
                    search.leftover_quadratic.expect("quadratic leftover"),
                ))
            }
        }
        _ => Err(CommError::WrongDegree),
    }
}

fn map_line_back(
    field: &Field,
    line: Option<BinaryForm>,
    a: &Matrix,
) -> Result<Option<CommPoly>, CommError> {
    let Some(l) = line else { return Ok(None) };
    let back = l
        .to_commpoly()
        .substitute_linear(&a.inverse().expect("invertible"))?;
    let _ = field;
    Ok(Some(back))
}

/// Degeneration type of a ternary conic. Characteristic 2 falls back to the
/// singular-locus computation; otherwise the rank of the symmetric matrix
/// decides.
pub fn conic_kind(q: &CommPoly) -> Result<ConicKind, CommError> {
    if q.homogeneous_degree() != Some(2) || q.is_zero() {
        return Err(CommError::WrongDegree);
    }
    let field = q.field().clone();
    if field.characteristic() == 2 {
        let ideal = vec![q.clone(), q.partial(0), q.partial(1), q.partial(2)];
        return Ok(match crate::commalg::solve_projective(&ideal) {
            crate::commalg::SolveOutcome::Empty => ConicKind::Nondegenerate,
            crate::commalg::SolveOutcome::Finite { .. } => ConicKind::TwoLines,
            crate::commalg::SolveOutcome::PositiveDimensional => ConicKind::DoubleLine,
            crate::commalg::SolveOutcome::NeedsExtension => {
                return Err(CommError::NeedsExtension)
            }
        });
    }
    let half = field.scalar_from_i64(2).inv();
    let coeff = |e: [u32; 3]| q.coeff(&e);
    let s = Matrix::from_rows(
        &field,
        vec![
            vec![
                coeff([2, 0, 0]),
                coeff([1, 1, 0]).mul(&half),
                coeff([1, 0, 1]).mul(&half),
            ],
            vec![
                coeff([1, 1, 0]).mul(&half),
                coeff([0, 2, 0]),
                coeff([0, 1, 1]).mul(&half),
            ],
            vec![
                coeff([1, 0, 1]).mul(&half),
                coeff([0, 1, 1]).mul(&half),
                coeff([0, 0, 2]),
            ],
        ],
    );
    Ok(match s.rank() {
        3 => ConicKind::Nondegenerate,
        2 => ConicKind::TwoLines,
        1 => ConicKind::DoubleLine,
        _ => unreachable!("nonzero conic has rank >= 1"),
    })
}

/// The two lines of a rank-2 conic, when they exist over the field (the
/// singular point is rational; the split may still need an extension, in
/// which case `None`).
fn conic_split_lines(q: &CommPoly) -> Result<Option<(CommPoly, CommPoly)>, CommError> {
    let field = q.field().clone();
    let ideal = vec![q.clone(), q.partial(0), q.partial(1), q.partial(2)];
    let s = match crate::commalg::solve_projective(&ideal) {
        crate::commalg::SolveOutcome::Finite { field: kf, points } if kf == field => {
            points[0].clone()
        }
        _ => return Ok(None),
    };
    let a = move_to_origin(&field, &s);
    let moved = q.substitute_linear(&a)?;
    let Some(binary) = BinaryForm::from_commpoly(&moved) else {
        return Ok(None);
    };
    match binary_lines(&binary, &field)? {
        BinaryLines::Lines(ls) if ls.len() == 2 => {
            let inv = a.inverse().expect("invertible");
            let l1 = ls[0].to_commpoly().substitute_linear(&inv)?;
            let l2 = ls[1].to_commpoly().substitute_linear(&inv)?;
            Ok(Some((l1, l2)))
        }
        _ => Ok(None),
    }
}

/// Square root of a rank-1 conic as a divisor: `q ~ l^2`.
fn conic_square_root(q: &CommPoly) -> Option<CommPoly> {
    let field = q.field().clone();
    let coeff = |e: [u32; 3]| q.coeff(&e);
    let pures = [[2, 0, 0], [0, 2, 0], [0, 0, 2]];
    let crosses = [
        ([1u32, 1, 0], 0usize, 1usize),
        ([1, 0, 1], 0, 2),
        ([0, 1, 1], 1, 2),
    ];
    let v = (0..3).find(|&v| !coeff(pures[v]).is_zero())?;
    let c = coeff(pures[v]);
    if field.characteristic() == 2 {
        // a square has no cross terms; take scalar square roots
        if crosses.iter().any(|(e, _, _)| !coeff(*e).is_zero()) {
            return None;
        }
        let mut l = CommPoly::zero(&field);
        for w in 0..3 {
            let cw = coeff(pures[w]);
            let r = cw.sqrt_in_field()?;
            let mut e = [0u32; 3];
            e[w] = 1;
            l = l.add(&CommPoly::monomial(&field, e, r));
        }
        return if l.mul(&l).proportional_to(q) { Some(l) } else { None };
    }
    // normalize so the v^2 coefficient is 1: q/c = (v + beta w + gamma u)^2
    let two_c = c.add(&c);
    let mut l = CommPoly::variable(&field, v);
    for w in 0..3 {
        if w == v {
            continue;
        }
        let cross = crosses
            .iter()
            .find(|(_, a, b)| (*a == v && *b == w) || (*a == w && *b == v))
            .map(|(e, _, _)| coeff(*e))
            .unwrap();
        let beta = cross.try_div(&two_c).ok()?;
        let mut e = [0u32; 3];
        e[w] = 1;
        l = l.add(&CommPoly::monomial(&field, e, beta));
    }
    if l.mul(&l).scale(&c).proportional_to(q) {
        Some(l)
    } else {
        None
    }
}

/// `f ~ l^3`, with the line recovered in the field when possible.
fn perfect_cube_line(f: &CommPoly) -> Option<CommPoly> {
    let field = f.field().clone();
    let coeff = |e: [u32; 3]| f.coeff(&e);
    let pures = [[3u32, 0, 0], [0, 3, 0], [0, 0, 3]];
    let v = (0..3).find(|&v| !coeff(pures[v]).is_zero())?;
    let c = coeff(pures[v]);
    if field.characteristic() == 3 {
        // cubes are Frobenius images: only pure cube terms survive
        if f.terms().any(|(e, _)| !pures.contains(e)) {
            return None;
        }
        let cube_root = |s: &Scalar| -> Option<Scalar> {
            field
                .enumerate()?
                .into_iter()
                .find(|x| x.mul(x).mul(x) == *s)
        };
        let mut l = CommPoly::zero(&field);
        for w in 0..3 {
            let cw = coeff(pures[w]);
            if cw.is_zero() {
                continue;
            }
            let r = cube_root(&cw)?;
            let mut e = [0u32; 3];
            e[w] = 1;
            l = l.add(&CommPoly::monomial(&field, e, r));
        }
        return if l.pow(3).proportional_to(f) { Some(l) } else { None };
    }
    // normalize to a monic cube in v: read off the other coefficients from
    // the v^2 w terms
    let three_c = c.mul(&field.scalar_from_i64(3));
    let mut l = CommPoly::variable(&field, v);
    for w in 0..3 {
        if w == v {
            continue;
        }
        let mut e = [0u32; 3];
        e[v] = 2;
        e[w] = 1;
        let beta = coeff(e).try_div(&three_c).ok()?;
        let mut ew = [0u32; 3];
        ew[w] = 1;
        l = l.add(&CommPoly::monomial(&field, ew, beta));
    }
    if l.pow(3).scale(&c).proportional_to(f) {
        Some(l)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_commpoly;

    fn q() -> Field {
        Field::rationals()
    }

    fn classify(src: &str) -> CubicClass {
        classify_cubic(&parse_commpoly(src, &q()).unwrap()).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert!(matches!(classify("x^3 + y^3 + x*y*z"), CubicClass::Nodal { .. }));
        assert!(matches!(classify("y^3 + x^2*z"), CubicClass::Cuspidal { .. }));
        let f3 = Field::prime(3).unwrap();
        let c = classify_cubic(&parse_commpoly("y^3 + x^2*z + x*y^2", &f3).unwrap()).unwrap();
        assert!(matches!(c, CubicClass::Cuspidal { .. }));
    }

    #[test]
    fn reducible_shapes() {
        assert!(matches!(classify("x*y*z"), CubicClass::Triangle));
        assert!(matches!(classify("z^3"), CubicClass::TripleLine { .. }));
        assert!(matches!(classify("x^2*y"), CubicClass::DoubleLinePlusLine { .. }));
        assert!(matches!(
            classify("x^3 + y^3"),
            CubicClass::ConcurrentLines { .. }
        ));
        // conic x1 x2 + z^2 times the line z: meets in two points
        assert!(matches!(
            classify("(x*y + z^2)*z"),
            CubicClass::ConicPlusSecantLine { .. }
        ));
        // conic y z - x^2 with its tangent line z
        assert!(matches!(
            classify("(y*z - x^2)*z"),
            CubicClass::ConicPlusTangentLine { .. }
        ));
    }

    #[test]
    fn elliptic_cases() {
        assert!(matches!(classify("x^3 + y^3 + z^3 + x*y*z"), CubicClass::Elliptic));
        assert!(matches!(classify("x^3 + y^3 + z^3"), CubicClass::Elliptic));
    }

    #[test]
    fn fermat_minus_triple_product_is_triangle() {
        // x^3+y^3+z^3-3xyz = (x+y+z)(x+wy+w^2z)(x+w^2y+wz): verified by
        // expansion over Q(w) below, classified over Q via extension
        let f = q();
        let qw = f.adjoin_root(&[f.one(), f.one(), f.one()], false).unwrap();
        let w = qw.gen_t().unwrap();
        let x = CommPoly::variable(&qw, 0);
        let y = CommPoly::variable(&qw, 1);
        let z = CommPoly::variable(&qw, 2);
        let l1 = x.add(&y).add(&z);
        let l2 = x.add(&y.scale(&w)).add(&z.scale(&w.mul(&w)));
        let l3 = x.add(&y.scale(&w.mul(&w))).add(&z.scale(&w));
        let product = l1.mul(&l2).mul(&l3);
        let expected = parse_commpoly("x^3 + y^3 + z^3 - 3*x*y*z", &qw).unwrap();
        assert_eq!(product, expected);
        assert!(matches!(
            classify("x^3 + y^3 + z^3 - 3*x*y*z"),
            CubicClass::Triangle
        ));
    }

    #[test]
    fn zero_and_wrong_degree() {
        let f = q();
        assert_eq!(
            classify_cubic(&CommPoly::zero(&f)).unwrap(),
            CubicClass::IdenticallyZero
        );
        assert_eq!(
            classify_cubic(&parse_commpoly("x^2", &f).unwrap()).unwrap_err(),
            CommError::WrongDegree
        );
    }

    #[test]
    fn conic_kinds() {
        let f = q();
        let nd = parse_commpoly("x*y + z^2", &f).unwrap();
        assert_eq!(conic_kind(&nd).unwrap(), ConicKind::Nondegenerate);
        let two = parse_commpoly("x*y", &f).unwrap();
        assert_eq!(conic_kind(&two).unwrap(), ConicKind::TwoLines);
        let dbl = parse_commpoly("x^2 + 2*x*y + y^2", &f).unwrap();
        assert_eq!(conic_kind(&dbl).unwrap(), ConicKind::DoubleLine);
        // two conjugate lines: degenerate but split only over Q(i)
        let conj = parse_commpoly("x^2 + y^2", &f).unwrap();
        assert_eq!(conic_kind(&conj).unwrap(), ConicKind::TwoLines);
    }

    #[test]
    fn conjugate_line_pair_with_extra_line() {
        // (x^2 + y^2)(x + z): three distinct non-concurrent lines
        assert!(matches!(
            classify("(x^2 + y^2)*(x + z)"),
            CubicClass::Triangle
        ));
        // (x^2 + y^2) x: lines x+iy, x-iy, x all through (0, 0, 1)
        assert!(matches!(
            classify("(x^2 + y^2)*x"),
            CubicClass::ConcurrentLines { .. }
        ));
    }

    #[test]
    fn triple_line_in_char_three() {
        let f3 = Field::prime(3).unwrap();
        // (x + 2y)^3 = x^3 + 2^3 y^3 = x^3 + 2 y^3 over F_3
        let f = parse_commpoly("x^3 + 2*y^3", &f3).unwrap();
        match classify_cubic(&f).unwrap() {
            CubicClass::TripleLine { line } => {
                assert!(line.pow(3).proportional_to(&f));
            }
            other => panic!("expected triple line, got {:?}", other),
        }
    }

    #[test]
    fn invariance_under_substitution() {
        // a deterministic mildly random generator is enough here
        let f = q();
        let cubics = [
            "x^3 + y^3 + x*y*z",
            "y^3 + x^2*z",
            "x*y*z",
            "z^3",
            "x^2*y",
            "x^3 + y^3",
            "(x*y + z^2)*z",
            "(y*z - x^2)*z",
            "x^3 + y^3 + z^3 + x*y*z",
        ];
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        for src in cubics {
            let poly = parse_commpoly(src, &f).unwrap();
            let base_tag = classify_cubic(&poly).unwrap().tag();
            let mut done = 0;
            while done < 5 {
                let m = Matrix::from_rows(
                    &f,
                    (0..3)
                        .map(|_| (0..3).map(|_| f.scalar_from_i64(next())).collect())
                        .collect(),
                );
                if m.inverse().is_err() {
                    continue;
                }
                let moved = poly.substitute_linear(&m).unwrap();
                assert_eq!(
                    classify_cubic(&moved).unwrap().tag(),
                    base_tag,
                    "class changed for {} under substitution",
                    src
                );
                done += 1;
            }
        }
    }
}
