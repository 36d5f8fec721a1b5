//! Projective zero sets in `P^2`, exactly.
//!
//! Emptiness is certified by variable-power membership (a projective
//! Nullstellensatz certificate, valid over the algebraic closure). Point
//! extraction works patchwise with lex elimination; an irreducible quadratic
//! in the elimination chain triggers a single automatic field extension, and
//! anything needing a deeper root is reported rather than approximated.

use super::groebner::{comm_groebner, leading_exponents, normal_form_comm, MonomialOrder};
use super::roots::{roots_in_field, up_gcd_monic, up_trim};
use super::{CommError, CommPoly};
use crate::field::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    /// No zeros over the algebraic closure.
    Empty,
    /// The complete, finite list of projective zeros over `field` (which may
    /// be a quadratic extension of the input field).
    Finite {
        field: Field,
        points: Vec<Vec<Scalar>>,
    },
    PositiveDimensional,
    /// Zeros exist only over extensions this workbench does not build
    /// (degree >= 3, or a tower over an existing extension).
    NeedsExtension,
}

enum Obstacle {
    Adjoin([Scalar; 3]),
    TooDeep,
}

enum Inner {
    Finite(Vec<Vec<Scalar>>),
    PositiveDimensional,
}

/// Scale so the first nonzero coordinate is 1.
pub fn normalize_point(coords: &[Scalar]) -> Vec<Scalar> {
    let pivot = coords
        .iter()
        .find(|c| !c.is_zero())
        .expect("projective point needs a nonzero coordinate");
    let inv = pivot.inv();
    coords.iter().map(|c| c.mul(&inv)).collect()
}

/// The line through two distinct projective points (cross product).
pub fn line_through(field: &Field, p: &[Scalar], q: &[Scalar]) -> Option<CommPoly> {
    let cross = [
        p[1].mul(&q[2]).sub(&p[2].mul(&q[1])),
        p[2].mul(&q[0]).sub(&p[0].mul(&q[2])),
        p[0].mul(&q[1]).sub(&p[1].mul(&q[0])),
    ];
    if cross.iter().all(|c| c.is_zero()) {
        return None;
    }
    let mut line = CommPoly::zero(field);
    for (v, c) in cross.iter().enumerate() {
        let mut e = [0u32; 3];
        e[v] = 1;
        line = line.add(&CommPoly::monomial(field, e, c.clone()));
    }
    Some(line)
}

/// Complete projective solve with automatic single-step quadratic extension.
pub fn solve_projective(gens: &[CommPoly]) -> SolveOutcome {
    let nonzero: Vec<CommPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if nonzero.is_empty() {
        return SolveOutcome::PositiveDimensional;
    }
    let mut field = nonzero[0].field().clone();
    let mut current = nonzero;
    loop {
        match solve_over(&current, &field) {
            Ok(Inner::Finite(points)) => {
                return if points.is_empty() {
                    SolveOutcome::Empty
                } else {
                    SolveOutcome::Finite { field, points }
                };
            }
            Ok(Inner::PositiveDimensional) => return SolveOutcome::PositiveDimensional,
            Err(Obstacle::Adjoin(quad)) => {
                if field.has_extension() {
                    return SolveOutcome::NeedsExtension;
                }
                let Ok((bigger, _root)) = field.adjoin_quadratic(&quad[0], &quad[1]) else {
                    return SolveOutcome::NeedsExtension;
                };
                current = current
                    .iter()
                    .map(|g| g.embed(&bigger).expect("same prime field"))
                    .collect();
                field = bigger;
            }
            Err(Obstacle::TooDeep) => return SolveOutcome::NeedsExtension,
        }
    }
}

/// Coefficients of a polynomial involving a single variable, constant first.
fn univariate_in(p: &CommPoly, var: usize) -> Option<Vec<Scalar>> {
    let field = p.field().clone();
    let mut coeffs: Vec<Scalar> = Vec::new();
    for (e, c) in p.terms() {
        for (v, &exp) in e.iter().enumerate() {
            if v != var && exp != 0 {
                return None;
            }
        }
        let k = e[var] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, field.zero());
        }
        coeffs[k] = c.clone();
    }
    up_trim(&mut coeffs);
    Some(coeffs)
}

fn find_roots(
    poly: &[Scalar],
    field: &Field,
) -> Result<Vec<Scalar>, Obstacle> {
    let search = roots_in_field(poly, field).ok_or(Obstacle::TooDeep)?;
    match search.leftover_degree {
        0 => Ok(search.roots.into_iter().map(|(r, _)| r).collect()),
        2 => Err(Obstacle::Adjoin(search.leftover_quadratic.expect("quadratic"))),
        _ => Err(Obstacle::TooDeep),
    }
}

fn solve_over(gens: &[CommPoly], field: &Field) -> Result<Inner, Obstacle> {
    let mut points: Vec<Vec<Scalar>> = Vec::new();

    // patch x = 1: a bivariate system in (y, z)
    let patch_a: Vec<CommPoly> = gens
        .iter()
        .map(|g| g.substitute_value(0, &field.one()))
        .filter(|g| !g.is_zero())
        .collect();
    if patch_a.is_empty() {
        return Ok(Inner::PositiveDimensional);
    }
    let has_unit = |basis: &[CommPoly]| {
        basis
            .iter()
            .any(|g| !g.is_zero() && g.total_degree() == 0)
    };
    let gb = comm_groebner(&patch_a, MonomialOrder::Lex);
    if !has_unit(&gb) {
        let leads = leading_exponents(&gb, MonomialOrder::Lex);
        let pure_y = leads.iter().any(|e| e[0] == 0 && e[2] == 0 && e[1] > 0);
        let pure_z = leads.iter().any(|e| e[0] == 0 && e[1] == 0 && e[2] > 0);
        if !(pure_y && pure_z) {
            return Ok(Inner::PositiveDimensional);
        }
        // eliminant in z alone
        let elim = gb
            .iter()
            .filter_map(|g| univariate_in(g, 2))
            .find(|c| !c.is_empty())
            .expect("zero-dimensional lex basis has a pure-z element");
        for z0 in find_roots(&elim, field)? {
            // substitute z = z0, solve the common univariate system in y
            let mut gcd_y: Vec<Scalar> = Vec::new();
            for g in &gb {
                let gy = g.substitute_value(2, &z0);
                let Some(coeffs) = univariate_in(&gy, 1) else {
                    unreachable!("patch polynomials involve only y and z");
                };
                if coeffs.is_empty() {
                    continue;
                }
                gcd_y = if gcd_y.is_empty() {
                    coeffs
                } else {
                    up_gcd_monic(&gcd_y, &coeffs, field)
                };
            }
            if gcd_y.is_empty() {
                return Ok(Inner::PositiveDimensional);
            }
            for y0 in find_roots(&gcd_y, field)? {
                let cand = vec![field.one(), y0, z0.clone()];
                if gens.iter().all(|g| g.eval(&cand).is_zero()) {
                    points.push(normalize_point(&cand));
                }
            }
        }
    }

    // patch x = 0, y = 1: univariate in z
    let mut gcd_z: Vec<Scalar> = Vec::new();
    let mut all_vanish = true;
    for g in gens {
        let gz = g
            .substitute_value(0, &field.zero())
            .substitute_value(1, &field.one());
        let coeffs = univariate_in(&gz, 2).expect("x and y eliminated");
        if coeffs.is_empty() {
            continue;
        }
        all_vanish = false;
        gcd_z = if gcd_z.is_empty() {
            coeffs
        } else {
            up_gcd_monic(&gcd_z, &coeffs, field)
        };
    }
    if all_vanish {
        // the whole line x = 0 lies in the zero set
        return Ok(Inner::PositiveDimensional);
    }
    if !gcd_z.is_empty() && gcd_z.len() > 1 {
        for z0 in find_roots(&gcd_z, field)? {
            let cand = vec![field.zero(), field.one(), z0];
            if gens.iter().all(|g| g.eval(&cand).is_zero()) {
                points.push(normalize_point(&cand));
            }
        }
    }

    // the remaining point (0, 0, 1)
    let origin = vec![field.zero(), field.zero(), field.one()];
    if gens.iter().all(|g| g.eval(&origin).is_zero()) {
        points.push(origin);
    }

    points.dedup();
    let mut unique: Vec<Vec<Scalar>> = Vec::new();
    for p in points {
        if !unique.contains(&p) {
            unique.push(p);
        }
    }
    Ok(Inner::Finite(unique))
}

/// Best-effort zero collection: every point it returns is a genuine
/// projective zero, but nothing is guaranteed to be found. Roots beyond the
/// field are ignored except that, when nothing is found over a prime field,
/// one quadratic extension suggested by the elimination chain is tried.
fn collect_zeros_partial(gens: &[CommPoly], field: &Field, allow_extend: bool) -> Vec<(Field, Vec<Scalar>)> {
    let mut found: Vec<(Field, Vec<Scalar>)> = Vec::new();
    let mut leftover_quadratics: Vec<[Scalar; 3]> = Vec::new();
    let note_roots = |poly: &[Scalar], quads: &mut Vec<[Scalar; 3]>| -> Vec<Scalar> {
        match roots_in_field(poly, field) {
            Some(search) => {
                if let Some(q) = search.leftover_quadratic {
                    quads.push(q);
                }
                search.roots.into_iter().map(|(r, _)| r).collect()
            }
            None => Vec::new(),
        }
    };

    // patch x = 1
    let patch_a: Vec<CommPoly> = gens
        .iter()
        .map(|g| g.substitute_value(0, &field.one()))
        .filter(|g| !g.is_zero())
        .collect();
    if !patch_a.is_empty() {
        let gb = comm_groebner(&patch_a, MonomialOrder::Lex);
        let unit = gb.iter().any(|g| !g.is_zero() && g.total_degree() == 0);
        if !unit {
            if let Some(elim) = gb
                .iter()
                .filter_map(|g| univariate_in(g, 2))
                .find(|c| !c.is_empty() && c.len() > 1)
            {
                for z0 in note_roots(&elim, &mut leftover_quadratics) {
                    let mut gcd_y: Vec<Scalar> = Vec::new();
                    for g in &gb {
                        let gy = g.substitute_value(2, &z0);
                        if let Some(coeffs) = univariate_in(&gy, 1) {
                            if coeffs.is_empty() {
                                continue;
                            }
                            gcd_y = if gcd_y.is_empty() {
                                coeffs
                            } else {
                                up_gcd_monic(&gcd_y, &coeffs, field)
                            };
                        }
                    }
                    if gcd_y.len() > 1 {
                        for y0 in note_roots(&gcd_y, &mut leftover_quadratics) {
                            let cand = vec![field.one(), y0, z0.clone()];
                            if gens.iter().all(|g| g.eval(&cand).is_zero()) {
                                found.push((field.clone(), normalize_point(&cand)));
                            }
                        }
                    }
                }
            }
        }
    }

    // patch x = 0, y = 1 and the point (0, 0, 1)
    let mut gcd_z: Vec<Scalar> = Vec::new();
    for g in gens {
        let gz = g
            .substitute_value(0, &field.zero())
            .substitute_value(1, &field.one());
        if let Some(coeffs) = univariate_in(&gz, 2) {
            if coeffs.is_empty() {
                continue;
            }
            gcd_z = if gcd_z.is_empty() {
                coeffs
            } else {
                up_gcd_monic(&gcd_z, &coeffs, field)
            };
        }
    }
    if gcd_z.len() > 1 {
        for z0 in note_roots(&gcd_z, &mut leftover_quadratics) {
            let cand = vec![field.zero(), field.one(), z0];
            if gens.iter().all(|g| g.eval(&cand).is_zero()) {
                found.push((field.clone(), normalize_point(&cand)));
            }
        }
    }
    let origin = vec![field.zero(), field.zero(), field.one()];
    if gens.iter().all(|g| g.eval(&origin).is_zero()) {
        found.push((field.clone(), origin));
    }

    if found.is_empty() && allow_extend && !field.has_extension() {
        for quad in leftover_quadratics.into_iter().take(3) {
            let Ok((bigger, _root)) = field.adjoin_quadratic(&quad[0], &quad[1]) else {
                continue;
            };
            let embedded: Vec<CommPoly> = gens
                .iter()
                .map(|g| g.embed(&bigger).expect("same prime field"))
                .collect();
            let deeper = collect_zeros_partial(&embedded, &bigger, false);
            if !deeper.is_empty() {
                return deeper;
            }
        }
    }
    found
}

/// Verdict of the projective emptiness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    /// Certified: `x^N, y^N, z^N` all lie in the ideal.
    Empty { power: usize },
    /// A projective zero, possibly over a quadratic extension.
    NonEmpty {
        field: Field,
        witness: Vec<Scalar>,
    },
    Inconclusive,
}

/// Nullstellensatz-certified emptiness over the algebraic closure, with
/// witness extraction on failure.
pub fn projective_empty(gens: &[CommPoly], power_bound: usize) -> Result<Emptiness, CommError> {
    for g in gens {
        if g.homogeneous_degree().is_none() {
            return Err(CommError::InhomogeneousInput);
        }
    }
    let nonzero: Vec<CommPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(first) = nonzero.first() else {
        let field = gens
            .first()
            .map(|g| g.field().clone())
            .unwrap_or_else(Field::rationals);
        return Ok(Emptiness::NonEmpty {
            witness: vec![field.one(), field.zero(), field.zero()],
            field,
        });
    };
    let field = first.field().clone();
    let gb = comm_groebner(&nonzero, MonomialOrder::GrevLex);
    let mut certificate_power = 0usize;
    let mut certified = true;
    for var in 0..3 {
        let mut found = None;
        for n in 1..=power_bound {
            let mut e = [0u32; 3];
            e[var] = n as u32;
            let p = CommPoly::monomial(&field, e, field.one());
            if normal_form_comm(&p, &gb, MonomialOrder::GrevLex).is_zero() {
                found = Some(n);
                break;
            }
        }
        match found {
            Some(n) => certificate_power = certificate_power.max(n),
            None => {
                certified = false;
                break;
            }
        }
    }
    if certified {
        return Ok(Emptiness::Empty {
            power: certificate_power,
        });
    }
    match solve_projective(&nonzero) {
        SolveOutcome::Finite { field, points } => Ok(Emptiness::NonEmpty {
            witness: points[0].clone(),
            field,
        }),
        SolveOutcome::Empty => Ok(Emptiness::Inconclusive),
        SolveOutcome::NeedsExtension => {
            // the complete solve gave up; any single zero still refutes
            // emptiness
            let partial = collect_zeros_partial(&nonzero, &field, true);
            match partial.into_iter().next() {
                Some((wfield, witness)) => Ok(Emptiness::NonEmpty {
                    witness,
                    field: wfield,
                }),
                None => Ok(Emptiness::Inconclusive),
            }
        }
        SolveOutcome::PositiveDimensional => {
            // a positive-dimensional locus meets some coordinate hyperplane
            let candidates = ["x", "y", "z", "x - y", "x - z", "y - z", "x + y + z"];
            for h in candidates {
                let hp = crate::parse::parse_commpoly(h, &field).expect("fixed line");
                let mut with_line = nonzero.clone();
                with_line.push(hp);
                match solve_projective(&with_line) {
                    SolveOutcome::Finite { field, points } => {
                        return Ok(Emptiness::NonEmpty {
                            witness: points[0].clone(),
                            field,
                        });
                    }
                    _ => continue,
                }
            }
            Ok(Emptiness::Inconclusive)
        }
    }
}

/// Classification of the singular locus of a plane cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularLocus {
    SmoothCurve,
    FinitePoints {
        field: Field,
        points: Vec<Vec<Scalar>>,
    },
    PositiveDimensional { ideal: Vec<CommPoly> },
    NotACurve,
}

/// Singular locus of a homogeneous cubic; the form itself is always included
/// with its partials so characteristic 3 is handled correctly.
pub fn singular_locus(f: &CommPoly) -> Result<SingularLocus, CommError> {
    if f.is_zero() {
        return Ok(SingularLocus::NotACurve);
    }
    if f.homogeneous_degree() != Some(3) {
        return Err(CommError::WrongDegree);
    }
    let ideal = vec![f.clone(), f.partial(0), f.partial(1), f.partial(2)];
    match solve_projective(&ideal) {
        SolveOutcome::Empty => Ok(SingularLocus::SmoothCurve),
        SolveOutcome::Finite { field, points } => {
            Ok(SingularLocus::FinitePoints { field, points })
        }
        SolveOutcome::PositiveDimensional => Ok(SingularLocus::PositiveDimensional { ideal }),
        SolveOutcome::NeedsExtension => Err(CommError::NeedsExtension),
    }
}
