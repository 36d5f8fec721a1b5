//! Univariate root finding over the supported field shapes.
//!
//! Finite fields are enumerated. The rationals use the rational root theorem
//! after clearing denominators. Quadratic extensions of the rationals write a
//! candidate root as `u + v*t` with rational `u, v` and eliminate `v` by a
//! resultant, which reduces completely to rational root finding. Whatever is
//! left after splitting off roots is reported so callers can adjoin a
//! quadratic root or give up honestly.

use crate::field::{rational_roots, Field, Scalar};
use num_rational::BigRational;
use num_traits::{One, Zero};

// ----- univariate polynomial helpers over an exact field -----

pub(crate) fn up_trim(v: &mut Vec<Scalar>) {
    while v.last().map(|s| s.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

pub(crate) fn up_degree(v: &[Scalar]) -> Option<usize> {
    let n = v.iter().rposition(|s| !s.is_zero())?;
    Some(n)
}

pub(crate) fn up_eval(v: &[Scalar], x: &Scalar) -> Scalar {
    let field = x.field();
    let mut acc = field.zero();
    for c in v.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

#[cfg_attr(not(test), allow(dead_code))]
pub(crate) fn up_derivative(v: &[Scalar], field: &Field) -> Vec<Scalar> {
    if v.len() <= 1 {
        return vec![];
    }
    let mut out = Vec::with_capacity(v.len() - 1);
    for (k, c) in v.iter().enumerate().skip(1) {
        out.push(c.mul(&field.scalar_from_i64(k as i64)));
    }
    up_trim(&mut out);
    out
}

pub(crate) fn up_divmod(a: &[Scalar], b: &[Scalar], field: &Field) -> (Vec<Scalar>, Vec<Scalar>) {
    let mut rem = a.to_vec();
    up_trim(&mut rem);
    let db = up_degree(b).expect("division by zero polynomial");
    let lead_inv = b[db].inv();
    if rem.len() < db + 1 {
        return (vec![], rem);
    }
    let mut quot = vec![field.zero(); rem.len() - db];
    while up_degree(&rem).map(|d| d >= db).unwrap_or(false) {
        let dr = up_degree(&rem).unwrap();
        let k = dr - db;
        let c = rem[dr].mul(&lead_inv);
        quot[k] = c.clone();
        for i in 0..=db {
            let t = c.mul(&b[i]);
            rem[k + i] = rem[k + i].sub(&t);
        }
        up_trim(&mut rem);
    }
    (quot, rem)
}

pub(crate) fn up_gcd_monic(a: &[Scalar], b: &[Scalar], field: &Field) -> Vec<Scalar> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    up_trim(&mut r0);
    up_trim(&mut r1);
    while !r1.is_empty() {
        let (_, r) = up_divmod(&r0, &r1, field);
        r0 = r1;
        r1 = r;
    }
    if let Some(d) = up_degree(&r0) {
        let inv = r0[d].inv();
        for c in r0.iter_mut() {
            *c = c.mul(&inv);
        }
    }
    r0
}

/// Divide out `(w - root)`; panics if the root is not a root.
fn deflate(poly: &[Scalar], root: &Scalar, field: &Field) -> Vec<Scalar> {
    let divisor = vec![root.neg(), field.one()];
    let (q, r) = up_divmod(poly, &divisor, field);
    assert!(r.is_empty(), "deflation by a non-root");
    q
}

/// Outcome of a root search in the coefficient field itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSearch {
    /// Roots in the field with multiplicities.
    pub roots: Vec<(Scalar, usize)>,
    /// Degree of the factor with no roots in the field.
    pub leftover_degree: usize,
    /// When the leftover is quadratic: its monic coefficients `[c0, c1, 1]`.
    pub leftover_quadratic: Option<[Scalar; 3]>,
}

/// All roots of `poly` (constant-first coefficients) lying in its own field.
/// `None` when the field shape is beyond the exact methods implemented here
/// or the integer factoring budget is exceeded.
pub fn roots_in_field(poly: &[Scalar], field: &Field) -> Option<RootSearch> {
    let mut p = poly.to_vec();
    up_trim(&mut p);
    if p.is_empty() {
        return None; // identically zero: infinitely many roots
    }
    // distinct roots come from the squarefree part, which keeps the
    // elimination polynomials small; multiplicities are recovered by
    // deflation below
    let squarefree = {
        let deriv = up_derivative(&p, field);
        if deriv.is_empty() {
            p.clone()
        } else {
            let g = up_gcd_monic(&p, &deriv, field);
            if up_degree(&g).unwrap_or(0) == 0 {
                p.clone()
            } else {
                up_divmod(&p, &g, field).0
            }
        }
    };
    let distinct: Vec<Scalar> = if field.characteristic() > 0 {
        let elems = field.enumerate()?;
        elems
            .into_iter()
            .filter(|x| up_eval(&p, x).is_zero())
            .collect()
    } else if !field.has_extension() {
        let rats: Vec<BigRational> = squarefree.iter().map(|s| scalar_to_rational(s)).collect();
        rational_roots(&rats)?
            .into_iter()
            .map(|r| rational_to_scalar(field, &r))
            .collect()
    } else if field.extension_degree() == 2 {
        extension_distinct_roots(&squarefree, field)?
    } else {
        // exotic trusted extensions: only the linear case is decidable here
        if up_degree(&p) == Some(1) {
            vec![p[0].neg().mul(&p[1].inv())]
        } else {
            return None;
        }
    };
    let mut remaining = p;
    let mut roots = Vec::new();
    for root in distinct {
        let mut mult = 0;
        while up_eval(&remaining, &root).is_zero() && up_degree(&remaining).unwrap_or(0) > 0 {
            remaining = deflate(&remaining, &root, field);
            mult += 1;
        }
        if mult > 0 {
            roots.push((root, mult));
        }
    }
    let leftover_degree = up_degree(&remaining).unwrap_or(0);
    let leftover_quadratic = if leftover_degree == 2 {
        let inv = remaining[2].inv();
        Some([
            remaining[0].mul(&inv),
            remaining[1].mul(&inv),
            field.one(),
        ])
    } else {
        None
    };
    Some(RootSearch {
        roots,
        leftover_degree,
        leftover_quadratic,
    })
}

fn scalar_to_rational(s: &Scalar) -> BigRational {
    s.coords()[0]
        .to_rational()
        .expect("characteristic-zero scalar")
}

fn rational_to_scalar(field: &Field, r: &BigRational) -> Scalar {
    let num = field.scalar_from_bigint(r.numer());
    let den = field.scalar_from_bigint(r.denom());
    num.try_div(&den).expect("nonzero denominator")
}

// ----- quadratic extensions of Q: the resultant route -----

/// Bivariate rational polynomial in `(u, v)`: outer index is the `v` degree,
/// entries are `u`-polynomials (constant first).
type QPoly = Vec<BigRational>;
type BiPoly = Vec<QPoly>;

fn q_trim(p: &mut QPoly) {
    while p.last().map(|x| x.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn q_add(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    q_trim(&mut out);
    out
}

fn q_sub(a: &QPoly, b: &QPoly) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    q_trim(&mut out);
    out
}

fn q_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    q_trim(&mut out);
    out
}

/// Exact division in `Q[u]`; panics on nonzero remainder (Bareiss guarantees
/// divisibility where this is used).
fn q_exact_div(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() {
        return vec![];
    }
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = &b[db];
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db || (rem.len() == db + 1 && !rem.is_empty()) {
        if rem.len() < db + 1 {
            break;
        }
        let dr = rem.len() - 1;
        let k = dr - db;
        let c = &rem[dr] / lead;
        quot[k] = c.clone();
        for i in 0..=db {
            let t = &c * &b[i];
            rem[k + i] -= t;
        }
        q_trim(&mut rem);
    }
    assert!(rem.is_empty(), "inexact division in Bareiss elimination");
    quot
}

fn bi_zero() -> BiPoly {
    vec![]
}

/// Divide a bivariate polynomial by the gcd of all its coefficients and
/// clear denominators, keeping the entries small.
fn bi_clear_content(p: &mut BiPoly) {
    use num_bigint::BigInt;
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for q in p.iter() {
        for c in q {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
            numer_gcd = num_integer::gcd(numer_gcd, c.numer().clone());
        }
    }
    if numer_gcd.is_zero() {
        return;
    }
    let scale = BigRational::new(denom_lcm, numer_gcd);
    for q in p.iter_mut() {
        for c in q.iter_mut() {
            *c = &*c * &scale;
        }
    }
}

/// Replace a univariate rational polynomial by its squarefree part with
/// cleared content.
fn q_squarefree(p: &mut QPoly) {
    if p.len() <= 2 {
        return;
    }
    let deriv: QPoly = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigRational::from(num_bigint::BigInt::from(k)))
        .collect();
    let g = q_gcd(p, &deriv);
    if g.len() > 1 {
        *p = q_exact_div_general(p, &g);
    }
    // clear content
    use num_bigint::BigInt;
    let mut denom_lcm = BigInt::one();
    let mut numer_gcd = BigInt::zero();
    for c in p.iter() {
        denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        numer_gcd = num_integer::gcd(numer_gcd, c.numer().clone());
    }
    if !numer_gcd.is_zero() {
        let scale = BigRational::new(denom_lcm, numer_gcd);
        for c in p.iter_mut() {
            *c = &*c * &scale;
        }
    }
}

/// Division with remainder discarded (used only where divisibility holds up
/// to rounding of the gcd computation).
fn q_exact_div_general(a: &QPoly, b: &QPoly) -> QPoly {
    let mut rem = a.clone();
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return rem;
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() && !rem.is_empty() {
        let dr = rem.len() - 1;
        let k = dr - db;
        let c = &rem[dr] / lead;
        quot[k] = c.clone();
        for i in 0..=db {
            let t = &c * &b[i];
            rem[k + i] -= t;
        }
        q_trim(&mut rem);
    }
    quot
}

fn bi_trim(p: &mut BiPoly) {
    while p.last().map(|q| q.is_empty()).unwrap_or(false) {
        p.pop();
    }
}

fn bi_add(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let mut out = vec![vec![]; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] = q_add(&out[i], x);
    }
    for (i, x) in b.iter().enumerate() {
        out[i] = q_add(&out[i], x);
    }
    bi_trim(&mut out);
    out
}

fn bi_scale(a: &BiPoly, c: &BigRational) -> BiPoly {
    if c.is_zero() {
        return bi_zero();
    }
    a.iter()
        .map(|q| q.iter().map(|x| x * c).collect())
        .collect()
}

/// Multiply by `u`.
fn bi_mul_u(a: &BiPoly) -> BiPoly {
    a.iter()
        .map(|q| {
            if q.is_empty() {
                vec![]
            } else {
                let mut s = vec![BigRational::zero()];
                s.extend(q.iter().cloned());
                s
            }
        })
        .collect()
}

/// Multiply by `v`.
fn bi_mul_v(a: &BiPoly) -> BiPoly {
    if a.is_empty() {
        return bi_zero();
    }
    let mut out = vec![vec![]];
    out.extend(a.iter().cloned());
    out
}

/// Distinct roots of a squarefree polynomial over a quadratic extension of
/// the rationals. Low degrees use the quadratic formula (complete, since
/// square roots in these fields are decidable); higher degrees fall back to
/// the resultant elimination.
fn extension_distinct_roots(s: &[Scalar], field: &Field) -> Option<Vec<Scalar>> {
    match up_degree(s) {
        None | Some(0) => Some(vec![]),
        Some(1) => Some(vec![s[0].neg().mul(&s[1].inv())]),
        Some(2) => {
            let a = &s[2];
            let b = &s[1];
            let c = &s[0];
            let four = field.scalar_from_i64(4);
            let disc = b.mul(b).sub(&four.mul(a).mul(c));
            match disc.sqrt_in_field() {
                None => Some(vec![]),
                Some(r) => {
                    let two_a = a.add(a);
                    let r1 = b.neg().add(&r).mul(&two_a.inv());
                    let r2 = b.neg().sub(&r).mul(&two_a.inv());
                    if r1 == r2 {
                        Some(vec![r1])
                    } else {
                        Some(vec![r1, r2])
                    }
                }
            }
        }
        Some(d) if d <= 8 => roots_in_quadratic_extension(s, field),
        _ => None,
    }
}

/// Roots of `p` in a quadratic extension `Q(t)`, `t^2 + b t + c = 0`.
fn roots_in_quadratic_extension(p: &[Scalar], field: &Field) -> Option<Vec<Scalar>> {
    let minpoly = field.minpoly().expect("quadratic extension");
    let c = scalar_to_rational(&minpoly[0]);
    let b = scalar_to_rational(&minpoly[1]);
    // (A + B t)(u + v t) = (A u - c B v) + (A v + B u - b B v) t
    let mut a_cur: BiPoly = vec![vec![BigRational::one()]]; // 1
    let mut b_cur: BiPoly = bi_zero();
    let mut real_part = bi_zero();
    let mut imag_part = bi_zero();
    for coeff in p.iter() {
        let coords = coeff.coords();
        let pk = scalar_to_rational(&coords[0]);
        let qk = scalar_to_rational(&coords[1]);
        // (pk + qk t)(A + B t) = pk A - c qk B + (pk B + qk A - b qk B) t
        let re = bi_add(&bi_scale(&a_cur, &pk), &bi_scale(&b_cur, &(-&c * &qk)));
        let im = bi_add(
            &bi_add(&bi_scale(&b_cur, &pk), &bi_scale(&a_cur, &qk)),
            &bi_scale(&b_cur, &(-&b * &qk)),
        );
        real_part = bi_add(&real_part, &re);
        imag_part = bi_add(&imag_part, &im);
        // advance (A, B) to the next power of (u + v t)
        let a_next = bi_add(
            &bi_mul_u(&a_cur),
            &bi_scale(&bi_mul_v(&b_cur), &(-c.clone())),
        );
        let b_next = bi_add(
            &bi_add(&bi_mul_v(&a_cur), &bi_mul_u(&b_cur)),
            &bi_scale(&bi_mul_v(&b_cur), &(-b.clone())),
        );
        a_cur = a_next;
        b_cur = b_next;
    }
    bi_trim(&mut real_part);
    bi_trim(&mut imag_part);
    bi_clear_content(&mut real_part);
    bi_clear_content(&mut imag_part);
    // candidates for the u coordinate of a root
    let resultant = {
        let mut r = resultant_in_v(&real_part, &imag_part)?;
        // squarefree and content-free keeps the root search cheap
        q_squarefree(&mut r);
        r
    };
    let u_candidates = rational_roots(&resultant)?;
    let t_gen = field.gen_t().expect("extension generator");
    let mut found = Vec::new();
    for u0 in u_candidates {
        let pu: QPoly = specialize_u(&real_part, &u0);
        let qu: QPoly = specialize_u(&imag_part, &u0);
        let g = q_gcd(&pu, &qu);
        let v_candidates = if g.is_empty() {
            // both vanish identically in v: cannot happen for finitely many
            // roots, bail out
            return None;
        } else {
            rational_roots(&g)?
        };
        for v0 in v_candidates {
            let cand = rational_to_scalar(field, &u0)
                .add(&t_gen.mul(&rational_to_scalar(field, &v0)));
            if up_eval(p, &cand).is_zero() && !found.contains(&cand) {
                found.push(cand);
            }
        }
    }
    Some(found)
}

fn specialize_u(p: &BiPoly, u0: &BigRational) -> QPoly {
    // evaluate each u-polynomial at u0; result indexed by v-degree
    let mut out: QPoly = p
        .iter()
        .map(|q| {
            let mut acc = BigRational::zero();
            for c in q.iter().rev() {
                acc = acc * u0 + c;
            }
            acc
        })
        .collect();
    q_trim(&mut out);
    out
}

fn q_gcd(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r0 = a.clone();
    let mut r1 = b.clone();
    q_trim(&mut r0);
    q_trim(&mut r1);
    while !r1.is_empty() {
        // remainder of r0 by r1
        let db = r1.len() - 1;
        let lead = r1[db].clone();
        let mut rem = r0.clone();
        while rem.len() >= r1.len() && !rem.is_empty() {
            let dr = rem.len() - 1;
            let k = dr - db;
            let c = &rem[dr] / &lead;
            for i in 0..=db {
                let t = &c * &r1[i];
                rem[k + i] -= t;
            }
            q_trim(&mut rem);
        }
        r0 = r1;
        r1 = rem;
    }
    if let Some(last) = r0.last().cloned() {
        for c in r0.iter_mut() {
            *c = &*c / &last;
        }
    }
    r0
}

/// Resultant of two bivariate polynomials with respect to `v`, via Bareiss
/// fraction-free elimination of the Sylvester matrix over `Q[u]`.
fn resultant_in_v(p: &BiPoly, q: &BiPoly) -> Option<QPoly> {
    let m = p.len().checked_sub(1)?;
    let n = q.len().checked_sub(1)?;
    if m == 0 && n == 0 {
        return Some(q_gcd(&p[0], &q[0]));
    }
    if m == 0 {
        return Some(p[0].clone());
    }
    if n == 0 {
        return Some(q[0].clone());
    }
    let size = m + n;
    let mut mat: Vec<Vec<QPoly>> = vec![vec![vec![]; size]; size];
    for row in 0..n {
        for (k, entry) in p.iter().enumerate() {
            mat[row][row + (m - k)] = entry.clone();
        }
    }
    for row in 0..m {
        for (k, entry) in q.iter().enumerate() {
            mat[n + row][row + (n - k)] = entry.clone();
        }
    }
    // Bareiss
    let mut sign = 1i64;
    let mut prev: QPoly = vec![BigRational::one()];
    for k in 0..size - 1 {
        if mat[k][k].is_empty() {
            let swap = (k + 1..size).find(|&r| !mat[r][k].is_empty())?;
            mat.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t1 = q_mul(&mat[i][j], &mat[k][k]);
                let t2 = q_mul(&mat[i][k], &mat[k][j]);
                let num = q_sub(&t1, &t2);
                mat[i][j] = if num.is_empty() {
                    vec![]
                } else {
                    q_exact_div(&num, &prev)
                };
            }
        }
        prev = mat[k][k].clone();
        for i in k + 1..size {
            mat[i][k] = vec![];
        }
    }
    let mut det = mat[size - 1][size - 1].clone();
    if sign < 0 {
        det = q_sub(&vec![], &det);
    }
    Some(det)
}
