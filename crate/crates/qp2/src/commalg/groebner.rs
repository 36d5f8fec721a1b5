//! Buchberger completion for ideals in `k[x, y, z]`, parametrised by the
//! monomial order. The public reduced basis uses graded reverse
//! lexicographic order; lex order drives elimination in the solver.

use super::{cmp_grevlex, cmp_lex, CommPoly, Exponents};
use crate::field::Field;
use std::cmp::Ordering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    /// Lexicographic with `x > y > z`; the elimination ideal in `z` (and in
    /// `y, z`) can be read off a lex basis.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Exponents, b: &Exponents) -> Ordering {
        match self {
            MonomialOrder::GrevLex => cmp_grevlex(a, b),
            MonomialOrder::Lex => cmp_lex(a, b),
        }
    }
}

fn leading_term(p: &CommPoly, order: MonomialOrder) -> Option<Exponents> {
    p.terms()
        .map(|(e, _)| *e)
        .max_by(|a, b| order.cmp(a, b))
}

fn divides(a: &Exponents, b: &Exponents) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]
}

fn quotient_exp(b: &Exponents, a: &Exponents) -> Exponents {
    [b[0] - a[0], b[1] - a[1], b[2] - a[2]]
}

fn lcm_exp(a: &Exponents, b: &Exponents) -> Exponents {
    [a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])]
}

/// Full normal form of `p` modulo `basis` under `order`.
pub fn normal_form_comm(p: &CommPoly, basis: &[CommPoly], order: MonomialOrder) -> CommPoly {
    let field = p.field().clone();
    let mut rem = CommPoly::zero(&field);
    let mut work = p.clone();
    let leads: Vec<(Exponents, CommPoly)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (leading_term(g, order).unwrap(), g.clone()))
        .collect();
    while !work.is_zero() {
        let lt = leading_term(&work, order).unwrap();
        let lc = work.coeff(&lt);
        let mut reduced = false;
        for (glt, g) in &leads {
            if divides(glt, &lt) {
                let shift = quotient_exp(&lt, glt);
                let glc = g.coeff(glt);
                let factor = lc.try_div(&glc).expect("nonzero leading coefficient");
                let sub = g
                    .mul(&CommPoly::monomial(&field, shift, field.one()))
                    .scale(&factor);
                work = work.sub(&sub);
                reduced = true;
                break;
            }
        }
        if !reduced {
            rem = rem.add(&CommPoly::monomial(&field, lt, lc.clone()));
            work = work.sub(&CommPoly::monomial(&field, lt, lc));
        }
    }
    rem
}

/// Reduced, monic, deterministically ordered Groebner basis.
pub fn comm_groebner(gens: &[CommPoly], order: MonomialOrder) -> Vec<CommPoly> {
    let nonzero: Vec<CommPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let Some(first) = nonzero.first() else {
        return Vec::new();
    };
    let field: Field = first.field().clone();
    let mut basis = nonzero;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let gi = basis[i].clone();
        let gj = basis[j].clone();
        let li = leading_term(&gi, order).unwrap();
        let lj = leading_term(&gj, order).unwrap();
        // coprime leading terms always reduce to zero
        if (0..3).all(|k| li[k] == 0 || lj[k] == 0) {
            continue;
        }
        let l = lcm_exp(&li, &lj);
        let spoly = {
            let ai = CommPoly::monomial(&field, quotient_exp(&l, &li), field.one());
            let aj = CommPoly::monomial(&field, quotient_exp(&l, &lj), field.one());
            let ci = gi.coeff(&li);
            let cj = gj.coeff(&lj);
            gi.mul(&ai).scale(&ci.inv()).sub(&gj.mul(&aj).scale(&cj.inv()))
        };
        let rem = normal_form_comm(&spoly, &basis, order);
        if !rem.is_zero() {
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(rem);
        }
    }
    // minimalize: drop elements whose lead is divisible by another lead
    let mut keep: Vec<CommPoly> = Vec::new();
    'outer: for (i, g) in basis.iter().enumerate() {
        let lg = leading_term(g, order).unwrap();
        for (j, h) in basis.iter().enumerate() {
            if i == j {
                continue;
            }
            let lh = leading_term(h, order).unwrap();
            if divides(&lh, &lg) && (lh != lg || j < i) {
                continue 'outer;
            }
        }
        keep.push(g.clone());
    }
    // tail-reduce and make monic
    let mut reduced: Vec<CommPoly> = Vec::new();
    for i in 0..keep.len() {
        let others: Vec<CommPoly> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = normal_form_comm(&keep[i], &others, order);
        let lt = leading_term(&r, order).unwrap();
        let lc = r.coeff(&lt);
        reduced.push(r.scale(&lc.inv()));
    }
    reduced.sort_by(|a, b| {
        order.cmp(
            &leading_term(a, order).unwrap(),
            &leading_term(b, order).unwrap(),
        )
    });
    reduced
}

/// Leading exponents of a basis under an order (for 0-dimensionality tests).
pub(crate) fn leading_exponents(basis: &[CommPoly], order: MonomialOrder) -> Vec<Exponents> {
    basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| leading_term(g, order).unwrap())
        .collect()
}
