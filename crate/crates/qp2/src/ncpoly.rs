//! Sparse noncommutative polynomials on a fixed ordered list of named
//! generators, plus the linear algebra on spans of homogeneous elements that
//! the rest of the workbench is built on.
//!
//! Words are ordered degree-lexicographically with generator precedence
//! `x1 < x2 < x3`; reduced bases and normal forms are deterministic
//! consequences of this order.

use crate::field::{Field, Scalar};
use crate::linalg::{rref, Matrix};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NcError {
    #[error("operands come from different generator contexts")]
    ContextMismatch,
    #[error("input is not homogeneous of a single degree")]
    InhomogeneousInput,
    #[error("matrix size does not match the generator count")]
    DimensionMismatch,
    #[error("tensor-factor maps require a homogeneous degree-2 element")]
    WrongDegreeForMode,
    #[error("invalid generator context: {0}")]
    BadContext(String),
}

/// A word in the free monoid on the generators, ordered by degree, then
/// lexicographically.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn single(i: u8) -> Word {
        Word(vec![i])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Position of the first occurrence of `sub` as a factor, if any.
    pub fn find_subword(&self, sub: &Word) -> Option<usize> {
        if sub.0.is_empty() || sub.0.len() > self.0.len() {
            return None;
        }
        self.0.windows(sub.0.len()).position(|w| w == sub.0)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, PartialEq, Eq)]
struct CtxRepr {
    names: Vec<String>,
    field: Field,
}

/// Generator context: the ordered generator names and the coefficient field.
#[derive(Clone, Debug)]
pub struct GenCtx(Arc<CtxRepr>);

impl PartialEq for GenCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for GenCtx {}

impl GenCtx {
    pub fn new(field: &Field, names: &[&str]) -> Result<GenCtx, NcError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        if names.is_empty() || names.len() > 8 {
            return Err(NcError::BadContext(format!(
                "{} generators unsupported",
                names.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(NcError::BadContext(format!("bad generator name {:?}", n)));
            }
            if n == "t" {
                return Err(NcError::BadContext(
                    "generator name `t` collides with the extension literal".into(),
                ));
            }
            if n.chars().next().unwrap().is_ascii_digit() {
                return Err(NcError::BadContext(format!("bad generator name {:?}", n)));
            }
            if names[..i].contains(n) {
                return Err(NcError::BadContext(format!("duplicate generator {:?}", n)));
            }
        }
        Ok(GenCtx(Arc::new(CtxRepr {
            names,
            field: field.clone(),
        })))
    }

    pub fn field(&self) -> &Field {
        &self.0.field
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn ngens(&self) -> usize {
        self.0.names.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<u8> {
        self.0.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    /// All words of the given degree, in ascending order.
    pub fn words_of_degree(&self, d: usize) -> Vec<Word> {
        let n = self.ngens() as u8;
        let mut out = vec![Word::empty()];
        for _ in 0..d {
            let mut next = Vec::with_capacity(out.len() * n as usize);
            for w in &out {
                for g in 0..n {
                    let mut v = w.0.clone();
                    v.push(g);
                    next.push(Word(v));
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// Sparse noncommutative polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NcPoly {
    ctx: GenCtx,
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero(ctx: &GenCtx) -> NcPoly {
        NcPoly {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: &GenCtx) -> NcPoly {
        NcPoly::constant(ctx, ctx.field().one())
    }

    pub fn constant(ctx: &GenCtx, c: Scalar) -> NcPoly {
        let mut p = NcPoly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Word::empty(), c);
        }
        p
    }

    pub fn generator(ctx: &GenCtx, i: u8) -> NcPoly {
        assert!((i as usize) < ctx.ngens());
        let mut p = NcPoly::zero(ctx);
        p.terms.insert(Word::single(i), ctx.field().one());
        p
    }

    pub fn monomial(ctx: &GenCtx, word: Word, coeff: Scalar) -> NcPoly {
        let mut p = NcPoly::zero(ctx);
        if !coeff.is_zero() {
            p.terms.insert(word, coeff);
        }
        p
    }

    pub fn ctx(&self) -> &GenCtx {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.ctx.field().zero())
    }

    /// Largest word, by the degree-lexicographic order.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.terms.values().next_back()
    }

    /// The common degree of all terms, or an error for mixed degrees.
    /// The zero polynomial reports degree 0.
    pub fn homogeneous_degree(&self) -> Result<usize, NcError> {
        let mut deg = None;
        for w in self.terms.keys() {
            match deg {
                None => deg = Some(w.degree()),
                Some(d) if d == w.degree() => {}
                _ => return Err(NcError::InhomogeneousInput),
            }
        }
        Ok(deg.unwrap_or(0))
    }

    fn assert_ctx(&self, other: &NcPoly) {
        assert!(self.ctx == other.ctx, "mixed generator contexts");
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        self.assert_ctx(other);
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            match terms.get_mut(w) {
                Some(existing) => {
                    let s = existing.add(c);
                    if s.is_zero() {
                        terms.remove(w);
                    } else {
                        *existing = s;
                    }
                }
                None => {
                    terms.insert(w.clone(), c.clone());
                }
            }
        }
        NcPoly {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(&self.ctx);
        }
        NcPoly {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.clone(), x.mul(c)))
                .collect(),
        }
    }

    /// Noncommutative product: words concatenate.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        self.assert_ctx(other);
        let mut out = NcPoly::zero(&self.ctx);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let w = w1.concat(w2);
                let c = c1.mul(c2);
                match out.terms.get_mut(&w) {
                    Some(existing) => {
                        let s = existing.add(&c);
                        if s.is_zero() {
                            out.terms.remove(&w);
                        } else {
                            *existing = s;
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            out.terms.insert(w, c);
                        }
                    }
                }
            }
        }
        out
    }

    /// Checked addition across possibly-foreign contexts (spec surface).
    pub fn checked_add(&self, other: &NcPoly) -> Result<NcPoly, NcError> {
        if self.ctx != other.ctx {
            return Err(NcError::ContextMismatch);
        }
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &NcPoly) -> Result<NcPoly, NcError> {
        if self.ctx != other.ctx {
            return Err(NcError::ContextMismatch);
        }
        Ok(self.mul(other))
    }

    /// Apply an invertible linear map on generators, in one of two modes.
    pub fn apply_linear_map(&self, m: &Matrix, mode: MapMode) -> Result<NcPoly, NcError> {
        let n = self.ctx.ngens();
        if m.nrows() != n || m.ncols() != n {
            return Err(NcError::DimensionMismatch);
        }
        match mode {
            MapMode::All => {
                // x_i -> sum_j m[j][i] x_j on every tensor factor
                let images: Vec<NcPoly> = (0..n).map(|i| self.gen_image(m, i)).collect();
                let mut out = NcPoly::zero(&self.ctx);
                for (w, c) in &self.terms {
                    let mut prod = NcPoly::constant(&self.ctx, c.clone());
                    for &letter in &w.0 {
                        prod = prod.mul(&images[letter as usize]);
                    }
                    out = out.add(&prod);
                }
                Ok(out)
            }
            MapMode::SecondTensorFactor => {
                if self.homogeneous_degree()? != 2 && !self.is_zero() {
                    return Err(NcError::WrongDegreeForMode);
                }
                let images: Vec<NcPoly> = (0..n).map(|i| self.gen_image(m, i)).collect();
                let mut out = NcPoly::zero(&self.ctx);
                for (w, c) in &self.terms {
                    let left = NcPoly::monomial(&self.ctx, Word::single(w.0[0]), c.clone());
                    out = out.add(&left.mul(&images[w.0[1] as usize]));
                }
                Ok(out)
            }
        }
    }

    fn gen_image(&self, m: &Matrix, i: usize) -> NcPoly {
        let mut img = NcPoly::zero(&self.ctx);
        for j in 0..self.ctx.ngens() {
            let c = m.at(j, i);
            if !c.is_zero() {
                img = img.add(&NcPoly::monomial(
                    &self.ctx,
                    Word::single(j as u8),
                    c.clone(),
                ));
            }
        }
        img
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapMode {
    /// Substitute on every tensor factor (algebra map on generators).
    All,
    /// `id (x) phi` on a homogeneous degree-2 element.
    SecondTensorFactor,
}

/// Row-reduced echelon basis of the span of homogeneous elements of a common
/// degree, together with its dimension. Zero elements are ignored; mixing
/// degrees is an error.
pub fn span_basis(elems: &[NcPoly]) -> Result<Vec<NcPoly>, NcError> {
    let nonzero: Vec<&NcPoly> = elems.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(Vec::new());
    }
    let ctx = nonzero[0].ctx().clone();
    let deg = nonzero[0].homogeneous_degree()?;
    for p in &nonzero {
        if *p.ctx() != ctx {
            return Err(NcError::ContextMismatch);
        }
        if p.homogeneous_degree()? != deg {
            return Err(NcError::InhomogeneousInput);
        }
    }
    // columns: all appearing words, largest first so the pivot of each row is
    // its leading word
    let mut words: Vec<Word> = Vec::new();
    for p in &nonzero {
        for w in p.terms.keys() {
            if !words.contains(w) {
                words.push(w.clone());
            }
        }
    }
    words.sort();
    words.reverse();
    let field = ctx.field().clone();
    let mut rows: Vec<Vec<Scalar>> = nonzero
        .iter()
        .map(|p| words.iter().map(|w| p.coeff(w)).collect())
        .collect();
    rref(&field, &mut rows);
    let mut basis = Vec::new();
    for row in rows {
        if row.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut p = NcPoly::zero(&ctx);
        for (w, c) in words.iter().zip(row) {
            if !c.is_zero() {
                p.terms.insert(w.clone(), c);
            }
        }
        basis.push(p);
    }
    Ok(basis)
}

/// Whether two families of homogeneous elements span the same subspace.
pub fn spans_equal(a: &[NcPoly], b: &[NcPoly]) -> Result<bool, NcError> {
    let ba = span_basis(a)?;
    let bb = span_basis(b)?;
    Ok(ba == bb)
}

impl fmt::Display for NcPoly {
    /// Canonical text: terms in descending degree-lexicographic order,
    /// `coeff*g1*g2*...` joined by ` + ` / ` - `; runs of one generator are
    /// compressed with `^`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let mut first = true;
        for (w, c) in self.terms.iter().rev() {
            let (neg, mag) = coeff_display(c);
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
            let word_str = render_word(&self.ctx, w);
            match (mag.as_str(), word_str.is_empty()) {
                ("1", false) => write!(out, "{}", word_str)?,
                (_, false) => write!(out, "{}*{}", mag, word_str)?,
                (_, true) => write!(out, "{}", mag)?,
            }
        }
        Ok(())
    }
}

fn render_word(ctx: &GenCtx, w: &Word) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < w.0.len() {
        let g = w.0[i];
        let mut run = 1;
        while i + run < w.0.len() && w.0[i + run] == g {
            run += 1;
        }
        let name = &ctx.names()[g as usize];
        if run == 1 {
            parts.push(name.clone());
        } else {
            parts.push(format!("{}^{}", name, run));
        }
        i += run;
    }
    parts.join("*")
}

/// Sign-split rendering of a coefficient: `(is_negative, magnitude)`. The
/// magnitude is parenthesised when it is a sum, so it stays a single factor
/// when re-parsed.
pub(crate) fn coeff_display(c: &Scalar) -> (bool, String) {
    let s = c.to_string();
    let (neg, body) = if let Some(rest) = s.strip_prefix('-') {
        let flipped = c.neg().to_string();
        if flipped.starts_with('-') {
            (false, s.clone())
        } else {
            let _ = rest;
            (true, flipped)
        }
    } else {
        (false, s)
    };
    let needs_parens = body.contains(' ');
    (neg, if needs_parens { format!("({})", body) } else { body })
}
