//! Exact scalar arithmetic over the rationals, prime fields and simple
//! algebraic extensions of either.
//!
//! A [`Field`] is a cheap-to-clone descriptor (characteristic plus optional
//! minimal polynomial); a [`Scalar`] is an element of the field it was created
//! by. Two descriptors with the same characteristic and minimal polynomial are
//! interchangeable. Only one extension step is supported: extensions are
//! always taken over the prime field, never over another extension.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is neither zero nor prime")]
    NonPrimeCharacteristic(u64),
    #[error("minimal polynomial must be monic of degree >= 2")]
    BadMinpoly,
    #[error("minimal polynomial has root {0} in the prime field")]
    ReducibleMinpoly(String),
    #[error("cannot verify irreducibility of a degree-{0} minimal polynomial; build with `trusted` to accept")]
    UnverifiableMinpoly(usize),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("field already carries an extension; towers are not supported")]
    TowerUnsupported,
    #[error("characteristic is too large for exact residue arithmetic")]
    CharacteristicTooLarge,
}

/// Element of the prime field: an exact rational in characteristic zero or a
/// residue `0..p` in characteristic `p`.
#[derive(Clone, PartialEq, Eq, Debug)]
enum Base {
    Rat(BigRational),
    Mod(u64),
}

#[derive(Debug, PartialEq, Eq)]
struct FieldRepr {
    characteristic: u64,
    /// Tail coefficients `c_0..c_{d-1}` of the monic minimal polynomial
    /// `t^d + c_{d-1} t^{d-1} + ... + c_0`; empty when there is no extension.
    minpoly_tail: Vec<Base>,
}

/// Descriptor of the coefficient field. Clones share the representation.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldRepr>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Field {}

const MAX_CHARACTERISTIC: u64 = 1 << 31;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// The field of rational numbers.
    pub fn rationals() -> Field {
        Field(Arc::new(FieldRepr {
            characteristic: 0,
            minpoly_tail: Vec::new(),
        }))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p >= MAX_CHARACTERISTIC {
            return Err(FieldError::CharacteristicTooLarge);
        }
        if !is_prime(p) {
            return Err(FieldError::NonPrimeCharacteristic(p));
        }
        Ok(Field(Arc::new(FieldRepr {
            characteristic: p,
            minpoly_tail: Vec::new(),
        })))
    }

    /// Prime field when `p > 0`, rationals when `p == 0`.
    pub fn with_characteristic(p: u64) -> Result<Field, FieldError> {
        if p == 0 {
            Ok(Field::rationals())
        } else {
            Field::prime(p)
        }
    }

    /// Adjoin a root of the monic polynomial whose coefficients (constant
    /// first, including the leading 1) are given as scalars of `self`.
    /// `self` must be a prime field. Degrees 2 and 3 are checked for roots in
    /// the prime field; higher degrees are accepted only with `trusted`.
    pub fn adjoin_root(&self, minpoly: &[Scalar], trusted: bool) -> Result<Field, FieldError> {
        if self.extension_degree() != 1 {
            return Err(FieldError::TowerUnsupported);
        }
        if minpoly.len() < 3 {
            return Err(FieldError::BadMinpoly);
        }
        let coeffs: Vec<Base> = minpoly
            .iter()
            .map(|s| {
                if s.field != *self {
                    return Err(FieldError::FieldMismatch);
                }
                Ok(s.coeffs[0].clone())
            })
            .collect::<Result<_, _>>()?;
        let lead = coeffs.last().unwrap();
        if !self.b_is_one(lead) {
            return Err(FieldError::BadMinpoly);
        }
        let degree = coeffs.len() - 1;
        if degree <= 3 {
            match self.decide_prime_root(&coeffs, degree) {
                Ok(Some(root)) => {
                    return Err(FieldError::ReducibleMinpoly(self.b_to_string(&root)))
                }
                Ok(None) => {}
                Err(_) if trusted => {}
                Err(e) => return Err(e),
            }
        } else if !trusted {
            return Err(FieldError::UnverifiableMinpoly(degree));
        }
        Ok(Field(Arc::new(FieldRepr {
            characteristic: self.0.characteristic,
            minpoly_tail: coeffs[..degree].to_vec(),
        })))
    }

    /// Adjoin a root of an irreducible monic quadratic `z^2 + b z + c` over
    /// this prime field, returning the extension together with the image of
    /// the root. In characteristic 0 the extension is normalized to
    /// `t^2 - d` with `d` a squarefree integer, which keeps all subsequent
    /// arithmetic small; odd characteristic normalizes to `t^2 - d` with `d`
    /// the discriminant.
    pub fn adjoin_quadratic(&self, c: &Scalar, b: &Scalar) -> Result<(Field, Scalar), FieldError> {
        if self.has_extension() {
            return Err(FieldError::TowerUnsupported);
        }
        if c.field != *self || b.field != *self {
            return Err(FieldError::FieldMismatch);
        }
        if self.characteristic() == 2 {
            let ext = self.adjoin_root(&[c.clone(), b.clone(), self.one()], false)?;
            let root = ext.gen_t()?;
            return Ok((ext, root));
        }
        let four = self.scalar_from_i64(4);
        let disc = b.mul(b).sub(&four.mul(c));
        // write disc = r^2 * d with d as small as factoring allows
        let (d, r) = self.normalize_square_part(&disc);
        let ext = self.adjoin_root(&[d.neg(), self.zero(), self.one()], false)?;
        let sqrt_disc = ext.gen_t()?.mul(&ext.embed(&r)?);
        let half = self.scalar_from_i64(2).try_inv()?;
        let root = ext
            .embed(&b.neg())?
            .add(&sqrt_disc)
            .mul(&ext.embed(&half)?);
        Ok((ext, root))
    }

    /// Decompose `a = r^2 * d` pulling out the largest square the factoring
    /// budget finds; in positive characteristic returns `(a, 1)`.
    fn normalize_square_part(&self, a: &Scalar) -> (Scalar, Scalar) {
        if self.characteristic() != 0 {
            return (a.clone(), self.one());
        }
        let Some(rat) = a.to_rational() else {
            return (a.clone(), self.one());
        };
        // a = num/den = (1/den)^2 * (num * den)
        let n = rat.numer() * rat.denom();
        let negative = n.sign() == num_bigint::Sign::Minus;
        let mag = n.magnitude().clone();
        let Ok(mut m) = u64::try_from(mag.clone()) else {
            return (a.clone(), self.one());
        };
        let mut square = BigInt::one();
        let mut p = 2u64;
        let mut steps = 0u64;
        while p.checked_mul(p).map(|q| q <= m).unwrap_or(false) {
            steps += 1;
            if steps > 1_000_000 {
                break;
            }
            while m % (p * p) == 0 {
                m /= p * p;
                square *= BigInt::from(p);
            }
            p += 1;
        }
        let mut d_big = BigInt::from(m);
        if negative {
            d_big = -d_big;
        }
        let d = self.scalar_from_bigint(&d_big);
        let r = self
            .scalar_from_bigint(&square)
            .try_div(&self.scalar_from_bigint(&BigInt::from(rat.denom().clone())))
            .expect("nonzero denominator");
        (d, r)
    }

    pub fn characteristic(&self) -> u64 {
        self.0.characteristic
    }

    /// Degree of the field over its prime field (1 when no extension).
    pub fn extension_degree(&self) -> usize {
        self.0.minpoly_tail.len().max(1)
    }

    pub fn has_extension(&self) -> bool {
        !self.0.minpoly_tail.is_empty()
    }

    /// The prime field underlying this field.
    pub fn prime_field(&self) -> Field {
        if !self.has_extension() {
            self.clone()
        } else {
            Field(Arc::new(FieldRepr {
                characteristic: self.0.characteristic,
                minpoly_tail: Vec::new(),
            }))
        }
    }

    /// Monic minimal polynomial coefficients (constant first, leading 1
    /// included), as scalars of the prime field. `None` without extension.
    pub fn minpoly(&self) -> Option<Vec<Scalar>> {
        if !self.has_extension() {
            return None;
        }
        let prime = self.prime_field();
        let mut out: Vec<Scalar> = self
            .0
            .minpoly_tail
            .iter()
            .map(|c| Scalar {
                field: prime.clone(),
                coeffs: vec![c.clone()],
            })
            .collect();
        out.push(prime.one());
        Some(out)
    }

    // ----- scalar constructors -----

    pub fn zero(&self) -> Scalar {
        Scalar {
            field: self.clone(),
            coeffs: vec![self.b_zero(); self.extension_degree()],
        }
    }

    pub fn one(&self) -> Scalar {
        self.scalar_from_i64(1)
    }

    pub fn scalar_from_i64(&self, n: i64) -> Scalar {
        let mut coeffs = vec![self.b_zero(); self.extension_degree()];
        coeffs[0] = self.b_from_i64(n);
        Scalar {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn scalar_from_bigint(&self, n: &BigInt) -> Scalar {
        let mut coeffs = vec![self.b_zero(); self.extension_degree()];
        coeffs[0] = match self.0.characteristic {
            0 => Base::Rat(BigRational::from(n.clone())),
            p => {
                let r = num_integer::Integer::mod_floor(n, &BigInt::from(p));
                Base::Mod(u64::try_from(r).expect("reduced residue fits"))
            }
        };
        Scalar {
            field: self.clone(),
            coeffs,
        }
    }

    /// Exact fraction `num/den`; in characteristic p the denominator is
    /// inverted mod p.
    pub fn scalar_from_fraction(&self, num: i64, den: i64) -> Result<Scalar, FieldError> {
        if den == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.scalar_from_i64(num);
        let d = self.scalar_from_i64(den);
        n.try_div(&d)
    }

    /// The extension generator `t`. Errors when the field has no extension.
    pub fn gen_t(&self) -> Result<Scalar, FieldError> {
        if !self.has_extension() {
            return Err(FieldError::BadMinpoly);
        }
        let mut coeffs = vec![self.b_zero(); self.extension_degree()];
        coeffs[1] = self.b_one();
        Ok(Scalar {
            field: self.clone(),
            coeffs,
        })
    }

    /// Scalar from coordinates in the power basis `1, t, t^2, ...` given as
    /// prime-field scalars.
    pub fn scalar_from_coords(&self, coords: &[Scalar]) -> Result<Scalar, FieldError> {
        let d = self.extension_degree();
        if coords.len() > d {
            return Err(FieldError::BadMinpoly);
        }
        let prime = self.prime_field();
        let mut coeffs = vec![self.b_zero(); d];
        for (i, c) in coords.iter().enumerate() {
            if c.field != prime {
                return Err(FieldError::FieldMismatch);
            }
            coeffs[i] = c.coeffs[0].clone();
        }
        Ok(Scalar {
            field: self.clone(),
            coeffs,
        })
    }

    /// Re-express a prime-field scalar inside this (possibly extended) field.
    pub fn embed(&self, s: &Scalar) -> Result<Scalar, FieldError> {
        if s.field == *self {
            return Ok(s.clone());
        }
        if s.field != self.prime_field() {
            return Err(FieldError::FieldMismatch);
        }
        let mut coeffs = vec![self.b_zero(); self.extension_degree()];
        coeffs[0] = s.coeffs[0].clone();
        Ok(Scalar {
            field: self.clone(),
            coeffs,
        })
    }

    /// All field elements, for small finite fields only.
    pub fn enumerate(&self) -> Option<Vec<Scalar>> {
        let p = self.characteristic();
        if p == 0 {
            return None;
        }
        let d = self.extension_degree();
        let total = (p as u128).checked_pow(d as u32)?;
        if total > 1 << 20 {
            return None;
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![0u64; d];
        loop {
            out.push(Scalar {
                field: self.clone(),
                coeffs: idx.iter().map(|&r| Base::Mod(r)).collect(),
            });
            let mut k = 0;
            loop {
                if k == d {
                    return Some(out);
                }
                idx[k] += 1;
                if idx[k] < p {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    // ----- base-field arithmetic -----

    fn b_zero(&self) -> Base {
        match self.0.characteristic {
            0 => Base::Rat(BigRational::zero()),
            _ => Base::Mod(0),
        }
    }

    fn b_one(&self) -> Base {
        self.b_from_i64(1)
    }

    fn b_from_i64(&self, n: i64) -> Base {
        match self.0.characteristic {
            0 => Base::Rat(BigRational::from(BigInt::from(n))),
            p => {
                let r = n.rem_euclid(p as i64) as u64;
                Base::Mod(r)
            }
        }
    }

    fn b_is_zero(&self, a: &Base) -> bool {
        match a {
            Base::Rat(r) => r.is_zero(),
            Base::Mod(r) => *r == 0,
        }
    }

    fn b_is_one(&self, a: &Base) -> bool {
        match a {
            Base::Rat(r) => r.is_one(),
            Base::Mod(r) => *r == 1,
        }
    }

    fn b_add(&self, a: &Base, b: &Base) -> Base {
        match (a, b) {
            (Base::Rat(x), Base::Rat(y)) => Base::Rat(x + y),
            (Base::Mod(x), Base::Mod(y)) => {
                let p = self.0.characteristic;
                Base::Mod((x + y) % p)
            }
            _ => unreachable!("mixed base representations"),
        }
    }

    fn b_sub(&self, a: &Base, b: &Base) -> Base {
        self.b_add(a, &self.b_neg(b))
    }

    fn b_neg(&self, a: &Base) -> Base {
        match a {
            Base::Rat(x) => Base::Rat(-x),
            Base::Mod(x) => {
                let p = self.0.characteristic;
                Base::Mod(if *x == 0 { 0 } else { p - x })
            }
        }
    }

    fn b_mul(&self, a: &Base, b: &Base) -> Base {
        match (a, b) {
            (Base::Rat(x), Base::Rat(y)) => Base::Rat(x * y),
            (Base::Mod(x), Base::Mod(y)) => {
                let p = self.0.characteristic as u128;
                Base::Mod(((*x as u128 * *y as u128) % p) as u64)
            }
            _ => unreachable!("mixed base representations"),
        }
    }

    fn b_inv(&self, a: &Base) -> Result<Base, FieldError> {
        match a {
            Base::Rat(x) => {
                if x.is_zero() {
                    Err(FieldError::DivisionByZero)
                } else {
                    Ok(Base::Rat(x.recip()))
                }
            }
            Base::Mod(x) => {
                if *x == 0 {
                    return Err(FieldError::DivisionByZero);
                }
                let p = self.0.characteristic as i128;
                // extended Euclid
                let (mut r0, mut r1) = (p, *x as i128);
                let (mut s0, mut s1) = (0i128, 1i128);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (s0, s1) = (s1, s0 - q * s1);
                }
                debug_assert_eq!(r0, 1);
                Ok(Base::Mod(s0.rem_euclid(p) as u64))
            }
        }
    }

    fn b_to_string(&self, a: &Base) -> String {
        match a {
            Base::Rat(r) => format!("{}", r),
            Base::Mod(r) => format!("{}", r),
        }
    }

    /// Root of a univariate polynomial (coefficients constant-first) in the
    /// prime field, if one exists. Complete for degrees 2 and 3: quadratics
    /// use a discriminant square test, cubics use the rational root theorem.
    fn decide_prime_root(&self, coeffs: &[Base], degree: usize) -> Result<Option<Base>, FieldError> {
        match self.0.characteristic {
            0 => {
                let rats: Vec<BigRational> = coeffs
                    .iter()
                    .map(|c| match c {
                        Base::Rat(r) => r.clone(),
                        Base::Mod(_) => unreachable!(),
                    })
                    .collect();
                if degree == 2 {
                    // monic z^2 + b z + c has a rational root iff the
                    // discriminant is a rational square
                    let b = &rats[1];
                    let c = &rats[0];
                    let four = BigRational::from(BigInt::from(4));
                    let disc = b * b - four * c;
                    return Ok(rational_sqrt(&disc).map(|s| {
                        let two = BigRational::from(BigInt::from(2));
                        Base::Rat((s - b) / two)
                    }));
                }
                match rational_roots(&rats) {
                    Some(roots) => Ok(roots.into_iter().next().map(Base::Rat)),
                    None => Err(FieldError::UnverifiableMinpoly(degree)),
                }
            }
            p => {
                for r in 0..p {
                    let x = Base::Mod(r);
                    let mut acc = self.b_zero();
                    for c in coeffs.iter().rev() {
                        acc = self.b_add(&self.b_mul(&acc, &x), c);
                    }
                    if self.b_is_zero(&acc) {
                        return Ok(Some(x));
                    }
                }
                Ok(None)
            }
        }
    }

    // ----- extension arithmetic on coefficient vectors -----

    fn vec_reduce(&self, mut v: Vec<Base>) -> Vec<Base> {
        let d = self.extension_degree();
        // reduce degrees >= d using t^d = -(tail)
        while v.len() > d {
            let top = v.pop().unwrap();
            if self.b_is_zero(&top) {
                continue;
            }
            let k = v.len() - d;
            for (i, c) in self.0.minpoly_tail.iter().enumerate() {
                let delta = self.b_mul(&top, c);
                v[k + i] = self.b_sub(&v[k + i], &delta);
            }
        }
        v.resize(d, self.b_zero());
        v
    }

    fn vec_mul(&self, a: &[Base], b: &[Base]) -> Vec<Base> {
        let mut prod = vec![self.b_zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if self.b_is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if self.b_is_zero(y) {
                    continue;
                }
                let t = self.b_mul(x, y);
                prod[i + j] = self.b_add(&prod[i + j], &t);
            }
        }
        self.vec_reduce(prod)
    }

    /// Inverse in the extension via extended Euclid against the minimal
    /// polynomial.
    fn vec_inv(&self, a: &[Base]) -> Result<Vec<Base>, FieldError> {
        let d = self.extension_degree();
        if d == 1 {
            return Ok(vec![self.b_inv(&a[0])?]);
        }
        // full minimal polynomial, constant first
        let mut m: Vec<Base> = self.0.minpoly_tail.clone();
        m.push(self.b_one());
        let mut r0 = m;
        let mut r1: Vec<Base> = a.to_vec();
        trim(self, &mut r1);
        if r1.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        let mut s0: Vec<Base> = vec![];
        let mut s1: Vec<Base> = vec![self.b_one()];
        while !r1.is_empty() {
            let (q, r) = self.poly_divmod(&r0, &r1);
            let qs1 = self.poly_mul_raw(&q, &s1);
            let s2 = self.poly_sub(&s0, &qs1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 = gcd, a unit since the minimal polynomial is irreducible
        debug_assert_eq!(r0.len(), 1);
        let lead_inv = self.b_inv(&r0[0])?;
        let inv: Vec<Base> = s0.iter().map(|c| self.b_mul(c, &lead_inv)).collect();
        Ok(self.vec_reduce(inv))
    }

    fn poly_mul_raw(&self, a: &[Base], b: &[Base]) -> Vec<Base> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut prod = vec![self.b_zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                let t = self.b_mul(x, y);
                prod[i + j] = self.b_add(&prod[i + j], &t);
            }
        }
        let mut prod = prod;
        trim(self, &mut prod);
        prod
    }

    fn poly_sub(&self, a: &[Base], b: &[Base]) -> Vec<Base> {
        let n = a.len().max(b.len());
        let mut out = vec![self.b_zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] = x.clone();
        }
        for (i, y) in b.iter().enumerate() {
            out[i] = self.b_sub(&out[i], y);
        }
        trim(self, &mut out);
        out
    }

    fn poly_divmod(&self, a: &[Base], b: &[Base]) -> (Vec<Base>, Vec<Base>) {
        let mut rem = a.to_vec();
        trim(self, &mut rem);
        let bl = b.len();
        assert!(bl > 0, "division by zero polynomial");
        let lead_inv = self.b_inv(&b[bl - 1]).expect("nonzero leading coefficient");
        if rem.len() < bl {
            return (vec![], rem);
        }
        let mut quot = vec![self.b_zero(); rem.len() - bl + 1];
        while rem.len() >= bl {
            let k = rem.len() - bl;
            let c = self.b_mul(rem.last().unwrap(), &lead_inv);
            quot[k] = c.clone();
            for (i, bc) in b.iter().enumerate() {
                let t = self.b_mul(&c, bc);
                rem[k + i] = self.b_sub(&rem[k + i], &t);
            }
            trim(self, &mut rem);
        }
        (quot, rem)
    }
}

fn trim(field: &Field, v: &mut Vec<Base>) {
    while let Some(last) = v.last() {
        if field.b_is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
}

/// All rational roots of a rational-coefficient polynomial (constant first),
/// or `None` when the factoring budget is exceeded. Uses the rational root
/// theorem after clearing denominators and content, with the Cauchy bound
/// and the `f(1)/f(-1)` divisibility filters pruning the candidate set.
pub(crate) fn rational_roots(coeffs: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut c = coeffs.to_vec();
    while c.last().map(|x| x.is_zero()).unwrap_or(false) {
        c.pop();
    }
    if c.len() <= 1 {
        return Some(vec![]);
    }
    let mut roots = Vec::new();
    // strip powers of the variable (root 0)
    let mut start = 0;
    while start < c.len() && c[start].is_zero() {
        start += 1;
    }
    if start > 0 {
        roots.push(BigRational::zero());
        c.drain(..start);
    }
    if c.len() <= 1 {
        return Some(roots);
    }
    if c.len() == 2 {
        roots.push(-&c[0] / &c[1]);
        return Some(roots);
    }
    // clear denominators and content
    let mut denom_lcm = BigInt::one();
    for x in &c {
        denom_lcm = num_integer::lcm(denom_lcm, x.denom().clone());
    }
    let mut ints: Vec<BigInt> = c
        .iter()
        .map(|x| (x * BigRational::from(denom_lcm.clone())).to_integer())
        .collect();
    let mut content = BigInt::zero();
    for x in &ints {
        content = num_integer::gcd(content, x.clone());
    }
    if !content.is_one() && !content.is_zero() {
        for x in ints.iter_mut() {
            *x /= &content;
        }
    }
    let a0 = BigInt::from(ints[0].magnitude().clone());
    let an = BigInt::from(ints.last().unwrap().magnitude().clone());
    let num_divs = divisors(&a0)?;
    let den_divs = divisors(&an)?;
    // Cauchy bound: every root satisfies |r| <= 1 + max |a_i| / |a_n|
    let max_coeff = ints
        .iter()
        .map(|x| BigRational::from(x.abs()))
        .max()
        .unwrap();
    let bound = BigRational::one() + max_coeff / BigRational::from(an.clone());
    let eval_int = |x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for cf in ints.iter().rev() {
            acc = acc * x + BigRational::from(cf.clone());
        }
        acc
    };
    let f_one = eval_int(&BigRational::one()).to_integer();
    let f_neg_one = eval_int(&(-BigRational::one())).to_integer();
    if f_one.is_zero() {
        roots.push(BigRational::one());
    }
    if f_neg_one.is_zero() {
        roots.push(-BigRational::one());
    }
    let mut budget: u64 = 2_000_000;
    for n in &num_divs {
        for d in &den_divs {
            for sign in [1i64, -1] {
                if budget == 0 {
                    return None;
                }
                budget -= 1;
                let p = n * BigInt::from(sign);
                let cand = BigRational::new(p.clone(), d.clone());
                if cand.abs() > bound {
                    continue;
                }
                if cand == BigRational::one() || cand == -BigRational::one() {
                    continue; // handled above
                }
                // p/q a root forces (p - q) | f(1) and (p + q) | f(-1)
                let pm = &p - d;
                let pp = &p + d;
                if !f_one.is_zero() && !pm.is_zero() && !(&f_one % &pm).is_zero() {
                    continue;
                }
                if !f_neg_one.is_zero() && !pp.is_zero() && !(&f_neg_one % &pp).is_zero() {
                    continue;
                }
                if eval_int(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Some(roots)
}

/// Positive divisors via trial division, `None` when the value is too large
/// to factor within budget.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n > BigInt::from(u64::MAX) {
        return None;
    }
    let mut n: u64 = n.try_into().ok()?;
    if n == 0 {
        return Some(vec![BigInt::one()]);
    }
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut d = 2u64;
    let mut steps = 0u64;
    while d * d <= n {
        steps += 1;
        if steps > 3_000_000 {
            return None;
        }
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for base in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(base * &pw);
                pw *= BigInt::from(p);
            }
        }
        divs = next;
    }
    Some(divs)
}

/// Exact element of a [`Field`]. Always reduced: the coefficient vector has
/// length equal to the extension degree and residues are reduced mod p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    field: Field,
    coeffs: Vec<Base>,
}

impl Scalar {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| self.field.b_is_zero(c))
    }

    pub fn is_one(&self) -> bool {
        self.field.b_is_one(&self.coeffs[0])
            && self.coeffs[1..].iter().all(|c| self.field.b_is_zero(c))
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert!(
            self.field == other.field,
            "scalar arithmetic across distinct fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        Scalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| self.field.b_add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        Scalar {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| self.field.b_sub(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| self.field.b_neg(a)).collect(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.assert_same_field(other);
        Scalar {
            field: self.field.clone(),
            coeffs: self.field.vec_mul(&self.coeffs, &other.coeffs),
        }
    }

    pub fn try_inv(&self) -> Result<Scalar, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(Scalar {
            field: self.field.clone(),
            coeffs: self.field.vec_inv(&self.coeffs)?,
        })
    }

    /// Inverse of a known-nonzero scalar.
    pub fn inv(&self) -> Scalar {
        self.try_inv().expect("inverse of zero")
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, FieldError> {
        self.assert_same_field(other);
        Ok(self.mul(&other.try_inv()?))
    }

    /// Checked variant of the binary operations, validating field membership.
    pub fn checked_op(op: ScalarOp, lhs: &Scalar, rhs: &Scalar) -> Result<Scalar, FieldError> {
        if lhs.field != rhs.field {
            return Err(FieldError::FieldMismatch);
        }
        match op {
            ScalarOp::Add => Ok(lhs.add(rhs)),
            ScalarOp::Sub => Ok(lhs.sub(rhs)),
            ScalarOp::Mul => Ok(lhs.mul(rhs)),
            ScalarOp::Div => lhs.try_div(rhs),
        }
    }

    /// The underlying rational of a characteristic-zero prime-field scalar.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.field.characteristic() != 0 || self.coeffs.len() != 1 {
            return None;
        }
        match &self.coeffs[0] {
            Base::Rat(r) => Some(r.clone()),
            Base::Mod(_) => None,
        }
    }

    /// The residue of a positive-characteristic prime-field scalar.
    pub fn to_residue(&self) -> Option<u64> {
        if self.coeffs.len() != 1 {
            return None;
        }
        match &self.coeffs[0] {
            Base::Mod(r) => Some(*r),
            Base::Rat(_) => None,
        }
    }

    /// Coordinates in the power basis, as prime-field scalars.
    pub fn coords(&self) -> Vec<Scalar> {
        let prime = self.field.prime_field();
        self.coeffs
            .iter()
            .map(|c| Scalar {
                field: prime.clone(),
                coeffs: vec![c.clone()],
            })
            .collect()
    }

    /// Square root within the field, when one exists and the field shape
    /// supports deciding it (rationals, quadratic extensions of the
    /// rationals, small finite fields). `None` means "no root in this field
    /// or undecidable here"; callers needing closure escalate to an
    /// extension.
    pub fn sqrt_in_field(&self) -> Option<Scalar> {
        let f = &self.field;
        if self.is_zero() {
            return Some(f.zero());
        }
        if f.characteristic() > 0 {
            let elems = f.enumerate()?;
            return elems.into_iter().find(|x| x.mul(x) == *self);
        }
        if !f.has_extension() {
            let Base::Rat(r) = &self.coeffs[0] else {
                unreachable!()
            };
            return rational_sqrt(r).map(|s| Scalar {
                field: f.clone(),
                coeffs: vec![Base::Rat(s)],
            });
        }
        if f.extension_degree() != 2 {
            return None;
        }
        // quadratic extension Q(theta), theta^2 + b theta + c = 0
        let (Base::Rat(c), Base::Rat(b)) = (&f.0.minpoly_tail[0], &f.0.minpoly_tail[1]) else {
            unreachable!()
        };
        let (Base::Rat(x), Base::Rat(y)) = (&self.coeffs[0], &self.coeffs[1]) else {
            unreachable!()
        };
        let mk = |u: BigRational, v: BigRational| Scalar {
            field: f.clone(),
            coeffs: vec![Base::Rat(u), Base::Rat(v)],
        };
        if y.is_zero() {
            if let Some(u) = rational_sqrt(x) {
                return Some(mk(u, BigRational::zero()));
            }
        }
        // want (u + v theta)^2 = x + y theta with theta^2 = -b theta - c:
        //   u^2 - c v^2 = x,  2uv - b v^2 = y
        // leads to  D v^4 + (2by - 4x) v^2 + y^2 = 0 with D = b^2 - 4c.
        let two = BigRational::from(BigInt::from(2));
        let four = BigRational::from(BigInt::from(4));
        let dd = b * b - &four * c;
        if dd.is_zero() {
            return None;
        }
        let qa = dd.clone();
        let qb = &two * b * y - &four * x;
        let qc = y * y;
        let disc = &qb * &qb - &four * &qa * &qc;
        let sd = rational_sqrt(&disc)?;
        for sign in [BigRational::one(), -BigRational::one()] {
            let w = (-&qb + &sign * &sd) / (&two * &qa);
            if let Some(v) = rational_sqrt(&w) {
                if v.is_zero() {
                    continue;
                }
                for vv in [v.clone(), -v] {
                    let u = (y + b * (&vv * &vv)) / (&two * &vv);
                    let cand = mk(u, vv);
                    if cand.mul(&cand) == *self {
                        return Some(cand);
                    }
                }
            }
        }
        None
    }
}

pub(crate) fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl fmt::Display for Scalar {
    /// Canonical form `c0 + c1*t + c2*t^2`, zero coordinates skipped,
    /// reduced fractions.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if self.field.b_is_zero(c) {
                continue;
            }
            let body = self.field.b_to_string(c);
            let (sign, mag) = match body.strip_prefix('-') {
                Some(rest) => ('-', rest.to_string()),
                None => ('+', body),
            };
            if first {
                if sign == '-' {
                    write!(out, "-")?;
                }
                first = false;
            } else if sign == '-' {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{}", k),
            };
            if var.is_empty() {
                write!(out, "{}", mag)?;
            } else if mag == "1" {
                write!(out, "{}", var)?;
            } else {
                write!(out, "{}*{}", mag, var)?;
            }
        }
        if first {
            write!(out, "0")?;
        }
        Ok(())
    }
}
