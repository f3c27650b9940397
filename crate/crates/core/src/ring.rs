//! Exact arithmetic in `Z[beta]` and `beta^-f Z[beta]`.
//!
//! `beta` satisfies `beta^2 = (p+1) beta - (p-q)`. Every element is stored as
//! `a + b beta` with integer coefficients, which is unique because `beta` is
//! irrational. Signs are decided exactly from `2x = u + v sqrt(D)` with
//! `u = 2a + b(p+1)`, `v = b`.
//!
//! The coefficient type is generic so that hot loops can run on `i128` and
//! fall back to `BigInt` when a checked operation overflows. The public API
//! is the `BigInt` instantiation.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::params::Params;

/// A fixed-width operation overflowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Overflow;

pub(crate) type Checked<T> = std::result::Result<T, Overflow>;

pub(crate) trait Coeff: Clone + Eq + Hash + fmt::Debug + Send + Sync {
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Checked<Self>;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self {
        Self::from_i64(0)
    }
    fn add(&self, o: &Self) -> Checked<Self>;
    fn sub(&self, o: &Self) -> Checked<Self>;
    fn mul(&self, o: &Self) -> Checked<Self>;
    fn neg(&self) -> Checked<Self>;
    fn sign(&self) -> Ordering;
    /// `Some(self / m)` when `m` divides `self`.
    fn div_exact(&self, m: &Self) -> Checked<Option<Self>>;
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Checked<Self> {
        Ok(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        Ok(self * o)
    }
    fn neg(&self) -> Checked<Self> {
        Ok(-self)
    }
    fn sign(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
    fn div_exact(&self, m: &Self) -> Checked<Option<Self>> {
        let (d, r) = self.div_rem(m);
        Ok(r.is_zero().then_some(d))
    }
}

impl Coeff for i128 {
    fn from_i64(v: i64) -> Self {
        i128::from(v)
    }
    fn from_big(v: &BigInt) -> Checked<Self> {
        v.to_i128().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add(&self, o: &Self) -> Checked<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> Checked<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> Checked<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn neg(&self) -> Checked<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn sign(&self) -> Ordering {
        self.cmp(&0)
    }
    fn div_exact(&self, m: &Self) -> Checked<Option<Self>> {
        Ok((self.checked_rem(*m).ok_or(Overflow)? == 0).then(|| self / m))
    }
}

/// `a + b beta` in `Z[beta]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElem<C = BigInt> {
    a: C,
    b: C,
}

// The coefficient type is an internal detail; only `RingElem<BigInt>` is public API.
#[allow(private_bounds)]
impl<C: Coeff> RingElem<C> {
    pub(crate) fn from_parts(a: C, b: C) -> Self {
        RingElem { a, b }
    }

    pub(crate) fn small(a: i64, b: i64) -> Self {
        RingElem {
            a: C::from_i64(a),
            b: C::from_i64(b),
        }
    }

    pub(crate) fn is_zero_elem(&self) -> bool {
        self.a.sign() == Ordering::Equal && self.b.sign() == Ordering::Equal
    }

    pub(crate) fn try_add(&self, o: &Self) -> Checked<Self> {
        Ok(RingElem {
            a: self.a.add(&o.a)?,
            b: self.b.add(&o.b)?,
        })
    }

    pub(crate) fn try_sub(&self, o: &Self) -> Checked<Self> {
        Ok(RingElem {
            a: self.a.sub(&o.a)?,
            b: self.b.sub(&o.b)?,
        })
    }

    pub(crate) fn try_neg(&self) -> Checked<Self> {
        Ok(RingElem {
            a: self.a.neg()?,
            b: self.b.neg()?,
        })
    }

    pub(crate) fn try_scale(&self, k: &C) -> Checked<Self> {
        Ok(RingElem {
            a: self.a.mul(k)?,
            b: self.b.mul(k)?,
        })
    }

    /// `(a+b beta)(c+d beta) = (ac - bd(p-q)) + (ad + bc + bd(p+1)) beta`.
    pub(crate) fn try_mul(&self, o: &Self, params: &Params) -> Checked<Self> {
        let norm = C::from_i64(params.norm().into());
        let trace = C::from_i64(params.trace().into());
        let bd = self.b.mul(&o.b)?;
        let a = self.a.mul(&o.a)?.sub(&bd.mul(&norm)?)?;
        let b = self
            .a
            .mul(&o.b)?
            .add(&self.b.mul(&o.a)?)?
            .add(&bd.mul(&trace)?)?;
        Ok(RingElem { a, b })
    }

    /// `beta (a + b beta) = -b(p-q) + (a + b(p+1)) beta`.
    pub(crate) fn try_mul_beta(&self, params: &Params) -> Checked<Self> {
        let norm = C::from_i64(params.norm().into());
        let trace = C::from_i64(params.trace().into());
        Ok(RingElem {
            a: self.b.mul(&norm)?.neg()?,
            b: self.a.add(&self.b.mul(&trace)?)?,
        })
    }

    pub(crate) fn try_mul_beta_pow(&self, k: u32, params: &Params) -> Checked<Self> {
        let mut out = self.clone();
        for _ in 0..k {
            out = out.try_mul_beta(params)?;
        }
        Ok(out)
    }

    /// `y` with `beta y = self`, if it exists.
    ///
    /// `beta (c + d beta) = -d(p-q) + (c + d(p+1)) beta`, so `a + b beta` is
    /// divisible iff `(p-q) | a`.
    pub(crate) fn try_div_beta(&self, params: &Params) -> Checked<Option<Self>> {
        let norm = C::from_i64(params.norm().into());
        let trace = C::from_i64(params.trace().into());
        let Some(neg_d) = self.a.div_exact(&norm)? else {
            return Ok(None);
        };
        let d = neg_d.neg()?;
        let c = self.b.sub(&d.mul(&trace)?)?;
        Ok(Some(RingElem { a: c, b: d }))
    }

    pub(crate) fn try_sign(&self, params: &Params) -> Checked<Ordering> {
        let trace = C::from_i64(params.trace().into());
        let u = self.a.add(&self.a)?.add(&self.b.mul(&trace)?)?;
        let (su, sv) = (u.sign(), self.b.sign());
        if sv == Ordering::Equal || su == sv {
            return Ok(su);
        }
        if su == Ordering::Equal {
            return Ok(sv);
        }
        // Mixed signs: compare u^2 with v^2 D. Equality is impossible since D
        // is not a square.
        let disc = C::from_i64(params.discriminant() as i64);
        let uu = u.mul(&u)?;
        let vvd = self.b.mul(&self.b)?.mul(&disc)?;
        Ok(match uu.sub(&vvd)?.sign() {
            Ordering::Greater => su,
            _ => sv,
        })
    }

    pub(crate) fn try_convert<D: Coeff>(&self) -> Checked<RingElem<D>> {
        Ok(RingElem {
            a: D::from_big(&self.a.to_big())?,
            b: D::from_big(&self.b.to_big())?,
        })
    }
}

pub(crate) fn unchecked<T>(r: Checked<T>) -> T {
    match r {
        Ok(v) => v,
        Err(Overflow) => unreachable!("arbitrary-precision arithmetic cannot overflow"),
    }
}

impl RingElem {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        RingElem {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        Self::new(0, 0)
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn beta() -> Self {
        Self::new(0, 1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::new(n, 0)
    }

    /// `(p-q)/beta = (p+1) - beta`: the difference of the two gap lengths.
    pub fn gap_difference(params: &Params) -> Self {
        Self::new(params.trace(), -1)
    }

    /// The short gap `beta - p`.
    pub fn short_gap(params: &Params) -> Self {
        Self::new(-i64::from(params.p()), 1)
    }

    pub fn beta_pow(k: u32, params: &Params) -> Self {
        unchecked(Self::one().try_mul_beta_pow(k, params))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero()
    }

    pub fn mul(&self, o: &Self, params: &Params) -> Self {
        unchecked(self.try_mul(o, params))
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> Self {
        unchecked(self.try_scale(&k.into()))
    }

    pub fn mul_beta(&self, params: &Params) -> Self {
        unchecked(self.try_mul_beta(params))
    }

    /// Exact sign of the real number `a + b beta`.
    pub fn sign(&self, params: &Params) -> Ordering {
        unchecked(self.try_sign(params))
    }

    pub fn cmp_value(&self, o: &Self, params: &Params) -> Ordering {
        (self - o).sign(params)
    }

    pub fn beta_divide(&self, params: &Params) -> Result<Self> {
        unchecked(self.try_div_beta(params)).ok_or(Error::NotDivisible)
    }

    /// Approximate value. Never used for decisions.
    pub fn to_f64(&self, params: &Params) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * params.beta_approx()
    }
}

impl<'a> Add<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn add(self, o: &RingElem) -> RingElem {
        RingElem::new(&self.a + &o.a, &self.b + &o.b)
    }
}

impl<'a> Sub<&'a RingElem> for &'a RingElem {
    type Output = RingElem;
    fn sub(self, o: &RingElem) -> RingElem {
        RingElem::new(&self.a - &o.a, &self.b - &o.b)
    }
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, o: RingElem) -> RingElem {
        &self + &o
    }
}

impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, o: RingElem) -> RingElem {
        &self - &o
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::new(-&self.a, -&self.b)
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

impl<C: fmt::Debug> fmt::Debug for RingElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.a, self.b)
    }
}

impl fmt::Display for RingElem {
    /// `a+bb` style, with `b` standing for beta: `12-2b`, `b`, `-1+b`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b_term = |f: &mut fmt::Formatter<'_>, b: &BigInt, lead: bool| -> fmt::Result {
            let mag = b.abs();
            let sign = match (b.is_negative(), lead) {
                (true, _) => "-",
                (false, true) => "",
                (false, false) => "+",
            };
            if mag.is_one() {
                write!(f, "{sign}b")
            } else {
                write!(f, "{sign}{mag}b")
            }
        };
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => b_term(f, &self.b, true),
            (false, false) => {
                write!(f, "{}", self.a)?;
                b_term(f, &self.b, false)
            }
        }
    }
}

/// `z / beta^f`, kept canonical: `f = 0` or `beta` does not divide `z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinElem<C = BigInt> {
    z: RingElem<C>,
    f: u32,
}

#[allow(private_bounds)]
impl<C: Coeff> FinElem<C> {
    pub(crate) fn try_canonical(mut z: RingElem<C>, mut f: u32, params: &Params) -> Checked<Self> {
        if z.is_zero_elem() {
            return Ok(FinElem { z, f: 0 });
        }
        while f > 0 {
            match z.try_div_beta(params)? {
                Some(y) => {
                    z = y;
                    f -= 1;
                }
                None => break,
            }
        }
        Ok(FinElem { z, f })
    }

    pub(crate) fn ring(z: RingElem<C>) -> Self {
        FinElem { z, f: 0 }
    }

    pub(crate) fn numerator(&self) -> &RingElem<C> {
        &self.z
    }

    pub(crate) fn scale(&self) -> u32 {
        self.f
    }

    /// Numerator rescaled to denominator `beta^f` for `f >= self.f`.
    pub(crate) fn try_lift(&self, f: u32, params: &Params) -> Checked<RingElem<C>> {
        debug_assert!(f >= self.f);
        self.z.try_mul_beta_pow(f - self.f, params)
    }

    pub(crate) fn try_add(&self, o: &Self, params: &Params) -> Checked<Self> {
        let f = self.f.max(o.f);
        let z = self.try_lift(f, params)?.try_add(&o.try_lift(f, params)?)?;
        Self::try_canonical(z, f, params)
    }

    pub(crate) fn try_sub(&self, o: &Self, params: &Params) -> Checked<Self> {
        let f = self.f.max(o.f);
        let z = self.try_lift(f, params)?.try_sub(&o.try_lift(f, params)?)?;
        Self::try_canonical(z, f, params)
    }

    pub(crate) fn try_cmp(&self, o: &Self, params: &Params) -> Checked<Ordering> {
        let f = self.f.max(o.f);
        self.try_lift(f, params)?
            .try_sub(&o.try_lift(f, params)?)?
            .try_sign(params)
    }

    pub(crate) fn try_times_beta_pow(&self, k: i64, params: &Params) -> Checked<Self> {
        if k >= 0 {
            let k = u32::try_from(k).map_err(|_| Overflow)?;
            if self.f >= k {
                Ok(FinElem {
                    z: self.z.clone(),
                    f: self.f - k,
                })
            } else {
                Ok(FinElem {
                    z: self.z.try_mul_beta_pow(k - self.f, params)?,
                    f: 0,
                })
            }
        } else {
            let down = u32::try_from(-k).map_err(|_| Overflow)?;
            let f = self.f.checked_add(down).ok_or(Overflow)?;
            Self::try_canonical(self.z.clone(), f, params)
        }
    }

    pub(crate) fn try_convert<D: Coeff>(&self) -> Checked<FinElem<D>> {
        Ok(FinElem {
            z: self.z.try_convert()?,
            f: self.f,
        })
    }
}

impl FinElem {
    pub fn new(z: RingElem, f: u32, params: &Params) -> Self {
        unchecked(Self::try_canonical(z, f, params))
    }

    pub fn from_ring(z: RingElem) -> Self {
        FinElem { z, f: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_ring(RingElem::from_int(n))
    }

    pub fn zero() -> Self {
        Self::from_ring(RingElem::zero())
    }

    pub fn z(&self) -> &RingElem {
        &self.z
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_zero()
    }

    /// Whether the value lies in `Z[beta]`.
    pub fn is_ring_element(&self) -> bool {
        self.f == 0
    }

    pub fn sign(&self, params: &Params) -> Ordering {
        // beta^f > 0
        self.z.sign(params)
    }

    pub fn cmp(&self, o: &Self, params: &Params) -> Ordering {
        unchecked(self.try_cmp(o, params))
    }

    pub fn add(&self, o: &Self, params: &Params) -> Self {
        unchecked(self.try_add(o, params))
    }

    pub fn sub(&self, o: &Self, params: &Params) -> Self {
        unchecked(self.try_sub(o, params))
    }

    pub fn neg(&self) -> Self {
        FinElem {
            z: -&self.z,
            f: self.f,
        }
    }

    pub fn abs(&self, params: &Params) -> Self {
        if self.sign(params) == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Multiply by `beta^k` for any integer `k`.
    pub fn times_beta_pow(&self, k: i64, params: &Params) -> Self {
        unchecked(self.try_times_beta_pow(k, params))
    }

    pub fn mul_int(&self, k: impl Into<BigInt>, params: &Params) -> Self {
        Self::new(self.z.mul_int(k), self.f, params)
    }

    pub fn to_f64(&self, params: &Params) -> f64 {
        self.z.to_f64(params) / params.beta_approx().powi(self.f as i32)
    }
}

impl<C: fmt::Debug> fmt::Debug for FinElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/b^{}", self.z, self.f)
    }
}

impl fmt::Display for FinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f == 0 {
            write!(f, "{}", self.z)
        } else {
            write!(f, "({})/b^{}", self.z, self.f)
        }
    }
}

/// Parses a value such as `6`, `b-1`, `12-2b`, `-3+2β` or `(1+2b)/b^2`.
///
/// `b`, `β` and `beta` all denote the base.
pub fn parse_value(input: &str, params: &Params) -> Result<FinElem> {
    let err = || Error::Parse {
        what: "value",
        input: input.to_string(),
    };
    let compact: String = input
        .replace("beta", "b")
        .replace('β', "b")
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    let (expr, f) = match compact.split_once("/b") {
        Some((num, den)) => {
            let den = den.strip_prefix('^');
            let f: u32 = match den {
                Some(d) => d.parse().map_err(|_| err())?,
                None if compact.ends_with("/b") => 1,
                None => return Err(err()),
            };
            (
                num.strip_prefix('(')
                    .and_then(|n| n.strip_suffix(')'))
                    .unwrap_or(num),
                f,
            )
        }
        None => (compact.as_str(), 0),
    };
    if expr.is_empty() {
        return Err(err());
    }
    let mut a = BigInt::default();
    let mut b = BigInt::default();
    let bytes = expr.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut negative = false;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            negative = bytes[i] == b'-';
            i += 1;
        } else if i > 0 {
            return Err(err());
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: BigInt = if start == i {
            BigInt::one()
        } else {
            expr[start..i].parse().map_err(|_| err())?
        };
        let coeff = if negative { -coeff } else { coeff };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
            if i >= bytes.len() || bytes[i] != b'b' {
                return Err(err());
            }
        }
        if i < bytes.len() && bytes[i] == b'b' {
            i += 1;
            b += coeff;
        } else if start == i {
            return Err(err());
        } else {
            a += coeff;
        }
    }
    Ok(FinElem::new(RingElem::new(a, b), f, params))
}
