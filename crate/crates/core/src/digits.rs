//! Finite beta-representations as digit strings.
//!
//! Text format: decimal digits juxtaposed (`1200.3`), or comma separated when
//! some digit exceeds 9 (`12,0,0.11`). The fractional point is written `.`;
//! `•` is accepted on input. A comma-separated rendering that would otherwise
//! contain no comma gets a leading `0,` so it stays unambiguous (`0,12.`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::ring::{unchecked, Checked, Coeff, FinElem, RingElem};

/// Digits `x_k x_{k-1} ... x_m`, most significant first.
///
/// The first digit sits at position `msd_exponent` and positions decrease by
/// one per digit. Canonical form has no leading or trailing zero digit; the
/// empty string is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DigitString {
    digits: Vec<u64>,
    msd_exponent: i64,
}

impl DigitString {
    pub fn new(mut digits: Vec<u64>, mut msd_exponent: i64) -> Self {
        let lead = digits.iter().take_while(|&&d| d == 0).count();
        if lead == digits.len() {
            return Self::zero();
        }
        digits.drain(..lead);
        msd_exponent -= lead as i64;
        while digits.last() == Some(&0) {
            digits.pop();
        }
        DigitString {
            digits,
            msd_exponent,
        }
    }

    pub fn zero() -> Self {
        DigitString {
            digits: Vec::new(),
            msd_exponent: 0,
        }
    }

    /// `integer` ends at position 0; `fractional` starts at position -1.
    pub fn from_parts(integer: &[u64], fractional: &[u64]) -> Self {
        let digits = integer.iter().chain(fractional).copied().collect();
        Self::new(digits, integer.len() as i64 - 1)
    }

    pub fn integer(digits: &[u64]) -> Self {
        Self::from_parts(digits, &[])
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn msd_exponent(&self) -> i64 {
        self.msd_exponent
    }

    /// Position of the last digit.
    pub fn lsd_exponent(&self) -> i64 {
        self.msd_exponent - self.digits.len() as i64 + 1
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Number of digits strictly below position 0.
    pub fn fractional_len(&self) -> u32 {
        if self.is_zero() {
            0
        } else {
            (-self.lsd_exponent()).max(0) as u32
        }
    }

    /// Number of digits from the leading digit down to position 0.
    pub fn integer_len(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            (self.msd_exponent + 1).max(0) as usize
        }
    }

    pub fn digit_at(&self, pos: i64) -> u64 {
        let idx = self.msd_exponent - pos;
        if idx < 0 || idx >= self.digits.len() as i64 {
            0
        } else {
            self.digits[idx as usize]
        }
    }

    /// Digits at positions `hi, hi-1, ..., lo`, zero padded.
    pub fn window(&self, hi: i64, lo: i64) -> Vec<u64> {
        (lo..=hi).rev().map(|pos| self.digit_at(pos)).collect()
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }

    pub fn fractional_digit_sum(&self) -> u64 {
        (self.lsd_exponent()..0).map(|pos| self.digit_at(pos)).sum()
    }

    /// The digits at positions >= 0.
    pub fn integer_part(&self) -> DigitString {
        if self.msd_exponent < 0 {
            return Self::zero();
        }
        Self::new(self.window(self.msd_exponent, 0), self.msd_exponent)
    }

    /// The digits at positions < 0.
    pub fn fractional_part(&self) -> DigitString {
        let lsd = self.lsd_exponent();
        if self.is_zero() || lsd >= 0 {
            return Self::zero();
        }
        let hi = self.msd_exponent.min(-1);
        Self::new(self.window(hi, lsd), hi)
    }

    /// Multiply by `beta^k`: shift every digit `k` positions up.
    pub fn shifted(&self, k: i64) -> DigitString {
        if self.is_zero() {
            return Self::zero();
        }
        DigitString {
            digits: self.digits.clone(),
            msd_exponent: self.msd_exponent + k,
        }
    }

    /// Digit-wise sum. Generally not admissible.
    pub fn digitwise_add(&self, o: &DigitString) -> DigitString {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let hi = self.msd_exponent.max(o.msd_exponent);
        let lo = self.lsd_exponent().min(o.lsd_exponent());
        let digits = (lo..=hi)
            .rev()
            .map(|pos| self.digit_at(pos) + o.digit_at(pos))
            .collect();
        Self::new(digits, hi)
    }
}

/// Joins integer and fractional digit runs around a `.`.
pub(crate) fn render(integer: &[u64], fractional: &[u64], wide: bool) -> String {
    let sep = if wide { "," } else { "" };
    let join = |ds: &[u64]| ds.iter().map(u64::to_string).collect::<Vec<_>>().join(sep);
    format!("{}.{}", join(integer), join(fractional))
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.msd_exponent.max(0);
        let bottom = if self.is_zero() {
            0
        } else {
            self.lsd_exponent().min(0)
        };
        let integer = self.window(top, 0);
        let fractional = if bottom < 0 {
            self.window(-1, bottom)
        } else {
            Vec::new()
        };
        let wide = self.digits.iter().any(|&d| d > 9);
        let mut out = render(&integer, &fractional, wide);
        if wide && !out.contains(',') {
            out.insert_str(0, "0,");
        }
        f.write_str(&out)
    }
}

impl FromStr for DigitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "digit string",
            input: s.to_string(),
        };
        let text = s.trim().replace('•', ".");
        if text.is_empty() {
            return Err(err());
        }
        let (int_part, frac_part) = match text.split_once('.') {
            Some((i, f)) if !f.contains('.') => (i, f),
            Some(_) => return Err(err()),
            None => (text.as_str(), ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let tokens = |part: &str| -> Result<Vec<u64>> {
            if part.is_empty() {
                return Ok(Vec::new());
            }
            if text.contains(',') {
                part.split(',')
                    .map(|t| {
                        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                            Err(err())
                        } else {
                            t.parse().map_err(|_| err())
                        }
                    })
                    .collect()
            } else {
                part.chars()
                    .map(|c| c.to_digit(10).map(u64::from).ok_or_else(err))
                    .collect()
            }
        };
        Ok(DigitString::from_parts(
            &tokens(int_part)?,
            &tokens(frac_part)?,
        ))
    }
}

pub(crate) fn try_evaluate<C: Coeff>(ds: &DigitString, params: &Params) -> Checked<FinElem<C>> {
    let mut z = RingElem::<C>::small(0, 0);
    for &d in &ds.digits {
        let d = C::from_big(&BigInt::from(d))?;
        z = z
            .try_mul_beta(params)?
            .try_add(&RingElem::from_parts(d, C::zero()))?;
    }
    let lsd = ds.lsd_exponent();
    if lsd >= 0 {
        let k = u32::try_from(lsd).map_err(|_| crate::ring::Overflow)?;
        Ok(FinElem::ring(z.try_mul_beta_pow(k, params)?))
    } else {
        let f = u32::try_from(-lsd).map_err(|_| crate::ring::Overflow)?;
        FinElem::try_canonical(z, f, params)
    }
}

/// Exact value `sum digits[i] beta^position(i)`.
pub fn evaluate(ds: &DigitString, params: &Params) -> FinElem {
    unchecked(try_evaluate(ds, params))
}

/// Parry condition for `d*(1) = p q^omega`: no digit above `p` and no factor
/// `p q^s d` with `d > q`.
pub fn is_admissible(ds: &DigitString, params: &Params) -> bool {
    first_violation(ds.digits.iter().copied(), params).is_none()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Violation {
    /// Index of a digit `>= p+1`.
    TooLarge(usize),
    /// Indices of the `p` and of the closing digit `> q` of `p q^s d`.
    Pattern(usize, usize),
}

/// Leftmost violation in a most-significant-first digit sequence.
fn first_violation(digits: impl Iterator<Item = u64>, params: &Params) -> Option<Violation> {
    let p = u64::from(params.p());
    let q = u64::from(params.q());
    let mut pattern_start = None;
    for (idx, d) in digits.enumerate() {
        if let Some(start) = pattern_start {
            if d > q {
                return Some(Violation::Pattern(start, idx));
            }
            if d == q {
                continue;
            }
            pattern_start = None;
            continue;
        }
        if d > p {
            return Some(Violation::TooLarge(idx));
        }
        if d == p {
            pattern_start = Some(idx);
        }
    }
    None
}

/// Position of the leading digit of the leftmost forbidden factor: the
/// digit `>= p+1`, or the `p` opening `p q^s d` with `d > q`.
pub(crate) fn first_violation_position(ds: &DigitString, params: &Params) -> Option<i64> {
    let idx = match first_violation(ds.digits.iter().copied(), params)? {
        Violation::TooLarge(idx) | Violation::Pattern(idx, _) => idx,
    };
    Some(ds.msd_exponent - idx as i64)
}

/// Length of the fractional part of an admissible string.
pub fn fp(ds: &DigitString, params: &Params) -> Result<u32> {
    if !is_admissible(ds, params) {
        return Err(Error::NotAdmissible(ds.to_string()));
    }
    Ok(ds.fractional_len())
}

/// Growable digit buffer indexed by position, least significant first.
struct Workspace {
    digits: Vec<u64>,
    lo: i64,
}

impl Workspace {
    fn from_digits(ds: &DigitString) -> Self {
        let mut digits = ds.digits.clone();
        digits.reverse();
        Workspace {
            digits,
            lo: ds.lsd_exponent(),
        }
    }

    fn hi(&self) -> i64 {
        self.lo + self.digits.len() as i64 - 1
    }

    fn slot(&mut self, pos: i64) -> &mut u64 {
        if pos < self.lo {
            let extra = (self.lo - pos) as usize;
            self.digits.splice(0..0, std::iter::repeat_n(0, extra));
            self.lo = pos;
        }
        if pos > self.hi() {
            let extra = (pos - self.hi()) as usize;
            self.digits.extend(std::iter::repeat_n(0, extra));
        }
        &mut self.digits[(pos - self.lo) as usize]
    }

    fn pos_of_msd_index(&self, idx: usize) -> i64 {
        self.hi() - idx as i64
    }

    fn into_digit_string(mut self) -> DigitString {
        let hi = self.hi();
        self.digits.reverse();
        DigitString::new(self.digits, hi)
    }
}

/// Rewrites any finite representation into the beta-expansion of its value.
///
/// Rules, applied to the leftmost violation until none remains:
/// `(p+1)• = 10•(p-q)` at a digit `>= p+1`, and
/// `p q^s (q+1)• = 1 0^{s+2} •(p-q)` at a factor `p q^s d` with `d > q`.
/// Each rule lowers the digit sum by a positive multiple of `q`.
pub fn normalize_rewrite(ds: &DigitString, params: &Params) -> DigitString {
    let p = u64::from(params.p());
    let q = u64::from(params.q());
    let norm = u64::from(params.norm());
    if ds.is_zero() {
        return DigitString::zero();
    }
    let mut ws = Workspace::from_digits(ds);
    loop {
        let violation = first_violation(ws.digits.iter().rev().copied(), params);
        match violation {
            None => break,
            Some(Violation::TooLarge(idx)) => {
                let pos = ws.pos_of_msd_index(idx);
                *ws.slot(pos) -= p + 1;
                *ws.slot(pos + 1) += 1;
                *ws.slot(pos - 1) += norm;
            }
            Some(Violation::Pattern(start, end)) => {
                let top = ws.pos_of_msd_index(start);
                let bottom = ws.pos_of_msd_index(end);
                *ws.slot(top) -= p;
                for pos in bottom + 1..top {
                    *ws.slot(pos) -= q;
                }
                *ws.slot(bottom) -= q + 1;
                *ws.slot(top + 1) += 1;
                *ws.slot(bottom - 1) += norm;
            }
        }
    }
    ws.into_digit_string()
}
