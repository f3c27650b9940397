//! Greedy beta-expansions of exact values.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::digits::{render, DigitString};
use crate::error::{Error, Result};
use crate::params::Params;
use crate::ring::{Checked, Coeff, FinElem, RingElem};

pub const DEFAULT_FRACTIONAL_BUDGET: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExpansionResult {
    Finite {
        #[serde(serialize_with = "as_text")]
        expansion: DigitString,
    },
    /// `preperiod` followed by `period` repeated forever; the first period
    /// digit sits at position `period_exponent`.
    EventuallyPeriodic {
        #[serde(serialize_with = "as_text")]
        preperiod: DigitString,
        period: Vec<u64>,
        period_exponent: i64,
    },
    BudgetExceeded {
        #[serde(serialize_with = "as_text")]
        partial: DigitString,
    },
}

fn as_text<S: serde::Serializer>(d: &DigitString, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(d)
}

impl ExpansionResult {
    pub fn finite(&self) -> Option<&DigitString> {
        match self {
            ExpansionResult::Finite { expansion } => Some(expansion),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.finite().is_some()
    }
}

impl fmt::Display for ExpansionResult {
    /// Periodic results render the period in parentheses: `4.(2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpansionResult::Finite { expansion } => write!(f, "{expansion}"),
            ExpansionResult::BudgetExceeded { partial } => write!(f, "{partial}..."),
            ExpansionResult::EventuallyPeriodic {
                preperiod,
                period,
                period_exponent,
            } => {
                let top = preperiod.msd_exponent().max(0);
                let integer = preperiod.window(top, 0);
                let fractional = preperiod.window(-1, period_exponent + 1);
                let wide = preperiod.digits().iter().chain(period).any(|&d| d > 9);
                let sep = if wide { "," } else { "" };
                let body: Vec<String> = period.iter().map(u64::to_string).collect();
                write!(
                    f,
                    "{}({})",
                    render(&integer, &fractional, wide),
                    body.join(sep)
                )
            }
        }
    }
}

enum Mode {
    Full { budget: u32 },
    IntegerOnly,
}

enum Raw {
    Finite(Vec<u64>, i64),
    Periodic(Vec<u64>, i64, usize),
    Budget(Vec<u64>, i64),
    Integer(bool),
}

/// Powers of beta, extended on demand.
pub(crate) struct Powers<C> {
    table: Vec<RingElem<C>>,
}

impl<C: Coeff> Powers<C> {
    pub(crate) fn new() -> Self {
        Powers {
            table: vec![RingElem::small(1, 0)],
        }
    }

    pub(crate) fn get(&mut self, n: usize, params: &Params) -> Checked<&RingElem<C>> {
        while self.table.len() <= n {
            let next = self.table.last().expect("nonempty").try_mul_beta(params)?;
            self.table.push(next);
        }
        Ok(&self.table[n])
    }
}

/// Largest `d <= p` with `d * power <= rem`.
fn next_digit<C: Coeff>(rem: &RingElem<C>, power: &RingElem<C>, params: &Params) -> Checked<u64> {
    let (mut lo, mut hi) = (0i64, i64::from(params.p()));
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        let diff = rem.try_sub(&power.try_scale(&C::from_i64(mid))?)?;
        if diff.try_sign(params)? == Ordering::Less {
            hi = mid - 1;
        } else {
            lo = mid;
        }
    }
    Ok(lo as u64)
}

/// The greedy algorithm on `x >= 0`, exact throughout.
fn run<C: Coeff>(
    x: &FinElem<C>,
    mode: Mode,
    powers: &mut Powers<C>,
    params: &Params,
) -> Checked<Raw> {
    let mut rem = x.numerator().clone();
    // Value of the remainder is rem / beta^scale.
    let mut scale = x.scale() as i64;
    if rem.is_zero_elem() {
        return Ok(match mode {
            Mode::IntegerOnly => Raw::Integer(true),
            Mode::Full { .. } => Raw::Finite(Vec::new(), 0),
        });
    }

    // Top position: largest k with beta^k <= x, or start at -1 when x < 1.
    let one_scaled = powers.get(scale as usize, params)?.clone();
    let mut top: i64 = -1;
    if rem.try_sub(&one_scaled)?.try_sign(params)? != Ordering::Less {
        top = 0;
        loop {
            let next = powers.get((top + 1 + scale) as usize, params)?;
            if rem.try_sub(next)?.try_sign(params)? == Ordering::Less {
                break;
            }
            top += 1;
        }
    }

    let mut digits = Vec::new();
    let mut pos = top;
    while pos >= 0 {
        let power = powers.get((pos + scale) as usize, params)?.clone();
        let d = next_digit(&rem, &power, params)?;
        if d > 0 {
            rem = rem.try_sub(&power.try_scale(&C::from_i64(d as i64))?)?;
        }
        digits.push(d);
        pos -= 1;
    }

    let budget = match mode {
        Mode::IntegerOnly => return Ok(Raw::Integer(rem.is_zero_elem())),
        Mode::Full { budget } => budget,
    };
    if rem.is_zero_elem() {
        return Ok(Raw::Finite(digits, top));
    }

    // Normalised remainders y_i = r_i / beta^i in [0, 1), keyed canonically.
    let mut seen: Vec<FinElem<C>> = Vec::new();
    seen.push(FinElem::try_canonical(rem.clone(), scale as u32, params)?);
    let integer_digits = digits.len();
    let mut emitted = 0u32;
    // pos == -1 here.
    loop {
        while pos + scale < 0 {
            rem = rem.try_mul_beta(params)?;
            scale += 1;
        }
        let power = powers.get((pos + scale) as usize, params)?.clone();
        let d = next_digit(&rem, &power, params)?;
        if d > 0 {
            rem = rem.try_sub(&power.try_scale(&C::from_i64(d as i64))?)?;
        }
        digits.push(d);
        emitted += 1;
        if rem.is_zero_elem() {
            return Ok(Raw::Finite(digits, top));
        }
        let key = FinElem::try_canonical(rem.clone(), (scale + pos) as u32, params)?;
        if let Some(first) = seen.iter().position(|k| *k == key) {
            // The digits emitted after state `first` repeat from here on.
            let period_start = integer_digits + first;
            return Ok(Raw::Periodic(digits, top, period_start));
        }
        seen.push(key);
        if emitted >= budget {
            return Ok(Raw::Budget(digits, top));
        }
        pos -= 1;
    }
}

fn with_fallback<T>(
    x: &FinElem,
    f: impl Fn(&FinElem<i128>) -> Checked<T>,
    g: impl Fn(&FinElem) -> Checked<T>,
) -> T {
    if let Ok(small) = x.try_convert::<i128>() {
        if let Ok(v) = f(&small) {
            return v;
        }
    }
    crate::ring::unchecked(g(x))
}

fn assemble(raw: Raw) -> ExpansionResult {
    // A string whose first digit is at position `top`; x < 1 starts at -1.
    match raw {
        Raw::Finite(d, top) => ExpansionResult::Finite {
            expansion: DigitString::new(d, top.max(-1)),
        },
        Raw::Budget(d, top) => ExpansionResult::BudgetExceeded {
            partial: DigitString::new(d, top.max(-1)),
        },
        Raw::Periodic(mut d, top, start) => {
            let top = top.max(-1);
            let period = d.split_off(start);
            let period_exponent = top - start as i64;
            ExpansionResult::EventuallyPeriodic {
                preperiod: DigitString::new(d, top),
                period,
                period_exponent,
            }
        }
        Raw::Integer(_) => unreachable!("full mode never yields an integer verdict"),
    }
}

pub(crate) fn try_greedy<C: Coeff>(
    x: &FinElem<C>,
    budget: u32,
    powers: &mut Powers<C>,
    params: &Params,
) -> Checked<ExpansionResult> {
    Ok(assemble(run(x, Mode::Full { budget }, powers, params)?))
}

/// Greedy beta-expansion of `x >= 0` with at most `fractional_budget`
/// fractional digits.
pub fn greedy_expand(
    x: &FinElem,
    fractional_budget: u32,
    params: &Params,
) -> Result<ExpansionResult> {
    if x.sign(params) == Ordering::Less {
        return Err(Error::NegativeInput);
    }
    let budget = fractional_budget.max(1);
    Ok(with_fallback(
        x,
        |s| try_greedy(s, budget, &mut Powers::new(), params),
        |b| try_greedy(b, budget, &mut Powers::new(), params),
    ))
}

/// Whether `|x|` has no fractional digits in its expansion.
pub(crate) fn try_is_beta_integer<C: Coeff>(
    x: &FinElem<C>,
    powers: &mut Powers<C>,
    params: &Params,
) -> Checked<bool> {
    let abs;
    let x = if x.numerator().try_sign(params)? == Ordering::Less {
        abs = FinElem::try_canonical(x.numerator().try_neg()?, x.scale(), params)?;
        &abs
    } else {
        x
    };
    match run(x, Mode::IntegerOnly, powers, params)? {
        Raw::Integer(b) => Ok(b),
        _ => unreachable!("integer mode yields an integer verdict"),
    }
}

/// Whether `x` is a beta-integer; negative values are tested by `|x|`.
///
/// Runs the greedy algorithm down to position 0 only: the expansion is an
/// integer one iff the remainder there is exactly zero.
pub fn is_beta_integer(x: &FinElem, params: &Params) -> bool {
    with_fallback(
        x,
        |s| try_is_beta_integer(s, &mut Powers::new(), params),
        |b| try_is_beta_integer(b, &mut Powers::new(), params),
    )
}
