//! Beta-integers: enumeration, addition with fractional-part accounting, and
//! the exhaustive search for the largest fractional part of a sum.
//!
//! `delta = (p-q)/beta = (p+1) - beta` is the difference of the two gaps
//! `1` and `beta - p`. Every sum of two nonnegative beta-integers is a
//! beta-integer plus `epsilon * delta` for a single small `epsilon`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::digits::{
    evaluate, first_violation_position, fp, is_admissible, normalize_rewrite, try_evaluate,
    DigitString,
};
use crate::error::{Error, Result};
use crate::expansion::{
    greedy_expand, is_beta_integer, try_greedy, try_is_beta_integer, ExpansionResult, Powers,
    DEFAULT_FRACTIONAL_BUDGET,
};
use crate::params::Params;
use crate::ring::{unchecked, Checked, Coeff, FinElem, RingElem};
use crate::words::{self, Letter};

fn delta<C: Coeff>(params: &Params) -> RingElem<C> {
    RingElem::small(i64::from(params.trace()), -1)
}

fn require_beta_integer(x: &FinElem, params: &Params) -> Result<()> {
    if x.sign(params) == Ordering::Less || !is_beta_integer(x, params) {
        return Err(Error::NotABetaInteger(x.to_string()));
    }
    Ok(())
}

/// The integer expansion of a nonnegative beta-integer.
pub fn integer_expansion(x: &FinElem, params: &Params) -> Result<DigitString> {
    require_beta_integer(x, params)?;
    match greedy_expand(x, 1, params)? {
        ExpansionResult::Finite { expansion } => Ok(expansion),
        other => Err(Error::InvariantViolation(format!(
            "beta-integer {x} expands to {other}"
        ))),
    }
}

/// The least beta-integer above `x >= 0`, with the letter coding the gap.
pub fn successor(x: &FinElem, params: &Params) -> Result<(FinElem, Letter)> {
    require_beta_integer(x, params)?;
    let short = x.add(&FinElem::from_ring(RingElem::short_gap(params)), params);
    if is_beta_integer(&short, params) {
        return Ok((short, Letter::B));
    }
    let long = x.add(&FinElem::from_int(1), params);
    if !is_beta_integer(&long, params) {
        return Err(Error::InvariantViolation(format!(
            "neither {short} nor {long} is a beta-integer"
        )));
    }
    Ok((long, Letter::A))
}

/// The first `n` nonnegative beta-integers and the `n - 1` gap letters
/// between them.
pub fn enumerate_with_gaps(n: usize, params: &Params) -> Result<(Vec<FinElem>, Vec<Letter>)> {
    let mut values = Vec::with_capacity(n);
    let mut letters = Vec::with_capacity(n.saturating_sub(1));
    if n == 0 {
        return Ok((values, letters));
    }
    values.push(FinElem::zero());
    while values.len() < n {
        let (next, letter) = successor(values.last().expect("nonempty"), params)?;
        values.push(next);
        letters.push(letter);
    }
    Ok((values, letters))
}

/// The first `n` nonnegative beta-integers in increasing order.
pub fn enumerate(n: usize, params: &Params) -> Result<Vec<FinElem>> {
    Ok(enumerate_with_gaps(n, params)?.0)
}

fn require_integer_expansion(x: &DigitString, params: &Params) -> Result<()> {
    if !is_admissible(x, params) || x.fractional_len() > 0 {
        return Err(Error::NotAdmissible(x.to_string()));
    }
    Ok(())
}

/// The closed form for `x + beta^l` when the sum has a fractional part.
///
/// `s` is the position of the leading digit of the forbidden factor created
/// by adding one at position `l`. Positions `s..l` become zero, position
/// `s+1` gains one, positions below `l` lose `q` (the last one `q+1`), and
/// a single fractional digit `p-q` appears.
fn carry_candidate(x: &DigitString, l: u32, params: &Params) -> Option<DigitString> {
    let q = u64::from(params.q());
    let bumped = x.digitwise_add(&DigitString::new(vec![1], i64::from(l)));
    let s = first_violation_position(&bumped, params)?;
    let l = i64::from(l);
    let top = x.msd_exponent();
    let hi = top.max(s + 1);
    let mut digits = Vec::new();
    for pos in (-1..=hi).rev() {
        let d = x.digit_at(pos);
        let d = match pos {
            -1 => u64::from(params.norm()),
            _ if pos == s + 1 => d + 1,
            _ if pos > s => d,
            _ if pos >= l => 0,
            0 => d.checked_sub(q + 1)?,
            _ => d.checked_sub(q)?,
        };
        digits.push(d);
    }
    Some(DigitString::new(digits, hi))
}

/// The expansion of `x + beta^l` for an integer expansion `x`.
///
/// Either the digit-wise sum is already admissible, or the sum is a
/// beta-integer after rewriting, or it has the single fractional digit
/// `p - q` given by [`carry_candidate`]; the last two are cross-checked.
pub fn add_beta_power(x: &DigitString, l: u32, params: &Params) -> Result<DigitString> {
    require_integer_expansion(x, params)?;
    let bumped = x.digitwise_add(&DigitString::new(vec![1], i64::from(l)));
    if is_admissible(&bumped, params) {
        return Ok(bumped);
    }
    let rewritten = normalize_rewrite(&bumped, params);
    if rewritten.fractional_len() == 0 {
        return Ok(rewritten);
    }
    match carry_candidate(x, l, params) {
        Some(c) if c == rewritten => Ok(c),
        other => Err(Error::InvariantViolation(format!(
            "{x} + beta^{l}: rewriting gives {rewritten}, closed form gives {}",
            other.map_or_else(|| "nothing".to_string(), |c| c.to_string())
        ))),
    }
}

/// Outcome of adding two nonnegative beta-integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdditionReport {
    #[serde(serialize_with = "as_text")]
    pub sum_expansion: DigitString,
    pub fp: u32,
    /// The unique `epsilon` with `x + y - epsilon (p-q)/beta` a beta-integer.
    pub epsilon: u32,
}

fn as_text<S: serde::Serializer>(d: &DigitString, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(d)
}

/// All `epsilon` in `0..=ceil(p/q)` for which `sum - epsilon delta` is a
/// beta-integer.
fn try_epsilons<C: Coeff>(
    sum: &RingElem<C>,
    powers: &mut Powers<C>,
    params: &Params,
) -> Checked<Vec<u32>> {
    let d = delta::<C>(params);
    let mut found = Vec::new();
    let mut shifted = sum.clone();
    for eps in 0..=params.lplus_upper() {
        if try_is_beta_integer(&FinElem::ring(shifted.clone()), powers, params)? {
            found.push(eps);
        }
        shifted = shifted.try_sub(&d)?;
    }
    Ok(found)
}

fn unique_epsilon(found: &[u32], what: impl FnOnce() -> String) -> Result<u32> {
    match found {
        [eps] => Ok(*eps),
        _ => Err(Error::InvariantViolation(format!(
            "{}: epsilon candidates {found:?}",
            what()
        ))),
    }
}

/// Adds two nonnegative beta-integers.
pub fn add(x: &FinElem, y: &FinElem, params: &Params) -> Result<AdditionReport> {
    require_beta_integer(x, params)?;
    require_beta_integer(y, params)?;
    let sum = x.add(y, params);
    let sum_expansion = match greedy_expand(&sum, DEFAULT_FRACTIONAL_BUDGET, params)? {
        ExpansionResult::Finite { expansion } => expansion,
        other => {
            return Err(Error::InvariantViolation(format!(
                "{x} + {y} expands to {other}"
            )))
        }
    };
    let found = if let Ok(small) = sum.z().try_convert::<i128>() {
        try_epsilons(&small, &mut Powers::new(), params).ok()
    } else {
        None
    };
    let found =
        found.unwrap_or_else(|| unchecked(try_epsilons(sum.z(), &mut Powers::new(), params)));
    let epsilon = unique_epsilon(&found, || format!("{x} + {y}"))?;
    Ok(AdditionReport {
        fp: sum_expansion.fractional_len(),
        sum_expansion,
        epsilon,
    })
}

/// `x - y` for beta-integers `x >= y >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Difference {
    BetaInteger(FinElem),
    /// The greedy expansion did not terminate; `evidence` is what it found.
    NotInFin {
        evidence: ExpansionResult,
    },
}

/// Classifies `x - y`: a difference of beta-integers is a beta-integer or
/// has no finite expansion at all.
pub fn subtract_check(x: &FinElem, y: &FinElem, params: &Params) -> Result<Difference> {
    require_beta_integer(x, params)?;
    require_beta_integer(y, params)?;
    let diff = x.sub(y, params);
    if diff.sign(params) == Ordering::Less {
        return Err(Error::NegativeInput);
    }
    match greedy_expand(&diff, DEFAULT_FRACTIONAL_BUDGET, params)? {
        ExpansionResult::Finite { expansion } if expansion.fractional_len() == 0 => {
            Ok(Difference::BetaInteger(diff))
        }
        ExpansionResult::Finite { expansion } => Err(Error::InvariantViolation(format!(
            "{x} - {y} has the finite non-integer expansion {expansion}"
        ))),
        evidence => Ok(Difference::NotInFin { evidence }),
    }
}

/// `x + y` for beta-integers of any sign, reduced to the nonnegative cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignedSum {
    /// Both operands have the same sign; `report` describes `|x + y|`.
    SameSign {
        negative: bool,
        report: AdditionReport,
    },
    /// The operands have opposite signs; `difference` describes `|x + y|`.
    MixedSign {
        negative: bool,
        difference: Difference,
    },
}

pub fn add_signed(x: &FinElem, y: &FinElem, params: &Params) -> Result<SignedSum> {
    for v in [x, y] {
        if !is_beta_integer(v, params) {
            return Err(Error::NotABetaInteger(v.to_string()));
        }
    }
    let (xs, ys) = (x.sign(params), y.sign(params));
    let (ax, ay) = (x.abs(params), y.abs(params));
    if xs != Ordering::Less && ys != Ordering::Less {
        return Ok(SignedSum::SameSign {
            negative: false,
            report: add(&ax, &ay, params)?,
        });
    }
    if xs != Ordering::Greater && ys != Ordering::Greater {
        return Ok(SignedSum::SameSign {
            negative: true,
            report: add(&ax, &ay, params)?,
        });
    }
    let (big, small) = if ax.cmp(&ay, params) == Ordering::Less {
        (ay, ax)
    } else {
        (ax, ay)
    };
    let sum = x.add(y, params);
    Ok(SignedSum::MixedSign {
        negative: sum.sign(params) == Ordering::Less,
        difference: subtract_check(&big, &small, params)?,
    })
}

/// `(j-1) . a_j ... a_1` with `a_1 = p-q` and `a_i = (p-1) - i q`, the
/// expansion of `j (p-q)/beta`.
pub fn lemma_f_expansion(j: u32, params: &Params) -> Result<DigitString> {
    let max = params.lplus_lower();
    if j == 0 || j > max {
        return Err(Error::OutOfRange {
            what: "j",
            value: i64::from(j),
            min: 1,
            max: i64::from(max),
        });
    }
    let (p, q) = (u64::from(params.p()), u64::from(params.q()));
    let fractional: Vec<u64> = (1..=u64::from(j))
        .rev()
        .map(|i| if i == 1 { p - q } else { (p - 1) - i * q })
        .collect();
    Ok(DigitString::from_parts(&[u64::from(j) - 1], &fractional))
}

/// Every admissible integer expansion with at most `digit_bound` digits, in
/// increasing order of value.
pub fn integer_expansions(digit_bound: u32, params: &Params) -> Vec<DigitString> {
    let (p, q) = (u64::from(params.p()), u64::from(params.q()));
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(digit_bound as usize);
    // `open` marks that the digits since the last `p` are all `q`.
    fn walk(
        len: usize,
        open: bool,
        current: &mut Vec<u64>,
        out: &mut Vec<DigitString>,
        p: u64,
        q: u64,
    ) {
        if current.len() == len {
            out.push(DigitString::integer(current));
            return;
        }
        let top = if open { q } else { p };
        for d in 0..=top {
            current.push(d);
            walk(len, d == p || (open && d == q), current, out, p, q);
            current.pop();
        }
    }
    walk(digit_bound as usize, false, &mut current, &mut out, p, q);
    out
}

/// A pair attaining the largest fractional part found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x: String,
    pub y: String,
    pub sum: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub p: u32,
    pub q: u32,
    pub digit_bound: u32,
    /// Ordered pairs `(x, y)` examined.
    pub pairs: u64,
    pub max_fp: u32,
    /// `fp(x + y)` to number of ordered pairs.
    pub histogram: BTreeMap<u32, u64>,
    /// `epsilon` to number of ordered pairs.
    pub epsilon_histogram: BTreeMap<u32, u64>,
    /// Sums with no `epsilon` or more than one.
    pub epsilon_failures: u64,
    pub lower_bound: u32,
    pub upper_bound: u32,
    pub witnesses: Vec<Witness>,
}

impl SearchReport {
    pub fn in_bracket(&self) -> bool {
        if self.p == self.q + 1 {
            self.max_fp == 1
        } else {
            self.lower_bound <= self.max_fp && self.max_fp <= self.upper_bound
        }
    }

    /// Whether the largest fractional part equals `floor((p-1)/q)`.
    pub fn matches_conjecture(&self) -> bool {
        self.max_fp == self.lower_bound
    }
}

const WITNESS_LIMIT: usize = 8;

#[derive(Default)]
struct Tally {
    pairs: u64,
    max_fp: u32,
    histogram: BTreeMap<u32, u64>,
    epsilon_histogram: BTreeMap<u32, u64>,
    epsilon_failures: u64,
    witnesses: Vec<(usize, usize)>,
}

impl Tally {
    fn record(&mut self, i: usize, j: usize, fp: u32, eps: Option<u32>) {
        let weight = if i == j { 1 } else { 2 };
        self.pairs += weight;
        *self.histogram.entry(fp).or_default() += weight;
        match eps {
            Some(e) => *self.epsilon_histogram.entry(e).or_default() += weight,
            None => self.epsilon_failures += weight,
        }
        if fp > self.max_fp {
            self.max_fp = fp;
            self.witnesses.clear();
        }
        if fp == self.max_fp && self.witnesses.len() < WITNESS_LIMIT {
            self.witnesses.push((i, j));
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.pairs += o.pairs;
        for (k, v) in o.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        for (k, v) in o.epsilon_histogram {
            *self.epsilon_histogram.entry(k).or_default() += v;
        }
        self.epsilon_failures += o.epsilon_failures;
        match o.max_fp.cmp(&self.max_fp) {
            Ordering::Greater => {
                self.max_fp = o.max_fp;
                self.witnesses = o.witnesses;
            }
            Ordering::Equal => {
                let room = WITNESS_LIMIT - self.witnesses.len();
                self.witnesses.extend(o.witnesses.into_iter().take(room));
            }
            Ordering::Less => {}
        }
        self
    }
}

fn pair_fp<C: Coeff>(sum: &RingElem<C>, powers: &mut Powers<C>, params: &Params) -> Checked<u32> {
    Ok(
        match try_greedy(
            &FinElem::ring(sum.clone()),
            DEFAULT_FRACTIONAL_BUDGET,
            powers,
            params,
        )? {
            ExpansionResult::Finite { expansion } => expansion.fractional_len(),
            // Sums of nonnegative beta-integers are finite; flag the pair.
            _ => u32::MAX,
        },
    )
}

/// Every beta-integer below `beta^len`, as ring elements.
struct IntegerTable {
    members: HashSet<RingElem<i128>>,
}

impl IntegerTable {
    fn new(len: u32, params: &Params) -> Option<Self> {
        let members = integer_expansions(len, params)
            .iter()
            .map(|s| {
                try_evaluate::<i128>(s, params)
                    .ok()
                    .map(|v| v.numerator().clone())
            })
            .collect::<Option<HashSet<_>>>()?;
        Some(IntegerTable { members })
    }

    /// Membership of `|v|`, valid for `|v| < beta^len`.
    fn contains(&self, v: &RingElem<i128>, params: &Params) -> Checked<bool> {
        if v.try_sign(params)? == Ordering::Less {
            Ok(self.members.contains(&v.try_neg()?))
        } else {
            Ok(self.members.contains(v))
        }
    }
}

/// `fp` and the unique `epsilon` of `x + y`, for `x, y < beta^(len-1)`
/// with `len` the table length: then `|x + y - epsilon delta| < beta^len`.
fn fast_pair(
    x: &RingElem<i128>,
    y: &RingElem<i128>,
    table: &IntegerTable,
    powers: &mut Powers<i128>,
    params: &Params,
) -> Checked<(u32, Option<u32>)> {
    let sum = x.try_add(y)?;
    let fp = pair_fp(&sum, powers, params)?;
    let d = delta::<i128>(params);
    let mut found = None;
    let mut count = 0;
    let mut shifted = sum;
    for eps in 0..=params.lplus_upper() {
        if table.contains(&shifted, params)? {
            found = Some(eps);
            count += 1;
        }
        shifted = shifted.try_sub(&d)?;
    }
    Ok((fp, found.filter(|_| count == 1)))
}

fn slow_pair(x: &RingElem, y: &RingElem, params: &Params) -> (u32, Option<u32>) {
    let sum = x + y;
    let mut powers = Powers::new();
    let fp = unchecked(pair_fp(&sum, &mut powers, params));
    let found = unchecked(try_epsilons(&sum, &mut powers, params));
    (fp, (found.len() == 1).then(|| found[0]))
}

/// Exhaustive `fp(x + y)` over all ordered pairs of beta-integers whose
/// expansions have at most `digit_bound` digits.
///
/// Pairs are split by first operand across worker threads and merged in
/// order, so the report does not depend on scheduling.
pub fn lplus_search(digit_bound: u32, params: &Params) -> Result<SearchReport> {
    if digit_bound == 0 {
        return Err(Error::OutOfRange {
            what: "digit_bound",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    let strings = integer_expansions(digit_bound, params);
    let big: Vec<RingElem> = strings
        .iter()
        .map(|s| evaluate(s, params).z().clone())
        .collect();
    // x + y < 2 beta^digit_bound < beta^(digit_bound + 1).
    let fast = IntegerTable::new(digit_bound + 1, params).and_then(|table| {
        let small = strings
            .iter()
            .map(|s| {
                try_evaluate::<i128>(s, params)
                    .ok()
                    .map(|v| v.numerator().clone())
            })
            .collect::<Option<Vec<_>>>()?;
        Some((table, small))
    });

    let tallies: Vec<Tally> = (0..strings.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            let mut powers = Powers::new();
            for j in i..strings.len() {
                let quick = fast.as_ref().and_then(|(table, small)| {
                    fast_pair(&small[i], &small[j], table, &mut powers, params).ok()
                });
                let (fp, eps) = quick.unwrap_or_else(|| slow_pair(&big[i], &big[j], params));
                t.record(i, j, fp, eps);
            }
            t
        })
        .collect();
    let total = tallies.into_iter().fold(Tally::default(), Tally::merge);
    if total.histogram.contains_key(&u32::MAX) {
        return Err(Error::InvariantViolation(format!(
            "a sum of beta-integers has no finite expansion for {params}"
        )));
    }

    let witnesses = total
        .witnesses
        .iter()
        .map(|&(i, j)| {
            let sum = FinElem::from_ring(&big[i] + &big[j]);
            let expansion = greedy_expand(&sum, DEFAULT_FRACTIONAL_BUDGET, params)?;
            Ok(Witness {
                x: strings[i].to_string(),
                y: strings[j].to_string(),
                sum: expansion.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SearchReport {
        p: params.p(),
        q: params.q(),
        digit_bound,
        pairs: total.pairs,
        max_fp: total.max_fp,
        histogram: total.histogram,
        epsilon_histogram: total.epsilon_histogram,
        epsilon_failures: total.epsilon_failures,
        lower_bound: params.lplus_lower(),
        upper_bound: params.lplus_upper(),
        witnesses,
    })
}

/// Classification of all differences `x - y`, `x >= y`, over the same
/// corpus as [`lplus_search`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DifferenceReport {
    pub pairs: u64,
    pub beta_integers: u64,
    pub periodic: u64,
    pub budget_exceeded: u64,
    /// Differences with a finite non-integer expansion.
    pub violations: u64,
}

impl DifferenceReport {
    fn merge(mut self, o: DifferenceReport) -> Self {
        self.pairs += o.pairs;
        self.beta_integers += o.beta_integers;
        self.periodic += o.periodic;
        self.budget_exceeded += o.budget_exceeded;
        self.violations += o.violations;
        self
    }
}

pub fn difference_sweep(digit_bound: u32, params: &Params) -> DifferenceReport {
    let strings = integer_expansions(digit_bound, params);
    let values: Vec<FinElem> = strings.iter().map(|s| evaluate(s, params)).collect();
    (0..values.len())
        .into_par_iter()
        .map(|j| {
            let mut r = DifferenceReport::default();
            // Strings are listed in increasing order of value.
            for i in j..values.len() {
                let diff = values[i].sub(&values[j], params);
                r.pairs += 1;
                match greedy_expand(&diff, DEFAULT_FRACTIONAL_BUDGET, params) {
                    Ok(ExpansionResult::Finite { expansion })
                        if expansion.fractional_len() == 0 =>
                    {
                        r.beta_integers += 1
                    }
                    Ok(ExpansionResult::EventuallyPeriodic { .. }) => r.periodic += 1,
                    Ok(ExpansionResult::BudgetExceeded { .. }) => r.budget_exceeded += 1,
                    _ => r.violations += 1,
                }
            }
            r
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(DifferenceReport::default(), DifferenceReport::merge)
}

/// A sum realising the lower bound on the fractional part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerBoundWitness {
    /// Where `w_{T+1}` starts inside the fixed point `u`.
    pub factor_start: usize,
    pub factor_len: usize,
    /// The beta-integer at `factor_start`.
    pub x: FinElem,
    /// The beta-integer at `factor_start + factor_len`.
    pub y: FinElem,
    /// The beta-integer at `factor_len`, coded by the prefix of `u`.
    pub z: FinElem,
    pub sum: AdditionReport,
    pub fp_value: u32,
}

/// Builds `x`, `z` from an occurrence of `w_{T+1}` in `u` and the prefix of
/// the same length, so that `x + z = y + T (p-q)/beta`.
///
/// Occurrences are tracked through the substitution: if `w_{n-1}` starts at
/// `i >= 1`, then `w_n = B phi(w_{n-1})` starts one letter before
/// `phi(u[..i])` ends.
pub fn lower_bound_witness(params: &Params) -> Result<LowerBoundWitness> {
    if params.is_unit() {
        return Err(Error::UnsupportedParams(format!(
            "{params}: the lower bound is trivial when q = p - 1"
        )));
    }
    let big_t = params.balance_bound();
    let n_max = big_t + 1;
    let factor_len = words::w_n_len(n_max, params)
        .and_then(|l| usize::try_from(l).ok())
        .filter(|&l| l <= words::MATERIALIZATION_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("w_{n_max} for {params}")))?;
    let (p, q) = (params.p() as usize, params.q() as usize);

    let mut stream = words::WordStream::fixed_point(params);
    // `w_1 = B` first occurs after `A^p`.
    let mut start = p;
    for _ in 2..=n_max {
        let prefix = stream.prefix(start)?;
        let b = words::count(prefix, Letter::B);
        let a = start - b;
        start = a * (p + 1) + b * (q + 1) - 1;
    }
    let end = start + factor_len;
    let u = stream.prefix(end)?;
    let factor = words::w_n(n_max, params)?;
    if u[start..end] != factor[..] {
        return Err(Error::InvariantViolation(format!(
            "w_{n_max} not found at {start} for {params}"
        )));
    }
    let x = words::beta_integer_of_word(&u[..start], params);
    let y = words::beta_integer_of_word(&u[..end], params);
    let z = words::beta_integer_of_word(&u[..factor_len], params);

    let shift = FinElem::from_ring(delta::<num_bigint::BigInt>(params).mul_int(big_t));
    if x.add(&z, params) != y.add(&shift, params) {
        return Err(Error::InvariantViolation(format!(
            "x + z != y + T delta for {params}"
        )));
    }
    let sum = add(&x, &z, params)?;
    Ok(LowerBoundWitness {
        factor_start: start,
        factor_len,
        fp_value: sum.fp,
        x,
        y,
        z,
        sum,
    })
}

/// `fp(x + y)` of a nonnegative sum; convenience for callers holding strings.
pub fn fp_of_sum(x: &DigitString, y: &DigitString, params: &Params) -> Result<u32> {
    let sum = evaluate(x, params).add(&evaluate(y, params), params);
    match greedy_expand(&sum, DEFAULT_FRACTIONAL_BUDGET, params)? {
        ExpansionResult::Finite { expansion } => fp(&expansion, params),
        other => Err(Error::InvariantViolation(format!(
            "{x} + {y} expands to {other}"
        ))),
    }
}
