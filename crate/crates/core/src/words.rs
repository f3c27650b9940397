//! The substitution `A -> A^p B`, `B -> A^q B`, its fixed point `u`, the
//! companion word `w = B phi(w)`, the defect sequence `D_n`, and abelian
//! balance scans.
//!
//! Letters code the gaps between consecutive nonnegative beta-integers:
//! `A` is a gap of `1`, `B` a gap of `beta - p`.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::ring::{FinElem, RingElem};

/// Largest word the library will materialize, in letters.
pub const MATERIALIZATION_LIMIT: usize = 1 << 26;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
        }
    }

    /// The gap this letter codes.
    pub fn gap(self, params: &Params) -> RingElem {
        match self {
            Letter::A => RingElem::one(),
            Letter::B => RingElem::short_gap(params),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

pub fn word_to_string(w: &[Letter]) -> String {
    w.iter().map(|l| l.as_char()).collect()
}

pub fn parse_word(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .map(|c| match c {
            'A' => Ok(Letter::A),
            'B' => Ok(Letter::B),
            _ => Err(Error::Parse {
                what: "word",
                input: s.to_string(),
            }),
        })
        .collect()
}

pub fn count(w: &[Letter], letter: Letter) -> usize {
    w.iter().filter(|&&l| l == letter).count()
}

fn push_image(out: &mut Vec<Letter>, letter: Letter, params: &Params) {
    let run = match letter {
        Letter::A => params.p(),
        Letter::B => params.q(),
    };
    out.extend(std::iter::repeat_n(Letter::A, run as usize));
    out.push(Letter::B);
}

/// `phi(w)`, the concatenation of the letter images.
pub fn substitute(w: &[Letter], params: &Params) -> Vec<Letter> {
    let mut out = Vec::new();
    for &l in w {
        push_image(&mut out, l, params);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordKind {
    /// The fixed point `u = phi(u)`.
    FixedPoint,
    /// The companion `w = B phi(w)`.
    Companion,
}

/// Lazily materialized prefix of `u` or `w`.
///
/// Both words are generated by reading themselves: once the buffer holds
/// `head . phi(buf[..read])`, appending `phi(buf[read])` keeps that form, and
/// every image is at least two letters long so reading never catches up.
#[derive(Clone, Debug)]
pub struct WordStream {
    params: Params,
    kind: WordKind,
    buf: Vec<Letter>,
    read: usize,
    limit: usize,
    cursor: usize,
}

impl WordStream {
    pub fn new(kind: WordKind, params: &Params) -> Self {
        let mut buf = Vec::new();
        if kind == WordKind::Companion {
            buf.push(Letter::B);
        }
        let first = match kind {
            WordKind::FixedPoint => Letter::A,
            WordKind::Companion => Letter::B,
        };
        push_image(&mut buf, first, params);
        WordStream {
            params: *params,
            kind,
            buf,
            read: 1,
            limit: MATERIALIZATION_LIMIT,
            cursor: 0,
        }
    }

    pub fn fixed_point(params: &Params) -> Self {
        Self::new(WordKind::FixedPoint, params)
    }

    pub fn companion(params: &Params) -> Self {
        Self::new(WordKind::Companion, params)
    }

    /// Caps how many letters may be materialized.
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = limit;
        self
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn materialized(&self) -> usize {
        self.buf.len()
    }

    fn ensure(&mut self, n: usize) -> Result<()> {
        if n > self.limit {
            return Err(Error::TooLarge(format!(
                "{n} letters requested, limit is {}",
                self.limit
            )));
        }
        while self.buf.len() < n {
            let l = self.buf[self.read];
            push_image(&mut self.buf, l, &self.params);
            self.read += 1;
        }
        Ok(())
    }

    /// The first `n` letters.
    pub fn prefix(&mut self, n: usize) -> Result<&[Letter]> {
        self.ensure(n)?;
        Ok(&self.buf[..n])
    }
}

impl Iterator for WordStream {
    type Item = Letter;

    /// Stops only when the materialization limit is reached.
    fn next(&mut self) -> Option<Letter> {
        self.ensure(self.cursor + 1).ok()?;
        self.cursor += 1;
        Some(self.buf[self.cursor - 1])
    }
}

/// First `n` letters of the fixed point `u`.
pub fn u_prefix(n: usize, params: &Params) -> Result<Vec<Letter>> {
    Ok(WordStream::fixed_point(params).prefix(n)?.to_vec())
}

/// First `n` letters of the companion word `w`.
pub fn w_prefix(n: usize, params: &Params) -> Result<Vec<Letter>> {
    Ok(WordStream::companion(params).prefix(n)?.to_vec())
}

/// `(|w_n|_A, |w_n|_B)` for `n >= 1`, or `None` on overflow.
pub fn w_n_counts(n: u32, params: &Params) -> Option<(u64, u64)> {
    if n == 0 {
        return None;
    }
    let (p, q) = (u64::from(params.p()), u64::from(params.q()));
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 1..n {
        let na = p.checked_mul(a)?.checked_add(q.checked_mul(b)?)?;
        let nb = a.checked_add(b)?.checked_add(1)?;
        (a, b) = (na, nb);
    }
    Some((a, b))
}

/// `|w_n|`, or `None` on overflow.
pub fn w_n_len(n: u32, params: &Params) -> Option<u64> {
    w_n_counts(n, params).and_then(|(a, b)| a.checked_add(b))
}

fn checked_len(n: u32, params: &Params) -> Result<usize> {
    w_n_len(n, params)
        .and_then(|l| usize::try_from(l).ok())
        .filter(|&l| l <= MATERIALIZATION_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("w_{n} for {params}")))
}

/// The companion words `w_1 = B`, `w_n = B phi(w_{n-1})`.
pub fn w_n(n: u32, params: &Params) -> Result<Vec<Letter>> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    checked_len(n, params)?;
    let mut w = vec![Letter::B];
    for _ in 1..n {
        let mut next = vec![Letter::B];
        next.extend(substitute(&w, params));
        w = next;
    }
    Ok(w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DMethod {
    /// `|w_n|_B - |u_(n)|_B` counted on materialized words.
    BruteForce,
    /// `D_{n+1} = 1 + |v|_B`, `v` the suffix of `phi(u_(n))` of length
    /// `(p-q) D_n - 1`.
    Recurrence,
    /// Piecewise linear in `n` with knees at `t` and `T + 1`.
    ClosedForm,
}

/// `D_n` for one `n >= 1` from the piecewise formula.
pub fn d_closed_form(n: u32, params: &Params) -> u32 {
    let t = params.defect_knee();
    let big_t = params.balance_bound();
    if n <= t {
        n
    } else if n <= big_t + 1 {
        n - 1
    } else {
        big_t
    }
}

/// `|v|_B` for `v` the suffix of `phi(prefix)` of length `len`.
fn suffix_image_b_count(prefix: &[Letter], len: usize, params: &Params) -> usize {
    let mut remaining = len;
    let mut bs = 0;
    for &l in prefix.iter().rev() {
        if remaining == 0 {
            break;
        }
        let image_len = match l {
            Letter::A => params.p(),
            Letter::B => params.q(),
        } as usize
            + 1;
        // The image ends in its only B.
        bs += 1;
        if remaining <= image_len {
            break;
        }
        remaining -= image_len;
    }
    bs
}

/// `D_1, ..., D_{n_max}` by the chosen method.
pub fn d_sequence(n_max: u32, method: DMethod, params: &Params) -> Result<Vec<u32>> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    match method {
        DMethod::ClosedForm => Ok((1..=n_max).map(|n| d_closed_form(n, params)).collect()),
        DMethod::BruteForce => {
            let longest = checked_len(n_max, params)?;
            let u = u_prefix(longest, params)?;
            let mut out = Vec::with_capacity(n_max as usize);
            let mut w = vec![Letter::B];
            for n in 1..=n_max {
                if n > 1 {
                    let mut next = vec![Letter::B];
                    next.extend(substitute(&w, params));
                    w = next;
                }
                let d = count(&w, Letter::B) as i64 - count(&u[..w.len()], Letter::B) as i64;
                out.push(u32::try_from(d).map_err(|_| {
                    Error::InvariantViolation(format!("negative D_{n} = {d} for {params}"))
                })?);
            }
            Ok(out)
        }
        DMethod::Recurrence => {
            let longest = checked_len(n_max, params)?;
            let u = u_prefix(longest, params)?;
            let norm = params.norm() as usize;
            let mut out = vec![1u32];
            for n in 1..n_max {
                let len_n = w_n_len(n, params).expect("bounded by longest") as usize;
                let d = *out.last().expect("nonempty") as usize;
                let v_len = (norm * d).saturating_sub(1);
                let next = 1 + suffix_image_b_count(&u[..len_n], v_len, params);
                out.push(next as u32);
            }
            Ok(out)
        }
    }
}

/// One row of the `D_n` table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DRow {
    pub n: u32,
    pub bruteforce: u32,
    pub recurrence: u32,
    pub closed_form: u32,
}

impl DRow {
    pub fn agrees(&self) -> bool {
        self.bruteforce == self.recurrence && self.recurrence == self.closed_form
    }
}

pub fn d_table(n_max: u32, params: &Params) -> Result<Vec<DRow>> {
    let brute = d_sequence(n_max, DMethod::BruteForce, params)?;
    let rec = d_sequence(n_max, DMethod::Recurrence, params)?;
    let closed = d_sequence(n_max, DMethod::ClosedForm, params)?;
    Ok((0..n_max as usize)
        .map(|i| DRow {
            n: i as u32 + 1,
            bruteforce: brute[i],
            recurrence: rec[i],
            closed_form: closed[i],
        })
        .collect())
}

/// Largest `n` with `|w_n| <= max_len`.
pub fn max_n_within(max_len: u64, params: &Params) -> u32 {
    let mut n = 1;
    while w_n_len(n + 1, params).is_some_and(|l| l <= max_len) {
        n += 1;
    }
    n
}

/// Suffixes that `u_(n)`, the prefix of `u` of length `|w_n|`, must end with.
pub fn claimed_suffixes(n: u32, params: &Params) -> Vec<Vec<Letter>> {
    let (p, q) = (params.p() as usize, params.q() as usize);
    let t = params.defect_knee();
    let big_t = params.balance_bound();
    let n_us = n as usize;
    let a_run = |k: usize| vec![Letter::A; k];
    let mut out = Vec::new();
    if n <= t {
        out.push(a_run((n_us - 1) * q + n_us));
    }
    if t < n && n <= big_t + 1 {
        let mut s = a_run(p);
        s.push(Letter::B);
        s.extend(a_run((n_us - 1) * (q + 1) - p));
        out.push(s);
    }
    if n > big_t {
        out.push(a_run(big_t as usize - 1));
    }
    out
}

/// Whether `u_(n)` ends with every suffix in [`claimed_suffixes`].
pub fn suffix_form_check(n: u32, params: &Params) -> Result<bool> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "n",
            value: 0,
            min: 1,
            max: i64::MAX,
        });
    }
    let len = checked_len(n, params)?;
    let u = u_prefix(len, params)?;
    Ok(claimed_suffixes(n, params).iter().all(|s| u.ends_with(s)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowStats {
    pub window: usize,
    pub min_a: usize,
    pub max_a: usize,
    pub spread: usize,
    /// `|u[..window]|_A`.
    pub prefix_a: usize,
    /// `|w[..window]|_B`.
    pub companion_b: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub params: Params,
    pub prefix_len: usize,
    pub max_window: usize,
    pub windows: Vec<WindowStats>,
    pub max_spread: usize,
}

impl BalanceReport {
    /// Prefixes of `u` carry the most `A`s among scanned factors.
    pub fn prefix_a_maximal(&self) -> bool {
        self.windows.iter().all(|w| w.prefix_a == w.max_a)
    }

    /// Prefixes of `w` carry at least as many `B`s as any scanned factor.
    pub fn companion_b_maximal(&self) -> bool {
        self.windows
            .iter()
            .all(|w| w.companion_b >= w.window - w.min_a)
    }

    /// Smallest window whose spread equals `c`.
    pub fn first_window_with_spread(&self, c: usize) -> Option<usize> {
        self.windows
            .iter()
            .find(|w| w.spread == c)
            .map(|w| w.window)
    }
}

/// Letter counts of every factor of `u[..prefix_len]` of each length up to
/// `max_window`, computed from prefix sums.
pub fn balance_scan(
    prefix_len: usize,
    max_window: usize,
    params: &Params,
) -> Result<BalanceReport> {
    let u = u_prefix(prefix_len, params)?;
    let w = w_prefix(max_window.min(prefix_len), params)?;
    let mut sums = Vec::with_capacity(prefix_len + 1);
    sums.push(0u32);
    for &l in &u {
        let last = *sums.last().expect("nonempty");
        sums.push(last + u32::from(l == Letter::A));
    }
    let mut w_sums = Vec::with_capacity(w.len() + 1);
    w_sums.push(0usize);
    for &l in &w {
        let last = *w_sums.last().expect("nonempty");
        w_sums.push(last + usize::from(l == Letter::B));
    }
    let top = max_window.min(prefix_len);
    let windows: Vec<WindowStats> = (1..=top)
        .into_par_iter()
        .map(|k| {
            let (mut lo, mut hi) = (u32::MAX, 0u32);
            for (end, start) in sums[k..].iter().zip(&sums) {
                let a = end - start;
                lo = lo.min(a);
                hi = hi.max(a);
            }
            WindowStats {
                window: k,
                min_a: lo as usize,
                max_a: hi as usize,
                spread: (hi - lo) as usize,
                prefix_a: sums[k] as usize,
                companion_b: w_sums[k],
            }
        })
        .collect();
    let max_spread = windows.iter().map(|w| w.spread).max().unwrap_or(0);
    Ok(BalanceReport {
        params: *params,
        prefix_len,
        max_window,
        windows,
        max_spread,
    })
}

/// `|prefix|_A * 1 + |prefix|_B * (beta - p)`.
pub fn beta_integer_of_word(word: &[Letter], params: &Params) -> FinElem {
    let b = count(word, Letter::B) as i64;
    let a = word.len() as i64 - b;
    FinElem::from_ring(RingElem::new(a - i64::from(params.p()) * b, b))
}

/// The `n`-th nonnegative beta-integer, read off the gaps coded by `u`.
pub fn beta_integer_from_prefix(n: usize, params: &Params) -> Result<FinElem> {
    Ok(beta_integer_of_word(&u_prefix(n, params)?, params))
}

/// Where a pattern was looked for in a materialized prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorStatus {
    Found { index: usize },
    NotFoundWithinBudget,
}

pub(crate) fn find(hay: &[Letter], needle: &[Letter]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

/// Splits `v` into images `A^p B` / `A^q B` and returns the preimage.
fn desubstitute(v: &[Letter], params: &Params) -> Option<Vec<Letter>> {
    let (p, q) = (params.p() as usize, params.q() as usize);
    let mut out = Vec::new();
    let mut run = 0;
    for &l in v {
        match l {
            Letter::A => run += 1,
            Letter::B => {
                out.push(match run {
                    r if r == p => Letter::A,
                    r if r == q => Letter::B,
                    _ => return None,
                });
                run = 0;
            }
        }
    }
    (run == 0).then_some(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub params: Params,
    pub prefix_budget: usize,
    /// Lengths of maximal `A` runs between two `B`s.
    pub a_run_lengths: BTreeSet<usize>,
    pub runs_ok: bool,
    /// Position of each `w_n` that fits in the budget inside `u`.
    pub companion_factors: Vec<(u32, FactorStatus)>,
    /// `w_{n+1} = w_n u' B` with `u'` a prefix of `u`.
    pub companion_recursion_ok: bool,
    /// `B v B` factors whose `v B` was checked to be `phi` of a factor.
    pub preimages_checked: usize,
    pub preimages_ok: bool,
    /// Prefixes `w' B` of `w` checked to come from a prefix of `w`.
    pub companion_preimages_checked: usize,
    pub companion_preimages_ok: bool,
    /// `q = 1` lies outside the stated hypothesis `p > q > 1` of the word
    /// results.
    pub outside_hypothesis: bool,
}

impl StructureReport {
    /// True when every check passed; factors not found within budget count
    /// as inconclusive, not as failures.
    pub fn passed(&self) -> bool {
        self.runs_ok
            && self.companion_recursion_ok
            && self.preimages_ok
            && self.companion_preimages_ok
    }
}

/// Structural facts about `u` and `w`, checked on materialized prefixes.
pub fn structure_checks(prefix_budget: usize, params: &Params) -> Result<StructureReport> {
    let u = u_prefix(prefix_budget, params)?;
    let w = w_prefix(prefix_budget, params)?;
    let (p, q) = (params.p() as usize, params.q() as usize);

    let b_positions: Vec<usize> = (0..u.len()).filter(|&i| u[i] == Letter::B).collect();
    let a_run_lengths: BTreeSet<usize> = b_positions.windows(2).map(|w| w[1] - w[0] - 1).collect();
    let runs_ok = a_run_lengths.iter().all(|&k| k == p || k == q);

    let mut companion_factors = Vec::new();
    let mut companion_recursion_ok = true;
    let mut n = 1;
    while let Some(len) = w_n_len(n, params).filter(|&l| l as usize <= prefix_budget) {
        let wn = &w[..len as usize];
        let status = match find(&u, wn) {
            Some(index) => FactorStatus::Found { index },
            None => FactorStatus::NotFoundWithinBudget,
        };
        companion_factors.push((n, status));
        if let Some(next) = w_n_len(n + 1, params).filter(|&l| l as usize <= prefix_budget) {
            let middle = &w[len as usize..next as usize - 1];
            companion_recursion_ok &= w[next as usize - 1] == Letter::B && u.starts_with(middle);
        }
        n += 1;
    }

    // B v B factors spanning up to four gaps between B's.
    let mut preimages_checked = 0;
    let mut preimages_ok = true;
    let sample_starts = b_positions.len().min(256);
    for (i, &start) in b_positions.iter().enumerate().take(sample_starts) {
        for &end in b_positions.iter().skip(i + 1).take(4) {
            let vb = &u[start + 1..=end];
            preimages_checked += 1;
            preimages_ok &= desubstitute(vb, params).is_some_and(|pre| find(&u, &pre).is_some());
        }
    }

    let mut companion_preimages_checked = 0;
    let mut companion_preimages_ok = true;
    for end in (1..w.len()).filter(|&i| w[i] == Letter::B).take(256) {
        companion_preimages_checked += 1;
        companion_preimages_ok &=
            desubstitute(&w[1..=end], params).is_some_and(|pre| w.starts_with(&pre));
    }

    Ok(StructureReport {
        params: *params,
        prefix_budget,
        a_run_lengths,
        runs_ok,
        companion_factors,
        companion_recursion_ok,
        preimages_checked,
        preimages_ok,
        companion_preimages_checked,
        companion_preimages_ok,
        outside_hypothesis: params.q() == 1,
    })
}

/// Exact identities for the incidence matrix `((p, 1), (q, 1))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceReport {
    pub trace: u32,
    pub determinant: u32,
    /// `beta + delta = trace` with `delta = (p-q)/beta`.
    pub trace_matches: bool,
    /// `beta * delta = determinant`.
    pub determinant_matches: bool,
    /// `0 < delta < 1`.
    pub second_eigenvalue_in_unit_interval: bool,
}

impl IncidenceReport {
    pub fn passed(&self) -> bool {
        self.trace_matches && self.determinant_matches && self.second_eigenvalue_in_unit_interval
    }
}

pub fn incidence_check(params: &Params) -> IncidenceReport {
    let (p, q) = (params.p(), params.q());
    // Trace and determinant of ((p, 1), (q, 1)).
    let trace = p + 1;
    let determinant = p - q;
    let beta = RingElem::beta();
    let delta = FinElem::new(RingElem::from_int(determinant), 1, params);
    let beta_f = FinElem::from_ring(beta.clone());
    let sum = beta_f.add(&delta, params);
    let product = delta.times_beta_pow(1, params);
    let one = FinElem::from_int(1);
    IncidenceReport {
        trace,
        determinant,
        trace_matches: sum == FinElem::from_int(trace),
        determinant_matches: product == FinElem::from_int(determinant),
        second_eigenvalue_in_unit_interval: delta.sign(params).is_gt()
            && delta.cmp(&one, params).is_lt(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p52() -> Params {
        Params::new(5, 2).unwrap()
    }

    fn word(s: &str) -> Vec<Letter> {
        parse_word(s).unwrap()
    }

    #[test]
    fn substitution_examples() {
        let p = p52();
        assert_eq!(substitute(&word("A"), &p), word("AAAAAB"));
        assert_eq!(substitute(&word("B"), &p), word("AAB"));
        assert!(substitute(&[], &p).is_empty());
    }

    #[test]
    fn prefix_examples() {
        let p = p52();
        assert_eq!(word_to_string(&u_prefix(1, &p).unwrap()), "A");
        assert_eq!(word_to_string(&u_prefix(7, &p).unwrap()), "AAAAABA");
        assert_eq!(word_to_string(&u_prefix(12, &p).unwrap()), "AAAAABAAAAAB");
    }

    #[test]
    fn fixed_point_is_fixed() {
        let p = p52();
        let u = u_prefix(5000, &p).unwrap();
        let image = substitute(&u[..800], &p);
        assert_eq!(&image[..], &u[..image.len()]);
    }

    #[test]
    fn companion_satisfies_its_equation() {
        let p = Params::new(4, 1).unwrap();
        let w = w_prefix(5000, &p).unwrap();
        let mut rhs = vec![Letter::B];
        rhs.extend(substitute(&w[..1000], &p));
        assert_eq!(&rhs[..], &w[..rhs.len()]);
    }

    #[test]
    fn stream_iterates_and_limits() {
        let p = p52();
        let first: String = WordStream::fixed_point(&p)
            .take(7)
            .map(|l| l.as_char())
            .collect();
        assert_eq!(first, "AAAAABA");
        let mut capped = WordStream::fixed_point(&p).with_limit(10);
        assert!(capped.prefix(10).is_ok());
        assert!(matches!(capped.prefix(11), Err(Error::TooLarge(_))));
        assert_eq!(WordStream::fixed_point(&p).with_limit(3).count(), 3);
    }

    #[test]
    fn companion_word_examples() {
        let p = p52();
        assert_eq!(word_to_string(&w_n(1, &p).unwrap()), "B");
        assert_eq!(word_to_string(&w_n(2, &p).unwrap()), "BAAB");
        let w3 = w_n(3, &p).unwrap();
        assert_eq!(word_to_string(&w3), "BAABAAAAABAAAAABAAB");
        assert_eq!(w3.len(), 19);
        assert_eq!(w_n_len(3, &p), Some(19));
        assert!(w_n(0, &p).is_err());
    }

    #[test]
    fn d_sequence_examples() {
        let p = p52();
        for m in [
            DMethod::BruteForce,
            DMethod::Recurrence,
            DMethod::ClosedForm,
        ] {
            assert_eq!(d_sequence(5, m, &p).unwrap(), vec![1, 2, 2, 2, 2], "{m:?}");
        }
        let p = Params::new(4, 1).unwrap();
        for m in [
            DMethod::BruteForce,
            DMethod::Recurrence,
            DMethod::ClosedForm,
        ] {
            assert_eq!(
                d_sequence(6, m, &p).unwrap(),
                vec![1, 2, 2, 3, 3, 3],
                "{m:?}"
            );
        }
    }

    #[test]
    fn suffix_examples() {
        let p = p52();
        assert_eq!(claimed_suffixes(1, &p), vec![word("A")]);
        assert_eq!(claimed_suffixes(2, &p), vec![word("AAAA")]);
        assert_eq!(claimed_suffixes(3, &p), vec![word("AAAAABA"), word("A")]);
        for n in 1..=6 {
            assert!(suffix_form_check(n, &p).unwrap(), "n={n}");
        }
    }

    #[test]
    fn balance_small() {
        let p = p52();
        let r = balance_scan(10_000, 500, &p).unwrap();
        assert_eq!(r.max_spread, 2);
        assert_eq!(r.windows[0].spread, 1);
        assert!(r.prefix_a_maximal());
        assert!(r.companion_b_maximal());
        let r = balance_scan(10_000, 500, &Params::new(4, 1).unwrap()).unwrap();
        assert_eq!(r.max_spread, 3);
    }

    #[test]
    fn beta_integers_from_prefixes() {
        let p = p52();
        assert_eq!(beta_integer_from_prefix(0, &p).unwrap(), FinElem::zero());
        assert_eq!(
            beta_integer_from_prefix(6, &p).unwrap(),
            FinElem::from_ring(RingElem::beta())
        );
        assert_eq!(
            beta_integer_from_prefix(7, &p).unwrap(),
            FinElem::from_ring(RingElem::new(1, 1))
        );
    }

    #[test]
    fn structure_examples() {
        let r = structure_checks(10_000, &p52()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.a_run_lengths, BTreeSet::from([2, 5]));
        assert!(!r.outside_hypothesis);
        assert!(matches!(
            r.companion_factors[1],
            (2, FactorStatus::Found { .. })
        ));

        let r = structure_checks(10_000, &Params::new(4, 1).unwrap()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.a_run_lengths, BTreeSet::from([1, 4]));
        assert!(r.outside_hypothesis);

        let u = u_prefix(1000, &p52()).unwrap();
        assert!(find(&u, &word("BAAB")).is_some());
    }

    #[test]
    fn incidence_identities() {
        for params in Params::full_grid(2, 9) {
            assert!(incidence_check(&params).passed(), "{params}");
        }
    }
}
