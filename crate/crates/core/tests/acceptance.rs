//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines print in order.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use betanum::digits::{evaluate, normalize_rewrite};
use betanum::expansion::{greedy_expand, ExpansionResult};
use betanum::words::{self, Letter};
use betanum::zbeta::{self, SearchReport};
use betanum::{verify, DigitString, FinElem, Params, RingElem};
use common::{ds, Oracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const BUDGET: u32 = 64;
const LPLUS_P_MAX: u32 = 7;
const LPLUS_DIGITS: u32 = 4;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn grid() -> Vec<Params> {
    Params::full_grid(2, 20)
}

fn fails(params: &Params) -> String {
    format!("({},{})", params.p(), params.q())
}

fn summarize(failures: &[String], checked: usize) -> String {
    if failures.is_empty() {
        format!("{checked} pairs")
    } else {
        format!("{checked} pairs, failing {}", failures.join(" "))
    }
}

fn rewrite_example() -> Outcome {
    let grid: Vec<Params> = grid().into_iter().filter(|p| p.q() + 2 <= p.p()).collect();
    let mut failures = Vec::new();
    for params in &grid {
        let (p, q) = (u64::from(params.p()), u64::from(params.q()));
        let got = normalize_rewrite(&DigitString::integer(&[p + 2, q, q + 1]), params);
        if got != DigitString::from_parts(&[1, 2, 0, 0], &[p - q]) {
            failures.push(fails(params));
        }
    }
    outcome(failures.is_empty(), summarize(&failures, grid.len()))
}

fn rule_identities() -> Outcome {
    let mut failures = Vec::new();
    for params in grid() {
        let o = Oracle::new(&params);
        let (p, q, n) = (
            u64::from(params.p()),
            u64::from(params.q()),
            u64::from(params.norm()),
        );
        let mut pairs = vec![(
            DigitString::integer(&[p + 1]),
            DigitString::from_parts(&[1, 0], &[n]),
        )];
        for s in 0..=6 {
            let lhs: Vec<u64> = [vec![p], vec![q; s], vec![q + 1]].concat();
            let rhs: Vec<u64> = [vec![1], vec![0; s + 2]].concat();
            pairs.push((
                DigitString::integer(&lhs),
                DigitString::from_parts(&rhs, &[n]),
            ));
        }
        let ok = pairs.iter().all(|(l, r)| {
            // The right side carries one fractional digit: compare beta * value.
            let (lv, _) = o.scaled_value(&l.shifted(1));
            let (rv, _) = o.scaled_value(&r.shifted(1));
            evaluate(l, &params) == evaluate(r, &params) && lv == rv
        });
        if !ok {
            failures.push(fails(&params));
        }
    }
    outcome(failures.is_empty(), summarize(&failures, grid().len()))
}

fn random_digits(rng: &mut ChaCha8Rng, params: &Params) -> DigitString {
    let len = rng.gen_range(1..=8);
    let top = 2 * u64::from(params.p()) + 2;
    let digits = (0..len).map(|_| rng.gen_range(0..=top)).collect();
    DigitString::new(digits, rng.gen_range(-2..=7))
}

fn rewrite_oracle() -> Outcome {
    let pairs = [(3, 1), (4, 1), (4, 2), (5, 2), (5, 3), (7, 2), (9, 4)];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    let mut samples = 0;
    for (p, q) in pairs {
        let params = Params::new(p, q).unwrap();
        let o = Oracle::new(&params);
        for _ in 0..10_000 {
            let d = random_digits(&mut rng, &params);
            let rewritten = normalize_rewrite(&d, &params);
            let greedy = greedy_expand(&evaluate(&d, &params), BUDGET, &params).unwrap();
            let reference = o.greedy_string(&d, BUDGET);
            if greedy.finite() != Some(&rewritten) || reference.as_ref() != Some(&rewritten) {
                mismatches += 1;
            }
            samples += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("{samples} samples, {mismatches} mismatches"),
    )
}

fn add_beta_power() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0u64;
    let sweeps: Vec<(Params, bool, String)> = grid()
        .into_par_iter()
        .map(|params| {
            let (ok, detail) = verify::add_beta_power_sweep(&params, 4, 4);
            (params, ok, detail)
        })
        .collect();
    for (params, ok, detail) in sweeps {
        cases += detail
            .split_whitespace()
            .find_map(|t| t.strip_prefix("cases="))
            .and_then(|c| c.parse::<u64>().ok())
            .unwrap_or(0);
        if !ok {
            failures.push(fails(&params));
        }
    }
    // Independent reference on the smaller pairs, where it is cheap.
    let mut reference_cases = 0u64;
    for params in Params::full_grid(2, 10) {
        let o = Oracle::new(&params);
        let norm = u64::from(params.norm());
        for x in zbeta::integer_expansions(4, &params) {
            let (v, _) = o.scaled_value(&x);
            for l in 0..=4 {
                let pw = o.power(l);
                let expected = o.greedy((v.0 + pw.0, v.1 + pw.1), 0, BUDGET);
                let got = zbeta::add_beta_power(&x, l, &params).ok();
                let frac_ok = got.as_ref().is_some_and(|g| {
                    g.fractional_len() == 0 || g.fractional_part().digits() == [norm]
                });
                if got != expected || !frac_ok {
                    failures.push(format!("{}:{x}+b^{l}", fails(&params)));
                }
                reference_cases += 1;
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{cases} cases against greedy, {reference_cases} against reference; {}",
            summarize(&failures, grid().len())
        ),
    )
}

fn defect_sequence() -> Outcome {
    let mut failures = Vec::new();
    for params in grid() {
        let n_max = words::max_n_within(200_000, &params);
        match words::d_table(n_max, &params) {
            Ok(rows) if rows.iter().all(|r| r.agrees()) => {}
            _ => failures.push(fails(&params)),
        }
    }
    let prefix = |p, q, n| {
        let params = Params::new(p, q).unwrap();
        words::d_table(n, &params)
            .unwrap()
            .iter()
            .map(|r| r.bruteforce)
            .collect::<Vec<_>>()
    };
    let p52 = prefix(5, 2, 6);
    let p41 = prefix(4, 1, 6);
    let known = p52 == [1, 2, 2, 2, 2, 2] && p41 == [1, 2, 2, 3, 3, 3];
    outcome(
        failures.is_empty() && known,
        format!(
            "(5,2) D={p52:?} (4,1) D={p41:?}; {}",
            summarize(&failures, grid().len())
        ),
    )
}

fn balance() -> Outcome {
    let mut failures = Vec::new();
    let (mut attained, mut required) = (0, 0);
    let scans: Vec<(Params, bool, String)> = grid()
        .into_par_iter()
        .map(|params| {
            let (ok, detail) = verify::balance(&params, 100_000, 2_000);
            (params, ok, detail)
        })
        .collect();
    for (params, ok, detail) in scans {
        attained += usize::from(detail.contains("attained=true"));
        required += usize::from(!detail.contains("required_from=none"));
        if !ok {
            failures.push(format!("{}[{detail}]", fails(&params)));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "bound attained on {attained}, required on {required}; {}",
            summarize(&failures, grid().len())
        ),
    )
}

fn lplus_reports() -> Vec<SearchReport> {
    Params::full_grid(2, LPLUS_P_MAX)
        .iter()
        .map(|params| zbeta::lplus_search(LPLUS_DIGITS, params).unwrap())
        .collect()
}

fn lplus_bracket(reports: &[SearchReport]) -> Outcome {
    let mut failures = Vec::new();
    let mut out_of_scope = Vec::new();
    let mut conjecture = 0;
    for r in reports {
        let params = Params::new(r.p, r.q).unwrap();
        let lower_applies = params.is_unit() || verify::witness_within(&params, LPLUS_DIGITS);
        if !lower_applies {
            out_of_scope.push(format!("{}:{}", fails(&params), r.max_fp));
        }
        if r.max_fp > r.upper_bound || (lower_applies && !r.in_bracket()) {
            failures.push(format!("{}:{}", fails(&params), r.max_fp));
        }
        conjecture += usize::from(r.matches_conjecture());
    }
    outcome(
        failures.is_empty(),
        format!(
            "p<={LPLUS_P_MAX} digits<={LPLUS_DIGITS}; conjecture matched on {conjecture}/{}; \
             lower-bound witness beyond digit bound for {}; {}",
            reports.len(),
            if out_of_scope.is_empty() {
                "none".into()
            } else {
                out_of_scope.join(" ")
            },
            summarize(&failures, reports.len())
        ),
    )
}

fn lemma_f() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for params in grid() {
        let o = Oracle::new(&params);
        for j in 1..=params.lplus_lower() {
            let got = zbeta::lemma_f_expansion(j, &params).unwrap();
            let value = FinElem::new(RingElem::from_int(j * params.norm()), 1, &params);
            let reference = o.greedy((i128::from(j * params.norm()), 0), 1, BUDGET);
            if evaluate(&got, &params) != value
                || got.fractional_len() != j
                || reference.as_ref() != Some(&got)
            {
                failures.push(format!("{}:j={j}", fails(&params)));
            }
            cases += 1;
        }
    }
    outcome(
        failures.is_empty(),
        format!("{cases} cases; {}", summarize(&failures, grid().len())),
    )
}

fn enumeration() -> Outcome {
    const COUNT: usize = 10_000;
    let mut failures = Vec::new();
    for params in grid() {
        let (values, letters) = zbeta::enumerate_with_gaps(COUNT, &params).unwrap();
        let u = words::u_prefix(COUNT - 1, &params).unwrap();
        let one = FinElem::from_int(1);
        let short = FinElem::from_ring(RingElem::short_gap(&params));
        let mut ok = values.len() == COUNT && letters == u && values[0].is_zero();
        let mut running = FinElem::zero();
        for (i, (w, l)) in values.windows(2).zip(&u).enumerate() {
            let gap = w[1].sub(&w[0], &params);
            ok &= gap
                == if *l == Letter::A {
                    one.clone()
                } else {
                    short.clone()
                };
            running = running.add(&gap, &params);
            ok &= running == w[1];
            if i % 1_000 == 999 {
                ok &= words::beta_integer_from_prefix(i + 1, &params).unwrap() == w[1];
            }
        }
        if !ok {
            failures.push(fails(&params));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{COUNT} values each; {}",
            summarize(&failures, grid().len())
        ),
    )
}

fn periodicity() -> Outcome {
    let mut failures = Vec::new();
    for params in grid() {
        let got =
            greedy_expand(&FinElem::from_ring(RingElem::new(-1, 1)), BUDGET, &params).unwrap();
        let expected = ExpansionResult::EventuallyPeriodic {
            preperiod: DigitString::integer(&[u64::from(params.p()) - 1]),
            period: vec![u64::from(params.q())],
            period_exponent: -1,
        };
        if got != expected {
            failures.push(format!("{}:{got}", fails(&params)));
        }
    }
    let sample = greedy_expand(
        &FinElem::from_ring(RingElem::new(-1, 1)),
        BUDGET,
        &Params::new(5, 2).unwrap(),
    )
    .unwrap();
    outcome(
        failures.is_empty() && sample.to_string() == "4.(2)",
        format!("(5,2) {sample}; {}", summarize(&failures, grid().len())),
    )
}

fn fp_of(x: &FinElem, params: &Params) -> Option<u32> {
    greedy_expand(x, BUDGET, params)
        .ok()?
        .finite()
        .map(DigitString::fractional_len)
}

fn sums_and_differences(reports: &[SearchReport]) -> Outcome {
    let mut failures = Vec::new();
    let mut epsilon_pairs = 0;
    let mut monotone_cases = 0;
    let mut difference_pairs = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for r in reports {
        let params = Params::new(r.p, r.q).unwrap();
        epsilon_pairs += r.pairs;
        if r.epsilon_failures != 0 {
            failures.push(format!("{}:epsilon", fails(&params)));
        }

        let corpus: Vec<FinElem> = zbeta::integer_expansions(LPLUS_DIGITS, &params)
            .iter()
            .map(|d| evaluate(d, &params))
            .collect();
        let pick = |rng: &mut ChaCha8Rng| {
            let x = &corpus[rng.gen_range(0..corpus.len())];
            let y = &corpus[rng.gen_range(0..corpus.len())];
            x.add(y, &params)
        };
        for _ in 0..2_000 {
            let (x, y) = (pick(&mut rng), pick(&mut rng));
            let fx = fp_of(&x, &params);
            let fs = fp_of(&x.add(&y, &params), &params);
            if let (Some(fx), Some(fs)) = (fx, fs) {
                if fs < fx {
                    failures.push(format!("{}:fp {x}+{y}", fails(&params)));
                }
            }
            monotone_cases += 1;
        }

        let d = zbeta::difference_sweep(LPLUS_DIGITS, &params);
        difference_pairs += d.pairs;
        if d.violations != 0 || d.budget_exceeded != 0 {
            failures.push(format!("{}:difference", fails(&params)));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{epsilon_pairs} sums with unique epsilon, {monotone_cases} monotonicity samples, \
             {difference_pairs} differences; {}",
            summarize(&failures, reports.len())
        ),
    )
}

fn main() -> ExitCode {
    // Fixed references first, so a broken oracle shows up before anything else.
    let o = Oracle::new(&Params::new(5, 2).unwrap());
    assert_eq!(o.greedy((6, 0), 0, BUDGET), Some(ds("10.3")));

    let mut all = true;
    let mut report = |n: u32, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let r = f();
        all &= r.passed;
        println!(
            "criterion {n}: {} {} ({:.1}s)",
            if r.passed { "PASS" } else { "FAIL" },
            r.detail,
            start.elapsed().as_secs_f64()
        );
    };
    report(1, &mut rewrite_example);
    report(2, &mut rule_identities);
    report(3, &mut rewrite_oracle);
    report(4, &mut add_beta_power);
    report(5, &mut defect_sequence);
    report(6, &mut balance);
    let start = Instant::now();
    let reports = lplus_reports();
    println!(
        "lplus search: {} pairs in {:.1}s",
        reports.len(),
        start.elapsed().as_secs_f64()
    );
    report(7, &mut || lplus_bracket(&reports));
    report(8, &mut lemma_f);
    report(9, &mut enumeration);
    report(10, &mut periodicity);
    report(11, &mut || sums_and_differences(&reports));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
