use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use betanum::verify::{self, Budgets, Check, CheckOutcome};
use betanum::words::{self, Letter, WordStream};
use betanum::zbeta::{self, SignedSum};
use betanum::{
    evaluate, greedy_expand, is_admissible, normalize_rewrite, parse_value, DigitString, Error,
    FinElem, Params, Result,
};

use crate::args::{Operand, VerifyArgs, WordArg};

/// One result in all three formats.
pub struct Rendered {
    pub text: String,
    pub json: Value,
    pub csv: String,
    /// Exit status 1 even though nothing failed to run.
    pub failed: bool,
}

impl Rendered {
    fn new(text: impl Into<String>, json: Value, csv: impl Into<String>) -> Self {
        Rendered {
            text: text.into(),
            json,
            csv: csv.into(),
            failed: false,
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn csv_line(fields: &[String]) -> String {
    let quoted: Vec<String> = fields
        .iter()
        .map(|f| {
            if f.contains([',', '"', '\n']) {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect();
    quoted.join(",") + "\n"
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = csv_line(&header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        out.push_str(&csv_line(&row));
    }
    out
}

fn header(params: &Params) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("p".into(), json!(params.p()));
    m.insert("q".into(), json!(params.q()));
    m
}

fn with_header(params: &Params, fields: Value) -> Value {
    let mut m = header(params);
    if let Value::Object(rest) = fields {
        m.extend(rest);
    }
    Value::Object(m)
}

/// Digit strings contain a fractional point; anything else is a value.
fn parse_operand(text: &str, params: &Params) -> Result<FinElem> {
    if text.contains(['.', '•']) {
        Ok(evaluate(&text.parse::<DigitString>()?, params))
    } else {
        parse_value(text, params)
    }
}

fn operand(op: &Operand, params: &Params) -> Result<(String, FinElem)> {
    match (&op.value, &op.digits) {
        (Some(v), _) => Ok((v.clone(), parse_value(v, params)?)),
        (None, Some(d)) => Ok((d.clone(), evaluate(&d.parse::<DigitString>()?, params))),
        (None, None) => unreachable!("clap requires one operand"),
    }
}

pub fn expand(op: &Operand, budget: u32, params: &Params) -> Result<Rendered> {
    let (input, x) = operand(op, params)?;
    let r = greedy_expand(&x, budget, params)?;
    let kind = to_json(&r)["kind"].as_str().unwrap_or_default().to_string();
    Ok(Rendered::new(
        r.to_string(),
        with_header(
            params,
            json!({ "input": input, "value": x.to_string(), "result": to_json(&r) }),
        ),
        csv_table(
            &["input", "kind", "expansion"],
            [vec![input, kind, r.to_string()]],
        ),
    ))
}

pub fn normalize(digits: &str, params: &Params) -> Result<Rendered> {
    let input: DigitString = digits.parse()?;
    let out = normalize_rewrite(&input, params);
    Ok(Rendered::new(
        out.to_string(),
        with_header(
            params,
            json!({
                "input": input.to_string(),
                "input_admissible": is_admissible(&input, params),
                "output": out.to_string(),
            }),
        ),
        csv_table(
            &["input", "output"],
            [vec![input.to_string(), out.to_string()]],
        ),
    ))
}

pub fn add(x: &str, y: &str, budget: u32, params: &Params) -> Result<Rendered> {
    let (xv, yv) = (parse_operand(x, params)?, parse_operand(y, params)?);
    // Beta-integers go through the epsilon decomposition; anything else is
    // just expanded.
    let both_integers =
        betanum::is_beta_integer(&xv, params) && betanum::is_beta_integer(&yv, params);
    if !both_integers {
        let sum = xv.add(&yv, params);
        let r = greedy_expand(&sum.abs(params), budget, params)?;
        let sign = if sum.sign(params).is_lt() { "-" } else { "" };
        let text = format!("{sign}{r}");
        return Ok(Rendered::new(
            text.clone(),
            with_header(
                params,
                json!({ "x": x, "y": y, "negative": !sign.is_empty(), "sum": to_json(&r) }),
            ),
            csv_table(&["x", "y", "sum"], [vec![x.into(), y.into(), text]]),
        ));
    }
    match zbeta::add_signed(&xv, &yv, params)? {
        SignedSum::SameSign { negative, report } => {
            let sign = if negative { "-" } else { "" };
            let text = format!(
                "{sign}{} fp={} epsilon={}",
                report.sum_expansion, report.fp, report.epsilon
            );
            Ok(Rendered::new(
                text,
                with_header(
                    params,
                    json!({ "x": x, "y": y, "negative": negative, "report": to_json(&report) }),
                ),
                csv_table(
                    &["x", "y", "sum", "fp", "epsilon"],
                    [vec![
                        x.into(),
                        y.into(),
                        format!("{sign}{}", report.sum_expansion),
                        report.fp.to_string(),
                        report.epsilon.to_string(),
                    ]],
                ),
            ))
        }
        SignedSum::MixedSign {
            negative,
            difference,
        } => {
            let sign = if negative { "-" } else { "" };
            let (text, value) = match difference {
                zbeta::Difference::BetaInteger(d) => {
                    let e = zbeta::integer_expansion(&d, params)?;
                    (
                        format!("{sign}{e}"),
                        json!({ "kind": "beta_integer", "expansion": e.to_string() }),
                    )
                }
                zbeta::Difference::NotInFin { evidence } => (
                    format!("{sign}{evidence}"),
                    json!({ "kind": "not_finite", "evidence": to_json(&evidence) }),
                ),
            };
            Ok(Rendered::new(
                text.clone(),
                with_header(
                    params,
                    json!({ "x": x, "y": y, "negative": negative, "difference": value }),
                ),
                csv_table(&["x", "y", "sum"], [vec![x.into(), y.into(), text]]),
            ))
        }
    }
}

pub fn addpow(digits: &str, l: u32, params: &Params) -> Result<Rendered> {
    let x: DigitString = digits.parse()?;
    let r = zbeta::add_beta_power(&x, l, params)?;
    Ok(Rendered::new(
        r.to_string(),
        with_header(
            params,
            json!({ "x": x.to_string(), "l": l, "sum": r.to_string(), "fp": r.fractional_len() }),
        ),
        csv_table(
            &["x", "l", "sum"],
            [vec![x.to_string(), l.to_string(), r.to_string()]],
        ),
    ))
}

pub fn list(n: u64, params: &Params) -> Result<Rendered> {
    let n = usize::try_from(n).map_err(|_| Error::TooLarge(format!("{n} values")))?;
    let (values, letters) = zbeta::enumerate_with_gaps(n, params)?;
    let mut rows = Vec::with_capacity(n);
    for (i, v) in values.iter().enumerate() {
        let e = zbeta::integer_expansion(v, params)?;
        let gap = letters.get(i).map(|l| l.to_string()).unwrap_or_default();
        rows.push((i, e.to_string(), v.to_string(), gap));
    }
    let text: String = rows.iter().map(|r| format!("{}\n", r.1)).collect();
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|(i, e, v, g)| json!({ "index": i, "expansion": e, "value": v, "gap": g }))
        .collect();
    let csv = csv_table(
        &["index", "expansion", "value", "gap"],
        rows.iter()
            .map(|(i, e, v, g)| vec![i.to_string(), e.clone(), v.clone(), g.clone()]),
    );
    Ok(Rendered::new(
        text.trim_end(),
        with_header(params, json!({ "values": json_rows })),
        csv,
    ))
}

pub fn succ(op: &Operand, params: &Params) -> Result<Rendered> {
    let (input, x) = operand(op, params)?;
    let (next, letter) = zbeta::successor(&x, params)?;
    let e = zbeta::integer_expansion(&next, params)?;
    Ok(Rendered::new(
        format!("{e} {letter}"),
        with_header(
            params,
            json!({ "input": input, "successor": e.to_string(), "value": next.to_string(), "gap": letter }),
        ),
        csv_table(
            &["input", "successor", "gap"],
            [vec![input, e.to_string(), letter.to_string()]],
        ),
    ))
}

pub fn lplus(digit_bound: u32, params: &Params) -> Result<Rendered> {
    let r = zbeta::lplus_search(digit_bound, params)?;
    let mut text = format!(
        "max_fp={} bracket=[{},{}] conjecture={} pairs={} epsilon_failures={}\n",
        r.max_fp,
        r.lower_bound,
        r.upper_bound,
        r.matches_conjecture(),
        r.pairs,
        r.epsilon_failures
    );
    for (fp, count) in &r.histogram {
        writeln!(text, "fp {fp}: {count}").unwrap();
    }
    for w in &r.witnesses {
        writeln!(text, "witness {} + {} = {}", w.x, w.y, w.sum).unwrap();
    }
    let csv = csv_table(
        &["fp", "pairs"],
        r.histogram
            .iter()
            .map(|(f, c)| vec![f.to_string(), c.to_string()]),
    );
    Ok(Rendered::new(text.trim_end(), to_json(&r), csv))
}

pub fn lemmaf(j: u32, params: &Params) -> Result<Rendered> {
    let e = zbeta::lemma_f_expansion(j, params)?;
    Ok(Rendered::new(
        e.to_string(),
        with_header(
            params,
            json!({ "j": j, "expansion": e.to_string(), "fp": e.fractional_len() }),
        ),
        csv_table(&["j", "expansion"], [vec![j.to_string(), e.to_string()]]),
    ))
}

pub fn balance(prefix_len: u64, max_window: u64, params: &Params) -> Result<Rendered> {
    let too_large = || Error::TooLarge(format!("prefix {prefix_len}"));
    let prefix_len = usize::try_from(prefix_len).map_err(|_| too_large())?;
    let max_window = usize::try_from(max_window).map_err(|_| too_large())?;
    let r = words::balance_scan(prefix_len, max_window, params)?;
    let mut text = format!(
        "max_spread={} bound={} prefix_a_maximal={} companion_b_maximal={}\n",
        r.max_spread,
        params.balance_bound(),
        r.prefix_a_maximal(),
        r.companion_b_maximal()
    );
    for c in 1..=r.max_spread {
        if let Some(k) = r.first_window_with_spread(c) {
            writeln!(text, "spread {c} first at window {k}").unwrap();
        }
    }
    let csv = csv_table(
        &[
            "window",
            "min_a",
            "max_a",
            "spread",
            "prefix_a",
            "companion_b",
        ],
        r.windows.iter().map(|w| {
            vec![
                w.window.to_string(),
                w.min_a.to_string(),
                w.max_a.to_string(),
                w.spread.to_string(),
                w.prefix_a.to_string(),
                w.companion_b.to_string(),
            ]
        }),
    );
    Ok(Rendered::new(text.trim_end(), to_json(&r), csv))
}

pub fn dn(n_max: u32, params: &Params) -> Result<Rendered> {
    let rows = words::d_table(n_max, params)?;
    let mut text = String::from("n bruteforce recurrence closed_form\n");
    for r in &rows {
        writeln!(
            text,
            "{} {} {} {}",
            r.n, r.bruteforce, r.recurrence, r.closed_form
        )
        .unwrap();
    }
    let csv = csv_table(
        &["n", "bruteforce", "recurrence", "closed_form"],
        rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.bruteforce.to_string(),
                r.recurrence.to_string(),
                r.closed_form.to_string(),
            ]
        }),
    );
    let mut out = Rendered::new(
        text.trim_end(),
        with_header(params, json!({ "rows": to_json(&rows) })),
        csv,
    );
    out.failed = !rows.iter().all(|r| r.agrees());
    Ok(out)
}

fn usage(msg: &str) -> Error {
    Error::Parse {
        what: "arguments",
        input: msg.to_string(),
    }
}

pub fn words_cmd(
    kind: WordArg,
    n: Option<u64>,
    word: Option<&str>,
    params: &Params,
) -> Result<Rendered> {
    let need_n = || -> Result<usize> {
        let n = n.ok_or_else(|| usage("--n is required for this kind"))?;
        usize::try_from(n).map_err(|_| Error::TooLarge(format!("{n} letters")))
    };
    let (name, w) = match kind {
        WordArg::U => (
            "u",
            WordStream::fixed_point(params).prefix(need_n()?)?.to_vec(),
        ),
        WordArg::W => (
            "w",
            WordStream::companion(params).prefix(need_n()?)?.to_vec(),
        ),
        WordArg::Wn => {
            let n = need_n()?;
            let n = u32::try_from(n).map_err(|_| Error::TooLarge(format!("w_{n}")))?;
            ("wn", words::w_n(n, params)?)
        }
        WordArg::Subst => {
            let input =
                words::parse_word(word.ok_or_else(|| usage("--word is required for subst"))?)?;
            let times = n.unwrap_or(1);
            let mut w = input;
            for _ in 0..times {
                w = words::substitute(&w, params);
                if w.len() > words::MATERIALIZATION_LIMIT {
                    return Err(Error::TooLarge(format!("{} letters", w.len())));
                }
            }
            ("subst", w)
        }
    };
    let s = words::word_to_string(&w);
    let a = words::count(&w, Letter::A);
    Ok(Rendered::new(
        s.clone(),
        with_header(
            params,
            json!({ "kind": name, "len": w.len(), "a": a, "b": w.len() - a, "word": s }),
        ),
        csv_table(
            &["kind", "len", "word"],
            [vec![name.into(), w.len().to_string(), s]],
        ),
    ))
}

pub fn verify_cmd(args: &VerifyArgs, p: Option<u32>, q: Option<u32>) -> Result<Rendered> {
    let (p_min, p_max) = match p {
        Some(p) => (p, p),
        None => (args.p_min, args.p_max),
    };
    if p_min < 2 || p_min > p_max {
        return Err(usage("need 2 <= p-min <= p-max"));
    }
    let grid: Vec<Params> = Params::full_grid(p_min, p_max)
        .into_iter()
        .filter(|g| q.is_none_or(|q| g.q() == q))
        .filter(|g| !(args.non_unit && g.is_unit()))
        .collect();
    if grid.is_empty() {
        return Err(usage("empty parameter grid"));
    }
    let mut budgets = Budgets::default();
    if let Some(v) = args.prefix_len {
        budgets.prefix_len = v;
    }
    if let Some(v) = args.max_window {
        budgets.max_window = v;
    }
    if let Some(v) = args.digit_bound {
        budgets.digit_bound = v;
    }
    if let Some(v) = args.max_word_len {
        budgets.max_word_len = v;
    }
    if let Some(v) = args.enumeration {
        budgets.enumeration = v;
    }
    if let Some(v) = args.samples {
        budgets.oracle_samples = v;
    }
    if let Some(v) = args.seed {
        budgets.seed = v;
    }
    let checks: Vec<Check> = if args.checks.is_empty() {
        Check::ALL.to_vec()
    } else {
        args.checks.clone()
    };
    let outcomes: Vec<CheckOutcome> = verify::sweep(&grid, &checks, &budgets);
    let text: String = outcomes.iter().map(|o| format!("{o}\n")).collect();
    let csv = csv_table(
        &["p", "q", "check", "passed", "measured"],
        outcomes.iter().map(|o| {
            vec![
                o.p.to_string(),
                o.q.to_string(),
                o.check.to_string(),
                o.passed.to_string(),
                o.measured.clone(),
            ]
        }),
    );
    let failed = outcomes.iter().any(|o| !o.passed);
    let mut out = Rendered::new(
        text.trim_end(),
        json!({ "budgets": to_json(&budgets), "outcomes": to_json(&outcomes) }),
        csv,
    );
    out.failed = failed;
    Ok(out)
}
