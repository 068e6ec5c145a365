use std::fmt::Write as _;

use divseq_core::{
    a_seq, b_seq, c_enclosure, delta_above, delta_above_factored, delta_pair, delta_pair_factored,
    divisor_count, divisor_list, divisor_list_factored, k3_enclosure, relation_check,
    render_digits, survivor_recurrence, survivor_simulation, survivor_via_ow,
    verify_divisor_count_3x2k, verify_middle_pair_3x2k, verify_theorem, DivisorPair, Limits, Path,
    RationalInterval, SequenceReport, SurvivorResult, VerificationReport,
};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::args::{AlgoArg, Command, ConstCmd, SeqCmd, VerifyCmd};
use crate::envelope::{bfile, Status};
use crate::target::Target;
use crate::{reproduce, CliError, Output};

pub fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Seq(SeqCmd::A { .. }) => "seq a".into(),
        Command::Seq(SeqCmd::B { .. }) => "seq b".into(),
        Command::Delta { .. } => "delta".into(),
        Command::Divisors { .. } => "divisors".into(),
        Command::Theorem { .. } => "theorem".into(),
        Command::Lemma { which, .. } => format!("lemma {which}"),
        Command::Josephus { .. } => "josephus".into(),
        Command::Constants(ConstCmd::C { .. }) => "constants c".into(),
        Command::Constants(ConstCmd::K3 { .. }) => "constants k3".into(),
        Command::Verify(VerifyCmd::Relation { .. }) => "verify relation".into(),
        Command::Reproduce { .. } => "reproduce".into(),
    }
}

fn params(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| ((*k).to_string(), v.clone()))
        .collect()
}

fn output(
    command: &Command,
    parameters: Map<String, Value>,
    result: Value,
    plain: String,
) -> Output {
    Output {
        command: command_name(command),
        parameters,
        result,
        status: Status::Ok,
        plain,
        bfile: None,
        diagnostic: None,
    }
}

pub fn execute(cmd: &Command, limits: &Limits) -> Result<Output, CliError> {
    match cmd {
        Command::Seq(SeqCmd::A { max, path }) => {
            let report = a_seq(*max, (*path).into(), limits)?;
            sequence_output(
                cmd,
                report,
                limits,
                params(&[
                    ("max", json!(max)),
                    ("path", json!(Path::from(*path).as_str())),
                ]),
            )
        }
        Command::Seq(SeqCmd::B { max }) => {
            let report = b_seq(*max)?;
            sequence_output(cmd, report, limits, params(&[("max", json!(max))]))
        }
        Command::Delta { m, above } => run_delta(cmd, m, above.as_deref(), limits),
        Command::Divisors { m, count_only } => run_divisors(cmd, m, *count_only, limits),
        Command::Theorem { max, path } => {
            let path: Path = (*path).into();
            let report = verify_theorem(*max, path, limits)?;
            let p = params(&[("max", json!(max)), ("path", json!(path.as_str()))]);
            Ok(report_output(
                cmd,
                p,
                &report,
                &format!("3 <= n <= {max}, {path} path"),
            ))
        }
        Command::Lemma { which, max_k } => {
            let report = match which {
                1 => verify_divisor_count_3x2k(*max_k, limits)?,
                _ => verify_middle_pair_3x2k(*max_k, limits)?,
            };
            let p = params(&[("lemma", json!(which)), ("max_k", json!(max_k))]);
            Ok(report_output(
                cmd,
                p,
                &report,
                &format!("1 <= k <= {max_k}"),
            ))
        }
        Command::Josephus { n, q, algo } => run_josephus(cmd, *n, *q, *algo, limits),
        Command::Constants(ConstCmd::C { terms, digits }) => {
            let iv = c_enclosure(*terms)?;
            constant_output(cmd, "c", *terms, *digits, &iv)
        }
        Command::Constants(ConstCmd::K3 { terms, digits }) => {
            let iv = k3_enclosure(*terms)?;
            constant_output(cmd, "K(3)", *terms, *digits, &iv)
        }
        Command::Verify(VerifyCmd::Relation { terms, min_places }) => {
            run_relation(cmd, *terms, *min_places)
        }
        Command::Reproduce { fast_only, terms } => {
            let table = reproduce::reproduce(*fast_only, *terms, limits);
            let p = params(&[("fast_only", json!(fast_only)), ("terms", json!(terms))]);
            let mut out = output(cmd, p, table.to_json(), table.render());
            if table.failed() > 0 {
                out.status = Status::Finding;
                out.diagnostic = Some(format!("{} claim(s) failed", table.failed()));
            }
            Ok(out)
        }
    }
}

fn sequence_output(
    cmd: &Command,
    report: SequenceReport,
    limits: &Limits,
    parameters: Map<String, Value>,
) -> Result<Output, CliError> {
    let values = report
        .terms
        .iter()
        .map(|t| t.materialize(limits.max_term_bits).map(|v| v.to_string()))
        .collect::<Result<Vec<String>, _>>()?;
    let lines = bfile(report.start_index, &values);
    let name = match report.name {
        divseq_core::SeqName::A => "a",
        divseq_core::SeqName::B => "b",
    };
    let result = json!({
        "name": name,
        "start_index": report.start_index,
        "path": report.path.as_str(),
        "terms": values,
    });
    let mut out = output(cmd, parameters, result, lines.clone());
    out.bfile = Some(lines);
    Ok(out)
}

fn pair_json(p: &DivisorPair) -> Value {
    json!({
        "small": p.small.to_string(),
        "large": p.large.to_string(),
        "difference": p.difference.to_string(),
    })
}

fn run_delta(
    cmd: &Command,
    m: &str,
    above: Option<&str>,
    limits: &Limits,
) -> Result<Output, CliError> {
    let target = Target::parse(m, limits)?;
    let threshold: Option<BigUint> = above
        .map(|t| {
            t.trim().parse::<BigUint>().map_err(|_| {
                CliError::usage(format!("--above expects a nonnegative integer, got {t:?}"))
            })
        })
        .transpose()?;
    let (pair, path) = match (&target, &threshold) {
        (Target::Small(v), None) => (delta_pair(*v, limits)?, "oracle"),
        (Target::Small(v), Some(t)) if t.to_u64().is_some() => {
            (delta_above(*v, t.to_u64().unwrap(), limits)?, "oracle")
        }
        (_, None) => (
            delta_pair_factored(&target.factorization()?, limits)?,
            "factored",
        ),
        (_, Some(t)) => (
            delta_above_factored(&target.factorization()?, t, limits)?,
            "factored",
        ),
    };
    let p = params(&[
        ("m", json!(m)),
        (
            "above",
            threshold
                .as_ref()
                .map_or(Value::Null, |t| json!(t.to_string())),
        ),
    ]);
    let result = json!({
        "m": target.describe(),
        "path": path,
        "delta": pair.difference.to_string(),
        "pair": pair_json(&pair),
    });
    let plain = format!("{} (pair {} {})\n", pair.difference, pair.small, pair.large);
    Ok(output(cmd, p, result, plain))
}

fn run_divisors(
    cmd: &Command,
    m: &str,
    count_only: bool,
    limits: &Limits,
) -> Result<Output, CliError> {
    let target = Target::parse(m, limits)?;
    let p = params(&[("m", json!(m)), ("count_only", json!(count_only))]);
    if count_only {
        let count = divisor_count(&target.factorization()?);
        let result = json!({ "m": target.describe(), "count": count.to_string() });
        return Ok(output(cmd, p, result, format!("{count}\n")));
    }
    let list: Vec<String> = match &target {
        Target::Small(v) => divisor_list(*v, limits)?
            .iter()
            .map(u64::to_string)
            .collect(),
        Target::Factored(f) => divisor_list_factored(f, limits)?
            .iter()
            .map(BigUint::to_string)
            .collect(),
    };
    let mut plain = String::new();
    for d in &list {
        let _ = writeln!(plain, "{d}");
    }
    let result =
        json!({ "m": target.describe(), "count": list.len().to_string(), "divisors": list });
    let mut out = output(cmd, p, result, plain);
    out.bfile = Some(bfile(1, &list));
    Ok(out)
}

pub(crate) fn report_json(report: &VerificationReport) -> Value {
    let failures: Vec<Value> = report
        .failures()
        .map(|e| {
            let ce = e.counterexample.as_ref();
            json!({
                "index": e.index,
                "expected": ce.map(|c| c.expected.clone()),
                "computed": ce.map(|c| c.computed.clone()),
            })
        })
        .collect();
    json!({
        "claim": report.claim,
        "checked": report.entries.len(),
        "passed": report.entries.iter().filter(|e| e.passed).count(),
        "all_passed": report.all_passed(),
        "failures": failures,
        "findings": report.findings,
    })
}

fn report_output(
    cmd: &Command,
    p: Map<String, Value>,
    report: &VerificationReport,
    range: &str,
) -> Output {
    let mut plain = String::new();
    for e in &report.entries {
        match &e.counterexample {
            None => {
                let _ = writeln!(plain, "{} pass", e.index);
            }
            Some(c) => {
                let _ = writeln!(
                    plain,
                    "{} FAIL expected {} computed {}",
                    e.index, c.expected, c.computed
                );
            }
        }
    }
    let passed = report.entries.iter().filter(|e| e.passed).count();
    let _ = writeln!(
        plain,
        "{}: {passed}/{} pass ({range})",
        report.claim,
        report.entries.len()
    );
    for f in &report.findings {
        let _ = writeln!(plain, "flagged: {f}");
    }
    let mut out = output(cmd, p, report_json(report), plain);
    if !report.all_passed() {
        out.status = Status::Finding;
    }
    out
}

fn run_josephus(
    cmd: &Command,
    n: u64,
    q: u64,
    algo: AlgoArg,
    limits: &Limits,
) -> Result<Output, CliError> {
    let mut results: Vec<SurvivorResult> = Vec::new();
    if matches!(algo, AlgoArg::Recurrence | AlgoArg::All) {
        results.push(survivor_recurrence(n, q)?);
    }
    if matches!(algo, AlgoArg::Simulation | AlgoArg::All) {
        results.push(survivor_simulation(n, q, limits)?);
    }
    if matches!(algo, AlgoArg::Ow | AlgoArg::All) {
        results.push(survivor_via_ow(n, q)?);
    }
    let agree = results.windows(2).all(|w| w[0].survivor == w[1].survivor);
    let mut survivors = Map::new();
    let mut plain = String::new();
    for r in &results {
        survivors.insert(r.algorithm.as_str().to_string(), json!(r.survivor));
        let _ = writeln!(plain, "{} {}", r.algorithm, r.survivor);
    }
    let algo_name = match algo {
        AlgoArg::Recurrence => "recurrence",
        AlgoArg::Simulation => "simulation",
        AlgoArg::Ow => "ow",
        AlgoArg::All => "all",
    };
    let p = params(&[("n", json!(n)), ("q", json!(q)), ("algo", json!(algo_name))]);
    let result = json!({ "n": n, "q": q, "survivors": survivors, "agree": agree });
    let mut out = output(cmd, p, result, plain);
    if !agree {
        out.status = Status::Finding;
        out.diagnostic = Some("survivor algorithms disagree".to_string());
    }
    Ok(out)
}

fn interval_json(iv: &RationalInterval, digits: usize) -> Result<Value, CliError> {
    let cert = render_digits(iv, digits)?;
    Ok(json!({
        "lo": iv.lo().to_string(),
        "hi": iv.hi().to_string(),
        "digits": cert.decimal_prefix,
        "certified_places": cert.certified_places,
    }))
}

fn constant_output(
    cmd: &Command,
    name: &str,
    terms: u64,
    digits: usize,
    iv: &RationalInterval,
) -> Result<Output, CliError> {
    let cert = render_digits(iv, digits)?;
    let p = params(&[("terms", json!(terms)), ("digits", json!(digits))]);
    let shown = if cert.decimal_prefix.is_empty() {
        "(no certified digits)"
    } else {
        &cert.decimal_prefix
    };
    let plain = format!(
        "{name} {shown}\ncertified_places {}\n",
        cert.certified_places
    );
    let mut result = interval_json(iv, digits)?;
    result["constant"] = json!(name);
    Ok(output(cmd, p, result, plain))
}

fn run_relation(cmd: &Command, terms: u64, min_places: usize) -> Result<Output, CliError> {
    let rep = relation_check(terms)?;
    let digits = rep.agreeing_places.max(1) + 2;
    let c = interval_json(&rep.c_interval, digits)?;
    let k = interval_json(&rep.k3_scaled_interval, digits)?;
    let p = params(&[("terms", json!(terms)), ("min_places", json!(min_places))]);
    let result = json!({
        "c": c,
        "k3_scaled": k,
        "overlap": rep.overlap,
        "agreeing_places": rep.agreeing_places,
        "min_places": min_places,
    });
    let plain = format!(
        "c {}\n(2/9)K(3) {}\noverlap {}\nagreeing_places {}\n",
        c["digits"].as_str().unwrap_or_default(),
        k["digits"].as_str().unwrap_or_default(),
        rep.overlap,
        rep.agreeing_places
    );
    let mut out = output(cmd, p, result, plain);
    if !rep.overlap {
        out.status = Status::Finding;
        out.diagnostic = Some("c and (2/9)K(3) enclosures do not overlap".to_string());
    } else if rep.agreeing_places < min_places {
        out.status = Status::Error;
        out.diagnostic = Some(format!(
            "only {} agreeing places, {min_places} required (raise it with --terms)",
            rep.agreeing_places
        ));
    }
    Ok(out)
}
