//! `keypoly` command-line front end.
//!
//! [`run`] takes the argument vector and returns the text that would be
//! printed together with the exit status, so the whole CLI is testable
//! in-process. Exit status: 0 success, 1 a verified negative verdict
//! (counterexample, violation, disagreement), 2 bad input.

use std::fmt::Write as _;

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::json;

use keypoly::analysis::{
    adversarial_pairs, delta_depth1_report, epsilon, epsilon_delta_crosscheck, truncate,
    truncation_equals_on, truncation_multiplicativity_scan, Crosscheck as CrosscheckVerdict,
    MultiplicativityVerdict, TruncationVerdict,
};
use keypoly::corpus::CorpusSpec;
use keypoly::keytheory::{
    classify, is_key, minimal_degree_torsionfree_q, minimal_pair_check, pcs_from_chain,
    theorem1_crosscheck, KeyVerdict, MinPairVerdict, SearchBound, Theorem1Verdict,
    TorsionFreeSearch,
};
use keypoly::valuation::{
    parse_valuation, pcs_check, pcs_value_trace, PcsVerdict, ValuationConfig,
};
use keypoly::{AnyValuation, AugmentedChain, MonomialValuation, Poly, Prime, Valuation, Value};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Eval,
    Expand,
    Truncate,
    Epsilon,
    Delta,
    Crosscheck,
    Iskey,
    Minpair,
    Theorem1,
    Classify,
    PcsCheck,
    PcsTrace,
    PcsFromChain,
    ScanMultiplicativity,
    TruncEqual,
    FindQ,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Structured,
}

#[derive(Parser, Debug)]
#[command(
    name = "keypoly",
    version,
    about = "Exact valuations on Q[x]: truncations, epsilon/delta, key polynomials, minimal pairs",
    after_help = "Valuation configs (JSON5, inline or a file path):\n  \
        { type: \"monomial\", p: 2, b: \"0\", delta: \"(1/2,0)\" }\n  \
        { type: \"chain\", depth0: {...}, steps: [ { Q: \"x^2-2\", gamma: \"2\" } ] }\n  \
        { type: \"pcs\", p: 2, elems: [\"1\",\"3\",\"7\",\"15\"] }\n\
        Without --valuation, --prime selects the Gauss valuation nu_(0,1).\n\n\
        Exit status: 0 success, 1 verified negative verdict, 2 input error."
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Valuation config, inline (starting with '{') or a file path.
    #[arg(long)]
    pub valuation: Option<String>,
    #[arg(long)]
    pub poly: Option<String>,
    /// Expansion base / key polynomial candidate.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub bound_deg: usize,
    #[arg(long, default_value_t = 1024)]
    pub bound_height: u64,
    #[arg(long, default_value_t = 6)]
    pub corpus_deg: usize,
    #[arg(long, default_value_t = 16)]
    pub corpus_height: u64,
    #[arg(long, default_value_t = 200)]
    pub corpus_count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct InputError(String);

impl From<keypoly::Error> for InputError {
    fn from(e: keypoly::Error) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = Result<T, InputError>;

/// One command's result: a human table, the structured report and whether
/// the verdict is negative.
struct Report {
    table: String,
    data: serde_json::Value,
    negative: bool,
}

fn report<T: Serialize>(table: String, data: &T, negative: bool) -> Report {
    Report {
        table,
        data: serde_json::to_value(data).expect("reports serialize"),
        negative,
    }
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    stdout: text,
                    stderr: String::new(),
                    code,
                }
            } else {
                Output {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    match execute(&cli) {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Table => r.table,
                Format::Structured => {
                    let doc = json!({
                        "command": cli.command,
                        "inputs": inputs(&cli),
                        "report": r.data,
                    });
                    serde_json::to_string_pretty(&doc).expect("json") + "\n"
                }
            };
            Output {
                stdout,
                stderr: String::new(),
                code: if r.negative { 1 } else { 0 },
            }
        }
        Err(InputError(msg)) => Output {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 2,
        },
    }
}

fn inputs(cli: &Cli) -> serde_json::Value {
    let valuation = load_valuation(cli)
        .ok()
        .map(|v| serde_json::to_value(ValuationConfig::from(&v)).expect("json"));
    json!({
        "valuation": valuation,
        "poly": cli.poly.as_ref().and_then(|s| s.parse::<Poly>().ok()),
        "q": cli.q.as_ref().and_then(|s| s.parse::<Poly>().ok()),
        "bound": { "max_degree": cli.bound_deg, "height": cli.bound_height },
        "corpus": corpus(cli),
    })
}

fn corpus(cli: &Cli) -> CorpusSpec {
    CorpusSpec::new(
        cli.corpus_deg,
        cli.corpus_height,
        cli.seed,
        cli.corpus_count,
    )
}

fn bound(cli: &Cli) -> CliResult<SearchBound> {
    Ok(SearchBound::new(cli.bound_deg, cli.bound_height)?)
}

fn parse_poly(flag: &str, text: Option<&String>) -> CliResult<Poly> {
    let text = text.ok_or_else(|| InputError(format!("missing --{flag}")))?;
    text.parse::<Poly>().map_err(|e| match &e {
        keypoly::Error::Parse { pos, .. } => InputError(format!(
            "--{flag}: {e}\n  {text}\n  {}^",
            " ".repeat(text[..(*pos).min(text.len())].chars().count())
        )),
        _ => InputError(format!("--{flag}: {e}")),
    })
}

fn load_valuation(cli: &Cli) -> CliResult<AnyValuation> {
    let v = match &cli.valuation {
        Some(arg) => {
            let text = if arg.trim_start().starts_with('{') {
                arg.clone()
            } else {
                std::fs::read_to_string(arg)
                    .map_err(|e| InputError(format!("cannot read valuation file {arg}: {e}")))?
            };
            parse_valuation(&text).map_err(|e| InputError(format!("--valuation: {e}")))?
        }
        None => {
            let p = cli.prime.ok_or_else(|| {
                InputError("missing --valuation (or --prime for the Gauss valuation)".into())
            })?;
            AnyValuation::Monomial(MonomialValuation::gauss(p, Value::from_int(1))?)
        }
    };
    if let Some(p) = cli.prime {
        let p = Prime::new(p)?;
        if v.base().prime != p {
            return Err(InputError(format!(
                "--prime {p} does not match the valuation's prime {}",
                v.base().prime
            )));
        }
    }
    Ok(v)
}

fn finite(cli: &Cli) -> CliResult<AugmentedChain> {
    load_valuation(cli)?.as_chain().ok_or_else(|| {
        InputError(format!(
            "{:?} needs a monomial or chain valuation, not a sequence prefix",
            cli.command
        ))
    })
}

fn monomial(cli: &Cli) -> CliResult<MonomialValuation> {
    load_valuation(cli)?
        .as_monomial()
        .cloned()
        .ok_or_else(|| InputError("this command needs a monomial (depth-1) valuation".into()))
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ");
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    for row in rows {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

fn execute(cli: &Cli) -> CliResult<Report> {
    use Command::*;
    match cli.command {
        Eval => {
            let v = finite(cli)?;
            let f = parse_poly("poly", cli.poly.as_ref())?;
            let value = v.eval(&f);
            Ok(report(
                format!("{value}\n"),
                &json!({ "value": value }),
                false,
            ))
        }
        Expand => {
            let f = parse_poly("poly", cli.poly.as_ref())?;
            let q = parse_poly("q", cli.q.as_ref())?;
            let terms = f.q_expansion(&q)?;
            let rows: Vec<Vec<String>> = terms
                .iter()
                .enumerate()
                .map(|(i, p)| vec![i.to_string(), p.to_string()])
                .collect();
            Ok(report(
                table(&["i", "p_i"], &rows),
                &json!({ "terms": terms }),
                false,
            ))
        }
        Truncate => {
            let v = finite(cli)?;
            let f = parse_poly("poly", cli.poly.as_ref())?;
            let q = parse_poly("q", cli.q.as_ref())?;
            let r = truncate(&v, &q, &f)?;
            let rows: Vec<Vec<String>> = r
                .terms
                .iter()
                .map(|t| vec![t.i.to_string(), t.p_i.to_string(), t.value.to_string()])
                .collect();
            let mut out = table(&["i", "p_i", "value"], &rows);
            let argmin: Vec<String> = r.argmin.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "truncated value: {}  (argmin: {})",
                r.min_value,
                argmin.join(", ")
            );
            let _ = writeln!(out, "value:           {}", v.eval(&f));
            Ok(report(out, &r, false))
        }
        Epsilon => {
            let v = finite(cli)?;
            let f = parse_poly("poly", cli.poly.as_ref())?;
            let r = epsilon(&v, &f)?;
            let rows: Vec<Vec<String>> = r
                .terms
                .iter()
                .map(|t| {
                    vec![
                        t.r.to_string(),
                        t.nu_f.to_string(),
                        t.nu_derivative.to_string(),
                        t.quotient.to_string(),
                    ]
                })
                .collect();
            let mut out = table(&["r", "v(f)", "v(d_r f)", "(v(f) - v(d_r f))/r"], &rows);
            let _ = writeln!(out, "epsilon: {}  (r = {})", r.epsilon, r.argmax_r);
            Ok(report(out, &r, false))
        }
        Delta => {
            let w = monomial(cli)?;
            let f = parse_poly("poly", cli.poly.as_ref())?;
            let r = delta_depth1_report(&w, &f)?;
            let vertices: Vec<String> = r
                .polygon
                .vertices
                .iter()
                .map(|(i, y)| format!("({i}, {y})"))
                .collect();
            let slopes: Vec<String> = r
                .polygon
                .slopes
                .iter()
                .map(|s| format!("{} x{}", s.valuation, s.multiplicity))
                .collect();
            let mut out = String::new();
            let _ = writeln!(out, "shifted:         {}", r.shifted);
            let _ = writeln!(out, "vertices:        {}", vertices.join(" "));
            let _ = writeln!(out, "root valuations: {}", slopes.join(", "));
            if r.polygon.zero_roots > 0 {
                let _ = writeln!(out, "roots at center: {}", r.polygon.zero_roots);
            }
            let _ = writeln!(out, "delta: {}", r.delta);
            Ok(report(out, &r, false))
        }
        Crosscheck => {
            let w = monomial(cli)?;
            let f = parse_poly("poly", cli.poly.as_ref())?;
            let r = epsilon_delta_crosscheck(&w, &f)?;
            let (text, negative) = match &r {
                CrosscheckVerdict::Agree { value } => (format!("Agree {value}\n"), false),
                CrosscheckVerdict::Disagree { epsilon, delta } => (
                    format!("Disagree (epsilon {epsilon}, delta {delta})\n"),
                    true,
                ),
            };
            Ok(report(text, &r, negative))
        }
        Iskey => {
            let v = finite(cli)?;
            let q = parse_poly("q", cli.q.as_ref())?;
            let r = is_key(&v, &q, bound(cli)?)?;
            let mut out = key_line(&r.verdict, &r.epsilon_q);
            let _ = writeln!(out, "epsilon(Q): {}", r.epsilon_q);
            let _ = writeln!(out, "candidates scanned: {}", r.candidates_scanned);
            let _ = writeln!(out, "basis: {}", r.basis);
            let negative = matches!(r.verdict, KeyVerdict::NotKey { .. });
            Ok(report(out, &r, negative))
        }
        Minpair => {
            let v = finite(cli)?;
            let q = parse_poly("q", cli.q.as_ref())?;
            let r = minimal_pair_check(&v, &q, bound(cli)?)?;
            let mut out = minpair_line(&r.verdict, &r.delta_q);
            let _ = writeln!(out, "delta(Q): {}", r.delta_q);
            let _ = writeln!(out, "candidates scanned: {}", r.candidates_scanned);
            let _ = writeln!(out, "exhaustive: {}", r.exhaustive);
            let _ = writeln!(out, "basis: {}", r.basis);
            for c in &r.caveats {
                let _ = writeln!(out, "caveat: {c}");
            }
            let negative = matches!(r.verdict, MinPairVerdict::Violation { .. });
            Ok(report(out, &r, negative))
        }
        Theorem1 => {
            let v = finite(cli)?;
            let q = parse_poly("q", cli.q.as_ref())?;
            let r = theorem1_crosscheck(&v, &q, bound(cli)?)?;
            let mut out = match &r.verdict {
                Theorem1Verdict::Consistent { summary } => format!("Consistent ({summary})\n"),
                Theorem1Verdict::Inconsistent { details } => format!("Inconsistent ({details})\n"),
            };
            let _ = write!(
                out,
                "key polynomial: {}",
                key_line(&r.key.verdict, &r.key.epsilon_q)
            );
            let _ = write!(
                out,
                "minimal pair:   {}",
                minpair_line(&r.minimal_pair.verdict, &r.minimal_pair.delta_q)
            );
            Ok(report(out, &r, !r.verdict.is_consistent()))
        }
        Classify => {
            let v = load_valuation(cli)?;
            let r = classify(&v);
            let values: Vec<String> = r.values.iter().map(ToString::to_string).collect();
            let mut out = format!("{:?}\n", r.classification);
            if !values.is_empty() {
                let _ = writeln!(out, "values: {}", values.join(", "));
            }
            let _ = writeln!(out, "basis: {}", r.basis);
            Ok(report(out, &r, false))
        }
        PcsCheck => {
            let s = pcs(cli)?;
            let ok = pcs_check(&s);
            Ok(report(format!("{ok}\n"), &json!({ "pcs": ok }), !ok))
        }
        PcsTrace => {
            let s = pcs(cli)?;
            let f = parse_poly("poly", cli.poly.as_ref())?;
            let r = pcs_value_trace(&s, &f)?;
            let trace: Vec<String> = r.trace.iter().map(ToString::to_string).collect();
            let verdict = match r.verdict {
                PcsVerdict::FixedAtIndex { index } => format!("FixedAtIndex {index}"),
                PcsVerdict::IncreasingThroughPrefix { from } => {
                    format!("IncreasingThroughPrefix (from index {from})")
                }
                PcsVerdict::NotStabilized => "NotStabilized".into(),
            };
            let out = format!(
                "trace: {}\nverdict: {verdict}  (window {}, prefix only)\n",
                trace.join(", "),
                r.window
            );
            Ok(report(out, &r, false))
        }
        PcsFromChain => {
            let v = finite(cli)?;
            let r = pcs_from_chain(&v)?;
            let rows: Vec<Vec<String>> = r
                .stages
                .iter()
                .enumerate()
                .map(|(k, s)| vec![k.to_string(), s.center.to_string(), s.epsilon.to_string()])
                .collect();
            let mut out = table(&["k", "center", "epsilon"], &rows);
            let rows: Vec<Vec<String>> = r
                .differences
                .iter()
                .map(|d| {
                    vec![
                        format!("{} -> {}", d.earlier, d.later),
                        d.value.to_string(),
                        d.expected.to_string(),
                    ]
                })
                .collect();
            if !rows.is_empty() {
                out.push_str(&table(&["pair", "v(c_l - c_k)", "epsilon_k"], &rows));
            }
            let _ = writeln!(out, "differences match: {}", r.differences_match);
            let _ = writeln!(out, "pcs: {}", r.pcs_check);
            let negative = !(r.differences_match && r.pcs_check);
            Ok(report(out, &r, negative))
        }
        ScanMultiplicativity => {
            let v = finite(cli)?;
            let q = parse_poly("q", cli.q.as_ref())?;
            let spec = corpus(cli);
            let pairs = adversarial_pairs(&q, &spec.polys(), &spec.pairs());
            let r = truncation_multiplicativity_scan(&v, &q, &pairs)?;
            let (text, negative) = match &r {
                MultiplicativityVerdict::Valid { checked } => {
                    (format!("Valid ({checked} pairs)\n"), false)
                }
                MultiplicativityVerdict::Counterexample { f, g, product, sum } => (
                    format!(
                        "Counterexample\nf: {f}\ng: {g}\ntruncated value of fg: {product}\n\
                         sum of truncated values: {sum}\n"
                    ),
                    true,
                ),
            };
            Ok(report(
                text,
                &json!({ "corpus": spec, "result": r }),
                negative,
            ))
        }
        TruncEqual => {
            let v = finite(cli)?;
            let q = parse_poly("q", cli.q.as_ref())?;
            let spec = corpus(cli);
            let r = truncation_equals_on(&v, &q, spec)?;
            let (text, negative) = match &r.verdict {
                TruncationVerdict::Equal { checked } => (
                    format!(
                        "Equal ({checked} polys; corpus degree <= {}, height <= {}, seed {})\n",
                        spec.max_degree, spec.height, spec.seed
                    ),
                    false,
                ),
                TruncationVerdict::Differs {
                    f,
                    truncated,
                    actual,
                } => (
                    format!("Differs\nf: {f}\ntruncated value: {truncated}\nvalue: {actual}\n"),
                    true,
                ),
            };
            Ok(report(text, &r, negative))
        }
        FindQ => {
            let v = finite(cli)?;
            let r = minimal_degree_torsionfree_q(&v, bound(cli)?, corpus(cli))?;
            let (text, negative) = match &r {
                TorsionFreeSearch::Found {
                    q,
                    value,
                    distinct_pairs_checked,
                    distinct_values,
                    truncation,
                    ..
                } => {
                    let trunc = match truncation {
                        TruncationVerdict::Equal { checked } => format!("Equal ({checked} polys)"),
                        TruncationVerdict::Differs { f, .. } => format!("Differs at {f}"),
                    };
                    (
                        format!(
                            "q: {q}\nvalue: {value}\ndistinct values: {distinct_values} \
                             ({distinct_pairs_checked} pairs)\ntruncation at q: {trunc}\n"
                        ),
                        !distinct_values || !matches!(truncation, TruncationVerdict::Equal { .. }),
                    )
                }
                TorsionFreeSearch::NotFound { bound } => (
                    format!(
                        "NotFound (degree <= {}, height <= {})\n",
                        bound.max_degree, bound.height
                    ),
                    false,
                ),
            };
            Ok(report(text, &r, negative))
        }
    }
}

fn pcs(cli: &Cli) -> CliResult<keypoly::PcsPrefix> {
    load_valuation(cli)?
        .as_pcs()
        .cloned()
        .ok_or_else(|| InputError("this command needs a pcs config".into()))
}

fn key_line(v: &KeyVerdict, eps_q: &Value) -> String {
    match v {
        KeyVerdict::Key => "Key\n".into(),
        KeyVerdict::NotKey {
            witness,
            witness_epsilon,
        } => format!("NotKey (witness {witness}, epsilon {witness_epsilon} >= {eps_q})\n"),
        KeyVerdict::UnknownAtBound { bound } => format!(
            "UnknownAtBound (degree <= {}, height <= {})\n",
            bound.max_degree, bound.height
        ),
    }
}

fn minpair_line(v: &MinPairVerdict, delta_q: &Value) -> String {
    match v {
        MinPairVerdict::NoViolation => "NoViolation\n".into(),
        MinPairVerdict::NoViolationAtBound { bound } => format!(
            "NoViolationAtBound (rational candidates, height <= {})\n",
            bound.height
        ),
        MinPairVerdict::Violation { b_prime, distance } => {
            format!("Violation (b' = {b_prime}, distance {distance} >= {delta_q})\n")
        }
        MinPairVerdict::Unknown { b_prime } => {
            format!("Unknown (b' = {b_prime} is within {delta_q} of some roots only)\n")
        }
    }
}
