//! Batch front-end for the poset-integral engines: parse posets and
//! tableaux, expand integrals over linear extensions, apply the
//! infinitesimal coactions and the full coproduct, run the
//! verification sweeps for the closed formulas, and emit JSON/LaTeX
//! reports.
//!
//! Exit codes: 0 — success / all verdicts verified; 1 — a
//! verification verdict failed (residual or mismatch, detailed in the
//! report); 2 — input or usage error.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zetaposet::coaction::{delta_poset, dr_poset, drprime_poset, CoactionResult, Mode, ZChoice};
use zetaposet::dsl::{diamond, example1, parse_dsl, w5, wedge};
use zetaposet::formal::FormalSum;
use zetaposet::json::{
    coaction_to_json, poset_from_json, poset_to_json, tableau_from_json, tableau_to_json,
    word_sum_to_json,
};
use zetaposet::latex::{coaction_latex, word_latex, word_sum_latex, LatexOptions};
use zetaposet::numeric::{eval_formal, mzv_eval, NumericValue};
use zetaposet::poset::{LabeledPoset, PathSpec};
use zetaposet::rat::{q_int, q_parse, q_str, Q};
use zetaposet::schur::{smzv_to_poset, TableauIndex};
use zetaposet::verify::{
    binary_posets_up_to_iso, verify_choice_independence, verify_delta_closed_form,
    verify_dr_closed_form, verify_exp_identity, verify_product_identities,
    verify_recursion_identities, verify_word_projection, SpanCache, SweepReport,
};
use zetaposet::words::{is_admissible_word, parse_word_literal, word_to_zeta, IISymbol};
use zetaposet::yamamoto::expand;
use zetaposet::Error;

#[derive(Parser)]
#[command(
    name = "zetaposet",
    version,
    about = "Symbolic motivic iterated integrals over labeled posets",
    propagate_version = true
)]
struct Cli {
    /// Write the self-contained run report as JSON to this path
    /// ('-' for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    report: Option<String>,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Definition,
    Closed,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Definition => Mode::Definition,
            ModeArg::Closed => Mode::Closed,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ZArg {
    First,
    Middle,
    Last,
}

impl From<ZArg> for ZChoice {
    fn from(z: ZArg) -> ZChoice {
        match z {
            ZArg::First => ZChoice::First,
            ZArg::Middle => ZChoice::Middle,
            ZArg::Last => ZChoice::Last,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a poset (JSON file, DSL file, or inline DSL) and report
    /// its elements, labels, covers, and admissibility.
    Validate { input: String },

    /// List the linear extensions of a poset.
    Tot { input: String },

    /// Expand a poset integral into its word sum over linear
    /// extensions.
    Expand {
        input: String,
        /// Path endpoints as two rationals, e.g. '0,1'.
        #[arg(long, default_value = "0,1", value_name = "A,B")]
        path: String,
        /// Also evaluate the expansion numerically (standard path,
        /// admissible {0,1} words only).
        #[arg(long)]
        numeric: bool,
        /// Truncation bound for --numeric.
        #[arg(long, default_value_t = 2000)]
        trunc: u64,
        /// Also print the expansion as LaTeX.
        #[arg(long)]
        latex: bool,
        /// Use zeta notation in LaTeX where convertible.
        #[arg(long)]
        zeta_notation: bool,
    },

    /// Apply the infinitesimal coaction D_r to a poset integral.
    Dr {
        input: String,
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "definition")]
        mode: ModeArg,
        #[arg(long, default_value = "0,1", value_name = "A,B")]
        path: String,
        #[arg(long)]
        latex: bool,
    },

    /// Apply the window-regrouped infinitesimal coaction D'_r.
    Drprime {
        input: String,
        #[arg(long)]
        r: usize,
        /// Which linear extension of each window to fix (the result
        /// is independent of the choice).
        #[arg(long, value_enum, default_value = "first")]
        z: ZArg,
        #[arg(long, default_value = "0,1", value_name = "A,B")]
        path: String,
    },

    /// Apply the full coproduct (sum of the Y-parts over all subsets).
    Coproduct {
        input: String,
        #[arg(long, value_enum, default_value = "definition")]
        mode: ModeArg,
        #[arg(long, default_value = "0,1", value_name = "A,B")]
        path: String,
    },

    /// Verify the closed form of D_r against its definition over an
    /// exhaustive family of labeled posets; differences are certified
    /// in the generated relation span.
    VerifyThm1 {
        /// Largest poset size in the exhaustive family.
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        /// Label set (only '0,1' is implemented).
        #[arg(long, default_value = "0,1")]
        labels: String,
        /// Restrict to a single window size r.
        #[arg(long)]
        r: Option<usize>,
        /// Also include the named larger fixtures in the family.
        #[arg(long)]
        with_fixtures: bool,
    },

    /// Verify the closed form of the Y-part coproduct against its
    /// definition over an exhaustive family of labeled posets.
    VerifyThm2 {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
        #[arg(long, default_value = "0,1")]
        labels: String,
    },

    /// Verify the supporting identities: Z-choice independence, the
    /// word-level projection identity, the exponential identity, and
    /// the product and recursion identities.
    VerifyProps {
        /// Size bound for the product/recursion families.
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        /// Weight bound for the word-level projection identity.
        #[arg(long, default_value_t = 6)]
        max_weight: usize,
        /// Weight bound for the exponential identity.
        #[arg(long, default_value_t = 3)]
        exp_weight: usize,
        /// Number of numeric product spot checks.
        #[arg(long, default_value_t = 20)]
        pairs: usize,
        /// Truncation bound for the numeric spot checks.
        #[arg(long, default_value_t = 2000)]
        trunc: u64,
    },

    /// Convert a tableau index (JSON) to its poset, with an ASCII
    /// rendering of the tableau.
    SchurToPoset { input: String },

    /// Evaluate a poset integral, word literal, or zeta index
    /// numerically with a proven tail bound.
    NumericEval {
        input: String,
        #[arg(long, default_value_t = 2000)]
        trunc: u64,
    },

    /// Emit LaTeX for a poset expansion or a word literal.
    Latex {
        input: String,
        #[arg(long)]
        zeta_notation: bool,
    },
}

// ---------------------------------------------------------------------------
// input loading

/// Reads `input` as a file when one exists at that path; otherwise
/// treats `input` itself as inline text.
fn load_text(input: &str) -> (String, bool) {
    match fs::read_to_string(input) {
        Ok(t) => (t, true),
        Err(_) => (input.to_string(), false),
    }
}

fn load_poset(input: &str) -> Result<(LabeledPoset, Value), Error> {
    let (text, from_file) = load_text(input);
    let trimmed = text.trim();
    let x = if trimmed.starts_with('{') {
        poset_from_json(trimmed)?
    } else {
        parse_dsl(trimmed).map_err(|e| {
            if from_file {
                e
            } else {
                Error::Parse(format!("{input:?} is neither an existing file nor a poset description ({e})"))
            }
        })?
    };
    let inputs = json!({ "source": input, "poset": poset_to_json(&x) });
    Ok((x, inputs))
}

fn load_tableau(input: &str) -> Result<(TableauIndex, Value), Error> {
    let (text, _) = load_text(input);
    let k = tableau_from_json(text.trim())?;
    let inputs = json!({ "source": input, "tableau": tableau_to_json(&k) });
    Ok((k, inputs))
}

fn parse_path(s: &str) -> Result<PathSpec, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::Parse(format!("path must be two rationals 'a,b', got {s:?}")));
    }
    Ok(PathSpec::new(q_parse(parts[0])?, q_parse(parts[1])?, "std"))
}

fn parse_labels(s: &str) -> Result<(), Error> {
    let labels: Vec<Q> = s
        .split(',')
        .map(|t| q_parse(t.trim()))
        .collect::<Result<_, _>>()?;
    if labels == [q_int(0), q_int(1)] {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "only the label set 0,1 is implemented, got {s:?}"
        )))
    }
}

// ---------------------------------------------------------------------------
// text rendering

fn fmt_coeff_term(c: &Q, body: &str) -> String {
    if *c == q_int(1) {
        body.to_string()
    } else if *c == q_int(-1) {
        format!("-{body}")
    } else {
        format!("{}·{body}", q_str(c))
    }
}

fn fmt_word_sum(sum: &FormalSum<IISymbol>) -> String {
    if sum.is_zero() {
        return "0".into();
    }
    sum.iter()
        .map(|(w, c)| fmt_coeff_term(c, &w.to_string()))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn fmt_coaction_lines(res: &CoactionResult) -> Vec<String> {
    res.terms
        .iter()
        .map(|(t, c)| fmt_coeff_term(c, &format!("{} ⊗ {}", t.left, t.right)))
        .collect()
}

/// Zeta notation of a word sum when every positive-weight word is a
/// standard-path admissible {0,1} word.
fn zeta_notation_of(sum: &FormalSum<IISymbol>) -> Option<String> {
    let mut parts = vec![];
    for (w, c) in sum.iter() {
        if w.weight() == 0 {
            parts.push(q_str(c));
            continue;
        }
        if !is_admissible_word(w) {
            return None;
        }
        let (sign, index) = word_to_zeta(&w.interior).ok()?;
        let idx = index.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",");
        parts.push(fmt_coeff_term(&(c * sign), &format!("ζ({idx})")));
    }
    Some(parts.join(" + "))
}

fn numeric_json(v: &NumericValue) -> Value {
    json!({ "value": v.value, "tail_bound": v.tail_bound, "truncation": v.truncation })
}

fn tableau_ascii(k: &TableauIndex) -> Vec<String> {
    let cells: Vec<(u32, u32)> = k.diagram.cells().collect();
    if cells.is_empty() {
        return vec!["(empty tableau)".into()];
    }
    let rmin = cells.iter().map(|c| c.0).min().unwrap();
    let rmax = cells.iter().map(|c| c.0).max().unwrap();
    let cmin = cells.iter().map(|c| c.1).min().unwrap();
    let cmax = cells.iter().map(|c| c.1).max().unwrap();
    let width = cells.iter().map(|&c| k.entry(c).to_string().len()).max().unwrap();
    (rmin..=rmax)
        .map(|r| {
            (cmin..=cmax)
                .map(|c| {
                    if k.diagram.contains((r, c)) {
                        format!("{:>width$}", k.entry((r, c)))
                    } else {
                        " ".repeat(width)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ")
                .trim_end()
                .to_string()
        })
        .collect()
}

// ---------------------------------------------------------------------------
// sweep reporting

fn report_sweep(rep: &SweepReport) -> (Value, bool) {
    println!("{}: {}/{} instances verified", rep.family, rep.verified, rep.instances);
    for f in &rep.failures {
        println!("  FAILED {}: {}", f.instance, f.detail);
    }
    let v = json!({
        "family": rep.family,
        "instances": rep.instances,
        "verified": rep.verified,
        "failures": rep.failures.iter().map(|f| json!({
            "instance": f.instance,
            "detail": f.detail,
        })).collect::<Vec<_>>(),
    });
    (v, rep.all_verified())
}

fn verdict_line(all: bool, what: &str) {
    if all {
        println!("verdict: all instances verified ({what})");
    } else {
        println!("verdict: FAILED ({what})");
    }
}

fn fixture_family() -> Result<Vec<(String, LabeledPoset)>, Error> {
    Ok(vec![
        ("wedge".into(), wedge()),
        ("w5".into(), w5()),
        ("diamond".into(), diamond()),
        ("example1-5".into(), example1(5)?),
    ])
}

// ---------------------------------------------------------------------------
// subcommands

struct RunOutcome {
    inputs: Value,
    outputs: Value,
    verdicts: Vec<Value>,
    pass: bool,
}

impl RunOutcome {
    fn ok(inputs: Value, outputs: Value) -> Self {
        RunOutcome { inputs, outputs, verdicts: vec![], pass: true }
    }
}

fn run(cmd: &Cmd) -> Result<RunOutcome, Error> {
    match cmd {
        Cmd::Validate { input } => {
            let (x, inputs) = load_poset(input)?;
            println!("valid poset with {} elements", x.n());
            for i in 0..x.n() {
                let above: Vec<&str> = x
                    .covers()
                    .iter()
                    .filter(|&&(a, _)| a == i)
                    .map(|&(_, b)| x.name(b))
                    .collect();
                println!(
                    "  {} label {}{}",
                    x.name(i),
                    q_str(x.label(i)),
                    if above.is_empty() {
                        String::new()
                    } else {
                        format!(" ⋖ {}", above.join(", "))
                    }
                );
            }
            let admissible = x.is_admissible(&PathSpec::std());
            println!("admissible for the standard path: {admissible}");
            let outputs = json!({
                "elements": x.n(),
                "covers": x.covers().len(),
                "admissible_std": admissible,
            });
            Ok(RunOutcome::ok(inputs, outputs))
        }

        Cmd::Tot { input } => {
            let (x, inputs) = load_poset(input)?;
            let exts = x.linear_extensions();
            let mut listed = vec![];
            for e in &exts {
                let names: Vec<&str> = e.seq.iter().map(|&i| x.name(i)).collect();
                println!("  {}", names.join(" < "));
                listed.push(json!(names));
            }
            println!("{} linear extensions", exts.len());
            let outputs = json!({ "count": exts.len(), "extensions": listed });
            Ok(RunOutcome::ok(inputs, outputs))
        }

        Cmd::Expand { input, path, numeric, trunc, latex, zeta_notation } => {
            let (x, inputs) = load_poset(input)?;
            let spec = parse_path(path)?;
            let words = expand(&x, &spec)?.words;
            let mut outputs = serde_json::Map::new();
            outputs.insert("expansion".into(), word_sum_to_json(&words));
            let rendered = fmt_word_sum(&words);
            if *numeric {
                let nv = eval_formal(&words, *trunc)?;
                println!("{rendered} ≈ {:.5}", nv.value);
                println!("truncation {} with tail bound ≤ {:.3e}", nv.truncation, nv.tail_bound);
                outputs.insert("numeric".into(), numeric_json(&nv));
            } else {
                println!("{rendered}");
            }
            if let Some(z) = zeta_notation_of(&words) {
                println!("= {z}");
                outputs.insert("zeta".into(), json!(z));
            }
            if *latex {
                let tex = word_sum_latex(&words, LatexOptions { zeta_notation: *zeta_notation });
                println!("latex: {tex}");
                outputs.insert("latex".into(), json!(tex));
            }
            Ok(RunOutcome::ok(inputs, Value::Object(outputs)))
        }

        Cmd::Dr { input, r, mode, path, latex } => {
            let (x, inputs) = load_poset(input)?;
            let spec = parse_path(path)?;
            let res = dr_poset(&x, &spec, *r, (*mode).into())?;
            for line in fmt_coaction_lines(&res) {
                println!("{line}");
            }
            if res.terms.is_zero() {
                println!("0");
            }
            let mut outputs = serde_json::Map::new();
            outputs.insert("coaction".into(), coaction_to_json(&res));
            if *latex {
                let tex = coaction_latex(&res, LatexOptions::default());
                println!("latex: {tex}");
                outputs.insert("latex".into(), json!(tex));
            }
            Ok(RunOutcome::ok(inputs, Value::Object(outputs)))
        }

        Cmd::Drprime { input, r, z, path } => {
            let (x, inputs) = load_poset(input)?;
            let spec = parse_path(path)?;
            let res = drprime_poset(&x, &spec, *r, (*z).into())?;
            for line in fmt_coaction_lines(&res) {
                println!("{line}");
            }
            if res.terms.is_zero() {
                println!("0");
            }
            let outputs = json!({ "coaction": coaction_to_json(&res) });
            Ok(RunOutcome::ok(inputs, outputs))
        }

        Cmd::Coproduct { input, mode, path } => {
            let (x, inputs) = load_poset(input)?;
            let spec = parse_path(path)?;
            let out = delta_poset(&x, &spec, (*mode).into())?;
            for line in fmt_coaction_lines(&out.result) {
                println!("{line}");
            }
            let closed_used = out.reports.iter().filter(|(_, c)| *c).count();
            println!(
                "{} tensor terms; closed form applied to {}/{} subsets",
                out.result.terms.len(),
                closed_used,
                out.reports.len()
            );
            let outputs = json!({
                "coaction": coaction_to_json(&out.result),
                "subsets": out.reports.iter().map(|(y, c)| json!({
                    "mask": y, "closed_form": c,
                })).collect::<Vec<_>>(),
            });
            Ok(RunOutcome::ok(inputs, outputs))
        }

        Cmd::VerifyThm1 { max_size, labels, r, with_fixtures } => {
            parse_labels(labels)?;
            let mut family = binary_posets_up_to_iso(*max_size);
            if *with_fixtures {
                family.extend(fixture_family()?);
            }
            let mut cache = SpanCache::new();
            let rep = verify_dr_closed_form(&family, *r, &mut cache)?;
            let (v, all) = report_sweep(&rep);
            verdict_line(all, &format!("{} instances", rep.instances));
            Ok(RunOutcome {
                inputs: json!({ "max_size": max_size, "labels": labels, "r": r,
                                "with_fixtures": with_fixtures, "posets": family.len() }),
                outputs: json!({}),
                verdicts: vec![v],
                pass: all,
            })
        }

        Cmd::VerifyThm2 { max_size, labels } => {
            parse_labels(labels)?;
            let family = binary_posets_up_to_iso(*max_size);
            let mut cache = SpanCache::new();
            let rep = verify_delta_closed_form(&family, &mut cache)?;
            let (v, all) = report_sweep(&rep);
            verdict_line(all, &format!("{} instances", rep.instances));
            Ok(RunOutcome {
                inputs: json!({ "max_size": max_size, "labels": labels, "posets": family.len() }),
                outputs: json!({}),
                verdicts: vec![v],
                pass: all,
            })
        }

        Cmd::VerifyProps { max_size, max_weight, exp_weight, pairs, trunc } => {
            let mut cache = SpanCache::new();
            let choice_cases: Vec<(String, LabeledPoset, PathSpec)> = fixture_family()?
                .into_iter()
                .filter(|(_, x)| x.is_admissible(&PathSpec::std()))
                .map(|(n, x)| (n, x, PathSpec::std()))
                .collect();
            let reports = vec![
                verify_choice_independence(&choice_cases)?,
                verify_word_projection(*max_weight),
                verify_exp_identity(*exp_weight, &mut cache)?,
                verify_product_identities(*max_size, *pairs, *trunc)?,
                verify_recursion_identities(*max_size)?,
            ];
            let mut verdicts = vec![];
            let mut pass = true;
            for rep in &reports {
                let (v, all) = report_sweep(rep);
                verdicts.push(v);
                pass &= all;
            }
            verdict_line(pass, &format!("{} families", reports.len()));
            Ok(RunOutcome {
                inputs: json!({ "max_size": max_size, "max_weight": max_weight,
                                "exp_weight": exp_weight, "pairs": pairs, "trunc": trunc }),
                outputs: json!({}),
                verdicts,
                pass,
            })
        }

        Cmd::SchurToPoset { input } => {
            let (k, inputs) = load_tableau(input)?;
            for line in tableau_ascii(&k) {
                println!("  {line}");
            }
            println!("weight {}", k.weight());
            let x = smzv_to_poset(&k)?;
            let pj = poset_to_json(&x);
            println!("{}", serde_json::to_string_pretty(&pj).expect("serializable"));
            let outputs = json!({ "poset": pj, "weight": k.weight() });
            Ok(RunOutcome::ok(inputs, outputs))
        }

        Cmd::NumericEval { input, trunc } => {
            let (text, _) = load_text(input);
            let trimmed = text.trim();
            let (echo, nv) = if let Some(body) =
                trimmed.strip_prefix("zeta(").and_then(|s| s.strip_suffix(')'))
            {
                let index: Vec<u32> = body
                    .split(',')
                    .map(|t| {
                        t.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad zeta index entry {t:?}")))
                    })
                    .collect::<Result<_, _>>()?;
                (trimmed.to_string(), mzv_eval(&index, *trunc)?)
            } else if trimmed.starts_with("I(") || trimmed.starts_with("Il(") {
                let w = parse_word_literal(trimmed)?;
                let sum = FormalSum::unit(w);
                (trimmed.to_string(), eval_formal(&sum, *trunc)?)
            } else {
                let (x, _) = load_poset(input)?;
                let words = expand(&x, &PathSpec::std())?.words;
                (fmt_word_sum(&words), eval_formal(&words, *trunc)?)
            };
            println!("{echo}");
            println!("≈ {:.10}", nv.value);
            println!("truncation {} with tail bound ≤ {:.3e}", nv.truncation, nv.tail_bound);
            let outputs = json!({ "echo": echo, "numeric": numeric_json(&nv) });
            Ok(RunOutcome::ok(json!({ "source": input, "trunc": trunc }), outputs))
        }

        Cmd::Latex { input, zeta_notation } => {
            let opts = LatexOptions { zeta_notation: *zeta_notation };
            let (text, _) = load_text(input);
            let trimmed = text.trim();
            let (inputs, tex) = if trimmed.starts_with("I(") || trimmed.starts_with("Il(") {
                let w = parse_word_literal(trimmed)?;
                (json!({ "source": input, "word": trimmed }), word_latex(&w, opts))
            } else {
                let (x, inputs) = load_poset(input)?;
                let words = expand(&x, &PathSpec::std())?.words;
                (inputs, word_sum_latex(&words, opts))
            };
            println!("{tex}");
            Ok(RunOutcome::ok(inputs, json!({ "latex": tex })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match run(&cli.command) {
        Ok(out) => {
            let report = json!({
                "command": std::env::args().skip(1).collect::<Vec<String>>(),
                "inputs": out.inputs,
                "outputs": out.outputs,
                "verdicts": out.verdicts,
                "timing_ms": started.elapsed().as_millis() as u64,
            });
            if let Some(path) = &cli.report {
                let body = serde_json::to_string_pretty(&report).expect("serializable report");
                if path == "-" {
                    println!("{body}");
                } else if let Err(e) = fs::write(path, body + "\n") {
                    eprintln!("error: cannot write report to {path:?}: {e}");
                    return ExitCode::from(2);
                }
            }
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
