use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use planepoly::bounds::bound_report;
use planepoly::classes::{membership, quotient_q};
use planepoly::constructions::{
    chain_decompose, chain_strategies, family_eq2, family_gd, family_pd, replay, w_membership,
    whitney_chain, ChainDocument, StrategyParams, WVerdict, WhitneyChain,
};
use planepoly::poly::{format_polynomial, parse_any, to_json, PolynomialDocument};
use planepoly::pullback::{map_sources, pullback};
use planepoly::search::{
    exists_with_terms, min_terms, recheck, CertificateKind, SearchBudget, SearchCertificate,
    SearchOptions, DEFAULT_RULES,
};
use planepoly::{Error, Polynomial};
use serde_json::json;

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "planepoly",
    version,
    about = "Polynomials that equal one on the hyperplane sum(x) = 1"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Print coefficients as decimals (display only).
    #[arg(long, global = true)]
    float: bool,
    /// Variable count for text input (default: highest index used).
    #[arg(long, global = true)]
    vars: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Membership in J, P and H.
    Verify { file: String },
    /// The quotient Q with p - 1 = (s - 1) Q.
    Q { file: String },
    /// Degree and term counts.
    Measure { file: String },
    /// Build a named family or a Whitney chain.
    Construct {
        #[command(subcommand)]
        which: Construct,
    },
    /// Pull back to two variables along a hyperplane map.
    Pullback {
        file: String,
        /// veronese | h2:FILE | linear:U/V (one-based, e.g. 1,2/3)
        #[arg(long)]
        map: String,
    },
    /// Decompose a polynomial into X steps, or replay a chain document.
    Chain { file: String },
    /// Decide membership in W.
    Wcheck {
        file: String,
        /// Accepted for compatibility; the decision is exact and needs no budget.
        #[arg(long, hide = true)]
        budget: Option<String>,
    },
    /// Degree and term-count bounds.
    Bounds { file: String },
    /// Exhaustive minimal-term search over H(n, d).
    Search(SearchArgs),
    /// Re-verify a search certificate.
    Recheck { file: String },
}

#[derive(Subcommand)]
enum Construct {
    /// The invariant family in two variables (odd d).
    Pd {
        #[arg(long)]
        d: u32,
    },
    /// x_n^d + s' (1 + x_n + ... + x_n^(d-1)).
    Gd {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    /// x1^(d-1) s - x1^(d-1) + 1, in J but not in P.
    Eq2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
    },
    /// A Whitney chain of length d.
    Whitney {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u32,
        #[arg(long, default_value = "last-monomial")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: u32,
    /// Decide a single size instead of searching for the minimum.
    #[arg(long)]
    exact_terms: Option<usize>,
    /// N (LP calls), lp=N,secs=S, or unlimited.
    #[arg(long, env = "PLANEPOLY_BUDGET")]
    budget: Option<String>,
    /// Write the certificate here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// First size tried when searching for the minimum.
    #[arg(long)]
    start: Option<usize>,
    /// Comma-separated prune rules.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_RULES.map(String::from))]
    rules: Vec<String>,
    /// Disable pruning (brute force).
    #[arg(long, conflicts_with = "rules")]
    no_prune: bool,
}

struct Ctx {
    json: bool,
    float: bool,
    vars: Option<usize>,
    out: io::StdoutLock<'static>,
}

impl Ctx {
    fn poly(&self, p: &Polynomial) -> String {
        format_polynomial(p, self.float)
    }

    fn line(&mut self, s: impl AsRef<str>) -> anyhow::Result<()> {
        writeln!(self.out, "{}", s.as_ref())?;
        Ok(())
    }

    fn emit_json(&mut self, v: &impl serde::Serialize) -> anyhow::Result<()> {
        serde_json::to_writer_pretty(&mut self.out, v)?;
        writeln!(self.out)?;
        Ok(())
    }

    fn emit_poly(&mut self, p: &Polynomial) -> anyhow::Result<()> {
        if self.json {
            write!(self.out, "{}", to_json(p))?;
            Ok(())
        } else {
            let s = self.poly(p);
            self.line(s)
        }
    }
}

fn read_input(file: &str) -> anyhow::Result<String> {
    if file == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(file).with_context(|| format!("reading {file}"))
    }
}

fn read_poly(ctx: &Ctx, file: &str) -> anyhow::Result<Polynomial> {
    Ok(parse_any(&read_input(file)?, ctx.vars)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn verify(ctx: &mut Ctx, file: &str) -> anyhow::Result<u8> {
    let p = read_poly(ctx, file)?;
    let m = membership(&p);
    if ctx.json {
        ctx.emit_json(&m.report())?;
    } else {
        ctx.line(format!("in_J: {}", yes(m.in_j)))?;
        ctx.line(format!("in_P: {}", yes(m.in_p)))?;
        ctx.line(format!("in_H: {}", yes(m.in_h)))?;
        ctx.line(format!(
            "degree: {}",
            planepoly::classes::degree_string(m.degree)
        ))?;
        ctx.line(format!("N: {}", m.num_terms))?;
        if let Some(q) = &m.quotient {
            let q = ctx.poly(q);
            ctx.line(format!("Q: {q}"))?;
        }
    }
    Ok(if m.in_h { EXIT_OK } else { EXIT_NEGATIVE })
}

fn quotient(ctx: &mut Ctx, file: &str) -> anyhow::Result<u8> {
    let p = read_poly(ctx, file)?;
    let (q, r) = quotient_q(&p);
    if ctx.json {
        ctx.emit_json(&json!({
            "in_j": r.is_zero(),
            "quotient": PolynomialDocument::from(&q),
            "remainder": PolynomialDocument::from(&r),
        }))?;
    } else if r.is_zero() {
        ctx.emit_poly(&q)?;
    } else {
        let (q, r) = (ctx.poly(&q), ctx.poly(&r));
        ctx.line(format!("Q: {q}"))?;
        ctx.line(format!("remainder: {r}"))?;
    }
    Ok(if r.is_zero() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn measure(ctx: &mut Ctx, file: &str) -> anyhow::Result<u8> {
    let p = read_poly(ctx, file)?;
    let m = p.measure()?;
    if ctx.json {
        ctx.emit_json(&m)?;
    } else {
        ctx.line(format!("n: {}", m.n))?;
        ctx.line(format!("d: {}", m.d))?;
        ctx.line(format!("N: {}", m.num_terms))?;
        ctx.line(format!("pure: {}", m.pure_count))?;
        ctx.line(format!("mixed: {}", m.mixed_count))?;
        ctx.line(format!("top_degree: {}", m.top_degree_terms))?;
    }
    Ok(EXIT_OK)
}

fn construct(ctx: &mut Ctx, which: &Construct) -> anyhow::Result<u8> {
    let p = match which {
        Construct::Pd { d } => family_pd(*d)?,
        Construct::Gd { n, d } => family_gd(*n, *d)?,
        Construct::Eq2 { n, d } => family_eq2(*n, *d)?,
        Construct::Whitney {
            n,
            d,
            strategy,
            seed,
        } => {
            let params = StrategyParams {
                seed: *seed,
                ..StrategyParams::default()
            };
            let mut s = chain_strategies().build(strategy, &params)?;
            whitney_chain(*n, *d, s.as_mut())?.result().clone()
        }
    };
    ctx.emit_poly(&p)?;
    Ok(EXIT_OK)
}

fn pullback_cmd(ctx: &mut Ctx, file: &str, spec: &str) -> anyhow::Result<u8> {
    let p = read_poly(ctx, file)?;
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let arg = if name == "h2" {
        read_input(arg)?
    } else {
        arg.to_string()
    };
    let map = map_sources().build(name, &arg)?.build(p.n())?;
    let out = pullback(&p, &map)?;
    ctx.emit_poly(&out)?;
    Ok(EXIT_OK)
}

fn print_steps(
    ctx: &mut Ctx,
    steps: &[Polynomial],
    result: &Polynomial,
    whitney: bool,
) -> anyhow::Result<()> {
    if ctx.json {
        let n = result.n();
        ctx.emit_json(&json!({
            "chain": ChainDocument {
                vars: n,
                steps: steps.iter().map(Into::into).collect(),
            },
            "result": PolynomialDocument::from(result),
            "whitney": whitney,
        }))
    } else {
        for (k, u) in steps.iter().enumerate() {
            let u = ctx.poly(u);
            ctx.line(format!("u{}: {u}", k + 1))?;
        }
        let r = ctx.poly(result);
        ctx.line(format!("result: {r}"))?;
        ctx.line(format!("whitney: {}", yes(whitney)))
    }
}

fn chain(ctx: &mut Ctx, file: &str) -> anyhow::Result<u8> {
    let text = read_input(file)?;
    // a chain document, possibly wrapped as in this command's JSON output
    let chain_value = serde_json::from_str::<serde_json::Value>(&text)
        .ok()
        .and_then(|v| {
            let inner = v.get("chain").cloned().unwrap_or(v);
            inner.get("steps").is_some().then_some(inner)
        });
    let (n, steps) = if let Some(value) = chain_value {
        let doc: ChainDocument =
            serde_json::from_value(value).map_err(|e| Error::Document(e.to_string()))?;
        let steps = doc
            .steps
            .iter()
            .map(|s| s.to_polynomial())
            .collect::<planepoly::Result<Vec<_>>>()?;
        (doc.vars, steps)
    } else {
        let p = parse_any(&text, ctx.vars)?;
        (p.n(), chain_decompose(&p)?)
    };
    let result = replay(n, &steps)?;
    let whitney = WhitneyChain::from_steps(n, steps.clone()).is_ok();
    print_steps(ctx, &steps, &result, whitney)?;
    Ok(EXIT_OK)
}

fn wcheck(ctx: &mut Ctx, file: &str) -> anyhow::Result<u8> {
    let p = read_poly(ctx, file)?;
    let verdict = w_membership(&p)?;
    match &verdict {
        WVerdict::InW(c) => {
            if ctx.json {
                ctx.emit_json(&json!({"status": verdict.status(), "chain": c.to_document()}))?;
            } else {
                ctx.line(verdict.status())?;
                for (k, u) in c.steps().iter().enumerate() {
                    let u = ctx.poly(u);
                    ctx.line(format!("u{}: {u}", k + 1))?;
                }
            }
            Ok(EXIT_OK)
        }
        WVerdict::NotInW(o) => {
            if ctx.json {
                ctx.emit_json(&json!({"status": verdict.status(), "obstruction": o.report()}))?;
            } else {
                let r = o.report();
                ctx.line(verdict.status())?;
                ctx.line(format!("obstruction: {}", r.kind))?;
                ctx.line(format!("quotient: {}", r.quotient))?;
                ctx.line(format!("coefficient {} on {}", r.coeff, r.monomial))?;
            }
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn bounds(ctx: &mut Ctx, file: &str) -> anyhow::Result<u8> {
    let p = read_poly(ctx, file)?;
    let report = bound_report(&p)?;
    if ctx.json {
        ctx.emit_json(&report)?;
    } else {
        ctx.line(format!(
            "n = {}, d = {}, N = {}",
            report.n, report.d, report.num_terms
        ))?;
        ctx.line(format!(
            "{:<24} {:<14} {:>12} {:>9} {:>11} {:>10}",
            "bound", "kind", "value", "observed", "applicable", "satisfied"
        ))?;
        for e in &report.entries {
            let kind = match e.kind {
                planepoly::bounds::BoundKind::DegreeAtMost => "degree <=",
                planepoly::bounds::BoundKind::CountAtLeast => "count >=",
            };
            let status = if !e.applicable {
                "-"
            } else if !e.binding {
                if e.satisfied {
                    "yes"
                } else {
                    "no (conj.)"
                }
            } else {
                yes(e.satisfied)
            };
            ctx.line(format!(
                "{:<24} {:<14} {:>12} {:>9} {:>11} {:>10}",
                e.name,
                kind,
                e.value.to_string(),
                e.observed,
                yes(e.applicable),
                status
            ))?;
        }
    }
    Ok(if report.violations().is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn search(ctx: &mut Ctx, a: &SearchArgs) -> anyhow::Result<u8> {
    let budget: SearchBudget = match &a.budget {
        Some(b) => b.parse()?,
        None => SearchBudget::unlimited(),
    };
    let opts = SearchOptions {
        rules: if a.no_prune {
            Vec::new()
        } else {
            a.rules.clone()
        },
        budget,
        jobs: a.jobs,
        seed: a.seed,
        start_terms: a.start,
        ..SearchOptions::default()
    };
    let cert = match a.exact_terms {
        Some(k) => exists_with_terms(a.n, a.d, k, &opts)?,
        None => min_terms(a.n, a.d, &opts)?,
    };
    if let Some(path) = &a.out {
        write_file(path, &cert.to_json())?;
    }
    summarize(ctx, &cert)?;
    Ok(match cert.kind {
        CertificateKind::Optimum | CertificateKind::Existence => EXIT_OK,
        CertificateKind::Nonexistence => EXIT_NEGATIVE,
        CertificateKind::Partial => EXIT_UNKNOWN,
    })
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn kind_name(k: CertificateKind) -> &'static str {
    match k {
        CertificateKind::Optimum => "optimum",
        CertificateKind::Nonexistence => "nonexistence",
        CertificateKind::Existence => "existence",
        CertificateKind::Partial => "partial",
    }
}

fn summarize(ctx: &mut Ctx, cert: &SearchCertificate) -> anyhow::Result<()> {
    let witnesses = cert
        .witnesses()
        .map(|w| w.polynomial.to_polynomial())
        .collect::<planepoly::Result<Vec<_>>>()?;
    if ctx.json {
        let levels: Vec<_> = cert
            .levels
            .iter()
            .map(|l| {
                json!({
                    "terms": l.terms,
                    "orbits": l.orbits,
                    "pruned": l.pruned,
                    "lp_checked": l.lp_checked,
                    "feasible": l.feasible,
                    "complete": l.complete,
                })
            })
            .collect();
        return ctx.emit_json(&json!({
            "kind": kind_name(cert.kind),
            "n": cert.n,
            "d": cert.d,
            "min_terms": cert.min_terms,
            "target_terms": cert.target_terms,
            "levels": levels,
            "witnesses": witnesses.iter().map(PolynomialDocument::from).collect::<Vec<_>>(),
            "partial_reason": cert.partial_reason,
            "wall_time_ms": cert.wall_time_ms,
        }));
    }
    ctx.line(format!(
        "{} for H({}, {})",
        kind_name(cert.kind),
        cert.n,
        cert.d
    ))?;
    if let Some(k) = cert.min_terms {
        ctx.line(format!("min_terms: {k}"))?;
    }
    if let Some(k) = cert.target_terms {
        ctx.line(format!("terms: {k}"))?;
    }
    for l in &cert.levels {
        let pruned: u64 = l.pruned.values().sum();
        ctx.line(format!(
            "  N = {}: {} orbits, {} pruned, {} LP checked, {} feasible{}",
            l.terms,
            l.orbits,
            pruned,
            l.lp_checked,
            l.feasible,
            if l.complete { "" } else { " (incomplete)" }
        ))?;
    }
    for w in &witnesses {
        let s = ctx.poly(w);
        ctx.line(format!("  witness: {s}"))?;
    }
    if let Some(r) = &cert.partial_reason {
        ctx.line(format!("partial: {r}"))?;
    }
    Ok(())
}

fn recheck_cmd(ctx: &mut Ctx, file: &str) -> anyhow::Result<u8> {
    let text = read_input(file)?;
    let cert: SearchCertificate =
        serde_json::from_str(&text).map_err(|e| Error::Document(format!("certificate: {e}")))?;
    match recheck(&cert) {
        Ok(report) => {
            if ctx.json {
                ctx.emit_json(&json!({"valid": true, "report": report}))?;
            } else {
                ctx.line(format!(
                    "valid {} certificate: {} levels, {} witnesses, {} refutations",
                    kind_name(report.kind),
                    report.levels,
                    report.witnesses,
                    report.refutations
                ))?;
            }
            Ok(EXIT_OK)
        }
        Err(e @ Error::Certificate(_)) | Err(e @ Error::Membership { .. }) => {
            if ctx.json {
                ctx.emit_json(&json!({"valid": false, "reason": e.to_string()}))?;
            } else {
                ctx.line(format!("invalid certificate: {e}"))?;
            }
            Ok(EXIT_NEGATIVE)
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    let mut ctx = Ctx {
        json: cli.json,
        float: cli.float,
        vars: cli.vars,
        out: io::stdout().lock(),
    };
    match &cli.command {
        Command::Verify { file } => verify(&mut ctx, file),
        Command::Q { file } => quotient(&mut ctx, file),
        Command::Measure { file } => measure(&mut ctx, file),
        Command::Construct { which } => construct(&mut ctx, which),
        Command::Pullback { file, map } => pullback_cmd(&mut ctx, file, map),
        Command::Chain { file } => chain(&mut ctx, file),
        Command::Wcheck { file, budget: _ } => wcheck(&mut ctx, file),
        Command::Bounds { file } => bounds(&mut ctx, file),
        Command::Search(a) => search(&mut ctx, a),
        Command::Recheck { file } => recheck_cmd(&mut ctx, file),
    }
}

/// Membership failures are verified negatives; everything else the user
/// supplied wrongly is an input error.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Membership { .. })
        | Some(Error::NotSubpolynomial { .. })
        | Some(Error::Certificate(_)) => EXIT_NEGATIVE,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
