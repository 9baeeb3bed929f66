mod format;
mod input;

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use regtough::certify::{
    certify, random_connected_regular, summarize, verify_reports, CertReport, Contradiction,
    CrossCheck, GenerateError, Theorem, VerifyError,
};
use regtough::constructions::{build, ConstructionError, Extremal, ExtremalSpec, Family};
use regtough::graph6::to_graph6_string;
use regtough::spectral::eigenvalues;
use regtough::thresholds::{compare_with_tolerance, phi, psi, Comparison, ThresholdParams};
use regtough::toughness::{
    is_one_over_b_tough, toughness_exact, SearchBudget, ToughnessError, BUDGET_ENV, DEFAULT_BUDGET,
};
use regtough::Graph;

use format::{join_sig10, round10, sig10};
use input::{read_graphs, Record};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_UNDEFINED: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_INFEASIBLE: u8 = 5;
const EXIT_CONTRADICTION: u8 = 6;

/// Eigenvalues smaller than this in magnitude print as 0.
const NOISE_FLOOR: f64 = 1e-12;

/// Largest corpus order accepted by `verify-corpus`.
const CORPUS_MAX_ORDER: usize = 24;

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
    /// Already written to the user; `main` only sets the exit code.
    reported: bool,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into(), reported: false }
    }

    pub fn parse(message: String) -> Self {
        Failure::new(EXIT_PARSE, message)
    }

    pub fn io(message: String) -> Self {
        Failure::new(EXIT_USAGE, message)
    }

    fn reported(mut self) -> Self {
        self.reported = true;
        self
    }

    fn toughness(line: usize, e: &ToughnessError) -> Self {
        let code = match e {
            ToughnessError::BudgetExceeded { .. } | ToughnessError::TooLarge { .. } => EXIT_BUDGET,
            ToughnessError::Complete | ToughnessError::Disconnected => EXIT_UNDEFINED,
            _ => EXIT_USAGE,
        };
        Failure::new(code, format!("line {line}: {e}"))
    }
}

#[derive(Parser)]
#[command(name = "regtough", version, about = "Spectral certificates of toughness for regular graphs")]
struct Cli {
    /// Output style: aligned text or one JSON record per line.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Human)]
    format: OutputFormat,

    /// Maximum number of vertex subsets the exact solver may examine.
    #[arg(long, global = true, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Human,
    Structured,
}

#[derive(clap::Args)]
struct GraphInput {
    /// graph6 file, one graph per line; `-` or absent reads stdin.
    file: Option<PathBuf>,
    /// Inline graph6 string (repeatable); overrides FILE.
    #[arg(long = "g6", value_name = "GRAPH6")]
    g6: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Adjacency eigenvalues, largest first.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
    },
    /// Exact toughness, or the 1/b-toughness decision with --b.
    Tough {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        b: Option<u32>,
    },
    /// Build an extremal graph and print it as graph6.
    Construct {
        /// H, G1star, G2star, G3star or G4star.
        family: Family,
        d: u32,
        b: u32,
        /// Check regularity, connectivity, the eigenvalue boundary and non-toughness.
        #[arg(long)]
        verify: bool,
        /// Write the graph6 line to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply an eigenvalue certificate of 1/b-toughness to each input graph.
    Certify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        b: u32,
        /// 3 compares lambda_2 with phi(d,b); 4 compares lambda_{b+1} with psi(d,b).
        #[arg(long, value_parser = parse_theorem)]
        theorem: Theorem,
        /// Confirm every Certified verdict with the exact solver.
        #[arg(long)]
        cross_check: bool,
    },
    /// Certify and cross-check a seeded corpus of random connected regular graphs.
    VerifyCorpus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        b: u32,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_theorem, default_value = "3")]
        theorem: Theorem,
    },
    /// Tabulate phi(d,b) and psi(d,b) with their branches.
    Thresholds {
        /// Degrees, e.g. `3`, `3..8` or `3-8` (inclusive).
        #[arg(long, value_parser = parse_range)]
        d_range: (u32, u32),
        /// Values of b, same syntax as --d-range.
        #[arg(long, value_parser = parse_range)]
        b_range: (u32, u32),
    },
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "3" | "thm3" => Ok(Theorem::SecondEigenvalue),
        "4" | "thm4" => Ok(Theorem::HigherEigenvalue),
        _ => Err(format!("unknown theorem `{s}` (expected 3 or 4)")),
    }
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let s = s.trim();
    let (lo, hi) = s
        .split_once("..=")
        .or_else(|| s.split_once(".."))
        .or_else(|| s.split_once('-'))
        .unwrap_or((s, s));
    let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad range `{s}`: {e}"));
    let (lo, hi) = (parse(lo)?, parse(hi)?);
    if lo == 0 || lo > hi {
        return Err(format!("range `{s}` must satisfy 1 <= lo <= hi"));
    }
    Ok((lo, hi))
}

struct Ctx {
    out: BufWriter<io::Stdout>,
    structured: bool,
    budget: SearchBudget,
}

impl Ctx {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.out, "{}", s.as_ref());
    }

    fn record(&mut self, v: &impl Serialize) {
        let s = serde_json::to_string(v).expect("records serialize");
        self.line(s);
    }

    /// Reports a per-graph failure without stopping the run.
    fn soft_failure(&mut self, command: &str, line: usize, f: &Failure) {
        if self.structured {
            self.record(&json!({"command": command, "line": line, "error": f.message, "exit_code": f.code}));
        } else {
            let _ = self.out.flush();
            eprintln!("regtough: {}", f.message);
        }
    }
}

fn graph6(g: &Graph) -> String {
    to_graph6_string(g).unwrap_or_default()
}

fn cmd_spectrum(ctx: &mut Ctx, input: &GraphInput) -> Result<(), Failure> {
    for Record { line, graph } in read_graphs(input.file.as_ref(), &input.g6)? {
        let mut values = eigenvalues(&graph).map(|s| s.values).unwrap_or_default();
        // below solver accuracy
        for x in values.iter_mut().filter(|x| x.abs() < NOISE_FLOOR) {
            *x = 0.0;
        }
        if ctx.structured {
            let values: Vec<f64> = values.iter().map(|&x| round10(x)).collect();
            ctx.record(&json!({
                "command": "spectrum", "line": line, "graph6": graph6(&graph),
                "n": graph.order(), "eigenvalues": values,
            }));
        } else {
            ctx.line(join_sig10(&values));
        }
    }
    Ok(())
}

fn cmd_tough(ctx: &mut Ctx, input: &GraphInput, b: Option<u32>) -> Result<(), Failure> {
    let mut first_failure = None;
    for Record { line, graph } in read_graphs(input.file.as_ref(), &input.g6)? {
        let outcome = match b {
            None => toughness_exact(&graph, ctx.budget).map(|r| {
                if ctx.structured {
                    ctx.record(&json!({
                        "command": "tough", "line": line, "graph6": graph6(&graph), "n": graph.order(),
                        "tau": r.to_string(), "witness": r.witness, "components": r.component_count,
                    }));
                } else {
                    ctx.line(format!("{r} witness S = {} ({} components)", r.witness, r.component_count));
                }
            }),
            Some(b) => is_one_over_b_tough(&graph, b as usize, ctx.budget).map(|dec| {
                if ctx.structured {
                    ctx.record(&json!({
                        "command": "tough", "line": line, "graph6": graph6(&graph), "n": graph.order(),
                        "b": b, "tough": dec.tough, "witness": dec.witness, "components": dec.component_count,
                    }));
                } else if dec.tough {
                    ctx.line(format!("1/{b}-tough"));
                } else {
                    let w = dec.witness.expect("witness when not tough");
                    let c = dec.component_count.unwrap_or(0);
                    ctx.line(format!("NOT 1/{b}-tough; witness S = {w} ({c} components)"));
                }
            }),
        };
        if let Err(e) = outcome {
            let f = Failure::toughness(line, &e);
            ctx.soft_failure("tough", line, &f);
            first_failure.get_or_insert(f.reported());
        }
    }
    first_failure.map_or(Ok(()), Err)
}

#[derive(Serialize)]
struct Check {
    check: String,
    pass: bool,
    detail: String,
}

fn construction_checks(e: &Extremal, budget: SearchBudget) -> Vec<Check> {
    let ExtremalSpec { family, d, b } = e.spec;
    let g = &e.graph;
    let p = ThresholdParams::new(d, b).expect("built specs have d, b >= 1");
    let target = phi(p);
    let spec = eigenvalues(g).expect("non-empty");
    let mut checks = Vec::new();

    if family == Family::H {
        let degs = g.degrees();
        let deficient = degs.iter().filter(|&&x| x + 1 == d as usize).count();
        checks.push(Check {
            check: "degrees".into(),
            pass: degs.iter().all(|&x| x == d as usize || x + 1 == d as usize) && deficient > 0,
            detail: format!("{deficient} of {} vertices have degree {}", g.order(), d - 1),
        });
        checks.push(Check { check: "connected".into(), pass: g.is_connected(), detail: String::new() });
        let rho = spec.spectral_radius();
        checks.push(Check {
            check: "spectral radius = phi".into(),
            pass: (rho - target.value).abs() < 1e-6,
            detail: format!("rho = {}, phi = {} [{}]", sig10(rho), sig10(target.value), target.branch.name()),
        });
        return checks;
    }

    checks.push(Check {
        check: "regular".into(),
        pass: g.is_regular() == Some(d as usize),
        detail: format!("d = {d}"),
    });
    checks.push(Check { check: "connected".into(), pass: g.is_connected(), detail: String::new() });
    let l2 = spec.values[1];
    checks.push(Check {
        check: "lambda_2 on phi boundary".into(),
        pass: compare_with_tolerance(l2, &target) == Comparison::Boundary,
        detail: format!("lambda_2 = {}, phi = {} [{}]", sig10(l2), sig10(target.value), target.branch.name()),
    });
    let (pass, detail) = if g.order() <= CORPUS_MAX_ORDER {
        match toughness_exact(g, budget) {
            Ok(r) => (r.tau.numer() * (b as usize) < *r.tau.denom(), format!("tau = {r} (exact)")),
            Err(e) => (false, e.to_string()),
        }
    } else {
        let c = g.delete_vertices(&e.hubs).map(|r| r.components().count).unwrap_or(0);
        let s = e.hubs.len();
        (c > b as usize * s, format!("hub cut |S| = {s} leaves {c} components"))
    };
    checks.push(Check { check: format!("not 1/{b}-tough"), pass, detail });
    checks
}

fn cmd_construct(
    ctx: &mut Ctx,
    family: Family,
    d: u32,
    b: u32,
    verify: bool,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let e = build(ExtremalSpec::new(family, d, b)).map_err(|e| match e {
        ConstructionError::Params(_) | ConstructionError::Infeasible { .. } => Failure::new(EXIT_INFEASIBLE, e.to_string()),
        other => Failure::new(EXIT_USAGE, other.to_string()),
    })?;
    let g6 = graph6(&e.graph);
    if let Some(path) = out {
        fs::write(path, format!("{g6}\n"))
            .map_err(|err| Failure::io(format!("cannot write {}: {err}", path.display())))?;
    }
    let checks = if verify { construction_checks(&e, ctx.budget) } else { Vec::new() };
    if ctx.structured {
        ctx.record(&json!({
            "command": "construct", "family": family.name(), "d": d, "b": b, "n": e.graph.order(),
            "graph6": g6, "hubs": e.hubs, "checks": checks,
        }));
    } else {
        if out.is_none() {
            ctx.line(&g6);
        }
        if verify {
            for c in &checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                ctx.line(format!("{status}  {:<26} {}", c.check, c.detail).trim_end());
            }
        }
    }
    if checks.iter().any(|c| !c.pass) {
        return Err(Failure::new(EXIT_USAGE, "construction failed verification"));
    }
    Ok(())
}

fn cross_check_value(c: &CrossCheck) -> Value {
    serde_json::to_value(c).expect("serializable")
}

fn report_record(command: &str, line: usize, g: &Graph, r: &CertReport) -> Value {
    json!({
        "command": command,
        "line": line,
        "graph6": graph6(g),
        "theorem": r.theorem.name(),
        "n": r.n,
        "d": r.d,
        "b": r.b,
        "k": r.theorem.eigenvalue_index(r.b),
        "eigenvalue": r.eigenvalue_used.map(round10),
        "threshold": r.threshold.map(|t| round10(t.value)),
        "branch": r.threshold.map(|t| t.branch.name()),
        "vacuous": r.threshold.map(|t| t.vacuous),
        "comparison": r.comparison,
        "verdict": r.verdict,
        "margin": r.margin.map(round10),
        "reason": r.reason,
        "cross_check": r.cross_check.as_ref().map(cross_check_value),
    })
}

fn report_human(line: usize, r: &CertReport) -> String {
    let mut s = format!("line {line}: {} {}", r.theorem, r.verdict);
    if let Some(reason) = &r.reason {
        s.push_str(&format!(" ({reason})"));
        return s;
    }
    let k = r.theorem.eigenvalue_index(r.b);
    let t = r.threshold.expect("applicable reports carry a threshold");
    let name = match r.theorem {
        Theorem::SecondEigenvalue => "phi",
        Theorem::HigherEigenvalue => "psi",
    };
    s.push_str(&format!(
        " n={} d={} b={} lambda_{k}={} {name}={} [{}] margin={}",
        r.n,
        r.d.unwrap_or(0),
        r.b,
        sig10(r.eigenvalue_used.unwrap_or(f64::NAN)),
        sig10(t.value),
        t.branch.name(),
        sig10(r.margin.unwrap_or(f64::NAN)),
    ));
    if let Some(Comparison::Boundary) = r.comparison {
        s.push_str(" (boundary)");
    }
    match &r.cross_check {
        Some(CrossCheck::Confirmed { tau: Some(tau) }) => s.push_str(&format!("; cross-check confirmed, tau = {tau}")),
        Some(CrossCheck::Confirmed { tau: None }) => s.push_str("; cross-check confirmed (complete graph)"),
        _ => {}
    }
    s
}

fn contradiction_failure(ctx: &mut Ctx, command: &str, line: Option<usize>, c: &Contradiction) -> Failure {
    if ctx.structured {
        ctx.record(&json!({"command": command, "line": line, "contradiction": c}));
    } else {
        let _ = ctx.out.flush();
        eprintln!(
            "regtough: contradiction on graph {} ({}): {} Certified with margin {}, yet S = {} leaves {} components",
            line.map_or(format!("#{}", c.index), |l| format!("line {l}")),
            c.graph6,
            c.report.theorem,
            sig10(c.report.margin.unwrap_or(f64::NAN)),
            c.witness,
            c.report
                .cross_check
                .as_ref()
                .and_then(|x| match x {
                    CrossCheck::Refuted { components, .. } => Some(*components),
                    _ => None,
                })
                .unwrap_or(0),
        );
        for h in &c.census {
            eprintln!(
                "  component {}: n_H = {} (expected {}), 2m_H = {} (expected {}), e(S,H) = {}",
                h.vertices, h.order, h.expected_order, h.twice_edges, h.expected_twice_edges, h.boundary_edges
            );
        }
    }
    Failure::new(EXIT_CONTRADICTION, "certified graph is not 1/b-tough").reported()
}

fn verify_failure(ctx: &mut Ctx, command: &str, lines: &[usize], e: VerifyError) -> Failure {
    match e {
        VerifyError::Contradiction(c) => {
            let line = lines.get(c.index).copied();
            contradiction_failure(ctx, command, line, &c)
        }
        VerifyError::Solver { index, source } => {
            Failure::toughness(lines.get(index).copied().unwrap_or(index + 1), &source)
        }
    }
}

fn cmd_certify(ctx: &mut Ctx, input: &GraphInput, b: u32, theorem: Theorem, cross: bool) -> Result<(), Failure> {
    let records = read_graphs(input.file.as_ref(), &input.g6)?;
    let lines: Vec<usize> = records.iter().map(|r| r.line).collect();
    let graphs: Vec<Graph> = records.into_iter().map(|r| r.graph).collect();
    let reports = if cross {
        verify_reports(&graphs, b, theorem, ctx.budget).map_err(|e| verify_failure(ctx, "certify", &lines, e))?
    } else {
        graphs.iter().map(|g| certify(g, b, theorem)).collect()
    };
    for ((line, g), r) in lines.iter().zip(&graphs).zip(&reports) {
        if ctx.structured {
            let v = report_record("certify", *line, g, r);
            ctx.record(&v);
        } else {
            let s = report_human(*line, r);
            ctx.line(s);
        }
    }
    Ok(())
}

fn cmd_verify_corpus(
    ctx: &mut Ctx,
    n: usize,
    d: usize,
    b: u32,
    count: usize,
    seed: u64,
    theorem: Theorem,
) -> Result<(), Failure> {
    if n > CORPUS_MAX_ORDER {
        return Err(Failure::new(EXIT_USAGE, format!("--n must be at most {CORPUS_MAX_ORDER}")));
    }
    let graphs = (0..count as u64)
        .map(|i| random_connected_regular(n, d, seed.wrapping_add(i)))
        .collect::<Result<Vec<_>, GenerateError>>()
        .map_err(|e| Failure::new(EXIT_INFEASIBLE, e.to_string()))?;
    let lines: Vec<usize> = (1..=count).collect();
    let reports =
        verify_reports(&graphs, b, theorem, ctx.budget).map_err(|e| verify_failure(ctx, "verify-corpus", &lines, e))?;
    let s = summarize(&reports);
    if ctx.structured {
        ctx.record(&json!({
            "command": "verify-corpus", "n": n, "d": d, "b": b, "seed": seed, "theorem": theorem.name(),
            "total": s.total, "certified_confirmed": s.certified_confirmed, "inconclusive": s.inconclusive,
            "not_applicable": s.not_applicable, "contradictions": 0,
        }));
    } else {
        ctx.line(format!("graphs               {}", s.total));
        ctx.line(format!("certified+confirmed  {}", s.certified_confirmed));
        ctx.line(format!("inconclusive         {}", s.inconclusive));
        ctx.line(format!("not applicable       {}", s.not_applicable));
        ctx.line("contradictions       0");
    }
    Ok(())
}

fn cmd_thresholds(ctx: &mut Ctx, (d_lo, d_hi): (u32, u32), (b_lo, b_hi): (u32, u32)) {
    if !ctx.structured {
        ctx.line(format!(
            "{:>4} {:>4} {:>4}  {:<18} {:>12}  {:<17} {:>12}",
            "d", "b", "c", "phi_branch", "phi", "psi_branch", "psi"
        ));
    }
    for d in d_lo..=d_hi {
        for b in b_lo..=b_hi {
            let p = ThresholdParams::new(d, b).expect("ranges start at 1");
            let (f, s) = (phi(p), psi(p));
            if ctx.structured {
                ctx.record(&json!({
                    "command": "thresholds", "d": d, "b": b, "c": p.c,
                    "phi_branch": f.branch.name(), "phi": round10(f.value), "phi_vacuous": f.vacuous,
                    "psi_branch": s.branch.name(), "psi": round10(s.value), "psi_vacuous": s.vacuous,
                }));
            } else {
                ctx.line(format!(
                    "{d:>4} {b:>4} {:>4}  {:<18} {:>12}  {:<17} {:>12}",
                    p.c,
                    f.branch.name(),
                    sig10(f.value),
                    s.branch.name(),
                    sig10(s.value)
                ));
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut ctx = Ctx {
        out: BufWriter::new(io::stdout()),
        structured: cli.format == OutputFormat::Structured,
        budget: SearchBudget::new(cli.budget),
    };
    let result = match &cli.command {
        Command::Spectrum { input } => cmd_spectrum(&mut ctx, input),
        Command::Tough { input, b } => cmd_tough(&mut ctx, input, *b),
        Command::Construct { family, d, b, verify, out } => {
            cmd_construct(&mut ctx, *family, *d, *b, *verify, out.as_ref())
        }
        Command::Certify { input, b, theorem, cross_check } => cmd_certify(&mut ctx, input, *b, *theorem, *cross_check),
        Command::VerifyCorpus { n, d, b, count, seed, theorem } => {
            cmd_verify_corpus(&mut ctx, *n, *d, *b, *count, *seed, *theorem)
        }
        Command::Thresholds { d_range, b_range } => {
            cmd_thresholds(&mut ctx, *d_range, *b_range);
            Ok(())
        }
    };
    let _ = ctx.out.flush();
    result
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !f.reported {
                eprintln!("regtough: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3"), Ok((3, 3)));
        assert_eq!(parse_range("3..8"), Ok((3, 8)));
        assert_eq!(parse_range("3..=8"), Ok((3, 8)));
        assert_eq!(parse_range("3-8"), Ok((3, 8)));
        assert!(parse_range("0..2").is_err());
        assert!(parse_range("5..2").is_err());
    }

    #[test]
    fn theorems() {
        assert_eq!(parse_theorem("3"), Ok(Theorem::SecondEigenvalue));
        assert_eq!(parse_theorem("thm4"), Ok(Theorem::HigherEigenvalue));
        assert!(parse_theorem("5").is_err());
    }

    #[test]
    fn cli_definition_is_valid() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
