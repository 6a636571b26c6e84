use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use metabelian::families::{predicted_annihilator, predicted_derived_type, IdealFamily};
use metabelian::groups::{verify_annihilator, GroupError, GroupModel, GroupParams};
use metabelian::harness::{
    nonmax_shapes, representative_instances, reproduce_tables, run_cross_oracle_campaign, run_family_campaign,
    run_max_class_campaign, run_nonmax_campaign, run_order_formula_campaign, run_schreier_campaign, write_jsonl,
    CampaignConfig, CampaignKind, Summary, Verdict, VerificationReport,
};
use metabelian::quotient::{build_quotient, default_cap, QuotientError, QuotientModel};
use metabelian::{parse_poly_list, BiPoly};
use serde::Serialize;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(
    name = "metabelian",
    version,
    about = "Annihilator ideals of two-generated metabelian p-groups"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,
    /// Degree cap for quotient construction (default: derived from the generators).
    #[arg(long, global = true)]
    cap: Option<u32>,
    /// Seed for sampled campaigns.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for campaigns.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write output to FILE; for `verify` this receives the JSONL reports.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Print wall-clock time to stderr.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure of Z[X,Y]/I for a comma-separated generator list, e.g. "X^2,Y^2,X*Y+3".
    Quotient { ideal: String },
    /// Expand a named ideal family, e.g. `S mu=5 nu=3 beta=1 delta=0 rho=1`.
    Ideal {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Build a group and check its annihilator, e.g. `nonmax m=5 n=6 alpha=1 beta=1 gamma=1 delta=1 rho=1`.
    Group {
        #[arg(required = true, num_args = 1..)]
        spec: Vec<String>,
    },
    /// Run a verification campaign.
    Verify(VerifyArgs),
    /// Reproduce the parameter and annihilator tables.
    Tables,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// maxclass, nonmax, families, tables, schreier, orderformulas or crossoracle.
    campaign: String,
    /// Primes, comma separated.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<u64>>,
    /// Range of m, e.g. 3..10 (inclusive).
    #[arg(long, value_parser = parse_range)]
    m: Option<RangeInclusive<u32>>,
    /// Range of n for the non-maximal campaign.
    #[arg(long, value_parser = parse_range)]
    n: Option<RangeInclusive<u32>>,
    /// Range of mu for the family and order-formula campaigns.
    #[arg(long, value_parser = parse_range)]
    mu: Option<RangeInclusive<u32>>,
    /// Smallest nu for the order-formula campaign.
    #[arg(long)]
    nu_min: Option<u32>,
    /// Values of rho, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    rho: Option<Vec<i64>>,
    /// Random polynomials per instance in the cross-oracle campaign.
    #[arg(long)]
    samples: Option<usize>,
    /// a-vectors per (p, m, k) before sampling kicks in.
    #[arg(long)]
    a_sample: Option<usize>,
}

/// `a..b`, `a..=b` (both inclusive) or a single value.
fn parse_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u32>()
            .map_err(|_| format!("'{t}' is not a non-negative integer"))
    };
    let r = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let v = num(s)?;
            v..=v
        }
    };
    if r.is_empty() {
        return Err(format!("empty range '{s}'"));
    }
    Ok(r)
}

enum CliError {
    /// Bad input; exit code 2.
    Usage(String),
    /// Well-formed input whose computation failed; exit code 1.
    Failure(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failure(format!("i/o error: {e}"))
    }
}

/// Whether everything checked came out PASS.
type Outcome = Result<bool, CliError>;

struct Ctx {
    format: Format,
    cap: Option<u32>,
    out: Option<PathBuf>,
}

impl Ctx {
    fn sink(&self) -> Result<Box<dyn Write>, CliError> {
        Ok(match &self.out {
            Some(p) => Box::new(BufWriter::new(File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn quotient_error(e: QuotientError) -> CliError {
    match e {
        QuotientError::EmptyGenerators | QuotientError::CapTooSmall { .. } => CliError::Usage(e.to_string()),
        _ => CliError::Failure(e.to_string()),
    }
}

fn build(ctx: &Ctx, gens: &[BiPoly]) -> Result<QuotientModel, CliError> {
    let cap = ctx.cap.unwrap_or_else(|| default_cap(gens));
    build_quotient(gens, cap).map_err(quotient_error)
}

fn list(items: impl IntoIterator<Item = impl ToString>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn write_quotient(w: &mut dyn Write, format: Format, q: &QuotientModel) -> io::Result<()> {
    let e = q.export();
    match format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&e).expect("serializable")),
        Format::Plain => {
            writeln!(w, "generators: {}", list(&e.generators))?;
            writeln!(w, "basis: {}", list(&e.basis))?;
            writeln!(w, "orders: {}", list(&e.orders))?;
            writeln!(w, "direct: {}", e.direct)?;
            writeln!(w, "type: {}", e.ty)?;
            writeln!(w, "order: {}", e.order)
        }
        Format::Markdown => {
            writeln!(w, "| basis element | additive order |\n|---|---|")?;
            for (b, o) in e.basis.iter().zip(&e.orders) {
                writeln!(w, "| {b} | {o} |")?;
            }
            writeln!(w, "\ntype {}, order {}, direct: {}", e.ty, e.order, e.direct)
        }
    }
}

fn cmd_quotient(ctx: &Ctx, ideal: &str) -> Outcome {
    let gens = parse_poly_list(ideal).map_err(|e| CliError::Usage(e.to_string()))?;
    let q = build(ctx, &gens)?;
    write_quotient(&mut *ctx.sink()?, ctx.format, &q)?;
    Ok(true)
}

fn cmd_ideal(ctx: &Ctx, spec: &[String]) -> Outcome {
    let fam = IdealFamily::parse(&spec.join(" ")).map_err(|e| CliError::Usage(e.to_string()))?;
    let gens = fam.generators().map_err(|e| CliError::Usage(e.to_string()))?;
    let q = build(ctx, &gens)?;
    let mut w = ctx.sink()?;
    match ctx.format {
        Format::Json => {
            let v = json!({
                "family": fam.to_string(),
                "generators": gens.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "quotient": q.export(),
            });
            writeln!(w, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
        }
        Format::Plain => {
            writeln!(w, "family: {fam}")?;
            write_quotient(&mut *w, ctx.format, &q)?;
        }
        Format::Markdown => {
            writeln!(w, "**{fam}** = ({})\n", list(&gens))?;
            write_quotient(&mut *w, ctx.format, &q)?;
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct GroupSummary {
    group: String,
    order: String,
    class: u32,
    coclass: u32,
    e: u32,
    k: u32,
    derived_type: String,
    predicted_type: Option<String>,
    predicted_annihilator: Option<String>,
    reports: Vec<VerificationReport>,
}

fn group_error(e: GroupError) -> CliError {
    match e {
        GroupError::InconsistentPresentation { .. } => CliError::Failure(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn cmd_group(ctx: &Ctx, spec: &[String]) -> Outcome {
    let params = GroupParams::parse(&spec.join(" ")).map_err(group_error)?;
    let g = GroupModel::build(&params).map_err(group_error)?;
    let mut reports = Vec::new();
    let ty = predicted_derived_type(&params).ok();
    if let Some(t) = &ty {
        reports.push(VerificationReport::compare(
            "derived_type",
            params.to_string(),
            t.to_string(),
            g.derived_type().to_string(),
        ));
    }
    let pred = predicted_annihilator(&params).ok();
    if let Some(p) = &pred {
        reports.push(verify_annihilator(&g, &p.generators()));
    }
    let s = GroupSummary {
        group: params.to_string(),
        order: format!("{}^{}", params.p(), params.n()),
        class: params.class(),
        coclass: params.coclass(),
        e: params.e(),
        k: params.k(),
        derived_type: g.derived_type().to_string(),
        predicted_type: ty.map(|t| t.to_string()),
        predicted_annihilator: pred.map(|p| p.to_string()),
        reports,
    };
    let none = || "none".to_string();
    let mut w = ctx.sink()?;
    match ctx.format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&s).expect("serializable"))?,
        Format::Plain | Format::Markdown => {
            let bullet = if ctx.format == Format::Markdown { "- " } else { "" };
            writeln!(w, "{bullet}group: {}", s.group)?;
            writeln!(w, "{bullet}order: {}", s.order)?;
            writeln!(
                w,
                "{bullet}class: {}, coclass: {}, e: {}, k: {}",
                s.class, s.coclass, s.e, s.k
            )?;
            writeln!(w, "{bullet}derived subgroup: {}", s.derived_type)?;
            writeln!(
                w,
                "{bullet}predicted type: {}",
                s.predicted_type.clone().unwrap_or_else(none)
            )?;
            writeln!(
                w,
                "{bullet}predicted annihilator: {}",
                s.predicted_annihilator.clone().unwrap_or_else(none)
            )?;
            for r in &s.reports {
                writeln!(w, "{bullet}{} {}: {}", r.verdict, r.claim, r.computed)?;
            }
        }
    }
    Ok(s.reports.iter().all(|r| r.verdict != Verdict::Fail))
}

fn write_reports(w: &mut dyn Write, format: Format, reports: &[VerificationReport]) -> io::Result<()> {
    match format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(reports).expect("serializable")),
        Format::Plain => {
            for r in reports {
                writeln!(
                    w,
                    "{} {} | {} | expected {} | computed {}",
                    r.verdict, r.claim, r.instance, r.expected, r.computed
                )?;
            }
            Ok(())
        }
        Format::Markdown => {
            writeln!(
                w,
                "| verdict | claim | instance | expected | computed |\n|---|---|---|---|---|"
            )?;
            for r in reports {
                writeln!(
                    w,
                    "| {} | {} | {} | {} | {} |",
                    r.verdict, r.claim, r.instance, r.expected, r.computed
                )?;
            }
            Ok(())
        }
    }
}

fn cmd_tables(ctx: &Ctx) -> Outcome {
    let reports = reproduce_tables();
    write_reports(&mut *ctx.sink()?, ctx.format, &reports)?;
    Ok(reports.iter().all(|r| r.verdict != Verdict::Fail))
}

fn run_campaign(args: &VerifyArgs, kind: CampaignKind, cfg: &CampaignConfig) -> Vec<VerificationReport> {
    let p_set = args.p.clone().unwrap_or_else(|| vec![2, 3, 5, 7]);
    let m = args.m.clone().unwrap_or(3..=10);
    match kind {
        CampaignKind::MaxClass => run_max_class_campaign(&p_set, m, cfg),
        CampaignKind::Schreier => run_schreier_campaign(m),
        CampaignKind::NonMax => {
            let shapes = nonmax_shapes(args.n.clone().unwrap_or(5..=13));
            run_nonmax_campaign(&shapes, &args.rho.clone().unwrap_or_else(|| vec![-1, 0, 1]))
        }
        CampaignKind::Families => run_family_campaign(args.mu.clone().unwrap_or(2..=8)),
        CampaignKind::Tables => reproduce_tables(),
        CampaignKind::OrderFormulas => {
            run_order_formula_campaign(args.mu.clone().unwrap_or(3..=10), args.nu_min.unwrap_or(3), &p_set, cfg)
        }
        CampaignKind::CrossOracle => run_cross_oracle_campaign(&representative_instances(), cfg),
    }
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs, seed: Option<u64>) -> Outcome {
    let kind: CampaignKind = args.campaign.parse().map_err(CliError::Usage)?;
    if let Some(p) = args
        .p
        .as_ref()
        .and_then(|ps| ps.iter().find(|&&p| !metabelian::bipoly::is_prime(p)))
    {
        return Err(CliError::Usage(format!("--p: {p} is not a prime")));
    }
    if let Some(r) = args
        .rho
        .as_ref()
        .and_then(|rs| rs.iter().find(|r| !(-1..=1).contains(*r)))
    {
        return Err(CliError::Usage(format!("--rho: {r} is not in {{-1,0,1}}")));
    }
    let mut cfg = CampaignConfig::default();
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(n) = args.samples {
        cfg.oracle_samples = n;
    }
    if let Some(n) = args.a_sample {
        cfg.a_sample = n.max(1);
    }
    let reports = run_campaign(args, kind, &cfg);
    if let Some(path) = &ctx.out {
        write_jsonl(BufWriter::new(File::create(path)?), &reports)?;
    }
    let summary = Summary::from_reports(&reports);
    let mut w = io::stdout().lock();
    match ctx.format {
        Format::Json => writeln!(w, "{}", serde_json::to_string_pretty(&summary).expect("serializable"))?,
        Format::Markdown => write!(w, "{}", summary.to_markdown())?,
        Format::Plain => {
            for (claim, counts) in &summary.counts {
                let parts: Vec<String> = counts.iter().map(|(v, n)| format!("{v}={n}")).collect();
                writeln!(w, "{claim}: {}", parts.join(" "))?;
            }
        }
    }
    if ctx.format != Format::Json {
        let failing: Vec<VerificationReport> = reports
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .take(20)
            .cloned()
            .collect();
        if !failing.is_empty() {
            writeln!(w)?;
            write_reports(&mut w, Format::Plain, &failing)?;
        }
    }
    Ok(summary.all_pass())
}

fn run(cli: &Cli) -> Outcome {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| CliError::Failure(e.to_string()))?;
    }
    let ctx = Ctx {
        format: cli.format,
        cap: cli.cap,
        out: cli.out.clone(),
    };
    match &cli.command {
        Command::Quotient { ideal } => cmd_quotient(&ctx, ideal),
        Command::Ideal { spec } => cmd_ideal(&ctx, spec),
        Command::Group { spec } => cmd_group(&ctx, spec),
        Command::Verify(args) => cmd_verify(&ctx, args, cli.seed),
        Command::Tables => cmd_tables(&ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = run(&cli);
    if cli.timings {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
