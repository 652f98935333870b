//! `dp2`: batch front end for point classification, the map `phi`, the
//! curves `C_P`, point generation and the finite-field oracles.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use dp2_core::checks::{self, CheckResult};
use dp2_core::covers::{generate_points, kappa_rank, sample_params, section_rank, Cover, CoverContext, Param, RNG_NAME};
use dp2_core::exactalg::{Field, Rationals};
use dp2_core::fforacle::{good_prime, SurfaceModP};
use dp2_core::geometry::{c_p_point, classify_point, osculating_section, phi, phi_domain, SectionMinus2K};
use dp2_core::surface::io::{parse_point, SurfaceFile};
use dp2_core::{Dp2Error, Integer, PointDP2, Rational, SurfaceDP2};

/// Bound on the height of the search for a very general seed point.
const SEARCH_BOUND: i64 = 30;
const SECTION_BASIS: [&str; 7] = ["w", "x^2", "xy", "xz", "y^2", "yz", "z^2"];

#[derive(Parser, Debug)]
#[command(name = "dp2", version, about = "Exact computations on degree-2 del Pezzo surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Surface file with tables `f` and `g`
    #[arg(long, global = true)]
    surface: Option<PathBuf>,
    /// TOML file whose `[run]` table supplies defaults for these flags
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// A point `x:y:z:w`; `phi` takes two
    #[arg(long, global = true)]
    point: Vec<String>,
    /// A parameter `u:v` of the pencil through `kappa(P)`
    #[arg(long, global = true)]
    param: Option<String>,
    #[arg(long, global = true)]
    cover: Option<String>,
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[arg(long, global = true)]
    height_bound: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Ramification, exceptional curves and generality of a point
    Classify,
    /// phi(P, Q) and the domain verdict for (P, Q)
    Phi,
    /// A point of C_P and the osculating section cutting it out
    Curve,
    /// Points from a cover with seeded parameters
    Generate,
    /// Point counts, base-locus checks and coverage of phi modulo primes
    Oracle,
    /// The invariant suite with seeded samples
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Phi => "phi",
            Command::Curve => "curve",
            Command::Generate => "generate",
            Command::Oracle => "oracle",
            Command::Verify => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Jsonl,
    Pretty,
}

/// The `[run]` table of a config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunTable {
    surface: Option<PathBuf>,
    point: Option<Vec<String>>,
    param: Option<String>,
    cover: Option<String>,
    budget: Option<usize>,
    height_bound: Option<String>,
    seed: Option<u64>,
    primes: Option<Vec<u64>>,
    format: Option<Format>,
    jobs: Option<usize>,
}

impl RunTable {
    fn from_document(doc: &toml::Table) -> anyhow::Result<Self> {
        match doc.get("run") {
            Some(v) => v.clone().try_into().context("invalid [run] table"),
            None => Ok(RunTable::default()),
        }
    }

    /// Fills the unset fields from `other`.
    fn or(self, other: RunTable) -> RunTable {
        RunTable {
            surface: self.surface.or(other.surface),
            point: self.point.or(other.point),
            param: self.param.or(other.param),
            cover: self.cover.or(other.cover),
            budget: self.budget.or(other.budget),
            height_bound: self.height_bound.or(other.height_bound),
            seed: self.seed.or(other.seed),
            primes: self.primes.or(other.primes),
            format: self.format.or(other.format),
            jobs: self.jobs.or(other.jobs),
        }
    }
}

/// Validated options of a run.
struct RunConfig {
    command: Command,
    surface_path: PathBuf,
    surface: SurfaceDP2,
    points: Vec<PointDP2>,
    param: Option<Param>,
    cover: Cover,
    budget: usize,
    height_bound: Option<Integer>,
    seed: u64,
    primes: Vec<u64>,
    format: Format,
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_param(s: &str) -> anyhow::Result<Param> {
    let (u, v) = s.split_once(':').ok_or_else(|| anyhow!("a parameter has the form u:v, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| anyhow!("not an integer in parameter {s:?}"));
    Param::new(parse(u)?, parse(v)?).map_err(|e| anyhow!("{e}"))
}

/// Parses everything up front; only parse and usage problems fail here,
/// apart from points that are not on the surface.
fn configure(cli: Cli) -> anyhow::Result<RunConfig> {
    let flags = RunTable {
        surface: cli.surface,
        point: (!cli.point.is_empty()).then_some(cli.point),
        param: cli.param,
        cover: cli.cover,
        budget: cli.budget,
        height_bound: cli.height_bound,
        seed: cli.seed,
        primes: cli.primes,
        format: cli.format,
        jobs: cli.jobs,
    };
    let config = match &cli.config {
        Some(path) => {
            let doc: toml::Table = read(path)?.parse().context("config file is not valid TOML")?;
            RunTable::from_document(&doc)?
        }
        None => RunTable::default(),
    };
    let mut opts = flags.or(config);
    let surface_path = opts.surface.clone().ok_or_else(|| anyhow!("no surface file given (use --surface)"))?;
    let file = SurfaceFile::parse(&read(&surface_path)?)?;
    // a [run] table inside the surface file ranks below an explicit config
    opts = opts.or(RunTable::from_document(&file.document)?);
    let surface = file.surface;

    if let Some(n) = opts.jobs {
        if n == 0 {
            bail!("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("cannot configure the thread pool")?;
    }
    let raw_points = opts.point.unwrap_or_default();
    let mut parsed = Vec::new();
    for s in &raw_points {
        let (x, w) = parse_point(s)?;
        parsed.push((x, w));
    }
    let cover = match opts.cover.as_deref() {
        Some(c) => c.parse::<Cover>()?,
        None => Cover::F2,
    };
    let height_bound = match opts.height_bound {
        Some(h) => Some(h.trim().parse::<Integer>().map_err(|_| anyhow!("--height-bound must be an integer, got {h:?}"))?),
        None => None,
    };
    let param = opts.param.as_deref().map(parse_param).transpose()?;
    let command = cli.command;
    let want = match command {
        Command::Classify | Command::Curve => 1..=1,
        Command::Phi => 2..=2,
        Command::Generate => 0..=1,
        Command::Oracle => 0..=2,
        Command::Verify => 0..=0,
    };
    if !want.contains(&parsed.len()) {
        bail!("`{}` takes {} --point value(s), got {}", command.name(), fmt_range(&want), parsed.len());
    }
    if matches!(command, Command::Oracle) && parsed.len() == 1 {
        bail!("`oracle` takes no --point or a pair");
    }
    if matches!(command, Command::Curve) && param.is_none() {
        bail!("`curve` needs --param u:v");
    }
    let points = parsed.into_iter().map(|(x, w)| surface.point_from_original(x, w)).collect::<Result<Vec<_>, _>>()?;
    Ok(RunConfig {
        command,
        surface_path,
        surface,
        points,
        param,
        cover,
        budget: opts.budget.unwrap_or(200),
        height_bound,
        seed: opts.seed.unwrap_or(1),
        primes: opts.primes.unwrap_or_else(|| vec![5, 7, 11, 13]),
        format: opts.format.unwrap_or(Format::Jsonl),
    })
}

fn fmt_range(r: &std::ops::RangeInclusive<usize>) -> String {
    if r.start() == r.end() {
        r.start().to_string()
    } else {
        format!("{} to {}", r.start(), r.end())
    }
}

/// A point in the coordinates of the surface file.
fn show(s: &SurfaceDP2, p: &PointDP2) -> String {
    let [x, y, z] = &p.x;
    format!("{x}:{y}:{z}:{}", &p.w / s.mu())
}

fn show_section(s: &SurfaceDP2, sec: &SectionMinus2K<Rational>) -> Value {
    let mut v = sec.to_vector(&Rationals);
    v[0] = &v[0] * s.mu();
    let coefficients: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    json!({ "basis": SECTION_BASIS, "coefficients": coefficients })
}

fn error_record(e: &Dp2Error) -> Value {
    let kind = format!("{e:?}");
    let kind = kind.split(['(', ' ', '{']).next().unwrap_or_default().to_string();
    json!({ "kind": "error", "error": kind, "message": e.to_string(), "exit_code": e.exit_code() })
}

fn check_record(c: &CheckResult) -> Value {
    json!({ "kind": "check", "name": c.name, "passed": c.passed(), "tested": c.tested, "failures": c.failures })
}

struct Session {
    records: Vec<Value>,
    exit: u8,
}

impl Session {
    fn push(&mut self, v: Value) {
        self.records.push(v);
    }

    fn fail(&mut self, code: u8) {
        self.exit = self.exit.max(code);
    }
}

fn classify(cfg: &RunConfig, out: &mut Session) -> anyhow::Result<()> {
    let s = &cfg.surface;
    let p = &cfg.points[0];
    let mut rec = serde_json::to_value(classify_point(s, p))?;
    rec["kind"] = json!("classification");
    rec["point"] = json!(show(s, p));
    out.push(rec);
    Ok(())
}

fn phi_cmd(cfg: &RunConfig, out: &mut Session) -> anyhow::Result<()> {
    let s = &cfg.surface;
    let (p, q) = (&cfg.points[0], &cfg.points[1]);
    let verdict = phi_domain(s, p, q);
    let r = phi(s, p, q)?;
    out.push(json!({
        "kind": "phi",
        "p": show(s, p),
        "q": show(s, q),
        "r": show(s, &r),
        "domain": verdict,
    }));
    Ok(())
}

fn curve(cfg: &RunConfig, out: &mut Session) -> anyhow::Result<()> {
    let s = &cfg.surface;
    let k = Rationals;
    let p = &cfg.points[0];
    let a = cfg.param.expect("checked in configure");
    let section = osculating_section(s, p)?;
    let r = c_p_point(s, p, &k.from_i64(a.u), &k.from_i64(a.v))?;
    out.push(json!({
        "kind": "curve",
        "p": show(s, p),
        "param": a.to_string(),
        "section": show_section(s, &section),
        "point": show(s, &r),
        "on_section": k.is_zero(&section.eval(&k, &r)),
    }));
    Ok(())
}

fn generate(cfg: &RunConfig, out: &mut Session) -> anyhow::Result<()> {
    let s = &cfg.surface;
    let ctx = CoverContext::search(s.clone(), cfg.points.first().cloned(), SEARCH_BOUND)?;
    out.push(json!({
        "kind": "context",
        "p0": show(s, &ctx.p0),
        "section": show_section(s, &ctx.section),
        "cover": cfg.cover,
        "budget": cfg.budget,
        "seed": cfg.seed,
        "height_bound": cfg.height_bound.as_ref().map(|h| h.to_string()),
    }));
    let (points, stats) = generate_points(&ctx, cfg.cover, cfg.budget, cfg.height_bound.as_ref(), cfg.seed);
    for g in &points {
        let params: Vec<String> = g.params.iter().map(|a| a.to_string()).collect();
        out.push(json!({
            "kind": "point",
            "point": show(s, &g.point),
            "height": g.height.to_string(),
            "cover": g.cover,
            "params": params,
        }));
    }
    let sample: Vec<PointDP2> = points.iter().take(30).map(|g| g.point.clone()).collect();
    let (sr, kr) = (section_rank(&sample), kappa_rank(&sample));
    out.push(json!({
        "kind": "summary",
        "stats": stats,
        "rank_proxy": { "points": sample.len(), "section_rank": sr, "kappa_rank": kr, "passed": sr == 7 && kr == 3 },
    }));
    Ok(())
}

/// Exact values of `phi` whose reductions are checked against the base locus.
fn oracle_examples(cfg: &RunConfig) -> Vec<(PointDP2, PointDP2, PointDP2)> {
    let s = &cfg.surface;
    let pairs: Vec<(PointDP2, PointDP2)> = if cfg.points.len() == 2 {
        vec![(cfg.points[0].clone(), cfg.points[1].clone())]
    } else {
        let pts = checks::very_general_sample(s, 4, SEARCH_BOUND);
        pts.iter().enumerate().flat_map(|(i, p)| pts[i + 1..].iter().map(move |q| (p.clone(), q.clone()))).collect()
    };
    pairs.into_iter().filter_map(|(p, q)| phi(s, &p, &q).ok().map(|r| (p, q, r))).collect()
}

fn oracle(cfg: &RunConfig, out: &mut Session) -> anyhow::Result<()> {
    let s = &cfg.surface;
    let examples = oracle_examples(cfg);
    for &p in &cfg.primes {
        if !good_prime(s, p) {
            out.push(json!({ "kind": "prime", "p": p, "status": "bad", "error": error_record(&Dp2Error::BadPrime(p)) }));
            continue;
        }
        let m = SurfaceModP::new(s, p)?;
        let n = m.points().len() as i64;
        let (centre, width) = ((p * p + 1) as i64, 8 * p as i64);
        let (mut confirmed, mut rejected, mut skipped) = (0, 0, 0);
        for (a, b, r) in &examples {
            let red = (|| Some((m.reduce(s, a).ok()?, m.reduce(s, b).ok()?, m.reduce(s, r).ok()?)))();
            let verdict = red.map(|(a, b, r)| m.base_locus_oracle(&a, &b, &r));
            match verdict {
                Some(Ok(true)) => confirmed += 1,
                Some(Ok(false)) => rejected += 1,
                _ => skipped += 1,
            }
        }
        if rejected > 0 {
            out.fail(2);
        }
        let surj = m.phi_surjectivity();
        out.push(json!({
            "kind": "prime",
            "p": p,
            "status": "good",
            "points": n,
            "band": [centre - width, centre + width],
            "within_band": (n - centre).abs() <= width,
            "base_locus": { "confirmed": confirmed, "rejected": rejected, "skipped": skipped },
            "surjectivity": { "hit": surj.hit, "total": surj.total, "coverage": surj.coverage(), "missed": surj.missed },
        }));
    }
    Ok(())
}

fn verify(cfg: &RunConfig, out: &mut Session) -> anyhow::Result<()> {
    let s = &cfg.surface;
    let vg = checks::very_general_sample(s, 12, SEARCH_BOUND);
    let ctx = CoverContext::search(s.clone(), vg.first().cloned(), SEARCH_BOUND)?;
    let params: Vec<Param> = sample_params(Cover::F1, 20, cfg.seed).into_iter().flatten().collect();
    let on_curve: Vec<PointDP2> = params.iter().filter_map(|a| ctx.f1(*a).ok()).collect();
    let seconds: Vec<PointDP2> = vg.iter().chain(&on_curve).cloned().collect();
    let pairs = checks::u_inv_pairs(s, &vg, &seconds, 30, cfg.seed);
    let (generated, _) = generate_points(&ctx, Cover::F2, 100, None, cfg.seed);
    let generated: Vec<PointDP2> = generated.into_iter().map(|g| g.point).collect();
    let small = s.small_points(3);
    let everything: Vec<PointDP2> = small.iter().chain(&seconds).chain(&generated).cloned().collect();
    let tested_classes: Vec<PointDP2> = small.iter().chain(&vg).cloned().collect();
    let results = [
        checks::geiser_involution(s, &everything),
        checks::phi_involution(s, &pairs),
        checks::origin_independence(s, &pairs),
        checks::c_p_agreement(&ctx, &params),
        checks::osculation_uniqueness(s, &vg),
        checks::exceptional_bound(s, &tested_classes),
        checks::rank_proxy(&generated[..generated.len().min(30)]),
    ];
    for r in &results {
        if !r.passed() {
            out.fail(2);
        }
        out.push(check_record(r));
    }
    Ok(())
}

fn run(cfg: &RunConfig, out: &mut Session) -> anyhow::Result<()> {
    match cfg.command {
        Command::Classify => classify(cfg, out),
        Command::Phi => phi_cmd(cfg, out),
        Command::Curve => curve(cfg, out),
        Command::Generate => generate(cfg, out),
        Command::Oracle => oracle(cfg, out),
        Command::Verify => verify(cfg, out),
    }
}

fn emit(records: &[Value], format: Format) {
    match format {
        Format::Jsonl => {
            for r in records {
                println!("{r}");
            }
        }
        Format::Pretty => println!("{}", serde_json::to_string_pretty(records).expect("json values serialize")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let cfg = match configure(cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("dp2: {e:#}");
            let code = e.downcast_ref::<Dp2Error>().map_or(1, |d| d.exit_code());
            if let Some(d) = e.downcast_ref::<Dp2Error>() {
                println!("{}", error_record(d));
            }
            return ExitCode::from(code as u8);
        }
    };
    let mut out = Session {
        records: vec![json!({
            "kind": "meta",
            "tool": "dp2",
            "version": env!("CARGO_PKG_VERSION"),
            "command": cfg.command.name(),
            "surface": cfg.surface_path.display().to_string(),
            "rng": RNG_NAME,
        })],
        exit: 0,
    };
    if let Err(e) = run(&cfg, &mut out) {
        eprintln!("dp2: {e:#}");
        match e.downcast_ref::<Dp2Error>() {
            Some(d) => {
                out.push(error_record(d));
                out.fail(d.exit_code() as u8);
            }
            None => out.fail(1),
        }
    }
    emit(&out.records, cfg.format);
    ExitCode::from(out.exit)
}
