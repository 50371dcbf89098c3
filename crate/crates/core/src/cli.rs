//! Command-line front end.
//!
//! Exit codes: 0 success, 1 check failure, 2 usage error, 3 parse or
//! validation error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::angles::{AngleModel, RegionWeightVector};
use crate::anglevec::{analyze, Analysis, AnalysisReport, AnalyzeOptions, CheckResult, RegionScope, Side, CHECK_NAMES};
use crate::error::Error;
use crate::geometry::{format_rational, parse_rational, RVector};
use crate::polytope::{Polytope, VPolytope};
use crate::search::{
    flattening_experiment, non_unimodal_search, projective_one_dark_facet_search, random_verify_campaign,
    run_example, shelling_scope, CampaignConfig, ExampleOutcome, ExampleOverrides, SearchConfig, SearchMode,
};
use crate::vectors::{FVector, HVector};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "anglevec", version, about = "Angle vectors of simplicial polytopes in exact arithmetic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Inputs {
    #[arg(long)]
    pub polytope: PathBuf,
    #[arg(long)]
    pub angle: PathBuf,
    /// Overrides the seed of a Monte-Carlo model.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides the sample count of a Monte-Carlo model.
    #[arg(long)]
    pub samples: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full report for a polytope and a cone angle.
    Analyze(Inputs),
    /// List the regions of the normal-fan arrangement.
    Regions {
        #[arg(long)]
        polytope: PathBuf,
    },
    /// Run selected checks; exit 0 iff all pass.
    Verify {
        #[command(flatten)]
        inputs: Inputs,
        /// Comma-separated check names, default all.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
    },
    /// Run a built-in example and compare with its expected values.
    Example {
        #[arg(long)]
        name: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Random searches and verification campaigns.
    Search {
        #[arg(long, value_enum, default_value_t = ModeArg::RandomVerify)]
        mode: ModeArg,
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 8)]
        vertices: usize,
        /// Campaign size.
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        max_iter: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Flattening factors for `--mode flatten`.
        #[arg(long, value_delimiter = ',', default_value = "1/2,1/10,1/100,1/1000")]
        eps: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    NonUnimodal,
    OneDarkFacet,
    RandomVerify,
    Flatten,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::NonUnimodal => SearchMode::NonUnimodal,
            ModeArg::OneDarkFacet => SearchMode::OneDarkFacetProjective,
            ModeArg::RandomVerify => SearchMode::RandomVerify,
            ModeArg::Flatten => SearchMode::Flatten,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn report(&self) -> (i32, String) {
        match self {
            Failure::Usage(m) => (EXIT_USAGE, format!("error[E_USAGE]: {m}")),
            Failure::Io(m) => (EXIT_INVALID, format!("error[E_IO]: {m}")),
            Failure::Lib(e) => {
                let code = match e {
                    Error::CampaignFailure(_)
                    | Error::SearchNotFound { .. }
                    | Error::RouteDisagreement { .. }
                    | Error::Shelling(_) => EXIT_CHECK_FAILED,
                    _ => EXIT_INVALID,
                };
                (code, format!("error[{}]: {e}", e.code()))
            }
        }
    }
}

/// Command output and whether every check in it passed.
struct Output {
    text: String,
    ok: bool,
}

/// Entry point; `argv[0]` is the program name.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    EXIT_OK
                }
                _ => {
                    eprintln!("error[E_USAGE]: {}", e.to_string().trim_end());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli).and_then(|o| emit(&cli, o)) {
        Ok(ok) => {
            if ok {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(f) => {
            let (code, msg) = f.report();
            eprintln!("{msg}");
            code
        }
    }
}

fn emit(cli: &Cli, out: Output) -> Result<bool, Failure> {
    match &cli.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?,
        None => print!("{}", out.text),
    }
    Ok(out.ok)
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    dim: usize,
    vertices: Vec<RVector>,
}

pub fn load_polytope(text: &str) -> crate::Result<VPolytope> {
    let raw: PolytopeFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("polytope: {e}")))?;
    VPolytope::new(raw.dim, raw.vertices)
}

pub fn load_angle(text: &str) -> crate::Result<AngleModel> {
    let model: AngleModel = serde_json::from_str(text).map_err(|e| Error::Parse(format!("angle: {e}")))?;
    model.validate()?;
    Ok(model)
}

fn prepare(inputs: &Inputs) -> Result<(Analysis, RegionWeightVector), Failure> {
    let p = load_polytope(&read(&inputs.polytope)?)?;
    let id = inputs
        .polytope
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let mut model = load_angle(&read(&inputs.angle)?)?;
    if let AngleModel::SphericalMc { samples, seed } = &mut model {
        *samples = inputs.samples.unwrap_or(*samples);
        *seed = inputs.seed.unwrap_or(*seed);
    }
    let a = Analysis::new(p)?.with_id(id);
    let w = a.weights(&model)?;
    Ok((a, w))
}

fn scope_for(w: &RegionWeightVector) -> RegionScope {
    if w.is_exact() {
        RegionScope::All
    } else {
        RegionScope::Support
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Analyze(inputs) => {
            let (a, w) = prepare(inputs)?;
            let report = analyze(
                &a,
                &w,
                AnalyzeOptions {
                    scope: scope_for(&w),
                    shelling: Some(shelling_scope(&a, scope_for(&w))),
                },
            )?;
            let ok = report.failures().next().is_none();
            let text = if json { to_json(&report) } else { report_text(&report) };
            Ok(Output { text, ok })
        }
        Command::Regions { polytope } => {
            let p = load_polytope(&read(polytope)?)?;
            let a = Analysis::new(p)?;
            let listing = region_listing(&a);
            let text = if json { to_json(&listing) } else { listing_text(&listing) };
            Ok(Output { text, ok: true })
        }
        Command::Verify { inputs, checks } => {
            for c in checks {
                if !CHECK_NAMES.contains(&c.as_str()) {
                    return Err(Failure::Usage(format!(
                        "unknown check {c:?}; known checks: {}",
                        CHECK_NAMES.join(",")
                    )));
                }
            }
            let (a, w) = prepare(inputs)?;
            let selected = |name: &str| checks.is_empty() || checks.iter().any(|c| c == name);
            let report = analyze(
                &a,
                &w,
                AnalyzeOptions {
                    scope: scope_for(&w),
                    shelling: selected("shelling").then(|| shelling_scope(&a, scope_for(&w))),
                },
            )?;
            let results: Vec<CheckResult> = report.checks.into_iter().filter(|c| selected(&c.name)).collect();
            let ok = results.iter().all(|c| !c.status.is_failure());
            let text = if json { to_json(&results) } else { checks_text(&results) };
            Ok(Output { text, ok })
        }
        Command::Example {
            name,
            seed,
            samples,
            max_iter,
        } => {
            let outcome = run_example(
                name,
                ExampleOverrides {
                    seed: *seed,
                    samples: *samples,
                    max_iter: *max_iter,
                },
            )?;
            let ok = outcome.passed();
            let text = if json { to_json(&outcome) } else { example_text(&outcome) };
            Ok(Output { text, ok })
        }
        Command::Search {
            mode,
            dim,
            vertices,
            instances,
            seed,
            max_iter,
            samples,
            eps,
        } => {
            let cfg = SearchConfig {
                dim: *dim,
                vertices: *vertices,
                seed: *seed,
                max_iter: *max_iter,
                mode: (*mode).into(),
                samples: *samples,
            };
            search(cfg, *instances, eps, json)
        }
    }
}

fn search(cfg: SearchConfig, instances: usize, eps: &[String], json: bool) -> Result<Output, Failure> {
    match cfg.mode {
        SearchMode::RandomVerify => {
            let s = random_verify_campaign(CampaignConfig {
                instances,
                max_dim: cfg.dim,
                seed: cfg.seed,
                enforce_unimodality: true,
            })?;
            let text = if json {
                to_json(&s)
            } else {
                let mut t = String::new();
                let _ = writeln!(t, "campaign: {} instances ({} even), all checks passed", s.instances, s.even_instances);
                for (d, n) in &s.per_dim {
                    let _ = writeln!(t, "  d={d}: {n} instances");
                }
                let _ = writeln!(t, "regions checked: {} (max {} per instance)", s.regions_checked, s.max_regions);
                let _ = writeln!(t, "non-unimodal gamma-hat found: {}", s.non_unimodal.len());
                for i in &s.non_unimodal {
                    let _ = writeln!(t, "  instance {} d={} seed={}: {}", i.index, i.dim, i.seed, i.gamma_hat.labeled("gamma"));
                }
                t
            };
            Ok(Output { text, ok: true })
        }
        SearchMode::NonUnimodal => {
            cfg.validate()?;
            let inst = non_unimodal_search(cfg.dim, cfg.vertices, cfg.seed, cfg.max_iter)?;
            let text = if json {
                to_json(&inst)
            } else {
                format!(
                    "non-unimodal after {} tries (instance seed {})\nvertices: {}\n{}\n",
                    inst.index + 1,
                    inst.seed,
                    serde_json::to_string(&inst.vertices).expect("serializable"),
                    inst.gamma_hat.labeled("gamma")
                )
            };
            Ok(Output { text, ok: true })
        }
        SearchMode::OneDarkFacetProjective => {
            let p = Polytope::new(crate::search::cross_polytope(cfg.dim))?;
            let found = projective_one_dark_facet_search(&p, cfg.seed, cfg.max_iter)?;
            #[derive(Serialize)]
            struct Found<'a> {
                polytope: &'a VPolytope,
                map: &'a RVector,
                region: String,
                iterations: usize,
            }
            let f = Found {
                polytope: &found.polytope,
                map: &found.map,
                region: found.region.signs.to_string(),
                iterations: found.iterations,
            };
            let text = if json {
                to_json(&f)
            } else {
                format!(
                    "one-dark-facet region {} after {} iterations\nmap c = {}\nvertices: {}\n",
                    f.region,
                    f.iterations,
                    f.map,
                    serde_json::to_string(f.polytope).expect("serializable")
                )
            };
            Ok(Output { text, ok: true })
        }
        SearchMode::Flatten => {
            let eps = eps
                .iter()
                .map(|e| parse_rational(e))
                .collect::<crate::Result<Vec<_>>>()?;
            let r = flattening_experiment(&eps, cfg.samples, cfg.seed)?;
            let text = if json {
                to_json(&r)
            } else {
                let mut t = String::new();
                let _ = writeln!(t, "gamma(alpha, P)   = ({})", r.gamma.join(", "));
                let _ = writeln!(t, "2 gamma(alpha, P) = ({})", r.twice_gamma.join(", "));
                for s in &r.steps {
                    let g: Vec<String> = s.gamma_hat.iter().map(|x| format!("{x:.4}")).collect();
                    let _ = writeln!(
                        t,
                        "eps={:<8} same-combinatorics={} gamma(nu)=({}) dist-to-gamma={:.4} dist-to-2gamma={:.4}",
                        s.eps,
                        s.same_combinatorics,
                        g.join(", "),
                        s.distance_to_gamma,
                        s.distance_to_twice_gamma
                    );
                }
                t
            };
            Ok(Output { text, ok: true })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionEntry {
    pub signs: String,
    pub witness: RVector,
    pub dark_facets: usize,
    pub f_dark: FVector,
    pub h_dark: Option<HVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionListing {
    pub hyperplanes: Vec<RVector>,
    pub regions: Vec<RegionEntry>,
}

pub fn region_listing(a: &Analysis) -> RegionListing {
    let simplicial = a.is_simplicial();
    let regions = a
        .regions()
        .iter()
        .map(|r| {
            let dec = a.decomposition(&r.signs, Side::Original);
            let f_dark = dec.dark.f_vector().clone();
            RegionEntry {
                signs: r.signs.to_string(),
                witness: r.witness.clone(),
                dark_facets: usize::try_from(f_dark.at(a.dim() as i32 - 1)).unwrap_or(0),
                h_dark: simplicial.then(|| dec.dark.h_vector()),
                f_dark,
            }
        })
        .collect();
    RegionListing {
        hyperplanes: a
            .arrangement()
            .hyperplanes()
            .iter()
            .map(|h| RVector::from_bigints(h))
            .collect(),
        regions,
    }
}

fn listing_text(l: &RegionListing) -> String {
    let mut t = String::new();
    let _ = writeln!(t, "{} hyperplanes, {} regions", l.hyperplanes.len(), l.regions.len());
    for (i, h) in l.hyperplanes.iter().enumerate() {
        let _ = writeln!(t, "  H{i}: {h}");
    }
    for r in &l.regions {
        let _ = write!(t, "{} witness={} dark-facets={} {}", r.signs, r.witness, r.dark_facets, r.f_dark.labeled("fD"));
        if let Some(h) = &r.h_dark {
            let _ = write!(t, " {}", h.labeled("hD"));
        }
        t.push('\n');
    }
    t
}

fn checks_text(checks: &[CheckResult]) -> String {
    let mut t = String::new();
    for c in checks {
        let status = serde_json::to_value(c.status).expect("enum");
        let _ = write!(t, "{:<12} {}", c.name, status.as_str().unwrap_or(""));
        if let Some(w) = &c.witness {
            let _ = write!(t, "  {w}");
        }
        t.push('\n');
    }
    t
}

pub fn report_text(r: &AnalysisReport) -> String {
    let mut t = String::new();
    let p = &r.polytope;
    let _ = writeln!(
        t,
        "polytope {}: dim {}, {} vertices, {} facets, simplicial {}",
        if p.id.is_empty() { "-" } else { &p.id },
        p.dim,
        p.vertices,
        p.facets,
        p.simplicial
    );
    let _ = writeln!(
        t,
        "arrangement: {} hyperplanes, {} regions",
        r.arrangement.hyperplanes, r.arrangement.regions
    );
    let wt = &r.weights;
    match (wt.samples, wt.seed) {
        (Some(n), Some(s)) => {
            let _ = writeln!(t, "weights: estimated ({n} samples, seed {s}), support {}", wt.support);
        }
        _ => {
            let _ = writeln!(t, "weights: exact, support {}, even {}", wt.support, wt.even);
        }
    }
    let _ = writeln!(t, "{}", p.f_vector.labeled("f"));
    let _ = writeln!(t, "{}", r.h_boundary.labeled("h"));
    let _ = writeln!(t, "{}", r.alpha_hat.labeled("alpha"));
    let _ = writeln!(t, "{}", r.alpha_hat_reflected.labeled("alpha(-P)"));
    if let Some(g) = &r.gamma_hat {
        let _ = writeln!(t, "{}", g.labeled("gamma"));
    }
    if let Some(g) = &r.gamma_hat_reflected {
        let _ = writeln!(t, "{}", g.labeled("gamma(-P)"));
    }
    for reg in &r.regions {
        let _ = writeln!(
            t,
            "region {} weight {}: {} {} {}",
            reg.signs,
            format_rational(&reg.weight),
            reg.h_dark.labeled("hD"),
            reg.f_shadow.labeled("fpi"),
            reg.g_shadow.labeled("gpi")
        );
    }
    t.push_str("checks:\n");
    t.push_str(&checks_text(&r.checks));
    t.push_str("properties:\n");
    t.push_str(&checks_text(&r.properties));
    t
}

pub fn example_text(o: &ExampleOutcome) -> String {
    let mut t = format!("example {}\n", o.name);
    for c in &o.comparisons {
        let _ = write!(
            t,
            "{} {:<20} = {}  (expected {}",
            if c.ok { "ok  " } else { "FAIL" },
            c.quantity,
            c.actual,
            c.expected
        );
        if let Some(tol) = c.tolerance {
            let _ = write!(t, " within {tol}");
        }
        t.push_str(")\n");
    }
    if let Some(u) = o.report.check("unimodal") {
        if !u.passed() {
            t.push_str("gamma-hat is not unimodal\n");
        }
    }
    t.push_str(&report_text(&o.report));
    t
}
