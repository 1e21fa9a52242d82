use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use hompoly_core::counts::{self, Family};
use hompoly_core::experiments;
use hompoly_core::hom::{self, build_hom_from, enumerate_vertex_maps, Descriptor, HomJson, HomPolytope};
use hompoly_core::polytope::{self, Polytope, StandardKind};
use hompoly_core::verify::{self, Params, SuiteLevel, VerificationResult};
use hompoly_core::{Error, QVector, Rational};
use serde_json::{json, Value};

/// Hom dimension above which enumeration needs `--allow-large`.
const LARGE_DIMENSION: usize = 20;

#[derive(Parser, Debug)]
#[command(name = "hompoly", version, about = "Exact hom-polytopes between simplices, cubes and crosspolytopes")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "HOMPOLY_THREADS")]
    threads: Option<usize>,
    /// Lift size guards on long computations.
    #[arg(long, global = true)]
    allow_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build Hom(P, Q) as an inequality system.
    Construct {
        source: PolytopeSpec,
        target: PolytopeSpec,
        /// Write the hom JSON here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Enumerate the vertex maps of a hom JSON file.
    Vertices {
        hom: PathBuf,
        /// Print the rank histogram.
        #[arg(long)]
        ranks: bool,
        /// Write the maps as JSON here.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Closed-form vertex count of a family, optionally checked by enumeration.
    Count {
        /// box-simplex, diamond-simplex or diamond-diamond.
        family: Family,
        m: u64,
        n: u64,
        #[arg(long)]
        enumerate: bool,
    },
    /// β(n) by orbit counting on V(n).
    Beta { n: usize },
    /// σ(m, n) = 2^m n! S(m, n).
    Sigma { m: u64, n: u64 },
    /// Vertex counts of △_n ∩ (2z − △_n) and of random simplex pairs.
    Table {
        n_min: usize,
        n_max: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Perturbation size.
        #[arg(long, default_value = "1/1000")]
        eps: Rational,
    },
    /// Run one claim, a suite, or list the registry.
    Verify(VerifyArgs),
    /// Polar dual of a polytope with the origin in its interior.
    Dual {
        polytope: PolytopeSpec,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Intersection of two polytopes, the second optionally translated.
    Intersect {
        a: PolytopeSpec,
        b: PolytopeSpec,
        /// Translation applied to the second polytope, comma separated.
        #[arg(long, value_parser = parse_point)]
        shift: Option<QVector>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Claim id (see --list).
    #[arg(long, conflicts_with_all = ["suite", "list"])]
    claim: Option<String>,
    /// core or extended.
    #[arg(long, conflicts_with = "list")]
    suite: Option<SuiteLevel>,
    #[arg(long)]
    list: bool,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    source: Option<PolytopeSpec>,
    #[arg(long)]
    target: Option<PolytopeSpec>,
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    expected: Option<u128>,
    /// Comma-separated seeds.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
}

/// `simplex:3`, `cube:2`, `crosspolytope:4` or `file:PATH`.
#[derive(Clone, Debug)]
enum PolytopeSpec {
    Standard(StandardKind, usize),
    File(PathBuf),
}

impl FromStr for PolytopeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, arg) = s.split_once(':').ok_or_else(|| format!("expected KIND:N or file:PATH, got {s:?}"))?;
        if kind == "file" {
            return Ok(PolytopeSpec::File(PathBuf::from(arg)));
        }
        let kind = match kind {
            "simplex" => StandardKind::Simplex,
            "cube" => StandardKind::Cube,
            "crosspolytope" => StandardKind::Crosspolytope,
            other => return Err(format!("unknown polytope kind {other:?}")),
        };
        let n = arg.parse::<usize>().map_err(|e| format!("bad dimension {arg:?}: {e}"))?;
        if n == 0 {
            return Err("dimension must be at least 1".into());
        }
        Ok(PolytopeSpec::Standard(kind, n))
    }
}

impl PolytopeSpec {
    fn descriptor(&self) -> Result<Descriptor, Failure> {
        match self {
            PolytopeSpec::Standard(kind, n) => Ok(Descriptor::Standard { kind: *kind, n: *n }),
            PolytopeSpec::File(path) => Ok(Descriptor::Custom { custom: read_json(path)? }),
        }
    }

    fn build(&self) -> Result<Polytope, Failure> {
        Ok(self.descriptor()?.build()?)
    }
}

fn parse_point(s: &str) -> Result<QVector, String> {
    s.split(',')
        .map(|c| c.trim().parse::<Rational>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()
        .map(QVector::new)
}

/// Why a command stopped: bad input (exit 2) or a failed check (exit 1).
enum Failure {
    Input(String),
    Check,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::Input(err.to_string())
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("cannot parse {}: {e}", path.display())))
}

fn write_json(path: &Path, value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Input(e.to_string()))? + "\n";
    fs::write(path, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn print_json(value: &impl serde::Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

struct Ctx {
    json: bool,
    allow_large: bool,
}

impl Ctx {
    fn guard_hom(&self, hom: &HomPolytope) -> Result<(), Failure> {
        self.guard_dimension(hom.dimension())
    }

    fn guard_dimension(&self, dimension: usize) -> Result<(), Failure> {
        if dimension > LARGE_DIMENSION && !self.allow_large {
            return Err(Failure::Input(format!(
                "hom-polytope of dimension {dimension} exceeds {LARGE_DIMENSION}; pass --allow-large to enumerate it"
            )));
        }
        Ok(())
    }
}

fn polytope_summary(p: &Polytope) -> Result<Value, Failure> {
    Ok(json!({
        "vertices": p.vertices()?.len(),
        "facets": p.facets()?.len(),
        "dimension": p.dimension()?,
        "polytope": p.to_json()?,
    }))
}

fn print_polytope(ctx: &Ctx, p: &Polytope, out: Option<&Path>) -> Result<(), Failure> {
    if let Some(path) = out {
        write_json(path, &p.to_json()?)?;
    }
    let summary = polytope_summary(p)?;
    if ctx.json {
        print_json(&summary);
    } else {
        let dim = p.dimension()?.map_or("empty".to_string(), |d| d.to_string());
        println!("vertices {}\nfacets {}\ndimension {dim}", summary["vertices"], summary["facets"]);
        for v in p.vertices()? {
            println!("  {v}");
        }
    }
    Ok(())
}

fn construct(ctx: &Ctx, source: &PolytopeSpec, target: &PolytopeSpec, out: Option<&Path>) -> Result<(), Failure> {
    let hom = build_hom_from(&source.descriptor()?, &target.descriptor()?)?;
    if let Some(path) = out {
        write_json(path, &hom.to_json())?;
    }
    if ctx.json {
        print_json(&json!({ "dimension": hom.dimension(), "inequalities": hom.inequality_count() }));
    } else {
        println!("dimension {}\ninequalities {}", hom.dimension(), hom.inequality_count());
    }
    Ok(())
}

fn vertices(ctx: &Ctx, path: &Path, ranks: bool, out: Option<&Path>) -> Result<(), Failure> {
    let json: HomJson = read_json(path)?;
    let hom = HomPolytope::from_json(&json)?;
    ctx.guard_hom(&hom)?;
    let maps = enumerate_vertex_maps(&hom)?;
    let hist = hom::rank_histogram(&maps);
    if let Some(path) = out {
        let list: Vec<_> = maps.iter().map(|f| f.to_json(true)).collect();
        write_json(path, &list)?;
    }
    if ctx.json {
        let mut v = json!({ "vertices": maps.len() });
        if ranks {
            v["ranks"] = json!(hist);
        }
        print_json(&v);
    } else {
        println!("vertices {}", maps.len());
        if ranks {
            for (rank, count) in &hist {
                println!("  rank {rank}: {count}");
            }
        }
    }
    Ok(())
}

fn count(ctx: &Ctx, family: Family, m: u64, n: u64, enumerate: bool) -> Result<(), Failure> {
    let max_k = match family {
        Family::BoxSimplex => 0,
        Family::DiamondSimplex => n as usize,
        Family::DiamondDiamond => (n as usize).saturating_sub(1),
    };
    // rank-k terms with k < m need an enumeration of Hom(◇_m, △_k)
    for k in 4..=max_k.min(m as usize) {
        if k < m as usize {
            ctx.guard_dimension(k * (m as usize + 1))?;
        }
    }
    let table = counts::high_rank_table(m as usize, max_k)?;
    let mut report = counts::closed_form(family, m, n, Some(&table))?;
    if enumerate {
        ctx.guard_dimension(n as usize * (m as usize + 1))?;
        report = report.with_enumeration()?;
    }
    if ctx.json {
        print_json(&report);
    } else {
        println!("{} m={m} n={n}: {}", family.name(), report.closed_form);
        for t in &report.terms {
            match t.enumerated {
                Some(e) => println!("  {}: {} (enumerated {e})", t.label, t.closed_form),
                None => println!("  {}: {}", t.label, t.closed_form),
            }
        }
        if let Some(e) = report.enumerated {
            println!("enumerated {e}");
        }
    }
    if report.agreement == Some(false) {
        return Err(Failure::Check);
    }
    Ok(())
}

fn beta(ctx: &Ctx, n: usize) -> Result<(), Failure> {
    let report = counts::beta(n)?;
    if ctx.json {
        print_json(&report);
    } else {
        println!("beta({n}) = {}", report.beta);
        println!("  |V({n})| = {}, orbits {}, free {}", report.v_count, report.orbits, report.free);
    }
    Ok(())
}

fn sigma(ctx: &Ctx, m: u64, n: u64) -> Result<(), Failure> {
    if m > 20 {
        return Err(Failure::Input("sigma is computed for m <= 20".into()));
    }
    #[derive(serde::Serialize)]
    struct Out {
        m: u64,
        n: u64,
        sigma: u128,
    }
    let value = counts::sigma(m, n);
    if ctx.json {
        print_json(&Out { m, n, sigma: value });
    } else {
        println!("{value}");
    }
    Ok(())
}

fn table(ctx: &Ctx, n_min: usize, n_max: usize, seed: u64, eps: &Rational) -> Result<(), Failure> {
    let rows = experiments::reproduce_table(n_min, n_max, seed, eps)?;
    if ctx.json {
        print_json(&rows);
    } else {
        print!("{}", experiments::render_table(&rows));
    }
    Ok(())
}

fn print_results(ctx: &Ctx, results: &[VerificationResult]) {
    if ctx.json {
        print_json(&results);
        return;
    }
    for r in results {
        let status = if r.passed() { "pass" } else { "FAIL" };
        println!("{status}  {}  [{}]  {}  ({:.2?})", r.claim_id, r.parameters, r.summary, r.elapsed);
        if let (false, Some(w)) = (r.passed(), &r.witness) {
            println!("      witness: {w}");
        }
    }
    let passed = results.iter().filter(|r| r.passed()).count();
    println!("{passed}/{} passed", results.len());
}

fn run_verify(ctx: &Ctx, args: &VerifyArgs) -> Result<(), Failure> {
    if args.list {
        if ctx.json {
            let list: Vec<Value> =
                verify::CLAIMS.iter().map(|c| json!({ "id": c.id, "checks": c.checks, "params": c.params })).collect();
            print_json(&list);
        } else {
            for c in verify::CLAIMS {
                println!("{:<22} {}  [{}]", c.id, c.checks, c.params);
            }
        }
        return Ok(());
    }
    let results = if let Some(id) = &args.claim {
        let params = Params {
            m: args.m,
            n: args.n,
            source: args.source.as_ref().map(PolytopeSpec::descriptor).transpose()?,
            target: args.target.as_ref().map(PolytopeSpec::descriptor).transpose()?,
            family: args.family,
            expected: args.expected,
            seeds: args.seeds.clone(),
        };
        vec![verify::run_claim(id, &params)?]
    } else {
        verify::run_suite(args.suite.unwrap_or(SuiteLevel::Core))
    };
    print_results(ctx, &results);
    if results.iter().all(VerificationResult::passed) { Ok(()) } else { Err(Failure::Check) }
}

fn dual(ctx: &Ctx, spec: &PolytopeSpec, out: Option<&Path>) -> Result<(), Failure> {
    let p = spec.build()?;
    print_polytope(ctx, &polytope::polar_dual(&p)?, out)
}

fn intersect(ctx: &Ctx, a: &PolytopeSpec, b: &PolytopeSpec, shift: Option<&QVector>, out: Option<&Path>) -> Result<(), Failure> {
    let a = a.build()?;
    let mut b = b.build()?;
    if let Some(t) = shift {
        b = polytope::translate(&b, t)?;
    }
    print_polytope(ctx, &polytope::intersect(&a, &b)?, out)
}

fn configure_threads(threads: Option<usize>) -> Result<(), Failure> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(Failure::Input("--threads must be at least 1".into()));
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("cannot configure threads: {e}")))?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads(cli.threads)?;
    let ctx = Ctx { json: cli.json, allow_large: cli.allow_large };
    match &cli.command {
        Command::Construct { source, target, out } => construct(&ctx, source, target, out.as_deref()),
        Command::Vertices { hom, ranks, out } => vertices(&ctx, hom, *ranks, out.as_deref()),
        Command::Count { family, m, n, enumerate } => count(&ctx, *family, *m, *n, *enumerate),
        Command::Beta { n } => beta(&ctx, *n),
        Command::Sigma { m, n } => sigma(&ctx, *m, *n),
        Command::Table { n_min, n_max, seed, eps } => table(&ctx, *n_min, *n_max, *seed, eps),
        Command::Verify(args) => run_verify(&ctx, args),
        Command::Dual { polytope, out } => dual(&ctx, polytope, out.as_deref()),
        Command::Intersect { a, b, shift, out } => intersect(&ctx, a, b, shift.as_ref(), out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
