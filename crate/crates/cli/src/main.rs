use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diffgraph::analytics::{analyze, Budgets, DEFAULT_NODE_BUDGET};
use diffgraph::classify::classify;
use diffgraph::graphs::{build_all, GraphKind};
use diffgraph::harness::{
    build_bundles, hunt, parse_manifest, registry, run_corpus, Compute, FindingStatus, HuntId,
    LatticeSource, Manifest, Provenance, Tier,
};
use diffgraph::io::{graph_json, graph_text, to_dot, LatticeCache};
use diffgraph::lattice::SubgroupLattice;
use diffgraph::perm::{parse_group_spec, realize, GroupSpec, DEFAULT_ORDER_CAP};

const EXIT_ERROR: u8 = 1;
const EXIT_COUNTEREXAMPLE: u8 = 2;
const EXIT_UNVERIFIED: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Parser)]
#[command(name = "diffgraph", version, about = "Difference subgroup graphs of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Graph kind: gamma, delta, d or dstar.
    #[arg(long, global = true, default_value = "d")]
    kind: GraphKind,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Largest tier to include: fast, standard or long.
    #[arg(long, global = true, default_value = "fast")]
    tier: Tier,
    /// Node budget of the clique solver.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_clique: u64,
    /// Node budget of the independence solver.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_indep: u64,
    /// Directory for cached subgroup lattices.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Restrict `verify` to these theorem ids.
    #[arg(long, global = true, value_delimiter = ',')]
    theorem: Vec<String>,
    /// Corpus manifest; the bundled one when omitted. Also supplies action
    /// tables and labels for group arguments.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Order, degree, classification and subgroup counts.
    Group { group: String },
    /// All subgroups with their annotations.
    Lattice { group: String },
    /// One of the four graphs as an edge list, JSON or DOT.
    Graph { group: String },
    /// Exact invariants of one of the graphs.
    Analyze { group: String },
    /// Check the theorem registry over the corpus.
    Verify {
        /// Print the registry instead of running it.
        #[arg(long)]
        list: bool,
    },
    /// Search the corpus for counterexamples to the open problems.
    Hunt {
        /// Hunt ids (H-1 to H-5); all when omitted.
        ids: Vec<HuntId>,
    },
    /// Write DOT and JSON files for every graph of a group, or of every
    /// corpus group when no group is given.
    Export {
        group: Option<String>,
        #[arg(long, default_value = "export")]
        out: PathBuf,
    },
}

struct Context {
    cli: Cli,
    manifest: Manifest,
    source: Box<dyn LatticeSource>,
    cache: Option<Arc<LatticeCache>>,
}

struct CacheSource(Arc<LatticeCache>);

impl LatticeSource for CacheSource {
    fn lattice(
        &self,
        group: Arc<diffgraph::perm::FiniteGroup>,
    ) -> Result<SubgroupLattice, diffgraph::lattice::LatticeError> {
        self.0.lattice(group)
    }
}

type Fallible<T> = Result<T, String>;

impl Context {
    fn budgets(&self) -> Budgets {
        Budgets {
            clique: self.cli.budget_clique,
            independence: self.cli.budget_indep,
        }
    }

    fn provenance(&self) -> Provenance {
        Provenance::of(&self.manifest)
    }

    /// A manifest label or a spec expression.
    fn resolve(&self, arg: &str) -> Fallible<(String, GroupSpec)> {
        if let Some(e) = self.manifest.get(arg) {
            return Ok((e.label.clone(), e.spec.clone()));
        }
        let spec = parse_group_spec(arg).map_err(|e| format!("{arg}: {e}"))?;
        Ok((arg.to_string(), spec))
    }

    fn lattice(&self, arg: &str) -> Fallible<(String, SubgroupLattice)> {
        let (label, spec) = self.resolve(arg)?;
        let group = realize(&spec, &self.manifest.actions, DEFAULT_ORDER_CAP).map_err(|e| format!("{label}: {e}"))?;
        let lat = self.source.lattice(Arc::new(group)).map_err(|e| format!("{label}: {e}"))?;
        Ok((label, lat))
    }

    fn emit(&self, value: Value, text: String) -> Fallible<()> {
        match self.cli.format {
            Format::Json => {
                let mut v = value;
                v["provenance"] = json!(self.provenance());
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            }
            Format::Text => {
                let p = self.provenance();
                print!("# diffgraph {} manifest {}\n{text}", p.tool_version, p.manifest_hash);
            }
            Format::Dot => return Err("dot output is only available for `graph`".into()),
        }
        Ok(())
    }
}

fn cmd_group(ctx: &Context, arg: &str) -> Fallible<u8> {
    let (label, lat) = ctx.lattice(arg)?;
    let g = lat.group();
    let c = classify(&lat).map_err(|e| e.to_string())?;
    let normal = lat.normal_subgroups().len();
    let value = json!({
        "group": label,
        "order": g.order(),
        "degree": g.degree(),
        "content_hash": g.content_hash(),
        "subgroups": lat.len(),
        "nontrivial_proper_subgroups": lat.proper_nontrivial().count(),
        "conjugacy_classes_of_subgroups": lat.classes().len(),
        "normal_subgroups": normal,
        "classification": c.flags_json(),
    });
    let mut text = String::new();
    let _ = writeln!(text, "group {label}");
    let _ = writeln!(text, "order {} on {} points", g.order(), g.degree());
    let _ = writeln!(
        text,
        "subgroups {} ({} non-trivial proper, {} classes, {} normal)",
        lat.len(),
        lat.proper_nontrivial().count(),
        lat.classes().len(),
        normal
    );
    for (name, flag) in [
        ("abelian", &c.abelian),
        ("p-group", &c.p_group),
        ("dedekind", &c.dedekind),
        ("iwasawa", &c.iwasawa),
        ("nilpotent", &c.nilpotent),
        ("supersolvable", &c.supersolvable),
        ("solvable", &c.solvable),
        ("simple", &c.simple),
    ] {
        let _ = writeln!(text, "{name:14} {}", if flag.value { "yes" } else { "no" });
    }
    ctx.emit(value, text)?;
    Ok(0)
}

fn cmd_lattice(ctx: &Context, arg: &str) -> Fallible<u8> {
    let (label, lat) = ctx.lattice(arg)?;
    let g = lat.group();
    let rows: Vec<Value> = (0..lat.len())
        .map(|h| {
            let gens: Vec<String> = lat.subgroup(h).generators.iter().map(|&x| g.element(x).to_string()).collect();
            json!({
                "id": h,
                "order": lat.order(h),
                "normal": lat.is_normal(h),
                "maximal": lat.is_maximal(h),
                "class": lat.class_of(h),
                "generators": gens,
            })
        })
        .collect();
    let mut text = format!("{label}: {} subgroups\n", lat.len());
    let _ = writeln!(text, "{:>5} {:>6} {:>6} {:>7} {:>5}  generators", "id", "order", "normal", "maximal", "class");
    for r in &rows {
        let gens: Vec<&str> = r["generators"].as_array().unwrap().iter().map(|s| s.as_str().unwrap()).collect();
        let _ = writeln!(
            text,
            "{:>5} {:>6} {:>6} {:>7} {:>5}  {}",
            r["id"], r["order"], r["normal"], r["maximal"], r["class"], gens.join(", ")
        );
    }
    ctx.emit(json!({ "group": label, "subgroups": rows }), text)?;
    Ok(0)
}

fn cmd_graph(ctx: &Context, arg: &str) -> Fallible<u8> {
    let (label, lat) = ctx.lattice(arg)?;
    let graphs = build_all(&lat);
    let g = graphs.get(ctx.cli.kind);
    let name = format!("{}_{label}", ctx.cli.kind);
    match ctx.cli.format {
        Format::Dot => print!("{}", to_dot(&lat, g, &name)),
        _ => ctx.emit(graph_json(&lat, g, &label), graph_text(&lat, g, &label))?,
    }
    Ok(0)
}

fn cmd_analyze(ctx: &Context, arg: &str) -> Fallible<u8> {
    let (label, lat) = ctx.lattice(arg)?;
    let graphs = build_all(&lat);
    let g = graphs.get(ctx.cli.kind);
    let report = analyze(&g.graph, ctx.budgets());
    let unverified = report.clique_number.is_none() || report.independence_number.is_none();
    let mut value = serde_json::to_value(&report).unwrap();
    value["group"] = json!(label);
    value["kind"] = json!(ctx.cli.kind);
    let show = |v: Option<usize>| v.map_or("unverified (budget exhausted)".to_string(), |x| x.to_string());
    let mut text = format!("{} of {label}\n", ctx.cli.kind);
    let _ = writeln!(text, "vertices        {}", report.vertex_count);
    let _ = writeln!(text, "edges           {}", report.edge_count);
    let _ = writeln!(text, "isolated        {}", report.isolated_count);
    let _ = writeln!(text, "components      {}", report.component_count);
    let _ = writeln!(
        text,
        "girth           {}",
        report.girth.finite().map_or("infinite".to_string(), |x| x.to_string())
    );
    let _ = writeln!(text, "bipartite       {}", report.bipartite);
    let _ = writeln!(text, "clique number   {}", show(report.clique_number));
    let _ = writeln!(text, "independence    {}", show(report.independence_number));
    let _ = writeln!(text, "claw-free       {}", report.clawfree);
    let _ = writeln!(text, "cograph         {}", report.cograph);
    let _ = writeln!(text, "universal       {:?}", report.universal_vertices);
    let _ = writeln!(text, "cycle           {}", report.cycle_length.map_or("no".to_string(), |l| format!("C{l}")));
    ctx.emit(value, text)?;
    Ok(if unverified { EXIT_UNVERIFIED } else { 0 })
}

fn cmd_verify(ctx: &Context, list: bool) -> Fallible<u8> {
    if list {
        let table: Vec<_> = registry().iter().map(|c| c.describe()).collect();
        let mut text = String::new();
        for c in &table {
            let _ = writeln!(text, "{:7} if {}, then {} (vacuous when {})", c.id, c.hypothesis, c.conclusion, c.vacuity);
        }
        ctx.emit(json!({ "theorems": table }), text)?;
        return Ok(0);
    }
    let report = run_corpus(&ctx.manifest, &ctx.cli.theorem, ctx.cli.tier, ctx.budgets(), ctx.source.as_ref())
        .map_err(|e| e.to_string())?;
    match ctx.cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).unwrap()),
        Format::Text => print!("{}", report.to_text()),
        Format::Dot => return Err("verify writes json or text".into()),
    }
    let total = report.total();
    Ok(if total.counterexample > 0 {
        EXIT_COUNTEREXAMPLE
    } else if total.unverified > 0 {
        EXIT_UNVERIFIED
    } else {
        0
    })
}

fn cmd_hunt(ctx: &Context, ids: &[HuntId]) -> Fallible<u8> {
    let ids = if ids.is_empty() { HuntId::ALL.to_vec() } else { ids.to_vec() };
    let bundles =
        build_bundles(&ctx.manifest, ctx.cli.tier, ctx.budgets(), ctx.source.as_ref()).map_err(|e| e.to_string())?;
    let reports: Vec<_> = ids.iter().map(|&id| hunt(id, &bundles)).collect();
    let text: String = reports.iter().map(|r| r.to_text()).collect::<Vec<_>>().join("\n");
    ctx.emit(json!({ "tier": ctx.cli.tier, "hunts": reports }), text)?;
    let any = |s| reports.iter().any(|r| r.count(s) > 0);
    Ok(if any(FindingStatus::Counterexample) {
        EXIT_COUNTEREXAMPLE
    } else if any(FindingStatus::Unverified) {
        EXIT_UNVERIFIED
    } else {
        0
    })
}

fn cmd_export(ctx: &Context, arg: Option<&str>, out: &PathBuf) -> Fallible<u8> {
    let lattices: Vec<(String, Arc<SubgroupLattice>)> = match arg {
        Some(a) => {
            let (label, lat) = ctx.lattice(a)?;
            vec![(label, Arc::new(lat))]
        }
        None => build_bundles(&ctx.manifest, ctx.cli.tier, ctx.budgets(), ctx.source.as_ref())
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|b| (b.label, b.lattice))
            .collect(),
    };
    fs::create_dir_all(out).map_err(|e| format!("{}: {e}", out.display()))?;
    let mut written = 0;
    for (label, lat) in &lattices {
        let graphs = build_all(lat);
        for kind in GraphKind::ALL {
            let g = graphs.get(kind);
            let stem = out.join(format!("{label}.{kind}"));
            let mut v = graph_json(lat, g, label);
            v["provenance"] = json!(ctx.provenance());
            let files = [
                (stem.with_extension(format!("{kind}.dot")), to_dot(lat, g, &format!("{kind}_{label}"))),
                (
                    stem.with_extension(format!("{kind}.json")),
                    serde_json::to_string_pretty(&v).unwrap() + "\n",
                ),
            ];
            for (path, body) in files {
                fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display()))?;
                written += 1;
            }
        }
    }
    eprintln!("wrote {written} files to {}", out.display());
    Ok(0)
}

fn run(cli: Cli) -> Fallible<u8> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    let manifest = match &cli.manifest {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_manifest(&text).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => Manifest::builtin(),
    };
    let cache = match &cli.cache {
        Some(dir) => Some(Arc::new(LatticeCache::new(dir).map_err(|e| format!("{}: {e}", dir.display()))?)),
        None => None,
    };
    let source: Box<dyn LatticeSource> = match &cache {
        Some(c) => Box::new(CacheSource(c.clone())),
        None => Box::new(Compute),
    };
    let ctx = Context {
        cli,
        manifest,
        source,
        cache,
    };
    let result = match &ctx.cli.command {
        Command::Group { group } => cmd_group(&ctx, group),
        Command::Lattice { group } => cmd_lattice(&ctx, group),
        Command::Graph { group } => cmd_graph(&ctx, group),
        Command::Analyze { group } => cmd_analyze(&ctx, group),
        Command::Verify { list } => cmd_verify(&ctx, *list),
        Command::Hunt { ids } => cmd_hunt(&ctx, ids),
        Command::Export { group, out } => cmd_export(&ctx, group.as_deref(), out),
    };
    if let Some(c) = &ctx.cache {
        for w in c.take_warnings() {
            eprintln!("warning: {w}");
        }
    }
    result
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
