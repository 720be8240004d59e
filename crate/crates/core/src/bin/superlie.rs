use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use superlie::catalog::{Catalog, SpecializationPlan};
use superlie::cohomology::{h2_dims, rigid_sufficient};
use superlie::degeneration::{
    build_graph, components, hasse_reduction, parse_witnesses, verify_at_samples, GraphConfig,
};
use superlie::exactnum::GaussianRational;
use superlie::invariants::{
    certify, default_grid, default_queries, invariant_profile, Analyzed, CertifierConfig, DEFAULT_IJ_SAMPLES,
};
use superlie::report::{reproduce, ReproduceOptions};
use superlie::superalg::{parse_algebra_files, SuperAlgebra};

type Q = GaussianRational;

#[derive(Parser)]
#[command(name = "superlie", version, about = "Degenerations of (2,2)-dimensional complex Lie superalgebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check skew-symmetry, grading and the super Jacobi identity for every algebra in a file.
    Check { path: PathBuf },
    /// Invariants of an algebra: a file or a catalog reference such as `LS13[2,5]`.
    Profile { algebra: String },
    Witness {
        #[command(subcommand)]
        cmd: WitnessCmd,
    },
    /// Look for a certificate that the first algebra does not degenerate to the second.
    Certify { from: String, to: String },
    /// Print the Hasse diagram of the degeneration order.
    Hasse {
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        skip_table4: bool,
    },
    /// Irreducible components with their justifications.
    Components {
        #[arg(long)]
        skip_table4: bool,
    },
    /// Graded dimensions of H²(g, g).
    Cohomology {
        algebra: String,
        /// Also print representative cocycles.
        #[arg(long)]
        basis: bool,
    },
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Run every stage and write the JSON report and the DOT diagram.
    Reproduce {
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, default_value_t = SpecializationPlan::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SpecializationPlan::default().samples)]
        samples: usize,
        #[arg(long)]
        skip_table4: bool,
    },
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Verify stored witnesses, or those in a file.
    Verify {
        /// Witness ids; all of them when empty.
        ids: Vec<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value_t = SpecializationPlan::default().seed)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Show { name: String },
}

enum Failure {
    Mismatch(String),
    Input(String),
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
}

fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))
}

fn load_algebra(arg: &str) -> Result<SuperAlgebra<Q>, Failure> {
    let path = Path::new(arg);
    if path.exists() {
        let files = parse_algebra_files(&read(path)?).map_err(|e| Failure::Input(format!("{}: {}", arg, e)))?;
        let f = files.first().ok_or_else(|| Failure::Input(format!("{}: no algebra", arg)))?;
        return f.instantiate(&[]).map_err(|e| Failure::Input(format!("{}: {}", arg, e)));
    }
    Catalog::builtin().instantiate_ref(arg).map_err(|e| Failure::Input(e.to_string()))
}

fn cmd_check(path: &Path) -> CmdResult {
    let files = parse_algebra_files(&read(path)?).map_err(|e| Failure::Input(format!("{}: {}", path.display(), e)))?;
    let plan = SpecializationPlan::default();
    let mut bad = 0;
    for f in &files {
        // Families are checked at the sampled parameter values.
        let mut violations = Vec::new();
        let points = plan.assignments(&format!("check.{}", f.name), &f.params);
        for point in &points {
            let values: Vec<Q> = f.params.iter().map(|p| point[p].clone()).collect();
            let a = f.instantiate(&values).map_err(|e| Failure::Input(format!("{}: {}", f.name, e)))?;
            let r = a.validate();
            if !r.is_valid() {
                let at = if values.is_empty() {
                    String::new()
                } else {
                    format!(
                        " at {}",
                        f.params
                            .iter()
                            .zip(&values)
                            .map(|(p, v)| format!("{}={}", p, v))
                            .collect::<Vec<_>>()
                            .join(", ")
                    )
                };
                violations.extend(r.violations.iter().map(|v| format!("{}{}", v, at)));
            }
        }
        if violations.is_empty() {
            if f.params.is_empty() {
                println!("{}: valid", f.name);
            } else {
                println!("{}: valid at {} sampled parameter values", f.name, points.len());
            }
        } else {
            bad += 1;
            println!("{}: {} violations", f.name, violations.len());
            for v in &violations {
                println!("  {}", v);
            }
        }
    }
    if bad > 0 {
        return Err(Failure::Mismatch(format!("{} of {} algebras invalid", bad, files.len())));
    }
    Ok(())
}

fn cmd_profile(arg: &str) -> CmdResult {
    let a = load_algebra(arg)?;
    let p = invariant_profile(
        &a,
        &default_grid(),
        &default_queries(),
        DEFAULT_IJ_SAMPLES,
        SpecializationPlan::default().seed,
    );
    println!("{}", serde_json::to_string_pretty(&p).expect("profile serializes"));
    Ok(())
}

fn cmd_witness_verify(ids: &[String], file: Option<&Path>, seed: u64) -> CmdResult {
    let catalog = Catalog::builtin();
    let owned;
    let witnesses = match file {
        Some(p) => {
            owned = parse_witnesses(&read(p)?).map_err(|e| Failure::Input(format!("{}: {}", p.display(), e)))?;
            &owned[..]
        }
        None => catalog.witnesses(),
    };
    for id in ids {
        if !witnesses.iter().any(|w| &w.id == id) {
            return Err(Failure::Input(format!("unknown witness '{}'", id)));
        }
    }
    let plan = SpecializationPlan { seed, ..SpecializationPlan::default() };
    let mut unexpected = 0;
    for w in witnesses.iter().filter(|w| ids.is_empty() || ids.contains(&w.id)) {
        let (n, res) = verify_at_samples(w, catalog, &plan);
        let ok = res.is_ok();
        let verdict = match &res {
            Ok(()) => format!("verified at {} sample(s)", n),
            Err(e) => format!("fails: {}", e),
        };
        let flag = if ok == w.status.expects_success() { "" } else { "  [UNEXPECTED]" };
        if !flag.is_empty() {
            unexpected += 1;
        }
        println!("{:8} {}{}", w.id, verdict, flag);
    }
    if unexpected > 0 {
        return Err(Failure::Mismatch(format!("{} witness(es) behaved unexpectedly", unexpected)));
    }
    Ok(())
}

fn cmd_certify(from: &str, to: &str) -> CmdResult {
    let (g, h) = (load_algebra(from)?, load_algebra(to)?);
    let mut params = Vec::new();
    for a in [&g, &h] {
        for i in 0..a.size() {
            for j in 0..a.size() {
                for k in 0..a.size() {
                    let c = a.constant(i, j, k);
                    if !c.is_zero() && !params.contains(c) {
                        params.push(c.clone());
                    }
                }
            }
        }
    }
    let seed = SpecializationPlan::default().seed;
    let ga = Analyzed::new(g, DEFAULT_IJ_SAMPLES, seed);
    let ha = Analyzed::new(h, DEFAULT_IJ_SAMPLES, seed);
    match certify(&ga, &ha, &CertifierConfig::with_parameters(&params), 1) {
        Some(c) => {
            println!("{} ↛ {}: {} ({})", from, to, c.human_reason, c.rule_name());
            Ok(())
        }
        None => Err(Failure::Mismatch(format!("no certificate found for {} ↛ {}", from, to))),
    }
}

fn graph_config(skip_table4: bool) -> GraphConfig {
    GraphConfig { include_family_limits: !skip_table4, ..GraphConfig::default() }
}

fn cmd_hasse(dot: Option<&Path>, skip_table4: bool) -> CmdResult {
    let graph =
        build_graph(Catalog::builtin(), &graph_config(skip_table4)).map_err(|e| Failure::Mismatch(e.to_string()))?;
    for e in hasse_reduction(&graph) {
        let label = e.label();
        if label.is_empty() {
            println!("{} -> {}", e.from, e.to);
        } else {
            println!("{} -> {}  [{}]", e.from, e.to, label);
        }
    }
    if let Some(p) = dot {
        let rigid = graph
            .nodes
            .iter()
            .filter(|n| n.is_orbit() && rigid_sufficient(&graph.samples[&n.id][0]))
            .map(|n| n.id.clone())
            .collect();
        write(p, &graph.to_dot(&rigid))?;
    }
    Ok(())
}

fn cmd_components(skip_table4: bool) -> CmdResult {
    let graph =
        build_graph(Catalog::builtin(), &graph_config(skip_table4)).map_err(|e| Failure::Mismatch(e.to_string()))?;
    let r = components(&graph);
    for c in &r.components {
        println!("{} ({})", c.node, c.justification.kind);
    }
    for (n, m) in &r.inconclusive {
        println!("inconclusive: nothing rules out {} dominating {}", m, n);
    }
    if !r.is_conclusive() {
        return Err(Failure::Mismatch("component computation is inconclusive".into()));
    }
    Ok(())
}

fn cmd_cohomology(arg: &str, basis: bool) -> CmdResult {
    let a = load_algebra(arg)?;
    let h = h2_dims(&a);
    println!("H2 = ({}, {})  rigid: {}", h.dim_even, h.dim_odd, h.dim_even == 0);
    if basis {
        for (p, cs) in [("even", &h.basis_even), ("odd", &h.basis_odd)] {
            for c in cs {
                println!("  {}: {}", p, c);
            }
        }
    }
    Ok(())
}

fn cmd_catalog(cmd: &CatalogCmd) -> CmdResult {
    let catalog = Catalog::builtin();
    match cmd {
        CatalogCmd::List => {
            for e in catalog.entries() {
                let params =
                    if e.params().is_empty() { String::new() } else { format!(" [{}]", e.params().join(", ")) };
                println!("{}{}", e.name, params);
            }
        }
        CatalogCmd::Show { name } => {
            let e = catalog.entry(name).map_err(|e| Failure::Input(e.to_string()))?;
            print!("{}", e.template.to_text());
            for c in &e.iso_conditions {
                println!("# isomorphic members: {} (witness {})", c.description, c.witness_id);
            }
        }
    }
    Ok(())
}

fn cmd_reproduce(json: Option<&Path>, dot: Option<&Path>, opts: ReproduceOptions) -> CmdResult {
    let (report, dot_text) = reproduce(Catalog::builtin(), &opts).map_err(|e| Failure::Mismatch(e.to_string()))?;
    if let Some(p) = json {
        write(p, &report.to_json())?;
    }
    if let Some(p) = dot {
        write(p, &dot_text)?;
    }
    println!("components: {}", report.components.component_ids().join(", "));
    println!("rigid: {}", report.rigid.join(", "));
    println!("{} discrepancies with the tabulated data", report.discrepancies.len());
    for f in &report.failures {
        println!("FAILURE: {}", f);
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} golden expectation(s) failed", report.failures.len())))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Check { path } => cmd_check(path),
        Cmd::Profile { algebra } => cmd_profile(algebra),
        Cmd::Witness { cmd: WitnessCmd::Verify { ids, file, seed } } => cmd_witness_verify(ids, file.as_deref(), *seed),
        Cmd::Certify { from, to } => cmd_certify(from, to),
        Cmd::Hasse { dot, skip_table4 } => cmd_hasse(dot.as_deref(), *skip_table4),
        Cmd::Components { skip_table4 } => cmd_components(*skip_table4),
        Cmd::Cohomology { algebra, basis } => cmd_cohomology(algebra, *basis),
        Cmd::Catalog { cmd } => cmd_catalog(cmd),
        Cmd::Reproduce { json, dot, seed, samples, skip_table4 } => cmd_reproduce(
            json.as_deref(),
            dot.as_deref(),
            ReproduceOptions { seed: *seed, samples: *samples, skip_table4: *skip_table4 },
        ),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {}", m);
            ExitCode::from(2)
        }
    }
}
