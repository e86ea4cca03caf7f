//! Command-line driver: scenario runner, built-in suites, and direct access
//! to the chop/Hecke/lattice/inventory machinery.
//!
//! Exit codes: 0 = all PASS, 1 = any FAIL, 2 = any INCONCLUSIVE or error.

use clap::{Parser, Subcommand};
use multfree::cache::{read_inventory_cache, write_inventory_cache};
use multfree::error::Error;
use multfree::field::FieldCtx;
use multfree::homalg::hecke_algebra_convolution;
use multfree::meataxe::{irreducible_inventory, Meataxe, ModuleOverAlgebra};
use multfree::structure::submodule_lattice;
use multfree::verdicts::report::{MachineReport, VerdictKind, VerdictReport};
use multfree::verdicts::spec::{parse_character, parse_group, parse_rho, parse_subgroup};
use multfree::verdicts::suites::run_suite;
use multfree::verdicts::{run_scenario, RunConfig, Scenario};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "multfree",
    version,
    about = "Exact multiplicity-freeness toolkit: Hecke algebras, meataxe, socle/radical structure over finite fields"
)]
struct Cli {
    /// Seed for every randomized computation (meataxe word sampling).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads for suite scenarios (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Node cap for submodule-lattice enumeration.
    #[arg(long, global = true, default_value_t = 4096)]
    lattice_cap: usize,
    /// Dimension cap for induced modules.
    #[arg(long, global = true, default_value_t = 256)]
    max_induced_dim: usize,
    /// Write the machine report (JSON) to this path.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Include wall-clock timings in the machine report (off by default so
    /// reports are byte-identical across runs).
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a single scenario file (TOML).
    Run { scenario: PathBuf },
    /// Run a built-in suite: gelfand-pairs, gelfand-graev, structure-audit,
    /// non-examples, properties, or all.
    Suite { name: String },
    /// Chop a representation into composition factors.
    Chop {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "regular")]
        rho: String,
    },
    /// Hecke algebra of (G, H, eta): dimension and commutativity.
    Hecke {
        #[arg(long)]
        group: String,
        #[arg(long)]
        sub: String,
        #[arg(long = "char", default_value = "trivial")]
        character: String,
        #[arg(long)]
        field: String,
    },
    /// Submodule lattice of a representation.
    Lattice {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "regular")]
        rho: String,
    },
    /// Irreducible inventory of a group over a field, with optional cache.
    Inventory {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

fn main() {
    // behave like a classic unix tool when stdout is closed early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
    }
    let cfg = RunConfig {
        seed: cli.seed,
        lattice_cap: cli.lattice_cap,
        max_induced_dim: cli.max_induced_dim,
    };
    let code = match dispatch(&cli, &cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<i32, Error> {
    match &cli.cmd {
        Cmd::Run { scenario } => {
            let text = std::fs::read_to_string(scenario)
                .map_err(|e| Error::Io(format!("{}: {e}", scenario.display())))?;
            let sc = Scenario::from_toml(&text)?;
            let started = Instant::now();
            let mut rep = run_scenario(&sc, cfg);
            if cli.timings {
                rep.wall_ms = Some(started.elapsed().as_millis() as u64);
            }
            println!("{}", rep.summary_line());
            let machine = MachineReport::new("run", cfg.seed, vec![rep]);
            write_report(cli, &machine)?;
            Ok(machine.exit_code())
        }
        Cmd::Suite { name } => {
            let started = Instant::now();
            let machine = run_suite(name, cfg)?;
            for rep in &machine.reports {
                println!("{}", rep.summary_line());
            }
            let (pass, fail, inc) = tally(&machine.reports);
            println!(
                "suite {name}: {pass} PASS, {fail} FAIL, {inc} INCONCLUSIVE ({} ms)",
                started.elapsed().as_millis()
            );
            write_report(cli, &machine)?;
            Ok(machine.exit_code())
        }
        Cmd::Chop { group, field, rho } => {
            let g = parse_group(group)?;
            let ctx = FieldCtx::parse(field)?;
            let r = parse_rho(&g, &ctx, rho, cfg.max_induced_dim, cfg.seed)?;
            let module = ModuleOverAlgebra::from_representation(&r);
            let mut mx = Meataxe::new(cfg.seed);
            let report = mx.chop(&module)?;
            println!("module dim {} over {ctx}: {} composition factors", module.dim(), report.factors.len());
            for f in &report.factors {
                println!(
                    "  dim {:>3}  multiplicity {}  absolutely irreducible: {}",
                    f.module.dim(),
                    f.multiplicity,
                    f.absolutely_irreducible
                );
            }
            Ok(0)
        }
        Cmd::Hecke { group, sub, character, field } => {
            let g = parse_group(group)?;
            let h = parse_subgroup(&g, sub)?;
            let ctx = FieldCtx::parse(field)?;
            let eta = parse_character(character)?.evaluate(&h, &ctx)?;
            let hecke = hecke_algebra_convolution(&g, &h, &eta)?;
            println!("dim={} commutative={}", hecke.dim(), hecke.is_commutative());
            Ok(0)
        }
        Cmd::Lattice { group, field, rho } => {
            let g = parse_group(group)?;
            let ctx = FieldCtx::parse(field)?;
            let r = parse_rho(&g, &ctx, rho, cfg.max_induced_dim, cfg.seed)?;
            let module = ModuleOverAlgebra::from_representation(&r);
            let lat = submodule_lattice(&module, cfg.lattice_cap);
            println!(
                "lattice of a dim-{} module over {ctx}: {} nodes, complete={}",
                module.dim(),
                lat.len(),
                lat.complete()
            );
            let mut by_dim = std::collections::BTreeMap::new();
            for n in lat.nodes() {
                *by_dim.entry(n.dim()).or_insert(0usize) += 1;
            }
            for (dim, count) in by_dim {
                println!("  dim {dim:>3}: {count} node(s)");
            }
            if lat.complete() {
                println!("  hasse edges: {}", lat.hasse_edges().len());
            } else {
                println!("  ({})", lat.incomplete_reason().unwrap_or("incomplete"));
            }
            Ok(if lat.complete() { 0 } else { 2 })
        }
        Cmd::Inventory { group, field, cache } => {
            let g = parse_group(group)?;
            let ctx = FieldCtx::parse(field)?;
            let mut inv = None;
            if let Some(path) = cache {
                if path.exists() {
                    match read_inventory_cache(path, group, field, &g, &ctx) {
                        Ok(Some(loaded)) => {
                            println!("loaded certified inventory from {}", path.display());
                            inv = Some(loaded);
                        }
                        Ok(None) => println!("cache key mismatch; recomputing"),
                        Err(e) => println!("cache rejected ({e}); recomputing"),
                    }
                }
            }
            let inv = match inv {
                Some(i) => i,
                None => {
                    let computed = irreducible_inventory(&g, &ctx, cfg.seed)?;
                    if let Some(path) = cache {
                        write_inventory_cache(path, group, field, &computed)?;
                        println!("wrote inventory cache to {}", path.display());
                    }
                    computed
                }
            };
            println!(
                "{} irreducibles of {} over {ctx} (certified absolutely irreducible)",
                inv.len(),
                g.name()
            );
            for (rep, &mult) in inv.representations().iter().zip(inv.multiplicity_in_regular()) {
                println!("  dim {:>3}  multiplicity in regular module: {mult}", rep.dim());
            }
            Ok(0)
        }
    }
}

fn tally(reports: &[VerdictReport]) -> (usize, usize, usize) {
    let pass = reports.iter().filter(|r| r.verdict == VerdictKind::Pass).count();
    let fail = reports.iter().filter(|r| r.verdict == VerdictKind::Fail).count();
    let inc = reports.iter().filter(|r| r.verdict == VerdictKind::Inconclusive).count();
    (pass, fail, inc)
}

fn write_report(cli: &Cli, machine: &MachineReport) -> Result<(), Error> {
    if let Some(path) = &cli.report {
        std::fs::write(path, machine.to_json())?;
        println!("machine report written to {}", path.display());
    }
    Ok(())
}
