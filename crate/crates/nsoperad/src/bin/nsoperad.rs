//! Command-line surface: operad specs in, JSON/CSV reports and DOT diagrams
//! out. Exit codes: 0 on success, 1 when a mathematical check fails, 2 on
//! usage errors.

use clap::{Args, Parser, Subcommand};
use nsoperad::bar::{build_bar, koszul_check, pair_homotopy_transport, BarContext};
use nsoperad::counting::gk_check;
use nsoperad::operads::{
    black_square, parse_spec, quadratic_dual, to_spec_json, Builtin, OperadPresentation,
};
use nsoperad::quotient::BasisRule;
use nsoperad::report;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nsoperad",
    version,
    about = "Quadratic ns operads: duals, black squares, bar complexes, Koszulity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Selects an operad: a builtin name or a spec JSON file.
#[derive(Args, Clone)]
struct Selector {
    /// Builtin operad: ass, dend, dias, quad, dend_pow(m).
    #[arg(long, conflicts_with = "spec")]
    operad: Option<String>,
    /// Path to an operad spec JSON document.
    #[arg(long)]
    spec: Option<PathBuf>,
}

impl Selector {
    fn load(&self) -> Result<(OperadPresentation, Option<Builtin>), String> {
        match (&self.operad, &self.spec) {
            (Some(name), None) => {
                let b = Builtin::parse(name).map_err(|e| e.to_string())?;
                Ok((b.presentation(), Some(b)))
            }
            (None, Some(path)) => {
                let bytes = std::fs::read(path)
                    .map_err(|e| format!("cannot read {}: {}", path.display(), e))?;
                let pres = parse_spec(&bytes).map_err(|e| e.to_string())?;
                Ok((pres, None))
            }
            _ => Err("exactly one of --operad or --spec is required".into()),
        }
    }
}

fn dual_rule(b: Option<Builtin>) -> BasisRule {
    match b.and_then(Builtin::square_power) {
        Some(m) => BasisRule::Split { power: m },
        None => BasisRule::Greedy,
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension table of P(n) and its quadratic dual.
    Dims {
        #[command(flatten)]
        selector: Selector,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Emit the quadratic dual as spec JSON.
    Dual {
        #[command(flatten)]
        selector: Selector,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Black square product of two operads, emitted as spec JSON.
    Square {
        /// Left factor: builtin name.
        #[arg(long, conflicts_with = "left_spec")]
        left: Option<String>,
        /// Left factor: spec JSON path.
        #[arg(long)]
        left_spec: Option<PathBuf>,
        /// Right factor: builtin name.
        #[arg(long, conflicts_with = "right_spec")]
        right: Option<String>,
        /// Right factor: spec JSON path.
        #[arg(long)]
        right_spec: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimensions and homology of the augmented dual bar complex at one arity.
    Bar {
        #[command(flatten)]
        selector: Selector,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Full Koszulity check up to a bound.
    Koszul {
        #[command(flatten)]
        selector: Selector,
        #[arg(long, default_value_t = 4)]
        max_arity: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Direct-summand verification of the split associahedron complex.
    Split {
        /// Builtin operad (ass, dend, quad, dend_pow(m)).
        #[arg(long)]
        operad: String,
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Also transport the homotopy data (quad only).
        #[arg(long)]
        transport: bool,
    },
    /// Counting tables: quadri-algebra dimensions and hypercube counts.
    Count {
        /// Emit the d_n table up to --to.
        #[arg(long, conflicts_with = "hypercube")]
        quad_dims: bool,
        #[arg(long, default_value_t = 5)]
        to: usize,
        /// Emit hypercube counts for "m,n".
        #[arg(long, value_name = "M,N")]
        hypercube: Option<String>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Generating-series consistency check (Koszul functional equation).
    Gf {
        /// Builtin operad.
        #[arg(long)]
        operad: String,
        #[arg(long, default_value_t = 5)]
        order: usize,
    },
    /// DOT rendering of the associahedron face lattice (or a single tree).
    TreeDot {
        #[arg(long)]
        arity: Option<usize>,
        /// Canonical key of a single tree to render instead.
        #[arg(long)]
        tree: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => {
            std::fs::write(p, content).map_err(|e| format!("cannot write {}: {}", p.display(), e))
        }
        None => {
            println!("{}", content);
            Ok(())
        }
    }
}

fn emit_tables(
    json: &Option<PathBuf>,
    csv: &Option<PathBuf>,
    as_json: String,
    as_csv: String,
) -> Result<(), String> {
    if let Some(p) = json {
        write_or_print(&Some(p.clone()), &as_json)?;
    }
    if let Some(p) = csv {
        write_or_print(&Some(p.clone()), &as_csv)?;
    }
    if json.is_none() && csv.is_none() {
        print!("{}", as_csv);
    }
    Ok(())
}

/// Ok(true) = checks passed, Ok(false) = a mathematical check failed.
fn run(cmd: Command) -> Result<bool, String> {
    match cmd {
        Command::Dims { selector, max_arity, json, csv } => {
            if max_arity < 2 {
                return Err("--max-arity must be at least 2".into());
            }
            let (pres, _) = selector.load()?;
            let rep = report::dims_report(&pres, max_arity).map_err(|e| e.to_string())?;
            emit_tables(&json, &csv, rep.to_json(), rep.to_csv())?;
            Ok(true)
        }
        Command::Dual { selector, out } => {
            let (pres, _) = selector.load()?;
            write_or_print(&out, &to_spec_json(&quadratic_dual(&pres)))?;
            Ok(true)
        }
        Command::Square { left, left_spec, right, right_spec, out } => {
            let l = Selector { operad: left, spec: left_spec }.load()?.0;
            let r = Selector { operad: right, spec: right_spec }.load()?.0;
            let s = black_square(&l, &r).map_err(|e| e.to_string())?;
            write_or_print(&out, &to_spec_json(&s))?;
            Ok(true)
        }
        Command::Bar { selector, arity, json } => {
            if arity < 2 {
                return Err("--arity must be at least 2".into());
            }
            let (pres, b) = selector.load()?;
            let ctx = BarContext::build(&pres, arity, dual_rule(b)).map_err(|e| e.to_string())?;
            let bar = build_bar(&ctx, arity);
            let homology = bar.complex.homology_dims();
            let rep = nsoperad::bar::ArityReport {
                n: arity,
                dims: bar.complex.dims(),
                homology: homology.clone(),
                euler: bar.complex.euler_characteristic(),
            };
            write_or_print(&json, &serde_json::to_string_pretty(&rep).unwrap())?;
            Ok(homology.iter().all(|&h| h == 0))
        }
        Command::Koszul { selector, max_arity, json } => {
            if max_arity < 2 {
                return Err("--max-arity must be at least 2".into());
            }
            let (pres, b) = selector.load()?;
            let rep = koszul_check(&pres, max_arity, dual_rule(b)).map_err(|e| e.to_string())?;
            write_or_print(&json, &rep.to_json())?;
            Ok(rep.koszul)
        }
        Command::Split { operad, arity, json, transport } => {
            if arity < 2 {
                return Err("--arity must be at least 2".into());
            }
            let b = Builtin::parse(&operad).map_err(|e| e.to_string())?;
            let Some(power) = b.square_power() else {
                return Err(format!("`{}` has no split form (not a dendriform power)", operad));
            };
            let pres = b.presentation();
            let ctx = BarContext::build(&pres, arity, BasisRule::Split { power })
                .map_err(|e| e.to_string())?;
            let dend_ctx = if power >= 2 {
                Some(
                    BarContext::build(
                        &nsoperad::operads::dend(),
                        arity,
                        BasisRule::Split { power: 1 },
                    )
                    .map_err(|e| e.to_string())?,
                )
            } else {
                None
            };
            let rep = nsoperad::associahedron::summand_check(&ctx, power, arity, dend_ctx.as_ref());
            let mut pass = rep.pass;
            let mut out = serde_json::to_value(&rep).unwrap();
            if transport {
                if b != Builtin::Quad {
                    return Err("--transport is only defined for quad".into());
                }
                let t = pair_homotopy_transport(dend_ctx.as_ref().unwrap(), &ctx, arity);
                pass &= t.identity_holds;
                out["transport"] = serde_json::to_value(&t).unwrap();
            }
            write_or_print(&json, &serde_json::to_string_pretty(&out).unwrap())?;
            Ok(pass)
        }
        Command::Count { quad_dims, to, hypercube, json, csv } => {
            if let Some(spec) = hypercube {
                let parts: Vec<&str> = spec.split(',').collect();
                if parts.len() != 2 {
                    return Err("--hypercube expects M,N".into());
                }
                let m: usize =
                    parts[0].trim().parse().map_err(|_| "bad hypercube dimension".to_string())?;
                let n: usize =
                    parts[1].trim().parse().map_err(|_| "bad hypercube degree".to_string())?;
                if m < 1 || n < 2 {
                    return Err("--hypercube needs m >= 1 and n >= 2".into());
                }
                let rep = report::hypercube_report(m, n);
                emit_tables(&json, &csv, rep.to_json(), rep.to_csv())?;
                return Ok(true);
            }
            if !quad_dims {
                return Err("count needs --quad-dims or --hypercube".into());
            }
            if to < 1 {
                return Err("--to must be at least 1".into());
            }
            let rep = report::quad_dims_report(to);
            emit_tables(&json, &csv, rep.to_json(), rep.to_csv())?;
            Ok(true)
        }
        Command::Gf { operad, order } => {
            if order < 2 {
                return Err("--order must be at least 2".into());
            }
            let b = Builtin::parse(&operad).map_err(|e| e.to_string())?;
            let ok = gk_check(b, order).map_err(|e| e.to_string())?;
            println!(
                "gk check for {} to order {}: {}",
                operad,
                order,
                if ok { "pass" } else { "fail" }
            );
            Ok(ok)
        }
        Command::TreeDot { arity, tree, out } => match (arity, tree) {
            (Some(n), None) => {
                if n < 2 {
                    return Err("--arity must be at least 2".into());
                }
                write_or_print(&out, &report::face_lattice_dot(n))?;
                Ok(true)
            }
            (None, Some(key)) => {
                let t: nsoperad::PlanarTree =
                    nsoperad::trees::parse_key(&key).map_err(|e| e.to_string())?;
                write_or_print(&out, &report::tree_dot(&t))?;
                Ok(true)
            }
            _ => Err("tree-dot needs exactly one of --arity or --tree".into()),
        },
    }
}

fn main() -> ExitCode {
    // Thread-count override; default is machine parallelism.
    if let Ok(threads) = std::env::var("NSOPERAD_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
