use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use argshift::catalog::{load_catalog, parse_catalog, Entry, BUILTIN_CATALOG};
use argshift::pfaffian::sub_pfaffians;
use argshift::report::{algebraic_data, parse_point, random_regular_point, run_verify, Families, Settings, Stage};
use argshift::shifts::{fmt_point, BasePoint, GeneratorFamily};
use argshift::singular::completeness_verdict;
use argshift::trdeg::{completeness_bound, span_dimension};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "argshift", version, about = "Argument-shift families of Lie algebras, checked exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 12)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 999)]
    coeff_bound: i64,
    #[arg(long, global = true, value_enum, default_value_t = Switch::On)]
    numeric_fallback: Switch,
    /// Only process the catalog entry with this name.
    #[arg(long, global = true)]
    algebra: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Fa,
    Ftilde,
    Fsi,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a catalog and check antisymmetry, Jacobi and the listed invariants.
    Validate { file: Option<PathBuf> },
    /// Index of each algebra.
    Index { file: Option<PathBuf> },
    /// Fundamental semi-invariant and the sub-Pfaffians it comes from.
    Pfaff { file: Option<PathBuf> },
    /// Semi-invariants up to a degree bound.
    Semiinv {
        file: Option<PathBuf>,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Generator families at a base point.
    Families {
        file: Option<PathBuf>,
        /// Base point as "r1,...,rn".
        #[arg(long, conflicts_with = "random_regular")]
        point: Option<String>,
        #[arg(long)]
        random_regular: bool,
    },
    /// Generic differential rank of one family.
    Trdeg {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        family: FamilyArg,
    },
    /// Completeness test on the singular set.
    Completeness { file: Option<PathBuf> },
    /// Full pipeline with expected-value checks.
    Verify {
        file: Option<PathBuf>,
        /// Write the reports as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

impl Command {
    fn file(&self) -> Option<&PathBuf> {
        match self {
            Command::Validate { file }
            | Command::Index { file }
            | Command::Pfaff { file }
            | Command::Semiinv { file, .. }
            | Command::Families { file, .. }
            | Command::Trdeg { file, .. }
            | Command::Completeness { file }
            | Command::Verify { file, .. } => file.as_ref(),
        }
    }
}

fn family(f: &Families, which: FamilyArg) -> &GeneratorFamily {
    match which {
        FamilyArg::Fa => &f.fa,
        FamilyArg::Ftilde => &f.ftilde,
        FamilyArg::Fsi => &f.fsi,
    }
}

fn print_family(fam: &GeneratorFamily) {
    println!("  {} ({} generators)", fam.kind.label(), fam.len());
    for g in &fam.generators {
        println!("    {}", g.poly);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let settings = Settings {
        seed: cli.seed,
        samples: cli.samples,
        coeff_bound: cli.coeff_bound,
        numeric_fallback: matches!(cli.numeric_fallback, Switch::On),
        max_degree: match &cli.command {
            Command::Semiinv { max_degree, .. } => *max_degree,
            _ => None,
        },
    };
    let loaded = match cli.command.file() {
        Some(path) => load_catalog(path),
        None => parse_catalog(BUILTIN_CATALOG),
    };
    let mut entries: Vec<Entry> = match loaded {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(name) = &cli.algebra {
        entries.retain(|e| &e.record.name == name);
        if entries.is_empty() {
            eprintln!("error: no algebra named {name}");
            return ExitCode::from(2);
        }
    }
    let mut ok = true;
    match &cli.command {
        Command::Validate { .. } => {
            for e in &entries {
                println!("{}: ok", e.algebra);
            }
        }
        Command::Index { .. } => {
            for e in &entries {
                let ind = e.algebra.index_of(&mut settings.rng(Stage::Index), settings.samples, settings.coeff_bound);
                println!("{}: ind = {ind}, generic rank {}", e.record.name, e.algebra.dim() - ind);
            }
        }
        Command::Pfaff { .. } => {
            for e in &entries {
                let data = algebraic_data(&e.algebra, &settings);
                let t = e.algebra.dim() - data.index;
                let subs = sub_pfaffians(&e.algebra, t).expect("even size");
                let nonzero = subs.iter().filter(|s| !s.value.is_zero()).count();
                println!("{}: p_g = {} (t = {t}, {nonzero} of {} sub-Pfaffians nonzero)", e.record.name, data.p_g, subs.len());
                for s in subs.iter().filter(|s| !s.value.is_zero()) {
                    let idx: Vec<String> = s.indices.iter().map(|i| (i + 1).to_string()).collect();
                    println!("  Pf[{}] = {}", idx.join(","), s.value);
                }
            }
        }
        Command::Semiinv { .. } => {
            for e in &entries {
                let data = algebraic_data(&e.algebra, &settings);
                println!("{}: degree <= {}", e.record.name, data.search.max_degree);
                for s in &data.search.found {
                    let w: Vec<String> = s.weight.iter().map(ToString::to_string).collect();
                    println!("  {}  weight ({})", s.poly, w.join(", "));
                }
                if !data.search.irrational_degrees.is_empty() {
                    println!("  irrational eigenvalues at degrees {:?}; results may be incomplete", data.search.irrational_degrees);
                }
            }
        }
        Command::Families { point, .. } => {
            for e in &entries {
                let data = algebraic_data(&e.algebra, &settings);
                let a = match point {
                    Some(text) => match parse_point(text) {
                        Ok(a) => a,
                        Err(err) => {
                            eprintln!("error: bad point {text:?}: {err}");
                            return ExitCode::from(2);
                        }
                    },
                    None => random_regular_point(&e.algebra, data.index, &settings),
                };
                let bp = match BasePoint::new(&e.algebra, data.index, a) {
                    Ok(bp) => bp,
                    Err(err) => {
                        eprintln!("error: {}: {err}", e.record.name);
                        return ExitCode::from(2);
                    }
                };
                let fams = match Families::build(&bp, &data) {
                    Ok(f) => f,
                    Err(err) => {
                        eprintln!("error: {}: {err}", e.record.name);
                        return ExitCode::from(2);
                    }
                };
                println!("{}: a = {}", e.record.name, fmt_point(&bp.a));
                for f in fams.all() {
                    print_family(f);
                }
            }
        }
        Command::Trdeg { family: which, .. } => {
            for e in &entries {
                let data = algebraic_data(&e.algebra, &settings);
                let a = random_regular_point(&e.algebra, data.index, &settings);
                let bp = BasePoint::new(&e.algebra, data.index, a).expect("regular");
                let fams = Families::build(&bp, &data).expect("catalog invariants verified");
                let fam = family(&fams, *which);
                let d = span_dimension(fam, &mut settings.rng(Stage::Spans), settings.samples, settings.coeff_bound);
                let bound = completeness_bound(e.algebra.dim(), data.index);
                println!("{}: trdeg {} = {d} (bound {bound}, a = {})", e.record.name, fam.kind.label(), fmt_point(&bp.a));
                ok &= d <= bound;
            }
        }
        Command::Completeness { .. } => {
            for e in &entries {
                let data = algebraic_data(&e.algebra, &settings);
                let r = completeness_verdict(&e.algebra, &data.p_g, &data.pool, &mut settings.rng(Stage::Completeness), settings.sample_options());
                println!("{}: {} (p_g = {})", e.record.name, r.verdict, data.p_g);
                for c in &r.components {
                    let flag = if c.numeric { ", numeric" } else { "" };
                    println!("  {} = 0: {:?}{flag}", c.factor.poly, c.generic_class);
                }
                if let Some(u) = &r.sing0.unfactored {
                    println!("  unfactored part {u}");
                }
            }
        }
        Command::Verify { json, .. } => {
            let timed: Vec<_> = entries
                .par_iter()
                .map(|e| {
                    let t = Instant::now();
                    let r = run_verify(e, &settings);
                    (r, t.elapsed())
                })
                .collect();
            for (r, elapsed) in &timed {
                let status = if r.passed { "PASS" } else { "FAIL" };
                println!(
                    "{status} {}: ind {}, p_g {}, trdeg fa/ftilde/fsi {}/{}/{}, bound {}, {}, a = {}",
                    r.algebra,
                    r.index,
                    r.p_g,
                    r.span_dimensions.fa,
                    r.span_dimensions.ftilde,
                    r.span_dimensions.fsi,
                    r.completeness_bound,
                    r.completeness.verdict,
                    fmt_point(&r.base_point)
                );
                for f in &r.failures {
                    println!("  {f}");
                }
                eprintln!("{}: {:.2?}", r.algebra, elapsed);
                ok &= r.passed;
            }
            if let Some(path) = json {
                let reports: Vec<_> = timed.into_iter().map(|(r, _)| r).collect();
                let text = serde_json::to_string_pretty(&reports).expect("serializable");
                if let Err(err) = std::fs::write(path, text + "\n") {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return ExitCode::from(2);
                }
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
