//! Command-line front end: table computation, diagram optimization,
//! reduction to semimeander form, crossing-number bounds, bracket
//! evaluation, and growth-data export.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use semimeander::bounds::{bound_report, theorem_constant, BoundError};
use semimeander::gauss::{parse_gauss, serialize};
use semimeander::optimizer::{elimination_functions, t_hat_of_functions, MParam};
use semimeander::planar::{
    extract_acd, is_semimeander, kauffman_bracket, normalized_bracket, parse_pd, serialize_pd,
    writhe, BracketError, SelectedArc,
};
use semimeander::rational::{format_mixed, format_plain};
use semimeander::reducer::{choose_initial_arc, make_semimeander};
use semimeander::tables::{
    compute_table, diff_against_published, emit_growth_csv, published_table, render_table,
    ComputeOptions, CostTable, Family,
};

#[derive(Parser)]
#[command(name = "semimeander", version, about = "Semimeander diagrams of knots")]
struct Cli {
    /// Worker threads for table computation (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct TableScope {
    /// Restrict to one family (C or D); default both.
    #[arg(long)]
    family: Option<String>,
    /// Restrict to one basepoint weight (a rational, or `inf`); default both
    /// 8 and inf.
    #[arg(long)]
    m: Option<String>,
    /// Largest diagram length.
    #[arg(long)]
    kmax: Option<usize>,
    /// Unlock the hours-scale range k = 6..9.
    #[arg(long)]
    deep: bool,
    /// Recompute instead of printing the published constants, and fail
    /// loudly on any mismatch with them.
    #[arg(long)]
    recompute: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print or recompute the constants C_{k,m} and D_{k,m}.
    Tables(TableScope),
    /// Elimination functions and program value of one diagram.
    Optimize {
        /// The diagram, e.g. "@[*] [w] a [w] a [w]".
        #[arg(long)]
        gauss: String,
        /// Basepoint weight (rational or `inf`), default 8.
        #[arg(long, default_value = "8")]
        m: String,
    },
    /// Rewrite a diagram into a semimeander one.
    Reduce {
        /// File holding one PD code.
        #[arg(long)]
        pd: PathBuf,
        /// Arc spec `edge:<id>@<lo|hi> .. edge:<id>@<lo|hi>`; default: the
        /// longest greedy simple arc.
        #[arg(long)]
        arc: Option<String>,
    },
    /// Crossing-number bounds for semimeander, meander and potholder
    /// diagrams.
    Bound {
        /// Crossing number of the knot (must exceed 10).
        #[arg(long)]
        n: u64,
    },
    /// Kauffman bracket and its writhe-normalized form.
    Bracket {
        /// File holding one PD code.
        #[arg(long)]
        pd: PathBuf,
    },
    /// Growth data as CSV (k, family, m, value, log10).
    GrowthCsv {
        #[command(flatten)]
        scope: TableScope,
        /// Output path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn parse_m(s: &str) -> Result<MParam, String> {
    MParam::parse(s).ok_or_else(|| format!("invalid value for --m: `{s}`"))
}

fn scope_rows(scope: &TableScope) -> Result<Vec<(Family, MParam)>, String> {
    let families = match &scope.family {
        Some(f) => vec![Family::parse(f).ok_or_else(|| format!("invalid family `{f}`"))?],
        None => vec![Family::C, Family::D],
    };
    let ms = match &scope.m {
        Some(m) => vec![parse_m(m)?],
        None => vec![MParam::Finite(semimeander::rational::rat(8)), MParam::Infinite],
    };
    let mut out = Vec::new();
    for f in &families {
        for m in &ms {
            out.push((*f, m.clone()));
        }
    }
    Ok(out)
}

/// Published or recomputed table for the requested scope. On recompute,
/// returns the table plus whether it matched the published values.
fn scoped_table(scope: &TableScope) -> Result<(CostTable, bool), String> {
    let rows = scope_rows(scope)?;
    if !scope.recompute {
        let kmax = scope.kmax.unwrap_or(9).min(9);
        let published = published_table();
        let mut out = CostTable::default();
        for (f, m) in rows {
            for k in 0..=kmax {
                if let Some(e) = published.get(f, &m, k) {
                    out.insert(f, m.clone(), k, e.clone());
                }
            }
        }
        return Ok((out, true));
    }
    let kmax = scope.kmax.unwrap_or(5);
    if kmax > 5 && !scope.deep {
        return Err(format!(
            "k = {kmax} is an hours-scale computation; pass --deep to unlock k > 5"
        ));
    }
    let opts = ComputeOptions { progress: scope.deep };
    let mut out = CostTable::default();
    for (f, m) in rows {
        let row = compute_table(kmax, &m, f, opts);
        for (key, entry) in row.iter() {
            out.insert(key.0, key.1.clone(), key.2, entry.clone());
        }
    }
    let mismatches = diff_against_published(&out);
    for (key, got, want) in &mismatches {
        eprintln!(
            "MISMATCH {key}: computed {} but the published value is {}",
            format_plain(got),
            format_plain(want)
        );
    }
    Ok((out, mismatches.is_empty()))
}

fn run() -> Result<(), ExitCode> {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| fail(format!("--jobs: {e}")))?;
    }
    match cli.command {
        Command::Tables(scope) => {
            let (table, ok) = scoped_table(&scope).map_err(fail)?;
            print!("{}", render_table(&table));
            if scope.recompute {
                if ok {
                    println!("all recomputed entries match the published constants");
                } else {
                    return Err(fail("recomputed table disagrees with the published constants"));
                }
            }
            Ok(())
        }
        Command::Optimize { gauss, m } => {
            let m = parse_m(&m).map_err(fail)?;
            let diagram = parse_gauss(&gauss).map_err(fail)?;
            println!("diagram: {}", serialize(&diagram));
            let fs = elimination_functions(&diagram);
            println!("elimination functions ({}):", fs.forms().len());
            for f in fs.forms() {
                println!("  {f}");
            }
            let value = t_hat_of_functions(&fs, &m);
            println!("t-hat at m = {m}: {} ({})", format_plain(&value), format_mixed(&value));
            Ok(())
        }
        Command::Reduce { pd, arc } => {
            let text = std::fs::read_to_string(&pd).map_err(fail)?;
            let d = parse_pd(&text).map_err(fail)?;
            let j = match arc {
                Some(spec) => SelectedArc::parse(&spec).map_err(fail)?,
                None => choose_initial_arc(&d),
            };
            j.check_simple(&d).map_err(fail)?;
            println!("diagram: {} crossings, arc {}", d.crossing_count(), j.format());
            let off = extract_acd(&d, &j).map_err(fail)?.len();
            println!("crossings off the arc: {off}");
            let (nd, nj, trace) = make_semimeander(&d, &j).map_err(fail)?;
            println!("step crossing branch cost total_crossings off_arc_crossings");
            for step in &trace {
                println!("{step}");
            }
            println!("result: {} crossings, semimeander = {}", nd.crossing_count(),
                is_semimeander(&nd, &nj).map_err(fail)?);
            println!("pd: {}", serialize_pd(&nd));
            println!("arc: {}", nj.format());
            Ok(())
        }
        Command::Bound { n } => {
            let r = bound_report(n).map_err(|e: BoundError| fail(e))?;
            let (best_d, coeff, base) = theorem_constant(&published_table());
            println!("crossing number n = {}, d = (n-8) mod 9 = {}", r.n, r.d);
            println!(
                "semimeander: {} ({}), closed form {:.6} from {:.6} * {:.6}^n \
                 (coefficient ~ {:.3}, base ~ {:.3}, max at d = {best_d})",
                format_plain(&r.exact),
                format_mixed(&r.exact),
                r.closed_form,
                coeff,
                base,
                coeff,
                base
            );
            println!(
                "meander:     {} ({}), closed form {:.6} from {:.6} * {:.6}^n (coefficient ~ {:.2})",
                format_plain(&r.meander),
                format_mixed(&r.meander),
                r.meander_closed,
                4.0 * coeff,
                base,
                4.0 * coeff
            );
            println!(
                "potholder:   {} ({}), closed form ({:.6} * {:.6}^n - 1)^2 = {:.6e} (inner coefficient ~ {:.2})",
                format_plain(&r.potholder),
                format_mixed(&r.potholder),
                8.0 * coeff,
                base,
                (r.potholder_closed - 1.0) * (r.potholder_closed - 1.0),
                8.0 * coeff
            );
            Ok(())
        }
        Command::Bracket { pd } => {
            let text = std::fs::read_to_string(&pd).map_err(fail)?;
            let d = parse_pd(&text).map_err(fail)?;
            let bracket = kauffman_bracket(&d).map_err(|e| match e {
                BracketError::TooLarge(..) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            })?;
            println!("crossings: {}", d.crossing_count());
            println!("writhe: {}", writhe(&d));
            println!("bracket: {bracket}");
            println!("normalized: {}", normalized_bracket(&d).unwrap());
            Ok(())
        }
        Command::GrowthCsv { scope, out } => {
            let (table, ok) = scoped_table(&scope).map_err(fail)?;
            let mut buf = Vec::new();
            emit_growth_csv(&table, &mut buf).map_err(fail)?;
            match out {
                Some(path) => std::fs::write(&path, &buf).map_err(fail)?,
                None => std::io::stdout().write_all(&buf).map_err(fail)?,
            }
            if scope.recompute && !ok {
                return Err(fail("recomputed table disagrees with the published constants"));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
