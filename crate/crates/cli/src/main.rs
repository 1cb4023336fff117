//! `scrollcoh`: cohomology tables, regularity and splitting tests on toric scrolls.
//!
//! Exit status: 0 on success, 1 when a computation fails (or a verification
//! property does not hold), 2 on usage or input errors.

mod args;
mod sweep;

use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use scrollcoh::oracle::{all_contributing, character_cohom};
use scrollcoh::regularity::{compare_regularities, is_ms_regular, is_pq_regular, reg, rns_is_pq_regular};
use scrollcoh::splitting::{check, evaluate_indecomposable, ground_truth_classify, TheoremId};
use scrollcoh::verify::{run_suite, Scope};
use scrollcoh::{CohomTable, DivClass, Evaluator, Scroll, SheafSpec};

#[derive(Parser)]
#[command(
    name = "scrollcoh",
    version,
    about = "Exact cohomology, regularity and splitting tests on toric scrolls"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Target {
    /// Scroll as JSON, e.g. '{"m":1,"n":1,"a":[1,2]}'.
    #[arg(long, value_parser = args::scroll)]
    scroll: Scroll,
    /// Sheaf as JSON: '{"split":[[p,q],...]}' or '{"omega":{"i":1,"twist":[p,q]}}'.
    #[arg(long, value_parser = args::sheaf, default_value = r#"{"split":[[0,0]]}"#)]
    sheaf: SheafSpec,
}

#[derive(Args)]
struct Grid {
    /// Range of p, `lo..hi` inclusive.
    #[arg(long, value_parser = args::range, allow_hyphen_values = true, default_value = "-3..3")]
    p: RangeInclusive<i64>,
    #[arg(long, value_parser = args::range, allow_hyphen_values = true, default_value = "-3..3")]
    q: RangeInclusive<i64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// h^i(E ⊗ O(pH+qF)) for all i.
    Cohom {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = args::class, allow_hyphen_values = true, default_value = "0,0")]
        twist: DivClass,
        /// Count torus characters instead of using the closed form (split sheaves only).
        #[arg(long)]
        oracle: bool,
    },
    /// Cohomology over a box of twists.
    Table {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        grid: Grid,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        oracle: bool,
    },
    /// Reg(E), or the (p,q)-regularity report with --at.
    Reg {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = args::class, allow_hyphen_values = true)]
        at: Option<DivClass>,
        /// Explicit p range to scan, needed when the window is unbounded.
        #[arg(long, value_parser = args::range, allow_hyphen_values = true)]
        scan: Option<RangeInclusive<i64>>,
        /// Use the rational-normal-scroll condition list (m = 1).
        #[arg(long, requires = "at")]
        rns: bool,
    },
    /// Multigraded regularity with respect to {H, F}.
    Msreg {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_parser = args::class, allow_hyphen_values = true, default_value = "0,0")]
        at: DivClass,
    },
    /// Multigraded versus (p,q)-regularity over a box.
    Compare {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        grid: Grid,
    },
    /// Evaluate a splitting criterion.
    Split {
        #[command(flatten)]
        target: Target,
        /// splitting_o, splitting_ofh, indecomposable, rns_splitting_o, rns_splitting_ofh, rns_indecomposable
        #[arg(long)]
        theorem: TheoremId,
        /// For the indecomposable criteria: report even when Reg(E) ≠ 0.
        #[arg(long)]
        ignore_reg: bool,
    },
    /// Run the property suites and print one line per property.
    Verify {
        /// all, or one of scroll, cohomology, oracle, hypercohomology, regularity, splitting.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Scrolls as a JSON list; defaults to a built-in family.
        #[arg(long, value_parser = args::scrolls)]
        family: Option<args::ScrollList>,
        #[arg(long)]
        radius: Option<i64>,
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        json: bool,
    },
    /// Line-bundle cohomology by counting torus characters.
    Oracle {
        #[arg(long, value_parser = args::scroll)]
        scroll: Scroll,
        #[arg(long, value_parser = args::class, allow_hyphen_values = true)]
        class: DivClass,
        /// Also list the contributing characters.
        #[arg(long)]
        characters: bool,
    },
    /// Run operations over a scroll family; CSV table out, JSON-lines records cached.
    Sweep {
        /// '{"m":[..],"n":[..],"a":[lo,hi]}': all sorted twist vectors with entries in [lo,hi].
        #[arg(long, value_parser = args::family)]
        family: args::FamilySpec,
        #[arg(long, value_parser = args::sheaf, default_value = r#"{"split":[[0,0]]}"#)]
        sheaf: SheafSpec,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "cohom")]
        ops: Vec<sweep::Op>,
        #[command(flatten)]
        grid: Grid,
        /// Directory holding records.jsonl.
        #[arg(long, env = "SCROLLCOH_CACHE", default_value = ".scrollcoh-cache")]
        cache: PathBuf,
        /// Neither read nor write records.
        #[arg(long)]
        no_cache: bool,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 200_000)]
        max_queries: usize,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<scrollcoh::Error> for Failure {
    fn from(e: scrollcoh::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Res = Result<(), Failure>;

fn emit<T: Serialize>(v: &T) -> Res {
    let s = serde_json::to_string(v).map_err(|e| Failure::Compute(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn evaluator(t: &Target) -> Result<Evaluator, Failure> {
    t.sheaf.validate(&t.scroll).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(Evaluator::new(t.scroll.clone()))
}

/// The dimension list exactly as a serialized table carries it.
fn dims(h: &CohomTable) -> serde_json::Value {
    serde_json::to_value(h).expect("tables serialize")["h"].take()
}

/// Sum of oracle tables over the summands of a split sheaf.
fn oracle_cohom(x: &Scroll, e: &SheafSpec, t: DivClass) -> Result<CohomTable, Failure> {
    let b = e
        .as_split()
        .ok_or_else(|| Failure::Usage("--oracle needs a split sheaf".into()))?;
    let mut total = CohomTable::zero(x.dim() + 1);
    for &d in b.summands() {
        total.add_assign(&character_cohom(x, d + t));
    }
    Ok(total)
}

fn cohom_at(ev: &Evaluator, e: &SheafSpec, t: DivClass, oracle: bool) -> Result<CohomTable, Failure> {
    if oracle {
        oracle_cohom(ev.scroll(), e, t)
    } else {
        Ok(ev.cohom(e, t)?)
    }
}

fn table(target: &Target, grid: &Grid, format: Format, oracle: bool) -> Res {
    let ev = evaluator(target)?;
    let cells: Vec<DivClass> = grid
        .p
        .clone()
        .flat_map(|p| grid.q.clone().map(move |q| DivClass::new(p, q)))
        .collect();
    let tables = cells
        .par_iter()
        .map(|&t| cohom_at(&ev, &target.sheaf, t, oracle))
        .collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => {
            let rows: Vec<_> = cells
                .iter()
                .zip(&tables)
                .map(|(t, h)| json!({ "p": t.p, "q": t.q, "h": dims(h) }))
                .collect();
            emit(&rows)
        }
        Format::Csv => {
            let stdout = io::stdout();
            let mut w = csv::Writer::from_writer(stdout.lock());
            let mut header = vec!["p".to_string(), "q".to_string()];
            header.extend((0..=target.scroll.dim()).map(|i| format!("h{i}")));
            w.write_record(&header).map_err(|e| Failure::Compute(e.to_string()))?;
            for (t, h) in cells.iter().zip(&tables) {
                let mut row = vec![t.p.to_string(), t.q.to_string()];
                row.extend(h.h.iter().map(|v| v.to_string()));
                w.write_record(&row).map_err(|e| Failure::Compute(e.to_string()))?;
            }
            w.flush()?;
            Ok(())
        }
    }
}

fn verify(
    suite: &str,
    family: Option<args::ScrollList>,
    radius: Option<i64>,
    bound: Option<i64>,
    as_json: bool,
) -> Res {
    let mut scope = Scope::default();
    if let Some(args::ScrollList(f)) = family {
        scope.family = f;
    }
    scope.radius = radius.unwrap_or(scope.radius);
    scope.bound = bound.unwrap_or(scope.bound);
    let results = run_suite(suite, &scope).map_err(|e| Failure::Usage(e.to_string()))?;
    let passed = results.iter().filter(|r| r.passed).count();
    if as_json {
        emit(&results)?;
    } else {
        let stdout = io::stdout();
        let mut out = stdout.lock();
        for r in &results {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{}/{}: {verdict} ({})", r.suite, r.label, r.detail)?;
        }
        writeln!(out, "{passed} of {} properties pass", results.len())?;
    }
    if passed == results.len() {
        Ok(())
    } else {
        Err(Failure::Compute(format!("{} properties fail", results.len() - passed)))
    }
}

fn dispatch(cmd: Cmd) -> Res {
    match cmd {
        Cmd::Cohom { target, twist, oracle } => {
            let ev = evaluator(&target)?;
            emit(&cohom_at(&ev, &target.sheaf, twist, oracle)?)
        }
        Cmd::Table {
            target,
            grid,
            format,
            oracle,
        } => table(&target, &grid, format, oracle),
        Cmd::Reg { target, at, scan, rns } => {
            let ev = evaluator(&target)?;
            match at {
                Some(t) if rns => emit(&rns_is_pq_regular(&ev, &target.sheaf, t.p, t.q)?),
                Some(t) => emit(&is_pq_regular(&ev, &target.sheaf, t.p, t.q)?),
                None => emit(&reg(&ev, &target.sheaf, scan.map(|r| (*r.start(), *r.end())))?),
            }
        }
        Cmd::Msreg { target, at } => {
            let ev = evaluator(&target)?;
            emit(&is_ms_regular(&ev, &target.sheaf, at.p, at.q)?)
        }
        Cmd::Compare { target, grid } => {
            let ev = evaluator(&target)?;
            emit(&compare_regularities(&ev, &target.sheaf, grid.p, grid.q)?)
        }
        Cmd::Split {
            target,
            theorem,
            ignore_reg,
        } => {
            let ev = evaluator(&target)?;
            let report = if ignore_reg && theorem.general() == TheoremId::Indecomposable {
                evaluate_indecomposable(&ev, &target.sheaf, theorem)?
            } else {
                check(&ev, &target.sheaf, theorem)?
            };
            let truth = ground_truth_classify(&target.sheaf).ok();
            emit(&json!({ "report": report, "ground_truth": truth }))
        }
        Cmd::Verify {
            suite,
            family,
            radius,
            bound,
            json,
        } => verify(&suite, family, radius, bound, json),
        Cmd::Oracle {
            scroll,
            class,
            characters,
        } => {
            let h = character_cohom(&scroll, class);
            if characters {
                let chars: Vec<_> = all_contributing(&scroll, class)
                    .into_iter()
                    .map(|(row, c)| json!({ "row": row, "alpha": c.alpha, "beta": c.beta }))
                    .collect();
                emit(&json!({ "h": dims(&h), "characters": chars }))
            } else {
                emit(&h)
            }
        }
        Cmd::Sweep {
            family,
            sheaf,
            ops,
            grid,
            cache,
            no_cache,
            out,
            max_queries,
        } => {
            let cache = (!no_cache).then_some(cache);
            let plan = sweep::Plan {
                scrolls: family.scrolls(),
                sheaf,
                ops,
                ps: grid.p,
                qs: grid.q,
            };
            if plan.scrolls.is_empty() {
                return Err(Failure::Usage("family is empty".into()));
            }
            if plan.size() > max_queries {
                return Err(Failure::Usage(format!(
                    "grid too large: {} (limit {max_queries}; raise --max-queries to run it)",
                    plan.estimate()
                )));
            }
            let outcome = match &out {
                Some(path) => {
                    let mut buf = Vec::new();
                    let outcome = sweep::run(&plan, cache.as_ref(), &mut buf)?;
                    std::fs::write(path, buf)?;
                    outcome
                }
                None => sweep::run(&plan, cache.as_ref(), &mut io::stdout().lock())?,
            };
            eprintln!("{} computed, {} from cache", outcome.computed, outcome.cached);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
