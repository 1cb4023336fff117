//! Batch runs over a scroll family with a content-addressed JSON-lines cache.
//!
//! Rows come out in family order, then operation order, then `(p, q)`
//! lexicographically, whatever the thread count or cache state.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use scrollcoh::regularity::{is_ms_regular, is_pq_regular, reg};
use scrollcoh::splitting::{check, TheoremId};
use scrollcoh::{DivClass, Evaluator, Scroll, SheafSpec, ENGINE_VERSION};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "# scrollcoh-sweep schema=1";
pub const COLUMNS: [&str; 7] = ["scroll", "sheaf", "op", "p", "q", "result", "flag"];
/// Rough throughput used in the oversized-grid estimate.
const QUERIES_PER_SECOND: f64 = 2000.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Op {
    Cohom,
    Pqreg,
    Msreg,
    Compare,
    Reg,
    SplittingO,
    SplittingOfh,
    Indecomposable,
}

impl Op {
    fn per_cell(self) -> bool {
        matches!(self, Op::Cohom | Op::Pqreg | Op::Msreg | Op::Compare)
    }

    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QueryRecord {
    pub key: String,
    pub scroll: Scroll,
    pub operation: Op,
    pub inputs: Value,
    pub result: Value,
    pub engine: String,
    pub wall_ms: f64,
}

struct Query {
    scroll: usize,
    op: Op,
    twist: Option<DivClass>,
    inputs: Value,
    key: String,
}

pub struct Plan {
    pub scrolls: Vec<Scroll>,
    pub sheaf: SheafSpec,
    pub ops: Vec<Op>,
    pub ps: RangeInclusive<i64>,
    pub qs: RangeInclusive<i64>,
}

impl Plan {
    pub fn size(&self) -> usize {
        let cells = self.ps.clone().count() * self.qs.clone().count();
        let per_scroll: usize = self.ops.iter().map(|op| if op.per_cell() { cells } else { 1 }).sum();
        self.scrolls.len() * per_scroll
    }

    pub fn estimate(&self) -> String {
        let n = self.size();
        format!(
            "{n} queries over {} scrolls, roughly {:.0} s",
            self.scrolls.len(),
            n as f64 / QUERIES_PER_SECOND
        )
    }

    fn queries(&self) -> Vec<Query> {
        let mut out = Vec::new();
        for (i, x) in self.scrolls.iter().enumerate() {
            for &op in &self.ops {
                let twists: Vec<Option<DivClass>> = if op.per_cell() {
                    self.ps
                        .clone()
                        .flat_map(|p| self.qs.clone().map(move |q| Some(DivClass::new(p, q))))
                        .collect()
                } else {
                    vec![None]
                };
                for twist in twists {
                    let inputs = json!({ "sheaf": self.sheaf, "twist": twist });
                    let key = content_key(x, op, &inputs);
                    out.push(Query {
                        scroll: i,
                        op,
                        twist,
                        inputs,
                        key,
                    });
                }
            }
        }
        out
    }
}

/// SHA-256 over the canonical JSON of `(engine, scroll, op, inputs)`.
pub fn content_key(x: &Scroll, op: Op, inputs: &Value) -> String {
    let canonical = json!([ENGINE_VERSION, x, op, inputs]).to_string();
    format!("{:x}", Sha256::digest(canonical.as_bytes()))
}

fn evaluate(ev: &Evaluator, sheaf: &SheafSpec, op: Op, twist: Option<DivClass>) -> Value {
    let t = twist.unwrap_or(DivClass::ZERO);
    let result = match op {
        Op::Cohom => ev.cohom(sheaf, t).map(|h| json!(h)),
        Op::Pqreg => {
            is_pq_regular(ev, sheaf, t.p, t.q).map(|r| json!({ "verdict": r.verdict, "failures": r.failures.len() }))
        }
        Op::Msreg => {
            is_ms_regular(ev, sheaf, t.p, t.q).map(|r| json!({ "verdict": r.verdict, "failures": r.failures.len() }))
        }
        Op::Compare => is_ms_regular(ev, sheaf, t.p, t.q)
            .and_then(|ms| Ok(json!({ "ms": ms.verdict, "pq": is_pq_regular(ev, sheaf, t.p, t.q)?.verdict }))),
        Op::Reg => reg(ev, sheaf, None).map(|r| json!(r)),
        Op::SplittingO | Op::SplittingOfh | Op::Indecomposable => {
            let theorem = match op {
                Op::SplittingO => TheoremId::SplittingO,
                Op::SplittingOfh => TheoremId::SplittingOfh,
                _ => TheoremId::Indecomposable,
            };
            check(ev, sheaf, theorem).map(|r| {
                json!({ "verdict": r.verdict, "witnesses": r.witnesses.len(), "conclusion": r.classification.and_then(|c| c.conclusion) })
            })
        }
    };
    result.unwrap_or_else(|e| json!({ "error": e.to_string() }))
}

/// `(result, flag)` cells of the CSV row.
fn summarize(op: Op, result: &Value) -> (String, String) {
    if let Some(e) = result.get("error").and_then(Value::as_str) {
        return (e.to_string(), "error".into());
    }
    match op {
        Op::Cohom => {
            let h: Vec<String> = result["h"].as_array().into_iter().flatten().map(render).collect();
            (h.join(" "), String::new())
        }
        Op::Pqreg | Op::Msreg | Op::SplittingO | Op::SplittingOfh => (render(&result["verdict"]), String::new()),
        Op::Indecomposable => {
            let concluded = match &result["conclusion"] {
                Value::Null => String::new(),
                c => serde_json::from_value::<SheafSpec>(c.clone())
                    .map(|s| s.to_string())
                    .unwrap_or_default(),
            };
            (render(&result["verdict"]), concluded)
        }
        Op::Compare => {
            let (ms, pq) = (
                result["ms"].as_bool() == Some(true),
                result["pq"].as_bool() == Some(true),
            );
            let flag = match (ms, pq) {
                (true, false) => "violation",
                (false, true) => "separation",
                _ => "",
            };
            (format!("ms={ms} pq={pq}"), flag.into())
        }
        Op::Reg => match &result["reg"] {
            Value::Null => ("-inf".into(), String::new()),
            r => {
                let flag = if result["monotonicity_verified"].as_bool() == Some(true) {
                    ""
                } else {
                    "unverified-monotonicity"
                };
                (render(r), flag.into())
            }
        },
    }
}

fn render(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

/// Cached records keyed by content hash; the first occurrence of a key wins.
fn load(path: &Path) -> io::Result<HashMap<String, Value>> {
    let mut cache = HashMap::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
        Err(e) => return Err(e),
    };
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: QueryRecord = serde_json::from_str(&line).map_err(|e| {
            io::Error::new(
                io::ErrorKind::InvalidData,
                format!("{}:{}: {e}", path.display(), lineno + 1),
            )
        })?;
        cache.entry(rec.key).or_insert(rec.result);
    }
    Ok(cache)
}

pub struct Outcome {
    pub computed: usize,
    pub cached: usize,
}

/// Runs the plan, appending fresh records to `cache_dir/records.jsonl` (when
/// given) and writing the CSV table to `out`.
pub fn run(plan: &Plan, cache_dir: Option<&PathBuf>, out: &mut dyn Write) -> io::Result<Outcome> {
    let records_path = cache_dir.map(|d| d.join("records.jsonl"));
    let cache = match &records_path {
        Some(p) => load(p)?,
        None => HashMap::new(),
    };
    let queries = plan.queries();
    let evaluators: Vec<Evaluator> = plan.scrolls.iter().cloned().map(Evaluator::new).collect();

    let fresh: Vec<Option<QueryRecord>> = queries
        .par_iter()
        .map(|q| {
            if cache.contains_key(&q.key) {
                return None;
            }
            let start = Instant::now();
            let result = evaluate(&evaluators[q.scroll], &plan.sheaf, q.op, q.twist);
            Some(QueryRecord {
                key: q.key.clone(),
                scroll: plan.scrolls[q.scroll].clone(),
                operation: q.op,
                inputs: q.inputs.clone(),
                result,
                engine: ENGINE_VERSION.into(),
                wall_ms: start.elapsed().as_secs_f64() * 1e3,
            })
        })
        .collect();

    // single writer, canonical order
    let mut computed = 0;
    if let Some(path) = &records_path {
        fs::create_dir_all(path.parent().expect("joined path has a parent"))?;
        let mut w = BufWriter::new(OpenOptions::new().create(true).append(true).open(path)?);
        let mut seen = std::collections::HashSet::new();
        for rec in fresh.iter().flatten() {
            if seen.insert(&rec.key) {
                serde_json::to_writer(&mut w, rec)?;
                w.write_all(b"\n")?;
            }
        }
        w.flush()?;
    }

    writeln!(out, "{SCHEMA}")?;
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(COLUMNS)?;
    let sheaf = plan.sheaf.to_string();
    for (q, rec) in queries.iter().zip(&fresh) {
        let result = match rec {
            Some(r) => {
                computed += 1;
                &r.result
            }
            None => &cache[&q.key],
        };
        let (value, flag) = summarize(q.op, result);
        let (p, qq) = q
            .twist
            .map_or((String::new(), String::new()), |t| (t.p.to_string(), t.q.to_string()));
        csv.write_record([
            plan.scrolls[q.scroll].to_string(),
            sheaf.clone(),
            q.op.name(),
            p,
            qq,
            value,
            flag,
        ])?;
    }
    csv.flush()?;
    Ok(Outcome {
        computed,
        cached: queries.len() - computed,
    })
}
