//! The `kpq` command line.
//!
//! Every command prints one JSON [`CommandReport`] to standard output.
//! Exit codes: 0 success, 1 violation or failed check, 2 bad input,
//! 3 search budget exhausted.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use indexmap::IndexMap;
use serde::Serialize;
use serde_json::{json, Value};

use crate::drawing::{read_drawing, write_drawing};
use crate::duplication::{dipole_min_crossings, zarankiewicz_drawing};
use crate::enumeration::{
    crossing_number, enumerate_good_drawings, genus_search, EnumerationBudget, SearchOutcome,
};
use crate::surface::{bipartite_euler_bound, kmn_demigenus, kmn_genus, Surface};
use crate::theorems::{rebuild, reduce_to_base, zarankiewicz_number, zp};

#[derive(Debug, Parser)]
#[command(
    name = "kpq",
    version,
    about = "Good drawings of complete bipartite graphs on surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, clap::Args)]
pub struct BudgetArgs {
    /// Largest number of crossings to try.
    #[arg(long, default_value_t = 6)]
    pub max_k: usize,
    #[arg(long, default_value_t = 60)]
    pub timeout_s: u64,
    /// Worker threads for searches (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
}

impl BudgetArgs {
    fn budget(&self) -> EnumerationBudget {
        EnumerationBudget {
            max_crossings: self.max_k,
            max_seconds: self.timeout_s,
            parallelism: self.workers,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the Zarankiewicz drawing of K_{p,q}.
    Gen {
        p: usize,
        q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a drawing file for goodness and trace its surface.
    Verify { path: PathBuf },
    /// Exact crossing number of K_{p,q} in a surface.
    Cross {
        p: usize,
        q: usize,
        #[arg(long, default_value = "S0")]
        surface: Surface,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Enumerate good drawings up to isomorphism, for k = 0..=max-k.
    Enum {
        p: usize,
        q: usize,
        #[arg(long, default_value = "S0")]
        surface: Surface,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Directory for drawing files and manifest.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum genus (or crosscap number) of K_{m,n} by search.
    Genus {
        m: usize,
        n: usize,
        #[arg(long)]
        non_orientable: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Delete heavy q-side vertices down to a floor, then rebuild.
    Reduce {
        path: PathBuf,
        #[arg(long, default_value_t = 2)]
        floor: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fewest crossings of a dipole with m edges and equal end rotations.
    Dipole {
        m: usize,
        #[arg(long, default_value_t = 6)]
        max_k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
    Unknown,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
            Status::Unknown => 3,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandReport {
    pub command: String,
    pub inputs: IndexMap<String, Value>,
    pub outputs: Vec<String>,
    pub results: IndexMap<String, Value>,
    pub status: Status,
    pub elapsed_ms: u64,
}

impl CommandReport {
    fn new(command: &str) -> Self {
        CommandReport {
            command: command.to_string(),
            inputs: IndexMap::new(),
            outputs: Vec::new(),
            results: IndexMap::new(),
            status: Status::Ok,
            elapsed_ms: 0,
        }
    }

    fn input(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.inputs.insert(key.to_string(), json!(value));
        self
    }

    fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results.insert(key.to_string(), json!(value));
        self
    }

    fn fail(&mut self, status: Status, message: impl ToString) {
        self.status = status;
        self.result("error", message.to_string());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

fn outcome(report: &mut CommandReport, key: &str, o: SearchOutcome) {
    match o {
        SearchOutcome::Found(k) => report.result(key, k),
        SearchOutcome::Unknown => {
            report.status = Status::Unknown;
            report.result(key, Value::Null)
        }
    };
}

fn write_file(report: &mut CommandReport, path: &Path, text: &str) {
    match std::fs::write(path, text) {
        Ok(()) => report.outputs.push(path.display().to_string()),
        Err(e) => report.fail(Status::Error, format!("{}: {e}", path.display())),
    }
}

fn gen(p: usize, q: usize, out: Option<PathBuf>) -> CommandReport {
    let mut r = CommandReport::new("gen");
    r.input("p", p).input("q", q);
    match zarankiewicz_drawing(p, q) {
        Ok(d) => {
            r.result("crn", d.crn())
                .result("zarankiewicz", zarankiewicz_number(p, q));
            if let Some(path) = out {
                match write_drawing(&path, &d) {
                    Ok(()) => r.outputs.push(path.display().to_string()),
                    Err(e) => r.fail(Status::Error, e),
                }
            }
        }
        Err(e) => r.fail(Status::Error, e),
    }
    r
}

fn verify(path: PathBuf) -> CommandReport {
    let mut r = CommandReport::new("verify");
    r.input("path", path.display().to_string());
    let d = match read_drawing(&path) {
        Ok(d) => d,
        Err(e) => {
            r.fail(Status::Error, e);
            return r;
        }
    };
    let violations = d.validate_good();
    r.result("p", d.p())
        .result("q", d.q())
        .result("crn", d.crn());
    r.result(
        "violations",
        violations
            .iter()
            .map(|v| json!({"kind": v.kind(), "detail": v.to_string()}))
            .collect::<Vec<_>>(),
    );
    if !violations.is_empty() {
        r.status = Status::Violation;
        return r;
    }
    let trace = d.trace_faces().expect("validated drawings trace");
    let realized = d.realized_surface().expect("validated drawings trace");
    let embeds = d.embeds_in(d.surface).expect("validated drawings trace");
    r.result("euler_characteristic", trace.euler_characteristic)
        .result("faces", trace.faces.len())
        .result("realized_surface", realized)
        .result("claimed_surface", d.surface)
        .result("embeds_in", embeds);
    if !embeds {
        r.status = Status::Violation;
    }
    r
}

fn cross(p: usize, q: usize, surface: Surface, b: &BudgetArgs) -> CommandReport {
    let mut r = CommandReport::new("cross");
    r.input("p", p)
        .input("q", q)
        .input("surface", surface)
        .input("max_k", b.max_k)
        .input("timeout_s", b.timeout_s);
    outcome(
        &mut r,
        "crossing_number",
        crossing_number(p, q, surface, &b.budget()),
    );
    if surface == Surface::SPHERE {
        r.result("zarankiewicz", zarankiewicz_number(p, q));
    }
    r
}

fn enumerate(
    p: usize,
    q: usize,
    surface: Surface,
    b: &BudgetArgs,
    out: Option<PathBuf>,
) -> CommandReport {
    let mut r = CommandReport::new("enum");
    r.input("p", p)
        .input("q", q)
        .input("surface", surface)
        .input("max_k", b.max_k)
        .input("timeout_s", b.timeout_s);
    let started = Instant::now();
    let mut per_k = Vec::new();
    let mut all = Vec::new();
    for k in 0..=b.max_k {
        let remaining = b.timeout_s.saturating_sub(started.elapsed().as_secs());
        let budget = EnumerationBudget {
            max_seconds: remaining,
            ..b.budget()
        };
        let e = enumerate_good_drawings(p, q, surface, k, &budget);
        per_k.push(json!({
            "k": k,
            "classes": e.drawings.len(),
            "configs": e.configs,
            "schemes": e.schemes.to_string(),
            "partial": e.partial,
        }));
        let partial = e.partial;
        all.extend(e.drawings.into_iter().map(|(key, d)| (k, key, d)));
        if partial {
            r.status = Status::Unknown;
            break;
        }
    }
    r.result("counts", &per_k);
    if let Some(dir) = out {
        if let Err(e) = std::fs::create_dir_all(&dir) {
            r.fail(Status::Error, format!("{}: {e}", dir.display()));
            return r;
        }
        let mut files = Vec::new();
        for (i, (k, key, d)) in all.iter().enumerate() {
            let name = format!("k{k}_{i:05}.json");
            write_file(&mut r, &dir.join(&name), &d.to_json());
            files.push(json!({"file": name, "k": k, "key": key.to_hex()}));
        }
        let manifest = json!({
            "p": p,
            "q": q,
            "surface": surface,
            "budget": {"max_k": b.max_k, "timeout_s": b.timeout_s, "workers": b.workers},
            "status": r.status,
            "elapsed_ms": started.elapsed().as_millis() as u64,
            "counts": per_k,
            "drawings": files,
        });
        let text =
            serde_json::to_string_pretty(&manifest).expect("manifests always serialize") + "\n";
        write_file(&mut r, &dir.join("manifest.json"), &text);
    }
    r
}

fn genus(m: usize, n: usize, non_orientable: bool, b: &BudgetArgs) -> CommandReport {
    let mut r = CommandReport::new("genus");
    r.input("m", m)
        .input("n", n)
        .input("non_orientable", non_orientable)
        .input("timeout_s", b.timeout_s);
    let formula = if non_orientable {
        kmn_demigenus(m as u32, n as u32)
    } else {
        kmn_genus(m as u32, n as u32)
    }
    .ok();
    let found = genus_search(m, n, non_orientable, &b.budget());
    outcome(&mut r, "search", found);
    r.result("formula", formula).result(
        "euler_bound",
        bipartite_euler_bound((m + n) as u64, (m * n) as u64),
    );
    if let (SearchOutcome::Found(s), Some(f)) = (found, formula) {
        if s != f as usize {
            r.status = Status::Violation;
        }
    }
    r
}

fn reduce(path: PathBuf, floor: usize, out: Option<PathBuf>) -> CommandReport {
    let mut r = CommandReport::new("reduce");
    r.input("path", path.display().to_string())
        .input("floor", floor);
    let d = match read_drawing(&path) {
        Ok(d) => d,
        Err(e) => {
            r.fail(Status::Error, e);
            return r;
        }
    };
    let trace = match reduce_to_base(&d, floor) {
        Ok(t) => t,
        Err(e) => {
            r.fail(Status::Violation, e);
            return r;
        }
    };
    let rebuilt = match rebuild(&trace) {
        Ok(d) => d,
        Err(e) => {
            r.fail(Status::Error, e);
            return r;
        }
    };
    r.result("threshold", trace.threshold)
        .result("deletions", &trace.deletions)
        .result("base_q", trace.base.q())
        .result("reached_floor", trace.reached_floor())
        .result("crn_original", trace.crn_original())
        .result("crn_base", trace.base.crn())
        .result("crn_rebuilt", rebuilt.crn());
    let verdict = match rebuilt.crn().cmp(&trace.crn_original()) {
        std::cmp::Ordering::Less => "decreased",
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Greater => "increased",
    };
    r.result("verdict", verdict);
    if rebuilt.crn() > trace.crn_original() {
        r.status = Status::Violation;
    }
    if let Some(path) = out {
        match write_drawing(&path, &rebuilt) {
            Ok(()) => r.outputs.push(path.display().to_string()),
            Err(e) => r.fail(Status::Error, e),
        }
    }
    r
}

fn dipole(m: usize, max_k: usize) -> CommandReport {
    let mut r = CommandReport::new("dipole");
    r.input("m", m).input("max_k", max_k);
    match dipole_min_crossings(m, max_k) {
        Ok(found) => {
            r.result("min_crossings", found).result("zp", zp(m));
            match found {
                None => r.status = Status::Unknown,
                Some(k) if k != zp(m) => r.status = Status::Violation,
                Some(_) => {}
            }
        }
        Err(e) => r.fail(Status::Error, e),
    }
    r
}

pub fn run(cli: Cli) -> CommandReport {
    let started = Instant::now();
    let mut report = match cli.command {
        Command::Gen { p, q, out } => gen(p, q, out),
        Command::Verify { path } => verify(path),
        Command::Cross {
            p,
            q,
            surface,
            budget,
        } => cross(p, q, surface, &budget),
        Command::Enum {
            p,
            q,
            surface,
            budget,
            out,
        } => enumerate(p, q, surface, &budget, out),
        Command::Genus {
            m,
            n,
            non_orientable,
            budget,
        } => genus(m, n, non_orientable, &budget),
        Command::Reduce { path, floor, out } => reduce(path, floor, out),
        Command::Dipole { m, max_k } => dipole(m, max_k),
    };
    report.elapsed_ms = started.elapsed().as_millis() as u64;
    report
}

/// Parses `args`, runs the command, prints the report and returns the
/// process exit code.
pub fn main_with_args(args: impl IntoIterator<Item = impl Into<OsString> + Clone>) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                Status::Error.exit_code()
            } else {
                0
            };
            let _ = e.print();
            return code;
        }
    };
    let report = run(cli);
    println!("{}", report.to_json());
    report.status.exit_code()
}
