//! The `lef` command line.
//!
//! Every command writes one JSON document to standard output (or `--output`)
//! and diagnostics to standard error. Exit codes: 0 success (a completed
//! search without a witness is a success), 1 a `verify` check failed,
//! 2 invalid input, 3 a budget or resource limit was hit.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abelian::{self, CONSTRUCTION};
use crate::error::{Error, Result};
use crate::fpgroups::{
    ball_image_with_cap, check_relators, lef_quotient_search_with_cap, GeneratorImages,
    Presentation, QuotientOutcome, TargetFamily,
};
use crate::groups::{Element, Group};
use crate::partial::{extract_table, verify_local_embedding, Assignment, PartialGroupTable};
use crate::search::{
    single_target, sweep, sweep_cyclic, sweep_symmetric, CertificateOutcome, SearchBudget,
    SweepOutcome,
};
use crate::words::{ball_size, ball_with_cap, Alphabet, DEFAULT_BALL_CAP};
use crate::SCHEMA;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "lef",
    version,
    about = "Local embeddings of finite subsets of groups into finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cyclic,
    Symmetric,
    Cayley,
}

#[derive(Debug, clap::Args)]
pub struct BudgetArgs {
    #[arg(long = "max-m")]
    pub max_m: Option<u64>,
    #[arg(long = "max-n")]
    pub max_n: Option<usize>,
    #[arg(long = "node-limit")]
    pub node_limit: Option<u64>,
    /// Seconds.
    #[arg(long = "time-limit")]
    pub time_limit: Option<f64>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget> {
        let mut b = SearchBudget::default();
        if let Some(m) = self.max_m {
            b.max_cyclic_m = m;
        }
        if let Some(n) = self.max_n {
            b.max_symmetric_n = n;
        }
        if let Some(n) = self.node_limit {
            b.node_limit = n;
        }
        if let Some(t) = self.time_limit {
            b.time_limit = Duration::try_from_secs_f64(t)
                .map_err(|_| Error::InvalidInput(format!("bad time limit {t}")))?;
        }
        b.validate()?;
        Ok(b)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Partial multiplication table of a finite subset.
    Extract {
        /// Backend spec (inline JSON or file); defaults to the integers.
        #[arg(long)]
        group: Option<String>,
        /// JSON array of elements (inline or file).
        #[arg(long)]
        subset: String,
    },
    /// Re-check a JSON artifact produced by another command.
    Verify {
        /// Artifact (inline JSON or file).
        input: String,
        /// Table the artifact refers to, when it is a witness, assignment or certificate.
        #[arg(long)]
        table: Option<String>,
    },
    /// Closed-form mod-m witness for a subset of an abelian backend.
    WitnessAbelian {
        #[arg(long)]
        subset: String,
        /// Defaults to the integers.
        #[arg(long)]
        group: Option<String>,
    },
    /// Search for a local embedding of a table into finite targets.
    Search {
        #[arg(long)]
        table: String,
        #[arg(long, value_enum)]
        family: Option<Family>,
        /// Single finite target; required for `--family cayley`.
        #[arg(long)]
        group: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Closed ball of the free group.
    Ball {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        radius: usize,
        #[arg(long = "count-only")]
        count_only: bool,
    },
    /// Finite quotients of a presentation and their free-ball images.
    Quotient {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        radius: Option<usize>,
        /// Search family; both cyclic and symmetric when omitted.
        #[arg(long, value_enum)]
        family: Option<Family>,
        /// Evaluate fixed generator images in this target instead of searching.
        #[arg(long)]
        group: Option<String>,
        /// JSON array of generator images, used with `--group`.
        #[arg(long)]
        images: Option<String>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// Outcome of one command: a JSON document and an exit code.
#[derive(Debug)]
pub struct Response {
    pub body: Value,
    pub code: i32,
}

impl Response {
    fn ok(body: Value) -> Self {
        Response {
            body,
            code: EXIT_OK,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::ResourceLimit(_) => EXIT_LIMIT,
        _ => EXIT_INVALID,
    }
}

fn ball_cap() -> Result<usize> {
    match std::env::var("LEFKIT_BALL_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("LEFKIT_BALL_CAP=`{v}` is not an integer"))),
        Err(_) => Ok(DEFAULT_BALL_CAP),
    }
}

/// Read an argument that is either a path to an existing file or inline JSON.
fn load_json(arg: &str) -> Result<Value> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {arg}: {e}")))?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| {
        Error::InvalidInput(format!(
            "`{arg}` is neither a readable file nor valid JSON: {e}"
        ))
    })
}

fn load_group(arg: Option<&str>) -> Result<Group> {
    match arg {
        Some(a) => Ok(serde_json::from_value(load_json(a)?)?),
        None => Ok(Group::integers()),
    }
}

fn load_elements(group: &Group, arg: &str) -> Result<Vec<Element>> {
    match load_json(arg)? {
        Value::Array(xs) => xs.iter().map(|x| group.element_from_json(x)).collect(),
        _ => Err(Error::InvalidInput("subset must be a JSON array".into())),
    }
}

fn load_table(arg: &str) -> Result<PartialGroupTable> {
    Ok(serde_json::from_value(load_json(arg)?)?)
}

fn witness_json(outcome: &SweepOutcome, table: &PartialGroupTable) -> Value {
    let mut v = outcome.to_json();
    if outcome.witness().is_some() {
        v["table_digest"] = Value::from(table.digest());
    }
    v
}

pub fn run(cli: &Cli) -> Result<Response> {
    match &cli.command {
        Command::Extract { group, subset } => {
            let group = load_group(group.as_deref())?;
            let subset = load_elements(&group, subset)?;
            let table = extract_table(&group, &subset)?;
            Ok(Response::ok(serde_json::to_value(&table)?))
        }
        Command::WitnessAbelian { subset, group } => {
            let group = load_group(group.as_deref())?;
            let elements = load_elements(&group, subset)?;
            let witness = abelian::witness_for(&group, &elements)?;
            let table = extract_table(&group, &elements)?;
            let mut v = witness.to_json();
            v["table_digest"] = Value::from(table.digest());
            v["source"] = json!({
                "group": group.spec(),
                "subset": elements.iter().map(|e| group.element_to_json(e)).collect::<Vec<_>>(),
            });
            Ok(Response::ok(v))
        }
        Command::Search {
            table,
            family,
            group,
            budget,
        } => {
            let table = load_table(table)?;
            let budget = budget.budget()?;
            let outcome = match (family, group) {
                (Some(Family::Cayley) | None, Some(g)) => {
                    let target = load_group(Some(g))?;
                    single_target(&table, &target, &budget)?
                }
                (Some(Family::Cayley), None) => {
                    return Err(Error::InvalidInput("--family cayley needs --group".into()))
                }
                (Some(Family::Symmetric), _) => sweep_symmetric(&table, &budget)?,
                (Some(Family::Cyclic) | None, _) => sweep_cyclic(&table, &budget)?,
            };
            let code = match &outcome {
                SweepOutcome::Certificate(c) if c.outcome == CertificateOutcome::BudgetExceeded => {
                    EXIT_LIMIT
                }
                _ => EXIT_OK,
            };
            Ok(Response {
                body: witness_json(&outcome, &table),
                code,
            })
        }
        Command::Ball {
            rank,
            radius,
            count_only,
        } => {
            let alphabet = Alphabet::new(*rank)?;
            let cap = ball_cap()?;
            if *count_only {
                if *radius > cap {
                    return Err(Error::ResourceLimit(format!(
                        "ball radius {radius} exceeds cap {cap}"
                    )));
                }
                let count = ball_size(*rank, *radius)
                    .ok_or_else(|| Error::ResourceLimit("ball size overflows".into()))?;
                return Ok(Response::ok(json!({
                    "schema": SCHEMA,
                    "rank": rank,
                    "radius": radius,
                    "count": count,
                })));
            }
            let ball = ball_with_cap(alphabet, *radius, cap)?;
            Ok(Response::ok(json!({
                "schema": SCHEMA,
                "rank": rank,
                "radius": radius,
                "count": ball.len(),
                "members": ball.members().iter().map(ToString::to_string).collect::<Vec<_>>(),
            })))
        }
        Command::Quotient {
            presentation,
            radius,
            family,
            group,
            images,
            budget,
        } => {
            let p: Presentation = serde_json::from_value(load_json(presentation)?)?;
            let radius = radius.unwrap_or_else(|| crate::fpgroups::min_radius(&p));
            let cap = ball_cap()?;
            for i in p.redundant_relators() {
                eprintln!("warning: relator {i} is the empty word");
            }
            match (group, images) {
                (Some(g), Some(imgs)) => {
                    let target = load_group(Some(g))?;
                    let gi = GeneratorImages::from_json(target, &load_json(imgs)?)?;
                    let report = ball_image_with_cap(&p, &gi, radius, cap)?;
                    let relators = check_relators(&p, &gi)?;
                    Ok(Response::ok(json!({
                        "schema": SCHEMA,
                        "outcome": "evaluated",
                        "presentation": p,
                        "target": gi.target().spec(),
                        "images": gi.image_json(),
                        "first_failing_relator": relators.first_failing,
                        "report": report.to_json(),
                    })))
                }
                (None, None) => {
                    let families: Vec<TargetFamily> = match family {
                        Some(Family::Cyclic) => vec![TargetFamily::Cyclic],
                        Some(Family::Symmetric) => vec![TargetFamily::Symmetric],
                        Some(Family::Cayley) => {
                            return Err(Error::InvalidInput(
                                "use --group and --images to evaluate a Cayley target".into(),
                            ))
                        }
                        None => vec![TargetFamily::Cyclic, TargetFamily::Symmetric],
                    };
                    let budget = budget.budget()?;
                    let outcome =
                        lef_quotient_search_with_cap(&p, radius, &families, &budget, cap)?;
                    let stopped = match &outcome {
                        QuotientOutcome::Found(r) => !r.exhaustive,
                        QuotientOutcome::NoQuotientFound { exhaustive, .. } => !exhaustive,
                    };
                    if let QuotientOutcome::Found(r) = &outcome {
                        for w in &r.warnings {
                            eprintln!("warning: {w}");
                        }
                    }
                    Ok(Response {
                        body: outcome.to_json(&p),
                        code: if stopped { EXIT_LIMIT } else { EXIT_OK },
                    })
                }
                _ => Err(Error::InvalidInput(
                    "--group and --images must be given together".into(),
                )),
            }
        }
        Command::Verify { input, table } => verify(&load_json(input)?, table.as_deref()),
    }
}

fn verdict(artifact: &str, valid: bool, mut details: Value) -> Response {
    details["schema"] = Value::from(SCHEMA);
    details["artifact"] = Value::from(artifact);
    details["valid"] = Value::from(valid);
    Response {
        body: details,
        code: if valid { EXIT_OK } else { EXIT_CHECK_FAILED },
    }
}

fn need_table(table: Option<&str>, what: &str) -> Result<PartialGroupTable> {
    match table {
        Some(t) => load_table(t),
        None => Err(Error::InvalidInput(format!(
            "verifying a {what} needs --table"
        ))),
    }
}

fn verify(v: &Value, table: Option<&str>) -> Result<Response> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::InvalidInput("artifact must be a JSON object".into()))?;
    crate::check_schema(obj.get("schema").and_then(Value::as_str))?;

    if obj.contains_key("triples") {
        let t: PartialGroupTable = serde_json::from_value(v.clone())?;
        return Ok(verdict(
            "table",
            true,
            json!({ "table_digest": t.digest() }),
        ));
    }

    if obj.contains_key("count") {
        let rank = obj.get("rank").and_then(Value::as_u64);
        let radius = obj.get("radius").and_then(Value::as_u64);
        let (Some(rank), Some(radius)) = (rank, radius) else {
            return Err(Error::InvalidInput(
                "ball artifact lacks rank or radius".into(),
            ));
        };
        let expected = ball_size(rank as usize, radius as usize);
        let mut valid = expected.is_some() && obj["count"].as_u64() == expected;
        if let Some(members) = obj.get("members") {
            let ball = ball_with_cap(Alphabet::new(rank as usize)?, radius as usize, ball_cap()?)?;
            let want: Vec<String> = ball.members().iter().map(ToString::to_string).collect();
            valid &= *members == json!(want);
        }
        return Ok(verdict(
            "ball",
            valid,
            json!({ "expected_count": expected }),
        ));
    }

    if let Some(p) = obj.get("presentation") {
        let p: Presentation = serde_json::from_value(p.clone())?;
        let (Some(target), Some(images), Some(report)) =
            (obj.get("target"), obj.get("images"), obj.get("report"))
        else {
            // a no-quotient-found outcome carries nothing to re-evaluate
            return Ok(verdict("quotient", true, json!({})));
        };
        let target: Group = serde_json::from_value(target.clone())?;
        let gi = GeneratorImages::from_json(target, images)?;
        let radius = report
            .get("radius")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidInput("report lacks radius".into()))?;
        let recomputed = ball_image_with_cap(&p, &gi, radius as usize, ball_cap()?)?;
        let valid = recomputed.to_json() == *report;
        return Ok(verdict(
            "quotient",
            valid,
            json!({ "report": recomputed.to_json() }),
        ));
    }

    if obj.contains_key("outcome") && obj.contains_key("targets") {
        let table = need_table(table, "certificate")?;
        let digest_ok = obj.get("table_digest") == Some(&Value::from(table.digest()));
        let budget: SearchBudget = serde_json::from_value(
            obj.get("budget")
                .cloned()
                .ok_or_else(|| Error::InvalidInput("certificate lacks budget".into()))?,
        )?;
        let targets: Vec<Group> = serde_json::from_value(obj["targets"].clone())?;
        let rerun = sweep(&table, targets.into_iter().map(Ok), &budget)?.to_json();
        let timed_out = obj.get("limit") == Some(&Value::from("time"));
        let same = if timed_out {
            rerun.get("outcome") == obj.get("outcome")
        } else {
            rerun == *v
        };
        return Ok(verdict(
            "certificate",
            digest_ok && same,
            json!({ "digest_matches": digest_ok, "rerun_matches": same }),
        ));
    }

    if obj.contains_key("images") && obj.contains_key("target") {
        let assignment = Assignment::from_json(v)?;
        let (table, kind) = match (obj.get("construction"), obj.get("source")) {
            (Some(c), Some(source)) if c == CONSTRUCTION => {
                let group: Group = serde_json::from_value(source["group"].clone())?;
                let subset = source["subset"]
                    .as_array()
                    .ok_or_else(|| Error::InvalidInput("source lacks subset".into()))?
                    .iter()
                    .map(|x| group.element_from_json(x))
                    .collect::<Result<Vec<_>>>()?;
                (extract_table(&group, &subset)?, "abelian-witness")
            }
            _ => (need_table(table, "witness")?, "witness"),
        };
        let digest_ok = obj
            .get("table_digest")
            .is_none_or(|d| d.as_str() == Some(table.digest().as_str()));
        let report = verify_local_embedding(&table, &assignment.target, &assignment.images)?;
        let valid = digest_ok && report.is_local_embedding();
        return Ok(verdict(
            kind,
            valid,
            json!({ "digest_matches": digest_ok, "report": report }),
        ));
    }

    Err(Error::InvalidInput("unrecognised artifact".into()))
}

/// Parse, run, print. Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(resp) => {
            let mut text = serde_json::to_string_pretty(&resp.body).expect("json value");
            text.push('\n');
            let written = match &cli.output {
                Some(path) => std::fs::write(path, text),
                None => {
                    use std::io::Write;
                    std::io::stdout().write_all(text.as_bytes())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return EXIT_CHECK_FAILED;
            }
            resp.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
