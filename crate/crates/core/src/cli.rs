//! The `tamequot` command line. Every invocation runs a single job described
//! either by flags or by a JSON [`JobSpec`], and prints one JSON document.
//!
//! Exit codes: 0 on success, 2 on invalid input, 1 on internal failure
//! (including a sweep with failing cases).

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::action::{diagonalize, TameEndomorphism, WeightSystem};
use crate::algebra::series::coordinate_names;
use crate::algebra::{parse_series, PrimeField, RingEndomorphism, Series, TruncatedLocalRing, DEFAULT_TRUNCATION};
use crate::count::{brute_force_model_counts, count_points_presented, count_points_stratified, CountReport};
use crate::error::Error;
use crate::fiber::{fixed_locus_json, section_through_fixed_point, special_fiber_presentation, StratifiedModel};
use crate::invariant::{
    connectivity_certificate, generation_certificate, quotient_presentation_to_degree, DEFAULT_RELATION_DEGREE,
};
use crate::motivic::{
    check_serre_theorem, check_volume_congruence, class_of_fixed_locus, class_of_special_fiber,
    class_of_weak_neron_fiber,
};
use crate::sweep::{run_sweep, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

const DEFAULT_SWEEP_TRIALS: usize = 100;

#[derive(Parser, Debug)]
#[command(name = "tamequot", version, about = "Quotients of diagonal tame cyclic actions over F_p[[t]]")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Read the job from a JSON document: inline, a file path, or `-` for stdin.
    #[arg(long, value_name = "JOB")]
    json: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Hilbert basis and binomial relations of the invariant ring.
    Quotient(JobArgs),
    /// Components of the fixed locus of a model.
    FixedLocus(JobArgs),
    /// Monomial presentation of the special-fiber algebra, or model classes with --model.
    SpecialFiber(JobArgs),
    /// Compare the Serre invariants of the weak Néron fiber and the fixed locus.
    Serre(JobArgs),
    /// Rational volume congruence for a q-group action.
    Volume(JobArgs),
    /// Exact eigenparameters of a tame local endomorphism.
    Diagonalize(JobArgs),
    /// Section of the quotient through a fixed point.
    Section(JobArgs),
    /// Brute-force point count of a presentation or model.
    Count(JobArgs),
    /// Seeded randomized theorem checks.
    Sweep(JobArgs),
}

#[derive(Args, Debug, Default)]
struct JobArgs {
    /// Group order.
    #[arg(long)]
    r: Option<u64>,
    /// Comma-separated weights, the uniformizer's first.
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u64>>,
    /// Factors such as `affine:1,projective:2`.
    #[arg(long)]
    model: Option<String>,
    /// Characteristic of the residue field.
    #[arg(long)]
    p: Option<u64>,
    /// Jet truncation order N.
    #[arg(long)]
    trunc: Option<u32>,
    /// Degree bound for relations and certificates.
    #[arg(long)]
    degree: Option<u32>,
    /// Prime for counts and volume congruences.
    #[arg(long)]
    q: Option<u64>,
    /// Sweep seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Trials per sweep suite (default 100).
    #[arg(long)]
    trials: Option<usize>,
    /// Semicolon-separated images of the variables.
    #[arg(long)]
    images: Option<String>,
    /// Comma-separated variable names (default `t, x` or `t, x1, ..`).
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    /// Pinned parameter `expr@weight`; repeatable.
    #[arg(long)]
    pin: Vec<String>,
    /// Comma-separated values of the zero-weight coordinates.
    #[arg(long, value_delimiter = ',')]
    point: Option<Vec<u64>>,
    /// Comma-separated sweep suites (default: all).
    #[arg(long, value_delimiter = ',')]
    suites: Option<Vec<String>>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A job as accepted by `--json`; flags are translated into the same form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pin: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl JobSpec {
    fn from_args(command: &str, a: JobArgs) -> Self {
        JobSpec {
            command: command.to_string(),
            r: a.r,
            weights: a.weights,
            model: a.model,
            p: a.p,
            trunc: a.trunc,
            degree: a.degree,
            q: a.q,
            seed: a.seed,
            trials: a.trials,
            images: a.images.map(|s| s.split(';').map(|x| x.trim().to_string()).collect()),
            vars: a.vars,
            pin: a.pin,
            point: a.point,
            suites: a.suites,
            output: a.output,
        }
    }
}

fn missing(flag: &str) -> Error {
    Error::InvalidInput(format!("missing --{flag}"))
}

fn weight_system(job: &JobSpec) -> Result<WeightSystem, Error> {
    let r = job.r.ok_or_else(|| missing("r"))?;
    let weights = job.weights.clone().ok_or_else(|| missing("weights"))?;
    WeightSystem::new(r, weights)
}

fn model(job: &JobSpec) -> Result<StratifiedModel, Error> {
    let desc = job.model.as_deref().ok_or_else(|| missing("model"))?;
    StratifiedModel::parse(desc, weight_system(job)?)
}

fn field(job: &JobSpec) -> Result<PrimeField, Error> {
    PrimeField::new(job.p.ok_or_else(|| missing("p"))?)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn quotient(job: &JobSpec) -> Result<Value, Error> {
    let w = weight_system(job)?;
    let degree = job.degree.unwrap_or(DEFAULT_RELATION_DEGREE);
    let pres = quotient_presentation_to_degree(&w, degree)?;
    let mut out = pres.to_json();
    let generation = generation_certificate(&pres.basis, degree).is_ok();
    let connectivity = connectivity_certificate(&pres.basis, &pres.relations, pres.degree_bound).is_ok();
    out["certificates"] = json!({"generation": generation, "connectivity": connectivity});
    Ok(out)
}

fn model_classes(m: &StratifiedModel) -> Value {
    json!({
        "model": m.description(),
        "weight_system": m.weights(),
        "class_of_special_fiber": class_of_special_fiber(m),
        "class_of_fixed_locus": class_of_fixed_locus(m),
        "class_of_weak_neron_fiber": class_of_weak_neron_fiber(m),
    })
}

fn diagonalize_job(job: &JobSpec) -> Result<Value, Error> {
    let field = field(job)?;
    let r = job.r.ok_or_else(|| missing("r"))?;
    let images = job.images.as_ref().ok_or_else(|| missing("images"))?;
    if images.is_empty() {
        return Err(Error::InvalidInput("no images given".into()));
    }
    let vars = match &job.vars {
        Some(v) => v.clone(),
        None => coordinate_names(images.len() - 1),
    };
    let ring = TruncatedLocalRing::new(field, vars, job.trunc.unwrap_or(DEFAULT_TRUNCATION))?;
    let images = images
        .iter()
        .map(|s| parse_series(&ring, s))
        .collect::<Result<Vec<_>, _>>()?;
    let a = TameEndomorphism::new(RingEndomorphism::new(&ring, images)?, r)?;
    let pinned = job
        .pin
        .iter()
        .map(|spec| {
            let (expr, w) = spec
                .rsplit_once('@')
                .ok_or_else(|| Error::InvalidInput(format!("pin {spec:?} is not expr@weight")))?;
            let w: u64 = w
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad weight in pin {spec:?}")))?;
            Ok((parse_series(&ring, expr)?, w))
        })
        .collect::<Result<Vec<(Series, u64)>, Error>>()?;
    let res = diagonalize(&a, &pinned)?;
    let params: Vec<Value> = res
        .parameters
        .iter()
        .zip(res.weights.weights())
        .map(|(y, w)| json!({"weight": w, "series": y.to_string(), "terms": y.to_terms()}))
        .collect();
    Ok(json!({
        "p": field.modulus(),
        "r": r,
        "mu": res.mu,
        "variables": ring.vars(),
        "trunc": ring.trunc(),
        "weights": res.weights.weights(),
        "parameters": params,
    }))
}

fn count_job(job: &JobSpec) -> Result<Value, Error> {
    let q = job.q.ok_or_else(|| missing("q"))?;
    let report = if job.model.is_some() {
        let m = model(job)?;
        let (all, _, _) = brute_force_model_counts(&m, q)?;
        CountReport::new(q, all, Some(count_points_stratified(&m, q)?))
    } else {
        let w = weight_system(job)?;
        let pres = quotient_presentation_to_degree(&w, job.degree.unwrap_or(DEFAULT_RELATION_DEGREE))?;
        let counted = count_points_presented(&pres, q)?;
        let predicted = pres
            .relations
            .is_empty()
            .then(|| (q as i128).pow(pres.generator_count() as u32));
        CountReport::new(q, counted, predicted)
    };
    Ok(to_value(&report))
}

fn sweep_job(job: &JobSpec) -> Result<(Value, bool), Error> {
    let suites = match &job.suites {
        Some(names) => names.iter().map(|s| Suite::parse(s)).collect::<Result<Vec<_>, _>>()?,
        None => Suite::ALL.to_vec(),
    };
    let report = run_sweep(
        job.seed.unwrap_or(0),
        job.trials.unwrap_or(DEFAULT_SWEEP_TRIALS),
        &suites,
    );
    let pass = report.pass;
    Ok((to_value(&report), pass))
}

/// Runs a job; the flag is false when the job completed but reports failures.
pub fn execute(job: &JobSpec) -> Result<(Value, bool), Error> {
    let value = match job.command.as_str() {
        "quotient" => quotient(job)?,
        "fixed-locus" => {
            let m = model(job)?;
            let mut v = fixed_locus_json(&m)?;
            v["class"] = to_value(&class_of_fixed_locus(&m));
            v
        }
        "special-fiber" => match job.model {
            Some(_) => model_classes(&model(job)?),
            None => special_fiber_presentation(&weight_system(job)?).to_json(),
        },
        "serre" => to_value(&check_serre_theorem(&model(job)?)),
        "volume" => {
            let q = job.q.ok_or_else(|| missing("q"))?;
            to_value(&check_volume_congruence(&model(job)?, q)?)
        }
        "diagonalize" => diagonalize_job(job)?,
        "section" => {
            let w = weight_system(job)?;
            let pres = quotient_presentation_to_degree(&w, job.degree.unwrap_or(DEFAULT_RELATION_DEGREE))?;
            let point = job.point.clone().unwrap_or_default();
            section_through_fixed_point(&pres, field(job)?, &point)?.to_json()
        }
        "count" => count_job(job)?,
        "sweep" => return sweep_job(job),
        other => return Err(Error::InvalidInput(format!("unknown command {other:?}"))),
    };
    Ok((value, true))
}

fn error_json(name: &str, message: &str) -> String {
    let mut s = json!({"error": name, "message": message}).to_string();
    s.push('\n');
    s
}

fn read_job(source: &str) -> Result<JobSpec, String> {
    let text = if source.trim_start().starts_with('{') {
        source.to_string()
    } else if source == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| e.to_string())?
    } else {
        std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?
    };
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

/// Parses `argv` (program name first), runs the job and returns the exit
/// code with the text destined for standard output.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    (EXIT_OK, e.to_string())
                }
                _ => (EXIT_INVALID, error_json("UsageError", e.to_string().trim_end())),
            };
        }
    };
    let job = match (cli.command, cli.json) {
        (None, Some(src)) => match read_job(&src) {
            Ok(job) => job,
            Err(msg) => return (EXIT_INVALID, error_json("InvalidJobSpec", &msg)),
        },
        (Some(cmd), None) => {
            let (name, args) = match cmd {
                Command::Quotient(a) => ("quotient", a),
                Command::FixedLocus(a) => ("fixed-locus", a),
                Command::SpecialFiber(a) => ("special-fiber", a),
                Command::Serre(a) => ("serre", a),
                Command::Volume(a) => ("volume", a),
                Command::Diagonalize(a) => ("diagonalize", a),
                Command::Section(a) => ("section", a),
                Command::Count(a) => ("count", a),
                Command::Sweep(a) => ("sweep", a),
            };
            JobSpec::from_args(name, args)
        }
        (Some(_), Some(_)) => {
            return (EXIT_INVALID, error_json("UsageError", "--json replaces the subcommand"));
        }
        (None, None) => return (EXIT_INVALID, error_json("UsageError", "no command given; see --help")),
    };
    match execute(&job) {
        Ok((value, ok)) => {
            let mut text = value.to_string();
            text.push('\n');
            let code = if ok { EXIT_OK } else { EXIT_INTERNAL };
            match &job.output {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => (code, String::new()),
                    Err(e) => (EXIT_INTERNAL, error_json("IoError", &format!("{}: {e}", path.display()))),
                },
                None => (code, text),
            }
        }
        Err(e) => {
            let code = if e.is_internal() { EXIT_INTERNAL } else { EXIT_INVALID };
            (code, error_json(e.name(), &e.to_string()))
        }
    }
}
