//! Command-line driver: repeated seeded runs of a registered benchmark or a
//! user problem, written out as convergence CSVs.
//!
//! A problem file is flat `key = value` text; `#` starts a comment.
//!
//! ```text
//! lower = -1, -1
//! upper = 1, 1
//! command = python3 objective.py   # prints f(x); x is appended as arguments
//! n_test = 5
//! n_max = 40
//! ```
//!
//! Recognised keys: `problem`, `lower`, `upper`, `command`, `n_test`,
//! `n_max`, `n_init`, `seed`, `alpha`, `delta`, `rbf`, `epsilon`,
//! `eps_svd`, `out`. Command-line flags override file values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use clap::Parser;

use crate::benchmarks::get_benchmark;
use crate::error::{GlisError, Result};
use crate::optimizer::{glis_run, GlisConfig, SurrogateChoice};
use crate::problem::ProblemSpec;
use crate::surrogate::{IdwWeightKind, RbfKernel, RbfKind};

/// Environment variable read when `--seed` is absent.
pub const SEED_ENV: &str = "GLIS_SEED";

#[derive(Debug, Clone, Default, Parser)]
#[command(name = "glis", version, about = "Global optimization with IDW/RBF surrogates")]
pub struct Args {
    /// Registry name, or path to a problem file.
    #[arg(long)]
    pub problem: String,
    /// Number of independent runs.
    #[arg(long)]
    pub n_test: Option<usize>,
    /// Evaluation budget per run.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Initial design size.
    #[arg(long)]
    pub n_init: Option<usize>,
    /// Base seed; run `r` uses `seed + r`.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// RBF kernel name, or `idw` for the inverse distance weighting surrogate.
    #[arg(long)]
    pub rbf: Option<String>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub eps_svd: Option<f64>,
    /// Use `alpha`, `delta`, `epsilon` as given instead of dividing by `n`.
    #[arg(long)]
    pub raw_hyperparams: bool,
    /// Output directory for `runs.csv` and `summary.csv`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Fully resolved run settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub problem_name: String,
    pub spec: ProblemSpec,
    pub glis: GlisConfig,
    pub n_test: usize,
    pub out: PathBuf,
}

/// Aggregate over runs of the best-so-far value at each evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub eval_index: usize,
    pub mean: f64,
    pub best: f64,
    pub worst: f64,
}

type Settings = BTreeMap<String, String>;

const KEYS: [&str; 14] = [
    "problem", "lower", "upper", "command", "n_test", "n_max", "n_init", "seed", "alpha", "delta", "rbf", "epsilon",
    "eps_svd", "out",
];

/// Parses flat `key = value` text.
pub fn parse_settings(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = Settings::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| GlisError::InvalidConfig(format!("line {}: expected `key = value`", no + 1)))?;
        let k = k.trim().to_ascii_lowercase().replace('-', "_");
        if !KEYS.contains(&k.as_str()) {
            return Err(GlisError::InvalidConfig(format!("line {}: unknown key `{k}`", no + 1)));
        }
        map.insert(k, v.trim().to_string());
    }
    Ok(map)
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| GlisError::InvalidConfig(format!("bad value for {key}: `{v}`")))
}

fn parse_vec(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split([',', ' ']).filter(|s| !s.is_empty()).map(|s| parse_num(key, s)).collect()
}

fn command_objective(cmd: String) -> impl Fn(&[f64]) -> f64 + Send + Sync + 'static {
    move |x: &[f64]| {
        let args: Vec<String> = x.iter().map(|v| format!("{v:.17e}")).collect();
        let line = format!("{cmd} {}", args.join(" "));
        Command::new("sh")
            .arg("-c")
            .arg(&line)
            .output()
            .ok()
            .filter(|o| o.status.success())
            .and_then(|o| String::from_utf8(o.stdout).ok())
            .and_then(|s| s.trim().parse::<f64>().ok())
            .unwrap_or(f64::NAN)
    }
}

fn user_problem(s: &Settings) -> Result<ProblemSpec> {
    let get = |k: &str| s.get(k).ok_or_else(|| GlisError::InvalidConfig(format!("problem file needs `{k}`")));
    let lower = parse_vec("lower", get("lower")?)?;
    let upper = parse_vec("upper", get("upper")?)?;
    let cmd = get("command")?.clone();
    ProblemSpec::new(lower, upper, command_objective(cmd))
}

impl RunConfig {
    /// Resolves flags, an optional problem file, and the seed environment
    /// variable into run settings.
    pub fn from_args(args: &Args) -> Result<Self> {
        let mut s = Settings::new();
        let is_file = Path::new(&args.problem).is_file();
        if is_file {
            s = parse_settings(&fs::read_to_string(&args.problem)?)?;
        } else {
            s.insert("problem".into(), args.problem.clone());
        }
        let overrides = [
            ("n_test", args.n_test.map(|v| v.to_string())),
            ("n_max", args.n_max.map(|v| v.to_string())),
            ("n_init", args.n_init.map(|v| v.to_string())),
            ("alpha", args.alpha.map(|v| v.to_string())),
            ("delta", args.delta.map(|v| v.to_string())),
            ("rbf", args.rbf.clone()),
            ("epsilon", args.epsilon.map(|v| v.to_string())),
            ("eps_svd", args.eps_svd.map(|v| v.to_string())),
            ("out", args.out.as_ref().map(|p| p.display().to_string())),
            ("seed", args.seed.map(|v| v.to_string())),
        ];
        for (k, v) in overrides {
            if let Some(v) = v {
                s.insert(k.to_string(), v);
            }
        }
        if !s.contains_key("seed") {
            if let Ok(v) = std::env::var(SEED_ENV) {
                s.insert("seed".into(), v);
            }
        }

        let (problem_name, spec, n_init, n_max) = match s.get("problem") {
            Some(name) => {
                let b = get_benchmark(name)?;
                (b.name.to_string(), b.spec, b.default_n_init, b.default_n_max)
            }
            None => {
                let spec = user_problem(&s)?;
                let n = spec.dim();
                (args.problem.clone(), spec, 2 * n, 20 * n)
            }
        };

        let n = spec.dim();
        let mut glis = GlisConfig::new(n);
        glis.n_init = n_init;
        glis.n_max = n_max;
        glis.divide_hyperparams_by_n = !args.raw_hyperparams;
        let mut n_test = 1;
        let mut out = PathBuf::from("glis-out");
        let mut epsilon = None;
        let mut rbf = None;
        for (k, v) in &s {
            match k.as_str() {
                "n_test" => n_test = parse_num(k, v)?,
                "n_max" => glis.n_max = parse_num(k, v)?,
                "n_init" => glis.n_init = parse_num(k, v)?,
                "seed" => glis.seed = parse_num(k, v)?,
                "alpha" => glis.acquisition.alpha = parse_num(k, v)?,
                "delta" => glis.acquisition.delta = parse_num(k, v)?,
                "epsilon" => epsilon = Some(parse_num::<f64>(k, v)?),
                "eps_svd" => glis.eps_svd = parse_num(k, v)?,
                "rbf" => rbf = Some(v.clone()),
                "out" => out = PathBuf::from(v),
                _ => {}
            }
        }
        if let Some(r) = rbf {
            glis.surrogate = if r.eq_ignore_ascii_case("idw") {
                SurrogateChoice::Idw(IdwWeightKind::InverseSquared)
            } else {
                let kernel: RbfKernel = r.parse()?;
                SurrogateChoice::Rbf(RbfKind { kernel, epsilon: 1.3296 })
            };
        }
        if let (Some(e), SurrogateChoice::Rbf(k)) = (epsilon, &mut glis.surrogate) {
            k.epsilon = e;
        }
        if n_test == 0 {
            return Err(GlisError::InvalidConfig("n_test must be at least 1".into()));
        }
        if args.n_init.is_none() && !s.contains_key("n_init") {
            glis.n_init = glis.n_init.min(glis.n_max);
        }
        glis.validate()?;
        Ok(Self { problem_name, spec, glis, n_test, out })
    }
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

/// Executes all runs and writes `runs.csv` and `summary.csv` under
/// `cfg.out`. Rows are ordered by run, then evaluation index.
pub fn run_command(cfg: &RunConfig) -> Result<Vec<SummaryRow>> {
    let n = cfg.spec.dim();
    let mut runs = String::from("run,eval_index");
    for j in 1..=n {
        write!(runs, ",x{j}").unwrap();
    }
    runs.push_str(",f,best_so_far\n");

    let mut histories = Vec::with_capacity(cfg.n_test);
    for r in 0..cfg.n_test {
        let mut glis = cfg.glis.clone();
        glis.seed = cfg.glis.seed.wrapping_add(r as u64);
        let res = glis_run(&cfg.spec, &glis)?;
        for (k, (x, f)) in res.x.iter().zip(&res.f).enumerate() {
            write!(runs, "{r},{}", k + 1).unwrap();
            for v in x {
                write!(runs, ",{}", fmt_f(*v)).unwrap();
            }
            writeln!(runs, ",{},{}", fmt_f(*f), fmt_f(res.history[k])).unwrap();
        }
        histories.push(res.history);
    }

    let len = histories.iter().map(Vec::len).min().unwrap_or(0);
    let summary: Vec<SummaryRow> = (0..len)
        .map(|k| {
            let col = histories.iter().map(|h| h[k]);
            SummaryRow {
                eval_index: k + 1,
                mean: col.clone().sum::<f64>() / histories.len() as f64,
                best: col.clone().fold(f64::INFINITY, f64::min),
                worst: col.fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect();
    let mut sum = String::from("eval_index,mean,best,worst\n");
    for row in &summary {
        writeln!(sum, "{},{},{},{}", row.eval_index, fmt_f(row.mean), fmt_f(row.best), fmt_f(row.worst)).unwrap();
    }

    fs::create_dir_all(&cfg.out)?;
    fs::write(cfg.out.join("runs.csv"), runs)?;
    fs::write(cfg.out.join("summary.csv"), sum)?;
    Ok(summary)
}

/// Entry point shared by the binary; returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = RunConfig::from_args(&args).and_then(|cfg| run_command(&cfg).map(|s| (cfg, s)));
    match result {
        Ok((cfg, summary)) => {
            if let Some(last) = summary.last() {
                println!(
                    "{}: {} run(s), {} evaluations, final best-so-far mean {:.6} best {:.6} worst {:.6}",
                    cfg.problem_name, cfg.n_test, last.eval_index, last.mean, last.best, last.worst
                );
            }
            println!("wrote {}", cfg.out.display());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(problem: &str) -> Args {
        Args { problem: problem.into(), ..Default::default() }
    }

    #[test]
    fn settings_parse() {
        let s = parse_settings("# c\nlower = -1, -1\nn-max=10 # trailing\n\n").unwrap();
        assert_eq!(s["lower"], "-1, -1");
        assert_eq!(s["n_max"], "10");
        assert!(parse_settings("bogus = 1").is_err());
        assert!(parse_settings("novalue").is_err());
    }

    #[test]
    fn flags_override_defaults() {
        let mut a = args("branin");
        a.n_max = Some(12);
        a.rbf = Some("gaussian".into());
        a.epsilon = Some(0.7);
        a.seed = Some(9);
        let c = RunConfig::from_args(&a).unwrap();
        assert_eq!(c.glis.n_max, 12);
        assert_eq!(c.glis.seed, 9);
        assert_eq!(c.glis.surrogate, SurrogateChoice::Rbf(RbfKind { kernel: RbfKernel::Gaussian, epsilon: 0.7 }));
    }

    #[test]
    fn unknown_problem() {
        let e = RunConfig::from_args(&args("nope")).unwrap_err();
        assert!(matches!(e, GlisError::UnknownBenchmark { .. }));
    }

    #[test]
    fn branin_shapes() {
        let dir = tempfile::tempdir().unwrap();
        let mut a = args("branin");
        a.n_test = Some(3);
        a.n_max = Some(10);
        a.out = Some(dir.path().to_path_buf());
        let c = RunConfig::from_args(&a).unwrap();
        let s = run_command(&c).unwrap();
        assert_eq!(s.len(), 10);
        let runs = fs::read_to_string(dir.path().join("runs.csv")).unwrap();
        assert_eq!(runs.lines().count(), 31);
        assert_eq!(runs.lines().next().unwrap(), "run,eval_index,x1,x2,f,best_so_far");
        let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
        assert_eq!(summary.lines().count(), 11);
    }

    #[test]
    fn user_problem_file() {
        let dir = tempfile::tempdir().unwrap();
        let file = dir.path().join("p.txt");
        fs::write(&file, "lower = 0, 0\nupper = 1, 1\ncommand = awk 'BEGIN{print ARGV[1]+ARGV[2]}'\nn_max = 6\n").unwrap();
        let mut a = args(file.to_str().unwrap());
        a.out = Some(dir.path().join("o"));
        let c = RunConfig::from_args(&a).unwrap();
        assert_eq!(c.glis.n_init, 4);
        let s = run_command(&c).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s[5].best >= 0.0 && s[5].best < 2.0);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["glis", "--problem", "nope"]), 1);
        assert_eq!(main_with_args(["glis"]), 1);
    }
}
