//! Multi-trial campaigns and the data behind the result tables and figures.

mod carter;

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use carter::{convert_carter, ExamGraph};

use crate::driver::{solve_vcol, Engine, InitGenerator, LevelStatus, RunRecord, SolveConfig};
use crate::error::{Error, Result};
use crate::graph::{degree_stats, parse_dimacs, DegreeStats, Graph};
use crate::recycle::RecolorRule;
use crate::rng::trial_seed;
use crate::tabu::TenureScheme;

/// Environment variable that overrides the configured worker count.
pub const JOBS_ENV: &str = "RECOLOR_JOBS";

/// Tenure as written in a campaign file: `"dyn"`, `"foo"`, or a full scheme object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TenureSpec {
    Name(String),
    Scheme(TenureScheme),
}

impl TenureSpec {
    pub fn resolve(&self) -> Result<TenureScheme> {
        let scheme = match self {
            TenureSpec::Name(name) => match name.as_str() {
                "dyn" => TenureScheme::dyn_default(),
                "foo" => TenureScheme::foo_default(),
                other => return Err(Error::config(format!("unknown tenure scheme `{other}`"))),
            },
            TenureSpec::Scheme(s) => *s,
        };
        scheme.validate()?;
        Ok(scheme)
    }
}

fn default_tenure() -> TenureSpec {
    TenureSpec::Name("dyn".into())
}
fn default_init() -> InitGenerator {
    InitGenerator::RecycleStar
}
fn default_trials() -> usize {
    50
}
fn default_time_limit() -> f64 {
    600.0
}
fn default_jobs() -> usize {
    1
}
fn default_output() -> PathBuf {
    PathBuf::from("results")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub instances: Vec<PathBuf>,
    pub algorithm: Engine,
    #[serde(default = "default_tenure")]
    pub tenure: TenureSpec,
    #[serde(default = "default_init")]
    pub init: InitGenerator,
    #[serde(default)]
    pub recolor: RecolorRule,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_time_limit")]
    pub time_limit_s: f64,
    /// Per-level iteration cap. When set, wall-clock columns are left empty
    /// in the summary so that reruns compare byte for byte.
    #[serde(default)]
    pub iter_cap: Option<u64>,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    #[serde(default = "default_jobs")]
    pub jobs: usize,
}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: CampaignConfig = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::config("trials must be at least 1"));
        }
        if !(self.time_limit_s > 0.0 && self.time_limit_s.is_finite()) {
            return Err(Error::config("time_limit_s must be positive"));
        }
        if self.instances.is_empty() {
            return Err(Error::config("no instances given"));
        }
        if let InitGenerator::RecycleT(0) = self.init {
            return Err(Error::config("recycle-t needs t >= 1"));
        }
        self.tenure.resolve()?;
        Ok(())
    }

    pub fn solve_config(&self) -> Result<SolveConfig> {
        Ok(SolveConfig {
            engine: self.algorithm,
            init: self.init,
            recolor: self.recolor,
            scheme: self.tenure.resolve()?,
            time_limit: Duration::from_secs_f64(self.time_limit_s),
            iter_cap: self.iter_cap,
        })
    }

    /// Worker count after applying the `RECOLOR_JOBS` override.
    pub fn effective_jobs(&self) -> usize {
        jobs_override().unwrap_or(self.jobs).max(1)
    }
}

fn jobs_override() -> Option<usize> {
    std::env::var(JOBS_ENV).ok()?.trim().parse().ok()
}

/// One row of `summary.csv`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub instance: String,
    pub algorithm: Engine,
    pub tenure: String,
    pub init: String,
    pub trials: usize,
    pub min_k: usize,
    /// Trials that reached `min_k`.
    pub attain: usize,
    pub mean_dsatur_k: f64,
    /// Mean seconds until `min_k` over attaining trials; `None` for
    /// iteration-capped campaigns.
    pub mean_time_s: Option<f64>,
}

pub const SUMMARY_HEADER: [&str; 9] = [
    "instance",
    "algorithm",
    "tenure",
    "init",
    "trials",
    "min_k",
    "attain",
    "mean_dsatur_k",
    "mean_time_s",
];

impl SummaryRow {
    fn fields(&self) -> [String; 9] {
        [
            self.instance.clone(),
            self.algorithm.to_string(),
            self.tenure.clone(),
            self.init.clone(),
            self.trials.to_string(),
            self.min_k.to_string(),
            self.attain.to_string(),
            format!("{:.2}", self.mean_dsatur_k),
            self.mean_time_s.map(|t| format!("{t:.3}")).unwrap_or_default(),
        ]
    }
}

/// Aggregates the trials of one instance.
pub fn summarize(records: &[RunRecord], with_time: bool) -> Result<SummaryRow> {
    let first = records
        .first()
        .ok_or_else(|| Error::contract("cannot summarize zero trials"))?;
    let min_k = records.iter().map(|r| r.best_k).min().expect("nonempty");
    let attaining: Vec<&RunRecord> = records.iter().filter(|r| r.best_k == min_k).collect();
    let mean_dsatur_k = records.iter().map(|r| r.dsatur_k as f64).sum::<f64>() / records.len() as f64;
    let mean_time_s = with_time.then(|| {
        attaining.iter().map(|r| r.time_to_k(min_k).unwrap_or(0.0)).sum::<f64>() / attaining.len() as f64
    });
    Ok(SummaryRow {
        instance: first.instance.clone(),
        algorithm: first.algorithm,
        tenure: first.tenure.clone(),
        init: first.init.to_string(),
        trials: records.len(),
        min_k,
        attain: attaining.len(),
        mean_dsatur_k,
        mean_time_s,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PenaltyPoint {
    pub k: usize,
    pub mean_initial_penalty: f64,
    pub stddev: f64,
    pub samples: usize,
}

/// Mean and population standard deviation of the initial penalty at each k,
/// over the trials that attempted that k (DSATUR levels count as 0).
pub fn penalty_curve(records: &[RunRecord]) -> Vec<PenaltyPoint> {
    let mut by_k: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for r in records {
        for l in &r.levels {
            by_k.entry(l.k).or_default().push(l.initial_penalty as f64);
        }
    }
    by_k.into_iter()
        .rev()
        .map(|(k, xs)| {
            let mean = xs.iter().sum::<f64>() / xs.len() as f64;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / xs.len() as f64;
            PenaltyPoint {
                k,
                mean_initial_penalty: mean,
                stddev: var.sqrt(),
                samples: xs.len(),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryPoint {
    pub elapsed_s: f64,
    pub k: usize,
    pub samples: usize,
}

/// Mean time at which each k was first reached, over the trials reaching it.
pub fn trajectory(records: &[RunRecord]) -> Vec<TrajectoryPoint> {
    let mut by_k: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for r in records {
        for l in r.levels.iter().filter(|l| l.status != LevelStatus::BudgetExhausted) {
            by_k.entry(l.k).or_default().push(l.elapsed_s);
        }
    }
    by_k.into_iter()
        .rev()
        .map(|(k, ts)| TrajectoryPoint {
            elapsed_s: ts.iter().sum::<f64>() / ts.len() as f64,
            k,
            samples: ts.len(),
        })
        .collect()
}

/// Runs `trials` independent solves of one graph, `jobs` at a time. Trial
/// `i` is seeded with [`trial_seed`]`(base_seed, i)`; the result is in trial order.
pub fn run_trials(
    g: &Graph,
    instance: &str,
    cfg: &SolveConfig,
    trials: usize,
    base_seed: u64,
    jobs: usize,
) -> Result<Vec<RunRecord>> {
    let solve = |i: usize| {
        let mut r = solve_vcol(g, cfg, trial_seed(base_seed, i as u64))?;
        r.instance = instance.to_string();
        Ok(r)
    };
    if jobs <= 1 {
        return (0..trials).map(solve).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::config(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| (0..trials).into_par_iter().map(solve).collect())
}

/// Reads an instance: `.stu` files are converted from the Carter layout,
/// anything else is parsed as DIMACS.
pub fn load_instance(path: &Path) -> Result<Graph> {
    let text = fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })?;
    if path.extension().is_some_and(|e| e == "stu") {
        Ok(convert_carter(&text)?.graph)
    } else {
        parse_dimacs(&text)
    }
}

pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

#[derive(Debug, Clone)]
pub struct CampaignOutcome {
    pub records: Vec<Vec<RunRecord>>,
    pub summary: Vec<SummaryRow>,
}

/// Runs every instance of the campaign and writes, under `output_dir`:
/// `summary.csv`, and per instance `trial_<i>.json`, `penalty_curve.csv`
/// and `trajectory.csv`.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignOutcome> {
    cfg.validate()?;
    let solve_cfg = cfg.solve_config()?;
    let graphs = cfg
        .instances
        .iter()
        .map(|p| Ok((instance_name(p), load_instance(p)?)))
        .collect::<Result<Vec<_>>>()?;
    fs::create_dir_all(&cfg.output_dir)?;

    let jobs = cfg.effective_jobs();
    let mut outcome = CampaignOutcome {
        records: Vec::new(),
        summary: Vec::new(),
    };
    for (name, g) in &graphs {
        log::info!("{name}: n={} m={}, {} trials", g.n(), g.m(), cfg.trials);
        let records = run_trials(g, name, &solve_cfg, cfg.trials, cfg.base_seed, jobs)?;
        let dir = cfg.output_dir.join(name);
        fs::create_dir_all(&dir)?;
        for (i, r) in records.iter().enumerate() {
            fs::write(dir.join(format!("trial_{i:03}.json")), serde_json::to_string_pretty(r)?)?;
        }
        write_penalty_curve(&dir.join("penalty_curve.csv"), &penalty_curve(&records))?;
        write_trajectory(&dir.join("trajectory.csv"), &trajectory(&records))?;
        outcome.summary.push(summarize(&records, cfg.iter_cap.is_none())?);
        outcome.records.push(records);
    }
    write_summary(&cfg.output_dir.join("summary.csv"), &outcome.summary)?;
    Ok(outcome)
}

pub fn write_summary(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(SUMMARY_HEADER)?;
    for row in rows {
        w.write_record(row.fields())?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_penalty_curve(path: &Path, points: &[PenaltyPoint]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["k", "mean_initial_penalty", "stddev"])?;
    for p in points {
        w.write_record([p.k.to_string(), format!("{:.4}", p.mean_initial_penalty), format!("{:.4}", p.stddev)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_trajectory(path: &Path, points: &[TrajectoryPoint]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["elapsed_s", "k"])?;
    for p in points {
        w.write_record([format!("{:.4}", p.elapsed_s), p.k.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

/// Size and degree profile of an instance.
#[derive(Debug, Clone, Serialize)]
pub struct InstanceStats {
    pub n: usize,
    pub m: usize,
    pub max_degree: usize,
    pub degree: DegreeStats,
}

impl fmt::Display for InstanceStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n            {}", self.n)?;
        writeln!(f, "m            {}", self.m)?;
        writeln!(f, "max degree   {}", self.max_degree)?;
        writeln!(f, "mean degree  {:.3}", self.degree.mean)?;
        writeln!(f, "stddev       {:.3}", self.degree.stddev)?;
        write!(f, "degree CV    {:.1}%", self.degree.cv)
    }
}

pub fn stats(g: &Graph) -> Result<InstanceStats> {
    Ok(InstanceStats {
        n: g.n(),
        m: g.m(),
        max_degree: g.max_degree(),
        degree: degree_stats(g)?,
    })
}
