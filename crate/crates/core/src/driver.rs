//! The iterative scheme: color with DSATUR, then repeatedly ask a tabu
//! engine for a legal k-coloring with one color fewer, seeding each attempt
//! with an initial-solution generator, until the global time budget runs out.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::{is_legal, penalty_complete, penalty_partial, CompleteColoring, PartialColoring};
use crate::constructive::{dsatur, greedy_k_complete, greedy_k_partial, random_k, random_k_partial};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::recycle::{recycle_complete, recycle_partial, ClassSelection, RecolorRule, RecycleConfig};
use crate::rng::{seeded, SolverRng};
use crate::tabu::{partialcol_search, tabucol_search, SearchBudget, SearchStatus, TenureScheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Tabucol,
    Partialcol,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Tabucol => "tabucol",
            Engine::Partialcol => "partialcol",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tabucol" => Ok(Engine::Tabucol),
            "partialcol" => Ok(Engine::Partialcol),
            _ => Err(Error::config(format!("unknown algorithm `{s}`"))),
        }
    }
}

/// Generator for the initial solution of each k-level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitGenerator {
    /// Gr: random order, smallest free color.
    Greedy,
    /// R*: dissolve the smallest class of the previous legal coloring.
    RecycleStar,
    /// R_t: dissolve `t` random classes.
    RecycleT(usize),
    Random,
}

impl fmt::Display for InitGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InitGenerator::Greedy => f.write_str("greedy"),
            InitGenerator::RecycleStar => f.write_str("recycle-star"),
            InitGenerator::RecycleT(t) => write!(f, "recycle-t{t}"),
            InitGenerator::Random => f.write_str("random"),
        }
    }
}

impl FromStr for InitGenerator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "greedy" | "gr" => Ok(InitGenerator::Greedy),
            "recycle-star" | "r*" => Ok(InitGenerator::RecycleStar),
            "random" => Ok(InitGenerator::Random),
            other => other
                .strip_prefix("recycle-t")
                .and_then(|t| t.trim_start_matches([':', '=']).parse().ok())
                .filter(|&t| t >= 1)
                .map(InitGenerator::RecycleT)
                .ok_or_else(|| Error::config(format!("unknown initial generator `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveConfig {
    pub engine: Engine,
    pub init: InitGenerator,
    pub recolor: RecolorRule,
    pub scheme: TenureScheme,
    /// Budget for the whole run, DSATUR included.
    pub time_limit: Duration,
    /// Optional iteration cap per k-level.
    pub iter_cap: Option<u64>,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            engine: Engine::Tabucol,
            init: InitGenerator::RecycleStar,
            recolor: RecolorRule::Random,
            scheme: TenureScheme::dyn_default(),
            time_limit: Duration::from_secs(600),
            iter_cap: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LevelStatus {
    /// The DSATUR coloring that opens the run.
    Constructed,
    LegalFound,
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub k: usize,
    pub initial_penalty: usize,
    pub status: LevelStatus,
    /// Seconds since the start of the run when the level ended.
    pub elapsed_s: f64,
    pub iterations: u64,
}

/// Trajectory of one run of the iterative scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub instance: String,
    pub algorithm: Engine,
    pub tenure: String,
    pub init: InitGenerator,
    pub seed: u64,
    pub dsatur_k: usize,
    pub levels: Vec<LevelRecord>,
    pub best_k: usize,
    /// Best legal coloring, colors `1..=best_k`.
    pub best_coloring: Vec<u32>,
    pub total_elapsed_s: f64,
    pub total_iterations: u64,
}

impl RunRecord {
    /// Seconds at which a legal k-coloring was first held, if ever.
    pub fn time_to_k(&self, k: usize) -> Option<f64> {
        self.levels
            .iter()
            .find(|l| l.k <= k && l.status != LevelStatus::BudgetExhausted)
            .map(|l| l.elapsed_s)
    }
}

/// Runs the iterative scheme on `g`.
pub fn solve_vcol(g: &Graph, cfg: &SolveConfig, seed: u64) -> Result<RunRecord> {
    if cfg.time_limit.is_zero() {
        return Err(Error::config("time limit must be positive"));
    }
    cfg.scheme.validate()?;
    let start = Instant::now();
    let deadline = start + cfg.time_limit;
    let mut rng = seeded(seed);

    let first = dsatur(g, &mut rng);
    let dsatur_k = first.k();
    let mut levels = vec![LevelRecord {
        k: dsatur_k,
        initial_penalty: 0,
        status: LevelStatus::Constructed,
        elapsed_s: start.elapsed().as_secs_f64(),
        iterations: 0,
    }];
    let mut incumbent = first;
    let mut total_iterations = 0;

    while incumbent.k() > 1 && Instant::now() < deadline {
        let k = incumbent.k() - 1;
        let mut budget = SearchBudget::until(deadline);
        if let Some(cap) = cfg.iter_cap {
            budget = budget.with_iteration_cap(cap);
        }
        let (initial_penalty, status, iterations, found) = match cfg.engine {
            Engine::Tabucol => {
                let init = complete_init(g, &incumbent, k, cfg, &mut rng)?;
                let pen = penalty_complete(g, &init)?;
                let out = tabucol_search(g, k, &init, &cfg.scheme, &budget, &mut rng)?;
                let found = (out.status == SearchStatus::LegalFound).then_some(out.best);
                (pen, out.status, out.iterations, found)
            }
            Engine::Partialcol => {
                let init = partial_init(g, &incumbent, k, cfg, &mut rng)?;
                let pen = penalty_partial(&init);
                let out = partialcol_search(g, k, &init, &cfg.scheme, &budget, &mut rng)?;
                let found = out.best.to_complete().filter(|_| out.status == SearchStatus::LegalFound);
                (pen, out.status, out.iterations, found)
            }
        };
        total_iterations += iterations;
        levels.push(LevelRecord {
            k,
            initial_penalty,
            status: match status {
                SearchStatus::LegalFound => LevelStatus::LegalFound,
                SearchStatus::BudgetExhausted => LevelStatus::BudgetExhausted,
            },
            elapsed_s: start.elapsed().as_secs_f64(),
            iterations,
        });
        match found {
            Some(c) => {
                if !is_legal(g, &c) {
                    return Err(Error::contract(format!("engine reported an illegal {k}-coloring as legal")));
                }
                incumbent = c;
            }
            None => break,
        }
    }

    Ok(RunRecord {
        instance: String::new(),
        algorithm: cfg.engine,
        tenure: cfg.scheme.name().to_string(),
        init: cfg.init,
        seed,
        dsatur_k,
        levels,
        best_k: incumbent.k(),
        best_coloring: incumbent.to_one_based(),
        total_elapsed_s: start.elapsed().as_secs_f64(),
        total_iterations,
    })
}

fn recycle_config(init: InitGenerator, recolor: RecolorRule, k_plus_one: usize) -> RecycleConfig {
    let selection = match init {
        InitGenerator::RecycleT(t) => ClassSelection::Random { t: t.min(k_plus_one) },
        _ => ClassSelection::Smallest,
    };
    RecycleConfig { selection, recolor }
}

fn complete_init(
    g: &Graph,
    previous: &CompleteColoring,
    k: usize,
    cfg: &SolveConfig,
    rng: &mut SolverRng,
) -> Result<CompleteColoring> {
    Ok(match cfg.init {
        InitGenerator::Greedy => greedy_k_complete(g, k, rng),
        InitGenerator::Random => random_k(g, k, rng),
        InitGenerator::RecycleStar | InitGenerator::RecycleT(_) => {
            recycle_complete(g, previous, &recycle_config(cfg.init, cfg.recolor, k + 1), rng)?
        }
    })
}

fn partial_init(
    g: &Graph,
    previous: &CompleteColoring,
    k: usize,
    cfg: &SolveConfig,
    rng: &mut SolverRng,
) -> Result<PartialColoring> {
    Ok(match cfg.init {
        InitGenerator::Greedy => greedy_k_partial(g, k, rng),
        InitGenerator::Random => random_k_partial(g, k, rng),
        InitGenerator::RecycleStar | InitGenerator::RecycleT(_) => {
            recycle_partial(g, previous, &recycle_config(cfg.init, cfg.recolor, k + 1), rng)?
        }
    })
}

/// `(k, initial penalty)` per level; the DSATUR level reports 0.
pub fn initial_penalty_curve(record: &RunRecord) -> Vec<(usize, usize)> {
    record.levels.iter().map(|l| (l.k, l.initial_penalty)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use crate::oracle::exact_chromatic_number;

    fn capped(engine: Engine, init: InitGenerator) -> SolveConfig {
        SolveConfig {
            engine,
            init,
            time_limit: Duration::from_secs(60),
            iter_cap: Some(20_000),
            ..SolveConfig::default()
        }
    }

    fn all_configs() -> Vec<SolveConfig> {
        let mut out = Vec::new();
        for engine in [Engine::Tabucol, Engine::Partialcol] {
            for init in [InitGenerator::Greedy, InitGenerator::RecycleStar, InitGenerator::RecycleT(2), InitGenerator::Random] {
                out.push(capped(engine, init));
            }
        }
        out
    }

    fn check_record(g: &Graph, r: &RunRecord) {
        assert_eq!(r.levels[0].status, LevelStatus::Constructed);
        assert_eq!(r.levels[0].k, r.dsatur_k);
        for w in r.levels.windows(2) {
            assert_eq!(w[1].k + 1, w[0].k, "k decreases by exactly one");
        }
        let legal_min = r.levels.iter().filter(|l| l.status != LevelStatus::BudgetExhausted).map(|l| l.k).min().unwrap();
        assert_eq!(r.best_k, legal_min);
        let c = CompleteColoring::from_one_based(r.best_k, &r.best_coloring).unwrap();
        assert!(is_legal(g, &c));
        assert_eq!(r.total_iterations, r.levels.iter().map(|l| l.iterations).sum::<u64>());
    }

    #[test]
    fn k4_stays_at_four() {
        let g = complete(4);
        assert_eq!(exact_chromatic_number(&g).unwrap(), 4);
        for cfg in all_configs() {
            let r = solve_vcol(&g, &cfg, 1).unwrap();
            check_record(&g, &r);
            assert_eq!(r.best_k, 4);
            assert_eq!(r.dsatur_k, 4);
            assert_eq!(r.levels.len(), 2);
            assert_eq!(r.levels[1].status, LevelStatus::BudgetExhausted);
            assert_eq!(r.levels[1].iterations, 20_000);
        }
    }

    #[test]
    fn c5_reaches_three() {
        let g = cycle(5);
        assert_eq!(exact_chromatic_number(&g).unwrap(), 3);
        for cfg in all_configs() {
            let r = solve_vcol(&g, &cfg, 2).unwrap();
            check_record(&g, &r);
            assert_eq!(r.best_k, 3);
        }
    }

    #[test]
    fn edgeless_graph_needs_no_search() {
        let g = Graph::empty(7);
        for cfg in all_configs() {
            let r = solve_vcol(&g, &cfg, 3).unwrap();
            assert_eq!(r.best_k, 1);
            assert_eq!(r.total_iterations, 0);
            assert_eq!(initial_penalty_curve(&r), vec![(1, 0)]);
        }
    }

    #[test]
    fn random_graph_records_are_consistent() {
        let mut rng = seeded(44);
        let g = Graph::random_gnp(70, 0.3, &mut rng);
        for cfg in all_configs() {
            let r = solve_vcol(&g, &cfg, 4).unwrap();
            check_record(&g, &r);
            assert!(r.best_k <= r.dsatur_k);
        }
    }

    #[test]
    fn recycle_star_initial_penalties_respect_bound() {
        let mut rng = seeded(45);
        let g = Graph::random_gnp(120, 0.4, &mut rng);
        let cfg = capped(Engine::Tabucol, InitGenerator::RecycleStar);
        let r = solve_vcol(&g, &cfg, 5).unwrap();
        let n_delta = (g.n() * g.max_degree()) as f64;
        for (k, pen) in initial_penalty_curve(&r).into_iter().skip(1) {
            assert!(pen as f64 <= n_delta / (k as f64 + 1.0), "k={k} pen={pen}");
        }
    }

    #[test]
    fn penalty_curve_extraction() {
        let level = |k, initial_penalty, status| LevelRecord { k, initial_penalty, status, elapsed_s: 0.0, iterations: 0 };
        let r = RunRecord {
            instance: "x".into(),
            algorithm: Engine::Tabucol,
            tenure: "dyn".into(),
            init: InitGenerator::RecycleStar,
            seed: 0,
            dsatur_k: 5,
            levels: vec![
                level(5, 0, LevelStatus::Constructed),
                level(4, 2, LevelStatus::LegalFound),
                level(3, 7, LevelStatus::BudgetExhausted),
            ],
            best_k: 4,
            best_coloring: vec![],
            total_elapsed_s: 0.0,
            total_iterations: 0,
        };
        assert_eq!(initial_penalty_curve(&r), vec![(5, 0), (4, 2), (3, 7)]);
        assert_eq!(r.time_to_k(4), Some(0.0));
        assert_eq!(r.time_to_k(3), None);
    }

    #[test]
    fn expired_budget_keeps_dsatur() {
        let mut rng = seeded(46);
        let g = Graph::random_gnp(200, 0.5, &mut rng);
        let cfg = SolveConfig {
            time_limit: Duration::from_nanos(1),
            ..SolveConfig::default()
        };
        let r = solve_vcol(&g, &cfg, 6).unwrap();
        assert_eq!(r.best_k, r.dsatur_k);
        assert!(r.levels.len() <= 2);
        assert!(solve_vcol(&g, &SolveConfig { time_limit: Duration::ZERO, ..cfg }, 6).is_err());
    }

    #[test]
    fn recycled_start_depends_only_on_incumbent_and_seed() {
        let mut rng = seeded(47);
        let g = Graph::random_gnp(60, 0.4, &mut rng);
        let prev = dsatur(&g, &mut rng);
        let cfg = capped(Engine::Tabucol, InitGenerator::RecycleT(2));
        let a = complete_init(&g, &prev, prev.k() - 1, &cfg, &mut seeded(9)).unwrap();
        let b = complete_init(&g, &prev, prev.k() - 1, &cfg, &mut seeded(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn seeded_capped_runs_repeat() {
        let mut rng = seeded(48);
        let g = Graph::random_gnp(80, 0.5, &mut rng);
        let cfg = capped(Engine::Partialcol, InitGenerator::RecycleStar);
        let strip = |mut r: RunRecord| {
            r.total_elapsed_s = 0.0;
            r.levels.iter_mut().for_each(|l| l.elapsed_s = 0.0);
            r
        };
        assert_eq!(strip(solve_vcol(&g, &cfg, 7).unwrap()), strip(solve_vcol(&g, &cfg, 7).unwrap()));
    }

    #[test]
    fn init_generator_names() {
        for s in ["greedy", "recycle-star", "recycle-t3", "random"] {
            assert_eq!(s.parse::<InitGenerator>().unwrap().to_string(), s);
        }
        assert_eq!("recycle-t:5".parse::<InitGenerator>().unwrap(), InitGenerator::RecycleT(5));
        assert!("recycle-t0".parse::<InitGenerator>().is_err());
        assert!("bogus".parse::<InitGenerator>().is_err());
        assert_eq!(serde_json::to_string(&InitGenerator::RecycleT(3)).unwrap(), r#"{"recycle-t":3}"#);
        assert_eq!(serde_json::to_string(&InitGenerator::RecycleStar).unwrap(), r#""recycle-star""#);
    }
}
