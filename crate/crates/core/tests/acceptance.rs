//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Criteria 3 to 6 read DIMACS benchmark files from `$RECOLOR_INSTANCES`
//! (default `<workspace>/instances`). Arguments filter criteria by id, for
//! example `cargo test --test acceptance -- c1 c7`.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use recolor::bench::{self, penalty_curve, run_campaign, run_trials, CampaignConfig, TenureSpec};
use recolor::coloring::penalty_complete;
use recolor::constructive::{greedy_k_partial, random_k};
use recolor::oracle::exact_chromatic_number;
use recolor::rng::seeded;
use recolor::{
    dsatur, partialcol_search, penalty_partial, recycle_complete, recycle_partial, tabucol_search, Engine, Graph,
    InitGenerator, RecolorRule, RecycleConfig, RunRecord, SearchBudget, SearchStatus, SolveConfig, TenureScheme,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Verdict);

fn check(cond: bool, detail: String) -> Verdict {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn instance_dir() -> PathBuf {
    std::env::var_os("RECOLOR_INSTANCES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../instances"))
}

fn instance(name: &str) -> Result<Graph, String> {
    let path = instance_dir().join(format!("{name}.col"));
    if !path.exists() {
        return Err(format!(
            "instance {name}.col not found in {} (set RECOLOR_INSTANCES to a directory of DIMACS files)",
            instance_dir().display()
        ));
    }
    bench::load_instance(&path).map_err(|e| e.to_string())
}

fn jobs() -> usize {
    std::env::var(bench::JOBS_ENV)
        .ok()
        .and_then(|j| j.parse().ok())
        .unwrap_or(1)
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        (xs[n / 2 - 1] + xs[n / 2]) / 2.0
    }
}

fn c1_recycle_bounds() -> Verdict {
    let start = Instant::now();
    let mut violations = 0;
    let mut rng = seeded(0xC1);
    for pair in 0..1000 {
        let p = if pair % 2 == 0 { 0.1 } else { 0.5 };
        let g = Graph::random_gnp(200, p, &mut rng);
        let c = dsatur(&g, &mut rng);
        let k = c.k() - 1;
        let n = g.n() as f64;
        let delta = g.max_degree() as f64;
        let kf = k as f64;

        let random = recycle_complete(&g, &c, &RecycleConfig::star(), &mut rng).unwrap();
        let least = recycle_complete(&g, &c, &RecycleConfig::star().with_recolor(RecolorRule::LeastSelection), &mut rng).unwrap();
        let partial = recycle_partial(&g, &c, &RecycleConfig::star(), &mut rng).unwrap();
        let r = penalty_complete(&g, &random).unwrap() as f64;
        let l = penalty_complete(&g, &least).unwrap() as f64;
        let u = penalty_partial(&partial) as f64;
        violations += usize::from(r > n * delta / (kf + 1.0));
        violations += usize::from(l > n * delta / (kf + 1.0));
        violations += usize::from(l > n * delta / (kf * (kf + 1.0)));
        violations += usize::from(u > n / (kf + 1.0));
    }
    let elapsed = start.elapsed();
    check(
        violations == 0 && elapsed < Duration::from_secs(60),
        format!("1000 pairs, {violations} violations, {:.1}s (limit 60s)", elapsed.as_secs_f64()),
    )
}

fn c2_oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let cap = 100_000;
    let mut rng = seeded(0xC2);
    let (mut reached, mut attempts, mut false_legal) = (0, 0, 0);
    for i in 0..200 {
        let n = 1 + i % 8;
        let p = [0.2, 0.4, 0.6, 0.8][i % 4];
        let g = Graph::random_gnp(n, p, &mut rng);
        let chi = exact_chromatic_number(&g).unwrap();
        for scheme in [TenureScheme::dyn_default(), TenureScheme::foo_default()] {
            let budget = SearchBudget::iterations(cap);
            let init = random_k(&g, chi, &mut rng);
            let t = tabucol_search(&g, chi, &init, &scheme, &budget, &mut rng).unwrap();
            let init = greedy_k_partial(&g, chi, &mut rng);
            let p = partialcol_search(&g, chi, &init, &scheme, &budget, &mut rng).unwrap();
            attempts += 2;
            reached += usize::from(t.best_penalty == 0 && recolor::is_legal(&g, &t.best));
            reached += usize::from(p.best_penalty == 0 && p.best.to_complete().is_some_and(|c| recolor::is_legal(&g, &c)));

            if chi >= 2 {
                let k = chi - 1;
                let init = random_k(&g, k, &mut rng);
                let t = tabucol_search(&g, k, &init, &scheme, &budget, &mut rng).unwrap();
                let init = greedy_k_partial(&g, k, &mut rng);
                let p = partialcol_search(&g, k, &init, &scheme, &budget, &mut rng).unwrap();
                false_legal += usize::from(t.status == SearchStatus::LegalFound);
                false_legal += usize::from(p.status == SearchStatus::LegalFound);
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        reached == attempts && false_legal == 0 && elapsed < Duration::from_secs(120),
        format!(
            "k=chi solved {reached}/{attempts}, k=chi-1 legal {false_legal}, {:.1}s (limit 120s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn c3_dsatur_calibration() -> Verdict {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for (name, target) in [("DSJC500.1", 15.7), ("le450_25c", 29.0)] {
        let g = instance(name)?;
        let mean = (0..50u64).map(|s| dsatur(&g, &mut seeded(s)).k() as f64).sum::<f64>() / 50.0;
        ok &= (mean - target).abs() <= 0.5;
        details.push(format!("{name} mean {mean:.2} (target {target} +- 0.5)"));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    details.push(format!("{:.1}s (limit 60s)", elapsed.as_secs_f64()));
    check(ok, details.join(", "))
}

fn solver(engine: Engine, scheme: TenureScheme, init: InitGenerator, seconds: u64) -> SolveConfig {
    SolveConfig {
        engine,
        init,
        recolor: RecolorRule::Random,
        scheme,
        time_limit: Duration::from_secs(seconds),
        iter_cap: None,
    }
}

fn c4_solver_calibration() -> Verdict {
    let cases = [
        ("le450_15c", Engine::Tabucol, TenureScheme::dyn_default(), 16),
        ("le450_25c", Engine::Tabucol, TenureScheme::dyn_default(), 26),
        ("DSJC500.1", Engine::Partialcol, TenureScheme::foo_default(), 12),
    ];
    let graphs = cases.iter().map(|c| instance(c.0)).collect::<Result<Vec<_>, _>>()?;
    let mut ok = true;
    let mut details = Vec::new();
    for ((name, engine, scheme, target), g) in cases.iter().zip(&graphs) {
        let cfg = solver(*engine, *scheme, InitGenerator::RecycleStar, 600);
        let records = run_trials(g, name, &cfg, 10, 0xC4, jobs()).map_err(|e| e.to_string())?;
        let hits = records.iter().filter(|r| r.best_k <= *target).count();
        ok &= hits >= 9;
        details.push(format!("{name} k<={target} in {hits}/10"));
    }
    check(ok, details.join(", "))
}

fn c5_recycle_vs_greedy() -> Verdict {
    let g = instance("DSJC500.5")?;
    let gens = [
        InitGenerator::RecycleStar,
        InitGenerator::RecycleT(1),
        InitGenerator::RecycleT(3),
        InitGenerator::Greedy,
    ];
    let mut curves = Vec::new();
    let mut dsatur_k = usize::MAX;
    for init in gens {
        let cfg = solver(Engine::Tabucol, TenureScheme::dyn_default(), init, 60);
        let records: Vec<RunRecord> = run_trials(&g, "DSJC500.5", &cfg, 20, 0xC5, jobs()).map_err(|e| e.to_string())?;
        dsatur_k = dsatur_k.min(records.iter().map(|r| r.dsatur_k).min().unwrap());
        let curve: BTreeMap<usize, f64> = penalty_curve(&records)
            .into_iter()
            .map(|p| (p.k, p.mean_initial_penalty))
            .collect();
        curves.push(curve);
    }
    let limit = dsatur_k.saturating_sub(5);
    let common: Vec<usize> = curves[0]
        .keys()
        .copied()
        .filter(|&k| k <= limit && curves.iter().all(|c| c.contains_key(&k)))
        .collect();
    let Some(&smallest) = common.first() else {
        return Err(format!("no k <= {limit} reached by all four generators"));
    };
    let mut bad = Vec::new();
    for &k in &common {
        let (star, r1, r3, gr) = (curves[0][&k], curves[1][&k], curves[2][&k], curves[3][&k]);
        if !(star < r1 && r1 <= r3 && r3 < gr) {
            bad.push(format!("k={k}: R*={star:.1} R1={r1:.1} R3={r3:.1} Gr={gr:.1}"));
        }
    }
    let factor = curves[3][&smallest] / curves[0][&smallest].max(f64::MIN_POSITIVE);
    check(
        bad.is_empty() && factor >= 3.0,
        format!(
            "ordering held at {}/{} levels k<={limit}, Gr/R* at k={smallest} = {factor:.1} (need >= 3){}",
            common.len() - bad.len(),
            common.len(),
            if bad.is_empty() { String::new() } else { format!("; violations {}", bad.join("; ")) }
        ),
    )
}

fn c6_acceleration() -> Verdict {
    let g = instance("flat300_28_0")?;
    let mut stats = Vec::new();
    for init in [InitGenerator::RecycleStar, InitGenerator::Greedy] {
        let cfg = solver(Engine::Tabucol, TenureScheme::dyn_default(), init, 300);
        let records = run_trials(&g, "flat300_28_0", &cfg, 10, 0xC6, jobs()).map_err(|e| e.to_string())?;
        let k = median(records.iter().map(|r| r.best_k as f64).collect());
        stats.push((k, records));
    }
    let (k_star, k_gr) = (stats[0].0, stats[1].0);
    let detail = format!("median k R*={k_star} Gr={k_gr}");
    if k_star < k_gr {
        return Ok(detail);
    }
    if k_star > k_gr {
        return Err(detail);
    }
    let target = k_star.ceil() as usize;
    let time = |records: &[RunRecord]| {
        median(records.iter().map(|r| r.time_to_k(target).unwrap_or(f64::INFINITY)).collect())
    };
    let (t_star, t_gr) = (time(&stats[0].1), time(&stats[1].1));
    check(t_star < t_gr, format!("{detail}, median time to k={target}: R*={t_star:.1}s Gr={t_gr:.1}s"))
}

fn c7_determinism() -> Verdict {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut paths = Vec::new();
    for (i, p) in [0.1, 0.5].into_iter().enumerate() {
        let g = Graph::random_gnp(80, p, &mut seeded(0xC7 + i as u64));
        let path = tmp.path().join(format!("g{i}.col"));
        std::fs::write(&path, g.to_dimacs()).map_err(|e| e.to_string())?;
        paths.push(path);
    }
    let mut summaries = Vec::new();
    for (run, (jobs, engine)) in [(1, Engine::Tabucol), (2, Engine::Tabucol), (1, Engine::Partialcol), (3, Engine::Partialcol)]
        .into_iter()
        .enumerate()
    {
        let cfg = CampaignConfig {
            instances: paths.clone(),
            algorithm: engine,
            tenure: TenureSpec::Name("foo".into()),
            init: InitGenerator::RecycleStar,
            recolor: RecolorRule::Random,
            trials: 5,
            time_limit_s: 600.0,
            iter_cap: Some(2_000),
            base_seed: 42,
            output_dir: tmp.path().join(format!("run{run}")),
            jobs,
        };
        run_campaign(&cfg).map_err(|e| e.to_string())?;
        summaries.push(std::fs::read(cfg.output_dir.join("summary.csv")).map_err(|e| e.to_string())?);
    }
    check(
        summaries[0] == summaries[1] && summaries[2] == summaries[3],
        format!(
            "tabucol summaries identical: {}, partialcol summaries identical: {}",
            summaries[0] == summaries[1],
            summaries[2] == summaries[3]
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("c1", "recycle penalty bounds", c1_recycle_bounds),
        ("c2", "oracle equivalence", c2_oracle_equivalence),
        ("c3", "dsatur calibration", c3_dsatur_calibration),
        ("c4", "solver calibration", c4_solver_calibration),
        ("c5", "recycle vs greedy initial penalty", c5_recycle_vs_greedy),
        ("c6", "acceleration by recycling", c6_acceleration),
        ("c7", "campaign determinism", c7_determinism),
    ];
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, run) in criteria {
        if !filters.is_empty() && !filters.iter().any(|f| id.contains(f.as_str())) {
            continue;
        }
        let verdict = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|e| Err(format!("panicked: {}", e.downcast_ref::<String>().cloned().unwrap_or_default())));
        match verdict {
            Ok(detail) => println!("acceptance {id} {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("acceptance {id} {name}: FAIL ({detail})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
