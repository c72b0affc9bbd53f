use std::time::Instant;

use rand::Rng;

use super::{BestMove, IndexedSet, Move, SearchBudget, SearchOutcome, SearchStatus, Tenure, TenureScheme};
use crate::coloring::CompleteColoring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Search state over complete k-colorings.
///
/// `gamma[v * k + c]` counts neighbors of `v` holding color `c`; moving `v`
/// to `c` changes the penalty by `gamma[v][c] − gamma[v][color(v)]`.
pub(crate) struct TabucolEngine<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<u32>,
    gamma: Vec<u32>,
    conflicting: IndexedSet,
    penalty: usize,
    tabu_until: Vec<u64>,
    iteration: u64,
}

impl<'g> TabucolEngine<'g> {
    pub fn new(g: &'g Graph, init: &CompleteColoring) -> Self {
        let n = g.n();
        let k = init.k();
        let colors = init.colors().to_vec();
        let mut gamma = vec![0u32; n * k];
        let mut conflicting = IndexedSet::with_universe(n);
        let mut twice_penalty = 0;
        for v in 0..n {
            for &u in g.neighbors(v) {
                gamma[v * k + colors[u] as usize] += 1;
            }
            let own = gamma[v * k + colors[v] as usize];
            if own > 0 {
                conflicting.insert(v);
                twice_penalty += own as usize;
            }
        }
        TabucolEngine {
            g,
            k,
            colors,
            gamma,
            conflicting,
            penalty: twice_penalty / 2,
            tabu_until: vec![0; n * k],
            iteration: 0,
        }
    }

    pub fn penalty(&self) -> usize {
        self.penalty
    }

    #[cfg(test)]
    pub fn conflicting_vertices(&self) -> usize {
        self.conflicting.len()
    }

    pub fn snapshot(&self) -> CompleteColoring {
        CompleteColoring::from_parts_unchecked(self.k, self.colors.clone())
    }

    /// Chooses and applies one move. Returns `None` when no move exists
    /// (no conflicts, or k = 1).
    pub fn step<R: Rng + ?Sized>(&mut self, best_penalty: usize, tenure: &mut Tenure, rng: &mut R) -> Option<Move> {
        let k = self.k;
        let mut allowed = BestMove::new();
        let mut fallback = BestMove::new();
        let current = self.penalty as i64;
        for &v in self.conflicting.as_slice() {
            let row = v * k;
            let own = self.colors[v] as usize;
            let base = self.gamma[row + own] as i64;
            for c in 0..k {
                if c == own {
                    continue;
                }
                let delta = self.gamma[row + c] as i64 - base;
                let mv = Move { vertex: v, color: c as u32 };
                let tabu = self.tabu_until[row + c] > self.iteration;
                if !tabu || current + delta < best_penalty as i64 {
                    allowed.offer(delta, mv, rng);
                } else {
                    fallback.offer(delta, mv, rng);
                }
            }
        }
        let mv = allowed.mv.or(fallback.mv)?;
        let old = self.apply(mv);
        let t = tenure.next(self.conflicting.len(), rng);
        self.tabu_until[mv.vertex * k + old as usize] = self.iteration + 1 + t;
        self.iteration += 1;
        tenure.observe(self.penalty);
        Some(mv)
    }

    fn apply(&mut self, mv: Move) -> u32 {
        let k = self.k;
        let v = mv.vertex;
        let old = self.colors[v];
        let new = mv.color;
        self.penalty = (self.penalty as i64 + self.gamma[v * k + new as usize] as i64
            - self.gamma[v * k + old as usize] as i64) as usize;
        self.colors[v] = new;
        for &u in self.g.neighbors(v) {
            let row = u * k;
            self.gamma[row + old as usize] -= 1;
            self.gamma[row + new as usize] += 1;
            let cu = self.colors[u];
            if cu == old && self.gamma[row + old as usize] == 0 {
                self.conflicting.remove(u);
            } else if cu == new {
                self.conflicting.insert(u);
            }
        }
        if self.gamma[v * k + new as usize] > 0 {
            self.conflicting.insert(v);
        } else {
            self.conflicting.remove(v);
        }
        old
    }

    /// Recomputes every maintained quantity from scratch and compares.
    #[cfg(test)]
    pub fn verify(&self) -> std::result::Result<(), String> {
        let fresh = TabucolEngine::new(self.g, &self.snapshot());
        if fresh.penalty != self.penalty {
            return Err(format!("penalty {} vs recomputed {}", self.penalty, fresh.penalty));
        }
        if fresh.gamma != self.gamma {
            return Err("neighbor color table drifted".into());
        }
        let mut a = fresh.conflicting.as_slice().to_vec();
        let mut b = self.conflicting.as_slice().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Err("conflicting vertex set drifted".into());
        }
        Ok(())
    }
}

/// Tabucol: tabu search over complete k-colorings minimizing conflicting edges.
///
/// Each iteration scans every `(v, c)` with `v` conflicting and `c ≠ color(v)`,
/// takes the best non-tabu move (a tabu move is admitted when it would beat
/// the best penalty seen), and forbids `(v, old color)` for a tenure drawn
/// from `scheme`. Ties are broken uniformly at random.
pub fn tabucol_search<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    init: &CompleteColoring,
    scheme: &TenureScheme,
    budget: &SearchBudget,
    rng: &mut R,
) -> Result<SearchOutcome<CompleteColoring>> {
    run(g, k, init, scheme, budget, rng, |_| {})
}

pub(crate) fn run<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    init: &CompleteColoring,
    scheme: &TenureScheme,
    budget: &SearchBudget,
    rng: &mut R,
    mut on_move: impl FnMut(Move),
) -> Result<SearchOutcome<CompleteColoring>> {
    if k < 1 {
        return Err(Error::contract("k must be at least 1"));
    }
    if init.k() != k {
        return Err(Error::contract(format!("initial coloring has {} colors, expected {k}", init.k())));
    }
    if init.len() != g.n() {
        return Err(Error::contract(format!(
            "initial coloring has {} entries for {} vertices",
            init.len(),
            g.n()
        )));
    }
    scheme.validate()?;

    let start = Instant::now();
    let mut engine = TabucolEngine::new(g, init);
    let mut tenure = Tenure::new(scheme, g.n(), rng);
    let mut best_penalty = engine.penalty();
    let mut best = engine.snapshot();
    let mut iterations = 0u64;

    while best_penalty > 0 && !budget.exhausted(iterations) {
        let Some(mv) = engine.step(best_penalty, &mut tenure, rng) else {
            break;
        };
        on_move(mv);
        iterations += 1;
        if engine.penalty() < best_penalty {
            best_penalty = engine.penalty();
            best = engine.snapshot();
        }
    }

    Ok(SearchOutcome {
        status: if best_penalty == 0 {
            SearchStatus::LegalFound
        } else {
            SearchStatus::BudgetExhausted
        },
        best,
        best_penalty,
        iterations,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{is_legal, penalty_complete};
    use crate::constructive::{greedy_k_complete, random_k};
    use crate::graph::fixtures::*;
    use crate::oracle::is_k_colorable;
    use crate::rng::seeded;

    #[test]
    fn finds_three_coloring_of_c5() {
        let g = cycle(5);
        assert!(is_k_colorable(&g, 3).unwrap());
        for seed in 0..20 {
            let mut rng = seeded(seed);
            let init = random_k(&g, 3, &mut rng);
            let out = tabucol_search(&g, 3, &init, &TenureScheme::dyn_default(), &SearchBudget::iterations(100_000), &mut rng).unwrap();
            assert_eq!(out.status, SearchStatus::LegalFound);
            assert_eq!(out.best_penalty, 0);
            assert!(is_legal(&g, &out.best));
        }
    }

    #[test]
    fn k4_with_three_colors_exhausts() {
        let g = complete(4);
        assert!(!is_k_colorable(&g, 3).unwrap());
        let mut rng = seeded(3);
        let init = random_k(&g, 3, &mut rng);
        let out = tabucol_search(&g, 3, &init, &TenureScheme::foo_default(), &SearchBudget::iterations(5_000), &mut rng).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExhausted);
        assert!(out.best_penalty >= 1);
        assert_eq!(out.iterations, 5_000);
    }

    #[test]
    fn legal_start_needs_no_iterations() {
        let g = triangle();
        let init = CompleteColoring::from_one_based(3, &[1, 2, 3]).unwrap();
        let out = tabucol_search(&g, 3, &init, &TenureScheme::dyn_default(), &SearchBudget::iterations(10), &mut seeded(0)).unwrap();
        assert_eq!((out.status, out.iterations), (SearchStatus::LegalFound, 0));
    }

    #[test]
    fn single_color_has_no_moves() {
        let g = triangle();
        let init = CompleteColoring::from_one_based(1, &[1, 1, 1]).unwrap();
        let out = tabucol_search(&g, 1, &init, &TenureScheme::dyn_default(), &SearchBudget::iterations(10), &mut seeded(0)).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExhausted);
        assert_eq!(out.best_penalty, 3);
    }

    #[test]
    fn rejects_bad_input() {
        let g = triangle();
        let init = CompleteColoring::from_one_based(3, &[1, 2, 3]).unwrap();
        let budget = SearchBudget::iterations(1);
        assert!(tabucol_search(&g, 2, &init, &TenureScheme::dyn_default(), &budget, &mut seeded(0)).is_err());
        assert!(tabucol_search(&g, 0, &init, &TenureScheme::dyn_default(), &budget, &mut seeded(0)).is_err());
        let short = CompleteColoring::from_one_based(3, &[1, 2]).unwrap();
        assert!(tabucol_search(&g, 3, &short, &TenureScheme::dyn_default(), &budget, &mut seeded(0)).is_err());
    }

    #[test]
    fn incremental_state_matches_recount() {
        let mut rng = seeded(77);
        let g = Graph::random_gnp(100, 0.3, &mut rng);
        for scheme in [TenureScheme::dyn_default(), TenureScheme::foo_default()] {
            let init = random_k(&g, 8, &mut rng);
            let mut engine = TabucolEngine::new(&g, &init);
            let mut tenure = Tenure::new(&scheme, g.n(), &mut rng);
            let mut best = engine.penalty();
            let mut moves = 0;
            while moves < 10_000 {
                if engine.step(best, &mut tenure, &mut rng).is_none() {
                    break;
                }
                moves += 1;
                best = best.min(engine.penalty());
                if moves % 1000 == 0 {
                    engine.verify().unwrap();
                }
            }
            engine.verify().unwrap();
            assert_eq!(engine.penalty(), penalty_complete(&g, &engine.snapshot()).unwrap());
            assert_eq!(engine.conflicting_vertices(), crate::coloring::conflicting_vertex_count(&g, &engine.snapshot()));
        }
    }

    #[test]
    fn best_penalty_never_increases() {
        let mut rng = seeded(12);
        let g = Graph::random_gnp(80, 0.5, &mut rng);
        let init = greedy_k_complete(&g, 10, &mut rng);
        let mut engine = TabucolEngine::new(&g, &init);
        let mut tenure = Tenure::new(&TenureScheme::dyn_default(), g.n(), &mut rng);
        let mut best = engine.penalty();
        for _ in 0..3000 {
            if engine.step(best, &mut tenure, &mut rng).is_none() {
                break;
            }
            let next = best.min(engine.penalty());
            assert!(next <= best);
            best = next;
        }
        let out = tabucol_search(&g, 10, &init, &TenureScheme::dyn_default(), &SearchBudget::iterations(3000), &mut rng).unwrap();
        assert!(out.best_penalty <= penalty_complete(&g, &init).unwrap());
        assert_eq!(out.best_penalty, penalty_complete(&g, &out.best).unwrap());
    }

    #[test]
    fn seeded_runs_repeat_exactly() {
        let mut rng = seeded(100);
        let g = Graph::random_gnp(60, 0.5, &mut rng);
        let init = random_k(&g, 9, &mut rng);
        let record = |seed| {
            let mut moves = Vec::new();
            let out = run(&g, 9, &init, &TenureScheme::foo_default(), &SearchBudget::iterations(4000), &mut seeded(seed), |m| moves.push(m)).unwrap();
            (moves, out.best.colors().to_vec())
        };
        assert_eq!(record(5), record(5));
        assert_ne!(record(5).0, record(6).0);
    }
}
