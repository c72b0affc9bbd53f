use std::time::Instant;

use rand::Rng;

use super::{BestMove, IndexedSet, Move, SearchBudget, SearchOutcome, SearchStatus, Tenure, TenureScheme};
use crate::coloring::PartialColoring;
use crate::error::{Error, Result};
use crate::graph::Graph;

const UNCOLORED: u32 = u32::MAX;

/// Search state over conflict-free partial k-colorings.
///
/// An i-swap colors an uncolored `u` with `i` and uncolors every neighbor of
/// `u` holding `i`; with `gamma[u * k + i]` the number of such neighbors the
/// move changes the penalty by `gamma[u][i] − 1`.
pub(crate) struct PartialcolEngine<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<u32>,
    gamma: Vec<u32>,
    uncolored: IndexedSet,
    tabu_until: Vec<u64>,
    iteration: u64,
    evicted: Vec<usize>,
}

impl<'g> PartialcolEngine<'g> {
    pub fn new(g: &'g Graph, init: &PartialColoring) -> Self {
        let n = g.n();
        let k = init.k();
        let colors: Vec<u32> = init.colors().iter().map(|c| c.unwrap_or(UNCOLORED)).collect();
        let mut gamma = vec![0u32; n * k];
        let mut uncolored = IndexedSet::with_universe(n);
        for v in 0..n {
            if colors[v] == UNCOLORED {
                uncolored.insert(v);
            }
            for &u in g.neighbors(v) {
                if colors[u] != UNCOLORED {
                    gamma[v * k + colors[u] as usize] += 1;
                }
            }
        }
        PartialcolEngine {
            g,
            k,
            colors,
            gamma,
            uncolored,
            tabu_until: vec![0; n * k],
            iteration: 0,
            evicted: Vec::new(),
        }
    }

    pub fn penalty(&self) -> usize {
        self.uncolored.len()
    }

    pub fn snapshot(&self) -> PartialColoring {
        let assign = self.colors.iter().map(|&c| (c != UNCOLORED).then_some(c)).collect();
        PartialColoring::from_parts_unchecked(self.k, assign)
    }

    pub fn step<R: Rng + ?Sized>(&mut self, best_penalty: usize, tenure: &mut Tenure, rng: &mut R) -> Option<Move> {
        let k = self.k;
        let current = self.uncolored.len() as i64;
        let mut allowed = BestMove::new();
        let mut fallback = BestMove::new();
        for &u in self.uncolored.as_slice() {
            let row = u * k;
            for c in 0..k {
                let delta = self.gamma[row + c] as i64 - 1;
                let mv = Move { vertex: u, color: c as u32 };
                let tabu = self.tabu_until[row + c] > self.iteration;
                if !tabu || current + delta < best_penalty as i64 {
                    allowed.offer(delta, mv, rng);
                } else {
                    fallback.offer(delta, mv, rng);
                }
            }
        }
        let mv = allowed.mv.or(fallback.mv)?;
        self.apply(mv);
        let t = tenure.next(self.uncolored.len(), rng);
        let until = self.iteration + 1 + t;
        for &w in &self.evicted {
            self.tabu_until[w * k + mv.color as usize] = until;
        }
        self.iteration += 1;
        tenure.observe(self.uncolored.len());
        Some(mv)
    }

    fn apply(&mut self, mv: Move) {
        let k = self.k;
        let (u, c) = (mv.vertex, mv.color);
        self.evicted.clear();
        for &w in self.g.neighbors(u) {
            if self.colors[w] == c {
                self.evicted.push(w);
            }
        }
        for &w in &self.evicted {
            self.colors[w] = UNCOLORED;
            self.uncolored.insert(w);
            for &x in self.g.neighbors(w) {
                self.gamma[x * k + c as usize] -= 1;
            }
        }
        self.colors[u] = c;
        self.uncolored.remove(u);
        for &w in self.g.neighbors(u) {
            self.gamma[w * k + c as usize] += 1;
        }
    }

    #[cfg(test)]
    pub fn verify(&self) -> std::result::Result<(), String> {
        let snap = self.snapshot();
        PartialColoring::new(self.g, self.k, snap.colors().to_vec()).map_err(|e| e.to_string())?;
        let fresh = PartialcolEngine::new(self.g, &snap);
        if fresh.gamma != self.gamma {
            return Err("neighbor color table drifted".into());
        }
        if fresh.uncolored.len() != self.uncolored.len() {
            return Err("uncolored set drifted".into());
        }
        Ok(())
    }
}

/// Partialcol: tabu search over conflict-free partial k-colorings with
/// i-swap moves, minimizing the number of uncolored vertices.
///
/// After an i-swap on `u`, each evicted neighbor `w` may not take color `i`
/// again for the drawn tenure. Aspiration and tie-breaking follow
/// [`super::tabucol_search`].
pub fn partialcol_search<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    init: &PartialColoring,
    scheme: &TenureScheme,
    budget: &SearchBudget,
    rng: &mut R,
) -> Result<SearchOutcome<PartialColoring>> {
    run(g, k, init, scheme, budget, rng, |_| {})
}

pub(crate) fn run<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    init: &PartialColoring,
    scheme: &TenureScheme,
    budget: &SearchBudget,
    rng: &mut R,
    mut on_move: impl FnMut(Move),
) -> Result<SearchOutcome<PartialColoring>> {
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
    let mut engine = PartialcolEngine::new(g, init);
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
