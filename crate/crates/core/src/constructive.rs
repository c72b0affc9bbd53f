//! Constructive colorings: DSATUR for the first legal solution, and the
//! greedy (Gr) and random per-k generators used as baselines.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coloring::{CompleteColoring, PartialColoring};
use crate::graph::Graph;

/// DSATUR (Brélaz). Picks the uncolored vertex with the most distinct
/// neighbor colors, then the highest degree, then uniformly at random, and
/// gives it the smallest non-conflicting color.
pub fn dsatur<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> CompleteColoring {
    let n = g.n();
    if n == 0 {
        return CompleteColoring::from_parts_unchecked(1, Vec::new());
    }
    let words = (g.max_degree() + 2).div_ceil(64);
    let mut seen = vec![0u64; n * words];
    let mut saturation = vec![0usize; n];
    let mut colors: Vec<Option<u32>> = vec![None; n];
    let mut uncolored: Vec<usize> = (0..n).collect();
    let mut k = 0u32;

    while !uncolored.is_empty() {
        let mut pick = 0;
        let mut ties = 0u32;
        for (slot, &v) in uncolored.iter().enumerate() {
            let key = (saturation[v], g.degree(v));
            let best = uncolored[pick];
            let best_key = (saturation[best], g.degree(best));
            if ties == 0 || key > best_key {
                pick = slot;
                ties = 1;
            } else if key == best_key {
                ties += 1;
                if rng.random_range(0..ties) == 0 {
                    pick = slot;
                }
            }
        }
        let v = uncolored.swap_remove(pick);

        let row = &seen[v * words..(v + 1) * words];
        let color = row
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(i, &w)| i as u32 * 64 + (!w).trailing_zeros())
            .expect("a free color always exists below max_degree + 2");
        colors[v] = Some(color);
        k = k.max(color + 1);

        let (word, bit) = (color as usize / 64, 1u64 << (color % 64));
        for &u in g.neighbors(v) {
            if colors[u].is_none() {
                let slot = &mut seen[u * words + word];
                if *slot & bit == 0 {
                    *slot |= bit;
                    saturation[u] += 1;
                }
            }
        }
    }

    let assign = colors.into_iter().map(|c| c.expect("all colored")).collect();
    CompleteColoring::from_parts_unchecked(k as usize, assign)
}

/// Gr for the penalty strategy: random visiting order, smallest free color,
/// otherwise a uniformly random color.
pub fn greedy_k_complete<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> CompleteColoring {
    let order = shuffled_order(g.n(), rng);
    greedy_complete_in_order(g, k, &order, rng)
}

/// Gr with an explicit visiting order.
pub fn greedy_complete_in_order<R: Rng + ?Sized>(
    g: &Graph,
    k: usize,
    order: &[usize],
    rng: &mut R,
) -> CompleteColoring {
    assert!(k >= 1, "k must be at least 1");
    let colors = greedy_scan(g, k, order, |rng| Some(rng.random_range(0..k as u32)), rng);
    CompleteColoring::from_parts_unchecked(k, colors.into_iter().map(|c| c.unwrap()).collect())
}

/// Gr for the partial strategy: vertices without a free color stay uncolored.
pub fn greedy_k_partial<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> PartialColoring {
    let order = shuffled_order(g.n(), rng);
    greedy_partial_in_order(g, k, &order)
}

pub fn greedy_partial_in_order(g: &Graph, k: usize, order: &[usize]) -> PartialColoring {
    assert!(k >= 1, "k must be at least 1");
    let colors = greedy_scan(g, k, order, |_: &mut ()| None, &mut ());
    PartialColoring::from_parts_unchecked(k, colors)
}

fn shuffled_order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    order
}

fn greedy_scan<S: ?Sized>(
    g: &Graph,
    k: usize,
    order: &[usize],
    mut fallback: impl FnMut(&mut S) -> Option<u32>,
    state: &mut S,
) -> Vec<Option<u32>> {
    let n = g.n();
    let mut colors: Vec<Option<u32>> = vec![None; n];
    let mut blocked = vec![usize::MAX; k];
    for (step, &v) in order.iter().enumerate() {
        for &u in g.neighbors(v) {
            if let Some(c) = colors[u] {
                blocked[c as usize] = step;
            }
        }
        colors[v] = match blocked.iter().position(|&s| s != step) {
            Some(c) => Some(c as u32),
            None => fallback(state),
        };
    }
    colors
}

/// Every vertex independently uniform over the `k` colors.
pub fn random_k<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> CompleteColoring {
    assert!(k >= 1, "k must be at least 1");
    let assign = (0..g.n()).map(|_| rng.random_range(0..k as u32)).collect();
    CompleteColoring::from_parts_unchecked(k, assign)
}

/// Random partial coloring: a uniform random complete coloring, then for
/// every conflicting edge (in edge order) the higher-numbered endpoint is
/// uncolored.
pub fn random_k_partial<R: Rng + ?Sized>(g: &Graph, k: usize, rng: &mut R) -> PartialColoring {
    let full = random_k(g, k, rng);
    let mut assign: Vec<Option<u32>> = full.colors().iter().map(|&c| Some(c)).collect();
    for (u, v) in g.edges() {
        if assign[u].is_some() && assign[u] == assign[v] {
            assign[v] = None;
        }
    }
    PartialColoring::from_parts_unchecked(k, assign)
}
