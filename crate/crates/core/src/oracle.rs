//! Exhaustive k-colorability for small graphs, used as ground truth in tests.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph the oracle accepts.
pub const MAX_ORACLE_VERTICES: usize = 30;

pub fn is_k_colorable(g: &Graph, k: usize) -> Result<bool> {
    guard(g)?;
    Ok(find_k_coloring(g, k).is_some())
}

/// A legal coloring with colors `0..k` if one exists.
pub fn find_k_coloring(g: &Graph, k: usize) -> Option<Vec<u32>> {
    let n = g.n();
    if n == 0 {
        return Some(Vec::new());
    }
    if k == 0 {
        return None;
    }
    // highest degree first prunes earliest
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut colors = vec![u32::MAX; n];
    if backtrack(g, k as u32, &order, 0, 0, &mut colors) {
        Some(colors)
    } else {
        None
    }
}

fn backtrack(g: &Graph, k: u32, order: &[usize], depth: usize, used: u32, colors: &mut [u32]) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    // a fresh color is interchangeable with any other fresh one, so only
    // try the lowest; this also pins the first vertex to color 0
    let limit = (used + 1).min(k);
    for c in 0..limit {
        if g.neighbors(v).iter().any(|&u| colors[u] == c) {
            continue;
        }
        colors[v] = c;
        if backtrack(g, k, order, depth + 1, used.max(c + 1), colors) {
            return true;
        }
    }
    colors[v] = u32::MAX;
    false
}

/// χ(G), the smallest k for which a legal k-coloring exists.
pub fn exact_chromatic_number(g: &Graph) -> Result<usize> {
    guard(g)?;
    if g.n() == 0 {
        return Ok(0);
    }
    Ok((1..=g.n())
        .find(|&k| find_k_coloring(g, k).is_some())
        .expect("n colors always suffice"))
}

fn guard(g: &Graph) -> Result<()> {
    if g.n() > MAX_ORACLE_VERTICES {
        return Err(Error::OracleTooLarge {
            n: g.n(),
            max: MAX_ORACLE_VERTICES,
        });
    }
    Ok(())
}
