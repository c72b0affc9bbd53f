//! Complete and partial k-colorings with their penalty functions.
//!
//! Colors are stored 0-based (`0..k`). The text format and the public
//! `from_one_based`/`to_one_based` helpers use `1..=k`, with `0` standing
//! for an uncolored vertex.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Total assignment of one of `k` colors to every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteColoring {
    k: usize,
    assign: Vec<u32>,
}

impl CompleteColoring {
    pub fn new(k: usize, assign: Vec<u32>) -> Result<Self> {
        if k == 0 {
            return Err(Error::contract("a coloring needs at least one color"));
        }
        if let Some(v) = assign.iter().position(|&c| c as usize >= k) {
            return Err(Error::contract(format!(
                "vertex {v} has color index {} outside 0..{k}",
                assign[v]
            )));
        }
        Ok(CompleteColoring { k, assign })
    }

    /// Builds from colors in `1..=k`.
    pub fn from_one_based(k: usize, colors: &[u32]) -> Result<Self> {
        if let Some(v) = colors.iter().position(|&c| c == 0) {
            return Err(Error::contract(format!("vertex {v} has color 0 in a complete coloring")));
        }
        Self::new(k, colors.iter().map(|&c| c - 1).collect())
    }

    pub(crate) fn from_parts_unchecked(k: usize, assign: Vec<u32>) -> Self {
        debug_assert!(k >= 1 && assign.iter().all(|&c| (c as usize) < k));
        CompleteColoring { k, assign }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    #[inline]
    pub fn color(&self, v: usize) -> u32 {
        self.assign[v]
    }

    pub fn colors(&self) -> &[u32] {
        &self.assign
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.assign.iter().map(|&c| c + 1).collect()
    }

    /// Number of distinct colors actually present.
    pub fn used_colors(&self) -> usize {
        color_classes(self).iter().filter(|&&s| s > 0).count()
    }

    /// Drops unused colors and renumbers the rest densely, keeping their
    /// relative order. Returns the input unchanged when every color is used.
    pub fn compact(&self) -> Self {
        let (map, used) = compaction_map(self.k, self.assign.iter().map(|&c| Some(c)));
        if used == self.k {
            return self.clone();
        }
        CompleteColoring {
            k: used.max(1),
            assign: self.assign.iter().map(|&c| map[c as usize]).collect(),
        }
    }

    /// One `<vertex> <color>` line per vertex, both 1-based.
    pub fn to_text(&self) -> String {
        assignment_text(self.assign.iter().map(|&c| c + 1))
    }
}

/// Assignment of `k` colors where some vertices may stay uncolored.
///
/// Never contains a conflicting edge: every constructor checks this and
/// every search move preserves it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialColoring {
    k: usize,
    assign: Vec<Option<u32>>,
}

impl PartialColoring {
    pub fn new(g: &Graph, k: usize, assign: Vec<Option<u32>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::contract("a coloring needs at least one color"));
        }
        if assign.len() != g.n() {
            return Err(Error::contract(format!(
                "assignment has {} entries for {} vertices",
                assign.len(),
                g.n()
            )));
        }
        if let Some(v) = assign.iter().position(|c| matches!(c, Some(c) if *c as usize >= k)) {
            return Err(Error::contract(format!("vertex {v} has a color outside 0..{k}")));
        }
        if let Some((u, v)) = g
            .edges()
            .find(|&(u, v)| assign[u].is_some() && assign[u] == assign[v])
        {
            return Err(Error::contract(format!(
                "partial coloring has conflicting edge {u}-{v}"
            )));
        }
        Ok(PartialColoring { k, assign })
    }

    /// Builds from colors in `1..=k`, `0` meaning uncolored.
    pub fn from_one_based(g: &Graph, k: usize, colors: &[u32]) -> Result<Self> {
        Self::new(
            g,
            k,
            colors.iter().map(|&c| c.checked_sub(1)).collect(),
        )
    }

    /// All vertices uncolored.
    pub fn uncolored(n: usize, k: usize) -> Self {
        PartialColoring {
            k: k.max(1),
            assign: vec![None; n],
        }
    }

    pub(crate) fn from_parts_unchecked(k: usize, assign: Vec<Option<u32>>) -> Self {
        debug_assert!(k >= 1);
        PartialColoring { k, assign }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    #[inline]
    pub fn color(&self, v: usize) -> Option<u32> {
        self.assign[v]
    }

    pub fn colors(&self) -> &[Option<u32>] {
        &self.assign
    }

    pub fn to_one_based(&self) -> Vec<u32> {
        self.assign.iter().map(|c| c.map_or(0, |c| c + 1)).collect()
    }

    /// Turns a partial coloring without uncolored vertices into a complete one.
    pub fn to_complete(&self) -> Option<CompleteColoring> {
        let assign = self.assign.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(CompleteColoring::from_parts_unchecked(self.k, assign))
    }

    pub fn compact(&self) -> Self {
        let (map, used) = compaction_map(self.k, self.assign.iter().copied());
        if used == self.k {
            return self.clone();
        }
        PartialColoring {
            k: used.max(1),
            assign: self.assign.iter().map(|c| c.map(|c| map[c as usize])).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        assignment_text(self.to_one_based())
    }
}

fn compaction_map(k: usize, colors: impl Iterator<Item = Option<u32>>) -> (Vec<u32>, usize) {
    let mut used = vec![false; k];
    for c in colors.flatten() {
        used[c as usize] = true;
    }
    let mut map = vec![u32::MAX; k];
    let mut next = 0;
    for (c, _) in used.iter().enumerate().filter(|(_, &u)| u) {
        map[c] = next;
        next += 1;
    }
    (map, next as usize)
}

fn assignment_text(colors: impl IntoIterator<Item = u32>) -> String {
    let mut out = String::new();
    for (v, c) in colors.into_iter().enumerate() {
        let _ = writeln!(out, "{} {}", v + 1, c);
    }
    out
}

/// Reads the `<vertex> <color>` format back into 1-based colors (0 = uncolored).
pub fn parse_assignment(text: &str, n: usize) -> Result<Vec<u32>> {
    let mut colors = vec![None; n];
    for (idx, line) in text.lines().enumerate() {
        let mut tokens = line.split_whitespace();
        let Some(first) = tokens.next() else { continue };
        let num = |t: Option<&str>| -> Result<u32> {
            t.and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::parse(idx + 1, "malformed coloring line"))
        };
        let v = num(Some(first))? as usize;
        let c = num(tokens.next())?;
        if v == 0 || v > n {
            return Err(Error::parse(idx + 1, "vertex out of range"));
        }
        colors[v - 1] = Some(c);
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| Error::contract(format!("vertex {} has no color", v + 1))))
        .collect()
}

/// Number of conflicting edges, ρ_comp.
pub fn penalty_complete(g: &Graph, c: &CompleteColoring) -> Result<usize> {
    check_len(g, c.len())?;
    Ok(g.edges().filter(|&(u, v)| c.assign[u] == c.assign[v]).count())
}

/// Number of uncolored vertices, ρ_part.
pub fn penalty_partial(c: &PartialColoring) -> usize {
    c.assign.iter().filter(|c| c.is_none()).count()
}

pub fn is_legal(g: &Graph, c: &CompleteColoring) -> bool {
    c.len() == g.n()
        && (0..g.n()).all(|u| g.neighbors(u).iter().all(|&v| c.assign[u] != c.assign[v]))
}

/// Sizes of the color classes, indexed by 0-based color.
pub fn color_classes(c: &CompleteColoring) -> Vec<usize> {
    let mut sizes = vec![0; c.k];
    for &col in &c.assign {
        sizes[col as usize] += 1;
    }
    sizes
}

/// Class sizes of the colored vertices of a partial coloring.
pub fn partial_color_classes(c: &PartialColoring) -> Vec<usize> {
    let mut sizes = vec![0; c.k];
    for col in c.assign.iter().flatten() {
        sizes[*col as usize] += 1;
    }
    sizes
}

/// Vertices incident to at least one conflicting edge.
pub fn conflicting_vertex_count(g: &Graph, c: &CompleteColoring) -> usize {
    (0..g.n().min(c.len()))
        .filter(|&u| g.neighbors(u).iter().any(|&v| c.assign[u] == c.assign[v]))
        .count()
}

fn check_len(g: &Graph, len: usize) -> Result<()> {
    if len != g.n() {
        return Err(Error::contract(format!(
            "coloring has {len} entries for a graph with {} vertices",
            g.n()
        )));
    }
    Ok(())
}
