//! The recycle method: build an initial k-coloring from a legal
//! (k+1)-coloring by dissolving one or more of its color classes.
//!
//! For the penalty strategy the vertices of the selected classes `K` are
//! moved into the remaining colors and the color `ε ∈ K` vanishes. For the
//! partial strategy the same vertices are simply uncolored. Every vertex
//! outside `K` keeps its color, so all conflicts of the result touch a
//! recolored vertex.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{color_classes, is_legal, CompleteColoring, PartialColoring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which classes of the legal (k+1)-coloring get dissolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassSelection {
    /// `K = {i*}` with `i*` the smallest class (R*).
    Smallest,
    /// `t` classes drawn uniformly without replacement; the first draw is ε (R_t).
    Random { t: usize },
}

/// How dissolved vertices pick their new color (penalty strategy only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecolorRule {
    #[default]
    Random,
    /// The allowed color seen least often among already-colored neighbors.
    #[serde(alias = "least")]
    LeastSelection,
}

impl std::str::FromStr for RecolorRule {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random" => Ok(RecolorRule::Random),
            "least" | "least-selection" => Ok(RecolorRule::LeastSelection),
            _ => Err(Error::config(format!("unknown recolor rule `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecycleConfig {
    pub selection: ClassSelection,
    pub recolor: RecolorRule,
}

impl RecycleConfig {
    /// R* with random recoloring.
    pub fn star() -> Self {
        RecycleConfig {
            selection: ClassSelection::Smallest,
            recolor: RecolorRule::Random,
        }
    }

    pub fn random_classes(t: usize) -> Self {
        RecycleConfig {
            selection: ClassSelection::Random { t },
            recolor: RecolorRule::Random,
        }
    }

    pub fn with_recolor(mut self, recolor: RecolorRule) -> Self {
        self.recolor = recolor;
        self
    }
}

/// Color (0-based) of a smallest class; ties go to the lowest color.
pub fn select_smallest_class(c: &CompleteColoring) -> u32 {
    let sizes = color_classes(c);
    let mut best = 0;
    for (i, &s) in sizes.iter().enumerate() {
        if s < sizes[best] {
            best = i;
        }
    }
    best as u32
}

struct Selection {
    dissolved: Vec<bool>,
    epsilon: u32,
}

fn select<R: Rng + ?Sized>(g: &Graph, c: &CompleteColoring, cfg: &RecycleConfig, rng: &mut R) -> Result<Selection> {
    let k_plus_one = c.k();
    if c.len() != g.n() {
        return Err(Error::contract(format!(
            "coloring has {} entries for {} vertices",
            c.len(),
            g.n()
        )));
    }
    if k_plus_one < 2 {
        return Err(Error::contract("recycling needs a (k+1)-coloring with k >= 1"));
    }
    if !is_legal(g, c) {
        return Err(Error::contract("recycling needs a legal (k+1)-coloring"));
    }
    let mut dissolved = vec![false; k_plus_one];
    let epsilon = match cfg.selection {
        ClassSelection::Smallest => {
            let i = select_smallest_class(c);
            dissolved[i as usize] = true;
            i
        }
        ClassSelection::Random { t } => {
            if t == 0 || t > k_plus_one {
                return Err(Error::config(format!(
                    "R_t needs 1 <= t <= k+1 = {k_plus_one}, got t = {t}"
                )));
            }
            let picks = index::sample(rng, k_plus_one, t);
            for i in picks.iter() {
                dissolved[i] = true;
            }
            picks.index(0) as u32
        }
    };
    Ok(Selection { dissolved, epsilon })
}

/// Recycle for the penalty strategy; returns a complete k-coloring.
pub fn recycle_complete<R: Rng + ?Sized>(
    g: &Graph,
    c: &CompleteColoring,
    cfg: &RecycleConfig,
    rng: &mut R,
) -> Result<CompleteColoring> {
    let mut scans = 0;
    recycle_complete_counted(g, c, cfg, rng, &mut scans)
}

/// As [`recycle_complete`], also counting adjacency entries read.
pub(crate) fn recycle_complete_counted<R: Rng + ?Sized>(
    g: &Graph,
    c: &CompleteColoring,
    cfg: &RecycleConfig,
    rng: &mut R,
    scans: &mut usize,
) -> Result<CompleteColoring> {
    let Selection { dissolved, epsilon } = select(g, c, cfg, rng)?;
    let k = c.k() - 1;

    let mut work: Vec<Option<u32>> = c
        .colors()
        .iter()
        .map(|&col| (!dissolved[col as usize]).then_some(col))
        .collect();
    let allowed: Vec<u32> = (0..c.k() as u32).filter(|&x| x != epsilon).collect();
    let mut tally = vec![0u32; c.k()];

    for v in 0..g.n() {
        if work[v].is_some() {
            continue;
        }
        let color = match cfg.recolor {
            RecolorRule::Random => allowed[rng.random_range(0..allowed.len())],
            RecolorRule::LeastSelection => least_selection_with(g, &work, v, &allowed, &mut tally, scans),
        };
        work[v] = Some(color);
    }

    let assign = work
        .into_iter()
        .map(|col| {
            let col = col.expect("every vertex recolored");
            if col > epsilon {
                col - 1
            } else {
                col
            }
        })
        .collect();
    Ok(CompleteColoring::from_parts_unchecked(k, assign))
}

/// Recycle for the partial strategy; returns a partial k-coloring.
pub fn recycle_partial<R: Rng + ?Sized>(
    g: &Graph,
    c: &CompleteColoring,
    cfg: &RecycleConfig,
    rng: &mut R,
) -> Result<PartialColoring> {
    let Selection { dissolved, .. } = select(g, c, cfg, rng)?;
    let k = c.k() - 1;
    let mut rename = vec![0u32; c.k()];
    let mut next = 0;
    for (col, gone) in dissolved.iter().enumerate() {
        if !gone {
            rename[col] = next;
            next += 1;
        }
    }
    let assign = c
        .colors()
        .iter()
        .map(|&col| (!dissolved[col as usize]).then(|| rename[col as usize]))
        .collect();
    Ok(PartialColoring::from_parts_unchecked(k, assign))
}

/// The color in `allowed` held by the fewest colored neighbors of `v`;
/// ties go to the lowest color. `allowed` must be nonempty.
pub fn least_selection_recolor(g: &Graph, assign: &[Option<u32>], v: usize, allowed: &[u32]) -> u32 {
    assert!(!allowed.is_empty(), "allowed color set must be nonempty");
    let width = allowed
        .iter()
        .copied()
        .chain(assign.iter().flatten().copied())
        .max()
        .unwrap() as usize
        + 1;
    let mut tally = vec![0u32; width];
    let mut scans = 0;
    least_selection_with(g, assign, v, allowed, &mut tally, &mut scans)
}

fn least_selection_with(
    g: &Graph,
    assign: &[Option<u32>],
    v: usize,
    allowed: &[u32],
    tally: &mut [u32],
    scans: &mut usize,
) -> u32 {
    let neighbors = g.neighbors(v);
    *scans += neighbors.len();
    for &u in neighbors {
        if let Some(c) = assign[u] {
            tally[c as usize] += 1;
        }
    }
    let mut best = allowed[0];
    for &c in allowed {
        if tally[c as usize] < tally[best as usize] || (tally[c as usize] == tally[best as usize] && c < best) {
            best = c;
        }
    }
    for &u in neighbors {
        if let Some(c) = assign[u] {
            tally[c as usize] = 0;
        }
    }
    best
}
