use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tabu tenure policy.
///
/// `Dyn` gives `⌊α·n_c⌋ + γ` with γ uniform in `0..=gamma_max`, where `n_c`
/// is the number of conflicting vertices (Tabucol) or uncolored vertices
/// (Partialcol). `Foo` adds a reactive term on top of that which jumps up
/// after a flat stretch of the objective and then decays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TenureScheme {
    Dyn { alpha: f64, gamma_max: u32 },
    Foo(FooParams),
}

impl Default for TenureScheme {
    fn default() -> Self {
        TenureScheme::dyn_default()
    }
}

impl TenureScheme {
    pub fn dyn_default() -> Self {
        TenureScheme::Dyn {
            alpha: 0.6,
            gamma_max: 9,
        }
    }

    pub fn foo_default() -> Self {
        TenureScheme::Foo(FooParams::default())
    }

    pub fn name(&self) -> &'static str {
        match self {
            TenureScheme::Dyn { .. } => "dyn",
            TenureScheme::Foo(_) => "foo",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (alpha, extra_ok) = match self {
            TenureScheme::Dyn { alpha, .. } => (*alpha, true),
            TenureScheme::Foo(p) => (
                p.alpha,
                p.window_min >= 1
                    && p.window_min <= p.window_max
                    && p.increment_divisor_low >= p.increment_divisor_high
                    && p.increment_divisor_high >= 1
                    && p.decrement_period >= 1,
            ),
        };
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::config(format!("tenure alpha must be positive, got {alpha}")));
        }
        if !extra_ok {
            return Err(Error::config("inconsistent Foo tenure parameters"));
        }
        Ok(())
    }
}

/// Parameters of the reactive scheme. Per search run, the flat-detection
/// window is drawn from `window_min..=window_max` and the increment from
/// `n / increment_divisor_low ..= n / increment_divisor_high`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FooParams {
    pub alpha: f64,
    pub gamma_max: u32,
    pub window_min: u64,
    pub window_max: u64,
    pub increment_divisor_low: usize,
    pub increment_divisor_high: usize,
    /// Penalty changes needed for the reactive term to drop by one.
    pub decrement_period: u64,
    /// A window counts as flat when `max − min` of the penalty stays within this band.
    pub flat_band: usize,
}

impl Default for FooParams {
    fn default() -> Self {
        FooParams {
            alpha: 0.6,
            gamma_max: 9,
            window_min: 500,
            window_max: 1500,
            increment_divisor_low: 20,
            increment_divisor_high: 10,
            decrement_period: 1,
            flat_band: 1,
        }
    }
}

#[derive(Debug, Clone)]
struct Reactive {
    window: u64,
    increment: u64,
    decrement_period: u64,
    flat_band: usize,
    extra: u64,
    window_len: u64,
    window_min: usize,
    window_max: usize,
    last: Option<usize>,
    changes: u64,
}

/// Live tenure state for one search run.
#[derive(Debug, Clone)]
pub struct Tenure {
    alpha: f64,
    gamma_max: u32,
    reactive: Option<Reactive>,
}

impl Tenure {
    /// `n` is the vertex count, used to scale the Foo increment.
    pub fn new<R: Rng + ?Sized>(scheme: &TenureScheme, n: usize, rng: &mut R) -> Self {
        match *scheme {
            TenureScheme::Dyn { alpha, gamma_max } => Tenure {
                alpha,
                gamma_max,
                reactive: None,
            },
            TenureScheme::Foo(p) => {
                let low = (n / p.increment_divisor_low).max(1) as u64;
                let high = (n / p.increment_divisor_high).max(1) as u64;
                Tenure {
                    alpha: p.alpha,
                    gamma_max: p.gamma_max,
                    reactive: Some(Reactive {
                        window: rng.random_range(p.window_min..=p.window_max),
                        increment: rng.random_range(low.min(high)..=high.max(low)),
                        decrement_period: p.decrement_period,
                        flat_band: p.flat_band,
                        extra: 0,
                        window_len: 0,
                        window_min: usize::MAX,
                        window_max: 0,
                        last: None,
                        changes: 0,
                    }),
                }
            }
        }
    }

    /// Tenure for a given `n_c` and γ draw.
    pub fn value(&self, n_c: usize, gamma: u32) -> u64 {
        let base = (self.alpha * n_c as f64).floor() as u64 + gamma as u64;
        base + self.reactive.as_ref().map_or(0, |r| r.extra)
    }

    /// Draws γ and returns the tenure for the next tabu entry.
    pub fn next<R: Rng + ?Sized>(&mut self, n_c: usize, rng: &mut R) -> u64 {
        let gamma = rng.random_range(0..=self.gamma_max);
        self.value(n_c, gamma)
    }

    /// Feeds the penalty after a move into the reactive term (no-op for Dyn).
    pub fn observe(&mut self, penalty: usize) {
        let Some(r) = self.reactive.as_mut() else { return };
        if r.last.is_some_and(|last| last != penalty) {
            r.changes += 1;
            if r.changes % r.decrement_period == 0 {
                r.extra = r.extra.saturating_sub(1);
            }
        }
        r.last = Some(penalty);
        r.window_len += 1;
        r.window_min = r.window_min.min(penalty);
        r.window_max = r.window_max.max(penalty);
        if r.window_len >= r.window {
            if r.window_max - r.window_min <= r.flat_band {
                r.extra += r.increment;
            }
            r.window_len = 0;
            r.window_min = usize::MAX;
            r.window_max = 0;
        }
    }

    /// Current reactive addition (always 0 for Dyn).
    pub fn reactive_extra(&self) -> u64 {
        self.reactive.as_ref().map_or(0, |r| r.extra)
    }

    #[cfg(test)]
    pub(crate) fn flat_window(&self) -> Option<u64> {
        self.reactive.as_ref().map(|r| r.window)
    }
}
