//! Hand-tuned `(alpha, T)` values per dataset family and the default
//! automatic-search bounds.

use serde::{Deserialize, Serialize};

use crate::evo::SearchConfig;
use crate::pga::AscentParams;
use crate::solvers::{Algorithm, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Erdos-Renyi graphs with 700-800 nodes, p = 0.15.
    SmallEr,
    /// Gset instances (800-2000 nodes).
    Gset,
    /// Erdos-Renyi graphs with 20k-30k nodes, p = 0.1.
    LargeEr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamsMode {
    /// Fixed preset step size and iteration count.
    Manual,
    /// Evolutionary search between batches.
    Auto,
}

impl std::fmt::Display for ParamsMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ParamsMode::Manual => "manual",
            ParamsMode::Auto => "auto",
        })
    }
}

impl Preset {
    /// `(unlifted, lifted)` pairs of `(alpha, T)`; the lifted entry is only
    /// used by the alternating solver.
    pub fn manual_params(self, algorithm: Algorithm) -> ((f64, usize), Option<(f64, usize)>) {
        use Algorithm::*;
        match (self, algorithm) {
            (Preset::SmallEr, Pquco) => ((0.15, 48_000), None),
            (Preset::SmallEr, Pluco) => ((0.001, 2_500), None),
            (Preset::SmallEr, Pdeco) => ((0.10, 30_000), Some((0.001, 2_000))),
            (Preset::Gset, Pquco) => ((0.01, 60_000), None),
            (Preset::Gset, Pluco) => ((0.001, 3_000), None),
            (Preset::Gset, Pdeco) => ((0.012, 80_000), Some((0.001, 2_000))),
            (Preset::LargeEr, Pquco) => ((0.01, 100_000), None),
            (Preset::LargeEr, Pluco) => ((0.001, 5_000), None),
            (Preset::LargeEr, Pdeco) => ((0.02, 60_000), Some((0.005, 1_000))),
        }
    }
}

/// Switches `cfg` to fixed preset parameters, keeping its momentum.
pub fn apply_manual(cfg: &mut SolverConfig, preset: Preset) {
    let ((alpha, iterations), lifted) = preset.manual_params(cfg.algorithm);
    let momentum = cfg.ascent.momentum;
    cfg.ascent = AscentParams {
        alpha,
        iterations,
        momentum,
    };
    cfg.lifted_ascent = lifted.map(|(alpha, iterations)| AscentParams {
        alpha,
        iterations,
        momentum,
    });
    cfg.search = None;
}

/// Enables the evolutionary search with the default bounds
/// (`T` in [3000, 10000], `e` in [-4, -1], population 6, 5 rounds).
pub fn apply_auto(cfg: &mut SolverConfig) {
    cfg.search = Some(SearchConfig::default());
}
