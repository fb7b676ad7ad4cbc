//! Solver flags shared by `solve` and `bench`.

use clap::{Args, ValueEnum};
use maxcut_core::evo::SearchConfig;
use maxcut_core::init::InitMethod;
use maxcut_core::presets::{apply_auto, apply_manual, ParamsMode, Preset};
use maxcut_core::solvers::DecoCarry;
use maxcut_core::{Algorithm, AscentParams, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Pquco,
    Pluco,
    Pdeco,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Pquco => Algorithm::Pquco,
            AlgoArg::Pluco => Algorithm::Pluco,
            AlgoArg::Pdeco => Algorithm::Pdeco,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InitArg {
    Idi,
    Dui,
}

impl From<InitArg> for InitMethod {
    fn from(a: InitArg) -> Self {
        match a {
            InitArg::Idi => InitMethod::Idi,
            InitArg::Dui => InitMethod::Dui,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamsArg {
    Manual,
    Auto,
}

impl From<ParamsArg> for ParamsMode {
    fn from(a: ParamsArg) -> Self {
        match a {
            ParamsArg::Manual => ParamsMode::Manual,
            ParamsArg::Auto => ParamsMode::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PresetArg {
    #[value(aliases = ["smallER", "small-er-manual"])]
    SmallEr,
    #[value(aliases = ["gset-manual"])]
    Gset,
    #[value(aliases = ["largeER", "large-er-manual"])]
    LargeEr,
}

impl From<PresetArg> for Preset {
    fn from(a: PresetArg) -> Self {
        match a {
            PresetArg::SmallEr => Preset::SmallEr,
            PresetArg::Gset => Preset::Gset,
            PresetArg::LargeEr => Preset::LargeEr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CarryArg {
    IncumbentColumn,
    Fresh,
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    /// Members per batch.
    #[arg(long, default_value_t = 64)]
    pub batch_size: usize,
    /// Number of batches (all phases together for pdeco).
    #[arg(long, default_value_t = 3)]
    pub batches: usize,
    /// Lifting dimension for pluco and pdeco.
    #[arg(long, default_value_t = 2)]
    pub lift: usize,
    /// Step size; overrides presets.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Ascent iterations per batch; overrides presets.
    #[arg(long)]
    pub iters: Option<usize>,
    /// Step size for the lifted phases of pdeco.
    #[arg(long)]
    pub lifted_alpha: Option<f64>,
    /// Iterations for the lifted phases of pdeco.
    #[arg(long)]
    pub lifted_iters: Option<usize>,
    #[arg(long, default_value_t = 0.9)]
    pub momentum: f64,
    /// Variance of the exploration noise.
    #[arg(long, default_value_t = 0.8)]
    pub eta: f64,
    /// Importance threshold in degree standard deviations.
    #[arg(long, default_value_t = 0.2)]
    pub beta: f64,
    #[arg(long, default_value_t = 10_000.0)]
    pub init_scale: f64,
    /// Apply the exploration noise before scaling instead of after.
    #[arg(long)]
    pub unscaled_noise: bool,
    /// Reuse one importance sign pattern for every re-initialization.
    #[arg(long)]
    pub idi_fixed_pattern: bool,
    /// Wall-clock budget in seconds, checked between batches.
    #[arg(long)]
    pub time_budget: Option<f64>,
    /// Hand-tuned step size and iteration count for a dataset family.
    #[arg(long, value_enum)]
    pub preset: Option<PresetArg>,
    /// Re-run the automatic search every this many batches of a phase.
    #[arg(long)]
    pub search_every: Option<usize>,
    #[arg(long, value_enum, default_value = "incumbent-column")]
    pub deco_carry: CarryArg,
    /// Consecutive batches per pdeco phase.
    #[arg(long, default_value_t = 1)]
    pub phase_batches: usize,
    /// Always run the full iteration count.
    #[arg(long)]
    pub no_early_exit: bool,
}

impl SolverArgs {
    /// Builds the solver configuration. Order: defaults, preset, params
    /// mode, explicit overrides.
    pub fn build(
        &self,
        algorithm: Algorithm,
        init: InitMethod,
        params: ParamsMode,
        lift: usize,
    ) -> SolverConfig {
        let mut cfg = SolverConfig::with_algorithm(algorithm);
        cfg.batch_size = self.batch_size;
        cfg.num_batches = self.batches;
        cfg.lift_dim = lift;
        cfg.ascent.momentum = self.momentum;
        cfg.init.method = init;
        cfg.init.eta = self.eta;
        cfg.init.beta = self.beta;
        cfg.init.init_scale = self.init_scale;
        cfg.init.scale_noise = !self.unscaled_noise;
        cfg.init.idi_fixed_pattern = self.idi_fixed_pattern;
        cfg.time_budget_s = self.time_budget;
        cfg.deco_carry = match self.deco_carry {
            CarryArg::IncumbentColumn => DecoCarry::IncumbentColumn,
            CarryArg::Fresh => DecoCarry::Fresh,
        };
        cfg.deco_phase_batches = self.phase_batches;
        cfg.early_exit = !self.no_early_exit;
        if let Some(p) = self.preset {
            apply_manual(&mut cfg, p.into());
        }
        if params == ParamsMode::Auto {
            apply_auto(&mut cfg);
            if let Some(k) = self.search_every {
                cfg.search = Some(SearchConfig {
                    rerun_every: Some(k),
                    ..SearchConfig::default()
                });
            }
        }
        if let Some(a) = self.alpha {
            cfg.ascent.alpha = a;
        }
        if let Some(t) = self.iters {
            cfg.ascent.iterations = t;
        }
        if self.lifted_alpha.is_some() || self.lifted_iters.is_some() {
            let base = cfg.lifted_ascent.unwrap_or(cfg.ascent);
            cfg.lifted_ascent = Some(AscentParams {
                alpha: self.lifted_alpha.unwrap_or(base.alpha),
                iterations: self.lifted_iters.unwrap_or(base.iterations),
                momentum: base.momentum,
            });
        }
        cfg
    }
}

/// Splits a comma-separated flag value.
pub fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}
