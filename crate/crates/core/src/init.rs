//! Degree-based initial points and Gaussian batch construction.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par;
use crate::rng::{self, Domain, StreamRng};
use crate::state::DenseState;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitMethod {
    /// Uniform on `[-(1 - d_v/Δ), 1 - d_v/Δ]` per node.
    Dui,
    /// Random signs on high-degree nodes, greedy sides for the rest.
    Idi,
}

impl std::fmt::Display for InitMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InitMethod::Dui => "dui",
            InitMethod::Idi => "idi",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitConfig {
    pub method: InitMethod,
    /// Importance threshold, in standard deviations above the mean degree.
    pub beta: f64,
    /// Exploration variance of the batch Gaussian.
    pub eta: f64,
    /// Divisor applied to initial vectors before ascent.
    pub init_scale: f64,
    /// When set, the exploration noise is divided by `init_scale` together
    /// with the mean (the whole sample is scaled), otherwise only the mean is.
    pub scale_noise: bool,
    /// Reuse one IDI sign pattern for every re-initialization instead of
    /// drawing a fresh one each time.
    pub idi_fixed_pattern: bool,
}

impl Default for InitConfig {
    fn default() -> Self {
        Self {
            method: InitMethod::Idi,
            beta: 0.2,
            eta: 0.8,
            init_scale: 10_000.0,
            scale_noise: true,
            idi_fixed_pattern: false,
        }
    }
}

impl InitConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::config(format!(
                "beta = {} must lie in (0, 1)",
                self.beta
            )));
        }
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return Err(Error::config(format!(
                "eta = {} must be non-negative",
                self.eta
            )));
        }
        if !(self.init_scale >= 1.0 && self.init_scale.is_finite()) {
            return Err(Error::config(format!(
                "init scale = {} must be at least 1",
                self.init_scale
            )));
        }
        Ok(())
    }

    /// Variance of the Gaussian noise in the (scaled) space the ascent starts in.
    pub fn effective_eta(&self) -> f64 {
        if self.scale_noise {
            self.eta / (self.init_scale * self.init_scale)
        } else {
            self.eta
        }
    }
}

pub fn dui_init(g: &Graph, rng: &mut StreamRng) -> Result<Vec<f64>> {
    let max = g.max_degree();
    if max == 0 {
        return Err(Error::validation(
            "degree-based uniform initialization needs at least one edge",
        ));
    }
    let max = max as f64;
    Ok(g.degrees()
        .iter()
        .map(|&d| {
            let bound = 1.0 - d as f64 / max;
            bound * (2.0 * rng.random::<f64>() - 1.0)
        })
        .collect())
}

/// Nodes with degree strictly above `mean + beta * std_dev`.
pub fn important_nodes(g: &Graph, beta: f64) -> Vec<bool> {
    let stats = g.degree_stats();
    let threshold = stats.mean + beta * stats.std_dev;
    g.degrees().iter().map(|&d| d as f64 > threshold).collect()
}

fn random_sign(rng: &mut StreamRng) -> f64 {
    if rng.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

pub fn idi_init(g: &Graph, beta: f64, rng: &mut StreamRng) -> Vec<f64> {
    let important = important_nodes(g, beta);
    let signs: Vec<f64> = important
        .iter()
        .map(|&imp| if imp { random_sign(rng) } else { 0.0 })
        .collect();
    idi_assign(g, &important, &signs, rng)
}

/// Completes an IDI vector from the signs `p` already chosen on the important
/// set. Every other node joins the side holding fewer of its important
/// neighbors; ties are broken by a random sign from `rng`.
pub fn idi_assign(g: &Graph, important: &[bool], p: &[f64], rng: &mut StreamRng) -> Vec<f64> {
    (0..g.node_count())
        .map(|v| {
            if important[v] {
                return p[v];
            }
            let (mut plus, mut minus) = (0u32, 0u32);
            for &u in g.neighbors(v) {
                let u = u as usize;
                if important[u] {
                    if p[u] > 0.0 {
                        plus += 1;
                    } else {
                        minus += 1;
                    }
                }
            }
            match plus.cmp(&minus) {
                std::cmp::Ordering::Equal => random_sign(rng),
                std::cmp::Ordering::Less => 1.0,
                std::cmp::Ordering::Greater => -1.0,
            }
        })
        .collect()
}

pub fn scale_down(x: &[f64], init_scale: f64) -> Vec<f64> {
    x.iter().map(|v| v / init_scale).collect()
}

/// Unscaled initial mean with `lift_dim` columns, each drawn independently
/// from the configured strategy. `counter` selects a fresh stream family.
pub fn initial_mean(
    g: &Graph,
    cfg: &InitConfig,
    lift_dim: usize,
    seed: u64,
    counter: u64,
) -> Result<Vec<f64>> {
    let n = g.node_count();
    let mut mean = vec![0.0; n * lift_dim];
    for col in 0..lift_dim {
        let column = init_column(g, cfg, seed, counter, col as u64)?;
        for v in 0..n {
            mean[v * lift_dim + col] = column[v];
        }
    }
    Ok(mean)
}

/// One column of an initial mean.
pub fn init_column(
    g: &Graph,
    cfg: &InitConfig,
    seed: u64,
    counter: u64,
    column: u64,
) -> Result<Vec<f64>> {
    match cfg.method {
        InitMethod::Dui => dui_init(g, &mut rng::stream(seed, Domain::Init, counter, column)),
        InitMethod::Idi => {
            let important = important_nodes(g, cfg.beta);
            let pattern_counter = if cfg.idi_fixed_pattern { 0 } else { counter };
            let mut pattern_rng = rng::stream(seed, Domain::Init, pattern_counter, column);
            let signs: Vec<f64> = important
                .iter()
                .map(|&imp| {
                    if imp {
                        random_sign(&mut pattern_rng)
                    } else {
                        0.0
                    }
                })
                .collect();
            let mut tie_rng = rng::stream(seed, Domain::Init, counter, column ^ (1 << 63));
            Ok(idi_assign(g, &important, &signs, &mut tie_rng))
        }
    }
}

/// `members` samples of `mean + sqrt(eta) * N(0, I)`, clamped to the box.
/// Member `j` draws from the stream `(seed, counter, j)`.
pub fn gaussian_batch(
    mean: &[f64],
    lift_dim: usize,
    eta: f64,
    members: usize,
    seed: u64,
    counter: u64,
) -> Result<DenseState> {
    if lift_dim == 0 || !mean.len().is_multiple_of(lift_dim) {
        return Err(Error::validation(
            "mean length must be a multiple of the lifting dimension",
        ));
    }
    let n = mean.len() / lift_dim;
    let mut state = DenseState::zeros(n, lift_dim, members)?;
    let sd = eta.sqrt();
    par::for_each_chunk_mut(state.values_mut(), mean.len(), |j, member| {
        let mut r = rng::stream(seed, Domain::Gaussian, counter, j as u64);
        for (x, &mu) in member.iter_mut().zip(mean) {
            let noise: f64 = r.sample(StandardNormal);
            *x = (mu + sd * noise).clamp(-1.0, 1.0);
        }
    });
    Ok(state)
}
