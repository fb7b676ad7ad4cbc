//! Population-based evolutionary search over step size and iteration count.
//!
//! Candidates are `(e, T)` pairs with step size `alpha = 10^e`. Each round
//! evaluates the unevaluated candidates, keeps the better half verbatim, and
//! replaces the worse half with perturbed copies of random survivors:
//!
//! ```text
//! e' = clamp(e + 0.2 * N(0, 1), -4, -1)
//! T' = floor(T * (1 + 0.2 * (2 * U(0, 1) - 1)))
//! ```

use std::cmp::Ordering;

use log::warn;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::rng::StreamRng;

/// Clip range for perturbed exponents, independent of the sampling bounds.
pub const EXPONENT_CLIP: (f64, f64) = (-4.0, -1.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub t_lower: usize,
    pub t_upper: usize,
    pub e_lower: f64,
    pub e_upper: f64,
    pub population_size: usize,
    pub rounds: usize,
    /// Re-run the search every this many batches of a formulation; `None`
    /// runs it once, right after the first batch.
    pub rerun_every: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            t_lower: 3000,
            t_upper: 10_000,
            e_lower: -4.0,
            e_upper: -1.0,
            population_size: 6,
            rounds: 5,
            rerun_every: None,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.t_lower == 0 || self.t_lower > self.t_upper {
            return Err(Error::config(format!(
                "iteration bounds [{}, {}] are invalid",
                self.t_lower, self.t_upper
            )));
        }
        if !(self.e_lower <= self.e_upper) {
            return Err(Error::config(format!(
                "exponent bounds [{}, {}] are invalid",
                self.e_lower, self.e_upper
            )));
        }
        if self.population_size < 2 || !self.population_size.is_multiple_of(2) {
            return Err(Error::config(format!(
                "population size {} must be even and at least 2",
                self.population_size
            )));
        }
        if self.rounds == 0 {
            return Err(Error::config("at least one evolution round is required"));
        }
        if self.rerun_every == Some(0) {
            return Err(Error::config("search rerun interval must be positive"));
        }
        if (self.e_lower, self.e_upper) != EXPONENT_CLIP {
            warn!(
                "exponent bounds [{}, {}] differ from the perturbation clip range [{}, {}]",
                self.e_lower, self.e_upper, EXPONENT_CLIP.0, EXPONENT_CLIP.1
            );
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub exponent: f64,
    pub iterations: usize,
    pub fitness: Option<f64>,
}

impl Candidate {
    pub fn new(exponent: f64, iterations: usize) -> Self {
        Self {
            exponent,
            iterations,
            fitness: None,
        }
    }

    pub fn alpha(&self) -> f64 {
        10f64.powf(self.exponent)
    }
}

/// One evaluation in the search, as written to the search trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchEvent {
    pub round: usize,
    pub exponent: f64,
    pub iterations: usize,
    pub fitness: f64,
}

pub fn sample_population(cfg: &SearchConfig, rng: &mut StreamRng) -> Vec<Candidate> {
    (0..cfg.population_size)
        .map(|_| {
            let iterations = rng.random_range(cfg.t_lower..=cfg.t_upper);
            let exponent = if cfg.e_lower == cfg.e_upper {
                cfg.e_lower
            } else {
                rng.random_range(cfg.e_lower..=cfg.e_upper)
            };
            Candidate::new(exponent, iterations)
        })
        .collect()
}

/// `clamp(e + 0.2 * eps, -4, -1)` for a given standard-normal draw `eps`.
pub fn perturb_exponent_with(e: f64, eps: f64) -> f64 {
    (e + 0.2 * eps).clamp(EXPONENT_CLIP.0, EXPONENT_CLIP.1)
}

pub fn perturb_exponent(e: f64, rng: &mut StreamRng) -> f64 {
    perturb_exponent_with(e, rng.sample(StandardNormal))
}

/// `max(1, floor(t0 * (1 + 0.2 * (2u - 1))))` for a given uniform draw `u`.
pub fn perturb_iterations_with(t0: usize, u: f64) -> usize {
    let t = (t0 as f64 * (1.0 + 0.2 * (2.0 * u - 1.0))).floor();
    (t as usize).max(1)
}

pub fn perturb_iterations(t0: usize, rng: &mut StreamRng) -> usize {
    perturb_iterations_with(t0, rng.random::<f64>())
}

/// Higher fitness first; ties prefer fewer iterations, then smaller exponent.
fn rank(a: &Candidate, b: &Candidate) -> Ordering {
    let fa = a.fitness.unwrap_or(f64::NEG_INFINITY);
    let fb = b.fitness.unwrap_or(f64::NEG_INFINITY);
    fb.total_cmp(&fa)
        .then(a.iterations.cmp(&b.iterations))
        .then(a.exponent.total_cmp(&b.exponent))
}

#[derive(Debug, Clone)]
pub struct EvolveOutcome {
    pub best: Candidate,
    pub population: Vec<Candidate>,
    pub trace: Vec<SearchEvent>,
    pub evaluations: usize,
}

/// Runs `rounds` rounds of evaluate / rank / replace and returns the fittest
/// candidate.
///
/// `evaluate` receives the candidate and a unique evaluation index (assigned
/// in population order before any evaluation starts) so callers can derive
/// independent random streams. Evaluations within a round may run
/// concurrently. A failed evaluation scores `-inf`.
pub fn evolve<F, E>(
    population: Vec<Candidate>,
    evaluate: F,
    rounds: usize,
    rng: &mut StreamRng,
) -> Result<EvolveOutcome>
where
    F: Fn(&Candidate, u64) -> std::result::Result<f64, E> + Sync + Send,
    E: std::fmt::Display,
{
    if rounds == 0 {
        return Err(Error::config("at least one evolution round is required"));
    }
    let size = population.len();
    if size < 2 || !size.is_multiple_of(2) {
        return Err(Error::config(format!(
            "population size {size} must be even and at least 2"
        )));
    }
    let mut pop = population;
    let mut trace = Vec::new();
    let mut evaluations = 0usize;
    for round in 0..rounds {
        let pending: Vec<usize> = (0..size).filter(|&i| pop[i].fitness.is_none()).collect();
        let base = evaluations as u64;
        let scores = par::map_range(pending.len(), |k| {
            match evaluate(&pop[pending[k]], base + k as u64) {
                Ok(f) if !f.is_nan() => f,
                Ok(_) => f64::NEG_INFINITY,
                Err(e) => {
                    warn!("candidate evaluation failed: {e}");
                    f64::NEG_INFINITY
                }
            }
        });
        evaluations += pending.len();
        for (&i, &f) in pending.iter().zip(&scores) {
            pop[i].fitness = Some(f);
            trace.push(SearchEvent {
                round,
                exponent: pop[i].exponent,
                iterations: pop[i].iterations,
                fitness: f,
            });
        }
        pop.sort_by(rank);
        if round + 1 == rounds {
            break;
        }
        let keep = size / 2;
        for i in keep..size {
            let parent = &pop[rng.random_range(0..keep)];
            let exponent = perturb_exponent(parent.exponent, rng);
            let iterations = perturb_iterations(parent.iterations, rng);
            pop[i] = Candidate::new(exponent, iterations);
        }
    }
    Ok(EvolveOutcome {
        best: pop[0].clone(),
        population: pop,
        trace,
        evaluations,
    })
}
