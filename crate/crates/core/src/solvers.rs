//! Batch orchestration for the unlifted, lifted, and dimension-alternating
//! solvers.
//!
//! Every batch draws `batch_size` Gaussian samples around a mean, runs the
//! ascent engine on all of them, rounds each member, and keeps the best cut.
//! The first batch is centered at a degree-based initial point; later batches
//! are centered at the best binary vector found so far (the incumbent).
//! Batches run sequentially, members in parallel.

use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evo::{evolve, sample_population, Candidate, SearchConfig, SearchEvent};
use crate::graph::Graph;
use crate::init::{gaussian_batch, init_column, initial_mean, scale_down, InitConfig};
use crate::objectives::{
    cut_value_unchecked, round_lifted, round_unlifted, signed_encoding, CutSolution, SolutionMeta,
};
use crate::par;
use crate::pga::{ascend, AscentOptions, AscentParams};
use crate::rng::{self, Domain};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Pquco,
    Pluco,
    Pdeco,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Pquco => "pquco",
            Algorithm::Pluco => "pluco",
            Algorithm::Pdeco => "pdeco",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// How a lifted phase of the alternating solver builds its mean.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoCarry {
    /// Column 0 holds the incumbent, the other columns come from the init method.
    IncumbentColumn,
    /// Every column comes from the init method.
    Fresh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Unlifted,
    Lifted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub batch_size: usize,
    pub lift_dim: usize,
    /// Step size, iterations and momentum for unlifted batches (and lifted
    /// batches of the lifted solver).
    pub ascent: AscentParams,
    /// Parameters for the lifted phases of the alternating solver; falls back
    /// to `ascent` when unset.
    pub lifted_ascent: Option<AscentParams>,
    pub init: InitConfig,
    pub num_batches: usize,
    /// Checked between batches only.
    pub time_budget_s: Option<f64>,
    pub search: Option<SearchConfig>,
    pub deco_carry: DecoCarry,
    /// Consecutive batches per phase of the alternating solver.
    pub deco_phase_batches: usize,
    pub early_exit: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            algorithm: Algorithm::Pdeco,
            batch_size: 64,
            lift_dim: 2,
            ascent: AscentParams {
                alpha: 0.05,
                iterations: 500,
                momentum: 0.9,
            },
            lifted_ascent: None,
            init: InitConfig::default(),
            num_batches: 3,
            time_budget_s: None,
            search: None,
            deco_carry: DecoCarry::IncumbentColumn,
            deco_phase_batches: 1,
            early_exit: true,
        }
    }
}

impl SolverConfig {
    pub fn with_algorithm(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.batch_size == 0 {
            return Err(Error::config("batch size must be at least 1"));
        }
        if self.num_batches == 0 {
            return Err(Error::config("number of batches must be at least 1"));
        }
        if self.lift_dim == 0 {
            return Err(Error::config("lifting dimension must be at least 1"));
        }
        if self.algorithm != Algorithm::Pquco && self.lift_dim < 2 {
            return Err(Error::config(format!(
                "{} needs a lifting dimension of at least 2, got {}",
                self.algorithm, self.lift_dim
            )));
        }
        if self.deco_phase_batches == 0 {
            return Err(Error::config("phase length must be at least 1"));
        }
        if let Some(b) = self.time_budget_s {
            if !(b > 0.0) {
                return Err(Error::config("time budget must be positive"));
            }
        }
        self.ascent.validate()?;
        if let Some(p) = &self.lifted_ascent {
            p.validate()?;
        }
        self.init.validate()?;
        if let Some(s) = &self.search {
            s.validate()?;
        }
        Ok(())
    }

    fn params_for(&self, f: Formulation) -> AscentParams {
        match (self.algorithm, f) {
            (Algorithm::Pdeco, Formulation::Lifted) => self.lifted_ascent.unwrap_or(self.ascent),
            _ => self.ascent,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchRecord {
    pub component: usize,
    pub index: usize,
    pub formulation: Formulation,
    pub alpha: f64,
    pub iterations: usize,
    pub batch_best: u64,
    /// Best cut seen so far, including this batch.
    pub incumbent: u64,
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchRecord {
    pub component: usize,
    pub after_batch: usize,
    pub formulation: Formulation,
    pub winner: Candidate,
    pub evaluations: usize,
    pub events: Vec<SearchEvent>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTimings {
    pub init_s: f64,
    pub ascent_s: f64,
    pub rounding_s: f64,
    pub search_s: f64,
    pub total_s: f64,
}

impl StageTimings {
    fn add(&mut self, other: &StageTimings) {
        self.init_s += other.init_s;
        self.ascent_s += other.ascent_s;
        self.rounding_s += other.rounding_s;
        self.search_s += other.search_s;
        self.total_s += other.total_s;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub best: CutSolution,
    pub batches: Vec<BatchRecord>,
    pub searches: Vec<SearchRecord>,
    pub timings: StageTimings,
    pub batches_run: usize,
}

struct BatchOutcome {
    assignment: Vec<u8>,
    cut: u64,
    member: usize,
}

/// One batch: sample around `mean` (unscaled), ascend, round, keep the best.
fn run_batch(
    g: &Graph,
    cfg: &SolverConfig,
    seed: u64,
    counter: u64,
    lift_dim: usize,
    mean: &[f64],
    params: &AscentParams,
    timings: Option<&mut StageTimings>,
) -> Result<BatchOutcome> {
    let t0 = Instant::now();
    let scaled = scale_down(mean, cfg.init.init_scale);
    let mut state = gaussian_batch(
        &scaled,
        lift_dim,
        cfg.init.effective_eta(),
        cfg.batch_size,
        seed,
        counter,
    )?;
    let t1 = Instant::now();
    ascend(
        g,
        &mut state,
        params,
        AscentOptions {
            early_exit: cfg.early_exit,
            trace: None,
        },
    )?;
    let t2 = Instant::now();
    let cuts: Vec<(Vec<u8>, u64)> = par::map_range(state.members(), |j| {
        let x = state.member(j);
        let z = if lift_dim == 1 {
            round_unlifted(x)
        } else {
            round_lifted(x, lift_dim)
        };
        let c = cut_value_unchecked(g, &z);
        (z, c)
    });
    let mut best = 0usize;
    for (j, (_, c)) in cuts.iter().enumerate() {
        if *c > cuts[best].1 {
            best = j;
        }
    }
    let (assignment, cut) = cuts.into_iter().nth(best).expect("non-empty batch");
    if let Some(t) = timings {
        t.init_s += (t1 - t0).as_secs_f64();
        t.ascent_s += (t2 - t1).as_secs_f64();
        t.rounding_s += t2.elapsed().as_secs_f64();
    }
    Ok(BatchOutcome {
        assignment,
        cut,
        member: best,
    })
}

struct Run<'a> {
    g: &'a Graph,
    cfg: &'a SolverConfig,
    seed: u64,
    component: usize,
    counter: u64,
    incumbent: Option<CutSolution>,
    unlifted_params: AscentParams,
    lifted_params: AscentParams,
    batches: Vec<BatchRecord>,
    searches: Vec<SearchRecord>,
    timings: StageTimings,
    formulation_batches: [usize; 2],
    start: Instant,
    deadline: Option<Duration>,
}

impl<'a> Run<'a> {
    fn new(g: &'a Graph, cfg: &'a SolverConfig, seed: u64, component: usize) -> Self {
        Self {
            g,
            cfg,
            seed,
            component,
            counter: 0,
            incumbent: None,
            unlifted_params: cfg.params_for(Formulation::Unlifted),
            lifted_params: cfg.params_for(Formulation::Lifted),
            batches: Vec::new(),
            searches: Vec::new(),
            timings: StageTimings::default(),
            formulation_batches: [0, 0],
            start: Instant::now(),
            deadline: cfg.time_budget_s.map(Duration::from_secs_f64),
        }
    }

    fn lift_dim(&self, f: Formulation) -> usize {
        match f {
            Formulation::Unlifted => 1,
            Formulation::Lifted => self.cfg.lift_dim,
        }
    }

    fn params(&self, f: Formulation) -> AscentParams {
        match f {
            Formulation::Unlifted => self.unlifted_params,
            Formulation::Lifted => self.lifted_params,
        }
    }

    /// Mean (unscaled) for the next batch of formulation `f`, built with the
    /// init streams of `counter`.
    fn next_mean(&self, f: Formulation, counter: u64) -> Result<Vec<f64>> {
        let l = self.lift_dim(f);
        let Some(inc) = &self.incumbent else {
            return initial_mean(self.g, &self.cfg.init, l, self.seed, counter);
        };
        let signed = inc.signed();
        if l == 1 {
            return Ok(signed);
        }
        let n = self.g.node_count();
        let mut mean = vec![0.0; n * l];
        let fresh_from = match (self.cfg.algorithm, self.cfg.deco_carry) {
            (Algorithm::Pdeco, DecoCarry::IncumbentColumn) => 1,
            (Algorithm::Pdeco, DecoCarry::Fresh) => 0,
            _ => l,
        };
        for col in 0..l {
            let column = if col < fresh_from {
                signed.clone()
            } else {
                init_column(self.g, &self.cfg.init, self.seed, counter, col as u64)?
            };
            for v in 0..n {
                mean[v * l + col] = column[v];
            }
        }
        Ok(mean)
    }

    fn offer(&mut self, assignment: Vec<u8>, cut: u64, batch_index: usize, member: usize) {
        let better = self
            .incumbent
            .as_ref()
            .is_none_or(|inc| cut > inc.cut_value);
        if better {
            self.incumbent = Some(CutSolution {
                assignment,
                cut_value: cut,
                meta: SolutionMeta {
                    algorithm: self.cfg.algorithm.name().to_string(),
                    seed: self.seed,
                    batch_index,
                    member_index: member,
                    wall_time_s: 0.0,
                },
            });
        }
    }

    fn batch(&mut self, f: Formulation) -> Result<()> {
        let counter = self.counter;
        self.counter += 1;
        let mean = self.next_mean(f, counter)?;
        let params = self.params(f);
        let started = Instant::now();
        let out = run_batch(
            self.g,
            self.cfg,
            self.seed,
            counter,
            self.lift_dim(f),
            &mean,
            &params,
            Some(&mut self.timings),
        )?;
        let index = self.batches.len();
        self.offer(out.assignment, out.cut, index, out.member);
        self.batches.push(BatchRecord {
            component: self.component,
            index,
            formulation: f,
            alpha: params.alpha,
            iterations: params.iterations,
            batch_best: out.cut,
            incumbent: self.incumbent.as_ref().map_or(0, |s| s.cut_value),
            wall_time_s: started.elapsed().as_secs_f64(),
        });
        let slot = f as usize;
        self.formulation_batches[slot] += 1;
        if let Some(search) = &self.cfg.search {
            let done = self.formulation_batches[slot];
            let due = match search.rerun_every {
                None => done == 1,
                Some(k) => done == 1 || done.is_multiple_of(k),
            };
            if due && !self.out_of_time() {
                self.search(f, search)?;
            }
        }
        Ok(())
    }

    /// Evolutionary search for `(alpha, T)` of formulation `f`; every
    /// candidate is scored by one full batch from the current incumbent.
    fn search(&mut self, f: Formulation, search: &SearchConfig) -> Result<()> {
        let started = Instant::now();
        let search_id = self.searches.len() as u64;
        let mut rng = rng::stream(self.seed, Domain::Search, self.component as u64, search_id);
        let population = sample_population(search, &mut rng);
        let max_evals = search.population_size + (search.rounds - 1) * (search.population_size / 2);
        let base = self.counter;
        self.counter += max_evals as u64;
        let l = self.lift_dim(f);
        let momentum = self.params(f).momentum;
        let found: Mutex<Vec<(u64, BatchOutcome)>> = Mutex::new(Vec::new());
        let means: Vec<Vec<f64>> = (0..max_evals as u64)
            .map(|k| self.next_mean(f, base + k))
            .collect::<Result<_>>()?;
        let (g, cfg, seed) = (self.g, self.cfg, self.seed);
        let outcome = evolve(
            population,
            |cand: &Candidate, k: u64| -> Result<f64> {
                let params = AscentParams::new(cand.alpha(), cand.iterations, momentum)?;
                let out = run_batch(g, cfg, seed, base + k, l, &means[k as usize], &params, None)?;
                let cut = out.cut as f64;
                found.lock().unwrap().push((k, out));
                Ok(cut)
            },
            search.rounds,
            &mut rng,
        )?;
        let mut found = found.into_inner().unwrap();
        found.sort_by(|a, b| b.1.cut.cmp(&a.1.cut).then(a.0.cmp(&b.0)));
        let after_batch = self.batches.len().saturating_sub(1);
        if let Some((_, best)) = found.into_iter().next() {
            self.offer(best.assignment, best.cut, after_batch, best.member);
        }
        let winner = outcome.best.clone();
        let params = AscentParams::new(winner.alpha(), winner.iterations, momentum)?;
        match f {
            Formulation::Unlifted => self.unlifted_params = params,
            Formulation::Lifted => self.lifted_params = params,
        }
        self.searches.push(SearchRecord {
            component: self.component,
            after_batch,
            formulation: f,
            winner,
            evaluations: outcome.evaluations,
            events: outcome.trace,
        });
        self.timings.search_s += started.elapsed().as_secs_f64();
        Ok(())
    }

    fn out_of_time(&self) -> bool {
        self.deadline.is_some_and(|d| self.start.elapsed() >= d)
    }

    fn formulation_for(&self, index: usize) -> Formulation {
        match self.cfg.algorithm {
            Algorithm::Pquco => Formulation::Unlifted,
            Algorithm::Pluco => Formulation::Lifted,
            Algorithm::Pdeco => {
                if (index / self.cfg.deco_phase_batches).is_multiple_of(2) {
                    Formulation::Unlifted
                } else {
                    Formulation::Lifted
                }
            }
        }
    }

    fn finish(mut self) -> Result<SolveReport> {
        for index in 0..self.cfg.num_batches {
            if index > 0 && self.out_of_time() {
                break;
            }
            let f = self.formulation_for(index);
            self.batch(f)?;
        }
        self.timings.total_s = self.start.elapsed().as_secs_f64();
        let mut best = self.incumbent.expect("at least one batch ran");
        best.meta.wall_time_s = self.timings.total_s;
        Ok(SolveReport {
            best,
            batches_run: self.batches.len(),
            batches: self.batches,
            searches: self.searches,
            timings: self.timings,
        })
    }
}

fn solve_connected(
    g: &Graph,
    cfg: &SolverConfig,
    seed: u64,
    component: usize,
) -> Result<SolveReport> {
    cfg.validate()?;
    if g.edge_count() == 0 {
        return Err(Error::validation("graph has no edges; every cut is 0"));
    }
    Run::new(g, cfg, seed, component).finish()
}

fn solve_as(g: &Graph, cfg: &SolverConfig, seed: u64, algorithm: Algorithm) -> Result<SolveReport> {
    if cfg.algorithm == algorithm {
        solve_connected(g, cfg, seed, 0)
    } else {
        let cfg = SolverConfig {
            algorithm,
            ..cfg.clone()
        };
        solve_connected(g, &cfg, seed, 0)
    }
}

/// Batched projected gradient ascent on the relaxed objective, rounding by sign.
pub fn pquco(g: &Graph, cfg: &SolverConfig, seed: u64) -> Result<SolveReport> {
    solve_as(g, cfg, seed, Algorithm::Pquco)
}

/// Batched ascent on the lifted `n x l` objective, rounding by row sums.
pub fn pluco(g: &Graph, cfg: &SolverConfig, seed: u64) -> Result<SolveReport> {
    solve_as(g, cfg, seed, Algorithm::Pluco)
}

/// Alternates unlifted and lifted phases, threading the incumbent between them.
pub fn pdeco(g: &Graph, cfg: &SolverConfig, seed: u64) -> Result<SolveReport> {
    solve_as(g, cfg, seed, Algorithm::Pdeco)
}

/// Runs the configured algorithm on the whole graph without splitting it.
pub fn solve(g: &Graph, cfg: &SolverConfig, seed: u64) -> Result<SolveReport> {
    solve_connected(g, cfg, seed, 0)
}

/// Solves every connected component independently and concatenates the
/// assignments. Components with fewer than two nodes are assigned side 0.
/// Component 0 uses `seed` itself; later components derive their own seeds.
pub fn solve_per_component(g: &Graph, cfg: &SolverConfig, seed: u64) -> Result<SolveReport> {
    cfg.validate()?;
    let started = Instant::now();
    let mut assignment = vec![0u8; g.node_count()];
    let mut total = 0u64;
    let mut batches = Vec::new();
    let mut searches = Vec::new();
    let mut timings = StageTimings::default();
    let mut batches_run = 0;
    let mut best_meta: Option<SolutionMeta> = None;
    for (idx, nodes) in g.connected_components().into_iter().enumerate() {
        if nodes.len() < 2 {
            continue;
        }
        let sub_seed = if idx == 0 {
            seed
        } else {
            rng::derive(seed, Domain::Component, idx as u64, 0)
        };
        let mut sub_cfg = cfg.clone();
        if let Some(budget) = cfg.time_budget_s {
            let left = budget - started.elapsed().as_secs_f64();
            sub_cfg.time_budget_s = Some(left.max(1e-9));
        }
        let sub = if nodes.len() == g.node_count() {
            solve_connected(g, &sub_cfg, sub_seed, idx)?
        } else {
            solve_connected(&g.induced_subgraph(&nodes)?, &sub_cfg, sub_seed, idx)?
        };
        for (local, &v) in nodes.iter().enumerate() {
            assignment[v] = sub.best.assignment[local];
        }
        total += sub.best.cut_value;
        batches_run += sub.batches_run;
        batches.extend(sub.batches);
        searches.extend(sub.searches);
        timings.add(&sub.timings);
        best_meta.get_or_insert(sub.best.meta);
    }
    timings.total_s = started.elapsed().as_secs_f64();
    let mut meta = best_meta.unwrap_or(SolutionMeta {
        algorithm: cfg.algorithm.name().to_string(),
        seed,
        batch_index: 0,
        member_index: 0,
        wall_time_s: 0.0,
    });
    meta.seed = seed;
    meta.wall_time_s = timings.total_s;
    Ok(SolveReport {
        best: CutSolution {
            assignment,
            cut_value: total,
            meta,
        },
        batches,
        searches,
        timings,
        batches_run,
    })
}

/// `{-1,+1}` encoding of a solution, e.g. for fixed-point checks.
pub fn signed_assignment(sol: &CutSolution) -> Vec<f64> {
    signed_encoding(&sol.assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::objectives::{cut_value, is_maxcut_fixed_point_unlifted};
    use crate::oracle::brute_force_maxcut;

    fn cfg(algorithm: Algorithm, batch: usize, alpha: f64, iters: usize) -> SolverConfig {
        SolverConfig {
            algorithm,
            batch_size: batch,
            ascent: AscentParams {
                alpha,
                iterations: iters,
                momentum: 0.9,
            },
            ..SolverConfig::default()
        }
    }

    #[test]
    fn pquco_small_optima() {
        let c = cfg(Algorithm::Pquco, 4, 0.1, 50);
        assert_eq!(pquco(&single_edge(), &c, 1).unwrap().best.cut_value, 1);
        let c = cfg(Algorithm::Pquco, 32, 0.1, 200);
        assert_eq!(pquco(&complete(4), &c, 1).unwrap().best.cut_value, 4);
    }

    #[test]
    fn pquco_star_with_idi() {
        let c = cfg(Algorithm::Pquco, 8, 0.1, 100);
        for seed in 0..5 {
            assert_eq!(pquco(&star(3), &c, seed).unwrap().best.cut_value, 3);
        }
    }

    #[test]
    fn pluco_small_optima() {
        let c = cfg(Algorithm::Pluco, 8, 0.1, 100);
        assert_eq!(pluco(&single_edge(), &c, 2).unwrap().best.cut_value, 1);
        let c = cfg(Algorithm::Pluco, 64, 0.1, 200);
        assert_eq!(pluco(&cycle(5), &c, 2).unwrap().best.cut_value, 4);
    }

    #[test]
    fn pluco_without_noise_stays_at_constant_matrix() {
        // with DUI on a regular graph the mean is zero, and with no noise
        // every member starts at X = 0 = e_n cᵀ
        let mut c = cfg(Algorithm::Pluco, 4, 0.1, 100);
        c.init.method = crate::init::InitMethod::Dui;
        c.init.eta = 0.0;
        c.num_batches = 1;
        assert_eq!(pluco(&complete(4), &c, 0).unwrap().best.cut_value, 0);
        c.init.eta = 0.8;
        assert!(pluco(&complete(4), &c, 0).unwrap().best.cut_value > 0);
    }

    #[test]
    fn pdeco_small_optima() {
        let c = cfg(Algorithm::Pdeco, 16, 0.1, 100);
        assert_eq!(pdeco(&single_edge(), &c, 3).unwrap().best.cut_value, 1);
        let mut c = cfg(Algorithm::Pdeco, 64, 0.1, 200);
        c.num_batches = 4;
        assert_eq!(pdeco(&cycle(5), &c, 3).unwrap().best.cut_value, 4);
        let c = cfg(Algorithm::Pdeco, 64, 0.05, 500);
        let r = pdeco(&petersen(), &c, 3).unwrap();
        assert_eq!(
            r.best.cut_value,
            brute_force_maxcut(&petersen()).unwrap().optimum
        );
    }

    #[test]
    fn pdeco_alternates_phases() {
        let mut c = cfg(Algorithm::Pdeco, 4, 0.1, 20);
        c.num_batches = 5;
        c.deco_phase_batches = 2;
        let r = pdeco(&cycle(6), &c, 0).unwrap();
        let phases: Vec<_> = r.batches.iter().map(|b| b.formulation).collect();
        use Formulation::*;
        assert_eq!(phases, vec![Unlifted, Unlifted, Lifted, Lifted, Unlifted]);
    }

    #[test]
    fn incumbent_is_monotone_and_consistent() {
        let g = crate::graph::generate_er(40, 0.2, 5).unwrap();
        for alg in [Algorithm::Pquco, Algorithm::Pluco, Algorithm::Pdeco] {
            let mut c = cfg(alg, 8, 0.05, 200);
            c.num_batches = 5;
            let r = solve(&g, &c, 11).unwrap();
            assert!(r
                .batches
                .windows(2)
                .all(|w| w[0].incumbent <= w[1].incumbent));
            assert_eq!(r.batches.last().unwrap().incumbent, r.best.cut_value);
            assert_eq!(cut_value(&g, &r.best.assignment).unwrap(), r.best.cut_value);
            let x = signed_assignment(&r.best);
            assert!(is_maxcut_fixed_point_unlifted(&g, &x, 0.1).unwrap());
        }
    }

    #[test]
    fn deterministic_given_seed() {
        let g = crate::graph::generate_er(30, 0.3, 1).unwrap();
        let c = cfg(Algorithm::Pdeco, 8, 0.05, 100);
        let a = solve(&g, &c, 4).unwrap();
        let b = solve(&g, &c, 4).unwrap();
        assert_eq!(a.best.assignment, b.best.assignment);
        assert_eq!(a.batches.len(), b.batches.len());
    }

    #[test]
    fn per_component() {
        let c = cfg(Algorithm::Pquco, 8, 0.1, 100);
        let two = disjoint_union(&single_edge(), &single_edge());
        assert_eq!(solve_per_component(&two, &c, 0).unwrap().best.cut_value, 2);
        let iso = disjoint_union(&single_edge(), &edgeless(1));
        let r = solve_per_component(&iso, &c, 0).unwrap();
        assert_eq!(r.best.cut_value, 1);
        assert_eq!(r.best.assignment[2], 0);
        let tri = disjoint_union(&complete(3), &complete(3));
        let r = solve_per_component(&tri, &c, 0).unwrap();
        assert_eq!(r.best.cut_value, 4);
        assert_eq!(cut_value(&tri, &r.best.assignment).unwrap(), 4);
        let r = solve_per_component(&edgeless(3), &c, 0).unwrap();
        assert_eq!((r.best.cut_value, r.batches_run), (0, 0));
    }

    #[test]
    fn edgeless_graph_rejected_by_direct_solvers() {
        let c = cfg(Algorithm::Pquco, 2, 0.1, 10);
        assert!(matches!(
            pquco(&edgeless(3), &c, 0),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn config_validation() {
        let mut c = SolverConfig::with_algorithm(Algorithm::Pluco);
        c.lift_dim = 1;
        assert!(matches!(c.validate(), Err(Error::Config(_))));
        c.algorithm = Algorithm::Pquco;
        assert!(c.validate().is_ok());
        c.batch_size = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn search_runs_once_after_first_batch() {
        let g = crate::graph::generate_er(30, 0.3, 2).unwrap();
        let mut c = cfg(Algorithm::Pquco, 4, 0.05, 100);
        c.num_batches = 3;
        c.search = Some(SearchConfig {
            t_lower: 50,
            t_upper: 150,
            population_size: 4,
            rounds: 3,
            ..SearchConfig::default()
        });
        let r = pquco(&g, &c, 9).unwrap();
        assert_eq!(r.searches.len(), 1);
        let s = &r.searches[0];
        assert_eq!(s.after_batch, 0);
        assert_eq!(s.evaluations, 4 + 2 * 2);
        assert_eq!(r.batches[1].iterations, s.winner.iterations);
        assert!(s
            .events
            .iter()
            .all(|e| e.fitness <= r.best.cut_value as f64));

        c.search.as_mut().unwrap().rerun_every = Some(2);
        let r = pquco(&g, &c, 9).unwrap();
        assert_eq!(r.searches.len(), 2);
    }

    #[test]
    fn time_budget_stops_between_batches() {
        let g = crate::graph::generate_er(60, 0.3, 2).unwrap();
        let mut c = cfg(Algorithm::Pquco, 4, 0.05, 100);
        c.num_batches = 1_000_000;
        c.time_budget_s = Some(0.2);
        let r = pquco(&g, &c, 0).unwrap();
        assert!(r.batches_run >= 1 && r.batches_run < 1_000_000);
    }
}
