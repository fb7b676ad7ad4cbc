//! Self-verifying run records and aggregate tables for the benchmark harness.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objectives::cut_value;
use crate::solvers::{
    BatchRecord, Formulation, SearchRecord, SolveReport, SolverConfig, StageTimings,
};

/// Run-length encoded bit vector: `first` is the value of the first run and
/// runs alternate from there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RleBits {
    pub len: usize,
    pub first: u8,
    pub runs: Vec<usize>,
}

impl RleBits {
    pub fn encode(bits: &[u8]) -> Self {
        let mut runs = Vec::new();
        let mut iter = bits.iter().peekable();
        while let Some(&b) = iter.next() {
            let mut run = 1;
            while iter.peek() == Some(&&b) {
                iter.next();
                run += 1;
            }
            runs.push(run);
        }
        Self {
            len: bits.len(),
            first: bits.first().copied().unwrap_or(0),
            runs,
        }
    }

    pub fn decode(&self) -> Result<Vec<u8>> {
        if self.first > 1 {
            return Err(Error::validation("run-length bit must be 0 or 1"));
        }
        let mut out = Vec::with_capacity(self.len);
        let mut bit = self.first;
        for &run in &self.runs {
            out.extend(std::iter::repeat_n(bit, run));
            bit ^= 1;
        }
        Error::check_len(self.len, out.len())?;
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord {
    pub component: usize,
    pub phase: usize,
    pub formulation: Formulation,
    pub batches: usize,
    pub best_cut: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub algorithm: String,
    pub init: String,
    pub params_mode: String,
    pub seed: u64,
    pub config: SolverConfig,
    pub best_cut: u64,
    pub assignment: RleBits,
    pub batch_trace: Vec<BatchRecord>,
    pub phase_trace: Vec<PhaseRecord>,
    pub search_trace: Vec<SearchRecord>,
    pub timings: StageTimings,
    pub wall_time_s: f64,
    pub version: String,
}

fn phases(batches: &[BatchRecord]) -> Vec<PhaseRecord> {
    let mut out: Vec<PhaseRecord> = Vec::new();
    for b in batches {
        match out.last_mut() {
            Some(p) if p.formulation == b.formulation && p.component == b.component => {
                p.batches += 1;
                p.best_cut = p.best_cut.max(b.batch_best);
            }
            _ => out.push(PhaseRecord {
                component: b.component,
                phase: out.len(),
                formulation: b.formulation,
                batches: 1,
                best_cut: b.batch_best,
            }),
        }
    }
    out
}

impl RunRecord {
    pub fn new(
        graph_id: impl Into<String>,
        g: &Graph,
        cfg: &SolverConfig,
        params_mode: impl Into<String>,
        seed: u64,
        report: &SolveReport,
    ) -> Self {
        Self {
            graph_id: graph_id.into(),
            n: g.node_count(),
            m: g.edge_count(),
            algorithm: cfg.algorithm.name().to_string(),
            init: cfg.init.method.to_string(),
            params_mode: params_mode.into(),
            seed,
            config: cfg.clone(),
            best_cut: report.best.cut_value,
            assignment: RleBits::encode(&report.best.assignment),
            batch_trace: report.batches.clone(),
            phase_trace: phases(&report.batches),
            search_trace: report.searches.clone(),
            timings: report.timings.clone(),
            wall_time_s: report.timings.total_s,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Re-evaluates the stored assignment on `g` and checks it against the
    /// stored cut.
    pub fn verify(&self, g: &Graph) -> Result<bool> {
        let z = self.assignment.decode()?;
        Ok(cut_value(g, &z)? == self.best_cut)
    }

    /// Copy with every wall-clock field zeroed, for reproducibility checks.
    pub fn without_timings(&self) -> RunRecord {
        let mut r = self.clone();
        r.timings = StageTimings::default();
        r.wall_time_s = 0.0;
        for b in &mut r.batch_trace {
            b.wall_time_s = 0.0;
        }
        r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub algorithm: String,
    pub init: String,
    pub mean_cut: f64,
    /// Empty when timing aggregation is disabled (concurrent runs).
    pub mean_time_s: Option<f64>,
    pub n_runs: usize,
    pub lift: usize,
    pub params: String,
    pub min_cut: u64,
    pub max_cut: u64,
    pub std_cut: f64,
}

/// Groups records by (algorithm, init, lift, params mode) in order of first
/// appearance. Lift is reported as 1 for the unlifted solver.
pub fn aggregate(records: &[RunRecord], with_timing: bool) -> Vec<AggregateRow> {
    let key = |r: &RunRecord| {
        let lift = if r.algorithm == "pquco" {
            1
        } else {
            r.config.lift_dim
        };
        (
            r.algorithm.clone(),
            r.init.clone(),
            lift,
            r.params_mode.clone(),
        )
    };
    type Key = (String, String, usize, String);
    let mut groups: Vec<(Key, Vec<&RunRecord>)> = Vec::new();
    for r in records {
        let k = key(r);
        match groups.iter_mut().find(|(gk, _)| *gk == k) {
            Some((_, v)) => v.push(r),
            None => groups.push((k, vec![r])),
        }
    }
    groups
        .into_iter()
        .map(|((algorithm, init, lift, params), rs)| {
            let n = rs.len() as f64;
            let cuts: Vec<f64> = rs.iter().map(|r| r.best_cut as f64).collect();
            let mean_cut = cuts.iter().sum::<f64>() / n;
            let var = cuts.iter().map(|c| (c - mean_cut).powi(2)).sum::<f64>() / n;
            AggregateRow {
                algorithm,
                init,
                mean_cut,
                mean_time_s: with_timing.then(|| rs.iter().map(|r| r.wall_time_s).sum::<f64>() / n),
                n_runs: rs.len(),
                lift,
                params,
                min_cut: rs.iter().map(|r| r.best_cut).min().unwrap_or(0),
                max_cut: rs.iter().map(|r| r.best_cut).max().unwrap_or(0),
                std_cut: var.sqrt(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::solvers::{solve, Algorithm};

    #[test]
    fn rle_examples() {
        let r = RleBits::encode(&[0, 0, 0, 1, 1, 0]);
        assert_eq!((r.first, r.runs.clone()), (0, vec![3, 2, 1]));
        assert_eq!(r.decode().unwrap(), vec![0, 0, 0, 1, 1, 0]);
        let e = RleBits::encode(&[]);
        assert_eq!(e.decode().unwrap(), Vec::<u8>::new());
        let bad = RleBits {
            len: 4,
            first: 1,
            runs: vec![2],
        };
        assert!(bad.decode().is_err());
    }

    #[test]
    fn record_is_self_verifying() {
        let g = petersen();
        let cfg = SolverConfig {
            algorithm: Algorithm::Pdeco,
            batch_size: 8,
            num_batches: 4,
            ..SolverConfig::default()
        };
        let rep = solve(&g, &cfg, 1).unwrap();
        let rec = RunRecord::new("petersen", &g, &cfg, "manual", 1, &rep);
        assert!(rec.verify(&g).unwrap());
        assert_eq!(rec.phase_trace.len(), 4);
        let json = serde_json::to_string(&rec).unwrap();
        let back: RunRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
        let mut tampered = rec.clone();
        tampered.best_cut += 1;
        assert!(!tampered.verify(&g).unwrap());
    }

    #[test]
    fn aggregate_means() {
        let g = cycle(6);
        let mut records = Vec::new();
        for seed in 0..3 {
            let cfg = SolverConfig {
                algorithm: Algorithm::Pquco,
                batch_size: 4,
                num_batches: 1,
                ..SolverConfig::default()
            };
            let rep = solve(&g, &cfg, seed).unwrap();
            let mut rec = RunRecord::new("c6", &g, &cfg, "manual", seed, &rep);
            rec.best_cut = 4 + seed;
            rec.wall_time_s = seed as f64;
            records.push(rec);
        }
        let rows = aggregate(&records, true);
        assert_eq!(rows.len(), 1);
        assert!((rows[0].mean_cut - 5.0).abs() < 1e-9);
        assert_eq!(rows[0].mean_time_s, Some(1.0));
        assert_eq!(
            (rows[0].min_cut, rows[0].max_cut, rows[0].n_runs),
            (4, 6, 3)
        );
        assert!((rows[0].std_cut - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(aggregate(&records, false)[0].mean_time_s, None);
    }
}
