//! Batched heavy-ball projected gradient ascent.
//!
//! Per member, starting from zero velocity:
//!
//! ```text
//! v <- momentum * v + L x
//! x <- clamp(x + alpha * v, -1, 1)
//! ```
//!
//! The velocity itself is never projected. With `momentum = 0` this is the
//! plain projected step `x <- clamp(x + alpha * L x)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{laplacian_apply_member, Graph};
use crate::objectives::lifted_value;
use crate::par;
use crate::state::DenseState;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AscentParams {
    pub alpha: f64,
    pub iterations: usize,
    pub momentum: f64,
}

impl AscentParams {
    pub fn new(alpha: f64, iterations: usize, momentum: f64) -> Result<Self> {
        let p = Self {
            alpha,
            iterations,
            momentum,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::config(format!(
                "step size {} must be positive",
                self.alpha
            )));
        }
        if self.iterations == 0 {
            return Err(Error::config("iteration count must be at least 1"));
        }
        if !(0.0..1.0).contains(&self.momentum) {
            return Err(Error::config(format!(
                "momentum {} must lie in [0, 1)",
                self.momentum
            )));
        }
        Ok(())
    }
}

/// Per-iteration observer: `(iteration, member, objective)`.
pub type TraceFn<'a> = &'a (dyn Fn(usize, usize, f64) + Sync);

#[derive(Clone, Copy)]
pub struct AscentOptions<'a> {
    /// Stop a member once further iterations provably cannot move it.
    pub early_exit: bool,
    pub trace: Option<TraceFn<'a>>,
}

impl Default for AscentOptions<'_> {
    fn default() -> Self {
        Self {
            early_exit: true,
            trace: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AscentStats {
    /// Iterations actually executed per member.
    pub iterations_run: Vec<usize>,
}

/// Runs `params.iterations` ascent steps on every member of `state` in place.
pub fn ascend(
    g: &Graph,
    state: &mut DenseState,
    params: &AscentParams,
    opts: AscentOptions<'_>,
) -> Result<AscentStats> {
    params.validate()?;
    Error::check_len(g.node_count(), state.node_count())?;
    let lift_dim = state.lift_dim();
    let len = state.member_len();
    let results = par::map_chunks_mut(state.values_mut(), len, |member, x| {
        ascend_member(g, x, lift_dim, params, &opts, member)
    });
    let mut iterations_run = Vec::with_capacity(results.len());
    for r in results {
        iterations_run.push(r?);
    }
    Ok(AscentStats { iterations_run })
}

/// Ascent on one node-major member; returns the number of iterations run.
pub fn ascend_member(
    g: &Graph,
    x: &mut [f64],
    lift_dim: usize,
    params: &AscentParams,
    opts: &AscentOptions<'_>,
    member: usize,
) -> Result<usize> {
    let mut dir = vec![0.0; x.len()];
    let mut vel = vec![0.0; x.len()];
    let (alpha, mu) = (params.alpha, params.momentum);
    for t in 0..params.iterations {
        laplacian_apply_member(g, x, lift_dim, &mut dir);
        let mut changed = false;
        let mut settled = true;
        for k in 0..x.len() {
            let v = mu * vel[k] + dir[k];
            let next = (x[k] + alpha * v).clamp(-1.0, 1.0);
            if !(v.is_finite() && next.is_finite()) {
                return Err(Error::NumericOverflow {
                    iteration: t,
                    member,
                });
            }
            vel[k] = v;
            if next != x[k] {
                changed = true;
            } else if settled {
                // the entry stays put forever if it is pinned to the boundary
                // with velocity and direction both pushing outward, or if
                // nothing acts on it at all
                let xk = x[k];
                settled = ((xk == 1.0 || xk == -1.0) && v * xk >= 0.0 && dir[k] * xk >= 0.0)
                    || (v == 0.0 && dir[k] == 0.0);
            }
            x[k] = next;
        }
        if let Some(trace) = opts.trace {
            trace(t, member, lifted_value(g, x, lift_dim));
        }
        if opts.early_exit && !changed && settled {
            return Ok(t + 1);
        }
    }
    Ok(params.iterations)
}

/// Flags members whose largest absolute entry change is at most `tol`.
pub fn detect_fixed_point(prev: &DenseState, next: &DenseState, tol: f64) -> Result<Vec<bool>> {
    prev.same_shape(next)?;
    Ok((0..prev.members())
        .map(|j| {
            prev.member(j)
                .iter()
                .zip(next.member(j))
                .all(|(a, b)| (a - b).abs() <= tol)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::objectives::is_maxcut_fixed_point_unlifted;

    fn run(g: &Graph, x: &[f64], alpha: f64, mu: f64, t: usize) -> Vec<f64> {
        let mut s = DenseState::from_vector(x.to_vec()).unwrap();
        ascend(
            g,
            &mut s,
            &AscentParams::new(alpha, t, mu).unwrap(),
            AscentOptions::default(),
        )
        .unwrap();
        s.into_values()
    }

    #[test]
    fn one_step_hand_computation() {
        let x = run(&single_edge(), &[0.1, -0.1], 0.5, 0.0, 1);
        assert!((x[0] - 0.2).abs() < 1e-15 && (x[1] + 0.2).abs() < 1e-15);
    }

    #[test]
    fn constant_vector_is_untouched() {
        let g = petersen();
        for (alpha, mu, t) in [(0.1, 0.0, 5), (3.0, 0.9, 40), (1e-4, 0.5, 1)] {
            assert_eq!(run(&g, &[2.5e-4; 10], alpha, mu, t), vec![2.5e-4; 10]);
        }
    }

    #[test]
    fn large_step_saturates_to_fixed_point() {
        let g = single_edge();
        let x = run(&g, &[0.1, -0.1], 10.0, 0.0, 3);
        assert_eq!(x, vec![1.0, -1.0]);
        assert!(is_maxcut_fixed_point_unlifted(&g, &x, 10.0).unwrap());
    }

    #[test]
    fn early_exit_does_not_change_results() {
        let g = cycle(7);
        let x0: Vec<f64> = (0..7).map(|v| ((v * 5 % 7) as f64 - 3.0) * 1e-3).collect();
        let p = AscentParams::new(0.3, 400, 0.9).unwrap();
        let mut a = DenseState::from_vector(x0.clone()).unwrap();
        let mut b = a.clone();
        let sa = ascend(&g, &mut a, &p, AscentOptions::default()).unwrap();
        ascend(
            &g,
            &mut b,
            &p,
            AscentOptions {
                early_exit: false,
                trace: None,
            },
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(sa.iterations_run[0] < 400);
    }

    #[test]
    fn overflow_is_reported() {
        // a non-finite entry poisons the direction on the first step
        let mut s = DenseState::from_vector(vec![f64::NAN, 0.0]).unwrap();
        let err = ascend(
            &single_edge(),
            &mut s,
            &AscentParams::new(0.1, 3, 0.0).unwrap(),
            AscentOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::NumericOverflow {
                iteration: 0,
                member: 0
            }
        ));
    }

    #[test]
    fn params_validation() {
        assert!(AscentParams::new(0.0, 1, 0.0).is_err());
        assert!(AscentParams::new(0.1, 0, 0.0).is_err());
        assert!(AscentParams::new(0.1, 1, 1.0).is_err());
        assert!(AscentParams::new(0.1, 1, 0.9).is_ok());
    }

    #[test]
    fn trace_sees_every_iteration() {
        use std::sync::Mutex;
        let seen = Mutex::new(Vec::new());
        let cb = |t: usize, m: usize, f: f64| seen.lock().unwrap().push((t, m, f));
        let mut s = DenseState::from_vector(vec![0.1, -0.1]).unwrap();
        ascend(
            &single_edge(),
            &mut s,
            &AscentParams::new(0.5, 2, 0.0).unwrap(),
            AscentOptions {
                early_exit: false,
                trace: Some(&cb),
            },
        )
        .unwrap();
        let seen = seen.into_inner().unwrap();
        assert_eq!(seen.len(), 2);
        assert!((seen[0].2 - 0.16).abs() < 1e-12);
    }

    #[test]
    fn detect_fixed_point_examples() {
        let a = DenseState::from_values(2, 1, 2, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        assert_eq!(detect_fixed_point(&a, &a, 0.0).unwrap(), vec![true, true]);
        let mut b = a.clone();
        b.member_mut(1)[0] += 1e-3;
        assert_eq!(detect_fixed_point(&a, &b, 1e-6).unwrap(), vec![true, false]);

        let g = single_edge();
        let p = AscentParams::new(10.0, 1, 0.0).unwrap();
        let mut s = DenseState::from_vector(vec![0.1, -0.1]).unwrap();
        let mut prev = s.clone();
        let mut flags = Vec::new();
        for _ in 0..4 {
            ascend(&g, &mut s, &p, AscentOptions::default()).unwrap();
            flags.push(detect_fixed_point(&prev, &s, 0.0).unwrap()[0]);
            prev = s.clone();
        }
        // (0.1,-0.1) -> (1,-1) needs one step with alpha = 10 (0.1 + 10*0.2 = 2.1)
        assert_eq!(flags, vec![false, true, true, true]);
    }
}
