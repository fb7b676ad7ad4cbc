//! Relaxed (unlifted) and lifted quadratic objectives, box projection,
//! rounding, and the MaxCut fixed-point predicates.
//!
//! The ascent direction is `L x` (resp. `L X`), half the analytic gradient of
//! `xᵀLx`; the factor is folded into the step size.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_quadratic_form, laplacian_apply_member, Graph};
use crate::state::DenseState;

/// Allowed overshoot of the `[-1, 1]` box before an input is rejected.
pub const BOX_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionMeta {
    pub algorithm: String,
    pub seed: u64,
    pub batch_index: usize,
    pub member_index: usize,
    pub wall_time_s: f64,
}

/// A binary node assignment with its cut value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutSolution {
    pub assignment: Vec<u8>,
    pub cut_value: u64,
    pub meta: SolutionMeta,
}

impl CutSolution {
    /// The `{-1, +1}` encoding used as a re-centering mean (`1 -> +1`, `0 -> -1`).
    pub fn signed(&self) -> Vec<f64> {
        signed_encoding(&self.assignment)
    }
}

pub fn signed_encoding(z: &[u8]) -> Vec<f64> {
    z.iter().map(|&b| if b == 1 { 1.0 } else { -1.0 }).collect()
}

/// Number of edges whose endpoints fall on different sides of `z`.
pub fn cut_value(g: &Graph, z: &[u8]) -> Result<u64> {
    Error::check_len(g.node_count(), z.len())?;
    if let Some(v) = z.iter().position(|&b| b > 1) {
        return Err(Error::validation(format!(
            "assignment entry {v} is {}, expected 0 or 1",
            z[v]
        )));
    }
    Ok(cut_value_unchecked(g, z))
}

pub(crate) fn cut_value_unchecked(g: &Graph, z: &[u8]) -> u64 {
    g.edges()
        .filter(|&(u, v)| z[u as usize] != z[v as usize])
        .count() as u64
}

fn check_box(values: &[f64]) -> Result<()> {
    match values
        .iter()
        .position(|v| !(v.abs() <= 1.0 + BOX_TOLERANCE))
    {
        None => Ok(()),
        Some(k) => Err(Error::validation(format!(
            "entry {k} = {} lies outside [-1, 1]",
            values[k]
        ))),
    }
}

/// `xᵀLx = sum over edges (x_u - x_v)^2`.
pub fn quco_objective(g: &Graph, x: &[f64]) -> Result<f64> {
    Error::check_len(g.node_count(), x.len())?;
    check_box(x)?;
    Ok(edge_quadratic_form(g, x))
}

pub fn ascent_direction_unlifted(g: &Graph, x: &[f64]) -> Result<Vec<f64>> {
    Error::check_len(g.node_count(), x.len())?;
    let mut out = vec![0.0; x.len()];
    laplacian_apply_member(g, x, 1, &mut out);
    Ok(out)
}

/// `tr(XᵀLX)` for a node-major `n x lift_dim` matrix.
pub fn luco_objective(g: &Graph, x: &[f64], lift_dim: usize) -> Result<f64> {
    check_matrix(g, x, lift_dim)?;
    check_box(x)?;
    Ok(lifted_value(g, x, lift_dim))
}

pub(crate) fn lifted_value(g: &Graph, x: &[f64], lift_dim: usize) -> f64 {
    g.edges()
        .map(|(u, v)| {
            let (u, v) = (u as usize * lift_dim, v as usize * lift_dim);
            (0..lift_dim)
                .map(|i| {
                    let d = x[u + i] - x[v + i];
                    d * d
                })
                .sum::<f64>()
        })
        .sum()
}

pub fn ascent_direction_lifted(g: &Graph, x: &[f64], lift_dim: usize) -> Result<Vec<f64>> {
    check_matrix(g, x, lift_dim)?;
    let mut out = vec![0.0; x.len()];
    laplacian_apply_member(g, x, lift_dim, &mut out);
    Ok(out)
}

fn check_matrix(g: &Graph, x: &[f64], lift_dim: usize) -> Result<()> {
    if lift_dim == 0 {
        return Err(Error::validation("lifting dimension must be at least 1"));
    }
    Error::check_len(g.node_count() * lift_dim, x.len())
}

#[inline]
pub fn project_slice(values: &mut [f64]) {
    for v in values {
        *v = v.clamp(-1.0, 1.0);
    }
}

/// Clamps every entry of every member to `[-1, 1]`.
pub fn project_box(mut state: DenseState) -> DenseState {
    project_slice(state.values_mut());
    state
}

/// `z_v = 1` iff `x_v > 0` (zero rounds to 0).
pub fn round_unlifted(x: &[f64]) -> Vec<u8> {
    x.iter().map(|&v| u8::from(v > 0.0)).collect()
}

/// `z_v = 1` iff the row sum of `X` is `>= 0` (zero rounds to 1).
pub fn round_lifted(x: &[f64], lift_dim: usize) -> Vec<u8> {
    x.chunks(lift_dim)
        .map(|row| u8::from(row.iter().sum::<f64>() >= 0.0))
        .collect()
}

fn boundary_valued(x: &[f64]) -> bool {
    x.iter().all(|&v| v == 1.0 || v == -1.0)
}

/// True iff `x ∈ {-1,1}^n`, `x` is not constant, and one projected ascent
/// step with step size `alpha` returns `x` exactly.
pub fn is_maxcut_fixed_point_unlifted(g: &Graph, x: &[f64], alpha: f64) -> Result<bool> {
    if !(alpha > 0.0) {
        return Err(Error::validation("step size must be positive"));
    }
    let dir = ascent_direction_unlifted(g, x)?;
    if !boundary_valued(x) || x.iter().all(|&v| v == x[0]) {
        return Ok(false);
    }
    Ok(x.iter()
        .zip(&dir)
        .all(|(&xv, &gv)| (xv + alpha * gv).clamp(-1.0, 1.0) == xv))
}

/// True iff `X ∈ {-1,1}^{n x l}` and its rows are not all identical
/// (i.e. `X` is not of the form `e_n cᵀ`).
pub fn is_maxcut_fixed_point_lifted(g: &Graph, x: &[f64], lift_dim: usize) -> Result<bool> {
    check_matrix(g, x, lift_dim)?;
    Ok(boundary_valued(x) && !rows_identical(x, lift_dim))
}

pub(crate) fn rows_identical(x: &[f64], lift_dim: usize) -> bool {
    let first = &x[..lift_dim];
    x.chunks(lift_dim).all(|row| row == first)
}

/// True when one projected ascent step (no momentum) leaves `x` unchanged.
pub fn survives_projected_step(g: &Graph, x: &[f64], lift_dim: usize, alpha: f64) -> Result<bool> {
    let dir = ascent_direction_lifted(g, x, lift_dim)?;
    Ok(x.iter()
        .zip(&dir)
        .all(|(&xv, &gv)| (xv + alpha * gv).clamp(-1.0, 1.0) == xv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn cut_value_examples() {
        assert_eq!(cut_value(&single_edge(), &[1, 0]).unwrap(), 1);
        assert_eq!(cut_value(&complete(3), &[1, 0, 0]).unwrap(), 2);
        assert_eq!(cut_value(&petersen(), &[0; 10]).unwrap(), 0);
        assert!(matches!(
            cut_value(&single_edge(), &[2, 0]),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            cut_value(&single_edge(), &[1]),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn k3_cut_enumeration_max_is_two() {
        let g = complete(3);
        let best = (0..8u8)
            .map(|m| {
                let z: Vec<u8> = (0..3).map(|b| (m >> b) & 1).collect();
                cut_value(&g, &z).unwrap()
            })
            .max();
        assert_eq!(best, Some(2));
    }

    #[test]
    fn quco_examples() {
        assert_eq!(quco_objective(&single_edge(), &[1.0, -1.0]).unwrap(), 4.0);
        assert_eq!(quco_objective(&petersen(), &[0.3; 10]).unwrap(), 0.0);
        assert_eq!(
            quco_objective(&complete(3), &[1.0, -1.0, 0.0]).unwrap(),
            6.0
        );
        assert!(quco_objective(&single_edge(), &[1.1, 0.0]).is_err());
        assert!(quco_objective(&single_edge(), &[1.0 + 1e-13, 0.0]).is_ok());
        assert!(quco_objective(&single_edge(), &[f64::NAN, 0.0]).is_err());
    }

    #[test]
    fn ascent_direction_examples() {
        assert_eq!(
            ascent_direction_unlifted(&single_edge(), &[1.0, -1.0]).unwrap(),
            vec![2.0, -2.0]
        );
        assert_eq!(
            ascent_direction_unlifted(&complete(3), &[1.0, 0.0, 0.0]).unwrap(),
            vec![2.0, -1.0, -1.0]
        );
        assert_eq!(
            ascent_direction_unlifted(&complete(4), &[1.0; 4]).unwrap(),
            vec![0.0; 4]
        );
        assert_eq!(
            ascent_direction_lifted(&single_edge(), &[1.0, 0.0, -1.0, 0.0], 2).unwrap(),
            vec![2.0, 0.0, -2.0, 0.0]
        );
        assert_eq!(
            ascent_direction_lifted(&complete(3), &[0.5, -0.25, 0.5, -0.25, 0.5, -0.25], 2)
                .unwrap(),
            vec![0.0; 6]
        );
        assert!(ascent_direction_lifted(&single_edge(), &[0.0; 3], 2).is_err());
    }

    #[test]
    fn luco_examples() {
        let g = complete(3);
        let x = [0.2, -0.7, 0.9];
        assert_eq!(
            luco_objective(&g, &x, 1).unwrap(),
            quco_objective(&g, &x).unwrap()
        );
        assert_eq!(
            luco_objective(&g, &[0.4, -1.0, 0.4, -1.0, 0.4, -1.0], 2).unwrap(),
            0.0
        );
        assert_eq!(
            luco_objective(&single_edge(), &[1.0, -1.0, -1.0, 1.0], 2).unwrap(),
            8.0
        );
    }

    #[test]
    fn projection_examples() {
        let s = DenseState::from_vector(vec![1.7, -0.3, -4.0]).unwrap();
        let p = project_box(s);
        assert_eq!(p.values(), &[1.0, -0.3, -1.0]);
        assert_eq!(project_box(p.clone()), p);
    }

    #[test]
    fn rounding_conventions() {
        assert_eq!(round_unlifted(&[0.2, -0.5]), vec![1, 0]);
        assert_eq!(round_unlifted(&[0.0, 0.0]), vec![0, 0]);
        assert_eq!(round_unlifted(&[-0.1, -3.0]), vec![0, 0]);
        assert_eq!(round_lifted(&[0.5, -0.2], 2), vec![1]);
        assert_eq!(round_lifted(&[0.5, -0.5], 2), vec![1]);
        // the two rules disagree exactly at zero when l = 1
        assert_eq!(round_lifted(&[0.0], 1), vec![1]);
        assert_eq!(round_unlifted(&[0.0]), vec![0]);
    }

    #[test]
    fn unlifted_fixed_point_examples() {
        let g = single_edge();
        assert!(is_maxcut_fixed_point_unlifted(&g, &[1.0, -1.0], 0.1).unwrap());
        assert!(!is_maxcut_fixed_point_unlifted(&g, &[1.0, 1.0], 0.1).unwrap());
        assert!(!is_maxcut_fixed_point_unlifted(&g, &[0.5, -0.5], 0.1).unwrap());
        assert!(is_maxcut_fixed_point_unlifted(&g, &[1.0, -1.0], 0.0).is_err());
    }

    #[test]
    fn lifted_fixed_point_examples() {
        let g = single_edge();
        assert!(is_maxcut_fixed_point_lifted(&g, &[1.0, -1.0, -1.0, 1.0], 2).unwrap());
        assert!(!is_maxcut_fixed_point_lifted(&g, &[1.0, -1.0, 1.0, -1.0], 2).unwrap());
        assert!(!is_maxcut_fixed_point_lifted(&g, &[1.0, 0.5, -1.0, 1.0], 2).unwrap());
    }

    #[test]
    fn boundary_rounding_matches_quarter_objective() {
        let g = petersen();
        for mask in 0u32..1024 {
            let x: Vec<f64> = (0..10)
                .map(|b| if mask >> b & 1 == 1 { 1.0 } else { -1.0 })
                .collect();
            let cut = cut_value(&g, &round_unlifted(&x)).unwrap();
            assert_eq!(cut as f64, quco_objective(&g, &x).unwrap() / 4.0);
        }
    }
}
