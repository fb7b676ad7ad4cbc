use crate::error::{Error, Result};

/// A batch of relaxation points.
///
/// Each member is an `n x lift_dim` matrix stored node-major
/// (`values[v * lift_dim + i]`). `lift_dim == 1` is the unlifted vector case.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    node_count: usize,
    lift_dim: usize,
    members: usize,
    values: Vec<f64>,
}

impl DenseState {
    pub fn zeros(node_count: usize, lift_dim: usize, members: usize) -> Result<Self> {
        Self::from_values(
            node_count,
            lift_dim,
            members,
            vec![0.0; node_count * lift_dim * members],
        )
    }

    pub fn from_values(
        node_count: usize,
        lift_dim: usize,
        members: usize,
        values: Vec<f64>,
    ) -> Result<Self> {
        if lift_dim == 0 || members == 0 {
            return Err(Error::validation(
                "batch size and lifting dimension must be at least 1",
            ));
        }
        Error::check_len(node_count * lift_dim * members, values.len())?;
        Ok(Self {
            node_count,
            lift_dim,
            members,
            values,
        })
    }

    /// Single-member state holding one unlifted vector.
    pub fn from_vector(x: Vec<f64>) -> Result<Self> {
        let n = x.len();
        Self::from_values(n, 1, 1, x)
    }

    /// Single-member state holding one node-major `n x lift_dim` matrix.
    pub fn from_matrix(node_count: usize, lift_dim: usize, values: Vec<f64>) -> Result<Self> {
        Self::from_values(node_count, lift_dim, 1, values)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn lift_dim(&self) -> usize {
        self.lift_dim
    }

    pub fn members(&self) -> usize {
        self.members
    }

    pub fn member_len(&self) -> usize {
        self.node_count * self.lift_dim
    }

    pub fn member(&self, j: usize) -> &[f64] {
        let len = self.member_len();
        &self.values[j * len..(j + 1) * len]
    }

    pub fn member_mut(&mut self, j: usize) -> &mut [f64] {
        let len = self.member_len();
        &mut self.values[j * len..(j + 1) * len]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn same_shape(&self, other: &DenseState) -> Result<()> {
        Error::check_len(self.values.len(), other.values.len())?;
        Error::check_len(self.lift_dim, other.lift_dim)?;
        Ok(())
    }

    /// True when every entry lies in `[-1 - tol, 1 + tol]`.
    pub fn within_box(&self, tol: f64) -> bool {
        self.values.iter().all(|v| v.abs() <= 1.0 + tol)
    }
}
