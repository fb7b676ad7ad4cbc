//! Exhaustive MaxCut and lifted fixed-point enumeration for small graphs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::objectives::{
    cut_value_unchecked, round_lifted, rows_identical, survives_projected_step,
};
use crate::par;

pub const MAX_ORACLE_NODES: usize = 26;
pub const MAX_LIFTED_ENTRIES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub optimum: u64,
    pub witness: Vec<u8>,
    /// Optimal assignments, counting an assignment and its complement separately.
    pub count_optimal: u64,
}

#[derive(Clone, Copy)]
struct Best {
    cut: u64,
    mask: u64,
    count: u64,
}

impl Best {
    fn merge(self, other: Best) -> Best {
        match self.cut.cmp(&other.cut) {
            std::cmp::Ordering::Greater => self,
            std::cmp::Ordering::Less => other,
            std::cmp::Ordering::Equal => Best {
                cut: self.cut,
                mask: self.mask.min(other.mask),
                count: self.count + other.count,
            },
        }
    }
}

/// Scans all assignments with node 0 on side 0 in Gray-code order, updating
/// the cut incrementally on each single-node flip.
pub fn brute_force_maxcut(g: &Graph) -> Result<OracleResult> {
    let n = g.node_count();
    if n > MAX_ORACLE_NODES {
        return Err(Error::SizeGuard {
            what: "node count",
            value: n,
            limit: MAX_ORACLE_NODES,
        });
    }
    let free = n - 1;
    let total: u64 = 1 << free;
    let chunks = (total.min(1 << 12)) as usize;
    let per_chunk = total.div_ceil(chunks as u64);
    let partial = par::map_range(chunks, |c| {
        let start = c as u64 * per_chunk;
        let end = (start + per_chunk).min(total);
        scan_range(g, start, end)
    });
    let best = partial
        .into_iter()
        .flatten()
        .reduce(Best::merge)
        .expect("at least one assignment");
    let witness = (0..n).map(|v| ((best.mask >> v) & 1) as u8).collect();
    Ok(OracleResult {
        optimum: best.cut,
        witness,
        count_optimal: best.count * 2,
    })
}

/// Gray codes `k in [start, end)` over nodes `1..n` (bit `i` -> node `i + 1`).
fn scan_range(g: &Graph, start: u64, end: u64) -> Option<Best> {
    if start >= end {
        return None;
    }
    let n = g.node_count();
    let gray = |k: u64| k ^ (k >> 1);
    let mut side = vec![0u8; n];
    let mut mask = gray(start) << 1;
    for (v, s) in side.iter_mut().enumerate() {
        *s = ((mask >> v) & 1) as u8;
    }
    let mut cut = cut_value_unchecked(g, &side) as i64;
    let mut best = Best {
        cut: cut as u64,
        mask,
        count: 1,
    };
    for k in start + 1..end {
        let v = k.trailing_zeros() as usize + 1;
        let sv = side[v];
        let mut same = 0i64;
        for &u in g.neighbors(v) {
            if side[u as usize] == sv {
                same += 1;
            }
        }
        cut += 2 * same - g.degree(v) as i64;
        side[v] ^= 1;
        mask ^= 1 << v;
        let c = cut as u64;
        if c > best.cut {
            best = Best {
                cut: c,
                mask,
                count: 1,
            };
        } else if c == best.cut {
            best.count += 1;
            best.mask = best.mask.min(mask);
        }
    }
    Some(best)
}

/// All `X ∈ {-1,1}^{n x l}` whose rows are not all identical, in increasing
/// bit-pattern order (bit `v * l + i` set means `X[v][i] = +1`).
///
/// Each listed matrix is checked to survive one projected ascent step with
/// step size 0.1, and each excluded matrix to round to a cut of 0; a failed
/// check is reported as an error.
pub fn enumerate_lifted_fixed_points(g: &Graph, lift_dim: usize) -> Result<Vec<Vec<f64>>> {
    let entries = g.node_count() * lift_dim;
    if lift_dim == 0 {
        return Err(Error::validation("lifting dimension must be at least 1"));
    }
    if entries > MAX_LIFTED_ENTRIES {
        return Err(Error::SizeGuard {
            what: "matrix entries",
            value: entries,
            limit: MAX_LIFTED_ENTRIES,
        });
    }
    let mut listed = Vec::new();
    for mask in 0u64..(1 << entries) {
        let x: Vec<f64> = (0..entries)
            .map(|k| if (mask >> k) & 1 == 1 { 1.0 } else { -1.0 })
            .collect();
        if rows_identical(&x, lift_dim) {
            let cut = cut_value_unchecked(g, &round_lifted(&x, lift_dim));
            if cut != 0 {
                return Err(Error::validation(format!(
                    "excluded matrix {mask:#b} rounds to cut {cut}"
                )));
            }
            continue;
        }
        if !survives_projected_step(g, &x, lift_dim, 0.1)? {
            return Err(Error::validation(format!(
                "matrix {mask:#b} moves under a projected ascent step"
            )));
        }
        listed.push(x);
    }
    Ok(listed)
}
