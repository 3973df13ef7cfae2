//! Fenchel–Nielsen payload: a trivalent pants graph with per-curve lengths
//! and twists.
//!
//! Vertices are pairs of pants, edges are pants curves.

use serde::{Deserialize, Serialize};

use super::complex::UnionFind;
use crate::linalg::relative_rank;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TwistUnit {
    Radians,
    Length,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PantsCurve {
    /// The two pairs of pants this curve bounds (equal for a loop).
    pub ends: [usize; 2],
    /// Hyperbolic length of the geodesic pants curve.
    pub length: f64,
    /// Stored but not used by any estimate.
    pub twist: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FenchelNielsen {
    pub pants_count: usize,
    pub twist_unit: TwistUnit,
    pub curves: Vec<PantsCurve>,
}

impl FenchelNielsen {
    /// Builds a payload on the given pants graph with zero twists.
    pub fn from_graph(pants_count: usize, ends: &[[usize; 2]], lengths: &[f64]) -> Self {
        Self {
            pants_count,
            twist_unit: TwistUnit::Radians,
            curves: ends
                .iter()
                .zip(lengths)
                .map(|(&ends, &length)| PantsCurve {
                    ends,
                    length,
                    twist: 0.0,
                })
                .collect(),
        }
    }

    /// χ of the surface: each pair of pants contributes −1.
    pub fn euler_characteristic(&self) -> i64 {
        -(self.pants_count as i64)
    }

    pub fn validate(&self, violations: &mut Vec<String>) {
        let v = self.pants_count;
        if v == 0 {
            violations.push("pants graph has no vertices".into());
        }
        let mut degree = vec![0usize; v];
        for (i, c) in self.curves.iter().enumerate() {
            for &p in &c.ends {
                if p >= v {
                    violations.push(format!("pants curve {i} references pants {p}, only {v} exist"));
                }
            }
            if c.ends.iter().all(|&p| p < v) {
                degree[c.ends[0]] += 1;
                degree[c.ends[1]] += 1;
            }
            if !(c.length.is_finite() && c.length > 0.0) {
                violations.push(format!("pants curve {i} has non-positive length {}", c.length));
            }
            if !c.twist.is_finite() {
                violations.push(format!("pants curve {i} has non-finite twist"));
            }
        }
        for (p, &d) in degree.iter().enumerate() {
            if d != 3 {
                violations.push(format!("pants {p} has degree {d}, expected 3"));
            }
        }
        if v > 0 && !self.is_connected() {
            violations.push("pants graph is disconnected".into());
        }
    }

    fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.pants_count);
        for c in &self.curves {
            if c.ends.iter().all(|&p| p < self.pants_count) {
                uf.union(c.ends[0], c.ends[1]);
            }
        }
        uf.classes() == 1
    }

    /// Relations among pants-curve homology classes: the oriented boundary
    /// of each pair of pants is null-homologous.
    fn boundary_relations(&self) -> Vec<Vec<i64>> {
        (0..self.pants_count)
            .map(|p| {
                self.curves
                    .iter()
                    .map(|c| (c.ends[0] == p) as i64 - (c.ends[1] == p) as i64)
                    .collect()
            })
            .collect()
    }

    /// Rank in `H_1(Σ; Z)` of the classes of the given pants curves.
    pub fn homology_rank(&self, curves: &[usize]) -> usize {
        let n = self.curves.len();
        let units: Vec<Vec<i64>> = curves
            .iter()
            .map(|&c| (0..n).map(|e| (e == c) as i64).collect())
            .collect();
        relative_rank(&self.boundary_relations(), &units)
    }
}
