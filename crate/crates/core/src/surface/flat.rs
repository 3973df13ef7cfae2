//! Flat-cylinder payload: a translation surface assembled from horizontal
//! cylinders whose top boundaries are glued to bottom boundaries by
//! horizontal translations.
//!
//! Gluing only top-to-bottom keeps every cone angle a multiple of 2π, so the
//! flat metric is locally CAT(0) and each cylinder core is a shortest curve
//! in its free homotopy class.

use serde::{Deserialize, Serialize};

use super::complex::{CellComplex, SignedEdge, UnionFind};

/// Absolute tolerance for interval coverage of boundary circles.
pub const COVERAGE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cylinder {
    pub circumference: f64,
    pub height: f64,
}

impl Cylinder {
    pub fn area(&self) -> f64 {
        self.circumference * self.height
    }

    pub fn modulus(&self) -> f64 {
        self.height / self.circumference
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryPoint {
    pub cylinder: usize,
    pub offset: f64,
}

/// The top interval `[top.offset, top.offset + length)` of one cylinder is
/// identified with the bottom interval `[bottom.offset, bottom.offset + length)`
/// of another (or the same) cylinder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Gluing {
    pub top: BoundaryPoint,
    pub bottom: BoundaryPoint,
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlatCylinders {
    pub cylinders: Vec<Cylinder>,
    pub gluing: Vec<Gluing>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Top,
    Bottom,
}

/// Cell structure derived from a valid diagram.
#[derive(Debug, Clone)]
pub struct FlatComplex {
    pub complex: CellComplex,
    /// Bottom-boundary walk of each cylinder; homologous to its core curve.
    pub core_walks: Vec<Vec<SignedEdge>>,
}

impl FlatCylinders {
    pub fn total_area(&self) -> f64 {
        self.cylinders.iter().map(Cylinder::area).sum()
    }

    /// Gluing indices on one side of a cylinder, sorted by offset.
    fn side_intervals(&self, cyl: usize, side: Side) -> Vec<usize> {
        let mut ids: Vec<usize> = self
            .gluing
            .iter()
            .enumerate()
            .filter(|(_, g)| match side {
                Side::Top => g.top.cylinder == cyl,
                Side::Bottom => g.bottom.cylinder == cyl,
            })
            .map(|(i, _)| i)
            .collect();
        let off = |i: usize| match side {
            Side::Top => self.gluing[i].top.offset,
            Side::Bottom => self.gluing[i].bottom.offset,
        };
        ids.sort_by(|&a, &b| off(a).total_cmp(&off(b)).then(a.cmp(&b)));
        ids
    }

    pub fn validate(&self, violations: &mut Vec<String>) {
        let n = self.cylinders.len();
        if n == 0 {
            violations.push("flat surface has no cylinders".into());
        }
        for (k, c) in self.cylinders.iter().enumerate() {
            if !(c.circumference.is_finite() && c.circumference > 0.0) {
                violations.push(format!("cylinder {k} has non-positive circumference"));
            }
            if !(c.height.is_finite() && c.height > 0.0) {
                violations.push(format!("cylinder {k} has non-positive height"));
            }
        }
        let mut indices_ok = true;
        for (i, g) in self.gluing.iter().enumerate() {
            if !(g.length.is_finite() && g.length > 0.0) {
                violations.push(format!("gluing {i} has non-positive length"));
            }
            for (name, p) in [("top", g.top), ("bottom", g.bottom)] {
                if p.cylinder >= n {
                    violations.push(format!("gluing {i} {name} references cylinder {}", p.cylinder));
                    indices_ok = false;
                } else {
                    let c = self.cylinders[p.cylinder].circumference;
                    if !(p.offset.is_finite() && p.offset >= 0.0 && p.offset < c) {
                        violations.push(format!("gluing {i} {name} offset {} outside [0, {c})", p.offset));
                    }
                }
            }
        }
        if !indices_ok {
            return;
        }
        for k in 0..n {
            let circ = self.cylinders[k].circumference;
            for side in [Side::Top, Side::Bottom] {
                self.check_coverage(k, side, circ, violations);
            }
        }
    }

    fn check_coverage(&self, k: usize, side: Side, circ: f64, violations: &mut Vec<String>) {
        let label = if side == Side::Top { "top" } else { "bottom" };
        let ids = self.side_intervals(k, side);
        if ids.is_empty() {
            violations.push(format!("cylinder {k} {label} boundary is not glued"));
            return;
        }
        let total: f64 = ids.iter().map(|&i| self.gluing[i].length).sum();
        if (total - circ).abs() > COVERAGE_TOL {
            violations.push(format!(
                "cylinder {k} {label} boundary covered by intervals of total length {total}, circumference {circ}"
            ));
            return;
        }
        let off = |i: usize| match side {
            Side::Top => self.gluing[i].top.offset,
            Side::Bottom => self.gluing[i].bottom.offset,
        };
        for w in 0..ids.len() {
            let cur = ids[w];
            let end = off(cur) + self.gluing[cur].length;
            let next_start = if w + 1 < ids.len() {
                off(ids[w + 1])
            } else {
                off(ids[0]) + circ
            };
            if (end - next_start).abs() > COVERAGE_TOL {
                violations.push(format!(
                    "cylinder {k} {label} intervals {cur} and {} overlap or leave a gap",
                    ids[(w + 1) % ids.len()]
                ));
            }
        }
    }

    /// Cell structure: one vertex class per identified breakpoint, one edge
    /// per gluing, one vertical edge and one rectangular face per cylinder.
    /// Assumes [`FlatCylinders::validate`] reported nothing.
    pub fn complex(&self) -> FlatComplex {
        let n = self.cylinders.len();
        let ng = self.gluing.len();
        // Node ids: 2 * gluing + 0 for the start of its top interval,
        // 2 * gluing + 1 for the start of its bottom interval.
        let top_node = |g: usize| 2 * g;
        let bot_node = |g: usize| 2 * g + 1;
        let tops: Vec<Vec<usize>> = (0..n).map(|k| self.side_intervals(k, Side::Top)).collect();
        let bots: Vec<Vec<usize>> = (0..n).map(|k| self.side_intervals(k, Side::Bottom)).collect();
        let next_on = |list: &Vec<usize>, g: usize| {
            let p = list.iter().position(|&x| x == g).expect("interval on its own side");
            list[(p + 1) % list.len()]
        };

        let mut uf = UnionFind::new(2 * ng);
        for (g, gl) in self.gluing.iter().enumerate() {
            uf.union(top_node(g), bot_node(g));
            let top_end = next_on(&tops[gl.top.cylinder], g);
            let bot_end = next_on(&bots[gl.bottom.cylinder], g);
            uf.union(top_node(top_end), bot_node(bot_end));
        }
        let mut class_id = vec![usize::MAX; 2 * ng];
        let mut vcount = 0;
        for x in 0..2 * ng {
            let r = uf.find(x);
            if class_id[r] == usize::MAX {
                class_id[r] = vcount;
                vcount += 1;
            }
            class_id[x] = class_id[r];
        }

        let mut edges = Vec::with_capacity(ng + n);
        for (g, gl) in self.gluing.iter().enumerate() {
            let end = next_on(&tops[gl.top.cylinder], g);
            edges.push([class_id[top_node(g)], class_id[top_node(end)]]);
        }
        let mut faces = Vec::with_capacity(n);
        let mut core_walks = Vec::with_capacity(n);
        for k in 0..n {
            let vertical = ng + k;
            edges.push([class_id[bot_node(bots[k][0])], class_id[top_node(tops[k][0])]]);
            let bottom_walk: Vec<SignedEdge> = bots[k].iter().map(|&g| SignedEdge::new(g, true)).collect();
            let mut face = bottom_walk.clone();
            face.push(SignedEdge::new(vertical, true));
            face.extend(tops[k].iter().rev().map(|&g| SignedEdge::new(g, false)));
            face.push(SignedEdge::new(vertical, false));
            faces.push(face);
            core_walks.push(bottom_walk);
        }
        FlatComplex {
            complex: CellComplex {
                vertex_count: vcount,
                edges,
                faces,
            },
            core_walks,
        }
    }
}
