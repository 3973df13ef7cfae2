//! Triangulated-mesh payload with a piecewise-flat metric given by edge
//! lengths.
//!
//! Triangles are closed walks of three signed edges, so loops and multiple
//! edges between the same vertices (one-vertex tori, for instance) are
//! representable.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::complex::{CellComplex, SignedEdge, UnionFind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshEdge {
    pub ends: [usize; 2],
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulatedMesh {
    pub vertex_count: usize,
    pub edges: Vec<MeshEdge>,
    pub triangles: Vec<[SignedEdge; 3]>,
}

/// Tolerance on vertex angle sums when deciding whether a mesh is flat.
pub const FLATNESS_TOL: f64 = 1e-9;

impl TriangulatedMesh {
    pub fn complex(&self) -> CellComplex {
        CellComplex {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().map(|e| e.ends).collect(),
            faces: self.triangles.iter().map(|t| t.to_vec()).collect(),
        }
    }

    /// Side lengths of a triangle in walk order.
    pub fn side_lengths(&self, t: usize) -> [f64; 3] {
        self.triangles[t].map(|s| self.edges[s.edge].length)
    }

    /// Interior angle opposite each side of triangle `t`.
    pub fn opposite_angles(&self, t: usize) -> [f64; 3] {
        let l = self.side_lengths(t);
        let angle = |a: f64, b: f64, c: f64| {
            // angle opposite side a
            ((b * b + c * c - a * a) / (2.0 * b * c)).clamp(-1.0, 1.0).acos()
        };
        [
            angle(l[0], l[1], l[2]),
            angle(l[1], l[2], l[0]),
            angle(l[2], l[0], l[1]),
        ]
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.side_lengths(t);
        // Kahan's stable Heron formula.
        let mut s = [a, b, c];
        s.sort_by(|x, y| y.total_cmp(x));
        let [a, b, c] = s;
        0.25 * ((a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c)))
            .max(0.0)
            .sqrt()
    }

    pub fn area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.triangle_area(t)).sum()
    }

    /// Sum of triangle corner angles at each vertex.
    pub fn vertex_angle_sums(&self) -> Vec<f64> {
        let mut sums = vec![0.0; self.vertex_count];
        for t in 0..self.triangles.len() {
            let ang = self.opposite_angles(t);
            for (i, s) in self.triangles[t].iter().enumerate() {
                // the corner at the tail of side i is opposite side i+1
                let (tail, _) = s.endpoints(self.edges[s.edge].ends);
                sums[tail] += ang[(i + 1) % 3];
            }
        }
        sums
    }

    pub fn is_flat(&self) -> bool {
        self.vertex_angle_sums()
            .iter()
            .all(|&s| (s - 2.0 * PI).abs() <= FLATNESS_TOL)
    }

    /// Cotangent conductances `(cot α + cot β) / 2`, clamped at zero.
    pub fn cotan_conductances(&self) -> Vec<f64> {
        let mut c = vec![0.0; self.edges.len()];
        for t in 0..self.triangles.len() {
            let ang = self.opposite_angles(t);
            for (i, s) in self.triangles[t].iter().enumerate() {
                c[s.edge] += 0.5 / ang[i].tan();
            }
        }
        // tan(π/2) is finite in floating point; snap right angles to zero.
        c.iter().map(|&x| if x < 1e-12 { 0.0 } else { x }).collect()
    }

    pub fn validate(&self, violations: &mut Vec<String>) {
        let nv = self.vertex_count;
        let ne = self.edges.len();
        if nv == 0 || ne == 0 || self.triangles.is_empty() {
            violations.push("mesh needs at least one vertex, edge, and triangle".into());
            return;
        }
        let mut ok = true;
        for (i, e) in self.edges.iter().enumerate() {
            if e.ends.iter().any(|&v| v >= nv) {
                violations.push(format!("edge {i} references a vertex outside 0..{nv}"));
                ok = false;
            }
            if !(e.length.is_finite() && e.length > 0.0) {
                violations.push(format!("edge {i} has non-positive length {}", e.length));
            }
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            if tri.iter().any(|s| s.edge >= ne) {
                violations.push(format!("triangle {t} references an edge outside 0..{ne}"));
                ok = false;
            }
        }
        if !ok {
            return;
        }
        let complex = self.complex();
        for (t, tri) in self.triangles.iter().enumerate() {
            if !complex.is_closed_walk(tri) {
                violations.push(format!("triangle {t} sides do not form a closed walk"));
            }
            let [a, b, c] = self.side_lengths(t);
            if !(a < b + c && b < c + a && c < a + b) {
                violations.push(format!("triangle {t} violates the strict triangle inequality"));
            }
        }
        violations.extend(complex.orientation_defects());
        if !complex.is_connected() {
            violations.push("mesh 1-skeleton is disconnected".into());
        }
        let mut used = vec![false; nv];
        for e in &self.edges {
            used[e.ends[0]] = true;
            used[e.ends[1]] = true;
        }
        if let Some(v) = used.iter().position(|&u| !u) {
            violations.push(format!("vertex {v} is not on any edge"));
        }
        if violations.is_empty() {
            for v in self.non_disk_links() {
                violations.push(format!("the link of vertex {v} is not a single cycle"));
            }
        }
    }

    /// Vertices whose corners do not form a single fan.
    fn non_disk_links(&self) -> Vec<usize> {
        // A corner is (triangle, side index of the outgoing side). Corners at
        // the same vertex sharing an incident edge-side are glued.
        let nt = self.triangles.len();
        let corner = |t: usize, i: usize| 3 * t + i;
        let mut uf = UnionFind::new(3 * nt);
        // For each half-edge occurrence, record the corner at its tail and at its head.
        let mut at_tail: Vec<Vec<usize>> = vec![Vec::new(); self.edges.len()];
        let mut at_head: Vec<Vec<usize>> = vec![Vec::new(); self.edges.len()];
        for t in 0..nt {
            for i in 0..3 {
                let s = self.triangles[t][i];
                // corner at tail of side i is corner(t, i); at its head, corner(t, i+1)
                let (tail_c, head_c) = (corner(t, i), corner(t, (i + 1) % 3));
                if s.forward {
                    at_tail[s.edge].push(tail_c);
                    at_head[s.edge].push(head_c);
                } else {
                    at_tail[s.edge].push(head_c);
                    at_head[s.edge].push(tail_c);
                }
            }
        }
        for e in 0..self.edges.len() {
            for list in [&at_tail[e], &at_head[e]] {
                for w in list.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        let mut roots: Vec<Vec<usize>> = vec![Vec::new(); self.vertex_count];
        for t in 0..nt {
            for i in 0..3 {
                let s = self.triangles[t][i];
                let (tail, _) = s.endpoints(self.edges[s.edge].ends);
                let r = uf.find(corner(t, i));
                if !roots[tail].contains(&r) {
                    roots[tail].push(r);
                }
            }
        }
        (0..self.vertex_count).filter(|&v| roots[v].len() != 1).collect()
    }

    /// Flat torus `[0, a) x [0, b)` as an `nx` by `ny` grid of rectangles,
    /// each split by the diagonal from its lower-left to upper-right corner.
    ///
    /// Vertex `(i, j)` has id `j * nx + i`. Edge ids per cell: horizontal
    /// `3 * id`, vertical `3 * id + 1`, diagonal `3 * id + 2`, each starting at
    /// the cell's lower-left vertex.
    pub fn flat_torus_grid(a: f64, b: f64, nx: usize, ny: usize) -> Self {
        assert!(nx >= 1 && ny >= 1);
        let hx = a / nx as f64;
        let hy = b / ny as f64;
        let vid = |i: usize, j: usize| (j % ny) * nx + (i % nx);
        let mut edges = Vec::with_capacity(3 * nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let v = vid(i, j);
                edges.push(MeshEdge { ends: [v, vid(i + 1, j)], length: hx });
                edges.push(MeshEdge { ends: [v, vid(i, j + 1)], length: hy });
                edges.push(MeshEdge { ends: [v, vid(i + 1, j + 1)], length: hx.hypot(hy) });
            }
        }
        let h = |i: usize, j: usize| 3 * vid(i, j);
        let vert = |i: usize, j: usize| 3 * vid(i, j) + 1;
        let diag = |i: usize, j: usize| 3 * vid(i, j) + 2;
        let mut triangles = Vec::with_capacity(2 * nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                // lower-right triangle: (i,j)->(i+1,j)->(i+1,j+1)->(i,j)
                triangles.push([
                    SignedEdge::new(h(i, j), true),
                    SignedEdge::new(vert(i + 1, j), true),
                    SignedEdge::new(diag(i, j), false),
                ]);
                // upper-left triangle: (i,j)->(i+1,j+1)->(i,j+1)->(i,j)
                triangles.push([
                    SignedEdge::new(diag(i, j), true),
                    SignedEdge::new(h(i, j + 1), false),
                    SignedEdge::new(vert(i, j), false),
                ]);
            }
        }
        Self {
            vertex_count: nx * ny,
            edges,
            triangles,
        }
    }

    /// The horizontal edge cycle through row `j` of a [`flat_torus_grid`].
    pub fn grid_row_cycle(nx: usize, j: usize) -> Vec<SignedEdge> {
        (0..nx).map(|i| SignedEdge::new(3 * (j * nx + i), true)).collect()
    }

    /// The vertical edge cycle through column `i` of a [`flat_torus_grid`].
    pub fn grid_column_cycle(nx: usize, ny: usize, i: usize) -> Vec<SignedEdge> {
        (0..ny).map(|j| SignedEdge::new(3 * (j * nx + i) + 1, true)).collect()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut m = self.clone();
        for e in &mut m.edges {
            e.length *= factor;
        }
        m
    }
}
