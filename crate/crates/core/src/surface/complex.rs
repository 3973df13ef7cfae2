//! Two-dimensional cell complexes and their integer cohomology.
//!
//! All three surface models reduce to a [`CellComplex`] for topology: Euler
//! characteristic, connectivity, and a cohomology basis used to classify
//! edge cycles up to homology.

use std::collections::VecDeque;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An edge traversed in a direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl SignedEdge {
    pub fn new(edge: usize, forward: bool) -> Self {
        Self { edge, forward }
    }

    pub fn reversed(self) -> Self {
        Self {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    pub fn sign(self) -> i64 {
        if self.forward {
            1
        } else {
            -1
        }
    }

    /// (tail, head) of the traversal given the edge's stored ends.
    pub fn endpoints(self, ends: [usize; 2]) -> (usize, usize) {
        if self.forward {
            (ends[0], ends[1])
        } else {
            (ends[1], ends[0])
        }
    }
}

// On disk a signed edge is the pair `[edge_id, +1 | -1]`.
impl Serialize for SignedEdge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (self.edge, self.sign()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for SignedEdge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (edge, dir): (usize, i64) = Deserialize::deserialize(d)?;
        match dir {
            1 => Ok(SignedEdge::new(edge, true)),
            -1 => Ok(SignedEdge::new(edge, false)),
            other => Err(serde::de::Error::custom(format!(
                "edge direction must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// A closed oriented surface presented by vertices, oriented edges, and
/// polygonal faces given as closed signed-edge walks.
#[derive(Debug, Clone, PartialEq)]
pub struct CellComplex {
    pub vertex_count: usize,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<Vec<SignedEdge>>,
}

/// Integer cocycles dual to a tree-cotree homology basis.
///
/// `values[j][e]` is the value of the j-th cocycle on edge `e` (forward
/// direction). Evaluating all cocycles on a closed walk gives its homology
/// class in `Z^{2g}` coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyBasis {
    pub values: Vec<Vec<i64>>,
}

impl CohomologyBasis {
    pub fn rank(&self) -> usize {
        self.values.len()
    }

    /// Per-edge shift vectors, `shifts[e][j] = values[j][e]`.
    pub fn edge_shifts(&self, edge_count: usize) -> Vec<Vec<i64>> {
        (0..edge_count)
            .map(|e| self.values.iter().map(|w| w[e]).collect())
            .collect()
    }

    pub fn class_of(&self, walk: &[SignedEdge]) -> Vec<i64> {
        self.values
            .iter()
            .map(|w| walk.iter().map(|s| s.sign() * w[s.edge]).sum())
            .collect()
    }
}

impl CellComplex {
    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.vertex_count);
        for &[a, b] in &self.edges {
            uf.union(a, b);
        }
        let root = uf.find(0);
        (0..self.vertex_count).all(|v| uf.find(v) == root)
    }

    /// Checks that a signed-edge walk is closed (head of each step is the
    /// tail of the next, cyclically).
    pub fn is_closed_walk(&self, walk: &[SignedEdge]) -> bool {
        if walk.is_empty() || walk.iter().any(|s| s.edge >= self.edges.len()) {
            return false;
        }
        (0..walk.len()).all(|i| {
            let (_, head) = walk[i].endpoints(self.edges[walk[i].edge]);
            let (tail, _) = walk[(i + 1) % walk.len()].endpoints(self.edges[walk[(i + 1) % walk.len()].edge]);
            head == tail
        })
    }

    /// Every edge appears on exactly two face sides with opposite signs.
    pub fn orientation_defects(&self) -> Vec<String> {
        let mut fwd = vec![0usize; self.edges.len()];
        let mut bwd = vec![0usize; self.edges.len()];
        for f in &self.faces {
            for s in f {
                if s.edge < self.edges.len() {
                    if s.forward {
                        fwd[s.edge] += 1;
                    } else {
                        bwd[s.edge] += 1;
                    }
                }
            }
        }
        (0..self.edges.len())
            .filter(|&e| !(fwd[e] == 1 && bwd[e] == 1))
            .map(|e| {
                format!(
                    "edge {e} borders {} face side(s) forward and {} backward; a closed oriented surface needs exactly one of each",
                    fwd[e], bwd[e]
                )
            })
            .collect()
    }

    /// Tree-cotree cohomology basis. Assumes the complex is a connected closed
    /// oriented surface (see [`CellComplex::orientation_defects`]).
    pub fn cohomology_basis(&self) -> CohomologyBasis {
        let ne = self.edges.len();
        let nf = self.faces.len();

        // Primal BFS tree.
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertex_count];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            adj[a].push((e, b));
            adj[b].push((e, a));
        }
        let mut in_tree = vec![false; ne];
        let mut seen = vec![false; self.vertex_count];
        let mut queue = VecDeque::new();
        if self.vertex_count > 0 {
            seen[0] = true;
            queue.push_back(0);
        }
        while let Some(v) = queue.pop_front() {
            for &(e, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }

        // Face sides per edge: (face, sign).
        let mut sides: Vec<Vec<(usize, i64)>> = vec![Vec::new(); ne];
        for (f, face) in self.faces.iter().enumerate() {
            for s in face {
                sides[s.edge].push((f, s.sign()));
            }
        }

        // Dual BFS tree over non-tree edges.
        let mut dual_adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
        for e in 0..ne {
            if in_tree[e] || sides[e].len() != 2 {
                continue;
            }
            let (f0, f1) = (sides[e][0].0, sides[e][1].0);
            if f0 != f1 {
                dual_adj[f0].push((e, f1));
                dual_adj[f1].push((e, f0));
            }
        }
        let mut in_cotree = vec![false; ne];
        let mut parent_edge: Vec<Option<usize>> = vec![None; nf];
        let mut order = Vec::with_capacity(nf);
        let mut fseen = vec![false; nf];
        if nf > 0 {
            fseen[0] = true;
            queue.push_back(0);
        }
        while let Some(f) = queue.pop_front() {
            order.push(f);
            for &(e, g) in &dual_adj[f] {
                if !fseen[g] {
                    fseen[g] = true;
                    in_cotree[e] = true;
                    parent_edge[g] = Some(e);
                    queue.push_back(g);
                }
            }
        }

        let leftover: Vec<usize> = (0..ne).filter(|&e| !in_tree[e] && !in_cotree[e]).collect();

        let values = leftover
            .iter()
            .map(|&lj| {
                let mut w = vec![0i64; ne];
                let mut known = vec![false; ne];
                for e in 0..ne {
                    if !in_cotree[e] {
                        known[e] = true;
                        if e == lj {
                            w[e] = 1;
                        }
                    }
                }
                // Leaves first: every non-root face has one unknown, its parent edge.
                for &f in order.iter().rev() {
                    let Some(pe) = parent_edge[f] else { continue };
                    let mut sum = 0i64;
                    let mut coef = 0i64;
                    for s in &self.faces[f] {
                        if s.edge == pe {
                            coef += s.sign();
                        } else {
                            debug_assert!(known[s.edge]);
                            sum += s.sign() * w[s.edge];
                        }
                    }
                    debug_assert!(coef == 1 || coef == -1);
                    w[pe] = -sum * coef;
                    known[pe] = true;
                }
                w
            })
            .collect();

        CohomologyBasis { values }
    }
}

/// Minimal union-find used by the surface validators.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller root wins so class representatives are deterministic.
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }

    pub fn classes(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}
