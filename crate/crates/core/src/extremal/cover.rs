//! Shortest cycle in a prescribed class by Dijkstra search on a finite
//! window of the homology cover of a mesh.
//!
//! The cover's sheets are indexed by `Z^{2g}` through an integer cohomology
//! basis; a closed walk lifts to a path from sheet `0` to the sheet of its
//! class. On a torus the fundamental group is abelian, so homology classes
//! are free homotopy classes. For higher genus the search returns the
//! shortest *homologous* cycle, which is a lower bound for the shortest
//! homotopic one.

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};

use serde::Serialize;

use super::ElError;
use crate::surface::{SignedEdge, TriangulatedMesh};

/// Default cap on the window half-width.
pub const DEFAULT_MAX_WINDOW: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Equivalence {
    FreeHomotopy,
    Homology,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "window")]
pub enum CycleCertificate {
    /// No path leaving the window could have been shorter.
    Exact(u32),
    /// Same length at this window and at half of it.
    Stable(u32),
    /// Window cap reached without either of the above.
    Overflow(u32),
}

impl CycleCertificate {
    pub fn is_certified(&self) -> bool {
        !matches!(self, CycleCertificate::Overflow(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShortestCycle {
    pub walk: Vec<SignedEdge>,
    pub length: f64,
    pub certificate: CycleCertificate,
    pub equivalence: Equivalence,
}

/// Homology cover data for one target class on one mesh.
#[derive(Debug, Clone)]
pub struct HomologyCover {
    vertex_count: usize,
    // CSR adjacency of directed arcs.
    offsets: Vec<usize>,
    arc_to: Vec<usize>,
    arc_step: Vec<SignedEdge>,
    arc_shift: Vec<Option<usize>>,
    shifts: Vec<Vec<i64>>,
    target: Vec<i64>,
    // (tail vertex, arc id) of every arc that can start a cycle in the class.
    sources: Vec<(usize, usize)>,
    equivalence: Equivalence,
}

#[derive(Debug, Clone)]
struct Window {
    lo: Vec<i64>,
    dims: Vec<i64>,
    sheets: usize,
}

impl Window {
    fn new(target: &[i64], w: i64) -> Self {
        let lo: Vec<i64> = target.iter().map(|&c| c.min(0) - w).collect();
        let dims: Vec<i64> = target.iter().map(|&c| c.abs() + 2 * w + 1).collect();
        let sheets = dims.iter().product::<i64>() as usize;
        Self { lo, dims, sheets }
    }

    fn encode(&self, x: &[i64]) -> Option<usize> {
        let mut idx = 0i64;
        for i in 0..x.len() {
            let off = x[i] - self.lo[i];
            if off < 0 || off >= self.dims[i] {
                return None;
            }
            idx = idx * self.dims[i] + off;
        }
        Some(idx as usize)
    }

    fn decode(&self, mut idx: usize, out: &mut [i64]) {
        for i in (0..out.len()).rev() {
            let d = self.dims[i] as usize;
            out[i] = (idx % d) as i64 + self.lo[i];
            idx /= d;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key {
    dist: f64,
    hops: u32,
    node: usize,
}

impl Eq for Key {}

impl Ord for Key {
    // Reversed so that BinaryHeap pops the smallest key.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then(other.hops.cmp(&self.hops))
            .then(other.node.cmp(&self.node))
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of one window search over all sources.
#[derive(Debug, Clone)]
pub(crate) struct WindowSearch {
    pub best: Option<(f64, Vec<SignedEdge>)>,
    /// Distinct cycles (up to rotation) shorter than the requested threshold.
    pub below: Vec<(f64, Vec<SignedEdge>)>,
    pub exact: bool,
}

struct Buffers {
    dist: Vec<f64>,
    hops: Vec<u32>,
    prev: Vec<(usize, usize)>,
    stamp: Vec<u32>,
    generation: u32,
}

impl Buffers {
    fn new(n: usize) -> Self {
        Self {
            dist: vec![0.0; n],
            hops: vec![0; n],
            prev: vec![(usize::MAX, usize::MAX); n],
            stamp: vec![0; n],
            generation: 0,
        }
    }

    fn next_generation(&mut self) {
        self.generation = self.generation.wrapping_add(1);
        if self.generation == 0 {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.generation = 1;
        }
    }

    fn get(&self, n: usize) -> (f64, u32) {
        if self.stamp[n] == self.generation {
            (self.dist[n], self.hops[n])
        } else {
            (f64::INFINITY, u32::MAX)
        }
    }

    fn set(&mut self, n: usize, d: f64, h: u32, prev: (usize, usize)) {
        self.stamp[n] = self.generation;
        self.dist[n] = d;
        self.hops[n] = h;
        self.prev[n] = prev;
    }
}

impl HomologyCover {
    pub fn new(mesh: &TriangulatedMesh, curve: &[SignedEdge]) -> Result<Self, ElError> {
        let complex = mesh.complex();
        let basis = complex.cohomology_basis();
        let target = basis.class_of(curve);
        let Some(pivot) = pivot_coordinate(&basis.values, &target) else {
            return Err(ElError::TrivialCurve);
        };
        let nv = mesh.vertex_count;
        let edge_shift = basis.edge_shifts(mesh.edges.len());
        let mut shifts: Vec<Vec<i64>> = Vec::new();
        let mut per_vertex: Vec<Vec<(usize, SignedEdge, Option<usize>)>> = vec![Vec::new(); nv];
        for (e, me) in mesh.edges.iter().enumerate() {
            let s = &edge_shift[e];
            let nonzero = s.iter().any(|&x| x != 0);
            let (fwd, bwd) = if nonzero {
                shifts.push(s.clone());
                shifts.push(s.iter().map(|&x| -x).collect());
                (Some(shifts.len() - 2), Some(shifts.len() - 1))
            } else {
                (None, None)
            };
            let [a, b] = me.ends;
            per_vertex[a].push((b, SignedEdge::new(e, true), fwd));
            per_vertex[b].push((a, SignedEdge::new(e, false), bwd));
        }
        let mut offsets = Vec::with_capacity(nv + 1);
        let mut arc_to = Vec::new();
        let mut arc_step = Vec::new();
        let mut arc_shift = Vec::new();
        let mut sources = Vec::new();
        offsets.push(0);
        for (v, list) in per_vertex.into_iter().enumerate() {
            for (to, step, sh) in list {
                if let Some(k) = sh {
                    let x = shifts[k][pivot];
                    if x != 0 && x.signum() == target[pivot].signum() {
                        sources.push((v, arc_to.len()));
                    }
                }
                arc_to.push(to);
                arc_step.push(step);
                arc_shift.push(sh);
            }
            offsets.push(arc_to.len());
        }
        sources.sort_by_key(|&(v, a)| (arc_step[a].edge, !arc_step[a].forward, v));
        let equivalence = if basis.rank() == 2 { Equivalence::FreeHomotopy } else { Equivalence::Homology };
        Ok(Self {
            vertex_count: nv,
            offsets,
            arc_to,
            arc_step,
            arc_shift,
            shifts,
            target,
            sources,
            equivalence,
        })
    }

    pub fn target(&self) -> &[i64] {
        &self.target
    }

    pub fn equivalence(&self) -> Equivalence {
        self.equivalence
    }

    /// Shortest cycle in the target class under `weights` (one per edge;
    /// `+∞` removes an edge). Windows are doubled from 1 up to `max_window`.
    pub fn shortest(&self, weights: &[f64], max_window: u32) -> Result<ShortestCycle, ElError> {
        let (best, cert, _) = self.search(weights, max_window, 0.0)?;
        let (length, walk) = best;
        let out = ShortestCycle {
            walk,
            length,
            certificate: cert,
            equivalence: self.equivalence,
        };
        if cert.is_certified() {
            Ok(out)
        } else {
            Err(ElError::WindowOverflow { best: Box::new(out) })
        }
    }

    /// Doubling loop shared by [`HomologyCover::shortest`] and the discrete
    /// solver. Also returns the distinct cycles shorter than `keep_below`
    /// found at the final window.
    #[allow(clippy::type_complexity)]
    pub(crate) fn search(
        &self,
        weights: &[f64],
        max_window: u32,
        keep_below: f64,
    ) -> Result<((f64, Vec<SignedEdge>), CycleCertificate, Vec<(f64, Vec<SignedEdge>)>), ElError> {
        if weights.iter().any(|w| w.is_nan() || *w < 0.0) {
            return Err(ElError::InvalidWeights);
        }
        let mut prev_len: Option<f64> = None;
        let mut last: Option<(WindowSearch, u32)> = None;
        let mut w = 1u32;
        while w <= max_window.max(1) {
            let r = self.search_window(weights, w as i64, keep_below);
            if let Some((len, _)) = &r.best {
                if r.exact {
                    let best = r.best.clone().unwrap();
                    return Ok((best, CycleCertificate::Exact(w), r.below));
                }
                if let Some(p) = prev_len {
                    if (len - p).abs() <= 1e-12 * p.abs().max(1.0) {
                        let best = r.best.clone().unwrap();
                        return Ok((best, CycleCertificate::Stable(w), r.below));
                    }
                }
                prev_len = Some(*len);
            }
            last = Some((r, w));
            w *= 2;
        }
        let (r, w) = last.expect("at least one window searched");
        let best = r.best.unwrap_or((f64::INFINITY, Vec::new()));
        Ok((best, CycleCertificate::Overflow(w), r.below))
    }

    fn search_window(&self, weights: &[f64], w: i64, keep_below: f64) -> WindowSearch {
        let win = Window::new(&self.target, w);
        let n = self.vertex_count * win.sheets;
        let mut buf = Buffers::new(n);
        let mut heap = BinaryHeap::new();
        let rank = self.target.len();
        let mut coords = vec![0i64; rank];
        let mut moved = vec![0i64; rank];
        let goal_sheet = win.encode(&self.target).expect("target inside its window");
        let origin = vec![0i64; rank];

        let mut best: Option<(f64, Vec<SignedEdge>)> = None;
        let mut exit_min = f64::INFINITY;
        let mut below: Vec<(f64, Vec<SignedEdge>)> = Vec::new();
        let mut seen: BTreeSet<Vec<SignedEdge>> = BTreeSet::new();

        for &(u, a0) in &self.sources {
            let w0 = weights[self.arc_step[a0].edge];
            if !w0.is_finite() {
                continue;
            }
            let best_len = best.as_ref().map_or(f64::INFINITY, |b| b.0);
            let cutoff = best_len.max(keep_below);
            if w0 > cutoff {
                continue;
            }
            let v = self.arc_to[a0];
            let sh = &self.shifts[self.arc_shift[a0].expect("sources carry shifts")];
            let start_sheet = match win.encode(sh) {
                Some(s) => s,
                None => {
                    exit_min = exit_min.min(w0);
                    continue;
                }
            };
            debug_assert!(win.encode(&origin).is_some());
            let start = v * win.sheets + start_sheet;
            let goal = u * win.sheets + goal_sheet;
            buf.next_generation();
            heap.clear();
            buf.set(start, w0, 1, (usize::MAX, a0));
            heap.push(Key { dist: w0, hops: 1, node: start });
            let mut found: Option<f64> = None;
            while let Some(Key { dist, hops, node }) = heap.pop() {
                let (d, h) = buf.get(node);
                if dist > d || (dist == d && hops > h) {
                    continue;
                }
                if dist > cutoff {
                    break;
                }
                if node == goal {
                    found = Some(dist);
                    break;
                }
                let x = node / win.sheets;
                let sheet = node % win.sheets;
                let mut decoded = false;
                for a in self.offsets[x]..self.offsets[x + 1] {
                    let we = weights[self.arc_step[a].edge];
                    if !we.is_finite() {
                        continue;
                    }
                    let nd = dist + we;
                    let to_sheet = match self.arc_shift[a] {
                        None => Some(sheet),
                        Some(k) => {
                            if !decoded {
                                win.decode(sheet, &mut coords);
                                decoded = true;
                            }
                            for i in 0..rank {
                                moved[i] = coords[i] + self.shifts[k][i];
                            }
                            win.encode(&moved)
                        }
                    };
                    let Some(ts) = to_sheet else {
                        exit_min = exit_min.min(nd);
                        continue;
                    };
                    let to = self.arc_to[a] * win.sheets + ts;
                    let nh = hops + 1;
                    let (od, oh) = buf.get(to);
                    if nd < od || (nd == od && nh < oh) {
                        buf.set(to, nd, nh, (node, a));
                        heap.push(Key { dist: nd, hops: nh, node: to });
                    }
                }
            }
            let Some(len) = found else { continue };
            let walk = || {
                let mut rev = Vec::new();
                let mut at = goal;
                loop {
                    let (p, a) = buf.prev[at];
                    rev.push(self.arc_step[a]);
                    if p == usize::MAX {
                        break;
                    }
                    at = p;
                }
                rev.reverse();
                rev
            };
            if len < keep_below {
                let wk = walk();
                if seen.insert(canonical_rotation(&wk)) {
                    below.push((len, wk.clone()));
                }
                if best.as_ref().map_or(true, |b| len < b.0) {
                    best = Some((len, wk));
                }
            } else if best.as_ref().map_or(true, |b| len < b.0) {
                best = Some((len, walk()));
            }
        }
        let exact = match &best {
            Some((len, _)) => exit_min >= *len,
            None => false,
        };
        WindowSearch { best, below, exact }
    }
}

/// Coordinate with a nonzero target value whose cocycle has the smallest
/// support; its support edges are the search sources.
fn pivot_coordinate(values: &[Vec<i64>], target: &[i64]) -> Option<usize> {
    (0..target.len())
        .filter(|&i| target[i] != 0)
        .min_by_key(|&i| (values[i].iter().filter(|&&x| x != 0).count(), i))
}

fn canonical_rotation(walk: &[SignedEdge]) -> Vec<SignedEdge> {
    (0..walk.len())
        .map(|r| walk[r..].iter().chain(&walk[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Shortest cycle in the class of `curve` under per-edge `weights`.
pub fn shortest_homotopic_cycle(
    mesh: &TriangulatedMesh,
    weights: &[f64],
    curve: &[SignedEdge],
) -> Result<ShortestCycle, ElError> {
    if weights.len() != mesh.edges.len() {
        return Err(ElError::InvalidWeights);
    }
    HomologyCover::new(mesh, curve)?.shortest(weights, DEFAULT_MAX_WINDOW)
}
