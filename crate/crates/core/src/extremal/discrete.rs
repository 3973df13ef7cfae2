//! Discrete extremal length of an edge-cycle class by cutting planes.
//!
//! The discrete problem is
//!
//! ```text
//! minimize  Σ_e c_e ρ_e²   subject to  Σ_{e ∈ γ'} ρ_e ≥ 1  for every γ' in the class,
//! ```
//!
//! with cotangent conductances `c_e`, which makes the energy the Dirichlet
//! energy of the piecewise-linear interpolant and reproduces `a/b` exactly on
//! rectangular grid tori. Edges with zero conductance cost nothing and are
//! removed from the oracle graph.
//!
//! The restricted problem over the active constraints is solved in the dual
//! by Hildreth's projected coordinate ascent. Every dual value `D` is a lower
//! bound on the optimal energy, so `1/D` bounds the extremal length from
//! above. Scaling the primal weights so that the shortest cycle has length
//! one gives a feasible metric and a lower bound `s²/E`.

use std::collections::BTreeSet;
use std::io::Write;

use serde::Serialize;

use super::cover::{CycleCertificate, Equivalence, HomologyCover, DEFAULT_MAX_WINDOW};
use super::{ElError, ElEstimate, ElMethod};
use crate::surface::{CurveClass, CurveHandle, SignedEdge, Surface, SurfaceModel, TriangulatedMesh};

/// Cycles shorter than this are violated constraints.
const FEASIBILITY: f64 = 1.0 - 1e-9;
const MAX_SWEEPS: usize = 200_000;
/// Relative outward rounding applied to both endpoints.
const ROUNDING_PAD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteOptions {
    /// Relative bracket width at which to stop.
    pub tol: f64,
    pub max_constraints: usize,
    pub max_rounds: usize,
    /// Relative dual improvement per sweep below which the inner solve stops.
    pub stall: f64,
    pub max_window: u32,
}

impl Default for DiscreteOptions {
    fn default() -> Self {
        Self {
            tol: 1e-3,
            max_constraints: 10_000,
            max_rounds: 1_000,
            stall: 1e-10,
            max_window: DEFAULT_MAX_WINDOW,
        }
    }
}

impl DiscreteOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }
}

/// One cutting-plane iteration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceRecord {
    pub iteration: usize,
    /// Dual objective of the restricted problem.
    pub objective: f64,
    pub primal_energy: f64,
    pub shortest_length: f64,
    pub certificate: CycleCertificate,
    pub violated: usize,
    pub active_constraints: usize,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteElState {
    /// Feasible edge weights: every cycle in the class has length ≥ 1.
    pub weights: Vec<f64>,
    pub conductances: Vec<f64>,
    pub active_constraints: Vec<Vec<SignedEdge>>,
    /// `Σ_e c_e ρ_e²` for `weights`.
    pub objective: f64,
}

impl DiscreteElState {
    pub fn energy_of(&self, weights: &[f64]) -> f64 {
        energy(&self.conductances, weights)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteElResult {
    pub estimate: ElEstimate,
    pub state: DiscreteElState,
    pub trace: Vec<TraceRecord>,
    pub equivalence: Equivalence,
    pub converged: bool,
}

impl DiscreteElResult {
    /// Trace as JSON lines, one record per iteration.
    pub fn write_trace(&self, out: &mut impl Write) -> std::io::Result<()> {
        for r in &self.trace {
            serde_json::to_writer(&mut *out, r)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }
}

struct Row {
    entries: Vec<(usize, f64)>,
    // Σ n_e² / (2 c_e)
    q: f64,
}

fn energy(c: &[f64], w: &[f64]) -> f64 {
    c.iter().zip(w).filter(|(c, _)| **c > 0.0).map(|(c, w)| c * w * w).sum()
}

fn canonical(walk: &[SignedEdge]) -> Vec<SignedEdge> {
    (0..walk.len())
        .map(|r| walk[r..].iter().chain(&walk[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

pub fn el_discrete(surface: &Surface, curve: &CurveClass, opts: &DiscreteOptions) -> Result<DiscreteElResult, ElError> {
    match (&surface.model, &curve.handle) {
        (SurfaceModel::TriangulatedMesh(m), CurveHandle::EdgeCycle(w)) => el_discrete_mesh(m, w, opts),
        _ => Err(ElError::CurveNotOnModel(curve.name.clone())),
    }
}

pub fn el_discrete_mesh(mesh: &TriangulatedMesh, curve: &[SignedEdge], opts: &DiscreteOptions) -> Result<DiscreteElResult, ElError> {
    if !(opts.tol > 0.0 && opts.tol < 1.0) {
        return Err(ElError::InvalidTolerance(opts.tol));
    }
    let cover = HomologyCover::new(mesh, curve)?;
    let equivalence = cover.equivalence();
    let c = mesh.cotan_conductances();
    let ne = c.len();

    let mut sigma = vec![0.0f64; ne];
    let mut lambda: Vec<f64> = Vec::new();
    let mut rows: Vec<Row> = Vec::new();
    let mut active: Vec<Vec<SignedEdge>> = Vec::new();
    let mut seen: BTreeSet<Vec<SignedEdge>> = BTreeSet::new();
    let mut trace = Vec::new();
    let mut stall = opts.stall;

    let mut lower = 0.0f64;
    let mut upper = f64::INFINITY;
    let mut best_weights = vec![0.0; ne];
    let mut converged = false;

    for iteration in 0..opts.max_rounds {
        // sigma is nonnegative up to round-off from the dual updates.
        let oracle: Vec<f64> = (0..ne).map(|e| if c[e] > 0.0 { sigma[e].max(0.0) } else { f64::INFINITY }).collect();
        let ((s, _), cert, violated) = cover.search(&oracle, opts.max_window, FEASIBILITY)?;
        let e_now = energy(&c, &sigma);
        let dual = lambda.iter().sum::<f64>() - e_now;
        if cert.is_certified() && s.is_finite() && s > 0.0 && e_now > 0.0 {
            let lo = s * s / e_now * (1.0 - ROUNDING_PAD);
            if lo > lower {
                lower = lo;
                best_weights = sigma.iter().map(|x| x.max(0.0) / s).collect();
            }
        }
        if dual > 0.0 {
            upper = upper.min(1.0 / dual * (1.0 + ROUNDING_PAD));
        }
        trace.push(TraceRecord {
            iteration,
            objective: dual,
            primal_energy: e_now,
            shortest_length: s,
            certificate: cert,
            violated: violated.len(),
            active_constraints: rows.len(),
            lower,
            upper,
        });
        if upper.is_finite() && (upper - lower) <= opts.tol * upper {
            converged = true;
            break;
        }
        if !s.is_finite() {
            // No cycle in the class survives in the oracle graph.
            break;
        }

        let mut added = 0;
        for (_, walk) in &violated {
            if !seen.insert(canonical(walk)) {
                continue;
            }
            let mut entries: Vec<(usize, f64)> = Vec::new();
            for st in walk {
                match entries.iter_mut().find(|(e, _)| *e == st.edge) {
                    Some(x) => x.1 += 1.0,
                    None => entries.push((st.edge, 1.0)),
                }
            }
            entries.sort_by_key(|x| x.0);
            let q = entries.iter().map(|&(e, n)| n * n / (2.0 * c[e])).sum();
            rows.push(Row { entries, q });
            lambda.push(0.0);
            active.push(walk.clone());
            added += 1;
        }
        if rows.len() > opts.max_constraints {
            break;
        }
        if added == 0 {
            // Violations are already active: the inner solve is not accurate
            // enough yet.
            stall *= 1e-2;
            if stall < 1e-17 {
                break;
            }
        }
        hildreth(&rows, &c, &mut lambda, &mut sigma, stall);
    }

    let objective = energy(&c, &best_weights);
    if lower > upper {
        lower = upper;
    }
    let reported_upper = match equivalence {
        Equivalence::FreeHomotopy => upper,
        // Constraints are homologous, not homotopic: the dual bound does not
        // apply to the homotopy problem.
        Equivalence::Homology => f64::INFINITY,
    };
    let estimate = ElEstimate::new(lower, reported_upper, ElMethod::DiscreteSolver, ElMethod::DiscreteSolver);
    let result = DiscreteElResult {
        estimate,
        state: DiscreteElState {
            weights: best_weights,
            conductances: c,
            active_constraints: active,
            objective,
        },
        trace,
        equivalence,
        converged,
    };
    if converged {
        Ok(result)
    } else {
        Err(ElError::NonconvergenceWithinBudget { best: Box::new(result) })
    }
}

/// Projected coordinate ascent on the dual of the restricted problem.
/// Keeps `sigma = Σ_j λ_j n_j / (2c)` in sync with `lambda`.
fn hildreth(rows: &[Row], c: &[f64], lambda: &mut [f64], sigma: &mut [f64], stall: f64) {
    let dual = |lambda: &[f64], sigma: &[f64]| lambda.iter().sum::<f64>() - energy(c, sigma);
    let mut prev = dual(lambda, sigma);
    for _ in 0..MAX_SWEEPS {
        for (j, row) in rows.iter().enumerate() {
            let len: f64 = row.entries.iter().map(|&(e, n)| n * sigma[e]).sum();
            let step = ((1.0 - len) / row.q).max(-lambda[j]);
            if step == 0.0 {
                continue;
            }
            lambda[j] += step;
            for &(e, n) in &row.entries {
                sigma[e] += step * n / (2.0 * c[e]);
            }
        }
        let d = dual(lambda, sigma);
        if d - prev <= stall * d.abs() {
            break;
        }
        prev = d;
    }
}
