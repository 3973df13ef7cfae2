//! Candidate systems of `g − 1` curves and the combined length
//! `Σ √EL(γᵢ)` minimized over them.

use serde::Serialize;

use crate::extremal::{estimate_curve, DiscreteOptions, ElError, ElEstimate};
use crate::linalg::exact_rank;
use crate::surface::{CurveHandle, SignedEdge, Surface, SurfaceModel};

#[derive(Debug, thiserror::Error)]
pub enum SystemError {
    #[error("curve systems need genus at least 2, surface has genus {0}")]
    GenusTooSmall(u32),
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("no admissible system among the named curves")]
    NoAdmissibleSystem,
    #[error("curve {0:?} has no finite upper extremal-length bound")]
    UnboundedEstimate(String),
    #[error("pool references curve index {0}")]
    BadPool(usize),
    #[error(transparent)]
    Estimate(#[from] ElError),
}

/// A flag together with the reason it holds or fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub holds: bool,
    pub reason: String,
}

impl Witness {
    fn yes(reason: impl Into<String>) -> Self {
        Self { holds: true, reason: reason.into() }
    }

    fn no(reason: impl Into<String>) -> Self {
        Self { holds: false, reason: reason.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSystem {
    /// Indices into `surface.curves`, ascending.
    pub curves: Vec<usize>,
    pub names: Vec<String>,
    pub pairwise_disjoint: Witness,
    pub pairwise_non_homotopic: Witness,
    pub homology_rank: usize,
    pub homology_independent: bool,
}

impl CurveSystem {
    pub fn is_admissible(&self) -> bool {
        self.pairwise_disjoint.holds && self.pairwise_non_homotopic.holds && self.homology_independent
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CombinedLength {
    pub lower: f64,
    pub upper: f64,
    pub per_curve: Vec<ElEstimate>,
}

impl CombinedLength {
    /// `[Σ √lowerᵢ, Σ √upperᵢ]`.
    pub fn from_estimates(per_curve: Vec<ElEstimate>) -> Self {
        let lower = per_curve.iter().map(|e| e.lower.sqrt()).sum();
        let upper = per_curve.iter().map(|e| e.upper.sqrt()).sum();
        Self { lower, upper, per_curve }
    }
}

/// Classify one candidate set of curve indices (ascending).
pub fn describe_system(surface: &Surface, curves: &[usize]) -> CurveSystem {
    let names = curves.iter().map(|&i| surface.curves[i].name.clone()).collect();
    let (rank, pair_ranks) = match &surface.model {
        SurfaceModel::FenchelNielsen(f) => {
            let pants: Vec<usize> = curves.iter().map(|&i| pants_index(surface, i)).collect();
            let pr = pairs(curves.len()).map(|(a, b)| f.homology_rank(&[pants[a], pants[b]])).collect::<Vec<_>>();
            (f.homology_rank(&pants), pr)
        }
        _ => {
            let classes = surface.curve_homology(curves).expect("complex-backed model");
            let pr = pairs(curves.len())
                .map(|(a, b)| exact_rank(&[classes[a].clone(), classes[b].clone()]))
                .collect::<Vec<_>>();
            (exact_rank(&classes), pr)
        }
    };
    let pairwise_disjoint = disjointness(surface, curves);
    let pairwise_non_homotopic = match &surface.model {
        SurfaceModel::FenchelNielsen(_) => Witness::yes("distinct curves of one pants decomposition"),
        _ => match pairs(curves.len()).zip(&pair_ranks).find(|(_, &r)| r < 2) {
            None => Witness::yes("pairwise independent homology classes"),
            Some(((a, b), _)) => Witness::no(format!(
                "{} and {} have dependent homology classes",
                surface.curves[curves[a]].name, surface.curves[curves[b]].name
            )),
        },
    };
    let k = surface.genus.saturating_sub(1) as usize;
    CurveSystem {
        curves: curves.to_vec(),
        names,
        pairwise_disjoint,
        pairwise_non_homotopic,
        homology_rank: rank,
        homology_independent: curves.len() == k && rank == k,
    }
}

fn pants_index(surface: &Surface, i: usize) -> usize {
    match surface.curves[i].handle {
        CurveHandle::PantsCurve(p) => p,
        _ => unreachable!("Fenchel–Nielsen surfaces only carry pants curves"),
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (a + 1..n).map(move |b| (a, b)))
}

fn disjointness(surface: &Surface, curves: &[usize]) -> Witness {
    match &surface.model {
        SurfaceModel::FenchelNielsen(_) => Witness::yes("distinct curves of one pants decomposition"),
        SurfaceModel::FlatCylinder(_) => {
            let mut cyl: Vec<usize> = curves
                .iter()
                .map(|&i| match surface.curves[i].handle {
                    CurveHandle::CylinderCore(k) => k,
                    _ => unreachable!("flat surfaces only carry cylinder cores"),
                })
                .collect();
            cyl.sort_unstable();
            if cyl.windows(2).any(|w| w[0] == w[1]) {
                Witness::no("two curves are the core of the same cylinder")
            } else {
                Witness::yes("cores of distinct cylinders")
            }
        }
        SurfaceModel::TriangulatedMesh(m) => {
            let vertex_sets: Vec<Vec<usize>> = curves
                .iter()
                .map(|&i| match &surface.curves[i].handle {
                    CurveHandle::EdgeCycle(w) => walk_vertices(w, |e| m.edges[e].ends),
                    _ => unreachable!("mesh surfaces only carry edge cycles"),
                })
                .collect();
            for (a, set) in vertex_sets.iter().enumerate() {
                let mut s = set.clone();
                s.sort_unstable();
                if s.windows(2).any(|w| w[0] == w[1]) {
                    return Witness::no(format!("{} revisits a vertex", surface.curves[curves[a]].name));
                }
            }
            for (a, b) in pairs(curves.len()) {
                if let Some(v) = vertex_sets[a].iter().find(|v| vertex_sets[b].contains(v)) {
                    return Witness::no(format!(
                        "{} and {} share vertex {v}",
                        surface.curves[curves[a]].name, surface.curves[curves[b]].name
                    ));
                }
            }
            Witness::yes("vertex-disjoint simple edge cycles")
        }
    }
}

fn walk_vertices(walk: &[SignedEdge], ends: impl Fn(usize) -> [usize; 2]) -> Vec<usize> {
    walk.iter().map(|s| s.endpoints(ends(s.edge)).0).collect()
}

/// Admissible systems drawn from `pool` (indices into `surface.curves`), in
/// lexicographic order of index tuples.
pub struct SystemEnumerator<'a> {
    surface: &'a Surface,
    pool: Vec<usize>,
    k: usize,
    next: Option<Vec<usize>>,
}

impl<'a> SystemEnumerator<'a> {
    pub fn new(surface: &'a Surface, pool: &[usize]) -> Result<Self, SystemError> {
        if surface.genus < 2 {
            return Err(SystemError::GenusTooSmall(surface.genus));
        }
        let mut pool = pool.to_vec();
        pool.sort_unstable();
        pool.dedup();
        if let Some(&bad) = pool.iter().find(|&&i| i >= surface.curves.len()) {
            return Err(SystemError::BadPool(bad));
        }
        let k = surface.genus as usize - 1;
        let next = (k <= pool.len()).then(|| (0..k).collect());
        Ok(Self { surface, pool, k, next })
    }
}

impl Iterator for SystemEnumerator<'_> {
    type Item = CurveSystem;

    fn next(&mut self) -> Option<CurveSystem> {
        let n = self.pool.len();
        while let Some(pos) = self.next.take() {
            // Advance the combination for the following call.
            let mut succ = pos.clone();
            let mut i = self.k;
            let mut advanced = false;
            while i > 0 {
                i -= 1;
                if succ[i] < n - self.k + i {
                    succ[i] += 1;
                    for j in i + 1..self.k {
                        succ[j] = succ[j - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            self.next = advanced.then_some(succ);
            let ids: Vec<usize> = pos.iter().map(|&p| self.pool[p]).collect();
            let sys = describe_system(self.surface, &ids);
            if sys.is_admissible() {
                return Some(sys);
            }
        }
        None
    }
}

/// Up to `budget` admissible systems built from all named curves.
pub fn enumerate_systems(surface: &Surface, budget: usize) -> Result<Vec<CurveSystem>, SystemError> {
    let pool: Vec<usize> = (0..surface.curves.len()).collect();
    enumerate_systems_in(surface, &pool, budget)
}

pub fn enumerate_systems_in(surface: &Surface, pool: &[usize], budget: usize) -> Result<Vec<CurveSystem>, SystemError> {
    if budget == 0 {
        return Err(SystemError::ZeroBudget);
    }
    let out: Vec<CurveSystem> = SystemEnumerator::new(surface, pool)?.take(budget).collect();
    if out.is_empty() {
        return Err(SystemError::NoAdmissibleSystem);
    }
    Ok(out)
}

/// Per-curve estimates, computed once and shared across systems.
pub struct EstimateCache<'a> {
    surface: &'a Surface,
    opts: DiscreteOptions,
    cache: Vec<Option<ElEstimate>>,
}

impl<'a> EstimateCache<'a> {
    pub fn new(surface: &'a Surface, opts: DiscreteOptions) -> Self {
        Self {
            surface,
            opts,
            cache: vec![None; surface.curves.len()],
        }
    }

    pub fn get(&mut self, i: usize) -> Result<ElEstimate, ElError> {
        if let Some(e) = self.cache[i] {
            return Ok(e);
        }
        let e = estimate_curve(self.surface, &self.surface.curves[i], &self.opts)?;
        self.cache[i] = Some(e);
        Ok(e)
    }
}

/// `L(Σ, Γ)` as an interval; errors if some curve has no finite upper bound.
pub fn combined_length(
    surface: &Surface,
    system: &CurveSystem,
    cache: &mut EstimateCache<'_>,
) -> Result<CombinedLength, SystemError> {
    let per_curve = system.curves.iter().map(|&i| cache.get(i)).collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = per_curve.iter().position(|e| !e.is_bounded()) {
        return Err(SystemError::UnboundedEstimate(surface.curves[system.curves[p]].name.clone()));
    }
    Ok(CombinedLength::from_estimates(per_curve))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub system: CurveSystem,
    /// `length.upper` is an upper bound on `L(Σ)`; the family is finite.
    pub length: CombinedLength,
    pub systems_evaluated: usize,
}

/// The enumerated system with the smallest upper endpoint of `L(Σ, Γ)`.
/// Ties go to the lexicographically first index tuple.
///
/// If every system has an unbounded estimate, the first one is returned
/// with an infinite upper endpoint.
pub fn minimize_l(surface: &Surface, budget: usize, opts: DiscreteOptions) -> Result<Minimum, SystemError> {
    let pool: Vec<usize> = (0..surface.curves.len()).collect();
    minimize_l_in(surface, &pool, budget, opts)
}

pub fn minimize_l_in(
    surface: &Surface,
    pool: &[usize],
    budget: usize,
    opts: DiscreteOptions,
) -> Result<Minimum, SystemError> {
    let systems = enumerate_systems_in(surface, pool, budget)?;
    let mut cache = EstimateCache::new(surface, opts);
    let mut best: Option<Minimum> = None;
    let n = systems.len();
    for sys in systems {
        let per_curve = sys.curves.iter().map(|&i| cache.get(i)).collect::<Result<Vec<_>, _>>()?;
        let length = CombinedLength::from_estimates(per_curve);
        let better = match &best {
            None => true,
            Some(b) => length.upper < b.length.upper,
        };
        if better {
            best = Some(Minimum {
                system: sys,
                length,
                systems_evaluated: n,
            });
        }
    }
    best.ok_or(SystemError::NoAdmissibleSystem)
}
