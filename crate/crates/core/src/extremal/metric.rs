//! One-sided bounds read directly off a model's own conformal metric.

use std::collections::VecDeque;

use super::{ElError, ElEstimate, ElMethod};
use crate::surface::{CurveClass, CurveHandle, SignedEdge, Surface, SurfaceModel, TriangulatedMesh};

#[derive(Debug, Clone, PartialEq)]
pub struct MetricLowerBound {
    pub estimate: ElEstimate,
    /// Length of the representative used, under the model metric.
    pub representative_length: f64,
    pub area: f64,
    /// True when the representative is proven shortest in its class.
    pub certified: bool,
    pub diagnostic: Option<String>,
}

/// `ℓ² / A` for the model's own metric when the representative is provably
/// shortest in its free homotopy class; otherwise a zero lower bound with a
/// diagnostic.
pub fn el_lower_from_metric(surface: &Surface, curve: &CurveClass) -> Result<MetricLowerBound, ElError> {
    match (&surface.model, &curve.handle) {
        (SurfaceModel::FenchelNielsen(_), _) => Err(ElError::NoMetric),
        (SurfaceModel::FlatCylinder(f), CurveHandle::CylinderCore(k)) => {
            let c = f.cylinders[*k].circumference;
            let area = f.total_area();
            // Cone angles are multiples of 2π, so the metric is nonpositively
            // curved and the core geodesic minimizes length in its class.
            Ok(MetricLowerBound {
                estimate: ElEstimate::lower_only(c * c / area, ElMethod::MetricRatio),
                representative_length: c,
                area,
                certified: true,
                diagnostic: None,
            })
        }
        (SurfaceModel::TriangulatedMesh(m), CurveHandle::EdgeCycle(walk)) => Ok(mesh_lower(m, walk, surface.genus)),
        _ => Err(ElError::CurveNotOnModel(curve.name.clone())),
    }
}

fn mesh_lower(mesh: &TriangulatedMesh, walk: &[SignedEdge], genus: u32) -> MetricLowerBound {
    let area = mesh.area();
    let walk_length: f64 = walk.iter().map(|s| mesh.edges[s.edge].length).sum();
    let uncertified = |why: &str| MetricLowerBound {
        estimate: ElEstimate::lower_only(0.0, ElMethod::None),
        representative_length: walk_length,
        area,
        certified: false,
        diagnostic: Some(why.to_string()),
    };
    if genus != 1 {
        return uncertified("no certified shortest representative on a piecewise-flat surface of genus >= 2");
    }
    let Some(vectors) = flat_torus_holonomy(mesh) else {
        return uncertified("mesh is not a translation surface; geodesic representative not certified");
    };
    let mut hol = [0.0f64; 2];
    for s in walk {
        let v = vectors[s.edge];
        let sg = s.sign() as f64;
        hol[0] += sg * v[0];
        hol[1] += sg * v[1];
    }
    let len = hol[0].hypot(hol[1]);
    let scale = walk_length.max(f64::MIN_POSITIVE);
    if len <= 1e-9 * scale {
        return uncertified("curve has zero translation holonomy");
    }
    // On a flat torus the class with holonomy λ has closed geodesics of
    // length |λ|, and they are the shortest representatives.
    MetricLowerBound {
        estimate: ElEstimate::lower_only(len * len / area, ElMethod::MetricRatio),
        representative_length: len,
        area,
        certified: true,
        diagnostic: None,
    }
}

/// Develop a flat mesh into the plane. Returns one translation vector per
/// edge (pointing from its first end to its second) when the development
/// closes up, i.e. the rotational holonomy is trivial.
pub fn flat_torus_holonomy(mesh: &TriangulatedMesh) -> Option<Vec<[f64; 2]>> {
    let nt = mesh.triangles.len();
    if nt == 0 {
        return None;
    }
    // Local frame of every triangle and the forward vector of each side.
    let local: Vec<[[f64; 2]; 3]> = (0..nt)
        .map(|t| {
            let [l0, l1, l2] = mesh.side_lengths(t);
            let x = (l0 * l0 + l2 * l2 - l1 * l1) / (2.0 * l0);
            let y = (l2 * l2 - x * x).max(0.0).sqrt();
            let p = [[0.0, 0.0], [l0, 0.0], [x, y]];
            let mut out = [[0.0; 2]; 3];
            for i in 0..3 {
                let a = p[i];
                let b = p[(i + 1) % 3];
                let d = [b[0] - a[0], b[1] - a[1]];
                out[i] = if mesh.triangles[t][i].forward { d } else { [-d[0], -d[1]] };
            }
            out
        })
        .collect();
    let mut occ: Vec<Vec<(usize, usize)>> = vec![Vec::new(); mesh.edges.len()];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        for (i, s) in tri.iter().enumerate() {
            occ[s.edge].push((t, i));
        }
    }
    // Rotation of each frame, as a unit complex number.
    let mut rot: Vec<Option<[f64; 2]>> = vec![None; nt];
    rot[0] = Some([1.0, 0.0]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        let r = rot[t].unwrap();
        for i in 0..3 {
            let e = mesh.triangles[t][i].edge;
            let u = local[t][i];
            for &(t2, i2) in &occ[e] {
                if rot[t2].is_some() {
                    continue;
                }
                let u2 = local[t2][i2];
                // r2 = r * u / u2, normalized
                let q = cdiv(u, u2);
                let n = q[0].hypot(q[1]);
                let r2 = cmul(r, [q[0] / n, q[1] / n]);
                rot[t2] = Some(r2);
                queue.push_back(t2);
            }
        }
    }
    let mut vectors = vec![[f64::NAN; 2]; mesh.edges.len()];
    for (e, list) in occ.iter().enumerate() {
        let tol = 1e-9 * (1.0 + mesh.edges[e].length);
        let mut first: Option<[f64; 2]> = None;
        for &(t, i) in list {
            let v = cmul(rot[t]?, local[t][i]);
            match first {
                None => first = Some(v),
                Some(f) => {
                    if (f[0] - v[0]).hypot(f[1] - v[1]) > tol {
                        return None;
                    }
                }
            }
        }
        vectors[e] = first?;
    }
    Some(vectors)
}

fn cmul(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]]
}

fn cdiv(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    let d = b[0] * b[0] + b[1] * b[1];
    [(a[0] * b[0] + a[1] * b[1]) / d, (a[1] * b[0] - a[0] * b[1]) / d]
}

/// `c / h` for the core of cylinder `k`: the cylinder embeds in the surface
/// and extremal length does not decrease under restriction.
pub fn el_upper_from_cylinder(surface: &Surface, curve: &CurveClass) -> Result<ElEstimate, ElError> {
    match (&surface.model, &curve.handle) {
        (SurfaceModel::FlatCylinder(f), CurveHandle::CylinderCore(k)) => {
            let c = f.cylinders[*k];
            Ok(ElEstimate::upper_only(c.circumference / c.height, ElMethod::CylinderRestriction))
        }
        _ => Err(ElError::NotACoreCurve(curve.name.clone())),
    }
}
