use std::f64::consts::{PI, TAU};

use rand::Rng;

use super::point::{h3_angle, h3_distance, minkowski, Isometry, PointH3};
use super::HypError;

/// Vertices closer than this are treated as coincident.
pub const MIN_SIDE: f64 = 1e-8;
/// Tolerance on the plane equation, relative to the vertex's time coordinate.
pub const PLANARITY_TOL: f64 = 1e-10;

/// Area of a hyperbolic triangle with the given interior angles.
pub fn triangle_area(alpha: f64, beta: f64, gamma: f64) -> Result<f64, HypError> {
    if alpha < 0.0 || beta < 0.0 || gamma < 0.0 {
        return Err(HypError::NegativeAngle);
    }
    let sum = alpha + beta + gamma;
    if sum > PI {
        return Err(HypError::AngleSumExceedsPi(sum));
    }
    Ok(PI - sum)
}

/// Closed polygon with geodesic sides.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPolygon {
    pub vertices: Vec<PointH3>,
}

impl GeodesicPolygon {
    pub fn new(vertices: Vec<PointH3>) -> Result<Self, HypError> {
        if vertices.len() < 3 {
            return Err(HypError::TooFewVertices(vertices.len()));
        }
        Ok(Self { vertices })
    }

    pub fn transformed(&self, m: &Isometry) -> Self {
        Self {
            vertices: self.vertices.iter().map(|v| m.apply(v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonReport {
    pub disk_area: f64,
    pub exterior_angle_sum: f64,
    /// `exterior_angle_sum − 2π − disk_area`; zero for planar polygons.
    pub lemma_slack: f64,
    pub interior_angles: Vec<f64>,
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Euclidean vector orthogonal to three vectors of R⁴ (cofactor expansion).
fn cross4(a: &[f64; 4], b: &[f64; 4], c: &[f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let m = [a, b, c].map(|v| [v[cols[0]], v[cols[1]], v[cols[2]]]);
        let s = if i % 2 == 0 { 1.0 } else { -1.0 };
        s * det3(m)
    })
}

fn det4(rows: [&[f64; 4]; 4]) -> f64 {
    let c = cross4(rows[1], rows[2], rows[3]);
    (0..4).map(|i| rows[0][i] * c[i]).sum()
}

fn norm(v: &[f64; 4]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Unit spacelike normal of the plane through the polygon, if one exists.
fn plane_normal(vs: &[[f64; 4]]) -> Result<[f64; 4], HypError> {
    let m = vs.len();
    let mut best = [0.0; 4];
    let mut best_size = 0.0;
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let c = cross4(&vs[i], &vs[j], &vs[k]);
                let size = norm(&c) / (norm(&vs[i]) * norm(&vs[j]) * norm(&vs[k]));
                if size > best_size {
                    best_size = size;
                    best = c;
                }
            }
        }
    }
    // Minkowski normal: <n, v> equals the Euclidean c·v.
    let n = [-best[0], best[1], best[2], best[3]];
    let nn = minkowski(&n, &n);
    if !(nn > 0.0) {
        return Err(HypError::NonPlanarUnsupported);
    }
    let n = n.map(|x| x / nn.sqrt());
    for v in vs {
        if minkowski(&n, v).abs() > PLANARITY_TOL * v[0] {
            return Err(HypError::NonPlanarUnsupported);
        }
    }
    Ok(n)
}

/// Area by fan triangulation from vertex 0, exterior-angle sum and the
/// slack of the bending-disk inequality, for planar convex polygons.
pub fn polygon_report(poly: &GeodesicPolygon) -> Result<PolygonReport, HypError> {
    let v = &poly.vertices;
    let m = v.len();
    if m < 3 {
        return Err(HypError::TooFewVertices(m));
    }
    for i in 0..m {
        if h3_distance(&v[i], &v[(i + 1) % m]) < MIN_SIDE {
            return Err(HypError::DegenerateVertex(i));
        }
    }
    let coords: Vec<[f64; 4]> = v.iter().map(|p| *p.coords()).collect();
    let n = plane_normal(&coords)?;

    // Strict convexity: every turn has the same orientation in the plane.
    let mut sign = 0.0;
    for i in 0..m {
        let (a, b, c) = (&coords[(i + m - 1) % m], &coords[i], &coords[(i + 1) % m]);
        let d = det4([&n, a, b, c]) / (norm(a) * norm(b) * norm(c));
        if d.abs() < 1e-14 {
            return Err(HypError::DegenerateVertex(i));
        }
        if sign == 0.0 {
            sign = d.signum();
        } else if d.signum() != sign {
            return Err(HypError::NonConvex(i));
        }
    }

    let angle = |i: usize, j: usize, k: usize| h3_angle(&v[i], &v[j], &v[k]).map_err(|_| HypError::DegenerateVertex(i));
    let interior = (0..m)
        .map(|i| angle(i, (i + m - 1) % m, (i + 1) % m))
        .collect::<Result<Vec<_>, _>>()?;
    let mut disk_area = 0.0;
    for i in 1..m - 1 {
        let a = angle(0, i, i + 1)?;
        let b = angle(i, i + 1, 0)?;
        let c = angle(i + 1, 0, i)?;
        disk_area += triangle_area(a, b, c).unwrap_or(0.0);
    }
    let exterior_angle_sum: f64 = interior.iter().map(|a| PI - a).sum();
    Ok(PolygonReport {
        disk_area,
        exterior_angle_sum,
        lemma_slack: exterior_angle_sum - TAU - disk_area,
        interior_angles: interior,
    })
}

/// Regular `k`-gon in the plane `x3 = 0` with circumradius `r`, centred at
/// the origin.
pub fn regular_polygon(k: usize, r: f64) -> GeodesicPolygon {
    GeodesicPolygon {
        vertices: (0..k)
            .map(|j| {
                let t = TAU * j as f64 / k as f64;
                PointH3::from_polar(r, [t.cos(), t.sin(), 0.0])
            })
            .collect(),
    }
}

/// Random strictly convex polygon with `m` vertices: points on a circle in
/// the Klein model, with angular gaps bounded below, moved by a random
/// isometry.
pub fn random_convex_polygon(rng: &mut impl Rng, m: usize) -> GeodesicPolygon {
    let radius = rng.gen_range(0.2..0.95);
    let min_gap = 0.2 * TAU / m as f64;
    // Gaps: minimum plus a random share of the rest.
    let weights: Vec<f64> = (0..m).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let free = TAU - min_gap * m as f64;
    let start = rng.gen_range(0.0..TAU);
    let mut t = start;
    let mut vertices = Vec::with_capacity(m);
    for w in &weights {
        vertices.push(PointH3::from_klein(radius * t.cos(), radius * t.sin()));
        t += min_gap + free * w / total;
    }
    let poly = GeodesicPolygon { vertices };
    poly.transformed(&Isometry::random(rng, 1.5))
}
