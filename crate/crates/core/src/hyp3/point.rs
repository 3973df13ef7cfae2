use rand::Rng;

use super::HypError;

/// Tolerance on `<x,x> = −1`, relative to `x0²`.
pub const HYPERBOLOID_TOL: f64 = 1e-10;

/// `−a0 b0 + a1 b1 + a2 b2 + a3 b3`.
pub fn minkowski(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// A point of the upper sheet of the hyperboloid `<x,x> = −1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointH3([f64; 4]);

impl PointH3 {
    pub fn new(x: [f64; 4]) -> Result<Self, HypError> {
        let q = minkowski(&x, &x);
        if !(x[0] > 0.0) || !x.iter().all(|c| c.is_finite()) || (q + 1.0).abs() > HYPERBOLOID_TOL * x[0] * x[0] {
            return Err(HypError::OffHyperboloid(q));
        }
        Ok(Self(x))
    }

    pub fn origin() -> Self {
        Self([1.0, 0.0, 0.0, 0.0])
    }

    /// Point at distance `r` from the origin along the unit vector `u`.
    pub fn from_polar(r: f64, u: [f64; 3]) -> Self {
        let n = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
        let s = r.sinh() / n;
        Self([r.cosh(), s * u[0], s * u[1], s * u[2]])
    }

    /// Point of the plane `x3 = 0` with Klein-model coordinates `(a, b)`.
    pub fn from_klein(a: f64, b: f64) -> Self {
        let w = 1.0 / (1.0 - a * a - b * b).sqrt();
        Self([w, w * a, w * b, 0.0])
    }

    pub fn coords(&self) -> &[f64; 4] {
        &self.0
    }
}

/// Geodesic distance `arccosh(−<p,q>)`, evaluated as `2 asinh(|p − q|/2)`
/// to keep precision for nearby points.
pub fn h3_distance(p: &PointH3, q: &PointH3) -> f64 {
    let (a, b) = (&p.0, &q.0);
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]];
    let chord = minkowski(&d, &d).max(0.0).sqrt();
    2.0 * (0.5 * chord).asinh()
}

/// Angle at `p` between the geodesics towards `q` and `r`, in `[0, π]`.
pub fn h3_angle(p: &PointH3, q: &PointH3, r: &PointH3) -> Result<f64, HypError> {
    let u = tangent_towards(p, q);
    let v = tangent_towards(p, r);
    let uu = minkowski(&u, &u);
    let vv = minkowski(&v, &v);
    let scale = 1e-24 * (p.0[0] * p.0[0]).powi(2);
    if uu <= scale || vv <= scale {
        return Err(HypError::DegenerateVertex(0));
    }
    let uv = minkowski(&u, &v);
    let cross = (uu * vv - uv * uv).max(0.0).sqrt();
    Ok(cross.atan2(uv))
}

/// Projection of `q` onto the tangent space at `p`.
fn tangent_towards(p: &PointH3, q: &PointH3) -> [f64; 4] {
    let s = minkowski(&q.0, &p.0);
    let (a, b) = (&p.0, &q.0);
    [b[0] + s * a[0], b[1] + s * a[1], b[2] + s * a[2], b[3] + s * a[3]]
}

/// A Lorentz transformation preserving the upper sheet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry([[f64; 4]; 4]);

impl Isometry {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Self(m)
    }

    /// Boost of rapidity `t` along the first spatial axis.
    pub fn boost(t: f64) -> Self {
        let mut m = Self::identity().0;
        m[0][0] = t.cosh();
        m[1][1] = t.cosh();
        m[0][1] = t.sinh();
        m[1][0] = t.sinh();
        Self(m)
    }

    /// Spatial rotation from a unit quaternion `(w, x, y, z)`.
    pub fn rotation(q: [f64; 4]) -> Self {
        let n = q.iter().map(|c| c * c).sum::<f64>().sqrt();
        let [w, x, y, z] = q.map(|c| c / n);
        let r = [
            [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
            [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
            [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
        ];
        let mut m = Self::identity().0;
        for i in 0..3 {
            for j in 0..3 {
                m[i + 1][j + 1] = r[i][j];
            }
        }
        Self(m)
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..4).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Isometry(m)
    }

    /// Rotation, boost of rapidity up to `max_rapidity`, rotation.
    pub fn random(rng: &mut impl Rng, max_rapidity: f64) -> Self {
        let mut quat = || {
            let q: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            q
        };
        let (a, b) = (quat(), quat());
        let t = rng.gen_range(0.0..max_rapidity);
        Self::rotation(a).compose(&Self::boost(t)).compose(&Self::rotation(b))
    }

    pub fn apply(&self, p: &PointH3) -> PointH3 {
        let x = p.0;
        PointH3(std::array::from_fn(|i| (0..4).map(|k| self.0[i][k] * x[k]).sum()))
    }
}
