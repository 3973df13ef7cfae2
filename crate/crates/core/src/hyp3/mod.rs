//! Desk-scale checks of hyperbolic 3-space geometry: geodesic polygons,
//! hyperbolic circles and balls, and the cover-counting recurrences.

mod ball;
mod circle;
mod counts;
mod point;
mod polygon;

pub use ball::{ball_isoperimetric, BallReport};
pub use circle::{circle_bending_check, inscribed_exterior_sum, CircleReport};
pub use counts::{boundary_area, cover_counts, minimizing_k, volume_bound_family, CoverCount};
pub use point::{h3_angle, h3_distance, minkowski, Isometry, PointH3};
pub use polygon::{
    polygon_report, random_convex_polygon, regular_polygon, triangle_area, GeodesicPolygon, PolygonReport,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HypError {
    #[error("point is off the hyperboloid: <x,x> = {0}")]
    OffHyperboloid(f64),
    #[error("angle sum {0} is not below π")]
    AngleSumExceedsPi(f64),
    #[error("angles must be nonnegative")]
    NegativeAngle,
    #[error("polygon does not lie in a totally geodesic plane")]
    NonPlanarUnsupported,
    #[error("polygon is not strictly convex at vertex {0}")]
    NonConvex(usize),
    #[error("vertex {0} coincides with a neighbour or has a degenerate angle")]
    DegenerateVertex(usize),
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("{0}")]
    Domain(&'static str),
    #[error("disk areas must be sorted ascending")]
    UnsortedAreas,
}
