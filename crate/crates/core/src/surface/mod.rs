//! Concrete Riemann-surface models and the curve classes named on them.
//!
//! Three models are supported, each feeding a different extremal-length
//! method: Fenchel–Nielsen coordinates, flat-cylinder diagrams, and
//! piecewise-flat triangulated meshes. Loading validates the payload, checks
//! the declared genus against the Euler characteristic, and resolves every
//! named curve to a model-specific handle.

pub mod complex;
pub mod fenchel_nielsen;
pub mod flat;
pub mod mesh;
mod schema;

use std::path::Path;

pub use complex::{CellComplex, CohomologyBasis, SignedEdge};
pub use fenchel_nielsen::{FenchelNielsen, PantsCurve, TwistUnit};
pub use flat::{BoundaryPoint, Cylinder, FlatCylinders, Gluing};
pub use mesh::{MeshEdge, TriangulatedMesh};
pub use schema::{FORMAT_VERSION, SCHEMA_HELP};

#[derive(Debug, thiserror::Error)]
pub enum SurfaceError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
    #[error("declared genus {declared} but the payload has genus {computed}")]
    GenusMismatch { declared: i64, computed: u32 },
    #[error("Euler characteristic {0} is odd; the complex is not a closed orientable surface")]
    OddCharacteristic(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    FenchelNielsen,
    FlatCylinder,
    TriangulatedMesh,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::FenchelNielsen => "fenchel_nielsen",
            ModelKind::FlatCylinder => "flat_cylinder",
            ModelKind::TriangulatedMesh => "triangulated_mesh",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SurfaceModel {
    FenchelNielsen(FenchelNielsen),
    FlatCylinder(FlatCylinders),
    TriangulatedMesh(TriangulatedMesh),
}

impl SurfaceModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            SurfaceModel::FenchelNielsen(_) => ModelKind::FenchelNielsen,
            SurfaceModel::FlatCylinder(_) => ModelKind::FlatCylinder,
            SurfaceModel::TriangulatedMesh(_) => ModelKind::TriangulatedMesh,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        match self {
            SurfaceModel::FenchelNielsen(f) => f.euler_characteristic(),
            SurfaceModel::FlatCylinder(f) => f.complex().complex.euler_characteristic(),
            SurfaceModel::TriangulatedMesh(m) => m.complex().euler_characteristic(),
        }
    }

    fn validate(&self, violations: &mut Vec<String>) {
        match self {
            SurfaceModel::FenchelNielsen(f) => f.validate(violations),
            SurfaceModel::FlatCylinder(f) => {
                f.validate(violations);
                if violations.is_empty() {
                    let c = f.complex().complex;
                    violations.extend(c.orientation_defects());
                    if !c.is_connected() {
                        violations.push("glued cylinders form a disconnected surface".into());
                    }
                }
            }
            SurfaceModel::TriangulatedMesh(m) => m.validate(violations),
        }
    }
}

/// Model-specific handle to a free homotopy class of simple closed curves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveHandle {
    /// Index of a pants curve in a Fenchel–Nielsen payload.
    PantsCurve(usize),
    /// Core curve of a cylinder in a flat-cylinder payload.
    CylinderCore(usize),
    /// Closed non-backtracking edge walk on a mesh.
    EdgeCycle(Vec<SignedEdge>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveClass {
    pub name: String,
    pub handle: CurveHandle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    pub genus: u32,
    pub model: SurfaceModel,
    pub curves: Vec<CurveClass>,
}

pub(crate) fn genus_from_characteristic(chi: i64) -> Result<u32, SurfaceError> {
    if (2 - chi) % 2 != 0 {
        return Err(SurfaceError::OddCharacteristic(chi));
    }
    let g = (2 - chi) / 2;
    if g < 0 {
        return Err(SurfaceError::Validation(vec![format!(
            "Euler characteristic {chi} exceeds 2"
        )]));
    }
    Ok(g as u32)
}

/// Genus computed from the payload's Euler characteristic.
pub fn euler_genus(surface: &Surface) -> Result<u32, SurfaceError> {
    genus_from_characteristic(surface.model.euler_characteristic())
}

pub fn load_surface(path: impl AsRef<Path>) -> Result<Surface, SurfaceError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| SurfaceError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Surface::from_json_bytes(&bytes)
}

impl Surface {
    /// Validates a model and its named curves and assembles a surface.
    pub fn new(declared_genus: i64, model: SurfaceModel, curves: Vec<CurveClass>) -> Result<Self, SurfaceError> {
        let mut violations = Vec::new();
        model.validate(&mut violations);
        if !violations.is_empty() {
            return Err(SurfaceError::Validation(violations));
        }
        let computed = genus_from_characteristic(model.euler_characteristic())?;
        if computed == 0 {
            return Err(SurfaceError::Validation(vec!["payload is a sphere (genus 0)".into()]));
        }
        if declared_genus != computed as i64 {
            return Err(SurfaceError::GenusMismatch {
                declared: declared_genus,
                computed,
            });
        }
        let curves = normalize_curves(&model, curves)?;
        Ok(Surface {
            genus: computed,
            model,
            curves,
        })
    }

    pub fn from_json_bytes(bytes: &[u8]) -> Result<Self, SurfaceError> {
        schema::parse(bytes)
    }

    pub fn to_json_string(&self) -> String {
        schema::serialize(self)
    }

    pub fn kind(&self) -> ModelKind {
        self.model.kind()
    }

    pub fn curve(&self, name: &str) -> Option<&CurveClass> {
        self.curves.iter().find(|c| c.name == name)
    }

    /// Homology classes of the named curves in a common `Z^{2g}` basis for
    /// complex-backed models. Fenchel–Nielsen surfaces have no cell complex;
    /// use [`FenchelNielsen::homology_rank`] there.
    pub fn curve_homology(&self, curves: &[usize]) -> Option<Vec<Vec<i64>>> {
        let (basis, walks) = match &self.model {
            SurfaceModel::FenchelNielsen(_) => return None,
            SurfaceModel::FlatCylinder(f) => {
                let fc = f.complex();
                let basis = fc.complex.cohomology_basis();
                let walks = curves
                    .iter()
                    .map(|&i| match &self.curves[i].handle {
                        CurveHandle::CylinderCore(k) => fc.core_walks[*k].clone(),
                        _ => unreachable!("flat surfaces only carry cylinder cores"),
                    })
                    .collect::<Vec<_>>();
                (basis, walks)
            }
            SurfaceModel::TriangulatedMesh(m) => {
                let basis = m.complex().cohomology_basis();
                let walks = curves
                    .iter()
                    .map(|&i| match &self.curves[i].handle {
                        CurveHandle::EdgeCycle(w) => w.clone(),
                        _ => unreachable!("mesh surfaces only carry edge cycles"),
                    })
                    .collect::<Vec<_>>();
                (basis, walks)
            }
        };
        Some(walks.iter().map(|w| basis.class_of(w)).collect())
    }
}

fn normalize_curves(model: &SurfaceModel, curves: Vec<CurveClass>) -> Result<Vec<CurveClass>, SurfaceError> {
    let mut violations = Vec::new();
    let mut names = std::collections::BTreeSet::new();
    for c in &curves {
        if c.name.is_empty() {
            violations.push("curve with empty name".into());
        }
        if !names.insert(c.name.clone()) {
            violations.push(format!("duplicate curve name {:?}", c.name));
        }
    }
    let mut out = curves.clone();
    match model {
        SurfaceModel::FenchelNielsen(f) => {
            let mut named = vec![None; f.curves.len()];
            for c in &curves {
                match c.handle {
                    CurveHandle::PantsCurve(i) if i < f.curves.len() => {
                        if named[i].replace(c.name.clone()).is_some() {
                            violations.push(format!("pants curve {i} is named twice"));
                        }
                    }
                    CurveHandle::PantsCurve(i) => violations.push(format!("curve {:?} references pants curve {i}", c.name)),
                    _ => violations.push(format!("curve {:?} is not a pants curve", c.name)),
                }
            }
            // Every pants curve is a candidate; unnamed ones get a default name.
            out = named
                .into_iter()
                .enumerate()
                .map(|(i, n)| CurveClass {
                    name: n.unwrap_or_else(|| format!("pants{i}")),
                    handle: CurveHandle::PantsCurve(i),
                })
                .collect();
            let mut seen = std::collections::BTreeSet::new();
            for c in &out {
                if !seen.insert(c.name.clone()) {
                    violations.push(format!("default curve name {:?} collides with a named curve", c.name));
                }
            }
        }
        SurfaceModel::FlatCylinder(f) => {
            for c in &curves {
                match c.handle {
                    CurveHandle::CylinderCore(k) if k < f.cylinders.len() => {}
                    CurveHandle::CylinderCore(k) => violations.push(format!("curve {:?} references cylinder {k}", c.name)),
                    _ => violations.push(format!("curve {:?} is not a cylinder core", c.name)),
                }
            }
        }
        SurfaceModel::TriangulatedMesh(m) => {
            let complex = m.complex();
            for c in &curves {
                match &c.handle {
                    CurveHandle::EdgeCycle(w) => {
                        if !complex.is_closed_walk(w) {
                            violations.push(format!("curve {:?} is not a closed edge walk", c.name));
                        } else if (0..w.len()).any(|i| w.len() > 1 && w[(i + 1) % w.len()] == w[i].reversed()) {
                            violations.push(format!("curve {:?} backtracks", c.name));
                        }
                    }
                    _ => violations.push(format!("curve {:?} is not an edge cycle", c.name)),
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(out)
    } else {
        Err(SurfaceError::Validation(violations))
    }
}
