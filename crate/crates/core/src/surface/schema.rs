//! Surface file format (UTF-8 JSON, `format_version` 1).
//!
//! ```json
//! {
//!   "format_version": 1,
//!   "genus": 2,
//!   "model": "fenchel_nielsen" | "flat_cylinder" | "triangulated_mesh",
//!   "payload": { ... },
//!   "curves": [ { "name": "a", <handle> }, ... ]
//! }
//! ```
//!
//! Payloads:
//!
//! * `fenchel_nielsen`: `{"pants_count": n, "twist_unit": "radians"|"length",
//!   "curves": [{"ends": [p, q], "length": l, "twist": t}, ...]}`;
//!   curve handle `"pants_curve": index`.
//! * `flat_cylinder`: `{"cylinders": [{"circumference": c, "height": h}, ...],
//!   "gluing": [{"top": {"cylinder": i, "offset": o}, "bottom": {"cylinder": j,
//!   "offset": o'}, "length": l}, ...]}`; curve handle `"cylinder": index`.
//! * `triangulated_mesh`: `{"vertex_count": n, "edges": [{"ends": [u, v],
//!   "length": l}, ...], "triangles": [[[e, ±1], [e, ±1], [e, ±1]], ...]}`;
//!   curve handle `"cycle": [[e, ±1], ...]`.
//!
//! Unknown fields are rejected at every level.

use serde::{Deserialize, Serialize};

use super::{
    CurveClass, CurveHandle, FenchelNielsen, FlatCylinders, SignedEdge, Surface, SurfaceError, SurfaceModel,
    TriangulatedMesh,
};

pub const FORMAT_VERSION: u32 = 1;

/// Short description of the file format, printed on usage errors.
pub const SCHEMA_HELP: &str = r#"surface file (JSON, format_version 1):
  {"format_version": 1, "genus": g, "model": M, "payload": {...}, "curves": [{"name": "a", HANDLE}, ...]}
  M = "fenchel_nielsen":   payload {"pants_count": n, "twist_unit": "radians"|"length",
                                     "curves": [{"ends": [p, q], "length": l, "twist": t}, ...]}
                           HANDLE "pants_curve": index
  M = "flat_cylinder":     payload {"cylinders": [{"circumference": c, "height": h}, ...],
                                     "gluing": [{"top": {"cylinder": i, "offset": o},
                                                 "bottom": {"cylinder": j, "offset": o2}, "length": l}, ...]}
                           HANDLE "cylinder": index
  M = "triangulated_mesh": payload {"vertex_count": n, "edges": [{"ends": [u, v], "length": l}, ...],
                                     "triangles": [[[e, 1], [e, -1], [e, 1]], ...]}
                           HANDLE "cycle": [[e, 1], [e, -1], ...]
"#;

#[derive(Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
enum RawModel {
    FenchelNielsen,
    FlatCylinder,
    TriangulatedMesh,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format_version: u32,
    genus: i64,
    model: RawModel,
    payload: serde_json::Value,
    #[serde(default)]
    curves: Vec<RawCurve>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pants_curve: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cylinder: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cycle: Option<Vec<SignedEdge>>,
}

#[derive(Serialize)]
struct OutFile<'a, P: Serialize> {
    format_version: u32,
    genus: u32,
    model: RawModel,
    payload: &'a P,
    curves: Vec<RawCurve>,
}

fn parse_err(e: impl std::fmt::Display) -> SurfaceError {
    SurfaceError::Parse(e.to_string())
}

pub(super) fn parse(bytes: &[u8]) -> Result<Surface, SurfaceError> {
    let text = std::str::from_utf8(bytes).map_err(parse_err)?;
    let raw: RawFile = serde_json::from_str(text).map_err(parse_err)?;
    if raw.format_version != FORMAT_VERSION {
        return Err(SurfaceError::Parse(format!(
            "unsupported format_version {}, expected {FORMAT_VERSION}",
            raw.format_version
        )));
    }
    let model = match raw.model {
        RawModel::FenchelNielsen => {
            SurfaceModel::FenchelNielsen(serde_json::from_value::<FenchelNielsen>(raw.payload).map_err(parse_err)?)
        }
        RawModel::FlatCylinder => {
            SurfaceModel::FlatCylinder(serde_json::from_value::<FlatCylinders>(raw.payload).map_err(parse_err)?)
        }
        RawModel::TriangulatedMesh => {
            SurfaceModel::TriangulatedMesh(serde_json::from_value::<TriangulatedMesh>(raw.payload).map_err(parse_err)?)
        }
    };
    let mut curves = Vec::with_capacity(raw.curves.len());
    for c in raw.curves {
        let handle = match (&raw.model, c.pants_curve, c.cylinder, c.cycle) {
            (RawModel::FenchelNielsen, Some(i), None, None) => CurveHandle::PantsCurve(i),
            (RawModel::FlatCylinder, None, Some(k), None) => CurveHandle::CylinderCore(k),
            (RawModel::TriangulatedMesh, None, None, Some(w)) => CurveHandle::EdgeCycle(w),
            _ => {
                return Err(SurfaceError::Parse(format!(
                    "curve {:?} must carry exactly the handle field of its model",
                    c.name
                )))
            }
        };
        curves.push(CurveClass { name: c.name, handle });
    }
    Surface::new(raw.genus, model, curves)
}

pub(super) fn serialize(surface: &Surface) -> String {
    let curves = surface
        .curves
        .iter()
        .map(|c| {
            let mut raw = RawCurve {
                name: c.name.clone(),
                pants_curve: None,
                cylinder: None,
                cycle: None,
            };
            match &c.handle {
                CurveHandle::PantsCurve(i) => raw.pants_curve = Some(*i),
                CurveHandle::CylinderCore(k) => raw.cylinder = Some(*k),
                CurveHandle::EdgeCycle(w) => raw.cycle = Some(w.clone()),
            }
            raw
        })
        .collect();
    let text = match &surface.model {
        SurfaceModel::FenchelNielsen(p) => to_string(surface.genus, RawModel::FenchelNielsen, p, curves),
        SurfaceModel::FlatCylinder(p) => to_string(surface.genus, RawModel::FlatCylinder, p, curves),
        SurfaceModel::TriangulatedMesh(p) => to_string(surface.genus, RawModel::TriangulatedMesh, p, curves),
    };
    text + "\n"
}

fn to_string<P: Serialize>(genus: u32, model: RawModel, payload: &P, curves: Vec<RawCurve>) -> String {
    serde_json::to_string_pretty(&OutFile {
        format_version: FORMAT_VERSION,
        genus,
        model,
        payload,
        curves,
    })
    .expect("surface payloads serialize")
}
