#![allow(dead_code)]

use std::f64::consts::PI;
use std::path::PathBuf;

use vrbound::surface::{
    BoundaryPoint, CurveClass, CurveHandle, Cylinder, FenchelNielsen, FlatCylinders, Gluing, MeshEdge, SignedEdge,
    Surface, SurfaceModel, TriangulatedMesh,
};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn fn_surface(g: i64, pants: usize, ends: &[[usize; 2]], lengths: &[f64], names: &[&str]) -> Surface {
    let curves = names
        .iter()
        .enumerate()
        .map(|(i, n)| CurveClass { name: n.to_string(), handle: CurveHandle::PantsCurve(i) })
        .collect();
    Surface::new(g, SurfaceModel::FenchelNielsen(FenchelNielsen::from_graph(pants, ends, lengths)), curves).unwrap()
}

pub const THETA: [[usize; 2]; 3] = [[0, 1], [0, 1], [0, 1]];
pub const DUMBBELL: [[usize; 2]; 3] = [[0, 0], [0, 1], [1, 1]];
pub const K4: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [2, 3], [3, 1]];
/// Genus four: loops at both ends of a chain of six pants, with doubled links.
pub const CHAIN4: [[usize; 2]; 9] = [[0, 0], [0, 1], [1, 2], [1, 2], [2, 3], [3, 4], [3, 4], [4, 5], [5, 5]];

pub fn pants_graph(g: u32) -> (usize, &'static [[usize; 2]]) {
    match g {
        2 => (2, &THETA),
        3 => (4, &K4),
        4 => (6, &CHAIN4),
        _ => panic!("no pants graph for genus {g}"),
    }
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("c{i}")).collect()
}

pub fn theta(lengths: [f64; 3]) -> Surface {
    fn_surface(2, 2, &THETA, &lengths, &["a", "b", "c"])
}

fn bp(cylinder: usize, offset: f64) -> BoundaryPoint {
    BoundaryPoint { cylinder, offset }
}

fn cores(n: usize) -> Vec<CurveClass> {
    (0..n).map(|i| CurveClass { name: format!("core{i}"), handle: CurveHandle::CylinderCore(i) }).collect()
}

/// Three unit squares: a 2x1 cylinder with a 1x1 cylinder over its left half.
pub fn l_shaped() -> Surface {
    let flat = FlatCylinders {
        cylinders: vec![Cylinder { circumference: 2.0, height: 1.0 }, Cylinder { circumference: 1.0, height: 1.0 }],
        gluing: vec![
            Gluing { top: bp(0, 0.0), bottom: bp(1, 0.0), length: 1.0 },
            Gluing { top: bp(0, 1.0), bottom: bp(0, 1.0), length: 1.0 },
            Gluing { top: bp(1, 0.0), bottom: bp(0, 0.0), length: 1.0 },
        ],
    };
    Surface::new(2, SurfaceModel::FlatCylinder(flat), cores(2)).unwrap()
}

/// Unit-circumference torus made of two stacked cylinders of height 1/2.
pub fn stacked_torus() -> Surface {
    let flat = FlatCylinders {
        cylinders: vec![Cylinder { circumference: 1.0, height: 0.5 }, Cylinder { circumference: 1.0, height: 0.5 }],
        gluing: vec![
            Gluing { top: bp(0, 0.0), bottom: bp(1, 0.0), length: 1.0 },
            Gluing { top: bp(1, 0.0), bottom: bp(0, 0.0), length: 1.0 },
        ],
    };
    Surface::new(1, SurfaceModel::FlatCylinder(flat), cores(2)).unwrap()
}

pub fn grid_torus(a: f64, b: f64, nx: usize, ny: usize) -> Surface {
    let mesh = TriangulatedMesh::flat_torus_grid(a, b, nx, ny);
    let curves = vec![
        CurveClass { name: "horizontal".into(), handle: CurveHandle::EdgeCycle(TriangulatedMesh::grid_row_cycle(nx, 0)) },
        CurveClass {
            name: "vertical".into(),
            handle: CurveHandle::EdgeCycle(TriangulatedMesh::grid_column_cycle(nx, ny, 0)),
        },
    ];
    Surface::new(1, SurfaceModel::TriangulatedMesh(mesh), curves).unwrap()
}

/// Regular Euclidean octagon with sides glued by `a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹`,
/// coned from its centre: vertex 0 is the centre, vertex 1 the corner.
pub fn octagon() -> Surface {
    let side = 2.0 * (PI / 8.0).sin();
    let mut edges: Vec<MeshEdge> = (0..4).map(|_| MeshEdge { ends: [1, 1], length: side }).collect();
    edges.extend((0..8).map(|_| MeshEdge { ends: [0, 1], length: 1.0 }));
    let word = [(0, true), (1, true), (0, false), (1, false), (2, true), (3, true), (2, false), (3, false)];
    let triangles = (0..8)
        .map(|k| {
            let (e, fwd) = word[k];
            [SignedEdge::new(4 + k, true), SignedEdge::new(e, fwd), SignedEdge::new(4 + (k + 1) % 8, false)]
        })
        .collect();
    let mesh = TriangulatedMesh { vertex_count: 2, edges, triangles };
    let curves = ["a", "b", "c", "d"]
        .iter()
        .enumerate()
        .map(|(i, n)| CurveClass { name: n.to_string(), handle: CurveHandle::EdgeCycle(vec![SignedEdge::new(i, true)]) })
        .collect();
    Surface::new(2, SurfaceModel::TriangulatedMesh(mesh), curves).unwrap()
}

/// Every shipped fixture with the builder that produces it.
pub fn fixtures() -> Vec<(&'static str, Surface)> {
    let k4_names = ["a", "b", "c", "d", "e", "f"];
    vec![
        ("fn_theta_g2.json", theta([0.5, 2.0, 3.0])),
        ("fn_theta_g2_long.json", theta([3.0, 2.0, 3.0])),
        ("fn_dumbbell_g2.json", fn_surface(2, 2, &DUMBBELL, &[1.0, 0.1, 1.0], &["left", "waist", "right"])),
        ("fn_k4_g3.json", fn_surface(3, 4, &K4, &[0.8, 1.2, 0.6, 2.0, 1.5, 0.9], &k4_names)),
        ("fn_chain_g4.json", {
            let lengths = [0.7, 1.0, 0.9, 1.4, 1.0, 0.5, 2.2, 1.0, 1.1];
            let n: Vec<String> = names(9);
            let refs: Vec<&str> = n.iter().map(|s| s.as_str()).collect();
            fn_surface(4, 6, &CHAIN4, &lengths, &refs)
        }),
        ("flat_l_shaped_g2.json", l_shaped()),
        ("flat_stacked_torus.json", stacked_torus()),
        ("mesh_square_torus.json", grid_torus(1.0, 1.0, 8, 8)),
        ("mesh_grid_torus_2x1.json", grid_torus(2.0, 1.0, 16, 8)),
        ("mesh_octagon_g2.json", octagon()),
    ]
}
