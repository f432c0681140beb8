//! Bowtie decomposition of a fully augmented diagram, its nerve, the
//! prism triangulation of the trivial mapping torus, and volume bounds.
//!
//! Ideal vertices are numbered `0..2c` for the strand arcs (map edges, in
//! [`CombinatorialMap::edges`] order) followed by `2c..3c` for the crossing
//! circles. Each circle contributes a west and an east shaded triangle; each
//! map face becomes a white ideal polygon.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::fal_diagram::{FalDiagram, FalError, Sign, VertexKind};
use crate::surface_map::{CombinatorialMap, Dart, MapError};

/// Volume of the regular ideal tetrahedron.
pub const V_TET: f64 = 1.0149416064096536;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BowtieError {
    #[error("diagram is not cellular on a surface of genus {declared} (map genus {actual})")]
    NotCellular { declared: u32, actual: u32 },
    #[error("vertex {0} is a crossing, not a crossing circle")]
    NotFullyAugmented(usize),
    #[error("white face {face} has degree {degree}")]
    DegenerateFace { face: usize, degree: usize },
    #[error("prism triangulation needs the trivial mapping torus")]
    WrongManifoldKind,
    #[error("genus {0} is below 2")]
    GenusTooSmall(u32),
    #[error(transparent)]
    Fal(#[from] FalError),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ManifoldKind {
    TrivialMappingTorus,
    MappingTorus,
    DoubledThickenedSurface,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FaceRef {
    White(usize),
    Shaded(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShadedTriangle {
    pub circle: usize,
    pub west: bool,
    /// Ideal vertices: circle, then the two strand arcs.
    pub corners: [usize; 3],
    /// Diagram darts the arcs leave through: `(d1, d2)` west, `(d3, d0)` east.
    pub darts: [Dart; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhitePolygon {
    pub face: usize,
    pub corners: Vec<usize>,
    /// `sides[i]` joins `corners[i-1]` to `corners[i]`.
    sides: Vec<SideKey>,
}

impl WhitePolygon {
    pub fn degree(&self) -> usize {
        self.corners.len()
    }
}

/// Where a polygon side comes from: a diagram corner slot, or a fan diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
enum SideKey {
    /// Slots at circle `v`: 0, 1 top; 2 west; 3, 4 bottom; 5 east.
    Corner(usize, u8),
    Diagonal(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BowtieDecomposition {
    pub genus: u32,
    pub circle_count: usize,
    pub white_faces: Vec<WhitePolygon>,
    pub shaded_faces: Vec<ShadedTriangle>,
    pub ideal_vertex_incidences: Vec<Vec<FaceRef>>,
    /// Components of the surface complement cut along the projection surface.
    pub chunk_count: usize,
    arcs: Vec<(Dart, Dart)>,
    half_twists: Vec<(bool, Sign)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nerve {
    pub map: CombinatorialMap,
    pub faces: Vec<Vec<Dart>>,
}

impl Nerve {
    pub fn node_count(&self) -> usize {
        self.map.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.map.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.node_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfaceTriangle {
    pub corners: [usize; 3],
    pub origin: FaceRef,
    /// Sort key per corner; positions disambiguate repeated ideal vertices.
    keys: [(usize, usize); 3],
    sides: [SideKey; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangulatedBoundary {
    pub triangles: Vec<SurfaceTriangle>,
}

impl TriangulatedBoundary {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

pub type Gluing = Option<(usize, usize, [u8; 4])>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrismTriangulation {
    pub prism_count: usize,
    /// Three tetrahedra per prism, prism `p` owning `3p..3p+3`.
    pub gluings: Vec<[Gluing; 4]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeBounds {
    pub v_tet: f64,
    pub cusps: usize,
    pub lower: f64,
    pub upper: Option<f64>,
}

pub fn decompose(fal: &FalDiagram) -> Result<BowtieDecomposition, BowtieError> {
    let map = fal.map();
    let genus = map.genus()?;
    if let Some(declared) = fal.declared_genus() {
        if declared != genus {
            return Err(BowtieError::NotCellular {
                declared,
                actual: genus,
            });
        }
    }
    let mut half_twists = Vec::new();
    for v in 0..map.vertex_count() {
        match fal.kind(v) {
            VertexKind::CrossingCircle {
                half_twist,
                half_twist_sign,
            } => half_twists.push((half_twist, half_twist_sign)),
            VertexKind::Crossing { .. } => return Err(BowtieError::NotFullyAugmented(v)),
        }
        if map.degree(v) != 4 {
            return Err(FalError::NotFourValent(v).into());
        }
    }
    let c = map.vertex_count();
    let arcs = map.edges();
    let edge_of = map.edge_index();
    let arc = |d: Dart| edge_of[d];
    let circle = |v: usize| 2 * c + v;

    let mut shaded_faces = Vec::with_capacity(2 * c);
    for v in 0..c {
        let [d0, d1, d2, d3] = <[Dart; 4]>::try_from(map.rotation(v)).unwrap();
        shaded_faces.push(ShadedTriangle {
            circle: v,
            west: true,
            corners: [circle(v), arc(d1), arc(d2)],
            darts: [d1, d2],
        });
        shaded_faces.push(ShadedTriangle {
            circle: v,
            west: false,
            corners: [circle(v), arc(d3), arc(d0)],
            darts: [d3, d0],
        });
    }

    let faces = map.trace_faces();
    let mut white_faces = Vec::with_capacity(faces.len());
    for (f, cycle) in faces.faces.iter().enumerate() {
        let mut corners = Vec::new();
        let mut sides = Vec::new();
        for &y in cycle {
            let v = map.vertex_of(y);
            match map.position(y) {
                1 => {
                    corners.extend([circle(v), arc(y)]);
                    sides.extend([SideKey::Corner(v, 0), SideKey::Corner(v, 1)]);
                }
                3 => {
                    corners.extend([circle(v), arc(y)]);
                    sides.extend([SideKey::Corner(v, 3), SideKey::Corner(v, 4)]);
                }
                2 => {
                    corners.push(arc(y));
                    sides.push(SideKey::Corner(v, 2));
                }
                _ => {
                    corners.push(arc(y));
                    sides.push(SideKey::Corner(v, 5));
                }
            }
        }
        white_faces.push(WhitePolygon {
            face: f,
            corners,
            sides,
        });
    }

    let mut ideal_vertex_incidences = vec![Vec::new(); 3 * c];
    for (i, s) in shaded_faces.iter().enumerate() {
        for &x in &s.corners {
            ideal_vertex_incidences[x].push(FaceRef::Shaded(i));
        }
    }
    for (f, w) in white_faces.iter().enumerate() {
        for &x in &w.corners {
            if ideal_vertex_incidences[x].last() != Some(&FaceRef::White(f)) {
                ideal_vertex_incidences[x].push(FaceRef::White(f));
            }
        }
    }

    Ok(BowtieDecomposition {
        genus,
        circle_count: c,
        white_faces,
        shaded_faces,
        ideal_vertex_incidences,
        chunk_count: 1,
        arcs,
        half_twists,
    })
}

impl BowtieDecomposition {
    pub fn ideal_vertex_count(&self) -> usize {
        self.ideal_vertex_incidences.len()
    }

    /// Glues the shaded triangles back along the strand passages and
    /// reapplies the recorded half-twists.
    pub fn reglue(&self) -> Result<FalDiagram, BowtieError> {
        let c = self.circle_count;
        let mut rotations = vec![Vec::new(); c];
        for s in &self.shaded_faces {
            let r = &mut rotations[s.circle];
            if r.is_empty() {
                r.resize(4, usize::MAX);
            }
            if s.west {
                r[1] = s.darts[0];
                r[2] = s.darts[1];
            } else {
                r[3] = s.darts[0];
                r[0] = s.darts[1];
            }
        }
        let map = CombinatorialMap::from_pairs(
            rotations,
            &self.arcs.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        )?;
        let kinds = self
            .half_twists
            .iter()
            .map(|&(half_twist, half_twist_sign)| VertexKind::CrossingCircle {
                half_twist,
                half_twist_sign,
            })
            .collect();
        Ok(FalDiagram::new(map, kinds, Some(self.genus))?)
    }

    /// Dual graph of the white faces with one diagonal per crossing circle
    /// joining its top and bottom faces.
    pub fn build_nerve(&self, fal: &FalDiagram) -> Result<Nerve, BowtieError> {
        let map = fal.map();
        let n = map.dart_count();
        let faces = map.trace_faces();
        let mut opposite: Vec<Dart> = (0..n).map(|d| map.opposite(d)).collect();
        for k in 0..self.circle_count {
            opposite.extend([n + 2 * k + 1, n + 2 * k]);
        }
        let rotations: Vec<Vec<Dart>> = faces
            .faces
            .iter()
            .map(|cycle| {
                let mut rot = Vec::with_capacity(cycle.len());
                for &y in cycle {
                    let v = map.vertex_of(y);
                    match map.position(y) {
                        1 => rot.push(n + 2 * v),
                        3 => rot.push(n + 2 * v + 1),
                        _ => {}
                    }
                    rot.push(y);
                }
                rot
            })
            .collect();
        let nerve = CombinatorialMap::new(rotations, opposite)?;
        let faces = nerve.trace_faces().faces;
        Ok(Nerve { map: nerve, faces })
    }

    /// Shaded triangles plus a fan of each white polygon from its lowest
    /// ideal vertex.
    pub fn triangulate_white_faces(&self) -> Result<TriangulatedBoundary, BowtieError> {
        let mut triangles = Vec::new();
        for (i, s) in self.shaded_faces.iter().enumerate() {
            let v = s.circle;
            let sides = if s.west {
                [SideKey::Corner(v, 1), SideKey::Corner(v, 2), SideKey::Corner(v, 3)]
            } else {
                [SideKey::Corner(v, 4), SideKey::Corner(v, 5), SideKey::Corner(v, 0)]
            };
            triangles.push(SurfaceTriangle {
                corners: s.corners,
                origin: FaceRef::Shaded(i),
                keys: s.corners.map(|x| (x, 0)),
                sides,
            });
        }
        for (f, w) in self.white_faces.iter().enumerate() {
            let n = w.degree();
            if n < 3 {
                return Err(BowtieError::DegenerateFace { face: f, degree: n });
            }
            let start = (0..n).min_by_key(|&i| (w.corners[i], i)).unwrap();
            let at = |i: usize| w.corners[(start + i) % n];
            let side_before = |i: usize| w.sides[(start + i) % n];
            for i in 1..n - 1 {
                let s0 = if i == 1 { side_before(1) } else { SideKey::Diagonal(f, i) };
                let s2 = if i + 1 == n - 1 { side_before(0) } else { SideKey::Diagonal(f, i + 1) };
                triangles.push(SurfaceTriangle {
                    corners: [at(0), at(i), at(i + 1)],
                    origin: FaceRef::White(f),
                    keys: [(at(0), 0), (at(i), i), (at(i + 1), i + 1)],
                    sides: [s0, side_before(i + 1), s2],
                });
            }
        }
        Ok(TriangulatedBoundary { triangles })
    }
}

// Staircase split of the prism over a triangle with sorted corners 0 < 1 < 2.
// Labels: 0..3 bottom corners, 3..6 top corners.
const TETS: [[u8; 4]; 3] = [[0, 3, 4, 5], [0, 1, 4, 5], [0, 1, 2, 5]];

fn find_face(labels: [u8; 3]) -> (usize, usize) {
    let mut want = labels;
    want.sort_unstable();
    for (t, tet) in TETS.iter().enumerate() {
        for f in 0..4 {
            let mut face: Vec<u8> = (0..4).filter(|&i| i != f).map(|i| tet[i]).collect();
            face.sort_unstable();
            if face == want {
                return (t, f);
            }
        }
    }
    unreachable!("label set {labels:?} is not a tetrahedron face")
}

/// Glues a face of prism `p` to prism `q`, matching labels position by position.
fn glue(gluings: &mut [[Gluing; 4]], p: usize, from: [u8; 3], q: usize, to: [u8; 3]) {
    let (ta, fa) = find_face(from);
    let (tb, fb) = find_face(to);
    let (xa, xb) = (TETS[ta], TETS[tb]);
    let mut perm = [0u8; 4];
    perm[fa] = fb as u8;
    for (l, &label) in from.iter().enumerate() {
        let i = xa.iter().position(|&x| x == label).unwrap();
        let j = xb.iter().position(|&x| x == to[l]).unwrap();
        perm[i] = j as u8;
    }
    gluings[3 * p + ta][fa] = Some((3 * q + tb, fb, perm));
}

pub fn prism_triangulation(
    d: &BowtieDecomposition,
    kind: ManifoldKind,
) -> Result<PrismTriangulation, BowtieError> {
    if kind != ManifoldKind::TrivialMappingTorus {
        return Err(BowtieError::WrongManifoldKind);
    }
    let boundary = d.triangulate_white_faces()?;
    let tris = &boundary.triangles;
    // rank[p][corner] = position of the corner in sorted order
    let rank: Vec<[u8; 3]> = tris
        .iter()
        .map(|t| {
            let mut order = [0usize, 1, 2];
            order.sort_by_key(|&i| t.keys[i]);
            let mut r = [0u8; 3];
            for (pos, &i) in order.iter().enumerate() {
                r[i] = pos as u8;
            }
            r
        })
        .collect();
    let mut gluings: Vec<[Gluing; 4]> = vec![[None; 4]; 3 * tris.len()];

    let mut side_owner: HashMap<SideKey, Vec<(usize, usize)>> = HashMap::new();
    for (p, t) in tris.iter().enumerate() {
        for s in 0..3 {
            side_owner.entry(t.sides[s]).or_default().push((p, s));
        }
    }
    for owners in side_owner.values() {
        let &[(p, s), (q, s2)] = owners.as_slice() else {
            unreachable!("every side is shared by two triangles")
        };
        for (a, sa, b, sb) in [(p, s, q, s2), (q, s2, p, s)] {
            let ta = &tris[a];
            let tb = &tris[b];
            let ends_a = [sa, (sa + 1) % 3];
            let ends_b = [sb, (sb + 1) % 3];
            // match endpoints by ideal vertex, or by sort key for diagonals
            let matches = |i: usize, j: usize| match ta.sides[sa] {
                SideKey::Diagonal(..) => ta.keys[i] == tb.keys[j],
                SideKey::Corner(..) => ta.corners[i] == tb.corners[j],
            };
            let partner = |i: usize| {
                if matches(i, ends_b[0]) {
                    ends_b[0]
                } else {
                    debug_assert!(matches(i, ends_b[1]));
                    ends_b[1]
                }
            };
            let (i0, i1) = (ends_a[0], ends_a[1]);
            let (j0, j1) = (partner(i0), partner(i1));
            let (ra, rb) = (rank[a], rank[b]);
            // the rectangle over this side, split along bottom-low to top-high
            let (lo_a, hi_a, lo_b, hi_b) = if ra[i0] < ra[i1] {
                (ra[i0], ra[i1], rb[j0], rb[j1])
            } else {
                (ra[i1], ra[i0], rb[j1], rb[j0])
            };
            assert!(lo_b < hi_b, "diagonals disagree across a prism side");
            glue(&mut gluings, a, [lo_a, hi_a, hi_a + 3], b, [lo_b, hi_b, hi_b + 3]);
            glue(&mut gluings, a, [lo_a, lo_a + 3, hi_a + 3], b, [lo_b, lo_b + 3, hi_b + 3]);
        }
    }
    for p in 0..tris.len() {
        // internal faces: T0|T1 share {b0, t1, t2}, T1|T2 share {b0, b1, t2}
        for (ta, fa, tb, fb) in [(0, 1, 1, 1), (1, 2, 2, 2)] {
            let perm = |from: [u8; 4], to: [u8; 4]| from.map(|x| to.iter().position(|&y| y == x).unwrap_or(fb) as u8);
            let forward = perm(TETS[ta], TETS[tb]);
            let backward = perm(TETS[tb], TETS[ta]).map(|x| if x as usize == fb { fa as u8 } else { x });
            gluings[3 * p + ta][fa] = Some((3 * p + tb, fb, forward));
            gluings[3 * p + tb][fb] = Some((3 * p + ta, fa, backward));
        }
    }
    for (p, t) in tris.iter().enumerate() {
        match t.origin {
            FaceRef::White(_) => {
                glue(&mut gluings, p, [3, 4, 5], p, [0, 1, 2]);
                glue(&mut gluings, p, [0, 1, 2], p, [3, 4, 5]);
            }
            FaceRef::Shaded(i) => {
                // west and east halves of a crossing disc are folded together
                // (circle, d1, d2) <-> (circle, d0, d3)
                let q = i ^ 1;
                let to = [0usize, 2, 1].map(|c| rank[q][c]);
                let from = [0usize, 1, 2].map(|c| rank[p][c]);
                glue(&mut gluings, p, from, q, to);
                glue(&mut gluings, p, from.map(|x| x + 3), q, to.map(|x| x + 3));
            }
        }
    }
    Ok(PrismTriangulation {
        prism_count: tris.len(),
        gluings,
    })
}

impl PrismTriangulation {
    pub fn tetrahedron_count(&self) -> usize {
        self.gluings.len()
    }

    /// Every face glued exactly once, with mutually inverse permutations.
    pub fn check_closure(&self) -> Result<(), String> {
        for (t, faces) in self.gluings.iter().enumerate() {
            for (f, g) in faces.iter().enumerate() {
                let (u, fu, perm) = g.ok_or_else(|| format!("face {f} of tetrahedron {t} is unglued"))?;
                if perm[f] as usize != fu {
                    return Err(format!("tetrahedron {t} face {f}: permutation misses face {fu}"));
                }
                let back = self.gluings[u][fu]
                    .ok_or_else(|| format!("face {fu} of tetrahedron {u} is unglued"))?;
                if back.0 != t || back.1 != f {
                    return Err(format!("({t},{f}) -> ({u},{fu}) is not reciprocated"));
                }
                if (0..4).any(|i| back.2[perm[i] as usize] as usize != i) {
                    return Err(format!("({t},{f}) and ({u},{fu}) permutations are not inverse"));
                }
            }
        }
        Ok(())
    }

    /// One line per tetrahedron: `id : (nbr,face,perm) x4`, `-` when unglued.
    pub fn export(&self) -> String {
        let mut out = String::new();
        for (t, faces) in self.gluings.iter().enumerate() {
            let _ = write!(out, "{t} :");
            for g in faces {
                match g {
                    Some((u, f, p)) => {
                        let _ = write!(out, " ({u},{f},{}{}{}{})", p[0], p[1], p[2], p[3]);
                    }
                    None => out.push_str(" -"),
                }
            }
            out.push('\n');
        }
        out
    }
}

impl VolumeBounds {
    pub fn from_cusps(cusps: usize, upper_tets: Option<usize>) -> Self {
        Self {
            v_tet: V_TET,
            cusps,
            lower: cusps as f64 * V_TET,
            upper: upper_tets.map(|n| n as f64 * V_TET),
        }
    }
}

/// Tetrahedra in the prism triangulation of the trivial mapping torus.
pub fn tetrahedron_count(c: usize, g: u32) -> usize {
    6 * (3 * c + 2 * g as usize - 2)
}

pub fn volume_bounds(
    c: usize,
    g: u32,
    l: usize,
    m: usize,
    kind: ManifoldKind,
) -> Result<VolumeBounds, BowtieError> {
    if g < 2 {
        return Err(BowtieError::GenusTooSmall(g));
    }
    // the prism triangulation covers the FAL alone, not the layered curves
    let upper = (kind == ManifoldKind::TrivialMappingTorus && m == 0).then(|| tetrahedron_count(c, g));
    Ok(VolumeBounds::from_cusps(l + c + 2 * m, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_fal, GeneratorConfig};

    fn fal(g: u32, c: usize, seed: u64) -> FalDiagram {
        generate_fal(&GeneratorConfig::new(g, c), seed).unwrap()
    }

    #[test]
    fn white_and_shaded_counts() {
        for (g, c, white) in [(2, 3, 1), (2, 6, 4), (3, 5, 1), (3, 8, 4)] {
            let d = decompose(&fal(g, c, 1)).unwrap();
            assert_eq!(d.white_faces.len(), white);
            assert_eq!(d.shaded_faces.len(), 2 * c);
            assert_eq!(d.ideal_vertex_count(), 3 * c);
            let total: usize = d.white_faces.iter().map(WhitePolygon::degree).sum();
            assert_eq!(total, 6 * c);
        }
    }

    #[test]
    fn nerve_counts() {
        for (g, c, nodes) in [(2, 3, 1), (2, 6, 4), (3, 5, 1)] {
            let f = fal(g, c, 2);
            let nerve = decompose(&f).unwrap().build_nerve(&f).unwrap();
            assert_eq!(nerve.node_count(), nodes);
            assert_eq!(nerve.edge_count(), 3 * c);
            assert_eq!(nerve.face_count(), 2 * c);
            assert!(nerve.faces.iter().all(|t| t.len() == 3));
            assert_eq!(nerve.euler_characteristic(), 2 - 2 * g as i64);
        }
    }

    #[test]
    fn triangle_counts() {
        for (g, c, n) in [(2, 3, 22), (2, 6, 40)] {
            let t = decompose(&fal(g, c, 3)).unwrap().triangulate_white_faces().unwrap();
            assert_eq!(t.len(), n);
        }
    }

    #[test]
    fn prism_counts_and_closure() {
        for (g, c, tets) in [(2, 3, 66), (2, 6, 120), (3, 5, 114)] {
            let d = decompose(&fal(g, c, 4)).unwrap();
            let p = prism_triangulation(&d, ManifoldKind::TrivialMappingTorus).unwrap();
            assert_eq!(p.tetrahedron_count(), tets);
            assert_eq!(p.prism_count * 3, tets);
            p.check_closure().unwrap();
            assert_eq!(p.export().lines().count(), tets);
        }
    }

    #[test]
    fn tetrahedron_formula() {
        assert_eq!(tetrahedron_count(3, 2), 66);
        assert_eq!(tetrahedron_count(6, 2), 120);
        assert_eq!(tetrahedron_count(4, 3), 96);
    }

    #[test]
    fn prism_needs_trivial_torus() {
        let d = decompose(&fal(2, 3, 5)).unwrap();
        assert_eq!(
            prism_triangulation(&d, ManifoldKind::MappingTorus),
            Err(BowtieError::WrongManifoldKind)
        );
    }

    #[test]
    fn degenerate_white_face() {
        let map = CombinatorialMap::from_pairs(vec![vec![0, 1, 2, 3]], &[[0, 1], [2, 3]]).unwrap();
        let f = FalDiagram::new(map, vec![VertexKind::circle(false)], Some(0)).unwrap();
        let d = decompose(&f).unwrap();
        assert!(matches!(
            d.triangulate_white_faces(),
            Err(BowtieError::DegenerateFace { .. })
        ));
    }

    #[test]
    fn rejects_crossings_and_wrong_genus() {
        let f = fal(2, 3, 6);
        assert!(matches!(
            decompose(&f.clone().with_declared_genus(Some(3))),
            Err(BowtieError::NotCellular { declared: 3, actual: 2 })
        ));
        let filled = f.fill_crossing_circle(0, 1).unwrap();
        assert!(matches!(decompose(&filled), Err(BowtieError::NotFullyAugmented(_))));
    }

    #[test]
    fn reglue_restores_half_twists() {
        let cfg = GeneratorConfig::new(2, 5).half_twists(0.5);
        let f = generate_fal(&cfg, 7).unwrap();
        assert_eq!(decompose(&f).unwrap().reglue().unwrap(), f);
    }

    #[test]
    fn volume_values() {
        let b = volume_bounds(3, 2, 1, 0, ManifoldKind::TrivialMappingTorus).unwrap();
        assert!((b.lower - 4.0 * V_TET).abs() < 1e-12);
        assert!((b.upper.unwrap() - 66.0 * V_TET).abs() < 1e-9);
        assert!(volume_bounds(3, 2, 1, 50, ManifoldKind::MappingTorus).unwrap().upper.is_none());
        assert!(volume_bounds(3, 2, 1, 50, ManifoldKind::MappingTorus).unwrap().lower > 100.0);
        assert_eq!(
            volume_bounds(3, 1, 1, 0, ManifoldKind::TrivialMappingTorus),
            Err(BowtieError::GenusTooSmall(1))
        );
    }
}
