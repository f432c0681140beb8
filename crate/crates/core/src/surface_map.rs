//! Rotation systems on closed orientable surfaces.
//!
//! A [`CombinatorialMap`] stores, for every vertex, the counterclockwise
//! cyclic order of its darts, together with the fixed-point-free involution
//! pairing the two darts of each edge. Faces are traced with the rule
//! `next(d) = succ(opposite(d))`, so the corner between `d` and `succ(d)` at a
//! vertex belongs to the face containing `succ(d)`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Opaque dart identifier. Darts are numbered `0..dart_count`.
pub type Dart = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("malformed map: {0}")]
    Malformed(String),
    #[error("odd Euler characteristic {0}: orientable maps always have even χ")]
    InternalParity(i64),
    #[error("invalid corridor: {0}")]
    InvalidCorridor(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialMap {
    rotations: Vec<Vec<Dart>>,
    opposite: Vec<Dart>,
    vertex_of: Vec<usize>,
    position: Vec<usize>,
}

/// JSON shape shared with the diagram formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub vertices: Vec<Vec<Dart>>,
    pub opposite: Vec<[Dart; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Vec<Dart>>,
    face_of: Vec<usize>,
}

impl FaceSet {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn degree(&self, face: usize) -> usize {
        self.faces[face].len()
    }

    /// Face containing dart `d` (equivalently, the corner preceding `d`).
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d]
    }

    pub fn degree_sum(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }
}

impl CombinatorialMap {
    /// Builds a map from per-vertex counterclockwise rotations and the edge pairing.
    pub fn new(rotations: Vec<Vec<Dart>>, opposite: Vec<Dart>) -> Result<Self, MapError> {
        let n = opposite.len();
        if n == 0 {
            return Err(MapError::Malformed("map has no darts".into()));
        }
        let mut vertex_of = vec![usize::MAX; n];
        let mut position = vec![usize::MAX; n];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(MapError::Malformed(format!("vertex {v} has no darts")));
            }
            for (i, &d) in rot.iter().enumerate() {
                if d >= n {
                    return Err(MapError::Malformed(format!("dart {d} out of range")));
                }
                if vertex_of[d] != usize::MAX {
                    return Err(MapError::Malformed(format!(
                        "dart {d} appears in more than one rotation slot"
                    )));
                }
                vertex_of[d] = v;
                position[d] = i;
            }
        }
        if let Some(d) = vertex_of.iter().position(|&v| v == usize::MAX) {
            return Err(MapError::Malformed(format!("dart {d} belongs to no vertex")));
        }
        for (d, &o) in opposite.iter().enumerate() {
            if o >= n || o == d || opposite[o] != d {
                return Err(MapError::Malformed(format!(
                    "opposite is not a fixed-point-free involution at dart {d}"
                )));
            }
        }
        let map = Self {
            rotations,
            opposite,
            vertex_of,
            position,
        };
        if !map.is_connected() {
            return Err(MapError::Malformed("map is disconnected".into()));
        }
        Ok(map)
    }

    /// Builds a map from rotations and a list of opposite pairs.
    pub fn from_pairs(rotations: Vec<Vec<Dart>>, pairs: &[[Dart; 2]]) -> Result<Self, MapError> {
        let n: usize = rotations.iter().map(Vec::len).sum();
        let mut opposite = vec![usize::MAX; n];
        for &[a, b] in pairs {
            if a >= n || b >= n {
                return Err(MapError::Malformed(format!("pair ({a},{b}) out of range")));
            }
            if opposite[a] != usize::MAX || opposite[b] != usize::MAX {
                return Err(MapError::Malformed(format!("dart paired twice in ({a},{b})")));
            }
            opposite[a] = b;
            opposite[b] = a;
        }
        if let Some(d) = opposite.iter().position(|&o| o == usize::MAX) {
            return Err(MapError::Malformed(format!("dart {d} has no opposite")));
        }
        Self::new(rotations, opposite)
    }

    pub fn from_json(json: &MapJson) -> Result<Self, MapError> {
        Self::from_pairs(json.vertices.clone(), &json.opposite)
    }

    pub fn to_json(&self) -> MapJson {
        MapJson {
            vertices: self.rotations.clone(),
            opposite: self.edges().into_iter().map(|(a, b)| [a, b]).collect(),
        }
    }

    fn is_connected(&self) -> bool {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = queue.pop_front() {
            for e in [self.succ(d), self.opposite[d]] {
                if !seen[e] {
                    seen[e] = true;
                    count += 1;
                    queue.push_back(e);
                }
            }
        }
        count == n
    }

    pub fn dart_count(&self) -> usize {
        self.opposite.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.opposite.len() / 2
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<Dart>] {
        &self.rotations
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    pub fn opposite(&self, d: Dart) -> Dart {
        self.opposite[d]
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.vertex_of[d]
    }

    /// Index of `d` inside its vertex rotation.
    pub fn position(&self, d: Dart) -> usize {
        self.position[d]
    }

    /// Counterclockwise successor of `d` around its vertex.
    pub fn succ(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.vertex_of[d]];
        rot[(self.position[d] + 1) % rot.len()]
    }

    pub fn pred(&self, d: Dart) -> Dart {
        let rot = &self.rotations[self.vertex_of[d]];
        rot[(self.position[d] + rot.len() - 1) % rot.len()]
    }

    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.succ(self.opposite[d])
    }

    /// Canonical edge list: `(d, opposite(d))` with `d < opposite(d)`, sorted.
    pub fn edges(&self) -> Vec<(Dart, Dart)> {
        (0..self.dart_count())
            .filter(|&d| d < self.opposite[d])
            .map(|d| (d, self.opposite[d]))
            .collect()
    }

    /// Index of the edge carrying `d`, consistent with [`Self::edges`].
    pub fn edge_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.dart_count()];
        for (i, (a, b)) in self.edges().into_iter().enumerate() {
            idx[a] = i;
            idx[b] = i;
        }
        idx
    }

    pub fn trace_faces(&self) -> FaceSet {
        let n = self.dart_count();
        let mut face_of = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                face_of[d] = id;
                cycle.push(d);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            faces.push(cycle);
        }
        FaceSet { faces, face_of }
    }

    pub fn euler_characteristic(&self) -> i64 {
        let f = self.trace_faces().len() as i64;
        self.vertex_count() as i64 - self.edge_count() as i64 + f
    }

    pub fn genus(&self) -> Result<u32, MapError> {
        let chi = self.euler_characteristic();
        if chi % 2 != 0 || chi > 2 {
            return Err(MapError::InternalParity(chi));
        }
        Ok(((2 - chi) / 2) as u32)
    }

    /// Two-colouring of faces with edge-adjacent faces differing, if one exists.
    pub fn checkerboard_coloring(&self) -> Option<Vec<u8>> {
        let faces = self.trace_faces();
        let mut color = vec![u8::MAX; faces.len()];
        for root in 0..faces.len() {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                for &d in &faces.faces[f] {
                    let g = faces.face_of(self.opposite[d]);
                    if color[g] == u8::MAX {
                        color[g] = 1 - color[f];
                        queue.push_back(g);
                    } else if color[g] == color[f] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Cuts along the simple closed curve that crosses edges `e1` and `e2`
    /// (indices into [`Self::edges`]) and runs through faces `fa` and `fb`.
    pub fn cut_along_two_cut(
        &self,
        e1: usize,
        e2: usize,
        fa: usize,
        fb: usize,
    ) -> Result<TwoCut, MapError> {
        let edges = self.edges();
        if e1 >= edges.len() || e2 >= edges.len() {
            return Err(MapError::InvalidCorridor("edge index out of range".into()));
        }
        if e1 == e2 {
            return Err(MapError::InvalidCorridor("the two edges must differ".into()));
        }
        if fa == fb {
            return Err(MapError::InvalidCorridor(
                "corridor faces coincide; name the crossing darts with cut_along_curve".into(),
            ));
        }
        let faces = self.trace_faces();
        let pick = |(a, b): (Dart, Dart)| -> Result<Dart, MapError> {
            match (faces.face_of(a), faces.face_of(b)) {
                (x, y) if x == fa && y == fb => Ok(a),
                (x, y) if x == fb && y == fa => Ok(b),
                _ => Err(MapError::InvalidCorridor(format!(
                    "edge ({a},{b}) does not separate faces {fa} and {fb}"
                ))),
            }
        };
        let first = pick(edges[e1])?;
        let second = pick(edges[e2])?;
        self.cut_along_curve(TwoCutCurve { first, second })
    }

    /// Cuts along the curve described by two darts of one face; see [`TwoCutCurve`].
    pub fn cut_along_curve(&self, curve: TwoCutCurve) -> Result<TwoCut, MapError> {
        let faces = self.trace_faces();
        let (x, y) = (curve.first, curve.second);
        let n = self.dart_count();
        if x >= n || y >= n {
            return Err(MapError::InvalidCorridor("dart out of range".into()));
        }
        let (ox, oy) = (self.opposite[x], self.opposite[y]);
        if x == y || y == ox {
            return Err(MapError::InvalidCorridor(
                "curve must cross two distinct edges".into(),
            ));
        }
        if faces.face_of(x) != faces.face_of(y) || faces.face_of(ox) != faces.face_of(oy) {
            return Err(MapError::InvalidCorridor(
                "crossing darts do not bound a common pair of faces".into(),
            ));
        }
        let partner = |d: Dart| -> Dart {
            if d == x {
                y
            } else if d == y {
                x
            } else if d == ox {
                oy
            } else {
                ox
            }
        };
        let cut = [x, ox, y, oy];

        let v_count = self.vertex_count();
        let edge_idx = self.edge_index();
        let e_count = self.edge_count();
        let half_base = v_count + e_count;
        let half_of = |d: Dart| half_base + cut.iter().position(|&c| c == d).unwrap();
        let region_base = half_base + 4;

        // Face regions: (segment members, number of arc copies on the boundary).
        let mut regions: Vec<(Vec<usize>, usize)> = Vec::new();
        for cycle in &faces.faces {
            let cuts: Vec<usize> = (0..cycle.len()).filter(|&i| cut.contains(&cycle[i])).collect();
            if cuts.is_empty() {
                regions.push((cycle.iter().map(|&d| v_count + edge_idx[d]).collect(), 0));
                continue;
            }
            let r = cuts.len();
            if r == 4 {
                // two chords in one face must not interleave
                let pos = |d: Dart| cuts.iter().position(|&p| cycle[p] == d).unwrap();
                let (a0, a1) = (pos(x).min(pos(y)), pos(x).max(pos(y)));
                let inside = |p: usize| a0 < p && p < a1;
                if inside(pos(ox)) != inside(pos(oy)) {
                    return Err(MapError::InvalidCorridor("curve is not simple".into()));
                }
            }
            let mut segs = Vec::with_capacity(r);
            for k in 0..r {
                let (start, end) = (cuts[k], cuts[(k + 1) % r]);
                let mut members = vec![half_of(self.opposite[cycle[start]])];
                let mut i = (start + 1) % cycle.len();
                while i != end {
                    members.push(v_count + edge_idx[cycle[i]]);
                    i = (i + 1) % cycle.len();
                }
                members.push(half_of(cycle[end]));
                segs.push(members);
            }
            let mut seg_set = Dsu::new(r);
            for k in 0..r {
                let end_dart = cycle[cuts[(k + 1) % r]];
                let m = cuts
                    .iter()
                    .position(|&p| cycle[p] == partner(end_dart))
                    .ok_or_else(|| MapError::InvalidCorridor("chord leaves its face".into()))?;
                seg_set.union(k, m);
            }
            let mut grouped: Vec<(Vec<usize>, usize)> = Vec::new();
            let mut root_slot = vec![usize::MAX; r];
            for (k, members) in segs.into_iter().enumerate() {
                let root = seg_set.find(k);
                if root_slot[root] == usize::MAX {
                    root_slot[root] = grouped.len();
                    grouped.push((Vec::new(), 0));
                }
                let slot = &mut grouped[root_slot[root]];
                slot.0.extend(members);
                slot.1 += 1;
            }
            regions.extend(grouped);
        }

        let total = region_base + regions.len();
        let mut dsu = Dsu::new(total);
        let is_cut_edge = |e: usize| e == edge_idx[x] || e == edge_idx[y];
        for (e, (a, b)) in self.edges().into_iter().enumerate() {
            if !is_cut_edge(e) {
                dsu.union(v_count + e, self.vertex_of[a]);
                dsu.union(v_count + e, self.vertex_of[b]);
            }
        }
        for &d in &cut {
            dsu.union(half_of(d), self.vertex_of[d]);
        }
        for (i, (members, _)) in regions.iter().enumerate() {
            for &m in members {
                dsu.union(region_base + i, m);
            }
        }

        // Tally cells per component: χ = vertices + midpoints − edges − halves − arcs + regions.
        let mut roots: Vec<usize> = Vec::new();
        let mut tallies: Vec<(i64, Vec<usize>)> = Vec::new();
        let slot_of = |root: usize, roots: &mut Vec<usize>, tallies: &mut Vec<(i64, Vec<usize>)>| {
            match roots.iter().position(|&r| r == root) {
                Some(i) => i,
                None => {
                    roots.push(root);
                    tallies.push((0, Vec::new()));
                    roots.len() - 1
                }
            }
        };
        for v in 0..v_count {
            let s = slot_of(dsu.find(v), &mut roots, &mut tallies);
            tallies[s].0 += 1;
            tallies[s].1.push(v);
        }
        for e in 0..e_count {
            if !is_cut_edge(e) {
                let s = slot_of(dsu.find(v_count + e), &mut roots, &mut tallies);
                tallies[s].0 -= 1;
            }
        }
        for &d in &cut {
            // one half-edge and its midpoint copy cancel
            slot_of(dsu.find(half_of(d)), &mut roots, &mut tallies);
        }
        for (i, (_, arcs)) in regions.iter().enumerate() {
            let s = slot_of(dsu.find(region_base + i), &mut roots, &mut tallies);
            tallies[s].0 += 1 - *arcs as i64;
        }

        let separating = tallies.len() == 2;
        let circles = if separating { 1 } else { 2 };
        let pieces = tallies
            .into_iter()
            .map(|(chi, vertices)| {
                let capped_euler = chi + circles;
                let content_vertices = vertices.iter().filter(|&&v| self.degree(v) != 2).count();
                CutPiece {
                    is_disc: separating && capped_euler == 2,
                    vertices,
                    capped_euler,
                    boundary_circles: circles as u32,
                    content_vertices,
                }
            })
            .collect();
        Ok(TwoCut {
            curve,
            separating,
            pieces,
        })
    }

    /// All simple closed curves meeting the graph in exactly two points of
    /// distinct edges, one per unordered crossing pair.
    pub fn two_cut_curves(&self) -> Vec<TwoCutCurve> {
        let faces = self.trace_faces();
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for cycle in &faces.faces {
            for (i, &x) in cycle.iter().enumerate() {
                for &y in &cycle[i + 1..] {
                    let (ox, oy) = (self.opposite[x], self.opposite[y]);
                    if y == ox || faces.face_of(ox) != faces.face_of(oy) {
                        continue;
                    }
                    // the same curve is described from the other face by (ox, oy)
                    let key = [x.min(y), x.max(y)].min([ox.min(oy), ox.max(oy)]);
                    if seen.insert(key) {
                        out.push(TwoCutCurve { first: x, second: y });
                    }
                }
            }
        }
        out
    }

    /// Lexicographically least BFS code over all root darts; `label` adds
    /// per-dart decoration that isomorphisms must preserve.
    pub fn canonical_code<F: Fn(Dart) -> u64>(&self, label: F) -> Vec<u64> {
        let n = self.dart_count();
        let mut best: Option<Vec<u64>> = None;
        for root in 0..n {
            let mut order = vec![usize::MAX; n];
            let mut queue = VecDeque::from([root]);
            order[root] = 0;
            let mut next = 1;
            let mut code = Vec::with_capacity(3 * n);
            while let Some(d) = queue.pop_front() {
                for e in [self.succ(d), self.opposite[d]] {
                    if order[e] == usize::MAX {
                        order[e] = next;
                        next += 1;
                        queue.push_back(e);
                    }
                    code.push(order[e] as u64);
                }
                code.push(label(d));
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.unwrap_or_default()
    }

    /// Renames darts by `perm` (old → new) and rotates/reorders vertices.
    pub fn relabeled(&self, perm: &[Dart], vertex_order: &[usize], shifts: &[usize]) -> Self {
        let rotations = vertex_order
            .iter()
            .zip(shifts)
            .map(|(&v, &s)| {
                let rot = &self.rotations[v];
                (0..rot.len()).map(|i| perm[rot[(i + s) % rot.len()]]).collect()
            })
            .collect();
        let mut opposite = vec![0; self.dart_count()];
        for d in 0..self.dart_count() {
            opposite[perm[d]] = perm[self.opposite[d]];
        }
        Self::new(rotations, opposite).expect("relabeling preserves validity")
    }

    /// Rebuilds a map from rotations over arbitrary dart ids, renumbering darts
    /// in order of appearance. Returns the map and the old → new dart table.
    pub fn compacted(
        rotations: Vec<Vec<Dart>>,
        opposite_of: impl Fn(Dart) -> Dart,
    ) -> Result<(Self, std::collections::BTreeMap<Dart, Dart>), MapError> {
        let mut renumber = std::collections::BTreeMap::new();
        for rot in &rotations {
            for &d in rot {
                let next = renumber.len();
                renumber.entry(d).or_insert(next);
            }
        }
        let mut opposite = vec![usize::MAX; renumber.len()];
        for (&old, &new) in &renumber {
            let o = opposite_of(old);
            let &mapped = renumber
                .get(&o)
                .ok_or_else(|| MapError::Malformed(format!("opposite of {old} was dropped")))?;
            opposite[new] = mapped;
        }
        let rotations = rotations
            .into_iter()
            .map(|rot| rot.into_iter().map(|d| renumber[&d]).collect())
            .collect();
        Ok((Self::new(rotations, opposite)?, renumber))
    }
}

/// A curve meeting the graph twice: it runs inside the face of `first` and
/// `second` between their edge crossings, then back through the face of
/// their opposites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCutCurve {
    pub first: Dart,
    pub second: Dart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutPiece {
    pub vertices: Vec<usize>,
    /// Euler characteristic after gluing a disc onto each boundary circle.
    pub capped_euler: i64,
    pub boundary_circles: u32,
    pub is_disc: bool,
    /// Vertices of degree other than 2 (degree-2 vertices only subdivide an arc).
    pub content_vertices: usize,
}

impl CutPiece {
    /// A disc holding nothing but an unknotted arc.
    pub fn is_trivial_disc(&self) -> bool {
        self.is_disc && self.content_vertices == 0
    }
}

/// Result of cutting along a two-point curve. Separating curves give two
/// pieces, non-separating ones a single piece carrying both boundary circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCut {
    pub curve: TwoCutCurve,
    pub separating: bool,
    pub pieces: Vec<CutPiece>,
}

impl TwoCut {
    pub fn disc_flags(&self) -> Vec<bool> {
        self.pieces.iter().map(|p| p.is_disc).collect()
    }

    /// True when the curve bounds a disc none of whose sides is a bare arc.
    pub fn violates_weak_primeness(&self) -> bool {
        self.separating
            && self.pieces.iter().any(|p| p.is_disc)
            && !self.pieces.iter().any(CutPiece::is_trivial_disc)
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn theta_is_planar() {
        let m = theta();
        let faces = m.trace_faces();
        assert_eq!(faces.len(), 3);
        assert_eq!(m.euler_characteristic(), 2);
        assert_eq!(m.genus().unwrap(), 0);
    }

    #[test]
    fn one_vertex_torus() {
        let m = bouquet(1);
        let faces = m.trace_faces();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces.degree(0), 4);
        assert_eq!(m.euler_characteristic(), 0);
        assert_eq!(m.genus().unwrap(), 1);
    }

    #[test]
    fn one_vertex_genus_two() {
        let m = bouquet(2);
        assert_eq!(m.trace_faces().len(), 1);
        assert_eq!(m.euler_characteristic(), -2);
        assert_eq!(m.genus().unwrap(), 2);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(
            CombinatorialMap::new(vec![vec![0, 1]], vec![0, 1]),
            Err(MapError::Malformed(_))
        ));
        assert!(matches!(
            CombinatorialMap::from_pairs(vec![vec![0, 1], vec![2, 3]], &[[0, 1], [2, 3]]),
            Err(MapError::Malformed(msg)) if msg.contains("disconnected")
        ));
        assert!(CombinatorialMap::from_pairs(vec![vec![0, 0]], &[[0, 1]]).is_err());
    }

    #[test]
    fn checkerboard_examples() {
        assert!(torus_grid(2).checkerboard_coloring().is_some());
        assert!(theta().checkerboard_coloring().is_none());
        assert_eq!(torus_grid(3).genus().unwrap(), 1);
        // odd grid on the torus wraps an odd face cycle
        assert!(torus_grid(3).checkerboard_coloring().is_none());
    }

    #[test]
    fn medial_of_theta_is_checkerboard() {
        // medial map of the theta graph: 3 vertices (one per edge), each 4-valent
        let m = crate::fal_diagram::fixtures::trefoil_map();
        assert!(m.checkerboard_coloring().is_some());
    }

    #[test]
    fn two_cut_on_figure_eight_isolates_a_vertex() {
        // Plane map: a 4-valent vertex u with a loop, joined by two edges to a
        // 4-valent vertex v with a loop. The two connecting edges form a 2-cut.
        // u: [0,1,2,3], loop 2-3? use loops (1,2) at u and (5,6) at v
        let m = CombinatorialMap::from_pairs(
            vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]],
            &[[1, 2], [5, 6], [0, 7], [3, 4]],
        )
        .unwrap();
        assert_eq!(m.genus().unwrap(), 0);
        let faces = m.trace_faces();
        let edges = m.edges();
        let e1 = edges.iter().position(|&e| e == (0, 7)).unwrap();
        let e2 = edges.iter().position(|&e| e == (3, 4)).unwrap();
        let (fa, fb) = (faces.face_of(0), faces.face_of(7));
        let cut = m.cut_along_two_cut(e1, e2, fa, fb).unwrap();
        assert!(cut.separating);
        assert_eq!(cut.pieces.len(), 2);
        assert!(cut.pieces.iter().all(|p| p.is_disc && p.vertices.len() == 1));
        assert!(cut.violates_weak_primeness());
    }

    #[test]
    fn two_cut_with_bare_arc_is_trivial() {
        // v carries a loop through a degree-2 vertex u and a plain loop
        let m = CombinatorialMap::from_pairs(
            vec![vec![0, 1, 2, 3], vec![4, 5]],
            &[[0, 4], [5, 1], [2, 3]],
        )
        .unwrap();
        assert_eq!(m.genus().unwrap(), 0);
        let faces = m.trace_faces();
        let edges = m.edges();
        let e1 = edges.iter().position(|&e| e == (0, 4)).unwrap();
        let e2 = edges.iter().position(|&e| e == (1, 5)).unwrap();
        let cut = m
            .cut_along_two_cut(e1, e2, faces.face_of(0), faces.face_of(4))
            .unwrap();
        assert!(cut.separating);
        let trivial: Vec<_> = cut.pieces.iter().filter(|p| p.is_trivial_disc()).collect();
        assert_eq!(trivial.len(), 1);
        assert_eq!(trivial[0].vertices, vec![1]);
        assert!(!cut.violates_weak_primeness());
    }

    #[test]
    fn nonseparating_two_cut_has_no_disc() {
        // 2x2 torus grid: the two horizontal edges in a column bound faces
        // that wrap around the torus.
        let m = torus_grid(2);
        let mut found = false;
        for curve in m.two_cut_curves() {
            let cut = m.cut_along_curve(curve).unwrap();
            if !cut.separating {
                found = true;
                assert_eq!(cut.pieces.len(), 1);
                assert_eq!(cut.disc_flags(), vec![false]);
                assert_eq!(cut.pieces[0].capped_euler, m.euler_characteristic() + 2);
            }
        }
        assert!(found);
    }

    #[test]
    fn invalid_corridor() {
        let m = theta();
        let faces = m.trace_faces();
        assert!(matches!(
            m.cut_along_two_cut(0, 0, 0, 1),
            Err(MapError::InvalidCorridor(_))
        ));
        // edge 0 and 2 do not both border faces of darts 0 and 3
        let f0 = faces.face_of(0);
        let f3 = faces.face_of(3);
        let bad = (0..3).find(|&e| {
            let (a, b) = m.edges()[e];
            let s = [faces.face_of(a), faces.face_of(b)];
            !(s.contains(&f0) && s.contains(&f3))
        });
        if let Some(e) = bad {
            assert!(m.cut_along_two_cut(0, e, f0, f3).is_err());
        }
    }

    #[test]
    fn canonical_code_ignores_labels() {
        let m = torus_grid(2);
        let n = m.dart_count();
        let perm: Vec<usize> = (0..n).map(|d| (d * 5 + 3) % n).collect();
        let order: Vec<usize> = (0..m.vertex_count()).rev().collect();
        let shifts: Vec<usize> = (0..m.vertex_count()).map(|v| v % 4).collect();
        let r = m.relabeled(&perm, &order, &shifts);
        assert_eq!(m.canonical_code(|_| 0), r.canonical_code(|_| 0));
        assert_ne!(m.canonical_code(|_| 0), bouquet(2).canonical_code(|_| 0));
    }

    #[test]
    fn json_round_trip() {
        let m = bouquet(2);
        let json = serde_json::to_string(&m.to_json()).unwrap();
        let back = CombinatorialMap::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
