//! Typed link diagrams on surfaces: fully augmented links, twist regions,
//! augmentation and crossing-circle filling, and the weakly generalised
//! alternating conditions.
//!
//! Every diagram vertex is 4-valent with rotation `[d0, d1, d2, d3]`.
//!
//! * A **crossing** joins the opposite pairs `(d0, d2)` and `(d1, d3)`;
//!   `over_pair` selects which pair passes over.
//! * A **crossing circle** is a collapsed crossing disc. The corners
//!   `(d0, d1)` and `(d2, d3)` are the *top* and *bottom* faces running
//!   alongside the disc; `(d1, d2)` and `(d3, d0)` are the *west* and *east*
//!   ends the strands pass between. Without a half-twist the strand passages
//!   are `(d1, d0)` and `(d2, d3)`; a half-twist crosses them to `(d1, d3)`
//!   and `(d2, d0)`.
//!
//! Filling a circle inserts a chain of crossings running west to east. Each
//! chain crossing is labelled `NE, NW, SW, SE` counterclockwise; a positive
//! crossing has `NE–SW` over.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surface_map::{CombinatorialMap, Dart, MapError, MapJson, TwoCutCurve};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FalError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("vertex {0} is not 4-valent")]
    NotFourValent(usize),
    #[error("circle index {0} does not name a crossing circle")]
    NotACrossingCircle(usize),
    #[error("filling coefficient must be nonzero")]
    ZeroCoefficient,
    #[error("diagram faces are not checkerboard-colourable")]
    NotCheckerboard,
    #[error("diagram still contains crossing circle at vertex {0}")]
    UnfilledCircle(usize),
    #[error("twist region through crossings {0:?} mixes crossing signs")]
    NonAlternatingTwistRegion(Vec<usize>),
    #[error("diagram format: {0}")]
    Format(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn of(t: i64) -> Self {
        if t < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    CrossingCircle { half_twist: bool, half_twist_sign: Sign },
    /// Over strand is the dart pair at rotation positions `over_pair` and `over_pair + 2`.
    Crossing { over_pair: u8 },
}

impl VertexKind {
    pub fn circle(half_twist: bool) -> Self {
        VertexKind::CrossingCircle {
            half_twist,
            half_twist_sign: Sign::Plus,
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, VertexKind::CrossingCircle { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FalDiagram {
    map: CombinatorialMap,
    kinds: Vec<VertexKind>,
    declared_genus: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistRegion {
    /// Crossing vertices in chain order, west to east.
    pub crossings: Vec<usize>,
    /// Darts leaving the west end: `(NW, SW)` of the first crossing.
    pub west: [Dart; 2],
    /// Darts leaving the east end: `(NE, SE)` of the last crossing.
    pub east: [Dart; 2],
    /// True when the bigon chain closes up on itself.
    pub cyclic: bool,
    pub sign: Sign,
}

impl TwistRegion {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn parity(&self) -> usize {
        self.crossings.len() % 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FalValidation {
    pub four_valent: bool,
    pub crossing_discs_met_twice: bool,
    pub definitive: bool,
    pub components_meet_circles: bool,
    pub cellular: bool,
}

impl FalValidation {
    pub fn all_pass(&self) -> bool {
        self.four_valent
            && self.crossing_discs_met_twice
            && self.definitive
            && self.components_meet_circles
            && self.cellular
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakPrimeness {
    pub weakly_prime: bool,
    pub witness: Option<TwoCutCurve>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Representativity {
    InfiniteIncompressible,
    NotChecked,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WgaVerdict {
    Positive,
    Negative,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WgaReport {
    pub weakly_prime: bool,
    pub components_on_all_surfaces: bool,
    pub crossing_per_component: bool,
    pub checkerboard: bool,
    pub representativity: Representativity,
    pub alternating: bool,
}

impl WgaReport {
    pub fn verdict(&self) -> WgaVerdict {
        let all = self.weakly_prime
            && self.components_on_all_surfaces
            && self.crossing_per_component
            && self.checkerboard
            && self.alternating;
        match (all, self.representativity) {
            (false, _) => WgaVerdict::Negative,
            (true, Representativity::InfiniteIncompressible) => WgaVerdict::Positive,
            (true, Representativity::NotChecked) => WgaVerdict::Inconclusive,
        }
    }
}

/// Number of crossings produced by `1/t` filling of a circle.
pub fn filled_crossing_count(half_twist: bool, half_twist_sign: Sign, t: i64) -> usize {
    let full = 2 * t.unsigned_abs() as usize;
    match (half_twist, half_twist_sign == Sign::of(t)) {
        (false, _) => full,
        (true, true) => full + 1,
        (true, false) => full - 1,
    }
}

impl FalDiagram {
    pub fn new(
        map: CombinatorialMap,
        kinds: Vec<VertexKind>,
        declared_genus: Option<u32>,
    ) -> Result<Self, FalError> {
        if kinds.len() != map.vertex_count() {
            return Err(FalError::Format(format!(
                "{} vertex kinds for {} vertices",
                kinds.len(),
                map.vertex_count()
            )));
        }
        for (v, kind) in kinds.iter().enumerate() {
            if let VertexKind::Crossing { over_pair } = kind {
                if *over_pair > 1 {
                    return Err(FalError::Format(format!("over_pair at vertex {v} must be 0 or 1")));
                }
            }
        }
        Ok(Self {
            map,
            kinds,
            declared_genus,
        })
    }

    pub fn map(&self) -> &CombinatorialMap {
        &self.map
    }

    pub fn kinds(&self) -> &[VertexKind] {
        &self.kinds
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.kinds[v]
    }

    pub fn declared_genus(&self) -> Option<u32> {
        self.declared_genus
    }

    pub fn with_declared_genus(mut self, genus: Option<u32>) -> Self {
        self.declared_genus = genus;
        self
    }

    pub fn genus(&self) -> Result<u32, FalError> {
        Ok(self.map.genus()?)
    }

    /// Vertex ids of crossing circles; circle index `k` is the `k`-th entry.
    pub fn circles(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&v| self.kinds[v].is_circle()).collect()
    }

    pub fn crossings(&self) -> Vec<usize> {
        (0..self.kinds.len()).filter(|&v| !self.kinds[v].is_circle()).collect()
    }

    /// Number of crossing circles.
    pub fn c(&self) -> usize {
        self.circles().len()
    }

    /// Number of projection components.
    pub fn l(&self) -> Result<usize, FalError> {
        Ok(self.strand_components()?.len())
    }

    fn require_four_valent(&self) -> Result<(), FalError> {
        match (0..self.map.vertex_count()).find(|&v| self.map.degree(v) != 4) {
            Some(v) => Err(FalError::NotFourValent(v)),
            None => Ok(()),
        }
    }

    /// The dart continuing the strand that enters a vertex through `d`.
    pub fn passage_partner(&self, d: Dart) -> Dart {
        let v = self.map.vertex_of(d);
        let rot = self.map.rotation(v);
        let p = self.map.position(d);
        let q = match self.kinds[v] {
            VertexKind::Crossing { .. }
            | VertexKind::CrossingCircle {
                half_twist: true, ..
            } => (p + 2) % 4,
            VertexKind::CrossingCircle {
                half_twist: false, ..
            } => [1, 0, 3, 2][p],
        };
        rot[q]
    }

    /// Strand components as cyclic dart sequences; each dart listed leaves a vertex.
    pub fn strand_components(&self) -> Result<Vec<Vec<Dart>>, FalError> {
        self.require_four_valent()?;
        let n = self.map.dart_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut d = start;
            while !seen[d] {
                let o = self.map.opposite(d);
                seen[d] = true;
                seen[o] = true;
                comp.push(d);
                d = self.passage_partner(o);
            }
            out.push(comp);
        }
        Ok(out)
    }

    fn is_over(&self, d: Dart) -> Option<bool> {
        match self.kinds[self.map.vertex_of(d)] {
            VertexKind::Crossing { over_pair } => {
                Some(self.map.position(d) % 2 == over_pair as usize)
            }
            VertexKind::CrossingCircle { .. } => None,
        }
    }

    pub fn validate_fal(&self) -> FalValidation {
        let four_valent = (0..self.map.vertex_count()).all(|v| self.map.degree(v) == 4);
        let crossing_discs_met_twice = self
            .circles()
            .into_iter()
            .all(|v| self.map.degree(v) == 4);
        let definitive = self.crossings().into_iter().all(|v| {
            self.map
                .rotation(v)
                .iter()
                .any(|&d| self.kinds[self.map.vertex_of(self.map.opposite(d))].is_circle())
        });
        let components_meet_circles = match self.strand_components() {
            Ok(comps) => comps.iter().all(|comp| {
                comp.iter().any(|&d| {
                    self.kinds[self.map.vertex_of(d)].is_circle()
                        || self.kinds[self.map.vertex_of(self.map.opposite(d))].is_circle()
                })
            }),
            Err(_) => false,
        };
        let cellular = match (self.map.genus(), self.declared_genus) {
            (Ok(g), Some(declared)) => g == declared,
            (Ok(_), None) => true,
            (Err(_), _) => false,
        };
        FalValidation {
            four_valent,
            crossing_discs_met_twice,
            definitive,
            components_meet_circles,
            cellular,
        }
    }

    /// Maximal bigon chains and lone crossings; crossing circles are ignored.
    pub fn detect_twist_regions(&self) -> Result<Vec<TwistRegion>, FalError> {
        self.require_four_valent()?;
        let faces = self.map.trace_faces();
        let v_count = self.map.vertex_count();
        // bigon[x][corner] = (y, corner at y); corner i sits between rot[i] and rot[i+1]
        let mut bigon: Vec<[Option<(usize, usize)>; 4]> = vec![[None; 4]; v_count];
        for cycle in &faces.faces {
            if let [p, q] = cycle[..] {
                let (x, y) = (self.map.vertex_of(p), self.map.vertex_of(q));
                if x == y || self.kinds[x].is_circle() || self.kinds[y].is_circle() {
                    continue;
                }
                let cx = (self.map.position(p) + 3) % 4;
                let cy = (self.map.position(q) + 3) % 4;
                bigon[x][cx] = Some((y, cy));
                bigon[y][cy] = Some((x, cx));
            }
        }
        let crossings = self.crossings();
        let mut assigned = vec![false; v_count];
        let mut regions = Vec::new();
        loop {
            let open = |x: usize, assigned: &[bool]| -> Vec<usize> {
                (0..4)
                    .filter(|&i| bigon[x][i].is_some_and(|(y, _)| !assigned[y]))
                    .collect()
            };
            let remaining: Vec<usize> = crossings.iter().copied().filter(|&x| !assigned[x]).collect();
            let Some(&first) = remaining.first() else { break };
            let (start, east_corner, cyclic) = match remaining
                .iter()
                .find(|&&x| open(x, &assigned).len() == 1)
            {
                Some(&x) => (x, Some(open(x, &assigned)[0]), false),
                None => {
                    let corners = open(first, &assigned);
                    (first, corners.first().copied(), !corners.is_empty())
                }
            };
            // label offset: a_m = rot[(offset + m) % 4], east corner is (a3, a0)
            let mut chain = vec![(start, east_corner.map_or(0, |c| (c + 1) % 4))];
            assigned[start] = true;
            while let Some(&(x, offset)) = chain.last() {
                let east = (offset + 3) % 4;
                match bigon[x][east] {
                    Some((y, west_at_y)) if !assigned[y] => {
                        assigned[y] = true;
                        chain.push((y, (west_at_y + 3) % 4));
                    }
                    _ => break,
                }
            }
            let cyclic = cyclic
                && chain.len() > 1
                && {
                    let &(x, offset) = chain.last().unwrap();
                    bigon[x][(offset + 3) % 4].is_some_and(|(y, _)| y == start)
                };
            let label = |x: usize, offset: usize, m: usize| self.map.rotation(x)[(offset + m) % 4];
            let mut signs = BTreeSet::new();
            for &(x, offset) in &chain {
                let VertexKind::Crossing { over_pair } = self.kinds[x] else { unreachable!() };
                signs.insert(if offset % 2 == over_pair as usize {
                    Sign::Plus
                } else {
                    Sign::Minus
                });
            }
            let ids: Vec<usize> = chain.iter().map(|&(x, _)| x).collect();
            if signs.len() > 1 {
                return Err(FalError::NonAlternatingTwistRegion(ids));
            }
            let (x1, o1) = chain[0];
            let (xk, ok) = *chain.last().unwrap();
            regions.push(TwistRegion {
                crossings: ids,
                west: [label(x1, o1, 1), label(x1, o1, 2)],
                east: [label(xk, ok, 0), label(xk, ok, 3)],
                cyclic,
                sign: *signs.iter().next().unwrap(),
            });
        }
        Ok(regions)
    }

    /// Replaces every twist region by a crossing circle, keeping one
    /// half-twist for odd regions.
    pub fn augment(&self) -> Result<FalDiagram, FalError> {
        let regions = self.detect_twist_regions()?;
        if regions.is_empty() {
            return Ok(self.clone());
        }
        let mut replacement: Vec<Option<usize>> = vec![None; self.map.vertex_count()];
        let mut dropped = vec![false; self.map.vertex_count()];
        for (i, r) in regions.iter().enumerate() {
            for &x in &r.crossings {
                dropped[x] = true;
            }
            replacement[r.crossings[0]] = Some(i);
        }
        let mut rotations = Vec::new();
        let mut kinds = Vec::new();
        for v in 0..self.map.vertex_count() {
            if let Some(i) = replacement[v] {
                let r = &regions[i];
                rotations.push(vec![r.east[0], r.west[0], r.west[1], r.east[1]]);
                kinds.push(VertexKind::CrossingCircle {
                    half_twist: r.parity() == 1,
                    half_twist_sign: r.sign,
                });
            } else if !dropped[v] {
                rotations.push(self.map.rotation(v).to_vec());
                kinds.push(self.kinds[v]);
            }
        }
        let (map, _) = CombinatorialMap::compacted(rotations, |d| self.map.opposite(d))?;
        FalDiagram::new(map, kinds, self.declared_genus)
    }

    /// `1/t` filling of the `k`-th crossing circle.
    pub fn fill_crossing_circle(&self, k: usize, t: i64) -> Result<FalDiagram, FalError> {
        self.fill_circles(&[(k, t)])
    }

    /// Fills several circles at once; `fills` holds `(circle index, t)`.
    pub fn fill_circles(&self, fills: &[(usize, i64)]) -> Result<FalDiagram, FalError> {
        self.require_four_valent()?;
        let circles = self.circles();
        let mut coeff: Vec<Option<i64>> = vec![None; self.map.vertex_count()];
        for &(k, t) in fills {
            let &v = circles.get(k).ok_or(FalError::NotACrossingCircle(k))?;
            if t == 0 {
                return Err(FalError::ZeroCoefficient);
            }
            coeff[v] = Some(t);
        }
        let mut opposite: Vec<Dart> = (0..self.map.dart_count()).map(|d| self.map.opposite(d)).collect();
        let mut rotations: Vec<Vec<Dart>> = self.map.rotations().to_vec();
        let mut kinds = self.kinds.clone();
        let mut extra_rot = Vec::new();
        let mut extra_kind = Vec::new();
        for v in 0..self.map.vertex_count() {
            let Some(t) = coeff[v] else { continue };
            let VertexKind::CrossingCircle {
                half_twist,
                half_twist_sign,
            } = self.kinds[v]
            else {
                unreachable!()
            };
            let k = filled_crossing_count(half_twist, half_twist_sign, t);
            let crossing = VertexKind::Crossing {
                over_pair: if t > 0 { 0 } else { 1 },
            };
            let [d0, d1, d2, d3] = <[Dart; 4]>::try_from(self.map.rotation(v)).unwrap();
            let mut chain: Vec<[Dart; 4]> = vec![[usize::MAX; 4]; k];
            chain[0][1] = d1;
            chain[0][2] = d2;
            chain[k - 1][0] = d0;
            chain[k - 1][3] = d3;
            for j in 0..k - 1 {
                let base = opposite.len();
                opposite.extend([base + 1, base, base + 3, base + 2]);
                chain[j][0] = base;
                chain[j + 1][1] = base + 1;
                chain[j][3] = base + 2;
                chain[j + 1][2] = base + 3;
            }
            rotations[v] = chain[0].to_vec();
            kinds[v] = crossing;
            for x in &chain[1..] {
                extra_rot.push(x.to_vec());
                extra_kind.push(crossing);
            }
        }
        rotations.extend(extra_rot);
        kinds.extend(extra_kind);
        let map = CombinatorialMap::new(rotations, opposite)?;
        FalDiagram::new(map, kinds, self.declared_genus)
    }

    /// Filling signs, one per crossing circle, that make every filling alternate.
    pub fn choose_alternating_signs(&self) -> Result<Vec<Sign>, FalError> {
        self.require_four_valent()?;
        let coloring = self.map.checkerboard_coloring().ok_or(FalError::NotCheckerboard)?;
        let faces = self.map.trace_faces();
        let top_color = |v: usize| coloring[faces.face_of(self.map.rotation(v)[1])];
        let circles = self.circles();
        // colour that every crossing must see just counterclockwise of its over-strand
        let target = match self.crossings().first() {
            Some(&x) => {
                let VertexKind::Crossing { over_pair } = self.kinds[x] else { unreachable!() };
                coloring[faces.face_of(self.map.rotation(x)[over_pair as usize + 1])]
            }
            None => match circles.first() {
                Some(&v) => top_color(v),
                None => return Ok(Vec::new()),
            },
        };
        Ok(circles
            .into_iter()
            .map(|v| if top_color(v) == target { Sign::Plus } else { Sign::Minus })
            .collect())
    }

    /// Every edge joins an over-passage to an under-passage.
    pub fn check_alternating(&self) -> Result<bool, FalError> {
        self.require_four_valent()?;
        if let Some(v) = self.circles().first() {
            return Err(FalError::UnfilledCircle(*v));
        }
        Ok(self
            .map
            .edges()
            .into_iter()
            .all(|(a, b)| self.is_over(a) != self.is_over(b)))
    }

    pub fn check_weakly_prime(&self) -> WeakPrimeness {
        for curve in self.map.two_cut_curves() {
            if let Ok(cut) = self.map.cut_along_curve(curve) {
                if cut.violates_weak_primeness() {
                    return WeakPrimeness {
                        weakly_prime: false,
                        witness: Some(curve),
                    };
                }
            }
        }
        WeakPrimeness {
            weakly_prime: true,
            witness: None,
        }
    }

    pub fn check_wga(&self, surface_incompressible: bool) -> WgaReport {
        let components = self.strand_components().unwrap_or_default();
        let crossing_per_component = !components.is_empty()
            && components.iter().all(|comp| {
                comp.iter()
                    .any(|&d| !self.kinds[self.map.vertex_of(d)].is_circle())
            });
        WgaReport {
            weakly_prime: self.check_weakly_prime().weakly_prime,
            // a connected map lives on a single connected surface
            components_on_all_surfaces: !components.is_empty(),
            crossing_per_component,
            checkerboard: self.map.checkerboard_coloring().is_some(),
            representativity: if surface_incompressible {
                Representativity::InfiniteIncompressible
            } else {
                Representativity::NotChecked
            },
            alternating: self.check_alternating().unwrap_or(false),
        }
    }

    /// Isomorphism invariant over dart relabelings. Crossing circles are
    /// symmetric under a half turn, so only rotation parity is recorded.
    pub fn canonical_code(&self) -> Vec<u64> {
        self.map.canonical_code(|d| {
            let p = self.map.position(d) as u64;
            match self.kinds[self.map.vertex_of(d)] {
                VertexKind::CrossingCircle { half_twist, .. } => 10 + 2 * half_twist as u64 + p % 2,
                VertexKind::Crossing { over_pair } => 20 + (p % 2 == over_pair as u64) as u64,
            }
        })
    }

    pub fn is_isomorphic(&self, other: &FalDiagram) -> bool {
        self.map.dart_count() == other.map.dart_count()
            && self.canonical_code() == other.canonical_code()
    }

    pub fn to_json(&self) -> DiagramJson {
        let MapJson { vertices, opposite } = self.map.to_json();
        let mut vertex_kind = Vec::new();
        let mut over_pair = Vec::new();
        let mut half_twist = Vec::new();
        let mut half_twist_sign = Vec::new();
        for kind in &self.kinds {
            match *kind {
                VertexKind::CrossingCircle {
                    half_twist: h,
                    half_twist_sign: s,
                } => {
                    vertex_kind.push("circle".to_string());
                    over_pair.push(None);
                    half_twist.push(h);
                    half_twist_sign.push(s.value() as i8);
                }
                VertexKind::Crossing { over_pair: p } => {
                    vertex_kind.push("crossing".to_string());
                    over_pair.push(Some(p));
                    half_twist.push(false);
                    half_twist_sign.push(1);
                }
            }
        }
        let any_negative = half_twist_sign.iter().any(|&s| s < 0);
        DiagramJson {
            vertices,
            opposite,
            vertex_kind,
            over_pair,
            half_twist,
            half_twist_sign: any_negative.then_some(half_twist_sign),
            genus: self.declared_genus,
        }
    }

    pub fn from_json(json: &DiagramJson) -> Result<Self, FalError> {
        let map = CombinatorialMap::from_pairs(json.vertices.clone(), &json.opposite)?;
        let n = map.vertex_count();
        if json.vertex_kind.len() != n {
            return Err(FalError::Format(format!(
                "vertex_kind has {} entries, expected {n}",
                json.vertex_kind.len()
            )));
        }
        let mut kinds = Vec::with_capacity(n);
        for v in 0..n {
            let kind = match json.vertex_kind[v].as_str() {
                "circle" => {
                    let half_twist = json.half_twist.get(v).copied().unwrap_or(false);
                    let sign = json
                        .half_twist_sign
                        .as_ref()
                        .and_then(|s| s.get(v).copied())
                        .unwrap_or(1);
                    VertexKind::CrossingCircle {
                        half_twist,
                        half_twist_sign: if sign < 0 { Sign::Minus } else { Sign::Plus },
                    }
                }
                "crossing" => {
                    let over_pair = json.over_pair.get(v).copied().flatten().ok_or_else(|| {
                        FalError::Format(format!("vertex {v}: crossing needs over_pair"))
                    })?;
                    VertexKind::Crossing { over_pair }
                }
                other => {
                    return Err(FalError::Format(format!(
                        "vertex {v}: unknown vertex_kind {other:?}"
                    )))
                }
            };
            kinds.push(kind);
        }
        FalDiagram::new(map, kinds, json.genus)
    }
}

/// On-disk diagram: the map format plus per-vertex decoration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub vertices: Vec<Vec<Dart>>,
    pub opposite: Vec<[Dart; 2]>,
    pub vertex_kind: Vec<String>,
    #[serde(default)]
    pub over_pair: Vec<Option<u8>>,
    #[serde(default)]
    pub half_twist: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_twist_sign: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
}

/// Independent region count used by tests: components of the bigon graph.
#[cfg(test)]
pub(crate) fn bigon_components(d: &FalDiagram) -> usize {
    let faces = d.map.trace_faces();
    let mut dsu = crate::surface_map::Dsu::new(d.map.vertex_count());
    for cycle in &faces.faces {
        if let [p, q] = cycle[..] {
            let (x, y) = (d.map.vertex_of(p), d.map.vertex_of(q));
            if x != y && !d.kinds[x].is_circle() && !d.kinds[y].is_circle() {
                dsu.union(x, y);
            }
        }
    }
    let roots: BTreeSet<usize> = d.crossings().into_iter().map(|x| dsu.find(x)).collect();
    roots.len()
}
