//! Random cellular FAL diagrams for property suites and the `generate` command.
//!
//! A seed map with one or two faces on the genus-`g` surface is sampled by
//! rejection, then grown one crossing circle at a time by pinching a face:
//! a new 4-valent vertex is inserted on two edges of a common face, which
//! adds one vertex, two edges and one face and so keeps the genus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fal_diagram::{FalDiagram, FalError, Sign, VertexKind};
use crate::surface_map::{CombinatorialMap, Dart};

const SEED_TRIES: usize = 200_000;
const PINCH_TRIES: usize = 400;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("no cellular FAL with c = {c} on genus {g}: need c >= {min}")]
    NotCellular { g: u32, c: usize, min: usize },
    #[error("no admissible diagram found in {0} attempts")]
    BudgetExhausted(usize),
    #[error(transparent)]
    Fal(#[from] FalError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub genus: u32,
    pub circles: usize,
    pub half_twist_prob: f64,
    /// Require a checkerboard-colourable projection.
    pub checkerboard: bool,
    /// Require the diagram filled with one full twist per circle to be weakly prime.
    pub filled_prime: bool,
    /// Required number of strand components, if any.
    pub components: Option<usize>,
    pub attempts: usize,
}

impl GeneratorConfig {
    pub fn new(genus: u32, circles: usize) -> Self {
        Self {
            genus,
            circles,
            half_twist_prob: 0.0,
            checkerboard: false,
            filled_prime: true,
            components: None,
            attempts: 200,
        }
    }

    pub fn checkerboard(mut self, on: bool) -> Self {
        self.checkerboard = on;
        self
    }

    pub fn half_twists(mut self, prob: f64) -> Self {
        self.half_twist_prob = prob;
        self
    }

    pub fn components(mut self, l: usize) -> Self {
        self.components = Some(l);
        self
    }

    pub fn attempts(mut self, n: usize) -> Self {
        self.attempts = n;
        self
    }

    fn min_circles(&self) -> usize {
        let g = self.genus as usize;
        let faces = if self.checkerboard { 2 } else { 1 };
        // c + 2 - 2g faces must be at least `faces`
        (2 * g + faces).saturating_sub(2).max(1)
    }
}

pub fn generate_fal(cfg: &GeneratorConfig, seed: u64) -> Result<FalDiagram, GenerateError> {
    let min = cfg.min_circles();
    if cfg.circles < min {
        return Err(GenerateError::NotCellular {
            g: cfg.genus,
            c: cfg.circles,
            min,
        });
    }
    // a one-vertex seed has a single square face that no pinch can split
    // into two faces of degree three or more
    let seed_circles = min.max(2).min(cfg.circles);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cfg.attempts {
        if let Some(d) = attempt(cfg, seed_circles, &mut rng)? {
            return Ok(d);
        }
    }
    Err(GenerateError::BudgetExhausted(cfg.attempts))
}

fn attempt(
    cfg: &GeneratorConfig,
    seed_circles: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<FalDiagram>, GenerateError> {
    let Some(mut opposite) = sample_seed(cfg, seed_circles, rng) else {
        return Ok(None);
    };
    let mut vertices = seed_circles;
    while vertices < cfg.circles {
        if !pinch(cfg, &mut opposite, vertices, rng) {
            return Ok(None);
        }
        vertices += 1;
    }
    let map = build(&opposite, vertices).expect("grown maps stay valid");
    let kinds: Vec<VertexKind> = (0..vertices)
        .map(|_| {
            let half_twist = rng.gen_bool(cfg.half_twist_prob.clamp(0.0, 1.0));
            let half_twist_sign = if half_twist && rng.gen_bool(0.5) {
                Sign::Minus
            } else {
                Sign::Plus
            };
            VertexKind::CrossingCircle {
                half_twist,
                half_twist_sign,
            }
        })
        .collect();
    let diagram = FalDiagram::new(map, kinds, Some(cfg.genus))?;
    assert_eq!(diagram.genus()?, cfg.genus, "pinching changed the genus");
    if !admissible(cfg, &diagram)? {
        return Ok(None);
    }
    Ok(Some(diagram))
}

fn admissible(cfg: &GeneratorConfig, d: &FalDiagram) -> Result<bool, GenerateError> {
    let faces = d.map().trace_faces();
    if (0..faces.len()).any(|f| faces.degree(f) < 3) {
        return Ok(false);
    }
    if cfg.checkerboard && d.map().checkerboard_coloring().is_none() {
        return Ok(false);
    }
    if cfg.components.is_some_and(|l| d.l().ok() != Some(l)) {
        return Ok(false);
    }
    if !d.validate_fal().all_pass() || !d.check_weakly_prime().weakly_prime {
        return Ok(false);
    }
    if cfg.filled_prime {
        let signs = match d.choose_alternating_signs() {
            Ok(s) => s,
            Err(_) => vec![Sign::Plus; d.c()],
        };
        let fills: Vec<(usize, i64)> = signs.iter().enumerate().map(|(k, s)| (k, s.value())).collect();
        if !d.fill_circles(&fills)?.check_weakly_prime().weakly_prime {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vertex `v` owns darts `4v..4v+4` in counterclockwise order.
fn build(opposite: &[Dart], vertices: usize) -> Option<CombinatorialMap> {
    let rotations = (0..vertices).map(|v| (4 * v..4 * v + 4).collect()).collect();
    CombinatorialMap::new(rotations, opposite.to_vec()).ok()
}

fn face_count(opposite: &[Dart], vertices: usize) -> Option<(usize, CombinatorialMap)> {
    let map = build(opposite, vertices)?;
    Some((map.trace_faces().len(), map))
}

fn sample_seed(cfg: &GeneratorConfig, vertices: usize, rng: &mut ChaCha8Rng) -> Option<Vec<Dart>> {
    let g = cfg.genus as usize;
    let want_faces = vertices + 2 - 2 * g.min((vertices + 2) / 2);
    let mut darts: Vec<Dart> = (0..4 * vertices).collect();
    for _ in 0..SEED_TRIES {
        darts.shuffle(rng);
        let mut opposite = vec![0; darts.len()];
        for pair in darts.chunks(2) {
            opposite[pair[0]] = pair[1];
            opposite[pair[1]] = pair[0];
        }
        let Some((faces, map)) = face_count(&opposite, vertices) else { continue };
        if faces != want_faces || map.genus().ok() != Some(cfg.genus) {
            continue;
        }
        if cfg.checkerboard && map.checkerboard_coloring().is_none() {
            continue;
        }
        return Some(opposite);
    }
    None
}

/// Inserts vertex `w` on the edges of two darts `y`, `z` of one face.
fn pinch(cfg: &GeneratorConfig, opposite: &mut Vec<Dart>, vertices: usize, rng: &mut ChaCha8Rng) -> bool {
    let map = build(opposite, vertices).expect("valid before pinching");
    let faces = map.trace_faces();
    let before = faces.len();
    for _ in 0..PINCH_TRIES {
        let face = &faces.faces[rng.gen_range(0..faces.len())];
        let y = face[rng.gen_range(0..face.len())];
        let z = face[rng.gen_range(0..face.len())];
        if y == z || opposite[y] == z {
            continue;
        }
        let (oy, oz) = (opposite[y], opposite[z]);
        let n = opposite.len();
        // rotation of w is [z', oy', y', oz'] = darts n+2, n+1, n, n+3
        let mut next = opposite.clone();
        next.extend([y, oy, z, oz]);
        next[y] = n;
        next[oy] = n + 1;
        next[z] = n + 2;
        next[oz] = n + 3;
        let rotations: Vec<Vec<Dart>> = (0..vertices)
            .map(|v| (4 * v..4 * v + 4).collect())
            .chain(std::iter::once(vec![n + 2, n + 1, n, n + 3]))
            .collect();
        let Ok(grown) = CombinatorialMap::new(rotations, next) else { continue };
        let grown_faces = grown.trace_faces();
        if grown_faces.len() != before + 1 || (0..grown_faces.len()).any(|f| grown_faces.degree(f) < 3) {
            continue;
        }
        if cfg.checkerboard && grown.checkerboard_coloring().is_none() {
            continue;
        }
        // store the new vertex in standard dart order
        let rot = grown.rotation(vertices).to_vec();
        let mut relabel: Vec<Dart> = (0..n + 4).collect();
        for (i, &d) in rot.iter().enumerate() {
            relabel[d] = n + i;
        }
        let mut stored = vec![0; n + 4];
        for d in 0..n + 4 {
            stored[relabel[d]] = relabel[grown.opposite(d)];
        }
        *opposite = stored;
        return true;
    }
    false
}

/// Joins two diagrams along an edge of each: the edges `(a, a')` and
/// `(b, b')` are replaced by `(a, b')` and `(b, a')`.
pub fn connect_sum(
    first: &FalDiagram,
    second: &FalDiagram,
    a: Dart,
    b: Dart,
) -> Result<FalDiagram, FalError> {
    let m1 = first.map();
    let m2 = second.map();
    let shift = m1.dart_count();
    let mut rotations: Vec<Vec<Dart>> = m1.rotations().to_vec();
    rotations.extend(m2.rotations().iter().map(|r| r.iter().map(|d| d + shift).collect()));
    let mut opposite: Vec<Dart> = (0..shift).map(|d| m1.opposite(d)).collect();
    opposite.extend((0..m2.dart_count()).map(|d| m2.opposite(d) + shift));
    let b = b + shift;
    let (oa, ob) = (opposite[a], opposite[b]);
    opposite[a] = ob;
    opposite[ob] = a;
    opposite[b] = oa;
    opposite[oa] = b;
    let map = CombinatorialMap::new(rotations, opposite)?;
    let mut kinds = first.kinds().to_vec();
    kinds.extend_from_slice(second.kinds());
    let genus = first.declared_genus().zip(second.declared_genus()).map(|(x, y)| x + y);
    FalDiagram::new(map, kinds, genus)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let cfg = GeneratorConfig::new(2, 4);
        assert_eq!(generate_fal(&cfg, 9).unwrap(), generate_fal(&cfg, 9).unwrap());
    }

    #[test]
    fn too_few_circles() {
        assert!(matches!(
            generate_fal(&GeneratorConfig::new(2, 2), 1),
            Err(GenerateError::NotCellular { min: 3, .. })
        ));
    }

    #[test]
    fn counts_and_faces() {
        for c in 3..=7 {
            let d = generate_fal(&GeneratorConfig::new(2, c), c as u64).unwrap();
            assert_eq!(d.c(), c);
            assert_eq!(d.map().trace_faces().len(), c + 2 - 4);
        }
    }

    #[test]
    fn checkerboard_instances() {
        let d = generate_fal(&GeneratorConfig::new(2, 5).checkerboard(true), 3).unwrap();
        assert!(d.map().checkerboard_coloring().is_some());
    }
}
