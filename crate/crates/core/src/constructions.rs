//! Link families built from a base diagram: layered curve pairs, the
//! doubled thickened surface, mapping tori, annular fillings of the layers
//! and crossing-circle fillings to alternating diagrams.

use serde::Serialize;
use thiserror::Error;

use crate::bowtie::{volume_bounds, BowtieError, ManifoldKind, VolumeBounds, V_TET};
use crate::curves_mcg::{
    acts_nontrivially, algebraic_intersection, geometric_intersection_oracle, Curve, CurveError,
    MappingClassWord, Nontriviality, SecondCurveTag, DEFAULT_ORACLE_BUDGET,
};
use crate::fal_diagram::{FalDiagram, FalError, WgaReport};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("no certificate that the layer curves intersect")]
    NoIntersectionCertificate,
    #[error("layer curves are not known to avoid the crossing circles")]
    CurveMeetsCrossingCircle,
    #[error("base surfaces have genus {0} and {1}")]
    GenusMismatch(u32, u32),
    #[error("monodromy is not known to move {0}")]
    MonodromyActsTrivially(String),
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCountMismatch { expected: usize, got: usize },
    #[error("annular coefficient {0} must be at least 1")]
    NonPositiveCoefficient(i64),
    #[error("volume target must be positive, got {0}")]
    InvalidTarget(f64),
    #[error(transparent)]
    Fal(#[from] FalError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Bowtie(#[from] BowtieError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IntersectionCertificate {
    /// Nonzero algebraic intersection.
    Homology(i64),
    /// Positive geometric intersection from the word oracle.
    Oracle(usize),
    UserAsserted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Layer {
    /// Signed index `±i`; positive layers lie on one side of the surface.
    pub index: i64,
    pub parity: Parity,
    /// `|i|`; smaller levels are nearer the surface.
    pub level: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LayeredFamily {
    #[serde(skip)]
    pub base: FalDiagram,
    #[serde(skip)]
    pub base2: Option<FalDiagram>,
    pub gamma_odd: Curve,
    pub gamma_even: Curve,
    /// How `gamma_even` was obtained when it came from the second-curve search.
    pub gamma_even_tag: Option<SecondCurveTag>,
    pub m: usize,
    pub layers: Vec<Layer>,
    /// Pairs `(C_i, C_-i)` bounding the annuli `A_i`.
    pub annuli: Vec<(i64, i64)>,
    pub certificate: Option<IntersectionCertificate>,
    pub disjoint_from_circles: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LayerOptions {
    /// Accept the curves as intersecting without a computed certificate.
    pub assert_intersecting: bool,
    /// The curves were placed away from every crossing circle.
    pub disjoint_from_circles: bool,
}

impl LayeredFamily {
    pub fn layer(&self, index: i64) -> Option<&Layer> {
        self.layers.iter().find(|l| l.index == index)
    }

    pub fn curve_for(&self, parity: Parity) -> &Curve {
        match parity {
            Parity::Odd => &self.gamma_odd,
            Parity::Even => &self.gamma_even,
        }
    }
}

fn certify(odd: &Curve, even: &Curve, g: u32) -> Result<Option<IntersectionCertificate>, ConstructionError> {
    let alg = algebraic_intersection(&odd.class(), &even.class())?;
    if alg != 0 {
        return Ok(Some(IntersectionCertificate::Homology(alg)));
    }
    if let (Some(u), Some(v)) = (odd.word(), even.word()) {
        if g >= 2 {
            match geometric_intersection_oracle(u, v, g, DEFAULT_ORACLE_BUDGET) {
                Ok(i) if i >= 1 => return Ok(Some(IntersectionCertificate::Oracle(i))),
                Ok(_) | Err(CurveError::LengthBudgetExceeded { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(None)
}

pub fn build_layered(
    base: FalDiagram,
    gamma_odd: Curve,
    gamma_even: Curve,
    m: usize,
    opts: LayerOptions,
) -> Result<LayeredFamily, ConstructionError> {
    let g = base.genus()?;
    let (gamma_odd, gamma_even) = (gamma_odd.with_genus(g)?, gamma_even.with_genus(g)?);
    let mut certificate = None;
    if m > 0 {
        certificate = certify(&gamma_odd, &gamma_even, g)?;
        if certificate.is_none() {
            if !opts.assert_intersecting {
                return Err(ConstructionError::NoIntersectionCertificate);
            }
            certificate = Some(IntersectionCertificate::UserAsserted);
        }
        if !opts.disjoint_from_circles {
            return Err(ConstructionError::CurveMeetsCrossingCircle);
        }
    }
    let mut layers = Vec::with_capacity(2 * m);
    for i in 1..=m {
        let parity = if i % 2 == 1 { Parity::Odd } else { Parity::Even };
        for index in [i as i64, -(i as i64)] {
            layers.push(Layer {
                index,
                parity,
                level: i,
            });
        }
    }
    Ok(LayeredFamily {
        base,
        base2: None,
        gamma_odd,
        gamma_even,
        gamma_even_tag: None,
        m,
        annuli: (1..=m as i64).map(|i| (i, -i)).collect(),
        layers,
        certificate,
        disjoint_from_circles: opts.disjoint_from_circles,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum LinkKind {
    DoubledThickenedSurface,
    MappingTorus { phi: MappingClassWord },
    TrivialMappingTorus,
}

impl LinkKind {
    pub fn manifold_kind(&self) -> ManifoldKind {
        match self {
            LinkKind::DoubledThickenedSurface => ManifoldKind::DoubledThickenedSurface,
            LinkKind::MappingTorus { .. } => ManifoldKind::MappingTorus,
            LinkKind::TrivialMappingTorus => ManifoldKind::TrivialMappingTorus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MonodromyStatus {
    Certified,
    /// Homology is inconclusive; the second-curve lemma guarantees the curve moves.
    LemmaBacked,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonodromyCertificate {
    pub curve: String,
    pub status: MonodromyStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManifoldLink {
    pub kind: LinkKind,
    pub family: LayeredFamily,
    pub genus: u32,
    /// Current projection on the base surface (after any circle filling).
    #[serde(skip)]
    pub diagram: FalDiagram,
    #[serde(skip)]
    pub diagram2: Option<FalDiagram>,
    pub annular_coefficients: Option<Vec<i64>>,
    pub circle_coefficients: Option<Vec<i64>>,
    /// Twist product recorded by annular filling, applied after the original monodromy.
    pub relative_monodromy: Option<MappingClassWord>,
    pub monodromy_certificates: Vec<MonodromyCertificate>,
    pub cusp_count: usize,
    /// Hyperbolicity is assumed from the construction, never computed.
    pub hyperbolic_assumed: bool,
}

fn components(d: &FalDiagram) -> Result<(usize, usize), ConstructionError> {
    Ok((d.l()?, d.c()))
}

fn link_from(
    kind: LinkKind,
    family: LayeredFamily,
    monodromy_certificates: Vec<MonodromyCertificate>,
) -> Result<ManifoldLink, ConstructionError> {
    let (l, c) = components(&family.base)?;
    let mut cusp_count = l + c + 2 * family.m;
    if let Some(b2) = &family.base2 {
        let (l2, c2) = components(b2)?;
        cusp_count += l2 + c2;
    }
    let genus = family.base.genus()?;
    Ok(ManifoldLink {
        kind,
        genus,
        diagram: family.base.clone(),
        diagram2: family.base2.clone(),
        family,
        annular_coefficients: None,
        circle_coefficients: None,
        relative_monodromy: None,
        monodromy_certificates,
        cusp_count,
        hyperbolic_assumed: genus >= 2,
    })
}

pub fn build_trivial(family: LayeredFamily) -> Result<ManifoldLink, ConstructionError> {
    link_from(LinkKind::TrivialMappingTorus, family, Vec::new())
}

pub fn build_doubled(base2: FalDiagram, mut family: LayeredFamily) -> Result<ManifoldLink, ConstructionError> {
    let (g1, g2) = (family.base.genus()?, base2.genus()?);
    if g1 != g2 {
        return Err(ConstructionError::GenusMismatch(g1, g2));
    }
    family.base2 = Some(base2);
    link_from(LinkKind::DoubledThickenedSurface, family, Vec::new())
}

pub fn build_mapping_torus(phi: MappingClassWord, family: LayeredFamily) -> Result<ManifoldLink, ConstructionError> {
    let phi = phi.with_genus(family.base.genus()?)?;
    let mut certs = Vec::new();
    for (name, curve, lemma) in [
        ("gamma_odd", &family.gamma_odd, false),
        ("gamma_even", &family.gamma_even, matches!(family.gamma_even_tag, Some(SecondCurveTag::Twisted { .. }))),
    ] {
        let status = match acts_nontrivially(&phi, &curve.class())? {
            Nontriviality::CertifiedNontrivial => MonodromyStatus::Certified,
            Nontriviality::Inconclusive if lemma => MonodromyStatus::LemmaBacked,
            Nontriviality::Inconclusive => {
                return Err(ConstructionError::MonodromyActsTrivially(format!("{name} = {curve}")))
            }
        };
        certs.push(MonodromyCertificate {
            curve: name.to_string(),
            status,
        });
    }
    link_from(LinkKind::MappingTorus { phi }, family, certs)
}

impl ManifoldLink {
    /// Fills each annulus `A_i` with `+1/t_i` on `C_i` and `-1/t_i` on `C_-i`.
    pub fn annular_fill(&self, t: &[i64]) -> Result<ManifoldLink, ConstructionError> {
        let m = self.family.m;
        if t.len() != m {
            return Err(ConstructionError::CoefficientCountMismatch {
                expected: m,
                got: t.len(),
            });
        }
        if let Some(&bad) = t.iter().find(|&&x| x < 1) {
            return Err(ConstructionError::NonPositiveCoefficient(bad));
        }
        let mut out = self.clone();
        if m == 0 {
            return Ok(out);
        }
        let base = match &self.kind {
            LinkKind::MappingTorus { phi } => phi.clone(),
            _ => MappingClassWord::identity(self.genus),
        };
        let twists = self.family.layers.iter().filter(|l| l.index > 0).zip(t).fold(
            MappingClassWord::identity(self.genus),
            |acc, (layer, &ti)| acc.compose(&MappingClassWord::twist(self.family.curve_for(layer.parity).clone(), ti)),
        );
        out.relative_monodromy = Some(base.compose(&twists));
        out.annular_coefficients = Some(t.to_vec());
        out.cusp_count -= 2 * m;
        out.family.layers.clear();
        out.family.annuli.clear();
        out.family.m = 0;
        Ok(out)
    }

    /// Fills every crossing circle of the base with `|s_k|` full twists,
    /// signed so the result is alternating.
    pub fn fill_to_wga(&self, s: &[i64], surface_incompressible: bool) -> Result<(ManifoldLink, WgaReport), ConstructionError> {
        let c = self.diagram.c();
        if s.len() != c {
            return Err(ConstructionError::CoefficientCountMismatch {
                expected: c,
                got: s.len(),
            });
        }
        if s.contains(&0) {
            return Err(FalError::ZeroCoefficient.into());
        }
        let signs = self.diagram.choose_alternating_signs()?;
        let fills: Vec<(usize, i64)> = s
            .iter()
            .zip(&signs)
            .enumerate()
            .map(|(k, (&sk, sign))| (k, sign.value() * sk.abs()))
            .collect();
        let filled = self.diagram.fill_circles(&fills)?;
        let report = filled.check_wga(surface_incompressible);
        let mut out = self.clone();
        out.diagram = filled;
        out.circle_coefficients = Some(fills.iter().map(|&(_, t)| t).collect());
        out.cusp_count -= c;
        Ok((out, report))
    }

    pub fn twist_region_count(&self) -> Result<usize, ConstructionError> {
        Ok(self.diagram.detect_twist_regions()?.len())
    }

    pub fn bounds(&self) -> Result<VolumeBounds, ConstructionError> {
        let c = self.family.base.c();
        let b = volume_bounds(c, self.genus, 0, self.family.m, self.kind.manifold_kind())?;
        Ok(VolumeBounds::from_cusps(self.cusp_count, b.upper.map(|u| (u / V_TET).round() as usize)))
    }
}

/// Smallest `m >= 1` with `2 m v_tet > target`.
pub fn plan_volume_target(target: f64) -> Result<usize, ConstructionError> {
    if !target.is_finite() || target <= 0.0 {
        return Err(ConstructionError::InvalidTarget(target));
    }
    let mut m = ((target / (2.0 * V_TET)).floor() as usize).max(1);
    while 2.0 * m as f64 * V_TET <= target {
        m += 1;
    }
    while m > 1 && 2.0 * (m - 1) as f64 * V_TET > target {
        m -= 1;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves_mcg::{find_second_curve, CurveWord, HomologyClass};
    use crate::generate::{generate_fal, GeneratorConfig};

    fn base(g: u32, c: usize, seed: u64) -> FalDiagram {
        generate_fal(&GeneratorConfig::new(g, c).components(1), seed).unwrap()
    }

    fn word(s: &str) -> Curve {
        Curve::Word(CurveWord::parse(s, 2).unwrap())
    }

    fn placed() -> LayerOptions {
        LayerOptions {
            assert_intersecting: false,
            disjoint_from_circles: true,
        }
    }

    #[test]
    fn layers_follow_parity() {
        let f = build_layered(base(2, 3, 1), word("a1"), word("b1"), 2, placed()).unwrap();
        let idx: Vec<i64> = f.layers.iter().map(|l| l.index).collect();
        assert_eq!(idx, vec![1, -1, 2, -2]);
        assert_eq!(f.layer(-1).unwrap().parity, Parity::Odd);
        assert_eq!(f.layer(2).unwrap().parity, Parity::Even);
        assert!(f.layer(1).unwrap().level < f.layer(2).unwrap().level);
        assert_eq!(f.certificate, Some(IntersectionCertificate::Homology(1)));
        assert_eq!(f.annuli, vec![(1, -1), (2, -2)]);
    }

    #[test]
    fn empty_family_is_base() {
        let b = base(2, 3, 2);
        let f = build_layered(b.clone(), word("a1"), word("a2"), 0, LayerOptions::default()).unwrap();
        assert!(f.layers.is_empty());
        assert_eq!(f.base, b);
    }

    #[test]
    fn certificates() {
        let b = base(2, 3, 3);
        assert_eq!(
            build_layered(b.clone(), word("a1"), word("a2"), 1, placed()),
            Err(ConstructionError::NoIntersectionCertificate)
        );
        let asserted = LayerOptions {
            assert_intersecting: true,
            disjoint_from_circles: true,
        };
        let f = build_layered(b.clone(), word("a1"), word("a2"), 1, asserted).unwrap();
        assert_eq!(f.certificate, Some(IntersectionCertificate::UserAsserted));
        // zero algebraic but positive geometric intersection
        let f = build_layered(b.clone(), word("a1"), word("b1a2B1A2"), 1, placed()).unwrap();
        assert_eq!(f.certificate, Some(IntersectionCertificate::Oracle(2)));
        assert_eq!(
            build_layered(b, word("a1"), word("b1"), 1, LayerOptions::default()),
            Err(ConstructionError::CurveMeetsCrossingCircle)
        );
    }

    #[test]
    fn doubled_cusps() {
        let (b1, b2) = (base(2, 3, 4), base(2, 3, 5));
        let f = build_layered(b1.clone(), word("a1"), word("b1"), 0, placed()).unwrap();
        let link = build_doubled(b2.clone(), f).unwrap();
        assert_eq!(link.cusp_count, 8);
        let f = build_layered(b1.clone(), word("a1"), word("b1"), 5, placed()).unwrap();
        assert_eq!(build_doubled(b2, f).unwrap().cusp_count, 18);
        let f = build_layered(b1, word("a1"), word("b1"), 0, placed()).unwrap();
        assert_eq!(
            build_doubled(base(3, 5, 1), f),
            Err(ConstructionError::GenusMismatch(2, 3))
        );
    }

    #[test]
    fn mapping_torus() {
        let g = 2;
        let phi = MappingClassWord::twist(word("a1"), 1);
        let gamma = HomologyClass::b(g, 1);
        let second = find_second_curve(&phi, &gamma, &HomologyClass::a(g, 1)).unwrap();
        let mut f = build_layered(
            base(2, 3, 6),
            Curve::Homology(gamma),
            Curve::Homology(second.class),
            4,
            placed(),
        )
        .unwrap();
        f.gamma_even_tag = Some(second.tag);
        let link = build_mapping_torus(phi, f.clone()).unwrap();
        assert_eq!(link.cusp_count, 12);
        let trivial = MappingClassWord::twist(word("a1"), 1).compose(&MappingClassWord::twist(word("a1"), -1));
        assert!(matches!(
            build_mapping_torus(trivial, f),
            Err(ConstructionError::MonodromyActsTrivially(_))
        ));
    }

    #[test]
    fn lemma_backed_second_curve() {
        // phi fixes the twisted curve's class, but the lemma still applies
        let phi = MappingClassWord::twist(word("b1"), 1);
        let mut f = build_layered(base(2, 3, 7), word("a1"), word("b1"), 1, placed()).unwrap();
        assert!(build_mapping_torus(phi.clone(), f.clone()).is_err());
        f.gamma_even_tag = Some(SecondCurveTag::Twisted { certified: false });
        let link = build_mapping_torus(phi, f).unwrap();
        assert_eq!(link.monodromy_certificates[1].status, MonodromyStatus::LemmaBacked);
    }

    #[test]
    fn annular_fill_bookkeeping() {
        let f = build_layered(base(2, 3, 8), word("a1"), word("b1"), 2, placed()).unwrap();
        let link = build_trivial(f).unwrap();
        let filled = link.annular_fill(&[3, 5]).unwrap();
        assert_eq!(link.cusp_count - filled.cusp_count, 4);
        assert_eq!(filled.diagram.c(), link.diagram.c());
        assert_eq!(filled.diagram.map(), link.diagram.map());
        let mono = filled.relative_monodromy.unwrap();
        let exps: Vec<(String, i64)> = mono.letters.iter().map(|t| (t.curve.to_string(), t.exponent)).collect();
        assert_eq!(exps, vec![("a1".into(), 3), ("b1".into(), 5)]);
        assert_eq!(
            link.annular_fill(&[1]),
            Err(ConstructionError::CoefficientCountMismatch { expected: 2, got: 1 })
        );
        assert_eq!(link.annular_fill(&[1, 0]), Err(ConstructionError::NonPositiveCoefficient(0)));
        let empty = build_trivial(build_layered(base(2, 3, 8), word("a1"), word("b1"), 0, placed()).unwrap()).unwrap();
        assert_eq!(empty.annular_fill(&[]).unwrap(), empty);
    }

    #[test]
    fn wga_pipeline() {
        let cfg = GeneratorConfig::new(1, 3).checkerboard(true);
        let b = generate_fal(&cfg, 1).unwrap();
        let link = build_trivial(build_layered(b, word("a1"), word("b1"), 0, placed()).unwrap()).unwrap();
        let (filled, report) = link.fill_to_wga(&[1, 1, 1], true).unwrap();
        assert_eq!(filled.twist_region_count().unwrap(), 3);
        assert_eq!(report.verdict(), crate::fal_diagram::WgaVerdict::Positive, "{report:?}");
        let (filled, _) = link.fill_to_wga(&[2, 1, 4], true).unwrap();
        let mut sizes: Vec<usize> = filled.diagram.detect_twist_regions().unwrap().iter().map(|r| r.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![2, 4, 8]);
        assert_eq!(link.fill_to_wga(&[1, 0, 1], true).unwrap_err(), FalError::ZeroCoefficient.into());
    }

    #[test]
    fn not_checkerboard_propagates() {
        let b = (0..50)
            .map(|s| base(2, 3, s))
            .find(|d| d.map().checkerboard_coloring().is_none())
            .unwrap();
        let link = build_trivial(build_layered(b, word("a1"), word("b1"), 0, placed()).unwrap()).unwrap();
        assert_eq!(
            link.fill_to_wga(&[1, 1, 1], true).unwrap_err(),
            FalError::NotCheckerboard.into()
        );
    }

    #[test]
    fn planning() {
        assert_eq!(plan_volume_target(100.0).unwrap(), 50);
        assert_eq!(plan_volume_target(10.0).unwrap(), 5);
        assert_eq!(plan_volume_target(1000.0).unwrap(), 493);
        assert_eq!(plan_volume_target(2.0 * V_TET).unwrap(), 2);
        assert_eq!(plan_volume_target(0.5).unwrap(), 1);
        assert!(plan_volume_target(0.0).is_err());
    }

    #[test]
    fn bounds_follow_cusps() {
        let f = build_layered(base(2, 3, 9), word("a1"), word("b1"), 50, placed()).unwrap();
        let link = build_trivial(f).unwrap();
        let b = link.bounds().unwrap();
        assert!(b.lower > 100.0);
        assert!(b.upper.is_none());
        let f = build_layered(base(2, 3, 9), word("a1"), word("b1"), 0, placed()).unwrap();
        let b = build_trivial(f).unwrap().bounds().unwrap();
        assert!((b.upper.unwrap() - 66.0 * V_TET).abs() < 1e-9);
    }
}
