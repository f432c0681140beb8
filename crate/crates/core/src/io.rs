//! File formats, run reports and the command implementations shared by the
//! `slk` binary and the integration tests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::bowtie::{self, prism_triangulation, BowtieError, ManifoldKind, VolumeBounds};
use crate::constructions::{
    build_doubled, build_layered, build_mapping_torus, build_trivial, plan_volume_target, ConstructionError,
    LayerOptions, ManifoldLink,
};
use crate::curves_mcg::{find_second_curve, Curve, CurveError, CurveWord, HomologyClass, MappingClassWord, Twist};
use crate::fal_diagram::{DiagramJson, FalDiagram, FalError, WgaVerdict};
use crate::generate::{generate_fal, GenerateError, GeneratorConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Invalid(String),
    #[error(
        "monodromy fixes the homology class of {0}; homology cannot tell whether the curve itself moves \
         (the genus-2 hyperelliptic involution fixes every class up to sign yet is not the identity)"
    )]
    TrivialMonodromy(String),
    #[error(transparent)]
    Fal(#[from] FalError),
    #[error(transparent)]
    Bowtie(#[from] BowtieError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Generate(#[from] GenerateError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillRequest {
    pub circle: usize,
    pub t: i64,
}

/// Diagram file: the diagram object plus optional filling requests.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramFile {
    #[serde(flatten)]
    pub diagram: DiagramJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fill_requests: Vec<FillRequest>,
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn parse_diagram(path: &Path, text: &str) -> Result<(FalDiagram, DiagramFile), IoError> {
    let file: DiagramFile = parse_json(path, text)?;
    let diagram = FalDiagram::from_json(&file.diagram)?;
    Ok((diagram, file))
}

pub fn load_diagram(path: &Path) -> Result<(FalDiagram, DiagramFile, String), IoError> {
    let text = read_text(path)?;
    let (d, f) = parse_diagram(path, &text)?;
    Ok((d, f, digest(text.as_bytes())))
}

/// Canonical serialized form: one top-level field per line, values compact.
pub fn diagram_to_string(d: &FalDiagram) -> String {
    let value = serde_json::to_value(d.to_json()).expect("diagram serializes");
    let fields: Vec<String> = value
        .as_object()
        .expect("diagram is an object")
        .iter()
        .map(|(k, v)| format!("  {}: {v}", serde_json::Value::from(k.as_str())))
        .collect();
    format!("{{\n{}\n}}\n", fields.join(",\n"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Informational checks do not affect the exit status.
    pub gating: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Counts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub white_faces: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shaded_faces: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nerve: Option<[usize; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangles: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tetrahedra: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cusps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist_regions: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub claim: String,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub checks: Vec<CheckResult>,
    pub counts: Counts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<VolumeBounds>,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
    pub exit_status: i32,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            input_digest: None,
            checks: Vec::new(),
            counts: Counts::default(),
            bounds: None,
            certificates: Vec::new(),
            notes: Vec::new(),
            exit_status: EXIT_PASS,
        }
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed,
            gating: true,
        });
    }

    pub fn info(&mut self, name: &str, passed: bool) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed,
            gating: false,
        });
    }

    pub fn certify(&mut self, claim: impl Into<String>, provenance: impl Into<String>) {
        self.certificates.push(Certificate {
            claim: claim.into(),
            provenance: provenance.into(),
        });
    }

    /// Sets the exit status from the gating checks.
    pub fn finish(mut self) -> Self {
        if self.checks.iter().any(|c| c.gating && !c.passed) {
            self.exit_status = EXIT_VIOLATED;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        if let Some(d) = &self.input_digest {
            let _ = writeln!(out, "input sha256: {d}");
        }
        for c in &self.checks {
            let status = match (c.gating, c.passed) {
                (true, true) => "pass",
                (true, false) => "FAIL",
                (false, true) => "yes (info)",
                (false, false) => "no (info)",
            };
            let _ = writeln!(out, "check {}: {status}", c.name);
        }
        let counts = serde_json::to_value(&self.counts).expect("counts serialize");
        if let Some(map) = counts.as_object() {
            for (k, v) in map {
                let _ = writeln!(out, "{k}: {v}");
            }
        }
        if let Some(b) = &self.bounds {
            let _ = writeln!(out, "volume lower bound: {:.6}", b.lower);
            if let Some(u) = b.upper {
                let _ = writeln!(out, "volume upper bound: {u:.6}");
            }
        }
        for c in &self.certificates {
            let _ = writeln!(out, "certificate: {} [{}]", c.claim, c.provenance);
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let _ = writeln!(out, "exit: {}", self.exit_status);
        out
    }
}

pub fn cmd_validate(path: &Path) -> Result<RunReport, IoError> {
    let (d, file, dig) = load_diagram(path)?;
    for req in &file.fill_requests {
        if req.t == 0 {
            return Err(FalError::ZeroCoefficient.into());
        }
        if req.circle >= d.c() {
            return Err(FalError::NotACrossingCircle(req.circle).into());
        }
    }
    let mut r = RunReport::new(format!("validate {}", path.display()));
    r.input_digest = Some(dig);
    let v = d.validate_fal();
    r.check("four_valent", v.four_valent);
    r.check("crossing_discs_met_twice", v.crossing_discs_met_twice);
    r.check("definitive", v.definitive);
    r.check("components_meet_circles", v.components_meet_circles);
    r.check("cellular", v.cellular);
    let wp = d.check_weakly_prime();
    r.check("weakly_prime", wp.weakly_prime);
    if let Some(w) = wp.witness {
        r.notes.push(format!("essential 2-cut through darts {} and {}", w.first, w.second));
    }
    r.info("checkerboard", d.map().checkerboard_coloring().is_some());
    r.counts.c = Some(d.c());
    r.counts.l = d.l().ok();
    r.counts.g = d.genus().ok();
    Ok(r.finish())
}

pub fn cmd_augment(path: &Path) -> Result<(RunReport, FalDiagram), IoError> {
    let (d, _, dig) = load_diagram(path)?;
    let regions = d.detect_twist_regions()?;
    let out = d.augment()?;
    let mut r = RunReport::new(format!("augment {}", path.display()));
    r.input_digest = Some(dig);
    r.counts.twist_regions = Some(regions.len());
    r.counts.c = Some(out.c());
    r.counts.l = out.l().ok();
    r.counts.g = out.genus().ok();
    Ok((r.finish(), out))
}

/// Fills `(circle, t)` pairs, or every circle with alternating signs when
/// `alternating` is given as the magnitudes.
pub fn cmd_fill(
    path: &Path,
    fills: &[(usize, i64)],
    alternating: Option<&[i64]>,
) -> Result<(RunReport, FalDiagram), IoError> {
    let (d, _, dig) = load_diagram(path)?;
    let fills: Vec<(usize, i64)> = match alternating {
        Some(mags) => {
            if mags.len() != d.c() {
                return Err(ConstructionError::CoefficientCountMismatch {
                    expected: d.c(),
                    got: mags.len(),
                }
                .into());
            }
            if mags.contains(&0) {
                return Err(FalError::ZeroCoefficient.into());
            }
            let signs = d.choose_alternating_signs()?;
            mags.iter()
                .zip(&signs)
                .enumerate()
                .map(|(k, (&t, s))| (k, s.value() * t.abs()))
                .collect()
        }
        None => fills.to_vec(),
    };
    let out = d.fill_circles(&fills)?;
    let mut r = RunReport::new(format!("fill {}", path.display()));
    r.input_digest = Some(dig);
    for (k, t) in &fills {
        r.certify(format!("circle {k} filled with t = {t}"), "computed");
    }
    r.counts.c = Some(out.c());
    r.counts.twist_regions = Some(out.detect_twist_regions()?.len());
    if out.c() == 0 {
        r.check("alternating", out.check_alternating()?);
    }
    Ok((r.finish(), out))
}

pub fn cmd_decompose(path: &Path) -> Result<(RunReport, Option<String>), IoError> {
    let (d, _, dig) = load_diagram(path)?;
    let dec = bowtie::decompose(&d)?;
    let nerve = dec.build_nerve(&d)?;
    let mut r = RunReport::new(format!("decompose {}", path.display()));
    r.input_digest = Some(dig);
    let g = dec.genus;
    let c = dec.circle_count;
    r.counts.c = Some(c);
    r.counts.g = Some(g);
    r.counts.white_faces = Some(dec.white_faces.len());
    r.counts.shaded_faces = Some(dec.shaded_faces.len());
    r.counts.nerve = Some([nerve.node_count(), nerve.edge_count(), nerve.face_count()]);
    r.check("white_face_count", dec.white_faces.len() as i64 == c as i64 + 2 - 2 * g as i64);
    r.check("nerve_euler_characteristic", nerve.euler_characteristic() == 2 - 2 * g as i64);
    let mut table = None;
    match dec.triangulate_white_faces() {
        Ok(tri) => {
            r.counts.triangles = Some(tri.len());
            let prisms = prism_triangulation(&dec, ManifoldKind::TrivialMappingTorus)?;
            r.counts.tetrahedra = Some(prisms.tetrahedron_count());
            let closed = prisms.check_closure();
            if let Err(e) = &closed {
                r.notes.push(e.clone());
            }
            r.check("gluing_closed", closed.is_ok());
            table = Some(prisms.export());
        }
        Err(e) => {
            r.notes.push(e.to_string());
            r.check("white_faces_nondegenerate", false);
        }
    }
    Ok((r.finish(), table))
}

pub fn cmd_bounds(c: usize, g: u32, l: usize, m: usize, kind: ManifoldKind) -> Result<RunReport, IoError> {
    let b = bowtie::volume_bounds(c, g, l, m, kind)?;
    let mut r = RunReport::new(format!("bounds c={c} g={g} l={l} m={m} kind={kind:?}"));
    r.counts.c = Some(c);
    r.counts.g = Some(g);
    r.counts.l = Some(l);
    r.counts.m = Some(m);
    r.counts.cusps = Some(b.cusps);
    if kind == ManifoldKind::TrivialMappingTorus {
        r.counts.tetrahedra = Some(bowtie::tetrahedron_count(c, g));
    }
    r.bounds = Some(b);
    r.certify("lower bound = cusps * v_tet", "formula");
    if b.upper.is_some() {
        r.certify("upper bound = 6(3c+2g-2) * v_tet", "formula");
    }
    Ok(r.finish())
}

pub fn cmd_generate(cfg: &GeneratorConfig, seed: u64) -> Result<String, IoError> {
    Ok(diagram_to_string(&generate_fal(cfg, seed)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Doubled,
    MappingTorus,
    Trivial,
}

/// A diagram inline, or a path relative to the family file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiagramSource {
    Path(PathBuf),
    Inline(Box<DiagramJson>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub base: DiagramSource,
    #[serde(default)]
    pub base2: Option<DiagramSource>,
    #[serde(default)]
    pub phi: Vec<(Curve, i64)>,
    pub gamma_odd: Curve,
    #[serde(default)]
    pub gamma_even: Option<Curve>,
    /// Auxiliary curve for deriving `gamma_even` from the monodromy.
    #[serde(default)]
    pub alpha: Option<Curve>,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub volume_target: Option<f64>,
    #[serde(default)]
    pub t: Vec<i64>,
    #[serde(default)]
    pub s: Vec<i64>,
    #[serde(default)]
    pub surface_incompressible: bool,
    #[serde(default = "default_true")]
    pub disjoint_from_circles: bool,
    #[serde(default)]
    pub assert_intersecting: bool,
}

fn default_true() -> bool {
    true
}

fn resolve(source: &DiagramSource, base_dir: &Path) -> Result<FalDiagram, IoError> {
    match source {
        DiagramSource::Inline(json) => Ok(FalDiagram::from_json(json)?),
        DiagramSource::Path(p) => Ok(load_diagram(&base_dir.join(p))?.0),
    }
}

pub fn build_family(spec: &FamilySpec, base_dir: &Path) -> Result<(ManifoldLink, RunReport), IoError> {
    let base = resolve(&spec.base, base_dir)?;
    let g = base.genus()?;
    let mut r = RunReport::new("family");
    let m = match (spec.m, spec.volume_target) {
        (Some(m), _) => m,
        (None, Some(v)) => {
            let m = plan_volume_target(v)?;
            r.certify(format!("m = {m} is the least m with 2m*v_tet > {v}"), "computed");
            m
        }
        (None, None) => 0,
    };
    let phi = MappingClassWord {
        genus: g,
        letters: spec
            .phi
            .iter()
            .map(|(c, e)| Ok(Twist { curve: c.clone().with_genus(g)?, exponent: *e }))
            .collect::<Result<_, CurveError>>()?,
    };
    let gamma_odd = spec.gamma_odd.clone().with_genus(g)?;
    let (gamma_even, tag) = match (&spec.gamma_even, &spec.alpha) {
        (Some(c), _) => (c.clone(), None),
        (None, Some(alpha)) => {
            let alpha = alpha.clone().with_genus(g)?;
            let second = find_second_curve(&phi, &gamma_odd.class(), &alpha.class())?;
            r.certify(format!("gamma_even = {:?}", second.class.coords), format!("{:?}", second.tag));
            (Curve::Homology(second.class), Some(second.tag))
        }
        (None, None) => return Err(IoError::Invalid("family spec needs gamma_even or alpha".into())),
    };
    let opts = LayerOptions {
        assert_intersecting: spec.assert_intersecting,
        disjoint_from_circles: spec.disjoint_from_circles,
    };
    let mut family = build_layered(base, gamma_odd, gamma_even, m, opts)?;
    family.gamma_even_tag = tag;
    if let Some(cert) = family.certificate {
        r.certify("gamma_odd and gamma_even intersect", format!("{cert:?}"));
    }
    let link = match spec.kind {
        FamilyKind::Trivial => build_trivial(family)?,
        FamilyKind::Doubled => {
            let src = spec
                .base2
                .as_ref()
                .ok_or_else(|| IoError::Invalid("doubled family needs base2".into()))?;
            build_doubled(resolve(src, base_dir)?, family)?
        }
        FamilyKind::MappingTorus => {
            if phi.letters.is_empty() {
                return Err(ConstructionError::MonodromyActsTrivially("empty monodromy".into()).into());
            }
            match build_mapping_torus(phi, family) {
                Ok(link) => link,
                Err(ConstructionError::MonodromyActsTrivially(detail)) => {
                    return Err(IoError::TrivialMonodromy(detail));
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    for cert in &link.monodromy_certificates {
        r.certify(format!("monodromy moves {}", cert.curve), format!("{:?}", cert.status));
    }
    Ok((link, r))
}

pub fn cmd_family(path: &Path) -> Result<RunReport, IoError> {
    let text = read_text(path)?;
    let spec: FamilySpec = parse_json(path, &text)?;
    let base_dir = path.parent().unwrap_or(Path::new("."));
    let (link, mut r) = build_family(&spec, base_dir)?;
    r.command = format!("family {}", path.display());
    r.input_digest = Some(digest(text.as_bytes()));
    r.counts.c = Some(link.diagram.c());
    r.counts.l = link.diagram.l().ok();
    r.counts.g = Some(link.genus);
    r.counts.m = Some(link.family.m);
    r.counts.cusps = Some(link.cusp_count);
    if link.genus >= 2 {
        r.bounds = Some(link.bounds()?);
    } else {
        r.notes.push("no volume bounds below genus 2".into());
    }
    if link.hyperbolic_assumed {
        r.notes.push("hyperbolicity of the link complement is assumed from the construction, not computed".into());
    }
    let mut current = link.clone();
    if !spec.t.is_empty() {
        current = current.annular_fill(&spec.t)?;
        r.certify(
            format!("annular filling keeps c = {}", current.diagram.c()),
            "computed",
        );
    }
    if !spec.s.is_empty() {
        let (filled, report) = current.fill_to_wga(&spec.s, spec.surface_incompressible)?;
        let regions = filled.twist_region_count()?;
        r.counts.twist_regions = Some(regions);
        r.check("twist_regions_equal_c", regions == link.diagram.c());
        r.check("weakly_prime", report.weakly_prime);
        r.check("checkerboard", report.checkerboard);
        r.check("alternating", report.alternating);
        r.check("crossing_per_component", report.crossing_per_component);
        match report.verdict() {
            WgaVerdict::Positive => r.certify("filled diagram is weakly generalised alternating", "computed"),
            WgaVerdict::Inconclusive => r.notes.push(
                "diagram conditions hold; surface incompressibility was not asserted so the verdict is inconclusive"
                    .into(),
            ),
            WgaVerdict::Negative => {}
        }
        current = filled;
    }
    if current.cusp_count != link.cusp_count {
        r.notes.push(format!(
            "volume bounds are for the unfilled link with {} cusps",
            link.cusp_count
        ));
    }
    r.counts.cusps = Some(current.cusp_count);
    Ok(r.finish())
}

pub fn parse_curve(text: &str, g: u32) -> Result<Curve, IoError> {
    let t = text.trim();
    if t.starts_with('[') {
        let coords: Vec<i64> = serde_json::from_str(t).map_err(|e| IoError::Invalid(format!("curve {t}: {e}")))?;
        Ok(Curve::Homology(HomologyClass::new(coords)).with_genus(g)?)
    } else {
        Ok(Curve::Word(CurveWord::parse(t, g)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_spec_parses() {
        let text = r#"{"kind": "mapping_torus", "base": "base.json", "phi": [["a1", 1]],
                       "gamma_odd": "b1", "alpha": [1, 0, 0, 0], "m": 2}"#;
        let spec: FamilySpec = serde_json::from_str(text).unwrap();
        assert_eq!(spec.kind, FamilyKind::MappingTorus);
        assert!(matches!(spec.base, DiagramSource::Path(_)));
        assert!(matches!(spec.alpha, Some(Curve::Homology(_))));
        assert!(spec.disjoint_from_circles);
    }

    #[test]
    fn parse_error_has_position() {
        let err = parse_diagram(Path::new("x.json"), "{\"vertices\": [[0,1,2,3]],\n \"opposite\": [").unwrap_err();
        assert!(matches!(err, IoError::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn diagram_text_round_trip() {
        let d = generate_fal(&GeneratorConfig::new(2, 4), 3).unwrap();
        let text = diagram_to_string(&d);
        let (back, _) = parse_diagram(Path::new("-"), &text).unwrap();
        assert_eq!(back, d);
        assert_eq!(diagram_to_string(&back), text);
    }
}
