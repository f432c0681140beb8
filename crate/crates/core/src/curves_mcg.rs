//! Curves on a closed orientable surface of genus `g` and the action of
//! Dehn twists on them.
//!
//! Two levels are provided. Homology classes in the symplectic basis
//! `(a1, b1, ..., ag, bg)` give exact certificates through transvections.
//! Words in the surface group `<a1, b1, ... | [a1, b1] ... [ag, bg]>` give a
//! desk-scale geometric layer: Dehn's algorithm, a conjugacy test and a
//! brute-force geometric intersection count.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("homology classes have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("integer overflow in homology arithmetic")]
    Overflow,
    #[error("curve class is zero")]
    ZeroClass,
    #[error("auxiliary curve has zero algebraic intersection with the curve")]
    BadAlpha,
    #[error("monodromy does not certifiably move the curve")]
    NotNontrivial,
    #[error("word length {len} exceeds the budget {budget}")]
    LengthBudgetExceeded { len: usize, budget: usize },
    #[error("genus {0} is too small for the word layer")]
    GenusTooSmall(u32),
    #[error("twist about {0} has no word-level action; only standard generators are supported")]
    UnsupportedTwist(String),
    #[error("cannot parse curve: {0}")]
    Parse(String),
}

pub const DEFAULT_CONJUGACY_BUDGET: usize = 64;
pub const DEFAULT_ORACLE_BUDGET: usize = 16;
const CLOSURE_CAP: usize = 200_000;
const ARRANGEMENT_CAP: u64 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologyClass {
    pub coords: Vec<i64>,
}

impl HomologyClass {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn zero(g: u32) -> Self {
        Self::new(vec![0; 2 * g as usize])
    }

    /// The class of `a_i`, with `i` counted from 1.
    pub fn a(g: u32, i: usize) -> Self {
        let mut x = Self::zero(g);
        x.coords[2 * (i - 1)] = 1;
        x
    }

    /// The class of `b_i`, with `i` counted from 1.
    pub fn b(g: u32, i: usize) -> Self {
        let mut x = Self::zero(g);
        x.coords[2 * (i - 1) + 1] = 1;
        x
    }

    pub fn genus(&self) -> u32 {
        (self.coords.len() / 2) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn neg(&self) -> Result<Self, CurveError> {
        let coords = self
            .coords
            .iter()
            .map(|x| x.checked_neg().ok_or(CurveError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self::new(coords))
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, k: i64, other: &Self) -> Result<Self, CurveError> {
        check_len(self, other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&x, &y)| k.checked_mul(y).and_then(|ky| x.checked_add(ky)).ok_or(CurveError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(Self::new(coords))
    }
}

fn check_len(x: &HomologyClass, y: &HomologyClass) -> Result<(), CurveError> {
    if x.coords.len() != y.coords.len() {
        return Err(CurveError::LengthMismatch(x.coords.len(), y.coords.len()));
    }
    Ok(())
}

pub fn algebraic_intersection(x: &HomologyClass, y: &HomologyClass) -> Result<i64, CurveError> {
    check_len(x, y)?;
    let mut total: i64 = 0;
    for i in 0..x.coords.len() / 2 {
        let (xa, xb) = (x.coords[2 * i], x.coords[2 * i + 1]);
        let (ya, yb) = (y.coords[2 * i], y.coords[2 * i + 1]);
        let term = xa
            .checked_mul(yb)
            .zip(xb.checked_mul(ya))
            .and_then(|(p, q)| p.checked_sub(q))
            .ok_or(CurveError::Overflow)?;
        total = total.checked_add(term).ok_or(CurveError::Overflow)?;
    }
    Ok(total)
}

/// Homology action of `T_alpha^t`: `x + t <x, alpha> alpha`.
pub fn twist_action(alpha: &HomologyClass, x: &HomologyClass, t: i64) -> Result<HomologyClass, CurveError> {
    let k = algebraic_intersection(x, alpha)?
        .checked_mul(t)
        .ok_or(CurveError::Overflow)?;
    x.add_scaled(k, alpha)
}

/// A curve given either by its homology class or by a surface-group word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Curve {
    Word(CurveWord),
    Homology(HomologyClass),
}

impl Curve {
    pub fn class(&self) -> HomologyClass {
        match self {
            Curve::Word(w) => w.homology(),
            Curve::Homology(h) => h.clone(),
        }
    }

    pub fn genus(&self) -> u32 {
        match self {
            Curve::Word(w) => w.genus,
            Curve::Homology(h) => h.genus(),
        }
    }

    /// Checks the curve fits on a genus-`g` surface and records that genus.
    pub fn with_genus(self, g: u32) -> Result<Self, CurveError> {
        match self {
            Curve::Word(mut w) => {
                if w.letters.iter().any(|x| x.unsigned_abs() > 2 * g) {
                    return Err(CurveError::Parse(format!("{w} does not fit on genus {g}")));
                }
                w.genus = g;
                Ok(Curve::Word(w))
            }
            Curve::Homology(h) => {
                if h.coords.len() != 2 * g as usize {
                    return Err(CurveError::LengthMismatch(h.coords.len(), 2 * g as usize));
                }
                Ok(Curve::Homology(h))
            }
        }
    }

    pub fn word(&self) -> Option<&CurveWord> {
        match self {
            Curve::Word(w) => Some(w),
            Curve::Homology(_) => None,
        }
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Word(w) => write!(f, "{w}"),
            Curve::Homology(h) => write!(f, "{:?}", h.coords),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Twist {
    pub curve: Curve,
    pub exponent: i64,
}

/// Product of Dehn twists, applied right to left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MappingClassWord {
    pub genus: u32,
    pub letters: Vec<Twist>,
}

impl MappingClassWord {
    pub fn identity(genus: u32) -> Self {
        Self {
            genus,
            letters: Vec::new(),
        }
    }

    pub fn twist(curve: Curve, exponent: i64) -> Self {
        Self {
            genus: curve.genus(),
            letters: vec![Twist { curve, exponent }],
        }
    }

    /// `self` followed by `other` on the right, so `other` acts first.
    pub fn compose(&self, other: &MappingClassWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Self {
            genus: self.genus,
            letters,
        }
    }

    pub fn with_genus(self, g: u32) -> Result<Self, CurveError> {
        let letters = self
            .letters
            .into_iter()
            .map(|t| Ok(Twist { curve: t.curve.with_genus(g)?, exponent: t.exponent }))
            .collect::<Result<_, CurveError>>()?;
        Ok(Self { genus: g, letters })
    }

    pub fn inverse(&self) -> Self {
        Self {
            genus: self.genus,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|t| Twist {
                    curve: t.curve.clone(),
                    exponent: -t.exponent,
                })
                .collect(),
        }
    }
}

pub fn mcg_apply(phi: &MappingClassWord, x: &HomologyClass) -> Result<HomologyClass, CurveError> {
    let mut y = x.clone();
    for t in phi.letters.iter().rev() {
        y = twist_action(&t.curve.class(), &y, t.exponent)?;
    }
    Ok(y)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Nontriviality {
    CertifiedNontrivial,
    Inconclusive,
}

pub fn acts_nontrivially(phi: &MappingClassWord, gamma: &HomologyClass) -> Result<Nontriviality, CurveError> {
    if gamma.is_zero() {
        return Err(CurveError::ZeroClass);
    }
    let image = mcg_apply(phi, gamma)?;
    Ok(if image == *gamma || image == gamma.neg()? {
        Nontriviality::Inconclusive
    } else {
        Nontriviality::CertifiedNontrivial
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SecondCurveTag {
    /// The auxiliary curve is itself moved by the monodromy.
    Direct,
    /// The twist of the curve about the auxiliary curve; `certified` records
    /// whether homology alone shows it is moved, otherwise the twist lemma
    /// is the justification.
    Twisted { certified: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecondCurve {
    pub class: HomologyClass,
    pub tag: SecondCurveTag,
}

pub fn find_second_curve(
    phi: &MappingClassWord,
    gamma: &HomologyClass,
    alpha: &HomologyClass,
) -> Result<SecondCurve, CurveError> {
    if algebraic_intersection(gamma, alpha)? == 0 {
        return Err(CurveError::BadAlpha);
    }
    if acts_nontrivially(phi, gamma)? != Nontriviality::CertifiedNontrivial {
        return Err(CurveError::NotNontrivial);
    }
    if acts_nontrivially(phi, alpha)? == Nontriviality::CertifiedNontrivial {
        return Ok(SecondCurve {
            class: alpha.clone(),
            tag: SecondCurveTag::Direct,
        });
    }
    let twisted = twist_action(alpha, gamma, 1)?;
    let certified = acts_nontrivially(phi, &twisted)? == Nontriviality::CertifiedNontrivial;
    Ok(SecondCurve {
        class: twisted,
        tag: SecondCurveTag::Twisted { certified },
    })
}

/// Generator `k >= 1` is `a_{(k+1)/2}` for odd `k` and `b_{k/2}` for even `k`;
/// negative letters are inverses.
pub type Letter = i32;

pub fn a_letter(i: usize) -> Letter {
    2 * i as Letter - 1
}

pub fn b_letter(i: usize) -> Letter {
    2 * i as Letter
}

/// A cyclic word in the surface group, read as a free homotopy class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct CurveWord {
    pub genus: u32,
    pub letters: Vec<Letter>,
}

impl CurveWord {
    pub fn new(genus: u32, letters: Vec<Letter>) -> Self {
        Self { genus, letters }
    }

    pub fn parse(text: &str, genus: u32) -> Result<Self, CurveError> {
        let mut w = text.parse::<CurveWord>()?;
        let needed = w.genus;
        if needed > genus {
            return Err(CurveError::Parse(format!("{text} uses handle {needed} on genus {genus}")));
        }
        w.genus = genus;
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.genus, self.letters.iter().rev().map(|&x| -x).collect())
    }

    pub fn homology(&self) -> HomologyClass {
        let mut h = HomologyClass::zero(self.genus);
        for &x in &self.letters {
            h.coords[x.unsigned_abs() as usize - 1] += x.signum() as i64;
        }
        h
    }

    /// Cyclically reduced, rotated to its lexicographically least form.
    pub fn normalized(&self) -> Self {
        Self::new(self.genus, canonical_rotation(&cyclic_reduce(self.letters.clone())))
    }
}

impl fmt::Display for CurveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for &x in &self.letters {
            let k = x.unsigned_abs() as usize;
            let c = match (k % 2 == 1, x > 0) {
                (true, true) => 'a',
                (true, false) => 'A',
                (false, true) => 'b',
                (false, false) => 'B',
            };
            write!(f, "{c}{}", k.div_ceil(2))?;
        }
        Ok(())
    }
}

/// Parses `a1B2...`; the genus is the largest handle index used.
impl FromStr for CurveWord {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut letters = Vec::new();
        let mut genus = 0;
        let bytes = s.as_bytes();
        let mut i = 0;
        if s == "1" {
            return Ok(Self::new(0, letters));
        }
        while i < bytes.len() {
            let (is_a, positive) = match bytes[i] {
                b'a' => (true, true),
                b'A' => (true, false),
                b'b' => (false, true),
                b'B' => (false, false),
                other => {
                    return Err(CurveError::Parse(format!(
                        "unexpected {:?} at offset {i} in {s:?}",
                        other as char
                    )))
                }
            };
            let start = i + 1;
            let mut end = start;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            let index: usize = s[start..end]
                .parse()
                .map_err(|_| CurveError::Parse(format!("missing handle index at offset {start} in {s:?}")))?;
            if index == 0 {
                return Err(CurveError::Parse(format!("handle indices start at 1 in {s:?}")));
            }
            genus = genus.max(index as u32);
            let k = if is_a { a_letter(index) } else { b_letter(index) };
            letters.push(if positive { k } else { -k });
            i = end;
        }
        Ok(Self::new(genus, letters))
    }
}

impl TryFrom<String> for CurveWord {
    type Error = CurveError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<CurveWord> for String {
    fn from(w: CurveWord) -> String {
        w.to_string()
    }
}

fn free_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclic_reduce(word: Vec<Letter>) -> Vec<Letter> {
    let w = free_reduce(word);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

fn canonical_rotation(w: &[Letter]) -> Vec<Letter> {
    (0..w.len().max(1))
        .map(|s| w.iter().cycle().skip(s).take(w.len()).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

fn invert(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&x| -x).collect()
}

/// `a1 b1 A1 B1 ... ag bg Ag Bg`.
pub fn relator(g: u32) -> Vec<Letter> {
    (1..=g as usize)
        .flat_map(|i| [a_letter(i), b_letter(i), -a_letter(i), -b_letter(i)])
        .collect()
}

/// All cyclic conjugates of the relator and its inverse.
fn relator_rotations(g: u32) -> Vec<Vec<Letter>> {
    let r = relator(g);
    let n = r.len();
    [r.clone(), invert(&r)]
        .into_iter()
        .flat_map(|w| (0..n).map(move |s| (0..n).map(|i| w[(s + i) % n]).collect::<Vec<_>>()))
        .collect()
}

/// Replacements of a cyclic subword of length `len` in `accept(len)` that
/// matches a relator piece by the inverse of the complementary piece.
fn relator_moves(w: &[Letter], rotations: &[Vec<Letter>], accept: impl Fn(usize) -> bool) -> Vec<Vec<Letter>> {
    let n = w.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for s in 0..n {
        for r in rotations {
            let full = r.len();
            let mut k = 0;
            while k < n.min(full) && w[(s + k) % n] == r[k] {
                k += 1;
            }
            for len in 1..=k {
                if !accept(len) {
                    continue;
                }
                let mut next = invert(&r[len..]);
                next.extend((len..n).map(|i| w[(s + i) % n]));
                out.push(cyclic_reduce(next));
            }
        }
    }
    out
}

fn dehn_reduce_letters(w: Vec<Letter>, g: u32, rotations: &[Vec<Letter>]) -> Vec<Letter> {
    let half = 2 * g as usize;
    let mut w = cyclic_reduce(w);
    loop {
        let moves = relator_moves(&w, rotations, |len| len > half);
        match moves.into_iter().min_by_key(|m| m.len()) {
            Some(shorter) if shorter.len() < w.len() => w = shorter,
            _ => return w,
        }
    }
}

/// Dehn's algorithm on a cyclic word: free and cyclic reduction, then
/// replacement of any piece longer than half a relator.
pub fn dehn_reduce(w: &CurveWord, g: u32) -> Result<CurveWord, CurveError> {
    if g < 2 {
        return Err(CurveError::GenusTooSmall(g));
    }
    let rotations = relator_rotations(g);
    Ok(CurveWord::new(g, dehn_reduce_letters(w.letters.clone(), g, &rotations)))
}

/// Canonical cyclic words reachable from the reduced form of `w` by
/// length-preserving and slightly lengthening relator moves.
fn conjugacy_closure(w: &CurveWord, g: u32) -> Result<BTreeSet<Vec<Letter>>, CurveError> {
    let rotations = relator_rotations(g);
    let half = 2 * g as usize;
    let start = canonical_rotation(&dehn_reduce_letters(w.letters.clone(), g, &rotations));
    let ceiling = start.len() + 2;
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(u) = queue.pop_front() {
        for next in relator_moves(&u, &rotations, |len| len + 1 >= half) {
            if next.len() > ceiling {
                continue;
            }
            let canon = canonical_rotation(&next);
            if seen.insert(canon.clone()) {
                if seen.len() > CLOSURE_CAP {
                    return Err(CurveError::LengthBudgetExceeded {
                        len: w.len(),
                        budget: CLOSURE_CAP,
                    });
                }
                queue.push_back(canon);
            }
        }
    }
    Ok(seen)
}

fn shortest(set: &BTreeSet<Vec<Letter>>) -> BTreeSet<Vec<Letter>> {
    let min = set.iter().map(Vec::len).min().unwrap_or(0);
    set.iter().filter(|w| w.len() == min).cloned().collect()
}

/// Whether two cyclic words are freely homotopic; `allow_inverse` also
/// accepts the reversed orientation of `w2`.
pub fn conjugacy_equal(
    w1: &CurveWord,
    w2: &CurveWord,
    g: u32,
    allow_inverse: bool,
    budget: usize,
) -> Result<bool, CurveError> {
    if g < 2 {
        return Err(CurveError::GenusTooSmall(g));
    }
    for w in [w1, w2] {
        if w.len() > budget {
            return Err(CurveError::LengthBudgetExceeded { len: w.len(), budget });
        }
    }
    let h1 = CurveWord::new(g, w1.letters.clone()).homology();
    let h2 = CurveWord::new(g, w2.letters.clone()).homology();
    let mut candidates = Vec::new();
    if h1 == h2 {
        candidates.push(w2.clone());
    }
    if allow_inverse && h1 == h2.neg()? {
        candidates.push(w2.inverse());
    }
    if candidates.is_empty() {
        return Ok(false);
    }
    let c1 = shortest(&conjugacy_closure(w1, g)?);
    for w in candidates {
        let c2 = shortest(&conjugacy_closure(&w, g)?);
        if !c1.is_disjoint(&c2) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Word-level action of a twist about a standard generator curve, as an
/// automorphism of the surface group.
fn generator_twist(curve: &Curve) -> Result<Letter, CurveError> {
    match curve.word() {
        Some(w) if w.letters.len() == 1 && w.letters[0] > 0 => Ok(w.letters[0]),
        _ => Err(CurveError::UnsupportedTwist(curve.to_string())),
    }
}

fn apply_generator_twist(gen: Letter, exponent: i64, w: &[Letter]) -> Vec<Letter> {
    let is_a = gen % 2 == 1;
    // T_{a_i}: b_i -> b_i a_i^-1, T_{b_i}: a_i -> a_i b_i
    let (moved, partner) = if is_a { (gen + 1, -gen) } else { (gen - 1, gen) };
    let step = if exponent >= 0 { partner } else { -partner };
    let mut image = vec![moved];
    image.extend(std::iter::repeat_n(step, exponent.unsigned_abs() as usize));
    let mut out = Vec::new();
    for &x in w {
        if x == moved {
            out.extend_from_slice(&image);
        } else if x == -moved {
            out.extend(invert(&image));
        } else {
            out.push(x);
        }
    }
    free_reduce(out)
}

/// Image of a word under a product of twists about standard generators.
pub fn mcg_apply_word(phi: &MappingClassWord, w: &CurveWord) -> Result<CurveWord, CurveError> {
    let mut letters = w.letters.clone();
    for t in phi.letters.iter().rev() {
        letters = apply_generator_twist(generator_twist(&t.curve)?, t.exponent, &letters);
    }
    Ok(CurveWord::new(w.genus, cyclic_reduce(letters)))
}

/// Cyclic order of band ends around the single vertex of the standard
/// ribbon graph. End `2(k-1)` leaves along generator `k`, end `2(k-1)+1`
/// arrives along it.
fn vertex_end_order(g: u32) -> Vec<usize> {
    let r = relator(g);
    let n = r.len();
    let tail = |x: Letter| 2 * (x.unsigned_abs() as usize - 1);
    let head = |x: Letter| tail(x) + 1;
    let start_end = |j: usize| if r[j] > 0 { tail(r[j]) } else { head(r[j]) };
    let finish_end = |j: usize| if r[j] > 0 { head(r[j]) } else { tail(r[j]) };
    let mut side_starting = vec![0; n];
    for j in 0..n {
        side_starting[start_end(j)] = j;
    }
    let mut order = vec![0usize];
    loop {
        let j = side_starting[*order.last().unwrap()];
        let next = finish_end((j + n - 1) % n);
        if next == order[0] {
            break;
        }
        order.push(next);
    }
    assert_eq!(order.len(), n, "polygon corners must close up around one vertex");
    order
}

/// Chord endpoints of a cyclic word: `(end, strand id)` pairs.
fn chords(w: &[Letter], first_strand: usize) -> Vec<((usize, usize), (usize, usize))> {
    let n = w.len();
    let arrive = |x: Letter| 2 * (x.unsigned_abs() as usize - 1) + (x > 0) as usize;
    let depart = |x: Letter| 2 * (x.unsigned_abs() as usize - 1) + (x < 0) as usize;
    (0..n)
        .map(|i| {
            let (x, y) = (w[i], w[(i + 1) % n]);
            ((arrive(x), first_strand + i), (depart(y), first_strand + (i + 1) % n))
        })
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let inside = |x: usize, (lo, hi): (usize, usize)| lo < x && x < hi;
    let a = (a.0.min(a.1), a.0.max(a.1));
    inside(b.0, a) != inside(b.1, a)
}

/// Fewest crossings between chord systems of `u` and `v`, over all strand
/// orders in each band.
fn min_crossings(u: &[Letter], v: &[Letter], g: u32) -> Result<usize, CurveError> {
    if u.is_empty() || v.is_empty() {
        return Ok(0);
    }
    let ends = vertex_end_order(g);
    let mut end_rank = vec![0; ends.len()];
    for (i, &e) in ends.iter().enumerate() {
        end_rank[e] = i;
    }
    let chord_u = chords(u, 0);
    let chord_v = chords(v, u.len());
    // strands per band: the strand id of each letter occurrence
    let letters: Vec<Letter> = u.iter().chain(v).copied().collect();
    let mut bands: Vec<Vec<usize>> = vec![Vec::new(); 2 * g as usize];
    for (s, &x) in letters.iter().enumerate() {
        bands[x.unsigned_abs() as usize - 1].push(s);
    }
    let total: u64 = bands
        .iter()
        .map(|b| (1..=b.len() as u64).product::<u64>())
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .unwrap_or(u64::MAX);
    if total > ARRANGEMENT_CAP {
        return Err(CurveError::LengthBudgetExceeded {
            len: letters.len(),
            budget: ARRANGEMENT_CAP as usize,
        });
    }
    let options: Vec<Vec<Vec<usize>>> = bands.iter().map(|b| permutations(b)).collect();
    let mut choice = vec![0usize; bands.len()];
    let mut best = usize::MAX;
    let mut slot = vec![0usize; letters.len()];
    loop {
        // position of strand s in band order; reversed at the arriving end
        for (band, opts) in options.iter().enumerate() {
            for (i, &s) in opts[choice[band]].iter().enumerate() {
                slot[s] = i;
            }
        }
        let width = letters.len() + 1;
        let point = |(end, s): (usize, usize)| {
            let k = bands[end / 2].len();
            let i = if end % 2 == 0 { slot[s] } else { k - 1 - slot[s] };
            end_rank[end] * width + i
        };
        let mut count = 0;
        for &(p, q) in &chord_u {
            let a = (point(p), point(q));
            for &(r, t) in &chord_v {
                if interleaved(a, (point(r), point(t))) {
                    count += 1;
                }
            }
        }
        best = best.min(count);
        let mut b = 0;
        loop {
            if b == bands.len() {
                return Ok(best);
            }
            choice[b] += 1;
            if choice[b] < options[b].len() {
                break;
            }
            choice[b] = 0;
            b += 1;
        }
    }
}

/// Minimal transverse intersection of two curves, by exhaustive search over
/// strand arrangements of their shortest representatives.
pub fn geometric_intersection_oracle(
    w1: &CurveWord,
    w2: &CurveWord,
    g: u32,
    budget: usize,
) -> Result<usize, CurveError> {
    if g < 2 {
        return Err(CurveError::GenusTooSmall(g));
    }
    for w in [w1, w2] {
        if w.len() > budget {
            return Err(CurveError::LengthBudgetExceeded { len: w.len(), budget });
        }
    }
    let reps1 = shortest(&conjugacy_closure(w1, g)?);
    let reps2 = shortest(&conjugacy_closure(w2, g)?);
    let mut best = usize::MAX;
    for u in &reps1 {
        for v in &reps2 {
            best = best.min(min_crossings(u, v, g)?);
            if best == 0 {
                return Ok(0);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CurveWord {
        CurveWord::parse(s, 2).unwrap()
    }

    fn h(g: u32, v: &[i64]) -> HomologyClass {
        let mut x = HomologyClass::zero(g);
        x.coords[..v.len()].copy_from_slice(v);
        x
    }

    #[test]
    fn symplectic_pairing() {
        let (a1, b1, a2) = (HomologyClass::a(2, 1), HomologyClass::b(2, 1), HomologyClass::a(2, 2));
        assert_eq!(algebraic_intersection(&a1, &b1), Ok(1));
        assert_eq!(algebraic_intersection(&b1, &a1), Ok(-1));
        assert_eq!(algebraic_intersection(&a1, &a2), Ok(0));
        assert_eq!(
            algebraic_intersection(&a1, &HomologyClass::a(3, 1)),
            Err(CurveError::LengthMismatch(4, 6))
        );
        let big = h(2, &[i64::MAX, 0]);
        assert_eq!(algebraic_intersection(&big, &h(2, &[0, 2])), Err(CurveError::Overflow));
    }

    #[test]
    fn transvections() {
        let (a1, b1) = (HomologyClass::a(2, 1), HomologyClass::b(2, 1));
        assert_eq!(twist_action(&b1, &a1, 1).unwrap(), h(2, &[1, 1]));
        let a2 = HomologyClass::a(2, 2);
        assert_eq!(twist_action(&a1, &a2, 5).unwrap(), a2);
        let phi = MappingClassWord {
            genus: 2,
            letters: vec![
                Twist { curve: Curve::Homology(a1.clone()), exponent: 1 },
                Twist { curve: Curve::Homology(b1.clone()), exponent: 1 },
            ],
        };
        assert_eq!(mcg_apply(&phi, &a1).unwrap(), b1);
        let cancel = MappingClassWord::twist(Curve::Homology(a1.clone()), 1)
            .compose(&MappingClassWord::twist(Curve::Homology(a1.clone()), -1));
        assert_eq!(mcg_apply(&cancel, &h(2, &[3, -4, 2, 7])).unwrap(), h(2, &[3, -4, 2, 7]));
    }

    #[test]
    fn nontriviality() {
        let (a1, b1) = (HomologyClass::a(2, 1), HomologyClass::b(2, 1));
        let ta = MappingClassWord::twist(Curve::Homology(a1.clone()), 1);
        assert_eq!(acts_nontrivially(&ta, &b1), Ok(Nontriviality::CertifiedNontrivial));
        assert_eq!(mcg_apply(&ta, &b1).unwrap(), h(2, &[-1, 1]));
        assert_eq!(acts_nontrivially(&ta, &a1), Ok(Nontriviality::Inconclusive));
        let ta2 = MappingClassWord::twist(Curve::Homology(a1.clone()), 2);
        assert_eq!(acts_nontrivially(&ta2, &b1), Ok(Nontriviality::CertifiedNontrivial));
        assert_eq!(acts_nontrivially(&ta, &HomologyClass::zero(2)), Err(CurveError::ZeroClass));
    }

    #[test]
    fn second_curve() {
        let (a1, b1, a2) = (HomologyClass::a(2, 1), HomologyClass::b(2, 1), HomologyClass::a(2, 2));
        let ta = MappingClassWord::twist(Curve::Homology(a1.clone()), 1);
        let tb = MappingClassWord::twist(Curve::Homology(b1.clone()), 1);
        let s = find_second_curve(&tb, &a1, &b1).unwrap();
        assert_eq!(s.class, h(2, &[1, 1]));
        assert!(matches!(s.tag, SecondCurveTag::Twisted { .. }));
        assert_eq!(algebraic_intersection(&a1, &s.class).unwrap(), 1);
        let s = find_second_curve(&ta, &b1, &a1).unwrap();
        assert_eq!(s.class, h(2, &[-1, 1]));
        // direct case: both moved
        let s = find_second_curve(&ta.compose(&tb), &a1, &b1).unwrap();
        assert_eq!(s.tag, SecondCurveTag::Direct);
        assert_eq!(find_second_curve(&ta, &b1, &a2), Err(CurveError::BadAlpha));
        assert_eq!(find_second_curve(&ta, &a1, &b1), Err(CurveError::NotNontrivial));
    }

    #[test]
    fn parse_and_print() {
        let x = w("a1B2A1b2");
        assert_eq!(x.letters, vec![1, -4, -1, 4]);
        assert_eq!(x.to_string(), "a1B2A1b2");
        assert!(CurveWord::parse("a3", 2).is_err());
        assert!("a1x".parse::<CurveWord>().is_err());
        assert!("a".parse::<CurveWord>().is_err());
        assert_eq!(w("a1b1").homology(), h(2, &[1, 1]));
    }

    #[test]
    fn dehn_examples() {
        assert_eq!(dehn_reduce(&w("a1A1b2"), 2).unwrap(), w("b2"));
        let long = w("a1b1A1B1a2");
        let reduced = dehn_reduce(&long, 2).unwrap();
        assert!(reduced.len() < long.len());
        assert!(conjugacy_equal(&reduced, &w("b2a2B2"), 2, false, 64).unwrap());
        let done = w("a1b2");
        assert_eq!(dehn_reduce(&done, 2).unwrap(), done);
        assert_eq!(dehn_reduce(&reduced, 2).unwrap(), reduced);
        assert!(dehn_reduce(&w("a1"), 1).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        let x = w("a1b2B1");
        let conj = w("b1a2a1b2B1A2B1");
        assert!(conjugacy_equal(&x, &conj, 2, false, 64).unwrap());
        assert!(!conjugacy_equal(&w("a1"), &w("b1"), 2, false, 64).unwrap());
        assert!(!conjugacy_equal(&w("a1"), &w("A1"), 2, false, 64).unwrap());
        assert!(conjugacy_equal(&w("a1"), &w("A1"), 2, true, 64).unwrap());
        // inserting the relator leaves the class unchanged
        assert!(conjugacy_equal(&w("a1"), &w("a1a1b1A1B1a2b2A2B2"), 2, false, 64).unwrap());
        let long = CurveWord::new(2, vec![1; 65]);
        assert!(matches!(
            conjugacy_equal(&long, &w("a1"), 2, false, 64),
            Err(CurveError::LengthBudgetExceeded { .. })
        ));
    }

    #[test]
    fn word_twists_match_homology() {
        let words = ["a1", "b1", "a1b2", "B1a2b1", "a2b2A1"];
        let gens = ["a1", "b1", "a2", "b2"];
        for gen in gens {
            for e in [-2, -1, 1, 3] {
                let phi = MappingClassWord::twist(Curve::Word(w(gen)), e);
                for x in words {
                    let image = mcg_apply_word(&phi, &w(x)).unwrap();
                    assert_eq!(image.homology(), mcg_apply(&phi, &w(x).homology()).unwrap());
                }
            }
        }
        let tb = MappingClassWord::twist(Curve::Word(w("b1")), 1);
        assert_eq!(mcg_apply_word(&tb, &w("a1")).unwrap(), w("a1b1"));
        assert!(mcg_apply_word(&MappingClassWord::twist(Curve::Word(w("a1b1")), 1), &w("a1")).is_err());
    }

    #[test]
    fn ribbon_vertex_is_single_cycle() {
        for g in 2..5 {
            assert_eq!(vertex_end_order(g).len(), 4 * g as usize);
        }
    }

    #[test]
    fn oracle_examples() {
        let o = |x: &str, y: &str| geometric_intersection_oracle(&w(x), &w(y), 2, 16).unwrap();
        assert_eq!(o("a1", "b1"), 1);
        assert_eq!(o("a1", "a2"), 0);
        assert_eq!(o("a1", "a1b1"), 1);
        assert_eq!(o("a1", "a1"), 0);
        assert_eq!(o("b1", "a1b1"), 1);
        assert_eq!(o("a1", "b1"), o("b1", "a1"));
        assert_eq!(o("a1", "b1a2B1A2"), 2);
    }
}

#[cfg(test)]
mod oracle_scan {
    use super::*;

    #[test]
    fn oracle_dominates_algebraic_on_short_words() {
        let g = 2;
        let alphabet: Vec<Letter> = (1..=4).flat_map(|k| [k, -k]).collect();
        let mut words = Vec::new();
        for &x in &alphabet {
            words.push(vec![x]);
            for &y in &alphabet {
                if y != -x {
                    words.push(vec![x, y]);
                }
            }
        }
        let mut bad = Vec::new();
        for u in &words {
            for v in &words {
                let (cu, cv) = (CurveWord::new(g, u.clone()), CurveWord::new(g, v.clone()));
                let alg = algebraic_intersection(&cu.homology(), &cv.homology()).unwrap().unsigned_abs() as usize;
                let geo = geometric_intersection_oracle(&cu, &cv, g, 16).unwrap();
                if geo < alg || !(geo - alg).is_multiple_of(2) {
                    bad.push((cu.to_string(), cv.to_string(), geo, alg));
                }
            }
        }
        assert!(bad.is_empty(), "{bad:?}");
    }
}
