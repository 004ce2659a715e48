//! Matchings on Hasse diagrams, gradient paths and cancellation of critical
//! pairs.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology;
use crate::poset::{Poset, PosetError};
use crate::reduction::{self, TriState};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("not a Morse matching, directed cycle {}", .0.join(" -> "))]
    NotMorseMatching(Vec<String>),
    #[error("base poset is not graded")]
    NotGraded,
    #[error("`{0}` is not critical")]
    NotCritical(String),
    #[error("height of `{upper}` is not one more than height of `{lower}`")]
    HeightMismatch { upper: String, lower: String },
    #[error("expected exactly one gradient path, found {count}")]
    PathNotUnique { count: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

/// A set of disjoint cover pairs `(source, target)` with `source ≺ target`.
#[derive(Clone)]
pub struct Matching {
    base: Arc<Poset>,
    pairs: Vec<(usize, usize)>,
    /// Partner of each element, if matched.
    partner: Vec<Option<usize>>,
}

impl PartialEq for Matching {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base) && self.pairs == other.pairs
    }
}

impl Eq for Matching {}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.pair_ids()).finish()
    }
}

impl Matching {
    pub fn empty(base: Arc<Poset>) -> Self {
        let n = base.len();
        Matching { base, pairs: Vec::new(), partner: vec![None; n] }
    }

    pub fn new<I, A, B>(base: Arc<Poset>, pairs: I) -> Result<Self, MatchingError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut idx = Vec::new();
        for (a, b) in pairs {
            idx.push((base.require(a.as_ref())?, base.require(b.as_ref())?));
        }
        Self::from_indices(base, idx)
    }

    pub fn from_indices(base: Arc<Poset>, pairs: Vec<(usize, usize)>) -> Result<Self, MatchingError> {
        let mut partner = vec![None; base.len()];
        for &(a, b) in &pairs {
            if a >= base.len() || b >= base.len() {
                return Err(MatchingError::InvalidMatching("index out of range".into()));
            }
            if !base.is_cover(a, b) {
                return Err(MatchingError::InvalidMatching(format!(
                    "`{}` ≺ `{}` is not a cover",
                    base.id(a),
                    base.id(b)
                )));
            }
            for e in [a, b] {
                if partner[e].is_some() {
                    return Err(MatchingError::InvalidMatching(format!(
                        "`{}` occurs in two pairs",
                        base.id(e)
                    )));
                }
            }
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        let mut pairs = pairs;
        pairs.sort_unstable();
        Ok(Matching { base, pairs, partner })
    }

    pub fn base(&self) -> &Arc<Poset> {
        &self.base
    }

    /// Pairs as indices, sorted.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair_ids(&self) -> Vec<(String, String)> {
        self.pairs
            .iter()
            .map(|&(a, b)| (self.base.id(a).to_string(), self.base.id(b).to_string()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn partner(&self, x: usize) -> Option<usize> {
        self.partner[x]
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.partner[a] == Some(b) && self.base.lt(a, b)
    }

    /// The target matched to `x` when `x` is a source.
    pub fn target_of(&self, x: usize) -> Option<usize> {
        self.partner[x].filter(|&y| self.base.lt(x, y))
    }

    pub fn is_critical(&self, x: usize) -> bool {
        self.partner[x].is_none()
    }

    pub fn critical_indices(&self) -> Vec<usize> {
        (0..self.base.len()).filter(|&x| self.is_critical(x)).collect()
    }

    /// Successors of `x` in the modified Hasse diagram: the matched upper
    /// cover, and every unmatched lower cover.
    fn successors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        let up = self.target_of(x);
        let matched_below = self.partner[x];
        up.into_iter().chain(
            self.base.lower_covers(x).iter().copied().filter(move |&w| matched_below != Some(w)),
        )
    }
}

/// Critical elements: those in no pair.
pub fn critical_set(m: &Matching) -> Vec<String> {
    m.critical_indices().into_iter().map(|x| m.base.id(x).to_string()).collect()
}

/// Acyclicity of the modified Hasse diagram, with a directed cycle as
/// certificate when it fails.
pub fn is_morse_matching(m: &Matching) -> (bool, Option<Vec<String>>) {
    match find_cycle(m) {
        None => (true, None),
        Some(c) => (false, Some(c.into_iter().map(|x| m.base.id(x).to_string()).collect())),
    }
}

fn find_cycle(m: &Matching) -> Option<Vec<usize>> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let n = m.base.len();
    let mut colour = vec![WHITE; n];
    for root in 0..n {
        if colour[root] != WHITE {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, m.successors(root).collect())];
        colour[root] = GREY;
        while let Some((x, next)) = stack.last_mut() {
            let x = *x;
            match next.pop() {
                Some(y) if colour[y] == GREY => {
                    let start = stack.iter().position(|(v, _)| *v == y).expect("grey vertex on stack");
                    return Some(stack[start..].iter().map(|(v, _)| *v).collect());
                }
                Some(y) if colour[y] == WHITE => {
                    colour[y] = GREY;
                    stack.push((y, m.successors(y).collect()));
                }
                Some(_) => {}
                None => {
                    colour[x] = BLACK;
                    stack.pop();
                }
            }
        }
    }
    None
}

fn require_morse_graded(m: &Matching) -> Result<(), MatchingError> {
    if !m.base.is_graded() {
        return Err(MatchingError::NotGraded);
    }
    match is_morse_matching(m) {
        (true, _) => Ok(()),
        (false, cycle) => Err(MatchingError::NotMorseMatching(cycle.unwrap_or_default())),
    }
}

/// An alternating path `x₀ ≺ y₀ ≻ x₁ ≺ … ≻ x_r` with every `(xᵢ, yᵢ)` matched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MPath {
    pub elements: Vec<String>,
    /// Common height of the `xᵢ`.
    pub index: usize,
}

impl MPath {
    /// Number of matched steps `r`.
    pub fn steps(&self) -> usize {
        self.elements.len() / 2
    }

    pub fn start(&self) -> &str {
        &self.elements[0]
    }

    pub fn end(&self) -> &str {
        self.elements.last().expect("paths are nonempty")
    }
}

/// All gradient paths from an element of `from` to `to`, zero-length paths
/// included.
pub fn enumerate_m_paths<I, S>(m: &Matching, from: I, to: &str) -> Result<Vec<MPath>, MatchingError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    require_morse_graded(m)?;
    let to = m.base.require(to)?;
    let mut starts = BTreeSet::new();
    for s in from {
        starts.insert(m.base.require(s.as_ref())?);
    }
    let mut out = Vec::new();
    for s in starts {
        let mut path = vec![s];
        walk(m, to, &mut path, &mut out);
    }
    Ok(out
        .into_iter()
        .map(|p| MPath {
            index: m.base.height_of(p[0]),
            elements: p.into_iter().map(|x| m.base.id(x).to_string()).collect(),
        })
        .collect())
}

fn walk(m: &Matching, to: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let x = *path.last().expect("nonempty");
    if x == to {
        out.push(path.clone());
    }
    let Some(y) = m.target_of(x) else { return };
    for &x1 in m.base.lower_covers(y) {
        if x1 != x {
            path.push(y);
            path.push(x1);
            walk(m, to, path, out);
            path.pop();
            path.pop();
        }
    }
}

/// Number of gradient paths from each of `starts` to `to`, saturating at
/// `cap`.
fn count_paths(m: &Matching, starts: &[usize], to: usize, cap: usize) -> usize {
    fn go(m: &Matching, x: usize, to: usize, cap: usize, memo: &mut [Option<usize>]) -> usize {
        if let Some(c) = memo[x] {
            return c;
        }
        let mut c = usize::from(x == to);
        if let Some(y) = m.target_of(x) {
            for &x1 in m.base.lower_covers(y) {
                if x1 != x {
                    c = (c + go(m, x1, to, cap, memo)).min(cap);
                }
            }
        }
        memo[x] = Some(c);
        c
    }
    let mut memo = vec![None; m.base.len()];
    starts.iter().fold(0, |acc, &s| (acc + go(m, s, to, cap, &mut memo)).min(cap))
}

/// Reverses the matching along the unique gradient path from a face of `z`
/// to `x`, making both regular.
pub fn cancel_pair(m: &Matching, z: &str, x: &str) -> Result<Matching, MatchingError> {
    require_morse_graded(m)?;
    let zi = m.base.require(z)?;
    let xi = m.base.require(x)?;
    cancel_indices(m, zi, xi).map(|(m, _)| m)
}

fn cancel_indices(m: &Matching, z: usize, x: usize) -> Result<(Matching, Vec<usize>), MatchingError> {
    let p = &m.base;
    for e in [z, x] {
        if !m.is_critical(e) {
            return Err(MatchingError::NotCritical(p.id(e).to_string()));
        }
    }
    if p.height_of(z) != p.height_of(x) + 1 {
        return Err(MatchingError::HeightMismatch { upper: p.id(z).to_string(), lower: p.id(x).to_string() });
    }
    let count = count_paths(m, p.lower_covers(z), x, 2);
    if count != 1 {
        return Err(MatchingError::PathNotUnique { count });
    }
    let mut found = Vec::new();
    for &s in p.lower_covers(z) {
        walk(m, x, &mut vec![s], &mut found);
    }
    let path = found.pop().expect("counted one path");
    // path = x₀ y₀ x₁ y₁ … x_r; unmatch (xᵢ, yᵢ), match (x₀, z) and (xᵢ₊₁, yᵢ)
    let mut pairs: Vec<(usize, usize)> = m
        .pairs
        .iter()
        .copied()
        .filter(|&(a, b)| !path.chunks(2).any(|c| c.len() == 2 && c[0] == a && c[1] == b))
        .collect();
    pairs.push((path[0], z));
    for i in (1..path.len()).step_by(2) {
        pairs.push((path[i + 1], path[i]));
    }
    let out = Matching::from_indices(Arc::clone(&m.base), pairs)
        .map_err(|e| MatchingError::InternalInvariantViolation(e.to_string()))?;
    if let (false, cycle) = is_morse_matching(&out) {
        return Err(MatchingError::InternalInvariantViolation(format!(
            "cancellation produced a cycle {}",
            cycle.unwrap_or_default().join(" -> ")
        )));
    }
    Ok((out, path))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegularityMode {
    Homology,
    Homotopy,
}

/// Whether `Û_x` of every critical `x` of height `p` looks like `S^{p−1}`.
pub fn regularity(m: &Matching, mode: RegularityMode) -> Result<TriState, MatchingError> {
    require_morse_graded(m)?;
    let p = &m.base;
    let states = m.critical_indices().into_iter().map(|x| {
        let h = p.height_of(x) as i64;
        let u_hat = p.neighborhoods_of(x).u_hat;
        let name = p.id(x);
        if !homology::has_sphere_homology(&u_hat, h - 1) {
            return TriState::no(format!("Û of `{name}` lacks the homology of S^{}", h - 1));
        }
        match mode {
            RegularityMode::Homology => TriState::yes("sphere homology"),
            RegularityMode::Homotopy => sphere_model(&u_hat.to_poset(), h, name),
        }
    });
    Ok(TriState::all(states.collect::<Vec<_>>()))
}

/// `u` already has the homology of `S^{h−1}`.
fn sphere_model(u: &Poset, h: i64, name: &str) -> TriState {
    match h {
        0 => TriState::yes("empty"),
        1 => {
            let parts = u.component_indices();
            let trivial = parts.iter().all(|c| {
                let mut members = fixedbitset::FixedBitSet::with_capacity(u.len());
                c.iter().for_each(|&i| members.insert(i));
                reduction::is_homotopically_trivial(&u.induced(&members)).is_yes()
            });
            if trivial {
                TriState::yes("two contractible components")
            } else {
                TriState::unknown(format!("components of Û of `{name}` not shown contractible"))
            }
        }
        2 => {
            let core = reduction::core(u).to_poset();
            if is_crown(&core) {
                TriState::yes("core is a crown")
            } else {
                TriState::unknown(format!("Û of `{name}` has circle homology, core is not a crown"))
            }
        }
        _ => match reduction::simply_connected(u) {
            s if s.is_yes() => TriState::yes("simply connected homology sphere"),
            s if s.is_no() => TriState::no(format!("Û of `{name}`: {}", s.reason)),
            s => s,
        },
    }
}

/// The minimal finite model of the circle with `n ≥ 2` minimal elements.
fn is_crown(p: &Poset) -> bool {
    p.len() >= 4
        && p.height() == 1
        && p.component_indices().len() == 1
        && (0..p.len()).all(|x| p.lower_covers(x).len() + p.upper_covers(x).len() == 2)
}

/// One logged cancellation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CancellationStep {
    pub upper: String,
    pub lower: String,
    pub path: MPath,
    pub critical_after: usize,
}

/// Greedily cancels critical pairs joined by a unique gradient path, scanning
/// upper elements by height and then identifier.
pub fn optimize(m: &Matching) -> Result<(Matching, Vec<CancellationStep>), MatchingError> {
    require_morse_graded(m)?;
    let p = Arc::clone(&m.base);
    let mut current = m.clone();
    let mut log = Vec::new();
    'outer: loop {
        let mut crit = current.critical_indices();
        crit.sort_by_key(|&x| (p.height_of(x), x));
        for &z in &crit {
            let h = p.height_of(z);
            if h == 0 {
                continue;
            }
            for &x in crit.iter().filter(|&&x| p.height_of(x) + 1 == h) {
                if count_paths(&current, p.lower_covers(z), x, 2) == 1 {
                    let (next, path) = cancel_indices(&current, z, x)?;
                    current = next;
                    log.push(CancellationStep {
                        upper: p.id(z).to_string(),
                        lower: p.id(x).to_string(),
                        path: MPath {
                            index: p.height_of(x),
                            elements: path.iter().map(|&v| p.id(v).to_string()).collect(),
                        },
                        critical_after: current.critical_indices().len(),
                    });
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok((current, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn tri() -> Arc<Poset> {
        Arc::new(fixtures::tri())
    }

    #[test]
    fn validation() {
        let p = tri();
        assert!(Matching::new(p.clone(), [("v0", "e01"), ("v0", "e20")]).is_err());
        assert!(Matching::new(p.clone(), [("e01", "v0")]).is_err());
        assert!(Matching::new(p.clone(), [("v0", "e12")]).is_err());
        assert!(matches!(Matching::new(p, [("v9", "e12")]), Err(MatchingError::Poset(_))));
    }

    #[test]
    fn acyclicity() {
        let p = tri();
        assert!(is_morse_matching(&Matching::empty(p.clone())).0);
        let m = Matching::new(p.clone(), [("v0", "e01"), ("v1", "e12")]).unwrap();
        assert!(is_morse_matching(&m).0);
        assert_eq!(critical_set(&m), ["e20", "v2"]);
        let m = Matching::new(p, [("v0", "e01"), ("v1", "e12"), ("v2", "e20")]).unwrap();
        let (ok, cycle) = is_morse_matching(&m);
        assert!(!ok);
        assert_eq!(cycle.unwrap().len(), 6);
    }

    #[test]
    fn critical_sets() {
        assert_eq!(critical_set(&Matching::empty(tri())).len(), 6);
        let seg = Arc::new(fixtures::seg());
        assert_eq!(critical_set(&Matching::new(seg, [("v1", "e")]).unwrap()), ["v0"]);
    }

    #[test]
    fn gradient_paths() {
        let path = Arc::new(fixtures::path2());
        let ps = enumerate_m_paths(&Matching::empty(path.clone()), ["v0", "v1"], "v0").unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].steps(), 0);
        let m = Matching::new(path, [("v1", "e12")]).unwrap();
        let ps = enumerate_m_paths(&m, ["v0", "v1"], "v2").unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].elements, ["v1", "e12", "v2"]);
        let m = Matching::new(tri(), [("v1", "e12")]).unwrap();
        let ps = enumerate_m_paths(&m, ["v0", "v1"], "v0").unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].steps(), 0);
    }

    #[test]
    fn cancellations_on_path() {
        let path = Arc::new(fixtures::path2());
        let m = cancel_pair(&Matching::empty(path), "e01", "v0").unwrap();
        assert_eq!(m.pair_ids(), [("v0".to_string(), "e01".to_string())]);
        assert_eq!(critical_set(&m), ["e12", "v1", "v2"]);
        let m = cancel_pair(&m, "e12", "v1").unwrap();
        assert_eq!(critical_set(&m), ["v2"]);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn cancellation_errors() {
        let m = Matching::empty(tri());
        assert_eq!(cancel_pair(&m, "e01", "v2"), Err(MatchingError::PathNotUnique { count: 0 }));
        assert!(matches!(cancel_pair(&m, "v0", "v1"), Err(MatchingError::HeightMismatch { .. })));
        let m = Matching::new(tri(), [("v0", "e01")]).unwrap();
        assert_eq!(cancel_pair(&m, "e01", "v1"), Err(MatchingError::NotCritical("e01".into())));
        // two routes from ∂e20 = {v0, v2} to v1
        let m = Matching::new(tri(), [("v0", "e01"), ("v2", "e12")]).unwrap();
        assert_eq!(cancel_pair(&m, "e20", "v1"), Err(MatchingError::PathNotUnique { count: 2 }));
    }

    #[test]
    fn regularity_examples() {
        let tri_m = Matching::new(tri(), [("v0", "e01")]).unwrap();
        assert!(regularity(&tri_m, RegularityMode::Homology).unwrap().is_yes());
        assert!(regularity(&tri_m, RegularityMode::Homotopy).unwrap().is_yes());
        let chain = Matching::empty(Arc::new(fixtures::chain3()));
        assert!(regularity(&chain, RegularityMode::Homology).unwrap().is_no());
        let pt = Matching::empty(Arc::new(fixtures::point()));
        assert!(regularity(&pt, RegularityMode::Homology).unwrap().is_yes());
        // critical 2-cells of the 2-simplex: Û is the boundary circle
        let disc = Arc::new(fixtures::simplex(2).face_poset().unwrap());
        let s = regularity(&Matching::empty(disc), RegularityMode::Homotopy).unwrap();
        assert!(s.is_yes(), "{s}");
    }

    #[test]
    fn optimize_examples() {
        for (p, expected) in [(fixtures::circ4(), 2), (fixtures::tri(), 2), (fixtures::path2(), 1), (fixtures::point(), 1)] {
            let m = Matching::empty(Arc::new(p));
            let before = m.critical_indices().len();
            let (out, log) = optimize(&m).unwrap();
            assert_eq!(out.critical_indices().len(), expected);
            assert_eq!(before - 2 * log.len(), expected);
            assert!(is_morse_matching(&out).0);
        }
    }

    #[test]
    fn non_graded_base_is_rejected() {
        let p = Arc::new(Poset::from_covers([("a", "m"), ("m", "y"), ("b", "y")]).unwrap());
        assert_eq!(optimize(&Matching::empty(p)).unwrap_err(), MatchingError::NotGraded);
    }
}
