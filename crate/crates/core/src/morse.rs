//! Morse functions with exact rational values, sublevel posets, filtrations
//! and the function/matching correspondence.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matching::{self, Matching, MatchingError};
use crate::poset::{components_within, Poset, PosetError, Subposet};
use crate::rational::{self, Value};
use crate::reduction;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MorseError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("no value given for `{0}`")]
    MissingValue(String),
    #[error("not a Morse function: {}", fmt_violations(.0))]
    NotMorse(Vec<Violation>),
    #[error("exclusion condition fails at `{0}`")]
    ExclusionViolated(String),
    #[error("base poset is not graded")]
    NotGraded,
    #[error("not a Morse matching, directed cycle {}", .0.join(" -> "))]
    NotMorseMatching(Vec<String>),
    #[error("hypothesis `{clause}` fails: {witness}")]
    HypothesisViolation { clause: String, witness: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn fmt_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

/// An element with more than one exceptional cover in one direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub element: String,
    pub direction: Direction,
    pub partners: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.direction {
            Direction::Up => "upper",
            Direction::Down => "lower",
        };
        write!(f, "`{}` has {} exceptional {d} covers ({})", self.element, self.partners.len(), self.partners.join(", "))
    }
}

/// A total assignment of rationals to the elements of a poset.
#[derive(Clone, PartialEq, Eq)]
pub struct MorseFunction {
    base: Arc<Poset>,
    values: Vec<Value>,
}

impl fmt::Debug for MorseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.base.ids().iter().zip(self.values.iter().map(rational::format)))
            .finish()
    }
}

impl MorseFunction {
    pub fn new<I, S>(base: Arc<Poset>, values: I) -> Result<Self, MorseError>
    where
        I: IntoIterator<Item = (S, Value)>,
        S: AsRef<str>,
    {
        let mut slots: Vec<Option<Value>> = vec![None; base.len()];
        for (id, v) in values {
            slots[base.require(id.as_ref())?] = Some(v);
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| MorseError::MissingValue(base.id(i).to_string())))
            .collect::<Result<_, _>>()?;
        Ok(MorseFunction { base, values })
    }

    pub fn from_integers<S: AsRef<str>>(base: Arc<Poset>, values: &[(S, i64)]) -> Result<Self, MorseError> {
        Self::new(base, values.iter().map(|(s, v)| (s, rational::int(*v))))
    }

    /// Values indexed like the elements of `base`.
    pub fn from_indexed(base: Arc<Poset>, values: Vec<Value>) -> Self {
        assert_eq!(base.len(), values.len(), "one value per element");
        MorseFunction { base, values }
    }

    /// Zero everywhere.
    pub fn zero(base: Arc<Poset>) -> Self {
        let values = vec![BigRational::zero(); base.len()];
        MorseFunction { base, values }
    }

    /// The height function.
    pub fn height(base: Arc<Poset>) -> Self {
        let values = (0..base.len()).map(|x| rational::int(base.height_of(x) as i64)).collect();
        MorseFunction { base, values }
    }

    pub fn base(&self) -> &Arc<Poset> {
        &self.base
    }

    pub fn values(&self) -> &[Value] {
        &self.values
    }

    pub fn value(&self, x: usize) -> &Value {
        &self.values[x]
    }

    pub fn value_of(&self, id: &str) -> Result<&Value, MorseError> {
        Ok(&self.values[self.base.require(id)?])
    }

    /// Every value multiplied by `k`.
    pub fn scaled(&self, k: &Value) -> Self {
        MorseFunction { base: Arc::clone(&self.base), values: self.values.iter().map(|v| v * k).collect() }
    }

    /// Upper covers `y` of `x` with `f(x) ≥ f(y)`.
    pub fn up_exceptions(&self, x: usize) -> Vec<usize> {
        self.base.upper_covers(x).iter().copied().filter(|&y| self.values[x] >= self.values[y]).collect()
    }

    /// Lower covers `w` of `x` with `f(w) ≥ f(x)`.
    pub fn down_exceptions(&self, x: usize) -> Vec<usize> {
        self.base.lower_covers(x).iter().copied().filter(|&w| self.values[w] >= self.values[x]).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut v: Vec<&Value> = self.values.iter().collect();
        v.sort();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Non-decreasing along covers.
    pub fn is_order_preserving(&self) -> bool {
        self.base.covers().into_iter().all(|(w, x)| self.values[w] <= self.values[x])
    }

    /// Distinct values in increasing order.
    pub fn distinct_values(&self) -> Vec<Value> {
        let mut v = self.values.clone();
        v.sort();
        v.dedup();
        v
    }

    fn require_morse(&self) -> Result<(), MorseError> {
        match is_morse(self) {
            (true, _) => Ok(()),
            (false, v) => Err(MorseError::NotMorse(v)),
        }
    }
}

/// Checks that no element has two exceptional covers in the same direction.
pub fn is_morse(f: &MorseFunction) -> (bool, Vec<Violation>) {
    let p = &f.base;
    let names = |v: Vec<usize>| v.into_iter().map(|y| p.id(y).to_string()).collect::<Vec<_>>();
    let mut out = Vec::new();
    for x in 0..p.len() {
        let up = f.up_exceptions(x);
        if up.len() > 1 {
            out.push(Violation { element: p.id(x).to_string(), direction: Direction::Up, partners: names(up) });
        }
        let down = f.down_exceptions(x);
        if down.len() > 1 {
            out.push(Violation { element: p.id(x).to_string(), direction: Direction::Down, partners: names(down) });
        }
    }
    (out.is_empty(), out)
}

pub fn critical_indices(f: &MorseFunction) -> Result<Vec<usize>, MorseError> {
    f.require_morse()?;
    Ok((0..f.base.len())
        .filter(|&x| f.up_exceptions(x).is_empty() && f.down_exceptions(x).is_empty())
        .collect())
}

pub fn critical_points(f: &MorseFunction) -> Result<Vec<String>, MorseError> {
    Ok(critical_indices(f)?.into_iter().map(|x| f.base.id(x).to_string()).collect())
}

/// Values attained at critical points, increasing.
pub fn critical_values(f: &MorseFunction) -> Result<Vec<Value>, MorseError> {
    let mut v: Vec<Value> = critical_indices(f)?.into_iter().map(|x| f.values[x].clone()).collect();
    v.sort();
    v.dedup();
    Ok(v)
}

/// No regular element has exceptional covers in both directions. Returns
/// the first offending element otherwise.
pub fn satisfies_exclusion(f: &MorseFunction) -> Result<(bool, Option<String>), MorseError> {
    f.require_morse()?;
    let bad = (0..f.base.len()).find(|&x| !f.up_exceptions(x).is_empty() && !f.down_exceptions(x).is_empty());
    Ok(match bad {
        None => (true, None),
        Some(x) => (false, Some(f.base.id(x).to_string())),
    })
}

fn require_exclusion(f: &MorseFunction) -> Result<(), MorseError> {
    match satisfies_exclusion(f)? {
        (true, _) => Ok(()),
        (false, x) => Err(MorseError::ExclusionViolated(x.unwrap_or_default())),
    }
}

/// Members of the sublevel poset at `a`.
pub(crate) fn sublevel_set(f: &MorseFunction, a: &Value) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(f.base.len());
    for x in 0..f.base.len() {
        if &f.values[x] <= a {
            s.union_with(f.base.down_set(x));
        }
    }
    s
}

/// Union of the minimal open sets `U_x` over `f(x) ≤ a`.
pub fn sublevel<'a>(f: &'a MorseFunction, a: &Value) -> Result<Subposet<'a>, MorseError> {
    f.require_morse()?;
    Ok(Subposet::new(&f.base, sublevel_set(f, a)))
}

/// Refines `f` to an injective Morse function with the same matching and the
/// same sublevel posets at the original values.
///
/// Elements sharing a value are ordered so that the upper end of a matched
/// pair comes first, then by height and identifier; they are spread evenly
/// over the gap to the next value.
pub fn make_injective(f: &MorseFunction) -> Result<MorseFunction, MorseError> {
    f.require_morse()?;
    let mut classes: BTreeMap<&Value, Vec<usize>> = BTreeMap::new();
    for (x, v) in f.values.iter().enumerate() {
        classes.entry(v).or_default().push(x);
    }
    let keys: Vec<&Value> = classes.keys().copied().collect();
    let mut values = f.values.clone();
    for (k, (&v, members)) in classes.iter().enumerate() {
        if members.len() == 1 {
            continue;
        }
        let gap = keys.get(k + 1).map_or_else(BigRational::one, |&next| next - v);
        let step = gap / BigRational::from_integer(BigInt::from(members.len()));
        for (j, &x) in tie_order(f, members).iter().enumerate() {
            values[x] = v + &step * BigRational::from_integer(BigInt::from(j));
        }
    }
    Ok(MorseFunction { base: Arc::clone(&f.base), values })
}

/// Linear order on one tie class: for covers `w ≺ x` inside the class, `x`
/// comes first.
fn tie_order(f: &MorseFunction, members: &[usize]) -> Vec<usize> {
    let p = &f.base;
    let pos: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut indegree = vec![0usize; members.len()];
    let mut after: Vec<Vec<usize>> = vec![Vec::new(); members.len()];
    for (i, &x) in members.iter().enumerate() {
        for w in p.lower_covers(x) {
            if let Some(&j) = pos.get(w) {
                after[i].push(j);
                indegree[j] += 1;
            }
        }
    }
    let key = |i: usize| Reverse((p.height_of(members[i]), members[i], i));
    let mut ready: BinaryHeap<_> = (0..members.len()).filter(|&i| indegree[i] == 0).map(key).collect();
    let mut out = Vec::with_capacity(members.len());
    while let Some(Reverse((_, x, i))) = ready.pop() {
        out.push(x);
        for &j in &after[i] {
            indegree[j] -= 1;
            if indegree[j] == 0 {
                ready.push(key(j));
            }
        }
    }
    debug_assert_eq!(out.len(), members.len());
    out
}

/// The associated matching: every cover `x ≺ y` with `f(x) ≥ f(y)`.
pub fn matching_from_function(f: &MorseFunction) -> Result<Matching, MorseError> {
    require_exclusion(f)?;
    let pairs = f
        .base
        .covers()
        .into_iter()
        .filter(|&(x, y)| f.values[x] >= f.values[y])
        .collect();
    let m = Matching::from_indices(Arc::clone(&f.base), pairs).map_err(|e| MorseError::Internal(e.to_string()))?;
    match matching::is_morse_matching(&m) {
        (true, _) => Ok(m),
        (false, c) => Err(MorseError::Internal(format!(
            "associated matching has a cycle {}",
            c.unwrap_or_default().join(" -> ")
        ))),
    }
}

/// Integrates a Morse matching on a graded poset to an order-preserving
/// Morse function taking equal values exactly on matched pairs.
pub fn function_from_matching(m: &Matching) -> Result<MorseFunction, MorseError> {
    let p = m.base();
    if !p.is_graded() {
        return Err(MorseError::NotGraded);
    }
    if let (false, c) = matching::is_morse_matching(m) {
        return Err(MorseError::NotMorseMatching(c.unwrap_or_default()));
    }
    let n = p.len();
    // a matched pair is one node, named by its smaller index
    let node: Vec<usize> = (0..n).map(|x| m.partner(x).map_or(x, |y| x.min(y))).collect();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut indegree = vec![0usize; n];
    for (w, x) in p.covers() {
        if !m.contains(w, x) {
            succ[node[w]].push(node[x]);
            indegree[node[x]] += 1;
        }
    }
    let mut level = vec![0i64; n];
    let mut queue: Vec<usize> = (0..n).filter(|&v| node[v] == v && indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &u in &succ[v] {
            level[u] = level[u].max(level[v] + 1);
            indegree[u] -= 1;
            if indegree[u] == 0 {
                queue.push(u);
            }
        }
    }
    let nodes = (0..n).filter(|&v| node[v] == v).count();
    if seen != nodes {
        return Err(MorseError::Internal("condensed diagram has a cycle".into()));
    }
    let values = (0..n).map(|x| rational::int(level[node[x]])).collect();
    Ok(MorseFunction { base: Arc::clone(p), values })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventKind {
    NoChange,
    /// `w ≺ v` enter together and `w` is an up beat point afterwards.
    BeatPair { v: String, w: String },
    /// `x` enters alone onto its boundary.
    CriticalAdjunction { x: String, boundary: Vec<String> },
    Anomaly { description: String },
}

/// One step of the sublevel filtration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationEvent {
    /// Value of the injective refinement.
    #[serde(with = "rational::serde_value")]
    pub threshold: Value,
    /// Original value of the entering element.
    #[serde(with = "rational::serde_value")]
    pub value: Value,
    pub element: String,
    #[serde(flatten)]
    pub kind: EventKind,
    pub size_before: usize,
    pub size_after: usize,
    pub b0_before: usize,
    pub b0_after: usize,
}

/// A filtration step together with both sublevel snapshots.
pub(crate) struct Step {
    pub event: FiltrationEvent,
    pub before: FixedBitSet,
    pub after: FixedBitSet,
}

pub(crate) fn filtration_steps(f: &MorseFunction) -> Result<(MorseFunction, Vec<Step>), MorseError> {
    require_exclusion(f)?;
    let g = make_injective(f)?;
    let p = &f.base;
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| g.values[a].cmp(&g.values[b]));
    let mut before = FixedBitSet::with_capacity(p.len());
    let mut steps = Vec::with_capacity(order.len());
    for e in order {
        let mut after = before.clone();
        after.union_with(p.down_set(e));
        let added: Vec<usize> = after.difference(&before).collect();
        let b0_before = components_within(p, &before).len();
        let b0_after = components_within(p, &after).len();
        let mut kind = classify(f, &after, e, &added);
        if matches!(kind, EventKind::BeatPair { .. }) && b0_after > b0_before {
            kind = EventKind::Anomaly {
                description: format!("regular element `{}` created a new component", p.id(e)),
            };
        }
        let event = FiltrationEvent {
            threshold: g.values[e].clone(),
            value: f.values[e].clone(),
            element: p.id(e).to_string(),
            kind,
            size_before: before.count_ones(..),
            size_after: after.count_ones(..),
            b0_before,
            b0_after,
        };
        steps.push(Step { event, before: before.clone(), after: after.clone() });
        before = after;
    }
    Ok((g, steps))
}

fn classify(f: &MorseFunction, after: &FixedBitSet, e: usize, added: &[usize]) -> EventKind {
    let p = &f.base;
    let critical = f.up_exceptions(e).is_empty() && f.down_exceptions(e).is_empty();
    let name = p.id(e);
    match added {
        [] => EventKind::NoChange,
        [x] if *x == e && critical => EventKind::CriticalAdjunction {
            x: name.to_string(),
            boundary: p.lower_covers(e).iter().map(|&w| p.id(w).to_string()).collect(),
        },
        [x] if *x == e => EventKind::Anomaly { description: format!("regular element `{name}` entered alone") },
        [a, b] if (*a == e || *b == e) => {
            let w = if *a == e { *b } else { *a };
            if critical {
                EventKind::Anomaly { description: format!("critical element `{name}` entered with `{}`", p.id(w)) }
            } else if !p.is_cover(w, e) {
                EventKind::Anomaly { description: format!("`{}` entered with `{name}` without being covered by it", p.id(w)) }
            } else if !reduction::is_up_beat(p, after, w) {
                EventKind::Anomaly { description: format!("`{}` is not an up beat point after `{name}` entered", p.id(w)) }
            } else {
                EventKind::BeatPair { v: name.to_string(), w: p.id(w).to_string() }
            }
        }
        _ => EventKind::Anomaly {
            description: format!("{} elements entered with `{name}`", added.len()),
        },
    }
}

/// One event per element, in increasing order of the injective refinement.
///
/// Elements whose minimal open set is already present produce `NoChange`.
pub fn filtration_events(f: &MorseFunction) -> Result<Vec<FiltrationEvent>, MorseError> {
    Ok(filtration_steps(f)?.1.into_iter().map(|s| s.event).collect())
}

/// A value at which the number of components of the sublevel poset grows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Birth {
    #[serde(with = "rational::serde_value")]
    pub value: Value,
    pub element: String,
    pub b0: usize,
}

/// Values where `b₀` of the sublevel poset increases. On a down-wide base
/// each must come from a critical minimal element.
pub fn component_births(f: &MorseFunction) -> Result<Vec<Birth>, MorseError> {
    let p = &f.base;
    if let (false, witness) = p.is_down_wide() {
        let witness = witness.unwrap_or_default();
        let jump = births_unchecked(f)
            .into_iter()
            .find(|b| !p.is_minimal(b.1))
            .map(|b| format!("; b₀ rises to {} at regular value {}", b.2, rational::format(&b.0)))
            .unwrap_or_default();
        return Err(MorseError::HypothesisViolation {
            clause: "down-wide".into(),
            witness: format!("`{witness}` covers fewer than two elements{jump}"),
        });
    }
    if !f.is_injective() {
        return Err(MorseError::HypothesisViolation {
            clause: "injective".into(),
            witness: "two elements share a value".into(),
        });
    }
    let crit = critical_indices(f)?;
    let mut out = Vec::new();
    for (value, x, b0) in births_unchecked(f) {
        if !p.is_minimal(x) || !crit.contains(&x) {
            return Err(MorseError::Internal(format!(
                "component born at `{}`, which is not a critical minimal element",
                p.id(x)
            )));
        }
        out.push(Birth { value, element: p.id(x).to_string(), b0 });
    }
    Ok(out)
}

/// `(value, element, b₀)` at every increase of `b₀`, stepping through the
/// elements in increasing value order.
fn births_unchecked(f: &MorseFunction) -> Vec<(Value, usize, usize)> {
    let p = &f.base;
    let mut order: Vec<usize> = (0..p.len()).collect();
    order.sort_by(|&a, &b| f.values[a].cmp(&f.values[b]).then(a.cmp(&b)));
    let mut members = FixedBitSet::with_capacity(p.len());
    let mut b0 = 0;
    let mut out = Vec::new();
    for x in order {
        members.union_with(p.down_set(x));
        let now = components_within(p, &members).len();
        if now > b0 {
            out.push((f.values[x].clone(), x, now));
        }
        b0 = now;
    }
    out
}

/// Whether the entering element of a `BeatPair` leaves a γ-point behind: `v`
/// must have homotopically trivial `Ĉ_v` in the sublevel with `w` removed.
pub(crate) fn gamma_evidence(p: &Poset, after: &FixedBitSet, v: usize, w: usize) -> reduction::TriState {
    let mut rest = after.clone();
    rest.set(w, false);
    let sub = p.induced(&rest);
    match sub.index_of(p.id(v)) {
        Some(i) => reduction::is_homotopically_trivial(&sub.neighborhoods_of(i).c_hat.to_poset()),
        None => reduction::TriState::unknown("element missing from sublevel"),
    }
}

impl From<MatchingError> for MorseError {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::Poset(p) => MorseError::Poset(p),
            MatchingError::NotGraded => MorseError::NotGraded,
            MatchingError::NotMorseMatching(c) => MorseError::NotMorseMatching(c),
            other => MorseError::Internal(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, ratio};

    fn seg_f(a: i64, b: i64, c: i64) -> MorseFunction {
        MorseFunction::from_integers(Arc::new(fixtures::seg()), &[("v0", a), ("v1", b), ("e", c)]).unwrap()
    }

    fn tri_layered() -> MorseFunction {
        let vals = [("v2", 0), ("v1", 1), ("e12", 1), ("v0", 2), ("e01", 2), ("e20", 3)];
        MorseFunction::from_integers(Arc::new(fixtures::tri()), &vals).unwrap()
    }

    #[test]
    fn morse_checks() {
        assert!(is_morse(&MorseFunction::height(Arc::new(fixtures::tri()))).0);
        assert!(is_morse(&seg_f(0, 2, 1)).0);
        let (ok, v) = is_morse(&seg_f(2, 2, 1));
        assert!(!ok);
        assert_eq!(v[0].element, "e");
        assert_eq!(v[0].direction, Direction::Down);
        assert!(matches!(critical_points(&seg_f(2, 2, 1)), Err(MorseError::NotMorse(_))));
        assert!(MorseFunction::from_integers(Arc::new(fixtures::seg()), &[("v0", 1)]).is_err());
    }

    #[test]
    fn critical_sets() {
        let circ = MorseFunction::height(Arc::new(fixtures::circ4()));
        assert_eq!(critical_points(&circ).unwrap().len(), 4);
        assert_eq!(critical_points(&seg_f(0, 2, 1)).unwrap(), ["v0"]);
        assert_eq!(critical_points(&tri_layered()).unwrap(), ["e20", "v2"]);
    }

    #[test]
    fn exclusion() {
        assert_eq!(satisfies_exclusion(&seg_f(0, 2, 1)).unwrap(), (true, None));
        // chain 0 < 1 < 2 with 1 matched both ways is not Morse-exclusive
        let chain = MorseFunction::from_integers(Arc::new(fixtures::chain3()), &[("0", 1), ("1", 1), ("2", 1)]).unwrap();
        assert_eq!(satisfies_exclusion(&chain).unwrap(), (false, Some("1".into())));
        assert!(matches!(matching_from_function(&chain), Err(MorseError::ExclusionViolated(_))));
    }

    #[test]
    fn sublevels() {
        let f = seg_f(0, 2, 1);
        assert_eq!(sublevel(&f, &int(0)).unwrap().ids(), ["v0"]);
        let s = sublevel(&f, &int(1)).unwrap();
        assert_eq!(s.ids(), ["e", "v0", "v1"]);
        assert!(s.is_open());
        assert!(sublevel(&f, &int(-1)).unwrap().is_empty());
    }

    #[test]
    fn injective_refinement() {
        let f = seg_f(0, 2, 1);
        assert_eq!(make_injective(&f).unwrap(), f);
        let anti = Arc::new(Poset::new(["a", "b", "c"], Vec::<(String, String)>::new()).unwrap());
        let g = make_injective(&MorseFunction::zero(anti)).unwrap();
        assert!(g.is_injective());
        assert_eq!(critical_points(&g).unwrap().len(), 3);
        let f = seg_f(0, 1, 1);
        let g = make_injective(&f).unwrap();
        assert!(g.value_of("e").unwrap() < g.value_of("v1").unwrap());
        assert_eq!(matching_from_function(&g).unwrap(), matching_from_function(&f).unwrap());
        assert_eq!(g.value_of("e").unwrap(), &int(1));
        assert_eq!(g.value_of("v1").unwrap(), &ratio(3, 2));
    }

    #[test]
    fn function_to_matching() {
        let zero = MorseFunction::height(Arc::new(fixtures::tri()));
        assert!(matching_from_function(&zero).unwrap().is_empty());
        assert_eq!(
            matching_from_function(&seg_f(0, 2, 1)).unwrap().pair_ids(),
            [("v1".to_string(), "e".to_string())]
        );
        let m = matching_from_function(&tri_layered()).unwrap();
        assert_eq!(m.pair_ids(), [("v0".into(), "e01".into()), ("v1".into(), "e12".into())]);
    }

    #[test]
    fn matching_to_function() {
        let chain = Arc::new(fixtures::chain3());
        let f = function_from_matching(&Matching::empty(chain.clone())).unwrap();
        assert_eq!(f, MorseFunction::height(chain));
        let tri = Arc::new(fixtures::tri());
        let m = Matching::new(tri.clone(), [("v0", "e01"), ("v1", "e12")]).unwrap();
        assert_eq!(function_from_matching(&m).unwrap(), tri_layered());
        let cyclic = Matching::new(tri, [("v0", "e01"), ("v1", "e12"), ("v2", "e20")]).unwrap();
        match function_from_matching(&cyclic) {
            Err(MorseError::NotMorseMatching(c)) => assert_eq!(c.len(), 6),
            other => panic!("{other:?}"),
        }
        let ng = Arc::new(Poset::from_covers([("a", "m"), ("m", "y"), ("b", "y")]).unwrap());
        assert_eq!(function_from_matching(&Matching::empty(ng)), Err(MorseError::NotGraded));
    }

    #[test]
    fn filtration_of_seg() {
        let ev = filtration_events(&seg_f(0, 2, 1)).unwrap();
        assert_eq!(ev.len(), 3);
        assert_eq!(ev[0].kind, EventKind::CriticalAdjunction { x: "v0".into(), boundary: vec![] });
        assert_eq!(ev[0].threshold, int(0));
        assert_eq!(ev[1].kind, EventKind::BeatPair { v: "e".into(), w: "v1".into() });
        assert_eq!(ev[2].kind, EventKind::NoChange);
        assert_eq!(ev[2].value, int(2));
        assert_eq!((ev[1].b0_before, ev[1].b0_after), (1, 1));
        assert!(filtration_events(&MorseFunction::zero(Arc::new(Poset::empty()))).unwrap().is_empty());
    }

    #[test]
    fn filtration_of_circle() {
        let ev = filtration_events(&MorseFunction::height(Arc::new(fixtures::circ4()))).unwrap();
        assert_eq!(ev.len(), 4);
        for e in &ev {
            let EventKind::CriticalAdjunction { x, boundary } = &e.kind else { panic!("{e:?}") };
            if x == "c" || x == "d" {
                assert_eq!(boundary, &["a", "b"]);
            }
        }
    }

    #[test]
    fn births() {
        let b = component_births(&seg_f(0, 2, 1)).unwrap();
        assert_eq!(b, [Birth { value: int(0), element: "v0".into(), b0: 1 }]);
        let two = fixtures::seg().disjoint_union(&fixtures::seg().relabeled(|s| format!("{s}'")).unwrap()).unwrap();
        let f = MorseFunction::from_integers(
            Arc::new(two),
            &[("v0", 0), ("v1", 2), ("e", 1), ("v0'", 5), ("v1'", 7), ("e'", 6)],
        )
        .unwrap();
        let b = component_births(&f).unwrap();
        assert_eq!(b.iter().map(|b| (b.value.clone(), b.b0)).collect::<Vec<_>>(), [(int(0), 1), (int(5), 2)]);
        let pt = MorseFunction::zero(Arc::new(fixtures::point()));
        assert_eq!(component_births(&pt).unwrap().len(), 1);
    }

    #[test]
    fn births_flag_non_down_wide_base() {
        let f = MorseFunction::from_integers(Arc::new(fixtures::non_down_wide()), &fixtures::non_down_wide_values()).unwrap();
        assert!(critical_points(&f).unwrap().iter().all(|x| x != "y"));
        match component_births(&f) {
            Err(MorseError::HypothesisViolation { clause, witness }) => {
                assert_eq!(clause, "down-wide");
                assert!(witness.contains("4/1"), "{witness}");
            }
            other => panic!("{other:?}"),
        }
        let ev = filtration_events(&f).unwrap();
        assert!(ev.iter().any(|e| matches!(e.kind, EventKind::Anomaly { .. })));
    }
}
