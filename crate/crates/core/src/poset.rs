//! Finite posets stored through their Hasse diagram.
//!
//! A [`Poset`] is immutable once built. Elements are opaque string
//! identifiers, kept sorted, and re-indexed densely so that the order
//! relation can be cached as one bitset of lower elements per element.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("cover relation contains a directed cycle through {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no Key Lemma witness between `{0}` and `{1}` on a two-wide poset")]
    SearchFailure(String, String),
}

/// A finite partially ordered set.
#[derive(Clone)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    /// `down[x]` holds every `y <= x`.
    down: Vec<FixedBitSet>,
    /// `up[x]` holds every `y >= x`.
    up: Vec<FixedBitSet>,
    heights: Vec<usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.lower == other.lower
    }
}

impl Eq for Poset {}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.ids)
            .field("covers", &self.cover_ids())
            .finish()
    }
}

impl Poset {
    /// The empty poset.
    pub fn empty() -> Self {
        Self::from_closure(Vec::new(), Vec::new())
    }

    /// Builds a poset from a list of relations `(w, x)` meaning `w < x`.
    ///
    /// The relation may contain redundant (transitively implied) or duplicated
    /// pairs; the stored covers are the transitive reduction of its closure.
    pub fn from_covers<I, A, B>(covers: I) -> Result<Self, PosetError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let pairs: Vec<(String, String)> =
            covers.into_iter().map(|(a, b)| (a.into(), b.into())).collect();
        let elements: Vec<String> = pairs
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        Self::new(elements, pairs)
    }

    /// Builds a poset from an explicit element list and relation pairs.
    /// Every identifier used in `covers` must appear in `elements`.
    pub fn new<E, C, A, B>(elements: E, covers: C) -> Result<Self, PosetError>
    where
        E: IntoIterator,
        E::Item: Into<String>,
        C: IntoIterator<Item = (A, B)>,
        A: Into<String>,
        B: Into<String>,
    {
        let ids: Vec<String> = elements
            .into_iter()
            .map(Into::into)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<&str, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let n = ids.len();
        let mut succ = vec![BTreeSet::new(); n];
        for (a, b) in covers {
            let (a, b) = (a.into(), b.into());
            let ia = *index.get(a.as_str()).ok_or(PosetError::UnknownElement(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or(PosetError::UnknownElement(b.clone()))?;
            if ia == ib {
                return Err(PosetError::Cycle(vec![a.clone(), a]));
            }
            succ[ia].insert(ib);
        }
        let succ: Vec<Vec<usize>> = succ.into_iter().map(|s| s.into_iter().collect()).collect();

        let order = topological_order(&succ).map_err(|cycle| {
            PosetError::Cycle(cycle.into_iter().map(|i| ids[i].clone()).collect())
        })?;

        let mut pred = vec![Vec::new(); n];
        for (a, outs) in succ.iter().enumerate() {
            for &b in outs {
                pred[b].push(a);
            }
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for &x in &order {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(x);
            for &w in &pred[x] {
                set.union_with(&down[w]);
            }
            down[x] = set;
        }
        Ok(Self::from_closure(ids, down))
    }

    /// Assembles a poset from sorted identifiers and a reflexive, transitive,
    /// antisymmetric down-set table.
    pub(crate) fn from_closure(ids: Vec<String>, down: Vec<FixedBitSet>) -> Self {
        let n = ids.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in down[x].ones() {
                up[y].insert(x);
            }
        }
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for x in 0..n {
            let mut cand = down[x].clone();
            cand.set(x, false);
            let strict: Vec<usize> = cand.ones().collect();
            for z in strict {
                if cand.contains(z) {
                    let mut below_z = down[z].clone();
                    below_z.set(z, false);
                    cand.difference_with(&below_z);
                }
            }
            lower[x] = cand.ones().collect();
            for &w in &lower[x] {
                upper[w].push(x);
            }
        }
        for u in &mut upper {
            u.sort_unstable();
        }
        // heights: longest chain ending at x; count of strict lower elements
        // gives a valid processing order
        let mut by_size: Vec<usize> = (0..n).collect();
        by_size.sort_by_key(|&x| down[x].count_ones(..));
        let mut heights = vec![0usize; n];
        for &x in &by_size {
            heights[x] = lower[x].iter().map(|&w| heights[w] + 1).max().unwrap_or(0);
        }
        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Poset { ids, index, lower, upper, down, up, heights }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Identifiers in ascending order; positions are the element indices.
    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Like [`Poset::index_of`] but failing with [`PosetError::UnknownElement`].
    pub fn require(&self, id: &str) -> Result<usize, PosetError> {
        self.index_of(id).ok_or_else(|| PosetError::UnknownElement(id.to_string()))
    }

    /// Elements covered by `x`, i.e. the set ∂(x).
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// All cover pairs `(w, x)` with `w ≺ x`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|x| self.lower[x].iter().map(move |&w| (w, x)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn cover_ids(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(w, x)| (self.ids[w].clone(), self.ids[x].clone()))
            .collect()
    }

    /// `x <= y`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.down[y].contains(x)
    }

    /// `x < y`.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// `x ≺ y`.
    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.lower[y].binary_search(&x).is_ok()
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Order query by identifier: `x <= y`.
    pub fn order_query(&self, x: &str, y: &str) -> Result<bool, PosetError> {
        Ok(self.leq(self.require(x)?, self.require(y)?))
    }

    /// The minimal open set U_x as a bitset.
    pub fn down_set(&self, x: usize) -> &FixedBitSet {
        &self.down[x]
    }

    /// F_x as a bitset.
    pub fn up_set(&self, x: usize) -> &FixedBitSet {
        &self.up[x]
    }

    pub fn height_of(&self, x: usize) -> usize {
        self.heights[x]
    }

    /// Height of the poset; `-1` for the empty poset.
    pub fn height(&self) -> i64 {
        self.heights.iter().max().map_or(-1, |&h| h as i64)
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        self.lower[x].is_empty()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_minimal(x)).collect()
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn all(&self) -> Subposet<'_> {
        Subposet::new(self, self.full_set())
    }

    /// Subposet spanned by the given identifiers.
    pub fn subposet<I, S>(&self, ids: I) -> Result<Subposet<'_>, PosetError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = FixedBitSet::with_capacity(self.len());
        for id in ids {
            set.insert(self.require(id.as_ref())?);
        }
        Ok(Subposet::new(self, set))
    }

    /// Poset induced on `members`; covers are recomputed for the restricted order.
    pub fn induced(&self, members: &FixedBitSet) -> Poset {
        let keep: Vec<usize> = members.ones().collect();
        let n = keep.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if self.leq(y, x) {
                    down[i].insert(j);
                }
            }
        }
        let ids = keep.iter().map(|&x| self.ids[x].clone()).collect();
        Poset::from_closure(ids, down)
    }

    /// U, Û, F, F̂ and Ĉ at `x`.
    pub fn neighborhoods(&self, x: &str) -> Result<Neighborhoods<'_>, PosetError> {
        let x = self.require(x)?;
        Ok(self.neighborhoods_of(x))
    }

    pub fn neighborhoods_of(&self, x: usize) -> Neighborhoods<'_> {
        let u = self.down[x].clone();
        let mut u_hat = u.clone();
        u_hat.set(x, false);
        let f = self.up[x].clone();
        let mut f_hat = f.clone();
        f_hat.set(x, false);
        let mut c_hat = u_hat.clone();
        c_hat.union_with(&f_hat);
        Neighborhoods {
            u: Subposet::new(self, u),
            u_hat: Subposet::new(self, u_hat),
            f: Subposet::new(self, f),
            f_hat: Subposet::new(self, f_hat),
            c_hat: Subposet::new(self, c_hat),
        }
    }

    /// Heights, poset height, gradedness and degrees.
    ///
    /// U_x is homogeneous exactly when every saturated chain from a minimal
    /// element up to `x` has the same length, so it suffices to compare the
    /// shortest and longest such chains.
    pub fn height_profile(&self) -> HeightProfile {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.heights[x]);
        let mut shortest = vec![0usize; n];
        for &x in &order {
            shortest[x] = self.lower[x].iter().map(|&w| shortest[w] + 1).min().unwrap_or(0);
        }
        let graded = (0..n).all(|x| shortest[x] == self.heights[x]);
        HeightProfile {
            heights: self.heights.clone(),
            height: self.height(),
            graded,
            degrees: graded.then(|| self.heights.clone()),
        }
    }

    pub fn is_graded(&self) -> bool {
        self.height_profile().graded
    }

    /// Two-wide check. On failure returns a triple `x ≺ z ≺ y` for which `z`
    /// is the only middle element.
    pub fn is_two_wide(&self) -> (bool, Option<[String; 3]>) {
        for y in 0..self.len() {
            for &z in &self.lower[y] {
                for &x in &self.lower[z] {
                    let middles = self.upper[x].iter().filter(|&&m| self.is_cover(m, y)).count();
                    if middles < 2 {
                        let w = [self.ids[x].clone(), self.ids[z].clone(), self.ids[y].clone()];
                        return (false, Some(w));
                    }
                }
            }
        }
        (true, None)
    }

    /// The interval formulation: every non-cover pair `x < y` spans an
    /// interval with at least four elements.
    ///
    /// This agrees with [`Poset::is_two_wide`] on graded posets. In general
    /// two-wide implies it but not conversely.
    pub fn satisfies_interval_criterion(&self) -> bool {
        (0..self.len()).all(|y| {
            self.down[y].ones().all(|x| {
                if x == y || self.is_cover(x, y) {
                    return true;
                }
                let mut interval = self.up[x].clone();
                interval.intersect_with(&self.down[y]);
                interval.count_ones(..) >= 4
            })
        })
    }

    /// Two distinct elements covering `w` and lying strictly below `y`.
    pub fn key_lemma_witness(&self, w: &str, y: &str) -> Result<(String, String), PosetError> {
        let (wi, yi) = (self.require(w)?, self.require(y)?);
        if let (false, Some(t)) = self.is_two_wide() {
            return Err(PosetError::Precondition(format!(
                "poset is not two-wide: {} ≺ {} ≺ {} has a single middle element",
                t[0], t[1], t[2]
            )));
        }
        if !self.lt(wi, yi) || self.is_cover(wi, yi) {
            return Err(PosetError::Precondition(format!(
                "need {w} < {y} without {w} ≺ {y}"
            )));
        }
        let mut found = self.upper[wi].iter().filter(|&&x| self.lt(x, yi));
        match (found.next(), found.next()) {
            (Some(&a), Some(&b)) => Ok((self.ids[a].clone(), self.ids[b].clone())),
            _ => Err(PosetError::SearchFailure(w.to_string(), y.to_string())),
        }
    }

    /// Down-wide check: every non-minimal element covers at least two elements.
    pub fn is_down_wide(&self) -> (bool, Option<String>) {
        match (0..self.len()).find(|&x| self.lower[x].len() == 1) {
            Some(x) => (false, Some(self.ids[x].clone())),
            None => (true, None),
        }
    }

    /// Connected components of the Hasse diagram, as index lists.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        components_within(self, &self.full_set())
    }

    /// Connected components as sorted identifier lists.
    pub fn components(&self) -> Vec<Vec<String>> {
        self.component_indices()
            .into_iter()
            .map(|c| c.into_iter().map(|x| self.ids[x].clone()).collect())
            .collect()
    }

    /// Disjoint union; identifiers of the second operand must not clash.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset, PosetError> {
        if let Some(dup) = other.ids.iter().find(|id| self.index.contains_key(*id)) {
            return Err(PosetError::Precondition(format!("identifier `{dup}` occurs in both posets")));
        }
        let elements = self.ids.iter().chain(other.ids.iter()).cloned();
        let covers = self.cover_ids().into_iter().chain(other.cover_ids());
        Poset::new(elements, covers)
    }

    /// The poset with every identifier prefixed by `prefix`.
    pub fn relabeled(&self, f: impl Fn(&str) -> String) -> Result<Poset, PosetError> {
        let elements: Vec<String> = self.ids.iter().map(|s| f(s)).collect();
        let covers: Vec<(String, String)> =
            self.cover_ids().into_iter().map(|(a, b)| (f(&a), f(&b))).collect();
        Poset::new(elements, covers)
    }
}

/// Connected components of the Hasse diagram restricted to `members`.
///
/// Two members are adjacent when they are comparable in the parent, which
/// gives the same components as the induced Hasse diagram.
pub(crate) fn components_within(p: &Poset, members: &FixedBitSet) -> Vec<Vec<usize>> {
    let mut seen = FixedBitSet::with_capacity(p.len());
    let mut out = Vec::new();
    for start in members.ones() {
        if seen.contains(start) {
            continue;
        }
        seen.insert(start);
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            let mut nbrs = p.down[x].clone();
            nbrs.union_with(&p.up[x]);
            nbrs.intersect_with(members);
            for y in nbrs.ones() {
                if !seen.contains(y) {
                    seen.insert(y);
                    comp.push(y);
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Kahn's algorithm; on failure returns the elements of one directed cycle.
fn topological_order(succ: &[Vec<usize>]) -> Result<Vec<usize>, Vec<usize>> {
    let n = succ.len();
    let mut indeg = vec![0usize; n];
    for outs in succ {
        for &b in outs {
            indeg[b] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&x| indeg[x] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = queue.pop() {
        order.push(x);
        for &y in &succ[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                queue.push(y);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // every remaining vertex has a remaining predecessor; walk backwards
    let remaining: Vec<bool> = indeg.iter().map(|&d| d > 0).collect();
    let mut pred = vec![None; n];
    for (a, outs) in succ.iter().enumerate() {
        for &b in outs {
            if remaining[a] && remaining[b] {
                pred[b] = Some(a);
            }
        }
    }
    let start = (0..n).find(|&x| remaining[x]).expect("cycle exists");
    let mut visited = vec![usize::MAX; n];
    let mut walk = Vec::new();
    let mut cur = start;
    while visited[cur] == usize::MAX {
        visited[cur] = walk.len();
        walk.push(cur);
        cur = pred[cur].expect("remaining vertex has a remaining predecessor");
    }
    let mut cycle: Vec<usize> = walk[visited[cur]..].to_vec();
    cycle.reverse();
    cycle.push(cycle[0]);
    Err(cycle)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightProfile {
    pub heights: Vec<usize>,
    pub height: i64,
    pub graded: bool,
    pub degrees: Option<Vec<usize>>,
}

/// The neighbourhoods of one element.
#[derive(Debug, Clone)]
pub struct Neighborhoods<'a> {
    pub u: Subposet<'a>,
    pub u_hat: Subposet<'a>,
    pub f: Subposet<'a>,
    pub f_hat: Subposet<'a>,
    pub c_hat: Subposet<'a>,
}

/// A subset of a parent poset carrying the restricted order.
#[derive(Clone)]
pub struct Subposet<'a> {
    parent: &'a Poset,
    members: FixedBitSet,
}

impl fmt::Debug for Subposet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ids()).finish()
    }
}

impl PartialEq for Subposet<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl<'a> Subposet<'a> {
    pub fn new(parent: &'a Poset, mut members: FixedBitSet) -> Self {
        members.grow(parent.len());
        Subposet { parent, members }
    }

    pub fn parent(&self) -> &'a Poset {
        self.parent
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn ids(&self) -> Vec<String> {
        self.members.ones().map(|x| self.parent.ids[x].clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.parent.index_of(id).is_some_and(|x| self.contains(x))
    }

    /// Open (down-closed) in the parent.
    pub fn is_open(&self) -> bool {
        self.members.ones().all(|x| self.parent.down[x].is_subset(&self.members))
    }

    pub fn is_subset(&self, other: &Subposet<'_>) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn without(&self, x: usize) -> Subposet<'a> {
        let mut m = self.members.clone();
        m.set(x, false);
        Subposet::new(self.parent, m)
    }

    /// Members of `self` not in `other`, as indices.
    pub fn difference(&self, other: &Subposet<'_>) -> Vec<usize> {
        self.members.difference(&other.members).collect()
    }

    /// The subposet as a stand-alone poset.
    pub fn to_poset(&self) -> Poset {
        self.parent.induced(&self.members)
    }

    pub fn component_count(&self) -> usize {
        components_within(self.parent, &self.members).len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn empty_input_gives_empty_poset() {
        let p = Poset::from_covers(Vec::<(String, String)>::new()).unwrap();
        assert!(p.is_empty());
        assert_eq!(p.height(), -1);
        assert!(p.components().is_empty());
    }

    #[test]
    fn redundant_edge_is_reduced() {
        let p = Poset::from_covers([("0", "1"), ("1", "2"), ("0", "2")]).unwrap();
        assert_eq!(p, fixtures::chain3());
        assert_eq!(p.covers().len(), 2);
    }

    #[test]
    fn duplicate_edges_are_tolerated() {
        let p = Poset::from_covers([("0", "1"), ("0", "1")]).unwrap();
        assert_eq!(p.covers(), vec![(0, 1)]);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Poset::from_covers([("a", "c"), ("c", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::Cycle(ref c) if c.len() == 3));
        assert!(matches!(Poset::from_covers([("a", "a")]), Err(PosetError::Cycle(_))));
    }

    #[test]
    fn order_queries() {
        let c = fixtures::chain3();
        assert!(c.order_query("0", "2").unwrap());
        assert!(!c.order_query("2", "0").unwrap());
        let circ = fixtures::circ4();
        assert!(!circ.order_query("a", "b").unwrap());
        assert!(matches!(c.order_query("0", "9"), Err(PosetError::UnknownElement(_))));
    }

    #[test]
    fn neighborhoods_match_fixtures() {
        let seg = fixtures::seg();
        let n = seg.neighborhoods("e").unwrap();
        assert_eq!(n.u.ids(), ["e", "v0", "v1"]);
        assert_eq!(n.u_hat.ids(), ["v0", "v1"]);
        assert!(n.u.is_open());
        let c = fixtures::chain3();
        assert_eq!(c.neighborhoods("1").unwrap().c_hat.ids(), ["0", "2"]);
        let circ = fixtures::circ4();
        let n = circ.neighborhoods("a").unwrap();
        assert_eq!(n.c_hat.ids(), ["c", "d"]);
        assert_eq!(n.f_hat.ids(), ["c", "d"]);
        assert!(!n.f.is_open());
    }

    #[test]
    fn heights_and_grading() {
        let c = fixtures::chain3();
        let hp = c.height_profile();
        assert_eq!(hp.heights, vec![0, 1, 2]);
        assert!(hp.graded);
        let tri = fixtures::tri();
        let hp = tri.height_profile();
        assert!(hp.graded);
        assert_eq!(hp.height, 1);
        let ok = Poset::from_covers([("a", "x"), ("a", "m"), ("m", "y")]).unwrap();
        assert!(ok.is_graded());
        let bad = Poset::from_covers([("a", "m"), ("m", "y"), ("b", "y")]).unwrap();
        let hp = bad.height_profile();
        assert!(!hp.graded);
        assert!(hp.degrees.is_none());
    }

    #[test]
    fn two_wide_fixtures() {
        let (ok, w) = fixtures::chain3().is_two_wide();
        assert!(!ok);
        assert_eq!(w.unwrap(), ["0", "1", "2"].map(String::from));
        assert!(fixtures::tri2().is_two_wide().0);
        assert!(fixtures::tri().is_two_wide().0);
    }

    /// x ≺ z ≺ y has no second middle, yet every non-cover interval has at
    /// least four elements. Only possible on a non-graded poset.
    #[test]
    fn interval_criterion_is_weaker_off_graded_posets() {
        let p = Poset::from_covers([
            ("x", "z"), ("z", "y"),
            ("x", "u"), ("x", "u2"),
            ("u", "a"), ("u2", "a"), ("u", "b"), ("u2", "b"),
            ("a", "y"), ("b", "y"),
        ])
        .unwrap();
        assert!(!p.is_graded());
        assert!(!p.is_two_wide().0);
        assert!(p.satisfies_interval_criterion());
    }

    #[test]
    fn key_lemma_fixtures() {
        let t = fixtures::tri2();
        assert_eq!(t.key_lemma_witness("v0", "T").unwrap(), ("e01".into(), "e20".into()));
        assert_eq!(t.key_lemma_witness("v1", "T").unwrap(), ("e01".into(), "e12".into()));
        assert!(matches!(
            fixtures::chain3().key_lemma_witness("0", "2"),
            Err(PosetError::Precondition(_))
        ));
        assert!(matches!(t.key_lemma_witness("v0", "e01"), Err(PosetError::Precondition(_))));
    }

    #[test]
    fn down_wide_fixtures() {
        assert_eq!(fixtures::seg().is_down_wide(), (true, None));
        assert_eq!(fixtures::chain3().is_down_wide(), (false, Some("1".into())));
        assert!(fixtures::fan3().is_down_wide().0);
    }

    #[test]
    fn component_counts() {
        assert_eq!(fixtures::chain3().components().len(), 1);
        let other = fixtures::chain3().relabeled(|s| format!("b{s}")).unwrap();
        assert_eq!(fixtures::chain3().disjoint_union(&other).unwrap().components().len(), 2);
        assert_eq!(Poset::empty().components().len(), 0);
    }

    #[test]
    fn induced_order_recomputes_covers() {
        let c = fixtures::chain3();
        let sub = c.subposet(["0", "2"]).unwrap().to_poset();
        assert_eq!(sub.cover_ids(), vec![("0".to_string(), "2".to_string())]);
    }
}
