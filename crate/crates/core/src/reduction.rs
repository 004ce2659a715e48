//! Beat points, cores and three-valued homotopical triviality.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::edge_path::{self, Simplified};
use crate::homology;
use crate::poset::{Poset, PosetError, Subposet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

/// A yes/no/unknown answer with the reason that certifies it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriState {
    pub value: Tri,
    pub reason: String,
}

impl TriState {
    pub fn yes(reason: impl Into<String>) -> Self {
        TriState { value: Tri::Yes, reason: reason.into() }
    }

    pub fn no(reason: impl Into<String>) -> Self {
        TriState { value: Tri::No, reason: reason.into() }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        TriState { value: Tri::Unknown, reason: reason.into() }
    }

    pub fn is_yes(&self) -> bool {
        self.value == Tri::Yes
    }

    pub fn is_no(&self) -> bool {
        self.value == Tri::No
    }

    /// Conjunction: the first `No` wins, then the first `Unknown`; an empty
    /// conjunction is `Yes`.
    pub fn all(states: impl IntoIterator<Item = TriState>) -> TriState {
        let mut unknown = None;
        for s in states {
            match s.value {
                Tri::No => return s,
                Tri::Unknown if unknown.is_none() => unknown = Some(s),
                _ => {}
            }
        }
        unknown.unwrap_or_else(|| TriState::yes("all parts hold"))
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.value {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        };
        write!(f, "{v} ({})", self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BeatPoints {
    pub down: Vec<String>,
    pub up: Vec<String>,
}

/// Down beat points (Û_x has a maximum) and up beat points (F̂_x has a minimum).
pub fn beat_points(p: &Poset) -> BeatPoints {
    let all = p.full_set();
    let mut out = BeatPoints::default();
    for x in 0..p.len() {
        if is_down_beat(p, &all, x) {
            out.down.push(p.id(x).to_string());
        }
        if is_up_beat(p, &all, x) {
            out.up.push(p.id(x).to_string());
        }
    }
    out
}

/// `x` is a down beat point of the subposet `members`.
pub(crate) fn is_down_beat(p: &Poset, members: &FixedBitSet, x: usize) -> bool {
    let mut below = p.down_set(x).clone();
    below.set(x, false);
    below.intersect_with(members);
    below.ones().any(|m| below.is_subset(p.down_set(m)))
}

pub(crate) fn is_up_beat(p: &Poset, members: &FixedBitSet, x: usize) -> bool {
    let mut above = p.up_set(x).clone();
    above.set(x, false);
    above.intersect_with(members);
    above.ones().any(|m| above.is_subset(p.up_set(m)))
}

/// Removes beat points one at a time, always the first in identifier order,
/// until none is left.
pub fn core(p: &Poset) -> Subposet<'_> {
    let mut members = p.full_set();
    while let Some(x) = members
        .ones()
        .find(|&x| is_down_beat(p, &members, x) || is_up_beat(p, &members, x))
    {
        members.set(x, false);
    }
    Subposet::new(p, members)
}

/// Simple connectivity surrogate: `No` when empty or disconnected, `Yes`
/// when the edge-path presentation simplifies to the trivial group.
pub fn simply_connected(p: &Poset) -> TriState {
    if p.is_empty() {
        return TriState::no("empty");
    }
    let c = core(p).to_poset();
    if c.len() == 1 {
        return TriState::yes("core is a point");
    }
    if c.component_indices().len() > 1 {
        return TriState::no("disconnected");
    }
    match edge_path::simplify(&edge_path::presentation(&c)) {
        Simplified::Trivial => TriState::yes("edge-path group presentation is trivial"),
        Simplified::Free(k) => TriState::no(format!("fundamental group is free of rank {k}")),
        Simplified::Inconclusive(_) => TriState::unknown("edge-path presentation did not simplify"),
    }
}

/// Homotopical triviality, answered `Unknown` when neither a contraction
/// nor an obstruction is found.
pub fn is_homotopically_trivial(p: &Poset) -> TriState {
    if p.is_empty() {
        return TriState::no("empty");
    }
    let c = core(p).to_poset();
    if c.len() == 1 {
        return TriState::yes("core is a point");
    }
    if c.component_indices().len() > 1 {
        return TriState::no("disconnected");
    }
    let h = homology::poset_homology(&c, true);
    if let Some((i, _)) = h.groups.iter().enumerate().find(|(_, g)| g.betti > 0 || !g.torsion.is_empty()) {
        return TriState::no(format!("nontrivial H{i}"));
    }
    match edge_path::simplify(&edge_path::presentation(&c)) {
        Simplified::Trivial => TriState::yes("simply connected and acyclic"),
        Simplified::Free(k) => TriState::no(format!("fundamental group is free of rank {k}")),
        Simplified::Inconclusive(_) => TriState::unknown("acyclic, fundamental group undecided"),
    }
}

/// Whether Ĉ_x is homotopically trivial.
pub fn is_gamma_point(p: &Poset, x: &str) -> Result<TriState, PosetError> {
    let x = p.require(x)?;
    Ok(is_homotopically_trivial(&p.neighborhoods_of(x).c_hat.to_poset()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn beat_points_of_fixtures() {
        let b = beat_points(&fixtures::chain3());
        assert_eq!(b.down, ["1", "2"]);
        assert_eq!(b.up, ["0", "1"]);
        assert_eq!(beat_points(&fixtures::circ4()), BeatPoints::default());
        let b = beat_points(&fixtures::seg());
        assert_eq!(b.up, ["v0", "v1"]);
        assert!(b.down.is_empty());
    }

    #[test]
    fn cores_of_fixtures() {
        assert_eq!(core(&fixtures::chain3()).len(), 1);
        let circ = fixtures::circ4();
        assert_eq!(core(&circ).len(), 4);
        assert_eq!(core(&fixtures::seg()).len(), 1);
    }

    #[test]
    fn triviality() {
        assert_eq!(is_homotopically_trivial(&fixtures::point()).value, Tri::Yes);
        let t = is_homotopically_trivial(&fixtures::circ4());
        assert_eq!(t.value, Tri::No);
        assert_eq!(t.reason, "nontrivial H1");
        let two = Poset::new(["a", "b"], Vec::<(String, String)>::new()).unwrap();
        assert_eq!(is_homotopically_trivial(&two).value, Tri::No);
        assert_eq!(is_homotopically_trivial(&Poset::empty()).value, Tri::No);
        // face poset of a 2-simplex
        let disc = fixtures::simplex(2).face_poset().unwrap();
        assert_eq!(is_homotopically_trivial(&disc).value, Tri::Yes);
    }

    #[test]
    fn gamma_points() {
        assert_eq!(is_gamma_point(&fixtures::seg(), "v0").unwrap().value, Tri::Yes);
        assert_eq!(is_gamma_point(&fixtures::circ4(), "a").unwrap().value, Tri::No);
        // Ĉ_1 = {0 < 2} is a chain, and 1 is a beat point
        assert_eq!(is_gamma_point(&fixtures::chain3(), "1").unwrap().value, Tri::Yes);
        assert!(is_gamma_point(&fixtures::chain3(), "q").is_err());
    }

    #[test]
    fn conjunction() {
        assert_eq!(TriState::all([]).value, Tri::Yes);
        let s = TriState::all([TriState::yes("a"), TriState::unknown("b"), TriState::no("c")]);
        assert_eq!(s.reason, "c");
        assert_eq!(TriState::all([TriState::yes("a"), TriState::unknown("b")]).value, Tri::Unknown);
    }
}
