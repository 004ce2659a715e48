use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::HomologyError;
use crate::poset::Poset;

/// An abstract simplicial complex on named vertices.
///
/// Vertices are kept sorted and simplices are stored per dimension as sorted
/// vertex-index lists, themselves sorted lexicographically. This fixes the
/// orientation used by the boundary matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { vertices: Vec::new(), simplices: Vec::new() }
    }

    /// Closes a list of facets under taking faces. Empty facets are ignored.
    pub fn from_facets<F, V>(facets: F) -> Self
    where
        F: IntoIterator<Item = V>,
        V: IntoIterator,
        V::Item: Into<String>,
    {
        let facets: Vec<BTreeSet<String>> = facets
            .into_iter()
            .map(|f| f.into_iter().map(Into::into).collect::<BTreeSet<_>>())
            .filter(|f| !f.is_empty())
            .collect();
        let vertices: Vec<String> =
            facets.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for facet in &facets {
            let idx: Vec<usize> = facet
                .iter()
                .map(|v| vertices.binary_search(v).expect("vertex collected"))
                .collect();
            // all nonempty subsets
            for mask in 1u64..(1u64 << idx.len()) {
                let face: Vec<usize> =
                    idx.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                let d = face.len() - 1;
                if by_dim.len() <= d {
                    by_dim.resize_with(d + 1, BTreeSet::new);
                }
                by_dim[d].insert(face);
            }
        }
        SimplicialComplex {
            vertices,
            simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    /// Assembles a complex from face-closed, per-dimension simplex sets.
    pub(crate) fn from_parts(vertices: Vec<String>, simplices: Vec<BTreeSet<Vec<usize>>>) -> Self {
        let mut simplices: Vec<Vec<Vec<usize>>> =
            simplices.into_iter().map(|s| s.into_iter().collect()).collect();
        while simplices.last().is_some_and(|s| s.is_empty()) {
            simplices.pop();
        }
        SimplicialComplex { vertices, simplices }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    /// Dimension; `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.simplices.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// The `d`-simplices, as sorted vertex-index lists.
    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |s| s.as_slice())
    }

    pub(crate) fn all_by_dim(&self) -> &[Vec<Vec<usize>>] {
        &self.simplices
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    /// Number of simplices over all dimensions.
    pub fn len(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, simplex: &[usize]) -> bool {
        match simplex.len() {
            0 => false,
            k => self.simplices(k - 1).binary_search(&simplex.to_vec()).is_ok(),
        }
    }

    pub fn names(&self, simplex: &[usize]) -> Vec<String> {
        simplex.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    /// Name of a simplex: its vertex names joined by commas.
    pub fn label(&self, simplex: &[usize]) -> String {
        self.names(simplex).join(",")
    }

    /// Maximal simplices, in dimension order.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for d in 0..self.simplices.len() {
            for s in &self.simplices[d] {
                let covered = self.simplices.get(d + 1).is_some_and(|up| {
                    up.iter().any(|t| s.iter().all(|v| t.binary_search(v).is_ok()))
                });
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// Every facet has the top dimension.
    pub fn is_pure(&self) -> bool {
        let top = self.simplices.len();
        self.facets().iter().all(|f| f.len() == top)
    }

    /// Link of `simplex`: simplices disjoint from it whose union with it is a simplex.
    pub fn link(&self, simplex: &[usize]) -> SimplicialComplex {
        let mut parts: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for (d, layer) in self.simplices.iter().enumerate() {
            for t in layer {
                if t.iter().any(|v| simplex.contains(v)) {
                    continue;
                }
                let mut joined: Vec<usize> = t.iter().chain(simplex).copied().collect();
                joined.sort_unstable();
                if self.contains(&joined) {
                    if parts.len() <= d {
                        parts.resize_with(d + 1, BTreeSet::new);
                    }
                    parts[d].insert(t.clone());
                }
            }
        }
        SimplicialComplex::from_parts(self.vertices.clone(), parts)
    }

    /// Face poset: simplices ordered by inclusion, named by [`SimplicialComplex::label`].
    pub fn face_poset(&self) -> Result<Poset, HomologyError> {
        if self.is_empty() {
            return Err(HomologyError::EmptyComplex);
        }
        let mut elements = Vec::with_capacity(self.len());
        let mut covers = Vec::new();
        for layer in &self.simplices {
            for s in layer {
                let name = self.label(s);
                if s.len() > 1 {
                    for skip in 0..s.len() {
                        let face: Vec<usize> =
                            s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                        covers.push((self.label(&face), name.clone()));
                    }
                }
                elements.push(name);
            }
        }
        Poset::new(elements, covers).map_err(|e| HomologyError::Internal(e.to_string()))
    }
}

/// Order complex: the nonempty chains of `p`, on the elements of `p`.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    chains_within(p, &p.full_set())
}

/// Chains of `p` whose elements all lie in `members`. Vertex indices are the
/// element indices of `p`.
pub(crate) fn chains_within(p: &Poset, members: &FixedBitSet) -> SimplicialComplex {
    let mut parts: Vec<BTreeSet<Vec<usize>>> = Vec::new();
    let mut chain = Vec::new();
    for x in members.ones() {
        chain.push(x);
        extend_chains(p, members, &mut chain, &mut parts);
        chain.pop();
    }
    SimplicialComplex::from_parts(p.ids().to_vec(), parts)
}

fn extend_chains(
    p: &Poset,
    members: &FixedBitSet,
    chain: &mut Vec<usize>,
    out: &mut Vec<BTreeSet<Vec<usize>>>,
) {
    let d = chain.len() - 1;
    if out.len() <= d {
        out.resize_with(d + 1, BTreeSet::new);
    }
    let mut sorted = chain.clone();
    sorted.sort_unstable();
    out[d].insert(sorted);
    let top = *chain.last().expect("nonempty chain");
    let mut above = p.up_set(top).clone();
    above.set(top, false);
    above.intersect_with(members);
    for y in above.ones() {
        chain.push(y);
        extend_chains(p, members, chain, out);
        chain.pop();
    }
}
