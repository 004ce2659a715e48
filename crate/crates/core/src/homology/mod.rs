//! Simplicial homology of order complexes, and the homological predicates
//! built on it: acyclicity, sphere homology, admissibility and closed
//! homology manifolds.

mod complex;
mod snf;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use complex::{order_complex, SimplicialComplex};
pub use snf::{is_prime, rank_mod_p, smith_normal_form, IntegerMatrix, SnfResult};

use crate::poset::{Poset, Subposet};
use crate::reduction::{self, TriState};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("complex is empty")]
    EmptyComplex,
    #[error("modulus {0} is not a prime")]
    NonPrimeModulus(u64),
    #[error("order complex is not homogeneous: facets of dimensions {0:?}")]
    NotHomogeneous(Vec<usize>),
    #[error("element `{0}` of the subposet is not in the ambient poset")]
    NotSubposet(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Coefficient domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficients {
    Integers,
    PrimeField(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one, each dividing the next.
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

/// Homology in degrees `0..=dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub coefficients: Coefficients,
    pub reduced: bool,
    pub groups: Vec<HomologyGroup>,
}

impl HomologyResult {
    pub fn betti(&self, i: usize) -> usize {
        self.groups.get(i).map_or(0, |g| g.betti)
    }

    pub fn bettis(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn torsion(&self, i: usize) -> &[BigInt] {
        self.groups.get(i).map_or(&[], |g| g.torsion.as_slice())
    }

    /// Minimal number of generators of the torsion subgroup in degree `i`.
    pub fn mu(&self, i: usize) -> usize {
        self.torsion(i).len()
    }

    pub fn is_zero(&self) -> bool {
        self.groups.iter().all(|g| g.betti == 0 && g.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(i, g)| if i % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// Same groups, ignoring trailing zero degrees.
    pub fn same_groups(&self, other: &HomologyResult) -> bool {
        let n = self.groups.len().max(other.groups.len());
        (0..n).all(|i| self.betti(i) == other.betti(i) && self.torsion(i) == other.torsion(i))
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Boundary matrices `∂_1, ..., ∂_dim` with the sorted-vertex orientation:
/// deleting the i-th vertex contributes `(-1)^i`.
pub fn boundary_matrices(k: &SimplicialComplex) -> Vec<IntegerMatrix> {
    let all = k.all_by_dim();
    (1..all.len())
        .map(|d| {
            let mut m = boundary_block(&all[d - 1], &all[d]);
            m.row_labels = all[d - 1].iter().map(|s| k.label(s)).collect();
            m.col_labels = all[d].iter().map(|s| k.label(s)).collect();
            m
        })
        .collect()
}

/// Boundary from `cols` into `rows`; faces missing from `rows` are dropped,
/// which is the boundary of a quotient complex.
fn boundary_block(rows: &[Vec<usize>], cols: &[Vec<usize>]) -> IntegerMatrix {
    let index: HashMap<&[usize], usize> =
        rows.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
    let mut m = IntegerMatrix::zeros(rows.len(), cols.len());
    let mut face = Vec::new();
    for (j, s) in cols.iter().enumerate() {
        for skip in 0..s.len() {
            face.clear();
            face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
            if let Some(&i) = index.get(face.as_slice()) {
                m.set(i, j, if skip % 2 == 0 { BigInt::one() } else { -BigInt::one() });
            }
        }
    }
    m
}

fn check_coefficients(c: Coefficients) -> Result<(), HomologyError> {
    match c {
        Coefficients::PrimeField(p) if p >= 1 << 32 || !is_prime(p) => {
            Err(HomologyError::NonPrimeModulus(p))
        }
        _ => Ok(()),
    }
}

/// Homology of the chain complex with the given bases. With `augmented`, the
/// augmentation `C_0 → Z` is appended (reduced homology).
fn chain_homology(bases: &[Vec<Vec<usize>>], coeffs: Coefficients, augmented: bool) -> HomologyResult {
    let top = bases.len();
    // rank and torsion of ∂_d for d in 0..=top, where ∂_0 is the augmentation
    let mut ranks = vec![0usize; top + 1];
    let mut torsion = vec![Vec::new(); top + 1];
    for d in 0..top {
        let m = if d == 0 {
            if !augmented || bases[0].is_empty() {
                continue;
            }
            let mut m = IntegerMatrix::zeros(1, bases[0].len());
            for j in 0..bases[0].len() {
                m.set(0, j, BigInt::one());
            }
            m
        } else {
            boundary_block(&bases[d - 1], &bases[d])
        };
        match coeffs {
            Coefficients::Integers => {
                let snf = smith_normal_form(&m);
                ranks[d] = snf.rank;
                torsion[d] = snf.torsion();
            }
            Coefficients::PrimeField(p) => ranks[d] = rank_mod_p(&m, p),
        }
    }
    let groups = (0..top)
        .map(|d| HomologyGroup {
            betti: bases[d].len() - ranks[d] - ranks[d + 1],
            torsion: std::mem::take(&mut torsion[d + 1]),
        })
        .collect();
    HomologyResult { coefficients: coeffs, reduced: augmented, groups }
}

/// Homology of a simplicial complex.
pub fn homology(
    k: &SimplicialComplex,
    coeffs: Coefficients,
    reduced: bool,
) -> Result<HomologyResult, HomologyError> {
    check_coefficients(coeffs)?;
    Ok(chain_homology(k.all_by_dim(), coeffs, reduced))
}

/// Integral homology of the order complex of `p`.
pub fn poset_homology(p: &Poset, reduced: bool) -> HomologyResult {
    chain_homology(order_complex(p).all_by_dim(), Coefficients::Integers, reduced)
}

/// Homology of the pair `(𝒦(big), 𝒦(small))`.
pub fn relative_homology(big: &Poset, small: &Subposet<'_>) -> Result<HomologyResult, HomologyError> {
    relative_homology_with(big, small, Coefficients::Integers)
}

pub fn relative_homology_with(
    big: &Poset,
    small: &Subposet<'_>,
    coeffs: Coefficients,
) -> Result<HomologyResult, HomologyError> {
    check_coefficients(coeffs)?;
    let mut inside = vec![false; big.len()];
    for id in small.ids() {
        let x = big.index_of(&id).ok_or(HomologyError::NotSubposet(id))?;
        inside[x] = true;
    }
    let k = order_complex(big);
    let bases: Vec<Vec<Vec<usize>>> = k
        .all_by_dim()
        .iter()
        .map(|layer| layer.iter().filter(|s| !s.iter().all(|&v| inside[v])).cloned().collect())
        .collect();
    Ok(chain_homology(&bases, coeffs, false))
}

/// Nonempty with vanishing reduced integral homology. The empty poset is
/// not acyclic.
pub fn is_acyclic(s: &Subposet<'_>) -> bool {
    poset_is_acyclic(&s.to_poset())
}

pub fn poset_is_acyclic(p: &Poset) -> bool {
    !p.is_empty() && poset_homology(p, true).is_zero()
}

/// Reduced integral homology of `S^d`; for `d = -1`, emptiness.
pub fn has_sphere_homology(s: &Subposet<'_>, d: i64) -> bool {
    complex_has_sphere_homology(&order_complex(&s.to_poset()), d)
}

pub fn complex_has_sphere_homology(k: &SimplicialComplex, d: i64) -> bool {
    if d < 0 {
        return d == -1 && k.is_empty();
    }
    if k.is_empty() {
        return false;
    }
    let h = chain_homology(k.all_by_dim(), Coefficients::Integers, true);
    let d = d as usize;
    d < h.groups.len()
        && h.groups.iter().enumerate().all(|(i, g)| {
            g.torsion.is_empty() && g.betti == usize::from(i == d)
        })
}

/// Which admissibility notion to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityMode {
    /// `Û_x − {w}` acyclic.
    Homological,
    /// `Û_x − {w}` simply connected.
    One,
    /// Both.
    Full,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeAdmissibility {
    pub lower: String,
    pub upper: String,
    pub state: TriState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Admissibility {
    pub mode: AdmissibilityMode,
    pub edges: Vec<EdgeAdmissibility>,
    pub aggregate: TriState,
}

/// Admissibility of the single cover edge `w ≺ x`.
pub fn edge_admissibility(p: &Poset, w: usize, x: usize, mode: AdmissibilityMode) -> TriState {
    let rest = p.neighborhoods_of(x).u_hat.without(w);
    let homological = || {
        if is_acyclic(&rest) {
            TriState::yes("acyclic")
        } else {
            TriState::no("not acyclic")
        }
    };
    match mode {
        AdmissibilityMode::Homological => homological(),
        AdmissibilityMode::One => reduction::simply_connected(&rest.to_poset()),
        AdmissibilityMode::Full => {
            TriState::all([homological(), reduction::simply_connected(&rest.to_poset())])
        }
    }
}

/// Per-edge and aggregate admissibility of the Hasse diagram.
pub fn admissibility(p: &Poset, mode: AdmissibilityMode) -> Admissibility {
    let edges: Vec<EdgeAdmissibility> = p
        .covers()
        .into_iter()
        .map(|(w, x)| EdgeAdmissibility {
            lower: p.id(w).to_string(),
            upper: p.id(x).to_string(),
            state: edge_admissibility(p, w, x, mode),
        })
        .collect();
    let aggregate = TriState::all(edges.iter().map(|e| e.state.clone()));
    Admissibility { mode, edges, aggregate }
}

/// Every simplex link of the order complex has the homology of the sphere
/// of complementary dimension.
pub fn is_closed_homology_manifold(p: &Poset) -> Result<bool, HomologyError> {
    let k = order_complex(p);
    if k.is_empty() {
        return Err(HomologyError::NotHomogeneous(Vec::new()));
    }
    if !k.is_pure() {
        let mut dims: Vec<usize> = k.facets().iter().map(|f| f.len() - 1).collect();
        dims.sort_unstable();
        dims.dedup();
        return Err(HomologyError::NotHomogeneous(dims));
    }
    let n = k.dimension();
    Ok(k.all_by_dim().iter().enumerate().all(|(d, layer)| {
        layer
            .iter()
            .all(|s| complex_has_sphere_homology(&k.link(s), n - d as i64 - 1))
    }))
}

/// Alternating count of chains.
pub fn euler_characteristic(p: &Poset) -> i64 {
    order_complex(p)
        .all_by_dim()
        .iter()
        .enumerate()
        .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
        .sum()
}
