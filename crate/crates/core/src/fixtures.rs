//! Small named posets used throughout the tests, the examples and the CLI
//! self-test.

use crate::homology::SimplicialComplex;
use crate::poset::Poset;

fn build(covers: &[(&str, &str)]) -> Poset {
    Poset::from_covers(covers.iter().copied()).expect("fixture is acyclic")
}

/// `0 < 1 < 2`.
pub fn chain3() -> Poset {
    build(&[("0", "1"), ("1", "2")])
}

/// A single point `p`.
pub fn point() -> Poset {
    Poset::new(["p"], Vec::<(String, String)>::new()).expect("single point")
}

/// Face poset of one edge: `v0, v1 ≺ e`.
pub fn seg() -> Poset {
    build(&[("v0", "e"), ("v1", "e")])
}

/// Face poset of the boundary of a triangle.
pub fn tri() -> Poset {
    build(&[
        ("v0", "e01"), ("v1", "e01"),
        ("v1", "e12"), ("v2", "e12"),
        ("v2", "e20"), ("v0", "e20"),
    ])
}

/// [`tri`] with a top cell `T` over the three edges.
pub fn tri2() -> Poset {
    build(&[
        ("v0", "e01"), ("v1", "e01"),
        ("v1", "e12"), ("v2", "e12"),
        ("v2", "e20"), ("v0", "e20"),
        ("e01", "T"), ("e12", "T"), ("e20", "T"),
    ])
}

/// Minimal finite model of the circle: minima `a, b`, maxima `c, d`.
pub fn circ4() -> Poset {
    build(&[("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")])
}

/// One maximum `x` over three minima.
pub fn fan3() -> Poset {
    build(&[("a", "x"), ("b", "x"), ("c", "x")])
}

/// Face poset of the path `v0 - v1 - v2`.
pub fn path2() -> Poset {
    build(&[("v0", "e01"), ("v1", "e01"), ("v1", "e12"), ("v2", "e12")])
}

/// Boundary of the `n`-simplex on vertices `0..=n`.
pub fn simplex_boundary(n: usize) -> SimplicialComplex {
    let facets: Vec<Vec<String>> = (0..=n)
        .map(|skip| (0..=n).filter(|&v| v != skip).map(|v| v.to_string()).collect())
        .collect();
    SimplicialComplex::from_facets(facets)
}

/// The full `n`-simplex on vertices `0..=n`.
pub fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_facets(vec![(0..=n).map(|v| v.to_string()).collect::<Vec<_>>()])
}

/// The six-vertex triangulation of the real projective plane.
pub fn rp2() -> SimplicialComplex {
    const FACETS: [[u8; 3]; 10] = [
        [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
        [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
    ];
    SimplicialComplex::from_facets(
        FACETS.iter().map(|f| f.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    )
}

/// A poset that is not down-wide: `y` covers only `w`. With the values of
/// [`non_down_wide_values`] the regular value 4 creates a new component.
pub fn non_down_wide() -> Poset {
    build(&[("w", "y"), ("w", "q"), ("p", "q")])
}

/// `p ↦ 3, y ↦ 4, w ↦ 5, q ↦ 6` on [`non_down_wide`].
pub fn non_down_wide_values() -> [(&'static str, i64); 4] {
    [("p", 3), ("y", 4), ("w", 5), ("q", 6)]
}
