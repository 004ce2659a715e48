//! Discrete Morse theory on finite posets.
//!
//! The crate is organised bottom-up:
//!
//! * [`poset`]: posets as Hasse diagrams with a cached order, minimal open
//!   sets, gradedness and the two-wide / down-wide conditions;
//! * [`reduction`]: beat points, cores and three-valued triviality checks;
//! * [`homology`]: order complexes, face posets, Smith normal form and the
//!   homological predicates;
//! * [`morse`]: Morse functions, sublevel posets and filtrations;
//! * [`matching`]: Morse matchings, gradient paths and cancellation;
//! * [`verify`]: executable checks of the collapsing and adjunction
//!   theorems and the Morse–Pitcher inequalities;
//! * [`io`]: text and JSON formats;
//! * [`random`]: random instances for testing.

pub mod edge_path;
pub mod fixtures;
pub mod homology;
pub mod io;
pub mod matching;
pub mod morse;
pub mod poset;
pub mod random;
pub mod rational;
pub mod reduction;
pub mod verify;

pub use homology::{Coefficients, HomologyResult, SimplicialComplex};
pub use matching::Matching;
pub use morse::MorseFunction;
pub use poset::{Poset, PosetError, Subposet};
pub use reduction::{Tri, TriState};
