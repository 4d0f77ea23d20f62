//! Graph products of cyclic groups and the CAT(0) cube complexes they act on.
//!
//! The crate solves the word problem in W(Γ), builds finite balls of the
//! coset cube complex X(Γ), and checks on those balls: flag links, the Morse
//! function and its descending links, special-action conditions, freeness
//! of the torsion-free kernel, and the embedding into a right-angled
//! Coxeter-type group W(Γ″).

pub mod cli;
pub mod complex;
pub mod dj;
pub mod error;
pub mod graph;
pub mod group;
pub mod morse;
pub mod oracle;
pub mod special;
pub mod word;

pub use complex::{Clique, CosetComplex, CubeBall, HatGraph, HatVertex, StdCosetVertex};
pub use error::{Error, ParseError, Result};
pub use graph::{parse_graph, LabeledGraph, Order};
pub use group::GraphProduct;
pub use word::{Letter, NormalForm, Word};
