//! Dijkgraaf–Witten / Reshetikhin–Turaev invariants of arborescent knots for
//! the dihedral group `D_n` (odd `n`), and the number of Fox `n`-colorings.
//!
//! Three independent routes compute the coloring count of a Montesinos knot:
//! the closed formula ([`engine::coloring_count_formula`]), the block
//! calculus on `V±⊙V±` ([`engine::coloring_count_engine`]) and a Smith
//! normal form count on the traced diagram ([`fox::count_colorings`]).

pub mod check;
pub mod cyclotomic;
pub mod dihedral;
pub mod engine;
pub mod error;
pub mod fox;
pub mod tangle;

pub use error::{Error, Result};
