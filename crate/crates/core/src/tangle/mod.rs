//! Arborescent tangle words, continued fractions and closure diagrams.

mod diagram;
mod frac;
mod parse;
mod word;

pub use diagram::{closure_trace, from_pd_json, to_pd_json, Crossing, PlanarDiagram};
pub use frac::{eval_cf, mu, neg_cf, neg_cf_with, CfStrategy, Frac, MontesinosSpec};
pub use parse::parse_word;
pub use word::{montesinos_word, rational_word, rational_word_from_expansion, TangleWord};
