//! Words in the genus-2 surface group: nontriviality certificates through the
//! retraction onto a free group, checked against Dehn's algorithm.

mod dehn;
mod pipeline;
mod word;

pub use dehn::{dehn_oracle, WordProblem};
pub use pipeline::{
    certify_nontrivial, dehn_twist, length_bound_check, retract, rewrite_blocks, twist_exponent, Certificate,
    LengthBound, Verdict,
};
pub use word::{side_of, BlockDecomposition, Side, SurfaceWord, RELATOR, Z1, Z2};
