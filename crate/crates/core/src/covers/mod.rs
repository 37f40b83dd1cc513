//! Finite covers of surfaces through permutation monodromy.

mod character;
mod construct;
mod extend;
mod partition;
mod perm;
mod regular;
mod stallings;

pub use character::{character, frobenius_count, CharacterTable};
pub use construct::{boundary_lift_components, commutator_witness, strip_cover, two_n_cycles, word_monodromy, StripCover};
pub use extend::{
    class_elements, extends_cover, is_transitive, CoverSpec, CoverWitness, Decision, ExtendOptions, Obstruction,
};
pub use partition::{class_parity, class_size, factorial, Parity, Partition};
pub use perm::Permutation;
pub use regular::{closure, regular_extends, regular_extends_brute_force, RegularOptions, DEFAULT_MAX_DEGREE};
pub use stallings::{stallings_excluding_subgroup, ExcludingRep};
