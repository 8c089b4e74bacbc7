//! Circular braid words on the 2-sphere and their plat closures in
//! projective 3-space: word algebra, closure invariants, the M-move
//! rewriting system, bounded equivalence search, and diagram rendering.

pub mod embed;
pub mod error;
pub mod moves;
pub mod oracle;
pub mod perm;
pub mod plat;
pub mod relations;
pub mod render;
pub mod search;
pub mod word;

pub use embed::{embed_e, invert_embed_e, still_positions, strand_deletion};
pub use error::{Error, Result};
pub use oracle::oracle_component_count;
pub use perm::Permutation;
pub use plat::{
    affine_witness, component_count, component_homology, coset_label, internal_map,
    residual_cycles, traversal_map, CosetLabel, InternalMatching, PlatReport, ResidualCycleSet,
    ResidualMatching,
};
pub use word::{sphere_relator, BraidWord, GeneratorLetter, Sign, StrandCount};
