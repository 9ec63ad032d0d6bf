//! Decision procedures: simplicity, isotropy, local finiteness, the
//! Mathieu-Zhao property and bounded preimages.

mod isotropy;
mod mz;
mod preimage;
mod simplicity;

pub use isotropy::{
    isotropy_describe_block, sample_isotropy_element, IsotropyCase, IsotropyDescription,
    IsotropyElement, ShiftConstraint,
};
pub use mz::{is_locally_finite, mz_classify, nat_dependence_witness, MzRule, MzStatus, MzVerdict};
pub use preimage::preimage_bounded;
pub use simplicity::{
    embed_block_endo, is_simple, is_simple_block, isotropy_is_trivial, isotropy_witness,
    BlockVerdict, IsotropyWitness, SimplicityVerdict, WitnessKind,
};
