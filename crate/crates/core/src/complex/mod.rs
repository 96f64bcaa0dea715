//! Complex structures on Lie algebras: integrability, Dolbeault cohomology,
//! deformations and adapted frames.

mod acs;
mod deformation;
mod frames;
mod hodge;
mod jfile;

pub use acs::{
    is_abelian_structure, is_complex_lie_structure, is_integrable, nijenhuis_vanishes, require_integrable,
    type_components, zero_two_vanishes, AlmostComplexStructure, Frame,
};
pub use deformation::{
    deformation_kernel, dos_kernel, has_full_moduli, is_infinitesimal_deformation, second_order_extension,
    DeformationKernel, KernelSummary,
};
pub use frames::{canonical_frame_6d, filtered_coframe, v10_dims, CanonicalFrame, FrameCase};
pub use hodge::{hodge_numbers, moduli_bound, HodgeNumbers};
pub use jfile::{parse_j_file, ExactStructure, JFile};
