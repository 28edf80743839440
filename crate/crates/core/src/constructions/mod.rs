//! Fantastacks, Cox and canonical stacks, the isomorphism and good moduli
//! space criteria, and the moduli description of smooth toric stacks.

mod canonical;
mod fantastack;
mod gms;
mod iso;
mod moduli;

pub use canonical::{canonical_stack, cox_presentation, CanonicalStack};
pub use fantastack::{fantastack, Fantastack};
pub use gms::{gms_check, gms_construct, unstable_cones, GmsCondition, GmsResult};
pub use iso::{is_isomorphism, IsoCondition, IsoVerdict};
pub use moduli::{gerbe_decomposition, moduli_description, GerbeData, ModuliDescription, Root};
