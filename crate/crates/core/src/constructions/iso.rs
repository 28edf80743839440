use std::fmt;

use crate::error::{Error, Result};
use crate::polyhedral::{monoid_iso_on_cone, preimage_fan, Cone};
use crate::stacky::StackyMorphism;

/// The three conditions for a morphism of stacky fans to induce an
/// isomorphism of stacks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IsoCondition {
    /// `φ` is an isomorphism.
    GroupIsomorphism,
    /// Every preimage `Φ^{-1}(σ')` is a single cone.
    SingleConePreimages,
    /// `Φ` induces monoid isomorphisms `Φ^{-1}(σ') ∩ L -> σ' ∩ L'`.
    MonoidIsomorphisms,
}

impl IsoCondition {
    pub fn number(self) -> u8 {
        match self {
            IsoCondition::GroupIsomorphism => 1,
            IsoCondition::SingleConePreimages => 2,
            IsoCondition::MonoidIsomorphisms => 3,
        }
    }
}

impl fmt::Display for IsoCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.number())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoVerdict {
    pub is_isomorphism: bool,
    pub failing_condition: Option<IsoCondition>,
    /// The target cone witnessing a failure of (2) or (3).
    pub witness: Option<Cone>,
}

impl IsoVerdict {
    fn fail(condition: IsoCondition, witness: Option<Cone>) -> IsoVerdict {
        IsoVerdict { is_isomorphism: false, failing_condition: Some(condition), witness }
    }
}

/// Decides whether `m` induces an isomorphism of stacks. Both `β` and `β'`
/// must have finite cokernel.
pub fn is_isomorphism(m: &StackyMorphism) -> Result<IsoVerdict> {
    if !m.source().cokernel_is_finite() || !m.target().cokernel_is_finite() {
        return Err(Error::PreconditionViolated("both stacky fans need beta with finite cokernel".into()));
    }
    if !m.group_map().is_isomorphism() {
        return Ok(IsoVerdict::fail(IsoCondition::GroupIsomorphism, None));
    }
    let phi = m.lattice_map();
    let target_cones = m.target().fan().cones();
    let mut preimages = Vec::with_capacity(target_cones.len());
    for c in target_cones {
        match preimage_fan(phi, m.source().fan(), c).single_cone {
            Some(s) => preimages.push(s),
            None => return Ok(IsoVerdict::fail(IsoCondition::SingleConePreimages, Some(c.clone()))),
        }
    }
    for (c, s) in target_cones.iter().zip(&preimages) {
        if !monoid_iso_on_cone(phi, s, c)? {
            return Ok(IsoVerdict::fail(IsoCondition::MonoidIsomorphisms, Some(c.clone())));
        }
    }
    Ok(IsoVerdict { is_isomorphism: true, failing_condition: None, witness: None })
}
