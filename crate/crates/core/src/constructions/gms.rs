use std::fmt;

use crate::error::{Error, Result};
use crate::fgab::FgAbHom;
use crate::polyhedral::{is_unstable, preimage_fan, Cone, Fan};
use crate::stacky::{maps_into, quotient_by_saturation, StackyFan, StackyMorphism};

/// Conditions `(1)`–`(4)` of the criterion for a morphism, and `(i)`, `(ii)`
/// of its specialisation to a single stacky fan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GmsCondition {
    /// Every `Φ^{-1}(σ')` is a single cone mapping onto `σ'`.
    SingleConePreimages,
    /// `τ = Φ^{-1}(0)` is unstable.
    TauUnstable,
    /// `φ` is surjective.
    GroupSurjective,
    /// `ker φ / β(τ^gp)` is finite.
    FiniteKernelQuotient,
    /// There is a unique maximal unstable cone.
    UniqueMaximalUnstable,
    /// `Φ` maps `Σ` into the candidate fan `Σ'`.
    InducesMapOfFans,
}

impl GmsCondition {
    pub fn label(self) -> &'static str {
        match self {
            GmsCondition::SingleConePreimages => "1",
            GmsCondition::TauUnstable => "2",
            GmsCondition::GroupSurjective => "3",
            GmsCondition::FiniteKernelQuotient => "4",
            GmsCondition::UniqueMaximalUnstable => "i",
            GmsCondition::InducesMapOfFans => "ii",
        }
    }
}

impl fmt::Display for GmsCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GmsResult {
    pub verdict: bool,
    pub failing_condition: Option<GmsCondition>,
    pub tau: Option<Cone>,
    /// For constructions: the fan `Σ'` on `N'` of the good moduli space.
    pub gms_fan: Option<Fan>,
    /// For constructions: the morphism `(Φ, φ): (Σ, β) -> (Σ', id_{N'})`.
    pub morphism: Option<StackyMorphism>,
    /// A target cone witnessing a failure of (1), or a source cone
    /// witnessing (ii).
    pub witness: Option<Cone>,
}

impl GmsResult {
    fn fail(condition: GmsCondition, tau: Option<Cone>, witness: Option<Cone>) -> GmsResult {
        GmsResult { verdict: false, failing_condition: Some(condition), tau, gms_fan: None, morphism: None, witness }
    }
}

fn require_finite_cokernel(sf: &StackyFan) -> Result<()> {
    if sf.cokernel_is_finite() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated("beta must have finite cokernel".into()))
    }
}

/// Decides whether `m` induces a good moduli space morphism.
pub fn gms_check(m: &StackyMorphism) -> Result<GmsResult> {
    require_finite_cokernel(m.source())?;
    let phi = m.lattice_map();
    let source = m.source();
    let mut tau = None;
    for c in m.target().fan().cones() {
        let single = preimage_fan(phi, source.fan(), c).single_cone;
        let Some(s) = single.filter(|s| s.image(phi).to_cone().as_ref() == Ok(c)) else {
            return Ok(GmsResult::fail(GmsCondition::SingleConePreimages, None, Some(c.clone())));
        };
        if c.is_zero() {
            tau = Some(s);
        }
    }
    let tau = tau.expect("the zero cone belongs to every fan");
    if !is_unstable(&tau, source.beta()) {
        return Ok(GmsResult::fail(GmsCondition::TauUnstable, Some(tau), None));
    }
    let analysis = m.group_map().analyze();
    if !analysis.surjective {
        return Ok(GmsResult::fail(GmsCondition::GroupSurjective, Some(tau), None));
    }
    let tau_rank = (&source.beta().free_part() * &tau.lattice_span()).rank();
    if analysis.kernel.free_rank() != tau_rank {
        return Ok(GmsResult::fail(GmsCondition::FiniteKernelQuotient, Some(tau), None));
    }
    Ok(GmsResult { verdict: true, failing_condition: None, tau: Some(tau), gms_fan: None, morphism: None, witness: None })
}

/// All unstable cones of the fan.
pub fn unstable_cones(sf: &StackyFan) -> Vec<Cone> {
    sf.fan().cones().iter().filter(|c| is_unstable(c, sf.beta())).cloned().collect()
}

/// Decides whether `X_{Σ,β}` has a toric variety as good moduli space and
/// constructs its fan.
///
/// Candidates for `Σ'` are the images `Φ(σ)` of cones of `Σ`: every cone of
/// `Σ'` maps onto from its single-cone preimage, so nothing is missed. The
/// fan of a good moduli space, if there is one, is generated by the maximal
/// candidates, and the resulting morphism is confirmed with [`gms_check`].
pub fn gms_construct(sf: &StackyFan) -> Result<GmsResult> {
    require_finite_cokernel(sf)?;
    let unstable = unstable_cones(sf);
    let maximal: Vec<&Cone> =
        unstable.iter().filter(|c| !unstable.iter().any(|d| d != *c && d.contains_cone(c))).collect();
    let [tau] = maximal.as_slice() else {
        return Ok(GmsResult::fail(GmsCondition::UniqueMaximalUnstable, None, None));
    };
    let tau = (*tau).clone();

    let quotient = quotient_by_saturation(sf.beta(), &tau);
    let n_prime = quotient.target().clone();
    let phi = quotient.matrix() * sf.beta().matrix();

    let mut kept: Vec<Cone> = Vec::new();
    for c in sf.fan().cones() {
        let Ok(image) = c.image(&phi).to_cone() else { continue };
        if kept.contains(&image) {
            continue;
        }
        let pre = preimage_fan(&phi, sf.fan(), &image);
        if let Some(s) = pre.single_cone {
            if s.image(&phi).to_cone().as_ref() == Ok(&image) {
                kept.push(image);
            }
        }
    }
    // Read literally, the candidates can contain proper subcones of one
    // another; a good moduli space fan consists of the maximal ones.
    let maximal: Vec<Cone> =
        kept.iter().filter(|c| !kept.iter().any(|d| d != *c && d.contains_cone(c))).cloned().collect();
    let sigma_prime = Fan::generated_by(n_prime.dim(), maximal);
    if !sigma_prime.is_valid() {
        return Ok(GmsResult::fail(GmsCondition::InducesMapOfFans, Some(tau), None));
    }
    if let Some(bad) = maps_into(&phi, sf.fan(), &sigma_prime) {
        let witness = sf.fan().maximal_cones()[bad].clone();
        return Ok(GmsResult::fail(GmsCondition::InducesMapOfFans, Some(tau), Some(witness)));
    }
    let target = StackyFan::toric_variety(sigma_prime.clone());
    let group_map = FgAbHom::new(sf.target().clone(), n_prime, quotient.matrix().clone())?;
    let morphism = StackyMorphism::new(sf.clone(), target, phi, group_map)?;
    if !gms_check(&morphism)?.verdict {
        return Ok(GmsResult::fail(GmsCondition::InducesMapOfFans, Some(tau), None));
    }
    Ok(GmsResult {
        verdict: true,
        failing_condition: None,
        tau: Some(tau),
        gms_fan: Some(sigma_prime),
        morphism: Some(morphism),
        witness: None,
    })
}
