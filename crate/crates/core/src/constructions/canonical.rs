use crate::polyhedral::{Cone, Fan};
use crate::stacky::{StackyFan, StackyMorphism};
use crate::zlinalg::{saturate, snf, IntMatrix, ZVec};

use crate::fgab::FgAbHom;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalStack {
    pub stacky_fan: StackyFan,
    /// `(Φ, id_N)` from the canonical stacky fan to the input.
    pub morphism: StackyMorphism,
    /// The rays of `Σ` in the order of the first coordinates of the new
    /// lattice (lexicographic).
    pub rays: Vec<ZVec>,
}

/// The canonical stack over `X_{Σ,β}`.
///
/// With `M` the saturated span of `|Σ|` and `M'` a complement, the new
/// lattice is `Z^{Σ(1)} ⊕ M'` with `Φ(e_ρ, m) = u_ρ + m`, where `u_ρ` is the
/// primitive generator of `ρ`; each cone `σ` becomes `cone(e_ρ : ρ in σ)`.
pub fn canonical_stack(sf: &StackyFan) -> CanonicalStack {
    let fan = sf.fan();
    let l = fan.ambient_rank();
    let rays = fan.rays();
    let n = rays.len();

    let complement = if rays.is_empty() {
        IntMatrix::identity(l)
    } else {
        let span = saturate(&IntMatrix::from_columns(l, &rays));
        let d = snf(&span);
        d.u_inv.select_columns(&(span.ncols()..l).collect::<Vec<_>>())
    };
    let new_rank = n + complement.ncols();
    let phi = IntMatrix::from_columns(l, &rays).hstack(&complement);

    let cones: Vec<Cone> = fan
        .maximal_cones()
        .iter()
        .map(|c| {
            let idx: Vec<usize> = c.rays().iter().map(|r| rays.iter().position(|x| x == r).expect("ray of the fan")).collect();
            Cone::coordinate(new_rank, &idx)
        })
        .collect();
    let tilde = Fan::new(new_rank, cones);
    let beta = FgAbHom::new(
        crate::fgab::FgAbGroup::free(new_rank),
        sf.target().clone(),
        sf.beta().matrix() * &phi,
    )
    .expect("composite of homomorphisms");
    let stacky_fan = StackyFan::from_hom(tilde, beta).expect("ranks match");
    let morphism = StackyMorphism::new(stacky_fan.clone(), sf.clone(), phi, FgAbHom::identity(sf.target()))
        .expect("shapes match");
    CanonicalStack { stacky_fan, morphism, rays }
}

/// The Cox construction of `X_Σ`: the canonical stack over `(Σ, id_N)`.
pub fn cox_presentation(sigma: &Fan) -> StackyFan {
    canonical_stack(&StackyFan::toric_variety(sigma.clone())).stacky_fan
}
