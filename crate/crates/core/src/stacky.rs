//! Stacky fans `(Σ, β: L -> N)`, their morphisms, the group `G_β` and the
//! quotient presentation `[X_Σ / G_β]`.
//!
//! Indices of coordinates and cones are 0-based in the API and 1-based in
//! human-readable output.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fgab::{mapping_cone_dual, with_torus_factor, DiagGroupPresentation, FgAbGroup, FgAbHom, MappingConeDual};
use crate::polyhedral::{format_vectors, Cone, ConeLike, Fan, FanDiagnostics};
use crate::zlinalg::{cokernel_presentation, saturate, solve_integer, IntMatrix, ZVec};

/// A fan on `L = Z^ℓ` with a homomorphism `β: L -> N` to a finitely
/// generated abelian group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFan {
    fan: Fan,
    beta: FgAbHom,
}

impl StackyFan {
    pub fn new(fan: Fan, target: FgAbGroup, beta_images: &[ZVec]) -> Result<StackyFan> {
        let source = FgAbGroup::free(fan.ambient_rank());
        let beta = FgAbHom::from_images(source, target, beta_images)?;
        Ok(StackyFan { fan, beta })
    }

    pub fn from_hom(fan: Fan, beta: FgAbHom) -> Result<StackyFan> {
        if beta.source() != &FgAbGroup::free(fan.ambient_rank()) {
            return Err(Error::DimensionMismatch(format!(
                "beta starts at {} but the fan lives in Z^{}",
                beta.source(),
                fan.ambient_rank()
            )));
        }
        Ok(StackyFan { fan, beta })
    }

    /// `(Σ, id_N)`, whose stack is the toric variety of `Σ`.
    pub fn toric_variety(fan: Fan) -> StackyFan {
        let n = FgAbGroup::free(fan.ambient_rank());
        StackyFan { beta: FgAbHom::identity(&n), fan }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn beta(&self) -> &FgAbHom {
        &self.beta
    }

    pub fn target(&self) -> &FgAbGroup {
        self.beta.target()
    }

    pub fn lattice_rank(&self) -> usize {
        self.fan.ambient_rank()
    }

    pub fn beta_images(&self) -> Vec<ZVec> {
        self.beta.images()
    }

    pub fn cokernel_is_finite(&self) -> bool {
        self.beta.free_part().rank() == self.target().free_rank()
    }

    /// Strict means `N` is a lattice and `β` has finite cokernel.
    pub fn is_strict(&self) -> bool {
        self.target().is_free() && self.cokernel_is_finite()
    }

    pub fn validate(&self) -> StackyFanDiagnostics {
        validate_stacky_fan(self)
    }

    pub fn product(&self, other: &StackyFan) -> StackyFan {
        let sum = self.target().direct_sum(other.target());
        let lift = self.beta.matrix().direct_sum(other.beta.matrix());
        let m = &sum.projection * &lift;
        let beta = FgAbHom::new(FgAbGroup::free(m.ncols()), sum.group, m).expect("free source");
        StackyFan { fan: self.fan.product(&other.fan), beta }
    }

    /// Same `β`, different fan.
    pub fn with_fan(&self, fan: Fan) -> Result<StackyFan> {
        StackyFan::from_hom(fan, self.beta.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyFanDiagnostics {
    pub fan: FanDiagnostics,
    pub strict: bool,
    pub finite_cokernel: bool,
}

impl StackyFanDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.fan.is_valid()
    }
}

/// `β` is well defined by construction; this checks the fan and reports
/// strictness.
pub fn validate_stacky_fan(sf: &StackyFan) -> StackyFanDiagnostics {
    StackyFanDiagnostics { fan: sf.fan.validate(), strict: sf.is_strict(), finite_cokernel: sf.cokernel_is_finite() }
}

/// A commuting square `β' ∘ Φ = φ ∘ β` with `Φ` a map of fans.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackyMorphism {
    source: StackyFan,
    target: StackyFan,
    lattice_map: IntMatrix,
    group_map: FgAbHom,
}

impl StackyMorphism {
    /// Checks shapes only; see [`validate_morphism`] for the square and the
    /// fan condition.
    pub fn new(source: StackyFan, target: StackyFan, lattice_map: IntMatrix, group_map: FgAbHom) -> Result<Self> {
        if lattice_map.ncols() != source.lattice_rank() || lattice_map.nrows() != target.lattice_rank() {
            return Err(Error::DimensionMismatch(format!(
                "Phi is {}x{} but must map Z^{} to Z^{}",
                lattice_map.nrows(),
                lattice_map.ncols(),
                source.lattice_rank(),
                target.lattice_rank()
            )));
        }
        if group_map.source() != source.target() || group_map.target() != target.target() {
            return Err(Error::DimensionMismatch(format!(
                "phi maps {} to {} but must map {} to {}",
                group_map.source(),
                group_map.target(),
                source.target(),
                target.target()
            )));
        }
        Ok(StackyMorphism { source, target, lattice_map, group_map })
    }

    pub fn from_images(source: StackyFan, target: StackyFan, phi_lattice: &[ZVec], phi_group: &[ZVec]) -> Result<Self> {
        if phi_lattice.len() != source.lattice_rank() || phi_lattice.iter().any(|v| v.len() != target.lattice_rank()) {
            return Err(Error::DimensionMismatch(format!(
                "Phi needs {} images in Z^{}",
                source.lattice_rank(),
                target.lattice_rank()
            )));
        }
        let lattice_map = IntMatrix::from_columns(target.lattice_rank(), phi_lattice);
        let group_map = FgAbHom::from_images(source.target().clone(), target.target().clone(), phi_group)?;
        Self::new(source, target, lattice_map, group_map)
    }

    pub fn identity(sf: &StackyFan) -> StackyMorphism {
        StackyMorphism {
            source: sf.clone(),
            target: sf.clone(),
            lattice_map: IntMatrix::identity(sf.lattice_rank()),
            group_map: FgAbHom::identity(sf.target()),
        }
    }

    pub fn source(&self) -> &StackyFan {
        &self.source
    }

    pub fn target(&self) -> &StackyFan {
        &self.target
    }

    /// `Φ: L -> L'`.
    pub fn lattice_map(&self) -> &IntMatrix {
        &self.lattice_map
    }

    /// `φ: N -> N'`.
    pub fn group_map(&self) -> &FgAbHom {
        &self.group_map
    }

    pub fn validate(&self) -> MorphismDiagnostics {
        validate_morphism(self)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &StackyMorphism) -> Result<StackyMorphism> {
        if self.target != next.source {
            return Err(Error::DimensionMismatch("morphisms are not composable".into()));
        }
        Ok(StackyMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            lattice_map: &next.lattice_map * &self.lattice_map,
            group_map: self.group_map.then(&next.group_map)?,
        })
    }

    pub fn product(&self, other: &StackyMorphism) -> StackyMorphism {
        let src_sum = self.source.target().direct_sum(other.source.target());
        let tgt_sum = self.target.target().direct_sum(other.target.target());
        let lift = self.group_map.matrix().direct_sum(other.group_map.matrix());
        let group_map = FgAbHom::between_cokernels(&src_sum, &tgt_sum, &lift).expect("direct sum of homomorphisms");
        StackyMorphism {
            source: self.source.product(&other.source),
            target: self.target.product(&other.target),
            lattice_map: self.lattice_map.direct_sum(&other.lattice_map),
            group_map,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDiagnostics {
    /// Generators `e_i` of `L` with `β'(Φ(e_i)) != φ(β(e_i))`.
    pub non_commuting: Vec<usize>,
    /// Maximal cones of the source whose image lies in no target cone.
    pub uncontained_cones: Vec<usize>,
}

impl MorphismDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.non_commuting.is_empty() && self.uncontained_cones.is_empty()
    }
}

pub fn validate_morphism(m: &StackyMorphism) -> MorphismDiagnostics {
    let l = m.source.lattice_rank();
    let non_commuting = (0..l)
        .filter(|&i| {
            let e: ZVec = (0..l).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
            let left = m.target.beta.apply(&m.lattice_map.mul_vec(&e));
            let right = m.group_map.apply(&m.source.beta.apply(&e));
            left != right
        })
        .collect();
    let uncontained_cones = m
        .source
        .fan
        .maximal_cones()
        .iter()
        .enumerate()
        .filter(|(_, c)| {
            let images: Vec<ZVec> = c.rays().iter().map(|r| m.lattice_map.mul_vec(r)).collect();
            !m.target.fan.maximal_cones().iter().any(|t| images.iter().all(|v| t.contains(v)))
        })
        .map(|(i, _)| i)
        .collect();
    MorphismDiagnostics { non_commuting, uncontained_cones }
}

/// `G_β = G_m^{g0_rank} x G^1`, with the characters of `G^1` on the torus of
/// `L`.
pub fn gbeta(sf: &StackyFan) -> MappingConeDual {
    mapping_cone_dual(&sf.beta).expect("the source of beta is a lattice")
}

/// `[X / G]` with `X` an open subset of affine space (possibly intersected
/// with a coordinate subspace).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientPresentation {
    pub ambient_dim: usize,
    /// Index sets of the monomials generating the irrelevant ideal, one per
    /// maximal cone.
    pub irrelevant_monomials: Vec<Vec<usize>>,
    /// Minimal index sets `S`; the open set is `A^n` minus the union of the
    /// `V(x_i : i in S)`.
    pub removed_locus: Vec<Vec<usize>>,
    /// Rank of the torus factor of `G_β` acting trivially.
    pub trivial_torus_rank: usize,
    pub group: DiagGroupPresentation,
    /// Coordinates set to zero to cut out a closed substack.
    pub fixed_coordinates: Vec<usize>,
}

impl QuotientPresentation {
    pub fn with_fixed_coordinates(mut self, fixed: Vec<usize>) -> Self {
        self.fixed_coordinates = fixed;
        self
    }

    /// The group in multiplicative notation, including the trivially acting
    /// torus.
    pub fn group_name(&self) -> String {
        with_torus_factor(self.trivial_torus_rank, &self.group.group_name())
    }

    pub fn space_name(&self) -> String {
        let affine = format!("A^{}", self.ambient_dim);
        if self.removed_locus.is_empty() {
            return affine;
        }
        let loci: Vec<String> = self.removed_locus.iter().map(|s| format!("V({})", coordinate_list(s))).collect();
        format!("({affine} \\ {})", loci.join(" u "))
    }
}

pub(crate) fn coordinate_list(s: &[usize]) -> String {
    s.iter().map(|i| format!("x{}", i + 1)).collect::<Vec<_>>().join(",")
}

pub(crate) fn weight_rows(w: &IntMatrix) -> String {
    let rows: Vec<String> = (0..w.nrows())
        .map(|i| {
            let r: Vec<String> = w.row(i).iter().map(ToString::to_string).collect();
            format!("({})", r.join(","))
        })
        .collect();
    if rows.is_empty() {
        "none".to_string()
    } else {
        rows.join(" ")
    }
}

impl fmt::Display for QuotientPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} / {}], weights {}", self.space_name(), self.group_name(), weight_rows(&self.group.weights))?;
        if !self.fixed_coordinates.is_empty() {
            write!(f, ", substack V({})", coordinate_list(&self.fixed_coordinates))?;
        }
        Ok(())
    }
}

/// Coordinate index of each ray of a subfan of the fan of affine space.
fn coordinate_sets(fan: &Fan) -> Result<Vec<Vec<usize>>> {
    if !fan.is_subfan_of_affine_space() {
        return Err(Error::NotSubfanOfAffineSpace);
    }
    Ok(fan
        .maximal_cones()
        .iter()
        .map(|c| {
            let mut idx: Vec<usize> =
                c.rays().iter().map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero ray")).collect();
            idx.sort_unstable();
            idx
        })
        .collect())
}

/// Minimal subsets of `{0..n}` not contained in any of `faces`.
pub(crate) fn minimal_non_faces(n: usize, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let is_face = |s: &[usize]| faces.iter().any(|f| s.iter().all(|i| f.contains(i)));
    let mut result = Vec::new();
    let mut level: Vec<Vec<usize>> = vec![Vec::new()];
    while !level.is_empty() {
        let known: HashSet<Vec<usize>> = level.iter().cloned().collect();
        let mut next = Vec::new();
        for s in &level {
            let start = s.last().map_or(0, |&x| x + 1);
            for i in start..n {
                let mut t = s.clone();
                t.push(i);
                // every maximal proper subset must be a face
                let all_subsets_faces = (0..t.len()).all(|k| {
                    let mut u = t.clone();
                    u.remove(k);
                    known.contains(&u)
                });
                if !all_subsets_faces {
                    continue;
                }
                if is_face(&t) {
                    next.push(t);
                } else {
                    result.push(t);
                }
            }
        }
        level = next;
    }
    result.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    result
}

/// `[X_Σ / G_β]` for `Σ` a subfan of the fan of `A^ℓ`.
pub fn present_quotient(sf: &StackyFan) -> Result<QuotientPresentation> {
    let n = sf.lattice_rank();
    let sets = coordinate_sets(&sf.fan)?;
    let mut irrelevant_monomials: Vec<Vec<usize>> =
        sets.iter().map(|s| (0..n).filter(|i| !s.contains(i)).collect()).collect();
    irrelevant_monomials.sort();
    let g = gbeta(sf);
    Ok(QuotientPresentation {
        ambient_dim: n,
        irrelevant_monomials,
        removed_locus: minimal_non_faces(n, &sets),
        trivial_torus_rank: g.g0_rank,
        group: g.g1,
        fixed_coordinates: Vec::new(),
    })
}

/// A strict stacky fan whose closed substack `V(x_i : i in substack)` is the
/// stack of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictReduction {
    pub strict: StackyFan,
    pub substack_coordinates: Vec<usize>,
}

/// Replaces `β: L -> N` by `β' = (B, Q): L ⊕ Z^s -> Z^{r+s}` using the
/// canonical presentation `Q = diag(d_j)` of `N` and the coordinatewise lift
/// `B`, adjoining `cone(e_{ℓ+1}, ..., e_{ℓ+s})` to every cone.
///
/// If `cok β` is infinite the result has a free target but is still not
/// strict; split off the torus factor first.
pub fn reduce_nonstrict(sf: &StackyFan) -> StrictReduction {
    let target = sf.target();
    if target.is_free() {
        return StrictReduction { strict: sf.clone(), substack_coordinates: Vec::new() };
    }
    let l = sf.lattice_rank();
    let s = target.torsion().len();
    let combined = sf.beta.matrix().hstack(&target.relation_matrix());
    let new_cones: Vec<Cone> = sf
        .fan
        .maximal_cones()
        .iter()
        .map(|c| {
            let mut rays: Vec<ZVec> = c.rays().iter().map(|r| [r.clone(), vec![BigInt::zero(); s]].concat()).collect();
            rays.extend((0..s).map(|j| {
                let mut e = vec![BigInt::zero(); l + s];
                e[l + j] = BigInt::one();
                e
            }));
            Cone::new(l + s, &rays).expect("product of a cone with an orthant")
        })
        .collect();
    let fan = Fan::new(l + s, new_cones);
    let beta = FgAbHom::new(FgAbGroup::free(l + s), FgAbGroup::free(target.dim()), combined).expect("free groups");
    StrictReduction { strict: StackyFan { fan, beta }, substack_coordinates: (l..l + s).collect() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSplitting {
    /// The same fan with `β` corestricted to `N_1 = sat_N(β(L))`.
    pub reduced: StackyFan,
    /// Rank of the complement `N_0`, so the stack is the product of the
    /// reduced one with `B G_m^{bg_m_rank}`.
    pub bg_m_rank: usize,
    /// Columns: the free generators of `N_1` as elements of `N`.
    pub inclusion: IntMatrix,
}

/// Splits `N = N_1 ⊕ N_0` with `N_1 = sat_N(β(L))`.
pub fn split_torus_factor(sf: &StackyFan) -> TorusSplitting {
    let target = sf.target();
    let r = target.free_rank();
    let free = sf.beta.free_part();
    let basis = if free.rank() == 0 { IntMatrix::zeros(r, 0) } else { saturate(&free) };
    let k = basis.ncols();
    let images: Vec<ZVec> = sf
        .beta
        .images()
        .iter()
        .map(|img| {
            let c = solve_integer(&basis, &img[..r]).unwrap_or_else(|| vec![BigInt::zero(); k]);
            [c, img[r..].to_vec()].concat()
        })
        .collect();
    let n1 = FgAbGroup::new(k, target.torsion().to_vec()).expect("torsion of N is in invariant-factor form");
    let reduced = StackyFan::new(sf.fan.clone(), n1, &images).expect("images lie in the saturation");
    TorusSplitting { reduced, bg_m_rank: r - k, inclusion: basis }
}

/// `N / sat_N(β(τ^gp))` as a lattice, with the quotient map `N -> N'`.
pub(crate) fn quotient_by_saturation(beta: &FgAbHom, tau: &Cone) -> FgAbHom {
    let target = beta.target();
    let r = target.free_rank();
    let span = tau.lattice_span();
    let images = &beta.free_part() * &span;
    let gens = if images.ncols() == 0 || images.rank() == 0 { IntMatrix::zeros(r, 0) } else { saturate(&images) };
    let cok = cokernel_presentation(&gens);
    debug_assert!(cok.group.is_free());
    let mut m = IntMatrix::zeros(cok.group.dim(), target.dim());
    for i in 0..cok.group.dim() {
        for j in 0..r {
            m[(i, j)] = cok.projection[(i, j)].clone();
        }
    }
    FgAbHom::new(target.clone(), cok.group, m).expect("torsion maps to zero in a lattice")
}

impl fmt::Display for StackyFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fan {} on Z^{}, beta: Z^{} -> {}, images {}", self.fan, self.lattice_rank(), self.lattice_rank(), self.target(), format_vectors(&self.beta_images()))
    }
}

/// Whether every maximal cone's image under `m` lies in some cone of `fan`.
pub(crate) fn maps_into(m: &IntMatrix, source: &Fan, fan: &Fan) -> Option<usize> {
    source.maximal_cones().iter().position(|c| {
        let images: Vec<ZVec> = c.rays().iter().map(|r| m.mul_vec(r)).collect();
        !fan.maximal_cones().iter().any(|t| images.iter().all(|v| t.contains(v)))
    })
}
