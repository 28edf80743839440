//! Rational polyhedral cones and fans.
//!
//! Cones are stored by primitive extreme rays; their inequality description
//! is derived on demand by double description and cached.

mod dd;
mod fan;

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fgab::FgAbHom;
use crate::zlinalg::{dot, is_zero_vec, primitive, saturate, snf, IntMatrix, ZVec};

pub use fan::{preimage_fan, validate_fan, Fan, FanDiagnostics, FanProblem, Preimage};

/// `{x : e·x = 0 for e in equations, i·x >= 0 for i in inequalities}`, with
/// the inequalities irredundant (facet normals).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub equations: Vec<ZVec>,
    pub inequalities: Vec<ZVec>,
}

impl HRep {
    fn of_generators(generators: &[ZVec], dim: usize) -> HRep {
        let g = dd::solve_inequalities(generators, dim);
        HRep { equations: g.lineality, inequalities: g.rays }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero()) && self.inequalities.iter().all(|i| !dot(i, v).is_negative())
    }

    pub fn contains_in_relative_interior(&self, v: &[BigInt]) -> bool {
        self.equations.iter().all(|e| dot(e, v).is_zero()) && self.inequalities.iter().all(|i| dot(i, v).is_positive())
    }

    fn as_constraints(&self) -> Vec<ZVec> {
        let mut out = self.inequalities.clone();
        for e in &self.equations {
            out.push(e.clone());
            out.push(e.iter().map(|x| -x).collect());
        }
        out
    }
}

/// Anything with an inequality description: cones and images of cones.
pub trait ConeLike {
    fn ambient_rank(&self) -> usize;
    fn hrep(&self) -> &HRep;

    fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank(), "vector has the wrong dimension");
        self.hrep().contains(v)
    }

    fn contains_in_relative_interior(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.ambient_rank(), "vector has the wrong dimension");
        self.hrep().contains_in_relative_interior(v)
    }
}

/// Exact membership of a rational vector in a cone or its relative interior.
pub fn cone_contains<C: ConeLike + ?Sized>(c: &C, v: &[BigRational], relative_interior: bool) -> bool {
    let denom = v.iter().fold(BigInt::one(), |acc, q| num_integer::lcm(acc, q.denom().clone()));
    let scaled: ZVec = v.iter().map(|q| q.numer() * (&denom / q.denom())).collect();
    if relative_interior {
        c.contains_in_relative_interior(&scaled)
    } else {
        c.contains(&scaled)
    }
}

/// A strongly convex rational polyhedral cone.
pub struct Cone {
    ambient_rank: usize,
    rays: Vec<ZVec>,
    hrep: OnceLock<HRep>,
}

impl Cone {
    /// The cone generated by `generators`, reduced to its primitive extreme
    /// rays in lexicographic order.
    pub fn new(ambient_rank: usize, generators: &[ZVec]) -> Result<Cone> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in a lattice of rank {ambient_rank}",
                g.len()
            )));
        }
        let mut candidates: Vec<ZVec> = generators.iter().filter(|g| !is_zero_vec(g)).map(|g| primitive(g.clone())).collect();
        candidates.sort();
        candidates.dedup();
        if candidates.is_empty() {
            return Ok(Cone::zero(ambient_rank));
        }
        let hrep = HRep::of_generators(&candidates, ambient_rank);
        let mut all = hrep.equations.clone();
        all.extend(hrep.inequalities.iter().cloned());
        if IntMatrix::from_row_vecs(ambient_rank, &all).rank() != ambient_rank {
            return Err(Error::NotStronglyConvex);
        }
        let rays: Vec<ZVec> = candidates
            .into_iter()
            .filter(|g| {
                let mut tight = hrep.equations.clone();
                tight.extend(hrep.inequalities.iter().filter(|i| dot(i, g).is_zero()).cloned());
                IntMatrix::from_row_vecs(ambient_rank, &tight).rank() + 1 == ambient_rank
            })
            .collect();
        let cone = Cone { ambient_rank, rays, hrep: OnceLock::new() };
        let _ = cone.hrep.set(hrep);
        Ok(cone)
    }

    pub fn from_i64(ambient_rank: usize, generators: &[&[i64]]) -> Result<Cone> {
        let g: Vec<ZVec> = generators.iter().map(|v| crate::zlinalg::zvec(v)).collect();
        Cone::new(ambient_rank, &g)
    }

    pub fn zero(ambient_rank: usize) -> Cone {
        Cone { ambient_rank, rays: Vec::new(), hrep: OnceLock::new() }
    }

    /// The cone spanned by `e_i` for `i` in `indices`.
    pub fn coordinate(ambient_rank: usize, indices: &[usize]) -> Cone {
        let mut rays: Vec<ZVec> = indices
            .iter()
            .map(|&i| {
                let mut e = vec![BigInt::zero(); ambient_rank];
                e[i] = BigInt::one();
                e
            })
            .collect();
        rays.sort();
        rays.dedup();
        Cone { ambient_rank, rays, hrep: OnceLock::new() }
    }

    /// Trusted constructor for a subset of the extreme rays of a cone.
    fn from_extreme_rays(ambient_rank: usize, mut rays: Vec<ZVec>) -> Cone {
        rays.sort();
        Cone { ambient_rank, rays, hrep: OnceLock::new() }
    }

    pub fn rays(&self) -> &[ZVec] {
        &self.rays
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn dim(&self) -> usize {
        if self.rays.is_empty() {
            return 0;
        }
        self.ray_matrix().rank()
    }

    /// Rays as the columns of a matrix.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient_rank, &self.rays)
    }

    /// Whether the rays extend to a basis of the lattice.
    pub fn is_smooth(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        let d = snf(&self.ray_matrix());
        d.rank() == self.rays.len() && d.invariant_factors.iter().all(One::is_one)
    }

    /// Whether the rays are linearly independent.
    pub fn is_simplicial(&self) -> bool {
        self.dim() == self.rays.len()
    }

    /// Basis (columns) of the saturated lattice `L ∩ span(σ)`.
    pub fn lattice_span(&self) -> IntMatrix {
        if self.rays.is_empty() {
            return IntMatrix::zeros(self.ambient_rank, 0);
        }
        saturate(&self.ray_matrix())
    }

    /// Facet normals.
    pub fn facet_normals(&self) -> &[ZVec] {
        &self.hrep().inequalities
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
    }

    pub fn is_face_of(&self, other: &Cone) -> bool {
        other.contains_cone(self) && is_face_within(self, other)
    }

    pub fn faces(&self) -> Vec<Cone> {
        let mut ray_sets: Vec<Vec<usize>> = vec![(0..self.rays.len()).collect()];
        for normal in self.facet_normals() {
            let tight: Vec<usize> = (0..self.rays.len()).filter(|&k| dot(normal, &self.rays[k]).is_zero()).collect();
            let mut fresh = Vec::new();
            for s in &ray_sets {
                let meet: Vec<usize> = s.iter().copied().filter(|k| tight.contains(k)).collect();
                if !ray_sets.contains(&meet) && !fresh.contains(&meet) {
                    fresh.push(meet);
                }
            }
            ray_sets.extend(fresh);
        }
        let mut faces: Vec<Cone> = ray_sets
            .into_iter()
            .map(|s| Cone::from_extreme_rays(self.ambient_rank, s.into_iter().map(|k| self.rays[k].clone()).collect()))
            .collect();
        faces.sort_by(face_order);
        faces
    }

    pub fn intersection(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient_rank, other.ambient_rank);
        let mut constraints = self.hrep().as_constraints();
        constraints.extend(other.hrep().as_constraints());
        let g = dd::solve_inequalities(&constraints, self.ambient_rank);
        debug_assert!(g.lineality.is_empty(), "intersection of pointed cones is pointed");
        Cone::from_extreme_rays(self.ambient_rank, g.rays)
    }

    pub fn product(&self, other: &Cone) -> Cone {
        let n = self.ambient_rank + other.ambient_rank;
        let mut rays: Vec<ZVec> = self.rays.iter().map(|r| [r.clone(), vec![BigInt::zero(); other.ambient_rank]].concat()).collect();
        rays.extend(other.rays.iter().map(|r| [vec![BigInt::zero(); self.ambient_rank], r.clone()].concat()));
        Cone::from_extreme_rays(n, rays)
    }

    /// Images of the rays under `m`.
    pub fn image(&self, m: &IntMatrix) -> ImageCone {
        image_cone(m, self)
    }
}

/// Faces are ordered by dimension, then by their ray lists.
fn face_order(a: &Cone, b: &Cone) -> Ordering {
    a.rays.len().cmp(&b.rays.len()).then_with(|| a.rays.cmp(&b.rays))
}

/// For `tau ⊆ sigma`: whether `tau` is a face of `sigma`. The smallest face
/// containing `tau` is cut out by the facets of `sigma` vanishing on `tau`.
fn is_face_within(tau: &Cone, sigma: &Cone) -> bool {
    let tight: Vec<&ZVec> =
        sigma.facet_normals().iter().filter(|n| tau.rays.iter().all(|r| dot(n, r).is_zero())).collect();
    let smallest: Vec<ZVec> =
        sigma.rays.iter().filter(|r| tight.iter().all(|n| dot(n, r).is_zero())).cloned().collect();
    smallest == tau.rays
}

impl ConeLike for Cone {
    fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| HRep::of_generators(&self.rays, self.ambient_rank))
    }
}

impl Clone for Cone {
    fn clone(&self) -> Self {
        Cone { ambient_rank: self.ambient_rank, rays: self.rays.clone(), hrep: self.hrep.clone() }
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.rays == other.rays
    }
}

impl Eq for Cone {}

impl PartialOrd for Cone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.ambient_rank, &self.rays).cmp(&(other.ambient_rank, &other.rays))
    }
}

impl Hash for Cone {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient_rank.hash(state);
        self.rays.hash(state);
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cone({self})")
    }
}

impl fmt::Display for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rays.is_empty() {
            return write!(f, "0");
        }
        write!(f, "cone{{{}}}", format_vectors(&self.rays))
    }
}

pub(crate) fn format_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

pub(crate) fn format_vectors(vs: &[ZVec]) -> String {
    vs.iter().map(|v| format_vector(v)).collect::<Vec<_>>().join(",")
}

/// The image of a cone under a lattice map; may contain lines.
pub struct ImageCone {
    ambient_rank: usize,
    generators: Vec<ZVec>,
    hrep: OnceLock<HRep>,
}

impl ImageCone {
    pub fn new(ambient_rank: usize, generators: Vec<ZVec>) -> ImageCone {
        assert!(generators.iter().all(|g| g.len() == ambient_rank), "generator has the wrong dimension");
        ImageCone { ambient_rank, generators, hrep: OnceLock::new() }
    }

    pub fn generators(&self) -> &[ZVec] {
        &self.generators
    }

    /// Whether the cone is a linear subspace.
    pub fn is_linear_subspace(&self) -> bool {
        self.hrep().inequalities.is_empty()
    }

    pub fn is_strongly_convex(&self) -> bool {
        self.to_cone().is_ok()
    }

    pub fn to_cone(&self) -> Result<Cone> {
        Cone::new(self.ambient_rank, &self.generators)
    }
}

impl ConeLike for ImageCone {
    fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    fn hrep(&self) -> &HRep {
        self.hrep.get_or_init(|| HRep::of_generators(&self.generators, self.ambient_rank))
    }
}

impl fmt::Debug for ImageCone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ImageCone{{{}}}", format_vectors(&self.generators))
    }
}

pub fn canonicalize_cone(ambient_rank: usize, generators: &[ZVec]) -> Result<Cone> {
    Cone::new(ambient_rank, generators)
}

pub fn faces(c: &Cone) -> Vec<Cone> {
    c.faces()
}

pub fn is_smooth_cone(c: &Cone) -> bool {
    c.is_smooth()
}

pub fn image_cone(m: &IntMatrix, c: &Cone) -> ImageCone {
    assert_eq!(m.ncols(), c.ambient_rank, "map does not start at the cone's lattice");
    ImageCone::new(m.nrows(), c.rays.iter().map(|r| m.mul_vec(r)).collect())
}

/// Whether `m` restricts to an isomorphism of monoids `σ ∩ L -> σ' ∩ L'`.
///
/// Since `σ ∩ L` generates `L ∩ span σ`, this holds iff `m(σ) = σ'` and `m`
/// carries `L ∩ span σ` isomorphically onto `L' ∩ span σ'`.
pub fn monoid_iso_on_cone(m: &IntMatrix, sigma: &Cone, sigma_prime: &Cone) -> Result<bool> {
    if m.ncols() != sigma.ambient_rank || m.nrows() != sigma_prime.ambient_rank {
        return Err(Error::DimensionMismatch(format!(
            "map is {}x{} between lattices of rank {} and {}",
            m.nrows(),
            m.ncols(),
            sigma.ambient_rank,
            sigma_prime.ambient_rank
        )));
    }
    let images: Vec<ZVec> = sigma.rays.iter().map(|r| m.mul_vec(r)).collect();
    if let Some(bad) = images.iter().find(|v| !sigma_prime.contains(v)) {
        return Err(Error::PreconditionViolated(format!(
            "image {} of {sigma} is not in {sigma_prime}",
            format_vector(bad)
        )));
    }
    if Cone::new(sigma_prime.ambient_rank, &images)? != *sigma_prime {
        return Ok(false);
    }
    let span = sigma.lattice_span();
    if span.ncols() != sigma_prime.dim() {
        return Ok(false);
    }
    if span.ncols() == 0 {
        return Ok(true);
    }
    let d = snf(&(m * &span));
    Ok(d.rank() == span.ncols() && d.invariant_factors.iter().all(One::is_one))
}

/// Whether the image of `tau` in `N / N_tor` is a linear subspace, i.e. every
/// functional nonnegative on `β(τ)` vanishes on it.
pub fn is_unstable(tau: &Cone, beta: &FgAbHom) -> bool {
    assert_eq!(beta.source().dim(), tau.ambient_rank, "beta does not start at the cone's lattice");
    let image = image_cone(&beta.free_part(), tau);
    image.generators().iter().all(|g| {
        let neg: ZVec = g.iter().map(|x| -x).collect();
        image.contains(&neg)
    })
}
