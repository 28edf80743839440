use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;

use super::{is_face_within, Cone, ConeLike};
use crate::error::Result;
use crate::zlinalg::{IntMatrix, ZVec};

/// A fan, stored by its maximal cones in sorted order.
///
/// [`Fan::new`] keeps the given cones as they are so that broken input can be
/// diagnosed by [`validate_fan`]; [`Fan::generated_by`] drops cones that are
/// faces of others.
pub struct Fan {
    ambient_rank: usize,
    maximal_cones: Vec<Cone>,
    all_cones: OnceLock<Vec<Cone>>,
}

impl Fan {
    pub fn new(ambient_rank: usize, mut cones: Vec<Cone>) -> Fan {
        cones.sort();
        cones.dedup();
        if cones.is_empty() {
            cones.push(Cone::zero(ambient_rank));
        }
        Fan { ambient_rank, maximal_cones: cones, all_cones: OnceLock::new() }
    }

    /// The fan consisting of the given cones and their faces.
    pub fn generated_by(ambient_rank: usize, cones: Vec<Cone>) -> Fan {
        let mut cones = cones;
        cones.sort();
        cones.dedup();
        let keep: Vec<Cone> = cones
            .iter()
            .filter(|c| !cones.iter().any(|d| d != *c && d.contains_cone(c) && is_face_within(c, d)))
            .cloned()
            .collect();
        Fan::new(ambient_rank, keep)
    }

    pub fn from_i64(ambient_rank: usize, cones: &[&[&[i64]]]) -> Result<Fan> {
        let cones = cones.iter().map(|g| Cone::from_i64(ambient_rank, g)).collect::<Result<Vec<_>>>()?;
        Ok(Fan::new(ambient_rank, cones))
    }

    /// The fan with only the zero cone.
    pub fn trivial(ambient_rank: usize) -> Fan {
        Fan::new(ambient_rank, vec![Cone::zero(ambient_rank)])
    }

    /// The fan of faces of the positive orthant, i.e. the fan of affine space.
    pub fn affine_space(rank: usize) -> Fan {
        Fan::new(rank, vec![Cone::coordinate(rank, &(0..rank).collect::<Vec<_>>())])
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.maximal_cones
    }

    /// Every cone of the fan, ordered by dimension and then rays.
    pub fn cones(&self) -> &[Cone] {
        self.all_cones.get_or_init(|| {
            let mut all: Vec<Cone> = self.maximal_cones.iter().flat_map(|c| c.faces()).collect();
            all.sort_by(super::face_order);
            all.dedup();
            all
        })
    }

    /// Primitive generators of the rays, sorted.
    pub fn rays(&self) -> Vec<ZVec> {
        let mut rays: Vec<ZVec> = self.maximal_cones.iter().flat_map(|c| c.rays().iter().cloned()).collect();
        rays.sort();
        rays.dedup();
        rays
    }

    pub fn contains_cone(&self, c: &Cone) -> bool {
        self.cones().contains(c)
    }

    pub fn support_contains(&self, v: &[BigInt]) -> bool {
        self.maximal_cones.iter().any(|c| c.contains(v))
    }

    /// A cone of the fan containing `v` in its relative interior.
    pub fn carrier_of(&self, v: &[BigInt]) -> Option<&Cone> {
        self.cones().iter().find(|c| c.contains_in_relative_interior(v))
    }

    pub fn is_smooth(&self) -> bool {
        self.maximal_cones.iter().all(Cone::is_smooth)
    }

    /// Whether every cone is spanned by standard basis vectors.
    pub fn is_subfan_of_affine_space(&self) -> bool {
        self.rays().iter().all(|r| {
            r.iter().filter(|x| !num_traits::Zero::is_zero(*x)).count() == 1 && r.iter().all(|x| x >= &BigInt::from(0))
        })
    }

    pub fn product(&self, other: &Fan) -> Fan {
        let cones = self
            .maximal_cones
            .iter()
            .flat_map(|a| other.maximal_cones.iter().map(move |b| a.product(b)))
            .collect();
        Fan::new(self.ambient_rank + other.ambient_rank, cones)
    }

    pub fn validate(&self) -> FanDiagnostics {
        validate_fan(self)
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }
}

impl Clone for Fan {
    fn clone(&self) -> Self {
        Fan { ambient_rank: self.ambient_rank, maximal_cones: self.maximal_cones.clone(), all_cones: self.all_cones.clone() }
    }
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.maximal_cones == other.maximal_cones
    }
}

impl Eq for Fan {}

impl fmt::Debug for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fan(rank {}; {})", self.ambient_rank, self)
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.maximal_cones.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FanProblem {
    /// A cone lives in a lattice of the wrong rank (0-based cone index).
    WrongRank { cone: usize, rank: usize },
    /// Maximal cone `inner` is a face of maximal cone `outer`.
    NotMaximal { inner: usize, outer: usize },
    /// The intersection of two cones is not a face of both.
    BadIntersection { first: usize, second: usize, intersection: Cone },
}

impl fmt::Display for FanProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanProblem::WrongRank { cone, rank } => write!(f, "cone {} lives in a lattice of rank {rank}", cone + 1),
            FanProblem::NotMaximal { inner, outer } => {
                write!(f, "cone {} is a face of cone {} and cannot be maximal", inner + 1, outer + 1)
            }
            FanProblem::BadIntersection { first, second, intersection } => write!(
                f,
                "cones {} and {} meet in {intersection}, which is not a face of both",
                first + 1,
                second + 1
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FanDiagnostics {
    pub problems: Vec<FanProblem>,
}

impl FanDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Checks that no maximal cone is a face of another and that any two cones
/// meet in a common face.
pub fn validate_fan(f: &Fan) -> FanDiagnostics {
    let mut problems = Vec::new();
    let cones = &f.maximal_cones;
    for (i, c) in cones.iter().enumerate() {
        if c.ambient_rank() != f.ambient_rank {
            problems.push(FanProblem::WrongRank { cone: i, rank: c.ambient_rank() });
        }
    }
    if !problems.is_empty() {
        return FanDiagnostics { problems };
    }
    for i in 0..cones.len() {
        for j in 0..cones.len() {
            if i != j && cones[i].is_face_of(&cones[j]) {
                problems.push(FanProblem::NotMaximal { inner: i, outer: j });
            }
        }
    }
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            let meet = cones[i].intersection(&cones[j]);
            if !is_face_within(&meet, &cones[i]) || !is_face_within(&meet, &cones[j]) {
                problems.push(FanProblem::BadIntersection { first: i, second: j, intersection: meet });
            }
        }
    }
    FanDiagnostics { problems }
}

/// The cones of a fan that map into a given cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub subfan: Fan,
    /// Present iff the subfan is a single cone together with its faces.
    pub single_cone: Option<Cone>,
}

pub fn preimage_fan(m: &IntMatrix, source: &Fan, target_cone: &Cone) -> Preimage {
    assert_eq!(m.ncols(), source.ambient_rank, "map does not start at the fan's lattice");
    assert_eq!(m.nrows(), target_cone.ambient_rank(), "map does not end at the cone's lattice");
    let inside: Vec<Cone> =
        source.cones().iter().filter(|c| c.rays().iter().all(|r| target_cone.contains(&m.mul_vec(r)))).cloned().collect();
    let subfan = Fan::generated_by(source.ambient_rank, inside);
    let single_cone = match subfan.maximal_cones() {
        [only] => Some(only.clone()),
        _ => None,
    };
    Preimage { subfan, single_cone }
}
