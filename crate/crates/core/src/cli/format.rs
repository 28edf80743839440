//! JSON file formats for stacky fans and their morphisms.
//!
//! Integers are arbitrary precision on the wire. Each `β` image lists the
//! free coordinates of `N` first, then one coordinate per torsion factor.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::fgab::FgAbGroup;
use crate::polyhedral::{Cone, Fan, FanProblem};
use crate::stacky::{StackyFan, StackyMorphism};
use crate::zlinalg::ZVec;

/// An integer of any size, written as a bare JSON number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string())
            .map(JsonInt)
            .map_err(|_| serde::de::Error::custom(format!("expected an integer, found {n}")))
    }
}

pub fn to_json_vec(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub fn to_json_vecs(vs: &[ZVec]) -> Vec<Vec<JsonInt>> {
    vs.iter().map(|v| to_json_vec(v)).collect()
}

fn from_json_vec(v: &[JsonInt]) -> ZVec {
    v.iter().map(|x| x.0.clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanFile {
    pub maximal_cones: Vec<Vec<Vec<JsonInt>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub rank: usize,
    pub torsion: Vec<JsonInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StackyFanFile {
    pub lattice_rank: usize,
    pub fan: FanFile,
    pub target: GroupFile,
    pub beta_images: Vec<Vec<JsonInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismFile {
    pub source: StackyFanFile,
    pub target: StackyFanFile,
    #[serde(rename = "Phi_images")]
    pub lattice_images: Vec<Vec<JsonInt>>,
    #[serde(rename = "phi_images")]
    pub group_images: Vec<Vec<JsonInt>>,
}

/// Why a file does not describe a valid object: the offending field and the
/// violated invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    pub field: String,
    pub message: String,
}

impl FormatError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError { field: field.into(), message: message.into() }
    }

    fn within(self, prefix: &str) -> Self {
        let field = if self.field.is_empty() { prefix.to_string() } else { format!("{prefix}.{}", self.field) };
        FormatError { field, message: self.message }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.field, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

fn check_len(field: String, v: &[JsonInt], len: usize) -> Result<ZVec, FormatError> {
    if v.len() != len {
        return Err(FormatError::new(field, format!("has {} entries, expected {len}", v.len())));
    }
    Ok(from_json_vec(v))
}

impl GroupFile {
    pub fn from_group(g: &FgAbGroup) -> Self {
        GroupFile { rank: g.free_rank(), torsion: to_json_vec(g.torsion()) }
    }

    pub fn to_group(&self) -> Result<FgAbGroup, FormatError> {
        FgAbGroup::new(self.rank, from_json_vec(&self.torsion)).map_err(|_| {
            FormatError::new("torsion", "factors must be at least 2 and each must divide the next")
        })
    }
}

impl FanFile {
    pub fn from_fan(f: &Fan) -> Self {
        FanFile { maximal_cones: f.maximal_cones().iter().map(|c| to_json_vecs(c.rays())).collect() }
    }

    pub fn to_fan(&self, rank: usize) -> Result<Fan, FormatError> {
        let mut cones = Vec::with_capacity(self.maximal_cones.len());
        for (i, c) in self.maximal_cones.iter().enumerate() {
            let rays = c
                .iter()
                .enumerate()
                .map(|(j, r)| check_len(format!("maximal_cones[{i}][{j}]"), r, rank))
                .collect::<Result<Vec<_>, _>>()?;
            let cone = Cone::new(rank, &rays)
                .map_err(|_| FormatError::new(format!("maximal_cones[{i}]"), "cone is not strongly convex"))?;
            cones.push(cone);
        }
        let fan = Fan::new(rank, cones.clone());
        if let Some(p) = fan.validate().problems.first() {
            // report cones by their position in the file
            let at = |k: usize| {
                let c = &fan.maximal_cones()[k];
                format!("entry {}", cones.iter().position(|d| d == c).unwrap_or(k))
            };
            let message = match p {
                FanProblem::WrongRank { cone, rank } => format!("{} lives in a lattice of rank {rank}", at(*cone)),
                FanProblem::NotMaximal { inner, outer } => {
                    format!("{} is a face of {} and cannot be listed as maximal", at(*inner), at(*outer))
                }
                FanProblem::BadIntersection { first, second, intersection } => {
                    let (a, b) = (at(*first), at(*second));
                    let (a, b) = if a <= b { (a, b) } else { (b, a) };
                    format!("{a} and {b} meet in {intersection}, which is not a face of both")
                }
            };
            return Err(FormatError::new("maximal_cones", format!("not a fan: {message}")));
        }
        Ok(fan)
    }
}

impl StackyFanFile {
    pub fn from_stacky_fan(sf: &StackyFan) -> Self {
        StackyFanFile {
            lattice_rank: sf.lattice_rank(),
            fan: FanFile::from_fan(sf.fan()),
            target: GroupFile::from_group(sf.target()),
            beta_images: to_json_vecs(&sf.beta_images()),
        }
    }

    pub fn to_stacky_fan(&self) -> Result<StackyFan, FormatError> {
        let fan = self.fan.to_fan(self.lattice_rank).map_err(|e| e.within("fan"))?;
        let target = self.target.to_group().map_err(|e| e.within("target"))?;
        if self.beta_images.len() != self.lattice_rank {
            return Err(FormatError::new(
                "beta_images",
                format!("expected one image per basis vector of Z^{}, found {}", self.lattice_rank, self.beta_images.len()),
            ));
        }
        let images = self
            .beta_images
            .iter()
            .enumerate()
            .map(|(i, v)| check_len(format!("beta_images[{i}]"), v, target.dim()))
            .collect::<Result<Vec<_>, _>>()?;
        StackyFan::new(fan, target, &images).map_err(|e| FormatError::new("beta_images", e.to_string()))
    }

    /// The fan read on the target lattice instead of `L`, with the `β`
    /// images as points of `N`; the input convention of fantastacks.
    pub fn to_fantastack_data(&self) -> Result<(Fan, Vec<ZVec>), FormatError> {
        let target = self.target.to_group().map_err(|e| e.within("target"))?;
        if !target.is_free() {
            return Err(FormatError::new("target.torsion", "fantastack data needs a lattice N"));
        }
        let r = target.free_rank();
        let fan = self.fan.to_fan(r).map_err(|e| e.within("fan"))?;
        if self.beta_images.len() != self.lattice_rank {
            return Err(FormatError::new(
                "beta_images",
                format!("expected {} images, found {}", self.lattice_rank, self.beta_images.len()),
            ));
        }
        let images = self
            .beta_images
            .iter()
            .enumerate()
            .map(|(i, v)| check_len(format!("beta_images[{i}]"), v, r))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((fan, images))
    }
}

impl MorphismFile {
    pub fn from_morphism(m: &StackyMorphism) -> Self {
        MorphismFile {
            source: StackyFanFile::from_stacky_fan(m.source()),
            target: StackyFanFile::from_stacky_fan(m.target()),
            lattice_images: to_json_vecs(&m.lattice_map().columns()),
            group_images: to_json_vecs(&m.group_map().images()),
        }
    }

    /// Parses and checks that the square commutes and `Φ` maps cones into
    /// cones.
    pub fn to_morphism(&self) -> Result<StackyMorphism, FormatError> {
        let source = self.source.to_stacky_fan().map_err(|e| e.within("source"))?;
        let target = self.target.to_stacky_fan().map_err(|e| e.within("target"))?;
        let (l, l2) = (source.lattice_rank(), target.lattice_rank());
        if self.lattice_images.len() != l {
            return Err(FormatError::new("Phi_images", format!("expected {l} images, found {}", self.lattice_images.len())));
        }
        let lattice = self
            .lattice_images
            .iter()
            .enumerate()
            .map(|(i, v)| check_len(format!("Phi_images[{i}]"), v, l2))
            .collect::<Result<Vec<_>, _>>()?;
        let (d, d2) = (source.target().dim(), target.target().dim());
        if self.group_images.len() != d {
            return Err(FormatError::new("phi_images", format!("expected {d} images, found {}", self.group_images.len())));
        }
        let group = self
            .group_images
            .iter()
            .enumerate()
            .map(|(i, v)| check_len(format!("phi_images[{i}]"), v, d2))
            .collect::<Result<Vec<_>, _>>()?;
        let m = StackyMorphism::from_images(source, target, &lattice, &group)
            .map_err(|e| FormatError::new("phi_images", e.to_string()))?;
        let diag = m.validate();
        if let Some(i) = diag.non_commuting.first() {
            return Err(FormatError::new(
                "Phi_images",
                format!("the square does not commute on e_{}: beta'(Phi(e)) differs from phi(beta(e))", i + 1),
            ));
        }
        if let Some(i) = diag.uncontained_cones.first() {
            return Err(FormatError::new(
                "Phi_images",
                format!("maximal cone {} of the source is not mapped into a cone of the target", i + 1),
            ));
        }
        Ok(m)
    }
}
