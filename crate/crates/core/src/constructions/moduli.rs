use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;
use crate::polyhedral::{Cone, Fan};
use crate::stacky::{minimal_non_faces, StackyFan};
use crate::zlinalg::{hermite_rows, kernel_basis, solve_integer, IntMatrix, ZVec};

/// Divisors `D_1, ..., D_n` with their linear and intersection relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuliDescription {
    pub n: usize,
    /// A basis of `N*` inside `Z^n`; a row `r` means `Σ r_i D_i ~ 0`.
    pub linear_relations: Vec<ZVec>,
    /// Minimal index sets whose divisors have empty intersection.
    pub intersection_relations: Vec<Vec<usize>>,
    /// Sections required to vanish (for closed substacks).
    pub forced_zero_sections: Vec<usize>,
}

/// Coordinate index sets of the maximal cones, after checking the moduli
/// preconditions.
fn check_smooth_datum(sf: &StackyFan) -> Result<Vec<Vec<usize>>> {
    let fan = sf.fan();
    if !fan.is_subfan_of_affine_space() {
        if !fan.is_smooth() {
            return Err(Error::NotSmooth);
        }
        return Err(Error::NotSubfanOfAffineSpace);
    }
    if !sf.is_strict() {
        return Err(Error::PreconditionViolated("N must be a lattice and beta must have finite cokernel".into()));
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

fn check_indices(indices: &[usize], n: usize) -> Result<Vec<usize>> {
    if let Some(i) = indices.iter().find(|&&i| i >= n) {
        return Err(Error::DimensionMismatch(format!("coordinate {} out of range 1..{n}", i + 1)));
    }
    let mut v = indices.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// Hermite basis of `N* = β*(Z^r)` inside `Z^n`.
fn dual_lattice(sf: &StackyFan) -> IntMatrix {
    hermite_rows(&sf.beta().free_part())
}

/// The divisors, relations and forced zero sections describing maps into a
/// smooth toric stack (or its closed substack where `forced_zero` vanish).
pub fn moduli_description(sf: &StackyFan, forced_zero: &[usize]) -> Result<ModuliDescription> {
    let faces = check_smooth_datum(sf)?;
    let n = sf.lattice_rank();
    let forced_zero_sections = check_indices(forced_zero, n)?;
    Ok(ModuliDescription {
        n,
        linear_relations: dual_lattice(sf).row_vecs(),
        intersection_relations: minimal_non_faces(n, &faces),
        forced_zero_sections,
    })
}

/// One root `L_i^{b} ≅ K` of the gerbe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// The zero coordinate `i` whose line bundle is the root.
    pub coordinate: usize,
    pub b: BigInt,
    /// Exponents of `K` over the base coordinates (in base order).
    pub k_exponents: ZVec,
}

/// `Z ≅ B(G_m^s) x (root stack of the K_i over the base)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GerbeData {
    pub bg_m_rank: usize,
    pub roots: Vec<Root>,
    pub base: StackyFan,
    /// Original indices of the base coordinates.
    pub base_coordinates: Vec<usize>,
}

/// Writes the closed substack `D_i = 0 (i in zero_coordinates)` as an
/// essentially trivial gerbe over a smooth toric stack.
///
/// The base fan is the star of `cone(e_i : i in Z)`, projected to the
/// surviving coordinates: these are exactly the vanishing patterns still
/// allowed once the sections in `Z` vanish.
pub fn gerbe_decomposition(sf: &StackyFan, zero_coordinates: &[usize]) -> Result<GerbeData> {
    let faces = check_smooth_datum(sf)?;
    let n = sf.lattice_rank();
    let zero = check_indices(zero_coordinates, n)?;
    if zero.is_empty() {
        return Ok(GerbeData { bg_m_rank: 0, roots: Vec::new(), base: sf.clone(), base_coordinates: (0..n).collect() });
    }
    if !faces.iter().any(|f| zero.iter().all(|i| f.contains(i))) {
        return Err(Error::PreconditionViolated(format!(
            "the coordinates {} do not span a cone of the fan, so the substack is empty",
            zero.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
        )));
    }
    let survivors: Vec<usize> = (0..n).filter(|i| !zero.contains(i)).collect();
    let dual = dual_lattice(sf);

    // N* ∩ {v_j = 0 for j in zero}: the base's dual lattice.
    let restricted = restricted_dual(&dual, &zero);
    let base_dual: Vec<ZVec> = restricted.iter().map(|v| survivors.iter().map(|&j| v[j].clone()).collect()).collect();
    let base_dual = if base_dual.is_empty() {
        IntMatrix::zeros(0, survivors.len())
    } else {
        hermite_rows(&IntMatrix::from_row_vecs(survivors.len(), &base_dual))
    };

    let mut roots = Vec::new();
    let mut bg_m_rank = 0;
    for &i in &zero {
        let others: Vec<usize> = zero.iter().copied().filter(|&j| j != i).collect();
        let lattice = restricted_dual(&dual, &others);
        let values: ZVec = lattice.iter().map(|v| v[i].clone()).collect();
        let g = values.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            bg_m_rank += 1;
            continue;
        }
        let coeffs = solve_integer(&IntMatrix::from_row_vecs(values.len(), &[values.clone()]), &[g.clone()])
            .expect("the gcd is an integer combination");
        let mut witness = vec![BigInt::zero(); n];
        for (c, v) in coeffs.iter().zip(&lattice) {
            for j in 0..n {
                witness[j] += c * &v[j];
            }
        }
        let a: ZVec = survivors.iter().map(|&j| witness[j].clone()).collect();
        let a = reduce_by_hermite(a, &base_dual);
        roots.push(Root { coordinate: i, b: g, k_exponents: a.iter().map(|x| -x).collect() });
    }

    let star: Vec<Cone> = faces
        .iter()
        .filter(|f| zero.iter().all(|i| f.contains(i)))
        .map(|f| {
            let idx: Vec<usize> = f.iter().filter_map(|j| survivors.iter().position(|s| s == j)).collect();
            Cone::coordinate(survivors.len(), &idx)
        })
        .collect();
    let base_fan = Fan::generated_by(survivors.len(), star);
    let r = base_dual.nrows();
    let base = StackyFan::new(base_fan, FgAbGroup::free(r), &base_dual.columns())?;
    Ok(GerbeData { bg_m_rank, roots, base, base_coordinates: survivors })
}

/// Basis (rows) of `{v in rowspan(dual) : v_j = 0 for j in coords}`.
fn restricted_dual(dual: &IntMatrix, coords: &[usize]) -> Vec<ZVec> {
    if dual.nrows() == 0 {
        return Vec::new();
    }
    if coords.is_empty() {
        return dual.row_vecs();
    }
    let constraint = dual.select_columns(coords).transpose();
    let k = kernel_basis(&constraint);
    if k.ncols() == 0 {
        return Vec::new();
    }
    (&k.transpose() * dual).row_vecs()
}

/// Reduces `v` modulo the row lattice of a Hermite basis.
fn reduce_by_hermite(mut v: ZVec, basis: &IntMatrix) -> ZVec {
    for row in basis.row_vecs() {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else { continue };
        debug_assert!(row[c].is_positive());
        let q = v[c].div_floor(&row[c]);
        if !q.is_zero() {
            for j in 0..v.len() {
                v[j] -= &q * &row[j];
            }
        }
    }
    v
}
