//! Finitely generated abelian groups in invariant-factor form, their
//! homomorphisms, and the dual mapping cone that produces `G_β`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Error, Result};
use crate::zlinalg::{
    cokernel_presentation, hermite_columns, hermite_rows, is_zero_vec, kernel_basis, snf, solve_integer, Cokernel,
    IntMatrix, ZVec,
};

/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | ... | d_k`, each `d_j >= 2`.
///
/// Elements are coordinate vectors of length [`FgAbGroup::dim`]: free
/// coordinates first, then one coordinate per torsion factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (j, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(Error::MalformedHom(format!("torsion factor {d} must be at least 2")));
            }
            if j > 0 && !d.is_multiple_of(&torsion[j - 1]) {
                return Err(Error::MalformedHom(format!(
                    "torsion factors {} and {d} do not form a divisibility chain",
                    torsion[j - 1]
                )));
            }
        }
        Ok(FgAbGroup { free_rank, torsion })
    }

    /// Normalizes `Z^free_rank ⊕ ⊕ Z/n_i` for arbitrary positive `n_i`.
    pub fn from_cyclic_orders(free_rank: usize, orders: &[BigInt]) -> Self {
        let d = snf(&IntMatrix::diagonal(orders));
        let torsion = d.invariant_factors.into_iter().filter(|x| !x.is_one()).collect();
        FgAbGroup { free_rank, torsion }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic_orders(0, &[BigInt::from(order)])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn dim(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn torsion_subgroup(&self) -> FgAbGroup {
        FgAbGroup { free_rank: 0, torsion: self.torsion.clone() }
    }

    /// Order of the `g`-th canonical generator, `None` for free generators.
    pub fn generator_order(&self, g: usize) -> Option<&BigInt> {
        g.checked_sub(self.free_rank).map(|j| &self.torsion[j])
    }

    /// `dim x k` matrix whose columns generate the relations among the
    /// canonical generators (`d_j e_{free_rank + j}`).
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.dim(), self.torsion.len());
        for (j, d) in self.torsion.iter().enumerate() {
            r[(self.free_rank + j, j)] = d.clone();
        }
        r
    }

    /// Reduces torsion coordinates into `[0, d_j)`.
    pub fn reduce(&self, v: &mut [BigInt]) {
        assert_eq!(v.len(), self.dim(), "element has wrong length for {self}");
        for (j, d) in self.torsion.iter().enumerate() {
            let x = &mut v[self.free_rank + j];
            *x = x.mod_floor(d);
        }
    }

    pub fn reduced(&self, mut v: ZVec) -> ZVec {
        self.reduce(&mut v);
        v
    }

    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        is_zero_vec(&self.reduced(v.to_vec()))
    }

    /// The direct sum in invariant-factor form, with the isomorphism from the
    /// concatenated coordinates.
    pub fn direct_sum(&self, other: &FgAbGroup) -> Cokernel {
        cokernel_presentation(&self.relation_matrix().direct_sum(&other.relation_matrix()))
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// A homomorphism between groups in invariant-factor form, stored as the
/// images of the source's canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgAbHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

/// Kernel, image and cokernel of a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomAnalysis {
    pub kernel: FgAbGroup,
    pub image: FgAbGroup,
    pub cokernel: FgAbGroup,
    pub surjective: bool,
    pub injective: bool,
    pub finite_kernel: bool,
}

impl FgAbHom {
    /// Checks shapes and well-definedness, then reduces torsion rows.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.nrows() != target.dim() || matrix.ncols() != source.dim() {
            return Err(Error::MalformedHom(format!(
                "matrix is {}x{} but {} -> {} needs {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                source,
                target,
                target.dim(),
                source.dim()
            )));
        }
        let mut matrix = matrix;
        for (j, d) in target.torsion.iter().enumerate() {
            let i = target.free_rank + j;
            for c in 0..matrix.ncols() {
                let x = matrix[(i, c)].mod_floor(d);
                matrix[(i, c)] = x;
            }
        }
        for (j, d) in source.torsion.iter().enumerate() {
            let col = source.free_rank + j;
            let image: ZVec = matrix.column(col).iter().map(|x| x * d).collect();
            if !target.is_zero_element(&image) {
                return Err(Error::MalformedHom(format!(
                    "generator {} has order {d} but its image {:?} does not",
                    col + 1,
                    matrix.column(col).iter().map(ToString::to_string).collect::<Vec<_>>()
                )));
            }
        }
        Ok(FgAbHom { source, target, matrix })
    }

    pub fn from_images(source: FgAbGroup, target: FgAbGroup, images: &[ZVec]) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::MalformedHom(format!(
                "{} images given for a source with {} generators",
                images.len(),
                source.dim()
            )));
        }
        if let Some(bad) = images.iter().position(|v| v.len() != target.dim()) {
            return Err(Error::MalformedHom(format!(
                "image {} has {} coordinates, expected {}",
                bad + 1,
                images[bad].len(),
                target.dim()
            )));
        }
        let m = IntMatrix::from_columns(target.dim(), images);
        Self::new(source, target, m)
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        FgAbHom { source: g.clone(), target: g.clone(), matrix: IntMatrix::identity(g.dim()) }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        FgAbHom { source: source.clone(), target: target.clone(), matrix: IntMatrix::zeros(target.dim(), source.dim()) }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn image_of(&self, g: usize) -> ZVec {
        self.matrix.column(g)
    }

    pub fn images(&self) -> Vec<ZVec> {
        self.matrix.columns()
    }

    pub fn apply(&self, v: &[BigInt]) -> ZVec {
        self.target.reduced(self.matrix.mul_vec(v))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FgAbHom) -> Result<FgAbHom> {
        if self.target != next.source {
            return Err(Error::MalformedHom(format!(
                "cannot compose: {} is not {}",
                self.target, next.source
            )));
        }
        FgAbHom::new(self.source.clone(), next.target.clone(), &next.matrix * &self.matrix)
    }

    /// Rows of the matrix belonging to the free part of the target.
    pub fn free_part(&self) -> IntMatrix {
        self.matrix.select_rows(&(0..self.target.free_rank).collect::<Vec<_>>())
    }

    /// `[F | R_target]`: columns generate the preimage of the image lattice.
    fn image_generators(&self) -> IntMatrix {
        self.matrix.hstack(&self.target.relation_matrix())
    }

    /// Generators (columns) of `{x in Z^source.dim : f(x) = 0}`; the kernel
    /// itself is this lattice modulo the source relations.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let m = self.source.dim();
        let k = kernel_basis(&self.image_generators());
        let gens = k.select_rows(&(0..m).collect::<Vec<_>>());
        let all = gens.hstack(&self.source.relation_matrix());
        if all.ncols() == 0 {
            return IntMatrix::zeros(m, 0);
        }
        hermite_columns(&all)
    }

    pub fn analyze(&self) -> HomAnalysis {
        let ker_lattice = self.kernel_lattice();
        let kernel = lattice_quotient(&ker_lattice, &self.source.relation_matrix());
        let gens = self.image_generators();
        let image_basis = if gens.ncols() == 0 { gens.clone() } else { hermite_columns(&gens) };
        let image = lattice_quotient(&image_basis, &self.target.relation_matrix());
        let cokernel = cokernel_presentation(&gens).group;
        HomAnalysis {
            surjective: cokernel.is_trivial(),
            injective: kernel.is_trivial(),
            finite_kernel: kernel.is_finite(),
            kernel,
            image,
            cokernel,
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        let a = self.analyze();
        a.surjective && a.injective
    }

    /// Whether `v` lies in the image.
    pub fn image_contains(&self, v: &[BigInt]) -> bool {
        solve_integer(&self.image_generators(), v).is_some()
    }

    /// The map `cok(A) -> cok(B)` induced by a lattice map `lift` carrying
    /// the column lattice of `A` into that of `B`.
    pub fn between_cokernels(source: &Cokernel, target: &Cokernel, lift: &IntMatrix) -> Result<FgAbHom> {
        let m = &(&target.projection * lift) * &source.section;
        FgAbHom::new(source.group.clone(), target.group.clone(), m)
    }
}

/// `X / Y` for a lattice basis `X` (columns) and a sublattice `Y ⊆ X`.
fn lattice_quotient(basis: &IntMatrix, sub: &IntMatrix) -> FgAbGroup {
    let k = basis.ncols();
    let coords: Vec<ZVec> = sub
        .columns()
        .iter()
        .map(|c| solve_integer(basis, c).expect("sublattice is contained in the lattice"))
        .collect();
    cokernel_presentation(&IntMatrix::from_columns(k, &coords)).group
}

pub fn analyze_hom(f: &FgAbHom) -> HomAnalysis {
    f.analyze()
}

/// A diagonalizable group given by its character group `D(G)` together with
/// the characters through which it acts on the coordinates of a torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiagGroupPresentation {
    pub character_group: FgAbGroup,
    /// Column `i` is the character of coordinate `i`, in the canonical
    /// coordinates of `character_group`.
    pub weights: IntMatrix,
}

impl DiagGroupPresentation {
    pub fn new(character_group: FgAbGroup, weights: IntMatrix) -> Result<Self> {
        let hom = FgAbHom::new(FgAbGroup::free(weights.ncols()), character_group, weights)?;
        Ok(DiagGroupPresentation { character_group: hom.target, weights: hom.matrix })
    }

    pub fn n_coordinates(&self) -> usize {
        self.weights.ncols()
    }

    pub fn weight(&self, i: usize) -> ZVec {
        self.weights.column(i)
    }

    pub fn weight_map(&self) -> FgAbHom {
        FgAbHom {
            source: FgAbGroup::free(self.n_coordinates()),
            target: self.character_group.clone(),
            matrix: self.weights.clone(),
        }
    }

    /// Row Hermite basis of the lattice of relations among the weights.
    pub fn relation_lattice(&self) -> IntMatrix {
        let k = self.weight_map().kernel_lattice();
        if k.ncols() == 0 {
            return IntMatrix::zeros(0, self.n_coordinates());
        }
        hermite_rows(&k.transpose())
    }

    pub fn weights_generate(&self) -> bool {
        self.weight_map().analyze().surjective
    }

    /// Whether the two presentations differ only by an automorphism of the
    /// character group.
    ///
    /// Exact when the weights generate (always the case for strict data);
    /// otherwise relation lattices and the groups generated are compared.
    pub fn is_equivalent(&self, other: &DiagGroupPresentation) -> bool {
        self.character_group == other.character_group
            && self.n_coordinates() == other.n_coordinates()
            && self.relation_lattice() == other.relation_lattice()
            && self.weight_map().analyze().cokernel == other.weight_map().analyze().cokernel
    }

    /// The group in multiplicative notation, e.g. `G_m x mu_2`.
    pub fn group_name(&self) -> String {
        let g = &self.character_group;
        let mut parts = Vec::new();
        match g.free_rank() {
            0 => {}
            1 => parts.push("G_m".to_string()),
            r => parts.push(format!("G_m^{r}")),
        }
        parts.extend(g.torsion().iter().map(|d| format!("mu_{d}")));
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" x ")
        }
    }
}

impl fmt::Display for DiagGroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.weights.nrows())
            .map(|i| {
                let r: Vec<String> = self.weights.row(i).iter().map(ToString::to_string).collect();
                format!("({})", r.join(","))
            })
            .collect();
        write!(f, "{} acting with weights {}", self.group_name(), rows.join(" "))
    }
}

/// Cohomology of the dual mapping cone of `β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingConeDual {
    /// Rank of `H^0`, so the identity component is `G_m^{g0_rank}`.
    pub g0_rank: usize,
    /// `H^1` with the images of the dual basis of `L*`.
    pub g1: DiagGroupPresentation,
}

impl MappingConeDual {
    /// `G_β` in multiplicative notation, the trivially acting torus first.
    pub fn group_name(&self) -> String {
        with_torus_factor(self.g0_rank, &self.g1.group_name())
    }
}

pub(crate) fn with_torus_factor(rank: usize, g1: &str) -> String {
    match (rank, g1) {
        (0, _) => g1.to_string(),
        (1, "1") => "G_m".to_string(),
        (k, "1") => format!("G_m^{k}"),
        (1, _) => format!("G_m x {g1}"),
        (k, _) => format!("G_m^{k} x {g1}"),
    }
}

/// `G_β` for `β: Z^ℓ -> N`, computed through the canonical presentation
/// `Z^s -> Z^{r+s} -> N` and the coordinatewise lift of `β`.
pub fn mapping_cone_dual(beta: &FgAbHom) -> Result<MappingConeDual> {
    if !beta.source.is_free() {
        return Err(Error::PreconditionViolated(format!("source {} of beta is not free", beta.source)));
    }
    mapping_cone_dual_via(&beta.matrix, &beta.target.relation_matrix())
}

/// Same as [`mapping_cone_dual`] for an arbitrary presentation: `lift` is a
/// lift of `β` to `Z^r` and the columns of `relations` (injective) generate
/// the kernel of `Z^r -> N`.
pub fn mapping_cone_dual_via(lift: &IntMatrix, relations: &IntMatrix) -> Result<MappingConeDual> {
    if lift.nrows() != relations.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "lift has {} rows but the presentation has {}",
            lift.nrows(),
            relations.nrows()
        )));
    }
    if relations.rank() != relations.ncols() {
        return Err(Error::PreconditionViolated("presentation relations are not independent".into()));
    }
    let ell = lift.ncols();
    let combined = lift.hstack(relations);
    let g0_rank = combined.nrows() - combined.rank();
    let cok = cokernel_presentation(&combined.transpose());
    let weights = cok.projection.select_columns(&(0..ell).collect::<Vec<_>>());
    Ok(MappingConeDual { g0_rank, g1: DiagGroupPresentation { character_group: cok.group, weights } })
}

/// `Ext^1(N, Z)`, computed from the canonical resolution of `N`.
pub fn ext1(n: &FgAbGroup) -> FgAbGroup {
    cokernel_presentation(&n.relation_matrix().transpose()).group
}

/// Whether `0 -> A_0 -> A_1 -> ... -> A_k -> 0` is exact for the given maps.
pub fn verify_exact(seq: &[FgAbHom]) -> Result<bool> {
    for w in seq.windows(2) {
        if w[0].target != w[1].source {
            return Err(Error::MalformedHom(format!(
                "consecutive maps are not composable: {} vs {}",
                w[0].target, w[1].source
            )));
        }
    }
    let (Some(first), Some(last)) = (seq.first(), seq.last()) else { return Ok(true) };
    if !first.analyze().injective || !last.analyze().surjective {
        return Ok(false);
    }
    for w in seq.windows(2) {
        let (f, g) = (&w[0], &w[1]);
        let composite = f.then(g)?;
        if !composite.matrix.columns().iter().all(|c| g.target.is_zero_element(c)) {
            return Ok(false);
        }
        if !g.kernel_lattice().columns().iter().all(|k| f.image_contains(k)) {
            return Ok(false);
        }
    }
    Ok(true)
}
