//! Exact integer linear algebra: Smith and Hermite normal forms, kernels,
//! saturation, integer solving and cokernels.
//!
//! Matrices act on column vectors; column `j` of a matrix is the image of the
//! `j`-th basis vector.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::fgab::FgAbGroup;

/// An integer vector.
pub type ZVec = Vec<BigInt>;

pub fn zvec(values: &[i64]) -> ZVec {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn gcd_of(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// Divides a nonzero vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn primitive(mut v: ZVec) -> ZVec {
    let g = gcd_of(&v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    v
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `a * x + b * y`, entrywise.
pub(crate) fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> ZVec {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from small integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(cols: usize, rows: &[R]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged matrix row {i}");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[ZVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has wrong length");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_row_vecs(cols: usize, rows: &[ZVec]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, v) in r.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    /// Builds a matrix whose columns are small integer vectors.
    pub fn from_i64_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Self {
        let cols: Vec<ZVec> = columns.iter().map(|c| zvec(c.as_ref())).collect();
        Self::from_columns(rows, &cols)
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, d) in entries.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> ZVec {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> ZVec {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<ZVec> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<ZVec> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> ZVec {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        (0..self.rows)
            .map(|i| dot(&self.data[i * self.cols..(i + 1) * self.cols], v))
            .collect()
    }

    pub fn hstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_columns(self.rows, &cols)
    }

    pub fn vstack(&self, other: &IntMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.row_vecs();
        rows.extend(other.row_vecs());
        Self::from_row_vecs(self.cols, &rows)
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &IntMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        let cols: Vec<ZVec> = idx.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(self.rows, &cols)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows: Vec<ZVec> = idx.iter().map(|&i| self.row(i)).collect();
        Self::from_row_vecs(self.cols, &rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        hermite_rows(self).nrows()
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] += k * row[src]`
    pub(crate) fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let delta = k * &self[(src, j)];
            self[(dst, j)] += delta;
        }
    }

    /// `col[dst] += k * col[src]`
    pub(crate) fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let delta = k * &self[(i, src)];
            self[(i, dst)] += delta;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let delta = a * &rhs[(k, j)];
                    out[(i, j)] += delta;
                }
            }
        }
        out
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// `U * M * V = S` with `U`, `V` unimodular and `S` diagonal with
/// `d_1 | d_2 | ... | d_rank`, all positive, followed by zeros.
#[derive(Clone, Debug)]
pub struct SnfDecomposition {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl SnfDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Smith normal form.
///
/// Pivoting is deterministic: the nonzero entry of smallest magnitude in the
/// active block is chosen, ties broken by the lowest row-major index.
pub fn snf(m: &IntMatrix) -> SnfDecomposition {
    let (r, c) = (m.nrows(), m.ncols());
    let mut s = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut u_inv = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut v_inv = IntMatrix::identity(c);
    let mut factors = Vec::new();

    // Each operation is mirrored on U (rows), U^{-1} (columns), V (columns)
    // and V^{-1} (rows).
    let row_add = |s: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst, src, k: &BigInt| {
        s.add_row_multiple(dst, src, k);
        u.add_row_multiple(dst, src, k);
        u_inv.add_col_multiple(src, dst, &-k);
    };
    let col_add = |s: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, dst, src, k: &BigInt| {
        s.add_col_multiple(dst, src, k);
        v.add_col_multiple(dst, src, k);
        v_inv.add_row_multiple(src, dst, &-k);
    };

    'outer: for t in 0..r.min(c) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &s[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    match best {
                        Some((bi, bj)) if s[(bi, bj)].abs() <= x.abs() => {}
                        _ => best = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            u_inv.swap_cols(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);
            v_inv.swap_rows(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                row_add(&mut s, &mut u, &mut u_inv, i, t, &-q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                col_add(&mut s, &mut v, &mut v_inv, j, t, &-q);
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = s[(t, t)].clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                row_add(&mut s, &mut u, &mut u_inv, t, i, &BigInt::one());
                continue;
            }
            break;
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        factors.push(s[(t, t)].clone());
    }
    SnfDecomposition { s, u, v, u_inv, v_inv, invariant_factors: factors }
}

/// Row-style Hermite normal form of the row lattice of `m`.
///
/// Returns only the nonzero rows: an echelon basis with positive pivots and
/// entries above each pivot reduced into `[0, pivot)`. Two matrices have the
/// same row lattice iff their Hermite forms are equal.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.nrows(), a.ncols());
    let mut p = 0;
    for col in 0..cols {
        if p == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in p..rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if a[(b, col)].abs() <= a[(i, col)].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(p, b);
            let mut done = true;
            for i in p + 1..rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let q = a[(i, col)].div_floor(&a[(p, col)]);
                a.add_row_multiple(i, p, &-q);
                if !a[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(p, col)].is_zero() {
            continue;
        }
        if a[(p, col)].is_negative() {
            a.negate_row(p);
        }
        for i in 0..p {
            let q = a[(i, col)].div_floor(&a[(p, col)]);
            if !q.is_zero() {
                a.add_row_multiple(i, p, &-q);
            }
        }
        p += 1;
    }
    a.select_rows(&(0..p).collect::<Vec<_>>())
}

/// Hermite basis of the column lattice of `m` (columns of the result).
pub fn hermite_columns(m: &IntMatrix) -> IntMatrix {
    hermite_rows(&m.transpose()).transpose()
}

/// Saturated basis (as columns) of `{x in Z^cols : M x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let d = snf(m);
    let k = d.rank();
    let idx: Vec<usize> = (k..m.ncols()).collect();
    let basis = d.v.select_columns(&idx);
    if basis.ncols() == 0 {
        return basis;
    }
    hermite_columns(&basis)
}

/// Some integer solution of `M x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<ZVec> {
    assert_eq!(b.len(), m.nrows(), "right-hand side has wrong length");
    let d = snf(m);
    let ub = d.u.mul_vec(b);
    let k = d.rank();
    let mut y = vec![BigInt::zero(); m.ncols()];
    for (i, ubi) in ub.iter().enumerate() {
        if i < k {
            let (q, r) = ubi.div_rem(&d.invariant_factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(d.v.mul_vec(&y))
}

/// Basis (as columns, in Hermite form) of the saturation
/// `{b : n b in A for some n > 0}` of the column lattice `A` of `m`.
pub fn saturate(m: &IntMatrix) -> IntMatrix {
    let d = snf(m);
    let idx: Vec<usize> = (0..d.rank()).collect();
    let basis = d.u_inv.select_columns(&idx);
    if basis.ncols() == 0 {
        return basis;
    }
    hermite_columns(&basis)
}

/// Whether `v` lies in the column lattice of `m`.
pub fn lattice_contains(m: &IntMatrix, v: &[BigInt]) -> bool {
    solve_integer(m, v).is_some()
}

/// `Z^rows / colspan(M)` in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub group: FgAbGroup,
    /// Matrix of the quotient map `Z^rows -> group`; free coordinates first,
    /// torsion coordinates reduced modulo their invariant factor.
    pub projection: IntMatrix,
    /// A right inverse: column `g` is a preimage of the `g`-th canonical
    /// generator of `group`.
    pub section: IntMatrix,
}

/// Cokernel of `m` with a normalized projection.
///
/// Free rows of the projection are put in row Hermite form; each torsion row
/// is shifted by multiples of the free rows to minimize its entries at the free
/// pivot columns and then scaled by the unit that makes it lexicographically
/// smallest. This fixes the otherwise arbitrary choice of coordinates on the
/// cokernel.
pub fn cokernel_presentation(m: &IntMatrix) -> Cokernel {
    let n = m.nrows();
    let d = snf(m);
    let k = d.rank();
    let torsion_idx: Vec<usize> = (0..k).filter(|&i| !d.invariant_factors[i].is_one()).collect();
    let torsion: Vec<BigInt> = torsion_idx.iter().map(|&i| d.invariant_factors[i].clone()).collect();
    let free_rows = d.u.select_rows(&(k..n).collect::<Vec<_>>());
    let free_rows = if free_rows.nrows() > 0 { hermite_rows(&free_rows) } else { free_rows };
    let free_rank = free_rows.nrows();

    let pivots: Vec<(usize, BigInt)> = (0..free_rank)
        .map(|i| {
            let j = (0..n).find(|&j| !free_rows[(i, j)].is_zero()).expect("zero row in Hermite form");
            (j, free_rows[(i, j)].clone())
        })
        .collect();

    let mut torsion_rows = Vec::with_capacity(torsion.len());
    for (t, &i) in torsion_idx.iter().enumerate() {
        let modulus = &torsion[t];
        let mut row: ZVec = d.u.row(i).iter().map(|x| x.mod_floor(modulus)).collect();
        for (f, (pc, pv)) in pivots.iter().enumerate() {
            let best_k = best_shift(&row[*pc], pv, modulus);
            if !best_k.is_zero() {
                for j in 0..n {
                    row[j] = (&row[j] + &best_k * &free_rows[(f, j)]).mod_floor(modulus);
                }
            }
        }
        torsion_rows.push(scale_by_best_unit(row, modulus));
    }

    let mut all_rows = free_rows.row_vecs();
    all_rows.extend(torsion_rows);
    let projection = IntMatrix::from_row_vecs(n, &all_rows);
    let group = FgAbGroup::new(free_rank, torsion).expect("invariant factors form a divisibility chain");

    let relations = group.relation_matrix();
    let system = projection.hstack(&relations);
    let mut section_cols = Vec::with_capacity(group.dim());
    for g in 0..group.dim() {
        let mut e = vec![BigInt::zero(); group.dim()];
        e[g] = BigInt::one();
        let sol = solve_integer(&system, &e).expect("cokernel projection is surjective");
        section_cols.push(sol[..n].to_vec());
    }
    let section = IntMatrix::from_columns(n, &section_cols);
    Cokernel { group, projection, section }
}

/// Smallest `k` in `[0, modulus)` minimizing `(value + k * pivot) mod modulus`.
fn best_shift(value: &BigInt, pivot: &BigInt, modulus: &BigInt) -> BigInt {
    let g = pivot.gcd(modulus);
    let target = value.mod_floor(&g);
    if target == value.mod_floor(modulus) {
        return BigInt::zero();
    }
    // Solve k * pivot = target - value (mod modulus).
    let m = modulus / &g;
    let rhs = ((target - value) / &g).mod_floor(&m);
    let p = (pivot / &g).mod_floor(&m);
    let inv = mod_inverse(&p, &m).expect("pivot/g is a unit modulo modulus/g");
    (rhs * inv).mod_floor(&m)
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

const UNIT_SEARCH_LIMIT: u64 = 10_000;

fn scale_by_best_unit(row: ZVec, modulus: &BigInt) -> ZVec {
    let Some(first) = row.iter().find(|x| !x.is_zero()) else { return row };
    let mut best = row.clone();
    if modulus > &BigInt::from(UNIT_SEARCH_LIMIT) {
        // Too many units to enumerate; settle for making the first nonzero
        // entry a divisor of the modulus when a unit achieves it.
        let g = first.gcd(modulus);
        let m = modulus / &g;
        if let Some(inv) = mod_inverse(&(first / &g), &m) {
            if inv.gcd(modulus).is_one() {
                best = row.iter().map(|x| (x * &inv).mod_floor(modulus)).collect();
            }
        }
        return best;
    }
    let mut u = BigInt::from(2);
    while &u < modulus {
        if u.gcd(modulus).is_one() {
            let cand: ZVec = row.iter().map(|x| (x * &u).mod_floor(modulus)).collect();
            if cand < best {
                best = cand;
            }
        }
        u += 1;
    }
    best
}
