//! Reference implementations that share no code with the library: integer
//! Fourier–Motzkin elimination, determinantal divisors, and Cramer's rule.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// A homogeneous constraint `a·x >= 0`, or `a·x > 0` when `strict`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Ineq {
    pub a: Vec<BigInt>,
    pub strict: bool,
}

impl Ineq {
    pub fn ge(a: &[i64]) -> Ineq {
        Ineq { a: a.iter().map(|&x| BigInt::from(x)).collect(), strict: false }
    }

    pub fn gt(a: &[i64]) -> Ineq {
        Ineq { a: a.iter().map(|&x| BigInt::from(x)).collect(), strict: true }
    }

    fn normalized(mut self) -> Ineq {
        let g = self.a.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() {
            for x in &mut self.a {
                *x /= &g;
            }
        }
        self
    }
}

/// Whether a homogeneous system of (strict) inequalities has a rational
/// solution, by eliminating one variable at a time.
pub fn fm_feasible(mut system: Vec<Ineq>) -> bool {
    let n = system.first().map_or(0, |c| c.a.len());
    for k in 0..n {
        let mut next = Vec::new();
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for c in system {
            if c.a[k].is_positive() {
                pos.push(c);
            } else if c.a[k].is_negative() {
                neg.push(c);
            } else {
                next.push(c);
            }
        }
        for p in &pos {
            for q in &neg {
                let (mp, mq) = (-&q.a[k], p.a[k].clone());
                let a = p.a.iter().zip(&q.a).map(|(x, y)| x * &mp + y * &mq).collect();
                next.push(Ineq { a, strict: p.strict || q.strict }.normalized());
            }
        }
        next.sort();
        next.dedup();
        // a strict constraint implies its non-strict twin
        let strict: Vec<Vec<BigInt>> = next.iter().filter(|c| c.strict).map(|c| c.a.clone()).collect();
        next.retain(|c| c.strict || !strict.contains(&c.a));
        system = next;
    }
    !system.iter().any(|c| c.strict && c.a.iter().all(Zero::is_zero))
}

fn eq_pair(a: Vec<i64>) -> [Ineq; 2] {
    let neg: Vec<i64> = a.iter().map(|x| -x).collect();
    [Ineq::ge(&a), Ineq::ge(&neg)]
}

/// Unstable via the dual cone: no functional is nonnegative on every
/// generator and positive on one of them.
pub fn unstable_by_dual_cone(images: &[Vec<i64>], rank: usize) -> bool {
    if rank == 0 {
        return true;
    }
    (0..images.len()).all(|j| {
        let mut sys: Vec<Ineq> = images.iter().map(|g| Ineq::ge(g)).collect();
        sys.push(Ineq::gt(&images[j]));
        !fm_feasible(sys)
    })
}

/// `Σ c_i g_i = 0` in the variables `c`.
fn combination_system(images: &[Vec<i64>], rank: usize) -> Vec<Ineq> {
    (0..rank).flat_map(|row| eq_pair(images.iter().map(|g| g[row]).collect())).collect()
}

fn unit(k: usize, j: usize) -> Vec<i64> {
    let mut e = vec![0; k];
    e[j] = 1;
    e
}

/// Unstable via the relative interior: some combination of the generators
/// with all coefficients positive vanishes.
pub fn unstable_by_relative_interior(images: &[Vec<i64>], rank: usize) -> bool {
    let k = images.len();
    if k == 0 {
        return true;
    }
    let mut sys = combination_system(images, rank);
    sys.extend((0..k).map(|j| Ineq::gt(&unit(k, j))));
    fm_feasible(sys)
}

/// Unstable via faces: for every generator, some vanishing nonnegative
/// combination uses it, so the kernel meets no proper face only.
pub fn unstable_by_faces(images: &[Vec<i64>], rank: usize) -> bool {
    let k = images.len();
    (0..k).all(|j| {
        let mut sys = combination_system(images, rank);
        sys.extend((0..k).map(|i| Ineq::ge(&unit(k, i))));
        sys.push(Ineq::gt(&unit(k, j)));
        fm_feasible(sys)
    })
}

pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .filter(|&j| m[0][j] != 0)
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors `d_k / d_{k-1}`, where `d_k` is the gcd of the `k x k`
/// minors; the list stops at the rank.
pub fn invariant_factors_by_minors(rows: &[Vec<i64>], ncols: usize) -> Vec<BigInt> {
    let nrows = rows.len();
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=nrows.min(ncols) {
        let mut g = BigInt::zero();
        for r in subsets(nrows, k) {
            for c in subsets(ncols, k) {
                let minor: Vec<Vec<i128>> = r.iter().map(|&i| c.iter().map(|&j| i128::from(rows[i][j])).collect()).collect();
                g = g.gcd(&BigInt::from(det(&minor)));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// The unique rational solution `c = num / den` of `U c = q` for `U` with
/// independent columns, if one exists.
pub fn solve_independent(u: &[Vec<i64>], q: &[i64]) -> Option<(Vec<i128>, i128)> {
    let k = u.first().map_or(0, Vec::len);
    let d = u.len();
    let rows = subsets(d, k).into_iter().find(|r| {
        let m: Vec<Vec<i128>> = r.iter().map(|&i| u[i].iter().map(|&x| i128::from(x)).collect()).collect();
        det(&m) != 0
    })?;
    let sub: Vec<Vec<i128>> = rows.iter().map(|&i| u[i].iter().map(|&x| i128::from(x)).collect()).collect();
    let den = det(&sub);
    let num: Vec<i128> = (0..k)
        .map(|j| {
            let mut m = sub.clone();
            for (row, &i) in m.iter_mut().zip(&rows) {
                row[j] = i128::from(q[i]);
            }
            det(&m)
        })
        .collect();
    let consistent = (0..d).all(|i| (0..k).map(|j| i128::from(u[i][j]) * num[j]).sum::<i128>() == den * i128::from(q[i]));
    consistent.then_some((num, den))
}

/// Whether `q` is in the simplicial cone with independent generators `u`.
pub fn in_simplicial_cone(u: &[Vec<i64>], q: &[i64]) -> bool {
    match solve_independent(u, q) {
        Some((num, den)) => num.iter().all(|&c| c * den.signum() >= 0),
        None => false,
    }
}

pub fn points_of_height(dim: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out.into_iter().flat_map(|p| (-h..=h).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    out
}

pub fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Brute force: `m` (rows) is a bijection from the lattice points of the
/// simplicial cone on the columns of `rays` onto those of the simplicial
/// cone on the columns of `target_rays`, tested on all points of height at
/// most `h`. `m` must be injective on the span of `rays`.
pub fn monoid_bijection_on_box(m: &[Vec<i64>], rays: &[Vec<i64>], target_rays: &[Vec<i64>], h: i64) -> bool {
    let d = rays.len();
    let d2 = m.len();
    let k = rays.first().map_or(0, Vec::len);
    let image_rays: Vec<Vec<i64>> =
        (0..d2).map(|i| (0..k).map(|j| (0..d).map(|l| m[i][l] * rays[l][j]).sum()).collect()).collect();
    let mut seen = std::collections::BTreeSet::new();
    for p in points_of_height(d, h) {
        if in_simplicial_cone(rays, &p) {
            let q = mat_vec(m, &p);
            if !in_simplicial_cone(target_rays, &q) || !seen.insert(q) {
                return false;
            }
        }
    }
    points_of_height(d2, h).into_iter().filter(|q| in_simplicial_cone(target_rays, q)).all(|q| {
        let Some((num, den)) = solve_independent(&image_rays, &q) else { return false };
        let nonneg = num.iter().all(|&c| c * den.signum() >= 0);
        let integral = (0..d).all(|i| (0..k).map(|j| i128::from(rays[i][j]) * num[j]).sum::<i128>() % den == 0);
        nonneg && integral
    })
}
