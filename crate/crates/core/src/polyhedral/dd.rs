//! Integer double description: generators of `{y : a·y >= 0 for all a}`.
//!
//! Fraction-free; every stored vector is kept primitive. Lines are split off
//! first, then rays are combined pairwise across each new hyperplane, keeping
//! only adjacent pairs (algebraic adjacency test).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::zlinalg::{combine, dot, hermite_rows, is_zero_vec, primitive, IntMatrix, ZVec};

/// A polyhedral cone as lineality space plus extreme rays modulo lineality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Generators {
    /// Hermite basis of the lineality space.
    pub lineality: Vec<ZVec>,
    /// Primitive representatives, reduced against the lineality basis and
    /// sorted.
    pub rays: Vec<ZVec>,
}

fn rank_of(vectors: &[&ZVec], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let rows: Vec<ZVec> = vectors.iter().map(|v| (*v).clone()).collect();
    IntMatrix::from_row_vecs(dim, &rows).rank()
}

/// Generators of the cone `{y in Q^dim : a·y >= 0 for every a}`.
pub(crate) fn solve_inequalities(constraints: &[ZVec], dim: usize) -> Generators {
    let mut lineality: Vec<ZVec> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<ZVec> = Vec::new();
    let mut processed: Vec<&ZVec> = Vec::new();

    for a in constraints {
        debug_assert_eq!(a.len(), dim);
        if is_zero_vec(a) {
            continue;
        }
        if let Some(k) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(k);
            let mut s = dot(a, &l0);
            if s.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                s = -s;
            }
            // Project everything onto the hyperplane a·y = 0 along l0; l0
            // itself becomes a ray on the positive side.
            let project = |v: &ZVec| primitive(combine(&s, v, &-dot(a, v), &l0));
            lineality = lineality.iter().map(project).collect();
            rays = rays.iter().map(project).collect();
            rays.push(primitive(l0));
        } else {
            let values: Vec<BigInt> = rays.iter().map(|r| dot(a, r)).collect();
            let pos: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
            let neg: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
            let mut next: Vec<ZVec> = (0..rays.len()).filter(|&i| !values[i].is_negative()).map(|i| rays[i].clone()).collect();
            if !pos.is_empty() && !neg.is_empty() {
                let full_rank = rank_of(&processed, dim);
                for &p in &pos {
                    for &n in &neg {
                        let common: Vec<&ZVec> = processed
                            .iter()
                            .copied()
                            .filter(|c| dot(c, &rays[p]).is_zero() && dot(c, &rays[n]).is_zero())
                            .collect();
                        if common.len() + 2 < full_rank || rank_of(&common, dim) + 2 != full_rank {
                            continue;
                        }
                        let v = combine(&values[p], &rays[n], &-&values[n], &rays[p]);
                        next.push(primitive(v));
                    }
                }
            }
            rays = next;
        }
        processed.push(a);
    }

    let lineality = if lineality.is_empty() {
        lineality
    } else {
        hermite_rows(&IntMatrix::from_row_vecs(dim, &lineality)).row_vecs()
    };
    let mut rays: Vec<ZVec> = rays.into_iter().map(|r| reduce_modulo(r, &lineality)).filter(|r| !is_zero_vec(r)).collect();
    rays.sort();
    rays.dedup();
    Generators { lineality, rays }
}

/// Clears the pivot coordinates of a Hermite lineality basis from `v` by
/// positive rescaling, giving a canonical primitive representative.
fn reduce_modulo(mut v: ZVec, basis: &[ZVec]) -> ZVec {
    for row in basis {
        let Some(c) = row.iter().position(|x| !x.is_zero()) else { continue };
        if v[c].is_zero() {
            continue;
        }
        let (p, x) = (row[c].clone(), v[c].clone());
        v = primitive(combine(&p, &v, &-x, row));
    }
    v
}
