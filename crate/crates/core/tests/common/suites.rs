//! Randomized suites, each run for a fixed number of cases from a fixed seed.
//! Every suite reports how often each interesting outcome occurred so that a
//! generator that degenerates to one branch is caught.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use stackyfan::constructions::{fantastack, gms_check, gms_construct, is_isomorphism};
use stackyfan::fgab::{mapping_cone_dual, mapping_cone_dual_via, verify_exact, FgAbGroup, FgAbHom};
use stackyfan::polyhedral::{is_unstable, monoid_iso_on_cone, Cone, ConeLike, Fan};
use stackyfan::stacky::{gbeta, reduce_nonstrict, StackyFan, StackyMorphism};
use stackyfan::zlinalg::{cokernel_presentation, kernel_basis, saturate, snf, solve_integer, IntMatrix, ZVec};

use super::oracles;

pub const CASES: u32 = 500;

pub type Counts = BTreeMap<&'static str, u32>;

fn runner() -> TestRunner {
    let config = Config {
        cases: CASES,
        failure_persistence: None,
        max_global_rejects: 200_000,
        max_local_rejects: 200_000,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Runs `test` on `CASES` inputs; `Ok` carries the outcome tally.
fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value, &mut Counts) -> Result<(), TestCaseError>,
) -> Result<Counts, String> {
    let counts = RefCell::new(Counts::new());
    runner()
        .run(&strategy, |v| {
            let mut local = Counts::new();
            test(v, &mut local)?;
            let mut all = counts.borrow_mut();
            for (k, n) in local {
                *all.entry(k).or_default() += n;
            }
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(counts.into_inner())
}

fn tally(counts: &mut Counts, key: &'static str) {
    *counts.entry(key).or_default() += 1;
}

/// Fails unless each listed outcome occurred at least `min` times.
pub fn require(counts: &Counts, keys: &[&'static str], min: u32) -> Result<(), String> {
    for k in keys {
        let n = counts.get(k).copied().unwrap_or(0);
        if n < min {
            return Err(format!("outcome {k:?} occurred {n} times, expected at least {min}: {counts:?}"));
        }
    }
    Ok(())
}

macro_rules! check {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($fmt)*)));
        }
    };
}

fn big(v: &[i64]) -> ZVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn matrix(rows: &[Vec<i64>], ncols: usize) -> IntMatrix {
    IntMatrix::from_rows(ncols, rows)
}

fn small_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        (Just(c), proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r))
    })
}

fn to_i64(v: &BigInt) -> i64 {
    i64::try_from(v).expect("small entry")
}

// ---------------------------------------------------------------------------

/// `U M V = S` with unimodular `U`, `V`, a divisibility chain agreeing with
/// determinantal divisors, and the derived kernel, solve, saturation and
/// cokernel contracts.
pub fn snf_contracts() -> Result<Counts, String> {
    snf_contracts_with(4, 10)
}

pub fn snf_contracts_with(size: usize, bound: i64) -> Result<Counts, String> {
    let strategy = (small_matrix(size, size, bound), proptest::collection::vec(-bound..=bound, size));
    run(strategy, |((ncols, rows), x), counts| {
        let m = matrix(&rows, ncols);
        let d = snf(&m);
        check!(&(&d.u * &m) * &d.v == d.s, "U M V != S for {rows:?}");
        check!(&d.u * &d.u_inv == IntMatrix::identity(rows.len()), "U U^-1 != 1");
        check!(&d.v * &d.v_inv == IntMatrix::identity(ncols), "V V^-1 != 1");
        check!(d.u.determinant().abs().is_one() && d.v.determinant().abs().is_one(), "not unimodular");
        for i in 0..rows.len() {
            for j in 0..ncols {
                let expected = if i == j && i < d.rank() { d.invariant_factors[i].clone() } else { BigInt::zero() };
                check!(d.s[(i, j)] == expected, "S is not the diagonal of invariant factors");
            }
        }
        for w in d.invariant_factors.windows(2) {
            check!(w[0].is_positive() && (&w[1] % &w[0]).is_zero(), "no divisibility chain");
        }
        let oracle = oracles::invariant_factors_by_minors(&rows, ncols);
        check!(d.invariant_factors == oracle, "factors {:?} but minors give {oracle:?}", d.invariant_factors);

        let k = kernel_basis(&m);
        check!(k.ncols() == ncols - d.rank(), "kernel has the wrong rank");
        check!((&m * &k).is_zero(), "kernel vector not killed");
        for c in k.columns() {
            check!(solve_integer(&m, &vec![BigInt::zero(); rows.len()]).is_some(), "M x = 0 infeasible");
            check!(IntMatrix::from_columns(ncols, &[c]).rank() == 1, "zero kernel vector");
        }
        let xv = big(&x[..ncols]);
        let b = m.mul_vec(&xv);
        let sol = solve_integer(&m, &b);
        check!(sol.as_ref().is_some_and(|s| m.mul_vec(s) == b), "M x = M x0 not solved");

        if d.rank() > 0 {
            let s1 = saturate(&m);
            let s2 = saturate(&s1);
            let same = s1.columns().iter().all(|c| solve_integer(&s2, c).is_some())
                && s2.columns().iter().all(|c| solve_integer(&s1, c).is_some());
            check!(same, "saturation is not idempotent");
            check!(m.columns().iter().all(|c| solve_integer(&s1, c).is_some()), "saturation misses a column");
        }

        let cok = cokernel_presentation(&m);
        check!(cok.group.free_rank() == rows.len() - d.rank(), "cokernel free rank");
        if rows.len() == ncols && d.rank() == ncols {
            let order: BigInt = cok.group.torsion().iter().product();
            check!(order == m.determinant().abs(), "cokernel order != |det|");
            tally(counts, "square nonsingular");
        }
        tally(counts, if d.invariant_factors.iter().any(|f| !f.is_one()) { "torsion" } else { "no torsion" });
        Ok(())
    })
}

// ---------------------------------------------------------------------------

fn unstable_input() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<i64>, usize, bool, Vec<Vec<i64>>)> {
    (1usize..=4, 0usize..=4, 0usize..=3, any::<bool>()).prop_flat_map(|(l, k, r, tors)| {
        (
            Just(l),
            proptest::collection::vec(proptest::collection::vec(-10i64..=10, l), k),
            proptest::collection::vec(-3i64..=3, l),
            Just(r),
            Just(tors),
            proptest::collection::vec(proptest::collection::vec(-10i64..=10, r + usize::from(tors)), l),
        )
    })
}

/// The implemented test for unstable cones against the dual-cone, relative
/// interior and face characterizations.
pub fn unstable_equivalence() -> Result<Counts, String> {
    run(unstable_input(), |(l, raw, lambda, r, tors, beta_cols), counts| {
        // orient every generator into the open half space of `lambda`
        let gens: Vec<Vec<i64>> = raw
            .into_iter()
            .filter_map(|v| {
                let s: i64 = v.iter().zip(&lambda).map(|(a, b)| a * b).sum();
                match s.signum() {
                    1 => Some(v),
                    -1 => Some(v.iter().map(|x| -x).collect()),
                    _ => None,
                }
            })
            .collect();
        let cone = Cone::new(l, &gens.iter().map(|g| big(g)).collect::<Vec<_>>())
            .map_err(|e| TestCaseError::fail(format!("{e}")))?;
        let target = FgAbGroup::new(r, if tors { vec![BigInt::from(3)] } else { Vec::new() }).unwrap();
        let images: Vec<ZVec> = beta_cols.iter().map(|c| big(c)).collect();
        let beta = FgAbHom::from_images(FgAbGroup::free(l), target, &images).unwrap();

        let free_images: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| {
                (0..r).map(|row| g.iter().zip(&beta_cols).map(|(x, col)| x * col[row]).sum()).collect()
            })
            .collect();
        let implemented = is_unstable(&cone, &beta);
        let a = oracles::unstable_by_dual_cone(&free_images, r);
        let b = oracles::unstable_by_relative_interior(&free_images, r);
        let c = oracles::unstable_by_faces(&free_images, r);
        check!(
            implemented == a && a == b && b == c,
            "disagreement on {gens:?} -> {free_images:?}: implemented {implemented}, dual {a}, relint {b}, faces {c}"
        );
        tally(counts, if implemented { "unstable" } else { "not unstable" });
        Ok(())
    })
}

// ---------------------------------------------------------------------------

struct DualCone {
    h0: IntMatrix,
    h1: stackyfan::zlinalg::Cokernel,
}

/// Cohomology of the dual of `Z^{cols} -> Z^{rows}`.
fn dual_cone(m: &IntMatrix) -> DualCone {
    DualCone { h0: kernel_basis(&m.transpose()), h1: cokernel_presentation(&m.transpose()) }
}

fn torsion_choice(i: usize) -> Vec<i64> {
    [vec![], vec![2], vec![3], vec![2, 4]][i].clone()
}

/// For `Φ: L -> L'` with finite cokernel and `β': L' -> N'`, the sequences
/// `0 -> H^0(β') -> H^0(β'Φ) -> 0` and `0 -> H^1(β') -> H^1(β'Φ) -> H^1(Φ) -> 0`
/// of dual mapping-cone cohomology are exact.
pub fn exact_sequences() -> Result<Counts, String> {
    let strategy = (1usize..=4, 0usize..=2, 0usize..4).prop_flat_map(|(a, r, t)| {
        (1..=a).prop_flat_map(move |b| {
            let s = torsion_choice(t).len();
            (
                Just((a, b, r, t)),
                proptest::collection::vec(proptest::collection::vec(-4i64..=4, b), a),
                proptest::collection::vec(proptest::collection::vec(-10i64..=10, r + s), b),
            )
        })
    });
    run(strategy, |((a, b, r, t), phi_cols, beta_cols), counts| {
        let phi_m = IntMatrix::from_columns(b, &phi_cols.iter().map(|c| big(c)).collect::<Vec<_>>());
        if phi_m.rank() != b {
            return Err(TestCaseError::reject("cokernel of Phi is infinite"));
        }
        let n = FgAbGroup::new(r, big(&torsion_choice(t))).unwrap();
        let phi = FgAbHom::new(FgAbGroup::free(a), FgAbGroup::free(b), phi_m.clone()).unwrap();
        let beta_p = FgAbHom::from_images(FgAbGroup::free(b), n.clone(), &beta_cols.iter().map(|c| big(c)).collect::<Vec<_>>())
            .unwrap();
        let composite = phi.then(&beta_p).unwrap();
        let q = n.relation_matrix();
        let s = q.ncols();

        let c_bp = dual_cone(&beta_p.matrix().hstack(&q));
        // the unreduced lift B'Φ, so that Φ ⊕ id is a chain map
        let c_comp = dual_cone(&(beta_p.matrix() * &phi_m).hstack(&q));
        let c_phi = dual_cone(&phi_m);
        check!(c_phi.h0.ncols() == 0, "H^0 of Phi should vanish");

        // the library computes the same groups
        for (dc, hom) in [(&c_bp, &beta_p), (&c_comp, &composite), (&c_phi, &phi)] {
            let g = mapping_cone_dual(hom).unwrap();
            check!(g.g0_rank == dc.h0.ncols() && g.g1.character_group == dc.h1.group, "mapping cone dual differs");
        }

        let cols: Vec<ZVec> = c_bp
            .h0
            .columns()
            .iter()
            .map(|k| solve_integer(&c_comp.h0, k).ok_or_else(|| TestCaseError::fail("H^0 inclusion fails")))
            .collect::<Result<_, _>>()?;
        let h0_map = FgAbHom::new(
            FgAbGroup::free(c_bp.h0.ncols()),
            FgAbGroup::free(c_comp.h0.ncols()),
            IntMatrix::from_columns(c_comp.h0.ncols(), &cols),
        )
        .unwrap();
        check!(verify_exact(&[h0_map]).unwrap(), "H^0 map is not an isomorphism");

        // (Φ ⊕ id)^T and the projection onto L*
        let lift_t = phi_m.direct_sum(&IntMatrix::identity(s)).transpose();
        let proj = IntMatrix::identity(a).hstack(&IntMatrix::zeros(a, s));
        let f_m = &(&c_comp.h1.projection * &lift_t) * &c_bp.h1.section;
        let g_m = &(&c_phi.h1.projection * &proj) * &c_comp.h1.section;
        let f = FgAbHom::new(c_bp.h1.group.clone(), c_comp.h1.group.clone(), f_m)
            .map_err(|e| TestCaseError::fail(format!("induced H^1 map ill-defined: {e}")))?;
        let g = FgAbHom::new(c_comp.h1.group.clone(), c_phi.h1.group.clone(), g_m)
            .map_err(|e| TestCaseError::fail(format!("induced H^1 map ill-defined: {e}")))?;
        check!(verify_exact(&[f, g]).unwrap(), "H^1 sequence not exact for Phi {phi_cols:?}, beta' {beta_cols:?}");
        tally(counts, if c_phi.h1.group.is_trivial() { "G_Phi trivial" } else { "G_Phi nontrivial" });
        Ok(())
    })
}

// ---------------------------------------------------------------------------

fn row_ops(m: &mut [Vec<i64>], ops: &[(usize, usize, i64)]) {
    let n = m.len();
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i != j {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x += c * y;
            }
        }
    }
}

fn transpose(m: &[Vec<i64>], ncols: usize) -> Vec<Vec<i64>> {
    (0..ncols).map(|j| m.iter().map(|row| row[j]).collect()).collect()
}

fn to_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.row_vecs().iter().map(|r| r.iter().map(to_i64).collect()).collect()
}

/// Two weight systems on the same coordinates are related by an isomorphism
/// of the (equal) character groups: same relations, same index of the image.
fn same_weights(w: &FgAbHom, w2: &FgAbHom) -> bool {
    let kills = |k: &[BigInt], other: &FgAbHom| other.target().is_zero_element(&other.apply(k));
    w.source() == w2.source()
        && w.target() == w2.target()
        && w.kernel_lattice().columns().iter().all(|k| kills(k, w2))
        && w2.kernel_lattice().columns().iter().all(|k| kills(k, w))
        && w.analyze().cokernel == w2.analyze().cokernel
}

fn first_weights(g: &stackyfan::fgab::MappingConeDual, ell: usize) -> FgAbHom {
    let cols: Vec<usize> = (0..ell).collect();
    FgAbHom::new(FgAbGroup::free(ell), g.g1.character_group.clone(), g.g1.weights.select_columns(&cols)).unwrap()
}

type Ops = Vec<(usize, usize, i64)>;

fn ops(len: usize) -> impl Strategy<Value = Ops> {
    proptest::collection::vec((0usize..8, 0usize..8, -2i64..=2), len)
}

/// `G_β` is unchanged by passing to the strict reduction, by changing the
/// presentation of `N`, by changing the lift, and by changing `Σ`.
pub fn quasi_isomorphism_invariance() -> Result<Counts, String> {
    let torsions = [vec![2], vec![3], vec![2, 2], vec![4], vec![2, 6], vec![]];
    let strategy = (1usize..=3, 0usize..=2, 0usize..torsions.len()).prop_flat_map(move |(l, r, t)| {
        let s = torsions[t].len();
        let dim = r + s;
        (
            Just((l, r, torsions[t].clone())),
            proptest::collection::vec(proptest::collection::vec(-10i64..=10, dim), l),
            proptest::collection::vec(proptest::collection::vec(-2i64..=2, l), s),
            proptest::collection::vec(-3i64..=3, l),
            ops(4),
            ops(3),
        )
    });
    run(strategy, |((l, r, tors), beta_cols, x, extra_row, u_ops, v_ops), counts| {
        let n = FgAbGroup::from_cyclic_orders(r, &big(&tors));
        let images: Vec<ZVec> = beta_cols.iter().map(|c| big(c)).collect();
        let sf = StackyFan::new(Fan::affine_space(l), n.clone(), &images).unwrap();
        let g = gbeta(&sf);

        let reduced = reduce_nonstrict(&sf);
        let gr = gbeta(&reduced.strict);
        check!(gr.g0_rank == g.g0_rank && gr.g1.character_group == g.g1.character_group, "reduction changes G_beta");
        check!(same_weights(&first_weights(&g, l), &first_weights(&gr, l)), "reduction changes the weights");

        let trivial = gbeta(&sf.with_fan(Fan::trivial(l)).unwrap());
        check!(trivial == g, "G_beta depends on the fan");

        // another presentation: shift the lift by relations, add a killed
        // generator with an arbitrary lift, then change bases on both sides
        let q = to_rows(&n.relation_matrix());
        let s = n.torsion().len();
        let dim = n.dim();
        let mut lift: Vec<Vec<i64>> = to_rows(&sf.beta().matrix().clone());
        for row in 0..dim {
            for col in 0..l {
                lift[row][col] += (0..s).map(|j| q[row][j] * x[j][col]).sum::<i64>();
            }
        }
        lift.push(extra_row);
        let mut rel: Vec<Vec<i64>> = q.iter().map(|row| [row.clone(), vec![0]].concat()).collect();
        rel.push([vec![0; s], vec![1]].concat());
        row_ops(&mut lift, &u_ops);
        row_ops(&mut rel, &u_ops);
        let mut rel_t = transpose(&rel, s + 1);
        row_ops(&mut rel_t, &v_ops);
        let rel = transpose(&rel_t, dim + 1);
        let alt = mapping_cone_dual_via(&matrix(&lift, l), &matrix(&rel, s + 1)).unwrap();
        check!(alt.g0_rank == g.g0_rank && alt.g1.character_group == g.g1.character_group, "presentation changes G_beta");
        check!(same_weights(&first_weights(&g, l), &first_weights(&alt, l)), "presentation changes the weights");

        tally(counts, if g.g1.character_group.torsion().is_empty() { "torsion-free D(G)" } else { "torsion in D(G)" });
        tally(counts, if g.g0_rank > 0 { "trivial torus factor" } else { "no torus factor" });
        Ok(())
    })
}

// ---------------------------------------------------------------------------

fn target_fans(r: usize) -> Vec<Vec<Vec<Vec<i64>>>> {
    match r {
        1 => vec![vec![vec![vec![1]]], vec![vec![vec![1]], vec![vec![-1]]], vec![vec![vec![-1]]], vec![]],
        _ => vec![
            vec![vec![vec![1, 0], vec![0, 1]]],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![-1, -1]], vec![vec![-1, -1], vec![1, 0]]],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![-1, 0], vec![0, 1]]],
            vec![vec![vec![1, 0], vec![1, 2]]],
            vec![vec![vec![0, 1]]],
            vec![],
            vec![
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![-1, 0], vec![0, 1]],
                vec![vec![-1, 0], vec![0, -1]],
                vec![vec![1, 0], vec![0, -1]],
            ],
        ],
    }
}

fn fan_of(r: usize, cones: &[Vec<Vec<i64>>]) -> Fan {
    Fan::generated_by(r, cones.iter().map(|c| Cone::new(r, &c.iter().map(|v| big(v)).collect::<Vec<_>>()).unwrap()).collect())
}

type FactorSpec = (usize, usize, usize, bool, i64, Vec<Vec<i64>>, u8, bool);

fn factor() -> impl Strategy<Value = FactorSpec> {
    (1usize..=2, 0usize..7, any::<bool>(), 1i64..=2, any::<u8>(), any::<bool>()).prop_flat_map(
        |(n, fan_idx, tors, scale, mask, exact)| {
            (1..=n).prop_flat_map(move |r| {
                let bound: i64 = if exact { 1 } else { 3 };
                (
                    Just((n, r, fan_idx % target_fans(r).len(), tors, scale, mask, exact)),
                    proptest::collection::vec(proptest::collection::vec(-bound..=bound, r + usize::from(tors)), n),
                )
            })
        },
    )
    .prop_map(|((n, r, f, t, s, mask, exact), cols)| {
        // exact factors are meant to be isomorphism candidates
        let (t, s) = if exact { (false, 1) } else { (t, s) };
        let cols = cols.into_iter().map(|c| c[..r + usize::from(t)].to_vec()).collect();
        (n, r, f, t, s, cols, mask, exact)
    })
}

/// `(Σ, β) -> (Σ', s·id)` with `Φ` the free part of `β` and `φ = s·pr`. The
/// source fan is a random set of coordinate cones; `Σ'` is either a fixed fan
/// into which they map, or (`exact`) the fan of their images.
fn build_factor(spec: &FactorSpec) -> Option<StackyMorphism> {
    let (n, r, fan_idx, tors, scale, cols, mask, exact) = spec;
    let (n, r) = (*n, *r);
    let free: Vec<ZVec> = cols.iter().map(|c| big(&c[..r])).collect();
    if IntMatrix::from_columns(r, &free).rank() != r {
        return None;
    }
    let phi = IntMatrix::from_columns(r, &free);
    let fixed_fan = fan_of(r, &target_fans(r)[*fan_idx]);
    let fits = |subset: &[usize]| *exact || fixed_fan.cones().iter().any(|c| subset.iter().all(|&i| c.contains(&free[i])));
    let subsets: Vec<Vec<usize>> =
        (0u32..1 << n).map(|bits| (0..n).filter(|i| bits >> i & 1 == 1).collect::<Vec<_>>()).filter(|s| fits(s)).collect();
    let maximal: Vec<&Vec<usize>> =
        subsets.iter().filter(|s| !subsets.iter().any(|t| t.len() > s.len() && s.iter().all(|i| t.contains(i)))).collect();
    let mut chosen: Vec<Cone> = maximal
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> (i % 8) & 1 == 1 || maximal.len() == 1)
        .map(|(_, s)| Cone::coordinate(n, s))
        .collect();
    if *exact && mask >> 7 & 1 == 1 {
        // the rays only
        chosen = (0..n).map(|i| Cone::coordinate(n, &[i])).collect();
    }
    let source_fan = Fan::generated_by(n, chosen);
    let target_fan = if *exact {
        let images = source_fan.maximal_cones().iter().map(|c| c.image(&phi).to_cone().ok()).collect::<Option<Vec<_>>>()?;
        let fan = Fan::generated_by(r, images);
        fan.is_valid().then_some(fan)?
    } else {
        fixed_fan
    };
    let torsion = if *tors { vec![BigInt::from(2)] } else { Vec::new() };
    let source = StackyFan::new(source_fan, FgAbGroup::new(r, torsion).unwrap(), &cols.iter().map(|c| big(c)).collect::<Vec<_>>())
        .ok()?;
    let s = BigInt::from(*scale);
    let scaled: Vec<ZVec> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { s.clone() } else { BigInt::zero() }).collect())
        .collect();
    let target = StackyFan::new(target_fan, FgAbGroup::free(r), &scaled).unwrap();
    let mut group_images = scaled.clone();
    if *tors {
        group_images.push(vec![BigInt::zero(); r]);
    }
    let m = StackyMorphism::from_images(source, target, &free, &group_images).ok()?;
    m.validate().is_valid().then_some(m)
}

/// Isomorphism and good-moduli-space verdicts of a product morphism are the
/// conjunction of the factors' verdicts.
pub fn product_conjunction() -> Result<Counts, String> {
    run((factor(), factor()), |(s1, s2), counts| {
        let (Some(m1), Some(m2)) = (build_factor(&s1), build_factor(&s2)) else {
            return Err(TestCaseError::reject("degenerate factor"));
        };
        let p = m1.product(&m2);
        check!(p.validate().is_valid(), "product morphism is not valid");
        let iso = |m: &StackyMorphism| is_isomorphism(m).unwrap().is_isomorphism;
        let gms = |m: &StackyMorphism| gms_check(m).unwrap().verdict;
        let (i1, i2, ip) = (iso(&m1), iso(&m2), iso(&p));
        let (g1, g2, gp) = (gms(&m1), gms(&m2), gms(&p));
        check!(ip == (i1 && i2), "isomorphism: factors {i1}, {i2}, product {ip}");
        check!(gp == (g1 && g2), "good moduli space: factors {g1}, {g2}, product {gp}");
        tally(counts, if ip { "iso" } else { "not iso" });
        tally(counts, if gp { "gms" } else { "not gms" });
        if i1 != i2 {
            tally(counts, "iso factors differ");
        }
        if g1 != g2 {
            tally(counts, "gms factors differ");
        }
        Ok(())
    })
}

// ---------------------------------------------------------------------------

fn cross(u: &[i64], v: &[i64]) -> i64 {
    u[0] * v[1] - u[1] * v[0]
}

fn upper(v: &[i64]) -> bool {
    v[1] > 0 || (v[1] == 0 && v[0] > 0)
}

fn primitive_i64(v: Vec<i64>) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    (g != 0).then(|| v.iter().map(|x| x / g).collect())
}

pub type FanSpec = (usize, Vec<Vec<i64>>, u8, Vec<u8>, Vec<(u8, u8)>);

/// A random fan on `Z^1` or `Z^2` plus fantastack images: a multiple of each
/// ray and some further points of the support, at most four in all.
pub fn fantastack_input() -> impl Strategy<Value = FanSpec> {
    (1usize..=2).prop_flat_map(|r| {
        (
            Just(r),
            proptest::collection::vec(proptest::collection::vec(-5i64..=5, r), 1..=4),
            any::<u8>(),
            proptest::collection::vec(1u8..=2, 4),
            proptest::collection::vec((any::<u8>(), 0u8..3), 0..=2),
        )
    })
}

pub fn build_fantastack_data(spec: &FanSpec) -> Option<(Fan, Vec<ZVec>)> {
    let (r, raw, mask, mult, extra) = spec;
    let r = *r;
    let mut rays: Vec<Vec<i64>> = raw.iter().cloned().filter_map(primitive_i64).collect();
    rays.sort();
    rays.dedup();
    // counterclockwise order
    rays.sort_by(|u, v| {
        if r == 1 {
            return u.cmp(v);
        }
        upper(v).cmp(&upper(u)).then_with(|| 0.cmp(&cross(u, v)))
    });
    let k = rays.len();
    let mut cones: Vec<Vec<Vec<i64>>> = Vec::new();
    if r == 2 && k >= 2 {
        for i in 0..k {
            let (u, v) = (&rays[i], &rays[(i + 1) % k]);
            if cross(u, v) > 0 && mask >> i & 1 == 1 {
                cones.push(vec![u.clone(), v.clone()]);
            }
        }
    }
    for (i, ray) in rays.iter().enumerate() {
        if !cones.iter().any(|c| c.contains(ray)) && (mask >> (4 + i) & 1 == 1 || cones.is_empty()) {
            cones.push(vec![ray.clone()]);
        }
    }
    let fan = fan_of(r, &cones);
    let fan_rays: Vec<Vec<i64>> = fan.rays().iter().map(|v| v.iter().map(to_i64).collect()).collect();
    let mut images: Vec<Vec<i64>> = fan_rays
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let m = i64::from(mult[i % 4]);
            if v.iter().all(|x| (x * m).abs() <= 10) { v.iter().map(|x| x * m).collect() } else { v.clone() }
        })
        .collect();
    let maximal = fan.maximal_cones();
    for (which, kind) in extra {
        if images.len() >= 4 {
            break;
        }
        let c = &maximal[usize::from(*which) % maximal.len()];
        let point: Vec<i64> = match kind {
            0 => vec![0; r],
            _ => (0..r).map(|j| c.rays().iter().map(|ray| to_i64(&ray[j])).sum()).collect(),
        };
        if point.iter().all(|x| x.abs() <= 10) {
            images.push(point);
        }
    }
    let images: Vec<ZVec> = images.iter().map(|v| big(v)).collect();
    (IntMatrix::from_columns(r, &images).rank() == r).then_some((fan, images))
}

/// The good moduli space constructed from a fantastack is the toric variety
/// of the fan it was built from.
pub fn fantastack_round_trip() -> Result<Counts, String> {
    run(fantastack_input(), |spec, counts| {
        let Some((fan, images)) = build_fantastack_data(&spec) else {
            return Err(TestCaseError::reject("images do not span"));
        };
        let f = fantastack(&fan, &images).map_err(|e| TestCaseError::fail(format!("{e} for {fan} {images:?}")))?;
        let r = gms_construct(&f.stacky_fan).unwrap();
        check!(r.verdict, "no good moduli space for {fan} with images {images:?}: {:?}", r.failing_condition);
        check!(r.gms_fan.as_ref() == Some(&fan), "constructed {:?} from {fan} with images {images:?}", r.gms_fan);
        tally(counts, if images.len() > fan.rays().len() { "extra images" } else { "only rays" });
        tally(counts, if fan.ambient_rank() == 2 { "rank 2" } else { "rank 1" });
        Ok(())
    })
}

// ---------------------------------------------------------------------------

pub const HEIGHT: i64 = 6;

type MonoidSpec = (usize, Vec<Vec<i64>>, Vec<Vec<i64>>, bool);

fn monoid_input() -> impl Strategy<Value = MonoidSpec> {
    (2usize..=3).prop_flat_map(|d| {
        (1..=d).prop_flat_map(move |k| {
            (
                Just(d),
                proptest::collection::vec(proptest::collection::vec(-1i64..=1, d), k),
                proptest::collection::vec(proptest::collection::vec(-2i64..=2, d), d),
                any::<bool>(),
            )
        })
    })
}

fn columns_to_rows(cols: &[Vec<i64>], d: usize) -> Vec<Vec<i64>> {
    (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

fn independent(cols: &[Vec<i64>], d: usize) -> bool {
    IntMatrix::from_columns(d, &cols.iter().map(|c| big(c)).collect::<Vec<_>>()).rank() == cols.len()
}

/// `monoid_iso_on_cone` against enumeration of the lattice points of bounded
/// height on both sides. Instances whose smallest possible witness of a
/// failure could exceed the height bound are skipped.
pub fn monoid_brute_force() -> Result<Counts, String> {
    run(monoid_input(), |(d, rays, m_rows, widen), counts| {
        if !independent(&rays, d) {
            return Err(TestCaseError::reject("dependent rays"));
        }
        let mut image_rays: Vec<Vec<i64>> = rays.iter().map(|r| oracles::mat_vec(&m_rows, r)).collect();
        if !independent(&image_rays, d) {
            return Err(TestCaseError::reject("not injective on the span"));
        }
        let k = rays.len();
        let widened = widen && k >= 2;
        if widened {
            image_rays[0] = image_rays[0].iter().zip(&image_rays[1]).map(|(a, b)| 2 * a - b).collect();
        }
        let height = |v: &Vec<i64>| v.iter().map(|x| x.abs()).max().unwrap_or(0);
        if image_rays.iter().map(height).sum::<i64>() > HEIGHT {
            return Err(TestCaseError::reject("witness may be too high"));
        }
        let to_cone = |cols: &[Vec<i64>]| Cone::new(d, &cols.iter().map(|c| big(c)).collect::<Vec<_>>()).unwrap();
        let sigma = to_cone(&rays);
        let sigma_prime = to_cone(&image_rays);
        let m = matrix(&m_rows, d);
        let implemented = monoid_iso_on_cone(&m, &sigma, &sigma_prime).unwrap();
        let brute = oracles::monoid_bijection_on_box(
            &m_rows,
            &columns_to_rows(&rays, d),
            &columns_to_rows(&image_rays, d),
            HEIGHT,
        );
        check!(implemented == brute, "{sigma} -> {sigma_prime} under {m_rows:?}: implemented {implemented}, brute {brute}");
        tally(counts, if implemented { "bijective" } else { "not bijective" });
        if widened {
            tally(counts, "widened target");
        }
        Ok(())
    })
}

/// All acceptance suites with the outcomes each must exhibit.
pub fn all() -> Vec<(&'static str, fn() -> Result<Counts, String>, &'static [&'static str])> {
    vec![
        ("SNF contracts", snf_contracts, &["torsion", "no torsion", "square nonsingular"]),
        ("three-way unstable equivalence", unstable_equivalence, &["unstable", "not unstable"]),
        ("dual mapping-cone exact sequences", exact_sequences, &["G_Phi trivial", "G_Phi nontrivial"]),
        (
            "G_beta invariance under reduction and presentation",
            quasi_isomorphism_invariance,
            &["torsion in D(G)", "torsion-free D(G)", "trivial torus factor", "no torus factor"],
        ),
        ("product verdict conjunction", product_conjunction, &["iso", "not iso", "gms", "not gms", "iso factors differ", "gms factors differ"]),
        ("good moduli space of a fantastack", fantastack_round_trip, &["extra images", "only rays", "rank 1", "rank 2"]),
        ("monoid isomorphism vs enumeration", monoid_brute_force, &["bijective", "not bijective", "widened target"]),
    ]
}

/// Runs a suite and checks that each listed outcome occurred at least ten
/// times.
pub fn run_suite(suite: fn() -> Result<Counts, String>, outcomes: &[&'static str]) -> Result<Counts, String> {
    let counts = suite()?;
    require(&counts, outcomes, 10)?;
    Ok(counts)
}
