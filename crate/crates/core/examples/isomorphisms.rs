//! When does a morphism of stacky fans induce an isomorphism of stacks?

use std::fmt::Write;

use stackyfan::constructions::is_isomorphism;
use stackyfan::fgab::FgAbGroup;
use stackyfan::polyhedral::Fan;
use stackyfan::stacky::{StackyFan, StackyMorphism};
use stackyfan::zlinalg::{zvec, ZVec};

fn images(v: &[&[i64]]) -> Vec<ZVec> {
    v.iter().map(|x| zvec(x)).collect()
}

pub fn run_example() -> String {
    let mut out = String::new();
    // [(A^2 - 0) / G_m] and P^1 are different stacky fans for the same stack
    let p1 = StackyFan::toric_variety(Fan::from_i64(1, &[&[&[1]], &[&[-1]]]).unwrap());
    let punctured = Fan::from_i64(2, &[&[&[1, 0]], &[&[0, 1]]]).unwrap();
    let cox = StackyFan::new(punctured, FgAbGroup::free(1), &images(&[&[1], &[-1]])).unwrap();
    let m = StackyMorphism::from_images(cox, p1, &images(&[&[1], &[-1]]), &images(&[&[1]])).unwrap();
    let v = is_isomorphism(&m).unwrap();
    let _ = writeln!(out, "Cox construction -> P^1: isomorphism {}", v.is_isomorphism);

    // folding the quadrant onto a ray is bijective on no monoid
    let src = StackyFan::new(Fan::affine_space(2), FgAbGroup::free(1), &images(&[&[1], &[1]])).unwrap();
    let tgt = StackyFan::toric_variety(Fan::affine_space(1));
    let m = StackyMorphism::from_images(src, tgt, &images(&[&[1], &[1]]), &images(&[&[1]])).unwrap();
    let v = is_isomorphism(&m).unwrap();
    let _ = writeln!(
        out,
        "[A^2/G_m] -> A^1: isomorphism {}, fails {} at {}",
        v.is_isomorphism,
        v.failing_condition.unwrap(),
        v.witness.unwrap()
    );

    // doubling the lattice changes the group
    let a1 = StackyFan::toric_variety(Fan::affine_space(1));
    let doubled = StackyFan::new(Fan::affine_space(1), FgAbGroup::free(1), &images(&[&[2]])).unwrap();
    let m = StackyMorphism::from_images(doubled, a1, &images(&[&[2]]), &images(&[&[1]])).unwrap();
    let v = is_isomorphism(&m).unwrap();
    let _ = writeln!(out, "[A^1/mu_2] -> A^1: isomorphism {}, fails {}", v.is_isomorphism, v.failing_condition.unwrap());
    out
}

fn main() {
    print!("{}", run_example());
}
