//! Canonical stacks as stacky resolutions, and Cox constructions.

use std::fmt::Write;

use stackyfan::constructions::{canonical_stack, cox_presentation, is_isomorphism};
use stackyfan::polyhedral::Fan;
use stackyfan::stacky::{present_quotient, StackyFan};

pub fn run_example() -> String {
    let mut out = String::new();
    let a1 = StackyFan::toric_variety(Fan::from_i64(2, &[&[&[1, 0], &[1, 2]]]).unwrap());
    let c = canonical_stack(&a1);
    let _ = writeln!(out, "canonical stack over the A1 singularity: {}", present_quotient(&c.stacky_fan).unwrap());
    let _ = writeln!(out, "  Phi = {}", c.morphism.lattice_map());
    let _ = writeln!(out, "  isomorphism onto the base: {}", is_isomorphism(&c.morphism).unwrap().is_isomorphism);

    let square = StackyFan::toric_variety(Fan::from_i64(3, &[&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]]).unwrap());
    let c = canonical_stack(&square);
    let _ = writeln!(out, "canonical stack over the cone on a square: {}", present_quotient(&c.stacky_fan).unwrap());
    let _ = writeln!(out, "  rays in coordinate order: {:?}", c.rays.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>());

    let p2 = Fan::from_i64(2, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, -1]], &[&[-1, -1], &[1, 0]]]).unwrap();
    let _ = writeln!(out, "Cox construction of P^2: {}", present_quotient(&cox_presentation(&p2)).unwrap());
    let p1 = Fan::from_i64(1, &[&[&[1]], &[&[-1]]]).unwrap();
    let c = canonical_stack(&StackyFan::toric_variety(p1));
    let _ = writeln!(out, "P^1 is its own canonical stack: {}", is_isomorphism(&c.morphism).unwrap().is_isomorphism);
    out
}

fn main() {
    print!("{}", run_example());
}
