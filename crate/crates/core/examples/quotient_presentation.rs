//! `[X_Σ / G_β]` for stacky fans whose fan lives in the positive orthant.

use std::fmt::Write;

use stackyfan::fgab::FgAbGroup;
use stackyfan::polyhedral::{Cone, Fan};
use stackyfan::stacky::{present_quotient, StackyFan};
use stackyfan::zlinalg::zvec;

pub fn run_example() -> String {
    let mut out = String::new();
    // P^2 through its Cox datum
    let cones = vec![Cone::coordinate(3, &[0, 1]), Cone::coordinate(3, &[1, 2]), Cone::coordinate(3, &[0, 2])];
    let sf = StackyFan::new(Fan::new(3, cones), FgAbGroup::free(2), &[zvec(&[1, 0]), zvec(&[0, 1]), zvec(&[-1, -1])])
        .unwrap();
    let q = present_quotient(&sf).unwrap();
    let _ = writeln!(out, "{q}");
    let _ = writeln!(out, "irrelevant monomials: {:?}", q.irrelevant_monomials);

    // the same beta with fewer cones is an open substack
    let smaller = sf.with_fan(Fan::new(3, vec![Cone::coordinate(3, &[0, 1])])).unwrap();
    let _ = writeln!(out, "{}", present_quotient(&smaller).unwrap());

    // G_m acting trivially stays visible in the group
    let sf = StackyFan::new(Fan::affine_space(1), FgAbGroup::free(2), &[zvec(&[1, 0])]).unwrap();
    let _ = writeln!(out, "{}", present_quotient(&sf).unwrap());
    out
}

fn main() {
    print!("{}", run_example());
}
