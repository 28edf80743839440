//! Smith and Hermite forms, kernels and cokernels over the integers.

use std::fmt::Write;

use stackyfan::zlinalg::{cokernel_presentation, hermite_rows, kernel_basis, saturate, snf, IntMatrix};

pub fn run_example() -> String {
    let mut out = String::new();
    let m = IntMatrix::from_rows(3, &[[2, 4, 4], [-6, 6, 12], [10, -4, -16]]);
    let d = snf(&m);
    let _ = writeln!(out, "M = {m}");
    let _ = writeln!(out, "invariant factors: {:?}", d.invariant_factors.iter().map(ToString::to_string).collect::<Vec<_>>());
    // U M V = S, with both transforms unimodular
    assert_eq!(&(&d.u * &m) * &d.v, d.s);
    let _ = writeln!(out, "U M V = {}", d.s);
    let _ = writeln!(out, "Hermite form of the rows: {}", hermite_rows(&m));

    let n = IntMatrix::from_rows(3, &[[1, 1, 1]]);
    let _ = writeln!(out, "kernel of {n}: {}", kernel_basis(&n));

    // the span of (2, 2) is not saturated in Z^2
    let v = IntMatrix::from_rows(1, &[[2], [2]]);
    let _ = writeln!(out, "saturation of span (2,2): {}", saturate(&v));

    let c = cokernel_presentation(&IntMatrix::from_rows(2, &[[1, 0], [1, 2]]));
    let _ = writeln!(out, "Z^2 / <(1,1),(0,2)> = {}, projection {}", c.group, c.projection);
    out
}

fn main() {
    print!("{}", run_example());
}
