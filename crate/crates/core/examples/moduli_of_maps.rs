//! Maps into smooth toric stacks as divisors with relations, and closed
//! substacks as gerbes over smaller toric stacks.

use std::fmt::Write;

use stackyfan::constructions::{gerbe_decomposition, moduli_description};
use stackyfan::fgab::FgAbGroup;
use stackyfan::polyhedral::{Cone, Fan};
use stackyfan::stacky::StackyFan;
use stackyfan::zlinalg::{zvec, ZVec};

fn images(v: &[&[i64]]) -> Vec<ZVec> {
    v.iter().map(|x| zvec(x)).collect()
}

pub fn run_example() -> String {
    let mut out = String::new();
    let cones = vec![Cone::coordinate(3, &[0, 1]), Cone::coordinate(3, &[1, 2]), Cone::coordinate(3, &[0, 2])];
    let p2 = StackyFan::new(Fan::new(3, cones), FgAbGroup::free(2), &images(&[&[1, 0], &[0, 1], &[-1, -1]])).unwrap();
    let d = moduli_description(&p2, &[]).unwrap();
    let _ = writeln!(out, "P^2: relations {:?}, empty intersections {:?}", d.linear_relations, d.intersection_relations);

    let a1 = StackyFan::new(Fan::affine_space(2), FgAbGroup::free(2), &images(&[&[1, 0], &[1, 2]])).unwrap();
    let d = moduli_description(&a1, &[]).unwrap();
    let _ = writeln!(out, "[A^2/mu_2]: relations {:?}, empty intersections {:?}", d.linear_relations, d.intersection_relations);

    // the weighted projective stack P(6,4) as the divisor x3 = 0 of a fantastack
    let cones = vec![Cone::coordinate(3, &[0, 2]), Cone::coordinate(3, &[1, 2])];
    let sf = StackyFan::new(Fan::new(3, cones), FgAbGroup::free(2), &images(&[&[2, 1], &[-3, 0], &[0, 2]])).unwrap();
    let g = gerbe_decomposition(&sf, &[2]).unwrap();
    for r in &g.roots {
        let _ = writeln!(out, "root: L{}^{} = K, K exponents {:?} on the base", r.coordinate + 1, r.b, r.k_exponents);
    }
    let _ = writeln!(out, "base: {} with beta {:?}", g.base.fan(), g.base.beta_images());
    out
}

fn main() {
    print!("{}", run_example());
}
