//! Cones, faces, fans, and the unstable cones of a stacky fan.

use std::fmt::Write;

use stackyfan::fgab::FgAbGroup;
use stackyfan::polyhedral::{is_unstable, Cone, ConeLike, Fan};
use stackyfan::stacky::StackyFan;
use stackyfan::zlinalg::zvec;

pub fn run_example() -> String {
    let mut out = String::new();
    let square = Cone::from_i64(3, &[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]).unwrap();
    let _ = writeln!(out, "{square}: dim {}, smooth {}, simplicial {}", square.dim(), square.is_smooth(), square.is_simplicial());
    let _ = writeln!(out, "facet normals: {:?}", square.facet_normals().iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>());
    let _ = writeln!(out, "{} faces", square.faces().len());

    let a1 = Cone::from_i64(2, &[&[1, 0], &[1, 2]]).unwrap();
    let _ = writeln!(out, "{a1} contains (1,1): {}", a1.contains(&zvec(&[1, 1])));

    let p2 = Fan::from_i64(2, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, -1]], &[&[-1, -1], &[1, 0]]]).unwrap();
    let _ = writeln!(out, "P^2: {p2}, valid {}, smooth {}", p2.is_valid(), p2.is_smooth());

    let overlapping = Fan::from_i64(2, &[&[&[1, 0], &[1, 2]], &[&[1, 1], &[0, 1]]]).unwrap();
    for p in &overlapping.validate().problems {
        let _ = writeln!(out, "not a fan: {p}");
    }

    // beta = (1, -1): the quadrant maps onto a line, so it is unstable
    let stacky = StackyFan::new(Fan::affine_space(2), FgAbGroup::free(1), &[zvec(&[1]), zvec(&[-1])])
        .unwrap();
    for c in stacky.fan().cones() {
        let _ = writeln!(out, "{c} unstable: {}", is_unstable(c, stacky.beta()));
    }
    out
}

fn main() {
    print!("{}", run_example());
}
