//! The group `G_β` of small stacky fans, including non-strict ones.

use std::fmt::Write;

use stackyfan::fgab::FgAbGroup;
use stackyfan::polyhedral::Fan;
use stackyfan::stacky::{gbeta, StackyFan};
use stackyfan::zlinalg::{zvec, ZVec};

fn images(v: &[&[i64]]) -> Vec<ZVec> {
    v.iter().map(|x| zvec(x)).collect()
}

pub fn run_example() -> String {
    let quadrant = Fan::affine_space(2);
    let punctured = Fan::from_i64(2, &[&[&[1, 0]], &[&[0, 1]]]).unwrap();
    let cases = [
        ("A1 datum", StackyFan::new(quadrant.clone(), FgAbGroup::free(2), &images(&[&[1, 0], &[1, 2]]))),
        ("A1 x [A1/G_m]", StackyFan::new(quadrant.clone(), FgAbGroup::free(1), &images(&[&[1], &[0]]))),
        ("P1", StackyFan::new(punctured.clone(), FgAbGroup::free(1), &images(&[&[1], &[-1]]))),
        ("line with doubled origin", StackyFan::new(punctured.clone(), FgAbGroup::free(1), &images(&[&[1], &[1]]))),
        ("[A1/mu_2]", StackyFan::new(Fan::affine_space(1), FgAbGroup::free(1), &images(&[&[2]]))),
        (
            "weighted projective stack P(6,4)",
            StackyFan::new(punctured, FgAbGroup::new(1, vec![2.into()]).unwrap(), &images(&[&[2, 1], &[-3, 0]])),
        ),
        ("B(G_m x mu_3)", StackyFan::new(Fan::trivial(0), FgAbGroup::new(1, vec![3.into()]).unwrap(), &[])),
    ];
    let mut out = String::new();
    for (name, sf) in cases {
        let g = gbeta(&sf.unwrap());
        let _ = writeln!(out, "{name}: G_beta = {}, {}", g.group_name(), g.g1);
    }
    out
}

fn main() {
    print!("{}", run_example());
}
