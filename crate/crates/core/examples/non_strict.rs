//! Non-strict stacky fans: torsion in `N` and infinite cokernels.

use std::fmt::Write;

use stackyfan::fgab::FgAbGroup;
use stackyfan::polyhedral::Fan;
use stackyfan::stacky::{gbeta, present_quotient, reduce_nonstrict, split_torus_factor, StackyFan};
use stackyfan::zlinalg::zvec;

pub fn run_example() -> String {
    let mut out = String::new();
    let punctured = Fan::from_i64(2, &[&[&[1, 0]], &[&[0, 1]]]).unwrap();
    let n = FgAbGroup::new(1, vec![2.into()]).unwrap();
    let sf = StackyFan::new(punctured, n, &[zvec(&[2, 1]), zvec(&[-3, 0])]).unwrap();
    let r = reduce_nonstrict(&sf);
    let q = present_quotient(&r.strict).unwrap().with_fixed_coordinates(r.substack_coordinates.clone());
    let _ = writeln!(out, "P(6,4) as a closed substack: {q}");
    // the group does not change
    let _ = writeln!(out, "G_beta before: {}, after: {}", gbeta(&sf).group_name(), gbeta(&r.strict).group_name());

    // beta = (1, 0): Z -> Z^2 leaves a B G_m factor
    let sf = StackyFan::new(Fan::affine_space(1), FgAbGroup::free(2), &[zvec(&[1, 0])]).unwrap();
    let s = split_torus_factor(&sf);
    let _ = writeln!(
        out,
        "A^1 x BG_m: B G_m rank {}, reduced target {}, reduced stack {}",
        s.bg_m_rank,
        s.reduced.target(),
        present_quotient(&s.reduced).unwrap()
    );
    out
}

fn main() {
    print!("{}", run_example());
}
