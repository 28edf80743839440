//! Deciding and constructing good moduli spaces of toric stacks.

use std::fmt::Write;

use stackyfan::constructions::{fantastack, gms_check, gms_construct, GmsResult};
use stackyfan::fgab::FgAbGroup;
use stackyfan::polyhedral::Fan;
use stackyfan::stacky::{StackyFan, StackyMorphism};
use stackyfan::zlinalg::{zvec, ZVec};

fn images(v: &[&[i64]]) -> Vec<ZVec> {
    v.iter().map(|x| zvec(x)).collect()
}

fn summary(r: &GmsResult) -> String {
    match (&r.failing_condition, &r.gms_fan) {
        (Some(c), _) => format!("no, condition {c} fails"),
        (None, Some(f)) => format!("yes, fan {f} on Z^{}", f.ambient_rank()),
        (None, None) => format!("yes, tau = {}", r.tau.as_ref().unwrap()),
    }
}

pub fn run_example() -> String {
    let mut out = String::new();
    let point = StackyFan::toric_variety(Fan::trivial(0));

    let quadrant = StackyFan::new(Fan::affine_space(2), FgAbGroup::free(1), &images(&[&[1], &[-1]])).unwrap();
    let m = StackyMorphism::from_images(quadrant.clone(), point.clone(), &images(&[&[], &[]]), &images(&[&[]])).unwrap();
    let _ = writeln!(out, "[A^2/G_m] -> point: {}", summary(&gms_check(&m).unwrap()));

    let p1 = Fan::from_i64(1, &[&[&[1]], &[&[-1]]]).unwrap();
    let p1_mod_gm = StackyFan::new(p1, FgAbGroup::free(0), &images(&[&[]])).unwrap();
    let m = StackyMorphism::from_images(p1_mod_gm.clone(), point, &images(&[&[]]), &[]).unwrap();
    let _ = writeln!(out, "[P^1/G_m] -> point: {}", summary(&gms_check(&m).unwrap()));

    let a1 = Fan::from_i64(2, &[&[&[1, 0], &[1, 2]]]).unwrap();
    let f = fantastack(&a1, &images(&[&[1, 0], &[1, 2]])).unwrap();
    let _ = writeln!(out, "{}: {}", f.presentation, summary(&gms_construct(&f.stacky_fan).unwrap()));

    let punctured = Fan::from_i64(2, &[&[&[1, 0]], &[&[0, 1]]]).unwrap();
    let line = StackyFan::new(punctured, FgAbGroup::free(1), &images(&[&[1], &[1]])).unwrap();
    let _ = writeln!(out, "line with doubled origin: {}", summary(&gms_construct(&line).unwrap()));
    let _ = writeln!(out, "[P^1/G_m]: {}", summary(&gms_construct(&p1_mod_gm).unwrap()));
    let _ = writeln!(out, "[A^2/G_m]: {}", summary(&gms_construct(&quadrant).unwrap()));
    out
}

fn main() {
    print!("{}", run_example());
}
