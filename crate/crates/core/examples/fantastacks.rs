//! Fantastacks: a fan on `N` together with points `β(e_i)` on its rays.

use std::fmt::Write;

use stackyfan::constructions::fantastack;
use stackyfan::polyhedral::Fan;
use stackyfan::zlinalg::{zvec, ZVec};

fn images(v: &[&[i64]]) -> Vec<ZVec> {
    v.iter().map(|x| zvec(x)).collect()
}

pub fn run_example() -> String {
    let mut out = String::new();
    let a1 = Fan::from_i64(2, &[&[&[1, 0], &[1, 2]]]).unwrap();
    let blowup = Fan::from_i64(2, &[&[&[1, 0], &[1, 1]], &[&[1, 1], &[0, 1]]]).unwrap();
    let square = Fan::from_i64(3, &[&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]]]).unwrap();
    let cases = [
        (Fan::affine_space(1), images(&[&[1], &[1]])),
        (a1.clone(), images(&[&[1, 0], &[1, 2]])),
        (a1.clone(), images(&[&[2, 0], &[1, 2]])),
        (blowup, images(&[&[1, 0], &[1, 1], &[0, 1]])),
        (square, images(&[&[0, 0, 1], &[1, 0, 1], &[1, 1, 1], &[0, 1, 1]])),
    ];
    for (sigma, beta) in &cases {
        let f = fantastack(sigma, beta).unwrap();
        let _ = writeln!(out, "{sigma} -> {}", f.presentation);
    }
    // (1,1) is not on a ray of the A1 cone
    match fantastack(&a1, &images(&[&[1, 0], &[1, 1]])) {
        Ok(_) => unreachable!(),
        Err(e) => {
            let _ = writeln!(out, "rejected: {e}");
        }
    }
    out
}

fn main() {
    print!("{}", run_example());
}
