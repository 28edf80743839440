//! Writes SVG pictures of rank-2 stacky fans into a temporary directory.

use std::fmt::Write;
use std::path::PathBuf;

use stackyfan::cli::render_fan_svg;
use stackyfan::constructions::fantastack;
use stackyfan::polyhedral::Fan;
use stackyfan::stacky::StackyFan;
use stackyfan::zlinalg::zvec;

pub fn run_example() -> String {
    let mut out = String::new();
    let dir: PathBuf = std::env::temp_dir().join("stackyfan-pictures");
    std::fs::create_dir_all(&dir).unwrap();
    let a1 = Fan::from_i64(2, &[&[&[1, 0], &[1, 2]]]).unwrap();
    let rooted = fantastack(&a1, &[zvec(&[2, 0]), zvec(&[1, 2])]).unwrap().stacky_fan;
    let p2 = Fan::from_i64(2, &[&[&[1, 0], &[0, 1]], &[&[0, 1], &[-1, -1]], &[&[-1, -1], &[1, 0]]]).unwrap();
    for (name, sf) in [("a1_rooted", rooted), ("p2", StackyFan::toric_variety(p2))] {
        let svg = render_fan_svg(&sf).unwrap();
        let path = dir.join(format!("{name}.svg"));
        std::fs::write(&path, &svg).unwrap();
        let _ = writeln!(out, "{}: {} bytes", path.display(), svg.len());
        let _ = writeln!(out, "  {name}: {} bytes, {} cones, {} dots", svg.len(), svg.matches("<polygon").count(), svg.matches("<text").count());
    }
    out
}

fn main() {
    print!("{}", run_example());
}
