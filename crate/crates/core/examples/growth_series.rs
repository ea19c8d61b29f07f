// Multi-variable growth series of finite and infinite Coxeter groups.

use std::error::Error;

use coxkit::diagram::{parse_file, Partition};
use coxkit::growth::{growth, integer_taylor};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // Infinite dihedral group, one variable per generator.
    let dinf = parse_file("node t\nnode s\nedge t s inf\nT t\n")?.diagram;
    let g = growth(&dinf, dinf.all(), &dinf.partition())?;
    println!("D∞ ({:?}): {}", g.route, g.series);
    let ordinary = g.series.diagonal("x");
    println!("  word counts: {:?}", integer_taylor(&ordinary, "x", 6)?);

    // B3 with the long-root generator in its own class.
    let b3 = parse_file("node s1\nnode s2\nnode s3\nedge s1 s2 4\nedge s2 s3 3\n")?.diagram;
    let phi = Partition::from_assignment(&["y", "x", "x"]);
    let g = growth(&b3, b3.all(), &phi)?;
    println!("B3 ({:?}): {}", g.route, g.series);

    // Affine A2: a triangle of label-3 edges.
    let a2 = parse_file("node a\nnode b\nnode c\nedge a b 3\nedge b c 3\nedge a c 3\n")?.diagram;
    let g = growth(&a2, a2.all(), &a2.partition())?;
    println!("affine A2 ({:?}): {}", g.route, g.series);
    println!("  word counts: {:?}", integer_taylor(&g.series, "x", 6)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
