// Exact real-root counting and approximate complex roots.

use std::error::Error;

use coxkit::numeric::{approx_roots, from_ints, poles_of_growth, sturm_real_count};
use coxkit::series::{MultiPoly, RationalFn};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let f = from_ints(&[1, 2400, 36960, 241920, 846720, 1693440, 1935360, 1175040, 293760]);
    let real = sturm_real_count(&f, None)?;
    let report = approx_roots(&f)?;
    println!("degree {}: {real} real roots, {} non-real", f.degree(), report.nonreal_count());
    for z in &report.roots {
        println!("  {:+.6e} {:+.6e}i", z.re, z.im);
    }

    // Poles of (1+x)^8 / (x^8 - 2392x^7 + ...).
    let num = MultiPoly::univariate_int("x", &[1, 1]).pow(8);
    let den = MultiPoly::univariate_int("x", &[1, -2392, 20188, -70504, 107590, -70504, 20188, -2392, 1]);
    let poles = poles_of_growth(&RationalFn::new(num, den)?)?;
    println!("poles (residual {:.1e}):", poles.residual);
    for z in &poles.roots {
        println!("  {:.4e} {:+.4e}i", z.re, z.im);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
