// f-polynomials of the nerve of a right-angled closure and of links of
// its simplices, by family sums, checked against a direct clique count.

use std::error::Error;

use coxkit::diagram::parse_file;
use coxkit::fixtures::EXAMPLE_87;
use coxkit::nerve::{brute_force_nerve, enumerate_sigma, f_closure, f_link, parse_link_spec, per_generator_partition};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // Small case: B3 closes to three commuting reflections.
    let b3 = parse_file("node s1\nnode s2\nnode s3\nedge s1 s2 4\nedge s2 s3 3\nT s1\n")?.diagram;
    let t = b3.t_set().ok_or("no T")?;
    let f = f_closure(&b3, t, &b3.partition())?;
    let brute = brute_force_nerve(&b3, t, &b3.partition(), 64)?;
    println!("B3: f = {} (clique count {})", f.poly, brute.poly);

    let d = parse_file(EXAMPLE_87)?.diagram;
    let t = d.t_set().ok_or("no T")?;
    println!("{} families", enumerate_sigma(&d, t)?.len());
    let f2 = f_closure(&d, t, &per_generator_partition(&d, t))?;
    println!("f(t1, t2) = {}", f2.poly);
    let f = f_closure(&d, t, &d.partition())?;
    println!("f(t, t) coefficients: {:?}", f.coefficients());

    for spec in ["t1:1,t2:3", "t2:2"] {
        let sigma = parse_link_spec(&d, t, spec)?;
        let fl = f_link(&d, t, &d.partition(), &sigma)?;
        println!("link of {spec}: {}", fl.poly);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
