// Recomputes every value of the bundled ten-generator example and prints
// the check table (`coxkit example` does the same from the command line).

use std::error::Error;

use coxkit::cli::{cmd_example, RouteChoice};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let report = cmd_example(None, RouteChoice::Both)?;
    println!("{}", report.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
