// Parse a diagram, split it into components and name the finite ones.

use std::error::Error;

use coxkit::classify::{finiteness_report, group_order};
use coxkit::diagram::parse_file;

const DIAGRAM: &str = "
node t1
node s2
node s3
node s4
node s5
node s6
node s7
node s8
node b4
node t2
edge t1 s2 inf
edge s2 s3 3
edge s3 s4 3
edge s4 s5 3
edge s5 s6 3
edge s6 s7 3
edge s7 s8 3
edge s4 b4 3
edge s8 t2 4
T t1 t2
";

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let d = parse_file(DIAGRAM)?.diagram;
    let t = d.t_set().ok_or("no T")?;
    let rest = d.all().difference(t);

    let whole = finiteness_report(&d, d.all());
    println!("whole group finite: {}", whole.is_finite);

    for drop in [None, Some("s8"), Some("s2")] {
        let a = match drop {
            Some(name) => rest.difference(d.subset_of(&[name]).ok_or("unknown generator")?),
            None => rest,
        };
        let report = finiteness_report(&d, a);
        let types: Vec<String> = report
            .components
            .iter()
            .filter_map(|c| c.kind.map(|k| k.to_string()))
            .collect();
        println!(
            "S - T{}: {} of order {}",
            drop.map(|n| format!(" - {n}")).unwrap_or_default(),
            types.join(" x "),
            group_order(&d, a)
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
