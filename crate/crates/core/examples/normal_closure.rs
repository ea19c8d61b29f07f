// The normal closure of a parabolic subgroup as a Coxeter group in its
// own right: generators, Coxeter matrix, and rewriting kernel words.

use std::error::Error;

use coxkit::closure::{closure_matrix, emit_diagram, evaluate, rewrite_in_closure};
use coxkit::diagram::parse_file;
use coxkit::words::{parse_word, WordEngine};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let d = parse_file("node s1\nnode s2\nnode s3\nedge s1 s2 4\nedge s2 s3 3\nT s1\n")?.diagram;
    let t = d.t_set().ok_or("no T")?;
    let p = closure_matrix(&d, t, 10_000)?;
    println!("{} generators, right-angled: {}", p.generators.len(), p.right_angled);
    for (i, g) in p.generators.iter().enumerate() {
        let row: Vec<String> = (0..p.generators.len())
            .map(|j| p.label(i, j).map(|l| l.to_string()).unwrap_or_default())
            .collect();
        println!("  {:<10} {}", g.name(&d), row.join(" "));
    }
    if let Some(closure) = emit_diagram(&d, &p) {
        print!("{}", closure.to_dsl());
    }

    // Deleting s1 sends this word to s3 s2 s2 s3 = 1.
    let engine = WordEngine::new(&d);
    let w = parse_word(&d, "s3 s2 s1 s2 s3 s1")?;
    let gens = rewrite_in_closure(&d, t, &w)?;
    let names: Vec<String> = gens.iter().map(|g| g.name(&d)).collect();
    println!("{} = {}", engine.reduce(&w).display(&d), names.join(" "));
    if evaluate(&engine, &gens) != engine.reduce(&w) {
        return Err("rewriting changed the element".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
