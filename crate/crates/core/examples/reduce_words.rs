// Normal forms, descents and minimal coset representatives.

use std::error::Error;

use coxkit::diagram::parse_file;
use coxkit::words::{parse_word, WordEngine};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // H3: labels 3 and 5.
    let d = parse_file("node a\nnode b\nnode c\nedge a b 3\nedge b c 5\n")?.diagram;
    let fast = WordEngine::new(&d);
    let braid = WordEngine::tits(&d);

    for text in ["a b a b", "c b c b c b c b c b", "a b c a b c a b c", "b c b c b a b"] {
        let w = parse_word(&d, text)?;
        let nf = fast.reduce(&w);
        if braid.reduce(&w) != nf {
            return Err(format!("backends disagree on {text}").into());
        }
        println!("{text:<22} -> {} (length {})", nf.display(&d), nf.len());
    }

    let all = fast.enumerate(d.all(), 1000)?;
    let longest = all.iter().max_by_key(|w| w.len()).ok_or("empty group")?;
    println!("|H3| = {}, longest element {}", all.len(), longest.display(&d));

    let ab = d.subset_of(&["a", "b"]).ok_or("unknown generator")?;
    let reps = fast.min_coset_reps(d.all(), ab)?;
    println!("{} minimal representatives of W / W_{{a,b}}", reps.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
