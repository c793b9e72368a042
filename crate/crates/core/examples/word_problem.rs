//! Word problem, geodesic reduction and conjugacy canonical forms in the
//! genus-2 surface group.
//!
//!     cargo run --example word_problem -- a1b1A1B1B2a1b1A1

use geodesic_census::surface_group::{
    canonicalize, dehn_reduce, dehn_shorten, is_identity, parse_letters, primitive_root, CyclicWord,
    Presentation, Word,
};

fn run(words: &[String]) -> geodesic_census::Result<()> {
    let p = Presentation::new(2)?;
    println!("relator: {}", Word::new(p.relator()));
    for s in words {
        let w = parse_letters(s)?;
        let class = canonicalize(&p, &CyclicWord::new(&w));
        let (root, m) = primitive_root(&class);
        println!("{s}");
        println!("  identity:        {}", is_identity(&p, &w));
        println!("  textbook Dehn:   {}", dehn_shorten(&p, &w));
        println!("  geodesic:        {}", dehn_reduce(&p, &w));
        println!("  conjugacy class: {class} = ({root})^{m}");
    }
    Ok(())
}

pub fn run_example() {
    run(&["a1b1A1B1a2b2A2B2".into(), "a1b1A1B1B2a1b1A1".into(), "b2a1a1A1B2".into()]).unwrap();
}

#[allow(dead_code)]
fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let args = if args.is_empty() {
        vec!["a1b1A1B1B2a1b1A1".to_string(), "a1a1b1a1a1b1".to_string()]
    } else {
        args
    };
    if let Err(e) = run(&args) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
