//! Matrices, traces and geodesic lengths for words in the Bolza group, with
//! rigorous error bounds.
//!
//!     cargo run --example geodesic_lengths -- 256 a1 a1b1 a1b2

use geodesic_census::hyperbolic::{length_of, Representation};
use geodesic_census::surface_group::{parse_letters, Letter};

fn run(prec: u32, words: &[String]) -> geodesic_census::Result<()> {
    let rep = Representation::bolza(prec)?;
    println!("representation {} (id {}), {prec} bits", rep.name(), rep.id());
    for code in [0u8, 2, 4, 6] {
        let l = Letter::from_code(code);
        let m = rep.image(l);
        println!("  {l} = [[{:.6}, {:.6}], [{:.6}, {:.6}]]", m.to_f64()[0], m.to_f64()[1], m.to_f64()[2], m.to_f64()[3]);
    }
    for s in words {
        let m = rep.word_to_matrix(&parse_letters(s)?)?;
        let ln = length_of(&m)?;
        println!(
            "{s}: trace {} length {} ± {:.1e}, norm {}",
            m.trace().to_decimal(25),
            ln.length.to_decimal(30),
            ln.length.err(),
            ln.norm.to_decimal(20)
        );
    }
    let systole = 2.0 * (1.0 + 2f64.sqrt()).acosh();
    println!("systole 2 arccosh(1 + sqrt 2) = {systole:.15}");
    Ok(())
}

pub fn run_example() {
    run(128, &["a1".into(), "a1b1".into()]).unwrap();
}

#[allow(dead_code)]
fn main() {
    let mut args = std::env::args().skip(1);
    let prec = args.next().and_then(|s| s.parse().ok()).unwrap_or(128);
    let mut words: Vec<String> = args.collect();
    if words.is_empty() {
        words = vec!["a1".into(), "a1b1".into(), "a1b1a2b2".into()];
    }
    if let Err(e) = run(prec, &words) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
