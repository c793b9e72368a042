//! Enumerate the Bolza census to a word-length bound and print a summary.
//!
//!     cargo run --release --example build_census -- 6

use std::time::Instant;

use geodesic_census::census::enumerate;
use geodesic_census::hyperbolic::Representation;

fn run(max_len: usize) -> geodesic_census::Result<()> {
    let rep = Representation::bolza(128)?;
    let t = Instant::now();
    let census = enumerate(&rep, max_len)?;
    println!("classes: {} in {:.2?}", census.len(), t.elapsed());
    for (wl, n) in census.counts_by_word_length().iter().enumerate().skip(1) {
        let min = census
            .classes()
            .iter()
            .filter(|c| c.word_length == wl)
            .map(|c| c.length_f64())
            .fold(f64::INFINITY, f64::min);
        println!("  word length {wl:2}: {n:9} classes, shortest {min:.6}");
    }
    println!("completeness length: {}", census.completeness_length()?);
    Ok(())
}

pub fn run_example() {
    run(3).unwrap();
}

#[allow(dead_code)]
fn main() {
    let max_len = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(5);
    if let Err(e) = run(max_len) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
