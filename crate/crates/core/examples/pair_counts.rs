//! Homology-difference pair counts π₂^β, R₂^β, P₂^β and the truncated R₂,
//! next to the pair main term.
//!
//!     cargo run --release --example pair_counts -- 7

use geodesic_census::asymptotics::{pair_main_term, AsymptoticModel};
use geodesic_census::census::enumerate;
use geodesic_census::counting::{truncation_window, Counter, PairQuery};
use geodesic_census::hyperbolic::Representation;
use geodesic_census::surface_group::HomologyVector;

fn run(max_len: usize) -> geodesic_census::Result<()> {
    let rep = Representation::bolza(128)?;
    let census = enumerate(&rep, max_len)?;
    let x = census.completeness_length_f64().unwrap_or(3.0).exp();
    let k = Counter::new(&census);
    let model = AsymptoticModel::default_for_genus(2);
    println!("x = {x:.2}, pi(x) = {}, u(x) = {:.3}", k.pi(x), truncation_window(x));
    println!("{:>12} {:>8} {:>12} {:>12} {:>12} {:>10}", "beta", "pi2", "R2", "P2", "R2~", "pi2/main");
    for b in [[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0], [1, 0, 1, 0], [2, 0, 0, 0]] {
        let beta = HomologyVector(b.to_vec());
        let q = PairQuery::symmetric(beta.clone(), x)?;
        let n = k.pair_count(&q);
        println!(
            "{:>12} {n:>8} {:>12.5} {:>12.5} {:>12.5} {:>10.4}",
            beta.to_string(),
            k.r2_beta(&q),
            k.p2_beta(&q),
            k.truncated_r2(&q, truncation_window(x)),
            n as f64 / pair_main_term(&model, &beta, x, x)?
        );
    }
    Ok(())
}

pub fn run_example() {
    run(4).unwrap();
}

#[allow(dead_code)]
fn main() {
    let l = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    if let Err(e) = run(l) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
