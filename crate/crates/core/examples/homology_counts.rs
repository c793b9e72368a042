//! Prime geodesic counts, homology-restricted counts and the weighted sums
//! R_β, with a comparison against li(x).
//!
//!     cargo run --release --example homology_counts -- 7

use geodesic_census::asymptotics::li;
use geodesic_census::census::enumerate;
use geodesic_census::counting::{Counter, WeightKind};
use geodesic_census::hyperbolic::Representation;
use geodesic_census::surface_group::{HomologyVector, NormKind};

fn run(max_len: usize) -> geodesic_census::Result<()> {
    let rep = Representation::bolza(128)?;
    let census = enumerate(&rep, max_len)?;
    let lstar = census.completeness_length_f64().unwrap_or(0.0);
    let k = Counter::new(&census);
    println!("L = {max_len}, complete up to log x = {lstar:.6}");
    println!("{:>10} {:>6} {:>10} {:>8}", "x", "pi", "li", "ratio");
    for p in 4..=((lstar / std::f64::consts::LN_2).floor() as i32) {
        let x = 2f64.powi(p);
        let pi = k.pi(x);
        println!("{x:>10} {pi:>6} {:>10.3} {:>8.4}", li(x)?, pi as f64 / li(x)?);
    }
    let x = lstar.exp();
    let h = k.histogram(x, WeightKind::Unit);
    println!("homology support at x = {x:.1}: {} classes", h.support_len());
    let zero = HomologyVector::zero(2);
    println!("pi_0 = {}, R_0 = {:.6}", k.pi_beta(&zero, x), k.r_beta(&zero, x));
    let even = k.pi_b(|b| b.coords().iter().all(|c| c % 2 == 0), x);
    println!("even sublattice: {even} of {}", k.pi(x));
    let mut by_norm = std::collections::BTreeMap::new();
    for (b, n) in &h.bins {
        *by_norm.entry(b.norm(NormKind::Sum)).or_insert(0.0) += n;
    }
    for (norm, n) in by_norm {
        println!("  |beta|_1 = {norm}: {n}");
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
