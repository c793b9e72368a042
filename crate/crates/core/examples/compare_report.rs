//! Census-versus-prediction report with the default model and with the
//! covariance estimated from the census.
//!
//!     cargo run --release --example compare_report -- 8

use geodesic_census::asymptotics::{compare, default_queries, empirical_model, AsymptoticModel};
use geodesic_census::census::enumerate;
use geodesic_census::counting::Counter;
use geodesic_census::hyperbolic::Representation;

fn run(max_len: usize) -> geodesic_census::Result<()> {
    let rep = Representation::bolza(128)?;
    let census = enumerate(&rep, max_len)?;
    let k = Counter::new(&census);
    let report = compare(&k, &AsymptoticModel::default_for_genus(2), &default_queries(&census))?;
    print!("{}", report.to_csv());
    let lstar = census.completeness_length_f64().unwrap_or(0.0);
    match empirical_model(&census, (lstar / 2.0, lstar)) {
        Ok(m) => println!("empirical sigma^2 = {:.4}, N = {:.3}", m.sigma2, m.n),
        Err(e) => println!("no empirical model: {e}"),
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
