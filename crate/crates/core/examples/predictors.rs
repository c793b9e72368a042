//! Predictor formulas on their own: li, the single and pair main terms, and
//! the Gaussian lattice-sum identity behind the pair asymptotics.

use geodesic_census::asymptotics::{
    a_weight, gaussian_convolution_check, li, pair_main_term, ps_main_term, r2_main_term, sharp_local_term,
    AsymptoticModel,
};
use geodesic_census::surface_group::{HomologyVector, NormKind};

fn run() -> geodesic_census::Result<()> {
    for x in [2.0, 10.0, 1e3, 1e6, 1e12] {
        println!("li({x:e}) = {:.10}, li(x) log x / x = {:.5}", li(x)?, li(x)? * f64::ln(x) / x);
    }
    let m = AsymptoticModel::default_for_genus(2);
    let zero = HomologyVector::zero(2);
    let e1 = HomologyVector::unit(2, 0);
    let x = 30f64.exp();
    println!("sigma^2 = {:.6}", m.sigma2);
    println!("ps main term   {:.6e}", ps_main_term(&m, x)?);
    println!("sharp local    {:.6e} (beta = 0), {:.6e} (beta = e1)", sharp_local_term(&m, &zero, x)?, sharp_local_term(&m, &e1, x)?);
    println!("A weight       {:.6e}", a_weight(&m, &zero, x)?);
    let pm = pair_main_term(&m, &zero, x, x)?;
    let thm = 0.25 * x * x / 30f64.powi(4);
    println!("pair main term {pm:.6e} vs x^2/(4 log^4 x) = {thm:.6e}");
    let r2 = r2_main_term(&m, &e1, x, x / 7.0)?;
    println!("pair from R2   {:.6e} vs {:.6e}", r2 * (x * x / 7.0).sqrt() / (16.0 * x.ln() * (x / 7.0).ln()), pair_main_term(&m, &e1, x, x / 7.0)?);
    for w in [5.0, 10.0, 20.0] {
        let c = gaussian_convolution_check(&m, &e1, 50.0, 50.0, w, NormKind::Sum);
        println!("lattice sum, window {w:>4}: lhs {:.8} rhs {:.8} rel_err {:.2e}", c.lhs, c.rhs, c.rel_err);
    }
    Ok(())
}

pub fn run_example() {
    run().unwrap();
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
