//! Load a representation from a TOML config. The config is generated here
//! from the Bolza preset's matrices written out to 40 digits, then validated
//! and used for a small census.

use geodesic_census::census::enumerate;
use geodesic_census::hyperbolic::Representation;
use geodesic_census::surface_group::Letter;

fn config_text(rep: &Representation) -> String {
    let mut s = format!("genus = {}\nname = \"bolza-copy\"\ntolerance = 1e-20\n", rep.genus());
    for code in (0..4 * rep.genus() as u8).step_by(2) {
        let m = rep.image(Letter::from_code(code));
        let e: Vec<String> = (0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| format!("\"{}\"", m.entry(i, j).to_decimal(40)))
            .collect();
        s += &format!("\n[[generators]]\nlabel = \"{}\"\nentries = [{}]\n", Letter::from_code(code), e.join(", "));
    }
    s
}

fn run(max_len: usize) -> geodesic_census::Result<()> {
    let preset = Representation::bolza(128)?;
    let text = config_text(&preset);
    println!("{text}");
    let rep = Representation::from_config_str(&text, 128)?;
    let a = enumerate(&preset, max_len)?;
    let b = enumerate(&rep, max_len)?;
    let same = a.classes().iter().zip(b.classes()).all(|(x, y)| {
        x.canonical == y.canonical && (x.length_f64() - y.length_f64()).abs() < 1e-30 + 1e-25 * x.length_f64()
    });
    println!("{} classes each; canonical words and lengths agree: {same}", a.len());
    println!("ids differ by source: {} vs {}", preset.id(), rep.id());
    Ok(())
}

pub fn run_example() {
    run(2).unwrap();
}

#[allow(dead_code)]
fn main() {
    let l = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    if let Err(e) = run(l) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
