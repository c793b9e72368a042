//! Sharded enumeration, merging, and the on-disk cache.
//!
//!     cargo run --release --example sharded_cache -- 6 4

use geodesic_census::census::{census_file_name, enumerate, enumerate_shard, load_for, merge, save};
use geodesic_census::hyperbolic::Representation;

fn run(max_len: usize, shards: usize) -> geodesic_census::Result<()> {
    let rep = Representation::bolza(128)?;
    let mut merged = None;
    for s in 0..shards {
        let part = enumerate_shard(&rep, max_len, s, shards, 0.0)?;
        println!("shard {s}/{shards}: {} classes", part.len());
        merged = Some(match merged {
            None => part,
            Some(acc) => merge(&acc, &part)?,
        });
    }
    let merged = merged.expect("at least one shard");
    let whole = enumerate(&rep, max_len)?;
    println!("merged {} classes, equal to unsharded run: {}", merged.len(), merged == whole);
    let dir = std::env::temp_dir().join("geodesic-census-example");
    std::fs::create_dir_all(&dir).map_err(|e| geodesic_census::Error::Io { path: dir.clone(), source: e })?;
    let path = dir.join(census_file_name(&rep, max_len));
    save(&merged, &path)?;
    let back = load_for(&path, &rep)?;
    println!("saved to {} and reloaded: equal = {}", path.display(), back == merged);
    Ok(())
}

pub fn run_example() {
    run(3, 3).unwrap();
}

#[allow(dead_code)]
fn main() {
    let mut a = std::env::args().skip(1).map(|s| s.parse().ok());
    let l = a.next().flatten().unwrap_or(5);
    let s = a.next().flatten().unwrap_or(4);
    if let Err(e) = run(l, s) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
