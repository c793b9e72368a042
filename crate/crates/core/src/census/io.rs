use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{derived_norm_err, Census, GeodesicClass, LENGTH_DIGITS};
use crate::error::{Error, Result};
use crate::hyperbolic::{Representation, ScalarHP};
use crate::surface_group::{abelianize, primitive_root, CyclicWord, HomologyVector};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "geodesic-census";

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    tool_version: String,
    genus: usize,
    representation: String,
    representation_id: String,
    precision: u32,
    word_length_bound: usize,
    safety_margin: f64,
    classes: usize,
}

/// Conventional cache file name for a representation and bound.
pub fn census_file_name(rep: &Representation, max_len: usize) -> String {
    format!("census-{}-{}-L{max_len}.tsv", rep.name(), rep.id())
}

pub fn save(c: &Census, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(f);
    write_census(c, &mut w).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))
}

/// One header line of JSON after `# `, then one tab-separated record per
/// class: word, word length, length, length error, norm, homology,
/// primitive flag, multiplicity.
pub fn write_census(c: &Census, w: &mut impl Write) -> std::io::Result<()> {
    let header = Header {
        format: MAGIC.to_string(),
        version: FORMAT_VERSION,
        tool_version: c.tool_version.clone(),
        genus: c.genus,
        representation: c.representation_name.clone(),
        representation_id: c.representation_id.clone(),
        precision: c.precision,
        word_length_bound: c.word_length_bound,
        safety_margin: c.safety_margin,
        classes: c.len(),
    };
    writeln!(w, "# {}", serde_json::to_string(&header).expect("header serializes"))?;
    for g in c.classes() {
        writeln!(
            w,
            "{}\t{}\t{}\t{:e}\t{}\t{}\t{}\t{}",
            g.canonical,
            g.word_length,
            g.length.to_decimal(LENGTH_DIGITS),
            g.length.err(),
            g.norm.to_decimal(LENGTH_DIGITS),
            g.homology,
            u8::from(g.primitive),
            g.multiplicity
        )?;
    }
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Census> {
    let path = path.as_ref();
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    read_census(BufReader::new(f))
}

/// Loads and checks that the file was built from `rep`.
pub fn load_for(path: impl AsRef<Path>, rep: &Representation) -> Result<Census> {
    let c = load(path)?;
    if c.representation_id != rep.id() {
        return Err(Error::Format(format!(
            "cache was built for representation {} but {} was requested",
            c.representation_id,
            rep.id()
        )));
    }
    Ok(c)
}

fn bad(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("line {line}: {msg}"))
}

pub fn read_census(r: impl Read) -> Result<Census> {
    let mut lines = BufReader::new(r).lines();
    let first = lines
        .next()
        .ok_or_else(|| bad(1, "empty file"))?
        .map_err(|e| bad(1, e))?;
    let json = first
        .strip_prefix("# ")
        .ok_or_else(|| bad(1, "missing header"))?;
    let h: Header = serde_json::from_str(json).map_err(|e| bad(1, e))?;
    if h.format != MAGIC {
        return Err(bad(1, format!("unknown format {:?}", h.format)));
    }
    if h.version != FORMAT_VERSION {
        return Err(bad(
            1,
            format!("format version {} (expected {FORMAT_VERSION})", h.version),
        ));
    }
    if !(2..=16).contains(&h.genus) || h.precision < 2 {
        return Err(bad(1, "invalid genus or precision"));
    }
    let mut classes = Vec::with_capacity(h.classes);
    for (i, line) in lines.enumerate() {
        let n = i + 2;
        let line = line.map_err(|e| bad(n, e))?;
        classes.push(parse_record(&line, n, &h)?);
    }
    if classes.len() != h.classes {
        return Err(Error::Format(format!(
            "truncated: header announces {} classes, found {}",
            h.classes,
            classes.len()
        )));
    }
    if classes.windows(2).any(|w| w[0].canonical >= w[1].canonical) {
        return Err(Error::Format("records are not sorted and unique".into()));
    }
    let mut c = Census::new(
        h.genus,
        h.representation,
        h.representation_id,
        h.precision,
        h.word_length_bound,
        h.safety_margin,
        classes,
    );
    c.tool_version = h.tool_version;
    Ok(c)
}

fn parse_record(line: &str, n: usize, h: &Header) -> Result<GeodesicClass> {
    let f: Vec<&str> = line.split('\t').collect();
    if f.len() != 8 {
        return Err(bad(n, format!("expected 8 fields, found {}", f.len())));
    }
    let canonical: CyclicWord = f[0].parse().map_err(|e| bad(n, e))?;
    if canonical.to_string() != f[0] {
        return Err(bad(n, "word is not in normalized rotation"));
    }
    let word_length: usize = f[1].parse().map_err(|e| bad(n, e))?;
    let length_err: f64 = f[3].parse().map_err(|e| bad(n, e))?;
    if !(length_err >= 0.0) {
        return Err(bad(n, "negative length error"));
    }
    let length = ScalarHP::new(
        ScalarHP::parse(h.precision, f[2])?.value().clone(),
        length_err,
    );
    let norm_value = ScalarHP::parse(h.precision, f[4])?;
    let norm = ScalarHP::new(
        norm_value.value().clone(),
        derived_norm_err(&norm_value, length_err),
    );
    let homology: HomologyVector = f[5].parse().map_err(|e| bad(n, e))?;
    let primitive = match f[6] {
        "1" => true,
        "0" => false,
        other => return Err(bad(n, format!("bad primitive flag {other:?}"))),
    };
    let multiplicity: usize = f[7].parse().map_err(|e| bad(n, e))?;
    if word_length != canonical.len()
        || homology != abelianize(h.genus, canonical.letters())
        || multiplicity != primitive_root(&canonical).1
        || primitive != (multiplicity == 1)
    {
        return Err(bad(n, "record is inconsistent with its word"));
    }
    Ok(GeodesicClass {
        canonical,
        word_length,
        length,
        norm,
        homology,
        primitive,
        multiplicity,
    })
}
