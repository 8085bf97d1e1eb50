//! Readers for user-supplied CSV: interpolation samples and reference tables.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use shiftriesz::reference::{display_precision, ReferenceRow, COLUMNS};

use crate::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

/// Records with their 1-based line numbers.
fn records(text: &str, path: &Path) -> Result<Vec<(u64, csv::StringRecord)>, Failure> {
    let mut out = Vec::new();
    for rec in reader(text).into_records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Failure::Input(format!("{}:{line}: {e}", path.display()))
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        out.push((line, rec));
    }
    Ok(out)
}

/// Two columns `n,f`, an optional header, integer `n`, each `n` at most once.
pub fn read_samples(path: &Path) -> Result<BTreeMap<i64, f64>, Failure> {
    let text = read(path)?;
    let bad = |line: u64, msg: String| Failure::Input(format!("{}:{line}: {msg}", path.display()));
    let mut samples = BTreeMap::new();
    for (i, (line, rec)) in records(&text, path)?.into_iter().enumerate() {
        if i == 0 && rec.get(0) == Some("n") {
            continue;
        }
        if rec.len() != 2 {
            return Err(bad(line, format!("expected 2 fields \"n,f\", found {}", rec.len())));
        }
        let n: i64 = rec[0]
            .parse()
            .map_err(|_| bad(line, format!("sample index {:?} is not an integer", &rec[0])))?;
        let f: f64 = rec[1]
            .parse()
            .map_err(|_| bad(line, format!("sample value {:?} is not a number", &rec[1])))?;
        if !f.is_finite() {
            return Err(bad(line, format!("sample value {f} is not finite")));
        }
        if samples.insert(n, f).is_some() {
            return Err(bad(line, format!("sample index {n} repeated")));
        }
    }
    if samples.is_empty() {
        return Err(Failure::Input(format!("{}: no samples", path.display())));
    }
    Ok(samples)
}

/// A reference table laid out like the `table2` artifact: a header row
/// `sigma,A_G,B_G,B_G/A_G,A_L,B_L,B_L/A_L` and cells as printed.
pub fn read_reference(path: &Path) -> Result<Vec<ReferenceRow>, Failure> {
    let text = read(path)?;
    let bad = |line: u64, msg: String| Failure::Input(format!("{}:{line}: {msg}", path.display()));
    let mut rows = Vec::new();
    for (i, (line, rec)) in records(&text, path)?.into_iter().enumerate() {
        if i == 0 {
            let header: Vec<&str> = rec.iter().collect();
            if header.first() != Some(&"sigma") || header[1..] != COLUMNS {
                return Err(bad(line, format!("expected header sigma,{}", COLUMNS.join(","))));
            }
            continue;
        }
        if rec.len() != COLUMNS.len() + 1 {
            return Err(bad(line, format!("expected {} fields, found {}", COLUMNS.len() + 1, rec.len())));
        }
        let sigma: f64 = rec[0]
            .parse()
            .ok()
            .filter(|s: &f64| s.is_finite() && *s > 0.0)
            .ok_or_else(|| bad(line, format!("sigma {:?} is not a positive number", &rec[0])))?;
        let cells: Vec<String> = rec.iter().skip(1).map(str::to_string).collect();
        for cell in &cells {
            display_precision(cell).map_err(|e| bad(line, e.to_string()))?;
        }
        rows.push(ReferenceRow { sigma, cells });
    }
    if rows.is_empty() {
        return Err(Failure::Input(format!("{}: no reference rows", path.display())));
    }
    Ok(rows)
}
