//! The published table of Riesz constants and the rule for comparing with it.
//!
//! Each published cell is compared after rounding the computed value to the
//! precision the cell is printed with: `17.46` means two decimals, `6.45e-4`
//! means a three-digit mantissa.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::systems::{riesz_constants, GeneratorSpec};

pub const COLUMNS: [&str; 6] = ["A_G", "B_G", "B_G/A_G", "A_L", "B_L", "B_L/A_L"];

pub const TABLE_SIGMAS: [f64; 8] = [0.2, 0.4, 0.6, 1.0, 2.0, 3.0, 4.0, 5.0];

const PUBLISHED: [(f64, [&str; 6]); 8] = [
    (0.2, ["0.353", "0.356", "1.01", "0.245", "0.464", "1.90"]),
    (0.4, ["0.415", "1.009", "2.43", "0.258", "1.600", "6.21"]),
    (0.6, ["0.130", "2.262", "17.46", "0.164", "3.557", "21.70"]),
    (1.0, ["6.45e-4", "6.283", "9.67e3", "0.037", "9.870", "267.75"]),
    (2.0, ["3.60e-16", "25.13", "6.98e16", "2.75e-4", "39.48", "1.43e5"]),
    (3.0, ["3.00e-37", "56.55", "1.88e38", "1.16e-6", "88.83", "7.68e7"]),
    (4.0, ["5.28e-67", "100.53", "1.91e68", "3.84e-9", "157.91", "4.11e10"]),
    (5.0, ["2.18e-105", "157.08", "7.19e106", "1.12e-11", "246.74", "2.20e13"]),
];

/// Published cells whose printed digits disagree with the closed forms
/// evaluated at high precision: `A_G(0.4) = 0.414497`, `A_G(1) = 6.4997e-4`,
/// `B_G/A_G(2) = 6.9860e16`, `B_G/A_G(3) = 1.8871e38`.
pub const KNOWN_ERRATA: [(f64, &str); 4] = [(0.4, "A_G"), (1.0, "A_G"), (2.0, "B_G/A_G"), (3.0, "B_G/A_G")];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRow {
    pub sigma: f64,
    /// Printed values in [`COLUMNS`] order.
    pub cells: Vec<String>,
}

pub fn published_table() -> Vec<ReferenceRow> {
    PUBLISHED
        .iter()
        .map(|(sigma, cells)| ReferenceRow {
            sigma: *sigma,
            cells: cells.iter().map(|c| c.to_string()).collect(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Decimals(usize),
    Mantissa(usize),
}

/// Read the printed precision off a cell such as `"0.037"` or `"9.67e3"`.
pub fn display_precision(cell: &str) -> Result<Precision> {
    let cell = cell.trim();
    cell.parse::<f64>()
        .map_err(|_| Error::InvalidArgument(format!("reference cell {cell:?} is not a number")))?;
    let decimals = |s: &str| s.split_once('.').map_or(0, |(_, frac)| frac.len());
    Ok(match cell.split_once(['e', 'E']) {
        Some((mantissa, _)) => Precision::Mantissa(decimals(mantissa)),
        None => Precision::Decimals(decimals(cell)),
    })
}

pub fn round_to(value: f64, precision: Precision) -> String {
    match precision {
        Precision::Decimals(d) => format!("{value:.d$}"),
        Precision::Mantissa(d) => format!("{value:.d$e}"),
    }
}

/// Does `value`, rounded like `cell`, print as the same number?
pub fn cell_matches(value: f64, cell: &str) -> Result<bool> {
    let rounded = round_to(value, display_precision(cell)?);
    let published: f64 = cell.trim().parse().unwrap();
    Ok(rounded.parse::<f64>().ok() == Some(published))
}

/// `[A_G, B_G, B_G/A_G, A_L, B_L, B_L/A_L]` at `sigma`.
pub fn compute_row(sigma: f64) -> Result<[f64; 6]> {
    let g = riesz_constants(&GeneratorSpec::gauss(sigma)?)?;
    let l = riesz_constants(&GeneratorSpec::lorentz(sigma)?)?;
    Ok([g.lower, g.upper, g.ratio, l.lower, l.upper, l.ratio])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellComparison {
    pub sigma: f64,
    pub column: String,
    pub published: String,
    pub computed: f64,
    pub rounded: String,
    pub matches: bool,
}

pub fn compare_table(rows: &[ReferenceRow]) -> Result<Vec<CellComparison>> {
    let mut out = Vec::with_capacity(rows.len() * COLUMNS.len());
    for row in rows {
        if row.cells.len() != COLUMNS.len() {
            return Err(Error::InvalidArgument(format!(
                "reference row σ={} has {} cells, expected {}",
                row.sigma,
                row.cells.len(),
                COLUMNS.len()
            )));
        }
        let computed = compute_row(row.sigma)?;
        for ((column, cell), value) in COLUMNS.iter().zip(&row.cells).zip(computed) {
            let precision = display_precision(cell)?;
            out.push(CellComparison {
                sigma: row.sigma,
                column: column.to_string(),
                published: cell.trim().to_string(),
                computed: value,
                rounded: round_to(value, precision),
                matches: cell_matches(value, cell)?,
            });
        }
    }
    Ok(out)
}

pub fn is_known_erratum(sigma: f64, column: &str) -> bool {
    KNOWN_ERRATA.iter().any(|&(s, c)| s == sigma && c == column)
}
