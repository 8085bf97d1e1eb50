//! One function per subcommand: compute, render, write.

use std::path::Path;

use shiftriesz::nodal::{
    gauss_nod_coefficients, interpolate as interpolate_at, lorentz_nod_coefficients, nod_coefficients,
    nod_function_eval, sinc_distance_closed_form,
};
use shiftriesz::reference::{compare_table, compute_row, published_table, ReferenceRow, COLUMNS};
use shiftriesz::systems::{nod_riesz_constants, riesz_constants};
use shiftriesz::{Family, GeneratorSpec, NodCoefficients};

use crate::input::{read_reference, read_samples};
use crate::output::{emit, Format, Table};
use crate::{verify as suite, CoefficientArgs, Failure, Grid, OutputArgs, SystemArgs};

fn write_table(table: &Table, output: &OutputArgs) -> Result<(), Failure> {
    emit(&table.render(output.format.unwrap_or(Format::Csv)), output.out.as_deref())
}

fn specs(system: &SystemArgs) -> Result<Vec<GeneratorSpec>, Failure> {
    let mut out = Vec::new();
    for family in system.family.families() {
        for &s in &system.sigma.0 {
            out.push(GeneratorSpec::new(family, s)?);
        }
    }
    Ok(out)
}

fn coefficients(spec: &GeneratorSpec, args: &CoefficientArgs) -> Result<NodCoefficients, Failure> {
    Ok(match (spec.family, args.tol) {
        (_, None) => nod_coefficients(spec, args.kmax)?,
        (Family::Gauss, Some(tol)) => gauss_nod_coefficients(spec.sigma, args.kmax, tol)?,
        (Family::Lorentz, Some(tol)) => lorentz_nod_coefficients(spec.sigma, args.kmax, tol)?,
    })
}

pub fn riesz(system: &SystemArgs, nodal: bool, output: &OutputArgs) -> Result<(), Failure> {
    let mut table = Table::new(&["family", "sigma", "system", "lower", "upper", "ratio"]);
    for spec in specs(system)? {
        let b = if nodal { nod_riesz_constants(&spec)? } else { riesz_constants(&spec)? };
        let kind = if nodal { "nodal" } else { "generator" };
        table.push(vec![
            spec.family.to_string().into(),
            spec.sigma.into(),
            kind.into(),
            b.lower.into(),
            b.upper.into(),
            b.ratio.into(),
        ]);
    }
    write_table(&table, output)
}

pub fn nod_coeffs(system: &SystemArgs, args: &CoefficientArgs, output: &OutputArgs) -> Result<(), Failure> {
    let mut table = Table::new(&["family", "sigma", "k", "d"]);
    for spec in specs(system)? {
        let c = coefficients(&spec, args)?;
        let kmax = c.kmax() as i64;
        for k in -kmax..=kmax {
            table.push(vec![
                spec.family.to_string().into(),
                spec.sigma.into(),
                k.into(),
                c.get(k).expect("k within kmax").into(),
            ]);
        }
    }
    write_table(&table, output)
}

pub fn eval(system: &SystemArgs, args: &CoefficientArgs, grid: &Grid, output: &OutputArgs) -> Result<(), Failure> {
    let mut table = Table::new(&["family", "sigma", "t", "value"]);
    for spec in specs(system)? {
        let c = coefficients(&spec, args)?;
        for t in grid.points() {
            table.push(vec![
                spec.family.to_string().into(),
                spec.sigma.into(),
                t.into(),
                nod_function_eval(&c, t).into(),
            ]);
        }
    }
    write_table(&table, output)
}

pub fn interpolate(
    system: &SystemArgs,
    args: &CoefficientArgs,
    grid: &Grid,
    samples: &Path,
    output: &OutputArgs,
) -> Result<(), Failure> {
    let samples = read_samples(samples)?;
    let mut table = Table::new(&["family", "sigma", "t", "value"]);
    for spec in specs(system)? {
        let c = coefficients(&spec, args)?;
        for t in grid.points() {
            table.push(vec![
                spec.family.to_string().into(),
                spec.sigma.into(),
                t.into(),
                interpolate_at(&c, &samples, t)?.into(),
            ]);
        }
    }
    write_table(&table, output)
}

pub fn sinc_distance(sigmas: &[f64], output: &OutputArgs) -> Result<(), Failure> {
    let mut table = Table::new(&["sigma", "distance_squared"]);
    for &s in sigmas {
        table.push(vec![s.into(), sinc_distance_closed_form(s)?.into()]);
    }
    write_table(&table, output)
}

fn reference_rows(path: Option<&Path>) -> Result<Vec<ReferenceRow>, Failure> {
    match path {
        Some(p) => read_reference(p),
        None => Ok(published_table()),
    }
}

/// Computed rows for `sigmas` (default: the reference σ values), compared
/// cell by cell with every reference row of the same σ.
pub fn table2(sigmas: Option<&[f64]>, reference: Option<&Path>, output: &OutputArgs) -> Result<(), Failure> {
    let reference = reference_rows(reference)?;
    let sigmas: Vec<f64> = match sigmas {
        Some(s) => s.to_vec(),
        None => reference.iter().map(|r| r.sigma).collect(),
    };
    let mut columns = vec!["sigma"];
    columns.extend(COLUMNS);
    let mut table = Table::new(&columns);
    for &s in &sigmas {
        let mut row = vec![s.into()];
        row.extend(compute_row(s)?.map(Into::into));
        table.push(row);
    }
    let compared: Vec<ReferenceRow> = reference.into_iter().filter(|r| sigmas.contains(&r.sigma)).collect();
    let mismatches: Vec<String> = compare_table(&compared)?
        .into_iter()
        .filter(|c| !c.matches)
        .map(|c| {
            format!(
                "{} at sigma={}: reference {}, computed {} ({:e})",
                c.column, c.sigma, c.published, c.rounded, c.computed
            )
        })
        .collect();
    write_table(&table, output)?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "{} cell(s) differ from the reference:\n  {}",
            mismatches.len(),
            mismatches.join("\n  ")
        )))
    }
}

pub fn verify(reference: Option<&Path>, output: &OutputArgs) -> Result<(), Failure> {
    let reference = reference_rows(reference)?;
    let report = suite::run(&reference)?;
    let text = match output.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut table = Table::new(&["name", "residual", "tolerance", "pass"]);
            for c in &report.checks {
                table.push(vec![c.name.clone().into(), c.residual.into(), c.tolerance.into(), c.pass.into()]);
            }
            table.to_csv()
        }
    };
    emit(&text, output.out.as_deref())?;
    let failed: Vec<String> = report
        .failures()
        .map(|c| format!("{}: residual {:e} > tolerance {:e}", c.name, c.residual, c.tolerance))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "{} of {} checks failed:\n  {}",
            report.summary.failed,
            report.checks.len(),
            failed.join("\n  ")
        )))
    }
}
