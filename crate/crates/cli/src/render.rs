//! Deterministic table, CSV and JSON output.

use clap::ValueEnum;
use serde::Serialize;
use wallcross::fan::{class_maslov, FanSpec, ValidationReport};
use wallcross::format_rational;
use wallcross::novikov::NovikovScalar;
use wallcross::series::ClassSeries;

use crate::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

/// Display width, treating combining diacritics (as in `β̂`) as zero-width.
fn width(s: &str) -> usize {
    s.chars()
        .filter(|c| !('\u{300}'..='\u{36f}').contains(c))
        .count()
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| width(s))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c + 1 == row.len() {
                line.push_str(cell);
            } else {
                let pad = widths[c] - width(cell);
                line.push_str(cell);
                line.push_str(&" ".repeat(pad + 2));
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn csv(rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(row)
            .map_err(|e| CliError::Usage(format!("IoError: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Usage(format!("IoError: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 cells is UTF-8"))
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Series rows in canonical order. JSON is the list of series records.
pub fn series(spec: &FanSpec, s: &ClassSeries, format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        return Ok(json(&s.records()));
    }
    let (n, m) = s.dims();
    let mut rows = Vec::with_capacity(s.len() + 1);
    for (class, coeff) in s.iter() {
        let maslov = class_maslov(spec, class)?.to_string();
        let coeff = format_rational(coeff);
        rows.push(match format {
            Format::Table => vec![class.pretty(), maslov, coeff],
            _ => std::iter::once(class.b)
                .chain(class.g.iter().copied())
                .chain(class.h.iter().copied())
                .map(|x| x.to_string())
                .chain([maslov, coeff])
                .collect(),
        });
    }
    let header: Vec<String> = match format {
        Format::Table => ["class", "maslov", "n_beta"].map(String::from).to_vec(),
        _ => std::iter::once("b".to_string())
            .chain((1..n).map(|k| format!("g_{k}")))
            .chain((1..=m).map(|a| format!("h_{a}")))
            .chain(["maslov".to_string(), "n_beta".to_string()])
            .collect(),
    };
    rows.insert(0, header);
    match format {
        Format::Table => Ok(table(&rows)),
        _ => csv(&rows),
    }
}

#[derive(Serialize)]
struct ReportRecord<'a> {
    primitive_ok: bool,
    smooth_ok: bool,
    complete_ok: bool,
    fano_ok: bool,
    diagnostics: &'a [String],
}

pub fn report(r: &ValidationReport, format: Format) -> Result<String, CliError> {
    let diagnostics: Vec<String> = r.diagnostics.iter().map(ToString::to_string).collect();
    if format == Format::Json {
        return Ok(json(&ReportRecord {
            primitive_ok: r.primitive_ok,
            smooth_ok: r.smooth_ok,
            complete_ok: r.complete_ok,
            fano_ok: r.fano_ok,
            diagnostics: &diagnostics,
        }));
    }
    let flags = [
        ("primitive_ok", r.primitive_ok),
        ("smooth_ok", r.smooth_ok),
        ("complete_ok", r.complete_ok),
        ("fano_ok", r.fano_ok),
    ];
    let rows: Vec<Vec<String>> = flags
        .iter()
        .map(|(k, v)| vec![k.to_string(), v.to_string()])
        .chain(
            diagnostics
                .into_iter()
                .map(|d| vec!["diagnostic".to_string(), d]),
        )
        .collect();
    fields(rows, format)
}

/// Name/value pairs: a two-column table, a two-column CSV, or a JSON object.
pub fn fields(rows: Vec<Vec<String>>, format: Format) -> Result<String, CliError> {
    match format {
        Format::Table => Ok(table(&rows)),
        Format::Csv => {
            let mut all = vec![vec!["field".to_string(), "value".to_string()]];
            all.extend(rows);
            csv(&all)
        }
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> = rows
                .into_iter()
                .map(|r| (r[0].clone(), serde_json::Value::String(r[1].clone())))
                .collect();
            Ok(json(&map))
        }
    }
}

pub fn matrix(rows: &[Vec<i64>], format: Format) -> Result<String, CliError> {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(i64::to_string).collect())
        .collect();
    match format {
        Format::Table => Ok(table(&cells)),
        Format::Csv => csv(&cells),
        Format::Json => Ok(json(rows)),
    }
}

/// A Novikov scalar: its display form, `(exponent, coeff)` rows, or its record.
pub fn scalar(z: &NovikovScalar, format: Format) -> Result<String, CliError> {
    match format {
        Format::Table => Ok(format!("{z}\n")),
        Format::Csv => {
            let mut rows = vec![vec!["exponent".to_string(), "coeff".to_string()]];
            rows.extend(
                z.terms()
                    .iter()
                    .map(|(e, c)| vec![format_rational(e), format_rational(c)]),
            );
            if let Some(c) = z.cutoff() {
                rows.push(vec![format_rational(c), "O".to_string()]);
            }
            csv(&rows)
        }
        Format::Json => Ok(json(&z.to_record())),
    }
}
