//! CSV and JSON writers for [`TabulatedSweep`].
//!
//! Numbers are printed with 17 significant digits in the style of C's
//! `%.17g`, so a table written twice is byte-identical and every `f64`
//! round-trips.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;
use serde_json::value::RawValue;

use crate::domain::TabulatedSweep;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// `%.17g`: 17 significant digits, trailing zeros removed, exponent form
/// when the decimal exponent is below -4 or at least 17.
pub fn format_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // Rounding to 17 digits first settles the exponent (9.99..96 -> 1e1).
    let sci = format!("{:.16e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        strip_zeros(format!("{:.*}", decimals, x))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa.to_string()), exp.abs())
    }
}

fn strip_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Header line, then one `# key=value` line per metadata entry, then the
/// rows. LF line endings.
pub fn write_csv<W: Write>(table: &TabulatedSweep, mut out: W) -> Result<()> {
    let builder = {
        let mut b = csv::WriterBuilder::new();
        b.terminator(csv::Terminator::Any(b'\n'));
        b
    };
    {
        let mut w = builder.from_writer(&mut out);
        w.write_record(table.columns()).map_err(csv_error)?;
        w.flush()?;
    }
    for (key, value) in table.metadata() {
        writeln!(out, "# {key}={}", format_g17(*value))?;
    }
    let mut w = builder.from_writer(&mut out);
    for row in table.rows() {
        w.write_record(row.iter().map(|v| format_g17(*v))).map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

#[derive(Serialize)]
struct JsonTable<'a> {
    columns: &'a [String],
    rows: Vec<Vec<Box<RawValue>>>,
    metadata: BTreeMap<&'a str, Box<RawValue>>,
}

fn json_number(x: f64) -> Box<RawValue> {
    // JSON has no NaN or infinity.
    let text = if x.is_finite() { format_g17(x) } else { "null".into() };
    RawValue::from_string(text).expect("a %.17g number is valid JSON")
}

/// `{"columns": [...], "rows": [[...], ...], "metadata": {...}}` followed by
/// a newline.
pub fn write_json<W: Write>(table: &TabulatedSweep, mut out: W) -> Result<()> {
    let doc = JsonTable {
        columns: table.columns(),
        rows: table
            .rows()
            .iter()
            .map(|r| r.iter().map(|v| json_number(*v)).collect())
            .collect(),
        metadata: table
            .metadata()
            .iter()
            .map(|(k, v)| (k.as_str(), json_number(*v)))
            .collect(),
    };
    serde_json::to_writer(&mut out, &doc).map_err(|e| Error::Io(e.into()))?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(())
}

pub fn write_table<W: Write>(table: &TabulatedSweep, format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(table, out),
        OutputFormat::Json => write_json(table, out),
    }
}
