//! Serialization helpers: full-precision float formatting in the C
//! `%.17g` style, a JSON writer that uses it for every number, and the CSV
//! codecs for dense matrices and series.

use crate::banded::DenseMat;
use crate::error::{Error, Result};
use crate::hslra::Series;
use serde::Serialize;
use std::io::Write;

/// Formats a double the way C's `printf("%.17g", v)` does: 17 significant
/// digits, trailing zeros trimmed, fixed notation for decimal exponents in
/// `[-4, 17)` and scientific notation (two-digit signed exponent) outside.
pub fn fmt_g17(v: f64) -> String {
    if v == 0.0 {
        return if v.is_sign_negative() {
            "-0".to_string()
        } else {
            "0".to_string()
        };
    }
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.16e}", v);
    let (mant, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 17);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp < -4 || exp >= 17 {
        let trimmed = digits.trim_end_matches('0');
        let trimmed = if trimmed.is_empty() { "0" } else { trimmed };
        out.push_str(&trimmed[..1]);
        if trimmed.len() > 1 {
            out.push('.');
            out.push_str(&trimmed[1..]);
        }
        out.push('e');
        out.push(if exp < 0 { '-' } else { '+' });
        let mag = exp.unsigned_abs();
        if mag < 10 {
            out.push('0');
        }
        out.push_str(&mag.to_string());
    } else if exp >= 0 {
        let split = exp as usize + 1;
        out.push_str(&digits[..split]);
        let frac = digits[split..].trim_end_matches('0');
        if !frac.is_empty() {
            out.push('.');
            out.push_str(frac);
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(digits.trim_end_matches('0'));
    }
    out
}

/// JSON formatter identical to the compact default except that every f64 is
/// written with [`fmt_g17`].
pub struct G17Formatter;

impl serde_json::ser::Formatter for G17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        writer.write_all(fmt_g17(value).as_bytes())
    }
}

/// Serializes any value to compact JSON with full-precision floats.
pub fn to_json_g17<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, G17Formatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::InvalidInput(format!("serialization failed: {e}")))?;
    String::from_utf8(out).map_err(|e| Error::InvalidInput(format!("non-utf8 json: {e}")))
}

/// Dense matrix as CSV: one row per line, comma separated, full precision.
pub fn dense_to_csv(m: &DenseMat) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|&v| fmt_g17(v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Parses a dense matrix from CSV text; all rows must have equal length.
pub fn dense_from_csv(text: &str) -> Result<DenseMat> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Vec<f64> = line
            .split(',')
            .map(|cell| {
                cell.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidInput(format!(
                        "line {}: cannot parse {cell:?} as a number",
                        lineno + 1
                    ))
                })
            })
            .collect::<Result<_>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::InvalidInput(format!(
                    "line {}: expected {} columns, got {}",
                    lineno + 1,
                    first.len(),
                    row.len()
                )));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let cols = rows[0].len();
    DenseMat::new(rows.len(), cols, rows.concat())
}

/// Series as CSV: one value per line, full precision.
pub fn series_to_csv(z: &Series) -> String {
    let mut out = String::new();
    for &v in z.values() {
        out.push_str(&fmt_g17(v));
        out.push('\n');
    }
    out
}

/// Parses a series from one-value-per-line text.
pub fn series_from_csv(text: &str) -> Result<Series> {
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        values.push(line.parse::<f64>().map_err(|_| {
            Error::InvalidInput(format!(
                "line {}: cannot parse {line:?} as a number",
                lineno + 1
            ))
        })?);
    }
    Series::new(values)
}
