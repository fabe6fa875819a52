use std::io::Write;

use super::{CorrelationSeries, SeriesPoint, SweepTable};
use crate::error::Result;

/// Output column selector. Columns are always written in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Column {
    T,
    F14,
    F23,
    Mutual,
    Classical,
    Discord,
    Concurrence,
    Eof,
}

impl Column {
    pub const ALL: [Column; 8] = [
        Column::T,
        Column::F14,
        Column::F23,
        Column::Mutual,
        Column::Classical,
        Column::Discord,
        Column::Concurrence,
        Column::Eof,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::T => "t",
            Column::F14 => "f14",
            Column::F23 => "f23",
            Column::Mutual => "mutual",
            Column::Classical => "classical",
            Column::Discord => "discord",
            Column::Concurrence => "concurrence",
            Column::Eof => "eof",
        }
    }

    pub fn parse(s: &str) -> Option<Column> {
        Column::ALL.into_iter().find(|c| c.name() == s)
    }

    fn value(self, p: &SeriesPoint) -> f64 {
        match self {
            Column::T => p.t,
            Column::F14 => p.f14,
            Column::F23 => p.f23,
            Column::Mutual => p.record.mutual,
            Column::Classical => p.record.classical,
            Column::Discord => p.record.discord,
            Column::Concurrence => p.record.concurrence,
            Column::Eof => p.record.eof,
        }
    }
}

/// `%.{digits}g`-style formatting: `digits` significant digits, trailing
/// zeros removed, exponent form outside 1e-5 ≤ |x| < 10^digits.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    // Let the exponent formatter do the rounding, then pick the layout.
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

const SIG_DIGITS: usize = 12;

fn sorted(columns: &[Column]) -> Vec<Column> {
    let mut c = columns.to_vec();
    c.sort();
    c.dedup();
    c
}

fn write_row<W: Write>(out: &mut W, prefix: &str, columns: &[Column], p: &SeriesPoint) -> Result<()> {
    let cells: Vec<String> = columns.iter().map(|c| format_sig(c.value(p), SIG_DIGITS)).collect();
    writeln!(out, "{prefix}{}", cells.join(","))?;
    Ok(())
}

fn header(columns: &[Column]) -> String {
    columns.iter().map(|c| c.name()).collect::<Vec<_>>().join(",")
}

pub fn emit_series_csv<W: Write>(series: &CorrelationSeries, columns: &[Column], mut out: W) -> Result<()> {
    let columns = sorted(columns);
    writeln!(out, "{}", header(&columns))?;
    for p in &series.points {
        write_row(&mut out, "", &columns, p)?;
    }
    out.flush()?;
    Ok(())
}

/// Rows ordered by sweep value (as configured), then time.
pub fn emit_sweep_csv<W: Write>(table: &SweepTable, columns: &[Column], mut out: W) -> Result<()> {
    let columns = sorted(columns);
    writeln!(out, "sweep_param,sweep_value,{}", header(&columns))?;
    for (value, series) in &table.entries {
        let prefix = format!("{},{},", table.param.name(), format_sig(*value, SIG_DIGITS));
        for p in &series.points {
            write_row(&mut out, &prefix, &columns, p)?;
        }
    }
    out.flush()?;
    Ok(())
}
