use std::io::{self, Write};

use clap::ValueEnum;
use serde::Deserialize;
use serde_json::{Map, Number, Value};

use crate::dynamics::{BasinReport, Terminal, TrajectorySample};
use crate::field::FieldObservables;
use crate::landscape::{BranchRow, CriticalPointReport, LandscapeSample, StationaryPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
            Cell::Int(i) => Value::from(*i),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_owned())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

/// A row of a homogeneous output table.
pub trait Record {
    fn header() -> &'static [&'static str];
    fn cells(&self) -> Vec<Cell>;
}

/// CSV with a header row and 17 significant digits, or a JSON array of
/// objects keyed by the same column names.
pub fn emit_table<R: Record>(records: &[R], format: Format, mut w: impl Write) -> io::Result<()> {
    let header = R::header();
    match format {
        Format::Csv => {
            writeln!(w, "{}", header.join(","))?;
            for r in records {
                let row: Vec<String> = r.cells().iter().map(Cell::csv).collect();
                writeln!(w, "{}", row.join(","))?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| {
                    let obj: Map<String, Value> = header
                        .iter()
                        .map(|h| h.to_string())
                        .zip(r.cells().iter().map(Cell::json))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            serde_json::to_writer_pretty(&mut w, &rows)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

impl Record for LandscapeSample {
    fn header() -> &'static [&'static str] {
        &["sigma", "energy", "grad", "curvature"]
    }
    fn cells(&self) -> Vec<Cell> {
        vec![
            self.sigma.into(),
            self.energy.into(),
            self.grad.into(),
            self.curvature.into(),
        ]
    }
}

impl Record for StationaryPoint {
    fn header() -> &'static [&'static str] {
        &["sigma", "energy", "grad", "curvature", "stability"]
    }
    fn cells(&self) -> Vec<Cell> {
        vec![
            self.sigma.into(),
            self.energy.into(),
            self.grad.into(),
            self.curvature.into(),
            self.stability.as_str().into(),
        ]
    }
}

impl Record for BranchRow {
    fn header() -> &'static [&'static str] {
        &[
            "control",
            "branch_index",
            "sigma_star",
            "energy",
            "curvature",
            "stability",
        ]
    }
    fn cells(&self) -> Vec<Cell> {
        vec![
            self.control.into(),
            Cell::Int(self.branch_index as i64),
            self.sigma_star.into(),
            self.energy.into(),
            self.curvature.into(),
            self.stability.as_str().into(),
        ]
    }
}

impl Record for CriticalPointReport {
    fn header() -> &'static [&'static str] {
        &["found", "mu_critical", "sigma_critical", "diagnostics"]
    }
    fn cells(&self) -> Vec<Cell> {
        vec![
            self.found.into(),
            self.mu_critical.into(),
            self.sigma_critical.into(),
            self.diagnostics.as_str().into(),
        ]
    }
}

impl Record for TrajectorySample {
    fn header() -> &'static [&'static str] {
        &["t", "sigma", "sigma_dot", "energy", "grad"]
    }
    fn cells(&self) -> Vec<Cell> {
        vec![
            self.t.into(),
            self.sigma.into(),
            self.sigma_dot.into(),
            self.energy.into(),
            self.grad.into(),
        ]
    }
}

pub(crate) fn terminal_cells(t: &Terminal) -> (Cell, Cell) {
    match t {
        Terminal::Converged { sigma } => ("converged".into(), (*sigma).into()),
        Terminal::EscapedLow => ("escaped_low".into(), Cell::Empty),
        Terminal::EscapedHigh => ("escaped_high".into(), Cell::Empty),
        Terminal::Horizon => ("horizon".into(), Cell::Empty),
    }
}

impl Record for BasinReport {
    fn header() -> &'static [&'static str] {
        &[
            "sigma_a",
            "sigma_b",
            "fate_a",
            "sigma_final_a",
            "fate_b",
            "sigma_final_b",
            "separated",
        ]
    }
    fn cells(&self) -> Vec<Cell> {
        let (fa, sa) = terminal_cells(&self.fates.0);
        let (fb, sb) = terminal_cells(&self.fates.1);
        vec![
            self.initial_pair.0.into(),
            self.initial_pair.1.into(),
            fa,
            sa,
            fb,
            sb,
            self.separated.into(),
        ]
    }
}

impl Record for FieldObservables {
    fn header() -> &'static [&'static str] {
        &["t", "norm", "sigma_eff", "T", "e_grav", "e_rep", "e_total"]
    }
    fn cells(&self) -> Vec<Cell> {
        vec![
            self.t.into(),
            self.norm.into(),
            self.sigma_eff.into(),
            self.kinetic.into(),
            self.e_grav.into(),
            self.e_rep.into(),
            self.e_total.into(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render<R: Record>(records: &[R], format: Format) -> String {
        let mut buf = Vec::new();
        emit_table(records, format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(
            render::<LandscapeSample>(&[], Format::Csv),
            "sigma,energy,grad,curvature\n"
        );
    }

    #[test]
    fn one_sample_one_row() {
        let s = LandscapeSample {
            sigma: 1.0,
            energy: 0.1,
            grad: -1.0 / 3.0,
            curvature: 2.0,
        };
        let text = render(&[s], Format::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[1].split(',').count(), 4);
        assert_eq!(lines[1].split(',').nth(2).unwrap(), "-3.3333333333333331e-1");
    }

    #[test]
    fn csv_and_json_round_trip_exactly() {
        let s = LandscapeSample {
            sigma: 0.1 + 0.2,
            energy: std::f64::consts::PI,
            grad: -1e-300,
            curvature: 6.02e23,
        };
        let csv = render(&[s], Format::Csv);
        let back: Vec<f64> = csv
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect();
        assert_eq!(back, vec![s.sigma, s.energy, s.grad, s.curvature]);
        let json: Vec<Map<String, Value>> = serde_json::from_str(&render(&[s], Format::Json)).unwrap();
        assert_eq!(json[0]["sigma"].as_f64().unwrap(), s.sigma);
        assert_eq!(json[0]["curvature"].as_f64().unwrap(), s.curvature);
        assert_eq!(json[0].keys().collect::<Vec<_>>().len(), 4);
    }

    #[test]
    fn text_cells_are_quoted_when_needed() {
        assert_eq!(Cell::from("a, b").csv(), "\"a, b\"");
        assert_eq!(Cell::from("plain").csv(), "plain");
    }
}
