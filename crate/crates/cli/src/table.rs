use std::io::Write;

use mlbalance::csv::number;
use serde_json::{Map, Value};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => {
                let rounded: f64 = number(*x).parse().unwrap_or(*x);
                serde_json::Number::from_f64(rounded).map_or_else(|| Value::String(number(*x)), Value::Number)
            }
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

impl From<u64> for Cell {
    fn from(i: u64) -> Self {
        Cell::Int(i)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as u64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// `x · e^{ln_scale}`, as a number when it fits in an `f64` and otherwise as
/// decimal text with 12 significant digits.
pub fn scaled(x: f64, ln_scale: f64) -> Cell {
    if ln_scale == 0.0 || x == 0.0 {
        return Cell::Num(x);
    }
    let ln = x.ln() + ln_scale;
    if ln < 700.0 {
        return Cell::Num(ln.exp());
    }
    let log10 = ln / std::f64::consts::LN_10;
    let mut exponent = log10.floor();
    let mut mantissa: f64 = number(10f64.powf(log10 - exponent)).parse().unwrap();
    if mantissa >= 10.0 {
        mantissa /= 10.0;
        exponent += 1.0;
    }
    Cell::Text(format!("{}e{}", number(mantissa), exponent as i64))
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// `# key=value` lines emitted before the header.
    pub notes: Vec<(String, String)>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => {
                for (k, v) in &self.notes {
                    writeln!(out, "# {k}={v}")?;
                }
                let mut w = csv::Writer::from_writer(out);
                w.write_record(&self.columns)?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
                w.flush()
            }
            Format::JsonLines => {
                if !self.notes.is_empty() {
                    let notes: Map<String, Value> = self
                        .notes
                        .iter()
                        .map(|(k, v)| {
                            let value = v
                                .parse::<u64>()
                                .map_or_else(|_| Value::from(v.as_str()), Value::from);
                            (k.clone(), value)
                        })
                        .collect();
                    writeln!(out, "{}", Value::Object(notes))?;
                }
                for row in &self.rows {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::json))
                        .collect();
                    writeln!(out, "{}", Value::Object(obj))?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(t: &Table, f: Format) -> String {
        let mut buf = Vec::new();
        t.write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn csv_and_json_lines() {
        let mut t = Table::new(["input", "k", "x", "ok", "t"]);
        t.notes.push(("seed".into(), "7".into()));
        t.push(vec![
            "a,b".into(),
            3usize.into(),
            (1.0 / 3.0).into(),
            true.into(),
            Cell::Empty,
        ]);
        assert_eq!(
            render(&t, Format::Csv),
            "# seed=7\ninput,k,x,ok,t\n\"a,b\",3,0.333333333333,true,\n"
        );
        assert_eq!(
            render(&t, Format::JsonLines),
            "{\"seed\":7}\n{\"input\":\"a,b\",\"k\":3,\"x\":0.333333333333,\"ok\":true,\"t\":null}\n"
        );
    }

    #[test]
    fn huge_values_become_text() {
        assert_eq!(scaled(2.0, 0.0), Cell::Num(2.0));
        assert_eq!(scaled(1.0, 10f64.ln()), Cell::Num(10.000000000000002));
        let Cell::Text(s) = scaled(1.0, 1000.0 * 10f64.ln()) else {
            panic!()
        };
        assert_eq!(s, "1e1000");
        let Cell::Text(s) = scaled(2.5, 800.0 * 10f64.ln()) else {
            panic!()
        };
        assert_eq!(s, "2.5e800");
    }
}
