//! Result artifacts and their CSV / JSON encodings.
//!
//! An artifact is a set of axes plus values sampled on their Cartesian product,
//! stored row-major (last axis fastest). CSV writes one record per grid point
//! with the axis coordinates followed by the value column(s); JSON writes
//! `{axes, values, meta}`.

use std::io::Write;

use irs_squint::GainMap;
use serde_json::{json, Map, Value};

use crate::scenario::Format;

/// Significant digits written to CSV; enough to round-trip an `f64` exactly.
pub const CSV_DIGITS: usize = 17;

#[derive(Debug, Clone, PartialEq)]
pub enum AxisValues {
    Numbers(Vec<f64>),
    Labels(Vec<String>),
}

impl AxisValues {
    pub fn len(&self) -> usize {
        match self {
            AxisValues::Numbers(v) => v.len(),
            AxisValues::Labels(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputAxis {
    pub name: String,
    pub unit: String,
    pub values: AxisValues,
}

impl OutputAxis {
    pub fn numbers(name: &str, unit: &str, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
            values: AxisValues::Numbers(values),
        }
    }

    pub fn labels(name: &str, values: &[&str]) -> Self {
        Self {
            name: name.into(),
            unit: String::new(),
            values: AxisValues::Labels(values.iter().map(|s| s.to_string()).collect()),
        }
    }
}

/// Value payload: a single `value` column, or several named columns.
#[derive(Debug, Clone, PartialEq)]
pub enum Values {
    Single(Vec<f64>),
    Columns(Vec<(String, Vec<f64>)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub axes: Vec<OutputAxis>,
    pub values: Values,
    pub meta: Map<String, Value>,
}

impl Artifact {
    pub fn from_map(map: &GainMap) -> Self {
        Self {
            axes: map
                .axes()
                .iter()
                .map(|a| OutputAxis::numbers(&a.name, &a.unit, a.values.clone()))
                .collect(),
            values: Values::Single(map.values().to_vec()),
            meta: Map::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: Value) -> Self {
        self.meta.insert(key.into(), value);
        self
    }

    pub fn points(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn to_json(&self) -> Value {
        let axes: Vec<Value> = self
            .axes
            .iter()
            .map(|a| {
                let values = match &a.values {
                    AxisValues::Numbers(v) => json!(v),
                    AxisValues::Labels(v) => json!(v),
                };
                json!({"name": a.name, "unit": a.unit, "values": values})
            })
            .collect();
        let values = match &self.values {
            Values::Single(v) => json!(v),
            Values::Columns(cols) => Value::Object(
                cols.iter()
                    .map(|(name, v)| (name.clone(), json!(v)))
                    .collect(),
            ),
        };
        json!({"axes": axes, "values": values, "meta": self.meta})
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<&str> = self.axes.iter().map(|a| a.name.as_str()).collect();
        match &self.values {
            Values::Single(_) => header.push("value"),
            Values::Columns(cols) => header.extend(cols.iter().map(|(n, _)| n.as_str())),
        }
        w.write_record(&header)?;

        let shape: Vec<usize> = self.axes.iter().map(|a| a.values.len()).collect();
        let mut index = vec![0usize; shape.len()];
        for flat in 0..self.points() {
            let mut record: Vec<String> = self
                .axes
                .iter()
                .zip(&index)
                .map(|(a, &i)| match &a.values {
                    AxisValues::Numbers(v) => format_number(v[i]),
                    AxisValues::Labels(v) => v[i].clone(),
                })
                .collect();
            match &self.values {
                Values::Single(v) => record.push(format_number(v[flat])),
                Values::Columns(cols) => {
                    record.extend(cols.iter().map(|(_, v)| format_number(v[flat])))
                }
            }
            w.write_record(&record)?;
            for k in (0..shape.len()).rev() {
                index[k] += 1;
                if index[k] < shape[k] {
                    break;
                }
                index[k] = 0;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn write<W: Write>(&self, format: Format, mut out: W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out).map_err(std::io::Error::other),
            Format::Json => {
                serde_json::to_writer_pretty(&mut out, &self.to_json())?;
                writeln!(out)
            }
        }
    }
}

/// Scientific notation with [`CSV_DIGITS`] significant digits.
pub fn format_number(x: f64) -> String {
    format!("{:.*e}", CSV_DIGITS - 1, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip_through_text() {
        for x in [
            1.0,
            0.1,
            -7.75e-11,
            197.0234375e9,
            f64::MIN_POSITIVE,
            1.0 - 1e-16,
        ] {
            let s = format_number(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
            let mantissa = s.split('e').next().unwrap();
            let digits = mantissa.chars().filter(char::is_ascii_digit).count();
            assert!(digits >= 12);
        }
    }

    #[test]
    fn csv_is_row_major() {
        let artifact = Artifact {
            axes: vec![
                OutputAxis::numbers("a", "1", vec![1.0, 2.0]),
                OutputAxis::labels("b", &["x", "y", "z"]),
            ],
            values: Values::Single((0..6).map(f64::from).collect()),
            meta: Map::new(),
        };
        let mut buf = Vec::new();
        artifact.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 7);
        assert_eq!(lines[0], "a,b,value");
        assert!(lines[2].contains(",y,"));
        assert!(lines[4].starts_with("2.0") && lines[4].contains(",x,3.0"));
    }

    #[test]
    fn json_layout() {
        let artifact = Artifact {
            axes: vec![OutputAxis::numbers("element", "1", vec![1.0, 2.0])],
            values: Values::Columns(vec![
                ("phases".into(), vec![0.0, 1.0]),
                ("delays".into(), vec![0.0, 2e-12]),
            ]),
            meta: Map::new(),
        }
        .with_meta("regime", json!("far"));
        let v = artifact.to_json();
        assert_eq!(v["values"]["phases"][1], json!(1.0));
        assert_eq!(v["axes"][0]["name"], json!("element"));
        assert_eq!(v["meta"]["regime"], json!("far"));
    }
}
