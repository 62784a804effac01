//! Feature CSV: `id,label,f000,...` with 17 significant digits per value.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::symmetry::OrderingLabel;

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub id: String,
    pub label: OrderingLabel,
    pub values: Vec<f64>,
}

/// Scientific notation with 17 significant digits, e.g. `1.5000000000000000e0`.
pub fn format_value(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_feature_csv<W: Write>(w: W, width: usize, rows: &[FeatureRow]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(w);
    let mut header = vec!["id".to_string(), "label".to_string()];
    header.extend((0..width).map(|i| format!("f{i:03}")));
    writer.write_record(&header)?;
    for row in rows {
        if row.values.len() != width {
            return Err(Error::SchemaMismatch {
                expected: width,
                got: row.values.len(),
            });
        }
        let mut rec = Vec::with_capacity(width + 2);
        rec.push(row.id.clone());
        rec.push(row.label.to_string());
        rec.extend(row.values.iter().map(|&x| format_value(x)));
        writer.write_record(&rec)?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads a feature CSV, returning the feature width and the rows.
pub fn read_feature_csv<R: Read>(r: R) -> Result<(usize, Vec<FeatureRow>)> {
    let mut reader = csv::Reader::from_reader(r);
    let header = reader.headers()?.clone();
    if header.len() < 2 || &header[0] != "id" || &header[1] != "label" {
        return Err(Error::Data("feature CSV must start with `id,label`".into()));
    }
    let width = header.len() - 2;
    for (i, h) in header.iter().skip(2).enumerate() {
        if h != format!("f{i:03}") {
            return Err(Error::Data(format!("unexpected feature column `{h}`")));
        }
    }
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let values = rec
            .iter()
            .skip(2)
            .map(|s| {
                s.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| Error::Data(format!("invalid feature value `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(FeatureRow {
            id: rec[0].to_string(),
            label: rec[1].parse()?,
            values,
        });
    }
    Ok((width, rows))
}
