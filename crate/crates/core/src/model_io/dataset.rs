use super::{parse_real, Label, LabeledDataset, TestInstance};
use crate::error::{Error, Result};

/// Reads a headerless CSV: feature columns followed by one label column
/// holding `1` or `-1`.
pub fn load_dataset(csv_text: &str) -> Result<LabeledDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .comment(Some(b'#'))
        .from_reader(csv_text.as_bytes());

    let mut dataset = LabeledDataset::default();
    let mut width: Option<usize> = None;
    for record in reader.records() {
        let record = record.map_err(|e| Error::MalformedDataset {
            line: e.position().map_or(0, |p| p.line() as usize),
            msg: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let bad = |msg: String| Error::MalformedDataset { line, msg };
        if record.len() < 2 {
            return Err(bad(format!("row has {} columns, need features plus a label", record.len())));
        }
        match width {
            Some(w) if w != record.len() => {
                return Err(bad(format!("row has {} columns, expected {w}", record.len())))
            }
            _ => width = Some(record.len()),
        }
        let label_text = &record[record.len() - 1];
        let label = label_text
            .parse::<i64>()
            .ok()
            .and_then(Label::from_i64)
            .ok_or_else(|| bad(format!("label {label_text:?} is not 1 or -1")))?;
        let features = record
            .iter()
            .take(record.len() - 1)
            .map(parse_real)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(bad)?;
        let instance = TestInstance::new(features).map_err(|e| bad(e.to_string()))?;
        dataset.instances.push((instance, label));
    }
    Ok(dataset)
}

/// Renders a dataset in the format [`load_dataset`] reads.
pub fn emit_dataset(dataset: &LabeledDataset) -> String {
    let mut out = String::new();
    for (instance, label) in &dataset.instances {
        for v in instance.features() {
            out.push_str(&v.to_string());
            out.push(',');
        }
        out.push_str(&label.as_i8().to_string());
        out.push('\n');
    }
    out
}
