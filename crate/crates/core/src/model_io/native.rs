//! Three-file native format: `svs.txt` (one support vector per line),
//! `alpha.txt` (`b` followed by the `S` alpha*y values) and `test.txt`
//! (the features of one instance). All whitespace-separated decimal.

use std::fmt::Write as _;

use super::{parse_real, TestInstance, TrainedModel};
use crate::error::{Error, Result};

pub fn parse_native_model(svs_text: &str, alpha_text: &str) -> Result<TrainedModel> {
    let mut rows: Vec<Vec<f32>> = Vec::new();
    for (i, line) in svs_text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(parse_real)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|msg| Error::MalformedModel { line: i + 1, msg })?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::MalformedModel {
                    line: i + 1,
                    msg: format!("row has {} values, expected {}", row.len(), first.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::MalformedModel { line: 1, msg: "no support vectors".into() });
    }

    let alphas = alpha_text
        .split_whitespace()
        .map(parse_real)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|msg| Error::MalformedModel { line: 0, msg: format!("alpha file: {msg}") })?;
    if alphas.len() != rows.len() + 1 {
        return Err(Error::MalformedModel {
            line: 0,
            msg: format!(
                "alpha file has {} values, expected {} (b plus one per support vector)",
                alphas.len(),
                rows.len() + 1
            ),
        });
    }
    let bias = alphas[0];
    TrainedModel::from_rows(rows, alphas[1..].to_vec(), bias)
}

pub fn parse_test_instance(text: &str, feature_count: usize) -> Result<TestInstance> {
    let features = text
        .split_whitespace()
        .map(parse_real)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(Error::MalformedInstance)?;
    if features.len() != feature_count {
        return Err(Error::MalformedInstance(format!(
            "expected {feature_count} features, found {}",
            features.len()
        )));
    }
    TestInstance::new(features)
}

/// Renders `(svs.txt, alpha.txt)` using shortest round-trip decimals.
pub fn emit_native_model(model: &TrainedModel) -> (String, String) {
    let mut svs = String::new();
    for row in model.rows() {
        push_values(&mut svs, row);
    }
    let mut alpha = String::new();
    push_values(&mut alpha, &[model.bias()]);
    for v in model.alpha_y() {
        push_values(&mut alpha, &[*v]);
    }
    (svs, alpha)
}

pub fn emit_test_instance(test: &TestInstance) -> String {
    let mut out = String::new();
    push_values(&mut out, test.features());
    out
}

fn push_values(out: &mut String, values: &[f32]) {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{v}").unwrap();
    }
    out.push('\n');
}
