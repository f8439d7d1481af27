//! SVM-Light model files (linear kernel only).
//!
//! Layout, one field per line with an optional trailing `# comment`:
//!
//! ```text
//! SVM-light Version V6.02
//! 0 # kernel type
//! 3 # kernel parameter -d
//! 1 # kernel parameter -g
//! 1 # kernel parameter -s
//! 1 # kernel parameter -r
//! empty# kernel parameter -u
//! 27 # highest feature index
//! 356 # number of training documents
//! 62 # number of support vectors plus 1
//! 0.5 # threshold b, each following line is a SV (starting with alpha*y)
//! 1.0 1:0.5 2:1.5 #
//! ```

use super::{parse_real, TrainedModel};
use crate::error::{Error, Result};

const HEADER_LINES: usize = 11;
const KERNEL_LINE: usize = 1;
const MAX_INDEX_LINE: usize = 7;
const SV_COUNT_LINE: usize = 9;
const THRESHOLD_LINE: usize = 10;

fn malformed(line: usize, msg: impl Into<String>) -> Error {
    Error::MalformedModel { line, msg: msg.into() }
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(head, _)| head).trim()
}

fn header_int(line_no: usize, text: &str) -> Result<i64> {
    strip_comment(text)
        .parse::<i64>()
        .map_err(|_| malformed(line_no, format!("expected an integer, found {:?}", strip_comment(text))))
}

/// Parses an SVM-Light model into a dense [`TrainedModel`].
///
/// The feature count is the declared highest feature index. Sparse entries
/// that are absent decode to 0.0. Header lines other than the kernel type,
/// highest index, SV count and threshold are ignored.
pub fn parse_svmlight_model(text: &str) -> Result<TrainedModel> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() < HEADER_LINES {
        return Err(malformed(lines.len() + 1, "truncated header"));
    }
    // line numbers below are 1-based
    let kernel = header_int(KERNEL_LINE + 1, lines[KERNEL_LINE])?;
    if kernel != 0 {
        return Err(Error::UnsupportedKernel(kernel));
    }
    let max_index = header_int(MAX_INDEX_LINE + 1, lines[MAX_INDEX_LINE])?;
    if max_index < 0 {
        return Err(malformed(MAX_INDEX_LINE + 1, "negative highest feature index"));
    }
    let sv_plus_one = header_int(SV_COUNT_LINE + 1, lines[SV_COUNT_LINE])?;
    if sv_plus_one < 2 {
        return Err(malformed(SV_COUNT_LINE + 1, "model declares no support vectors"));
    }
    let declared_svs = (sv_plus_one - 1) as usize;
    let bias = parse_real(strip_comment(lines[THRESHOLD_LINE])).map_err(|m| malformed(THRESHOLD_LINE + 1, m))?;

    let feature_count = (max_index as usize).max(1);
    let mut support_vectors = Vec::new();
    let mut alpha_y = Vec::new();
    for (offset, raw) in lines[HEADER_LINES..].iter().enumerate() {
        let line_no = HEADER_LINES + offset + 1;
        let body = strip_comment(raw);
        if body.is_empty() {
            if raw.trim().is_empty() {
                continue;
            }
            return Err(malformed(line_no, "support vector line without alpha*y"));
        }
        let mut tokens = body.split_whitespace();
        let ay = tokens.next().ok_or_else(|| malformed(line_no, "empty support vector line"))?;
        alpha_y.push(parse_real(ay).map_err(|m| malformed(line_no, m))?);

        let mut row = vec![0.0f32; feature_count];
        let mut last_index = 0usize;
        for pair in tokens {
            let (idx, val) = pair
                .split_once(':')
                .ok_or_else(|| malformed(line_no, format!("expected index:value, found {pair:?}")))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| malformed(line_no, format!("bad feature index {idx:?}")))?;
            if idx == 0 || idx > max_index as usize {
                return Err(malformed(
                    line_no,
                    format!("feature index {idx} outside 1..={max_index}"),
                ));
            }
            if idx <= last_index {
                return Err(malformed(line_no, format!("feature index {idx} not increasing")));
            }
            last_index = idx;
            row[idx - 1] = parse_real(val).map_err(|m| malformed(line_no, m))?;
        }
        support_vectors.extend(row);
    }
    if alpha_y.len() != declared_svs {
        return Err(malformed(
            SV_COUNT_LINE + 1,
            format!("header declares {declared_svs} support vectors, file has {}", alpha_y.len()),
        ));
    }
    TrainedModel::new(declared_svs, feature_count, support_vectors, alpha_y, bias)
        .map_err(|e| malformed(0, e.to_string()))
}

#[cfg(test)]
pub(crate) fn header(kernel: i64, max_index: usize, sv_plus_one: usize, b: &str) -> String {
    format!(
        "SVM-light Version V6.02\n{kernel} # kernel type\n3 # kernel parameter -d\n1 # kernel parameter -g\n\
         1 # kernel parameter -s\n1 # kernel parameter -r\nempty# kernel parameter -u\n\
         {max_index} # highest feature index\n10 # number of training documents\n\
         {sv_plus_one} # number of support vectors plus 1\n\
         {b} # threshold b, each following line is a SV (starting with alpha*y)\n"
    )
}
