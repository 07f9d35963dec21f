//! Reading and printing `name = value` model lines.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use modiff::{Assignment, SymbolTable};

use crate::Failure;

/// Model lines sorted by variable name.
pub fn render_model(symbols: &SymbolTable, values: &Assignment<BigInt>) -> String {
    let mut rows: Vec<(&str, &BigInt)> = symbols
        .iter()
        .filter_map(|(id, name)| values.get(id).map(|v| (name, v)))
        .collect();
    rows.sort();
    rows.iter()
        .map(|(name, v)| format!("{name} = {v}\n"))
        .collect()
}

/// Collects every `name = integer` line; other lines (verdicts, statistics,
/// `#` comments) are skipped, so a `solve` report can be fed back in.
pub fn parse_model(text: &str) -> Result<BTreeMap<String, BigInt>, Failure> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [name, "=", value] = fields.as_slice() else {
            continue;
        };
        if !modiff::system::is_valid_name(name) {
            continue;
        }
        let value: BigInt = value.parse().map_err(|_| {
            Failure::Input(format!("model line {}: invalid value `{value}`", i + 1))
        })?;
        if out.insert(name.to_string(), value).is_some() {
            return Err(Failure::Input(format!(
                "model line {}: `{name}` assigned twice",
                i + 1
            )));
        }
    }
    Ok(out)
}
