//! One result rendered three ways.

use serde_json::Value;

use crate::Format;
use mgspec::hermitian::round_sig;

pub struct Rendered {
    text: String,
    json: Value,
    csv: String,
}

impl Rendered {
    pub fn new(text: String, json: Value, csv: String) -> Rendered {
        Rendered { text, json, csv }
    }

    pub fn format(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialise"),
            Format::Csv => self.csv.clone(),
        }
    }
}

/// 12 significant digits.
pub fn json_number(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x, 12)).map_or(Value::Null, Value::Number)
}

pub fn csv_number(x: f64) -> String {
    round_sig(x, 12).to_string()
}
