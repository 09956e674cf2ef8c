use lattice_fillings::floer::format_rational;
use lattice_fillings::Lattice;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

/// Ordered `field: value` output, rendered as text lines or as one JSON object.
#[derive(Default)]
pub struct Report {
    fields: Map<String, Value>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn rational(&mut self, key: &str, r: &BigRational) -> &mut Self {
        self.field(key, format_rational(r))
    }

    pub fn gram(&mut self, key: &str, l: &Lattice) -> &mut Self {
        self.field(key, gram_json(l))
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(&self.fields).expect("serializable") + "\n";
        }
        let mut out = String::new();
        for (k, v) in &self.fields {
            match v {
                Value::Array(rows) if rows.iter().any(Value::is_array) => {
                    out.push_str(&format!("{k}:\n"));
                    for row in rows {
                        out.push_str(&format!("  {}\n", scalar(row)));
                    }
                }
                _ => out.push_str(&format!("{k}: {}\n", scalar(v))),
            }
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.to_string(),
        Value::Null => "-".to_string(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

pub fn gram_json(l: &Lattice) -> Value {
    json!(l.gram_rows())
}

/// Rows from `{"gram": [[..]], ..}` or a bare array of rows.
pub fn lattice_from_json(v: &Value) -> Option<Vec<Vec<i64>>> {
    let rows = match v {
        Value::Object(m) => m.get("gram")?,
        other => other,
    };
    rows.as_array()?
        .iter()
        .map(|r| r.as_array()?.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
        .collect()
}
