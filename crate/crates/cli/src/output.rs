//! The result document and its JSON / CSV renderings.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_rational::Rational64;
use serde_json::{json, Map, Value};

/// One named check: `value ≤ tolerance` passes.
#[derive(Debug, Clone)]
pub struct Diagnostic {
    pub check: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Diagnostic {
    pub fn new(check: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Diagnostic { check: check.into(), value, tolerance }
    }

    /// NaN never passes.
    pub fn pass(&self) -> bool {
        self.value <= self.tolerance
    }
}

#[derive(Debug, Clone)]
pub struct CommandResult {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub outputs: Map<String, Value>,
    pub diagnostics: Vec<Diagnostic>,
}

impl CommandResult {
    pub fn passed(&self) -> bool {
        self.diagnostics.iter().all(Diagnostic::pass)
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let diagnostics: Vec<Value> = self
            .diagnostics
            .iter()
            .map(|d| {
                json!({
                    "check": d.check,
                    "value": num(d.value, digits),
                    "tolerance": num(d.tolerance, digits),
                    "pass": d.pass(),
                })
            })
            .collect();
        let mut doc = json!({
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "diagnostics": diagnostics,
        });
        round_all(&mut doc, digits);
        doc
    }
}

/// `v` rounded to `digits` significant digits. Non-finite values become the
/// strings `"NaN"`, `"inf"`, `"-inf"`.
pub fn num(v: f64, digits: usize) -> Value {
    if v.is_nan() {
        return Value::String("NaN".into());
    }
    if v.is_infinite() {
        return Value::String(if v > 0.0 { "inf" } else { "-inf" }.into());
    }
    let r: f64 = format!("{:.*e}", digits.saturating_sub(1), v).parse().unwrap_or(v);
    // Avoid a signed zero in the output.
    json!(if r == 0.0 { 0.0 } else { r })
}

fn round_all(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => *v = num(n.as_f64().unwrap_or(f64::NAN), digits),
        Value::Array(xs) => xs.iter_mut().for_each(|x| round_all(x, digits)),
        Value::Object(m) => m.values_mut().for_each(|x| round_all(x, digits)),
        _ => {}
    }
}

pub fn cx(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn rat(r: Rational64) -> Value {
    Value::String(r.to_string())
}

pub fn mat(m: &[[Complex64; 2]; 2]) -> Value {
    Value::Array(m.iter().map(|row| Value::Array(row.iter().map(|&z| cx(z)).collect())).collect())
}

/// CSV of the first array-of-objects payload among `tables`, one row per
/// entry; otherwise a single row of the whole payload. Nested values are
/// flattened into dotted column names.
pub fn to_csv(outputs: &Map<String, Value>, tables: &[&str], digits: usize) -> Result<String, csv::Error> {
    let mut rows: Vec<BTreeMap<String, String>> = Vec::new();
    let table = tables.iter().find_map(|k| match outputs.get(*k) {
        Some(Value::Array(xs)) if xs.iter().all(Value::is_object) && !xs.is_empty() => Some(xs),
        _ => None,
    });
    match table {
        Some(xs) => {
            for x in xs {
                let mut row = BTreeMap::new();
                flatten("", x, digits, &mut row);
                rows.push(row);
            }
        }
        None => {
            let mut row = BTreeMap::new();
            flatten("", &Value::Object(outputs.clone()), digits, &mut row);
            rows.push(row);
        }
    }
    let mut columns: Vec<String> = rows.iter().flat_map(|r| r.keys().cloned()).collect();
    columns.sort();
    columns.dedup();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&columns)?;
    for r in &rows {
        w.write_record(columns.iter().map(|c| r.get(c).map(String::as_str).unwrap_or("")))?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn flatten(prefix: &str, v: &Value, digits: usize, out: &mut BTreeMap<String, String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, digits, out)),
        Value::Array(xs) => xs.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, digits, out)),
        Value::Number(n) if n.is_f64() => {
            out.insert(prefix.to_string(), num(n.as_f64().unwrap_or(f64::NAN), digits).to_string().trim_matches('"').into());
        }
        Value::String(s) => {
            out.insert(prefix.to_string(), s.clone());
        }
        Value::Null => {
            out.insert(prefix.to_string(), String::new());
        }
        other => {
            out.insert(prefix.to_string(), other.to_string());
        }
    }
}
