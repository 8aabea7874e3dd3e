use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Map, Value};

/// Where the algebra came from, and the SHA-256 of its text.
#[derive(Clone, Debug)]
pub struct Input {
    pub source: String,
    pub digest: String,
}

/// Ordered report fields. Text and machine output render the same values,
/// so every number in one appears in the other.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub input: Option<Input>,
    pub fields: Vec<(String, Value)>,
    pub elapsed: Duration,
    pub exit_code: i32,
    /// Printed verbatim after the text report (an emitted algebra file).
    pub attachment: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Report::default()
        }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.push((key.to_owned(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_machine(&self) -> Value {
        let mut fields = Map::new();
        for (k, v) in &self.fields {
            fields.insert(k.clone(), v.clone());
        }
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.command));
        if let Some(input) = &self.input {
            doc.insert("input".into(), json!({"source": input.source, "sha256": input.digest}));
        }
        doc.insert("report".into(), Value::Object(fields));
        if let Some(a) = &self.attachment {
            doc.insert("text".into(), json!(a));
        }
        doc.insert("exit_code".into(), json!(self.exit_code));
        doc.insert("time_ms".into(), json!(self.elapsed.as_millis() as u64));
        Value::Object(doc)
    }

    /// With an attachment, the envelope lines are `#` comments so that the
    /// output stays a valid algebra file.
    pub fn to_text(&self) -> String {
        let prefix = if self.attachment.is_some() { "# " } else { "" };
        let mut out = String::new();
        let _ = writeln!(out, "{prefix}nilcohopf {}", self.command);
        if let Some(input) = &self.input {
            let _ = writeln!(out, "{prefix}input: {} (sha256 {})", input.source, input.digest);
        }
        for (k, v) in &self.fields {
            render(&mut out, prefix, 0, k, v);
        }
        let _ = writeln!(
            out,
            "{prefix}exit_code: {}, time_ms: {}",
            self.exit_code,
            self.elapsed.as_millis()
        );
        if let Some(a) = &self.attachment {
            out.push_str(a);
        }
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".to_owned()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| matches!(i, Value::Number(_) | Value::Bool(_))) => Some(format!(
            "[{}]",
            items
                .iter()
                .map(|i| scalar(i).unwrap_or_default())
                .collect::<Vec<_>>()
                .join(", ")
        )),
        _ => None,
    }
}

fn render(out: &mut String, prefix: &str, depth: usize, key: &str, v: &Value) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        let _ = writeln!(out, "{prefix}{pad}{key}: {s}");
        return;
    }
    let _ = writeln!(out, "{prefix}{pad}{key}:");
    match v {
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                render(out, prefix, depth + 1, &format!("[{}]", i + 1), item);
            }
        }
        Value::Object(map) => {
            for (k, item) in map {
                render(out, prefix, depth + 1, k, item);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_and_machine_agree() {
        let mut r = Report::new("bch @x");
        r.push("product", "e1 + e2 + e3");
        r.push("dims", json!([3, 1, 0]));
        r.push("nested", json!({"a": 1, "b": [{"c": "2/3"}]}));
        let text = r.to_text();
        assert!(text.contains("product: e1 + e2 + e3"));
        assert!(text.contains("dims: [3, 1, 0]"));
        assert!(text.contains("      c: 2/3"), "{text}");
        let m = r.to_machine();
        assert_eq!(m["report"]["dims"], json!([3, 1, 0]));
    }

    #[test]
    fn attachment_envelope_is_commented() {
        let mut r = Report::new("catalog cn7");
        r.attachment = Some("dim 1\n".to_owned());
        let text = r.to_text();
        assert!(text.lines().filter(|l| !l.starts_with('#')).eq(["dim 1"]));
    }
}
