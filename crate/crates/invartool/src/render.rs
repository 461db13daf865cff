//! Plain-text rendering of report payloads: `key: value` lines, nested records indented.

use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items)
            if items
                .iter()
                .all(|i| matches!(i, Value::Number(_) | Value::Bool(_))) =>
        {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

pub fn human(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                match scalar(val) {
                    Some(s) => writeln!(out, "{pad}{key}: {s}").unwrap(),
                    None if is_empty(val) => writeln!(out, "{pad}{key}: none").unwrap(),
                    None => {
                        writeln!(out, "{pad}{key}:").unwrap();
                        write_value(out, val, indent + 2);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        let mut inner = String::new();
                        write_value(&mut inner, item, indent + 2);
                        let inner = inner.replacen(&" ".repeat(indent + 2), &format!("{pad}- "), 1);
                        out.push_str(&inner);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}

fn is_empty(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.is_empty(),
        Value::Object(o) => o.is_empty(),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn renders_nested_records() {
        let v = json!({
            "order": 8,
            "free": true,
            "degrees": [0, 0, 2],
            "hyperplanes": [{ "form": "x1", "s_u": 1 }, { "form": "x2", "s_u": 0 }],
            "basis": ["1⊗v1"],
            "witness": null,
            "empty": [],
        });
        let text = human(&v);
        assert_eq!(
            text,
            "order: 8\nfree: yes\ndegrees: [0, 0, 2]\nhyperplanes:\n  - form: x1\n    s_u: 1\n  - form: x2\n    s_u: 0\n\
             basis:\n  - 1⊗v1\nwitness: -\nempty: []\n"
        );
    }
}
