use crate::Format;
use serde_json::Value;

pub fn render(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut out = String::new();
            flatten("", value, &mut out);
            out
        }
    }
}

// One `path<TAB>value` line per leaf. Arrays of scalars stay on one line;
// a partition renders as `1,2|3`.
fn flatten(path: &str, value: &Value, out: &mut String) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items)
            if items
                .iter()
                .any(|v| v.is_object() || v.is_array() && has_nested(v)) =>
        {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        _ => {
            out.push_str(path);
            out.push('\t');
            out.push_str(&scalar(value));
            out.push('\n');
        }
    }
}

fn has_nested(v: &Value) -> bool {
    v.as_array().is_some_and(|items| {
        items
            .iter()
            .any(|x| x.is_object() || x.is_array() && has_nested(x))
    })
}

fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let sep = if items.iter().any(Value::is_array) {
                "|"
            } else {
                ","
            };
            items.iter().map(scalar).collect::<Vec<_>>().join(sep)
        }
        other => other.to_string(),
    }
}
