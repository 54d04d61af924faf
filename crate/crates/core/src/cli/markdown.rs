use std::collections::BTreeSet;
use std::fmt::Write;

use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            if items.is_empty() {
                "(none)".into()
            } else {
                items.iter().map(scalar).collect::<Vec<_>>().join(", ")
            }
        }
        other => other.to_string(),
    }
}

fn cell(v: Option<&Value>) -> String {
    v.map_or(String::new(), scalar)
        .replace('|', "\\|")
        .replace('\n', " ")
}

fn table(out: &mut String, rows: &[Value]) {
    let columns: BTreeSet<&str> = rows
        .iter()
        .filter_map(Value::as_object)
        .flat_map(|o| o.keys().map(String::as_str))
        .collect();
    let columns: Vec<&str> = columns.into_iter().collect();
    let _ = writeln!(out, "| {} |", columns.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(columns.len()));
    for row in rows {
        let cells: Vec<String> = columns.iter().map(|c| cell(row.get(*c))).collect();
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    out.push('\n');
}

fn fields(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    let Some(map) = v.as_object() else {
        let _ = writeln!(out, "{pad}- {}", scalar(v));
        return;
    };
    for (k, val) in map {
        match val {
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                let _ = writeln!(out, "{pad}- {k}:\n");
                table(out, items);
            }
            Value::Object(_) => {
                let _ = writeln!(out, "{pad}- {k}:");
                fields(out, val, indent + 2);
            }
            _ => {
                let _ = writeln!(out, "{pad}- {k}: {}", scalar(val));
            }
        }
    }
}

/// Renders the JSON report as Markdown, field for field.
pub fn render_markdown(report: &Value) -> String {
    let mut out = String::new();
    if let Some(h) = report.get("header") {
        let _ = writeln!(
            out,
            "<!-- {}, unix time {} -->",
            scalar(&h["generator"]),
            h["unix_time"]
        );
    }
    out.push_str("# reecd report\n\n## Config\n\n");
    fields(&mut out, &report["config"], 0);
    out.push_str("\n## Checks\n");
    for check in report["checks"].as_array().into_iter().flatten() {
        let d = match &check["d"] {
            Value::Null => String::new(),
            d => format!(", d = {d}"),
        };
        let _ = writeln!(
            out,
            "\n### {}, f = {}{d}: {}\n",
            scalar(&check["check_id"]),
            check["f"],
            scalar(&check["status"])
        );
        let _ = writeln!(out, "- detail: {}", scalar(&check["detail"]));
        let _ = writeln!(out, "- anchor: `{}`", scalar(&check["anchor"]));
        match &check["witness"] {
            Value::Null => out.push_str("- witness: null\n"),
            w => {
                out.push_str("- witness:\n");
                fields(&mut out, w, 2);
            }
        }
    }
    out.push_str("\n## Summary\n\n");
    let summary = &report["summary"];
    for (k, v) in summary.as_object().into_iter().flatten() {
        match v {
            Value::Array(items) if !items.is_empty() => {
                let _ = writeln!(out, "- {k}:");
                for item in items {
                    let _ = writeln!(out, "  - {}", scalar(item));
                }
            }
            _ => {
                let _ = writeln!(out, "- {k}: {}", scalar(v));
            }
        }
    }
    out
}
