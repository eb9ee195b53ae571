use std::io::Write;

use anyhow::{Context, Result};
use serde_json::Value;

use crate::{Format, GlobalOpts};

/// Dotted-key view of a report; arrays stay as compact JSON.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(report: &Value, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv | Format::Text => {
            let mut fields = Vec::new();
            flatten("", report, &mut fields);
            if format == Format::Csv {
                let header: Vec<String> = fields.iter().map(|(k, _)| csv_field(k)).collect();
                let row: Vec<String> = fields.iter().map(|(_, v)| csv_field(v)).collect();
                format!("{}\n{}\n", header.join(","), row.join(","))
            } else {
                fields.iter().map(|(k, v)| format!("{k}: {v}\n")).collect()
            }
        }
    })
}

pub fn emit(report: &Value, opts: &GlobalOpts) -> Result<()> {
    let text = render(report, opts.format)?;
    match &opts.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}
