use std::fmt::Write as _;

use super::{ScoreRow, ScoreTable, TableFormat, COLUMNS};

/// Three decimals, "-" for an absent value.
pub fn format_cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.3}"),
        None => "-".to_string(),
    }
}

fn markdown_rows(out: &mut String, rows: &[ScoreRow]) {
    out.push_str("| System |");
    for c in COLUMNS {
        let _ = write!(out, " {c} |");
    }
    out.push_str("\n|---|");
    for _ in COLUMNS {
        out.push_str("---:|");
    }
    out.push('\n');
    for row in rows {
        let _ = write!(out, "| {} |", row.system);
        for v in row.cells {
            let _ = write!(out, " {} |", format_cell(v));
        }
        out.push('\n');
    }
}

fn warnings(table: &ScoreTable) -> Vec<String> {
    let per_row = table
        .rows
        .iter()
        .flat_map(|r| r.warnings.iter().map(move |w| format!("{}: {w}", r.system)));
    table.warnings.iter().cloned().chain(per_row).collect()
}

const TOML_FENCE: &str = "```toml\n";

pub fn render_table(table: &ScoreTable, format: TableFormat) -> String {
    match format {
        TableFormat::Markdown => {
            let mut out = String::new();
            if !table.rows.is_empty() {
                markdown_rows(&mut out, &table.rows);
            }
            if !table.reference_rows.is_empty() {
                out.push_str("\nPublished reference rows (not computed):\n\n");
                markdown_rows(&mut out, &table.reference_rows);
            }
            let warnings = warnings(table);
            if !warnings.is_empty() {
                out.push_str("\nWarnings:\n\n");
                for w in warnings {
                    let _ = writeln!(out, "- {w}");
                }
            }
            out.push_str("\nConfiguration:\n\n");
            out.push_str(TOML_FENCE);
            out.push_str(&table.config);
            if !table.config.ends_with('\n') {
                out.push('\n');
            }
            out.push_str("```\n");
            out
        }
        TableFormat::Csv => {
            let mut out = String::new();
            for line in table.config.lines() {
                let _ = writeln!(out, "# {line}");
            }
            out.push_str("system,computed");
            for c in COLUMNS {
                let _ = write!(out, ",{c}");
            }
            out.push('\n');
            for row in table.rows.iter().chain(&table.reference_rows) {
                let name = if row.system.contains([',', '"']) {
                    format!("\"{}\"", row.system.replace('"', "\"\""))
                } else {
                    row.system.clone()
                };
                let _ = write!(out, "{name},{}", row.computed);
                for v in row.cells {
                    let _ = write!(out, ",{}", v.map(|x| format!("{x:.3}")).unwrap_or_default());
                }
                out.push('\n');
            }
            out
        }
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(table).expect("table serializes");
            s.push('\n');
            s
        }
    }
}

/// Recovers the config snapshot embedded in a rendered table.
pub fn config_from_rendered(rendered: &str, format: TableFormat) -> Option<String> {
    match format {
        TableFormat::Markdown => {
            let start = rendered.find(TOML_FENCE)? + TOML_FENCE.len();
            let end = start + rendered[start..].find("```")?;
            Some(rendered[start..end].to_string())
        }
        TableFormat::Csv => {
            let mut out = String::new();
            for line in rendered.lines() {
                match line.strip_prefix("# ") {
                    Some(l) => {
                        out.push_str(l);
                        out.push('\n');
                    }
                    None if line == "#" => out.push('\n'),
                    None => break,
                }
            }
            Some(out)
        }
        TableFormat::Json => {
            let v: serde_json::Value = serde_json::from_str(rendered).ok()?;
            v.get("config")?.as_str().map(str::to_string)
        }
    }
}
