//! Plain-text rendering helpers: aligned key/value tables and CSV.

use adiasearch::jsonfmt::format_float;

/// Align `key  value` pairs on the widest key.
pub fn kv_table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

/// CSV with a header row, comma separator and 17-significant-digit floats
/// (rows are preformatted by the caller).
pub fn csv(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = headers.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Table cell for a float: short scientific form.
pub fn cell(value: f64) -> String {
    format!("{value:.6e}")
}

/// CSV/flat cell for a float: full 17-significant-digit form.
pub fn cell_exact(value: f64) -> String {
    format_float(value)
}

/// Render a float list for human tables.
pub fn list(values: &[f64]) -> String {
    let inner: Vec<String> = values.iter().map(|&v| cell(v)).collect();
    format!("[{}]", inner.join(", "))
}

/// Four-column comparison table.
pub struct ComparisonRow {
    pub quantity: &'static str,
    pub computed: String,
    pub closed_form: String,
    pub relative_diff: String,
}

pub fn comparison_table(rows: &[ComparisonRow]) -> String {
    let w1 = rows
        .iter()
        .map(|r| r.computed.len())
        .chain(["computed".len()])
        .max()
        .unwrap();
    let w2 = rows
        .iter()
        .map(|r| r.closed_form.len())
        .chain(["closed-form".len()])
        .max()
        .unwrap();
    let w3 = rows
        .iter()
        .map(|r| r.relative_diff.len())
        .chain(["rel-diff".len()])
        .max()
        .unwrap();
    let mut out = String::new();
    out.push_str(&format!(
        "{:<12}  {:>w1$}  {:>w2$}  {:>w3$}\n",
        "quantity", "computed", "closed-form", "rel-diff"
    ));
    for row in rows {
        out.push_str(&format!(
            "{:<12}  {:>w1$}  {:>w2$}  {:>w3$}\n",
            row.quantity, row.computed, row.closed_form, row.relative_diff
        ));
    }
    out
}
