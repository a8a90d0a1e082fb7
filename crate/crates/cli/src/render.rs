//! Plain-text layouts shared by the commands.

use std::fmt::Write;

/// Draws `values[y][x]` with `y` increasing upward.
pub fn grid_picture(values: &[Vec<u128>], x: &str, y: &str) -> String {
    let width = values
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .chain([values.first().map_or(1, Vec::len).to_string().len()])
        .max()
        .unwrap_or(1);
    let margin = values.len().saturating_sub(1).to_string().len();
    let mut out = String::new();
    writeln!(out, "{:>margin$}  {y}", "").unwrap();
    for (j, row) in values.iter().enumerate().rev() {
        write!(out, "{j:>margin$} |").unwrap();
        for v in row {
            write!(out, " {v:>width$}").unwrap();
        }
        out.push('\n');
    }
    let cols = values.first().map_or(0, Vec::len);
    writeln!(out, "{:>margin$} +{}", "", "-".repeat(cols * (width + 1))).unwrap();
    write!(out, "{:>margin$}  ", "").unwrap();
    for i in 0..cols {
        write!(out, " {i:>width$}").unwrap();
    }
    writeln!(out, "  {x}").unwrap();
    out
}

/// Header row of `x` values, then one row per `y` in increasing order.
pub fn grid_tsv(values: &[Vec<u128>], x: &str, y: &str) -> String {
    let cols = values.first().map_or(0, Vec::len);
    let mut out = format!("{y}\\{x}");
    for i in 0..cols {
        write!(out, "\t{i}").unwrap();
    }
    out.push('\n');
    for (j, row) in values.iter().enumerate() {
        write!(out, "{j}").unwrap();
        for v in row {
            write!(out, "\t{v}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn tsv<R, C>(header: &[&str], rows: R) -> String
where
    R: IntoIterator<Item = C>,
    C: IntoIterator<Item = String>,
{
    let mut out = header.join("\t");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row.into_iter().collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}
