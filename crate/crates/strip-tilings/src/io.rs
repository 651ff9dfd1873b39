//! Plain-text formats for specs, windows, seeds, polygons and patches.
//!
//! All formats are line-based; blank lines and lines starting with `#` are
//! skipped.  Emitters produce canonical text that parses back to an equal
//! value; for windows the TSV round trip is byte-exact.
//!
//! Spec document:
//! ```text
//! period P dx dy
//! conn x y          (P lines, the fundamental staircase points in order)
//! internal alpha upper p q
//! internal alpha lower p q
//! ```
//!
//! Window document:
//! ```text
//! rows i0 i1
//! cols j0 j1
//! <tab-separated entries, one line per row>
//! ```
//!
//! Seed document: `i j value` lines.  Polygon document: `ngon N` then
//! `diag a b` lines.  Column document: whitespace-separated integers.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::polygon::{PolygonError, PolygonTriangulation};
use crate::strip::{
    Arc, FinitePatch, PeriodicTriangulationSpec, TriangulationSource, ValidationReport,
};
use crate::tiling::{Seed, TilingWindow, WindowError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid spec: {0}")]
    InvalidSpec(ValidationReport),
    #[error("invalid window: {0}")]
    InvalidWindow(#[from] WindowError),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(#[from] PolygonError),
}

fn syntax(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Content lines with their 1-based line numbers; comments and blanks
/// dropped.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(ix, l)| (ix + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_token<T: FromStr>(line: usize, token: &str, what: &str) -> Result<T, IoError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("expected {what}, found {token:?}")))
}

/// Splits a line into its keyword and exactly `n` further tokens.
fn fields<'a>(
    line: usize,
    text: &'a str,
    keyword: &str,
    n: usize,
) -> Result<Vec<&'a str>, IoError> {
    let mut parts = text.split_whitespace();
    let head = parts.next().unwrap_or_default();
    debug_assert_eq!(head, keyword);
    let rest: Vec<&str> = parts.collect();
    if rest.len() != n {
        return Err(syntax(
            line,
            format!("`{keyword}` takes {n} argument(s), found {}", rest.len()),
        ));
    }
    Ok(rest)
}

/// Parses a spec document and validates the spec.
pub fn parse_spec(text: &str) -> Result<PeriodicTriangulationSpec, IoError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "empty document, expected `period P dx dy`"))?;
    if !header.starts_with("period") {
        return Err(syntax(ln, "expected `period P dx dy` first"));
    }
    let f = fields(ln, header, "period", 3)?;
    let period: usize = parse_token(ln, f[0], "a positive period")?;
    if period == 0 {
        return Err(syntax(ln, "period must be at least 1"));
    }
    let dx: i64 = parse_token(ln, f[1], "an integer shift dx")?;
    let dy: i64 = parse_token(ln, f[2], "an integer shift dy")?;

    let mut connecting = Vec::with_capacity(period);
    let mut internal: Vec<Vec<Arc>> = vec![Vec::new(); period];
    for (ln, line) in lines {
        let keyword = line.split_whitespace().next().unwrap_or_default();
        match keyword {
            "conn" => {
                let f = fields(ln, line, "conn", 2)?;
                if connecting.len() == period {
                    return Err(syntax(ln, format!("more than {period} `conn` lines")));
                }
                let x: i64 = parse_token(ln, f[0], "an integer")?;
                let y: i64 = parse_token(ln, f[1], "an integer")?;
                connecting.push((x, y));
            }
            "internal" => {
                let f = fields(ln, line, "internal", 4)?;
                let alpha: usize = parse_token(ln, f[0], "a step index")?;
                if alpha >= period {
                    return Err(syntax(
                        ln,
                        format!("step index {alpha} out of range 0..{period}"),
                    ));
                }
                let p: i64 = parse_token(ln, f[2], "an integer")?;
                let q: i64 = parse_token(ln, f[3], "an integer")?;
                let arc = match f[1] {
                    "upper" => Arc::upper_internal(p, q),
                    "lower" => Arc::lower_internal(p, q),
                    other => {
                        return Err(syntax(
                            ln,
                            format!("arc kind must be `upper` or `lower`, found {other:?}"),
                        ))
                    }
                }
                .map_err(|e| syntax(ln, e.to_string()))?;
                internal[alpha].push(arc);
            }
            other => {
                return Err(syntax(
                    ln,
                    format!("unknown keyword {other:?}, expected `conn` or `internal`"),
                ))
            }
        }
    }
    if connecting.len() != period {
        return Err(syntax(
            0,
            format!("expected {period} `conn` lines, found {}", connecting.len()),
        ));
    }
    PeriodicTriangulationSpec::new(connecting, (dx, dy), internal).map_err(IoError::InvalidSpec)
}

/// Canonical spec document.
pub fn emit_spec(spec: &PeriodicTriangulationSpec) -> String {
    let (dx, dy) = spec.shift();
    let mut out = String::new();
    writeln!(out, "period {} {} {}", spec.period(), dx, dy).unwrap();
    for &(x, y) in spec.fundamental_points() {
        writeln!(out, "conn {x} {y}").unwrap();
    }
    for alpha in 0..spec.period() as i64 {
        for arc in spec.internal_arcs_of_step(alpha) {
            match arc {
                Arc::UpperInternal { p, q } => writeln!(out, "internal {alpha} upper {p} {q}"),
                Arc::LowerInternal { p, q } => writeln!(out, "internal {alpha} lower {p} {q}"),
                Arc::Connecting { .. } => unreachable!("steps hold internal arcs only"),
            }
            .unwrap();
        }
    }
    out
}

/// Parses a window document.
pub fn parse_window(text: &str) -> Result<TilingWindow, IoError> {
    let mut lines = content_lines(text);
    let (ln, rows_line) = lines
        .next()
        .ok_or_else(|| syntax(1, "empty document, expected `rows i0 i1`"))?;
    if !rows_line.starts_with("rows") {
        return Err(syntax(ln, "expected `rows i0 i1` first"));
    }
    let f = fields(ln, rows_line, "rows", 2)?;
    let i0: i64 = parse_token(ln, f[0], "an integer")?;
    let i1: i64 = parse_token(ln, f[1], "an integer")?;
    let (ln, cols_line) = lines
        .next()
        .ok_or_else(|| syntax(ln + 1, "expected `cols j0 j1`"))?;
    if !cols_line.starts_with("cols") {
        return Err(syntax(ln, "expected `cols j0 j1`"));
    }
    let f = fields(ln, cols_line, "cols", 2)?;
    let j0: i64 = parse_token(ln, f[0], "an integer")?;
    let j1: i64 = parse_token(ln, f[1], "an integer")?;

    let mut values: Vec<Vec<BigInt>> = Vec::new();
    let mut last_ln = ln;
    for (ln, line) in lines {
        let row: Result<Vec<BigInt>, IoError> = line
            .split_whitespace()
            .map(|tok| parse_token(ln, tok, "a decimal integer"))
            .collect();
        values.push(row?);
        last_ln = ln;
    }
    if i1 >= i0 && values.len() != (i1 - i0 + 1) as usize {
        return Err(syntax(
            last_ln,
            format!("expected {} data rows, found {}", i1 - i0 + 1, values.len()),
        ));
    }
    TilingWindow::new((i0, i1), (j0, j1), values).map_err(IoError::from)
}

/// Output layout for window text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WindowStyle {
    /// Machine format; `parse_window` reads it back byte-exactly.
    #[default]
    Tsv,
    /// Right-aligned columns with row and column coordinate rulers.
    Ascii,
}

/// Renders a window document.
pub fn emit_window(w: &TilingWindow, style: WindowStyle) -> String {
    match style {
        WindowStyle::Tsv => emit_window_tsv(w),
        WindowStyle::Ascii => emit_window_ascii(w),
    }
}

fn emit_window_tsv(w: &TilingWindow) -> String {
    let (i0, i1) = w.row_range();
    let (j0, j1) = w.col_range();
    let mut out = String::new();
    writeln!(out, "rows {i0} {i1}").unwrap();
    writeln!(out, "cols {j0} {j1}").unwrap();
    for i in i0..=i1 {
        let row: Vec<String> = (j0..=j1).map(|j| w.get(i, j).to_string()).collect();
        writeln!(out, "{}", row.join("\t")).unwrap();
    }
    out
}

fn emit_window_ascii(w: &TilingWindow) -> String {
    let (i0, i1) = w.row_range();
    let (j0, j1) = w.col_range();
    let row_label_width = (i0..=i1).map(|i| i.to_string().len()).max().unwrap_or(1);
    let col_widths: Vec<usize> = (j0..=j1)
        .map(|j| {
            (i0..=i1)
                .map(|i| w.get(i, j).to_string().len())
                .chain(std::iter::once(j.to_string().len()))
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut out = String::new();
    write!(out, "{:>row_label_width$}", "").unwrap();
    for (k, j) in (j0..=j1).enumerate() {
        write!(out, "  {:>width$}", j, width = col_widths[k]).unwrap();
    }
    out.push('\n');
    for i in i0..=i1 {
        write!(out, "{i:>row_label_width$}").unwrap();
        for (k, j) in (j0..=j1).enumerate() {
            write!(out, "  {:>width$}", w.get(i, j), width = col_widths[k]).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Parses a seed document of `i j value` lines.
pub fn parse_seeds(text: &str) -> Result<Vec<Seed>, IoError> {
    let mut seeds = Vec::new();
    for (ln, line) in content_lines(text) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(syntax(ln, "expected `i j value`"));
        }
        let i: i64 = parse_token(ln, parts[0], "an integer")?;
        let j: i64 = parse_token(ln, parts[1], "an integer")?;
        let value: BigInt = parse_token(ln, parts[2], "a decimal integer")?;
        seeds.push(((i, j), value));
    }
    Ok(seeds)
}

/// Parses a polygon document: `ngon N`, then `diag a b` lines.
pub fn parse_polygon(text: &str) -> Result<PolygonTriangulation, IoError> {
    let mut lines = content_lines(text);
    let (ln, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "empty document, expected `ngon N`"))?;
    if !header.starts_with("ngon") {
        return Err(syntax(ln, "expected `ngon N` first"));
    }
    let f = fields(ln, header, "ngon", 1)?;
    let vertex_count: usize = parse_token(ln, f[0], "a vertex count")?;
    let mut diagonals = Vec::new();
    for (ln, line) in lines {
        if !line.starts_with("diag") {
            return Err(syntax(ln, "expected `diag a b`"));
        }
        let f = fields(ln, line, "diag", 2)?;
        let a: usize = parse_token(ln, f[0], "a vertex label")?;
        let b: usize = parse_token(ln, f[1], "a vertex label")?;
        diagonals.push((a, b));
    }
    PolygonTriangulation::new(vertex_count, diagonals).map_err(IoError::from)
}

/// Parses a whitespace-separated list of integers.
pub fn parse_column(text: &str) -> Result<Vec<BigInt>, IoError> {
    let mut values = Vec::new();
    for (ln, line) in content_lines(text) {
        for tok in line.split_whitespace() {
            values.push(parse_token(ln, tok, "a decimal integer")?);
        }
    }
    Ok(values)
}

/// Renders a patch in spec-document style, with completeness flags.
pub fn emit_patch(patch: &FinitePatch) -> String {
    let mut out = String::new();
    writeln!(out, "patch {}", patch.len()).unwrap();
    for &(x, y) in patch.points() {
        writeln!(out, "conn {x} {y}").unwrap();
    }
    for k in 0..patch.len().saturating_sub(1) as i64 {
        for arc in patch.internal_arcs_of_step(k) {
            match arc {
                Arc::UpperInternal { p, q } => writeln!(out, "internal {k} upper {p} {q}"),
                Arc::LowerInternal { p, q } => writeln!(out, "internal {k} lower {p} {q}"),
                Arc::Connecting { .. } => unreachable!("steps hold internal arcs only"),
            }
            .unwrap();
        }
    }
    let (first, last) = patch.boundary_complete();
    let flag = |b: bool| if b { "complete" } else { "incomplete" };
    writeln!(out, "boundary first {}", flag(first)).unwrap();
    writeln!(out, "boundary last {}", flag(last)).unwrap();
    out
}

/// Renders a frieze grid row by row, entries tab-separated, rows indented
/// by their starting column.
pub fn emit_frieze(grid: &crate::frieze::FriezeGrid) -> String {
    let n = grid.width();
    let mut out = String::new();
    for r in 0..=n {
        let mut line = String::new();
        for _ in 0..r {
            line.push('\t');
        }
        let row: Vec<String> = (r + 1..=r + n)
            .map(|c| grid.get(r, c).expect("cell in band").to_string())
            .collect();
        line.push_str(&row.join("\t"));
        writeln!(out, "{line}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn staircase_text() -> &'static str {
        "# the simplest periodic staircase\nperiod 2 -1 1\nconn 0 0\nconn 0 1\n"
    }

    #[test]
    fn parses_the_staircase() {
        let spec = parse_spec(staircase_text()).unwrap();
        assert_eq!(spec.period(), 2);
        assert_eq!(spec.shift(), (-1, 1));
        assert_eq!(spec.fundamental_points(), &[(0, 0), (0, 1)]);
    }

    #[test]
    fn spec_roundtrip_is_identity() {
        let spec = PeriodicTriangulationSpec::new(
            vec![(0, 0), (-2, 0), (-2, 1)],
            (-2, 2),
            vec![vec![Arc::upper_internal(-2, 0).unwrap()], vec![], vec![]],
        )
        .unwrap();
        let text = emit_spec(&spec);
        let reparsed = parse_spec(&text).unwrap();
        assert_eq!(reparsed, spec);
        assert_eq!(emit_spec(&reparsed), text);
    }

    #[test]
    fn spec_errors_carry_line_numbers() {
        let err = parse_spec("period 2 -1 1\nconn 0 0\nconn zero 1\n").unwrap_err();
        assert_eq!(
            err,
            IoError::Syntax {
                line: 3,
                msg: "expected an integer, found \"zero\"".into()
            }
        );

        let err = parse_spec("period 2 -1 1\nconn 0 0\nconn 0 1\nfrob 1\n").unwrap_err();
        assert!(matches!(err, IoError::Syntax { line: 4, .. }));

        let err = parse_spec("period 1 0 1\nconn 0 0\n").unwrap_err();
        assert!(matches!(err, IoError::InvalidSpec(_)), "{err:?}");
    }

    #[test]
    fn spec_rejects_malformed_internal_lines() {
        let base = "period 2 -1 1\nconn 0 0\nconn 0 1\n";
        let err = parse_spec(&format!("{base}internal 5 upper 0 2\n")).unwrap_err();
        assert!(matches!(err, IoError::Syntax { line: 4, .. }));
        let err = parse_spec(&format!("{base}internal 0 sideways 0 2\n")).unwrap_err();
        assert!(matches!(err, IoError::Syntax { line: 4, .. }));
        let err = parse_spec(&format!("{base}internal 0 upper 0 1\n")).unwrap_err();
        assert!(matches!(err, IoError::Syntax { line: 4, .. }));
    }

    #[test]
    fn window_tsv_roundtrip_is_byte_exact() {
        let w = TilingWindow::new(
            (0, 1),
            (0, 2),
            vec![
                vec![BigInt::from(1), BigInt::from(1), BigInt::from(2)],
                vec![BigInt::from(2), BigInt::from(3), BigInt::from(7)],
            ],
        )
        .unwrap();
        let text = emit_window(&w, WindowStyle::Tsv);
        assert_eq!(text, "rows 0 1\ncols 0 2\n1\t1\t2\n2\t3\t7\n");
        let reparsed = parse_window(&text).unwrap();
        assert_eq!(reparsed, w);
        assert_eq!(emit_window(&reparsed, WindowStyle::Tsv), text);
    }

    #[test]
    fn one_by_one_window_document() {
        let w = TilingWindow::new((0, 0), (0, 0), vec![vec![BigInt::one()]]).unwrap();
        assert_eq!(emit_window(&w, WindowStyle::Tsv), "rows 0 0\ncols 0 0\n1\n");
    }

    #[test]
    fn ascii_style_carries_rulers() {
        let w = TilingWindow::new(
            (-1, 0),
            (4, 5),
            vec![
                vec![BigInt::from(10), BigInt::from(3)],
                vec![BigInt::from(7), BigInt::from(2)],
            ],
        )
        .unwrap();
        let text = emit_window(&w, WindowStyle::Ascii);
        assert_eq!(text, "     4  5\n-1  10  3\n 0   7  2\n");
    }

    #[test]
    fn window_parse_reports_shape_errors() {
        let err = parse_window("rows 0 1\ncols 0 1\n1\t1\n").unwrap_err();
        assert!(matches!(err, IoError::Syntax { .. }));
        let err = parse_window("rows 0 0\ncols 0 1\n1\t2\t3\n").unwrap_err();
        assert!(matches!(
            err,
            IoError::InvalidWindow(WindowError::RowLength { .. })
        ));
        let err = parse_window("rows 0 0\ncols 0 0\n0\n").unwrap_err();
        assert!(matches!(
            err,
            IoError::InvalidWindow(WindowError::NotPositive { .. })
        ));
    }

    #[test]
    fn seeds_polygons_and_columns_parse() {
        let seeds = parse_seeds("# cross\n0 0 1\n0 1 2\n-1 0 3\n").unwrap();
        assert_eq!(seeds.len(), 3);
        assert_eq!(seeds[2], ((-1, 0), BigInt::from(3)));
        assert!(parse_seeds("0 0\n").is_err());

        let pt = parse_polygon("ngon 5\ndiag 0 2\ndiag 2 4\n").unwrap();
        assert_eq!(pt.vertex_count(), 5);
        assert!(parse_polygon("ngon 4\ndiag 0 1\n").is_err());

        assert_eq!(
            parse_column("1 2\n1\n").unwrap(),
            vec![BigInt::one(), BigInt::from(2), BigInt::one()]
        );
    }

    #[test]
    fn patch_listing_shows_flags() {
        let patch = FinitePatch::new(
            vec![(0, 0), (-2, 0)],
            vec![vec![Arc::upper_internal(-2, 0).unwrap()]],
            (false, false),
        )
        .unwrap();
        let text = emit_patch(&patch);
        assert_eq!(
            text,
            "patch 2\nconn 0 0\nconn -2 0\ninternal 0 upper -2 0\n\
             boundary first incomplete\nboundary last incomplete\n"
        );
    }

    #[test]
    fn frieze_grid_renders_diagonally() {
        let pt = PolygonTriangulation::new(4, vec![(1, 3)]).unwrap();
        let grid = crate::frieze::FriezeGrid::from_polygon(&pt);
        let text = emit_frieze(&grid);
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("1\t"));
    }
}
