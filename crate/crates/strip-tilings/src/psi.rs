//! From tilings back to strip triangulations.
//!
//! The entries equal to 1 of a tiling with enough ones form a zig-zag
//! staircase; the portion visible in a window is recovered by
//! [`extract_zigzag`].  Each zig-zag point yields a connecting arc.  For a
//! step between consecutive points the column (or row) segment joining them
//! is a boundary column of the frieze of the step polygon, so propagating
//! it with [`FriezeGrid::from_boundary_column`] and reading the interior
//! ones recovers the internal arcs of the step.  [`psi_window`] assembles
//! the result as a [`FinitePatch`].
//!
//! [`roundtrip_check`] drives both directions at once: it generates a
//! window from a spec, reconstructs the patch, compares its arcs with the
//! spec's, and regenerates the window entries from the patch alone.

use num_bigint::BigInt;
use thiserror::Error;

use crate::frieze::{triangulation_from_ones, FriezeError, FriezeGrid};
use crate::phi::{max_satisfying, min_satisfying, phi_window, PolygonCache};
use crate::strip::{
    Arc, FinitePatch, PeriodicTriangulationSpec, TriangulationSource, ValidationReport,
};
use crate::tiling::TilingWindow;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PsiError {
    /// No entry of the window equals 1.
    #[error("the window contains no entry equal to 1")]
    NoOnes,
    /// Two ones lie strictly northwest/southeast of each other, which no
    /// tiling admits.
    #[error("ones at ({}, {}) and ({}, {}) lie in each other's open quadrant", .a.0, .a.1, .b.0, .b.1)]
    QuadrantViolation { a: (i64, i64), b: (i64, i64) },
    /// Two consecutive ones share neither row nor column; the corner one
    /// between them is missing from the window.
    #[error("consecutive ones at ({}, {}) and ({}, {}) share no row or column", .a.0, .a.1, .b.0, .b.1)]
    MissingCorner { a: (i64, i64), b: (i64, i64) },
    /// A single one certifies no step; either the window is too small or
    /// the tiling does not have enough ones.
    #[error("the window shows {0} one(s); at least two are needed to certify a zig-zag step")]
    NotEnoughOnes(usize),
    /// A segment between consecutive ones is not a frieze boundary column,
    /// so the window data is not part of any tiling.
    #[error("step {step}: segment does not propagate to a frieze: {source}")]
    Propagation { step: usize, source: FriezeError },
    /// Recovered arcs fail patch validation.  Unreachable for windows that
    /// satisfy the determinant rule; kept for corrupt input.
    #[error("recovered arcs do not assemble into a patch: {0}")]
    Reassembly(ValidationReport),
}

/// All window positions with entry 1, in zig-zag order: sorted by column
/// ascending, then by row descending.  The first point gets index 0.
///
/// Fails if there are no ones, if two ones violate the quadrant exclusion,
/// or if two consecutive ones do not line up vertically or horizontally.
pub fn extract_zigzag(w: &TilingWindow) -> Result<Vec<(i64, i64)>, PsiError> {
    let mut points = w.ones();
    if points.is_empty() {
        return Err(PsiError::NoOnes);
    }
    for (k, &a) in points.iter().enumerate() {
        for &b in &points[k + 1..] {
            if (a.0 < b.0 && a.1 < b.1) || (a.0 > b.0 && a.1 > b.1) {
                return Err(PsiError::QuadrantViolation { a, b });
            }
        }
    }
    points.sort_by_key(|&(x, y)| (y, std::cmp::Reverse(x)));
    for pair in points.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let vertical = b.1 == a.1 && b.0 < a.0;
        let horizontal = b.0 == a.0 && b.1 > a.1;
        if !vertical && !horizontal {
            return Err(PsiError::MissingCorner { a, b });
        }
    }
    Ok(points)
}

/// Internal arcs certified by one segment, as diagonals of the step
/// polygon.  `column` runs from the far end of the step to the near end,
/// `v_1, ..., v_n` with `v_1 = v_n = 1`.
fn recover_step(column: &[BigInt], step: usize) -> Result<Vec<(usize, usize)>, PsiError> {
    if column.len() == 2 {
        // Jump 1: the step polygon is a triangle, nothing to recover.
        return Ok(Vec::new());
    }
    let grid = FriezeGrid::from_boundary_column(column)
        .map_err(|source| PsiError::Propagation { step, source })?;
    let pt =
        triangulation_from_ones(&grid).map_err(|source| PsiError::Propagation { step, source })?;
    Ok(pt.diagonals().collect())
}

/// Reconstructs the triangulation patch visible in the window.
///
/// Emits a connecting arc per zig-zag point and, per step, the internal
/// arcs certified by the frieze of the segment between its endpoints.  The
/// polygons before the first point and after the last extend beyond the
/// window, so `boundary_complete` is `(false, false)` and no arc is taken
/// from them.
pub fn psi_window(w: &TilingWindow) -> Result<FinitePatch, PsiError> {
    let points = extract_zigzag(w)?;
    if points.len() < 2 {
        return Err(PsiError::NotEnoughOnes(points.len()));
    }
    let mut internal: Vec<Vec<Arc>> = Vec::with_capacity(points.len() - 1);
    for (step, pair) in points.windows(2).enumerate() {
        let ((x0, y0), (x1, y1)) = (pair[0], pair[1]);
        let arcs = if y1 == y0 {
            // Vertical step: the polygon has one lower vertex y0 and upper
            // vertices x1..=x0; diagonal label k is upper point x1 + k - 1.
            let column: Vec<BigInt> = (x1..=x0).map(|x| w.get(x, y0).clone()).collect();
            recover_step(&column, step)?
                .into_iter()
                .map(|(a, b)| {
                    Arc::upper_internal(x1 + a as i64 - 1, x1 + b as i64 - 1)
                        .expect("diagonals span at least two")
                })
                .collect()
        } else {
            // Horizontal step: label k is lower point y0 + k - 1; label 0,
            // the single upper vertex, never appears in a recovered
            // diagonal because interior segment entries exceed 1.
            let column: Vec<BigInt> = (y0..=y1).map(|y| w.get(x0, y).clone()).collect();
            recover_step(&column, step)?
                .into_iter()
                .map(|(a, b)| {
                    Arc::lower_internal(y0 + a as i64 - 1, y0 + b as i64 - 1)
                        .expect("diagonals span at least two")
                })
                .collect()
        };
        internal.push(arcs);
    }
    FinitePatch::new(points, internal, (false, false)).map_err(PsiError::Reassembly)
}

/// One step whose recovered arcs differ from the spec's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepMismatch {
    pub alpha: i64,
    pub expected: Vec<Arc>,
    pub recovered: Vec<Arc>,
}

/// One window entry the recovered patch regenerates differently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryMismatch {
    pub i: i64,
    pub j: i64,
    pub expected: BigInt,
    pub regenerated: BigInt,
}

/// Outcome of a round trip through both constructions.
#[derive(Debug, Default)]
pub struct RoundtripReport {
    /// Reconstruction failed outright.
    pub psi_error: Option<PsiError>,
    /// Whether the recovered zig-zag equals the spec's points in-window.
    pub points_match: bool,
    /// Steps with differing internal arcs (skipped if points mismatch).
    pub arc_mismatches: Vec<StepMismatch>,
    /// Entries the patch regenerates differently from the window.
    pub entry_mismatches: Vec<EntryMismatch>,
    /// Number of window cells the patch could regenerate.
    pub cells_regenerated: usize,
}

impl RoundtripReport {
    pub fn is_clean(&self) -> bool {
        self.psi_error.is_none()
            && self.points_match
            && self.arc_mismatches.is_empty()
            && self.entry_mismatches.is_empty()
    }
}

impl std::fmt::Display for RoundtripReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(e) = &self.psi_error {
            return write!(f, "reconstruction failed: {e}");
        }
        if self.is_clean() {
            return write!(
                f,
                "round trip clean; {} cell(s) regenerated from the recovered patch",
                self.cells_regenerated
            );
        }
        if !self.points_match {
            writeln!(f, "recovered zig-zag differs from the spec's points")?;
        }
        for m in &self.arc_mismatches {
            writeln!(
                f,
                "step {}: expected {:?}, recovered {:?}",
                m.alpha, m.expected, m.recovered
            )?;
        }
        for m in &self.entry_mismatches {
            writeln!(
                f,
                "entry ({}, {}): window has {}, patch regenerates {}",
                m.i, m.j, m.expected, m.regenerated
            )?;
        }
        Ok(())
    }
}

/// Generates the window of `spec`, reconstructs a patch from it, and checks
/// both directions: the patch's points and arcs against the spec, and the
/// window entries against regeneration from the patch alone.  Boundary
/// cells the patch cannot bracket are skipped.
pub fn roundtrip_check(
    spec: &PeriodicTriangulationSpec,
    rows: (i64, i64),
    cols: (i64, i64),
) -> RoundtripReport {
    let window = phi_window(spec, rows, cols);
    let mut report = RoundtripReport::default();
    let patch = match psi_window(&window) {
        Ok(p) => p,
        Err(e) => {
            report.psi_error = Some(e);
            return report;
        }
    };
    // The spec's zig-zag indices whose points fall inside the window.
    let lo = min_satisfying(spec, |(x, y)| x <= rows.1 && y >= cols.0)
        .expect("periodic staircases reach every window");
    let hi = max_satisfying(spec, |(x, y)| x >= rows.0 && y <= cols.1)
        .expect("periodic staircases reach every window");
    let expected_points: Vec<(i64, i64)> = (lo..=hi).map(|a| spec.point(a)).collect();
    report.points_match = patch.points() == expected_points;
    if report.points_match {
        for k in 0..patch.len() as i64 - 1 {
            let alpha = lo + k;
            let expected = spec.internal_arcs_of_step(alpha);
            let recovered = patch.internal_arcs_of_step(k);
            if expected != recovered {
                report.arc_mismatches.push(StepMismatch {
                    alpha,
                    expected,
                    recovered,
                });
            }
        }
    }
    let mut cache = PolygonCache::new(&patch);
    for (i, j, expected) in window.cells() {
        match cache.value(i, j) {
            Ok(regenerated) => {
                report.cells_regenerated += 1;
                if regenerated != *expected {
                    report.entry_mismatches.push(EntryMismatch {
                        i,
                        j,
                        expected: expected.clone(),
                        regenerated,
                    });
                }
            }
            Err(_) => continue,
        }
    }
    report
}
