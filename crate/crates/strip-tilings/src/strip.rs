//! The infinite strip, its arcs, and periodic triangulations.
//!
//! The strip has marked points on both boundary lines.  Upper points `p`
//! sit at horizontal position `-p`, lower points `q` at position `+q`; the
//! two numberings run in opposite directions, so increasing the upper index
//! moves left while increasing the lower index moves right.
//!
//! A triangulation of the strip is encoded by its *connecting* arcs (upper
//! point to lower point), which always form a staircase: ordered by the
//! lower endpoint, consecutive connecting arcs differ by exactly one step of
//! one endpoint.  Between two consecutive connecting arcs lies a finite
//! polygon, triangulated by *internal* arcs on a single boundary line.  A
//! [`PeriodicTriangulationSpec`] stores one period of this data; a
//! [`FinitePatch`] stores a bounded run of it with no periodicity assumed.

use std::fmt;

use thiserror::Error;

use crate::polygon::PolygonTriangulation;

/// A marked point on the strip boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Vertex {
    /// Upper boundary point `p`, at horizontal position `-p`.
    Upper(i64),
    /// Lower boundary point `q`, at horizontal position `+q`.
    Lower(i64),
}

impl Vertex {
    /// Horizontal position on the strip.
    #[inline]
    pub fn position(&self) -> i64 {
        match *self {
            Vertex::Upper(p) => -p,
            Vertex::Lower(q) => q,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Vertex::Upper(p) => write!(f, "upper {p}"),
            Vertex::Lower(q) => write!(f, "lower {q}"),
        }
    }
}

/// An arc of the strip.  Internal arcs must skip at least one marked point,
/// `p <= q - 2`; use the checked constructors when the span is not known to
/// be wide enough.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arc {
    /// Joins upper point `x` to lower point `y`.
    Connecting { x: i64, y: i64 },
    /// Joins upper points `p < q` along the upper boundary.
    UpperInternal { p: i64, q: i64 },
    /// Joins lower points `p < q` along the lower boundary.
    LowerInternal { p: i64, q: i64 },
}

/// Rejection reason for the checked [`Arc`] constructors.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("internal arc ({p}, {q}) must skip a point: p <= q - 2")]
pub struct ArcSpanError {
    pub p: i64,
    pub q: i64,
}

impl Arc {
    #[inline]
    pub fn connecting(x: i64, y: i64) -> Arc {
        Arc::Connecting { x, y }
    }

    pub fn upper_internal(p: i64, q: i64) -> Result<Arc, ArcSpanError> {
        if p + 2 > q {
            return Err(ArcSpanError { p, q });
        }
        Ok(Arc::UpperInternal { p, q })
    }

    pub fn lower_internal(p: i64, q: i64) -> Result<Arc, ArcSpanError> {
        if p + 2 > q {
            return Err(ArcSpanError { p, q });
        }
        Ok(Arc::LowerInternal { p, q })
    }

    /// The arc translated by the strip shift `(dx, dy)`.  Upper indices move
    /// by `dx`, lower indices by `dy`.
    pub fn shifted(&self, dx: i64, dy: i64) -> Arc {
        match *self {
            Arc::Connecting { x, y } => Arc::Connecting {
                x: x + dx,
                y: y + dy,
            },
            Arc::UpperInternal { p, q } => Arc::UpperInternal {
                p: p + dx,
                q: q + dx,
            },
            Arc::LowerInternal { p, q } => Arc::LowerInternal {
                p: p + dy,
                q: q + dy,
            },
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Arc::Connecting { x, y } => write!(f, "conn {x} {y}"),
            Arc::UpperInternal { p, q } => write!(f, "upper {p} {q}"),
            Arc::LowerInternal { p, q } => write!(f, "lower {p} {q}"),
        }
    }
}

/// Whether two arcs cross in the interior of the strip.  Sharing an endpoint
/// does not count as crossing; the relation is symmetric and irreflexive.
///
/// Two connecting arcs cross exactly when both index pairs are strictly
/// ordered the same way: upper indices grow leftwards and lower indices grow
/// rightwards, so `x < x'` puts one upper endpoint to the right while
/// `y < y'` puts its lower endpoint to the left.
pub fn arcs_cross(a: &Arc, b: &Arc) -> bool {
    use Arc::*;
    match (*a, *b) {
        (Connecting { x, y }, Connecting { x: x2, y: y2 }) => {
            (x < x2 && y < y2) || (x > x2 && y > y2)
        }
        (UpperInternal { p, q }, Connecting { x, .. })
        | (Connecting { x, .. }, UpperInternal { p, q }) => p < x && x < q,
        (LowerInternal { p, q }, Connecting { y, .. })
        | (Connecting { y, .. }, LowerInternal { p, q }) => p < y && y < q,
        (UpperInternal { p, q }, UpperInternal { p: p2, q: q2 })
        | (LowerInternal { p, q }, LowerInternal { p: p2, q: q2 }) => {
            (p < p2 && p2 < q && q < q2) || (p2 < p && p < q2 && q2 < q)
        }
        (UpperInternal { .. }, LowerInternal { .. })
        | (LowerInternal { .. }, UpperInternal { .. }) => false,
    }
}

/// A problem found while validating spec or patch data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecProblem {
    EmptyPeriod,
    InternalStepCount {
        expected: usize,
        actual: usize,
    },
    ShiftSign {
        dx: i64,
        dy: i64,
    },
    BadStep {
        alpha: i64,
        from: (i64, i64),
        to: (i64, i64),
    },
    MalformedArc {
        alpha: i64,
        arc: Arc,
    },
    ForeignArc {
        alpha: i64,
        arc: Arc,
    },
    ArcCount {
        alpha: i64,
        expected: usize,
        actual: usize,
    },
    Crossing {
        a: Arc,
        b: Arc,
    },
}

impl fmt::Display for SpecProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecProblem::EmptyPeriod => write!(f, "the fundamental segment is empty"),
            SpecProblem::InternalStepCount { expected, actual } => write!(
                f,
                "expected internal arcs for {expected} steps, got {actual}"
            ),
            SpecProblem::ShiftSign { dx, dy } => {
                write!(f, "shift ({dx}, {dy}) must satisfy dx < 0 < dy")
            }
            SpecProblem::BadStep { alpha, from, to } => write!(
                f,
                "step {alpha}: ({}, {}) -> ({}, {}) is neither a vertical nor a horizontal move",
                from.0, from.1, to.0, to.1
            ),
            SpecProblem::MalformedArc { alpha, arc } => {
                write!(f, "step {alpha}: internal arc '{arc}' spans no point")
            }
            SpecProblem::ForeignArc { alpha, arc } => {
                write!(
                    f,
                    "step {alpha}: arc '{arc}' does not triangulate this step"
                )
            }
            SpecProblem::ArcCount {
                alpha,
                expected,
                actual,
            } => write!(
                f,
                "step {alpha}: expected {expected} internal arcs, got {actual}"
            ),
            SpecProblem::Crossing { a, b } => write!(f, "arcs '{a}' and '{b}' cross"),
        }
    }
}

/// Everything wrong with a candidate spec or patch; empty means valid.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub problems: Vec<SpecProblem>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.problems.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.problems.is_empty() {
            return write!(f, "valid");
        }
        for (k, p) in self.problems.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// Anything that yields zig-zag points and the internal arcs between them:
/// a periodic spec (unbounded) or a finite patch.
///
/// `point(alpha)` and `internal_arcs_of_step(alpha)` may panic outside
/// `alpha_range()`; callers check the range first.
pub trait TriangulationSource {
    /// Inclusive range of valid point indices, or `None` when unbounded.
    /// Steps run between consecutive points, so step `alpha` is valid when
    /// both `alpha` and `alpha + 1` are.
    fn alpha_range(&self) -> Option<(i64, i64)>;

    /// The zig-zag point `A_alpha = (x_alpha, y_alpha)`.
    fn point(&self, alpha: i64) -> (i64, i64);

    /// Internal arcs of the polygon between `A_alpha` and `A_(alpha+1)`.
    fn internal_arcs_of_step(&self, alpha: i64) -> Vec<Arc>;
}

/// One period of a triangulation of the strip.
///
/// `A_0, ..., A_(P-1)` are the fundamental connecting arcs as `(x, y)` index
/// pairs; the full staircase is `A_(alpha+P) = A_alpha + (dx, dy)`.  Walking
/// along it, `x` never increases and `y` never decreases, one of them moving
/// by exactly 1 per step.  `internal[alpha]` triangulates the polygon
/// between `A_alpha` and `A_(alpha+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicTriangulationSpec {
    connecting: Vec<(i64, i64)>,
    shift: (i64, i64),
    internal: Vec<Vec<Arc>>,
}

impl PeriodicTriangulationSpec {
    /// Validates the candidate data and builds the spec.  On failure the
    /// full report is returned.
    pub fn new(
        connecting: Vec<(i64, i64)>,
        shift: (i64, i64),
        internal: Vec<Vec<Arc>>,
    ) -> Result<Self, ValidationReport> {
        let report = validate_parts(&connecting, shift, &internal);
        if !report.is_empty() {
            return Err(report);
        }
        // Store each step's arcs in a canonical order so that equality of
        // specs does not depend on input order.
        let mut internal = internal;
        for arcs in &mut internal {
            arcs.sort_unstable();
        }
        Ok(Self {
            connecting,
            shift,
            internal,
        })
    }

    /// Number of connecting arcs per period.
    #[inline]
    pub fn period(&self) -> usize {
        self.connecting.len()
    }

    #[inline]
    pub fn shift(&self) -> (i64, i64) {
        self.shift
    }

    /// The fundamental points `A_0, ..., A_(P-1)`.
    pub fn fundamental_points(&self) -> &[(i64, i64)] {
        &self.connecting
    }

    /// The connecting arc at index `alpha`, as an [`Arc`].
    pub fn connecting_arc(&self, alpha: i64) -> Arc {
        let (x, y) = self.point(alpha);
        Arc::Connecting { x, y }
    }

    /// The triangulated polygon between `A_alpha` and `A_(alpha+1)`, with
    /// its boundary labelling.
    pub fn polygon_at(&self, alpha: i64) -> StripPolygon {
        polygon_between(self, alpha, alpha + 1)
    }
}

impl TriangulationSource for PeriodicTriangulationSpec {
    fn alpha_range(&self) -> Option<(i64, i64)> {
        None
    }

    fn point(&self, alpha: i64) -> (i64, i64) {
        let p = self.connecting.len() as i64;
        let turns = alpha.div_euclid(p);
        let (x, y) = self.connecting[alpha.rem_euclid(p) as usize];
        (x + turns * self.shift.0, y + turns * self.shift.1)
    }

    fn internal_arcs_of_step(&self, alpha: i64) -> Vec<Arc> {
        let p = self.connecting.len() as i64;
        let turns = alpha.div_euclid(p);
        self.internal[alpha.rem_euclid(p) as usize]
            .iter()
            .map(|arc| arc.shifted(turns * self.shift.0, turns * self.shift.1))
            .collect()
    }
}

/// A bounded run of the staircase, as recovered from a tiling window.  The
/// two flags record whether the polygon before the first point and after
/// the last one were recovered completely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePatch {
    points: Vec<(i64, i64)>,
    internal: Vec<Vec<Arc>>,
    boundary_complete: (bool, bool),
}

impl FinitePatch {
    /// Validates steps and internal arcs, exactly as for a periodic spec but
    /// without any shift condition.
    pub fn new(
        points: Vec<(i64, i64)>,
        internal: Vec<Vec<Arc>>,
        boundary_complete: (bool, bool),
    ) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::default();
        if points.is_empty() {
            report.problems.push(SpecProblem::EmptyPeriod);
            return Err(report);
        }
        if internal.len() + 1 != points.len() {
            report.problems.push(SpecProblem::InternalStepCount {
                expected: points.len() - 1,
                actual: internal.len(),
            });
            return Err(report);
        }
        for alpha in 0..internal.len() {
            check_step(
                alpha as i64,
                points[alpha],
                points[alpha + 1],
                &internal[alpha],
                &mut report,
            );
        }
        let mut arcs: Vec<Arc> = points
            .iter()
            .map(|&(x, y)| Arc::Connecting { x, y })
            .collect();
        arcs.extend(internal.iter().flatten().copied());
        check_pairwise(&arcs, &mut report);
        if !report.is_empty() {
            return Err(report);
        }
        let mut internal = internal;
        for arcs in &mut internal {
            arcs.sort_unstable();
        }
        Ok(Self {
            points,
            internal,
            boundary_complete,
        })
    }

    /// Number of zig-zag points.
    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    /// `(first, last)`: whether the extreme polygons were fully recovered.
    #[inline]
    pub fn boundary_complete(&self) -> (bool, bool) {
        self.boundary_complete
    }

    /// All arcs of the patch: connecting arcs plus internal arcs per step.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut out: Vec<Arc> = self
            .points
            .iter()
            .map(|&(x, y)| Arc::Connecting { x, y })
            .collect();
        out.extend(self.internal.iter().flatten().copied());
        out
    }
}

impl TriangulationSource for FinitePatch {
    fn alpha_range(&self) -> Option<(i64, i64)> {
        Some((0, self.points.len() as i64 - 1))
    }

    fn point(&self, alpha: i64) -> (i64, i64) {
        self.points[usize::try_from(alpha).expect("alpha in range")]
    }

    fn internal_arcs_of_step(&self, alpha: i64) -> Vec<Arc> {
        self.internal[usize::try_from(alpha).expect("alpha in range")].clone()
    }
}

/// Validates candidate spec data and reports every problem found.
pub fn validate_parts(
    connecting: &[(i64, i64)],
    shift: (i64, i64),
    internal: &[Vec<Arc>],
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let period = connecting.len();
    if period == 0 {
        report.problems.push(SpecProblem::EmptyPeriod);
        return report;
    }
    if internal.len() != period {
        report.problems.push(SpecProblem::InternalStepCount {
            expected: period,
            actual: internal.len(),
        });
        return report;
    }
    let (dx, dy) = shift;
    if dx >= 0 || dy <= 0 {
        report.problems.push(SpecProblem::ShiftSign { dx, dy });
    }
    let point = |alpha: i64| -> (i64, i64) {
        let p = period as i64;
        let turns = alpha.div_euclid(p);
        let (x, y) = connecting[alpha.rem_euclid(p) as usize];
        (x + turns * dx, y + turns * dy)
    };
    for (alpha, arcs) in internal.iter().enumerate() {
        check_step(
            alpha as i64,
            point(alpha as i64),
            point(alpha as i64 + 1),
            arcs,
            &mut report,
        );
    }
    // The per-step checks cover arcs inside one polygon.  Crossings can also
    // pair arcs of different polygons or different periods, so check every
    // pair over a window of periods wide enough to catch any translate.
    let p = period as i64;
    let mut arcs = Vec::new();
    for alpha in -(p + 1)..=2 * p + 1 {
        let (x, y) = point(alpha);
        arcs.push(Arc::Connecting { x, y });
        let turns = alpha.div_euclid(p);
        for arc in &internal[alpha.rem_euclid(p) as usize] {
            arcs.push(arc.shifted(turns * dx, turns * dy));
        }
    }
    check_pairwise(&arcs, &mut report);
    report
}

/// Checks one staircase step and the internal arcs of its polygon.
fn check_step(
    alpha: i64,
    from: (i64, i64),
    to: (i64, i64),
    arcs: &[Arc],
    report: &mut ValidationReport,
) {
    let vertical = to.0 < from.0 && to.1 == from.1;
    let horizontal = to.0 == from.0 && to.1 > from.1;
    if !vertical && !horizontal {
        report
            .problems
            .push(SpecProblem::BadStep { alpha, from, to });
        return;
    }
    // The polygon on this step has jump + 2 vertices: the full span of one
    // boundary plus the two shared endpoints on the other.
    let jump = if vertical {
        from.0 - to.0
    } else {
        to.1 - from.1
    };
    for arc in arcs {
        let ok = match *arc {
            Arc::UpperInternal { p, q } => {
                if p + 2 > q {
                    report
                        .problems
                        .push(SpecProblem::MalformedArc { alpha, arc: *arc });
                    continue;
                }
                vertical && to.0 <= p && q <= from.0
            }
            Arc::LowerInternal { p, q } => {
                if p + 2 > q {
                    report
                        .problems
                        .push(SpecProblem::MalformedArc { alpha, arc: *arc });
                    continue;
                }
                horizontal && from.1 <= p && q <= to.1
            }
            Arc::Connecting { .. } => false,
        };
        if !ok {
            report
                .problems
                .push(SpecProblem::ForeignArc { alpha, arc: *arc });
        }
    }
    let expected = (jump - 1).max(0) as usize;
    if arcs.len() != expected {
        report.problems.push(SpecProblem::ArcCount {
            alpha,
            expected,
            actual: arcs.len(),
        });
    }
}

fn check_pairwise(arcs: &[Arc], report: &mut ValidationReport) {
    for (k, a) in arcs.iter().enumerate() {
        for b in &arcs[k + 1..] {
            if arcs_cross(a, b) {
                report.problems.push(SpecProblem::Crossing { a: *a, b: *b });
            }
        }
    }
}

/// A finite polygon cut out of the strip, with its triangulation and the
/// strip vertex behind each polygon label.
///
/// Labels run counterclockwise: `0..=(y1 - y0)` are the lower points
/// `y0..=y1` left to right, the rest are the upper points `x1..=x0` right to
/// left (upper indices grow leftwards, so labels continue with `x1` and end
/// at `x0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripPolygon {
    pub triangulation: PolygonTriangulation,
    pub vertices: Vec<Vertex>,
    lower: (i64, i64),
    upper: (i64, i64),
}

impl StripPolygon {
    /// The polygon label of a strip vertex, if the vertex lies on this
    /// polygon's boundary.
    pub fn label_of(&self, v: Vertex) -> Option<usize> {
        let (y0, y1) = self.lower;
        let (x1, x0) = self.upper;
        match v {
            Vertex::Lower(q) if y0 <= q && q <= y1 => Some((q - y0) as usize),
            Vertex::Upper(p) if x1 <= p && p <= x0 => Some((y1 - y0 + 1 + p - x1) as usize),
            _ => None,
        }
    }

    /// The strip vertex behind a polygon label.
    pub fn vertex(&self, label: usize) -> Vertex {
        self.vertices[label]
    }
}

/// The polygon spanned by the connecting arcs `A_a0` and `A_a1` of a source,
/// together with everything the source triangulates between them.
///
/// The two connecting arcs become the left and right boundary edges; all
/// connecting arcs strictly between them and all internal arcs of the steps
/// `a0..a1` become diagonals.  Requires `a0 < a1` and both indices valid for
/// the source; panics on sources that do not satisfy the staircase
/// invariants, which the validated constructors rule out.
pub fn polygon_between<S: TriangulationSource + ?Sized>(
    source: &S,
    a0: i64,
    a1: i64,
) -> StripPolygon {
    assert!(a0 < a1, "need a0 < a1, got {a0} >= {a1}");
    if let Some((lo, hi)) = source.alpha_range() {
        assert!(lo <= a0 && a1 <= hi, "bracket ({a0}, {a1}) out of range");
    }
    let (x0, y0) = source.point(a0);
    let (x1, y1) = source.point(a1);
    let lowers = y1 - y0 + 1;
    let uppers = x0 - x1 + 1;
    let m = (lowers + uppers) as usize;
    let mut vertices = Vec::with_capacity(m);
    for q in y0..=y1 {
        vertices.push(Vertex::Lower(q));
    }
    for p in x1..=x0 {
        vertices.push(Vertex::Upper(p));
    }
    let label_lower = |q: i64| (q - y0) as usize;
    let label_upper = |p: i64| (lowers + p - x1) as usize;
    let mut diagonals = Vec::new();
    for beta in a0 + 1..a1 {
        let (x, y) = source.point(beta);
        diagonals.push((label_lower(y), label_upper(x)));
    }
    for beta in a0..a1 {
        for arc in source.internal_arcs_of_step(beta) {
            diagonals.push(match arc {
                Arc::UpperInternal { p, q } => (label_upper(p), label_upper(q)),
                Arc::LowerInternal { p, q } => (label_lower(p), label_lower(q)),
                Arc::Connecting { .. } => {
                    unreachable!("internal arc lists never hold connecting arcs")
                }
            });
        }
    }
    let triangulation = PolygonTriangulation::new(m, diagonals)
        .expect("arcs of a validated source triangulate the bracket polygon");
    StripPolygon {
        triangulation,
        vertices,
        lower: (y0, y1),
        upper: (x1, x0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn upper(p: i64, q: i64) -> Arc {
        Arc::upper_internal(p, q).unwrap()
    }

    fn lower(p: i64, q: i64) -> Arc {
        Arc::lower_internal(p, q).unwrap()
    }

    #[test]
    fn vertex_positions_run_in_opposite_directions() {
        assert_eq!(Vertex::Upper(3).position(), -3);
        assert_eq!(Vertex::Upper(-2).position(), 2);
        assert_eq!(Vertex::Lower(3).position(), 3);
    }

    #[test]
    fn connecting_arcs_cross_when_both_indices_agree_in_order() {
        let a = Arc::connecting(0, 0);
        assert!(arcs_cross(&a, &Arc::connecting(1, 1)));
        assert!(arcs_cross(&Arc::connecting(1, 1), &a));
        assert!(!arcs_cross(&a, &Arc::connecting(1, -1)));
        assert!(!arcs_cross(&a, &Arc::connecting(0, 5)));
        assert!(!arcs_cross(&a, &a));
    }

    #[test]
    fn internal_vs_connecting_uses_the_strict_interior() {
        let up = upper(1, 4);
        assert!(arcs_cross(&Arc::connecting(2, 3), &up));
        assert!(!arcs_cross(&Arc::connecting(1, 3), &up));
        assert!(!arcs_cross(&Arc::connecting(4, 3), &up));
        let low = lower(0, 2);
        assert!(!arcs_cross(&Arc::connecting(2, 3), &low));
        assert!(arcs_cross(&Arc::connecting(2, 1), &low));
        assert!(!arcs_cross(&Arc::connecting(2, 2), &low));
    }

    #[test]
    fn same_boundary_internals_cross_on_interleaved_spans() {
        assert!(arcs_cross(&upper(0, 3), &upper(1, 5)));
        assert!(!arcs_cross(&upper(0, 3), &upper(3, 5)));
        assert!(!arcs_cross(&upper(0, 5), &upper(1, 3)));
        assert!(!arcs_cross(&upper(0, 2), &lower(0, 2)));
    }

    #[test]
    fn arc_constructors_enforce_span() {
        assert!(Arc::upper_internal(2, 3).is_err());
        assert!(Arc::upper_internal(2, 2).is_err());
        assert!(Arc::lower_internal(-1, 1).is_ok());
    }

    #[test]
    fn staircase_spec_validates() {
        let spec =
            PeriodicTriangulationSpec::new(vec![(0, 0), (0, 1)], (-1, 1), vec![vec![], vec![]])
                .unwrap();
        assert_eq!(spec.period(), 2);
        assert_eq!(spec.point(2), (-1, 1));
        assert_eq!(spec.point(-1), (1, 0));
        assert_eq!(spec.point(5), (-2, 3));
    }

    #[test]
    fn shift_sign_violation_is_reported() {
        let report = validate_parts(&[(0, 0)], (0, 1), &[vec![]]);
        assert!(report
            .problems
            .iter()
            .any(|p| matches!(p, SpecProblem::ShiftSign { dx: 0, dy: 1 })));
    }

    #[test]
    fn period_one_specs_cannot_satisfy_the_step_condition() {
        // A single step would have to be vertical and horizontal at once to
        // realise a shift with dx < 0 < dy.
        let report = validate_parts(&[(0, 0)], (-1, 1), &[vec![]]);
        assert!(report
            .problems
            .iter()
            .any(|p| matches!(p, SpecProblem::BadStep { .. })));
    }

    #[test]
    fn double_steps_are_rejected() {
        let report = validate_parts(&[(0, 0), (-2, 0)], (-2, 1), &[vec![], vec![]]);
        assert!(report.problems.iter().any(|p| matches!(
            p,
            SpecProblem::ArcCount {
                alpha: 0,
                expected: 1,
                actual: 0
            }
        )));
    }

    #[test]
    fn crossing_internal_arcs_are_reported() {
        // One period: down three, right one; the triangle fan over the
        // vertical step needs two arcs, and these two cross.
        let report = validate_parts(
            &[(0, 0), (-3, 0)],
            (-3, 1),
            &[vec![upper(-3, -1), upper(-2, 0)], vec![]],
        );
        assert!(report
            .problems
            .iter()
            .any(|p| matches!(p, SpecProblem::Crossing { .. })));
    }

    #[test]
    fn internal_arcs_shift_with_the_period() {
        let spec = PeriodicTriangulationSpec::new(
            vec![(0, 0), (-2, 0)],
            (-2, 1),
            vec![vec![upper(-2, 0)], vec![]],
        )
        .unwrap();
        assert_eq!(spec.internal_arcs_of_step(0), vec![upper(-2, 0)]);
        assert_eq!(spec.internal_arcs_of_step(2), vec![upper(-4, -2)]);
        assert_eq!(spec.internal_arcs_of_step(-2), vec![upper(0, 2)]);
        assert_eq!(spec.internal_arcs_of_step(1), vec![]);
    }

    #[test]
    fn bracket_polygon_of_a_single_vertical_step() {
        // Step from (0, 0) to (-2, 0) with the upper arc (-2, 0): a square
        // on one lower point and three upper points.
        let spec = PeriodicTriangulationSpec::new(
            vec![(0, 0), (-2, 0)],
            (-2, 1),
            vec![vec![upper(-2, 0)], vec![]],
        )
        .unwrap();
        let poly = spec.polygon_at(0);
        assert_eq!(
            poly.vertices,
            vec![
                Vertex::Lower(0),
                Vertex::Upper(-2),
                Vertex::Upper(-1),
                Vertex::Upper(0),
            ]
        );
        let diags: Vec<_> = poly.triangulation.diagonals().collect();
        assert_eq!(diags, vec![(1, 3)]);
        assert_eq!(poly.label_of(Vertex::Upper(-1)), Some(2));
        assert_eq!(poly.label_of(Vertex::Lower(1)), None);
    }

    #[test]
    fn bracket_polygon_across_several_steps() {
        // Staircase with trivial polygons: bracket over three steps gives a
        // pentagon whose diagonals are the two intermediate connecting arcs.
        let spec =
            PeriodicTriangulationSpec::new(vec![(0, 0), (0, 1)], (-1, 1), vec![vec![], vec![]])
                .unwrap();
        let poly = polygon_between(&spec, 0, 3);
        // A_0 = (0,0), A_1 = (0,1), A_2 = (-1,1), A_3 = (-1,2).
        assert_eq!(
            poly.vertices,
            vec![
                Vertex::Lower(0),
                Vertex::Lower(1),
                Vertex::Lower(2),
                Vertex::Upper(-1),
                Vertex::Upper(0),
            ]
        );
        let diags: Vec<_> = poly.triangulation.diagonals().collect();
        assert_eq!(diags, vec![(1, 3), (1, 4)]);
    }

    #[test]
    fn patch_agrees_with_spec_on_the_same_data() {
        let patch = FinitePatch::new(
            vec![(0, 0), (-2, 0), (-2, 1)],
            vec![vec![upper(-2, 0)], vec![]],
            (false, false),
        )
        .unwrap();
        assert_eq!(patch.alpha_range(), Some((0, 2)));
        assert_eq!(patch.point(1), (-2, 0));
        let poly = polygon_between(&patch, 0, 1);
        assert_eq!(poly.triangulation.vertex_count(), 4);
    }

    #[test]
    fn patch_rejects_mismatched_internal_length() {
        let err = FinitePatch::new(vec![(0, 0), (0, 1)], vec![], (false, false)).unwrap_err();
        assert!(err
            .problems
            .iter()
            .any(|p| matches!(p, SpecProblem::InternalStepCount { .. })));
    }
}
