//! From strip triangulations to tilings.
//!
//! The entry `t(i, j)` of the tiling is a frieze value: bracket the cell
//! between two connecting arcs, `A_a0` strictly below-left (`x > i`,
//! `y < j`) and `A_a1` strictly above-right (`x < i`, `y > j`), cut the
//! polygon they span out of the strip, and evaluate the frieze value of the
//! vertex pair (upper point `i`, lower point `j`) in that polygon.  Any
//! bracket containing the cell gives the same number; [`phi_cell`] asserts
//! this by also evaluating a strictly larger bracket.
//!
//! [`phi_window`] avoids per-cell polygon work: it seeds the window with
//! tiling values along the zig-zag segments, where the value is a frieze
//! value of a single-step polygon, and lets determinant propagation fill
//! the rest.  The result is checked against the per-cell definition in
//! tests and by [`verify_window`].

use std::collections::HashMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::fill::FillGrid;
use crate::polygon::frieze_value_from_quiddity;
use crate::strip::{
    polygon_between, PeriodicTriangulationSpec, StripPolygon, TriangulationSource, Vertex,
};
use crate::tiling::TilingWindow;

/// A cell that cannot be bracketed within the available index range of a
/// bounded source.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("cell ({i}, {j}) has no bracketing polygon in range")]
pub struct OutOfRange {
    pub i: i64,
    pub j: i64,
}

/// Smallest `alpha` with `pred(point(alpha))`, for predicates that are
/// false then true along the staircase.  `None` when the range is bounded
/// and the predicate never holds; unbounded sources must guarantee the
/// predicate eventually holds, which staircase monotonicity provides.
pub(crate) fn min_satisfying<S: TriangulationSource + ?Sized>(
    source: &S,
    pred: impl Fn((i64, i64)) -> bool,
) -> Option<i64> {
    let (mut f, mut t);
    match source.alpha_range() {
        Some((lo, hi)) => {
            if !pred(source.point(hi)) {
                return None;
            }
            if pred(source.point(lo)) {
                return Some(lo);
            }
            f = lo;
            t = hi;
        }
        None => {
            // Gallop outwards from 0 to straddle the threshold.
            let mut step = 1i64;
            if pred(source.point(0)) {
                t = 0;
                f = -1;
                while pred(source.point(f)) {
                    t = f;
                    f -= step;
                    step *= 2;
                }
            } else {
                f = 0;
                t = 1;
                while !pred(source.point(t)) {
                    f = t;
                    t += step;
                    step *= 2;
                }
            }
        }
    }
    while t - f > 1 {
        let mid = f + (t - f) / 2;
        if pred(source.point(mid)) {
            t = mid;
        } else {
            f = mid;
        }
    }
    Some(t)
}

/// Largest `alpha` with `pred(point(alpha))`, for predicates that are true
/// then false along the staircase.  Mirror of [`min_satisfying`].
pub(crate) fn max_satisfying<S: TriangulationSource + ?Sized>(
    source: &S,
    pred: impl Fn((i64, i64)) -> bool,
) -> Option<i64> {
    let (mut t, mut f);
    match source.alpha_range() {
        Some((lo, hi)) => {
            if !pred(source.point(lo)) {
                return None;
            }
            if pred(source.point(hi)) {
                return Some(hi);
            }
            t = lo;
            f = hi;
        }
        None => {
            let mut step = 1i64;
            if pred(source.point(0)) {
                t = 0;
                f = 1;
                while pred(source.point(f)) {
                    t = f;
                    f += step;
                    step *= 2;
                }
            } else {
                f = 0;
                t = -1;
                while !pred(source.point(t)) {
                    f = t;
                    t -= step;
                    step *= 2;
                }
            }
        }
    }
    while f - t > 1 {
        let mid = t + (f - t) / 2;
        if pred(source.point(mid)) {
            t = mid;
        } else {
            f = mid;
        }
    }
    Some(t)
}

/// Largest `alpha` whose point lies strictly below-left of the cell:
/// `x > i` and `y < j`.
pub(crate) fn below_bracket<S: TriangulationSource + ?Sized>(
    source: &S,
    i: i64,
    j: i64,
) -> Option<i64> {
    max_satisfying(source, |(x, y)| x > i && y < j)
}

/// Smallest `alpha` whose point lies strictly above-right of the cell:
/// `x < i` and `y > j`.
pub(crate) fn above_bracket<S: TriangulationSource + ?Sized>(
    source: &S,
    i: i64,
    j: i64,
) -> Option<i64> {
    min_satisfying(source, |(x, y)| x < i && y > j)
}

/// Bracket polygons with their quiddity, memoised per bracket pair.  Most
/// cells of a window share brackets, so this turns per-cell evaluation from
/// a polygon construction into a continuant.
pub(crate) struct PolygonCache<'s, S: TriangulationSource + ?Sized> {
    source: &'s S,
    polygons: HashMap<(i64, i64), (StripPolygon, Vec<u64>)>,
}

impl<'s, S: TriangulationSource + ?Sized> PolygonCache<'s, S> {
    pub(crate) fn new(source: &'s S) -> Self {
        Self {
            source,
            polygons: HashMap::new(),
        }
    }

    fn polygon(&mut self, a0: i64, a1: i64) -> &(StripPolygon, Vec<u64>) {
        self.polygons.entry((a0, a1)).or_insert_with(|| {
            let poly = polygon_between(self.source, a0, a1);
            let quiddity = poly.triangulation.quiddity();
            (poly, quiddity)
        })
    }

    /// The tiling entry at `(i, j)`, evaluated in the tight bracket.
    pub(crate) fn value(&mut self, i: i64, j: i64) -> Result<BigInt, OutOfRange> {
        let a0 = below_bracket(self.source, i, j).ok_or(OutOfRange { i, j })?;
        let a1 = above_bracket(self.source, i, j).ok_or(OutOfRange { i, j })?;
        Ok(self.value_in_bracket(a0, a1, i, j))
    }

    /// The entry at `(i, j)` evaluated in the polygon between `A_a0` and
    /// `A_a1`, which must contain both boundary vertices.
    pub(crate) fn value_in_bracket(&mut self, a0: i64, a1: i64, i: i64, j: i64) -> BigInt {
        let (poly, quiddity) = self.polygon(a0, a1);
        let a = poly
            .label_of(Vertex::Upper(i))
            .expect("upper vertex inside the bracket");
        let b = poly
            .label_of(Vertex::Lower(j))
            .expect("lower vertex inside the bracket");
        frieze_value_from_quiddity(quiddity, a, b)
    }
}

/// The tiling entry at `(i, j)` determined by any triangulation source
/// bracketing the cell; `Err` when a finite source does not bracket it.
pub fn cell_value<S: TriangulationSource + ?Sized>(
    source: &S,
    i: i64,
    j: i64,
) -> Result<BigInt, OutOfRange> {
    PolygonCache::new(source).value(i, j)
}

/// The tiling entry at `(i, j)` for a periodic strip triangulation.
///
/// Evaluates the frieze value in the tight bracket polygon and asserts that
/// the enlarged bracket gives the same value.
pub fn phi_cell(spec: &PeriodicTriangulationSpec, i: i64, j: i64) -> BigInt {
    let a0 = below_bracket(spec, i, j).expect("periodic staircases bracket every cell");
    let a1 = above_bracket(spec, i, j).expect("periodic staircases bracket every cell");
    let mut cache = PolygonCache::new(spec);
    let tight = cache.value_in_bracket(a0, a1, i, j);
    let wide = cache.value_in_bracket(a0 - 1, a1 + 1, i, j);
    assert_eq!(
        tight, wide,
        "bracket choice changed the value at ({i}, {j})"
    );
    tight
}

/// The window `rows x cols` of the tiling of a periodic strip
/// triangulation.
///
/// Seeds every cell lying on a zig-zag segment between the bracketing
/// connecting arcs of the window corners, then completes the rectangle by
/// determinant propagation; cells the propagation cannot reach fall back to
/// the per-cell definition.
pub fn phi_window(
    spec: &PeriodicTriangulationSpec,
    rows: (i64, i64),
    cols: (i64, i64),
) -> TilingWindow {
    assert!(rows.0 <= rows.1 && cols.0 <= cols.1, "empty window");
    let (i0, i1) = rows;
    let (j0, j1) = cols;
    // Bracket the bottom-left and top-right corners; the staircase between
    // those arcs covers the whole window.
    let a_lo = below_bracket(spec, i1, j0).expect("cells are always bracketed");
    let a_hi = above_bracket(spec, i0, j1).expect("cells are always bracketed");
    let (x_hi, y_hi) = spec.point(a_hi);
    let (x_lo, y_lo) = spec.point(a_lo);
    debug_assert!(x_hi < i0 && x_lo > i1 && y_lo < j0 && y_hi > j1);
    let mut grid = FillGrid::new((x_hi, x_lo), (y_lo, y_hi));
    let mut cache = PolygonCache::new(spec);
    for beta in a_lo..a_hi {
        let from = spec.point(beta);
        let to = spec.point(beta + 1);
        if to.1 == from.1 {
            // Vertical step: the whole column segment is frieze data of the
            // single-step polygon.
            for x in to.0..=from.0 {
                let v = cache.value_in_bracket(beta, beta + 1, x, from.1);
                grid.seed(x, from.1, v)
                    .expect("segment seeds are consistent");
            }
        } else {
            for y in from.1..=to.1 {
                let v = cache.value_in_bracket(beta, beta + 1, from.0, y);
                grid.seed(from.0, y, v)
                    .expect("segment seeds are consistent");
            }
        }
    }
    grid.solve()
        .expect("tiling values of a valid spec satisfy the determinant rule");
    let values = (i0..=i1)
        .map(|i| {
            (j0..=j1)
                .map(|j| match grid.get(i, j) {
                    Some(v) => v.clone(),
                    None => cache
                        .value(i, j)
                        .expect("periodic sources bracket every cell"),
                })
                .collect()
        })
        .collect();
    TilingWindow::new(rows, cols, values).expect("tiling entries are positive")
}

/// Number of triangles of the strip triangulation incident to the upper
/// vertex `i`.
///
/// Cuts out a polygon in which the vertex is strictly interior on the
/// upper edge; its quiddity entry there counts exactly the strip triangles
/// at the vertex, since triangles never cross connecting arcs.
pub fn triangle_count_at_upper(spec: &PeriodicTriangulationSpec, i: i64) -> u64 {
    let a0 = max_satisfying(spec, |(x, _)| x > i).expect("x is unbounded above");
    let a1 = min_satisfying(spec, |(x, _)| x < i).expect("x is unbounded below");
    let poly = polygon_between(spec, a0, a1);
    let label = poly
        .label_of(Vertex::Upper(i))
        .expect("vertex inside the bracket");
    poly.triangulation.quiddity()[label]
}

/// Number of triangles of the strip triangulation incident to the lower
/// vertex `j`.  Mirror of [`triangle_count_at_upper`].
pub fn triangle_count_at_lower(spec: &PeriodicTriangulationSpec, j: i64) -> u64 {
    let a0 = max_satisfying(spec, |(_, y)| y < j).expect("y is unbounded below");
    let a1 = min_satisfying(spec, |(_, y)| y > j).expect("y is unbounded above");
    let poly = polygon_between(spec, a0, a1);
    let label = poly
        .label_of(Vertex::Lower(j))
        .expect("vertex inside the bracket");
    poly.triangulation.quiddity()[label]
}

/// A disagreement between a window entry and the per-cell definition.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("window entry at ({i}, {j}) is {found}, per-cell evaluation gives {reference}")]
pub struct PhiMismatch {
    pub i: i64,
    pub j: i64,
    pub found: BigInt,
    pub reference: BigInt,
}

/// Re-evaluates every cell of `window` from the spec, through both the
/// tight and an enlarged bracket, and reports the first disagreement.
pub fn verify_window(
    spec: &PeriodicTriangulationSpec,
    window: &TilingWindow,
) -> Result<(), PhiMismatch> {
    let mut cache = PolygonCache::new(spec);
    for (i, j, found) in window.cells() {
        let a0 = below_bracket(spec, i, j).expect("cells are always bracketed");
        let a1 = above_bracket(spec, i, j).expect("cells are always bracketed");
        let tight = cache.value_in_bracket(a0, a1, i, j);
        let wide = cache.value_in_bracket(a0 - 1, a1 + 1, i, j);
        assert_eq!(
            tight, wide,
            "bracket choice changed the value at ({i}, {j})"
        );
        if *found != tight {
            return Err(PhiMismatch {
                i,
                j,
                found: found.clone(),
                reference: tight,
            });
        }
    }
    Ok(())
}
