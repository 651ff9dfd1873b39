//! Triangulated convex polygons, quiddity sequences, and frieze values.
//!
//! Vertices of an `(n+1)`-gon are labelled `0..=n` counterclockwise.  A
//! triangulation is a maximal set of pairwise non-crossing diagonals; it
//! always has exactly `n - 2` of them and cuts the polygon into `n - 1`
//! triangles.
//!
//! The *quiddity sequence* records, per vertex, how many triangles touch it.
//! The *frieze value* of an ordered vertex pair `(a, b)` is the continuant of
//! the quiddity entries strictly between `a` and `b`; it is 1 exactly when
//! `(a, b)` is an edge or a diagonal of the triangulation.  These values form
//! a Conway-Coxeter frieze, which [`crate::frieze`] rebuilds independently by
//! determinant propagation so the two computations can be cross-checked.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Rejection reasons for [`PolygonTriangulation::new`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolygonError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("({0}, {1}) is not a diagonal of a polygon on vertices 0..={2}")]
    NotADiagonal(usize, usize, usize),
    #[error("diagonal ({0}, {1}) listed twice")]
    DuplicateDiagonal(usize, usize),
    #[error("diagonals ({0}, {1}) and ({2}, {3}) cross")]
    CrossingDiagonals(usize, usize, usize, usize),
    #[error("a triangulation of this polygon has {expected} diagonals, got {actual}")]
    DiagonalCount { expected: usize, actual: usize },
}

/// Failure of [`continuant`]: some leading continuant was not positive.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("continuant of the first {index} entries is {value}, expected positive")]
pub struct ContinuantError {
    pub index: usize,
    pub value: BigInt,
}

/// A triangulation of a convex polygon with vertices `0..=n`.
///
/// Diagonals are stored as ordered pairs `(a, b)` with `a + 2 <= b` and
/// `(a, b) != (0, n)`; the constructor checks maximality and that no two
/// diagonals cross.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonTriangulation {
    vertex_count: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

impl PolygonTriangulation {
    /// Validates and builds a triangulation.  `vertex_count` is the number of
    /// vertices (at least 3); diagonal pairs may be given in either order.
    pub fn new(
        vertex_count: usize,
        diagonals: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PolygonError> {
        if vertex_count < 3 {
            return Err(PolygonError::TooFewVertices(vertex_count));
        }
        let n = vertex_count - 1;
        let mut set = BTreeSet::new();
        for (x, y) in diagonals {
            let (a, b) = if x < y { (x, y) } else { (y, x) };
            // A diagonal skips at least one vertex on both sides; (0, n) is
            // the edge closing the cycle, not a diagonal.
            if b > n || a + 2 > b || (a, b) == (0, n) {
                return Err(PolygonError::NotADiagonal(a, b, n));
            }
            if !set.insert((a, b)) {
                return Err(PolygonError::DuplicateDiagonal(a, b));
            }
        }
        for &(a, b) in &set {
            for &(c, d) in set.range((a, b)..).skip(1) {
                // (a, b) <= (c, d) in lexicographic order, so a <= c and the
                // only crossing pattern left is a < c < b < d.
                if a < c && c < b && b < d {
                    return Err(PolygonError::CrossingDiagonals(a, b, c, d));
                }
            }
        }
        if set.len() != n - 2 {
            return Err(PolygonError::DiagonalCount {
                expected: n - 2,
                actual: set.len(),
            });
        }
        Ok(Self {
            vertex_count,
            diagonals: set,
        })
    }

    /// Number of vertices, `n + 1`.
    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Largest vertex label `n`.
    #[inline]
    pub fn n(&self) -> usize {
        self.vertex_count - 1
    }

    /// The diagonals, each as `(a, b)` with `a < b`.
    pub fn diagonals(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.diagonals.iter().copied()
    }

    /// True when `{a, b}` is an edge of the polygon or one of the diagonals.
    pub fn is_chord(&self, a: usize, b: usize) -> bool {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        let n = self.n();
        b - a == 1 || (a, b) == (0, n) || self.diagonals.contains(&(a, b))
    }

    /// The triangles of the triangulation, each as `[a, k, b]` with
    /// `a < k < b`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let n = self.n();
        let mut out = Vec::with_capacity(n - 1);
        // Split recursively at the unique triangle sitting on each chord,
        // starting from the edge (0, n).
        let mut stack = vec![(0, n)];
        while let Some((a, b)) = stack.pop() {
            if b - a < 2 {
                continue;
            }
            let apex = (a + 1..b)
                .find(|&k| self.is_chord(a, k) && self.is_chord(k, b))
                .expect("a full triangulation has a triangle on every chord");
            out.push([a, apex, b]);
            stack.push((a, apex));
            stack.push((apex, b));
        }
        out
    }

    /// The quiddity sequence: `quiddity()[v]` counts the triangles incident
    /// to vertex `v`.  The counts always sum to `3 * (number of triangles)`.
    pub fn quiddity(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.vertex_count];
        for tri in self.triangles() {
            for v in tri {
                counts[v] += 1;
            }
        }
        counts
    }

    /// The frieze value of the pair `(a, b)`: the continuant of the quiddity
    /// entries strictly between `a` and `b` (walking upwards cyclically).
    ///
    /// Symmetric in `a` and `b`, equal to 1 exactly on chords.  Panics if
    /// `a == b` or either label is out of range.
    pub fn frieze_value(&self, a: usize, b: usize) -> BigInt {
        let q = self.quiddity();
        frieze_value_from_quiddity(&q, a, b)
    }
}

/// [`PolygonTriangulation::frieze_value`] with the quiddity precomputed.
/// Callers that evaluate many pairs on one polygon should use this.
pub fn frieze_value_from_quiddity(quiddity: &[u64], a: usize, b: usize) -> BigInt {
    let m = quiddity.len();
    assert!(a < m && b < m && a != b, "invalid vertex pair ({a}, {b})");
    // Both walks from a to b give the same continuant; take the shorter one.
    let up = (b + m - a) % m;
    let (start, len) = if up - 1 < m - up {
        (a + 1, up - 1)
    } else {
        (b + 1, m - up - 1)
    };
    let segment: Vec<BigInt> = (0..len)
        .map(|t| BigInt::from(quiddity[(start + t) % m]))
        .collect();
    continuant(&segment).expect("quiddity segments of a triangulation have positive continuants")
}

/// The continuant `K(x_1, ..., x_m)`, defined by `K() = 1`, `K(x) = x` and
/// `K(x_1, ..., x_m) = x_m * K(x_1, ..., x_(m-1)) - K(x_1, ..., x_(m-2))`.
///
/// Fails as soon as a leading continuant `K(x_1, ..., x_k)` is not positive;
/// on sequences coming from quiddity segments this never happens.
pub fn continuant(values: &[BigInt]) -> Result<BigInt, ContinuantError> {
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for (k, x) in values.iter().enumerate() {
        let next = x * &cur - &prev;
        if !next.is_positive() {
            return Err(ContinuantError {
                index: k + 1,
                value: next,
            });
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Every triangulation of a polygon with `vertex_count` vertices.  The count
/// is the Catalan number `C(vertex_count - 2)`; keep `vertex_count` small.
pub fn all_triangulations(vertex_count: usize) -> Vec<PolygonTriangulation> {
    assert!(vertex_count >= 3, "need at least a triangle");
    let n = vertex_count - 1;
    fan_out(0, n)
        .into_iter()
        .map(|diags| {
            PolygonTriangulation::new(vertex_count, diags)
                .expect("enumeration only produces valid triangulations")
        })
        .collect()
}

/// All diagonal sets triangulating the sub-polygon on vertices `a..=b`,
/// excluding the chord `(a, b)` itself.
fn fan_out(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
    if b - a < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for apex in a + 1..b {
        for left in fan_out(a, apex) {
            for right in fan_out(apex, b) {
                let mut diags = left.clone();
                diags.extend_from_slice(&right);
                if apex - a >= 2 {
                    diags.push((a, apex));
                }
                if b - apex >= 2 {
                    diags.push((apex, b));
                }
                out.push(diags);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn bigs(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| big(v)).collect()
    }

    #[test]
    fn continuant_base_cases() {
        assert_eq!(continuant(&[]), Ok(big(1)));
        assert_eq!(continuant(&bigs(&[7])), Ok(big(7)));
        assert_eq!(continuant(&bigs(&[2, 2])), Ok(big(3)));
        assert_eq!(continuant(&bigs(&[1, 3, 1])), Ok(big(1)));
    }

    #[test]
    fn continuant_rejects_nonpositive_intermediate() {
        // K(1, 1) = 0, so the sequence fails at index 2.
        let err = continuant(&bigs(&[1, 1, 5])).unwrap_err();
        assert_eq!(err.index, 2);
        assert_eq!(err.value, big(0));
    }

    #[test]
    fn triangle_has_no_diagonals() {
        let pt = PolygonTriangulation::new(3, []).unwrap();
        assert_eq!(pt.quiddity(), vec![1, 1, 1]);
        assert_eq!(pt.frieze_value(0, 2), big(1));
    }

    #[test]
    fn square_quiddity_and_values() {
        let pt = PolygonTriangulation::new(4, [(0, 2)]).unwrap();
        assert_eq!(pt.quiddity(), vec![2, 1, 2, 1]);
        assert_eq!(pt.frieze_value(0, 2), big(1));
        assert_eq!(pt.frieze_value(1, 3), big(2));
    }

    #[test]
    fn pentagon_fan_quiddity() {
        let pt = PolygonTriangulation::new(5, [(0, 2), (0, 3)]).unwrap();
        assert_eq!(pt.quiddity(), vec![3, 1, 2, 2, 1]);
        assert_eq!(pt.frieze_value(1, 4), big(3));
        assert_eq!(pt.frieze_value(1, 3), big(2));
    }

    #[test]
    fn rejects_crossing_diagonals() {
        let err = PolygonTriangulation::new(6, [(0, 2), (1, 3), (3, 5)]).unwrap_err();
        assert_eq!(err, PolygonError::CrossingDiagonals(0, 2, 1, 3));
    }

    #[test]
    fn rejects_wrong_diagonal_count() {
        let err = PolygonTriangulation::new(6, [(0, 2)]).unwrap_err();
        assert_eq!(
            err,
            PolygonError::DiagonalCount {
                expected: 3,
                actual: 1
            }
        );
    }

    #[test]
    fn rejects_edges_and_out_of_range_pairs() {
        assert_eq!(
            PolygonTriangulation::new(5, [(0, 4), (0, 2)]).unwrap_err(),
            PolygonError::NotADiagonal(0, 4, 4)
        );
        assert_eq!(
            PolygonTriangulation::new(5, [(1, 2), (0, 2)]).unwrap_err(),
            PolygonError::NotADiagonal(1, 2, 4)
        );
        assert_eq!(
            PolygonTriangulation::new(5, [(2, 7), (0, 2)]).unwrap_err(),
            PolygonError::NotADiagonal(2, 7, 4)
        );
    }

    #[test]
    fn quiddity_counts_sum_to_three_per_triangle() {
        for pt in all_triangulations(7) {
            let total: u64 = pt.quiddity().iter().sum();
            assert_eq!(total, 3 * (pt.n() as u64 - 1));
        }
    }

    #[test]
    fn frieze_value_is_one_exactly_on_chords() {
        for pt in all_triangulations(6) {
            for a in 0..6 {
                for b in a + 1..6 {
                    let v = pt.frieze_value(a, b);
                    assert_eq!(v == big(1), pt.is_chord(a, b), "{pt:?} at ({a}, {b})");
                    assert_eq!(v, pt.frieze_value(b, a), "symmetry at ({a}, {b})");
                }
            }
        }
    }

    #[test]
    fn both_walks_agree_even_without_shortcut() {
        // frieze_value picks the shorter arc; recompute both ways by hand.
        for pt in all_triangulations(7) {
            let q = pt.quiddity();
            let m = q.len();
            for a in 0..m {
                for b in 0..m {
                    if a == b {
                        continue;
                    }
                    let walk = |from: usize, to: usize| {
                        let len = (to + m - from) % m - 1;
                        let seg: Vec<BigInt> = (0..len)
                            .map(|t| big(q[(from + 1 + t) % m] as i64))
                            .collect();
                        continuant(&seg).unwrap()
                    };
                    assert_eq!(walk(a, b), walk(b, a));
                }
            }
        }
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(all_triangulations(3).len(), 1);
        assert_eq!(all_triangulations(4).len(), 2);
        assert_eq!(all_triangulations(5).len(), 5);
        assert_eq!(all_triangulations(6).len(), 14);
        assert_eq!(all_triangulations(7).len(), 42);
        assert_eq!(all_triangulations(8).len(), 132);
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let all = all_triangulations(7);
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                assert_ne!(a, b);
            }
        }
    }
}
