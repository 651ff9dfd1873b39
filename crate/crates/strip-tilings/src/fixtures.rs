//! Bundled example data for the `demo` subcommand and the test suite.
//!
//! `figure2` is a hand-entered 11x11 window of a tiling with enough ones;
//! `figure4` is the classic tiling with a single 1, generated from its
//! cross-shaped seed; `staircase` is the smallest periodic spec; `figure1`
//! is the periodic spec derived from the `figure2` window.

use num_bigint::BigInt;

use crate::psi::psi_window;
use crate::strip::{PeriodicTriangulationSpec, TriangulationSource};
use crate::tiling::{determinant_fill, Seed, TilingWindow};

/// The 11x11 example window with enough ones, anchored at row 1, column 1.
pub fn figure2_window() -> TilingWindow {
    let rows: [[i64; 11]; 11] = [
        [10, 23, 13, 3, 5, 2, 3, 7, 11, 4, 1],
        [23, 53, 30, 7, 12, 5, 8, 19, 30, 11, 3],
        [13, 30, 17, 4, 7, 3, 5, 12, 19, 7, 2],
        [16, 37, 21, 5, 9, 4, 7, 17, 27, 10, 3],
        [3, 7, 4, 1, 2, 1, 2, 5, 8, 3, 1],
        [5, 12, 7, 2, 5, 3, 7, 18, 29, 11, 4],
        [2, 5, 3, 1, 3, 2, 5, 13, 21, 8, 3],
        [5, 13, 8, 3, 10, 7, 18, 47, 76, 29, 11],
        [3, 8, 5, 2, 7, 5, 13, 34, 55, 21, 8],
        [4, 11, 7, 3, 11, 8, 21, 55, 89, 34, 13],
        [1, 3, 2, 1, 4, 3, 8, 21, 34, 13, 5],
    ];
    let values = rows
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    TilingWindow::new((1, 11), (1, 11), values).expect("hand-entered data is positive")
}

/// The cross-shaped seed of the single-one example: `|j| + 1` along the
/// central row and `|i| + 1` along the central column.
pub fn figure4_seeds() -> Vec<Seed> {
    let mut seeds = Vec::new();
    for j in -5..=5i64 {
        seeds.push(((0, j), BigInt::from(j.abs() + 1)));
    }
    for i in -5..=5i64 {
        if i != 0 {
            seeds.push(((i, 0), BigInt::from(i.abs() + 1)));
        }
    }
    seeds
}

/// The 11x11 single-one example window, generated from its seed.
pub fn figure4_window() -> TilingWindow {
    determinant_fill(&figure4_seeds(), (-5, 5), (-5, 5))
        .expect("the cross seed fills to a positive window")
}

/// The printed entries of the single-one example, for exact comparison.
pub fn figure4_printed() -> TilingWindow {
    let rows: [[i64; 11]; 11] = [
        [61, 50, 39, 28, 17, 6, 7, 8, 9, 10, 11],
        [50, 41, 32, 23, 14, 5, 6, 7, 8, 9, 10],
        [39, 32, 25, 18, 11, 4, 5, 6, 7, 8, 9],
        [28, 23, 18, 13, 8, 3, 4, 5, 6, 7, 8],
        [17, 14, 11, 8, 5, 2, 3, 4, 5, 6, 7],
        [6, 5, 4, 3, 2, 1, 2, 3, 4, 5, 6],
        [7, 6, 5, 4, 3, 2, 5, 8, 11, 14, 17],
        [8, 7, 6, 5, 4, 3, 8, 13, 18, 23, 28],
        [9, 8, 7, 6, 5, 4, 11, 18, 25, 32, 39],
        [10, 9, 8, 7, 6, 5, 14, 23, 32, 41, 50],
        [11, 10, 9, 8, 7, 6, 17, 28, 39, 50, 61],
    ];
    let values = rows
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    TilingWindow::new((-5, 5), (-5, 5), values).expect("hand-entered data is positive")
}

/// The period-2 staircase spec: all jumps 1, no internal arcs.
pub fn staircase_spec() -> PeriodicTriangulationSpec {
    PeriodicTriangulationSpec::new(vec![(0, 0), (0, 1)], (-1, 1), vec![vec![], vec![]])
        .expect("the staircase is a valid spec")
}

/// A period-6 spec derived from the `figure2` window rather than entered
/// by hand: the patch recovered from that window, extended periodically
/// by its end-to-end translation.  Its tiling reproduces the window.
pub fn figure1_spec() -> PeriodicTriangulationSpec {
    let patch = psi_window(&figure2_window()).expect("the bundled window yields a patch");
    let points = patch.points();
    let (first, last) = (points[0], points[patch.len() - 1]);
    let shift = (last.0 - first.0, last.1 - first.1);
    let connecting = points[..patch.len() - 1].to_vec();
    let internal = (0..connecting.len() as i64)
        .map(|k| patch.internal_arcs_of_step(k))
        .collect();
    PeriodicTriangulationSpec::new(connecting, shift, internal)
        .expect("the recovered patch extends periodically")
}
