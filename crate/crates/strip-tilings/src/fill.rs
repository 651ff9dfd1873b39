//! Worklist engine completing partial grids under the determinant rule.
//!
//! The engine owns a rectangle of cells, some of them masked out, some
//! seeded with known values.  Whenever a 2x2 block of in-region cells has
//! exactly three known corners, the fourth is forced by
//! `top_left * bottom_right - top_right * bottom_left = 1`; the engine keeps
//! applying this rule until nothing new can be derived.  Division must be
//! exact and results must be positive, otherwise the seeds were inconsistent.
//!
//! Blocks are addressed by their top-left corner.  Only blocks whose four
//! corners are all in-region participate; the determinant condition is not
//! meaningful across holes in the region.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Why the engine stopped.  Coordinates name the offending cell (for the
/// division rules) or the top-left corner of the block (for determinants).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum FillProblem {
    /// The forced value of cell `(i, j)` would not be an integer.
    Inexact { i: i64, j: i64 },
    /// The forced value of cell `(i, j)` would be zero or negative.
    NonPositive { i: i64, j: i64 },
    /// A fully known block at `(i, j)` has determinant != 1.
    Determinant { i: i64, j: i64 },
    /// Two seeds disagree about cell `(i, j)`.
    SeedConflict { i: i64, j: i64 },
    /// A seed or query addressed a cell outside the region.
    OutsideRegion { i: i64, j: i64 },
}

#[derive(Clone)]
enum Cell {
    Outside,
    Unknown,
    Known(BigInt),
}

pub(crate) struct FillGrid {
    i0: i64,
    j0: i64,
    width: usize,
    height: usize,
    cells: Vec<Cell>,
}

impl FillGrid {
    /// A full rectangle `rows x cols` of unknown in-region cells.
    pub(crate) fn new(rows: (i64, i64), cols: (i64, i64)) -> Self {
        Self::with_mask(rows, cols, |_, _| true)
    }

    /// A rectangle where only cells with `in_region(i, j)` participate.
    pub(crate) fn with_mask(
        rows: (i64, i64),
        cols: (i64, i64),
        in_region: impl Fn(i64, i64) -> bool,
    ) -> Self {
        let (i0, i1) = rows;
        let (j0, j1) = cols;
        assert!(i0 <= i1 && j0 <= j1, "empty fill region");
        let height = (i1 - i0 + 1) as usize;
        let width = (j1 - j0 + 1) as usize;
        let mut cells = Vec::with_capacity(height * width);
        for i in i0..=i1 {
            for j in j0..=j1 {
                cells.push(if in_region(i, j) {
                    Cell::Unknown
                } else {
                    Cell::Outside
                });
            }
        }
        Self {
            i0,
            j0,
            width,
            height,
            cells,
        }
    }

    fn index(&self, i: i64, j: i64) -> Option<usize> {
        let r = i.checked_sub(self.i0)?;
        let c = j.checked_sub(self.j0)?;
        if r < 0 || c < 0 || r as usize >= self.height || c as usize >= self.width {
            return None;
        }
        Some(r as usize * self.width + c as usize)
    }

    /// The value at `(i, j)` if that cell is in-region and already known.
    pub(crate) fn get(&self, i: i64, j: i64) -> Option<&BigInt> {
        match self.index(i, j).map(|ix| &self.cells[ix]) {
            Some(Cell::Known(v)) => Some(v),
            _ => None,
        }
    }

    /// True when `(i, j)` is inside the rectangle and not masked out.
    pub(crate) fn in_region(&self, i: i64, j: i64) -> bool {
        matches!(
            self.index(i, j).map(|ix| &self.cells[ix]),
            Some(Cell::Unknown) | Some(Cell::Known(_))
        )
    }

    /// Installs a known value.  Re-seeding a cell with the same value is
    /// allowed; a different value is a conflict.
    pub(crate) fn seed(&mut self, i: i64, j: i64, value: BigInt) -> Result<(), FillProblem> {
        let ix = self
            .index(i, j)
            .ok_or(FillProblem::OutsideRegion { i, j })?;
        match &self.cells[ix] {
            Cell::Outside => Err(FillProblem::OutsideRegion { i, j }),
            Cell::Known(old) if *old != value => Err(FillProblem::SeedConflict { i, j }),
            Cell::Known(_) => Ok(()),
            Cell::Unknown => {
                self.cells[ix] = Cell::Known(value);
                Ok(())
            }
        }
    }

    /// Runs propagation to a fixpoint, then verifies every fully known
    /// block.  Cells the rule cannot reach stay unknown; callers decide
    /// whether that is an error.
    pub(crate) fn solve(&mut self) -> Result<(), FillProblem> {
        // Start from every block; each solved cell re-queues the four blocks
        // containing it, so the queue drains once nothing new is derivable.
        let mut queue: VecDeque<(i64, i64)> = VecDeque::new();
        for i in self.i0..self.i0 + self.height as i64 - 1 {
            for j in self.j0..self.j0 + self.width as i64 - 1 {
                queue.push_back((i, j));
            }
        }
        while let Some((i, j)) = queue.pop_front() {
            if let Some((si, sj)) = self.try_block(i, j)? {
                for bi in si - 1..=si {
                    for bj in sj - 1..=sj {
                        queue.push_back((bi, bj));
                    }
                }
            }
        }
        self.verify_known_blocks()
    }

    /// Examines the block with top-left corner `(i, j)`.  If exactly one
    /// corner is unknown, derives it and returns its coordinates.
    fn try_block(&mut self, i: i64, j: i64) -> Result<Option<(i64, i64)>, FillProblem> {
        let corners = [(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)];
        let mut missing = None;
        for (ci, cj) in corners {
            match self.index(ci, cj).map(|ix| &self.cells[ix]) {
                None | Some(Cell::Outside) => return Ok(None),
                Some(Cell::Unknown) => {
                    if missing.is_some() {
                        return Ok(None);
                    }
                    missing = Some((ci, cj));
                }
                Some(Cell::Known(_)) => {}
            }
        }
        let Some((mi, mj)) = missing else {
            return Ok(None);
        };
        let known = |ci: i64, cj: i64| self.get(ci, cj).expect("corner checked known");
        // Diagonal corners multiply positively, anti-diagonal negatively:
        //   a*d - b*c = 1   for the block   a b
        //                                   c d
        let (num, den) = if (mi, mj) == (i + 1, j + 1) || (mi, mj) == (i, j) {
            let (b, c) = (known(i, j + 1), known(i + 1, j));
            let num = b * c + BigInt::one();
            let den = if (mi, mj) == (i, j) {
                known(i + 1, j + 1)
            } else {
                known(i, j)
            };
            (num, den.clone())
        } else {
            let (a, d) = (known(i, j), known(i + 1, j + 1));
            let num = a * d - BigInt::one();
            let den = if (mi, mj) == (i, j + 1) {
                known(i + 1, j)
            } else {
                known(i, j + 1)
            };
            (num, den.clone())
        };
        if (&num % &den) != BigInt::zero() {
            return Err(FillProblem::Inexact { i: mi, j: mj });
        }
        let value = num / den;
        if !value.is_positive() {
            return Err(FillProblem::NonPositive { i: mi, j: mj });
        }
        let ix = self.index(mi, mj).expect("missing corner is in range");
        self.cells[ix] = Cell::Known(value);
        Ok(Some((mi, mj)))
    }

    fn verify_known_blocks(&self) -> Result<(), FillProblem> {
        for i in self.i0..self.i0 + self.height as i64 - 1 {
            for j in self.j0..self.j0 + self.width as i64 - 1 {
                let quad = [
                    self.get(i, j),
                    self.get(i, j + 1),
                    self.get(i + 1, j),
                    self.get(i + 1, j + 1),
                ];
                let in_region = [
                    self.in_region(i, j),
                    self.in_region(i, j + 1),
                    self.in_region(i + 1, j),
                    self.in_region(i + 1, j + 1),
                ];
                if !in_region.iter().all(|&x| x) {
                    continue;
                }
                if let [Some(a), Some(b), Some(c), Some(d)] = quad {
                    if a * d - b * c != BigInt::one() {
                        return Err(FillProblem::Determinant { i, j });
                    }
                }
            }
        }
        Ok(())
    }

    /// Coordinates of in-region cells that are still unknown, row-major.
    pub(crate) fn unknown_cells(&self) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        for i in self.i0..self.i0 + self.height as i64 {
            for j in self.j0..self.j0 + self.width as i64 {
                let ix = self.index(i, j).expect("in bounds by construction");
                if matches!(self.cells[ix], Cell::Unknown) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn solves_single_missing_corner_each_way() {
        // Block [[2, 1], [3, 2]] has determinant 1; drop each corner in turn.
        let full = [(0, 0, 2), (0, 1, 1), (1, 0, 3), (1, 1, 2)];
        for skip in 0..4 {
            let mut grid = FillGrid::new((0, 1), (0, 1));
            for (k, &(i, j, v)) in full.iter().enumerate() {
                if k != skip {
                    grid.seed(i, j, big(v)).unwrap();
                }
            }
            grid.solve().unwrap();
            let (i, j, v) = full[skip];
            assert_eq!(grid.get(i, j), Some(&big(v)));
        }
    }

    #[test]
    fn reports_inexact_division() {
        let mut grid = FillGrid::new((0, 1), (0, 1));
        grid.seed(0, 0, big(3)).unwrap();
        grid.seed(0, 1, big(2)).unwrap();
        grid.seed(1, 0, big(2)).unwrap();
        // Missing corner would be (2*2 + 1) / 3, not an integer.
        assert_eq!(
            grid.solve().unwrap_err(),
            FillProblem::Inexact { i: 1, j: 1 }
        );
    }

    #[test]
    fn reports_nonpositive_result() {
        // [[1, 1], [x, 1]] forces x = (1*1 - 1) / 1 = 0.
        let mut grid = FillGrid::new((0, 1), (0, 1));
        grid.seed(0, 0, big(1)).unwrap();
        grid.seed(0, 1, big(1)).unwrap();
        grid.seed(1, 1, big(1)).unwrap();
        assert_eq!(
            grid.solve().unwrap_err(),
            FillProblem::NonPositive { i: 1, j: 0 }
        );
    }

    #[test]
    fn rejects_inconsistent_complete_block() {
        let mut grid = FillGrid::new((0, 1), (0, 1));
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            grid.seed(i, j, big(1)).unwrap();
        }
        assert_eq!(
            grid.solve().unwrap_err(),
            FillProblem::Determinant { i: 0, j: 0 }
        );
    }

    #[test]
    fn seed_conflicts_and_mask() {
        let mut grid = FillGrid::with_mask((0, 1), (0, 1), |i, j| (i, j) != (1, 1));
        grid.seed(0, 0, big(2)).unwrap();
        assert_eq!(
            grid.seed(0, 0, big(3)).unwrap_err(),
            FillProblem::SeedConflict { i: 0, j: 0 }
        );
        grid.seed(0, 0, big(2)).unwrap();
        assert_eq!(
            grid.seed(1, 1, big(1)).unwrap_err(),
            FillProblem::OutsideRegion { i: 1, j: 1 }
        );
        assert_eq!(
            grid.seed(5, 5, big(1)).unwrap_err(),
            FillProblem::OutsideRegion { i: 5, j: 5 }
        );
        // The masked block never participates, so nothing is derivable.
        grid.seed(0, 1, big(1)).unwrap();
        grid.seed(1, 0, big(1)).unwrap();
        grid.solve().unwrap();
        assert_eq!(grid.unknown_cells(), Vec::new());
    }

    #[test]
    fn propagates_across_a_strip() {
        // Seed one row plus one cell of the next; a full second row follows.
        let mut grid = FillGrid::new((0, 1), (0, 3));
        for (j, v) in [1, 2, 3, 4].into_iter().enumerate() {
            grid.seed(0, j as i64, big(v)).unwrap();
        }
        grid.seed(1, 0, big(1)).unwrap();
        grid.solve().unwrap();
        assert_eq!(grid.get(1, 1), Some(&big(3)));
        assert_eq!(grid.get(1, 2), Some(&big(5)));
        assert_eq!(grid.get(1, 3), Some(&big(7)));
    }
}
