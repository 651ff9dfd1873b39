//! Finite friezes grown by determinant propagation.
//!
//! A frieze of width `n` lives on the diagonal band `1 <= c - r <= n`; both
//! band edges consist of 1s and every 2x2 block inside the band has
//! determinant 1.  The band is periodic: it repeats under the glide
//! `F(r, c) = F(c, r + n + 1)`, so one fundamental region determines
//! everything.  We store rows `0..=n`, each holding columns `r+1..=r+n`.
//!
//! The entries of a frieze are the frieze values of a triangulated
//! `(n+1)`-gon, `F(r, c)` being the value of the vertex pair
//! `(r mod n+1, c mod n+1)`.  [`FriezeGrid::from_polygon`] fills the grid
//! from that formula; [`FriezeGrid::from_boundary_column`] instead grows it
//! from a single column by determinant propagation and never looks at a
//! polygon.  The two constructions agree, which the test suite exercises
//! heavily, and [`triangulation_from_ones`] inverts both.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::fill::{FillGrid, FillProblem};
use crate::polygon::{frieze_value_from_quiddity, PolygonError, PolygonTriangulation};

/// Failures of frieze propagation and of the ones-to-triangulation reading.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FriezeError {
    #[error("boundary column is empty")]
    EmptySeed,
    #[error("entry {index} of the boundary column is {value}, expected positive")]
    SeedNotPositive { index: usize, value: BigInt },
    #[error("boundary column must start and end with 1")]
    BoundaryNotOne,
    #[error("grid value at ({row}, {col}) would not be an integer")]
    Inexact { row: usize, col: usize },
    #[error("grid value at ({row}, {col}) would not be positive")]
    NonPositive { row: usize, col: usize },
    #[error("grid block at ({row}, {col}) violates the determinant rule")]
    Inconsistent { row: usize, col: usize },
    #[error("grid cell ({row}, {col}) cannot be reached from the seeds")]
    Unreached { row: usize, col: usize },
    #[error("the 1-entries of the grid do not encode a triangulation: {0}")]
    NotATriangulation(#[from] PolygonError),
}

/// A fundamental region of a frieze of width `n`: rows `0..=n`, row `r`
/// holding columns `r+1..=r+n`.  All entries are positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriezeGrid {
    width: usize,
    rows: Vec<Vec<BigInt>>,
}

impl FriezeGrid {
    /// Band width `n`; entries exist for `1 <= c - r <= n`.
    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    /// The stored entry at `(r, c)`, if that cell is in the stored region.
    pub fn get(&self, r: usize, c: usize) -> Option<&BigInt> {
        if r > self.width || c <= r || c > r + self.width {
            return None;
        }
        Some(&self.rows[r][c - r - 1])
    }

    /// All stored cells as `(row, col, value)`, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(k, v)| (r, r + 1 + k, v)))
    }

    /// The frieze of a triangulated polygon: `F(r, c)` is the frieze value
    /// of the vertex pair `(r mod n+1, c mod n+1)`.
    pub fn from_polygon(pt: &PolygonTriangulation) -> FriezeGrid {
        let n = pt.n();
        let m = n + 1;
        let quiddity = pt.quiddity();
        let rows = (0..=n)
            .map(|r| {
                (r + 1..=r + n)
                    .map(|c| frieze_value_from_quiddity(&quiddity, r % m, c % m))
                    .collect()
            })
            .collect();
        FriezeGrid { width: n, rows }
    }

    /// Grows the grid from the boundary column `v_1, ..., v_n`, placed as
    /// `F(k, n+1) = v_k`, by determinant propagation from the two all-1
    /// band edges.  Requires `v_1 = v_n = 1`.
    ///
    /// This never consults a polygon, so it serves as an independent check
    /// of [`FriezeGrid::from_polygon`].
    pub fn from_boundary_column(values: &[BigInt]) -> Result<FriezeGrid, FriezeError> {
        let n = values.len();
        if n == 0 {
            return Err(FriezeError::EmptySeed);
        }
        for (k, v) in values.iter().enumerate() {
            if *v < BigInt::one() {
                return Err(FriezeError::SeedNotPositive {
                    index: k + 1,
                    value: v.clone(),
                });
            }
        }
        if values[0] != BigInt::one() || values[n - 1] != BigInt::one() {
            return Err(FriezeError::BoundaryNotOne);
        }
        let n_i = n as i64;
        let mut grid =
            FillGrid::with_mask((0, n_i), (1, 2 * n_i), |r, c| c - r >= 1 && c - r <= n_i);
        let seed = |grid: &mut FillGrid, r: i64, c: i64, v: BigInt| {
            grid.seed(r, c, v)
                .expect("frieze seeds are in-region and consistent")
        };
        for r in 0..=n_i {
            seed(&mut grid, r, r + 1, BigInt::one());
            seed(&mut grid, r, r + n_i, BigInt::one());
        }
        for (k, v) in values.iter().enumerate() {
            let r = k as i64 + 1;
            seed(&mut grid, r, n_i + 1, v.clone());
        }
        grid.solve().map_err(|p| match p {
            FillProblem::Inexact { i, j } => FriezeError::Inexact {
                row: i as usize,
                col: j as usize,
            },
            FillProblem::NonPositive { i, j } => FriezeError::NonPositive {
                row: i as usize,
                col: j as usize,
            },
            FillProblem::Determinant { i, j } => FriezeError::Inconsistent {
                row: i as usize,
                col: j as usize,
            },
            FillProblem::SeedConflict { .. } | FillProblem::OutsideRegion { .. } => {
                unreachable!("seeds were checked before solving")
            }
        })?;
        if let Some(&(r, c)) = grid.unknown_cells().first() {
            return Err(FriezeError::Unreached {
                row: r as usize,
                col: c as usize,
            });
        }
        let rows = (0..=n_i)
            .map(|r| {
                (r + 1..=r + n_i)
                    .map(|c| grid.get(r, c).expect("solved above").clone())
                    .collect()
            })
            .collect();
        Ok(FriezeGrid { width: n, rows })
    }

    /// Glide symmetry failures: pairs of cells `(i, j)` and `(j, i + n + 1)`
    /// holding different values.  Empty on every true frieze.
    pub fn glide_violations(&self) -> Vec<((usize, usize), (usize, usize))> {
        let n = self.width;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..=n {
                let a = self.get(i, j).expect("first fundamental copy is stored");
                let b = self
                    .get(j, i + n + 1)
                    .expect("glide image of the fundamental region is stored");
                if a != b {
                    out.push(((i, j), (j, i + n + 1)));
                }
            }
        }
        out
    }
}

/// Reads the triangulation back off a frieze: interior cells `F(r, c) = 1`
/// with `r + 2 <= c <= n` are exactly the diagonals `(r, c)` of the polygon
/// whose frieze this is.  Rejects grids whose 1-positions do not form a
/// triangulation.
pub fn triangulation_from_ones(grid: &FriezeGrid) -> Result<PolygonTriangulation, FriezeError> {
    let n = grid.width();
    let mut diagonals = Vec::new();
    for r in 0..=n {
        for c in r + 2..=n {
            if (r, c) == (0, n) {
                continue;
            }
            if grid.get(r, c).expect("interior cell is stored").is_one() {
                diagonals.push((r, c));
            }
        }
    }
    Ok(PolygonTriangulation::new(n + 1, diagonals)?)
}
