//! Finite windows of SL2-tilings and their structural checks.
//!
//! A [`TilingWindow`] stores a rectangular block of positive entries at
//! absolute coordinates.  The constructor only enforces shape and
//! positivity; the determinant condition is a separate check so that corrupt
//! data can still be loaded, inspected, and reported on.
//!
//! Derived quantities: for rows `i < j` the value `c(i, j)` is the 2x2
//! determinant taken from rows `i, j` and two adjacent columns; it does not
//! depend on the column choice.  `d(i, j)` is the transpose notion for
//! column pairs.  On a valid tiling both are positive, satisfy the Ptolemy
//! relations, and drive a linear three-term recurrence along rows and
//! columns.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::fill::{FillGrid, FillProblem};

/// Rejection reasons for [`TilingWindow::new`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum WindowError {
    #[error("window range is empty")]
    EmptyRange,
    #[error("expected {expected} rows, got {actual}")]
    RowCount { expected: usize, actual: usize },
    #[error("row {row} has {actual} entries, expected {expected}")]
    RowLength {
        row: i64,
        expected: usize,
        actual: usize,
    },
    #[error("entry at ({i}, {j}) is {value}, expected positive")]
    NotPositive { i: i64, j: i64, value: BigInt },
}

/// A rectangular block `t(i, j)` for `i0 <= i <= i1`, `j0 <= j <= j1`,
/// with all entries positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingWindow {
    i0: i64,
    i1: i64,
    j0: i64,
    j1: i64,
    values: Vec<BigInt>,
}

impl TilingWindow {
    pub fn new(
        rows: (i64, i64),
        cols: (i64, i64),
        values: Vec<Vec<BigInt>>,
    ) -> Result<Self, WindowError> {
        let (i0, i1) = rows;
        let (j0, j1) = cols;
        if i0 > i1 || j0 > j1 {
            return Err(WindowError::EmptyRange);
        }
        let height = (i1 - i0 + 1) as usize;
        let width = (j1 - j0 + 1) as usize;
        if values.len() != height {
            return Err(WindowError::RowCount {
                expected: height,
                actual: values.len(),
            });
        }
        let mut flat = Vec::with_capacity(height * width);
        for (r, row) in values.into_iter().enumerate() {
            if row.len() != width {
                return Err(WindowError::RowLength {
                    row: i0 + r as i64,
                    expected: width,
                    actual: row.len(),
                });
            }
            for (k, v) in row.into_iter().enumerate() {
                if v < BigInt::one() {
                    return Err(WindowError::NotPositive {
                        i: i0 + r as i64,
                        j: j0 + k as i64,
                        value: v,
                    });
                }
                flat.push(v);
            }
        }
        Ok(Self {
            i0,
            i1,
            j0,
            j1,
            values: flat,
        })
    }

    #[inline]
    pub fn row_range(&self) -> (i64, i64) {
        (self.i0, self.i1)
    }

    #[inline]
    pub fn col_range(&self) -> (i64, i64) {
        (self.j0, self.j1)
    }

    #[inline]
    pub fn height(&self) -> usize {
        (self.i1 - self.i0 + 1) as usize
    }

    #[inline]
    pub fn width(&self) -> usize {
        (self.j1 - self.j0 + 1) as usize
    }

    #[inline]
    pub fn contains(&self, i: i64, j: i64) -> bool {
        self.i0 <= i && i <= self.i1 && self.j0 <= j && j <= self.j1
    }

    /// The entry `t(i, j)`; panics outside the window.
    pub fn get(&self, i: i64, j: i64) -> &BigInt {
        self.try_get(i, j)
            .unwrap_or_else(|| panic!("({i}, {j}) outside window"))
    }

    pub fn try_get(&self, i: i64, j: i64) -> Option<&BigInt> {
        if !self.contains(i, j) {
            return None;
        }
        let r = (i - self.i0) as usize;
        let c = (j - self.j0) as usize;
        Some(&self.values[r * self.width() + c])
    }

    /// All cells as `(i, j, value)`, row-major.
    pub fn cells(&self) -> impl Iterator<Item = (i64, i64, &BigInt)> {
        let (j0, j1) = (self.j0, self.j1);
        let i0 = self.i0;
        let width = self.width() as i64;
        self.values.iter().enumerate().map(move |(ix, v)| {
            let i = i0 + ix as i64 / width;
            let j = j0 + ix as i64 % width;
            debug_assert!(j <= j1);
            (i, j, v)
        })
    }

    /// Positions with entry 1, row-major.
    pub fn ones(&self) -> Vec<(i64, i64)> {
        self.cells()
            .filter(|(_, _, v)| v.is_one())
            .map(|(i, j, _)| (i, j))
            .collect()
    }

    /// Every adjacent 2x2 block with determinant != 1, by top-left corner.
    pub fn check_determinants(&self) -> Vec<DeterminantViolation> {
        let mut out = Vec::new();
        for i in self.i0..self.i1 {
            for j in self.j0..self.j1 {
                let det = self.get(i, j) * self.get(i + 1, j + 1)
                    - self.get(i, j + 1) * self.get(i + 1, j);
                if !det.is_one() {
                    out.push(DeterminantViolation { i, j, det });
                }
            }
        }
        out
    }

    /// The derived value `c(i, j)` for rows `i < j`: the determinant of the
    /// 2x2 matrix taken from rows `i, j` and columns `a, a+1`, which must
    /// come out the same for every admissible `a`.
    pub fn c_value(&self, i: i64, j: i64) -> Result<BigInt, DerivedValueError> {
        self.derived(Axis::Row, i, j)
    }

    /// The derived value `d(i, j)` for columns `i < j`, transposing the
    /// roles of rows and columns in [`TilingWindow::c_value`].
    pub fn d_value(&self, i: i64, j: i64) -> Result<BigInt, DerivedValueError> {
        self.derived(Axis::Column, i, j)
    }

    fn derived(&self, axis: Axis, i: i64, j: i64) -> Result<BigInt, DerivedValueError> {
        if i >= j {
            return Err(DerivedValueError::BadPair { axis, i, j });
        }
        let (lo, hi) = match axis {
            Axis::Row => self.row_range(),
            Axis::Column => self.col_range(),
        };
        if i < lo || j > hi {
            return Err(DerivedValueError::OutOfWindow { axis, i, j });
        }
        let (alo, ahi) = match axis {
            Axis::Row => self.col_range(),
            Axis::Column => self.row_range(),
        };
        if alo == ahi {
            return Err(DerivedValueError::TooNarrow { axis });
        }
        let at = |line: i64, a: i64| match axis {
            Axis::Row => self.get(line, a),
            Axis::Column => self.get(a, line),
        };
        let mut first: Option<(i64, BigInt)> = None;
        for a in alo..ahi {
            let det = at(i, a) * at(j, a + 1) - at(i, a + 1) * at(j, a);
            match &first {
                None => first = Some((a, det)),
                Some((a0, v0)) => {
                    if *v0 != det {
                        return Err(DerivedValueError::Inconsistent {
                            axis,
                            i,
                            j,
                            first_at: *a0,
                            first: v0.clone(),
                            second_at: a,
                            second: det,
                        });
                    }
                }
            }
        }
        Ok(first.expect("at least one adjacent pair").1)
    }

    /// Pairs of 1-entries in forbidden relative position: both coordinates
    /// strictly increasing from one to the other.  Empty on every window of
    /// a tiling with enough ones.
    pub fn ones_quadrant_check(&self) -> Vec<((i64, i64), (i64, i64))> {
        let ones = self.ones();
        let mut out = Vec::new();
        for (k, &a) in ones.iter().enumerate() {
            for &b in &ones[k + 1..] {
                if (a.0 < b.0 && a.1 < b.1) || (b.0 < a.0 && b.1 < a.1) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Checks the consequence of determinant positivity around repeated
    /// values: equal entries in one row force a strict decrease in the row
    /// above, and equal entries in one column force a strict decrease in
    /// the column to the left.
    pub fn repeated_value_check(&self) -> Vec<RepeatViolation> {
        let mut out = Vec::new();
        for i in self.i0 + 1..=self.i1 {
            for j in self.j0..self.j1 {
                for k in j + 1..=self.j1 {
                    if self.get(i, j) == self.get(i, k) && self.get(i - 1, j) <= self.get(i - 1, k)
                    {
                        out.push(RepeatViolation {
                            axis: Axis::Row,
                            line: i,
                            first: j,
                            second: k,
                        });
                    }
                }
            }
        }
        for j in self.j0 + 1..=self.j1 {
            for i in self.i0..self.i1 {
                for k in i + 1..=self.i1 {
                    if self.get(i, j) == self.get(k, j) && self.get(i, j - 1) <= self.get(k, j - 1)
                    {
                        out.push(RepeatViolation {
                            axis: Axis::Column,
                            line: j,
                            first: i,
                            second: k,
                        });
                    }
                }
            }
        }
        out
    }

    /// Row and column recurrence coefficients.  For every interior row `i`
    /// the ratio `(t(i-1, a) + t(i+1, a)) / t(i, a)` must be the same
    /// integer for all `a`, and it must equal `c(i-1, i+1)`; dually for
    /// columns with `d`.  Requires at least one interior line.
    pub fn linearization(&self) -> Result<Linearization, LinearizationError> {
        if self.height() < 3 && self.width() < 3 {
            return Err(LinearizationError::TooSmall);
        }
        let mut row = Vec::new();
        for i in self.i0 + 1..self.i1 {
            row.push((i, self.line_coefficient(Axis::Row, i)?));
        }
        let mut column = Vec::new();
        for j in self.j0 + 1..self.j1 {
            column.push((j, self.line_coefficient(Axis::Column, j)?));
        }
        Ok(Linearization { row, column })
    }

    fn line_coefficient(&self, axis: Axis, line: i64) -> Result<BigInt, LinearizationError> {
        let (alo, ahi) = match axis {
            Axis::Row => self.col_range(),
            Axis::Column => self.row_range(),
        };
        let at = |l: i64, a: i64| match axis {
            Axis::Row => self.get(l, a),
            Axis::Column => self.get(a, l),
        };
        let mut coefficient: Option<(i64, BigInt)> = None;
        for a in alo..=ahi {
            let sum = at(line - 1, a) + at(line + 1, a);
            let mid = at(line, a);
            if !(&sum % mid).is_zero() {
                return Err(LinearizationError::NotIntegral { axis, line, at: a });
            }
            let ratio = sum / mid;
            match &coefficient {
                None => coefficient = Some((a, ratio)),
                Some((a0, r0)) => {
                    if *r0 != ratio {
                        return Err(LinearizationError::NotConstant {
                            axis,
                            line,
                            first_at: *a0,
                            second_at: a,
                        });
                    }
                }
            }
        }
        let (_, ratio) = coefficient.expect("window lines are nonempty");
        let derived = self
            .derived(axis, line - 1, line + 1)
            .map_err(|source| LinearizationError::Derived { axis, line, source })?;
        if ratio != derived {
            return Err(LinearizationError::MismatchWithDerived { axis, line });
        }
        Ok(ratio)
    }
}

/// Row or column, for error and report types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::Row => write!(f, "row"),
            Axis::Column => write!(f, "column"),
        }
    }
}

/// An adjacent 2x2 block whose determinant is not 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantViolation {
    pub i: i64,
    pub j: i64,
    pub det: BigInt,
}

impl fmt::Display for DeterminantViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "block at ({}, {}) has determinant {}",
            self.i, self.j, self.det
        )
    }
}

/// Failure to evaluate `c` or `d`.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DerivedValueError {
    #[error("{axis} pair ({i}, {j}) must satisfy i < j")]
    BadPair { axis: Axis, i: i64, j: i64 },
    #[error("{axis} pair ({i}, {j}) is not inside the window")]
    OutOfWindow { axis: Axis, i: i64, j: i64 },
    #[error("window too narrow to take any determinant across the {axis} pair")]
    TooNarrow { axis: Axis },
    #[error(
        "{axis} pair ({i}, {j}): determinant at offset {first_at} is {first} \
         but at offset {second_at} is {second}"
    )]
    Inconsistent {
        axis: Axis,
        i: i64,
        j: i64,
        first_at: i64,
        first: BigInt,
        second_at: i64,
        second: BigInt,
    },
}

/// A repeated value whose neighbouring line fails the strict comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepeatViolation {
    pub axis: Axis,
    pub line: i64,
    pub first: i64,
    pub second: i64,
}

impl fmt::Display for RepeatViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (prev, kind) = match self.axis {
            Axis::Row => ("row above", "row"),
            Axis::Column => ("column to the left", "column"),
        };
        write!(
            f,
            "{kind} {} repeats a value at offsets {} and {} but the {prev} does not decrease",
            self.line, self.first, self.second
        )
    }
}

/// The recurrence coefficients per interior row and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Linearization {
    pub row: Vec<(i64, BigInt)>,
    pub column: Vec<(i64, BigInt)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinearizationError {
    #[error("window needs at least 3 rows or 3 columns")]
    TooSmall,
    #[error("{axis} {line}: neighbour sum at offset {at} does not divide")]
    NotIntegral { axis: Axis, line: i64, at: i64 },
    #[error("{axis} {line}: ratio changes between offsets {first_at} and {second_at}")]
    NotConstant {
        axis: Axis,
        line: i64,
        first_at: i64,
        second_at: i64,
    },
    #[error("{axis} {line}: {source}")]
    Derived {
        axis: Axis,
        line: i64,
        source: DerivedValueError,
    },
    #[error("{axis} {line}: recurrence coefficient differs from the derived value")]
    MismatchWithDerived { axis: Axis, line: i64 },
}

/// The five Ptolemy-style identity families a window can be tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PtolemyFamily {
    /// `c(i,k) c(j,l) = c(i,j) c(k,l) + c(i,l) c(j,k)` over rows `i<j<k<l`.
    CQuadruple,
    /// The same identity for `d` over column quadruples.
    DQuadruple,
    /// `t(j,a) c(i,k) = t(i,a) c(j,k) + t(k,a) c(i,j)` over rows `i<j<k`.
    CExchange,
    /// `t(a,j) d(i,k) = t(a,i) d(j,k) + t(a,k) d(i,j)` over columns `i<j<k`.
    DExchange,
    /// The cross 2x2 determinant over rows `i<j`, columns `p<q` equals
    /// `c(i,j) d(p,q)`.
    Factorization,
}

impl fmt::Display for PtolemyFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            PtolemyFamily::CQuadruple => "c-quadruple",
            PtolemyFamily::DQuadruple => "d-quadruple",
            PtolemyFamily::CExchange => "c-exchange",
            PtolemyFamily::DExchange => "d-exchange",
            PtolemyFamily::Factorization => "factorization",
        };
        write!(f, "{name}")
    }
}

/// How many instances to test per family.  When a family has at most `cap`
/// instances they are all checked; otherwise `cap` are sampled with the
/// seeded generator.  `cap = None` forces exhaustive checking.
#[derive(Debug, Clone)]
pub struct PtolemyOptions {
    pub cap: Option<u64>,
    pub seed: u64,
}

impl Default for PtolemyOptions {
    fn default() -> Self {
        Self {
            cap: Some(100_000),
            seed: 0x5eed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtolemyViolation {
    pub family: PtolemyFamily,
    /// Rows/columns of the instance, in the order of the family definition.
    pub indices: Vec<i64>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for PtolemyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {:?}: {} != {}",
            self.family, self.indices, self.lhs, self.rhs
        )
    }
}

/// Outcome of the Ptolemy identity checks: instances tested per family and
/// all violations found.
#[derive(Debug, Clone)]
pub struct PtolemyReport {
    pub checked: Vec<(PtolemyFamily, u64)>,
    pub violations: Vec<PtolemyViolation>,
}

impl PtolemyReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PtolemyError {
    #[error("window too small for any identity instance")]
    TooSmall,
    #[error(transparent)]
    Derived(#[from] DerivedValueError),
}

/// Derived values with memoisation, shared by all identity families.
struct DerivedCache<'w> {
    window: &'w TilingWindow,
    c: HashMap<(i64, i64), BigInt>,
    d: HashMap<(i64, i64), BigInt>,
}

impl<'w> DerivedCache<'w> {
    fn new(window: &'w TilingWindow) -> Self {
        Self {
            window,
            c: HashMap::new(),
            d: HashMap::new(),
        }
    }

    fn c(&mut self, i: i64, j: i64) -> Result<BigInt, DerivedValueError> {
        if let Some(v) = self.c.get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = self.window.c_value(i, j)?;
        self.c.insert((i, j), v.clone());
        Ok(v)
    }

    fn d(&mut self, i: i64, j: i64) -> Result<BigInt, DerivedValueError> {
        if let Some(v) = self.d.get(&(i, j)) {
            return Ok(v.clone());
        }
        let v = self.window.d_value(i, j)?;
        self.d.insert((i, j), v.clone());
        Ok(v)
    }
}

/// Checks the five identity families on a window, exhaustively per family
/// when the instance count fits under the cap and by seeded sampling
/// otherwise.
pub fn ptolemy_report(
    window: &TilingWindow,
    options: &PtolemyOptions,
) -> Result<PtolemyReport, PtolemyError> {
    let rows: Vec<i64> = (window.row_range().0..=window.row_range().1).collect();
    let cols: Vec<i64> = (window.col_range().0..=window.col_range().1).collect();
    let mut cache = DerivedCache::new(window);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut checked = Vec::new();
    let mut violations = Vec::new();

    // Each family yields (indices, lhs, rhs).  `run` draws either every
    // k-subset or `cap` random ones, then evaluates the identity.
    let families: [(PtolemyFamily, &[i64], usize, &[i64]); 5] = [
        (PtolemyFamily::CQuadruple, &rows, 4, &[]),
        (PtolemyFamily::DQuadruple, &cols, 4, &[]),
        (PtolemyFamily::CExchange, &rows, 3, &cols),
        (PtolemyFamily::DExchange, &cols, 3, &rows),
        (PtolemyFamily::Factorization, &rows, 2, &cols),
    ];
    for (family, lines, k, extra) in families {
        let extra_count = match family {
            PtolemyFamily::CQuadruple | PtolemyFamily::DQuadruple => 1u128,
            PtolemyFamily::CExchange | PtolemyFamily::DExchange => extra.len() as u128,
            PtolemyFamily::Factorization => {
                let e = extra.len() as u128;
                e * e.saturating_sub(1) / 2
            }
        };
        let total = binomial(lines.len() as u128, k) * extra_count;
        let budget = match options.cap {
            Some(cap) if total > cap as u128 => Some(cap),
            _ => None,
        };
        let mut count = 0u64;
        let mut eval =
            |cache: &mut DerivedCache, subset: &[i64], aux: &[i64]| -> Result<(), PtolemyError> {
                count += 1;
                let (indices, lhs, rhs) = evaluate_family(window, cache, family, subset, aux)?;
                if lhs != rhs {
                    violations.push(PtolemyViolation {
                        family,
                        indices,
                        lhs,
                        rhs,
                    });
                }
                Ok(())
            };
        match budget {
            None => {
                // Exhaustive: walk every k-subset of the lines, then every
                // choice of the auxiliary index or pair.
                let mut subset: Vec<usize> = (0..k).collect();
                if lines.len() >= k && total > 0 {
                    loop {
                        let chosen: Vec<i64> = subset.iter().map(|&s| lines[s]).collect();
                        match family {
                            PtolemyFamily::CQuadruple | PtolemyFamily::DQuadruple => {
                                eval(&mut cache, &chosen, &[])?;
                            }
                            PtolemyFamily::CExchange | PtolemyFamily::DExchange => {
                                for &a in extra {
                                    eval(&mut cache, &chosen, &[a])?;
                                }
                            }
                            PtolemyFamily::Factorization => {
                                for (pi, &p) in extra.iter().enumerate() {
                                    for &q in &extra[pi + 1..] {
                                        eval(&mut cache, &chosen, &[p, q])?;
                                    }
                                }
                            }
                        }
                        if !advance(&mut subset, lines.len()) {
                            break;
                        }
                    }
                }
            }
            Some(cap) => {
                for _ in 0..cap {
                    let chosen = sample_sorted(&mut rng, lines, k);
                    let aux = match family {
                        PtolemyFamily::CQuadruple | PtolemyFamily::DQuadruple => vec![],
                        PtolemyFamily::CExchange | PtolemyFamily::DExchange => {
                            vec![extra[rng.random_range(0..extra.len())]]
                        }
                        PtolemyFamily::Factorization => sample_sorted(&mut rng, extra, 2),
                    };
                    eval(&mut cache, &chosen, &aux)?;
                }
            }
        }
        checked.push((family, count));
    }
    if checked.iter().all(|&(_, n)| n == 0) {
        return Err(PtolemyError::TooSmall);
    }
    Ok(PtolemyReport {
        checked,
        violations,
    })
}

fn evaluate_family(
    window: &TilingWindow,
    cache: &mut DerivedCache,
    family: PtolemyFamily,
    subset: &[i64],
    aux: &[i64],
) -> Result<(Vec<i64>, BigInt, BigInt), PtolemyError> {
    match family {
        PtolemyFamily::CQuadruple | PtolemyFamily::DQuadruple => {
            let [i, j, k, l] = [subset[0], subset[1], subset[2], subset[3]];
            let v = |cache: &mut DerivedCache, a, b| match family {
                PtolemyFamily::CQuadruple => cache.c(a, b),
                _ => cache.d(a, b),
            };
            let lhs = v(cache, i, k)? * v(cache, j, l)?;
            let rhs = v(cache, i, j)? * v(cache, k, l)? + v(cache, i, l)? * v(cache, j, k)?;
            Ok((vec![i, j, k, l], lhs, rhs))
        }
        PtolemyFamily::CExchange => {
            let [i, j, k] = [subset[0], subset[1], subset[2]];
            let a = aux[0];
            let lhs = window.get(j, a) * cache.c(i, k)?;
            let rhs = window.get(i, a) * cache.c(j, k)? + window.get(k, a) * cache.c(i, j)?;
            Ok((vec![i, j, k, a], lhs, rhs))
        }
        PtolemyFamily::DExchange => {
            let [i, j, k] = [subset[0], subset[1], subset[2]];
            let a = aux[0];
            let lhs = window.get(a, j) * cache.d(i, k)?;
            let rhs = window.get(a, i) * cache.d(j, k)? + window.get(a, k) * cache.d(i, j)?;
            Ok((vec![i, j, k, a], lhs, rhs))
        }
        PtolemyFamily::Factorization => {
            let [i, j] = [subset[0], subset[1]];
            let [p, q] = [aux[0], aux[1]];
            let lhs = window.get(i, p) * window.get(j, q) - window.get(i, q) * window.get(j, p);
            let rhs = cache.c(i, j)? * cache.d(p, q)?;
            Ok((vec![i, j, p, q], lhs, rhs))
        }
    }
}

/// Next k-subset of `0..len` in lexicographic order; false when exhausted.
fn advance(subset: &mut [usize], len: usize) -> bool {
    let k = subset.len();
    let mut pos = k;
    while pos > 0 {
        pos -= 1;
        if subset[pos] < len - (k - pos) {
            subset[pos] += 1;
            for t in pos + 1..k {
                subset[t] = subset[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn sample_sorted(rng: &mut ChaCha8Rng, lines: &[i64], k: usize) -> Vec<i64> {
    debug_assert!(lines.len() >= k);
    let mut picked: Vec<usize> = Vec::with_capacity(k);
    while picked.len() < k {
        let c = rng.random_range(0..lines.len());
        if !picked.contains(&c) {
            picked.push(c);
        }
    }
    picked.sort_unstable();
    picked.into_iter().map(|ix| lines[ix]).collect()
}

fn binomial(n: u128, k: usize) -> u128 {
    let k = k as u128;
    if k > n {
        return 0;
    }
    let mut out = 1u128;
    for t in 0..k {
        out = out * (n - t) / (t + 1);
    }
    out
}

/// A prescribed cell: position and value.
pub type Seed = ((i64, i64), BigInt);

/// Failures of [`determinant_fill`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum FillError {
    #[error("seed at ({i}, {j}) lies outside the window")]
    SeedOutsideWindow { i: i64, j: i64 },
    #[error("seed at ({i}, {j}) is {value}, expected positive")]
    SeedNotPositive { i: i64, j: i64, value: BigInt },
    #[error("conflicting seeds at ({i}, {j})")]
    SeedConflict { i: i64, j: i64 },
    #[error("cell ({i}, {j}) is forced to a non-integer value")]
    Inexact { i: i64, j: i64 },
    #[error("cell ({i}, {j}) is forced to a non-positive value")]
    NonPositive { i: i64, j: i64 },
    #[error("seeds violate the determinant rule at block ({i}, {j})")]
    Inconsistent { i: i64, j: i64 },
    #[error("cell ({i}, {j}) cannot be determined from the seeds")]
    Unsolvable { i: i64, j: i64 },
}

/// Completes a window from seed values under the determinant rule.  The
/// seeds must determine every cell; the usual shape is a zig-zag of ones
/// with full segments between them, or a row-column cross.
pub fn determinant_fill(
    seeds: &[Seed],
    rows: (i64, i64),
    cols: (i64, i64),
) -> Result<TilingWindow, FillError> {
    let mut grid = FillGrid::new(rows, cols);
    for ((i, j), value) in seeds {
        if value < &BigInt::one() {
            return Err(FillError::SeedNotPositive {
                i: *i,
                j: *j,
                value: value.clone(),
            });
        }
        grid.seed(*i, *j, value.clone()).map_err(|p| match p {
            FillProblem::OutsideRegion { i, j } => FillError::SeedOutsideWindow { i, j },
            FillProblem::SeedConflict { i, j } => FillError::SeedConflict { i, j },
            _ => unreachable!("seeding only reports placement problems"),
        })?;
    }
    grid.solve().map_err(|p| match p {
        FillProblem::Inexact { i, j } => FillError::Inexact { i, j },
        FillProblem::NonPositive { i, j } => FillError::NonPositive { i, j },
        FillProblem::Determinant { i, j } => FillError::Inconsistent { i, j },
        _ => unreachable!("solving only reports arithmetic problems"),
    })?;
    if let Some(&(i, j)) = grid.unknown_cells().first() {
        return Err(FillError::Unsolvable { i, j });
    }
    let values = (rows.0..=rows.1)
        .map(|i| {
            (cols.0..=cols.1)
                .map(|j| grid.get(i, j).expect("grid fully solved").clone())
                .collect()
        })
        .collect();
    Ok(TilingWindow::new(rows, cols, values).expect("solved grids are positive and rectangular"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn window(rows: (i64, i64), cols: (i64, i64), data: &[&[i64]]) -> TilingWindow {
        let values = data
            .iter()
            .map(|row| row.iter().map(|&v| big(v)).collect())
            .collect();
        TilingWindow::new(rows, cols, values).unwrap()
    }

    fn fib_corner() -> TilingWindow {
        window((0, 2), (0, 2), &[&[1, 1, 2], &[1, 2, 5], &[2, 5, 13]])
    }

    #[test]
    fn constructor_validates_shape_and_positivity() {
        assert_eq!(
            TilingWindow::new((0, -1), (0, 0), vec![]).unwrap_err(),
            WindowError::EmptyRange
        );
        assert_eq!(
            TilingWindow::new((0, 0), (0, 1), vec![vec![big(1)]]).unwrap_err(),
            WindowError::RowLength {
                row: 0,
                expected: 2,
                actual: 1
            }
        );
        assert_eq!(
            TilingWindow::new((0, 0), (0, 0), vec![vec![big(0)]]).unwrap_err(),
            WindowError::NotPositive {
                i: 0,
                j: 0,
                value: big(0)
            }
        );
    }

    #[test]
    fn determinant_check_pinpoints_the_block() {
        let good = fib_corner();
        assert!(good.check_determinants().is_empty());
        let bad = window((0, 1), (0, 1), &[&[1, 1], &[1, 1]]);
        let violations = bad.check_determinants();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].i, 0);
        assert_eq!(violations[0].j, 0);
        assert_eq!(violations[0].det, big(0));
    }

    #[test]
    fn derived_values_are_column_independent() {
        let w = fib_corner();
        assert_eq!(w.c_value(0, 2).unwrap(), big(3));
        assert_eq!(w.d_value(0, 2).unwrap(), big(3));
        assert_eq!(w.c_value(0, 1).unwrap(), big(1));
        assert_eq!(w.c_value(1, 2).unwrap(), big(1));
    }

    #[test]
    fn derived_value_errors() {
        let w = fib_corner();
        assert!(matches!(
            w.c_value(2, 0).unwrap_err(),
            DerivedValueError::BadPair { .. }
        ));
        assert!(matches!(
            w.c_value(0, 5).unwrap_err(),
            DerivedValueError::OutOfWindow { .. }
        ));
        let thin = window((0, 2), (0, 0), &[&[1], &[1], &[1]]);
        assert!(matches!(
            thin.c_value(0, 2).unwrap_err(),
            DerivedValueError::TooNarrow { .. }
        ));
        // Corrupt data makes the determinant depend on the column choice.
        let corrupt = window((0, 1), (0, 2), &[&[1, 1, 1], &[1, 2, 4]]);
        assert!(matches!(
            corrupt.c_value(0, 1).unwrap_err(),
            DerivedValueError::Inconsistent { .. }
        ));
    }

    #[test]
    fn adjacent_derived_values_are_one() {
        let w = fib_corner();
        for i in 0..2 {
            assert_eq!(w.c_value(i, i + 1).unwrap(), big(1));
            assert_eq!(w.d_value(i, i + 1).unwrap(), big(1));
        }
    }

    #[test]
    fn quadrant_check_flags_comparable_ones() {
        let bad = window((0, 1), (0, 1), &[&[1, 2], &[3, 1]]);
        assert_eq!(bad.ones_quadrant_check(), vec![((0, 0), (1, 1))]);
        let good = window((0, 1), (0, 1), &[&[2, 1], &[1, 3]]);
        assert!(good.ones_quadrant_check().is_empty());
    }

    #[test]
    fn repeated_values_need_strict_neighbours() {
        // Row 1 repeats the value 1; row 0 repeats 3, so neither pair has a
        // strictly decreasing line above/left of it.
        let bad = window((0, 1), (0, 1), &[&[3, 3], &[1, 1]]);
        let violations = bad.repeated_value_check();
        assert!(violations
            .iter()
            .any(|v| v.axis == Axis::Row && v.line == 1));
        assert!(fib_corner().repeated_value_check().is_empty());
    }

    #[test]
    fn linearization_matches_derived_values() {
        let lin = fib_corner().linearization().unwrap();
        assert_eq!(lin.row, vec![(1, big(3))]);
        assert_eq!(lin.column, vec![(1, big(3))]);
    }

    #[test]
    fn linearization_needs_an_interior_line() {
        let w = window((0, 1), (0, 1), &[&[1, 1], &[1, 2]]);
        assert_eq!(w.linearization().unwrap_err(), LinearizationError::TooSmall);
    }

    #[test]
    fn ptolemy_families_hold_on_a_valid_corner() {
        let report = ptolemy_report(&fib_corner(), &PtolemyOptions::default()).unwrap();
        assert!(report.is_clean());
        // 3x3 window: no quadruples, C(3,3)*3 = 3 per exchange family,
        // C(3,2)^2 = 9 factorizations.
        let by_family: HashMap<_, _> = report.checked.iter().copied().collect();
        assert_eq!(by_family[&PtolemyFamily::CQuadruple], 0);
        assert_eq!(by_family[&PtolemyFamily::CExchange], 3);
        assert_eq!(by_family[&PtolemyFamily::Factorization], 9);
    }

    #[test]
    fn ptolemy_sampling_respects_the_cap() {
        let w = fib_corner();
        let report = ptolemy_report(
            &w,
            &PtolemyOptions {
                cap: Some(2),
                seed: 7,
            },
        )
        .unwrap();
        for (family, n) in report.checked {
            match family {
                PtolemyFamily::CQuadruple | PtolemyFamily::DQuadruple => assert_eq!(n, 0),
                _ => assert_eq!(n, 2, "{family}"),
            }
        }
    }

    #[test]
    fn ptolemy_rejects_hopeless_windows() {
        let w = window((0, 0), (0, 0), &[&[1]]);
        assert_eq!(
            ptolemy_report(&w, &PtolemyOptions::default()).unwrap_err(),
            PtolemyError::TooSmall
        );
    }

    #[test]
    fn fill_completes_a_cross() {
        let mut seeds = Vec::new();
        for k in -1..=1i64 {
            seeds.push(((0, k), big(k.abs() + 1)));
            seeds.push(((k, 0), big(k.abs() + 1)));
        }
        let w = determinant_fill(&seeds, (-1, 1), (-1, 1)).unwrap();
        assert_eq!(w.get(-1, -1), &big(5));
        assert_eq!(w.get(-1, 1), &big(3));
        assert_eq!(w.get(1, -1), &big(3));
        assert_eq!(w.get(1, 1), &big(5));
        assert!(w.check_determinants().is_empty());
    }

    #[test]
    fn fill_reports_unsolvable_cells() {
        let seeds = vec![((0, 0), big(1))];
        assert_eq!(
            determinant_fill(&seeds, (0, 1), (0, 1)).unwrap_err(),
            FillError::Unsolvable { i: 0, j: 1 }
        );
    }

    #[test]
    fn fill_rejects_bad_seeds() {
        assert_eq!(
            determinant_fill(&[((5, 5), big(1))], (0, 1), (0, 1)).unwrap_err(),
            FillError::SeedOutsideWindow { i: 5, j: 5 }
        );
        assert_eq!(
            determinant_fill(&[((0, 0), big(-2))], (0, 1), (0, 1)).unwrap_err(),
            FillError::SeedNotPositive {
                i: 0,
                j: 0,
                value: big(-2)
            }
        );
        let dup = [((0, 0), big(1)), ((0, 0), big(2))];
        assert_eq!(
            determinant_fill(&dup, (0, 1), (0, 1)).unwrap_err(),
            FillError::SeedConflict { i: 0, j: 0 }
        );
    }
}
