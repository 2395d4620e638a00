//! Fishburn matrices: upper-triangular nonnegative integer matrices whose
//! rows and columns all have positive weight.
//!
//! Cells are 1-indexed `(row, col)` with row 1 on top, matching the usual
//! matrix convention. Each Fishburn matrix of weight `n` is the canonical
//! form of one unlabeled interval order on `n` elements.

mod cells;
mod enumerate;
mod extension;
mod order;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cells::{cell_position, CellPosition, ExtremeKind, Quadrant};
pub use enumerate::{
    enumerate_matrices, enumerate_matrices_parallel, inflations, primitive_matrices, primitive_matrices_of_dim, Avoid,
    EnumOptions, MatrixStream,
};
pub use extension::{CodeLetter, ExtensionCode, Inflation};
pub use order::{matrix_to_order, order_to_matrix, IntervalOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is empty")]
    Empty,
    #[error("matrix is not square: row {row} has {len} entries, expected {k}")]
    NotSquare { row: usize, len: usize, k: usize },
    #[error("nonzero entry below the diagonal at ({row}, {col})")]
    NotUpperTriangular { row: usize, col: usize },
    #[error("row {0} has zero weight")]
    ZeroRow(usize),
    #[error("column {0} has zero weight")]
    ZeroColumn(usize),
    #[error("cell ({row}, {col}) is below the main diagonal")]
    BelowDiagonal { row: usize, col: usize },
    #[error("matrix is not primitive (entries must be 0 or 1)")]
    NotPrimitive,
    #[error("extension code has length {found}, last column has {expected} one-cells")]
    CodeLengthMismatch { expected: usize, found: usize },
    #[error("extension code {0} shifts every cell; at least one D or I is required")]
    InvalidCode(String),
    #[error("a 1x1 matrix has no parent in the extension tree")]
    NoParent,
    #[error("inflation does not match the one-cells of the primitive matrix")]
    InflationMismatch,
    #[error("relation is not a partial order")]
    NotPartialOrder,
    #[error("poset contains 2+2 and is not an interval order")]
    NotIntervalOrder,
    #[error("malformed matrix text: {0}")]
    Parse(String),
}

/// A 1-indexed matrix cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FishburnMatrix {
    k: usize,
    entries: Vec<u32>,
}

impl FishburnMatrix {
    /// Checks the three Fishburn conditions, reporting the first failure in
    /// the order: shape, triangularity, rows, columns.
    pub fn validate(rows: Vec<Vec<u32>>) -> Result<Self, MatrixError> {
        let k = rows.len();
        if k == 0 {
            return Err(MatrixError::Empty);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != k {
                return Err(MatrixError::NotSquare {
                    row: i + 1,
                    len: r.len(),
                    k,
                });
            }
        }
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate().take(i) {
                if v != 0 {
                    return Err(MatrixError::NotUpperTriangular { row: i + 1, col: j + 1 });
                }
            }
        }
        if let Some(i) = rows.iter().position(|r| r.iter().all(|&v| v == 0)) {
            return Err(MatrixError::ZeroRow(i + 1));
        }
        if let Some(j) = (0..k).find(|&j| rows.iter().all(|r| r[j] == 0)) {
            return Err(MatrixError::ZeroColumn(j + 1));
        }
        Ok(FishburnMatrix {
            k,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Constructor for internally generated matrices that are Fishburn by
    /// construction.
    pub(crate) fn from_raw(k: usize, entries: Vec<u32>) -> Self {
        debug_assert_eq!(entries.len(), k * k);
        let m = FishburnMatrix { k, entries };
        debug_assert!(FishburnMatrix::validate(m.rows()).is_ok(), "{m:?}");
        m
    }

    /// The 1x1 matrix `[n]`.
    pub fn single(n: u32) -> Self {
        assert!(n > 0);
        FishburnMatrix { k: 1, entries: vec![n] }
    }

    pub fn identity(k: usize) -> Self {
        let mut entries = vec![0; k * k];
        for i in 0..k {
            entries[i * k + i] = 1;
        }
        FishburnMatrix::from_raw(k, entries)
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, c: Cell) -> u32 {
        self.entries[(c.row - 1) * self.k + (c.col - 1)]
    }

    #[inline]
    pub fn at(&self, row: usize, col: usize) -> u32 {
        self.get(Cell::new(row, col))
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.k).map(<[u32]>::to_vec).collect()
    }

    /// Nonzero cells in row-major order.
    pub fn nonzero_cells(&self) -> Vec<Cell> {
        let k = self.k;
        (1..=k)
            .flat_map(|i| (i..=k).map(move |j| Cell::new(i, j)))
            .filter(|&c| self.get(c) > 0)
            .collect()
    }

    /// Nonzero cells of column `j`, top to bottom.
    pub fn column_cells(&self, j: usize) -> Vec<Cell> {
        (1..=j).map(|i| Cell::new(i, j)).filter(|&c| self.get(c) > 0).collect()
    }

    pub fn weight(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn row_weight(&self, i: usize) -> u32 {
        (1..=self.k).map(|j| self.at(i, j)).sum()
    }

    pub fn column_weight(&self, j: usize) -> u32 {
        (1..=self.k).map(|i| self.at(i, j)).sum()
    }

    pub fn first_row_weight(&self) -> u32 {
        self.row_weight(1)
    }

    /// Weight of the last column (`lc`).
    pub fn last_column_weight(&self) -> u32 {
        self.column_weight(self.k)
    }

    /// Weight of all columns before the last (`pc`).
    pub fn preceding_columns_weight(&self) -> u32 {
        self.weight() - self.last_column_weight()
    }

    /// Number of positive cells on the main diagonal.
    pub fn positive_diagonal_cells(&self) -> usize {
        (1..=self.k).filter(|&i| self.at(i, i) > 0).count()
    }

    pub fn is_primitive(&self) -> bool {
        self.entries.iter().all(|&v| v <= 1)
    }

    /// Number of wNE-cells (`ne`).
    pub fn ne(&self) -> usize {
        self.extreme_cells(ExtremeKind::WeakNE).len()
    }

    /// Reflection across the anti-diagonal: `(i, j) -> (k+1-j, k+1-i)`.
    pub fn antidiagonal_transpose(&self) -> Self {
        let k = self.k;
        let mut entries = vec![0; k * k];
        for c in self.nonzero_cells() {
            let (i, j) = (k + 1 - c.col, k + 1 - c.row);
            entries[(i - 1) * k + (j - 1)] = self.get(c);
        }
        FishburnMatrix::from_raw(k, entries)
    }

    /// Whether two distinct nonzero cells stand in the given strict position.
    pub fn has_pair_in(&self, pos: CellPosition) -> bool {
        let cells = self.nonzero_cells();
        cells.iter().any(|&c| {
            cells
                .iter()
                .any(|&d| c != d && cell_position(c, d).expect("nonzero cells are on or above the diagonal") == pos)
        })
    }

    /// Length of the longest chain of nonzero cells in which every cell is
    /// strictly NE (`increasing`) or strictly SE (`!increasing`) of every
    /// earlier one. Strict SE needs incomparable cells and is not
    /// transitive, so chains are checked pairwise.
    pub fn longest_chain(&self, increasing: bool) -> usize {
        let want = if increasing {
            CellPosition::StrictSW
        } else {
            CellPosition::StrictNW
        };
        let mut cells = self.nonzero_cells();
        // earlier chain members have smaller columns in both directions
        cells.sort_by_key(|c| (c.col, c.row));
        let n = cells.len();
        let rel: Vec<Vec<bool>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| cell_position(cells[a], cells[b]).ok() == Some(want))
                    .collect()
            })
            .collect();

        fn extend(rel: &[Vec<bool>], chain: &mut Vec<usize>, from: usize, best: &mut usize) {
            *best = (*best).max(chain.len());
            for next in from..rel.len() {
                if chain.len() + (rel.len() - next) <= *best {
                    return;
                }
                if chain.iter().all(|&c| rel[c][next]) {
                    chain.push(next);
                    extend(rel, chain, next + 1, best);
                    chain.pop();
                }
            }
        }
        let mut best = 0;
        extend(&rel, &mut Vec::new(), 0, &mut best);
        best
    }

    /// Text format: `k` lines of `k` space-separated integers.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in self.rows() {
            let line: Vec<String> = r.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, MatrixError> {
        let rows = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse::<u32>().map_err(|e| MatrixError::Parse(format!("{t:?}: {e}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        FishburnMatrix::validate(rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MatrixJson {
            k: self.k,
            rows: self.rows(),
        })
        .expect("plain data serializes")
    }

    pub fn parse_json(text: &str) -> Result<Self, MatrixError> {
        let m: MatrixJson = serde_json::from_str(text).map_err(|e| MatrixError::Parse(e.to_string()))?;
        if m.rows.len() != m.k {
            return Err(MatrixError::Parse(format!(
                "k = {} but {} rows given",
                m.k,
                m.rows.len()
            )));
        }
        FishburnMatrix::validate(m.rows)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    k: usize,
    rows: Vec<Vec<u32>>,
}

impl fmt::Debug for FishburnMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl fmt::Display for FishburnMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}
