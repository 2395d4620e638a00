//! Mutual positions of cells and extreme-cell statistics.

use super::{Cell, FishburnMatrix, MatrixError};

/// Position of a cell `c` relative to a cell `d`.
///
/// `Greater` and `Smaller` mirror the order relation of the represented
/// elements; the remaining variants describe incomparable cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellPosition {
    Greater,
    Smaller,
    North,
    South,
    East,
    West,
    StrictNE,
    StrictNW,
    StrictSE,
    StrictSW,
    Equal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quadrant {
    NE,
    NW,
    SE,
    SW,
}

impl CellPosition {
    /// The two adjacent cardinal directions plus the strict diagonal one.
    pub fn is_weakly(self, q: Quadrant) -> bool {
        use CellPosition::*;
        matches!(
            (q, self),
            (Quadrant::NE, North | East | StrictNE)
                | (Quadrant::NW, North | West | StrictNW)
                | (Quadrant::SE, South | East | StrictSE)
                | (Quadrant::SW, South | West | StrictSW)
        )
    }

    pub fn is_strictly(self, q: Quadrant) -> bool {
        self == match q {
            Quadrant::NE => CellPosition::StrictNE,
            Quadrant::NW => CellPosition::StrictNW,
            Quadrant::SE => CellPosition::StrictSE,
            Quadrant::SW => CellPosition::StrictSW,
        }
    }

    pub fn is_comparable(self) -> bool {
        matches!(self, CellPosition::Greater | CellPosition::Smaller)
    }
}

/// Classifies `c` relative to `d`. Both cells must lie on or above the main
/// diagonal.
pub fn cell_position(c: Cell, d: Cell) -> Result<CellPosition, MatrixError> {
    use std::cmp::Ordering::*;
    for x in [c, d] {
        if x.row > x.col {
            return Err(MatrixError::BelowDiagonal { row: x.row, col: x.col });
        }
    }
    if d.col < c.row {
        return Ok(CellPosition::Greater);
    }
    if c.col < d.row {
        return Ok(CellPosition::Smaller);
    }
    Ok(match (c.row.cmp(&d.row), c.col.cmp(&d.col)) {
        (Equal, Equal) => CellPosition::Equal,
        (Less, Equal) => CellPosition::North,
        (Greater, Equal) => CellPosition::South,
        (Equal, Less) => CellPosition::West,
        (Equal, Greater) => CellPosition::East,
        (Greater, Less) => CellPosition::StrictSW,
        (Less, Greater) => CellPosition::StrictNE,
        (Greater, Greater) => CellPosition::StrictSE,
        (Less, Less) => CellPosition::StrictNW,
    })
}

/// Which extremality condition to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtremeKind {
    /// Every other cell weakly NE of `c` is zero.
    WeakNE,
    /// Every other cell strictly NE of `c` is zero.
    StrictNE,
    /// Every other cell strictly SE of `c` is zero.
    StrictSE,
    /// Every other cell weakly SE of `c` is zero.
    WeakSE,
}

impl FishburnMatrix {
    /// Nonzero cells `c` such that no other nonzero cell lies in the region
    /// named by `kind`, relative to `c`. Row-major order.
    pub fn extreme_cells(&self, kind: ExtremeKind) -> Vec<Cell> {
        let cells = self.nonzero_cells();
        cells
            .iter()
            .copied()
            .filter(|&c| {
                cells.iter().all(|&d| {
                    // position of d relative to c
                    let pos = cell_position(d, c).expect("nonzero cells are on or above the diagonal");
                    let blocked = match kind {
                        ExtremeKind::WeakNE => pos.is_weakly(Quadrant::NE),
                        ExtremeKind::StrictNE => pos.is_strictly(Quadrant::NE),
                        ExtremeKind::StrictSE => pos.is_strictly(Quadrant::SE),
                        ExtremeKind::WeakSE => pos.is_weakly(Quadrant::SE),
                    };
                    !blocked
                })
            })
            .collect()
    }

    /// Total weight of the extreme cells of the given kind.
    pub fn extreme_weight(&self, kind: ExtremeKind) -> u32 {
        self.extreme_cells(kind).iter().map(|&c| self.get(c)).sum()
    }
}
