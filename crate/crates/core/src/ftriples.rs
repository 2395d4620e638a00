//! Fishburn triples `(T, S, R)`, the F1/F2 triples of an interval order,
//! and the involution `phi` on Fishburn matrices.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::fishmat::{cell_position, matrix_to_order, Cell, CellPosition, FishburnMatrix, Quadrant};
use crate::relcore::{RelStructure, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FTripleError {
    #[error("an F-triple has 3 components, found {0}")]
    WrongArity(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `S`, `R` and `T ∪ R` are partial orders.
    Fa,
    /// Distinct elements are comparable by exactly one of `T`, `S`, `R`.
    Fb,
    /// `xSy` and `yRz` imply `xRz`.
    C1c,
    /// `xSy` and `zRy` imply `zRx`.
    C1cStar,
    /// No `xTy, xTz, yRz` and no `yTx, zTx, yRz`.
    C2c,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Fa => "Fa",
            Axiom::Fb => "Fb",
            Axiom::C1c => "C1c",
            Axiom::C1cStar => "C1c*",
            Axiom::C2c => "C2c",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom {} violated at {:?}", self.axiom, self.witness)
    }
}

/// The first axiom violated by `t`, checked in the order Fa, Fb, C1c, C1c*,
/// C2c. The second form of C2c in the literature swaps the roles of `y`
/// and `z` in `yRz`; the two forms forbid the same structures.
pub fn check_f_triple(t: &RelStructure) -> Result<Option<Violation>, FTripleError> {
    if t.arity() != 3 {
        return Err(FTripleError::WrongArity(t.arity()));
    }
    let (tt, s, r) = (t.component(0), t.component(1), t.component(2));
    let n = t.n();
    let fail = |axiom, witness: &[usize]| {
        Ok(Some(Violation {
            axiom,
            witness: witness.to_vec(),
        }))
    };

    for rel in [s, r, &tt.union(r)] {
        if let Some((x, y, z)) = rel.transitivity_violation() {
            return fail(Axiom::Fa, &[x, y, z]);
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            let hits = [tt, s, r].iter().filter(|rel| rel.comparable(x, y)).count();
            if hits != 1 {
                return fail(Axiom::Fb, &[x, y]);
            }
        }
    }
    for (x, y) in s.pairs() {
        for z in 0..n {
            if r.has(y, z) && !r.has(x, z) {
                return fail(Axiom::C1c, &[x, y, z]);
            }
        }
    }
    for (x, y) in s.pairs() {
        for z in 0..n {
            if r.has(z, y) && !r.has(z, x) {
                return fail(Axiom::C1cStar, &[x, y, z]);
            }
        }
    }
    for x in 0..n {
        for (y, z) in r.pairs() {
            if x == y || x == z {
                continue;
            }
            if (tt.has(x, y) && tt.has(x, z)) || (tt.has(y, x) && tt.has(z, x)) {
                return fail(Axiom::C2c, &[x, y, z]);
            }
        }
    }
    Ok(None)
}

pub fn is_f_triple(t: &RelStructure) -> Result<bool, FTripleError> {
    check_f_triple(t).map(|v| v.is_none())
}

/// An F-triple together with the cell of the Fishburn matrix of `R` that
/// represents each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTriple {
    pub structure: RelStructure,
    pub cells: Vec<Cell>,
}

impl FTriple {
    pub fn t(&self) -> &Relation {
        self.structure.component(0)
    }

    pub fn s(&self) -> &Relation {
        self.structure.component(1)
    }

    pub fn r(&self) -> &Relation {
        self.structure.component(2)
    }

    pub fn n(&self) -> usize {
        self.structure.n()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TripleStats {
    pub max_t: usize,
    pub max_s: usize,
    pub max_r: usize,
    pub min_t: usize,
    pub min_s: usize,
    pub min_r: usize,
}

pub fn triple_stats(t: &FTriple) -> TripleStats {
    TripleStats {
        max_t: t.t().mmax(),
        max_s: t.s().mmax(),
        max_r: t.r().mmax(),
        min_t: t.t().mmin(),
        min_s: t.s().mmin(),
        min_r: t.r().mmin(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    One,
    Two,
}

/// Elements inside one cell form a chain in their creation order; for the
/// F1-triple the chain is in `S`, for the F2-triple in `T`.
fn build(m: &FishburnMatrix, kind: Kind, reverse_chains: bool) -> FTriple {
    let io = matrix_to_order(m);
    let cells = io.cells;
    let n = cells.len();
    let pos = |a: usize, b: usize| cell_position(cells[a], cells[b]).expect("cells of a valid matrix");
    let within = |a: usize, b: usize| cells[a] == cells[b] && ((a < b) != reverse_chains);
    let t = Relation::from_fn(n, |a, b| match kind {
        Kind::One => pos(a, b) == CellPosition::StrictNW,
        Kind::Two => pos(a, b).is_weakly(Quadrant::NW) || within(a, b),
    });
    let s = Relation::from_fn(n, |a, b| match kind {
        Kind::One => pos(a, b).is_weakly(Quadrant::SW) || within(a, b),
        Kind::Two => pos(a, b) == CellPosition::StrictSW,
    });
    FTriple {
        structure: RelStructure::new(n, vec![t, s, io.order]).expect("same ground set"),
        cells,
    }
}

/// The F1-triple of the interval order of `m`.
pub fn f1_triple(m: &FishburnMatrix) -> FTriple {
    build(m, Kind::One, false)
}

/// The F2-triple of the interval order of `m`.
pub fn f2_triple(m: &FishburnMatrix) -> FTriple {
    build(m, Kind::Two, false)
}

/// `(T, S, R) -> (T^-1, S, R^-1)`. The matrix of `R^-1` is the
/// anti-diagonal transpose of the matrix of `R`, and the cell map follows.
pub fn trivial_involution(t: &FTriple) -> FTriple {
    let k = t.cells.iter().map(|c| c.col).max().unwrap_or(0);
    let comps = vec![t.t().inverse(), t.s().clone(), t.r().inverse()];
    FTriple {
        structure: RelStructure::new(t.n(), comps).expect("same ground set"),
        cells: t
            .cells
            .iter()
            .map(|c| Cell::new(k + 1 - c.col, k + 1 - c.row))
            .collect(),
    }
}

/// The involution on Fishburn matrices: reverse every extension code of the
/// primitive support, then inflate each column with its values in reverse
/// top-to-bottom order.
pub fn phi(m: &FishburnMatrix) -> FishburnMatrix {
    let (p, values) = m.deflate();
    let codes: Vec<_> = p
        .code_sequence()
        .expect("deflation is primitive")
        .iter()
        .map(|c| c.reversed())
        .collect();
    let q = FishburnMatrix::from_code_sequence(&codes).expect("reversed codes stay valid");

    let mut by_column: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for (c, v) in &values {
        by_column.entry(c.col).or_default().push(*v);
    }
    let mut inflation = BTreeMap::new();
    for (j, vals) in by_column {
        let target = q.column_cells(j);
        debug_assert_eq!(target.len(), vals.len());
        // values are row-ordered within a column since Cell orders by row
        for (c, v) in target.into_iter().zip(vals.into_iter().rev()) {
            inflation.insert(c, v);
        }
    }
    q.inflate(&inflation).expect("column weights preserved")
}
