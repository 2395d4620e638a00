//! Conversion between Fishburn matrices and interval orders.

use std::collections::BTreeSet;

use super::{Cell, FishburnMatrix, MatrixError};
use crate::relcore::{PatternId, Relation};

/// An interval order together with the cell representing each element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalOrder {
    pub order: Relation,
    pub cells: Vec<Cell>,
}

/// Expands a matrix into its interval order: one element per unit of weight,
/// numbered cell by cell in row-major order, with `x' < x` iff the column of
/// `x'` is strictly less than the row of `x`.
pub fn matrix_to_order(m: &FishburnMatrix) -> IntervalOrder {
    let cells: Vec<Cell> = m
        .nonzero_cells()
        .into_iter()
        .flat_map(|c| std::iter::repeat_n(c, m.get(c) as usize))
        .collect();
    let order = Relation::from_fn(cells.len(), |a, b| cells[a].col < cells[b].row);
    IntervalOrder { order, cells }
}

/// Recovers the Fishburn matrix of a (2+2)-free poset from its minimal
/// interval representation.
///
/// Strict down-sets of an interval order are totally ordered by inclusion,
/// as are strict up-sets. The left endpoint of `x` is the rank of its
/// down-set among the distinct down-sets (smallest first) and the right
/// endpoint is the rank of its up-set among the distinct up-sets (largest
/// first).
pub fn order_to_matrix(p: &Relation) -> Result<FishburnMatrix, MatrixError> {
    if !p.is_partial_order() {
        return Err(MatrixError::NotPartialOrder);
    }
    if !p.avoids(PatternId::TwoPlusTwo) {
        return Err(MatrixError::NotIntervalOrder);
    }
    let n = p.n();
    if n == 0 {
        return Err(MatrixError::Empty);
    }
    let down: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| p.has(y, x)).collect()).collect();
    let up: Vec<Vec<usize>> = (0..n).map(|x| (0..n).filter(|&y| p.has(x, y)).collect()).collect();

    // In an interval order, inclusion among down-sets is total, so sorting by
    // size sorts by inclusion.
    let mut downs: Vec<&Vec<usize>> = down.iter().collect::<BTreeSet<_>>().into_iter().collect();
    downs.sort_by_key(|d| d.len());
    let mut ups: Vec<&Vec<usize>> = up.iter().collect::<BTreeSet<_>>().into_iter().collect();
    ups.sort_by_key(|u| std::cmp::Reverse(u.len()));
    debug_assert_eq!(downs.len(), ups.len(), "interval order magnitudes disagree");

    let k = downs.len();
    let mut entries = vec![0u32; k * k];
    for x in 0..n {
        let l = downs
            .iter()
            .position(|d| **d == down[x])
            .expect("own down-set is listed");
        let r = ups.iter().position(|u| **u == up[x]).expect("own up-set is listed");
        entries[l * k + r] += 1;
    }
    FishburnMatrix::validate(entries.chunks(k).map(<[u32]>::to_vec).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fishmat::tests::m;
    use crate::fishmat::{enumerate_matrices, EnumOptions};

    #[test]
    fn matrix_to_order_examples() {
        let one = matrix_to_order(&m(&[&[1]]));
        assert_eq!(one.order, Relation::empty(1));

        let a = matrix_to_order(&m(&[&[1, 1], &[0, 1]]));
        assert_eq!(a.cells, vec![Cell::new(1, 1), Cell::new(1, 2), Cell::new(2, 2)]);
        assert_eq!(a.order.pairs().collect::<Vec<_>>(), vec![(0, 2)]);

        let two = matrix_to_order(&m(&[&[2]]));
        assert_eq!(two.order, Relation::empty(2));
        assert_eq!(two.cells, vec![Cell::new(1, 1); 2]);
    }

    /// Brute-force inverse of `matrix_to_order`: search all matrices of the
    /// poset's weight for one whose order is isomorphic to it.
    fn brute_inverse(p: &Relation) -> FishburnMatrix {
        let target = crate::relcore::canonical_form(&crate::relcore::RelStructure::single(p.clone())).unwrap();
        let hits: Vec<FishburnMatrix> = enumerate_matrices(p.n() as u32, EnumOptions::default())
            .filter(|mm| {
                crate::relcore::canonical_form(&crate::relcore::RelStructure::single(matrix_to_order(mm).order))
                    .unwrap()
                    == target
            })
            .collect();
        assert_eq!(hits.len(), 1);
        hits.into_iter().next().unwrap()
    }

    #[test]
    fn order_to_matrix_examples() {
        let antichain = Relation::empty(3);
        assert_eq!(brute_inverse(&antichain), m(&[&[3]]));
        assert_eq!(order_to_matrix(&antichain).unwrap(), m(&[&[3]]));

        let chain = Relation::chain(3);
        assert_eq!(brute_inverse(&chain), FishburnMatrix::identity(3));
        assert_eq!(order_to_matrix(&chain).unwrap(), FishburnMatrix::identity(3));

        let ab = Relation::from_pairs(3, [(0, 1)]).unwrap();
        assert_eq!(brute_inverse(&ab), m(&[&[1, 1], &[0, 1]]));
        assert_eq!(order_to_matrix(&ab).unwrap(), m(&[&[1, 1], &[0, 1]]));
    }

    #[test]
    fn order_to_matrix_rejects() {
        assert_eq!(
            order_to_matrix(&PatternId::TwoPlusTwo.relation()),
            Err(MatrixError::NotIntervalOrder)
        );
        assert_eq!(
            order_to_matrix(&Relation::from_pairs(3, [(0, 1), (1, 2)]).unwrap()),
            Err(MatrixError::NotPartialOrder)
        );
    }

    #[test]
    fn round_trip_through_orders() {
        for n in 1..=6 {
            for mm in enumerate_matrices(n, EnumOptions::default()) {
                let io = matrix_to_order(&mm);
                assert_eq!(order_to_matrix(&io.order).unwrap(), mm);
                // relabeling the poset must not change its matrix
                let k = io.order.n();
                let rev: Vec<usize> = (0..k).rev().collect();
                assert_eq!(order_to_matrix(&io.order.relabel(&rev)).unwrap(), mm);
            }
        }
    }
}
