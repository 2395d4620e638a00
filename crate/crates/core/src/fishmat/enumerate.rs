//! Exhaustive generation of Fishburn matrices of a given weight.
//!
//! Primitive matrices are generated by depth-first valid-extension search
//! from `[1]` (children in lexicographic code order, pruned by weight), and
//! each primitive matrix is then inflated in every way that reaches the
//! target weight (inflation vectors in colexicographic order). Every matrix
//! is produced exactly once.

use rayon::prelude::*;

use super::{CellPosition, ExtensionCode, FishburnMatrix, Inflation};

/// Optional filter on pairs of nonzero cells.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Avoid {
    #[default]
    None,
    /// No two nonzero cells in strictly NW position ((2+2, N)-free orders).
    StrictNW,
    /// No two nonzero cells in strictly SW position ((2+2, 3+1)-free orders).
    StrictSW,
}

impl Avoid {
    pub fn admits(self, m: &FishburnMatrix) -> bool {
        match self {
            Avoid::None => true,
            Avoid::StrictNW => !m.has_pair_in(CellPosition::StrictNW),
            Avoid::StrictSW => !m.has_pair_in(CellPosition::StrictSW),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct EnumOptions {
    pub primitive_only: bool,
    pub avoid: Avoid,
}

impl EnumOptions {
    pub fn primitive() -> Self {
        EnumOptions {
            primitive_only: true,
            ..Default::default()
        }
    }

    pub fn avoiding(avoid: Avoid) -> Self {
        EnumOptions {
            avoid,
            ..Default::default()
        }
    }
}

/// Streams every Fishburn matrix of weight `n` satisfying `options`.
pub fn enumerate_matrices(n: u32, options: EnumOptions) -> MatrixStream {
    MatrixStream::new(n, options)
}

/// The same sequence as [`enumerate_matrices`], with the inflations of the
/// primitive matrices spread over `jobs` worker threads. Results are
/// gathered in primitive order, so the output does not depend on `jobs`.
pub fn enumerate_matrices_parallel(n: u32, options: EnumOptions, jobs: usize) -> Vec<FishburnMatrix> {
    let prims: Vec<FishburnMatrix> = PrimitiveDfs::new(n)
        .filter(|p| options.avoid.admits(p) && (!options.primitive_only || p.weight() == n))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let chunks: Vec<Vec<FishburnMatrix>> =
        pool.install(|| prims.par_iter().map(|p| inflations(p, n).collect()).collect());
    chunks.into_iter().flatten().collect()
}

/// All primitive matrices of weight at most `max_weight`, in depth-first
/// extension order.
pub fn primitive_matrices(max_weight: u32) -> Vec<FishburnMatrix> {
    PrimitiveDfs::new(max_weight).collect()
}

/// All primitive matrices of dimension `k`, generated level by level from
/// `[1]` through every valid extension.
pub fn primitive_matrices_of_dim(k: usize) -> Vec<FishburnMatrix> {
    if k == 0 {
        return Vec::new();
    }
    let mut level = vec![FishburnMatrix::single(1)];
    for _ in 1..k {
        level = level
            .iter()
            .flat_map(|p| {
                ExtensionCode::all_valid(p.last_column_weight() as usize)
                    .into_iter()
                    .map(move |c| p.extend(&c).expect("valid code on a primitive matrix"))
            })
            .collect();
    }
    level
}

struct PrimitiveDfs {
    max_weight: u32,
    stack: Vec<FishburnMatrix>,
}

impl PrimitiveDfs {
    fn new(max_weight: u32) -> Self {
        let stack = if max_weight >= 1 {
            vec![FishburnMatrix::single(1)]
        } else {
            Vec::new()
        };
        PrimitiveDfs { max_weight, stack }
    }
}

impl Iterator for PrimitiveDfs {
    type Item = FishburnMatrix;

    fn next(&mut self) -> Option<FishburnMatrix> {
        let p = self.stack.pop()?;
        // every extension adds at least the new corner cell
        if p.weight() < self.max_weight {
            let codes = ExtensionCode::all_valid(p.last_column_weight() as usize);
            for code in codes.iter().rev() {
                let child = p.extend(code).expect("valid code on a primitive matrix");
                if child.weight() <= self.max_weight {
                    self.stack.push(child);
                }
            }
        }
        Some(p)
    }
}

/// Iterator over the matrices of one weight; see [`enumerate_matrices`].
pub struct MatrixStream {
    n: u32,
    options: EnumOptions,
    primitives: PrimitiveDfs,
    current: Option<(FishburnMatrix, Compositions)>,
}

impl MatrixStream {
    fn new(n: u32, options: EnumOptions) -> Self {
        MatrixStream {
            n,
            options,
            primitives: PrimitiveDfs::new(n),
            current: None,
        }
    }
}

impl Iterator for MatrixStream {
    type Item = FishburnMatrix;

    fn next(&mut self) -> Option<FishburnMatrix> {
        loop {
            if let Some((p, comps)) = &mut self.current {
                if let Some(values) = comps.next() {
                    return Some(inflate_with(p, &values));
                }
                self.current = None;
            }
            let p = self.primitives.next()?;
            if !self.options.avoid.admits(&p) {
                continue;
            }
            if self.options.primitive_only && p.weight() != self.n {
                continue;
            }
            let parts = p.nonzero_cells().len();
            self.current = Some((p, Compositions::new(self.n, parts)));
        }
    }
}

/// All inflations of primitive `p` with total weight `n`, colexicographic in
/// the row-major vector of cell values.
pub fn inflations(p: &FishburnMatrix, n: u32) -> impl Iterator<Item = FishburnMatrix> + '_ {
    Compositions::new(n, p.nonzero_cells().len()).map(move |v| inflate_with(p, &v))
}

fn inflate_with(p: &FishburnMatrix, values: &[u32]) -> FishburnMatrix {
    let inflation: Inflation = p.nonzero_cells().into_iter().zip(values.iter().copied()).collect();
    p.inflate(&inflation).expect("composition matches the one-cells")
}

/// Compositions of `n` into `parts` positive parts, colexicographic order
/// (compare the last part first). Internally walks the reversed vector in
/// lexicographic order.
struct Compositions {
    rev: Option<Vec<u32>>,
}

impl Compositions {
    fn new(n: u32, parts: usize) -> Self {
        let rev = if parts == 0 || (parts as u32) > n {
            None
        } else {
            let mut r = vec![1; parts];
            r[parts - 1] = n - (parts as u32 - 1);
            Some(r)
        };
        Compositions { rev }
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let r = self.rev.as_mut()?;
        let out: Vec<u32> = r.iter().rev().copied().collect();
        let c = r.len();
        // rightmost position that can grow while the suffix stays positive
        let mut suffix: u32 = r[c - 1];
        let mut advanced = false;
        for i in (0..c.saturating_sub(1)).rev() {
            let slots = (c - 1 - i) as u32;
            if suffix > slots {
                r[i] += 1;
                let rest = suffix - 1;
                for x in r.iter_mut().skip(i + 1) {
                    *x = 1;
                }
                r[c - 1] = rest - (slots - 1);
                advanced = true;
                break;
            }
            suffix += r[i];
        }
        if !advanced {
            self.rev = None;
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fishmat::tests::m;
    use std::collections::BTreeSet;

    #[test]
    fn compositions_in_colex_order() {
        let all: Vec<Vec<u32>> = Compositions::new(5, 3).collect();
        assert_eq!(all.len(), 6); // C(4,2)
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        assert_eq!(all, sorted);
        assert!(all
            .iter()
            .all(|v| v.iter().sum::<u32>() == 5 && v.iter().all(|&x| x >= 1)));
        assert_eq!(Compositions::new(3, 1).collect::<Vec<_>>(), vec![vec![3]]);
        assert_eq!(Compositions::new(2, 3).count(), 0);
    }

    /// Independent oracle: every upper-triangular filling of weight n in a
    /// k x k matrix, kept if it passes `validate`.
    fn brute_matrices(n: u32) -> BTreeSet<FishburnMatrix> {
        let mut out = BTreeSet::new();
        for k in 1..=n as usize {
            let cells: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
            let mut vals = vec![0u32; cells.len()];
            fill(n, 0, &cells, &mut vals, k, &mut out);
        }
        out
    }

    fn fill(
        left: u32,
        idx: usize,
        cells: &[(usize, usize)],
        vals: &mut Vec<u32>,
        k: usize,
        out: &mut BTreeSet<FishburnMatrix>,
    ) {
        if idx == cells.len() {
            if left == 0 {
                let mut rows = vec![vec![0; k]; k];
                for (&(i, j), &v) in cells.iter().zip(vals.iter()) {
                    rows[i][j] = v;
                }
                if let Ok(mm) = FishburnMatrix::validate(rows) {
                    out.insert(mm);
                }
            }
            return;
        }
        for v in 0..=left {
            vals[idx] = v;
            fill(left - v, idx + 1, cells, vals, k, out);
        }
        vals[idx] = 0;
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(
            enumerate_matrices(1, EnumOptions::default()).collect::<Vec<_>>(),
            vec![FishburnMatrix::single(1)]
        );
        assert_eq!(enumerate_matrices(3, EnumOptions::default()).count(), 5);
        let prim: BTreeSet<_> = enumerate_matrices(3, EnumOptions::primitive()).collect();
        assert_eq!(prim, [m(&[&[1, 1], &[0, 1]]), FishburnMatrix::identity(3)].into());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=6 {
            let listed: Vec<_> = enumerate_matrices(n, EnumOptions::default()).collect();
            let set: BTreeSet<_> = listed.iter().cloned().collect();
            assert_eq!(set.len(), listed.len(), "duplicates at weight {n}");
            assert_eq!(set, brute_matrices(n), "weight {n}");
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let a: Vec<_> = enumerate_matrices(6, EnumOptions::default()).collect();
        let b: Vec<_> = enumerate_matrices(6, EnumOptions::default()).collect();
        assert_eq!(a, b);
        for jobs in [1, 3] {
            assert_eq!(enumerate_matrices_parallel(6, EnumOptions::default(), jobs), a);
            let opts = EnumOptions::avoiding(Avoid::StrictSW);
            assert_eq!(
                enumerate_matrices_parallel(6, opts, jobs),
                enumerate_matrices(6, opts).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn avoid_filters() {
        // Catalan numbers for both restrictions
        for (n, cat) in [(1, 1), (2, 2), (3, 5), (4, 14), (5, 42)] {
            for avoid in [Avoid::StrictNW, Avoid::StrictSW] {
                assert_eq!(enumerate_matrices(n, EnumOptions::avoiding(avoid)).count(), cat);
            }
        }
    }

    #[test]
    fn primitive_levels_match_dfs() {
        // every primitive matrix of dimension k has weight at most k(k+1)/2
        for k in 1..=4 {
            let level: BTreeSet<_> = primitive_matrices_of_dim(k).into_iter().collect();
            let max_w = (k * (k + 1) / 2) as u32;
            let dfs: BTreeSet<_> = primitive_matrices(max_w).into_iter().filter(|p| p.dim() == k).collect();
            assert_eq!(level, dfs);
        }
        assert_eq!(primitive_matrices_of_dim(3).len(), 10);
    }

    #[test]
    fn inflations_of_identity() {
        let id = FishburnMatrix::identity(2);
        let all: Vec<_> = inflations(&id, 4).collect();
        assert_eq!(
            all,
            vec![m(&[&[3, 0], &[0, 1]]), m(&[&[2, 0], &[0, 2]]), m(&[&[1, 0], &[0, 3]])]
        );
    }
}
