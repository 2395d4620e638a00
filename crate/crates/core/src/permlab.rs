//! Permutations avoiding the bivincular pattern `i+1 = j < k`,
//! `pi_i + 1 = pi_k < pi_j`, and the corner statistics compared against
//! Fishburn matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::fishmat::{enumerate_matrices, EnumOptions, ExtremeKind};

/// Largest size enumerated by the conjecture reports.
pub const PAT2_BOUND: usize = 9;
pub const PAT1_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a permutation of 1..={0}")]
    NotPermutation(usize),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
    #[error("n = {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
}

/// One-line notation, values `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n || seen[v] {
                return Err(PermError::NotPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation(inv)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| PermError::Parse(s.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Permutation::new(values)
    }
}

/// True iff there are no positions `i + 1 = j < k` with
/// `pi_i + 1 = pi_k < pi_j`.
pub fn avoids_bivincular(p: &Permutation) -> bool {
    let v = p.values();
    // k is determined by the value pi_i + 1
    let pos = p.inverse();
    (0..v.len().saturating_sub(1)).all(|i| {
        let target = v[i] + 1;
        if target > v.len() {
            return true;
        }
        let k = pos.values()[target - 1] - 1;
        !(k > i + 1 && target < v[i + 1])
    })
}

/// All permutations of size `n` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Permutation> {
    let mut next = Some((1..=n).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut w = cur.clone();
        // standard next-permutation step
        if let Some(i) = (0..w.len().saturating_sub(1)).rev().find(|&i| w[i] < w[i + 1]) {
            let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).expect("exists");
            w.swap(i, j);
            w[i + 1..].reverse();
            next = Some(w);
        }
        Some(Permutation(cur))
    })
}

/// Permutations of size `n` avoiding the pattern, lexicographic.
pub fn avoiders(n: usize) -> impl Iterator<Item = Permutation> {
    permutations(n).filter(avoids_bivincular)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CornerStats {
    pub lr_max: usize,
    pub lr_min: usize,
    pub rl_max: usize,
    pub rl_min: usize,
}

fn records(values: impl Iterator<Item = usize>, better: impl Fn(usize, usize) -> bool) -> usize {
    let mut best: Option<usize> = None;
    let mut count = 0;
    for v in values {
        if best.is_none_or(|b| better(v, b)) {
            best = Some(v);
            count += 1;
        }
    }
    count
}

pub fn corner_stats(p: &Permutation) -> CornerStats {
    let v = p.values();
    CornerStats {
        lr_max: records(v.iter().copied(), |a, b| a > b),
        lr_min: records(v.iter().copied(), |a, b| a < b),
        rl_max: records(v.iter().rev().copied(), |a, b| a > b),
        rl_min: records(v.iter().rev().copied(), |a, b| a < b),
    }
}

/// Joint distribution of `(LRmax, RLmax)` over the avoiders of size `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pat2Report {
    pub n: usize,
    pub total: usize,
    pub table: BTreeMap<(usize, usize), usize>,
    pub symmetric: bool,
    /// Cells `(a, b)` whose count differs from `(b, a)`.
    pub asymmetric_cells: Vec<(usize, usize)>,
}

pub fn conjecture_pat2(n: usize) -> Result<Pat2Report, PermError> {
    if n > PAT2_BOUND {
        return Err(PermError::BoundExceeded { n, bound: PAT2_BOUND });
    }
    let mut table = BTreeMap::new();
    let mut total = 0;
    for p in avoiders(n) {
        let s = corner_stats(&p);
        *table.entry((s.lr_max, s.rl_max)).or_insert(0) += 1;
        total += 1;
    }
    let asymmetric_cells: Vec<_> = table
        .iter()
        .filter(|(&(a, b), &c)| table.get(&(b, a)).copied().unwrap_or(0) != c)
        .map(|(&k, _)| k)
        .collect();
    Ok(Pat2Report {
        n,
        total,
        symmetric: asymmetric_cells.is_empty(),
        table,
        asymmetric_cells,
    })
}

/// Compares the multiset of `(LRmax, RLmin, RLmax, LRmin)` over avoiders
/// with the multiset of (first-row weight, last-column weight, number of
/// wNE-cells, number of positive diagonal cells) over matrices of weight
/// `n`. Equality is necessary for a bijection carrying one quadruple to the
/// other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pat1Report {
    pub n: usize,
    pub permutations: BTreeMap<(usize, usize, usize, usize), usize>,
    pub matrices: BTreeMap<(usize, usize, usize, usize), usize>,
    pub multisets_equal: bool,
    pub closed_under_inverse: bool,
}

pub fn conjecture_pat1_necessary(n: usize) -> Result<Pat1Report, PermError> {
    if n > PAT1_BOUND {
        return Err(PermError::BoundExceeded { n, bound: PAT1_BOUND });
    }
    let mut perms = BTreeMap::new();
    let mut closed = true;
    for p in avoiders(n) {
        let s = corner_stats(&p);
        *perms.entry((s.lr_max, s.rl_min, s.rl_max, s.lr_min)).or_insert(0) += 1;
        closed &= avoids_bivincular(&p.inverse());
    }
    let mut mats = BTreeMap::new();
    if n > 0 {
        for m in enumerate_matrices(n as u32, EnumOptions::default()) {
            let key = (
                m.first_row_weight() as usize,
                m.last_column_weight() as usize,
                m.extreme_cells(ExtremeKind::WeakNE).len(),
                m.positive_diagonal_cells(),
            );
            *mats.entry(key).or_insert(0) += 1;
        }
    } else {
        // the empty permutation against the empty matrix
        mats.insert((0, 0, 0, 0), 1);
    }
    Ok(Pat1Report {
        n,
        multisets_equal: perms == mats,
        permutations: perms,
        matrices: mats,
        closed_under_inverse: closed,
    })
}
