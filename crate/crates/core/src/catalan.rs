//! Dyck paths, their tunnels, and the two Catalan-pair encodings.
//!
//! A Dyck path of order `n` is a word of `n` up-steps `U` and `n`
//! right-steps `R` whose every prefix has at least as many `U` as `R`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::relcore::{canonical_form, CanonicalForm, RelStructure, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalanError {
    #[error("invalid Dyck path {0:?}")]
    InvalidPath(String),
    #[error("structure is not a C1-pair")]
    NotC1Pair,
    #[error("no Dyck path of order {0} encodes this C1-pair")]
    NoMatch(usize),
    #[error("k = {k} out of range 1..={n}")]
    OutOfRange { n: u32, k: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Step {
    U,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyckPath {
    steps: Vec<Step>,
}

/// The pair of step positions joined by one tunnel.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tunnel {
    pub up_index: usize,
    pub right_index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyckStats {
    /// Length of the initial run of up-steps.
    pub asc: usize,
    /// Length of the final run of right-steps.
    pub des: usize,
    /// Right-steps ending on the diagonal.
    pub ret: usize,
    /// `UR` factors.
    pub pea: usize,
}

impl DyckPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, CatalanError> {
        let mut height: i64 = 0;
        for &s in &steps {
            height += if s == Step::U { 1 } else { -1 };
            if height < 0 {
                return Err(CatalanError::InvalidPath(render(&steps)));
            }
        }
        if height != 0 {
            return Err(CatalanError::InvalidPath(render(&steps)));
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn order(&self) -> usize {
        self.steps.len() / 2
    }

    /// Each up-step is matched with the first later right-step that brings
    /// the path back to the same level (parenthesis matching). Sorted by
    /// up-step position.
    pub fn tunnels(&self) -> Vec<Tunnel> {
        let mut open = Vec::new();
        let mut out = Vec::with_capacity(self.order());
        for (i, &s) in self.steps.iter().enumerate() {
            match s {
                Step::U => open.push(i),
                Step::R => out.push(Tunnel {
                    up_index: open.pop().expect("valid path"),
                    right_index: i,
                }),
            }
        }
        out.sort();
        out
    }

    pub fn stats(&self) -> DyckStats {
        let asc = self.steps.iter().take_while(|&&s| s == Step::U).count();
        let des = self.steps.iter().rev().take_while(|&&s| s == Step::R).count();
        let mut height = 0i64;
        let mut ret = 0;
        for &s in &self.steps {
            height += if s == Step::U { 1 } else { -1 };
            if s == Step::R && height == 0 {
                ret += 1;
            }
        }
        let pea = self.steps.windows(2).filter(|w| w == &[Step::U, Step::R]).count();
        DyckStats { asc, des, ret, pea }
    }

    /// Number of up-steps preceding the `i`-th right-step (1-indexed).
    fn heights(&self) -> Vec<usize> {
        let mut ups = 0;
        let mut out = Vec::with_capacity(self.order());
        for &s in &self.steps {
            match s {
                Step::U => ups += 1,
                Step::R => out.push(ups),
            }
        }
        out
    }
}

fn render(steps: &[Step]) -> String {
    steps.iter().map(|s| if *s == Step::U { 'U' } else { 'R' }).collect()
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.steps))
    }
}

impl FromStr for DyckPath {
    type Err = CatalanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' => Ok(Step::U),
                'R' => Ok(Step::R),
                _ => Err(CatalanError::InvalidPath(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        DyckPath::new(steps)
    }
}

/// Free functions mirroring the methods, for callers that think in
/// operations rather than types.
pub fn tunnels(p: &DyckPath) -> Vec<Tunnel> {
    p.tunnels()
}

pub fn dyck_stats(p: &DyckPath) -> DyckStats {
    p.stats()
}

/// The C1-pair `(S, R)` on tunnels: `t1 S t2` iff `t1` is nested within
/// `t2`, and `t1 R t2` iff `t1` precedes `t2`. Tunnels are numbered by the
/// position of their up-step.
pub fn c1_of_dyck(p: &DyckPath) -> RelStructure {
    let t = p.tunnels();
    let n = t.len();
    let s = Relation::from_fn(n, |a, b| {
        t[b].up_index < t[a].up_index && t[a].right_index < t[b].right_index
    });
    let r = Relation::from_fn(n, |a, b| t[a].right_index < t[b].up_index);
    RelStructure::new(n, vec![s, r]).expect("same ground set")
}

/// The C2-pair `(T, R)` on `1..=n` (stored as `0..n`): for `i < j`, the unit
/// square with top-right corner `(i, j)` is above the path iff the `i`-th
/// right-step is preceded by fewer than `j` up-steps. Pairs whose square is
/// above go to `R`, the rest to `T`.
pub fn c2_of_dyck(p: &DyckPath) -> RelStructure {
    let h = p.heights();
    let n = h.len();
    // 0-indexed a, b stand for i = a + 1, j = b + 1
    let above = |a: usize, b: usize| h[a] < b + 1;
    let t = Relation::from_fn(n, |a, b| a < b && !above(a, b));
    let r = Relation::from_fn(n, |a, b| a < b && above(a, b));
    RelStructure::new(n, vec![t, r]).expect("same ground set")
}

/// Every Dyck path of order `n`, lexicographic with `U < R`.
pub fn enumerate_dyck(n: usize) -> DyckStream {
    DyckStream {
        n,
        next: Some(vec![Step::U; n].into_iter().chain(vec![Step::R; n]).collect()),
    }
}

pub struct DyckStream {
    n: usize,
    next: Option<Vec<Step>>,
}

impl Iterator for DyckStream {
    type Item = DyckPath;

    fn next(&mut self) -> Option<DyckPath> {
        let cur = self.next.take()?;
        self.next = successor(&cur, self.n);
        Some(DyckPath { steps: cur })
    }
}

/// Lexicographic successor: flip the rightmost `U` that can become `R`,
/// then complete with the smallest valid suffix.
fn successor(w: &[Step], n: usize) -> Option<Vec<Step>> {
    let len = w.len();
    let mut ups_before = vec![0usize; len + 1];
    for i in 0..len {
        ups_before[i + 1] = ups_before[i] + (w[i] == Step::U) as usize;
    }
    for i in (0..len).rev() {
        if w[i] != Step::U {
            continue;
        }
        let ups = ups_before[i];
        let rights = i - ups;
        // turning position i into R needs rights + 1 <= ups
        if rights < ups {
            let mut out = w[..i].to_vec();
            out.push(Step::R);
            let rem_ups = n - ups;
            let rem_rights = n - rights - 1;
            out.extend(std::iter::repeat_n(Step::U, rem_ups));
            out.extend(std::iter::repeat_n(Step::R, rem_rights));
            return Some(out);
        }
    }
    None
}

/// Axioms C1a-C1c checked directly.
pub fn is_c1_pair(pair: &RelStructure) -> bool {
    if pair.arity() != 2 {
        return false;
    }
    let (s, r) = (pair.component(0), pair.component(1));
    let n = pair.n();
    if !s.is_partial_order() || !r.is_partial_order() {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && s.comparable(x, y) == r.comparable(x, y) {
                return false;
            }
        }
    }
    for (x, y) in s.pairs() {
        for z in 0..n {
            if z != x && z != y && r.has(y, z) && !r.has(x, z) {
                return false;
            }
        }
    }
    true
}

/// Axioms C2a-C2c checked directly.
pub fn is_c2_pair(pair: &RelStructure) -> bool {
    if pair.arity() != 2 {
        return false;
    }
    let (t, r) = (pair.component(0), pair.component(1));
    let n = pair.n();
    if !r.is_partial_order() || !t.union(r).is_partial_order() {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && t.comparable(x, y) == r.comparable(x, y) {
                return false;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                // C2c with yRz; the zRy reading is this loop with y, z swapped
                if x == y || y == z || x == z || !r.has(y, z) {
                    continue;
                }
                if (t.has(x, y) && t.has(x, z)) || (t.has(y, x) && t.has(z, x)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Lookup table realizing the bijection from C1-pairs to C2-pairs of one
/// order, through the Dyck path encoded by the C1-pair.
pub struct PsiTable {
    n: usize,
    by_form: HashMap<CanonicalForm, DyckPath>,
}

impl PsiTable {
    pub fn new(n: usize) -> Self {
        let by_form = enumerate_dyck(n)
            .map(|p| (canonical_form(&c1_of_dyck(&p)).expect("order within bound"), p))
            .collect();
        PsiTable { n, by_form }
    }

    /// The Dyck path whose C1-pair is isomorphic to `c1`.
    pub fn path_of(&self, c1: &RelStructure) -> Result<&DyckPath, CatalanError> {
        if c1.n() != self.n || !is_c1_pair(c1) {
            return Err(CatalanError::NotC1Pair);
        }
        let form = canonical_form(c1).map_err(|_| CatalanError::NoMatch(self.n))?;
        self.by_form.get(&form).ok_or(CatalanError::NoMatch(self.n))
    }

    pub fn apply(&self, c1: &RelStructure) -> Result<RelStructure, CatalanError> {
        self.path_of(c1).map(c2_of_dyck)
    }
}

/// One-shot form of [`PsiTable::apply`].
pub fn psi(c1: &RelStructure) -> Result<RelStructure, CatalanError> {
    if !is_c1_pair(c1) {
        return Err(CatalanError::NotC1Pair);
    }
    PsiTable::new(c1.n()).apply(c1)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `N(n, k) = binom(n-1, k-1) binom(n, k-1) / k`.
pub fn narayana(n: u32, k: u32) -> Result<u128, CatalanError> {
    if k < 1 || k > n {
        return Err(CatalanError::OutOfRange { n, k });
    }
    let (n, k) = (n as u64, k as u64);
    Ok(binomial(n - 1, k - 1) * binomial(n, k - 1) / k as u128)
}

/// Paths of order `n` whose initial ascent has length `k`:
/// `k / (2n - k) * binom(2n - k, n)`.
pub fn ballot_count(n: u32, k: u32) -> Result<u128, CatalanError> {
    if k < 1 || k > n {
        return Err(CatalanError::OutOfRange { n, k });
    }
    let (n, k) = (n as u64, k as u64);
    Ok(k as u128 * binomial(2 * n - k, n) / (2 * n - k) as u128)
}

pub fn catalan_number(n: u64) -> u128 {
    binomial(2 * n, n) / (n as u128 + 1)
}

/// `M_n = sum_k binom(n, 2k) C_k`.
pub fn motzkin_number(n: u64) -> u128 {
    (0..=n / 2).map(|k| binomial(n, 2 * k) * catalan_number(k)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> DyckPath {
        s.parse().unwrap()
    }

    fn pairs(r: &Relation) -> Vec<(usize, usize)> {
        r.pairs().collect()
    }

    #[test]
    fn parse_rejects_bad_paths() {
        assert!("RU".parse::<DyckPath>().is_err());
        assert!("UUR".parse::<DyckPath>().is_err());
        assert!("UXR".parse::<DyckPath>().is_err());
        assert_eq!(p("UURR").to_string(), "UURR");
    }

    #[test]
    fn tunnel_examples() {
        let t = |a, b| Tunnel {
            up_index: a,
            right_index: b,
        };
        assert_eq!(p("UR").tunnels(), vec![t(0, 1)]);
        assert_eq!(p("UURR").tunnels(), vec![t(0, 3), t(1, 2)]);
        assert_eq!(p("URUR").tunnels(), vec![t(0, 1), t(2, 3)]);
    }

    /// Geometric oracle for tunnels: the diagonal segment from the middle of
    /// up-step u to the middle of right-step r must have its interior
    /// strictly below the path, i.e. the path stays strictly above the
    /// segment's level between the two steps.
    #[test]
    fn tunnels_match_geometric_definition() {
        for n in 0..=6 {
            for path in enumerate_dyck(n) {
                let s = path.steps();
                // level after each step; a tunnel starting at up-step u sits
                // at level h(u-1) + 1/2 and ends at the first right-step
                // returning to level h(u-1)
                let mut level = vec![0i64; s.len() + 1];
                for i in 0..s.len() {
                    level[i + 1] = level[i] + if s[i] == Step::U { 1 } else { -1 };
                }
                let mut expected = Vec::new();
                for u in 0..s.len() {
                    if s[u] == Step::U {
                        let r = (u + 1..s.len()).find(|&r| level[r + 1] == level[u]).unwrap();
                        assert!((u + 1..=r).all(|i| level[i] > level[u]));
                        expected.push(Tunnel {
                            up_index: u,
                            right_index: r,
                        });
                    }
                }
                assert_eq!(path.tunnels(), expected);
            }
        }
    }

    #[test]
    fn c1_examples() {
        let full = c1_of_dyck(&p("UUURRR"));
        // tunnel 0 is outermost; inner tunnels are nested in outer ones
        assert_eq!(pairs(full.component(0)), vec![(1, 0), (2, 0), (2, 1)]);
        assert!(full.component(1).is_empty());

        let stair = c1_of_dyck(&p("URURUR"));
        assert!(stair.component(0).is_empty());
        assert_eq!(stair.component(1), &Relation::chain(3));

        let mixed = c1_of_dyck(&p("UURRUR"));
        assert_eq!(pairs(mixed.component(0)), vec![(1, 0)]);
        assert_eq!(pairs(mixed.component(1)), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn c2_examples() {
        let full = c2_of_dyck(&p("UUURRR"));
        assert_eq!(full.component(0), &Relation::chain(3));
        assert!(full.component(1).is_empty());

        let stair = c2_of_dyck(&p("URURUR"));
        assert!(stair.component(0).is_empty());
        assert_eq!(stair.component(1), &Relation::chain(3));

        // heights of right-steps are 2, 2, 3: s_{1,2} and s_{2,3} below? s_{1,2}:
        // h1 = 2 >= 2 so below; s_{1,3}: 2 < 3 above; s_{2,3}: 2 < 3 above
        let mixed = c2_of_dyck(&p("UURRUR"));
        assert_eq!(pairs(mixed.component(0)), vec![(0, 1)]);
        assert_eq!(pairs(mixed.component(1)), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn stats_examples() {
        for n in 1..6 {
            let tall = DyckPath::new([vec![Step::U; n], vec![Step::R; n]].concat()).unwrap();
            assert_eq!(
                tall.stats(),
                DyckStats {
                    asc: n,
                    des: n,
                    ret: 1,
                    pea: 1
                }
            );
            let stair = DyckPath::new([Step::U, Step::R].repeat(n)).unwrap();
            assert_eq!(
                stair.stats(),
                DyckStats {
                    asc: 1,
                    des: 1,
                    ret: n,
                    pea: n
                }
            );
        }
        assert_eq!(
            p("UURRUR").stats(),
            DyckStats {
                asc: 2,
                des: 1,
                ret: 2,
                pea: 2
            }
        );
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_dyck(0).collect::<Vec<_>>(), vec![DyckPath { steps: vec![] }]);
        for n in 0..=8 {
            let all: Vec<_> = enumerate_dyck(n).collect();
            assert_eq!(all.len() as u128, catalan_number(n as u64));
            assert!(all.windows(2).all(|w| w[0] < w[1]), "lexicographic at {n}");
        }
        assert_eq!(enumerate_dyck(5).count(), 42);
    }

    #[test]
    fn closed_form_numbers() {
        assert_eq!(narayana(3, 2), Ok(3));
        assert_eq!(ballot_count(3, 1), Ok(2));
        assert_eq!(narayana(3, 0), Err(CatalanError::OutOfRange { n: 3, k: 0 }));
        assert_eq!(ballot_count(2, 3), Err(CatalanError::OutOfRange { n: 2, k: 3 }));
        for n in 1..=10 {
            for k in 1..=n {
                assert_eq!(narayana(n, k), narayana(n, n - k + 1));
            }
        }
        let cats: Vec<u128> = (0..9).map(catalan_number).collect();
        assert_eq!(cats, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        let motz: Vec<u128> = (0..8).map(motzkin_number).collect();
        assert_eq!(motz, vec![1, 1, 2, 4, 9, 21, 51, 127]);
    }

    #[test]
    fn encodings_satisfy_axioms() {
        for n in 0..=6 {
            for path in enumerate_dyck(n) {
                assert!(is_c1_pair(&c1_of_dyck(&path)), "{path}");
                assert!(is_c2_pair(&c2_of_dyck(&path)), "{path}");
            }
        }
    }

    #[test]
    fn axiom_checkers_reject() {
        // both relations hold the same pair
        let r = Relation::from_pairs(2, [(0, 1)]).unwrap();
        let both = RelStructure::new(2, vec![r.clone(), r.clone()]).unwrap();
        assert!(!is_c1_pair(&both));
        assert!(!is_c2_pair(&both));
        // C2c: xTy, xTz, yRz
        let t = Relation::from_pairs(3, [(0, 1), (0, 2)]).unwrap();
        let r = Relation::from_pairs(3, [(1, 2)]).unwrap();
        assert!(!is_c2_pair(&RelStructure::new(3, vec![t, r]).unwrap()));
        // C1c: xSy, yRz but zRx
        let s = Relation::from_pairs(3, [(0, 1)]).unwrap();
        let r = Relation::from_pairs(3, [(1, 2), (2, 0)]).unwrap();
        assert!(!is_c1_pair(&RelStructure::new(3, vec![s, r]).unwrap()));
    }

    #[test]
    fn psi_examples() {
        let stair = c1_of_dyck(&p("URURUR"));
        assert_eq!(psi(&stair).unwrap(), c2_of_dyck(&p("URURUR")));
        let full = c1_of_dyck(&p("UUURRR"));
        let image = psi(&full).unwrap();
        assert_eq!(image.component(0), &Relation::chain(3));
        assert!(image.component(1).is_empty());

        let bad = RelStructure::new(2, vec![Relation::empty(2), Relation::empty(2)]).unwrap();
        assert_eq!(psi(&bad), Err(CatalanError::NotC1Pair));

        // relabeled input still resolves
        let relabeled = c1_of_dyck(&p("UURRUR")).relabel(&[2, 0, 1]);
        assert_eq!(psi(&relabeled).unwrap(), c2_of_dyck(&p("UURRUR")));
    }

    #[test]
    fn psi_preserves_maxima_at_order_four() {
        let table = PsiTable::new(4);
        let mut seen = 0;
        for path in enumerate_dyck(4) {
            let c1 = c1_of_dyck(&path);
            let c2 = table.apply(&c1).unwrap();
            assert_eq!(c1.component(0).mmax(), c2.component(0).mmax());
            assert_eq!(c1.component(1).mmax(), c2.component(1).mmax());
            seen += 1;
        }
        assert_eq!(seen, 14);
    }
}
