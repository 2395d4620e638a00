//! Finite binary relations and relational structures.
//!
//! Ground sets are `0..n`. A [`Relation`] is an irreflexive set of ordered
//! pairs stored as an `n*n` bitset; a [`RelStructure`] is an ordered tuple of
//! relations on the same ground set. Containment follows the induced-embedding
//! definition: an injection that preserves *and reflects* every component.

use std::fmt;

use thiserror::Error;

/// Default upper bound on the order accepted by [`canonical_form`].
pub const CANONICAL_FORM_BOUND: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelError {
    #[error("element {index} out of range for ground set of size {n}")]
    OutOfRange { index: usize, n: usize },
    #[error("reflexive pair ({0}, {0}) is not allowed")]
    Reflexive(usize),
    #[error("component {component} has ground set size {found}, expected {expected}")]
    SizeMismatch {
        component: usize,
        expected: usize,
        found: usize,
    },
    #[error("component count mismatch: host has {host}, pattern has {pattern}")]
    ComponentMismatch { host: usize, pattern: usize },
    #[error("structure of order {n} exceeds canonical-form bound {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("malformed relation text: {0}")]
    Parse(String),
}

/// An irreflexive binary relation on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    n: usize,
    bits: Vec<u64>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            n,
            bits: vec![0; (n * n).div_ceil(64)],
        }
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, RelError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut r = Relation::empty(n);
        for (a, b) in pairs {
            r.insert(a, b)?;
        }
        Ok(r)
    }

    /// Builds a relation from a predicate evaluated on every ordered pair of
    /// distinct elements.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut r = Relation::empty(n);
        for a in 0..n {
            for b in 0..n {
                if a != b && f(a, b) {
                    r.set(a, b);
                }
            }
        }
        r
    }

    /// The strict chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Relation::from_fn(n, |a, b| a < b)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, a: usize, b: usize) -> Result<(), RelError> {
        for index in [a, b] {
            if index >= self.n {
                return Err(RelError::OutOfRange { index, n: self.n });
            }
        }
        if a == b {
            return Err(RelError::Reflexive(a));
        }
        self.set(a, b);
        Ok(())
    }

    #[inline]
    fn set(&mut self, a: usize, b: usize) {
        let k = a * self.n + b;
        self.bits[k / 64] |= 1 << (k % 64);
    }

    #[inline]
    pub fn has(&self, a: usize, b: usize) -> bool {
        let k = a * self.n + b;
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    /// True if `a` and `b` are comparable by this relation.
    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.has(a, b) || self.has(b, a)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Pairs in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.has(a, b))
    }

    pub fn inverse(&self) -> Self {
        Relation::from_fn(self.n, |a, b| self.has(b, a))
    }

    pub fn union(&self, other: &Relation) -> Self {
        assert_eq!(self.n, other.n, "union of relations on different ground sets");
        Relation {
            n: self.n,
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a | b).collect(),
        }
    }

    /// Relabels the ground set: element `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut r = Relation::empty(self.n);
        for (a, b) in self.pairs() {
            r.set(perm[a], perm[b]);
        }
        r
    }

    /// Restriction to `elements`, renumbered in the given order.
    pub fn induced(&self, elements: &[usize]) -> Self {
        Relation::from_fn(elements.len(), |a, b| self.has(elements[a], elements[b]))
    }

    /// First witness `(x, y, z)` with `xRy`, `yRz` but not `xRz`.
    pub fn transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for (x, y) in self.pairs() {
            for z in 0..self.n {
                if self.has(y, z) && !self.has(x, z) {
                    return Some((x, y, z));
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_violation().is_none()
    }

    /// Irreflexivity is a type invariant, so a relation is a partial order
    /// exactly when it is transitive. (A transitive irreflexive relation is
    /// automatically antisymmetric.)
    pub fn is_partial_order(&self) -> bool {
        self.is_transitive()
    }

    /// Elements `x` with no `y` such that `yRx`. Works for any relation.
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| (0..self.n).all(|y| !self.has(y, x))).collect()
    }

    /// Elements `x` with no `y` such that `xRy`.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| (0..self.n).all(|y| !self.has(x, y))).collect()
    }

    pub fn mmin(&self) -> usize {
        self.minimal().len()
    }

    pub fn mmax(&self) -> usize {
        self.maximal().len()
    }

    pub fn out_degree(&self, x: usize) -> usize {
        (0..self.n).filter(|&y| self.has(x, y)).count()
    }

    pub fn in_degree(&self, x: usize) -> usize {
        (0..self.n).filter(|&y| self.has(y, x)).count()
    }

    /// Convenience for single-component containment of a fixed pattern.
    pub fn avoids(&self, pattern: PatternId) -> bool {
        avoids(self, pattern)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({}; ", self.n)?;
        f.debug_set().entries(self.pairs()).finish()?;
        write!(f, ")")
    }
}

/// Minimal and maximal element sets of an arbitrary relation.
pub fn minmax(r: &Relation) -> (Vec<usize>, Vec<usize>) {
    (r.minimal(), r.maximal())
}

/// An ordered tuple of relations sharing one ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelStructure {
    n: usize,
    components: Vec<Relation>,
}

impl RelStructure {
    pub fn new(n: usize, components: Vec<Relation>) -> Result<Self, RelError> {
        for (component, r) in components.iter().enumerate() {
            if r.n != n {
                return Err(RelError::SizeMismatch {
                    component,
                    expected: n,
                    found: r.n,
                });
            }
        }
        Ok(RelStructure { n, components })
    }

    pub fn single(r: Relation) -> Self {
        RelStructure {
            n: r.n,
            components: vec![r],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Relation] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Relation {
        &self.components[i]
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        RelStructure {
            n: self.n,
            components: self.components.iter().map(|r| r.relabel(perm)).collect(),
        }
    }

    /// Parses the text format: a header line `n k`, then `k` blocks, each a
    /// line `m` followed by `m` lines `a b`. Blank lines and `#` comments are
    /// ignored.
    pub fn parse_text(text: &str) -> Result<Self, RelError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let mut next_nums = |want: usize| -> Result<Vec<usize>, RelError> {
            let line = lines
                .next()
                .ok_or_else(|| RelError::Parse("unexpected end of input".into()))?;
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| RelError::Parse(format!("{line:?}: {e}")))?;
            if nums.len() != want {
                return Err(RelError::Parse(format!(
                    "{line:?}: expected {want} integers, found {}",
                    nums.len()
                )));
            }
            Ok(nums)
        };
        let header = next_nums(2)?;
        let (n, k) = (header[0], header[1]);
        let mut components = Vec::with_capacity(k);
        for _ in 0..k {
            let m = next_nums(1)?[0];
            let mut r = Relation::empty(n);
            for _ in 0..m {
                let p = next_nums(2)?;
                r.insert(p[0], p[1])?;
            }
            components.push(r);
        }
        if let Some(extra) = lines.next() {
            return Err(RelError::Parse(format!("trailing input {extra:?}")));
        }
        RelStructure::new(n, components)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.components.len());
        for r in &self.components {
            out.push_str(&format!("{}\n", r.len()));
            for (a, b) in r.pairs() {
                out.push_str(&format!("{a} {b}\n"));
            }
        }
        out
    }
}

/// The three four-element posets used as forbidden patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternId {
    TwoPlusTwo,
    ThreePlusOne,
    N,
}

impl PatternId {
    pub const ALL: [PatternId; 3] = [PatternId::TwoPlusTwo, PatternId::ThreePlusOne, PatternId::N];

    pub fn relation(self) -> Relation {
        let pairs: &[(usize, usize)] = match self {
            // a<b, c<d
            PatternId::TwoPlusTwo => &[(0, 1), (2, 3)],
            // a<b<c, d isolated
            PatternId::ThreePlusOne => &[(0, 1), (1, 2), (0, 2)],
            // u<v, u<y, x<v with u=0, v=1, x=2, y=3
            PatternId::N => &[(0, 1), (0, 3), (2, 1)],
        };
        Relation::from_pairs(4, pairs.iter().copied()).expect("fixed pattern is well formed")
    }

    pub fn structure(self) -> RelStructure {
        RelStructure::single(self.relation())
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternId::TwoPlusTwo => "2+2",
            PatternId::ThreePlusOne => "3+1",
            PatternId::N => "N",
        })
    }
}

/// Finds an induced embedding of `pattern` into `host`, returned as the image
/// of each pattern element.
pub fn find_embedding(host: &RelStructure, pattern: &RelStructure) -> Result<Option<Vec<usize>>, RelError> {
    if host.arity() != pattern.arity() {
        return Err(RelError::ComponentMismatch {
            host: host.arity(),
            pattern: pattern.arity(),
        });
    }
    if pattern.n > host.n {
        return Ok(None);
    }
    let degrees = |s: &RelStructure, x: usize| -> Vec<(usize, usize)> {
        s.components.iter().map(|r| (r.out_degree(x), r.in_degree(x))).collect()
    };
    let host_deg: Vec<_> = (0..host.n).map(|x| degrees(host, x)).collect();
    let pat_deg: Vec<_> = (0..pattern.n).map(|x| degrees(pattern, x)).collect();
    // A host element can only receive a pattern element whose degrees it dominates.
    let candidates: Vec<Vec<usize>> = pat_deg
        .iter()
        .map(|pd| {
            (0..host.n)
                .filter(|&h| {
                    host_deg[h]
                        .iter()
                        .zip(pd)
                        .all(|(&(ho, hi), &(po, pi))| ho >= po && hi >= pi)
                })
                .collect()
        })
        .collect();

    let mut image = Vec::with_capacity(pattern.n);
    let mut used = vec![false; host.n];
    let found = extend_embedding(host, pattern, &candidates, &mut image, &mut used);
    Ok(found.then_some(image))
}

fn extend_embedding(
    host: &RelStructure,
    pattern: &RelStructure,
    candidates: &[Vec<usize>],
    image: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let p = image.len();
    if p == pattern.n {
        return true;
    }
    for &h in &candidates[p] {
        if used[h] {
            continue;
        }
        let consistent = (0..p).all(|q| {
            let hq = image[q];
            pattern
                .components
                .iter()
                .zip(&host.components)
                .all(|(pr, hr)| pr.has(p, q) == hr.has(h, hq) && pr.has(q, p) == hr.has(hq, h))
        });
        if !consistent {
            continue;
        }
        image.push(h);
        used[h] = true;
        if extend_embedding(host, pattern, candidates, image, used) {
            return true;
        }
        used[h] = false;
        image.pop();
    }
    false
}

/// Whether `host` contains `pattern` as an induced substructure.
pub fn contains(host: &RelStructure, pattern: &RelStructure) -> Result<bool, RelError> {
    Ok(find_embedding(host, pattern)?.is_some())
}

/// Whether a single relation avoids one of the fixed four-element posets.
pub fn avoids(host: &Relation, pattern: PatternId) -> bool {
    let host = RelStructure::single(host.clone());
    !contains(&host, &pattern.structure()).expect("single-component structures")
}

/// Canonical encoding of an unlabeled relational structure.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

/// [`canonical_form_bounded`] with the default bound.
pub fn canonical_form(s: &RelStructure) -> Result<CanonicalForm, RelError> {
    canonical_form_bounded(s, CANONICAL_FORM_BOUND)
}

/// Lexicographically least encoding over all relabelings of the ground set.
///
/// The encoding lists positions `0..n` in order; position `p` contributes the
/// in/out degree of its element in every component, followed by the relation
/// bits between `p` and each earlier position. Because position `p` only
/// depends on the elements placed at positions `0..=p`, partial relabelings
/// whose prefix already exceeds the best known prefix are pruned. Swapping two
/// twins (elements related identically to everything else) is an
/// automorphism, so only one representative of each twin class is tried at a
/// given position.
pub fn canonical_form_bounded(s: &RelStructure, bound: usize) -> Result<CanonicalForm, RelError> {
    if s.n > bound {
        return Err(RelError::TooLarge { n: s.n, bound });
    }
    let sig: Vec<Vec<u8>> = (0..s.n)
        .map(|x| {
            s.components
                .iter()
                .flat_map(|r| [r.out_degree(x) as u8, r.in_degree(x) as u8])
                .collect()
        })
        .collect();
    let twins: Vec<Vec<bool>> = (0..s.n)
        .map(|u| (0..s.n).map(|v| u != v && are_twins(s, u, v)).collect())
        .collect();
    let mut search = CanonSearch {
        s,
        sig: &sig,
        twins: &twins,
        best: None,
        order: Vec::with_capacity(s.n),
        used: vec![false; s.n],
        code: Vec::new(),
    };
    search.run();
    let mut out = vec![s.n as u8, s.arity() as u8];
    out.extend(search.best.unwrap_or_default());
    Ok(CanonicalForm(out))
}

fn are_twins(s: &RelStructure, u: usize, v: usize) -> bool {
    s.components.iter().all(|r| {
        r.has(u, v) == r.has(v, u)
            && (0..s.n)
                .filter(|&w| w != u && w != v)
                .all(|w| r.has(u, w) == r.has(v, w) && r.has(w, u) == r.has(w, v))
    })
}

struct CanonSearch<'a> {
    s: &'a RelStructure,
    sig: &'a [Vec<u8>],
    twins: &'a [Vec<bool>],
    best: Option<Vec<u8>>,
    order: Vec<usize>,
    used: Vec<bool>,
    code: Vec<u8>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let p = self.order.len();
        if p == self.s.n {
            if self.best.as_ref().is_none_or(|b| self.code < *b) {
                self.best = Some(self.code.clone());
            }
            return;
        }
        let mut tried: Vec<usize> = Vec::new();
        for x in 0..self.s.n {
            if self.used[x] || tried.iter().any(|&t| self.twins[t][x]) {
                continue;
            }
            tried.push(x);
            let mark = self.code.len();
            self.code.extend_from_slice(&self.sig[x]);
            for &y in &self.order {
                for r in &self.s.components {
                    self.code.push(r.has(x, y) as u8);
                    self.code.push(r.has(y, x) as u8);
                }
            }
            let dominated = match &self.best {
                Some(b) => self.code.as_slice() > &b[..self.code.len()],
                None => false,
            };
            if !dominated {
                self.order.push(x);
                self.used[x] = true;
                self.run();
                self.used[x] = false;
                self.order.pop();
            }
            self.code.truncate(mark);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(n: usize, pairs: &[(usize, usize)]) -> Relation {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap()
    }

    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in all_perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn partial_order_examples() {
        assert!(Relation::empty(3).is_partial_order());
        assert!(!rel(3, &[(0, 1), (1, 2)]).is_partial_order());
        assert!(rel(3, &[(0, 1), (1, 2), (0, 2)]).is_partial_order());
    }

    #[test]
    fn rejects_bad_pairs() {
        assert_eq!(rel_err(3, &[(1, 1)]), RelError::Reflexive(1));
        assert_eq!(rel_err(3, &[(0, 3)]), RelError::OutOfRange { index: 3, n: 3 });
    }

    fn rel_err(n: usize, pairs: &[(usize, usize)]) -> RelError {
        Relation::from_pairs(n, pairs.iter().copied()).unwrap_err()
    }

    #[test]
    fn minmax_examples() {
        assert_eq!(minmax(&Relation::empty(4)), (vec![0, 1, 2, 3], vec![0, 1, 2, 3]));
        assert_eq!(minmax(&Relation::chain(3)), (vec![0], vec![2]));
        let n = rel(4, &[(0, 1), (0, 3), (2, 1)]);
        // direct scan: nothing points into 0 or 2; nothing leaves 1 or 3
        assert_eq!(minmax(&n), (vec![0, 2], vec![1, 3]));
    }

    #[test]
    fn minmax_on_non_order() {
        // a 2-cycle has no minimal or maximal elements
        let r = rel(3, &[(0, 1), (1, 0)]);
        assert_eq!(minmax(&r), (vec![2], vec![2]));
    }

    #[test]
    fn containment_examples() {
        let tpt = PatternId::TwoPlusTwo.structure();
        assert!(contains(&tpt, &tpt).unwrap());
        let chain4 = RelStructure::single(Relation::chain(4));
        assert!(!contains(&chain4, &PatternId::N.structure()).unwrap());
        let two = RelStructure::new(4, vec![Relation::empty(4), Relation::empty(4)]).unwrap();
        assert!(matches!(
            contains(&two, &tpt),
            Err(RelError::ComponentMismatch { host: 2, pattern: 1 })
        ));
    }

    #[test]
    fn containment_is_induced() {
        // 3-chain contains the 2-chain but not the 2-antichain
        let chain3 = RelStructure::single(Relation::chain(3));
        assert!(contains(&chain3, &RelStructure::single(Relation::chain(2))).unwrap());
        assert!(!contains(&chain3, &RelStructure::single(Relation::empty(2))).unwrap());
    }

    #[test]
    fn avoidance_examples() {
        assert!(avoids(&Relation::empty(4), PatternId::TwoPlusTwo));
        assert!(!avoids(&rel(4, &[(0, 1), (2, 3)]), PatternId::TwoPlusTwo));
    }

    #[test]
    fn text_format_round_trip() {
        let s = RelStructure::new(3, vec![rel(3, &[(0, 1)]), rel(3, &[(2, 0), (2, 1)])]).unwrap();
        let text = s.to_text();
        assert_eq!(text, "3 2\n1\n0 1\n2\n2 0\n2 1\n");
        assert_eq!(RelStructure::parse_text(&text).unwrap(), s);
        assert!(RelStructure::parse_text("3 1\n1\n0 0\n").is_err());
        assert!(RelStructure::parse_text("3 1\n2\n0 1\n").is_err());
    }

    #[test]
    fn canonical_form_examples() {
        let c = RelStructure::single(Relation::chain(3));
        let c2 = c.relabel(&[2, 0, 1]);
        assert_eq!(canonical_form(&c).unwrap(), canonical_form(&c2).unwrap());
        let a = RelStructure::single(Relation::empty(3));
        assert_ne!(canonical_form(&c).unwrap(), canonical_form(&a).unwrap());

        let n = PatternId::N.structure();
        let forms: std::collections::BTreeSet<_> = all_perms(4)
            .iter()
            .map(|p| canonical_form(&n.relabel(p)).unwrap())
            .collect();
        assert_eq!(forms.len(), 1);
        assert_eq!(
            canonical_form_bounded(&RelStructure::single(Relation::empty(5)), 4),
            Err(RelError::TooLarge { n: 5, bound: 4 })
        );
    }

    /// Brute-force isomorphism oracle.
    fn isomorphic(a: &RelStructure, b: &RelStructure) -> bool {
        a.n() == b.n() && a.arity() == b.arity() && all_perms(a.n()).iter().any(|p| &a.relabel(p) == b)
    }

    #[test]
    fn canonical_form_separates_exactly_the_isomorphism_classes() {
        // every relation on 3 elements, pairwise
        let pairs: Vec<(usize, usize)> = (0..3)
            .flat_map(|a| (0..3).map(move |b| (a, b)))
            .filter(|(a, b)| a != b)
            .collect();
        let all: Vec<RelStructure> = (0u32..1 << pairs.len())
            .map(|mask| {
                RelStructure::single(
                    Relation::from_pairs(
                        3,
                        pairs
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| mask >> i & 1 == 1)
                            .map(|(_, &p)| p),
                    )
                    .unwrap(),
                )
            })
            .collect();
        let forms: Vec<_> = all.iter().map(|s| canonical_form(s).unwrap()).collect();
        for i in 0..all.len() {
            for j in 0..all.len() {
                assert_eq!(forms[i] == forms[j], isomorphic(&all[i], &all[j]), "{i} {j}");
            }
        }
    }

    use proptest::prelude::*;

    fn structure(max_n: usize, arity: usize) -> impl Strategy<Value = RelStructure> {
        (1..=max_n).prop_flat_map(move |n| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), n * n), arity).prop_map(move |masks| {
                let comps = masks
                    .iter()
                    .map(|m| Relation::from_fn(n, |a, b| m[a * n + b]))
                    .collect();
                RelStructure::new(n, comps).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn canonical_form_is_relabeling_invariant(
            s in structure(6, 2),
            seed in any::<u64>(),
        ) {
            let n = s.n();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut state = seed;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (state >> 33) as usize % (i + 1));
            }
            prop_assert_eq!(canonical_form(&s).unwrap(), canonical_form(&s.relabel(&perm)).unwrap());
            prop_assert!(contains(&s, &s.relabel(&perm)).unwrap());
        }

        #[test]
        fn posets_have_minimal_and_maximal_elements(s in structure(6, 1)) {
            // transitive closure turned into a strict order by dropping cycles
            let r = s.component(0);
            let n = r.n();
            let order = Relation::from_fn(n, |a, b| a < b && r.has(a, b));
            let mut closed = order.clone();
            loop {
                let next = Relation::from_fn(n, |a, b| closed.has(a, b) || (0..n).any(|c| closed.has(a, c) && closed.has(c, b)));
                if next == closed { break; }
                closed = next;
            }
            prop_assert!(closed.is_partial_order());
            prop_assert!(closed.mmin() >= 1 && closed.mmax() >= 1);
        }

        #[test]
        fn containment_is_transitive(s in structure(6, 1), keep in proptest::collection::vec(any::<bool>(), 6)) {
            let mid: Vec<usize> = (0..s.n()).filter(|&i| keep[i]).collect();
            let mid = RelStructure::single(s.component(0).induced(&mid));
            let low: Vec<usize> = (0..mid.n()).step_by(2).collect();
            let low = RelStructure::single(mid.component(0).induced(&low));
            prop_assert!(contains(&s, &mid).unwrap());
            prop_assert!(contains(&mid, &low).unwrap());
            prop_assert!(contains(&s, &low).unwrap());
        }
    }
}
