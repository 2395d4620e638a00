//! Exact truncated power series in `x`, `y`, `z` with integer coefficients.
//!
//! A [`Grading`] assigns a weight to each variable and a maximum degree;
//! terms of larger weighted degree are discarded after every operation.
//! Truncation is sound as long as no operation lowers degrees: products
//! only add degrees, unit inverses need a tail of positive valuation, and a
//! substitution `v -> g` needs `g` to have valuation at least the weight of
//! `v`. The total-degree grading `(1, 1, 1)` suits the primitive-matrix
//! identities; the `x`-adic grading `(1, 0, 0)` extracts full `x^n`
//! coefficients, which is what the matrix counts need.

mod identities;

pub use identities::{
    brute_p, brute_p_k, brute_series, brute_series_with, f_formula, g_formula, g_from_f, inflation_rhs, p_checks,
    p_closed_form, p_functional_rhs, recurrence_holds, PCheckReport, DEFAULT_BRUTE_BOUND,
};

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub type Exponents = [u32; 3];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("series have different gradings")]
    GradingMismatch,
    #[error("substitution for variable {var} has valuation {valuation:?} below its weight {weight}")]
    SubstitutionValuation {
        var: usize,
        valuation: Option<u64>,
        weight: u32,
    },
    #[error("n = {n} exceeds the exhaustive bound {bound}")]
    BoundExceeded { n: u32, bound: u32 },
    #[error("no formula numbered {0}")]
    UnknownFormula(u8),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    pub weights: [u32; 3],
    pub max_degree: u32,
}

impl Grading {
    pub fn total(max_degree: u32) -> Self {
        Grading {
            weights: [1, 1, 1],
            max_degree,
        }
    }

    pub fn x_adic(max_degree: u32) -> Self {
        Grading {
            weights: [1, 0, 0],
            max_degree,
        }
    }

    pub fn degree(&self, e: &Exponents) -> u64 {
        e.iter().zip(self.weights).map(|(&a, w)| a as u64 * w as u64).sum()
    }

    fn keeps(&self, e: &Exponents) -> bool {
        self.degree(e) <= self.max_degree as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    grading: Grading,
    terms: BTreeMap<Exponents, BigInt>,
}

impl TruncatedSeries {
    pub fn zero(grading: Grading) -> Self {
        TruncatedSeries {
            grading,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(grading: Grading, c: impl Into<BigInt>) -> Self {
        Self::monomial(grading, c, [0, 0, 0])
    }

    pub fn one(grading: Grading) -> Self {
        Self::constant(grading, 1)
    }

    pub fn monomial(grading: Grading, c: impl Into<BigInt>, e: Exponents) -> Self {
        let mut s = Self::zero(grading);
        s.add_term(e, c.into());
        s
    }

    /// The variable with index `i` (0 = x, 1 = y, 2 = z).
    pub fn var(grading: Grading, i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(grading, 1, e)
    }

    pub fn x(grading: Grading) -> Self {
        Self::var(grading, 0)
    }

    pub fn y(grading: Grading) -> Self {
        Self::var(grading, 1)
    }

    pub fn z(grading: Grading) -> Self {
        Self::var(grading, 2)
    }

    pub fn from_terms<C: Into<BigInt>>(grading: Grading, terms: impl IntoIterator<Item = (Exponents, C)>) -> Self {
        let mut s = Self::zero(grading);
        for (e, c) in terms {
            s.add_term(e, c.into());
        }
        s
    }

    /// Adds `c * x^a y^b z^c`, dropping it if it is beyond the truncation.
    pub fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() || !self.grading.keeps(&e) {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn coeff(&self, e: &Exponents) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Nonzero terms in lexicographic order of exponents.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest weighted degree of a nonzero term.
    pub fn valuation(&self) -> Option<u64> {
        self.terms.keys().map(|e| self.grading.degree(e)).min()
    }

    /// Smallest power of `x` among nonzero terms.
    pub fn x_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|e| e[0]).min()
    }

    /// Sum of the coefficients of all terms with `x`-exponent `n`.
    pub fn x_coefficient_sum(&self, n: u32) -> BigInt {
        self.terms.iter().filter(|(e, _)| e[0] == n).map(|(_, c)| c).sum()
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        Self::from_terms(self.grading, self.terms.iter().map(|(e, c)| (*e, c * &k)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.grading), |acc, _| &acc * self)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.grading != other.grading {
            return Err(SeriesError::GradingMismatch);
        }
        let mut out = Self::zero(self.grading);
        let max = self.grading.max_degree as u64;
        for (ea, ca) in &self.terms {
            let da = self.grading.degree(ea);
            for (eb, cb) in &other.terms {
                if da + self.grading.degree(eb) > max {
                    continue;
                }
                out.add_term([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]], ca * cb);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.grading != other.grading {
            return Err(SeriesError::GradingMismatch);
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    /// `1 / self` for a series with constant term `±1` whose remaining terms
    /// have positive valuation, via the geometric series in the tail.
    pub fn invert_unit(&self) -> Result<Self, SeriesError> {
        let c0 = self.coeff(&[0, 0, 0]);
        let sign = if c0.is_one() {
            BigInt::one()
        } else if c0 == -BigInt::one() {
            -BigInt::one()
        } else {
            return Err(SeriesError::NonUnitConstantTerm);
        };
        // self = sign * (1 - t)  =>  1/self = sign * sum t^k
        let mut t = self.scale(-sign.clone());
        t.add_term([0, 0, 0], BigInt::one());
        let tv = t.valuation();
        if tv == Some(0) {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let mut out = Self::one(self.grading);
        let mut power = Self::one(self.grading);
        while let Some(v) = tv {
            power = &power * &t;
            if power.is_zero() {
                break;
            }
            debug_assert!(power.valuation().unwrap() >= v);
            out = &out + &power;
        }
        Ok(out.scale(sign))
    }

    /// Simultaneously replaces `x, y, z` by `subs[0], subs[1], subs[2]`.
    /// Each replacement must have valuation at least the weight of the
    /// variable it replaces, so that no dropped term could have contributed.
    pub fn substitute(&self, subs: [&TruncatedSeries; 3]) -> Result<Self, SeriesError> {
        for (v, g) in subs.iter().enumerate() {
            if g.grading != self.grading {
                return Err(SeriesError::GradingMismatch);
            }
            let weight = self.grading.weights[v];
            let valuation = g.valuation();
            if valuation.is_some_and(|d| d < weight as u64) {
                return Err(SeriesError::SubstitutionValuation {
                    var: v,
                    valuation,
                    weight,
                });
            }
        }
        let mut max_exp = [0u32; 3];
        for e in self.terms.keys() {
            for v in 0..3 {
                max_exp[v] = max_exp[v].max(e[v]);
            }
        }
        let powers: Vec<Vec<TruncatedSeries>> = (0..3)
            .map(|v| {
                let mut p = vec![Self::one(self.grading)];
                for i in 0..max_exp[v] as usize {
                    let next = &p[i] * subs[v];
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = Self::zero(self.grading);
        for (e, c) in &self.terms {
            let m = &(&powers[0][e[0] as usize] * &powers[1][e[1] as usize]) * &powers[2][e[2] as usize];
            for (em, cm) in m.terms {
                out.add_term(em, cm * c);
            }
        }
        Ok(out)
    }

    /// Replaces `y` by `g`, leaving `x` and `z` alone.
    pub fn substitute_y(&self, g: &TruncatedSeries) -> Result<Self, SeriesError> {
        let (x, z) = (Self::x(self.grading), Self::z(self.grading));
        self.substitute([&x, g, &z])
    }

    pub fn swap_yz(&self) -> Self {
        Self::from_terms(
            self.grading,
            self.terms.iter().map(|(e, c)| ([e[0], e[2], e[1]], c.clone())),
        )
    }

    /// The same terms under another grading, dropping those beyond it. This
    /// is an exact truncation of the underlying series only when every term
    /// missing from `self` lies beyond the new grading as well.
    pub fn regrade(&self, grading: Grading) -> Self {
        Self::from_terms(grading, self.terms.iter().map(|(e, c)| (*e, c.clone())))
    }

    /// One `coef x^a y^b z^c` line per nonzero term, lexicographic.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            let _ = writeln!(out, "{c} x^{} y^{} z^{}", e[0], e[1], e[2]);
        }
        out
    }

    /// `{"weights": [..], "max_degree": N, "terms": {"a,b,c": "coef", ..}}`;
    /// coefficients are decimal strings since they are unbounded.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                (
                    format!("{},{},{}", e[0], e[1], e[2]),
                    serde_json::Value::String(c.to_string()),
                )
            })
            .collect();
        serde_json::json!({
            "weights": self.grading.weights,
            "max_degree": self.grading.max_degree,
            "terms": terms,
        })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Panics if the gradings differ.
    fn add(self, rhs: Self) -> TruncatedSeries {
        self.checked_add(rhs).expect("matching gradings")
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(-1)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Panics if the gradings differ.
    fn mul(self, rhs: Self) -> TruncatedSeries {
        self.checked_mul(rhs).expect("matching gradings")
    }
}

/// `(a; q)_n = (1 - a)(1 - aq) ... (1 - aq^(n-1))`.
pub fn pochhammer(a: &TruncatedSeries, q: &TruncatedSeries, n: usize) -> TruncatedSeries {
    let g = a.grading();
    let one = TruncatedSeries::one(g);
    let mut out = one.clone();
    let mut aq = a.clone();
    for _ in 0..n {
        out = &out * &(&one - &aq);
        aq = &aq * q;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: u32) -> Grading {
        Grading::total(n)
    }

    fn poly(grading: Grading, terms: &[(Exponents, i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(grading, terms.iter().map(|&(e, c)| (e, c)))
    }

    #[test]
    fn arithmetic_examples() {
        let gr = g(2);
        let one = TruncatedSeries::one(gr);
        let x = TruncatedSeries::x(gr);
        assert_eq!(
            &(&one + &x) * &(&one - &x),
            poly(gr, &[([0, 0, 0], 1), ([2, 0, 0], -1)])
        );

        let gr = g(3);
        let inv = (&TruncatedSeries::one(gr) - &TruncatedSeries::x(gr))
            .invert_unit()
            .unwrap();
        assert_eq!(
            inv,
            poly(gr, &[([0, 0, 0], 1), ([1, 0, 0], 1), ([2, 0, 0], 1), ([3, 0, 0], 1)])
        );
        assert_eq!(
            TruncatedSeries::x(gr).invert_unit(),
            Err(SeriesError::NonUnitConstantTerm)
        );
        let neg = (&TruncatedSeries::constant(gr, -1) + &TruncatedSeries::y(gr))
            .invert_unit()
            .unwrap();
        assert_eq!(
            neg,
            poly(
                gr,
                &[([0, 0, 0], -1), ([0, 1, 0], -1), ([0, 2, 0], -1), ([0, 3, 0], -1)]
            )
        );
        // a weight-zero tail cannot be inverted by a terminating geometric series
        let gx = Grading::x_adic(3);
        let one_minus_y = &TruncatedSeries::one(gx) - &TruncatedSeries::y(gx);
        assert_eq!(one_minus_y.invert_unit(), Err(SeriesError::NonUnitConstantTerm));
        assert_eq!(
            TruncatedSeries::one(g(1)).checked_add(&TruncatedSeries::one(g(2))),
            Err(SeriesError::GradingMismatch)
        );
    }

    #[test]
    fn substitution_examples() {
        let gr = g(3);
        let (x, y) = (TruncatedSeries::x(gr), TruncatedSeries::y(gr));
        let sub = &(&x + &y) + &(&x * &y);
        let got = y.pow(2).substitute_y(&sub).unwrap();
        // (x + y + xy)^2 = x^2 + 2xy + y^2 + 2x^2y + 2xy^2 + x^2y^2
        let want = poly(
            gr,
            &[
                ([2, 0, 0], 1),
                ([1, 1, 0], 2),
                ([0, 2, 0], 1),
                ([2, 1, 0], 2),
                ([1, 2, 0], 2),
            ],
        );
        assert_eq!(got, want);

        let s = poly(gr, &[([1, 2, 0], 3), ([0, 1, 1], -1), ([0, 0, 0], 5)]);
        assert_eq!(s.substitute_y(&y).unwrap(), s);
        let s = &x + &y;
        assert_eq!(s.substitute_y(&TruncatedSeries::zero(gr)).unwrap(), x);
        assert!(matches!(
            s.substitute_y(&TruncatedSeries::one(gr)),
            Err(SeriesError::SubstitutionValuation { var: 1, .. })
        ));
    }

    #[test]
    fn pochhammer_examples() {
        let gr = g(4);
        let (one, x, y, z) = (
            TruncatedSeries::one(gr),
            TruncatedSeries::x(gr),
            TruncatedSeries::y(gr),
            TruncatedSeries::z(gr),
        );
        assert_eq!(pochhammer(&x, &one, 0), one);
        assert_eq!(pochhammer(&x, &one, 2), (&one - &x).pow(2));
        let a = &(&one - &(&x * &y)) * &(&one - &(&x * &z));
        let q = &one - &x;
        let want = poly(gr, &[([1, 1, 0], 1), ([1, 0, 1], 1), ([2, 1, 1], -1)]);
        assert_eq!(pochhammer(&a, &q, 1), want);
    }

    #[test]
    fn output_formats() {
        let gr = g(3);
        let s = poly(gr, &[([0, 1, 0], -2), ([1, 0, 0], 1)]);
        assert_eq!(s.to_text(), "-2 x^0 y^1 z^0\n1 x^1 y^0 z^0\n");
        assert_eq!(
            s.to_json().to_string(),
            r#"{"max_degree":3,"terms":{"0,1,0":"-2","1,0,0":"1"},"weights":[1,1,1]}"#
        );
    }

    fn arb_series() -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec(((0u32..=6, 0u32..=6, 0u32..=6), -5i64..=5), 0..12)
            .prop_map(|ts| TruncatedSeries::from_terms(g(6), ts.into_iter().map(|((a, b, c), k)| ([a, b, c], k))))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn unit_inverse(a in arb_series()) {
            let mut u = a.clone();
            let c0 = u.coeff(&[0, 0, 0]);
            u.add_term([0, 0, 0], BigInt::one() - c0);
            let inv = u.invert_unit().unwrap();
            prop_assert_eq!(&u * &inv, TruncatedSeries::one(g(6)));
        }

        #[test]
        fn substitution_is_a_ring_map(a in arb_series(), b in arb_series(), h in arb_series()) {
            // force zero constant term on the substituted series
            let mut h = h;
            let c0 = h.coeff(&[0, 0, 0]);
            h.add_term([0, 0, 0], -c0);
            prop_assert_eq!(
                (&a * &b).substitute_y(&h).unwrap(),
                &a.substitute_y(&h).unwrap() * &b.substitute_y(&h).unwrap()
            );
        }
    }
}
