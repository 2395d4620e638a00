//! Closed forms and brute-force sums for the Fishburn generating functions
//!
//! `F(x, y, z) = sum x^w(M) y^lc(M) z^ne(M)` over nonempty Fishburn
//! matrices, `G(x, y) = F(x, y, 1)`, and the primitive-matrix series
//! `P(x, y, z) = sum x^pc(M) y^(lc(M)-1) z^ne(M)`.

use super::{pochhammer, Grading, SeriesError, TruncatedSeries};
use crate::fishmat::{enumerate_matrices, primitive_matrices, primitive_matrices_of_dim, EnumOptions, FishburnMatrix};

/// Largest weight summed by brute force unless the caller says otherwise.
pub const DEFAULT_BRUTE_BOUND: u32 = 8;

struct Vars {
    one: TruncatedSeries,
    x: TruncatedSeries,
    y: TruncatedSeries,
    z: TruncatedSeries,
}

impl Vars {
    fn new(g: Grading) -> Self {
        Vars {
            one: TruncatedSeries::one(g),
            x: TruncatedSeries::x(g),
            y: TruncatedSeries::y(g),
            z: TruncatedSeries::z(g),
        }
    }
}

/// `sum_{k >= start} term(k)` where `term(k)` must have valuation at least
/// `k + shift` under `val`; summation stops once that bound passes `max`.
fn valuation_sum(
    g: Grading,
    start: usize,
    shift: u64,
    val: impl Fn(&TruncatedSeries) -> Option<u64>,
    mut term: impl FnMut(usize) -> TruncatedSeries,
) -> TruncatedSeries {
    let mut total = TruncatedSeries::zero(g);
    let mut k = start;
    while k as u64 + shift <= g.max_degree as u64 {
        let t = term(k);
        if let Some(v) = val(&t) {
            assert!(v >= k as u64 + shift, "term {k} has valuation {v}");
        }
        total = &total + &t;
        k += 1;
    }
    total
}

fn x_val(s: &TruncatedSeries) -> Option<u64> {
    s.x_valuation().map(u64::from)
}

/// `x y z sum_n ((1-xy)(1-xz); 1-x)_n`, complete through `x^n`.
pub fn f_formula(n: u32) -> TruncatedSeries {
    let g = Grading::x_adic(n);
    let v = Vars::new(g);
    let a = &(&v.one - &(&v.x * &v.y)) * &(&v.one - &(&v.x * &v.z));
    let q = &v.one - &v.x;
    let mut poch = v.one.clone();
    let mut aq = a.clone();
    let sum = valuation_sum(g, 0, 0, x_val, |k| {
        if k > 0 {
            poch = &poch * &(&v.one - &aq);
            aq = &aq * &q;
        }
        poch.clone()
    });
    &(&(&v.x * &v.y) * &v.z) * &sum
}

/// `sum x^w(M) y^lc(M) z^ne(M)` over all matrices of weight `1..=n`.
pub fn brute_series(n: u32) -> Result<TruncatedSeries, SeriesError> {
    brute_series_with(n, DEFAULT_BRUTE_BOUND, |m| (m.last_column_weight(), m.ne() as u32))
}

/// Like [`brute_series`] with the exponents of `y` and `z` taken from
/// `stats` and an explicit enumeration bound.
pub fn brute_series_with(
    n: u32,
    bound: u32,
    stats: impl Fn(&FishburnMatrix) -> (u32, u32),
) -> Result<TruncatedSeries, SeriesError> {
    if n > bound {
        return Err(SeriesError::BoundExceeded { n, bound });
    }
    let mut s = TruncatedSeries::zero(Grading::x_adic(n));
    for w in 1..=n {
        for m in enumerate_matrices(w, EnumOptions::default()) {
            let (b, c) = stats(&m);
            s.add_term([w, b, c], 1.into());
        }
    }
    Ok(s)
}

/// The three closed forms of `G(x, y)`, complete through `x^n`:
///
/// 1. `sum_{k>=0} xy/(1-xy)^(k+1) (1-x; 1-x)_k`
/// 2. `sum_{k>=1} (1-xy; 1-x)_k`
/// 3. `-1 + sum_{k>=0} p q^k (p; q)_k (q; q)_k` with `p = 1/(1-xy)`, `q = 1/(1-x)`
pub fn g_formula(n: u32, which: u8) -> Result<TruncatedSeries, SeriesError> {
    let g = Grading::x_adic(n);
    let v = Vars::new(g);
    let xy = &v.x * &v.y;
    let one_minus_x = &v.one - &v.x;
    let one_minus_xy = &v.one - &xy;
    Ok(match which {
        1 => {
            let inv = one_minus_xy.invert_unit()?;
            valuation_sum(g, 0, 1, x_val, |k| {
                &(&xy * &inv.pow(k as u32 + 1)) * &pochhammer(&one_minus_x, &one_minus_x, k)
            })
        }
        2 => valuation_sum(g, 1, 0, x_val, |k| pochhammer(&one_minus_xy, &one_minus_x, k)),
        3 => {
            let p = one_minus_xy.invert_unit()?;
            let q = one_minus_x.invert_unit()?;
            // each factor of both products has valuation 1, so term k has 2k
            let sum = valuation_sum(g, 0, 0, x_val, |k| {
                &(&(&p * &q.pow(k as u32)) * &pochhammer(&p, &q, k)) * &pochhammer(&q, &q, k)
            });
            &sum - &v.one
        }
        other => return Err(SeriesError::UnknownFormula(other)),
    })
}

/// `F(x, y, 1)` from [`f_formula`].
pub fn g_from_f(n: u32) -> TruncatedSeries {
    let f = f_formula(n);
    let v = Vars::new(f.grading());
    f.substitute([&v.x, &v.y, &v.one]).expect("z has weight zero")
}

fn p_value(m: &FishburnMatrix) -> [u32; 3] {
    [m.preceding_columns_weight(), m.last_column_weight() - 1, m.ne() as u32]
}

/// `P` by brute force over primitive matrices, modulo total degree `> n`.
/// A primitive matrix of weight `w` has total degree `w - 1 + ne >= w`, so
/// weights up to `n` suffice.
pub fn brute_p(n: u32) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(Grading::total(n));
    for m in primitive_matrices(n) {
        s.add_term(p_value(&m), 1.into());
    }
    s
}

/// `P_k`, the part of `P` from `k x k` primitive matrices, under `grading`.
pub fn brute_p_k(k: usize, grading: Grading) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(grading);
    for m in primitive_matrices_of_dim(k) {
        s.add_term(p_value(&m), 1.into());
    }
    s
}

/// `z/(1+y) sum_k ((1+x-xz)/((1+x)(1+y)); 1/(1+x))_k` modulo total
/// degree `> n`.
pub fn p_closed_form(n: u32) -> TruncatedSeries {
    let g = Grading::total(n);
    let v = Vars::new(g);
    let inv_1x = (&v.one + &v.x).invert_unit().expect("unit");
    let inv_1y = (&v.one + &v.y).invert_unit().expect("unit");
    let num = &(&v.one + &v.x) - &(&v.x * &v.z);
    let a = &(&num * &inv_1x) * &inv_1y;
    let sum = valuation_sum(g, 0, 0, TruncatedSeries::valuation, |k| pochhammer(&a, &inv_1x, k));
    &(&v.z * &inv_1y) * &sum
}

/// Right-hand side of `P = z/(1+y) + (xz+xy+y)/(1+y) P(x, x+y+xy, z)`.
pub fn p_functional_rhs(p: &TruncatedSeries) -> TruncatedSeries {
    let v = Vars::new(p.grading());
    let inv_1y = (&v.one + &v.y).invert_unit().expect("unit");
    let xy = &v.x * &v.y;
    let shifted = p.substitute_y(&(&(&v.x + &v.y) + &xy)).expect("zero constant term");
    let coef = &(&(&v.x * &v.z) + &xy) + &v.y;
    &(&v.z * &inv_1y) + &(&(&coef * &inv_1y) * &shifted)
}

/// Right-hand side of `F = xy/(1-xy) P(x/(1-x), xy/(1-xy), z)`.
pub fn inflation_rhs(p: &TruncatedSeries) -> TruncatedSeries {
    let v = Vars::new(p.grading());
    let xy = &v.x * &v.y;
    let inv_1xy = (&v.one - &xy).invert_unit().expect("unit");
    let inv_1x = (&v.one - &v.x).invert_unit().expect("unit");
    let lead = &xy * &inv_1xy;
    let sub_x = &v.x * &inv_1x;
    p.substitute([&sub_x, &lead, &v.z])
        .map(|s| &lead * &s)
        .expect("positive valuations")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PCheckReport {
    pub degree: u32,
    /// The brute-force `P` satisfies the functional equation.
    pub functional_equation: bool,
    /// The closed form equals the brute-force `P`.
    pub closed_form: bool,
    /// Inflating `P` gives `F`.
    pub inflation: bool,
}

impl PCheckReport {
    pub fn all_hold(&self) -> bool {
        self.functional_equation && self.closed_form && self.inflation
    }
}

/// All three `P` identities modulo total degree `> n`.
pub fn p_checks(n: u32) -> PCheckReport {
    let p = brute_p(n);
    let f = f_formula(n).regrade(Grading::total(n));
    PCheckReport {
        degree: n,
        functional_equation: p_functional_rhs(&p) == p,
        closed_form: p_closed_form(n) == p,
        inflation: inflation_rhs(&p) == f,
    }
}

/// `P_{k+1} = (xz + xy + y) P_k(x, x+y+xy, z) - y P_k`, compared exactly:
/// both sides are polynomials and the grading bound exceeds every degree
/// that occurs in `P_{k+1}`.
pub fn recurrence_holds(k: usize) -> bool {
    let k1 = k as u32 + 1;
    let max_weight = k1 * (k1 + 1) / 2;
    let g = Grading::total(max_weight - 1 + k1);
    let v = Vars::new(g);
    let pk = brute_p_k(k, g);
    let next = brute_p_k(k + 1, g);
    let xy = &v.x * &v.y;
    let shifted = pk.substitute_y(&(&(&v.x + &v.y) + &xy)).expect("zero constant term");
    let coef = &(&(&v.x * &v.z) + &xy) + &v.y;
    let rhs = &(&coef * &shifted) - &(&v.y * &pk);
    rhs == next
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const FISHBURN: [u64; 9] = [1, 1, 2, 5, 15, 53, 217, 1014, 5335];

    fn c(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn f_formula_low_coefficients() {
        let f = f_formula(6);
        assert_eq!(f.coeff(&[1, 1, 1]), c(1));
        assert_eq!(f.terms().filter(|(e, _)| e[0] == 1).count(), 1);
        assert_eq!(f.coeff(&[2, 2, 1]), c(1));
        assert_eq!(f.coeff(&[2, 1, 2]), c(1));
        assert_eq!(f.terms().filter(|(e, _)| e[0] == 2).count(), 2);
        for n in 1..=6 {
            assert_eq!(f.x_coefficient_sum(n), BigInt::from(FISHBURN[n as usize]));
        }
    }

    #[test]
    fn formula_matches_enumeration() {
        assert_eq!(
            brute_series(1).unwrap(),
            TruncatedSeries::monomial(Grading::x_adic(1), 1, [1, 1, 1])
        );
        assert_eq!(f_formula(6), brute_series(6).unwrap());
        let b = brute_series(6).unwrap();
        assert_eq!(b.swap_yz(), b);
        assert_eq!(brute_series(9), Err(SeriesError::BoundExceeded { n: 9, bound: 8 }));
    }

    #[test]
    fn f_is_symmetric_in_y_and_z() {
        let f = f_formula(10);
        assert_eq!(f.swap_yz(), f);
    }

    #[test]
    fn g_formulas_agree() {
        let n = 7;
        let via_f = g_from_f(n);
        for which in 1..=3 {
            assert_eq!(g_formula(n, which).unwrap(), via_f, "formula {which}");
        }
        assert_eq!(g_formula(n, 4), Err(SeriesError::UnknownFormula(4)));
        for k in 1..=n {
            assert_eq!(via_f.x_coefficient_sum(k), BigInt::from(FISHBURN[k as usize]));
        }
        // one maximal element means last column weight one
        let single_max = brute_series_with(n, 8, |m| (m.last_column_weight(), 0)).unwrap();
        for k in 1..=n {
            assert_eq!(via_f.coeff(&[k, 1, 0]), single_max.coeff(&[k, 1, 0]));
        }
    }

    #[test]
    fn p_identities() {
        let p = brute_p(6);
        assert_eq!(brute_p(1), TruncatedSeries::z(Grading::total(1)));
        assert_eq!(brute_p_k(1, Grading::total(4)), TruncatedSeries::z(Grading::total(4)));
        assert!(p.coeff(&[0, 0, 1]) == c(1));
        let report = p_checks(6);
        assert!(report.all_hold(), "{report:?}");
    }

    #[test]
    fn per_dimension_recurrence() {
        for k in 1..=4 {
            assert!(recurrence_holds(k), "k = {k}");
        }
    }
}
