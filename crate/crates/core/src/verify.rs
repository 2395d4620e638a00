//! Exhaustive verification runs: named checks behind a trait-object
//! registry, each producing a report with an optional counterexample.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::catalan::{
    ballot_count, c1_of_dyck, c2_of_dyck, catalan_number, enumerate_dyck, is_c1_pair, is_c2_pair, motzkin_number,
    narayana, DyckPath, DyckStats, PsiTable,
};
use crate::fishmat::{
    cell_position, enumerate_matrices, enumerate_matrices_parallel, matrix_to_order, order_to_matrix,
    primitive_matrices_of_dim, Avoid, Cell, CellPosition, CodeLetter, EnumOptions, ExtensionCode, ExtremeKind,
    FishburnMatrix, Quadrant,
};
use crate::ftriples::{check_f_triple, f1_triple, f2_triple, phi, triple_stats, FTriple};
use crate::permlab::{avoiders, conjecture_pat1_necessary, conjecture_pat2, corner_stats, permutations, PAT1_BOUND};
use crate::relcore::{canonical_form, contains, find_embedding, PatternId, RelStructure, Relation};
use crate::series::{brute_series, f_formula, g_formula, g_from_f, p_checks, recurrence_holds, DEFAULT_BRUTE_BOUND};

/// Fishburn numbers, weight 1 first.
pub const FISHBURN_NUMBERS: [u64; 9] = [1, 2, 5, 15, 53, 217, 1014, 5335, 31240];

pub const MAX_SUITE_WEIGHT: u32 = 9;
pub const MAX_SUITE_DYCK_ORDER: usize = 10;
pub const MAX_SUITE_STAT_ORDER: usize = 12;
pub const MAX_SUITE_SYMMETRY_DEGREE: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("{param} = {value} exceeds the bound {bound}")]
    BoundExceeded {
        param: &'static str,
        value: u64,
        bound: u64,
    },
    #[error("unknown check {0:?}")]
    UnknownCheck(String),
}

/// Bounds for one suite run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Exhaustive matrix checks run over weights `1..=max_weight`.
    pub max_weight: u32,
    /// Lemma and structural checks, which inspect every pair of elements.
    pub lemma_weight: u32,
    /// Dyck-path and Catalan-pair checks.
    pub max_dyck_order: usize,
    /// Closed-form counts of Dyck statistics, which only tabulate.
    pub stat_order: usize,
    /// Truncation for series compared against enumeration.
    pub series_degree: u32,
    /// Truncation for the purely algebraic `y <-> z` symmetry of `F`.
    pub symmetry_degree: u32,
    /// Total degree for the primitive-series identities.
    pub p_degree: u32,
    /// Largest dimension of `P_k` in the per-extension recurrence.
    pub recurrence_dim: usize,
    /// Permutation size for the conjecture reports.
    pub conjecture_order: usize,
    pub jobs: usize,
}

impl SuiteConfig {
    pub fn new(max_weight: u32, max_dyck_order: usize, series_degree: u32) -> Self {
        SuiteConfig {
            max_weight,
            lemma_weight: max_weight.min(6),
            max_dyck_order,
            stat_order: max_dyck_order + 2,
            series_degree,
            symmetry_degree: series_degree + 4,
            p_degree: series_degree.min(6),
            recurrence_dim: 5,
            conjecture_order: max_dyck_order.min(PAT1_BOUND),
            jobs: 1,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn validate(&self) -> Result<(), VerifyError> {
        let limits: [(&'static str, u64, u64); 8] = [
            ("max_weight", self.max_weight.into(), MAX_SUITE_WEIGHT.into()),
            ("lemma_weight", self.lemma_weight.into(), 7),
            (
                "max_dyck_order",
                self.max_dyck_order as u64,
                MAX_SUITE_DYCK_ORDER as u64,
            ),
            ("stat_order", self.stat_order as u64, MAX_SUITE_STAT_ORDER as u64),
            ("series_degree", self.series_degree.into(), DEFAULT_BRUTE_BOUND.into()),
            (
                "symmetry_degree",
                self.symmetry_degree.into(),
                MAX_SUITE_SYMMETRY_DEGREE.into(),
            ),
            ("recurrence_dim", self.recurrence_dim as u64, 6),
            ("conjecture_order", self.conjecture_order as u64, PAT1_BOUND as u64),
        ];
        for (param, value, bound) in limits {
            if value > bound {
                return Err(VerifyError::BoundExceeded { param, value, bound });
            }
        }
        Ok(())
    }

    fn matrices(&self, n: u32, options: EnumOptions) -> Vec<FishburnMatrix> {
        if self.jobs > 1 {
            enumerate_matrices_parallel(n, options, self.jobs)
        } else {
            enumerate_matrices(n, options).collect()
        }
    }

    /// Every matrix of weight `1..=max`, lighter ones first.
    fn all_matrices(&self, max: u32) -> Vec<FishburnMatrix> {
        (1..=max)
            .flat_map(|n| self.matrices(n, EnumOptions::default()))
            .collect()
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig::new(7, 8, 8)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// A conjecture report found something worth a look; not a failure.
    Flagged,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAG",
        })
    }
}

/// What a check returns. The first failure recorded supplies the
/// counterexample.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub status: Status,
    pub params: BTreeMap<String, Value>,
    pub counterexample: Option<String>,
    pub detail: Vec<String>,
    /// Tables emitted by report-style checks.
    pub data: Option<Value>,
}

impl CheckOutcome {
    pub fn new() -> Self {
        CheckOutcome {
            status: Status::Pass,
            params: BTreeMap::new(),
            counterexample: None,
            detail: Vec::new(),
            data: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.detail.push(line.into());
    }

    pub fn fail(&mut self, what: impl Into<String>, counterexample: Option<String>) {
        self.status = Status::Fail;
        self.detail.push(format!("failed: {}", what.into()));
        if self.counterexample.is_none() {
            self.counterexample = counterexample;
        }
    }

    pub fn flag(&mut self, what: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Flagged;
        }
        self.detail.push(format!("flagged: {}", what.into()));
    }

    /// Records a failure named `what` when `ok` is false.
    pub fn require(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if !ok {
            self.fail(what(), None);
        }
        ok
    }

    /// Runs `probe` on each item in order and fails on the first item for
    /// which it returns a reason, keeping that item as the counterexample.
    pub fn first_failure<T: fmt::Display>(
        &mut self,
        what: &str,
        items: impl IntoIterator<Item = T>,
        mut probe: impl FnMut(&T) -> Option<String>,
    ) -> bool {
        for item in items {
            if let Some(reason) = probe(&item) {
                self.fail(format!("{what}: {reason}"), Some(item.to_string()));
                return false;
            }
        }
        true
    }
}

impl Default for CheckOutcome {
    fn default() -> Self {
        Self::new()
    }
}

/// A named verification strategy.
pub trait Check: Send + Sync {
    fn name(&self) -> &str;
    fn description(&self) -> &str;
    fn run(&self, cfg: &SuiteConfig) -> CheckOutcome;
}

struct FnCheck {
    name: &'static str,
    description: &'static str,
    run: fn(&SuiteConfig) -> CheckOutcome,
}

impl Check for FnCheck {
    fn name(&self) -> &str {
        self.name
    }

    fn description(&self) -> &str {
        self.description
    }

    fn run(&self, cfg: &SuiteConfig) -> CheckOutcome {
        (self.run)(cfg)
    }
}

/// Checks in registration order.
#[derive(Default)]
pub struct CheckRegistry {
    checks: Vec<Box<dyn Check>>,
}

impl CheckRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, check: Box<dyn Check>) {
        assert!(self.get(check.name()).is_none(), "duplicate check {}", check.name());
        self.checks.push(check);
    }

    /// Swaps in `check` for the registered check of the same name, keeping
    /// its position. Returns false if there is none.
    pub fn replace(&mut self, check: Box<dyn Check>) -> bool {
        match self.checks.iter().position(|c| c.name() == check.name()) {
            Some(i) => {
                self.checks[i] = check;
                true
            }
            None => false,
        }
    }

    fn add(&mut self, name: &'static str, description: &'static str, run: fn(&SuiteConfig) -> CheckOutcome) {
        self.register(Box::new(FnCheck { name, description, run }));
    }

    pub fn get(&self, name: &str) -> Option<&dyn Check> {
        self.checks.iter().find(|c| c.name() == name).map(|c| c.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Check> {
        self.checks.iter().map(|c| c.as_ref())
    }

    pub fn names(&self) -> Vec<&str> {
        self.checks.iter().map(|c| c.name()).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub name: String,
    pub description: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    pub counterexample: Option<String>,
    pub detail: Vec<String>,
    pub data: Option<Value>,
    pub elapsed: Duration,
}

impl VerifyReport {
    /// Elapsed time is left out unless asked for, so that repeated runs
    /// emit identical bytes.
    pub fn to_json(&self, with_elapsed: bool) -> Value {
        let mut v = json!({
            "name": self.name,
            "description": self.description,
            "params": self.params,
            "status": self.status.to_string().to_lowercase(),
            "counterexample": self.counterexample,
            "detail": self.detail,
        });
        if let Some(d) = &self.data {
            v["data"] = d.clone();
        }
        if with_elapsed {
            v["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        v
    }

    pub fn to_text(&self, with_elapsed: bool) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut line = format!("{} {} [{}]", self.status, self.name, params.join(" "));
        if with_elapsed {
            line.push_str(&format!(" {}ms", self.elapsed.as_millis()));
        }
        if let Some(c) = &self.counterexample {
            line.push_str(&format!("\n  counterexample: {c}"));
        }
        for d in &self.detail {
            line.push_str(&format!("\n  {d}"));
        }
        line
    }
}

pub fn run_check(check: &dyn Check, cfg: &SuiteConfig) -> VerifyReport {
    let start = Instant::now();
    let out = check.run(cfg);
    VerifyReport {
        name: check.name().to_string(),
        description: check.description().to_string(),
        params: out.params,
        status: out.status,
        counterexample: out.counterexample,
        detail: out.detail,
        data: out.data,
        elapsed: start.elapsed(),
    }
}

/// Runs every registered check, in registration order.
pub fn run_suite(registry: &CheckRegistry, cfg: &SuiteConfig) -> Result<Vec<VerifyReport>, VerifyError> {
    cfg.validate()?;
    Ok(registry.iter().map(|c| run_check(c, cfg)).collect())
}

/// Runs the named checks, in the order given.
pub fn run_selected(
    registry: &CheckRegistry,
    names: &[&str],
    cfg: &SuiteConfig,
) -> Result<Vec<VerifyReport>, VerifyError> {
    cfg.validate()?;
    let checks = names
        .iter()
        .map(|n| registry.get(n).ok_or_else(|| VerifyError::UnknownCheck(n.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(checks.into_iter().map(|c| run_check(c, cfg)).collect())
}

pub fn all_passed(reports: &[VerifyReport]) -> bool {
    reports.iter().all(|r| r.status != Status::Fail)
}

/// The standard suite.
pub fn default_registry() -> CheckRegistry {
    let mut r = CheckRegistry::new();
    r.add(
        "enumeration-counts",
        "matrix counts against Fishburn numbers, F coefficient sums and pattern-avoiding permutations",
        enumeration_counts,
    );
    r.add(
        "catalan-restrictions",
        "StrictNW-free and StrictSW-free matrices number C_n",
        catalan_restrictions,
    );
    r.add(
        "motzkin-restriction",
        "primitive StrictNW-free and StrictSW-free matrices number Motzkin(n-1)",
        motzkin_restriction,
    );
    r.register(Box::new(PhiCheck::new(phi)));
    r.add(
        "fish2-symmetry",
        "(|wNE|, lc) is symmetric over matrices and F is symmetric in y, z",
        fish2_symmetry,
    );
    r.add(
        "f-formula",
        "closed form of F equals the enumerated series",
        f_formula_check,
    );
    r.add(
        "p-identities",
        "functional equation, closed form, inflation identity and recurrence for P",
        p_identities,
    );
    r.add(
        "g-formulas",
        "three closed forms of G agree with F(x, y, 1)",
        g_formulas,
    );
    r.add(
        "catalan-statistics",
        "Dyck statistics on Catalan pairs, ballot and Narayana counts, psi",
        catalan_statistics,
    );
    r.add(
        "lemma-suite",
        "cell positions versus patterns and F-triple relations; C1 and C2 reconstruction",
        lemma_suite,
    );
    r.add(
        "conjecture-pat2",
        "(LRmax, RLmax) over avoiders; reported, asymmetry is flagged",
        conjecture_pat2_check,
    );
    r.add(
        "conjecture-pat1",
        "corner statistics of avoiders against matrix statistics; reported, mismatch is flagged",
        conjecture_pat1_check,
    );
    r.add(
        "relcore-invariants",
        "canonical forms and pattern avoidance are relabeling-invariant; containment is a preorder",
        relcore_invariants,
    );
    r.add(
        "fishmat-invariants",
        "matrices versus interval orders, extension calculus, extreme cells, antidiagonal transpose",
        fishmat_invariants,
    );
    r.add(
        "chain-avoidance",
        "matrices avoiding increasing and decreasing chains of length m share dimension and line weights",
        chain_avoidance,
    );
    r.add(
        "permlab-inverse",
        "inversion reflects corner statistics and keeps avoiders",
        permlab_inverse,
    );
    r
}

fn enumeration_counts(cfg: &SuiteConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new().param("max_weight", cfg.max_weight);
    let f = f_formula(cfg.max_weight);
    let mut counts = Vec::new();
    for n in 1..=cfg.max_weight {
        let brute = cfg.matrices(n, EnumOptions::default()).len() as u64;
        let expected = FISHBURN_NUMBERS[n as usize - 1];
        let series = f.x_coefficient_sum(n);
        let perms = avoiders(n as usize).count() as u64;
        out.require(brute == expected, || {
            format!("weight {n}: enumerated {brute}, expected {expected}")
        });
        out.require(series == BigInt::from(expected), || {
            format!("weight {n}: F coefficient sum {series}")
        });
        out.require(perms == expected, || format!("size {n}: {perms} avoiding permutations"));
        counts.push(brute.to_string());
    }
    out.note(format!("counts {}", counts.join(",")));
    out
}

fn restriction_counts(cfg: &SuiteConfig, primitive_only: bool, expected: impl Fn(u64) -> u128, out: &mut CheckOutcome) {
    for avoid in [Avoid::StrictNW, Avoid::StrictSW] {
        let mut counts = Vec::new();
        for n in 1..=cfg.max_dyck_order as u32 {
            let got = cfg.matrices(n, EnumOptions { primitive_only, avoid }).len() as u128;
            let want = expected(n.into());
            out.require(got == want, || format!("{avoid:?} weight {n}: {got}, expected {want}"));
            counts.push(got.to_string());
        }
        out.note(format!("{avoid:?} {}", counts.join(",")));
    }
}

fn catalan_restrictions(cfg: &SuiteConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new().param("max_weight", cfg.max_dyck_order);
    restriction_counts(cfg, false, catalan_number, &mut out);
    out
}

fn motzkin_restriction(cfg: &SuiteConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new().param("max_weight", cfg.max_dyck_order);
    restriction_counts(cfg, true, |n| motzkin_number(n - 1), &mut out);
    out
}

/// The involution check, parameterized by the map under test so that a
/// faulty map can be fed in.
pub struct PhiCheck {
    map: fn(&FishburnMatrix) -> FishburnMatrix,
}

impl PhiCheck {
    pub fn new(map: fn(&FishburnMatrix) -> FishburnMatrix) -> Self {
        PhiCheck { map }
    }

    /// Why `m` violates the theorem under `self.map`, if it does.
    fn violation(&self, m: &FishburnMatrix) -> Option<String> {
        let p = (self.map)(m);
        if p.weight() != m.weight() {
            return Some(format!("image {p} has a different weight"));
        }
        if (self.map)(&p) != *m {
            return Some(format!("not an involution: image {p}"));
        }
        let (a1, a2) = (triple_stats(&f1_triple(m)), triple_stats(&f2_triple(m)));
        let (b1, b2) = (triple_stats(&f1_triple(&p)), triple_stats(&f2_triple(&p)));
        let pairs = [
            ("maxS1 -> maxT2", a1.max_s, b2.max_t),
            ("maxS2 -> maxT1", a2.max_s, b1.max_t),
            ("lc", m.last_column_weight() as usize, p.last_column_weight() as usize),
            (
                "wNE weight -> wSE weight",
                m.extreme_weight(ExtremeKind::WeakNE) as usize,
                p.extreme_weight(ExtremeKind::WeakSE) as usize,
            ),
            (
                "sNE count -> sSE count",
                m.extreme_cells(ExtremeKind::StrictNE).len(),
                p.extreme_cells(ExtremeKind::StrictSE).len(),
            ),
            ("dimension", m.dim(), p.dim()),
            ("primitive", m.is_primitive() as usize, p.is_primitive() as usize),
        ];
        for (what, before, after) in pairs {
            if before != after {
                return Some(format!("{what}: {before} vs {after} for image {p}"));
            }
        }
        if let Some(j) = (1..=m.dim()).find(|&j| m.column_weight(j) != p.column_weight(j)) {
            return Some(format!("column {j} weight changes, image {p}"));
        }
        if !m.has_pair_in(CellPosition::StrictNW) && p.has_pair_in(CellPosition::StrictSW) {
            return Some(format!("StrictNW-free but image {p} has a StrictSW pair"));
        }
        None
    }
}

impl Check for PhiCheck {
    fn name(&self) -> &str {
        "phi-involution"
    }

    fn description(&self) -> &str {
        "phi is an involution swapping maxS1 with maxT2 and maxS2 with maxT1, keeping lc and column weights"
    }

    fn run(&self, cfg: &SuiteConfig) -> CheckOutcome {
        let mut out = CheckOutcome::new().param("max_weight", cfg.max_weight);
        let all = cfg.all_matrices(cfg.max_weight);
        let total = all.len();
        if out.first_failure("phi", all, |m| self.violation(m)) {
            out.note(format!("{total} matrices"));
        }
        out
    }
}

/// Joint counts of `(|wNE|, lc)` over matrices of weight `n`.
fn ne_lc_table(cfg: &SuiteConfig, n: u32) -> BTreeMap<(u32, u32), u64> {
    let mut t = BTreeMap::new();
    for m in cfg.matrices(n, EnumOptions::default()) {
        *t.entry((m.ne() as u32, m.last_column_weight())).or_insert(0) += 1;
    }
    t
}

fn fish2_symmetry(cfg: &SuiteConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new()
        .param("max_weight", cfg.max_weight)
        .param("degree", cfg.symmetry_degree);
    let f = f_formula(cfg.max_weight);
    for n in 1..=cfg.max_weight {
        let t = ne_lc_table(cfg, n);
        let bad = t.iter().find(|(&(a, b), &c)| t.get(&(b, a)).copied().unwrap_or(0) != c);
        if let Some((&(a, b), _)) = bad {
            out.fail(format!("weight {n}: (ne, lc) = ({a}, {b}) breaks symmetry"), None);
        }
        let agrees = t.iter().all(|(&(a, b), &c)| f.coeff(&[n, b, a]) == BigInt::from(c))
            && f.terms().filter(|(e, _)| e[0] == n).count() == t.len();
        out.require(agrees, || format!("weight {n}: table disagrees with F"));
    }
    let big = f_formula(cfg.symmetry_degree);
    out.require(big.swap_yz() == big, || {
        format!("F({}) is not symmetric in y, z", cfg.symmetry_degree)
    });
    out
}

fn f_formula_check(cfg: &SuiteConfig) -> CheckOutcome {
    let n = cfg.series_degree;
    let mut out = CheckOutcome::new().param("degree", n);
    match brute_series(n) {
        Ok(brute) => {
            let formula = f_formula(n);
            out.require(formula == brute, || {
                format!("F({n}) differs from the enumerated series")
            });
            out.note(format!("{} terms", brute.len()));
        }
        Err(e) => out.fail(e.to_string(), None),
    }
    out
}

fn p_identities(cfg: &SuiteConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new()
        .param("degree", cfg.p_degree)
        .param("max_dim", cfg.recurrence_dim);
    let r = p_checks(cfg.p_degree);
    out.require(r.functional_equation, || "functional equation".into());
    out.require(r.closed_form, || "closed form of P".into());
    out.require(r.inflation, || "inflation identity".into());
    for k in 1..cfg.recurrence_dim {
        out.require(recurrence_holds(k), || format!("recurrence from P_{k} to P_{}", k + 1));
    }
    out
}

fn g_formulas(cfg: &SuiteConfig) -> CheckOutcome {
    let n = cfg.series_degree;
    let mut out = CheckOutcome::new().param("degree", n);
    let g = g_from_f(n);
    for which in 1..=3u8 {
        match g_formula(n, which) {
            Ok(s) => {
                out.require(s == g, || format!("G formula {which} differs from F(x, y, 1)"));
            }
            Err(e) => out.fail(format!("G formula {which}: {e}"), None),
        }
    }
    out
}

fn catalan_statistics(cfg: &SuiteConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new()
        .param("max_order", cfg.max_dyck_order)
        .param("stat_order", cfg.stat_order);

    for n in 0..=cfg.max_dyck_order {
        let paths: Vec<DyckPath> = enumerate_dyck(n).collect();
        out.first_failure(&format!("order {n}"), paths.iter(), |p| {
            let st = p.stats();
            let c1 = c1_of_dyck(p);
            let c2 = c2_of_dyck(p);
            let (s, r) = (c1.component(0), c1.component(1));
            let (t, r2) = (c2.component(0), c2.component(1));
            if !is_c1_pair(&c1) {
                return Some("C1 axioms".into());
            }
            if !is_c2_pair(&c2) {
                return Some("C2 axioms".into());
            }
            let c1_ok = r.mmin() == st.asc && r.mmax() == st.des && s.mmax() == st.ret && s.mmin() == st.pea;
            if !c1_ok {
                return Some("C1-pair extremes differ from (asc, des, ret, pea)".into());
            }
            let c2_ok = r2.mmin() == st.asc && r2.mmax() == st.des && t.mmin() == st.ret && t.mmax() == st.ret;
            if !c2_ok {
                return Some("C2-pair extremes differ from (asc, des, ret, ret)".into());
            }
            None
        });

        let c1_forms: BTreeSet<_> = paths
            .iter()
            .filter_map(|p| canonical_form(&c1_of_dyck(p)).ok())
            .collect();
        let c2_forms: BTreeSet<_> = paths
            .iter()
            .filter_map(|p| canonical_form(&c2_of_dyck(p)).ok())
            .collect();
        out.require(c1_forms.len() == paths.len(), || {
            format!("order {n}: C1 encoding is not injective")
        });
        out.require(c2_forms.len() == paths.len(), || {
            format!("order {n}: C2 encoding is not injective")
        });

        let table = PsiTable::new(n);
        let mut joint = BTreeMap::new();
        out.first_failure(&format!("psi at order {n}"), paths.iter(), |p| {
            let c1 = c1_of_dyck(p);
            let c2 = match table.apply(&c1) {
                Ok(c2) => c2,
                Err(e) => return Some(e.to_string()),
            };
            let (ms, mr) = (c1.component(0).mmax(), c1.component(1).mmax());
            *joint.entry((ms, mr)).or_insert(0usize) += 1;
            if !is_c2_pair(&c2) {
                return Some("image is not a C2-pair".into());
            }
            if ms != c2.component(0).mmax() || mr != c2.component(1).mmax() {
                return Some("max S -> max T or max R -> max R' fails".into());
            }
            None
        });
        let symmetric = joint
            .iter()
            .all(|(&(a, b), &c)| joint.get(&(b, a)).copied().unwrap_or(0) == c);
        out.require(symmetric, || format!("order {n}: (max S, max R) is not symmetric"));
    }

    for n in 1..=cfg.stat_order {
        let stats: Vec<_> = enumerate_dyck(n).map(|p| p.stats()).collect();
        let nn = n as u32;
        for k in 1..=n {
            let count = |f: &dyn Fn(&DyckStats) -> usize| stats.iter().filter(|s| f(s) == k).count();
            let ballot = ballot_count(nn, k as u32).unwrap_or(0);
            let nar = narayana(nn, k as u32).unwrap_or(0);
            for (name, got) in [
                ("asc", count(&|s: &DyckStats| s.asc)),
                ("des", count(&|s: &DyckStats| s.des)),
                ("ret", count(&|s: &DyckStats| s.ret)),
            ] {
                out.require(got as u128 == ballot, || {
                    format!("order {n}: {name}={k} count {got}, ballot {ballot}")
                });
            }
            let pea = count(&|s: &DyckStats| s.pea);
            out.require(pea as u128 == nar, || {
                format!("order {n}: pea={k} count {pea}, Narayana {nar}")
            });
        }
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for s in &stats {
            *left.entry((s.asc, s.ret, s.pea)).or_insert(0) += 1;
            *right.entry((s.ret, s.asc, n - s.pea + 1)).or_insert(0) += 1;
        }
        out.require(left == right, || {
            format!("order {n}: (asc, ret, pea) multiset identity")
        });
        let proj: [fn(&DyckStats) -> usize; 3] = [|s| s.asc, |s| s.des, |s| s.ret];
        for i in 0..3 {
            for j in i + 1..3 {
                let mut joint = BTreeMap::new();
                for s in &stats {
                    *joint.entry((proj[i](s), proj[j](s))).or_insert(0) += 1;
                }
                let sym = joint
                    .iter()
                    .all(|(&(a, b), &c)| joint.get(&(b, a)).copied().unwrap_or(0) == c);
                out.require(sym, || {
                    format!("order {n}: joint distribution {i},{j} of asc/des/ret not symmetric")
                });
            }
        }
    }
    out
}

/// Elements `u, v` with `u < x < v` and `y` incomparable to all three.
fn three_plus_one_witness(p: &Relation, x: usize, y: usize) -> bool {
    let n = p.n();
    (0..n).any(|u| p.has(u, x) && !p.comparable(u, y) && (0..n).any(|v| p.has(x, v) && !p.comparable(v, y)))
        && !p.comparable(x, y)
}

/// Elements `u, v` with `u < y`, `u < v`, `x < v`, and `(u, x)`, `(x, y)`,
/// `(y, v)` incomparable.
fn n_witness(p: &Relation, x: usize, y: usize) -> bool {
    let n = p.n();
    !p.comparable(x, y)
        && (0..n).any(|u| {
            p.has(u, y) && !p.comparable(u, x) && (0..n).any(|v| p.has(u, v) && p.has(x, v) && !p.comparable(y, v))
        })
}

/// Checks that `rel` relates elements exactly as a lemma on cells
/// prescribes: a chain inside each cell, `x rel y` whenever the cell of `x`
/// is weakly in quadrant `q` of the cell of `y`, and nothing else.
fn cell_clause_violation(rel: &Relation, cells: &[Cell], q: Quadrant) -> Option<String> {
    let n = cells.len();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let (xy, yx) = (rel.has(x, y), rel.has(y, x));
            let ok = if cells[x] == cells[y] {
                xy != yx
            } else {
                let pos = cell_position(cells[x], cells[y]).expect("cells of a matrix");
                let back = cell_position(cells[y], cells[x]).expect("cells of a matrix");
                if pos.is_weakly(q) {
                    xy && !yx
                } else if back.is_weakly(q) {
                    yx && !xy
                } else {
                    !xy && !yx
                }
            };
            if !ok {
                return Some(format!("elements {x}, {y} in cells {:?}, {:?}", cells[x], cells[y]));
            }
        }
    }
    None
}

/// The four claims relating an F-triple on a matrix to cell positions.
fn fish_lemma_violation(f: &FTriple) -> Option<String> {
    for x in 0..f.n() {
        for y in 0..f.n() {
            if x == y {
                continue;
            }
            let p = cell_position(f.cells[x], f.cells[y]).expect("cells of a matrix");
            let same = p == CellPosition::Equal;
            if p == CellPosition::StrictSW && !f.s().has(x, y) {
                return Some(format!("StrictSW pair {x}, {y} not in S"));
            }
            if p == CellPosition::StrictNW && !f.t().has(x, y) {
                return Some(format!("StrictNW pair {x}, {y} not in T"));
            }
            if f.s().has(x, y) && !(same || p.is_weakly(Quadrant::SW)) {
                return Some(format!("S pair {x}, {y} not weakly SW"));
            }
            if f.t().has(x, y) && !(same || p.is_weakly(Quadrant::NW)) {
                return Some(format!("T pair {x}, {y} not weakly NW"));
            }
        }
    }
    None
}

/// Cells of the elements of an interval order `r`, through an isomorphism
/// with the order of its own matrix.
fn cells_of_order(r: &Relation) -> Option<Vec<Cell>> {
    let io = matrix_to_order(&order_to_matrix(r).ok()?);
    let emb = find_embedding(
        &RelStructure::single(io.order.clone()),
        &RelStructure::single(r.clone()),
    )
    .ok()??;
    Some(emb.iter().map(|&i| io.cells[i]).collect())
}

fn lemma_suite(cfg: &SuiteConfig) -> CheckOutcome {
    let w = cfg.lemma_weight;
    let mut out = CheckOutcome::new().param("max_weight", w);
    let all = cfg.all_matrices(w);

    out.first_failure("lem-swse", all.iter(), |m| {
        let io = matrix_to_order(m);
        let p = &io.order;
        if p.avoids(PatternId::ThreePlusOne) == m.has_pair_in(CellPosition::StrictSW) {
            return Some("3+1 avoidance versus StrictSW pairs".into());
        }
        if p.avoids(PatternId::N) == m.has_pair_in(CellPosition::StrictNW) {
            return Some("N avoidance versus StrictNW pairs".into());
        }
        for x in 0..p.n() {
            for y in 0..p.n() {
                if x == y {
                    continue;
                }
                let pos = cell_position(io.cells[x], io.cells[y]).expect("cells of a matrix");
                if (pos == CellPosition::StrictSW) != three_plus_one_witness(p, x, y) {
                    return Some(format!("3+1 witness for elements {x}, {y}"));
                }
                if (pos == CellPosition::StrictNW) != n_witness(p, x, y) {
                    return Some(format!("N witness for elements {x}, {y}"));
                }
            }
        }
        None
    });

    out.first_failure("lem-fish / lem-fsft", all.iter(), |m| {
        for (label, f) in [("F1", f1_triple(m)), ("F2", f2_triple(m))] {
            if let Some(v) = check_f_triple(&f.structure).expect("triples have arity three") {
                return Some(format!("{label} violates {} at {:?}", v.axiom, v.witness));
            }
            if let Some(why) = fish_lemma_violation(&f) {
                return Some(format!("{label}: {why}"));
            }
        }
        None
    });

    // lem-c1mat on matrices and on every C1-pair from a Dyck path
    let nw_free: Vec<_> = all.iter().filter(|m| Avoid::StrictNW.admits(m)).collect();
    out.first_failure("lem-c1mat", nw_free.iter(), |m| {
        let f = f1_triple(m);
        let pair = RelStructure::new(f.n(), vec![f.s().clone(), f.r().clone()]).expect("same ground set");
        if !is_c1_pair(&pair) {
            return Some("(S1, R) is not a C1-pair".into());
        }
        cell_clause_violation(f.s(), &f.cells, Quadrant::SW)
    });
    for n in 1..=w as usize {
        out.first_failure("lem-c1mat on Dyck paths", enumerate_dyck(n), |p| {
            let c1 = c1_of_dyck(p);
            let Some(cells) = cells_of_order(c1.component(1)) else {
                return Some("R is not an interval order".into());
            };
            cell_clause_violation(c1.component(0), &cells, Quadrant::SW)
        });
    }

    // lem-C2enum: the reconstructed pairs are C2-pairs and exhaust the
    // isomorphism types
    for n in 1..=w {
        let mut forms = BTreeSet::new();
        let sw_free = cfg.matrices(n, EnumOptions::avoiding(Avoid::StrictSW));
        let ok = out.first_failure("lem-C2enum", sw_free.iter(), |m| {
            let f = f2_triple(m);
            let pair = RelStructure::new(f.n(), vec![f.t().clone(), f.r().clone()]).expect("same ground set");
            if !is_c2_pair(&pair) {
                return Some("(T2, R) is not a C2-pair".into());
            }
            match canonical_form(&pair) {
                Ok(f) => forms.insert(f),
                Err(e) => return Some(e.to_string()),
            };
            cell_clause_violation(f.t(), &f.cells, Quadrant::NW)
        });
        if ok {
            let dyck: BTreeSet<_> = enumerate_dyck(n as usize)
                .filter_map(|p| canonical_form(&c2_of_dyck(&p)).ok())
                .collect();
            out.require(forms == dyck, || {
                format!("weight {n}: C2-pair types differ from Dyck paths")
            });
        }
    }
    out
}

fn conjecture_pat2_check(cfg: &SuiteConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new().param("max_order", cfg.conjecture_order);
    let mut tables = Vec::new();
    for n in 1..=cfg.conjecture_order {
        match conjecture_pat2(n) {
            Ok(r) => {
                if !r.symmetric {
                    out.flag(format!("size {n}: asymmetric cells {:?}", r.asymmetric_cells));
                }
                let rows: Vec<Value> = r
                    .table
                    .iter()
                    .map(|(&(a, b), &c)| json!({"lrmax": a, "rlmax": b, "count": c}))
                    .collect();
                tables.push(json!({"n": n, "total": r.total, "symmetric": r.symmetric, "rows": rows}));
            }
            Err(e) => out.fail(e.to_string(), None),
        }
    }
    out.note(format!("{} tables", tables.len()));
    out.data = Some(Value::Array(tables));
    out
}

fn conjecture_pat1_check(cfg: &SuiteConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new().param("max_order", cfg.conjecture_order);
    let mut tables = Vec::new();
    let rows = |t: &BTreeMap<(usize, usize, usize, usize), usize>| -> Vec<Value> {
        t.iter()
            .map(|(&(a, b, c, d), &n)| json!({"values": [a, b, c, d], "count": n}))
            .collect()
    };
    for n in 1..=cfg.conjecture_order {
        match conjecture_pat1_necessary(n) {
            Ok(r) => {
                if !r.multisets_equal {
                    out.flag(format!("size {n}: corner and matrix multisets differ"));
                }
                if !r.closed_under_inverse {
                    out.flag(format!("size {n}: avoiders not closed under inverse"));
                }
                tables.push(json!({
                    "n": n,
                    "multisets_equal": r.multisets_equal,
                    "closed_under_inverse": r.closed_under_inverse,
                    "permutations": rows(&r.permutations),
                    "matrices": rows(&r.matrices),
                }));
            }
            Err(e) => out.fail(e.to_string(), None),
        }
    }
    out.note(format!("{} tables", tables.len()));
    out.data = Some(Value::Array(tables));
    out
}

fn relcore_invariants(cfg: &SuiteConfig) -> CheckOutcome {
    let w = cfg.lemma_weight.min(5);
    let mut out = CheckOutcome::new().param("max_size", w);
    let posets: Vec<RelStructure> = cfg
        .all_matrices(w)
        .iter()
        .map(|m| RelStructure::single(matrix_to_order(m).order))
        .collect();
    let pairs: Vec<RelStructure> = (1..=w as usize)
        .flat_map(enumerate_dyck)
        .map(|p| c1_of_dyck(&p))
        .collect();

    for s in posets.iter().chain(&pairs) {
        let n = s.n();
        let base = canonical_form(s);
        let avoid: Vec<bool> = PatternId::ALL.iter().map(|&p| s.component(0).avoids(p)).collect();
        let bad = permutations(n).find(|perm| {
            let perm: Vec<usize> = perm.values().iter().map(|v| v - 1).collect();
            let t = s.relabel(&perm);
            canonical_form(&t) != base
                || PatternId::ALL
                    .iter()
                    .zip(&avoid)
                    .any(|(&p, &a)| t.component(0).avoids(p) != a)
        });
        if let Some(perm) = bad {
            out.fail(
                "relabeling changes canonical form or avoidance",
                Some(format!("{} under {perm}", s.to_text())),
            );
            break;
        }
        out.require(contains(s, s) == Ok(true), || {
            format!("structure does not contain itself: {}", s.to_text())
        });
    }
    for s in &posets {
        let r = s.component(0);
        out.require(!r.minimal().is_empty() && !r.maximal().is_empty(), || {
            "empty minimal or maximal set".into()
        });
    }

    // containment is transitive: A in B and B in C give A in C
    let small: Vec<_> = posets.iter().filter(|s| s.n() <= 3).collect();
    let mid: Vec<_> = posets.iter().filter(|s| s.n() == 4).collect();
    let top: Vec<_> = posets.iter().filter(|s| s.n() == 5).collect();
    for a in &small {
        for b in mid.iter().filter(|b| contains(b, a) == Ok(true)) {
            for c in top.iter().filter(|c| contains(c, b) == Ok(true)) {
                out.require(contains(c, a) == Ok(true), || "containment is not transitive".into());
            }
        }
    }
    out
}

/// Observation on how extreme cells change under one extension.
fn extension_extremes_violation(parent: &FishburnMatrix, code: &ExtensionCode) -> Option<String> {
    let child = parent.extend(code).ok()?;
    let k = parent.dim();
    let last: Vec<Cell> = parent.column_cells(k);
    let w = code.letters();
    let kinds = [
        ExtremeKind::WeakNE,
        ExtremeKind::StrictNE,
        ExtremeKind::StrictSE,
        ExtremeKind::WeakSE,
    ];
    let of = |m: &FishburnMatrix| -> Vec<Vec<Cell>> { kinds.iter().map(|&kd| m.extreme_cells(kd)).collect() };
    let (pe, ce) = (of(parent), of(&child));
    let child_last = child.column_cells(k + 1);
    for c in child.nonzero_cells() {
        let is = |i: usize| ce[i].contains(&c);
        let expected: [bool; 4] = if c.col < k {
            [0, 1, 2, 3].map(|i| pe[i].contains(&c))
        } else if c.col == k {
            let i = last.iter().position(|d| d.row == c.row)?;
            let ignored = |r: std::ops::Range<usize>| w[r].iter().all(|&l| l == CodeLetter::I);
            [
                i == 0 && w[0] == CodeLetter::I,
                ignored(0..i),
                ignored(i + 1..w.len()),
                i == w.len() - 1 && w[i] == CodeLetter::I,
            ]
        } else {
            [c == child_last[0], true, true, c == *child_last.last()?]
        };
        for (i, &want) in expected.iter().enumerate() {
            if is(i) != want {
                return Some(format!("cell {:?} of {child} as {:?}: expected {want}", c, kinds[i]));
            }
        }
    }
    None
}

fn fishmat_invariants(cfg: &SuiteConfig) -> CheckOutcome {
    let w = cfg.lemma_weight;
    let mut out = CheckOutcome::new()
        .param("max_weight", cfg.max_weight)
        .param("lemma_weight", w)
        .param("max_dim", 5);

    // matrices are in bijection with unlabeled interval orders
    for n in 1..=cfg.max_weight {
        let ms = cfg.matrices(n, EnumOptions::default());
        let distinct: BTreeSet<_> = ms.iter().collect();
        let forms: BTreeSet<_> = ms
            .iter()
            .filter_map(|m| canonical_form(&RelStructure::single(matrix_to_order(m).order)).ok())
            .collect();
        out.require(distinct.len() == ms.len() && forms.len() == ms.len(), || {
            format!("weight {n}: matrices or their orders repeat")
        });
    }

    let all = cfg.all_matrices(w);
    out.first_failure("matrix and order", all.iter(), |m| {
        let io = matrix_to_order(m);
        let p = &io.order;
        if p.n() != m.weight() as usize {
            return Some("size differs from weight".into());
        }
        if p.minimal().len() != m.first_row_weight() as usize {
            return Some("minimal elements differ from first-row weight".into());
        }
        if p.maximal().len() != m.last_column_weight() as usize {
            return Some("maximal elements differ from last-column weight".into());
        }
        for x in 0..p.n() {
            for y in 0..p.n() {
                let twins = (0..p.n()).all(|z| p.has(z, x) == p.has(z, y) && p.has(x, z) == p.has(y, z));
                if twins != (io.cells[x] == io.cells[y]) {
                    return Some(format!("indistinguishability of {x}, {y}"));
                }
            }
        }
        if order_to_matrix(p).as_ref() != Ok(*m) {
            return Some("order does not map back".into());
        }
        None
    });

    out.first_failure("extreme cells and transpose", all.iter(), |m| {
        let sub = |a: ExtremeKind, b: ExtremeKind| {
            let big = m.extreme_cells(b);
            m.extreme_cells(a).iter().all(|c| big.contains(c))
        };
        if !sub(ExtremeKind::WeakNE, ExtremeKind::StrictNE) || !sub(ExtremeKind::WeakSE, ExtremeKind::StrictSE) {
            return Some("weak extreme cell that is not strong".into());
        }
        let t = m.antidiagonal_transpose();
        if t.antidiagonal_transpose() != **m || t.weight() != m.weight() {
            return Some("transpose is not a weight-preserving involution".into());
        }
        let same = [
            (FishburnMatrix::ne(m), t.ne()),
            (
                m.extreme_weight(ExtremeKind::StrictNE) as usize,
                t.extreme_weight(ExtremeKind::StrictNE) as usize,
            ),
            (m.first_row_weight() as usize, t.last_column_weight() as usize),
            (
                m.has_pair_in(CellPosition::StrictNW) as usize,
                t.has_pair_in(CellPosition::StrictNW) as usize,
            ),
            (
                m.has_pair_in(CellPosition::StrictSW) as usize,
                t.has_pair_in(CellPosition::StrictSW) as usize,
            ),
        ];
        if same.iter().any(|(a, b)| a != b) {
            return Some(format!("transpose {t} changes a preserved quantity"));
        }
        None
    });

    // extension calculus over primitive matrices up to dimension five
    let mut level = vec![FishburnMatrix::single(1)];
    for k in 1..5 {
        let mut next = Vec::new();
        for p in &level {
            let codes = ExtensionCode::all_valid(p.column_cells(k).len());
            for code in &codes {
                let Ok(child) = p.extend(code) else {
                    out.fail(format!("valid code {code} rejected"), Some(p.to_string()));
                    continue;
                };
                out.require(child.decompose().as_ref() == Ok(&(p.clone(), code.clone())), || {
                    format!("decompose of {child} does not return ({p}, {code})")
                });
                if let Some(why) = extension_extremes_violation(p, code) {
                    out.fail(
                        format!("extension extremes: {why}"),
                        Some(format!("{p} with code {code}")),
                    );
                }
                next.push(child);
            }
        }
        let built: BTreeSet<_> = next.iter().cloned().collect();
        let listed: BTreeSet<_> = primitive_matrices_of_dim(k + 1).into_iter().collect();
        out.require(built.len() == next.len() && built == listed, || {
            format!(
                "dimension {}: code sequences do not biject with primitive matrices",
                k + 1
            )
        });
        level = next;
    }
    out
}

/// Dimension and row and column weights, the data a chain-avoidance
/// bijection must keep.
type LineWeights = (usize, Vec<u32>, Vec<u32>);

fn chain_avoidance(cfg: &SuiteConfig) -> CheckOutcome {
    let mut out = CheckOutcome::new()
        .param("max_weight", cfg.max_weight)
        .param("max_chain", 4);
    let all = cfg.all_matrices(cfg.max_weight);
    for chain in 2..=4 {
        let mut inc: BTreeMap<(u32, LineWeights), usize> = BTreeMap::new();
        let mut dec = inc.clone();
        for m in &all {
            let key = || {
                let k = m.dim();
                let rows = (1..=k).map(|i| m.row_weight(i)).collect();
                let cols = (1..=k).map(|j| m.column_weight(j)).collect();
                (m.weight(), (k, rows, cols))
            };
            if m.longest_chain(true) < chain {
                *inc.entry(key()).or_insert(0) += 1;
            }
            if m.longest_chain(false) < chain {
                *dec.entry(key()).or_insert(0) += 1;
            }
        }
        let counts = |t: &BTreeMap<(u32, LineWeights), usize>| -> Vec<usize> {
            (1..=cfg.max_weight)
                .map(|n| t.iter().filter(|(k, _)| k.0 == n).map(|(_, c)| c).sum())
                .collect()
        };
        out.note(format!("length {chain}: {:?}", counts(&inc)));
        if let Some((key, _)) = inc
            .iter()
            .find(|(k, c)| dec.get(*k) != Some(*c))
            .or_else(|| dec.iter().find(|(k, c)| inc.get(*k) != Some(*c)))
        {
            out.fail(
                format!("length {chain}: classes differ"),
                Some(format!(
                    "dimension {} rows {:?} columns {:?}",
                    key.1 .0, key.1 .1, key.1 .2
                )),
            );
        }
    }
    out
}

fn permlab_inverse(cfg: &SuiteConfig) -> CheckOutcome {
    let max = cfg.conjecture_order.min(7);
    let mut out = CheckOutcome::new().param("max_size", max);
    for n in 1..=max {
        out.first_failure(&format!("size {n}"), permutations(n), |p| {
            let (a, b) = (corner_stats(p), corner_stats(&p.inverse()));
            let ok = a.lr_max == b.rl_min && a.rl_min == b.lr_max && a.lr_min == b.lr_min && a.rl_max == b.rl_max;
            (!ok).then(|| "corner statistics are not reflected".into())
        });
        out.first_failure(&format!("size {n}"), avoiders(n), |p| {
            (!crate::permlab::avoids_bivincular(&p.inverse())).then(|| "inverse contains the pattern".into())
        });
    }
    out
}

/// Deliberately wrong maps for fault-injection runs.
pub mod fixtures {
    use crate::fishmat::FishburnMatrix;
    use crate::ftriples::phi;

    /// `phi`, then the top entry of the last column moved one row down
    /// whenever the first row keeps another nonzero entry.
    pub fn corrupted_phi(m: &FishburnMatrix) -> FishburnMatrix {
        let p = phi(m);
        let mut rows = p.rows();
        let k = rows.len();
        if k >= 2 && rows[0][k - 1] > 0 && rows[1][k - 1] == 0 && rows[0].iter().filter(|&&v| v > 0).count() > 1 {
            rows[1][k - 1] = rows[0][k - 1];
            rows[0][k - 1] = 0;
        }
        FishburnMatrix::validate(rows).unwrap_or(p)
    }
}
