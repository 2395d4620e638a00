//! Named statistics on matrices, Dyck paths and permutations, and joint
//! distribution tables over an enumeration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::catalan::{enumerate_dyck, DyckPath};
use crate::fishmat::{enumerate_matrices_parallel, Avoid, EnumOptions, ExtremeKind, FishburnMatrix};
use crate::ftriples::{f1_triple, f2_triple};
use crate::permlab::{avoiders, corner_stats, Permutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatsError {
    #[error("unknown statistic {0:?}")]
    UnknownStatistic(String),
    #[error("no statistics requested")]
    NoStatistics,
    #[error("n = {n} exceeds the bound {bound}")]
    BoundExceeded { n: usize, bound: usize },
}

pub trait Statistic<T>: Send + Sync {
    fn name(&self) -> &str;
    fn description(&self) -> &str;
    fn eval(&self, item: &T) -> usize;
}

struct FnStatistic<T> {
    name: &'static str,
    description: &'static str,
    f: fn(&T) -> usize,
}

impl<T> Statistic<T> for FnStatistic<T> {
    fn name(&self) -> &str {
        self.name
    }

    fn description(&self) -> &str {
        self.description
    }

    fn eval(&self, item: &T) -> usize {
        (self.f)(item)
    }
}

/// Statistics selectable by name, in registration order.
pub struct StatRegistry<T> {
    stats: Vec<Box<dyn Statistic<T>>>,
}

impl<T: 'static> StatRegistry<T> {
    pub fn new() -> Self {
        StatRegistry { stats: Vec::new() }
    }

    pub fn register(&mut self, stat: Box<dyn Statistic<T>>) {
        self.stats.retain(|s| s.name() != stat.name());
        self.stats.push(stat);
    }

    fn add(&mut self, name: &'static str, description: &'static str, f: fn(&T) -> usize) {
        self.register(Box::new(FnStatistic { name, description, f }));
    }

    pub fn get(&self, name: &str) -> Option<&dyn Statistic<T>> {
        self.stats.iter().find(|s| s.name() == name).map(|s| s.as_ref())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Statistic<T>> {
        self.stats.iter().map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&str> {
        self.stats.iter().map(|s| s.name()).collect()
    }

    fn select(&self, names: &[String]) -> Result<Vec<&dyn Statistic<T>>, StatsError> {
        if names.is_empty() {
            return Err(StatsError::NoStatistics);
        }
        names
            .iter()
            .map(|n| self.get(n).ok_or_else(|| StatsError::UnknownStatistic(n.clone())))
            .collect()
    }
}

impl<T: 'static> Default for StatRegistry<T> {
    fn default() -> Self {
        Self::new()
    }
}

pub fn matrix_statistics() -> StatRegistry<FishburnMatrix> {
    let mut r = StatRegistry::<FishburnMatrix>::new();
    r.add("w", "weight", |m| m.weight() as usize);
    r.add("lc", "weight of the last column", |m| m.last_column_weight() as usize);
    r.add("fr", "weight of the first row", |m| m.first_row_weight() as usize);
    r.add("pc", "weight of the columns before the last", |m| {
        m.preceding_columns_weight() as usize
    });
    r.add("dim", "number of rows", |m| m.dim());
    r.add("diag", "positive cells on the main diagonal", |m| {
        m.positive_diagonal_cells()
    });
    r.add("ne", "number of wNE-cells", |m| {
        m.extreme_cells(ExtremeKind::WeakNE).len()
    });
    r.add("ne_weight", "total weight of wNE-cells", |m| {
        m.extreme_weight(ExtremeKind::WeakNE) as usize
    });
    r.add("sne", "number of sNE-cells", |m| {
        m.extreme_cells(ExtremeKind::StrictNE).len()
    });
    r.add("sne_weight", "total weight of sNE-cells", |m| {
        m.extreme_weight(ExtremeKind::StrictNE) as usize
    });
    r.add("sse", "number of sSE-cells", |m| {
        m.extreme_cells(ExtremeKind::StrictSE).len()
    });
    r.add("sse_weight", "total weight of sSE-cells", |m| {
        m.extreme_weight(ExtremeKind::StrictSE) as usize
    });
    r.add("wse", "number of wSE-cells", |m| {
        m.extreme_cells(ExtremeKind::WeakSE).len()
    });
    r.add("wse_weight", "total weight of wSE-cells", |m| {
        m.extreme_weight(ExtremeKind::WeakSE) as usize
    });
    r.add("maxS1", "maximal elements of S in the F1-triple", |m| {
        f1_triple(m).s().mmax()
    });
    r.add("maxT1", "maximal elements of T in the F1-triple", |m| {
        f1_triple(m).t().mmax()
    });
    r.add("minS1", "minimal elements of S in the F1-triple", |m| {
        f1_triple(m).s().mmin()
    });
    r.add("maxS2", "maximal elements of S in the F2-triple", |m| {
        f2_triple(m).s().mmax()
    });
    r.add("maxT2", "maximal elements of T in the F2-triple", |m| {
        f2_triple(m).t().mmax()
    });
    r.add("minS2", "minimal elements of S in the F2-triple", |m| {
        f2_triple(m).s().mmin()
    });
    r.add("maxR", "maximal elements of the interval order", |m| {
        f1_triple(m).r().mmax()
    });
    r.add("inc", "longest increasing chain of nonzero cells", |m| {
        m.longest_chain(true)
    });
    r.add("dec", "longest decreasing chain of nonzero cells", |m| {
        m.longest_chain(false)
    });
    r
}

pub fn dyck_statistics() -> StatRegistry<DyckPath> {
    let mut r = StatRegistry::<DyckPath>::new();
    r.add("asc", "length of the initial ascent", |p| p.stats().asc);
    r.add("des", "length of the final descent", |p| p.stats().des);
    r.add("ret", "number of returns", |p| p.stats().ret);
    r.add("pea", "number of peaks", |p| p.stats().pea);
    r
}

pub fn perm_statistics() -> StatRegistry<Permutation> {
    let mut r = StatRegistry::<Permutation>::new();
    r.add("lrmax", "left-to-right maxima", |p| corner_stats(p).lr_max);
    r.add("lrmin", "left-to-right minima", |p| corner_stats(p).lr_min);
    r.add("rlmax", "right-to-left maxima", |p| corner_stats(p).rl_max);
    r.add("rlmin", "right-to-left minima", |p| corner_stats(p).rl_min);
    r
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObjectKind {
    /// Fishburn matrices of weight `n`.
    Matrices,
    /// Dyck paths of order `n`.
    Dyck,
    /// Permutations of size `n` avoiding the bivincular pattern.
    Perms,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRequest {
    pub kind: ObjectKind,
    pub n: usize,
    pub stats: Vec<String>,
    /// Matrices only.
    pub options: EnumOptions,
    pub jobs: usize,
}

impl TableRequest {
    pub fn new(kind: ObjectKind, n: usize, stats: &[&str]) -> Self {
        TableRequest {
            kind,
            n,
            stats: stats.iter().map(|s| s.to_string()).collect(),
            options: EnumOptions::default(),
            jobs: 1,
        }
    }

    pub fn primitive(mut self) -> Self {
        self.options.primitive_only = true;
        self
    }

    pub fn avoiding(mut self, avoid: Avoid) -> Self {
        self.options.avoid = avoid;
        self
    }
}

/// Counts of each tuple of statistic values, tuples in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionTable {
    pub stats: Vec<String>,
    pub rows: BTreeMap<Vec<usize>, usize>,
}

impl DistributionTable {
    pub fn total(&self) -> usize {
        self.rows.values().sum()
    }

    pub fn count(&self, values: &[usize]) -> usize {
        self.rows.get(values).copied().unwrap_or(0)
    }

    /// For two statistics: whether the count of `(a, b)` always equals the
    /// count of `(b, a)`.
    pub fn is_symmetric(&self) -> Option<bool> {
        if self.stats.len() != 2 {
            return None;
        }
        Some(self.rows.iter().all(|(k, &c)| self.count(&[k[1], k[0]]) == c))
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.stats.join(",");
        out.push_str(",count\n");
        for (k, c) in &self.rows {
            for v in k {
                let _ = write!(out, "{v},");
            }
            let _ = writeln!(out, "{c}");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|(k, c)| serde_json::json!({ "values": k, "count": c }))
            .collect();
        serde_json::json!({ "stats": self.stats, "total": self.total(), "rows": rows })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in &self.rows {
            let parts: Vec<String> = self.stats.iter().zip(k).map(|(s, v)| format!("{s}={v}")).collect();
            let _ = writeln!(out, "{}  {c}", parts.join(" "));
        }
        let _ = writeln!(out, "total {}", self.total());
        out
    }
}

fn tabulate<T: Sync + 'static>(
    registry: &StatRegistry<T>,
    names: &[String],
    items: &[T],
    jobs: usize,
) -> Result<DistributionTable, StatsError> {
    let stats = registry.select(names)?;
    let eval = |item: &T| stats.iter().map(|s| s.eval(item)).collect::<Vec<_>>();
    let keys: Vec<Vec<usize>> = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| items.par_iter().map(eval).collect())
    } else {
        items.iter().map(eval).collect()
    };
    let mut rows = BTreeMap::new();
    for k in keys {
        *rows.entry(k).or_insert(0) += 1;
    }
    Ok(DistributionTable {
        stats: names.to_vec(),
        rows,
    })
}

/// Joint distribution of the requested statistics; `bound` caps `n`.
pub fn distribution_table(req: &TableRequest, bound: usize) -> Result<DistributionTable, StatsError> {
    if req.n > bound {
        return Err(StatsError::BoundExceeded { n: req.n, bound });
    }
    match req.kind {
        ObjectKind::Matrices => {
            let items = if req.n == 0 {
                Vec::new()
            } else {
                enumerate_matrices_parallel(req.n as u32, req.options, req.jobs)
            };
            tabulate(&matrix_statistics(), &req.stats, &items, req.jobs)
        }
        ObjectKind::Dyck => {
            let items: Vec<_> = enumerate_dyck(req.n).collect();
            tabulate(&dyck_statistics(), &req.stats, &items, req.jobs)
        }
        ObjectKind::Perms => {
            let items: Vec<_> = avoiders(req.n).collect();
            tabulate(&perm_statistics(), &req.stats, &items, req.jobs)
        }
    }
}
