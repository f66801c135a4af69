//! k-center with centers restricted to a declared pool (budgeted Hausdorff
//! measure). The pool is what distinguishes nets taken inside a subspace from
//! nets taken in the ambient space.

use serde::{Deserialize, Serialize};

use super::alpha::alpha_lower_bound;
use super::{binomial, Budget, BudgetedValue, CenterChoice, Mode, SolverConfig, Witness};
use crate::error::{Error, Result};
use crate::normed::{DistMatrix, PointSet};

/// Distances from every point (row) to every pool candidate (column).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl CrossMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut d: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(d(i, j));
            }
        }
        CrossMatrix { rows, cols, data }
    }

    pub fn between(points: &PointSet, pool: &PointSet) -> Result<Self> {
        if points.space() != pool.space() {
            return Err(Error::DomainMismatch("points and pool live in different spaces".into()));
        }
        let sp = points.space();
        Ok(CrossMatrix::from_fn(points.len(), pool.len(), |i, j| {
            sp.dist(&points.points()[i], &pool.points()[j])
        }))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Covering radius of `centers` and the nearest-center assignment
    /// (lowest position wins ties).
    pub fn radius(&self, centers: &[usize]) -> (f64, Vec<usize>) {
        let mut worst = 0.0f64;
        let mut assignment = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut best = 0;
            for (pos, &c) in centers.iter().enumerate() {
                if self.get(i, c) < self.get(i, centers[best]) {
                    best = pos;
                }
            }
            worst = worst.max(self.get(i, centers[best]));
            assignment.push(best);
        }
        (worst, assignment)
    }
}

pub fn gamma_budget(
    s: &PointSet,
    k: Budget,
    pool: &PointSet,
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    gamma_budget_cross(&CrossMatrix::between(s, pool)?, k, mode, cfg)
}

pub fn gamma_budget_cross(cross: &CrossMatrix, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    if cross.rows == 0 {
        return Err(Error::input("gamma of an empty set"));
    }
    if cross.cols == 0 {
        return Err(Error::input("center pool must be nonempty"));
    }
    let kk = k.get().min(cross.cols);
    let count = binomial(cross.cols, kk);
    let within_cap = count <= cfg.caps.gamma_subsets;
    match mode {
        Mode::Exact if !within_cap => Err(Error::Capacity {
            what: "k-center enumeration".into(),
            size: count,
            cap: cfg.caps.gamma_subsets,
        }),
        Mode::Exact => Ok(gamma_exact(cross, kk)),
        Mode::Auto if within_cap => Ok(gamma_exact(cross, kk)),
        Mode::Heuristic | Mode::Auto => Ok(gamma_upper_bound(cross, kk)),
    }
}

/// Lexicographic enumeration of `kk`-subsets of the pool; the first subset
/// attaining the minimum is the witness.
fn gamma_exact(cross: &CrossMatrix, kk: usize) -> BudgetedValue {
    let n = cross.rows;
    let m = cross.cols;
    let mut best_val = f64::INFINITY;
    let mut best_set: Vec<usize> = (0..kk).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(kk);
    // mins[level] holds per-point nearest distance after `level` centers
    let mut mins: Vec<Vec<f64>> = vec![vec![f64::INFINITY; n]; kk + 1];

    fn rec(
        cross: &CrossMatrix,
        kk: usize,
        m: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        mins: &mut Vec<Vec<f64>>,
        best_val: &mut f64,
        best_set: &mut Vec<usize>,
    ) {
        let level = chosen.len();
        if level == kk {
            let worst = mins[level].iter().copied().fold(0.0, f64::max);
            if worst < *best_val {
                *best_val = worst;
                best_set.clone_from(chosen);
            }
            return;
        }
        let remaining = kk - level;
        for c in start..=(m - remaining) {
            let (lo, hi) = mins.split_at_mut(level + 1);
            for (i, slot) in hi[0].iter_mut().enumerate() {
                *slot = lo[level][i].min(cross.get(i, c));
            }
            chosen.push(c);
            rec(cross, kk, m, c + 1, chosen, mins, best_val, best_set);
            chosen.pop();
        }
    }

    rec(cross, kk, m, 0, &mut chosen, &mut mins, &mut best_val, &mut best_set);
    let (value, assignment) = cross.radius(&best_set);
    BudgetedValue::exact(
        value,
        Witness::Centers(CenterChoice {
            centers: best_set,
            assignment,
        }),
    )
}

/// Pool-restricted farthest-first: start from the best single center, then
/// repeatedly add the pool candidate nearest the currently worst-covered
/// point; finish with single swaps while they help.
pub fn gamma_upper_bound(cross: &CrossMatrix, kk: usize) -> BudgetedValue {
    let m = cross.cols;
    let kk = kk.min(m);
    let first = (0..m)
        .min_by(|&a, &b| cross.radius(&[a]).0.total_cmp(&cross.radius(&[b]).0).then(a.cmp(&b)))
        .unwrap();
    let mut centers = vec![first];
    while centers.len() < kk {
        let (_, assign) = cross.radius(&centers);
        let far = (0..cross.rows)
            .max_by(|&a, &b| {
                let da = cross.get(a, centers[assign[a]]);
                let db = cross.get(b, centers[assign[b]]);
                da.total_cmp(&db).then(b.cmp(&a))
            })
            .unwrap();
        let next = (0..m)
            .filter(|c| !centers.contains(c))
            .min_by(|&a, &b| cross.get(far, a).total_cmp(&cross.get(far, b)).then(a.cmp(&b)))
            .unwrap();
        centers.push(next);
    }
    let mut current = cross.radius(&centers).0;
    let mut improved = true;
    let mut rounds = 0;
    while improved && rounds < 50 {
        improved = false;
        rounds += 1;
        'swap: for pos in 0..centers.len() {
            for c in 0..m {
                if centers.contains(&c) {
                    continue;
                }
                let old = centers[pos];
                centers[pos] = c;
                let r = cross.radius(&centers).0;
                if r < current {
                    current = r;
                    improved = true;
                    break 'swap;
                }
                centers[pos] = old;
            }
        }
    }
    centers.sort_unstable();
    let (value, assignment) = cross.radius(&centers);
    BudgetedValue::upper(value, Witness::Centers(CenterChoice { centers, assignment }))
}

/// Lower bound: every point needs some pool candidate, and `k+1` points
/// pairwise `t` apart force a radius of at least `t/2`.
pub fn gamma_lower_bound(cross: &CrossMatrix, points: &DistMatrix, k: usize) -> BudgetedValue {
    let reach = (0..cross.rows)
        .map(|i| (0..cross.cols).map(|c| cross.get(i, c)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let sep = alpha_lower_bound(points, k);
    if reach >= 0.5 * sep.value {
        BudgetedValue::lower(reach, Witness::None)
    } else {
        BudgetedValue::lower(0.5 * sep.value, sep.witness)
    }
}
