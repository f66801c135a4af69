//! Budgeted separation (Istratescu type): the largest `t` such that some
//! `k+1` points are pairwise at least `t` apart.

use super::alpha::{farthest_first, min_pairwise};
use super::{binomial, Budget, BudgetedValue, Mode, SolverConfig, Witness};
use crate::error::{Error, Result};
use crate::normed::{distance_matrix, DistMatrix, PointSet};

pub fn beta_sep(s: &PointSet, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    beta_sep_matrix(&distance_matrix(s), k, mode, cfg)
}

pub fn beta_sep_matrix(d: &DistMatrix, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    let n = d.len();
    let size = k.get() + 1;
    if n < size {
        return Err(Error::UndefinedBudget(format!(
            "separation needs {size} points but the set has {n}"
        )));
    }
    let count = binomial(n, size);
    let within_cap = count <= cfg.caps.beta_subsets;
    match mode {
        Mode::Exact if !within_cap => Err(Error::Capacity {
            what: "separated subset search".into(),
            size: count,
            cap: cfg.caps.beta_subsets,
        }),
        Mode::Exact => Ok(beta_exact(d, size)),
        Mode::Auto if within_cap => Ok(beta_exact(d, size)),
        Mode::Heuristic | Mode::Auto => Ok(beta_lower_bound(d, k.get())),
    }
}

/// Branch and bound over subsets in lexicographic order. A branch is cut as
/// soon as its running minimum cannot beat the incumbent, so the witness is
/// the lexicographically first maximizer.
fn beta_exact(d: &DistMatrix, size: usize) -> BudgetedValue {
    let n = d.len();
    let seed = beta_lower_bound(d, size - 1);
    let mut best = f64::NEG_INFINITY;
    let mut best_set: Vec<usize> = Vec::new();
    let mut chosen = Vec::with_capacity(size);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        d: &DistMatrix,
        n: usize,
        size: usize,
        start: usize,
        cur: f64,
        floor: f64,
        chosen: &mut Vec<usize>,
        best: &mut f64,
        best_set: &mut Vec<usize>,
    ) {
        if chosen.len() == size {
            if cur > *best {
                *best = cur;
                best_set.clone_from(chosen);
            }
            return;
        }
        let remaining = size - chosen.len();
        for c in start..=(n - remaining) {
            let m = chosen.iter().map(|&i| d.get(i, c)).fold(cur, f64::min);
            // `floor` is a known achievable value; branches strictly below it
            // can never be the lexicographically first maximizer
            if m <= *best || m < floor {
                continue;
            }
            chosen.push(c);
            rec(d, n, size, c + 1, m, floor, chosen, best, best_set);
            chosen.pop();
        }
    }

    rec(
        d,
        n,
        size,
        0,
        f64::INFINITY,
        seed.value,
        &mut chosen,
        &mut best,
        &mut best_set,
    );
    if best_set.is_empty() {
        return BudgetedValue::exact(seed.value, seed.witness);
    }
    BudgetedValue::exact(best, Witness::Subset(best_set))
}

/// Farthest-first subset: a feasible `(k+1)`-subset, hence a lower bound.
pub fn beta_lower_bound(d: &DistMatrix, k: usize) -> BudgetedValue {
    let mut subset = farthest_first(d, k + 1);
    subset.sort_unstable();
    BudgetedValue::lower(min_pairwise(d, &subset), Witness::Subset(subset))
}
