//! Minimax-diameter partitioning (budgeted Kuratowski measure).
//!
//! The exact solver walks the sorted list of pairwise distances and asks,
//! for a candidate threshold `t`, whether the graph joining pairs at distance
//! `> t` is `k`-colorable. Color classes are exactly the parts of a
//! partition whose diameters are all `<= t`.

use super::coloring::{k_coloring, Graph};
use super::{Budget, BudgetedValue, Mode, Partition, SolverConfig, Witness};
use crate::error::{Error, Result};
use crate::normed::{distance_matrix, DistMatrix, PointSet};

pub fn alpha_budget(s: &PointSet, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    alpha_budget_matrix(&distance_matrix(s), k, mode, cfg)
}

pub fn alpha_budget_matrix(d: &DistMatrix, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    if d.is_empty() {
        return Err(Error::input("alpha of an empty set"));
    }
    // one part or one point per part needs no search
    let within_cap = d.len() <= cfg.caps.alpha_points || k.get() == 1 || k.get() >= d.len();
    match mode {
        Mode::Exact if !within_cap => Err(Error::Capacity {
            what: "minimax partition".into(),
            size: d.len() as u128,
            cap: cfg.caps.alpha_points as u128,
        }),
        Mode::Exact => Ok(alpha_exact(d, k.get())),
        Mode::Auto if within_cap => Ok(alpha_exact(d, k.get())),
        Mode::Heuristic | Mode::Auto => Ok(alpha_upper_bound(d, k.get())),
    }
}

fn alpha_exact(d: &DistMatrix, k: usize) -> BudgetedValue {
    let n = d.len();
    if k >= n {
        return BudgetedValue::exact(0.0, Witness::Partition(Partition::singletons(n)));
    }
    if k == 1 {
        return BudgetedValue::exact(d.max(), Witness::Partition(Partition::whole(n)));
    }
    let cands = d.thresholds();
    // the largest candidate is the diameter, where one part suffices
    let mut lo = 0usize;
    let mut hi = cands.len() - 1;
    let mut best: Option<Vec<usize>> = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match k_coloring(&Graph::above_threshold(d, cands[mid]), k) {
            Some(colors) => {
                hi = mid;
                best = Some(colors);
            }
            None => lo = mid + 1,
        }
    }
    let best = best.unwrap_or_else(|| {
        k_coloring(&Graph::above_threshold(d, cands[hi]), k).expect("diameter threshold is 1-colorable")
    });
    let partition = Partition::from_labels(&best);
    let value = partition
        .parts()
        .iter()
        .map(|p| d.diameter_of(p))
        .fold(0.0, f64::max);
    debug_assert_eq!(value, cands[hi]);
    BudgetedValue::exact(value, Witness::Partition(partition))
}

/// Farthest-first seeding followed by single-point moves that lower the
/// worst part diameter. Returns a feasible partition.
pub fn alpha_upper_bound(d: &DistMatrix, k: usize) -> BudgetedValue {
    let n = d.len();
    if k >= n {
        return BudgetedValue::upper(0.0, Witness::Partition(Partition::singletons(n)));
    }
    let seeds = farthest_first(d, k);
    let mut labels: Vec<usize> = (0..n)
        .map(|i| {
            let mut best = 0;
            for (s, &c) in seeds.iter().enumerate() {
                if d.get(i, c) < d.get(i, seeds[best]) {
                    best = s;
                }
            }
            best
        })
        .collect();

    let diam = |labels: &[usize], part: usize| -> f64 {
        let members: Vec<usize> = (0..n).filter(|&i| labels[i] == part).collect();
        d.diameter_of(&members)
    };
    let mut diams: Vec<f64> = (0..k).map(|p| diam(&labels, p)).collect();
    for _ in 0..(4 * n * k) {
        let worst = diams.iter().copied().fold(0.0, f64::max);
        let mut improved = false;
        'moves: for i in 0..n {
            let from = labels[i];
            if diams[from] < worst {
                continue;
            }
            for to in 0..k {
                if to == from {
                    continue;
                }
                labels[i] = to;
                let (df, dt) = (diam(&labels, from), diam(&labels, to));
                let others = (0..k)
                    .filter(|&p| p != from && p != to)
                    .map(|p| diams[p])
                    .fold(0.0, f64::max);
                let new_worst = df.max(dt).max(others);
                let count_worst = |ds: &[f64]| ds.iter().filter(|&&x| x >= worst).count();
                let mut trial = diams.clone();
                trial[from] = df;
                trial[to] = dt;
                if new_worst < worst || (new_worst == worst && count_worst(&trial) < count_worst(&diams)) {
                    diams = trial;
                    improved = true;
                    break 'moves;
                }
                labels[i] = from;
            }
        }
        if !improved {
            break;
        }
    }
    let partition = Partition::from_labels(&labels);
    let value = partition
        .parts()
        .iter()
        .map(|p| d.diameter_of(p))
        .fold(0.0, f64::max);
    BudgetedValue::upper(value, Witness::Partition(partition))
}

/// Lower bound from a separated subset: any `k+1` points pairwise at least
/// `t` apart force some part of any `k`-partition to have diameter `>= t`.
pub fn alpha_lower_bound(d: &DistMatrix, k: usize) -> BudgetedValue {
    let n = d.len();
    if k >= n {
        return BudgetedValue::lower(0.0, Witness::Subset(Vec::new()));
    }
    let mut best_subset = farthest_first(d, k + 1);
    let mut best = min_pairwise(d, &best_subset);
    let cands = d.thresholds();
    for &t in cands.iter().rev() {
        if t <= best {
            break;
        }
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if d.get(i, j) >= t {
                    g.add_edge(i, j);
                }
            }
        }
        let clique = g.greedy_clique();
        if clique.len() > k {
            best_subset = clique[..=k].to_vec();
            best = min_pairwise(d, &best_subset);
            break;
        }
    }
    best_subset.sort_unstable();
    BudgetedValue::lower(best, Witness::Subset(best_subset))
}

/// Gonzalez traversal starting at index 0; ties go to the lowest index.
pub(crate) fn farthest_first(d: &DistMatrix, count: usize) -> Vec<usize> {
    let n = d.len();
    let count = count.min(n);
    let mut chosen = vec![0usize];
    let mut near: Vec<f64> = (0..n).map(|i| d.get(i, 0)).collect();
    while chosen.len() < count {
        let mut far = 0;
        for i in 0..n {
            if near[i] > near[far] {
                far = i;
            }
        }
        if near[far] == 0.0 {
            // remaining points duplicate chosen ones; take the first unchosen
            far = (0..n).find(|i| !chosen.contains(i)).unwrap();
        }
        chosen.push(far);
        for i in 0..n {
            near[i] = near[i].min(d.get(i, far));
        }
    }
    chosen
}

pub(crate) fn min_pairwise(d: &DistMatrix, subset: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    for (a, &i) in subset.iter().enumerate() {
        for &j in &subset[a + 1..] {
            best = best.min(d.get(i, j));
        }
    }
    if best.is_infinite() {
        0.0
    } else {
        best
    }
}
