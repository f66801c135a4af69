//! Equicontinuity moduli.
//!
//! `ω_n(M)` asks for a partition of the domain into at most `n` parts on which
//! every `f ∈ M` has small oscillation. Because the per-part condition only
//! involves pairs of points, it equals the minimax-diameter partition of the
//! domain under the conflict pseudometric `d_M(x, y) = max_f ‖f(x) − f(y)‖`.
//! The extended modulus first subtracts a correction `φ_{j(f)}` from each
//! function; for a fixed assignment the same reduction applies.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{FunctionFamily, PhiPool};
use crate::error::{Error, Result};
use crate::measures::{
    alpha_budget_matrix, alpha_lower_bound, binomial, combinations, gamma_budget_cross, Budget, BudgetedValue,
    CorrectedPartition, CrossMatrix, Mode, Partition, SolverConfig, Witness,
};
use crate::normed::{DistMatrix, SpaceTag, Tolerance, Vector};

/// Budgets `(n, m)`: at most `n` domain parts and `m` correction functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaBudget {
    pub n: Budget,
    pub m: Budget,
}

impl OmegaBudget {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Ok(OmegaBudget {
            n: Budget::new(n)?,
            m: Budget::new(m)?,
        })
    }
}

/// `d_M(x, y) = max_f ‖f(x) − f(y)‖`.
pub fn conflict_matrix(m: &FunctionFamily) -> DistMatrix {
    let sp = m.space();
    DistMatrix::from_fn(m.domain().len(), |x, y| {
        m.functions()
            .iter()
            .map(|f| sp.dist(&f.values[x], &f.values[y]))
            .fold(0.0, f64::max)
    })
}

pub fn omega_budget(m: &FunctionFamily, n: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    alpha_budget_matrix(&conflict_matrix(m), n, mode, cfg)
}

/// Oscillation matrix of `f − φ`.
fn difference_matrix(sp: &SpaceTag, f: &[Vector], phi: &[Vector]) -> DistMatrix {
    let diff: Vec<Vector> = f.iter().zip(phi).map(|(a, b)| a - b).collect();
    DistMatrix::from_fn(diff.len(), |x, y| sp.dist(&diff[x], &diff[y]))
}

/// Per (function, candidate) oscillation matrices, function-major.
pub(crate) struct PairMatrices {
    points: usize,
    functions: usize,
    pool_len: usize,
    mats: Vec<DistMatrix>,
}

impl PairMatrices {
    pub(crate) fn new(m: &FunctionFamily, pool: &PhiPool) -> Self {
        Self::layered(&[(m, pool)])
    }

    /// Elementwise maximum over several (family, pool) layers sharing the
    /// same function and candidate order.
    pub(crate) fn layered(layers: &[(&FunctionFamily, &PhiPool)]) -> Self {
        let (m0, p0) = layers[0];
        let points = m0.domain().len();
        let mut mats = Vec::with_capacity(m0.len() * p0.len());
        for f in 0..m0.len() {
            for p in 0..p0.len() {
                let per_layer: Vec<DistMatrix> = layers
                    .iter()
                    .map(|(m, pool)| {
                        difference_matrix(&m.space(), &m.functions()[f].values, &pool.candidates()[p].values)
                    })
                    .collect();
                mats.push(if per_layer.len() == 1 {
                    per_layer.into_iter().next().unwrap()
                } else {
                    DistMatrix::pointwise_max(points, per_layer.iter())
                });
            }
        }
        PairMatrices {
            points,
            functions: m0.len(),
            pool_len: p0.len(),
            mats,
        }
    }

    fn get(&self, f: usize, phi: usize) -> &DistMatrix {
        &self.mats[f * self.pool_len + phi]
    }

    pub(crate) fn conflict(&self, phis: &[usize], assignment: &[usize]) -> DistMatrix {
        DistMatrix::pointwise_max(
            self.points,
            assignment.iter().enumerate().map(|(f, &j)| self.get(f, phis[j])),
        )
    }
}

/// `d(x, y) = max_f ‖(f − φ_{j(f)})(x) − (f − φ_{j(f)})(y)‖` for explicit
/// corrections given by pool indices and per-function positions.
pub fn corrected_conflict_matrix(
    m: &FunctionFamily,
    pool: &PhiPool,
    phis: &[usize],
    assignment: &[usize],
) -> Result<DistMatrix> {
    pool.check_against(m)?;
    check_assignment(m, pool, phis, assignment)?;
    let sp = m.space();
    let mats: Vec<DistMatrix> = assignment
        .iter()
        .enumerate()
        .map(|(f, &j)| difference_matrix(&sp, &m.functions()[f].values, &pool.candidates()[phis[j]].values))
        .collect();
    Ok(DistMatrix::pointwise_max(m.domain().len(), mats.iter()))
}

fn check_assignment(m: &FunctionFamily, pool: &PhiPool, phis: &[usize], assignment: &[usize]) -> Result<()> {
    if assignment.len() != m.len() {
        return Err(Error::input(format!(
            "assignment covers {} of {} functions",
            assignment.len(),
            m.len()
        )));
    }
    if let Some(&p) = phis.iter().find(|&&p| p >= pool.len()) {
        return Err(Error::input(format!("correction index {p} outside pool of {}", pool.len())));
    }
    if let Some((f, _)) = assignment.iter().enumerate().find(|(_, &j)| j >= phis.len()) {
        return Err(Error::input(format!("function {f} assigned to a missing correction")));
    }
    Ok(())
}

/// Recomputes `max_{f, A} diam((f − φ_{j(f)})(A))` for a witness.
pub fn corrected_value(m: &FunctionFamily, pool: &PhiPool, w: &CorrectedPartition) -> Result<f64> {
    if w.partition.num_points() != m.domain().len() {
        return Err(Error::input("partition does not cover the domain"));
    }
    let d = corrected_conflict_matrix(m, pool, &w.phis, &w.assignment)?;
    Ok(w.partition.parts().iter().map(|p| d.diameter_of(p)).fold(0.0, f64::max))
}

pub fn omega_ext_budget(
    m: &FunctionFamily,
    b: OmegaBudget,
    pool: &PhiPool,
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    pool.check_against(m)?;
    omega_ext_from_pairs(&PairMatrices::new(m, pool), &conflict_matrix(m), b, mode, cfg)
}

/// Shared solver behind the extended moduli. `plain` is the uncorrected
/// conflict matrix, used to seed the heuristic.
pub(crate) fn omega_ext_from_pairs(
    pairs: &PairMatrices,
    plain: &DistMatrix,
    b: OmegaBudget,
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    let points = pairs.points;
    let nf = pairs.functions;
    let mm = b.m.get().min(pairs.pool_len);

    if b.n.get() >= points {
        return Ok(BudgetedValue::exact(
            0.0,
            Witness::Corrected(CorrectedPartition {
                partition: Partition::singletons(points),
                phis: vec![0],
                assignment: vec![0; nf],
            }),
        ));
    }
    if b.n.get() == 1 {
        // one part: choose Φ as a k-center of the functions under the cost
        // c(f, φ) = diam((f − φ)(Ω))
        let cross = CrossMatrix::from_fn(nf, pairs.pool_len, |f, p| pairs.get(f, p).max());
        let g = gamma_budget_cross(&cross, Budget::new(mm)?, mode, cfg)?;
        let Witness::Centers(c) = g.witness else {
            unreachable!("k-center returns centers")
        };
        return Ok(BudgetedValue {
            value: g.value,
            kind: g.kind,
            witness: Witness::Corrected(CorrectedPartition {
                partition: Partition::whole(points),
                phis: c.centers,
                assignment: c.assignment,
            }),
        });
    }

    let configs = binomial(pairs.pool_len, mm).saturating_mul((mm as u128).saturating_pow(nf as u32));
    let within_cap = points <= cfg.caps.alpha_points && configs <= cfg.caps.omega_ext_configs;
    match mode {
        Mode::Exact if !within_cap => {
            if points > cfg.caps.alpha_points {
                Err(Error::Capacity {
                    what: "extended modulus partition".into(),
                    size: points as u128,
                    cap: cfg.caps.alpha_points as u128,
                })
            } else {
                Err(Error::Capacity {
                    what: "extended modulus configurations".into(),
                    size: configs,
                    cap: cfg.caps.omega_ext_configs,
                })
            }
        }
        Mode::Exact => omega_ext_exact(pairs, b.n, mm, cfg),
        Mode::Auto if within_cap => omega_ext_exact(pairs, b.n, mm, cfg),
        Mode::Heuristic | Mode::Auto => omega_ext_heuristic(pairs, plain, b.n, mm, cfg),
    }
}

fn omega_ext_exact(pairs: &PairMatrices, n: Budget, mm: usize, cfg: &SolverConfig) -> Result<BudgetedValue> {
    let nf = pairs.functions;
    let subsets = combinations(pairs.pool_len, mm);
    let per_subset: Vec<Result<(f64, Vec<usize>, Partition)>> = subsets
        .par_iter()
        .map(|phis| {
            let mut best: Option<(f64, Vec<usize>, Partition)> = None;
            let mut assignment = vec![0usize; nf];
            loop {
                let d = pairs.conflict(phis, &assignment);
                let v = alpha_budget_matrix(&d, n, Mode::Exact, cfg)?;
                if best.as_ref().is_none_or(|(bv, _, _)| v.value < *bv) {
                    let Witness::Partition(p) = v.witness else {
                        unreachable!("alpha returns a partition")
                    };
                    best = Some((v.value, assignment.clone(), p));
                    if v.value == 0.0 {
                        break;
                    }
                }
                // odometer, last function varies fastest
                let mut pos = nf;
                loop {
                    if pos == 0 {
                        return Ok(best.expect("at least one assignment"));
                    }
                    pos -= 1;
                    assignment[pos] += 1;
                    if assignment[pos] < mm {
                        break;
                    }
                    assignment[pos] = 0;
                }
            }
            Ok(best.expect("at least one assignment"))
        })
        .collect();

    let mut best: Option<(f64, Vec<usize>, Vec<usize>, Partition)> = None;
    for (phis, r) in subsets.into_iter().zip(per_subset) {
        let (v, assignment, partition) = r?;
        if best.as_ref().is_none_or(|(bv, ..)| v < *bv) {
            best = Some((v, phis, assignment, partition));
        }
    }
    let (value, phis, assignment, partition) = best.expect("pool is nonempty");
    Ok(BudgetedValue::exact(
        value,
        Witness::Corrected(CorrectedPartition {
            partition,
            phis,
            assignment,
        }),
    ))
}

/// Alternates "best corrections for this partition" and "best partition for
/// these corrections" until the value stops improving.
fn omega_ext_heuristic(
    pairs: &PairMatrices,
    plain: &DistMatrix,
    n: Budget,
    mm: usize,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    let start = alpha_budget_matrix(plain, n, Mode::Auto, cfg)?;
    let Witness::Partition(mut partition) = start.witness else {
        unreachable!("alpha returns a partition")
    };
    let mut best: Option<(f64, CorrectedPartition)> = None;
    for _ in 0..20 {
        let cross = CrossMatrix::from_fn(pairs.functions, pairs.pool_len, |f, p| {
            let d = pairs.get(f, p);
            partition.parts().iter().map(|q| d.diameter_of(q)).fold(0.0, f64::max)
        });
        let g = gamma_budget_cross(&cross, Budget::new(mm)?, Mode::Auto, cfg)?;
        let Witness::Centers(c) = g.witness else {
            unreachable!("k-center returns centers")
        };
        let d = pairs.conflict(&c.centers, &c.assignment);
        let here = partition.parts().iter().map(|q| d.diameter_of(q)).fold(0.0, f64::max);
        let cand = CorrectedPartition {
            partition: partition.clone(),
            phis: c.centers.clone(),
            assignment: c.assignment.clone(),
        };
        if best.as_ref().is_none_or(|(bv, _)| here < *bv) {
            best = Some((here, cand));
        } else {
            break;
        }
        let a = alpha_budget_matrix(&d, n, Mode::Auto, cfg)?;
        let Witness::Partition(next) = a.witness else {
            unreachable!("alpha returns a partition")
        };
        if next == partition {
            break;
        }
        partition = next;
    }
    let (value, w) = best.expect("at least one round");
    Ok(BudgetedValue::upper(value, Witness::Corrected(w)))
}

/// `max_f min_{φ ∈ P} α_n((f − φ)(Ω))`: any configuration gives each `f` some
/// `φ` and restricts the partition to it.
pub fn omega_ext_lower_bound(
    m: &FunctionFamily,
    b: OmegaBudget,
    pool: &PhiPool,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    pool.check_against(m)?;
    omega_ext_lower_bound_from_pairs(&PairMatrices::new(m, pool), b, cfg)
}

pub(crate) fn omega_ext_lower_bound_from_pairs(
    pairs: &PairMatrices,
    b: OmegaBudget,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    let exact = pairs.points <= cfg.caps.alpha_points;
    let mut value = 0.0f64;
    for f in 0..pairs.functions {
        let mut best = f64::INFINITY;
        for p in 0..pairs.pool_len {
            let d = pairs.get(f, p);
            let v = if exact {
                alpha_budget_matrix(d, b.n, Mode::Exact, cfg)?.value
            } else {
                alpha_lower_bound(d, b.n.get()).value
            };
            best = best.min(v);
        }
        value = value.max(best);
    }
    Ok(BudgetedValue::lower(value, Witness::None))
}

/// Replaces every used correction by the first function of its fiber. The
/// returned witness refers to `m` itself as the pool and at most doubles the
/// value.
pub fn self_correct(m: &FunctionFamily, pool: &PhiPool, w: &CorrectedPartition) -> Result<CorrectedPartition> {
    check_assignment(m, pool, &w.phis, &w.assignment)?;
    let mut phis: Vec<usize> = Vec::new();
    let mut remap = vec![usize::MAX; w.phis.len()];
    let mut assignment = Vec::with_capacity(m.len());
    for (f, &j) in w.assignment.iter().enumerate() {
        if remap[j] == usize::MAX {
            remap[j] = phis.len();
            phis.push(f);
        }
        assignment.push(remap[j]);
    }
    Ok(CorrectedPartition {
        partition: w.partition.clone(),
        phis,
        assignment,
    })
}

/// `sup { ‖f(x) − f(y)‖ : d(x, y) ≤ δ, f ∈ M }` on a metrized domain.
pub fn nussbaum_modulus(m: &FunctionFamily, delta: f64, tol: Tolerance) -> Result<f64> {
    let coords = m
        .domain()
        .coords()
        .ok_or_else(|| Error::input("the Nussbaum modulus needs domain coordinates"))?;
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::input("delta must be nonnegative"));
    }
    let sp = m.space();
    let n = m.domain().len();
    let mut best = 0.0f64;
    for x in 0..n {
        for y in (x + 1)..n {
            if !tol.le(coords.space.dist(&coords.points[x], &coords.points[y]), delta) {
                continue;
            }
            for f in m.functions() {
                best = best.max(sp.dist(&f.values[x], &f.values[y]));
            }
        }
    }
    Ok(best)
}
