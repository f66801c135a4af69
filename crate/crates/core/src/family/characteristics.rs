//! Pointwise (`μ`) and image (`σ`) characteristics, family-level measures
//! under the sup metric, and two reported-only diagnostics.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{omega_budget, sup_dist_unchecked, FunctionFamily, PhiPool};
use crate::error::Result;
use crate::measures::{
    alpha_budget, alpha_budget_matrix, beta_sep_matrix, gamma_budget, gamma_budget_cross, max_combine, Budget,
    BudgetedValue, CrossMatrix, Mode, SolverConfig, Witness,
};
use crate::normed::{DistMatrix, PointSet, Vector};

/// Center pool used by `μ_γ` at each domain point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum PoolRule {
    /// `M(x)` plus fixed extra vectors.
    Values { extras: Vec<Vector> },
    /// `{φ(x) : φ ∈ P}`.
    Phi(PhiPool),
}

impl PoolRule {
    pub fn values() -> Self {
        PoolRule::Values { extras: Vec::new() }
    }

    fn pool_at(&self, m: &FunctionFamily, x: usize) -> Result<PointSet> {
        match self {
            PoolRule::Values { extras } => {
                let mut pts: Vec<Vector> = m.at_index(x).points().to_vec();
                pts.extend(extras.iter().cloned());
                PointSet::collapsed(m.space(), pts)
            }
            PoolRule::Phi(pool) => {
                pool.check_against(m)?;
                PointSet::collapsed(m.space(), pool.candidates().iter().map(|p| p.values[x].clone()).collect())
            }
        }
    }
}

fn per_point(
    m: &FunctionFamily,
    eval: impl Fn(usize) -> Result<BudgetedValue> + Sync + Send,
) -> Result<BudgetedValue> {
    let results: Vec<Result<BudgetedValue>> = (0..m.domain().len()).into_par_iter().map(eval).collect();
    let values = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(max_combine(values, Witness::PerPoint))
}

/// `max_x α_k(M(x))`.
pub fn mu_alpha_budget(m: &FunctionFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    per_point(m, |x| alpha_budget(&m.at_index(x), k, mode, cfg))
}

/// `max_x γ_k(M(x))` with per-point centers drawn by `rule`.
pub fn mu_gamma_budget(
    m: &FunctionFamily,
    k: Budget,
    rule: &PoolRule,
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    per_point(m, |x| gamma_budget(&m.at_index(x), k, &rule.pool_at(m, x)?, mode, cfg))
}

/// `α_k(M(Ω))`.
pub fn sigma_alpha_budget(m: &FunctionFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    alpha_budget(&m.family_image(), k, mode, cfg)
}

/// `γ_k(M(Ω))` with centers from `pool`.
pub fn sigma_gamma_budget(
    m: &FunctionFamily,
    k: Budget,
    pool: &PointSet,
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    gamma_budget(&m.family_image(), k, pool, mode, cfg)
}

/// Pairwise sup distances between the functions of `m`.
pub fn family_distance_matrix(m: &FunctionFamily) -> DistMatrix {
    let sp = m.space();
    DistMatrix::from_fn(m.len(), |i, j| sup_dist_unchecked(&sp, &m.functions()[i], &m.functions()[j]))
}

/// `α_k` of `M` as a point set of `B(Ω, Y)`.
pub fn family_alpha_budget(m: &FunctionFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    alpha_budget_matrix(&family_distance_matrix(m), k, mode, cfg)
}

/// `β_k` of `M` as a point set of `B(Ω, Y)`.
pub fn family_beta_sep(m: &FunctionFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    beta_sep_matrix(&family_distance_matrix(m), k, mode, cfg)
}

/// `γ_k` of `M` with centers drawn from a function pool.
pub fn family_gamma_budget(
    m: &FunctionFamily,
    k: Budget,
    pool: &PhiPool,
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    pool.check_against(m)?;
    let sp = m.space();
    let cross = CrossMatrix::from_fn(m.len(), pool.len(), |i, j| {
        sup_dist_unchecked(&sp, &m.functions()[i], &pool.candidates()[j])
    });
    gamma_budget_cross(&cross, k, mode, cfg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeinzDiagnostic {
    pub omega: f64,
    pub max_sigma_alpha: f64,
    /// `½(ω − max_f σ_α({f}))`
    pub lhs: f64,
    pub alpha: f64,
    pub holds: bool,
}

/// Compares `½(ω_k(M) − max_f σ_α({f}, k))` with `α_k(M)`. Reported only.
pub fn heinz_diagnostic(m: &FunctionFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<HeinzDiagnostic> {
    let omega = omega_budget(m, k, mode, cfg)?.value;
    let mut max_sigma_alpha = 0.0f64;
    for i in 0..m.len() {
        let single = m.subfamily(&[i])?;
        max_sigma_alpha = max_sigma_alpha.max(sigma_alpha_budget(&single, k, mode, cfg)?.value);
    }
    let alpha = family_alpha_budget(m, k, mode, cfg)?.value;
    let lhs = 0.5 * (omega - max_sigma_alpha);
    Ok(HeinzDiagnostic {
        omega,
        max_sigma_alpha,
        lhs,
        alpha,
        holds: cfg.tol.le(lhs, alpha),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmbrosettiGap {
    pub mu_alpha: f64,
    pub alpha: f64,
    pub gap: f64,
}

/// `α_k(M) − μ_α,k(M)` at matched budgets. Reported only.
pub fn ambrosetti_gap(m: &FunctionFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<AmbrosettiGap> {
    let mu_alpha = mu_alpha_budget(m, k, mode, cfg)?.value;
    let alpha = family_alpha_budget(m, k, mode, cfg)?.value;
    Ok(AmbrosettiGap {
        mu_alpha,
        alpha,
        gap: alpha - mu_alpha,
    })
}
