//! Characteristics of the differentiated families: each is a maximum over the
//! differentiation order `p = 0, …, k`.

use super::CkFamily;
use crate::error::Result;
use crate::family::{
    conflict_matrix, mu_alpha_budget, mu_gamma_budget, omega_budget, sigma_alpha_budget, sigma_gamma_budget,
    FunctionFamily, OmegaBudget, PhiPool, PoolRule,
};
use crate::family::omega::{omega_ext_from_pairs, PairMatrices};
use crate::family::{family_distance_matrix, sup_norm};
use crate::measures::{alpha_budget_matrix, max_combine, Budget, BudgetedValue, Mode, SolverConfig, Witness};
use crate::normed::{DistMatrix, PointSet, Vector};

/// `‖f‖_{BC^k} = max_p ‖d^p f‖_∞` for the `i`-th function.
pub fn bck_norm(ck: &CkFamily, i: usize) -> f64 {
    ck.diffs()
        .iter()
        .map(|m| sup_norm(&m.space(), &m.functions()[i]))
        .fold(0.0, f64::max)
}

pub(crate) fn per_order(
    diffs: &[FunctionFamily],
    eval: impl Fn(usize, &FunctionFamily) -> Result<BudgetedValue>,
) -> Result<BudgetedValue> {
    let items = diffs.iter().enumerate().map(|(p, m)| eval(p, m)).collect::<Result<Vec<_>>>()?;
    Ok(max_combine(items, Witness::PerOrder))
}

pub fn mu_bar_alpha_budget(ck: &CkFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    per_order(ck.diffs(), |_, m| mu_alpha_budget(m, k, mode, cfg))
}

/// Per-point pools are `M^p(x)` plus `extras`.
pub fn mu_bar_gamma_budget(
    ck: &CkFamily,
    k: Budget,
    extras: &[Vector],
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    let rule = PoolRule::Values {
        extras: extras.to_vec(),
    };
    per_order(ck.diffs(), |_, m| mu_gamma_budget(m, k, &rule, mode, cfg))
}

pub fn sigma_bar_alpha_budget(ck: &CkFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    per_order(ck.diffs(), |_, m| sigma_alpha_budget(m, k, mode, cfg))
}

/// Center pool at order `p` is the full image `M^p(Ω)` plus `extras`.
pub fn sigma_bar_gamma_budget(
    ck: &CkFamily,
    k: Budget,
    extras: &[Vector],
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    let pools = image_pools(ck, extras)?;
    sigma_bar_gamma_with_pools(ck.diffs(), k, &pools, mode, cfg)
}

pub(crate) fn image_pools(ck: &CkFamily, extras: &[Vector]) -> Result<Vec<PointSet>> {
    ck.diffs()
        .iter()
        .map(|m| {
            let mut pts = m.family_image().points().to_vec();
            pts.extend(extras.iter().cloned());
            PointSet::collapsed(m.space(), pts)
        })
        .collect()
}

/// `max_p γ_k(M^p(Ω))` with an explicit pool per order.
pub fn sigma_bar_gamma_with_pools(
    diffs: &[FunctionFamily],
    k: Budget,
    pools: &[PointSet],
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    per_order(diffs, |p, m| sigma_gamma_budget(m, k, &pools[p], mode, cfg))
}

/// `ω̄_n = max_p ω_n(M^p)`, each order with its own partition.
pub fn omega_bar_budget(ck: &CkFamily, n: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    per_order(ck.diffs(), |_, m| omega_budget(m, n, mode, cfg))
}

/// Extended modulus with one partition shared by all orders. The pool is
/// given on the base grid and differentiated alongside `M`.
pub fn omega_bck_budget(
    ck: &CkFamily,
    b: OmegaBudget,
    pool: &PhiPool,
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<BudgetedValue> {
    pool.check_against(ck.base())?;
    let pool_ck = CkFamily::differentiate(pool.as_family().clone(), ck.grid().clone(), ck.order())?;
    let pools: Vec<PhiPool> = pool_ck.diffs().iter().cloned().map(PhiPool::from_family).collect();
    let layers: Vec<(&FunctionFamily, &PhiPool)> = ck.diffs().iter().zip(&pools).collect();
    let pairs = PairMatrices::layered(&layers);
    let n = ck.base().domain().len();
    let plain = DistMatrix::pointwise_max(n, ck.diffs().iter().map(conflict_matrix).collect::<Vec<_>>().iter());
    omega_ext_from_pairs(&pairs, &plain, b, mode, cfg)
}

/// `max_p sup_dist(d^p f, d^p g)` between functions.
pub fn bck_distance_matrix(ck: &CkFamily) -> DistMatrix {
    let mats: Vec<DistMatrix> = ck.diffs().iter().map(family_distance_matrix).collect();
    DistMatrix::pointwise_max(ck.base().len(), mats.iter())
}

/// `α_k` of `M` under the BC^k metric.
pub fn bck_family_alpha_budget(ck: &CkFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    alpha_budget_matrix(&bck_distance_matrix(ck), k, mode, cfg)
}
