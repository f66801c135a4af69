//! Window-indexed evaluation: restrict every `M^p` to a contiguous range of
//! grid indices and evaluate the characteristics there.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::characteristics::{image_pools, per_order, sigma_bar_gamma_with_pools};
use super::CkFamily;
use crate::error::{Error, Result};
use crate::family::{mu_alpha_budget, mu_gamma_budget, omega_budget, sigma_alpha_budget, PoolRule};
use crate::measures::{Budget, BoundKind, Mode, SolverConfig};
use crate::normed::Vector;

/// Grid indices `start .. start + len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpec {
    pub start: usize,
    pub len: usize,
}

impl WindowSpec {
    pub fn new(start: usize, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::input("window must be nonempty"));
        }
        Ok(WindowSpec { start, len })
    }

    pub fn contains(&self, other: &WindowSpec) -> bool {
        self.start <= other.start && other.start + other.len <= self.start + self.len
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowBudgets {
    /// Budget for the `α`/`γ`-type quantities.
    pub k: Budget,
    /// Parts for `ω̄`.
    pub n: Budget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowRow {
    pub window: WindowSpec,
    /// Grid indices actually evaluated.
    pub points: Vec<usize>,
    pub mu_bar_alpha: f64,
    pub mu_bar_gamma: f64,
    pub sigma_bar_alpha: f64,
    pub sigma_bar_gamma: f64,
    pub omega_bar: f64,
    pub exact: bool,
}

/// Evaluates every window independently. With `exclude_boundary`, points
/// flagged by one-sided stencils are dropped. `σ_γ̄` uses the full-grid
/// images as center pools so that all windows share one pool.
pub fn dk_windowed_report(
    ck: &CkFamily,
    windows: &[WindowSpec],
    budgets: WindowBudgets,
    extras: &[Vector],
    exclude_boundary: bool,
    mode: Mode,
    cfg: &SolverConfig,
) -> Result<Vec<WindowRow>> {
    let total = ck.grid().len();
    for w in windows {
        if w.start + w.len > total {
            return Err(Error::input(format!(
                "window {}..{} outside grid of {total} points",
                w.start,
                w.start + w.len
            )));
        }
    }
    let pools = image_pools(ck, extras)?;
    let rule = PoolRule::Values {
        extras: extras.to_vec(),
    };
    let rows: Vec<Result<WindowRow>> = windows
        .par_iter()
        .map(|w| {
            let points: Vec<usize> = (w.start..w.start + w.len)
                .filter(|&i| !(exclude_boundary && ck.boundary()[i]))
                .collect();
            if points.is_empty() {
                return Err(Error::input(format!(
                    "window at {} has no points left after boundary exclusion",
                    w.start
                )));
            }
            let r = ck.restrict(&points)?;
            let d = &r.diffs;
            let mu_a = per_order(d, |_, m| mu_alpha_budget(m, budgets.k, mode, cfg))?;
            let mu_g = per_order(d, |_, m| mu_gamma_budget(m, budgets.k, &rule, mode, cfg))?;
            let s_a = per_order(d, |_, m| sigma_alpha_budget(m, budgets.k, mode, cfg))?;
            let s_g = sigma_bar_gamma_with_pools(d, budgets.k, &pools, mode, cfg)?;
            let om = per_order(d, |_, m| omega_budget(m, budgets.n, mode, cfg))?;
            let exact = [&mu_a, &mu_g, &s_a, &s_g, &om].iter().all(|v| v.kind == BoundKind::Exact);
            Ok(WindowRow {
                window: *w,
                points,
                mu_bar_alpha: mu_a.value,
                mu_bar_gamma: mu_g.value,
                sigma_bar_alpha: s_a.value,
                sigma_bar_gamma: s_g.value,
                omega_bar: om.value,
                exact,
            })
        })
        .collect();
    rows.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ck::{mu_bar_alpha_budget, omega_bar_budget, sigma_bar_alpha_budget, sigma_bar_gamma_budget, GridDomain};
    use crate::family::FunctionFamily;
    use crate::normed::{NormTag, SpaceTag};

    #[test]
    fn full_window_and_nesting() {
        let g = GridDomain::interval(0.0, 1.0, 9).unwrap();
        let fs = (1..=3)
            .map(|c| g.sample(&format!("c{c}"), |t| vec![c as f64 * t * t]).unwrap())
            .collect();
        let m = FunctionFamily::new(g.to_domain(), SpaceTag::new(1, NormTag::L2).unwrap(), fs).unwrap();
        let ck = CkFamily::differentiate(m, g, 2).unwrap();
        let cfg = SolverConfig::default().with_alpha_cap(32);
        let budgets = WindowBudgets {
            k: Budget::new(1).unwrap(),
            n: Budget::new(2).unwrap(),
        };
        let ws = [WindowSpec::new(0, 9).unwrap(), WindowSpec::new(2, 5).unwrap(), WindowSpec::new(3, 2).unwrap()];
        let rows = dk_windowed_report(&ck, &ws, budgets, &[], false, Mode::Exact, &cfg).unwrap();
        let full = &rows[0];
        assert_eq!(full.mu_bar_alpha, mu_bar_alpha_budget(&ck, budgets.k, Mode::Exact, &cfg).unwrap().value);
        assert_eq!(full.sigma_bar_alpha, sigma_bar_alpha_budget(&ck, budgets.k, Mode::Exact, &cfg).unwrap().value);
        assert_eq!(full.sigma_bar_gamma, sigma_bar_gamma_budget(&ck, budgets.k, &[], Mode::Exact, &cfg).unwrap().value);
        assert_eq!(full.omega_bar, omega_bar_budget(&ck, budgets.n, Mode::Exact, &cfg).unwrap().value);
        for (outer, inner) in [(0, 1), (1, 2)] {
            let (a, b) = (&rows[outer], &rows[inner]);
            assert!(b.mu_bar_alpha <= a.mu_bar_alpha);
            assert!(b.mu_bar_gamma <= a.mu_bar_gamma);
            assert!(b.sigma_bar_alpha <= a.sigma_bar_alpha);
            assert!(b.sigma_bar_gamma <= a.sigma_bar_gamma);
            assert!(b.omega_bar <= a.omega_bar);
        }
        let trimmed = dk_windowed_report(&ck, &ws[..1], budgets, &[], true, Mode::Exact, &cfg).unwrap();
        assert_eq!(trimmed[0].points, (1..8).collect::<Vec<_>>());
    }
}
