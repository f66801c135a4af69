//! Differentiable families on one-dimensional grids.
//!
//! A grid is a union of uniformly spaced components (disjoint open intervals
//! sampled at interior points). Differentials `d^p f` are sampled with
//! second-order finite differences, computed per component, and stored as
//! families `M^0 = M, M^1, …, M^k` on the same domain.

mod characteristics;
mod stencil;
mod window;

pub use characteristics::{
    bck_distance_matrix, bck_family_alpha_budget, bck_norm, mu_bar_alpha_budget, mu_bar_gamma_budget,
    omega_bar_budget, omega_bck_budget, sigma_bar_alpha_budget, sigma_bar_gamma_budget, sigma_bar_gamma_with_pools,
};
pub use stencil::{d1, d2};
pub use window::{dk_windowed_report, WindowBudgets, WindowRow, WindowSpec};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{Domain, Function, FunctionFamily};
use crate::normed::{NormTag, SpaceTag, Vector};

/// `count` points `start, start + step, …`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridComponent {
    pub start: f64,
    pub step: f64,
    pub count: usize,
}

impl GridComponent {
    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridDomain {
    components: Vec<GridComponent>,
}

impl GridDomain {
    pub fn uniform(start: f64, step: f64, count: usize) -> Result<Self> {
        GridDomain::new(vec![GridComponent { start, step, count }])
    }

    /// `count` points spanning `[a, b]` inclusive.
    pub fn interval(a: f64, b: f64, count: usize) -> Result<Self> {
        if count < 2 || !(b > a) {
            return Err(Error::input("interval grid needs a < b and at least 2 points"));
        }
        GridDomain::uniform(a, (b - a) / (count - 1) as f64, count)
    }

    pub fn new(components: Vec<GridComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::input("grid needs at least one component"));
        }
        for c in &components {
            if !(c.step > 0.0) || !c.step.is_finite() || !c.start.is_finite() || c.count == 0 {
                return Err(Error::input("grid components need finite start, step > 0, count ≥ 1"));
            }
        }
        for w in components.windows(2) {
            if w[1].start <= w[0].point(w[0].count - 1) {
                return Err(Error::input("grid components must be increasing and disjoint"));
            }
        }
        Ok(GridDomain { components })
    }

    pub fn components(&self) -> &[GridComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.iter().map(|c| c.count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<f64> {
        self.components
            .iter()
            .flat_map(|c| (0..c.count).map(move |i| c.point(i)))
            .collect()
    }

    /// Index ranges of the components in the flattened point list.
    pub fn ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.components
            .iter()
            .map(|c| {
                let r = start..start + c.count;
                start += c.count;
                r
            })
            .collect()
    }

    /// Labeled domain with one-dimensional coordinates.
    pub fn to_domain(&self) -> Domain {
        let pts = self.points();
        let labels = (0..pts.len()).map(|i| format!("x{i}")).collect();
        let coords = pts.iter().map(|&t| Vector::new(vec![t]).expect("finite grid point")).collect();
        Domain::new(labels)
            .expect("distinct labels")
            .with_coords(SpaceTag::new(1, NormTag::L2).expect("dim 1"), coords)
            .expect("one coordinate per label")
    }

    /// Samples `f(t)` at every grid point.
    pub fn sample(&self, name: &str, f: impl Fn(f64) -> Vec<f64>) -> Result<Function> {
        let values = self.points().into_iter().map(|t| Vector::new(f(t))).collect::<Result<_>>()?;
        Ok(Function::new(name, values))
    }
}

/// A family together with its sampled differentials up to order `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CkFamily {
    grid: GridDomain,
    order: usize,
    /// `M^0, …, M^k`.
    diffs: Vec<FunctionFamily>,
    /// Points where some stencil was one-sided.
    boundary: Vec<bool>,
}

impl CkFamily {
    pub fn differentiate(base: FunctionFamily, grid: GridDomain, k: usize) -> Result<Self> {
        if base.domain().len() != grid.len() {
            return Err(Error::DomainMismatch(format!(
                "family has {} domain points, grid has {}",
                base.domain().len(),
                grid.len()
            )));
        }
        if k > 0 {
            if let Some(c) = grid.components.iter().find(|c| c.count < k + 2) {
                return Err(Error::input(format!(
                    "order-{k} differentiation needs at least {} points per component, found {}",
                    k + 2,
                    c.count
                )));
            }
        }
        let ranges = grid.ranges();
        let mut diffs = vec![base];
        for p in 1..=k {
            let prev = &diffs[p - 1];
            let fs = (0..prev.len())
                .map(|i| {
                    let name = prev.functions()[i].name.clone();
                    let values = if p == 2 {
                        stencil::apply(&grid, &ranges, &diffs[0].functions()[i].values, stencil::d2)
                    } else {
                        stencil::apply(&grid, &ranges, &prev.functions()[i].values, stencil::d1)
                    };
                    Function::new(name, values)
                })
                .collect();
            let fam = FunctionFamily::new(prev.domain().clone(), prev.space(), fs)?;
            diffs.push(fam);
        }
        let reach = k.saturating_sub(1).max(1);
        let mut boundary = vec![false; grid.len()];
        if k > 0 {
            for r in &ranges {
                for i in r.clone() {
                    if i - r.start < reach || r.end - 1 - i < reach {
                        boundary[i] = true;
                    }
                }
            }
        }
        Ok(CkFamily {
            grid,
            order: k,
            diffs,
            boundary,
        })
    }

    pub fn grid(&self) -> &GridDomain {
        &self.grid
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn base(&self) -> &FunctionFamily {
        &self.diffs[0]
    }

    /// `M^p`.
    pub fn diff(&self, p: usize) -> &FunctionFamily {
        &self.diffs[p]
    }

    pub fn diffs(&self) -> &[FunctionFamily] {
        &self.diffs
    }

    pub fn boundary(&self) -> &[bool] {
        &self.boundary
    }

    /// Restricts `M` and every `M^p` to the given domain indices without
    /// recomputing differentials.
    pub fn restrict(&self, idx: &[usize]) -> Result<RestrictedCk> {
        Ok(RestrictedCk {
            diffs: self.diffs.iter().map(|m| m.restrict(idx)).collect::<Result<_>>()?,
        })
    }
}

/// Differential families restricted to a window.
#[derive(Clone, Debug, PartialEq)]
pub struct RestrictedCk {
    pub diffs: Vec<FunctionFamily>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(grid: &GridDomain, fs: &[(&str, fn(f64) -> f64)]) -> FunctionFamily {
        let funcs = fs.iter().map(|(n, f)| grid.sample(n, |t| vec![f(t)]).unwrap()).collect();
        FunctionFamily::new(grid.to_domain(), SpaceTag::new(1, NormTag::L2).unwrap(), funcs).unwrap()
    }

    #[test]
    fn linear_and_quadratic() {
        let g = GridDomain::interval(0.0, 1.0, 21).unwrap();
        let ck = CkFamily::differentiate(family(&g, &[("x", |t| t), ("sq", |t| t * t)]), g, 2).unwrap();
        for x in 0..21 {
            assert!((ck.diff(1).functions()[0].values[x].coords()[0] - 1.0).abs() < 1e-9);
            assert!(ck.diff(2).functions()[0].values[x].coords()[0].abs() < 1e-9);
            let t = x as f64 / 20.0;
            assert!((ck.diff(1).functions()[1].values[x].coords()[0] - 2.0 * t).abs() < 1e-9);
            assert!((ck.diff(2).functions()[1].values[x].coords()[0] - 2.0).abs() < 1e-9);
        }
        assert!(ck.boundary()[0] && ck.boundary()[20] && !ck.boundary()[1]);
    }

    #[test]
    fn sine_matches_cosine() {
        let g = GridDomain::uniform(0.0, 0.01, 300).unwrap();
        let ck = CkFamily::differentiate(family(&g, &[("sin", f64::sin)]), g.clone(), 1).unwrap();
        for (x, t) in g.points().into_iter().enumerate().skip(1).take(298) {
            assert!((ck.diff(1).functions()[0].values[x].coords()[0] - t.cos()).abs() < 1e-4);
        }
    }

    #[test]
    fn too_few_points() {
        let g = GridDomain::uniform(0.0, 0.1, 3).unwrap();
        assert!(CkFamily::differentiate(family(&g, &[("x", |t| t)]), g, 2).is_err());
    }

    #[test]
    fn components_differentiate_separately() {
        let g = GridDomain::new(vec![
            GridComponent { start: 0.0, step: 0.1, count: 4 },
            GridComponent { start: 2.0, step: 0.05, count: 5 },
        ])
        .unwrap();
        let ck = CkFamily::differentiate(family(&g, &[("step", |t| if t < 1.0 { t } else { 3.0 * t })]), g, 1).unwrap();
        let d: Vec<f64> = ck.diff(1).functions()[0].values.iter().map(|v| v.coords()[0]).collect();
        assert!(d[..4].iter().all(|v| (v - 1.0).abs() < 1e-9));
        assert!(d[4..].iter().all(|v| (v - 3.0).abs() < 1e-9));
    }
}
