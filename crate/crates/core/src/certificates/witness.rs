//! Witness objects consumed by the certificate constructions, and builders
//! that obtain them from the exact solvers.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{family_alpha_budget, Function, FunctionFamily, PhiPool};
use crate::measures::{alpha_budget, gamma_budget, Budget, CorrectedPartition, Mode, Partition, SolverConfig, Witness};
use crate::normed::{PointSet, SpaceTag, Vector};

/// Domain partition, correction functions, assignment and achieved value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaWitness {
    pub partition: Partition,
    pub phis: Vec<Function>,
    /// `assignment[f]` is the position in `phis` of the correction of `f`.
    pub assignment: Vec<usize>,
    pub a: f64,
}

impl OmegaWitness {
    pub fn from_corrected(pool: &PhiPool, w: &CorrectedPartition, a: f64) -> Result<Self> {
        let phis = w
            .phis
            .iter()
            .map(|&p| {
                pool.candidates()
                    .get(p)
                    .cloned()
                    .ok_or_else(|| Error::input(format!("correction index {p} outside pool")))
            })
            .collect::<Result<_>>()?;
        Ok(OmegaWitness {
            partition: w.partition.clone(),
            phis,
            assignment: w.assignment.clone(),
            a,
        })
    }

    /// Functions assigned to correction `j`.
    pub fn fiber(&self, j: usize) -> Vec<usize> {
        (0..self.assignment.len()).filter(|&f| self.assignment[f] == j).collect()
    }

    /// Lowest index of every part.
    pub fn canonical_representatives(&self) -> Vec<usize> {
        self.partition.parts().iter().map(|p| p[0]).collect()
    }
}

/// Per-correction covers of `⋃_i M_j(x_i)` by pieces of diameter at most `b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointwiseCovers {
    /// One domain index per part of the witness partition.
    pub representatives: Vec<usize>,
    /// `pieces[j][h]` lists the points of the `h`-th piece for correction `j`.
    pub pieces: Vec<Vec<Vec<Vector>>>,
    pub b: f64,
}

/// Per-correction `b`-nets of `⋃_i M_j(x_i)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointwiseNets {
    pub representatives: Vec<usize>,
    /// `centers[j]` are the net points `y^j_1, …, y^j_{k_j}`.
    pub centers: Vec<Vec<Vector>>,
    pub b: f64,
}

/// A cover of the family by groups of functions with sup diameter at most `a`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCover {
    pub groups: Vec<Vec<usize>>,
    pub a: f64,
}

fn representative_values(m: &FunctionFamily, w: &OmegaWitness, reps: &[usize], j: usize) -> Option<PointSet> {
    let pts: Vec<Vector> = w
        .fiber(j)
        .into_iter()
        .flat_map(|f| reps.iter().map(move |&x| m.functions()[f].values[x].clone()))
        .collect();
    if pts.is_empty() {
        None
    } else {
        Some(PointSet::collapsed(m.space(), pts).expect("conforming values"))
    }
}

impl PointwiseCovers {
    /// Minimax partitions with `k` pieces of each pooled representative image.
    pub fn from_alpha(
        m: &FunctionFamily,
        w: &OmegaWitness,
        k: Budget,
        mode: Mode,
        cfg: &SolverConfig,
    ) -> Result<Self> {
        let reps = w.canonical_representatives();
        let mut pieces = Vec::with_capacity(w.phis.len());
        let mut b = 0.0f64;
        for j in 0..w.phis.len() {
            let Some(s) = representative_values(m, w, &reps, j) else {
                pieces.push(Vec::new());
                continue;
            };
            let v = alpha_budget(&s, k, mode, cfg)?;
            let Witness::Partition(p) = v.witness else {
                unreachable!("alpha returns a partition")
            };
            b = b.max(v.value);
            pieces.push(
                p.parts()
                    .iter()
                    .map(|part| part.iter().map(|&i| s.points()[i].clone()).collect())
                    .collect(),
            );
        }
        Ok(PointwiseCovers {
            representatives: reps,
            pieces,
            b,
        })
    }
}

impl PointwiseNets {
    /// `k`-center nets of each pooled representative image, centers drawn
    /// from the image itself.
    pub fn from_gamma(
        m: &FunctionFamily,
        w: &OmegaWitness,
        k: Budget,
        mode: Mode,
        cfg: &SolverConfig,
    ) -> Result<Self> {
        let reps = w.canonical_representatives();
        let mut centers = Vec::with_capacity(w.phis.len());
        let mut b = 0.0f64;
        for j in 0..w.phis.len() {
            let Some(s) = representative_values(m, w, &reps, j) else {
                centers.push(Vec::new());
                continue;
            };
            let v = gamma_budget(&s, k, &s, mode, cfg)?;
            let Witness::Centers(c) = v.witness else {
                unreachable!("k-center returns centers")
            };
            b = b.max(v.value);
            centers.push(c.centers.iter().map(|&i| s.points()[i].clone()).collect());
        }
        Ok(PointwiseNets {
            representatives: reps,
            centers,
            b,
        })
    }
}

impl FamilyCover {
    /// Minimax partition of the family under the sup metric.
    pub fn from_alpha(m: &FunctionFamily, k: Budget, mode: Mode, cfg: &SolverConfig) -> Result<Self> {
        let v = family_alpha_budget(m, k, mode, cfg)?;
        let Witness::Partition(p) = v.witness else {
            unreachable!("alpha returns a partition")
        };
        Ok(FamilyCover {
            groups: p.parts().to_vec(),
            a: v.value,
        })
    }
}

/// All distinct values of the given functions: a `0`-net of their images.
pub fn exact_net<'a>(functions: impl IntoIterator<Item = &'a Function>) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for f in functions {
        for v in &f.values {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
    }
    out
}

/// First-fit `δ`-net: a point joins the net when it is farther than `δ`
/// from every earlier net point.
pub fn greedy_net<'a>(space: &SpaceTag, points: impl IntoIterator<Item = &'a Vector>, delta: f64) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for p in points {
        if out.iter().all(|z| space.dist(z, p) > delta) {
            out.push(p.clone());
        }
    }
    out
}
