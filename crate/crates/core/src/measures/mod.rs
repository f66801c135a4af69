//! Budgeted set measures on finite point sets.
//!
//! On finite data every classical measure of noncompactness vanishes, so each
//! quantity here is indexed by an explicit budget `k`:
//!
//! * [`alpha`]: minimum over partitions into at most `k` parts of the largest
//!   part diameter (Kuratowski type),
//! * [`gamma`]: minimum over `k` centers drawn from a declared pool of the
//!   covering radius (Hausdorff type),
//! * [`beta`]: maximum over `(k+1)`-subsets of the smallest pairwise
//!   distance (Istratescu type).
//!
//! All three are nonincreasing in `k`. Exact solvers optimize over the finite
//! list of computed distances, never over a continuum of thresholds.

pub mod alpha;
pub mod beta;
pub(crate) mod coloring;
pub mod gamma;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normed::Tolerance;

pub use alpha::{alpha_budget, alpha_budget_matrix, alpha_lower_bound, alpha_upper_bound};
pub use beta::{beta_sep, beta_sep_matrix};
pub use gamma::{gamma_budget, gamma_budget_cross, gamma_lower_bound, gamma_upper_bound, CrossMatrix};
pub use beta::beta_lower_bound;

/// Number of parts, centers, or (subset size minus one).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Budget(usize);

impl Budget {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("budget must be at least 1"));
        }
        Ok(Budget(k))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl From<Budget> for usize {
    fn from(b: Budget) -> usize {
        b.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    Exact,
    UpperBound,
    LowerBound,
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoundKind::Exact => "exact",
            BoundKind::UpperBound => "upper",
            BoundKind::LowerBound => "lower",
        })
    }
}

/// Solver mode. `Auto` runs the exact solver when the instance is under the
/// configured cap and falls back to the heuristic upper bound otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Exact,
    Heuristic,
    Auto,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "heuristic" => Ok(Mode::Heuristic),
            "auto" => Ok(Mode::Auto),
            other => Err(Error::input(format!("unknown mode `{other}`"))),
        }
    }
}

/// Size limits for the exact solvers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest point count for the exact partition solver.
    pub alpha_points: usize,
    /// Largest number of center subsets enumerated by the exact k-center solver.
    pub gamma_subsets: u128,
    /// Largest number of separated subsets the exact dispersion solver may visit.
    pub beta_subsets: u128,
    /// Largest number of (correction set, assignment) pairs for the extended modulus.
    pub omega_ext_configs: u128,
    /// Largest dimension for exact Euclidean enclosing balls.
    pub ball_dim: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            alpha_points: 15,
            gamma_subsets: 1_000_000,
            beta_subsets: 1_000_000,
            omega_ext_configs: 1_000_000,
            ball_dim: crate::normed::DEFAULT_BALL_DIM_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub caps: Caps,
    pub tol: Tolerance,
}

impl SolverConfig {
    pub fn with_alpha_cap(mut self, cap: usize) -> Self {
        self.caps.alpha_points = cap;
        self
    }
}

/// A labeled partition of `0..n`, kept canonical: parts are sorted by their
/// smallest element and each part is ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<Vec<usize>>,
}

impl Partition {
    pub fn from_labels(labels: &[usize]) -> Partition {
        let mut map: Vec<(usize, usize)> = Vec::new();
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for (i, &l) in labels.iter().enumerate() {
            match map.iter().find(|(lab, _)| *lab == l) {
                Some(&(_, p)) => parts[p].push(i),
                None => {
                    map.push((l, parts.len()));
                    parts.push(vec![i]);
                }
            }
        }
        Partition { parts }
    }

    pub fn from_parts(parts: Vec<Vec<usize>>) -> Result<Partition> {
        let n: usize = parts.iter().map(|p| p.len()).sum();
        let mut seen = vec![false; n];
        for p in &parts {
            if p.is_empty() {
                return Err(Error::input("partition contains an empty part"));
            }
            for &i in p {
                if i >= n || seen[i] {
                    return Err(Error::input(format!("partition index {i} repeated or out of range")));
                }
                seen[i] = true;
            }
        }
        let mut labels = vec![0; n];
        for (l, p) in parts.iter().enumerate() {
            for &i in p {
                labels[i] = l;
            }
        }
        Ok(Partition::from_labels(&labels))
    }

    pub fn singletons(n: usize) -> Partition {
        Partition {
            parts: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub fn whole(n: usize) -> Partition {
        Partition {
            parts: vec![(0..n).collect()],
        }
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn num_points(&self) -> usize {
        self.parts.iter().map(|p| p.len()).sum()
    }

    /// Part index of every point.
    pub fn labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.num_points()];
        for (l, p) in self.parts.iter().enumerate() {
            for &i in p {
                labels[i] = l;
            }
        }
        labels
    }

    /// Common refinement of several labelings of the same point set.
    pub fn refine(labelings: &[Vec<usize>]) -> Partition {
        let n = labelings.first().map_or(0, |l| l.len());
        let mut keys: Vec<Vec<usize>> = Vec::new();
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let key: Vec<usize> = labelings.iter().map(|l| l[i]).collect();
            let id = match keys.iter().position(|k| *k == key) {
                Some(p) => p,
                None => {
                    keys.push(key);
                    keys.len() - 1
                }
            };
            labels.push(id);
        }
        Partition::from_labels(&labels)
    }
}

/// Centers chosen from a pool, with the nearest-center assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterChoice {
    /// Indices into the pool.
    pub centers: Vec<usize>,
    /// For each point, the position in `centers` of its assigned center.
    pub assignment: Vec<usize>,
}

/// A domain partition together with correction functions and the
/// function-to-correction assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectedPartition {
    pub partition: Partition,
    /// Indices into the correction pool.
    pub phis: Vec<usize>,
    /// For each function, the position in `phis` of its correction.
    pub assignment: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Witness {
    Partition(Partition),
    Centers(CenterChoice),
    Subset(Vec<usize>),
    Corrected(CorrectedPartition),
    /// One witness per domain point (pointwise characteristics).
    PerPoint(Vec<Witness>),
    /// One witness per differentiation order.
    PerOrder(Vec<Witness>),
    None,
}

/// A computed quantity with the kind of bound it represents and the object
/// that certifies it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetedValue {
    pub value: f64,
    pub kind: BoundKind,
    pub witness: Witness,
}

impl BudgetedValue {
    pub fn exact(value: f64, witness: Witness) -> Self {
        BudgetedValue {
            value,
            kind: BoundKind::Exact,
            witness,
        }
    }

    pub fn upper(value: f64, witness: Witness) -> Self {
        BudgetedValue {
            value,
            kind: BoundKind::UpperBound,
            witness,
        }
    }

    pub fn lower(value: f64, witness: Witness) -> Self {
        BudgetedValue {
            value,
            kind: BoundKind::LowerBound,
            witness,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.kind == BoundKind::Exact
    }

    /// Short content digest of the witness, for reports.
    pub fn witness_digest(&self) -> String {
        crate::digest::short_digest(&self.witness)
    }
}

/// Combines per-item values by maximum. The first maximal item wins ties and
/// the combined kind is Exact only when every part is Exact.
pub(crate) fn max_combine(items: Vec<BudgetedValue>, wrap: fn(Vec<Witness>) -> Witness) -> BudgetedValue {
    let mut value = 0.0f64;
    let mut kind = BoundKind::Exact;
    let mut witnesses = Vec::with_capacity(items.len());
    for it in items {
        if it.value > value {
            value = it.value;
        }
        kind = match (kind, it.kind) {
            (BoundKind::Exact, k) => k,
            (k, BoundKind::Exact) => k,
            (a, b) if a == b => a,
            // mixing upper and lower bounds yields nothing sound; report as upper
            _ => BoundKind::UpperBound,
        };
        witnesses.push(it.witness);
    }
    BudgetedValue {
        value,
        kind,
        witness: wrap(witnesses),
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        i -= 1;
        cur[i] += 1;
        for j in (i + 1)..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// `n choose k`, saturating.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(p) => p / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
