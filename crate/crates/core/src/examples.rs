//! Parameterized generators for the worked examples, each with a table of
//! expected values and a reproduction runner.
//!
//! Infinite families are truncated by explicit scale parameters. Rows are
//! either exact at the generated scale or describe a monotone trend over a
//! budget sweep.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ck::{CkFamily, GridComponent, GridDomain};
use crate::error::{Error, Result};
use crate::family::{
    family_alpha_budget, family_beta_sep, family_distance_matrix, family_gamma_budget, mu_alpha_budget,
    mu_gamma_budget, nussbaum_modulus, omega_budget, omega_ext_budget, sigma_alpha_budget, sigma_gamma_budget,
    Domain, Function, FunctionFamily, OmegaBudget, PhiPool, PoolRule,
};
use crate::measures::{BoundKind, Budget, BudgetedValue, Mode, SolverConfig};
use crate::normed::{NormTag, PointSet, SpaceTag, Vector};

/// Named integer scale parameters with per-generator defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scale(pub BTreeMap<String, u64>);

impl Scale {
    pub fn new() -> Self {
        Scale::default()
    }

    pub fn with(mut self, key: &str, value: u64) -> Self {
        self.0.insert(key.to_string(), value);
        self
    }

    fn get(&self, key: &str, default: u64) -> u64 {
        self.0.get(key).copied().unwrap_or(default)
    }

    fn usize(&self, key: &str, default: u64) -> usize {
        self.get(key, default) as usize
    }
}

/// What a table row computes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "snake_case")]
pub enum Quantity {
    /// Smallest sup distance between two distinct functions.
    SupDistMin,
    /// Largest sup distance between two functions.
    SupDistMax,
    /// `max_f ‖f − φ‖∞` for the first function of a named pool.
    SupDistTo { pool: String },
    FamilyAlpha { k: usize },
    FamilyBeta { k: usize },
    FamilyGamma { k: usize, pool: String },
    MuAlpha { k: usize },
    MuGamma { k: usize },
    SigmaAlpha { k: usize },
    SigmaGamma { k: usize, centers: String },
    Omega { n: usize },
    OmegaExt { n: usize, m: usize, pool: String },
    Nussbaum { delta: f64 },
    /// `α_k` of the image of the differential family of order `p`.
    DiffSigmaAlpha { p: usize, k: usize },
}

impl Quantity {
    pub fn label(&self) -> String {
        match self {
            Quantity::SupDistMin => "sup_dist_min".into(),
            Quantity::SupDistMax => "sup_dist_max".into(),
            Quantity::SupDistTo { pool } => format!("sup_dist_to[{pool}]"),
            Quantity::FamilyAlpha { k } => format!("family_alpha[k={k}]"),
            Quantity::FamilyBeta { k } => format!("family_beta[k={k}]"),
            Quantity::FamilyGamma { k, pool } => format!("family_gamma[k={k},pool={pool}]"),
            Quantity::MuAlpha { k } => format!("mu_alpha[k={k}]"),
            Quantity::MuGamma { k } => format!("mu_gamma[k={k}]"),
            Quantity::SigmaAlpha { k } => format!("sigma_alpha[k={k}]"),
            Quantity::SigmaGamma { k, centers } => format!("sigma_gamma[k={k},centers={centers}]"),
            Quantity::Omega { n } => format!("omega[n={n}]"),
            Quantity::OmegaExt { n, m, pool } => format!("omega_ext[n={n},m={m},pool={pool}]"),
            Quantity::Nussbaum { delta } => format!("nussbaum[delta={delta}]"),
            Quantity::DiffSigmaAlpha { p, k } => format!("sigma_alpha[order={p},k={k}]"),
        }
    }
}

/// How the computed value is compared with the expected one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Exact,
    AtMost,
    AtLeast,
    /// Series over the row's quantities is nonincreasing and ends at or above the target.
    Nonincreasing,
    /// Series is nondecreasing and stays at or below the target.
    Nondecreasing,
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// Value stated for the infinite example, holding exactly at finite scale.
    Stated,
    /// Value derived for the truncation and checked against brute force.
    Derived,
    Trivial,
    /// Limit value approached by a trend.
    Asymptotic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectedRow {
    pub quantities: Vec<Quantity>,
    pub expected: f64,
    pub check: Check,
    pub basis: Basis,
}

impl ExpectedRow {
    fn one(q: Quantity, expected: f64, check: Check, basis: Basis) -> Self {
        ExpectedRow {
            quantities: vec![q],
            expected,
            check,
            basis,
        }
    }

    fn exact(q: Quantity, expected: f64, basis: Basis) -> Self {
        Self::one(q, expected, Check::Exact, basis)
    }

    pub fn label(&self) -> String {
        match self.quantities.as_slice() {
            [q] => q.label(),
            qs => format!("{}..{}", qs[0].label(), qs[qs.len() - 1].label()),
        }
    }
}

/// A generated example: family, optional differential layer, named pools
/// and the expected table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExampleSpec {
    pub name: String,
    pub scale: Scale,
    pub family: FunctionFamily,
    pub ck: Option<CkFamily>,
    pub phi_pools: BTreeMap<String, PhiPool>,
    pub center_pools: BTreeMap<String, Vec<Vector>>,
    pub rows: Vec<ExpectedRow>,
    /// Exact partition cap needed by the rows.
    pub alpha_cap: usize,
}

/// Generator names with a one-line description.
pub const EXAMPLES: [(&str, &str); 7] = [
    ("spike", "spikes f_k(k - 1/n) = e_n in l_inf^N (params K, N)"),
    ("identity-ball", "identity on a seeded sample of the unit ball of l_2^d (params d, samples, seed, antipodal)"),
    ("l1-basis", "basis spikes in l_1 with the half-diagonal g (param K)"),
    ("lindenstrauss", "translated unit-ball bumps in l_inf^d (params d, balls, samples, seed)"),
    ("c01-spikes", "ramp-valued spikes in C[0,1] sampled on a t-grid (params K, N, t)"),
    ("ramp", "ramps of slope n/2 through (1/2, 1/2) on a uniform grid of [0,1] (params n_max, grid)"),
    ("interval-spikes", "(x - n) e_n on shrinking intervals, with first differences (params N, p)"),
];

pub fn generate(name: &str, scale: &Scale) -> Result<ExampleSpec> {
    match name {
        "spike" => gen_spike_linf(scale.usize("K", 3), scale.usize("N", 2)),
        "identity-ball" => gen_identity_ball(
            scale.usize("d", 2),
            scale.usize("samples", 8),
            scale.get("seed", 7),
            scale.get("antipodal", 1) != 0,
        ),
        "l1-basis" => gen_l1_basis(scale.usize("K", 3)),
        "lindenstrauss" => gen_lindenstrauss_bumps(
            scale.usize("d", 4),
            scale.usize("balls", 3),
            scale.usize("samples", 6),
            scale.get("seed", 11),
        ),
        "c01-spikes" => gen_c01_spikes(scale.usize("K", 3), scale.usize("N", 2), scale.usize("t", 9)),
        "ramp" => gen_ramp_family(scale.usize("n_max", 6), scale.usize("grid", 121)),
        "interval-spikes" => gen_interval_spikes_ck(scale.usize("N", 3), scale.usize("p", 5)),
        other => Err(Error::input(format!(
            "unknown example `{other}`; available: {}",
            EXAMPLES.map(|(n, _)| n).join(", ")
        ))),
    }
}

fn vector(c: Vec<f64>) -> Vector {
    Vector::new(c).expect("finite coordinates")
}

fn structural(name: &str, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::input(format!("{name}: structural check failed: {what}")))
    }
}

/// Off-diagonal minimum and overall maximum of the sup-distance matrix.
fn pairwise_range(m: &FunctionFamily) -> (f64, f64) {
    let d = family_distance_matrix(m);
    let mut lo = f64::INFINITY;
    for i in 0..d.len() {
        for j in (i + 1)..d.len() {
            lo = lo.min(d.get(i, j));
        }
    }
    (lo, d.max())
}

fn spike_domain(k: usize, n: usize) -> Result<(Vec<String>, Vec<Vector>)> {
    let mut labels = Vec::new();
    let mut coords = Vec::new();
    for kk in 1..=k {
        for nn in 1..=n {
            labels.push(format!("{kk}-1/{nn}"));
            coords.push(vector(vec![kk as f64 - 1.0 / nn as f64]));
        }
    }
    labels.push("zero".into());
    coords.push(vector(vec![k as f64 + 0.5]));
    Ok((labels, coords))
}

fn line() -> SpaceTag {
    SpaceTag::new(1, NormTag::L2).expect("valid space")
}

/// Spike family in `ℓ∞^N`: `f_k(k − 1/n) = e_n`, zero elsewhere, on the
/// `K·N` spike points plus one point where every function vanishes.
pub fn gen_spike_linf(k: usize, n: usize) -> Result<ExampleSpec> {
    if k < 2 || n < 2 {
        return Err(Error::input("spike needs K >= 2 and N >= 2"));
    }
    let space = SpaceTag::new(n, NormTag::Linf)?;
    let (labels, coords) = spike_domain(k, n)?;
    let domain = Domain::new(labels)?.with_coords(line(), coords)?;
    let size = k * n + 1;
    let functions: Vec<Function> = (0..k)
        .map(|kk| {
            let values = (0..size)
                .map(|x| {
                    if x < k * n && x / n == kk {
                        Vector::basis(n, x % n)
                    } else {
                        Vector::zeros(n)
                    }
                })
                .collect();
            Function::new(format!("f{}", kk + 1), values)
        })
        .collect();
    let family = FunctionFamily::new(domain, space, functions)?;
    let name = "spike";
    let (lo, hi) = pairwise_range(&family);
    structural(name, lo == 1.0 && hi == 1.0, "pairwise sup distances are all 1")?;
    for x in 0..size {
        let nonzero = family.functions().iter().filter(|f| !f.values[x].is_zero()).count();
        structural(name, nonzero == usize::from(x < k * n), "each spike point carries exactly one spike")?;
    }

    let mut rows = vec![
        ExpectedRow::exact(Quantity::SupDistMin, 1.0, Basis::Stated),
        ExpectedRow::exact(Quantity::SupDistMax, 1.0, Basis::Stated),
        ExpectedRow::exact(Quantity::MuAlpha { k: 1 }, 1.0, Basis::Derived),
        ExpectedRow::exact(Quantity::MuAlpha { k: 2 }, 0.0, Basis::Stated),
    ];
    for b in 1..k {
        rows.push(ExpectedRow::exact(Quantity::FamilyAlpha { k: b }, 1.0, Basis::Stated));
    }
    rows.push(ExpectedRow::exact(Quantity::FamilyAlpha { k }, 0.0, Basis::Trivial));
    for w in 1..=k * n {
        rows.push(ExpectedRow::exact(Quantity::Omega { n: w }, 1.0, Basis::Derived));
    }
    rows.push(ExpectedRow::exact(Quantity::Omega { n: k * n + 1 }, 0.0, Basis::Derived));
    rows.push(ExpectedRow::exact(
        Quantity::OmegaExt {
            n: 1,
            m: k,
            pool: "family".into(),
        },
        0.0,
        Basis::Trivial,
    ));
    let mut phi_pools = BTreeMap::new();
    phi_pools.insert("family".to_string(), PhiPool::of_family(&family));
    Ok(ExampleSpec {
        name: name.into(),
        scale: Scale::new().with("K", k as u64).with("N", n as u64),
        family,
        ck: None,
        phi_pools,
        center_pools: BTreeMap::new(),
        rows,
        alpha_cap: size,
    })
}

fn unit_sphere_point(rng: &mut ChaCha8Rng, d: usize) -> Vector {
    loop {
        let c: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let r = c.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-3 && r <= 1.0 {
            return vector(c.iter().map(|x| x / r).collect());
        }
    }
}

fn unit_ball_point(rng: &mut ChaCha8Rng, d: usize) -> Vector {
    loop {
        let c: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        if c.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
            return vector(c);
        }
    }
}

/// Seeded samples of the unit ball of `ℓ2^d`. With `antipodal` the samples
/// come in pairs `±u` on the sphere; otherwise they are uniform in the ball,
/// and a larger count extends the smaller one.
pub fn ball_samples(d: usize, samples: usize, seed: u64, antipodal: bool) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::with_capacity(samples);
    if antipodal {
        while pts.len() + 1 < samples {
            let u = unit_sphere_point(&mut rng, d);
            pts.push(-&u);
            pts.insert(pts.len() - 1, u);
        }
        if pts.len() < samples {
            pts.push(Vector::zeros(d));
        }
    } else {
        for _ in 0..samples {
            pts.push(unit_ball_point(&mut rng, d));
        }
    }
    pts
}

/// `M = {I}` on a sample of the unit ball of `ℓ2^d`.
pub fn gen_identity_ball(d: usize, samples: usize, seed: u64, antipodal: bool) -> Result<ExampleSpec> {
    if d < 2 || samples < 2 {
        return Err(Error::input("identity-ball needs d >= 2 and samples >= 2"));
    }
    let space = SpaceTag::new(d, NormTag::L2)?;
    let pts = ball_samples(d, samples, seed, antipodal);
    let name = "identity-ball";
    structural(
        name,
        pts.iter().all(|p| space.norm_of(p) <= 1.0 + 1e-12),
        "samples lie in the unit ball",
    )?;
    let domain = Domain::new((0..samples).map(|i| format!("y{i}")).collect())?.with_coords(space, pts.clone())?;
    let family = FunctionFamily::new(domain, space, vec![Function::new("I", pts.clone())])?;
    let mut centers = pts.clone();
    centers.push(Vector::zeros(d));

    let mut rows = vec![
        ExpectedRow::exact(Quantity::FamilyAlpha { k: 1 }, 0.0, Basis::Stated),
        ExpectedRow::exact(Quantity::MuAlpha { k: 1 }, 0.0, Basis::Stated),
        ExpectedRow::exact(Quantity::MuGamma { k: 1 }, 0.0, Basis::Stated),
        ExpectedRow::exact(
            Quantity::OmegaExt {
                n: 1,
                m: 1,
                pool: "identity".into(),
            },
            0.0,
            Basis::Trivial,
        ),
    ];
    if antipodal {
        rows.push(ExpectedRow::exact(Quantity::SigmaAlpha { k: 1 }, 2.0, Basis::Stated));
        rows.push(ExpectedRow::exact(Quantity::Omega { n: 1 }, 2.0, Basis::Stated));
        rows.push(ExpectedRow::exact(
            Quantity::SigmaGamma {
                k: 1,
                centers: "image+zero".into(),
            },
            1.0,
            Basis::Stated,
        ));
    } else {
        rows.push(ExpectedRow::one(Quantity::SigmaAlpha { k: 1 }, 2.0, Check::AtMost, Basis::Asymptotic));
    }
    let mut phi_pools = BTreeMap::new();
    phi_pools.insert("identity".to_string(), PhiPool::of_family(&family));
    let mut center_pools = BTreeMap::new();
    center_pools.insert("image+zero".to_string(), centers);
    Ok(ExampleSpec {
        name: name.into(),
        scale: Scale::new()
            .with("d", d as u64)
            .with("samples", samples as u64)
            .with("seed", seed)
            .with("antipodal", u64::from(antipodal)),
        family,
        ck: None,
        phi_pools,
        center_pools,
        rows,
        alpha_cap: 15,
    })
}

/// Basis spikes in `ℓ1^{K+1}`: `f_k(k) = e_k`, zero elsewhere, on
/// `{1, …, K+1}`, with `g(n) = ½e_n`.
pub fn gen_l1_basis(k: usize) -> Result<ExampleSpec> {
    if k < 2 {
        return Err(Error::input("l1-basis needs K >= 2"));
    }
    let dim = k + 1;
    let space = SpaceTag::new(dim, NormTag::L1)?;
    let domain = Domain::new((1..=dim).map(|i| i.to_string()).collect())?;
    let functions: Vec<Function> = (0..k)
        .map(|kk| {
            Function::new(
                format!("f{}", kk + 1),
                (0..dim)
                    .map(|x| if x == kk { Vector::basis(dim, kk) } else { Vector::zeros(dim) })
                    .collect(),
            )
        })
        .collect();
    let family = FunctionFamily::new(domain, space, functions.clone())?;
    let g = Function::new("g", (0..dim).map(|x| Vector::basis(dim, x).scale(0.5)).collect());
    let zero = Function::new("zero", vec![Vector::zeros(dim); dim]);
    let name = "l1-basis";
    let (lo, hi) = pairwise_range(&family);
    structural(name, lo == 1.0 && hi == 1.0, "pairwise sup distances are all 1")?;
    for f in family.functions() {
        structural(
            name,
            crate::family::sup_dist(&space, f, &g)? == 0.5,
            "every f_k is at sup distance 1/2 from g",
        )?;
    }

    let image = family.family_image();
    let mut centers: Vec<Vector> = image.points().to_vec();
    for (i, a) in image.points().iter().enumerate() {
        for b in &image.points()[i + 1..] {
            centers.push(a.midpoint(b));
        }
    }
    let mut rows = vec![
        ExpectedRow::exact(Quantity::SupDistTo { pool: "g".into() }, 0.5, Basis::Stated),
        ExpectedRow::exact(
            Quantity::FamilyGamma {
                k: 1,
                pool: "g".into(),
            },
            0.5,
            Basis::Stated,
        ),
    ];
    for b in 1..k {
        rows.push(ExpectedRow::exact(
            Quantity::SigmaGamma {
                k: b,
                centers: "midpoints".into(),
            },
            1.0,
            Basis::Stated,
        ));
        rows.push(ExpectedRow::one(
            Quantity::FamilyGamma {
                k: b,
                pool: "spikes+zero".into(),
            },
            1.0,
            Check::AtLeast,
            Basis::Derived,
        ));
    }
    let mut phi_pools = BTreeMap::new();
    phi_pools.insert("g".to_string(), PhiPool::new(&family, vec![g])?);
    let mut spikes = vec![zero];
    spikes.extend(functions);
    phi_pools.insert("spikes+zero".to_string(), PhiPool::new(&family, spikes)?);
    let mut center_pools = BTreeMap::new();
    center_pools.insert("midpoints".to_string(), centers);
    Ok(ExampleSpec {
        name: name.into(),
        scale: Scale::new().with("K", k as u64),
        family,
        ck: None,
        phi_pools,
        center_pools,
        rows,
        alpha_cap: 15,
    })
}

/// Bumps `f_n(y) = y − y_n` on sampled unit balls `B(y_n, 1)` of `ℓ∞^d`,
/// centers `y_n = 4n·e_1`, samples in antipodal pairs `y_n ± v` with
/// `‖v‖∞ = 1`. The pool holds `φ = ½ Σ f_n`.
pub fn gen_lindenstrauss_bumps(d: usize, balls: usize, samples: usize, seed: u64) -> Result<ExampleSpec> {
    if d < 1 || balls < 2 || samples < 2 || samples % 2 != 0 {
        return Err(Error::input("lindenstrauss needs d >= 1, balls >= 2 and an even samples >= 2"));
    }
    let space = SpaceTag::new(d, NormTag::Linf)?;
    let centers: Vec<Vector> = (1..=balls).map(|n| Vector::basis(d, 0).scale(4.0 * n as f64)).collect();
    let name = "lindenstrauss";
    for (i, a) in centers.iter().enumerate() {
        for b in &centers[i + 1..] {
            structural(name, space.dist(a, b) >= 2.0, "ball centers are at least 2 apart")?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut offsets: Vec<Vec<Vector>> = Vec::with_capacity(balls);
    for _ in 0..balls {
        let mut vs = Vec::with_capacity(samples);
        for _ in 0..samples / 2 {
            let mut c: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let i = rng.gen_range(0..d);
            c[i] = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let v = vector(c);
            vs.push(-&v);
            vs.insert(vs.len() - 1, v);
        }
        offsets.push(vs);
    }
    let mut labels = Vec::new();
    let mut points = Vec::new();
    for (n, vs) in offsets.iter().enumerate() {
        for (j, v) in vs.iter().enumerate() {
            labels.push(format!("b{}s{j}", n + 1));
            points.push(&centers[n] + v);
        }
    }
    let domain = Domain::new(labels)?.with_coords(space, points.clone())?;
    let size = points.len();
    let functions: Vec<Function> = (0..balls)
        .map(|n| {
            let values = (0..size)
                .map(|x| {
                    if x / samples == n {
                        &points[x] - &centers[n]
                    } else {
                        Vector::zeros(d)
                    }
                })
                .collect();
            Function::new(format!("f{}", n + 1), values)
        })
        .collect();
    let family = FunctionFamily::new(domain, space, functions)?;
    let (lo, hi) = pairwise_range(&family);
    structural(name, lo == 1.0 && hi == 1.0, "pairwise sup distances are all 1")?;
    for (x, p) in points.iter().enumerate() {
        let owners = centers.iter().filter(|c| space.dist(c, p) <= 1.0).count();
        structural(name, owners == 1 && space.dist(&centers[x / samples], p) == 1.0, "samples lie on exactly one sphere")?;
    }
    let phi = Function::new(
        "phi",
        (0..size)
            .map(|x| family.functions().iter().fold(Vector::zeros(d), |acc, f| acc.axpy(0.5, &f.values[x])))
            .collect(),
    );

    let mut rows = vec![
        ExpectedRow::exact(Quantity::SupDistMin, 1.0, Basis::Stated),
        ExpectedRow::exact(Quantity::SupDistMax, 1.0, Basis::Stated),
        ExpectedRow::exact(Quantity::MuAlpha { k: 2 }, 0.0, Basis::Stated),
        ExpectedRow::exact(Quantity::Omega { n: 1 }, 2.0, Basis::Stated),
        ExpectedRow::exact(
            Quantity::OmegaExt {
                n: 1,
                m: 1,
                pool: "phi".into(),
            },
            1.0,
            Basis::Stated,
        ),
    ];
    for b in 1..balls {
        rows.push(ExpectedRow::exact(Quantity::FamilyAlpha { k: b }, 1.0, Basis::Stated));
    }
    let mut phi_pools = BTreeMap::new();
    phi_pools.insert("phi".to_string(), PhiPool::new(&family, vec![phi])?);
    Ok(ExampleSpec {
        name: name.into(),
        scale: Scale::new()
            .with("d", d as u64)
            .with("balls", balls as u64)
            .with("samples", samples as u64)
            .with("seed", seed),
        family,
        ck: None,
        phi_pools,
        center_pools: BTreeMap::new(),
        rows,
        alpha_cap: 15,
    })
}

/// `ψ_n(t) = max(0, n(t − (1 − 1/n)))` on `[0, 1]`.
fn psi(n: usize, t: f64) -> f64 {
    let a = 1.0 - 1.0 / n as f64;
    if t <= a {
        0.0
    } else {
        n as f64 * (t - a)
    }
}

/// Spikes with values `ψ_n` in `C[0,1]`, realized in `ℓ∞^T` by evaluation
/// on `T` equally spaced points of `[0,1]`.
pub fn gen_c01_spikes(k: usize, n: usize, t_points: usize) -> Result<ExampleSpec> {
    if k < 2 || n < 1 || t_points < 2 {
        return Err(Error::input("c01-spikes needs K >= 2, N >= 1 and t >= 2"));
    }
    let space = SpaceTag::new(t_points, NormTag::Linf)?;
    let ts: Vec<f64> = (0..t_points).map(|i| i as f64 / (t_points - 1) as f64).collect();
    let psi_vec = |nn: usize| vector(ts.iter().map(|&t| psi(nn, t)).collect());
    let (labels, coords) = spike_domain(k, n)?;
    let domain = Domain::new(labels)?.with_coords(line(), coords)?;
    let size = k * n + 1;
    let functions: Vec<Function> = (0..k)
        .map(|kk| {
            let values = (0..size)
                .map(|x| {
                    if x < k * n && x / n == kk {
                        psi_vec(x % n + 1)
                    } else {
                        Vector::zeros(t_points)
                    }
                })
                .collect();
            Function::new(format!("f{}", kk + 1), values)
        })
        .collect();
    let family = FunctionFamily::new(domain, space, functions)?;
    let name = "c01-spikes";
    let (lo, hi) = pairwise_range(&family);
    structural(name, lo == 1.0 && hi == 1.0, "pairwise sup distances are all 1")?;
    let phi = Function::new(
        "phi",
        (0..size)
            .map(|x| family.functions().iter().fold(Vector::zeros(t_points), |acc, f| acc.axpy(0.5, &f.values[x])))
            .collect(),
    );

    let mut rows = vec![
        ExpectedRow::exact(Quantity::SupDistMin, 1.0, Basis::Stated),
        ExpectedRow::exact(Quantity::SupDistMax, 1.0, Basis::Stated),
        ExpectedRow::exact(Quantity::SupDistTo { pool: "phi".into() }, 0.5, Basis::Stated),
        ExpectedRow::exact(
            Quantity::OmegaExt {
                n: 1,
                m: 1,
                pool: "phi".into(),
            },
            1.0,
            Basis::Derived,
        ),
        ExpectedRow::one(
            Quantity::OmegaExt {
                n: k + 1,
                m: 1,
                pool: "phi".into(),
            },
            0.5,
            Check::AtMost,
            Basis::Derived,
        ),
    ];
    for b in 1..k {
        rows.push(ExpectedRow::exact(Quantity::FamilyAlpha { k: b }, 1.0, Basis::Stated));
    }
    let mut phi_pools = BTreeMap::new();
    phi_pools.insert("phi".to_string(), PhiPool::new(&family, vec![phi])?);
    Ok(ExampleSpec {
        name: name.into(),
        scale: Scale::new()
            .with("K", k as u64)
            .with("N", n as u64)
            .with("t", t_points as u64),
        family,
        ck: None,
        phi_pools,
        center_pools: BTreeMap::new(),
        rows,
        alpha_cap: size,
    })
}

/// `f_n(t) = clamp((t − ½ + 1/n)·n/2, 0, 1)` for `n = 2..=n_max`.
fn ramp(n: usize, t: f64) -> f64 {
    let n = n as f64;
    ((t - 0.5 + 1.0 / n) * n / 2.0).clamp(0.0, 1.0)
}

/// Ramp family on a uniform grid of `[0, 1]` with `grid` points, values in `ℝ`.
pub fn gen_ramp_family(n_max: usize, grid: usize) -> Result<ExampleSpec> {
    if n_max < 2 {
        return Err(Error::input("ramp needs n_max >= 2"));
    }
    if grid < 2 || grid - 1 < n_max {
        return Err(Error::input(format!(
            "ramp grid too coarse: step 1/{} does not resolve 1/{n_max}",
            grid.saturating_sub(1)
        )));
    }
    let space = SpaceTag::new(1, NormTag::Linf)?;
    let g = GridDomain::interval(0.0, 1.0, grid)?;
    let ts = g.points();
    let h = 1.0 / (grid - 1) as f64;
    let functions: Vec<Function> = (2..=n_max)
        .map(|n| Function::new(format!("r{n}"), ts.iter().map(|&t| vector(vec![ramp(n, t)])).collect()))
        .collect();
    let family = FunctionFamily::new(g.to_domain(), space, functions)?;
    let name = "ramp";
    for (i, f) in family.functions().iter().enumerate() {
        let mid = f.values.iter().zip(&ts).all(|(v, &t)| (0.0..=1.0).contains(&v.coords()[0]) && (t != 0.5 || v.coords()[0] == 0.5));
        structural(name, mid, &format!("ramp {} has range [0,1] and passes through (1/2, 1/2)", i + 2))?;
    }
    let count = family.len();
    let mut rows = vec![
        ExpectedRow::exact(Quantity::Nussbaum { delta: h }, n_max as f64 / 2.0 * h, Basis::Derived),
        ExpectedRow::one(Quantity::SupDistMax, 0.5, Check::AtMost, Basis::Derived),
        ExpectedRow::exact(Quantity::MuAlpha { k: count }, 0.0, Basis::Trivial),
        ExpectedRow {
            quantities: (1..=count).map(|k| Quantity::MuAlpha { k }).collect(),
            expected: 0.0,
            check: Check::Nonincreasing,
            basis: Basis::Asymptotic,
        },
    ];
    if count > 1 {
        rows.push(ExpectedRow::one(Quantity::SupDistMax, 0.25, Check::AtLeast, Basis::Derived));
    }
    Ok(ExampleSpec {
        name: name.into(),
        scale: Scale::new().with("n_max", n_max as u64).with("grid", grid as u64),
        family,
        ck: None,
        phi_pools: BTreeMap::new(),
        center_pools: BTreeMap::new(),
        rows,
        alpha_cap: 15,
    })
}

/// `f(x) = (x − n)e_n` in `ℓ1^N` on `I_n = (n − 1/(2n), n + 1/(2n))`, each
/// interval sampled at `p` interior points, with the first-order
/// difference family.
pub fn gen_interval_spikes_ck(n: usize, p: usize) -> Result<ExampleSpec> {
    if n < 2 || p < 3 {
        return Err(Error::input("interval-spikes needs N >= 2 and p >= 3"));
    }
    let space = SpaceTag::new(n, NormTag::L1)?;
    let components: Vec<GridComponent> = (1..=n)
        .map(|nn| {
            let half = 1.0 / (2.0 * nn as f64);
            let step = (2.0 * half) / (p + 1) as f64;
            GridComponent {
                start: nn as f64 - half + step,
                step,
                count: p,
            }
        })
        .collect();
    let grid = GridDomain::new(components)?;
    let name = "interval-spikes";
    for (c, comp) in grid.components().iter().enumerate() {
        let nn = (c + 1) as f64;
        let half = 1.0 / (2.0 * nn);
        structural(
            name,
            comp.point(0) > nn - half && comp.point(p - 1) < nn + half,
            "grid points lie inside their interval",
        )?;
    }
    let ranges = grid.ranges();
    let pts = grid.points();
    let values: Vec<Vector> = pts
        .iter()
        .enumerate()
        .map(|(x, &t)| {
            let c = ranges.iter().position(|r| r.contains(&x)).expect("covered");
            Vector::basis(n, c).scale(t - (c + 1) as f64)
        })
        .collect();
    let family = FunctionFamily::new(grid.to_domain(), space, vec![Function::new("f", values)])?;
    let ck = CkFamily::differentiate(family.clone(), grid, 1)?;
    let base_diam = (p - 1) as f64 / (p + 1) as f64;
    let mut rows = vec![
        ExpectedRow::exact(Quantity::DiffSigmaAlpha { p: 0, k: 1 }, base_diam, Basis::Derived),
        ExpectedRow::exact(Quantity::DiffSigmaAlpha { p: 1, k: n }, 0.0, Basis::Trivial),
        ExpectedRow {
            quantities: (1..=n).map(|k| Quantity::DiffSigmaAlpha { p: 0, k }).collect(),
            expected: 0.0,
            check: Check::Nonincreasing,
            basis: Basis::Asymptotic,
        },
    ];
    for b in 1..n {
        rows.push(ExpectedRow::exact(Quantity::DiffSigmaAlpha { p: 1, k: b }, 2.0, Basis::Stated));
    }
    Ok(ExampleSpec {
        name: name.into(),
        scale: Scale::new().with("N", n as u64).with("p", p as u64),
        family,
        ck: Some(ck),
        phi_pools: BTreeMap::new(),
        center_pools: BTreeMap::new(),
        rows,
        alpha_cap: n * p + 1,
    })
}

/// One evaluated table row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReproRow {
    pub label: String,
    pub expected: f64,
    pub computed: Vec<f64>,
    pub kind: BoundKind,
    pub check: Check,
    pub basis: Basis,
    pub pass: bool,
}

fn budget(k: usize) -> Result<Budget> {
    Budget::new(k)
}

fn phi_pool<'a>(ex: &'a ExampleSpec, name: &str) -> Result<&'a PhiPool> {
    ex.phi_pools
        .get(name)
        .ok_or_else(|| Error::UnknownLabel(format!("pool `{name}` in example `{}`", ex.name)))
}

/// Evaluates one quantity on an example.
pub fn evaluate(ex: &ExampleSpec, q: &Quantity, mode: Mode, cfg: &SolverConfig) -> Result<BudgetedValue> {
    let m = &ex.family;
    let plain = |v: f64| BudgetedValue::exact(v, crate::measures::Witness::None);
    match q {
        Quantity::SupDistMin => Ok(plain(pairwise_range(m).0)),
        Quantity::SupDistMax => Ok(plain(pairwise_range(m).1)),
        Quantity::SupDistTo { pool } => {
            let phi = phi_pool(ex, pool)?
                .candidates()
                .first()
                .ok_or_else(|| Error::input("empty pool"))?;
            let sp = m.space();
            let mut v = 0.0f64;
            for f in m.functions() {
                v = v.max(crate::family::sup_dist(&sp, f, phi)?);
            }
            Ok(plain(v))
        }
        Quantity::FamilyAlpha { k } => family_alpha_budget(m, budget(*k)?, mode, cfg),
        Quantity::FamilyBeta { k } => family_beta_sep(m, budget(*k)?, mode, cfg),
        Quantity::FamilyGamma { k, pool } => family_gamma_budget(m, budget(*k)?, phi_pool(ex, pool)?, mode, cfg),
        Quantity::MuAlpha { k } => mu_alpha_budget(m, budget(*k)?, mode, cfg),
        Quantity::MuGamma { k } => mu_gamma_budget(m, budget(*k)?, &PoolRule::values(), mode, cfg),
        Quantity::SigmaAlpha { k } => sigma_alpha_budget(m, budget(*k)?, mode, cfg),
        Quantity::SigmaGamma { k, centers } => {
            let c = ex
                .center_pools
                .get(centers)
                .ok_or_else(|| Error::UnknownLabel(format!("center pool `{centers}`")))?;
            let pool = PointSet::collapsed(m.space(), c.clone())?;
            sigma_gamma_budget(m, budget(*k)?, &pool, mode, cfg)
        }
        Quantity::Omega { n } => omega_budget(m, budget(*n)?, mode, cfg),
        Quantity::OmegaExt { n, m: mm, pool } => {
            omega_ext_budget(m, OmegaBudget::new(*n, *mm)?, phi_pool(ex, pool)?, mode, cfg)
        }
        Quantity::Nussbaum { delta } => Ok(plain(nussbaum_modulus(m, *delta, cfg.tol)?)),
        Quantity::DiffSigmaAlpha { p, k } => {
            let ck = ex
                .ck
                .as_ref()
                .ok_or_else(|| Error::input(format!("example `{}` has no differential layer", ex.name)))?;
            if *p > ck.order() {
                return Err(Error::input(format!("order {p} exceeds {}", ck.order())));
            }
            sigma_alpha_budget(ck.diff(*p), budget(*k)?, mode, cfg)
        }
    }
}

fn weakest(a: BoundKind, b: BoundKind) -> BoundKind {
    if a == BoundKind::Exact {
        b
    } else {
        a
    }
}

/// Evaluates every row of the table. The exact partition cap is raised to
/// the example's requirement if the given one is smaller.
pub fn reproduce(ex: &ExampleSpec, mode: Mode, cfg: &SolverConfig) -> Result<Vec<ReproRow>> {
    let mut cfg = *cfg;
    cfg.caps.alpha_points = cfg.caps.alpha_points.max(ex.alpha_cap);
    let tol = cfg.tol;
    let mut out = Vec::with_capacity(ex.rows.len());
    for row in &ex.rows {
        let mut computed = Vec::with_capacity(row.quantities.len());
        let mut kind = BoundKind::Exact;
        for q in &row.quantities {
            let v = evaluate(ex, q, mode, &cfg)?;
            kind = weakest(kind, v.kind);
            computed.push(v.value);
        }
        let e = row.expected;
        let pass = match row.check {
            Check::Exact => computed.iter().all(|&v| tol.eq(v, e)) && kind == BoundKind::Exact,
            Check::AtMost => computed.iter().all(|&v| tol.le(v, e)) && kind != BoundKind::LowerBound,
            Check::AtLeast => computed.iter().all(|&v| tol.le(e, v)) && kind != BoundKind::UpperBound,
            Check::Nonincreasing => {
                computed.windows(2).all(|w| tol.le(w[1], w[0])) && computed.iter().all(|&v| tol.le(e, v))
            }
            Check::Nondecreasing => {
                computed.windows(2).all(|w| tol.le(w[0], w[1])) && computed.iter().all(|&v| tol.le(v, e))
            }
        };
        out.push(ReproRow {
            label: row.label(),
            expected: e,
            computed,
            kind,
            check: row.check,
            basis: row.basis,
            pass,
        });
    }
    Ok(out)
}
