//! Certificate transforms: each construction takes explicit witnesses, builds
//! the object a compactness proof builds (cover, net, refined partition,
//! correction functions) and re-measures it with plain norm evaluations.

mod witness;

pub use witness::{exact_net, greedy_net, FamilyCover, OmegaWitness, PointwiseCovers, PointwiseNets};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::digest::short_digest;
use crate::error::{Error, Result};
use crate::family::{Function, FunctionFamily};
use crate::measures::{Partition, SolverConfig};
use crate::normed::{chebyshev_center_linf, min_enclosing_ball_l2, NormTag, PointSet, SpaceTag, Tolerance, Vector};

/// Cap on the number of net functions materialized explicitly.
pub const MATERIALIZE_CAP: u128 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub label: String,
    pub claimed: f64,
    pub measured: f64,
    pub pass: bool,
}

/// Size of the constructed object, for comparisons at transferred budgets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetTransfer {
    pub label: String,
    /// Size guaranteed by the construction.
    pub bound: u128,
    /// Size actually produced.
    pub actual: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub construction: String,
    pub inputs_digest: String,
    pub constructed: serde_json::Value,
    pub claimed: f64,
    pub measured: f64,
    pub pass: bool,
    pub budget_transfer: Option<BudgetTransfer>,
    pub extra: Vec<BoundCheck>,
}

impl CertificateReport {
    fn new(
        construction: &str,
        digest: String,
        constructed: serde_json::Value,
        claimed: f64,
        measured: f64,
        tol: Tolerance,
    ) -> Self {
        CertificateReport {
            construction: construction.to_string(),
            inputs_digest: digest,
            constructed,
            claimed,
            measured,
            pass: tol.le(measured, claimed),
            budget_transfer: None,
            extra: Vec::new(),
        }
    }

    fn with_extra(mut self, label: &str, claimed: f64, measured: f64, tol: Tolerance) -> Self {
        let pass = tol.le(measured, claimed);
        self.pass &= pass;
        self.extra.push(BoundCheck {
            label: label.to_string(),
            claimed,
            measured,
            pass,
        });
        self
    }
}

pub const ALPHA_COVER: &str = "alpha_cover";
pub const GAMMA_NET: &str = "gamma_net";
pub const REFINE_TB: &str = "refine_partition_tb";
pub const SIGMA_COVER: &str = "sigma_cover";
pub const LINDENSTRAUSS_PHI: &str = "lindenstrauss_phi";

fn diam_of(space: &SpaceTag, pts: impl Iterator<Item = Vector> + Clone) -> f64 {
    let v: Vec<Vector> = pts.collect();
    let mut best = 0.0f64;
    for i in 0..v.len() {
        for j in (i + 1)..v.len() {
            best = best.max(space.dist(&v[i], &v[j]));
        }
    }
    best
}

fn sup_dist(space: &SpaceTag, f: &[Vector], g: &[Vector]) -> f64 {
    f.iter().zip(g).map(|(a, b)| space.dist(a, b)).fold(0.0, f64::max)
}

fn check_nonnegative(name: &str, label: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::rejected(name, format!("{label} = {v} is not a nonnegative number")));
    }
    Ok(())
}

/// Validates shape and feasibility of an ω-witness.
fn check_omega(name: &str, m: &FunctionFamily, w: &OmegaWitness, tol: Tolerance) -> Result<()> {
    check_nonnegative(name, "a", w.a)?;
    let n = m.domain().len();
    if w.assignment.len() != m.len() {
        return Err(Error::rejected(
            name,
            format!("assignment covers {} of {} functions", w.assignment.len(), m.len()),
        ));
    }
    if w.partition.num_points() != n || w.partition.parts().iter().flatten().any(|&x| x >= n) {
        return Err(Error::rejected(name, "partition does not cover the domain"));
    }
    for (j, phi) in w.phis.iter().enumerate() {
        if phi.values.len() != n || phi.values.iter().any(|v| m.space().check(v).is_err()) {
            return Err(Error::rejected(name, format!("correction {j} is not a function on the domain")));
        }
    }
    let sp = m.space();
    for (f, &j) in w.assignment.iter().enumerate() {
        let Some(phi) = w.phis.get(j) else {
            return Err(Error::rejected(
                name,
                format!("function {f} assigned to correction {j}, but only {} exist", w.phis.len()),
            ));
        };
        let fv = &m.functions()[f].values;
        for (i, part) in w.partition.parts().iter().enumerate() {
            let d = diam_of(&sp, part.iter().map(|&x| &fv[x] - &phi.values[x]));
            if !tol.le(d, w.a) {
                return Err(Error::rejected(
                    name,
                    format!("diam((f{f} - phi{j})(A{i})) = {d} exceeds a = {}", w.a),
                ));
            }
        }
    }
    Ok(())
}

fn check_representatives(name: &str, p: &Partition, reps: &[usize]) -> Result<()> {
    if reps.len() != p.num_parts() {
        return Err(Error::rejected(
            name,
            format!("{} representatives for {} parts", reps.len(), p.num_parts()),
        ));
    }
    for (i, (&x, part)) in reps.iter().zip(p.parts()).enumerate() {
        if !part.contains(&x) {
            return Err(Error::rejected(name, format!("representative {x} is not in part A{i}")));
        }
    }
    Ok(())
}

fn pow_sum(sizes: impl Iterator<Item = usize>, n: usize) -> u128 {
    sizes.fold(0u128, |acc, k| acc.saturating_add((k as u128).saturating_pow(n as u32)))
}

/// Builds the cover `M_{j,h} = {f ∈ M_j : f(x_i) ∈ B^j_{h(i)}}` and checks
/// that every piece has sup diameter at most `b + 2a`.
pub fn construct_alpha_cover(
    m: &FunctionFamily,
    w: &OmegaWitness,
    covers: &PointwiseCovers,
    cfg: &SolverConfig,
) -> Result<CertificateReport> {
    let name = ALPHA_COVER;
    let tol = cfg.tol;
    check_omega(name, m, w, tol)?;
    check_representatives(name, &w.partition, &covers.representatives)?;
    check_nonnegative(name, "b", covers.b)?;
    if covers.pieces.len() != w.phis.len() {
        return Err(Error::rejected(
            name,
            format!("{} piece lists for {} corrections", covers.pieces.len(), w.phis.len()),
        ));
    }
    let sp = m.space();
    for (j, pieces) in covers.pieces.iter().enumerate() {
        for (h, piece) in pieces.iter().enumerate() {
            let d = diam_of(&sp, piece.iter().cloned());
            if !tol.le(d, covers.b) {
                return Err(Error::rejected(name, format!("piece B{j}_{h} has diameter {d} > b = {}", covers.b)));
            }
        }
    }
    let mut keys: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (f, &j) in w.assignment.iter().enumerate() {
        let mut h = Vec::with_capacity(covers.representatives.len());
        for &x in &covers.representatives {
            let v = &m.functions()[f].values[x];
            let pos = covers.pieces[j]
                .iter()
                .position(|piece| piece.iter().any(|p| sp.dist(p, v) <= tol.slack(0.0)))
                .ok_or_else(|| Error::rejected(name, format!("f{f}(x{x}) lies in no piece for correction {j}")))?;
            h.push(pos);
        }
        let key = (j, h);
        match keys.iter().position(|k| *k == key) {
            Some(g) => groups[g].push(f),
            None => {
                keys.push(key);
                groups.push(vec![f]);
            }
        }
    }
    let measured = groups
        .iter()
        .map(|g| {
            let mut d = 0.0f64;
            for (a, &f) in g.iter().enumerate() {
                for &h in &g[a + 1..] {
                    d = d.max(sup_dist(&sp, &m.functions()[f].values, &m.functions()[h].values));
                }
            }
            d
        })
        .fold(0.0, f64::max);
    let constructed = json!({
        "groups": keys.iter().zip(&groups).map(|((j, h), g)| json!({
            "correction": j,
            "pieces": h,
            "functions": g.iter().map(|&f| m.functions()[f].name.clone()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    });
    let mut r = CertificateReport::new(
        name,
        short_digest(&(m, w, covers)),
        constructed,
        covers.b + 2.0 * w.a,
        measured,
        tol,
    );
    r.budget_transfer = Some(BudgetTransfer {
        label: "cover size".into(),
        bound: pow_sum(covers.pieces.iter().map(|p| p.len()), covers.representatives.len()),
        actual: groups.len(),
    });
    Ok(r)
}

/// `ψ_{j,h}(x) = φ_j(x) − φ_j(x_i) + y^j_{h(i)}` for `x ∈ A_i`.
fn psi(m: &FunctionFamily, w: &OmegaWitness, nets: &PointwiseNets, labels: &[usize], j: usize, h: &[usize]) -> Vec<Vector> {
    let phi = &w.phis[j].values;
    (0..m.domain().len())
        .map(|x| {
            let i = labels[x];
            let xi = nets.representatives[i];
            &(&phi[x] - &phi[xi]) + &nets.centers[j][h[i]]
        })
        .collect()
}

/// Builds the net functions `ψ_{j,h}` and checks every `f` is within `a + b`
/// of one of them.
pub fn construct_gamma_net(
    m: &FunctionFamily,
    w: &OmegaWitness,
    nets: &PointwiseNets,
    cfg: &SolverConfig,
) -> Result<CertificateReport> {
    let name = GAMMA_NET;
    let tol = cfg.tol;
    check_omega(name, m, w, tol)?;
    check_representatives(name, &w.partition, &nets.representatives)?;
    check_nonnegative(name, "b", nets.b)?;
    if nets.centers.len() != w.phis.len() {
        return Err(Error::rejected(
            name,
            format!("{} center lists for {} corrections", nets.centers.len(), w.phis.len()),
        ));
    }
    let sp = m.space();
    let nearest = |j: usize, v: &Vector| -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (h, c) in nets.centers[j].iter().enumerate() {
            let d = sp.dist(c, v);
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((h, d));
            }
        }
        best
    };
    let mut own: Vec<Vec<usize>> = Vec::with_capacity(m.len());
    for (f, &j) in w.assignment.iter().enumerate() {
        let mut h = Vec::with_capacity(nets.representatives.len());
        for &x in &nets.representatives {
            let v = &m.functions()[f].values[x];
            match nearest(j, v) {
                Some((pos, d)) if tol.le(d, nets.b) => h.push(pos),
                _ => {
                    return Err(Error::rejected(
                        name,
                        format!("f{f}(x{x}) is farther than b = {} from the net for correction {j}", nets.b),
                    ))
                }
            }
        }
        own.push(h);
    }
    let labels = w.partition.labels();
    let n = nets.representatives.len();
    let total = pow_sum(nets.centers.iter().map(|c| c.len()), n);
    let mut psis: Vec<(usize, Vec<usize>)> = Vec::new();
    let materialized = total <= MATERIALIZE_CAP;
    if materialized {
        for (j, c) in nets.centers.iter().enumerate() {
            if c.is_empty() {
                continue;
            }
            let mut h = vec![0usize; n];
            loop {
                psis.push((j, h.clone()));
                let mut pos = n;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    h[pos] += 1;
                    if h[pos] < c.len() {
                        break;
                    }
                    h[pos] = 0;
                }
                if h.iter().all(|&v| v == 0) {
                    break;
                }
            }
        }
    } else {
        for (f, h) in own.iter().enumerate() {
            let key = (w.assignment[f], h.clone());
            if !psis.contains(&key) {
                psis.push(key);
            }
        }
    }
    let values: Vec<Vec<Vector>> = psis.iter().map(|(j, h)| psi(m, w, nets, &labels, *j, h)).collect();
    let measured = m
        .functions()
        .iter()
        .map(|f| values.iter().map(|p| sup_dist(&sp, &f.values, p)).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let constructed = json!({
        "materialized": materialized,
        "nets": psis.iter().map(|(j, h)| json!({"correction": j, "centers": h})).collect::<Vec<_>>(),
    });
    let mut r = CertificateReport::new(
        name,
        short_digest(&(m, w, nets)),
        constructed,
        w.a + nets.b,
        measured,
        tol,
    );
    r.budget_transfer = Some(BudgetTransfer {
        label: "net size".into(),
        bound: total,
        actual: psis.len(),
    });
    Ok(r)
}

/// Refines `{A_i}` by the preimages `φ_j^{-1}(K_l)`, where `K_l` are the
/// first-fit cells of a `δ`-net of `⋃_j φ_j(Ω)`, and checks that every `f`
/// oscillates by at most `a + 2δ` on every cell.
pub fn refine_partition_tb(
    m: &FunctionFamily,
    w: &OmegaWitness,
    net: &[Vector],
    delta: f64,
    cfg: &SolverConfig,
) -> Result<CertificateReport> {
    let name = REFINE_TB;
    let tol = cfg.tol;
    check_omega(name, m, w, tol)?;
    check_nonnegative(name, "delta", delta)?;
    if net.is_empty() {
        return Err(Error::rejected(name, "delta-net is empty"));
    }
    let sp = m.space();
    let n = m.domain().len();
    let mut labelings = vec![w.partition.labels()];
    for (j, phi) in w.phis.iter().enumerate() {
        let mut lab = Vec::with_capacity(n);
        for x in 0..n {
            let l = net
                .iter()
                .position(|z| tol.le(sp.dist(z, &phi.values[x]), delta))
                .ok_or_else(|| Error::rejected(name, format!("phi{j}(x{x}) is farther than delta = {delta} from the net")))?;
            lab.push(l);
        }
        labelings.push(lab);
    }
    let refined = Partition::refine(&labelings);
    let measured = m
        .functions()
        .iter()
        .flat_map(|f| {
            refined
                .parts()
                .iter()
                .map(move |s| diam_of(&sp, s.iter().map(|&x| f.values[x].clone())))
        })
        .fold(0.0, f64::max);
    let bound = (w.partition.num_parts() as u128)
        .saturating_mul((net.len() as u128).saturating_pow(w.phis.len() as u32));
    let mut r = CertificateReport::new(
        name,
        short_digest(&(m, w, net, delta)),
        json!({ "partition": refined.parts() }),
        w.a + 2.0 * delta,
        measured,
        tol,
    );
    r.budget_transfer = Some(BudgetTransfer {
        label: "refined parts".into(),
        bound,
        actual: refined.num_parts(),
    });
    Ok(r)
}

fn check_cover(name: &str, m: &FunctionFamily, cover: &FamilyCover, tol: Tolerance) -> Result<()> {
    check_nonnegative(name, "a", cover.a)?;
    let mut seen = vec![false; m.len()];
    for (g, group) in cover.groups.iter().enumerate() {
        if group.is_empty() {
            return Err(Error::rejected(name, format!("group {g} is empty")));
        }
        for &f in group {
            if f >= m.len() {
                return Err(Error::rejected(name, format!("group {g} names function {f} outside the family")));
            }
            seen[f] = true;
        }
    }
    if let Some(f) = seen.iter().position(|s| !s) {
        return Err(Error::rejected(name, format!("function {f} is in no group")));
    }
    let sp = m.space();
    for (g, group) in cover.groups.iter().enumerate() {
        for (a, &f) in group.iter().enumerate() {
            for &h in &group[a + 1..] {
                let d = sup_dist(&sp, &m.functions()[f].values, &m.functions()[h].values);
                if !tol.le(d, cover.a) {
                    return Err(Error::rejected(
                        name,
                        format!("group {g}: sup distance {d} between f{f} and f{h} exceeds a = {}", cover.a),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Covers `M(Ω)` by balls of radius `a + δ` around a `δ`-net of the images
/// of one representative per cover group.
pub fn sigma_cover_from_alpha(
    m: &FunctionFamily,
    cover: &FamilyCover,
    net: &[Vector],
    delta: f64,
    cfg: &SolverConfig,
) -> Result<CertificateReport> {
    let name = SIGMA_COVER;
    let tol = cfg.tol;
    check_cover(name, m, cover, tol)?;
    check_nonnegative(name, "delta", delta)?;
    let sp = m.space();
    let nearest = |v: &Vector| net.iter().map(|z| sp.dist(z, v)).fold(f64::INFINITY, f64::min);
    let reps: Vec<usize> = cover.groups.iter().map(|g| *g.iter().min().expect("nonempty")).collect();
    for &f in &reps {
        for (x, v) in m.functions()[f].values.iter().enumerate() {
            if !tol.le(nearest(v), delta) {
                return Err(Error::rejected(
                    name,
                    format!("f{f}(x{x}) is farther than delta = {delta} from the net"),
                ));
            }
        }
    }
    let measured = m
        .functions()
        .iter()
        .flat_map(|f| f.values.iter())
        .map(nearest)
        .fold(0.0, f64::max);
    let mut r = CertificateReport::new(
        name,
        short_digest(&(m, cover, net, delta)),
        json!({ "representatives": reps, "centers": net }),
        cover.a + delta,
        measured,
        tol,
    );
    r.budget_transfer = Some(BudgetTransfer {
        label: "balls".into(),
        bound: net.len() as u128,
        actual: net.len(),
    });
    Ok(r)
}

/// `φ_i(x)` is the Chebyshev center of the net `F_{i,x}` of `M_i(x)`.
/// `nets[i][x]` defaults to `M_i(x)` itself.
pub fn lindenstrauss_phi(
    m: &FunctionFamily,
    cover: &FamilyCover,
    nets: Option<&[Vec<Vec<Vector>>]>,
    delta: f64,
    cfg: &SolverConfig,
) -> Result<CertificateReport> {
    let name = LINDENSTRAUSS_PHI;
    let tol = cfg.tol;
    let sp = m.space();
    let factor = match sp.norm {
        NormTag::Linf => 0.5,
        NormTag::L2 => {
            let d = sp.dim as f64;
            (d / (2.0 * (d + 1.0))).sqrt()
        }
        NormTag::L1 => {
            return Err(Error::UnsupportedSpace(
                "Chebyshev corrections need Linf or L2 values".into(),
            ))
        }
    };
    check_cover(name, m, cover, tol)?;
    check_nonnegative(name, "delta", delta)?;
    let n = m.domain().len();
    let mut phis: Vec<Function> = Vec::with_capacity(cover.groups.len());
    for (i, group) in cover.groups.iter().enumerate() {
        let mut values = Vec::with_capacity(n);
        for x in 0..n {
            let f_net: Vec<Vector> = match nets {
                Some(nets) => nets
                    .get(i)
                    .and_then(|g| g.get(x))
                    .cloned()
                    .ok_or_else(|| Error::rejected(name, format!("no net for group {i} at x{x}")))?,
                None => group.iter().map(|&f| m.functions()[f].values[x].clone()).collect(),
            };
            let set = PointSet::new(sp, f_net).map_err(|e| Error::rejected(name, format!("net for group {i} at x{x}: {e}")))?;
            let d = diam_of(&sp, set.points().iter().cloned());
            if !tol.le(d, cover.a) {
                return Err(Error::rejected(name, format!("net for group {i} at x{x} has diameter {d} > a")));
            }
            for &f in group {
                let v = &m.functions()[f].values[x];
                let near = set.points().iter().map(|z| sp.dist(z, v)).fold(f64::INFINITY, f64::min);
                if !tol.le(near, delta) {
                    return Err(Error::rejected(
                        name,
                        format!("f{f}(x{x}) is farther than delta = {delta} from the net of group {i}"),
                    ));
                }
            }
            let ball = match sp.norm {
                NormTag::Linf => chebyshev_center_linf(&set)?,
                _ => min_enclosing_ball_l2(&set, cfg.caps.ball_dim)?,
            };
            values.push(ball.center);
        }
        phis.push(Function::new(format!("phi{i}"), values));
    }
    let mut measured = 0.0f64;
    let mut omega_value = 0.0f64;
    let mut owner = vec![usize::MAX; m.len()];
    for (i, group) in cover.groups.iter().enumerate() {
        for &f in group {
            measured = measured.max(sup_dist(&sp, &m.functions()[f].values, &phis[i].values));
            if owner[f] == usize::MAX {
                owner[f] = i;
            }
        }
    }
    for (f, &i) in owner.iter().enumerate() {
        let fv = &m.functions()[f].values;
        omega_value = omega_value.max(diam_of(&sp, (0..n).map(|x| &fv[x] - &phis[i].values[x])));
    }
    let claimed = factor * cover.a + delta;
    let r = CertificateReport::new(
        name,
        short_digest(&(m, cover, nets, delta)),
        json!({ "corrections": phis, "assignment": owner }),
        claimed,
        measured,
        tol,
    );
    Ok(r.with_extra("single-part corrected oscillation", 2.0 * claimed, omega_value, tol))
}

/// Deliberate witness corruptions used by the negative tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Corruption {
    /// Claim a value strictly below the one the witness achieves.
    UnderstateBound,
    /// Remove one element of the witness.
    DropWitnessElement,
    /// Point an index outside its valid range.
    BreakIndex,
}

impl Corruption {
    pub const ALL: [Corruption; 3] = [
        Corruption::UnderstateBound,
        Corruption::DropWitnessElement,
        Corruption::BreakIndex,
    ];
}

impl std::str::FromStr for Corruption {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "understate" => Ok(Corruption::UnderstateBound),
            "drop" => Ok(Corruption::DropWitnessElement),
            "break-index" => Ok(Corruption::BreakIndex),
            other => Err(Error::input(format!(
                "unknown corruption `{other}` (expected understate, drop, break-index)"
            ))),
        }
    }
}

impl std::fmt::Display for Corruption {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Corruption::UnderstateBound => "understate",
            Corruption::DropWitnessElement => "drop",
            Corruption::BreakIndex => "break-index",
        })
    }
}

/// Inputs for one of the five constructions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum CertificateInput {
    AlphaCover { omega: OmegaWitness, covers: PointwiseCovers },
    GammaNet { omega: OmegaWitness, nets: PointwiseNets },
    RefineTb { omega: OmegaWitness, net: Vec<Vector>, delta: f64 },
    SigmaCover { cover: FamilyCover, net: Vec<Vector>, delta: f64 },
    Lindenstrauss { cover: FamilyCover, delta: f64 },
}

/// Value actually achieved by an ω-witness.
fn achieved_omega(m: &FunctionFamily, w: &OmegaWitness) -> f64 {
    let sp = m.space();
    let mut v = 0.0f64;
    for (f, &j) in w.assignment.iter().enumerate() {
        let fv = &m.functions()[f].values;
        for part in w.partition.parts() {
            v = v.max(diam_of(&sp, part.iter().map(|&x| &fv[x] - &w.phis[j].values[x])));
        }
    }
    v
}

fn achieved_cover(m: &FunctionFamily, c: &FamilyCover) -> f64 {
    let sp = m.space();
    let mut v = 0.0f64;
    for g in &c.groups {
        for (a, &f) in g.iter().enumerate() {
            for &h in &g[a + 1..] {
                v = v.max(sup_dist(&sp, &m.functions()[f].values, &m.functions()[h].values));
            }
        }
    }
    v
}

fn understate(truth: f64) -> f64 {
    truth - (0.5 * truth).max(1e-6)
}

fn drop_from_cover(c: &mut FamilyCover) {
    let last = c.groups.iter().flatten().copied().max().expect("nonempty cover");
    for g in &mut c.groups {
        g.retain(|&f| f != last);
    }
    c.groups.retain(|g| !g.is_empty());
}

impl CertificateInput {
    pub fn construction(&self) -> &'static str {
        match self {
            CertificateInput::AlphaCover { .. } => ALPHA_COVER,
            CertificateInput::GammaNet { .. } => GAMMA_NET,
            CertificateInput::RefineTb { .. } => REFINE_TB,
            CertificateInput::SigmaCover { .. } => SIGMA_COVER,
            CertificateInput::Lindenstrauss { .. } => LINDENSTRAUSS_PHI,
        }
    }

    pub fn run(&self, m: &FunctionFamily, cfg: &SolverConfig) -> Result<CertificateReport> {
        match self {
            CertificateInput::AlphaCover { omega, covers } => construct_alpha_cover(m, omega, covers, cfg),
            CertificateInput::GammaNet { omega, nets } => construct_gamma_net(m, omega, nets, cfg),
            CertificateInput::RefineTb { omega, net, delta } => refine_partition_tb(m, omega, net, *delta, cfg),
            CertificateInput::SigmaCover { cover, net, delta } => sigma_cover_from_alpha(m, cover, net, *delta, cfg),
            CertificateInput::Lindenstrauss { cover, delta } => lindenstrauss_phi(m, cover, None, *delta, cfg),
        }
    }

    /// A corrupted copy of these inputs.
    pub fn corrupt(&self, m: &FunctionFamily, mode: Corruption) -> CertificateInput {
        let mut out = self.clone();
        let n = m.domain().len();
        match (&mut out, mode) {
            (
                CertificateInput::AlphaCover { omega, .. }
                | CertificateInput::GammaNet { omega, .. }
                | CertificateInput::RefineTb { omega, .. },
                Corruption::UnderstateBound,
            ) => omega.a = understate(achieved_omega(m, omega)),
            (
                CertificateInput::SigmaCover { cover, .. } | CertificateInput::Lindenstrauss { cover, .. },
                Corruption::UnderstateBound,
            ) => cover.a = understate(achieved_cover(m, cover)),
            (
                CertificateInput::AlphaCover { omega, .. }
                | CertificateInput::GammaNet { omega, .. }
                | CertificateInput::RefineTb { omega, .. },
                Corruption::DropWitnessElement,
            ) => {
                omega.assignment.pop();
            }
            (
                CertificateInput::SigmaCover { cover, .. } | CertificateInput::Lindenstrauss { cover, .. },
                Corruption::DropWitnessElement,
            ) => drop_from_cover(cover),
            (CertificateInput::AlphaCover { covers, .. }, Corruption::BreakIndex) => covers.representatives[0] = n,
            (CertificateInput::GammaNet { nets, .. }, Corruption::BreakIndex) => nets.representatives[0] = n,
            (CertificateInput::RefineTb { omega, .. }, Corruption::BreakIndex) => {
                omega.assignment[0] = omega.phis.len()
            }
            (
                CertificateInput::SigmaCover { cover, .. } | CertificateInput::Lindenstrauss { cover, .. },
                Corruption::BreakIndex,
            ) => cover.groups[0][0] = m.len(),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{omega_ext_budget, Domain, OmegaBudget, PhiPool};
    use crate::measures::{Budget, Mode, Witness};

    fn spikes() -> FunctionFamily {
        // two spikes in l_inf^2 on three points
        let sp = SpaceTag::new(2, NormTag::Linf).unwrap();
        let v = |a: f64, b: f64| Vector::new(vec![a, b]).unwrap();
        FunctionFamily::new(
            Domain::indexed(3).unwrap(),
            sp,
            vec![
                Function::new("f0", vec![v(1.0, 0.0), v(0.0, 0.0), v(0.0, 0.0)]),
                Function::new("f1", vec![v(0.0, 0.0), v(0.0, 1.0), v(0.0, 0.0)]),
                Function::new("f2", vec![v(0.0, 0.0), v(0.0, 0.0), v(0.0, 0.0)]),
            ],
        )
        .unwrap()
    }

    fn inputs(m: &FunctionFamily) -> Vec<CertificateInput> {
        let cfg = SolverConfig::default();
        let pool = PhiPool::of_family(m);
        let k = Budget::new(2).unwrap();
        let v = omega_ext_budget(m, OmegaBudget::new(2, 2).unwrap(), &pool, Mode::Exact, &cfg).unwrap();
        let Witness::Corrected(c) = &v.witness else { panic!() };
        let omega = OmegaWitness::from_corrected(&pool, c, v.value).unwrap();
        let covers = PointwiseCovers::from_alpha(m, &omega, k, Mode::Exact, &cfg).unwrap();
        let nets = PointwiseNets::from_gamma(m, &omega, k, Mode::Exact, &cfg).unwrap();
        let cover = FamilyCover::from_alpha(m, k, Mode::Exact, &cfg).unwrap();
        let reps: Vec<&Function> = cover.groups.iter().map(|g| &m.functions()[g[0]]).collect();
        vec![
            CertificateInput::AlphaCover { omega: omega.clone(), covers },
            CertificateInput::GammaNet { omega: omega.clone(), nets },
            CertificateInput::RefineTb {
                net: exact_net(omega.phis.iter()),
                omega,
                delta: 0.0,
            },
            CertificateInput::SigmaCover {
                net: exact_net(reps),
                cover: cover.clone(),
                delta: 0.0,
            },
            CertificateInput::Lindenstrauss { cover, delta: 0.0 },
        ]
    }

    #[test]
    fn all_constructions_pass_and_reject_corruptions() {
        let m = spikes();
        let cfg = SolverConfig::default();
        for input in inputs(&m) {
            let r = input.run(&m, &cfg).unwrap();
            assert!(r.pass, "{}: measured {} claimed {}", r.construction, r.measured, r.claimed);
            for mode in Corruption::ALL {
                let e = input.corrupt(&m, mode).run(&m, &cfg).unwrap_err();
                assert!(matches!(e, Error::Rejected { .. }), "{} {mode}: {e}", input.construction());
            }
        }
    }

    #[test]
    fn two_function_midpoint() {
        let sp = SpaceTag::new(1, NormTag::Linf).unwrap();
        let m = FunctionFamily::new(
            Domain::indexed(2).unwrap(),
            sp,
            vec![
                Function::new("a", vec![Vector::new(vec![0.0]).unwrap(), Vector::new(vec![1.0]).unwrap()]),
                Function::new("b", vec![Vector::new(vec![2.0]).unwrap(), Vector::new(vec![1.0]).unwrap()]),
            ],
        )
        .unwrap();
        let cover = FamilyCover {
            groups: vec![vec![0, 1]],
            a: 2.0,
        };
        let r = lindenstrauss_phi(&m, &cover, None, 0.0, &SolverConfig::default()).unwrap();
        assert_eq!(r.measured, 1.0);
        assert_eq!(r.claimed, 1.0);
        assert!(r.pass);
    }

    #[test]
    fn l1_values_are_unsupported() {
        let sp = SpaceTag::new(1, NormTag::L1).unwrap();
        let m = FunctionFamily::new(
            Domain::indexed(1).unwrap(),
            sp,
            vec![Function::new("a", vec![Vector::new(vec![0.0]).unwrap()])],
        )
        .unwrap();
        let cover = FamilyCover { groups: vec![vec![0]], a: 0.0 };
        let e = lindenstrauss_phi(&m, &cover, None, 0.0, &SolverConfig::default()).unwrap_err();
        assert!(matches!(e, Error::UnsupportedSpace(_)));
    }
}
