//! Invariant suites run on a single family: budgeted sandwich inequalities,
//! axiom surrogates and certificate soundness with negative tests.

use serde::{Deserialize, Serialize};

use crate::certificates::{
    exact_net, greedy_net, CertificateInput, Corruption, FamilyCover, OmegaWitness, PointwiseCovers, PointwiseNets,
};
use crate::error::{Error, Result};
use crate::family::{
    family_alpha_budget, family_beta_sep, family_gamma_budget, mu_alpha_budget, mu_gamma_budget, omega_budget, omega_ext_budget,
    scale, sigma_alpha_budget, FunctionFamily, OmegaBudget, PhiPool, PoolRule,
};
use crate::measures::{alpha_budget, beta_sep, gamma_budget, Budget, Mode, SolverConfig, Witness};
use crate::normed::{NormTag, PointSet};

/// One checked relation `lhs ≤ rhs` (or `lhs = rhs` for identities).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    pub budget: String,
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    pub detail: Option<String>,
}

struct Recorder<'a> {
    cfg: &'a SolverConfig,
    out: Vec<InvariantCheck>,
}

impl Recorder<'_> {
    fn le(&mut self, name: &str, budget: String, lhs: f64, rhs: f64) {
        let pass = self.cfg.tol.le(lhs, rhs);
        self.out.push(InvariantCheck {
            name: name.into(),
            budget,
            lhs,
            rhs,
            pass,
            detail: None,
        });
    }

    fn identical(&mut self, name: &str, budget: String, lhs: f64, rhs: f64) {
        self.out.push(InvariantCheck {
            name: name.into(),
            budget,
            lhs,
            rhs,
            pass: lhs == rhs,
            detail: None,
        });
    }
}

fn b(k: usize) -> Budget {
    Budget::new(k).expect("positive budget")
}

/// Sandwich relations between the set measures of one point set.
fn set_sandwich(r: &mut Recorder, label: &str, s: &PointSet) -> Result<()> {
    let cfg = r.cfg;
    for k in 1..=s.len() {
        let a = alpha_budget(s, b(k), Mode::Exact, cfg)?.value;
        let g_in = gamma_budget(s, b(k), s, Mode::Exact, cfg)?.value;
        r.le(&format!("{label}: gamma(pool=S) <= alpha"), format!("k={k}"), g_in, a);
        r.le(&format!("{label}: alpha <= 2 gamma(pool=S)"), format!("k={k}"), a, 2.0 * g_in);
        if k < s.len() {
            let be = beta_sep(s, b(k), Mode::Exact, cfg)?.value;
            r.le(&format!("{label}: beta <= alpha"), format!("k={k}"), be, a);
            r.le(&format!("{label}: alpha <= 2 beta"), format!("k={k}"), a, 2.0 * be);
        }
    }
    Ok(())
}

/// Budgeted sandwich inequalities and the single-function identity, all in
/// exact mode.
pub fn sandwich_checks(m: &FunctionFamily, cfg: &SolverConfig) -> Result<Vec<InvariantCheck>> {
    let mut r = Recorder { cfg, out: Vec::new() };
    let pool = PhiPool::of_family(m);
    for k in 1..=m.len() {
        let alpha = family_alpha_budget(m, b(k), Mode::Exact, cfg)?.value;
        let mu = mu_alpha_budget(m, b(k), Mode::Exact, cfg)?.value;
        r.le("mu_alpha <= family alpha", format!("k={k}"), mu, alpha);
        let w = omega_ext_budget(m, OmegaBudget::new(1, k)?, &pool, Mode::Exact, cfg)?.value;
        r.le("omega_ext(1,k; pool=M) <= 2 family alpha", format!("k={k}"), w, 2.0 * alpha);
        let g = family_gamma_budget(m, b(k), &pool, Mode::Exact, cfg)?.value;
        r.le("family gamma(pool=M) <= family alpha", format!("k={k}"), g, alpha);
        r.le("family alpha <= 2 family gamma(pool=M)", format!("k={k}"), alpha, 2.0 * g);
        let mu_g = mu_gamma_budget(m, b(k), &PoolRule::Phi(pool.clone()), Mode::Exact, cfg)?.value;
        r.le("mu_gamma(pool values) <= family gamma(pool=M)", format!("k={k}"), mu_g, g);
        r.le("omega_ext(1,k; pool=M) <= 2 family gamma(pool=M)", format!("k={k}"), w, 2.0 * g);
        if k < m.len() {
            let be = family_beta_sep(m, b(k), Mode::Exact, cfg)?.value;
            r.le("family beta <= family alpha", format!("k={k}"), be, alpha);
            r.le("family alpha <= 2 family beta", format!("k={k}"), alpha, 2.0 * be);
        }
    }
    let other = PhiPool::from_family(scale(0.5, m)?);
    let budgets = OmegaBudget::new(2.min(m.domain().len()), 2.min(m.len()))?;
    let own = omega_ext_budget(m, budgets, &pool, Mode::Exact, cfg)?.value;
    let foreign = omega_ext_budget(m, budgets, &other, Mode::Exact, cfg)?.value;
    r.le("omega_ext(pool=M) <= 2 omega_ext(pool=M/2)", format!("n={},m={}", budgets.n.get(), budgets.m.get()), own, 2.0 * foreign);
    for x in 0..m.domain().len() {
        set_sandwich(&mut r, &format!("M(x{x})"), &m.at_index(x))?;
    }
    let image = m.family_image();
    if image.len() <= cfg.caps.alpha_points {
        set_sandwich(&mut r, "M(Omega)", &image)?;
    }
    for (i, f) in m.functions().iter().enumerate() {
        let single = m.subfamily(&[i])?;
        let values = PointSet::new(m.space(), f.values.clone())?;
        for n in 1..=m.domain().len() {
            let w = omega_budget(&single, b(n), Mode::Exact, cfg)?.value;
            let a = alpha_budget(&values, b(n), Mode::Exact, cfg)?.value;
            r.identical(&format!("omega({{{}}}) = sigma_alpha({{{}}})", f.name, f.name), format!("n={n}"), w, a);
        }
    }
    Ok(r.out)
}

/// Monotonicity under inclusion and homogeneity at fixed budgets.
pub fn axiom_checks(m: &FunctionFamily, cfg: &SolverConfig) -> Result<Vec<InvariantCheck>> {
    let mut r = Recorder { cfg, out: Vec::new() };
    let k = b(2.min(m.len()));
    if m.len() > 1 {
        let sub = m.subfamily(&(0..m.len() - 1).collect::<Vec<_>>())?;
        let pairs = [
            ("family alpha", family_alpha_budget(&sub, k, Mode::Exact, cfg)?, family_alpha_budget(m, k, Mode::Exact, cfg)?),
            ("mu_alpha", mu_alpha_budget(&sub, k, Mode::Exact, cfg)?, mu_alpha_budget(m, k, Mode::Exact, cfg)?),
            ("omega", omega_budget(&sub, k, Mode::Exact, cfg)?, omega_budget(m, k, Mode::Exact, cfg)?),
        ];
        for (name, small, big) in pairs {
            r.le(&format!("{name} monotone under inclusion"), format!("k={}", k.get()), small.value, big.value);
        }
        if m.family_image().len() <= cfg.caps.alpha_points {
            let small = sigma_alpha_budget(&sub, k, Mode::Exact, cfg)?.value;
            let big = sigma_alpha_budget(m, k, Mode::Exact, cfg)?.value;
            r.le("sigma_alpha monotone under inclusion", format!("k={}", k.get()), small, big);
        }
    }
    let lambda = -2.0;
    let scaled = scale(lambda, m)?;
    for (name, base, sc) in [
        ("family alpha", family_alpha_budget(m, k, Mode::Exact, cfg)?, family_alpha_budget(&scaled, k, Mode::Exact, cfg)?),
        ("mu_alpha", mu_alpha_budget(m, k, Mode::Exact, cfg)?, mu_alpha_budget(&scaled, k, Mode::Exact, cfg)?),
        ("omega", omega_budget(m, k, Mode::Exact, cfg)?, omega_budget(&scaled, k, Mode::Exact, cfg)?),
    ] {
        let target = lambda.abs() * base.value;
        let pass = cfg.tol.eq(sc.value, target);
        r.out.push(InvariantCheck {
            name: format!("{name} homogeneous"),
            budget: format!("k={}, lambda={lambda}", k.get()),
            lhs: sc.value,
            rhs: target,
            pass,
            detail: None,
        });
    }
    Ok(r.out)
}

/// Exact witnesses for the five constructions on `m`.
pub fn certificate_inputs(m: &FunctionFamily, cfg: &SolverConfig) -> Result<Vec<CertificateInput>> {
    let pool = PhiPool::of_family(m);
    let k = b(2);
    let delta = 0.25;
    let sp = m.space();
    let budgets = OmegaBudget::new(2.min(m.domain().len()), 2.min(m.len()))?;
    let v = omega_ext_budget(m, budgets, &pool, Mode::Exact, cfg)?;
    let Witness::Corrected(c) = &v.witness else {
        return Err(Error::input("extended modulus returned no corrected partition"));
    };
    let omega = OmegaWitness::from_corrected(&pool, c, v.value)?;
    let covers = PointwiseCovers::from_alpha(m, &omega, k, Mode::Exact, cfg)?;
    let nets = PointwiseNets::from_gamma(m, &omega, k, Mode::Exact, cfg)?;
    let phi_values: Vec<_> = omega.phis.iter().flat_map(|f| f.values.iter()).collect();
    let refine_net = greedy_net(&sp, phi_values, delta);
    let cover = FamilyCover::from_alpha(m, k, Mode::Exact, cfg)?;
    let reps: Vec<_> = cover.groups.iter().map(|g| &m.functions()[g[0]]).collect();
    let rep_values = exact_net(reps);
    let sigma_net = greedy_net(&sp, rep_values.iter(), delta);
    let mut out = vec![
        CertificateInput::AlphaCover {
            omega: omega.clone(),
            covers,
        },
        CertificateInput::GammaNet {
            omega: omega.clone(),
            nets,
        },
        CertificateInput::RefineTb {
            omega,
            net: refine_net,
            delta,
        },
        CertificateInput::SigmaCover {
            cover: cover.clone(),
            net: sigma_net,
            delta,
        },
    ];
    if sp.norm != NormTag::L1 {
        out.push(CertificateInput::Lindenstrauss { cover, delta: 0.0 });
    }
    Ok(out)
}

/// Runs every construction and every corruption of it.
pub fn certificate_checks(m: &FunctionFamily, cfg: &SolverConfig) -> Result<Vec<InvariantCheck>> {
    let mut out = Vec::new();
    for input in certificate_inputs(m, cfg)? {
        let name = input.construction();
        match input.run(m, cfg) {
            Ok(rep) => {
                out.push(InvariantCheck {
                    name: format!("{name}: measured <= claimed"),
                    budget: rep
                        .budget_transfer
                        .as_ref()
                        .map(|t| format!("{} {} <= {}", t.label, t.actual, t.bound))
                        .unwrap_or_default(),
                    lhs: rep.measured,
                    rhs: rep.claimed,
                    pass: rep.pass && rep.budget_transfer.as_ref().is_none_or(|t| t.actual as u128 <= t.bound),
                    detail: None,
                });
                for extra in &rep.extra {
                    out.push(InvariantCheck {
                        name: format!("{name}: {}", extra.label),
                        budget: String::new(),
                        lhs: extra.measured,
                        rhs: extra.claimed,
                        pass: extra.pass,
                        detail: None,
                    });
                }
            }
            Err(e) => out.push(InvariantCheck {
                name: format!("{name}: measured <= claimed"),
                budget: String::new(),
                lhs: f64::NAN,
                rhs: f64::NAN,
                pass: false,
                detail: Some(e.to_string()),
            }),
        }
        for mode in Corruption::ALL {
            let res = input.corrupt(m, mode).run(m, cfg);
            let (pass, detail) = match res {
                Err(e @ Error::Rejected { .. }) => (true, e.to_string()),
                Err(e) => (false, format!("wrong error: {e}")),
                Ok(r) => (false, format!("accepted with measured {} claimed {}", r.measured, r.claimed)),
            };
            out.push(InvariantCheck {
                name: format!("{name}: rejects {mode}"),
                budget: String::new(),
                lhs: 0.0,
                rhs: 0.0,
                pass,
                detail: Some(detail),
            });
        }
    }
    Ok(out)
}
