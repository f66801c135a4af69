//! Named quantities for `measure` and `sweep`, with budget defaults and pool
//! resolution.

use clap::ValueEnum;
use mnc_core::ck::{bck_family_alpha_budget, mu_bar_alpha_budget, omega_bar_budget, sigma_bar_alpha_budget};
use mnc_core::examples::{evaluate, ExampleSpec, Quantity};
use mnc_core::family::PhiPool;
use mnc_core::{Budget, BudgetedValue, Mode, SolverConfig};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::report::Row;

/// Built-in pool: the family itself.
pub const FAMILY_POOL: &str = "family";
/// Built-in center set: the image `M(Ω)`.
pub const IMAGE_CENTERS: &str = "image";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    /// Largest sup distance between two functions.
    SupDist,
    /// Family α under the sup metric.
    Alpha,
    Beta,
    /// Family γ with centers from `--pool`.
    Gamma,
    MuAlpha,
    MuGamma,
    SigmaAlpha,
    /// σ_γ with centers from `--centers`.
    SigmaGamma,
    Omega,
    /// Extended modulus with corrections from `--pool`.
    OmegaExt,
    MuBarAlpha,
    SigmaBarAlpha,
    OmegaBar,
    /// Family α under the BC^k norm.
    BckAlpha,
}

impl Measure {
    pub const FAMILY: [Measure; 10] = [
        Measure::SupDist,
        Measure::Alpha,
        Measure::Beta,
        Measure::Gamma,
        Measure::MuAlpha,
        Measure::MuGamma,
        Measure::SigmaAlpha,
        Measure::SigmaGamma,
        Measure::Omega,
        Measure::OmegaExt,
    ];
    pub const CK: [Measure; 4] = [
        Measure::MuBarAlpha,
        Measure::SigmaBarAlpha,
        Measure::OmegaBar,
        Measure::BckAlpha,
    ];

    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }

    pub fn needs_grid(self) -> bool {
        Measure::CK.contains(&self)
    }

    fn role(self) -> Role {
        match self {
            Measure::SupDist => Role::None,
            Measure::Omega | Measure::OmegaBar => Role::N,
            Measure::OmegaExt => Role::NM,
            _ => Role::K,
        }
    }
}

enum Role {
    None,
    K,
    N,
    NM,
}

/// Inclusive budget range, `key=lo..hi`, `key=v` or `lo..hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetRange {
    /// `k`, `n` or `m`; `None` applies to both `k` and `n`.
    pub key: Option<char>,
    pub lo: usize,
    pub hi: usize,
}

impl std::str::FromStr for BudgetRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (key, range) = match s.split_once('=') {
            Some((k, r)) => match k.trim() {
                "k" => (Some('k'), r),
                "n" => (Some('n'), r),
                "m" => (Some('m'), r),
                other => return Err(format!("unknown budget `{other}` (use k, n or m)")),
            },
            None => (None, s),
        };
        let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
        let (lo, hi) = match range.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
            None => (num(range)?, num(range)?),
        };
        if lo == 0 || hi < lo {
            return Err(format!("empty or zero budget range `{s}`"));
        }
        Ok(BudgetRange { key, lo, hi })
    }
}

/// Budget lists requested on the command line.
#[derive(Clone, Debug, Default)]
pub struct BudgetRequest {
    pub k: Option<Vec<usize>>,
    pub n: Option<Vec<usize>>,
    pub m: Option<Vec<usize>>,
}

impl BudgetRequest {
    pub fn new(budget: Option<usize>, budget_m: Option<usize>, sweeps: &[BudgetRange]) -> CliResult<Self> {
        let mut r = BudgetRequest::default();
        if let Some(b) = budget {
            if b == 0 {
                return Err(CliError::input("budgets start at 1"));
            }
            r.k = Some(vec![b]);
            r.n = Some(vec![b]);
        }
        if let Some(b) = budget_m {
            if b == 0 {
                return Err(CliError::input("budgets start at 1"));
            }
            r.m = Some(vec![b]);
        }
        for s in sweeps {
            let list: Vec<usize> = (s.lo..=s.hi).collect();
            match s.key {
                Some('k') => r.k = Some(list),
                Some('n') => r.n = Some(list),
                Some('m') => r.m = Some(list),
                _ => {
                    r.k = Some(list.clone());
                    r.n = Some(list);
                }
            }
        }
        Ok(r)
    }

    fn explicit(&self, role: &Role) -> bool {
        match role {
            Role::None => true,
            Role::K => self.k.is_some(),
            Role::N => self.n.is_some(),
            Role::NM => self.n.is_some() && self.m.is_some(),
        }
    }
}

/// Example plus the resolved pool and center names.
pub struct Context {
    pub ex: ExampleSpec,
    pub pool: String,
    pub centers: String,
    pub mode: Mode,
    pub cfg: SolverConfig,
}

impl Context {
    /// Makes `pool` and `centers` available under their names. A pool name
    /// may also be a single function of the family or of another pool.
    pub fn new(mut ex: ExampleSpec, pool: &str, centers: &str, mode: Mode, cfg: SolverConfig) -> CliResult<Self> {
        if !ex.phi_pools.contains_key(pool) {
            let resolved = if pool == FAMILY_POOL {
                Some(PhiPool::of_family(&ex.family))
            } else {
                ex.family
                    .get(pool)
                    .cloned()
                    .or_else(|| {
                        ex.phi_pools
                            .values()
                            .flat_map(|p| p.candidates())
                            .find(|g| g.name == pool)
                            .cloned()
                    })
                    .map(|g| PhiPool::new(&ex.family, vec![g]))
                    .transpose()?
            };
            match resolved {
                Some(p) => {
                    ex.phi_pools.insert(pool.to_string(), p);
                }
                None => {
                    let mut known: Vec<&str> = ex.phi_pools.keys().map(|s| s.as_str()).collect();
                    known.push(FAMILY_POOL);
                    return Err(CliError::input(format!(
                        "unknown pool `{pool}` (available: {}, or a function name)",
                        known.join(", ")
                    )));
                }
            }
        }
        if !ex.center_pools.contains_key(centers) {
            if centers != IMAGE_CENTERS {
                let mut known: Vec<&str> = ex.center_pools.keys().map(|s| s.as_str()).collect();
                known.push(IMAGE_CENTERS);
                return Err(CliError::input(format!(
                    "unknown center set `{centers}` (available: {})",
                    known.join(", ")
                )));
            }
            ex.center_pools
                .insert(centers.to_string(), ex.family.family_image().points().to_vec());
        }
        Ok(Context {
            ex,
            pool: pool.to_string(),
            centers: centers.to_string(),
            mode,
            cfg,
        })
    }

    fn k_default(&self, q: Measure) -> usize {
        let m = &self.ex.family;
        let size = match q {
            Measure::SigmaAlpha | Measure::SigmaGamma | Measure::SigmaBarAlpha => m.family_image().len(),
            Measure::Beta => m.len().saturating_sub(1),
            _ => m.len(),
        };
        size.min(6)
    }

    /// Rows for one quantity over the requested budgets. Default sweeps use
    /// `1..=min(6, size)` for `k` and `n`, `1..=min(3, |pool|)` for `m`.
    pub fn rows(&self, q: Measure, req: &BudgetRequest) -> CliResult<Vec<Row>> {
        if q.needs_grid() && self.ex.ck.is_none() {
            return Err(CliError::input(format!("`{}` needs a grid block", q.name())));
        }
        let role = q.role();
        let n_dom = self.ex.family.domain().len().min(6);
        let pool_len = self.ex.phi_pools[&self.pool].len().min(3);
        let ks = req.k.clone().unwrap_or_else(|| (1..=self.k_default(q)).collect());
        let ns = req.n.clone().unwrap_or_else(|| (1..=n_dom).collect());
        let ms = req.m.clone().unwrap_or_else(|| (1..=pool_len).collect());
        let explicit = req.explicit(&role);
        let mut out = Vec::new();
        let mut push = |budgets: String, r: CliResult<BudgetedValue>| -> CliResult<()> {
            match r {
                Ok(v) => {
                    out.push(Row::new(q.name(), budgets, &v));
                    Ok(())
                }
                Err(CliError::Input(msg)) if !explicit && msg.starts_with("undefined budget") => Ok(()),
                Err(e) => Err(e),
            }
        };
        match role {
            Role::None => push(String::new(), self.value(q, 1, 1))?,
            Role::K => {
                for &k in &ks {
                    push(format!("k={k}"), self.value(q, k, 1))?;
                }
            }
            Role::N => {
                for &n in &ns {
                    push(format!("n={n}"), self.value(q, n, 1))?;
                }
            }
            Role::NM => {
                for &n in &ns {
                    for &m in &ms {
                        push(format!("n={n},m={m}"), self.value(q, n, m))?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// One value; `b` is the `k` or `n` budget.
    pub fn value(&self, q: Measure, b: usize, m: usize) -> CliResult<BudgetedValue> {
        let (mode, cfg) = (self.mode, &self.cfg);
        let family = |quantity: Quantity| -> CliResult<BudgetedValue> { Ok(evaluate(&self.ex, &quantity, mode, cfg)?) };
        let budget = Budget::new(b)?;
        let ck = || self.ex.ck.as_ref().ok_or_else(|| CliError::input("no grid block"));
        match q {
            Measure::SupDist => family(Quantity::SupDistMax),
            Measure::Alpha => family(Quantity::FamilyAlpha { k: b }),
            Measure::Beta => family(Quantity::FamilyBeta { k: b }),
            Measure::Gamma => family(Quantity::FamilyGamma {
                k: b,
                pool: self.pool.clone(),
            }),
            Measure::MuAlpha => family(Quantity::MuAlpha { k: b }),
            Measure::MuGamma => family(Quantity::MuGamma { k: b }),
            Measure::SigmaAlpha => family(Quantity::SigmaAlpha { k: b }),
            Measure::SigmaGamma => family(Quantity::SigmaGamma {
                k: b,
                centers: self.centers.clone(),
            }),
            Measure::Omega => family(Quantity::Omega { n: b }),
            Measure::OmegaExt => family(Quantity::OmegaExt {
                n: b,
                m,
                pool: self.pool.clone(),
            }),
            Measure::MuBarAlpha => Ok(mu_bar_alpha_budget(ck()?, budget, mode, cfg)?),
            Measure::SigmaBarAlpha => Ok(sigma_bar_alpha_budget(ck()?, budget, mode, cfg)?),
            Measure::OmegaBar => Ok(omega_bar_budget(ck()?, budget, mode, cfg)?),
            Measure::BckAlpha => Ok(bck_family_alpha_budget(ck()?, budget, mode, cfg)?),
        }
    }
}
