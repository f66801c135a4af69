//! Finite function families `M ⊆ B(Ω, Y)` over labeled domains, with the
//! sup norm, pointwise and image characteristics, equicontinuity moduli and
//! the family algebra used by the axiom tests.

mod algebra;
mod characteristics;
pub(crate) mod omega;

pub use algebra::{convex_combination, minkowski_sum, scale, union};
pub use characteristics::{
    ambrosetti_gap, family_alpha_budget, family_beta_sep, family_distance_matrix, family_gamma_budget,
    heinz_diagnostic, mu_alpha_budget, mu_gamma_budget, sigma_alpha_budget, sigma_gamma_budget, AmbrosettiGap,
    HeinzDiagnostic, PoolRule,
};
pub use omega::{
    conflict_matrix, corrected_conflict_matrix, corrected_value, nussbaum_modulus, omega_budget, omega_ext_budget,
    omega_ext_lower_bound, self_correct, OmegaBudget,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normed::{PointSet, SpaceTag, Vector};

/// Optional coordinates making the domain a metric space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DomainCoords {
    pub space: SpaceTag,
    pub points: Vec<Vector>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Domain {
    labels: Vec<String>,
    coords: Option<DomainCoords>,
}

impl Domain {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::input("domain must be nonempty"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::input(format!("duplicate domain label `{l}`")));
            }
        }
        Ok(Domain { labels, coords: None })
    }

    /// Domain labelled `0..n`.
    pub fn indexed(n: usize) -> Result<Self> {
        Domain::new((0..n).map(|i| i.to_string()).collect())
    }

    pub fn with_coords(mut self, space: SpaceTag, points: Vec<Vector>) -> Result<Self> {
        if points.len() != self.labels.len() {
            return Err(Error::input(format!(
                "{} coordinates for {} domain labels",
                points.len(),
                self.labels.len()
            )));
        }
        for p in &points {
            space.check(p)?;
        }
        self.coords = Some(DomainCoords { space, points });
        Ok(self)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn coords(&self) -> Option<&DomainCoords> {
        self.coords.as_ref()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Sub-domain on the given indices, in the given order.
    pub fn restrict(&self, idx: &[usize]) -> Domain {
        Domain {
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            coords: self.coords.as_ref().map(|c| DomainCoords {
                space: c.space,
                points: idx.iter().map(|&i| c.points[i].clone()).collect(),
            }),
        }
    }
}

/// A total map from the domain (by index) into the value space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Function {
    pub name: String,
    pub values: Vec<Vector>,
}

impl Function {
    pub fn new(name: impl Into<String>, values: Vec<Vector>) -> Self {
        Function {
            name: name.into(),
            values,
        }
    }

    pub fn at(&self, x: usize) -> &Vector {
        &self.values[x]
    }

    pub fn restrict(&self, idx: &[usize]) -> Function {
        Function::new(self.name.clone(), idx.iter().map(|&i| self.values[i].clone()).collect())
    }
}

pub fn sup_norm(space: &SpaceTag, f: &Function) -> f64 {
    f.values.iter().map(|v| space.norm_of(v)).fold(0.0, f64::max)
}

pub fn sup_dist(space: &SpaceTag, f: &Function, g: &Function) -> Result<f64> {
    if f.values.len() != g.values.len() {
        return Err(Error::DomainMismatch(format!(
            "`{}` and `{}` are defined on domains of different sizes",
            f.name, g.name
        )));
    }
    Ok(sup_dist_unchecked(space, f, g))
}

pub(crate) fn sup_dist_unchecked(space: &SpaceTag, f: &Function, g: &Function) -> f64 {
    f.values
        .iter()
        .zip(&g.values)
        .map(|(a, b)| space.dist(a, b))
        .fold(0.0, f64::max)
}

/// The family `M`: a domain, a value space and an ordered list of functions.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionFamily {
    domain: Domain,
    space: SpaceTag,
    functions: Vec<Function>,
}

impl FunctionFamily {
    pub fn new(domain: Domain, space: SpaceTag, functions: Vec<Function>) -> Result<Self> {
        if functions.is_empty() {
            return Err(Error::input("family must contain at least one function"));
        }
        for (i, f) in functions.iter().enumerate() {
            if functions[..i].iter().any(|g| g.name == f.name) {
                return Err(Error::input(format!("duplicate function name `{}`", f.name)));
            }
            if f.values.len() != domain.len() {
                return Err(Error::input(format!(
                    "function `{}` has {} values for {} domain points",
                    f.name,
                    f.values.len(),
                    domain.len()
                )));
            }
            for v in &f.values {
                space.check(v)?;
            }
        }
        Ok(FunctionFamily {
            domain,
            space,
            functions,
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn functions(&self) -> &[Function] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Function> {
        self.functions.iter().find(|f| f.name == name)
    }

    pub fn sup_norm(&self, i: usize) -> f64 {
        sup_norm(&self.space, &self.functions[i])
    }

    pub fn sup_dist(&self, i: usize, j: usize) -> f64 {
        sup_dist_unchecked(&self.space, &self.functions[i], &self.functions[j])
    }

    /// `M(x)` for the point at index `x`, duplicates collapsed.
    pub fn at_index(&self, x: usize) -> PointSet {
        let pts = self.functions.iter().map(|f| f.values[x].clone()).collect();
        PointSet::collapsed(self.space, pts).expect("family is nonempty and conforming")
    }

    /// `M(x)` by label.
    pub fn family_at_point(&self, label: &str) -> Result<PointSet> {
        Ok(self.at_index(self.domain.index_of(label)?))
    }

    /// `M(Ω)`, function-major order, duplicates collapsed.
    pub fn family_image(&self) -> PointSet {
        self.image_of(&(0..self.domain.len()).collect::<Vec<_>>())
    }

    /// `M(A)` for a set of domain indices.
    pub fn image_of(&self, idx: &[usize]) -> PointSet {
        let pts = self
            .functions
            .iter()
            .flat_map(|f| idx.iter().map(move |&x| f.values[x].clone()))
            .collect();
        PointSet::collapsed(self.space, pts).expect("family is nonempty and conforming")
    }

    /// Sub-family on the given function indices.
    pub fn subfamily(&self, idx: &[usize]) -> Result<FunctionFamily> {
        FunctionFamily::new(
            self.domain.clone(),
            self.space,
            idx.iter().map(|&i| self.functions[i].clone()).collect(),
        )
    }

    /// The same functions restricted to a sub-domain.
    pub fn restrict(&self, idx: &[usize]) -> Result<FunctionFamily> {
        if idx.is_empty() || idx.iter().any(|&i| i >= self.domain.len()) {
            return Err(Error::input("restriction indices empty or out of range"));
        }
        Ok(FunctionFamily {
            domain: self.domain.restrict(idx),
            space: self.space,
            functions: self.functions.iter().map(|f| f.restrict(idx)).collect(),
        })
    }

    pub(crate) fn check_compatible(&self, other_domain: &Domain, other_space: SpaceTag) -> Result<()> {
        if self.space != other_space {
            return Err(Error::DomainMismatch("value spaces differ".into()));
        }
        if self.domain.labels != other_domain.labels {
            return Err(Error::DomainMismatch("domains differ".into()));
        }
        Ok(())
    }
}

/// Candidate correction functions on the same domain and space as a family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PhiPool(FunctionFamily);

impl PhiPool {
    pub fn new(family: &FunctionFamily, candidates: Vec<Function>) -> Result<Self> {
        Ok(PhiPool(FunctionFamily::new(
            family.domain.clone(),
            family.space,
            candidates,
        )?))
    }

    /// Uses the family's own functions as the pool.
    pub fn of_family(family: &FunctionFamily) -> Self {
        PhiPool(family.clone())
    }

    pub fn from_family(pool: FunctionFamily) -> Self {
        PhiPool(pool)
    }

    pub fn candidates(&self) -> &[Function] {
        self.0.functions()
    }

    pub fn as_family(&self) -> &FunctionFamily {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn check_against(&self, m: &FunctionFamily) -> Result<()> {
        m.check_compatible(&self.0.domain, self.0.space)
    }
}
