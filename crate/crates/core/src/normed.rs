//! Finite-dimensional normed spaces: vectors, point sets, distance matrices,
//! diameters and Chebyshev centers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default relative tolerance for containment and equality assertions.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Default dimension cap for exact Euclidean enclosing balls.
pub const DEFAULT_BALL_DIM_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NormTag {
    L1,
    L2,
    Linf,
}

impl NormTag {
    pub const ALL: [NormTag; 3] = [NormTag::L1, NormTag::L2, NormTag::Linf];

    /// Norm of a raw coordinate slice.
    pub fn eval(self, coords: &[f64]) -> f64 {
        match self {
            NormTag::L1 => coords.iter().map(|c| c.abs()).sum(),
            NormTag::L2 => coords.iter().map(|c| c * c).sum::<f64>().sqrt(),
            NormTag::Linf => coords.iter().fold(0.0, |m, c| m.max(c.abs())),
        }
    }

    /// Distance between two raw coordinate slices of equal length.
    pub fn dist(self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            NormTag::L1 => diffs.sum(),
            NormTag::L2 => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            NormTag::Linf => diffs.fold(0.0, f64::max),
        }
    }
}

impl fmt::Display for NormTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NormTag::L1 => "L1",
            NormTag::L2 => "L2",
            NormTag::Linf => "Linf",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for NormTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "l1" => Ok(NormTag::L1),
            "l2" => Ok(NormTag::L2),
            "linf" | "l_inf" | "inf" | "max" => Ok(NormTag::Linf),
            other => Err(Error::input(format!("unknown norm tag `{other}`"))),
        }
    }
}

/// A finite-dimensional real space together with its norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceTag {
    pub dim: usize,
    pub norm: NormTag,
}

impl SpaceTag {
    pub fn new(dim: usize, norm: NormTag) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("space dimension must be at least 1"));
        }
        Ok(SpaceTag { dim, norm })
    }

    pub fn check(&self, v: &Vector) -> Result<()> {
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        Ok(())
    }

    /// Distance between conforming vectors. Callers are expected to have
    /// validated dimensions already.
    #[inline]
    pub fn dist(&self, a: &Vector, b: &Vector) -> f64 {
        self.norm.dist(&a.0, &b.0)
    }

    #[inline]
    pub fn norm_of(&self, v: &Vector) -> f64 {
        self.norm.eval(&v.0)
    }
}

/// A vector of finite real coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::input("vector must have at least one coordinate"));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::input(format!("non-finite coordinate at index {i}")));
        }
        Ok(Vector(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// Unit basis vector `e_{index+1}` (zero-based `index`).
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = vec![0.0; dim];
        v[index] = 1.0;
        Vector(v)
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| *c == 0.0)
    }

    pub fn scale(&self, lambda: f64) -> Vector {
        Vector(self.0.iter().map(|c| c * lambda).collect())
    }

    /// `self + lambda * other`.
    pub fn axpy(&self, lambda: f64, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + lambda * b).collect())
    }

    pub fn midpoint(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| 0.5 * (a + b)).collect())
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;
    fn mul(self, rhs: f64) -> Vector {
        self.scale(rhs)
    }
}

/// Relative tolerance used for every containment and equality assertion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(DEFAULT_TOL)
    }
}

impl Tolerance {
    /// `a <= b` up to the relative slack.
    pub fn le(&self, a: f64, b: f64) -> bool {
        a <= b + self.0 * (1.0 + a.abs().max(b.abs()))
    }

    pub fn eq(&self, a: f64, b: f64) -> bool {
        self.le(a, b) && self.le(b, a)
    }

    pub fn slack(&self, scale: f64) -> f64 {
        self.0 * (1.0 + scale.abs())
    }
}

/// Symmetric matrix of pairwise distances, stored densely.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistMatrix {
    /// Builds the matrix from a symmetric distance function evaluated on
    /// the upper triangle.
    pub fn from_fn(n: usize, mut d: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = d(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        DistMatrix { n, data }
    }

    /// Entrywise maximum of several matrices of equal size.
    pub fn pointwise_max<'a>(n: usize, mats: impl IntoIterator<Item = &'a DistMatrix>) -> Self {
        let mut data = vec![0.0; n * n];
        for m in mats {
            debug_assert_eq!(m.n, n);
            for (a, b) in data.iter_mut().zip(&m.data) {
                if *b > *a {
                    *a = *b;
                }
            }
        }
        DistMatrix { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }

    /// Largest pairwise distance within `members`.
    pub fn diameter_of(&self, members: &[usize]) -> f64 {
        let mut best = 0.0f64;
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                best = best.max(self.get(i, j));
            }
        }
        best
    }

    /// Sorted distinct off-diagonal values, with 0 prepended.
    pub fn thresholds(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = Vec::with_capacity(self.n * self.n / 2 + 1);
        vals.push(0.0);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                vals.push(self.get(i, j));
            }
        }
        vals.sort_by(|a, b| a.total_cmp(b));
        vals.dedup();
        vals
    }

    /// Principal submatrix on `idx` (in the given order).
    pub fn restrict(&self, idx: &[usize]) -> DistMatrix {
        DistMatrix::from_fn(idx.len(), |a, b| self.get(idx[a], idx[b]))
    }
}

/// A finite nonempty list of points in a common space. List order is the
/// canonical tie-break order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    space: SpaceTag,
    points: Vec<Vector>,
}

impl PointSet {
    pub fn new(space: SpaceTag, points: Vec<Vector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::input("point set must be nonempty"));
        }
        for p in &points {
            space.check(p)?;
        }
        Ok(PointSet { space, points })
    }

    /// Like [`PointSet::new`] but drops exact duplicates, keeping first occurrences.
    pub fn collapsed(space: SpaceTag, points: Vec<Vector>) -> Result<Self> {
        let mut out: Vec<Vector> = Vec::with_capacity(points.len());
        for p in points {
            if !out.contains(&p) {
                out.push(p);
            }
        }
        PointSet::new(space, out)
    }

    pub fn space(&self) -> SpaceTag {
        self.space
    }

    pub fn points(&self) -> &[Vector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn scaled(&self, lambda: f64) -> PointSet {
        PointSet {
            space: self.space,
            points: self.points.iter().map(|p| p.scale(lambda)).collect(),
        }
    }

    /// Minkowski sum `{a + b}` in row-major order over (self, other).
    pub fn minkowski_sum(&self, other: &PointSet) -> Result<PointSet> {
        if self.space != other.space {
            return Err(Error::DomainMismatch("point sets live in different spaces".into()));
        }
        let mut pts = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                pts.push(a + b);
            }
        }
        PointSet::new(self.space, pts)
    }

    pub fn union(&self, other: &PointSet) -> Result<PointSet> {
        if self.space != other.space {
            return Err(Error::DomainMismatch("point sets live in different spaces".into()));
        }
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().cloned());
        PointSet::new(self.space, pts)
    }
}

/// Closed ball `B(center, radius)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallSpec {
    pub center: Vector,
    pub radius: f64,
}

impl BallSpec {
    pub fn contains(&self, space: &SpaceTag, p: &Vector, tol: Tolerance) -> bool {
        tol.le(space.dist(&self.center, p), self.radius)
    }
}

pub fn norm(v: &Vector, s: &SpaceTag) -> Result<f64> {
    s.check(v)?;
    Ok(s.norm_of(v))
}

pub fn distance_matrix(s: &PointSet) -> DistMatrix {
    DistMatrix::from_fn(s.len(), |i, j| s.space.dist(&s.points[i], &s.points[j]))
}

pub fn diameter(s: &PointSet) -> f64 {
    let pts = &s.points;
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            best = best.max(s.space.dist(&pts[i], &pts[j]));
        }
    }
    best
}

/// Exact Chebyshev center in `l_inf`: the coordinatewise midrange.
pub fn chebyshev_center_linf(s: &PointSet) -> Result<BallSpec> {
    if s.space.norm != NormTag::Linf {
        return Err(Error::UnsupportedSpace(format!(
            "exact Chebyshev centers need Linf, got {}",
            s.space.norm
        )));
    }
    let d = s.space.dim;
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in &s.points {
        for (k, c) in p.coords().iter().enumerate() {
            lo[k] = lo[k].min(*c);
            hi[k] = hi[k].max(*c);
        }
    }
    let center: Vec<f64> = lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
    let radius = lo
        .iter()
        .zip(&hi)
        .map(|(a, b)| 0.5 * (b - a))
        .fold(0.0, f64::max);
    Ok(BallSpec {
        center: Vector(center),
        radius,
    })
}

/// Smallest enclosing Euclidean ball by the move-to-front recursion.
pub fn min_enclosing_ball_l2(s: &PointSet, dim_cap: usize) -> Result<BallSpec> {
    if s.space.norm != NormTag::L2 {
        return Err(Error::UnsupportedSpace(format!(
            "enclosing balls are computed in L2, got {}",
            s.space.norm
        )));
    }
    if s.space.dim > dim_cap {
        return Err(Error::UnsupportedSpace(format!(
            "dimension {} above enclosing-ball cap {dim_cap}",
            s.space.dim
        )));
    }
    let mut pts: Vec<Vector> = s.points.clone();
    let mut support: Vec<Vector> = Vec::with_capacity(s.space.dim + 1);
    let n = pts.len();
    let ball = mtf_ball(&mut pts, n, &mut support, s.space.dim);
    Ok(ball)
}

fn mtf_ball(pts: &mut Vec<Vector>, end: usize, support: &mut Vec<Vector>, dim: usize) -> BallSpec {
    let mut ball = ball_from_support(support, dim);
    if support.len() == dim + 1 {
        return ball;
    }
    let mut i = 0;
    while i < end {
        if !inside_l2(&ball, &pts[i]) {
            support.push(pts[i].clone());
            ball = mtf_ball(pts, i, support, dim);
            support.pop();
            let p = pts.remove(i);
            pts.insert(0, p);
        }
        i += 1;
    }
    ball
}

fn inside_l2(ball: &BallSpec, p: &Vector) -> bool {
    let d = NormTag::L2.dist(ball.center.coords(), p.coords());
    d <= ball.radius * (1.0 + 1e-12) + 1e-12
}

/// Circumscribed ball of the support points (center in their affine hull).
fn ball_from_support(support: &[Vector], dim: usize) -> BallSpec {
    match support.len() {
        0 => BallSpec {
            center: Vector::zeros(dim),
            radius: -1.0,
        },
        1 => BallSpec {
            center: support[0].clone(),
            radius: 0.0,
        },
        _ => {
            let p0 = &support[0];
            let rel: Vec<Vector> = support[1..].iter().map(|p| p - p0).collect();
            let m = rel.len();
            let mut a = vec![vec![0.0; m + 1]; m];
            for i in 0..m {
                for j in 0..m {
                    a[i][j] = dot(&rel[i], &rel[j]);
                }
                a[i][m] = 0.5 * dot(&rel[i], &rel[i]);
            }
            match solve(a) {
                Some(lambda) => {
                    let mut c = p0.clone();
                    for (l, r) in lambda.iter().zip(&rel) {
                        c = c.axpy(*l, r);
                    }
                    let radius = support
                        .iter()
                        .map(|p| NormTag::L2.dist(c.coords(), p.coords()))
                        .fold(0.0, f64::max);
                    BallSpec { center: c, radius }
                }
                None => farthest_pair_ball(support),
            }
        }
    }
}

fn farthest_pair_ball(support: &[Vector]) -> BallSpec {
    let mut best = (0, 0, -1.0);
    for i in 0..support.len() {
        for j in (i + 1)..support.len() {
            let d = NormTag::L2.dist(support[i].coords(), support[j].coords());
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    let c = support[best.0].midpoint(&support[best.1]);
    let radius = support
        .iter()
        .map(|p| NormTag::L2.dist(c.coords(), p.coords()))
        .fold(0.0, f64::max);
    BallSpec { center: c, radius }
}

fn dot(a: &Vector, b: &Vector) -> f64 {
    a.coords().iter().zip(b.coords()).map(|(x, y)| x * y).sum()
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let m = a.len();
    let scale = a
        .iter()
        .flat_map(|r| r[..m].iter())
        .fold(0.0f64, |s, v| s.max(v.abs()))
        .max(1e-300);
    for col in 0..m {
        let piv = (col..m).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, piv);
        for row in 0..m {
            if row != col {
                let f = a[row][col] / a[col][col];
                if f != 0.0 {
                    for k in col..=m {
                        a[row][k] -= f * a[col][k];
                    }
                }
            }
        }
    }
    Some((0..m).map(|i| a[i][m] / a[i][i]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    fn set(norm: NormTag, pts: &[&[f64]]) -> PointSet {
        let dim = pts[0].len();
        PointSet::new(SpaceTag::new(dim, norm).unwrap(), pts.iter().map(|p| v(p)).collect()).unwrap()
    }

    fn basis_set(dim: usize, count: usize, norm: NormTag) -> PointSet {
        let s = SpaceTag::new(dim, norm).unwrap();
        PointSet::new(s, (0..count).map(|i| Vector::basis(dim, i)).collect()).unwrap()
    }

    #[test]
    fn norms_of_small_vectors() {
        let s4 = SpaceTag::new(4, NormTag::L1).unwrap();
        assert_eq!(norm(&Vector::basis(4, 0), &s4).unwrap(), 1.0);
        assert_eq!(norm(&v(&[3.0, 4.0]), &SpaceTag::new(2, NormTag::L2).unwrap()).unwrap(), 5.0);
        assert_eq!(norm(&v(&[1.0, -2.0]), &SpaceTag::new(2, NormTag::Linf).unwrap()).unwrap(), 2.0);
    }

    #[test]
    fn norm_rejects_wrong_dimension() {
        let s = SpaceTag::new(3, NormTag::L2).unwrap();
        assert!(matches!(
            norm(&v(&[1.0, 2.0]), &s),
            Err(Error::DimensionMismatch { expected: 3, found: 2 })
        ));
    }

    #[test]
    fn vectors_reject_non_finite() {
        assert!(Vector::new(vec![1.0, f64::NAN]).is_err());
        assert!(Vector::new(vec![]).is_err());
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&basis_set(6, 6, NormTag::Linf)), 1.0);
        assert_eq!(diameter(&basis_set(2, 2, NormTag::L1)), 2.0);
        assert_eq!(diameter(&set(NormTag::L2, &[&[1.0, 5.0]])), 0.0);
        assert!(PointSet::new(SpaceTag::new(2, NormTag::L2).unwrap(), vec![]).is_err());
    }

    #[test]
    fn distance_matrices() {
        let m = distance_matrix(&set(NormTag::L1, &[&[0.0, 0.0], &[1.0, 0.0]]));
        assert_eq!((m.get(0, 1), m.get(1, 0), m.get(0, 0)), (1.0, 1.0, 0.0));
        let l1 = distance_matrix(&basis_set(3, 3, NormTag::L1));
        let linf = distance_matrix(&basis_set(3, 3, NormTag::Linf));
        for i in 0..3 {
            for j in 0..3 {
                let off = if i == j { 0.0 } else { 1.0 };
                assert_eq!(l1.get(i, j), 2.0 * off);
                assert_eq!(linf.get(i, j), off);
            }
        }
    }

    #[test]
    fn linf_chebyshev_centers() {
        let b = chebyshev_center_linf(&set(NormTag::Linf, &[&[0.0, 0.0], &[1.0, 0.0]])).unwrap();
        assert_eq!((b.center.coords().to_vec(), b.radius), (vec![0.5, 0.0], 0.5));
        let b = chebyshev_center_linf(&basis_set(3, 3, NormTag::Linf)).unwrap();
        assert_eq!((b.center.coords().to_vec(), b.radius), (vec![0.5, 0.5, 0.5], 0.5));
        let b = chebyshev_center_linf(&set(NormTag::Linf, &[&[2.0, -1.0]])).unwrap();
        assert_eq!((b.center.coords().to_vec(), b.radius), (vec![2.0, -1.0], 0.0));
        assert!(matches!(
            chebyshev_center_linf(&basis_set(2, 2, NormTag::L1)),
            Err(Error::UnsupportedSpace(_))
        ));
    }

    #[test]
    fn l2_enclosing_balls() {
        let b = min_enclosing_ball_l2(&set(NormTag::L2, &[&[0.0, 0.0], &[2.0, 0.0]]), 8).unwrap();
        assert!((b.radius - 1.0).abs() < 1e-12);
        assert!((b.center.coords()[0] - 1.0).abs() < 1e-12 && b.center.coords()[1].abs() < 1e-12);
        let b = min_enclosing_ball_l2(&set(NormTag::L2, &[&[0.0, 0.0], &[2.0, 0.0], &[1.0, 1.0]]), 8)
            .unwrap();
        assert!((b.radius - 1.0).abs() < 1e-12);
        assert!((b.center.coords()[0] - 1.0).abs() < 1e-12 && b.center.coords()[1].abs() < 1e-12);
        let b = min_enclosing_ball_l2(&set(NormTag::L2, &[&[3.0, 3.0]]), 8).unwrap();
        assert_eq!(b.radius, 0.0);
        let dup = set(NormTag::L2, &[&[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]]);
        assert_eq!(min_enclosing_ball_l2(&dup, 8).unwrap().radius, 0.0);
        let hi = basis_set(9, 3, NormTag::L2);
        assert!(min_enclosing_ball_l2(&hi, 8).is_err());
    }

    #[test]
    fn tolerance_is_relative() {
        let t = Tolerance::default();
        assert!(t.le(1.0 + 1e-12, 1.0));
        assert!(!t.le(1.0 + 1e-6, 1.0));
        assert!(t.le(1e6 + 1e-5, 1e6));
    }
}
