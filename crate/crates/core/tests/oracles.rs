//! Hand-derived values on small instances, checked against the solvers.

use mnc_core::ck::{
    bck_norm, mu_bar_alpha_budget, omega_bar_budget, omega_bck_budget, CkFamily, GridDomain,
};
use mnc_core::family::{
    family_gamma_budget, mu_alpha_budget, nussbaum_modulus, omega_budget, omega_ext_budget, sigma_alpha_budget,
    sup_dist, Domain, Function, FunctionFamily, OmegaBudget, PhiPool,
};
use mnc_core::measures::{beta_sep, gamma_budget, CenterChoice};
use mnc_core::normed::{chebyshev_center_linf, diameter, distance_matrix, min_enclosing_ball_l2, norm};
use mnc_core::{alpha_budget, Budget, Mode, NormTag, PointSet, SolverConfig, SpaceTag, Tolerance, Vector, Witness};

fn v(c: &[f64]) -> Vector {
    Vector::new(c.to_vec()).unwrap()
}

fn sp(dim: usize, norm: NormTag) -> SpaceTag {
    SpaceTag::new(dim, norm).unwrap()
}

fn set(dim: usize, norm: NormTag, pts: Vec<Vector>) -> PointSet {
    PointSet::new(sp(dim, norm), pts).unwrap()
}

fn basis(dim: usize, count: usize) -> Vec<Vector> {
    (0..count).map(|i| Vector::basis(dim, i)).collect()
}

fn k(b: usize) -> Budget {
    Budget::new(b).unwrap()
}

fn exact() -> SolverConfig {
    SolverConfig::default()
}

#[test]
fn norms_of_small_vectors() {
    assert_eq!(norm(&Vector::basis(4, 0), &sp(4, NormTag::L1)).unwrap(), 1.0);
    assert_eq!(norm(&v(&[3.0, 4.0]), &sp(2, NormTag::L2)).unwrap(), 5.0);
    assert_eq!(norm(&v(&[1.0, -2.0]), &sp(2, NormTag::Linf)).unwrap(), 2.0);
    assert!(norm(&v(&[1.0]), &sp(2, NormTag::L2)).is_err());
}

#[test]
fn diameters_and_distance_matrices() {
    assert_eq!(diameter(&set(5, NormTag::Linf, basis(5, 5))), 1.0);
    assert_eq!(diameter(&set(2, NormTag::L1, basis(2, 2))), 2.0);
    assert_eq!(diameter(&set(2, NormTag::L1, vec![v(&[1.0, 1.0])])), 0.0);
    let d = distance_matrix(&set(1, NormTag::L1, vec![v(&[0.0]), v(&[1.0])]));
    assert_eq!((d.get(0, 0), d.get(0, 1), d.get(1, 0)), (0.0, 1.0, 1.0));
    let l1 = distance_matrix(&set(3, NormTag::L1, basis(3, 3)));
    let linf = distance_matrix(&set(3, NormTag::Linf, basis(3, 3)));
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                assert_eq!(l1.get(i, j), 2.0);
                assert_eq!(linf.get(i, j), 1.0);
            }
        }
    }
}

#[test]
fn chebyshev_centers() {
    let b = chebyshev_center_linf(&set(2, NormTag::Linf, vec![v(&[0.0, 0.0]), v(&[1.0, 0.0])])).unwrap();
    assert_eq!((b.center.coords(), b.radius), (&[0.5, 0.0][..], 0.5));
    let b = chebyshev_center_linf(&set(3, NormTag::Linf, basis(3, 3))).unwrap();
    assert_eq!((b.center.coords(), b.radius), (&[0.5, 0.5, 0.5][..], 0.5));
    let b = chebyshev_center_linf(&set(2, NormTag::Linf, vec![v(&[3.0, -1.0])])).unwrap();
    assert_eq!((b.center.coords(), b.radius), (&[3.0, -1.0][..], 0.0));
    assert!(chebyshev_center_linf(&set(2, NormTag::L1, basis(2, 2))).is_err());
}

#[test]
fn euclidean_enclosing_balls() {
    let tol = Tolerance::default();
    let b = min_enclosing_ball_l2(&set(2, NormTag::L2, vec![v(&[0.0, 0.0]), v(&[2.0, 0.0])]), 12).unwrap();
    assert!(tol.eq(b.radius, 1.0) && tol.eq(b.center.coords()[0], 1.0));
    let b = min_enclosing_ball_l2(
        &set(2, NormTag::L2, vec![v(&[0.0, 0.0]), v(&[2.0, 0.0]), v(&[1.0, 1.0])]),
        12,
    )
    .unwrap();
    assert!(tol.eq(b.radius, 1.0) && tol.eq(b.center.coords()[0], 1.0) && tol.eq(b.center.coords()[1], 0.0));
    let b = min_enclosing_ball_l2(&set(3, NormTag::L2, vec![v(&[1.0, 2.0, 3.0])]), 12).unwrap();
    assert_eq!(b.radius, 0.0);
    assert!(min_enclosing_ball_l2(&set(3, NormTag::L2, basis(3, 3)), 2).is_err());
}

#[test]
fn alpha_on_basis_sets() {
    let s = set(5, NormTag::Linf, basis(5, 5));
    assert_eq!(alpha_budget(&s, k(4), Mode::Exact, &exact()).unwrap().value, 1.0);
    assert_eq!(alpha_budget(&s, k(5), Mode::Exact, &exact()).unwrap().value, 0.0);
    let mut pts = basis(3, 3);
    pts.push(Vector::zeros(3));
    let s = set(3, NormTag::L1, pts);
    // any two-part split of four points pairs two basis vectors
    assert_eq!(alpha_budget(&s, k(2), Mode::Exact, &exact()).unwrap().value, 2.0);
    assert_eq!(alpha_budget(&s, k(3), Mode::Exact, &exact()).unwrap().value, 1.0);
}

#[test]
fn gamma_with_restricted_pool() {
    let s = set(2, NormTag::L1, vec![v(&[1.0, 0.0]), v(&[0.0, 1.0]), v(&[0.0, 0.0])]);
    let pool = set(
        2,
        NormTag::L1,
        vec![
            v(&[0.5, 0.0]),
            v(&[0.0, 0.5]),
            v(&[0.5, 0.5]),
            v(&[0.0, 0.0]),
            v(&[1.0, 0.0]),
            v(&[0.0, 1.0]),
        ],
    );
    let r = gamma_budget(&s, k(2), &pool, Mode::Exact, &exact()).unwrap();
    assert_eq!(r.value, 0.5);
    assert!(matches!(r.witness, Witness::Centers(CenterChoice { ref centers, .. }) if centers == &[0, 1]));
    assert_eq!(gamma_budget(&s, k(1), &pool, Mode::Exact, &exact()).unwrap().value, 1.0);
    assert_eq!(gamma_budget(&s, k(3), &s, Mode::Exact, &exact()).unwrap().value, 0.0);
}

#[test]
fn beta_on_basis_sets() {
    let s = set(5, NormTag::Linf, basis(5, 5));
    assert_eq!(beta_sep(&s, k(4), Mode::Exact, &exact()).unwrap().value, 1.0);
    let mut pts = basis(4, 4);
    pts.push(Vector::zeros(4));
    let s = set(4, NormTag::L1, pts);
    let r = beta_sep(&s, k(3), Mode::Exact, &exact()).unwrap();
    assert_eq!(r.value, 2.0);
    assert_eq!(r.witness, Witness::Subset(vec![0, 1, 2, 3]));
    assert_eq!(beta_sep(&s, k(4), Mode::Exact, &exact()).unwrap().value, 1.0);
}

/// Spikes `f_k(k − 1/n) = e_n` with one extra zero point, `K = N = 2`.
fn spikes() -> FunctionFamily {
    let e = |i: usize| Vector::basis(2, i);
    let z = Vector::zeros(2);
    FunctionFamily::new(
        Domain::new(["1-1/1", "1-1/2", "2-1/1", "2-1/2", "zero"].map(String::from).to_vec()).unwrap(),
        sp(2, NormTag::Linf),
        vec![
            Function::new("f1", vec![e(0), e(1), z.clone(), z.clone(), z.clone()]),
            Function::new("f2", vec![z.clone(), z.clone(), e(0), e(1), z.clone()]),
        ],
    )
    .unwrap()
}

#[test]
fn spike_family_values() {
    let m = spikes();
    assert_eq!(sup_dist(&m.space(), &m.functions()[0], &m.functions()[1]).unwrap(), 1.0);
    assert_eq!(m.family_at_point("zero").unwrap().points(), &[Vector::zeros(2)]);
    assert_eq!(m.family_at_point("1-1/2").unwrap().points(), &[Vector::basis(2, 1), Vector::zeros(2)]);
    assert_eq!(mu_alpha_budget(&m, k(1), Mode::Exact, &exact()).unwrap().value, 1.0);
    assert_eq!(mu_alpha_budget(&m, k(2), Mode::Exact, &exact()).unwrap().value, 0.0);
    let omegas: Vec<f64> = (1..=5)
        .map(|n| omega_budget(&m, k(n), Mode::Exact, &exact()).unwrap().value)
        .collect();
    assert_eq!(omegas, vec![1.0, 1.0, 1.0, 1.0, 0.0]);
    let pool = PhiPool::of_family(&m);
    let w = omega_ext_budget(&m, OmegaBudget::new(1, 2).unwrap(), &pool, Mode::Exact, &exact()).unwrap();
    assert_eq!(w.value, 0.0);
}

#[test]
fn single_function_modulus_is_image_alpha() {
    let m = spikes();
    let f = m.subfamily(&[0]).unwrap();
    let image = PointSet::new(m.space(), m.functions()[0].values.clone()).unwrap();
    for n in 1..=5 {
        assert_eq!(
            omega_budget(&f, k(n), Mode::Exact, &exact()).unwrap().value,
            alpha_budget(&image, k(n), Mode::Exact, &exact()).unwrap().value
        );
    }
}

#[test]
fn l1_half_diagonal_net() {
    let dim = 4;
    let m = FunctionFamily::new(
        Domain::indexed(dim).unwrap(),
        sp(dim, NormTag::L1),
        (0..3)
            .map(|i| {
                Function::new(
                    format!("f{i}"),
                    (0..dim).map(|x| if x == i { Vector::basis(dim, i) } else { Vector::zeros(dim) }).collect(),
                )
            })
            .collect(),
    )
    .unwrap();
    let g = Function::new("g", (0..dim).map(|x| Vector::basis(dim, x).scale(0.5)).collect());
    for f in m.functions() {
        assert_eq!(sup_dist(&m.space(), f, &g).unwrap(), 0.5);
    }
    let pool = PhiPool::new(&m, vec![g]).unwrap();
    assert_eq!(family_gamma_budget(&m, k(1), &pool, Mode::Exact, &exact()).unwrap().value, 0.5);
}

#[test]
fn identity_on_antipodal_samples() {
    let s = sp(2, NormTag::L2);
    let pts: Vec<Vector> = (0..4)
        .flat_map(|i| {
            let t = i as f64 * std::f64::consts::FRAC_PI_4;
            let u = v(&[t.cos(), t.sin()]);
            [u.clone(), -&u]
        })
        .collect();
    let m = FunctionFamily::new(
        Domain::indexed(8).unwrap().with_coords(s, pts.clone()).unwrap(),
        s,
        vec![Function::new("I", pts)],
    )
    .unwrap();
    assert!(Tolerance::default().eq(sigma_alpha_budget(&m, k(1), Mode::Exact, &exact()).unwrap().value, 2.0));
    assert_eq!(mu_alpha_budget(&m, k(1), Mode::Exact, &exact()).unwrap().value, 0.0);
    let pool = PhiPool::of_family(&m);
    let w = omega_ext_budget(&m, OmegaBudget::new(1, 1).unwrap(), &pool, Mode::Exact, &exact()).unwrap();
    assert_eq!(w.value, 0.0);
}

#[test]
fn nussbaum_extremes() {
    let m = spikes();
    let coords = Domain::new(m.domain().labels().to_vec())
        .unwrap()
        .with_coords(sp(1, NormTag::L2), [0.0, 0.5, 1.0, 1.5, 2.5].iter().map(|&x| v(&[x])).collect())
        .unwrap();
    let m = FunctionFamily::new(coords, m.space(), m.functions().to_vec()).unwrap();
    let tol = Tolerance::default();
    assert_eq!(nussbaum_modulus(&m, 0.0, tol).unwrap(), 0.0);
    assert_eq!(nussbaum_modulus(&m, 10.0, tol).unwrap(), 1.0);
    assert!(nussbaum_modulus(&spikes(), 1.0, tol).is_err());
}

fn linear_ck() -> CkFamily {
    let grid = GridDomain::interval(0.0, 1.0, 11).unwrap();
    let fs = (1..=5)
        .map(|c| grid.sample(&format!("{c}x"), |t| vec![c as f64 * t]).unwrap())
        .collect();
    let base = FunctionFamily::new(grid.to_domain(), sp(1, NormTag::L2), fs).unwrap();
    CkFamily::differentiate(base, grid, 1).unwrap()
}

#[test]
fn linear_family_in_ck() {
    let ck = linear_ck();
    let tol = Tolerance::default();
    assert!(tol.eq(mu_bar_alpha_budget(&ck, k(1), Mode::Exact, &exact()).unwrap().value, 4.0));
    assert_eq!(mu_bar_alpha_budget(&ck, k(5), Mode::Exact, &exact()).unwrap().value, 0.0);
    let cfg = exact().with_alpha_cap(16);
    assert!(tol.eq(omega_bar_budget(&ck, k(1), Mode::Exact, &cfg).unwrap().value, 5.0));
    assert_eq!(omega_bar_budget(&ck, k(11), Mode::Exact, &cfg).unwrap().value, 0.0);
    let three = ck.grid().sample("3x", |t| vec![3.0 * t]).unwrap();
    let pool = PhiPool::new(ck.base(), vec![three]).unwrap();
    let w = omega_bck_budget(&ck, OmegaBudget::new(1, 1).unwrap(), &pool, Mode::Exact, &cfg).unwrap();
    assert!(tol.eq(w.value, 2.0));
    assert!(tol.eq(bck_norm(&ck, 0), 1.0));
    assert!(tol.eq(bck_norm(&ck, 1), 2.0));
}

#[test]
fn stencils_on_polynomials_and_sine() {
    let grid = GridDomain::interval(0.0, 1.0, 21).unwrap();
    let sq = grid.sample("sq", |t| vec![t * t]).unwrap();
    let base = FunctionFamily::new(grid.to_domain(), sp(1, NormTag::L2), vec![sq]).unwrap();
    let ck = CkFamily::differentiate(base, grid.clone(), 2).unwrap();
    for (x, val) in ck.diff(2).functions()[0].values.iter().enumerate() {
        if !ck.boundary()[x] {
            assert!((val.coords()[0] - 2.0).abs() < 1e-9);
        }
    }
    let fine = GridDomain::interval(0.0, 1.0, 101).unwrap();
    let s = fine.sample("sin", |t| vec![t.sin()]).unwrap();
    let base = FunctionFamily::new(fine.to_domain(), sp(1, NormTag::L2), vec![s]).unwrap();
    let ck = CkFamily::differentiate(base, fine.clone(), 1).unwrap();
    for (x, t) in fine.points().iter().enumerate() {
        if !ck.boundary()[x] {
            assert!((ck.diff(1).functions()[0].values[x].coords()[0] - t.cos()).abs() < 1e-4);
        }
    }
}
