use mnc_core::family::{
    convex_combination, minkowski_sum, mu_alpha_budget, nussbaum_modulus, omega_budget, scale, union, Domain,
    Function, FunctionFamily,
};
use mnc_core::measures::{alpha_lower_bound, alpha_upper_bound};
use mnc_core::normed::distance_matrix;
use mnc_core::{
    alpha_budget, beta_sep, gamma_budget, Budget, Mode, NormTag, PointSet, SolverConfig, SpaceTag, Tolerance, Vector,
};
use proptest::prelude::*;

fn k(b: usize) -> Budget {
    Budget::new(b).unwrap()
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

fn alpha(s: &PointSet, b: usize) -> f64 {
    alpha_budget(s, k(b), Mode::Exact, &cfg()).unwrap().value
}

fn coord() -> impl Strategy<Value = f64> {
    prop_oneof![(-8i32..=8).prop_map(|q| q as f64 / 4.0), -2.0f64..2.0]
}

fn norm_tag() -> impl Strategy<Value = NormTag> {
    prop::sample::select(NormTag::ALL.to_vec())
}

fn points(dim: usize, n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(prop::collection::vec(coord(), dim), n)
        .prop_map(|vs| vs.into_iter().map(|c| Vector::new(c).unwrap()).collect())
}

fn point_set() -> impl Strategy<Value = PointSet> {
    (1usize..=3, norm_tag()).prop_flat_map(|(dim, norm)| {
        points(dim, 1..=7).prop_map(move |pts| PointSet::new(SpaceTag::new(dim, norm).unwrap(), pts).unwrap())
    })
}

fn set_pair() -> impl Strategy<Value = (PointSet, PointSet)> {
    (1usize..=2, norm_tag()).prop_flat_map(|(dim, norm)| {
        (points(dim, 1..=3), points(dim, 1..=3)).prop_map(move |(a, b)| {
            let sp = SpaceTag::new(dim, norm).unwrap();
            (PointSet::new(sp, a).unwrap(), PointSet::new(sp, b).unwrap())
        })
    })
}

fn family_with(n: std::ops::RangeInclusive<usize>, count: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = FunctionFamily> {
    (1usize..=2, norm_tag(), n, count).prop_flat_map(|(dim, norm, n, count)| {
        prop::collection::vec(points(dim, n..=n), count).prop_map(move |fs| {
            FunctionFamily::new(
                Domain::indexed(n).unwrap(),
                SpaceTag::new(dim, norm).unwrap(),
                fs.into_iter().enumerate().map(|(i, v)| Function::new(format!("f{i}"), v)).collect(),
            )
            .unwrap()
        })
    })
}

fn family() -> impl Strategy<Value = FunctionFamily> {
    family_with(1..=6, 1..=4)
}

fn family_pair() -> impl Strategy<Value = (FunctionFamily, FunctionFamily)> {
    (1usize..=2, norm_tag(), 1usize..=4).prop_flat_map(|(dim, norm, n)| {
        let fam = move || {
            prop::collection::vec(points(dim, n..=n), 1..=3).prop_map(move |fs| {
                FunctionFamily::new(
                    Domain::indexed(n).unwrap(),
                    SpaceTag::new(dim, norm).unwrap(),
                    fs.into_iter().enumerate().map(|(i, v)| Function::new(format!("f{i}"), v)).collect(),
                )
                .unwrap()
            })
        };
        (fam(), fam())
    })
}

fn sum_set(a: &PointSet, b: &PointSet) -> PointSet {
    let pts = a.points().iter().flat_map(|x| b.points().iter().map(move |y| x + y)).collect();
    PointSet::new(a.space(), pts).unwrap()
}

/// All partitions of `0..n` as restricted growth strings.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for l in 0..=max + 1 {
            cur.push(l);
            go(i + 1, n, cur, max.max(l), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return vec![vec![]];
    }
    let mut cur = vec![0];
    go(1, n, &mut cur, 0, &mut out);
    out
}

fn brute_omega(m: &FunctionFamily, budget: usize) -> f64 {
    let sp = m.space();
    let n = m.domain().len();
    set_partitions(n)
        .into_iter()
        .filter(|labels| labels.iter().max().map_or(0, |&l| l + 1) <= budget)
        .map(|labels| {
            let mut worst = 0.0f64;
            for x in 0..n {
                for y in (x + 1)..n {
                    if labels[x] == labels[y] {
                        for f in m.functions() {
                            worst = worst.max(sp.dist(&f.values[x], &f.values[y]));
                        }
                    }
                }
            }
            worst
        })
        .fold(f64::INFINITY, f64::min)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn alpha_nonincreasing_in_budget(s in point_set()) {
        let tol = Tolerance::default();
        let vals: Vec<f64> = (1..=s.len()).map(|b| alpha(&s, b)).collect();
        for w in vals.windows(2) {
            prop_assert!(tol.le(w[1], w[0]));
        }
        prop_assert_eq!(*vals.last().unwrap(), 0.0);
    }

    #[test]
    fn alpha_monotone_under_inclusion(s in point_set(), b in 1usize..4) {
        prop_assume!(s.len() > 1);
        let sub = PointSet::new(s.space(), s.points()[..s.len() - 1].to_vec()).unwrap();
        prop_assert!(Tolerance::default().le(alpha(&sub, b), alpha(&s, b)));
    }

    #[test]
    fn set_sandwiches(s in point_set(), b in 1usize..5) {
        let tol = Tolerance::default();
        let a = alpha(&s, b);
        let g = gamma_budget(&s, k(b), &s, Mode::Exact, &cfg()).unwrap().value;
        prop_assert!(tol.le(g, a) && tol.le(a, 2.0 * g));
        if b < s.len() {
            let be = beta_sep(&s, k(b), Mode::Exact, &cfg()).unwrap().value;
            prop_assert!(tol.le(be, a) && tol.le(a, 2.0 * be));
        }
    }

    #[test]
    fn alpha_homogeneous(s in point_set(), lambda in -3.0f64..3.0, b in 1usize..4) {
        let scaled = PointSet::new(s.space(), s.points().iter().map(|p| p.scale(lambda)).collect()).unwrap();
        prop_assert!(Tolerance::default().eq(alpha(&scaled, b), lambda.abs() * alpha(&s, b)));
    }

    #[test]
    fn minkowski_subadditive((s, t) in set_pair(), b1 in 1usize..3, b2 in 1usize..3) {
        let lhs = alpha(&sum_set(&s, &t), b1 * b2);
        prop_assert!(Tolerance::default().le(lhs, alpha(&s, b1) + alpha(&t, b2)));
    }

    #[test]
    fn convex_combination_bound((s, t) in set_pair(), lambda in 0.0f64..=1.0, b in 1usize..3) {
        let ls = PointSet::new(s.space(), s.points().iter().map(|p| p.scale(lambda)).collect()).unwrap();
        let lt = PointSet::new(t.space(), t.points().iter().map(|p| p.scale(1.0 - lambda)).collect()).unwrap();
        let lhs = alpha(&sum_set(&ls, &lt), b * b);
        prop_assert!(Tolerance::default().le(lhs, lambda * alpha(&s, b) + (1.0 - lambda) * alpha(&t, b)));
    }

    #[test]
    fn union_takes_the_max((s, t) in set_pair(), b1 in 1usize..3, b2 in 1usize..3) {
        let mut pts = s.points().to_vec();
        pts.extend(t.points().iter().cloned());
        let u = PointSet::new(s.space(), pts).unwrap();
        prop_assert!(Tolerance::default().le(alpha(&u, b1 + b2), alpha(&s, b1).max(alpha(&t, b2))));
    }

    #[test]
    fn heuristics_bracket_exact(s in point_set(), b in 1usize..5) {
        let tol = Tolerance::default();
        let d = distance_matrix(&s);
        let exact = alpha(&s, b);
        prop_assert!(tol.le(alpha_lower_bound(&d, b).value, exact));
        prop_assert!(tol.le(exact, alpha_upper_bound(&d, b).value));
        let h = alpha_budget(&s, k(b), Mode::Heuristic, &cfg()).unwrap();
        prop_assert!(tol.le(exact, h.value));
    }

    #[test]
    fn omega_matches_brute_force(m in family(), b in 1usize..5) {
        let got = omega_budget(&m, k(b), Mode::Exact, &cfg()).unwrap().value;
        prop_assert!(Tolerance::default().eq(got, brute_omega(&m, b)));
    }

    #[test]
    fn family_algebra_bounds((m, n) in family_pair(), b in 1usize..3) {
        let tol = Tolerance::default();
        let mu = |f: &FunctionFamily, b: usize| mu_alpha_budget(f, k(b), Mode::Exact, &cfg()).unwrap().value;
        prop_assert!(tol.le(mu(&minkowski_sum(&m, &n).unwrap(), b * b), mu(&m, b) + mu(&n, b)));
        prop_assert!(tol.le(mu(&union(&m, &n).unwrap(), 2 * b), mu(&m, b).max(mu(&n, b))));
        prop_assert!(tol.eq(mu(&scale(-1.5, &m).unwrap(), b), 1.5 * mu(&m, b)));
        let c = convex_combination(0.25, &m, &n).unwrap();
        prop_assert!(tol.le(mu(&c, b * b), 0.25 * mu(&m, b) + 0.75 * mu(&n, b)));
    }

    #[test]
    fn nussbaum_monotone_and_lipschitz(
        slopes in prop::collection::vec(-3.0f64..3.0, 1..4),
        n in 2usize..9,
        d1 in 0.0f64..1.0,
        d2 in 0.0f64..1.0,
    ) {
        let sp1 = SpaceTag::new(1, NormTag::L2).unwrap();
        let ts: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let domain = Domain::indexed(n).unwrap()
            .with_coords(sp1, ts.iter().map(|&t| Vector::new(vec![t]).unwrap()).collect())
            .unwrap();
        let fs = slopes.iter().enumerate()
            .map(|(i, c)| Function::new(format!("f{i}"), ts.iter().map(|t| Vector::new(vec![c * t]).unwrap()).collect()))
            .collect();
        let m = FunctionFamily::new(domain, sp1, fs).unwrap();
        let tol = Tolerance::default();
        let lip = slopes.iter().fold(0.0f64, |a, c| a.max(c.abs()));
        let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
        let wl = nussbaum_modulus(&m, lo, tol).unwrap();
        let wh = nussbaum_modulus(&m, hi, tol).unwrap();
        prop_assert!(tol.le(wl, wh));
        prop_assert!(tol.le(wh, lip * hi));
    }

    #[test]
    fn solvers_are_deterministic(m in family()) {
        let a = omega_budget(&m, k(2), Mode::Exact, &cfg()).unwrap();
        let b = omega_budget(&m, k(2), Mode::Exact, &cfg()).unwrap();
        prop_assert_eq!(a.value.to_bits(), b.value.to_bits());
        prop_assert_eq!(a.witness_digest(), b.witness_digest());
    }
}

#[test]
fn set_partition_counts_are_bell_numbers() {
    let bell: Vec<usize> = (0..=6).map(|n| set_partitions(n).len()).collect();
    assert_eq!(bell, vec![1, 1, 2, 5, 15, 52, 203]);
}
