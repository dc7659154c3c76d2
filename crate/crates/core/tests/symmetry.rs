use num_complex::Complex64 as C;
use num_rational::Rational64 as R;
use num_traits::Signed;
use painleve_core::chazy::{chazy_jet_from_basis, ChazyParam};
use painleve_core::hypergeom::{basis_at, Chart};
use painleve_core::picard::PicardParams;
use painleve_core::symmetry::*;
use painleve_core::verify::{pvi_residual, SolutionHandle};
use painleve_core::Error;
use proptest::prelude::*;

const fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn half(n: i64) -> R {
    R::new(n, 2)
}

/// The map's coefficients written out directly.
fn direct(x: C, y: C, m: f64) -> ([C; 3], [C; 5]) {
    let (x1, y1, yx) = (x - 1.0, y - 1.0, y - x);
    let d = x * x1;
    let yy = y * y1;
    let p = [
        d * d,
        2.0 * d * y1 * (2.0 * m * yx - y),
        yy * (yy - 4.0 * m * y1 * yx + 4.0 * m * m * yx * (yx - 1.0)),
    ];
    let q = [
        d.powi(4),
        -4.0 * d.powi(3) * yy,
        2.0 * d * d * yy * (3.0 * yy + 4.0 * m * m * yx * (1.0 + x - 3.0 * y)),
        4.0 * d * yy * yy * (-yy - 16.0 * m.powi(3) * yx * yx + 4.0 * m * m * yx * (3.0 * y - x - 1.0)),
        yy * yy
            * (yy * yy + 64.0 * m.powi(3) * yy * yx * yx - 8.0 * m * m * yy * yx * (3.0 * y - x - 1.0)
                + 16.0 * m.powi(4) * yx * yx * (x1 * x1 + y * (2.0 + 2.0 * x - 3.0 * y))),
    ];
    (p, q)
}

fn quartic(q: &[C; 5], z: C) -> C {
    q.iter().fold(c(0.0, 0.0), |a, &k| a * z + k)
}

/// Roots of a quartic by simultaneous (Durand–Kerner) iteration.
fn quartic_roots(q: &[C; 5]) -> [C; 4] {
    let mut r = [0, 1, 2, 3].map(|k| C::from_polar(1.0, 0.4 + 1.5 * k as f64));
    for _ in 0..500 {
        for i in 0..4 {
            let mut den = q[0];
            for j in 0..4 {
                if i != j {
                    den *= r[i] - r[j];
                }
            }
            r[i] -= quartic(q, r[i]) / den;
        }
    }
    r
}

fn nearest(z: C, set: &[C]) -> f64 {
    set.iter().map(|s| (z - s).norm() / (1.0 + s.norm())).fold(f64::INFINITY, f64::min)
}

#[test]
fn singular_jets_are_rejected() {
    let x = c(0.3, 0.1);
    assert!(matches!(JetPoint::new(x, x, c(0.0, 0.0), half(-1)), Err(Error::NearSingular(_))));
    assert!(matches!(JetPoint::new(x, c(1.0, 0.0), c(0.2, 0.0), half(1)), Err(Error::NearSingular(_))));
    assert!(matches!(JetPoint::new(c(1.0, 0.0), c(0.4, 0.0), c(0.2, 0.0), half(1)), Err(Error::Domain(_))));
    assert!(matches!(JetPoint::new(x, c(0.4, 0.0), c(0.2, 0.0), R::new(1, 3)), Err(Error::InvalidParams(_))));
}

#[test]
fn chazy_jets_are_on_the_zero_locus() {
    let x = c(0.3, 0.2);
    let b = basis_at(x, Chart::Zero).unwrap();
    for nu in [ChazyParam::real(1.0), ChazyParam::Finite(c(1.0, 1.0)), ChazyParam::Infinity] {
        let (y, yp) = chazy_jet_from_basis(&b, &nu).unwrap();
        let j = JetPoint::new(x, y, yp, half(-1)).unwrap();
        assert!(matches!(s1_transform(&j), Err(Error::DenominatorZero { .. })));
        assert!(q_relative(&j) < 1e-8);
        // The Chazy slope is one of the four root branches.
        assert!(nearest(yp, &q_branch_roots(x, y)) < 1e-6, "{nu:?}");
    }
}

#[test]
fn picard_image_solves_the_target_equation() {
    let base = SolutionHandle::Picard(PicardParams::real(0.5, 1.0 / 3.0).unwrap());
    let steps = mu_ladder(half(1), half(-1)).unwrap();
    assert_eq!(steps, vec![LadderStep::S1 { mu: half(1) }]);
    let img = SolutionHandle::Transformed { base: Box::new(base), steps };
    assert_eq!(img.mu(), half(-1));
    let r = pvi_residual(&img, c(0.4, 0.0), None).unwrap();
    assert!(r < 1e-6, "{r}");
}

#[test]
fn rational_image_solves_the_target_equation() {
    let base = SolutionHandle::RationalFamily { a: c(2.0, 0.0) };
    let x = c(0.3, 0.0);
    let (y, yp, _) = base.jet(x, None).unwrap();
    assert!((y - 2.0 * x / (1.0 + x)).norm() < 1e-15);
    let j = JetPoint::new(x, y, yp, R::from_integer(1)).unwrap();
    assert!(s1_transform(&j).unwrap().is_finite());
    let img = SolutionHandle::Transformed { base: Box::new(base), steps: vec![LadderStep::S1 { mu: R::from_integer(1) }] };
    assert_eq!(img.mu(), R::from_integer(-1));
    let r = pvi_residual(&img, x, None).unwrap();
    assert!(r < 1e-8, "{r}");
}

/// The image slope in closed form agrees with differencing image values.
#[test]
fn image_slope_matches_differences() {
    use painleve_core::verify::stencil_derivatives;
    for a in [c(2.0, 0.0), c(0.5, 0.7)] {
        let image = |x: C| {
            let (y, yp, _) = SolutionHandle::RationalFamily { a }.jet(x, None)?;
            s1_transform_jet(&JetPoint::new(x, y, yp, R::from_integer(1))?)
        };
        for x in [c(0.3, 0.0), c(0.6, -0.2), c(-0.8, 0.5)] {
            let (y, yp) = image(x).unwrap();
            let (fy, fyp, _) = stencil_derivatives(&|z| image(z).map(|j| j.0), x, 1e-3).unwrap();
            assert!((y - fy).norm() < 1e-15 * (1.0 + y.norm()));
            assert!((yp - fyp).norm() < 1e-9 * (1.0 + yp.norm()), "{a} at {x}: {yp} vs {fyp}");
        }
    }
}

#[test]
fn elementary_examples() {
    let (x, y) = elementary_symmetry(&[Elementary::T01], c(0.3, 0.0), c(0.7, 0.0)).unwrap();
    assert!((x - 0.7).norm() < 1e-15 && (y - 0.3).norm() < 1e-15);
    let (x, y) = elementary_symmetry(&[Elementary::T0Inf], c(2.0, 0.0), c(3.0, 0.0)).unwrap();
    assert_eq!((x, y), (c(0.5, 0.0), c(1.5, 0.0)));
    let p = (c(0.3, 0.1), c(0.2, 0.0));
    let (x, y) = elementary_symmetry(&[Elementary::T01, Elementary::T01], p.0, p.1).unwrap();
    assert!((x - p.0).norm() < 1e-15 && (y - p.1).norm() < 1e-15);
    assert!(matches!(elementary_symmetry(&[Elementary::T0Inf], c(1.0, 0.0), c(2.0, 0.0)), Err(Error::Domain(_))));
}

#[test]
fn ladders() {
    assert_eq!(mu_ladder(half(-1), half(-1)).unwrap(), vec![]);
    assert!(matches!(mu_ladder(half(1), R::from_integer(1)), Err(Error::UnreachableTarget { .. })));
    assert!(matches!(mu_ladder(R::new(1, 3), half(1)), Err(Error::InvalidParams(_))));
    // 3/2 and −1/2 label one equation: no map is needed.
    assert_eq!(mu_ladder(half(3), half(-1)).unwrap(), vec![LadderStep::Relabel { from: half(3), to: half(-1) }]);
    // The map at 3/2 climbs to −3/2.
    assert_eq!(
        mu_ladder(half(-1), half(-3)).unwrap(),
        vec![LadderStep::Relabel { from: half(-1), to: half(3) }, LadderStep::S1 { mu: half(3) }]
    );
    assert_eq!(equation_class(half(3)), R::from_integer(2));
    assert_eq!(equation_class(half(-1)), R::from_integer(2));
}

#[test]
fn roots_match_an_independent_quartic_solver() {
    let (x, y) = (c(0.25, 0.0), c(0.5, 0.0));
    let (_, q) = direct(x, y, -0.5);
    let want = quartic_roots(&q);
    let got = q_branch_roots(x, y);
    for g in got {
        assert!(nearest(g, &want) < 1e-10, "{g} not in {want:?}");
    }
    for w in want {
        assert!(nearest(w, &got) < 1e-10, "{w} not in {got:?}");
    }
}

#[test]
fn ladder_image_solves_each_equation() {
    let base = SolutionHandle::Picard(PicardParams::real(0.5, 1.0 / 3.0).unwrap());
    for target in [half(-1), half(3), half(-3)] {
        let img = SolutionHandle::Transformed { base: Box::new(base.clone()), steps: mu_ladder(half(1), target).unwrap() };
        assert_eq!(equation_class(img.mu()), equation_class(target));
        let r = pvi_residual(&img, c(0.4, 0.1), None).unwrap();
        assert!(r < 1e-6, "{target}: {r}");
    }
}

fn sample() -> impl Strategy<Value = C> {
    (0.15f64..0.6, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| c(0.5, 0.0) + C::from_polar(r, t))
}

fn small() -> impl Strategy<Value = C> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn tables_match_direct_formulas(x in small(), y in small(), m in -3i64..4) {
        let mu = half(m);
        let (p, q) = s1_polynomials(x, y, mu);
        let (dp, dq) = direct(x, y, m as f64 / 2.0);
        let scale = (1.0 + x.norm()).powi(8) * (1.0 + y.norm()).powi(8) * (1.0 + (m as f64).abs()).powi(4);
        for (a, b) in p.iter().zip(&dp).chain(q.iter().zip(&dq)) {
            prop_assert!((a - b).norm() < 1e-12 * scale, "{} vs {}", a, b);
        }
    }

    #[test]
    fn obstruction_factors_match(x in small(), y in small(), yp in small()) {
        let want = [
            y - y * y - x * yp * yp + x * x * yp * yp,
            y * y - y - 2.0 * x * yp * (y - 1.0) - x * yp * yp + x * x * yp * yp,
            y * y - y - 2.0 * y * yp * (x - 1.0) - x * yp * yp + x * x * yp * yp,
        ];
        for (a, b) in obstruction_factors(x, y, yp).iter().zip(want) {
            prop_assert!((a - b).norm() < 1e-12 * (1.0 + b.norm()));
        }
    }

    #[test]
    fn roots_solve_the_quartic(x in sample(), y in small()) {
        prop_assume!(y.norm() > 0.05 && (y - 1.0).norm() > 0.05 && (y - x).norm() > 0.05);
        for r in q_branch_roots(x, y) {
            let j = JetPoint::new(x, y, r, half(-1)).unwrap();
            prop_assert!(q_relative(&j) < 1e-8, "{}", q_relative(&j));
        }
    }

    /// Each elementary symmetry carries the root branches onto root branches.
    #[test]
    fn roots_are_permuted_by_symmetries(x in sample(), y in small()) {
        prop_assume!(y.norm() > 0.05 && (y - 1.0).norm() > 0.05 && (y - x).norm() > 0.05);
        let maps: [&[Elementary]; 3] = [&[Elementary::T01], &[Elementary::T0Inf], &[Elementary::T01, Elementary::T0Inf]];
        for which in maps {
            for r in q_branch_roots(x, y) {
                let (tx, ty, tr) = elementary_symmetry_jet(which, x, y, r).unwrap();
                prop_assert!(nearest(tr, &q_branch_roots(tx, ty)) < 1e-8, "{:?}", which);
            }
        }
    }

    #[test]
    fn elementary_maps_are_involutions(x in sample(), y in small(), yp in small()) {
        for w in [Elementary::T01, Elementary::T0Inf] {
            let (a, b, d) = elementary_symmetry_jet(&[w, w], x, y, yp).unwrap();
            prop_assert!((a - x).norm() + (b - y).norm() + (d - yp).norm() < 1e-12 * (1.0 + yp.norm() + y.norm()));
        }
    }

    /// Applying the steps of a ladder moves the class to the target's.
    #[test]
    fn ladder_reaches_target(s in -9i64..10, t in -9i64..10) {
        let (a, b) = (half(2 * s + 1), half(2 * t + 1));
        let steps = mu_ladder(a, b).unwrap();
        let mut mu = a;
        for st in &steps {
            match *st {
                LadderStep::S1 { mu: m } => {
                    prop_assert_eq!(m, mu);
                    prop_assert_eq!((equation_class(-m) - equation_class(m)).abs(), R::from_integer(2));
                }
                LadderStep::Relabel { from, to } => {
                    prop_assert_eq!(from, mu);
                    prop_assert_eq!(equation_class(from), equation_class(to));
                }
            }
            mu = st.target();
        }
        prop_assert_eq!(mu, b);
        prop_assert_eq!(
            steps.iter().filter(|s| matches!(s, LadderStep::S1 { .. })).count() as i64,
            ((equation_class(a) - equation_class(b)).abs() / 2).to_integer()
        );
    }
}
