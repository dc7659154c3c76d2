#![allow(clippy::excessive_precision)]

use num_complex::Complex64 as C;
use painleve_core::hypergeom::*;
use painleve_core::Error;
use proptest::prelude::*;

const fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn rel(a: C, b: C) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

/// `(x, chart, [ω₁, ω₂, ω₁', ω₂'])` from a 40-digit evaluation through the
/// connection formula `g(x) = −π F(1 − x)` and `F' = F(3/2, 3/2; 2; x)/4`.
const BASIS: &[(C, Chart, [C; 4])] = &[
    (c(0.3, 0.2), Chart::Zero, [c(1.6961165546095899, 0.11349502783953769), c(0.25678991312737803, 1.9885187570386222), c(0.53434675241993157, 0.17058242892414543), c(-0.72229359861121268, -0.97955326567105419)]),
    (c(-0.2, -0.35), Chart::Zero, [c(1.4823283472507462, -0.10829571700180001), c(-0.92518241934695413, 1.8660089160540118), c(0.29001026520942218, -0.096833594081724334), c(0.90954655404987437, 0.73715690699806417)]),
    (c(0.8, -0.1), Chart::One, [c(2.2035766314985095, -0.20944343347321226), c(-0.050116919434926885, 1.6561397487806659), c(1.7839481572851984, -0.95882062840940773), c(0.069109641861432394, -0.49521372730832238)]),
    (c(1.3, 0.4), Chart::One, [c(1.7557788937349078, 0.96516082218523436), c(0.1125943396563121, 1.4500373298345881), c(-0.69732884518274118, 0.63328441681898397), c(-0.092688996499897894, -0.26188516422575161)]),
    (c(2.5, 1.0), Chart::Infinity, [c(0.89716002185439925, -1.4540563084301602), c(0.12899251940126698, 1.2034508399486069), c(-0.12475776901122417, 0.27570922894944824), c(-0.054530975941739617, -0.11391726536150591)]),
    (c(-1.5, -2.0), Chart::Infinity, [c(1.1362584870241238, -0.22198446571190132), c(-0.77381329361335728, 1.0827090582918234), c(0.072500773345712888, -0.074283341774459525), c(0.081752638185621667, 0.13294644694355251)]),
];

#[test]
fn basis_matches_reference_values() {
    for &(x, chart, want) in BASIS {
        assert_eq!(Chart::choose(x).unwrap(), chart, "chart at {x}");
        let b = basis_at(x, chart).unwrap();
        let got = [b.omega1, b.omega2, b.omega1_prime, b.omega2_prime];
        for (g, w) in got.iter().zip(want) {
            assert!(rel(*g, w) < 1e-13, "{x}: {g} vs {w}");
        }
    }
}

#[test]
fn series_at_origin() {
    assert_eq!(eval_f(c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
    assert!((eval_f_prime(c(0.0, 0.0)).unwrap() - 0.25).norm() < 1e-15);
    assert!(rel(eval_f(c(0.5, 0.0)).unwrap(), c(1.1803405990161, 0.0)) < 1e-12);
}

#[test]
fn singular_points_are_rejected() {
    assert!(matches!(basis_at(c(1.0, 0.0), Chart::One), Err(Error::Domain(_))));
    assert!(matches!(basis_at(c(0.0, 0.0), Chart::Zero), Err(Error::Domain(_))));
    assert!(matches!(basis_at(c(0.0, 0.0), Chart::Infinity), Err(Error::Domain(_))));
    assert!(Chart::choose(c(0.0, 0.0)).is_ok());
}

#[test]
fn loop_matrices() {
    let close = |m: Mat2, want: [[f64; 2]; 2]| (0..2).all(|i| (0..2).all(|j| (m[i][j] - want[i][j]).norm() < 1e-12));
    assert!(close(continue_basis(Loop::Gamma0).unwrap(), [[1.0, 0.0], [2.0, 1.0]]));
    assert!(close(continue_basis(Loop::Gamma1).unwrap(), [[1.0, -2.0], [0.0, 1.0]]));
    assert!(close(continue_basis(Loop::Trivial).unwrap(), [[1.0, 0.0], [0.0, 1.0]]));
    // γ₀ then γ₁ composes to M(γ₀)·M(γ₁).
    assert!(close(continue_basis_path(&[Loop::Gamma0, Loop::Gamma1]).unwrap(), [[1.0, -2.0], [2.0, -3.0]]));
}

#[test]
fn loop_path_validation() {
    assert!(loop_path(Loop::Gamma0, c(1.2, 0.0), 16).is_err());
    let p = loop_path(Loop::Gamma1, c(0.5, 0.0), 16).unwrap();
    assert_eq!(p.len(), 17);
    assert_eq!(p[0], p[16]);
}

/// Points of the upper half plane covered by some chart disc.
fn upper_half_plane() -> impl Strategy<Value = C> {
    (-2.0..3.0f64, 0.05..2.0f64)
        .prop_map(|(re, im)| c(re, im))
        .prop_filter("covered by a chart", |&x| Chart::ALL.iter().any(|ch| ch.margin(x) > SERIES_MARGIN))
}

proptest! {
    #[test]
    fn abel_identity(x in upper_half_plane(), flip in any::<bool>()) {
        let x = if flip { x.conj() } else { x };
        let b = basis(x).unwrap();
        prop_assert!(b.abel_defect() < 1e-12, "defect {} at {x}", b.abel_defect());
    }

    #[test]
    fn charts_agree_on_overlaps(x in upper_half_plane(), lower in any::<bool>()) {
        let x = if lower { x.conj() } else { x };
        let charts: Vec<Chart> = Chart::ALL.into_iter().filter(|ch| ch.margin(x) > 0.1).collect();
        for pair in charts.windows(2) {
            let (a, b) = (basis_at(x, pair[0]).unwrap(), basis_at(x, pair[1]).unwrap());
            // Above the real axis the chart at infinity sees ω₁ − 2ω₂.
            let shift = if pair[1] == Chart::Infinity && !lower { 2.0 } else { 0.0 };
            let want = [a.omega1 - shift * a.omega2, a.omega2, a.omega1_prime - shift * a.omega2_prime, a.omega2_prime];
            let got = [b.omega1, b.omega2, b.omega1_prime, b.omega2_prime];
            for (u, v) in got.iter().zip(want) {
                prop_assert!((u - v).norm() < 1e-11 * (1.0 + v.norm()), "{:?}/{:?} at {x}: {u} vs {v}", pair[0], pair[1]);
            }
        }
    }

    #[test]
    fn basis_solves_the_equation(x in upper_half_plane()) {
        let chart = Chart::choose(x).unwrap();
        let h = 1e-4 * x.norm().min((x - 1.0).norm());
        let (bp, bm, b0) = (basis_at(x + h, chart).unwrap(), basis_at(x - h, chart).unwrap(), basis_at(x, chart).unwrap());
        for k in 0..2 {
            let fd = (bp.omega_prime()[k] - bm.omega_prime()[k]) / (2.0 * h);
            let ode = ode_second_derivative(x, b0.omega()[k], b0.omega_prime()[k]);
            prop_assert!((fd - ode).norm() < 1e-6 * (1.0 + ode.norm()));
        }
    }

    #[test]
    fn abel_identity_near_the_disc_edge(theta in 0.3..3.0f64, r in 0.985..0.989f64) {
        for x in [C::from_polar(r, theta), C::from_polar(1.0 / r, theta)] {
            let b = basis(x).unwrap();
            prop_assert!(b.abel_defect() < 1e-12, "defect {} at {x}", b.abel_defect());
        }
    }

    #[test]
    fn local_and_global_are_inverse(x in upper_half_plane()) {
        for ch in Chart::ALL {
            prop_assert!((ch.global(ch.local(x)) - x).norm() < 1e-14 * (1.0 + x.norm()));
        }
    }
}

#[test]
fn basis_near_the_singular_points() {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let b0 = basis_at(c(1e-6, 0.0), Chart::Zero).unwrap();
    assert!((b0.omega1 - half_pi).norm() < 1e-6);
    let b1 = basis_at(c(1.0 - 1e-6, 0.0), Chart::One).unwrap();
    assert!((b1.omega2 - c(0.0, half_pi)).norm() < 1e-6);
}

#[test]
fn wronskian_follows_abel() {
    // W' = −p W with p = (1 − 2x)/(x(1 − x)), integrated exactly from x₀ = 0.1.
    let (x0, x) = (c(0.1, 0.0), c(0.2, 0.0));
    let w0 = basis_at(x0, Chart::Zero).unwrap().wronskian();
    let w = basis_at(x, Chart::Zero).unwrap().wronskian();
    let abel = w0 * (x0 * (1.0 - x0)) / (x * (1.0 - x));
    assert!(rel(w, abel) < 1e-10);
}
