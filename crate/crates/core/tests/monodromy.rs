use num_complex::Complex64 as C;
use num_rational::Rational64 as R;
use painleve_core::monodromy::cyclotomic::cyclotomic_polynomial;
use painleve_core::monodromy::*;
use painleve_core::Error;
use proptest::prelude::*;

fn r(p: i64, q: i64) -> R {
    R::new(p, q)
}

fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> TriangleAngles {
    TriangleAngles::new(r(a.0, a.1), r(b.0, b.1), r(c.0, c.1)).unwrap()
}

fn ints(t: &MonodromyTriple) -> [f64; 3] {
    t.to_complex().map(|z| {
        assert!(z.im.abs() < 1e-12);
        z.re
    })
}

fn exact(v: [i128; 3]) -> MonodromyTriple {
    let f = CyclotomicField::new(1);
    MonodromyTriple::Exact(v.map(|k| f.integer(k)))
}

/// All flat triangles with denominators up to 8.
fn flat_triangles() -> Vec<TriangleAngles> {
    let mut out = Vec::new();
    for q in 1..=8 {
        for a in 0..=q {
            for b in 0..=q - a {
                let t = TriangleAngles::new(r(a, q), r(b, q), r(q - a - b, q)).unwrap();
                if !out.contains(&t) {
                    out.push(t);
                }
            }
        }
    }
    out
}

#[test]
fn cyclotomic_polynomials() {
    assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
    assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
    assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
    assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    assert_eq!(cyclotomic_polynomial(15), vec![1, -1, 0, 1, -1, 1, 0, -1, 1]);
}

#[test]
fn triples_from_angles() {
    let rep = triple_from_angles(&tri((0, 1), (1, 3), (2, 3)));
    assert_eq!(ints(&rep.triple), [-2.0, -1.0, 1.0]);
    assert_eq!(rep.class, ConstraintClass::HalfInteger);
    assert!((rep.constraint.to_complex() - 4.0).norm() < 1e-14);
    let rep = triple_from_angles(&tri((0, 1), (0, 1), (0, 1)));
    assert_eq!(ints(&rep.triple), [-2.0, -2.0, -2.0]);
    // 12 − (−2)³ = 20: neither resonant value.
    assert!((rep.constraint.to_complex() - 20.0).norm() < 1e-14);
    assert_eq!(rep.class, ConstraintClass::Other);
    let rep = triple_from_angles(&tri((1, 2), (1, 2), (1, 2)));
    assert_eq!(ints(&rep.triple), [0.0, 0.0, 0.0]);
    assert_eq!(rep.class, ConstraintClass::Integer);
    assert!(rep.constraint.is_zero());
    assert!(!rep.triple.is_admissible());
    assert!(TriangleAngles::new(r(3, 2), r(0, 1), r(0, 1)).is_err());
}

#[test]
fn braid_examples() {
    let z = exact([0, 0, 0]);
    assert_eq!(braid_act(Braid::Beta1, &z).unwrap(), z);
    let t = exact([2, 2, 2]);
    let b = braid_act(Braid::Beta1, &t).unwrap();
    assert_eq!(ints(&b), [-2.0, -2.0, 2.0]);
    assert_eq!(b.canonical(false), t.canonical(false));
    let u = triple_from_angles(&tri((0, 1), (1, 3), (2, 3))).triple;
    assert_eq!(braid_act(Braid::Beta2Inv, &braid_act(Braid::Beta2, &u).unwrap()).unwrap(), u);
    let n = MonodromyTriple::numeric(C::new(0.3, 0.1), C::new(-1.2, 0.0), C::new(0.7, 0.4));
    let back = braid_act(Braid::Beta1Inv, &braid_act(Braid::Beta1, &n).unwrap()).unwrap();
    for (a, b) in back.to_complex().iter().zip(n.to_complex()) {
        assert!((a - b).norm() < 1e-15);
    }
}

#[test]
fn angle_braid_examples() {
    let t = tri((0, 1), (1, 3), (2, 3));
    assert_eq!(braid_act_angles(Braid::Beta1, &t).unwrap(), tri((1, 1), (1, 3), (1, 3)));
    assert_eq!(braid_act_angles(Braid::Beta2, &t).unwrap(), tri((2, 3), (2, 3), (1, 3)));
    // No flat representative: 1/5 + 1/5 + 1/5 and its sign patterns.
    assert!(matches!(braid_act_angles(Braid::Beta1, &tri((1, 5), (1, 5), (1, 5))), Err(Error::Domain(_))));
}

/// Orbit sizes of `(0, M/2N, 1 − M/2N)` from an independent rational BFS.
const ORBIT_SIZES: &[((u64, u64), usize)] = &[
    ((2, 3), 4),
    ((1, 3), 12),
    ((1, 2), 6),
    ((1, 4), 24),
    ((3, 4), 24),
    ((1, 5), 36),
    ((3, 5), 36),
    ((2, 5), 12),
    ((4, 5), 12),
    ((1, 7), 72),
    ((3, 7), 72),
    ((5, 7), 72),
];

#[test]
fn orbit_sizes() {
    for &((m, n), size) in ORBIT_SIZES {
        let t = TriangleAngles::new(r(0, 1), r(m as i64, 2 * n as i64), r(2 * n as i64 - m as i64, 2 * n as i64)).unwrap();
        let o = orbit(&OrbitInput::Angles(t), &OrbitOptions::default()).unwrap();
        assert!(o.is_finite());
        assert_eq!(o.len(), size, "(M, N) = ({m}, {n})");
        // The triple BFS agrees with the angle BFS.
        let via = orbit(&OrbitInput::Triple(triple_from_angles(&t).triple), &OrbitOptions::default()).unwrap();
        assert_eq!(via.len(), size, "triples for ({m}, {n})");
    }
}

#[test]
fn special_orbits() {
    let opts = OrbitOptions { permutations: true, ..OrbitOptions::default() };
    let o = orbit(&OrbitInput::Triple(exact([2, 2, 2])), &opts).unwrap();
    assert!(o.is_finite());
    assert_eq!(o.len(), 1);
    let bad = orbit(&OrbitInput::Triple(exact([0, 0, 3])), &OrbitOptions::default());
    assert!(matches!(bad, Err(Error::Domain(_))));
    // A generic numeric triple has an infinite orbit; the cap reports it.
    let n = MonodromyTriple::numeric(C::new(0.3, 0.0), C::new(1.1, 0.0), C::new(2.7, 0.0));
    let o = orbit(&OrbitInput::Triple(n), &OrbitOptions { cap: 200, permutations: false }).unwrap();
    assert!(!o.is_finite());
}

#[test]
fn nu_dictionary() {
    assert_eq!(angles_from_nu(r(2, 3), r(0, 1)).unwrap(), tri((0, 1), (2, 3), (1, 3)));
    assert_eq!(nu_from_angles(&tri((0, 1), (2, 3), (1, 3))).unwrap(), (r(2, 3), r(0, 1)));
    assert_eq!(nu_from_angles(&angles_from_nu(r(1, 2), r(1, 3)).unwrap()).unwrap(), (r(1, 2), r(1, 3)));
    assert!(matches!(angles_from_nu(r(1, 2), r(1, 2)), Err(Error::Domain(_))));
    assert!(matches!(angles_from_nu(r(2, 1), r(1, 2)), Err(Error::Domain(_))));
    assert!(matches!(nu_from_angles(&tri((1, 3), (1, 3), (1, 2))), Err(Error::Domain(_))));
}

#[test]
fn picard_matrices() {
    let m = picard_monodromy_matrices(C::new(0.0, 0.0), C::new(0.0, 0.0)).unwrap();
    let ch = chazy_monodromy_matrices();
    assert_eq!(m, ch);
    assert_eq!(ch.m3, [[C::new(3.0, 0.0), C::new(-2.0, 0.0)], [C::new(2.0, 0.0), C::new(-1.0, 0.0)]]);
    // Tr M₁M₂ = 2 − 4cos²(πν₂/2) = 2 − x₁² on the dictionary's triangle.
    let m = picard_monodromy_matrices(C::new(1.0, 0.0), C::new(1.0 / 3.0, 0.0)).unwrap();
    assert!((m.pair_traces()[0] + 1.0).norm() < 1e-14);
    let t = angles_from_nu(r(1, 1), r(1, 3)).unwrap();
    let x = triple_from_angles(&t).triple.to_complex();
    assert!((m.pair_traces()[0] - (2.0 - x[0] * x[0])).norm() < 1e-14);
    assert!(matches!(picard_monodromy_matrices(C::new(0.5, 0.0), C::new(1.0, 0.0)), Err(Error::DegenerateDenominator(_))));
}

#[test]
fn commuting_matrices_and_rational_solutions() {
    let m = commuting_family(C::new(2.0, 0.0));
    assert!(m.commute_pairwise(1e-14));
    assert!((m.m1[0][1] + m.m2[0][1] - m.m3[0][1]).norm() < 1e-15);
    let d = m.defects();
    assert!(d.det < 1e-15 && d.trace < 1e-15 && d.product < 1e-12);
    let y = rational_solution_eval(C::new(2.0, 0.0), C::new(0.5, 0.0)).unwrap();
    assert!((y - 2.0 / 3.0).norm() < 1e-15);
    assert!(matches!(rational_solution_eval(C::new(2.0, 0.0), C::new(-1.0, 0.0)), Err(Error::Pole(_))));
}

#[test]
fn dihedral_table() {
    for ((m, n), (nh, mh, rs)) in [((2, 3), (3, 1, "A2")), ((1, 2), (4, 1, "B2")), ((1, 3), (6, 1, "G2"))] {
        let d = dihedral_classify(m, n).unwrap();
        assert_eq!((d.n_hat, d.m_hat, d.root_system), (nh, mh, Some(rs)));
        assert_eq!(d.group, format!("D({nh})"));
        assert!(d.gram_det.is_zero());
        let g = d.gram_numeric();
        assert!((0..3).all(|i| (g[i][i] - 2.0).abs() < 1e-15 && (0..3).all(|j| (g[i][j] - g[j][i]).abs() < 1e-15)));
    }
    let d = dihedral_classify(3, 5).unwrap();
    assert_eq!((d.n_hat, d.m_hat, d.root_system), (10, 3, None));
    assert!(matches!(dihedral_classify(2, 4), Err(Error::InvalidParams(_))));
    assert!(matches!(dihedral_classify(7, 3), Err(Error::InvalidParams(_))));
}

/// The dihedral order is constant along each orbit.
#[test]
fn dihedral_order_is_an_orbit_invariant() {
    for &((m, n), _) in ORBIT_SIZES {
        let d = dihedral_classify(m, n).unwrap();
        let o = orbit(&OrbitInput::Angles(d.angles), &OrbitOptions::default()).unwrap();
        for a in o.angles.unwrap() {
            assert_eq!(dihedral_order(&a), d.n_hat, "({m}, {n}) at {a:?}");
        }
    }
}

#[test]
fn exhaustive_flat_triangles() {
    let all = flat_triangles();
    assert_eq!(all.len(), 118);
    for t in &all {
        let x = triple_from_angles(t).triple;
        let k = x.constraint_exact().unwrap();
        for g in Braid::ALL {
            // Exact invariance of the constraint.
            let y = braid_act(g, &x).unwrap();
            assert_eq!(y.constraint_exact().unwrap(), k);
            // The angle action is the triple action on classes.
            let a = braid_act_angles(g, t).unwrap();
            assert_eq!(triple_from_angles(&a).triple.canonical(false).to_complex(), y.canonical(false).to_complex());
            // Denominators never grow.
            assert_eq!(t.denominator_lcm() % a.denominator_lcm(), 0);
            // Inverses.
            assert_eq!(braid_act(g.inverse(), &y).unwrap(), x);
            // Sign changes commute with the action.
            for s in x.sign_patterns() {
                assert_eq!(braid_act(g, &s).unwrap().canonical(false), y.canonical(false));
            }
        }
        let lhs = [Braid::Beta1, Braid::Beta2, Braid::Beta1].iter().try_fold(x.clone(), |v, &g| braid_act(g, &v)).unwrap();
        let rhs = [Braid::Beta2, Braid::Beta1, Braid::Beta2].iter().try_fold(x.clone(), |v, &g| braid_act(g, &v)).unwrap();
        assert_eq!(lhs, rhs);
        assert!(gram_matrix(t).unwrap().1.is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn exact_matches_float(p in 0i64..40, q in 1i64..20) {
        prop_assume!(p <= q);
        let f = CyclotomicField::new(2 * q as u32);
        let v = f.neg_two_cos_pi(r(p, q)).unwrap().to_complex();
        prop_assert!((v - C::new(-2.0 * (std::f64::consts::PI * p as f64 / q as f64).cos(), 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ring_operations_match_float(a in prop::collection::vec(-5i128..5, 6), b in prop::collection::vec(-5i128..5, 6)) {
        let f = CyclotomicField::new(12);
        let build = |c: &[i128]| c.iter().enumerate().fold(f.integer(0), |acc, (k, &v)| acc.add(&f.zeta_power(k as i64).mul(&f.integer(v)).unwrap()).unwrap());
        let (x, y) = (build(&a), build(&b));
        let (fx, fy) = (x.to_complex(), y.to_complex());
        prop_assert!((x.mul(&y).unwrap().to_complex() - fx * fy).norm() < 1e-9);
        prop_assert!((x.sub(&y).unwrap().to_complex() - (fx - fy)).norm() < 1e-12);
    }

    #[test]
    fn numeric_braid_preserves_constraint(a in -3.0f64..3.0, b in -3.0f64..3.0, c in -3.0f64..3.0, k in 0usize..4) {
        let t = MonodromyTriple::numeric(C::new(a, 0.0), C::new(b, 0.0), C::new(c, 0.0));
        let u = braid_act(Braid::ALL[k], &t).unwrap();
        prop_assert!((u.constraint() - t.constraint()).norm() < 1e-10 * (1.0 + t.constraint().norm()));
    }

    /// Prop. 2 matrices satisfy the unipotency and product relations and
    /// approach the Chazy matrices.
    #[test]
    fn picard_matrix_relations(n1 in -1.9f64..1.9, n2 in -0.9f64..0.9, i1 in -0.3f64..0.3) {
        let m = picard_monodromy_matrices(C::new(n1, i1), C::new(n2, 0.0)).unwrap();
        let d = m.defects();
        prop_assert!(d.det < 1e-9 && d.trace < 1e-12 && d.product < 1e-9);
        let inf = m.m_inf();
        // Half-integer μ: Tr M∞ = −2cos 2πμ = −2.
        prop_assert!((inf[0][0] + inf[1][1] + 2.0).norm() < 1e-9);
        let e = 1e-6;
        let s = picard_monodromy_matrices(C::new(n1 * e, i1 * e), C::new(n2 * e, 0.0)).unwrap();
        let ch = chazy_monodromy_matrices();
        for (a, b) in [(s.m1, ch.m1), (s.m2, ch.m2), (s.m3, ch.m3)] {
            for i in 0..2 {
                for j in 0..2 {
                    prop_assert!((a[i][j] - b[i][j]).norm() < 1e-9);
                }
            }
        }
    }

    /// Angle ↔ ν round trip, up to `ν ↦ 2 − ν` when `ν₁ < ν₂`.
    #[test]
    fn dictionary_round_trip(p1 in 0i64..24, p2 in 0i64..24, q in 1i64..12) {
        let (n1, n2) = (r(p1, q), r(p2, q));
        let two = R::from_integer(2);
        prop_assume!(n1 < two && n2 < two && n1 != n2);
        let t = angles_from_nu(n1, n2).unwrap();
        prop_assert!(t.is_flat());
        let back = nu_from_angles(&t).unwrap();
        if n1 > n2 {
            prop_assert_eq!(back, (n1, n2));
        } else {
            prop_assert_eq!(back, (two - n1, two - n2));
        }
    }
}
