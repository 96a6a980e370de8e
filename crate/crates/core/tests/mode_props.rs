use jcmodes_core::adjoint::{
    build_adjoint, build_f_adjoint, pair, pair_f, pairing_order, verify_adjoint_system,
    verify_adjoint_third_order,
};
use jcmodes_core::modes::{
    branch_roots, build_f_mode, build_mode, eigenvalue, representation_deviation,
    verify_mode_system, verify_third_order,
};
use jcmodes_core::{Branch, Complex64, ModeLabel, ModelParams};
use proptest::prelude::*;

fn branch() -> impl Strategy<Value = Branch> {
    prop::sample::select(Branch::COUPLED.to_vec())
}

/// Values of `a` away from every exceptional point `4a(k+1) = 1` with `k <= 12`.
fn regular_a() -> impl Strategy<Value = f64> {
    (0.02..40.0f64).prop_filter("near exceptional point", |&a| {
        ModelParams::new(a).unwrap().first_exceptional(12).is_none()
            && (0..=12).all(|k| (1.0 - 4.0 * a * (k as f64 + 1.0)).abs() > 1e-3)
    })
}

#[test]
fn zero_branch_matches_series_recursion() {
    // E = sum c_n u^n with (n+1)(n+l/2+1) a c_{n+1} = (n+l/2+1/2)(n+l/2+a/2+w/2+1/2)(n+l/2+a/2-w/2+1/2) c_n
    let a = 5.0;
    let p = ModelParams::new(a).unwrap();
    let mode = build_mode(&p, ModeLabel::new(Branch::Zero, 3)).unwrap();
    assert_eq!(mode.lambda, Complex64::new(-7.0, 0.0));
    let l = -7.0;
    let w = Complex64::new((a - 1.0) * (a - 1.0) + 2.0 * a * l, 0.0).sqrt();
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for n in 0..4 {
        let nf = n as f64;
        let rhs = (nf + l / 2.0 + 0.5)
            * (w / 2.0 + nf + l / 2.0 + a / 2.0 + 0.5)
            * (-w / 2.0 + nf + l / 2.0 + a / 2.0 + 0.5);
        c.push(c[n] * rhs / ((nf + 1.0) * (nf + l / 2.0 + 1.0) * a));
    }
    assert_eq!(c[4], Complex64::new(0.0, 0.0));
    let norm = mode.e.coeff(3) / c[3];
    for (n, cn) in c.iter().take(4).enumerate() {
        let diff = (mode.e.coeff(n) - cn * norm).norm();
        assert!(diff <= 1e-13 * mode.e.coeff(n).norm(), "n {n}: {diff}");
    }
    assert_eq!(mode.e.degree(), Some(3));
}

#[test]
fn perturbed_mode_is_detected() {
    let p = ModelParams::new(5.0).unwrap();
    let mut mode = build_mode(&p, ModeLabel::new(Branch::Plus, 5)).unwrap();
    assert!(verify_mode_system(&mode, &p) <= 1e-10);
    mode.e = &mode.e + &jcmodes_core::PolyU::from_real(&[0.0, 1e-3]);
    assert!(verify_mode_system(&mode, &p) > 1e-4);
}

#[test]
fn structural_zero_beyond_first_subdiagonal() {
    let p = ModelParams::new(5.0).unwrap();
    for k in 0..6 {
        for m in k + 2..9 {
            for b in Branch::COUPLED {
                for r in Branch::COUPLED {
                    let adj = build_adjoint(&p, ModeLabel::new(r, m), 2).unwrap();
                    let mode = build_mode(&p, ModeLabel::new(b, k)).unwrap();
                    assert_eq!(pair(&adj, &mode, &p).unwrap(), Complex64::new(0.0, 0.0));
                }
            }
        }
    }
}

#[test]
fn f_sector_is_exactly_biorthogonal() {
    // at a = 0.05, m = 7 no double c has c * a^7 == 1; one ulp is the floor there
    for (a, tol) in [
        (5.0, 0.0),
        (0.05, f64::EPSILON),
        (0.3, f64::EPSILON),
        (30.0, f64::EPSILON),
    ] {
        let p = ModelParams::new(a).unwrap();
        for m in 0..=20 {
            let adj = build_f_adjoint(&p, m);
            for k in 0..=20 {
                let v = pair_f(&adj, &build_f_mode(k), &p).unwrap();
                let delta = if m == k { 1.0 } else { 0.0 };
                assert!((v - delta).norm() <= tol, "a {a} ({m}, {k}): {v}");
                if m != k {
                    assert_eq!(v, Complex64::new(0.0, 0.0));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn branch_roots_square_back(a in 0.01..50.0f64, k in 0usize..20) {
        let p = ModelParams::new(a).unwrap();
        prop_assume!(p.check_index(k).is_ok());
        let r = branch_roots(&p, k).unwrap();
        let kk = k as f64 + 1.0;
        let w2 = a * a - 4.0 * a * kk + 1.0;
        let wb2 = 1.0 - 4.0 * a * kk;
        prop_assert!((r.w * r.w - w2).norm() <= 1e-13 * w2.abs().max(1.0));
        prop_assert!((r.wbar * r.wbar - wb2).norm() <= 1e-13 * wb2.abs().max(1.0));
        prop_assert!(r.w.re >= 0.0 && r.wbar.re >= 0.0);
    }

    #[test]
    fn modes_solve_the_system(a in regular_a(), b in branch(), k in 0usize..=10) {
        let p = ModelParams::new(a).unwrap();
        let mode = build_mode(&p, ModeLabel::new(b, k)).unwrap();
        prop_assert!(verify_mode_system(&mode, &p) <= 1e-10);
        prop_assert!(verify_third_order(&mode, &p) <= 1e-10);
        prop_assert_eq!(mode.e.degree(), Some(k));
        prop_assert_eq!(mode.h.degree(), Some(k));
        prop_assert_eq!(mode.d.degree(), Some(k + 1));
        prop_assert_eq!(mode.d.coeff(0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn representations_agree(
        a in regular_a(),
        b in branch(),
        k in 0usize..=10,
        points in prop::collection::vec(1e-3..=1.0f64, 20),
    ) {
        let p = ModelParams::new(a).unwrap();
        let mode = build_mode(&p, ModeLabel::new(b, k)).unwrap();
        prop_assert!(representation_deviation(&p, &mode, &points).unwrap() <= 1e-9);
    }

    #[test]
    fn oscillatory_pairs_are_conjugate(a in 0.3..40.0f64, k in 0usize..=10) {
        let p = ModelParams::new(a).unwrap();
        prop_assume!(1.0 - 4.0 * a * (k as f64 + 1.0) < -1e-6);
        let plus = build_mode(&p, ModeLabel::new(Branch::Plus, k)).unwrap();
        let minus = build_mode(&p, ModeLabel::new(Branch::Minus, k)).unwrap();
        prop_assert!(plus.lambda.im > 0.0);
        prop_assert!((plus.lambda.conj() - minus.lambda).norm() <= 1e-14 * plus.lambda.norm());
        for (x, y) in [(&plus.e, &minus.e), (&plus.d, &minus.d), (&plus.h, &minus.h)] {
            for n in 0..=k + 1 {
                prop_assert!((x.coeff(n).conj() - y.coeff(n)).norm() <= 1e-13 * x.max_abs());
            }
        }
    }

    #[test]
    fn eigenvalues_follow_the_branches(a in regular_a(), k in 0usize..=10) {
        let p = ModelParams::new(a).unwrap();
        let l0 = eigenvalue(&p, ModeLabel::new(Branch::Zero, k)).unwrap();
        let lp = eigenvalue(&p, ModeLabel::new(Branch::Plus, k)).unwrap();
        let lm = eigenvalue(&p, ModeLabel::new(Branch::Minus, k)).unwrap();
        prop_assert_eq!(l0, Complex64::new(-2.0 * k as f64 - 1.0, 0.0));
        prop_assert!((lp + lm - l0 * 2.0).norm() <= 1e-12 * l0.norm());
        prop_assert!(lp.re <= 0.0 && lm.re < 0.0);
    }

    #[test]
    fn pairing_matrix_is_identity(
        a in regular_a(),
        r in branch(), m in 0usize..=10,
        s in branch(), k in 0usize..=10,
    ) {
        let p = ModelParams::new(a).unwrap();
        let adj = build_adjoint(&p, ModeLabel::new(r, m), pairing_order(10, m)).unwrap();
        let mode = build_mode(&p, ModeLabel::new(s, k)).unwrap();
        let v = pair(&adj, &mode, &p).unwrap();
        let delta = if r == s && m == k { 1.0 } else { 0.0 };
        prop_assert!((v - delta).norm() <= 1e-9, "{v}");
    }

    #[test]
    fn adjoints_solve_the_system(a in regular_a(), b in branch(), m in 0usize..=8) {
        let p = ModelParams::new(a.min(30.0)).unwrap();
        let adj = build_adjoint(&p, ModeLabel::new(b, m), 10).unwrap();
        prop_assert!(verify_adjoint_system(&adj, &p) <= 1e-10);
        prop_assert!(verify_adjoint_third_order(&adj, &p) <= 1e-10);
    }
}
