use std::f64::consts::PI;

use hocs::quadrature::QuadSpec;
use hocs::wavefunctions::*;
use hocs::Complex64 as C64;
use proptest::prelude::*;

fn sp(v: &[f64]) -> SpectralPoint {
    SpectralPoint::real(v).unwrap()
}

fn pp(v: &[f64]) -> PositionPoint {
    PositionPoint::new(v.to_vec()).unwrap()
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(b.norm()).max(1e-300)
}

fn spec() -> QuadSpec {
    QuadSpec::new(1e-15, 1e-11)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn euler_symmetric_in_lambda_and_x(l1 in -1.0f64..1.0, l2 in -1.0f64..1.0, x1 in -1.0f64..1.0, x2 in -1.0f64..1.0, g in 1.2f64..3.0) {
        let a = euler_psi(&sp(&[l1, l2]), &pp(&[x1, x2]), g, &spec()).unwrap();
        let b = euler_psi(&sp(&[l2, l1]), &pp(&[x1, x2]), g, &spec()).unwrap();
        let c = euler_psi(&sp(&[l1, l2]), &pp(&[x2, x1]), g, &spec()).unwrap();
        let tol = a.abs_err + b.abs_err + 1e-9 * a.value.norm();
        prop_assert!((a.value - b.value).norm() <= tol, "{a:?} {b:?}");
        prop_assert!((a.value - c.value).norm() <= a.abs_err + c.abs_err + 1e-9 * a.value.norm(), "{a:?} {c:?}");
    }

    #[test]
    fn shift_covariance(l1 in -1.0f64..1.0, l2 in -1.0f64..1.0, x1 in -1.0f64..1.0, x2 in -1.0f64..1.0, eta in -2.0f64..2.0) {
        let x = pp(&[x1, x2]);
        let a = euler_psi(&sp(&[l1 + eta, l2 + eta]), &x, 2.0, &spec()).unwrap();
        let b = euler_psi(&sp(&[l1, l2]), &x, 2.0, &spec()).unwrap();
        let want = b.value * C64::from_polar(1.0, 2.0 * PI * eta * x.sum());
        prop_assert!((a.value - want).norm() <= a.abs_err + b.abs_err + 1e-9 * want.norm(), "{a:?} vs {want}");
    }

    #[test]
    fn zero_point_closure_n2(l1 in -2.0f64..2.0, l2 in -2.0f64..2.0) {
        let l = sp(&[l1, l2]);
        let want = psi_zero(&l, 2.0).unwrap();
        let e = euler_psi(&l, &PositionPoint::zero(2), 2.0, &spec()).unwrap();
        let m = mb_psi(&l, &PositionPoint::zero(2), 2.0, &spec()).unwrap();
        prop_assert!((e.value - want).norm() < 1e-8, "{e:?} vs {want}");
        prop_assert!((m.value - want).norm() < 1e-8, "{m:?} vs {want}");
    }

    #[test]
    fn duality_n2(l1 in -1.5f64..1.5, l2 in -1.5f64..1.5, x1 in -1.5f64..1.5, x2 in -1.5f64..1.5, gi in 0usize..3) {
        let g = [1.5, 2.0, 3.0][gi];
        let (l, x) = (sp(&[l1, l2]), pp(&[x1, x2]));
        let e = euler_psi(&l, &x, g, &QuadSpec::new(1e-12, 1e-10)).unwrap();
        let m = mb_psi(&l, &x, g, &QuadSpec::new(1e-12, 1e-10)).unwrap();
        prop_assert!((e.value - m.value).norm() <= (e.abs_err + m.abs_err).max(1e-6), "{e:?} {m:?}");
    }

    #[test]
    fn normalized_function_is_one_at_origin(l1 in -1.5f64..1.5, l2 in -1.5f64..1.5) {
        let opt = EvalOptions::new(spec(), 0);
        let f = ho_f(&sp(&[l1, l2]), &PositionPoint::zero(2), 2.0, Representation::Euler, &opt).unwrap();
        prop_assert!((f.value - 1.0).norm() < 1e-8, "{f:?}");
    }

    #[test]
    fn series_invariant_under_lambda_permutation(a in -1.0f64..1.0, b in -1.0f64..1.0, c in -1.0f64..1.0, gap1 in 0.3f64..1.5, gap2 in 0.3f64..1.5) {
        prop_assume!((a - b).abs() > 0.05 && (b - c).abs() > 0.05 && (a - c).abs() > 0.05);
        let x = pp(&[gap1 + gap2, gap2, 0.0]);
        let r1 = hc_psi_symmetrized(&sp(&[a, b, c]), &x, 2.0, 6).unwrap();
        let r2 = hc_psi_symmetrized(&sp(&[c, a, b]), &x, 2.0, 6).unwrap();
        prop_assert!(close(r1.value, r2.value, 1e-10), "{r1:?} {r2:?}");
    }

    #[test]
    fn coefficient_forms_agree(a in -1.0f64..1.0, b in -1.0f64..1.0, c in -1.0f64..1.0, g in 1.1f64..4.0, k in 0u32..4) {
        prop_assume!((a - b).abs() > 0.05 && (b - c).abs() > 0.05 && (a - c).abs() > 0.05);
        for (n, l) in [(2, sp(&[a, b])), (3, sp(&[a, b, c]))] {
            for m in HCIndexMatrix::shell(n, k) {
                let u = hc_coeff(&m, &l, g).unwrap();
                let v = hc_coeff_what_form(&m, &l, g).unwrap();
                prop_assert!(close(u, v, 1e-10), "{m:?}: {u} vs {v}");
            }
        }
    }

    #[test]
    fn renormalized_variant(l1 in -1.0f64..1.0, l2 in -1.0f64..1.0, x1 in -1.0f64..1.0, x2 in -1.0f64..1.0) {
        prop_assume!((l1 - l2).abs() > 0.05);
        let r = phi_renormalized(&sp(&[l1, l2]), &pp(&[x1, x2]), 2.0, &QuadSpec::rel(1e-9)).unwrap();
        prop_assert!(check_phi_variant(&r, &pp(&[x1, x2]), 2.0) < 1e-14);
    }
}

#[test]
fn zero_point_closure_n3() {
    for l in [[0.5, 0.0, -0.5], [0.8, -0.3, 0.1]] {
        let l = sp(&l);
        let want = psi_zero(&l, 2.0).unwrap();
        let e = euler_psi(&l, &PositionPoint::zero(3), 2.0, &QuadSpec::rel(1e-6)).unwrap();
        assert!(close(e.value, want, 1e-4), "{e:?} vs {want}");
    }
}

#[test]
fn one_dimensional_cases() {
    let (l, x) = (sp(&[0.3]), pp(&[1.2]));
    let want = C64::from_polar(1.0, 2.0 * PI * 0.36);
    let opt = EvalOptions::new(spec(), 10);
    for rep in [Representation::Euler, Representation::Mb, Representation::Series] {
        assert!(close(psi(&l, &x, 2.0, rep, &opt).unwrap().value, want, 1e-15), "{rep:?}");
    }
    assert!(close(psi_asymptotic(&l, &x, 2.0, Chamber::Descending).unwrap(), want, 1e-15));
    assert!(close(ho_f(&l, &x, 2.0, Representation::Euler, &opt).unwrap().value, want, 1e-15));
    let r = phi_renormalized(&l, &x, 2.0, &spec()).unwrap();
    assert!(close(r.phi.value, want, 1e-15));
}

#[test]
fn series_matches_integral_n3() {
    let (l, x) = (sp(&[0.5, 0.1, -0.4]), pp(&[1.3, 0.6, 0.0]));
    let (s, _) = hc_psi_symmetrized_auto(&l, &x, 2.0, 1e-10, 60).unwrap();
    let e = euler_psi(&l, &x, 2.0, &QuadSpec::rel(1e-6)).unwrap();
    assert!((s.value - e.value).norm() <= (1e-4 * e.value.norm()).max(s.abs_err), "{s:?} {e:?}");
}

#[test]
fn normalized_function_n3() {
    let opt = EvalOptions::new(QuadSpec::rel(1e-5), 0);
    let f = ho_f(&sp(&[0.5, 0.0, -0.5]), &PositionPoint::zero(3), 2.0, Representation::Mb, &opt).unwrap();
    assert!((f.value - 1.0).norm() < 1e-4, "{f:?}");
}
