use std::f64::consts::PI;

use hocs::quadrature::{integrate_1d, oscillation_panel, Domain, QuadSpec};
use hocs::special_fn::{dual_kernel_khat_re, gamma_re, kernel_k};
use hocs::Complex64 as C64;
use proptest::prelude::*;

type Integrand = Box<dyn Fn(f64) -> C64>;

fn battery() -> Vec<(String, Integrand, Domain, C64)> {
    let mut out: Vec<(String, Integrand, Domain, C64)> = Vec::new();
    for a in [0.5, 1.0, 3.0, 10.0] {
        out.push((format!("gauss a={a}"), Box::new(move |y| C64::new((-a * y * y).exp(), 0.0)), Domain::line().with_decay(1.0), C64::new((PI / a).sqrt(), 0.0)));
    }
    for g in [1.0, 1.5, 2.0, 3.0, 4.0] {
        let want = gamma_re(g / 2.0).powi(2) / (2.0 * PI * gamma_re(g));
        out.push((format!("sech g={g}"), Box::new(move |y| C64::new(kernel_k(y, g), 0.0)), Domain::line().with_decay(PI * g), C64::new(want, 0.0)));
    }
    for (w, c) in [(1.0, 1.0), (5.0, 1.0), (10.0, 2.0), (3.0, 0.5), (20.0, 3.0)] {
        let d = Domain::line().with_decay(c).with_panel(oscillation_panel(w / (2.0 * PI))).with_breaks(vec![0.0]);
        out.push((format!("damped w={w} c={c}"), Box::new(move |y: f64| C64::from_polar((-c * y.abs()).exp(), w * y)), d, C64::new(2.0 * c / (c * c + w * w), 0.0)));
    }
    for (l, g) in [(0.5, 1.5), (2.0, 1.5), (1.0, 2.0), (4.0, 2.0), (0.3, 3.0), (5.0, 3.0)] {
        let d = Domain::line().with_decay(PI * g).with_panel(oscillation_panel(l));
        let want = dual_kernel_khat_re(l, g) / (2.0 * PI * gamma_re(g));
        out.push((format!("fourier l={l} g={g}"), Box::new(move |y| C64::from_polar(kernel_k(y, g), 2.0 * PI * l * y)), d, C64::new(want, 0.0)));
    }
    out
}

#[test]
fn error_estimates_bound_true_error() {
    let cases = battery();
    assert_eq!(cases.len(), 20);
    let mut covered = 0;
    for spec in [QuadSpec::new(1e-8, 1e-8), QuadSpec::new(1e-12, 1e-12)] {
        for (name, f, d, want) in &cases {
            let r = integrate_1d(f, d, &spec).unwrap();
            let err = (r.value - want).norm();
            if err <= r.abs_err {
                covered += 1;
            }
            assert!(err <= 100.0 * r.abs_err.max(f64::EPSILON * want.norm()), "{name}: true {err:e}, estimated {:e}", r.abs_err);
        }
    }
    assert!(covered as f64 >= 0.95 * 40.0, "{covered}/40 covered");
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn oscillation_robustness(l in -5.0f64..5.0, gi in 0usize..3) {
        let g = [1.5, 2.0, 3.0][gi];
        let d = Domain::line().with_decay(PI * g).with_panel(oscillation_panel(l));
        let r = integrate_1d(|y| C64::from_polar(kernel_k(y, g), 2.0 * PI * l * y), &d, &QuadSpec::new(1e-12, 1e-10)).unwrap();
        let want = dual_kernel_khat_re(l, g) / (2.0 * PI * gamma_re(g));
        prop_assert!((r.value.re - want).abs() < 1e-8 && r.value.im.abs() < 1e-8, "λ = {l}, g = {g}: {} vs {want}", r.value);
    }

    #[test]
    fn deterministic(l in -5.0f64..5.0, g in 1.0f64..3.0) {
        let d = Domain::line().with_decay(PI * g).with_panel(oscillation_panel(l));
        let f = |y: f64| C64::from_polar(kernel_k(y, g), 2.0 * PI * l * y);
        let a = integrate_1d(f, &d, &QuadSpec::rel(1e-9)).unwrap();
        let b = integrate_1d(f, &d, &QuadSpec::rel(1e-9)).unwrap();
        prop_assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        prop_assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
        prop_assert_eq!(a.abs_err.to_bits(), b.abs_err.to_bits());
        prop_assert_eq!(a.n_evals, b.n_evals);
    }
}
