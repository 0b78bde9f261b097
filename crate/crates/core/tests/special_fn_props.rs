use std::f64::consts::PI;

use hocs::quadrature::{integrate_1d, oscillation_panel, Domain, QuadSpec};
use hocs::special_fn::*;
use hocs::Complex64 as C64;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 100, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn gamma_recurrence(r in 0.01f64..20.0, th in -1.5f64..1.5) {
        let z = C64::from_polar(r, th);
        prop_assume!(z.re > 0.0);
        let a = gamma(z + 1.0).unwrap();
        let b = z * gamma(z).unwrap();
        prop_assert!((a - b).norm() / a.norm() < 1e-11, "z = {z}: {a} vs {b}");
    }

    #[test]
    fn gamma_reflection(re in -0.49f64..0.49, im in -5.0f64..5.0) {
        let z = C64::new(re, im);
        prop_assume!(z.norm() > 1e-6);
        let v = gamma(z).unwrap() * gamma(1.0 - z).unwrap() * sin_pi(z) / PI;
        prop_assert!((v - 1.0).norm() < 1e-10, "z = {z}: {v}");
    }

    #[test]
    fn khat_is_even(l in -30.0f64..30.0, g in 0.1f64..6.0) {
        let a = dual_kernel_khat(C64::new(l, 0.0), g).unwrap();
        let b = dual_kernel_khat(C64::new(-l, 0.0), g).unwrap();
        prop_assert_eq!(a, b);
        prop_assert_eq!(dual_kernel_khat_re(l, g), dual_kernel_khat_re(-l, g));
    }

    #[test]
    fn kernel_and_measure_positive(x in -8.0f64..8.0, g in 0.1f64..5.0) {
        prop_assume!(x != 0.0);
        prop_assert!(kernel_k(x, g) > 0.0);
        prop_assert!(measure_mu(x, g) > 0.0);
    }

    #[test]
    fn fourier_identity(l in -2.0f64..2.0, gi in 0usize..3) {
        let g = [1.5, 2.0, 3.0][gi];
        let d = Domain::line().with_decay(PI * g).with_panel(oscillation_panel(l));
        let r = integrate_1d(|y| C64::from_polar(kernel_k(y, g), 2.0 * PI * l * y), &d, &QuadSpec::new(1e-13, 1e-12)).unwrap();
        let want = dual_kernel_khat(C64::new(l, 0.0), g).unwrap() / (2.0 * PI * gamma_re(g));
        prop_assert!((r.value - want).norm() < 1e-9, "λ = {l}, g = {g}: {} vs {want}", r.value);
    }
}

#[test]
fn measure_vanishes_at_origin() {
    assert_eq!(measure_mu(0.0, 2.0), 0.0);
}
