//! Euler integral representation: iterated integrals over the position variables.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::{check_pair, cis, PositionPoint, SpectralPoint};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_staged, oscillation_panel, Domain, EvalResult, QuadSpec};
use crate::special_fn::{kernel_k, measure_mu, norm_const, Coupling};

/// Fraction of the asymptotic decay rate used to place the truncation radius.
const DECAY_SAFETY: f64 = 0.9;

/// Ψ_λ(x) for n ≤ 3 from the Euler representation.
///
/// Needs the spread of Im λ_i to stay below g, so that every level decays.
pub fn euler_psi(lam: &SpectralPoint, x: &PositionPoint, g: f64, spec: &QuadSpec) -> Result<EvalResult> {
    let n = check_pair(lam, x)?;
    Coupling::new(g)?;
    spec.validate()?;
    let spread = lam.im_spread();
    if !(spread < g) {
        return Err(Error::Domain(format!("Euler representation needs max Im λ − min Im λ < g, got {spread} with g = {g}")));
    }
    let l = &lam.0;
    if n == 1 {
        return Ok(EvalResult::exact(cis(l[0], x.0[0])));
    }
    let decay = DECAY_SAFETY * 2.0 * PI * (g - spread);
    let panel = oscillation_panel(lam.re_spread());
    let (xlo, xhi) = x.range();
    let outer = Domain::line().with_core(xlo, xhi).with_decay(decay).with_panel(panel);
    let xs = &x.0;
    let kprod = |y: f64| xs.iter().map(|&xi| kernel_k(xi - y, g)).product::<f64>();

    if n == 2 {
        let a = l[0] - l[1];
        let r = integrate_staged(1, |_, _| outer.clone(), |_, ys| Ok(cis(a, ys[0]) * kprod(ys[0])), spec)?;
        return Ok(r.scale(cis(l[1], x.sum()) * norm_const(1, g, false)));
    }

    let a = l[1] - l[2];
    let b = l[0] - l[1];
    let domain = |lev: usize, ys: &[f64]| match lev {
        0 => outer.clone(),
        1 => outer.clone().with_breaks(vec![ys[0]]),
        _ => {
            let (lo, hi) = if ys[0] < ys[1] { (ys[0], ys[1]) } else { (ys[1], ys[0]) };
            Domain::line().with_core(lo, hi).with_decay(decay).with_panel(panel)
        }
    };
    let stage = |lev: usize, ys: &[f64]| -> Result<C64> {
        Ok(match lev {
            0 => cis(a, ys[0]) * kprod(ys[0]),
            1 => cis(a, ys[1]) * (kprod(ys[1]) * measure_mu(ys[0] - ys[1], g)),
            _ => cis(b, ys[2]) * (kernel_k(ys[0] - ys[2], g) * kernel_k(ys[1] - ys[2], g)),
        })
    };
    let r = integrate_staged(3, domain, stage, spec)?;
    Ok(r.scale(cis(l[2], x.sum()) * (norm_const(2, g, false) * norm_const(1, g, false))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_reference_value() {
        let l = SpectralPoint::real(&[0.5, -0.5]).unwrap();
        let x = PositionPoint::new(vec![1.0, 0.0]).unwrap();
        let r = euler_psi(&l, &x, 2.0, &QuadSpec::new(1e-16, 1e-12)).unwrap();
        assert!((r.value.re - 0.001_019_802_652_781_997_4).abs() < 1e-14, "{r:?}");
        assert!(r.value.im.abs() < 1e-14);
    }

    #[test]
    fn n2_zero_point() {
        let l = SpectralPoint::real(&[0.4, -0.1]).unwrap();
        let r = euler_psi(&l, &PositionPoint::zero(2), 2.0, &QuadSpec::new(1e-14, 1e-12)).unwrap();
        assert!((r.value.re - 0.142_201_968_818_928_7).abs() < 1e-11, "{r:?}");
    }

    #[test]
    fn n3_zero_point() {
        let l = SpectralPoint::real(&[0.5, 0.0, -0.5]).unwrap();
        let r = euler_psi(&l, &PositionPoint::zero(3), 2.0, &QuadSpec::new(1e-12, 1e-6)).unwrap();
        let want = super::super::psi_zero(&l, 2.0).unwrap();
        assert!((r.value - want).norm() < 1e-5 * want.norm(), "{r:?} vs {want}");
    }

    #[test]
    fn spread_precondition() {
        let l = SpectralPoint::new(vec![C64::new(0.0, 1.5), C64::new(0.0, -1.0)]).unwrap();
        assert!(matches!(euler_psi(&l, &PositionPoint::zero(2), 2.0, &QuadSpec::rel(1e-6)), Err(Error::Domain(_))));
    }
}
