//! Mellin-Barnes representation: iterated integrals over the spectral variables.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::{check_pair, cis, PositionPoint, SpectralPoint};
use crate::error::{Error, Result};
use crate::quadrature::{integrate_staged, oscillation_panel, Domain, EvalResult, QuadSpec};
use crate::special_fn::{dual_kernel_khat, dual_kernel_khat_re, dual_measure_muhat_re, norm_const, Coupling};

/// The integrands decay like e^{−2π|γ|} up to polynomial factors.
const DECAY: f64 = 0.75 * 2.0 * PI;

/// Ψ_λ(x) for n ≤ 3 from the Mellin-Barnes representation on the real contour.
///
/// Needs g > 1 and |Im λ_i| < g/2.
pub fn mb_psi(lam: &SpectralPoint, x: &PositionPoint, g: f64, spec: &QuadSpec) -> Result<EvalResult> {
    let n = check_pair(lam, x)?;
    Coupling::new(g)?.above(1.0)?;
    spec.validate()?;
    if let Some(z) = lam.0.iter().find(|z| !(z.im.abs() < g / 2.0)) {
        return Err(Error::Domain(format!("Mellin-Barnes contour needs |Im λ| < g/2, got {z}")));
    }
    let l = &lam.0;
    let xs = &x.0;
    if n == 1 {
        return Ok(EvalResult::exact(cis(l[0], xs[0])));
    }
    let real = lam.is_real();
    let khat = |lam: C64, gam: f64| -> Result<C64> {
        if real {
            Ok(C64::new(dual_kernel_khat_re(lam.re - gam, g), 0.0))
        } else {
            dual_kernel_khat(lam - gam, g)
        }
    };
    let kprod = |gam: f64| -> Result<C64> { l.iter().map(|&li| khat(li, gam)).product() };
    let (rlo, rhi) = (l.iter().map(|z| z.re).fold(f64::MAX, f64::min), l.iter().map(|z| z.re).fold(f64::MIN, f64::max));
    let panel = oscillation_panel(x.spread());
    let outer = Domain::line().with_core(rlo, rhi).with_decay(DECAY).with_panel(panel);
    let re = |v: f64| C64::new(v, 0.0);

    if n == 2 {
        let a = re(xs[0] - xs[1]);
        let r = integrate_staged(1, |_, _| outer.clone(), |_, ys| Ok(cis(a, ys[0]) * kprod(ys[0])?), spec)?;
        return Ok(r.scale(cis(lam.sum(), xs[1]) * norm_const(1, g, true)));
    }

    let a = re(xs[1] - xs[2]);
    let b = re(xs[0] - xs[1]);
    let domain = |lev: usize, ys: &[f64]| match lev {
        0 => outer.clone(),
        1 => outer.clone().with_breaks(vec![ys[0]]),
        _ => {
            let (lo, hi) = if ys[0] < ys[1] { (ys[0], ys[1]) } else { (ys[1], ys[0]) };
            Domain::line().with_core(lo, hi).with_decay(DECAY).with_panel(panel)
        }
    };
    let stage = |lev: usize, ys: &[f64]| -> Result<C64> {
        Ok(match lev {
            0 => cis(a, ys[0]) * kprod(ys[0])?,
            1 => cis(a, ys[1]) * kprod(ys[1])? * dual_measure_muhat_re(ys[0] - ys[1], g),
            _ => cis(b, ys[2]) * (dual_kernel_khat_re(ys[0] - ys[2], g) * dual_kernel_khat_re(ys[1] - ys[2], g)),
        })
    };
    let r = integrate_staged(3, domain, stage, spec)?;
    Ok(r.scale(cis(lam.sum(), xs[2]) * (norm_const(2, g, true) * norm_const(1, g, true))))
}
