//! Differential, difference and Baxter operators applied to numerically evaluated wave functions,
//! reported as eigen-equation residuals.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_staged, oscillation_panel, Domain, QuadSpec};
use crate::special_fn::{
    alpha_n, dual_kernel_khat, dual_kernel_khat_re, dual_measure_muhat_re, kernel_k, measure_mu, norm_const, rgamma,
    weight_w, Coupling,
};
use crate::wavefunctions::{euler_psi, mb_psi, PositionPoint, SpectralPoint};

/// Central finite-difference stencil.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FDStencil {
    pub order: usize,
    pub h: f64,
}

impl Default for FDStencil {
    fn default() -> Self {
        FDStencil { order: 5, h: 1e-3 }
    }
}

impl FDStencil {
    pub fn new(order: usize, h: f64) -> Result<Self> {
        if !(order == 3 || order == 5) || !(h > 0.0 && h.is_finite()) {
            return Err(Error::Domain(format!("stencil needs order 3 or 5 and h > 0, got {order}, {h}")));
        }
        Ok(FDStencil { order, h })
    }

    /// Offsets and weights of d²/dy², without the 1/h² factor.
    fn second(&self) -> &'static [(i32, f64)] {
        match self.order {
            3 => &[(-1, 1.0), (0, -2.0), (1, 1.0)],
            _ => &[(-2, -1.0 / 12.0), (-1, 16.0 / 12.0), (0, -30.0 / 12.0), (1, 16.0 / 12.0), (2, -1.0 / 12.0)],
        }
    }

    /// Offsets and weights of d/dy, without the 1/h factor.
    pub(crate) fn first(&self) -> &'static [(i32, f64)] {
        match self.order {
            3 => &[(-1, -0.5), (1, 0.5)],
            _ => &[(-2, 1.0 / 12.0), (-1, -8.0 / 12.0), (1, 8.0 / 12.0), (2, -1.0 / 12.0)],
        }
    }

    /// Expected error reduction when h halves.
    pub(crate) fn richardson_gain(&self) -> f64 {
        if self.order == 3 {
            4.0
        } else {
            16.0
        }
    }

    fn halved(&self) -> Self {
        FDStencil { h: self.h / 2.0, ..*self }
    }

    pub(crate) fn doubled(&self) -> Self {
        FDStencil { h: self.h * 2.0, ..*self }
    }
}

/// lhs and rhs of an eigen-equation and their relative mismatch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenResidual {
    pub lhs: C64,
    pub rhs: C64,
    pub residual: f64,
}

impl EigenResidual {
    pub fn new(lhs: C64, rhs: C64) -> Self {
        let d = lhs.norm().max(rhs.norm()).max(1e-30);
        EigenResidual { lhs, rhs, residual: (lhs - rhs).norm() / d }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualParams {
    pub lambda: Vec<C64>,
    pub x: Vec<f64>,
    pub g: f64,
}

/// Serializable record of one operator application.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub operator: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_b: Option<C64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_b: Option<f64>,
    pub params: ResidualParams,
    pub lhs: C64,
    pub rhs: C64,
    pub residual: f64,
}

impl ResidualReport {
    pub fn new(operator: &'static str, lam: &SpectralPoint, x: &PositionPoint, g: f64, e: EigenResidual) -> Self {
        ResidualReport {
            operator,
            r: None,
            lambda_b: None,
            x_b: None,
            params: ResidualParams { lambda: lam.0.clone(), x: x.0.clone(), g },
            lhs: e.lhs,
            rhs: e.rhs,
            residual: e.residual,
        }
    }
}

fn require(lam: &SpectralPoint, x: &PositionPoint, max_n: usize) -> Result<usize> {
    if lam.n() != x.n() {
        return Err(Error::Domain(format!("λ has {} entries but x has {}", lam.n(), x.n())));
    }
    if lam.n() > max_n {
        return Err(Error::Domain(format!("operator implemented for n ≤ {max_n}, got {}", lam.n())));
    }
    Ok(lam.n())
}

fn require_real(lam: &SpectralPoint) -> Result<()> {
    if !lam.is_real() {
        return Err(Error::Domain("operator needs real λ".into()));
    }
    Ok(())
}

pub(crate) fn w_prod(x: &[f64], g: f64) -> f64 {
    let mut w = 1.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            w *= weight_w(x[i] - x[j], g);
        }
    }
    w
}

/// Σ_{j≠k} π²g(g−1)/sh²π(x_j − x_k).
pub(crate) fn cs_potential(x: &[f64], g: f64) -> f64 {
    let mut v = 0.0;
    for i in 0..x.len() {
        for j in 0..x.len() {
            if i != j {
                v += PI * PI * g * (g - 1.0) / (PI * (x[i] - x[j])).sinh().powi(2);
            }
        }
    }
    v
}

/// Applies −Σ∂² + V to f at x with the stencil; returns (value, propagated absolute error).
pub(crate) fn apply_laplace_potential<F>(f: &F, x: &[f64], g: f64, st: &FDStencil) -> Result<(C64, f64, C64)>
where
    F: Fn(&[f64]) -> Result<(C64, f64)>,
{
    let (f0, e0) = f(x)?;
    let mut lap = C64::new(0.0, 0.0);
    let mut err = 0.0;
    for j in 0..x.len() {
        for &(k, wgt) in st.second() {
            let (v, e) = if k == 0 {
                (f0, e0)
            } else {
                let mut y = x.to_vec();
                y[j] += k as f64 * st.h;
                f(&y)?
            };
            lap += v * wgt;
            err += wgt.abs() * (e + 50.0 * f64::EPSILON * v.norm());
        }
    }
    let h2 = st.h * st.h;
    Ok((-lap / h2 + f0 * cs_potential(x, g), err / h2, f0))
}

fn cs_residual(lam: &SpectralPoint, x: &PositionPoint, g: f64, st: &FDStencil, spec: &QuadSpec) -> Result<(EigenResidual, f64)> {
    let fd_spec = QuadSpec { abs_tol: spec.abs_tol * st.h * st.h, rel_tol: spec.rel_tol * st.h * st.h, ..*spec };
    let h = |y: &[f64]| -> Result<(C64, f64)> {
        let p = euler_psi(lam, &PositionPoint(y.to_vec()), g, &fd_spec)?;
        let w = w_prod(y, g);
        Ok((p.value * w, p.abs_err * w))
    };
    let (lhs, err, h0) = apply_laplace_potential(&h, &x.0, g, st)?;
    let e: f64 = lam.0.iter().map(|l| (2.0 * PI * l.re).powi(2)).sum();
    let r = EigenResidual::new(lhs, h0 * e);
    let floor = 10.0 * err / lhs.norm().max(r.rhs.norm()).max(1e-30);
    Ok((r, floor))
}

fn check_cs(lam: &SpectralPoint, x: &PositionPoint, g: f64) -> Result<()> {
    let n = require(lam, x, 2)?;
    require_real(lam)?;
    Coupling::new(g)?;
    if n == 2 && x.0[0] == x.0[1] {
        return Err(Error::Domain("the potential is singular at x₁ = x₂".into()));
    }
    Ok(())
}

/// Residual of 𝓗(wΨ) = Σ_j(2πλ_j)²·wΨ with 𝓗 = −Σ∂² + Σ_{j≠k} π²g(g−1)/sh²π(x_j − x_k).
///
/// The quadrature tolerance is tightened by h². Fails with StepTooLarge when doubling h does not
/// grow the residual at the rate the stencil order predicts while the residual is still above the
/// quadrature floor.
pub fn apply_cs_hamiltonian(lam: &SpectralPoint, x: &PositionPoint, g: f64, stencil: &FDStencil, spec: &QuadSpec) -> Result<EigenResidual> {
    check_cs(lam, x, g)?;
    let (fine, floor) = cs_residual(lam, x, g, stencil, spec)?;
    if fine.residual > floor {
        let (coarse, _) = cs_residual(lam, x, g, &stencil.doubled(), spec)?;
        if coarse.residual < 0.5 * stencil.richardson_gain() * fine.residual {
            return Err(Error::StepTooLarge(format!(
                "residual {:.3e} at h = {} vs {:.3e} at 2h",
                fine.residual, stencil.h, coarse.residual
            )));
        }
    }
    Ok(fine)
}

/// Residuals at h and h/2 and their ratio, for Richardson diagnostics.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RichardsonPair {
    pub coarse: EigenResidual,
    pub fine: EigenResidual,
    pub ratio: f64,
    /// Residual level explained by quadrature error at the fine step.
    pub floor: f64,
}

pub fn cs_hamiltonian_richardson(lam: &SpectralPoint, x: &PositionPoint, g: f64, stencil: &FDStencil, spec: &QuadSpec) -> Result<RichardsonPair> {
    check_cs(lam, x, g)?;
    let (coarse, _) = cs_residual(lam, x, g, stencil, spec)?;
    let (fine, floor) = cs_residual(lam, x, g, &stencil.halved(), spec)?;
    Ok(RichardsonPair { coarse, fine, ratio: coarse.residual / fine.residual.max(1e-300), floor })
}

/// All r-subsets of 0..n in lexicographic order.
pub(crate) fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(k + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::new(), &mut out);
    out
}

/// e_r(e^{2πx₁},…,e^{2πxₙ}).
pub fn elementary_exp(r: usize, x: &[f64]) -> f64 {
    subsets(x.len(), r).iter().map(|s| s.iter().map(|&i| (2.0 * PI * x[i]).exp()).product::<f64>()).sum()
}

fn shifted(lam: &SpectralPoint, set: &[usize]) -> SpectralPoint {
    let mut l = lam.clone();
    for &i in set {
        l.0[i] -= C64::new(0.0, 1.0);
    }
    l
}

fn check_difference(r: usize, lam: &SpectralPoint, x: &PositionPoint, g: f64) -> Result<usize> {
    let n = require(lam, x, 2)?;
    require_real(lam)?;
    Coupling::new(g)?.above(1.1)?;
    lam.require_distinct()?;
    if r > n {
        return Err(Error::Domain(format!("r = {r} exceeds n = {n}")));
    }
    Ok(n)
}

/// Σ_{|I|=r} ∏_{i∈I, j∉I} (λ_i − λ_j − ic)/(λ_i − λ_j) f(λ − i𝟏_I).
fn difference_sum<F>(r: usize, lam: &SpectralPoint, c: C64, f: F) -> Result<C64>
where
    F: Fn(&SpectralPoint) -> Result<C64>,
{
    let n = lam.n();
    let mut acc = C64::new(0.0, 0.0);
    for set in subsets(n, r) {
        let mut coef = C64::new(1.0, 0.0);
        for &i in &set {
            for j in (0..n).filter(|j| !set.contains(j)) {
                let d = lam.0[i] - lam.0[j];
                coef *= (d - C64::i() * c) / d;
            }
        }
        acc += coef * f(&shifted(lam, &set))?;
    }
    Ok(acc)
}

/// Residual of M̂_r Ψ = e_r(e^{2πx})Ψ for the rational Macdonald operator acting on λ.
pub fn apply_macdonald_rational(r: usize, lam: &SpectralPoint, x: &PositionPoint, g: f64, spec: &QuadSpec) -> Result<EigenResidual> {
    let n = check_difference(r, lam, x, g)?;
    let psi = |l: &SpectralPoint| Ok(euler_psi(l, x, g, spec)?.value);
    let sign = if (r * (n - 1)) % 2 == 1 { -1.0 } else { 1.0 };
    let lhs = difference_sum(r, lam, C64::new(1.0 - g, 0.0), psi)? * sign;
    let rhs = psi(lam)? * elementary_exp(r, &x.0);
    Ok(EigenResidual::new(lhs, rhs))
}

/// Residual of Ĥ_r F = e_r(e^{2πx})F for the Heckman-Opdam function F.
pub fn apply_dual_difference_hr(r: usize, lam: &SpectralPoint, x: &PositionPoint, g: f64, spec: &QuadSpec) -> Result<EigenResidual> {
    let n = check_difference(r, lam, x, g)?;
    let a = alpha_n(n, g);
    let f = |l: &SpectralPoint| -> Result<C64> {
        let mut norm = C64::new(a, 0.0);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    norm *= rgamma(C64::i() * (l.0[i] - l.0[j]) + g);
                }
            }
        }
        Ok(norm * euler_psi(l, x, g, spec)?.value)
    };
    let lhs = difference_sum(r, lam, C64::new(g, 0.0), f)?;
    let rhs = f(lam)? * elementary_exp(r, &x.0);
    Ok(EigenResidual::new(lhs, rhs))
}

const DECAY_SAFETY: f64 = 0.9;

/// Residual of Q_n(λ_B)Ψ_λ = ∏_j K̂(λ_B − λ_j)Ψ_λ.
pub fn apply_baxter(lam_b: C64, lam: &SpectralPoint, x: &PositionPoint, g: f64, spec: &QuadSpec) -> Result<EigenResidual> {
    let n = require(lam, x, 2)?;
    require_real(lam)?;
    Coupling::new(g)?;
    if !(lam_b.im.abs() < g / 2.0) {
        return Err(Error::Domain(format!("Baxter operator needs |Im λ_B| < g/2, got {lam_b}")));
    }
    let mut eig = C64::new(1.0, 0.0);
    for &l in &lam.0 {
        eig *= dual_kernel_khat(lam_b - l, g)?;
    }
    let rhs = eig * euler_psi(lam, x, g, spec)?.value;
    let cis = |a: C64, y: f64| (C64::i() * (2.0 * PI * y) * a).exp();
    let xs = &x.0;
    let l: Vec<f64> = lam.0.iter().map(|z| z.re).collect();
    let kx = |y: f64| xs.iter().map(|&xi| kernel_k(xi - y, g)).product::<f64>();
    let (xlo, xhi) = (xs.iter().copied().fold(f64::MAX, f64::min), xs.iter().copied().fold(f64::MIN, f64::max));
    let outer_decay = DECAY_SAFETY * PI * (g - 2.0 * lam_b.im.abs());
    let freq = lam_b.re.abs() + l.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let outer = Domain::line().with_core(xlo, xhi).with_decay(outer_decay).with_panel(oscillation_panel(freq));

    let lhs = if n == 1 {
        let a = C64::new(l[0], 0.0) - lam_b;
        let r = integrate_staged(1, |_, _| outer.clone(), |_, ys| Ok(cis(a, ys[0]) * kx(ys[0])), spec)?;
        r.value * cis(lam_b, xs[0]) * norm_const(1, g, false)
    } else {
        let a = C64::new(l[1], 0.0) - lam_b;
        let b = l[0] - l[1];
        let inner_panel = oscillation_panel(b);
        let domain = |lev: usize, ys: &[f64]| match lev {
            0 => outer.clone(),
            1 => outer.clone().with_breaks(vec![ys[0]]),
            _ => {
                let (lo, hi) = if ys[0] < ys[1] { (ys[0], ys[1]) } else { (ys[1], ys[0]) };
                Domain::line().with_core(lo, hi).with_decay(DECAY_SAFETY * 2.0 * PI * g).with_panel(inner_panel)
            }
        };
        let stage = |lev: usize, ys: &[f64]| -> Result<C64> {
            Ok(match lev {
                0 => cis(a, ys[0]) * kx(ys[0]),
                1 => cis(a, ys[1]) * (kx(ys[1]) * measure_mu(ys[0] - ys[1], g)),
                _ => C64::from_polar(kernel_k(ys[0] - ys[2], g) * kernel_k(ys[1] - ys[2], g), 2.0 * PI * b * ys[2]),
            })
        };
        let r = integrate_staged(3, domain, stage, spec)?;
        r.value * cis(lam_b, xs[0] + xs[1]) * (norm_const(2, g, false) * norm_const(1, g, false))
    };
    Ok(EigenResidual::new(lhs, rhs))
}

/// Residual of Q̂_n(x_B)Ψ̂ = ∏_j K(x_B − x_j)Ψ̂, with Q̂ acting on the spectral variables.
pub fn apply_dual_baxter(x_b: f64, lam: &SpectralPoint, x: &PositionPoint, g: f64, spec: &QuadSpec) -> Result<EigenResidual> {
    let n = require(lam, x, 2)?;
    require_real(lam)?;
    Coupling::new(g)?.above(1.0)?;
    let eig: f64 = x.0.iter().map(|&xi| kernel_k(x_b - xi, g)).product();
    let rhs = eig * mb_psi(lam, x, g, spec)?.value;
    let l: Vec<f64> = lam.0.iter().map(|z| z.re).collect();
    let xs = &x.0;
    let cis = |a: f64, y: f64| C64::from_polar(1.0, 2.0 * PI * a * y);
    let kl = |gam: f64| l.iter().map(|&li| dual_kernel_khat_re(li - gam, g)).product::<f64>();
    let (llo, lhi) = (l.iter().copied().fold(f64::MAX, f64::min), l.iter().copied().fold(f64::MIN, f64::max));
    let freq = (x_b.abs() + xs.iter().map(|v| v.abs()).fold(0.0, f64::max)).max(1e-3);
    let outer = Domain::line().with_core(llo, lhi).with_decay(0.75 * PI).with_panel(oscillation_panel(freq));

    let lhs = if n == 1 {
        let r = integrate_staged(1, |_, _| outer.clone(), |_, ys| Ok(cis(xs[0] - x_b, ys[0]) * kl(ys[0])), spec)?;
        r.value * cis(x_b, l[0]) * norm_const(1, g, true)
    } else {
        let a = xs[1] - x_b;
        let b = xs[0] - xs[1];
        let inner_panel = oscillation_panel(b);
        let domain = |lev: usize, ys: &[f64]| match lev {
            0 => outer.clone(),
            1 => outer.clone().with_breaks(vec![ys[0]]),
            _ => {
                let (lo, hi) = if ys[0] < ys[1] { (ys[0], ys[1]) } else { (ys[1], ys[0]) };
                Domain::line().with_core(lo, hi).with_decay(0.75 * 2.0 * PI).with_panel(inner_panel)
            }
        };
        let stage = |lev: usize, ys: &[f64]| -> Result<C64> {
            Ok(match lev {
                0 => cis(a, ys[0]) * kl(ys[0]),
                1 => cis(a, ys[1]) * (kl(ys[1]) * dual_measure_muhat_re(ys[0] - ys[1], g)),
                _ => cis(b, ys[2]) * (dual_kernel_khat_re(ys[0] - ys[2], g) * dual_kernel_khat_re(ys[1] - ys[2], g)),
            })
        };
        let r = integrate_staged(3, domain, stage, spec)?;
        r.value * cis(x_b, l[0] + l[1]) * (norm_const(2, g, true) * norm_const(1, g, true))
    };
    Ok(EigenResidual::new(lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(v: &[f64]) -> SpectralPoint {
        SpectralPoint::real(v).unwrap()
    }

    fn pp(v: &[f64]) -> PositionPoint {
        PositionPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hamiltonian_one_particle() {
        let r = apply_cs_hamiltonian(&sp(&[0.7]), &pp(&[0.3]), 2.0, &FDStencil::default(), &QuadSpec::rel(1e-8)).unwrap();
        assert!(r.residual < 1e-8, "{r:?}");
    }

    #[test]
    fn hamiltonian_two_particles() {
        let r = apply_cs_hamiltonian(&sp(&[0.5, -0.3]), &pp(&[0.8, 0.0]), 2.0, &FDStencil::default(), &QuadSpec::rel(1e-8)).unwrap();
        assert!(r.residual < 1e-4, "{r:?}");
    }

    #[test]
    fn potential_is_positive_for_repulsive_coupling() {
        let v = cs_potential(&[0.5, 0.0], 2.0);
        assert!((v - 2.0 * PI * PI * 2.0 / (PI / 2.0).sinh().powi(2)).abs() < 1e-12 && v > 0.0);
    }

    #[test]
    fn richardson_ratio() {
        let st = FDStencil::new(5, 0.04).unwrap();
        let p = cs_hamiltonian_richardson(&sp(&[0.5, -0.3]), &pp(&[0.8, 0.0]), 2.0, &st, &QuadSpec::rel(1e-10)).unwrap();
        assert!(p.ratio >= 8.0, "{p:?}");
    }

    #[test]
    fn macdonald_examples() {
        let spec = QuadSpec::rel(1e-9);
        let r = apply_macdonald_rational(1, &sp(&[0.4]), &pp(&[0.3]), 2.0, &spec).unwrap();
        assert!(r.residual < 1e-9, "{r:?}");
        let r = apply_macdonald_rational(1, &sp(&[0.4, -0.4]), &pp(&[0.6, 0.0]), 2.0, &spec).unwrap();
        assert!(r.residual < 1e-4, "{r:?}");
        let r = apply_macdonald_rational(2, &sp(&[0.4, -0.4]), &pp(&[0.6, 0.0]), 2.0, &spec).unwrap();
        assert!(r.residual < 1e-5, "{r:?}");
        assert!(apply_macdonald_rational(1, &sp(&[0.4, -0.4]), &pp(&[0.6, 0.0]), 1.05, &spec).is_err());
    }

    #[test]
    fn dual_difference_matches_macdonald() {
        let spec = QuadSpec::rel(1e-9);
        let (l, x) = (sp(&[0.4, -0.4]), pp(&[0.6, 0.0]));
        let m = apply_macdonald_rational(1, &l, &x, 2.0, &spec).unwrap();
        let h = apply_dual_difference_hr(1, &l, &x, 2.0, &spec).unwrap();
        assert!(h.residual < 1e-4, "{h:?}");
        let q = (h.residual.max(1e-16) / m.residual.max(1e-16)).max(m.residual.max(1e-16) / h.residual.max(1e-16));
        assert!(q <= 2.0 || h.residual.max(m.residual) < 1e-12, "{m:?} {h:?}");
        let h2 = apply_dual_difference_hr(2, &l, &x, 2.0, &spec).unwrap();
        assert!(h2.residual < 1e-4, "{h2:?}");
    }

    #[test]
    fn baxter_examples() {
        let spec = QuadSpec::rel(1e-10);
        let r = apply_baxter(C64::new(0.4, 0.0), &sp(&[0.4]), &pp(&[0.3]), 2.0, &spec).unwrap();
        assert!(r.residual < 1e-8 && (r.lhs / C64::from_polar(1.0, 2.0 * PI * 0.12) - 1.0).norm() < 1e-8, "{r:?}");
        let r = apply_baxter(C64::new(0.1, 0.2), &sp(&[0.4]), &pp(&[0.3]), 2.0, &spec).unwrap();
        assert!(r.residual < 1e-8, "{r:?}");
        let r = apply_baxter(C64::new(0.1, 0.0), &sp(&[0.3, -0.3]), &pp(&[0.5, 0.0]), 2.0, &QuadSpec::rel(1e-6)).unwrap();
        assert!(r.residual < 1e-4, "{r:?}");
    }

    #[test]
    fn dual_baxter_examples() {
        let spec = QuadSpec::rel(1e-10);
        let r = apply_dual_baxter(0.3, &sp(&[0.4]), &pp(&[0.3]), 2.0, &spec).unwrap();
        assert!(r.residual < 1e-8 && (r.lhs / r.rhs - 1.0).norm() < 1e-8, "{r:?}");
        assert!((r.rhs / C64::from_polar(0.25, 2.0 * PI * 0.12) - 1.0).norm() < 1e-12);
        let r = apply_dual_baxter(0.2, &sp(&[0.5, -0.5]), &pp(&[0.4, 0.0]), 2.0, &QuadSpec::rel(1e-6)).unwrap();
        assert!(r.residual < 1e-4, "{r:?}");
    }

    #[test]
    fn elementary_symmetric() {
        let x = [0.1, -0.2];
        let (a, b) = ((2.0 * PI * 0.1).exp(), (-2.0 * PI * 0.2).exp());
        assert!((elementary_exp(1, &x) - (a + b)).abs() < 1e-14);
        assert!((elementary_exp(2, &x) - a * b).abs() < 1e-14);
        assert_eq!(elementary_exp(0, &x), 1.0);
    }
}
