//! Numerical and exact checks of integral and combinatorial identities.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::operators::{apply_laplace_potential, subsets, w_prod, FDStencil};
use crate::quadrature::{integrate_staged, oscillation_panel, Domain, QuadSpec};
use crate::special_fn::{
    dual_kernel_khat_re, dual_measure_muhat_re, factorial, gamma, kernel_k, measure_mu, rgamma, Coupling,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCase {
    pub inputs: Value,
    pub lhs: C64,
    pub rhs: C64,
    pub abs_diff: f64,
    pub rel_diff: f64,
}

impl IdentityCase {
    pub fn new(inputs: Value, lhs: C64, rhs: C64) -> Self {
        let abs_diff = (lhs - rhs).norm();
        let rel_diff = abs_diff / lhs.norm().max(rhs.norm()).max(1e-300);
        IdentityCase { inputs, lhs, rhs, abs_diff, rel_diff }
    }
}

/// Outcome of one identity check. `pass` holds iff every case has rel_diff ≤ tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub cases: Vec<IdentityCase>,
    pub pass: bool,
    pub tolerance: f64,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, cases: Vec<IdentityCase>, tolerance: f64) -> Self {
        let pass = cases.iter().all(|c| c.rel_diff <= tolerance);
        IdentityReport { name: name.into(), cases, pass, tolerance }
    }

    pub fn max_rel_diff(&self) -> f64 {
        self.cases.iter().map(|c| c.rel_diff).fold(0.0, f64::max)
    }

    /// Concatenates reports under a new name. Passes iff every part passed; the recorded
    /// tolerance is the loosest one.
    pub fn merge(name: impl Into<String>, parts: Vec<IdentityReport>) -> Self {
        let pass = parts.iter().all(|p| p.pass);
        let tolerance = parts.iter().map(|p| p.tolerance).fold(0.0, f64::max);
        let cases = parts.into_iter().flat_map(|p| p.cases).collect();
        IdentityReport { name: name.into(), cases, pass, tolerance }
    }
}

fn c(z: C64) -> Value {
    json!([z.re, z.im])
}

fn cs(v: &[C64]) -> Value {
    Value::Array(v.iter().map(|&z| c(z)).collect())
}

fn separated(alpha: &[C64], beta: &[C64]) -> Result<()> {
    if alpha.iter().any(|a| !(a.re > 0.0)) || beta.iter().any(|b| !(b.re < 0.0)) {
        return Err(Error::Domain("contour separation needs Re α > 0 > Re β".into()));
    }
    Ok(())
}

/// ∏_k Γ(α_k − iγ) Γ(iγ − β_k).
fn barnes_factor(alpha: &[C64], beta: &[C64], gam: f64) -> Result<C64> {
    let ig = C64::new(0.0, gam);
    let mut p = C64::new(1.0, 0.0);
    for (&a, &b) in alpha.iter().zip(beta) {
        p *= gamma(a - ig)? * gamma(ig - b)?;
    }
    Ok(p)
}

/// n! ∏_{j,k} Γ(α_j − β_k) / Γ(Σ(α_j − β_j)).
fn gustafson_rhs(n: usize, alpha: &[C64], beta: &[C64]) -> Result<C64> {
    let mut p = C64::new(factorial(n), 0.0);
    for &a in alpha {
        for &b in beta {
            p *= gamma(a - b)?;
        }
    }
    let s: C64 = alpha.iter().zip(beta).map(|(a, b)| a - b).sum();
    Ok(p * rgamma(s))
}

fn contour_domain(alpha: &[C64], beta: &[C64]) -> Domain {
    let ims = alpha.iter().chain(beta).map(|z| z.im);
    let lo = ims.clone().fold(f64::MAX, f64::min);
    let hi = ims.fold(f64::MIN, f64::max);
    Domain::line().with_core(lo, hi).with_decay(0.75 * 2.0 * PI).with_panel(oscillation_panel(0.0))
}

/// Barnes' first lemma: ∫∏_{k=1}^2 Γ(α_k − iγ)Γ(iγ − β_k) dγ/2π = ∏Γ(α_i − β_k)/Γ(Σα − Σβ).
pub fn barnes_check(a1: C64, a2: C64, b1: C64, b2: C64, spec: &QuadSpec) -> Result<IdentityReport> {
    let r = gustafson_check(1, &[a1, a2], &[b1, b2], spec)?;
    Ok(IdentityReport { name: "barnes".into(), ..r })
}

/// A-type Gustafson integral over R^n for n ≤ 2, with n + 1 parameters α and β.
pub fn gustafson_check(n: usize, alpha: &[C64], beta: &[C64], spec: &QuadSpec) -> Result<IdentityReport> {
    if !(n == 1 || n == 2) {
        return Err(Error::Domain(format!("Gustafson check implemented for n ∈ {{1, 2}}, got {n}")));
    }
    if alpha.len() != n + 1 || beta.len() != n + 1 {
        return Err(Error::Domain(format!("need {} α and β parameters", n + 1)));
    }
    separated(alpha, beta)?;
    let rhs = gustafson_rhs(n, alpha, beta)?;
    let dom = contour_domain(alpha, beta);
    let lhs = if n == 1 {
        integrate_staged(1, |_, _| dom.clone(), |_, ys| barnes_factor(alpha, beta, ys[0]), spec)?.value / (2.0 * PI)
    } else {
        let stage = |lev: usize, ys: &[f64]| -> Result<C64> {
            let f = barnes_factor(alpha, beta, ys[lev])?;
            if lev == 0 {
                return Ok(f);
            }
            let d = C64::new(0.0, ys[1] - ys[0]);
            Ok(f * rgamma(d) * rgamma(-d))
        };
        let domain = |lev: usize, ys: &[f64]| if lev == 0 { dom.clone() } else { dom.clone().with_breaks(vec![ys[0]]) };
        integrate_staged(2, domain, stage, spec)?.value / (4.0 * PI * PI)
    };
    let tol = if n == 1 { 1e-8 } else { 1e-5 };
    let name = if n == 1 { "gustafson-1" } else { "gustafson-2" };
    let case = IdentityCase::new(json!({"n": n, "alpha": cs(alpha), "beta": cs(beta)}), lhs, rhs);
    Ok(IdentityReport::new(name, vec![case], tol))
}

/// α_k = iλ_k + g/2, β_k = iλ_k − g/2.
pub fn g_specialization(lam: &[f64], g: f64) -> (Vec<C64>, Vec<C64>) {
    let a = lam.iter().map(|&l| C64::new(g / 2.0, l)).collect();
    let b = lam.iter().map(|&l| C64::new(-g / 2.0, l)).collect();
    (a, b)
}

/// Γ(g)^{n+1} ∏_{j≠k} Γ(g + iλ_jk) / Γ((n+1)g) for λ of length n + 1.
pub fn recursion_factor(lam: &[f64], g: f64) -> Result<C64> {
    let m = lam.len();
    let mut p = gamma(C64::new(g, 0.0))?.powi(m as i32) * rgamma(C64::new(m as f64 * g, 0.0));
    for j in 0..m {
        for k in 0..m {
            if j != k {
                p *= gamma(C64::new(g, lam[j] - lam[k]))?;
            }
        }
    }
    Ok(p)
}

fn check_generic(v: C64, what: &str) -> Result<C64> {
    if v.norm() < 1e-9 {
        return Err(Error::DegenerateInput(format!("vanishing denominator {what} = {v}")));
    }
    Ok(v)
}

/// Σ_{|I|=r} ∏_{i∈I} [∏_{j∉I} (u_i − u_j − s)/(u_i − u_j) ∏_a (u_i − v_a + s)/(u_i − v_a)].
fn kernel_side(u: &[C64], v: &[C64], r: usize, s: C64) -> Result<C64> {
    let n = u.len();
    let mut acc = C64::new(0.0, 0.0);
    for set in subsets(n, r) {
        let mut p = C64::new(1.0, 0.0);
        for &i in &set {
            for j in (0..n).filter(|j| !set.contains(j)) {
                let d = check_generic(u[i] - u[j], "u_i − u_j")?;
                p *= (d - s) / d;
            }
            for &va in v {
                let d = check_generic(u[i] - va, "u_i − v_a")?;
                p *= (d + s) / d;
            }
        }
        acc += p;
    }
    Ok(acc)
}

/// Rational kernel-function identity for r-subsets, evaluated as exact finite sums.
pub fn kernel_identity_check(n: usize, r: usize, z: &[C64], y: &[C64], alpha: C64) -> Result<IdentityReport> {
    if n > 4 || z.len() != n || y.len() != n || r > n {
        return Err(Error::Domain(format!("kernel identity needs n ≤ 4, |z| = |y| = n, r ≤ n; got n={n}, r={r}")));
    }
    let lhs = kernel_side(z, y, r, alpha)?;
    let rhs = kernel_side(y, z, r, -alpha)?;
    let case = IdentityCase::new(json!({"n": n, "r": r, "z": cs(z), "y": cs(y), "alpha": c(alpha)}), lhs, rhs);
    Ok(IdentityReport::new("kernel-identity", vec![case], 1e-10))
}

/// Weak compositions of `k` into `n` parts in lexicographic order.
pub fn compositions(k: usize, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, n - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// (a)_m / (b)_m.
fn poch_ratio(a: C64, b: C64, m: usize) -> Result<C64> {
    let mut p = C64::new(1.0, 0.0);
    for k in 0..m {
        p *= (a + k as f64) / check_generic(b + k as f64, "Pochhammer factor")?;
    }
    Ok(p)
}

/// Rational hypergeometric identity summed over compositions |k| = K.
pub fn rational_hypergeom_check(n: usize, kk: usize, x: &[C64], y: &[C64], alpha: C64) -> Result<IdentityReport> {
    if n > 3 || kk > 4 || x.len() != n || y.len() != n {
        return Err(Error::Domain(format!("hypergeometric identity needs n ≤ 3, K ≤ 4, |x| = |y| = n; got n={n}, K={kk}")));
    }
    let mut lhs = C64::new(0.0, 0.0);
    let mut rhs = C64::new(0.0, 0.0);
    for k in compositions(kk, n) {
        let mut l = C64::new(1.0, 0.0);
        let mut r = C64::new(1.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let kj = k[j] as f64;
                l *= poch_ratio(x[i] - x[j] - kj - alpha, x[i] - x[j] - kj, k[i])?;
                let ki = k[i] as f64;
                r *= poch_ratio(y[i] - y[j] - ki - alpha, y[i] - y[j] - ki, k[j])?;
            }
        }
        for j in 0..n {
            for a in 0..n {
                l *= poch_ratio(x[j] - y[a] + alpha, x[j] - y[a], k[j])?;
                r *= poch_ratio(x[j] - y[a] + alpha, x[j] - y[a], k[a])?;
            }
        }
        lhs += l;
        rhs += r;
    }
    let case = IdentityCase::new(json!({"n": n, "K": kk, "x": cs(x), "y": cs(y), "alpha": c(alpha)}), lhs, rhs);
    Ok(IdentityReport::new("hypergeom-identity", vec![case], 1e-10))
}

#[derive(Clone, Copy)]
enum Flavor {
    Hyperbolic,
    Rational,
}

/// Q_n(z; λ) = ∫ e^{2πiλΣy} ∏_a ∏_i K(z_a − y_i) μ(y) dy, or its rational analogue with K̂ and μ̂.
fn q_integral(z: &[f64], lam: C64, g: f64, flavor: Flavor, spec: &QuadSpec) -> Result<C64> {
    let n = z.len() / 2;
    type Weight = fn(f64, f64) -> f64;
    let (kern, meas, decay): (Weight, Weight, f64) = match flavor {
        Flavor::Hyperbolic => (kernel_k, measure_mu, 0.9 * 2.0 * PI * (g - lam.im.abs())),
        Flavor::Rational => (dual_kernel_khat_re, dual_measure_muhat_re, 0.75 * 2.0 * PI * (1.0 - lam.im.abs())),
    };
    let kz = |y: f64| z.iter().map(|&za| kern(za - y, g)).product::<f64>();
    let lo = z.iter().copied().fold(f64::MAX, f64::min);
    let hi = z.iter().copied().fold(f64::MIN, f64::max);
    let dom = Domain::line().with_core(lo, hi).with_decay(decay).with_panel(oscillation_panel(lam.re.abs()));
    let cis = |y: f64| (C64::i() * (2.0 * PI * y) * lam).exp();
    let domain = |lev: usize, ys: &[f64]| if lev == 0 { dom.clone() } else { dom.clone().with_breaks(vec![ys[0]]) };
    let stage = |lev: usize, ys: &[f64]| -> Result<C64> {
        let y = ys[lev];
        let m = if lev == 0 { 1.0 } else { meas(ys[0] - y, g) };
        Ok(cis(y) * (kz(y) * m))
    };
    Ok(integrate_staged(n, domain, stage, spec)?.value)
}

/// Q_n(z; λ) = e^{2πiλΣz} Q_n(z; −λ) by quadrature, together with its rational analogue when |Im λ| < 1.
pub fn baxter_commutativity_check(n: usize, z: &[f64], lam: C64, g: f64, spec: &QuadSpec) -> Result<IdentityReport> {
    Coupling::new(g)?;
    if !(n == 1 || n == 2) || z.len() != 2 * n {
        return Err(Error::Domain(format!("commutativity check needs n ∈ {{1, 2}} and 2n points, got n={n}, {}", z.len())));
    }
    if !(lam.im.abs() < g) {
        return Err(Error::Domain(format!("commutativity check needs |Im λ| < g, got {lam}")));
    }
    let zs: f64 = z.iter().sum();
    let phase = (C64::i() * (2.0 * PI * zs) * lam).exp();
    let mut cases = Vec::new();
    let mut flavors = vec![("hyperbolic", Flavor::Hyperbolic)];
    if lam.im.abs() < 1.0 {
        flavors.push(("rational", Flavor::Rational));
    }
    for (label, fl) in flavors {
        let lhs = q_integral(z, lam, g, fl, spec)?;
        let rhs = phase * q_integral(z, -lam, g, fl, spec)?;
        cases.push(IdentityCase::new(json!({"variant": label, "n": n, "z": z, "lambda": c(lam), "g": g}), lhs, rhs));
    }
    let tol = if n == 1 { 1e-7 } else { 1e-4 };
    Ok(IdentityReport::new(format!("commutativity-{n}"), cases, tol))
}

fn kernel_xy(x: &[f64], y: &[f64], g: f64) -> f64 {
    x.iter().flat_map(|&xi| y.iter().map(move |&ya| kernel_k(xi - ya, g))).product()
}

/// H_k(x)K(x, y) = H_k(−y)K(x, y) for n = 2 by finite differences. k = 1 is total momentum,
/// k = 2 uses the full Hamiltonian conjugated by w.
pub fn kernel_function_identity_check(k: usize, x: &[f64], y: &[f64], g: f64, stencil: &FDStencil) -> Result<IdentityReport> {
    Coupling::new(g)?;
    if x.len() != 2 || y.len() != 2 {
        return Err(Error::Domain("kernel-function identity implemented for n = 2".into()));
    }
    if x[0] == x[1] || y[0] == y[1] {
        return Err(Error::Domain("x and y must be off the diagonal".into()));
    }
    let inputs = json!({"k": k, "x": x, "y": y, "g": g, "stencil": stencil});
    let (lhs, rhs, tol) = match k {
        1 => {
            let deriv = |f: &dyn Fn(&[f64]) -> f64, at: &[f64]| -> f64 {
                let mut s = 0.0;
                for j in 0..at.len() {
                    for &(o, wgt) in stencil.first() {
                        let mut p = at.to_vec();
                        p[j] += o as f64 * stencil.h;
                        s += wgt * f(&p);
                    }
                }
                s / stencil.h
            };
            let dx = deriv(&|p: &[f64]| kernel_xy(p, y, g), x);
            let dy = deriv(&|p: &[f64]| kernel_xy(x, p, g), y);
            (C64::new(0.0, -dx), C64::new(0.0, dy), 1e-9)
        }
        2 => {
            let side = |st: &FDStencil| -> Result<(C64, C64, f64)> {
                let fx = |p: &[f64]| Ok((C64::new(w_prod(p, g) * kernel_xy(p, y, g), 0.0), 0.0));
                let u: Vec<f64> = y.iter().map(|v| -v).collect();
                let fu = |p: &[f64]| {
                    let neg: Vec<f64> = p.iter().map(|v| -v).collect();
                    Ok((C64::new(w_prod(p, g) * kernel_xy(x, &neg, g), 0.0), 0.0))
                };
                let (l, el, _) = apply_laplace_potential(&fx, x, g, st)?;
                let (r, er, _) = apply_laplace_potential(&fu, &u, g, st)?;
                let (wx, wu) = (w_prod(x, g), w_prod(&u, g));
                let floor = 10.0 * (el / wx + er / wu) / (l / wx).norm().max((r / wu).norm()).max(1e-300);
                Ok((l / wx, r / wu, floor))
            };
            let (l, r, floor) = side(stencil)?;
            let fine = IdentityCase::new(Value::Null, l, r).rel_diff;
            if fine > floor && fine > 1e-5 {
                let (l2, r2, _) = side(&stencil.doubled())?;
                let coarse = IdentityCase::new(Value::Null, l2, r2).rel_diff;
                if coarse < 0.5 * stencil.richardson_gain() * fine {
                    return Err(Error::StepTooLarge(format!("residual {fine:.3e} at h = {} vs {coarse:.3e} at 2h", stencil.h)));
                }
            }
            (l, r, 1e-5)
        }
        _ => return Err(Error::Domain(format!("kernel-function identity implemented for k ∈ {{1, 2}}, got {k}"))),
    };
    let name = format!("kernel-function-{k}");
    Ok(IdentityReport::new(name, vec![IdentityCase::new(inputs, lhs, rhs)], tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavefunctions::{psi_zero, SpectralPoint};

    fn r(v: f64) -> C64 {
        C64::new(v, 0.0)
    }

    fn rv(v: &[f64]) -> Vec<C64> {
        v.iter().map(|&t| r(t)).collect()
    }

    #[test]
    fn barnes_sixth() {
        let rep = barnes_check(r(1.0), r(1.0), r(-1.0), r(-1.0), &QuadSpec::rel(1e-11)).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!((rep.cases[0].rhs - 1.0 / 6.0).norm() < 1e-15);
    }

    #[test]
    fn barnes_swap_symmetry() {
        let spec = QuadSpec::rel(1e-11);
        let (a1, a2, b1, b2) = (C64::new(0.7, 0.2), C64::new(1.3, -0.4), C64::new(-0.5, 0.1), C64::new(-0.9, 0.3));
        let p = barnes_check(a1, a2, b1, b2, &spec).unwrap();
        let q = barnes_check(a2, a1, b1, b2, &spec).unwrap();
        assert!(p.pass && q.pass, "{p:?}");
        assert!((p.cases[0].rhs - q.cases[0].rhs).norm() < 1e-15 * p.cases[0].rhs.norm());
        assert!((p.cases[0].lhs - q.cases[0].lhs).norm() < 1e-10 * p.cases[0].lhs.norm());
    }

    #[test]
    fn barnes_reproduces_zero_point() {
        let g = 2.0;
        let lam = [0.35, -0.2];
        let (a, b) = g_specialization(&lam, g);
        let rep = barnes_check(a[0], a[1], b[0], b[1], &QuadSpec::rel(1e-11)).unwrap();
        assert!(rep.pass, "{rep:?}");
        let f = recursion_factor(&lam, g).unwrap();
        assert!((rep.cases[0].rhs - f).norm() < 1e-14 * f.norm());
        let p0 = psi_zero(&SpectralPoint::real(&lam).unwrap(), g).unwrap();
        assert!((f / p0 - gamma(r(g)).unwrap()).norm() < 1e-13);
    }

    #[test]
    fn gustafson_two_dimensional() {
        let g = 2.0;
        let lam = [0.3, 0.0, -0.3];
        let (a, b) = g_specialization(&lam, g);
        let rep = gustafson_check(2, &a, &b, &QuadSpec::rel(1e-7)).unwrap();
        assert!(rep.pass, "{rep:?}");
        let f = recursion_factor(&lam, g).unwrap() * 2.0;
        assert!((rep.cases[0].rhs - f).norm() < 1e-13 * f.norm());
        let alpha = [C64::new(0.6, 0.1), C64::new(0.9, -0.2), C64::new(1.2, 0.0)];
        let beta = [C64::new(-0.7, 0.0), C64::new(-0.4, 0.3), C64::new(-1.0, -0.1)];
        let rep = gustafson_check(2, &alpha, &beta, &QuadSpec::rel(1e-7)).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn gustafson_rejects_unseparated() {
        assert!(gustafson_check(1, &[r(1.0), r(-0.1)], &[r(-1.0), r(-1.0)], &QuadSpec::rel(1e-8)).is_err());
    }

    #[test]
    fn kernel_identity_examples() {
        let rep = kernel_identity_check(2, 1, &rv(&[1.3, -0.7]), &rv(&[0.2, 2.1]), r(0.9)).unwrap();
        assert!(rep.cases[0].rel_diff < 1e-12, "{rep:?}");
        for n in 1..=4 {
            for k in 0..=n {
                let z: Vec<f64> = (0..n).map(|i| 0.37 * i as f64 - 0.5).collect();
                let y: Vec<f64> = (0..n).map(|i| 0.61 * i as f64 + 0.13).collect();
                let rep = kernel_identity_check(n, k, &rv(&z), &rv(&y), r(0.0)).unwrap();
                let binom = factorial(n) / (factorial(k) * factorial(n - k));
                assert!((rep.cases[0].lhs - binom).norm() < 1e-12 && rep.pass);
                assert!(kernel_identity_check(n, k, &rv(&z), &rv(&y), C64::new(0.4, 0.3)).unwrap().pass);
            }
        }
        assert!(matches!(
            kernel_identity_check(2, 1, &rv(&[1.0, 1.0]), &rv(&[0.2, 2.1]), r(0.9)),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn hypergeom_examples() {
        let rep = rational_hypergeom_check(2, 2, &rv(&[0.4, -1.1]), &rv(&[2.2, 0.9]), r(0.7)).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = rational_hypergeom_check(3, 0, &rv(&[0.4, -1.1, 0.3]), &rv(&[2.2, 0.9, -0.6]), r(0.7)).unwrap();
        assert_eq!((rep.cases[0].lhs, rep.cases[0].rhs), (r(1.0), r(1.0)));
        for kk in 0..=4 {
            assert!(rational_hypergeom_check(1, kk, &rv(&[0.4]), &rv(&[2.2]), r(0.7)).unwrap().pass);
            let rep = rational_hypergeom_check(3, kk, &rv(&[0.4, -1.13, 0.27]), &rv(&[2.21, 0.93, -0.61]), C64::new(0.7, 0.2)).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn compositions_are_lexicographic() {
        let c = compositions(2, 2);
        assert_eq!(c, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(4, 3).len(), 15);
    }

    #[test]
    fn commutativity_examples() {
        let spec = QuadSpec::rel(1e-10);
        let rep = baxter_commutativity_check(1, &[0.5, -0.2], C64::new(0.3, 0.4), 2.0, &spec).unwrap();
        assert!(rep.pass && rep.cases.len() == 2, "{rep:?}");
        let rep = baxter_commutativity_check(1, &[0.5, -0.2], r(0.0), 2.0, &spec).unwrap();
        assert!(rep.cases.iter().all(|c| c.lhs == c.rhs));
        let rep = baxter_commutativity_check(2, &[0.5, -0.2, 0.1, 0.8], r(0.25), 2.0, &QuadSpec::rel(1e-6)).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(baxter_commutativity_check(1, &[0.5, -0.2], C64::new(0.0, 2.0), 2.0, &spec).is_err());
    }

    #[test]
    fn kernel_function_identity() {
        let st = FDStencil::default();
        let rep = kernel_function_identity_check(1, &[0.9, 0.0], &[0.4, -0.5], 2.0, &st).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = kernel_function_identity_check(2, &[0.9, 0.0], &[0.4, -0.5], 2.0, &st).unwrap();
        assert!(rep.pass, "{rep:?}");
        let swapped = kernel_function_identity_check(2, &[0.5, -0.4], &[0.0, -0.9], 2.0, &st).unwrap();
        assert!(swapped.pass, "{swapped:?}");
        assert!((swapped.cases[0].lhs - rep.cases[0].rhs).norm() < 1e-6 * rep.cases[0].rhs.norm());
    }
}
