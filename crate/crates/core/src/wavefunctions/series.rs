//! Harish-Chandra series in the descending chamber.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::{permutations, x_dot_rho, PositionPoint, SpectralPoint};
use crate::error::{Error, Result};
use crate::quadrature::EvalResult;
use crate::special_fn::{dual_weight_what, ln_gamma, Coupling};

/// Strictly lower-triangular matrix M = (m_ij), n ≥ i > j ≥ 1, of nonnegative integers.
///
/// Entries are stored in the order (2,1), (3,1), (3,2), (4,1), ….
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HCIndexMatrix {
    n: usize,
    m: Vec<u32>,
}

impl HCIndexMatrix {
    pub fn zero(n: usize) -> Self {
        HCIndexMatrix { n, m: vec![0; n * n.saturating_sub(1) / 2] }
    }

    pub fn from_entries(n: usize, m: Vec<u32>) -> Result<Self> {
        if m.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::Domain(format!("index matrix for n = {n} needs {} entries", n * n.saturating_sub(1) / 2)));
        }
        Ok(HCIndexMatrix { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[u32] {
        &self.m
    }

    /// m_ij, 1-based with i > j.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i > j && j >= 1 && i <= self.n);
        self.m[(i - 1) * (i - 2) / 2 + (j - 1)]
    }

    /// p_ij = Σ_{l ≥ i} m_lj, with p_{n+1,j} = 0.
    pub fn p(&self, i: usize, j: usize) -> f64 {
        ((i.max(j + 1))..=self.n).map(|l| self.get(l, j) as f64).sum()
    }

    pub fn degree(&self) -> u32 {
        self.m.iter().sum()
    }

    /// Every matrix of the given degree, in lexicographic order of the entries.
    pub fn shell(n: usize, k: u32) -> Vec<HCIndexMatrix> {
        let parts = n * n.saturating_sub(1) / 2;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(parts);
        compositions(k, parts, &mut cur, &mut out);
        out.into_iter().map(|m| HCIndexMatrix { n, m }).collect()
    }
}

fn compositions(k: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if cur.len() + 1 == parts {
        cur.push(k);
        out.push(cur.clone());
        cur.pop();
        return;
    }
    for first in 0..=k {
        cur.push(first);
        compositions(k - first, parts, cur, out);
        cur.pop();
    }
}

fn lam_diff(lam: &SpectralPoint, s: usize, t: usize) -> C64 {
    lam.0[s - 1] - lam.0[t - 1]
}

/// Products of the binomial-type prefactor, as (sign, log magnitude).
fn ln_prefactor(m: &HCIndexMatrix, g: f64) -> Result<C64> {
    let lg = ln_gamma(C64::new(g, 0.0))?;
    let mut acc = C64::new(0.0, 0.0);
    for &mij in &m.m {
        let mf = mij as f64;
        acc += ln_gamma(C64::new(g + mf, 0.0))? - ln_gamma(C64::new(mf + 1.0, 0.0))? - lg;
        if mij % 2 == 1 {
            acc += C64::new(0.0, PI);
        }
    }
    Ok(acc)
}

fn ln_pair(lam: &SpectralPoint, s: usize, t: usize, shift: f64, g: f64) -> Result<C64> {
    let il = C64::i() * lam_diff(lam, s, t);
    Ok(ln_gamma(il - shift)? + ln_gamma(-il + shift + g)?)
}

/// log c_M in the gamma-function form.
fn ln_hc_coeff(m: &HCIndexMatrix, lam: &SpectralPoint, g: f64) -> Result<C64> {
    let n = m.n;
    let mut acc = ln_prefactor(m, g)?;
    for k in 2..=n {
        for s in 1..k {
            for t in (1..=k).filter(|&t| t != s) {
                acc += ln_pair(lam, s, t, m.p(k, s) - m.p(k + 1, t), g)?;
            }
        }
    }
    for k in 3..=n {
        for s in 1..k {
            for t in (1..k).filter(|&t| t != s) {
                acc -= ln_pair(lam, s, t, m.p(k, s) - m.p(k, t), g)?;
            }
        }
    }
    Ok(acc)
}

/// Harish-Chandra coefficient c_M(λ) as a ratio of gamma functions.
pub fn hc_coeff(m: &HCIndexMatrix, lam: &SpectralPoint, g: f64) -> Result<C64> {
    check_lam(m, lam)?;
    Ok(ln_hc_coeff(m, lam, g)?.exp())
}

/// c_M(λ) written through the dual weight ŵ.
pub fn hc_coeff_what_form(m: &HCIndexMatrix, lam: &SpectralPoint, g: f64) -> Result<C64> {
    check_lam(m, lam)?;
    let n = m.n;
    let w = |s: usize, t: usize, shift: f64| dual_weight_what(lam_diff(lam, s, t) + C64::new(0.0, shift), g);
    let mut num = C64::new(1.0, 0.0);
    let mut den = C64::new(1.0, 0.0);
    for k in 3..=n {
        for s in 1..k {
            for t in (1..k).filter(|&t| t != s) {
                num *= w(s, t, m.p(k, s) - m.p(k, t));
            }
        }
    }
    for k in 2..=n {
        for s in 1..k {
            for t in (1..=k).filter(|&t| t != s) {
                den *= w(s, t, m.p(k, s) - m.p(k + 1, t));
            }
        }
    }
    if den == C64::new(0.0, 0.0) {
        return Err(Error::Pole(lam.0[0]));
    }
    Ok(ln_prefactor(m, g)?.exp() * num / den)
}

fn check_lam(m: &HCIndexMatrix, lam: &SpectralPoint) -> Result<()> {
    if lam.n() != m.n {
        return Err(Error::Domain(format!("index matrix is for n = {} but λ has {} entries", m.n, lam.n())));
    }
    Ok(())
}

fn check_series(lam: &SpectralPoint, x: &PositionPoint, g: f64) -> Result<()> {
    Coupling::new(g)?.above(1.0)?;
    if lam.n() != x.n() {
        return Err(Error::Domain(format!("λ has {} entries but x has {}", lam.n(), x.n())));
    }
    if !x.is_descending() {
        return Err(Error::Domain("the series needs strictly descending x".into()));
    }
    lam.require_distinct()
}

/// Sum of one shell of the series for ψ_λ, without the leading exponential.
fn shell_sum(lam: &SpectralPoint, x: &PositionPoint, g: f64, k: u32) -> Result<C64> {
    let n = x.n();
    let mut s = C64::new(0.0, 0.0);
    for m in HCIndexMatrix::shell(n, k) {
        let mut e = 0.0;
        for i in 2..=n {
            for j in 1..i {
                e += m.get(i, j) as f64 * (x.0[i - 1] - x.0[j - 1]);
            }
        }
        s += (ln_hc_coeff(&m, lam, g)? + 2.0 * PI * e).exp();
    }
    Ok(s)
}

fn leading(lam: &SpectralPoint, x: &PositionPoint, g: f64) -> C64 {
    let phase: C64 = x.0.iter().zip(&lam.0).map(|(&xi, &li)| xi * li).sum();
    (2.0 * PI * (C64::i() * phase - g * x_dot_rho(x))).exp()
}

/// Tail estimate from the last two shell magnitudes.
fn geometric_tail(prev: Option<f64>, last: f64, fallback_ratio: f64) -> f64 {
    let r = match prev {
        Some(p) if p > 0.0 => last / p,
        _ => fallback_ratio,
    };
    if r < 1.0 {
        last * r / (1.0 - r)
    } else {
        last
    }
}

/// ψ_λ(x) truncated at total degree K_max; x must be strictly descending.
pub fn hc_psi(lam: &SpectralPoint, x: &PositionPoint, g: f64, kmax: usize) -> Result<EvalResult> {
    check_series(lam, x, g)?;
    let mut sum = C64::new(0.0, 0.0);
    let mut mags = Vec::with_capacity(kmax + 1);
    let mut evals = 0u64;
    for k in 0..=kmax as u32 {
        let s = shell_sum(lam, x, g, k)?;
        evals += HCIndexMatrix::shell(x.n(), k).len() as u64;
        sum += s;
        mags.push(s.norm());
    }
    let prev = if kmax >= 1 { Some(mags[kmax - 1]) } else { None };
    let err = geometric_tail(prev, mags[kmax], (-2.0 * PI * x.min_gap()).exp());
    let lead = leading(lam, x, g);
    Ok(EvalResult { value: lead * sum, abs_err: err * lead.norm(), n_evals: evals })
}

/// Ψ_λ(x) = Σ_σ ψ_{σλ}(x), each series truncated at degree K_max.
pub fn hc_psi_symmetrized(lam: &SpectralPoint, x: &PositionPoint, g: f64, kmax: usize) -> Result<EvalResult> {
    check_series(lam, x, g)?;
    let mut out = EvalResult { value: C64::new(0.0, 0.0), abs_err: 0.0, n_evals: 0 };
    for p in permutations(lam.n()) {
        let r = hc_psi(&lam.permuted(&p), x, g, kmax)?;
        out.value += r.value;
        out.abs_err += r.abs_err;
        out.n_evals += r.n_evals;
    }
    Ok(out)
}

/// Runs the shell rule over the given permutations of λ and returns the result with the degree used.
fn auto_sum(lam: &SpectralPoint, x: &PositionPoint, g: f64, rel_tol: f64, kmax: usize, perms: &[Vec<usize>]) -> Result<(EvalResult, usize)> {
    check_series(lam, x, g)?;
    let lams: Vec<SpectralPoint> = perms.iter().map(|p| lam.permuted(p)).collect();
    let leads: Vec<C64> = lams.iter().map(|l| leading(l, x, g)).collect();
    let mut total = C64::new(0.0, 0.0);
    let mut mags: Vec<f64> = Vec::new();
    let mut quiet = 0;
    let mut evals = 0u64;
    for k in 0..=kmax as u32 {
        let mut shell = C64::new(0.0, 0.0);
        let mut mag = 0.0;
        for (l, lead) in lams.iter().zip(&leads) {
            let s = *lead * shell_sum(l, x, g, k)?;
            shell += s;
            mag += s.norm();
        }
        evals += (HCIndexMatrix::shell(x.n(), k).len() * lams.len()) as u64;
        total += shell;
        mags.push(mag);
        quiet = if mag < rel_tol * total.norm() { quiet + 1 } else { 0 };
        if quiet == 2 {
            let k = k as usize;
            let err = geometric_tail(Some(mags[k - 1]), mags[k], 0.0);
            return Ok((EvalResult { value: total, abs_err: err, n_evals: evals }, k));
        }
    }
    let growing = mags.len() >= 4 && mags.windows(2).rev().take(3).all(|w| w[1] >= w[0]);
    if growing {
        Err(Error::Divergence(format!("shell magnitudes grow up to degree {kmax}")))
    } else {
        Err(Error::NonConvergence(format!("series not converged to {rel_tol:e} by degree {kmax}")))
    }
}

/// ψ_λ(x) with the degree chosen by the shell rule: stop once two consecutive shells fall below
/// rel_tol times the partial sum.
pub fn hc_psi_auto(lam: &SpectralPoint, x: &PositionPoint, g: f64, rel_tol: f64, kmax: usize) -> Result<(EvalResult, usize)> {
    auto_sum(lam, x, g, rel_tol, kmax, &[(0..lam.n()).collect()])
}

/// Ψ_λ(x) with the degree chosen by the shell rule applied to the symmetrized sum.
pub fn hc_psi_symmetrized_auto(lam: &SpectralPoint, x: &PositionPoint, g: f64, rel_tol: f64, kmax: usize) -> Result<(EvalResult, usize)> {
    auto_sum(lam, x, g, rel_tol, kmax, &permutations(lam.n()))
}
