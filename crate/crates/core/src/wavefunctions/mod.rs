//! The wave function Ψ_λ(x) in four representations, the normalized Heckman-Opdam function F and
//! the renormalized function Φ.

mod asymptotic;
mod euler;
mod mellin_barnes;
mod series;

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{EvalResult, QuadSpec};
use crate::special_fn::{alpha_n, dual_weight_what, gamma_re, ln_gamma, Coupling};

pub use asymptotic::{psi_asymptotic, Chamber};
pub use euler::euler_psi;
pub use mellin_barnes::mb_psi;
pub use series::{
    hc_coeff, hc_coeff_what_form, hc_psi, hc_psi_auto, hc_psi_symmetrized, hc_psi_symmetrized_auto, HCIndexMatrix,
};

/// Largest n handled by the integral representations.
pub const MAX_N: usize = 3;
const DISTINCT_TOL: f64 = 1e-9;

/// Spectral parameters λ = (λ₁,…,λₙ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralPoint(pub Vec<C64>);

impl SpectralPoint {
    pub fn new(l: Vec<C64>) -> Result<Self> {
        if l.is_empty() || l.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Domain("spectral point needs n ≥ 1 finite entries".into()));
        }
        Ok(SpectralPoint(l))
    }

    pub fn real(l: &[f64]) -> Result<Self> {
        SpectralPoint::new(l.iter().map(|&v| C64::new(v, 0.0)).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_real(&self) -> bool {
        self.0.iter().all(|z| z.im == 0.0)
    }

    pub fn sum(&self) -> C64 {
        self.0.iter().sum()
    }

    /// Rejects coincident entries.
    pub fn require_distinct(&self) -> Result<()> {
        for i in 0..self.n() {
            for j in 0..i {
                if (self.0[i] - self.0[j]).norm() <= DISTINCT_TOL {
                    return Err(Error::Pole(self.0[i] - self.0[j]));
                }
            }
        }
        Ok(())
    }

    pub fn permuted(&self, perm: &[usize]) -> SpectralPoint {
        SpectralPoint(perm.iter().map(|&k| self.0[k]).collect())
    }

    fn im_spread(&self) -> f64 {
        let hi = self.0.iter().map(|z| z.im).fold(f64::MIN, f64::max);
        let lo = self.0.iter().map(|z| z.im).fold(f64::MAX, f64::min);
        hi - lo
    }

    fn re_spread(&self) -> f64 {
        let hi = self.0.iter().map(|z| z.re).fold(f64::MIN, f64::max);
        let lo = self.0.iter().map(|z| z.re).fold(f64::MAX, f64::min);
        hi - lo
    }
}

/// Positions x = (x₁,…,xₙ).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositionPoint(pub Vec<f64>);

impl PositionPoint {
    pub fn new(x: Vec<f64>) -> Result<Self> {
        if x.is_empty() || x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain("position point needs n ≥ 1 finite entries".into()));
        }
        Ok(PositionPoint(x))
    }

    pub fn zero(n: usize) -> Self {
        PositionPoint(vec![0.0; n])
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// m_n(x): the smallest gap between neighbouring coordinates.
    pub fn min_gap(&self) -> f64 {
        let mut v = self.0.clone();
        v.sort_by(|a, b| a.total_cmp(b));
        v.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    pub fn is_descending(&self) -> bool {
        self.0.windows(2).all(|w| w[0] > w[1])
    }

    pub fn is_ascending(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }

    fn spread(&self) -> f64 {
        let hi = self.0.iter().copied().fold(f64::MIN, f64::max);
        let lo = self.0.iter().copied().fold(f64::MAX, f64::min);
        hi - lo
    }

    fn range(&self) -> (f64, f64) {
        (self.0.iter().copied().fold(f64::MAX, f64::min), self.0.iter().copied().fold(f64::MIN, f64::max))
    }
}

/// ρ_n = ((n−1)/2, (n−3)/2, …, (1−n)/2).
pub fn rho(n: usize) -> Vec<f64> {
    (0..n).map(|i| (n as f64 - 1.0) / 2.0 - i as f64).collect()
}

/// (x, ρ_n).
pub fn x_dot_rho(x: &PositionPoint) -> f64 {
    x.0.iter().zip(rho(x.n())).map(|(a, b)| a * b).sum()
}

/// Δ̂(λ) = ∏_{i<j}(1 + |λ_i − λ_j|).
pub fn lattice_gap(lam: &SpectralPoint) -> f64 {
    let mut d = 1.0;
    for i in 0..lam.n() {
        for j in i + 1..lam.n() {
            d *= 1.0 + (lam.0[i] - lam.0[j]).norm();
        }
    }
    d
}

/// N(g) = 4^{n−2}g − (4^{n−2} − 1)(g − 2)/3.
pub fn bound_exponent(n: usize, g: f64) -> f64 {
    let q = 4f64.powi(n as i32 - 2);
    q * g - (q - 1.0) * (g - 2.0) / 3.0
}

/// Which representation evaluates Ψ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Euler,
    Mb,
    Series,
    Asymptotic,
    Zero,
}

impl std::str::FromStr for Representation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "euler" => Representation::Euler,
            "mb" => Representation::Mb,
            "series" => Representation::Series,
            "asymptotic" => Representation::Asymptotic,
            "zero" => Representation::Zero,
            _ => return Err(Error::Domain(format!("unknown representation {s:?}"))),
        })
    }
}

/// Evaluation options shared by the dispatching entry points.
#[derive(Debug, Clone, Copy)]
pub struct EvalOptions {
    pub spec: QuadSpec,
    /// Cap on the series degree; the shell rule usually stops earlier.
    pub kmax: usize,
}

impl EvalOptions {
    pub fn new(spec: QuadSpec, kmax: usize) -> Self {
        EvalOptions { spec, kmax }
    }
}

/// Ψ_λ(x) by the requested representation.
pub fn psi(lam: &SpectralPoint, x: &PositionPoint, g: f64, rep: Representation, opt: &EvalOptions) -> Result<EvalResult> {
    match rep {
        Representation::Euler => euler_psi(lam, x, g, &opt.spec),
        Representation::Mb => mb_psi(lam, x, g, &opt.spec),
        Representation::Series => Ok(hc_psi_symmetrized_auto(lam, x, g, opt.spec.rel_tol.max(1e-15), opt.kmax)?.0),
        Representation::Asymptotic => {
            let ch = if x.is_ascending() { Chamber::Ascending } else { Chamber::Descending };
            Ok(EvalResult::exact(psi_asymptotic(lam, x, g, ch)?))
        }
        Representation::Zero => {
            if x.0.iter().any(|&v| v != 0.0) {
                return Err(Error::Domain("the closed-form zero-point value needs x = 0".into()));
            }
            if x.n() != lam.n() {
                return Err(Error::Domain("λ and x must have the same length".into()));
            }
            Ok(EvalResult::exact(psi_zero(lam, g)?))
        }
    }
}

/// Ψ_λ(0) = ∏_k Γ(g)/Γ(kg) · ∏_{i≠j} Γ(i(λ_i − λ_j) + g).
pub fn psi_zero(lam: &SpectralPoint, g: f64) -> Result<C64> {
    Coupling::new(g)?;
    let n = lam.n();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += ln_gamma(C64::i() * (lam.0[i] - lam.0[j]) + g)?;
            }
        }
    }
    Ok(acc.exp() / alpha_n(n, g))
}

/// ∏_{i≠j} Γ⁻¹(i(λ_i − λ_j) + g), the normalization turning Ψ into F.
fn f_normalization(lam: &SpectralPoint, g: f64) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for i in 0..lam.n() {
        for j in 0..lam.n() {
            if i != j {
                acc *= crate::special_fn::rgamma(C64::i() * (lam.0[i] - lam.0[j]) + g);
            }
        }
    }
    acc
}

/// F_λ(x) = α_n ∏_{i≠j} Γ⁻¹(i(λ_i − λ_j) + g) Ψ_λ(x), normalized by F_λ(0) = 1.
pub fn ho_f(lam: &SpectralPoint, x: &PositionPoint, g: f64, rep: Representation, opt: &EvalOptions) -> Result<EvalResult> {
    let p = psi(lam, x, g, rep, opt)?;
    Ok(p.scale(f_normalization(lam, g) * alpha_n(lam.n(), g)))
}

/// ŵ(λ) = ∏_{i<j} ŵ(λ_i − λ_j).
pub fn what_product(lam: &SpectralPoint, g: f64) -> C64 {
    let mut w = C64::new(1.0, 0.0);
    for i in 0..lam.n() {
        for j in i + 1..lam.n() {
            w *= dual_weight_what(lam.0[i] - lam.0[j], g);
        }
    }
    w
}

/// Φ = ŵ(λ)Ψ and Φ̌ = e^{πg Σ_{i<n}|x_i − x_n|} Φ.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Renormalized {
    pub phi: EvalResult,
    pub phi_check: EvalResult,
}

/// Φ and Φ̌ from the Mellin-Barnes representation.
pub fn phi_renormalized(lam: &SpectralPoint, x: &PositionPoint, g: f64, spec: &QuadSpec) -> Result<Renormalized> {
    phi_renormalized_with(lam, x, g, Representation::Mb, &EvalOptions::new(*spec, 0))
}

/// Relative deviation of Φ̌ from e^{πg Σ_{i<n}|x_i − x_n|}Φ.
pub fn check_phi_variant(r: &Renormalized, x: &PositionPoint, g: f64) -> f64 {
    let n = x.n();
    let e: f64 = x.0[..n - 1].iter().map(|&v| (v - x.0[n - 1]).abs()).sum();
    let want = r.phi.value * (PI * g * e).exp();
    (r.phi_check.value - want).norm() / want.norm().max(1e-300)
}

/// Φ and Φ̌ from any representation.
pub fn phi_renormalized_with(lam: &SpectralPoint, x: &PositionPoint, g: f64, rep: Representation, opt: &EvalOptions) -> Result<Renormalized> {
    lam.require_distinct()?;
    let phi = psi(lam, x, g, rep, opt)?.scale(what_product(lam, g));
    let n = x.n();
    let e: f64 = x.0[..n - 1].iter().map(|&v| (v - x.0[n - 1]).abs()).sum();
    let phi_check = phi.scale(C64::new((PI * g * e).exp(), 0.0));
    Ok(Renormalized { phi, phi_check })
}

/// Φ^as = ŵ(λ)Ψ^as in the given chamber.
pub fn phi_asymptotic(lam: &SpectralPoint, x: &PositionPoint, g: f64, chamber: Chamber) -> Result<C64> {
    Ok(what_product(lam, g) * psi_asymptotic(lam, x, g, chamber)?)
}

/// |Φ|·Δ̂(λ)^{−N(g)}·e^{πg Σ_{i<j}|x_i − x_j|}, the quantity the total bound keeps finite.
pub fn total_bound_ratio(phi: C64, lam: &SpectralPoint, x: &PositionPoint, g: f64) -> f64 {
    let n = x.n();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += (x.0[i] - x.0[j]).abs();
        }
    }
    phi.norm() * lattice_gap(lam).powf(-bound_exponent(n, g)) * (PI * g * s).exp()
}

pub(crate) fn check_pair(lam: &SpectralPoint, x: &PositionPoint) -> Result<usize> {
    if lam.n() != x.n() {
        return Err(Error::Domain(format!("λ has {} entries but x has {}", lam.n(), x.n())));
    }
    if lam.n() > MAX_N {
        return Err(Error::Domain(format!("integral representations support n ≤ {MAX_N}, got {}", lam.n())));
    }
    Ok(lam.n())
}

pub(crate) fn cis(a: C64, y: f64) -> C64 {
    (C64::i() * (2.0 * PI * y) * a).exp()
}

/// Γ(g) as used in the normalizing constants.
pub fn gamma_g(g: f64) -> f64 {
    gamma_re(g)
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..used.len() {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                rec(cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_zero_examples() {
        let v = psi_zero(&SpectralPoint::real(&[0.0, 0.0]).unwrap(), 2.0).unwrap();
        assert!((v.re - 1.0 / 6.0).abs() < 1e-14);
        let v = psi_zero(&SpectralPoint::real(&[0.0, 0.0, 0.0]).unwrap(), 2.0).unwrap();
        assert!((v.re - 1.0 / 720.0).abs() < 1e-16);
        let v = psi_zero(&SpectralPoint::real(&[1.0, 0.0]).unwrap(), 2.0).unwrap();
        // |Γ(2+i)|² = |1+i|²|Γ(1+i)|² = 2π/sinh π
        let want = 2.0 * PI / PI.sinh() / 6.0;
        assert!((v.re - want).abs() < 1e-14 && v.im.abs() < 1e-15);
        assert!((want - 0.090_676_351_660_711_1).abs() < 1e-15);
    }

    #[test]
    fn zero_point_decreases_in_gap() {
        let v: Vec<f64> = (0..11)
            .map(|k| psi_zero(&SpectralPoint::real(&[k as f64 * 0.1, 0.0]).unwrap(), 2.0).unwrap().norm())
            .collect();
        assert!(v.windows(2).all(|w| w[1] < w[0]), "{v:?}");
    }

    #[test]
    fn bound_exponent_values() {
        assert_eq!(bound_exponent(2, 2.7), 2.7);
        assert!((bound_exponent(3, 2.0) - 8.0).abs() < 1e-15);
        assert!((bound_exponent(3, 1.5) - (6.0 + 0.5)).abs() < 1e-15);
    }

    #[test]
    fn rho_and_gap() {
        assert_eq!(rho(3), vec![1.0, 0.0, -1.0]);
        assert_eq!(rho(1), vec![0.0]);
        let x = PositionPoint::new(vec![2.0, 0.5, 0.0]).unwrap();
        assert_eq!(x.min_gap(), 0.5);
        assert_eq!(x_dot_rho(&x), 2.0);
        let l = SpectralPoint::real(&[0.5, -0.5]).unwrap();
        assert_eq!(lattice_gap(&l), 2.0);
    }

    #[test]
    fn permutation_order() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0, 1, 2]);
        assert_eq!(p[5], vec![2, 1, 0]);
    }
}
