//! Complex gamma function and the kernel, weight and measure functions built on it.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

const POLE_TOL: f64 = 1e-13;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// Godfrey's coefficients for the Lanczos approximation with g = 607/128.
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    4.652_362_892_704_858e-5,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_64e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// A coupling constant g, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling(f64);

impl Coupling {
    pub fn new(g: f64) -> Result<Self> {
        if g.is_finite() && g > 0.0 {
            Ok(Coupling(g))
        } else {
            Err(Error::Domain(format!("coupling g must be positive and finite, got {g}")))
        }
    }

    /// Checks the stronger condition g > `min` needed by the spectral-side machinery.
    pub fn above(self, min: f64) -> Result<Self> {
        if self.0 > min {
            Ok(self)
        } else {
            Err(Error::Domain(format!("this operation requires g > {min}, got {}", self.0)))
        }
    }

    pub fn g(self) -> f64 {
        self.0
    }
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi_re(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    if r > 0.5 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.5 {
        -(PI * (1.0 + r)).sin()
    } else {
        (PI * r).sin()
    }
}

/// cos(πx) with exact zeros at the half-integers.
pub fn cos_pi_re(x: f64) -> f64 {
    sin_pi_re(x + 0.5)
}

/// sin(πz) for complex z.
pub fn sin_pi(z: C64) -> C64 {
    let b = PI * z.im;
    C64::new(sin_pi_re(z.re) * b.cosh(), cos_pi_re(z.re) * b.sinh())
}

fn lanczos_sum(z: C64) -> C64 {
    let mut s = C64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (z + k as f64);
    }
    s
}

fn near_pole(z: C64) -> bool {
    z.re <= 0.5 && z.im.abs() < POLE_TOL && (z.re - z.re.round()).abs() < POLE_TOL
}

/// Principal branch of log Γ(z).
pub fn ln_gamma(z: C64) -> Result<C64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain(format!("ln_gamma of non-finite argument {z}")));
    }
    if near_pole(z) {
        return Err(Error::Pole(z));
    }
    if z.re >= 0.5 {
        return Ok(ln_gamma_right(z));
    }
    // Recurse up to the right half-plane; a sum of principal logs keeps the principal branch.
    let shift = (0.5 - z.re).ceil();
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..shift as usize {
        acc += (z + k as f64).ln();
    }
    Ok(ln_gamma_right(z + shift) - acc)
}

fn ln_gamma_right(z: C64) -> C64 {
    let zm = z - 1.0;
    let t = zm + (LANCZOS_G + 0.5);
    LN_SQRT_2PI + (zm + 0.5) * t.ln() - t + lanczos_sum(zm).ln()
}

/// Γ(z), using reflection in the left half-plane.
pub fn gamma(z: C64) -> Result<C64> {
    if near_pole(z) {
        return Err(Error::Pole(z));
    }
    if z.re < 0.5 {
        let s = sin_pi(z);
        Ok(PI / (s * ln_gamma(1.0 - z)?.exp()))
    } else {
        Ok(ln_gamma(z)?.exp())
    }
}

/// 1/Γ(z), entire; exactly zero at the nonpositive integers.
pub fn rgamma(z: C64) -> C64 {
    if z.re < 0.5 {
        // 1 - z has real part > 0.5 so ln_gamma cannot fail there.
        sin_pi(z) * ln_gamma_right(1.0 - z).exp() / PI
    } else {
        (-ln_gamma_right(z)).exp()
    }
}

/// Real Γ(x) for x > 0.
pub fn gamma_re(x: f64) -> f64 {
    ln_gamma_right(C64::new(x, 0.0)).re.exp()
}

/// ln(2 ch πx), overflow-free.
fn ln_2ch(x: f64) -> f64 {
    let a = PI * x.abs();
    a + (-2.0 * a).exp().ln_1p()
}

/// ln|2 sh πx|; -inf at 0.
fn ln_2sh(x: f64) -> f64 {
    let a = PI * x.abs();
    a + (-(-2.0 * a).exp_m1()).ln()
}

/// K(x) = (2 ch πx)^{-g}.
pub fn kernel_k(x: f64, g: f64) -> f64 {
    (-g * ln_2ch(x)).exp()
}

/// w(x) = |2 sh πx|^g.
pub fn weight_w(x: f64, g: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    (g * ln_2sh(x)).exp()
}

/// μ(x) = |2 sh πx|^{2g}.
pub fn measure_mu(x: f64, g: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    (2.0 * g * ln_2sh(x)).exp()
}

/// K̂(λ) = Γ(iλ + g/2) Γ(−iλ + g/2).
pub fn dual_kernel_khat(lam: C64, g: f64) -> Result<C64> {
    let il = C64::i() * lam;
    let a = ln_gamma(il + g / 2.0)?;
    let b = ln_gamma(-il + g / 2.0)?;
    Ok((a + b).exp())
}

/// K̂ restricted to the real line, where it equals |Γ(g/2 + it)|².
pub fn dual_kernel_khat_re(t: f64, g: f64) -> f64 {
    (2.0 * ln_gamma_right(C64::new(g / 2.0, t.abs())).re).exp()
}

/// ŵ(λ) = 1/(Γ(iλ) Γ(−iλ + g)).
pub fn dual_weight_what(lam: C64, g: f64) -> C64 {
    let il = C64::i() * lam;
    rgamma(il) * rgamma(-il + g)
}

/// μ̂(λ) = ŵ(λ) ŵ(−λ).
pub fn dual_measure_muhat(lam: C64, g: f64) -> C64 {
    dual_weight_what(lam, g) * dual_weight_what(-lam, g)
}

/// μ̂ on the real line: t sh(πt) / (π |Γ(g + it)|²).
pub fn dual_measure_muhat_re(t: f64, g: f64) -> f64 {
    let a = t.abs();
    if a == 0.0 {
        return 0.0;
    }
    let ln_tsh = a.ln() + PI * a + (-(-2.0 * PI * a).exp_m1()).ln() - std::f64::consts::LN_2;
    (ln_tsh - PI.ln() - 2.0 * ln_gamma_right(C64::new(g, a)).re).exp()
}

/// α_n = ∏_{k=1}^n Γ(kg)/Γ(g).
pub fn alpha_n(n: usize, g: f64) -> f64 {
    let lg = ln_gamma_right(C64::new(g, 0.0)).re;
    (1..=n)
        .map(|k| ln_gamma_right(C64::new(k as f64 * g, 0.0)).re - lg)
        .sum::<f64>()
        .exp()
}

/// d_n = (2πΓ(g))^n/n!, or d̂_n = (2πΓ(g))^{-n}/n! when `dual`.
pub fn norm_const(n: usize, g: f64, dual: bool) -> f64 {
    let base = 2.0 * PI * gamma_re(g);
    let p = if dual { base.powi(-(n as i32)) } else { base.powi(n as i32) };
    p / factorial(n)
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}
