//! Leading asymptotics of Ψ deep inside a Weyl chamber.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::{permutations, x_dot_rho, PositionPoint, SpectralPoint};
use crate::error::{Error, Result};
use crate::special_fn::{ln_gamma, Coupling};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chamber {
    /// x₁ > x₂ > … > xₙ
    Descending,
    /// x₁ < x₂ < … < xₙ
    Ascending,
}

/// log ŵ⁻¹(μ) = log Γ(iμ)Γ(g − iμ).
fn ln_what_inv(mu: C64, g: f64) -> Result<C64> {
    let il = C64::i() * mu;
    Ok(ln_gamma(il)? + ln_gamma(-il + g)?)
}

/// Ψ^as_λ(x): the sum over permutations of plane waves with their leading coefficients.
pub fn psi_asymptotic(lam: &SpectralPoint, x: &PositionPoint, g: f64, chamber: Chamber) -> Result<C64> {
    Coupling::new(g)?;
    if lam.n() != x.n() {
        return Err(Error::Domain(format!("λ has {} entries but x has {}", lam.n(), x.n())));
    }
    let inside = match chamber {
        Chamber::Descending => x.is_descending(),
        Chamber::Ascending => x.is_ascending(),
    };
    if !inside {
        return Err(Error::Domain(format!("x is not in the {chamber:?} chamber")));
    }
    lam.require_distinct()?;
    let n = lam.n();
    let sign = match chamber {
        Chamber::Descending => -1.0,
        Chamber::Ascending => 1.0,
    };
    let mut sum = C64::new(0.0, 0.0);
    for p in permutations(n) {
        let l = lam.permuted(&p);
        let mut acc: C64 = C64::i() * 2.0 * PI * x.0.iter().zip(&l.0).map(|(&xi, &li)| xi * li).sum::<C64>();
        for i in 0..n {
            for j in i + 1..n {
                let mu = match chamber {
                    Chamber::Descending => l.0[i] - l.0[j],
                    Chamber::Ascending => l.0[j] - l.0[i],
                };
                acc += ln_what_inv(mu, g)?;
            }
        }
        sum += acc.exp();
    }
    Ok(sum * (sign * 2.0 * PI * g * x_dot_rho(x)).exp())
}
