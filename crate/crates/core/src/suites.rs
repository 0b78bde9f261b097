//! Named verification suites bundling the identity checks, eigen-equation residuals, limits and
//! bounds into pass/fail reports.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::double_sine::{bound_check_uniform, gamma_limit_check, limit_check_pointwise, s2, LimitReport, Periods};
use crate::error::{Error, Result};
use crate::operators::{
    apply_baxter, apply_cs_hamiltonian, apply_dual_baxter, apply_dual_difference_hr, apply_macdonald_rational,
    cs_hamiltonian_richardson, FDStencil,
};
use crate::quadrature::QuadSpec;
use crate::special_fn::{sin_pi, Coupling};
use crate::verification::{
    barnes_check, baxter_commutativity_check, g_specialization, gustafson_check, kernel_function_identity_check,
    kernel_identity_check, rational_hypergeom_check, recursion_factor, IdentityCase, IdentityReport,
};
use crate::wavefunctions::{
    euler_psi, hc_psi_symmetrized_auto, mb_psi, phi_asymptotic, phi_renormalized_with, psi_zero,
    total_bound_ratio, x_dot_rho, Chamber, EvalOptions, PositionPoint, Representation, SpectralPoint,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    DoubleSine,
    Limits,
    Duality,
    ZeroPoint,
    EigenDifferential,
    EigenDifference,
    Baxter,
    DualBaxter,
    Barnes,
    Gustafson,
    KernelIdentity,
    HypergeomIdentity,
    Commutativity,
    Asymptotics,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::DoubleSine,
        Suite::Limits,
        Suite::Duality,
        Suite::ZeroPoint,
        Suite::EigenDifferential,
        Suite::EigenDifference,
        Suite::Baxter,
        Suite::DualBaxter,
        Suite::Barnes,
        Suite::Gustafson,
        Suite::KernelIdentity,
        Suite::HypergeomIdentity,
        Suite::Commutativity,
        Suite::Asymptotics,
        Suite::Bounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DoubleSine => "double-sine",
            Suite::Limits => "limits",
            Suite::Duality => "duality",
            Suite::ZeroPoint => "zero-point",
            Suite::EigenDifferential => "eigen-differential",
            Suite::EigenDifference => "eigen-difference",
            Suite::Baxter => "baxter",
            Suite::DualBaxter => "dual-baxter",
            Suite::Barnes => "barnes",
            Suite::Gustafson => "gustafson",
            Suite::KernelIdentity => "kernel-identity",
            Suite::HypergeomIdentity => "hypergeom-identity",
            Suite::Commutativity => "commutativity",
            Suite::Asymptotics => "asymptotics",
            Suite::Bounds => "bounds",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub g: f64,
    /// Also run the slow n = 3 Mellin-Barnes duality points.
    pub include_slow: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { g: 2.0, include_slow: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    AtMost,
    AtLeast,
}

/// A scalar diagnostic compared against a bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub relation: Relation,
    pub pass: bool,
}

impl Metric {
    pub fn at_most(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Metric { name: name.into(), value, bound, relation: Relation::AtMost, pass: value <= bound }
    }

    pub fn at_least(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Metric { name: name.into(), value, bound, relation: Relation::AtLeast, pass: value >= bound }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub g: f64,
    pub pass: bool,
    pub reports: Vec<IdentityReport>,
    pub metrics: Vec<Metric>,
}

impl SuiteReport {
    fn new(suite: Suite, g: f64, reports: Vec<IdentityReport>, metrics: Vec<Metric>) -> Self {
        let pass = reports.iter().all(|r| r.pass) && metrics.iter().all(|m| m.pass);
        SuiteReport { suite, g, pass, reports, metrics }
    }

    /// Names of failing reports and metrics.
    pub fn failures(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in self.reports.iter().filter(|r| !r.pass) {
            for (k, c) in r.cases.iter().enumerate().filter(|(_, c)| c.rel_diff > r.tolerance) {
                out.push(format!("{} case {k}: rel_diff {:.3e} > {:e}; inputs {}", r.name, c.rel_diff, r.tolerance, c.inputs));
            }
        }
        for m in self.metrics.iter().filter(|m| !m.pass) {
            let op = if m.relation == Relation::AtMost { "≤" } else { "≥" };
            out.push(format!("{}: {:.6e} not {op} {:e}", m.name, m.value, m.bound));
        }
        out
    }
}

/// Runs one suite at coupling `cfg.g`.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let g = cfg.g;
    Coupling::new(g)?;
    let (reports, metrics) = match suite {
        Suite::DoubleSine => double_sine_suite(g)?,
        Suite::Limits => limits_suite(g)?,
        Suite::Duality => duality_suite(g, cfg.include_slow)?,
        Suite::ZeroPoint => zero_point_suite(g)?,
        Suite::EigenDifferential => eigen_differential_suite(g)?,
        Suite::EigenDifference => eigen_difference_suite(g)?,
        Suite::Baxter => baxter_suite(g)?,
        Suite::DualBaxter => dual_baxter_suite(g)?,
        Suite::Barnes => barnes_suite(g)?,
        Suite::Gustafson => gustafson_suite(g)?,
        Suite::KernelIdentity => (kernel_identity_suite()?, vec![]),
        Suite::HypergeomIdentity => (hypergeom_suite()?, vec![]),
        Suite::Commutativity => (commutativity_suite(g)?, vec![]),
        Suite::Asymptotics => asymptotics_suite(g)?,
        Suite::Bounds => bounds_suite(g)?,
    };
    Ok(SuiteReport::new(suite, g, reports, metrics))
}

type Parts = (Vec<IdentityReport>, Vec<Metric>);

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn real(v: &[f64]) -> SpectralPoint {
    SpectralPoint(v.iter().map(|&t| C64::new(t, 0.0)).collect())
}

fn pos(v: &[f64]) -> PositionPoint {
    PositionPoint(v.to_vec())
}

/// Relative difference measured against max(|lhs|, |rhs|, 1).
fn unit_case(inputs: serde_json::Value, lhs: C64, rhs: C64) -> IdentityCase {
    let mut c = IdentityCase::new(inputs, lhs, rhs);
    c.rel_diff = c.abs_diff / lhs.norm().max(rhs.norm()).max(1.0);
    c
}

const DS_TOL: f64 = 1e-8;
const W2_SEQ: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

fn order_metrics(label: &str, rep: &LimitReport, metrics: &mut Vec<Metric>) {
    for f in &rep.fits {
        let name = format!("{label} {} at {}", f.quantity, f.point);
        if f.order.is_nan() {
            let worst = rep
                .records
                .iter()
                .filter(|r| r.quantity == f.quantity && r.point == f.point)
                .map(|r| r.abs_err)
                .fold(0.0, f64::max);
            metrics.push(Metric::at_most(format!("{name}: exact error"), worst, 1e-12));
            continue;
        }
        metrics.push(Metric::at_least(format!("{name}: order"), f.order, 0.9));
        let min_ratio = f.ratios.iter().copied().fold(f64::INFINITY, f64::min);
        metrics.push(Metric::at_least(format!("{name}: min error ratio"), min_ratio, 1.8));
    }
}

fn double_sine_suite(g: f64) -> Result<Parts> {
    let mut r = rng(11);
    let mut trig = Vec::new();
    let mut refl = Vec::new();
    let mut hom = Vec::new();
    let mut prod = Vec::new();
    for k in 0..50 {
        let (w1, w2) = (r.gen_range(0.3..2.0), r.gen_range(0.3..2.0));
        let w = Periods::new(w1, w2)?;
        let z = C64::new(r.gen_range(0.02..0.98) * w.sum(), r.gen_range(-1.0..1.0));
        let inputs = json!({"omega": [w1, w2], "z": [z.re, z.im]});
        let s = s2(z, w)?;
        trig.push(unit_case(inputs.clone(), s / s2(z + w1, w)?, 2.0 * sin_pi(z / w2)));
        trig.push(unit_case(inputs.clone(), s / s2(z + w2, w)?, 2.0 * sin_pi(z / w1)));
        refl.push(unit_case(inputs.clone(), s * s2(w.sum() - z, w)?, C64::new(1.0, 0.0)));
        let c = [0.5, 2.0, PI][k % 3];
        hom.push(unit_case(json!({"omega": [w1, w2], "z": [z.re, z.im], "c": c}), s2(z * c, Periods::new(c * w1, c * w2)?)?, s));
        prod.push(unit_case(inputs, s / s2(w.sum() + z, w)?, -4.0 * sin_pi(z / w1) * sin_pi(z / w2)));
    }
    let reports = vec![
        IdentityReport::new("functional-equations", trig, DS_TOL),
        IdentityReport::new("reflection", refl, DS_TOL),
        IdentityReport::new("homogeneity", hom, DS_TOL),
        IdentityReport::new("product", prod, DS_TOL),
    ];
    let gl = gamma_limit_check(&[0.3, 0.5, 0.75, 1.0, 1.6, 2.2], 1.0, &W2_SEQ, 0.3, g)?;
    let mut metrics = Vec::new();
    order_metrics("gamma limit", &gl, &mut metrics);
    Ok((reports, metrics))
}

fn limits_suite(g: f64) -> Result<Parts> {
    let rep = limit_check_pointwise(&[0.0, 0.7, 1.5], &W2_SEQ, g)?;
    let mut metrics = Vec::new();
    let mut trimmed = rep.clone();
    // μ vanishes identically at x = 0 for every ω₂, so there is no trend to fit.
    trimmed.fits.retain(|f| !(f.quantity == "mu" && f.point == 0.0));
    order_metrics("pointwise limit", &trimmed, &mut metrics);
    let mu0 = rep.records.iter().filter(|r| r.quantity == "mu" && r.point == 0.0).map(|r| r.lhs.norm()).fold(0.0, f64::max);
    metrics.push(Metric::at_most("pointwise limit mu at 0: value", mu0, 0.0));
    Ok((vec![], metrics))
}

/// Points used for the n = 2 duality grid.
pub const DUALITY_LAMBDA: [[f64; 2]; 5] = [[0.3, -0.2], [0.5, -0.5], [0.1, 0.8], [1.2, -0.4], [-0.7, 0.25]];
pub const DUALITY_X: [[f64; 2]; 5] = [[0.0, 0.0], [0.4, -0.1], [1.0, 0.0], [-0.5, 0.7], [2.0, 0.5]];
pub const DUALITY_N3: [([f64; 3], [f64; 3]); 3] = [
    ([0.3, 0.0, -0.4], [0.2, 0.0, -0.3]),
    ([0.6, -0.1, -0.5], [0.5, 0.1, -0.2]),
    ([0.2, -0.35, 0.9], [-0.3, 0.4, 0.0]),
];

fn duality_suite(g: f64, include_slow: bool) -> Result<Parts> {
    Coupling::new(g)?.above(1.0)?;
    let spec = QuadSpec::rel(1e-10);
    let mut cases = Vec::new();
    for l in &DUALITY_LAMBDA {
        for x in &DUALITY_X {
            let (lam, xp) = (real(l), pos(x));
            let e = euler_psi(&lam, &xp, g, &spec)?.value;
            let m = mb_psi(&lam, &xp, g, &spec)?.value;
            cases.push(IdentityCase::new(json!({"lambda": l, "x": x}), e, m));
        }
    }
    let mut reports = vec![IdentityReport::new("duality-2", cases, 1e-6)];
    if include_slow {
        let mut cases = Vec::new();
        for (l, x) in &DUALITY_N3 {
            let (lam, xp) = (real(l), pos(x));
            let e = euler_psi(&lam, &xp, g, &QuadSpec::rel(1e-6))?.value;
            let m = mb_psi(&lam, &xp, g, &QuadSpec::rel(1e-5))?.value;
            cases.push(IdentityCase::new(json!({"lambda": l, "x": x}), e, m));
        }
        reports.push(IdentityReport::new("duality-3", cases, 1e-3));
    }
    let mut metrics = Vec::new();
    let lam = real(&[0.3, -0.2]);
    for d in [0.5, 1.0, 2.0] {
        let x = pos(&[d, 0.0]);
        let (s, _) = hc_psi_symmetrized_auto(&lam, &x, g, 1e-12, 200)?;
        let m = mb_psi(&lam, &x, g, &QuadSpec::rel(1e-11))?;
        let rel = (s.value - m.value).norm() / m.value.norm();
        let bound = (s.abs_err / s.value.norm()).max(1e-7);
        metrics.push(Metric::at_most(format!("series vs mb at x12={d}"), rel, bound));
    }
    Ok((reports, metrics))
}

/// Real λ of length n with entries in [−1.5, 1.5] and pairwise gaps ≥ `gap`.
pub fn random_gapped(r: &mut ChaCha8Rng, n: usize, gap: f64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| r.gen_range(-1.5..1.5)).collect();
        let ok = (0..n).all(|i| (i + 1..n).all(|j| (v[i] - v[j]).abs() >= gap));
        if ok {
            return v;
        }
    }
}

fn zero_point_suite(g: f64) -> Result<Parts> {
    Coupling::new(g)?.above(1.0)?;
    let mut r = rng(23);
    let mut reports = Vec::new();
    for (n, tol, es, ms) in [(2usize, 1e-8, 1e-11, 1e-11), (3, 1e-4, 1e-6, 1e-5)] {
        let mut cases = Vec::new();
        for _ in 0..10 {
            let l = random_gapped(&mut r, n, 0.2);
            let lam = real(&l);
            let x = PositionPoint::zero(n);
            let z = psi_zero(&lam, g)?;
            let e = euler_psi(&lam, &x, g, &QuadSpec::rel(es))?.value;
            let m = mb_psi(&lam, &x, g, &QuadSpec::rel(ms))?.value;
            cases.push(IdentityCase::new(json!({"rep": "euler", "lambda": l}), e, z));
            cases.push(IdentityCase::new(json!({"rep": "mb", "lambda": l}), m, z));
        }
        reports.push(IdentityReport::new(format!("zero-point-{n}"), cases, tol));
    }
    Ok((reports, vec![]))
}

/// Generic n = 2 points (λ, x) used by the eigen-equation suites.
pub const EIGEN_POINTS: [([f64; 2], [f64; 2]); 5] = [
    ([0.5, -0.3], [0.8, 0.0]),
    ([0.4, -0.4], [0.6, 0.0]),
    ([0.25, 0.7], [0.3, -0.45]),
    ([-0.6, 0.15], [1.2, 0.4]),
    ([0.9, -0.05], [-0.2, 0.55]),
];

fn residual_case(inputs: serde_json::Value, e: crate::operators::EigenResidual) -> IdentityCase {
    IdentityCase::new(inputs, e.lhs, e.rhs)
}

fn eigen_differential_suite(g: f64) -> Result<Parts> {
    let spec = QuadSpec::rel(1e-8);
    let st = FDStencil::default();
    let mut cases = Vec::new();
    for (l, x) in &EIGEN_POINTS {
        let e = apply_cs_hamiltonian(&real(l), &pos(x), g, &st, &spec)?;
        cases.push(residual_case(json!({"lambda": l, "x": x}), e));
    }
    let (l, x) = EIGEN_POINTS[0];
    let rich = cs_hamiltonian_richardson(&real(&l), &pos(&x), g, &FDStencil::new(5, 0.04)?, &QuadSpec::rel(1e-10))?;
    let metrics = vec![Metric::at_least("richardson ratio h=0.04/0.02", rich.ratio, 8.0)];
    let kf1 = kernel_function_identity_check(1, &[0.9, 0.0], &[0.4, -0.5], g, &st)?;
    let kf2 = kernel_function_identity_check(2, &[0.9, 0.0], &[0.4, -0.5], g, &st)?;
    Ok((vec![IdentityReport::new("hamiltonian", cases, 1e-4), kf1, kf2], metrics))
}

fn eigen_difference_suite(g: f64) -> Result<Parts> {
    let spec = QuadSpec::rel(1e-9);
    let mut mac = Vec::new();
    let mut dual = Vec::new();
    for r in [1usize, 2] {
        for (l, x) in &EIGEN_POINTS {
            let (lam, xp) = (real(l), pos(x));
            let inputs = json!({"r": r, "lambda": l, "x": x});
            mac.push(residual_case(inputs.clone(), apply_macdonald_rational(r, &lam, &xp, g, &spec)?));
            dual.push(residual_case(inputs, apply_dual_difference_hr(r, &lam, &xp, g, &spec)?));
        }
    }
    Ok((vec![IdentityReport::new("macdonald", mac, 1e-4), IdentityReport::new("dual-difference", dual, 1e-4)], vec![]))
}

fn sweep(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect()
}

fn baxter_suite(g: f64) -> Result<Parts> {
    let im = 0.2 * g.min(1.0);
    let mut one = Vec::new();
    for b in sweep(-1.0, 1.0, 9) {
        let lb = C64::new(b, if one.len() % 2 == 1 { im } else { 0.0 });
        let e = apply_baxter(lb, &real(&[0.4]), &pos(&[0.3]), g, &QuadSpec::rel(1e-11))?;
        one.push(residual_case(json!({"lambda_b": [lb.re, lb.im], "lambda": [0.4], "x": [0.3]}), e));
    }
    let mut two = Vec::new();
    for b in sweep(-1.0, 1.0, 9) {
        let lb = C64::new(b, 0.0);
        let e = apply_baxter(lb, &real(&[0.3, -0.3]), &pos(&[0.5, 0.0]), g, &QuadSpec::rel(1e-6))?;
        two.push(residual_case(json!({"lambda_b": [lb.re, lb.im], "lambda": [0.3, -0.3], "x": [0.5, 0.0]}), e));
    }
    Ok((vec![IdentityReport::new("baxter-1", one, 1e-8), IdentityReport::new("baxter-2", two, 1e-4)], vec![]))
}

fn dual_baxter_suite(g: f64) -> Result<Parts> {
    Coupling::new(g)?.above(1.0)?;
    let mut one = Vec::new();
    for xb in sweep(-1.0, 1.0, 9) {
        let e = apply_dual_baxter(xb, &real(&[0.4]), &pos(&[0.3]), g, &QuadSpec::rel(1e-11))?;
        one.push(residual_case(json!({"x_b": xb, "lambda": [0.4], "x": [0.3]}), e));
    }
    let mut two = Vec::new();
    for xb in sweep(-0.4, 0.4, 9) {
        let e = apply_dual_baxter(xb, &real(&[0.5, -0.5]), &pos(&[0.4, 0.0]), g, &QuadSpec::rel(1e-5))?;
        two.push(residual_case(json!({"x_b": xb, "lambda": [0.5, -0.5], "x": [0.4, 0.0]}), e));
    }
    Ok((vec![IdentityReport::new("dual-baxter-1", one, 1e-8), IdentityReport::new("dual-baxter-2", two, 1e-4)], vec![]))
}

fn barnes_suite(g: f64) -> Result<Parts> {
    let spec = QuadSpec::rel(1e-11);
    let r = |v: f64| C64::new(v, 0.0);
    let sets = [
        [r(1.0), r(1.0), r(-1.0), r(-1.0)],
        [C64::new(0.7, 0.2), C64::new(1.3, -0.4), C64::new(-0.5, 0.1), C64::new(-0.9, 0.3)],
        [r(0.25), r(2.0), C64::new(-1.5, 0.6), r(-0.3)],
    ];
    let mut parts = Vec::new();
    for s in &sets {
        parts.push(barnes_check(s[0], s[1], s[2], s[3], &spec)?);
    }
    let lam = [0.35, -0.2];
    let (a, b) = g_specialization(&lam, g);
    let spec_rep = barnes_check(a[0], a[1], b[0], b[1], &spec)?;
    let f = recursion_factor(&lam, g)?;
    let dev = (spec_rep.cases[0].rhs - f).norm() / f.norm();
    parts.push(spec_rep);
    let mut rep = IdentityReport::merge("barnes", parts);
    rep.tolerance = 1e-8;
    Ok((vec![rep], vec![Metric::at_most("g-specialized rhs vs recursion factor", dev, 1e-13)]))
}

fn gustafson_suite(g: f64) -> Result<Parts> {
    let spec = QuadSpec::rel(1e-7);
    let lam = [0.3, 0.0, -0.3];
    let (a, b) = g_specialization(&lam, g);
    let special = gustafson_check(2, &a, &b, &spec)?;
    let f = recursion_factor(&lam, g)? * 2.0;
    let dev = (special.cases[0].rhs - f).norm() / f.norm();
    let alpha = [C64::new(0.6, 0.1), C64::new(0.9, -0.2), C64::new(1.2, 0.0)];
    let beta = [C64::new(-0.7, 0.0), C64::new(-0.4, 0.3), C64::new(-1.0, -0.1)];
    let generic = gustafson_check(2, &alpha, &beta, &spec)?;
    let one = gustafson_check(1, &a[..2], &b[..2], &QuadSpec::rel(1e-11))?;
    Ok((vec![one, special, generic], vec![Metric::at_most("g-specialized rhs vs 2!·recursion factor", dev, 1e-13)]))
}

fn far_from(v: &[f64], w: &[f64], integer: bool, min: f64) -> bool {
    let dist = |d: f64| if integer { (d - d.round()).abs() } else { d.abs() };
    v.iter().all(|&a| w.iter().all(|&b| dist(a - b) >= min))
}

fn distinct(v: &[f64], integer: bool, min: f64) -> bool {
    let dist = |d: f64| if integer { (d - d.round()).abs() } else { d.abs() };
    (0..v.len()).all(|i| (i + 1..v.len()).all(|j| dist(v[i] - v[j]) >= min))
}

const MIN_DENOM: f64 = 1e-3;

fn kernel_identity_suite() -> Result<Vec<IdentityReport>> {
    let mut r = rng(31);
    let mut parts = Vec::new();
    for n in 1..=4usize {
        for k in 0..=n {
            for _ in 0..10 {
                let (z, y) = loop {
                    let z: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
                    let y: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
                    if distinct(&z, false, MIN_DENOM) && distinct(&y, false, MIN_DENOM) && far_from(&z, &y, false, MIN_DENOM) {
                        break (z, y);
                    }
                };
                let alpha = C64::new(r.gen_range(-1.5..1.5), r.gen_range(-0.5..0.5));
                let zc: Vec<C64> = z.iter().map(|&t| C64::new(t, 0.0)).collect();
                let yc: Vec<C64> = y.iter().map(|&t| C64::new(t, 0.0)).collect();
                parts.push(kernel_identity_check(n, k, &zc, &yc, alpha)?);
            }
        }
    }
    let mut rep = IdentityReport::merge("kernel-identity", parts);
    rep.tolerance = 1e-10;
    Ok(vec![rep])
}

fn hypergeom_suite() -> Result<Vec<IdentityReport>> {
    let mut r = rng(37);
    let mut parts = Vec::new();
    for n in 1..=3usize {
        for kk in 0..=4usize {
            for _ in 0..10 {
                let (x, y) = loop {
                    let x: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
                    let y: Vec<f64> = (0..n).map(|_| r.gen_range(-2.0..2.0)).collect();
                    if distinct(&x, true, MIN_DENOM) && distinct(&y, true, MIN_DENOM) && far_from(&x, &y, true, MIN_DENOM) {
                        break (x, y);
                    }
                };
                let alpha = C64::new(r.gen_range(-1.5..1.5), r.gen_range(-0.5..0.5));
                let xc: Vec<C64> = x.iter().map(|&t| C64::new(t, 0.0)).collect();
                let yc: Vec<C64> = y.iter().map(|&t| C64::new(t, 0.0)).collect();
                parts.push(rational_hypergeom_check(n, kk, &xc, &yc, alpha)?);
            }
        }
    }
    let mut rep = IdentityReport::merge("hypergeom-identity", parts);
    rep.tolerance = 1e-10;
    Ok(vec![rep])
}

fn commutativity_suite(g: f64) -> Result<Vec<IdentityReport>> {
    let im = 0.8 * g.min(1.0);
    let mut out = Vec::new();
    let z1 = [0.5, -0.2];
    for lam in [C64::new(0.3, 0.0), C64::new(0.3, 0.4 * g.min(1.0)), C64::new(-0.5, im)] {
        out.push(baxter_commutativity_check(1, &z1, lam, g, &QuadSpec::rel(1e-11))?);
    }
    let z2 = [0.5, -0.2, 0.15, 0.9];
    for lam in [C64::new(0.25, 0.0), C64::new(0.2, im)] {
        out.push(baxter_commutativity_check(2, &z2, lam, g, &QuadSpec::rel(1e-6))?);
    }
    Ok(out)
}

/// Least-squares slope of ys against xs.
pub fn regression_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Points (m, log|Φ − Φ^as| + 2πg(x,ρ)) for n = 2 with x = (m/2, −m/2).
pub fn asymptotic_profile(lam: &[f64], g: f64, ms: &[f64]) -> Result<Vec<(f64, f64)>> {
    let lam = real(lam);
    let opt = EvalOptions::new(QuadSpec::new(1e-300, 1e-14), 0);
    ms.iter()
        .map(|&m| {
            let x = pos(&[m / 2.0, -m / 2.0]);
            let phi = phi_renormalized_with(&lam, &x, g, Representation::Euler, &opt)?.phi.value;
            let asy = phi_asymptotic(&lam, &x, g, Chamber::Descending)?;
            Ok((m, (phi - asy).norm().ln() + 2.0 * PI * g * x_dot_rho(&x)))
        })
        .collect()
}

fn asymptotics_suite(g: f64) -> Result<Parts> {
    let ms = sweep(1.0, 4.0, 7);
    let prof = asymptotic_profile(&[0.3, -0.2], g, &ms)?;
    let (xs, ys): (Vec<f64>, Vec<f64>) = prof.into_iter().unzip();
    let slope = regression_slope(&xs, &ys);
    Ok((vec![], vec![Metric::at_most("asymptotic regression slope", slope, -(2.0 * PI - 0.3))]))
}

/// Supremum of the total-bound ratio over a k×k grid of λ₁₂ ∈ [0.2, 3] and x₁₂ ∈ [0, 3] at n = 2.
pub fn total_bound_sup(g: f64, k: usize) -> Result<f64> {
    let spec = QuadSpec::rel(1e-9);
    let mut sup: f64 = 0.0;
    for l in sweep(0.2, 3.0, k) {
        for t in sweep(0.0, 3.0, k) {
            let (lam, x) = (real(&[l / 2.0, -l / 2.0]), pos(&[t, 0.0]));
            let phi = phi_renormalized_with(&lam, &x, g, Representation::Euler, &EvalOptions::new(spec, 0))?.phi.value;
            let ratio = total_bound_ratio(phi, &lam, &x, g);
            if !ratio.is_finite() {
                return Err(Error::NonFinite { level: 0, at: t });
            }
            sup = sup.max(ratio);
        }
    }
    Ok(sup)
}

fn bounds_suite(g: f64) -> Result<Parts> {
    Coupling::new(g)?.above(1.0)?;
    let rep = bound_check_uniform(-5.0, 5.0, 0.1, &[0.2, 0.1, 0.05], g)?;
    let mut spread: f64 = 1.0;
    let mut drift: f64 = 0.0;
    for (row, fine) in rep.rows.iter().zip(&rep.refined) {
        for (v, l) in [(row.sup_k, rep.limit.sup_k), (row.sup_mu, rep.limit.sup_mu)] {
            spread = spread.max(v / l).max(l / v);
        }
        for (a, b) in [(row.sup_k, fine.sup_k), (row.sup_mu, fine.sup_mu)] {
            drift = drift.max((a - b).abs() / a.abs().max(b.abs()));
        }
    }
    let coarse = total_bound_sup(g, 5)?;
    let fine = total_bound_sup(g, 9)?;
    let metrics = vec![
        Metric::at_most("weighted sup / limit sup (either way)", spread, 2.0),
        Metric::at_most("weighted sup drift under refinement", drift, 0.05),
        Metric::at_most("total bound sup drift under refinement", (fine - coarse).abs() / fine, 0.1),
    ];
    Ok((vec![], metrics))
}
