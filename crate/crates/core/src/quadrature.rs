//! Adaptive Gauss-Kronrod quadrature on intervals and on the real line, and iterated
//! integration in up to three dimensions.

use std::collections::{BinaryHeap, HashMap};

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_PANELS: usize = 40_000;
const MAX_DIMS: usize = 3;

/// Accuracy policy for one integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections of an initial panel.
    pub max_depth: usize,
    /// Default exponential decay rate c of the integrand bound C e^{−c|y|} on infinite domains.
    pub tail_decay: f64,
    /// Fraction of the tolerance granted to the truncated tails.
    pub tail_safety: f64,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec { abs_tol: 1e-10, rel_tol: 1e-10, max_depth: 40, tail_decay: 0.0, tail_safety: 0.01 }
    }
}

impl QuadSpec {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        QuadSpec { abs_tol, rel_tol, ..Default::default() }
    }

    /// A purely relative tolerance.
    pub fn rel(tol: f64) -> Self {
        QuadSpec::new(0.0, tol)
    }

    pub fn with_decay(mut self, c: f64) -> Self {
        self.tail_decay = c;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let ok_tol = (self.abs_tol > 0.0 || self.rel_tol > 0.0) && self.abs_tol >= 0.0 && self.rel_tol >= 0.0;
        if !ok_tol || self.max_depth < 1 || !(self.tail_safety > 0.0) {
            return Err(Error::Domain(format!("invalid quadrature spec {self:?}")));
        }
        Ok(())
    }

    fn inner(&self) -> QuadSpec {
        QuadSpec { abs_tol: self.abs_tol / 10.0, rel_tol: self.rel_tol / 10.0, ..*self }
    }

    fn target(&self, value: C64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Value, error estimate and integrand-evaluation count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EvalResult {
    pub value: C64,
    pub abs_err: f64,
    pub n_evals: u64,
}

impl EvalResult {
    pub fn exact(value: C64) -> Self {
        EvalResult { value, abs_err: 0.0, n_evals: 1 }
    }

    /// Multiplies by an exactly known constant.
    pub fn scale(self, c: C64) -> Self {
        EvalResult { value: self.value * c, abs_err: self.abs_err * c.norm(), ..self }
    }
}

/// A finite interval or the whole real line.
#[derive(Debug, Clone, PartialEq)]
pub enum Domain {
    Interval { a: f64, b: f64, panel: f64 },
    Line(Line),
}

/// The real line, with the integrand's mass concentrated on `[lo, hi]` and decaying like
/// e^{−decay·dist(y, [lo, hi])} outside it.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub lo: f64,
    pub hi: f64,
    /// Zero means "use the spec's tail_decay".
    pub decay: f64,
    pub panel: f64,
    /// Points where the integrand is not smooth; always panel boundaries.
    pub breaks: Vec<f64>,
}

impl Domain {
    pub fn interval(a: f64, b: f64) -> Self {
        Domain::Interval { a, b, panel: (b - a).abs() }
    }

    pub fn line() -> Self {
        Domain::Line(Line { lo: 0.0, hi: 0.0, decay: 0.0, panel: 1.0, breaks: Vec::new() })
    }

    pub fn with_core(self, lo: f64, hi: f64) -> Self {
        match self {
            Domain::Line(l) => Domain::Line(Line { lo, hi, ..l }),
            d => d,
        }
    }

    pub fn with_decay(self, decay: f64) -> Self {
        match self {
            Domain::Line(l) => Domain::Line(Line { decay, ..l }),
            d => d,
        }
    }

    pub fn with_panel(self, w: f64) -> Self {
        match self {
            Domain::Line(l) => Domain::Line(Line { panel: w, ..l }),
            Domain::Interval { a, b, .. } => Domain::Interval { a, b, panel: w },
        }
    }

    pub fn with_breaks(self, breaks: Vec<f64>) -> Self {
        match self {
            Domain::Line(l) => Domain::Line(Line { breaks, ..l }),
            d => d,
        }
    }
}

/// Panel width that resolves about one period of e^{2πiλy}.
pub fn oscillation_panel(freq: f64) -> f64 {
    1f64.min(1.0 / (1.0 + freq.abs()))
}

/// Smallest R with prefactor·e^{−decay·R}/decay ≤ abs_tol·tail_safety.
pub fn truncation_radius(tail_decay: f64, tail_prefactor: f64, spec: &QuadSpec) -> f64 {
    let tau = spec.abs_tol * spec.tail_safety;
    if tail_prefactor <= 0.0 || tau <= 0.0 {
        return 0.0;
    }
    ((tail_prefactor / (tail_decay * tau)).ln() / tail_decay).max(0.0)
}

#[derive(Debug, Clone)]
struct Panel {
    a: f64,
    b: f64,
    depth: usize,
    value: C64,
    err: f64,
    prop: f64,
    floor: f64,
    /// max |f(y)|·e^{decay·dist(y, core)} over the nodes, for infinite domains.
    env: f64,
}

#[derive(Default)]
struct Neumaier {
    sum: C64,
    comp: C64,
}

impl Neumaier {
    fn add(&mut self, v: C64) {
        self.sum.re = two_sum(&mut self.comp.re, self.sum.re, v.re);
        self.sum.im = two_sum(&mut self.comp.im, self.sum.im, v.im);
    }
    fn total(&self) -> C64 {
        self.sum + self.comp
    }
}

fn two_sum(comp: &mut f64, s: f64, v: f64) -> f64 {
    let t = s + v;
    if s.abs() >= v.abs() {
        *comp += (s - t) + v;
    } else {
        *comp += (v - t) + s;
    }
    t
}

/// Integrand value together with an error bound carried from an inner integral.
type Point = (C64, f64);

/// Core interval and decay rate used to track the tail envelope.
type Envelope = Option<(f64, f64, f64)>;

fn gk15<F>(f: &mut F, a: f64, b: f64, depth: usize, level: usize, evals: &mut u64, envelope: Envelope) -> Result<Panel>
where
    F: FnMut(f64) -> Result<Point>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut fv = [C64::new(0.0, 0.0); 15];
    let mut ev = [0.0; 15];
    for (j, &x) in XGK.iter().enumerate() {
        if j == 7 {
            let (v, e) = checked(f, c, level)?;
            fv[7] = v;
            ev[7] = e;
        } else {
            let (v1, e1) = checked(f, c - h * x, level)?;
            let (v2, e2) = checked(f, c + h * x, level)?;
            fv[j] = v1;
            fv[14 - j] = v2;
            ev[j] = e1;
            ev[14 - j] = e2;
        }
    }
    *evals += 15;
    let w = |j: usize| WGK[j.min(14 - j)];
    let mut kron = C64::new(0.0, 0.0);
    let mut gauss = C64::new(0.0, 0.0);
    let mut resabs = 0.0;
    let mut prop = 0.0;
    let mut env: f64 = 0.0;
    for j in 0..15 {
        kron += fv[j] * w(j);
        resabs += w(j) * fv[j].norm();
        prop += w(j) * ev[j];
        if let Some((lo, hi, decay)) = envelope {
            let y = c + h * if j < 7 { -XGK[j] } else if j > 7 { XGK[14 - j] } else { 0.0 };
            let d = (lo - y).max(y - hi).max(0.0);
            env = env.max(fv[j].norm() * (decay * d).exp());
        }
        let m = j.min(14 - j);
        if m % 2 == 1 && m < 7 {
            gauss += fv[j] * WG[m / 2];
        }
    }
    gauss += fv[7] * WG[3];
    let mean = kron * 0.5;
    let resasc: f64 = (0..15).map(|j| w(j) * (fv[j] - mean).norm()).sum();
    let hh = h.abs();
    let mut err = ((kron - gauss) * h).norm();
    let resasc = resasc * hh;
    let resabs = resabs * hh;
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    err = err.max(floor);
    Ok(Panel { a, b, depth, value: kron * h, err, prop: prop * hh, floor, env })
}

fn checked<F>(f: &mut F, x: f64, level: usize) -> Result<Point>
where
    F: FnMut(f64) -> Result<Point>,
{
    let (v, e) = f(x)?;
    if !(v.re.is_finite() && v.im.is_finite() && e.is_finite()) {
        return Err(Error::NonFinite { level, at: x });
    }
    Ok((v, e))
}

fn split_uniform(a: f64, b: f64, width: f64, out: &mut Vec<f64>) {
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    for k in 0..n {
        out.push(a + (b - a) * k as f64 / n as f64);
    }
}

/// Breakpoints covering [a, b] with pieces no wider than `width`, honouring `breaks`.
fn cut_points(a: f64, b: f64, width: f64, breaks: &[f64]) -> Vec<f64> {
    let mut anchors = vec![a];
    let mut inner: Vec<f64> = breaks.iter().copied().filter(|&t| t > a && t < b).collect();
    inner.sort_by(|x, y| x.total_cmp(y));
    inner.dedup();
    anchors.extend(inner);
    anchors.push(b);
    let mut pts = Vec::new();
    for w in anchors.windows(2) {
        if w[1] > w[0] {
            split_uniform(w[0], w[1], width, &mut pts);
        }
    }
    pts.push(b);
    pts
}

fn core_integrate<F>(mut f: F, domain: &Domain, spec: &QuadSpec, level: usize) -> Result<EvalResult>
where
    F: FnMut(f64) -> Result<Point>,
{
    spec.validate()?;
    let mut evals = 0u64;
    let mut panels: Vec<Panel> = Vec::new();
    let tail_err;
    match domain {
        Domain::Interval { a, b, panel } => {
            if a == b {
                return Ok(EvalResult { value: C64::new(0.0, 0.0), abs_err: 0.0, n_evals: 1 });
            }
            let (lo, hi, sign) = if a < b { (*a, *b, 1.0) } else { (*b, *a, -1.0) };
            let w = if *panel > 0.0 { *panel } else { hi - lo };
            let pts = cut_points(lo, hi, w, &[]);
            for p in pts.windows(2) {
                panels.push(gk15(&mut f, p[0], p[1], 0, level, &mut evals, None)?);
            }
            let r = adapt(&mut f, panels, spec, level, &mut evals, 0.0)?;
            return Ok(EvalResult { value: r.value * sign, ..r });
        }
        Domain::Line(line) => {
            let decay = if line.decay > 0.0 { line.decay } else { spec.tail_decay };
            if !(decay > 0.0) {
                return Err(Error::Domain("infinite domain needs a positive tail decay".into()));
            }
            let width = if line.panel > 0.0 { line.panel.min(1.0) } else { 1.0 };
            let margin = (2.0 / decay).max(width);
            let (c0, c1) = (line.lo - margin, line.hi + margin);
            let pts = cut_points(c0, c1, width, &line.breaks);
            let mut core = Neumaier::default();
            let envelope = Some((line.lo, line.hi, decay));
            let mut pmax: f64 = 0.0;
            for p in pts.windows(2) {
                let pan = gk15(&mut f, p[0], p[1], 0, level, &mut evals, envelope)?;
                core.add(pan.value);
                pmax = pmax.max(pan.env);
                panels.push(pan);
            }
            let mut tau = spec.abs_tol.max(spec.rel_tol * core.total().norm());
            if tau == 0.0 {
                tau = spec.rel_tol * pmax;
            }
            let tail_spec = QuadSpec { abs_tol: tau, ..*spec };
            let r = truncation_radius(decay, pmax, &tail_spec).max(margin);
            if r > margin {
                let left = cut_points(line.lo - r, c0, width, &line.breaks);
                let right = cut_points(c1, line.hi + r, width, &line.breaks);
                for p in left.windows(2).chain(right.windows(2)) {
                    let pan = gk15(&mut f, p[0], p[1], 0, level, &mut evals, envelope)?;
                    pmax = pmax.max(pan.env);
                    panels.push(pan);
                }
            }
            tail_err = 2.0 * pmax * (-decay * r).exp() / decay;
        }
    }
    adapt(&mut f, panels, spec, level, &mut evals, tail_err)
}

fn adapt<F>(
    f: &mut F,
    mut panels: Vec<Panel>,
    spec: &QuadSpec,
    level: usize,
    evals: &mut u64,
    tail_err: f64,
) -> Result<EvalResult>
where
    F: FnMut(f64) -> Result<Point>,
{
    let mut heap: BinaryHeap<(u64, usize)> = BinaryHeap::new();
    let mut total = Neumaier::default();
    let mut err_sum = 0.0;
    for (i, p) in panels.iter().enumerate() {
        heap.push((p.err.to_bits(), usize::MAX - i));
        total.add(p.value);
        err_sum += p.err;
    }
    let mut frozen_depth = false;
    let mut live = vec![true; panels.len()];
    loop {
        let target = spec.target(total.total());
        if err_sum + tail_err <= target {
            break;
        }
        let Some((_, key)) = heap.pop() else {
            // Only frozen panels remain.
            let floor: f64 = panels.iter().zip(&live).filter(|(_, l)| **l).map(|(p, _)| p.floor).sum();
            if !frozen_depth && err_sum <= 4.0 * floor + target {
                break;
            }
            return Err(Error::DepthExceeded { level, abs_err: err_sum + tail_err, target });
        };
        let i = usize::MAX - key;
        let p = panels[i].clone();
        let mid = 0.5 * (p.a + p.b);
        let tiny = (p.b - p.a) <= 1e-13 * (1.0 + mid.abs());
        if p.err <= 2.0 * p.floor || tiny {
            continue;
        }
        if p.depth >= spec.max_depth || panels.len() >= MAX_PANELS {
            frozen_depth = true;
            continue;
        }
        let l = gk15(f, p.a, mid, p.depth + 1, level, evals, None)?;
        let r = gk15(f, mid, p.b, p.depth + 1, level, evals, None)?;
        live[i] = false;
        total.add(-p.value);
        total.add(l.value);
        total.add(r.value);
        err_sum += l.err + r.err - p.err;
        for q in [l, r] {
            heap.push((q.err.to_bits(), usize::MAX - panels.len()));
            panels.push(q);
            live.push(true);
        }
    }
    // Final pass in positional order so the result does not depend on refinement history.
    let mut order: Vec<usize> = (0..panels.len()).filter(|&i| live[i]).collect();
    order.sort_by(|&x, &y| panels[x].a.total_cmp(&panels[y].a));
    let mut acc = Neumaier::default();
    let mut err = tail_err;
    for &i in &order {
        acc.add(panels[i].value);
        err += panels[i].err + panels[i].prop;
    }
    Ok(EvalResult { value: acc.total(), abs_err: err, n_evals: (*evals).max(1) })
}

/// Integrates a complex function over an interval or the real line.
pub fn integrate_1d<F>(mut f: F, domain: &Domain, spec: &QuadSpec) -> Result<EvalResult>
where
    F: FnMut(f64) -> C64,
{
    core_integrate(|y| Ok((f(y), 0.0)), domain, spec, 0)
}

/// As [`integrate_1d`] for integrands that can fail.
pub fn try_integrate_1d<F>(mut f: F, domain: &Domain, spec: &QuadSpec) -> Result<EvalResult>
where
    F: FnMut(f64) -> Result<C64>,
{
    core_integrate(|y| Ok((f(y)?, 0.0)), domain, spec, 0)
}

/// Iterated integral ∫dy₀ w₀(y₀) ∫dy₁ w₁(y₀,y₁) ⋯ of a product of stage weights.
///
/// `domain(l, ys)` gives the domain of coordinate `l` given the outer coordinates `ys`, and
/// `stage(l, ys)` the factor that first becomes computable once `ys = (y₀,…,y_l)` are fixed.
pub fn integrate_staged<D, S>(dims: usize, domain: D, stage: S, spec: &QuadSpec) -> Result<EvalResult>
where
    D: Fn(usize, &[f64]) -> Domain,
    S: Fn(usize, &[f64]) -> Result<C64>,
{
    if dims == 0 || dims > MAX_DIMS {
        return Err(Error::Domain(format!("nested integration supports 1..=3 dimensions, got {dims}")));
    }
    let mut st = Staged { dims, domain: &domain, stage: &stage, coords: Vec::with_capacity(dims), cache: HashMap::new(), evals: 0 };
    let r = st.level(0, spec)?;
    Ok(EvalResult { n_evals: st.evals.max(1), ..r })
}

/// Iterated integral of a function of all coordinates.
pub fn integrate_nested<D, F>(dims: usize, domain: D, f: F, spec: &QuadSpec) -> Result<EvalResult>
where
    D: Fn(usize, &[f64]) -> Domain,
    F: Fn(&[f64]) -> C64,
{
    integrate_staged(dims, domain, |l, ys| Ok(if l + 1 == dims { f(ys) } else { C64::new(1.0, 0.0) }), spec)
}

struct Staged<'a, D, S> {
    dims: usize,
    domain: &'a D,
    stage: &'a S,
    coords: Vec<f64>,
    cache: HashMap<Vec<u64>, (C64, f64)>,
    evals: u64,
}

impl<D, S> Staged<'_, D, S>
where
    D: Fn(usize, &[f64]) -> Domain,
    S: Fn(usize, &[f64]) -> Result<C64>,
{
    fn level(&mut self, l: usize, spec: &QuadSpec) -> Result<EvalResult> {
        let dom = (self.domain)(l, &self.coords);
        let inner_spec = spec.inner();
        core_integrate(|y| self.point(l, y, &inner_spec), &dom, spec, l)
    }

    fn point(&mut self, l: usize, y: f64, inner_spec: &QuadSpec) -> Result<Point> {
        self.coords.push(y);
        let out = self.point_inner(l, inner_spec);
        self.coords.pop();
        out
    }

    fn point_inner(&mut self, l: usize, inner_spec: &QuadSpec) -> Result<Point> {
        self.evals += 1;
        let w = (self.stage)(l, &self.coords)?;
        if l + 1 == self.dims || w == C64::new(0.0, 0.0) {
            return Ok((w, 0.0));
        }
        let key: Vec<u64> = self.coords.iter().map(|v| v.to_bits()).collect();
        let (v, e) = match self.cache.get(&key) {
            Some(&hit) => hit,
            None => {
                let r = self.level(l + 1, inner_spec)?;
                self.cache.insert(key, (r.value, r.abs_err));
                (r.value, r.abs_err)
            }
        };
        Ok((w * v, w.norm() * e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn gaussian_normalization() {
        let r = integrate_1d(|y| C64::new((-PI * y * y).exp(), 0.0), &Domain::line().with_decay(1.0), &QuadSpec::new(1e-12, 1e-12))
            .unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn sech_fourth_power() {
        let f = |y: f64| C64::new((2.0 * (PI * y).cosh()).powi(-4), 0.0);
        let r = integrate_1d(f, &Domain::line().with_decay(4.0 * PI), &QuadSpec::new(1e-13, 1e-12)).unwrap();
        assert!((r.value.re - 1.0 / (12.0 * PI)).abs() < 1e-12, "{r:?}");
        assert!((r.value.re - 0.026_525_82).abs() < 1e-8);
    }

    #[test]
    fn fourier_of_sech_squared() {
        let f = |y: f64| C64::from_polar((2.0 * (PI * y).cosh()).powi(-2), 2.0 * PI * y);
        let d = Domain::line().with_decay(2.0 * PI).with_panel(oscillation_panel(1.0));
        let r = integrate_1d(f, &d, &QuadSpec::new(1e-12, 1e-12)).unwrap();
        let want = (PI / PI.sinh()) / (2.0 * PI);
        assert!((r.value.re - want).abs() < 1e-11 && r.value.im.abs() < 1e-11, "{r:?}");
        assert!((want - 0.043_294_7).abs() < 1e-7);
    }

    #[test]
    fn truncation_radius_examples() {
        let s = QuadSpec { abs_tol: 1e-10, tail_safety: 0.01, ..Default::default() };
        let r = truncation_radius(2.0 * PI, 1.0, &s);
        let closed = (1.0 / (1e-12 * 2.0 * PI)).ln() / (2.0 * PI);
        assert!((r - closed).abs() < 1e-12);
        assert!((r - 4.105).abs() < 1e-3);
        let r2 = truncation_radius(4.0 * PI, 1.0, &s);
        assert!(r2 < 0.55 * r && r2 > 0.45 * r);
        let r3 = truncation_radius(2.0 * PI, 1e3, &s);
        assert!((r3 - r - 1e3f64.ln() / (2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn interval_and_reversed_interval() {
        let s = QuadSpec::new(1e-14, 1e-13);
        let r = integrate_1d(|y| C64::new(y.sin(), y.cos()), &Domain::interval(0.0, 2.0), &s).unwrap();
        assert!((r.value - C64::new(1.0 - 2f64.cos(), 2f64.sin())).norm() < 1e-13);
        let q = integrate_1d(|y| C64::new(y.sin(), y.cos()), &Domain::interval(2.0, 0.0), &s).unwrap();
        assert_eq!(q.value, -r.value);
    }

    #[test]
    fn nonfinite_integrand_is_reported() {
        let e = integrate_1d(|_| C64::new(f64::NAN, 0.0), &Domain::interval(0.0, 1.0), &QuadSpec::rel(1e-8)).unwrap_err();
        assert!(matches!(e, Error::NonFinite { level: 0, .. }));
    }

    #[test]
    fn depth_exceeded_on_singular_integrand() {
        let s = QuadSpec { max_depth: 3, ..QuadSpec::new(1e-14, 1e-14) };
        let e = integrate_1d(|y| C64::new(1.0 / y.sqrt(), 0.0), &Domain::interval(0.0, 1.0), &s).unwrap_err();
        assert!(matches!(e, Error::DepthExceeded { .. }), "{e:?}");
    }

    #[test]
    fn nested_gaussian_2d() {
        let dom = |_: usize, _: &[f64]| Domain::line().with_decay(1.0);
        let r = integrate_nested(2, dom, |ys| C64::new((-PI * (ys[0] * ys[0] + ys[1] * ys[1])).exp(), 0.0), &QuadSpec::new(1e-11, 1e-10))
            .unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn nested_separable_product() {
        let f1 = |y: f64| (2.0 * (PI * y).cosh()).powi(-2);
        let f2 = |y: f64| (-(y - 0.3).powi(2)).exp();
        let spec = QuadSpec::new(1e-12, 1e-11);
        let d = Domain::line().with_decay(1.0);
        let a = integrate_1d(|y| C64::new(f1(y), 0.0), &d, &spec).unwrap();
        let b = integrate_1d(|y| C64::new(f2(y), 0.0), &d, &spec).unwrap();
        let dom = |_: usize, _: &[f64]| Domain::line().with_decay(1.0);
        let n = integrate_nested(2, dom, |ys| C64::new(f1(ys[0]) * f2(ys[1]), 0.0), &spec).unwrap();
        let bound = a.abs_err * b.value.norm() + b.abs_err * a.value.norm() + n.abs_err + 1e-14;
        assert!((n.value - a.value * b.value).norm() <= bound, "{n:?}");
    }

    #[test]
    fn nested_3d_error_tagging() {
        let dom = |l: usize, _: &[f64]| if l == 2 { Domain::interval(0.0, 1.0) } else { Domain::interval(-1.0, 1.0) };
        let e = integrate_nested(3, dom, |ys| C64::new(if ys[2] < 0.5 { f64::INFINITY } else { 1.0 }, 0.0), &QuadSpec::rel(1e-6))
            .unwrap_err();
        assert!(matches!(e, Error::NonFinite { level: 2, .. }), "{e:?}");
        assert!(integrate_nested(4, dom, |_| C64::new(1.0, 0.0), &QuadSpec::rel(1e-6)).is_err());
    }

    #[test]
    fn deterministic_results() {
        let f = |y: f64| C64::from_polar((2.0 * (PI * y).cosh()).powi(-3), 2.0 * PI * 1.7 * y);
        let d = Domain::line().with_decay(3.0 * PI).with_panel(oscillation_panel(1.7));
        let s = QuadSpec::new(1e-13, 1e-12);
        let a = integrate_1d(f, &d, &s).unwrap();
        let b = integrate_1d(f, &d, &s).unwrap();
        assert_eq!(a.value.re.to_bits(), b.value.re.to_bits());
        assert_eq!(a.value.im.to_bits(), b.value.im.to_bits());
        assert_eq!(a.abs_err.to_bits(), b.abs_err.to_bits());
    }
}
