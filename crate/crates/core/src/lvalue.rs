//! Central values of `L(s, f × g)` by a smoothed approximate functional equation.
//!
//! Analytic normalization: `L(s, f × g) = Σ b(n) n^{−s}` with
//! `b(n) = Σ_{d² | n} χ(d) a_f(m) a_g(m) m^{−(2κ+1/2)}`, `m = n/d²`.
//! With `γ(s) = Γ_C(s+1/2) Γ_C(s+2κ+1/2)` and `Λ'(s) = D^s γ(s) L(s)`,
//! `Λ'(s) = w Λ̃'(1−s)` where `L̃` has coefficients `conj(b(n))` and
//! `w = −D^{2κ} / a_f(D)²`. For an even regulator `φ` with `φ(0) = 1`,
//!
//! ```text
//! Λ'(s) = D^s Σ b(n) n^{−s} H_s(n/D) + w D^{1−s} Σ conj(b(n)) n^{s−1} H_{1−s}(n/D),
//! H_s(x) = (1/2πi) ∫_{Re u = c} γ(s+u) φ(u) x^{−u} du/u,
//! ```
//!
//! and `H_s` is evaluated by the trapezoid rule on `u = c + it`, `|t| ≤ T`.

use crate::chartools::{kronecker, FundamentalDiscriminant};
use crate::error::{Error, Result};
use crate::quadfield::l1_class_number_formula;
use crate::special::ln_gamma_c;
use num_complex::Complex64;
use serde::Serialize;

/// Dirichlet coefficients of `L(s, f × g)`; index `n` holds `b(n)`.
#[derive(Debug, Clone)]
pub struct RankinSeries {
    pub disc: FundamentalDiscriminant,
    pub kappa: u32,
    b: Vec<Complex64>,
}

/// `f[n] = a_f(n)`, `g[n] = a_g(n)`; both indexed from 0 with unused slot 0.
pub fn rankin_coefficients(
    disc: &FundamentalDiscriminant,
    kappa: u32,
    f: &[Complex64],
    g: &[f64],
    n_max: usize,
) -> Result<RankinSeries> {
    let available = f.len().min(g.len()).saturating_sub(1);
    if n_max > available {
        return Err(Error::InsufficientCoefficients {
            needed: n_max as u64,
            available: available as u64,
        });
    }
    let weight = f64::from(2 * kappa) + 0.5;
    let normalized: Vec<Complex64> = (0..=n_max)
        .map(|m| {
            if m == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                f[m] * g[m] / (m as f64).powf(weight)
            }
        })
        .collect();
    let mut b = vec![Complex64::new(0.0, 0.0); n_max + 1];
    let mut d = 1usize;
    while d * d <= n_max {
        let chi = kronecker(disc, d as i64);
        if chi != 0 {
            let mut m = 1;
            while m * d * d <= n_max {
                b[m * d * d] += f64::from(chi) * normalized[m];
                m += 1;
            }
        }
        d += 1;
    }
    Ok(RankinSeries {
        disc: disc.clone(),
        kappa,
        b,
    })
}

impl RankinSeries {
    pub fn n_max(&self) -> usize {
        self.b.len().saturating_sub(1)
    }

    pub fn b(&self, n: usize) -> Complex64 {
        self.b[n]
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.b
    }

    /// Coefficients of `L(s, f × g × χ) = conj(L(conj s, f × g))`.
    pub fn dual(&self) -> Self {
        Self {
            b: self.b.iter().map(|z| z.conj()).collect(),
            ..self.clone()
        }
    }
}

/// `log γ(s)`.
pub fn ln_gamma_factor(kappa: u32, s: Complex64) -> Complex64 {
    ln_gamma_c(s + 0.5) + ln_gamma_c(s + f64::from(2 * kappa) + 0.5)
}

/// `γ(s) = Γ_C(s+1/2) Γ_C(s+2κ+1/2)`.
pub fn gamma_factor(kappa: u32, s: Complex64) -> Complex64 {
    ln_gamma_factor(kappa, s).exp()
}

pub const ROOT_NUMBER_TOL: f64 = 1e-8;

/// `w = −D^{2κ}/a_f(D)²`, rescaled to modulus one after checking `|w| ≈ 1`.
pub fn root_number(disc: &FundamentalDiscriminant, kappa: u32, a_d: Complex64) -> Result<Complex64> {
    let d = disc.value() as f64;
    let normalized = a_d / d.powi(kappa as i32);
    let w = -1.0 / (normalized * normalized);
    if (w.norm() - 1.0).abs() > ROOT_NUMBER_TOL {
        return Err(Error::NonUnitRootNumber(w.norm()));
    }
    Ok(w / w.norm())
}

/// Parameters of the approximate functional equation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AfeConfig {
    /// Abscissa `c > 0` of the contour.
    pub abscissa: f64,
    /// `β` in the regulator `φ(u) = e^{βu²}`.
    pub regulator: f64,
    /// Trapezoid step `h` in `t`.
    pub step: f64,
    /// Truncation `T` of the contour.
    pub half_width: f64,
    /// Number of terms; chosen from the tail bound when `None`.
    pub n_terms: Option<usize>,
    /// Target absolute error.
    pub tol: f64,
}

impl Default for AfeConfig {
    fn default() -> Self {
        Self {
            abscissa: 1.5,
            regulator: 0.0,
            step: 0.125,
            half_width: 32.0,
            n_terms: None,
            tol: 1e-10,
        }
    }
}

/// `H_s(x)` on the trapezoid nodes: `H_s(x) = Σ_j k_j x^{−u_j}`.
struct Kernel {
    nodes: Vec<Complex64>,
    weights: Vec<Complex64>,
}

impl Kernel {
    fn new(kappa: u32, s: f64, cfg: &AfeConfig, abscissa: f64) -> Self {
        let count = (cfg.half_width / cfg.step).round() as i64;
        let mut nodes = Vec::with_capacity(2 * count as usize + 1);
        let mut weights = Vec::with_capacity(2 * count as usize + 1);
        for j in -count..=count {
            let u = Complex64::new(abscissa, j as f64 * cfg.step);
            let log = ln_gamma_factor(kappa, u + s) + cfg.regulator * u * u;
            nodes.push(u);
            // du/(2πi) = dt/(2π)
            weights.push(log.exp() / u * (cfg.step / (2.0 * std::f64::consts::PI)));
        }
        Self { nodes, weights }
    }

    fn eval(&self, log_x: f64) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(u, k)| k * (-u * log_x).exp())
            .sum()
    }

    /// The same sum on every other node, i.e. step `2h`.
    fn eval_coarse(&self, log_x: f64) -> Complex64 {
        let mid = self.nodes.len() / 2;
        self.nodes
            .iter()
            .zip(&self.weights)
            .enumerate()
            .filter(|(j, _)| (j + mid) % 2 == 0)
            .map(|(_, (u, k))| 2.0 * k * (-u * log_x).exp())
            .sum()
    }

    /// `(1/2π) ∫ |γ(s+u) φ(u)/u| dt`, so that `|H_s(x)| ≤ M x^{−Re u}`.
    fn modulus_bound(&self) -> f64 {
        self.weights.iter().map(|k| k.norm()).sum()
    }

    /// `|integrand|` at the ends of the contour.
    fn edge(&self) -> f64 {
        let first = self.weights.first().map_or(0.0, |k| k.norm());
        let last = self.weights.last().map_or(0.0, |k| k.norm());
        first.max(last)
    }
}

/// `Σ_{n>N} 8 n^{3/2} n^{−s} M(σ) (n/D)^{−σ}`, minimized over a grid of `σ`,
/// using `|b(n)| ≤ d(n)³ ≤ 8 n^{3/2}`.
fn tail_bound(bounds: &[(f64, f64)], d: f64, s: f64, n: usize) -> f64 {
    bounds
        .iter()
        .filter_map(|&(sigma, m)| {
            let e = sigma + s - 1.5;
            (e > 1.0).then(|| 8.0 * m * d.powf(sigma) * (n as f64).powf(1.0 - e) / (e - 1.0))
        })
        .fold(f64::INFINITY, f64::min)
}

const SIGMA_GRID: std::ops::RangeInclusive<u32> = 3..=80;
const MAX_SCAN_FACTOR: usize = 100;

/// One side `Σ_{n ≤ N} b(n) n^{−s} H_s(n/D)` at step `h` and `2h`.
fn partial_sums(b: &[Complex64], d: f64, s: f64, kernel: &Kernel, n: usize) -> (Complex64, Complex64) {
    let mut fine = Complex64::new(0.0, 0.0);
    let mut coarse = Complex64::new(0.0, 0.0);
    for (k, bk) in b.iter().enumerate().take(n + 1).skip(1) {
        let log_x = (k as f64 / d).ln();
        let scale = bk * (k as f64).powf(-s);
        fine += scale * kernel.eval(log_x);
        coarse += scale * kernel.eval_coarse(log_x);
    }
    (fine, coarse)
}

/// `Λ'(s)` for real `s` with its error estimate.
#[derive(Debug, Clone, Copy)]
pub struct CompletedValue {
    pub s: f64,
    pub value: Complex64,
    pub primal_sum: Complex64,
    pub dual_sum: Complex64,
    pub error_estimate: f64,
    pub n_terms: usize,
    pub tail_bound: f64,
    pub step_difference: f64,
}

pub fn completed_value(
    series: &RankinSeries,
    w: Complex64,
    s: f64,
    cfg: &AfeConfig,
) -> Result<CompletedValue> {
    let d = series.disc.value() as f64;
    let kappa = series.kappa;
    let primal = Kernel::new(kappa, s, cfg, cfg.abscissa);
    let dual = Kernel::new(kappa, 1.0 - s, cfg, cfg.abscissa);
    let bounds = |sh: f64| -> Vec<(f64, f64)> {
        SIGMA_GRID
            .map(|sigma| {
                let sigma = f64::from(sigma);
                (sigma, Kernel::new(kappa, sh, cfg, sigma).modulus_bound())
            })
            .collect()
    };
    let (bp, bd) = (bounds(s), bounds(1.0 - s));
    let total_tail = |n: usize| {
        d.powf(s) * tail_bound(&bp, d, s, n) + d.powf(1.0 - s) * tail_bound(&bd, d, 1.0 - s, n)
    };
    let scale = ln_gamma_factor(kappa, Complex64::new(s, 0.0)).exp().norm() * d.powf(s);
    let target = 0.1 * cfg.tol * scale;
    let available = series.n_max();
    let n = match cfg.n_terms {
        Some(n) if n > available => {
            return Err(Error::TailBoundUnattainable {
                needed: n as u64,
                available: available as u64,
            })
        }
        Some(n) => n,
        None => match (1..=available).find(|&n| total_tail(n) < target) {
            Some(n) => n,
            None => {
                let needed = (available..=MAX_SCAN_FACTOR * available.max(1))
                    .find(|&n| total_tail(n) < target)
                    .unwrap_or(MAX_SCAN_FACTOR * available.max(1));
                return Err(Error::TailBoundUnattainable {
                    needed: needed as u64,
                    available: available as u64,
                });
            }
        },
    };
    let dual_series = series.dual();
    let (p_fine, p_coarse) = partial_sums(series.coefficients(), d, s, &primal, n);
    let (d_fine, d_coarse) = partial_sums(dual_series.coefficients(), d, 1.0 - s, &dual, n);
    let value = d.powf(s) * p_fine + w * d.powf(1.0 - s) * d_fine;
    let coarse = d.powf(s) * p_coarse + w * d.powf(1.0 - s) * d_coarse;
    let step_difference = (value - coarse).norm();
    let tail = total_tail(n);
    // beyond |t| > T the integrand decays at least like e^{−π|t|}
    let abs_sum: f64 = series.coefficients()[1..=n]
        .iter()
        .enumerate()
        .map(|(k, b)| b.norm() * ((k + 1) as f64 / d).powf(-cfg.abscissa))
        .sum();
    let truncation = abs_sum * (primal.edge() + dual.edge()) / cfg.step / std::f64::consts::PI
        * d.powf(s.max(1.0 - s));
    Ok(CompletedValue {
        s,
        value,
        primal_sum: p_fine,
        dual_sum: d_fine,
        error_estimate: step_difference + tail + truncation,
        n_terms: n,
        tail_bound: tail,
        step_difference,
    })
}

/// The central value with its diagnostics.
#[derive(Debug, Clone)]
pub struct LCentralReport {
    pub value: Complex64,
    pub error_estimate: f64,
    pub root_number: Complex64,
    /// `Σ b(n) n^{−1/2} H(n/D)` and `Σ conj(b(n)) n^{−1/2} H(n/D)`.
    pub primal_sum: Complex64,
    pub dual_sum: Complex64,
    pub gamma_half: f64,
    pub n_terms: usize,
    pub tail_bound: f64,
    pub step_difference: f64,
    pub config: AfeConfig,
}

pub fn central_value(series: &RankinSeries, w: Complex64, cfg: &AfeConfig) -> Result<LCentralReport> {
    let c = completed_value(series, w, 0.5, cfg)?;
    let gamma_half = gamma_factor(series.kappa, Complex64::new(0.5, 0.0)).re;
    let norm = (series.disc.value() as f64).sqrt() * gamma_half;
    let estimate = c.error_estimate / norm;
    if estimate > cfg.tol {
        return Err(Error::ToleranceUnreachable {
            tol: cfg.tol,
            estimate,
        });
    }
    Ok(LCentralReport {
        value: c.value / norm,
        error_estimate: estimate,
        root_number: w,
        primal_sum: c.primal_sum / gamma_half,
        dual_sum: c.dual_sum / gamma_half,
        gamma_half,
        n_terms: c.n_terms,
        tail_bound: c.tail_bound / norm,
        step_difference: c.step_difference / norm,
        config: *cfg,
    })
}

/// Regulator exponent for the independent side of the functional-equation check.
pub const FE_CHECK_REGULATOR: f64 = 0.02;

/// `|Λ'(s) − w Λ̃'(1−s)| / |Λ'(s)|` with the two sides computed from different
/// regulators, so agreement tests the functional equation itself.
pub fn functional_equation_residual(
    series: &RankinSeries,
    w: Complex64,
    s: f64,
    cfg: &AfeConfig,
) -> Result<f64> {
    let lhs = completed_value(series, w, s, cfg)?.value;
    let other = AfeConfig {
        regulator: FE_CHECK_REGULATOR,
        ..*cfg
    };
    let rhs = completed_value(&series.dual(), w.conj(), 1.0 - s, &other)?.value;
    Ok((lhs - w * rhs).norm() / lhs.norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum L1Method {
    Formula,
    Series,
}

const L1_BLOCKS: usize = 64;
/// `B_{2j}/(2j)!` for `j = 1..=6`.
const EULER_MACLAURIN: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
];

/// `L(1, χ)` by the class number formula, or by summing `Σ χ(n)/n` in blocks of one
/// period with an Euler–Maclaurin tail.
pub fn dirichlet_l1(disc: &FundamentalDiscriminant, method: L1Method) -> f64 {
    match method {
        L1Method::Formula => l1_class_number_formula(disc),
        L1Method::Series => {
            let d = disc.value() as usize;
            let chi: Vec<f64> = (0..=d).map(|r| f64::from(kronecker(disc, r as i64))).collect();
            let df = d as f64;
            // F(k) = Σ_r χ(r)/(kD + r)
            let block = |k: f64, deriv: u32| -> f64 {
                let mut fact = 1.0;
                for i in 1..=deriv {
                    fact *= f64::from(i);
                }
                let sign = if deriv % 2 == 0 { 1.0 } else { -1.0 };
                (1..=d)
                    .map(|r| chi[r] / (k * df + r as f64).powi(deriv as i32 + 1))
                    .sum::<f64>()
                    * sign
                    * fact
                    * df.powi(deriv as i32)
            };
            let head: f64 = (0..L1_BLOCKS).map(|k| block(k as f64, 0)).sum();
            let k = L1_BLOCKS as f64;
            let integral = -(1..=d)
                .map(|r| chi[r] * (k * df + r as f64).ln())
                .sum::<f64>()
                / df;
            let corrections: f64 = EULER_MACLAURIN
                .iter()
                .enumerate()
                .map(|(j, c)| c * block(k, 2 * j as u32 + 1))
                .sum();
            head + integral + 0.5 * block(k, 0) - corrections
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenforms::{ingest_newform, level1_eigenform, NewformSeries, NewformSource};
    use crate::quadfield::class_group;
    use std::f64::consts::PI;

    fn setup(label: &'static str, n_max: usize) -> (NewformSeries, RankinSeries, Complex64) {
        let f = ingest_newform(&NewformSource::Bundled(label)).unwrap();
        let g = level1_eigenform(12, n_max).unwrap();
        let series = rankin_coefficients(&f.disc, 5, f.complex_values(), &g.values_f64(), n_max).unwrap();
        let d = f.disc.value() as usize;
        let w = root_number(&f.disc, 5, f.a(d).unwrap()).unwrap();
        (f, series, w)
    }

    #[test]
    fn rankin_coefficient_examples() {
        let (f, s, _) = setup("3.11.quadratic.a", 50);
        assert_eq!(s.b(1), Complex64::new(1.0, 0.0));
        let b2 = f.a(2).unwrap() * -24.0 * 2f64.powf(-10.5);
        assert!((s.b(2) - b2).norm() < 1e-14);
        // b(4) = a_f(4) a_g(4) 4^{−21/2} + χ(2)
        let b4 = f.a(4).unwrap() * (-1472.0) * 4f64.powf(-10.5) - 1.0;
        assert!((s.b(4) - b4).norm() < 1e-14);
        for p in crate::arith::primes_up_to(50) {
            assert!(s.b(p as usize).norm() <= 4.0 + 1e-6);
        }
    }

    /// `∏_{i,j} (1 − α_i β_j X)^{−1}` expanded to `X^k`, from Satake parameters.
    fn euler_factor(alphas: &[Complex64], betas: &[Complex64], k: usize) -> Vec<Complex64> {
        let mut series = vec![Complex64::new(0.0, 0.0); k + 1];
        series[0] = Complex64::new(1.0, 0.0);
        for a in alphas {
            for b in betas {
                let r = a * b;
                let geometric: Vec<Complex64> = (0..=k).map(|i| r.powu(i as u32)).collect();
                let mut next = vec![Complex64::new(0.0, 0.0); k + 1];
                for i in 0..=k {
                    for j in 0..=k - i {
                        next[i + j] += series[i] * geometric[j];
                    }
                }
                series = next;
            }
        }
        series
    }

    fn quadratic_roots(trace: Complex64, det: Complex64) -> [Complex64; 2] {
        let disc = (trace * trace - 4.0 * det).sqrt();
        [(trace + disc) / 2.0, (trace - disc) / 2.0]
    }

    #[test]
    fn divisor_sum_matches_euler_factors() {
        for label in ["3.11.quadratic.a", "15.11.quadratic.deg16"] {
            let (f, s, _) = setup(label, 20);
            let g = level1_eigenform(12, 20).unwrap();
            for p in [2u64, 3, 5, 7] {
                let pf = p as f64;
                let chi = kronecker(&f.disc, p as i64);
                let ap = f.a(p as usize).unwrap() / pf.powi(5);
                let alphas: Vec<Complex64> = if chi == 0 {
                    vec![ap]
                } else {
                    quadratic_roots(ap, Complex64::new(f64::from(chi), 0.0)).to_vec()
                };
                let bp = g.a_f64(p as usize).unwrap() / pf.powf(5.5);
                let betas = quadratic_roots(Complex64::new(bp, 0.0), Complex64::new(1.0, 0.0));
                let mut k = 1;
                while p.pow(k as u32) <= 16 {
                    k += 1;
                }
                let local = euler_factor(&alphas, &betas, k - 1);
                for (e, expect) in local.iter().enumerate().skip(1) {
                    let got = s.b(p.pow(e as u32) as usize);
                    assert!(
                        (got - expect).norm() < 1e-9 * expect.norm().max(1.0),
                        "{label} p={p} e={e}: {got} vs {expect}"
                    );
                }
            }
        }
    }

    #[test]
    fn gamma_factor_values() {
        let fact10: f64 = (1..=10).map(f64::from).product();
        let expect = 4.0 * (2.0 * PI).powi(-12) * fact10;
        let g = gamma_factor(5, Complex64::new(0.5, 0.0));
        assert!((g.re / expect - 1.0).abs() < 1e-13);
        let mut last = f64::INFINITY;
        for i in 0..=50 {
            let v = gamma_factor(5, Complex64::new(0.5, i as f64 * 0.1)).norm();
            assert!(v <= last);
            last = v;
        }
    }

    #[test]
    fn root_numbers_have_modulus_one() {
        let (f, _, w) = setup("3.11.quadratic.a", 10);
        assert!((w.norm() - 1.0).abs() < 1e-15);
        assert!(((w * w.conj()).re - 1.0).abs() < 1e-15);
        let a3 = f.a(3).unwrap();
        let raw = -(3f64.powi(10)) / (a3 * a3);
        assert!((raw - w).norm() < 1e-12);
        assert!(root_number(&f.disc, 5, a3 * 1.01).is_err());
    }

    #[test]
    fn central_values_for_d3_and_d15() {
        let (f, s, w) = setup("3.11.quadratic.a", 400);
        let r = central_value(&s, w, &AfeConfig::default()).unwrap();
        assert!((r.value - Complex64::new(0.560_633_968_129_898_4, -0.062_680_783_161_695_18)).norm() < 1e-9, "{}", r.value);
        assert!(r.error_estimate < 1e-10);
        // a_f(D) L(1/2) is purely imaginary
        let z = f.a(3).unwrap() * r.value;
        assert!(z.re.abs() < 1e-9 * z.norm());

        let (_, s, w) = setup("15.11.quadratic.deg16", 1000);
        let r = central_value(&s, w, &AfeConfig::default()).unwrap();
        assert!((r.value - Complex64::new(0.291_740_614_251_129_16, -0.328_546_859_126_708_98)).norm() < 1e-9, "{}", r.value);
    }

    #[test]
    fn conjugate_duality() {
        let (_, s, w) = setup("15.11.quadratic.deg16", 1000);
        let cfg = AfeConfig::default();
        let a = central_value(&s, w, &cfg).unwrap().value;
        let b = central_value(&s.dual(), w.conj(), &cfg).unwrap().value;
        assert!((a - b.conj()).norm() < 1e-12);
    }

    #[test]
    fn abscissa_and_step_independence() {
        let (_, s, w) = setup("3.11.quadratic.a", 400);
        let base = central_value(&s, w, &AfeConfig::default()).unwrap();
        for c in [1.2, 1.5, 2.0] {
            for (h, t) in [(0.125, 32.0), (0.1, 40.0)] {
                let cfg = AfeConfig {
                    abscissa: c,
                    step: h,
                    half_width: t,
                    ..AfeConfig::default()
                };
                let r = central_value(&s, w, &cfg).unwrap();
                assert!((r.value - base.value).norm() < 1e-9 * base.value.norm(), "c={c} h={h}");
                assert!((r.value - base.value).norm() <= r.error_estimate + base.error_estimate + 1e-14);
            }
        }
    }

    #[test]
    fn functional_equation_holds() {
        for label in ["3.11.quadratic.a", "15.11.quadratic.deg16"] {
            let (_, s, w) = setup(label, if label.starts_with('3') { 400 } else { 1000 });
            for point in [0.6, 0.9] {
                let r = functional_equation_residual(&s, w, point, &AfeConfig::default()).unwrap();
                assert!(r < 1e-8, "{label} s={point}: {r}");
            }
            // a wrong root number is detected
            let r = functional_equation_residual(&s, -w, 0.6, &AfeConfig::default()).unwrap();
            assert!(r > 1e-3);
        }
    }

    #[test]
    fn too_few_coefficients_are_reported() {
        let (_, s, w) = setup("15.11.quadratic.deg16", 60);
        match central_value(&s, w, &AfeConfig::default()) {
            Err(Error::TailBoundUnattainable { needed, available }) => {
                assert_eq!(available, 60);
                assert!(needed > 60);
            }
            other => panic!("expected a tail-bound error, got {other:?}"),
        }
    }

    #[test]
    fn dirichlet_values() {
        let d3 = FundamentalDiscriminant::new(3).unwrap();
        let d4 = FundamentalDiscriminant::new(4).unwrap();
        let d15 = FundamentalDiscriminant::new(15).unwrap();
        let l3 = dirichlet_l1(&d3, L1Method::Series);
        assert!((l3 / (PI / (3.0 * 3f64.sqrt())) - 1.0).abs() < 1e-12);
        assert!((dirichlet_l1(&d4, L1Method::Series) - PI / 4.0).abs() < 1e-13);
        assert!((dirichlet_l1(&d15, L1Method::Series) / 1.622_311_470_389_444_758_77 - 1.0).abs() < 1e-12);
        for d in [3u64, 4, 7, 8, 15, 20, 23, 24, 56, 84, 455] {
            let disc = FundamentalDiscriminant::new(d).unwrap();
            let series = dirichlet_l1(&disc, L1Method::Series);
            let formula = dirichlet_l1(&disc, L1Method::Formula);
            assert!((series / formula - 1.0).abs() < 1e-10, "D={d}");
            let h = f64::from(disc.roots_of_unity()) * (d as f64).sqrt() * series / (2.0 * PI);
            let cg = class_group(&disc).unwrap();
            assert!((h - cg.h as f64).abs() < 1e-8, "D={d}");
        }
    }
}
