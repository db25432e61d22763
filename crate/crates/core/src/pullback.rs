//! Restriction of `F_c` to `ℌ × ℌ`: double Fourier coefficients, the period ratio `c0`,
//! Petersson norms and the class-group average.
//!
//! In the supported weights `S_{2κ+2}(SL_2(Z))` is spanned by `g`, so
//! `F_c(diag(z_1, C z_2)) = c0 · g(z_1) g(z_2)` and the period ratio
//! `⟨F_c|, g × g_C⟩ / (⟨g,g⟩⟨g_C,g_C⟩)` is the `q_1 q_2` coefficient
//! `c0 = Σ_{f(x,y) < D} α_F(D − f(x,y))`.

use crate::coeff::Coefficient;
use crate::eigenforms::{Level1Eigenform, SUPPORTED_WEIGHTS};
use crate::error::{Error, Result};
use crate::maasslift::{HermitianIndex, LiftTable};
use crate::quadfield::IdealClassRep;
use crate::special::upper_incomplete_gamma;
use gauss_quad::GaussLegendre;
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

/// The period ratio for one class with its itemization by `N_H`.
#[derive(Debug, Clone)]
pub struct PullbackSum<R> {
    pub rep: IdealClassRep,
    pub c0: R,
    pub term_count: usize,
    /// `(N_H, number of lattice points)`, ascending in `N_H`.
    pub terms: Vec<(u64, usize)>,
}

/// Lattice points with `N(α) < 1/C`, i.e. `f(x, y) < D`, ordered by `(y, x)`.
pub fn enumerate_pullback_points(rep: &IdealClassRep) -> Vec<(i64, i64)> {
    let d = -rep.form.discriminant();
    let mut pts = rep.form.points_below(d);
    pts.sort_by_key(|&(x, y)| (y, x));
    pts
}

fn check_weight<R>(table: &LiftTable<R>, g: &Level1Eigenform) -> Result<()> {
    if !SUPPORTED_WEIGHTS.contains(&g.weight) {
        return Err(Error::UnsupportedWeight(g.weight));
    }
    if g.weight != 2 * table.kappa + 2 {
        return Err(Error::Schema(format!(
            "cusp form weight {} does not match lift weight {}",
            g.weight,
            2 * table.kappa + 2
        )));
    }
    Ok(())
}

pub fn pullback_c0<R: Coefficient>(
    table: &LiftTable<R>,
    g: &Level1Eigenform,
) -> Result<PullbackSum<R>> {
    check_weight(table, g)?;
    let mut terms: BTreeMap<u64, usize> = BTreeMap::new();
    let mut c0 = R::zero();
    let points = enumerate_pullback_points(&table.rep);
    for &(x, y) in &points {
        let h = HermitianIndex::new(&table.rep, 1, 1, x, y);
        c0 = c0 + table.lift_coefficient(&h)?;
        *terms.entry(h.scaled_det() as u64).or_default() += 1;
    }
    Ok(PullbackSum {
        rep: table.rep.clone(),
        c0,
        term_count: points.len(),
        terms: terms.into_iter().collect(),
    })
}

/// The `q_1^n q_2^m` coefficient of `F_c(diag(z_1, C z_2))`.
pub fn double_coefficient<R: Coefficient>(table: &LiftTable<R>, n: u64, m: u64) -> Result<R> {
    if n == 0 || m == 0 {
        return Ok(R::zero());
    }
    let d = -table.rep.form.discriminant();
    let bound = (n * m) as i64 * d;
    let mut pts = table.rep.form.points_below(bound);
    pts.sort_by_key(|&(x, y)| (y, x));
    pts.into_iter().try_fold(R::zero(), |acc, (x, y)| {
        Ok(acc + table.lift_coefficient(&HermitianIndex::new(&table.rep, n, m, x, y))?)
    })
}

/// `⟨g, g⟩ = ∫_{SL_2(Z)\ℌ} |g|² y^{k−2} dx dy` with its error estimate.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PeterssonNorm {
    pub value: f64,
    pub error_estimate: f64,
    /// Part from `y > 1`, by the incomplete-gamma series.
    pub cusp_part: f64,
    /// Part between the unit circle and `y = 1`, by quadrature.
    pub sliver_part: f64,
    pub series_terms: usize,
    pub panels: usize,
}

impl PeterssonNorm {
    /// `⟨g_C, g_C⟩ = C^{k}⟨g, g⟩` for `g_C(z) = g(Cz)`.
    pub fn scaled(&self, weight: u32, c: u64) -> f64 {
        self.value * (c as f64).powi(weight as i32)
    }
}

const QUAD_DEGREE: usize = 24;
const MAX_PANELS: usize = 512;
const MIN_TOL: f64 = 1e-14;

/// `Σ_{n>M} 2 n^{κ+1} e^{−2πny}`, dominating the tail of `g` by `|a(n)| ≤ d(n) n^{κ+1/2}`.
fn q_tail_bound(kappa: u32, m: usize, y: f64) -> f64 {
    (m + 1..m + 400)
        .map(|n| 2.0 * (n as f64).powi(kappa as i32 + 1) * (-2.0 * PI * n as f64 * y).exp())
        .sum()
}

pub fn petersson_norm(g: &Level1Eigenform, tol: f64) -> Result<PeterssonNorm> {
    let tol = tol.max(MIN_TOL);
    let kappa = g.kappa();
    let s = 2 * kappa + 1;
    let a = g.values_f64();

    // y > 1: Σ a(n)² Γ(2κ+1, 4πn)/(4πn)^{2κ+1}
    let mut cusp_part = 0.0;
    let mut series_terms = 0;
    for n in 1..=g.n_max() {
        let x = 4.0 * PI * n as f64;
        let term = a[n] * a[n] * upper_incomplete_gamma(s, x) / x.powi(s as i32);
        cusp_part += term;
        series_terms = n;
        if term < 1e-6 * tol * cusp_part {
            break;
        }
    }
    if series_terms == g.n_max() {
        return Err(Error::TailBoundUnattainable {
            needed: g.n_max() as u64 + 1,
            available: g.n_max() as u64,
        });
    }

    // truncation of the q-expansion on y ≥ √3/2
    let y0 = 3f64.sqrt() / 2.0;
    let scale = a[1].abs() * (-2.0 * PI).exp();
    let terms = (1..=g.n_max())
        .find(|&m| q_tail_bound(kappa, m, y0) < 1e-6 * tol * scale)
        .ok_or(Error::TailBoundUnattainable {
            needed: g.n_max() as u64 + 1,
            available: g.n_max() as u64,
        })?;
    let coeffs = &a[1..=terms];
    let integrand = |x: f64, y: f64| {
        let mut z = Complex64::new(0.0, 0.0);
        let step = Complex64::from_polar((-2.0 * PI * y).exp(), 2.0 * PI * x);
        let mut q = step;
        for &c in coeffs {
            z += c * q;
            q *= step;
        }
        z.norm_sqr() * y.powi(2 * kappa as i32)
    };
    let gl = GaussLegendre::new(NonZeroUsize::new(QUAD_DEGREE).expect("positive degree"));
    // the region is symmetric under x ↦ −x because the coefficients are real
    let sliver = |panels: usize| -> f64 {
        let width = 0.5 / panels as f64;
        (0..panels)
            .map(|i| {
                let x0 = i as f64 * width;
                gl.integrate(x0, x0 + width, |x| {
                    gl.integrate((1.0 - x * x).sqrt(), 1.0, |y| integrand(x, y))
                })
            })
            .sum::<f64>()
            * 2.0
    };
    let mut panels = 1;
    let mut coarse = sliver(panels);
    loop {
        let fine = sliver(2 * panels);
        panels *= 2;
        let diff = (fine - coarse).abs();
        let value = cusp_part + fine;
        if diff <= tol * value {
            // the truncated q-series perturbs |g|² by at most 2|g|ε + ε² on an area below 0.05
            let trunc = 0.05 * 2.0 * q_tail_bound(kappa, terms, y0) * (1.0 + scale);
            return Ok(PeterssonNorm {
                value,
                error_estimate: diff + trunc + 1e-16 * value,
                cusp_part,
                sliver_part: fine,
                series_terms,
                panels,
            });
        }
        if panels >= MAX_PANELS {
            return Err(Error::ToleranceUnreachable {
                tol,
                estimate: diff / value,
            });
        }
        coarse = fine;
    }
}
