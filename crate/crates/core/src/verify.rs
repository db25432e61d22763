//! End-to-end comparison of the central value with the class-group average of the
//! pullback periods, and its genus-twisted refinement.
//!
//! Main identity:
//!
//! ```text
//! a_f(D) (2κ)! L(1/2, f × g) / (L(1, χ) (4π)^{2κ+1} ⟨g, g⟩) = h_K^{-1} Σ_{[c]} c0(c)
//! ```
//!
//! Twisted form, for `C = N(c)` squarefree and prime to `2D`:
//!
//! ```text
//! Σ_Q χ_Q(−C) a_{f_Q}(D) L(1/2, f_Q × g)
//!     = 2 L(1, χ) (4π)^{2κ+1} ⟨g, g⟩ / (2κ)! · #Cl_K²^{-1} Σ_{a ∈ Cl_K²} c0(ac)
//! ```

use crate::arith::is_squarefree;
use crate::chartools::{chi_q, GenusSubset};
use crate::eigenforms::{level1_eigenform, NewformSeries};
use crate::error::{Error, Result};
use crate::lvalue::{
    central_value, dirichlet_l1, functional_equation_residual, rankin_coefficients, root_number,
    AfeConfig, L1Method, LCentralReport,
};
use crate::maasslift::LiftTable;
use crate::pullback::{petersson_norm, pullback_c0, PeterssonNorm};
use crate::quadfield::{class_group, rep_with_norm, ClassGroup, IdealClassRep};
use num_complex::Complex64;
use num_integer::Integer;
use std::f64::consts::PI;

/// Settings shared by the verification drivers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub afe: AfeConfig,
    pub petersson_tol: f64,
    /// Points `s` at which the functional equation is checked.
    pub fe_points: [f64; 2],
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            afe: AfeConfig::default(),
            petersson_tol: 1e-12,
            fe_points: [0.6, 0.9],
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClassPeriod {
    pub rep: IdealClassRep,
    pub c0: Complex64,
    pub term_count: usize,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub d: u64,
    pub kappa: u32,
    pub label: String,
    pub source_hash: String,
    pub embedding: Option<String>,
    pub h: usize,
    pub a_f_d: Complex64,
    pub l_value: LCentralReport,
    pub l1: f64,
    pub l1_series: f64,
    pub petersson: PeterssonNorm,
    /// `a_f(D)(2κ)! / (L(1,χ)(4π)^{2κ+1}⟨g,g⟩)`.
    pub normalization: Complex64,
    pub normalized_lhs: Complex64,
    pub periods: Vec<ClassPeriod>,
    pub rhs_average: Complex64,
    pub abs_discrepancy: f64,
    pub rel_discrepancy: f64,
    /// `(s, residual)` pairs of the functional-equation check.
    pub fe_residuals: Vec<(f64, f64)>,
}

/// `(|lhs − rhs|, |lhs − rhs| / |rhs|)`.
pub fn discrepancies(lhs: Complex64, rhs: Complex64) -> (f64, f64) {
    let abs = (lhs - rhs).norm();
    (abs, abs / rhs.norm())
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `a_f(D)(2κ)! / (L(1,χ)(4π)^{2κ+1}⟨g,g⟩)`.
pub fn normalization_factor(kappa: u32, a_f_d: Complex64, l1: f64, petersson: f64) -> Complex64 {
    a_f_d * factorial(2 * kappa) / (l1 * (4.0 * PI).powi(2 * kappa as i32 + 1) * petersson)
}

fn cusp_form_weight(kappa: u32) -> u32 {
    2 * kappa + 2
}

/// Period ratios of every class in canonical order.
pub fn class_periods(f: &NewformSeries, cg: &ClassGroup) -> Result<Vec<ClassPeriod>> {
    let g = level1_eigenform(cusp_form_weight(f.kappa), 1)?;
    cg.reps
        .iter()
        .map(|rep| {
            let table = LiftTable::embedded(f, rep)?;
            let s = pullback_c0(&table, &g)?;
            Ok(ClassPeriod {
                rep: rep.clone(),
                c0: s.c0,
                term_count: s.term_count,
            })
        })
        .collect()
}

/// `L(1/2, f × g)` with `g` the level-one eigenform of weight `2κ+2`.
pub fn central_value_of(f: &NewformSeries, afe: &AfeConfig) -> Result<LCentralReport> {
    let g = level1_eigenform(cusp_form_weight(f.kappa), f.n_max())?;
    let series = rankin_coefficients(&f.disc, f.kappa, f.complex_values(), &g.values_f64(), f.n_max())?;
    let d = f.disc.value() as usize;
    let w = root_number(&f.disc, f.kappa, f.a(d)?)?;
    central_value(&series, w, afe)
}

pub fn verify_main_identity(f: &NewformSeries, opts: &VerifyOptions) -> Result<VerificationReport> {
    let d = f.disc.value() as usize;
    let cg = class_group(&f.disc)?;
    let g = level1_eigenform(cusp_form_weight(f.kappa), f.n_max())?;
    let series = rankin_coefficients(&f.disc, f.kappa, f.complex_values(), &g.values_f64(), f.n_max())?;
    let a_f_d = f.a(d)?;
    let w = root_number(&f.disc, f.kappa, a_f_d)?;
    let l_value = central_value(&series, w, &opts.afe)?;
    let fe_residuals = opts
        .fe_points
        .iter()
        .map(|&s| Ok((s, functional_equation_residual(&series, w, s, &opts.afe)?)))
        .collect::<Result<Vec<_>>>()?;
    let l1 = dirichlet_l1(&f.disc, L1Method::Formula);
    let l1_series = dirichlet_l1(&f.disc, L1Method::Series);
    let petersson = petersson_norm(&g, opts.petersson_tol)?;
    let normalization = normalization_factor(f.kappa, a_f_d, l1, petersson.value);
    let normalized_lhs = l_value.value * normalization;
    let periods = class_periods(f, &cg)?;
    let rhs_average = periods.iter().map(|p| p.c0).sum::<Complex64>() / cg.h as f64;
    let (abs_discrepancy, rel_discrepancy) = discrepancies(normalized_lhs, rhs_average);
    Ok(VerificationReport {
        d: f.disc.value(),
        kappa: f.kappa,
        label: f.label.clone(),
        source_hash: f.source_hash.clone(),
        embedding: f.embedding.clone(),
        h: cg.h,
        a_f_d,
        l_value,
        l1,
        l1_series,
        petersson,
        normalization,
        normalized_lhs,
        periods,
        rhs_average,
        abs_discrepancy,
        rel_discrepancy,
        fe_residuals,
    })
}

/// One summand `χ_Q(−C) a_{f_Q}(D) L(1/2, f_Q × g)`.
#[derive(Debug, Clone)]
pub struct TwistTerm {
    pub subset: Vec<u64>,
    pub sign: i32,
    pub a_fq_d: Complex64,
    pub l_value: Complex64,
    pub error_estimate: f64,
}

#[derive(Debug, Clone)]
pub struct TwistedIdentityReport {
    pub d: u64,
    pub kappa: u32,
    pub class_norm: u64,
    pub terms: Vec<TwistTerm>,
    pub lhs: Complex64,
    /// `(c0(ac), a)` over `a ∈ Cl_K²`, in canonical order.
    pub square_class_periods: Vec<ClassPeriod>,
    pub rhs: Complex64,
    pub petersson: f64,
    pub l1: f64,
    pub abs_discrepancy: f64,
    pub rel_discrepancy: f64,
}

pub fn verify_twisted_identity(
    f: &NewformSeries,
    class_norm: u64,
    opts: &VerifyOptions,
) -> Result<TwistedIdentityReport> {
    let two_d = 2 * f.disc.value();
    if !is_squarefree(class_norm) || class_norm.gcd(&two_d) != 1 {
        return Err(Error::BadClassNorm {
            norm: class_norm,
            two_d,
        });
    }
    let d = f.disc.value() as usize;
    let c_rep = rep_with_norm(&f.disc, class_norm)?;
    let cg = class_group(&f.disc)?;

    let mut terms = Vec::new();
    for q in GenusSubset::all(&f.disc) {
        let fq = f.twist(&q);
        let report = central_value_of(&fq, &opts.afe)?;
        let a_fq_d = fq.a(d)?;
        terms.push(TwistTerm {
            subset: q.primes().to_vec(),
            sign: chi_q(&f.disc, &q, -(class_norm as i64)),
            a_fq_d,
            l_value: report.value,
            error_estimate: report.error_estimate,
        });
    }
    let lhs = terms
        .iter()
        .map(|t| f64::from(t.sign) * t.a_fq_d * t.l_value)
        .sum::<Complex64>();

    let periods = class_periods(f, &cg)?;
    let square_class_periods: Vec<ClassPeriod> = cg
        .squares
        .iter()
        .map(|&i| {
            let class = cg.class_index(&cg.reps[i].reduced.compose(&c_rep.reduced));
            periods[class].clone()
        })
        .collect();
    let average = square_class_periods.iter().map(|p| p.c0).sum::<Complex64>()
        / square_class_periods.len() as f64;
    let g = level1_eigenform(cusp_form_weight(f.kappa), 60)?;
    let petersson = petersson_norm(&g, opts.petersson_tol)?.value;
    let l1 = dirichlet_l1(&f.disc, L1Method::Formula);
    let rhs = average * 2.0 * l1 * (4.0 * PI).powi(2 * f.kappa as i32 + 1) * petersson
        / factorial(2 * f.kappa);
    let (abs_discrepancy, rel_discrepancy) = discrepancies(lhs, rhs);
    Ok(TwistedIdentityReport {
        d: f.disc.value(),
        kappa: f.kappa,
        class_norm,
        terms,
        lhs,
        square_class_periods,
        rhs,
        petersson,
        l1,
        abs_discrepancy,
        rel_discrepancy,
    })
}
