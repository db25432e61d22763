//! Subcommand bodies: each builds a report, prints it, and says whether it is within tolerance.

use crate::config::Settings;
use crate::output::{to_json, ClassRep, Complex, Form, Real};
use hermlift::chartools::FundamentalDiscriminant;
use hermlift::eigenforms::fixture::{bundled_fixture, bundled_label_for, sha256_hex};
use hermlift::eigenforms::{
    ingest_newform, level1_eigenform, FixtureStore, NewformSeries, NewformSource,
};
use hermlift::lvalue::{dirichlet_l1, AfeConfig, L1Method, LCentralReport};
use hermlift::maasslift::LiftTable;
use hermlift::pullback::{petersson_norm, pullback_c0};
use hermlift::quadfield::class_group;
use hermlift::verify::{central_value_of, verify_twisted_identity, verify_main_identity, VerifyOptions};
use serde::Serialize;
use std::fmt;
use std::path::Path;
use std::process::ExitCode;

#[derive(Debug)]
pub enum CliError {
    Core(hermlift::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<hermlift::Error> for CliError {
    fn from(e: hermlift::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(e.into())
    }
}

impl CliError {
    /// A numerical target that cannot be met counts as a tolerance failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(hermlift::Error::ToleranceUnreachable { .. }) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Within,
    Outside,
}

impl Outcome {
    fn from_gap(gap: f64, tol: f64) -> Self {
        if gap <= tol {
            Outcome::Within
        } else {
            Outcome::Outside
        }
    }

    pub fn exit_code(self) -> ExitCode {
        match self {
            Outcome::Within => ExitCode::SUCCESS,
            Outcome::Outside => ExitCode::from(2),
        }
    }
}

type CliResult = Result<Outcome, CliError>;

#[derive(Serialize)]
struct Inputs {
    #[serde(rename = "D")]
    d: u64,
    kappa: u32,
    label: String,
    fixture_sha256: String,
    embedding: Option<String>,
    n_max: usize,
    g_weight: u32,
}

impl Inputs {
    fn of(f: &NewformSeries) -> Self {
        Self {
            d: f.disc.value(),
            kappa: f.kappa,
            label: f.label.clone(),
            fixture_sha256: f.source_hash.clone(),
            embedding: f.embedding.clone(),
            n_max: f.n_max(),
            g_weight: 2 * f.kappa + 2,
        }
    }
}

#[derive(Serialize)]
struct AfeSettings {
    abscissa: Real,
    regulator: Real,
    step: Real,
    half_width: Real,
    tol: Real,
}

impl From<&AfeConfig> for AfeSettings {
    fn from(c: &AfeConfig) -> Self {
        Self {
            abscissa: Real(c.abscissa),
            regulator: Real(c.regulator),
            step: Real(c.step),
            half_width: Real(c.half_width),
            tol: Real(c.tol),
        }
    }
}

#[derive(Serialize)]
struct CentralValue {
    value: Complex,
    error_estimate: Real,
    root_number: Complex,
    n_terms: usize,
    tail_bound: Real,
    step_difference: Real,
}

impl From<&LCentralReport> for CentralValue {
    fn from(r: &LCentralReport) -> Self {
        Self {
            value: r.value.into(),
            error_estimate: Real(r.error_estimate),
            root_number: r.root_number.into(),
            n_terms: r.n_terms,
            tail_bound: Real(r.tail_bound),
            step_difference: Real(r.step_difference),
        }
    }
}

fn emit<T: Serialize>(report: &T, table: &[(String, String)]) -> String {
    let text = to_json(report);
    print!("{text}");
    let width = table.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    for (k, v) in table {
        eprintln!("{k:<width$}  {v}");
    }
    text
}

fn row(key: impl Into<String>, value: impl fmt::Display) -> (String, String) {
    (key.into(), value.to_string())
}

fn complex(z: num_complex::Complex64) -> String {
    format!("{:.12e} {:+.12e}i", z.re, z.im)
}

fn check_shape(f: &NewformSeries, d: u64, kappa: u32) -> Result<(), CliError> {
    if f.disc.value() != d || f.kappa != kappa {
        return Err(CliError::Usage(format!(
            "fixture {} has D={} κ={}, but D={d} κ={kappa} was requested",
            f.label,
            f.disc.value(),
            f.kappa
        )));
    }
    Ok(())
}

fn truncated(f: NewformSeries, settings: &Settings) -> Result<NewformSeries, CliError> {
    match settings.nmax {
        Some(n) => Ok(f.truncate(n)?),
        None => Ok(f),
    }
}

fn load_path(settings: &Settings, path: &Path) -> Result<NewformSeries, CliError> {
    if !path.is_file() {
        return Err(CliError::Usage(format!("fixture {} not found", path.display())));
    }
    truncated(ingest_newform(&NewformSource::Path(path.to_path_buf()))?, settings)
}

/// An explicit fixture file, else the cached or bundled form for `D`.
fn load_for(
    settings: &Settings,
    d: u64,
    kappa: u32,
    fixture: Option<&Path>,
) -> Result<NewformSeries, CliError> {
    let f = match fixture {
        Some(path) => load_path(settings, path)?,
        None => {
            let label = bundled_label_for(d).ok_or_else(|| {
                CliError::Usage(format!("no fixture known for D={d}; pass --fixture"))
            })?;
            let store = FixtureStore::new(&settings.cache_dir, false);
            truncated(store.load(label)?, settings)?
        }
    };
    check_shape(&f, d, kappa)?;
    Ok(f)
}

fn options(settings: &Settings) -> VerifyOptions {
    VerifyOptions {
        afe: settings.afe,
        petersson_tol: settings.petersson_tol,
        ..VerifyOptions::default()
    }
}

#[derive(Serialize)]
struct ClassPeriodJson {
    rep: ClassRep,
    c0: Complex,
    term_count: usize,
}

#[derive(Serialize)]
struct Tolerances {
    identity: Real,
    petersson: Real,
    afe: Real,
}

#[derive(Serialize)]
struct FeResidual {
    s: Real,
    residual: Real,
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    inputs: Inputs,
    lhs: CentralValue,
    a_f_d: Complex,
    l1: Real,
    l1_series: Real,
    petersson: Real,
    petersson_error_estimate: Real,
    normalization: Complex,
    normalized_lhs: Complex,
    classes: Vec<ClassPeriodJson>,
    rhs_average: Complex,
    abs_discrepancy: Real,
    rel_discrepancy: Real,
    functional_equation: Vec<FeResidual>,
    tolerances: Tolerances,
    afe: AfeSettings,
    within_tolerance: bool,
}

pub fn verify(
    settings: &Settings,
    d: u64,
    kappa: u32,
    fixture: &Path,
    json: Option<&Path>,
) -> CliResult {
    let f = load_path(settings, fixture)?;
    check_shape(&f, d, kappa)?;
    let opts = options(settings);
    let r = verify_main_identity(&f, &opts)?;
    let outcome = Outcome::from_gap(r.rel_discrepancy, settings.tol);
    let report = VerifyReport {
        command: "verify",
        inputs: Inputs::of(&f),
        lhs: (&r.l_value).into(),
        a_f_d: r.a_f_d.into(),
        l1: Real(r.l1),
        l1_series: Real(r.l1_series),
        petersson: Real(r.petersson.value),
        petersson_error_estimate: Real(r.petersson.error_estimate),
        normalization: r.normalization.into(),
        normalized_lhs: r.normalized_lhs.into(),
        classes: r
            .periods
            .iter()
            .map(|p| ClassPeriodJson {
                rep: (&p.rep).into(),
                c0: p.c0.into(),
                term_count: p.term_count,
            })
            .collect(),
        rhs_average: r.rhs_average.into(),
        abs_discrepancy: Real(r.abs_discrepancy),
        rel_discrepancy: Real(r.rel_discrepancy),
        functional_equation: r
            .fe_residuals
            .iter()
            .map(|&(s, residual)| FeResidual {
                s: Real(s),
                residual: Real(residual),
            })
            .collect(),
        tolerances: Tolerances {
            identity: Real(settings.tol),
            petersson: Real(opts.petersson_tol),
            afe: Real(opts.afe.tol),
        },
        afe: (&opts.afe).into(),
        within_tolerance: outcome == Outcome::Within,
    };
    let mut table = vec![
        row("form", &f.label),
        row("L(1/2, f x g)", complex(r.l_value.value)),
        row("normalized L-value", complex(r.normalized_lhs)),
    ];
    for p in &r.periods {
        let form = &p.rep.form;
        table.push(row(format!("c0 ({}, {}, {})", form.a, form.b, form.c), complex(p.c0)));
    }
    table.extend([
        row("class average", complex(r.rhs_average)),
        row("relative gap", format!("{:e} (tol {:e})", r.rel_discrepancy, settings.tol)),
    ]);
    let text = emit(&report, &table);
    if let Some(path) = json {
        std::fs::write(path, text)?;
    }
    Ok(outcome)
}

#[derive(Serialize)]
struct TwistTermJson {
    subset: Vec<u64>,
    sign: i32,
    a_fq_d: Complex,
    l_value: Complex,
    error_estimate: Real,
}

#[derive(Serialize)]
struct CorollaryReportJson {
    command: &'static str,
    inputs: Inputs,
    class_norm: u64,
    terms: Vec<TwistTermJson>,
    lhs: Complex,
    square_classes: Vec<ClassPeriodJson>,
    rhs: Complex,
    l1: Real,
    petersson: Real,
    abs_discrepancy: Real,
    rel_discrepancy: Real,
    tolerance: Real,
    afe: AfeSettings,
    within_tolerance: bool,
}

pub fn corollary(
    settings: &Settings,
    d: u64,
    kappa: u32,
    class_norm: u64,
    fixture: Option<&Path>,
) -> CliResult {
    let f = load_for(settings, d, kappa, fixture)?;
    let opts = options(settings);
    let r = verify_twisted_identity(&f, class_norm, &opts)?;
    let outcome = Outcome::from_gap(r.rel_discrepancy, settings.tol);
    let report = CorollaryReportJson {
        command: "corollary",
        inputs: Inputs::of(&f),
        class_norm,
        terms: r
            .terms
            .iter()
            .map(|t| TwistTermJson {
                subset: t.subset.clone(),
                sign: t.sign,
                a_fq_d: t.a_fq_d.into(),
                l_value: t.l_value.into(),
                error_estimate: Real(t.error_estimate),
            })
            .collect(),
        lhs: r.lhs.into(),
        square_classes: r
            .square_class_periods
            .iter()
            .map(|p| ClassPeriodJson {
                rep: (&p.rep).into(),
                c0: p.c0.into(),
                term_count: p.term_count,
            })
            .collect(),
        rhs: r.rhs.into(),
        l1: Real(r.l1),
        petersson: Real(r.petersson),
        abs_discrepancy: Real(r.abs_discrepancy),
        rel_discrepancy: Real(r.rel_discrepancy),
        tolerance: Real(settings.tol),
        afe: (&opts.afe).into(),
        within_tolerance: outcome == Outcome::Within,
    };
    let mut table = vec![row("form", &f.label), row("class norm", class_norm)];
    for t in &r.terms {
        table.push(row(format!("Q = {:?}, sign {:+}", t.subset, t.sign), complex(t.a_fq_d * t.l_value)));
    }
    table.extend([
        row("twisted sum", complex(r.lhs)),
        row("period side", complex(r.rhs)),
        row("relative gap", format!("{:e} (tol {:e})", r.rel_discrepancy, settings.tol)),
    ]);
    emit(&report, &table);
    Ok(outcome)
}

#[derive(Serialize)]
struct PullbackTerm {
    norm: u64,
    points: usize,
}

#[derive(Serialize)]
struct PullbackReport {
    command: &'static str,
    inputs: Inputs,
    class_index: usize,
    rep: ClassRep,
    c0: Complex,
    c0_exact: Option<String>,
    term_count: usize,
    terms: Vec<PullbackTerm>,
}

pub fn pullback(
    settings: &Settings,
    d: u64,
    kappa: u32,
    class_index: usize,
    fixture: Option<&Path>,
) -> CliResult {
    let f = load_for(settings, d, kappa, fixture)?;
    let cg = class_group(&f.disc)?;
    let rep = cg.reps.get(class_index).ok_or(hermlift::Error::ClassIndex {
        index: class_index,
        h: cg.h,
    })?;
    let g = level1_eigenform(2 * kappa + 2, 1)?;
    let s = pullback_c0(&LiftTable::embedded(&f, rep)?, &g)?;
    let exact = if f.has_exact() {
        Some(pullback_c0(&LiftTable::exact(&f, rep)?, &g)?.c0.to_string())
    } else {
        None
    };
    let report = PullbackReport {
        command: "pullback",
        inputs: Inputs::of(&f),
        class_index,
        rep: rep.into(),
        c0: s.c0.into(),
        c0_exact: exact.clone(),
        term_count: s.term_count,
        terms: s
            .terms
            .iter()
            .map(|&(norm, points)| PullbackTerm { norm, points })
            .collect(),
    };
    let mut table = vec![
        row("form", &f.label),
        row("class", format!("({}, {}, {})", rep.form.a, rep.form.b, rep.form.c)),
        row("c0", complex(s.c0)),
    ];
    if let Some(e) = exact {
        table.push(row("c0 exact", e));
    }
    emit(&report, &table);
    Ok(Outcome::Within)
}

#[derive(Serialize)]
struct LvalueReport {
    command: &'static str,
    inputs: Inputs,
    central_value: CentralValue,
    afe: AfeSettings,
}

pub fn lvalue(settings: &Settings, fixture: &Path) -> CliResult {
    let f = load_path(settings, fixture)?;
    let r = central_value_of(&f, &settings.afe)?;
    let report = LvalueReport {
        command: "lvalue",
        inputs: Inputs::of(&f),
        central_value: (&r).into(),
        afe: (&settings.afe).into(),
    };
    emit(
        &report,
        &[
            row("form", &f.label),
            row("L(1/2, f x g)", complex(r.value)),
            row("error estimate", format!("{:e}", r.error_estimate)),
            row("terms", r.n_terms),
        ],
    );
    Ok(Outcome::Within)
}

#[derive(Serialize)]
struct ClassgroupReport {
    command: &'static str,
    #[serde(rename = "D")]
    d: u64,
    #[serde(rename = "h_K")]
    h: usize,
    roots_of_unity: u32,
    reps: Vec<ClassRep>,
    squares: Vec<usize>,
    genera: Vec<Vec<usize>>,
    reduced_forms: Vec<Form>,
    l1: Real,
}

pub fn classgroup(d: u64) -> CliResult {
    let disc = FundamentalDiscriminant::new(d)?;
    let cg = class_group(&disc)?;
    let report = ClassgroupReport {
        command: "classgroup",
        d,
        h: cg.h,
        roots_of_unity: cg.w,
        reps: cg.reps.iter().map(ClassRep::from).collect(),
        squares: cg.squares.clone(),
        genera: cg.genus_cosets(),
        reduced_forms: cg.reps.iter().map(|r| Form::from(&r.reduced)).collect(),
        l1: Real(dirichlet_l1(&disc, L1Method::Formula)),
    };
    let mut table = vec![row("D", d), row("h_K", cg.h)];
    for (i, r) in cg.reps.iter().enumerate() {
        table.push(row(
            format!("class {i}"),
            format!("({}, {}, {}), norm {}", r.form.a, r.form.b, r.form.c, r.norm()),
        ));
    }
    emit(&report, &table);
    Ok(Outcome::Within)
}

#[derive(Serialize)]
struct PeterssonReport {
    command: &'static str,
    weight: u32,
    value: Real,
    error_estimate: Real,
    cusp_part: Real,
    sliver_part: Real,
    series_terms: usize,
    panels: usize,
    tol: Real,
}

/// Coefficients of `g` used by the Petersson series.
const PETERSSON_TERMS: usize = 60;

pub fn petersson(settings: &Settings, flag_tol: Option<f64>, weight: u32) -> CliResult {
    let tol = flag_tol.unwrap_or(settings.petersson_tol);
    let g = level1_eigenform(weight, settings.nmax.unwrap_or(PETERSSON_TERMS))?;
    let p = petersson_norm(&g, tol)?;
    let report = PeterssonReport {
        command: "petersson",
        weight,
        value: Real(p.value),
        error_estimate: Real(p.error_estimate),
        cusp_part: Real(p.cusp_part),
        sliver_part: Real(p.sliver_part),
        series_terms: p.series_terms,
        panels: p.panels,
        tol: Real(tol),
    };
    emit(
        &report,
        &[
            row("weight", weight),
            row("<g, g>", format!("{:.16e}", p.value)),
            row("error estimate", format!("{:e}", p.error_estimate)),
        ],
    );
    Ok(Outcome::Within)
}

#[derive(Serialize)]
struct IngestReport {
    command: &'static str,
    label: String,
    source: &'static str,
    path: String,
    fixture_sha256: String,
    #[serde(rename = "D")]
    d: u64,
    kappa: u32,
    n_max: usize,
}

pub fn ingest(settings: &Settings, label: &str, fetch: bool) -> CliResult {
    let store = FixtureStore::new(&settings.cache_dir, fetch);
    let path = store.cache_path(label);
    let source = if path.exists() {
        "cache"
    } else if let Some(text) = bundled_fixture(label) {
        // cached verbatim so the hash matches the bundled copy
        std::fs::create_dir_all(&settings.cache_dir)?;
        std::fs::write(&path, text)?;
        "bundled"
    } else {
        "remote"
    };
    let f = store.load(label)?;
    let text = std::fs::read_to_string(&path)?;
    let report = IngestReport {
        command: "ingest",
        label: f.label.clone(),
        source,
        path: path.display().to_string(),
        fixture_sha256: sha256_hex(text.as_bytes()),
        d: f.disc.value(),
        kappa: f.kappa,
        n_max: f.n_max(),
    };
    emit(
        &report,
        &[
            row("label", &f.label),
            row("source", source),
            row("cached at", path.display()),
            row("coefficients", f.n_max()),
        ],
    );
    Ok(Outcome::Within)
}
