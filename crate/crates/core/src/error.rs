use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("-{0} is not a fundamental discriminant")]
    InvalidDiscriminant(i64),

    #[error("{p} does not divide D = {d}")]
    NotRamified { d: u64, p: u64 },

    #[error("{p} is not a split prime prime to 2D for D = {d} (kronecker symbol {symbol})")]
    NotSplit { d: u64, p: u64, symbol: i32 },

    #[error("no form with leading coefficient prime to 2D found for class {form:?} below {bound}")]
    RepresentativeSearchExhausted { form: (i64, i64, i64), bound: i64 },

    #[error("norm {norm} is not represented by a form of discriminant -{d}")]
    NormNotRepresented { d: u64, norm: u64 },

    #[error("class norm {norm} must be squarefree and prime to 2D = {two_d}")]
    BadClassNorm { norm: u64, two_d: u64 },

    #[error("weight {0} is not one of the one-dimensional level-one weights 12, 16, 18, 20, 22, 26")]
    UnsupportedWeight(u32),

    #[error("coefficient a({needed}) requested but only {available} are available")]
    InsufficientCoefficients { needed: u64, available: u64 },

    #[error("fixture schema violation: {0}")]
    Schema(String),

    #[error("{what} fails at n = {n}")]
    InvariantViolation { what: String, n: u64 },

    #[error("no exact coefficient data for {0}")]
    NoExactData(String),

    #[error("hermitian index (n={n}, m={m}, x={x}, y={y}) is not positive definite")]
    NotPositiveDefinite { n: u64, m: u64, x: i64, y: i64 },

    #[error("lattice integrality broken: {0}")]
    Lattice(String),

    #[error("tail bound needs {needed} coefficients, only {available} available")]
    TailBoundUnattainable { needed: u64, available: u64 },

    #[error("root number has modulus {0}, expected 1")]
    NonUnitRootNumber(f64),

    #[error("evaluation did not reach tolerance {tol:e} (estimate {estimate:e})")]
    ToleranceUnreachable { tol: f64, estimate: f64 },

    #[error("class index {index} out of range (h_K = {h})")]
    ClassIndex { index: usize, h: usize },

    #[error("remote fetch failed: {0}")]
    Fetch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
