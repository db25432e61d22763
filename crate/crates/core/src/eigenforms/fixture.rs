//! JSON fixtures, the on-disk cache and the optional LMFDB fetch.
//!
//! Schema, one file per form:
//!
//! ```text
//! { "label": str, "D": int, "weight": int, "kappa": int, "character": "kronecker(-D)",
//!   "embedding": str|null, "exact_generator": int|null, "n_start": 1,
//!   "coefficients": [ ["re","im"] | {"u":["p","q"],"v":["r","s"]}, ... ] }
//! ```
//!
//! Exact entries mean `u + v√−d0` with `d0 = exact_generator`.

use super::NewformSeries;
use crate::chartools::FundamentalDiscriminant;
use crate::coeff::{Coefficient, QuadraticNumber};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const BUNDLED_LABELS: [&str; 3] = [
    "3.11.quadratic.a",
    "15.11.quadratic.deg16",
    "23.11.quadratic.deg16",
];

const BUNDLED: [(&str, &str); 3] = [
    ("3.11.quadratic.a", include_str!("../../fixtures/d3_k5.json")),
    ("15.11.quadratic.deg16", include_str!("../../fixtures/d15_k5.json")),
    ("23.11.quadratic.deg16", include_str!("../../fixtures/d23_k5.json")),
];

pub const LMFDB_API: &str = "https://www.lmfdb.org/api/mf_hecke_cc/";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawCoefficient {
    Embedded([String; 2]),
    Exact { u: [String; 2], v: [String; 2] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub label: String,
    #[serde(rename = "D")]
    pub d: u64,
    pub weight: u32,
    pub kappa: u32,
    pub character: String,
    pub embedding: Option<String>,
    pub exact_generator: Option<u64>,
    pub n_start: u64,
    pub coefficients: Vec<RawCoefficient>,
}

/// Where a newform comes from.
#[derive(Debug, Clone)]
pub enum NewformSource {
    /// A fixture compiled into the library.
    Bundled(&'static str),
    /// A fixture file on disk.
    Path(PathBuf),
    /// A label resolved through a [`FixtureStore`].
    Label { label: String, store: FixtureStore },
}

pub fn bundled_fixture(label: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(l, _)| *l == label).map(|(_, s)| *s)
}

/// The bundled fixture for discriminant `D`, if any.
pub fn bundled_label_for(d: u64) -> Option<&'static str> {
    BUNDLED_LABELS
        .iter()
        .copied()
        .find(|l| l.split('.').next() == Some(&d.to_string()))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse_rational(pq: &[String; 2]) -> Result<BigRational> {
    let p = BigInt::from_str(pq[0].trim())
        .map_err(|e| Error::Schema(format!("bad numerator {:?}: {e}", pq[0])))?;
    let q = BigInt::from_str(pq[1].trim())
        .map_err(|e| Error::Schema(format!("bad denominator {:?}: {e}", pq[1])))?;
    if q == BigInt::from(0) {
        return Err(Error::Schema("zero denominator".into()));
    }
    Ok(BigRational::new(p, q))
}

fn parse_decimal(s: &str) -> Result<f64> {
    f64::from_str(s.trim()).map_err(|e| Error::Schema(format!("bad decimal {s:?}: {e}")))
}

impl FixtureFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    /// Schema-level checks and conversion; does not run the Hecke invariants.
    pub fn into_series(self, source_hash: String) -> Result<NewformSeries> {
        let disc = FundamentalDiscriminant::new(self.d)
            .map_err(|_| Error::Schema(format!("D = {} is not fundamental", self.d)))?;
        if self.character != format!("kronecker(-{})", self.d) {
            return Err(Error::Schema(format!(
                "character {:?} is not kronecker(-{})",
                self.character, self.d
            )));
        }
        if self.weight != 2 * self.kappa + 1 {
            return Err(Error::Schema(format!(
                "weight {} is not 2κ+1 for κ = {}",
                self.weight, self.kappa
            )));
        }
        if self.n_start != 1 {
            return Err(Error::Schema(format!("n_start must be 1, got {}", self.n_start)));
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0)];
        let mut exact = self.exact_generator.map(|_| vec![QuadraticNumber::zero()]);
        for (i, raw) in self.coefficients.iter().enumerate() {
            match (raw, self.exact_generator, exact.as_mut()) {
                (RawCoefficient::Embedded([re, im]), None, _) => {
                    coeffs.push(Complex64::new(parse_decimal(re)?, parse_decimal(im)?));
                }
                (RawCoefficient::Exact { u, v }, Some(d0), Some(ex)) => {
                    let z = QuadraticNumber::new(d0, parse_rational(u)?, parse_rational(v)?);
                    coeffs.push(z.to_complex());
                    ex.push(z);
                }
                _ => {
                    return Err(Error::Schema(format!(
                        "coefficient {} does not match exact_generator = {:?}",
                        i + 1,
                        self.exact_generator
                    )))
                }
            }
        }
        NewformSeries::new(
            self.label,
            disc,
            self.kappa,
            coeffs,
            exact,
            self.embedding,
            source_hash,
        )
    }

    pub fn from_series(series: &NewformSeries) -> Self {
        Self {
            label: series.label.clone(),
            d: series.disc.value(),
            weight: series.weight(),
            kappa: series.kappa,
            character: format!("kronecker(-{})", series.disc.value()),
            embedding: series.embedding.clone(),
            exact_generator: None,
            n_start: 1,
            coefficients: series.complex_values()[1..]
                .iter()
                .map(|z| RawCoefficient::Embedded([format!("{:.17e}", z.re), format!("{:.17e}", z.im)]))
                .collect(),
        }
    }
}

/// Parses and validates fixture text.
pub fn parse_newform(text: &str) -> Result<NewformSeries> {
    let series = FixtureFile::parse(text)?.into_series(sha256_hex(text.as_bytes()))?;
    series.validate()?;
    Ok(series)
}

pub fn ingest_newform(source: &NewformSource) -> Result<NewformSeries> {
    match source {
        NewformSource::Bundled(label) => {
            let text = bundled_fixture(label)
                .ok_or_else(|| Error::Schema(format!("no bundled fixture {label:?}")))?;
            parse_newform(text)
        }
        NewformSource::Path(path) => parse_newform(&std::fs::read_to_string(path)?),
        NewformSource::Label { label, store } => store.load(label),
    }
}

/// Disk cache `cache_dir/<label>.json` in front of the bundled fixtures and the remote source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureStore {
    pub cache_dir: PathBuf,
    pub fetch: bool,
}

impl FixtureStore {
    pub fn new(cache_dir: impl Into<PathBuf>, fetch: bool) -> Self {
        Self {
            cache_dir: cache_dir.into(),
            fetch,
        }
    }

    pub fn cache_path(&self, label: &str) -> PathBuf {
        self.cache_dir.join(format!("{label}.json"))
    }

    /// Cache, then bundled data, then (if enabled) the remote API; fetched data is cached.
    pub fn load(&self, label: &str) -> Result<NewformSeries> {
        let path = self.cache_path(label);
        if path.exists() {
            return parse_newform(&std::fs::read_to_string(&path)?);
        }
        if let Some(text) = bundled_fixture(label) {
            return parse_newform(text);
        }
        if !self.fetch {
            return Err(Error::Fetch(format!(
                "{label} is neither cached nor bundled and fetching is disabled"
            )));
        }
        let body = fetch_lmfdb(label)?;
        let fixture = parse_lmfdb_response(label, &body)?;
        self.store(&fixture)?;
        self.load(label)
    }

    pub fn store(&self, fixture: &FixtureFile) -> Result<PathBuf> {
        std::fs::create_dir_all(&self.cache_dir)?;
        let path = self.cache_path(&fixture.label);
        write_fixture(&path, fixture)?;
        Ok(path)
    }
}

pub fn write_fixture(path: &Path, fixture: &FixtureFile) -> Result<()> {
    let text = serde_json::to_string_pretty(fixture)?;
    std::fs::write(path, text)?;
    Ok(())
}

pub fn lmfdb_url(label: &str) -> String {
    format!("{LMFDB_API}?label={label}&_format=json&_fields=label,an_normalized")
}

fn fetch_lmfdb(label: &str) -> Result<String> {
    let mut response = ureq::get(&lmfdb_url(label))
        .call()
        .map_err(|e| Error::Fetch(e.to_string()))?;
    response
        .body_mut()
        .read_to_string()
        .map_err(|e| Error::Fetch(e.to_string()))
}

#[derive(Deserialize)]
struct LmfdbRecord {
    label: String,
    an_normalized: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct LmfdbResponse {
    data: Vec<LmfdbRecord>,
}

/// Converts an `mf_hecke_cc` response (coefficients divided by `n^{(k−1)/2}`) into a fixture.
/// Labels look like `N.k.c.x.n.i`; only double precision is available this way.
pub fn parse_lmfdb_response(label: &str, body: &str) -> Result<FixtureFile> {
    let resp: LmfdbResponse =
        serde_json::from_str(body).map_err(|e| Error::Fetch(format!("bad response: {e}")))?;
    let record = resp
        .data
        .into_iter()
        .find(|r| r.label == label)
        .ok_or_else(|| Error::Fetch(format!("{label} not in response")))?;
    let mut parts = label.split('.');
    let mut field = |name: &str| -> Result<u64> {
        parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Fetch(format!("label {label:?} lacks {name}")))
    };
    let d = field("level")?;
    let weight = field("weight")? as u32;
    if weight % 2 == 0 {
        return Err(Error::Fetch(format!("weight {weight} is not odd")));
    }
    let kappa = (weight - 1) / 2;
    let coefficients = record
        .an_normalized
        .iter()
        .enumerate()
        .map(|(i, &[re, im])| {
            let s = ((i + 1) as f64).powi(kappa as i32);
            RawCoefficient::Embedded([format!("{:.17e}", re * s), format!("{:.17e}", im * s)])
        })
        .collect();
    Ok(FixtureFile {
        label: label.to_string(),
        d,
        weight,
        kappa,
        character: format!("kronecker(-{d})"),
        embedding: Some(format!("LMFDB embedding {label}")),
        exact_generator: None,
        n_start: 1,
        coefficients,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenforms::ingest_newform;

    #[test]
    fn bundled_fixtures_parse() {
        for label in BUNDLED_LABELS {
            let f = ingest_newform(&NewformSource::Bundled(label)).unwrap();
            assert_eq!(f.label, label);
            assert_eq!(f.kappa, 5);
            assert_eq!(f.source_hash.len(), 64);
        }
        assert_eq!(bundled_label_for(15), Some("15.11.quadratic.deg16"));
        assert_eq!(bundled_label_for(5), None);
    }

    #[test]
    fn schema_violations() {
        let good = bundled_fixture("3.11.quadratic.a").unwrap();
        let wrong_char = good.replace("kronecker(-3)", "kronecker(-4)");
        assert!(matches!(parse_newform(&wrong_char), Err(Error::Schema(_))));
        let wrong_start = good.replace("\"n_start\": 1", "\"n_start\": 0");
        assert!(matches!(parse_newform(&wrong_start), Err(Error::Schema(_))));
        let no_gen = good.replace("\"exact_generator\": 5", "\"exact_generator\": null");
        assert!(matches!(parse_newform(&no_gen), Err(Error::Schema(_))));
        assert!(matches!(parse_newform("{"), Err(Error::Schema(_))));
    }

    #[test]
    fn canned_lmfdb_response_round_trips() {
        let f = ingest_newform(&NewformSource::Bundled("15.11.quadratic.deg16")).unwrap();
        let an: Vec<[f64; 2]> = (1..=60)
            .map(|n| {
                let z = f.a(n).unwrap() / (n as f64).powi(5);
                [z.re, z.im]
            })
            .collect();
        let body = serde_json::json!({
            "data": [{"label": "15.11.d.a.8.1", "an_normalized": an}],
            "next": null
        })
        .to_string();
        let fixture = parse_lmfdb_response("15.11.d.a.8.1", &body).unwrap();
        assert_eq!(fixture.d, 15);
        assert_eq!(fixture.kappa, 5);

        let dir = tempdir();
        let store = FixtureStore::new(&dir, false);
        store.store(&fixture).unwrap();
        let g = store.load("15.11.d.a.8.1").unwrap();
        for n in 1..=60 {
            let (a, b) = (g.a(n).unwrap(), f.a(n).unwrap());
            assert!((a - b).norm() <= 1e-13 * b.norm().max(1.0), "n={n}");
        }
        // warm cache gives identical data
        let again = store.load("15.11.d.a.8.1").unwrap();
        assert_eq!(again.complex_values(), g.complex_values());
        assert_eq!(again.source_hash, g.source_hash);
        assert!(matches!(store.load("7.11.b.a"), Err(Error::Fetch(_))));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    fn tempdir() -> PathBuf {
        let dir = std::env::temp_dir().join(format!("hermlift-fixture-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }
}
