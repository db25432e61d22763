//! Hecke eigenform coefficient sources: ingested newforms `f ∈ S_{2κ+1}(Γ_0(D), χ)`,
//! their genus twists `f_Q`, and the level-one engine for `g`.

pub mod fixture;
pub mod level1;

pub use fixture::{ingest_newform, FixtureStore, NewformSource};
pub use level1::{level1_eigenform, Level1Eigenform, SUPPORTED_WEIGHTS};

use crate::arith::{divisor_count, primes_up_to, smallest_prime_factors};
use crate::chartools::{chi_q, chi_q_prime, kronecker, FundamentalDiscriminant, GenusSubset};
use crate::coeff::{Coefficient, QuadraticNumber};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;

/// Relative tolerance for multiplicativity and Hecke checks on decimal data.
pub const RELATIVE_CHECK_TOL: f64 = 1e-10;
/// Relative tolerance for `|a_f(D)| = D^κ` and the Satake modulus.
pub const MODULUS_CHECK_TOL: f64 = 1e-8;

/// Coefficients `a_f(1..=n_max)` of a normalized newform of weight `2κ+1`, level `D`,
/// character `χ = (−D|·)`, in a fixed complex embedding and optionally exactly.
#[derive(Debug, Clone)]
pub struct NewformSeries {
    pub label: String,
    pub disc: FundamentalDiscriminant,
    pub kappa: u32,
    pub embedding: Option<String>,
    /// Index `n` holds `a_f(n)`; index 0 holds 0.
    coeffs: Vec<Complex64>,
    exact: Option<Vec<QuadraticNumber>>,
    /// SHA-256 of the source the series was read from.
    pub source_hash: String,
}

/// `a(p^e m) = a(p^e) a(m)` with `a(p^{r+1}) = a(p) a(p^r) − χ(p) p^{2κ} a(p^{r−1})`,
/// filled from prime values for all `n ≤ n_max`.
pub fn hecke_extend<R: Coefficient>(
    disc: &FundamentalDiscriminant,
    kappa: u32,
    prime_value: impl Fn(u64) -> R,
    n_max: usize,
) -> Vec<R> {
    let spf = smallest_prime_factors(n_max);
    let mut out: Vec<R> = vec![R::zero(); n_max + 1];
    if n_max >= 1 {
        out[1] = R::one();
    }
    for n in 2..=n_max {
        let p = spf[n] as usize;
        let mut m = n;
        let mut pe = 1;
        while m % p == 0 {
            m /= p;
            pe *= p;
        }
        if m > 1 {
            out[n] = out[pe].clone() * out[m].clone();
        } else if pe == p {
            out[n] = prime_value(p as u64);
        } else {
            let chi = kronecker(disc, p as i64);
            let weight = BigInt::from(chi) * BigInt::from(p).pow(2 * kappa);
            out[n] = out[p].clone() * out[n / p].clone()
                - R::from_bigint(&weight) * out[n / (p * p)].clone();
        }
    }
    out
}

/// Prime data of the genus twist: `χ_Q(p) a(p)` for `p ∉ Q`, `χ'_Q(p) conj(a(p))` for `p ∈ Q`.
pub fn twist_prime<R: Coefficient>(
    disc: &FundamentalDiscriminant,
    q: &GenusSubset,
    p: u64,
    a_p: &R,
) -> R {
    if q.contains(p) {
        R::from_i64(i64::from(chi_q_prime(disc, q, p as i64))) * a_p.conj()
    } else {
        R::from_i64(i64::from(chi_q(disc, q, p as i64))) * a_p.clone()
    }
}

/// Coefficients of `f_Q` from those of `f` (index `n` holds `a(n)`).
pub fn twist_values<R: Coefficient>(
    disc: &FundamentalDiscriminant,
    kappa: u32,
    values: &[R],
    q: &GenusSubset,
) -> Vec<R> {
    let n_max = values.len().saturating_sub(1);
    hecke_extend(
        disc,
        kappa,
        |p| twist_prime(disc, q, p, &values[p as usize]),
        n_max,
    )
}

fn close(x: Complex64, y: Complex64, rel: f64, scale: f64) -> bool {
    (x - y).norm() <= rel * x.norm().max(y.norm()).max(scale)
}

impl NewformSeries {
    pub fn new(
        label: impl Into<String>,
        disc: FundamentalDiscriminant,
        kappa: u32,
        coeffs: Vec<Complex64>,
        exact: Option<Vec<QuadraticNumber>>,
        embedding: Option<String>,
        source_hash: String,
    ) -> Result<Self> {
        if let Some(ex) = &exact {
            if ex.len() != coeffs.len() {
                return Err(Error::Schema("exact and embedded coefficient counts differ".into()));
            }
        }
        Ok(Self {
            label: label.into(),
            disc,
            kappa,
            embedding,
            coeffs,
            exact,
            source_hash,
        })
    }

    /// Builds a series from `a_f(p)` for every prime `p ≤ n_max`.
    pub fn from_prime_coefficients(
        label: impl Into<String>,
        disc: FundamentalDiscriminant,
        kappa: u32,
        primes: &[(u64, Complex64)],
        n_max: usize,
    ) -> Result<Self> {
        for p in primes_up_to(n_max) {
            if !primes.iter().any(|&(q, _)| q == p) {
                return Err(Error::InsufficientCoefficients {
                    needed: p,
                    available: n_max as u64,
                });
            }
        }
        let lookup = |p: u64| primes.iter().find(|&&(q, _)| q == p).map(|&(_, v)| v).unwrap();
        let coeffs = hecke_extend(&disc, kappa, lookup, n_max);
        Self::new(label, disc, kappa, coeffs, None, None, String::new())
    }

    pub fn n_max(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn weight(&self) -> u32 {
        2 * self.kappa + 1
    }

    pub fn a(&self, n: usize) -> Result<Complex64> {
        if n == 0 || n > self.n_max() {
            return Err(Error::InsufficientCoefficients {
                needed: n as u64,
                available: self.n_max() as u64,
            });
        }
        Ok(self.coeffs[n])
    }

    pub fn a_exact(&self, n: usize) -> Result<&QuadraticNumber> {
        let ex = self
            .exact
            .as_ref()
            .ok_or_else(|| Error::NoExactData(self.label.clone()))?;
        if n == 0 || n > self.n_max() {
            return Err(Error::InsufficientCoefficients {
                needed: n as u64,
                available: self.n_max() as u64,
            });
        }
        Ok(&ex[n])
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// Embedded values, index `n` for `a_f(n)`.
    pub fn complex_values(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn exact_values(&self) -> Result<&[QuadraticNumber]> {
        self.exact
            .as_deref()
            .ok_or_else(|| Error::NoExactData(self.label.clone()))
    }

    /// The first `n_max` coefficients.
    pub fn truncate(&self, n_max: usize) -> Result<Self> {
        if n_max > self.n_max() {
            return Err(Error::InsufficientCoefficients {
                needed: n_max as u64,
                available: self.n_max() as u64,
            });
        }
        let mut out = self.clone();
        out.coeffs.truncate(n_max + 1);
        if let Some(ex) = &mut out.exact {
            ex.truncate(n_max + 1);
        }
        Ok(out)
    }

    /// The conjugate newform (the other complex embedding, or the Galois conjugate).
    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        out.coeffs.iter_mut().for_each(|z| *z = z.conj());
        if let Some(ex) = &mut out.exact {
            ex.iter_mut().for_each(|z| *z = Coefficient::conj(z));
        }
        out.label = format!("{}.conj", self.label);
        out
    }

    /// Recomputes `a_f(n)` for `n ≤ n_max'` from prime data; values already present must agree.
    pub fn extend_hecke(&self, n_max: usize) -> Result<Self> {
        if let Some(&p) = primes_up_to(n_max).iter().find(|&&p| p as usize > self.n_max()) {
            return Err(Error::InsufficientCoefficients {
                needed: p,
                available: self.n_max() as u64,
            });
        }
        let coeffs = hecke_extend(&self.disc, self.kappa, |p| self.coeffs[p as usize], n_max);
        let scale = |n: usize| (n as f64).powf(f64::from(self.kappa));
        for n in 1..=n_max.min(self.n_max()) {
            if !close(coeffs[n], self.coeffs[n], 1e-9, scale(n)) {
                return Err(Error::InvariantViolation {
                    what: "Hecke extension disagrees with stored value".into(),
                    n: n as u64,
                });
            }
        }
        let exact = match &self.exact {
            Some(ex) => {
                let e = hecke_extend(&self.disc, self.kappa, |p| ex[p as usize].clone(), n_max);
                if let Some(n) = (1..=n_max.min(self.n_max())).find(|&n| e[n] != ex[n]) {
                    return Err(Error::InvariantViolation {
                        what: "exact Hecke extension disagrees with stored value".into(),
                        n: n as u64,
                    });
                }
                Some(e)
            }
            None => None,
        };
        let mut out = self.clone();
        out.coeffs = coeffs;
        out.exact = exact;
        Ok(out)
    }

    /// The genus twist `f_Q`.
    pub fn twist(&self, q: &GenusSubset) -> Self {
        let mut out = self.clone();
        out.coeffs = twist_values(&self.disc, self.kappa, &self.coeffs, q);
        out.exact = self
            .exact
            .as_ref()
            .map(|ex| twist_values(&self.disc, self.kappa, ex, q));
        if !q.is_empty() {
            let primes: Vec<String> = q.primes().iter().map(u64::to_string).collect();
            out.label = format!("{}.twist[{}]", self.label, primes.join(","));
        }
        out
    }

    /// Runs every structural check; the first failure names the offending index.
    pub fn validate(&self) -> Result<()> {
        let n_max = self.n_max();
        let d = self.disc.value();
        let kappa = f64::from(self.kappa);
        let violation = |what: &str, n: usize| Error::InvariantViolation {
            what: what.into(),
            n: n as u64,
        };
        if n_max == 0 {
            return Err(Error::Schema("no coefficients".into()));
        }
        if !close(self.coeffs[1], Complex64::new(1.0, 0.0), 1e-15, 1.0) {
            return Err(violation("normalization a(1) = 1", 1));
        }
        let scale = |n: usize| (n as f64).powf(kappa) * divisor_count(n as u64) as f64;

        // multiplicativity on coprime pairs
        for m in 2..=n_max {
            for n in (m + 1)..=n_max / m {
                if num_integer::gcd(m, n) == 1
                    && !close(
                        self.coeffs[m * n],
                        self.coeffs[m] * self.coeffs[n],
                        RELATIVE_CHECK_TOL,
                        scale(m * n),
                    )
                {
                    return Err(violation("multiplicativity", m * n));
                }
            }
        }

        for p in primes_up_to(n_max) {
            let pu = p as usize;
            let chi = kronecker(&self.disc, p as i64);
            let ap = self.coeffs[pu];
            if chi == 0 {
                let mut pr = pu * pu;
                let mut expect = ap * ap;
                while pr <= n_max {
                    if !close(self.coeffs[pr], expect, RELATIVE_CHECK_TOL, scale(pr)) {
                        return Err(violation("a(p^r) = a(p)^r at ramified p", pr));
                    }
                    expect *= ap;
                    pr *= pu;
                }
            } else {
                let weight = f64::from(chi) * (p as f64).powi(2 * self.kappa as i32);
                let mut pr = pu * pu;
                while pr <= n_max {
                    let expect = ap * self.coeffs[pr / pu] - weight * self.coeffs[pr / (pu * pu)];
                    if !close(self.coeffs[pr], expect, RELATIVE_CHECK_TOL, scale(pr)) {
                        return Err(violation("Hecke recursion", pr));
                    }
                    pr *= pu;
                }
                // Satake roots of 1 − a(p)X + χ(p)p^{2κ}X² have modulus p^κ
                let disc_sq = (ap * ap - 4.0 * weight).sqrt();
                let pk = (p as f64).powf(kappa);
                for root in [(ap + disc_sq) / 2.0, (ap - disc_sq) / 2.0] {
                    if ((root.norm() / pk) - 1.0).abs() > 1e-6 {
                        return Err(violation("Satake parameter of modulus one", pu));
                    }
                }
            }
        }

        if (d as usize) <= n_max {
            let ad = self.coeffs[d as usize].norm();
            let target = (d as f64).powf(kappa);
            if ((ad / target) - 1.0).abs() > MODULUS_CHECK_TOL {
                return Err(violation("|a(D)| = D^κ", d as usize));
            }
        }

        if let Some(ex) = &self.exact {
            if ex[1] != QuadraticNumber::one() {
                return Err(violation("exact normalization", 1));
            }
            for n in 1..=n_max {
                if !close(ex[n].to_complex(), self.coeffs[n], 1e-12, scale(n)) {
                    return Err(violation("exact and embedded values agree", n));
                }
            }
            let e = hecke_extend(&self.disc, self.kappa, |p| ex[p as usize].clone(), n_max);
            if let Some(n) = (1..=n_max).find(|&n| e[n] != ex[n]) {
                return Err(violation("exact Hecke relations", n));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::QuadraticNumber;
    use num_rational::BigRational;

    fn sqrt5(u: i64, v: i64) -> QuadraticNumber {
        QuadraticNumber::new(
            5,
            BigRational::from_integer(u.into()),
            BigRational::from_integer(v.into()),
        )
    }

    fn d3() -> NewformSeries {
        ingest_newform(&NewformSource::Bundled("3.11.quadratic.a")).unwrap()
    }

    #[test]
    fn d3_q_expansion() {
        let f = d3();
        assert_eq!(f.a_exact(2).unwrap(), &sqrt5(0, 12));
        assert_eq!(f.a_exact(3).unwrap(), &sqrt5(-27, 108));
        assert_eq!(f.a_exact(4).unwrap(), &sqrt5(304, 0));
        assert_eq!(f.a_exact(6).unwrap(), &sqrt5(-6480, -324));
        // |a(3)|² = 3^10
        assert_eq!(
            f.a_exact(3).unwrap().norm(),
            BigRational::from_integer(59049.into())
        );
    }

    #[test]
    fn hecke_extension_from_primes() {
        let f = d3();
        let ex = f.exact_values().unwrap();
        let rebuilt = hecke_extend(&f.disc, 5, |p| ex[p as usize].clone(), 60);
        assert_eq!(rebuilt[4], sqrt5(304, 0));
        assert_eq!(rebuilt[1], QuadraticNumber::one());
        assert_eq!(&rebuilt[..], &ex[..=60]);
        let g = f.extend_hecke(200).unwrap();
        assert_eq!(g.n_max(), 200);
        assert!(f.extend_hecke(f.n_max() + 50).is_err());

        let primes: Vec<(u64, Complex64)> = primes_up_to(100)
            .into_iter()
            .map(|p| (p, f.a(p as usize).unwrap()))
            .collect();
        let h = NewformSeries::from_prime_coefficients("d3", f.disc.clone(), 5, &primes, 100).unwrap();
        for n in 1..=100 {
            assert!((h.a(n).unwrap() - f.a(n).unwrap()).norm() < 1e-9 * (n as f64).powi(6));
        }
    }

    #[test]
    fn twists() {
        let f = d3();
        let full = GenusSubset::full(&f.disc);
        let empty = GenusSubset::empty();
        let t = f.twist(&full);
        assert_eq!(t.a_exact(3).unwrap(), &sqrt5(-27, -108));
        let same = f.twist(&empty);
        assert_eq!(same.exact_values().unwrap(), f.exact_values().unwrap());
        t.validate().unwrap();

        let f15 = ingest_newform(&NewformSource::Bundled("15.11.quadratic.deg16")).unwrap();
        for q in GenusSubset::all(&f15.disc) {
            let fq = f15.twist(&q);
            let fq2 = f15.twist(&q.complement(&f15.disc));
            fq.validate().unwrap();
            for n in 1..=50 {
                let a = fq.a(n).unwrap();
                let b = fq2.a(n).unwrap().conj();
                assert!((a - b).norm() <= 1e-10 * a.norm().max(1.0), "n={n}");
            }
        }
    }

    #[test]
    fn twist_commutes_with_truncation() {
        let f = ingest_newform(&NewformSource::Bundled("15.11.quadratic.deg16")).unwrap();
        let q = GenusSubset::new(&f.disc, &[3]).unwrap();
        let short = f.truncate(120).unwrap().twist(&q);
        let long = f.twist(&q).truncate(120).unwrap();
        assert_eq!(short.complex_values(), long.complex_values());
    }

    #[test]
    fn validation_rejects_corrupted_data() {
        let f = d3();
        let mut bad = f.clone();
        bad.coeffs[10] *= 1.0 + 1e-6;
        bad.exact = None;
        match bad.validate() {
            Err(Error::InvariantViolation { n, .. }) => assert_eq!(n, 10),
            other => panic!("expected a violation at 10, got {other:?}"),
        }
        let mut bad = f.clone();
        bad.exact.as_mut().unwrap()[7] = sqrt5(17234, 1);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn bundled_fixtures_validate() {
        for label in fixture::BUNDLED_LABELS {
            let f = ingest_newform(&NewformSource::Bundled(label)).unwrap();
            let d = f.disc.value() as usize;
            let ad = f.a(d).unwrap().norm();
            assert!((ad / (d as f64).powi(5) - 1.0).abs() < MODULUS_CHECK_TOL, "{label}");
        }
        let f15 = ingest_newform(&NewformSource::Bundled("15.11.quadratic.deg16")).unwrap();
        assert!((f15.a(2).unwrap().re - 50.905845043091).abs() < 1e-9);
        let a15 = f15.a(15).unwrap();
        assert!((a15.re + 567822.2227).abs() < 1e-3, "{a15}");
        assert!((a15.im - 504210.5849).abs() < 1e-3, "{a15}");
    }
}
