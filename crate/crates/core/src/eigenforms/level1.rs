//! Exact q-expansions of the normalized eigenform in the one-dimensional spaces
//! `S_k(SL_2(Z))`, `k ∈ {12, 16, 18, 20, 22, 26}`.

use crate::arith::{divisor_count, primes_up_to};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub const SUPPORTED_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// `g = Σ a(n) qⁿ` with exact integer coefficients; index 0 holds 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level1Eigenform {
    pub weight: u32,
    coeffs: Vec<BigInt>,
}

type Series = Vec<BigInt>;

fn mul_trunc(a: &[BigInt], b: &[BigInt], len: usize) -> Series {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `∏_{n≥1} (1 − qⁿ)` by the pentagonal number theorem.
fn euler_product(len: usize) -> Series {
    let mut out = vec![BigInt::zero(); len];
    let mut k: i64 = 0;
    loop {
        let mut hit = false;
        for j in [k, -k] {
            let e = (j * (3 * j - 1) / 2) as usize;
            if e < len {
                hit = true;
                let sign = if k % 2 == 0 { 1 } else { -1 };
                out[e] = BigInt::from(sign);
            }
            if k == 0 {
                break;
            }
        }
        if !hit && k > 0 {
            break;
        }
        k += 1;
    }
    out
}

fn sigma(n: u64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
            if d * d != n {
                s += BigInt::from(n / d).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ` for `k ∈ {4, 6}`.
fn eisenstein(k: u32, len: usize) -> Series {
    let scale: i64 = match k {
        4 => 240,
        6 => -504,
        _ => unreachable!("only E4 and E6 are needed"),
    };
    (0..len)
        .map(|n| {
            if n == 0 {
                BigInt::one()
            } else {
                sigma(n as u64, k - 1) * scale
            }
        })
        .collect()
}

fn delta(len: usize) -> Series {
    let e = euler_product(len);
    let e2 = mul_trunc(&e, &e, len);
    let e4 = mul_trunc(&e2, &e2, len);
    let e8 = mul_trunc(&e4, &e4, len);
    let e16 = mul_trunc(&e8, &e8, len);
    let e24 = mul_trunc(&e16, &e8, len);
    let mut out = vec![BigInt::zero(); len];
    out[1..].clone_from_slice(&e24[..len - 1]);
    out
}

/// The normalized eigenform of the given weight up to `qⁿ_max`.
pub fn level1_eigenform(weight: u32, n_max: usize) -> Result<Level1Eigenform> {
    if !SUPPORTED_WEIGHTS.contains(&weight) {
        return Err(Error::UnsupportedWeight(weight));
    }
    let len = n_max + 1;
    let d = delta(len.max(2));
    let e4 = || eisenstein(4, len.max(2));
    let e6 = || eisenstein(6, len.max(2));
    let mut coeffs = match weight {
        12 => d,
        16 => mul_trunc(&d, &e4(), len.max(2)),
        18 => mul_trunc(&d, &e6(), len.max(2)),
        20 => mul_trunc(&mul_trunc(&d, &e4(), len.max(2)), &e4(), len.max(2)),
        22 => mul_trunc(&mul_trunc(&d, &e4(), len.max(2)), &e6(), len.max(2)),
        26 => {
            let e4e4 = mul_trunc(&e4(), &e4(), len.max(2));
            mul_trunc(&mul_trunc(&d, &e4e4, len.max(2)), &e6(), len.max(2))
        }
        _ => unreachable!(),
    };
    coeffs.truncate(len);
    Ok(Level1Eigenform { weight, coeffs })
}

impl Level1Eigenform {
    pub fn n_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `(weight − 2)/2`, so that the weight is `2κ + 2`.
    pub fn kappa(&self) -> u32 {
        (self.weight - 2) / 2
    }

    pub fn a(&self, n: usize) -> Result<&BigInt> {
        self.coeffs.get(n).ok_or(Error::InsufficientCoefficients {
            needed: n as u64,
            available: self.n_max() as u64,
        })
    }

    pub fn a_f64(&self, n: usize) -> Result<f64> {
        self.a(n).map(|x| x.to_f64().unwrap_or(f64::NAN))
    }

    /// Coefficients converted into `R`, index `n` for `qⁿ`.
    pub fn values<R: Coefficient>(&self) -> Vec<R> {
        self.coeffs.iter().map(R::from_bigint).collect()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|x| x.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// Checks `a(1) = 1`, multiplicativity, the Hecke recursion at every `p^r ≤ n_max`,
    /// and Deligne's bound `|a(n)| ≤ d(n) n^{(k−1)/2}`.
    pub fn validate(&self) -> Result<()> {
        let n_max = self.n_max();
        if n_max >= 1 && !self.coeffs[1].is_one() {
            return Err(Error::InvariantViolation {
                what: "normalization a(1) = 1".into(),
                n: 1,
            });
        }
        let k1 = self.weight - 1;
        for p in primes_up_to(n_max) {
            let pk = BigInt::from(p).pow(k1);
            let mut pr = p * p;
            let mut prev = p;
            let mut prev2 = 1u64;
            while pr as usize <= n_max {
                let expect = &self.coeffs[p as usize] * &self.coeffs[prev as usize]
                    - &pk * &self.coeffs[prev2 as usize];
                if self.coeffs[pr as usize] != expect {
                    return Err(Error::InvariantViolation {
                        what: "Hecke recursion".into(),
                        n: pr,
                    });
                }
                prev2 = prev;
                prev = pr;
                pr *= p;
            }
        }
        for m in 2..=n_max {
            for n in 2..=n_max / m {
                if num_integer::gcd(m, n) == 1 && self.coeffs[m * n] != &self.coeffs[m] * &self.coeffs[n] {
                    return Err(Error::InvariantViolation {
                        what: "multiplicativity".into(),
                        n: (m * n) as u64,
                    });
                }
            }
        }
        for n in 1..=n_max {
            let bound = divisor_count(n as u64) as f64 * (n as f64).powf(f64::from(k1) / 2.0);
            if self.a_f64(n)?.abs() > bound * (1.0 + 1e-12) {
                return Err(Error::InvariantViolation {
                    what: "Deligne bound".into(),
                    n: n as u64,
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_delta(len: usize) -> Vec<i64> {
        // q ∏_{n<len} (1 − qⁿ)^24 by repeated multiplication with a single factor
        let mut s = vec![0i64; len];
        s[0] = 1;
        for n in 1..len {
            for _ in 0..24 {
                for i in (n..len).rev() {
                    s[i] -= s[i - n];
                }
            }
        }
        let mut out = vec![0i64; len];
        out[1..].copy_from_slice(&s[..len - 1]);
        out
    }

    #[test]
    fn ramanujan_tau() {
        let g = level1_eigenform(12, 30).unwrap();
        assert_eq!(g.a(2).unwrap(), &BigInt::from(-24));
        assert_eq!(g.a(3).unwrap(), &BigInt::from(252));
        assert_eq!(g.a(6).unwrap(), &BigInt::from(-6048));
        let naive = naive_delta(31);
        for n in 0..=30 {
            assert_eq!(g.a(n).unwrap(), &BigInt::from(naive[n]), "n={n}");
        }
        g.validate().unwrap();
    }

    #[test]
    fn higher_weights_are_hecke_eigenforms() {
        for w in SUPPORTED_WEIGHTS {
            let g = level1_eigenform(w, 200).unwrap();
            assert_eq!(g.a(1).unwrap(), &BigInt::one());
            g.validate().unwrap_or_else(|e| panic!("weight {w}: {e}"));
        }
        assert_eq!(level1_eigenform(16, 5).unwrap().a(2).unwrap(), &BigInt::from(216));
        assert_eq!(level1_eigenform(18, 5).unwrap().a(2).unwrap(), &BigInt::from(-528));
    }

    #[test]
    fn unsupported_weights_are_rejected() {
        for w in [2, 4, 10, 14, 24, 28] {
            assert!(matches!(level1_eigenform(w, 10), Err(Error::UnsupportedWeight(_))));
        }
    }

    #[test]
    fn validation_catches_corruption() {
        let mut g = level1_eigenform(12, 50).unwrap();
        g.coeffs[12] += 1;
        assert!(matches!(
            g.validate(),
            Err(Error::InvariantViolation { n: 12, .. })
        ));
    }
}
