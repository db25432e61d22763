//! Quadratic characters attached to an imaginary quadratic field.
//!
//! `χ(n) = (−D | n)` is the Kronecker symbol of the field discriminant. It factors as a
//! product of characters `χ_p` over the primes `p | D`, and products of those over subsets
//! `Q` of the ramified primes give the genus characters `χ_Q` and their complements `χ'_Q`.
//! The local symbols `(a, b)_v` appear in the lift coefficients through `(−D, x)_{Q_p}`.

use crate::arith::{crt, factorize, is_squarefree, jacobi, kronecker_symbol, valuation};
use crate::error::{Error, Result};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// `D > 0` such that `−D` is a fundamental discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FundamentalDiscriminant {
    d: u64,
    ramified: Vec<u64>,
}

impl FundamentalDiscriminant {
    pub fn new(d: u64) -> Result<Self> {
        let ok = match d % 4 {
            3 => is_squarefree(d),
            0 => {
                let m = d / 4;
                (m % 4 == 1 || m % 4 == 2) && is_squarefree(m)
            }
            _ => false,
        };
        if !ok {
            return Err(Error::InvalidDiscriminant(d as i64));
        }
        let ramified = factorize(d).into_iter().map(|(p, _)| p).collect();
        Ok(Self { d, ramified })
    }

    pub fn value(&self) -> u64 {
        self.d
    }

    /// The primes dividing `D`, ascending.
    pub fn ramified_primes(&self) -> &[u64] {
        &self.ramified
    }

    /// `D_p = p^{ord_p(D)}`.
    pub fn local_part(&self, p: u64) -> u64 {
        let mut dp = 1;
        let mut rest = self.d;
        while rest % p == 0 {
            rest /= p;
            dp *= p;
        }
        dp
    }

    /// Number of roots of unity in `Q(√−D)`.
    pub fn roots_of_unity(&self) -> u32 {
        match self.d {
            3 => 6,
            4 => 4,
            _ => 2,
        }
    }
}

/// A subset `Q` of the ramified primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenusSubset {
    primes: Vec<u64>,
}

impl GenusSubset {
    pub fn new(d: &FundamentalDiscriminant, primes: &[u64]) -> Result<Self> {
        let mut primes = primes.to_vec();
        primes.sort_unstable();
        primes.dedup();
        for &p in &primes {
            if !d.ramified_primes().contains(&p) {
                return Err(Error::NotRamified { d: d.value(), p });
            }
        }
        Ok(Self { primes })
    }

    pub fn empty() -> Self {
        Self { primes: Vec::new() }
    }

    pub fn full(d: &FundamentalDiscriminant) -> Self {
        Self {
            primes: d.ramified_primes().to_vec(),
        }
    }

    /// All `2^t` subsets, ordered by the bitmask over the ascending ramified primes.
    pub fn all(d: &FundamentalDiscriminant) -> Vec<Self> {
        let ram = d.ramified_primes();
        (0u32..(1 << ram.len()))
            .map(|mask| Self {
                primes: ram
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &p)| p)
                    .collect(),
            })
            .collect()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn complement(&self, d: &FundamentalDiscriminant) -> Self {
        Self {
            primes: d
                .ramified_primes()
                .iter()
                .copied()
                .filter(|p| !self.contains(*p))
                .collect(),
        }
    }
}

/// A place of `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    Infinity,
    Prime(u64),
}

/// `χ(n) = (−D | n)`.
pub fn kronecker(d: &FundamentalDiscriminant, n: i64) -> i32 {
    kronecker_symbol(-(d.value() as i128), i128::from(n))
}

/// The prime-factor character `χ_p`: `χ(m)` for `m ≡ n mod D_p`, `m ≡ 1 mod D/D_p`.
pub fn chi_p(d: &FundamentalDiscriminant, p: u64, n: i64) -> Result<i32> {
    if !d.ramified_primes().contains(&p) {
        return Err(Error::NotRamified { d: d.value(), p });
    }
    if n.rem_euclid(p as i64) == 0 {
        return Ok(0);
    }
    let dp = d.local_part(p) as i64;
    let rest = d.value() as i64 / dp;
    let m = crt(n.rem_euclid(dp), dp, 1 % rest, rest);
    Ok(kronecker(d, m))
}

/// `χ_Q = ∏_{p∈Q} χ_p`; `χ_∅ = 1`.
pub fn chi_q(d: &FundamentalDiscriminant, q: &GenusSubset, n: i64) -> i32 {
    q.primes()
        .iter()
        .map(|&p| chi_p(d, p, n).expect("genus subset validated against D"))
        .product()
}

/// `χ'_Q = ∏_{p∈Q_D∖Q} χ_p`.
pub fn chi_q_prime(d: &FundamentalDiscriminant, q: &GenusSubset, n: i64) -> i32 {
    chi_q(d, &q.complement(d), n)
}

/// Hilbert symbol `(a, b)_v` for nonzero rationals.
pub fn hilbert_symbol(a: Ratio<i64>, b: Ratio<i64>, place: Place) -> i32 {
    assert!(
        *a.numer() != 0 && *b.numer() != 0,
        "hilbert symbol of zero"
    );
    // multiply by the square of the denominator
    let a = i128::from(*a.numer()) * i128::from(*a.denom());
    let b = i128::from(*b.numer()) * i128::from(*b.denom());
    hilbert_symbol_int(a, b, place)
}

/// Hilbert symbol `(a, b)_v` for nonzero integers.
pub fn hilbert_symbol_int(a: i128, b: i128, place: Place) -> i32 {
    assert!(a != 0 && b != 0, "hilbert symbol of zero");
    match place {
        Place::Infinity => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(p) => {
            let p = i128::from(p);
            let alpha = valuation(a, p);
            let beta = valuation(b, p);
            let u = a / p.pow(alpha);
            let v = b / p.pow(beta);
            if p == 2 {
                let eps = |x: i128| i32::from(x.rem_euclid(4) == 3);
                let omega = |x: i128| {
                    let r = x.rem_euclid(8);
                    i32::from(r == 3 || r == 5)
                };
                let e = eps(u) * eps(v)
                    + (alpha as i32) * omega(v)
                    + (beta as i32) * omega(u);
                if e % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                let mut s = if (alpha * beta) % 2 == 1 && p % 4 == 3 {
                    -1
                } else {
                    1
                };
                if beta % 2 == 1 {
                    s *= jacobi(u, p);
                }
                if alpha % 2 == 1 {
                    s *= jacobi(v, p);
                }
                s
            }
        }
    }
}

/// `underline-χ_p(x) = (−D, x)_{Q_p}`.
pub fn local_norm_symbol(d: &FundamentalDiscriminant, p: u64, x: i64) -> i32 {
    hilbert_symbol_int(-(d.value() as i128), i128::from(x), Place::Prime(p))
}
