//! Fourier coefficients of the hermitian Maass lift `F_c` of `f` for one ideal class.
//!
//! For `H = (n, α; ᾱ, m/C)` with `α = (x + yτ)/√−D`, the integer `N_H = C·D·det H`
//! equals `nmD − (ax² + bxy + cy²)` and
//!
//! ```text
//! A_F(H) = Σ_{d | ε(H)} d^{2κ+1} α_F(N_H / d²),   ε(H) = gcd(n, m, x, y),
//! α_F(n) = a_f(n') ∏_{p | (D, n)} (a_f(n_p) + (−D, −Cn)_p conj(a_f(n_p))).
//! ```

use crate::arith::{factorize, smallest_prime_factors};
use crate::chartools::{chi_p, chi_q, local_norm_symbol, FundamentalDiscriminant, GenusSubset};
use crate::coeff::{Coefficient, QuadraticNumber};
use crate::eigenforms::{twist_values, NewformSeries};
use crate::error::{Error, Result};
use crate::quadfield::{BinaryQuadraticForm, IdealClassRep};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;

/// A lattice index `H = (n, α; ᾱ, m/C)` of a Fourier coefficient of `F_c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HermitianIndex {
    pub n: u64,
    pub m: u64,
    pub x: i64,
    pub y: i64,
    /// Representative form `(a, b, c)` of the class, `a = C`.
    pub form: BinaryQuadraticForm,
}

impl HermitianIndex {
    pub fn new(rep: &IdealClassRep, n: u64, m: u64, x: i64, y: i64) -> Self {
        Self {
            n,
            m,
            x,
            y,
            form: rep.form,
        }
    }

    fn d(&self) -> i64 {
        -self.form.discriminant()
    }

    /// `N_H = C·D·det H = nmD − f(x, y)`.
    pub fn scaled_det(&self) -> i64 {
        self.n as i64 * self.m as i64 * self.d() - self.form.evaluate(self.x, self.y)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.n > 0 && self.scaled_det() > 0
    }

    /// Largest `d` with `H/d` in the lattice.
    pub fn content(&self) -> u64 {
        let g = (self.n as i64).gcd(&(self.m as i64)).gcd(&self.x).gcd(&self.y);
        g as u64
    }

    /// The same index with `α ↦ −α`.
    pub fn negated(&self) -> Self {
        Self {
            x: -self.x,
            y: -self.y,
            ..*self
        }
    }
}

/// `∏_{p | D} (1 + χ_p(−Cn))`.
pub fn genus_factor(disc: &FundamentalDiscriminant, class_norm: u64, n: u64) -> u32 {
    let x = -(class_norm as i64) * n as i64;
    disc.ramified_primes()
        .iter()
        .map(|&p| (1 + chi_p(disc, p, x).expect("p divides D")) as u32)
        .product()
}

/// Memoized arithmetic data of `F_c` for all indices up to the coefficient bound of `f`.
#[derive(Debug, Clone)]
pub struct LiftTable<R> {
    pub disc: FundamentalDiscriminant,
    pub kappa: u32,
    pub rep: IdealClassRep,
    alpha: Vec<R>,
    genus: Vec<u32>,
    /// `(Q, χ_Q(−C), coefficients of f_Q)`.
    twists: Vec<(GenusSubset, i32, Vec<R>)>,
}

impl LiftTable<Complex64> {
    pub fn embedded(f: &NewformSeries, rep: &IdealClassRep) -> Result<Self> {
        Self::new(&f.disc, f.kappa, rep, f.complex_values())
    }
}

impl LiftTable<QuadraticNumber> {
    pub fn exact(f: &NewformSeries, rep: &IdealClassRep) -> Result<Self> {
        Self::new(&f.disc, f.kappa, rep, f.exact_values()?)
    }
}

impl<R: Coefficient> LiftTable<R> {
    /// `values[n] = a_f(n)` for `1 ≤ n ≤ n_max`.
    pub fn new(
        disc: &FundamentalDiscriminant,
        kappa: u32,
        rep: &IdealClassRep,
        values: &[R],
    ) -> Result<Self> {
        let c = rep.norm();
        if c.gcd(&(2 * disc.value())) != 1 {
            return Err(Error::BadClassNorm {
                norm: c,
                two_d: 2 * disc.value(),
            });
        }
        let n_max = values.len().saturating_sub(1);
        let spf = smallest_prime_factors(n_max);
        let mut alpha = vec![R::zero(); n_max + 1];
        for n in 1..=n_max {
            let mut rest = n;
            let mut unramified = 1usize;
            let mut ramified_factor = R::one();
            while rest > 1 {
                let p = spf[rest] as usize;
                let mut pe = 1;
                while rest % p == 0 {
                    rest /= p;
                    pe *= p;
                }
                if disc.value() % p as u64 == 0 {
                    let sign = local_norm_symbol(disc, p as u64, -(c as i64) * n as i64);
                    let a = &values[pe];
                    let term = a.clone() + R::from_i64(i64::from(sign)) * a.conj();
                    ramified_factor = ramified_factor * term;
                } else {
                    unramified *= pe;
                }
            }
            alpha[n] = values[unramified].clone() * ramified_factor;
        }
        let genus = (0..=n_max as u64)
            .map(|n| if n == 0 { 0 } else { genus_factor(disc, c, n) })
            .collect();
        let twists = GenusSubset::all(disc)
            .into_iter()
            .map(|q| {
                let sign = chi_q(disc, &q, -(c as i64));
                let t = twist_values(disc, kappa, values, &q);
                (q, sign, t)
            })
            .collect();
        Ok(Self {
            disc: disc.clone(),
            kappa,
            rep: rep.clone(),
            alpha,
            genus,
            twists,
        })
    }

    pub fn n_max(&self) -> u64 {
        self.alpha.len().saturating_sub(1) as u64
    }

    pub fn class_norm(&self) -> u64 {
        self.rep.norm()
    }

    fn check(&self, n: u64) -> Result<usize> {
        if n == 0 || n > self.n_max() {
            return Err(Error::InsufficientCoefficients {
                needed: n,
                available: self.n_max(),
            });
        }
        Ok(n as usize)
    }

    /// `α_F(n)`: the lift coefficient at primitive indices with `N_H = n`.
    pub fn primitive_coefficient(&self, n: u64) -> Result<&R> {
        self.check(n).map(|i| &self.alpha[i])
    }

    /// `∏_{p | D} (1 + χ_p(−Cn))`, in `{0, 1, 2, 4, …}`.
    pub fn genus_factor(&self, n: u64) -> Result<u32> {
        self.check(n).map(|i| self.genus[i])
    }

    /// `a(n)` of `f^{c*} = Σ_Q χ_Q(−C) f_Q`.
    pub fn twisted_sum(&self, n: u64) -> Result<R> {
        let i = self.check(n)?;
        Ok(self
            .twists
            .iter()
            .fold(R::zero(), |acc, (_, sign, t)| {
                acc + R::from_i64(i64::from(*sign)) * t[i].clone()
            }))
    }

    /// `A_F(H)`.
    pub fn lift_coefficient(&self, h: &HermitianIndex) -> Result<R> {
        if h.form != self.rep.form {
            return Err(Error::Lattice(format!(
                "index built for {:?}, table for {:?}",
                h.form, self.rep.form
            )));
        }
        if !h.is_positive_definite() {
            return Err(Error::NotPositiveDefinite {
                n: h.n,
                m: h.m,
                x: h.x,
                y: h.y,
            });
        }
        let det = h.scaled_det() as u64;
        let mut total = R::zero();
        for d in divisors(h.content()) {
            if det % (d * d) != 0 {
                return Err(Error::Lattice(format!(
                    "N_H = {det} not divisible by {d}² for {h:?}"
                )));
            }
            let weight = BigInt::from(d).pow(2 * self.kappa + 1);
            total = total + R::from_bigint(&weight) * self.primitive_coefficient(det / (d * d))?.clone();
        }
        Ok(total)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}
