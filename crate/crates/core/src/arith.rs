//! Small-integer number theory shared by the character, class-group and lift code.

use num_integer::Integer;

/// Trial-division factorization of `|n|` into `(prime, exponent)` pairs, ascending.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).first() == Some(&(n, 1))
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Exponent of `p` in `n` (n != 0).
pub fn valuation(n: i128, p: i128) -> u32 {
    debug_assert!(n != 0 && p > 1);
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

/// Smallest prime factor table on `0..=n` (entries 0 and 1 are 0).
pub fn smallest_prime_factors(n: usize) -> Vec<u64> {
    let mut spf = vec![0u64; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i as u64;
                }
                j += i;
            }
        }
    }
    spf
}

/// Number of divisors of `n`.
pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| u64::from(e) + 1).product()
}

/// Solve `x ≡ r1 (mod m1)`, `x ≡ r2 (mod m2)` for coprime moduli; least non-negative residue.
pub fn crt(r1: i64, m1: i64, r2: i64, m2: i64) -> i64 {
    let (m1w, m2w) = (i128::from(m1), i128::from(m2));
    let e = i128::extended_gcd(&m1w, &m2w);
    assert_eq!(e.gcd, 1, "crt: moduli {m1} and {m2} are not coprime");
    let m = m1w * m2w;
    // x = r1 + m1 * k with m1 * k ≡ r2 - r1 (mod m2)
    let k = ((i128::from(r2) - i128::from(r1)) * e.x).rem_euclid(m2w);
    ((i128::from(r1) + m1w * k).rem_euclid(m)) as i64
}

/// Jacobi symbol `(a | n)` for odd positive `n`.
pub fn jacobi(a: i128, n: i128) -> i32 {
    assert!(n > 0 && n % 2 == 1, "jacobi symbol needs odd positive modulus");
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(a | n)` for arbitrary integers.
pub fn kronecker_symbol(a: i128, n: i128) -> i32 {
    if n == 0 {
        return i32::from(a == 1 || a == -1);
    }
    let mut result = 1;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    n >>= twos;
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if twos % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
    }
    result * jacobi(a, n)
}
