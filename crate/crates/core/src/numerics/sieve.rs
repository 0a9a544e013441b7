//! Segmented prime sieve and linear-sieve arithmetic tables.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Largest x accepted by [`primes_upto`].
pub const SIEVE_BUDGET: u64 = 1_000_000_000;

const SEGMENT: u64 = 1 << 20;

/// All primes ≤ x, ascending, by a segmented sieve of Eratosthenes.
///
/// Segments are sieved in parallel; output order is deterministic.
pub fn primes_upto(x: u64) -> Result<Vec<u64>> {
    if x < 2 {
        return Err(Error::usage("primes_upto requires x >= 2"));
    }
    if x > SIEVE_BUDGET {
        return Err(Error::resource(format!(
            "primes_upto budget is {SIEVE_BUDGET}, got {x}"
        )));
    }
    let root = (x as f64).sqrt() as u64 + 1;
    let base = simple_sieve(root.max(2));
    if x <= root {
        return Ok(base.into_iter().take_while(|&p| p <= x).collect());
    }

    let mut segments: Vec<(u64, u64)> = Vec::new();
    let mut lo = root + 1;
    while lo <= x {
        let hi = (lo + SEGMENT - 1).min(x);
        segments.push((lo, hi));
        lo = hi + 1;
    }

    let sieved: Vec<Vec<u64>> = segments
        .par_iter()
        .map(|&(lo, hi)| {
            let len = (hi - lo + 1) as usize;
            let mut composite = vec![false; len];
            for &p in &base {
                if p * p > hi {
                    break;
                }
                let mut start = lo.div_ceil(p) * p;
                if start < p * p {
                    start = p * p;
                }
                let mut j = start;
                while j <= hi {
                    composite[(j - lo) as usize] = true;
                    j += p;
                }
            }
            (0..len)
                .filter(|&i| !composite[i])
                .map(|i| lo + i as u64)
                .collect()
        })
        .collect();

    let mut primes = base;
    for seg in sieved {
        primes.extend(seg);
    }
    Ok(primes)
}

fn simple_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Deterministic Miller–Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Linear-sieve tables: smallest prime factor, Euler phi, divisor count, Möbius.
pub struct ArithTables {
    pub spf: Vec<u32>,
    pub phi: Vec<u32>,
    pub divisor_count: Vec<u32>,
    pub mobius: Vec<i8>,
}

impl ArithTables {
    pub fn new(n_max: usize) -> ArithTables {
        let n = n_max;
        let mut spf = vec![0u32; n + 1];
        let mut phi = vec![0u32; n + 1];
        let mut d = vec![0u32; n + 1];
        let mut mu = vec![0i8; n + 1];
        // cnt[i] = multiplicity of spf(i) in i, for the divisor-count recurrence
        let mut cnt = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        if n >= 1 {
            phi[1] = 1;
            d[1] = 1;
            mu[1] = 1;
        }
        for i in 2..=n {
            if spf[i] == 0 {
                spf[i] = i as u32;
                primes.push(i as u32);
                phi[i] = (i - 1) as u32;
                d[i] = 2;
                mu[i] = -1;
                cnt[i] = 1;
            }
            for &p in &primes {
                let ip = i * p as usize;
                if p > spf[i] || ip > n {
                    break;
                }
                spf[ip] = p;
                if i % p as usize == 0 {
                    phi[ip] = phi[i] * p;
                    cnt[ip] = cnt[i] + 1;
                    d[ip] = d[i] / (cnt[i] + 1) * (cnt[i] + 2);
                    mu[ip] = 0;
                    break;
                } else {
                    phi[ip] = phi[i] * (p - 1);
                    cnt[ip] = 1;
                    d[ip] = d[i] * 2;
                    mu[ip] = -mu[i];
                }
            }
        }
        ArithTables { spf, phi, divisor_count: d, mobius: mu }
    }

    pub fn factorize(&self, mut n: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize];
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out
    }
}
