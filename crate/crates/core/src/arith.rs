//! Prime testing and integer factorization for torsion divisors.
//!
//! Factorization is trial division followed by Pollard-Brent rho, so its cost
//! grows with the square root of the second-largest prime factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let (d, s) = split_odd(n - 1);
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn split_odd(mut d: u64) -> (u64, u32) {
    let s = d.trailing_zeros();
    d >>= s;
    (d, s)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn big_is_probable_prime(n: &BigInt) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigInt::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &SMALL_PRIMES[..16] {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard's rho. `n` must be odd and composite.
fn pollard_brent(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BATCH: u64 = 64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BATCH.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += BATCH;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1;
    }
}

fn perfect_power(n: &BigInt) -> Option<(BigInt, u32)> {
    let bits = n.bits() as u32;
    (2..=bits).rev().find_map(|k| {
        let r = n.nth_root(k);
        (r.pow(k) == *n && !r.is_one()).then_some((r, k))
    })
}

/// Prime factorization of `|n|` as ascending `(prime, exponent)` pairs.
/// Zero and units have no prime factors.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    for &p in &SMALL_PRIMES {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
    }
    let mut stack = vec![n];
    let mut large: Vec<BigInt> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if big_is_probable_prime(&m) {
            large.push(m);
        } else if let Some((root, k)) = perfect_power(&m) {
            stack.extend(std::iter::repeat(root).take(k as usize));
        } else {
            let d = pollard_brent(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    large.sort();
    for p in large {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Exponent of `p` in `n` (`n` nonzero).
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    debug_assert!(!n.is_zero());
    let bp = BigInt::from(p);
    let mut n = n.clone();
    let mut e = 0;
    while (&n % &bp).is_zero() {
        n /= &bp;
        e += 1;
    }
    e
}
