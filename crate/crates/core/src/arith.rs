//! Integer number theory helpers: primality, factoring, orders, Möbius.
//!
//! Everything here works on desk-scale integers (group orders |E^×| up to a
//! hundred bits or so); factoring is trial division with a Pollard rho pass
//! for the stragglers.

use crate::rng::Rng64;

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd_u128(a as u128, b as u128) as u64
}

/// Extended gcd over signed 128-bit integers: returns (g, x, y) with
/// a*x + b*y = g = gcd(a, b).
pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = egcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of `a` modulo `m`, if gcd(a, m) = 1.
pub fn inv_mod(a: i128, m: u128) -> Option<u128> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = egcd(a.rem_euclid(m as i128), m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u128)
}

pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    assert!(m > 0);
    if let (Ok(a64), Ok(b64), Ok(m64)) = (u64::try_from(a), u64::try_from(b), u64::try_from(m)) {
        return ((a64 as u128 * b64 as u128) % m64 as u128) as u128;
    }
    // Schoolbook double-and-add for wide moduli.
    let mut result: u128 = 0;
    let mut a = a % m;
    let mut b = b % m;
    while b > 0 {
        if b & 1 == 1 {
            result = (result + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    result
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc: u128 = 1 % m;
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

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
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
        let mut x = pow_mod(a as u128, d as u128, n as u128) as u64;
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x as u128, x as u128, n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn is_prime_u128(n: u128) -> bool {
    if let Ok(n64) = u64::try_from(n) {
        return is_prime_u64(n64);
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Fixed witness set; probabilistically safe far past the sizes used here.
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 61, 73] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u128, rng: &mut Rng64) -> u128 {
    loop {
        let c = 1 + rng.below_u128(n - 1);
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let mut x = rng.below_u128(n);
        let mut y = x;
        let mut d: u128 = 1;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
}

/// Prime factorization as (prime, multiplicity) pairs, ascending.
pub fn factor(mut n: u128) -> Vec<(u128, u32)> {
    let mut out: Vec<(u128, u32)> = Vec::new();
    let push = |out: &mut Vec<(u128, u32)>, p: u128| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in 2u128.. {
        if p * p > n || p > 1_000_000 {
            break;
        }
        while n % p == 0 {
            push(&mut out, p);
            n /= p;
        }
    }
    // Whatever remains is prime or needs rho.
    let mut stack = vec![n];
    let mut rng = Rng64::new(0x5eed);
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            push(&mut out, m);
            continue;
        }
        let d = pollard_rho(m, &mut rng);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort();
    out
}

/// Multiplicative order of `a` in a cyclic group of order `e`, given that
/// a^e = 1 (checked by the caller through `pow`).
pub fn order_from_exponent<F: Fn(u128) -> bool>(e: u128, is_one_at: F) -> u128 {
    let mut ord = e;
    for (p, k) in factor(e) {
        for _ in 0..k {
            if ord % p == 0 && is_one_at(ord / p) {
                ord /= p;
            } else {
                break;
            }
        }
    }
    ord
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort();
    divs
}

/// Möbius function.
pub fn moebius(n: u64) -> i64 {
    if n == 1 {
        return 1;
    }
    let f = factor(n as u128);
    if f.iter().any(|&(_, k)| k > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}
