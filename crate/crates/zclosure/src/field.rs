//! Prime-field scalar arithmetic, p-ary digits, and binomial coefficients
//! modulo p via digit-wise products.

use crate::error::{Error, Result};

/// Largest admissible prime: 46337^2 < 2^31, so a product of two reduced
/// elements never overflows 64-bit arithmetic.
pub const MAX_PRIME: u64 = 46337;

/// A prime field `F_p` with `2 <= p <= 46337`.
///
/// All element values are canonical representatives in `[0, p-1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::FieldTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Reduces an arbitrary unsigned integer into `[0, p-1]`.
    #[inline]
    pub fn reduce(&self, a: u64) -> u64 {
        a % self.p
    }

    /// Reduces a signed integer into `[0, p-1]`.
    #[inline]
    pub fn reduce_signed(&self, a: i64) -> u64 {
        let m = self.p as i64;
        (((a % m) + m) % m) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        base %= self.p;
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat exponentiation `a^(p-2)`.
    ///
    /// Panics on zero; every nonzero element of a prime field is a unit.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "cannot invert zero");
        self.pow(a, self.p - 2)
    }
}

/// The base-p expansion of a nonnegative integer, least significant digit
/// first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAryDigits {
    pub value: u64,
    pub digits: Vec<u64>,
}

impl PAryDigits {
    /// Recombines the digits; always equals `value`.
    pub fn recompose(&self, field: &PrimeField) -> u64 {
        let mut acc = 0u64;
        for &d in self.digits.iter().rev() {
            acc = acc * field.p() + d;
        }
        acc
    }
}

/// Digits of `n` base p; `digit(n, t) = floor(n / p^t) mod p`.
pub fn p_ary_digits(n: u64, field: &PrimeField) -> PAryDigits {
    let mut digits = Vec::new();
    let mut m = n;
    while m > 0 {
        digits.push(m % field.p());
        m /= field.p();
    }
    PAryDigits { value: n, digits }
}

/// The `t`-th digit of `n` base p, without materializing the full expansion.
#[inline]
pub fn digit(n: u64, t: u32, field: &PrimeField) -> u64 {
    (n / field.p().pow(t)) % field.p()
}

/// `ell_p(d)`: the unique `l` with `p^(l-1) <= d <= p^l - 1`, and 0 for d = 0.
pub fn ell_p(d: u64, field: &PrimeField) -> u32 {
    let mut l = 0u32;
    let mut bound = 1u64; // p^l
    while bound - 1 < d {
        bound = bound.saturating_mul(field.p());
        l += 1;
    }
    l
}

/// Binomial coefficient of two values below p, computed by the
/// multiplicative formula with a single Fermat inversion.
fn binom_small(n: u64, m: u64, field: &PrimeField) -> u64 {
    debug_assert!(n < field.p() && m < field.p());
    if m > n {
        return 0;
    }
    let m = m.min(n - m);
    let mut num = 1u64;
    let mut den = 1u64;
    for t in 0..m {
        num = field.mul(num, n - t);
        den = field.mul(den, t + 1);
    }
    if den == 1 {
        num
    } else {
        field.mul(num, field.inv(den))
    }
}

/// `C(n, m) mod p` as the digit-wise product of small binomials; zero as
/// soon as any digit of `m` exceeds the corresponding digit of `n`.
pub fn binom_mod_p(n: u64, m: u64, field: &PrimeField) -> u64 {
    if m > n {
        return 0;
    }
    let p = field.p();
    let mut acc = 1u64;
    let (mut n, mut m) = (n, m);
    while m > 0 {
        let (nd, md) = (n % p, m % p);
        if md > nd {
            return 0;
        }
        acc = field.mul(acc, binom_small(nd, md, field));
        n /= p;
        m /= p;
    }
    acc
}
