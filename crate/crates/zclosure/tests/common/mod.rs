//! Oracles shared by the integration suites. Everything here recomputes
//! results along an independent route from the implementation it checks.

use num_bigint::BigUint;
use zclosure::field::binom_mod_p;
use zclosure::{PrimeField, SymmetricSet};

/// Exact binomial coefficient over the integers.
pub fn binom_exact(n: u64, m: u64) -> BigUint {
    if m > n {
        return BigUint::from(0u32);
    }
    let m = m.min(n - m);
    let mut acc = BigUint::from(1u32);
    for t in 0..m {
        acc = acc * BigUint::from(n - t) / BigUint::from(t + 1);
    }
    acc
}

/// Brute-force symmetric closure: enumerate all p^(d+1) coefficient
/// vectors, keep those vanishing on every weight of E, and keep weight j
/// iff all survivors vanish there too.
pub fn symcl_by_coefficient_enumeration(
    field: PrimeField,
    n: usize,
    d: usize,
    e: &SymmetricSet,
) -> SymmetricSet {
    let p = field.p();
    let cols = d + 1;
    let value = |coeffs: &[u64], w: usize| -> u64 {
        let mut acc = 0u64;
        for (k, &c) in coeffs.iter().enumerate() {
            acc = field.add(acc, field.mul(c, binom_mod_p(w as u64, k as u64, &field)));
        }
        acc
    };
    let mut survivors: Vec<Vec<u64>> = Vec::new();
    let total = (p as u128).pow(cols as u32);
    for counter in 0..total {
        let mut coeffs = vec![0u64; cols];
        let mut c = counter;
        for slot in coeffs.iter_mut() {
            *slot = (c % p as u128) as u64;
            c /= p as u128;
        }
        if e.weights().all(|i| value(&coeffs, i) == 0) {
            survivors.push(coeffs);
        }
    }
    SymmetricSet::new(
        n,
        (0..=n).filter(|&j| survivors.iter().all(|cf| value(cf, j) == 0)),
    )
    .expect("weights in range")
}

/// All weight subsets of `[lo, hi]` as symmetric sets over dimension n.
pub fn subsets(n: usize, lo: usize, hi: usize) -> impl Iterator<Item = SymmetricSet> {
    let width = hi + 1 - lo;
    (0u64..(1 << width)).map(move |bits| {
        SymmetricSet::new(n, (0..width).filter(|&t| bits >> t & 1 == 1).map(|t| lo + t))
            .expect("weights in range")
    })
}
