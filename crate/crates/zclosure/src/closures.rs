//! Degree-d Zariski closures of symmetric sets: the exponential rank-based
//! brute force, the polynomial-time symmetric closure, the closed-form
//! single-layer answer, and the fast path that equates the first two when
//! `n >= 4p^l - 1` and `E ⊆ [d, n-d]`.
//!
//! Membership in the brute-force closure uses the rank criterion: a point y
//! belongs to the closure of S iff appending y's evaluation row (over the
//! squarefree monomials of degree at most d) leaves the rank of S's
//! evaluation matrix unchanged. Monomial columns are ordered by degree and
//! then mask value, so one elimination over the full column set answers
//! membership for every degree prefix at once.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::cube::{
    binomial_u64, e_oplus, layer_points, CubePoint, SymmetricSet, ENUM_CAP,
};
use crate::error::{Error, Result};
use crate::field::{binom_mod_p, ell_p, PrimeField};
use crate::linalg::RrefAccumulator;
use crate::poly::zeta_transform;

/// How a closure was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosureMethod {
    BruteForce,
    Symcl,
    LayerFormula,
    MainTheorem,
}

impl ClosureMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            ClosureMethod::BruteForce => "bruteforce",
            ClosureMethod::Symcl => "symcl",
            ClosureMethod::LayerFormula => "layer-formula",
            ClosureMethod::MainTheorem => "main-theorem",
        }
    }
}

impl Serialize for ClosureMethod {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// A closure instance: field, dimension, degree bound, and weight set.
/// Degrees above n are clamped to n (higher degrees are meaningless on the
/// cube); `clamped` records that this happened.
#[derive(Debug, Clone)]
pub struct ClosureQuery {
    pub field: PrimeField,
    pub n: usize,
    pub d: usize,
    pub e: SymmetricSet,
    pub clamped: bool,
}

impl ClosureQuery {
    pub fn new(field: PrimeField, n: usize, d: usize, e: SymmetricSet) -> Result<Self> {
        if e.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: e.n(),
            });
        }
        let clamped = d > n;
        Ok(ClosureQuery {
            field,
            n,
            d: d.min(n),
            e,
            clamped,
        })
    }
}

/// A computed closure with the method that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub closure: SymmetricSet,
    pub method: ClosureMethod,
    pub hilbert_dim: Option<usize>,
}

/// Squarefree monomial masks of degree at most d, ordered by degree then
/// mask value.
pub fn monomials_up_to_degree(n: usize, d: usize) -> Result<Vec<u32>> {
    if n > ENUM_CAP {
        return Err(Error::SizeCapExceeded { n, cap: ENUM_CAP });
    }
    let mut out = Vec::new();
    for t in 0..=d.min(n) {
        out.extend(layer_points(n, t)?.map(|p| p.bits));
    }
    Ok(out)
}

/// Cumulative monomial counts: entry d is the number of squarefree
/// monomials of degree at most d, i.e. the column count at degree d.
pub fn monomial_prefix_counts(n: usize) -> Vec<usize> {
    let mut counts = Vec::with_capacity(n + 1);
    let mut acc = 0usize;
    for t in 0..=n {
        acc += binomial_u64(n, t) as usize;
        counts.push(acc);
    }
    counts
}

#[inline]
fn eval_row(monomials: &[u32], bits: u32) -> Vec<u64> {
    monomials
        .iter()
        .map(|&m| (m & bits == m) as u64)
        .collect()
}

/// Rank of the evaluation matrix of an arbitrary point set over the
/// squarefree monomials of degree at most d.
pub fn hilbert_dim_points(
    field: PrimeField,
    n: usize,
    d: usize,
    points: impl IntoIterator<Item = CubePoint>,
) -> Result<usize> {
    let monomials = monomials_up_to_degree(n, d.min(n))?;
    let mut acc = RrefAccumulator::new(field, monomials.len());
    for pt in points {
        if pt.n != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: pt.n,
            });
        }
        if acc.is_full_rank() {
            break;
        }
        acc.insert(eval_row(&monomials, pt.bits));
    }
    Ok(acc.rank())
}

/// Rank of the evaluation matrix of the symmetric set of the query.
pub fn hilbert_dim(q: &ClosureQuery) -> Result<usize> {
    let pts: Vec<CubePoint> = crate::cube::enumerate_symmetric(&q.e)?.collect();
    hilbert_dim_points(q.field, q.n, q.d, pts)
}

/// Exponential-time degree-d Z-closure by the rank criterion: weight j is
/// kept iff every point of layer j has its evaluation row in the row space
/// of the evaluation matrix of `underline(E)`.
pub fn zcl_bruteforce(q: &ClosureQuery) -> Result<ClosureResult> {
    let monomials = monomials_up_to_degree(q.n, q.d)?;
    let mut acc = RrefAccumulator::new(q.field, monomials.len());
    'fill: for i in q.e.weights() {
        for pt in layer_points(q.n, i)? {
            if acc.is_full_rank() {
                break 'fill;
            }
            acc.insert(eval_row(&monomials, pt.bits));
        }
    }
    let rank = acc.rank();
    let closure = if acc.is_full_rank() {
        SymmetricSet::full(q.n)
    } else {
        let mut kept: Vec<usize> = q.e.weights().collect();
        let mut scratch = vec![0u64; monomials.len()];
        for j in 0..=q.n {
            if q.e.contains(j) {
                continue; // inserted rows are in the span by construction
            }
            let mut all_in = true;
            for pt in layer_points(q.n, j)? {
                scratch.clear();
                scratch.extend(monomials.iter().map(|&m| (m & pt.bits == m) as u64));
                if acc.residual_leading(&mut scratch).is_some() {
                    all_in = false;
                    break;
                }
            }
            if all_in {
                kept.push(j);
            }
        }
        SymmetricSet::new(q.n, kept)?
    };
    Ok(ClosureResult {
        closure,
        method: ClosureMethod::BruteForce,
        hilbert_dim: Some(rank),
    })
}

/// Degree-d Z-closures for every d in `[0, n]` at once.
///
/// One elimination over all `2^n` monomial columns yields, per free column,
/// a vanishing polynomial supported on that column and earlier ones; the
/// degree-d closure is the set of layers on which every vanishing
/// polynomial with support inside the degree-d column prefix is zero.
/// Cross-checked against [`zcl_bruteforce`] in the test suites.
pub fn zcl_bruteforce_all_degrees(
    field: PrimeField,
    n: usize,
    e: &SymmetricSet,
) -> Result<Vec<SymmetricSet>> {
    if e.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: e.n(),
        });
    }
    let monomials = monomials_up_to_degree(n, n)?;
    let mut acc = RrefAccumulator::new(field, monomials.len());
    'fill: for i in e.weights() {
        for pt in layer_points(n, i)? {
            if acc.is_full_rank() {
                break 'fill;
            }
            acc.insert(eval_row(&monomials, pt.bits));
        }
    }
    acc.back_eliminate();
    let prefix = monomial_prefix_counts(n);

    // layers excluded at each degree: walk free columns in ascending order,
    // folding in the nonvanishing layers of each witness polynomial
    let pivot_set = {
        let mut s = vec![false; monomials.len()];
        for &c in acc.pivot_cols() {
            s[c] = true;
        }
        s
    };
    let mut excluded = vec![false; n + 1];
    let mut results = Vec::with_capacity(n + 1);
    let mut next_free = 0usize;
    for d in 0..=n {
        let threshold = prefix[d];
        while next_free < threshold {
            if !pivot_set[next_free] {
                let v = acc.nullspace_vector(next_free);
                let mut vals = vec![0u64; 1 << n];
                for (c, &coef) in v.iter().enumerate() {
                    if coef != 0 {
                        vals[monomials[c] as usize] = coef;
                    }
                }
                zeta_transform(&field, n, &mut vals);
                for (mask, &val) in vals.iter().enumerate() {
                    if val != 0 {
                        excluded[(mask as u32).count_ones() as usize] = true;
                    }
                }
            }
            next_free += 1;
        }
        results.push(SymmetricSet::new(
            n,
            (0..=n).filter(|&j| !excluded[j]),
        )?);
    }
    Ok(results)
}

/// Polynomial-time symmetric closure: weight j is kept iff the vector
/// `(C(j,0), ..., C(j,d)) mod p` lies in the row space of the same vectors
/// taken over the weights of E. No cube enumeration.
pub fn symcl(q: &ClosureQuery) -> Result<ClosureResult> {
    let cols = q.d + 1;
    let row = |w: usize| -> Vec<u64> {
        (0..cols)
            .map(|k| binom_mod_p(w as u64, k as u64, &q.field))
            .collect()
    };
    let mut acc = RrefAccumulator::new(q.field, cols);
    for i in q.e.weights() {
        if acc.is_full_rank() {
            break;
        }
        acc.insert(row(i));
    }
    let closure = SymmetricSet::new(
        q.n,
        (0..=q.n).filter(|&j| acc.contains(&row(j))),
    )?;
    Ok(ClosureResult {
        closure,
        method: ClosureMethod::Symcl,
        hilbert_dim: None,
    })
}

/// Closed-form closure of a single layer: `{i}` outside `[d, n-d]`, the
/// residue class `i ⊕ p^l` (with `l = ell_p(d)`) inside it.
pub fn layer_zcl(q: &ClosureQuery) -> Result<ClosureResult> {
    if q.e.len() != 1 {
        return Err(Error::InvalidParameter(format!(
            "layer closure needs a single weight, got {}",
            q.e.len()
        )));
    }
    let i = q.e.weights().next().unwrap();
    let in_middle = q.d + q.d <= q.n && q.d <= i && i <= q.n - q.d;
    let closure = if in_middle {
        let l = ell_p(q.d as u64, &q.field);
        e_oplus(&q.e, q.field.p().pow(l))
    } else {
        q.e.clone()
    };
    Ok(ClosureResult {
        closure,
        method: ClosureMethod::LayerFormula,
        hilbert_dim: None,
    })
}

/// Checks the hypotheses under which the Z-closure provably equals the
/// symmetric closure: `n >= 4p^l - 1` with `l = ell_p(d)`, and
/// `E ⊆ [d, n-d]`.
pub fn fast_path_applies(q: &ClosureQuery) -> bool {
    let l = ell_p(q.d as u64, &q.field);
    let pl = q.field.p().saturating_pow(l);
    let bound = pl.saturating_mul(4).saturating_sub(1);
    if (q.n as u64) < bound {
        return false;
    }
    if q.d + q.d > q.n {
        return q.e.is_empty();
    }
    q.e.weights().all(|w| q.d <= w && w <= q.n - q.d)
}

/// Poly-time Z-closure under the hypotheses of `fast_path_applies`; errors
/// with the honest boundary of the theorem otherwise.
pub fn zcl_fast(q: &ClosureQuery) -> Result<ClosureResult> {
    if !fast_path_applies(q) {
        let l = ell_p(q.d as u64, &q.field);
        return Err(Error::PreconditionUnmet(format!(
            "need n >= 4p^l - 1 = {} (n = {}) and E within [d, n-d]",
            q.field.p().saturating_pow(l).saturating_mul(4).saturating_sub(1),
            q.n
        )));
    }
    let mut result = symcl(q)?;
    result.method = ClosureMethod::MainTheorem;
    Ok(result)
}

/// Decomposes `n = (k+1)p^r - 1` with `k ∈ [1, p-1]`, if possible.
pub fn top_shape(p: u64, n: usize) -> Option<(u64, u32)> {
    if n == 0 {
        return None;
    }
    let mut m = (n + 1) as u64;
    let mut v = 0u32;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    if m == 1 {
        // n + 1 = p^v, v >= 1: take k = p - 1, r = v - 1
        Some((p - 1, v - 1))
    } else if 2 <= m && m <= p {
        Some((m - 1, v))
    } else {
        None
    }
}

/// For `n = (k+1)p^r - 1`: membership of the top layer in the Z-closure and
/// in the symmetric closure, computed independently (rank criterion over
/// the cube vs. the sigma-basis system). The two booleans provably agree.
pub fn top_layer_equivalence_check(q: &ClosureQuery) -> Result<(bool, bool)> {
    if top_shape(q.field.p(), q.n).is_none() {
        return Err(Error::InvalidShape(format!(
            "{} is not (k+1)p^r - 1 for p = {}",
            q.n,
            q.field.p()
        )));
    }
    // Z-closure side: one candidate row against the evaluation matrix
    let monomials = monomials_up_to_degree(q.n, q.d)?;
    let mut acc = RrefAccumulator::new(q.field, monomials.len());
    'fill: for i in q.e.weights() {
        for pt in layer_points(q.n, i)? {
            if acc.is_full_rank() {
                break 'fill;
            }
            acc.insert(eval_row(&monomials, pt.bits));
        }
    }
    let top = CubePoint::top(q.n);
    let in_zcl = q.e.contains(q.n) || acc.contains(&eval_row(&monomials, top.bits));

    // symmetric side: sigma-basis system
    let row = |w: usize| -> Vec<u64> {
        (0..=q.d)
            .map(|k| binom_mod_p(w as u64, k as u64, &q.field))
            .collect()
    };
    let mut sacc = RrefAccumulator::new(q.field, q.d + 1);
    for i in q.e.weights() {
        sacc.insert(row(i));
    }
    let in_symcl = sacc.contains(&row(q.n));
    Ok((in_zcl, in_symcl))
}

/// Top-layer membership on both sides for every degree at once; index d of
/// the result is the pair for `zcl_{n,d}` vs `symcl_{n,d}`.
pub fn top_layer_equivalence_sweep(
    field: PrimeField,
    n: usize,
    e: &SymmetricSet,
) -> Result<Vec<(bool, bool)>> {
    if top_shape(field.p(), n).is_none() {
        return Err(Error::InvalidShape(format!(
            "{} is not (k+1)p^r - 1 for p = {}",
            n,
            field.p()
        )));
    }
    let monomials = monomials_up_to_degree(n, n)?;
    let prefix = monomial_prefix_counts(n);
    let mut acc = RrefAccumulator::new(field, monomials.len());
    'fill: for i in e.weights() {
        for pt in layer_points(n, i)? {
            if acc.is_full_rank() {
                break 'fill;
            }
            acc.insert(eval_row(&monomials, pt.bits));
        }
    }
    let mut top_row = eval_row(&monomials, CubePoint::top(n).bits);
    let zcl_lead = acc.residual_leading(&mut top_row);

    let mut sacc = RrefAccumulator::new(field, n + 1);
    for i in e.weights() {
        let row: Vec<u64> = (0..=n)
            .map(|k| binom_mod_p(i as u64, k as u64, &field))
            .collect();
        sacc.insert(row);
    }
    let mut sym_row: Vec<u64> = (0..=n)
        .map(|k| binom_mod_p(n as u64, k as u64, &field))
        .collect();
    let sym_lead = sacc.residual_leading(&mut sym_row);

    let in_e = e.contains(n);
    Ok((0..=n)
        .map(|d| {
            let in_zcl = in_e || zcl_lead.map_or(true, |c| c >= prefix[d]);
            let in_symcl = in_e || sym_lead.map_or(true, |c| c >= d + 1);
            (in_zcl, in_symcl)
        })
        .collect())
}

/// Deterministic random weight subsets of `[lo, hi]`, each element kept
/// with probability 1/2, drawn from a ChaCha stream seeded as given.
pub fn seeded_weight_subsets(seed: u64, count: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (lo..=hi).filter(|_| rng.gen::<bool>()).collect())
        .collect()
}
