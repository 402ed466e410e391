//! Multilinear polynomials over the cube and symmetric polynomials in the
//! elementary-symmetric basis.
//!
//! Every polynomial function on `{0,1}^n` has a unique squarefree
//! representative, so products are reduced on the fly (`X_i^2 -> X_i`, i.e.
//! mask union). A symmetric polynomial function is a combination of the
//! elementary symmetric polynomials `σ_0, ..., σ_n`, whose value on a point
//! of weight w is `C(w, k) mod p`; the coefficient vector in that basis is
//! the canonical representation here and makes degrees directly readable.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::cube::{CubePoint, ENUM_CAP};
use crate::error::{Error, Result};
use crate::field::{binom_mod_p, PrimeField};

/// An `F_p`-combination of squarefree monomials over n variables.
/// Monomials are n-bit masks; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    n: usize,
    field: PrimeField,
    terms: BTreeMap<u32, u64>,
}

impl MultilinearPoly {
    pub fn zero(field: PrimeField, n: usize) -> Self {
        assert!(n <= 32);
        MultilinearPoly {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, n: usize, c: u64) -> Self {
        let mut p = Self::zero(field, n);
        p.add_term(0, c);
        p
    }

    pub fn from_terms(
        field: PrimeField,
        n: usize,
        terms: impl IntoIterator<Item = (u32, u64)>,
    ) -> Self {
        let mut p = Self::zero(field, n);
        for (mask, c) in terms {
            p.add_term(mask, c);
        }
        p
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Max popcount over stored masks; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
    }

    pub fn add_term(&mut self, mask: u32, coeff: u64) {
        debug_assert!(self.n == 32 || mask < (1u32 << self.n));
        let c = self.field.reduce(coeff);
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(mask).or_insert(0);
        *entry = self.field.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&mask);
        }
    }

    /// Sum over terms whose mask is a submask of the point.
    pub fn eval(&self, x: &CubePoint) -> Result<u64> {
        if x.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.n,
            });
        }
        let mut acc = 0u64;
        for (&mask, &c) in &self.terms {
            if mask & x.bits == mask {
                acc = self.field.add(acc, c);
            }
        }
        Ok(acc)
    }

    pub fn add(&self, other: &MultilinearPoly) -> MultilinearPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> MultilinearPoly {
        let mut out = MultilinearPoly::zero(self.field, self.n);
        for (m, a) in self.terms() {
            out.add_term(m, self.field.mul(a, self.field.reduce(c)));
        }
        out
    }

    /// Product on the cube: `X^S · X^T = X^(S ∪ T)`.
    pub fn mul(&self, other: &MultilinearPoly) -> MultilinearPoly {
        assert_eq!(self.n, other.n);
        let mut out = MultilinearPoly::zero(self.field, self.n);
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma | mb, self.field.mul(ca, cb));
            }
        }
        out
    }

    /// Values on all `2^n` points, indexed by mask.
    pub fn values_on_cube(&self) -> Result<Vec<u64>> {
        if self.n > ENUM_CAP {
            return Err(Error::SizeCapExceeded {
                n: self.n,
                cap: ENUM_CAP,
            });
        }
        let mut vals = vec![0u64; 1 << self.n];
        for (m, c) in self.terms() {
            vals[m as usize] = c;
        }
        zeta_transform(&self.field, self.n, &mut vals);
        Ok(vals)
    }
}

/// In-place subset-sum transform: `out[x] = Σ_{m ⊆ x} in[m] mod p`.
pub fn zeta_transform(field: &PrimeField, n: usize, values: &mut [u64]) {
    debug_assert_eq!(values.len(), 1 << n);
    for b in 0..n {
        let bit = 1usize << b;
        for x in 0..values.len() {
            if x & bit != 0 {
                values[x] += values[x ^ bit];
            }
        }
    }
    for v in values.iter_mut() {
        *v %= field.p();
    }
}

/// Inverse of [`zeta_transform`]: recovers monomial coefficients from the
/// value table.
pub fn mobius_transform(field: &PrimeField, n: usize, values: &mut [u64]) {
    debug_assert_eq!(values.len(), 1 << n);
    let p = field.p();
    for b in 0..n {
        let bit = 1usize << b;
        for x in 0..values.len() {
            if x & bit != 0 {
                values[x] = (values[x] + p - values[x ^ bit] % p) % p;
            }
        }
    }
}

/// The unique squarefree representative of a function given by its value
/// table (indexed by mask). Consumes the table as scratch space.
pub fn multilinear_from_values(
    field: PrimeField,
    n: usize,
    values: &mut [u64],
) -> MultilinearPoly {
    mobius_transform(&field, n, values);
    MultilinearPoly::from_terms(
        field,
        n,
        values
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(m, &c)| (m as u32, c)),
    )
}

/// Reduces an arbitrary term list (full exponent vectors) to the squarefree
/// representative: `X_i^e -> X_i` for e >= 1, like terms combined.
pub fn multilinearize(field: PrimeField, n: usize, terms: &[(Vec<u32>, i64)]) -> MultilinearPoly {
    let mut out = MultilinearPoly::zero(field, n);
    for (exps, c) in terms {
        assert_eq!(exps.len(), n);
        let mut mask = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            if e >= 1 {
                mask |= 1 << i;
            }
        }
        out.add_term(mask, field.reduce_signed(*c));
    }
    out
}

/// `X^(S,T) = Π_{s∈S} X_s · Π_{t∈T} (1 - X_t)`, with S and T disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralizedMonomial {
    pub n: usize,
    pub s_mask: u32,
    pub t_mask: u32,
}

impl GeneralizedMonomial {
    pub fn new(n: usize, s_mask: u32, t_mask: u32) -> Result<Self> {
        if s_mask & t_mask != 0 {
            return Err(Error::InvalidParameter(
                "generalized monomial index sets must be disjoint".into(),
            ));
        }
        if n < 32 && (s_mask | t_mask) >= (1u32 << n) {
            return Err(Error::InvalidParameter(
                "index sets exceed the dimension".into(),
            ));
        }
        Ok(GeneralizedMonomial { n, s_mask, t_mask })
    }

    pub fn degree(&self) -> usize {
        (self.s_mask.count_ones() + self.t_mask.count_ones()) as usize
    }

    /// 1 iff `x_s = 1` for all s in S and `x_t = 0` for all t in T.
    pub fn eval(&self, x: &CubePoint) -> u64 {
        (x.bits & self.s_mask == self.s_mask && x.bits & self.t_mask == 0) as u64
    }

    /// Expansion `Σ_{U ⊆ T} (-1)^{|U|} X^(S ∪ U)`.
    pub fn to_multilinear(&self, field: PrimeField) -> MultilinearPoly {
        let mut out = MultilinearPoly::zero(field, self.n);
        // enumerate submasks of t_mask
        let mut u = self.t_mask;
        loop {
            let sign = if u.count_ones() % 2 == 0 {
                1
            } else {
                field.p() - 1
            };
            out.add_term(self.s_mask | u, sign);
            if u == 0 {
                break;
            }
            u = (u - 1) & self.t_mask;
        }
        out
    }
}

/// A symmetric polynomial function: coefficients `(c_0, ..., c_n)` on
/// `σ_0, ..., σ_n`. Its value on a point depends only on the weight:
/// `value(w) = Σ_k c_k C(w, k) mod p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricPoly {
    n: usize,
    field: PrimeField,
    sigma: Vec<u64>,
}

impl SymmetricPoly {
    /// Builds from coefficients `c_0, ..`; shorter vectors are zero-padded
    /// up to length n+1.
    pub fn new(field: PrimeField, n: usize, coeffs: Vec<u64>) -> Result<Self> {
        if coeffs.len() > n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                got: coeffs.len(),
            });
        }
        let mut sigma: Vec<u64> = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        sigma.resize(n + 1, 0);
        Ok(SymmetricPoly { n, field, sigma })
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        SymmetricPoly {
            n,
            field,
            sigma: vec![0; n + 1],
        }
    }

    /// The elementary symmetric polynomial `σ_k`.
    pub fn sigma_k(field: PrimeField, n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidWeight { weight: k, n });
        }
        let mut sigma = vec![0; n + 1];
        sigma[k] = 1;
        Ok(SymmetricPoly { n, field, sigma })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.sigma
    }

    pub fn is_zero(&self) -> bool {
        self.sigma.iter().all(|&c| c == 0)
    }

    /// Max k with `c_k != 0`; None for the zero polynomial. Equals the
    /// degree of the multilinear representative.
    pub fn degree(&self) -> Option<usize> {
        self.sigma.iter().rposition(|&c| c != 0)
    }

    /// `Σ_k c_k · C(w, k) mod p`.
    pub fn eval_at_weight(&self, w: usize) -> Result<u64> {
        if w > self.n {
            return Err(Error::InvalidWeight { weight: w, n: self.n });
        }
        let mut acc = 0u64;
        for (k, &c) in self.sigma.iter().enumerate() {
            if c != 0 {
                acc = self
                    .field
                    .add(acc, self.field.mul(c, binom_mod_p(w as u64, k as u64, &self.field)));
            }
        }
        Ok(acc)
    }

    /// Values at all weights `0..=n`.
    pub fn weight_values(&self) -> Vec<u64> {
        (0..=self.n)
            .map(|w| self.eval_at_weight(w).expect("w in range"))
            .collect()
    }

    pub fn add(&self, other: &SymmetricPoly) -> SymmetricPoly {
        assert_eq!(self.n, other.n);
        let sigma = self
            .sigma
            .iter()
            .zip(&other.sigma)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        SymmetricPoly {
            n: self.n,
            field: self.field,
            sigma,
        }
    }

    pub fn scale(&self, c: u64) -> SymmetricPoly {
        let c = self.field.reduce(c);
        SymmetricPoly {
            n: self.n,
            field: self.field,
            sigma: self.sigma.iter().map(|&a| self.field.mul(a, c)).collect(),
        }
    }
}

/// Inverts the unitriangular Pascal system: the unique f with
/// `f(w) = values[w]` for all `w ∈ [0, n]`, by forward substitution.
pub fn weights_to_sigma_coeffs(field: PrimeField, values: &[u64]) -> SymmetricPoly {
    assert!(!values.is_empty());
    let n = values.len() - 1;
    let mut sigma = vec![0u64; n + 1];
    for w in 0..=n {
        // c_w = values[w] - Σ_{k<w} c_k C(w,k), using C(w,w) = 1
        let mut acc = field.reduce(values[w]);
        for k in 0..w {
            if sigma[k] != 0 {
                let b = binom_mod_p(w as u64, k as u64, &field);
                acc = field.sub(acc, field.mul(sigma[k], b));
            }
        }
        sigma[w] = acc;
    }
    SymmetricPoly { n, field, sigma }
}

/// The translate with `f_plus(f)(w) = f(w-1)`: coefficients
/// `c'_u = Σ_{v=u}^{n} (-1)^{v-u} c_v`.
pub fn f_plus(f: &SymmetricPoly) -> SymmetricPoly {
    let field = f.field;
    let n = f.n;
    let mut out = vec![0u64; n + 1];
    for u in 0..=n {
        let mut acc = 0u64;
        for v in u..=n {
            if (v - u) % 2 == 0 {
                acc = field.add(acc, f.sigma[v]);
            } else {
                acc = field.sub(acc, f.sigma[v]);
            }
        }
        out[u] = acc;
    }
    SymmetricPoly {
        n,
        field,
        sigma: out,
    }
}

/// The inverse translate with `f_minus(f)(w) = f(w+1)`: coefficients
/// `c'_u = c_u + c_{u+1}`, from `C(Z+1, u) = C(Z, u) + C(Z, u-1)`.
pub fn f_minus(f: &SymmetricPoly) -> SymmetricPoly {
    let field = f.field;
    let n = f.n;
    let mut out = vec![0u64; n + 1];
    for u in 0..=n {
        let next = if u + 1 <= n { f.sigma[u + 1] } else { 0 };
        out[u] = field.add(f.sigma[u], next);
    }
    SymmetricPoly {
        n,
        field,
        sigma: out,
    }
}

/// Expands `Σ_k c_k σ_k` into squarefree monomials.
pub fn sym_to_multilinear(f: &SymmetricPoly) -> Result<MultilinearPoly> {
    if f.n > ENUM_CAP {
        return Err(Error::SizeCapExceeded {
            n: f.n,
            cap: ENUM_CAP,
        });
    }
    let mut out = MultilinearPoly::zero(f.field, f.n);
    for mask in 0u32..(1u32 << f.n) {
        let c = f.sigma[mask.count_ones() as usize];
        if c != 0 {
            out.add_term(mask, c);
        }
    }
    Ok(out)
}

fn mask_key(mask: u32, n: usize) -> String {
    format!("{:0width$b}", mask, width = n.max(1))
}

// {"terms": {"<mask as binary numeral>": coeff, ...}}
impl Serialize for MultilinearPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("MultilinearPoly", 1)?;
        let terms: BTreeMap<String, u64> = self
            .terms
            .iter()
            .map(|(&m, &c)| (mask_key(m, self.n), c))
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

// {"sigma": [c_0, ..., c_n]}
impl Serialize for SymmetricPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        map.serialize_entry("sigma", &self.sigma)?;
        map.end()
    }
}
