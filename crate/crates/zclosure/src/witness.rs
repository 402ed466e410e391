//! Witness polynomials: the residue-class indicator h_i, the interpolation
//! witness r_{i,j}, verification of vanishing specs, and bounded exhaustive
//! searches for witnesses of the two conjectured product forms.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cube::{layer_points, CubePoint, SymmetricSet};
use crate::error::{Error, Result};
use crate::field::{binom_mod_p, digit, ell_p, PrimeField};
use crate::poly::{
    multilinear_from_values, sym_to_multilinear, weights_to_sigma_coeffs, GeneralizedMonomial,
    MultilinearPoly, SymmetricPoly,
};

/// Either representation of a witness polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessPoly {
    Symmetric(SymmetricPoly),
    Multilinear(MultilinearPoly),
}

impl WitnessPoly {
    pub fn degree(&self) -> Option<usize> {
        match self {
            WitnessPoly::Symmetric(s) => s.degree(),
            WitnessPoly::Multilinear(m) => m.degree(),
        }
    }
}

/// Where a witness must vanish and where it must not.
///
/// `must_vanish_layers` require zero at every point of the layer;
/// `must_not_vanish_layers` require a nonzero value somewhere on the layer;
/// `must_not_vanish_points` require a nonzero value at each listed point.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VanishingSpec {
    pub must_vanish_layers: Vec<usize>,
    pub must_not_vanish_layers: Vec<usize>,
    pub must_not_vanish_points: Vec<CubePoint>,
}

/// The form a witness was built or searched in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessForm {
    H,
    R,
    GmTimesSymmetric,
    AffineTimesSymmetric,
    Explicit,
}

impl WitnessForm {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessForm::H => "h",
            WitnessForm::R => "r",
            WitnessForm::GmTimesSymmetric => "gm-times-symmetric",
            WitnessForm::AffineTimesSymmetric => "affine-times-symmetric",
            WitnessForm::Explicit => "explicit",
        }
    }
}

/// A witness polynomial packaged with its claims and the outcome of
/// checking them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub polynomial: WitnessPoly,
    pub form: WitnessForm,
    pub claimed_degree: usize,
    pub spec: VanishingSpec,
    pub n: usize,
    pub verified: bool,
}

impl Serialize for WitnessReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("WitnessReport", 7)?;
        st.serialize_field("form", self.form.as_str())?;
        st.serialize_field("n", &self.n)?;
        match &self.polynomial {
            WitnessPoly::Symmetric(p) => st.serialize_field("polynomial", p)?,
            WitnessPoly::Multilinear(p) => st.serialize_field("polynomial", p)?,
        }
        st.serialize_field("claimed_degree", &self.claimed_degree)?;
        st.serialize_field("must_vanish_layers", &self.spec.must_vanish_layers)?;
        st.serialize_field("must_not_vanish_layers", &self.spec.must_not_vanish_layers)?;
        let points: Vec<String> = self
            .spec
            .must_not_vanish_points
            .iter()
            .map(|p| p.to_string())
            .collect();
        st.serialize_field("must_not_vanish_points", &points)?;
        st.serialize_field("verified", &self.verified)?;
        st.end()
    }
}

fn eval_on_layer_all_zero(poly: &WitnessPoly, n: usize, layer: usize) -> Result<bool> {
    match poly {
        WitnessPoly::Symmetric(s) => Ok(s.eval_at_weight(layer)? == 0),
        WitnessPoly::Multilinear(m) => {
            for pt in layer_points(n, layer)? {
                if m.eval(&pt)? != 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn eval_somewhere_nonzero(poly: &WitnessPoly, n: usize, layer: usize) -> Result<bool> {
    match poly {
        WitnessPoly::Symmetric(s) => Ok(s.eval_at_weight(layer)? != 0),
        WitnessPoly::Multilinear(m) => {
            for pt in layer_points(n, layer)? {
                if m.eval(&pt)? != 0 {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Checks every vanishing and non-vanishing condition by evaluation, and
/// the degree bound from the stored coefficients.
pub fn verify_witness(
    poly: &WitnessPoly,
    claimed_degree: usize,
    spec: &VanishingSpec,
    n: usize,
) -> Result<bool> {
    let dim = match poly {
        WitnessPoly::Symmetric(s) => s.n(),
        WitnessPoly::Multilinear(m) => m.n(),
    };
    if dim != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: dim,
        });
    }
    if let Some(deg) = poly.degree() {
        if deg > claimed_degree {
            return Ok(false);
        }
    }
    for &layer in &spec.must_vanish_layers {
        if !eval_on_layer_all_zero(poly, n, layer)? {
            return Ok(false);
        }
    }
    for &layer in &spec.must_not_vanish_layers {
        if !eval_somewhere_nonzero(poly, n, layer)? {
            return Ok(false);
        }
    }
    for pt in &spec.must_not_vanish_points {
        let v = match poly {
            WitnessPoly::Symmetric(s) => s.eval_at_weight(pt.weight())?,
            WitnessPoly::Multilinear(m) => m.eval(pt)?,
        };
        if v == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds a report, running the verification.
pub fn make_report(
    polynomial: WitnessPoly,
    form: WitnessForm,
    claimed_degree: usize,
    spec: VanishingSpec,
    n: usize,
) -> Result<WitnessReport> {
    let verified = verify_witness(&polynomial, claimed_degree, &spec, n)?;
    Ok(WitnessReport {
        polynomial,
        form,
        claimed_degree,
        spec,
        n,
        verified,
    })
}

/// The residue-class indicator: vanishes exactly off `|x| ≡ i (mod p^l)`,
/// `l = ell_p(i)`, with degree at most `p^l - 1`.
///
/// Built by evaluating the product `Π_t (1 - (σ_{p^t} - i_t)^{p-1})` weight
/// by weight and converting into the sigma basis, so the degree bound is
/// checked rather than assumed.
pub fn build_h(field: PrimeField, n: usize, i: u64) -> Result<SymmetricPoly> {
    let l = ell_p(i, &field);
    let values: Vec<u64> = (0..=n as u64)
        .map(|w| {
            let mut acc = 1u64;
            for t in 0..l {
                let st = binom_mod_p(w, field.p().pow(t), &field); // σ_{p^t} on weight w
                let diff = field.sub(st, digit(i, t, &field));
                acc = field.mul(acc, field.sub(1, field.pow(diff, field.p() - 1)));
            }
            acc
        })
        .collect();
    let h = weights_to_sigma_coeffs(field, &values);
    let bound = (field.p().pow(l) - 1) as usize;
    assert!(
        h.degree().map_or(true, |d| d <= bound),
        "degree bound violated for h_{i}"
    );
    Ok(h)
}

/// Exact Newton interpolation: the unique integer combination of
/// `C(Z,0), ..., C(Z,d)` matching `values` on the nodes `base..=base+d`.
/// Forward differences give the coefficients on `C(Z-base, u)`; the basis
/// is then shifted down one node at a time via
/// `C(W-1, u) = Σ_{v<=u} (-1)^{u-v} C(W, v)`.
pub fn newton_interpolate(base: u64, values: &[i64]) -> Vec<i64> {
    assert!(!values.is_empty());
    let d = values.len() - 1;
    // forward difference table at the base node
    let mut diffs: Vec<i64> = values.to_vec();
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..=d {
        coeffs.push(diffs[0]);
        for t in 0..diffs.len().saturating_sub(1) {
            diffs[t] = diffs[t + 1] - diffs[t];
        }
        diffs.pop();
    }
    // shift basis from C(Z-base, u) to C(Z, u)
    for _ in 0..base {
        for u in 0..=d {
            let mut acc = 0i64;
            for (offset, c) in coeffs[u..].iter().enumerate() {
                if offset % 2 == 0 {
                    acc += c;
                } else {
                    acc -= c;
                }
            }
            coeffs[u] = acc;
        }
    }
    coeffs
}

/// The interpolation witness for `j ≡ i (mod p^l)`, `j > i`, `l = ell_p(i)`:
/// vanishes on the intermediate weights of the residue class and is nonzero
/// at weight j, with degree at most `j - i - p^l`.
pub fn build_r(field: PrimeField, n: usize, i: u64, j: u64) -> Result<SymmetricPoly> {
    let l = ell_p(i, &field);
    let m = field.p().pow(l);
    if j <= i || (j - i) % m != 0 {
        return Err(Error::InvalidPair(format!(
            "need j > i with j ≡ i (mod {m}), got i = {i}, j = {j}"
        )));
    }
    if j > n as u64 {
        return Err(Error::InvalidWeight {
            weight: j as usize,
            n,
        });
    }
    let k = ((j - i) / m) as usize;
    // Q vanishes on [1, k-1] and is 1 at k; its integer Newton coefficients
    // are reduced mod p only afterwards.
    let mut nodes = vec![0i64; k];
    nodes[k - 1] = 1;
    let coeffs = newton_interpolate(1, &nodes);
    let mut sigma = vec![0u64; n + 1];
    for (u, &c) in coeffs.iter().enumerate() {
        sigma[(m as usize) * u] = field.reduce_signed(c);
    }
    let r = SymmetricPoly::new(field, n, sigma)?;
    let bound = (j - i - m) as usize;
    assert!(
        r.degree().map_or(true, |d| d <= bound),
        "degree bound violated for r_{{{i},{j}}}"
    );
    Ok(r)
}

/// Report wrapper for h_i over n variables.
pub fn h_report(field: PrimeField, n: usize, i: u64) -> Result<WitnessReport> {
    let l = ell_p(i, &field);
    let m = field.p().pow(l);
    let h = build_h(field, n, i)?;
    let spec = VanishingSpec {
        must_vanish_layers: (0..=n).filter(|&w| w as u64 % m != i % m).collect(),
        must_not_vanish_layers: (0..=n).filter(|&w| w as u64 % m == i % m).collect(),
        must_not_vanish_points: Vec::new(),
    };
    make_report(
        WitnessPoly::Symmetric(h),
        WitnessForm::H,
        (m - 1) as usize,
        spec,
        n,
    )
}

/// Report wrapper for r_{i,j} over n variables.
pub fn r_report(field: PrimeField, n: usize, i: u64, j: u64) -> Result<WitnessReport> {
    let l = ell_p(i, &field);
    let m = field.p().pow(l);
    let r = build_r(field, n, i, j)?;
    let spec = VanishingSpec {
        must_vanish_layers: (0..=n)
            .filter(|&w| (w as u64) > i && (w as u64) < j && w as u64 % m == i % m)
            .collect(),
        must_not_vanish_layers: vec![j as usize],
        must_not_vanish_points: Vec::new(),
    };
    make_report(
        WitnessPoly::Symmetric(r),
        WitnessForm::R,
        (j - i - m) as usize,
        spec,
        n,
    )
}

/// The explicit degree-2 product over F_2 that vanishes on the layers
/// {1,4} of the 5-cube but not at the origin:
/// `(1 + X_1 + X_2 + X_3 + X_4)(1 + X_2 + X_3 + X_4 + X_5)`.
pub fn counterexample_report() -> WitnessReport {
    let field = PrimeField::new(2).expect("2 is prime");
    let a = MultilinearPoly::from_terms(field, 5, [(0, 1), (1, 1), (2, 1), (4, 1), (8, 1)]);
    let b = MultilinearPoly::from_terms(field, 5, [(0, 1), (2, 1), (4, 1), (8, 1), (16, 1)]);
    let spec = VanishingSpec {
        must_vanish_layers: vec![1, 4],
        must_not_vanish_layers: Vec::new(),
        must_not_vanish_points: vec![CubePoint::new(5, 0)],
    };
    make_report(
        WitnessPoly::Multilinear(a.mul(&b)),
        WitnessForm::Explicit,
        2,
        spec,
        5,
    )
    .expect("dimensions are consistent")
}

/// An affine factor `constant + Σ_{i ∈ mask} X_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AffineForm {
    pub constant: u64,
    pub mask: u32,
}

/// The shape of a found product witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductShape {
    /// A (possibly empty) product of generalized monomials, collapsed to a
    /// single one, times a symmetric cofactor.
    Gm(GeneralizedMonomial),
    /// A set of distinct affine factors times a symmetric cofactor.
    Affine(Vec<AffineForm>),
}

/// A witness found by [`search_product_witness`].
#[derive(Debug, Clone)]
pub struct ProductWitness {
    pub shape: ProductShape,
    pub cofactor: SymmetricPoly,
    pub report: WitnessReport,
}

/// Which conjectured product form to search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchForm {
    GmTimesSymmetric,
    AffineTimesSymmetric,
}

/// Exhaustive, deterministic search for a degree-`<= d` witness of the
/// requested form that vanishes on `underline(E)` and is nonzero somewhere
/// on layer j. Returns the first hit in search order, or None once the
/// space is exhausted.
pub fn search_product_witness(
    field: PrimeField,
    n: usize,
    d: usize,
    e: &SymmetricSet,
    j: usize,
    form: SearchForm,
) -> Result<Option<ProductWitness>> {
    if e.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: e.n(),
        });
    }
    if j > n {
        return Err(Error::InvalidWeight { weight: j, n });
    }
    let d = d.min(n);
    match form {
        SearchForm::GmTimesSymmetric => {
            if n > 6 {
                return Err(Error::SizeCapExceeded { n, cap: 6 });
            }
            search_gm(field, n, d, e, j)
        }
        SearchForm::AffineTimesSymmetric => {
            if n > 5 {
                return Err(Error::SizeCapExceeded { n, cap: 5 });
            }
            if field.p() != 2 {
                return Err(Error::PreconditionUnmet(
                    "affine-form search is implemented for p = 2".into(),
                ));
            }
            search_affine(field, n, d, e, j)
        }
    }
}

/// Any product of generalized monomials is, on the cube, a single
/// generalized monomial `X^(S,T)` or identically zero, and permuting
/// coordinates fixes the symmetric data; so it suffices to scan the sizes
/// `(|S|, |T|)` with `S`, `T` canonical prefixes, together with the value
/// table of the symmetric cofactor on the weights where `X^(S,T)` lives.
/// The product degree is `|S| + |T| +` the sigma-degree of the restricted
/// table, which only depends on those values.
fn search_gm(
    field: PrimeField,
    n: usize,
    d: usize,
    e: &SymmetricSet,
    j: usize,
) -> Result<Option<ProductWitness>> {
    let p = field.p();
    for s in 0..=d.min(n) {
        for t in 0..=(d - s).min(n - s) {
            let budget = d - s - t;
            let lo = s; // window of weights meeting the subcube x_S = 1, x_T = 0
            let hi = n - t;
            let len = hi - lo + 1;
            let table_count = (p as u128).pow(len as u32);
            if j < lo || j > hi {
                continue;
            }
            let relevant_e: Vec<usize> =
                e.weights().filter(|&w| w >= lo && w <= hi).collect();
            let mut table = vec![0u64; len];
            for counter in 0..table_count {
                if counter > 0 {
                    // increment the base-p counter
                    let mut c = counter;
                    for slot in table.iter_mut() {
                        *slot = (c % p as u128) as u64;
                        c /= p as u128;
                    }
                }
                if table[j - lo] == 0 {
                    continue;
                }
                if relevant_e.iter().any(|&w| table[w - lo] != 0) {
                    continue;
                }
                // degree of the restriction as a function of the remaining
                // n - s - t coordinates' weight
                let restricted = weights_to_sigma_coeffs(field, &table);
                if restricted.degree().map_or(false, |dg| dg > budget) {
                    continue;
                }
                // materialize: X^(S,T) times the zero-extended interpolant
                let s_mask = ((1u64 << s) - 1) as u32;
                let t_mask = (((1u64 << t) - 1) << s) as u32;
                let gm = GeneralizedMonomial::new(n, s_mask, t_mask)?;
                let mut full = vec![0u64; n + 1];
                full[lo..=hi].copy_from_slice(&table);
                let cofactor = weights_to_sigma_coeffs(field, &full);
                let product = gm
                    .to_multilinear(field)
                    .mul(&sym_to_multilinear(&cofactor)?);
                let spec = VanishingSpec {
                    must_vanish_layers: e.weights().collect(),
                    must_not_vanish_layers: vec![j],
                    must_not_vanish_points: Vec::new(),
                };
                let report = make_report(
                    WitnessPoly::Multilinear(product),
                    WitnessForm::GmTimesSymmetric,
                    d,
                    spec,
                    n,
                )?;
                assert!(report.verified, "gm search produced an invalid witness");
                return Ok(Some(ProductWitness {
                    shape: ProductShape::Gm(gm),
                    cofactor,
                    report,
                }));
            }
        }
    }
    Ok(None)
}

/// Over F_2 every function is 0/1-valued, so a product of affine factors
/// acts as the AND of their value vectors and duplicate factors collapse;
/// the search walks sets of distinct non-constant affine forms (at most d
/// of them) with a symmetric cofactor value table, pruning branches whose
/// partial product already vanishes on layer j.
fn search_affine(
    field: PrimeField,
    n: usize,
    d: usize,
    e: &SymmetricSet,
    j: usize,
) -> Result<Option<ProductWitness>> {
    let size = 1usize << n;
    let all_mask: u32 = if size == 32 {
        u32::MAX
    } else {
        (1u32 << size) - 1
    };
    let point_bit = |x: usize| 1u32 << x;

    let mut layer_j_mask = 0u32;
    for x in 0..size {
        if (x as u32).count_ones() as usize == j {
            layer_j_mask |= point_bit(x);
        }
    }
    let mut e_mask = 0u32;
    for x in 0..size {
        if e.contains((x as u32).count_ones() as usize) {
            e_mask |= point_bit(x);
        }
    }

    // non-constant affine forms, ordered by (variable mask, constant)
    let mut factors = Vec::new();
    for mask in 1u32..(1 << n) {
        for constant in 0..2u64 {
            let mut vals = 0u32;
            for x in 0..size {
                let parity = (mask & x as u32).count_ones() as u64 % 2;
                if (constant + parity) % 2 == 1 {
                    vals |= point_bit(x);
                }
            }
            factors.push((AffineForm { constant, mask }, vals));
        }
    }

    // symmetric cofactor tables, all-ones first so pure products of affine
    // forms are reported before cofactored variants
    let mut sigma_tables = Vec::new();
    for counter in (0..(1u64 << (n + 1))).rev() {
        let table: Vec<u64> = (0..=n).map(|w| (counter >> w) & 1).collect();
        let mut vals = 0u32;
        for x in 0..size {
            if table[(x as u32).count_ones() as usize] == 1 {
                vals |= point_bit(x);
            }
        }
        sigma_tables.push((table, vals));
    }

    let check = |product_vals: u32,
                 chosen: &[usize]|
     -> Result<Option<ProductWitness>> {
        for (table, sigma_vals) in &sigma_tables {
            let vals = product_vals & sigma_vals;
            if vals & layer_j_mask == 0 || vals & e_mask != 0 {
                continue;
            }
            // degree of the minimal representative of these values
            let mut value_vec: Vec<u64> =
                (0..size).map(|x| ((vals >> x) & 1) as u64).collect();
            let candidate = multilinear_from_values(field, n, &mut value_vec);
            if candidate.degree().map_or(true, |dg| dg > d) {
                continue;
            }
            let cofactor = weights_to_sigma_coeffs(field, table);
            let spec = VanishingSpec {
                must_vanish_layers: e.weights().collect(),
                must_not_vanish_layers: vec![j],
                must_not_vanish_points: Vec::new(),
            };
            let report = make_report(
                WitnessPoly::Multilinear(candidate),
                WitnessForm::AffineTimesSymmetric,
                d,
                spec,
                n,
            )?;
            assert!(report.verified, "affine search produced an invalid witness");
            let shape = ProductShape::Affine(
                chosen.iter().map(|&idx| factors[idx].0).collect(),
            );
            return Ok(Some(ProductWitness {
                shape,
                cofactor,
                report,
            }));
        }
        Ok(None)
    };

    // k factors in lexicographic index order, k ascending
    fn combos(
        factors: &[(AffineForm, u32)],
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        product: u32,
        layer_j_mask: u32,
        check: &impl Fn(u32, &[usize]) -> Result<Option<ProductWitness>>,
    ) -> Result<Option<ProductWitness>> {
        if product & layer_j_mask == 0 {
            return Ok(None); // the product is already zero on layer j
        }
        if chosen.len() == k {
            return check(product, chosen);
        }
        for idx in start..factors.len() {
            chosen.push(idx);
            let hit = combos(
                factors,
                k,
                idx + 1,
                chosen,
                product & factors[idx].1,
                layer_j_mask,
                check,
            )?;
            chosen.pop();
            if hit.is_some() {
                return Ok(hit);
            }
        }
        Ok(None)
    }

    for k in 0..=d {
        let mut chosen = Vec::new();
        if let Some(hit) = combos(
            &factors,
            k,
            0,
            &mut chosen,
            all_mask,
            layer_j_mask,
            &check,
        )? {
            return Ok(Some(hit));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closures::{zcl_bruteforce, ClosureQuery};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn set(n: usize, ws: &[usize]) -> SymmetricSet {
        SymmetricSet::new(n, ws.iter().copied()).unwrap()
    }

    #[test]
    fn h_examples() {
        let field = f(2);
        // h_1 over F_2 is sigma_1: values 0,1,0,1,...
        let h = build_h(field, 8, 1).unwrap();
        assert_eq!(h, SymmetricPoly::sigma_k(field, 8, 1).unwrap());
        // h_0 has l = 0: the empty product, constant 1, vanishing nowhere
        let h0 = build_h(field, 6, 0).unwrap();
        assert_eq!(h0, SymmetricPoly::sigma_k(field, 6, 0).unwrap());
        // p = 3, i = 2: degree <= 2, nonzero exactly on w ≡ 2 (mod 3)
        let field3 = f(3);
        let h2 = build_h(field3, 20, 2).unwrap();
        assert!(h2.degree().unwrap() <= 2);
        for w in 0..=20usize {
            let v = h2.eval_at_weight(w).unwrap();
            assert_eq!(v != 0, w % 3 == 2, "w = {w}");
        }
    }

    #[test]
    fn h_nonzero_set_is_residue_class() {
        for p in [2u64, 3] {
            let field = f(p);
            for i in 0..=20u64 {
                let l = ell_p(i, &field);
                let m = field.p().pow(l);
                let h = build_h(field, 24, i).unwrap();
                assert!(h.degree().map_or(true, |d| d <= (m - 1) as usize));
                for w in 0..=24u64 {
                    let v = h.eval_at_weight(w as usize).unwrap();
                    assert_eq!(v != 0, w % m == i % m, "p={p} i={i} w={w}");
                }
                let rep = h_report(field, 24, i).unwrap();
                assert!(rep.verified, "p={p} i={i}");
            }
        }
    }

    #[test]
    fn newton_examples() {
        assert_eq!(newton_interpolate(0, &[1, 1, 1]), vec![1, 0, 0]);
        // nodes [1,3], values (0,0,1): Q(Z) = C(Z-1, 2)
        assert_eq!(newton_interpolate(1, &[0, 0, 1]), vec![1, -1, 1]);
        assert_eq!(newton_interpolate(0, &[0, 1]), vec![0, 1]);
    }

    /// Oracle: evaluate the binomial combination at integer points.
    fn newton_eval(coeffs: &[i64], z: u64) -> i64 {
        let mut acc = 0i64;
        for (u, &c) in coeffs.iter().enumerate() {
            let mut b = 1i64;
            for t in 0..u {
                b = b * (z as i64 - t as i64) / (t as i64 + 1);
            }
            acc += c * b;
        }
        acc
    }

    #[test]
    fn newton_matches_values_on_nodes() {
        let mut state = 11u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(7);
            let base = (state >> 50) % 6;
            let len = 1 + ((state >> 33) % 6) as usize;
            let values: Vec<i64> = (0..len)
                .map(|t| (state.rotate_left(t as u32 * 7) % 19) as i64 - 9)
                .collect();
            let coeffs = newton_interpolate(base, &values);
            for (offset, &v) in values.iter().enumerate() {
                assert_eq!(newton_eval(&coeffs, base + offset as u64), v);
            }
        }
    }

    #[test]
    fn r_examples() {
        let field = f(2);
        // p=2, i=1, j=5: r = sigma_0 + sigma_2, degree 2 = 5 - 1 - 2
        let r = build_r(field, 8, 1, 5).unwrap();
        let mut expected = vec![0u64; 9];
        expected[0] = 1;
        expected[2] = 1;
        assert_eq!(r.coeffs(), expected.as_slice());
        assert_eq!(r.eval_at_weight(3).unwrap(), 0);
        assert_eq!(r.eval_at_weight(5).unwrap(), 1);
        assert_eq!(r.degree(), Some(2));
        // k = 1 gives the constant
        let r = build_r(field, 5, 1, 3).unwrap();
        assert_eq!(r, SymmetricPoly::sigma_k(field, 5, 0).unwrap());
        // p=3, i=2, j=8: vanishes at 5, nonzero at 8, degree <= 3
        let field3 = f(3);
        let r = build_r(field3, 10, 2, 8).unwrap();
        assert!(r.degree().unwrap() <= 3);
        assert_eq!(r.eval_at_weight(5).unwrap(), 0);
        assert_ne!(r.eval_at_weight(8).unwrap(), 0);
        // invalid pairs
        assert!(build_r(field, 8, 1, 4).is_err());
        assert!(build_r(field, 8, 3, 3).is_err());
    }

    #[test]
    fn r_all_valid_pairs_up_to_20() {
        for p in [2u64, 3] {
            let field = f(p);
            for i in 0..20u64 {
                let l = ell_p(i, &field);
                let m = field.p().pow(l);
                let mut j = i + m;
                while j <= 20 {
                    let rep = r_report(field, 20, i, j).unwrap();
                    assert!(rep.verified, "p={p} i={i} j={j}");
                    j += m;
                }
            }
        }
    }

    #[test]
    fn degree_additivity_of_h_times_r() {
        // deg(h_d * r_{d,n}) <= (p^l - 1) + (n - d - p^l) = n - d - 1,
        // checked by multiplying value tables and converting back
        for p in [2u64, 3] {
            let field = f(p);
            for d in 0..=6u64 {
                let l = ell_p(d, &field);
                let m = field.p().pow(l);
                let mut n = d + m;
                while n <= 16 {
                    let h = build_h(field, n as usize, d).unwrap();
                    let r = build_r(field, n as usize, d, n).unwrap();
                    let prod_values: Vec<u64> = (0..=n as usize)
                        .map(|w| {
                            field.mul(
                                h.eval_at_weight(w).unwrap(),
                                r.eval_at_weight(w).unwrap(),
                            )
                        })
                        .collect();
                    let g = weights_to_sigma_coeffs(field, &prod_values);
                    let bound = (n - d - 1) as usize;
                    assert!(
                        g.degree().map_or(true, |dg| dg <= bound),
                        "p={p} d={d} n={n}"
                    );
                    n += m;
                }
            }
        }
    }

    #[test]
    fn verify_counterexample_witness() {
        let rep = counterexample_report();
        assert!(rep.verified);
        // a wrong degree claim must fail
        let field = f(2);
        let s2 = SymmetricPoly::sigma_k(field, 4, 2).unwrap();
        let ok = verify_witness(
            &WitnessPoly::Symmetric(s2),
            1,
            &VanishingSpec::default(),
            4,
        )
        .unwrap();
        assert!(!ok);
    }

    #[test]
    fn gm_search_examples() {
        let field = f(2);
        // counterexample: no gm-form witness for 0 vs {1,4} at degree 2
        let none = search_product_witness(
            field,
            5,
            2,
            &set(5, &[1, 4]),
            0,
            SearchForm::GmTimesSymmetric,
        )
        .unwrap();
        assert!(none.is_none());
        // pure symmetric witness sigma_1 separates layer 1 from layer 2
        let hit = search_product_witness(
            field,
            4,
            1,
            &set(4, &[2]),
            1,
            SearchForm::GmTimesSymmetric,
        )
        .unwrap()
        .expect("sigma_1 is a witness");
        match &hit.shape {
            ProductShape::Gm(gm) => assert_eq!(gm.degree(), 0),
            _ => panic!("expected gm shape"),
        }
        assert!(hit.report.verified);
        assert_eq!(
            hit.cofactor,
            SymmetricPoly::sigma_k(field, 4, 1).unwrap()
        );
    }

    #[test]
    fn affine_search_finds_counterexample_witness() {
        let field = f(2);
        let hit = search_product_witness(
            field,
            5,
            2,
            &set(5, &[1, 4]),
            0,
            SearchForm::AffineTimesSymmetric,
        )
        .unwrap()
        .expect("the explicit product witness exists");
        assert!(hit.report.verified);
        match &hit.shape {
            ProductShape::Affine(factors) => {
                assert_eq!(factors.len(), 2);
                assert!(factors.iter().all(|l| l.constant == 1));
            }
            _ => panic!("expected affine shape"),
        }
        // trivial cofactor: the constant 1
        assert_eq!(
            hit.cofactor,
            SymmetricPoly::sigma_k(field, 5, 0).unwrap()
        );
    }

    #[test]
    fn searches_are_sound_on_closure_members() {
        // no witness of any form can separate j from E when j is in the
        // brute-force closure
        for (p, n) in [(2u64, 4usize), (3, 4)] {
            let field = f(p);
            for ebits in 1u32..(1 << (n + 1)) {
                let e = SymmetricSet::new(n, (0..=n).filter(|&w| ebits >> w & 1 == 1)).unwrap();
                for d in 0..=2usize {
                    let q = ClosureQuery::new(field, n, d, e.clone()).unwrap();
                    let closure = zcl_bruteforce(&q).unwrap().closure;
                    for jw in closure.weights() {
                        let hit = search_product_witness(
                            field,
                            n,
                            d,
                            &e,
                            jw,
                            SearchForm::GmTimesSymmetric,
                        )
                        .unwrap();
                        assert!(hit.is_none(), "p={p} n={n} d={d} E={e} j={jw}");
                    }
                }
            }
        }
    }

    #[test]
    fn witness_json_shape() {
        let rep = h_report(f(2), 4, 1).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert_eq!(json["form"], "h");
        assert_eq!(json["verified"], true);
        assert!(json["polynomial"]["sigma"].is_array());
    }
}
