//! Boolean-cube points, Hamming-weight layers, symmetric sets, and the
//! residue-class operator `E ⊕ p^ℓ`.

use std::collections::BTreeSet;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Hard limit for any operation that materializes `2^n`-scale data.
pub const ENUM_CAP: usize = 24;

/// A point of `{0,1}^n`, stored as an n-bit mask (bit i-1 is coordinate i).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubePoint {
    pub n: usize,
    pub bits: u32,
}

impl CubePoint {
    pub fn new(n: usize, bits: u32) -> Self {
        debug_assert!(n <= 32 && (n == 32 || bits < (1u32 << n)));
        CubePoint { n, bits }
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// All-ones point `1^n`.
    pub fn top(n: usize) -> Self {
        CubePoint::new(n, ((1u64 << n) - 1) as u32)
    }
}

impl fmt::Display for CubePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.n.max(1))
    }
}

/// A weight set `E ⊆ [0, n]`, standing for the symmetric set of all cube
/// points whose Hamming weight lies in E.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymmetricSet {
    n: usize,
    members: BTreeSet<usize>,
}

impl SymmetricSet {
    pub fn new(n: usize, weights: impl IntoIterator<Item = usize>) -> Result<Self> {
        let members: BTreeSet<usize> = weights.into_iter().collect();
        if let Some(&w) = members.iter().next_back() {
            if w > n {
                return Err(Error::InvalidWeight { weight: w, n });
            }
        }
        Ok(SymmetricSet { n, members })
    }

    pub fn empty(n: usize) -> Self {
        SymmetricSet {
            n,
            members: BTreeSet::new(),
        }
    }

    /// The full interval `[0, n]`.
    pub fn full(n: usize) -> Self {
        SymmetricSet {
            n,
            members: (0..=n).collect(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, w: usize) -> bool {
        self.members.contains(&w)
    }

    pub fn weights(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset_of(&self, other: &SymmetricSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Number of cube points in the symmetric set, `Σ_{i∈E} C(n,i)`.
    pub fn point_count(&self) -> u64 {
        self.members.iter().map(|&i| binomial_u64(self.n, i)).sum()
    }

    /// Parses the serialized form: sorted comma-separated weights, e.g. "1,4".
    /// An empty string denotes the empty set.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SymmetricSet::empty(n));
        }
        let mut weights = Vec::new();
        for part in s.split(',') {
            let w: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad weight '{part}'")))?;
            weights.push(w);
        }
        SymmetricSet::new(n, weights)
    }
}

// JSON form: the sorted weight array, e.g. [1,4].
impl Serialize for SymmetricSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.members.len()))?;
        for w in &self.members {
            seq.serialize_element(w)?;
        }
        seq.end()
    }
}

// Display is the inverse of `parse`: sorted comma-separated weights.
impl fmt::Display for SymmetricSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for w in self.weights() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
            first = false;
        }
        Ok(())
    }
}

/// Exact `C(n, k)` in u64; safe for `n <= 64`.
pub fn binomial_u64(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    acc as u64
}

fn check_cap(n: usize) -> Result<()> {
    if n > ENUM_CAP {
        Err(Error::SizeCapExceeded { n, cap: ENUM_CAP })
    } else {
        Ok(())
    }
}

/// The `C(n, i)` points of Hamming weight `i`, in increasing bitmask order.
pub fn layer_points(n: usize, i: usize) -> Result<impl Iterator<Item = CubePoint>> {
    check_cap(n)?;
    if i > n {
        return Err(Error::InvalidWeight { weight: i, n });
    }
    Ok(LayerIter {
        n,
        next: if i == 0 { Some(0) } else { Some((1u32 << i) - 1) },
    })
}

struct LayerIter {
    n: usize,
    next: Option<u32>,
}

impl Iterator for LayerIter {
    type Item = CubePoint;

    fn next(&mut self) -> Option<CubePoint> {
        let cur = self.next?;
        let point = CubePoint::new(self.n, cur);
        // Gosper's hack: next mask with the same popcount.
        self.next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            if (succ as u64) < (1u64 << self.n) {
                Some(succ)
            } else {
                None
            }
        };
        Some(point)
    }
}

/// All points of the symmetric set, layer by layer in increasing weight,
/// masks increasing within each layer.
pub fn enumerate_symmetric(e: &SymmetricSet) -> Result<impl Iterator<Item = CubePoint> + '_> {
    check_cap(e.n())?;
    let n = e.n();
    Ok(e.weights().flat_map(move |i| {
        layer_points(n, i).expect("weights validated on construction")
    }))
}

/// `E ⊕ m`: every `t ∈ [0, n]` congruent mod `m` to some element of E.
pub fn e_oplus(e: &SymmetricSet, m: u64) -> SymmetricSet {
    assert!(m >= 1, "modulus must be positive");
    let n = e.n();
    let residues: BTreeSet<u64> = e.weights().map(|j| j as u64 % m).collect();
    SymmetricSet::new(n, (0..=n).filter(|&t| residues.contains(&(t as u64 % m))))
        .expect("weights in range by construction")
}

/// Restriction of E to an interval `I = [lo, hi]` of length `modulus`:
/// `j ∈ E_I` iff `j ∈ I` and `j ≡ e (mod modulus)` for some `e ∈ E`.
pub fn restrict_to_interval(
    e: &SymmetricSet,
    lo: usize,
    hi: usize,
    modulus: u64,
) -> Result<SymmetricSet> {
    if hi < lo || hi > e.n() {
        return Err(Error::InvalidInterval(format!(
            "[{lo}, {hi}] not inside [0, {}]",
            e.n()
        )));
    }
    if (hi - lo + 1) as u64 != modulus {
        return Err(Error::InvalidInterval(format!(
            "interval [{lo}, {hi}] has length {}, expected {modulus}",
            hi - lo + 1
        )));
    }
    let residues: BTreeSet<u64> = e.weights().map(|j| j as u64 % modulus).collect();
    SymmetricSet::new(
        e.n(),
        (lo..=hi).filter(|&t| residues.contains(&(t as u64 % modulus))),
    )
}
