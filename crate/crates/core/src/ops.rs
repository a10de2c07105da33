//! The sum `⊕`, dihedral equivalence, reduction witnesses and the
//! reducibility decision procedure.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quiddity::{close_word, word_matrix, QuidditySign, Tuple};
use crate::rings::{PmOne, RingId};

/// `(a_1..a_n) ⊕ (b_1..b_m) = (a_1 + b_m, a_2, ..., a_{n-1}, a_n + b_1, b_2, ..., b_{m-1})`
pub fn sum(a: &Tuple, b: &Tuple) -> Result<Tuple> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring(),
            right: b.ring(),
        });
    }
    for t in [a, b] {
        if t.len() < 2 {
            return Err(Error::TooShort {
                min: 2,
                len: t.len(),
            });
        }
    }
    let (a, b) = (a.entries(), b.entries());
    let (n, m) = (a.len(), b.len());
    let mut out = Vec::with_capacity(n + m - 2);
    out.push(&a[0] + &b[m - 1]);
    out.extend_from_slice(&a[1..n - 1]);
    out.push(&a[n - 1] + &b[0]);
    out.extend_from_slice(&b[1..m - 1]);
    Ok(Tuple::from_parts(a[0].ring(), out))
}

/// An element of the dihedral group acting on positions: optionally reverse,
/// then rotate left by `rotation`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DihedralTransform {
    pub rotation: usize,
    pub reversed: bool,
}

impl DihedralTransform {
    pub const IDENTITY: DihedralTransform = DihedralTransform {
        rotation: 0,
        reversed: false,
    };

    pub fn rotation(rotation: usize) -> Self {
        DihedralTransform {
            rotation,
            reversed: false,
        }
    }

    /// Index into the original tuple that lands at position `j`.
    pub fn source_index(&self, j: usize, n: usize) -> usize {
        let k = (j + self.rotation) % n;
        if self.reversed {
            n - 1 - k
        } else {
            k
        }
    }

    pub fn apply(&self, t: &Tuple) -> Result<Tuple> {
        let n = t.len();
        if self.rotation >= n {
            return Err(Error::IndexOutOfRange {
                index: self.rotation,
                len: n,
            });
        }
        let e = t.entries();
        Ok(Tuple::from_parts(
            t.ring(),
            (0..n).map(|j| e[self.source_index(j, n)].clone()).collect(),
        ))
    }

    /// All `2n` transforms in scan order: rotations ascending, reversed ones
    /// last.
    pub fn all(n: usize) -> impl Iterator<Item = DihedralTransform> {
        [false, true].into_iter().flat_map(move |reversed| {
            (0..n).map(move |rotation| DihedralTransform { rotation, reversed })
        })
    }
}

impl fmt::Display for DihedralTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.reversed {
            write!(f, "reverse, rotate {}", self.rotation)
        } else {
            write!(f, "rotate {}", self.rotation)
        }
    }
}

/// The `2n` images of `t`, duplicates included.
pub fn dihedral_orbit(t: &Tuple) -> Vec<(DihedralTransform, Tuple)> {
    DihedralTransform::all(t.len())
        .map(|g| (g, g.apply(t).expect("rotation in range")))
        .collect()
}

pub(crate) fn cmp_tuples(a: &Tuple, b: &Tuple) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.entries()
            .iter()
            .zip(b.entries())
            .map(|(x, y)| x.cmp_exact(y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// Lexicographic order on equal-length tuples from one exact ring, shorter
/// tuples first.
pub fn compare_tuples(a: &Tuple, b: &Tuple) -> Result<Ordering> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring(),
            right: b.ring(),
        });
    }
    if !a.ring().is_exact() {
        return Err(Error::InexactRing);
    }
    Ok(cmp_tuples(a, b))
}

/// The lexicographically smallest member of the dihedral orbit.
pub fn canonical_form(t: &Tuple) -> Result<Tuple> {
    if !t.ring().is_exact() {
        return Err(Error::InexactRing);
    }
    Ok(DihedralTransform::all(t.len())
        .map(|g| g.apply(t).expect("rotation in range"))
        .min_by(cmp_tuples)
        .expect("orbit is non-empty"))
}

pub fn equivalent(a: &Tuple, b: &Tuple) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch {
            left: a.ring(),
            right: b.ring(),
        });
    }
    if a.len() != b.len() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Certificate that a λ-quiddity is reducible: applying `transform` to it
/// yields `left ⊕ right`, both operands being λ-quiddities of size at least 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub transform: DihedralTransform,
    pub left: Tuple,
    pub right: Tuple,
}

impl DecompositionWitness {
    /// Re-checks every condition of the certificate against `original`.
    pub fn verifies(&self, original: &Tuple) -> bool {
        self.left.len() >= 3
            && self.right.len() >= 3
            && self.left.len() + self.right.len() == original.len() + 2
            && self.left.is_quiddity().is_some()
            && self.right.is_quiddity().is_some()
            && match (sum(&self.left, &self.right), self.transform.apply(original)) {
                (Ok(s), Ok(t)) => s == t,
                _ => false,
            }
    }
}

fn require_quiddity(t: &Tuple) -> Result<QuidditySign> {
    if !t.ring().is_exact() {
        return Err(Error::InexactRing);
    }
    t.is_quiddity().ok_or(Error::NotQuiddity)
}

fn check_index(t: &Tuple, i: usize) -> Result<()> {
    if i >= t.len() {
        Err(Error::IndexOutOfRange {
            index: i,
            len: t.len(),
        })
    } else {
        Ok(())
    }
}

/// Splits off `(ε, ε, ε)` at a `±1` entry (0-based index `i`).
///
/// The rotation starting just after `i` equals
/// `(a_{i+1} - ε, ..., a_{i-1} - ε) ⊕ (ε, ε, ε)`.
pub fn reduce_by_unit(t: &Tuple, i: usize) -> Result<DecompositionWitness> {
    let n = t.len();
    if n < 4 {
        return Err(Error::TooShort { min: 4, len: n });
    }
    check_index(t, i)?;
    require_quiddity(t)?;
    let eps = &t.entries()[i];
    if eps.is_pm_one() == PmOne::Neither {
        return Err(Error::NotUnit { index: i });
    }
    let transform = DihedralTransform::rotation((i + 1) % n);
    let rotated = transform.apply(t)?.into_entries();
    let mut left = rotated[..n - 1].to_vec();
    left[0] = &left[0] - eps;
    left[n - 2] = &left[n - 2] - eps;
    Ok(DecompositionWitness {
        transform,
        left: Tuple::from_parts(t.ring(), left),
        right: Tuple::from_parts(t.ring(), vec![eps.clone(); 3]),
    })
}

/// Splits off `(-a_{i+1}, 0, a_{i+1}, 0)` at a zero entry (0-based index `i`).
///
/// The rotation starting two places after `i` equals
/// `(a_{i+2}, ..., a_{i-2}, a_{i-1} + a_{i+1}) ⊕ (-a_{i+1}, 0, a_{i+1}, 0)`.
pub fn reduce_by_zero(t: &Tuple, i: usize) -> Result<DecompositionWitness> {
    let n = t.len();
    if n < 5 {
        return Err(Error::TooShort { min: 5, len: n });
    }
    check_index(t, i)?;
    require_quiddity(t)?;
    let e = t.entries();
    if !e[i].is_zero() {
        return Err(Error::NotZero { index: i });
    }
    let next = &e[(i + 1) % n];
    let transform = DihedralTransform::rotation((i + 2) % n);
    let rotated = transform.apply(t)?.into_entries();
    // rotated = (a_{i+2}, ..., a_{i-1}, a_i, a_{i+1})
    let mut left = rotated[..n - 2].to_vec();
    left[n - 3] = &left[n - 3] + next;
    let zero = t.ring().zero();
    Ok(DecompositionWitness {
        transform,
        left: Tuple::from_parts(t.ring(), left),
        right: Tuple::from_parts(t.ring(), vec![-next, zero.clone(), next.clone(), zero]),
    })
}

/// Decides reducibility exactly, returning the first witness in scan order
/// (transform as in [`DihedralTransform::all`], then left size ascending).
///
/// For a representative `c` and left size `m`, the interior entries of both
/// operands are read off `c`; writing `P = M(b_2, ..., b_{l-1})`, the right
/// operand closes to `±Id` for at most one choice of `b_1`, `b_l`
/// (see [`close_word`]), and the left operand is then a λ-quiddity because
/// the whole tuple is.
pub fn decompose(t: &Tuple) -> Result<Option<DecompositionWitness>> {
    require_quiddity(t)?;
    let n = t.len();
    if n < 3 {
        return Err(Error::TooShort { min: 3, len: n });
    }
    let ring = t.ring();
    for transform in DihedralTransform::all(n) {
        let c = transform.apply(t)?.into_entries();
        if let Some(w) = split_representative(ring, &c, transform) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn split_representative(
    ring: RingId,
    c: &[crate::rings::RingValue],
    transform: DihedralTransform,
) -> Option<DecompositionWitness> {
    let n = c.len();
    for m in 3..n {
        // c = (a_1 + b_l, a_2..a_{m-1}, a_m + b_1, b_2..b_{l-1})
        let interior = &c[m..];
        let p = word_matrix(ring, interior);
        let Some((_, b_first, b_last)) = close_word(&p) else {
            continue;
        };
        let mut left = c[..m].to_vec();
        left[0] = &left[0] - &b_last;
        left[m - 1] = &left[m - 1] - &b_first;
        let mut right = Vec::with_capacity(interior.len() + 2);
        right.push(b_first);
        right.extend_from_slice(interior);
        right.push(b_last);
        return Some(DecompositionWitness {
            transform,
            left: Tuple::from_parts(ring, left),
            right: Tuple::from_parts(ring, right),
        });
    }
    None
}

/// `(0, 0)` and other tuples shorter than 3 are never irreducible.
pub fn is_irreducible(t: &Tuple) -> Result<bool> {
    require_quiddity(t)?;
    if t.len() < 3 {
        return Ok(false);
    }
    Ok(decompose(t)?.is_none())
}
