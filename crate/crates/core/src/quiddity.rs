//! 2×2 matrices over a ring, the matrix word `M_n(a_1, ..., a_n)`, continuants,
//! and the λ-quiddity predicate.
//!
//! `M_n(a_1, ..., a_n) = E(a_n) · ... · E(a_1)` where `E(x) = [[x, -1], [1, 0]]`.
//! A tuple is a λ-quiddity when this product is `Id` or `-Id`.

use std::fmt;
use std::ops::Mul;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rings::{RingId, RingValue};

/// Default absolute per-entry tolerance for checks over the real ring.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    m: [RingValue; 4],
}

impl Mat2 {
    pub fn new(m11: RingValue, m12: RingValue, m21: RingValue, m22: RingValue) -> Result<Self> {
        let ring = m11.ring();
        for other in [&m12, &m21, &m22] {
            if other.ring() != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: other.ring(),
                });
            }
        }
        Ok(Mat2 {
            m: [m11, m12, m21, m22],
        })
    }

    fn from_entries(m: [RingValue; 4]) -> Self {
        Mat2 { m }
    }

    pub fn identity(ring: RingId) -> Self {
        Self::scalar(ring.one())
    }

    pub fn scalar(x: RingValue) -> Self {
        let zero = x.ring().zero();
        Mat2::from_entries([x.clone(), zero.clone(), zero, x])
    }

    pub fn ring(&self) -> RingId {
        self.m[0].ring()
    }

    pub fn m11(&self) -> &RingValue {
        &self.m[0]
    }
    pub fn m12(&self) -> &RingValue {
        &self.m[1]
    }
    pub fn m21(&self) -> &RingValue {
        &self.m[2]
    }
    pub fn m22(&self) -> &RingValue {
        &self.m[3]
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[RingValue; 4] {
        &self.m
    }

    pub fn checked_mul(&self, rhs: &Mat2) -> Result<Mat2> {
        if self.ring() != rhs.ring() {
            return Err(Error::RingMismatch {
                left: self.ring(),
                right: rhs.ring(),
            });
        }
        Ok(self * rhs)
    }

    pub fn det(&self) -> RingValue {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    /// `E(x) · self`, computed without building `E(x)`.
    pub fn left_mul_elementary(&self, x: &RingValue) -> Mat2 {
        let [p, q, r, s] = &self.m;
        Mat2::from_entries([&(x * p) - r, &(x * q) - s, p.clone(), q.clone()])
    }

    /// `Plus` for `Id`, `Minus` for `-Id`. In `Z/2Z` the two coincide and the
    /// answer is `Plus`.
    pub fn sign(&self) -> Option<QuidditySign> {
        let ring = self.ring();
        if *self == Mat2::identity(ring) {
            Some(QuidditySign::Plus)
        } else if *self == Mat2::scalar(ring.from_i64(-1)) {
            Some(QuidditySign::Minus)
        } else {
            None
        }
    }

    /// Largest absolute entrywise difference to `sign · Id`. Real ring only.
    pub fn distance_to_sign(&self, sign: QuidditySign) -> Option<f64> {
        let target = sign.as_i64() as f64;
        let want = [target, 0.0, 0.0, target];
        self.m
            .iter()
            .zip(want)
            .map(|(x, w)| x.as_f64().map(|x| (x - w).abs()))
            .try_fold(0.0f64, |acc, d| d.map(|d| acc.max(d)))
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &rhs.m;
        Mat2::from_entries([
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        ])
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// `[[x, -1], [1, 0]]`
pub fn elementary(x: &RingValue) -> Mat2 {
    let ring = x.ring();
    Mat2::from_entries([x.clone(), ring.from_i64(-1), ring.one(), ring.zero()])
}

/// Which of `Id` / `-Id` the matrix word evaluates to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuidditySign {
    Plus,
    Minus,
}

impl QuidditySign {
    pub fn as_i64(self) -> i64 {
        match self {
            QuidditySign::Plus => 1,
            QuidditySign::Minus => -1,
        }
    }

    pub fn value_in(self, ring: RingId) -> RingValue {
        ring.from_i64(self.as_i64())
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QuidditySign::Plus => "plus",
            QuidditySign::Minus => "minus",
        }
    }
}

impl fmt::Display for QuidditySign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A non-empty tuple `(a_1, ..., a_n)` of values from one ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tuple {
    ring: RingId,
    entries: Vec<RingValue>,
}

impl Tuple {
    pub fn new(ring: RingId, entries: Vec<RingValue>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::TooShort { min: 1, len: 0 });
        }
        if let Some(bad) = entries.iter().find(|x| x.ring() != ring) {
            return Err(Error::RingMismatch {
                left: ring,
                right: bad.ring(),
            });
        }
        Ok(Tuple { ring, entries })
    }

    /// For callers that already guarantee the invariants.
    pub(crate) fn from_parts(ring: RingId, entries: Vec<RingValue>) -> Self {
        debug_assert!(!entries.is_empty());
        debug_assert!(entries.iter().all(|x| x.ring() == ring));
        Tuple { ring, entries }
    }

    pub fn from_i64s(ring: RingId, values: &[i64]) -> Result<Self> {
        Tuple::new(ring, values.iter().map(|&k| ring.from_i64(k)).collect())
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[RingValue] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<RingValue> {
        self.entries
    }

    /// Parses `(v1,...,vn)`; the parentheses are optional.
    pub fn parse(ring: RingId, text: &str) -> Result<Self> {
        let entries = parse_entries(ring, text)?;
        Tuple::new(ring, entries)
    }

    /// `M_n(a_1, ..., a_n)`
    pub fn word_matrix(&self) -> Mat2 {
        word_matrix_of(self.ring, &self.entries)
    }

    /// `K_n(a_1, ..., a_n)`
    pub fn continuant(&self) -> RingValue {
        continuant(self.ring, &self.entries)
    }

    /// Checks `M_n` against the four signed continuants
    /// `[[K_n(a_1..a_n), -K_{n-1}(a_2..a_n)], [K_{n-1}(a_1..a_{n-1}), -K_{n-2}(a_2..a_{n-1})]]`.
    pub fn continuant_identity_holds(&self) -> bool {
        let a = &self.entries;
        let n = a.len();
        let ring = self.ring;
        let inner = if n >= 2 {
            continuant(ring, &a[1..n - 1])
        } else {
            continuant_before_empty(ring)
        };
        let expected = [
            continuant(ring, a),
            -continuant(ring, &a[1..]),
            continuant(ring, &a[..n - 1]),
            -inner,
        ];
        self.word_matrix().entries() == &expected
    }

    /// The sign of `M_n` if the tuple is a λ-quiddity. Over the real ring this
    /// is exact float equality; use [`is_quiddity_approx`](Self::is_quiddity_approx)
    /// there.
    pub fn is_quiddity(&self) -> Option<QuidditySign> {
        self.word_matrix().sign()
    }

    /// Real ring only: the sign whose `±Id` lies within `tol` of `M_n` in the
    /// max norm.
    pub fn is_quiddity_approx(&self, tol: f64) -> Result<Option<QuidditySign>> {
        if self.ring != RingId::Real {
            return Err(Error::InvalidArgument(format!(
                "approximate check needs the real ring, got {}",
                self.ring
            )));
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {tol}"
            )));
        }
        let m = self.word_matrix();
        Ok([QuidditySign::Minus, QuidditySign::Plus]
            .into_iter()
            .find(|&s| m.distance_to_sign(s).is_some_and(|d| d < tol)))
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Splits a tuple literal on top-level commas and parses each entry. An empty
/// literal `()` yields no entries.
pub fn parse_entries(ring: RingId, text: &str) -> Result<Vec<RingValue>> {
    let trimmed_start = text.len() - text.trim_start().len();
    let body = text.trim();
    let (body, offset) = match body.strip_prefix('(') {
        Some(rest) => {
            let rest = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(text.trim_end().len(), "expected `)`"))?;
            (rest, trimmed_start + 1)
        }
        None => (body, trimmed_start),
    };
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    let push = |piece: &str, at: usize, out: &mut Vec<RingValue>| -> Result<()> {
        RingValue::parse(ring, piece)
            .map(|v| out.push(v))
            .map_err(|e| match e {
                Error::Parse { pos, msg } => Error::Parse {
                    pos: pos + offset + at,
                    msg,
                },
                other => other,
            })
    };
    for (i, c) in body.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                push(&body[start..i], start, &mut out)?;
                start = i + 1;
            }
            _ => {}
        }
    }
    push(&body[start..], start, &mut out)?;
    Ok(out)
}

fn word_matrix_of(ring: RingId, entries: &[RingValue]) -> Mat2 {
    entries
        .iter()
        .fold(Mat2::identity(ring), |acc, x| acc.left_mul_elementary(x))
}

/// `M` of a possibly empty slice; the empty word is `Id`.
pub fn word_matrix(ring: RingId, entries: &[RingValue]) -> Mat2 {
    word_matrix_of(ring, entries)
}

/// `K_i(a_1, ..., a_i)` by `K_i = a_i K_{i-1} - K_{i-2}`, with `K_0 = 1` for
/// the empty slice.
pub fn continuant(ring: RingId, entries: &[RingValue]) -> RingValue {
    let mut prev = continuant_before_empty(ring);
    let mut cur = ring.one();
    for a in entries {
        let next = &(a * &cur) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The boundary value `K_{-1} = 0`.
pub fn continuant_before_empty(ring: RingId) -> RingValue {
    ring.zero()
}

/// Solves `E(x) · E(y) · p = ε · Id` for `ε ∈ {-1, 1}` and ring values `x`, `y`.
///
/// Equivalently `p = ε [[-1, x], [-y, xy - 1]]`, so the solution is unique when
/// it exists: `ε = -p11`, `x = ε p12`, `y = -ε p21`, subject to
/// `p22 = ε (xy - 1)`.
pub fn close_word(p: &Mat2) -> Option<(QuidditySign, RingValue, RingValue)> {
    let ring = p.ring();
    let one = ring.one();
    for sign in [QuidditySign::Minus, QuidditySign::Plus] {
        let eps = sign.value_in(ring);
        if *p.m11() != -&eps {
            continue;
        }
        let x = &eps * p.m12();
        let y = -&(&eps * p.m21());
        if *p.m22() == &eps * &(&(&x * &y) - &one) {
            // Z/2Z: both signs name the same unit; report Plus
            let sign = if ring.sign_ambiguous() {
                QuidditySign::Plus
            } else {
                sign
            };
            return Some((sign, x, y));
        }
    }
    None
}

/// The `n`-tuple with every entry `2 cos(π/n)`.
pub fn cos_quiddity(n: usize) -> Result<Tuple> {
    if n < 2 {
        return Err(Error::TooShort { min: 2, len: n });
    }
    let u = 2.0 * (std::f64::consts::PI / n as f64).cos();
    Ok(Tuple::from_parts(RingId::Real, vec![RingValue::real(u); n]))
}
