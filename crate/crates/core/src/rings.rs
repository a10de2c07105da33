//! The coefficient rings: arbitrary-precision integers, residues modulo `n`,
//! integer polynomials in one indeterminate (standing in for `Z[alpha]` with
//! `alpha` transcendental), the subring `Z[2i]` of the Gaussian integers, and
//! a floating-point real ring used only for approximate checks.
//!
//! Every exact value is kept in normal form, so structural equality is ring
//! equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Identifies one of the supported rings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingId {
    /// `Z`
    Int,
    /// `Z/nZ`, `n >= 2`.
    Mod(u64),
    /// `Z[X]`
    Poly,
    /// `Z[2i] = { a + 2bi }`
    GaussEven,
    /// Double-precision reals; no exact equality.
    Real,
}

impl RingId {
    pub fn modular(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "modulus must be at least 2, got {n}"
            )));
        }
        Ok(RingId::Mod(n))
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, RingId::Real)
    }

    /// True for the rings that are subrings of the complex numbers.
    pub fn embeds_in_complex(&self) -> bool {
        !matches!(self, RingId::Mod(_))
    }

    /// In `Z/2Z` the identity and its negative coincide.
    pub fn sign_ambiguous(&self) -> bool {
        matches!(self, RingId::Mod(2))
    }

    pub fn zero(&self) -> RingValue {
        self.from_i64(0)
    }

    pub fn one(&self) -> RingValue {
        self.from_i64(1)
    }

    /// Image of an integer under the canonical map `Z -> R`.
    pub fn from_i64(&self, k: i64) -> RingValue {
        self.from_bigint(&BigInt::from(k))
    }

    pub fn from_bigint(&self, k: &BigInt) -> RingValue {
        let repr = match *self {
            RingId::Int => Repr::Int(k.clone()),
            RingId::Mod(n) => Repr::Mod {
                residue: reduce_mod(k, n),
                modulus: n,
            },
            RingId::Poly => Repr::Poly(vec![k.clone()]),
            RingId::GaussEven => Repr::GaussEven {
                re: k.clone(),
                half_im: BigInt::zero(),
            },
            RingId::Real => Repr::Real(k.to_f64().unwrap_or(f64::NAN)),
        };
        RingValue(repr)
    }

    /// The units `-1` and `1` of the ring, in that order, without duplicates.
    pub fn signs(&self) -> Vec<RingValue> {
        let minus = self.from_i64(-1);
        let plus = self.one();
        if minus == plus {
            vec![plus]
        } else {
            vec![minus, plus]
        }
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingId::Int => f.write_str("z"),
            RingId::Mod(n) => write!(f, "zmod:{n}"),
            RingId::Poly => f.write_str("zx"),
            RingId::GaussEven => f.write_str("z2i"),
            RingId::Real => f.write_str("real"),
        }
    }
}

impl FromStr for RingId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "z" => Ok(RingId::Int),
            "zx" => Ok(RingId::Poly),
            "z2i" => Ok(RingId::GaussEven),
            "real" => Ok(RingId::Real),
            other => {
                let n = other
                    .strip_prefix("zmod:")
                    .and_then(|n| n.parse::<u64>().ok())
                    .ok_or_else(|| Error::UnknownRing(other.to_string()))?;
                RingId::modular(n)
            }
        }
    }
}

/// Result of testing a value against the units `1` and `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmOne {
    Plus,
    Minus,
    Neither,
}

#[derive(Debug, Clone)]
enum Repr {
    Int(BigInt),
    Mod { residue: u64, modulus: u64 },
    // ascending coefficients, no trailing zero except the zero polynomial [0]
    Poly(Vec<BigInt>),
    // re + 2 * half_im * i
    GaussEven { re: BigInt, half_im: BigInt },
    Real(f64),
}

/// An element of one of the rings in [`RingId`], always in normal form.
///
/// Values are immutable; arithmetic returns fresh values. The operator impls
/// on references panic when the operands live in different rings; use the
/// `checked_*` methods on untrusted input.
#[derive(Debug, Clone)]
pub struct RingValue(Repr);

fn reduce_mod(k: &BigInt, n: u64) -> u64 {
    k.mod_floor(&BigInt::from(n))
        .to_u64()
        .expect("residue fits in u64")
}

fn trim_poly(mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        coeffs.push(BigInt::zero());
    }
    coeffs
}

impl RingValue {
    pub fn int(k: impl Into<BigInt>) -> Self {
        RingValue(Repr::Int(k.into()))
    }

    pub fn modular(k: impl Into<BigInt>, n: u64) -> Result<Self> {
        let n = match RingId::modular(n)? {
            RingId::Mod(n) => n,
            _ => unreachable!(),
        };
        Ok(RingValue(Repr::Mod {
            residue: reduce_mod(&k.into(), n),
            modulus: n,
        }))
    }

    /// A polynomial from ascending coefficients; trailing zeros are dropped.
    pub fn poly<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        RingValue(Repr::Poly(trim_poly(
            coeffs.into_iter().map(Into::into).collect(),
        )))
    }

    /// The element `re + 2 * half_im * i` of `Z[2i]`.
    pub fn gauss_even(re: impl Into<BigInt>, half_im: impl Into<BigInt>) -> Self {
        RingValue(Repr::GaussEven {
            re: re.into(),
            half_im: half_im.into(),
        })
    }

    pub fn real(x: f64) -> Self {
        RingValue(Repr::Real(x))
    }

    pub fn ring(&self) -> RingId {
        match &self.0 {
            Repr::Int(_) => RingId::Int,
            Repr::Mod { modulus, .. } => RingId::Mod(*modulus),
            Repr::Poly(_) => RingId::Poly,
            Repr::GaussEven { .. } => RingId::GaussEven,
            Repr::Real(_) => RingId::Real,
        }
    }

    pub fn as_int(&self) -> Option<&BigInt> {
        match &self.0 {
            Repr::Int(k) => Some(k),
            _ => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Mod { residue, .. } => Some(*residue),
            _ => None,
        }
    }

    /// Ascending coefficients of a polynomial value.
    pub fn poly_coeffs(&self) -> Option<&[BigInt]> {
        match &self.0 {
            Repr::Poly(c) => Some(c),
            _ => None,
        }
    }

    /// `(a, b)` for the value `a + 2bi`.
    pub fn gauss_parts(&self) -> Option<(&BigInt, &BigInt)> {
        match &self.0 {
            Repr::GaussEven { re, half_im } => Some((re, half_im)),
            _ => None,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match &self.0 {
            Repr::Real(x) => Some(*x),
            _ => None,
        }
    }

    /// Degree of a polynomial value; the zero polynomial has degree 0.
    pub fn degree(&self) -> Option<usize> {
        self.poly_coeffs().map(|c| c.len() - 1)
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Int(k) => k.is_zero(),
            Repr::Mod { residue, .. } => *residue == 0,
            Repr::Poly(c) => c.len() == 1 && c[0].is_zero(),
            Repr::GaussEven { re, half_im } => re.is_zero() && half_im.is_zero(),
            Repr::Real(x) => *x == 0.0,
        }
    }

    /// Classifies the value as `1`, `-1` or neither. In `Z/2Z`, where the two
    /// coincide, the answer is `Plus`.
    pub fn is_pm_one(&self) -> PmOne {
        let ring = self.ring();
        if *self == ring.one() {
            PmOne::Plus
        } else if *self == ring.from_i64(-1) {
            PmOne::Minus
        } else {
            PmOne::Neither
        }
    }

    fn ensure_same_ring(&self, other: &Self) -> Result<()> {
        let (l, r) = (self.ring(), other.ring());
        if l == r {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: l, right: r })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ensure_same_ring(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.ensure_same_ring(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same_ring(other)?;
        Ok(self * other)
    }

    pub fn checked_eq(&self, other: &Self) -> Result<bool> {
        self.ensure_same_ring(other)?;
        Ok(self == other)
    }

    /// Total order used for canonical forms. Rejects the real ring.
    ///
    /// Integers and residues compare numerically; polynomials by degree and
    /// then coefficient-wise from the leading term down; `Z[2i]` values
    /// lexicographically on `(a, b)`.
    pub fn compare(&self, other: &Self) -> Result<Ordering> {
        self.ensure_same_ring(other)?;
        if !self.ring().is_exact() {
            return Err(Error::InexactRing);
        }
        Ok(self.cmp_exact(other))
    }

    /// [`compare`](Self::compare) without the checks. Panics on mixed or real
    /// operands.
    pub(crate) fn cmp_exact(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => a.cmp(b),
            (Repr::Mod { residue: a, .. }, Repr::Mod { residue: b, .. }) => a.cmp(b),
            (Repr::Poly(a), Repr::Poly(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| a.iter().rev().cmp(b.iter().rev())),
            (Repr::GaussEven { re: a, half_im: b }, Repr::GaussEven { re: c, half_im: d }) => {
                a.cmp(c).then_with(|| b.cmp(d))
            }
            _ => panic!("cmp_exact on {} and {}", self.ring(), other.ring()),
        }
    }

    /// Horner evaluation of a polynomial at an integer, giving a value in `Z`.
    pub fn eval_poly_at(&self, a: &BigInt) -> Result<RingValue> {
        let coeffs = self.poly_coeffs().ok_or(Error::RingMismatch {
            left: RingId::Poly,
            right: self.ring(),
        })?;
        let value = coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * a + c);
        Ok(RingValue::int(value))
    }

    /// Whether `|z| < 2` as a complex number. `None` where the ring has no
    /// fixed embedding in `C` (residues, non-constant polynomials).
    pub fn modulus_below_two(&self) -> Option<bool> {
        match &self.0 {
            Repr::Int(k) => Some(k.abs() < BigInt::from(2)),
            Repr::Poly(c) if c.len() == 1 => Some(c[0].abs() < BigInt::from(2)),
            Repr::GaussEven { re, half_im } => {
                Some(re * re + BigInt::from(4) * half_im * half_im < BigInt::from(4))
            }
            Repr::Real(x) => Some(x.abs() < 2.0),
            _ => None,
        }
    }

    /// Parses `text` in the value grammar of `ring`.
    pub fn parse(ring: RingId, text: &str) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let value = match ring {
            RingId::Int => RingValue::int(cur.integer()?),
            RingId::Mod(n) => RingValue::modular(cur.integer()?, n)?,
            RingId::Poly => RingValue::poly(cur.poly()?),
            RingId::GaussEven => {
                let (re, half_im) = cur.gauss_even()?;
                RingValue::gauss_even(re, half_im)
            }
            RingId::Real => RingValue::real(cur.real()?),
        };
        cur.end()?;
        Ok(value)
    }
}

impl PartialEq for RingValue {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Int(a), Repr::Int(b)) => a == b,
            (
                Repr::Mod {
                    residue: a,
                    modulus: m,
                },
                Repr::Mod {
                    residue: b,
                    modulus: n,
                },
            ) => a == b && m == n,
            (Repr::Poly(a), Repr::Poly(b)) => a == b,
            (Repr::GaussEven { re: a, half_im: b }, Repr::GaussEven { re: c, half_im: d }) => {
                a == c && b == d
            }
            (Repr::Real(a), Repr::Real(b)) => a == b,
            _ => false,
        }
    }
}

// NaN reals break reflexivity; they never appear in exact-ring collections.
impl Eq for RingValue {}

impl Hash for RingValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ring().hash(state);
        match &self.0 {
            Repr::Int(k) => k.hash(state),
            Repr::Mod { residue, .. } => residue.hash(state),
            Repr::Poly(c) => c.hash(state),
            Repr::GaussEven { re, half_im } => {
                re.hash(state);
                half_im.hash(state);
            }
            Repr::Real(x) => (x + 0.0).to_bits().hash(state),
        }
    }
}

fn mismatch(op: &str, a: &RingValue, b: &RingValue) -> ! {
    panic!("{op}: ring mismatch {} vs {}", a.ring(), b.ring())
}

impl Add for &RingValue {
    type Output = RingValue;

    fn add(self, rhs: &RingValue) -> RingValue {
        let repr = match (&self.0, &rhs.0) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a + b),
            (
                Repr::Mod {
                    residue: a,
                    modulus: m,
                },
                Repr::Mod {
                    residue: b,
                    modulus: n,
                },
            ) if m == n => Repr::Mod {
                residue: ((*a as u128 + *b as u128) % *m as u128) as u64,
                modulus: *m,
            },
            (Repr::Poly(a), Repr::Poly(b)) => {
                let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
                let mut out = long.clone();
                for (o, s) in out.iter_mut().zip(short) {
                    *o += s;
                }
                Repr::Poly(trim_poly(out))
            }
            (Repr::GaussEven { re: a, half_im: b }, Repr::GaussEven { re: c, half_im: d }) => {
                Repr::GaussEven {
                    re: a + c,
                    half_im: b + d,
                }
            }
            (Repr::Real(a), Repr::Real(b)) => Repr::Real(a + b),
            _ => mismatch("add", self, rhs),
        };
        RingValue(repr)
    }
}

impl Neg for &RingValue {
    type Output = RingValue;

    fn neg(self) -> RingValue {
        let repr = match &self.0 {
            Repr::Int(a) => Repr::Int(-a),
            Repr::Mod { residue, modulus } => Repr::Mod {
                residue: (modulus - residue) % modulus,
                modulus: *modulus,
            },
            Repr::Poly(c) => Repr::Poly(c.iter().map(|x| -x).collect()),
            Repr::GaussEven { re, half_im } => Repr::GaussEven {
                re: -re,
                half_im: -half_im,
            },
            Repr::Real(x) => Repr::Real(-x),
        };
        RingValue(repr)
    }
}

impl Neg for RingValue {
    type Output = RingValue;

    fn neg(self) -> RingValue {
        -&self
    }
}

impl Sub for &RingValue {
    type Output = RingValue;

    fn sub(self, rhs: &RingValue) -> RingValue {
        self + &(-rhs)
    }
}

impl Mul for &RingValue {
    type Output = RingValue;

    fn mul(self, rhs: &RingValue) -> RingValue {
        let repr = match (&self.0, &rhs.0) {
            (Repr::Int(a), Repr::Int(b)) => Repr::Int(a * b),
            (
                Repr::Mod {
                    residue: a,
                    modulus: m,
                },
                Repr::Mod {
                    residue: b,
                    modulus: n,
                },
            ) if m == n => Repr::Mod {
                residue: ((*a as u128 * *b as u128) % *m as u128) as u64,
                modulus: *m,
            },
            (Repr::Poly(a), Repr::Poly(b)) => {
                let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        out[i + j] += x * y;
                    }
                }
                Repr::Poly(trim_poly(out))
            }
            // (a + 2bi)(c + 2di) = (ac - 4bd) + 2(ad + bc)i
            (Repr::GaussEven { re: a, half_im: b }, Repr::GaussEven { re: c, half_im: d }) => {
                Repr::GaussEven {
                    re: a * c - BigInt::from(4) * b * d,
                    half_im: a * d + b * c,
                }
            }
            (Repr::Real(a), Repr::Real(b)) => Repr::Real(a * b),
            _ => mismatch("mul", self, rhs),
        };
        RingValue(repr)
    }
}

impl fmt::Display for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Int(k) => write!(f, "{k}"),
            Repr::Mod { residue, .. } => write!(f, "{residue}"),
            Repr::Poly(c) => {
                f.write_str("[")?;
                for (i, x) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str("]")
            }
            Repr::GaussEven { re, half_im } => {
                if half_im.is_zero() {
                    write!(f, "{re}")
                } else {
                    let im: BigInt = half_im * 2;
                    let sign = if im.is_negative() { '-' } else { '+' };
                    write!(f, "{re}{sign}{}i", im.abs())
                }
            }
            Repr::Real(x) => write!(f, "{x:?}"),
        }
    }
}

/// Whitespace-insensitive scanner over one value's text.
pub(crate) struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn error(&self, msg: String) -> Error {
        let found = match self.peek_raw() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        Error::parse(self.pos, format!("{msg}, found {found}"))
    }

    fn end(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("unexpected trailing input".into())),
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits".into()));
        }
        Ok(&self.text[start..self.pos])
    }

    fn integer(&mut self) -> Result<BigInt> {
        let negative = self.eat('-');
        let digits = self.digits()?;
        let k: BigInt = digits.parse().expect("ascii digits");
        Ok(if negative { -k } else { k })
    }

    fn poly(&mut self) -> Result<Vec<BigInt>> {
        self.expect('[')?;
        let start = self.pos;
        let mut coeffs = vec![self.integer()?];
        while self.eat(',') {
            coeffs.push(self.integer()?);
        }
        self.expect(']')?;
        if coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            return Err(Error::parse(start, "leading coefficient is zero"));
        }
        Ok(coeffs)
    }

    fn gauss_even(&mut self) -> Result<(BigInt, BigInt)> {
        self.skip_ws();
        let start = self.pos;
        let negative = self.eat('-');
        let first = self.digits()?;
        let first: BigInt = first.parse().expect("ascii digits");
        let first = if negative { -first } else { first };
        // bare imaginary part, e.g. `4i` or `-2i`
        if self.eat('i') {
            return Ok((BigInt::zero(), halve_imaginary(first, start)?));
        }
        let sign = match self.peek() {
            Some('+') => BigInt::one(),
            Some('-') => -BigInt::one(),
            _ => return Ok((first, BigInt::zero())),
        };
        self.pos += 1;
        let im_pos = self.pos;
        let im: BigInt = self.digits()?.parse().expect("ascii digits");
        self.expect('i')?;
        Ok((first, halve_imaginary(sign * im, im_pos)?))
    }

    fn real(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek_raw()
            .is_some_and(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '-' | '+'))
        {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse::<f64>()
            .map_err(|e| Error::parse(start, format!("invalid real: {e}")))
    }
}

fn halve_imaginary(im: BigInt, pos: usize) -> Result<BigInt> {
    if im.is_odd() {
        return Err(Error::parse(
            pos,
            format!("imaginary part {im} is odd; Z[2i] needs an even imaginary part"),
        ));
    }
    Ok(im / 2)
}
