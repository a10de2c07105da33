//! Bounded exhaustive enumeration of λ-quiddities.
//!
//! The search walks prefixes `(a_1, ..., a_{n-2})` depth first, carrying the
//! prefix product `M_{n-2}`. The last two entries are then forced: by
//! [`close_word`] there is at most one pair `(a_{n-1}, a_n)` completing the
//! word to `±Id`, so each leaf costs O(1) ring operations and the search
//! visits `|box|^(n-2)` leaves per size.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ops::{canonical_form, cmp_tuples, is_irreducible};
use crate::quiddity::{close_word, Mat2, QuidditySign, Tuple};
use crate::rings::{RingId, RingValue};

pub const DEFAULT_CEILING: u128 = 100_000_000;

/// The finite box searched by [`enumerate_quiddities`].
///
/// `coeff_bound` limits `|a|` over `Z`, every `|coefficient|` over `Z[X]`,
/// and both the real part and the imaginary part (`2b` for `a + 2bi`) over
/// `Z[2i]`. It is ignored for residues, where every class is searched.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchBounds {
    #[serde(serialize_with = "serialize_ring")]
    pub ring: RingId,
    pub size_min: usize,
    pub size_max: usize,
    pub coeff_bound: u64,
    /// Largest polynomial degree; `Z[X]` only.
    pub degree_bound: usize,
    /// Maximum number of search leaves before giving up.
    pub ceiling: u128,
}

fn serialize_ring<S: serde::Serializer>(ring: &RingId, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(ring)
}

impl SearchBounds {
    pub fn new(ring: RingId, size_min: usize, size_max: usize, coeff_bound: u64) -> Self {
        SearchBounds {
            ring,
            size_min,
            size_max,
            coeff_bound,
            degree_bound: 0,
            ceiling: DEFAULT_CEILING,
        }
    }

    pub fn with_degree(mut self, degree_bound: usize) -> Self {
        self.degree_bound = degree_bound;
        self
    }

    pub fn with_ceiling(mut self, ceiling: u128) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.ring.is_exact() {
            return Err(Error::InexactRing);
        }
        if self.size_min < 2 {
            return Err(Error::InvalidArgument(format!(
                "size_min must be at least 2, got {}",
                self.size_min
            )));
        }
        if self.size_max < self.size_min {
            return Err(Error::InvalidArgument(format!(
                "size_max {} is below size_min {}",
                self.size_max, self.size_min
            )));
        }
        Ok(())
    }

    /// Every ring value in the box, in ascending ring order.
    pub fn values(&self) -> Vec<RingValue> {
        let b = self.coeff_bound as i64;
        let mut out: Vec<RingValue> = match self.ring {
            RingId::Int => (-b..=b).map(RingValue::int).collect(),
            RingId::Mod(n) => (0..n)
                .map(|r| RingValue::modular(r, n).expect("modulus checked"))
                .collect(),
            RingId::Poly => {
                let mut all = vec![Vec::new()];
                for _ in 0..=self.degree_bound {
                    all = all
                        .into_iter()
                        .flat_map(|prefix: Vec<i64>| {
                            (-b..=b).map(move |c| {
                                let mut v = prefix.clone();
                                v.push(c);
                                v
                            })
                        })
                        .collect();
                }
                all.into_iter().map(RingValue::poly).collect()
            }
            RingId::GaussEven => {
                let h = b / 2;
                (-b..=b)
                    .flat_map(|re| (-h..=h).map(move |im| RingValue::gauss_even(re, im)))
                    .collect()
            }
            RingId::Real => Vec::new(),
        };
        out.sort_by(|x, y| x.cmp_exact(y));
        out
    }

    pub fn contains(&self, x: &RingValue) -> bool {
        if x.ring() != self.ring {
            return false;
        }
        let bound = BigInt::from(self.coeff_bound);
        match self.ring {
            RingId::Int => x.as_int().is_some_and(|k| k.abs() <= bound),
            RingId::Mod(_) => true,
            RingId::Poly => x.poly_coeffs().is_some_and(|c| {
                c.len() <= self.degree_bound + 1 && c.iter().all(|k| k.abs() <= bound)
            }),
            RingId::GaussEven => x.gauss_parts().is_some_and(|(re, half_im)| {
                re.abs() <= bound && (half_im * BigInt::from(2)).abs() <= bound
            }),
            RingId::Real => false,
        }
    }

    /// Number of search leaves: `sum over n of |box|^(n-2)`.
    pub fn estimate(&self) -> u128 {
        let width = self.values().len() as u128;
        (self.size_min..=self.size_max)
            .map(|n| width.saturating_pow((n - 2) as u32))
            .fold(0u128, u128::saturating_add)
    }
}

/// How to run the data-parallel parts of a search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is enabled, otherwise the same as
    /// `Sequential`.
    #[default]
    Parallel,
}

pub(crate) fn map_items<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Execution::Parallel {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiddityRecord {
    pub tuple: Tuple,
    pub sign: QuidditySign,
    pub irreducible: bool,
    pub canonical: Tuple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct SizeCount {
    pub total: usize,
    pub irreducible: usize,
}

#[derive(Debug, Clone)]
pub struct EnumerationReport {
    pub bounds: SearchBounds,
    /// Sorted by size, then lexicographically.
    pub quiddities: Vec<QuiddityRecord>,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct RecordLine {
    n: usize,
    tuple: String,
    sign: QuidditySign,
    irreducible: bool,
    canonical: String,
}

#[derive(Serialize)]
struct SizeLine {
    n: usize,
    total: usize,
    irreducible: usize,
}

#[derive(Serialize)]
struct Summary<'a> {
    bounds: &'a SearchBounds,
    sign_ambiguous: bool,
    total: usize,
    irreducible: usize,
    by_size: Vec<SizeLine>,
}

impl EnumerationReport {
    pub fn counts_by_size(&self) -> BTreeMap<usize, SizeCount> {
        let mut counts: BTreeMap<usize, SizeCount> = (self.bounds.size_min..=self.bounds.size_max)
            .map(|n| (n, SizeCount::default()))
            .collect();
        for r in &self.quiddities {
            let c = counts.entry(r.tuple.len()).or_default();
            c.total += 1;
            c.irreducible += r.irreducible as usize;
        }
        counts
    }

    pub fn irreducible(&self) -> impl Iterator<Item = &QuiddityRecord> {
        self.quiddities.iter().filter(|r| r.irreducible)
    }

    pub fn of_size(&self, n: usize) -> impl Iterator<Item = &QuiddityRecord> {
        self.quiddities.iter().filter(move |r| r.tuple.len() == n)
    }

    /// One JSON object per quiddity.
    pub fn record_lines(&self) -> Vec<String> {
        self.quiddities
            .iter()
            .map(|r| {
                serde_json::to_string(&RecordLine {
                    n: r.tuple.len(),
                    tuple: r.tuple.to_string(),
                    sign: r.sign,
                    irreducible: r.irreducible,
                    canonical: r.canonical.to_string(),
                })
                .expect("record serializes")
            })
            .collect()
    }

    /// The closing summary object. Timing is left out so that output is
    /// reproducible byte for byte.
    pub fn summary_json(&self) -> serde_json::Value {
        let counts = self.counts_by_size();
        let summary = Summary {
            bounds: &self.bounds,
            sign_ambiguous: self.bounds.ring.sign_ambiguous(),
            total: self.quiddities.len(),
            irreducible: self.irreducible().count(),
            by_size: counts
                .iter()
                .map(|(&n, c)| SizeLine {
                    n,
                    total: c.total,
                    irreducible: c.irreducible,
                })
                .collect(),
        };
        serde_json::json!({ "summary": summary })
    }

    pub fn text_lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .quiddities
            .iter()
            .map(|r| {
                format!(
                    "{} {} {} {} {}",
                    r.tuple.len(),
                    r.tuple,
                    r.sign,
                    if r.irreducible {
                        "irreducible"
                    } else {
                        "reducible"
                    },
                    r.canonical
                )
            })
            .collect();
        for (n, c) in self.counts_by_size() {
            out.push(format!(
                "# size {n}: {} quiddities, {} irreducible",
                c.total, c.irreducible
            ));
        }
        out.push(format!(
            "# total {} quiddities, {} irreducible",
            self.quiddities.len(),
            self.irreducible().count()
        ));
        out
    }
}

/// Every λ-quiddity inside `bounds`, each with its sign, canonical form and
/// irreducibility verdict.
pub fn enumerate_quiddities(bounds: &SearchBounds) -> Result<EnumerationReport> {
    enumerate_with(bounds, Execution::default())
}

pub fn enumerate_with(bounds: &SearchBounds, exec: Execution) -> Result<EnumerationReport> {
    let start = Instant::now();
    let found = find_quiddities(bounds, exec)?;
    let quiddities = map_items(exec, &found, |(tuple, sign)| QuiddityRecord {
        tuple: tuple.clone(),
        sign: *sign,
        irreducible: is_irreducible(tuple).expect("enumerated tuples are quiddities"),
        canonical: canonical_form(tuple).expect("exact ring"),
    });
    Ok(EnumerationReport {
        bounds: bounds.clone(),
        quiddities,
        elapsed: start.elapsed(),
    })
}

/// The raw search without classification, sorted by size then
/// lexicographically.
pub fn find_quiddities(
    bounds: &SearchBounds,
    exec: Execution,
) -> Result<Vec<(Tuple, QuidditySign)>> {
    bounds.validate()?;
    let estimate = bounds.estimate();
    if estimate > bounds.ceiling {
        return Err(Error::CeilingExceeded {
            estimate,
            ceiling: bounds.ceiling,
        });
    }
    let values = bounds.values();
    let ring = bounds.ring;
    let mut out = Vec::new();
    for n in bounds.size_min..=bounds.size_max {
        if n == 2 {
            leaf(bounds, &Mat2::identity(ring), &[], &mut out);
            continue;
        }
        let per_first = map_items(exec, &values, |first| {
            let mut found = Vec::new();
            let mut prefix = vec![first.clone()];
            let product = Mat2::identity(ring).left_mul_elementary(first);
            descend(bounds, &values, n - 2, &product, &mut prefix, &mut found);
            found
        });
        out.extend(per_first.into_iter().flatten());
    }
    out.sort_by(|a, b| cmp_tuples(&a.0, &b.0));
    Ok(out)
}

fn descend(
    bounds: &SearchBounds,
    values: &[RingValue],
    prefix_len: usize,
    product: &Mat2,
    prefix: &mut Vec<RingValue>,
    out: &mut Vec<(Tuple, QuidditySign)>,
) {
    if prefix.len() == prefix_len {
        leaf(bounds, product, prefix, out);
        return;
    }
    for v in values {
        let next = product.left_mul_elementary(v);
        prefix.push(v.clone());
        descend(bounds, values, prefix_len, &next, prefix, out);
        prefix.pop();
    }
}

fn leaf(
    bounds: &SearchBounds,
    product: &Mat2,
    prefix: &[RingValue],
    out: &mut Vec<(Tuple, QuidditySign)>,
) {
    // E(a_n) E(a_{n-1}) M_{n-2} = ±Id
    if let Some((sign, last, second_last)) = close_word(product) {
        if bounds.contains(&second_last) && bounds.contains(&last) {
            let mut entries = prefix.to_vec();
            entries.push(second_last);
            entries.push(last);
            out.push((Tuple::from_parts(bounds.ring, entries), sign));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(values: &[i64]) -> Tuple {
        Tuple::from_i64s(RingId::Int, values).unwrap()
    }

    fn tuples(report: &EnumerationReport, n: usize) -> Vec<Tuple> {
        report.of_size(n).map(|r| r.tuple.clone()).collect()
    }

    #[test]
    fn size_two_is_only_zero_pair() {
        let r = enumerate_quiddities(&SearchBounds::new(RingId::Int, 2, 2, 5)).unwrap();
        assert_eq!(tuples(&r, 2), vec![z(&[0, 0])]);
        assert!(!r.quiddities[0].irreducible);
    }

    #[test]
    fn size_three() {
        let r = enumerate_quiddities(&SearchBounds::new(RingId::Int, 3, 3, 3)).unwrap();
        assert_eq!(tuples(&r, 3), vec![z(&[-1, -1, -1]), z(&[1, 1, 1])]);
        assert!(r.quiddities.iter().all(|q| q.irreducible));
    }

    #[test]
    fn z_mod_2_size_three() {
        let r = enumerate_quiddities(&SearchBounds::new(RingId::Mod(2), 3, 3, 0)).unwrap();
        let expected = Tuple::from_i64s(RingId::Mod(2), &[1, 1, 1]).unwrap();
        assert_eq!(tuples(&r, 3), vec![expected]);
        assert_eq!(r.quiddities[0].sign, QuidditySign::Plus);
    }

    #[test]
    fn box_membership() {
        let b = SearchBounds::new(RingId::Poly, 2, 4, 1).with_degree(1);
        assert_eq!(b.values().len(), 9);
        assert!(b.contains(&RingValue::poly([-1, 1])));
        assert!(!b.contains(&RingValue::poly([0, 0, 1])));
        assert!(!b.contains(&RingValue::poly([2])));

        let g = SearchBounds::new(RingId::GaussEven, 2, 4, 2);
        assert_eq!(g.values().len(), 15);
        assert!(g.contains(&RingValue::gauss_even(-2, 1)));
        assert!(!g.contains(&RingValue::gauss_even(0, 2)));
    }

    #[test]
    fn bounds_are_validated() {
        assert!(SearchBounds::new(RingId::Int, 1, 3, 1).validate().is_err());
        assert!(SearchBounds::new(RingId::Int, 4, 3, 1).validate().is_err());
        assert_eq!(
            SearchBounds::new(RingId::Real, 2, 3, 1).validate(),
            Err(Error::InexactRing)
        );
    }

    #[test]
    fn ceiling_fails_fast() {
        let b = SearchBounds::new(RingId::Int, 2, 12, 10).with_ceiling(1000);
        match enumerate_quiddities(&b) {
            Err(Error::CeilingExceeded { estimate, ceiling }) => {
                assert_eq!(ceiling, 1000);
                assert!(estimate > 1000);
            }
            other => panic!("expected ceiling error, got {other:?}"),
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let b = SearchBounds::new(RingId::Int, 2, 6, 2);
        let s = enumerate_with(&b, Execution::Sequential).unwrap();
        let p = enumerate_with(&b, Execution::Parallel).unwrap();
        assert_eq!(s.quiddities, p.quiddities);
        assert_eq!(s.record_lines(), p.record_lines());
    }

    #[test]
    fn record_line_layout() {
        let r = enumerate_quiddities(&SearchBounds::new(RingId::Int, 4, 4, 3)).unwrap();
        let lines = r.record_lines();
        assert!(lines.contains(
            &r#"{"n":4,"tuple":"(0,3,0,-3)","sign":"plus","irreducible":true,"canonical":"(-3,0,3,0)"}"#
                .to_string()
        ));
        let summary = r.summary_json().to_string();
        assert!(
            summary.starts_with(r#"{"summary":{"bounds":{"ring":"z""#),
            "{summary}"
        );
    }
}
