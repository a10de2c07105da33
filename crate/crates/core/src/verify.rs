//! Verification suites: each one runs a bounded enumeration (or a sampled
//! property check) and compares against the closed-form families it should
//! reproduce.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::enumerate::{enumerate_with, EnumerationReport, Execution, SearchBounds};
use crate::error::{Error, Result};
use crate::ops::{
    canonical_form, cmp_tuples, decompose, dihedral_orbit, reduce_by_unit, reduce_by_zero, sum,
};
use crate::quiddity::{cos_quiddity, QuidditySign, Tuple};
use crate::rings::{PmOne, RingId, RingValue};

const MAX_LISTED: usize = 20;

/// One named check inside a suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Offending items, capped at a few entries.
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: impl Into<String>, failures: Vec<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: failures.is_empty(),
            detail: detail.into(),
            failures: failures.into_iter().take(MAX_LISTED).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerdictReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub counts: Vec<(String, u64)>,
}

impl VerdictReport {
    fn new(suite: &str) -> Self {
        VerdictReport {
            suite: suite.to_string(),
            checks: Vec::new(),
            counts: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn count(&self, name: &str) -> Option<u64> {
        self.counts.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    fn push_count(&mut self, name: impl Into<String>, value: usize) {
        self.counts.push((name.into(), value as u64));
    }

    pub fn to_json(&self) -> Value {
        let counts: serde_json::Map<String, Value> = self
            .counts
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                    "failures": c.failures,
                })
            })
            .collect();
        json!({
            "verdict": if self.passed() { "pass" } else { "fail" },
            "suite": self.suite,
            "counts": counts,
            "checks": checks,
        })
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{}: {}",
            self.suite,
            if self.passed() { "pass" } else { "fail" }
        )?;
        for (k, v) in &self.counts {
            writeln!(f, "  {k} = {v}")?;
        }
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            )?;
            for x in &c.failures {
                writeln!(f, "      {x}")?;
            }
        }
        Ok(())
    }
}

type TupleSet = BTreeSet<TupleKey>;

/// Orders tuples by the crate's canonical order so that sets print stably.
#[derive(Debug, Clone, PartialEq, Eq)]
struct TupleKey(Tuple);

impl PartialOrd for TupleKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TupleKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        cmp_tuples(&self.0, &other.0)
    }
}

fn set_of<'a>(tuples: impl IntoIterator<Item = &'a Tuple>) -> TupleSet {
    tuples.into_iter().cloned().map(TupleKey).collect()
}

/// Compares two sets, listing what is missing and what is unexpected.
fn set_check(name: &str, found: &TupleSet, expected: &TupleSet) -> Check {
    let mut failures: Vec<String> = expected
        .difference(found)
        .map(|t| format!("missing {}", t.0))
        .collect();
    failures.extend(
        found
            .difference(expected)
            .map(|t| format!("unexpected {}", t.0)),
    );
    Check::new(
        name,
        failures,
        format!("{} found, {} expected", found.len(), expected.len()),
    )
}

fn tuple(ring: RingId, entries: Vec<RingValue>) -> Tuple {
    Tuple::new(ring, entries).expect("non-empty, one ring")
}

/// The size 2–4 solution families in closed form, restricted to a box:
/// `(0,0)`; `(1,1,1)`, `(-1,-1,-1)`; `(-a,b,a,-b)` with `ab = 0` and
/// `(a,b,a,b)` with `ab = 2`.
pub fn small_size_families(bounds: &SearchBounds, n: usize) -> Vec<Tuple> {
    let ring = bounds.ring;
    let zero = ring.zero();
    let two = ring.from_i64(2);
    let in_box = |t: &Tuple| t.entries().iter().all(|x| bounds.contains(x));
    let mut out: Vec<Tuple> = match n {
        2 => vec![tuple(ring, vec![zero.clone(), zero])],
        3 => ring
            .signs()
            .into_iter()
            .map(|e| tuple(ring, vec![e; 3]))
            .collect(),
        4 => {
            let values = bounds.values();
            let mut fam = Vec::new();
            for a in &values {
                for b in &values {
                    let ab = a * b;
                    if ab == zero {
                        fam.push(tuple(ring, vec![-a, b.clone(), a.clone(), -b]));
                    }
                    if ab == two {
                        fam.push(tuple(
                            ring,
                            vec![a.clone(), b.clone(), a.clone(), b.clone()],
                        ));
                    }
                }
            }
            fam
        }
        _ => Vec::new(),
    };
    out.retain(in_box);
    out
}

/// Sizes 2–4 over `Z` and over `Z[X]` (degree ≤ 1), coefficients bounded by
/// `bound`, against the closed-form families.
pub fn verify_small_sizes(bound: u64, exec: Execution) -> Result<VerdictReport> {
    let mut report = VerdictReport::new("prop31");
    for (label, bounds) in [
        ("z", SearchBounds::new(RingId::Int, 2, 4, bound)),
        (
            "zx",
            SearchBounds::new(RingId::Poly, 2, 4, bound).with_degree(1),
        ),
    ] {
        let found = enumerate_with(&bounds, exec)?;
        for n in 2..=4 {
            let got = set_of(found.of_size(n).map(|r| &r.tuple));
            let want = set_of(&small_size_families(&bounds, n));
            report.push_count(format!("{label}_size{n}"), got.len());
            report
                .checks
                .push(set_check(&format!("{label} size {n}"), &got, &want));
        }
    }
    Ok(report)
}

/// Irreducible families over `Z[alpha]`, `alpha` transcendental, restricted
/// to a box: `(1,1,1)`, `(-1,-1,-1)`, `(0,P,0,-P)` and `(P,0,-P,0)` with
/// `P ∉ {1, -1}`.
pub fn irreducible_families(bounds: &SearchBounds) -> Vec<Tuple> {
    let ring = bounds.ring;
    let mut out = Vec::new();
    let sizes = bounds.size_min..=bounds.size_max;
    if sizes.contains(&3) {
        for e in ring.signs() {
            if bounds.contains(&e) {
                out.push(tuple(ring, vec![e; 3]));
            }
        }
    }
    if sizes.contains(&4) {
        let zero = ring.zero();
        for p in bounds.values() {
            if p.is_pm_one() != PmOne::Neither || !bounds.contains(&-&p) {
                continue;
            }
            out.push(tuple(
                ring,
                vec![zero.clone(), p.clone(), zero.clone(), -&p],
            ));
            out.push(tuple(
                ring,
                vec![p.clone(), zero.clone(), -&p, zero.clone()],
            ));
        }
    }
    out
}

fn irreducible_family_suite(
    suite: &str,
    bounds: &SearchBounds,
    exec: Execution,
) -> Result<(VerdictReport, EnumerationReport)> {
    let found = enumerate_with(bounds, exec)?;
    let mut report = VerdictReport::new(suite);
    report.push_count("quiddities", found.quiddities.len());
    report.push_count("irreducible", found.irreducible().count());
    for (n, c) in found.counts_by_size() {
        report.push_count(format!("size{n}"), c.total);
        report.push_count(format!("size{n}_irreducible"), c.irreducible);
    }
    let got = set_of(found.irreducible().map(|r| &r.tuple));
    let want = set_of(&irreducible_families(bounds));
    report
        .checks
        .push(set_check("irreducibles match families", &got, &want));
    let large: Vec<String> = found
        .irreducible()
        .filter(|r| r.tuple.len() >= 5)
        .map(|r| r.tuple.to_string())
        .collect();
    report.checks.push(Check::new(
        "no irreducible of size >= 5",
        large,
        "sizes 5 and up reduce",
    ));
    Ok((report, found))
}

/// Classification over `Z[X]` inside a degree/coefficient box, sizes
/// `3..=size_max`, plus the specialization check at `a ∈ {-2, ..., 2}`.
pub fn verify_zx_irreducibles(
    degree_bound: usize,
    coeff_bound: u64,
    size_max: usize,
    exec: Execution,
) -> Result<VerdictReport> {
    verify_zx_irreducibles_in(
        &SearchBounds::new(RingId::Poly, 3, size_max, coeff_bound).with_degree(degree_bound),
        exec,
    )
}

pub fn verify_zx_irreducibles_in(bounds: &SearchBounds, exec: Execution) -> Result<VerdictReport> {
    if bounds.ring != RingId::Poly {
        return Err(Error::InvalidArgument(format!(
            "theorem25 runs over zx, got {}",
            bounds.ring
        )));
    }
    if bounds.size_max < 4 {
        return Err(Error::InvalidArgument(
            "theorem25 needs size_max >= 4".into(),
        ));
    }
    let (mut report, found) = irreducible_family_suite("theorem25", bounds, exec)?;
    report.checks.push(specialization_check(&found, -2..=2));
    Ok(report)
}

/// Every polynomial quiddity, evaluated at each integer point, is an integer
/// quiddity with the same sign.
pub fn specialization_check(
    report: &EnumerationReport,
    points: std::ops::RangeInclusive<i64>,
) -> Check {
    let mut failures = Vec::new();
    let mut evaluated = 0usize;
    for r in &report.quiddities {
        for a in points.clone() {
            let a = BigInt::from(a);
            let values: Vec<RingValue> = r
                .tuple
                .entries()
                .iter()
                .map(|p| p.eval_poly_at(&a).expect("polynomial entries"))
                .collect();
            let t = tuple(RingId::Int, values);
            evaluated += 1;
            if t.is_quiddity() != Some(r.sign) {
                failures.push(format!("{} at {a} gives {t}", r.tuple));
            }
        }
    }
    Check::new(
        "specialization to Z",
        failures,
        format!(
            "{evaluated} evaluations at {}..={}",
            points.start(),
            points.end()
        ),
    )
}

/// Classification over `Z[2i]` with `|Re| ≤ coeff_bound`, `|Im| ≤ coeff_bound`.
pub fn verify_z2i(coeff_bound: u64, size_max: usize, exec: Execution) -> Result<VerdictReport> {
    if size_max < 4 {
        return Err(Error::InvalidArgument("z2i needs size_max >= 4".into()));
    }
    let bounds = SearchBounds::new(RingId::GaussEven, 3, size_max, coeff_bound);
    Ok(irreducible_family_suite("z2i", &bounds, exec)?.0)
}

/// Every quiddity in the report has two entries of modulus below 2. Over
/// `Z[X]` the tuples are first specialized at `a ∈ {-2, ..., 2}`.
pub fn verify_small_entries(report: &EnumerationReport) -> Result<VerdictReport> {
    let ring = report.bounds.ring;
    if !ring.embeds_in_complex() {
        return Err(Error::InvalidArgument(format!(
            "the modulus bound applies to subrings of C, not {ring}"
        )));
    }
    let mut tuples: Vec<Tuple> = Vec::new();
    if ring == RingId::Poly {
        for r in &report.quiddities {
            for a in -2i64..=2 {
                let a = BigInt::from(a);
                tuples.push(tuple(
                    RingId::Int,
                    r.tuple
                        .entries()
                        .iter()
                        .map(|p| p.eval_poly_at(&a).expect("polynomial entries"))
                        .collect(),
                ));
            }
        }
    } else {
        tuples.extend(report.quiddities.iter().map(|r| r.tuple.clone()));
    }
    let failures: Vec<String> = tuples
        .iter()
        .filter(|t| {
            t.entries()
                .iter()
                .filter(|x| x.modulus_below_two() == Some(true))
                .count()
                < 2
        })
        .map(|t| t.to_string())
        .collect();
    let mut out = VerdictReport::new("cuntz-holm");
    out.push_count("tuples", tuples.len());
    out.checks.push(Check::new(
        "two entries of modulus < 2",
        failures,
        format!("{} tuples over {ring}", tuples.len()),
    ));
    Ok(out)
}

/// For `n = 2..=n_max`: the constant tuple `2cos(π/n)` satisfies
/// `‖M_n + Id‖∞ < tol`; and for `ε = 2 - 2cos(π/n)` the next size `n + 1`
/// gives a solution whose entries all exceed `2 - ε`.
pub fn verify_cos(n_max: usize, tol: f64) -> Result<VerdictReport> {
    if n_max < 2 {
        return Err(Error::TooShort { min: 2, len: n_max });
    }
    let mut report = VerdictReport::new("cos");
    let mut product_failures = Vec::new();
    let mut bound_failures = Vec::new();
    for n in 2..=n_max {
        let t = cos_quiddity(n)?;
        let dist = t
            .word_matrix()
            .distance_to_sign(QuidditySign::Minus)
            .expect("real entries");
        if dist.is_nan() || dist >= tol {
            product_failures.push(format!("n={n}: |M_n + Id| = {dist:e}"));
        }
        let eps = 2.0 - t.entries()[0].as_f64().expect("real");
        let witness = match cos_witness_size(eps) {
            Some(m) => cos_quiddity(m)?,
            None => {
                bound_failures.push(format!("n={n}: eps={eps:e} outside (0, 2]"));
                continue;
            }
        };
        let entry = witness.entries()[0].as_f64().expect("real");
        let witness_ok = witness.is_quiddity_approx(tol)? == Some(QuidditySign::Minus);
        if !(entry > 2.0 - eps && witness_ok) {
            bound_failures.push(format!(
                "n={n}: eps={eps:e}, witness of size {} has entry {entry}",
                witness.len()
            ));
        }
    }
    report.push_count("sizes", n_max - 1);
    report.checks.push(Check::new(
        "constant tuple solves M_n = -Id",
        product_failures,
        format!("tolerance {tol:e}"),
    ));
    report.checks.push(Check::new(
        "entries exceed 2 - eps",
        bound_failures,
        "eps = 2 - 2cos(pi/n); witness is the smallest constant solution beating 2 - eps",
    ));
    Ok(report)
}

/// Structural properties of an integer enumeration: sizes-3 irreducibility,
/// the `±1` / `0` reduction criteria with re-verified witnesses, and the
/// size-4 reducible shape.
pub fn reduction_checks(report: &EnumerationReport) -> Vec<Check> {
    let mut size3 = Vec::new();
    let mut size4 = Vec::new();
    let mut unit = Vec::new();
    let mut zero = Vec::new();
    for r in &report.quiddities {
        let t = &r.tuple;
        let n = t.len();
        let units: Vec<usize> = (0..n)
            .filter(|&i| t.entries()[i].is_pm_one() != PmOne::Neither)
            .collect();
        let zeros: Vec<usize> = (0..n).filter(|&i| t.entries()[i].is_zero()).collect();
        if n == 3 && !r.irreducible {
            size3.push(t.to_string());
        }
        if n == 4 && !r.irreducible && units.is_empty() {
            size4.push(t.to_string());
        }
        if n >= 4 {
            for &i in &units {
                let ok = !r.irreducible
                    && reduce_by_unit(t, i).is_ok_and(|w| w.verifies(t))
                    && decompose(t).ok().flatten().is_some_and(|w| w.verifies(t));
                if !ok {
                    unit.push(format!("{t} at {i}"));
                }
            }
        }
        if n >= 5 {
            for &i in &zeros {
                let ok = !r.irreducible && reduce_by_zero(t, i).is_ok_and(|w| w.verifies(t));
                if !ok {
                    zero.push(format!("{t} at {i}"));
                }
            }
        }
    }
    vec![
        Check::new(
            "size 3 irreducible",
            size3,
            "no split of a 3-tuple has both parts >= 3",
        ),
        Check::new("reducible size 4 contains +-1", size4, ""),
        Check::new(
            "+-1 entry reduces (n >= 4)",
            unit,
            "reduce_by_unit witness re-verified",
        ),
        Check::new(
            "0 entry reduces (n >= 5)",
            zero,
            "reduce_by_zero witness re-verified",
        ),
    ]
}

/// Orbits inside the report: every image of a quiddity is listed with the
/// same sign, canonical form and verdict.
pub fn orbit_checks(report: &EnumerationReport) -> Check {
    use std::collections::HashMap;
    let index: HashMap<&Tuple, usize> = report
        .quiddities
        .iter()
        .enumerate()
        .map(|(i, r)| (&r.tuple, i))
        .collect();
    let mut failures = Vec::new();
    for r in &report.quiddities {
        for (_, image) in dihedral_orbit(&r.tuple) {
            match index.get(&image).map(|&i| &report.quiddities[i]) {
                Some(o)
                    if o.sign == r.sign
                        && o.irreducible == r.irreducible
                        && o.canonical == r.canonical => {}
                Some(_) => failures.push(format!("{} vs {image}: labels differ", r.tuple)),
                None => failures.push(format!("{image} (image of {}) missing", r.tuple)),
            }
        }
    }
    Check::new(
        "dihedral closure",
        failures,
        format!("{} records", report.quiddities.len()),
    )
}

fn random_int_tuple(rng: &mut ChaCha8Rng, len: usize, bound: i64) -> Tuple {
    let v: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
    Tuple::from_i64s(RingId::Int, &v).expect("non-empty")
}

fn random_poly_tuple(rng: &mut ChaCha8Rng, len: usize, degree: usize, bound: i64) -> Tuple {
    tuple(
        RingId::Poly,
        (0..len)
            .map(|_| RingValue::poly((0..=degree).map(|_| rng.gen_range(-bound..=bound))))
            .collect(),
    )
}

/// Continuant identity on random tuples: `int_samples` over `Z` (entries in
/// `[-9, 9]`, lengths 2–8) and `poly_samples` over `Z[X]` (degree ≤ 2).
pub fn continuant_check(seed: u64, int_samples: usize, poly_samples: usize) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..int_samples {
        let len = rng.gen_range(2..=8);
        let t = random_int_tuple(&mut rng, len, 9);
        if !t.continuant_identity_holds() {
            failures.push(t.to_string());
        }
    }
    for _ in 0..poly_samples {
        let len = rng.gen_range(2..=8);
        let t = random_poly_tuple(&mut rng, len, 2, 3);
        if !t.continuant_identity_holds() {
            failures.push(t.to_string());
        }
    }
    Check::new(
        "continuant identity",
        failures,
        format!("{int_samples} integer and {poly_samples} polynomial tuples"),
    )
}

/// `a ⊕ b` is a quiddity exactly when `a` is, for `b` drawn from `quiddities`.
/// Half of the left operands are drawn from `quiddities` too.
pub fn sum_property_check(seed: u64, samples: usize, quiddities: &[Tuple]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let usable: Vec<&Tuple> = quiddities.iter().filter(|t| t.len() >= 2).collect();
    let mut failures = Vec::new();
    let mut positives = 0usize;
    if usable.is_empty() {
        return Check::new(
            "sum preserves quiddity iff left does",
            vec!["no quiddities supplied".into()],
            "",
        );
    }
    for _ in 0..samples {
        let b = usable[rng.gen_range(0..usable.len())];
        let a = if rng.gen_bool(0.5) {
            usable[rng.gen_range(0..usable.len())].clone()
        } else {
            let len = rng.gen_range(2..=6);
            random_int_tuple(&mut rng, len, 3)
        };
        let left = a.is_quiddity().is_some();
        positives += left as usize;
        let s = sum(&a, b).expect("same ring, sizes >= 2");
        if s.is_quiddity().is_some() != left {
            failures.push(format!("{a} + {b} = {s}"));
        }
    }
    Check::new(
        "sum preserves quiddity iff left does",
        failures,
        format!("{samples} pairs, {positives} with a quiddity on the left"),
    )
}

/// Sampled and exhaustive structural properties over `Z`.
pub fn verify_properties(seed: u64, samples: usize, exec: Execution) -> Result<VerdictReport> {
    let mut report = VerdictReport::new("properties");
    let found = enumerate_with(&SearchBounds::new(RingId::Int, 2, 6, 3), exec)?;
    report.push_count("quiddities", found.quiddities.len());
    report
        .checks
        .push(continuant_check(seed, samples, samples / 10));
    let tuples: Vec<Tuple> = found.quiddities.iter().map(|r| r.tuple.clone()).collect();
    report.checks.push(sum_property_check(
        seed.wrapping_add(1),
        samples / 10,
        &tuples,
    ));
    report.checks.extend(reduction_checks(&found));
    report.checks.push(orbit_checks(&found));
    let canon: Vec<String> = found
        .quiddities
        .iter()
        .filter(|r| canonical_form(&r.canonical).as_ref() != Ok(&r.canonical))
        .map(|r| r.tuple.to_string())
        .collect();
    report
        .checks
        .push(Check::new("canonical form idempotent", canon, ""));
    report.checks.extend(verify_small_entries(&found)?.checks);
    Ok(report)
}

/// Smallest `n` with `2cos(π/n) > 2 - eps`, for `eps ∈ (0, 2]`.
pub fn cos_witness_size(eps: f64) -> Option<usize> {
    if !(eps > 0.0 && eps <= 2.0) {
        return None;
    }
    (2..).find(|&n| 2.0 * (std::f64::consts::PI / n as f64).cos() > 2.0 - eps)
}
