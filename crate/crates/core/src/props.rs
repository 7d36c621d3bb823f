//! Desk-scale checkers for tract-level properties.
//!
//! The properties are universally quantified over the carrier, so for
//! infinite instances (phase, layered) every checker works over an explicit
//! finite sample and records that bound in its verdict. For finite carriers
//! the default sample is the whole carrier. Witness selection is
//! deterministic: the first violation in lexicographic enumeration order of
//! the sample, regardless of how the search is parallelized.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::tract::{FormalSum, GroupElem, TractDescriptor, TractKind, TractValue};
use crate::turn::Turn;

/// Outcome of a property check. `witness` is present exactly when the
/// property fails and can be re-checked by re-running the violated clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyVerdict {
    pub holds: bool,
    pub witness: Option<Vec<TractValue>>,
    /// Human-readable description of the sample the check was bounded to.
    pub domain: String,
}

impl PropertyVerdict {
    fn pass(domain: String) -> PropertyVerdict {
        PropertyVerdict { holds: true, witness: None, domain }
    }

    fn fail(domain: String, witness: Vec<TractValue>) -> PropertyVerdict {
        PropertyVerdict { holds: false, witness: Some(witness), domain }
    }
}

/// How to build a value sample for a property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleSpec {
    /// The full carrier; only available for finite instances.
    Full,
    /// The `n`-th roots of unity (phase only).
    Roots(u32),
    /// Base carrier crossed with a window of layers (layered only).
    Layers { lo: i64, hi: i64 },
    /// An explicit list of nonzero values.
    Values(Vec<TractValue>),
}

impl SampleSpec {
    /// Parses the CLI form: `full`, `roots:24`, `layers:-3..3`, or
    /// `values:v1,v2,...`.
    pub fn parse(s: &str) -> Result<SampleSpec> {
        if s == "full" {
            return Ok(SampleSpec::Full);
        }
        if let Some(n) = s.strip_prefix("roots:") {
            let n: u32 = n
                .parse()
                .map_err(|_| Error::Parse(format!("bad root count in sample spec {s:?}")))?;
            if n == 0 {
                return Err(Error::Parse("sample needs at least one root".into()));
            }
            return Ok(SampleSpec::Roots(n));
        }
        if let Some(range) = s.strip_prefix("layers:") {
            let (lo, hi) = range
                .split_once("..")
                .ok_or_else(|| Error::Parse(format!("bad layer range in sample spec {s:?}")))?;
            let lo: i64 = lo
                .parse()
                .map_err(|_| Error::Parse(format!("bad lower layer in {s:?}")))?;
            let hi: i64 = hi
                .parse()
                .map_err(|_| Error::Parse(format!("bad upper layer in {s:?}")))?;
            if lo > hi {
                return Err(Error::Parse("empty layer window".into()));
            }
            return Ok(SampleSpec::Layers { lo, hi });
        }
        Err(Error::Parse(format!("unknown sample spec {s:?}")))
    }

    /// The default bound per instance: full carriers for finite instances,
    /// 24th roots for phase, layers -3..3 for layered.
    pub fn default_for(desc: &TractDescriptor) -> SampleSpec {
        match desc.kind() {
            TractKind::Phase => SampleSpec::Roots(24),
            TractKind::Layered(_) => SampleSpec::Layers { lo: -3, hi: 3 },
            _ => SampleSpec::Full,
        }
    }
}

/// Materializes a sample as a list of nonzero elements in deterministic order.
pub fn build_sample(desc: &TractDescriptor, spec: &SampleSpec) -> Result<Vec<GroupElem>> {
    match spec {
        SampleSpec::Full => desc.carrier().ok_or_else(|| {
            Error::Domain(format!("{desc} has an infinite carrier; pass an explicit sample"))
        }),
        SampleSpec::Roots(n) => {
            if !matches!(desc.kind(), TractKind::Phase) {
                return Err(Error::Domain(format!("roots sample only applies to phase, not {desc}")));
            }
            Ok((0..*n)
                .map(|k| GroupElem::Phase(Turn::new(k as i64, *n as i64).unwrap()))
                .collect())
        }
        SampleSpec::Layers { lo, hi } => {
            let base = desc.base().ok_or_else(|| {
                Error::Domain(format!("layer sample only applies to layered tracts, not {desc}"))
            })?;
            let carrier = base
                .carrier()
                .ok_or_else(|| Error::Domain("layered base must be finite".into()))?;
            let mut out = Vec::new();
            for layer in *lo..=*hi {
                for b in &carrier {
                    out.push(GroupElem::Layered { base: Box::new(b.clone()), layer });
                }
            }
            Ok(out)
        }
        SampleSpec::Values(vals) => {
            let mut out = Vec::new();
            for v in vals {
                desc.check_value(v)?;
                match v {
                    TractValue::Zero => {
                        return Err(Error::Domain("samples contain nonzero values only".into()))
                    }
                    TractValue::NonZero(g) => out.push(g.clone()),
                }
            }
            Ok(out)
        }
    }
}

fn domain_label(desc: &TractDescriptor, sample: &[GroupElem]) -> String {
    format!("{desc}, sample of {} nonzero values", sample.len())
}

fn nz(g: &GroupElem) -> TractValue {
    TractValue::NonZero(g.clone())
}

/// Whether `a ⊞ b` is a singleton, decided by case analysis per instance
/// rather than enumeration of the carrier where the carrier is infinite.
fn hypersum_is_singleton(desc: &TractDescriptor, a: &GroupElem, b: &GroupElem) -> Result<bool> {
    match desc.kind() {
        TractKind::Phase => {
            let (s, t) = match (a, b) {
                (GroupElem::Phase(s), GroupElem::Phase(t)) => (s, t),
                _ => return Err(mismatch(desc, a)),
            };
            // x ⊞ x = {x}; x ⊞ -x has three members; anything else is an
            // open arc.
            Ok(s == t)
        }
        TractKind::Layered(_) => {
            let (ra, ka, rb, kb) = match (a, b) {
                (
                    GroupElem::Layered { base: ra, layer: ka },
                    GroupElem::Layered { base: rb, layer: kb },
                ) => (ra, ka, rb, kb),
                _ => return Err(mismatch(desc, a)),
            };
            if ka != kb {
                return Ok(true);
            }
            let base = desc.base().expect("layered descriptor has a base");
            let quot = base.mul(&nz(&base.inv_elem(ra)), &nz(rb))?;
            let one = base.one();
            // 0 inside the base sum triggers lower-layer absorption, which is
            // never a singleton.
            if base.hypersum_contains(&[one.clone(), quot.clone()], &TractValue::Zero)? {
                return Ok(false);
            }
            count_members_finite(&base, &[one, quot], 2).map(|n| n == 1)
        }
        _ => count_members_finite(desc, &[nz(a), nz(b)], 2).map(|n| n == 1),
    }
}

fn mismatch(desc: &TractDescriptor, g: &GroupElem) -> Error {
    Error::TractMismatch { expected: desc.to_string(), found: format!("{g:?}") }
}

/// Counts members of an iterated hypersum over a finite carrier, stopping at
/// `cap`.
fn count_members_finite(
    desc: &TractDescriptor,
    elements: &[TractValue],
    cap: usize,
) -> Result<usize> {
    let carrier = desc
        .carrier()
        .ok_or_else(|| Error::Domain(format!("{desc} carrier is not finite")))?;
    let mut count = 0;
    if desc.hypersum_contains(elements, &TractValue::Zero)? {
        count += 1;
    }
    for g in carrier {
        if count > cap {
            break;
        }
        if desc.hypersum_contains(elements, &nz(&g))? {
            count += 1;
        }
    }
    Ok(count)
}

/// `a ⊞ b` is a singleton whenever `a != -b`.
pub fn check_stringent(desc: &TractDescriptor, sample: &[GroupElem]) -> Result<PropertyVerdict> {
    let domain = domain_label(desc, sample);
    for a in sample {
        let minus_a = desc.neg(&nz(a))?;
        for b in sample {
            if nz(b) == minus_a {
                continue;
            }
            if !hypersum_is_singleton(desc, a, b)? {
                return Ok(PropertyVerdict::fail(domain, vec![nz(a), nz(b)]));
            }
        }
    }
    Ok(PropertyVerdict::pass(domain))
}

/// Checks one Pathetic Cancellation instance: all eight hypotheses on the
/// quintuple `(a, b, x, y, z)` of nonzero values.
pub fn pc_hypotheses_hold(
    desc: &TractDescriptor,
    a: &TractValue,
    b: &TractValue,
    x: &TractValue,
    y: &TractValue,
    z: &TractValue,
) -> Result<bool> {
    let one = desc.one();
    let minus_one = desc.epsilon();
    let null3 = |u: &TractValue, v: &TractValue, w: &TractValue| -> Result<bool> {
        desc.is_null(&FormalSum::from_values(vec![
            u.clone(),
            v.clone(),
            desc.neg(w)?,
        ]))
    };
    // 1 + a - x ∈ N_G and ax = xa
    if !null3(&one, a, x)? || desc.mul(a, x)? != desc.mul(x, a)? {
        return Ok(false);
    }
    // -1 + b - y ∈ N_G and by = yb
    if !null3(&minus_one, b, y)? || desc.mul(b, y)? != desc.mul(y, b)? {
        return Ok(false);
    }
    // a + b - z ∈ N_G and a⁻¹zb⁻¹ = b⁻¹za⁻¹
    let ai = desc.inv(a)?;
    let bi = desc.inv(b)?;
    if !null3(a, b, z)?
        || desc.mul(&desc.mul(&ai, z)?, &bi)? != desc.mul(&desc.mul(&bi, z)?, &ai)?
    {
        return Ok(false);
    }
    // x + y - z ∈ N_G and x⁻¹zy⁻¹ = y⁻¹zx⁻¹
    let xi = desc.inv(x)?;
    let yi = desc.inv(y)?;
    if !null3(x, y, z)?
        || desc.mul(&desc.mul(&xi, z)?, &yi)? != desc.mul(&desc.mul(&yi, z)?, &xi)?
    {
        return Ok(false);
    }
    Ok(true)
}

/// The conclusion of Pathetic Cancellation: `xb - ay - z ∈ N_G`.
pub fn pc_conclusion_holds(
    desc: &TractDescriptor,
    a: &TractValue,
    b: &TractValue,
    x: &TractValue,
    y: &TractValue,
    z: &TractValue,
) -> Result<bool> {
    let xb = desc.mul(x, b)?;
    let ay = desc.mul(a, y)?;
    desc.is_null(&FormalSum::from_values(vec![
        xb,
        desc.neg(&ay)?,
        desc.neg(z)?,
    ]))
}

/// Enumerates quintuples from the sample satisfying the eight hypotheses and
/// checks the cancellation conclusion on each.
pub fn check_pathetic_cancellation(
    desc: &TractDescriptor,
    sample: &[GroupElem],
) -> Result<PropertyVerdict> {
    let domain = domain_label(desc, sample);
    let witness = (0..sample.len())
        .into_par_iter()
        .map(|ai| pc_scan_a(desc, sample, ai))
        .find_map_first(|r| r.transpose())
        .transpose()?;
    Ok(match witness {
        Some(w) => PropertyVerdict::fail(domain, w),
        None => PropertyVerdict::pass(domain),
    })
}

fn pc_scan_a(
    desc: &TractDescriptor,
    sample: &[GroupElem],
    ai: usize,
) -> Result<Option<Vec<TractValue>>> {
    let one = desc.one();
    let minus_one = desc.epsilon();
    let a = nz(&sample[ai]);
    // Pre-filter the x and z partners of a and, per b, of y and z: the
    // conditions factor, so the scan visits quintuples in lexicographic
    // (a, b, x, y, z) order without re-testing the shared hypotheses.
    let xs: Vec<TractValue> = sample
        .iter()
        .map(nz)
        .filter(|x| {
            desc.is_null(&FormalSum::from_values(vec![
                one.clone(),
                a.clone(),
                desc.neg(x).unwrap(),
            ]))
            .unwrap()
                && desc.mul(&a, x).unwrap() == desc.mul(x, &a).unwrap()
        })
        .collect();
    if xs.is_empty() {
        return Ok(None);
    }
    for b in sample.iter().map(nz) {
        let ys: Vec<TractValue> = sample
            .iter()
            .map(nz)
            .filter(|y| {
                desc.is_null(&FormalSum::from_values(vec![
                    minus_one.clone(),
                    b.clone(),
                    desc.neg(y).unwrap(),
                ]))
                .unwrap()
                    && desc.mul(&b, y).unwrap() == desc.mul(y, &b).unwrap()
            })
            .collect();
        if ys.is_empty() {
            continue;
        }
        for x in &xs {
            for y in &ys {
                for z in sample.iter().map(nz) {
                    if !pc_hypotheses_hold(desc, &a, &b, x, y, &z)? {
                        continue;
                    }
                    if !pc_conclusion_holds(desc, &a, &b, x, y, &z)? {
                        return Ok(Some(vec![a.clone(), b.clone(), x.clone(), y.clone(), z]));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Candidate values for membership quantification: the sample itself, the
/// structurally critical values derived from `seeds` (endpoints of the arcs
/// involved, for phase; a covering layer window, for layered), and zero.
fn membership_candidates(
    desc: &TractDescriptor,
    sample: &[GroupElem],
    seeds: &[GroupElem],
) -> Vec<TractValue> {
    let mut out: Vec<TractValue> = vec![TractValue::Zero];
    match desc.kind() {
        TractKind::Phase => {
            let mut turns: Vec<Turn> = Vec::new();
            for g in sample.iter().chain(seeds) {
                if let GroupElem::Phase(t) = g {
                    turns.push(*t);
                    turns.push(t.antipode());
                }
            }
            turns.sort();
            turns.dedup();
            let mids: Vec<Turn> = (0..turns.len())
                .map(|i| turns[i].ccw_midpoint(&turns[(i + 1) % turns.len()]))
                .collect();
            turns.extend(mids);
            turns.sort();
            turns.dedup();
            out.extend(turns.into_iter().map(|t| TractValue::NonZero(GroupElem::Phase(t))));
        }
        TractKind::Layered(_) => {
            let base = desc.base().expect("layered descriptor has a base");
            let carrier = base.carrier().expect("layered base is finite");
            let layers: Vec<i64> = sample
                .iter()
                .chain(seeds)
                .filter_map(|g| match g {
                    GroupElem::Layered { layer, .. } => Some(*layer),
                    _ => None,
                })
                .collect();
            let lo = layers.iter().min().copied().unwrap_or(0) - 1;
            let hi = layers.iter().max().copied().unwrap_or(0) + 1;
            for layer in lo..=hi {
                for b in &carrier {
                    out.push(TractValue::NonZero(GroupElem::Layered {
                        base: Box::new(b.clone()),
                        layer,
                    }));
                }
            }
        }
        _ => {
            let carrier = desc.carrier().expect("finite carrier");
            out.extend(carrier.into_iter().map(TractValue::NonZero));
        }
    }
    out
}

/// Strong Pathetic Cancellation: `(x ⊞ y) ∩ (a ⊞ b) ⊆ xb ⊞ -ay` for all
/// sampled `a, b` and all sampled `x ∈ 1 ⊞ a`, `y ∈ -1 ⊞ b`; additionally
/// verifies the four-term identity `1 ⊞ -1 ⊞ 1 ⊞ -1 = 1 ⊞ -1` by membership.
pub fn check_strong_pc(desc: &TractDescriptor, sample: &[GroupElem]) -> Result<PropertyVerdict> {
    let domain = domain_label(desc, sample);
    if let Some(w) = check_pp_multi(desc, sample)?.witness {
        return Ok(PropertyVerdict::fail(domain, w));
    }
    let one = desc.one();
    let minus_one = desc.epsilon();
    let witness = (0..sample.len())
        .into_par_iter()
        .map(|ai| -> Result<Option<Vec<TractValue>>> {
            let a = nz(&sample[ai]);
            for b in sample.iter().map(nz) {
                for x in sample.iter().map(nz) {
                    if !desc.hypersum_contains(&[one.clone(), a.clone()], &x)? {
                        continue;
                    }
                    for y in sample.iter().map(nz) {
                        if !desc.hypersum_contains(&[minus_one.clone(), b.clone()], &y)? {
                            continue;
                        }
                        let xb = desc.mul(&x, &b)?;
                        let neg_ay = desc.neg(&desc.mul(&a, &y)?)?;
                        let seeds: Vec<GroupElem> = [&a, &b, &x, &y, &xb, &neg_ay]
                            .iter()
                            .filter_map(|v| v.group().cloned())
                            .collect();
                        for z in membership_candidates(desc, sample, &seeds) {
                            if desc.hypersum_contains(&[x.clone(), y.clone()], &z)?
                                && desc.hypersum_contains(&[a.clone(), b.clone()], &z)?
                                && !desc.hypersum_contains(&[xb.clone(), neg_ay.clone()], &z)?
                            {
                                return Ok(Some(vec![a.clone(), b, x, y, z]));
                            }
                        }
                    }
                }
            }
            Ok(None)
        })
        .find_map_first(|r| r.transpose())
        .transpose()?;
    Ok(match witness {
        Some(w) => PropertyVerdict::fail(domain, w),
        None => PropertyVerdict::pass(domain),
    })
}

/// The set identity `1 ⊞ -1 ⊞ 1 ⊞ -1 = 1 ⊞ -1`, decided by two-sided
/// membership over the sample plus critical values.
pub fn check_pp_multi(desc: &TractDescriptor, sample: &[GroupElem]) -> Result<PropertyVerdict> {
    let domain = domain_label(desc, sample);
    let one = desc.one();
    let minus_one = desc.epsilon();
    let seeds: Vec<GroupElem> = [&one, &minus_one]
        .iter()
        .filter_map(|v| v.group().cloned())
        .collect();
    let four = [one.clone(), minus_one.clone(), one.clone(), minus_one.clone()];
    let two = [one.clone(), minus_one.clone()];
    for z in membership_candidates(desc, sample, &seeds) {
        if desc.hypersum_contains(&four, &z)? != desc.hypersum_contains(&two, &z)? {
            return Ok(PropertyVerdict::fail(domain, vec![z]));
        }
    }
    Ok(PropertyVerdict::pass(domain))
}

/// Double distributivity: `(a ⊞ b)(c ⊞ d) = ac ⊞ ad ⊞ bc ⊞ bd` as sets, for
/// all sampled quadruples.
pub fn check_doubly_distributive(
    desc: &TractDescriptor,
    sample: &[GroupElem],
) -> Result<PropertyVerdict> {
    let domain = domain_label(desc, sample);
    let witness = (0..sample.len())
        .into_par_iter()
        .map(|ai| -> Result<Option<Vec<TractValue>>> {
            let a = nz(&sample[ai]);
            for b in sample.iter().map(nz) {
                for c in sample.iter().map(nz) {
                    for d in sample.iter().map(nz) {
                        if let Some(z) = dd_violation(desc, sample, &a, &b, &c, &d)? {
                            return Ok(Some(vec![a.clone(), b, c, d, z]));
                        }
                    }
                }
            }
            Ok(None)
        })
        .find_map_first(|r| r.transpose())
        .transpose()?;
    Ok(match witness {
        Some(w) => PropertyVerdict::fail(domain, w),
        None => PropertyVerdict::pass(domain),
    })
}

fn dd_violation(
    desc: &TractDescriptor,
    sample: &[GroupElem],
    a: &TractValue,
    b: &TractValue,
    c: &TractValue,
    d: &TractValue,
) -> Result<Option<TractValue>> {
    let products = [
        desc.mul(a, c)?,
        desc.mul(a, d)?,
        desc.mul(b, c)?,
        desc.mul(b, d)?,
    ];
    let mut seeds: Vec<GroupElem> =
        [a, b, c, d].iter().filter_map(|v| v.group().cloned()).collect();
    for p in &products {
        if let Some(g) = p.group() {
            seeds.push(g.clone());
            seeds.push(desc.neg(p)?.group().cloned().unwrap());
        }
    }
    for z in membership_candidates(desc, sample, &seeds) {
        let lhs = product_set_contains(desc, sample, a, b, c, d, &z)?;
        let rhs = desc.hypersum_contains(&products, &z)?;
        if lhs != rhs {
            return Ok(Some(z));
        }
    }
    Ok(None)
}

/// Membership of `z` in the product set `(a ⊞ b)(c ⊞ d)`.
fn product_set_contains(
    desc: &TractDescriptor,
    sample: &[GroupElem],
    a: &TractValue,
    b: &TractValue,
    c: &TractValue,
    d: &TractValue,
    z: &TractValue,
) -> Result<bool> {
    if z.is_zero() {
        let left = desc.hypersum_contains(&[a.clone(), b.clone()], &TractValue::Zero)?;
        let right = desc.hypersum_contains(&[c.clone(), d.clone()], &TractValue::Zero)?;
        return Ok(left || right);
    }
    let mut seeds: Vec<GroupElem> =
        [a, b].iter().filter_map(|v| v.group().cloned()).collect();
    for e in [c, d] {
        if let Some(g) = e.group() {
            let q = desc.mul(z, &desc.inv(&nz(g))?)?;
            seeds.extend(q.group().cloned());
        }
    }
    for u in membership_candidates(desc, sample, &seeds) {
        if u.is_zero() {
            continue;
        }
        if desc.hypersum_contains(&[a.clone(), b.clone()], &u)? {
            let quotient = desc.mul(&desc.inv(&u)?, z)?;
            if desc.hypersum_contains(&[c.clone(), d.clone()], &quotient)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
