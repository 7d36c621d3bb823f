//! Deletion, contraction, rescaling, and the induced cocircuit maps.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extension::Localization;
use crate::matroid::{canonicalize, Chirality, TMatroid};
use crate::qp::{BasisFamily, QuasiPlucker};
use crate::tract::{TractDescriptor, TractValue};
use crate::tvec::{GroundSet, TVector};

/// Restricts a vector to the labels not in `drop`, on a fresh ground set.
fn restrict(v: &TVector, drop: &BTreeSet<usize>, ground: &Arc<GroundSet>) -> TVector {
    let entries: Vec<TractValue> = v
        .entries()
        .iter()
        .enumerate()
        .filter(|(i, _)| !drop.contains(i))
        .map(|(_, val)| val.clone())
        .collect();
    TVector::new(ground.clone(), entries).expect("restriction matches the ground set")
}

/// The minor `(M \ A) / B` for disjoint label sets `A` (deleted) and `B`
/// (contracted): circuits avoiding `A` are restricted, restrictions of the
/// rest are taken with minimal support.
pub fn minor(m: &TMatroid, delete: &[&str], contract: &[&str]) -> Result<TMatroid> {
    let ground = m.ground();
    let mut del = BTreeSet::new();
    for label in delete {
        del.insert(ground.index_of(label)?);
    }
    let mut con = BTreeSet::new();
    for label in contract {
        let i = ground.index_of(label)?;
        if del.contains(&i) {
            return Err(Error::Ground(format!(
                "label {label:?} both deleted and contracted"
            )));
        }
        con.insert(i);
    }
    minor_by_index(m, &del, &con)
}

pub(crate) fn minor_by_index(
    m: &TMatroid,
    delete: &BTreeSet<usize>,
    contract: &BTreeSet<usize>,
) -> Result<TMatroid> {
    let ground = m.ground();
    let dropped: BTreeSet<usize> = delete.union(contract).cloned().collect();
    let kept: Vec<String> = ground
        .labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| !dropped.contains(i))
        .map(|(_, l)| l.clone())
        .collect();
    if kept.is_empty() {
        return Err(Error::Ground("minor would have an empty ground set".into()));
    }
    let new_ground = GroundSet::new(kept)?;

    // Deletion keeps circuits avoiding A; contraction then restricts and
    // takes minimal supports among the nonzero restrictions.
    let mut restricted: Vec<TVector> = Vec::new();
    for c in m.circuits() {
        if c.support().intersection(delete).next().is_some() {
            continue;
        }
        let r = restrict(c, &dropped, &new_ground);
        if !r.is_zero() {
            restricted.push(r);
        }
    }
    let supports: Vec<BTreeSet<usize>> = restricted.iter().map(TVector::support).collect();
    let minimal: Vec<TVector> = restricted
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            !supports
                .iter()
                .enumerate()
                .any(|(j, s)| j != *i && s.is_subset(&supports[*i]) && s != &supports[*i])
        })
        .map(|(_, v)| v.clone())
        .collect();
    TMatroid::new(m.tract().clone(), m.chirality(), new_ground, minimal)
}

/// A total map `E -> T^×` used for rescaling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RescalingMap {
    values: Vec<TractValue>,
}

impl RescalingMap {
    pub fn new(ground: &GroundSet, values: Vec<TractValue>) -> Result<RescalingMap> {
        if values.len() != ground.len() {
            return Err(Error::Ground("rescaling map must be total".into()));
        }
        if values.iter().any(TractValue::is_zero) {
            return Err(Error::Domain("rescaling values must be nonzero".into()));
        }
        Ok(RescalingMap { values })
    }

    pub fn identity(desc: &TractDescriptor, ground: &GroundSet) -> RescalingMap {
        RescalingMap { values: vec![desc.one(); ground.len()] }
    }

    pub fn value(&self, i: usize) -> &TractValue {
        &self.values[i]
    }
}

/// Rescales a matroid: circuits become `X·ρ^{-1}` (left matroids) or
/// `ρ^{-1}·X` (right matroids), so that cocircuits rescale to `ρ·Y`
/// respectively `Y·ρ`. The underlying matroid is unchanged.
pub fn rescale(m: &TMatroid, rho: &RescalingMap) -> Result<TMatroid> {
    let desc = m.tract();
    let circuits = m
        .circuits()
        .iter()
        .map(|c| {
            let entries = c
                .entries()
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let inv = desc.inv(rho.value(i))?;
                    match m.chirality() {
                        Chirality::Left => desc.mul(v, &inv),
                        Chirality::Right => desc.mul(&inv, v),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            TVector::new(m.ground().clone(), entries)
        })
        .collect::<Result<Vec<_>>>()?;
    TMatroid::new(desc.clone(), m.chirality(), m.ground().clone(), circuits)
}

/// Rescales on the cocircuit side: `ρ·Y` for left matroids, `Y·ρ` for right
/// ones. Tests use it to state how rescaling interacts with duality.
pub fn rescale_cocircuit_side(m: &TMatroid, rho: &RescalingMap) -> Result<TMatroid> {
    let desc = m.tract();
    let circuits = m
        .circuits()
        .iter()
        .map(|c| {
            let entries = c
                .entries()
                .iter()
                .enumerate()
                .map(|(i, v)| match m.chirality() {
                    // `m` is the dual here, so its chirality is already the
                    // flipped one; left duals carry right matroids and get
                    // ρ on the left.
                    Chirality::Right => desc.mul(rho.value(i), v),
                    Chirality::Left => desc.mul(v, rho.value(i)),
                })
                .collect::<Result<Vec<_>>>()?;
            TVector::new(m.ground().clone(), entries)
        })
        .collect::<Result<Vec<_>>>()?;
    TMatroid::new(desc.clone(), m.chirality(), m.ground().clone(), circuits)
}

/// Which way a minor is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorKind {
    Contract,
    Delete,
}

/// Minor of quasi-Plücker coordinates. Contraction extends every pair by a
/// maximal independent subset of `A`; deletion extends by a completion of
/// `E \ A` to a spanning set. Both are independent of the internal choice,
/// which debug builds verify by re-deriving with the reversed greedy order.
pub fn qp_minor(q: &QuasiPlucker, labels: &[&str], kind: MinorKind) -> Result<QuasiPlucker> {
    let ground = q.family().ground().clone();
    let mut a = BTreeSet::new();
    for label in labels {
        a.insert(ground.index_of(label)?);
    }
    let result = qp_minor_with_order(q, &a, kind, false)?;
    #[cfg(debug_assertions)]
    {
        let alt = qp_minor_with_order(q, &a, kind, true)?;
        debug_assert_eq!(result, alt, "qp minor depends on the internal choice");
    }
    Ok(result)
}

fn qp_minor_with_order(
    q: &QuasiPlucker,
    a: &BTreeSet<usize>,
    kind: MinorKind,
    reverse_greedy: bool,
) -> Result<QuasiPlucker> {
    let underlying = q.family().to_underlying()?;
    let ground = q.family().ground().clone();
    let n = ground.len();
    let kept_labels: Vec<String> = ground
        .labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| !a.contains(i))
        .map(|(_, l)| l.clone())
        .collect();
    if kept_labels.is_empty() {
        return Err(Error::Ground("minor would have an empty ground set".into()));
    }
    let new_ground = GroundSet::new(kept_labels)?;
    // Map from old indices to new ones.
    let mut remap = BTreeMap::new();
    for (new_i, old_i) in (0..n).filter(|i| !a.contains(i)).enumerate() {
        remap.insert(old_i, new_i);
    }

    let extension: Vec<usize> = match kind {
        MinorKind::Contract => {
            // Maximal independent subset of A.
            let mut indep = BTreeSet::new();
            let order: Vec<usize> = if reverse_greedy {
                a.iter().rev().cloned().collect()
            } else {
                a.iter().cloned().collect()
            };
            for e in order {
                indep.insert(e);
                if !underlying.is_independent(&indep) {
                    indep.remove(&e);
                }
            }
            indep.into_iter().collect()
        }
        MinorKind::Delete => {
            // J_A ⊆ A completing E \ A to a spanning set.
            let rest: BTreeSet<usize> = (0..n).filter(|i| !a.contains(i)).collect();
            let base_rank = underlying.rank_of(&rest);
            let mut j: BTreeSet<usize> = BTreeSet::new();
            let order: Vec<usize> = if reverse_greedy {
                a.iter().rev().cloned().collect()
            } else {
                a.iter().cloned().collect()
            };
            let mut current = rest.clone();
            let mut rank = base_rank;
            for e in order {
                current.insert(e);
                let r = underlying.rank_of(&current);
                if r > rank {
                    rank = r;
                    j.insert(e);
                } else {
                    current.remove(&e);
                }
            }
            if rank != underlying.rank() {
                return Err(Error::Structure(
                    "deleted set cannot be completed to a spanning set".into(),
                ));
            }
            j.into_iter().collect()
        }
    };

    // Members of the minor family: sets over E \ A whose union with the
    // extension is a member of the original family.
    let target_size = q.family().size() - extension.len();
    let mut new_sets: Vec<BTreeSet<usize>> = Vec::new();
    for b in q.family().sets() {
        if extension.iter().any(|e| b.binary_search(e).is_err()) {
            continue;
        }
        let rest: Vec<usize> = b
            .iter()
            .cloned()
            .filter(|e| !extension.contains(e))
            .collect();
        if rest.iter().any(|e| a.contains(e)) {
            continue;
        }
        if rest.len() == target_size {
            new_sets.push(rest.iter().map(|e| remap[e]).collect());
        }
    }
    new_sets.sort();
    new_sets.dedup();
    let family = BasisFamily::new(new_ground, new_sets)?;

    let mut values = BTreeMap::new();
    let unmap: BTreeMap<usize, usize> = remap.iter().map(|(o, n)| (*n, *o)).collect();
    for (bf, bt) in family.adjacent_pairs() {
        let mut from: Vec<usize> = bf.iter().map(|e| unmap[e]).collect();
        let mut to: Vec<usize> = bt.iter().map(|e| unmap[e]).collect();
        from.extend(extension.iter().cloned());
        to.extend(extension.iter().cloned());
        from.sort();
        to.sort();
        values.insert((bf, bt), q.value(&from, &to)?.clone());
    }
    QuasiPlucker::new(q.tract().clone(), q.chirality(), family, values)
}

/// The induced cocircuit function of a minor. For contractions, cocircuits
/// of `M/A` are exactly the cocircuits of `M` avoiding `A`; for deletions
/// they are minimal-support restrictions, and every preimage must agree on
/// the induced value or the map is not well-defined.
pub fn induce_sigma(
    loc: &Localization,
    labels: &[&str],
    kind: MinorKind,
) -> Result<Localization> {
    let base = loc.base();
    let ground = base.ground().clone();
    let mut a = BTreeSet::new();
    for label in labels {
        a.insert(ground.index_of(label)?);
    }
    induce_sigma_by_index(loc, &a, kind)
}

pub(crate) fn induce_sigma_by_index(
    loc: &Localization,
    a: &BTreeSet<usize>,
    kind: MinorKind,
) -> Result<Localization> {
    let base = loc.base();
    let desc = base.tract();
    let new_base = match kind {
        MinorKind::Contract => minor_by_index(base, &BTreeSet::new(), a)?,
        MinorKind::Delete => minor_by_index(base, a, &BTreeSet::new())?,
    };
    let new_dual = new_base.dual()?;
    let side = base.chirality().cocircuit_side();
    let old_reps = loc.cocircuits().circuits();

    let mut values: Vec<TractValue> = Vec::with_capacity(new_dual.circuits().len());
    for z in new_dual.circuits() {
        let mut found: Option<TractValue> = None;
        for (i, y) in old_reps.iter().enumerate() {
            if y.support().intersection(a).next().is_some() && kind == MinorKind::Contract {
                continue;
            }
            let r = restrict(y, a, z.ground());
            if r.is_zero() || r.support() != z.support() {
                continue;
            }
            let (canon, lambda) = canonicalize(desc, side, &r)?;
            if &canon != z {
                continue;
            }
            // Y \ A = Z ⊛ λ, so σ'(Z) = σ(Y) ⊛ λ^{-1}.
            let lambda_inv = desc.inv(&lambda)?;
            let value = match base.chirality() {
                Chirality::Left => desc.mul(loc.class_value(i), &lambda_inv)?,
                Chirality::Right => desc.mul(&lambda_inv, loc.class_value(i))?,
            };
            match &found {
                None => found = Some(value),
                Some(prev) if *prev == value => {}
                Some(prev) => {
                    return Err(Error::Structure(format!(
                        "conflicting induced values {} and {} for cocircuit {}",
                        desc.format_value(prev),
                        desc.format_value(&value),
                        z.id_string(desc)
                    )))
                }
            }
        }
        match found {
            Some(v) => values.push(v),
            None => {
                return Err(Error::Structure(format!(
                    "cocircuit {} of the minor has no preimage",
                    z.id_string(desc)
                )))
            }
        }
    }
    Localization::from_parts(new_base, new_dual, loc.p().to_string(), values)
}
