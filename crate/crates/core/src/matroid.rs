//! Matroids over a skew tract: canonical projective circuit representatives,
//! weak and strong circuit axioms, modular elimination, and duality.

use once_cell::sync::OnceCell;
use serde::Serialize;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tract::{FormalSum, TractDescriptor, TractValue};
use crate::tvec::{GroundSet, MulOrder, Side, TVector};
use crate::underlying::{is_modular_family, UnderlyingMatroid};

/// Whether scalars act on the left or the right of circuits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    Left,
    Right,
}

impl Chirality {
    pub fn flip(self) -> Chirality {
        match self {
            Chirality::Left => Chirality::Right,
            Chirality::Right => Chirality::Left,
        }
    }

    /// The side scalars act on for circuits of this chirality.
    pub fn circuit_side(self) -> Side {
        match self {
            Chirality::Left => Side::Left,
            Chirality::Right => Side::Right,
        }
    }

    /// The side scalars act on for cocircuits (circuits of the dual).
    pub fn cocircuit_side(self) -> Side {
        self.flip().circuit_side()
    }

    /// Multiplication order for the orthogonality pairing.
    pub fn pairing_order(self) -> MulOrder {
        match self {
            Chirality::Left => MulOrder::Direct,
            Chirality::Right => MulOrder::Reversed,
        }
    }
}

/// Multiplies factors left-to-right for left chirality and right-to-left for
/// right chirality, which is exactly "reverse the order of multiplication
/// throughout".
pub(crate) fn chain(
    desc: &TractDescriptor,
    chirality: Chirality,
    factors: &[TractValue],
) -> Result<TractValue> {
    let mut acc = desc.one();
    match chirality {
        Chirality::Left => {
            for f in factors {
                acc = desc.mul(&acc, f)?;
            }
        }
        Chirality::Right => {
            for f in factors.iter().rev() {
                acc = desc.mul(&acc, f)?;
            }
        }
    }
    Ok(acc)
}

/// Weak checks C1-C4 (resp. P1-P5); strong adds (C4)' (resp. (P4)'/(P5)').
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxiomMode {
    Weak,
    Strong,
}

/// A re-checkable description of a failed axiom instance: the participating
/// vectors (serialized), the pinned scalars, and the elements involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub description: String,
    pub vectors: Vec<String>,
    pub elements: Vec<String>,
    pub scalars: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub holds: bool,
    pub witness: Option<AxiomWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub mode: AxiomMode,
    pub axioms: Vec<AxiomCheck>,
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.axioms.iter().all(|a| a.holds)
    }

    pub fn axiom(&self, id: &str) -> Option<&AxiomCheck> {
        self.axioms.iter().find(|a| a.axiom == id)
    }

    fn push_pass(&mut self, id: &str) {
        self.axioms.push(AxiomCheck { axiom: id.into(), holds: true, witness: None });
    }

    fn push_fail(&mut self, id: &str, witness: AxiomWitness) {
        self.axioms.push(AxiomCheck { axiom: id.into(), holds: false, witness: Some(witness) });
    }
}

/// Maximum size of the modular families enumerated by the strong elimination
/// check; the report carries a note when the cap could bind.
const STRONG_FAMILY_CAP: usize = 5;

/// A matroid over a skew tract, stored as one canonical representative per
/// projective circuit: the entry at the least support element is scaled to 1
/// on the chirality side, which collapses the scalar quantifiers of the
/// symmetry and incomparability axioms into finite checks.
#[derive(Clone, Debug)]
pub struct TMatroid {
    tract: TractDescriptor,
    chirality: Chirality,
    ground: Arc<GroundSet>,
    circuits: Vec<TVector>,
    underlying: OnceCell<Arc<UnderlyingMatroid>>,
}

impl PartialEq for TMatroid {
    fn eq(&self, other: &Self) -> bool {
        self.tract == other.tract
            && self.chirality == other.chirality
            && self.ground.labels() == other.ground.labels()
            && self.circuits == other.circuits
    }
}

impl Eq for TMatroid {}

impl TMatroid {
    pub fn new(
        tract: TractDescriptor,
        chirality: Chirality,
        ground: Arc<GroundSet>,
        circuits: Vec<TVector>,
    ) -> Result<TMatroid> {
        let mut canonical = Vec::with_capacity(circuits.len());
        for c in circuits {
            if c.ground().labels() != ground.labels() {
                return Err(Error::Ground("circuit on a different ground set".into()));
            }
            for v in c.entries() {
                tract.check_value(v)?;
            }
            if c.is_zero() {
                return Err(Error::Structure("the zero vector is not a circuit".into()));
            }
            canonical.push(canonicalize(&tract, chirality.circuit_side(), &c)?.0);
        }
        canonical.sort_by_key(|c| vector_key(&tract, c));
        canonical.dedup();
        Ok(TMatroid {
            tract,
            chirality,
            ground,
            circuits: canonical,
            underlying: OnceCell::new(),
        })
    }

    pub fn tract(&self) -> &TractDescriptor {
        &self.tract
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    /// Canonical projective circuit representatives, in canonical order.
    pub fn circuits(&self) -> &[TVector] {
        &self.circuits
    }

    pub fn circuit_supports(&self) -> Vec<BTreeSet<usize>> {
        self.circuits.iter().map(TVector::support).collect()
    }

    /// The underlying matroid; fails when the supports are not the circuits
    /// of a matroid.
    pub fn underlying(&self) -> Result<Arc<UnderlyingMatroid>> {
        if let Some(u) = self.underlying.get() {
            return Ok(u.clone());
        }
        let u = Arc::new(UnderlyingMatroid::from_circuit_supports(
            self.ground.clone(),
            self.circuit_supports(),
        )?);
        let _ = self.underlying.set(u.clone());
        Ok(self.underlying.get().unwrap().clone())
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.underlying()?.rank())
    }

    /// Splits a vector into (canonical representative index, scalar) with
    /// `vector = scalar ⊛ representative` on the chirality side.
    pub fn class_of(&self, vector: &TVector) -> Result<(usize, TractValue)> {
        let (canon, scalar) = canonicalize(&self.tract, self.chirality.circuit_side(), vector)?;
        let idx = self
            .circuits
            .iter()
            .position(|c| *c == canon)
            .ok_or_else(|| Error::Structure("vector is not a circuit of this matroid".into()))?;
        Ok((idx, scalar))
    }

    /// Modular pair test on two circuit classes, in the lattice of unions of
    /// circuit supports.
    pub fn modular_pair(&self, i: usize, j: usize) -> bool {
        is_modular_family(&self.circuit_supports(), &[i, j])
    }

    /// Checks the circuit axioms and reports per-axiom verdicts with
    /// deterministic first witnesses.
    pub fn check_circuit_axioms(&self, mode: AxiomMode) -> Result<AxiomReport> {
        let mut report = AxiomReport { mode, axioms: Vec::new(), notes: Vec::new() };
        let supports = self.circuit_supports();

        // C1: no circuit is the zero vector (also enforced on construction).
        match self.circuits.iter().position(|c| c.is_zero()) {
            None => report.push_pass("C1"),
            Some(i) => report.push_fail(
                "C1",
                AxiomWitness {
                    description: "zero vector listed as a circuit".into(),
                    vectors: vec![self.circuits[i].id_string(&self.tract)],
                    elements: vec![],
                    scalars: vec![],
                },
            ),
        }

        // C2: scalar orbits are represented canonically (least support entry
        // scaled to 1), which is what makes the remaining checks finite.
        let mut c2_witness = None;
        for c in &self.circuits {
            let e0 = *c.support().iter().next().expect("nonzero circuit");
            if *c.entry(e0) != self.tract.one() {
                c2_witness = Some(c.clone());
                break;
            }
        }
        match c2_witness {
            None => report.push_pass("C2"),
            Some(c) => report.push_fail(
                "C2",
                AxiomWitness {
                    description: "representative is not in canonical scaled form".into(),
                    vectors: vec![c.id_string(&self.tract)],
                    elements: vec![],
                    scalars: vec![],
                },
            ),
        }

        // C3: supports of distinct classes are incomparable.
        let mut c3_witness = None;
        'outer: for (i, a) in supports.iter().enumerate() {
            for (j, b) in supports.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    c3_witness = Some((i, j));
                    break 'outer;
                }
            }
        }
        match c3_witness {
            None => report.push_pass("C3"),
            Some((i, j)) => report.push_fail(
                "C3",
                AxiomWitness {
                    description: "comparable supports of non-proportional circuits".into(),
                    vectors: vec![
                        self.circuits[i].id_string(&self.tract),
                        self.circuits[j].id_string(&self.tract),
                    ],
                    elements: vec![],
                    scalars: vec![],
                },
            ),
        }

        // C4: modular elimination over all modular pairs and eliminable
        // elements, with the pair scalars pinned by the eliminated entry.
        match self.check_modular_elimination(&supports)? {
            None => report.push_pass("C4"),
            Some(w) => report.push_fail("C4", w),
        }

        if mode == AxiomMode::Strong {
            let cap = STRONG_FAMILY_CAP.min(self.ground.len());
            match self.check_strong_elimination(&supports, cap)? {
                None => report.push_pass("C4'"),
                Some(w) => report.push_fail("C4'", w),
            }
            if self.circuits.len() > cap {
                report
                    .notes
                    .push(format!("strong elimination families capped at size {cap}"));
            }
        }

        Ok(report)
    }

    fn check_modular_elimination(
        &self,
        supports: &[BTreeSet<usize>],
    ) -> Result<Option<AxiomWitness>> {
        let eps = self.tract.epsilon();
        for i in 0..self.circuits.len() {
            for j in 0..self.circuits.len() {
                if i == j || !is_modular_family(supports, &[i, j]) {
                    continue;
                }
                let x = &self.circuits[i];
                for &e in supports[i].intersection(&supports[j]) {
                    // Pin the scalar of the second circuit by Y(e) = -X(e).
                    let beta = self.solve_scale(
                        self.circuits[j].entry(e),
                        &self.tract.mul(&eps, x.entry(e))?,
                    )?;
                    let y = self.circuits[j].scale(
                        &self.tract,
                        &beta,
                        self.chirality.circuit_side(),
                    )?;
                    if self.find_elimination(x, &y, e)?.is_none() {
                        return Ok(Some(AxiomWitness {
                            description: "no circuit eliminates the element between the pair"
                                .into(),
                            vectors: vec![
                                x.id_string(&self.tract),
                                y.id_string(&self.tract),
                            ],
                            elements: vec![self.ground.label(e).into()],
                            scalars: vec![self.tract.format_value(&beta)],
                        }));
                    }
                }
            }
        }
        Ok(None)
    }

    fn check_strong_elimination(
        &self,
        supports: &[BTreeSet<usize>],
        cap: usize,
    ) -> Result<Option<AxiomWitness>> {
        // Enumerate index subsets of size 2..=cap in lexicographic order;
        // fixture-scale class counts keep this fast.
        fn subsets(
            m: &TMatroid,
            supports: &[BTreeSet<usize>],
            from: usize,
            family: &mut Vec<usize>,
            cap: usize,
        ) -> Result<Option<AxiomWitness>> {
            if family.len() >= 2
                && family.len() <= cap
                && is_modular_family(supports, family)
            {
                if let Some(w) = m.check_family_elimination(supports, family)? {
                    return Ok(Some(w));
                }
            }
            if family.len() == cap {
                return Ok(None);
            }
            for k in from..m.circuits.len() {
                family.push(k);
                if let Some(w) = subsets(m, supports, k + 1, family, cap)? {
                    return Ok(Some(w));
                }
                family.pop();
            }
            Ok(None)
        }
        let mut family: Vec<usize> = Vec::new();
        subsets(self, supports, 0, &mut family, cap)
    }

    /// One modular family of size k+1: every choice of distinguished circuit
    /// X and eliminable tuple (e_1..e_k) must admit an eliminating circuit.
    fn check_family_elimination(
        &self,
        supports: &[BTreeSet<usize>],
        family: &[usize],
    ) -> Result<Option<AxiomWitness>> {
        let eps = self.tract.epsilon();
        for (slot, &xi) in family.iter().enumerate() {
            let others: Vec<usize> =
                family.iter().enumerate().filter(|&(s, _)| s != slot).map(|(_, &c)| c).collect();
            let union_others: BTreeSet<usize> =
                others.iter().flat_map(|&c| supports[c].iter().cloned()).collect();
            if supports[xi].is_subset(&union_others) {
                continue;
            }
            let x = &self.circuits[xi];
            // Candidate e_i sets: in X and X_i but in no other member.
            let mut choices: Vec<Vec<usize>> = Vec::new();
            for &oi in &others {
                let mut cands: Vec<usize> = supports[xi]
                    .intersection(&supports[oi])
                    .filter(|e| {
                        others
                            .iter()
                            .all(|&oj| oj == oi || !supports[oj].contains(e))
                    })
                    .cloned()
                    .collect();
                cands.sort();
                if cands.is_empty() {
                    choices.clear();
                    break;
                }
                choices.push(cands);
            }
            if choices.is_empty() {
                continue;
            }
            let mut pick = vec![0usize; choices.len()];
            loop {
                let elems: Vec<usize> =
                    pick.iter().zip(&choices).map(|(&p, c)| c[p]).collect();
                // Pin each member scalar by X(e_i) = -X_i(e_i).
                let mut members = Vec::with_capacity(others.len());
                for (k, &oi) in others.iter().enumerate() {
                    let e = elems[k];
                    let beta = self.solve_scale(
                        self.circuits[oi].entry(e),
                        &self.tract.mul(&eps, x.entry(e))?,
                    )?;
                    members.push(self.circuits[oi].scale(
                        &self.tract,
                        &beta,
                        self.chirality.circuit_side(),
                    )?);
                }
                if self.find_family_elimination(x, &members, &elems)?.is_none() {
                    let mut vectors = vec![x.id_string(&self.tract)];
                    vectors.extend(members.iter().map(|m| m.id_string(&self.tract)));
                    return Ok(Some(AxiomWitness {
                        description: "no circuit eliminates the family".into(),
                        vectors,
                        elements: elems
                            .iter()
                            .map(|&e| self.ground.label(e).to_string())
                            .collect(),
                        scalars: vec![],
                    }));
                }
                // Advance the choice tuple.
                let mut k = 0;
                loop {
                    if k == pick.len() {
                        break;
                    }
                    pick[k] += 1;
                    if pick[k] < choices[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if k == pick.len() {
                    break;
                }
            }
        }
        Ok(None)
    }

    /// Solves `scalar ⊛ base = target` on the chirality side.
    pub(crate) fn solve_scale(&self, base: &TractValue, target: &TractValue) -> Result<TractValue> {
        let inv = self.tract.inv(base)?;
        match self.chirality {
            Chirality::Left => self.tract.mul(target, &inv),
            Chirality::Right => self.tract.mul(&inv, target),
        }
    }

    /// Searches for a circuit `Z` with `Z(e) = 0` and
    /// `X(f) + Y(f) - Z(f)` null everywhere.
    pub(crate) fn find_elimination(
        &self,
        x: &TVector,
        y: &TVector,
        e: usize,
    ) -> Result<Option<TVector>> {
        self.find_family_elimination(x, std::slice::from_ref(y), &[e])
    }

    /// Family version: `Z(e_i) = 0` for all i and
    /// `X(f) + Σ X_i(f) - Z(f)` null everywhere.
    fn find_family_elimination(
        &self,
        x: &TVector,
        members: &[TVector],
        elems: &[usize],
    ) -> Result<Option<TVector>> {
        let eps = self.tract.epsilon();
        let mut union = x.support();
        for m in members {
            union.extend(m.support());
        }
        let allowed: BTreeSet<usize> =
            union.iter().filter(|f| !elems.contains(f)).cloned().collect();
        'candidates: for cand in &self.circuits {
            let supp = cand.support();
            if !supp.is_subset(&allowed) {
                continue;
            }
            // Anchor the scalar at an element where exactly one of the
            // eliminated vectors is nonzero; there the two-term null relation
            // forces Z(f) outright.
            let mut gamma: Option<TractValue> = None;
            for &f in &supp {
                let mut nonzero: Vec<&TractValue> = Vec::new();
                if !x.entry(f).is_zero() {
                    nonzero.push(x.entry(f));
                }
                for m in members {
                    if !m.entry(f).is_zero() {
                        nonzero.push(m.entry(f));
                    }
                }
                if nonzero.len() == 1 {
                    gamma = Some(self.solve_scale(cand.entry(f), nonzero[0])?);
                    break;
                }
            }
            let gammas: Vec<TractValue> = match gamma {
                Some(g) => vec![g],
                None => match self.tract.carrier() {
                    // No two-term anchor: fall back to the carrier when it is
                    // finite, otherwise this candidate cannot be pinned.
                    Some(carrier) => carrier.into_iter().map(TractValue::NonZero).collect(),
                    None => continue 'candidates,
                },
            };
            for g in gammas {
                let z = cand.scale(&self.tract, &g, self.chirality.circuit_side())?;
                let mut ok = true;
                for &f in &union {
                    let mut sum = FormalSum::from_values(vec![x.entry(f).clone()]);
                    for m in members {
                        sum.push(m.entry(f).clone());
                    }
                    sum.push(self.tract.mul(&eps, z.entry(f))?);
                    if !self.tract.is_null(&sum)? {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return Ok(Some(z));
                }
            }
        }
        Ok(None)
    }

    /// Modular elimination as a standalone operation on concrete circuit
    /// vectors. Precondition violations are errors; a missing eliminating
    /// circuit (an axiom violation) is `Ok(None)`.
    pub fn eliminate(&self, x: &TVector, y: &TVector, e: &str) -> Result<Option<TVector>> {
        let e = self.ground.index_of(e)?;
        let (xi, _) = self.class_of(x)?;
        let (yi, _) = self.class_of(y)?;
        if !is_modular_family(&self.circuit_supports(), &[xi, yi]) {
            return Err(Error::Structure("circuits do not form a modular pair".into()));
        }
        if x.entry(e).is_zero() || *x.entry(e) != self.tract.neg(y.entry(e))? {
            return Err(Error::Structure(format!(
                "need X({0}) = -Y({0}) != 0",
                self.ground.label(e)
            )));
        }
        self.find_elimination(x, y, e)
    }

    /// The dual matroid: cocircuit supports are complements of hyperplanes,
    /// values are propagated through two-element orthogonality intersections
    /// and then verified against every circuit; chirality flips.
    pub fn dual(&self) -> Result<TMatroid> {
        let underlying = self.underlying()?;
        let order = self.chirality.pairing_order();
        let eps = self.tract.epsilon();
        let mut cocircuits = Vec::new();
        for support in underlying.cocircuit_supports() {
            let elems: Vec<usize> = support.iter().cloned().collect();
            let mut values: Vec<Option<TractValue>> = vec![None; self.ground.len()];
            values[elems[0]] = Some(self.tract.one());
            let mut frontier = vec![elems[0]];
            while let Some(e) = frontier.pop() {
                for f in &elems {
                    if values[*f].is_some() {
                        continue;
                    }
                    // Look for a circuit meeting the cocircuit support
                    // exactly in {e, f}: its orthogonality relation has two
                    // terms and pins the ratio of the entries.
                    let circuit = self.circuits.iter().find(|c| {
                        let meet: BTreeSet<usize> =
                            c.support().intersection(&support).cloned().collect();
                        meet == BTreeSet::from([e, *f])
                    });
                    let Some(c) = circuit else { continue };
                    let known = values[e].clone().unwrap();
                    let ce = self.tract.involute(c.entry(e))?;
                    let cf = self.tract.involute(c.entry(*f))?;
                    let value = match order {
                        // conj(Y(f)) = C(f)^{-1} ε C(e) conj(Y(e))
                        MulOrder::Direct => {
                            let m = self.tract.mul(
                                &self.tract.mul(&self.tract.inv(&cf)?, &eps)?,
                                &ce,
                            )?;
                            self.tract.mul(&m, &known)?
                        }
                        // conj(Y(f)) = ε conj(Y(e)) C(e) C(f)^{-1}
                        MulOrder::Reversed => {
                            let m = self.tract.mul(
                                &self.tract.mul(&eps, &ce)?,
                                &self.tract.inv(&cf)?,
                            )?;
                            self.tract.mul(&known, &m)?
                        }
                    };
                    values[*f] = Some(value);
                    frontier.push(*f);
                }
            }
            let entries: Vec<TractValue> = values
                .into_iter()
                .enumerate()
                .map(|(i, v)| match v {
                    Some(v) => Ok(v),
                    None if support.contains(&i) => Err(Error::Structure(format!(
                        "cocircuit value at {} is not determined by two-element intersections",
                        self.ground.label(i)
                    ))),
                    None => Ok(TractValue::Zero),
                })
                .collect::<Result<_>>()?;
            let y = TVector::new(self.ground.clone(), entries)?;
            for c in &self.circuits {
                let (_, orthogonal) = c.pairing(&self.tract, &y, order)?;
                if !orthogonal {
                    return Err(Error::Structure(format!(
                        "propagated cocircuit {} is not orthogonal to circuit {}",
                        y.id_string(&self.tract),
                        c.id_string(&self.tract)
                    )));
                }
            }
            cocircuits.push(y);
        }
        TMatroid::new(
            self.tract.clone(),
            self.chirality.flip(),
            self.ground.clone(),
            cocircuits,
        )
    }
}

/// Canonicalizes a vector: returns the representative with the least-support
/// entry equal to 1 and the scalar recovering the input on the given side.
pub(crate) fn canonicalize(
    desc: &TractDescriptor,
    side: Side,
    v: &TVector,
) -> Result<(TVector, TractValue)> {
    let support = v.support();
    let e0 = *support
        .iter()
        .next()
        .ok_or_else(|| Error::Structure("cannot canonicalize the zero vector".into()))?;
    let scalar = v.entry(e0).clone();
    let inv = desc.inv(&scalar)?;
    let canon = v.scale(desc, &inv, side)?;
    Ok((canon, scalar))
}

pub(crate) fn vector_key(desc: &TractDescriptor, v: &TVector) -> (Vec<usize>, String) {
    (v.support().into_iter().collect(), v.id_string(desc))
}
