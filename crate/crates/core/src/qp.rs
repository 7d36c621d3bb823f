//! Quasi-Plücker coordinates: values on ordered pairs of adjacent bases,
//! the weak axioms P1-P5 and the strong variants (P4)'/(P5)', and the
//! conversions between circuit data and coordinates through the dual
//! pivoting property.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matroid::{chain, AxiomCheck, AxiomMode, AxiomReport, AxiomWitness, Chirality, TMatroid};
use crate::tract::{FormalSum, TractDescriptor, TractValue};
use crate::tvec::{GroundSet, TVector};
use crate::underlying::UnderlyingMatroid;

/// A family of equal-size subsets of the ground set. The quasi-Plücker
/// axioms only interrogate membership, so the family is not required to
/// satisfy basis exchange; families that fail it simply fail the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisFamily {
    ground: Arc<GroundSet>,
    size: usize,
    sets: Vec<Vec<usize>>,
}

impl BasisFamily {
    pub fn new(ground: Arc<GroundSet>, sets: Vec<BTreeSet<usize>>) -> Result<BasisFamily> {
        if sets.is_empty() {
            return Err(Error::Structure("empty basis family".into()));
        }
        let size = sets[0].len();
        let mut listed: Vec<Vec<usize>> = Vec::with_capacity(sets.len());
        for s in &sets {
            if s.len() != size {
                return Err(Error::Structure("basis family members differ in size".into()));
            }
            if s.iter().any(|&e| e >= ground.len()) {
                return Err(Error::Ground("basis member outside the ground set".into()));
            }
            listed.push(s.iter().cloned().collect());
        }
        listed.sort();
        listed.dedup();
        Ok(BasisFamily { ground, size, sets: listed })
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn contains(&self, set: &[usize]) -> bool {
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]));
        self.sets.binary_search_by(|s| s.as_slice().cmp(set)).is_ok()
    }

    /// Ordered pairs of members differing in exactly one element.
    pub fn adjacent_pairs(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        let mut out = Vec::new();
        for a in &self.sets {
            for b in &self.sets {
                if a != b && symmetric_difference_size(a, b) == 2 {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// Interprets the family as matroid bases: independents are subsets of
    /// members, circuits are the minimal dependents. Fails when the family
    /// does not satisfy basis exchange.
    pub fn to_underlying(&self) -> Result<UnderlyingMatroid> {
        let n = self.ground.len();
        let independent = |s: &BTreeSet<usize>| {
            self.sets
                .iter()
                .any(|b| s.iter().all(|e| b.binary_search(e).is_ok()))
        };
        let mut circuits: Vec<BTreeSet<usize>> = Vec::new();
        let mut stack: Vec<(usize, BTreeSet<usize>)> = vec![(0, BTreeSet::new())];
        while let Some((from, set)) = stack.pop() {
            for e in from..n {
                let mut with = set.clone();
                with.insert(e);
                if circuits.iter().any(|c| c.is_subset(&with)) {
                    continue;
                }
                if independent(&with) {
                    stack.push((e + 1, with));
                } else {
                    circuits.push(with);
                }
            }
        }
        circuits.sort();
        let m = UnderlyingMatroid::from_circuit_supports(self.ground.clone(), circuits)?;
        if m.rank() != self.size || m.bases().len() != self.sets.len() {
            return Err(Error::NotAMatroid(
                "family is not the basis set of a matroid".into(),
            ));
        }
        Ok(m)
    }
}

fn symmetric_difference_size(a: &[usize], b: &[usize]) -> usize {
    let sa: BTreeSet<usize> = a.iter().cloned().collect();
    let sb: BTreeSet<usize> = b.iter().cloned().collect();
    sa.symmetric_difference(&sb).count()
}

fn sorted_union(a: &[usize], extra: &[usize]) -> Vec<usize> {
    let mut v: Vec<usize> = a.iter().chain(extra).cloned().collect();
    v.sort();
    v.dedup();
    v
}

/// Quasi-Plücker coordinates on the adjacent pairs of a basis family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPlucker {
    tract: TractDescriptor,
    chirality: Chirality,
    family: BasisFamily,
    values: BTreeMap<(Vec<usize>, Vec<usize>), TractValue>,
}

impl QuasiPlucker {
    /// Builds coordinates, checking that the value map covers exactly the
    /// adjacent pairs and never vanishes.
    pub fn new(
        tract: TractDescriptor,
        chirality: Chirality,
        family: BasisFamily,
        values: BTreeMap<(Vec<usize>, Vec<usize>), TractValue>,
    ) -> Result<QuasiPlucker> {
        let pairs = family.adjacent_pairs();
        if pairs.len() != values.len() {
            return Err(Error::Structure(format!(
                "coordinate map has {} entries for {} adjacent pairs",
                values.len(),
                pairs.len()
            )));
        }
        for pair in &pairs {
            match values.get(&(pair.0.clone(), pair.1.clone())) {
                Some(v) if !v.is_zero() => tract.check_value(v)?,
                Some(_) => {
                    return Err(Error::Structure("coordinate values must be nonzero".into()))
                }
                None => {
                    return Err(Error::Structure(format!(
                        "missing coordinate for adjacent pair {pair:?}"
                    )))
                }
            }
        }
        Ok(QuasiPlucker { tract, chirality, family, values })
    }

    pub fn tract(&self) -> &TractDescriptor {
        &self.tract
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    pub fn family(&self) -> &BasisFamily {
        &self.family
    }

    pub fn value(&self, from: &[usize], to: &[usize]) -> Result<&TractValue> {
        self.values
            .get(&(from.to_vec(), to.to_vec()))
            .ok_or_else(|| Error::Structure(format!("no coordinate for pair ({from:?}, {to:?})")))
    }

    fn val(&self, from: &[usize], to: &[usize]) -> Result<TractValue> {
        self.value(from, to).cloned()
    }

    /// Per-axiom verdicts with deterministic first witnesses.
    pub fn check_axioms(&self, mode: AxiomMode) -> Result<AxiomReport> {
        let mut axioms = vec![
            self.check_p1()?,
            self.check_p2()?,
            self.check_p3()?,
            self.check_p4()?,
            self.check_p5()?,
        ];
        if mode == AxiomMode::Strong {
            let (p4s, p5s) = self.check_strong()?;
            axioms.push(p4s);
            axioms.push(p5s);
        }
        Ok(AxiomReport { mode, axioms, notes: Vec::new() })
    }

    fn pass(id: &str) -> AxiomCheck {
        AxiomCheck { axiom: id.into(), holds: true, witness: None }
    }

    fn fail(&self, id: &str, pairs: &[(&[usize], &[usize])], note: &str) -> AxiomCheck {
        let vectors = pairs
            .iter()
            .map(|(a, b)| format!("[{}|{}]", self.label_set(a), self.label_set(b)))
            .collect();
        AxiomCheck {
            axiom: id.into(),
            holds: false,
            witness: Some(AxiomWitness {
                description: note.into(),
                vectors,
                elements: vec![],
                scalars: vec![],
            }),
        }
    }

    fn label_set(&self, set: &[usize]) -> String {
        set.iter()
            .map(|&e| self.family.ground.label(e))
            .collect::<Vec<_>>()
            .join(",")
    }

    fn check_p1(&self) -> Result<AxiomCheck> {
        for (a, b) in self.family.adjacent_pairs() {
            let forward = self.val(&a, &b)?;
            let backward = self.val(&b, &a)?;
            if chain(&self.tract, self.chirality, &[forward, backward])? != self.tract.one() {
                return Ok(self.fail(
                    "P1",
                    &[(&a, &b), (&b, &a)],
                    "reciprocal coordinates do not multiply to 1",
                ));
            }
        }
        Ok(Self::pass("P1"))
    }

    /// Iterates subsets of the ground set of a given size.
    fn subsets_of_size(&self, k: usize) -> Vec<Vec<usize>> {
        let n = self.family.ground.len();
        let mut out = Vec::new();
        let mut current = Vec::new();
        fn rec(from: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if current.len() == k {
                out.push(current.clone());
                return;
            }
            for e in from..n {
                current.push(e);
                rec(e + 1, n, k, current, out);
                current.pop();
            }
        }
        rec(0, n, k, &mut current, &mut out);
        out
    }

    fn outside(&self, f: &[usize]) -> Vec<usize> {
        (0..self.family.ground.len()).filter(|e| !f.contains(e)).collect()
    }

    fn check_p2(&self) -> Result<AxiomCheck> {
        if self.family.size < 2 {
            return Ok(Self::pass("P2"));
        }
        let minus_one = self.tract.epsilon();
        for f in self.subsets_of_size(self.family.size - 2) {
            let rest = self.outside(&f);
            for &a in &rest {
                for &b in &rest {
                    for &c in &rest {
                        if a == b || a == c || b == c {
                            continue;
                        }
                        let fab = sorted_union(&f, &[a, b]);
                        let fac = sorted_union(&f, &[a, c]);
                        let fbc = sorted_union(&f, &[b, c]);
                        if !(self.family.contains(&fab)
                            && self.family.contains(&fac)
                            && self.family.contains(&fbc))
                        {
                            continue;
                        }
                        let product = chain(
                            &self.tract,
                            self.chirality,
                            &[self.val(&fac, &fbc)?, self.val(&fab, &fac)?, self.val(&fbc, &fab)?],
                        )?;
                        if product != minus_one {
                            return Ok(self.fail(
                                "P2",
                                &[(&fac, &fbc), (&fab, &fac), (&fbc, &fab)],
                                "triangle product is not -1",
                            ));
                        }
                    }
                }
            }
        }
        Ok(Self::pass("P2"))
    }

    fn check_p3(&self) -> Result<AxiomCheck> {
        if self.family.size < 1 {
            return Ok(Self::pass("P3"));
        }
        for f in self.subsets_of_size(self.family.size - 1) {
            let rest = self.outside(&f);
            for &a in &rest {
                for &b in &rest {
                    for &c in &rest {
                        if a == b || a == c || b == c {
                            continue;
                        }
                        let fa = sorted_union(&f, &[a]);
                        let fb = sorted_union(&f, &[b]);
                        let fc = sorted_union(&f, &[c]);
                        if !(self.family.contains(&fa)
                            && self.family.contains(&fb)
                            && self.family.contains(&fc))
                        {
                            continue;
                        }
                        let product = chain(
                            &self.tract,
                            self.chirality,
                            &[self.val(&fa, &fb)?, self.val(&fb, &fc)?, self.val(&fc, &fa)?],
                        )?;
                        if product != self.tract.one() {
                            return Ok(self.fail(
                                "P3",
                                &[(&fa, &fb), (&fb, &fc), (&fc, &fa)],
                                "cycle product is not 1",
                            ));
                        }
                    }
                }
            }
        }
        Ok(Self::pass("P3"))
    }

    fn check_p4(&self) -> Result<AxiomCheck> {
        if self.family.size < 2 {
            return Ok(Self::pass("P4"));
        }
        for f in self.subsets_of_size(self.family.size - 2) {
            let rest = self.outside(&f);
            for &a in &rest {
                for &b in &rest {
                    for &c in &rest {
                        for &d in &rest {
                            if [a, b, c, d].iter().collect::<BTreeSet<_>>().len() != 4 {
                                continue;
                            }
                            let fac = sorted_union(&f, &[a, c]);
                            let fad = sorted_union(&f, &[a, d]);
                            let fbc = sorted_union(&f, &[b, c]);
                            let fbd = sorted_union(&f, &[b, d]);
                            if !(self.family.contains(&fac)
                                && self.family.contains(&fad)
                                && self.family.contains(&fbc)
                                && self.family.contains(&fbd))
                            {
                                continue;
                            }
                            let fab = sorted_union(&f, &[a, b]);
                            let fcd = sorted_union(&f, &[c, d]);
                            if self.family.contains(&fab) && self.family.contains(&fcd) {
                                continue;
                            }
                            if self.val(&fac, &fbc)? != self.val(&fad, &fbd)? {
                                return Ok(self.fail(
                                    "P4",
                                    &[(&fac, &fbc), (&fad, &fbd)],
                                    "degenerate exchange coordinates differ",
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(Self::pass("P4"))
    }

    fn check_p5(&self) -> Result<AxiomCheck> {
        if self.family.size < 2 {
            return Ok(Self::pass("P5"));
        }
        let minus_one = self.tract.epsilon();
        for f in self.subsets_of_size(self.family.size - 2) {
            let rest = self.outside(&f);
            for &a in &rest {
                for &b in &rest {
                    for &c in &rest {
                        for &d in &rest {
                            if [a, b, c, d].iter().collect::<BTreeSet<_>>().len() != 4 {
                                continue;
                            }
                            let fab = sorted_union(&f, &[a, b]);
                            let fac = sorted_union(&f, &[a, c]);
                            let fad = sorted_union(&f, &[a, d]);
                            let fbc = sorted_union(&f, &[b, c]);
                            let fbd = sorted_union(&f, &[b, d]);
                            let fcd = sorted_union(&f, &[c, d]);
                            if ![&fab, &fac, &fad, &fbc, &fbd, &fcd]
                                .iter()
                                .all(|s| self.family.contains(s))
                            {
                                continue;
                            }
                            let t1 = chain(
                                &self.tract,
                                self.chirality,
                                &[self.val(&fbd, &fab)?, self.val(&fac, &fcd)?],
                            )?;
                            let t2 = chain(
                                &self.tract,
                                self.chirality,
                                &[self.val(&fad, &fab)?, self.val(&fbc, &fcd)?],
                            )?;
                            let sum =
                                FormalSum::from_values(vec![minus_one.clone(), t1, t2]);
                            if !self.tract.is_null(&sum)? {
                                return Ok(self.fail(
                                    "P5",
                                    &[(&fbd, &fab), (&fac, &fcd), (&fad, &fab), (&fbc, &fcd)],
                                    "three-term exchange sum is not null",
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(Self::pass("P5"))
    }

    fn check_strong(&self) -> Result<(AxiomCheck, AxiomCheck)> {
        let d = self.family.size;
        let n = self.family.ground.len();
        let minus_one = self.tract.epsilon();
        if d + 1 > n || d < 1 {
            return Ok((Self::pass("P4'"), Self::pass("P5'")));
        }
        for i_set in self.subsets_of_size(d + 1) {
            for j_set in self.subsets_of_size(d - 1) {
                let j_in_i = j_set.iter().filter(|e| i_set.contains(e)).count();
                if i_set.len() - j_in_i < 3 {
                    continue;
                }
                // I_1: elements x of I with both I\x and Jx in the family.
                let mut i1: Vec<usize> = Vec::new();
                for &x in &i_set {
                    if j_set.contains(&x) {
                        continue;
                    }
                    let i_minus: Vec<usize> =
                        i_set.iter().cloned().filter(|&e| e != x).collect();
                    let jx = sorted_union(&j_set, &[x]);
                    if self.family.contains(&i_minus) && self.family.contains(&jx) {
                        i1.push(x);
                    }
                }
                if i1.len() == 2 {
                    let (a, b) = (i1[0], i1[1]);
                    let ia: Vec<usize> = i_set.iter().cloned().filter(|&e| e != a).collect();
                    let ib: Vec<usize> = i_set.iter().cloned().filter(|&e| e != b).collect();
                    let ja = sorted_union(&j_set, &[a]);
                    let jb = sorted_union(&j_set, &[b]);
                    if self.val(&ia, &ib)? != self.val(&jb, &ja)? {
                        return Ok((
                            self.fail(
                                "P4'",
                                &[(&ia, &ib), (&jb, &ja)],
                                "two-pivot coordinates differ",
                            ),
                            Self::pass("P5'"),
                        ));
                    }
                } else if i1.len() >= 3 {
                    for &z in &i1 {
                        let iz: Vec<usize> =
                            i_set.iter().cloned().filter(|&e| e != z).collect();
                        let jz = sorted_union(&j_set, &[z]);
                        let mut sum = FormalSum::from_values(vec![minus_one.clone()]);
                        for &x in &i1 {
                            if x == z {
                                continue;
                            }
                            let ix: Vec<usize> =
                                i_set.iter().cloned().filter(|&e| e != x).collect();
                            let jx = sorted_union(&j_set, &[x]);
                            sum.push(chain(
                                &self.tract,
                                self.chirality,
                                &[self.val(&ix, &iz)?, self.val(&jx, &jz)?],
                            )?);
                        }
                        if !self.tract.is_null(&sum)? {
                            return Ok((
                                Self::pass("P4'"),
                                self.fail(
                                    "P5'",
                                    &[(&i_set, &j_set), (&iz, &jz)],
                                    "multi-term pivot sum is not null",
                                ),
                            ));
                        }
                    }
                }
            }
        }
        Ok((Self::pass("P4'"), Self::pass("P5'")))
    }
}

/// Reads coordinates off the cocircuits of a matroid through dual pivoting:
/// for adjacent bases `Fa, Fb` the cocircuit `Y` vanishing on `cl(F)` gives
/// `[Fa, Fb] = conj(Y(a)·Y(b)^{-1})`, products reversed for right matroids.
pub fn qp_from_circuits(m: &TMatroid) -> Result<QuasiPlucker> {
    let underlying = m.underlying()?;
    let dual = m.dual()?;
    let desc = m.tract().clone();
    let bases = underlying.bases();
    let family = BasisFamily::new(m.ground().clone(), bases)?;
    let mut values = BTreeMap::new();
    for (from, to) in family.adjacent_pairs() {
        let shared: BTreeSet<usize> = from
            .iter()
            .cloned()
            .filter(|e| to.binary_search(e).is_ok())
            .collect();
        let a = *from.iter().find(|e| !shared.contains(e)).unwrap();
        let b = *to.iter().find(|e| !shared.contains(e)).unwrap();
        let hyperplane = underlying.closure(&shared);
        let cocircuit = dual
            .circuits()
            .iter()
            .find(|y| y.zero_set() == hyperplane)
            .ok_or_else(|| {
                Error::Structure("no cocircuit vanishing on the hyperplane".into())
            })?;
        let ya = cocircuit.entry(a).clone();
        let yb_inv = desc.inv(cocircuit.entry(b))?;
        let ratio = chain(&desc, m.chirality(), &[ya, yb_inv])?;
        values.insert((from, to), desc.involute(&ratio)?);
    }
    QuasiPlucker::new(desc, m.chirality(), family, values)
}

/// Rebuilds the canonical cocircuit representatives from coordinates: for
/// each hyperplane `H` pick a maximal independent `J ⊆ H` and read the
/// entries of the cocircuit supported on `E\H` off `[Je, Je0]`.
pub fn cocircuits_from_qp(q: &QuasiPlucker) -> Result<Vec<TVector>> {
    let underlying = q.family().to_underlying()?;
    let desc = q.tract().clone();
    let ground = q.family().ground().clone();
    let mut out = Vec::new();
    for hyperplane in underlying.hyperplanes() {
        let j: Vec<usize> = underlying
            .max_independent_subset(&hyperplane)
            .into_iter()
            .collect();
        let support: Vec<usize> =
            (0..ground.len()).filter(|e| !hyperplane.contains(e)).collect();
        let e0 = support[0];
        let je0 = sorted_union(&j, &[e0]);
        let mut entries = vec![TractValue::Zero; ground.len()];
        entries[e0] = desc.one();
        for &e in &support[1..] {
            let je = sorted_union(&j, &[e]);
            entries[e] = desc.involute(q.value(&je, &je0)?)?;
        }
        out.push(TVector::new(ground.clone(), entries)?);
    }
    out.sort_by(|a, b| {
        crate::matroid::vector_key(&desc, a).cmp(&crate::matroid::vector_key(&desc, b))
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matroid::AxiomMode;

    #[test]
    fn u23_coordinates_roundtrip() {
        let m = fixtures::sign_u23();
        let q = qp_from_circuits(&m).unwrap();
        assert!(q.check_axioms(AxiomMode::Strong).unwrap().all_hold());
        // P1 holds by construction; spot-check one reciprocal pair.
        let pairs = q.family().adjacent_pairs();
        let (a, b) = &pairs[0];
        let product = chain(
            q.tract(),
            q.chirality(),
            &[q.value(a, b).unwrap().clone(), q.value(b, a).unwrap().clone()],
        )
        .unwrap();
        assert_eq!(product, q.tract().one());

        let cocircuits = cocircuits_from_qp(&q).unwrap();
        assert_eq!(cocircuits, m.dual().unwrap().circuits().to_vec());
    }

    #[test]
    fn u24_all_ones_roundtrip() {
        // Rank-2 uniform matroid on 4 elements over the sign hyperfield.
        let m = fixtures::sign_u24();
        let q = qp_from_circuits(&m).unwrap();
        assert!(q.check_axioms(AxiomMode::Strong).unwrap().all_hold());
        let cocircuits = cocircuits_from_qp(&q).unwrap();
        assert_eq!(cocircuits, m.dual().unwrap().circuits().to_vec());
    }

    #[test]
    fn table2_pivot_value() {
        // With J = {y2, y3}: [Jy1, Jy4] = conj(Y23(y1)·Y23(y4)^{-1}) = 1.
        let cocircuit_side = fixtures::table2_cocircuit_matroid().unwrap();
        let m = cocircuit_side.dual().unwrap();
        let q = qp_from_circuits(&m).unwrap();
        let value = q.value(&[0, 1, 2], &[1, 2, 3]).unwrap();
        assert_eq!(*value, q.tract().one());
    }

    #[test]
    fn family_membership_and_underlying() {
        let m = fixtures::sign_u23();
        let q = qp_from_circuits(&m).unwrap();
        assert!(q.family().contains(&[0, 1]));
        assert_eq!(q.family().to_underlying().unwrap().rank(), 2);
    }
}
