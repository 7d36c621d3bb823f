//! The underlying (classical) matroid of a collection of circuit supports,
//! with memoized rank and closure oracles, plus the lattice of unions of
//! supports used for modularity.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::tvec::GroundSet;

/// Validates the classical circuit axioms on a family of supports: nonempty,
/// pairwise incomparable, and closed under elimination.
pub fn validate_circuit_supports(
    ground: &GroundSet,
    supports: &[BTreeSet<usize>],
) -> Result<()> {
    for c in supports {
        if c.is_empty() {
            return Err(Error::NotAMatroid("empty circuit support".into()));
        }
    }
    for (i, a) in supports.iter().enumerate() {
        for (j, b) in supports.iter().enumerate() {
            if i != j && a.is_subset(b) {
                return Err(Error::NotAMatroid(format!(
                    "support {} is contained in support {}",
                    format_support(ground, a),
                    format_support(ground, b),
                )));
            }
        }
    }
    for (i, a) in supports.iter().enumerate() {
        for b in supports.iter().skip(i + 1) {
            for &e in a.intersection(b) {
                let mut union: BTreeSet<usize> = a.union(b).cloned().collect();
                union.remove(&e);
                let found = supports.iter().any(|c| c.is_subset(&union));
                if !found {
                    return Err(Error::NotAMatroid(format!(
                        "no elimination of {} between {} and {}",
                        ground.label(e),
                        format_support(ground, a),
                        format_support(ground, b),
                    )));
                }
            }
        }
    }
    Ok(())
}

fn format_support(ground: &GroundSet, s: &BTreeSet<usize>) -> String {
    let labels: Vec<&str> = s.iter().map(|&i| ground.label(i)).collect();
    format!("{{{}}}", labels.join(","))
}

/// Rank, closure, bases, hyperplanes and cocircuit supports of a matroid
/// given by circuit supports. Ground sets are small; independence testing is
/// by circuit containment and everything above it is memoized.
#[derive(Debug)]
pub struct UnderlyingMatroid {
    ground: Arc<GroundSet>,
    circuit_supports: Vec<BTreeSet<usize>>,
    rank: usize,
    closure_memo: Mutex<BTreeMap<BTreeSet<usize>, BTreeSet<usize>>>,
}

impl UnderlyingMatroid {
    pub fn from_circuit_supports(
        ground: Arc<GroundSet>,
        supports: Vec<BTreeSet<usize>>,
    ) -> Result<UnderlyingMatroid> {
        validate_circuit_supports(&ground, &supports)?;
        let mut m = UnderlyingMatroid {
            ground,
            circuit_supports: supports,
            rank: 0,
            closure_memo: Mutex::new(BTreeMap::new()),
        };
        let full: BTreeSet<usize> = (0..m.ground.len()).collect();
        m.rank = m.rank_of(&full);
        Ok(m)
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn circuit_supports(&self) -> &[BTreeSet<usize>] {
        &self.circuit_supports
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_independent(&self, set: &BTreeSet<usize>) -> bool {
        !self.circuit_supports.iter().any(|c| c.is_subset(set))
    }

    /// Rank by greedy extension; valid because the supports satisfy the
    /// circuit axioms.
    pub fn rank_of(&self, set: &BTreeSet<usize>) -> usize {
        self.max_independent_subset(set).len()
    }

    /// The lexicographically first maximal independent subset of `set`.
    pub fn max_independent_subset(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut indep = BTreeSet::new();
        for &e in set {
            indep.insert(e);
            if !self.is_independent(&indep) {
                indep.remove(&e);
            }
        }
        indep
    }

    /// `cl(S) = {e | r(S ∪ e) = r(S)}`.
    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        if let Some(hit) = self.closure_memo.lock().unwrap().get(set) {
            return hit.clone();
        }
        let r = self.rank_of(set);
        let mut cl = BTreeSet::new();
        for e in 0..self.ground.len() {
            if set.contains(&e) {
                cl.insert(e);
                continue;
            }
            let mut with = set.clone();
            with.insert(e);
            if self.rank_of(&with) == r {
                cl.insert(e);
            }
        }
        self.closure_memo.lock().unwrap().insert(set.clone(), cl.clone());
        cl
    }

    /// All bases, in lexicographic order.
    pub fn bases(&self) -> Vec<BTreeSet<usize>> {
        let mut out = Vec::new();
        let n = self.ground.len();
        let mut subset: Vec<usize> = Vec::new();
        self.collect_bases(0, n, &mut subset, &mut out);
        out
    }

    fn collect_bases(
        &self,
        from: usize,
        n: usize,
        subset: &mut Vec<usize>,
        out: &mut Vec<BTreeSet<usize>>,
    ) {
        if subset.len() == self.rank {
            let set: BTreeSet<usize> = subset.iter().cloned().collect();
            if self.is_independent(&set) {
                out.push(set);
            }
            return;
        }
        if from >= n || n - from < self.rank - subset.len() {
            return;
        }
        subset.push(from);
        self.collect_bases(from + 1, n, subset, out);
        subset.pop();
        self.collect_bases(from + 1, n, subset, out);
    }

    /// Flats of rank `rank - 1`, as closures of independent sets of size
    /// `rank - 1`, deduplicated and sorted.
    pub fn hyperplanes(&self) -> Vec<BTreeSet<usize>> {
        self.flats_of_rank(self.rank.saturating_sub(1))
    }

    /// Flats of the given rank (closures of independent sets of that size).
    pub fn flats_of_rank(&self, k: usize) -> Vec<BTreeSet<usize>> {
        if self.rank == 0 && k > 0 {
            return Vec::new();
        }
        let mut flats = BTreeSet::new();
        let n = self.ground.len();
        let mut stack: Vec<(usize, BTreeSet<usize>)> = vec![(0, BTreeSet::new())];
        while let Some((from, set)) = stack.pop() {
            if set.len() == k {
                flats.insert(self.closure(&set));
                continue;
            }
            for e in from..n {
                let mut with = set.clone();
                with.insert(e);
                if self.is_independent(&with) {
                    stack.push((e + 1, with));
                }
            }
        }
        flats.into_iter().collect()
    }

    /// Complements of hyperplanes, sorted.
    pub fn cocircuit_supports(&self) -> Vec<BTreeSet<usize>> {
        let n = self.ground.len();
        let mut out: Vec<BTreeSet<usize>> = self
            .hyperplanes()
            .into_iter()
            .map(|h| (0..n).filter(|e| !h.contains(e)).collect())
            .collect();
        out.sort();
        out
    }

    /// Classical equality: same ground labels and same circuit supports.
    pub fn same_matroid(&self, other: &UnderlyingMatroid) -> bool {
        let mut a = self.circuit_supports.to_vec();
        let mut b = other.circuit_supports.to_vec();
        a.sort();
        b.sort();
        self.ground.labels() == other.ground.labels() && a == b
    }
}

/// Height of the join of `members` in the lattice of unions of `supports`,
/// compared against the family size. The lattice elements below the join are
/// generated by closing the atoms under union; the height is the longest
/// strictly increasing chain from the bottom.
pub fn is_modular_family(supports: &[BTreeSet<usize>], members: &[usize]) -> bool {
    if members.is_empty() {
        return false;
    }
    let mut distinct: BTreeSet<&BTreeSet<usize>> = BTreeSet::new();
    for &m in members {
        distinct.insert(&supports[m]);
    }
    if distinct.len() != members.len() {
        return false;
    }
    let join: BTreeSet<usize> = members
        .iter()
        .flat_map(|&m| supports[m].iter().cloned())
        .collect();
    lattice_height(supports, &join) == members.len()
}

/// Longest chain from the empty union to `join` among unions of supports
/// contained in `join`.
pub fn lattice_height(supports: &[BTreeSet<usize>], join: &BTreeSet<usize>) -> usize {
    let atoms: Vec<&BTreeSet<usize>> = {
        let mut seen = BTreeSet::new();
        supports
            .iter()
            .filter(|c| c.is_subset(join) && seen.insert((*c).clone()))
            .collect()
    };
    // Generate every distinct union of atoms (all lie inside `join`).
    let mut elements: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    elements.insert(BTreeSet::new());
    let mut frontier: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    while let Some(u) = frontier.pop() {
        for a in &atoms {
            let mut bigger: BTreeSet<usize> = u.union(a).cloned().collect();
            if !elements.contains(&bigger) {
                elements.insert(bigger.clone());
                frontier.push(std::mem::take(&mut bigger));
            }
        }
    }
    // Longest-chain DP in order of increasing size.
    let ordered: Vec<&BTreeSet<usize>> = {
        let mut v: Vec<&BTreeSet<usize>> = elements.iter().collect();
        v.sort_by_key(|s| s.len());
        v
    };
    let mut height: BTreeMap<&BTreeSet<usize>, usize> = BTreeMap::new();
    for (i, u) in ordered.iter().enumerate() {
        let mut h = 0;
        for v in ordered.iter().take(i) {
            if v.len() < u.len() && v.is_subset(u) {
                h = h.max(height[v] + 1);
            }
        }
        height.insert(u, h);
    }
    height.get(join).copied().unwrap_or(0)
}
