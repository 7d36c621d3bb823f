//! Vectors in `T^E`: supports, scalar actions, hypersum membership, and the
//! involution-twisted product that drives orthogonality.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::tract::{FormalSum, TractDescriptor, TractValue};

/// An ordered finite set of distinct element labels. The order is fixed at
/// construction and used everywhere canonical behavior matters: vector
/// serialization, representative scaling, witness tie-breaking.
#[derive(Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Arc<GroundSet>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::Ground("ground set is empty".into()));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::Ground(format!("duplicate label {l:?}")));
            }
        }
        Ok(Arc::new(GroundSet { labels }))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Ground(format!("unknown label {label:?}")))
    }
}

/// Which side a scalar acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A total map from ground elements to tract values.
#[derive(Clone, PartialEq, Eq)]
pub struct TVector {
    ground: Arc<GroundSet>,
    entries: Vec<TractValue>,
}

impl TVector {
    pub fn new(ground: Arc<GroundSet>, entries: Vec<TractValue>) -> Result<TVector> {
        if entries.len() != ground.len() {
            return Err(Error::Ground(format!(
                "vector has {} entries for a ground set of size {}",
                entries.len(),
                ground.len()
            )));
        }
        Ok(TVector { ground, entries })
    }

    pub fn zero(ground: Arc<GroundSet>) -> TVector {
        let entries = vec![TractValue::Zero; ground.len()];
        TVector { ground, entries }
    }

    pub fn ground(&self) -> &Arc<GroundSet> {
        &self.ground
    }

    pub fn entries(&self) -> &[TractValue] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> &TractValue {
        &self.entries[i]
    }

    pub fn get(&self, label: &str) -> Result<&TractValue> {
        Ok(&self.entries[self.ground.index_of(label)?])
    }

    /// Index set `{e | X(e) != 0}`.
    pub fn support(&self) -> BTreeSet<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Index set `{e | X(e) = 0}`.
    pub fn zero_set(&self) -> BTreeSet<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| v.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(TractValue::is_zero)
    }

    fn same_ground(&self, other: &TVector) -> Result<()> {
        if Arc::ptr_eq(&self.ground, &other.ground) || self.ground == other.ground {
            Ok(())
        } else {
            Err(Error::Ground("vectors live on different ground sets".into()))
        }
    }

    /// Componentwise scalar action. Zero scalars are rejected: they would
    /// collapse a circuit to a smaller support and break the scalar orbits.
    pub fn scale(
        &self,
        desc: &TractDescriptor,
        alpha: &TractValue,
        side: Side,
    ) -> Result<TVector> {
        if alpha.is_zero() {
            return Err(Error::Domain("scaling by zero".into()));
        }
        let entries = self
            .entries
            .iter()
            .map(|v| match side {
                Side::Left => desc.mul(alpha, v),
                Side::Right => desc.mul(v, alpha),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TVector { ground: self.ground.clone(), entries })
    }

    /// Whether `Z ∈ X + Y`, i.e. `X(e) + Y(e) - Z(e)` is null for every `e`.
    pub fn sum_contains(
        &self,
        desc: &TractDescriptor,
        other: &TVector,
        candidate: &TVector,
    ) -> Result<bool> {
        self.same_ground(other)?;
        self.same_ground(candidate)?;
        for i in 0..self.entries.len() {
            let sum = FormalSum::from_values(vec![
                self.entries[i].clone(),
                other.entries[i].clone(),
                desc.neg(&candidate.entries[i])?,
            ]);
            if !desc.is_null(&sum)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The product `X·Y = Σ X(e)·conj(Y(e))` as a formal sum, with the terms
    /// reversed to `conj(Y(e))·X(e)` for right matroids, and whether it is
    /// null (orthogonality).
    pub fn pairing(
        &self,
        desc: &TractDescriptor,
        other: &TVector,
        order: MulOrder,
    ) -> Result<(FormalSum, bool)> {
        self.same_ground(other)?;
        let mut sum = FormalSum::new();
        for i in 0..self.entries.len() {
            let x = &self.entries[i];
            let y = desc.involute(&other.entries[i])?;
            let term = match order {
                MulOrder::Direct => desc.mul(x, &y)?,
                MulOrder::Reversed => desc.mul(&y, x)?,
            };
            sum.push(term);
        }
        let orthogonal = desc.is_null(&sum)?;
        Ok((sum, orthogonal))
    }

    /// Serializes in ground order with canonical value strings; this exact
    /// string doubles as the identifier of a canonical representative.
    pub fn id_string(&self, desc: &TractDescriptor) -> String {
        let mut out = String::from("{");
        for (i, label) in self.ground.labels().iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push('"');
            out.push_str(label);
            out.push_str("\":\"");
            out.push_str(&desc.format_value(&self.entries[i]));
            out.push('"');
        }
        out.push('}');
        out
    }
}

/// Multiplication order in pairings: left matroids pair as `X(e)·conj(Y(e))`,
/// right matroids reverse every product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulOrder {
    Direct,
    Reversed,
}

impl fmt::Debug for TVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TVector[")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}={:?}", self.ground.label(i), v)?;
        }
        write!(f, "]")
    }
}
