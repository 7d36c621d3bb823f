//! Skew tracts and skew hyperfields with exact arithmetic.
//!
//! A skew tract is a multiplicative group `G` together with a set `N_G` of
//! formal sums over `G` that are declared to "sum to zero". We write
//! `T = G ∪ {0}`. The shipped instances are:
//!
//! * the Krasner hyperfield `{0, 1}`,
//! * the sign hyperfield `{0, 1, -1}`,
//! * the phase hyperfield (unit circle restricted to rational turns),
//! * the finite fields `GF(p)` viewed as hyperfields with singleton sums,
//! * the hyperfield on the dihedral group of order 6,
//! * layerings `R ⋊ ℤ` of a base hyperfield along the integers.
//!
//! Everything is immutable and exact; the null-sum predicate [`TractDescriptor::is_null`]
//! is the single source of truth that the rest of the crate builds on.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::error::{Error, Result};
use crate::turn::{phase_null, Turn};

/// A nonzero element of a tract, tagged by instance.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElem {
    /// The only unit of the Krasner hyperfield.
    Unit,
    /// `+1` or `-1` in the sign hyperfield; `true` means negative.
    Sign { negative: bool },
    /// A rational point of the unit circle.
    Phase(Turn),
    /// A nonzero residue mod a prime.
    GFp { p: u32, r: u32 },
    /// A word `r^i s^j` in the dihedral group of order 6.
    D6 { rot: u8, flip: bool },
    /// A pair (base unit, integer layer) in a layering `R ⋊ ℤ`.
    Layered { base: Box<GroupElem>, layer: i64 },
}

/// An element of `T = G ∪ {0}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TractValue {
    Zero,
    NonZero(GroupElem),
}

impl TractValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, TractValue::Zero)
    }

    pub fn group(&self) -> Option<&GroupElem> {
        match self {
            TractValue::Zero => None,
            TractValue::NonZero(g) => Some(g),
        }
    }

    pub fn expect_group(&self) -> Result<&GroupElem> {
        self.group()
            .ok_or_else(|| Error::Domain("expected a nonzero tract value".into()))
    }
}

impl From<GroupElem> for TractValue {
    fn from(g: GroupElem) -> Self {
        TractValue::NonZero(g)
    }
}

/// Which instance a descriptor denotes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TractKind {
    Krasner,
    Sign,
    Phase,
    GFp(u32),
    D6,
    Layered(Box<TractKind>),
}

/// How the involution acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvolutionKind {
    Identity,
    Conjugation,
}

/// An immutable handle to a tract instance. All arithmetic goes through it so
/// that values from different instances can never be mixed silently.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TractDescriptor {
    kind: TractKind,
}

/// A finite multiset of nonzero tract values, representing an element of the
/// group semiring `ℕ[G]`. Zero terms are dropped on construction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FormalSum {
    terms: Vec<GroupElem>,
}

impl FormalSum {
    pub fn new() -> FormalSum {
        FormalSum { terms: Vec::new() }
    }

    /// Builds a sum from values, discarding zeros.
    pub fn from_values<I: IntoIterator<Item = TractValue>>(values: I) -> FormalSum {
        let terms = values
            .into_iter()
            .filter_map(|v| match v {
                TractValue::Zero => None,
                TractValue::NonZero(g) => Some(g),
            })
            .collect();
        FormalSum { terms }
    }

    pub fn push(&mut self, v: TractValue) {
        if let TractValue::NonZero(g) = v {
            self.terms.push(g);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[GroupElem] {
        &self.terms
    }

    /// Multiset equality, ignoring term order.
    pub fn same_multiset(&self, other: &FormalSum) -> bool {
        let mut a = self.terms.clone();
        let mut b = other.terms.clone();
        a.sort();
        b.sort();
        a == b
    }
}

impl TractDescriptor {
    pub fn new(kind: TractKind) -> Result<TractDescriptor> {
        if let TractKind::GFp(p) = kind {
            if !is_prime(p) {
                return Err(Error::Domain(format!("gfp modulus {p} is not prime")));
            }
        }
        if let TractKind::Layered(base) = &kind {
            match **base {
                TractKind::Krasner | TractKind::Sign | TractKind::GFp(_) => {}
                _ => {
                    return Err(Error::Domain(
                        "layering is supported over krasner, sign and gfp bases".into(),
                    ))
                }
            }
        }
        Ok(TractDescriptor { kind })
    }

    pub fn krasner() -> TractDescriptor {
        TractDescriptor { kind: TractKind::Krasner }
    }

    pub fn sign() -> TractDescriptor {
        TractDescriptor { kind: TractKind::Sign }
    }

    pub fn phase() -> TractDescriptor {
        TractDescriptor { kind: TractKind::Phase }
    }

    pub fn gfp(p: u32) -> Result<TractDescriptor> {
        TractDescriptor::new(TractKind::GFp(p))
    }

    pub fn d6() -> TractDescriptor {
        TractDescriptor { kind: TractKind::D6 }
    }

    /// The layering of `base` along the integers with trivial action; the
    /// layer map is `(r, k) -> k` and lower layers are absorbed whenever a
    /// same-layer sum can vanish.
    pub fn layered(base: TractDescriptor) -> Result<TractDescriptor> {
        TractDescriptor::new(TractKind::Layered(Box::new(base.kind)))
    }

    pub fn kind(&self) -> &TractKind {
        &self.kind
    }

    pub fn base(&self) -> Option<TractDescriptor> {
        match &self.kind {
            TractKind::Layered(b) => Some(TractDescriptor { kind: (**b).clone() }),
            _ => None,
        }
    }

    pub fn involution_kind(&self) -> InvolutionKind {
        match self.kind {
            TractKind::Phase => InvolutionKind::Conjugation,
            _ => InvolutionKind::Identity,
        }
    }

    /// Whether multiplication is commutative.
    pub fn is_commutative(&self) -> bool {
        !matches!(self.kind, TractKind::D6)
    }

    /// True when stringency is known a priori for this instance.
    pub fn known_stringent(&self) -> bool {
        match &self.kind {
            TractKind::Krasner | TractKind::Sign | TractKind::GFp(_) => true,
            TractKind::Layered(_) => true,
            TractKind::Phase | TractKind::D6 => false,
        }
    }

    pub fn one(&self) -> TractValue {
        TractValue::NonZero(self.one_elem())
    }

    fn one_elem(&self) -> GroupElem {
        match &self.kind {
            TractKind::Krasner => GroupElem::Unit,
            TractKind::Sign => GroupElem::Sign { negative: false },
            TractKind::Phase => GroupElem::Phase(Turn::ZERO),
            TractKind::GFp(p) => GroupElem::GFp { p: *p, r: 1 },
            TractKind::D6 => GroupElem::D6 { rot: 0, flip: false },
            TractKind::Layered(base) => GroupElem::Layered {
                base: Box::new(TractDescriptor { kind: (**base).clone() }.one_elem()),
                layer: 0,
            },
        }
    }

    /// The unique `ε` with `1 + ε` null.
    pub fn epsilon(&self) -> TractValue {
        let one = self.one_elem();
        TractValue::NonZero(self.neg_elem(&one))
    }

    /// Validates that a value belongs to this instance.
    pub fn check_value(&self, v: &TractValue) -> Result<()> {
        match v {
            TractValue::Zero => Ok(()),
            TractValue::NonZero(g) => self.check_elem(g),
        }
    }

    fn check_elem(&self, g: &GroupElem) -> Result<()> {
        let ok = match (&self.kind, g) {
            (TractKind::Krasner, GroupElem::Unit) => true,
            (TractKind::Sign, GroupElem::Sign { .. }) => true,
            (TractKind::Phase, GroupElem::Phase(_)) => true,
            (TractKind::GFp(p), GroupElem::GFp { p: q, r }) => p == q && *r >= 1 && r < q,
            (TractKind::D6, GroupElem::D6 { rot, .. }) => *rot < 3,
            (TractKind::Layered(base), GroupElem::Layered { base: b, .. }) => {
                return TractDescriptor { kind: (**base).clone() }.check_elem(b);
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::TractMismatch {
                expected: self.to_string(),
                found: format!("{g:?}"),
            })
        }
    }

    /// Group multiplication extended by absorption (`x·0 = 0·x = 0`).
    pub fn mul(&self, x: &TractValue, y: &TractValue) -> Result<TractValue> {
        self.check_value(x)?;
        self.check_value(y)?;
        match (x, y) {
            (TractValue::Zero, _) | (_, TractValue::Zero) => Ok(TractValue::Zero),
            (TractValue::NonZero(a), TractValue::NonZero(b)) => {
                Ok(TractValue::NonZero(self.mul_elem(a, b)))
            }
        }
    }

    fn mul_elem(&self, a: &GroupElem, b: &GroupElem) -> GroupElem {
        match (a, b) {
            (GroupElem::Unit, GroupElem::Unit) => GroupElem::Unit,
            (GroupElem::Sign { negative: m }, GroupElem::Sign { negative: n }) => {
                GroupElem::Sign { negative: m != n }
            }
            (GroupElem::Phase(s), GroupElem::Phase(t)) => GroupElem::Phase(s.add(t)),
            (GroupElem::GFp { p, r }, GroupElem::GFp { r: s, .. }) => GroupElem::GFp {
                p: *p,
                r: ((*r as u64 * *s as u64) % *p as u64) as u32,
            },
            (GroupElem::D6 { rot: i, flip: j }, GroupElem::D6 { rot: k, flip: l }) => {
                // s·r = r^{-1}·s, so r^i s^j · r^k s^l = r^{i ± k} s^{j+l}.
                let rot = if *j { (i + 3 - k) % 3 } else { (i + k) % 3 };
                GroupElem::D6 { rot, flip: j != l }
            }
            (
                GroupElem::Layered { base: r, layer: k },
                GroupElem::Layered { base: s, layer: l },
            ) => {
                let base = self
                    .base()
                    .expect("layered value in layered tract")
                    .mul_elem(r, s);
                GroupElem::Layered { base: Box::new(base), layer: k + l }
            }
            _ => unreachable!("mixed kinds survive check_value"),
        }
    }

    /// Multiplicative inverse; zero is rejected.
    pub fn inv(&self, x: &TractValue) -> Result<TractValue> {
        self.check_value(x)?;
        match x {
            TractValue::Zero => Err(Error::Domain("inverse of zero".into())),
            TractValue::NonZero(g) => Ok(TractValue::NonZero(self.inv_elem(g))),
        }
    }

    pub(crate) fn inv_elem(&self, g: &GroupElem) -> GroupElem {
        match g {
            GroupElem::Unit => GroupElem::Unit,
            GroupElem::Sign { negative } => GroupElem::Sign { negative: *negative },
            GroupElem::Phase(t) => GroupElem::Phase(t.inv()),
            GroupElem::GFp { p, r } => GroupElem::GFp { p: *p, r: mod_inverse(*r, *p) },
            GroupElem::D6 { rot, flip } => {
                if *flip {
                    g.clone()
                } else {
                    GroupElem::D6 { rot: (3 - rot) % 3, flip: false }
                }
            }
            GroupElem::Layered { base, layer } => GroupElem::Layered {
                base: Box::new(
                    self.base().expect("layered value in layered tract").inv_elem(base),
                ),
                layer: -layer,
            },
        }
    }

    /// The hyperinverse `-x = ε·x`.
    pub fn neg(&self, x: &TractValue) -> Result<TractValue> {
        self.check_value(x)?;
        match x {
            TractValue::Zero => Ok(TractValue::Zero),
            TractValue::NonZero(g) => Ok(TractValue::NonZero(self.neg_elem(g))),
        }
    }

    fn neg_elem(&self, g: &GroupElem) -> GroupElem {
        match g {
            GroupElem::Unit => GroupElem::Unit,
            GroupElem::Sign { negative } => GroupElem::Sign { negative: !negative },
            GroupElem::Phase(t) => GroupElem::Phase(t.antipode()),
            GroupElem::GFp { p, r } => GroupElem::GFp { p: *p, r: p - r },
            GroupElem::D6 { .. } => g.clone(),
            GroupElem::Layered { base, layer } => GroupElem::Layered {
                base: Box::new(
                    self.base().expect("layered value in layered tract").neg_elem(base),
                ),
                layer: *layer,
            },
        }
    }

    /// The involution of the tract; conjugation on phases, identity elsewhere.
    pub fn involute(&self, x: &TractValue) -> Result<TractValue> {
        self.check_value(x)?;
        match x {
            TractValue::Zero => Ok(TractValue::Zero),
            TractValue::NonZero(GroupElem::Phase(t)) => {
                Ok(TractValue::NonZero(GroupElem::Phase(t.conj())))
            }
            other => Ok(other.clone()),
        }
    }

    /// Whether the formal sum lies in the null set `N_G`.
    pub fn is_null(&self, s: &FormalSum) -> Result<bool> {
        for t in s.terms() {
            self.check_elem(t)?;
        }
        Ok(self.null_unchecked(s.terms()))
    }

    fn null_unchecked(&self, terms: &[GroupElem]) -> bool {
        match &self.kind {
            TractKind::Krasner => terms.len() != 1,
            TractKind::Sign => {
                if terms.is_empty() {
                    return true;
                }
                let pos = terms.iter().any(|g| matches!(g, GroupElem::Sign { negative: false }));
                let neg = terms.iter().any(|g| matches!(g, GroupElem::Sign { negative: true }));
                pos && neg
            }
            TractKind::Phase => {
                let turns: Vec<Turn> = terms
                    .iter()
                    .map(|g| match g {
                        GroupElem::Phase(t) => *t,
                        _ => unreachable!(),
                    })
                    .collect();
                phase_null(&turns)
            }
            TractKind::GFp(p) => {
                let sum = terms.iter().fold(0u64, |acc, g| match g {
                    GroupElem::GFp { r, .. } => (acc + *r as u64) % *p as u64,
                    _ => unreachable!(),
                });
                sum == 0
            }
            TractKind::D6 => match terms.len() {
                0 => true,
                1 => false,
                // x ⊞ x = F contains zero; x ⊞ y for x ≠ y misses it, but any
                // third term passes through the full carrier again.
                2 => terms[0] == terms[1],
                _ => true,
            },
            TractKind::Layered(base) => {
                if terms.is_empty() {
                    return true;
                }
                let top = terms
                    .iter()
                    .map(|g| match g {
                        GroupElem::Layered { layer, .. } => *layer,
                        _ => unreachable!(),
                    })
                    .max()
                    .unwrap();
                // Null exactly when the top layer cancels in the base; the
                // absorption clause of the layered hyperaddition then swallows
                // every lower-layer term.
                let top_terms: Vec<GroupElem> = terms
                    .iter()
                    .filter_map(|g| match g {
                        GroupElem::Layered { base: b, layer } if *layer == top => {
                            Some((**b).clone())
                        }
                        _ => None,
                    })
                    .collect();
                TractDescriptor { kind: (**base).clone() }.null_unchecked(&top_terms)
            }
        }
    }

    /// Whether `z` lies in the iterated hypersum of `elements`.
    ///
    /// Uses reversibility: `z ∈ ⊞ elements` iff `elements + (-z)` is null.
    /// Hyperaddition is commutative in every shipped instance, which makes the
    /// iterated form of reversibility sound.
    pub fn hypersum_contains(&self, elements: &[TractValue], z: &TractValue) -> Result<bool> {
        for v in elements {
            self.check_value(v)?;
        }
        self.check_value(z)?;
        let mut sum = FormalSum::from_values(elements.iter().cloned());
        if !z.is_zero() {
            sum.push(self.neg(z)?);
        }
        self.is_null(&sum)
    }

    /// The full carrier `G` of a finite instance, in canonical order.
    pub fn carrier(&self) -> Option<Vec<GroupElem>> {
        match &self.kind {
            TractKind::Krasner => Some(vec![GroupElem::Unit]),
            TractKind::Sign => Some(vec![
                GroupElem::Sign { negative: false },
                GroupElem::Sign { negative: true },
            ]),
            TractKind::GFp(p) => {
                Some((1..*p).map(|r| GroupElem::GFp { p: *p, r }).collect())
            }
            TractKind::D6 => {
                let mut out = Vec::new();
                for flip in [false, true] {
                    for rot in 0..3 {
                        out.push(GroupElem::D6 { rot, flip });
                    }
                }
                Some(out)
            }
            TractKind::Phase | TractKind::Layered(_) => None,
        }
    }

    /// Canonical textual form of a value (bit-exact).
    pub fn format_value(&self, v: &TractValue) -> String {
        match v {
            TractValue::Zero => "0".into(),
            TractValue::NonZero(g) => format_elem(g),
        }
    }

    /// Parses the canonical textual form.
    pub fn parse_value(&self, s: &str) -> Result<TractValue> {
        let s: String = s
            .chars()
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let s = s.trim();
        if s == "0" {
            return Ok(TractValue::Zero);
        }
        let g = self.parse_elem(s)?;
        self.check_elem(&g)?;
        Ok(TractValue::NonZero(g))
    }

    fn parse_elem(&self, s: &str) -> Result<GroupElem> {
        let bad = || Error::Parse(format!("cannot read {s:?} as a value of {self}"));
        match &self.kind {
            TractKind::Krasner => {
                if s == "1" {
                    Ok(GroupElem::Unit)
                } else {
                    Err(bad())
                }
            }
            TractKind::Sign => match s {
                "1" => Ok(GroupElem::Sign { negative: false }),
                "-1" => Ok(GroupElem::Sign { negative: true }),
                _ => Err(bad()),
            },
            TractKind::Phase => {
                if s == "1" {
                    return Ok(GroupElem::Phase(Turn::ZERO));
                }
                if s == "-1" {
                    return Ok(GroupElem::Phase(Turn::HALF));
                }
                let body = s.strip_prefix("ph:").ok_or_else(bad)?;
                let (num, den) = match body.split_once('/') {
                    Some((n, d)) => (
                        n.parse::<i64>().map_err(|_| bad())?,
                        d.parse::<i64>().map_err(|_| bad())?,
                    ),
                    None => (body.parse::<i64>().map_err(|_| bad())?, 1),
                };
                Ok(GroupElem::Phase(Turn::new(num, den)?))
            }
            TractKind::GFp(p) => {
                let raw = s.parse::<i64>().map_err(|_| bad())?;
                let r = raw.rem_euclid(*p as i64) as u32;
                if r == 0 {
                    return Err(bad());
                }
                Ok(GroupElem::GFp { p: *p, r })
            }
            TractKind::D6 => match s {
                "1" => Ok(GroupElem::D6 { rot: 0, flip: false }),
                "r" => Ok(GroupElem::D6 { rot: 1, flip: false }),
                "r2" => Ok(GroupElem::D6 { rot: 2, flip: false }),
                "s" => Ok(GroupElem::D6 { rot: 0, flip: true }),
                "rs" => Ok(GroupElem::D6 { rot: 1, flip: true }),
                "r2s" => Ok(GroupElem::D6 { rot: 2, flip: true }),
                _ => Err(bad()),
            },
            TractKind::Layered(base) => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let (b, k) = inner.rsplit_once(',').ok_or_else(bad)?;
                let layer = k.trim().parse::<i64>().map_err(|_| bad())?;
                let base_desc = TractDescriptor { kind: (**base).clone() };
                let base_elem = base_desc.parse_elem(b.trim())?;
                Ok(GroupElem::Layered { base: Box::new(base_elem), layer })
            }
        }
    }
}

fn format_elem(g: &GroupElem) -> String {
    match g {
        GroupElem::Unit => "1".into(),
        GroupElem::Sign { negative: false } => "1".into(),
        GroupElem::Sign { negative: true } => "-1".into(),
        GroupElem::Phase(t) => {
            if *t == Turn::ZERO {
                "1".into()
            } else if *t == Turn::HALF {
                "-1".into()
            } else {
                format!("ph:{}/{}", t.numer(), t.denom())
            }
        }
        GroupElem::GFp { r, .. } => r.to_string(),
        GroupElem::D6 { rot, flip } => {
            let mut out = String::new();
            match rot {
                1 => out.push('r'),
                2 => out.push_str("r2"),
                _ => {}
            }
            if *flip {
                out.push('s');
            }
            if out.is_empty() {
                out.push('1');
            }
            out
        }
        GroupElem::Layered { base, layer } => format!("({},{})", format_elem(base), layer),
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_inverse(r: u32, p: u32) -> u32 {
    // Fermat: r^(p-2) mod p.
    let mut base = r as u64 % p as u64;
    let mut exp = p as u64 - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

impl fmt::Display for TractDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TractKind::Krasner => write!(f, "krasner"),
            TractKind::Sign => write!(f, "sign"),
            TractKind::Phase => write!(f, "phase"),
            TractKind::GFp(p) => write!(f, "gfp({p})"),
            TractKind::D6 => write!(f, "d6"),
            TractKind::Layered(b) => {
                write!(f, "layered({})", TractDescriptor { kind: (**b).clone() })
            }
        }
    }
}

impl Serialize for TractDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(None)?;
        match &self.kind {
            TractKind::Krasner => map.serialize_entry("kind", "krasner")?,
            TractKind::Sign => map.serialize_entry("kind", "sign")?,
            TractKind::Phase => map.serialize_entry("kind", "phase")?,
            TractKind::GFp(p) => {
                map.serialize_entry("kind", "gfp")?;
                map.serialize_entry("p", p)?;
            }
            TractKind::D6 => map.serialize_entry("kind", "d6")?,
            TractKind::Layered(base) => {
                map.serialize_entry("kind", "layered")?;
                match &**base {
                    TractKind::Krasner => map.serialize_entry("base", "krasner")?,
                    TractKind::Sign => map.serialize_entry("base", "sign")?,
                    TractKind::GFp(p) => {
                        map.serialize_entry("base", &serde_json::json!({"kind": "gfp", "p": p}))?
                    }
                    _ => unreachable!("layered bases are validated on construction"),
                }
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for TractDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        parse_descriptor(&value).map_err(D::Error::custom)
    }
}

fn parse_descriptor(value: &serde_json::Value) -> Result<TractDescriptor> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("tract descriptor must be an object".into()))?;
    let kind = obj
        .get("kind")
        .and_then(|k| k.as_str())
        .ok_or_else(|| Error::Parse("tract descriptor needs a \"kind\" string".into()))?;
    match kind {
        "krasner" => Ok(TractDescriptor::krasner()),
        "sign" => Ok(TractDescriptor::sign()),
        "phase" => Ok(TractDescriptor::phase()),
        "d6" => Ok(TractDescriptor::d6()),
        "gfp" => {
            let p = obj
                .get("p")
                .and_then(|p| p.as_u64())
                .ok_or_else(|| Error::Parse("gfp descriptor needs a prime \"p\"".into()))?;
            TractDescriptor::gfp(p as u32)
        }
        "layered" => {
            let base = obj
                .get("base")
                .ok_or_else(|| Error::Parse("layered descriptor needs a \"base\"".into()))?;
            let base = match base {
                serde_json::Value::String(s) => match s.as_str() {
                    "krasner" => TractDescriptor::krasner(),
                    "sign" => TractDescriptor::sign(),
                    other => {
                        return Err(Error::Parse(format!("unknown layered base {other:?}")))
                    }
                },
                other => parse_descriptor(other)?,
            };
            TractDescriptor::layered(base)
        }
        other => Err(Error::Parse(format!("unknown tract kind {other:?}"))),
    }
}
