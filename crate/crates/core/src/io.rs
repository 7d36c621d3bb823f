//! File formats: matroids, localizations and rescaling maps as JSON.
//!
//! Vectors serialize as objects keyed by ground labels in ground order, with
//! canonical value strings; reduced fractions, no whitespace. A canonical
//! representative's serialized form doubles as its identifier in σ files.

use serde_json::{json, Map, Value};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::extension::Localization;
use crate::matroid::{Chirality, TMatroid};
use crate::minors::RescalingMap;
use crate::tract::{TractDescriptor, TractValue};
use crate::tvec::{GroundSet, TVector};

pub fn vector_to_json(desc: &TractDescriptor, v: &TVector) -> Value {
    let mut map = Map::new();
    for (i, label) in v.ground().labels().iter().enumerate() {
        map.insert(label.clone(), Value::String(desc.format_value(v.entry(i))));
    }
    Value::Object(map)
}

pub fn vector_from_json(
    desc: &TractDescriptor,
    ground: &Arc<GroundSet>,
    value: &Value,
) -> Result<TVector> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("vector must be a JSON object".into()))?;
    let mut entries = vec![TractValue::Zero; ground.len()];
    let mut seen = vec![false; ground.len()];
    for (label, entry) in obj {
        let idx = ground.index_of(label)?;
        let s = entry
            .as_str()
            .ok_or_else(|| Error::Parse(format!("entry {label:?} must be a string")))?;
        entries[idx] = desc.parse_value(s)?;
        seen[idx] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::Parse(format!(
            "vector is missing an entry for {:?}",
            ground.label(missing)
        )));
    }
    TVector::new(ground.clone(), entries)
}

pub fn matroid_to_json(m: &TMatroid) -> Value {
    let desc = m.tract();
    json!({
        "tract": desc,
        "chirality": match m.chirality() { Chirality::Left => "left", Chirality::Right => "right" },
        "ground": m.ground().labels(),
        "circuits": m.circuits().iter().map(|c| vector_to_json(desc, c)).collect::<Vec<_>>(),
    })
}

pub fn matroid_from_json(value: &Value) -> Result<TMatroid> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("matroid file must be a JSON object".into()))?;
    let tract: TractDescriptor = serde_json::from_value(
        obj.get("tract")
            .ok_or_else(|| Error::Parse("matroid file needs a \"tract\"".into()))?
            .clone(),
    )
    .map_err(|e| Error::Parse(format!("bad tract descriptor: {e}")))?;
    let chirality = match obj.get("chirality").and_then(Value::as_str) {
        Some("left") => Chirality::Left,
        Some("right") => Chirality::Right,
        other => {
            return Err(Error::Parse(format!(
                "chirality must be \"left\" or \"right\", got {other:?}"
            )))
        }
    };
    let ground_labels: Vec<String> = obj
        .get("ground")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("matroid file needs a \"ground\" array".into()))?
        .iter()
        .map(|l| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse("ground labels must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let ground = GroundSet::new(ground_labels)?;
    let circuits = obj
        .get("circuits")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("matroid file needs a \"circuits\" array".into()))?
        .iter()
        .map(|c| vector_from_json(&tract, &ground, c))
        .collect::<Result<Vec<_>>>()?;
    TMatroid::new(tract, chirality, ground, circuits)
}

/// σ files key values by the serialized canonical cocircuit representative.
pub fn sigma_to_json(loc: &Localization) -> Value {
    let desc = loc.base().tract();
    let mut values = Map::new();
    for (i, rep) in loc.cocircuits().circuits().iter().enumerate() {
        values.insert(
            rep.id_string(desc),
            Value::String(desc.format_value(loc.class_value(i))),
        );
    }
    json!({ "p": loc.p(), "values": values })
}

pub fn sigma_from_json(base: &TMatroid, value: &Value) -> Result<Localization> {
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Parse("σ file must be a JSON object".into()))?;
    let p = obj
        .get("p")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("σ file needs the new label \"p\"".into()))?;
    let values = obj
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::Parse("σ file needs a \"values\" object".into()))?;
    let desc = base.tract();
    let mut raw = Vec::new();
    for (key, v) in values {
        let key_value: Value = serde_json::from_str(key)
            .map_err(|e| Error::Parse(format!("σ key is not a vector literal: {e}")))?;
        let vector = vector_from_json(desc, base.ground(), &key_value)?;
        let s = v
            .as_str()
            .ok_or_else(|| Error::Parse("σ values must be strings".into()))?;
        raw.push((vector, desc.parse_value(s)?));
    }
    Localization::new(base.clone(), p, &raw)
}

/// Rescaling maps are bare objects from labels to nonzero value strings.
pub fn rescaling_from_json(
    desc: &TractDescriptor,
    ground: &Arc<GroundSet>,
    value: &Value,
) -> Result<RescalingMap> {
    let vector = vector_from_json(desc, ground, value)?;
    RescalingMap::new(ground, vector.entries().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn matroid_roundtrip() {
        let m = fixtures::table2_cocircuit_matroid().unwrap();
        let encoded = matroid_to_json(&m);
        let decoded = matroid_from_json(&encoded).unwrap();
        assert_eq!(decoded, m);
        // Canonical text is stable.
        assert_eq!(
            serde_json::to_string(&encoded).unwrap(),
            serde_json::to_string(&matroid_to_json(&decoded)).unwrap()
        );
    }

    #[test]
    fn sigma_roundtrip() {
        let loc = fixtures::table2_sigma().unwrap();
        let encoded = sigma_to_json(&loc);
        let decoded = sigma_from_json(loc.base(), &encoded).unwrap();
        assert_eq!(decoded.class_values(), loc.class_values());
        assert_eq!(decoded.p(), "p");
    }

    #[test]
    fn parse_errors_carry_context() {
        let m = fixtures::sign_u23();
        let missing = serde_json::json!({"e1": "1"});
        assert!(vector_from_json(m.tract(), m.ground(), &missing).is_err());
        let bad = serde_json::json!({"tract": {"kind": "sign"}});
        assert!(matroid_from_json(&bad).is_err());
    }
}
