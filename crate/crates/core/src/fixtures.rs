//! Reference fixtures: small matroids over various tracts together with the
//! localization data used throughout the tests and the command line `repro`
//! command.

use std::sync::Arc;

use crate::error::Result;
use crate::extension::Localization;
use crate::matroid::{Chirality, TMatroid};
use crate::tract::{TractDescriptor, TractValue};
use crate::tvec::{GroundSet, TVector};

/// Builds a vector by parsing entry strings against a descriptor.
pub fn vector(
    desc: &TractDescriptor,
    ground: &Arc<GroundSet>,
    entries: &[&str],
) -> Result<TVector> {
    let parsed = entries
        .iter()
        .map(|s| desc.parse_value(s))
        .collect::<Result<Vec<TractValue>>>()?;
    TVector::new(ground.clone(), parsed)
}

/// The rank-2 whirl of three points over the sign hyperfield, as a left
/// matroid with the single circuit class (1, -1, 1).
pub fn sign_u23() -> TMatroid {
    let desc = TractDescriptor::sign();
    let ground = GroundSet::new(["e1", "e2", "e3"]).unwrap();
    let circuit = vector(&desc, &ground, &["1", "-1", "1"]).unwrap();
    TMatroid::new(desc, Chirality::Left, ground, vec![circuit]).unwrap()
}

/// The uniform rank-2 matroid on four collinear points over the sign
/// hyperfield.
pub fn sign_u24() -> TMatroid {
    let desc = TractDescriptor::sign();
    let ground = GroundSet::new(["e1", "e2", "e3", "e4"]).unwrap();
    let rows = [
        ["1", "-1", "1", "0"],
        ["1", "-1", "0", "1"],
        ["1", "0", "-1", "1"],
        ["0", "1", "-1", "1"],
    ];
    let circuits = rows
        .iter()
        .map(|r| vector(&desc, &ground, r).unwrap())
        .collect();
    TMatroid::new(desc, Chirality::Left, ground, circuits).unwrap()
}

/// The uniform rank-3 matroid on four elements over the sign hyperfield,
/// with the alternating circuit.
pub fn sign_u34() -> TMatroid {
    let desc = TractDescriptor::sign();
    let ground = GroundSet::new(["y1", "y2", "y3", "y4"]).unwrap();
    let circuit = vector(&desc, &ground, &["1", "-1", "1", "-1"]).unwrap();
    TMatroid::new(desc, Chirality::Left, ground, vec![circuit]).unwrap()
}

/// The five phase values of the cancellation counterexample:
/// a = 3/8, b = 1/8, x = 1/12, y = 1/3, z = 1/4 of a turn.
pub fn counterexample_values() -> [TractValue; 5] {
    let p = TractDescriptor::phase();
    [
        p.parse_value("ph:3/8").unwrap(),
        p.parse_value("ph:1/8").unwrap(),
        p.parse_value("ph:1/12").unwrap(),
        p.parse_value("ph:1/3").unwrap(),
        p.parse_value("ph:1/4").unwrap(),
    ]
}

/// The six cocircuit representatives of the rank-3 counterexample matroid
/// over the phase hyperfield, as the circuits of a right matroid (the dual
/// side the localization lives on).
pub fn table2_cocircuit_matroid() -> Result<TMatroid> {
    let desc = TractDescriptor::phase();
    let ground = GroundSet::new(["y1", "y2", "y3", "y4"])?;
    // a = 3/8 and b = 1/8 turns; a^{-1} = 5/8, b^{-1} = 7/8, -a = 7/8.
    let rows = [
        ["1", "0", "0", "1"],           // zero set {y2, y3}
        ["0", "1", "0", "ph:7/8"],      // zero set {y1, y3}
        ["0", "0", "1", "ph:5/8"],      // zero set {y1, y2}
        ["1", "0", "ph:7/8", "0"],      // zero set {y2, y4}
        ["-1", "ph:1/8", "0", "0"],     // zero set {y3, y4}
        ["0", "ph:1/8", "ph:7/8", "0"], // zero set {y1, y4}
    ];
    let circuits = rows
        .iter()
        .map(|r| vector(&desc, &ground, r))
        .collect::<Result<Vec<_>>>()?;
    TMatroid::new(desc, Chirality::Right, ground, circuits)
}

/// The base matroid of the counterexample: rank 3 on four elements, the dual
/// of the cocircuit table.
pub fn table2_base_matroid() -> Result<TMatroid> {
    table2_cocircuit_matroid()?.dual()
}

/// The counterexample localization candidate on the base matroid: values
/// 1, 1, -1, x, y, z on the six cocircuit classes listed in the table.
pub fn table2_sigma() -> Result<Localization> {
    let desc = TractDescriptor::phase();
    let base = table2_base_matroid()?;
    let table = table2_cocircuit_matroid()?;
    let [_, _, x, y, z] = counterexample_values();
    let sigma = [
        desc.one(),
        desc.one(),
        desc.epsilon(),
        x,
        y,
        z,
    ];
    // The table rows are keys; equivariant transport handles the rows whose
    // canonical representative is rescaled.
    let ground = table.ground().clone();
    let rows = [
        ["1", "0", "0", "1"],
        ["0", "1", "0", "ph:7/8"],
        ["0", "0", "1", "ph:5/8"],
        ["1", "0", "ph:7/8", "0"],
        ["-1", "ph:1/8", "0", "0"],
        ["0", "ph:1/8", "ph:7/8", "0"],
    ];
    let raw: Vec<(TVector, TractValue)> = rows
        .iter()
        .zip(sigma)
        .map(|(r, v)| Ok((vector(&desc, &ground, r)?, v)))
        .collect::<Result<Vec<_>>>()?;
    Localization::new(base, "p", &raw)
}

/// A genuine localization on the rank-2 whirl: every cocircuit is assigned 1.
pub fn rank2_sign_localization() -> Result<Localization> {
    let desc = TractDescriptor::sign();
    let base = sign_u23();
    let dual = base.dual()?;
    let raw: Vec<(TVector, TractValue)> = dual
        .circuits()
        .iter()
        .map(|y| (y.clone(), desc.one()))
        .collect();
    Localization::new(base, "p", &raw)
}

/// The layered window descriptor used by the stringency and strong
/// cancellation fixtures.
pub fn layered_sign() -> TractDescriptor {
    TractDescriptor::layered(TractDescriptor::sign()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::AxiomMode;

    #[test]
    fn fixture_matroids_are_valid() {
        for m in [sign_u23(), sign_u24(), sign_u34()] {
            assert!(m.check_circuit_axioms(AxiomMode::Strong).unwrap().all_hold());
            let dual = m.dual().unwrap();
            assert!(dual.check_circuit_axioms(AxiomMode::Strong).unwrap().all_hold());
        }
    }

    #[test]
    fn table2_sigma_values_transport() {
        let loc = table2_sigma().unwrap();
        let desc = TractDescriptor::phase();
        let table = table2_cocircuit_matroid().unwrap();
        // σ on the table rows themselves gives back the listed values.
        let ground = table.ground().clone();
        let y23 = vector(&desc, &ground, &["1", "0", "0", "1"]).unwrap();
        assert_eq!(loc.sigma(&y23).unwrap(), desc.one());
        let y34 = vector(&desc, &ground, &["-1", "ph:1/8", "0", "0"]).unwrap();
        assert_eq!(loc.sigma(&y34).unwrap(), desc.parse_value("ph:1/3").unwrap());
        // Equivariance: σ(Y·α) = σ(Y)·α.
        let alpha = desc.parse_value("ph:1/24").unwrap();
        let scaled = y34.scale(&desc, &alpha, crate::tvec::Side::Right).unwrap();
        assert_eq!(
            loc.sigma(&scaled).unwrap(),
            desc.mul(&loc.sigma(&y34).unwrap(), &alpha).unwrap()
        );
    }
}
