//! Cross-module invariants: duality, orthogonality, modularity, minors, and
//! the circuit/coordinate correspondence on the shipped fixtures.

use std::collections::BTreeSet;

use tract_matroids::extension::{extend, is_localization, mod_cocircuit, Localization};
use tract_matroids::fixtures;
use tract_matroids::matroid::AxiomMode;
use tract_matroids::minors::minor;
use tract_matroids::qp::qp_from_circuits;
use tract_matroids::underlying::is_modular_family;
use tract_matroids::{MulOrder, TMatroid, TractValue};

fn fixture_matroids() -> Vec<TMatroid> {
    vec![
        fixtures::sign_u23(),
        fixtures::sign_u24(),
        fixtures::sign_u34(),
        fixtures::table2_base_matroid().unwrap(),
        fixtures::table2_cocircuit_matroid().unwrap(),
    ]
}

#[test]
fn full_circuit_cocircuit_orthogonality() {
    for m in fixture_matroids() {
        let dual = m.dual().unwrap();
        let order = match m.chirality() {
            tract_matroids::Chirality::Left => MulOrder::Direct,
            tract_matroids::Chirality::Right => MulOrder::Reversed,
        };
        for c in m.circuits() {
            for y in dual.circuits() {
                let (_, orthogonal) = c.pairing(m.tract(), y, order).unwrap();
                assert!(orthogonal, "{c:?} not orthogonal to {y:?}");
                // A circuit and a cocircuit never meet in exactly one element.
                let meet: BTreeSet<usize> =
                    c.support().intersection(&y.support()).cloned().collect();
                assert_ne!(meet.len(), 1);
            }
        }
    }
}

#[test]
fn duality_round_trip_and_rank_additivity() {
    for m in fixture_matroids() {
        let dual = m.dual().unwrap();
        assert_eq!(
            m.rank().unwrap() + dual.rank().unwrap(),
            m.ground().len(),
            "rank additivity"
        );
        assert_eq!(dual.dual().unwrap(), m, "double dual is the identity");
    }
}

#[test]
fn modular_pairs_match_the_rank_shortcut() {
    for m in fixture_matroids() {
        let dual = m.dual().unwrap();
        let supports = dual.circuit_supports();
        let underlying = m.underlying().unwrap();
        let n = m.ground().len();
        let d = underlying.rank();
        for i in 0..supports.len() {
            for j in (i + 1)..supports.len() {
                let union: BTreeSet<usize> =
                    supports[i].union(&supports[j]).cloned().collect();
                let rest: BTreeSet<usize> = (0..n).filter(|e| !union.contains(e)).collect();
                let lattice = is_modular_family(&supports, &[i, j]);
                let shortcut = underlying.rank_of(&rest) + 2 == d;
                assert_eq!(lattice, shortcut, "pair ({i},{j}) of {m:?}");
            }
        }
    }
}

/// For every modular cocircuit pair and shared element, a cocircuit exists
/// whose support avoids exactly the closure of a maximal independent subset
/// of the common zero set plus the element.
#[test]
fn modular_pairs_admit_pivot_cocircuits() {
    for m in fixture_matroids() {
        let dual = m.dual().unwrap();
        let supports = dual.circuit_supports();
        let underlying = m.underlying().unwrap();
        for i in 0..supports.len() {
            for j in (i + 1)..supports.len() {
                if !is_modular_family(&supports, &[i, j]) {
                    continue;
                }
                let zero_meet: BTreeSet<usize> = dual.circuits()[i]
                    .zero_set()
                    .intersection(&dual.circuits()[j].zero_set())
                    .cloned()
                    .collect();
                let independent = underlying.max_independent_subset(&zero_meet);
                assert_eq!(independent.len() + 2, underlying.rank());
                for &e in supports[i].intersection(&supports[j]) {
                    let mut flat = independent.clone();
                    flat.insert(e);
                    let closure = underlying.closure(&flat);
                    assert!(
                        dual.circuits().iter().any(|y| y.zero_set() == closure),
                        "no pivot cocircuit for element {e} of pair ({i},{j})"
                    );
                }
            }
        }
    }
}

#[test]
fn weak_circuit_axioms_match_weak_coordinate_axioms() {
    for m in fixture_matroids() {
        let circuits_ok = m.check_circuit_axioms(AxiomMode::Weak).unwrap().all_hold();
        assert!(circuits_ok);
        let qp = qp_from_circuits(&m).unwrap();
        assert!(qp.check_axioms(AxiomMode::Weak).unwrap().all_hold());
    }
}

#[test]
fn minor_operations_commute() {
    let m = fixtures::table2_cocircuit_matroid().unwrap();
    for delete in ["y1", "y2", "y3", "y4"] {
        for contract in ["y1", "y2", "y3", "y4"] {
            if delete == contract {
                continue;
            }
            let ab = minor(&minor(&m, &[delete], &[]).unwrap(), &[], &[contract]).unwrap();
            let ba = minor(&minor(&m, &[], &[contract]).unwrap(), &[delete], &[]).unwrap();
            assert_eq!(ab, ba);
        }
    }
}

#[test]
fn minor_underlying_is_the_classical_minor() {
    let m = fixtures::sign_u24();
    let contracted = minor(&m, &[], &["e1"]).unwrap();
    // U_{2,4} / e1 is the rank-1 uniform matroid on three elements.
    assert_eq!(contracted.rank().unwrap(), 1);
    assert_eq!(
        contracted.circuit_supports().len(),
        3,
        "all pairs of the remaining elements are circuits"
    );
    let deleted = minor(&m, &["e1"], &[]).unwrap();
    assert_eq!(deleted.rank().unwrap(), 2);
    assert_eq!(deleted.circuit_supports(), vec![BTreeSet::from([0, 1, 2])]);
}

/// The pivot ratios Y(y)·σ(Y)^{-1} used by the extension coordinates do not
/// depend on the representative chosen.
#[test]
fn pivot_ratios_are_representative_independent() {
    let loc = fixtures::table2_sigma().unwrap();
    let desc = loc.base().tract().clone();
    for (i, rep) in loc.cocircuits().circuits().iter().enumerate() {
        let sigma = loc.class_value(i).clone();
        if sigma.is_zero() {
            continue;
        }
        let alpha = desc.parse_value("ph:5/24").unwrap();
        let other = rep
            .scale(&desc, &alpha, tract_matroids::Side::Right)
            .unwrap();
        let sigma_other = loc.sigma(&other).unwrap();
        for &e in &rep.support() {
            let ratio_rep = desc
                .mul(rep.entry(e), &desc.inv(&sigma).unwrap())
                .unwrap();
            let ratio_other = desc
                .mul(other.entry(e), &desc.inv(&sigma_other).unwrap())
                .unwrap();
            assert_eq!(ratio_rep, ratio_other);
        }
    }
}

/// Support of a modular-elimination cocircuit is the union of the pair's
/// supports, here on the genuine rank-2 localization.
#[test]
fn modular_cocircuit_support_formula() {
    let loc = fixtures::rank2_sign_localization().unwrap();
    let desc = loc.base().tract().clone();
    let reps = loc.cocircuits().circuits().to_vec();
    let supports = loc.cocircuits().circuit_supports();
    for i in 0..reps.len() {
        for j in 0..reps.len() {
            if i == j || !is_modular_family(&supports, &[i, j]) {
                continue;
            }
            // Rescale the second so the σ values are opposite.
            let si = loc.class_value(i).clone();
            let sj = loc.class_value(j).clone();
            let beta = desc
                .mul(&desc.inv(&sj).unwrap(), &desc.mul(&desc.epsilon(), &si).unwrap())
                .unwrap();
            let y2 = reps[j]
                .scale(&desc, &beta, tract_matroids::Side::Right)
                .unwrap();
            let x = mod_cocircuit(&loc, &reps[i], &y2).unwrap();
            let union: BTreeSet<usize> =
                supports[i].union(&supports[j]).cloned().collect();
            assert_eq!(x.support(), union);
        }
    }
}

/// Round trip on a handful of sign localizations of the rank-2 whirl: every
/// equivariant assignment over {+1, -1} values, filtered to localizations,
/// extends and restricts to itself.
#[test]
fn extension_round_trips_for_sign_rank2() {
    let base = fixtures::sign_u23();
    let desc = base.tract().clone();
    let dual = base.dual().unwrap();
    let carrier = [desc.one(), desc.epsilon(), TractValue::Zero];
    let mut localizations = 0;
    for a in &carrier {
        for b in &carrier {
            for c in &carrier {
                let raw: Vec<_> = dual
                    .circuits()
                    .iter()
                    .cloned()
                    .zip([a.clone(), b.clone(), c.clone()])
                    .collect();
                let loc = Localization::new(base.clone(), "p", &raw).unwrap();
                if !is_localization(&loc, AxiomMode::Weak).unwrap().all_hold() {
                    assert!(extend(&loc, AxiomMode::Weak).is_err());
                    continue;
                }
                localizations += 1;
                let ext = extend(&loc, AxiomMode::Weak).unwrap();
                let recovered = tract_matroids::extension::sigma_from_extension(
                    &base,
                    &ext.extended,
                    "p",
                )
                .unwrap();
                assert_eq!(recovered.class_values(), loc.class_values());
                assert_eq!(
                    minor(&ext.extended, &["p"], &[]).unwrap(),
                    base,
                    "deletion recovers the base"
                );
            }
        }
    }
    // The classical count for a rank-2 line with three points: the new
    // element can be a loop, sit at one of the six signed positions, or lie
    // in one of the six open arcs between them.
    assert_eq!(localizations, 13);
}
