mod common;

use std::collections::HashMap;

use common::*;
use covercert_core::constructions::{construct_theorem_lb, shift_expand, ShiftExpansionSpec};
use covercert_core::{CongruenceSystem, Error, Limits};
use rand::Rng;

fn greedy_minimal(sys: &CongruenceSystem, limits: &Limits) -> CongruenceSystem {
    let mut current = sys.clone();
    while let Some(&i) = current.is_minimal(limits).unwrap().redundant.first() {
        current = current.without(i);
    }
    current
}

/// Minimal covering systems with `Q <= 10^4`.
fn minimal_sources() -> Vec<CongruenceSystem> {
    let limits = Limits::default();
    let mut out: Vec<CongruenceSystem> = (5..=10).map(|j| construct_theorem_lb(j).unwrap()).collect();
    out.push(system(&[(0, 2), (0, 3), (1, 4), (5, 6), (7, 12)]));
    out.push(system(&[(0, 2), (1, 2)]));
    out.push(system(&[(0, 3), (1, 3), (2, 3)]));
    let mut rng = rng();
    while out.len() < 60 {
        let mut sys = random_covering_system(&mut rng);
        if rng.gen_bool(0.5) {
            let extra = random_system(&mut rng, 3, 12, 10_000);
            sys = sys.classes().iter().chain(extra.classes()).copied().collect();
        }
        if sys.lcm_value().unwrap() > 10_000 {
            continue;
        }
        out.push(greedy_minimal(&sys, &limits));
    }
    out
}

#[test]
fn shift_expansions_of_minimal_systems_cover() {
    let limits = Limits::default();
    for source in minimal_sources() {
        assert!(source.is_minimal(&limits).unwrap().minimal, "{source}");
        let sorted = source.sorted();
        for ell in 1..=source.len() {
            let spec = ShiftExpansionSpec::new(&source, ell).unwrap();
            let out = shift_expand(&spec, &limits).unwrap();
            assert!(naive_covers(&out), "{source}, l = {ell}");

            let survivors = &sorted.classes()[ell - 1..];
            let shifts = 1u64 << (ell - 1);
            assert_eq!(out.len() as u64, survivors.len() as u64 * shifts);

            // generation order is (j, h)
            let expected: Vec<(u64, u64)> = survivors
                .iter()
                .flat_map(|c| {
                    (0..shifts).map(move |h| ((c.residue() + c.modulus() - h % c.modulus()) % c.modulus(), c.modulus()))
                })
                .collect();
            let got: Vec<(u64, u64)> = out.classes().iter().map(|c| (c.residue(), c.modulus())).collect();
            assert_eq!(got, expected);

            let m = out.multiplicity().unwrap();
            assert!(m as u64 <= shifts * survivors.len() as u64);
            let mut per_modulus: HashMap<u64, u64> = HashMap::new();
            for c in survivors {
                *per_modulus.entry(c.modulus()).or_default() += 1;
            }
            let distinct = per_modulus.values().all(|&k| k == 1);
            if distinct {
                assert_eq!(m as u64, shifts, "{source}, l = {ell}");
                if survivors.iter().all(|c| c.modulus() >= shifts) {
                    assert_eq!(out.distinct_multiplicity().unwrap() as u64, shifts);
                }
            }
        }
    }
}

#[test]
fn c5_reduction_examples() {
    let limits = Limits::default();
    let c5 = construct_theorem_lb(5).unwrap();
    let out = shift_expand(&ShiftExpansionSpec::new(&c5, 2).unwrap(), &limits).unwrap();
    assert_eq!(
        out,
        system(&[(0, 3), (2, 3), (2, 4), (1, 4), (4, 6), (3, 6), (8, 12), (7, 12)])
    );
    let out = shift_expand(&ShiftExpansionSpec::new(&c5, 3).unwrap(), &limits).unwrap();
    assert_eq!(out.len(), 12);
    assert_eq!(out.multiplicity().unwrap(), 4);
    let out = shift_expand(&ShiftExpansionSpec::new(&c5, 1).unwrap(), &limits).unwrap();
    assert_eq!(out, c5.sorted());
}

#[test]
fn construction_examples() {
    assert_eq!(
        construct_theorem_lb(5).unwrap(),
        system(&[(1, 2), (2, 4), (0, 3), (4, 6), (8, 12)])
    );
    let c6 = construct_theorem_lb(6).unwrap().sorted();
    assert_eq!(c6, system(&[(1, 2), (2, 4), (0, 6), (4, 8), (4, 12), (8, 24)]));
    assert!(matches!(construct_theorem_lb(4), Err(Error::Domain(_))));
}

#[test]
fn bad_expansion_requests() {
    let c5 = construct_theorem_lb(5).unwrap();
    assert!(matches!(ShiftExpansionSpec::new(&c5, 0), Err(Error::Domain(_))));
    assert!(matches!(ShiftExpansionSpec::new(&c5, 6), Err(Error::Domain(_))));
    let tight = Limits {
        max_residues: 10,
        ..Limits::default()
    };
    let spec = ShiftExpansionSpec::new(&c5, 3).unwrap();
    assert!(matches!(shift_expand(&spec, &tight), Err(Error::ResourceLimit { .. })));
}
