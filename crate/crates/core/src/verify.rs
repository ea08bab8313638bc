//! Every known count and structural property of the default complex, each
//! checked and reported as one line.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classify::{
    check_observation_1, check_observation_2, classify_facets, enumerate_maximal_sequences, layer_decomposition,
};
use crate::collapse::{collapse_above_dim_checked, collapse_pair, find_free_pairs, BettiCheck, FreePair};
use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::fixtures;
use crate::homology::{boundary_matrix, reduced_betti};
use crate::pitchspace::{IntervalSequence, PitchUniverse, Scale};
use crate::spheres::{
    augmented_triads, basis_report, messiaen_scales, pairwise_intersection, sphere_hexatonics, sphere_subcomplex,
    triple_intersection, verify_homology_sphere,
};

/// f-vector of the default complex.
pub const EXPECTED_F_VECTOR: [usize; 9] = [1, 12, 66, 208, 399, 456, 282, 72, 3];

/// Facet classes of the default complex: (cardinality, interval sequence, count, name).
pub const FACET_TABLE: [(usize, &str, usize, &str); 7] = [
    (8, "2-1-2-1-2-1-2-1", 3, "diminished"),
    (7, "2-2-1-2-2-2-1", 12, "major"),
    (7, "2-1-2-2-2-2-1", 12, "melodic minor"),
    (7, "2-1-2-2-1-3-1", 12, "harmonic minor"),
    (7, "2-2-1-2-1-3-1", 12, "harmonic major"),
    (6, "2-2-2-2-2-2", 2, "whole tone"),
    (6, "1-3-1-3-1-3", 4, "augmented"),
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
    pub passed: bool,
}

/// f-vector by testing every subset of `0..n` for a run of `run` cyclically
/// consecutive members, using plain boolean arrays.
pub fn brute_force_f_vector(n: usize, run: usize) -> Vec<usize> {
    let mut counts = vec![0usize; n + 1];
    for mask in 0u64..(1u64 << n) {
        let member: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
        let chromatic = (0..n).any(|start| (0..run).all(|j| member[(start + j) % n]));
        if !chromatic {
            counts[member.iter().filter(|&&b| b).count()] += 1;
        }
    }
    while counts.len() > 1 && counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name,
        passed,
        detail: detail.into(),
    }
}

fn s(p: &[u32]) -> Scale {
    Scale::from_pitches(p.iter().copied()).expect("pitch below 64")
}

/// Runs every check against the default universe.
pub fn run_all() -> Result<VerifyReport> {
    let u = PitchUniverse::default();
    let k = SimplicialComplex::non_chromatic(&u)?;
    let checks = vec![
        f_vector_check(&k),
        facet_table_check(&k, &u)?,
        maximal_sequences_check(&k, &u)?,
        observations_check(&k, &u)?,
        betti_check(&k),
        fixture_homology_check(),
        boundary_squared_check(&k)?,
        collapse_check(&k)?,
        glued_triangles_check()?,
        witness_check(&k)?,
        messiaen_check(&k, &u)?,
        basis_check(&k)?,
        seven_note_check(&k),
    ];
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport { checks, passed })
}

fn f_vector_check(k: &SimplicialComplex) -> CheckResult {
    let fv = k.f_vector();
    let brute = brute_force_f_vector(12, 3);
    check(
        "f-vector",
        fv.counts() == EXPECTED_F_VECTOR && brute == EXPECTED_F_VECTOR,
        format!("({fv}); brute force ({})", join(&brute)),
    )
}

fn facet_table_check(k: &SimplicialComplex, u: &PitchUniverse) -> Result<CheckResult> {
    let classes = classify_facets(k, u)?;
    let mut table_ok = classes.len() == FACET_TABLE.len();
    for (card, seq, count, name) in FACET_TABLE {
        let seq = IntervalSequence::parse(seq)?;
        table_ok &= classes
            .iter()
            .any(|c| c.cardinality == card && c.canonical_sequence == seq && c.scale_count == count && c.name == name);
    }
    let total = k.facets().len();
    Ok(check(
        "facets",
        table_ok && total == 57 && !k.is_pure(),
        format!("{total} facets in {} classes, pure: {}", classes.len(), k.is_pure()),
    ))
}

fn maximal_sequences_check(k: &SimplicialComplex, u: &PitchUniverse) -> Result<CheckResult> {
    let searched: BTreeSet<IntervalSequence> = enumerate_maximal_sequences(u).into_iter().collect();
    let classified: BTreeSet<IntervalSequence> = classify_facets(k, u)?
        .into_iter()
        .map(|c| c.canonical_sequence)
        .collect();
    let expected = FACET_TABLE
        .iter()
        .map(|(_, seq, _, _)| IntervalSequence::parse(seq))
        .collect::<Result<BTreeSet<_>>>()?;
    Ok(check(
        "maximal interval sequences",
        searched == expected && classified == expected,
        format!("{} sequences from composition search", searched.len()),
    ))
}

fn observations_check(k: &SimplicialComplex, u: &PitchUniverse) -> Result<CheckResult> {
    let one = check_observation_1(k, u)?;
    let two = check_observation_2(k, u)?;
    Ok(check(
        "facet observations",
        one && two,
        format!("no gap >= 4: {one}; every 3 inside 1-3-1: {two}"),
    ))
}

fn betti_check(k: &SimplicialComplex) -> CheckResult {
    let b = reduced_betti(k);
    let ok = (-1..=k.dimension()).all(|d| b.dim(d) == if d == 5 { 3 } else { 0 });
    check(
        "homology",
        ok,
        format!("reduced Betti ({b}) for dims -1..{}", k.dimension()),
    )
}

fn fixture_homology_check() -> CheckResult {
    let expect = [
        ("edge_and_point", fixtures::edge_and_point(), 0, 1),
        ("hollow_triangle", fixtures::hollow_triangle(), 1, 1),
        ("filled_triangle", fixtures::filled_triangle(), -2, 0),
        ("tetrahedron_skeleton", fixtures::tetrahedron_skeleton(), 1, 3),
    ];
    let mut details = Vec::new();
    let mut ok = true;
    for (name, k, dim, value) in expect {
        let b = reduced_betti(&k);
        ok &= (-1..=k.dimension()).all(|d| b.dim(d) == if d == dim { value } else { 0 });
        details.push(format!("{name} ({b})"));
    }
    check("fixture homology", ok, details.join("; "))
}

fn boundary_squared_check(k_nc: &SimplicialComplex) -> Result<CheckResult> {
    let mut complexes = fixtures::all();
    complexes.push(("non_chromatic", k_nc.clone()));
    let mut pairs = 0;
    let mut ok = true;
    for (_, k) in &complexes {
        for n in 1..k.dimension() + 1 {
            let lower = boundary_matrix(k, n - 1)?.to_sparse();
            let upper = boundary_matrix(k, n)?.to_sparse();
            ok &= lower.product_is_zero(&upper);
            pairs += 1;
        }
    }
    Ok(check(
        "boundary of boundary",
        ok,
        format!("{pairs} adjacent operator pairs compose to zero"),
    ))
}

fn collapse_check(k: &SimplicialComplex) -> Result<CheckResult> {
    let (out, before) = collapse_above_dim_checked(k, 5, BettiCheck::Endpoints)?;
    let after = reduced_betti(&out.complex);
    let ok = out.complete && out.complex.dimension() == 5 && before.same_as(&after);
    Ok(check(
        "collapse to dimension 5",
        ok,
        format!(
            "{} collapses, f-vector ({}), Betti ({after})",
            out.log.len(),
            out.complex.f_vector()
        ),
    ))
}

fn glued_triangles_check() -> Result<CheckResult> {
    let k = fixtures::glued_triangles();
    let pairs = find_free_pairs(&k);
    let only_triangle = !pairs.is_empty() && pairs.iter().all(|p| p.facet == s(&[1, 2, 3]));
    let inner = collapse_pair(
        &k,
        &FreePair {
            facet: s(&[1, 2, 3]),
            free_face: s(&[1, 2]),
        },
    )?;
    let outer = collapse_pair(
        &k,
        &FreePair {
            facet: s(&[1, 2, 3]),
            free_face: s(&[1, 3]),
        },
    )?;
    let inner_next = find_free_pairs(&inner).len();
    let outer_pairs = find_free_pairs(&outer);
    let outer_exactly_one = match outer_pairs.as_slice() {
        [p] => find_free_pairs(&collapse_pair(&outer, p)?).is_empty(),
        _ => false,
    };
    Ok(check(
        "collapse order matters",
        only_triangle && inner_next == 0 && outer_exactly_one,
        format!(
            "inner edge leaves {inner_next} free pairs; outer edge leaves {} then none",
            outer_pairs.len()
        ),
    ))
}

fn witness_check(k: &SimplicialComplex) -> Result<CheckResult> {
    use crate::collapse::{collapse_witnesses, is_collapsible_facet};
    let major = collapse_witnesses(k, s(&[0, 2, 4, 5, 7, 9, 11]))?;
    let diminished = collapse_witnesses(k, s(&[0, 2, 3, 5, 6, 8, 9, 11]))?;
    let hexatonic: Vec<Scale> = k.facets().into_iter().filter(|f| f.len() == 6).collect();
    let mut hex_stuck = hexatonic.len() == 6;
    for f in &hexatonic {
        hex_stuck &= !is_collapsible_facet(k, *f)?;
    }
    Ok(check(
        "collapsible facets",
        major.contains(&2) && diminished.contains(&0) && hex_stuck,
        format!(
            "C major frees by removing {:?}; C diminished by removing {:?}; {} hexatonic facets stuck",
            major,
            diminished,
            hexatonic.len()
        ),
    ))
}

fn messiaen_check(k: &SimplicialComplex, u: &PitchUniverse) -> Result<CheckResult> {
    let ms = messiaen_scales(u)?;
    let mut ok = ms.len() == 4;
    for m in &ms {
        let hex = sphere_hexatonics(m);
        let six: Vec<Scale> = m
            .members()
            .subsets()
            .filter(|t| t.len() == 6 && u.is_non_chromatic(*t))
            .collect();
        let no_seven = !m.members().subsets().any(|t| t.len() == 7 && u.is_non_chromatic(t));
        let sub = sphere_subcomplex(m);
        ok &= hex.len() == 27 && hex == six && no_seven;
        ok &= sub.is_subcomplex_of(k) && verify_homology_sphere(&sub, 5)?.passed();
    }
    let mut pair_facets = BTreeSet::new();
    for i in 0..4 {
        for j in i + 1..4 {
            pair_facets.insert(pairwise_intersection(&ms[i], &ms[j])?);
        }
    }
    let hexatonic: BTreeSet<Scale> = k.facets().into_iter().filter(|f| f.len() == 6).collect();
    let triads: BTreeSet<Scale> = augmented_triads(u)?.iter().map(|t| t.members()).collect();
    let mut triples = BTreeSet::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for l in j + 1..4 {
                triples.insert(triple_intersection(&ms[i], &ms[j], &ms[l])?);
            }
        }
    }
    ok &= pair_facets == hexatonic && triples == triads;
    Ok(check(
        "Messiaen spheres",
        ok,
        format!(
            "{} scales x 27 hexatonics, certified 5-spheres; {} pairwise facets; {} triple triads",
            ms.len(),
            pair_facets.len(),
            triples.len()
        ),
    ))
}

fn basis_check(k: &SimplicialComplex) -> Result<CheckResult> {
    let report = basis_report(k)?;
    let triples: Vec<String> = report
        .ranks
        .iter()
        .filter(|r| r.spheres.len() >= 3)
        .map(|r| format!("{:?}->{}", r.spheres, r.rank))
        .collect();
    Ok(check(
        "homology basis",
        report.any_three_form_a_basis(),
        triples.join(" "),
    ))
}

fn seven_note_check(k: &SimplicialComplex) -> CheckResult {
    let d = layer_decomposition(k, 7);
    let ok = d.total == 72
        && d.facets == 48
        && d.non_facets == 24
        && d.non_facets_in_larger_facets == 24
        && d.larger_facets * 8 == 24;
    check(
        "seven-note decomposition",
        ok,
        format!(
            "{} = {} facets + {} inside {} eight-note facets",
            d.total, d.facets, d.non_facets, d.larger_facets
        ),
    )
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_small() {
        assert_eq!(brute_force_f_vector(3, 3), vec![1, 3, 3]);
        assert_eq!(brute_force_f_vector(4, 2), vec![1, 4, 2]);
    }
}
