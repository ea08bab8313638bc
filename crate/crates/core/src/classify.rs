//! Facet classification by interval sequence.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::pitchspace::{IntervalSequence, PitchUniverse, Scale};

/// Conventional names of the maximal non-chromatic scales of the default
/// universe, keyed by the customary rotation of the interval sequence.
const NAMED_CLASSES: [(&str, &str); 7] = [
    ("2-1-2-1-2-1-2-1", "diminished"),
    ("2-2-1-2-2-2-1", "major"),
    ("2-1-2-2-2-2-1", "melodic minor"),
    ("2-1-2-2-1-3-1", "harmonic minor"),
    ("2-2-1-2-1-3-1", "harmonic major"),
    ("2-2-2-2-2-2", "whole tone"),
    ("1-3-1-3-1-3", "augmented"),
];

/// The facets sharing one interval sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FacetClass {
    #[serde(serialize_with = "ser_seq")]
    pub canonical_sequence: IntervalSequence,
    /// Customary rotation for named classes, the canonical one otherwise.
    pub display_sequence: String,
    pub cardinality: usize,
    pub scale_count: usize,
    pub symmetry_order: u32,
    pub name: String,
    pub members: Vec<Scale>,
}

fn ser_seq<S: serde::Serializer>(seq: &IntervalSequence, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&seq.canonical_string())
}

fn class_name(u: &PitchUniverse, seq: &IntervalSequence) -> Option<(&'static str, &'static str)> {
    if !u.is_default() {
        return None;
    }
    NAMED_CLASSES
        .iter()
        .find(|(text, _)| IntervalSequence::parse(text).is_ok_and(|s| s == *seq))
        .copied()
}

/// Groups the facets of `k` by canonical interval sequence. Classes are
/// sorted by descending cardinality, then canonical sequence.
pub fn classify_facets(k: &SimplicialComplex, u: &PitchUniverse) -> Result<Vec<FacetClass>> {
    let mut groups: BTreeMap<(std::cmp::Reverse<usize>, IntervalSequence), Vec<Scale>> = BTreeMap::new();
    for f in k.facets() {
        if f.is_empty() {
            continue;
        }
        let seq = u.interval_sequence(f)?;
        groups.entry((std::cmp::Reverse(f.len()), seq)).or_default().push(f);
    }
    groups
        .into_iter()
        .map(|((card, seq), members)| {
            let named = class_name(u, &seq);
            Ok(FacetClass {
                display_sequence: named.map_or_else(|| seq.canonical_string(), |(t, _)| t.to_string()),
                name: named.map_or("unnamed", |(_, n)| n).to_string(),
                symmetry_order: u.symmetry_order(members[0])?,
                cardinality: card.0,
                scale_count: members.len(),
                canonical_sequence: seq,
                members,
            })
        })
        .collect()
}

/// Inserts the midpoint of the first gap of length at least four.
pub fn midpoint_extension(s: Scale, u: &PitchUniverse) -> Result<Option<Scale>> {
    if s.is_empty() {
        return Ok(None);
    }
    let seq = u.interval_sequence(s)?;
    let n = u.n_pitches();
    Ok(s.members()
        .zip(seq.intervals())
        .find(|(_, &gap)| gap >= 4)
        .map(|(start, &gap)| s.with((start + gap / 2) % n)))
}

/// No facet has a gap of four or more; and every face that does have such a
/// gap stays non-chromatic when the gap's midpoint is added.
pub fn check_observation_1(k: &SimplicialComplex, u: &PitchUniverse) -> Result<bool> {
    for f in k.facets().into_iter().filter(|f| !f.is_empty()) {
        if u.interval_sequence(f)?.intervals().iter().any(|&g| g >= 4) {
            return Ok(false);
        }
    }
    for face in k.iter_faces() {
        if let Some(ext) = midpoint_extension(face, u)? {
            if ext == face || !u.is_non_chromatic(ext) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For the first gap of length three that has a neighbouring gap other than
/// a semitone, adds the pitch inside it next to that neighbour, e.g. C D♯ F
/// becomes C D D♯ F.
pub fn three_gap_extension(s: Scale, u: &PitchUniverse) -> Result<Option<Scale>> {
    if s.len() < 2 {
        return Ok(None);
    }
    let seq = u.interval_sequence(s)?;
    let gaps = seq.intervals();
    let starts: Vec<u32> = s.to_vec();
    let len = gaps.len();
    let n = u.n_pitches();
    for i in 0..len {
        if gaps[i] != 3 {
            continue;
        }
        let next = gaps[(i + 1) % len];
        let prev = gaps[(i + len - 1) % len];
        if next != 1 {
            return Ok(Some(s.with((starts[i] + 2) % n)));
        }
        if prev != 1 {
            return Ok(Some(s.with((starts[i] + 1) % n)));
        }
    }
    Ok(None)
}

/// Every 3 in a facet's interval sequence sits between two 1s; and every
/// face with a 3 next to a larger step extends non-chromatically inside the 3.
pub fn check_observation_2(k: &SimplicialComplex, u: &PitchUniverse) -> Result<bool> {
    for f in k.facets().into_iter().filter(|f| !f.is_empty()) {
        let seq = u.interval_sequence(f)?;
        let g = seq.intervals();
        let len = g.len();
        let flanked = (0..len).all(|i| g[i] != 3 || (g[(i + 1) % len] == 1 && g[(i + len - 1) % len] == 1));
        if !flanked {
            return Ok(false);
        }
    }
    for face in k.iter_faces() {
        if let Some(ext) = three_gap_extension(face, u)? {
            if !u.is_non_chromatic(ext) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Canonical interval sequences of maximal non-chromatic scales, found by
/// searching cyclic compositions of N directly rather than scale sets.
///
/// Parts are at most 3 (a larger gap can always take its midpoint), no
/// `run_limit − 1` semitones are cyclically adjacent, and no gap can be
/// split without creating a forbidden run. Under the default universe the
/// search also prunes any 3 not flanked by semitones.
pub fn enumerate_maximal_sequences(u: &PitchUniverse) -> Vec<IntervalSequence> {
    let n = u.n_pitches();
    let mut found = BTreeSet::new();
    let mut parts = Vec::new();
    compositions(n, &mut parts, &mut |seq| {
        if sequence_is_non_chromatic(seq, u.run_limit())
            && (!u.is_default() || threes_flanked(seq))
            && !sequence_is_extendable(seq, u.run_limit())
        {
            found.insert(IntervalSequence::from_intervals(seq.to_vec()).expect("positive parts"));
        }
    });
    found.into_iter().collect()
}

fn compositions(remaining: u32, parts: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
    if remaining == 0 {
        visit(parts);
        return;
    }
    for p in 1..=remaining.min(3) {
        parts.push(p);
        compositions(remaining - p, parts, visit);
        parts.pop();
    }
}

// no run of `run_limit - 1` cyclically consecutive semitones
fn sequence_is_non_chromatic(seq: &[u32], run_limit: u32) -> bool {
    let len = seq.len();
    let need = run_limit as usize - 1;
    if need > len {
        return true;
    }
    (0..len).all(|i| (0..need).any(|j| seq[(i + j) % len] != 1))
}

fn threes_flanked(seq: &[u32]) -> bool {
    let len = seq.len();
    (0..len).all(|i| seq[i] != 3 || (seq[(i + 1) % len] == 1 && seq[(i + len - 1) % len] == 1))
}

// some gap splits into two positive parts keeping the sequence non-chromatic
fn sequence_is_extendable(seq: &[u32], run_limit: u32) -> bool {
    (0..seq.len()).any(|i| {
        (1..seq[i]).any(|a| {
            let mut split = Vec::with_capacity(seq.len() + 1);
            split.extend_from_slice(&seq[..i]);
            split.push(a);
            split.push(seq[i] - a);
            split.extend_from_slice(&seq[i + 1..]);
            sequence_is_non_chromatic(&split, run_limit)
        })
    })
}

/// Split of the faces of one cardinality into facets and non-facets, with
/// the non-facets contained in a facet one element larger.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerDecomposition {
    pub cardinality: usize,
    pub total: usize,
    pub facets: usize,
    pub non_facets: usize,
    pub non_facets_in_larger_facets: usize,
    pub larger_facets: usize,
}

pub fn layer_decomposition(k: &SimplicialComplex, cardinality: usize) -> LayerDecomposition {
    let faces = k.faces_of_dim(cardinality as isize - 1);
    let larger: Vec<Scale> = k.facets().into_iter().filter(|f| f.len() == cardinality + 1).collect();
    let facets = faces.iter().filter(|f| k.is_facet(**f)).count();
    let non_facets_in_larger_facets = faces
        .iter()
        .filter(|f| !k.is_facet(**f) && larger.iter().any(|g| f.is_subset_of(*g)))
        .count();
    LayerDecomposition {
        cardinality,
        total: faces.len(),
        facets,
        non_facets: faces.len() - facets,
        non_facets_in_larger_facets,
        larger_facets: larger.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> PitchUniverse {
        PitchUniverse::default()
    }

    fn s(p: &[u32]) -> Scale {
        Scale::from_pitches(p.iter().copied()).unwrap()
    }

    #[test]
    fn midpoint_examples() {
        assert_eq!(midpoint_extension(s(&[0, 4]), &u()).unwrap(), Some(s(&[0, 2, 4])));
        assert_eq!(midpoint_extension(s(&[0, 6]), &u()).unwrap(), Some(s(&[0, 3, 6])));
        assert_eq!(midpoint_extension(s(&[0, 2, 4, 5, 7, 9, 11]), &u()).unwrap(), None);
        assert_eq!(midpoint_extension(Scale::EMPTY, &u()).unwrap(), None);
    }

    #[test]
    fn three_gap_examples() {
        // C D# F: add D
        assert_eq!(
            three_gap_extension(s(&[0, 3, 5]), &u()).unwrap(),
            Some(s(&[0, 2, 3, 5]))
        );
        // harmonic minor from A: the 3 (F..G#) is flanked by semitones
        let harmonic_minor = s(&[9, 11, 0, 2, 4, 5, 8]);
        assert_eq!(
            u().interval_sequence(harmonic_minor).unwrap(),
            IntervalSequence::parse("2-1-2-2-1-3-1").unwrap()
        );
        assert_eq!(three_gap_extension(harmonic_minor, &u()).unwrap(), None);
    }

    #[test]
    fn composition_predicates() {
        assert!(sequence_is_non_chromatic(&[2, 2, 1, 2, 2, 2, 1], 3));
        assert!(!sequence_is_non_chromatic(&[1, 3, 1, 2, 2, 2, 1], 3));
        assert!(!sequence_is_extendable(&[2, 2, 1, 2, 2, 2, 1], 3));
        assert!(sequence_is_extendable(&[2, 2, 1, 2, 2, 3], 3));
        assert!(threes_flanked(&[1, 3, 1, 3, 1, 3]));
        assert!(!threes_flanked(&[2, 3, 1, 2, 2, 2]));
    }

    #[test]
    fn unnamed_outside_default_universe() {
        let small = PitchUniverse::new(6, 3).unwrap();
        let k = SimplicialComplex::non_chromatic(&small).unwrap();
        let classes = classify_facets(&k, &small).unwrap();
        assert!(classes.iter().all(|c| c.name == "unnamed"));
        let keys: BTreeSet<_> = classes.iter().map(|c| c.canonical_sequence.clone()).collect();
        let searched: BTreeSet<_> = enumerate_maximal_sequences(&small).into_iter().collect();
        assert_eq!(keys, searched);
    }
}
