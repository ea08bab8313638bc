//! Elementary collapses.
//!
//! A free pair is a facet `F` together with a face `M ⊂ F` with one element
//! fewer such that `F` is the only facet containing `M`. Removing both
//! faces leaves a complex with the same homotopy type. Pairs whose free
//! face would be `∅` are never offered, since `∅` belongs to every complex.

use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{domain, Error, Result};
use crate::homology::{reduced_betti, BettiVector};
use crate::pitchspace::Scale;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FreePair {
    pub facet: Scale,
    pub free_face: Scale,
}

impl FreePair {
    /// The member of the facet missing from the free face.
    pub fn removed_member(&self) -> u32 {
        self.facet
            .difference(self.free_face)
            .members()
            .next()
            .expect("facet is one larger")
    }
}

fn is_free_in(k: &SimplicialComplex, facet: Scale, face: Scale) -> bool {
    !face.is_empty() && k.cofaces(face).all(|c| c == facet)
}

/// Free faces of `facet`, by ascending removed member.
fn free_faces_of(k: &SimplicialComplex, facet: Scale) -> impl Iterator<Item = Scale> + '_ {
    facet
        .codim1_faces()
        .map(|(_, m)| m)
        .filter(move |&m| is_free_in(k, facet, m))
}

/// Every free pair, ordered by descending facet size, then facet order,
/// then free-face order.
pub fn find_free_pairs(k: &SimplicialComplex) -> Vec<FreePair> {
    let mut pairs: Vec<FreePair> = k
        .facets()
        .into_iter()
        .flat_map(|facet| {
            free_faces_of(k, facet)
                .map(move |free_face| FreePair { facet, free_face })
                .collect::<Vec<_>>()
        })
        .collect();
    pairs.sort_by(|a, b| {
        b.facet
            .len()
            .cmp(&a.facet.len())
            .then(a.facet.cmp(&b.facet))
            .then(a.free_face.cmp(&b.free_face))
    });
    pairs
}

/// True iff `pair` is currently a free pair of `k`.
pub fn is_free_pair(k: &SimplicialComplex, pair: &FreePair) -> bool {
    k.is_facet(pair.facet)
        && pair.free_face.len() + 1 == pair.facet.len()
        && pair.free_face.is_subset_of(pair.facet)
        && is_free_in(k, pair.facet, pair.free_face)
}

/// Performs one collapse in place.
pub fn collapse_in_place(k: &mut SimplicialComplex, pair: &FreePair) -> Result<()> {
    if !is_free_pair(k, pair) {
        return Err(Error::State(format!(
            "({}, {}) is not a free pair of the complex",
            pair.facet, pair.free_face
        )));
    }
    k.remove_free_pair(pair.facet, pair.free_face);
    Ok(())
}

/// Returns the complex obtained by one collapse.
pub fn collapse_pair(k: &SimplicialComplex, pair: &FreePair) -> Result<SimplicialComplex> {
    let mut out = k.clone();
    collapse_in_place(&mut out, pair)?;
    Ok(out)
}

/// Whether the facet `facet` can take part in a collapse.
pub fn is_collapsible_facet(k: &SimplicialComplex, facet: Scale) -> Result<bool> {
    Ok(!collapse_witnesses(k, facet)?.is_empty())
}

/// Members whose removal from `facet` yields a free face.
pub fn collapse_witnesses(k: &SimplicialComplex, facet: Scale) -> Result<Vec<u32>> {
    if !k.is_facet(facet) {
        return Err(domain(format!("{facet} is not a facet")));
    }
    Ok(facet
        .codim1_faces()
        .filter(|(_, m)| is_free_in(k, facet, *m))
        .map(|(p, _)| p)
        .collect())
}

/// How much homology checking `collapse_above_dim_checked` performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BettiCheck {
    /// Compare reduced Betti numbers before and after the whole sequence.
    Endpoints,
    /// Compare after every single collapse.
    EveryStep,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapseOutcome {
    pub complex: SimplicialComplex,
    pub log: Vec<FreePair>,
    /// False when faces above the target dimension survived with no free
    /// pair left to remove them.
    pub complete: bool,
}

/// Greedily collapses facets of dimension above `d`, always taking the
/// first pair of [`find_free_pairs`] whose facet is too large.
pub fn collapse_above_dim(k: &SimplicialComplex, d: isize) -> Result<CollapseOutcome> {
    run_collapse(k, d, |_| Ok(()))
}

/// [`collapse_above_dim`] with reduced Betti numbers compared against the
/// starting complex.
pub fn collapse_above_dim_checked(
    k: &SimplicialComplex,
    d: isize,
    check: BettiCheck,
) -> Result<(CollapseOutcome, BettiVector)> {
    let before = reduced_betti(k);
    let outcome = run_collapse(k, d, |current| {
        if check == BettiCheck::EveryStep {
            compare_betti(&before, current)?;
        }
        Ok(())
    })?;
    compare_betti(&before, &outcome.complex)?;
    Ok((outcome, before))
}

fn compare_betti(before: &BettiVector, k: &SimplicialComplex) -> Result<()> {
    let after = reduced_betti(k);
    if !before.same_as(&after) {
        return Err(Error::Inconsistency(format!(
            "collapse changed reduced Betti numbers: {before} -> {after}"
        )));
    }
    Ok(())
}

fn run_collapse<F>(k: &SimplicialComplex, d: isize, after_step: F) -> Result<CollapseOutcome>
where
    F: FnMut(&SimplicialComplex) -> Result<()>,
{
    if d < 0 {
        return Err(domain("target dimension must be non-negative"));
    }
    let limit = (d + 1) as usize;
    let (complex, log) = collapse_while(k, |p| p.facet.len() > limit, after_step)?;
    let complete = complex.dimension() < d + 1;
    Ok(CollapseOutcome { complex, log, complete })
}

/// Repeatedly performs the first pair of [`find_free_pairs`] accepted by
/// `allow` until none is left, calling `after_step` after each collapse.
pub fn collapse_while<A, F>(
    k: &SimplicialComplex,
    mut allow: A,
    mut after_step: F,
) -> Result<(SimplicialComplex, Vec<FreePair>)>
where
    A: FnMut(&FreePair) -> bool,
    F: FnMut(&SimplicialComplex) -> Result<()>,
{
    let mut complex = k.clone();
    let mut log = Vec::new();
    let budget = complex.num_faces() / 2;
    while let Some(pair) = find_free_pairs(&complex).into_iter().find(|p| allow(p)) {
        collapse_in_place(&mut complex, &pair)?;
        log.push(pair);
        after_step(&complex)?;
        if log.len() > budget {
            return Err(Error::Inconsistency(
                "collapse sequence exceeded |faces|/2 steps".into(),
            ));
        }
    }
    Ok((complex, log))
}

/// Greedily collapses `k` onto the subcomplex `target`, never removing a
/// face of `target`. `complete` reports whether exactly `target` remains.
pub fn collapse_onto(k: &SimplicialComplex, target: &SimplicialComplex) -> Result<CollapseOutcome> {
    if !target.is_subcomplex_of(k) {
        return Err(domain("target is not a subcomplex"));
    }
    let (complex, log) = collapse_while(
        k,
        |p| !target.contains(p.facet) && !target.contains(p.free_face),
        |_| Ok(()),
    )?;
    let complete = complex.f_vector() == target.f_vector() && complex.is_subcomplex_of(target);
    Ok(CollapseOutcome { complex, log, complete })
}

/// Collapses as far as possible; true iff a single vertex remains.
pub fn collapses_to_point(k: &SimplicialComplex) -> Result<bool> {
    let (complex, _) = collapse_while(k, |_| true, |_| Ok(()))?;
    Ok(complex.f_vector().counts() == [1, 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;

    fn s(p: &[u32]) -> Scale {
        Scale::from_pitches(p.iter().copied()).unwrap()
    }

    fn pair(f: &[u32], m: &[u32]) -> FreePair {
        FreePair {
            facet: s(f),
            free_face: s(m),
        }
    }

    fn filled() -> SimplicialComplex {
        SimplicialComplex::build_from_facets(3, [s(&[0, 1, 2])]).unwrap()
    }

    fn hollow() -> SimplicialComplex {
        SimplicialComplex::build_from_facets(3, [s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]).unwrap()
    }

    #[test]
    fn free_pairs_of_triangles() {
        assert!(find_free_pairs(&hollow()).is_empty());
        assert_eq!(
            find_free_pairs(&filled()),
            vec![
                pair(&[0, 1, 2], &[0, 1]),
                pair(&[0, 1, 2], &[0, 2]),
                pair(&[0, 1, 2], &[1, 2])
            ]
        );
    }

    #[test]
    fn collapse_filled_triangle() {
        let k = collapse_pair(&filled(), &pair(&[0, 1, 2], &[0, 1])).unwrap();
        assert_eq!(k.facets(), vec![s(&[0, 2]), s(&[1, 2])]);
        assert_eq!(k.num_faces(), 6);
        assert!(k.is_downward_closed());
    }

    #[test]
    fn stale_pair_is_rejected() {
        let p = pair(&[0, 1, 2], &[0, 1]);
        let k = collapse_pair(&filled(), &p).unwrap();
        assert!(matches!(collapse_pair(&k, &p), Err(Error::State(_))));
        assert!(matches!(
            collapse_pair(&hollow(), &pair(&[0, 1], &[0])),
            Err(Error::State(_))
        ));
    }

    #[test]
    fn collapse_to_dimension_one() {
        let out = collapse_above_dim(&filled(), 1).unwrap();
        assert!(out.complete);
        assert_eq!(out.log, vec![pair(&[0, 1, 2], &[0, 1])]);
        assert_eq!(out.complex.facets(), vec![s(&[0, 2]), s(&[1, 2])]);
        let again = collapse_above_dim(&out.complex, 1).unwrap();
        assert!(again.log.is_empty());
        assert_eq!(again.complex, out.complex);
    }

    #[test]
    fn stuck_collapse_is_flagged() {
        // boundary of a tetrahedron has no free pairs at all
        let sphere =
            SimplicialComplex::build_from_facets(4, [s(&[0, 1, 2]), s(&[0, 1, 3]), s(&[0, 2, 3]), s(&[1, 2, 3])])
                .unwrap();
        let out = collapse_above_dim(&sphere, 1).unwrap();
        assert!(!out.complete);
        assert!(out.log.is_empty());
    }

    #[test]
    fn simplex_collapses_onto_face_then_point() {
        let simplex = SimplicialComplex::build_from_facets(6, [s(&[0, 1, 2, 3, 4, 5])]).unwrap();
        let triangle = SimplicialComplex::build_from_facets(6, [s(&[1, 3, 5])]).unwrap();
        let out = collapse_onto(&simplex, &triangle).unwrap();
        assert!(out.complete);
        assert_eq!(out.complex, triangle);
        assert!(collapses_to_point(&triangle).unwrap());
        assert!(!collapses_to_point(&hollow()).unwrap());
    }

    #[test]
    fn empty_face_is_never_free() {
        let point = SimplicialComplex::build_from_facets(1, [s(&[0])]).unwrap();
        assert!(find_free_pairs(&point).is_empty());
    }

    #[test]
    fn witnesses_require_a_facet() {
        assert!(collapse_witnesses(&filled(), s(&[0, 1])).is_err());
        assert_eq!(collapse_witnesses(&filled(), s(&[0, 1, 2])).unwrap(), vec![0, 1, 2]);
        assert_eq!(collapse_witnesses(&hollow(), s(&[0, 1])).unwrap(), Vec::<u32>::new());
    }
}
