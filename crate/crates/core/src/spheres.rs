//! Messiaen scales and the 5-spheres they carry.
//!
//! Removing an augmented triad from the twelve pitch classes leaves three
//! chromatic trichords. Picking two notes from each trichord gives 27
//! hexatonic non-chromatic scales, and these span a 5-sphere (a join of
//! three hollow triangles) inside the non-chromatic complex. The four
//! spheres are tied together by one linear relation in top homology.

use std::collections::VecDeque;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::collapse::{collapse_onto, collapses_to_point};
use crate::complex::SimplicialComplex;
use crate::error::{domain, Error, Result};
use crate::homology::{cycle_basis, homology_rank_of_cycles, reduced_betti, BettiVector, Chain, ChainJson};
use crate::pitchspace::{PitchUniverse, Scale};

/// `{root, root + 4, root + 8}` in the twelve-tone universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AugmentedTriad {
    root: u32,
}

impl AugmentedTriad {
    /// The triad through `pitch`; roots are normalized to `0..4`.
    pub fn through(pitch: u32) -> Self {
        AugmentedTriad { root: pitch % 4 }
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn members(&self) -> Scale {
        Scale::from_bits((0b0001_0001_0001u64) << self.root)
    }
}

/// The nine-note complement of an augmented triad.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MessiaenScale {
    omitted: AugmentedTriad,
}

impl MessiaenScale {
    pub fn omitting(triad: AugmentedTriad) -> Self {
        MessiaenScale { omitted: triad }
    }

    pub fn omitted_triad(&self) -> AugmentedTriad {
        self.omitted
    }

    pub fn members(&self) -> Scale {
        Scale::from_bits(0xFFF).difference(self.omitted.members())
    }

    /// The three chromatic trichords between consecutive triad notes.
    pub fn trichords(&self) -> [Scale; 3] {
        let r = self.omitted.root;
        [0, 4, 8].map(|offset| Scale::from_pitches((1..=3).map(|i| (r + offset + i) % 12)).expect("pitch below 12"))
    }
}

fn require_default(u: &PitchUniverse) -> Result<()> {
    if u.is_default() {
        Ok(())
    } else {
        Err(Error::UnsupportedUniverse(format!(
            "Messiaen spheres need 12 pitch classes with run limit 3, got ({}, {})",
            u.n_pitches(),
            u.run_limit()
        )))
    }
}

pub fn augmented_triads(u: &PitchUniverse) -> Result<Vec<AugmentedTriad>> {
    require_default(u)?;
    Ok((0..4).map(AugmentedTriad::through).collect())
}

/// The four Messiaen scales, ordered by the root of the omitted triad.
pub fn messiaen_scales(u: &PitchUniverse) -> Result<Vec<MessiaenScale>> {
    Ok(augmented_triads(u)?.into_iter().map(MessiaenScale::omitting).collect())
}

/// The 27 hexatonic scales choosing two notes from each trichord, in face
/// order.
pub fn sphere_hexatonics(m: &MessiaenScale) -> Vec<Scale> {
    let pairs = |t: Scale| -> Vec<Scale> { t.members().map(|p| t.without(p)).collect() };
    let [a, b, c] = m.trichords();
    let mut out: Vec<Scale> = pairs(a)
        .into_iter()
        .flat_map(|x| pairs(b).into_iter().map(move |y| x.union(y)))
        .flat_map(|xy| pairs(c).into_iter().map(move |z| xy.union(z)))
        .collect();
    out.sort();
    out
}

pub fn sphere_subcomplex(m: &MessiaenScale) -> SimplicialComplex {
    SimplicialComplex::build_from_facets(12, sphere_hexatonics(m)).expect("hexatonics lie in 0..12")
}

/// Evidence that a pure complex behaves like a `d`-sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SphereCertificate {
    pub dimension: isize,
    pub betti: BettiVector,
    /// Reduced Betti numbers are those of `Sᵈ`.
    pub homology_sphere: bool,
    /// Every `(d−1)`-face lies in exactly two `d`-faces.
    pub closed_pseudomanifold: bool,
    /// The `d`-faces are connected through shared `(d−1)`-faces.
    pub dual_connected: bool,
}

impl SphereCertificate {
    pub fn passed(&self) -> bool {
        self.homology_sphere && self.closed_pseudomanifold && self.dual_connected
    }
}

/// Checks homology, the pseudomanifold condition and dual connectivity of a
/// pure `d`-dimensional complex.
pub fn verify_homology_sphere(k: &SimplicialComplex, d: isize) -> Result<SphereCertificate> {
    if d < 0 || !k.facets().iter().all(|f| f.len() as isize == d + 1) {
        return Err(domain(format!("complex is not pure of dimension {d}")));
    }
    let betti = reduced_betti(k);
    let homology_sphere = (-1..=k.dimension()).all(|i| betti.dim(i) == usize::from(i == d));

    let top = k.faces_of_dim(d);
    let ridges = k.faces_of_dim(d - 1);
    let closed_pseudomanifold = ridges.iter().all(|r| k.cofaces(*r).count() == 2);

    let mut seen = vec![false; top.len()];
    let mut queue = VecDeque::from([0usize]);
    if let Some(first) = seen.first_mut() {
        *first = true;
    }
    while let Some(i) = queue.pop_front() {
        for (_, ridge) in top[i].codim1_faces() {
            for nb in k.cofaces(ridge) {
                let j = top.binary_search(&nb).expect("coface of a ridge is a top face");
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
    }
    let dual_connected = !top.is_empty() && seen.iter().all(|&s| s);

    Ok(SphereCertificate {
        dimension: d,
        betti,
        homology_sphere,
        closed_pseudomanifold,
        dual_connected,
    })
}

/// The generator of the one-dimensional cycle space `Z_d`, with `±1`
/// coefficients on every `d`-face and `+1` on the first face.
pub fn fundamental_cycle(k: &SimplicialComplex, d: isize) -> Result<Chain> {
    let basis = cycle_basis(k, d);
    let [cycle] = <[Chain; 1]>::try_from(basis)
        .map_err(|b| Error::Inconsistency(format!("cycle space of dimension {d} has rank {}, expected 1", b.len())))?;
    let faces = k.faces_of_dim(d);
    let first = cycle.coefficient(faces[0]);
    if first.is_zero() {
        return Err(Error::Inconsistency("fundamental cycle misses the first face".into()));
    }
    let cycle = cycle.scaled(&first.recip());
    if cycle.terms().len() != faces.len() || !cycle.terms().values().all(|c| c.abs().is_one()) {
        return Err(Error::Inconsistency(
            "fundamental cycle is not a ±1 sum over all top faces".into(),
        ));
    }
    Ok(cycle)
}

/// Intersection of two distinct Messiaen scales: a hexatonic facet.
pub fn pairwise_intersection(a: &MessiaenScale, b: &MessiaenScale) -> Result<Scale> {
    if a == b {
        return Err(domain("pairwise intersection needs two distinct Messiaen scales"));
    }
    Ok(a.members().intersection(b.members()))
}

/// Intersection of three distinct Messiaen scales: the remaining triad.
pub fn triple_intersection(a: &MessiaenScale, b: &MessiaenScale, c: &MessiaenScale) -> Result<Scale> {
    if a == b || b == c || a == c {
        return Err(domain("triple intersection needs three distinct Messiaen scales"));
    }
    Ok(a.members().intersection(b.members()).intersection(c.members()))
}

/// Index subsets of `0..n` with `size` elements, in lexicographic order.
fn index_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == size)
        .map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect::<Vec<_>>())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Homology rank of a subset of the fundamental cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetRank {
    pub spheres: Vec<usize>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisReport {
    pub cycles: Vec<Chain>,
    /// Every non-empty subset of the four cycles with its homology rank.
    pub ranks: Vec<SubsetRank>,
    pub betti_top: usize,
}

impl BasisReport {
    pub fn rank_of(&self, spheres: &[usize]) -> Option<usize> {
        self.ranks.iter().find(|r| r.spheres == spheres).map(|r| r.rank)
    }

    /// Any three cycles are independent and all four span a 3-dimensional space.
    pub fn any_three_form_a_basis(&self) -> bool {
        let triples_ok = index_subsets(4, 3).iter().all(|t| self.rank_of(t) == Some(3));
        triples_ok && self.rank_of(&[0, 1, 2, 3]) == Some(3) && self.betti_top == 3
    }
}

/// Fundamental 5-cycles of the four Messiaen spheres and the homology rank
/// of every subset of them inside `k_nc`.
pub fn basis_report(k_nc: &SimplicialComplex) -> Result<BasisReport> {
    let u = PitchUniverse::default();
    if k_nc.ground_set_size() != 12 {
        return Err(Error::UnsupportedUniverse(
            "basis report needs the twelve-tone complex".into(),
        ));
    }
    let cycles = messiaen_scales(&u)?
        .iter()
        .map(|m| fundamental_cycle(&sphere_subcomplex(m), 5))
        .collect::<Result<Vec<_>>>()?;
    let mut ranks = Vec::new();
    for size in 1..=cycles.len() {
        for subset in index_subsets(cycles.len(), size) {
            let chosen: Vec<Chain> = subset.iter().map(|&i| cycles[i].clone()).collect();
            let rank = homology_rank_of_cycles(&chosen, k_nc, 5)?;
            ranks.push(SubsetRank { spheres: subset, rank });
        }
    }
    let betti_top = reduced_betti(k_nc).dim(5);
    Ok(BasisReport {
        cycles,
        ranks,
        betti_top,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SphereEntry {
    pub omitted_triad: Scale,
    pub members: Scale,
    pub hexatonics: Vec<Scale>,
    pub certificate: SphereCertificate,
    pub certified: bool,
    pub fundamental_cycle: ChainJson,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairwiseEntry {
    pub spheres: [usize; 2],
    pub intersection: Scale,
    pub interval_sequence: String,
    pub is_facet: bool,
    /// The common simplex collapses onto each triad it contains.
    pub collapses_to_triads: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TripleEntry {
    pub spheres: [usize; 3],
    pub intersection: Scale,
    pub is_augmented_triad: bool,
    pub triad_collapses_to_point: bool,
}

/// Everything known about the four Messiaen spheres, in a fixed order.
#[derive(Debug, Clone, Serialize)]
pub struct SphereReport {
    pub spheres: Vec<SphereEntry>,
    pub pairwise_intersections: Vec<PairwiseEntry>,
    pub triple_intersections: Vec<TripleEntry>,
    pub quadruple_intersection: Scale,
    pub basis_ranks: Vec<SubsetRank>,
    pub betti_5: usize,
}

pub fn sphere_report(u: &PitchUniverse, k_nc: &SimplicialComplex) -> Result<SphereReport> {
    let ms = messiaen_scales(u)?;
    let basis = basis_report(k_nc)?;

    let mut spheres = Vec::new();
    for (m, cycle) in ms.iter().zip(&basis.cycles) {
        let sub = sphere_subcomplex(m);
        let certificate = verify_homology_sphere(&sub, 5)?;
        spheres.push(SphereEntry {
            omitted_triad: m.omitted_triad().members(),
            members: m.members(),
            hexatonics: sphere_hexatonics(m),
            certified: certificate.passed(),
            certificate,
            fundamental_cycle: cycle.to_json(),
        });
    }

    let triads: Vec<Scale> = augmented_triads(u)?.iter().map(AugmentedTriad::members).collect();
    let mut pairwise = Vec::new();
    for ij in index_subsets(4, 2) {
        let (i, j) = (ij[0], ij[1]);
        let h = pairwise_intersection(&ms[i], &ms[j])?;
        let simplex = SimplicialComplex::build_from_facets(12, [h])?;
        let mut collapses = true;
        for t in triads.iter().filter(|t| t.is_subset_of(h)) {
            let target = SimplicialComplex::build_from_facets(12, [*t])?;
            collapses &= collapse_onto(&simplex, &target)?.complete;
        }
        pairwise.push(PairwiseEntry {
            spheres: [i, j],
            intersection: h,
            interval_sequence: u.interval_sequence(h)?.to_string(),
            is_facet: k_nc.is_facet(h),
            collapses_to_triads: collapses,
        });
    }

    let mut triples = Vec::new();
    for ijk in index_subsets(4, 3) {
        let t = triple_intersection(&ms[ijk[0]], &ms[ijk[1]], &ms[ijk[2]])?;
        triples.push(TripleEntry {
            spheres: [ijk[0], ijk[1], ijk[2]],
            intersection: t,
            is_augmented_triad: triads.contains(&t),
            triad_collapses_to_point: collapses_to_point(&SimplicialComplex::build_from_facets(12, [t])?)?,
        });
    }

    let quadruple_intersection = ms
        .iter()
        .fold(Scale::from_bits(0xFFF), |acc, m| acc.intersection(m.members()));

    Ok(SphereReport {
        spheres,
        pairwise_intersections: pairwise,
        triple_intersections: triples,
        quadruple_intersection,
        basis_ranks: basis.ranks,
        betti_5: basis.betti_top,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: &[u32]) -> Scale {
        Scale::from_pitches(p.iter().copied()).unwrap()
    }

    fn m(root: u32) -> MessiaenScale {
        MessiaenScale::omitting(AugmentedTriad::through(root))
    }

    #[test]
    fn four_messiaen_scales() {
        let ms = messiaen_scales(&PitchUniverse::default()).unwrap();
        assert_eq!(ms.len(), 4);
        assert_eq!(ms[0].members(), s(&[1, 2, 3, 5, 6, 7, 9, 10, 11]));
        let union = ms
            .iter()
            .fold(Scale::EMPTY, |a, m| a.union(m.omitted_triad().members()));
        assert_eq!(union, s(&(0..12).collect::<Vec<_>>()));
        assert!(matches!(
            messiaen_scales(&PitchUniverse::new(10, 3).unwrap()),
            Err(Error::UnsupportedUniverse(_))
        ));
    }

    #[test]
    fn hexatonics_of_first_sphere() {
        let hex = sphere_hexatonics(&m(0));
        assert_eq!(hex.len(), 27);
        assert!(hex.contains(&s(&[1, 2, 5, 6, 9, 10])));
        assert_eq!(m(0).trichords(), [s(&[1, 2, 3]), s(&[5, 6, 7]), s(&[9, 10, 11])]);
    }

    #[test]
    fn sphere_subcomplex_shape() {
        let k = sphere_subcomplex(&m(0));
        let fv = k.f_vector();
        assert_eq!(fv.counts()[..2], [1, 9]);
        assert_eq!(fv.dim(5), 27);
        assert!(verify_homology_sphere(&k, 5).unwrap().passed());
    }

    #[test]
    fn certificates_on_triangles() {
        let hollow = SimplicialComplex::build_from_facets(3, [s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]).unwrap();
        assert!(verify_homology_sphere(&hollow, 1).unwrap().passed());
        let filled = SimplicialComplex::build_from_facets(3, [s(&[0, 1, 2])]).unwrap();
        let cert = verify_homology_sphere(&filled, 2).unwrap();
        assert!(!cert.passed());
        assert!(!cert.closed_pseudomanifold);
        assert!(verify_homology_sphere(&filled, 1).is_err());
    }

    #[test]
    fn disconnected_circles_fail_connectivity() {
        let two = SimplicialComplex::build_from_facets(
            6,
            [s(&[0, 1]), s(&[1, 2]), s(&[0, 2]), s(&[3, 4]), s(&[4, 5]), s(&[3, 5])],
        )
        .unwrap();
        let cert = verify_homology_sphere(&two, 1).unwrap();
        assert!(cert.closed_pseudomanifold);
        assert!(!cert.dual_connected);
        assert!(!cert.homology_sphere);
    }

    #[test]
    fn hollow_triangle_fundamental_cycle() {
        let hollow = SimplicialComplex::build_from_facets(3, [s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]).unwrap();
        let z = fundamental_cycle(&hollow, 1).unwrap();
        let expected = Chain::from_int_terms(1, [(s(&[0, 1]), 1), (s(&[1, 2]), 1), (s(&[0, 2]), -1)]).unwrap();
        assert_eq!(z, expected);
        assert_eq!(fundamental_cycle(&hollow, 1).unwrap(), z);
        let filled = SimplicialComplex::build_from_facets(3, [s(&[0, 1, 2])]).unwrap();
        assert!(matches!(fundamental_cycle(&filled, 2), Err(Error::Inconsistency(_))));
    }

    #[test]
    fn intersections() {
        assert_eq!(pairwise_intersection(&m(0), &m(2)).unwrap(), s(&[1, 3, 5, 7, 9, 11]));
        assert_eq!(pairwise_intersection(&m(0), &m(1)).unwrap(), s(&[2, 3, 6, 7, 10, 11]));
        assert!(pairwise_intersection(&m(0), &m(0)).is_err());
        assert_eq!(triple_intersection(&m(0), &m(1), &m(2)).unwrap(), s(&[3, 7, 11]));
        assert!(triple_intersection(&m(0), &m(1), &m(1)).is_err());
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            index_subsets(4, 3),
            vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]
        );
    }
}
