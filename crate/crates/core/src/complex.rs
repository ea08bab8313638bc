//! Simplicial complexes with explicitly stored faces.
//!
//! Faces are kept per cardinality in ascending bit-set order, which fixes
//! the row and column order of every boundary matrix built from them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::pitchspace::{PitchUniverse, Scale, MAX_BITS};

/// Default upper bound on the universe size for exhaustive construction.
pub const DEFAULT_MAX_PITCHES: u32 = 24;

/// Environment variable overriding [`DEFAULT_MAX_PITCHES`].
pub const MAX_PITCHES_ENV: &str = "SCALE_COMPLEX_MAX_PITCHES";

/// Capacity limit in effect, honouring [`MAX_PITCHES_ENV`].
pub fn capacity_limit() -> u32 {
    std::env::var(MAX_PITCHES_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .map(|v| v.min(MAX_BITS))
        .unwrap_or(DEFAULT_MAX_PITCHES)
}

/// Face counts `(f₋₁, f₀, f₁, …)`; entry `i` counts faces with `i` elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FVector(pub Vec<usize>);

impl FVector {
    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// Number of faces of dimension `d` (cardinality `d + 1`).
    pub fn dim(&self, d: isize) -> usize {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.0.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A downward-closed family of subsets of `0..ground_set_size`, always
/// containing the empty face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    ground_set_size: u32,
    // faces[k] holds the faces with k elements
    faces: Vec<BTreeSet<Scale>>,
    facets: BTreeSet<Scale>,
}

impl SimplicialComplex {
    /// The complex `{∅}`.
    pub fn trivial(ground_set_size: u32) -> Result<Self> {
        Self::build_from_facets(ground_set_size, [Scale::EMPTY])
    }

    /// All subsets of the universe without a forbidden chromatic run,
    /// using the capacity limit from [`capacity_limit`].
    pub fn non_chromatic(u: &PitchUniverse) -> Result<Self> {
        Self::non_chromatic_with_limit(u, capacity_limit())
    }

    pub fn non_chromatic_with_limit(u: &PitchUniverse, limit: u32) -> Result<Self> {
        let n = u.n_pitches();
        if n > limit {
            return Err(Error::Capacity { n_pitches: n, limit });
        }
        let mut faces = vec![BTreeSet::new(); n as usize + 1];
        // Depth-first over sets built in ascending member order; a chromatic
        // set has only chromatic supersets, so the search prunes there.
        let mut stack = vec![(Scale::EMPTY, 0u32)];
        while let Some((s, next)) = stack.pop() {
            faces[s.len()].insert(s);
            for p in next..n {
                let t = s.with(p);
                if u.is_non_chromatic(t) {
                    stack.push((t, p + 1));
                }
            }
        }
        Ok(Self::from_layers(n, faces))
    }

    /// The complex whose faces are all subsets of the given facets.
    /// Listed sets contained in other listed sets are absorbed.
    pub fn build_from_facets<I: IntoIterator<Item = Scale>>(ground_set_size: u32, facets: I) -> Result<Self> {
        if ground_set_size > MAX_BITS {
            return Err(domain(format!(
                "ground set of size {ground_set_size} exceeds {MAX_BITS}"
            )));
        }
        let ground = ground_mask(ground_set_size);
        let mut faces: Vec<BTreeSet<Scale>> = vec![BTreeSet::new(); ground_set_size as usize + 1];
        faces[0].insert(Scale::EMPTY);
        for f in facets {
            if !f.is_subset_of(ground) {
                return Err(domain(format!("face {f} has members outside 0..{ground_set_size}")));
            }
            if faces[f.len()].contains(&f) {
                continue;
            }
            for t in f.subsets() {
                faces[t.len()].insert(t);
            }
        }
        Ok(Self::from_layers(ground_set_size, faces))
    }

    fn from_layers(ground_set_size: u32, mut faces: Vec<BTreeSet<Scale>>) -> Self {
        while faces.len() > 1 && faces.last().is_some_and(BTreeSet::is_empty) {
            faces.pop();
        }
        let mut k = SimplicialComplex {
            ground_set_size,
            faces,
            facets: BTreeSet::new(),
        };
        k.facets = k.iter_faces().filter(|&f| k.is_maximal(f)).collect();
        k
    }

    pub fn ground_set_size(&self) -> u32 {
        self.ground_set_size
    }

    pub fn contains(&self, face: Scale) -> bool {
        self.faces.get(face.len()).is_some_and(|layer| layer.contains(&face))
    }

    /// Largest face dimension; `-1` for `{∅}`.
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 2
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().map(BTreeSet::len).sum()
    }

    /// All faces, by ascending cardinality then encoding.
    pub fn iter_faces(&self) -> impl Iterator<Item = Scale> + '_ {
        self.faces.iter().flat_map(|layer| layer.iter().copied())
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces.iter().map(BTreeSet::len).collect())
    }

    /// Faces of dimension `d` in ascending encoding order; empty when `d`
    /// is out of range.
    pub fn faces_of_dim(&self, d: isize) -> Vec<Scale> {
        self.layer(d).map(|l| l.iter().copied().collect()).unwrap_or_default()
    }

    pub(crate) fn layer(&self, d: isize) -> Option<&BTreeSet<Scale>> {
        usize::try_from(d + 1).ok().and_then(|i| self.faces.get(i))
    }

    pub fn num_faces_of_dim(&self, d: isize) -> usize {
        self.layer(d).map_or(0, BTreeSet::len)
    }

    /// Maximal faces in ascending encoding order.
    pub fn facets(&self) -> Vec<Scale> {
        self.facets.iter().copied().collect()
    }

    pub fn is_facet(&self, face: Scale) -> bool {
        self.facets.contains(&face)
    }

    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(|f| f.len());
        match sizes.next() {
            Some(first) => sizes.all(|s| s == first),
            None => true,
        }
    }

    /// Union of all faces.
    pub fn vertices(&self) -> Scale {
        self.faces_of_dim(0).into_iter().fold(Scale::EMPTY, Scale::union)
    }

    /// Facets that contain `face`.
    pub fn facets_containing(&self, face: Scale) -> impl Iterator<Item = Scale> + '_ {
        self.facets.iter().copied().filter(move |f| face.is_subset_of(*f))
    }

    /// Faces with exactly one more element than `face`.
    pub fn cofaces(&self, face: Scale) -> impl Iterator<Item = Scale> + '_ {
        let outside = ground_mask(self.ground_set_size).difference(face);
        outside
            .members()
            .map(move |p| face.with(p))
            .filter(|t| self.contains(*t))
    }

    fn is_maximal(&self, face: Scale) -> bool {
        self.cofaces(face).next().is_none()
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.iter_faces().all(|f| other.contains(f))
    }

    /// Every subset of every face is a face, and ∅ is present.
    pub fn is_downward_closed(&self) -> bool {
        self.contains(Scale::EMPTY)
            && self
                .iter_faces()
                .all(|f| f.codim1_faces().all(|(_, t)| self.contains(t)))
    }

    /// Removes a facet `facet` and a face `free` of it, updating facets.
    /// The caller guarantees that `free` has no coface besides `facet`.
    pub(crate) fn remove_free_pair(&mut self, facet: Scale, free: Scale) {
        self.faces[facet.len()].remove(&facet);
        self.faces[free.len()].remove(&free);
        self.facets.remove(&facet);
        for (_, t) in facet.codim1_faces() {
            if t != free && self.is_maximal(t) {
                self.facets.insert(t);
            }
        }
        while self.faces.len() > 1 && self.faces.last().is_some_and(BTreeSet::is_empty) {
            self.faces.pop();
        }
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            ground_set_size: self.ground_set_size,
            facets: self.facets(),
            f_vector: Some(self.f_vector().0),
        }
    }

    /// Rebuilds a complex from its JSON form. A supplied `f_vector` must
    /// agree with the reconstructed complex.
    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        let k = Self::build_from_facets(json.ground_set_size, json.facets.iter().copied())?;
        if let Some(fv) = &json.f_vector {
            if *fv != k.f_vector().0 {
                return Err(Error::Parse(format!(
                    "declared f-vector {fv:?} does not match the facets (computed {:?})",
                    k.f_vector().0
                )));
            }
        }
        Ok(k)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: ComplexJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&json)
    }
}

/// JSON exchange form of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub ground_set_size: u32,
    pub facets: Vec<Scale>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_vector: Option<Vec<usize>>,
}

fn ground_mask(n: u32) -> Scale {
    Scale::from_bits(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
}
