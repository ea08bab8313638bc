//! Cyclic pitch-class universe, scales as bit sets, interval sequences and
//! the non-chromaticity predicate.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Largest universe a [`Scale`] bit set can represent.
pub const MAX_BITS: u32 = 64;

/// Note names under the sharp convention, indexed by pitch class.
pub const NOTE_NAMES: [&str; 12] = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"];

/// A cyclic universe of `n_pitches` pitch classes in which a scale is
/// chromatic iff it contains `run_limit` cyclically consecutive classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PitchUniverse {
    n_pitches: u32,
    run_limit: u32,
}

impl Default for PitchUniverse {
    /// Twelve pitch classes, no three in a row.
    fn default() -> Self {
        PitchUniverse {
            n_pitches: 12,
            run_limit: 3,
        }
    }
}

/// A single pitch class, `0 = C` through `11 = B` in the twelve-tone universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PitchClass(u32);

impl PitchClass {
    pub const fn new(index: u32) -> Self {
        PitchClass(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of pitch classes stored as a bit set; bit `p` is pitch class `p`.
///
/// The derived ordering compares the raw encoding, which is the global face
/// order used for boundary matrices and every listing in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scale(u64);

impl Scale {
    pub const EMPTY: Scale = Scale(0);

    pub const fn from_bits(bits: u64) -> Self {
        Scale(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// Builds a scale from raw indices. Indices must be below [`MAX_BITS`].
    pub fn from_pitches<I: IntoIterator<Item = u32>>(pitches: I) -> Result<Self> {
        let mut bits = 0u64;
        for p in pitches {
            if p >= MAX_BITS {
                return Err(domain(format!(
                    "pitch index {p} does not fit in a {MAX_BITS}-bit scale"
                )));
            }
            bits |= 1 << p;
        }
        Ok(Scale(bits))
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, p: u32) -> bool {
        p < MAX_BITS && self.0 & (1 << p) != 0
    }

    pub const fn with(self, p: u32) -> Scale {
        Scale(self.0 | (1 << p))
    }

    pub const fn without(self, p: u32) -> Scale {
        Scale(self.0 & !(1 << p))
    }

    pub const fn union(self, other: Scale) -> Scale {
        Scale(self.0 | other.0)
    }

    pub const fn intersection(self, other: Scale) -> Scale {
        Scale(self.0 & other.0)
    }

    pub const fn difference(self, other: Scale) -> Scale {
        Scale(self.0 & !other.0)
    }

    pub const fn is_subset_of(self, other: Scale) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest member plus one, or zero for the empty scale.
    pub const fn span(self) -> u32 {
        MAX_BITS - self.0.leading_zeros()
    }

    /// Members in ascending order.
    pub fn members(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.members().collect()
    }

    /// Every subset, including the empty set and the scale itself.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// The faces obtained by dropping one member, paired with the dropped
    /// member, in ascending order of the dropped member.
    pub fn codim1_faces(self) -> impl Iterator<Item = (u32, Scale)> {
        self.members().map(move |p| (p, self.without(p)))
    }

    /// Renders members with sharp note names (twelve-tone universe only).
    pub fn note_names(self) -> String {
        self.members()
            .map(|p| NOTE_NAMES.get(p as usize).copied().unwrap_or("?"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Scale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.members().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Scale {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.members())
    }
}

impl<'de> Deserialize<'de> for Scale {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let pitches = Vec::<u32>::deserialize(deserializer)?;
        Scale::from_pitches(pitches).map_err(serde::de::Error::custom)
    }
}

/// Iterator over the members of a [`Scale`].
#[derive(Debug, Clone)]
pub struct Members(u64);

impl Iterator for Members {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let p = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Members {}

/// Iterator over all submasks of a [`Scale`] in ascending encoding order.
#[derive(Debug, Clone)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Scale;

    fn next(&mut self) -> Option<Scale> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // next submask in increasing order
            Some(((cur | !self.mask).wrapping_add(1)) & self.mask)
        };
        Some(Scale(cur))
    }
}

/// The cyclic sequence of gaps between consecutive members of a scale.
///
/// Equality, hashing and ordering use the canonical form (the
/// lexicographically smallest rotation), so rotations compare equal.
#[derive(Debug, Clone)]
pub struct IntervalSequence {
    intervals: Vec<u32>,
    canonical: Vec<u32>,
}

impl IntervalSequence {
    pub fn from_intervals(intervals: Vec<u32>) -> Result<Self> {
        if intervals.is_empty() || intervals.contains(&0) {
            return Err(domain("interval sequences are non-empty with positive entries"));
        }
        let canonical = min_rotation(&intervals);
        Ok(IntervalSequence { intervals, canonical })
    }

    /// Intervals in the order they were produced (for a scale: starting at
    /// its smallest member).
    pub fn intervals(&self) -> &[u32] {
        &self.intervals
    }

    pub fn canonical(&self) -> &[u32] {
        &self.canonical
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.intervals.iter().sum()
    }

    /// Number of distinct cyclic rotations.
    pub fn distinct_rotations(&self) -> usize {
        let n = self.intervals.len();
        (1..=n)
            .find(|&k| n.is_multiple_of(k) && (0..n).all(|i| self.intervals[i] == self.intervals[(i + k) % n]))
            .unwrap_or(n)
    }

    /// Hyphen-joined canonical form, e.g. `1-2-2-1-2-2-2`.
    pub fn canonical_string(&self) -> String {
        join_hyphen(&self.canonical)
    }

    /// Parses hyphen-joined intervals such as `2-2-1-2-2-2-1`.
    pub fn parse(text: &str) -> Result<Self> {
        let intervals = text
            .trim()
            .split('-')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("interval {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_intervals(intervals)
    }
}

impl PartialEq for IntervalSequence {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for IntervalSequence {}

impl Hash for IntervalSequence {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl PartialOrd for IntervalSequence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntervalSequence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.canonical.cmp(&other.canonical)
    }
}

impl fmt::Display for IntervalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_hyphen(&self.intervals))
    }
}

pub(crate) fn join_hyphen(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join("-")
}

fn min_rotation(xs: &[u32]) -> Vec<u32> {
    let n = xs.len();
    (0..n)
        .map(|k| xs[k..].iter().chain(&xs[..k]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

impl PitchUniverse {
    pub fn new(n_pitches: u32, run_limit: u32) -> Result<Self> {
        if !(3..=MAX_BITS).contains(&n_pitches) {
            return Err(domain(format!(
                "pitch count must lie in 3..={MAX_BITS}, got {n_pitches}"
            )));
        }
        if run_limit < 2 || run_limit > n_pitches {
            return Err(domain(format!(
                "run limit must lie in 2..={n_pitches}, got {run_limit}"
            )));
        }
        Ok(PitchUniverse { n_pitches, run_limit })
    }

    pub const fn n_pitches(&self) -> u32 {
        self.n_pitches
    }

    pub const fn run_limit(&self) -> u32 {
        self.run_limit
    }

    pub fn is_default(&self) -> bool {
        *self == PitchUniverse::default()
    }

    /// The scale containing every pitch class.
    pub fn full_scale(&self) -> Scale {
        Scale(full_mask(self.n_pitches))
    }

    pub fn pitch(&self, index: u32) -> Result<PitchClass> {
        if index < self.n_pitches {
            Ok(PitchClass(index))
        } else {
            Err(domain(format!("pitch class {index} outside 0..{}", self.n_pitches)))
        }
    }

    pub fn scale(&self, pitches: &[u32]) -> Result<Scale> {
        let s = Scale::from_pitches(pitches.iter().copied())?;
        self.check_scale(s)?;
        Ok(s)
    }

    pub fn check_scale(&self, s: Scale) -> Result<()> {
        if s.is_subset_of(self.full_scale()) {
            Ok(())
        } else {
            Err(domain(format!("scale {s} has members outside 0..{}", self.n_pitches)))
        }
    }

    /// Minimum of the two clockwise distances.
    pub fn distance(&self, a: PitchClass, b: PitchClass) -> Result<u32> {
        self.pitch(a.0)?;
        self.pitch(b.0)?;
        let n = self.n_pitches;
        let forward = (b.0 + n - a.0) % n;
        Ok(forward.min(n - forward) % n)
    }

    /// Gaps between cyclically consecutive members, starting at the
    /// smallest member.
    pub fn interval_sequence(&self, s: Scale) -> Result<IntervalSequence> {
        self.check_scale(s)?;
        if s.is_empty() {
            return Err(domain("the empty scale has no interval sequence"));
        }
        let members = s.to_vec();
        let n = self.n_pitches;
        let intervals = members
            .iter()
            .zip(members.iter().cycle().skip(1))
            .map(|(&a, &b)| (b + n - a - 1) % n + 1)
            .collect();
        IntervalSequence::from_intervals(intervals)
    }

    /// True iff `s` contains no `run_limit` cyclically consecutive classes.
    /// Empty and single-note scales are vacuously non-chromatic.
    pub fn is_non_chromatic(&self, s: Scale) -> bool {
        let mut runs = s.0 & full_mask(self.n_pitches);
        for k in 1..self.run_limit {
            runs &= self.rotate_down(s.0, k);
            if runs == 0 {
                return true;
            }
        }
        runs == 0
    }

    /// Shifts every member up by `k` (mod N).
    pub fn transpose(&self, s: Scale, k: i64) -> Scale {
        let n = self.n_pitches;
        let k = k.rem_euclid(n as i64) as u32;
        Scale(self.rotate_down(s.0, (n - k) % n))
    }

    /// Number of shifts fixing `s`; always divides N.
    pub fn symmetry_order(&self, s: Scale) -> Result<u32> {
        self.check_scale(s)?;
        if s.is_empty() {
            return Err(domain("symmetry order of the empty scale is undefined"));
        }
        Ok((0..self.n_pitches)
            .filter(|&k| self.transpose(s, k as i64) == s)
            .count() as u32)
    }

    /// Size of the transposition orbit of `s`.
    pub fn orbit_size(&self, s: Scale) -> Result<u32> {
        Ok(self.n_pitches / self.symmetry_order(s)?)
    }

    /// Transpositions times distinct rotations of the interval sequence,
    /// e.g. 84 Gregorian modes for the major scale.
    pub fn mode_count(&self, s: Scale) -> Result<u32> {
        let rotations = self.interval_sequence(s)?.distinct_rotations() as u32;
        Ok(self.orbit_size(s)? * rotations)
    }

    /// Parses a scale from note names (twelve-tone universe only) or
    /// integers, separated by commas and/or whitespace.
    pub fn parse_scale(&self, text: &str) -> Result<Scale> {
        let mut s = Scale::EMPTY;
        for token in text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
        {
            let p = match token.parse::<u32>() {
                Ok(p) => p,
                Err(_) if self.n_pitches == 12 => parse_note_name(token)?,
                Err(_) => return Err(Error::Parse(format!("expected a pitch index, got {token:?}"))),
            };
            self.pitch(p)?;
            s = s.with(p);
        }
        Ok(s)
    }

    // bit p of the result is bit (p + k) mod N of `bits`
    fn rotate_down(&self, bits: u64, k: u32) -> u64 {
        let n = self.n_pitches;
        let bits = bits as u128 & full_mask(n) as u128;
        let k = k % n;
        (((bits >> k) | (bits << (n - k))) & full_mask(n) as u128) as u64
    }
}

fn full_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Parses a note name such as `C#`, `Db` or `bb` (flats are normalized).
pub fn parse_note_name(token: &str) -> Result<u32> {
    let mut chars = token.chars();
    let letter = chars.next().ok_or_else(|| Error::Parse("empty note name".into()))?;
    let base: i32 = match letter.to_ascii_uppercase() {
        'C' => 0,
        'D' => 2,
        'E' => 4,
        'F' => 5,
        'G' => 7,
        'A' => 9,
        'B' => 11,
        _ => return Err(Error::Parse(format!("unknown note name {token:?}"))),
    };
    let mut offset = 0i32;
    for c in chars {
        match c {
            '#' | '♯' => offset += 1,
            'b' | 'B' | '♭' => offset -= 1,
            _ => return Err(Error::Parse(format!("unknown accidental in {token:?}"))),
        }
    }
    Ok((base + offset).rem_euclid(12) as u32)
}
