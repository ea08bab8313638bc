//! Chains, boundary operators and reduced simplicial homology over ℚ.
//!
//! Every face is oriented by listing its members in ascending order. The
//! boundary of `{v₀ < … < vₙ}` is `Σ (−1)ⁱ · {v₀ … v̂ᵢ … vₙ}`; in particular
//! each vertex maps to `+1·∅`, which makes the homology the reduced one.
//! The space of boundaries `∂ₙ₊₁(Cₙ₊₁)` is written `Rₙ` in some texts and
//! `Bₙ` in others.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{domain, Error, Result};
use crate::linalg::{kernel_basis, rank_exact, SparseMatrix, SparseVector};
use crate::pitchspace::Scale;

/// A formal rational combination of faces of one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    dimension: isize,
    terms: BTreeMap<Scale, BigRational>,
}

impl Chain {
    pub fn zero(dimension: isize) -> Self {
        Chain {
            dimension,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a chain, summing repeated faces and dropping zero terms.
    pub fn from_terms<I>(dimension: isize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scale, BigRational)>,
    {
        let mut c = Chain::zero(dimension);
        for (face, coeff) in terms {
            c.add_term(face, coeff)?;
        }
        Ok(c)
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_terms<I>(dimension: isize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Scale, i64)>,
    {
        Self::from_terms(
            dimension,
            terms.into_iter().map(|(f, c)| (f, BigRational::from_integer(c.into()))),
        )
    }

    pub fn add_term(&mut self, face: Scale, coeff: BigRational) -> Result<()> {
        if face.len() as isize != self.dimension + 1 {
            return Err(domain(format!(
                "face {face} does not have dimension {}",
                self.dimension
            )));
        }
        let entry = self.terms.entry(face).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&face);
        }
        Ok(())
    }

    pub fn dimension(&self) -> isize {
        self.dimension
    }

    pub fn terms(&self) -> &BTreeMap<Scale, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, face: Scale) -> BigRational {
        self.terms.get(&face).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Faces with nonzero coefficient, in face order.
    pub fn support(&self) -> Vec<Scale> {
        self.terms.keys().copied().collect()
    }

    pub fn scaled(&self, factor: &BigRational) -> Chain {
        if factor.is_zero() {
            return Chain::zero(self.dimension);
        }
        Chain {
            dimension: self.dimension,
            terms: self.terms.iter().map(|(f, c)| (*f, c * factor)).collect(),
        }
    }

    pub fn to_json(&self) -> ChainJson {
        ChainJson {
            dimension: self.dimension,
            terms: self
                .terms
                .iter()
                .map(|(face, c)| TermJson {
                    face: *face,
                    coeff: format!("{}/{}", c.numer(), c.denom()),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &ChainJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|t| Ok((t.face, parse_fraction(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(json.dimension, terms)
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (face, c)) in self.terms.iter().enumerate() {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}·")?;
            }
            write!(f, "{face}")?;
        }
        Ok(())
    }
}

/// JSON form of a chain; coefficients are exact `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub dimension: isize,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub face: Scale,
    pub coeff: String,
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_fraction(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("invalid fraction {text:?}"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

/// The matrix of `∂ₙ` with rows indexed by the `(n−1)`-faces and columns by
/// the `n`-faces, both in face order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    n: isize,
    rows: Vec<Scale>,
    cols: Vec<Scale>,
    // per column: (row index, ±1), ascending by row
    columns: Vec<Vec<(usize, i8)>>,
}

impl BoundaryMatrix {
    pub fn n(&self) -> isize {
        self.n
    }

    pub fn rows(&self) -> &[Scale] {
        &self.rows
    }

    pub fn cols(&self) -> &[Scale] {
        &self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, i8)] {
        &self.columns[j]
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.columns[col].iter().find(|(r, _)| *r == row).map_or(0, |(_, s)| *s)
    }

    /// Column of `face` as a chain of dimension `n − 1`.
    pub fn column_chain(&self, face: Scale) -> Option<Chain> {
        let j = self.cols.binary_search(&face).ok()?;
        let terms = self.columns[j].iter().map(|(r, s)| (self.rows[*r], i64::from(*s)));
        Chain::from_int_terms(self.n - 1, terms).ok()
    }

    pub fn to_sparse(&self) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.rows.len());
        for col in &self.columns {
            m.push_column(SparseVector::from_entries(
                col.iter().map(|(r, s)| (*r, BigInt::from(*s))),
            ));
        }
        m
    }
}

/// Signed codimension-one faces of `face`, by ascending omitted member.
pub fn boundary_terms(face: Scale) -> impl Iterator<Item = (Scale, i8)> {
    face.codim1_faces()
        .enumerate()
        .map(|(i, (_, t))| (t, if i % 2 == 0 { 1 } else { -1 }))
}

/// The boundary operator `∂ₙ` for `0 ≤ n ≤ dim K`.
pub fn boundary_matrix(k: &SimplicialComplex, n: isize) -> Result<BoundaryMatrix> {
    if n < 0 || n > k.dimension() {
        return Err(domain(format!(
            "boundary ∂_{n} is undefined for a complex of dimension {}",
            k.dimension()
        )));
    }
    let rows = k.faces_of_dim(n - 1);
    let cols = k.faces_of_dim(n);
    let index: HashMap<Scale, usize> = rows.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let columns = cols
        .iter()
        .map(|f| {
            let mut col: Vec<(usize, i8)> = boundary_terms(*f).map(|(t, s)| (index[&t], s)).collect();
            col.sort_unstable_by_key(|(r, _)| *r);
            col
        })
        .collect();
    Ok(BoundaryMatrix { n, rows, cols, columns })
}

/// Rank of `∂ₙ`, zero when the operator is absent.
pub fn boundary_rank(k: &SimplicialComplex, n: isize) -> usize {
    boundary_matrix(k, n).map_or(0, |m| rank_exact(&m.to_sparse()))
}

/// Reduced Betti numbers `(β̃₋₁, β̃₀, …, β̃_dim)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(pub Vec<usize>);

impl BettiVector {
    /// `β̃_d`, zero outside the stored range.
    pub fn dim(&self, d: isize) -> usize {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.0.get(i))
            .copied()
            .unwrap_or(0)
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    /// `Σ (−1)^d β̃_d` over `d ≥ −1`.
    pub fn alternating_sum(&self) -> i64 {
        alternating(&self.0)
    }

    /// Equality up to trailing zeros.
    pub fn same_as(&self, other: &BettiVector) -> bool {
        let n = self.0.len().max(other.0.len()) as isize;
        (-1..n).all(|d| self.dim(d) == other.dim(d))
    }

    /// Dimensions carrying nonzero homology.
    pub fn nonzero_dims(&self) -> Vec<isize> {
        (0..self.0.len())
            .filter(|&i| self.0[i] != 0)
            .map(|i| i as isize - 1)
            .collect()
    }
}

impl fmt::Display for BettiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `Σ (−1)^d x_d` for a sequence starting at `d = −1`.
pub fn alternating(xs: &[usize]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { -(x as i64) } else { x as i64 })
        .sum()
}

/// Reduced Betti numbers over ℚ: `β̃_d = f_d − rank ∂_d − rank ∂_{d+1}`.
///
/// The ranks of the individual boundary operators are independent and are
/// computed on separate threads.
pub fn reduced_betti(k: &SimplicialComplex) -> BettiVector {
    let top = k.dimension();
    let ranks: Vec<usize> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..=top).map(|n| scope.spawn(move || boundary_rank(k, n))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("rank worker panicked"))
            .collect()
    });
    let rank = |n: isize| -> usize {
        if n < 0 {
            0
        } else {
            ranks.get(n as usize).copied().unwrap_or(0)
        }
    };
    BettiVector(
        (-1..=top)
            .map(|d| k.num_faces_of_dim(d) - rank(d) - rank(d + 1))
            .collect(),
    )
}

/// Number of connected components of the 1-skeleton.
pub fn connected_components(k: &SimplicialComplex) -> Result<usize> {
    let vertices = k.faces_of_dim(0);
    if vertices.is_empty() {
        return Err(domain("a complex without vertices has no components"));
    }
    let index: HashMap<u32, usize> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| (v.members().next().expect("vertex"), i))
        .collect();
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for edge in k.faces_of_dim(1) {
        let mut ends = edge.members();
        let (a, b) = (ends.next().expect("edge"), ends.next().expect("edge"));
        let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
        parent[ra] = rb;
    }
    Ok((0..vertices.len()).filter(|&i| find(&mut parent, i) == i).count())
}

fn check_chain(c: &Chain, k: &SimplicialComplex) -> Result<()> {
    match c.terms.keys().find(|f| !k.contains(**f)) {
        Some(f) => Err(domain(format!("face {f} is not in the complex"))),
        None => Ok(()),
    }
}

/// `∂` applied to a chain of dimension at least 0.
pub fn apply_boundary(c: &Chain, k: &SimplicialComplex) -> Result<Chain> {
    if c.dimension < 0 {
        return Err(domain("the boundary of a (−1)-chain is not defined"));
    }
    check_chain(c, k)?;
    let mut out = Chain::zero(c.dimension - 1);
    for (face, coeff) in &c.terms {
        for (t, sign) in boundary_terms(*face) {
            out.add_term(t, coeff * BigRational::from_integer(BigInt::from(sign)))?;
        }
    }
    Ok(out)
}

/// True iff the chain has zero boundary. Every (−1)-chain is a cycle.
pub fn is_cycle(c: &Chain, k: &SimplicialComplex) -> Result<bool> {
    if c.dimension < 0 {
        check_chain(c, k)?;
        return Ok(true);
    }
    Ok(apply_boundary(c, k)?.is_zero())
}

fn chain_column(c: &Chain, rows: &HashMap<Scale, usize>) -> SparseVector {
    SparseVector::from_rationals(c.terms.iter().map(|(f, q)| (rows[f], q.clone())))
}

/// Dimension of the span of the classes of `cycles` in `H̃_d`:
/// `rank [cycles | ∂_{d+1}] − rank ∂_{d+1}`.
pub fn homology_rank_of_cycles(cycles: &[Chain], k: &SimplicialComplex, d: isize) -> Result<usize> {
    for c in cycles {
        if c.dimension != d {
            return Err(domain(format!("expected a {d}-chain, got a {}-chain", c.dimension)));
        }
        if !is_cycle(c, k)? {
            return Err(domain(format!("chain {c} is not a cycle")));
        }
    }
    let rows = k.faces_of_dim(d);
    let index: HashMap<Scale, usize> = rows.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut z = SparseMatrix::new(rows.len());
    for c in cycles {
        z.push_column(chain_column(c, &index));
    }
    let boundaries = match boundary_matrix(k, d + 1) {
        Ok(m) => m.to_sparse(),
        Err(_) => SparseMatrix::new(rows.len()),
    };
    Ok(rank_exact(&z.hcat(&boundaries)) - rank_exact(&boundaries))
}

/// A basis of the cycle space `Z_d` with primitive integer coefficients.
pub fn cycle_basis(k: &SimplicialComplex, d: isize) -> Vec<Chain> {
    let Ok(m) = boundary_matrix(k, d) else {
        // ∂_{-1} = 0: every (−1)-chain is a cycle
        return k
            .faces_of_dim(d)
            .into_iter()
            .map(|f| Chain::from_int_terms(d, [(f, 1)]).expect("face has dimension d"))
            .collect();
    };
    kernel_basis(&m.to_sparse())
        .into_iter()
        .map(|v| {
            let terms = v
                .entries()
                .iter()
                .map(|(j, x)| (m.cols[*j], BigRational::from_integer(x.clone())));
            Chain::from_terms(d, terms).expect("columns are d-faces")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: &[u32]) -> Scale {
        Scale::from_pitches(p.iter().copied()).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn k2() -> SimplicialComplex {
        SimplicialComplex::build_from_facets(3, [s(&[0, 1]), s(&[2])]).unwrap()
    }

    fn hollow() -> SimplicialComplex {
        SimplicialComplex::build_from_facets(3, [s(&[0, 1]), s(&[1, 2]), s(&[0, 2])]).unwrap()
    }

    fn filled() -> SimplicialComplex {
        SimplicialComplex::build_from_facets(3, [s(&[0, 1, 2])]).unwrap()
    }

    fn chain(d: isize, t: &[(&[u32], i64)]) -> Chain {
        Chain::from_int_terms(d, t.iter().map(|(f, c)| (s(f), *c))).unwrap()
    }

    #[test]
    fn boundary_columns() {
        let d2 = boundary_matrix(&filled(), 2).unwrap();
        assert_eq!(
            d2.column_chain(s(&[0, 1, 2])).unwrap(),
            chain(1, &[(&[1, 2], 1), (&[0, 2], -1), (&[0, 1], 1)])
        );
        let d1 = boundary_matrix(&k2(), 1).unwrap();
        assert_eq!(d1.column_chain(s(&[0, 1])).unwrap(), chain(0, &[(&[1], 1), (&[0], -1)]));
        let d0 = boundary_matrix(&k2(), 0).unwrap();
        assert_eq!(d0.rows(), &[Scale::EMPTY]);
        for j in 0..3 {
            assert_eq!(d0.column(j), &[(0, 1)]);
        }
        assert!(boundary_matrix(&k2(), 2).is_err());
        assert!(boundary_matrix(&k2(), -1).is_err());
    }

    #[test]
    fn betti_fixtures() {
        assert_eq!(reduced_betti(&k2()).0, vec![0, 1, 0]);
        assert_eq!(reduced_betti(&hollow()).0, vec![0, 0, 1]);
        assert_eq!(reduced_betti(&filled()).0, vec![0, 0, 0, 0]);
        assert_eq!(reduced_betti(&SimplicialComplex::trivial(3).unwrap()).0, vec![1]);
    }

    #[test]
    fn components() {
        assert_eq!(connected_components(&k2()).unwrap(), 2);
        assert_eq!(connected_components(&hollow()).unwrap(), 1);
        assert!(connected_components(&SimplicialComplex::trivial(2).unwrap()).is_err());
    }

    #[test]
    fn boundary_of_chains() {
        let c = chain(2, &[(&[0, 1, 2], 1)]);
        assert_eq!(
            apply_boundary(&c, &filled()).unwrap(),
            chain(1, &[(&[1, 2], 1), (&[0, 2], -1), (&[0, 1], 1)])
        );
        assert!(apply_boundary(&Chain::zero(1), &hollow()).unwrap().is_zero());
        let d = BigRational::new(3.into(), 7.into());
        let cyc = chain(1, &[(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], -1)]).scaled(&d);
        assert!(apply_boundary(&cyc, &hollow()).unwrap().is_zero());
        assert!(apply_boundary(&c, &hollow()).is_err());
    }

    #[test]
    fn cycle_predicate() {
        assert!(is_cycle(&chain(1, &[(&[0, 1], 1), (&[1, 2], 1), (&[0, 2], -1)]), &hollow()).unwrap());
        assert!(!is_cycle(&chain(1, &[(&[0, 1], 1)]), &k2()).unwrap());
        assert!(is_cycle(&Chain::zero(1), &k2()).unwrap());
    }

    #[test]
    fn boundary_cycle_is_trivial_in_homology() {
        let b = chain(1, &[(&[1, 2], 1), (&[0, 2], -1), (&[0, 1], 1)]);
        assert_eq!(
            homology_rank_of_cycles(std::slice::from_ref(&b), &filled(), 1).unwrap(),
            0
        );
        assert_eq!(homology_rank_of_cycles(&[b], &hollow(), 1).unwrap(), 1);
        let not_cycle = chain(1, &[(&[0, 1], 1)]);
        assert!(homology_rank_of_cycles(&[not_cycle], &hollow(), 1).is_err());
    }

    #[test]
    fn chain_terms_cancel() {
        let mut c = chain(0, &[(&[0], 2)]);
        c.add_term(s(&[0]), q(-2)).unwrap();
        assert!(c.is_zero());
        assert!(c.add_term(s(&[0, 1]), q(1)).is_err());
    }

    #[test]
    fn chain_json() {
        let c = Chain::from_terms(0, [(s(&[0]), BigRational::new(3.into(), 2.into())), (s(&[2]), q(-1))]).unwrap();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        assert_eq!(
            text,
            r#"{"dimension":0,"terms":[{"face":[0],"coeff":"3/2"},{"face":[2],"coeff":"-1/1"}]}"#
        );
        let back: ChainJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Chain::from_json(&back).unwrap(), c);
        assert!(parse_fraction("1/0").is_err());
        assert_eq!(parse_fraction("-4").unwrap(), q(-4));
        assert_eq!(c.to_string(), "3/2·{0} - {2}");
    }

    #[test]
    fn cycle_basis_of_hollow_triangle() {
        let basis = cycle_basis(&hollow(), 1);
        assert_eq!(basis, vec![chain(1, &[(&[0, 1], 1), (&[0, 2], -1), (&[1, 2], 1)])]);
        assert_eq!(cycle_basis(&k2(), -1).len(), 1);
    }
}
