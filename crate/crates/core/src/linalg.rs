//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are stored as sorted sparse integer columns. Elimination is
//! fraction-free: a column is reduced by `v ← a·v − b·p` against a stored
//! pivot column `p` and then divided by the content (gcd of its entries),
//! so no rational arithmetic and no rounding ever occurs.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse column: `(row, value)` pairs sorted by row, without zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVector(Vec<(usize, BigInt)>);

impl SparseVector {
    pub fn new() -> Self {
        SparseVector(Vec::new())
    }

    /// Builds a vector from arbitrary `(row, value)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_entries<I: IntoIterator<Item = (usize, BigInt)>>(entries: I) -> Self {
        let mut v: Vec<(usize, BigInt)> = entries.into_iter().collect();
        v.sort_by_key(|(r, _)| *r);
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(v.len());
        for (r, x) in v {
            match out.last_mut() {
                Some((lr, lx)) if *lr == r => *lx += x,
                _ => out.push((r, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        SparseVector(out)
    }

    /// Clears denominators of a rational vector; the result spans the same line.
    pub fn from_rationals<I: IntoIterator<Item = (usize, BigRational)>>(entries: I) -> Self {
        let entries: Vec<(usize, BigRational)> = entries.into_iter().collect();
        let lcm = entries.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        Self::from_entries(entries.into_iter().map(|(r, q)| (r, q.numer() * (&lcm / q.denom()))))
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, row: usize) -> BigInt {
        self.0
            .binary_search_by_key(&row, |(r, _)| *r)
            .map(|i| self.0[i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    fn lowest(&self) -> Option<&(usize, BigInt)> {
        self.0.last()
    }

    // a·self − b·other
    fn combine(&self, a: &BigInt, b: &BigInt, other: &SparseVector) -> SparseVector {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let ri = self.0.get(i).map_or(usize::MAX, |e| e.0);
            let rj = other.0.get(j).map_or(usize::MAX, |e| e.0);
            let (row, x) = if ri < rj {
                i += 1;
                (ri, a * &self.0[i - 1].1)
            } else if rj < ri {
                j += 1;
                (rj, -(b * &other.0[j - 1].1))
            } else {
                i += 1;
                j += 1;
                (ri, a * &self.0[i - 1].1 - b * &other.0[j - 1].1)
            };
            if !x.is_zero() {
                out.push((row, x));
            }
        }
        SparseVector(out)
    }

    fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x))
    }

    fn divide_exact(&mut self, d: &BigInt) {
        if !d.is_one() {
            for (_, x) in &mut self.0 {
                *x = &*x / d;
            }
        }
    }
}

/// A sparse integer matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    n_rows: usize,
    columns: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn new(n_rows: usize) -> Self {
        SparseMatrix {
            n_rows,
            columns: Vec::new(),
        }
    }

    /// Builds a matrix from dense rows.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let columns = (0..n_cols)
            .map(|j| SparseVector::from_entries((0..n_rows).map(|i| (i, BigInt::from(rows[i][j])))))
            .collect();
        SparseMatrix { n_rows, columns }
    }

    pub fn push_column(&mut self, column: SparseVector) {
        debug_assert!(column.0.iter().all(|(r, _)| *r < self.n_rows));
        self.columns.push(column);
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[SparseVector] {
        &self.columns
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n_rows, other.n_rows, "row counts differ");
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseMatrix {
            n_rows: self.n_rows,
            columns,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut rows = vec![vec![BigInt::zero(); self.n_cols()]; self.n_rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in &col.0 {
                rows[*i][j] = x.clone();
            }
        }
        rows
    }

    /// True iff `self · other` is the zero matrix.
    pub fn product_is_zero(&self, other: &SparseMatrix) -> bool {
        assert_eq!(self.n_cols(), other.n_rows, "inner dimensions differ");
        other.columns.iter().all(|col| {
            let image = SparseVector::from_entries(
                col.0
                    .iter()
                    .flat_map(|(k, x)| self.columns[*k].0.iter().map(move |(i, y)| (*i, x * y))),
            );
            image.is_zero()
        })
    }
}

/// Rank over the rationals, computed exactly.
pub fn rank_exact(m: &SparseMatrix) -> usize {
    reduce(m, false).rank
}

/// A basis of the null space `{x : M·x = 0}`, as integer vectors indexed by
/// column. The basis is deterministic for a fixed column order.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<SparseVector> {
    reduce(m, true).kernel
}

struct Reduction {
    rank: usize,
    kernel: Vec<SparseVector>,
}

fn reduce(m: &SparseMatrix, track: bool) -> Reduction {
    // pivot row -> (reduced column, column combination that produced it)
    let mut pivots: HashMap<usize, (SparseVector, SparseVector)> = HashMap::new();
    let mut kernel = Vec::new();
    for (j, col) in m.columns.iter().enumerate() {
        let mut v = col.clone();
        let mut comb = if track {
            SparseVector(vec![(j, BigInt::one())])
        } else {
            SparseVector::new()
        };
        loop {
            let Some((row, lead)) = v.lowest().cloned() else {
                if track {
                    normalize_sign(&mut comb);
                    kernel.push(comb);
                }
                break;
            };
            match pivots.get(&row) {
                Some((p, pcomb)) => {
                    let plead = &p.lowest().expect("pivot columns are nonzero").1;
                    let g = plead.gcd(&lead);
                    let a = plead / &g;
                    let b = &lead / &g;
                    v = v.combine(&a, &b, p);
                    if track {
                        comb = comb.combine(&a, &b, pcomb);
                    }
                    let mut c = v.content();
                    if track {
                        c = c.gcd(&comb.content());
                    }
                    if !c.is_zero() {
                        v.divide_exact(&c);
                        comb.divide_exact(&c);
                    }
                }
                None => {
                    pivots.insert(row, (v, comb));
                    break;
                }
            }
        }
    }
    Reduction {
        rank: pivots.len(),
        kernel,
    }
}

// primitive vector with a positive leading entry
fn normalize_sign(v: &mut SparseVector) {
    let c = v.content();
    if !c.is_zero() {
        v.divide_exact(&c);
    }
    if v.0.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in &mut v.0 {
            *x = -&*x;
        }
    }
}
