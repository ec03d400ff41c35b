//! Exact sparse linear algebra over the rationals.
//!
//! Matrices are handled column by column: [`ColumnEchelon`] keeps a reduced
//! set of pivot columns and classifies each new column as independent of the
//! previous ones or as a linear combination of them. Tracking the unknown
//! vector alongside each column yields kernel vectors for free.

use std::collections::HashMap;
use std::hash::Hash;

use num_traits::Zero;

use crate::Q;

/// Sparse vector as `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(usize, Q)>;

/// `a − λ·b` on sorted sparse vectors.
pub fn axpy(a: &SparseVec, lambda: &Q, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -(lambda * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - lambda * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sorted sparse vector from unsorted entries, summing repeats.
pub fn sparse_from<I: IntoIterator<Item = (usize, Q)>>(entries: I) -> SparseVec {
    let mut v: Vec<(usize, Q)> = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// Outcome of pushing a column into a [`ColumnEchelon`].
#[derive(Debug, Clone, PartialEq)]
pub enum Pushed {
    /// The column is independent; it became a new pivot.
    Independent,
    /// The column depends on earlier ones. The tracked combination
    /// (the column's own tag minus the tags of the pivots subtracted) lies in
    /// the kernel of the map.
    Dependent(SparseVec),
}

struct Pivot {
    vec: SparseVec,
    tag: SparseVec,
}

/// Incremental column echelon form over `Q`.
#[derive(Default)]
pub struct ColumnEchelon {
    pivots: Vec<Pivot>,
    by_row: HashMap<usize, usize>,
}

impl ColumnEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `col` by the current pivots until its leading row is free.
    /// Returns the residue and the transformed tag.
    pub fn reduce(&self, mut col: SparseVec, mut tag: SparseVec) -> (SparseVec, SparseVec) {
        // every pivot's first entry sits on its pivot row, so each step
        // strictly increases the leading row of `col`
        while let Some((row, lead)) = col.first() {
            let Some(&k) = self.by_row.get(row) else { break };
            let lambda = lead.clone();
            let p = &self.pivots[k];
            col = axpy(&col, &lambda, &p.vec);
            if !p.tag.is_empty() {
                tag = axpy(&tag, &lambda, &p.tag);
            }
        }
        (col, tag)
    }

    /// Residue of `col` modulo the span of the pivots; empty iff in the span.
    pub fn residue(&self, col: SparseVec) -> SparseVec {
        self.reduce(col, Vec::new()).0
    }

    pub fn contains(&self, col: SparseVec) -> bool {
        self.residue(col).is_empty()
    }

    /// Adds a column with its tag (the unknown vector it is the image of).
    pub fn push(&mut self, col: SparseVec, tag: SparseVec) -> Pushed {
        let (col, tag) = self.reduce(col, tag);
        let Some((row, lead)) = col.first() else {
            return Pushed::Dependent(tag);
        };
        let row = *row;
        let inv = lead.recip();
        let vec: SparseVec = col.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        let tag: SparseVec = tag.into_iter().map(|(i, c)| (i, c * &inv)).collect();
        self.insert(row, vec, tag);
        Pushed::Independent
    }

    fn insert(&mut self, row: usize, vec: SparseVec, tag: SparseVec) {
        self.by_row.insert(row, self.pivots.len());
        self.pivots.push(Pivot { vec, tag });
    }

    /// Pivot columns (images) in insertion order.
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.pivots.iter().map(|p| &p.vec)
    }
}

/// Assigns consecutive indices to keys on first sight.
pub struct Indexer<K> {
    map: HashMap<K, usize>,
}

impl<K: Hash + Eq> Indexer<K> {
    pub fn new() -> Self {
        Indexer { map: HashMap::new() }
    }

    pub fn index(&mut self, key: K) -> usize {
        let next = self.map.len();
        *self.map.entry(key).or_insert(next)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

impl<K: Hash + Eq> Default for Indexer<K> {
    fn default() -> Self {
        Self::new()
    }
}

/// An exact rational matrix given by its columns over fixed bases.
#[derive(Debug, Clone)]
pub struct ExactLinearMap {
    nrows: usize,
    columns: Vec<SparseVec>,
}

impl ExactLinearMap {
    pub fn new(nrows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.iter().all(|(i, _)| *i < nrows)));
        ExactLinearMap { nrows, columns }
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(Vec::len).unwrap_or(0);
        let columns = (0..ncols)
            .map(|j| sparse_from((0..nrows).map(|i| (i, rows[i][j].clone()))))
            .collect();
        ExactLinearMap { nrows, columns }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn apply(&self, x: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.nrows];
        for (j, col) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for (i, c) in col {
                out[*i] += c * &x[j];
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.decompose().rank()
    }

    /// Greedy pivot columns and one kernel vector per dependent column.
    pub fn decompose(&self) -> crate::modular::ColumnDecomposition {
        crate::modular::decompose(self.nrows, &self.columns)
    }

    /// A basis of the kernel, one vector per dependent column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        self.decompose().kernel.into_iter().map(|(_, v)| v).collect()
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &ExactLinearMap) -> ExactLinearMap {
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: SparseVec = Vec::new();
                for (j, c) in col {
                    acc = axpy(&acc, &-c, &self.columns[*j]);
                }
                acc
            })
            .collect();
        ExactLinearMap { nrows: self.nrows, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}
