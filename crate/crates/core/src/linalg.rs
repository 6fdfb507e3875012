//! Exact linear algebra over `Q`.
//!
//! Elimination is fraction-free: every row is scaled to a primitive integer
//! vector, row operations are `a * row - b * pivot_row` with `gcd(a, b) = 1`,
//! and the content is divided out after each step. The pivot of a row is its
//! first nonzero column, so results are reproducible byte for byte.
//!
//! Rows are stored sparsely while eliminating. Public inputs and outputs are
//! dense vectors of [`Scalar`], except for [`SparseSystem`], which exists for
//! systems too tall to materialize densely.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("column index {col} out of range for {cols} columns")]
    Column { col: usize, cols: usize },
}

/// Dense `rows x cols` matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, cols: usize) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::Dimension {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(ExactMatrix {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| Scalar::from_integer(x)).collect())
            .collect();
        Self::from_rows(rows, cols).expect("rectangular input")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Dimension {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cell = &mut out.entries[i * other.cols + j];
                        *cell += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn sparse_rows(&self) -> impl Iterator<Item = Vec<(usize, Scalar)>> + '_ {
        (0..self.rows).map(move |i| {
            self.row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
    }
}

/// Primitive integer row: sorted `(column, value)` pairs, no zeros.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct IntRow(Vec<(usize, BigInt)>);

impl IntRow {
    fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> Option<usize> {
        self.0.first().map(|(c, _)| *c)
    }

    fn get(&self, col: usize) -> Option<&BigInt> {
        self.0
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.0[i].1)
    }

    /// `a * self - b * other`
    fn combine(&self, a: &BigInt, other: &IntRow, b: &BigInt) -> IntRow {
        let (x, y) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(x.len() + y.len());
        let (mut i, mut j) = (0, 0);
        let a_one = a.is_one();
        let scale_a = |v: &BigInt| if a_one { v.clone() } else { a * v };
        while i < x.len() || j < y.len() {
            let cx = x.get(i).map_or(usize::MAX, |e| e.0);
            let cy = y.get(j).map_or(usize::MAX, |e| e.0);
            if cx < cy {
                out.push((cx, scale_a(&x[i].1)));
                i += 1;
            } else if cy < cx {
                out.push((cy, -(b * &y[j].1)));
                j += 1;
            } else {
                let v = scale_a(&x[i].1) - b * &y[j].1;
                if !v.is_zero() {
                    out.push((cx, v));
                }
                i += 1;
                j += 1;
            }
        }
        IntRow(out)
    }

    fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, v) in &self.0 {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn divide(&mut self, g: &BigInt) {
        if !g.is_one() {
            for (_, v) in &mut self.0 {
                *v /= g;
            }
        }
    }

    fn negate(&mut self) {
        for (_, v) in &mut self.0 {
            *v = -std::mem::take(v);
        }
    }
}

/// Scales rationals to a primitive integer row; returns the row and the
/// positive factor `mu` with `row = mu * v` up to content removal.
fn integer_row(entries: impl IntoIterator<Item = (usize, Scalar)>) -> (IntRow, Scalar) {
    // Repeated columns are summed.
    let mut merged: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, x) in entries {
        *merged.entry(c).or_default() += x;
    }
    let entries: Vec<(usize, Scalar)> = merged.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    let mut lcm = BigInt::one();
    for (_, x) in &entries {
        lcm = lcm.lcm(x.denom());
    }
    let row: Vec<(usize, BigInt)> = entries
        .iter()
        .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
        .collect();
    let mut row = IntRow(row);
    let g = row.content();
    if g.is_zero() {
        return (row, Scalar::one());
    }
    row.divide(&g);
    let mu = Scalar::from_ratio(lcm, g).expect("nonzero content");
    (row, mu)
}

/// A row together with the combination of tracked inputs it equals:
/// `value = sum_j combo[j] * input_j`.
#[derive(Debug, Clone, Default)]
struct Row {
    value: IntRow,
    combo: IntRow,
}

impl Row {
    fn combine(&self, a: &BigInt, other: &Row, b: &BigInt) -> Row {
        Row {
            value: self.value.combine(a, &other.value, b),
            combo: self.combo.combine(a, &other.combo, b),
        }
    }

    fn normalize(&mut self) {
        let g = self.value.content().gcd(&self.combo.content());
        if !g.is_zero() {
            self.value.divide(&g);
            self.combo.divide(&g);
        }
        if let Some((_, lead)) = self.value.0.first() {
            if lead.is_negative() {
                self.value.negate();
                self.combo.negate();
            }
        }
    }
}

/// Incremental row echelon form. Only columns `< pivot_limit` may become
/// pivots; a row whose first surviving entry lies beyond the limit is an
/// inconsistency witness for an augmented system.
#[derive(Debug, Clone)]
struct Echelon {
    cols: usize,
    pivot_limit: usize,
    rows: BTreeMap<usize, Row>,
}

enum Insert {
    Pivot,
    Dependent,
    Beyond(Row),
}

impl Echelon {
    fn new(cols: usize, pivot_limit: usize) -> Self {
        Echelon {
            cols,
            pivot_limit,
            rows: BTreeMap::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Eliminates every pivot column of `row`, scanning left to right.
    fn reduce(&self, mut row: Row) -> Row {
        let mut start = 0;
        loop {
            let next = row
                .value
                .0
                .iter()
                .find(|(c, _)| *c >= start && self.rows.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, v)) = next else {
                return row;
            };
            let pivot = &self.rows[&col];
            let p = pivot.value.get(col).expect("pivot entry");
            let g = p.gcd(&v);
            row = row.combine(&(p / &g), pivot, &(v / &g));
            row.normalize();
            start = col + 1;
        }
    }

    fn insert(&mut self, row: Row) -> Insert {
        let mut row = self.reduce(row);
        row.normalize();
        match row.value.lead() {
            None => Insert::Dependent,
            Some(c) if c >= self.pivot_limit => Insert::Beyond(row),
            Some(c) => {
                self.rows.insert(c, row);
                Insert::Pivot
            }
        }
    }

    /// Back-substitution to reduced row echelon form (every pivot column is
    /// zero outside its own row).
    fn into_reduced(mut self) -> Echelon {
        let pivots: Vec<usize> = self.rows.keys().copied().collect();
        for (k, &c) in pivots.iter().enumerate().rev() {
            let pivot = self.rows[&c].clone();
            let p = pivot.value.get(c).expect("pivot entry").clone();
            for &d in &pivots[..k] {
                let row = self.rows.get_mut(&d).expect("row");
                if let Some(v) = row.value.get(c).cloned() {
                    let g = p.gcd(&v);
                    let mut new = row.combine(&(&p / &g), &pivot, &(v / &g));
                    new.normalize();
                    *row = new;
                }
            }
        }
        self
    }

    fn free_columns(&self) -> Vec<usize> {
        (0..self.pivot_limit.min(self.cols))
            .filter(|c| !self.rows.contains_key(c))
            .collect()
    }
}

fn to_dense(row: &IntRow, len: usize, denom: &BigInt) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (c, v) in &row.0 {
        if *c < len {
            out[*c] = Scalar::from_ratio(v.clone(), denom.clone()).expect("nonzero denominator");
        }
    }
    out
}

/// A linear system given row by row in sparse form, `sum_j a_ij x_j = b_i`.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    cols: usize,
    rows: Vec<(Vec<(usize, Scalar)>, Scalar)>,
}

/// Outcome of [`solve`] / [`SparseSystem::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// A solution (free variables set to zero) and the dimension of the
    /// solution space of the homogeneous system.
    Consistent {
        solution: Vec<Scalar>,
        nullity: usize,
    },
    /// `certificate . A = 0` while `certificate . b != 0`.
    Inconsistent { certificate: Vec<Scalar> },
}

impl Solution {
    pub fn solution(&self) -> Option<&[Scalar]> {
        match self {
            Solution::Consistent { solution, .. } => Some(solution),
            Solution::Inconsistent { .. } => None,
        }
    }

    pub fn is_consistent(&self) -> bool {
        matches!(self, Solution::Consistent { .. })
    }
}

impl SparseSystem {
    pub fn new(cols: usize) -> Self {
        SparseSystem {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds `sum (coef * x_col) = rhs`. Repeated columns are summed.
    pub fn push(&mut self, entries: Vec<(usize, Scalar)>, rhs: Scalar) -> Result<(), LinalgError> {
        let mut merged: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (c, v) in entries {
            if c >= self.cols {
                return Err(LinalgError::Column {
                    col: c,
                    cols: self.cols,
                });
            }
            *merged.entry(c).or_insert_with(Scalar::zero) += v;
        }
        self.rows.push((
            merged.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            rhs,
        ));
        Ok(())
    }

    pub fn push_homogeneous(&mut self, entries: Vec<(usize, Scalar)>) -> Result<(), LinalgError> {
        self.push(entries, Scalar::zero())
    }

    /// Integer form of row `i` of `[A | b]` and its scale factor.
    fn augmented(&self, i: usize) -> (IntRow, Scalar) {
        let (entries, rhs) = &self.rows[i];
        let mut all = entries.clone();
        all.push((self.cols, rhs.clone()));
        integer_row(all)
    }

    fn eliminate(&self, track: bool) -> (Echelon, Option<Row>) {
        let mut ech = Echelon::new(self.cols + 1, self.cols);
        for i in 0..self.rows.len() {
            let combo = if track {
                IntRow(vec![(i, BigInt::one())])
            } else {
                IntRow::default()
            };
            let row = Row {
                value: self.augmented(i).0,
                combo,
            };
            if let Insert::Beyond(bad) = ech.insert(row) {
                return (ech, Some(bad));
            }
        }
        (ech, None)
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols, self.cols);
        for (entries, _) in &self.rows {
            ech.insert(Row {
                value: integer_row(entries.iter().cloned()).0,
                combo: IntRow::default(),
            });
        }
        ech.rank()
    }

    /// Basis of `{x : A x = 0}` (right-hand sides ignored), one vector per
    /// free column in increasing order, with a `1` in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut ech = Echelon::new(self.cols, self.cols);
        for (entries, _) in &self.rows {
            ech.insert(Row {
                value: integer_row(entries.iter().cloned()).0,
                combo: IntRow::default(),
            });
        }
        let ech = ech.into_reduced();
        let free = ech.free_columns();
        free.iter()
            .map(|&f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (&c, row) in &ech.rows {
                    if let Some(x) = row.value.get(f) {
                        let p = row.value.get(c).expect("pivot");
                        v[c] = Scalar::from_ratio(-x.clone(), p.clone()).expect("pivot nonzero");
                    }
                }
                v
            })
            .collect()
    }

    pub fn solve(&self) -> Solution {
        let (ech, bad) = self.eliminate(false);
        if bad.is_some() {
            // Redo with row combinations tracked to extract a certificate.
            let (_, bad) = self.eliminate(true);
            let bad = bad.expect("elimination is deterministic");
            let mut certificate = to_dense(&bad.combo, self.rows.len(), &BigInt::one());
            for (i, y) in certificate.iter_mut().enumerate() {
                if !y.is_zero() {
                    *y *= self.augmented(i).1;
                }
            }
            return Solution::Inconsistent { certificate };
        }
        let nullity = self.cols - ech.rank();
        let ech = ech.into_reduced();
        let mut x = vec![Scalar::zero(); self.cols];
        for (&c, row) in &ech.rows {
            if let Some(rhs) = row.value.get(self.cols) {
                let p = row.value.get(c).expect("pivot");
                x[c] = Scalar::from_ratio(rhs.clone(), p.clone()).expect("pivot nonzero");
            }
        }
        Solution::Consistent {
            solution: x,
            nullity,
        }
    }

    /// Does `x` satisfy every equation?
    pub fn is_satisfied_by(&self, x: &[Scalar]) -> bool {
        x.len() == self.cols
            && self.rows.iter().all(|(entries, rhs)| {
                let lhs: Scalar = entries.iter().map(|(c, v)| v * &x[*c]).sum();
                &lhs == rhs
            })
    }
}

pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let mut sys = SparseSystem::new(m.cols());
    for row in m.sparse_rows() {
        sys.push_homogeneous(row).expect("columns in range");
    }
    sys.kernel_basis()
}

pub fn rank(m: &ExactMatrix) -> usize {
    let mut sys = SparseSystem::new(m.cols());
    for row in m.sparse_rows() {
        sys.push_homogeneous(row).expect("columns in range");
    }
    sys.rank()
}

/// Solves `m x = b` exactly.
pub fn solve(m: &ExactMatrix, b: &[Scalar]) -> Result<Solution, LinalgError> {
    if b.len() != m.rows() {
        return Err(LinalgError::Dimension {
            expected: m.rows(),
            found: b.len(),
        });
    }
    let mut sys = SparseSystem::new(m.cols());
    for (row, rhs) in m.sparse_rows().zip(b) {
        sys.push(row, rhs.clone())?;
    }
    Ok(sys.solve())
}

/// Expresses vectors as combinations of a fixed generating list.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    dim: usize,
    generators: usize,
    scales: Vec<Scalar>,
    echelon: Echelon,
}

impl SpanSolver {
    pub fn new(dim: usize, generators: &[Vec<Scalar>]) -> Result<Self, LinalgError> {
        let mut ech = Echelon::new(dim, dim);
        let mut scales = Vec::with_capacity(generators.len());
        for (j, g) in generators.iter().enumerate() {
            if g.len() != dim {
                return Err(LinalgError::Dimension {
                    expected: dim,
                    found: g.len(),
                });
            }
            let (value, mu) = integer_row(g.iter().cloned().enumerate());
            scales.push(mu);
            ech.insert(Row {
                value,
                combo: IntRow(vec![(j, BigInt::one())]),
            });
        }
        Ok(SpanSolver {
            dim,
            generators: generators.len(),
            scales,
            echelon: ech,
        })
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Coefficients `c` with `v = sum_j c_j * generator_j`, if any.
    pub fn express(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::Dimension {
                expected: self.dim,
                found: v.len(),
            });
        }
        let (value, mu) = integer_row(v.iter().cloned().enumerate());
        if value.is_empty() {
            return Ok(Some(vec![Scalar::zero(); self.generators]));
        }
        // `self_index` tracks the multiple of v itself inside the combination.
        let self_index = self.generators;
        let row = Row {
            value,
            combo: IntRow(vec![(self_index, BigInt::one())]),
        };
        let reduced = self.echelon.reduce(row);
        if !reduced.value.is_empty() {
            return Ok(None);
        }
        // 0 = k * mu * v + sum_j c_j * scale_j * g_j
        let k = reduced.combo.get(self_index).cloned().unwrap_or_default();
        assert!(!k.is_zero(), "vector dropped out of its own combination");
        let k = Scalar::from_bigint(k) * &mu;
        let mut coeffs = vec![Scalar::zero(); self.generators];
        for (j, c) in &reduced.combo.0 {
            if *j < self.generators {
                let num = -(Scalar::from_bigint(c.clone()) * &self.scales[*j]);
                coeffs[*j] = num.checked_div(&k).expect("k nonzero");
            }
        }
        Ok(Some(coeffs))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        Ok(self.express(v)?.is_some())
    }
}

/// Indices of a maximal linearly independent prefix-greedy subset of `vectors`.
pub fn independent_subset(dim: usize, vectors: &[Vec<Scalar>]) -> Result<Vec<usize>, LinalgError> {
    let mut ech = Echelon::new(dim, dim);
    let mut keep = Vec::new();
    for (j, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(LinalgError::Dimension {
                expected: dim,
                found: v.len(),
            });
        }
        let (value, _) = integer_row(v.iter().cloned().enumerate());
        if let Insert::Pivot = ech.insert(Row {
            value,
            combo: IntRow(Vec::new()),
        }) {
            keep.push(j);
        }
    }
    Ok(keep)
}

/// `K^n / span(relations)`, with the free (non-pivot) unit vectors as the
/// chosen basis of representatives.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    ambient_dim: usize,
    reduced: Echelon,
    free: Vec<usize>,
}

impl QuotientSpace {
    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Ambient coordinates of the unit vectors representing the basis.
    pub fn representative_columns(&self) -> &[usize] {
        &self.free
    }

    pub fn representatives(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim())
            .map(|i| self.lift(&unit(self.dim(), i)))
            .collect()
    }

    /// Quotient coordinates of `v`'s class.
    pub fn project(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.ambient_dim {
            return Err(LinalgError::Dimension {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let (value, mu) = integer_row(v.iter().cloned().enumerate());
        let row = Row {
            value,
            combo: IntRow(vec![(0, BigInt::one())]),
        };
        let reduced = self.reduced.reduce(row);
        // reduced.value = k * mu * v  modulo the relations
        let k = reduced.combo.get(0).cloned().unwrap_or_else(BigInt::one);
        let scale = Scalar::from_bigint(k) * &mu;
        Ok(self
            .free
            .iter()
            .map(|&f| match reduced.value.get(f) {
                Some(x) => Scalar::from_bigint(x.clone())
                    .checked_div(&scale)
                    .expect("nonzero"),
                None => Scalar::zero(),
            })
            .collect())
    }

    /// The representative vector of a class given by quotient coordinates.
    pub fn lift(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.ambient_dim];
        for (x, &f) in coords.iter().zip(&self.free) {
            v[f] = x.clone();
        }
        v
    }
}

pub fn quotient_basis(
    ambient_dim: usize,
    relations: &[Vec<Scalar>],
) -> Result<QuotientSpace, LinalgError> {
    let mut ech = Echelon::new(ambient_dim, ambient_dim);
    for r in relations {
        if r.len() != ambient_dim {
            return Err(LinalgError::Dimension {
                expected: ambient_dim,
                found: r.len(),
            });
        }
        ech.insert(Row {
            value: integer_row(r.iter().cloned().enumerate()).0,
            combo: IntRow::default(),
        });
    }
    quotient_from_echelon(ambient_dim, ech)
}

/// Same as [`quotient_basis`] with relations given sparsely.
pub fn quotient_basis_sparse(
    ambient_dim: usize,
    relations: impl IntoIterator<Item = Vec<(usize, Scalar)>>,
) -> Result<QuotientSpace, LinalgError> {
    let mut ech = Echelon::new(ambient_dim, ambient_dim);
    for r in relations {
        if let Some(&(c, _)) = r.iter().find(|(c, _)| *c >= ambient_dim) {
            return Err(LinalgError::Column {
                col: c,
                cols: ambient_dim,
            });
        }
        ech.insert(Row {
            value: integer_row(r).0,
            combo: IntRow::default(),
        });
    }
    quotient_from_echelon(ambient_dim, ech)
}

fn quotient_from_echelon(ambient_dim: usize, ech: Echelon) -> Result<QuotientSpace, LinalgError> {
    let reduced = ech.into_reduced();
    let free = reduced.free_columns();
    debug_assert_eq!(free.len() + reduced.pivot_columns().count(), ambient_dim);
    Ok(QuotientSpace {
        ambient_dim,
        reduced,
        free,
    })
}

pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Scalar::from_integer(x)).collect()
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&ExactMatrix::identity(3)).is_empty());
        assert_eq!(kernel_basis(&ExactMatrix::zeros(2, 2)).len(), 2);
        let k = kernel_basis(&ExactMatrix::from_i64(&[&[1, 1], &[1, 1]]));
        assert_eq!(k, vec![v(&[-1, 1])]);
        // a kernel vector is (1,-1) up to scale
        assert!(k[0][0] == -k[0][1].clone());
    }

    #[test]
    fn kernel_of_wide_matrix() {
        let m = ExactMatrix::from_i64(&[&[2, 4, 6, 8], &[1, 3, 5, 7]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(m.mul_vec(x).unwrap().iter().all(Scalar::is_zero));
        }
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn solving() {
        let b = v(&[3, -1, 7]);
        let s = solve(&ExactMatrix::identity(3), &b).unwrap();
        assert_eq!(s.solution().unwrap(), b.as_slice());
        let s = solve(&ExactMatrix::from_i64(&[&[2]]), &v(&[1])).unwrap();
        assert_eq!(s.solution().unwrap(), &["1/2".parse::<Scalar>().unwrap()]);
        let m = ExactMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        match solve(&m, &v(&[1, 0])).unwrap() {
            Solution::Inconsistent { certificate } => {
                let yt_m: Vec<Scalar> = (0..2).map(|j| dot(&certificate, &m.column(j))).collect();
                assert!(yt_m.iter().all(Scalar::is_zero));
                assert!(!dot(&certificate, &v(&[1, 0])).is_zero());
            }
            other => panic!("expected inconsistency, got {other:?}"),
        }
        assert!(matches!(
            solve(&m, &v(&[1])),
            Err(LinalgError::Dimension {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn underdetermined_solve_reports_nullity() {
        let m = ExactMatrix::from_i64(&[&[1, 2, 3]]);
        match solve(&m, &v(&[6])).unwrap() {
            Solution::Consistent { solution, nullity } => {
                assert_eq!(nullity, 2);
                assert_eq!(m.mul_vec(&solution).unwrap(), v(&[6]));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn quotients() {
        let q = quotient_basis(3, &[]).unwrap();
        assert_eq!(q.dim(), 3);
        assert_eq!(q.project(&v(&[1, 2, 3])).unwrap(), v(&[1, 2, 3]));
        let q = quotient_basis(2, &[v(&[1, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(q.dim(), 0);
        let q = quotient_basis(4, &[v(&[1, -1, 0, 0])]).unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q
            .project(&v(&[5, -5, 0, 0]))
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
        assert!(!q
            .project(&v(&[1, 0, 0, 0]))
            .unwrap()
            .iter()
            .all(Scalar::is_zero));
        // e1 and e2 are identified
        assert_eq!(
            q.project(&v(&[1, 0, 0, 0])).unwrap(),
            q.project(&v(&[0, 1, 0, 0])).unwrap()
        );
    }

    #[test]
    fn span_solver() {
        let gens = vec![v(&[1, 0, 1]), v(&[0, 2, 2]), v(&[1, 2, 3])];
        let s = SpanSolver::new(3, &gens).unwrap();
        assert_eq!(s.rank(), 2);
        let target = v(&[3, 4, 7]);
        let c = s.express(&target).unwrap().unwrap();
        let back: Vec<Scalar> = (0..3)
            .map(|i| (0..3).map(|j| &c[j] * &gens[j][i]).sum())
            .collect();
        assert_eq!(back, target);
        assert!(!s.contains(&v(&[0, 0, 1])).unwrap());
        assert!(s.contains(&v(&[0, 0, 0])).unwrap());
    }

    #[test]
    fn rational_entries() {
        let half: Scalar = "1/2".parse().unwrap();
        let third: Scalar = "1/3".parse().unwrap();
        let m = ExactMatrix::from_rows(
            vec![vec![half.clone(), third.clone()], vec![third, half]],
            2,
        )
        .unwrap();
        let b = v(&[1, 1]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.mul_vec(x.solution().unwrap()).unwrap(), b);
    }
}
