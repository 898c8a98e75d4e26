//! Exact rational linear algebra.
//!
//! Vectors and matrices are sparse (index maps with no stored zeros). Row
//! reduction always pivots on the lowest available column and, within a
//! column, on the lowest-index row, so every echelon form produced here is
//! reproducible bit for bit.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    Q::from_str(t).map_err(|_| Error::InvalidInput(format!("not a rational number: {t:?}")))
}

/// `Some(n)` when `x` is an integer that fits in an `i64`.
pub fn as_int(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVector {
    dim: usize,
    entries: BTreeMap<usize, Q>,
}

impl fmt::Debug for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{v}")?;
        }
        write!(f, "]/{}", self.dim)
    }
}

impl SparseVector {
    pub fn zero(dim: usize) -> Self {
        SparseVector { dim, entries: BTreeMap::new() }
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.set(i, Q::one());
        v
    }

    pub fn from_dense(values: &[Q]) -> Self {
        let mut v = Self::zero(values.len());
        for (i, x) in values.iter().enumerate() {
            v.set(i, x.clone());
        }
        v
    }

    pub fn from_ints(values: &[i64]) -> Self {
        let dense: Vec<Q> = values.iter().map(|&x| q(x)).collect();
        Self::from_dense(&dense)
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut v = Self::zero(dim);
        for (i, x) in entries {
            v.add_at(i, &x);
        }
        v
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        self.entries.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn entry(&self, i: usize) -> Option<&Q> {
        self.entries.get(&i)
    }

    pub fn set(&mut self, i: usize, x: Q) {
        assert!(i < self.dim, "index {i} out of range {}", self.dim);
        if x.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, x);
        }
    }

    pub fn add_at(&mut self, i: usize, x: &Q) {
        assert!(i < self.dim, "index {i} out of range {}", self.dim);
        if x.is_zero() {
            return;
        }
        let slot = self.entries.entry(i).or_insert_with(Q::zero);
        *slot += x;
        if slot.is_zero() {
            self.entries.remove(&i);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn leading(&self) -> Option<(usize, &Q)> {
        self.entries.iter().next().map(|(i, x)| (*i, x))
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Q, other: &SparseVector) {
        debug_assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_at(i, &(c * x));
        }
    }

    pub fn scaled(&self, c: &Q) -> SparseVector {
        if c.is_zero() {
            return SparseVector::zero(self.dim);
        }
        SparseVector {
            dim: self.dim,
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, x) in self.iter() {
            out[i] = x.clone();
        }
        out
    }

    /// Re-index into a space of dimension `dim` through `map` (entries mapped to `None` are dropped).
    pub fn reindex(&self, dim: usize, map: impl Fn(usize) -> Option<usize>) -> SparseVector {
        let mut out = SparseVector::zero(dim);
        for (i, x) in self.iter() {
            if let Some(j) = map(i) {
                out.add_at(j, x);
            }
        }
        out
    }
}

impl std::ops::Add for &SparseVector {
    type Output = SparseVector;
    fn add(self, rhs: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.axpy(&Q::one(), rhs);
        out
    }
}

impl std::ops::Sub for &SparseVector {
    type Output = SparseVector;
    fn sub(self, rhs: &SparseVector) -> SparseVector {
        let mut out = self.clone();
        out.axpy(&-Q::one(), rhs);
        out
    }
}

/// Row-major sparse matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![SparseVector::zero(cols); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SparseVector>) -> Result<Self> {
        for r in &rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.dim() });
            }
        }
        Ok(SparseMatrix { rows: rows.len(), cols, data: rows })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[SparseVector]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: c.dim() });
            }
            for (i, x) in c.iter() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<Q>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows.iter().map(|r| SparseVector::from_dense(r)).collect();
        SparseMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.data[i].set(j, x);
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Q) {
        self.data[i].add_at(j, x);
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.data[i]
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.iter() {
                t.set(j, i, x.clone());
            }
        }
        t
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> SparseVector {
        let mut v = SparseVector::zero(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            if let Some(x) = r.entry(j) {
                v.set(i, x.clone());
            }
        }
        v
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        assert_eq!(v.dim(), self.cols, "apply: dimension mismatch");
        let mut out = SparseVector::zero(self.rows);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = Q::zero();
            // iterate over the sparser side
            if r.nnz() <= v.nnz() {
                for (j, x) in r.iter() {
                    if let Some(y) = v.entry(j) {
                        acc += x * y;
                    }
                }
            } else {
                for (j, y) in v.iter() {
                    if let Some(x) = r.entry(j) {
                        acc += x * y;
                    }
                }
            }
            out.set(i, acc);
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "mul: dimension mismatch");
        let mut out = SparseMatrix::zeros(self.rows, other.cols);
        for (i, r) in self.data.iter().enumerate() {
            let mut acc = SparseVector::zero(other.cols);
            for (k, x) in r.iter() {
                acc.axpy(x, &other.data[k]);
            }
            out.data[i] = acc;
        }
        out
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, c: &Q) -> SparseMatrix {
        let data = self.data.iter().map(|r| r.scaled(c)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    /// `self - c * I`
    pub fn shift(&self, c: &Q) -> Result<SparseMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut out = self.clone();
        let neg = -c;
        for i in 0..self.rows {
            out.add_at(i, i, &neg);
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        self.data.iter().map(|r| r.to_dense()).collect()
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: SparseMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form. Zero rows are moved to the bottom.
pub fn rref(m: &SparseMatrix) -> Rref {
    let mut rows: Vec<SparseVector> = m.rows().to_vec();
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..m.ncols() {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| rows[r].entry(col).is_some()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next].get(col).recip();
        rows[next] = rows[next].scaled(&inv);
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next {
                continue;
            }
            if let Some(x) = row.entry(col) {
                let c = -x.clone();
                row.axpy(&c, &pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    let rank = pivots.len();
    Rref { matrix: SparseMatrix { rows: m.nrows(), cols: m.ncols(), data: rows }, pivots, rank }
}

pub fn rank(m: &SparseMatrix) -> usize {
    rref(m).rank
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn kernel(m: &SparseMatrix) -> Vec<SparseVector> {
    let r = rref(m);
    let n = m.ncols();
    let pivot_set: std::collections::BTreeSet<usize> = r.pivots.iter().copied().collect();
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivot_set.contains(c)) {
        let mut v = SparseVector::unit(n, free);
        for (k, &p) in r.pivots.iter().enumerate() {
            if let Some(x) = r.matrix.row(k).entry(free) {
                v.set(p, -x.clone());
            }
        }
        out.push(v);
    }
    out
}

/// A subspace of `Q^n`, stored as the nonzero rows of its reduced echelon form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    dim: usize,
    rows: Vec<SparseVector>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        Subspace { dim, rows: (0..dim).map(|i| SparseVector::unit(dim, i)).collect() }
    }

    pub fn span(dim: usize, vectors: &[SparseVector]) -> Result<Self> {
        let mut s = Subspace::zero(dim);
        for v in vectors {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.dim() });
            }
            s.insert(v.clone());
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Echelon basis, ordered by pivot column.
    pub fn basis(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.leading().expect("nonzero row").0).collect()
    }

    /// Normal form of `v` modulo the subspace: zero in every pivot column.
    pub fn reduce(&self, v: &SparseVector) -> SparseVector {
        let mut out = v.clone();
        for r in &self.rows {
            let (p, _) = r.leading().expect("nonzero row");
            if let Some(x) = out.entry(p) {
                let c = -x.clone();
                out.axpy(&c, r);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVector) -> bool {
        assert_eq!(v.dim(), self.dim, "insert: dimension mismatch");
        let w = self.reduce(&v);
        let Some((p, lead)) = w.leading() else {
            return false;
        };
        let w = w.scaled(&lead.recip());
        for r in self.rows.iter_mut() {
            if let Some(x) = r.entry(p) {
                let c = -x.clone();
                r.axpy(&c, &w);
            }
        }
        let pos = self.rows.partition_point(|r| r.leading().expect("nonzero row").0 < p);
        self.rows.insert(pos, w);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.dim, other.dim);
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v.clone());
        }
        s
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|v| other.contains(v))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.dim, other.dim);
        // Solve a + b = 0 with a in self, b in other via the kernel of [A | B]^T.
        let k = self.rows.len();
        let l = other.rows.len();
        if k == 0 || l == 0 {
            return Subspace::zero(self.dim);
        }
        let mut cols: Vec<SparseVector> = self.rows.clone();
        cols.extend(other.rows.iter().cloned());
        let m = SparseMatrix::from_columns(self.dim, &cols).expect("dims agree");
        let mut out = Subspace::zero(self.dim);
        for coeffs in kernel(&m) {
            let mut v = SparseVector::zero(self.dim);
            for (i, c) in coeffs.iter() {
                if i < k {
                    v.axpy(c, &self.rows[i]);
                }
            }
            out.insert(v);
        }
        out
    }

    /// Columns not used as pivots; the corresponding unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let piv: std::collections::BTreeSet<usize> = self.pivots().into_iter().collect();
        (0..self.dim).filter(|c| !piv.contains(c)).collect()
    }

    /// Coordinates of the class of `v` in the quotient, relative to `free_columns`.
    pub fn quotient_coords(&self, v: &SparseVector, free: &[usize]) -> SparseVector {
        let r = self.reduce(v);
        let mut out = SparseVector::zero(free.len());
        for (k, &c) in free.iter().enumerate() {
            if let Some(x) = r.entry(c) {
                out.set(k, x.clone());
            }
        }
        out
    }

    pub fn image(&self, m: &SparseMatrix) -> Subspace {
        let vs: Vec<SparseVector> = self.rows.iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.nrows(), &vs).expect("image dims agree")
    }
}

fn common_dim(a: &[SparseVector], b: &[SparseVector]) -> Result<Option<usize>> {
    let mut dim = None;
    for v in a.iter().chain(b) {
        match dim {
            None => dim = Some(v.dim()),
            Some(d) if d != v.dim() => return Err(Error::DimensionMismatch { expected: d, found: v.dim() }),
            _ => {}
        }
    }
    Ok(dim)
}

/// Whether the two lists span the same subspace.
pub fn subspace_equal(a: &[SparseVector], b: &[SparseVector]) -> Result<bool> {
    let Some(dim) = common_dim(a, b)? else {
        return Ok(true);
    };
    Ok(Subspace::span(dim, a)? == Subspace::span(dim, b)?)
}

/// `dim span(ambient) - dim span(sub)`, after checking containment.
pub fn quotient_dim(ambient: &[SparseVector], sub: &[SparseVector]) -> Result<usize> {
    let Some(dim) = common_dim(ambient, sub)? else {
        return Ok(0);
    };
    let amb = Subspace::span(dim, ambient)?;
    let s = Subspace::span(dim, sub)?;
    if !s.is_subspace_of(&amb) {
        return Err(Error::NotContained);
    }
    Ok(amb.dimension() - s.dimension())
}

/// Basis of `ker (op - eigenvalue)^order_bound`.
pub fn generalized_eigenspace(op: &SparseMatrix, eigenvalue: &Q, order_bound: usize) -> Result<Vec<SparseVector>> {
    let a = op.shift(eigenvalue)?;
    let n = op.nrows();
    if order_bound == 0 {
        return Ok(Subspace::full(n).basis().to_vec());
    }
    let mut power = a.clone();
    let mut prev = kernel(&power);
    for _ in 1..order_bound {
        power = power.mul(&a);
        let next = kernel(&power);
        // once the kernel stops growing it is stable for every higher power
        if next.len() == prev.len() {
            return Ok(prev);
        }
        prev = next;
    }
    Ok(Subspace::span(n, &prev)?.basis().to_vec())
}

/// Characteristic polynomial `det(xI - m)`, coefficients from the constant term up.
pub fn char_poly(m: &SparseMatrix) -> Result<Vec<Q>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    // Faddeev-LeVerrier
    let n = m.nrows();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = SparseMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        let c = coeffs[n - k + 1].clone();
        for i in 0..n {
            next.add_at(i, i, &c);
        }
        mk = next;
        let am = m.mul(&mk);
        coeffs[n - k] = -am.trace() / q(k as i64);
    }
    Ok(coeffs)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let e = &n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out.sort();
    out
}

fn eval_poly(coeffs: &[Q], x: &Q) -> Q {
    let mut acc = Q::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Distinct rational roots of a polynomial (coefficients from the constant term up), ascending.
pub fn rational_roots(coeffs: &[Q]) -> Vec<Q> {
    let mut c: Vec<Q> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    while c.first().is_some_and(|x| x.is_zero()) {
        c.remove(0);
        if !roots.contains(&Q::zero()) {
            roots.push(Q::zero());
        }
    }
    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
        let a0 = ints.first().expect("nonempty");
        let an = ints.last().expect("nonempty");
        for p in divisors(a0) {
            for qd in divisors(an) {
                for sign in [1i64, -1] {
                    let cand = Q::new(&p * BigInt::from(sign), qd.clone());
                    if !roots.contains(&cand) && eval_poly(&c, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Rational eigenvalues of a square matrix together with the dimensions of their
/// generalized eigenspaces. The second value reports whether they exhaust the space.
pub fn rational_spectrum(m: &SparseMatrix) -> Result<(Vec<(Q, usize)>, bool)> {
    let roots = rational_roots(&char_poly(m)?);
    let n = m.nrows();
    let mut out = Vec::new();
    let mut total = 0;
    for r in roots {
        let d = generalized_eigenspace(m, &r, n)?.len();
        total += d;
        out.push((r, d));
    }
    Ok((out, total == n))
}

/// Generalized eigenspace dimensions at the given candidate eigenvalues. The second
/// value reports whether the candidates exhaust the space. Avoids factoring the
/// characteristic polynomial when the possible eigenvalues are known in advance.
pub fn spectrum_at(m: &SparseMatrix, candidates: &[Q]) -> Result<(Vec<(Q, usize)>, bool)> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let n = m.nrows();
    let mut out = Vec::new();
    let mut total = 0;
    for r in candidates {
        if total == n {
            break;
        }
        let d = generalized_eigenspace(m, r, n)?.len();
        if d > 0 {
            total += d;
            out.push((r.clone(), d));
        }
    }
    Ok((out, total == n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> SparseMatrix {
        SparseMatrix::from_ints(rows)
    }

    #[test]
    fn rref_examples() {
        assert_eq!(rref(&m(&[vec![1, 2], vec![2, 4]])).rank, 1);
        assert_eq!(rref(&SparseMatrix::identity(3)).rank, 3);
        assert_eq!(rref(&m(&[vec![0, 0], vec![0, 0]])).rank, 0);
    }

    #[test]
    fn rref_pivots_lowest_index() {
        let r = rref(&m(&[vec![0, 2, 4], vec![3, 0, 3]]));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix.row(0), &SparseVector::from_ints(&[1, 0, 1]));
        assert_eq!(r.matrix.row(1), &SparseVector::from_ints(&[0, 1, 2]));
    }

    #[test]
    fn subspace_equal_examples() {
        let v = |a: &[i64]| SparseVector::from_ints(a);
        assert!(subspace_equal(&[v(&[1, 0])], &[v(&[2, 0])]).unwrap());
        assert!(!subspace_equal(&[v(&[1, 0])], &[v(&[0, 1])]).unwrap());
        assert!(subspace_equal(&[], &[]).unwrap());
        assert!(subspace_equal(&[v(&[1, 0])], &[v(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn quotient_dim_examples() {
        let v = |a: &[i64]| SparseVector::from_ints(a);
        let std3 = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])];
        assert_eq!(quotient_dim(&std3, &[v(&[1, 1, 0])]).unwrap(), 2);
        assert_eq!(quotient_dim(&std3, &std3).unwrap(), 0);
        assert_eq!(quotient_dim(&std3, &[]).unwrap(), 3);
        assert_eq!(quotient_dim(&[v(&[1, 0, 0])], &[v(&[0, 1, 0])]), Err(Error::NotContained));
    }

    #[test]
    fn generalized_eigenspace_examples() {
        let j = m(&[vec![5, 1], vec![0, 5]]);
        assert_eq!(generalized_eigenspace(&j, &q(5), 2).unwrap().len(), 2);
        // a plain eigenspace of the Jordan block is only a line
        assert_eq!(generalized_eigenspace(&j, &q(5), 1).unwrap().len(), 1);
        let d = m(&[vec![1, 0], vec![0, 2]]);
        assert_eq!(generalized_eigenspace(&d, &q(3), 2).unwrap().len(), 0);
        let d3 = m(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]);
        assert_eq!(generalized_eigenspace(&d3, &q(1), 3).unwrap().len(), 2);
        assert!(generalized_eigenspace(&m(&[vec![1, 2]]), &q(1), 1).is_err());
    }

    #[test]
    fn intersection_and_sum() {
        let v = |a: &[i64]| SparseVector::from_ints(a);
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let i = a.intersection(&b);
        assert_eq!(i.dimension(), 1);
        assert!(i.contains(&v(&[0, 5, 0])));
        assert_eq!(a.sum(&b).dimension(), 3);
    }

    #[test]
    fn char_poly_and_roots() {
        // x^2 - 5x + 6
        let a = m(&[vec![2, 0], vec![1, 3]]);
        assert_eq!(char_poly(&a).unwrap(), vec![q(6), q(-5), q(1)]);
        let (spec, complete) = rational_spectrum(&a).unwrap();
        assert!(complete);
        assert_eq!(spec, vec![(q(2), 1), (q(3), 1)]);
        // x^2 + 1 has no rational roots
        let rot = m(&[vec![0, -1], vec![1, 0]]);
        let (spec, complete) = rational_spectrum(&rot).unwrap();
        assert!(spec.is_empty() && !complete);
        assert_eq!(rational_roots(&[qr(-1, 4), q(0), q(1)]), vec![qr(-1, 2), qr(1, 2)]);
    }

    #[test]
    fn kernel_rank_nullity() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel(&a);
        assert_eq!(k.len() + rank(&a), 3);
        for v in &k {
            assert!(a.apply(v).is_zero());
        }
    }
}
