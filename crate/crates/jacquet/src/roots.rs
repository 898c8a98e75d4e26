//! Finite root systems from Cartan matrices, Θ-parabolic bookkeeping, coweights
//! and cocharacters.
//!
//! Conventions: `cartan[i][j] = α_j(h_i)`. Roots are integer vectors over the
//! simple roots. Weights live in fundamental-weight coordinates, coweights in
//! simple-coroot coordinates. A vector of `a_Θ^*` is recorded by its values on
//! the fundamental coweights `ω_α`, `α ∉ Θ`, so restricted simple roots are
//! unit vectors (or zero for `α ∈ Θ`).

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::{q, Q, SparseMatrix, SparseVector, Subspace};

pub const SIMPLE_NAMES: [&str; 4] = ["a", "b", "c", "d"];
pub const MAX_RANK: usize = 4;

/// A subset of the simple roots, as sorted indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Theta(BTreeSet<usize>);

impl Theta {
    pub fn empty() -> Self {
        Theta(BTreeSet::new())
    }

    pub fn all(rank: usize) -> Self {
        Theta((0..rank).collect())
    }

    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        Theta(idx.into_iter().collect())
    }

    /// `"none"`, `"all"`, or a comma separated list of `a,b,c,d`.
    pub fn parse(s: &str, rank: usize) -> Result<Self> {
        let t = s.trim();
        match t {
            "" | "none" | "empty" => return Ok(Theta::empty()),
            "all" | "Pi" => return Ok(Theta::all(rank)),
            _ => {}
        }
        let mut set = BTreeSet::new();
        for part in t.split(',') {
            let p = part.trim();
            let Some(i) = SIMPLE_NAMES.iter().position(|n| *n == p) else {
                return invalid(format!("unknown simple root {p:?} (use a,b,c,d, all or none)"));
            };
            if i >= rank {
                return invalid(format!("simple root {p:?} out of range for rank {rank}"));
            }
            set.insert(i);
        }
        Ok(Theta(set))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &Theta) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn complement(&self, rank: usize) -> Theta {
        Theta((0..rank).filter(|i| !self.0.contains(i)).collect())
    }

    pub fn difference(&self, other: &Theta) -> Theta {
        Theta(self.0.difference(&other.0).copied().collect())
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&i| i >= rank) {
            Some(i) => invalid(format!("theta index {i} out of range for rank {rank}")),
            None => Ok(()),
        }
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|&i| SIMPLE_NAMES[i].to_string()).collect()
    }

    /// Inverse of `parse` for a given rank.
    pub fn label(&self, rank: usize) -> String {
        if self.is_empty() {
            "none".into()
        } else if self.len() == rank {
            "all".into()
        } else {
            self.names().join(",")
        }
    }
}

impl fmt::Debug for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(","))
    }
}

impl Serialize for Theta {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.names().serialize(s)
    }
}

pub fn cartan_of_type(name: &str) -> Result<Vec<Vec<i64>>> {
    let t = name.trim();
    let (letter, n) = t.split_at(1.min(t.len()));
    let n: usize = n.parse().map_err(|_| Error::InvalidInput(format!("bad type {t:?}")))?;
    if n == 0 || n > MAX_RANK {
        return invalid(format!("rank {n} out of range 1..={MAX_RANK}"));
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    match letter {
        "A" => {}
        "B" if n >= 2 => a[n - 1][n - 2] = -2,
        "C" if n >= 2 => a[n - 2][n - 1] = -2,
        "D" if n == 4 => {
            a[2][3] = 0;
            a[3][2] = 0;
            a[1][3] = -1;
            a[3][1] = -1;
        }
        "G" if n == 2 => a[1][0] = -3,
        "F" if n == 4 => a[2][1] = -2,
        _ => return invalid(format!("unsupported type {t:?}")),
    }
    Ok(a)
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    #[serde(rename = "type")]
    pub type_name: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub simple_roots: Vec<String>,
    /// Simple-root coordinates, ordered by height then with earlier simple roots first.
    pub positive_roots: Vec<Vec<i64>>,
    /// Coroot of each positive root, in simple-coroot coordinates.
    pub coroots: Vec<Vec<i64>>,
    #[serde(skip)]
    symmetrizer: Vec<Q>,
}

fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<Q>> {
    let n = a.len();
    let mut s: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if s[start].is_some() {
            continue;
        }
        s[start] = Some(Q::one());
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let si = s[i].clone().expect("visited");
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // s_i a_ij = s_j a_ji
                let sj = &si * q(a[i][j]) / q(a[j][i]);
                match &s[j] {
                    None => {
                        s[j] = Some(sj);
                        stack.push(j);
                    }
                    Some(old) if *old != sj => return invalid("Cartan matrix is not symmetrizable"),
                    _ => {}
                }
            }
        }
    }
    Ok(s.into_iter().map(|x| x.expect("assigned")).collect())
}

fn leading_minors_positive(m: &[Vec<Q>]) -> bool {
    // Gaussian elimination without pivoting: all pivots positive iff all leading minors are.
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    true
}

fn components(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..n {
                if !seen[j] && a[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Dynkin type and positive root count of a connected finite-type component.
fn classify(a: &[Vec<i64>], comp: &[usize]) -> (String, usize) {
    let r = comp.len();
    let off: Vec<i64> = comp
        .iter()
        .flat_map(|&i| comp.iter().filter(move |&&j| j != i).map(move |&j| a[i][j]))
        .collect();
    let degree = |i: usize| comp.iter().filter(|&&j| j != i && a[i][j] != 0).count();
    if off.contains(&-3) {
        return ("G2".into(), 6);
    }
    if off.contains(&-2) {
        if r == 2 {
            return ("B2".into(), 4);
        }
        let (i, j) = comp
            .iter()
            .flat_map(|&i| comp.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| a[i][j] == -2)
            .expect("double bond");
        if r == 4 && degree(i) == 2 && degree(j) == 2 {
            return ("F4".into(), 24);
        }
        // the short simple root sits at an end node in type B
        let letter = if degree(i) == 1 { "B" } else { "C" };
        return (format!("{letter}{r}"), r * r);
    }
    if comp.iter().any(|&i| degree(i) >= 3) {
        return (format!("D{r}"), r * (r - 1));
    }
    (format!("A{r}"), r * (r + 1) / 2)
}

impl RootSystem {
    pub fn from_type(name: &str) -> Result<Self> {
        Self::from_cartan(cartan_of_type(name)?)
    }

    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let n = cartan.len();
        if n == 0 || n > MAX_RANK {
            return invalid(format!("rank {n} out of range 1..={MAX_RANK}"));
        }
        for (i, row) in cartan.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            for (j, &x) in row.iter().enumerate() {
                if i == j && x != 2 {
                    return invalid("Cartan matrix diagonal must be 2");
                }
                if i != j && (x > 0 || (x == 0) != (cartan[j][i] == 0)) {
                    return invalid("Cartan matrix off-diagonal entries must be non-positive with symmetric zero pattern");
                }
            }
        }
        let symmetrizer = symmetrizer(&cartan)?;
        let sym: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|j| &symmetrizer[i] * q(cartan[i][j])).collect())
            .collect();
        if !leading_minors_positive(&sym) {
            return invalid("Cartan matrix is not of finite type");
        }
        let positive_roots = enumerate_positive_roots(&cartan);
        let mut expected = 0;
        let mut names = Vec::new();
        for comp in components(&cartan) {
            let (name, count) = classify(&cartan, &comp);
            expected += count;
            names.push(name);
        }
        if positive_roots.len() != expected {
            return invalid(format!(
                "root closure produced {} positive roots, classification expects {expected}",
                positive_roots.len()
            ));
        }
        let mut rs = RootSystem {
            type_name: names.join("x"),
            rank: n,
            cartan_matrix: cartan,
            simple_roots: SIMPLE_NAMES[..n].iter().map(|s| s.to_string()).collect(),
            positive_roots,
            coroots: Vec::new(),
            symmetrizer,
        };
        rs.coroots = rs.positive_roots.iter().map(|b| rs.coroot(b)).collect();
        Ok(rs)
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut r = vec![0; self.rank];
        r[i] = 1;
        r
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == root)
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.root_index(v).is_some() || self.root_index(&neg).is_some()
    }

    /// `⟨β, α_i^∨⟩`
    pub fn pairing_with_coroot(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| beta[j] * self.cartan_matrix[i][j]).sum()
    }

    /// Symmetric form on the root lattice, normalized by the symmetrizer.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += &self.symmetrizer[i] * q(x[i] * y[j] * self.cartan_matrix[i][j]);
            }
        }
        acc
    }

    fn coroot(&self, beta: &[i64]) -> Vec<i64> {
        // β^∨ = Σ c_i s_i α_i^∨ / (β,β)/2 with α_i = s_i α_i^∨
        let half = self.inner(beta, beta) / q(2);
        (0..self.rank)
            .map(|i| {
                let x = q(beta[i]) * &self.symmetrizer[i] / &half;
                debug_assert!(x.is_integer());
                crate::linalg::as_int(&x).expect("integral coroot")
            })
            .collect()
    }

    /// A root in fundamental-weight coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<Q> {
        (0..self.rank).map(|i| q(self.pairing_with_coroot(root, i))).collect()
    }

    /// Fundamental coweight `ω_α` in simple-coroot coordinates.
    pub fn fundamental_coweight(&self, alpha: usize) -> Result<Vec<Q>> {
        if alpha >= self.rank {
            return invalid(format!("simple root index {alpha} out of range"));
        }
        // α_j(Σ x_i α_i^∨) = Σ x_i a_ij = δ_jα
        let at = SparseMatrix::from_ints(&self.cartan_matrix).transpose();
        solve(&at, &SparseVector::unit(self.rank, alpha))
    }

    /// `β(H)` for a root `β` and a coweight `H` in simple-coroot coordinates.
    pub fn root_on_coweight(&self, root: &[i64], h: &[Q]) -> Q {
        let mut acc = Q::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += &h[i] * q(self.cartan_matrix[i][j] * root[j]);
            }
        }
        acc
    }

    /// `λ(H)` for a weight in fundamental-weight coordinates.
    pub fn weight_on_coweight(&self, weight: &[Q], h: &[Q]) -> Q {
        weight.iter().zip(h).map(|(a, b)| a * b).sum()
    }

    pub fn parabolic(&self, theta: &Theta) -> Result<ParabolicRootData> {
        theta.check_rank(self.rank)?;
        let supported = |r: &Vec<i64>| (0..self.rank).all(|i| r[i] == 0 || theta.contains(i));
        let sigma_theta_pos: Vec<Vec<i64>> = self.positive_roots.iter().filter(|r| supported(r)).cloned().collect();
        let n_theta_roots: Vec<Vec<i64>> = self.positive_roots.iter().filter(|r| !supported(r)).cloned().collect();
        let coweights = (0..self.rank).map(|a| self.fundamental_coweight(a)).collect::<Result<Vec<_>>>()?;
        let a_theta_basis = theta.complement(self.rank).iter().map(|a| coweights[a].clone()).collect();
        Ok(ParabolicRootData { theta: theta.clone(), sigma_theta_pos, n_theta_roots, a_theta_basis, coweights })
    }

    /// Matrix of the restriction `h^* → a_Θ^*` acting on fundamental-weight coordinates.
    pub fn restriction_matrix(&self, theta: &Theta) -> Result<Vec<Vec<Q>>> {
        theta.check_rank(self.rank)?;
        theta.complement(self.rank).iter().map(|a| self.fundamental_coweight(a)).collect()
    }

    pub fn restrict_weight(&self, theta: &Theta, weight: &[Q]) -> Result<Vec<Q>> {
        let r = self.restriction_matrix(theta)?;
        Ok(r.iter().map(|row| self.weight_on_coweight(weight, row)).collect())
    }

    /// Restricted simple roots `α|_{a_Θ}` in `a_Θ^*` coordinates.
    pub fn restricted_simple_roots(&self, theta: &Theta) -> Result<Vec<Vec<Q>>> {
        (0..self.rank).map(|i| self.restrict_weight(theta, &self.root_to_weight(&self.simple_root(i)))).collect()
    }

    pub fn cocharacter(&self, theta1: &Theta, theta2: &Theta, exponents: &[(usize, i64)]) -> Result<Cocharacter> {
        theta1.check_rank(self.rank)?;
        theta2.check_rank(self.rank)?;
        if !theta2.is_subset(theta1) {
            return invalid(format!("cocharacter needs nested subsets, got {theta2:?} not inside {theta1:?}"));
        }
        let moving = theta1.difference(theta2);
        let mut n = vec![0i64; self.rank];
        for &(a, e) in exponents {
            if !moving.contains(a) {
                return invalid(format!("exponent given for {} outside theta1 minus theta2", SIMPLE_NAMES[a.min(3)]));
            }
            n[a] = e;
        }
        for a in moving.iter() {
            if n[a] <= 0 {
                return invalid(format!("exponent for {} must be positive", SIMPLE_NAMES[a]));
            }
        }
        let mut h = vec![Q::zero(); self.rank];
        for a in moving.iter() {
            let w = self.fundamental_coweight(a)?;
            for i in 0..self.rank {
                h[i] += &w[i] * q(n[a]);
            }
        }
        Ok(Cocharacter { exponents: n, h })
    }

    /// Simple-root coordinates of a weight given in fundamental-weight coordinates.
    pub fn weight_to_root_coords(&self, weight: &[Q]) -> Result<Vec<Q>> {
        let a = SparseMatrix::from_ints(&self.cartan_matrix);
        solve(&a, &SparseVector::from_dense(weight))
    }

    pub fn weight_in_cone(&self, theta: &Theta, mu: &[Q], lambda: &[Vec<Q>]) -> Result<bool> {
        let ctx = WeightOrderContext::new(self, theta, lambda.to_vec())?;
        ctx.contains(mu)
    }
}

/// Solve a square nonsingular system exactly.
fn solve(a: &SparseMatrix, b: &SparseVector) -> Result<Vec<Q>> {
    let n = a.nrows();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut r = SparseVector::zero(n + 1);
        for (j, x) in a.row(i).iter() {
            r.set(j, x.clone());
        }
        r.set(n, b.get(i));
        rows.push(r);
    }
    let m = SparseMatrix::from_rows(n + 1, rows)?;
    let red = crate::linalg::rref(&m);
    if red.rank != n || red.pivots.iter().enumerate().any(|(k, &p)| p != k) {
        return invalid("singular system");
    }
    Ok((0..n).map(|i| red.matrix.get(i, n)).collect())
}

fn enumerate_positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut all: HashSet<Vec<i64>> = HashSet::new();
    let mut layer: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    all.extend(layer.iter().cloned());
    while !layer.is_empty() {
        let mut next: BTreeSet<Vec<i64>> = BTreeSet::new();
        for beta in &layer {
            for i in 0..n {
                // p: how far the α_i-string extends downward from β
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let pair: i64 = (0..n).map(|j| beta[j] * a[i][j]).sum();
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().filter(|r| !all.contains(r)).collect();
        all.extend(layer.iter().cloned());
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by(|x, y| RootSystem::height(x).cmp(&RootSystem::height(y)).then_with(|| y.cmp(x)));
    roots
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicRootData {
    pub theta: Theta,
    pub sigma_theta_pos: Vec<Vec<i64>>,
    pub n_theta_roots: Vec<Vec<i64>>,
    /// Basis of `a_Θ` in simple-coroot coordinates.
    #[serde(serialize_with = "crate::report::ser_qmat")]
    pub a_theta_basis: Vec<Vec<Q>>,
    #[serde(serialize_with = "crate::report::ser_qmat")]
    pub coweights: Vec<Vec<Q>>,
}

impl ParabolicRootData {
    pub fn dim_a_theta(&self) -> usize {
        self.a_theta_basis.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocharacter {
    pub exponents: Vec<i64>,
    /// `H = dν(1)` in simple-coroot coordinates.
    #[serde(serialize_with = "crate::report::ser_qvec")]
    pub h: Vec<Q>,
}

impl Cocharacter {
    /// Simple roots on which `H` vanishes.
    pub fn vanishing_set(&self, rs: &RootSystem) -> Theta {
        Theta::from_indices((0..rs.rank).filter(|&i| rs.root_on_coweight(&rs.simple_root(i), &self.h).is_zero()))
    }
}

/// The finite set `Λ ⊂ a_Θ^*` with the cone `Λ − Z≥0 Π|_{a_Θ}`.
#[derive(Clone, Debug)]
pub struct WeightOrderContext {
    pub theta: Theta,
    pub lambda: Vec<Vec<Q>>,
    pub restriction: Vec<Vec<Q>>,
    restricted_roots: Vec<Vec<Q>>,
}

impl WeightOrderContext {
    pub fn new(rs: &RootSystem, theta: &Theta, lambda: Vec<Vec<Q>>) -> Result<Self> {
        let restriction = rs.restriction_matrix(theta)?;
        let restricted_roots: Vec<Vec<Q>> = rs
            .restricted_simple_roots(theta)?
            .into_iter()
            .filter(|r| r.iter().any(|x| !x.is_zero()))
            .collect();
        for l in &lambda {
            if l.len() != restriction.len() {
                return Err(Error::DimensionMismatch { expected: restriction.len(), found: l.len() });
            }
        }
        Ok(WeightOrderContext { theta: theta.clone(), lambda, restriction, restricted_roots })
    }

    pub fn contains(&self, mu: &[Q]) -> Result<bool> {
        if mu.len() != self.restriction.len() {
            return Err(Error::DimensionMismatch { expected: self.restriction.len(), found: mu.len() });
        }
        Ok(self.lambda.iter().any(|l| {
            let diff: Vec<Q> = l.iter().zip(mu).map(|(a, b)| a - b).collect();
            cone_search(&self.restricted_roots, &diff)
        }))
    }
}

/// Whether `target` is a non-negative integer combination of `gens`. Every generator has
/// non-negative coordinates with at least one positive entry, which bounds each coefficient.
fn cone_search(gens: &[Vec<Q>], target: &[Q]) -> bool {
    if target.iter().all(|x| x.is_zero()) {
        return true;
    }
    if target.iter().any(|x| x.is_negative()) {
        return false;
    }
    let Some((g, rest)) = gens.split_first() else {
        return false;
    };
    let bound = g
        .iter()
        .zip(target)
        .filter(|(gi, _)| gi.is_positive())
        .map(|(gi, t)| (t / gi).floor())
        .min()
        .unwrap_or_else(Q::zero);
    let mut n = Q::zero();
    while n <= bound {
        let rem: Vec<Q> = target.iter().zip(g).map(|(t, gi)| t - &n * gi).collect();
        if cone_search(rest, &rem) {
            return true;
        }
        n += Q::one();
    }
    false
}

/// Span of the coweight vectors in `basis`.
pub fn coweight_span(rank: usize, basis: &[Vec<Q>]) -> Result<Subspace> {
    let vs: Vec<SparseVector> = basis.iter().map(|v| SparseVector::from_dense(v)).collect();
    Subspace::span(rank, &vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::qr;

    #[test]
    fn a_series_counts() {
        assert_eq!(RootSystem::from_type("A1").unwrap().positive_roots, vec![vec![1]]);
        let a2 = RootSystem::from_type("A2").unwrap();
        assert_eq!(a2.positive_roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        // independent count n(n+1)/2 for A_n
        assert_eq!(RootSystem::from_type("A3").unwrap().num_positive(), 6);
        assert_eq!(RootSystem::from_type("A4").unwrap().num_positive(), 10);
    }

    #[test]
    fn other_types() {
        for (t, n) in [("B2", 4), ("C3", 9), ("B4", 16), ("D4", 12), ("G2", 6), ("F4", 24)] {
            assert_eq!(RootSystem::from_type(t).unwrap().num_positive(), n, "{t}");
        }
    }

    #[test]
    fn rejects_bad_matrices() {
        // affine A1
        assert!(RootSystem::from_cartan(vec![vec![2, -2], vec![-2, 2]]).is_err());
        assert!(RootSystem::from_cartan(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(RootSystem::from_cartan(vec![vec![3]]).is_err());
        assert!(RootSystem::from_cartan(vec![vec![2, -1], vec![0, 2]]).is_err());
    }

    #[test]
    fn coroots_of_b2() {
        let b2 = RootSystem::from_type("B2").unwrap();
        // simple coroots are unit vectors
        assert_eq!(b2.coroots[0], vec![1, 0]);
        assert_eq!(b2.coroots[1], vec![0, 1]);
        for (r, c) in b2.positive_roots.iter().zip(&b2.coroots) {
            let pairing = b2.root_on_coweight(r, &c.iter().map(|&x| q(x)).collect::<Vec<_>>());
            assert_eq!(pairing, q(2));
        }
    }

    #[test]
    fn parabolic_examples() {
        let a2 = RootSystem::from_type("A2").unwrap();
        let p = a2.parabolic(&Theta::empty()).unwrap();
        assert!(p.sigma_theta_pos.is_empty());
        assert_eq!(p.n_theta_roots.len(), 3);
        assert_eq!(p.dim_a_theta(), 2);
        let p = a2.parabolic(&Theta::all(2)).unwrap();
        assert!(p.n_theta_roots.is_empty());
        assert_eq!(p.dim_a_theta(), 0);
        let p = a2.parabolic(&Theta::from_indices([0])).unwrap();
        assert_eq!(p.sigma_theta_pos, vec![vec![1, 0]]);
        assert_eq!(p.n_theta_roots, vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(p.dim_a_theta(), 1);
    }

    #[test]
    fn coweight_pairings() {
        let a1 = RootSystem::from_type("A1").unwrap();
        assert_eq!(a1.root_on_coweight(&[1], &a1.fundamental_coweight(0).unwrap()), q(1));
        let a2 = RootSystem::from_type("A2").unwrap();
        let w = a2.fundamental_coweight(0).unwrap();
        assert_eq!(w, vec![qr(2, 3), qr(1, 3)]);
        assert_eq!(a2.root_on_coweight(&[1, 1], &w), q(1));
        assert_eq!(a2.root_on_coweight(&[0, 1], &w), q(0));
    }

    #[test]
    fn cocharacter_examples() {
        let a2 = RootSystem::from_type("A2").unwrap();
        let all = Theta::all(2);
        let b = Theta::from_indices([1]);
        let nu = a2.cocharacter(&all, &b, &[(0, 2)]).unwrap();
        assert_eq!(a2.root_on_coweight(&[1, 0], &nu.h), q(2));
        assert_eq!(a2.root_on_coweight(&[0, 1], &nu.h), q(0));
        assert_eq!(nu.vanishing_set(&a2), b);
        let a1 = RootSystem::from_type("A1").unwrap();
        let nu = a1.cocharacter(&Theta::all(1), &Theta::empty(), &[(0, 1)]).unwrap();
        assert_eq!(a1.root_on_coweight(&[1], &nu.h), q(1));
        let nu = a2.cocharacter(&Theta::from_indices([0]), &Theta::empty(), &[(0, 3)]).unwrap();
        assert_eq!(a2.root_on_coweight(&[1, 0], &nu.h), q(3));
        assert!(a2.cocharacter(&b, &Theta::from_indices([0]), &[]).is_err());
        assert!(a2.cocharacter(&all, &b, &[(0, 0)]).is_err());
        assert!(a2.cocharacter(&all, &b, &[]).is_err());
    }

    #[test]
    fn cone_examples() {
        let a1 = RootSystem::from_type("A1").unwrap();
        let e = Theta::empty();
        let r = |x: i64| a1.restrict_weight(&e, &[q(x)]).unwrap();
        let lam = vec![r(3)];
        assert!(a1.weight_in_cone(&e, &r(-1), &lam).unwrap());
        assert!(!a1.weight_in_cone(&e, &r(4), &lam).unwrap());
        assert!(a1.weight_in_cone(&e, &r(3), &lam).unwrap());
        assert!(!a1.weight_in_cone(&e, &r(2), &lam).unwrap());
    }

    #[test]
    fn theta_parsing() {
        assert_eq!(Theta::parse("a,b", 3).unwrap(), Theta::from_indices([0, 1]));
        assert_eq!(Theta::parse("all", 2).unwrap(), Theta::all(2));
        assert_eq!(Theta::parse("none", 2).unwrap(), Theta::empty());
        assert!(Theta::parse("c", 2).is_err());
        assert!(Theta::parse("z", 2).is_err());
        assert_eq!(Theta::from_indices([1]).label(2), "b");
    }
}
