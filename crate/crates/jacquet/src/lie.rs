//! `sl_n` in its matrix realization with Chevalley basis, the involution
//! `θ = −transpose`, the Θ-subalgebras and the chart stabilizers.
//!
//! Basis order: `e_β` for the positive roots (root-system order), then `f_β`
//! in the same order, then `h_1..h_{n−1}`.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::{q, SparseMatrix, SparseVector, Subspace, Q};
use crate::roots::{RootSystem, Theta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    E(usize),
    F(usize),
    H(usize),
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub n: usize,
    pub rs: RootSystem,
    /// Matrix positions `(i, j)`, `i < j`, of each positive root.
    positions: Vec<(usize, usize)>,
    matrices: Vec<SparseMatrix>,
    bracket: Vec<Vec<SparseVector>>,
}

impl LieAlgebra {
    pub fn sl(n: usize) -> Result<Self> {
        if !(2..=5).contains(&n) {
            return invalid(format!("sl_n needs 2 <= n <= 5, got {n}"));
        }
        let rs = RootSystem::from_type(&format!("A{}", n - 1))?;
        let positions: Vec<(usize, usize)> = rs
            .positive_roots
            .iter()
            .map(|r| {
                let i = r.iter().position(|&x| x != 0).expect("nonzero root");
                let len = r.iter().filter(|&&x| x != 0).count();
                (i, i + len)
            })
            .collect();
        let mut g = LieAlgebra { n, rs, positions, matrices: Vec::new(), bracket: Vec::new() };
        let dim = g.dim();
        g.matrices = (0..dim).map(|k| g.matrix_of_basis(k)).collect();
        let mut bracket = vec![vec![SparseVector::zero(dim); dim]; dim];
        for x in 0..dim {
            for y in 0..dim {
                let c = g.matrices[x].mul(&g.matrices[y]).sub(&g.matrices[y].mul(&g.matrices[x]));
                bracket[x][y] = g.from_matrix(&c)?;
            }
        }
        g.bracket = bracket;
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.n - 1
    }

    pub fn num_positive(&self) -> usize {
        self.positions.len()
    }

    pub fn dim(&self) -> usize {
        2 * self.num_positive() + self.rank()
    }

    pub fn e(&self, beta: usize) -> usize {
        beta
    }

    pub fn f(&self, beta: usize) -> usize {
        self.num_positive() + beta
    }

    pub fn h(&self, i: usize) -> usize {
        2 * self.num_positive() + i
    }

    pub fn kind(&self, k: usize) -> BasisKind {
        let p = self.num_positive();
        if k < p {
            BasisKind::E(k)
        } else if k < 2 * p {
            BasisKind::F(k - p)
        } else {
            BasisKind::H(k - 2 * p)
        }
    }

    pub fn basis_label(&self, k: usize) -> String {
        let root = |b: usize| {
            self.rs.positive_roots[b].iter().map(|x| x.to_string()).collect::<Vec<_>>().join("")
        };
        match self.kind(k) {
            BasisKind::E(b) => format!("e{}", root(b)),
            BasisKind::F(b) => format!("f{}", root(b)),
            BasisKind::H(i) => format!("h{}", i + 1),
        }
    }

    /// Root-lattice weight of a basis element (zero for the Cartan).
    pub fn weight(&self, k: usize) -> Vec<i64> {
        match self.kind(k) {
            BasisKind::E(b) => self.rs.positive_roots[b].clone(),
            BasisKind::F(b) => self.rs.positive_roots[b].iter().map(|x| -x).collect(),
            BasisKind::H(_) => vec![0; self.rank()],
        }
    }

    fn matrix_of_basis(&self, k: usize) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.n, self.n);
        match self.kind(k) {
            BasisKind::E(b) => {
                let (i, j) = self.positions[b];
                m.set(i, j, Q::one());
            }
            BasisKind::F(b) => {
                let (i, j) = self.positions[b];
                m.set(j, i, Q::one());
            }
            BasisKind::H(i) => {
                m.set(i, i, Q::one());
                m.set(i + 1, i + 1, -Q::one());
            }
        }
        m
    }

    pub fn matrix(&self, k: usize) -> &SparseMatrix {
        &self.matrices[k]
    }

    pub fn to_matrix(&self, x: &SparseVector) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(self.n, self.n);
        for (k, c) in x.iter() {
            m = m.add(&self.matrices[k].scaled(c));
        }
        m
    }

    /// Coordinates of a trace-zero matrix in the Chevalley basis.
    pub fn from_matrix(&self, m: &SparseMatrix) -> Result<SparseVector> {
        if m.nrows() != self.n || m.ncols() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: m.nrows() });
        }
        if !m.trace().is_zero() {
            return invalid("matrix is not trace free");
        }
        let mut v = SparseVector::zero(self.dim());
        for (b, &(i, j)) in self.positions.iter().enumerate() {
            v.set(self.e(b), m.get(i, j));
            v.set(self.f(b), m.get(j, i));
        }
        // diagonal d = Σ c_k (E_kk − E_{k+1,k+1}) gives c_k = d_0 + … + d_k
        let mut acc = Q::zero();
        for k in 0..self.rank() {
            acc += m.get(k, k);
            v.set(self.h(k), acc.clone());
        }
        Ok(v)
    }

    pub fn basis_bracket(&self, x: usize, y: usize) -> &SparseVector {
        &self.bracket[x][y]
    }

    pub fn bracket(&self, x: &SparseVector, y: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero(self.dim());
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.axpy(&(a * b), &self.bracket[i][j]);
            }
        }
        out
    }

    /// `θ(X) = −Xᵀ` on the basis: `e_β ↦ −f_β`, `f_β ↦ −e_β`, `h ↦ −h`.
    pub fn theta_basis(&self, k: usize) -> SparseVector {
        let target = match self.kind(k) {
            BasisKind::E(b) => self.f(b),
            BasisKind::F(b) => self.e(b),
            BasisKind::H(_) => k,
        };
        let mut v = SparseVector::zero(self.dim());
        v.set(target, -Q::one());
        v
    }

    pub fn theta(&self, x: &SparseVector) -> SparseVector {
        let mut out = SparseVector::zero(self.dim());
        for (k, c) in x.iter() {
            out.axpy(c, &self.theta_basis(k));
        }
        out
    }

    pub fn basis_vector(&self, k: usize) -> SparseVector {
        SparseVector::unit(self.dim(), k)
    }

    /// Element of the Cartan from simple-coroot coordinates.
    pub fn cartan_element(&self, coroot_coords: &[Q]) -> SparseVector {
        SparseVector::from_entries(self.dim(), coroot_coords.iter().enumerate().map(|(i, c)| (self.h(i), c.clone())))
    }

    fn supported_in(&self, b: usize, theta: &Theta) -> bool {
        self.rs.positive_roots[b].iter().enumerate().all(|(i, &c)| c == 0 || theta.contains(i))
    }

    fn roots_in(&self, theta: &Theta) -> Vec<usize> {
        (0..self.num_positive()).filter(|&b| self.supported_in(b, theta)).collect()
    }

    fn roots_outside(&self, theta: &Theta) -> Vec<usize> {
        (0..self.num_positive()).filter(|&b| !self.supported_in(b, theta)).collect()
    }

    pub fn subalgebra(&self, label: SubLabel, theta: &Theta) -> Result<SubalgebraBasis> {
        theta.check_rank(self.rank())?;
        let d = self.dim();
        let unit = |k: usize| SparseVector::unit(d, k);
        let vectors: Vec<SparseVector> = match label {
            SubLabel::M => self
                .roots_in(theta)
                .into_iter()
                .flat_map(|b| [unit(self.e(b)), unit(self.f(b))])
                .chain(theta.iter().map(|i| unit(self.h(i))))
                .collect(),
            SubLabel::A => theta
                .complement(self.rank())
                .iter()
                .map(|a| self.rs.fundamental_coweight(a).map(|w| self.cartan_element(&w)))
                .collect::<Result<_>>()?,
            SubLabel::N => self.roots_outside(theta).into_iter().map(|b| unit(self.e(b))).collect(),
            SubLabel::NBar => self.roots_outside(theta).into_iter().map(|b| unit(self.f(b))).collect(),
            SubLabel::L => self
                .roots_in(theta)
                .into_iter()
                .flat_map(|b| [unit(self.e(b)), unit(self.f(b))])
                .chain((0..self.rank()).map(|i| unit(self.h(i))))
                .collect(),
            SubLabel::K => self.roots_in(theta).into_iter().map(|b| &unit(self.e(b)) - &unit(self.f(b))).collect(),
            SubLabel::C | SubLabel::Stab => return invalid("label needs extra data; use c_subalgebra or stabilizer_limit"),
        };
        Ok(SubalgebraBasis::new(label, theta.label(self.rank()), d, vectors))
    }

    /// Root indices spanning `c(Θ1,Θ2)`: roots supported in Θ1 but not in Θ2.
    pub fn c_roots(&self, theta1: &Theta, theta2: &Theta) -> Result<Vec<usize>> {
        theta1.check_rank(self.rank())?;
        theta2.check_rank(self.rank())?;
        if !theta2.is_subset(theta1) {
            return invalid(format!("c needs nested subsets, got {theta2:?} not inside {theta1:?}"));
        }
        Ok((0..self.num_positive())
            .filter(|&b| self.supported_in(b, theta1) && !self.supported_in(b, theta2))
            .collect())
    }

    pub fn c_subalgebra(&self, theta1: &Theta, theta2: &Theta) -> Result<SubalgebraBasis> {
        let vectors = self.c_roots(theta1, theta2)?.into_iter().map(|b| self.basis_vector(self.f(b))).collect();
        let label = format!("{};{}", theta1.label(self.rank()), theta2.label(self.rank()));
        Ok(SubalgebraBasis::new(SubLabel::C, label, self.dim(), vectors))
    }

    /// `β(ω(t))² = ∏ t_α^{2 n_α}` with `0⁰ = 1`.
    pub fn chart_coefficient(&self, beta: usize, t: &[Q]) -> Q {
        let mut c = Q::one();
        for (a, &n) in self.rs.positive_roots[beta].iter().enumerate() {
            for _ in 0..2 * n {
                c *= &t[a];
            }
        }
        c
    }

    /// `span{X + β(ω(t))² θ(X) : X ∈ g_β, β > 0}` at a point `t` of the torus closure.
    pub fn stabilizer_at(&self, t: &[Q]) -> Result<SubalgebraBasis> {
        if t.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: t.len() });
        }
        let vectors = (0..self.num_positive())
            .map(|b| {
                let x = self.basis_vector(self.e(b));
                let mut v = x.clone();
                v.axpy(&self.chart_coefficient(b, t), &self.theta(&x));
                v
            })
            .collect();
        Ok(SubalgebraBasis::new(SubLabel::Stab, "t".into(), self.dim(), vectors))
    }

    /// The stabilizer at the base point `x_Θ`, where `t_α = 1` for `α ∈ Θ` and `0` otherwise.
    pub fn stabilizer_limit(&self, theta: &Theta) -> Result<SubalgebraBasis> {
        theta.check_rank(self.rank())?;
        let t: Vec<Q> = (0..self.rank()).map(|i| if theta.contains(i) { Q::one() } else { Q::zero() }).collect();
        let mut s = self.stabilizer_at(&t)?;
        s.theta = theta.label(self.rank());
        Ok(s)
    }

    pub fn is_closed(&self, vectors: &[SparseVector]) -> bool {
        let span = Subspace::span(self.dim(), vectors).expect("dims agree");
        vectors.iter().all(|x| vectors.iter().all(|y| span.contains(&self.bracket(x, y))))
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for x in 0..d {
            for y in 0..d {
                for z in 0..d {
                    let bx = self.basis_vector(x);
                    let by = self.basis_vector(y);
                    let bz = self.basis_vector(z);
                    let mut s = self.bracket(&self.bracket(&bx, &by), &bz);
                    s = &s + &self.bracket(&self.bracket(&by, &bz), &bx);
                    s = &s + &self.bracket(&self.bracket(&bz, &bx), &by);
                    if !s.is_zero() {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    /// Whether θ preserves brackets on all basis pairs.
    pub fn theta_is_automorphism(&self) -> bool {
        let d = self.dim();
        (0..d).all(|x| {
            (0..d).all(|y| {
                let lhs = self.theta(self.basis_bracket(x, y));
                let rhs = self.bracket(&self.theta_basis(x), &self.theta_basis(y));
                lhs == rhs
            })
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SubLabel {
    #[serde(rename = "m")]
    M,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "n")]
    N,
    #[serde(rename = "nbar")]
    NBar,
    #[serde(rename = "l")]
    L,
    #[serde(rename = "k")]
    K,
    #[serde(rename = "c")]
    C,
    #[serde(rename = "stab")]
    Stab,
}

impl SubLabel {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "m" => SubLabel::M,
            "a" => SubLabel::A,
            "n" => SubLabel::N,
            "nbar" => SubLabel::NBar,
            "l" => SubLabel::L,
            "k" => SubLabel::K,
            "c" => SubLabel::C,
            _ => return invalid(format!("unknown subalgebra label {s:?}")),
        })
    }
}

#[derive(Clone, Debug)]
pub struct SubalgebraBasis {
    pub label: SubLabel,
    pub theta: String,
    pub space: Subspace,
    /// The spanning vectors as constructed, before echelon reduction.
    pub generators: Vec<SparseVector>,
}

impl SubalgebraBasis {
    fn new(label: SubLabel, theta: String, dim: usize, generators: Vec<SparseVector>) -> Self {
        let space = Subspace::span(dim, &generators).expect("dims agree");
        SubalgebraBasis { label, theta, space, generators }
    }

    pub fn dim(&self) -> usize {
        self.space.dimension()
    }

    pub fn vectors(&self) -> &[SparseVector] {
        self.space.basis()
    }
}

/// Linear combination rendered with basis labels, e.g. `e10 - f10`.
pub fn render(g: &LieAlgebra, v: &SparseVector) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, c) in v.iter() {
        let neg = c < &Q::zero();
        let abs = if neg { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if abs != Q::one() {
            out.push_str(&format!("{abs}*"));
        }
        out.push_str(&g.basis_label(k));
    }
    out
}

/// Comparison of the chart stabilizer at `x_Θ` with `k_Θ ⊕ n_Θ`.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub algebra: String,
    pub theta: Theta,
    pub stabilizer: Vec<String>,
    pub k_theta: Vec<String>,
    pub n_theta: Vec<String>,
    pub dim_stabilizer: usize,
    pub dim_k_theta: usize,
    pub dim_n_theta: usize,
    pub dim_k: usize,
    pub equal: bool,
}

pub fn stabilizer_report(g: &LieAlgebra, theta: &Theta) -> Result<StabilizerReport> {
    let stab = g.stabilizer_limit(theta)?;
    let k = g.subalgebra(SubLabel::K, theta)?;
    let n = g.subalgebra(SubLabel::N, theta)?;
    let k_full = g.subalgebra(SubLabel::K, &Theta::all(g.rank()))?;
    let sum = k.space.sum(&n.space);
    Ok(StabilizerReport {
        algebra: format!("sl{}", g.n),
        theta: theta.clone(),
        stabilizer: stab.generators.iter().map(|v| render(g, v)).collect(),
        k_theta: k.generators.iter().map(|v| render(g, v)).collect(),
        n_theta: n.generators.iter().map(|v| render(g, v)).collect(),
        dim_stabilizer: stab.dim(),
        dim_k_theta: k.dim(),
        dim_n_theta: n.dim(),
        dim_k: k_full.dim(),
        equal: stab.space == sum,
    })
}

/// Every subset of the simple roots of a rank-`r` system, ordered by bitmask.
pub fn all_thetas(rank: usize) -> Vec<Theta> {
    (0..1u32 << rank).map(|mask| Theta::from_indices((0..rank).filter(|i| mask >> i & 1 == 1))).collect()
}

/// A torus point with distinct coordinates `2, 3, …`, used for closure checks away from the boundary.
pub fn generic_point(rank: usize) -> Vec<Q> {
    (0..rank).map(|i| q(i as i64 + 2)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_relations() {
        let g = LieAlgebra::sl(2).unwrap();
        let (e, f, h) = (g.e(0), g.f(0), g.h(0));
        assert_eq!(g.basis_bracket(e, f), &g.basis_vector(h));
        assert_eq!(g.basis_bracket(h, e), &g.basis_vector(e).scaled(&q(2)));
        assert_eq!(g.basis_bracket(h, f), &g.basis_vector(f).scaled(&q(-2)));
        assert_eq!(g.theta_basis(e), g.basis_vector(f).scaled(&q(-1)));
        assert_eq!(g.theta_basis(h), g.basis_vector(h).scaled(&q(-1)));
    }

    #[test]
    fn sl3_basics() {
        let g = LieAlgebra::sl(3).unwrap();
        assert_eq!(g.dim(), 8);
        for k in 0..8 {
            assert_eq!(g.theta(&g.theta_basis(k)), g.basis_vector(k));
        }
        assert!(g.jacobi_violation().is_none());
        assert!(g.theta_is_automorphism());
        assert!(LieAlgebra::sl(1).is_err());
        assert!(LieAlgebra::sl(6).is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let g = LieAlgebra::sl(4).unwrap();
        for k in 0..g.dim() {
            assert_eq!(g.from_matrix(g.matrix(k)).unwrap(), g.basis_vector(k));
        }
    }

    #[test]
    fn subalgebra_examples() {
        let g2 = LieAlgebra::sl(2).unwrap();
        let e = Theta::empty();
        assert_eq!(g2.subalgebra(SubLabel::K, &e).unwrap().dim(), 0);
        let n = g2.subalgebra(SubLabel::N, &e).unwrap();
        assert!(n.space == Subspace::span(3, &[g2.basis_vector(g2.e(0))]).unwrap());
        let a = g2.subalgebra(SubLabel::A, &e).unwrap();
        assert!(a.space == Subspace::span(3, &[g2.basis_vector(g2.h(0))]).unwrap());

        let g3 = LieAlgebra::sl(3).unwrap();
        let alpha = Theta::from_indices([0]);
        assert_eq!(g3.subalgebra(SubLabel::K, &alpha).unwrap().dim(), 1);
        assert_eq!(g3.subalgebra(SubLabel::N, &alpha).unwrap().dim(), 2);
        let c = g3.c_subalgebra(&Theta::all(2), &alpha).unwrap();
        assert_eq!(c.dim(), 2);
        // f_β and f_{α+β}
        assert_eq!(g3.c_roots(&Theta::all(2), &alpha).unwrap(), vec![1, 2]);
        assert!(g3.c_subalgebra(&alpha, &Theta::all(2)).is_err());
    }

    #[test]
    fn stabilizer_examples() {
        let g2 = LieAlgebra::sl(2).unwrap();
        let s = g2.stabilizer_limit(&Theta::empty()).unwrap();
        assert!(s.space == Subspace::span(3, &[g2.basis_vector(0)]).unwrap());
        let s = g2.stabilizer_limit(&Theta::all(1)).unwrap();
        assert!(s.space.contains(&(&g2.basis_vector(0) - &g2.basis_vector(1))));
        let g3 = LieAlgebra::sl(3).unwrap();
        let r = stabilizer_report(&g3, &Theta::from_indices([0])).unwrap();
        assert_eq!(r.dim_stabilizer, 3);
        assert!(r.equal);
    }

    #[test]
    fn stabilizer_closed_at_generic_point() {
        for n in 2..=4 {
            let g = LieAlgebra::sl(n).unwrap();
            let s = g.stabilizer_at(&generic_point(g.rank())).unwrap();
            assert_eq!(s.dim(), g.num_positive());
            assert!(g.is_closed(s.vectors()));
        }
    }

    #[test]
    fn render_labels() {
        let g = LieAlgebra::sl(3).unwrap();
        let v = &g.basis_vector(g.e(2)) - &g.basis_vector(g.f(2)).scaled(&q(2));
        assert_eq!(render(&g, &v), "e11 - 2*f11");
    }
}
