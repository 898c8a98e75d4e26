//! Truncated weight modules over `sl_n`: (generalized) Verma modules, the
//! `sl2` principal series in a K-type basis, sums, sub- and quotient modules,
//! morphisms, and a JSON exchange format.
//!
//! Every module is a finite piece of an infinite-dimensional object. Basis
//! vectors carry a `level` (depth below the highest weights, or `|m|` for a
//! K-type `m`), and the piece keeps all levels up to `max_level`. Actions are
//! stored column-wise; images that would leave the window are dropped, so
//! identities are asserted only on the interior.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::lie::{BasisKind, LieAlgebra};
use crate::linalg::{as_int, parse_q, q, qr, SparseMatrix, SparseVector, Subspace, Q};
use crate::pbw::{GradedLie, Monomial, PbwAlgebra, Poly};
use crate::roots::Theta;

pub type Weight = Vec<Q>;

pub fn format_weight(w: &[Q]) -> String {
    let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Grading {
    /// `h` acts semisimply; one weight (fundamental-weight coordinates) per basis vector.
    Weights(Vec<Weight>),
    /// `sl2` K-type basis: `m ≥ 0` labels `c_m`, `−m` labels `s_m`.
    KTypes {
        ktypes: Vec<i64>,
        /// The whole module is present (finite dimensional).
        complete: bool,
        /// The top part of `f` (raising `|m|` by two) is injective on every K-type, inside and beyond the window.
        top_injective: bool,
    },
}

#[derive(Clone, Debug)]
pub struct WeightModule {
    pub g: LieAlgebra,
    pub name: String,
    /// Category tag: the subset Θ with `n_Θ` acting locally nilpotently.
    pub theta: Theta,
    pub labels: Vec<String>,
    pub levels: Vec<i64>,
    pub max_level: i64,
    actions: Vec<Option<Vec<SparseVector>>>,
    pub generators: Vec<SparseVector>,
    /// The finite set Λ of highest weights.
    pub highest: Vec<Weight>,
    pub grading: Grading,
    /// PBW word (root indices) producing each basis vector from the highest vector, when known.
    pub pbw_words: Option<Vec<Monomial>>,
    spaces: BTreeMap<Weight, Vec<usize>>,
    local: Vec<usize>,
}

impl WeightModule {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        g: LieAlgebra,
        name: String,
        theta: Theta,
        labels: Vec<String>,
        levels: Vec<i64>,
        max_level: i64,
        actions: Vec<Option<Vec<SparseVector>>>,
        generators: Vec<SparseVector>,
        highest: Vec<Weight>,
        grading: Grading,
    ) -> Result<Self> {
        let d = labels.len();
        if levels.len() != d || actions.len() != g.dim() {
            return invalid("module data has inconsistent sizes");
        }
        for cols in actions.iter().flatten() {
            if cols.len() != d || cols.iter().any(|c| c.dim() != d) {
                return Err(Error::DimensionMismatch { expected: d, found: cols.len() });
            }
        }
        if generators.iter().any(|v| v.dim() != d) {
            return invalid("generator has the wrong dimension");
        }
        let mut spaces: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        let mut local = vec![0; d];
        match &grading {
            Grading::Weights(ws) => {
                if ws.len() != d || ws.iter().any(|w| w.len() != g.rank()) {
                    return invalid("weights do not match the basis");
                }
                for (i, w) in ws.iter().enumerate() {
                    let e = spaces.entry(w.clone()).or_default();
                    local[i] = e.len();
                    e.push(i);
                }
            }
            Grading::KTypes { ktypes, .. } => {
                if g.n != 2 || ktypes.len() != d {
                    return invalid("K-type modules are only modelled for sl2");
                }
            }
        }
        let m = WeightModule {
            g,
            name,
            theta,
            labels,
            levels,
            max_level,
            actions,
            generators,
            highest,
            grading,
            pbw_words: None,
            spaces,
            local,
        };
        m.check_weight_shifts()?;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        self.g.rank()
    }

    pub fn is_graded(&self) -> bool {
        matches!(self.grading, Grading::Weights(_))
    }

    pub fn has_action(&self, x: usize) -> bool {
        self.actions[x].is_some()
    }

    pub fn act_basis(&self, x: usize, j: usize) -> Option<&SparseVector> {
        self.actions[x].as_ref().map(|cols| &cols[j])
    }

    pub fn act(&self, x: usize, v: &SparseVector) -> Result<SparseVector> {
        let Some(cols) = &self.actions[x] else {
            return invalid(format!("{} does not act on {}", self.g.basis_label(x), self.name));
        };
        let mut out = SparseVector::zero(self.dim());
        for (j, c) in v.iter() {
            out.axpy(c, &cols[j]);
        }
        Ok(out)
    }

    /// Action of a general Lie algebra element.
    pub fn act_element(&self, x: &SparseVector, v: &SparseVector) -> Result<SparseVector> {
        let mut out = SparseVector::zero(self.dim());
        for (k, c) in x.iter() {
            out.axpy(c, &self.act(k, v)?);
        }
        Ok(out)
    }

    pub fn matrix(&self, x: usize) -> Result<SparseMatrix> {
        let Some(cols) = &self.actions[x] else {
            return invalid(format!("{} does not act on {}", self.g.basis_label(x), self.name));
        };
        SparseMatrix::from_columns(self.dim(), cols)
    }

    pub fn weight_of(&self, j: usize) -> Option<&Weight> {
        match &self.grading {
            Grading::Weights(ws) => Some(&ws[j]),
            _ => None,
        }
    }

    /// Weight spaces, ordered by weight.
    pub fn weight_spaces(&self) -> &BTreeMap<Weight, Vec<usize>> {
        &self.spaces
    }

    pub fn weight_dim(&self, w: &[Q]) -> usize {
        self.spaces.get(w).map_or(0, |v| v.len())
    }

    /// Position of basis vector `j` inside its weight space.
    pub fn local_index(&self, j: usize) -> usize {
        self.local[j]
    }

    pub fn shift(&self, w: &[Q], x: usize) -> Weight {
        let r = self.g.rs.root_to_weight(&self.g.weight(x));
        w.iter().zip(&r).map(|(a, b)| a + b).collect()
    }

    /// Largest level change of a single Lie algebra basis element.
    pub fn max_step(&self) -> i64 {
        match self.grading {
            Grading::Weights(_) => (0..self.g.dim()).map(|x| self.g.weight(x).iter().sum::<i64>().abs()).max().unwrap_or(0),
            Grading::KTypes { .. } => 2,
        }
    }

    /// Basis vectors whose images under every basis element stay inside the window.
    pub fn is_interior(&self, j: usize) -> bool {
        match self.grading {
            Grading::KTypes { complete: true, .. } => true,
            _ => self.levels[j] + self.max_step() <= self.max_level,
        }
    }

    /// Local coordinates of a vector supported in one weight space.
    pub fn to_local(&self, w: &[Q], v: &SparseVector) -> SparseVector {
        let n = self.weight_dim(w);
        let mut out = SparseVector::zero(n);
        for (j, c) in v.iter() {
            debug_assert_eq!(self.weight_of(j).map(|x| x.as_slice()), Some(w));
            out.set(self.local[j], c.clone());
        }
        out
    }

    pub fn from_local(&self, w: &[Q], v: &SparseVector) -> SparseVector {
        let idx = &self.spaces[w];
        SparseVector::from_entries(self.dim(), v.iter().map(|(k, c)| (idx[k], c.clone())))
    }

    /// `x` applied to a vector of the weight space `w`, in local coordinates of the target weight.
    pub fn act_local(&self, x: usize, w: &[Q], v: &SparseVector) -> Result<(Weight, SparseVector)> {
        let target = self.shift(w, x);
        let img = self.act(x, &self.from_local(w, v))?;
        if self.weight_dim(&target) == 0 {
            return Ok((target, SparseVector::zero(0)));
        }
        Ok((target.clone(), self.to_local(&target, &img)))
    }

    fn check_weight_shifts(&self) -> Result<()> {
        let Grading::Weights(ws) = &self.grading else {
            return Ok(());
        };
        for (x, cols) in self.actions.iter().enumerate() {
            let Some(cols) = cols else { continue };
            for (j, col) in cols.iter().enumerate() {
                let target = self.shift(&ws[j], x);
                if let Some((i, _)) = col.iter().find(|(i, _)| ws[*i] != target) {
                    return invalid(format!(
                        "{} maps {} to {}, which has the wrong weight",
                        self.g.basis_label(x),
                        self.labels[j],
                        self.labels[i]
                    ));
                }
            }
        }
        Ok(())
    }

    /// First `(x, y, basis vector)` where `ρ([x,y]) ≠ ρ(x)ρ(y) − ρ(y)ρ(x)` on the interior.
    pub fn bracket_violation(&self) -> Option<(usize, usize, usize)> {
        let d = self.g.dim();
        let acting: Vec<usize> = (0..d).filter(|&x| self.has_action(x)).collect();
        // a vector is safe for two steps if its level leaves room for both
        let safe = |j: usize| match self.grading {
            Grading::KTypes { complete: true, .. } => true,
            _ => self.levels[j] + 2 * self.max_step() <= self.max_level,
        };
        for &x in &acting {
            for &y in &acting {
                let br = self.g.basis_bracket(x, y);
                if br.iter().any(|(k, _)| !self.has_action(k)) {
                    continue;
                }
                for j in (0..self.dim()).filter(|&j| safe(j)) {
                    let v = SparseVector::unit(self.dim(), j);
                    let lhs = self.act_element(br, &v).ok()?;
                    let xy = self.act(x, &self.act(y, &v).ok()?).ok()?;
                    let yx = self.act(y, &self.act(x, &v).ok()?).ok()?;
                    if lhs != &xy - &yx {
                        return Some((x, y, j));
                    }
                }
            }
        }
        None
    }

    /// Casimir element for the trace form, as a function on vectors.
    pub fn casimir(&self, v: &SparseVector) -> Result<SparseVector> {
        let g = &self.g;
        let mut out = SparseVector::zero(self.dim());
        for b in 0..g.num_positive() {
            let (e, f) = (g.e(b), g.f(b));
            out = &out + &self.act(e, &self.act(f, v)?)?;
            out = &out + &self.act(f, &self.act(e, v)?)?;
        }
        // dual basis of the h_i under the trace form is given by the inverse Cartan matrix
        let r = g.rank();
        let cartan = SparseMatrix::from_ints(&g.rs.cartan_matrix);
        for i in 0..r {
            let col = inverse_column(&cartan, i)?;
            for (j, c) in col.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                out.axpy(c, &self.act(g.h(i), &self.act(g.h(j), v)?)?);
            }
        }
        Ok(out)
    }

    /// Casimir scalar `⟨λ, λ + 2ρ⟩` (trace form) on a highest weight vector of weight `λ`.
    pub fn casimir_scalar(g: &LieAlgebra, lambda: &[Q]) -> Result<Q> {
        let cartan = SparseMatrix::from_ints(&g.rs.cartan_matrix);
        let r = g.rank();
        let mut inv = Vec::new();
        for i in 0..r {
            inv.push(inverse_column(&cartan, i)?);
        }
        // ⟨λ, μ⟩ = Σ λ_i (A^{-1})_{ij} μ_j in fundamental-weight coordinates
        let mut s = Q::zero();
        for i in 0..r {
            for j in 0..r {
                s += &lambda[i] * &inv[i][j] * (&lambda[j] + q(2));
            }
        }
        Ok(s)
    }

    /// Spot checks of the category tag on the generators.
    pub fn category_spot_check(&self) -> Result<CategoryCheck> {
        let g = &self.g;
        let n_roots: Vec<usize> = (0..g.num_positive())
            .filter(|&b| g.rs.positive_roots[b].iter().enumerate().any(|(i, &c)| c != 0 && !self.theta.contains(i)))
            .collect();
        let mut nilpotent = true;
        for gen in &self.generators {
            for &b in &n_roots {
                if !self.has_action(g.e(b)) {
                    continue;
                }
                let mut v = gen.clone();
                let mut steps = 0;
                while !v.is_zero() && steps <= self.max_level + 1 {
                    v = self.act(g.e(b), &v)?;
                    steps += 1;
                }
                nilpotent &= v.is_zero();
            }
        }
        let mut casimir_scalar = None;
        let mut casimir_ok = true;
        let all_act = (0..g.dim()).all(|x| self.has_action(x));
        if all_act {
            for gen in self.generators.iter() {
                // only generators deep inside the window see the full Casimir
                if gen.iter().any(|(j, _)| self.levels[j] + 2 * self.max_step() > self.max_level) {
                    continue;
                }
                let c = self.casimir(gen)?;
                let (j, x) = gen.leading().expect("nonzero generator");
                let scalar = c.get(j) / x;
                casimir_ok &= c == gen.scaled(&scalar);
                casimir_scalar.get_or_insert(scalar);
            }
        }
        Ok(CategoryCheck { n_theta_locally_nilpotent: nilpotent, casimir_scalar, casimir_acts_by_scalar: casimir_ok })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CategoryCheck {
    pub n_theta_locally_nilpotent: bool,
    #[serde(serialize_with = "ser_opt_q")]
    pub casimir_scalar: Option<Q>,
    pub casimir_acts_by_scalar: bool,
}

fn ser_opt_q<S: serde::Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn inverse_column(a: &SparseMatrix, i: usize) -> Result<Vec<Q>> {
    let n = a.nrows();
    let mut rows = Vec::new();
    for r in 0..n {
        let mut v = SparseVector::zero(n + 1);
        for (c, x) in a.row(r).iter() {
            v.set(c, x.clone());
        }
        v.set(n, if r == i { Q::one() } else { Q::zero() });
        rows.push(v);
    }
    let red = crate::linalg::rref(&SparseMatrix::from_rows(n + 1, rows)?);
    if red.rank != n {
        return invalid("singular Cartan matrix");
    }
    Ok((0..n).map(|r| red.matrix.get(r, n)).collect())
}

// ---------------------------------------------------------------------------
// Highest weight modules

struct HighestWeightBuilder<'a> {
    g: &'a LieAlgebra,
    alg: PbwAlgebra,
    lambda: Weight,
    memo: HashMap<(usize, Monomial), Poly>,
}

impl<'a> HighestWeightBuilder<'a> {
    fn new(g: &'a LieAlgebra, lambda: &[Q]) -> Result<Self> {
        let fs: Vec<usize> = (0..g.num_positive()).map(|b| g.f(b)).collect();
        let lie = GradedLie::from_basis_elements(g, &fs)?;
        Ok(HighestWeightBuilder { g, alg: PbwAlgebra::new(lie), lambda: lambda.to_vec(), memo: HashMap::new() })
    }

    fn mono_weight(&self, m: &[usize]) -> Weight {
        let mut w = self.lambda.clone();
        for &b in m {
            let r = self.g.rs.root_to_weight(&self.g.rs.positive_roots[b]);
            for (a, x) in w.iter_mut().zip(r) {
                *a -= x;
            }
        }
        w
    }

    /// `x · (m v_λ)` in the PBW basis of `U(n̄) v_λ`.
    fn act(&mut self, x: usize, m: &[usize]) -> Poly {
        match self.g.kind(x) {
            BasisKind::F(b) => self.alg.mul_gen(b, m),
            BasisKind::H(k) => {
                let c = self.mono_weight(m)[k].clone();
                let mut p = Poly::new();
                if !c.is_zero() {
                    p.insert(m.to_vec(), c);
                }
                p
            }
            BasisKind::E(_) => {
                let Some((&i, rest)) = m.split_first() else {
                    return Poly::new();
                };
                let key = (x, m.to_vec());
                if let Some(p) = self.memo.get(&key) {
                    return p.clone();
                }
                // x y_i m' = y_i (x m') + [x, y_i] m'
                let inner = self.act(x, rest);
                let mut out = self.alg.mul_gen_poly(i, &inner);
                let br = self.g.basis_bracket(x, self.g.f(i)).clone();
                for (z, c) in br.iter() {
                    for (mm, cc) in self.act(z, rest) {
                        add_term(&mut out, mm, c * cc);
                    }
                }
                self.memo.insert(key, out.clone());
                out
            }
        }
    }
}

fn add_term(p: &mut Poly, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    let slot = p.entry(m.clone()).or_insert_with(Q::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&m);
    }
}

fn monomial_label(g: &LieAlgebra, m: &[usize]) -> String {
    if m.is_empty() {
        return "v".into();
    }
    let mut parts = Vec::new();
    let mut k = 0;
    while k < m.len() {
        let mut e = 1;
        while k + e < m.len() && m[k + e] == m[k] {
            e += 1;
        }
        let name = g.basis_label(g.f(m[k]));
        parts.push(if e == 1 { name } else { format!("{name}^{e}") });
        k += e;
    }
    parts.push("v".into());
    parts.join("*")
}

/// Root-lattice vectors `Σ nᵢαᵢ` of height exactly `h`, in descending lexicographic order.
fn root_lattice_layer(rank: usize, h: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; rank];
    fn rec(i: usize, rem: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i + 1 == cur.len() {
            cur[i] = rem;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rem).rev() {
            cur[i] = e;
            rec(i + 1, rem - e, cur, out);
        }
    }
    rec(0, h as i64, &mut cur, &mut out);
    out
}

/// `M(λ) / Σ_{α∈Θ} U(n̄) f_α^{λ_α+1} v_λ`, truncated at `depth`.
pub fn generalized_verma(g: &LieAlgebra, theta: &Theta, lambda: &[Q], depth: usize) -> Result<WeightModule> {
    theta.check_rank(g.rank())?;
    if lambda.len() != g.rank() {
        return Err(Error::DimensionMismatch { expected: g.rank(), found: lambda.len() });
    }
    let mut exps = Vec::new();
    for a in theta.iter() {
        match as_int(&lambda[a]) {
            Some(n) if n >= 0 => exps.push((a, n as usize + 1)),
            _ => return invalid(format!("weight is not dominant integral on the simple root {}", crate::roots::SIMPLE_NAMES[a])),
        }
    }
    let mut b = HighestWeightBuilder::new(g, lambda)?;
    let rank = g.rank();
    let simple_root_index: Vec<usize> =
        (0..rank).map(|a| g.rs.root_index(&g.rs.simple_root(a)).expect("simple root")).collect();

    // per weight: monomial basis of M(λ)_μ, the relation subspace, its free columns
    struct Layer {
        monos: Vec<Monomial>,
        index: BTreeMap<Monomial, usize>,
        rel: Subspace,
        free: Vec<usize>,
    }
    let mut layers: BTreeMap<Vec<i64>, Layer> = BTreeMap::new();
    let mut order: Vec<Vec<i64>> = Vec::new();
    for h in 0..=depth {
        for gamma in root_lattice_layer(rank, h) {
            let monos = b.alg.lie.monomials_of_weight(&gamma);
            let index: BTreeMap<Monomial, usize> = monos.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
            let mut rel = Subspace::zero(monos.len());
            for &(a, n) in &exps {
                if gamma[a] < n as i64 {
                    continue;
                }
                let mut rest = gamma.clone();
                rest[a] -= n as i64;
                let power = Poly::from([(vec![simple_root_index[a]; n], Q::one())]);
                for m in b.alg.lie.monomials_of_weight(&rest) {
                    let prod = b.alg.mul(&Poly::from([(m, Q::one())]), &power);
                    let v = SparseVector::from_entries(monos.len(), prod.into_iter().map(|(mm, c)| (index[&mm], c)));
                    rel.insert(v);
                }
            }
            let free = rel.free_columns();
            if !free.is_empty() {
                order.push(gamma.clone());
            }
            layers.insert(gamma, Layer { monos, index, rel, free });
        }
    }
    // global basis
    let mut labels = Vec::new();
    let mut levels = Vec::new();
    let mut weights = Vec::new();
    let mut words = Vec::new();
    let mut global: BTreeMap<(Vec<i64>, usize), usize> = BTreeMap::new();
    for gamma in &order {
        let layer = &layers[gamma];
        for (k, &c) in layer.free.iter().enumerate() {
            let m = &layer.monos[c];
            global.insert((gamma.clone(), k), labels.len());
            labels.push(monomial_label(g, m));
            levels.push(gamma.iter().sum::<i64>());
            weights.push(b.mono_weight(m));
            words.push(m.clone());
        }
    }
    let d = labels.len();
    let mut actions: Vec<Option<Vec<SparseVector>>> = Vec::with_capacity(g.dim());
    for x in 0..g.dim() {
        let shift = g.weight(x);
        let mut cols = Vec::with_capacity(d);
        for (j, m) in words.iter().enumerate() {
            let gamma: Vec<i64> = (0..rank)
                .map(|a| m.iter().map(|&r| g.rs.positive_roots[r][a]).sum::<i64>())
                .collect();
            let target: Vec<i64> = gamma.iter().zip(&shift).map(|(a, s)| a - s).collect();
            let mut col = SparseVector::zero(d);
            if let Some(layer) = layers.get(&target) {
                let p = b.act(x, m);
                let v = SparseVector::from_entries(layer.monos.len(), p.into_iter().map(|(mm, c)| (layer.index[&mm], c)));
                let coords = layer.rel.quotient_coords(&v, &layer.free);
                for (k, c) in coords.iter() {
                    col.set(global[&(target.clone(), k)], c.clone());
                }
            }
            let _ = j;
            cols.push(col);
        }
        actions.push(Some(cols));
    }
    let lambda_v = lambda.to_vec();
    // generators: the top l_Θ piece (weights λ − Σ_{α∈Θ} n_α α)
    let generators: Vec<SparseVector> = words
        .iter()
        .enumerate()
        .filter(|(_, m)| m.iter().all(|&r| g.rs.positive_roots[r].iter().enumerate().all(|(a, &c)| c == 0 || theta.contains(a))))
        .map(|(j, _)| SparseVector::unit(d, j))
        .collect();
    let name = if theta.is_empty() {
        format!("verma:{}", lambda_v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    } else {
        format!(
            "gverma:{}:{}",
            theta.names().join(""),
            lambda_v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        )
    };
    let mut m = WeightModule::new(
        g.clone(),
        name,
        theta.clone(),
        labels,
        levels,
        depth as i64,
        actions,
        generators,
        vec![lambda_v],
        Grading::Weights(weights),
    )?;
    m.pbw_words = Some(words);
    Ok(m)
}

pub fn verma(g: &LieAlgebra, lambda: &[Q], depth: usize) -> Result<WeightModule> {
    generalized_verma(g, &Theta::empty(), lambda, depth)
}

// ---------------------------------------------------------------------------
// sl2 principal series

/// K-type label for `m`: `c_m` for `m ≥ 0`, `s_{|m|}` for `m < 0`.
pub fn ktype_label(m: i64) -> String {
    if m >= 0 {
        format!("c{m}")
    } else {
        format!("s{}", -m)
    }
}

/// The `sl2` principal series with parameter `ν` and parity `ε` on the K-types `|m| ≤ window`.
///
/// Basis `c_m = φ_m + φ_{−m}`, `s_m = i(φ_m − φ_{−m})` (and `c_0 = 2φ_0`), where
/// `h φ_m = a_m φ_{m+2} + b_m φ_{m−2}` with `a_m = (ν+1+m)/2`, `b_m = (ν+1−m)/2`,
/// and `e − f` rotates: `(e−f)c_m = m s_m`, `(e−f)s_m = −m c_m`.
/// The Casimir `h² + 2ef + 2fe` acts by `ν² − 1`.
pub fn principal_series(nu: &Q, parity: u8, window: i64) -> Result<WeightModule> {
    if parity > 1 {
        return invalid("parity must be 0 or 1");
    }
    if window < 2 {
        return invalid("window must be at least 2");
    }
    let eps = parity as i64;
    // the top of f on φ_{±m} has coefficient a_m; it must never vanish
    let t = nu + q(1 + eps);
    if !t.is_positive() && t.is_integer() && as_int(&t).is_some_and(|v| (-v) % 2 == 0) {
        return Err(Error::NotCertified(format!(
            "parameter {nu} makes the raising coefficient vanish at some K-type; use -{nu} instead"
        )));
    }
    let g = LieAlgebra::sl(2)?;
    let mut ktypes = Vec::new();
    let mut m = eps;
    while m <= window {
        ktypes.push(m);
        if m > 0 {
            ktypes.push(-m);
        }
        m += 2;
    }
    let d = ktypes.len();
    let pos: HashMap<i64, usize> = ktypes.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let a = |m: i64| (nu + q(1 + m)) / q(2);
    let b = |m: i64| (nu + q(1 - m)) / q(2);
    let sgn = |x: i64| q(x.signum());
    let put = |col: &mut SparseVector, m: i64, c: Q| {
        if let Some(&k) = pos.get(&m) {
            col.add_at(k, &c);
        }
    };
    let mut h_cols = Vec::new();
    let mut rot_cols = Vec::new(); // e − f
    let mut sym_cols = Vec::new(); // e + f
    for &label in &ktypes {
        let mut hc = SparseVector::zero(d);
        let mut rc = SparseVector::zero(d);
        let mut sc = SparseVector::zero(d);
        let m = label.abs();
        let (am, bm) = (a(m), b(m));
        let down = (m - 2).abs();
        if label >= 0 {
            put(&mut hc, m + 2, am.clone());
            put(&mut hc, down, bm.clone());
            if m > 0 {
                put(&mut rc, -m, q(m));
            }
            put(&mut sc, -(m + 2), -am.clone());
            if down > 0 {
                put(&mut sc, -down, &bm * sgn(m - 2));
            }
        } else {
            put(&mut hc, -(m + 2), am.clone());
            if down > 0 {
                put(&mut hc, -down, &bm * sgn(m - 2));
            }
            put(&mut rc, m, q(-m));
            put(&mut sc, m + 2, am.clone());
            put(&mut sc, down, -bm.clone());
        }
        h_cols.push(hc);
        rot_cols.push(rc);
        sym_cols.push(sc);
    }
    let half = qr(1, 2);
    let e_cols: Vec<SparseVector> = sym_cols.iter().zip(&rot_cols).map(|(s, r)| (s + r).scaled(&half)).collect();
    let f_cols: Vec<SparseVector> = sym_cols.iter().zip(&rot_cols).map(|(s, r)| (s - r).scaled(&half)).collect();
    let actions = vec![Some(e_cols), Some(f_cols), Some(h_cols)];
    let labels = ktypes.iter().map(|&m| ktype_label(m)).collect();
    let levels: Vec<i64> = ktypes.iter().map(|m| m.abs()).collect();
    let base = if eps == 0 { 2 } else { 1 };
    let generators = (0..d).filter(|&k| levels[k] <= base).map(|k| SparseVector::unit(d, k)).collect();
    let exps = vec![vec![nu - q(1)], vec![-nu - q(1)]];
    WeightModule::new(
        g,
        format!("ps:{nu}:{parity}"),
        Theta::all(1),
        labels,
        levels,
        window - (window - eps).rem_euclid(2),
        actions,
        generators,
        exps,
        Grading::KTypes { ktypes, complete: false, top_injective: true },
    )
}

/// Whether the principal series is reducible: `ν ∈ Z` with `ν + 1 ≡ ε (mod 2)`.
pub fn principal_series_reducible(nu: &Q, parity: u8) -> bool {
    as_int(nu).is_some_and(|n| (n + 1 - parity as i64).rem_euclid(2) == 0)
}

// ---------------------------------------------------------------------------
// Constructions

fn remap_cols(cols: &[SparseVector], dim: usize, map: &dyn Fn(usize) -> Option<usize>) -> Vec<SparseVector> {
    cols.iter().map(|c| c.reindex(dim, map)).collect()
}

impl WeightModule {
    pub fn direct_sum(&self, other: &WeightModule) -> Result<WeightModule> {
        if self.g.n != other.g.n {
            return invalid("direct sum of modules over different algebras");
        }
        let (d1, d2) = (self.dim(), other.dim());
        let d = d1 + d2;
        let mut actions = Vec::new();
        for x in 0..self.g.dim() {
            match (&self.actions[x], &other.actions[x]) {
                (Some(a), Some(b)) => {
                    let mut cols = remap_cols(a, d, &|i| Some(i));
                    cols.extend(remap_cols(b, d, &|i| Some(i + d1)));
                    actions.push(Some(cols));
                }
                _ => actions.push(None),
            }
        }
        let grading = match (&self.grading, &other.grading) {
            (Grading::Weights(a), Grading::Weights(b)) => Grading::Weights(a.iter().chain(b).cloned().collect()),
            (
                Grading::KTypes { ktypes: a, complete: ca, top_injective: ta },
                Grading::KTypes { ktypes: b, complete: cb, top_injective: tb },
            ) => Grading::KTypes { ktypes: a.iter().chain(b).copied().collect(), complete: *ca && *cb, top_injective: *ta && *tb },
            _ => return invalid("direct sum of a graded and a K-type module"),
        };
        if self.max_level != other.max_level && !self.is_graded() {
            return invalid("direct sum needs equal K-type windows");
        }
        let mut gens: Vec<SparseVector> = self.generators.iter().map(|v| v.reindex(d, |i| Some(i))).collect();
        gens.extend(other.generators.iter().map(|v| v.reindex(d, |i| Some(i + d1))));
        // keep levels relative to each summand's own top; the window is the smaller one
        let levels = self.levels.iter().chain(&other.levels).copied().collect();
        let mut highest = self.highest.clone();
        highest.extend(other.highest.iter().cloned());
        let theta = Theta::from_indices(self.theta.iter().filter(|&i| other.theta.contains(i)));
        WeightModule::new(
            self.g.clone(),
            format!("{}+{}", self.name, other.name),
            theta,
            self.labels.iter().map(|l| format!("{l}[0]")).chain(other.labels.iter().map(|l| format!("{l}[1]"))).collect(),
            levels,
            self.max_level.min(other.max_level),
            actions,
            gens,
            highest,
            grading,
        )
    }

    /// The span of a subset of basis vectors, which must be stable.
    pub fn basis_submodule(&self, keep: &[usize], name: &str) -> Result<(WeightModule, Morphism)> {
        let set: BTreeSet<usize> = keep.iter().copied().collect();
        let idx: Vec<usize> = set.iter().copied().collect();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let d = idx.len();
        let mut actions = Vec::new();
        for (x, a) in self.actions.iter().enumerate() {
            match a {
                Some(cols) => {
                    let mut new_cols = Vec::new();
                    for &j in &idx {
                        if let Some((i, _)) = cols[j].iter().find(|(i, _)| !set.contains(i)) {
                            return invalid(format!(
                                "{} maps {} outside the span (to {})",
                                self.g.basis_label(x),
                                self.labels[j],
                                self.labels[i]
                            ));
                        }
                        new_cols.push(cols[j].reindex(d, |i| pos.get(&i).copied()));
                    }
                    actions.push(Some(new_cols));
                }
                None => actions.push(None),
            }
        }
        let grading = self.restrict_grading(&idx, None);
        let gens = idx.iter().map(|&i| SparseVector::unit(d, pos[&i])).collect();
        let sub = WeightModule::new(
            self.g.clone(),
            name.to_string(),
            self.theta.clone(),
            idx.iter().map(|&i| self.labels[i].clone()).collect(),
            idx.iter().map(|&i| self.levels[i]).collect(),
            self.max_level,
            actions,
            gens,
            self.highest.clone(),
            grading,
        )?;
        let mut inc = SparseMatrix::zeros(self.dim(), d);
        for (k, &i) in idx.iter().enumerate() {
            inc.set(i, k, Q::one());
        }
        Ok((sub, Morphism { matrix: inc }))
    }

    /// Quotient by the span of a stable subset of basis vectors.
    pub fn basis_quotient(&self, kill: &[usize], name: &str, complete: Option<bool>) -> Result<(WeightModule, Morphism)> {
        let set: BTreeSet<usize> = kill.iter().copied().collect();
        let idx: Vec<usize> = (0..self.dim()).filter(|i| !set.contains(i)).collect();
        let pos: HashMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let d = idx.len();
        for a in self.actions.iter().flatten() {
            for &j in &set {
                if let Some((i, _)) = a[j].iter().find(|(i, _)| !set.contains(i)) {
                    return invalid(format!("killed span is not stable: {} reaches {}", self.labels[j], self.labels[i]));
                }
            }
        }
        let actions = self
            .actions
            .iter()
            .map(|a| a.as_ref().map(|cols| idx.iter().map(|&j| cols[j].reindex(d, |i| pos.get(&i).copied())).collect()))
            .collect();
        let grading = self.restrict_grading(&idx, complete);
        let gens = self
            .generators
            .iter()
            .map(|v| v.reindex(d, |i| pos.get(&i).copied()))
            .filter(|v| !v.is_zero())
            .collect();
        let quo = WeightModule::new(
            self.g.clone(),
            name.to_string(),
            self.theta.clone(),
            idx.iter().map(|&i| self.labels[i].clone()).collect(),
            idx.iter().map(|&i| self.levels[i]).collect(),
            self.max_level,
            actions,
            gens,
            self.highest.clone(),
            grading,
        )?;
        let mut proj = SparseMatrix::zeros(d, self.dim());
        for (k, &i) in idx.iter().enumerate() {
            proj.set(k, i, Q::one());
        }
        Ok((quo, Morphism { matrix: proj }))
    }

    fn restrict_grading(&self, idx: &[usize], complete: Option<bool>) -> Grading {
        match &self.grading {
            Grading::Weights(ws) => Grading::Weights(idx.iter().map(|&i| ws[i].clone()).collect()),
            Grading::KTypes { ktypes, complete: c, top_injective } => Grading::KTypes {
                ktypes: idx.iter().map(|&i| ktypes[i]).collect(),
                complete: complete.unwrap_or(*c),
                top_injective: *top_injective,
            },
        }
    }

    /// Quotient of a graded module by a graded subspace (local coordinates per weight),
    /// keeping only the actions of `acting`. The subspace must be stable under them.
    pub fn graded_quotient(
        &self,
        sub: &BTreeMap<Weight, Subspace>,
        acting: &[usize],
        theta: Theta,
        name: &str,
    ) -> Result<WeightModule> {
        if !self.is_graded() {
            return invalid("graded quotient of a K-type module");
        }
        let mut labels = Vec::new();
        let mut levels = Vec::new();
        let mut weights = Vec::new();
        let mut reps: Vec<(Weight, usize)> = Vec::new();
        let mut new_index: BTreeMap<(Weight, usize), usize> = BTreeMap::new();
        let mut frees: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (w, idx) in &self.spaces {
            let s = sub.get(w).cloned().unwrap_or_else(|| Subspace::zero(idx.len()));
            let free = s.free_columns();
            for (k, &c) in free.iter().enumerate() {
                new_index.insert((w.clone(), k), labels.len());
                labels.push(self.labels[idx[c]].clone());
                levels.push(self.levels[idx[c]]);
                weights.push(w.clone());
                reps.push((w.clone(), c));
            }
            frees.insert(w.clone(), free);
        }
        let d = labels.len();
        let mut actions = vec![None; self.g.dim()];
        for &x in acting {
            let mut cols = Vec::with_capacity(d);
            for (w, c) in &reps {
                let v = SparseVector::unit(self.weight_dim(w), *c);
                let (tw, img) = self.act_local(x, w, &v)?;
                let mut col = SparseVector::zero(d);
                if self.weight_dim(&tw) > 0 {
                    let s = sub.get(&tw).cloned().unwrap_or_else(|| Subspace::zero(self.weight_dim(&tw)));
                    let coords = s.quotient_coords(&img, &frees[&tw]);
                    for (k, val) in coords.iter() {
                        col.set(new_index[&(tw.clone(), k)], val.clone());
                    }
                }
                cols.push(col);
            }
            actions[x] = Some(cols);
        }
        let gens = self
            .generators
            .iter()
            .filter_map(|v| {
                let (j, _) = v.leading()?;
                let w = self.weight_of(j)?.clone();
                let s = sub.get(&w).cloned().unwrap_or_else(|| Subspace::zero(self.weight_dim(&w)));
                let coords = s.quotient_coords(&self.to_local(&w, v), &frees[&w]);
                let out = SparseVector::from_entries(d, coords.iter().map(|(k, c)| (new_index[&(w.clone(), k)], c.clone())));
                (!out.is_zero()).then_some(out)
            })
            .collect();
        WeightModule::new(
            self.g.clone(),
            name.to_string(),
            theta,
            labels,
            levels,
            self.max_level,
            actions,
            gens,
            self.highest.clone(),
            Grading::Weights(weights),
        )
    }
}

/// A linear map between two modules, as a matrix in their bases.
#[derive(Clone, Debug)]
pub struct Morphism {
    pub matrix: SparseMatrix,
}

impl Morphism {
    /// Extends `v_λ ↦ image` along `U(n̄)`: `m v_λ ↦ m · image` for every PBW word of the source.
    pub fn from_highest_vector(source: &WeightModule, target: &WeightModule, image: &SparseVector) -> Result<Morphism> {
        let Some(words) = &source.pbw_words else {
            return invalid("source module has no PBW description");
        };
        let mut m = SparseMatrix::zeros(target.dim(), source.dim());
        for (j, word) in words.iter().enumerate() {
            let mut v = image.clone();
            for &r in word.iter().rev() {
                v = target.act(target.g.f(r), &v)?;
            }
            for (i, c) in v.iter() {
                m.set(i, j, c.clone());
            }
        }
        Ok(Morphism { matrix: m })
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        self.matrix.apply(v)
    }

    /// First `(basis element, source vector)` where the map fails to commute with the action,
    /// checked on source vectors whose images stay inside both windows.
    pub fn commutation_violation(&self, source: &WeightModule, target: &WeightModule) -> Option<(usize, usize)> {
        for x in (0..source.g.dim()).filter(|&x| source.has_action(x) && target.has_action(x)) {
            for j in 0..source.dim() {
                if !source.is_interior(j) {
                    continue;
                }
                let v = SparseVector::unit(source.dim(), j);
                let img = self.apply(&v);
                if img.iter().any(|(i, _)| !target.is_interior(i)) {
                    continue;
                }
                let lhs = self.apply(&source.act(x, &v).ok()?);
                let rhs = target.act(x, &img).ok()?;
                if lhs != rhs {
                    return Some((x, j));
                }
            }
        }
        None
    }

    /// Whether the map sends each weight space into the same weight space.
    pub fn preserves_weights(&self, source: &WeightModule, target: &WeightModule) -> bool {
        for j in 0..source.dim() {
            let img = self.apply(&SparseVector::unit(source.dim(), j));
            match (source.weight_of(j), &target.grading) {
                (Some(w), Grading::Weights(tw)) => {
                    if img.iter().any(|(i, _)| &tw[i] != w) {
                        return false;
                    }
                }
                (None, Grading::KTypes { ktypes: tk, .. }) => {
                    let Grading::KTypes { ktypes: sk, .. } = &source.grading else { return false };
                    if img.iter().any(|(i, _)| tk[i] != sk[j]) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Module descriptions

/// `verma:3`, `verma:1,1`, `gverma:a:1,0`, `ps:ν:ε`, `fd:3` (finite dimensional `L(λ)`).
pub fn parse_module(spec: &str, g: &LieAlgebra, window: usize) -> Result<WeightModule> {
    let parts: Vec<&str> = spec.split(':').collect();
    let weight = |s: &str| -> Result<Weight> {
        let w: Vec<Q> = s.split(',').map(parse_q).collect::<Result<_>>()?;
        if w.len() != g.rank() {
            return Err(Error::DimensionMismatch { expected: g.rank(), found: w.len() });
        }
        Ok(w)
    };
    match parts.as_slice() {
        ["verma", w] => verma(g, &weight(w)?, window),
        ["gverma", t, w] => {
            let theta = Theta::parse(&t.chars().map(|c| c.to_string()).collect::<Vec<_>>().join(","), g.rank())
                .or_else(|_| Theta::parse(t, g.rank()))?;
            generalized_verma(g, &theta, &weight(w)?, window)
        }
        ["fd", w] => generalized_verma(g, &Theta::all(g.rank()), &weight(w)?, window),
        ["ps", nu, eps] => {
            if g.n != 2 {
                return invalid("principal series are only modelled for sl2");
            }
            let parity: u8 = eps.parse().map_err(|_| Error::InvalidInput(format!("bad parity {eps:?}")))?;
            principal_series(&parse_q(nu)?, parity, window as i64)
        }
        _ => invalid(format!("unknown module description {spec:?}")),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleFile {
    pub algebra: String,
    pub name: String,
    pub theta: String,
    pub max_level: i64,
    pub basis: Vec<BasisEntry>,
    /// Sparse action matrices keyed by Lie basis label, as `[row, column, value]`.
    pub actions: BTreeMap<String, Vec<(usize, usize, String)>>,
    pub generators: Vec<Vec<(usize, String)>>,
    pub highest: Vec<Vec<String>>,
    #[serde(default)]
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BasisEntry {
    pub label: String,
    pub level: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ktype: Option<i64>,
}

impl WeightModule {
    pub fn to_file(&self) -> ModuleFile {
        let basis = (0..self.dim())
            .map(|j| BasisEntry {
                label: self.labels[j].clone(),
                level: self.levels[j],
                weight: self.weight_of(j).map(|w| w.iter().map(|x| x.to_string()).collect()),
                ktype: match &self.grading {
                    Grading::KTypes { ktypes, .. } => Some(ktypes[j]),
                    _ => None,
                },
            })
            .collect();
        let mut actions = BTreeMap::new();
        for (x, a) in self.actions.iter().enumerate() {
            if let Some(cols) = a {
                let mut entries = Vec::new();
                for (j, col) in cols.iter().enumerate() {
                    for (i, c) in col.iter() {
                        entries.push((i, j, c.to_string()));
                    }
                }
                entries.sort();
                actions.insert(self.g.basis_label(x), entries);
            }
        }
        ModuleFile {
            algebra: format!("sl{}", self.g.n),
            name: self.name.clone(),
            theta: self.theta.label(self.rank()),
            max_level: self.max_level,
            basis,
            actions,
            generators: self.generators.iter().map(|v| v.iter().map(|(i, c)| (i, c.to_string())).collect()).collect(),
            highest: self.highest.iter().map(|w| w.iter().map(|x| x.to_string()).collect()).collect(),
            complete: matches!(self.grading, Grading::KTypes { complete: true, .. }),
        }
    }

    /// Loads a module description. K-type modules must be complete (finite dimensional);
    /// infinite K-type modules carry certificates only the built-in constructions can provide.
    pub fn from_file(f: &ModuleFile) -> Result<WeightModule> {
        let n: usize = f
            .algebra
            .strip_prefix("sl")
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::InvalidInput(format!("unknown algebra {:?}", f.algebra)))?;
        let g = LieAlgebra::sl(n)?;
        let d = f.basis.len();
        let theta = Theta::parse(&f.theta, g.rank())?;
        let mut actions: Vec<Option<Vec<SparseVector>>> = vec![None; g.dim()];
        for (label, entries) in &f.actions {
            let Some(x) = (0..g.dim()).find(|&x| &g.basis_label(x) == label) else {
                return invalid(format!("unknown Lie basis label {label:?}"));
            };
            let mut cols = vec![SparseVector::zero(d); d];
            for (i, j, c) in entries {
                if *i >= d || *j >= d {
                    return invalid("action entry out of range");
                }
                cols[*j].add_at(*i, &parse_q(c)?);
            }
            actions[x] = Some(cols);
        }
        let weights: Option<Vec<Weight>> = f
            .basis
            .iter()
            .map(|b| b.weight.as_ref().map(|w| w.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()))
            .collect::<Option<Vec<_>>>()
            .map(|v| v.into_iter().collect::<Result<Vec<_>>>())
            .transpose()?;
        let grading = match weights {
            Some(ws) => Grading::Weights(ws),
            None => {
                let ktypes: Option<Vec<i64>> = f.basis.iter().map(|b| b.ktype).collect();
                let Some(ktypes) = ktypes else {
                    return invalid("every basis entry needs a weight or a K-type");
                };
                if !f.complete {
                    return Err(Error::NotCertified("infinite K-type modules cannot be loaded from a file".into()));
                }
                Grading::KTypes { ktypes, complete: true, top_injective: false }
            }
        };
        let generators = f
            .generators
            .iter()
            .map(|v| {
                let mut s = SparseVector::zero(d);
                for (i, c) in v {
                    if *i >= d {
                        return invalid("generator entry out of range");
                    }
                    s.add_at(*i, &parse_q(c)?);
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        let highest = f.highest.iter().map(|w| w.iter().map(|s| parse_q(s)).collect()).collect::<Result<Vec<_>>>()?;
        WeightModule::new(
            g,
            f.name.clone(),
            theta,
            f.basis.iter().map(|b| b.label.clone()).collect(),
            f.basis.iter().map(|b| b.level).collect(),
            f.max_level,
            actions,
            generators,
            highest,
            grading,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_verma_weights() {
        let g = LieAlgebra::sl(2).unwrap();
        let m = verma(&g, &[q(3)], 4).unwrap();
        let ws: Vec<Q> = m.weight_spaces().keys().map(|w| w[0].clone()).collect();
        assert_eq!(ws, vec![q(-5), q(-3), q(-1), q(1), q(3)]);
        assert!(m.weight_spaces().values().all(|v| v.len() == 1));
        assert!(m.bracket_violation().is_none());
    }

    #[test]
    fn sl2_commutation_formula() {
        // e f^k v = k(λ − k + 1) f^{k−1} v
        let g = LieAlgebra::sl(2).unwrap();
        let m = verma(&g, &[q(3)], 5).unwrap();
        let idx = |k: usize| m.pbw_words.as_ref().unwrap().iter().position(|w| w.len() == k).unwrap();
        let img = m.act(g.e(0), &SparseVector::unit(m.dim(), idx(2))).unwrap();
        assert_eq!(img, SparseVector::unit(m.dim(), idx(1)).scaled(&q(4)));
    }

    #[test]
    fn sl3_verma_kostant() {
        let g = LieAlgebra::sl(3).unwrap();
        let m = verma(&g, &[q(1), q(1)], 2).unwrap();
        // λ − α − β in fundamental-weight coordinates
        let w = vec![q(0), q(0)];
        assert_eq!(m.weight_dim(&w), 2);
        assert!(m.bracket_violation().is_none());
    }

    #[test]
    fn gverma_top_piece() {
        let g = LieAlgebra::sl(3).unwrap();
        let m = generalized_verma(&g, &Theta::from_indices([0]), &[q(1), q(0)], 2).unwrap();
        assert_eq!(m.generators.len(), 2);
        assert!(m.bracket_violation().is_none());
        assert!(generalized_verma(&g, &Theta::from_indices([0]), &[qr(1, 2), q(0)], 2).is_err());
        // finite dimensional L(1,1) has dimension 8
        let fd = generalized_verma(&g, &Theta::all(2), &[q(1), q(1)], 6).unwrap();
        assert_eq!(fd.dim(), 8);
    }

    #[test]
    fn principal_series_casimir() {
        let nu = qr(1, 3);
        let ps = principal_series(&nu, 0, 10).unwrap();
        let g = &ps.g;
        for j in 0..ps.dim() {
            if ps.levels[j] + 4 > ps.max_level {
                continue;
            }
            let v = SparseVector::unit(ps.dim(), j);
            let hh = ps.act(g.h(0), &ps.act(g.h(0), &v).unwrap()).unwrap();
            let ef = ps.act(g.e(0), &ps.act(g.f(0), &v).unwrap()).unwrap();
            let fe = ps.act(g.f(0), &ps.act(g.e(0), &v).unwrap()).unwrap();
            let c = &(&hh + &ef.scaled(&q(2))) + &fe.scaled(&q(2));
            assert_eq!(c, v.scaled(&(&nu * &nu - q(1))), "{}", ps.labels[j]);
        }
        assert!(ps.bracket_violation().is_none());
        assert!(principal_series(&q(-3), 0, 10).is_err());
        assert!(principal_series(&q(-3), 1, 10).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let g = LieAlgebra::sl(2).unwrap();
        let m = verma(&g, &[q(2)], 3).unwrap();
        let f = m.to_file();
        let back = WeightModule::from_file(&f).unwrap();
        assert_eq!(back.to_file(), f);
    }
}
