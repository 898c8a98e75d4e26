//! The filtration `F_e V = V ∩ F_e(Ĵ_{Θ,Π}(V))` attached to a cocharacter `ν`, where
//! `Θ = Θ(ν)` collects the simple roots killed by `ν` and `F_e(Ĵ)` is the product of
//! the generalized `H`-eigenspaces with eigenvalue `a' ≤_Z e` (`e − a' ∈ Z≥0`).
//!
//! Graded modules: the map `V → Ĵ` is read off the stabilized tower weight by weight.
//! `sl2` K-type modules: a vector of `W_M` is sent to `V/f^KV` with `K` past every cone
//! bound in the reported range and split along the generalized `h`-eigenspaces there.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::jacquet::{c_roots_for, graded_tower, inverse, jacquet, JacquetOptions, KTypeEngine};
use crate::linalg::{as_int, generalized_eigenspace, kernel, q, spectrum_at, SparseMatrix, SparseVector, Subspace, Q};
use crate::module::{Weight, WeightModule};
use crate::report::{ser_q, ser_qvec};
use crate::roots::Theta;

/// `a ≤_Z e`.
pub fn le_z(a: &Q, e: &Q) -> bool {
    let d = e - a;
    d.is_integer() && d >= Q::zero()
}

enum Model {
    Graded {
        /// `H`-value of every weight.
        values: BTreeMap<Weight, Q>,
        /// `(c^K V)_μ`, the part of `V_μ` invisible in the Jacquet module.
        invisible: BTreeMap<Weight, Subspace>,
    },
    KTypes {
        /// Basis indices spanning `W_M`, and their levels.
        idx: Vec<usize>,
        levels: Vec<i64>,
        /// Eigen-coordinates of each basis vector of `W_M` in `V/f^KV`, one row per coordinate.
        coords: SparseMatrix,
        /// `H`-value of each coordinate.
        labels: Vec<Q>,
    },
}

pub struct Filtration<'a> {
    v: &'a WeightModule,
    pub theta: Theta,
    pub exponents: Vec<i64>,
    /// `H = dν(1)` in simple-coroot coordinates.
    pub h: Vec<Q>,
    model: Model,
    /// `Σ_{μ(H)=e} dim J_μ` over the window.
    pub jacquet_sums: BTreeMap<Q, usize>,
    /// Smallest `e` for which `F_e` is computed exactly (K-type modules).
    pub lowest: Option<Q>,
}

impl<'a> Filtration<'a> {
    /// `exponents[α] = ⟨α, ν⟩ ≥ 0`. For K-type modules `depth` is the number of unit
    /// steps of `H`-eigenvalue below the top that must be exact.
    pub fn new(v: &'a WeightModule, exponents: &[i64], depth: usize) -> Result<Self> {
        let rs = &v.g.rs;
        if exponents.len() != v.rank() {
            return Err(Error::DimensionMismatch { expected: v.rank(), found: exponents.len() });
        }
        if exponents.iter().any(|&n| n < 0) {
            return Err(Error::InvalidInput("cocharacter exponents must be nonnegative".into()));
        }
        let theta = Theta::from_indices((0..v.rank()).filter(|&a| exponents[a] == 0));
        let all = Theta::all(v.rank());
        let pairs: Vec<(usize, i64)> = (0..v.rank()).filter(|&a| exponents[a] > 0).map(|a| (a, exponents[a])).collect();
        let h = rs.cocharacter(&all, &theta, &pairs)?.h;
        if !theta.is_subset(&v.theta) {
            return Err(Error::Hypothesis(format!(
                "the module tag {} must contain the vanishing set {} of the cocharacter",
                v.theta.label(v.rank()),
                theta.label(v.rank())
            )));
        }
        let value = |w: &[Q]| rs.weight_on_coweight(w, &h);
        if v.is_graded() {
            let j = jacquet(v, &all, &theta, &JacquetOptions::default())?;
            let c = c_roots_for(v, &all, &theta)?;
            let tower = graded_tower(v, &c, j.k_max)?;
            let invisible = tower.into_iter().map(|(w, s)| (w, s[j.k_max].clone())).collect();
            let values = v.weight_spaces().keys().map(|w| (w.clone(), value(w))).collect();
            let mut sums = BTreeMap::new();
            for jw in &j.weights {
                *sums.entry(value(&jw.weight)).or_insert(0) += jw.dim;
            }
            Ok(Filtration { v, theta, exponents: exponents.to_vec(), h, model: Model::Graded { values, invisible }, jacquet_sums: sums, lowest: None })
        } else {
            if !theta.is_empty() {
                return Err(Error::NotCertified("K-type modules need a regular cocharacter".into()));
            }
            let eng = KTypeEngine::new(v)?;
            let lambda2 = eng.spectrum(1)?;
            let tops: Vec<Q> = lambda2.keys().map(|l| value(&[l.clone()])).collect();
            if tops.iter().any(|t| !(t - &tops[0]).is_integer()) {
                return Err(Error::Hypothesis("the exponents lie in different cosets of Z; the order is not total".into()));
            }
            let top = tops.iter().max().cloned().unwrap_or_else(Q::zero);
            let lowest = &top - q(depth as i64);
            // `μ ↦ μ(H)` drops by `n` per step of 2 in `h`
            let n = exponents[0];
            let steps = (depth as i64 + n - 1) / n;
            let cands: Vec<Q> = eng
                .candidates(&lambda2, steps as usize)
                .into_iter()
                .filter(|m| value(&[m.clone()]) >= lowest)
                .collect();
            let mut k = 1;
            for m in &cands {
                for l in lambda2.keys() {
                    if let Some(d) = as_int(&((l - m) / q(2))) {
                        if d >= 0 {
                            k = k.max(d as usize + 1);
                        }
                    }
                }
            }
            let qd = eng.quotient_data(k)?;
            let d = qd.h.nrows();
            let all_eigs: Vec<Q> = lambda2.keys().flat_map(|l| (0..k as i64).map(move |j| l - q(2 * j))).collect();
            let (spec, complete) = spectrum_at(&qd.h, &all_eigs)?;
            if !complete {
                return Err(Error::NotCertified("V/f^KV has eigenvalues outside the expected lattice".into()));
            }
            let mut basis_cols = Vec::new();
            let mut labels = Vec::new();
            for (mu, _) in &spec {
                for b in generalized_eigenspace(&qd.h, mu, d)? {
                    basis_cols.push(b);
                    labels.push(value(&[mu.clone()]));
                }
            }
            let binv = inverse(&SparseMatrix::from_columns(d, &basis_cols)?)?;
            let cols: Vec<SparseVector> = qd.classes.iter().map(|c| binv.apply(c)).collect();
            let coords = SparseMatrix::from_columns(d, &cols)?;
            let mut sums = BTreeMap::new();
            let j = jacquet(v, &all, &theta, &JacquetOptions { k_max: None, height: steps as usize })?;
            for jw in &j.weights {
                let e = value(&jw.weight);
                if e >= lowest {
                    *sums.entry(e).or_insert(0) += jw.dim;
                }
            }
            let levels = qd.idx.iter().map(|&j| v.levels[j]).collect();
            Ok(Filtration {
                v,
                theta,
                exponents: exponents.to_vec(),
                h,
                model: Model::KTypes { idx: qd.idx, levels, coords, labels },
                jacquet_sums: sums,
                lowest: Some(lowest),
            })
        }
    }

    pub fn window_dim(&self) -> usize {
        match &self.model {
            Model::Graded { .. } => self.v.dim(),
            Model::KTypes { idx, .. } => idx.len(),
        }
    }

    /// `H`-eigenvalues carried by the Jacquet module within the window, descending.
    pub fn values(&self) -> Vec<Q> {
        self.jacquet_sums.keys().rev().cloned().collect()
    }

    /// `F_e ∩ W` in window coordinates.
    pub fn space(&self, e: &Q) -> Result<Subspace> {
        self.space_in(e, None)
    }

    /// `F_e ∩ W_{M'}` for K-type modules (restricted to levels `≤ max_level`), else `F_e ∩ W`.
    fn space_in(&self, e: &Q, max_level: Option<i64>) -> Result<Subspace> {
        if let Some(low) = &self.lowest {
            if e + Q::one() < *low {
                return Err(Error::NotCertified(format!("F_{e} lies below the computed range")));
            }
        }
        match &self.model {
            Model::Graded { values, invisible } => {
                let mut s = Subspace::zero(self.v.dim());
                for (w, idx) in self.v.weight_spaces() {
                    if le_z(&values[w], e) {
                        for &j in idx {
                            s.insert(SparseVector::unit(self.v.dim(), j));
                        }
                    } else {
                        for b in invisible[w].basis() {
                            s.insert(self.v.from_local(w, b));
                        }
                    }
                }
                Ok(s)
            }
            Model::KTypes { idx, levels, coords, labels } => {
                let cols: Vec<usize> = (0..idx.len()).filter(|&c| max_level.is_none_or(|m| levels[c] <= m)).collect();
                let rows: Vec<SparseVector> = (0..labels.len())
                    .filter(|&r| !le_z(&labels[r], e))
                    .map(|r| {
                        let row = coords.row(r);
                        SparseVector::from_entries(cols.len(), cols.iter().enumerate().filter_map(|(k, &c)| row.entry(c).map(|x| (k, x.clone()))))
                    })
                    .collect();
                let m = SparseMatrix::from_rows(cols.len(), rows)?;
                let ker = kernel(&m);
                let embedded: Vec<SparseVector> =
                    ker.iter().map(|v| SparseVector::from_entries(idx.len(), v.iter().map(|(k, x)| (cols[k], x.clone())))).collect();
                Subspace::span(idx.len(), &embedded)
            }
        }
    }

    pub fn dim(&self, e: &Q) -> Result<usize> {
        Ok(self.space(e)?.dimension())
    }

    /// `F_{−l}(U(n̄_Θ)) · F_e` within the window.
    pub fn enveloping_step(&self, e: &Q, l: i64) -> Result<Subspace> {
        let v = self.v;
        let g = &v.g;
        match &self.model {
            Model::Graded { .. } => {
                let base = self.space(e)?;
                // local pieces of F_e per weight
                let mut local: BTreeMap<Weight, Subspace> = BTreeMap::new();
                for (w, idx) in v.weight_spaces() {
                    let mut s = Subspace::zero(idx.len());
                    for b in base.basis() {
                        if b.iter().all(|(j, _)| v.weight_of(j) == Some(w)) && !b.is_zero() {
                            s.insert(v.to_local(w, b));
                        }
                    }
                    local.insert(w.clone(), s);
                }
                let gammas: Vec<(usize, Weight, i64)> = (0..g.num_positive())
                    .filter(|&b| g.rs.positive_roots[b].iter().enumerate().any(|(i, &c)| c != 0 && !self.theta.contains(i)))
                    .map(|b| {
                        let r = &g.rs.positive_roots[b];
                        let hv = (0..v.rank()).map(|a| r[a] * self.exponents[a]).sum();
                        (g.f(b), g.rs.root_to_weight(r), hv)
                    })
                    .collect();
                let mut order: Vec<(Q, Weight)> = v
                    .weight_spaces()
                    .keys()
                    .map(|w| Ok((-g.rs.weight_to_root_coords(w)?.into_iter().sum::<Q>(), w.clone())))
                    .collect::<Result<_>>()?;
                order.sort();
                // T = U(n̄_Θ)·F_e; B(μ, l) = Σ_γ f_γ B(μ+γ, l − γ(H)), B(μ, l ≤ 0) = T(μ)
                let mut t: BTreeMap<Weight, Subspace> = BTreeMap::new();
                for (_, w) in &order {
                    let mut s = local[w].clone();
                    for (x, shift, _) in &gammas {
                        let src: Weight = w.iter().zip(shift).map(|(a, b)| a + b).collect();
                        if let Some(ts) = t.get(&src) {
                            for vec in ts.basis().to_vec() {
                                s.insert(v.act_local(*x, &src, &vec)?.1);
                            }
                        }
                    }
                    t.insert(w.clone(), s);
                }
                let mut memo: BTreeMap<(Weight, i64), Subspace> = BTreeMap::new();
                let mut out = Subspace::zero(v.dim());
                for (_, w) in &order {
                    let s = b_space(v, &gammas, &t, &mut memo, w, l)?;
                    for b in s.basis() {
                        out.insert(v.from_local(w, b));
                    }
                }
                Ok(out)
            }
            Model::KTypes { idx, levels, .. } => {
                let n = self.exponents[0];
                let j0 = (l + n - 1).div_euclid(n).max(0);
                let m = *levels.iter().max().unwrap_or(&0);
                let source = self.space_in(e, Some(m - 2 * j0))?;
                let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
                let mut out = Subspace::zero(idx.len());
                for b in source.basis() {
                    let mut u = SparseVector::from_entries(v.dim(), b.iter().map(|(k, x)| (idx[k], x.clone())));
                    for _ in 0..j0 {
                        u = v.act(g.f(0), &u)?;
                    }
                    out.insert(u.reindex(idx.len(), |i| pos.get(&i).copied()));
                }
                Ok(out)
            }
        }
    }
}

fn b_space(
    v: &WeightModule,
    gammas: &[(usize, Weight, i64)],
    t: &BTreeMap<Weight, Subspace>,
    memo: &mut BTreeMap<(Weight, i64), Subspace>,
    w: &Weight,
    l: i64,
) -> Result<Subspace> {
    if l <= 0 {
        return Ok(t.get(w).cloned().unwrap_or_else(|| Subspace::zero(v.weight_dim(w))));
    }
    if let Some(s) = memo.get(&(w.clone(), l)) {
        return Ok(s.clone());
    }
    let mut s = Subspace::zero(v.weight_dim(w));
    for (x, shift, hv) in gammas {
        let src: Weight = w.iter().zip(shift).map(|(a, b)| a + b).collect();
        if v.weight_dim(&src) == 0 {
            continue;
        }
        let inner = b_space(v, gammas, t, memo, &src, l - hv)?;
        for vec in inner.basis() {
            s.insert(v.act_local(*x, &src, vec)?.1);
        }
    }
    memo.insert((w.clone(), l), s.clone());
    Ok(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationRow {
    #[serde(serialize_with = "ser_q")]
    pub e: Q,
    pub dim_f: usize,
    pub graded: usize,
    pub jacquet: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiltrationReport {
    pub module: String,
    pub exponents: Vec<i64>,
    pub theta: Theta,
    #[serde(serialize_with = "ser_qvec")]
    pub h: Vec<Q>,
    pub window_dim: usize,
    pub rows: Vec<FiltrationRow>,
    pub monotone: bool,
    pub exhaustive: bool,
    pub equal: bool,
}

/// `dim F_e/F_{e−1}` against `Σ_{μ(H)=e} dim J_μ` for every `H`-eigenvalue in the window.
pub fn filtration_graded(v: &WeightModule, exponents: &[i64], depth: usize) -> Result<FiltrationReport> {
    let f = Filtration::new(v, exponents, depth)?;
    let mut rows = Vec::new();
    let mut monotone = true;
    for e in f.values() {
        let hi = f.dim(&e)?;
        let lo = f.dim(&(&e - Q::one()))?;
        monotone &= lo <= hi;
        rows.push(FiltrationRow { jacquet: f.jacquet_sums[&e], e, dim_f: hi, graded: hi - lo });
    }
    let exhaustive = rows.first().is_none_or(|r| r.dim_f == f.window_dim());
    let equal = rows.iter().all(|r| r.graded == r.jacquet);
    Ok(FiltrationReport {
        module: v.name.clone(),
        exponents: exponents.to_vec(),
        theta: f.theta.clone(),
        h: f.h.clone(),
        window_dim: f.window_dim(),
        rows,
        monotone,
        exhaustive,
        equal,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct VfiltRow {
    #[serde(serialize_with = "ser_q")]
    pub a: Q,
    pub k: i64,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationRow {
    #[serde(serialize_with = "ser_q")]
    pub a: Q,
    pub k: i64,
    pub l: i64,
    pub equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VfiltReport {
    pub module: String,
    pub exponents: Vec<i64>,
    pub window_dim: usize,
    pub rows: Vec<VfiltRow>,
    /// Every `F_{−a+k}` reaches the whole window by `k = k_max`.
    pub stable: bool,
    pub generation: Vec<GenerationRow>,
    /// Smallest `k` from which `F_{−a−k−l} = F_{−l}(U(n̄_Θ))F_{−a−k}` holds for all tested `a`, `l`.
    pub generation_from: Option<i64>,
}

/// Dimensions of the `tᵏ`-components `F_{−a+k}` of `V^a`, for `a = −e_top + s`, `0 ≤ s ≤ k_max`
/// and `|k| ≤ k_max`, and the two structural properties on the same range.
pub fn v_filtration_pieces(v: &WeightModule, exponents: &[i64], k_max: i64, l_max: i64) -> Result<VfiltReport> {
    let depth = (3 * k_max + l_max + 1) as usize;
    let f = Filtration::new(v, exponents, depth)?;
    let top = f.values().first().cloned().unwrap_or_else(Q::zero);
    let mut rows = Vec::new();
    let mut stable = true;
    let mut generation = Vec::new();
    let mut failing_k: Option<i64> = None;
    for s in 0..=k_max {
        let a = -(&top) + q(s);
        for k in -k_max..=k_max {
            let dim = f.dim(&(-(&a) + q(k)))?;
            if k == k_max {
                stable &= dim == f.window_dim();
            }
            rows.push(VfiltRow { a: a.clone(), k, dim });
        }
        for k in 0..=k_max {
            let e = -(&a) - q(k);
            for l in 1..=l_max {
                let lhs = f.space(&(&e - q(l)))?;
                let rhs = f.enveloping_step(&e, l)?;
                let equal = lhs == rhs;
                if !equal {
                    failing_k = Some(failing_k.map_or(k, |x: i64| x.max(k)));
                }
                generation.push(GenerationRow { a: a.clone(), k, l, equal });
            }
        }
    }
    let generation_from = match failing_k {
        None => Some(0),
        Some(k) if k < k_max => Some(k + 1),
        Some(_) => None,
    };
    Ok(VfiltReport {
        module: v.name.clone(),
        exponents: exponents.to_vec(),
        window_dim: f.window_dim(),
        rows,
        stable,
        generation,
        generation_from,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LieAlgebra;
    use crate::module::{generalized_verma, principal_series, verma};

    #[test]
    fn verma_pieces_are_one_dimensional() {
        let g = LieAlgebra::sl(2).unwrap();
        let m = verma(&g, &[q(3)], 8).unwrap();
        let r = filtration_graded(&m, &[1], 0).unwrap();
        assert!(r.equal && r.monotone && r.exhaustive);
        assert!(r.rows.iter().all(|x| x.graded == 1));
        assert_eq!(r.rows[0].e, crate::linalg::qr(3, 2));
    }

    #[test]
    fn singular_cocharacter_on_sl3() {
        let g = LieAlgebra::sl(3).unwrap();
        let v = generalized_verma(&g, &Theta::from_indices([1]), &[q(1), q(1)], 6).unwrap();
        let r = filtration_graded(&v, &[1, 0], 0).unwrap();
        assert!(r.equal && r.monotone && r.exhaustive, "{:?}", r.rows);
        // the Verma module is not in the required category
        let m = verma(&g, &[q(1), q(1)], 4).unwrap();
        assert!(filtration_graded(&m, &[1, 0], 0).is_err());
    }

    #[test]
    fn principal_series_pieces() {
        let ps = principal_series(&q(1), 0, 40).unwrap();
        let r = filtration_graded(&ps, &[1], 10).unwrap();
        assert!(r.equal && r.monotone && r.exhaustive, "{:?}", r.rows);
        let ps = principal_series(&q(2), 0, 40).unwrap();
        let r = filtration_graded(&ps, &[1], 10).unwrap();
        assert!(r.equal, "{:?}", r.rows);
    }

    #[test]
    fn vfilt_on_verma() {
        let g = LieAlgebra::sl(2).unwrap();
        let m = verma(&g, &[q(3)], 10).unwrap();
        let r = v_filtration_pieces(&m, &[1], 3, 1).unwrap();
        assert!(r.stable);
        assert_eq!(r.generation_from, Some(0));
    }
}
