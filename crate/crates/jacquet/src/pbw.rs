//! Enveloping algebras of positively graded nilpotent Lie algebras in a PBW
//! basis, and the search for the smallest `n` with
//! `cⁿ ⊂ c₁^{k₁}U(c) + c₂^{k₂}U(c)`.
//!
//! Everything is computed one root-lattice weight at a time. Each weight
//! component of `U(c)` is finite dimensional, so no degree truncation enters the
//! membership tests.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{SparseVector, Subspace, Q};
use crate::roots::Theta;

/// Ordered PBW monomial: non-decreasing list of basis indices.
pub type Monomial = Vec<usize>;
pub type Poly = BTreeMap<Monomial, Q>;

fn poly_add(p: &mut Poly, m: Monomial, c: Q) {
    if c.is_zero() {
        return;
    }
    match p.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// A Lie algebra with a basis of weight vectors whose weights lie in a positive cone.
#[derive(Clone, Debug)]
pub struct GradedLie {
    pub weights: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    bracket: Vec<Vec<SparseVector>>,
}

impl GradedLie {
    pub fn new(weights: Vec<Vec<i64>>, labels: Vec<String>, bracket: Vec<Vec<SparseVector>>) -> Result<Self> {
        let d = weights.len();
        if labels.len() != d || bracket.len() != d || bracket.iter().any(|r| r.len() != d) {
            return invalid("graded Lie algebra data has inconsistent sizes");
        }
        let rank = weights.first().map_or(0, |w| w.len());
        for w in &weights {
            if w.len() != rank || w.iter().any(|&x| x < 0) || w.iter().all(|&x| x == 0) {
                return invalid("basis weights must be nonzero and non-negative");
            }
        }
        let lie = GradedLie { weights, labels, bracket };
        for i in 0..d {
            for j in 0..d {
                let b = &lie.bracket[i][j];
                if b.dim() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: b.dim() });
                }
                let target = lie.add_weights(&lie.weights[i], &lie.weights[j]);
                if b.iter().any(|(k, _)| lie.weights[k] != target) {
                    return invalid(format!("bracket [{},{}] is not homogeneous", lie.labels[i], lie.labels[j]));
                }
                if lie.bracket[j][i] != b.scaled(&-Q::one()) {
                    return invalid("bracket is not antisymmetric");
                }
            }
        }
        Ok(lie)
    }

    pub fn abelian(dim: usize) -> Self {
        let weights = (0..dim)
            .map(|i| {
                let mut w = vec![0; dim];
                w[i] = 1;
                w
            })
            .collect();
        let labels = (0..dim).map(|i| format!("x{}", i + 1)).collect();
        let bracket = vec![vec![SparseVector::zero(dim); dim]; dim];
        GradedLie::new(weights, labels, bracket).expect("abelian data is valid")
    }

    /// The subalgebra of `g` spanned by the listed basis elements, graded by
    /// the negatives of their roots when those are negative.
    pub fn from_basis_elements(g: &LieAlgebra, elements: &[usize]) -> Result<Self> {
        let d = elements.len();
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let weights: Vec<Vec<i64>> = elements
            .iter()
            .map(|&e| {
                let w = g.weight(e);
                if w.iter().all(|&x| x <= 0) {
                    w.iter().map(|x| -x).collect()
                } else {
                    w
                }
            })
            .collect();
        let labels = elements.iter().map(|&e| g.basis_label(e)).collect();
        let mut bracket = vec![vec![SparseVector::zero(d); d]; d];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                let b = g.basis_bracket(x, y);
                let mut v = SparseVector::zero(d);
                for (k, c) in b.iter() {
                    let Some(&p) = pos.get(&k) else {
                        return invalid("listed basis elements are not closed under the bracket");
                    };
                    v.set(p, c.clone());
                }
                bracket[i][j] = v;
            }
        }
        GradedLie::new(weights, labels, bracket)
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    fn rank(&self) -> usize {
        self.weights.first().map_or(0, |w| w.len())
    }

    fn add_weights(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn bracket(&self, i: usize, j: usize) -> &SparseVector {
        &self.bracket[i][j]
    }

    pub fn is_ideal(&self, sub: &[usize]) -> bool {
        (0..self.dim()).all(|i| sub.iter().all(|&j| self.bracket[i][j].iter().all(|(k, _)| sub.contains(&k))))
    }

    pub fn monomial_weight(&self, m: &[usize]) -> Vec<i64> {
        let mut w = vec![0; self.rank()];
        for &i in m {
            for (a, b) in w.iter_mut().zip(&self.weights[i]) {
                *a += b;
            }
        }
        w
    }

    /// All ordered monomials of the given weight.
    pub fn monomials_of_weight(&self, weight: &[i64]) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.monomials_rec(0, weight.to_vec(), &mut cur, &mut out);
        out.sort();
        out
    }

    fn monomials_rec(&self, from: usize, rem: Vec<i64>, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if rem.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in from..self.dim() {
            let next: Vec<i64> = rem.iter().zip(&self.weights[i]).map(|(a, b)| a - b).collect();
            if next.iter().all(|&x| x >= 0) {
                cur.push(i);
                self.monomials_rec(i, next, cur, out);
                cur.pop();
            }
        }
    }
}

/// `U(c)` with memoized left multiplication by generators.
#[derive(Clone, Debug)]
pub struct PbwAlgebra {
    pub lie: GradedLie,
    memo: HashMap<(usize, Monomial), Poly>,
}

impl PbwAlgebra {
    pub fn new(lie: GradedLie) -> Self {
        PbwAlgebra { lie, memo: HashMap::new() }
    }

    /// `y_i · m` in the PBW basis.
    pub fn mul_gen(&mut self, i: usize, m: &[usize]) -> Poly {
        if m.first().is_none_or(|&j| i <= j) {
            let mut mono = Vec::with_capacity(m.len() + 1);
            mono.push(i);
            mono.extend_from_slice(m);
            return Poly::from([(mono, Q::one())]);
        }
        let key = (i, m.to_vec());
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        // y_i y_j m' = y_j (y_i m') + [y_i, y_j] m'
        let j = m[0];
        let rest = &m[1..];
        let mut out = Poly::new();
        let inner = self.mul_gen(i, rest);
        for (mono, c) in &inner {
            for (mm, cc) in self.mul_gen(j, mono) {
                poly_add(&mut out, mm, c * cc);
            }
        }
        let br = self.lie.bracket(i, j).clone();
        for (k, c) in br.iter() {
            for (mm, cc) in self.mul_gen(k, rest) {
                poly_add(&mut out, mm, c * cc);
            }
        }
        self.memo.insert(key, out.clone());
        out
    }

    pub fn mul_gen_poly(&mut self, i: usize, p: &Poly) -> Poly {
        let mut out = Poly::new();
        for (m, c) in p {
            for (mm, cc) in self.mul_gen(i, m) {
                poly_add(&mut out, mm, c * cc);
            }
        }
        out
    }

    /// Product of the letters of `word` (left to right) applied to `p` on the left.
    pub fn mul_word_poly(&mut self, word: &[usize], p: &Poly) -> Poly {
        let mut acc = p.clone();
        for &i in word.iter().rev() {
            acc = self.mul_gen_poly(i, &acc);
        }
        acc
    }

    pub fn word(&mut self, word: &[usize]) -> Poly {
        self.mul_word_poly(word, &Poly::from([(Vec::new(), Q::one())]))
    }

    pub fn mul(&mut self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (m, c) in a {
            for (mm, cc) in self.mul_word_poly(m, b) {
                poly_add(&mut out, mm, c * cc);
            }
        }
        out
    }
}

/// Coordinates of homogeneous polynomials in the monomial basis of one weight.
struct WeightSpace {
    index: BTreeMap<Monomial, usize>,
}

impl WeightSpace {
    fn new(monos: Vec<Monomial>) -> Self {
        WeightSpace { index: monos.into_iter().enumerate().map(|(k, m)| (m, k)).collect() }
    }

    fn dim(&self) -> usize {
        self.index.len()
    }

    fn coords(&self, p: &Poly) -> SparseVector {
        SparseVector::from_entries(
            self.dim(),
            p.iter().map(|(m, c)| (*self.index.get(m).expect("homogeneous polynomial"), c.clone())),
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub word: Vec<String>,
    pub weight: Vec<i64>,
    /// Whether the word is already an ordered PBW monomial.
    pub ordered_monomial: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct UlemmaResult {
    pub c: Vec<String>,
    pub c1: Vec<String>,
    pub c2: Vec<String>,
    pub k1: usize,
    pub k2: usize,
    pub degree_cap: usize,
    pub n: usize,
    /// A word of length `n − 1` outside the ideal sum, proving minimality.
    pub witness: Witness,
}

pub fn default_degree_cap(dim: usize, k1: usize, k2: usize) -> usize {
    k1 + k2 + dim * k1.max(k2)
}

struct Ideal<'a> {
    /// Words generating the right ideal, grouped by weight, reduced to a basis.
    gens: Vec<(Vec<i64>, Vec<Poly>)>,
    cache: HashMap<Vec<i64>, Subspace>,
    spaces: HashMap<Vec<i64>, WeightSpace>,
    lie: &'a GradedLie,
}

impl<'a> Ideal<'a> {
    fn space(&mut self, w: &[i64]) -> &WeightSpace {
        let lie = self.lie;
        self.spaces.entry(w.to_vec()).or_insert_with(|| WeightSpace::new(lie.monomials_of_weight(w)))
    }

    fn component(&mut self, alg: &mut PbwAlgebra, w: &[i64]) -> Subspace {
        if let Some(s) = self.cache.get(w) {
            return s.clone();
        }
        let dim = self.space(w).dim();
        let mut sub = Subspace::zero(dim);
        let gens = self.gens.clone();
        for (gw, polys) in &gens {
            let rest: Vec<i64> = w.iter().zip(gw).map(|(a, b)| a - b).collect();
            if rest.iter().any(|&x| x < 0) {
                continue;
            }
            for m in self.lie.monomials_of_weight(&rest) {
                let right = Poly::from([(m, Q::one())]);
                for p in polys {
                    let prod = alg.mul(p, &right);
                    let v = self.space(w).coords(&prod);
                    sub.insert(v);
                }
            }
        }
        self.cache.insert(w.to_vec(), sub.clone());
        sub
    }
}

/// Basis of the span of all words of length `k` in the letters `letters`, by weight.
fn word_power(alg: &mut PbwAlgebra, letters: &[usize], k: usize) -> Vec<(Vec<i64>, Vec<(Poly, Vec<usize>)>)> {
    let rank = alg.lie.weights.first().map_or(0, |w| w.len());
    let mut level: BTreeMap<Vec<i64>, Vec<(Poly, Vec<usize>)>> = BTreeMap::new();
    level.insert(vec![0; rank], vec![(Poly::from([(Vec::new(), Q::one())]), Vec::new())]);
    for _ in 0..k {
        level = extend_words(alg, letters, &level);
    }
    level.into_iter().collect()
}

/// `(Sₖ)_W = Σ_i y_i (S_{k−1})_{W − w_i}`, keeping one generating word per basis vector.
fn extend_words(
    alg: &mut PbwAlgebra,
    letters: &[usize],
    level: &BTreeMap<Vec<i64>, Vec<(Poly, Vec<usize>)>>,
) -> BTreeMap<Vec<i64>, Vec<(Poly, Vec<usize>)>> {
    let mut candidates: BTreeMap<Vec<i64>, Vec<(Poly, Vec<usize>)>> = BTreeMap::new();
    for (w, items) in level {
        for &i in letters {
            let nw: Vec<i64> = w.iter().zip(&alg.lie.weights[i]).map(|(a, b)| a + b).collect();
            for (p, word) in items {
                let np = alg.mul_gen_poly(i, p);
                let mut nword = vec![i];
                nword.extend_from_slice(word);
                candidates.entry(nw.clone()).or_default().push((np, nword));
            }
        }
    }
    let mut out = BTreeMap::new();
    for (w, items) in candidates {
        let space = WeightSpace::new(alg.lie.monomials_of_weight(&w));
        let mut sub = Subspace::zero(space.dim());
        let mut kept = Vec::new();
        for (p, word) in items {
            if sub.insert(space.coords(&p)) {
                kept.push((p, word));
            }
        }
        out.insert(w, kept);
    }
    out
}

/// Smallest `n` with `cⁿ ⊂ c₁^{k₁}U(c) + c₂^{k₂}U(c)`, where `c1` and `c2` are
/// complementary sets of basis indices and `c2` spans an ideal.
pub fn ulemma_minimal_n(
    lie: &GradedLie,
    c1: &[usize],
    c2: &[usize],
    k1: usize,
    k2: usize,
    degree_cap: usize,
) -> Result<UlemmaResult> {
    let d = lie.dim();
    let mut seen = vec![0u8; d];
    for &i in c1.iter().chain(c2) {
        if i >= d {
            return invalid(format!("basis index {i} out of range"));
        }
        seen[i] += 1;
    }
    if seen.iter().any(|&s| s != 1) {
        return Err(Error::Hypothesis("c must be the direct sum of c1 and c2".into()));
    }
    if !lie.is_ideal(c2) {
        return Err(Error::Hypothesis("c2 is not an ideal of c".into()));
    }
    if k1 == 0 || k2 == 0 {
        return invalid("k1 and k2 must be positive");
    }
    let mut alg = PbwAlgebra::new(lie.clone());
    let mut gens = Vec::new();
    for (letters, k) in [(c1, k1), (c2, k2)] {
        for (w, items) in word_power(&mut alg, letters, k) {
            gens.push((w, items.into_iter().map(|(p, _)| p).collect()));
        }
    }
    let mut ideal = Ideal { gens, cache: HashMap::new(), spaces: HashMap::new(), lie };
    let all: Vec<usize> = (0..d).collect();
    let rank = lie.weights.first().map_or(0, |w| w.len());
    let mut level: BTreeMap<Vec<i64>, Vec<(Poly, Vec<usize>)>> = BTreeMap::new();
    level.insert(vec![0; rank], vec![(Poly::from([(Vec::new(), Q::one())]), Vec::new())]);
    let mut last_outside: Option<(Vec<usize>, Vec<i64>)> = None;
    for n in 0..=degree_cap {
        if n > 0 {
            level = extend_words(&mut alg, &all, &level);
        }
        let mut outside = None;
        'search: for (w, items) in &level {
            let comp = ideal.component(&mut alg, w);
            for (p, word) in items {
                let v = ideal.space(w).coords(p);
                if !comp.contains(&v) {
                    outside = Some((word.clone(), w.clone()));
                    break 'search;
                }
            }
        }
        match outside {
            Some(o) => last_outside = Some(o),
            None => {
                let (word, weight) = last_outside.expect("the empty word is never in the ideal");
                let ordered = word.windows(2).all(|p| p[0] <= p[1]);
                let names = |s: &[usize]| s.iter().map(|&i| lie.labels[i].clone()).collect::<Vec<_>>();
                return Ok(UlemmaResult {
                    c: names(&all),
                    c1: names(c1),
                    c2: names(c2),
                    k1,
                    k2,
                    degree_cap,
                    n,
                    witness: Witness { word: names(&word), weight, ordered_monomial: ordered },
                });
            }
        }
    }
    Err(Error::NotFound { cap: degree_cap })
}

/// The split `c(Θ1,Θ3) = c(Θ2,Θ3) ⊕ c(Θ1,Θ2)` of `sl_n`, returned as a graded
/// Lie algebra with the index sets of both summands.
pub fn chain_split(g: &LieAlgebra, theta3: &Theta, theta2: &Theta, theta1: &Theta) -> Result<(GradedLie, Vec<usize>, Vec<usize>)> {
    let c = g.c_roots(theta1, theta3)?;
    let c1 = g.c_roots(theta2, theta3)?;
    let c2 = g.c_roots(theta1, theta2)?;
    let elements: Vec<usize> = c.iter().map(|&b| g.f(b)).collect();
    let lie = GradedLie::from_basis_elements(g, &elements)?;
    let idx = |roots: &[usize]| roots.iter().map(|r| c.iter().position(|x| x == r).expect("nested")).collect();
    Ok((lie, idx(&c1), idx(&c2)))
}

/// The Heisenberg split of `n̄ ⊂ sl3`: `c1 = span{f_α}`, `c2 = span{f_β, f_{α+β}}`.
pub fn heisenberg_split() -> Result<(GradedLie, Vec<usize>, Vec<usize>)> {
    let g = LieAlgebra::sl(3)?;
    chain_split(&g, &Theta::empty(), &Theta::from_indices([0]), &Theta::all(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_straightening() {
        let (lie, _, _) = heisenberg_split().unwrap();
        assert_eq!(lie.labels, vec!["f10", "f01", "f11"]);
        let mut alg = PbwAlgebra::new(lie);
        // y x = x y + [y, x]
        let p = alg.word(&[1, 0]);
        let br = alg.lie.bracket(1, 0).clone();
        let z = br.get(2);
        assert_eq!(p, Poly::from([(vec![0, 1], Q::one()), (vec![2], z)]));
    }

    #[test]
    fn associativity_on_small_words() {
        let (lie, _, _) = heisenberg_split().unwrap();
        let mut alg = PbwAlgebra::new(lie);
        let a = alg.word(&[2, 1]);
        let b = alg.word(&[1, 0]);
        let c = alg.word(&[0, 1]);
        let ab = alg.mul(&a, &b);
        let bc = alg.mul(&b, &c);
        assert_eq!(alg.mul(&ab, &c), alg.mul(&a, &bc));
    }

    #[test]
    fn abelian_split() {
        let lie = GradedLie::abelian(2);
        let r = ulemma_minimal_n(&lie, &[0], &[1], 1, 1, 10).unwrap();
        assert_eq!(r.n, 1);
        assert!(r.witness.word.is_empty());
    }

    #[test]
    fn heisenberg_k1() {
        let (lie, c1, c2) = heisenberg_split().unwrap();
        let r = ulemma_minimal_n(&lie, &c1, &c2, 1, 1, 10).unwrap();
        assert_eq!(r.n, 1);
    }

    #[test]
    fn hypotheses_checked() {
        let (lie, c1, c2) = heisenberg_split().unwrap();
        // span{f_α} is not an ideal
        assert!(matches!(ulemma_minimal_n(&lie, &c2, &c1, 1, 1, 10), Err(Error::Hypothesis(_))));
        assert!(matches!(ulemma_minimal_n(&lie, &c1, &[1], 1, 1, 10), Err(Error::Hypothesis(_))));
        assert!(matches!(ulemma_minimal_n(&lie, &c1, &c2, 2, 2, 1), Err(Error::NotFound { cap: 1 })));
    }

    #[test]
    fn monomials_by_weight() {
        let (lie, _, _) = heisenberg_split().unwrap();
        // weight α+β: x y and z
        assert_eq!(lie.monomials_of_weight(&[1, 1]), vec![vec![0, 1], vec![2]]);
        assert_eq!(lie.monomial_weight(&[0, 2]), vec![2, 1]);
    }
}
