//! Multigraded Rees pieces of monomial ideal families, fibers over the origin,
//! and the comparison with the associated graded of `J = ΣIᵢ`.
//!
//! Everything is monomial: a graded piece has the monomials it contains as a
//! basis, so dimensions are counts. Infinite objects are cut off by a total
//! polynomial degree window.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{invalid, Error, Result};

pub const VAR_NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

pub type Exponent = Vec<u32>;

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// All exponent vectors in `n` variables of total degree at most `d`, in graded lex order.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exponent> {
    let mut out = Vec::new();
    for total in 0..=d {
        let mut cur = vec![0u32; n];
        fill(&mut cur, 0, total, &mut out);
    }
    out
}

fn fill(cur: &mut Exponent, i: usize, rem: u32, out: &mut Vec<Exponent>) {
    if i + 1 == cur.len() {
        cur[i] = rem;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    if cur.is_empty() {
        if rem == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for e in (0..=rem).rev() {
        cur[i] = e;
        fill(cur, i + 1, rem - e, out);
    }
    cur[i] = 0;
}

pub fn format_monomial(m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { VAR_NAMES[i].to_string() } else { format!("{}^{e}", VAR_NAMES[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Parses `x^2*y`, `x2y`, `xy` or `1`.
pub fn parse_monomial(s: &str, nvars: usize) -> Result<Exponent> {
    let mut m = vec![0u32; nvars];
    let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*' && *c != '^').collect();
    if t == "1" {
        return Ok(m);
    }
    if t.is_empty() {
        return invalid("empty monomial");
    }
    let chars: Vec<char> = t.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k].to_string();
        let Some(v) = VAR_NAMES.iter().position(|n| *n == c) else {
            return invalid(format!("unknown variable {c:?} in {s:?}"));
        };
        if v >= nvars {
            return invalid(format!("variable {c} outside the {nvars} ambient variables"));
        }
        k += 1;
        let start = k;
        while k < chars.len() && chars[k].is_ascii_digit() {
            k += 1;
        }
        let e: u32 = if start == k { 1 } else { chars[start..k].iter().collect::<String>().parse().unwrap_or(0) };
        m[v] += e;
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Exponent>,
}

impl MonomialIdeal {
    /// Minimal generators are kept; the zero and the unit ideal are allowed here.
    fn raw(nvars: usize, gens: Vec<Exponent>) -> Self {
        let mut g: Vec<Exponent> = gens.into_iter().sorted().dedup().collect();
        let keep: Vec<Exponent> = g
            .iter()
            .filter(|a| !g.iter().any(|b| b != *a && divides(b, a)))
            .cloned()
            .collect();
        g = keep;
        g.sort_by(|a, b| degree(a).cmp(&degree(b)).then_with(|| b.cmp(a)));
        MonomialIdeal { nvars, gens: g }
    }

    /// A proper nonzero monomial ideal.
    pub fn new(nvars: usize, gens: Vec<Exponent>) -> Result<Self> {
        if gens.is_empty() {
            return invalid("zero ideal not allowed");
        }
        for g in &gens {
            if g.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: g.len() });
            }
            if degree(g) == 0 {
                return invalid("unit ideal not allowed (ideals must be proper)");
            }
        }
        Ok(Self::raw(nvars, gens))
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![vec![0; nvars]] }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Exponent] {
        &self.gens
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    pub fn mul(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .cartesian_product(&other.gens)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Self::raw(self.nvars, gens)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        Self::raw(self.nvars, self.gens.iter().chain(&other.gens).cloned().collect())
    }

    /// `I^k`, with `I^k = A` for `k ≤ 0`.
    pub fn pow(&self, k: i64) -> MonomialIdeal {
        let mut acc = Self::unit(self.nvars);
        for _ in 0..k.max(0) {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_subset(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Largest pure-power exponent needed if every variable has a pure power in the ideal.
    pub fn primary_bound(&self) -> Option<u32> {
        let mut best = 0;
        for v in 0..self.nvars {
            let p = self
                .gens
                .iter()
                .filter(|g| g.iter().enumerate().all(|(i, &e)| i == v || e == 0))
                .map(|g| g[v])
                .min()?;
            best = best.max(p);
        }
        Some(best)
    }

    /// Number of monomials of degree `≤ window` in the ideal.
    pub fn count_in_window(&self, window: u32) -> usize {
        monomials_up_to(self.nvars, window).iter().filter(|m| self.contains(m)).count()
    }

    pub fn render(&self) -> String {
        format!("({})", self.gens.iter().map(|g| format_monomial(g)).join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdealFamily {
    nvars: usize,
    ideals: Vec<MonomialIdeal>,
}

impl MonomialIdealFamily {
    pub fn new(nvars: usize, ideals: Vec<MonomialIdeal>) -> Result<Self> {
        if ideals.is_empty() {
            return invalid("family needs at least one ideal");
        }
        if ideals.len() > nvars {
            return invalid(format!("{} ideals exceed {nvars} ambient variables", ideals.len()));
        }
        if ideals.iter().any(|i| i.nvars != nvars) {
            return invalid("ideals live in different rings");
        }
        Ok(MonomialIdealFamily { nvars, ideals })
    }

    /// `"x;y"` or `"x^2,y;z"`: ideals separated by `;`, generators by `,`.
    /// The ring has `nvars` variables, by default enough for every variable used and every ideal.
    pub fn parse(s: &str, nvars: Option<usize>) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').map(|p| p.trim().trim_start_matches('(').trim_end_matches(')')).collect();
        let used = s
            .chars()
            .filter_map(|c| VAR_NAMES.iter().position(|n| n.starts_with(c)))
            .max()
            .map_or(0, |v| v + 1);
        let n = nvars.unwrap_or(used.max(parts.len()));
        if n == 0 || n > VAR_NAMES.len() {
            return invalid(format!("variable count {n} out of range 1..={}", VAR_NAMES.len()));
        }
        let ideals = parts
            .iter()
            .map(|p| {
                let gens = p.split(',').map(|g| parse_monomial(g, n)).collect::<Result<Vec<_>>>()?;
                MonomialIdeal::new(n, gens)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, ideals)
    }

    /// The ideals `(x_1), …, (x_l)` in `n` variables.
    pub fn coordinate(nvars: usize, l: usize) -> Result<Self> {
        let ideals = (0..l)
            .map(|i| {
                let mut e = vec![0; nvars];
                e[i] = 1;
                MonomialIdeal::new(nvars, vec![e])
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(nvars, ideals)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn render(&self) -> String {
        self.ideals.iter().map(|i| i.render()).join(";")
    }

    /// Each ideal is generated by a single variable and the variables are distinct.
    pub fn is_coordinate_divisor_family(&self) -> bool {
        let mut vars = Vec::new();
        for i in &self.ideals {
            if i.gens.len() != 1 || degree(&i.gens[0]) != 1 {
                return false;
            }
            vars.push(i.gens[0].iter().position(|&e| e == 1).expect("degree one"));
        }
        vars.iter().all_unique()
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        MonomialIdealFamily { nvars: self.nvars, ideals: perm.iter().map(|&p| self.ideals[p].clone()).collect() }
    }

    /// `I^{n̲} = Π I_i^{n_i}` with negative exponents giving the whole ring.
    pub fn rees_ideal(&self, multidegree: &[i64]) -> Result<MonomialIdeal> {
        if multidegree.len() != self.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: multidegree.len() });
        }
        Ok(self
            .ideals
            .iter()
            .zip(multidegree)
            .fold(MonomialIdeal::unit(self.nvars), |acc, (i, &k)| acc.mul(&i.pow(k))))
    }

    pub fn graded_piece_dim(&self, multidegree: &[i64], window: u32) -> Result<usize> {
        Ok(self.rees_ideal(multidegree)?.count_in_window(window))
    }

    /// `J = Σ_{i ∈ S} I_i` over a set of ideal indices.
    pub fn sum_of(&self, indices: &[usize]) -> MonomialIdeal {
        indices.iter().fold(MonomialIdeal::zero(self.nvars), |acc, &i| acc.sum(&self.ideals[i]))
    }

    /// `dim I^{n̲}/J I^{n̲}` in the window, over the ideals outside `theta`
    /// (`multidegree` is indexed by the complement of `theta`, in order).
    pub fn fiber_piece_dim(&self, theta: &[usize], multidegree: &[u32], window: u32) -> Result<usize> {
        if let Some(&bad) = theta.iter().find(|&&i| i >= self.len()) {
            return invalid(format!("ideal index {bad} out of range"));
        }
        let rest: Vec<usize> = (0..self.len()).filter(|i| !theta.contains(i)).collect();
        if multidegree.len() != rest.len() {
            return Err(Error::DimensionMismatch { expected: rest.len(), found: multidegree.len() });
        }
        let piece = rest
            .iter()
            .zip(multidegree)
            .fold(MonomialIdeal::unit(self.nvars), |acc, (&i, &k)| acc.mul(&self.ideals[i].pow(k as i64)));
        let j = self.sum_of(&rest);
        let smaller = j.mul(&piece);
        Ok(monomials_up_to(self.nvars, window).iter().filter(|m| piece.contains(m) && !smaller.contains(m)).count())
    }

    /// Table of Rees piece dimensions over the box `[lo, hi]^l`.
    pub fn hilbert_table(&self, lo: i64, hi: i64, window: u32) -> Result<HilbertTable> {
        let mut rows = Vec::new();
        for md in (0..self.len()).map(|_| lo..=hi).multi_cartesian_product() {
            let dim = self.graded_piece_dim(&md, window)?;
            rows.push(HilbertRow { multidegree: md, dim });
        }
        Ok(HilbertTable { window, rows })
    }

    /// Table of fiber dimensions over the box `[0, hi]^l`.
    pub fn fiber_table(&self, hi: u32, window: u32) -> Result<HilbertTable> {
        let mut rows = Vec::new();
        for md in (0..self.len()).map(|_| 0..=hi).multi_cartesian_product() {
            let dim = self.fiber_piece_dim(&[], &md, window)?;
            rows.push(HilbertRow { multidegree: md.iter().map(|&x| x as i64).collect(), dim });
        }
        Ok(HilbertTable { window, rows })
    }
}

/// `dim J^k/J^{k+1}`. Without a window `J` must contain a pure power of every variable.
pub fn normal_cone_hilbert(j: &MonomialIdeal, k: u32, window: Option<u32>) -> Result<usize> {
    let bound = match window {
        Some(w) => w,
        None => {
            let Some(p) = j.primary_bound() else {
                return invalid("J is not primary to the maximal ideal; give a degree window");
            };
            // a monomial of degree ≥ n(k+1)p has an exponent ≥ (k+1)p, so lies in J^{k+1}
            (j.nvars() as u32) * (k + 1) * p
        }
    };
    let jk = j.pow(k as i64);
    let jk1 = j.pow(k as i64 + 1);
    Ok(monomials_up_to(j.nvars(), bound).iter().filter(|m| jk.contains(m) && !jk1.contains(m)).count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertRow {
    pub multidegree: Vec<i64>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub window: u32,
    pub rows: Vec<HilbertRow>,
}

impl HilbertTable {
    pub fn get(&self, md: &[i64]) -> Option<usize> {
        self.rows.iter().find(|r| r.multidegree == md).map(|r| r.dim)
    }

    pub fn to_csv(&self) -> String {
        let l = self.rows.first().map_or(0, |r| r.multidegree.len());
        let mut out = (1..=l).map(|i| format!("n{i}")).chain(["dim".to_string()]).join(",");
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.multidegree.iter().map(|x| x.to_string()).chain([r.dim.to_string()]).join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    pub k: u32,
    pub fiber_sum: usize,
    pub cone: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub family: String,
    pub nvars: usize,
    pub degree: u32,
    pub window: u32,
    pub coordinate_family: bool,
    pub warning: Option<String>,
    pub rows: Vec<CompareRow>,
    pub equal: bool,
}

impl CompareReport {
    pub fn first_mismatch(&self) -> Option<&CompareRow> {
        self.rows.iter().find(|r| r.fiber_sum != r.cone)
    }
}

/// For each `k ≤ degree`, compares `Σ_{|n̲|=k} dim I^{n̲}/J I^{n̲}` with `dim J^k/J^{k+1}`,
/// both counted among monomials of total degree `≤ window`.
pub fn compare_fiber_to_cone(fam: &MonomialIdealFamily, degree: u32, window: u32) -> Result<CompareReport> {
    let all: Vec<usize> = (0..fam.len()).collect();
    let j = fam.sum_of(&all);
    let mut rows = Vec::new();
    for k in 0..=degree {
        let mut fiber_sum = 0;
        for md in (0..fam.len()).map(|_| 0..=k).multi_cartesian_product() {
            if md.iter().sum::<u32>() == k {
                fiber_sum += fam.fiber_piece_dim(&[], &md, window)?;
            }
        }
        let cone = normal_cone_hilbert(&j, k, Some(window))?;
        rows.push(CompareRow { k, fiber_sum, cone });
    }
    let coordinate_family = fam.is_coordinate_divisor_family();
    let warning = (!coordinate_family).then(|| {
        "family is not made of distinct coordinate ideals; agreement of dimensions is necessary but not sufficient".to_string()
    });
    let equal = rows.iter().all(|r| r.fiber_sum == r.cone);
    Ok(CompareReport { family: fam.render(), nvars: fam.nvars(), degree, window, coordinate_family, warning, rows, equal })
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelingReport {
    pub family: String,
    pub permutations: usize,
    pub entries_checked: usize,
    pub invariant: bool,
    /// First failing `(permutation, multidegree)` if any.
    pub counterexample: Option<(Vec<usize>, Vec<i64>)>,
}

/// Rees and fiber tables of every relabeling agree with the original after permuting multidegrees.
pub fn labeling_independence_check(fam: &MonomialIdealFamily, degree: u32) -> Result<LabelingReport> {
    let l = fam.len();
    if l < 2 {
        return invalid("labeling independence needs at least two ideals");
    }
    let window = degree;
    let base = fam.hilbert_table(-1, degree as i64, window)?;
    let base_fiber = fam.fiber_table(degree, window)?;
    let mut checked = 0;
    let mut perms = 0;
    for perm in (0..l).permutations(l) {
        perms += 1;
        let other = fam.permuted(&perm);
        let t = other.hilbert_table(-1, degree as i64, window)?;
        let tf = other.fiber_table(degree, window)?;
        for (table, reference) in [(&t, &base), (&tf, &base_fiber)] {
            for row in &table.rows {
                // entry n̲ of the relabeled family sits at position n'_{perm[i]} = n_i of the original
                let mut orig = vec![0i64; l];
                for (i, &p) in perm.iter().enumerate() {
                    orig[p] = row.multidegree[i];
                }
                checked += 1;
                if reference.get(&orig) != Some(row.dim) {
                    return Ok(LabelingReport {
                        family: fam.render(),
                        permutations: perms,
                        entries_checked: checked,
                        invariant: false,
                        counterexample: Some((perm.clone(), row.multidegree.clone())),
                    });
                }
            }
        }
    }
    Ok(LabelingReport { family: fam.render(), permutations: perms, entries_checked: checked, invariant: true, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(s: &str, n: usize) -> MonomialIdealFamily {
        MonomialIdealFamily::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn graded_piece_examples() {
        let f = fam("x", 2);
        assert_eq!(f.graded_piece_dim(&[2], 3).unwrap(), 3);
        assert_eq!(f.graded_piece_dim(&[-1], 1).unwrap(), 3);
        assert_eq!(f.graded_piece_dim(&[0], 1).unwrap(), 3);
    }

    #[test]
    fn fiber_examples() {
        let f = fam("x;y", 2);
        assert_eq!(f.fiber_piece_dim(&[], &[1, 1], 10).unwrap(), 1);
        assert_eq!(f.fiber_piece_dim(&[], &[0, 0], 10).unwrap(), 1);
        let f = fam("x^2;y", 2);
        // x^2*y and x^3*y: x*(x^2*y) is not in (x^2,y)*(x^2*y) = (x^4*y, x^2*y^2)
        assert_eq!(f.fiber_piece_dim(&[], &[1, 1], 10).unwrap(), 2);
        // all directions generic: the whole ring in the window
        assert_eq!(f.fiber_piece_dim(&[0, 1], &[], 2).unwrap(), 6);
    }

    #[test]
    fn normal_cone_examples() {
        let j = fam("x,y", 2).ideals()[0].clone();
        assert_eq!(normal_cone_hilbert(&j, 0, None).unwrap(), 1);
        assert_eq!(normal_cone_hilbert(&j, 1, None).unwrap(), 2);
        assert_eq!(normal_cone_hilbert(&j, 3, None).unwrap(), 4);
        let jx = fam("x", 2).ideals()[0].clone();
        assert_eq!(normal_cone_hilbert(&jx, 2, Some(4)).unwrap(), 3);
        assert!(normal_cone_hilbert(&jx, 2, None).is_err());
        let jxyz = fam("x,y,z", 3).ideals()[0].clone();
        assert_eq!(normal_cone_hilbert(&jxyz, 2, None).unwrap(), 6);
    }

    #[test]
    fn compare_examples() {
        let r = compare_fiber_to_cone(&fam("x;y", 2), 5, 5).unwrap();
        assert!(r.equal && r.warning.is_none());
        assert_eq!(r.rows[3], CompareRow { k: 3, fiber_sum: 4, cone: 4 });
        assert!(compare_fiber_to_cone(&fam("x", 2), 4, 4).unwrap().equal);
        let bad = compare_fiber_to_cone(&fam("x;x", 2), 3, 3).unwrap();
        assert!(!bad.equal);
        assert!(bad.warning.is_some());
    }

    #[test]
    fn ideal_validation() {
        assert!(MonomialIdeal::new(2, vec![]).is_err());
        assert!(MonomialIdeal::new(2, vec![vec![0, 0]]).is_err());
        let i = MonomialIdeal::new(2, vec![vec![1, 0], vec![2, 1]]).unwrap();
        assert_eq!(i.generators(), &[vec![1, 0]]);
        assert!(MonomialIdealFamily::parse("x;y;z", Some(2)).is_err());
        assert_eq!(parse_monomial("x^2*y", 2).unwrap(), vec![2, 1]);
        assert_eq!(parse_monomial("x2y", 2).unwrap(), vec![2, 1]);
    }

    #[test]
    fn labeling_examples() {
        assert!(labeling_independence_check(&fam("x;y", 2), 4).unwrap().invariant);
        assert!(labeling_independence_check(&fam("x^2;y", 2), 4).unwrap().invariant);
        let r = labeling_independence_check(&fam("x;y;z", 3), 3).unwrap();
        assert!(r.invariant);
        assert_eq!(r.permutations, 6);
    }
}
