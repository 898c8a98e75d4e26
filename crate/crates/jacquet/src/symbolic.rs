//! Laurent polynomials in named symbols and the chart map
//! `(x, (dᵢ), (tᵢ)) ↦ (x, (dᵢtᵢ), (tᵢ))` with its torus equivariance.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg::Q;

/// Exponents of a Laurent monomial, keyed by symbol name.
pub type Monomial = BTreeMap<String, i64>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Laurent {
    terms: BTreeMap<Monomial, Q>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut l = Laurent::zero();
        if !c.is_zero() {
            l.terms.insert(Monomial::new(), c);
        }
        l
    }

    pub fn symbol(name: &str) -> Self {
        Laurent::monomial(&[(name, 1)])
    }

    pub fn monomial(exps: &[(&str, i64)]) -> Self {
        let mut m = Monomial::new();
        for &(s, e) in exps {
            *m.entry(s.to_string()).or_insert(0) += e;
        }
        m.retain(|_, e| *e != 0);
        Laurent { terms: BTreeMap::from([(m, Q::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            let slot = out.terms.entry(m.clone()).or_insert_with(Q::zero);
            *slot += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                for (s, e) in mb {
                    *m.entry(s.clone()).or_insert(0) += e;
                }
                m.retain(|_, e| *e != 0);
                let slot = out.terms.entry(m).or_insert_with(Q::zero);
                *slot += ca * cb;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    /// Integer power; negative powers need a single term.
    pub fn pow(&self, e: i64) -> Result<Laurent> {
        if e >= 0 {
            let mut acc = Laurent::one();
            for _ in 0..e {
                acc = acc.mul(self);
            }
            return Ok(acc);
        }
        if self.terms.len() != 1 {
            return invalid("negative power of a non-monomial");
        }
        let (m, c) = self.terms.iter().next().expect("one term");
        let inv = Laurent {
            terms: BTreeMap::from([(m.iter().map(|(s, x)| (s.clone(), -x)).collect(), c.recip())]),
        };
        inv.pow(-e)
    }

    /// Ring homomorphism sending each symbol to the given value (unlisted symbols stay).
    pub fn substitute(&self, values: &BTreeMap<String, Laurent>) -> Result<Laurent> {
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let mut term = Laurent::constant(c.clone());
            for (s, &e) in m {
                let base = values.get(s).cloned().unwrap_or_else(|| Laurent::symbol(s));
                term = term.mul(&base.pow(e)?);
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts = self.terms.iter().map(|(m, c)| {
            let body = m
                .iter()
                .map(|(s, &e)| if e == 1 { s.clone() } else { format!("{s}^{e}") })
                .join("*");
            match (body.is_empty(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => body,
                (false, false) => format!("{c}*{body}"),
            }
        });
        write!(f, "{}", parts.into_iter().join(" + "))
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A polynomial map given by the images of the source symbols.
#[derive(Clone, Debug)]
pub struct SymbolicMap {
    pub source: Vec<String>,
    pub images: Vec<Laurent>,
    /// Whether the first coordinate is moved by the group, `x ↦ gx` (constants fixed).
    pub acts_on_x: bool,
}

impl SymbolicMap {
    pub fn apply(&self, point: &[Laurent]) -> Result<Vec<Laurent>> {
        if point.len() != self.source.len() {
            return invalid("point has the wrong number of coordinates");
        }
        let values: BTreeMap<String, Laurent> = self.source.iter().cloned().zip(point.iter().cloned()).collect();
        let mut out: Vec<Laurent> = self.images.iter().map(|im| im.substitute(&values)).collect::<Result<_>>()?;
        if self.acts_on_x {
            let rename = BTreeMap::from([("x".to_string(), Laurent::symbol("gx"))]);
            out[0] = out[0].substitute(&rename)?;
        }
        Ok(out)
    }
}

/// Coordinates `x, d1..dl, t1..tl` of the chart.
pub fn chart_symbols(l: usize) -> Vec<String> {
    std::iter::once("x".to_string())
        .chain((1..=l).map(|i| format!("d{i}")))
        .chain((1..=l).map(|i| format!("t{i}")))
        .collect()
}

pub fn chart_map(l: usize) -> SymbolicMap {
    let source = chart_symbols(l);
    let mut images = vec![Laurent::symbol("x")];
    for i in 1..=l {
        images.push(Laurent::monomial(&[(&format!("d{i}"), 1), (&format!("t{i}"), 1)]));
    }
    for i in 1..=l {
        images.push(Laurent::symbol(&format!("t{i}")));
    }
    SymbolicMap { source, images, acts_on_x: false }
}

/// `(x, (cᵢ), (tᵢ)) ↦ (g·x, (χᵢ cᵢ), (tᵢ))`, where `g·x` is the opaque symbol `gx`
/// (constants are fixed) and the characters are Laurent monomials in the torus symbols.
pub fn torus_action(l: usize, characters: &[Laurent]) -> Result<SymbolicMap> {
    if characters.len() != l {
        return invalid(format!("need {l} characters, got {}", characters.len()));
    }
    let source = chart_symbols(l);
    let mut images = vec![Laurent::symbol("x")];
    for (i, chi) in characters.iter().enumerate() {
        images.push(chi.mul(&Laurent::symbol(&format!("d{}", i + 1))));
    }
    for i in 1..=l {
        images.push(Laurent::symbol(&format!("t{i}")));
    }
    Ok(SymbolicMap { source, images, acts_on_x: true })
}

fn generic_point(l: usize) -> Vec<Laurent> {
    chart_symbols(l).iter().map(|s| Laurent::symbol(s)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceRow {
    pub characters: Vec<String>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
    pub equal: bool,
}

/// `π(g·p) = g·π(p)` as an identity of Laurent polynomials at the generic point.
pub fn chart_equivariance(l: usize, characters: &[Laurent]) -> Result<EquivarianceRow> {
    let pi = chart_map(l);
    let g = torus_action(l, characters)?;
    let p = generic_point(l);
    let lhs = pi.apply(&g.apply(&p)?)?;
    let rhs = g.apply(&pi.apply(&p)?)?;
    Ok(EquivarianceRow {
        characters: characters.iter().map(|c| c.to_string()).collect(),
        lhs: lhs.iter().map(|c| c.to_string()).collect(),
        rhs: rhs.iter().map(|c| c.to_string()).collect(),
        equal: lhs == rhs,
    })
}

/// Characters `g^{aᵢ}` of a one-dimensional torus.
pub fn power_characters(exponents: &[i64]) -> Vec<Laurent> {
    exponents.iter().map(|&a| Laurent::monomial(&[("g", a)])).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct AActionReport {
    pub rank: usize,
    pub equivariance: EquivarianceRow,
    /// `a·(n̄, d, t)` with one coordinate per simple root.
    pub action_on_generic: Vec<String>,
    pub expected_generic: Vec<String>,
    /// `ω(a)·x_Θ` at `x_Θ = (1, 1, t_Θ)`.
    pub action_on_base_points: Vec<(String, Vec<String>)>,
    pub matches: bool,
}

/// The torus `A` acting on the chart through `χ_α = a_α^{−2}`; checks the
/// action formula `(Ad n̄, (a_α^{−2} d_α), t)` and the base points `(1, a^{−2}, t_Θ)`.
pub fn a_action_check(rank: usize) -> Result<AActionReport> {
    let chars: Vec<Laurent> = (1..=rank).map(|i| Laurent::monomial(&[(&format!("a{i}"), -2)])).collect();
    let eq = chart_equivariance(rank, &chars)?;
    let act = torus_action(rank, &chars)?;
    let generic = act.apply(&generic_point(rank))?;
    let mut expected = vec![Laurent::symbol("gx")];
    for i in 1..=rank {
        expected.push(Laurent::monomial(&[(&format!("a{i}"), -2), (&format!("d{i}"), 1)]));
    }
    for i in 1..=rank {
        expected.push(Laurent::symbol(&format!("t{i}")));
    }
    let mut matches = generic == expected && eq.equal;
    let mut base = Vec::new();
    for mask in 0..1u32 << rank {
        let label: String = (0..rank).filter(|i| mask >> i & 1 == 1).map(|i| crate::roots::SIMPLE_NAMES[i]).join(",");
        let mut point = vec![Laurent::one()];
        point.extend((0..rank).map(|_| Laurent::one()));
        point.extend((0..rank).map(|i| Laurent::constant(if mask >> i & 1 == 1 { Q::one() } else { Q::zero() })));
        let image = act.apply(&point)?;
        let mut want = vec![Laurent::one()];
        want.extend(chars.iter().cloned());
        want.extend(point[1 + rank..].iter().cloned());
        matches &= image == want;
        base.push((if label.is_empty() { "none".into() } else { label }, image.iter().map(|c| c.to_string()).collect()));
    }
    Ok(AActionReport {
        rank,
        equivariance: eq,
        action_on_generic: generic.iter().map(|c| c.to_string()).collect(),
        expected_generic: expected.iter().map(|c| c.to_string()).collect(),
        action_on_base_points: base,
        matches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceSweep {
    pub max_l: usize,
    pub max_abs: i64,
    pub cases: usize,
    pub all_equal: bool,
    pub counterexample: Option<Vec<i64>>,
}

/// Every exponent tuple with `|aᵢ| ≤ max_abs` for `l = 1..=max_l`.
pub fn equivariance_sweep(max_l: usize, max_abs: i64) -> Result<EquivarianceSweep> {
    let mut cases = 0;
    for l in 1..=max_l {
        for exps in (0..l).map(|_| -max_abs..=max_abs).multi_cartesian_product() {
            cases += 1;
            if !chart_equivariance(l, &power_characters(&exps))?.equal {
                return Ok(EquivarianceSweep { max_l, max_abs, cases, all_equal: false, counterexample: Some(exps) });
            }
        }
    }
    Ok(EquivarianceSweep { max_l, max_abs, cases, all_equal: true, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_character() {
        let r = chart_equivariance(1, &power_characters(&[2])).unwrap();
        assert!(r.equal);
        assert_eq!(r.lhs, vec!["gx", "d1*g^2*t1", "t1"]);
    }

    #[test]
    fn two_characters() {
        assert!(chart_equivariance(2, &power_characters(&[-3, 1])).unwrap().equal);
    }

    #[test]
    fn a_action() {
        let r = a_action_check(2).unwrap();
        assert!(r.matches);
        assert_eq!(r.action_on_generic[1], "a1^-2*d1");
        // x_∅ = (1, 1, 0)
        assert_eq!(r.action_on_base_points[0].1, vec!["1", "a1^-2", "a2^-2", "0", "0"]);
    }

    #[test]
    fn laurent_arithmetic() {
        let g = Laurent::symbol("g");
        let inv = g.pow(-2).unwrap();
        assert_eq!(inv.mul(&g.pow(2).unwrap()), Laurent::one());
        assert!(g.add(&Laurent::one()).pow(-1).is_err());
        assert!(Laurent::zero().is_zero());
    }
}
