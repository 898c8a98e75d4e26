//! Brute-force check of the nilpotent-lemma exponents on the Heisenberg algebra
//! `x = f_α, y = f_β, z = f_{α+β}` with `[y, x] = z` central, using the closed
//! product formula `y^b x^d = Σ_j j! C(b,j) C(d,j) x^{d−j} y^{b−j} z^j`.

use std::collections::BTreeMap;

use jacquet::pbw::{default_degree_cap, heisenberg_split, ulemma_minimal_n};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

type Mono = (u32, u32, u32);
type Elt = BTreeMap<Mono, BigRational>;

/// Frozen output of `oracle_n` for `k1, k2 ∈ {1,2,3}` (row k1, column k2).
const FROZEN_N: [[usize; 3]; 3] = [[1, 3, 5], [2, 4, 6], [3, 5, 7]];

fn binom(n: u32, k: u32) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

fn fact(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

fn mono_mul(a: Mono, b: Mono) -> Elt {
    let mut out = Elt::new();
    let (a1, b1, c1) = a;
    let (d, e, f) = b;
    for j in 0..=b1.min(d) {
        let c = fact(j) * binom(b1, j) * binom(d, j);
        let key = (a1 + d - j, b1 - j + e, c1 + f + j);
        *out.entry(key).or_insert_with(BigRational::zero) += BigRational::from_integer(c);
    }
    out
}

fn mul(a: &Elt, b: &Elt) -> Elt {
    let mut out = Elt::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            for (m, c) in mono_mul(*ma, *mb) {
                *out.entry(m).or_insert_with(BigRational::zero) += c * ca * cb;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn letter(i: usize) -> Elt {
    let m = match i {
        0 => (1, 0, 0),
        1 => (0, 1, 0),
        _ => (0, 0, 1),
    };
    Elt::from([(m, BigRational::one())])
}

fn weight(m: Mono) -> (u32, u32) {
    (m.0 + m.2, m.1 + m.2)
}

fn monos_of_weight(w: (u32, u32)) -> Vec<Mono> {
    let mut out = Vec::new();
    for c in 0..=w.0.min(w.1) {
        out.push((w.0 - c, w.1 - c, c));
    }
    out
}

fn rank(rows: &[Elt]) -> usize {
    let mut basis: Vec<Elt> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for b in &basis {
            let (lead, lc) = b.iter().next().map(|(m, c)| (*m, c.clone())).unwrap();
            if let Some(c) = v.get(&lead).cloned() {
                for (m, bc) in b {
                    *v.entry(*m).or_insert_with(BigRational::zero) -= &c / &lc * bc;
                }
                v.retain(|_, c| !c.is_zero());
            }
        }
        if !v.is_empty() {
            basis.push(v);
            // keep leading terms distinct by sorting on the first key
            basis.sort_by(|a, b| a.keys().next().cmp(&b.keys().next()));
        }
    }
    basis.len()
}

fn ideal_component(k1: u32, k2: u32, w: (u32, u32)) -> Vec<Elt> {
    let mut gens: Vec<(Mono, Elt)> = vec![((k1, 0, 0), Elt::from([((k1, 0, 0), BigRational::one())]))];
    for p in 0..=k2 {
        let m = (0, p, k2 - p);
        gens.push((m, Elt::from([(m, BigRational::one())])));
    }
    let mut out = Vec::new();
    for (gm, g) in gens {
        let gw = weight(gm);
        if gw.0 > w.0 || gw.1 > w.1 {
            continue;
        }
        for m in monos_of_weight((w.0 - gw.0, w.1 - gw.1)) {
            out.push(mul(&g, &Elt::from([(m, BigRational::one())])));
        }
    }
    out
}

fn word_elt(word: &[usize]) -> Elt {
    word.iter().fold(Elt::from([((0, 0, 0), BigRational::one())]), |acc, &i| mul(&acc, &letter(i)))
}

fn word_weight(word: &[usize]) -> (u32, u32) {
    word.iter().fold((0, 0), |(a, b), &i| match i {
        0 => (a + 1, b),
        1 => (a, b + 1),
        _ => (a + 1, b + 1),
    })
}

fn in_ideal(k1: u32, k2: u32, word: &[usize]) -> bool {
    let w = word_weight(word);
    let gens = ideal_component(k1, k2, w);
    let mut with = gens.clone();
    with.push(word_elt(word));
    rank(&gens) == rank(&with)
}

fn oracle_n(k1: u32, k2: u32) -> usize {
    for n in 0.. {
        let mut all_in = true;
        let total = 3usize.pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let word: Vec<usize> = (0..n)
                .map(|_| {
                    let l = c % 3;
                    c /= 3;
                    l
                })
                .collect();
            if !in_ideal(k1, k2, &word) {
                all_in = false;
                break;
            }
        }
        if all_in {
            return n;
        }
    }
    unreachable!()
}

#[test]
fn product_formula_matches_commutator() {
    // yx − xy = z
    let yx = mul(&letter(1), &letter(0));
    let xy = mul(&letter(0), &letter(1));
    let mut diff = yx.clone();
    for (m, c) in xy {
        *diff.entry(m).or_insert_with(BigRational::zero) -= c;
    }
    diff.retain(|_, c| !c.is_zero());
    assert_eq!(diff, letter(2));
}

#[test]
fn oracle_agrees_with_frozen_table() {
    for k1 in 1..=3u32 {
        for k2 in 1..=3u32 {
            assert_eq!(oracle_n(k1, k2), FROZEN_N[k1 as usize - 1][k2 as usize - 1], "k1={k1} k2={k2}");
        }
    }
}

#[test]
fn implementation_agrees_with_frozen_table_and_witness_is_outside() {
    let (lie, c1, c2) = heisenberg_split().unwrap();
    // the implementation's bracket has [f_α, f_β] = −f_{α+β}, i.e. [y, x] = z
    assert_eq!(lie.bracket(1, 0).get(2), BigRational::one());
    for k1 in 1..=3usize {
        for k2 in 1..=3usize {
            let cap = default_degree_cap(lie.dim(), k1, k2);
            let r = ulemma_minimal_n(&lie, &c1, &c2, k1, k2, cap).unwrap();
            assert_eq!(r.n, FROZEN_N[k1 - 1][k2 - 1]);
            assert_eq!(r.witness.word.len(), r.n - 1);
            let word: Vec<usize> =
                r.witness.word.iter().map(|l| lie.labels.iter().position(|x| x == l).unwrap()).collect();
            assert!(!in_ideal(k1 as u32, k2 as u32, &word), "witness {:?} lies in the ideal", r.witness.word);
        }
    }
}
