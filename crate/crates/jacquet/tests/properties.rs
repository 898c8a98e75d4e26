//! Structural invariants on randomly generated inputs.

use jacquet::lie::LieAlgebra;
use jacquet::linalg::{generalized_eigenspace, kernel, quotient_dim, rank, rref, SparseMatrix, SparseVector, Subspace};
use jacquet::module::{principal_series, verma};
use jacquet::rees::{MonomialIdeal, MonomialIdealFamily};
use jacquet::roots::RootSystem;
use jacquet::{q, Q};
use proptest::prelude::*;

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_of_transpose(rows in small_matrix(5)) {
        let m = SparseMatrix::from_ints(&rows);
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn rref_shape(rows in small_matrix(5)) {
        let m = SparseMatrix::from_ints(&rows);
        let r = rref(&m);
        prop_assert!(r.pivots.windows(2).all(|p| p[0] < p[1]));
        prop_assert_eq!(r.rank, r.pivots.len());
        // row space preserved
        let a = Subspace::span(m.ncols(), m.rows()).unwrap();
        let b = Subspace::span(m.ncols(), r.matrix.rows()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn kernel_is_annihilated(rows in small_matrix(5)) {
        let m = SparseMatrix::from_ints(&rows);
        let ker = kernel(&m);
        prop_assert_eq!(ker.len() + rank(&m), m.ncols());
        for v in &ker {
            prop_assert!(m.apply(v).is_zero());
        }
    }

    #[test]
    fn quotient_by_subset_of_rows(rows in small_matrix(5), keep in prop::collection::vec(any::<bool>(), 5)) {
        let m = SparseMatrix::from_ints(&rows);
        let all = m.rows().to_vec();
        let sub: Vec<SparseVector> = all.iter().zip(&keep).filter(|(_, k)| **k).map(|(v, _)| v.clone()).collect();
        let expect = rank(&m) - Subspace::span(m.ncols(), &sub).unwrap().dimension();
        prop_assert_eq!(quotient_dim(&all, &sub).unwrap(), expect);
    }

    #[test]
    fn span_ignores_rescaling(rows in small_matrix(4), c in 1i64..5) {
        let m = SparseMatrix::from_ints(&rows);
        let scaled: Vec<SparseVector> = m.rows().iter().map(|v| v.scaled(&q(-c))).collect();
        prop_assert!(jacquet::linalg::subspace_equal(m.rows(), &scaled).unwrap());
    }

    /// Upper triangular with prescribed diagonal: the generalized eigenspace has the diagonal multiplicity.
    #[test]
    fn triangular_eigenspaces(diag in prop::collection::vec(-2i64..=2, 1..6), upper in prop::collection::vec(-2i64..=2, 15)) {
        let n = diag.len();
        let mut rows = vec![vec![0i64; n]; n];
        let mut k = 0;
        for i in 0..n {
            rows[i][i] = diag[i];
            for j in i + 1..n {
                rows[i][j] = upper[k];
                k += 1;
            }
        }
        let m = SparseMatrix::from_ints(&rows);
        for &ev in &diag {
            let mult = diag.iter().filter(|&&d| d == ev).count();
            prop_assert_eq!(generalized_eigenspace(&m, &q(ev), n).unwrap().len(), mult);
        }
    }
}

const TYPES: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2", "F4"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Simple reflections permute the positive roots other than the simple root itself.
    #[test]
    fn reflections_preserve_roots(t in 0..TYPES.len(), seed in any::<u64>()) {
        let rs = RootSystem::from_type(TYPES[t]).unwrap();
        let beta = rs.positive_roots[(seed as usize) % rs.num_positive()].clone();
        let i = (seed as usize / 7) % rs.rank;
        let c = rs.pairing_with_coroot(&beta, i);
        let mut image = beta.clone();
        image[i] -= c;
        if beta == rs.simple_root(i) {
            prop_assert!(image.iter().all(|&x| x <= 0));
        } else {
            prop_assert!(rs.is_root(&image), "{:?} -> {:?}", beta, image);
        }
    }

    #[test]
    fn root_coordinates_round_trip(t in 0..TYPES.len(), k in any::<usize>()) {
        let rs = RootSystem::from_type(TYPES[t]).unwrap();
        let beta = &rs.positive_roots[k % rs.num_positive()];
        let back = rs.weight_to_root_coords(&rs.root_to_weight(beta)).unwrap();
        let ints: Vec<Q> = beta.iter().map(|&x| q(x)).collect();
        prop_assert_eq!(back, ints);
    }
}

fn element(g: &LieAlgebra, coeffs: &[i64]) -> SparseVector {
    SparseVector::from_entries(g.dim(), coeffs.iter().enumerate().map(|(i, &c)| (i, q(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sl3_bracket_axioms(a in prop::collection::vec(-2i64..=2, 8), b in prop::collection::vec(-2i64..=2, 8), c in prop::collection::vec(-2i64..=2, 8)) {
        let g = LieAlgebra::sl(3).unwrap();
        let (x, y, z) = (element(&g, &a), element(&g, &b), element(&g, &c));
        let xy = g.bracket(&x, &y);
        let mut anti = g.bracket(&y, &x);
        anti.axpy(&q(1), &xy);
        prop_assert!(anti.is_zero());
        let mut jac = g.bracket(&x, &g.bracket(&y, &z));
        jac.axpy(&q(1), &g.bracket(&y, &g.bracket(&z, &x)));
        jac.axpy(&q(1), &g.bracket(&z, &g.bracket(&x, &y)));
        prop_assert!(jac.is_zero());
        // the bracket is the matrix commutator
        let (mx, my) = (g.to_matrix(&x), g.to_matrix(&y));
        prop_assert_eq!(g.to_matrix(&xy), mx.mul(&my).sub(&my.mul(&mx)));
        // θ is an automorphism
        prop_assert_eq!(g.theta(&xy), g.bracket(&g.theta(&x), &g.theta(&y)));
    }

    #[test]
    fn verma_modules_are_modules(l in -4i64..=4, depth in 1usize..6) {
        let g = LieAlgebra::sl(2).unwrap();
        let m = verma(&g, &[q(l)], depth).unwrap();
        prop_assert_eq!(m.bracket_violation(), None);
        prop_assert_eq!(m.dim(), depth + 1);
    }

    #[test]
    fn verma_sl3_is_a_module(a in -2i64..=2, b in -2i64..=2) {
        let g = LieAlgebra::sl(3).unwrap();
        let m = verma(&g, &[q(a), q(b)], 3).unwrap();
        prop_assert_eq!(m.bracket_violation(), None);
    }

    #[test]
    fn principal_series_casimir(num in -7i64..=7, den in 1i64..4, parity in 0u8..2) {
        let nu = jacquet::qr(num, den);
        let Ok(ps) = principal_series(&nu, parity, 12) else { return Ok(()) };
        // the trace-form Casimir is (h² + 2ef + 2fe)/2, acting by (ν² − 1)/2
        // wherever the window sees the whole orbit
        let expect = (&nu * &nu - Q::from_integer(1.into())) / q(2);
        for j in 0..ps.dim() {
            if !ps.is_interior(j) {
                continue;
            }
            let v = SparseVector::unit(ps.dim(), j);
            let c = ps.casimir(&v).unwrap();
            prop_assert_eq!(c, v.scaled(&expect));
        }
    }
}

fn ideal_strategy(nvars: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..3, nvars), 1..3)
        .prop_filter("proper generators", |gens| gens.iter().all(|g| g.iter().any(|&e| e > 0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ideal_powers_multiply(gens in ideal_strategy(2), a in 0i64..3, b in 0i64..3) {
        let i = MonomialIdeal::new(2, gens).unwrap();
        let lhs = i.pow(a).mul(&i.pow(b));
        let rhs = i.pow(a + b);
        prop_assert!(lhs.is_subset(&rhs) && rhs.is_subset(&lhs));
    }

    #[test]
    fn relabeling_keeps_tables(g1 in ideal_strategy(2), g2 in ideal_strategy(2)) {
        let fam = MonomialIdealFamily::new(2, vec![MonomialIdeal::new(2, g1).unwrap(), MonomialIdeal::new(2, g2).unwrap()]).unwrap();
        let r = jacquet::rees::labeling_independence_check(&fam, 3).unwrap();
        prop_assert!(r.invariant, "{:?}", r.counterexample);
    }

    /// Rees pieces shrink as the multidegree grows.
    #[test]
    fn rees_pieces_decrease(g1 in ideal_strategy(2), g2 in ideal_strategy(2), n1 in 0i64..3, n2 in 0i64..3) {
        let fam = MonomialIdealFamily::new(2, vec![MonomialIdeal::new(2, g1).unwrap(), MonomialIdeal::new(2, g2).unwrap()]).unwrap();
        let here = fam.graded_piece_dim(&[n1, n2], 5).unwrap();
        prop_assert!(fam.graded_piece_dim(&[n1 + 1, n2], 5).unwrap() <= here);
        prop_assert!(fam.graded_piece_dim(&[n1, n2 + 1], 5).unwrap() <= here);
        if n1 == 0 && n2 == 0 {
            prop_assert!(here > 0);
        }
    }
}
