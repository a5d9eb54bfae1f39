mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spike_lab::matrix::basis_family;
use spike_lab::spike::{
    axiom_report, orbit_size, swap_via_matrix, transversal_columns, Element,
};
use spike_lab::*;

fn diagonal_strategy(primes: &'static [u64], n_max: usize) -> impl Strategy<Value = Diagonal> {
    (prop::sample::select(primes), 1..=n_max).prop_flat_map(|(p, n)| {
        prop::collection::vec(1..p as u32, n).prop_map(move |x| diag(p, &x))
    })
}

fn column_vectors(rep: &SpikeRep) -> Vec<Vec<u64>> {
    let a = rep.matrix();
    (0..a.cols()).map(|c| a.column(c).into_iter().map(u64::from).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn spike_det_matches_cofactor_expansion(x in diagonal_strategy(&[2, 3, 5, 7, 11], 6)) {
        let p = x.p() as u64;
        let n = x.n();
        let a: Vec<Vec<u64>> = (0..n)
            .map(|r| (0..n).map(|c| if r == c { (1 + x.values()[r] as u64) % p } else { 1 }).collect())
            .collect();
        let d = spike_det(&x.elems()).unwrap();
        prop_assert_eq!(d.value() as u64, cofactor_det(&a, p));
    }

    #[test]
    fn swap_is_an_involution(x in diagonal_strategy(&[3, 5, 7, 11, 13], 8), bits in any::<u32>()) {
        let s = IndexSet::from_bits(bits & IndexSet::full(x.n()).bits());
        if let Ok(y) = swap(&x, s) {
            prop_assert_eq!(swap(&y, s).unwrap(), x);
        }
    }

    #[test]
    fn swap_transforms_signature(x in diagonal_strategy(&[3, 5, 7, 11], 8), bits in any::<u32>()) {
        let s = IndexSet::from_bits(bits & IndexSet::full(x.n()).bits());
        if let Ok(y) = swap(&x, s) {
            prop_assert_eq!(signature(&y).unwrap(), signature(&x).unwrap().translate(s));
        }
    }

    #[test]
    fn signature_is_permutation_equivariant(
        x in diagonal_strategy(&[3, 5, 7], 8),
        seed in any::<u64>(),
    ) {
        let perm = random_perm(&mut ChaCha8Rng::seed_from_u64(seed), x.n());
        prop_assert_eq!(signature(&x.permute(&perm)).unwrap(), signature(&x).unwrap().permute(&perm));
    }

    #[test]
    fn hex_round_trips(x in diagonal_strategy(&[3, 5, 7, 11], 10)) {
        let sig = signature(&x).unwrap();
        prop_assert_eq!(Signature::from_hex(x.n(), &sig.to_hex()), Some(sig));
    }

    #[test]
    fn diagonal_text_round_trips(x in diagonal_strategy(&[2, 3, 5, 7, 65521], 12)) {
        let parsed: Diagonal = x.to_string().parse().unwrap();
        prop_assert_eq!(parsed, x);
    }

    #[test]
    fn subset_sum_is_lex_least(
        p in prop::sample::select(&[2u64, 3, 5, 7][..]),
        raw in prop::collection::vec(0u64..1000, 1..=12),
        k in 0u64..1000,
    ) {
        let m = make_field(p).unwrap();
        let a: Vec<u64> = raw.iter().map(|v| v % (p - 1) + 1).collect();
        let k = k % (p - 1) + 1;
        let elems: Vec<FieldElem> = a.iter().map(|&v| m.elem(v as i64)).collect();
        let inst = ZeroSumInstance::with_target(&elems, m.elem(k as i64)).unwrap();
        let got = subset_with_sum(&inst).ok().map(|s| s.iter().collect::<Vec<_>>());
        prop_assert_eq!(got, brute_subset_sum(&a, k, p));
    }

    #[test]
    fn zero_sum_is_lex_least(
        p in prop::sample::select(&[2u64, 3, 5, 7][..]),
        raw in prop::collection::vec(0u64..1000, 1..=12),
    ) {
        let m = make_field(p).unwrap();
        let a: Vec<u64> = raw.iter().map(|v| v % p).collect();
        let elems: Vec<FieldElem> = a.iter().map(|&v| m.elem(v as i64)).collect();
        let inst = ZeroSumInstance::zero_target(m, &elems).unwrap();
        let got = zero_sum_subset(&inst).ok().map(|s| s.iter().collect::<Vec<_>>());
        prop_assert_eq!(got, brute_subset_sum(&a, 0, p));
    }
}

#[test]
fn correspondence_matches_rank_oracle_exhaustively_for_p3() {
    for n in 1..=5 {
        for x in all_diagonals(3, n) {
            let xs: Vec<u64> = x.values().iter().map(|&v| v as u64).collect();
            let sig: Vec<u32> = signature(&x).unwrap().iter().map(|s| s.bits()).collect();
            let mut oracle = dependent_transversals(&xs, 3);
            oracle.sort_unstable();
            let mut ours = sig.clone();
            ours.sort_unstable();
            assert_eq!(ours, oracle, "{x}");
        }
    }
}

#[test]
fn circuit_hyperplanes_are_circuits_spanning_hyperplanes() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..120 {
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let n = rng.gen_range(3..=7);
        let x = random_diagonal(&mut rng, p, n);
        let xs: Vec<u64> = x.values().iter().map(|&v| v as u64).collect();
        let cols = spike_columns(&xs, p);
        for i in signature(&x).unwrap().iter() {
            let ch = circuit_hyperplane(&x, i).unwrap();
            let idx: Vec<usize> = ch.iter().map(|&e| spike::standard_column(n, e)).collect();
            assert_eq!(idx.len(), n);
            assert_eq!(rank_of_columns(&cols, &idx, p), n - 1);
            for drop in 0..n {
                let rest: Vec<usize> =
                    idx.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, &c)| c).collect();
                assert_eq!(rank_of_columns(&cols, &rest, p), n - 1, "{x} {i}");
            }
            // A hyperplane is closed: every other column raises the rank.
            for c in 0..2 * n + 1 {
                if !idx.contains(&c) {
                    let mut more = idx.clone();
                    more.push(c);
                    assert_eq!(rank_of_columns(&cols, &more, p), n, "{x} {i} col {c}");
                }
            }
        }
    }
}

#[test]
fn transversal_columns_agree_with_oracle_layout() {
    for n in 1..6 {
        for k in 0..1u32 << n {
            assert_eq!(transversal_columns(n, IndexSet::from_bits(k)), transversal(n, k));
        }
    }
}

#[test]
fn closed_form_swap_matches_matrix_swap() {
    for n in 2..=5 {
        for x in all_diagonals(3, n) {
            for b in 0..1u32 << n {
                let s = IndexSet::from_bits(b);
                assert_eq!(swap(&x, s), swap_via_matrix(&x, s), "{x} {s}");
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let p = [5u64, 7, 11, 13][rng.gen_range(0..4)];
        let n = rng.gen_range(2..=7);
        let x = random_diagonal(&mut rng, p, n);
        let s = IndexSet::from_bits(rng.gen_range(0..1u32 << n));
        assert_eq!(swap(&x, s), swap_via_matrix(&x, s), "{x} {s}");
    }
}

#[test]
fn pull_back_soundness() {
    // A signature member of the image pulls back through the inverse
    // transformation to a member of the original.
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    while checked < 250 {
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let n = rng.gen_range(3..=8);
        let x = random_diagonal(&mut rng, p, n);
        let s = IndexSet::from_bits(rng.gen_range(0..1u32 << n));
        let perm = random_perm(&mut rng, n);
        let Ok(y) = swap(&x, s) else { continue };
        let y = y.permute(&perm);
        let mut inv = vec![0; n];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        let sx = signature(&x).unwrap();
        for j in signature(&y).unwrap().iter() {
            assert!(sx.contains(j.permute(&inv).symmetric_difference(s)), "{x} {s} {perm:?}");
        }
        checked += 1;
    }
}

#[test]
fn normalize_gives_minus_one_first() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    while checked < 400 {
        let p = [3u64, 5, 7, 11][rng.gen_range(0..4)];
        let n = rng.gen_range(3..=7);
        let x = random_diagonal(&mut rng, p, n);
        match normalize(&x) {
            Ok(y) => {
                assert_eq!(y.inverses()[0], p as u32 - 1, "{x} -> {y}");
                assert!(weakly_equivalent(&x, &y).unwrap());
                checked += 1;
            }
            Err(Error::NoCircuitHyperplane) => assert!(signature(&x).unwrap().is_empty()),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn enumeration_matches_union_find_orbits() {
    for (p, n) in [(3u64, 3usize), (3, 4), (3, 5), (5, 3), (5, 4), (7, 3)] {
        let orbits = orbit_partition(p, n);
        let classes = enumerate_spikes(p, n).unwrap();
        assert_eq!(classes.len(), orbits.len(), "p={p} n={n}");
        let mut sizes: Vec<u64> = orbits.iter().map(|o| o.len() as u64).collect();
        sizes.sort_unstable();
        let mut ours: Vec<u64> = classes.iter().map(|c| c.orbit_size).collect();
        ours.sort_unstable();
        assert_eq!(ours, sizes, "p={p} n={n}");
        for orbit in &orbits {
            let least = orbit.iter().min().unwrap();
            assert!(classes.iter().any(|c| &c.diagonal == least), "p={p} n={n} {least}");
            for x in orbit {
                assert_eq!(&canonical_form(x).unwrap(), least);
                assert_eq!(orbit_size(x).unwrap(), orbit.len() as u64);
            }
        }
    }
}

#[test]
fn standard_representations_satisfy_axioms() {
    for n in 3..=5 {
        for x in all_diagonals(3, n) {
            assert!(build_rep(&x).unwrap().check_axioms(), "{x}");
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..60 {
        let p = [5u64, 7, 11][rng.gen_range(0..3)];
        let n = rng.gen_range(3..=7);
        let x = random_diagonal(&mut rng, p, n);
        assert!(build_rep(&x).unwrap().check_axioms(), "{x}");
    }
}

#[test]
fn axioms_reject_broken_lines() {
    let x = diag(5, &[1, 2, 3, 4]);
    let rep = build_rep(&x).unwrap();
    let mut a = rep.matrix().clone();
    // Make f_1 parallel to the tip.
    for r in 0..4 {
        a.set_raw(r, 5, 1);
    }
    let report = axiom_report(&a);
    assert!(!report.holds());
    assert!(!report.three_point_lines);
}

#[test]
fn basis_family_is_row_operation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..20 {
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let n = rng.gen_range(3..=5);
        let x = random_diagonal(&mut rng, p, n);
        let a = build_rep(&x).unwrap().matrix().clone();
        let m = make_field(p).unwrap();
        let g = loop {
            let rows: Vec<Vec<i64>> =
                (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect()).collect();
            let g = MatrixGF::from_rows(m, &rows);
            if g.rank() == n {
                break g;
            }
        };
        let fam = basis_family(&a).unwrap();
        assert_eq!(fam, basis_family(&g.mul(&a)).unwrap());
        let cols = column_vectors(&build_rep(&x).unwrap());
        let oracle: Vec<u32> = (0..1u32 << (2 * n + 1))
            .filter(|b| b.count_ones() as usize == n)
            .filter(|&b| {
                let pick: Vec<usize> = (0..2 * n + 1).filter(|c| b >> c & 1 == 1).collect();
                rank_of_columns(&cols, &pick, p) == n
            })
            .collect();
        assert_eq!(fam.members, oracle);
    }
}

#[test]
fn restandardizing_twice_returns_the_original() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    for _ in 0..100 {
        let p = [3u64, 5, 7][rng.gen_range(0..3)];
        let n = rng.gen_range(3..=6);
        let x = random_diagonal(&mut rng, p, n);
        let s = IndexSet::from_bits(rng.gen_range(0..1u32 << n));
        let rep = build_rep(&x).unwrap();
        let Ok(once) = change_basis_standardize(&rep, s) else {
            assert!(is_dependent_transversal(&x, s));
            continue;
        };
        let twice = change_basis_standardize(&once, s).unwrap();
        assert_eq!(twice.diagonal().unwrap(), x);
        // Labels travel with their columns.
        let e1 = once.labels().iter().position(|&l| l == Element::E(1)).unwrap();
        assert_eq!(e1 > n, s.contains(1));
    }
}
