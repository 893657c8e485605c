//! Property tests for the exact linear algebra and the lattice layer.

mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use k3cover::exactlin::{determinant, inertia, rank, smith_normal_form, IntMatrix};
use k3cover::k3lattices::{build_ln, candidate_family, LnId};
use k3cover::lattice::mod_2z;

fn small_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        proptest::collection::vec(-bound..=bound, n * n).prop_map(move |v| {
            IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn small_symmetric(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        proptest::collection::vec(-bound..=bound, n * (n + 1) / 2).prop_map(move |v| {
            let mut m = IntMatrix::zero(n, n);
            let mut it = v.into_iter();
            for i in 0..n {
                for j in i..n {
                    let x = BigInt::from(it.next().unwrap());
                    m[(i, j)] = x.clone();
                    m[(j, i)] = x;
                }
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_decomposition_invariants(a in small_matrix(5, 9)) {
        let s = smith_normal_form(&a);
        // U * A * V = D, with unimodular transforms
        let uav = s.u.mul(&a).unwrap().mul(&s.v).unwrap();
        prop_assert_eq!(&uav, &s.d);
        prop_assert_eq!(determinant(&s.u).unwrap().abs(), BigInt::one());
        prop_assert_eq!(determinant(&s.v).unwrap().abs(), BigInt::one());
        // non-negative diagonal with the divisibility chain
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
        }
        prop_assert!(diag.iter().all(|d| !d.is_negative()));
        // |det| = product of nonzero diagonal entries for square input
        let det = determinant(&a).unwrap();
        if !det.is_zero() {
            let prod: BigInt = diag.iter().filter(|d| !d.is_zero()).product();
            prop_assert_eq!(prod, det.abs());
        }
        // rank agrees with the number of nonzero diagonal entries
        prop_assert_eq!(rank(&a), s.rank());
    }

    #[test]
    fn determinant_is_multiplicative(a in small_matrix(3, 6), b in small_matrix(3, 6)) {
        prop_assume!(a.rows() == b.rows());
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(
            determinant(&ab).unwrap(),
            determinant(&a).unwrap() * determinant(&b).unwrap()
        );
    }

    #[test]
    fn inertia_is_a_congruence_invariant(a in small_symmetric(4, 6), seed in 0u64..u64::MAX) {
        let n = a.rows();
        let mut rng = common::XorShift::new(seed);
        let u = rng.unimodular(n, 8);
        let conj = u.transpose().mul(&a).unwrap().mul(&u).unwrap();
        let (p, m, z) = inertia(&a).unwrap();
        prop_assert_eq!(p + m + z, n);
        prop_assert_eq!(inertia(&conj).unwrap(), (p, m, z));
    }

    #[test]
    fn inertia_matches_rational_elimination(a in small_symmetric(5, 9)) {
        prop_assert_eq!(inertia(&a).unwrap(), common::rational_inertia(&a));
    }
}

#[test]
fn q_values_well_defined_modulo_lattice_vectors() {
    // spot the invariant on the candidate lattices: shifting a generator by
    // a lattice vector moves q by an even integer
    let mut rng = common::XorShift::new(0xDEC0DE);
    for LnId { n, r } in [LnId { n: 6, r: 1 }, LnId { n: 9, r: 2 }, LnId { n: 13, r: 4 }] {
        let lattice = build_ln(n, r).unwrap();
        let dg = lattice.discriminant_group().unwrap();
        for (g, q) in dg.generators().iter().zip(dg.qvalues()) {
            for _ in 0..20 {
                let shifted: Vec<_> = g
                    .iter()
                    .map(|c| c + num_rational::BigRational::from(BigInt::from(rng.int_in(-4, 4))))
                    .collect();
                let q_shifted = mod_2z(&lattice.norm(&shifted));
                assert_eq!(&q_shifted, q, "q not well defined on L_{n}_{r}");
            }
        }
    }
}

#[test]
fn family_members_are_even_hyperbolic() {
    for LnId { n, r } in candidate_family() {
        let l = build_ln(n, r).unwrap();
        assert!(l.is_even());
        assert_eq!(l.signature(), (1, n - 1, 0));
        assert!(l.length().unwrap() <= l.rank());
    }
}

#[test]
fn rescale_scales_det_by_k_to_rank() {
    let l = build_ln(7, 1).unwrap();
    let det = l.discriminant().unwrap();
    for k in [-3i64, -1, 2, 5] {
        let r = l.rescale(&BigInt::from(k)).unwrap();
        assert_eq!(
            r.discriminant().unwrap(),
            det.clone() * BigInt::from(k).pow(7)
        );
    }
}

#[test]
fn overlattice_chain_is_index_two_at_each_step() {
    // L_n^(2r) is an index-2 overlattice of L_n^(r) whenever both exist
    for LnId { n, r } in candidate_family() {
        if r == 1 {
            continue;
        }
        let fine = build_ln(n, r).unwrap();
        let coarse = build_ln(n, r / 2).unwrap();
        assert_eq!(
            coarse.discriminant().unwrap(),
            fine.discriminant().unwrap() * BigInt::from(4),
            "chain step L_{n}_{} -> L_{n}_{r}",
            r / 2
        );
    }
}

/// The glue codes accepted by the derivation embed, up to coordinate
/// permutation, into the five even-set codes.
#[test]
fn accepted_codes_are_subcodes_of_the_five_codes() {
    use k3cover::evensets::{code_of, EvenSetCodeId};
    use k3cover::k3lattices::derive::{derive, CandidateVerdict};

    // permutation-invariant profile of a code given by its codewords
    fn profile(words: &[u32]) -> Vec<Vec<u32>> {
        let nonzero: Vec<u32> = words.iter().copied().filter(|&w| w != 0).collect();
        let mut weights: Vec<u32> = nonzero.iter().map(|w| w.count_ones()).collect();
        weights.sort_unstable();
        let mut pairs = Vec::new();
        for (i, &a) in nonzero.iter().enumerate() {
            for &b in nonzero.iter().skip(i + 1) {
                pairs.push((a & b).count_ones());
            }
        }
        pairs.sort_unstable();
        vec![weights, pairs]
    }

    fn span(generators: &[u32]) -> Vec<u32> {
        let mut words = vec![0u32];
        for &g in generators {
            let mut next = words.clone();
            next.extend(words.iter().map(|w| w ^ g));
            next.sort_unstable();
            next.dedup();
            words = next;
        }
        words
    }

    // all subspace profiles of the five codes
    let mut subcode_profiles: Vec<Vec<Vec<u32>>> = Vec::new();
    for id in EvenSetCodeId::ALL {
        let words = code_of(id).codewords().unwrap();
        let mut seen: Vec<Vec<u32>> = vec![vec![0]];
        let mut frontier: Vec<Vec<u32>> = vec![vec![0]];
        while let Some(sp) = frontier.pop() {
            for &w in &words {
                if sp.binary_search(&w).is_ok() {
                    continue;
                }
                let mut bigger: Vec<u32> = sp.iter().map(|&s| s ^ w).collect();
                bigger.extend_from_slice(&sp);
                bigger.sort_unstable();
                if !seen.contains(&bigger) {
                    seen.push(bigger.clone());
                    frontier.push(bigger);
                }
            }
        }
        for sp in seen {
            subcode_profiles.push(profile(&sp));
        }
    }

    for n in 6..=16 {
        let derivation = derive(n).unwrap();
        for record in &derivation.records {
            if !matches!(record.verdict, CandidateVerdict::Accepted { .. }) {
                continue;
            }
            let masks: Vec<u32> = record
                .code_generators
                .iter()
                .map(|positions| {
                    positions.iter().fold(0u32, |m, &p| m | 1 << (p - 1))
                })
                .collect();
            let p = profile(&span(&masks));
            assert!(
                subcode_profiles.contains(&p),
                "accepted code at n={n} is not a subcode of the five codes: {:?}",
                record.code_generators
            );
        }
    }
}
