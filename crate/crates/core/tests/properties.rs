mod common;

use common::rng;
use flagcone::constructions::{double_interval, horizontal_double, random_graded_poset, DoublingSpec};
use flagcone::flag::{Basis, FlagVector};
use flagcone::forms::{basic_atom, basic_zero, convolve, graded_ijk_form, split_evaluation, LinearForm};
use flagcone::rational::{q, Q};
use flagcone::subset::{full, interval_mask, submasks};
use flagcone::systems::{enumerate_even_systems, lambda_decode, lambda_encode};
use flagcone::transforms::{convert, f_to_ell, f_to_l};
use proptest::prelude::*;

fn basis() -> impl Strategy<Value = Basis> {
    prop_oneof![Just(Basis::F), Just(Basis::H), Just(Basis::Ell), Just(Basis::L)]
}

fn vector() -> impl Strategy<Value = FlagVector> {
    (0usize..=6, basis()).prop_flat_map(|(n, b)| {
        prop::collection::vec((-50i64..=50, 1i64..=4), 1 << n).prop_map(move |xs| {
            let entries = xs.into_iter().map(|(a, d)| flagcone::rational::q_frac(a, d)).collect();
            FlagVector::from_entries(n, b, entries).unwrap()
        })
    })
}

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conversions_round_trip(v in vector(), target in basis()) {
        let w = convert(&v, target).unwrap();
        prop_assert_eq!(w.basis(), target);
        prop_assert_eq!(convert(&w, v.basis()).unwrap(), v);
    }

    #[test]
    fn json_round_trip(v in vector()) {
        let text = serde_json::to_string(&v.to_json()).unwrap();
        let back = FlagVector::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn doubling_scales_flag_counts(s in seed(), copies in 2usize..=4) {
        let mut r = rng(s);
        let rank = 2 + (s % 5) as usize;
        let p = random_graded_poset(&mut r, rank, 3);
        let n = p.n();
        let lo = 1 + (s >> 8) as usize % n;
        let hi = lo + (s >> 16) as usize % (n - lo + 1);
        let d = double_interval(&p, DoublingSpec::new(lo, hi, copies)).unwrap();
        let (f, g) = (p.flag_f_vector().unwrap(), d.flag_f_vector().unwrap());
        let iv = interval_mask(lo, hi);
        for m in 0..=full(n) {
            let factor = if m & iv != 0 { copies as i64 } else { 1 };
            prop_assert_eq!(g.get(m), &(f.get(m) * q(factor)));
        }
        // the ℓ-vector transforms as N ℓ_S - (N-1) Σ_{T ∪ I = S} ℓ_T
        let (l, ld) = (f_to_ell(&f).unwrap(), f_to_ell(&g).unwrap());
        for m in 0..=full(n) {
            let mut expected = l.get(m) * q(copies as i64);
            if m & iv == iv {
                for t in submasks(m) {
                    if t | iv == m {
                        expected -= l.get(t) * q(copies as i64 - 1);
                    }
                }
            }
            prop_assert_eq!(ld.get(m), &expected);
        }
    }

    #[test]
    fn horizontal_double_turns_ell_into_l(s in seed()) {
        let mut r = rng(s);
        let p = random_graded_poset(&mut r, 2 + (s % 5) as usize, 3);
        let ell = f_to_ell(&p.flag_f_vector().unwrap()).unwrap();
        let l = f_to_l(&horizontal_double(&p).flag_f_vector().unwrap()).unwrap();
        prop_assert_eq!(ell.entries(), l.entries());
    }

    #[test]
    fn convolution_matches_interval_splitting(s in seed()) {
        let mut r = rng(s);
        let rank = 3 + (s % 4) as usize;
        let p = random_graded_poset(&mut r, rank, 3);
        let m = 1 + (s >> 8) as usize % (rank - 1);
        let left: LinearForm = if m >= 2 { basic_atom(m).unwrap() } else { basic_zero(m) };
        let right = if rank - m >= 4 { graded_ijk_form(rank - m - 1, 1, 2, 3).unwrap() } else { basic_zero(rank - m) };
        let product = convolve(&left, &right).unwrap();
        prop_assert_eq!(product.evaluate_poset(&p).unwrap(), split_evaluation(&left, &right, &p).unwrap());
        for b in [Basis::Ell, Basis::L, Basis::H] {
            let (lb, rb) = (left.to_basis(b).unwrap(), right.to_basis(b).unwrap());
            let pb = convolve(&lb, &rb).unwrap();
            prop_assert_eq!(pb.evaluate_poset(&p).unwrap(), product.evaluate_poset(&p).unwrap());
        }
    }
}

#[test]
fn lambda_sequences_are_a_bijection() {
    for n in 1..=10 {
        let systems = enumerate_even_systems(n);
        let mut seen = std::collections::BTreeSet::new();
        for system in &systems {
            let lambda = lambda_encode(system).unwrap();
            assert_eq!(lambda.0.iter().filter(|&&x| x > 0).count(), n - n / 2, "n = {n}");
            assert_eq!(&lambda_decode(&lambda).unwrap(), system);
            assert!(seen.insert(lambda.to_string()));
        }
    }
}

#[test]
fn form_evaluation_is_linear() {
    let mut r = rng(5);
    let p = random_graded_poset(&mut r, 5, 3);
    let a = basic_atom(5).unwrap();
    let b = graded_ijk_form(4, 1, 2, 4).unwrap();
    let sum = a.add(&b).unwrap().scale(&q(3));
    let expected: Q = (a.evaluate_poset(&p).unwrap() + b.evaluate_poset(&p).unwrap()) * q(3);
    assert_eq!(sum.evaluate_poset(&p).unwrap(), expected);
}
