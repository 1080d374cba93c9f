mod common;

use autplane::automorphisms::{pushforward, AutWord};
use autplane::derivations::{
    ad_exp, brute_force_iterated_commutator, exp_apply, homog_decompose, is_nilpotent, iterated_commutator_closed_form,
    Derivation, DEFAULT_NILPOTENCY_BOUND,
};
use autplane::grading::NVec;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_derivation(rng: &mut ChaCha8Rng) -> Derivation {
    Derivation::new(common::random_poly(rng, 3, 2), common::random_poly(rng, 3, 2))
}

fn ray(rng: &mut ChaCha8Rng) -> NVec {
    if rng.gen_bool(0.5) {
        NVec::RAY_X
    } else {
        NVec::RAY_Y
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn bracket_is_antisymmetric_and_satisfies_jacobi(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = (random_derivation(&mut rng), random_derivation(&mut rng), random_derivation(&mut rng));
        prop_assert_eq!(u.bracket(&v), -&v.bracket(&u));
        let jacobi = &(&u.bracket(&v.bracket(&w)) + &v.bracket(&w.bracket(&u))) + &w.bracket(&u.bracket(&v));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn derivations_obey_leibniz(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_derivation(&mut rng);
        let (f, g) = (common::random_poly(&mut rng, 3, 2), common::random_poly(&mut rng, 3, 2));
        prop_assert_eq!(d.apply(&(&f * &g)), &(&d.apply(&f) * &g) + &(&f * &d.apply(&g)));
    }

    #[test]
    fn homogeneous_pieces_sum_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_derivation(&mut rng);
        let pieces = homog_decompose(&d);
        let sum = pieces.iter().fold(Derivation::zero(), |acc, (_, p)| &acc + p);
        prop_assert_eq!(sum, d.clone());
        for (e, p) in &pieces {
            prop_assert_eq!(p.homogeneous_degree(), Some(*e));
        }
    }

    #[test]
    fn exp_is_multiplicative_with_group_law(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = common::random_lnd(&mut rng);
        prop_assert!(is_nilpotent(&d, DEFAULT_NILPOTENCY_BOUND).is_nilpotent());
        let (t, s) = (common::any_rat(&mut rng, 4), common::any_rat(&mut rng, 4));
        let (f, g) = (common::random_poly(&mut rng, 2, 2), common::random_poly(&mut rng, 2, 2));
        let e = |p: &_, t: &_| exp_apply(&d, t, p).unwrap();
        prop_assert_eq!(e(&(&f * &g), &t), &e(&f, &t) * &e(&g, &t));
        prop_assert_eq!(e(&f, &(&t + &s)), e(&e(&f, &s), &t));
        prop_assert_eq!(e(&e(&f, &t), &-t.clone()), f.clone());
    }

    #[test]
    fn ad_exp_matches_pushforward(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = ray(&mut rng);
        let u = common::same_ray_combination(&mut rng, rho, 3);
        let t = common::nonzero_rat(&mut rng, 4);
        let d = random_derivation(&mut rng);
        let g = AutWord::exp_of(&u, &t).unwrap();
        prop_assert_eq!(pushforward(&g, &d), ad_exp(&u, &-t.clone(), &d).unwrap());
    }

    #[test]
    fn ad_exp_preserves_brackets(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = common::random_lnd(&mut rng);
        let t = common::any_rat(&mut rng, 3);
        let (v, w) = (random_derivation(&mut rng), random_derivation(&mut rng));
        let ad = |x: &Derivation| ad_exp(&u, &t, x).unwrap();
        prop_assert_eq!(ad(&v.bracket(&w)), ad(&v).bracket(&ad(&w)));
    }

    #[test]
    fn closed_form_matches_nested_brackets(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (rho, r) = (ray(&mut rng), ray(&mut rng));
        let eps = common::random_root(&mut rng, r, 6);
        let roots: Vec<_> = (0..rng.gen_range(1..=5)).map(|_| common::random_root(&mut rng, rho, 6)).collect();
        let closed = iterated_commutator_closed_form(rho, r, eps, &roots).unwrap().to_derivation().unwrap();
        prop_assert_eq!(closed, brute_force_iterated_commutator(rho, r, eps, &roots).unwrap());
    }

    #[test]
    fn display_parses_back(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_derivation(&mut rng);
        let back: Derivation = d.to_string().parse().unwrap();
        prop_assert_eq!(back, d);
    }
}
