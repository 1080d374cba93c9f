//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use autplane::derivations::{ad_exp, from_root, Derivation};
use autplane::exactpoly::{BiPoly, Rat};
use autplane::grading::{MVec, NVec};
use rand::Rng;

/// Nonzero rational with numerator and denominator of absolute value at
/// most `bound`.
pub fn nonzero_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            return Rat::new(n.into(), rng.gen_range(1..=bound).into());
        }
    }
}

pub fn any_rat<R: Rng>(rng: &mut R, bound: i64) -> Rat {
    Rat::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=bound).into())
}

/// A random root of `rho` with its free coordinate in `0..=max`.
pub fn random_root<R: Rng>(rng: &mut R, rho: NVec, max: i64) -> MVec {
    let c = rng.gen_range(0..=max);
    if rho == NVec::RAY_X {
        MVec(-1, c)
    } else {
        MVec(c, -1)
    }
}

/// `Σ c_i ∂_{ρ,e_i}` over a few roots of one ray with free coordinate at
/// most `max`: a triangular locally nilpotent derivation.
pub fn same_ray_combination<R: Rng>(rng: &mut R, rho: NVec, max: i64) -> Derivation {
    let terms = rng.gen_range(1..=3);
    let mut d = Derivation::zero();
    for _ in 0..terms {
        let e = random_root(rng, rho, max);
        d = &d + &from_root(rho, e).unwrap().scale(&nonzero_rat(rng, 5));
    }
    if d.is_zero() {
        from_root(rho, random_root(rng, rho, max)).unwrap()
    } else {
        d
    }
}

fn random_ray<R: Rng>(rng: &mut R) -> NVec {
    if rng.gen_bool(0.5) {
        NVec::RAY_X
    } else {
        NVec::RAY_Y
    }
}

/// A locally nilpotent derivation certified by construction: a scaled root
/// derivation, a same-ray combination, or such a derivation conjugated once
/// or twice by triangular ones of the other ray.
pub fn random_lnd<R: Rng>(rng: &mut R) -> Derivation {
    let rho = random_ray(rng);
    let other = rho.other_ray().unwrap();
    match rng.gen_range(0..4) {
        0 => {
            let e = random_root(rng, rho, 4);
            from_root(rho, e).unwrap().scale(&nonzero_rat(rng, 5))
        }
        1 => same_ray_combination(rng, rho, 4),
        2 => {
            let base = same_ray_combination(rng, rho, 2);
            let u = from_root(other, random_root(rng, other, 2)).unwrap();
            ad_exp(&u, &nonzero_rat(rng, 3), &base).unwrap()
        }
        _ => {
            let base = same_ray_combination(rng, rho, 1);
            let u = from_root(other, random_root(rng, other, 2)).unwrap();
            let v = from_root(rho, random_root(rng, rho, 1)).unwrap();
            let once = ad_exp(&u, &nonzero_rat(rng, 3), &base).unwrap();
            ad_exp(&v, &nonzero_rat(rng, 3), &once).unwrap()
        }
    }
}

/// A random polynomial with a few terms of degree at most `max_deg` in each
/// variable.
pub fn random_poly<R: Rng>(rng: &mut R, max_terms: usize, max_deg: u32) -> BiPoly {
    let mut p = BiPoly::zero();
    for _ in 0..rng.gen_range(1..=max_terms) {
        p = &p + &BiPoly::monomial(any_rat(rng, 5), rng.gen_range(0..=max_deg), rng.gen_range(0..=max_deg));
    }
    p
}
