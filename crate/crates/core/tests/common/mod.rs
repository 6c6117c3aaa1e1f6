#![allow(dead_code)]

use monostab_core::{MonomialIdeal, Monomial, Ring};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn ring(n: usize) -> Ring {
    const NAMES: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    Ring::new(&NAMES[..n]).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Proper nonzero ideal with up to `max_gens` generators and exponents `<= max_exp`.
pub fn random_ideal(rng: &mut ChaCha8Rng, n: usize, max_gens: usize, max_exp: u64) -> MonomialIdeal {
    let ring = ring(n);
    let k = rng.gen_range(1..=max_gens);
    let gens: Vec<Monomial> = (0..k)
        .map(|_| loop {
            let e: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if e.iter().any(|&x| x > 0) {
                break Monomial::new(e);
            }
        })
        .collect();
    MonomialIdeal::minimalize(&ring, gens).unwrap()
}

/// Every ideal whose minimal generators are at most `max_gens` non-unit
/// monomials with exponents `<= max_exp`.
pub fn grid(n: usize, max_gens: usize, max_exp: u64) -> Vec<MonomialIdeal> {
    let ring = ring(n);
    let mut mons: Vec<Monomial> = Vec::new();
    let mut e = vec![0u64; n];
    loop {
        if e.iter().any(|&x| x > 0) {
            mons.push(Monomial::new(e.clone()));
        }
        let Some(i) = e.iter().position(|&x| x < max_exp) else { break };
        e[i] += 1;
        e[..i].iter_mut().for_each(|x| *x = 0);
    }
    let mut out = Vec::new();
    let mut cur: Vec<Monomial> = Vec::new();
    fn rec(
        mons: &[Monomial],
        start: usize,
        cur: &mut Vec<Monomial>,
        max_gens: usize,
        ring: &Ring,
        out: &mut Vec<MonomialIdeal>,
    ) {
        if !cur.is_empty() {
            out.push(MonomialIdeal::minimalize(ring, cur.clone()).unwrap());
        }
        if cur.len() == max_gens {
            return;
        }
        for i in start..mons.len() {
            let m = &mons[i];
            if cur.iter().all(|c| !c.divides(m) && !m.divides(c)) {
                cur.push(m.clone());
                rec(mons, i + 1, cur, max_gens, ring, out);
                cur.pop();
            }
        }
    }
    rec(&mons, 0, &mut cur, max_gens, &ring, &mut out);
    out
}

use proptest::prelude::*;

/// Proper nonzero ideals in `n` variables.
pub fn ideal_in(n: usize, max_gens: usize, max_exp: u64) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, n), 1..=max_gens).prop_filter_map(
        "needs a non-unit generator",
        move |rows| {
            let gens: Vec<Monomial> = rows
                .into_iter()
                .filter(|r| r.iter().any(|&e| e > 0))
                .map(Monomial::new)
                .collect();
            (!gens.is_empty()).then(|| MonomialIdeal::minimalize(&ring(n), gens).unwrap())
        },
    )
}

pub fn ideal(max_vars: usize, max_gens: usize, max_exp: u64) -> impl Strategy<Value = MonomialIdeal> {
    (1..=max_vars).prop_flat_map(move |n| ideal_in(n, max_gens, max_exp))
}

pub fn monomial(n: usize, max_exp: u64) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}
