mod common;

use monostab_core::decomposition::{
    associated_primes, ass_witness, height, irreducible_decomposition, minimal_primes, potential_ass,
};
use monostab_core::{MonomialIdeal, PrimeSupport};
use proptest::prelude::*;

fn intersect_all(ideals: impl Iterator<Item = MonomialIdeal>, start: MonomialIdeal) -> MonomialIdeal {
    ideals.fold(start, |acc, q| acc.intersect(&q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn components_intersect_back_and_are_irredundant(i in common::ideal(4, 6, 4)) {
        let ring = i.ring().clone();
        let comps: Vec<MonomialIdeal> =
            irreducible_decomposition(&i).unwrap().iter().map(|c| c.to_ideal(&ring)).collect();
        let unit = MonomialIdeal::unit(&ring);
        prop_assert_eq!(intersect_all(comps.iter().cloned(), unit.clone()), i.clone());
        for skip in 0..comps.len() {
            let rest = comps.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, q)| q.clone());
            let bigger = intersect_all(rest, unit.clone());
            prop_assert!(i.is_subset_of(&bigger) && bigger != i);
        }
    }

    #[test]
    fn prime_sets_nest(i in common::ideal(4, 6, 4)) {
        let min = minimal_primes(&i).unwrap();
        let ass = associated_primes(&i).unwrap();
        let pot = potential_ass(&i).unwrap();
        prop_assert!(min.is_subset(&ass));
        prop_assert!(ass.is_subset(&pot));
    }

    #[test]
    fn decomposition_matches_witness_search(i in common::ideal(4, 6, 4)) {
        let ass = associated_primes(&i).unwrap();
        let n = i.nvars();
        for mask in 1u32..(1 << n) {
            let p = PrimeSupport::new((0..n).filter(|b| mask >> b & 1 == 1).collect());
            let w = ass_witness(&i, &p).unwrap();
            prop_assert_eq!(w.is_some(), ass.contains(&p), "prime {:?}", p);
            if let Some(m) = w {
                prop_assert_eq!(i.colon_monomial(&m).unwrap(), p.to_ideal(i.ring()));
            }
        }
    }

    #[test]
    fn radical_primes_are_minimal(i in common::ideal(4, 6, 4)) {
        let rad = i.radical();
        let min = minimal_primes(&i).unwrap();
        prop_assert_eq!(associated_primes(&rad).unwrap(), min.clone());
        prop_assert_eq!(minimal_primes(&rad).unwrap(), min);
    }

    #[test]
    fn scaling_adds_variable_primes(
        (f, i) in (2..=4usize).prop_flat_map(|n| (common::monomial(n, 3), common::ideal_in(n, 5, 3)))
    ) {
        prop_assume!(height(&i).unwrap() >= 2);
        let mut want = associated_primes(&i).unwrap();
        want.extend(f.support().map(|v| PrimeSupport::new(vec![v])));
        prop_assert_eq!(associated_primes(&i.scale(&f).unwrap()).unwrap(), want);
    }
}
