//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use monostab_core::closure::integral_closure;
use monostab_core::decomposition::{associated_primes, ass_witness, minimal_primes};
use monostab_core::families;
use monostab_core::resolution::{betti_table, koszul_betti_oracle};
use monostab_core::stability::{
    closure_depth_profile, compare_indices, depth_profile, first_increase, profile, strong_persistence,
    IndexComparison, Monotonicity, ProfileOptions,
};
use monostab_core::{Level, Limits, MonomialIdeal, PrimeSet, PrimeSupport, Ring};
use rayon::prelude::*;

#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, label: &str, got: T, want: T) {
        if got != want {
            self.failures.push(format!("{label}: got {got:?}, want {want:?}"));
        }
    }
}

fn primes(ring: &Ring, sets: &[&str]) -> PrimeSet {
    sets.iter()
        .map(|s| PrimeSupport::from_names(ring, &s.split(',').collect::<Vec<_>>()).unwrap())
        .collect()
}

fn ideal(ring: &Ring, exps: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(ring, exps).unwrap()
}

fn squared_pairs(c: &mut Checks) {
    let i = families::squared_pairs();
    let r = i.ring().clone();
    let rep = profile(&i, &ProfileOptions::new(5).with_closure(true)).unwrap();
    c.eq("astab", rep.astab, Some(2));
    c.eq("astab-bar", rep.astabbar, Some(1));
    c.eq("Ass(I)", rep.ass_at(1).clone(), primes(&r, &["x,y", "x,z", "y,z"]));
    c.eq("Ass(I^2)", rep.ass_at(2).clone(), primes(&r, &["x,y", "x,z", "y,z", "x,y,z"]));
    let want = ideal(
        &r,
        &[&[2, 2, 0], &[2, 0, 2], &[0, 2, 2], &[1, 1, 2], &[1, 2, 1], &[2, 1, 1]],
    );
    c.eq("closure of I", integral_closure(&i, 1).unwrap(), want);
    c.eq("strong persistence", strong_persistence(&i, 5).unwrap(), vec![true; 4]);
}

fn closure_gap(c: &mut Checks) {
    for p in 1..=3u64 {
        let i = families::closure_gap(p).unwrap();
        let r = i.ring().clone();
        let n_max = p as usize + 4;
        let rep = profile(&i, &ProfileOptions::new(n_max).with_closure(true)).unwrap();
        c.eq(&format!("c={p} astab"), rep.astab, Some(p as usize + 2));
        c.eq(
            &format!("c={p} astab level"),
            rep.astab_cert.as_ref().map(|x| x.level),
            Some(Level::Certified),
        );
        c.eq(
            &format!("c={p} depth-0 absorption"),
            rep.dstab_cert.as_ref().map(|x| x.level),
            Some(Level::Certified),
        );
        c.check(rep.all_persistent(), || format!("c={p} persistence fails"));
        c.eq(&format!("c={p} astab-bar"), rep.astabbar, Some(2));
        let want: Vec<usize> = (1..=n_max).map(|n| usize::from(n <= p as usize + 1)).collect();
        c.eq(&format!("c={p} depths"), rep.depths(), want);
        let cl1 = rep.records[0].closure_ass.clone().unwrap();
        c.eq(&format!("c={p} Ass(closure I)"), cl1, primes(&r, &["x,z", "x,y"]));
        let cl2 = rep.records[1].closure_ass.clone().unwrap();
        c.check(cl2.contains(&PrimeSupport::full(3)), || {
            format!("c={p} maximal ideal missing from Ass(closure I^2)")
        });
        let pure = r.var_power(0, 2 * p + 2);
        for n in 2..=p as usize + 3 {
            let in_ = i.power(n).unwrap();
            let prev = i.power(n - 1).unwrap();
            if n <= p as usize + 1 {
                c.eq(&format!("c={p} I^{n}:x^(2c+2)"), in_.colon_monomial(&pure).unwrap(), prev.clone());
            }
            c.eq(&format!("c={p} I^{n}:I"), in_.colon_ideal(&i).unwrap(), prev);
        }
    }
}

fn path(c: &mut Checks) {
    let rep = profile(&families::path(), &ProfileOptions::new(5)).unwrap();
    c.eq("astab", rep.astab, Some(1));
    c.eq("dstab", rep.dstab, Some(2));
    c.eq("depths", rep.depths(), vec![2, 1, 1, 1, 1]);
}

fn mixed(c: &mut Checks) {
    let i = families::mixed();
    let rep = profile(&i, &ProfileOptions::new(5)).unwrap();
    c.eq("astab", rep.astab, Some(2));
    c.eq("dstab", rep.dstab, Some(1));
    c.eq("depths", rep.depths(), vec![1; 5]);
    c.eq(
        "stable Ass",
        rep.ass_infinity().cloned(),
        Some(primes(i.ring(), &["x,u", "z,u", "x,y,u", "x,z,u"])),
    );
}

fn lag_pair(c: &mut Checks) {
    for p in 2..=3u64 {
        let n_max = p as usize + 3;
        let i = families::ass_lag(p).unwrap();
        let r = i.ring().clone();
        let rep = profile(&i, &ProfileOptions::new(n_max)).unwrap();
        c.eq(&format!("c={p} astab(I)"), rep.astab, Some(p as usize + 1));
        c.eq(&format!("c={p} dstab(I)"), rep.dstab, Some(1));
        c.eq(
            &format!("c={p} Ass(I)"),
            rep.ass_at(1).clone(),
            primes(&r, &["x,u", "z,u", "y,z,u", "x,y,u"]),
        );
        c.eq(
            &format!("c={p} stable Ass(I)"),
            rep.ass_infinity().cloned(),
            Some(primes(&r, &["x,u", "z,u", "y,z,u", "x,z,u", "x,y,u"])),
        );

        let j = families::depth_lag(p).unwrap();
        let rep = profile(&j, &ProfileOptions::new(n_max)).unwrap();
        let min_j = primes(&r, &["x,z", "x,u", "y,z", "y,u"]);
        c.eq(&format!("c={p} astab(J)"), rep.astab, Some(1));
        c.eq(&format!("c={p} stable Ass(J)"), rep.ass_infinity().cloned(), Some(min_j.clone()));
        c.eq(&format!("c={p} Min(J)"), minimal_primes(&j).unwrap(), min_j);
        c.eq(&format!("c={p} dstab(J)"), rep.dstab, Some(p as usize + 1));
        let want: Vec<usize> = (1..=n_max).map(|n| if n <= p as usize { 2 } else { 1 }).collect();
        c.eq(&format!("c={p} depths(J)"), rep.depths(), want);
    }
}

fn property_suites(c: &mut Checks) {
    let limits = Limits::default();

    let two: Vec<(u64, bool)> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let i = common::random_ideal(&mut common::rng(seed), 2, 4, 5);
            let rep = profile(&i, &ProfileOptions::new(4).with_closure(true)).unwrap();
            (seed, rep.astab == Some(1) && rep.dstab == Some(1) && rep.astabbar == Some(1))
        })
        .collect();
    for (seed, ok) in two {
        c.check(ok, || format!("two variables, seed {seed}: an index differs from 1"));
    }

    let three: Vec<_> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let i = common::random_ideal(&mut common::rng(1_000 + seed), 3, 4, 3);
            let rep = profile(&i, &ProfileOptions::new(6).with_closure(true)).unwrap();
            (seed, i, rep)
        })
        .collect();
    let mut settled = 0;
    let mut candidates = Vec::new();
    for (seed, i, rep) in &three {
        match compare_indices(rep) {
            IndexComparison::Equal { .. } => settled += 1,
            IndexComparison::Unequal { astab, dstab } => c.failures.push(format!(
                "three variables, seed {seed}, {i}: astab {astab} != dstab {dstab}"
            )),
            IndexComparison::Inconclusive => {}
        }
        if let (Some(a), Some(b)) = (rep.astab, rep.astabbar) {
            if b > a {
                candidates.push(format!("{i} (astab {a}, astab-bar {b})"));
            }
        }
    }
    c.notes.push(format!("equal-index suite: {settled}/50 settled within horizon 6"));
    c.notes.push(format!(
        "astab-bar > astab candidates: {}",
        if candidates.is_empty() { "none".to_string() } else { candidates.join("; ") }
    ));

    let mut persistent = 0;
    let mut seed = 2_000u64;
    while persistent < 50 && seed < 4_000 {
        let i = common::random_ideal(&mut common::rng(seed), 3, 4, 3);
        if strong_persistence(&i, 5).unwrap().iter().all(|&b| b) {
            persistent += 1;
            let depths = depth_profile(&i, 5, &limits).unwrap();
            let s = seed;
            c.check(first_increase(&depths) == Monotonicity::NonIncreasing, || {
                format!("persistent seed {s}, {i}: depth profile {depths:?} increases")
            });
        }
        seed += 1;
    }
    c.check(persistent >= 50, || format!("only {persistent} persistent instances sampled"));

    let closure: Vec<_> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let i = common::random_ideal(&mut common::rng(3_000 + seed), 3, 4, 3);
            let d = closure_depth_profile(&i, 4, &limits).unwrap();
            (seed, i, d)
        })
        .collect();
    for (seed, i, d) in closure {
        c.check(first_increase(&d) == Monotonicity::NonIncreasing, || {
            format!("closure depth, seed {seed}, {i}: {d:?} increases")
        });
    }
}

fn oracle_mismatch(i: &MonomialIdeal) -> Option<String> {
    let betti = betti_table(i).unwrap();
    if betti != koszul_betti_oracle(i).unwrap() {
        return Some(format!("{i}: lcm-lattice and Koszul Betti numbers differ"));
    }
    let ass = associated_primes(i).unwrap();
    let n = i.nvars();
    for mask in 1u32..(1 << n) {
        let p = PrimeSupport::new((0..n).filter(|b| mask >> b & 1 == 1).collect());
        let witnessed = ass_witness(i, &p).unwrap().is_some();
        if witnessed != ass.contains(&p) {
            return Some(format!("{i}: prime {p:?} witness {witnessed}, decomposition {}", !witnessed));
        }
    }
    None
}

fn oracles(c: &mut Checks) {
    let mut instances: Vec<MonomialIdeal> = (1..=3).flat_map(|n| common::grid(n, 4, 3)).collect();
    let grid_len = instances.len();
    instances.extend((0..100u64).map(|seed| common::random_ideal(&mut common::rng(5_000 + seed), 4, 5, 3)));
    let mismatches: Vec<String> = instances.par_iter().filter_map(oracle_mismatch).collect();
    c.notes.push(format!("{grid_len} grid ideals plus 100 random four-variable ideals"));
    c.failures.extend(mismatches);
}

fn cross_route(c: &mut Checks) {
    let mut all = vec![families::squared_pairs(), families::path(), families::mixed()];
    for p in 1..=3 {
        all.push(families::closure_gap(p).unwrap());
    }
    for p in 2..=3 {
        all.push(families::ass_lag(p).unwrap());
        all.push(families::depth_lag(p).unwrap());
    }
    all.push(families::depth_index(3).unwrap());
    let bad: Vec<String> = all
        .par_iter()
        .flat_map_iter(|i| {
            (1..=3u64).filter_map(move |k| {
                let a = integral_closure(i, k).unwrap();
                let b = integral_closure(&i.power(k as usize).unwrap(), 1).unwrap();
                (a != b).then(|| format!("{i}, k={k}: routes differ"))
            })
        })
        .collect();
    c.failures.extend(bad);
}

type Criterion = (&'static str, Duration, fn(&mut Checks));

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("squared-pairs ideal, horizon 5", Duration::from_secs(10), squared_pairs),
        ("closure-gap family, c = 1..3", Duration::from_secs(180), closure_gap),
        ("path ideal, horizon 5", Duration::from_secs(10), path),
        ("mixed ideal, horizon 5", Duration::from_secs(10), mixed),
        ("Ass-lag / depth-lag pair, c = 2, 3", Duration::from_secs(300), lag_pair),
        ("random property suites", Duration::from_secs(600), property_suites),
        ("Betti and Ass oracle equivalence", Duration::from_secs(600), oracles),
        ("closure of powers vs closure scaling", Duration::from_secs(120), cross_route),
    ];
    let mut failed = 0;
    for (idx, (label, budget, run)) in criteria.iter().enumerate() {
        let mut checks = Checks::default();
        let start = Instant::now();
        run(&mut checks);
        let took = start.elapsed();
        if took > *budget {
            checks
                .failures
                .push(format!("runtime {took:.1?} exceeds {budget:?}"));
        }
        let verdict = if checks.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {}: {verdict}  {label}  ({took:.2?})", idx + 1);
        for note in &checks.notes {
            println!("    note: {note}");
        }
        for f in &checks.failures {
            println!("    {f}");
        }
        failed += usize::from(!checks.failures.is_empty());
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
