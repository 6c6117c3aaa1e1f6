//! Reproduction suite: one row per claimed value, computed from scratch.

use std::fmt::Debug;

use monostab_core::closure::{integral_closure_with, np_member};
use monostab_core::decomposition::{associated_primes, irreducible_decomposition, minimal_primes, potential_ass};
use monostab_core::families;
use monostab_core::resolution::depth_with;
use monostab_core::stability::{
    closure_depth_profile, compare_indices, depth_profile, first_increase, profile, strong_persistence,
    IndexComparison, Level, Monotonicity, ProfileOptions, StabilityReport,
};
use monostab_core::text::{parse_ideal, parse_ring};
use monostab_core::{Limits, Monomial, MonomialIdeal, NewtonSystem, PrimeSet, PrimeSupport, Result, Ring};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::report::format_primes;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub family: String,
    pub parameter: Option<u64>,
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

pub const RANDOM_INSTANCES: u64 = 50;

struct Table {
    rows: Vec<SuiteRow>,
    family: &'static str,
    parameter: Option<u64>,
}

impl Table {
    fn at(&mut self, family: &'static str, parameter: Option<u64>) {
        self.family = family;
        self.parameter = parameter;
    }

    fn row(&mut self, claim: impl Into<String>, expected: String, computed: String) {
        let pass = expected == computed;
        self.rows.push(SuiteRow {
            family: self.family.to_string(),
            parameter: self.parameter,
            claim: claim.into(),
            expected,
            computed,
            pass,
        });
    }

    fn debug<T: Debug>(&mut self, claim: impl Into<String>, expected: T, computed: T) {
        self.row(claim, format!("{expected:?}"), format!("{computed:?}"));
    }

    fn index(&mut self, claim: impl Into<String>, expected: usize, computed: Option<usize>) {
        self.row(claim, expected.to_string(), show_index(computed));
    }

    fn ideal(&mut self, claim: impl Into<String>, expected: &MonomialIdeal, computed: &MonomialIdeal) {
        self.row(claim, expected.to_string(), computed.to_string());
    }

    fn primes(&mut self, claim: impl Into<String>, ring: &Ring, expected: &PrimeSet, computed: Option<&PrimeSet>) {
        let computed = computed.map_or_else(|| "unsettled".to_string(), |s| format_primes(ring, s));
        self.row(claim, format_primes(ring, expected), computed);
    }
}

fn show_index(i: Option<usize>) -> String {
    i.map_or_else(|| "unsettled".to_string(), |k| k.to_string())
}

fn primes(ring: &Ring, sets: &[&str]) -> PrimeSet {
    sets.iter()
        .map(|s| PrimeSupport::from_names(ring, &s.split(',').collect::<Vec<_>>()).expect("known names"))
        .collect()
}

fn mono(e: &[u64]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn ideal_of(ring: &Ring, gens: &[Vec<u64>]) -> Result<MonomialIdeal> {
    MonomialIdeal::minimalize(ring, gens.iter().map(|g| Monomial::new(g.clone())))
}

fn level(report: &StabilityReport) -> String {
    report
        .astab_cert
        .as_ref()
        .map_or_else(|| "none".to_string(), |c| c.level.to_string())
}

/// Parameters and horizon override for a suite run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub c_values: Vec<u64>,
    pub horizon: Option<usize>,
    pub limits: Limits,
}

impl SuiteConfig {
    fn fixed_horizon(&self) -> usize {
        self.horizon.unwrap_or(6)
    }

    fn family_horizon(&self, c: u64) -> usize {
        self.horizon.unwrap_or(6.max(c as usize + 4))
    }

    fn opts(&self, horizon: usize) -> ProfileOptions {
        ProfileOptions::new(horizon).limits(self.limits)
    }
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<SuiteRow>> {
    let mut t = Table {
        rows: Vec::new(),
        family: "",
        parameter: None,
    };
    squared_pairs(&mut t, cfg)?;
    for &c in &cfg.c_values {
        if c >= 1 {
            closure_gap(&mut t, cfg, c)?;
        }
    }
    path(&mut t, cfg)?;
    mixed(&mut t, cfg)?;
    for &c in &cfg.c_values {
        if c >= 2 {
            ass_lag(&mut t, cfg, c)?;
            depth_lag(&mut t, cfg, c)?;
        }
    }
    t.at("depth_index", Some(3));
    let i = families::depth_index(3)?;
    let rep = profile(&i, &cfg.opts(cfg.fixed_horizon()))?;
    t.debug(
        "Ass index vs depth index",
        IndexComparison::Equal { index: 3 },
        compare_indices(&rep),
    );
    random_suites(&mut t, cfg)?;
    Ok(t.rows)
}

fn squared_pairs(t: &mut Table, cfg: &SuiteConfig) -> Result<()> {
    t.at("squared_pairs", None);
    let i = families::squared_pairs();
    let r = i.ring().clone();
    let n_max = cfg.fixed_horizon();
    let parsed = parse_ideal(&r, "x^2*y^2, x^2*z^2, y^2*z^2")?;
    t.ideal("minimal generators", &parsed, &i);

    let xy2 = mono(&[2, 2, 0]);
    for n in 2..=5usize {
        let z = mono(&[0, 0, 2 * n as u64]);
        let pair = ideal_of(&r, &[vec![2, 0, 0], vec![0, 2, 0]])?.power(n - 2)?;
        let want = i.power(n - 1)?.sum(&pair.scale(&z)?)?;
        t.ideal(format!("I^{n} : (xy)^2 = I^{} + z^{}(x^2,y^2)^{}", n - 1, 2 * n, n - 2), &want, &i.power(n)?.colon_monomial(&xy2)?);
    }
    for n in 2..=4 {
        t.ideal(format!("I^{n} : I = I^{}", n - 1), &i.power(n - 1)?, &i.power(n)?.colon_ideal(&i)?);
    }
    t.primes("Ass(I)", &r, &primes(&r, &["x,y", "x,z", "y,z"]), Some(&associated_primes(&i)?));
    let all4 = primes(&r, &["x,y", "x,z", "y,z", "x,y,z"]);
    t.primes("Ass(I^2)", &r, &all4, Some(&associated_primes(&i.power(2)?)?));
    t.primes("primes containing I", &r, &all4, Some(&potential_ass(&i)?));

    let sys = NewtonSystem::from_ideal(&i, 1)?;
    t.debug("x*y*z^2 integral over I", true, np_member(&[1, 1, 2], &sys));
    let want = ideal_of(
        &r,
        &[vec![2, 2, 0], vec![2, 0, 2], vec![0, 2, 2], vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]],
    )?;
    t.ideal("integral closure of I", &want, &integral_closure_with(&i, 1, &cfg.limits, Default::default())?);

    let rep = profile(&i, &cfg.opts(n_max).with_closure(true))?;
    t.index("astab", 2, rep.astab);
    t.index("astab-bar", 1, rep.astabbar);
    t.debug("Ass index vs depth index", IndexComparison::Equal { index: 2 }, compare_indices(&rep));
    t.debug(
        "strong persistence",
        vec![true; n_max - 1],
        strong_persistence(&i, n_max)?,
    );
    Ok(())
}

fn closure_gap(t: &mut Table, cfg: &SuiteConfig, c: u64) -> Result<()> {
    t.at("closure_gap", Some(c));
    let i = families::closure_gap(c)?;
    let r = i.ring().clone();
    let n_max = cfg.family_horizon(c);
    let a = 2 * c + 2;

    let sq = ideal_of(
        &r,
        &[
            vec![2 * a, 0, 0],
            vec![2, 4 * c, 2],
            vec![0, 2 * a, 2],
            vec![a + 1, 2 * c, 1],
            vec![a, a, 1],
            vec![1, 4 * c + 2, 2],
        ],
    )?;
    t.ideal("I^2", &sq, &i.power(2)?);
    for n in 2..=(c as usize + 3) {
        t.ideal(format!("I^{n} : I = I^{}", n - 1), &i.power(n - 1)?, &i.power(n)?.colon_ideal(&i)?);
    }
    let pure = mono(&[a, 0, 0]);
    for n in 2..=(c as usize + 1) {
        t.ideal(format!("I^{n} : x^{a} = I^{}", n - 1), &i.power(n - 1)?, &i.power(n)?.colon_monomial(&pure)?);
    }

    let comps = irreducible_decomposition(&i)?;
    let mut got: Vec<String> = comps.iter().map(|q| q.to_ideal(&r).to_string()).collect();
    got.sort();
    let mut want: Vec<String> = [vec![a, 0, 1], vec![1, a, 0], vec![a, 2 * c, 0]]
        .iter()
        .map(|e| {
            let gens: Vec<Vec<u64>> = (0..3)
                .filter(|&j| e[j] > 0)
                .map(|j| {
                    let mut g = vec![0; 3];
                    g[j] = e[j];
                    g
                })
                .collect();
            ideal_of(&r, &gens).map(|q| q.to_string())
        })
        .collect::<Result<_>>()?;
    want.sort();
    t.debug("irreducible components", want, got);

    let probe = mono(&[a, 2 * c + 1, 1]);
    t.debug(format!("x^{a}*y^{}*z in I^2", 2 * c + 1), false, i.power(2)?.contains(&probe));
    let sys2 = NewtonSystem::from_ideal(&i, 2)?;
    t.debug(
        format!("x^{a}*y^{}*z integral over I^2", 2 * c + 1),
        false,
        np_member(probe.exponents(), &sys2),
    );
    let witness = mono(&[a, (c + 1) * a - 1, c + 1]);
    let socle = i.power(c as usize + 2)?.colon_monomial(&witness)?;
    t.ideal(
        format!("I^{} : {} is the maximal ideal", c + 2, r.format_monomial(&witness)),
        &PrimeSupport::full(3).to_ideal(&r),
        &socle,
    );

    let extra: Vec<Vec<u64>> = (3..=2 * c + 1).map(|e| vec![e, a - e, 1]).collect();
    let want_cl = i.sum(&ideal_of(&r, &extra)?)?;
    let cl = integral_closure_with(&i, 1, &cfg.limits, Default::default())?;
    t.ideal("integral closure of I", &want_cl, &cl);

    let rep = profile(&i, &cfg.opts(n_max).with_closure(true))?;
    let depths: Vec<usize> = (1..=n_max).map(|n| usize::from(n <= c as usize + 1)).collect();
    t.debug("depth profile", depths, rep.depths());
    t.index("astab", c as usize + 2, rep.astab);
    t.row("astab certification", Level::Certified.to_string(), level(&rep));
    t.index("astab-bar", 2, rep.astabbar);
    t.primes(
        "Ass(closure of I)",
        &r,
        &primes(&r, &["x,z", "x,y"]),
        rep.records[0].closure_ass.as_ref(),
    );
    t.debug(
        "maximal ideal in Ass(closure of I^2)",
        true,
        rep.records[1]
            .closure_ass
            .as_ref()
            .is_some_and(|s| s.contains(&PrimeSupport::full(3))),
    );
    Ok(())
}

fn path(t: &mut Table, cfg: &SuiteConfig) -> Result<()> {
    t.at("path", None);
    let r = parse_ring("x,y,z,u")?;
    let i = families::path();
    t.ideal("parse `x*y, y*z, z*u`", &i, &parse_ideal(&r, "x*y, y*z, z*u")?);
    t.index("depth R/I", 2, Some(depth_with(&i, &cfg.limits)?));
    t.index("depth R/I^2", 1, Some(depth_with(&i.power(2)?, &cfg.limits)?));
    let n_max = cfg.fixed_horizon();
    let rep = profile(&i, &cfg.opts(n_max))?;
    t.index("astab", 1, rep.astab);
    t.index("dstab", 2, rep.dstab);
    let depths: Vec<usize> = (1..=n_max).map(|n| if n == 1 { 2 } else { 1 }).collect();
    t.debug("depth profile", depths, rep.depths());
    t.debug("depth monotonicity", Monotonicity::NonIncreasing, first_increase(&rep.depths()));
    Ok(())
}

fn mixed(t: &mut Table, cfg: &SuiteConfig) -> Result<()> {
    t.at("mixed", None);
    let i = families::mixed();
    let r = i.ring().clone();
    let n_max = cfg.fixed_horizon();
    let rep = profile(&i, &cfg.opts(n_max))?;
    t.index("astab", 2, rep.astab);
    t.index("dstab", 1, rep.dstab);
    t.debug("depth profile", vec![1; n_max], rep.depths());
    t.primes(
        "stable Ass",
        &r,
        &primes(&r, &["x,u", "z,u", "x,y,u", "x,z,u"]),
        rep.ass_infinity(),
    );
    Ok(())
}

fn ass_lag(t: &mut Table, cfg: &SuiteConfig, c: u64) -> Result<()> {
    t.at("ass_lag", Some(c));
    let i = families::ass_lag(c)?;
    let r = i.ring().clone();
    let rep = profile(&i, &cfg.opts(cfg.family_horizon(c)))?;
    t.primes(
        "Ass(I)",
        &r,
        &primes(&r, &["x,u", "z,u", "y,z,u", "x,y,u"]),
        Some(rep.ass_at(1)),
    );
    t.primes(
        "stable Ass",
        &r,
        &primes(&r, &["x,u", "z,u", "y,z,u", "x,z,u", "x,y,u"]),
        rep.ass_infinity(),
    );
    t.index("astab", c as usize + 1, rep.astab);
    t.index("dstab", 1, rep.dstab);
    Ok(())
}

fn depth_lag(t: &mut Table, cfg: &SuiteConfig, c: u64) -> Result<()> {
    t.at("depth_lag", Some(c));
    let j = families::depth_lag(c)?;
    let r = j.ring().clone();
    let n_max = cfg.family_horizon(c);
    let rep = profile(&j, &cfg.opts(n_max))?;
    let min = primes(&r, &["x,z", "x,u", "y,z", "y,u"]);
    t.primes("Min(J)", &r, &min, Some(&minimal_primes(&j)?));
    t.primes("stable Ass", &r, &min, rep.ass_infinity());
    t.index("astab", 1, rep.astab);
    t.index("dstab", c as usize + 1, rep.dstab);
    let depths: Vec<usize> = (1..=n_max).map(|n| if n <= c as usize { 2 } else { 1 }).collect();
    t.debug("depth profile", depths, rep.depths());
    t.debug(
        "strong persistence",
        vec![true; n_max - 1],
        strong_persistence(&j, n_max)?,
    );
    Ok(())
}

fn random_ideal(seed: u64, n: usize, max_gens: usize, max_exp: u64) -> MonomialIdeal {
    const NAMES: [&str; 3] = ["x", "y", "z"];
    let ring = Ring::new(&NAMES[..n]).expect("fixed names");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=max_gens);
    let gens: Vec<Monomial> = (0..k)
        .map(|_| loop {
            let e: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if e.iter().any(|&x| x > 0) {
                break Monomial::new(e);
            }
        })
        .collect();
    MonomialIdeal::minimalize(&ring, gens).expect("nonzero exponents")
}

fn count_line(ok: usize, total: usize) -> String {
    format!("{ok}/{total}")
}

fn random_suites(t: &mut Table, cfg: &SuiteConfig) -> Result<()> {
    let total = RANDOM_INSTANCES as usize;

    t.at("random_two_variable", None);
    let ok = (0..RANDOM_INSTANCES)
        .into_par_iter()
        .map(|seed| {
            let i = random_ideal(seed, 2, 4, 5);
            let rep = profile(&i, &cfg.opts(4).with_closure(true))?;
            Ok(rep.astab == Some(1) && rep.dstab == Some(1) && rep.astabbar == Some(1))
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&b| b)
        .count();
    t.row("all three indices equal 1", count_line(total, total), count_line(ok, total));

    t.at("random_three_variable", None);
    let verdicts = (0..RANDOM_INSTANCES)
        .into_par_iter()
        .map(|seed| Ok(compare_indices(&profile(&random_ideal(1_000 + seed, 3, 4, 3), &cfg.opts(6))?)))
        .collect::<Result<Vec<_>>>()?;
    let unequal = verdicts
        .iter()
        .filter(|v| matches!(v, IndexComparison::Unequal { .. }))
        .count();
    t.row("settled instances with astab != dstab", "0".into(), unequal.to_string());

    let mut persistent = Vec::new();
    let mut seed = 2_000;
    while persistent.len() < total && seed < 4_000 {
        let i = random_ideal(seed, 3, 4, 3);
        if strong_persistence(&i, 5)?.iter().all(|&b| b) {
            persistent.push(i);
        }
        seed += 1;
    }
    let increasing = persistent
        .par_iter()
        .map(|i| Ok(first_increase(&depth_profile(i, 5, &cfg.limits)?) != Monotonicity::NonIncreasing))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&b| b)
        .count();
    t.row(
        "persistent instances with increasing depth",
        format!("0 of {total}"),
        format!("{increasing} of {}", persistent.len()),
    );

    let increasing = (0..RANDOM_INSTANCES)
        .into_par_iter()
        .map(|seed| {
            let d = closure_depth_profile(&random_ideal(3_000 + seed, 3, 4, 3), 4, &cfg.limits)?;
            Ok(first_increase(&d) != Monotonicity::NonIncreasing)
        })
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .filter(|&b| b)
        .count();
    t.row(
        "closure depth increases, horizon 4",
        format!("0 of {total}"),
        format!("{increasing} of {total}"),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_instances_are_reproducible() {
        assert_eq!(random_ideal(7, 3, 4, 3), random_ideal(7, 3, 4, 3));
        assert!(random_ideal(7, 2, 4, 5).is_proper_nonzero());
    }

    #[test]
    fn horizons_default_by_parameter() {
        let cfg = SuiteConfig {
            c_values: vec![3],
            horizon: None,
            limits: Limits::default(),
        };
        assert_eq!(cfg.family_horizon(1), 6);
        assert_eq!(cfg.family_horizon(3), 7);
        assert_eq!(cfg.fixed_horizon(), 6);
    }
}
