//! Stability of associated primes and depth along the powers of an ideal.
//!
//! A profile is computed up to a horizon `N`. The index at which a profile
//! becomes constant on `[k, N]` is only *observed*; structural arguments
//! upgrade it to *certified*:
//!
//! * when `I^{n+1} : I = I^n` for every checked `n`, the chain `Ass(I^n)` is
//!   ascending, so once it contains every monomial prime over `I` it is final;
//! * with the same persistence, depth 0 (the maximal ideal is associated) is
//!   absorbing;
//! * `Ass` of the integral closures of powers always ascends, so reaching the
//!   set of all primes over `I` is final there without any persistence check;
//! * in at most three variables the Ass and depth indices coincide, and in at
//!   most two variables every index is 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closure::{integral_closure_with, Solver};
use crate::decomposition::{minimal_elements, potential_ass, DecompositionCache, PrimeSet, PrimeSupport};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::linalg::Field;
use crate::resolution::{depth_over, depth_with};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerRecord {
    pub n: usize,
    pub generators: usize,
    pub ass: PrimeSet,
    pub depth: usize,
    pub closure_ass: Option<PrimeSet>,
    pub closure_depth: Option<usize>,
    /// `I^{n+1} : I = I^n`; absent at the horizon.
    pub strong_persistence_at_n: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Observed,
    Conditional,
    Certified,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Observed => "observed",
            Level::Conditional => "conditional",
            Level::Certified => "certified",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certification {
    pub level: Level,
    pub reason: String,
}

impl Certification {
    fn new(level: Level, reason: impl Into<String>) -> Self {
        Certification {
            level,
            reason: reason.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub nvars: usize,
    pub horizon: usize,
    pub records: Vec<PowerRecord>,
    pub potential_ass: PrimeSet,
    pub min_primes: PrimeSet,
    pub height: usize,
    pub astab: Option<usize>,
    pub dstab: Option<usize>,
    pub astabbar: Option<usize>,
    pub astab_cert: Option<Certification>,
    pub dstab_cert: Option<Certification>,
    pub astabbar_cert: Option<Certification>,
}

impl StabilityReport {
    pub fn depths(&self) -> Vec<usize> {
        self.records.iter().map(|r| r.depth).collect()
    }

    pub fn closure_depths(&self) -> Option<Vec<usize>> {
        self.records.iter().map(|r| r.closure_depth).collect()
    }

    pub fn ass_at(&self, n: usize) -> &PrimeSet {
        &self.records[n - 1].ass
    }

    /// `Ass(I^N)`, the stable set when the Ass index settled.
    pub fn ass_infinity(&self) -> Option<&PrimeSet> {
        self.astab.map(|_| &self.records.last().unwrap().ass)
    }

    pub fn closure_ass_infinity(&self) -> Option<&PrimeSet> {
        self.astabbar
            .and_then(|_| self.records.last().unwrap().closure_ass.as_ref())
    }

    pub fn all_persistent(&self) -> bool {
        self.records
            .iter()
            .filter_map(|r| r.strong_persistence_at_n)
            .all(|b| b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfileOptions {
    pub horizon: usize,
    pub with_closure: bool,
    pub limits: Limits,
    pub solver: Solver,
    /// Coefficient field for depth computations.
    pub field: Field,
}

impl ProfileOptions {
    pub fn new(horizon: usize) -> Self {
        ProfileOptions {
            horizon,
            with_closure: false,
            limits: Limits::default(),
            solver: Solver::default(),
            field: Field::Rational,
        }
    }

    pub fn with_closure(mut self, on: bool) -> Self {
        self.with_closure = on;
        self
    }

    pub fn limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self
    }

    pub fn field(mut self, field: Field) -> Self {
        self.field = field;
        self
    }
}

/// Smallest `k < N` with `values[k-1..]` constant, or `None` if unsettled.
pub fn settled_index<T: PartialEq>(values: &[T]) -> Option<usize> {
    let last = values.last()?;
    let mut k = values.len();
    while k > 1 && values[k - 2] == *last {
        k -= 1;
    }
    (k < values.len()).then_some(k)
}

pub fn profile(ideal: &MonomialIdeal, opts: &ProfileOptions) -> Result<StabilityReport> {
    profile_streaming(ideal, opts, &mut |_| {})
}

/// Computes the profile, handing each record to `sink` as soon as it is done.
///
/// On a resource failure at power `n` the records for powers below `n` have
/// already been delivered; the error carries `n`.
pub fn profile_streaming(
    ideal: &MonomialIdeal,
    opts: &ProfileOptions,
    sink: &mut dyn FnMut(&PowerRecord),
) -> Result<StabilityReport> {
    if opts.horizon < 2 {
        return Err(Error::usage("profile horizon must be at least 2"));
    }
    ideal.require_proper_nonzero("stability profile")?;
    let n_vars = ideal.nvars();
    let potential = potential_ass(ideal)?;
    let min_primes = minimal_elements(&potential);
    let height = min_primes.iter().map(PrimeSupport::len).min().unwrap_or(0);
    let cache = DecompositionCache::new();

    let mut records = Vec::with_capacity(opts.horizon);
    let mut current = ideal.clone();
    for n in 1..=opts.horizon {
        let record = (|| -> Result<(PowerRecord, MonomialIdeal)> {
            let (next, (ass, (depth, closure))) = rayon::join(
                || current.multiply(ideal),
                || {
                    rayon::join(
                        || cache.associated_primes(&current),
                        || {
                            rayon::join(
                                || depth_over(&current, opts.field, &opts.limits),
                                || -> Result<Option<(PrimeSet, usize)>> {
                                    if !opts.with_closure {
                                        return Ok(None);
                                    }
                                    let cl = integral_closure_with(ideal, n as u64, &opts.limits, opts.solver)?;
                                    Ok(Some((cache.associated_primes(&cl)?, depth_over(&cl, opts.field, &opts.limits)?)))
                                },
                            )
                        },
                    )
                },
            );
            let next = next?;
            let persistence = if n < opts.horizon {
                Some(next.colon_ideal(ideal)? == current)
            } else {
                None
            };
            let closure = closure?;
            Ok((
                PowerRecord {
                    n,
                    generators: current.gens().len(),
                    ass: ass?,
                    depth: depth?,
                    closure_ass: closure.as_ref().map(|c| c.0.clone()),
                    closure_depth: closure.map(|c| c.1),
                    strong_persistence_at_n: persistence,
                },
                next,
            ))
        })()
        .map_err(|e| e.at_power(n))?;
        sink(&record.0);
        records.push(record.0);
        current = record.1;
    }

    let ass_seq: Vec<&PrimeSet> = records.iter().map(|r| &r.ass).collect();
    let depth_seq: Vec<usize> = records.iter().map(|r| r.depth).collect();
    let astab = settled_index(&ass_seq);
    let dstab = settled_index(&depth_seq);
    let astabbar = if opts.with_closure {
        let seq: Vec<&PrimeSet> = records.iter().map(|r| r.closure_ass.as_ref().unwrap()).collect();
        settled_index(&seq)
    } else {
        None
    };

    let mut report = StabilityReport {
        nvars: n_vars,
        horizon: opts.horizon,
        records,
        potential_ass: potential,
        min_primes,
        height,
        astab,
        dstab,
        astabbar,
        astab_cert: None,
        dstab_cert: None,
        astabbar_cert: None,
    };
    certify(&mut report);
    Ok(report)
}

fn certify(report: &mut StabilityReport) {
    let n = report.nvars;
    let persistent = report.all_persistent();
    let principal = report.records[0].generators == 1;
    let full = PrimeSupport::full(n);
    let mut ceiling_small = report.min_primes.clone();
    ceiling_small.insert(full.clone());

    report.astab_cert = report.astab.map(|k| {
        let ass = report.ass_at(k);
        if n <= 2 && k == 1 {
            Certification::new(Level::Certified, "at most two variables: every index is 1")
        } else if principal && k == 1 {
            Certification::new(Level::Certified, "principal ideal: every power is principal")
        } else if persistent && *ass == report.potential_ass {
            Certification::new(
                Level::Certified,
                "ascending under strong persistence and equal to all primes over I",
            )
        } else if persistent && n == 3 && report.height >= 2 && *ass == ceiling_small {
            Certification::new(
                Level::Certified,
                "three variables, height >= 2: ascending and equal to Min(I) plus the maximal ideal",
            )
        } else if persistent {
            Certification::new(
                Level::Conditional,
                "ascending through the horizon; later growth not excluded",
            )
        } else {
            Certification::new(Level::Observed, "constant over the window only")
        }
    });

    report.dstab_cert = report.dstab.map(|k| {
        let depth = report.records[k - 1].depth;
        let astab_certified = report
            .astab_cert
            .as_ref()
            .is_some_and(|c| c.level == Level::Certified);
        if n <= 2 && k == 1 {
            Certification::new(Level::Certified, "at most two variables: every index is 1")
        } else if principal && k == 1 {
            Certification::new(Level::Certified, "principal ideal: every power is principal")
        } else if depth == 0 && persistent {
            Certification::new(Level::Certified, "depth 0 is absorbing under strong persistence")
        } else if n <= 3 && astab_certified && report.astab == Some(k) {
            Certification::new(
                Level::Certified,
                "at most three variables: equals the certified Ass index",
            )
        } else if persistent {
            Certification::new(
                Level::Conditional,
                "constant through the horizon under strong persistence",
            )
        } else {
            Certification::new(Level::Observed, "constant over the window only")
        }
    });

    report.astabbar_cert = report.astabbar.map(|k| {
        let ass = report.records[k - 1].closure_ass.as_ref().unwrap();
        if n <= 2 && k == 1 {
            Certification::new(Level::Certified, "at most two variables: every index is 1")
        } else if *ass == report.potential_ass {
            Certification::new(
                Level::Certified,
                "closure chain ascends and equals all primes over I",
            )
        } else {
            Certification::new(Level::Observed, "constant over the window only")
        }
    });
}

/// `I^{n+1} : I = I^n` for `n = 1..N-1`.
pub fn strong_persistence(ideal: &MonomialIdeal, horizon: usize) -> Result<Vec<bool>> {
    if horizon < 2 {
        return Err(Error::usage("persistence horizon must be at least 2"));
    }
    let mut flags = Vec::with_capacity(horizon - 1);
    let mut current = ideal.clone();
    for _ in 1..horizon {
        let next = current.multiply(ideal)?;
        flags.push(next.colon_ideal(ideal)? == current);
        current = next;
    }
    Ok(flags)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Monotonicity {
    NonIncreasing,
    /// `depth(n) > depth(n - 1)`.
    ViolationAt { n: usize },
}

pub fn depth_profile(ideal: &MonomialIdeal, horizon: usize, limits: &Limits) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(horizon);
    let mut current = ideal.clone();
    for n in 1..=horizon {
        out.push(depth_with(&current, limits).map_err(|e| e.at_power(n))?);
        if n < horizon {
            current = current.multiply(ideal)?;
        }
    }
    Ok(out)
}

pub fn closure_depth_profile(ideal: &MonomialIdeal, horizon: usize, limits: &Limits) -> Result<Vec<usize>> {
    (1..=horizon)
        .map(|n| {
            integral_closure_with(ideal, n as u64, limits, Solver::default())
                .and_then(|cl| depth_with(&cl, limits))
                .map_err(|e| e.at_power(n))
        })
        .collect()
}

pub fn first_increase(values: &[usize]) -> Monotonicity {
    match values.windows(2).position(|w| w[1] > w[0]) {
        Some(i) => Monotonicity::ViolationAt { n: i + 2 },
        None => Monotonicity::NonIncreasing,
    }
}

/// Scans the depth profile (or the closure depth profile) for an increase.
pub fn depth_monotonicity(
    ideal: &MonomialIdeal,
    horizon: usize,
    on_closure: bool,
    limits: &Limits,
) -> Result<Monotonicity> {
    if horizon < 2 {
        return Err(Error::usage("monotonicity horizon must be at least 2"));
    }
    let values = if on_closure {
        closure_depth_profile(ideal, horizon, limits)?
    } else {
        depth_profile(ideal, horizon, limits)?
    };
    Ok(first_increase(&values))
}

/// True iff all three indices are observed as 1 for a two-variable ideal.
pub fn dim2_check(ideal: &MonomialIdeal, horizon: usize, limits: &Limits) -> Result<bool> {
    if ideal.nvars() != 2 {
        return Err(Error::usage("dim2 check needs a ring with two variables"));
    }
    let report = profile(ideal, &ProfileOptions::new(horizon).with_closure(true).limits(*limits))?;
    Ok(report.astab == Some(1) && report.dstab == Some(1) && report.astabbar == Some(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum IndexComparison {
    Equal { index: usize },
    Unequal { astab: usize, dstab: usize },
    Inconclusive,
}

/// Compares the Ass and depth indices of a three-variable ideal.
pub fn dim3_astab_eq_dstab_check(
    ideal: &MonomialIdeal,
    horizon: usize,
    limits: &Limits,
) -> Result<IndexComparison> {
    if ideal.nvars() != 3 {
        return Err(Error::usage("dim3 check needs a ring with three variables"));
    }
    let report = profile(ideal, &ProfileOptions::new(horizon).limits(*limits))?;
    Ok(compare_indices(&report))
}

pub fn compare_indices(report: &StabilityReport) -> IndexComparison {
    match (report.astab, report.dstab) {
        (Some(a), Some(d)) if a == d => IndexComparison::Equal { index: a },
        (Some(a), Some(d)) => IndexComparison::Unequal { astab: a, dstab: d },
        _ => IndexComparison::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_ideal, parse_ring};

    #[test]
    fn settled_index_windows() {
        assert_eq!(settled_index(&[2, 1, 1, 1, 1]), Some(2));
        assert_eq!(settled_index(&[1, 1, 1]), Some(1));
        assert_eq!(settled_index(&[1, 2, 3]), None);
        assert_eq!(settled_index(&[3, 3, 2]), None);
        assert_eq!(settled_index::<u8>(&[]), None);
    }

    #[test]
    fn monotonicity_scan() {
        assert_eq!(first_increase(&[2, 1, 1, 0]), Monotonicity::NonIncreasing);
        assert_eq!(first_increase(&[0, 1, 1, 0]), Monotonicity::ViolationAt { n: 2 });
    }

    #[test]
    fn squared_pairs_profile() {
        let r = parse_ring("x,y,z").unwrap();
        let i = parse_ideal(&r, "x^2*y^2, x^2*z^2, y^2*z^2").unwrap();
        let rep = profile(&i, &ProfileOptions::new(5).with_closure(true)).unwrap();
        assert_eq!(rep.astab, Some(2));
        assert_eq!(rep.astabbar, Some(1));
        assert_eq!(rep.dstab, Some(2));
        assert!(rep.all_persistent());
        assert_eq!(rep.astab_cert.as_ref().unwrap().level, Level::Certified);
        assert_eq!(rep.astabbar_cert.as_ref().unwrap().level, Level::Certified);
        assert_eq!(rep.dstab_cert.as_ref().unwrap().level, Level::Certified);
        assert_eq!(strong_persistence(&i, 5).unwrap(), vec![true; 4]);
    }

    #[test]
    fn path_ideal_profile() {
        let r = parse_ring("x,y,z,u").unwrap();
        let i = parse_ideal(&r, "x*y, y*z, z*u").unwrap();
        let rep = profile(&i, &ProfileOptions::new(5)).unwrap();
        assert_eq!(rep.astab, Some(1));
        assert_eq!(rep.dstab, Some(2));
        assert_eq!(rep.depths(), vec![2, 1, 1, 1, 1]);
        assert_eq!(
            depth_monotonicity(&i, 5, false, &Limits::default()).unwrap(),
            Monotonicity::NonIncreasing
        );
    }

    #[test]
    fn principal_persistence() {
        let r = parse_ring("x,y").unwrap();
        let x = parse_ideal(&r, "x").unwrap();
        assert_eq!(strong_persistence(&x, 4).unwrap(), vec![true; 3]);
        assert!(dim2_check(&x, 4, &Limits::default()).unwrap());
        assert!(dim2_check(&parse_ideal(&r, "x^2*y, x*y^3").unwrap(), 4, &Limits::default()).unwrap());
        assert!(dim2_check(&parse_ideal(&r, "x^5").unwrap(), 4, &Limits::default()).unwrap());
    }

    #[test]
    fn dimension_guards() {
        let r = parse_ring("x,y,z").unwrap();
        let i = parse_ideal(&r, "x*y").unwrap();
        assert!(dim2_check(&i, 3, &Limits::default()).is_err());
        let r2 = parse_ring("x,y").unwrap();
        assert!(dim3_astab_eq_dstab_check(&parse_ideal(&r2, "x").unwrap(), 3, &Limits::default()).is_err());
        assert!(profile(&i, &ProfileOptions::new(1)).is_err());
    }

    #[test]
    fn depth_index_family() {
        let r = parse_ring("x,y,z").unwrap();
        let t = 3u64;
        let i = MonomialIdeal::from_exponents(&r, &[&[t, 0, 0], &[1, t - 2, 1], &[0, t - 1, 1]]).unwrap();
        assert_eq!(
            dim3_astab_eq_dstab_check(&i, 6, &Limits::default()).unwrap(),
            IndexComparison::Equal { index: 3 }
        );
    }

    #[test]
    fn streaming_delivers_in_order() {
        let r = parse_ring("x,y,z").unwrap();
        let i = parse_ideal(&r, "x^2*y^2, x^2*z^2, y^2*z^2").unwrap();
        let mut seen = Vec::new();
        profile_streaming(&i, &ProfileOptions::new(4), &mut |rec| seen.push(rec.n)).unwrap();
        assert_eq!(seen, vec![1, 2, 3, 4]);
    }

    #[test]
    fn resource_failure_names_power() {
        let r = parse_ring("x,y,z").unwrap();
        let i = parse_ideal(&r, "x^3*y, y^3*z, z^3*x").unwrap();
        let tight = Limits {
            closure_box: 1_500,
            ..Limits::default()
        };
        let mut delivered = 0;
        let err = profile_streaming(
            &i,
            &ProfileOptions::new(5).with_closure(true).limits(tight),
            &mut |_| delivered += 1,
        )
        .unwrap_err();
        assert!(err.is_limit());
        match err {
            Error::AtPower { power, .. } => assert_eq!((power, delivered), (4, 3)),
            e => panic!("{e:?}"),
        }
    }
}
