//! Integral closure of powers of monomial ideals via the Newton polyhedron.
//!
//! `x^v` lies in the integral closure of `I^k` iff `v` lies in `k · NP(I)`,
//! i.e. there are `λ_i >= 0` with `Σ λ_i = k` and `Σ λ_i a_i <= v`. Because
//! every `a_i` is nonnegative, this holds iff the LP `max Σ λ_i` subject to
//! `Σ λ_i a_i <= v, λ >= 0` has optimum at least `k` (scale a solution down).
//! The origin is feasible for that LP, so no phase one is needed.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::ring::Monomial;

/// The scaled Newton polyhedron `k · (conv(a_1..a_m) + R^n_{>=0})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonSystem {
    gens: Vec<Vec<u64>>,
    scale: u64,
}

/// Exact feasibility method for membership tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Solver {
    #[default]
    Simplex,
    FourierMotzkin,
}

impl NewtonSystem {
    pub fn new(gens: Vec<Vec<u64>>, scale: u64) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::usage("a Newton system needs at least one generator"));
        }
        if scale == 0 {
            return Err(Error::usage("Newton system scale must be positive"));
        }
        let n = gens[0].len();
        if gens.iter().any(|g| g.len() != n) {
            return Err(Error::usage("generators of different lengths"));
        }
        Ok(NewtonSystem { gens, scale })
    }

    pub fn from_ideal(ideal: &MonomialIdeal, scale: u64) -> Result<Self> {
        Self::new(
            ideal.gens().iter().map(|g| g.exponents().to_vec()).collect(),
            scale,
        )
    }

    pub fn nvars(&self) -> usize {
        self.gens[0].len()
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.gens
    }

    pub fn contains(&self, v: &[u64], solver: Solver) -> bool {
        assert_eq!(v.len(), self.nvars(), "dimension mismatch");
        // Quick accept: v dominates a scaled vertex.
        if self
            .gens
            .iter()
            .any(|g| g.iter().zip(v).all(|(&a, &b)| (a as u128) * (self.scale as u128) <= b as u128))
        {
            return true;
        }
        match solver {
            Solver::Simplex => simplex_member(&self.gens, v, self.scale),
            Solver::FourierMotzkin => fm_member(&self.gens, v, self.scale),
        }
    }
}

/// Exact membership of `v` in the scaled Newton polyhedron.
pub fn np_member(v: &[u64], sys: &NewtonSystem) -> bool {
    sys.contains(v, Solver::default())
}

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Primal simplex with Bland's rule on `max Σλ` s.t. `Aᵀλ + s = v`.
fn simplex_member(gens: &[Vec<u64>], v: &[u64], k: u64) -> bool {
    let m = gens.len();
    let n = v.len();
    let cols = m + n;
    // rows: n constraint rows; each row = coefficients over (λ, s) and rhs.
    let mut tab: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            let mut row: Vec<BigRational> = gens.iter().map(|g| rat(g[j])).collect();
            row.extend((0..n).map(|t| if t == j { BigRational::one() } else { BigRational::zero() }));
            row.push(rat(v[j]));
            row
        })
        .collect();
    // Reduced costs for maximizing Σλ: objective row z - Σλ = 0.
    let mut obj: Vec<BigRational> = (0..cols)
        .map(|c| if c < m { -BigRational::one() } else { BigRational::zero() })
        .collect();
    obj.push(BigRational::zero());
    let mut basis: Vec<usize> = (m..m + n).collect();
    let target = rat(k);

    loop {
        if obj[cols] >= target {
            return true;
        }
        let Some(enter) = (0..cols).find(|&c| obj[c].is_negative()) else {
            return false;
        };
        // Ratio test, ties broken by smallest basis index (Bland).
        let mut leave: Option<(usize, BigRational)> = None;
        for (r, row) in tab.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &row[cols] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
        }
        let Some((pr, _)) = leave else {
            // Unbounded: a zero generator column.
            return true;
        };
        let piv = tab[pr][enter].clone();
        for x in tab[pr].iter_mut() {
            *x = &*x / &piv;
        }
        let pivot_row = tab[pr].clone();
        for (r, row) in tab.iter_mut().enumerate() {
            if r != pr && !row[enter].is_zero() {
                let f = row[enter].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * p;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for (x, p) in obj.iter_mut().zip(&pivot_row) {
                *x -= &f * p;
            }
        }
        basis[pr] = enter;
    }
}

/// Integer inequality `coef · λ <= rhs`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Ineq {
    coef: Vec<BigInt>,
    rhs: BigInt,
}

impl Ineq {
    fn normalized(mut self) -> Self {
        let g = self
            .coef
            .iter()
            .chain(std::iter::once(&self.rhs))
            .fold(BigInt::zero(), |g, x| g.gcd(x));
        if g > BigInt::one() {
            for c in &mut self.coef {
                *c = &*c / &g;
            }
            self.rhs = &self.rhs / &g;
        }
        self
    }
}

/// Keeps, for each coefficient vector, only the tightest right-hand side.
fn prune_dominated(rows: Vec<Ineq>) -> Vec<Ineq> {
    let mut rows: Vec<Ineq> = rows.into_iter().map(Ineq::normalized).collect();
    rows.sort();
    let mut out: Vec<Ineq> = Vec::with_capacity(rows.len());
    for r in rows {
        match out.last() {
            Some(last) if last.coef == r.coef => {}
            _ => out.push(r),
        }
    }
    out
}

/// Fourier-Motzkin elimination over the λ variables in index order.
fn fm_member(gens: &[Vec<u64>], v: &[u64], k: u64) -> bool {
    let m = gens.len();
    let n = v.len();
    let mut rows: Vec<Ineq> = Vec::new();
    for j in 0..n {
        rows.push(Ineq {
            coef: gens.iter().map(|g| BigInt::from(g[j])).collect(),
            rhs: BigInt::from(v[j]),
        });
    }
    for i in 0..m {
        let mut coef = vec![BigInt::zero(); m];
        coef[i] = -BigInt::one();
        rows.push(Ineq { coef, rhs: BigInt::zero() });
    }
    rows.push(Ineq {
        coef: vec![-BigInt::one(); m],
        rhs: -BigInt::from(k),
    });

    for var in 0..m {
        rows = prune_dominated(rows);
        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            if r.coef[var].is_positive() {
                pos.push(r);
            } else if r.coef[var].is_negative() {
                neg.push(r);
            } else {
                zero.push(r);
            }
        }
        for p in &pos {
            for q in &neg {
                let a = -&q.coef[var];
                let b = p.coef[var].clone();
                let coef: Vec<BigInt> = p
                    .coef
                    .iter()
                    .zip(&q.coef)
                    .map(|(x, y)| &a * x + &b * y)
                    .collect();
                zero.push(Ineq {
                    coef,
                    rhs: &a * &p.rhs + &b * &q.rhs,
                });
            }
        }
        rows = zero;
    }
    rows.iter().all(|r| !r.rhs.is_negative())
}

/// Visits every point of the box `0 <= v <= bound` of total degree `d`.
fn for_each_of_degree(bound: &[u64], d: u64, f: &mut dyn FnMut(&[u64])) {
    fn rec(bound: &[u64], suffix_cap: &[u64], i: usize, left: u64, cur: &mut Vec<u64>, f: &mut dyn FnMut(&[u64])) {
        if i == bound.len() {
            if left == 0 {
                f(cur);
            }
            return;
        }
        let lo = left.saturating_sub(suffix_cap[i + 1]);
        let hi = bound[i].min(left);
        for e in lo..=hi {
            cur[i] = e;
            rec(bound, suffix_cap, i + 1, left - e, cur, f);
        }
    }
    let mut suffix_cap = vec![0u64; bound.len() + 1];
    for i in (0..bound.len()).rev() {
        suffix_cap[i] = suffix_cap[i + 1] + bound[i];
    }
    let mut cur = vec![0u64; bound.len()];
    rec(bound, &suffix_cap, 0, d, &mut cur, f);
}

pub fn integral_closure(ideal: &MonomialIdeal, k: u64) -> Result<MonomialIdeal> {
    integral_closure_with(ideal, k, &Limits::default(), Solver::default())
}

/// Minimal generators of the integral closure of `I^k`.
///
/// Walks the box `0 <= v_j <= k · max_i a_ij` in graded order, skipping points
/// that are multiples of generators already found. Every point outside that box
/// reduces to one inside it, so no minimal generator is missed.
pub fn integral_closure_with(
    ideal: &MonomialIdeal,
    k: u64,
    limits: &Limits,
    solver: Solver,
) -> Result<MonomialIdeal> {
    if ideal.is_zero() {
        return Err(Error::usage("integral closure of the zero ideal"));
    }
    if k == 0 {
        return Err(Error::usage("integral closure power must be positive"));
    }
    if ideal.is_unit() {
        return Ok(ideal.clone());
    }
    let sys = NewtonSystem::from_ideal(ideal, k)?;
    let bound: Vec<u64> = ideal
        .max_exponents()
        .exponents()
        .iter()
        .map(|&e| e.checked_mul(k).ok_or_else(|| Error::Overflow(format!("box bound {e} * {k}"))))
        .collect::<Result<_>>()?;
    let volume = bound
        .iter()
        .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128 + 1))
        .unwrap_or(u128::MAX);
    if volume > limits.closure_box {
        return Err(Error::limit(format!(
            "integral closure box has {volume} points (cap {})",
            limits.closure_box
        )));
    }
    let max_degree: u64 = bound.iter().sum();
    let mut found: Vec<Monomial> = Vec::new();
    for d in 0..=max_degree {
        let mut fresh = Vec::new();
        for_each_of_degree(&bound, d, &mut |v| {
            if found.iter().any(|g| g.exponents().iter().zip(v).all(|(a, b)| a <= b)) {
                return;
            }
            if sys.contains(v, solver) {
                fresh.push(Monomial::new(v.to_vec()));
            }
        });
        found.extend(fresh);
    }
    MonomialIdeal::minimalize(ideal.ring(), found)
}

/// Compares `closure((f) J, k)` with `f^k · closure(J, k)`.
pub fn closure_scaling_check(f: &Monomial, j: &MonomialIdeal, k: u64) -> Result<bool> {
    let lhs = integral_closure(&j.scale(f)?, k)?;
    let rhs = integral_closure(j, k)?.scale(&f.checked_pow(k)?)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_ideal, parse_ring};
    use crate::Ring;

    fn xyz() -> Ring {
        parse_ring("x,y,z").unwrap()
    }

    fn closure_gap(r: &Ring, c: u64) -> MonomialIdeal {
        MonomialIdeal::from_exponents(r, &[&[2 * c + 2, 0, 0], &[1, 2 * c, 1], &[0, 2 * c + 2, 1]])
            .unwrap()
    }

    #[test]
    fn membership_examples() {
        let r = xyz();
        let sq = parse_ideal(&r, "x^2*y^2, x^2*z^2, y^2*z^2").unwrap();
        let sys = NewtonSystem::from_ideal(&sq, 1).unwrap();
        for solver in [Solver::Simplex, Solver::FourierMotzkin] {
            assert!(sys.contains(&[2, 2, 0], solver));
            assert!(sys.contains(&[1, 1, 2], solver));
            assert!(!sys.contains(&[1, 1, 1], solver));
        }
        let c = 2;
        let sys2 = NewtonSystem::from_ideal(&closure_gap(&r, c), 2).unwrap();
        for solver in [Solver::Simplex, Solver::FourierMotzkin] {
            assert!(!sys2.contains(&[2 * c + 2, 2 * c + 1, 1], solver));
        }
    }

    #[test]
    fn facet_points_are_members() {
        // v = (a + b) / 2 lies on a segment of the polyhedron's boundary.
        let sys = NewtonSystem::new(vec![vec![4, 0], vec![0, 4]], 1).unwrap();
        for solver in [Solver::Simplex, Solver::FourierMotzkin] {
            assert!(sys.contains(&[2, 2], solver));
            assert!(sys.contains(&[1, 3], solver));
            assert!(!sys.contains(&[1, 2], solver));
        }
    }

    #[test]
    fn closure_of_squared_pairs() {
        let r = xyz();
        let sq = parse_ideal(&r, "x^2*y^2, x^2*z^2, y^2*z^2").unwrap();
        let expected = parse_ideal(&r, "x^2*y^2, x^2*z^2, y^2*z^2, x*y*z^2, x*y^2*z, x^2*y*z").unwrap();
        assert_eq!(integral_closure(&sq, 1).unwrap(), expected);
    }

    #[test]
    fn closure_of_gap_family() {
        let r = xyz();
        let c = 2;
        let i = closure_gap(&r, c);
        let extra = parse_ideal(&r, "x^3*y^3*z, x^4*y^2*z, x^5*y*z").unwrap();
        assert_eq!(integral_closure(&i, 1).unwrap(), i.sum(&extra).unwrap());
    }

    #[test]
    fn principal_closure() {
        let r = xyz();
        let p = parse_ideal(&r, "x^3").unwrap();
        for k in 1..=4 {
            assert_eq!(
                integral_closure(&p, k).unwrap(),
                MonomialIdeal::principal(&r, r.var_power(0, 3 * k)).unwrap()
            );
        }
    }

    #[test]
    fn scaling_checks() {
        let r = xyz();
        let f = Monomial::new(vec![1, 0, 0]);
        assert!(closure_scaling_check(&f, &parse_ideal(&r, "y, z").unwrap(), 2).unwrap());
        let sq = parse_ideal(&r, "x^2*y^2, x^2*z^2, y^2*z^2").unwrap();
        let xy = Monomial::new(vec![1, 1, 0]);
        // Both sides computed independently.
        let lhs = integral_closure(&sq.scale(&xy).unwrap(), 1).unwrap();
        let rhs = integral_closure(&sq, 1).unwrap().scale(&xy).unwrap();
        assert_eq!(lhs, rhs);
        assert!(closure_scaling_check(&xy, &sq, 1).unwrap());
        assert!(closure_scaling_check(&r.one(), &sq, 2).unwrap());
    }

    #[test]
    fn closure_box_guard() {
        let r = xyz();
        let i = parse_ideal(&r, "x^50, y^50, z^50").unwrap();
        let tight = Limits {
            closure_box: 1000,
            ..Limits::default()
        };
        assert!(matches!(
            integral_closure_with(&i, 1, &tight, Solver::Simplex),
            Err(Error::Limit(_))
        ));
    }

    #[test]
    fn generators_are_minimal() {
        let r = xyz();
        let i = closure_gap(&r, 1);
        for k in 1..=3 {
            let cl = integral_closure(&i, k).unwrap();
            let sys = NewtonSystem::from_ideal(&i, k).unwrap();
            for g in cl.gens() {
                assert!(sys.contains(g.exponents(), Solver::FourierMotzkin));
                for j in g.support() {
                    let mut w = g.exponents().to_vec();
                    w[j] -= 1;
                    assert!(!np_member(&w, &sys), "{g:?} not minimal at {j}");
                }
            }
        }
    }
}
