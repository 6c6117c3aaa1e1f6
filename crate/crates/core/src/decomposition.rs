//! Irreducible decomposition of monomial ideals, associated and minimal primes.
//!
//! Every monomial ideal is the irredundant intersection of irreducible ideals
//! `(x_i^{a_i} : i ∈ S)`, uniquely. The supports `S` of those components are
//! exactly the associated primes.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::{Monomial, Ring};

/// A monomial prime, given by the sorted indices of its variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeSupport(Vec<usize>);

impl PrimeSupport {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        PrimeSupport(vars)
    }

    /// The maximal ideal `(x_1, ..., x_n)`.
    pub fn full(n: usize) -> Self {
        PrimeSupport((0..n).collect())
    }

    /// Parses names like `["x", "z"]` against a ring.
    pub fn from_names<S: AsRef<str>>(ring: &Ring, names: &[S]) -> Result<Self> {
        let vars = names
            .iter()
            .map(|n| {
                ring.index_of(n.as_ref())
                    .ok_or_else(|| Error::usage(format!("unknown variable {:?}", n.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        if vars.is_empty() {
            return Err(Error::usage("a prime support needs at least one variable"));
        }
        Ok(PrimeSupport::new(vars))
    }

    pub fn vars(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_var(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &PrimeSupport) -> bool {
        self.0.iter().all(|&i| other.contains_var(i))
    }

    pub fn is_full(&self, n: usize) -> bool {
        self.0.len() == n
    }

    pub fn to_ideal(&self, ring: &Ring) -> MonomialIdeal {
        MonomialIdeal::prime(ring, &self.0)
    }

    pub fn names(&self, ring: &Ring) -> Vec<String> {
        self.0.iter().map(|&i| ring.names()[i].clone()).collect()
    }

    pub fn format(&self, ring: &Ring) -> String {
        format!("({})", self.names(ring).join(","))
    }
}

impl fmt::Debug for PrimeSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{:?}", self.0)
    }
}

pub type PrimeSet = BTreeSet<PrimeSupport>;

/// An irreducible monomial ideal `(x_i^{a_i} : i ∈ S)`.
///
/// Stored as a full exponent vector where 0 marks a variable outside `S`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IrreducibleComponent(Vec<u64>);

impl IrreducibleComponent {
    pub fn new(exps: Vec<u64>) -> Self {
        IrreducibleComponent(exps)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.0.iter().enumerate().filter(|(_, &a)| a > 0).map(|(i, &a)| (i, a))
    }

    pub fn support(&self) -> PrimeSupport {
        PrimeSupport(self.entries().map(|(i, _)| i).collect())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.entries().any(|(i, a)| m.exponents()[i] >= a)
    }

    /// `self ⊆ other`, decided on the exponent maps.
    pub fn is_subset(&self, other: &IrreducibleComponent) -> bool {
        self.entries().all(|(i, a)| {
            let b = other.0[i];
            b > 0 && b <= a
        })
    }

    pub fn to_ideal(&self, ring: &Ring) -> MonomialIdeal {
        MonomialIdeal::from_trusted(ring, self.entries().map(|(i, a)| ring.var_power(i, a)).collect())
    }

    pub fn format(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self
            .entries()
            .map(|(i, a)| ring.format_monomial(&ring.var_power(i, a)))
            .collect();
        format!("({})", parts.join(", "))
    }
}

impl fmt::Debug for IrreducibleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{:?}", self.0)
    }
}

/// Keeps only inclusion-minimal components.
fn prune(mut comps: Vec<IrreducibleComponent>) -> Vec<IrreducibleComponent> {
    comps.sort_unstable();
    comps.dedup();
    let mut keep = vec![true; comps.len()];
    for i in 0..comps.len() {
        for j in 0..comps.len() {
            if i != j && keep[j] && comps[j].is_subset(&comps[i]) {
                keep[i] = false;
                break;
            }
        }
    }
    comps
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

fn split(ideal: MonomialIdeal, memo: &mut HashMap<MonomialIdeal, Vec<IrreducibleComponent>>) -> Vec<IrreducibleComponent> {
    if let Some(hit) = memo.get(&ideal) {
        return hit.clone();
    }
    let pivot = ideal.gens().iter().position(|g| g.support_size() > 1);
    let result = match pivot {
        None => {
            let mut exps = vec![0; ideal.nvars()];
            for g in ideal.gens() {
                let (i, &a) = g
                    .exponents()
                    .iter()
                    .enumerate()
                    .find(|(_, &a)| a > 0)
                    .expect("proper ideal has no constant generator");
                exps[i] = a;
            }
            vec![IrreducibleComponent(exps)]
        }
        Some(p) => {
            let g = &ideal.gens()[p];
            let i = g.support().next().expect("non-constant generator");
            let u = ideal.ring().var_power(i, g.exponents()[i]);
            let v = g.quotient_by_gcd(&u);
            let rest: Vec<Monomial> = ideal
                .gens()
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != p)
                .map(|(_, m)| m.clone())
                .collect();
            let left = MonomialIdeal::from_trusted(ideal.ring(), rest.iter().cloned().chain([u]).collect());
            let right = MonomialIdeal::from_trusted(ideal.ring(), rest.into_iter().chain([v]).collect());
            let mut comps = split(left, memo);
            comps.extend(split(right, memo));
            prune(comps)
        }
    };
    memo.insert(ideal, result.clone());
    result
}

/// Checks that dropping `comps[k]` strictly enlarges the intersection.
///
/// The intersection of the others fails to sit inside `Q = (x_i^{a_i} : i ∈ S)`
/// exactly when the corner monomial (exponent `a_i - 1` on `S`, large elsewhere)
/// lies in all of them.
fn is_irredundant(comps: &[IrreducibleComponent], k: usize) -> bool {
    let big = comps
        .iter()
        .flat_map(|c| c.0.iter().copied())
        .max()
        .unwrap_or(0);
    let corner = Monomial::new(
        comps[k]
            .0
            .iter()
            .map(|&a| if a > 0 { a - 1 } else { big })
            .collect(),
    );
    comps
        .iter()
        .enumerate()
        .all(|(j, c)| j == k || c.contains(&corner))
}

fn intersect_all(ring: &Ring, comps: &[IrreducibleComponent]) -> Result<MonomialIdeal> {
    let mut acc = MonomialIdeal::unit(ring);
    for c in comps {
        acc = acc.intersect(&c.to_ideal(ring))?;
    }
    Ok(acc)
}

/// The irredundant irreducible decomposition, sorted.
///
/// Splits generators `g = x_i^{a_i} * v` until only pure powers remain, then
/// prunes redundant components. The intersection is checked against the input.
pub fn irreducible_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    ideal.require_proper_nonzero("irreducible decomposition")?;
    let mut memo = HashMap::new();
    let comps = split(ideal.clone(), &mut memo);
    debug_assert!((0..comps.len()).all(|k| is_irredundant(&comps, k)));
    if (0..comps.len()).any(|k| !is_irredundant(&comps, k)) {
        return Err(Error::usage("internal: decomposition is redundant"));
    }
    if intersect_all(ideal.ring(), &comps)? != *ideal {
        return Err(Error::usage("internal: decomposition does not reproduce the ideal"));
    }
    Ok(comps)
}

/// Checks irredundancy of an arbitrary component list by the drop-one test.
pub fn all_irredundant(comps: &[IrreducibleComponent]) -> bool {
    (0..comps.len()).all(|k| is_irredundant(comps, k))
}

pub fn associated_primes(ideal: &MonomialIdeal) -> Result<PrimeSet> {
    Ok(irreducible_decomposition(ideal)?
        .iter()
        .map(IrreducibleComponent::support)
        .collect())
}

pub fn minimal_elements(primes: &PrimeSet) -> PrimeSet {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p)))
        .cloned()
        .collect()
}

/// Minimal primes, as the minimal vertex covers of the generator supports.
pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<PrimeSet> {
    Ok(minimal_elements(&potential_ass(ideal)?))
}

pub fn height(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(minimal_primes(ideal)?
        .iter()
        .map(PrimeSupport::len)
        .min()
        .expect("proper nonzero ideal has a minimal prime"))
}

/// All monomial primes containing the ideal.
pub fn potential_ass(ideal: &MonomialIdeal) -> Result<PrimeSet> {
    ideal.require_proper_nonzero("prime enumeration")?;
    let n = ideal.nvars();
    let masks: Vec<u32> = ideal
        .gens()
        .iter()
        .map(|g| g.support().fold(0u32, |m, i| m | (1 << i)))
        .collect();
    Ok((1u32..(1 << n))
        .filter(|s| masks.iter().all(|g| g & s != 0))
        .map(|s| PrimeSupport((0..n).filter(|i| s & (1 << i) != 0).collect()))
        .collect())
}

/// Default cap on the divisor box scanned by [`ass_witness`].
pub const WITNESS_BOX_CAP: u128 = 5_000_000;

/// Searches the divisors of the generators' lcm for `m` with `I : m = P`.
///
/// The scan is exhaustive: `I : m` only depends on `m` truncated at the lcm.
pub fn ass_witness(ideal: &MonomialIdeal, p: &PrimeSupport) -> Result<Option<Monomial>> {
    ideal.require_proper_nonzero("associated-prime witness search")?;
    let target = p.to_ideal(ideal.ring());
    let top = ideal.max_exponents();
    let volume: u128 = top.exponents().iter().map(|&e| e as u128 + 1).product();
    if volume > WITNESS_BOX_CAP {
        return Err(Error::limit(format!(
            "witness search box has {volume} points (cap {WITNESS_BOX_CAP})"
        )));
    }
    let n = ideal.nvars();
    let mut cur = vec![0u64; n];
    loop {
        let m = Monomial::new(cur.clone());
        if !ideal.contains(&m) && ideal.colon_monomial(&m)? == target {
            return Ok(Some(m));
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(None);
            }
            if cur[i] < top.exponents()[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Thread-safe memo of decompositions keyed by canonical ideal form.
#[derive(Default)]
pub struct DecompositionCache {
    map: Mutex<HashMap<MonomialIdeal, Arc<Vec<IrreducibleComponent>>>>,
}

impl DecompositionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn decompose(&self, ideal: &MonomialIdeal) -> Result<Arc<Vec<IrreducibleComponent>>> {
        if let Some(hit) = self.map.lock().unwrap().get(ideal) {
            return Ok(hit.clone());
        }
        let comps = Arc::new(irreducible_decomposition(ideal)?);
        let mut map = self.map.lock().unwrap();
        Ok(map.entry(ideal.clone()).or_insert(comps).clone())
    }

    pub fn associated_primes(&self, ideal: &MonomialIdeal) -> Result<PrimeSet> {
        Ok(self.decompose(ideal)?.iter().map(IrreducibleComponent::support).collect())
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
