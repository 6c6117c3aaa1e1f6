//! Multigraded Betti numbers, projective dimension and depth of `R/I`.
//!
//! The primary route reads Betti numbers off the reduced homology of open
//! intervals in the lcm lattice: `β_{i,m}(R/I) = dim H̃_{i-2}((0̂, m))`. The
//! Koszul route computes `Tor_i(R/I, k)_m` from the Koszul complex restricted
//! to multidegree `m` and is kept independent of the lattice homology code.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::limits::Limits;
use crate::linalg::{sparse_rank, Field, IntMatrix, SparseVec};
use crate::ring::Monomial;

/// The lcm lattice of a monomial ideal, ordered by divisibility.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcmLattice {
    /// Sorted by degree, then lexicographically; the bottom element comes first.
    elements: Vec<Monomial>,
}

impl LcmLattice {
    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> &Monomial {
        &self.elements[0]
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.elements.contains(m)
    }

    /// Elements strictly between the bottom and `top`.
    pub fn open_interval(&self, top: &Monomial) -> Vec<&Monomial> {
        self.elements[1..]
            .iter()
            .filter(|e| *e != top && e.divides(top))
            .collect()
    }
}

fn sort_graded(v: &mut [Monomial]) {
    v.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
}

/// Join closure of the generators plus the bottom element.
fn join_closure(ideal: &MonomialIdeal, max_elements: usize) -> Result<LcmLattice> {
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut elements: Vec<Monomial> = Vec::new();
    for g in ideal.gens() {
        let mut fresh = Vec::new();
        if seen.insert(g.clone()) {
            fresh.push(g.clone());
        }
        for e in &elements {
            let l = e.lcm(g);
            if seen.insert(l.clone()) {
                fresh.push(l);
            }
        }
        elements.extend(fresh);
        if elements.len() > max_elements {
            return Err(Error::limit(format!(
                "lcm lattice exceeds {max_elements} elements"
            )));
        }
    }
    elements.push(ideal.ring().one());
    sort_graded(&mut elements);
    Ok(LcmLattice { elements })
}

pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<LcmLattice> {
    lcm_lattice_with(ideal, &Limits::default())
}

/// The set of lcms of nonempty subsets of generators, plus the bottom.
pub fn lcm_lattice_with(ideal: &MonomialIdeal, limits: &Limits) -> Result<LcmLattice> {
    ideal.require_proper_nonzero("lcm lattice")?;
    if ideal.gens().len() > limits.lattice_generators {
        return Err(Error::limit(format!(
            "lcm lattice of {} generators refused (limit {})",
            ideal.gens().len(),
            limits.lattice_generators
        )));
    }
    join_closure(ideal, limits.lattice_elements)
}

/// Multigraded Betti numbers of `R/I`: `(i, m) -> β_{i,m}`, positive entries only.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Monomial), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, m: &Monomial) -> u64 {
        self.entries.get(&(i, m.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, Monomial), u64> {
        &self.entries
    }

    fn insert(&mut self, i: usize, m: Monomial, rank: u64) {
        if rank > 0 {
            self.entries.insert((i, m), rank);
        }
    }

    /// Total Betti number in homological degree `i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries
            .iter()
            .filter(|((j, _), _)| *j == i)
            .map(|(_, r)| r)
            .sum()
    }

    /// `(β_0, β_1, ..., β_pd)`.
    pub fn totals(&self) -> Vec<u64> {
        (0..=self.projective_dimension()).map(|i| self.total(i)).collect()
    }

    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }
}

/// Reduced Betti numbers of the order complex of a poset given by its
/// elements (sorted so that divisors come first). Index 0 is dimension -1.
fn order_complex_homology(
    elems: &[&Monomial],
    field: Field,
    budget: &AtomicUsize,
    cap: usize,
) -> Result<Vec<u64>> {
    let n = elems.len();
    let above: Vec<Vec<u32>> = (0..n)
        .map(|a| {
            (a + 1..n)
                .filter(|&b| elems[a].divides(elems[b]))
                .map(|b| b as u32)
                .collect()
        })
        .collect();

    // faces[d + 1] holds the chains with d + 1 elements.
    let mut faces: Vec<Vec<Vec<u32>>> = vec![vec![Vec::new()]];
    let mut frontier: Vec<Vec<u32>> = (0..n as u32).map(|a| vec![a]).collect();
    while !frontier.is_empty() {
        let used = budget.fetch_add(frontier.len(), Ordering::Relaxed) + frontier.len();
        if used > cap {
            return Err(Error::limit("order complex exceeds the chain budget"));
        }
        let mut next = Vec::new();
        for chain in &frontier {
            let last = *chain.last().unwrap() as usize;
            for &b in &above[last] {
                let mut c = chain.clone();
                c.push(b);
                next.push(c);
            }
        }
        faces.push(frontier);
        frontier = next;
    }

    // ranks[d] = rank of the boundary from dimension d to d - 1 (d >= 0).
    let top = faces.len() - 1;
    let mut ranks = vec![0usize; faces.len() + 1];
    for k in 1..=top {
        let index: HashMap<&[u32], usize> = faces[k - 1]
            .iter()
            .enumerate()
            .map(|(i, f)| (f.as_slice(), i))
            .collect();
        let columns: Vec<SparseVec> = faces[k]
            .iter()
            .map(|face| {
                let mut col: SparseVec = (0..face.len())
                    .map(|drop| {
                        let mut sub = face.clone();
                        sub.remove(drop);
                        (index[sub.as_slice()] as u32, if drop % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        ranks[k] = sparse_rank(&columns, field);
    }
    Ok((0..=top)
        .map(|k| (faces[k].len() - ranks[k] - ranks[k + 1]) as u64)
        .collect())
}

pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable> {
    betti_table_with(ideal, Field::Rational, &Limits::default())
}

/// Betti numbers from lcm-lattice interval homology.
pub fn betti_table_with(ideal: &MonomialIdeal, field: Field, limits: &Limits) -> Result<BettiTable> {
    let lattice = lcm_lattice_with(ideal, limits)?;
    let budget = AtomicUsize::new(0);
    let cap = limits.lattice_chains;
    let rows: Vec<Result<Vec<(usize, Monomial, u64)>>> = lattice.elements()[1..]
        .par_iter()
        .map(|m| {
            let interval = lattice.open_interval(m);
            let reduced = order_complex_homology(&interval, field, &budget, cap)?;
            Ok(reduced
                .into_iter()
                .enumerate()
                .map(|(k, r)| (k + 1, m.clone(), r))
                .collect())
        })
        .collect();
    let mut table = BettiTable::default();
    table.insert(0, ideal.ring().one(), 1);
    for row in rows {
        for (i, m, r) in row? {
            table.insert(i, m, r);
        }
    }
    Ok(table)
}

/// Homology of the Koszul complex of `R/I` in multidegree `m`, by degree.
fn koszul_homology_at(ideal: &MonomialIdeal, m: &Monomial, field: Field) -> Vec<u64> {
    let n = ideal.nvars();
    let exps = m.exponents();
    // Basis of K_i: subsets S with m - σ(S) >= 0 and x^{m - σ(S)} outside I.
    let mut basis: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for s in 0u32..(1 << n) {
        let ok = (0..n).all(|j| s & (1 << j) == 0 || exps[j] >= 1);
        if !ok {
            continue;
        }
        let w = Monomial::new(
            (0..n)
                .map(|j| exps[j] - u64::from(s & (1 << j) != 0))
                .collect(),
        );
        if !ideal.contains(&w) {
            basis[s.count_ones() as usize].push(s);
        }
    }
    // rank of d_i : K_i -> K_{i-1}
    let mut ranks = vec![0usize; n + 2];
    for i in 1..=n {
        if basis[i].is_empty() || basis[i - 1].is_empty() {
            continue;
        }
        let index: HashMap<u32, usize> = basis[i - 1].iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let mut mat = IntMatrix::zeros(basis[i - 1].len(), basis[i].len());
        for (c, &s) in basis[i].iter().enumerate() {
            let mut pos = 0;
            for j in 0..n {
                if s & (1 << j) == 0 {
                    continue;
                }
                if let Some(&r) = index.get(&(s & !(1 << j))) {
                    mat.set(r, c, if pos % 2 == 0 { 1 } else { -1 });
                }
                pos += 1;
            }
        }
        ranks[i] = mat.rank(field);
    }
    (0..=n)
        .map(|i| (basis[i].len() - ranks[i] - ranks[i + 1]) as u64)
        .collect()
}

fn koszul_table(ideal: &MonomialIdeal, lattice: &LcmLattice, field: Field) -> BettiTable {
    let rows: Vec<Vec<u64>> = lattice
        .elements()
        .par_iter()
        .map(|m| koszul_homology_at(ideal, m, field))
        .collect();
    let mut table = BettiTable::default();
    for (m, row) in lattice.elements().iter().zip(rows) {
        for (i, r) in row.into_iter().enumerate() {
            table.insert(i, m.clone(), r);
        }
    }
    table
}

pub fn koszul_betti_oracle(ideal: &MonomialIdeal) -> Result<BettiTable> {
    koszul_betti_oracle_with(ideal, Field::Rational, &Limits::default())
}

/// Betti numbers as Koszul homology `Tor_i(R/I, k)_m` over the lcm lattice.
pub fn koszul_betti_oracle_with(
    ideal: &MonomialIdeal,
    field: Field,
    limits: &Limits,
) -> Result<BettiTable> {
    let lattice = lcm_lattice_with(ideal, limits)?;
    Ok(koszul_table(ideal, &lattice, field))
}

/// Projective dimension of `R/I` over the rationals.
pub fn projective_dimension(ideal: &MonomialIdeal, limits: &Limits) -> Result<usize> {
    projective_dimension_over(ideal, Field::Rational, limits)
}

/// Projective dimension of `R/I` with ranks taken over `field`.
///
/// Uses lattice homology while the instance is inside the lattice guards and
/// falls back to Koszul homology over the join-closed lattice otherwise.
pub fn projective_dimension_over(ideal: &MonomialIdeal, field: Field, limits: &Limits) -> Result<usize> {
    if ideal.is_zero() {
        return Ok(0);
    }
    ideal.require_proper_nonzero("projective dimension")?;
    match betti_table_with(ideal, field, limits) {
        Ok(t) => Ok(t.projective_dimension()),
        Err(e) if e.is_limit() => {
            let lattice = join_closure(ideal, limits.lattice_elements)?;
            Ok(koszul_table(ideal, &lattice, field).projective_dimension())
        }
        Err(e) => Err(e),
    }
}

pub fn depth(ideal: &MonomialIdeal) -> Result<usize> {
    depth_with(ideal, &Limits::default())
}

/// `depth R/I = n - pd(R/I)`. The zero ideal has depth `n`.
pub fn depth_with(ideal: &MonomialIdeal, limits: &Limits) -> Result<usize> {
    depth_over(ideal, Field::Rational, limits)
}

pub fn depth_over(ideal: &MonomialIdeal, field: Field, limits: &Limits) -> Result<usize> {
    if ideal.is_unit() {
        return Err(Error::usage("depth of R/I requires a proper ideal"));
    }
    Ok(ideal.nvars() - projective_dimension_over(ideal, field, limits)?)
}
