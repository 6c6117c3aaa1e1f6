//! Exact ranks of integer matrices.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Coefficient field for homology ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Field {
    #[default]
    Rational,
    /// Integers modulo a prime `p`.
    Prime(u64),
}

/// Dense integer matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            m.data[i * cols..(i + 1) * cols].copy_from_slice(row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn rank(&self, field: Field) -> usize {
        match field {
            Field::Rational => self.rank_rational(),
            Field::Prime(p) => self.rank_mod(p),
        }
    }

    /// Rank over the rationals by fraction-free (Bareiss) elimination.
    ///
    /// Runs in `i128` and restarts with big integers if an entry overflows.
    pub fn rank_rational(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let small: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        match bareiss_i128(small, self.rows, self.cols) {
            Some(r) => r,
            None => {
                let big: Vec<BigInt> = self.data.iter().map(|&v| BigInt::from(v)).collect();
                bareiss_big(big, self.rows, self.cols)
            }
        }
    }

    pub fn rank_mod(&self, p: u64) -> usize {
        assert!(p >= 2, "modulus must be at least 2");
        let p128 = p as i128;
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|&v| (v as i128).rem_euclid(p128) as u64)
            .collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            swap_rows(&mut a, cols, piv, rank);
            let inv = mod_pow(a[rank * cols + col], p - 2, p);
            for i in rank + 1..rows {
                let f = a[i * cols + col];
                if f == 0 {
                    continue;
                }
                let f = mul_mod(f, inv, p);
                for j in col..cols {
                    let sub = mul_mod(f, a[rank * cols + j], p);
                    a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

fn swap_rows<T>(a: &mut [T], cols: usize, r1: usize, r2: usize) {
    if r1 != r2 {
        for j in 0..cols {
            a.swap(r1 * cols + j, r2 * cols + j);
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn bareiss_i128(mut a: Vec<i128>, rows: usize, cols: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        swap_rows(&mut a, cols, piv, rank);
        let p = a[rank * cols + col];
        for i in rank + 1..rows {
            let f = a[i * cols + col];
            for j in col + 1..cols {
                let num = p
                    .checked_mul(a[i * cols + j])?
                    .checked_sub(f.checked_mul(a[rank * cols + j])?)?;
                a[i * cols + j] = num / prev;
            }
            a[i * cols + col] = 0;
        }
        prev = p;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn bareiss_big(mut a: Vec<BigInt>, rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        swap_rows(&mut a, cols, piv, rank);
        let p = a[rank * cols + col].clone();
        for i in rank + 1..rows {
            let f = a[i * cols + col].clone();
            for j in col + 1..cols {
                let num = &p * &a[i * cols + j] - &f * &a[rank * cols + j];
                a[i * cols + j] = num / &prev;
            }
            a[i * cols + col] = BigInt::zero();
        }
        prev = p;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// A sparse integer vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec = Vec<(u32, i64)>;

/// Rank of the span of sparse integer vectors.
///
/// Incremental echelon form keyed by leading index. Over the rationals each
/// combination is fraction-free and divided by its content, in `i128` with a
/// big-integer restart on overflow.
pub fn sparse_rank(vectors: &[SparseVec], field: Field) -> usize {
    match field {
        Field::Rational => sparse_rank_i128(vectors).unwrap_or_else(|| sparse_rank_big(vectors)),
        Field::Prime(p) => sparse_rank_mod(vectors, p),
    }
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `a * r - b * p` for sorted sparse rows, dropping zeros.
fn combine_i128(r: &[(u32, i128)], p: &[(u32, i128)], a: i128, b: i128) -> Option<Vec<(u32, i128)>> {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let (idx, v) = match (r.get(i), p.get(j)) {
            (Some(&(ri, rv)), Some(&(pi, _))) if ri < pi => {
                i += 1;
                (ri, a.checked_mul(rv)?)
            }
            (Some(&(ri, rv)), Some(&(pi, pv))) if ri == pi => {
                i += 1;
                j += 1;
                (ri, a.checked_mul(rv)?.checked_sub(b.checked_mul(pv)?)?)
            }
            (_, Some(&(pi, pv))) => {
                j += 1;
                (pi, b.checked_mul(pv)?.checked_neg()?)
            }
            (Some(&(ri, rv)), None) => {
                i += 1;
                (ri, a.checked_mul(rv)?)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((idx, v));
        }
    }
    let g = out.iter().fold(0i128, |g, &(_, v)| gcd_i128(g, v));
    if g > 1 {
        for e in &mut out {
            e.1 /= g;
        }
    }
    Some(out)
}

fn sparse_rank_i128(vectors: &[SparseVec]) -> Option<usize> {
    let mut pivots: HashMap<u32, Vec<(u32, i128)>> = HashMap::new();
    for v in vectors {
        let mut r: Vec<(u32, i128)> = v.iter().map(|&(i, x)| (i, x as i128)).collect();
        while let Some(&(lead, lv)) = r.first() {
            match pivots.get(&lead) {
                Some(p) => {
                    let pv = p[0].1;
                    let g = gcd_i128(pv, lv);
                    r = combine_i128(&r, p, pv / g, lv / g)?;
                }
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

fn sparse_rank_big(vectors: &[SparseVec]) -> usize {
    use num_integer::Integer;
    let mut pivots: HashMap<u32, Vec<(u32, BigInt)>> = HashMap::new();
    for v in vectors {
        let mut r: Vec<(u32, BigInt)> = v.iter().map(|&(i, x)| (i, BigInt::from(x))).collect();
        while let Some((lead, lv)) = r.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => {
                    let pv = &p[0].1;
                    let g = pv.gcd(&lv);
                    let (a, b) = (pv / &g, &lv / &g);
                    let mut acc: BTreeMap<u32, BigInt> = BTreeMap::new();
                    for (i, x) in &r {
                        *acc.entry(*i).or_insert_with(BigInt::zero) += &a * x;
                    }
                    for (i, x) in p {
                        *acc.entry(*i).or_insert_with(BigInt::zero) -= &b * x;
                    }
                    let mut out: Vec<(u32, BigInt)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                    let content = out.iter().fold(BigInt::zero(), |g, (_, x)| g.gcd(x));
                    if content > BigInt::one() {
                        for e in &mut out {
                            e.1 = &e.1 / &content;
                        }
                    }
                    r = out;
                }
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn sparse_rank_mod(vectors: &[SparseVec], p: u64) -> usize {
    assert!(p >= 2, "modulus must be at least 2");
    let mut pivots: HashMap<u32, Vec<(u32, u64)>> = HashMap::new();
    for v in vectors {
        let mut r: Vec<(u32, u64)> = v
            .iter()
            .map(|&(i, x)| (i, (x as i128).rem_euclid(p as i128) as u64))
            .filter(|&(_, x)| x != 0)
            .collect();
        while let Some(&(lead, lv)) = r.first() {
            match pivots.get(&lead) {
                Some(piv) => {
                    // r <- r - (lv / pv) * piv
                    let f = mul_mod(lv, mod_pow(piv[0].1, p - 2, p), p);
                    let mut acc: BTreeMap<u32, u64> = r.iter().copied().collect();
                    for &(i, x) in piv {
                        let e = acc.entry(i).or_insert(0);
                        *e = (*e + p - mul_mod(f, x, p)) % p;
                    }
                    r = acc.into_iter().filter(|&(_, x)| x != 0).collect();
                }
                None => {
                    pivots.insert(lead, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}
