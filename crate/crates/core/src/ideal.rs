//! Monomial ideals in canonical form and their ring-theoretic operations.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Monomial, Ring};

/// A monomial ideal, stored as its minimal generating set.
///
/// Generators form a divisibility antichain sorted lexicographically, so two
/// ideals are equal exactly when their representations are. The unit ideal
/// is `{1}` and the zero ideal has no generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Ring,
    gens: Vec<Monomial>,
}

/// Reduces a generating set to its minimal antichain, sorted lexicographically.
fn antichain(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    kept.sort_unstable();
    kept
}

impl MonomialIdeal {
    /// Builds the ideal generated by `gens`, minimalizing them.
    pub fn minimalize<I>(ring: &Ring, gens: I) -> Result<Self>
    where
        I: IntoIterator<Item = Monomial>,
    {
        let gens: Vec<Monomial> = gens.into_iter().collect();
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Self::from_trusted(ring, gens))
    }

    /// Like [`MonomialIdeal::minimalize`], taking raw exponent vectors.
    pub fn from_exponents(ring: &Ring, gens: &[&[u64]]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|e| ring.monomial(e))
            .collect::<Result<Vec<_>>>()?;
        Self::minimalize(ring, gens)
    }

    pub(crate) fn from_trusted(ring: &Ring, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: antichain(gens),
        }
    }

    pub fn zero(ring: &Ring) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    pub fn unit(ring: &Ring) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: vec![ring.one()],
        }
    }

    pub fn principal(ring: &Ring, m: Monomial) -> Result<Self> {
        Self::minimalize(ring, [m])
    }

    /// The monomial prime generated by the given variables.
    pub fn prime(ring: &Ring, vars: &[usize]) -> Self {
        Self::from_trusted(ring, vars.iter().map(|&i| ring.var_power(i, 1)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub(crate) fn require_proper_nonzero(&self, what: &str) -> Result<()> {
        if self.is_zero() {
            Err(Error::usage(format!("{what} requires a nonzero ideal")))
        } else if self.is_unit() {
            Err(Error::usage(format!("{what} requires a proper ideal")))
        } else {
            Ok(())
        }
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::usage(format!(
                "ideals live in different rings ({} vs {})",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    /// Componentwise maximum of the generators' exponents.
    pub fn max_exponents(&self) -> Monomial {
        self.gens
            .iter()
            .fold(self.ring.one(), |acc, g| acc.lcm(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_trusted(&self.ring, gens))
    }

    pub fn multiply(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.checked_mul(h)?);
            }
        }
        Ok(Self::from_trusted(&self.ring, gens))
    }

    /// `m * I`.
    pub fn scale(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.ring.check(m)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.checked_mul(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_trusted(&self.ring, gens))
    }

    /// `I^k` by repeated multiplication, minimalizing after every step.
    pub fn power(&self, k: usize) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    pub fn colon_monomial(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.ring.check(m)?;
        let gens = self.gens.iter().map(|g| g.quotient_by_gcd(m)).collect();
        Ok(Self::from_trusted(&self.ring, gens))
    }

    /// `I : J`, the intersection of `I : m` over the generators `m` of `J`.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        if other.is_zero() {
            return Err(Error::usage("colon by the zero ideal"));
        }
        let mut parts = other.gens.iter().map(|m| self.colon_monomial(m));
        let mut acc = parts.next().expect("nonzero ideal has a generator")?;
        for part in parts {
            acc = acc.intersect(&part?)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for g in &self.gens {
            for h in &other.gens {
                gens.push(g.lcm(h));
            }
        }
        Ok(Self::from_trusted(&self.ring, gens))
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.ring == other.ring && self.gens.iter().all(|g| other.contains(g))
    }

    /// Splits off the gcd of the generators: returns `(f, J)` with `I = f J`.
    pub fn factor_gcd(&self) -> Result<(Monomial, MonomialIdeal)> {
        let first = self
            .gens
            .first()
            .ok_or_else(|| Error::usage("gcd factorization of the zero ideal"))?;
        let f = self.gens.iter().fold(first.clone(), |acc, g| acc.gcd(g));
        let gens = self
            .gens
            .iter()
            .map(|g| g.quotient_by_gcd(&f))
            .collect();
        Ok((f, Self::from_trusted(&self.ring, gens)))
    }

    pub fn radical(&self) -> MonomialIdeal {
        Self::from_trusted(&self.ring, self.gens.iter().map(Monomial::radical).collect())
    }

    pub fn format_gens(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format_monomial(g)).collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.format_gens().join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.ring)
    }
}
