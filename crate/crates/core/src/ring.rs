//! Polynomial rings (as ordered variable lists) and monomials as exponent vectors.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the number of variables.
pub const MAX_VARS: usize = 16;

/// An ordered list of distinct variable names.
///
/// Cloning is cheap; the names are shared.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Ring {
    vars: Arc<[String]>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.is_empty() || names.len() > MAX_VARS {
            return Err(Error::usage(format!(
                "a ring needs between 1 and {MAX_VARS} variables, got {}",
                names.len()
            )));
        }
        let mut vars: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if !is_valid_name(name) {
                return Err(Error::usage(format!("invalid variable name {name:?}")));
            }
            if vars.iter().any(|v| v == name) {
                return Err(Error::usage(format!("duplicate variable name {name:?}")));
            }
            vars.push(name.to_string());
        }
        Ok(Ring { vars: vars.into() })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    /// The pure power `x_i^e`.
    pub fn var_power(&self, i: usize, e: u64) -> Monomial {
        let mut exps = vec![0; self.nvars()];
        exps[i] = e;
        Monomial::new(exps)
    }

    /// Monomial from a full exponent vector; the length must match.
    pub fn monomial(&self, exps: &[u64]) -> Result<Monomial> {
        if exps.len() != self.nvars() {
            return Err(Error::usage(format!(
                "exponent vector has length {} but the ring has {} variables",
                exps.len(),
                self.nvars()
            )));
        }
        Ok(Monomial::new(exps.to_vec()))
    }

    pub(crate) fn check(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars() {
            return Err(Error::usage(format!(
                "monomial has {} exponents but the ring has {} variables",
                m.nvars(),
                self.nvars()
            )));
        }
        Ok(())
    }

    /// Renders a monomial as `x^2*y`, or `1`.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .zip(self.vars.iter())
            .filter(|(&e, _)| e > 0)
            .map(|(&e, v)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl TryFrom<Vec<String>> for Ring {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Ring::new(&v)
    }
}

impl From<Ring> for Vec<String> {
    fn from(r: Ring) -> Self {
        r.vars.to_vec()
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring[{}]", self.vars.join(","))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vars.join(","))
    }
}

fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric()),
        _ => false,
    }
}

/// A monomial `x_1^{a_1} ... x_n^{a_n}`, stored as its exponent vector.
///
/// The derived ordering is lexicographic on exponent vectors, which is the
/// canonical generator order of [`crate::MonomialIdeal`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exps: Vec<u64>) -> Self {
        Monomial(exps)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&e| e > 0).count()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
            .ok_or_else(|| Error::Overflow(format!("product of {self:?} and {other:?}")))
    }

    pub fn checked_pow(&self, k: u64) -> Result<Monomial> {
        self.0
            .iter()
            .map(|a| a.checked_mul(k))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
            .ok_or_else(|| Error::Overflow(format!("{self:?} to the power {k}")))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `self / gcd(self, other)`: exponentwise saturating difference.
    pub fn quotient_by_gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        )
    }

    /// Exact quotient, `None` unless `divisor` divides `self`.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| self.quotient_by_gcd(divisor))
    }

    /// The squarefree part (product of the support variables).
    pub fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| u64::from(e > 0)).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl From<Vec<u64>> for Monomial {
    fn from(v: Vec<u64>) -> Self {
        Monomial(v)
    }
}
