//! Exact computations with monomial ideals in a few variables: powers,
//! colon ideals, associated primes, depth, integral closure, and the
//! stability indices of associated primes and depth along powers.

pub mod closure;
pub mod decomposition;
pub mod error;
pub mod families;
pub mod ideal;
pub mod limits;
pub mod linalg;
pub mod resolution;
pub mod ring;
pub mod stability;
pub mod text;

pub use closure::{NewtonSystem, Solver};
pub use decomposition::{IrreducibleComponent, PrimeSet, PrimeSupport};
pub use error::{Error, Result};
pub use ideal::MonomialIdeal;
pub use limits::Limits;
pub use linalg::Field;
pub use resolution::{BettiTable, LcmLattice};
pub use ring::{Monomial, Ring};
pub use stability::{Level, PowerRecord, ProfileOptions, StabilityReport};
