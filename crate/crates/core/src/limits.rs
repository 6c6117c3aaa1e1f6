use serde::{Deserialize, Serialize};

/// Resource guards. Instances beyond these are refused with [`crate::Error::Limit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Generators allowed when enumerating lcm subsets for lattice homology.
    pub lattice_generators: usize,
    /// Total chains of open lattice intervals in one homology computation.
    pub lattice_chains: usize,
    /// Elements of a join-closed lcm lattice (Koszul route).
    pub lattice_elements: usize,
    /// Lattice points enumerated by integral closure.
    pub closure_box: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            lattice_generators: 20,
            lattice_chains: 50_000,
            lattice_elements: 2_000_000,
            closure_box: 10_000_000,
        }
    }
}
