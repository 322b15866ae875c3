/// Resource limits shared by the symbolic and numeric routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of terms in any symbolic Laurent polynomial.
    pub max_terms: usize,
    /// Maximum bit length of numerator or denominator of an orbit coordinate.
    pub max_bits: u64,
    /// Largest orbit index `t` the vanishing-space search may visit.
    pub horizon: usize,
}

impl Budget {
    pub const DEFAULT_MAX_TERMS: usize = 1_000_000;
    pub const DEFAULT_MAX_BITS: u64 = 100_000;
    pub const DEFAULT_HORIZON: usize = 2_000;
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_terms: Self::DEFAULT_MAX_TERMS,
            max_bits: Self::DEFAULT_MAX_BITS,
            horizon: Self::DEFAULT_HORIZON,
        }
    }
}
