/// Resource caps shared by the solver-backed operations.
///
/// Every cap is surfaced as a typed error when reached; nothing is silently
/// truncated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of candidate vectors explored by one call of the
    /// nonnegative Diophantine solver.
    pub solver_cap: usize,
    /// Maximum number of internal transitions of one strongly connected
    /// component whose supports are enumerated by the Parikh image routine.
    pub support_cap: usize,
    /// Maximum number of elements materialized while saturating a matrix
    /// monoid or iterating matrix powers.
    pub monoid_cap: usize,
    /// When set, the pipeline re-checks constraint determinism of the
    /// canonical ε-CA on all words up to this length instead of relying on
    /// the construction.
    pub cd_bound: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            solver_cap: 1_000_000,
            support_cap: 14,
            monoid_cap: 10_000,
            cd_bound: None,
        }
    }
}
