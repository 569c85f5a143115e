/// Numeric caps and budgets shared by every engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest atom count an exhaustive truth-table sweep may cover.
    pub max_atoms: usize,
    /// Quantified-atom cap for materialized Shannon expansions.
    pub expansion_cap: usize,
    /// Fresh-atom cap for the CNF-ization loss sweeps.
    pub loss_sweep_cap: usize,
    pub node_budget: usize,
    pub branch_budget: usize,
    pub conflict_budget: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: 22,
            expansion_cap: 12,
            loss_sweep_cap: 20,
            node_budget: 1_000_000,
            branch_budget: 100_000,
            conflict_budget: 1_000_000,
        }
    }
}
