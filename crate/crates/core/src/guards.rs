//! Resource guards for the oracle-grade code paths.
//!
//! The guarded methods (word enumeration, Parikh-lattice DP, the
//! cost-formula enumeration engine) are exponential by nature; the guards
//! keep them at desk scale. They are configuration values, not hard
//! limits: callers may pass custom `Guards`, and the CLI honors
//! environment-variable overrides.

/// Guard configuration. `Default` gives the documented desk-scale values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guards {
    /// Maximum `‖p⃗‖` for enumeration-based counting.
    pub enumeration_norm_cap: u64,
    /// Maximum `∏(p⃗(a)+1)` lattice size for DP-based counting.
    pub dp_lattice_cap: u64,
    /// Maximum formula constant `c` for the Parikh/BEST cost-probability
    /// engine.
    pub cost_c_cap: u64,
    /// Maximum `c·|Q|` table size for the cost DP.
    pub cost_dp_table_cap: u64,
    /// Maximum word length for unary CFG membership.
    pub unary_cfg_cap: u64,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            enumeration_norm_cap: 10,
            dp_lattice_cap: 10_000_000,
            cost_c_cap: 64,
            cost_dp_table_cap: 10_000_000,
            unary_cfg_cap: 10_000,
        }
    }
}

impl Guards {
    pub fn with_dp_lattice_cap(mut self, cap: u64) -> Self {
        self.dp_lattice_cap = cap;
        self
    }

    pub fn with_enumeration_norm_cap(mut self, cap: u64) -> Self {
        self.enumeration_norm_cap = cap;
        self
    }

    pub fn with_cost_c_cap(mut self, cap: u64) -> Self {
        self.cost_c_cap = cap;
        self
    }
}
