use serde::{Deserialize, Serialize};

/// Resource knobs shared by every engine entry point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Settings {
    /// Maximum S-pair reductions per Groebner basis computation.
    pub step_limit: u64,
    /// Random combinations tried when looking for a regular element.
    pub search_budget: u32,
    /// Seed for the regular-element search.
    pub seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { step_limit: 20_000, search_budget: 64, seed: 0 }
    }
}
