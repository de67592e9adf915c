use crate::enrich::DEFAULT_EXPRESSION_CAP;

/// Search bounds and output options.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum conjunctions per enumerated expression.
    pub n1: usize,
    /// Maximum existential restrictions per enumerated expression.
    pub n2: usize,
    /// Maximum atomic classes per Horn clause.
    pub k1: usize,
    /// Maximum Horn clauses per candidate class.
    pub k2: usize,
    /// Maximum existential restrictions per solution.
    pub k3: usize,
    /// Horn clauses kept per role.
    pub k4: usize,
    /// Candidate classes kept per role.
    pub k5: usize,
    pub keep_common_types: bool,
    pub max_solutions: usize,
    pub compute_alpha3: bool,
    /// Cap on enumerated expressions.
    pub max_expressions: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            n1: 3,
            n2: 3,
            k1: 3,
            k2: 3,
            k3: 3,
            k4: 50,
            k5: 50,
            keep_common_types: false,
            max_solutions: 10,
            compute_alpha3: false,
            max_expressions: DEFAULT_EXPRESSION_CAP,
        }
    }
}
