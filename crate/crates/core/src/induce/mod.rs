//! The three-stage search: Horn clauses per role (I), disjunctions of
//! them (II), and solution candidates `A ⊓ ⊓ᵢ ∃Rᵢ.Cᵢ` over the examples
//! (III), all scored against a single materialization.

mod accuracy;
mod config;
mod extension;
mod fill;
mod pipeline;
mod stages;
mod topk;

use thiserror::Error;

use crate::io::ParseError;

pub use accuracy::Accuracy;
pub use config::SearchConfig;
pub use extension::{
    alpha1, alpha1_class, alpha2, common_types, extension_candidate_class, extension_form, extension_horn,
    extension_solution, is_approximate_solution,
};
pub use fill::{compute_fill_sets, inverse_fillers, FillSets, RoleFill};
pub use pipeline::{plan_search, prepare, run_induction, Induction, MaterializationSource, Prepared, SearchPlan};
pub use stages::{
    candidate_concepts, enumerate_horn_clauses, horn_clause_count, pool_candidates, role_candidates, stage1_horn_clauses,
    stage2_candidate_classes, FillerPool, PoolConcept, RoleCandidates, ScoredClass, ScoredClause, ScoredSolution,
    SolutionSpace,
};
pub use topk::{rank_cmp, Ranked, TopK};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InduceError {
    #[error("role `{0}` does not occur in the examples")]
    RoleNotInExamples(String),
    #[error("role `{0}` has no fillers")]
    EmptyFillSet(String),
    #[error("materialization table: {0}")]
    Materialization(#[from] ParseError),
}
