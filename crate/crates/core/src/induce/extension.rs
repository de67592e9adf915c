//! Extensions and accuracies computed directly on individual sets. The
//! search stages use bitset versions of the same formulas; these are the
//! plain definitions they are checked against.

use std::collections::BTreeSet;

use super::fill::{inverse_fillers, FillSets};
use super::{Accuracy, InduceError};
use crate::kb::{
    CandidateClass, ConceptId, ExampleSet, HornClause, IndividualId, KnowledgeBase, RoleId, SolutionCandidate,
    SolutionForm,
};
use crate::materialize::Materialization;

fn atomic_extension(c: ConceptId, m: &Materialization) -> BTreeSet<IndividualId> {
    m.extension(c).iter().map(|i| m.universe()[i]).collect()
}

/// `↓B \ (↓D₁ ∪ … ∪ ↓Dₖ)`
pub fn extension_horn(h: &HornClause, m: &Materialization) -> BTreeSet<IndividualId> {
    let mut ext = atomic_extension(h.head(), m);
    for &d in h.neg().members() {
        for a in atomic_extension(d, m) {
            ext.remove(&a);
        }
    }
    ext
}

/// Union of the clause extensions.
pub fn extension_candidate_class(c: &CandidateClass, m: &Materialization) -> BTreeSet<IndividualId> {
    c.clauses().iter().flat_map(|h| extension_horn(h, m)).collect()
}

/// `↓A ∩ ⋂ᵢ Rᵢ⁻(↓Cᵢ)`
pub fn extension_solution(
    s: &SolutionCandidate,
    m: &Materialization,
    examples: &ExampleSet,
    fills: &FillSets,
    kb: &KnowledgeBase,
) -> Result<BTreeSet<IndividualId>, InduceError> {
    let mut ext = atomic_extension(s.top, m);
    for (&role, class) in &s.restrictions {
        if fills.role(role).is_none() {
            return Err(InduceError::RoleNotInExamples(kb.role(role).to_string()));
        }
        let inv = inverse_fillers(role, &extension_candidate_class(class, m), examples, fills);
        ext.retain(|a| inv.contains(a));
    }
    Ok(ext)
}

pub fn extension_form(
    form: &SolutionForm,
    m: &Materialization,
    examples: &ExampleSet,
    fills: &FillSets,
    kb: &KnowledgeBase,
) -> Result<BTreeSet<IndividualId>, InduceError> {
    match form {
        SolutionForm::Restricted(s) => extension_solution(s, m, examples, fills, kb),
        SolutionForm::Disjunction(c) => Ok(extension_candidate_class(c, m)),
    }
}

fn filler_accuracy(ext: &BTreeSet<IndividualId>, role: RoleId, fills: &FillSets, kb: &KnowledgeBase) -> Result<Accuracy, InduceError> {
    let f = fills
        .role(role)
        .ok_or_else(|| InduceError::RoleNotInExamples(kb.role(role).to_string()))?;
    if f.all.is_empty() {
        return Err(InduceError::EmptyFillSet(kb.role(role).to_string()));
    }
    let hits = f.pos.intersection(ext).count() + f.neg.difference(ext).count();
    Ok(Accuracy::new(hits, f.all.len()))
}

/// `(|R̄⁺ ∩ ↓H| + |R̄⁻ \ ↓H|) / |R̄|`
pub fn alpha1(
    h: &HornClause,
    role: RoleId,
    fills: &FillSets,
    m: &Materialization,
    kb: &KnowledgeBase,
) -> Result<Accuracy, InduceError> {
    filler_accuracy(&extension_horn(h, m), role, fills, kb)
}

/// [`alpha1`] lifted to a candidate class.
pub fn alpha1_class(
    c: &CandidateClass,
    role: RoleId,
    fills: &FillSets,
    m: &Materialization,
    kb: &KnowledgeBase,
) -> Result<Accuracy, InduceError> {
    filler_accuracy(&extension_candidate_class(c, m), role, fills, kb)
}

fn example_accuracy(ext: &BTreeSet<IndividualId>, examples: &ExampleSet) -> Accuracy {
    let hits = examples.positives().iter().filter(|e| ext.contains(&e.individual)).count()
        + examples.negatives().iter().filter(|e| !ext.contains(&e.individual)).count();
    Accuracy::new(hits, examples.len())
}

/// `(|P ∩ ↓S| + |N \ ↓S|) / |P ∪ N|`
pub fn alpha2(
    form: &SolutionForm,
    examples: &ExampleSet,
    m: &Materialization,
    fills: &FillSets,
    kb: &KnowledgeBase,
) -> Result<Accuracy, InduceError> {
    Ok(example_accuracy(&extension_form(form, m, examples, fills, kb)?, examples))
}

/// `P ⊆ ↓S` and `N ∩ ↓S = ∅`.
pub fn is_approximate_solution(
    form: &SolutionForm,
    examples: &ExampleSet,
    m: &Materialization,
    fills: &FillSets,
    kb: &KnowledgeBase,
) -> Result<bool, InduceError> {
    let ext = extension_form(form, m, examples, fills, kb)?;
    Ok(examples.positives().iter().all(|e| ext.contains(&e.individual))
        && examples.negatives().iter().all(|e| !ext.contains(&e.individual)))
}

/// Atomic concepts held by some positive and by some negative example.
pub fn common_types(examples: &ExampleSet, m: &Materialization) -> BTreeSet<ConceptId> {
    let collect = |side: &[crate::kb::Example]| -> BTreeSet<ConceptId> {
        side.iter().flat_map(|e| m.types_of(e.individual)).collect()
    };
    let pos = collect(examples.positives());
    let neg = collect(examples.negatives());
    pos.intersection(&neg).copied().collect()
}
