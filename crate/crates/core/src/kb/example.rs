use std::collections::BTreeSet;

use super::{ConceptId, IndividualId, KbError, KnowledgeBase, Result, RoleId};

/// A single ABox statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    Type(IndividualId, ConceptId),
    Rel(IndividualId, RoleId, IndividualId),
}

impl Statement {
    pub fn display(&self, kb: &KnowledgeBase) -> String {
        match *self {
            Statement::Type(a, c) => format!("{}({})", kb.concept_name(c), kb.individual_name(a)),
            Statement::Rel(a, r, b) => format!(
                "{}({},{})",
                kb.role(r),
                kb.individual_name(a),
                kb.individual_name(b)
            ),
        }
    }
}

/// An example individual together with its local ABox `𝓐(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Example {
    pub individual: IndividualId,
    pub local_abox: BTreeSet<Statement>,
}

impl Example {
    pub fn new(individual: IndividualId, local_abox: impl IntoIterator<Item = Statement>) -> Self {
        Example {
            individual,
            local_abox: local_abox.into_iter().collect(),
        }
    }

    /// The statements of the knowledge base's ABox about `a` and its role
    /// fillers: their type assertions and outgoing role assertions.
    /// Incoming edges do not affect what `a` is an instance of.
    pub fn derive(kb: &KnowledgeBase, a: IndividualId) -> Self {
        let mut focus: BTreeSet<IndividualId> = kb.successors(a).map(|(_, b)| b).collect();
        focus.insert(a);
        let mut abox = BTreeSet::new();
        for &x in &focus {
            abox.extend(kb.asserted_types(x).map(|c| Statement::Type(x, c)));
            abox.extend(kb.successors(x).map(|(r, y)| Statement::Rel(x, r, y)));
        }
        Example {
            individual: a,
            local_abox: abox,
        }
    }

    /// `R(a)`: the fillers of `role` for this example.
    pub fn fillers(&self, role: RoleId) -> impl Iterator<Item = IndividualId> + '_ {
        let a = self.individual;
        self.local_abox.iter().filter_map(move |s| match *s {
            Statement::Rel(x, r, b) if x == a && r == role => Some(b),
            _ => None,
        })
    }

    pub fn roles(&self) -> BTreeSet<RoleId> {
        let a = self.individual;
        self.local_abox
            .iter()
            .filter_map(|s| match *s {
                Statement::Rel(x, r, _) if x == a => Some(r),
                _ => None,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StarShapeReport {
    pub offenders: Vec<Statement>,
}

impl StarShapeReport {
    pub fn is_valid(&self) -> bool {
        self.offenders.is_empty()
    }
}

/// Accepts iff every statement of the local ABox is `A(a)`, `R(a,b)` with
/// `b ≠ a`, or `B(b)` for such a filler `b`.
pub fn validate_star_shaped(ex: &Example) -> StarShapeReport {
    let a = ex.individual;
    let fillers: BTreeSet<IndividualId> = ex
        .local_abox
        .iter()
        .filter_map(|s| match *s {
            Statement::Rel(x, _, b) if x == a && b != a => Some(b),
            _ => None,
        })
        .collect();
    let offenders = ex
        .local_abox
        .iter()
        .filter(|s| match **s {
            Statement::Type(x, _) => x != a && !fillers.contains(&x),
            Statement::Rel(x, _, b) => x != a || b == a,
        })
        .copied()
        .collect();
    StarShapeReport { offenders }
}

/// Positive and negative examples with disjoint, non-empty individual sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleSet {
    positives: Vec<Example>,
    negatives: Vec<Example>,
}

impl ExampleSet {
    pub fn new(positives: Vec<Example>, negatives: Vec<Example>, kb: &KnowledgeBase) -> Result<Self> {
        if positives.is_empty() {
            return Err(KbError::EmptyExamples("positive"));
        }
        if negatives.is_empty() {
            return Err(KbError::EmptyExamples("negative"));
        }
        let pos: BTreeSet<IndividualId> = positives.iter().map(|e| e.individual).collect();
        if let Some(shared) = negatives.iter().find(|e| pos.contains(&e.individual)) {
            return Err(KbError::OverlappingExamples(
                kb.individual_name(shared.individual).to_string(),
            ));
        }
        let dedup = |mut v: Vec<Example>| {
            v.sort_by_key(|e| e.individual);
            v.dedup_by_key(|e| e.individual);
            v
        };
        Ok(ExampleSet {
            positives: dedup(positives),
            negatives: dedup(negatives),
        })
    }

    /// Builds examples from individual names, deriving each local ABox from
    /// `kb` and rejecting examples that are not star-shaped.
    pub fn from_names<S: AsRef<str>>(kb: &KnowledgeBase, positives: &[S], negatives: &[S]) -> Result<Self> {
        let derive = |names: &[S]| -> Result<Vec<Example>> {
            names
                .iter()
                .map(|n| {
                    let ex = Example::derive(kb, kb.require_individual(n.as_ref())?);
                    let report = validate_star_shaped(&ex);
                    if !report.is_valid() {
                        return Err(KbError::NotStarShaped {
                            individual: n.as_ref().to_string(),
                            offenders: report
                                .offenders
                                .iter()
                                .map(|s| s.display(kb))
                                .collect::<Vec<_>>()
                                .join(", "),
                        });
                    }
                    Ok(ex)
                })
                .collect()
        };
        ExampleSet::new(derive(positives)?, derive(negatives)?, kb)
    }

    pub fn positives(&self) -> &[Example] {
        &self.positives
    }

    pub fn negatives(&self) -> &[Example] {
        &self.negatives
    }

    pub fn all(&self) -> impl Iterator<Item = &Example> {
        self.positives.iter().chain(&self.negatives)
    }

    pub fn len(&self) -> usize {
        self.positives.len() + self.negatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn pooled_abox(&self) -> BTreeSet<Statement> {
        self.all().flat_map(|e| e.local_abox.iter().copied()).collect()
    }

    /// Example individuals plus every role filler mentioned in their local ABoxes.
    pub fn relevant_individuals(&self) -> BTreeSet<IndividualId> {
        let mut out = BTreeSet::new();
        for ex in self.all() {
            out.insert(ex.individual);
            for s in &ex.local_abox {
                if let Statement::Rel(x, _, b) = *s {
                    if x == ex.individual {
                        out.insert(b);
                    }
                }
            }
        }
        out
    }
}
