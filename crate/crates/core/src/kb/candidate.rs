//! The three-tier candidate forms assembled by the search: Horn clauses,
//! candidate classes (disjunctions of Horn clauses) and solution
//! candidates (`A ⊓ ∃R₁.C₁ ⊓ … ⊓ ∃Rₗ.Cₗ`).
//!
//! They hold knowledge-base ids; [`to_expression`](SolutionCandidate::to_expression)
//! lowers them to the expression algebra for rendering and comparison.

use std::collections::{BTreeMap, BTreeSet};

use super::{ConceptExpression, ConceptId, KnowledgeBase, RoleId};

/// `¬(D₁ ⊔ … ⊔ Dₖ)` over atomic concepts; may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NegatedDisjunct(Vec<ConceptId>);

impl NegatedDisjunct {
    /// Sorts and deduplicates; returns `None` if `Thing` is among the members.
    pub fn new(members: impl IntoIterator<Item = ConceptId>) -> Option<Self> {
        let set: BTreeSet<ConceptId> = members.into_iter().collect();
        if set.contains(&ConceptId::TOP) {
            return None;
        }
        Some(NegatedDisjunct(set.into_iter().collect()))
    }

    pub fn empty() -> Self {
        NegatedDisjunct(Vec::new())
    }

    pub fn members(&self) -> &[ConceptId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: ConceptId) -> bool {
        self.0.binary_search(&c).is_ok()
    }
}

/// `B ⊓ ¬(D₁ ⊔ … ⊔ Dₖ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HornClause {
    head: ConceptId,
    neg: NegatedDisjunct,
}

impl HornClause {
    /// Returns `None` when the head occurs in its own negated disjunct.
    pub fn new(head: ConceptId, neg: NegatedDisjunct) -> Option<Self> {
        if neg.contains(head) {
            return None;
        }
        Some(HornClause { head, neg })
    }

    pub fn atomic(head: ConceptId) -> Self {
        HornClause {
            head,
            neg: NegatedDisjunct::empty(),
        }
    }

    pub fn head(&self) -> ConceptId {
        self.head
    }

    pub fn neg(&self) -> &NegatedDisjunct {
        &self.neg
    }

    /// Atomic classes occurring in the rendered clause. A `Thing` head is
    /// dropped when the negated disjunct is non-empty.
    pub fn length(&self) -> usize {
        if self.head == ConceptId::TOP && !self.neg.is_empty() {
            self.neg.len()
        } else {
            1 + self.neg.len()
        }
    }

    pub fn to_expression(&self, kb: &KnowledgeBase) -> ConceptExpression {
        let head = ConceptExpression::Atomic(kb.concept_name(self.head).clone());
        if self.neg.is_empty() {
            return head;
        }
        let mut negated: Vec<ConceptExpression> = self
            .neg
            .members()
            .iter()
            .map(|&d| ConceptExpression::Atomic(kb.concept_name(d).clone()))
            .collect();
        let inner = if negated.len() == 1 {
            negated.pop().unwrap()
        } else {
            ConceptExpression::Disj(negated)
        };
        let neg = ConceptExpression::neg(inner);
        let e = if self.head == ConceptId::TOP {
            neg
        } else {
            ConceptExpression::conj([head, neg])
        };
        e.canonical()
    }
}

/// A non-empty disjunction of distinct Horn clauses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateClass {
    clauses: Vec<HornClause>,
}

impl CandidateClass {
    pub fn new(clauses: impl IntoIterator<Item = HornClause>) -> Option<Self> {
        let set: BTreeSet<HornClause> = clauses.into_iter().collect();
        if set.is_empty() {
            return None;
        }
        Some(CandidateClass {
            clauses: set.into_iter().collect(),
        })
    }

    pub fn single(clause: HornClause) -> Self {
        CandidateClass {
            clauses: vec![clause],
        }
    }

    pub fn clauses(&self) -> &[HornClause] {
        &self.clauses
    }

    pub fn length(&self) -> usize {
        self.clauses.iter().map(HornClause::length).sum()
    }

    pub fn to_expression(&self, kb: &KnowledgeBase) -> ConceptExpression {
        if self.clauses.len() == 1 {
            return self.clauses[0].to_expression(kb);
        }
        ConceptExpression::disj(self.clauses.iter().map(|h| h.to_expression(kb))).canonical()
    }
}

/// `A ⊓ ⊓ᵢ ∃Rᵢ.Cᵢ` with distinct roles; `A` may be `Thing`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionCandidate {
    pub top: ConceptId,
    pub restrictions: BTreeMap<RoleId, CandidateClass>,
}

impl SolutionCandidate {
    pub fn atomic(top: ConceptId) -> Self {
        SolutionCandidate {
            top,
            restrictions: BTreeMap::new(),
        }
    }

    pub fn with_restriction(mut self, role: RoleId, class: CandidateClass) -> Self {
        self.restrictions.insert(role, class);
        self
    }

    /// Length of the lowered expression.
    pub fn length(&self) -> usize {
        let head = usize::from(self.top != ConceptId::TOP || self.restrictions.is_empty());
        head + self.restrictions.values().map(CandidateClass::length).sum::<usize>()
    }

    /// Lowers to `A ⊓ ⊓ᵢ ∃Rᵢ.(⊔ⱼ Bⱼ ⊓ ¬(…))`, dropping `Thing` conjuncts and
    /// empty negated disjuncts. The result is canonical.
    pub fn to_expression(&self, kb: &KnowledgeBase) -> ConceptExpression {
        let mut conjuncts = Vec::with_capacity(self.restrictions.len() + 1);
        if self.top != ConceptId::TOP {
            conjuncts.push(ConceptExpression::Atomic(kb.concept_name(self.top).clone()));
        }
        for (&role, class) in &self.restrictions {
            conjuncts.push(ConceptExpression::Exists(
                kb.role(role).clone(),
                Box::new(class.to_expression(kb)),
            ));
        }
        match conjuncts.len() {
            0 => ConceptExpression::top(),
            _ => ConceptExpression::Conj(conjuncts).canonical(),
        }
    }
}

/// What stage (III) ranks: a solution candidate, or a bare candidate class
/// when the examples carry no role assertions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolutionForm {
    Restricted(SolutionCandidate),
    Disjunction(CandidateClass),
}

impl SolutionForm {
    pub fn to_expression(&self, kb: &KnowledgeBase) -> ConceptExpression {
        match self {
            SolutionForm::Restricted(s) => s.to_expression(kb),
            SolutionForm::Disjunction(c) => c.to_expression(kb),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            SolutionForm::Restricted(s) => s.length(),
            SolutionForm::Disjunction(c) => c.length(),
        }
    }

    /// Recovers the candidate form of an expression produced by
    /// [`to_expression`](Self::to_expression). Returns `None` for
    /// expressions outside the candidate grammar or with undeclared names.
    pub fn from_expression(kb: &KnowledgeBase, expr: &ConceptExpression) -> Option<SolutionForm> {
        restricted_from(kb, expr)
            .map(SolutionForm::Restricted)
            .or_else(|| class_from(kb, expr).map(SolutionForm::Disjunction))
    }
}

fn restricted_from(kb: &KnowledgeBase, expr: &ConceptExpression) -> Option<SolutionCandidate> {
    let conjuncts: &[ConceptExpression] = match expr {
        ConceptExpression::Conj(cs) => cs,
        other => std::slice::from_ref(other),
    };
    let mut top = None;
    let mut restrictions = BTreeMap::new();
    for c in conjuncts {
        match c {
            ConceptExpression::Atomic(a) => {
                if top.is_some() {
                    return None;
                }
                top = Some(kb.concept_id(a.name())?);
            }
            ConceptExpression::Exists(r, inner) => {
                let role = kb.role_id(r.name())?;
                let class = class_from(kb, inner)?;
                if restrictions.insert(role, class).is_some() {
                    return None;
                }
            }
            _ => return None,
        }
    }
    Some(SolutionCandidate {
        top: top.unwrap_or(ConceptId::TOP),
        restrictions,
    })
}

fn class_from(kb: &KnowledgeBase, expr: &ConceptExpression) -> Option<CandidateClass> {
    match expr {
        ConceptExpression::Disj(cs) => {
            let clauses = cs.iter().map(|c| horn_from(kb, c)).collect::<Option<Vec<_>>>()?;
            CandidateClass::new(clauses)
        }
        other => horn_from(kb, other).map(CandidateClass::single),
    }
}

fn horn_from(kb: &KnowledgeBase, expr: &ConceptExpression) -> Option<HornClause> {
    match expr {
        ConceptExpression::Atomic(a) => Some(HornClause::atomic(kb.concept_id(a.name())?)),
        ConceptExpression::Neg(inner) => HornClause::new(ConceptId::TOP, negated_from(kb, inner)?),
        ConceptExpression::Conj(cs) if cs.len() == 2 => {
            let (head, neg) = match (&cs[0], &cs[1]) {
                (ConceptExpression::Atomic(a), ConceptExpression::Neg(n))
                | (ConceptExpression::Neg(n), ConceptExpression::Atomic(a)) => (a, n),
                _ => return None,
            };
            HornClause::new(kb.concept_id(head.name())?, negated_from(kb, neg)?)
        }
        _ => None,
    }
}

fn negated_from(kb: &KnowledgeBase, expr: &ConceptExpression) -> Option<NegatedDisjunct> {
    let members: &[ConceptExpression] = match expr {
        ConceptExpression::Disj(cs) => cs,
        other => std::slice::from_ref(other),
    };
    let ids = members
        .iter()
        .map(|m| match m {
            ConceptExpression::Atomic(a) => kb.concept_id(a.name()),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()?;
    let nd = NegatedDisjunct::new(ids.iter().copied())?;
    (nd.len() == ids.len() && !nd.is_empty()).then_some(nd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::family_fixture;

    fn ids(kb: &KnowledgeBase) -> (ConceptId, ConceptId, ConceptId, ConceptId, RoleId) {
        (
            kb.concept_id("Person").unwrap(),
            kb.concept_id("Male").unwrap(),
            kb.concept_id("Female").unwrap(),
            kb.concept_id("Parent").unwrap(),
            kb.role_id("hasChild").unwrap(),
        )
    }

    #[test]
    fn lowering_examples() {
        let kb = family_fixture();
        let (person, male, female, _, has_child) = ids(&kb);

        let s = SolutionCandidate::atomic(female);
        assert_eq!(s.to_expression(&kb).to_string(), "Female");

        let s = SolutionCandidate::atomic(person)
            .with_restriction(has_child, CandidateClass::single(HornClause::atomic(female)));
        assert_eq!(
            s.to_expression(&kb).to_string(),
            "Person and (hasChild some Female)"
        );

        let not_male = HornClause::new(ConceptId::TOP, NegatedDisjunct::new([male]).unwrap()).unwrap();
        let s = SolutionCandidate::atomic(ConceptId::TOP)
            .with_restriction(has_child, CandidateClass::single(not_male));
        assert_eq!(s.to_expression(&kb).to_string(), "hasChild some (not Male)");
        assert_eq!(s.to_expression(&kb).length(), 1);
    }

    #[test]
    fn head_cannot_be_negated() {
        let kb = family_fixture();
        let (person, male, ..) = ids(&kb);
        assert!(HornClause::new(person, NegatedDisjunct::new([person, male]).unwrap()).is_none());
        assert!(NegatedDisjunct::new([ConceptId::TOP]).is_none());
    }

    #[test]
    fn horn_length() {
        let kb = family_fixture();
        let (person, male, female, ..) = ids(&kb);
        let h = HornClause::new(person, NegatedDisjunct::new([male, female]).unwrap()).unwrap();
        assert_eq!(h.length(), 3);
        assert_eq!(
            h.to_expression(&kb).to_string(),
            "Person and (not (Female or Male))"
        );
    }

    #[test]
    fn from_expression_inverts_lowering() {
        let kb = family_fixture();
        let (person, male, female, parent, has_child) = ids(&kb);
        let class = CandidateClass::new([
            HornClause::new(person, NegatedDisjunct::new([male]).unwrap()).unwrap(),
            HornClause::atomic(parent),
            HornClause::new(ConceptId::TOP, NegatedDisjunct::new([female, male]).unwrap()).unwrap(),
        ])
        .unwrap();
        let forms = [
            SolutionForm::Restricted(SolutionCandidate::atomic(ConceptId::TOP)),
            SolutionForm::Restricted(SolutionCandidate::atomic(female)),
            SolutionForm::Restricted(
                SolutionCandidate::atomic(person).with_restriction(has_child, class.clone()),
            ),
            SolutionForm::Disjunction(class),
        ];
        for form in forms {
            let e = form.to_expression(&kb);
            assert_eq!(form.length(), e.length(), "{e}");
            let back = SolutionForm::from_expression(&kb, &e).unwrap();
            assert_eq!(back.to_expression(&kb), e);
        }
    }

    #[test]
    fn from_expression_rejects_other_shapes() {
        let kb = family_fixture();
        let e = ConceptExpression::exists(
            "hasChild",
            ConceptExpression::exists("hasChild", ConceptExpression::top()),
        );
        assert!(SolutionForm::from_expression(&kb, &e).is_none());
    }
}
