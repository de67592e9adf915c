//! Knowledge-base domain types: concepts, roles, individuals, axioms and
//! assertions, plus the candidate forms and example sets the search works
//! with.

mod candidate;
mod example;
mod expr;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use candidate::{CandidateClass, HornClause, NegatedDisjunct, SolutionCandidate, SolutionForm};
pub use example::{validate_star_shaped, Example, ExampleSet, StarShapeReport, Statement};
pub use expr::{AtomicConcept, ConceptExpression, Name, Role, RESERVED_WORDS, TOP_NAME};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KbError {
    #[error("undeclared {kind} `{name}`")]
    Undeclared { kind: EntityKind, name: String },
    #[error("duplicate declaration of {kind} `{name}`")]
    Duplicate { kind: EntityKind, name: String },
    #[error("invalid {kind} name `{name}`")]
    InvalidName { kind: EntityKind, name: String },
    #[error("unsupported axiom: {0}")]
    Unsupported(String),
    #[error("malformed expression `{0}`: empty conjunction or disjunction")]
    Malformed(String),
    #[error("individual `{0}` is both a positive and a negative example")]
    OverlappingExamples(String),
    #[error("no {0} examples given")]
    EmptyExamples(&'static str),
    #[error("example `{individual}` is not star-shaped: {offenders}")]
    NotStarShaped { individual: String, offenders: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntityKind {
    Concept,
    Role,
    Individual,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntityKind::Concept => "concept",
            EntityKind::Role => "role",
            EntityKind::Individual => "individual",
        })
    }
}

pub type Result<T, E = KbError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConceptId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RoleId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndividualId(pub u32);

impl ConceptId {
    /// `Thing` is always the first concept of a knowledge base.
    pub const TOP: ConceptId = ConceptId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl RoleId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl IndividualId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConceptKind {
    Top,
    Declared,
    /// Introduced by enrichment as a name for a complex expression.
    Fresh,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptInfo {
    pub name: AtomicConcept,
    pub kind: ConceptKind,
}

impl ConceptInfo {
    pub fn is_top(&self) -> bool {
        self.kind == ConceptKind::Top
    }

    pub fn is_fresh(&self) -> bool {
        self.kind == ConceptKind::Fresh
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `sub ⊑ sup`
    Subconcept(AtomicConcept, AtomicConcept),
    /// `name ≡ definition`, the definition built from atomics, `and` and `some` only.
    Equivalence(AtomicConcept, ConceptExpression),
}

/// Whether `s` can name a concept, role or individual.
pub fn is_valid_name(s: &str) -> bool {
    !s.is_empty()
        && !RESERVED_WORDS.contains(&s)
        && s
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '/' | '\''))
}

/// A knowledge base over the supported fragment: atomic subsumptions,
/// equivalences with `and`/`some` definitions, and a type/role ABox.
///
/// Ids are dense and assigned in declaration order; `Thing` is injected at
/// construction as [`ConceptId::TOP`].
#[derive(Debug, Clone)]
pub struct KnowledgeBase {
    concepts: Vec<ConceptInfo>,
    concept_index: HashMap<Name, ConceptId>,
    roles: Vec<Role>,
    role_index: HashMap<Name, RoleId>,
    individuals: Vec<Name>,
    individual_index: HashMap<Name, IndividualId>,
    axioms: Vec<Axiom>,
    type_assertions: BTreeSet<(IndividualId, ConceptId)>,
    rel_assertions: BTreeSet<(IndividualId, RoleId, IndividualId)>,
}

impl Default for KnowledgeBase {
    fn default() -> Self {
        Self::new()
    }
}

impl KnowledgeBase {
    pub fn new() -> Self {
        let top = AtomicConcept::top();
        let mut concept_index = HashMap::new();
        concept_index.insert(top.shared_name().clone(), ConceptId::TOP);
        KnowledgeBase {
            concepts: vec![ConceptInfo {
                name: top,
                kind: ConceptKind::Top,
            }],
            concept_index,
            roles: Vec::new(),
            role_index: HashMap::new(),
            individuals: Vec::new(),
            individual_index: HashMap::new(),
            axioms: Vec::new(),
            type_assertions: BTreeSet::new(),
            rel_assertions: BTreeSet::new(),
        }
    }

    pub fn declare_concept(&mut self, name: &str) -> Result<ConceptId> {
        self.insert_concept(name, ConceptKind::Declared)
    }

    pub fn declare_fresh_concept(&mut self, name: &str) -> Result<ConceptId> {
        self.insert_concept(name, ConceptKind::Fresh)
    }

    fn insert_concept(&mut self, name: &str, kind: ConceptKind) -> Result<ConceptId> {
        if !is_valid_name(name) {
            return Err(KbError::InvalidName {
                kind: EntityKind::Concept,
                name: name.to_string(),
            });
        }
        if self.concept_index.contains_key(name) {
            return Err(KbError::Duplicate {
                kind: EntityKind::Concept,
                name: name.to_string(),
            });
        }
        if self.role_index.contains_key(name) {
            return Err(KbError::Duplicate {
                kind: EntityKind::Role,
                name: name.to_string(),
            });
        }
        let id = ConceptId(self.concepts.len() as u32);
        let concept = AtomicConcept::new(name);
        self.concept_index.insert(concept.shared_name().clone(), id);
        self.concepts.push(ConceptInfo {
            name: concept,
            kind,
        });
        Ok(id)
    }

    pub fn declare_role(&mut self, name: &str) -> Result<RoleId> {
        if !is_valid_name(name) || name == TOP_NAME {
            return Err(KbError::InvalidName {
                kind: EntityKind::Role,
                name: name.to_string(),
            });
        }
        if self.role_index.contains_key(name) || self.concept_index.contains_key(name) {
            return Err(KbError::Duplicate {
                kind: EntityKind::Role,
                name: name.to_string(),
            });
        }
        let id = RoleId(self.roles.len() as u32);
        let role = Role::new(name);
        self.role_index.insert(Name::from(name), id);
        self.roles.push(role);
        Ok(id)
    }

    pub fn declare_individual(&mut self, name: &str) -> Result<IndividualId> {
        if !is_valid_name(name) {
            return Err(KbError::InvalidName {
                kind: EntityKind::Individual,
                name: name.to_string(),
            });
        }
        if self.individual_index.contains_key(name) {
            return Err(KbError::Duplicate {
                kind: EntityKind::Individual,
                name: name.to_string(),
            });
        }
        let id = IndividualId(self.individuals.len() as u32);
        let name = Name::from(name);
        self.individual_index.insert(name.clone(), id);
        self.individuals.push(name);
        Ok(id)
    }

    pub fn concept_id(&self, name: &str) -> Option<ConceptId> {
        self.concept_index.get(name).copied()
    }

    pub fn role_id(&self, name: &str) -> Option<RoleId> {
        self.role_index.get(name).copied()
    }

    pub fn individual_id(&self, name: &str) -> Option<IndividualId> {
        self.individual_index.get(name).copied()
    }

    pub fn require_concept(&self, name: &str) -> Result<ConceptId> {
        self.concept_id(name).ok_or_else(|| KbError::Undeclared {
            kind: EntityKind::Concept,
            name: name.to_string(),
        })
    }

    pub fn require_role(&self, name: &str) -> Result<RoleId> {
        self.role_id(name).ok_or_else(|| KbError::Undeclared {
            kind: EntityKind::Role,
            name: name.to_string(),
        })
    }

    pub fn require_individual(&self, name: &str) -> Result<IndividualId> {
        self.individual_id(name).ok_or_else(|| KbError::Undeclared {
            kind: EntityKind::Individual,
            name: name.to_string(),
        })
    }

    pub fn concept(&self, id: ConceptId) -> &ConceptInfo {
        &self.concepts[id.index()]
    }

    pub fn concept_name(&self, id: ConceptId) -> &AtomicConcept {
        &self.concepts[id.index()].name
    }

    pub fn role(&self, id: RoleId) -> &Role {
        &self.roles[id.index()]
    }

    pub fn individual_name(&self, id: IndividualId) -> &str {
        &self.individuals[id.index()]
    }

    pub fn num_concepts(&self) -> usize {
        self.concepts.len()
    }

    pub fn num_roles(&self) -> usize {
        self.roles.len()
    }

    pub fn num_individuals(&self) -> usize {
        self.individuals.len()
    }

    pub fn concept_ids(&self) -> impl Iterator<Item = ConceptId> {
        (0..self.concepts.len() as u32).map(ConceptId)
    }

    pub fn role_ids(&self) -> impl Iterator<Item = RoleId> {
        (0..self.roles.len() as u32).map(RoleId)
    }

    pub fn individual_ids(&self) -> impl Iterator<Item = IndividualId> {
        (0..self.individuals.len() as u32).map(IndividualId)
    }

    pub fn concepts(&self) -> &[ConceptInfo] {
        &self.concepts
    }

    pub fn axioms(&self) -> &[Axiom] {
        &self.axioms
    }

    pub fn type_assertions(&self) -> &BTreeSet<(IndividualId, ConceptId)> {
        &self.type_assertions
    }

    pub fn rel_assertions(&self) -> &BTreeSet<(IndividualId, RoleId, IndividualId)> {
        &self.rel_assertions
    }

    pub fn add_subsumption(&mut self, sub: &str, sup: &str) -> Result<()> {
        let sub = self.concept_name(self.require_concept(sub)?).clone();
        let sup = self.concept_name(self.require_concept(sup)?).clone();
        let axiom = Axiom::Subconcept(sub, sup);
        if !self.axioms.contains(&axiom) {
            self.axioms.push(axiom);
        }
        Ok(())
    }

    /// Adds `name ≡ definition`. The definition may only use atomics,
    /// conjunction and existential restriction; it is stored canonically.
    pub fn add_equivalence(&mut self, name: &str, definition: &ConceptExpression) -> Result<()> {
        let lhs = self.concept_name(self.require_concept(name)?).clone();
        if !is_el_definition(definition) {
            return Err(KbError::Unsupported(format!(
                "definition of `{name}` uses constructors other than and/some: {definition}"
            )));
        }
        let rhs = self.canonicalize(definition)?;
        let axiom = Axiom::Equivalence(lhs, rhs);
        if !self.axioms.contains(&axiom) {
            self.axioms.push(axiom);
        }
        Ok(())
    }

    pub fn assert_type(&mut self, individual: &str, concept: &str) -> Result<()> {
        let a = self.require_individual(individual)?;
        let c = self.require_concept(concept)?;
        self.type_assertions.insert((a, c));
        Ok(())
    }

    pub fn assert_rel(&mut self, subject: &str, role: &str, object: &str) -> Result<()> {
        let a = self.require_individual(subject)?;
        let r = self.require_role(role)?;
        let b = self.require_individual(object)?;
        self.rel_assertions.insert((a, r, b));
        Ok(())
    }

    pub fn asserted_types(&self, a: IndividualId) -> impl Iterator<Item = ConceptId> + '_ {
        self.type_assertions
            .range((a, ConceptId(0))..=(a, ConceptId(u32::MAX)))
            .map(|&(_, c)| c)
    }

    /// Outgoing role assertions of `a` as `(role, filler)` pairs.
    pub fn successors(&self, a: IndividualId) -> impl Iterator<Item = (RoleId, IndividualId)> + '_ {
        self.rel_assertions
            .range((a, RoleId(0), IndividualId(0))..=(a, RoleId(u32::MAX), IndividualId(u32::MAX)))
            .map(|&(_, r, b)| (r, b))
    }

    /// Checks that every name in `expr` is declared and every connective
    /// is non-empty.
    pub fn check_expression(&self, expr: &ConceptExpression) -> Result<()> {
        if !expr.is_well_formed() {
            return Err(KbError::Malformed(expr.to_string()));
        }
        let mut err = None;
        expr.for_each_atomic(&mut |a| {
            if err.is_none() && self.concept_id(a.name()).is_none() {
                err = Some(KbError::Undeclared {
                    kind: EntityKind::Concept,
                    name: a.name().to_string(),
                });
            }
        });
        expr.for_each_role(&mut |r| {
            if err.is_none() && self.role_id(r.name()).is_none() {
                err = Some(KbError::Undeclared {
                    kind: EntityKind::Role,
                    name: r.name().to_string(),
                });
            }
        });
        err.map_or(Ok(()), Err)
    }

    pub fn canonicalize(&self, expr: &ConceptExpression) -> Result<ConceptExpression> {
        self.check_expression(expr)?;
        Ok(expr.canonical())
    }

    /// Name-level view used for structural comparison, independent of
    /// declaration order.
    fn structure(&self) -> KbStructure {
        let mut axioms: Vec<String> = self
            .axioms
            .iter()
            .map(|ax| match ax {
                Axiom::Subconcept(a, b) => format!("sub {a} {b}"),
                Axiom::Equivalence(a, e) => format!("equiv {a} {e}"),
            })
            .collect();
        axioms.sort();
        KbStructure {
            concepts: self.concepts.iter().map(|c| c.name.name().to_string()).collect(),
            roles: self.roles.iter().map(|r| r.name().to_string()).collect(),
            individuals: self.individuals.iter().map(|n| n.to_string()).collect(),
            axioms,
            types: self
                .type_assertions
                .iter()
                .map(|&(a, c)| {
                    (
                        self.individual_name(a).to_string(),
                        self.concept_name(c).name().to_string(),
                    )
                })
                .collect(),
            rels: self
                .rel_assertions
                .iter()
                .map(|&(a, r, b)| {
                    (
                        self.individual_name(a).to_string(),
                        self.role(r).name().to_string(),
                        self.individual_name(b).to_string(),
                    )
                })
                .collect(),
        }
    }
}

#[derive(PartialEq, Eq)]
struct KbStructure {
    concepts: BTreeSet<String>,
    roles: BTreeSet<String>,
    individuals: BTreeSet<String>,
    axioms: Vec<String>,
    types: BTreeSet<(String, String)>,
    rels: BTreeSet<(String, String, String)>,
}

/// Structural equality: same names, axioms and assertions regardless of
/// declaration order.
impl PartialEq for KnowledgeBase {
    fn eq(&self, other: &Self) -> bool {
        self.structure() == other.structure()
    }
}

impl Eq for KnowledgeBase {}

fn is_el_definition(e: &ConceptExpression) -> bool {
    match e {
        ConceptExpression::Atomic(_) => true,
        ConceptExpression::Conj(cs) => cs.iter().all(is_el_definition),
        ConceptExpression::Exists(_, inner) => is_el_definition(inner),
        ConceptExpression::Disj(_) | ConceptExpression::Neg(_) => false,
    }
}

/// The small family knowledge base used throughout the tests and docs.
pub fn family_fixture() -> KnowledgeBase {
    let mut kb = KnowledgeBase::new();
    for c in ["Person", "Male", "Female", "Parent"] {
        kb.declare_concept(c).unwrap();
    }
    kb.declare_role("hasChild").unwrap();
    for i in ["alice", "bob", "carol", "dave"] {
        kb.declare_individual(i).unwrap();
    }
    kb.add_subsumption("Male", "Person").unwrap();
    kb.add_subsumption("Female", "Person").unwrap();
    kb.add_equivalence(
        "Parent",
        &ConceptExpression::exists("hasChild", ConceptExpression::atomic("Person")),
    )
    .unwrap();
    kb.assert_type("alice", "Female").unwrap();
    kb.assert_type("bob", "Male").unwrap();
    kb.assert_type("carol", "Female").unwrap();
    kb.assert_type("dave", "Male").unwrap();
    kb.assert_rel("alice", "hasChild", "carol").unwrap();
    kb.assert_rel("bob", "hasChild", "dave").unwrap();
    kb
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_exists_once() {
        let kb = KnowledgeBase::new();
        assert_eq!(kb.num_concepts(), 1);
        assert!(kb.concept(ConceptId::TOP).is_top());
        let mut kb = kb;
        assert!(matches!(
            kb.declare_concept("Thing"),
            Err(KbError::Duplicate { .. })
        ));
    }

    #[test]
    fn roles_and_concepts_share_no_names() {
        let mut kb = KnowledgeBase::new();
        kb.declare_concept("A").unwrap();
        assert!(kb.declare_role("A").is_err());
        kb.declare_role("r").unwrap();
        assert!(kb.declare_concept("r").is_err());
    }

    #[test]
    fn reserved_words_rejected() {
        let mut kb = KnowledgeBase::new();
        assert!(kb.declare_concept("and").is_err());
        assert!(kb.declare_individual("some").is_err());
        assert!(kb.declare_concept("has space").is_err());
        assert!(kb.declare_concept("(x").is_err());
    }

    #[test]
    fn assertions_need_declarations() {
        let mut kb = KnowledgeBase::new();
        kb.declare_concept("Female").unwrap();
        assert!(matches!(
            kb.assert_type("alice", "Female"),
            Err(KbError::Undeclared {
                kind: EntityKind::Individual,
                ..
            })
        ));
    }

    #[test]
    fn equivalence_rejects_negation() {
        let mut kb = family_fixture();
        let bad = ConceptExpression::neg(ConceptExpression::atomic("Male"));
        assert!(matches!(
            kb.add_equivalence("Parent", &bad),
            Err(KbError::Unsupported(_))
        ));
    }

    #[test]
    fn canonicalize_checks_names() {
        let kb = family_fixture();
        let e = ConceptExpression::conj([
            ConceptExpression::atomic("Male"),
            ConceptExpression::atomic("Female"),
        ]);
        assert_eq!(
            kb.canonicalize(&e).unwrap().to_string(),
            "Female and Male"
        );
        let undeclared = ConceptExpression::exists("likes", ConceptExpression::top());
        assert!(kb.canonicalize(&undeclared).is_err());
    }

    #[test]
    fn fixture_shape() {
        let kb = family_fixture();
        assert_eq!(kb.num_concepts(), 5);
        assert_eq!(kb.num_roles(), 1);
        assert_eq!(kb.num_individuals(), 4);
        assert_eq!(kb.axioms().len(), 3);
        assert_eq!(kb.type_assertions().len() + kb.rel_assertions().len(), 6);
        let alice = kb.individual_id("alice").unwrap();
        let succ: Vec<_> = kb.successors(alice).collect();
        assert_eq!(succ, vec![(RoleId(0), kb.individual_id("carol").unwrap())]);
    }

    #[test]
    fn structural_equality_ignores_order() {
        let mut a = KnowledgeBase::new();
        a.declare_concept("A").unwrap();
        a.declare_concept("B").unwrap();
        let mut b = KnowledgeBase::new();
        b.declare_concept("B").unwrap();
        b.declare_concept("A").unwrap();
        assert_eq!(a, b);
        b.declare_individual("x").unwrap();
        assert_ne!(a, b);
    }
}
