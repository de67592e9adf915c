//! Concept expressions and their canonical form.
//!
//! Expressions carry names rather than knowledge-base ids so they can be
//! rendered, compared and re-parsed without a knowledge base at hand.
//! [`KnowledgeBase::canonicalize`](super::KnowledgeBase::canonicalize) adds
//! the declared-entity check on top of [`ConceptExpression::canonical`].

use std::fmt;
use std::sync::Arc;

/// Shared, immutable identifier text.
pub type Name = Arc<str>;

/// Surface name of the universal concept.
pub const TOP_NAME: &str = "Thing";

/// Words that cannot be used as entity names because the expression
/// syntax reserves them.
pub const RESERVED_WORDS: [&str; 4] = ["and", "or", "not", "some"];

/// A named class. The universal concept is the name [`TOP_NAME`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomicConcept(Name);

impl AtomicConcept {
    pub fn new(name: impl Into<Name>) -> Self {
        AtomicConcept(name.into())
    }

    pub fn top() -> Self {
        AtomicConcept(Name::from(TOP_NAME))
    }

    pub fn is_top(&self) -> bool {
        &*self.0 == TOP_NAME
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn shared_name(&self) -> &Name {
        &self.0
    }
}

impl fmt::Display for AtomicConcept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Role(Name);

impl Role {
    pub fn new(name: impl Into<Name>) -> Self {
        Role(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A description-logic class expression.
///
/// `Display` renders the Manchester-like surface syntax (`and`, `or`,
/// `not`, `some`), printing children in the order they are stored. That
/// rendering is also the serialization canonical ordering is based on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConceptExpression {
    Atomic(AtomicConcept),
    Conj(Vec<ConceptExpression>),
    Disj(Vec<ConceptExpression>),
    Neg(Box<ConceptExpression>),
    Exists(Role, Box<ConceptExpression>),
}

impl ConceptExpression {
    pub fn atomic(name: impl Into<Name>) -> Self {
        ConceptExpression::Atomic(AtomicConcept::new(name))
    }

    pub fn top() -> Self {
        ConceptExpression::Atomic(AtomicConcept::top())
    }

    pub fn conj(children: impl IntoIterator<Item = ConceptExpression>) -> Self {
        ConceptExpression::Conj(children.into_iter().collect())
    }

    pub fn disj(children: impl IntoIterator<Item = ConceptExpression>) -> Self {
        ConceptExpression::Disj(children.into_iter().collect())
    }

    pub fn neg(inner: ConceptExpression) -> Self {
        ConceptExpression::Neg(Box::new(inner))
    }

    pub fn exists(role: impl Into<Name>, filler: ConceptExpression) -> Self {
        ConceptExpression::Exists(Role::new(role), Box::new(filler))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, ConceptExpression::Atomic(_))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, ConceptExpression::Atomic(a) if a.is_top())
    }

    /// Number of atomic-concept occurrences, `Thing` included.
    pub fn length(&self) -> usize {
        match self {
            ConceptExpression::Atomic(_) => 1,
            ConceptExpression::Conj(cs) | ConceptExpression::Disj(cs) => {
                cs.iter().map(Self::length).sum()
            }
            ConceptExpression::Neg(inner) | ConceptExpression::Exists(_, inner) => inner.length(),
        }
    }

    /// Number of binary `and` symbols needed to write the expression.
    pub fn conjunction_count(&self) -> usize {
        match self {
            ConceptExpression::Atomic(_) => 0,
            ConceptExpression::Conj(cs) => {
                cs.len().saturating_sub(1) + cs.iter().map(Self::conjunction_count).sum::<usize>()
            }
            ConceptExpression::Disj(cs) => cs.iter().map(Self::conjunction_count).sum(),
            ConceptExpression::Neg(inner) | ConceptExpression::Exists(_, inner) => {
                inner.conjunction_count()
            }
        }
    }

    pub fn exists_count(&self) -> usize {
        match self {
            ConceptExpression::Atomic(_) => 0,
            ConceptExpression::Conj(cs) | ConceptExpression::Disj(cs) => {
                cs.iter().map(Self::exists_count).sum()
            }
            ConceptExpression::Neg(inner) => inner.exists_count(),
            ConceptExpression::Exists(_, inner) => 1 + inner.exists_count(),
        }
    }

    /// Calls `f` on every atomic concept occurrence, left to right.
    pub fn for_each_atomic<'a>(&'a self, f: &mut impl FnMut(&'a AtomicConcept)) {
        match self {
            ConceptExpression::Atomic(a) => f(a),
            ConceptExpression::Conj(cs) | ConceptExpression::Disj(cs) => {
                cs.iter().for_each(|c| c.for_each_atomic(f))
            }
            ConceptExpression::Neg(inner) | ConceptExpression::Exists(_, inner) => {
                inner.for_each_atomic(f)
            }
        }
    }

    pub fn for_each_role<'a>(&'a self, f: &mut impl FnMut(&'a Role)) {
        match self {
            ConceptExpression::Atomic(_) => {}
            ConceptExpression::Conj(cs) | ConceptExpression::Disj(cs) => {
                cs.iter().for_each(|c| c.for_each_role(f))
            }
            ConceptExpression::Neg(inner) => inner.for_each_role(f),
            ConceptExpression::Exists(r, inner) => {
                f(r);
                inner.for_each_role(f)
            }
        }
    }

    /// True when no conjunction or disjunction is empty.
    pub fn is_well_formed(&self) -> bool {
        match self {
            ConceptExpression::Atomic(_) => true,
            ConceptExpression::Conj(cs) | ConceptExpression::Disj(cs) => {
                !cs.is_empty() && cs.iter().all(Self::is_well_formed)
            }
            ConceptExpression::Neg(inner) | ConceptExpression::Exists(_, inner) => {
                inner.is_well_formed()
            }
        }
    }

    /// Canonical form modulo associativity, commutativity and idempotence
    /// of `and` / `or`: nested connectives of the same kind are flattened,
    /// children are deduplicated and sorted by their rendering, and a
    /// connective left with a single child collapses to it.
    ///
    /// An empty conjunction becomes `Thing`; an empty disjunction is left
    /// empty (it is not well formed).
    pub fn canonical(&self) -> ConceptExpression {
        match self {
            ConceptExpression::Atomic(_) => self.clone(),
            ConceptExpression::Neg(inner) => ConceptExpression::Neg(Box::new(inner.canonical())),
            ConceptExpression::Exists(r, inner) => {
                ConceptExpression::Exists(r.clone(), Box::new(inner.canonical()))
            }
            ConceptExpression::Conj(cs) => {
                let flat = flatten(cs, |e| match e {
                    ConceptExpression::Conj(inner) => Some(inner),
                    _ => None,
                });
                match flat.len() {
                    0 => ConceptExpression::top(),
                    1 => flat.into_iter().next().unwrap(),
                    _ => ConceptExpression::Conj(flat),
                }
            }
            ConceptExpression::Disj(cs) => {
                let flat = flatten(cs, |e| match e {
                    ConceptExpression::Disj(inner) => Some(inner),
                    _ => None,
                });
                if flat.len() == 1 {
                    flat.into_iter().next().unwrap()
                } else {
                    ConceptExpression::Disj(flat)
                }
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }
}

fn flatten(
    children: &[ConceptExpression],
    same_kind: impl Fn(&ConceptExpression) -> Option<&Vec<ConceptExpression>>,
) -> Vec<ConceptExpression> {
    let mut keyed: Vec<(String, ConceptExpression)> = Vec::with_capacity(children.len());
    for child in children {
        let child = child.canonical();
        // canonical children never hold a same-kind connective themselves
        match same_kind(&child) {
            Some(grandchildren) => {
                keyed.extend(grandchildren.iter().map(|g| (g.to_string(), g.clone())))
            }
            None => keyed.push((child.to_string(), child)),
        }
    }
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    keyed.into_iter().map(|(_, e)| e).collect()
}

fn write_operand(f: &mut fmt::Formatter<'_>, e: &ConceptExpression) -> fmt::Result {
    if e.is_atomic() {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

impl fmt::Display for ConceptExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConceptExpression::Atomic(a) => write!(f, "{a}"),
            ConceptExpression::Conj(cs) | ConceptExpression::Disj(cs) => {
                let sep = if matches!(self, ConceptExpression::Conj(_)) {
                    " and "
                } else {
                    " or "
                };
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    write_operand(f, c)?;
                }
                Ok(())
            }
            ConceptExpression::Neg(inner) => {
                f.write_str("not ")?;
                write_operand(f, inner)
            }
            ConceptExpression::Exists(r, inner) => {
                write!(f, "{r} some ")?;
                write_operand(f, inner)
            }
        }
    }
}
