//! Reference semantics for checking the search.
//!
//! The oracle computes the least model of the knowledge base over its named
//! individuals with a naive tuple-at-a-time fixpoint, then evaluates
//! arbitrary expressions structurally on it: `⊔` as union, `¬` as absence,
//! `∃R.C` as a named `R`-successor in `C`. It shares no code with the
//! materializer or the bitset search.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::induce::{extension_form, Accuracy, FillSets, InduceError};
use crate::kb::{
    Axiom, ConceptExpression, ConceptId, ConceptKind, ExampleSet, IndividualId, KnowledgeBase, RoleId, SolutionForm,
};
use crate::materialize::Materialization;

pub struct Oracle<'a> {
    kb: &'a KnowledgeBase,
    types: HashSet<(IndividualId, ConceptId)>,
    successors: HashMap<IndividualId, Vec<(RoleId, IndividualId)>>,
}

impl<'a> Oracle<'a> {
    pub fn new(kb: &'a KnowledgeBase) -> Self {
        let mut successors: HashMap<IndividualId, Vec<(RoleId, IndividualId)>> = HashMap::new();
        for &(a, r, b) in kb.rel_assertions() {
            successors.entry(a).or_default().push((r, b));
        }
        let mut oracle = Oracle {
            kb,
            types: kb.type_assertions().iter().copied().collect(),
            successors,
        };
        for a in kb.individual_ids() {
            oracle.types.insert((a, ConceptId::TOP));
        }
        oracle.saturate();
        oracle
    }

    fn id(&self, name: &str) -> ConceptId {
        self.kb.concept_id(name).expect("axioms use declared names")
    }

    fn saturate(&mut self) {
        loop {
            let mut new = Vec::new();
            for a in self.kb.individual_ids() {
                for ax in self.kb.axioms() {
                    match ax {
                        Axiom::Subconcept(sub, sup) => {
                            if self.types.contains(&(a, self.id(sub.name()))) {
                                new.push((a, self.id(sup.name())));
                            }
                        }
                        Axiom::Equivalence(x, def) => {
                            let x = self.id(x.name());
                            if self.holds(a, def) {
                                new.push((a, x));
                            }
                            if self.types.contains(&(a, x)) {
                                let conjuncts: &[ConceptExpression] = match def {
                                    ConceptExpression::Conj(cs) => cs,
                                    other => std::slice::from_ref(other),
                                };
                                for c in conjuncts {
                                    if let ConceptExpression::Atomic(b) = c {
                                        new.push((a, self.id(b.name())));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            let before = self.types.len();
            self.types.extend(new);
            if self.types.len() == before {
                return;
            }
        }
    }

    /// Whether `a` is an instance of `expr` in the least model.
    pub fn holds(&self, a: IndividualId, expr: &ConceptExpression) -> bool {
        match expr {
            ConceptExpression::Atomic(c) => {
                c.is_top() || self.kb.concept_id(c.name()).is_some_and(|id| self.types.contains(&(a, id)))
            }
            ConceptExpression::Conj(cs) => cs.iter().all(|c| self.holds(a, c)),
            ConceptExpression::Disj(cs) => cs.iter().any(|c| self.holds(a, c)),
            ConceptExpression::Neg(inner) => !self.holds(a, inner),
            ConceptExpression::Exists(r, inner) => {
                let Some(role) = self.kb.role_id(r.name()) else {
                    return false;
                };
                self.successors
                    .get(&a)
                    .is_some_and(|s| s.iter().any(|&(q, b)| q == role && self.holds(b, inner)))
            }
        }
    }

    pub fn entails_instance(&self, a: IndividualId, expr: &ConceptExpression) -> bool {
        self.holds(a, expr)
    }

    pub fn instances(&self, expr: &ConceptExpression) -> BTreeSet<IndividualId> {
        self.kb.individual_ids().filter(|&a| self.holds(a, expr)).collect()
    }

    /// Exact accuracy of `expr` on the examples.
    pub fn alpha3(&self, expr: &ConceptExpression, examples: &ExampleSet) -> Accuracy {
        let hits = examples.positives().iter().filter(|e| self.holds(e.individual, expr)).count()
            + examples.negatives().iter().filter(|e| !self.holds(e.individual, expr)).count();
        Accuracy::new(hits, examples.len())
    }

    pub fn is_solution(&self, expr: &ConceptExpression, examples: &ExampleSet) -> bool {
        self.alpha3(expr, examples).is_perfect()
    }
}

/// Replaces fresh enrichment names in `expr` by their definitions.
pub fn unfold(kb: &KnowledgeBase, expr: &ConceptExpression) -> ConceptExpression {
    let defs: HashMap<&str, &ConceptExpression> = kb
        .axioms()
        .iter()
        .filter_map(|ax| match ax {
            Axiom::Equivalence(x, def) => kb
                .concept_id(x.name())
                .filter(|&id| kb.concept(id).kind == ConceptKind::Fresh)
                .map(|_| (x.name(), def)),
            Axiom::Subconcept(..) => None,
        })
        .collect();
    fn rec(e: &ConceptExpression, defs: &HashMap<&str, &ConceptExpression>) -> ConceptExpression {
        match e {
            ConceptExpression::Atomic(a) => match defs.get(a.name()) {
                Some(d) => rec(d, defs),
                None => e.clone(),
            },
            ConceptExpression::Conj(cs) => ConceptExpression::Conj(cs.iter().map(|c| rec(c, defs)).collect()),
            ConceptExpression::Disj(cs) => ConceptExpression::Disj(cs.iter().map(|c| rec(c, defs)).collect()),
            ConceptExpression::Neg(inner) => ConceptExpression::neg(rec(inner, defs)),
            ConceptExpression::Exists(r, inner) => ConceptExpression::Exists(r.clone(), Box::new(rec(inner, defs))),
        }
    }
    rec(expr, &defs)
}

/// Outcome of comparing the extension-based check with the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremCheck {
    /// The set-theoretic approximate-solution check.
    pub approximate: bool,
    /// Exact solution-hood under the oracle.
    pub exact: bool,
    /// An example the two membership tests disagree on.
    pub counterexample: Option<IndividualId>,
}

impl TheoremCheck {
    pub fn agrees(&self) -> bool {
        self.approximate == self.exact && self.counterexample.is_none()
    }
}

/// Compares `↓S` against oracle membership on every example, and the
/// approximate-solution verdict against exact solution-hood.
pub fn check_theorem(
    kb: &KnowledgeBase,
    m: &Materialization,
    examples: &ExampleSet,
    fills: &FillSets,
    form: &SolutionForm,
    oracle: &Oracle<'_>,
) -> Result<TheoremCheck, InduceError> {
    let ext = extension_form(form, m, examples, fills, kb)?;
    let expr = form.to_expression(kb);
    let approximate = examples.positives().iter().all(|e| ext.contains(&e.individual))
        && examples.negatives().iter().all(|e| !ext.contains(&e.individual));
    let counterexample = examples
        .all()
        .map(|e| e.individual)
        .find(|&a| ext.contains(&a) != oracle.holds(a, &expr));
    Ok(TheoremCheck {
        approximate,
        exact: oracle.is_solution(&expr, examples),
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enrich::{enrich_kb, enumerate_expressions};
    use crate::induce::compute_fill_sets;
    use crate::io::parse_expression;
    use crate::kb::family_fixture;
    use crate::materialize::{materialize, InvocationCounter};

    #[test]
    fn family_entailments() {
        let kb = family_fixture();
        let o = Oracle::new(&kb);
        let alice = kb.individual_id("alice").unwrap();
        let carol = kb.individual_id("carol").unwrap();
        assert!(o.entails_instance(alice, &parse_expression("Parent").unwrap()));
        assert!(o.entails_instance(alice, &parse_expression("hasChild some (not Male)").unwrap()));
        assert!(!o.entails_instance(carol, &parse_expression("Parent").unwrap()));
        assert!(o.entails_instance(carol, &parse_expression("Person and (not Parent)").unwrap()));
    }

    #[test]
    fn family_alpha3() {
        let kb = family_fixture();
        let ex = ExampleSet::from_names(&kb, &["alice"], &["bob"]).unwrap();
        let o = Oracle::new(&kb);
        assert!(o.alpha3(&parse_expression("Female").unwrap(), &ex).is_perfect());
        assert_eq!(o.alpha3(&parse_expression("Person").unwrap(), &ex), Accuracy::new(1, 2));
    }

    #[test]
    fn agrees_with_materializer_on_atomic_types() {
        let kb = family_fixture();
        let (kb2, _) = enrich_kb(&kb, &enumerate_expressions(&kb, 2, 2, 10_000).expressions);
        let m = materialize(&kb2, None, &InvocationCounter::new());
        let o = Oracle::new(&kb2);
        for a in kb2.individual_ids() {
            for c in kb2.concept_ids() {
                let e = ConceptExpression::Atomic(kb2.concept_name(c).clone());
                assert_eq!(m.contains(a, c), o.holds(a, &e), "{}({})", kb2.concept_name(c), kb2.individual_name(a));
            }
        }
    }

    #[test]
    fn unfolding_preserves_instances() {
        let kb = family_fixture();
        let en = enumerate_expressions(&kb, 1, 1, 10_000);
        let (kb2, _) = enrich_kb(&kb, &en.expressions);
        let o = Oracle::new(&kb);
        let o2 = Oracle::new(&kb2);
        for (i, e) in en.expressions.iter().enumerate() {
            let name = ConceptExpression::atomic(format!("_ECII_{i}").as_str());
            assert_eq!(unfold(&kb2, &name), *e);
            assert_eq!(o2.instances(&name), o.instances(e), "{e}");
        }
    }

    #[test]
    fn theorem_holds_on_family() {
        let kb = family_fixture();
        let m = materialize(&kb, None, &InvocationCounter::new());
        let ex = ExampleSet::from_names(&kb, &["alice"], &["bob"]).unwrap();
        let fs = compute_fill_sets(&ex);
        let o = Oracle::new(&kb);
        for text in ["Female", "Person and (hasChild some Female)", "hasChild some (not Male)", "Male"] {
            let form = SolutionForm::from_expression(&kb, &parse_expression(text).unwrap()).unwrap();
            let check = check_theorem(&kb, &m, &ex, &fs, &form, &o).unwrap();
            assert!(check.agrees(), "{text}: {check:?}");
        }
    }
}
