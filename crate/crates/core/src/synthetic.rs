//! Seeded generators for tests and benchmarks: star-shaped example
//! knowledge bases, planted family knowledge bases, arbitrary knowledge
//! bases and expressions, and random solution candidates.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kb::{
    CandidateClass, ConceptExpression, ConceptId, HornClause, KnowledgeBase, NegatedDisjunct, RoleId,
    SolutionCandidate, SolutionForm,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A knowledge base with example names.
#[derive(Debug, Clone)]
pub struct Job {
    pub kb: KnowledgeBase,
    pub positives: Vec<String>,
    pub negatives: Vec<String>,
}

#[derive(Debug, Clone, Copy)]
pub struct StarParams {
    pub max_individuals: usize,
    pub max_concepts: usize,
    pub max_roles: usize,
    /// Also add equivalences `X ≡ A ⊓ ∃r.B` over the signature.
    pub equivalences: bool,
}

impl Default for StarParams {
    fn default() -> Self {
        StarParams {
            max_individuals: 12,
            max_concepts: 6,
            max_roles: 2,
            equivalences: false,
        }
    }
}

/// Hub individuals (the examples) with edges to spoke individuals that
/// have no outgoing edges; spokes may be shared between hubs. The TBox is
/// a random atomic subsumption hierarchy.
pub fn random_star_job(rng: &mut impl Rng, p: StarParams) -> Job {
    let mut kb = KnowledgeBase::new();
    let nc = rng.gen_range(1..=p.max_concepts.max(1));
    let concepts: Vec<String> = (0..nc).map(|i| format!("C{i}")).collect();
    for c in &concepts {
        kb.declare_concept(c).unwrap();
    }
    for i in 0..nc {
        for j in i + 1..nc {
            if rng.gen_bool(0.2) {
                kb.add_subsumption(&concepts[i], &concepts[j]).unwrap();
            }
        }
    }
    let nr = rng.gen_range(0..=p.max_roles);
    let roles: Vec<String> = (0..nr).map(|i| format!("r{i}")).collect();
    for r in &roles {
        kb.declare_role(r).unwrap();
    }
    if p.equivalences && nr > 0 && nc >= 2 {
        for _ in 0..rng.gen_range(0..=2) {
            let x = format!("X{}", kb.num_concepts());
            kb.declare_concept(&x).unwrap();
            let a = concepts.choose(rng).unwrap();
            let b = concepts.choose(rng).unwrap();
            let r = roles.choose(rng).unwrap();
            let def = ConceptExpression::conj([
                ConceptExpression::atomic(a.as_str()),
                ConceptExpression::exists(r.as_str(), ConceptExpression::atomic(b.as_str())),
            ]);
            kb.add_equivalence(&x, &def).unwrap();
        }
    }

    let n = rng.gen_range(4..=p.max_individuals.max(4));
    let hubs = rng.gen_range(2..=n / 2);
    let names: Vec<String> = (0..n).map(|i| if i < hubs { format!("h{i}") } else { format!("s{i}") }).collect();
    for name in &names {
        kb.declare_individual(name).unwrap();
    }
    for name in &names {
        for c in &concepts {
            if rng.gen_bool(0.35) {
                kb.assert_type(name, c).unwrap();
            }
        }
    }
    if nr > 0 {
        for h in &names[..hubs] {
            for _ in 0..rng.gen_range(0..=3) {
                let s = &names[rng.gen_range(hubs..n)];
                kb.assert_rel(h, roles.choose(rng).unwrap(), s).unwrap();
            }
        }
    }
    let mut order: Vec<usize> = (0..hubs).collect();
    order.shuffle(rng);
    let cut = rng.gen_range(1..hubs);
    Job {
        kb,
        positives: order[..cut].iter().map(|&i| names[i].clone()).collect(),
        negatives: order[cut..].iter().map(|&i| names[i].clone()).collect(),
    }
}

/// Parents with children, where positive parents have a `Gifted` child and
/// negative ones do not, so `hasChild some Gifted` separates them exactly.
/// About a third of the `n` individuals are parents.
pub fn family_job(n: usize, seed: u64) -> Job {
    assert!(n >= 6, "family knowledge base needs at least 6 individuals");
    let mut rng = rng(seed);
    let mut kb = KnowledgeBase::new();
    for c in ["Person", "Male", "Female", "Gifted", "Parent"] {
        kb.declare_concept(c).unwrap();
    }
    kb.declare_role("hasChild").unwrap();
    kb.add_subsumption("Male", "Person").unwrap();
    kb.add_subsumption("Female", "Person").unwrap();
    kb.add_subsumption("Gifted", "Person").unwrap();
    kb.add_equivalence(
        "Parent",
        &ConceptExpression::exists("hasChild", ConceptExpression::atomic("Person")),
    )
    .unwrap();

    let parents = n.div_ceil(3);
    let children = n - parents;
    let parent_names: Vec<String> = (0..parents).map(|i| format!("p{i}")).collect();
    let child_names: Vec<String> = (0..children).map(|i| format!("c{i}")).collect();
    for name in parent_names.iter().chain(&child_names) {
        kb.declare_individual(name).unwrap();
        let sex = if rng.gen_bool(0.5) { "Male" } else { "Female" };
        kb.assert_type(name, sex).unwrap();
    }
    let mut positives = Vec::new();
    let mut negatives = Vec::new();
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); parents];
    for c in 0..children {
        kids[c % parents].push(c);
    }
    for (p, name) in parent_names.iter().enumerate() {
        let positive = p % 2 == 0;
        for (k, &c) in kids[p].iter().enumerate() {
            kb.assert_rel(name, "hasChild", &child_names[c]).unwrap();
            if positive && (k == 0 || rng.gen_bool(0.3)) {
                kb.assert_type(&child_names[c], "Gifted").unwrap();
            }
        }
        if kids[p].is_empty() {
            continue;
        }
        if positive {
            positives.push(name.clone());
        } else {
            negatives.push(name.clone());
        }
    }
    Job {
        kb,
        positives,
        negatives,
    }
}

/// A knowledge base over the full supported fragment without shape
/// restrictions, for serialization tests.
pub fn random_kb(rng: &mut impl Rng) -> KnowledgeBase {
    let mut kb = KnowledgeBase::new();
    let nc = rng.gen_range(0..=6);
    let nr = rng.gen_range(0..=3);
    let ni = rng.gen_range(0..=8);
    let concepts: Vec<String> = (0..nc).map(|i| format!("K{i}")).collect();
    let roles: Vec<String> = (0..nr).map(|i| format!("rel_{i}")).collect();
    let inds: Vec<String> = (0..ni).map(|i| format!("i{i}")).collect();
    for c in &concepts {
        kb.declare_concept(c).unwrap();
    }
    for r in &roles {
        kb.declare_role(r).unwrap();
    }
    for i in &inds {
        kb.declare_individual(i).unwrap();
    }
    if nc == 0 {
        return kb;
    }
    let atoms: Vec<&str> = concepts.iter().map(String::as_str).chain(["Thing"]).collect();
    for _ in 0..rng.gen_range(0..=4) {
        kb.add_subsumption(concepts.choose(rng).unwrap(), atoms.choose(rng).unwrap())
            .unwrap();
    }
    for _ in 0..rng.gen_range(0..=3) {
        let def = random_el_expression(rng, &atoms, &roles, 2);
        kb.add_equivalence(concepts.choose(rng).unwrap(), &def).unwrap();
    }
    for _ in 0..rng.gen_range(0..=10) {
        if let Some(i) = inds.choose(rng) {
            kb.assert_type(i, atoms.choose(rng).unwrap()).unwrap();
        }
    }
    if nr > 0 && ni > 0 {
        for _ in 0..rng.gen_range(0..=8) {
            kb.assert_rel(inds.choose(rng).unwrap(), roles.choose(rng).unwrap(), inds.choose(rng).unwrap())
                .unwrap();
        }
    }
    kb
}

fn random_el_expression(rng: &mut impl Rng, atoms: &[&str], roles: &[String], depth: usize) -> ConceptExpression {
    let choice = if depth == 0 { 0 } else { rng.gen_range(0..3) };
    match choice {
        1 => ConceptExpression::conj((0..rng.gen_range(2..=3)).map(|_| random_el_expression(rng, atoms, roles, depth - 1))),
        2 if !roles.is_empty() => ConceptExpression::exists(
            roles.choose(rng).unwrap().as_str(),
            random_el_expression(rng, atoms, roles, depth - 1),
        ),
        _ => ConceptExpression::atomic(*atoms.choose(rng).unwrap()),
    }
}

/// An arbitrary expression using every constructor.
pub fn random_expression(rng: &mut impl Rng, atoms: &[&str], roles: &[&str], depth: usize) -> ConceptExpression {
    let choice = if depth == 0 { 0 } else { rng.gen_range(0..5) };
    let sub = |rng: &mut _| random_expression(rng, atoms, roles, depth - 1);
    match choice {
        1 => ConceptExpression::conj((0..rng.gen_range(2..=3)).map(|_| sub(rng)).collect::<Vec<_>>()),
        2 => ConceptExpression::disj((0..rng.gen_range(2..=3)).map(|_| sub(rng)).collect::<Vec<_>>()),
        3 => ConceptExpression::neg(sub(rng)),
        4 => ConceptExpression::exists(*roles.choose(rng).unwrap(), sub(rng)),
        _ => ConceptExpression::atomic(*atoms.choose(rng).unwrap()),
    }
}

fn random_horn(rng: &mut impl Rng, concepts: &[ConceptId], k1: usize) -> HornClause {
    let head = *concepts.choose(rng).unwrap();
    let others: Vec<ConceptId> = concepts
        .iter()
        .copied()
        .filter(|&c| c != head && c != ConceptId::TOP)
        .collect();
    let n = rng.gen_range(0..k1.max(1)).min(others.len());
    let neg = NegatedDisjunct::new(others.choose_multiple(rng, n).copied()).unwrap();
    HornClause::new(head, neg).unwrap()
}

fn random_class(rng: &mut impl Rng, concepts: &[ConceptId], k1: usize, k2: usize) -> CandidateClass {
    CandidateClass::new((0..rng.gen_range(1..=k2.max(1))).map(|_| random_horn(rng, concepts, k1))).unwrap()
}

/// A random solution form over `kb` using restrictions on `roles` only.
pub fn random_solution(rng: &mut impl Rng, kb: &KnowledgeBase, roles: &[RoleId], k1: usize, k2: usize, k3: usize) -> SolutionForm {
    let concepts: Vec<ConceptId> = kb.concept_ids().collect();
    if roles.is_empty() || rng.gen_bool(0.1) {
        if rng.gen_bool(0.5) {
            return SolutionForm::Disjunction(random_class(rng, &concepts, k1, k2));
        }
        return SolutionForm::Restricted(SolutionCandidate::atomic(*concepts.choose(rng).unwrap()));
    }
    let mut s = SolutionCandidate::atomic(*concepts.choose(rng).unwrap());
    let count = rng.gen_range(0..=k3.min(roles.len()));
    for &r in roles.choose_multiple(rng, count) {
        s = s.with_restriction(r, random_class(rng, &concepts, k1, k2));
    }
    SolutionForm::Restricted(s)
}
