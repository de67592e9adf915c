//! The three search stages over bitsets.
//!
//! * Stage I ranks Horn clauses `B ⊓ ¬(D₁ ⊔ …)` over a filler pool by α1.
//! * Stage II ranks disjunctions of up to `k2` stage-I clauses by the same
//!   measure.
//! * Stage III ranks `A ⊓ ⊓ᵢ ∃Rᵢ.Cᵢ` over the examples by α2.
//!
//! Each stage walks its candidate space depth first and prunes a subtree
//! once an upper bound on its accuracy, together with its minimum length,
//! can no longer enter the current top-k. Results depend only on the
//! ranking order, not on visiting order or thread scheduling.

use std::collections::BTreeSet;

use log::warn;
use rayon::prelude::*;

use super::fill::{FillSets, RoleFill};
use super::topk::TopK;
use super::{Accuracy, SearchConfig};
use crate::bitset::BitSet;
use crate::kb::{
    CandidateClass, ConceptId, ExampleSet, HornClause, IndividualId, KnowledgeBase, NegatedDisjunct, RoleId,
    SolutionCandidate, SolutionForm,
};
use crate::materialize::Materialization;

/// Individuals scored against, split into positive and negative sides.
/// The sides may overlap when a filler is shared.
#[derive(Debug, Clone)]
pub struct FillerPool {
    pub individuals: Vec<IndividualId>,
    pub pos: BitSet,
    pub neg: BitSet,
    pos_only: BitSet,
    neg_only: BitSet,
}

impl FillerPool {
    fn build(individuals: Vec<IndividualId>, pos: &BTreeSet<IndividualId>, neg: &BTreeSet<IndividualId>) -> Self {
        let n = individuals.len();
        let side = |set: &BTreeSet<IndividualId>| {
            BitSet::from_indices(
                n,
                individuals.iter().enumerate().filter(|(_, a)| set.contains(a)).map(|(i, _)| i),
            )
        };
        let (pos, neg) = (side(pos), side(neg));
        FillerPool {
            individuals,
            pos_only: pos.difference(&neg),
            neg_only: neg.difference(&pos),
            pos,
            neg,
        }
    }

    /// `R̄` with sides `R̄⁺`, `R̄⁻`.
    pub fn for_role(fill: &RoleFill) -> Self {
        Self::build(fill.all.iter().copied().collect(), &fill.pos, &fill.neg)
    }

    /// The examples themselves, with sides `P` and `N`.
    pub fn for_examples(examples: &ExampleSet) -> Self {
        let pos: BTreeSet<_> = examples.positives().iter().map(|e| e.individual).collect();
        let neg: BTreeSet<_> = examples.negatives().iter().map(|e| e.individual).collect();
        Self::build(pos.union(&neg).copied().collect(), &pos, &neg)
    }

    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    /// `(|pos ∩ ext| + |neg \ ext|) / |pool|`
    pub fn score(&self, ext: &BitSet) -> Accuracy {
        Accuracy::new(
            self.pos.intersection_count(ext) + self.neg.difference_count(ext),
            self.len(),
        )
    }

    /// Best score over subsets of `ext`.
    fn bound_shrinking(&self, ext: &BitSet) -> Accuracy {
        Accuracy::new(self.pos_only.intersection_count(ext) + self.neg.count(), self.len())
    }

    /// Best score over supersets of `ext`.
    fn bound_growing(&self, ext: &BitSet) -> Accuracy {
        Accuracy::new(self.pos.count() + self.neg_only.difference_count(ext), self.len())
    }
}

/// An atomic concept with its extension over a pool.
#[derive(Debug, Clone)]
pub struct PoolConcept {
    pub concept: ConceptId,
    pub ext: BitSet,
}

/// `N_R`: concepts with an instance in the pool, sorted by name. Common
/// types are dropped unless `keep_common`; `Thing` is always kept.
pub fn candidate_concepts(
    kb: &KnowledgeBase,
    m: &Materialization,
    pool: &FillerPool,
    common: &BTreeSet<ConceptId>,
    keep_common: bool,
) -> Vec<PoolConcept> {
    let local = m.local_index(&pool.individuals);
    let mut out: Vec<PoolConcept> = kb
        .concept_ids()
        .filter(|c| keep_common || *c == ConceptId::TOP || !common.contains(c))
        .map(|c| PoolConcept {
            concept: c,
            ext: m.extension_on(c, &local),
        })
        .filter(|pc| !pc.ext.is_empty())
        .collect();
    out.sort_by(|a, b| kb.concept_name(a.concept).name().cmp(kb.concept_name(b.concept).name()));
    out
}

/// A stage-I result.
#[derive(Debug, Clone)]
pub struct ScoredClause {
    pub clause: HornClause,
    pub accuracy: Accuracy,
    pub length: usize,
    pub text: String,
    pub ext: BitSet,
}

fn horn_length(head: ConceptId, negs: usize) -> usize {
    if head == ConceptId::TOP && negs > 0 {
        negs
    } else {
        1 + negs
    }
}

/// Visits every Horn clause over `concepts` with at most `k1` atomic
/// classes, head first, then negated disjuncts in increasing index order.
/// `visit` receives the clause's negated members, extension and length and
/// returns whether to extend that disjunct further.
fn walk_horn(
    concepts: &[PoolConcept],
    head: usize,
    k1: usize,
    visit: &mut impl FnMut(&[usize], &BitSet, usize) -> bool,
) {
    fn rec(
        concepts: &[PoolConcept],
        head: usize,
        k1: usize,
        start: usize,
        negs: &mut Vec<usize>,
        ext: &BitSet,
        visit: &mut impl FnMut(&[usize], &BitSet, usize) -> bool,
    ) {
        let head_id = concepts[head].concept;
        for i in start..concepts.len() {
            if i == head || concepts[i].concept == ConceptId::TOP {
                continue;
            }
            let next = ext.difference(&concepts[i].ext);
            negs.push(i);
            let descend = visit(negs, &next, horn_length(head_id, negs.len()));
            if descend && 1 + negs.len() < k1 {
                rec(concepts, head, k1, i + 1, negs, &next, visit);
            }
            negs.pop();
        }
    }
    let ext = concepts[head].ext.clone();
    let descend = visit(&[], &ext, 1);
    if descend && k1 > 1 {
        rec(concepts, head, k1, 0, &mut Vec::new(), &ext, visit);
    }
}

fn make_clause(concepts: &[PoolConcept], head: usize, negs: &[usize]) -> HornClause {
    HornClause::new(
        concepts[head].concept,
        NegatedDisjunct::new(negs.iter().map(|&i| concepts[i].concept)).expect("Thing is never negated"),
    )
    .expect("head is never negated")
}

/// Stage I: the `k4` best Horn clauses with at most `k1` atomic classes.
pub fn stage1_horn_clauses(
    kb: &KnowledgeBase,
    pool: &FillerPool,
    concepts: &[PoolConcept],
    cfg: &SearchConfig,
) -> Vec<ScoredClause> {
    let top = (0..concepts.len())
        .into_par_iter()
        .fold(
            || TopK::new(cfg.k4),
            |mut top, head| {
                walk_horn(concepts, head, cfg.k1, &mut |negs, ext, len| {
                    let accuracy = pool.score(ext);
                    let clause = || make_clause(concepts, head, negs);
                    top.offer(
                        accuracy,
                        len,
                        || clause().to_expression(kb).to_string(),
                        || (clause(), ext.clone()),
                    );
                    let min_next = horn_length(concepts[head].concept, negs.len() + 1);
                    top.could_admit(pool.bound_shrinking(ext), min_next)
                });
                top
            },
        )
        .reduce(|| TopK::new(cfg.k4), TopK::merge);
    top.into_sorted()
        .into_iter()
        .map(|r| ScoredClause {
            clause: r.item.0,
            accuracy: r.accuracy,
            length: r.length,
            text: r.text,
            ext: r.item.1,
        })
        .collect()
}

/// Every Horn clause over `pool` with at most `k1` atomic classes.
pub fn enumerate_horn_clauses(pool: &[ConceptId], k1: usize) -> Vec<HornClause> {
    let concepts: Vec<PoolConcept> = pool
        .iter()
        .map(|&c| PoolConcept {
            concept: c,
            ext: BitSet::new(0),
        })
        .collect();
    let mut out = Vec::new();
    for head in 0..concepts.len() {
        walk_horn(&concepts, head, k1, &mut |negs, _, _| {
            out.push(make_clause(&concepts, head, negs));
            true
        });
    }
    out
}

/// `Σ_{j<k1} n·C(n−1, j)`: Horn clauses over `n` concepts, none of them
/// `Thing`, with at most `k1` atomic classes.
pub fn horn_clause_count(n: usize, k1: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut total = 0u128;
    let mut binom = 1u128; // C(n−1, j)
    for j in 0..k1 {
        if j > n - 1 {
            break;
        }
        total += n as u128 * binom;
        binom = binom * (n - 1 - j) as u128 / (j + 1) as u128;
    }
    total
}

/// A stage-II result.
#[derive(Debug, Clone)]
pub struct ScoredClass {
    pub class: CandidateClass,
    pub accuracy: Accuracy,
    pub length: usize,
    pub text: String,
    pub ext: BitSet,
}

/// Stage II: the `k5` best disjunctions of up to `k2` clauses from `clauses`.
pub fn stage2_candidate_classes(
    kb: &KnowledgeBase,
    pool: &FillerPool,
    clauses: &[ScoredClause],
    cfg: &SearchConfig,
) -> Vec<ScoredClass> {
    fn rec(
        kb: &KnowledgeBase,
        pool: &FillerPool,
        clauses: &[ScoredClause],
        k2: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        ext: &BitSet,
        len: usize,
        top: &mut TopK<(CandidateClass, BitSet)>,
    ) {
        for i in start..clauses.len() {
            let next = ext.union(&clauses[i].ext);
            let next_len = len + clauses[i].length;
            chosen.push(i);
            let class = || CandidateClass::new(chosen.iter().map(|&j| clauses[j].clause.clone())).expect("non-empty");
            top.offer(
                pool.score(&next),
                next_len,
                || class().to_expression(kb).to_string(),
                || (class(), next.clone()),
            );
            if chosen.len() < k2 && top.could_admit(pool.bound_growing(&next), next_len + 1) {
                rec(kb, pool, clauses, k2, i + 1, chosen, &next, next_len, top);
            }
            chosen.pop();
        }
    }
    let mut top = TopK::new(cfg.k5);
    if cfg.k2 > 0 {
        rec(kb, pool, clauses, cfg.k2, 0, &mut Vec::new(), &BitSet::new(pool.len()), 0, &mut top);
    }
    top.into_sorted()
        .into_iter()
        .map(|r| ScoredClass {
            class: r.item.0,
            accuracy: r.accuracy,
            length: r.length,
            text: r.text,
            ext: r.item.1,
        })
        .collect()
}

/// Stage I and II output for one role.
#[derive(Debug, Clone)]
pub struct RoleCandidates {
    pub role: RoleId,
    pub pool: FillerPool,
    pub clauses: Vec<ScoredClause>,
    pub classes: Vec<ScoredClass>,
}

/// Runs stages I and II over one pool; both are empty when no concept
/// has an instance in the pool.
pub fn pool_candidates(
    kb: &KnowledgeBase,
    m: &Materialization,
    pool: &FillerPool,
    common: &BTreeSet<ConceptId>,
    cfg: &SearchConfig,
) -> (Vec<ScoredClause>, Vec<ScoredClass>) {
    let concepts = candidate_concepts(kb, m, pool, common, cfg.keep_common_types);
    let clauses = stage1_horn_clauses(kb, pool, &concepts, cfg);
    let classes = stage2_candidate_classes(kb, pool, &clauses, cfg);
    (clauses, classes)
}

/// [`pool_candidates`] for `R̄`; a role without candidates is dropped
/// with a warning.
pub fn role_candidates(
    kb: &KnowledgeBase,
    m: &Materialization,
    role: RoleId,
    pool: FillerPool,
    common: &BTreeSet<ConceptId>,
    cfg: &SearchConfig,
) -> Option<RoleCandidates> {
    let (clauses, classes) = pool_candidates(kb, m, &pool, common, cfg);
    if clauses.is_empty() {
        warn!("role `{}` has no candidate concepts after filtering; dropped", kb.role(role));
        return None;
    }
    Some(RoleCandidates {
        role,
        pool,
        clauses,
        classes,
    })
}

/// A ranked solution.
#[derive(Debug, Clone)]
pub struct ScoredSolution {
    pub form: SolutionForm,
    pub alpha2: Accuracy,
    pub length: usize,
    pub text: String,
    pub alpha3: Option<Accuracy>,
}

/// Everything stage III ranges over, prepared as bitsets over the examples.
#[derive(Debug, Clone)]
pub struct SolutionSpace {
    examples: Vec<IndividualId>,
    pos: BitSet,
    neg: BitSet,
    tops: Vec<(ConceptId, BitSet)>,
    /// Per role: each candidate class with `R⁻(↓C)` over the examples.
    roles: Vec<(RoleId, Vec<(ScoredClass, BitSet)>)>,
    /// Top-level disjunctions, only when the examples have no role assertions.
    disjunctions: Vec<ScoredClass>,
    k3: usize,
}

impl SolutionSpace {
    /// `tops` is the stage-III top-concept pool; `disjunctions` come from
    /// stages I and II run over the examples themselves.
    pub fn new(
        m: &Materialization,
        examples: &ExampleSet,
        fills: &FillSets,
        per_role: &[RoleCandidates],
        disjunctions: Vec<ScoredClass>,
        tops: &[ConceptId],
        k3: usize,
    ) -> Self {
        let pool = FillerPool::for_examples(examples);
        let local = m.local_index(&pool.individuals);
        let tops = tops.iter().map(|&c| (c, m.extension_on(c, &local))).collect();
        let roles = per_role
            .iter()
            .filter(|rc| !rc.classes.is_empty())
            .map(|rc| {
                // owners[j]: examples having filler j of the role pool
                let mut owners: Vec<Vec<usize>> = vec![Vec::new(); rc.pool.len()];
                for (i, &a) in pool.individuals.iter().enumerate() {
                    for b in fills.fillers(a, rc.role) {
                        if let Ok(j) = rc.pool.individuals.binary_search(&b) {
                            owners[j].push(i);
                        }
                    }
                }
                let classes = rc
                    .classes
                    .iter()
                    .map(|sc| {
                        let inv = BitSet::from_indices(pool.len(), sc.ext.iter().flat_map(|j| owners[j].iter().copied()));
                        (sc.clone(), inv)
                    })
                    .collect();
                (rc.role, classes)
            })
            .collect();
        let disjunctions = disjunctions
            .into_iter()
            .filter(|sc| !(sc.class.clauses().len() == 1 && sc.class.clauses()[0].neg().is_empty()))
            .collect();
        SolutionSpace {
            examples: pool.individuals,
            pos: pool.pos,
            neg: pool.neg,
            tops,
            roles,
            disjunctions,
            k3,
        }
    }

    fn score(&self, q: &BitSet) -> Accuracy {
        Accuracy::new(
            self.pos.intersection_count(q) + self.neg.difference_count(q),
            self.examples.len(),
        )
    }

    fn bound(&self, q: &BitSet) -> Accuracy {
        Accuracy::new(self.pos.intersection_count(q) + self.neg.count(), self.examples.len())
    }

    fn form(&self, top: usize, picks: &[(usize, usize)]) -> SolutionForm {
        let mut s = SolutionCandidate::atomic(self.tops[top].0);
        for &(r, c) in picks {
            let (role, classes) = &self.roles[r];
            s = s.with_restriction(*role, classes[c].0.class.clone());
        }
        SolutionForm::Restricted(s)
    }

    /// Visits `A ⊓ ⊓ ∃Rᵢ.Cᵢ` for the top at index `top`, roles taken in
    /// increasing order, at most `k3` of them. `visit` gets the picked
    /// `(role, class)` indices, the extension and the length, and returns
    /// whether to add further restrictions.
    fn walk(&self, top: usize, visit: &mut impl FnMut(&[(usize, usize)], &BitSet, usize) -> bool) {
        fn rec(
            space: &SolutionSpace,
            start: usize,
            picks: &mut Vec<(usize, usize)>,
            q: &BitSet,
            base: usize,
            visit: &mut impl FnMut(&[(usize, usize)], &BitSet, usize) -> bool,
        ) {
            for r in start..space.roles.len() {
                for (c, (sc, inv)) in space.roles[r].1.iter().enumerate() {
                    let next = q.intersection(inv);
                    let len = base + sc.length;
                    picks.push((r, c));
                    if visit(picks, &next, len) && picks.len() < space.k3 {
                        rec(space, r + 1, picks, &next, len, visit);
                    }
                    picks.pop();
                }
            }
        }
        let (c, ext) = &self.tops[top];
        let base = usize::from(*c != ConceptId::TOP);
        if visit(&[], ext, 1) && self.k3 > 0 {
            rec(self, 0, &mut Vec::new(), ext, base, visit);
        }
    }

    /// Stage III: the `k` best solutions.
    pub fn solutions(&self, kb: &KnowledgeBase, k: usize) -> Vec<ScoredSolution> {
        let mut top = (0..self.tops.len())
            .into_par_iter()
            .fold(
                || TopK::new(k),
                |mut acc, t| {
                    // a bare `Thing` has length 1 but `Thing ⊓ ∃R.C` drops it
                    let base = usize::from(self.tops[t].0 != ConceptId::TOP);
                    self.walk(t, &mut |picks, q, len| {
                        let form = || self.form(t, picks);
                        acc.offer(self.score(q), len, || form().to_expression(kb).to_string(), form);
                        let min_next = if picks.is_empty() { base + 1 } else { len + 1 };
                        acc.could_admit(self.bound(q), min_next)
                    });
                    acc
                },
            )
            .reduce(|| TopK::new(k), TopK::merge);
        for sc in &self.disjunctions {
            top.offer(sc.accuracy, sc.length, || sc.text.clone(), || SolutionForm::Disjunction(sc.class.clone()));
        }
        top.into_sorted()
            .into_iter()
            .map(|r| ScoredSolution {
                form: r.item,
                alpha2: r.accuracy,
                length: r.length,
                text: r.text,
                alpha3: None,
            })
            .collect()
    }

    /// Calls `visit` on every candidate of the space with its α2, without pruning.
    pub fn visit_all(&self, visit: &mut impl FnMut(SolutionForm, Accuracy, usize)) {
        for t in 0..self.tops.len() {
            self.walk(t, &mut |picks, q, len| {
                visit(self.form(t, picks), self.score(q), len);
                true
            });
        }
        for sc in &self.disjunctions {
            visit(SolutionForm::Disjunction(sc.class.clone()), sc.accuracy, sc.length);
        }
    }

    /// Number of candidates in the space.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit_all(&mut |_, _, _| n += 1);
        n
    }
}

#[cfg(test)]
mod tests {
    use super::super::extension::{alpha1, alpha1_class, alpha2, common_types};
    use super::super::fill::compute_fill_sets;
    use super::*;
    use crate::kb::family_fixture;
    use crate::materialize::{materialize, InvocationCounter};

    struct Setup {
        kb: KnowledgeBase,
        m: Materialization,
        ex: ExampleSet,
        fs: FillSets,
        common: BTreeSet<ConceptId>,
    }

    fn fam() -> Setup {
        let kb = family_fixture();
        let m = materialize(&kb, None, &InvocationCounter::new());
        let ex = ExampleSet::from_names(&kb, &["alice"], &["bob"]).unwrap();
        let fs = compute_fill_sets(&ex);
        let common = common_types(&ex, &m);
        Setup { kb, m, ex, fs, common }
    }

    #[test]
    fn closed_form_count() {
        assert_eq!(horn_clause_count(0, 3), 0);
        assert_eq!(horn_clause_count(1, 3), 1);
        assert_eq!(horn_clause_count(2, 3), 4);
        assert_eq!(horn_clause_count(3, 1), 3);
        assert_eq!(horn_clause_count(3, 3), 3 * (1 + 2 + 1));
    }

    #[test]
    fn enumeration_matches_count_without_top() {
        for n in 0..=6u32 {
            let pool: Vec<ConceptId> = (1..=n).map(ConceptId).collect();
            for k1 in 1..=4 {
                let all = enumerate_horn_clauses(&pool, k1);
                let distinct: BTreeSet<_> = all.iter().cloned().collect();
                assert_eq!(distinct.len(), all.len());
                assert_eq!(all.len() as u128, horn_clause_count(n as usize, k1), "n={n} k1={k1}");
            }
        }
    }

    #[test]
    fn top_is_never_negated() {
        let pool = [ConceptId::TOP, ConceptId(1), ConceptId(2)];
        let all = enumerate_horn_clauses(&pool, 3);
        assert!(all.iter().all(|h| !h.neg().contains(ConceptId::TOP)));
        // Thing heads: 1 + 2 + 1; other heads: negate only the remaining non-top concept
        assert_eq!(all.len(), 4 + 2 * 2);
    }

    #[test]
    fn family_stage1_and_2() {
        let s = fam();
        let r = s.kb.role_id("hasChild").unwrap();
        let pool = FillerPool::for_role(s.fs.role(r).unwrap());
        let concepts = candidate_concepts(&s.kb, &s.m, &pool, &s.common, false);
        let names: Vec<&str> = concepts.iter().map(|c| s.kb.concept_name(c.concept).name()).collect();
        assert_eq!(names, ["Female", "Male", "Thing"]);
        let cfg = SearchConfig::default();
        let h = stage1_horn_clauses(&s.kb, &pool, &concepts, &cfg);
        assert_eq!(h[0].text, "Female");
        assert!(h[0].accuracy.is_perfect());
        for sc in &h {
            assert_eq!(alpha1(&sc.clause, r, &s.fs, &s.m, &s.kb).unwrap(), sc.accuracy, "{}", sc.text);
            assert_eq!(sc.length, sc.clause.length());
        }
        let c = stage2_candidate_classes(&s.kb, &pool, &h, &cfg);
        assert_eq!(c[0].text, "Female");
        for sc in &c {
            assert_eq!(alpha1_class(&sc.class, r, &s.fs, &s.m, &s.kb).unwrap(), sc.accuracy, "{}", sc.text);
        }

        let one = SearchConfig { k4: 1, ..cfg.clone() };
        assert_eq!(stage1_horn_clauses(&s.kb, &pool, &concepts, &one).len(), 1);
        let single = SearchConfig { k2: 1, ..cfg };
        assert_eq!(stage2_candidate_classes(&s.kb, &pool, &h, &single).len(), h.len().min(50));
        assert_eq!(stage2_candidate_classes(&s.kb, &pool, &h[..1], &SearchConfig::default()).len(), 1);
    }

    #[test]
    fn unbounded_stage1_covers_the_whole_space() {
        let s = fam();
        let r = s.kb.role_id("hasChild").unwrap();
        let pool = FillerPool::for_role(s.fs.role(r).unwrap());
        let concepts = candidate_concepts(&s.kb, &s.m, &pool, &s.common, true);
        let ids: Vec<ConceptId> = concepts.iter().map(|c| c.concept).collect();
        for k1 in 1..=4 {
            let cfg = SearchConfig { k1, k4: usize::MAX, ..SearchConfig::default() };
            let got = stage1_horn_clauses(&s.kb, &pool, &concepts, &cfg);
            assert_eq!(got.len(), enumerate_horn_clauses(&ids, k1).len());
        }
    }

    #[test]
    fn family_stage3() {
        let s = fam();
        let cfg = SearchConfig::default();
        let r = s.kb.role_id("hasChild").unwrap();
        let rc = role_candidates(&s.kb, &s.m, r, FillerPool::for_role(s.fs.role(r).unwrap()), &s.common, &cfg).unwrap();
        let tops: Vec<ConceptId> = s.kb.concept_ids().filter(|c| *c == ConceptId::TOP || !s.common.contains(c)).collect();
        let space = SolutionSpace::new(&s.m, &s.ex, &s.fs, std::slice::from_ref(&rc), Vec::new(), &tops, cfg.k3);
        let sols = space.solutions(&s.kb, cfg.max_solutions);
        assert_eq!(sols[0].text, "Female");
        assert!(sols[0].alpha2.is_perfect());
        assert_eq!(sols[0].length, 1);
        assert_eq!(space.solutions(&s.kb, 1).len(), 1);
        for w in sols.windows(2) {
            assert!(w[0].alpha2 >= w[1].alpha2);
        }
        space.visit_all(&mut |form, acc, len| {
            assert_eq!(alpha2(&form, &s.ex, &s.m, &s.fs, &s.kb).unwrap(), acc);
            assert_eq!(form.length(), len);
        });

        let mut tops_all = tops.clone();
        tops_all.push(s.kb.concept_id("Person").unwrap());
        let wide = SolutionSpace::new(&s.m, &s.ex, &s.fs, &[rc], Vec::new(), &tops_all, cfg.k3);
        let mut person = None;
        wide.visit_all(&mut |form, acc, _| {
            if form.to_expression(&s.kb).to_string() == "Person" {
                person = Some(acc);
            }
        });
        assert_eq!(person, Some(Accuracy::new(1, 2)));
    }

    #[test]
    fn pruned_search_equals_exhaustive_ranking() {
        let s = fam();
        let cfg = SearchConfig::default();
        let r = s.kb.role_id("hasChild").unwrap();
        let rc = role_candidates(&s.kb, &s.m, r, FillerPool::for_role(s.fs.role(r).unwrap()), &s.common, &cfg).unwrap();
        let tops: Vec<ConceptId> = s.kb.concept_ids().collect();
        let space = SolutionSpace::new(&s.m, &s.ex, &s.fs, &[rc], Vec::new(), &tops, cfg.k3);
        let mut all = Vec::new();
        space.visit_all(&mut |form, acc, len| all.push((acc, len, form.to_expression(&s.kb).to_string())));
        all.sort_by(|a, b| super::super::topk::rank_cmp((a.0, a.1, &a.2), (b.0, b.1, &b.2)));
        let k = 7;
        let got: Vec<String> = space.solutions(&s.kb, k).into_iter().map(|x| x.text).collect();
        let want: Vec<String> = all.into_iter().take(k).map(|x| x.2).collect();
        assert_eq!(got, want);
    }
}
