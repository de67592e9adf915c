//! One-shot forward-chaining materialization of an enriched knowledge
//! base: every inferred `A(a)` for atomic (including fresh) concepts.
//!
//! Rules, applied to a fixpoint:
//! * `⊤(a)` for every individual;
//! * `A(a), A ⊑ B ⊢ B(a)`;
//! * `X ≡ C, a ∈ C ⊢ X(a)`, where `C` is evaluated over the current types;
//! * `X ≡ … ⊓ A ⊓ …, X(a) ⊢ A(a)` for each top-level atomic conjunct.
//!
//! Types are kept as one bitset per concept over a dense universe of
//! individuals. Definitions are compiled into a hash-consed DAG and
//! re-evaluated only when a concept they mention changed.

use std::collections::{BTreeSet, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};

use log::debug;

use crate::bitset::BitSet;
use crate::io::{strip_comment, ParseError};
use crate::kb::{Axiom, ConceptExpression, ConceptId, IndividualId, KbError, KnowledgeBase, RoleId};

pub const MATERIALIZATION_HEADER: &str = "# ecii-mat v1";

/// Counts materializer runs, so callers can check the pipeline reasons once.
#[derive(Debug, Default)]
pub struct InvocationCounter(AtomicUsize);

impl InvocationCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self) -> usize {
        self.0.load(Ordering::SeqCst)
    }

    fn bump(&self) {
        self.0.fetch_add(1, Ordering::SeqCst);
    }
}

/// Inferred atomic types of a set of individuals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Materialization {
    universe: Vec<IndividualId>,
    position: HashMap<IndividualId, usize>,
    extensions: Vec<BitSet>,
}

impl Materialization {
    fn empty(kb: &KnowledgeBase, universe: Vec<IndividualId>) -> Self {
        let position = universe.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let n = universe.len();
        let mut extensions = vec![BitSet::new(n); kb.num_concepts()];
        extensions[ConceptId::TOP.index()] = BitSet::full(n);
        Materialization {
            universe,
            position,
            extensions,
        }
    }

    /// Individuals covered, in increasing id order.
    pub fn universe(&self) -> &[IndividualId] {
        &self.universe
    }

    pub fn index_of(&self, a: IndividualId) -> Option<usize> {
        self.position.get(&a).copied()
    }

    /// The covered instances of `c`, indexed like [`universe`](Self::universe).
    pub fn extension(&self, c: ConceptId) -> &BitSet {
        &self.extensions[c.index()]
    }

    pub fn contains(&self, a: IndividualId, c: ConceptId) -> bool {
        self.index_of(a).is_some_and(|i| self.extensions[c.index()].contains(i))
    }

    pub fn types_of(&self, a: IndividualId) -> Vec<ConceptId> {
        let Some(i) = self.index_of(a) else {
            return Vec::new();
        };
        (0..self.extensions.len())
            .filter(|&c| self.extensions[c].contains(i))
            .map(|c| ConceptId(c as u32))
            .collect()
    }

    /// Restricts the extension of `c` to `individuals`, returning a bitset
    /// indexed by position in that slice. Uncovered individuals are absent.
    pub fn extension_on(&self, c: ConceptId, local: &LocalIndex) -> BitSet {
        let mut out = BitSet::new(local.len());
        for j in self.extensions[c.index()].iter() {
            if let Some(i) = local.slot[j] {
                out.insert(i as usize);
            }
        }
        out
    }

    /// Maps a list of individuals onto this materialization's universe for
    /// use with [`extension_on`](Self::extension_on).
    pub fn local_index(&self, individuals: &[IndividualId]) -> LocalIndex {
        let mut slot = vec![None; self.universe.len()];
        for (i, a) in individuals.iter().enumerate() {
            if let Some(j) = self.index_of(*a) {
                slot[j] = Some(i as u32);
            }
        }
        LocalIndex {
            slot,
            len: individuals.len(),
        }
    }

    /// `type <individual> <concept>` lines, sorted, after the header and the
    /// given `# key=value` metadata lines. `Thing` is implied and omitted.
    pub fn to_text(&self, kb: &KnowledgeBase, meta: &[(&str, String)]) -> String {
        let mut out = String::from(MATERIALIZATION_HEADER);
        out.push('\n');
        for (k, v) in meta {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let mut lines = Vec::new();
        for (c, ext) in self.extensions.iter().enumerate().skip(1) {
            let name = kb.concept_name(ConceptId(c as u32));
            for i in ext.iter() {
                lines.push(format!("type {} {}", kb.individual_name(self.universe[i]), name));
            }
        }
        lines.sort();
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }
}

/// Positions of a list of individuals within a materialization universe.
#[derive(Debug, Clone)]
pub struct LocalIndex {
    slot: Vec<Option<u32>>,
    len: usize,
}

impl LocalIndex {
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Atom(ConceptId),
    And(Vec<usize>),
    Some(RoleId, usize),
}

struct Compiled {
    nodes: Vec<Node>,
    /// `(defined concept, root node, concepts mentioned)`
    definitions: Vec<(ConceptId, usize, Vec<ConceptId>)>,
    /// Transitive told supers, including `X ⊑ A` for atomic conjuncts of
    /// definitions. Excludes the concept itself and `Thing`.
    supers: Vec<Vec<ConceptId>>,
}

fn compile(kb: &KnowledgeBase) -> Compiled {
    let n = kb.num_concepts();
    let mut direct: Vec<BTreeSet<ConceptId>> = vec![BTreeSet::new(); n];
    let mut nodes = Vec::new();
    let mut index: HashMap<Node, usize> = HashMap::new();
    let mut definitions = Vec::new();
    let id = |a: &crate::kb::AtomicConcept| kb.concept_id(a.name()).expect("axioms use declared names");

    for ax in kb.axioms() {
        match ax {
            Axiom::Subconcept(a, b) => {
                direct[id(a).index()].insert(id(b));
            }
            Axiom::Equivalence(x, def) => {
                let x = id(x);
                let conjuncts: &[ConceptExpression] = match def {
                    ConceptExpression::Conj(cs) => cs,
                    other => std::slice::from_ref(other),
                };
                for c in conjuncts {
                    if let ConceptExpression::Atomic(a) = c {
                        direct[x.index()].insert(id(a));
                    }
                }
                let root = intern(kb, def, &mut nodes, &mut index);
                let mut deps = BTreeSet::new();
                def.for_each_atomic(&mut |a| {
                    deps.insert(id(a));
                });
                definitions.push((x, root, deps.into_iter().collect()));
            }
        }
    }

    let mut supers = Vec::with_capacity(n);
    for c in 0..n {
        let mut seen = BTreeSet::new();
        let mut stack: Vec<ConceptId> = direct[c].iter().copied().collect();
        while let Some(s) = stack.pop() {
            if s.index() != c && seen.insert(s) {
                stack.extend(direct[s.index()].iter().copied());
            }
        }
        seen.remove(&ConceptId::TOP);
        supers.push(seen.into_iter().collect());
    }
    Compiled {
        nodes,
        definitions,
        supers,
    }
}

fn intern(kb: &KnowledgeBase, e: &ConceptExpression, nodes: &mut Vec<Node>, index: &mut HashMap<Node, usize>) -> usize {
    let node = match e {
        ConceptExpression::Atomic(a) => Node::Atom(kb.concept_id(a.name()).expect("declared")),
        ConceptExpression::Conj(cs) => {
            let mut kids: Vec<usize> = cs.iter().map(|c| intern(kb, c, nodes, index)).collect();
            kids.sort_unstable();
            kids.dedup();
            Node::And(kids)
        }
        ConceptExpression::Exists(r, inner) => {
            Node::Some(kb.role_id(r.name()).expect("declared"), intern(kb, inner, nodes, index))
        }
        ConceptExpression::Disj(_) | ConceptExpression::Neg(_) => {
            unreachable!("definitions are restricted to and/some")
        }
    };
    if let Some(&i) = index.get(&node) {
        return i;
    }
    nodes.push(node.clone());
    index.insert(node, nodes.len() - 1);
    nodes.len() - 1
}

/// Materializes `kb` over `scope` closed under role successors, or over all
/// individuals when `scope` is `None`.
pub fn materialize(
    kb: &KnowledgeBase,
    scope: Option<&BTreeSet<IndividualId>>,
    counter: &InvocationCounter,
) -> Materialization {
    counter.bump();
    let universe: Vec<IndividualId> = match scope {
        None => kb.individual_ids().collect(),
        Some(seed) => {
            let mut covered = seed.clone();
            let mut stack: Vec<IndividualId> = seed.iter().copied().collect();
            while let Some(a) = stack.pop() {
                for (_, b) in kb.successors(a) {
                    if covered.insert(b) {
                        stack.push(b);
                    }
                }
            }
            covered.into_iter().collect()
        }
    };
    let mut m = Materialization::empty(kb, universe);
    for &(a, c) in kb.type_assertions() {
        if let Some(i) = m.index_of(a) {
            m.extensions[c.index()].insert(i);
        }
    }
    let mut edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); kb.num_roles()];
    for &(a, r, b) in kb.rel_assertions() {
        if let (Some(i), Some(j)) = (m.index_of(a), m.index_of(b)) {
            edges[r.index()].push((i, j));
        }
    }

    let compiled = compile(kb);
    let all: Vec<ConceptId> = kb.concept_ids().collect();
    propagate_supers(&mut m.extensions, &compiled.supers, &all);

    let mut dirty: Vec<bool> = vec![true; compiled.definitions.len()];
    let mut rounds = 0;
    loop {
        rounds += 1;
        let mut memo: Vec<Option<BitSet>> = vec![None; compiled.nodes.len()];
        let mut changed: Vec<ConceptId> = Vec::new();
        for (d, (x, root, _)) in compiled.definitions.iter().enumerate() {
            if !dirty[d] {
                continue;
            }
            let ext = eval(*root, &compiled.nodes, &m.extensions, &edges, &mut memo);
            let target = &mut m.extensions[x.index()];
            if !ext.is_subset(target) {
                target.union_with(&ext);
                changed.push(*x);
            }
        }
        if changed.is_empty() {
            break;
        }
        let mut touched = vec![false; kb.num_concepts()];
        for &c in &changed {
            touched[c.index()] = true;
        }
        for c in propagate_supers(&mut m.extensions, &compiled.supers, &changed) {
            touched[c.index()] = true;
        }
        for (d, (_, _, deps)) in compiled.definitions.iter().enumerate() {
            dirty[d] = deps.iter().any(|c| touched[c.index()]);
        }
    }
    debug!(
        "materialized {} individuals, {} concepts, {} definitions in {rounds} round(s)",
        m.universe.len(),
        kb.num_concepts(),
        compiled.definitions.len()
    );
    m
}

/// Pushes each source concept's extension to its supers; returns the
/// concepts that grew.
fn propagate_supers(ext: &mut [BitSet], supers: &[Vec<ConceptId>], sources: &[ConceptId]) -> Vec<ConceptId> {
    let mut grown = Vec::new();
    for &c in sources {
        if supers[c.index()].is_empty() {
            continue;
        }
        let src = ext[c.index()].clone();
        for &s in &supers[c.index()] {
            if !src.is_subset(&ext[s.index()]) {
                ext[s.index()].union_with(&src);
                grown.push(s);
            }
        }
    }
    grown
}

fn eval(
    node: usize,
    nodes: &[Node],
    ext: &[BitSet],
    edges: &[Vec<(usize, usize)>],
    memo: &mut [Option<BitSet>],
) -> BitSet {
    if let Node::Atom(c) = nodes[node] {
        return ext[c.index()].clone();
    }
    if let Some(v) = &memo[node] {
        return v.clone();
    }
    let out = match &nodes[node] {
        Node::Atom(_) => unreachable!(),
        Node::And(kids) => {
            let mut acc = eval(kids[0], nodes, ext, edges, memo);
            for &k in &kids[1..] {
                if acc.is_empty() {
                    break;
                }
                acc.intersect_with(&eval(k, nodes, ext, edges, memo));
            }
            acc
        }
        Node::Some(r, inner) => {
            let filler = eval(*inner, nodes, ext, edges, memo);
            let mut acc = BitSet::new(ext[0].capacity());
            for &(a, b) in &edges[r.index()] {
                if filler.contains(b) {
                    acc.insert(a);
                }
            }
            acc
        }
    };
    memo[node] = Some(out.clone());
    out
}

/// `# key=value` header entries of a materialization file, in file order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LoadedMeta {
    pub entries: Vec<(String, String)>,
}

impl LoadedMeta {
    /// Reads the metadata lines of `text` without parsing the table.
    pub fn scan(text: &str) -> Self {
        let entries = text
            .lines()
            .filter_map(|raw| raw.trim().strip_prefix('#')?.split_once('='))
            .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
            .collect();
        LoadedMeta { entries }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// Reads a table written by [`Materialization::to_text`] for `kb`. The
/// table covers every individual of `kb` and is used as given, without
/// re-running the rules; see [`missing_entailments`].
pub fn load_materialization(
    kb: &KnowledgeBase,
    text: &str,
    counter: &InvocationCounter,
) -> Result<(Materialization, LoadedMeta), ParseError> {
    counter.bump();
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h.trim_end() == MATERIALIZATION_HEADER => {}
        _ => {
            return Err(ParseError::syntax(
                1,
                format!("missing `{MATERIALIZATION_HEADER}` header"),
            ))
        }
    }
    let mut m = Materialization::empty(kb, kb.individual_ids().collect());
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().starts_with('#') {
            continue;
        }
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split_whitespace().collect();
        let [kw, ind, concept] = parts[..] else {
            return Err(ParseError::syntax(line, "expected `type <individual> <concept>`"));
        };
        if kw != "type" {
            return Err(ParseError::syntax(line, format!("unknown statement `{kw}`")));
        }
        let semantic = |source: KbError| ParseError::Semantic { line, source };
        let a = kb.require_individual(ind).map_err(semantic)?;
        let c = kb.require_concept(concept).map_err(semantic)?;
        m.extensions[c.index()].insert(a.index());
    }
    Ok((m, LoadedMeta::scan(text)))
}

/// Memberships the rules entail that `table` lacks, as `Concept(individual)`.
pub fn missing_entailments(kb: &KnowledgeBase, table: &Materialization) -> Vec<String> {
    let closed = materialize_from(kb, table);
    let mut out = Vec::new();
    for (c, ext) in closed.extensions.iter().enumerate() {
        let Some(own) = table.extensions.get(c) else { continue };
        for i in ext.difference(own).iter() {
            out.push(format!(
                "{}({})",
                kb.concept_name(ConceptId(c as u32)),
                kb.individual_name(closed.universe[i])
            ));
        }
    }
    out
}

/// Closure of an existing table under the rules, without touching any counter.
fn materialize_from(kb: &KnowledgeBase, table: &Materialization) -> Materialization {
    let mut seeded = kb.clone();
    for (c, ext) in table.extensions.iter().enumerate().skip(1) {
        for i in ext.iter() {
            seeded
                .assert_type(kb.individual_name(table.universe[i]), kb.concept_name(ConceptId(c as u32)).name())
                .expect("names come from kb");
        }
    }
    materialize(&seeded, None, &InvocationCounter::new())
}
