//! Step one of the pipeline: enumerate bounded `and`/`some` expressions
//! over the declared signature and name each with a fresh concept
//! `_ECII_<i> ≡ Cᵢ`.

use std::collections::HashMap;

use log::warn;

use crate::kb::{ConceptExpression, ConceptKind, KnowledgeBase};

pub const DEFAULT_EXPRESSION_CAP: usize = 10_000;
pub const FRESH_PREFIX: &str = "_ECII_";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    /// Canonical expressions ordered by (length, rendering).
    pub expressions: Vec<ConceptExpression>,
    /// Set when the cap cut the enumeration short.
    pub truncated: bool,
}

/// All canonical expressions of `C ::= B | C ⊓ C | ∃R.C` over the declared
/// (non-fresh) atomic concepts and roles with at most `n1` conjunctions and
/// `n2` existentials, bare atomics excluded.
///
/// Expressions are produced level by level in increasing length; once
/// `cap` is reached the current level is sorted and cut, so the kept set is
/// always the `cap` smallest by (length, rendering).
pub fn enumerate_expressions(kb: &KnowledgeBase, n1: usize, n2: usize, cap: usize) -> Enumeration {
    let atoms: Vec<ConceptExpression> = kb
        .concepts()
        .iter()
        .filter(|c| c.kind == ConceptKind::Declared)
        .map(|c| ConceptExpression::Atomic(c.name.clone()))
        .collect();
    let roles: Vec<_> = kb.role_ids().map(|r| kb.role(r).clone()).collect();

    let mut gen = Generator {
        atoms,
        roles,
        n2,
        levels: HashMap::new(),
    };
    let mut out = Vec::new();
    let mut truncated = false;
    for conj in 0..=n1 {
        let mut level: Vec<(String, ConceptExpression)> = Vec::new();
        for ex in 0..=n2 {
            if conj == 0 && ex == 0 {
                // bare atomics are already named
                gen.all(0, 0);
                continue;
            }
            level.extend(gen.all(conj, ex).iter().map(|e| (e.to_string(), e.clone())));
        }
        level.sort_by(|a, b| a.0.cmp(&b.0));
        let room = cap - out.len();
        if level.len() > room {
            truncated = true;
            level.truncate(room);
        }
        out.extend(level.into_iter().map(|(_, e)| e));
        if out.len() >= cap {
            if conj < n1 {
                truncated = true;
            }
            break;
        }
    }
    if truncated {
        warn!("expression enumeration truncated at {cap} expressions (n1={n1}, n2={n2})");
    }
    Enumeration {
        expressions: out,
        truncated,
    }
}

struct Generator {
    atoms: Vec<ConceptExpression>,
    roles: Vec<crate::kb::Role>,
    n2: usize,
    /// Canonical expressions with exactly `(conj, exists)` connectives.
    levels: HashMap<(usize, usize), Vec<ConceptExpression>>,
}

impl Generator {
    fn all(&mut self, conj: usize, ex: usize) -> &[ConceptExpression] {
        if !self.levels.contains_key(&(conj, ex)) {
            let mut v = self.terms(conj, ex);
            if conj > 0 {
                v.extend(self.conjunctions(conj, ex));
            }
            self.levels.insert((conj, ex), v);
        }
        &self.levels[&(conj, ex)]
    }

    /// Non-conjunction expressions: atoms and existentials.
    fn terms(&mut self, conj: usize, ex: usize) -> Vec<ConceptExpression> {
        if ex == 0 {
            return if conj == 0 { self.atoms.clone() } else { Vec::new() };
        }
        let fillers = self.all(conj, ex - 1).to_vec();
        let mut out = Vec::with_capacity(fillers.len() * self.roles.len());
        for r in &self.roles {
            for f in &fillers {
                out.push(ConceptExpression::Exists(r.clone(), Box::new(f.clone())));
            }
        }
        out
    }

    /// Conjunctions of ≥2 distinct terms whose connective counts add up to
    /// exactly `(conj, ex)`; each conjunct contributes its own count plus
    /// one joining `⊓`.
    fn conjunctions(&mut self, conj: usize, ex: usize) -> Vec<ConceptExpression> {
        let mut pool: Vec<(String, usize, usize, ConceptExpression)> = Vec::new();
        for c in 0..conj {
            for e in 0..=ex.min(self.n2) {
                for t in self.terms_cached(c, e) {
                    pool.push((t.to_string(), c, e, t));
                }
            }
        }
        pool.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        pick(&pool, 0, conj + 1, ex, &mut chosen, &mut out);
        out
    }

    fn terms_cached(&mut self, conj: usize, ex: usize) -> Vec<ConceptExpression> {
        self.all(conj, ex)
            .iter()
            .filter(|e| !matches!(e, ConceptExpression::Conj(_)))
            .cloned()
            .collect()
    }
}

fn pick(
    pool: &[(String, usize, usize, ConceptExpression)],
    start: usize,
    conj_left: usize,
    ex_left: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<ConceptExpression>,
) {
    if conj_left == 0 && ex_left == 0 {
        if chosen.len() >= 2 {
            out.push(ConceptExpression::Conj(
                chosen.iter().map(|&i| pool[i].3.clone()).collect(),
            ));
        }
        return;
    }
    for i in start..pool.len() {
        let (_, c, e, _) = &pool[i];
        if c + 1 > conj_left || *e > ex_left {
            continue;
        }
        chosen.push(i);
        pick(pool, i + 1, conj_left - c - 1, ex_left - e, chosen, out);
        chosen.pop();
    }
}

/// Returns `kb` extended with `_ECII_<i> ≡ exprs[i]`. A fresh name that is
/// already taken gets a numeric suffix and a warning.
pub fn enrich_kb(kb: &KnowledgeBase, exprs: &[ConceptExpression]) -> (KnowledgeBase, Vec<String>) {
    let mut out = kb.clone();
    let mut warnings = Vec::new();
    for (i, expr) in exprs.iter().enumerate() {
        let base = format!("{FRESH_PREFIX}{i}");
        let mut name = base.clone();
        let mut suffix = 1;
        while out.concept_id(&name).is_some() || out.role_id(&name).is_some() {
            name = format!("{base}_{suffix}");
            suffix += 1;
        }
        if name != base {
            let msg = format!("fresh name `{base}` is already declared; using `{name}`");
            warn!("{msg}");
            warnings.push(msg);
        }
        out.declare_fresh_concept(&name)
            .expect("fresh name chosen to be unused");
        out.add_equivalence(&name, expr)
            .expect("enumerated expressions use declared names and EL constructors only");
    }
    (out, warnings)
}
