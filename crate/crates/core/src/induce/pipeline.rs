use std::collections::BTreeSet;
use std::time::Instant;

use log::info;
use rayon::prelude::*;

use super::extension::common_types;
use super::fill::{compute_fill_sets, FillSets};
use super::stages::{pool_candidates, role_candidates, FillerPool, RoleCandidates, ScoredClass, ScoredSolution, SolutionSpace};
use super::{InduceError, SearchConfig};
use crate::enrich::{enrich_kb, enumerate_expressions};
use crate::io::{render_solution, ReportRow, ResultReport, Timings};
use crate::kb::{Axiom, ConceptId, ConceptKind, ExampleSet, KnowledgeBase};
use crate::materialize::{load_materialization, materialize, InvocationCounter, Materialization};
use crate::oracle::{unfold, Oracle};

/// Where the atomic types come from.
#[derive(Debug, Clone, Copy)]
pub enum MaterializationSource<'a> {
    /// Run the materializer on the enriched knowledge base.
    Compute,
    /// Load a table previously written for the same enriched knowledge base.
    Load(&'a str),
}

/// The enriched knowledge base with its single materialization.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub kb: KnowledgeBase,
    pub materialization: Materialization,
    pub invocations: usize,
    pub warnings: Vec<String>,
    pub enrich_ms: f64,
    pub materialize_ms: f64,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Enrichment and materialization.
pub fn prepare(
    kb: &KnowledgeBase,
    examples: &ExampleSet,
    cfg: &SearchConfig,
    source: MaterializationSource<'_>,
) -> Result<Prepared, InduceError> {
    let t = Instant::now();
    let enumeration = enumerate_expressions(kb, cfg.n1, cfg.n2, cfg.max_expressions);
    let mut warnings = Vec::new();
    if enumeration.truncated {
        warnings.push(format!(
            "expression enumeration truncated at {} expressions",
            cfg.max_expressions
        ));
    }
    let (enriched, fresh_warnings) = enrich_kb(kb, &enumeration.expressions);
    warnings.extend(fresh_warnings);
    let enrich_ms = ms(t);
    info!("enriched with {} expressions", enumeration.expressions.len());

    let t = Instant::now();
    let counter = InvocationCounter::new();
    let materialization = match source {
        MaterializationSource::Compute => materialize(&enriched, Some(&examples.relevant_individuals()), &counter),
        MaterializationSource::Load(text) => load_materialization(&enriched, text, &counter)?.0,
    };
    Ok(Prepared {
        kb: enriched,
        materialization,
        invocations: counter.get(),
        warnings,
        enrich_ms,
        materialize_ms: ms(t),
    })
}

/// Stage I and II results plus the stage-III space for a prepared run.
#[derive(Debug, Clone)]
pub struct SearchPlan {
    pub fills: FillSets,
    pub common: BTreeSet<ConceptId>,
    pub per_role: Vec<RoleCandidates>,
    /// Stage I/II over the examples, used when they have no role assertions.
    pub disjunctions: Vec<ScoredClass>,
    pub tops: Vec<ConceptId>,
    pub space: SolutionSpace,
}

pub fn plan_search(
    kb: &KnowledgeBase,
    m: &Materialization,
    examples: &ExampleSet,
    cfg: &SearchConfig,
) -> SearchPlan {
    let fills = compute_fill_sets(examples);
    let common = common_types(examples, m);
    let per_role: Vec<RoleCandidates> = fills
        .roles
        .par_iter()
        .filter_map(|&r| {
            let fill = fills.role(r).expect("listed roles have fill sets");
            role_candidates(kb, m, r, FillerPool::for_role(fill), &common, cfg)
        })
        .collect();
    let disjunctions = if fills.roles.is_empty() {
        pool_candidates(kb, m, &FillerPool::for_examples(examples), &common, cfg).1
    } else {
        Vec::new()
    };
    let tops: Vec<ConceptId> = kb
        .concept_ids()
        .filter(|c| cfg.keep_common_types || *c == ConceptId::TOP || !common.contains(c))
        .collect();
    let space = SolutionSpace::new(
        m,
        examples,
        &fills,
        &per_role,
        disjunctions.clone(),
        &tops,
        cfg.k3,
    );
    SearchPlan {
        fills,
        common,
        per_role,
        disjunctions,
        tops,
        space,
    }
}

/// The outcome of a full run.
#[derive(Debug, Clone)]
pub struct Induction {
    pub solutions: Vec<ScoredSolution>,
    pub report: ResultReport,
    /// The enriched knowledge base the solutions refer to.
    pub kb: KnowledgeBase,
    pub warnings: Vec<String>,
}

/// Enrich, materialize once, then run the three stages.
pub fn run_induction(
    kb: &KnowledgeBase,
    examples: &ExampleSet,
    cfg: &SearchConfig,
    source: MaterializationSource<'_>,
) -> Result<Induction, InduceError> {
    let start = Instant::now();
    let prepared = prepare(kb, examples, cfg, source)?;
    let t = Instant::now();
    let plan = plan_search(&prepared.kb, &prepared.materialization, examples, cfg);
    let mut solutions = plan.space.solutions(&prepared.kb, cfg.max_solutions);
    let induce_ms = ms(t);

    if cfg.compute_alpha3 {
        let oracle = Oracle::new(kb);
        for s in &mut solutions {
            let expr = unfold(&prepared.kb, &s.form.to_expression(&prepared.kb));
            s.alpha3 = Some(oracle.alpha3(&expr, examples));
        }
    }

    let mut used = BTreeSet::new();
    let rows = solutions
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let expr = s.form.to_expression(&prepared.kb);
            expr.for_each_atomic(&mut |a| {
                if let Some(id) = prepared.kb.concept_id(a.name()) {
                    if prepared.kb.concept(id).kind == ConceptKind::Fresh {
                        used.insert(a.name().to_string());
                    }
                }
            });
            ReportRow {
                rank: i + 1,
                alpha2: s.alpha2.as_f64(),
                length: s.length,
                expression: render_solution(&expr),
                alpha3: s.alpha3.map(|a| a.as_f64()),
            }
        })
        .collect();
    let definitions = prepared
        .kb
        .axioms()
        .iter()
        .filter_map(|ax| match ax {
            Axiom::Equivalence(x, def) if used.contains(x.name()) => Some((x.name().to_string(), render_solution(def))),
            _ => None,
        })
        .collect();

    let report = ResultReport {
        rows,
        timings: Timings {
            parse: 0.0,
            enrich: prepared.enrich_ms,
            materialize: prepared.materialize_ms,
            induce: induce_ms,
            total: ms(start),
        },
        materializer_invocations: prepared.invocations,
        kb_hash: None,
        definitions,
    };
    Ok(Induction {
        solutions,
        report,
        kb: prepared.kb,
        warnings: prepared.warnings,
    })
}
