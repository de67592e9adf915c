use std::collections::{BTreeMap, BTreeSet};

use crate::kb::{ExampleSet, IndividualId, RoleId};

/// Pooled role fillers of one role across the examples.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RoleFill {
    /// `R̄⁺`: fillers of positive examples.
    pub pos: BTreeSet<IndividualId>,
    /// `R̄⁻`: fillers of negative examples.
    pub neg: BTreeSet<IndividualId>,
    /// `R̄ = R̄⁺ ∪ R̄⁻`.
    pub all: BTreeSet<IndividualId>,
}

/// `R(a)` per example and role, and the pooled sets per role.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FillSets {
    /// Roles with at least one filler among the examples, ascending.
    pub roles: Vec<RoleId>,
    per_example: BTreeMap<(IndividualId, RoleId), BTreeSet<IndividualId>>,
    per_role: BTreeMap<RoleId, RoleFill>,
}

impl FillSets {
    /// `R(a)`; empty for roles `a` has no assertions for.
    pub fn fillers(&self, a: IndividualId, role: RoleId) -> impl Iterator<Item = IndividualId> + '_ {
        self.per_example.get(&(a, role)).into_iter().flatten().copied()
    }

    pub fn role(&self, role: RoleId) -> Option<&RoleFill> {
        self.per_role.get(&role)
    }
}

pub fn compute_fill_sets(examples: &ExampleSet) -> FillSets {
    let mut fs = FillSets::default();
    let pos: BTreeSet<IndividualId> = examples.positives().iter().map(|e| e.individual).collect();
    for ex in examples.all() {
        for role in ex.roles() {
            let fillers: BTreeSet<IndividualId> = ex.fillers(role).collect();
            let entry = fs.per_role.entry(role).or_default();
            let side = if pos.contains(&ex.individual) {
                &mut entry.pos
            } else {
                &mut entry.neg
            };
            side.extend(fillers.iter().copied());
            entry.all.extend(fillers.iter().copied());
            fs.per_example.insert((ex.individual, role), fillers);
        }
    }
    fs.roles = fs.per_role.keys().copied().collect();
    fs
}

/// `R⁻(X)`: the examples with some `R`-filler in `x`.
pub fn inverse_fillers(
    role: RoleId,
    x: &BTreeSet<IndividualId>,
    examples: &ExampleSet,
    fills: &FillSets,
) -> BTreeSet<IndividualId> {
    examples
        .all()
        .map(|e| e.individual)
        .filter(|&a| fills.fillers(a, role).any(|b| x.contains(&b)))
        .collect()
}
