//! Tractability classification: proportionality classes, product structure,
//! Latin and group checks, and replayable hardness witnesses.

mod classes;
mod group;
mod relation;
mod witness;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::model::{active_elements, components_over, SymFunc};

pub use classes::{check_product_structure, sim_classes, verify_factoring_identity, FactorStructure, SimClasses};
pub use group::{equation_check, latin_check, reconstruct_group, reconstruct_group_with_zero, GroupStructure};
pub use relation::Relation;
pub use witness::{Evidence, HardnessWitness, WitnessKind};

/// Outcome of a structural check: the structure, or the first violation found.
pub type Check<T> = std::result::Result<T, HardnessWitness>;

/// Factor data and group of one domain component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TractableComponent {
    pub factor: FactorStructure,
    pub group: GroupStructure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TractableStructure {
    /// Domain size before pruning.
    pub q: usize,
    pub r: usize,
    /// Elements dropped by pruning.
    pub removed: Vec<usize>,
    pub components: Vec<TractableComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Classification {
    Tractable(TractableStructure),
    Hard(HardnessWitness),
}

impl Classification {
    pub fn is_tractable(&self) -> bool {
        matches!(self, Classification::Tractable(_))
    }

    pub fn tractable(&self) -> Option<&TractableStructure> {
        match self {
            Classification::Tractable(t) => Some(t),
            Classification::Hard(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&HardnessWitness> {
        match self {
            Classification::Hard(w) => Some(w),
            Classification::Tractable(_) => None,
        }
    }
}

/// Prunes, splits the domain into components and runs every check on each;
/// the first failure decides.
pub fn classify(g: &SymFunc) -> Result<Classification> {
    if g.arity() < 3 {
        return Err(Error::InvalidArgument("classification needs arity r >= 3".into()));
    }
    let active = active_elements(g);
    let removed: Vec<usize> = (0..g.q()).filter(|z| active.binary_search(z).is_err()).collect();
    let mut components = Vec::new();
    for (l, elements) in components_over(g, &active).into_iter().enumerate() {
        match classify_component(g, l, &elements)? {
            Ok(c) => components.push(c),
            Err(w) => return Ok(Classification::Hard(w)),
        }
    }
    Ok(Classification::Tractable(TractableStructure {
        q: g.q(),
        r: g.arity(),
        removed,
        components,
    }))
}

fn classify_component(g: &SymFunc, l: usize, elements: &[usize]) -> Result<Check<TractableComponent>> {
    let sc = sim_classes(g, l, elements);
    let factor = match check_product_structure(&sc, g) {
        Ok(fs) => fs,
        Err(w) => return Ok(Err(w)),
    };
    if let Err(w) = verify_factoring_identity(g, &factor)? {
        return Ok(Err(w));
    }
    let reps = factor.reps();
    if let Err(w) = latin_check(&factor.relation) {
        return Ok(Err(w.relabel(&reps).in_component(l)));
    }
    let group = match reconstruct_group(&factor.relation)? {
        Ok(gs) => gs,
        Err(w) => return Ok(Err(w.relabel(&reps).in_component(l))),
    };
    if let Err(w) = equation_check(&factor.relation, &group)? {
        return Ok(Err(w.relabel(&reps).in_component(l)));
    }
    Ok(Ok(TractableComponent { factor, group }))
}

fn component_classes(g: &SymFunc, component: usize) -> Result<SimClasses> {
    let active = active_elements(g);
    let comps = components_over(g, &active);
    let elements = comps
        .get(component)
        .ok_or_else(|| Error::Inconsistent(format!("g has no component {component}")))?;
    Ok(sim_classes(g, component, elements))
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistent(format!("witness does not replay: {what}")))
    }
}

impl HardnessWitness {
    /// Re-derives the claimed failure from `g` alone. `Ok(())` means the
    /// evidence is reproduced exactly.
    pub fn replay(&self, g: &SymFunc) -> Result<()> {
        match &self.evidence {
            Evidence::ClassSizes { class_a, class_b } => {
                let sc = component_classes(g, self.component)?;
                require(sc.classes.contains(class_a), "first class")?;
                require(sc.classes.contains(class_b), "second class")?;
                require(class_a.len() != class_b.len(), "sizes differ")
            }
            Evidence::RatioLists {
                class_a,
                class_b,
                ratios_a,
                ratios_b,
            } => {
                let sc = component_classes(g, self.component)?;
                require(sc.classes.contains(class_a) && sc.classes.contains(class_b), "classes")?;
                let list = |c: &[usize]| -> Vec<Rational> {
                    classes::normalized_ratios(&sc, c).into_iter().map(|(x, _)| x).collect()
                };
                require(&list(class_a) == ratios_a, "first ratio list")?;
                require(&list(class_b) == ratios_b, "second ratio list")?;
                require(ratios_a != ratios_b, "ratio lists differ")
            }
            Evidence::RepValues {
                tuple_a,
                value_a,
                tuple_b,
                value_b,
            } => {
                require(&g.weight(tuple_a) == value_a && &g.weight(tuple_b) == value_b, "values")?;
                require(!value_a.is_zero() && !value_b.is_zero(), "nonzero values")?;
                require(value_a != value_b, "values differ")
            }
            Evidence::RootFree {
                tuple,
                uniform,
                lhs,
                rhs,
            } => {
                require(&g.weight(tuple).pow(g.arity() as i64) == lhs, "left side")?;
                let prod: Rational = uniform.iter().map(|t| g.weight(t)).product();
                require(&prod == rhs, "right side")?;
                require(lhs != rhs, "sides differ")
            }
            Evidence::ClosedForm { tuple, value, expected } => {
                require(&g.weight(tuple) == value, "value")?;
                require(value != expected, "value differs from closed form")
            }
            Evidence::Completions { prefix, completions } => {
                let sc = component_classes(g, self.component)?;
                require(prefix.iter().all(|z| sc.rep.contains(z)), "prefix uses class representatives")?;
                let mut t = prefix.clone();
                t.push(0);
                let found: Vec<usize> = sc
                    .rep
                    .iter()
                    .copied()
                    .filter(|&c| {
                        *t.last_mut().unwrap() = c;
                        !g.weight(&t).is_zero()
                    })
                    .collect();
                require(&found == completions, "completion set")?;
                require(found.len() != 1, "not exactly one completion")
            }
            Evidence::Associativity { zero, .. } | Evidence::Equation { zero, .. } => {
                let sc = component_classes(g, self.component)?;
                let fs = check_product_structure(&sc, g)
                    .map_err(|_| Error::Inconsistent("witness does not replay: product structure".into()))?;
                let reps = fs.reps();
                let z = reps
                    .iter()
                    .position(|x| x == zero)
                    .ok_or_else(|| Error::Inconsistent("witness does not replay: zero".into()))?;
                let again = match reconstruct_group_with_zero(&fs.relation, z)? {
                    Err(w) => Some(w),
                    Ok(gs) => equation_check(&fs.relation, &gs)?.err(),
                };
                let again = again.map(|w| w.relabel(&reps).in_component(self.component));
                require(again.as_ref() == Some(self), "group reconstruction")
            }
        }
    }
}
