use std::fmt;

use serde::Serialize;

use crate::exact::Rational;

/// Which structural condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum WitnessKind {
    UnequalClassSizes,
    RatioMultisetMismatch,
    RepValueInconsistent,
    FactoringIdentityViolation,
    NotLatin,
    NotAssociative,
    EquationMismatch,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Concrete data exhibiting a failure. Element-valued fields hold domain
/// elements; on a bare relation they hold relation indices. Classes are named
/// by their least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Evidence {
    ClassSizes {
        class_a: Vec<usize>,
        class_b: Vec<usize>,
    },
    RatioLists {
        class_a: Vec<usize>,
        class_b: Vec<usize>,
        ratios_a: Vec<Rational>,
        ratios_b: Vec<Rational>,
    },
    RepValues {
        tuple_a: Vec<usize>,
        value_a: Rational,
        tuple_b: Vec<usize>,
        value_b: Rational,
    },
    /// `g(tuple)^r = lhs` but the product over the uniform-index tuples is `rhs`.
    RootFree {
        tuple: Vec<usize>,
        uniform: Vec<Vec<usize>>,
        lhs: Rational,
        rhs: Rational,
    },
    ClosedForm {
        tuple: Vec<usize>,
        value: Rational,
        expected: Rational,
    },
    Completions {
        prefix: Vec<usize>,
        completions: Vec<usize>,
    },
    Associativity {
        zero: usize,
        triple: [usize; 3],
        lhs: usize,
        rhs: usize,
    },
    Equation {
        zero: usize,
        prefix: Vec<usize>,
        completion: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HardnessWitness {
    /// Index of the domain component where the check failed.
    pub component: usize,
    pub kind: WitnessKind,
    pub evidence: Evidence,
}

impl HardnessWitness {
    pub(crate) fn new(kind: WitnessKind, evidence: Evidence) -> Self {
        HardnessWitness {
            component: 0,
            kind,
            evidence,
        }
    }

    pub(crate) fn in_component(mut self, component: usize) -> Self {
        self.component = component;
        self
    }

    /// Maps relation indices to the labels in `labels` (index `i` becomes `labels[i]`).
    /// The tuple or class the violation is pinned to, as `(x,y,..)`.
    pub fn location(&self) -> String {
        let at: &[usize] = match &self.evidence {
            Evidence::ClassSizes { class_a, .. } | Evidence::RatioLists { class_a, .. } => class_a,
            Evidence::RepValues { tuple_a, .. } => tuple_a,
            Evidence::RootFree { tuple, .. } | Evidence::ClosedForm { tuple, .. } => tuple,
            Evidence::Completions { prefix, .. } | Evidence::Equation { prefix, .. } => prefix,
            Evidence::Associativity { triple, .. } => triple,
        };
        let parts: Vec<String> = at.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    }

    pub fn relabel(mut self, labels: &[usize]) -> Self {
        let map = |v: &mut Vec<usize>| v.iter_mut().for_each(|x| *x = labels[*x]);
        match &mut self.evidence {
            Evidence::Completions { prefix, completions } => {
                map(prefix);
                map(completions);
            }
            Evidence::Associativity { zero, triple, lhs, rhs } => {
                *zero = labels[*zero];
                triple.iter_mut().for_each(|x| *x = labels[*x]);
                *lhs = labels[*lhs];
                *rhs = labels[*rhs];
            }
            Evidence::Equation {
                zero,
                prefix,
                completion,
                expected,
            } => {
                *zero = labels[*zero];
                map(prefix);
                *completion = labels[*completion];
                *expected = labels[*expected];
            }
            _ => {}
        }
        self
    }
}

impl fmt::Display for HardnessWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tuple = |v: &[usize]| {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(","))
        };
        write!(f, "{} in component {}: ", self.kind, self.component)?;
        match &self.evidence {
            Evidence::ClassSizes { class_a, class_b } => {
                write!(f, "classes {} and {} differ in size", tuple(class_a), tuple(class_b))
            }
            Evidence::RatioLists { class_a, class_b, .. } => {
                write!(f, "classes {} and {} have different ratio lists", tuple(class_a), tuple(class_b))
            }
            Evidence::RepValues {
                tuple_a,
                value_a,
                tuple_b,
                value_b,
            } => write!(f, "g{} = {value_a} but g{} = {value_b}", tuple(tuple_a), tuple(tuple_b)),
            Evidence::RootFree { tuple: t, lhs, rhs, .. } => {
                write!(f, "g{}^r = {lhs} but the uniform product is {rhs}", tuple(t))
            }
            Evidence::ClosedForm { tuple: t, value, expected } => {
                write!(f, "g{} = {value}, closed form gives {expected}", tuple(t))
            }
            Evidence::Completions { prefix, completions } => {
                write!(f, "{} has completions {}", tuple(prefix), tuple(completions))
            }
            Evidence::Associativity { triple, lhs, rhs, .. } => {
                write!(f, "{} associates to {lhs} and {rhs}", tuple(triple))
            }
            Evidence::Equation {
                prefix,
                completion,
                expected,
                ..
            } => write!(f, "{} completes to {completion}, equation needs {expected}", tuple(prefix)),
        }
    }
}
