use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::model::{multisets, multisets_over, SymFunc};

use super::relation::Relation;
use super::witness::{Evidence, HardnessWitness, WitnessKind};
use super::Check;

/// Exact proportionality classes of the top-arity slices `g(z, ·)` on one
/// domain component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimClasses {
    pub component: usize,
    /// The component's elements, ascending.
    pub elements: Vec<usize>,
    /// Classes, each ascending, listed by least element.
    pub classes: Vec<Vec<usize>>,
    /// Least element of each class.
    pub rep: Vec<usize>,
    /// `slice(z) = ratio[z] * slice(rep of z)`.
    pub ratio: BTreeMap<usize, Rational>,
}

/// Groups the elements of a component by slice proportionality.
pub fn sim_classes(g: &SymFunc, component: usize, elements: &[usize]) -> SimClasses {
    let r = g.arity();
    let contexts: Vec<Vec<usize>> = multisets_over(elements.to_vec(), r - 1).collect();
    let mut key_to_class: HashMap<Vec<Rational>, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut scale: Vec<Rational> = Vec::new();
    let mut ratio = BTreeMap::new();
    let mut buf = vec![0usize; r];
    for &z in elements {
        let slice: Vec<Rational> = contexts
            .iter()
            .map(|w| {
                buf[0] = z;
                buf[1..].copy_from_slice(w);
                g.weight(&buf)
            })
            .collect();
        let lead = slice.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Rational::one);
        let normalized: Vec<Rational> = slice.iter().map(|x| x / &lead).collect();
        match key_to_class.get(&normalized) {
            Some(&c) => {
                ratio.insert(z, &lead / &scale[c]);
                classes[c].push(z);
            }
            None => {
                key_to_class.insert(normalized, classes.len());
                classes.push(vec![z]);
                scale.push(lead);
                ratio.insert(z, Rational::one());
            }
        }
    }
    // elements are visited in ascending order, so classes are already sorted
    let rep = classes.iter().map(|c| c[0]).collect();
    SimClasses {
        component,
        elements: elements.to_vec(),
        classes,
        rep,
        ratio,
    }
}

/// Product decomposition `D_l = A x [s]` with `g = C * Π mu[i_j] * S(α)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorStructure {
    pub component: usize,
    pub elements: Vec<usize>,
    /// `classes[α][i]` is the element `(α, i)`.
    pub classes: Vec<Vec<usize>>,
    pub s: usize,
    /// Within-class index of every element.
    pub index: BTreeMap<usize, usize>,
    /// Ascending, `mu[0] = 1`.
    pub mu: Vec<Rational>,
    #[serde(rename = "C")]
    pub c: Rational,
    /// Zero/nonzero pattern of `g` on class tuples.
    pub relation: Relation,
    #[serde(skip)]
    class_of: BTreeMap<usize, usize>,
    #[serde(skip)]
    table: SymFunc,
}

impl FactorStructure {
    /// `|A|`.
    pub fn order(&self) -> usize {
        self.classes.len()
    }

    pub fn element(&self, alpha: usize, i: usize) -> usize {
        self.classes[alpha][i]
    }

    pub fn class_of(&self, z: usize) -> Option<usize> {
        self.class_of.get(&z).copied()
    }

    /// Least element of every class.
    pub fn reps(&self) -> Vec<usize> {
        self.classes.iter().map(|c| *c.iter().min().expect("classes are nonempty")).collect()
    }

    /// `g` at a tuple of this component's elements.
    pub fn weight(&self, elements: &[usize]) -> Rational {
        let local: Vec<usize> = elements
            .iter()
            .map(|z| self.elements.binary_search(z).expect("element of the component"))
            .collect();
        self.table.weight(&local)
    }

    pub fn arity(&self) -> usize {
        self.relation.arity()
    }

    /// `Σ_i mu[i]^k`.
    pub fn mu_power_sum(&self, k: u64) -> Rational {
        self.mu.iter().map(|m| m.pow(k as i64)).sum()
    }
}

/// Checks equal class sizes, matching normalized ratio lists and a constant
/// representative value, and assembles the factor data.
pub fn check_product_structure(sc: &SimClasses, g: &SymFunc) -> Check<FactorStructure> {
    let first = &sc.classes[0];
    if let Some(other) = sc.classes.iter().find(|c| c.len() != first.len()) {
        return Err(HardnessWitness::new(
            WitnessKind::UnequalClassSizes,
            Evidence::ClassSizes {
                class_a: first.clone(),
                class_b: other.clone(),
            },
        )
        .in_component(sc.component));
    }
    let ordered: Vec<Vec<(Rational, usize)>> = sc.classes.iter().map(|c| normalized_ratios(sc, c)).collect();
    let mu: Vec<Rational> = ordered[0].iter().map(|(x, _)| x.clone()).collect();
    for (k, list) in ordered.iter().enumerate().skip(1) {
        if list.iter().map(|(x, _)| x).ne(mu.iter()) {
            return Err(HardnessWitness::new(
                WitnessKind::RatioMultisetMismatch,
                Evidence::RatioLists {
                    class_a: sc.classes[0].clone(),
                    class_b: sc.classes[k].clone(),
                    ratios_a: mu.clone(),
                    ratios_b: list.iter().map(|(x, _)| x.clone()).collect(),
                },
            )
            .in_component(sc.component));
        }
    }
    let classes: Vec<Vec<usize>> = ordered.iter().map(|l| l.iter().map(|&(_, z)| z).collect()).collect();
    let mut index = BTreeMap::new();
    let mut class_of = BTreeMap::new();
    for (alpha, class) in classes.iter().enumerate() {
        for (i, &z) in class.iter().enumerate() {
            index.insert(z, i);
            class_of.insert(z, alpha);
        }
    }
    let r = g.arity();
    let n_a = classes.len();
    let mut tuples = Vec::new();
    let mut c: Option<(Vec<usize>, Rational)> = None;
    for alpha in multisets(n_a, r) {
        let tuple: Vec<usize> = alpha.iter().map(|&a| classes[a][0]).collect();
        let w = g.weight(&tuple);
        if w.is_zero() {
            continue;
        }
        match &c {
            None => c = Some((tuple, w)),
            Some((t0, c0)) if *c0 != w => {
                return Err(HardnessWitness::new(
                    WitnessKind::RepValueInconsistent,
                    Evidence::RepValues {
                        tuple_a: t0.clone(),
                        value_a: c0.clone(),
                        tuple_b: tuple,
                        value_b: w,
                    },
                )
                .in_component(sc.component));
            }
            Some(_) => {}
        }
        tuples.push(alpha);
    }
    let (_, c) = c.expect("a pruned component carries a nonzero weight");
    let relation = Relation::new(n_a, r, tuples).expect("class indices are in range");
    Ok(FactorStructure {
        component: sc.component,
        elements: sc.elements.clone(),
        s: first.len(),
        classes,
        index,
        mu,
        c,
        relation,
        class_of,
        table: g.restrict(&sc.elements),
    })
}

/// Ratios of a class divided by their minimum, ascending, ties by element.
pub(crate) fn normalized_ratios(sc: &SimClasses, class: &[usize]) -> Vec<(Rational, usize)> {
    let min = class.iter().map(|z| &sc.ratio[z]).min().expect("nonempty class").clone();
    let mut out: Vec<(Rational, usize)> = class.iter().map(|&z| (&sc.ratio[&z] / &min, z)).collect();
    out.sort();
    out
}

/// Checks `g(z)^r = Π_j g(α, uniform index i_j)` and `g(z) = C Π mu[i_j]` for every
/// `α ∈ S` and every index tuple.
pub fn verify_factoring_identity(g: &SymFunc, fs: &FactorStructure) -> Result<Check<()>> {
    let r = g.arity();
    if fs.arity() != r {
        return Err(Error::Precondition("factor structure arity differs from g".into()));
    }
    let s = fs.s;
    let fail = |evidence| {
        Ok(Err(
            HardnessWitness::new(WitnessKind::FactoringIdentityViolation, evidence).in_component(fs.component)
        ))
    };
    let mut idx = vec![0usize; r];
    for alpha in fs.relation.tuples() {
        idx.iter_mut().for_each(|x| *x = 0);
        loop {
            let tuple: Vec<usize> = alpha.iter().zip(&idx).map(|(&a, &i)| fs.element(a, i)).collect();
            let value = g.weight(&tuple);
            let uniform: Vec<Vec<usize>> = idx
                .iter()
                .map(|&i| alpha.iter().map(|&a| fs.element(a, i)).collect())
                .collect();
            let lhs = value.pow(r as i64);
            let rhs: Rational = uniform.iter().map(|t| g.weight(t)).product();
            if lhs != rhs {
                return fail(Evidence::RootFree {
                    tuple,
                    uniform,
                    lhs,
                    rhs,
                });
            }
            let expected = idx.iter().fold(fs.c.clone(), |acc, &i| acc * &fs.mu[i]);
            if value != expected {
                return fail(Evidence::ClosedForm {
                    tuple,
                    value,
                    expected,
                });
            }
            let Some(pos) = (0..r).rev().find(|&t| idx[t] + 1 < s) else {
                break;
            };
            idx[pos] += 1;
            for x in &mut idx[pos + 1..] {
                *x = 0;
            }
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn classes_of(g: &SymFunc) -> SimClasses {
        let elements: Vec<usize> = (0..g.q()).collect();
        sim_classes(g, 0, &elements)
    }

    #[test]
    fn sim_class_examples() {
        let sc = classes_of(&fixtures::parity());
        assert_eq!(sc.classes, vec![vec![0], vec![1]]);

        let sc = classes_of(&fixtures::geometric());
        assert_eq!(sc.classes, vec![vec![0, 1]]);
        assert_eq!(sc.ratio[&1], Rational::from(2i64));

        let sc = classes_of(&fixtures::mixed());
        assert_eq!(sc.classes, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(sc.ratio[&1], Rational::from(3i64));
        assert_eq!(sc.ratio[&3], Rational::from(3i64));
        assert_eq!(sc.rep, vec![0, 2]);
    }

    #[test]
    fn product_structure_examples() {
        let g = fixtures::mixed();
        let fs = check_product_structure(&classes_of(&g), &g).unwrap();
        assert_eq!(fs.s, 2);
        assert_eq!(fs.mu, vec![Rational::one(), Rational::from(3i64)]);
        assert_eq!(fs.c, Rational::one());
        let parity = Relation::from_fn(2, 3, |t| t.iter().sum::<usize>() % 2 == 0);
        assert_eq!(fs.relation, parity);

        let g = fixtures::parity();
        let fs = check_product_structure(&classes_of(&g), &g).unwrap();
        assert_eq!((fs.s, fs.mu.clone(), fs.c.clone()), (1, vec![Rational::one()], Rational::one()));

        let g = fixtures::mixed_restricted();
        let w = check_product_structure(&classes_of(&g), &g).unwrap_err();
        assert_eq!(w.kind, WitnessKind::UnequalClassSizes);
        assert_eq!(
            w.evidence,
            Evidence::ClassSizes {
                class_a: vec![0, 1],
                class_b: vec![2]
            }
        );
    }

    #[test]
    fn factoring_identity_examples() {
        for g in [fixtures::mixed(), fixtures::geometric()] {
            let fs = check_product_structure(&classes_of(&g), &g).unwrap();
            assert!(verify_factoring_identity(&g, &fs).unwrap().is_ok());
        }
        let g = fixtures::mixed();
        let fs = check_product_structure(&classes_of(&g), &g).unwrap();
        let w = verify_factoring_identity(&fixtures::mixed_perturbed(), &fs).unwrap().unwrap_err();
        assert_eq!(w.kind, WitnessKind::FactoringIdentityViolation);
        let Evidence::RootFree { tuple, lhs, rhs, .. } = w.evidence else {
            panic!("expected the root-free form");
        };
        assert_eq!(tuple, vec![0, 0, 1]);
        assert_eq!(lhs, Rational::from(125i64));
        assert_eq!(rhs, Rational::from(27i64));
    }

    #[test]
    fn unequal_ratio_lists_are_reported() {
        // two classes of size 2 with ratio lists (1, 2) and (1, 3)
        let mu = |z: usize| match z {
            0 | 2 => Rational::one(),
            1 => Rational::from(2i64),
            _ => Rational::from(3i64),
        };
        let g = SymFunc::from_fn(4, 3, |t| {
            if t.iter().map(|z| z / 2).sum::<usize>() % 2 == 0 {
                t.iter().map(|&z| mu(z)).product()
            } else {
                Rational::zero()
            }
        });
        let w = check_product_structure(&classes_of(&g), &g).unwrap_err();
        assert_eq!(w.kind, WitnessKind::RatioMultisetMismatch);
    }
}
