use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::abelian::{decompose, AbelianGroup, CyclicDecomposition};
use crate::error::{Error, Result};
use crate::model::multisets;

use super::relation::Relation;
use super::witness::{Evidence, HardnessWitness, WitnessKind};
use super::Check;

/// Every `(r-1)`-tuple has exactly one completion in `S`. Sorted prefixes
/// suffice by symmetry.
pub fn latin_check(s: &Relation) -> Check<()> {
    let r = s.arity();
    for prefix in multisets(s.size(), r - 1) {
        let completions = s.completions(&prefix, 0);
        if completions.len() != 1 {
            return Err(HardnessWitness::new(
                WitnessKind::NotLatin,
                Evidence::Completions { prefix, completions },
            ));
        }
    }
    Ok(())
}

/// The Abelian group on the class set, the target `a`, and its invariant factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    pub group: AbelianGroup,
    pub a: usize,
    pub decomposition: CyclicDecomposition,
}

impl GroupStructure {
    pub fn zero(&self) -> usize {
        self.group.zero()
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.decomposition.factors()
    }
}

impl Serialize for GroupStructure {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = ser.serialize_struct("GroupStructure", 7)?;
        st.serialize_field("order", &self.group.order())?;
        st.serialize_field("zero", &self.group.zero())?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("add", self.group.table())?;
        st.serialize_field("neg", self.group.neg_table())?;
        st.serialize_field("invariant_factors", self.decomposition.factors())?;
        st.serialize_field("iso", self.decomposition.iso_table())?;
        st.end()
    }
}

/// [`reconstruct_group_with_zero`] with the least element as zero.
pub fn reconstruct_group(s: &Relation) -> Result<Check<GroupStructure>> {
    reconstruct_group_with_zero(s, 0)
}

/// Builds `α·β` (the completion of `(α, β, ·, 0, …, 0)`), then `α + β = 0·(α·β)`,
/// `-α = α·0²` and `a = 0²`, and verifies the group exhaustively.
pub fn reconstruct_group_with_zero(s: &Relation, zero: usize) -> Result<Check<GroupStructure>> {
    let n = s.size();
    if zero >= n || s.arity() < 3 {
        return Err(Error::Precondition("zero out of range or arity below 3".into()));
    }
    let mut dot = vec![vec![0usize; n]; n];
    for (x, row) in dot.iter_mut().enumerate() {
        for (y, slot) in row.iter_mut().enumerate() {
            match s.completions(&[x, y], zero)[..] {
                [z] => *slot = z,
                _ => return Err(Error::Internal(format!("relation is not Latin at ({x}, {y})"))),
            }
        }
    }
    let sq = dot[zero][zero];
    let add: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| dot[zero][dot[x][y]]).collect()).collect();
    let neg: Vec<usize> = (0..n).map(|x| dot[x][sq]).collect();
    for x in 0..n {
        if add[zero][x] != x {
            return Err(Error::Internal(format!("{zero} is not an identity at {x}")));
        }
        if add[x][neg[x]] != zero {
            return Err(Error::Internal(format!("{} is not an inverse of {x}", neg[x])));
        }
        for y in 0..n {
            if add[x][y] != add[y][x] {
                return Err(Error::Internal(format!("addition not commutative at ({x}, {y})")));
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = add[add[x][y]][z];
                let rhs = add[x][add[y][z]];
                if lhs != rhs {
                    return Ok(Err(HardnessWitness::new(
                        WitnessKind::NotAssociative,
                        Evidence::Associativity {
                            zero,
                            triple: [x, y, z],
                            lhs,
                            rhs,
                        },
                    )));
                }
            }
        }
    }
    let group = AbelianGroup::new(add, zero)?;
    // triple set: α + β + α·β = 0²
    for x in 0..n {
        for y in 0..n {
            let total = group.add(group.add(x, y), dot[x][y]);
            if total != sq {
                let mut prefix = vec![zero; s.arity() - 1];
                prefix[0] = x;
                prefix[1] = y;
                let expected = group.sub(group.sub(sq, x), y);
                return Ok(Err(HardnessWitness::new(
                    WitnessKind::EquationMismatch,
                    Evidence::Equation {
                        zero,
                        prefix,
                        completion: dot[x][y],
                        expected,
                    },
                )));
            }
        }
    }
    let decomposition = decompose(&group)?;
    Ok(Ok(GroupStructure {
        group,
        a: sq,
        decomposition,
    }))
}

/// For every `(r-1)`-prefix the unique completion must be `a - Σ prefix`.
pub fn equation_check(s: &Relation, gs: &GroupStructure) -> Result<Check<()>> {
    let g = &gs.group;
    if g.order() != s.size() {
        return Err(Error::Precondition("group and relation sizes differ".into()));
    }
    for prefix in multisets(s.size(), s.arity() - 1) {
        let completion = match s.completions(&prefix, 0)[..] {
            [z] => z,
            _ => return Err(Error::Precondition(format!("relation is not Latin at {prefix:?}"))),
        };
        let expected = prefix.iter().fold(gs.a, |acc, &x| g.sub(acc, x));
        if completion != expected {
            return Ok(Err(HardnessWitness::new(
                WitnessKind::EquationMismatch,
                Evidence::Equation {
                    zero: g.zero(),
                    prefix,
                    completion,
                    expected,
                },
            )));
        }
    }
    Ok(Ok(()))
}
