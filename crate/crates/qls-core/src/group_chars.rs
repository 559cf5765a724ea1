//! Finite abelian groups, their duals, and the character sums the
//! (semi)primeness criteria consume.

use std::collections::BTreeSet;

use num::BigRational;

use crate::cyclotomic::CycNumber;
use crate::error::{Error, Result};

/// G = Z_{d_1} x ... x Z_{d_r}, presented by its factor orders.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct AbelianGroup {
    factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<AbelianGroup> {
        if factors.iter().any(|&d| d == 0) {
            return Err(Error::InvalidDatum("group factor of order 0".into()));
        }
        Ok(AbelianGroup { factors })
    }

    /// The trivial group.
    pub fn trivial() -> AbelianGroup {
        AbelianGroup { factors: vec![] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            factors: self.factors.clone(),
            exps: vec![0; self.factors.len()],
        }
    }

    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        if exps.len() != self.factors.len() {
            return Err(Error::GroupMismatch);
        }
        let reduced = exps
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| a.rem_euclid(d as i64) as u64)
            .collect();
        Ok(GroupElement {
            factors: self.factors.clone(),
            exps: reduced,
        })
    }

    pub fn character(&self, exps: &[i64]) -> Result<Character> {
        let e = self.element(exps)?;
        Ok(Character {
            factors: e.factors,
            exps: e.exps,
        })
    }

    pub fn trivial_character(&self) -> Character {
        Character {
            factors: self.factors.clone(),
            exps: vec![0; self.factors.len()],
        }
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        enumerate_tuples(&self.factors)
            .into_iter()
            .map(|exps| GroupElement {
                factors: self.factors.clone(),
                exps,
            })
            .collect()
    }

    pub fn characters(&self) -> Vec<Character> {
        enumerate_tuples(&self.factors)
            .into_iter()
            .map(|exps| Character {
                factors: self.factors.clone(),
                exps,
            })
            .collect()
    }
}

fn enumerate_tuples(factors: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &d in factors {
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for t in &out {
            for a in 0..d {
                let mut t2 = t.clone();
                t2.push(a);
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GroupElement {
    factors: Vec<u64>,
    exps: Vec<u64>,
}

impl GroupElement {
    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.factors != other.factors {
            return Err(Error::GroupMismatch);
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .zip(&self.factors)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        Ok(GroupElement {
            factors: self.factors.clone(),
            exps,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let exps = self
            .exps
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| (d - a) % d)
            .collect();
        GroupElement {
            factors: self.factors.clone(),
            exps,
        }
    }
}

/// A character of G, stored as an exponent tuple: chi(g) = prod zeta_{d_i}^{c_i a_i}.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Character {
    factors: Vec<u64>,
    exps: Vec<u64>,
}

impl Character {
    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&c| c == 0)
    }

    pub fn eval(&self, g: &GroupElement) -> Result<CycNumber> {
        if self.factors != g.factors {
            return Err(Error::GroupMismatch);
        }
        let mut acc = CycNumber::one();
        for ((&c, &a), &d) in self.exps.iter().zip(&g.exps).zip(&self.factors) {
            acc = acc.mul(&CycNumber::root_of_unity(d, (c * a) as i64)?);
        }
        Ok(acc)
    }

    pub fn product(&self, other: &Character) -> Result<Character> {
        if self.factors != other.factors {
            return Err(Error::GroupMismatch);
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .zip(&self.factors)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        Ok(Character {
            factors: self.factors.clone(),
            exps,
        })
    }

    pub fn inverse(&self) -> Character {
        let exps = self
            .exps
            .iter()
            .zip(&self.factors)
            .map(|(&a, &d)| (d - a) % d)
            .collect();
        Character {
            factors: self.factors.clone(),
            exps,
        }
    }

    pub fn group(&self) -> AbelianGroup {
        AbelianGroup {
            factors: self.factors.clone(),
        }
    }
}

/// (1/|G|) sum_g (chi tensor psi)(g). Equals 1 iff psi = chi^{-1}, else 0.
pub fn char_sum(chi: &Character, psi: &Character) -> Result<BigRational> {
    if chi.factors != psi.factors {
        return Err(Error::GroupMismatch);
    }
    let group = chi.group();
    let prod = chi.product(psi)?;
    let mut acc = CycNumber::zero();
    for g in group.elements() {
        acc = acc.add(&prod.eval(&g)?);
    }
    let order = CycNumber::from_integer(group.order() as i64);
    let value = acc.div(&order)?;
    value
        .to_rational()
        .ok_or_else(|| Error::InvalidDatum("character sum is not rational".into()))
}

/// Breadth-first product saturation of the subgroup of the dual generated by
/// `gens`. Inverses come for free in a finite group.
pub fn subgroup_generated(
    group: &AbelianGroup,
    gens: &[Character],
) -> Result<(BTreeSet<Character>, bool)> {
    for c in gens {
        if c.factors != group.factors {
            return Err(Error::GroupMismatch);
        }
    }
    let mut closure: BTreeSet<Character> = BTreeSet::new();
    closure.insert(group.trivial_character());
    let mut frontier: Vec<Character> = vec![group.trivial_character()];
    while let Some(cur) = frontier.pop() {
        for g in gens {
            let next = cur.product(g)?;
            if closure.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let covers_all = closure.len() as u64 == group.order();
    Ok((closure, covers_all))
}
