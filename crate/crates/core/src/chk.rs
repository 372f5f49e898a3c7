//! Checkable right ideals: `C = Ann_r(u)` for a single check element, with
//! the two principal-ideal characterizations run alongside and compared.

use crate::error::{falsified, GlabError, Result};
use crate::galg::{GroupAlgebra, Idx};
use crate::ideals::{Side, SidedIdeal};
use crate::idem::OrthogonalDecomposition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckabilityVerdict {
    /// First `u` (canonical order) with `Ann_r(u) = C`.
    pub check_element: Option<Idx>,
    /// First `w` with `wRG = C^⊥`.
    pub dual_generator: Option<Idx>,
    /// First `v` with `RGv = Ann_l(C)`.
    pub ann_left_generator: Option<Idx>,
    /// Side on which `C^⊥` is closed; `None` when it is neither.
    pub dual_side: Option<Side>,
    /// `C^⊥` principal on `dual_side`.
    pub dual_principal_on_own_side: Option<Idx>,
    /// `C = Ann_r(RG·u)` for the check element.
    pub definition_link_ok: Option<bool>,
}

impl CheckabilityVerdict {
    pub fn checkable(&self) -> bool {
        self.check_element.is_some()
    }

    /// Check element ⟺ principal dual (right) ⟺ principal left annihilator.
    pub fn consistent(&self) -> bool {
        let i = self.check_element.is_some();
        i == self.dual_generator.is_some() && i == self.ann_left_generator.is_some()
    }

    /// Criterion (i) against the left annihilator only.
    pub fn annihilator_criterion_agrees(&self) -> bool {
        self.check_element.is_some() == self.ann_left_generator.is_some()
    }

    /// Criterion (i) against the dual only.
    pub fn dual_criterion_agrees(&self) -> bool {
        self.check_element.is_some() == self.dual_generator.is_some()
    }
}

#[derive(Debug, Clone)]
pub struct CensusRow {
    pub ideal: SidedIdeal,
    pub verdict: CheckabilityVerdict,
    /// Indices into the decomposition of 1 whose summands add up to the ideal.
    pub decomposition_subset: Option<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct Census {
    pub rows: Vec<CensusRow>,
    pub decomposition: OrthogonalDecomposition,
}

impl Census {
    pub fn code_checkable(&self) -> bool {
        self.rows.iter().all(|r| r.verdict.checkable())
    }

    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.verdict.consistent())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnnIntersection {
    /// Some summand of the decomposition is not central.
    HypothesisUnmet,
    Checked {
        /// `C = ⋂_k Ann_r(RG e_k)` over the complementary summands.
        intersection_ok: bool,
        /// `C = Ann_r(Σ_k e_k)`.
        chain_ok: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualQuotient {
    pub algebra: usize,
    pub dual: usize,
    /// `|RG| / |C^⊥|`, the size of `RG/C^⊥`.
    pub quotient: usize,
    pub matches_code: bool,
}

impl GroupAlgebra {
    fn first_generator(&self, set: &SidedIdeal, side: Side) -> Result<Option<Idx>> {
        for w in set.elements() {
            if self.principal(w, side)?.same_set(set) {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }

    /// Runs the three criteria without asserting that they agree.
    pub fn checkability(&self, c: &SidedIdeal) -> Result<CheckabilityVerdict> {
        if c.side() != Side::Right {
            return Err(GlabError::Mismatch(
                "checkability is for right ideals".into(),
            ));
        }
        self.require("group algebra", self.bounds().op)?;
        let mut check_element = None;
        for u in 0..self.len() as Idx {
            if self.ann_right_elems(&[u])? == *c {
                check_element = Some(u);
                break;
            }
        }
        let dual = self.dual_unchecked(c)?;
        let dual_generator = self.first_generator(&dual, Side::Right)?;
        let ann = self.ann_left(c)?;
        let ann_left_generator = self.first_generator(&ann, Side::Left)?;
        let dual_side = [Side::Right, Side::Left].into_iter().find(|&s| {
            let closed = self.close(&dual.elements().collect::<Vec<_>>(), s);
            closed.map(|x| x.same_set(&dual)).unwrap_or(false)
        });
        let dual_principal_on_own_side = match dual_side {
            Some(s) => self.first_generator(&dual, s)?,
            None => None,
        };
        let definition_link_ok = match check_element {
            Some(u) => Some(self.ann_right(&self.close(&[u], Side::Left)?)? == *c),
            None => None,
        };
        Ok(CheckabilityVerdict {
            check_element,
            dual_generator,
            ann_left_generator,
            dual_side,
            dual_principal_on_own_side,
            definition_link_ok,
        })
    }

    /// Checkability with the criteria cross-asserted: disagreement is a
    /// falsification error.
    pub fn is_checkable(&self, c: &SidedIdeal) -> Result<CheckabilityVerdict> {
        let v = self.checkability(c)?;
        if !v.consistent() {
            return Err(falsified(
                "checkability-criteria-agree",
                format!(
                    "{}: check element {:?}, dual generator {:?}, left-annihilator generator {:?}",
                    self.format_ideal(c),
                    v.check_element.map(|u| self.format_idx(u)),
                    v.dual_generator.map(|u| self.format_idx(u)),
                    v.ann_left_generator.map(|u| self.format_idx(u)),
                ),
            ));
        }
        Ok(v)
    }

    /// Verdicts for every right ideal, in census order.
    pub fn code_checkable_census(&self) -> Result<Census> {
        let ideals = self.enumerate_right_ideals()?;
        let decomposition = self.decompose_one()?;
        let mut rows = Vec::with_capacity(ideals.len());
        for ideal in ideals {
            let verdict = self.checkability(&ideal)?;
            let decomposition_subset = self.decomposition_subset(&ideal, &decomposition)?;
            rows.push(CensusRow {
                ideal,
                verdict,
                decomposition_subset,
            });
        }
        Ok(Census {
            rows,
            decomposition,
        })
    }

    /// The subset `S` of summands with `C = Σ_{j∈S} e_j RG`, if any.
    pub fn decomposition_subset(
        &self,
        c: &SidedIdeal,
        d: &OrthogonalDecomposition,
    ) -> Result<Option<Vec<usize>>> {
        let s = d.len();
        if s > 20 {
            return Err(GlabError::Scale {
                what: "decomposition subsets",
                size: 1u128 << s,
                bound: 1 << 20,
            });
        }
        for mask in 0u32..(1 << s) {
            let subset: Vec<usize> = (0..s).filter(|&k| mask >> k & 1 == 1).collect();
            let e = subset
                .iter()
                .fold(0, |acc, &k| self.add_idx(acc, d.parts()[k]));
            let summand = self.principal(e, Side::Right)?;
            if summand == *c {
                return Ok(Some(subset));
            }
        }
        Ok(None)
    }

    /// Checkability through the decomposition of 1: `C = ⊕_{j} e_j RG`
    /// compared with the intersection of right annihilators of the
    /// complementary `RG e_k`. Requires central summands.
    pub fn ann_intersection_check(
        &self,
        c: &SidedIdeal,
        d: &OrthogonalDecomposition,
    ) -> Result<AnnIntersection> {
        let subset = self.decomposition_subset(c, d)?.ok_or_else(|| {
            GlabError::Invalid(format!(
                "{} is not a sum of summands of the decomposition",
                self.format_ideal(c)
            ))
        })?;
        if !d.parts().iter().all(|&e| self.is_central(&self.decode(e))) {
            return Ok(AnnIntersection::HypothesisUnmet);
        }
        let complement: Vec<Idx> = (0..d.len())
            .filter(|k| !subset.contains(k))
            .map(|k| d.parts()[k])
            .collect();
        let mut meet = self.whole(Side::Right)?;
        for &e in &complement {
            let ann = self.ann_right(&self.close(&[e], Side::Left)?)?;
            meet = self.intersect(&meet, &ann)?;
        }
        let sum = complement.iter().fold(0, |acc, &e| self.add_idx(acc, e));
        let chain = self.ann_right_elems(&[sum])?;
        Ok(AnnIntersection::Checked {
            intersection_ok: meet == *c,
            chain_ok: chain == *c,
        })
    }

    /// Cardinality shadow of `C* ≅ RG/C^⊥`.
    pub fn dual_quotient_note(&self, c: &SidedIdeal) -> Result<DualQuotient> {
        let dual = self.dual_unchecked(c)?;
        let quotient = self.len() / dual.len();
        Ok(DualQuotient {
            algebra: self.len(),
            dual: dual.len(),
            quotient,
            matches_code: quotient == c.len(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finring::{Ring, RingSpec};
    use crate::grp::{FiniteGroup, GroupSpec};

    fn algebra(ring: RingSpec, group: GroupSpec) -> GroupAlgebra {
        GroupAlgebra::new(
            Ring::build(&ring).unwrap(),
            FiniteGroup::build(&group).unwrap(),
        )
    }

    fn idx(a: &GroupAlgebra, c: &[i64]) -> Idx {
        a.encode(&a.from_ints(c).unwrap())
    }

    #[test]
    fn checkable_examples() {
        let f2c2 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(2));
        let zero = f2c2.zero_ideal(Side::Right).unwrap();
        let v = f2c2.is_checkable(&zero).unwrap();
        assert_eq!(v.check_element, Some(1));
        let whole = f2c2.whole(Side::Right).unwrap();
        assert_eq!(f2c2.is_checkable(&whole).unwrap().check_element, Some(0));
        let aug = f2c2.close(&[idx(&f2c2, &[1, 1])], Side::Right).unwrap();
        let v = f2c2.is_checkable(&aug).unwrap();
        assert_eq!(v.check_element, Some(idx(&f2c2, &[1, 1])));
        assert_eq!(v.dual_generator, Some(idx(&f2c2, &[1, 1])));
        assert_eq!(v.definition_link_ok, Some(true));
        let left = f2c2.zero_ideal(Side::Left).unwrap();
        assert!(f2c2.checkability(&left).is_err());
    }

    #[test]
    fn census_examples() {
        for (ring, group, n) in [
            (RingSpec::zmod(2), GroupSpec::Cyclic(2), 3),
            (RingSpec::zmod(3), GroupSpec::Cyclic(2), 4),
            (RingSpec::zmod(2), GroupSpec::Cyclic(3), 4),
        ] {
            let a = algebra(ring, group);
            let census = a.code_checkable_census().unwrap();
            assert_eq!(census.rows.len(), n);
            assert!(census.code_checkable() && census.consistent());
        }
    }

    /// Brute-force oracle: `C` is checkable iff some `u` has exactly `C` as
    /// its set of right zero-divisors.
    #[test]
    fn checkable_matches_zero_divisor_oracle() {
        let a = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(4));
        for c in a.enumerate_right_ideals().unwrap() {
            let oracle = (0..a.len() as Idx).any(|u| {
                let zeros: Vec<Idx> = (0..a.len() as Idx)
                    .filter(|&x| a.mul_idx(u, x) == 0)
                    .collect();
                zeros == c.elements().collect::<Vec<_>>()
            });
            assert_eq!(a.is_checkable(&c).unwrap().checkable(), oracle);
        }
    }

    #[test]
    fn ann_intersection_examples() {
        let f3c2 = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let d = f3c2.decompose_one().unwrap();
        let whole = f3c2.whole(Side::Right).unwrap();
        let ok = AnnIntersection::Checked {
            intersection_ok: true,
            chain_ok: true,
        };
        assert_eq!(f3c2.ann_intersection_check(&whole, &d).unwrap(), ok);
        let zero = f3c2.zero_ideal(Side::Right).unwrap();
        assert_eq!(f3c2.ann_intersection_check(&zero, &d).unwrap(), ok);
        let c = f3c2.close(&[idx(&f3c2, &[2, 2])], Side::Right).unwrap();
        assert_eq!(f3c2.ann_intersection_check(&c, &d).unwrap(), ok);

        let m = algebra(RingSpec::matrix(2, RingSpec::zmod(2)), GroupSpec::Cyclic(2));
        let dm = m.decompose_one().unwrap();
        let w = m.whole(Side::Right).unwrap();
        assert_eq!(
            m.ann_intersection_check(&w, &dm).unwrap(),
            AnnIntersection::HypothesisUnmet
        );

        let f2c4 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(4));
        let d4 = f2c4.decompose_one().unwrap();
        let aug = f2c4
            .close(&[idx(&f2c4, &[1, 1, 0, 0])], Side::Right)
            .unwrap();
        assert!(f2c4.ann_intersection_check(&aug, &d4).is_err());
    }

    #[test]
    fn dual_quotient_examples() {
        let f2c2 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(2));
        let whole = f2c2.whole(Side::Right).unwrap();
        assert_eq!(f2c2.dual_quotient_note(&whole).unwrap().quotient, 4);
        let zero = f2c2.zero_ideal(Side::Right).unwrap();
        assert_eq!(f2c2.dual_quotient_note(&zero).unwrap().quotient, 1);
        let aug = f2c2.close(&[idx(&f2c2, &[1, 1])], Side::Right).unwrap();
        let q = f2c2.dual_quotient_note(&aug).unwrap();
        assert_eq!((q.quotient, q.matches_code), (2, true));
    }

    /// Over M2(F2)C2 every right ideal is checkable, but most duals are
    /// principal left ideals rather than right ones.
    #[test]
    fn noncommutative_dual_criterion() {
        let a = algebra(RingSpec::matrix(2, RingSpec::zmod(2)), GroupSpec::Cyclic(2));
        let census = a.code_checkable_census().unwrap();
        assert!(census.code_checkable());
        assert!(census
            .rows
            .iter()
            .all(|r| r.verdict.annihilator_criterion_agrees()));
        assert!(census
            .rows
            .iter()
            .all(|r| r.verdict.dual_principal_on_own_side.is_some()));
        assert!(census
            .rows
            .iter()
            .any(|r| !r.verdict.dual_criterion_agrees()));
        assert!(!census.consistent());
    }
}
