//! Idempotents of RG: enumeration, primitivity, orthogonal decompositions of
//! 1 into primitives, and lifting from `(R/J)G` along the radical.

use crate::error::{falsified, GlabError, Result};
use crate::galg::{AlgElem, GroupAlgebra, Idx};
use crate::ideals::{Side, SidedIdeal};

/// Every idempotent of RG in canonical order, with per-element flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentSet {
    elems: Vec<Idx>,
    central: Vec<bool>,
    primitive: Vec<bool>,
}

impl IdempotentSet {
    pub fn elements(&self) -> &[Idx] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Never true: 0 and 1 are always present.
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: Idx) -> bool {
        self.elems.binary_search(&e).is_ok()
    }

    fn position(&self, e: Idx) -> Option<usize> {
        self.elems.binary_search(&e).ok()
    }

    pub fn is_central(&self, e: Idx) -> Option<bool> {
        self.position(e).map(|k| self.central[k])
    }

    /// `None` for non-members; 0 is never primitive.
    pub fn is_primitive(&self, e: Idx) -> Option<bool> {
        self.position(e).map(|k| self.primitive[k])
    }

    /// `(element, central, primitive)` rows in canonical order.
    pub fn rows(&self) -> impl Iterator<Item = (Idx, bool, bool)> + '_ {
        (0..self.elems.len()).map(|k| (self.elems[k], self.central[k], self.primitive[k]))
    }
}

/// Nonzero pairwise-orthogonal idempotents summing to a target (1 for
/// [`GroupAlgebra::decompose_one`]). Stored in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalDecomposition {
    parts: Vec<Idx>,
}

impl OrthogonalDecomposition {
    pub fn parts(&self) -> &[Idx] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Result of lifting a residue idempotent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lift {
    pub element: AlgElem,
    pub iterations: usize,
    /// The cap `f - 1` from the radical's nilpotency index.
    pub cap: usize,
}

impl GroupAlgebra {
    pub fn is_idempotent_idx(&self, e: Idx) -> bool {
        self.mul_idx(e, e) == e
    }

    fn is_central_idx(&self, e: Idx) -> bool {
        self.is_central(&self.decode(e))
    }

    fn require_idempotent(&self, e: Idx) -> Result<()> {
        if !self.is_idempotent_idx(e) {
            return Err(GlabError::Invalid(format!(
                "{} is not idempotent",
                self.format_idx(e)
            )));
        }
        Ok(())
    }

    /// Exhaustive `{x : x² = x}`.
    pub fn enumerate_idempotents(&self) -> Result<IdempotentSet> {
        self.require("group algebra", self.bounds().op)?;
        let elems: Vec<Idx> = (0..self.len() as Idx)
            .filter(|&x| self.is_idempotent_idx(x))
            .collect();
        let central = elems.iter().map(|&e| self.is_central_idx(e)).collect();
        let mut set = IdempotentSet {
            primitive: vec![false; elems.len()],
            elems,
            central,
        };
        let primitive = set
            .elems
            .iter()
            .map(|&e| e != 0 && self.split_within(&set, e).is_none())
            .collect();
        set.primitive = primitive;
        Ok(set)
    }

    /// First split `e = e₁ + e₂` into nonzero orthogonal idempotents, `e₁`
    /// least in canonical order.
    fn split_within(&self, set: &IdempotentSet, e: Idx) -> Option<(Idx, Idx)> {
        set.elems.iter().copied().find_map(|e1| {
            if e1 == 0 || e1 == e {
                return None;
            }
            let e2 = self.sub_idx(e, e1);
            let orthogonal = self.mul_idx(e1, e2) == 0 && self.mul_idx(e2, e1) == 0;
            (e2 != 0 && orthogonal && set.contains(e2)).then_some((e1, e2))
        })
    }

    /// Orthogonal-pair split of a non-primitive idempotent, if any.
    pub fn split_idempotent(&self, set: &IdempotentSet, e: Idx) -> Result<Option<(Idx, Idx)>> {
        self.require_idempotent(e)?;
        Ok(self.split_within(set, e))
    }

    /// Exhaustive orthogonal-pair test.
    pub fn is_primitive(&self, set: &IdempotentSet, e: Idx) -> Result<bool> {
        self.require_idempotent(e)?;
        if e == 0 {
            return Err(GlabError::Invalid("0 is excluded from primitivity".into()));
        }
        Ok(self.split_within(set, e).is_none())
    }

    /// Split `e` greedily until every part is primitive. `refine(0)` is empty.
    pub fn refine(&self, set: &IdempotentSet, e: Idx) -> Result<OrthogonalDecomposition> {
        self.require_idempotent(e)?;
        let mut work = if e == 0 { vec![] } else { vec![e] };
        let mut parts = Vec::new();
        while let Some(x) = work.pop() {
            match self.split_within(set, x) {
                Some((a, b)) => {
                    work.push(b);
                    work.push(a);
                }
                None => parts.push(x),
            }
        }
        parts.sort_unstable();
        let d = OrthogonalDecomposition { parts };
        self.audit_decomposition(&d, e)?;
        Ok(d)
    }

    pub fn decompose_one(&self) -> Result<OrthogonalDecomposition> {
        let set = self.enumerate_idempotents()?;
        self.refine(&set, self.one_idx())
    }

    /// Sum equals `target`, parts idempotent, nonzero and pairwise orthogonal.
    pub fn audit_decomposition(&self, d: &OrthogonalDecomposition, target: Idx) -> Result<()> {
        let sum = d.parts.iter().fold(0, |acc, &p| self.add_idx(acc, p));
        if sum != target {
            return Err(falsified(
                "decomposition-sum",
                format!(
                    "sum {} != {}",
                    self.format_idx(sum),
                    self.format_idx(target)
                ),
            ));
        }
        for (i, &a) in d.parts.iter().enumerate() {
            if a == 0 || !self.is_idempotent_idx(a) {
                return Err(falsified("decomposition-part", self.format_idx(a)));
            }
            for &b in &d.parts[i + 1..] {
                if self.mul_idx(a, b) != 0 || self.mul_idx(b, a) != 0 {
                    return Err(falsified(
                        "decomposition-orthogonal",
                        format!("{} and {}", self.format_idx(a), self.format_idx(b)),
                    ));
                }
            }
        }
        Ok(())
    }

    /// `⊕ e_i RG`: the sum is `target·RG` and distinct summands meet in `{0}`.
    pub fn direct_sum_holds(&self, d: &OrthogonalDecomposition, target: Idx) -> Result<bool> {
        let summands: Vec<SidedIdeal> = d
            .parts
            .iter()
            .map(|&e| self.principal(e, Side::Right))
            .collect::<Result<_>>()?;
        let mut total = self.zero_ideal(Side::Right)?;
        for s in &summands {
            if !self.intersect(&total, s)?.is_zero() {
                return Ok(false);
            }
            total = self.sum(&total, s)?;
        }
        Ok(total == self.principal(target, Side::Right)?)
    }

    /// Lift an idempotent of `(R/J)G` to RG: least coefficientwise preimage,
    /// then `h ← 3h² − 2h³` until idempotent, at most `f − 1` times.
    pub fn lift_idempotent(&self, residue: &GroupAlgebra, e_bar: &AlgElem) -> Result<Lift> {
        residue.check(e_bar)?;
        if residue.mul(e_bar, e_bar) != *e_bar {
            return Err(GlabError::Invalid(format!(
                "{} is not idempotent",
                residue.format(e_bar)
            )));
        }
        let (_, f) = self.ring().jacobson_radical()?;
        let cap = f.saturating_sub(1);
        let three = self.ring().from_int(3);
        let two = self.ring().from_int(2);
        let mut h = self.least_lift(residue, e_bar)?;
        let mut iterations = 0;
        while self.mul(&h, &h) != h {
            if iterations == cap {
                return Err(falsified(
                    "lift-iteration-cap",
                    format!("not idempotent after {cap} iterations: {}", self.format(&h)),
                ));
            }
            let h2 = self.mul(&h, &h);
            let h3 = self.mul(&h2, &h);
            h = self.sub(&self.scale(three, &h2), &self.scale(two, &h3));
            iterations += 1;
        }
        if self.reduce_coeffs(residue, &h)? != *e_bar {
            return Err(falsified(
                "lift-projects-back",
                format!(
                    "{} does not reduce to {}",
                    self.format(&h),
                    residue.format(e_bar)
                ),
            ));
        }
        Ok(Lift {
            element: h,
            iterations,
            cap,
        })
    }

    /// `(1 − ê)RG`, checked against the orthogonal complement of `eRG`.
    pub fn dual_of_idempotent_ideal(&self, e: Idx) -> Result<SidedIdeal> {
        self.require_idempotent(e)?;
        let gen = self.sub_idx(self.one_idx(), self.adjoint_idx(e));
        let out = self.close(&[gen], Side::Right)?;
        let dual = self.dual_unchecked(&self.close(&[e], Side::Right)?)?;
        if !out.same_set(&dual) {
            return Err(falsified(
                "dual-of-idempotent-ideal",
                format!("e = {}", self.format_idx(e)),
            ));
        }
        Ok(out)
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
    fn idempotent_examples() {
        let f2c2 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(2));
        assert_eq!(f2c2.enumerate_idempotents().unwrap().elements(), &[0, 1]);

        let f3c2 = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let mut want = [
            idx(&f3c2, &[0, 0]),
            idx(&f3c2, &[1, 0]),
            idx(&f3c2, &[2, 1]),
            idx(&f3c2, &[2, 2]),
        ];
        want.sort();
        assert_eq!(f3c2.enumerate_idempotents().unwrap().elements(), &want[..]);

        let z4c3 = algebra(RingSpec::zmod(4), GroupSpec::Cyclic(3));
        let set = z4c3.enumerate_idempotents().unwrap();
        assert!(set.contains(idx(&z4c3, &[2, 1, 1])));
        assert!(set.contains(idx(&z4c3, &[3, 3, 3])));
    }

    /// Oracle for F3C2: solve a² + b² = a, 2ab = b directly over F3.
    #[test]
    fn f3c2_idempotents_by_equations() {
        let a = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let mut want = Vec::new();
        for x in 0..3i64 {
            for y in 0..3i64 {
                if (x * x + y * y - x).rem_euclid(3) == 0 && (2 * x * y - y).rem_euclid(3) == 0 {
                    want.push(idx(&a, &[x, y]));
                }
            }
        }
        want.sort();
        assert_eq!(a.enumerate_idempotents().unwrap().elements(), &want[..]);
    }

    #[test]
    fn primitivity_examples() {
        let f2c2 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(2));
        let s = f2c2.enumerate_idempotents().unwrap();
        assert!(f2c2.is_primitive(&s, 1).unwrap());

        let f3c2 = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let s = f3c2.enumerate_idempotents().unwrap();
        assert!(!f3c2.is_primitive(&s, 1).unwrap());
        assert!(f3c2.is_primitive(&s, idx(&f3c2, &[2, 2])).unwrap());
        assert!(f3c2.is_primitive(&s, idx(&f3c2, &[1, 1])).is_err());
        assert!(f3c2.is_primitive(&s, 0).is_err());
    }

    #[test]
    fn decompositions() {
        let f2c2 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(2));
        assert_eq!(f2c2.decompose_one().unwrap().parts(), &[1]);

        let f3c2 = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let d = f3c2.decompose_one().unwrap();
        assert_eq!(d.parts(), &[idx(&f3c2, &[2, 1]), idx(&f3c2, &[2, 2])]);
        assert!(f3c2.direct_sum_holds(&d, 1).unwrap());
    }

    #[test]
    fn z4c3_decomposition_reduces_to_f2c3() {
        let z4c3 = algebra(RingSpec::zmod(4), GroupSpec::Cyclic(3));
        let f2c3 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(3));
        let res = z4c3.residue_algebra().unwrap();
        let d = z4c3.decompose_one().unwrap();
        assert_eq!(d.len(), 2);
        let mut reduced: Vec<Vec<u32>> = d
            .parts()
            .iter()
            .map(|&e| {
                let r = z4c3.reduce_coeffs(&res, &z4c3.decode(e)).unwrap();
                r.coeffs().iter().map(|c| c.0).collect()
            })
            .collect();
        reduced.sort();
        let mut want: Vec<Vec<u32>> = f2c3
            .decompose_one()
            .unwrap()
            .parts()
            .iter()
            .map(|&e| f2c3.decode(e).coeffs().iter().map(|c| c.0).collect())
            .collect();
        want.sort();
        assert_eq!(reduced, want);
    }

    #[test]
    fn lifting_examples() {
        let f2c3 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(3));
        let res = f2c3.residue_algebra().unwrap();
        let e = res.from_ints(&[0, 1, 1]).unwrap();
        let lift = f2c3.lift_idempotent(&res, &e).unwrap();
        assert_eq!(lift.iterations, 0);
        assert_eq!(f2c3.format(&lift.element), "[0,1,1]");

        let z4c3 = algebra(RingSpec::zmod(4), GroupSpec::Cyclic(3));
        let res = z4c3.residue_algebra().unwrap();
        let e = res.from_ints(&[0, 1, 1]).unwrap();
        let lift = z4c3.lift_idempotent(&res, &e).unwrap();
        assert_eq!((lift.iterations, lift.cap), (1, 1));
        assert_eq!(lift.element, z4c3.from_ints(&[2, 1, 1]).unwrap());
        assert_eq!(
            z4c3.lift_idempotent(&res, &res.zero()).unwrap().element,
            z4c3.zero()
        );
        let not_idem = res.from_ints(&[0, 1, 0]).unwrap();
        assert!(z4c3.lift_idempotent(&res, &not_idem).is_err());
    }

    #[test]
    fn every_residue_idempotent_lifts() {
        for (ring, group) in [
            (RingSpec::zmod(4), GroupSpec::Cyclic(3)),
            (RingSpec::zmod(4), GroupSpec::Cyclic(2)),
            (
                RingSpec::truncated_poly(2, 2).unwrap(),
                GroupSpec::Cyclic(3),
            ),
            (RingSpec::zmod(9), GroupSpec::Cyclic(2)),
        ] {
            let a = algebra(ring, group);
            let res = a.residue_algebra().unwrap();
            for e in res.enumerate_idempotents().unwrap().elements() {
                let lift = a.lift_idempotent(&res, &res.decode(*e)).unwrap();
                assert!(lift.iterations <= lift.cap);
                assert!(a.is_idempotent_idx(a.encode(&lift.element)));
            }
        }
    }

    #[test]
    fn dual_of_idempotent_ideal_examples() {
        let f3c2 = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        assert!(f3c2.dual_of_idempotent_ideal(1).unwrap().is_zero());
        assert_eq!(f3c2.dual_of_idempotent_ideal(0).unwrap().len(), 9);
        let d = f3c2.dual_of_idempotent_ideal(idx(&f3c2, &[2, 2])).unwrap();
        let mut want = vec![0, idx(&f3c2, &[2, 1]), idx(&f3c2, &[1, 2])];
        want.sort();
        assert_eq!(d.elements().collect::<Vec<_>>(), want);
        assert!(f3c2.dual_of_idempotent_ideal(idx(&f3c2, &[1, 1])).is_err());
    }

    /// Every idempotent splits RG as `eRG ⊕ (1−e)RG`, and `|êRG| = |eRG|`.
    #[test]
    fn idempotent_splittings() {
        for (ring, group) in [
            (RingSpec::zmod(2), GroupSpec::Symmetric(3)),
            (RingSpec::zmod(4), GroupSpec::Cyclic(3)),
            (RingSpec::matrix(2, RingSpec::zmod(2)), GroupSpec::Cyclic(2)),
        ] {
            let a = algebra(ring, group);
            for &e in a.enumerate_idempotents().unwrap().elements() {
                let c = a.principal(e, Side::Right).unwrap();
                let d = a.principal(a.sub_idx(a.one_idx(), e), Side::Right).unwrap();
                assert!(a.intersect(&c, &d).unwrap().is_zero());
                assert_eq!(c.len() * d.len(), a.len());
                let hat = a.principal(a.adjoint_idx(e), Side::Right).unwrap();
                assert_eq!(hat.len(), c.len());
            }
        }
    }

    /// Primitive ⟺ eRG has no nontrivial direct splitting into right ideals.
    #[test]
    fn primitive_iff_indecomposable() {
        for (ring, group) in [
            (RingSpec::zmod(3), GroupSpec::Cyclic(2)),
            (RingSpec::zmod(2), GroupSpec::Symmetric(3)),
            (RingSpec::zmod(4), GroupSpec::Cyclic(3)),
        ] {
            let a = algebra(ring, group);
            let set = a.enumerate_idempotents().unwrap();
            let ideals = a.enumerate_right_ideals().unwrap();
            for &e in set.elements().iter().filter(|&&e| e != 0) {
                let c = a.principal(e, Side::Right).unwrap();
                let inside: Vec<&SidedIdeal> = ideals
                    .iter()
                    .filter(|i| !i.is_zero() && i.is_subset(&c) && i.len() < c.len())
                    .collect();
                let decomposable = inside.iter().any(|x| {
                    inside
                        .iter()
                        .any(|y| a.intersect(x, y).unwrap().is_zero() && a.sum(x, y).unwrap() == c)
                });
                assert_eq!(a.is_primitive(&set, e).unwrap(), !decomposable);
            }
        }
    }
}
