//! One-sided ideals of RG as materialized bitsets over the algebra's index
//! space: closure, lattice operations, duals, annihilators, principality and
//! the full right-ideal census.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{falsified, GlabError, Result};
use crate::galg::{AlgElem, GroupAlgebra, Idx};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Right,
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Right => write!(f, "right"),
            Side::Left => write!(f, "left"),
        }
    }
}

/// A one-sided ideal (or, for annihilators of arbitrary sets, the one-sided
/// ideal they form) with its full element set.
#[derive(Debug, Clone)]
pub struct SidedIdeal {
    side: Side,
    generators: Vec<Idx>,
    members: FixedBitSet,
    len: usize,
}

impl PartialEq for SidedIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.members == other.members
    }
}

impl Eq for SidedIdeal {}

impl SidedIdeal {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn generators(&self) -> &[Idx] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Ideals always contain 0.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.len == 1
    }

    pub fn contains(&self, x: Idx) -> bool {
        self.members.contains(x as usize)
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    /// Elements in canonical (index) order.
    pub fn elements(&self) -> impl Iterator<Item = Idx> + '_ {
        self.members.ones().map(|i| i as Idx)
    }

    fn on_side(mut self, side: Side) -> SidedIdeal {
        self.side = side;
        self
    }

    pub fn is_subset(&self, other: &SidedIdeal) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Same element set, regardless of declared side.
    pub fn same_set(&self, other: &SidedIdeal) -> bool {
        self.members == other.members
    }
}

/// Additive subgroup under construction.
struct Span {
    mask: FixedBitSet,
    list: Vec<Idx>,
}

impl Span {
    fn zero(size: usize) -> Span {
        let mut mask = FixedBitSet::with_capacity(size);
        mask.insert(0);
        Span {
            mask,
            list: vec![0],
        }
    }

    fn from_ideal(i: &SidedIdeal) -> Span {
        Span {
            mask: i.members.clone(),
            list: i.elements().collect(),
        }
    }

    /// Extend by the cyclic group generated by `g`: the cosets `S + k·g` are
    /// new until `k·g` lands in `S`. Returns whether the span grew.
    fn extend(&mut self, alg: &GroupAlgebra, g: Idx) -> bool {
        if self.mask.contains(g as usize) {
            return false;
        }
        let old = self.list.clone();
        let old_mask = self.mask.clone();
        let mut mult = g;
        while !old_mask.contains(mult as usize) {
            for &s in &old {
                let v = alg.add_idx(s, mult);
                self.mask.insert(v as usize);
                self.list.push(v);
            }
            mult = alg.add_idx(mult, g);
        }
        true
    }
}

impl GroupAlgebra {
    fn make_ideal(&self, side: Side, generators: Vec<Idx>, members: FixedBitSet) -> SidedIdeal {
        let len = members.count_ones(..);
        SidedIdeal {
            side,
            generators,
            members,
            len,
        }
    }

    fn op_guard(&self) -> Result<()> {
        self.require("group algebra", self.bounds().op)
    }

    /// `{0}` as an ideal on the given side.
    pub fn zero_ideal(&self, side: Side) -> Result<SidedIdeal> {
        self.op_guard()?;
        Ok(self.make_ideal(side, vec![0], Span::zero(self.len()).mask))
    }

    /// RG itself.
    pub fn whole(&self, side: Side) -> Result<SidedIdeal> {
        self.op_guard()?;
        let mut mask = FixedBitSet::with_capacity(self.len());
        mask.insert_range(..);
        Ok(self.make_ideal(side, vec![self.one_idx()], mask))
    }

    /// `uRG` (right) or `RGu` (left).
    pub fn principal(&self, u: Idx, side: Side) -> Result<SidedIdeal> {
        self.op_guard()?;
        let mut mask = FixedBitSet::with_capacity(self.len());
        for x in 0..self.len() as Idx {
            let p = match side {
                Side::Right => self.mul_idx(u, x),
                Side::Left => self.mul_idx(x, u),
            };
            mask.insert(p as usize);
        }
        Ok(self.make_ideal(side, vec![u], mask))
    }

    pub fn principal_of(&self, u: &AlgElem, side: Side) -> Result<SidedIdeal> {
        self.check(u)?;
        self.op_guard()?;
        self.principal(self.encode(u), side)
    }

    /// Smallest ideal on `side` containing `gens`: the sum of the principal
    /// ideals they generate.
    pub fn close(&self, gens: &[Idx], side: Side) -> Result<SidedIdeal> {
        self.op_guard()?;
        let mut span = Span::zero(self.len());
        for &g in gens {
            if span.mask.contains(g as usize) {
                continue;
            }
            let p = self.principal(g, side)?;
            for x in p.elements() {
                span.extend(self, x);
            }
        }
        let gens = if gens.is_empty() {
            vec![0]
        } else {
            gens.to_vec()
        };
        Ok(self.make_ideal(side, gens, span.mask))
    }

    pub fn close_elems(&self, gens: &[AlgElem], side: Side) -> Result<SidedIdeal> {
        self.op_guard()?;
        for g in gens {
            self.check(g)?;
        }
        let idx: Vec<Idx> = gens.iter().map(|g| self.encode(g)).collect();
        self.close(&idx, side)
    }

    pub fn sum(&self, i: &SidedIdeal, j: &SidedIdeal) -> Result<SidedIdeal> {
        same_side(i, j)?;
        let mut span = Span::from_ideal(i);
        for x in j.elements() {
            span.extend(self, x);
        }
        let mut gens = i.generators.clone();
        gens.extend(
            j.generators
                .iter()
                .copied()
                .filter(|g| !i.generators.contains(g)),
        );
        Ok(self.make_ideal(i.side, gens, span.mask))
    }

    pub fn intersect(&self, i: &SidedIdeal, j: &SidedIdeal) -> Result<SidedIdeal> {
        same_side(i, j)?;
        let mut mask = i.members.clone();
        mask.intersect_with(&j.members);
        let list: Vec<Idx> = mask.ones().map(|x| x as Idx).collect();
        let gens = self.additive_generators(&list);
        let out = self.make_ideal(i.side, gens, mask);
        self.audit_ideal(&out)
            .map_err(|e| falsified("intersection-is-ideal", e.to_string()))?;
        Ok(out)
    }

    /// Greedy additive generating set of the subgroup whose elements are `elems`
    /// (in the order given).
    pub fn additive_generators(&self, elems: &[Idx]) -> Vec<Idx> {
        let mut span = Span::zero(self.len());
        let mut gens = Vec::new();
        for &x in elems {
            if span.extend(self, x) {
                gens.push(x);
            }
        }
        if gens.is_empty() {
            gens.push(0);
        }
        gens
    }

    /// `C^⊥ = {a : ⟨a, c⟩ = 0 for all c ∈ C}`, by filtering RG against an
    /// additive generating set of `C` (the form is biadditive). Asserts
    /// `|C|·|C^⊥| = |RG|`, which holds whenever R is Frobenius.
    pub fn dual(&self, c: &SidedIdeal) -> Result<SidedIdeal> {
        let out = self.dual_unchecked(c)?;
        if (c.len as u128) * (out.len as u128) != self.cardinality() {
            return Err(falsified(
                "dual-cardinality",
                format!(
                    "|C| = {}, |C^perp| = {}, |RG| = {}",
                    c.len,
                    out.len,
                    self.cardinality()
                ),
            ));
        }
        // Over a non-commutative R the dual of a right ideal need not be a
        // right ideal; report whichever side it is closed on.
        for side in [c.side, opposite(c.side)] {
            let candidate = out.clone().on_side(side);
            if self.audit_ideal(&candidate).is_ok() {
                return Ok(candidate);
            }
        }
        Err(falsified(
            "dual-is-ideal",
            format!("dual of {} is not a one-sided ideal", self.format_ideal(c)),
        ))
    }

    /// Whether `C^⊥` is the adjoint image of the annihilator of `C` on the
    /// opposite side.
    pub fn dual_is_adjoint_annihilator(&self, c: &SidedIdeal) -> Result<bool> {
        let dual = self.dual_unchecked(c)?;
        let ann = match c.side {
            Side::Right => self.ann_left(c)?,
            Side::Left => self.ann_right(c)?,
        };
        Ok(self.adjoint_image(&ann) == dual.members)
    }

    /// Plain orthogonal complement, no audits.
    pub fn dual_unchecked(&self, c: &SidedIdeal) -> Result<SidedIdeal> {
        self.op_guard()?;
        let gens = self.additive_generators(&c.elements().collect::<Vec<_>>());
        let mut mask = FixedBitSet::with_capacity(self.len());
        for a in 0..self.len() as Idx {
            if gens.iter().all(|&g| self.orthogonal_idx(a, g)) {
                mask.insert(a as usize);
            }
        }
        let list: Vec<Idx> = mask.ones().map(|x| x as Idx).collect();
        let dgens = self.additive_generators(&list);
        Ok(self.make_ideal(c.side, dgens, mask))
    }

    /// `{â : a ∈ S}` as a bitset.
    pub fn adjoint_image(&self, s: &SidedIdeal) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.len());
        for a in s.elements() {
            mask.insert(self.adjoint_idx(a) as usize);
        }
        mask
    }

    /// `Ann_l(S) = {r : r·a = 0 ∀ a ∈ S}`, a left ideal.
    pub fn ann_left(&self, s: &SidedIdeal) -> Result<SidedIdeal> {
        let elems: Vec<Idx> = s.elements().collect();
        self.ann_left_elems(&elems)
    }

    /// `Ann_r(S) = {r : a·r = 0 ∀ a ∈ S}`, a right ideal.
    pub fn ann_right(&self, s: &SidedIdeal) -> Result<SidedIdeal> {
        let elems: Vec<Idx> = s.elements().collect();
        self.ann_right_elems(&elems)
    }

    pub fn ann_left_elems(&self, set: &[Idx]) -> Result<SidedIdeal> {
        self.annihilator(set, Side::Left)
    }

    pub fn ann_right_elems(&self, set: &[Idx]) -> Result<SidedIdeal> {
        self.annihilator(set, Side::Right)
    }

    fn annihilator(&self, set: &[Idx], side: Side) -> Result<SidedIdeal> {
        self.op_guard()?;
        let gens = self.additive_generators(set);
        let mut mask = FixedBitSet::with_capacity(self.len());
        for r in 0..self.len() as Idx {
            let kills = gens.iter().all(|&a| {
                let p = match side {
                    Side::Left => self.mul_idx(r, a),
                    Side::Right => self.mul_idx(a, r),
                };
                p == 0
            });
            if kills {
                mask.insert(r as usize);
            }
        }
        let list: Vec<Idx> = mask.ones().map(|x| x as Idx).collect();
        let agens = self.additive_generators(&list);
        Ok(self.make_ideal(side, agens, mask))
    }

    /// First `u ∈ C` in canonical order with `close({u}) = C`.
    pub fn is_principal(&self, c: &SidedIdeal) -> Result<Option<Idx>> {
        self.op_guard()?;
        for u in c.elements() {
            let p = self.principal(u, c.side)?;
            if p.len == c.len && p.members == c.members {
                return Ok(Some(u));
            }
        }
        Ok(None)
    }

    /// Exhaustive sided-ideal audit: additive subgroup containing 0 and closed
    /// under multiplication by RG on the declared side.
    pub fn audit_ideal(&self, i: &SidedIdeal) -> Result<()> {
        self.op_guard()?;
        if !i.contains(0) {
            return Err(GlabError::Invalid("ideal does not contain 0".into()));
        }
        let gens = self.additive_generators(&i.elements().collect::<Vec<_>>());
        for &g in &gens {
            for x in i.elements() {
                if !i.contains(self.add_idx(g, x)) {
                    return Err(GlabError::Invalid(format!(
                        "not closed under +: {} + {}",
                        self.format_idx(g),
                        self.format_idx(x)
                    )));
                }
            }
            for x in 0..self.len() as Idx {
                let p = match i.side {
                    Side::Right => self.mul_idx(g, x),
                    Side::Left => self.mul_idx(x, g),
                };
                if !i.contains(p) {
                    return Err(GlabError::Invalid(format!(
                        "not closed under {} multiplication: {} by {}",
                        i.side,
                        self.format_idx(g),
                        self.format_idx(x)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Every right ideal of RG: the principal right ideals closed under
    /// pairwise sums. Every ideal is a finite sum of principal ones, so the
    /// fixpoint is the whole lattice. Sorted by cardinality, then by element
    /// list.
    pub fn enumerate_right_ideals(&self) -> Result<Vec<SidedIdeal>> {
        self.enumerate_ideals(Side::Right)
    }

    pub fn enumerate_ideals(&self, side: Side) -> Result<Vec<SidedIdeal>> {
        self.require("group algebra (census)", self.bounds().census)?;
        self.op_guard()?;
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut all: Vec<SidedIdeal> = Vec::new();
        for u in 0..self.len() as Idx {
            let p = self.principal(u, side)?;
            if seen.insert(p.members.clone()) {
                all.push(p);
            }
        }
        let mut frontier = 0;
        while frontier < all.len() {
            let current = all[frontier].clone();
            frontier += 1;
            let mut k = 0;
            while k < all.len() {
                let other = &all[k];
                k += 1;
                if other.is_subset(&current) || current.is_subset(other) {
                    continue;
                }
                let s = self.sum(&current, other)?;
                if seen.insert(s.members.clone()) {
                    all.push(s);
                }
            }
        }
        all.sort_by_cached_key(|i| (i.len, i.elements().collect::<Vec<_>>()));
        Ok(all)
    }

    /// Additive subgroup generated by two sets, ignoring sides.
    pub fn additive_sum(&self, i: &SidedIdeal, j: &SidedIdeal) -> FixedBitSet {
        let mut span = Span::from_ideal(i);
        for x in j.elements() {
            span.extend(self, x);
        }
        span.mask
    }

    pub fn format_ideal(&self, i: &SidedIdeal) -> String {
        let gens: Vec<String> = i.generators.iter().map(|&g| self.format_idx(g)).collect();
        format!("span_{}({}) |{}|", i.side, gens.join(", "), i.len)
    }
}

pub fn opposite(side: Side) -> Side {
    match side {
        Side::Right => Side::Left,
        Side::Left => Side::Right,
    }
}

fn same_side(i: &SidedIdeal, j: &SidedIdeal) -> Result<()> {
    if i.side != j.side {
        return Err(GlabError::Mismatch(format!(
            "mixed sides: {} and {}",
            i.side, j.side
        )));
    }
    Ok(())
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

    fn set(a: &GroupAlgebra, elems: &[&[i64]]) -> Vec<Idx> {
        let mut v: Vec<Idx> = elems.iter().map(|c| idx(a, c)).collect();
        v.sort();
        v
    }

    /// Brute-force oracle: every subset of RG that is a right ideal. Only for
    /// |RG| <= 16.
    fn right_ideals_by_subsets(a: &GroupAlgebra) -> Vec<Vec<Idx>> {
        let n = a.len();
        assert!(n <= 16);
        let mut out = Vec::new();
        for mask in 1u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let has = |x: Idx| mask >> x & 1 == 1;
            let members: Vec<Idx> = (0..n as Idx).filter(|&x| has(x)).collect();
            let ok = members.iter().all(|&x| {
                members.iter().all(|&y| has(a.add_idx(x, y)))
                    && (0..n as Idx).all(|r| has(a.mul_idx(x, r)))
            });
            if ok {
                out.push(members);
            }
        }
        out.sort_by_key(|m| (m.len(), m.clone()));
        out
    }

    #[test]
    fn close_examples() {
        let f2c2 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(2));
        let z = f2c2.close(&[0], Side::Right).unwrap();
        assert_eq!(z.len(), 1);
        let c = f2c2.close(&[idx(&f2c2, &[1, 1])], Side::Right).unwrap();
        assert_eq!(
            c.elements().collect::<Vec<_>>(),
            set(&f2c2, &[&[0, 0], &[1, 1]])
        );

        let f3c2 = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let e = f3c2.close(&[idx(&f3c2, &[2, 2])], Side::Right).unwrap();
        assert_eq!(
            e.elements().collect::<Vec<_>>(),
            set(&f3c2, &[&[0, 0], &[1, 1], &[2, 2]])
        );
    }

    #[test]
    fn lattice_examples() {
        let f3c2 = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let e = f3c2.close(&[idx(&f3c2, &[2, 2])], Side::Right).unwrap();
        let f = f3c2.close(&[idx(&f3c2, &[2, 1])], Side::Right).unwrap();
        assert!(f3c2.intersect(&e, &f).unwrap().is_zero());
        let zero = f3c2.zero_ideal(Side::Right).unwrap();
        assert_eq!(f3c2.sum(&e, &zero).unwrap(), e);
        assert_eq!(f3c2.sum(&e, &f).unwrap().len(), 9);
        let left = f3c2.zero_ideal(Side::Left).unwrap();
        assert!(matches!(f3c2.sum(&e, &left), Err(GlabError::Mismatch(_))));

        let f2c2 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(2));
        let c = f2c2.close(&[idx(&f2c2, &[1, 1])], Side::Right).unwrap();
        assert_eq!(f2c2.sum(&c, &c).unwrap(), c);
    }

    #[test]
    fn dual_examples() {
        let f3c2 = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let zero = f3c2.zero_ideal(Side::Right).unwrap();
        let whole = f3c2.whole(Side::Right).unwrap();
        assert_eq!(f3c2.dual(&zero).unwrap(), whole);
        assert_eq!(f3c2.dual(&whole).unwrap(), zero);
        let e = f3c2.close(&[idx(&f3c2, &[2, 2])], Side::Right).unwrap();
        let d = f3c2.dual(&e).unwrap();
        assert_eq!(
            d.elements().collect::<Vec<_>>(),
            set(&f3c2, &[&[0, 0], &[2, 1], &[1, 2]])
        );
    }

    /// The dual via additive generators agrees with the literal all-pairs filter.
    #[test]
    fn dual_matches_all_pairs_filter() {
        let a = algebra(RingSpec::zmod(4), GroupSpec::Cyclic(2));
        for c in a.enumerate_right_ideals().unwrap() {
            let brute: Vec<Idx> = (0..a.len() as Idx)
                .filter(|&x| c.elements().all(|y| a.orthogonal_idx(x, y)))
                .collect();
            assert_eq!(a.dual(&c).unwrap().elements().collect::<Vec<_>>(), brute);
        }
    }

    #[test]
    fn annihilator_examples() {
        let f2c2 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(2));
        let whole = f2c2.whole(Side::Right).unwrap();
        assert!(f2c2.ann_right(&whole).unwrap().is_zero());
        let left = f2c2.close(&[idx(&f2c2, &[1, 1])], Side::Left).unwrap();
        let ann = f2c2.ann_right(&left).unwrap();
        assert_eq!(
            ann.elements().collect::<Vec<_>>(),
            set(&f2c2, &[&[0, 0], &[1, 1]])
        );
        assert_eq!(ann.side(), Side::Right);
        let zero = f2c2.zero_ideal(Side::Right).unwrap();
        assert_eq!(f2c2.ann_left(&zero).unwrap().len(), 4);
    }

    #[test]
    fn principal_examples() {
        let f3c2 = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let zero = f3c2.zero_ideal(Side::Right).unwrap();
        assert_eq!(f3c2.is_principal(&zero).unwrap(), Some(0));
        let whole = f3c2.whole(Side::Right).unwrap();
        assert_eq!(f3c2.is_principal(&whole).unwrap(), Some(f3c2.one_idx()));
        let e = f3c2.close(&[idx(&f3c2, &[2, 2])], Side::Right).unwrap();
        assert_eq!(f3c2.is_principal(&e).unwrap(), Some(idx(&f3c2, &[1, 1])));
    }

    #[test]
    fn census_counts() {
        let cases = [
            (RingSpec::zmod(2), GroupSpec::Cyclic(2), 3),
            (RingSpec::zmod(3), GroupSpec::Cyclic(2), 4),
            (RingSpec::zmod(2), GroupSpec::Cyclic(3), 4),
        ];
        for (r, g, n) in cases {
            let a = algebra(r, g);
            assert_eq!(a.enumerate_right_ideals().unwrap().len(), n);
        }
        let f2c3 = algebra(RingSpec::zmod(2), GroupSpec::Cyclic(3));
        let ideals = f2c3.enumerate_right_ideals().unwrap();
        let trace = f2c3.close(&[idx(&f2c3, &[1, 1, 1])], Side::Right).unwrap();
        let aug = f2c3.close(&[idx(&f2c3, &[1, 1, 0])], Side::Right).unwrap();
        assert!(ideals.contains(&trace) && ideals.contains(&aug));
        assert_eq!((trace.len(), aug.len()), (2, 4));
    }

    #[test]
    fn census_matches_subset_oracle() {
        for (r, g) in [
            (RingSpec::zmod(2), GroupSpec::Cyclic(2)),
            (RingSpec::zmod(3), GroupSpec::Cyclic(2)),
            (RingSpec::zmod(2), GroupSpec::Cyclic(3)),
            (RingSpec::zmod(4), GroupSpec::Cyclic(2)),
            (
                RingSpec::truncated_poly(2, 2).unwrap(),
                GroupSpec::Cyclic(2),
            ),
            (RingSpec::zmod(2), GroupSpec::Cyclic(4)),
        ] {
            let a = algebra(r, g);
            let got: Vec<Vec<Idx>> = a
                .enumerate_right_ideals()
                .unwrap()
                .iter()
                .map(|i| i.elements().collect())
                .collect();
            assert_eq!(got, right_ideals_by_subsets(&a));
        }
    }

    #[test]
    fn census_bound_is_a_hard_error() {
        let a = algebra(RingSpec::zmod(2), GroupSpec::Symmetric(4));
        assert!(matches!(
            a.enumerate_right_ideals(),
            Err(GlabError::Scale { .. })
        ));
        assert!(matches!(
            a.zero_ideal(Side::Right),
            Err(GlabError::Scale { .. })
        ));
    }

    #[test]
    fn enumerated_ideals_pass_audit_and_are_distinct() {
        let a = algebra(RingSpec::zmod(2), GroupSpec::Symmetric(3));
        let ideals = a.enumerate_right_ideals().unwrap();
        for (k, i) in ideals.iter().enumerate() {
            a.audit_ideal(i).unwrap();
            assert_eq!(a.len() % i.len(), 0);
            assert!(ideals[k + 1..].iter().all(|j| !j.same_set(i)));
        }
    }

    /// Over M2(F2)C2 the dual of a right ideal is a left ideal, and is still
    /// the adjoint image of the left annihilator.
    #[test]
    fn noncommutative_dual_side() {
        let a = algebra(RingSpec::matrix(2, RingSpec::zmod(2)), GroupSpec::Cyclic(2));
        // E11 as a scalar
        let c = a
            .close(
                &[a.encode(&a.scalar(crate::finring::RingElem(1)))],
                Side::Right,
            )
            .unwrap();
        let d = a.dual(&c).unwrap();
        assert_eq!(d.side(), Side::Left);
        assert_eq!(c.len() * d.len(), a.len());
        assert!(a.dual_is_adjoint_annihilator(&c).unwrap());
    }

    #[test]
    fn audit_rejects_non_ideal() {
        let a = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        // the additive span of g is not closed under multiplication
        let mut mask = FixedBitSet::with_capacity(9);
        for c in [[0, 0], [0, 1], [0, 2]] {
            mask.insert(idx(&a, &c) as usize);
        }
        let fake = a.make_ideal(Side::Right, vec![], mask);
        assert!(a.audit_ideal(&fake).is_err());
    }
}
