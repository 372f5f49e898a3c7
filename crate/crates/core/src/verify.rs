//! The full battery of identity checks on one group algebra. Each check runs
//! exhaustively over the instance and reports pass/fail with the first
//! counterexample.

use std::fmt;
use std::time::Instant;

use crate::chk::AnnIntersection;
use crate::error::{GlabError, Result};
use crate::finring::{FrobeniusStatus, DEFAULT_FROBENIUS_BOUND};
use crate::galg::{GroupAlgebra, Idx};
use crate::ideals::{Side, SidedIdeal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Hypothesis of the checked statement not met on this instance.
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub id: &'static str,
    /// Name of the identity being instantiated.
    pub statement: &'static str,
    pub status: Status,
    pub witness: String,
    pub micros: u128,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Counts cases and keeps the first failure.
pub struct Tally {
    cases: usize,
    failures: usize,
    first: Option<String>,
}

impl Default for Tally {
    fn default() -> Self {
        Self::new()
    }
}

impl Tally {
    pub fn new() -> Self {
        Tally {
            cases: 0,
            failures: 0,
            first: None,
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(witness());
            }
        }
    }

    pub fn failures(&self) -> usize {
        self.failures
    }

    pub fn cases(&self) -> usize {
        self.cases
    }

    fn finish(self, id: &'static str, statement: &'static str, start: Instant) -> Check {
        let (status, witness) = match self.first {
            None => (Status::Pass, format!("{} cases", self.cases)),
            Some(w) => (
                Status::Fail,
                format!("{}/{} failed; first: {}", self.failures, self.cases, w),
            ),
        };
        Check {
            id,
            statement,
            status,
            witness,
            micros: start.elapsed().as_micros(),
        }
    }
}

fn skip(id: &'static str, statement: &'static str, why: &str) -> Check {
    Check {
        id,
        statement,
        status: Status::Skip,
        witness: why.to_string(),
        micros: 0,
    }
}

struct Ctx<'a> {
    alg: &'a GroupAlgebra,
    right: Vec<SidedIdeal>,
    left: Vec<SidedIdeal>,
    duals: Vec<SidedIdeal>,
}

impl Ctx<'_> {
    fn fmt(&self, i: &SidedIdeal) -> String {
        self.alg.format_ideal(i)
    }
}

/// Every check, in a fixed order. Needs the census bound.
pub fn verify_all(alg: &GroupAlgebra) -> Result<Vec<Check>> {
    let right = alg.enumerate_right_ideals()?;
    let left = alg.enumerate_ideals(Side::Left)?;
    let duals = right
        .iter()
        .map(|c| alg.dual_unchecked(c))
        .collect::<Result<Vec<_>>>()?;
    let cx = Ctx {
        alg,
        right,
        left,
        duals,
    };
    let mut out = vec![frobenius(alg)];
    out.extend(duality(&cx)?);
    out.extend(annihilators(&cx)?);
    out.extend(idempotents(&cx)?);
    out.extend(lcp(&cx)?);
    out.extend(residue(&cx)?);
    out.extend(checkability(&cx)?);
    Ok(out)
}

fn frobenius(alg: &GroupAlgebra) -> Check {
    let t = Instant::now();
    let (status, witness) = match alg.ring().is_frobenius(DEFAULT_FROBENIUS_BOUND) {
        FrobeniusStatus::Frobenius(chi) => (Status::Pass, format!("generating character {chi}")),
        FrobeniusStatus::NotFrobenius => (Status::Fail, "no generating character".to_string()),
        FrobeniusStatus::Undecided { size, bound } => (
            Status::Skip,
            format!("ring has {size} elements, search bound {bound}"),
        ),
    };
    Check {
        id: "base-ring-frobenius",
        statement: "R admits a generating character",
        status,
        witness,
        micros: t.elapsed().as_micros(),
    }
}

fn duality(cx: &Ctx) -> Result<Vec<Check>> {
    let a = cx.alg;
    let n = cx.right.len();
    let t = Instant::now();
    let mut sum_law = Tally::new();
    for i in 0..n {
        for j in 0..n {
            let s = a.sum(&cx.right[i], &cx.right[j])?;
            let lhs = a.dual_unchecked(&s)?;
            let mut rhs = cx.duals[i].members().clone();
            rhs.intersect_with(cx.duals[j].members());
            sum_law.record(*lhs.members() == rhs, || {
                format!(
                    "C1 = {}, C2 = {}",
                    cx.fmt(&cx.right[i]),
                    cx.fmt(&cx.right[j])
                )
            });
        }
    }
    let c1 = sum_law.finish("duality-sum", "dual of a sum is the meet of duals", t);

    let t = Instant::now();
    let mut meet_law = Tally::new();
    for i in 0..n {
        for j in 0..n {
            let m = a.intersect(&cx.right[i], &cx.right[j])?;
            let lhs = a.additive_sum(&cx.duals[i], &cx.duals[j]);
            let rhs = a.dual_unchecked(&m)?;
            meet_law.record(lhs == *rhs.members(), || {
                format!(
                    "C1 = {}, C2 = {}",
                    cx.fmt(&cx.right[i]),
                    cx.fmt(&cx.right[j])
                )
            });
        }
    }
    let c2 = meet_law.finish("duality-meet", "sum of duals is the dual of the meet", t);

    let t = Instant::now();
    let mut wood = Tally::new();
    for (c, d) in cx.right.iter().zip(&cx.duals) {
        wood.record(c.len() * d.len() == a.len(), || {
            format!("{}: |dual| = {}", cx.fmt(c), d.len())
        });
    }
    let c3 = wood.finish("dual-cardinality", "|C| |C^perp| = |RG|", t);
    Ok(vec![c1, c2, c3])
}

fn annihilators(cx: &Ctx) -> Result<Vec<Check>> {
    let a = cx.alg;
    let mut out = Vec::new();

    let t = Instant::now();
    let (mut ra, mut lb) = (Tally::new(), Tally::new());
    for u in 0..a.len() as Idx {
        let r1 = a.ann_right_elems(&[u])?;
        let r2 = a.ann_right(&a.close(&[u], Side::Left)?)?;
        ra.record(r1 == r2, || a.format_idx(u));
        let l1 = a.ann_left_elems(&[u])?;
        let l2 = a.ann_left(&a.close(&[u], Side::Right)?)?;
        lb.record(l1 == l2, || a.format_idx(u));
    }
    out.push(ra.finish("ann-right-element", "Ann_r(u) = Ann_r(RG u)", t));
    out.push(lb.finish("ann-left-element", "Ann_l(u) = Ann_l(u RG)", t));

    let t = Instant::now();
    let (mut dl, mut card_l) = (Tally::new(), Tally::new());
    for i in &cx.left {
        let ann = a.ann_right(i)?;
        dl.record(a.ann_left(&ann)? == *i, || cx.fmt(i));
        card_l.record(i.len() * ann.len() == a.len(), || cx.fmt(i));
    }
    let (mut dr, mut card_r) = (Tally::new(), Tally::new());
    for j in &cx.right {
        let ann = a.ann_left(j)?;
        dr.record(a.ann_right(&ann)? == *j, || cx.fmt(j));
        card_r.record(j.len() * ann.len() == a.len(), || cx.fmt(j));
    }
    out.push(dl.finish(
        "double-ann-left-ideal",
        "I = Ann_l(Ann_r(I)) for left ideals",
        t,
    ));
    out.push(dr.finish(
        "double-ann-right-ideal",
        "J = Ann_r(Ann_l(J)) for right ideals",
        t,
    ));
    out.push(card_l.finish("ann-cardinality-left", "|I| |Ann_r(I)| = |RG|", t));
    out.push(card_r.finish("ann-cardinality-right", "|J| |Ann_l(J)| = |RG|", t));

    let t = Instant::now();
    let mut hat = Tally::new();
    for c in &cx.right {
        hat.record(a.dual_is_adjoint_annihilator(c)?, || cx.fmt(c));
    }
    out.push(hat.finish(
        "dual-adjoint-annihilator",
        "C^perp is the adjoint image of Ann_l(C)",
        t,
    ));
    Ok(out)
}

fn idempotents(cx: &Ctx) -> Result<Vec<Check>> {
    let a = cx.alg;
    let set = a.enumerate_idempotents()?;
    let one = a.one_idx();
    let mut out = Vec::new();

    let t = Instant::now();
    let mut formula = Tally::new();
    for &e in set.elements() {
        let lhs = a.dual_unchecked(&a.principal(e, Side::Right)?)?;
        let rhs = a.close(&[a.sub_idx(one, a.adjoint_idx(e))], Side::Right)?;
        formula.record(lhs.same_set(&rhs), || format!("e = {}", a.format_idx(e)));
    }
    out.push(formula.finish("idempotent-dual-formula", "dual(eRG) = (1 - e^)RG", t));

    let t = Instant::now();
    let mut split = Tally::new();
    let mut hat_card = Tally::new();
    for &e in set.elements() {
        let c = a.principal(e, Side::Right)?;
        let d = a.principal(a.sub_idx(one, e), Side::Right)?;
        split.record(a.is_lcp(&c, &d)?, || format!("e = {}", a.format_idx(e)));
        let h = a.principal(a.adjoint_idx(e), Side::Right)?;
        hat_card.record(h.len() == c.len(), || format!("e = {}", a.format_idx(e)));
    }
    out.push(split.finish("idempotent-splitting", "RG = eRG + (1-e)RG, direct", t));
    out.push(hat_card.finish("adjoint-idempotent-size", "|e^RG| = |eRG|", t));

    let t = Instant::now();
    let mut decomp = Tally::new();
    let d = a.decompose_one()?;
    decomp.record(a.audit_decomposition(&d, one).is_ok(), || {
        "sum/orthogonality".into()
    });
    decomp.record(a.direct_sum_holds(&d, one)?, || {
        "direct sum of summands".into()
    });
    for &e in d.parts() {
        decomp.record(set.is_primitive(e) == Some(true), || a.format_idx(e));
    }
    out.push(decomp.finish(
        "decomposition-of-one",
        "1 = sum of orthogonal primitive idempotents",
        t,
    ));

    let t = Instant::now();
    let mut prim = Tally::new();
    for &e in set.elements().iter().filter(|&&e| e != 0) {
        let c = a.principal(e, Side::Right)?;
        let inside: Vec<&SidedIdeal> = cx
            .right
            .iter()
            .filter(|i| !i.is_zero() && i.is_subset(&c) && i.len() < c.len())
            .collect();
        let mut decomposable = false;
        'outer: for x in &inside {
            for y in &inside {
                if x.len() * y.len() == c.len() && a.intersect(x, y)?.is_zero() {
                    decomposable = true;
                    break 'outer;
                }
            }
        }
        prim.record(set.is_primitive(e) == Some(!decomposable), || {
            format!("e = {}", a.format_idx(e))
        });
    }
    out.push(prim.finish(
        "primitive-iff-indecomposable",
        "e primitive iff eRG indecomposable",
        t,
    ));
    Ok(out)
}

fn lcp(cx: &Ctx) -> Result<Vec<Check>> {
    let a = cx.alg;
    let set = a.enumerate_idempotents()?;
    let mut out = Vec::new();

    let t = Instant::now();
    let mut iff = Tally::new();
    let mut pairs = Vec::new();
    for c in &cx.right {
        for d in &cx.right {
            let lcp = a.is_lcp(c, d)?;
            let split = a.idempotent_split_exists(&set, c, d)?;
            let cert_ok = if lcp {
                match a.lcp_certificate(c, d) {
                    Ok(cert) => {
                        pairs.push((c, d, cert));
                        true
                    }
                    Err(GlabError::Falsified { .. }) => false,
                    Err(e) => return Err(e),
                }
            } else {
                true
            };
            iff.record(lcp == split && cert_ok, || {
                format!("C = {}, D = {}, lcp = {lcp}", cx.fmt(c), cx.fmt(d))
            });
        }
    }
    out.push(iff.finish(
        "lcp-iff-idempotent",
        "LCP iff C = eRG, D = (1-e)RG with e idempotent",
        t,
    ));

    let t = Instant::now();
    let (mut sum_form, mut dual_c, mut dual_d) = (Tally::new(), Tally::new(), Tally::new());
    for (_, _, cert) in &pairs {
        let s = a.sum_form(&set, cert)?;
        let w = || format!("e = {}", a.format_idx(cert.e));
        sum_form.record(
            s.sums_to_one && s.orthogonal && s.c_is_direct_sum && s.d_is_direct_sum,
            w,
        );
        dual_c.record(s.dual_c_ok, w);
        dual_d.record(s.dual_d_ok, w);
    }
    out.push(sum_form.finish(
        "lcp-primitive-sum",
        "C and D are direct sums of primitive summands of 1",
        t,
    ));
    out.push(dual_c.finish(
        "dual-of-sum",
        "C^perp = sum of e_i^ RG over the D-summands",
        t,
    ));
    out.push(dual_d.finish(
        "dual-of-complement-sum",
        "D^perp = sum of e_i^ RG over the C-summands",
        t,
    ));

    let t = Instant::now();
    let (mut central, mut card, mut formula) = (Tally::new(), Tally::new(), Tally::new());
    let mut central_cases = 0;
    for (c, d, cert) in &pairs {
        let v = a.hat_equivalence(c, d, cert)?;
        let w = || format!("e = {}", a.format_idx(cert.e));
        if let Some(ok) = v.hat_image_ok {
            central_cases += 1;
            central.record(ok, w);
        }
        card.record(v.cardinality_ok, w);
        formula.record(v.dual_formula_ok, w);
    }
    if central_cases == 0 {
        out.push(skip(
            "adjoint-equivalence",
            "C^ = D^perp for central e",
            "no central certificate",
        ));
    } else {
        out.push(central.finish("adjoint-equivalence", "C^ = D^perp for central e", t));
    }
    out.push(card.finish("equivalence-cardinality", "|C| = |D^perp|", t));
    out.push(formula.finish("complement-dual-formula", "D^perp = e^ RG", t));
    Ok(out)
}

fn residue(cx: &Ctx) -> Result<Vec<Check>> {
    let a = cx.alg;
    const IDS: [(&str, &str); 3] = [
        ("residue-lcp-forward", "LCP implies residue LCP"),
        ("residue-lcp-converse", "residue LCP implies LCP"),
        (
            "idempotent-lifting",
            "residue idempotents lift within f - 1 steps",
        ),
    ];
    if !a.ring().is_local()? {
        return Ok(IDS
            .iter()
            .map(|(id, s)| skip(id, s, "base ring not local"))
            .collect());
    }
    let res = a.residue_algebra()?;

    let t = Instant::now();
    let (mut fwd, mut conv) = (Tally::new(), Tally::new());
    for c in &cx.right {
        for d in &cx.right {
            let v = a.lcp_residue_correspondence(&res, c, d)?;
            let w = || format!("C = {}, D = {}", cx.fmt(c), cx.fmt(d));
            fwd.record(v.forward_ok(), w);
            conv.record(v.converse_ok(), w);
        }
    }
    let c1 = fwd.finish(IDS[0].0, IDS[0].1, t);
    let c2 = conv.finish(IDS[1].0, IDS[1].1, t);

    let t = Instant::now();
    let mut lift = Tally::new();
    for &e in res.enumerate_idempotents()?.elements() {
        let e_bar = res.decode(e);
        let ok = match a.lift_idempotent(&res, &e_bar) {
            Ok(l) => l.iterations <= l.cap,
            Err(GlabError::Falsified { .. }) => false,
            Err(err) => return Err(err),
        };
        lift.record(ok, || res.format(&e_bar));
    }
    let c3 = lift.finish(IDS[2].0, IDS[2].1, t);
    Ok(vec![c1, c2, c3])
}

fn checkability(cx: &Ctx) -> Result<Vec<Check>> {
    let a = cx.alg;
    let mut out = Vec::new();
    let t = Instant::now();
    let (mut ann, mut dual, mut link, mut quotient) =
        (Tally::new(), Tally::new(), Tally::new(), Tally::new());
    let mut ann_int = Tally::new();
    let mut ann_int_unmet = false;
    let decomposition = a.decompose_one()?;
    for c in &cx.right {
        let v = a.checkability(c)?;
        let w = || {
            format!(
                "{}: u = {:?}, dual generator = {:?}, Ann_l generator = {:?}",
                cx.fmt(c),
                v.check_element.map(|x| a.format_idx(x)),
                v.dual_generator.map(|x| a.format_idx(x)),
                v.ann_left_generator.map(|x| a.format_idx(x)),
            )
        };
        ann.record(v.annihilator_criterion_agrees(), w);
        dual.record(v.dual_criterion_agrees(), w);
        link.record(v.definition_link_ok != Some(false), || cx.fmt(c));
        quotient.record(a.dual_quotient_note(c)?.matches_code, || cx.fmt(c));
        if a.decomposition_subset(c, &decomposition)?.is_some() {
            match a.ann_intersection_check(c, &decomposition)? {
                AnnIntersection::HypothesisUnmet => ann_int_unmet = true,
                AnnIntersection::Checked {
                    intersection_ok,
                    chain_ok,
                } => ann_int.record(intersection_ok && chain_ok, || cx.fmt(c)),
            }
        }
    }
    out.push(ann.finish(
        "checkable-iff-ann-principal",
        "checkable iff Ann_l(C) principal left ideal",
        t,
    ));
    out.push(dual.finish(
        "checkable-iff-dual-principal",
        "checkable iff C^perp principal right ideal",
        t,
    ));
    out.push(link.finish(
        "check-element-annihilates",
        "C = Ann_r(RG u) for the check element u",
        t,
    ));
    out.push(quotient.finish("dual-quotient-size", "|RG / C^perp| = |C|", t));
    if ann_int_unmet {
        out.push(skip(
            "checkable-ann-intersection",
            "C = meet of Ann_r(RG e_k) over complementary summands",
            "hypothesis unmet: decomposition has non-central summands",
        ));
    } else {
        out.push(ann_int.finish(
            "checkable-ann-intersection",
            "C = meet of Ann_r(RG e_k) over complementary summands",
            t,
        ));
    }
    Ok(out)
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

    #[test]
    fn f3c2_all_pass() {
        let a = algebra(RingSpec::zmod(3), GroupSpec::Cyclic(2));
        let checks = verify_all(&a).unwrap();
        assert!(checks.iter().all(Check::passed), "{checks:#?}");
        assert!(checks
            .iter()
            .any(|c| c.id == "residue-lcp-forward" && c.status == Status::Pass));
    }

    #[test]
    fn z4c2_converse_fails_with_witness() {
        let a = algebra(RingSpec::zmod(4), GroupSpec::Cyclic(2));
        let checks = verify_all(&a).unwrap();
        let conv = checks
            .iter()
            .find(|c| c.id == "residue-lcp-converse")
            .unwrap();
        assert_eq!(conv.status, Status::Fail);
        let failing: Vec<_> = checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.id)
            .collect();
        assert_eq!(failing, vec!["residue-lcp-converse"]);
    }

    #[test]
    fn non_local_skips_residue_checks() {
        let a = algebra(RingSpec::zmod(6), GroupSpec::Cyclic(2));
        let checks = verify_all(&a).unwrap();
        let c = checks
            .iter()
            .find(|c| c.id == "idempotent-lifting")
            .unwrap();
        assert_eq!(c.status, Status::Skip);
    }

    #[test]
    fn census_bound_propagates() {
        let a = algebra(RingSpec::zmod(2), GroupSpec::Symmetric(4));
        assert!(matches!(verify_all(&a), Err(GlabError::Scale { .. })));
    }
}
