//! One function per subcommand, each producing a [`Report`].

use std::sync::Arc;

use glab_core::chk::AnnIntersection;
use glab_core::finring::{FrobeniusStatus, DEFAULT_FROBENIUS_BOUND};
use glab_core::galg::Idx;
use glab_core::lcp::LcpCertificate;
use glab_core::verify;
use glab_core::{Bounds, FiniteGroup, GroupAlgebra, Ring, Side, SidedIdeal};

use crate::instance::{Env, EvalError, Instance};
use crate::report::{Report, Status};

pub type CmdResult = Result<Report, EvalError>;

/// Largest ring or ideal printed element by element.
const LIST_LIMIT: usize = 64;

pub fn algebra(inst: &Instance, bounds: Bounds) -> Result<GroupAlgebra, EvalError> {
    let group = inst
        .group
        .as_ref()
        .ok_or_else(|| EvalError::Usage("instance has no 'group'".into()))?;
    let ring = Ring::build(&inst.ring)?;
    let group = FiniteGroup::build(group)?;
    Ok(GroupAlgebra::with_bounds(
        Arc::new(ring),
        Arc::new(group),
        bounds,
    ))
}

fn list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    if items.len() > LIST_LIMIT {
        return format!("{} elements", items.len());
    }
    format!("{{{}}}", items.iter().map(f).collect::<Vec<_>>().join(", "))
}

fn yes(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn ring_info(inst: &Instance) -> CmdResult {
    let ring = Ring::build(&inst.ring)?;
    let mut r = Report::new("ring-info", &inst.source);
    r.info("ring", "ring description", inst.ring.to_string());
    r.info("size", "|R|", ring.size().to_string());
    r.info(
        "characteristic",
        "characteristic",
        ring.characteristic().to_string(),
    );
    r.info("commutative", "R commutative", yes(ring.is_commutative()));
    let units = ring.units();
    r.info(
        "units",
        "unit group",
        format!("{}: {}", units.len(), list(&units, |&u| ring.format(u))),
    );
    let (j, f) = ring.jacobson_radical()?;
    r.info(
        "jacobson-radical",
        "J(R), quasi-regular elements",
        format!("{}: {}", j.len(), list(&j, |&x| ring.format(x))),
    );
    r.info("nilpotency-index", "least f with J^f = 0", f.to_string());
    let local = ring.is_local()?;
    r.info("local", "non-units form an ideal", yes(local));
    if local {
        r.info(
            "residue-field",
            "|R/J|",
            (ring.size() / j.len()).to_string(),
        );
    }
    let frob = match ring.is_frobenius(DEFAULT_FROBENIUS_BOUND) {
        FrobeniusStatus::Frobenius(chi) => format!("true; generating character {chi}"),
        FrobeniusStatus::NotFrobenius => "false; no generating character".to_string(),
        FrobeniusStatus::Undecided { size, bound } => {
            format!("undecided; {size} elements exceeds search bound {bound}")
        }
    };
    r.info("frobenius", "R admits a generating character", frob);
    Ok(r)
}

pub fn idempotents(inst: &Instance, bounds: Bounds) -> CmdResult {
    let a = algebra(inst, bounds)?;
    let set = a.enumerate_idempotents()?;
    let mut r = Report::new("idempotents", &inst.source);
    r.info(
        "idempotent-count",
        "idempotents of RG",
        set.len().to_string(),
    );
    for (e, central, primitive) in set.rows() {
        r.info(
            "idempotent",
            "e^2 = e",
            format!(
                "{}; central = {}; primitive = {}",
                a.format_idx(e),
                yes(central),
                yes(primitive)
            ),
        );
    }
    let d = a.decompose_one()?;
    let ok =
        a.audit_decomposition(&d, a.one_idx()).is_ok() && a.direct_sum_holds(&d, a.one_idx())?;
    r.check(
        "decomposition-of-one",
        "1 = sum of orthogonal primitive idempotents",
        ok,
        format!("s = {}: {}", d.len(), list(d.parts(), |&e| a.format_idx(e))),
    );
    let (_, f) = a.ring().jacobson_radical()?;
    if a.ring().is_local()? && f > 1 {
        let res = a.residue_algebra()?;
        let rset = res.enumerate_idempotents()?;
        let mut reduced: Vec<Idx> = d
            .parts()
            .iter()
            .map(|&e| a.reduce_coeffs(&res, &a.decode(e)).map(|x| res.encode(&x)))
            .collect::<Result<_, _>>()?;
        reduced.sort_unstable();
        let rd_ok = res
            .refine(&rset, res.one_idx())
            .map(|rd| rd.len() == reduced.len())
            .unwrap_or(false)
            && reduced.iter().all(|&e| rset.is_primitive(e) == Some(true))
            && reduced.iter().fold(0, |acc, &e| res.add_idx(acc, e)) == res.one_idx()
            && reduced.iter().enumerate().all(|(i, &x)| {
                reduced[i + 1..]
                    .iter()
                    .all(|&y| res.mul_idx(x, y) == 0 && res.mul_idx(y, x) == 0)
            });
        r.check(
            "decomposition-reduces",
            "reduction mod J maps the decomposition to one of (R/J)G",
            rd_ok,
            list(&reduced, |&e| res.format_idx(e)),
        );
    }
    Ok(r)
}

fn pair_name(a: &GroupAlgebra, c: &SidedIdeal, d: &SidedIdeal) -> String {
    format!("C = {}, D = {}", a.format_ideal(c), a.format_ideal(d))
}

pub fn lcp_scan(inst: &Instance, bounds: Bounds) -> CmdResult {
    let a = algebra(inst, bounds)?;
    let pairs = a.lcp_scan()?;
    let mut r = Report::new("lcp scan", &inst.source);
    for p in &pairs {
        r.check(
            "lcp-pair",
            "LCP with idempotent certificate",
            true,
            format!(
                "{}; e = {}",
                pair_name(&a, &p.c, &p.d),
                a.format_idx(p.certificate.e)
            ),
        );
    }
    r.info(
        "lcp-pair-count",
        "LCP pairs (lattice cross-checked)",
        pairs.len().to_string(),
    );
    Ok(r)
}

fn named_pair(
    env: &mut Env,
    pair: &Option<Vec<String>>,
) -> Result<Option<(SidedIdeal, SidedIdeal)>, EvalError> {
    match pair.as_deref() {
        None => Ok(None),
        Some([c, d]) => Ok(Some((env.ideal(c)?, env.ideal(d)?))),
        Some(_) => Err(EvalError::Usage("--pair takes two ideal names".into())),
    }
}

fn verify_pair(
    a: &GroupAlgebra,
    r: &mut Report,
    c: &SidedIdeal,
    d: &SidedIdeal,
) -> Result<(), EvalError> {
    let name = pair_name(a, c, d);
    let lcp = a.is_lcp(c, d)?;
    let meet = a.intersect(c, d)?;
    r.check(
        "is-lcp",
        "C + D = RG, direct",
        lcp,
        format!(
            "{name}; |C n D| = {}, |C||D| = {}, |RG| = {}",
            meet.len(),
            c.len() * d.len(),
            a.len()
        ),
    );
    if !lcp {
        return Ok(());
    }
    let cert: LcpCertificate = a.lcp_certificate(c, d)?;
    let e = cert.e;
    r.check(
        "certificate",
        "C = eRG, D = (1-e)RG with e idempotent",
        cert.checks.iter().all(|(_, ok)| *ok),
        format!(
            "e = {}; {}",
            a.format_idx(e),
            cert.checks
                .iter()
                .map(|(n, ok)| format!("{n}={}", yes(*ok)))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    );
    let set = a.enumerate_idempotents()?;
    let s = a.sum_form(&set, &cert)?;
    let parts = list(&s.parts, |&x| a.format_idx(x));
    r.check(
        "lcp-primitive-sum",
        "C and D are direct sums of primitive summands of 1",
        s.sums_to_one && s.orthogonal && s.c_is_direct_sum && s.d_is_direct_sum,
        format!("u = {}, v = {}: {parts}", s.u, s.v),
    );
    r.check(
        "dual-of-sum",
        "C^perp = sum of e_i^ RG over the D-summands",
        s.dual_c_ok,
        format!("e = {}", a.format_idx(e)),
    );
    r.check(
        "dual-of-complement-sum",
        "D^perp = sum of e_i^ RG over the C-summands",
        s.dual_d_ok,
        format!("e = {}", a.format_idx(e)),
    );
    let h = a.hat_equivalence(c, d, &cert)?;
    r.info("central", "e in the center of RG", yes(h.central));
    r.check(
        "complement-dual-formula",
        "D^perp = e^ RG",
        h.dual_formula_ok,
        format!("e^ = {}", a.format_idx(a.adjoint_idx(e))),
    );
    match h.hat_image_ok {
        Some(ok) => r.check(
            "adjoint-equivalence",
            "C^ = D^perp for central e",
            ok,
            "inversion permutation g -> g^-1",
        ),
        None => r.push(
            "adjoint-equivalence",
            "C^ = D^perp for central e",
            Status::Skip,
            "e is not central",
        ),
    }
    r.check(
        "equivalence-cardinality",
        "|C| = |D^perp|",
        h.cardinality_ok,
        format!("|C| = {}", c.len()),
    );
    r.info("lcd", "C^perp = D", yes(h.lcd));
    Ok(())
}

pub fn lcp_verify(inst: &Instance, bounds: Bounds, pair: &Option<Vec<String>>) -> CmdResult {
    let a = algebra(inst, bounds)?;
    let mut env = Env::new(&a, inst)?;
    let mut r = Report::new("lcp verify", &inst.source);
    match named_pair(&mut env, pair)? {
        Some((c, d)) => verify_pair(&a, &mut r, &c, &d)?,
        None => {
            for p in a.lcp_scan()? {
                verify_pair(&a, &mut r, &p.c, &p.d)?;
            }
        }
    }
    Ok(r)
}

fn residue_pair(
    a: &GroupAlgebra,
    res: &GroupAlgebra,
    r: &mut Report,
    c: &SidedIdeal,
    d: &SidedIdeal,
) -> Result<(), EvalError> {
    let v = a.lcp_residue_correspondence(res, c, d)?;
    let name = pair_name(a, c, d);
    let pc = list(&v.residue_c, |&x| res.format_idx(x));
    let pd = list(&v.residue_d, |&x| res.format_idx(x));
    r.info(
        "residue-pair",
        "generators of pi(C), pi(D)",
        format!(
            "{name}; pi(C) from {pc}, pi(D) from {pd}; lcp = {}, residue lcp = {}",
            yes(v.lcp),
            yes(v.residue_lcp)
        ),
    );
    r.check(
        "residue-lcp-forward",
        "LCP implies residue LCP",
        v.forward_ok(),
        name.clone(),
    );
    r.check(
        "residue-lcp-converse",
        "residue LCP implies LCP",
        v.converse_ok(),
        name.clone(),
    );
    if let (Some(e_bar), Some(lift), Some(matches)) = (v.residue_e, &v.lifted, v.lift_matches) {
        let w = format!(
            "e_bar = {}, e' = {} after {} step(s)",
            res.format_idx(e_bar),
            a.format(lift),
            v.lift_iterations.unwrap_or(0)
        );
        if v.lcp {
            r.check(
                "residue-lift",
                "lift e' of e_bar gives C = e'RG, D = (1-e')RG",
                matches,
                w,
            );
        } else {
            r.push(
                "residue-lift",
                "lift e' of e_bar gives C = e'RG, D = (1-e')RG",
                Status::Skip,
                format!("{w}; pair is not an LCP"),
            );
        }
    }
    Ok(())
}

pub fn lcp_residue(inst: &Instance, bounds: Bounds, pair: &Option<Vec<String>>) -> CmdResult {
    let a = algebra(inst, bounds)?;
    let res = a.residue_algebra()?;
    let mut env = Env::new(&a, inst)?;
    let mut r = Report::new("lcp residue", &inst.source);
    match named_pair(&mut env, pair)? {
        Some((c, d)) => residue_pair(&a, &res, &mut r, &c, &d)?,
        None => {
            let ideals = a.enumerate_right_ideals()?;
            for c in &ideals {
                for d in &ideals {
                    residue_pair(&a, &res, &mut r, c, d)?;
                }
            }
        }
    }
    let mut lifts = 0;
    let mut ok = true;
    let mut witness = String::new();
    for &e in res.enumerate_idempotents()?.elements() {
        lifts += 1;
        let l = a.lift_idempotent(&res, &res.decode(e))?;
        if l.iterations > l.cap && ok {
            ok = false;
            witness = res.format_idx(e);
        }
    }
    r.check(
        "idempotent-lifting",
        "residue idempotents lift within f - 1 steps",
        ok,
        if ok {
            format!("{lifts} idempotents")
        } else {
            witness
        },
    );
    Ok(r)
}

fn checkable_lines(a: &GroupAlgebra, r: &mut Report, c: &SidedIdeal) -> Result<(), EvalError> {
    let v = a.checkability(c)?;
    let name = a.format_ideal(c);
    let fmt = |x: Option<Idx>| x.map(|u| a.format_idx(u)).unwrap_or_else(|| "none".into());
    r.info(
        "checkable",
        "C = Ann_r(u) for some u",
        format!(
            "{name}; {}; u = {}",
            yes(v.checkable()),
            fmt(v.check_element)
        ),
    );
    r.check(
        "checkable-iff-ann-principal",
        "checkable iff Ann_l(C) principal left ideal",
        v.annihilator_criterion_agrees(),
        format!("Ann_l(C) generator = {}", fmt(v.ann_left_generator)),
    );
    let side = v
        .dual_side
        .map(|s| s.to_string())
        .unwrap_or_else(|| "neither".into());
    r.check(
        "checkable-iff-dual-principal",
        "checkable iff C^perp principal right ideal",
        v.dual_criterion_agrees(),
        format!(
            "right generator = {}; C^perp is a {side} ideal with generator {}",
            fmt(v.dual_generator),
            fmt(v.dual_principal_on_own_side)
        ),
    );
    match v.definition_link_ok {
        Some(ok) => r.check(
            "check-element-annihilates",
            "C = Ann_r(RG u)",
            ok,
            fmt(v.check_element),
        ),
        None => r.push(
            "check-element-annihilates",
            "C = Ann_r(RG u)",
            Status::Skip,
            "not checkable",
        ),
    }
    let q = a.dual_quotient_note(c)?;
    r.check(
        "dual-quotient-size",
        "|RG / C^perp| = |C|",
        q.matches_code,
        format!("{} / {} = {}", q.algebra, q.dual, q.quotient),
    );
    let d = a.decompose_one()?;
    match a.decomposition_subset(c, &d)? {
        None => r.push(
            "checkable-ann-intersection",
            "C = meet of Ann_r(RG e_k) over complementary summands",
            Status::Skip,
            "C is not a sum of summands of the decomposition of 1",
        ),
        Some(_) => match a.ann_intersection_check(c, &d)? {
            AnnIntersection::HypothesisUnmet => r.push(
                "checkable-ann-intersection",
                "C = meet of Ann_r(RG e_k) over complementary summands",
                Status::Skip,
                "hypothesis unmet: decomposition has non-central summands",
            ),
            AnnIntersection::Checked {
                intersection_ok,
                chain_ok,
            } => r.check(
                "checkable-ann-intersection",
                "C = meet of Ann_r(RG e_k) over complementary summands",
                intersection_ok && chain_ok,
                format!(
                    "meet = {}, Ann_r(sum) = {}",
                    yes(intersection_ok),
                    yes(chain_ok)
                ),
            ),
        },
    }
    Ok(())
}

pub fn checkable_ideal(inst: &Instance, bounds: Bounds, ideal: &Option<String>) -> CmdResult {
    let a = algebra(inst, bounds)?;
    let mut env = Env::new(&a, inst)?;
    let name = ideal
        .as_ref()
        .ok_or_else(|| EvalError::Usage("checkable ideal needs --ideal NAME".into()))?;
    let c = env.ideal(name)?;
    if c.side() != Side::Right {
        return Err(EvalError::Usage(format!("'{name}' is not a right ideal")));
    }
    let mut r = Report::new("checkable ideal", &inst.source);
    checkable_lines(&a, &mut r, &c)?;
    Ok(r)
}

pub fn checkable_census(inst: &Instance, bounds: Bounds) -> CmdResult {
    let a = algebra(inst, bounds)?;
    let census = a.code_checkable_census()?;
    let mut r = Report::new("checkable census", &inst.source);
    let fmt = |x: Option<Idx>| x.map(|u| a.format_idx(u)).unwrap_or_else(|| "none".into());
    let (mut ann_bad, mut dual_bad) = (Vec::new(), Vec::new());
    for row in &census.rows {
        let v = &row.verdict;
        let sum = match &row.decomposition_subset {
            Some(s) => format!("summands {s:?}"),
            None => "not a sum of summands".into(),
        };
        r.info(
            "ideal",
            "right ideal of RG",
            format!(
                "{}; checkable = {}; u = {}; {sum}",
                a.format_ideal(&row.ideal),
                yes(v.checkable()),
                fmt(v.check_element)
            ),
        );
        if !v.annihilator_criterion_agrees() {
            ann_bad.push(a.format_ideal(&row.ideal));
        }
        if !v.dual_criterion_agrees() {
            dual_bad.push(a.format_ideal(&row.ideal));
        }
    }
    let n = census.rows.len();
    let tally = |bad: &[String]| match bad.first() {
        None => format!("{n} ideals"),
        Some(w) => format!("{}/{n} disagree; first: {w}", bad.len()),
    };
    r.check(
        "checkable-iff-ann-principal",
        "checkable iff Ann_l(C) principal left ideal",
        ann_bad.is_empty(),
        tally(&ann_bad),
    );
    r.check(
        "checkable-iff-dual-principal",
        "checkable iff C^perp principal right ideal",
        dual_bad.is_empty(),
        tally(&dual_bad),
    );
    let sums = census
        .rows
        .iter()
        .filter(|r| r.decomposition_subset.is_some())
        .count();
    r.info(
        "decomposition-sums",
        "ideals that are sums of summands of the decomposition of 1",
        format!("{sums}/{n}"),
    );
    r.info(
        "code-checkable",
        "every right ideal is checkable",
        yes(census.code_checkable()),
    );
    Ok(r)
}

pub fn verify_all(inst: &Instance, bounds: Bounds) -> CmdResult {
    let a = algebra(inst, bounds)?;
    let checks = verify::verify_all(&a)?;
    let mut r = Report::new("verify-all", &inst.source);
    for c in checks {
        r.push(c.id, c.statement, c.status.into(), c.witness);
        if let Some(l) = r.lines.last_mut() {
            l.micros = Some(c.micros);
        }
    }
    Ok(r)
}
