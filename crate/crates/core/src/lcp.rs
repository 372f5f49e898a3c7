//! Linear complementary pairs of right ideals: detection, idempotent
//! certificates, refinement into primitive sums, the residue-field
//! correspondence, and the adjoint equivalence between `C` and `D^⊥`.

use std::collections::HashSet;

use crate::error::{falsified, GlabError, Result};
use crate::galg::{AlgElem, GroupAlgebra, Idx};
use crate::ideals::{Side, SidedIdeal};
use crate::idem::IdempotentSet;

/// `C = eRG`, `D = (1 − e)RG` with `e² = e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcpCertificate {
    pub e: Idx,
    /// Identities verified while building the certificate.
    pub checks: Vec<(&'static str, bool)>,
}

/// `e` and `1 − e` refined into primitives: `parts[..u]` sum to `e`,
/// `parts[u..]` to `1 − e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumForm {
    pub parts: Vec<Idx>,
    pub u: usize,
    pub v: usize,
    pub sums_to_one: bool,
    pub orthogonal: bool,
    pub c_is_direct_sum: bool,
    pub d_is_direct_sum: bool,
    /// `C^⊥ = Σ_{i>u} ê_i RG`.
    pub dual_c_ok: bool,
    /// `D^⊥ = Σ_{i≤u} ê_i RG`.
    pub dual_d_ok: bool,
}

impl SumForm {
    pub fn all_ok(&self) -> bool {
        self.sums_to_one
            && self.orthogonal
            && self.c_is_direct_sum
            && self.d_is_direct_sum
            && self.dual_c_ok
            && self.dual_d_ok
    }
}

#[derive(Debug, Clone)]
pub struct LcpPair {
    pub c: SidedIdeal,
    pub d: SidedIdeal,
    pub certificate: LcpCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatVerdict {
    pub central: bool,
    /// `D^⊥ = êRG` (the dual formula for the idempotent ideal `D`).
    pub dual_formula_ok: bool,
    /// `{ĉ : c ∈ C} = D^⊥`; only decided when `e` is central.
    pub hat_image_ok: Option<bool>,
    pub cardinality_ok: bool,
    /// `C^⊥ = D`, flagged but not otherwise used.
    pub lcd: bool,
}

impl HatVerdict {
    pub fn all_ok(&self) -> bool {
        self.dual_formula_ok && self.hat_image_ok != Some(false) && self.cardinality_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueVerdict {
    pub lcp: bool,
    pub residue_lcp: bool,
    /// Residue-pair generators, as elements of `(R/J)G`.
    pub residue_c: Vec<Idx>,
    pub residue_d: Vec<Idx>,
    pub residue_e: Option<Idx>,
    /// Lift of the residue certificate and whether `C = e′RG`, `D = (1−e′)RG`.
    pub lifted: Option<AlgElem>,
    pub lift_iterations: Option<usize>,
    pub lift_matches: Option<bool>,
}

impl ResidueVerdict {
    pub fn forward_ok(&self) -> bool {
        !self.lcp || self.residue_lcp
    }

    pub fn converse_ok(&self) -> bool {
        !self.residue_lcp || self.lcp
    }

    pub fn agree(&self) -> bool {
        self.lcp == self.residue_lcp
    }
}

fn require_right(c: &SidedIdeal, d: &SidedIdeal) -> Result<()> {
    if c.side() != Side::Right || d.side() != Side::Right {
        return Err(GlabError::Mismatch("LCP pairs are right ideals".into()));
    }
    if c.members().len() != d.members().len() {
        return Err(GlabError::Mismatch("ideals of different algebras".into()));
    }
    Ok(())
}

impl GroupAlgebra {
    fn check_ideal_len(&self, c: &SidedIdeal) -> Result<()> {
        if c.members().len() != self.len() {
            return Err(GlabError::Mismatch(
                "ideal belongs to another algebra".into(),
            ));
        }
        Ok(())
    }

    /// `C ∩ D = {0}` and `|C|·|D| = |RG|`.
    pub fn is_lcp(&self, c: &SidedIdeal, d: &SidedIdeal) -> Result<bool> {
        require_right(c, d)?;
        self.check_ideal_len(c)?;
        Ok(c.len() * d.len() == self.len() && self.intersect(c, d)?.is_zero())
    }

    /// The unique `c ∈ C` with `1 − c ∈ D`, verified to be an idempotent
    /// generating both ideals.
    pub fn lcp_certificate(&self, c: &SidedIdeal, d: &SidedIdeal) -> Result<LcpCertificate> {
        if !self.is_lcp(c, d)? {
            return Err(GlabError::Invalid("pair is not an LCP".into()));
        }
        let one = self.one_idx();
        let mut found = c.elements().filter(|&x| d.contains(self.sub_idx(one, x)));
        let e = found
            .next()
            .ok_or_else(|| falsified("lcp-decomposition-of-one", "1 is not in C + D"))?;
        let unique = found.next().is_none();
        let idempotent = self.is_idempotent_idx(e);
        let c_ok = self.principal(e, Side::Right)? == *c;
        let d_ok = self.principal(self.sub_idx(one, e), Side::Right)? == *d;
        let checks = vec![
            ("unique-splitting-of-one", unique),
            ("e-squared-is-e", idempotent),
            ("c-equals-e-rg", c_ok),
            ("d-equals-complement-rg", d_ok),
        ];
        if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
            return Err(falsified(
                "lcp-certificate",
                format!("{name} fails for e = {}", self.format_idx(e)),
            ));
        }
        Ok(LcpCertificate { e, checks })
    }

    /// `C = eRG`, `D = (1−e)RG` for some idempotent `e` of the given set.
    pub fn idempotent_split_exists(
        &self,
        set: &IdempotentSet,
        c: &SidedIdeal,
        d: &SidedIdeal,
    ) -> Result<bool> {
        for &e in set.elements() {
            let ce = self.principal(e, Side::Right)?;
            if ce == *c && self.principal(self.sub_idx(self.one_idx(), e), Side::Right)? == *d {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// One LCP per idempotent, `(eRG, (1−e)RG)` in order of `e`; cross-checked
    /// against every LCP pair of the right-ideal lattice.
    pub fn lcp_scan(&self) -> Result<Vec<LcpPair>> {
        self.require("group algebra (census)", self.bounds().census)?;
        let set = self.enumerate_idempotents()?;
        let mut seen = HashSet::new();
        let mut pairs = Vec::new();
        for &e in set.elements() {
            let c = self.principal(e, Side::Right)?;
            let d = self.principal(self.sub_idx(self.one_idx(), e), Side::Right)?;
            if !seen.insert((c.members().clone(), d.members().clone())) {
                continue;
            }
            let certificate = self.lcp_certificate(&c, &d)?;
            pairs.push(LcpPair { c, d, certificate });
        }
        let ideals = self.enumerate_right_ideals()?;
        let mut lattice = HashSet::new();
        for c in &ideals {
            for d in &ideals {
                if self.is_lcp(c, d)? {
                    lattice.insert((c.members().clone(), d.members().clone()));
                }
            }
        }
        if lattice != seen {
            return Err(falsified(
                "lcp-scan-matches-lattice",
                format!(
                    "{} pairs from idempotents, {} from the lattice",
                    seen.len(),
                    lattice.len()
                ),
            ));
        }
        Ok(pairs)
    }

    /// Refine `e` and `1 − e` into primitives and check the sum form together
    /// with the dual-of-sum formulas.
    pub fn sum_form(&self, set: &IdempotentSet, cert: &LcpCertificate) -> Result<SumForm> {
        let one = self.one_idx();
        let e = cert.e;
        let f = self.sub_idx(one, e);
        let left = self.refine(set, e)?;
        let right = self.refine(set, f)?;
        let (u, v) = (left.len(), right.len());
        let parts: Vec<Idx> = left.parts().iter().chain(right.parts()).copied().collect();
        let sums_to_one = parts.iter().fold(0, |acc, &p| self.add_idx(acc, p)) == one;
        let orthogonal = parts.iter().enumerate().all(|(i, &a)| {
            parts
                .iter()
                .enumerate()
                .all(|(j, &b)| i == j || self.mul_idx(a, b) == 0)
        });
        let c_is_direct_sum = self.direct_sum_holds(&left, e)?;
        let d_is_direct_sum = self.direct_sum_holds(&right, f)?;
        let hats = |ps: &[Idx]| ps.iter().map(|&p| self.adjoint_idx(p)).collect::<Vec<_>>();
        let c = self.principal(e, Side::Right)?;
        let d = self.principal(f, Side::Right)?;
        let dual_c_ok = self
            .dual_unchecked(&c)?
            .same_set(&self.close(&hats(&parts[u..]), Side::Right)?);
        let dual_d_ok = self
            .dual_unchecked(&d)?
            .same_set(&self.close(&hats(&parts[..u]), Side::Right)?);
        Ok(SumForm {
            parts,
            u,
            v,
            sums_to_one,
            orthogonal,
            c_is_direct_sum,
            d_is_direct_sum,
            dual_c_ok,
            dual_d_ok,
        })
    }

    /// `C` against `D^⊥` through the inversion permutation.
    pub fn hat_equivalence(
        &self,
        c: &SidedIdeal,
        d: &SidedIdeal,
        cert: &LcpCertificate,
    ) -> Result<HatVerdict> {
        let e = cert.e;
        if !self.is_idempotent_idx(e)
            || self.principal(e, Side::Right)? != *c
            || self.principal(self.sub_idx(self.one_idx(), e), Side::Right)? != *d
        {
            return Err(GlabError::Invalid(
                "certificate does not match the pair".into(),
            ));
        }
        let central = self.is_central(&self.decode(e));
        let dual_d = self.dual_unchecked(d)?;
        let dual_formula_ok = dual_d.same_set(&self.close(&[self.adjoint_idx(e)], Side::Right)?);
        let hat_image_ok = central.then(|| self.adjoint_image(c) == *dual_d.members());
        let dual_c = self.dual_unchecked(c)?;
        Ok(HatVerdict {
            central,
            dual_formula_ok,
            hat_image_ok,
            cardinality_ok: c.len() == dual_d.len(),
            lcd: dual_c.same_set(d),
        })
    }

    /// Reduce both ideals to `(R/J)G` (closure of the projected generators)
    /// and compare LCP status; lift the residue certificate when there is one.
    pub fn lcp_residue_correspondence(
        &self,
        residue: &GroupAlgebra,
        c: &SidedIdeal,
        d: &SidedIdeal,
    ) -> Result<ResidueVerdict> {
        if !self.ring().is_local()? {
            return Err(GlabError::NotLocal);
        }
        let lcp = self.is_lcp(c, d)?;
        let project = |i: &SidedIdeal| -> Result<Vec<Idx>> {
            let mut out = Vec::new();
            for &g in i.generators() {
                let r = self.reduce_coeffs(residue, &self.decode(g))?;
                out.push(residue.encode(&r));
            }
            Ok(out)
        };
        let (gc, gd) = (project(c)?, project(d)?);
        let pc = residue.close(&gc, Side::Right)?;
        let pd = residue.close(&gd, Side::Right)?;
        let residue_lcp = residue.is_lcp(&pc, &pd)?;
        let mut verdict = ResidueVerdict {
            lcp,
            residue_lcp,
            residue_c: gc,
            residue_d: gd,
            residue_e: None,
            lifted: None,
            lift_iterations: None,
            lift_matches: None,
        };
        if residue_lcp {
            let cert = residue.lcp_certificate(&pc, &pd)?;
            let lift = self.lift_idempotent(residue, &residue.decode(cert.e))?;
            let e = self.encode(&lift.element);
            let matches = self.principal(e, Side::Right)? == *c
                && self.principal(self.sub_idx(self.one_idx(), e), Side::Right)? == *d;
            verdict.residue_e = Some(cert.e);
            verdict.lifted = Some(lift.element);
            verdict.lift_iterations = Some(lift.iterations);
            verdict.lift_matches = Some(matches);
        }
        Ok(verdict)
    }
}
