//! The group algebra RG: convolution product, adjoint, the coordinate
//! bilinear form, centrality, and coefficient reduction along `R → R/J`.
//!
//! Elements are coefficient vectors in the group's element order. When
//! `|RG|` is within the operation bound the whole algebra can also be
//! materialized as an index space (mixed radix, base `|R|`, group element 0
//! least significant), which is what the ideal and idempotent modules work
//! over.

use std::sync::{Arc, OnceLock};

use crate::error::{GlabError, Result};
use crate::finring::{Ring, RingElem};
use crate::grp::FiniteGroup;

pub const DEFAULT_OP_BOUND: usize = 4096;
pub const DEFAULT_CENSUS_BOUND: usize = 256;
/// Largest algebra that may be materialized at all unless overridden by
/// `GLAB_MAX_ELEMS`.
pub const DEFAULT_HARD_CAP: usize = 1 << 16;

/// Up to this size the algebra caches full addition and multiplication tables.
const ALG_TABLE_LIMIT: usize = 1024;

/// Index of an element of a materialized algebra.
pub type Idx = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest |RG| for element-set operations (closure, duals, annihilators).
    pub op: usize,
    /// Largest |RG| for full right-ideal enumeration.
    pub census: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            op: DEFAULT_OP_BOUND,
            census: DEFAULT_CENSUS_BOUND,
        }
    }
}

/// Hard cap from the environment, falling back to [`DEFAULT_HARD_CAP`].
pub fn hard_cap() -> usize {
    std::env::var("GLAB_MAX_ELEMS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_HARD_CAP)
}

/// An element of RG: one ring coefficient per group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgElem {
    coeffs: Vec<RingElem>,
}

impl AlgElem {
    pub fn coeffs(&self) -> &[RingElem] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> RingElem {
        self.coeffs[g]
    }
}

struct Indexed {
    /// coefficient indices, `size * |G|`
    coeffs: Vec<u32>,
    add: Option<Vec<Idx>>,
    mul: Option<Vec<Idx>>,
}

pub struct GroupAlgebra {
    ring: Arc<Ring>,
    group: Arc<FiniteGroup>,
    bounds: Bounds,
    /// |R|^|G|, saturated at u128::MAX
    size: u128,
    indexed: OnceLock<Indexed>,
}

impl std::fmt::Debug for GroupAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GroupAlgebra")
            .field("ring", self.ring.spec())
            .field("group_order", &self.group.order())
            .field("size", &self.size)
            .finish()
    }
}

impl GroupAlgebra {
    pub fn new(ring: Ring, group: FiniteGroup) -> Self {
        Self::with_bounds(Arc::new(ring), Arc::new(group), Bounds::default())
    }

    pub fn with_bounds(ring: Arc<Ring>, group: Arc<FiniteGroup>, bounds: Bounds) -> Self {
        let size = (0..group.order()).fold(1u128, |acc, _| acc.saturating_mul(ring.size() as u128));
        GroupAlgebra {
            ring,
            group,
            bounds,
            size,
            indexed: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ring_arc(&self) -> Arc<Ring> {
        Arc::clone(&self.ring)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<FiniteGroup> {
        Arc::clone(&self.group)
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// |RG| (saturating).
    pub fn cardinality(&self) -> u128 {
        self.size
    }

    pub fn degree(&self) -> usize {
        self.group.order()
    }

    // ---- value-level arithmetic ----

    pub fn zero(&self) -> AlgElem {
        AlgElem {
            coeffs: vec![self.ring.zero(); self.degree()],
        }
    }

    pub fn one(&self) -> AlgElem {
        self.scalar(self.ring.one())
    }

    /// `r · 1_G`.
    pub fn scalar(&self, r: RingElem) -> AlgElem {
        let mut a = self.zero();
        a.coeffs[self.group.identity()] = r;
        a
    }

    /// `1_R · g`.
    pub fn basis(&self, g: usize) -> AlgElem {
        let mut a = self.zero();
        a.coeffs[g] = self.ring.one();
        a
    }

    /// Validate a coefficient vector.
    pub fn element(&self, coeffs: Vec<RingElem>) -> Result<AlgElem> {
        if coeffs.len() != self.degree() {
            return Err(GlabError::Mismatch(format!(
                "expected {} coefficients, got {}",
                self.degree(),
                coeffs.len()
            )));
        }
        if let Some(c) = coeffs.iter().find(|c| c.index() >= self.ring.size()) {
            return Err(GlabError::Mismatch(format!(
                "coefficient index {} outside ring of size {}",
                c.0,
                self.ring.size()
            )));
        }
        Ok(AlgElem { coeffs })
    }

    /// Coefficients given as integers reduced into the first coordinate.
    pub fn from_ints(&self, coeffs: &[i64]) -> Result<AlgElem> {
        self.element(coeffs.iter().map(|&c| self.ring.from_int(c)).collect())
    }

    pub fn check(&self, a: &AlgElem) -> Result<()> {
        if a.coeffs.len() != self.degree() || a.coeffs.iter().any(|c| c.index() >= self.ring.size())
        {
            return Err(GlabError::Mismatch(
                "element does not belong to this algebra".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        AlgElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| self.ring.add(x, y))
                .collect(),
        }
    }

    pub fn neg(&self, a: &AlgElem) -> AlgElem {
        AlgElem {
            coeffs: a.coeffs.iter().map(|&x| self.ring.neg(x)).collect(),
        }
    }

    pub fn sub(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        self.add(a, &self.neg(b))
    }

    /// `(ab)_g = Σ_h a_h b_{h⁻¹g}`, factor order preserved.
    pub fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let mut out = self.zero();
        self.mul_into(&a.coeffs, &b.coeffs, &mut out.coeffs);
        out
    }

    pub fn try_mul(&self, a: &AlgElem, b: &AlgElem) -> Result<AlgElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    fn mul_into(&self, a: &[RingElem], b: &[RingElem], out: &mut [RingElem]) {
        let r = &*self.ring;
        let zero = r.zero();
        out.iter_mut().for_each(|c| *c = zero);
        for (h, &ah) in a.iter().enumerate() {
            if ah == zero {
                continue;
            }
            for (k, &bk) in b.iter().enumerate() {
                if bk == zero {
                    continue;
                }
                let g = self.group.mul(h, k);
                out[g] = r.add(out[g], r.mul(ah, bk));
            }
        }
    }

    /// Left scalar multiplication `r·a`.
    pub fn scale(&self, r: RingElem, a: &AlgElem) -> AlgElem {
        AlgElem {
            coeffs: a.coeffs.iter().map(|&x| self.ring.mul(r, x)).collect(),
        }
    }

    /// `â = Σ a_g g⁻¹`.
    pub fn adjoint(&self, a: &AlgElem) -> AlgElem {
        let mut out = self.zero();
        for (g, &c) in a.coeffs.iter().enumerate() {
            out.coeffs[self.group.inv(g)] = c;
        }
        out
    }

    /// `⟨a, b⟩ = Σ_g a_g b_g`, left argument's coefficient first.
    pub fn bilinear_form(&self, a: &AlgElem, b: &AlgElem) -> RingElem {
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .fold(self.ring.zero(), |acc, (&x, &y)| {
                self.ring.add(acc, self.ring.mul(x, y))
            })
    }

    pub fn is_zero(&self, a: &AlgElem) -> bool {
        a.coeffs.iter().all(|&c| c == self.ring.zero())
    }

    /// Centrality: commutes with every `r·1` and every `1·g`; when the algebra
    /// is small enough the full pass over RG is run as well.
    pub fn is_central(&self, a: &AlgElem) -> bool {
        let commutes = |x: &AlgElem| self.mul(a, x) == self.mul(x, a);
        let on_generators = self.ring.elements().all(|r| commutes(&self.scalar(r)))
            && (0..self.degree()).all(|g| commutes(&self.basis(g)));
        if !on_generators {
            return false;
        }
        if self.size <= self.bounds.op as u128 && self.size <= DEFAULT_OP_BOUND as u128 {
            let total = self.size as u32;
            return (0..total).all(|i| commutes(&self.decode(i)));
        }
        true
    }

    /// Human-readable coefficient list in group order, matching the instance
    /// file syntax.
    pub fn format(&self, a: &AlgElem) -> String {
        let parts: Vec<String> = a
            .coeffs
            .iter()
            .map(|&c| {
                let cs = self.ring.coords(c);
                if cs.len() == 1 {
                    cs[0].to_string()
                } else {
                    format!(
                        "[{}]",
                        cs.iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    )
                }
            })
            .collect();
        format!("[{}]", parts.join(","))
    }

    // ---- materialized index space ----

    /// Fail with a scale error unless `|RG| <= bound` and the hard cap.
    pub fn require(&self, what: &'static str, bound: usize) -> Result<()> {
        let bound = bound.min(hard_cap());
        if self.size > bound as u128 {
            return Err(GlabError::Scale {
                what,
                size: self.size,
                bound: bound as u128,
            });
        }
        Ok(())
    }

    /// Number of elements of the materialized algebra. Callers must have
    /// passed [`GroupAlgebra::require`].
    pub fn len(&self) -> usize {
        self.size as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn indexed(&self) -> &Indexed {
        self.indexed.get_or_init(|| {
            let n = self.degree();
            let rs = self.ring.size() as u32;
            let total = self.size as usize;
            let mut coeffs = vec![0u32; total * n];
            for i in 0..total {
                let mut rest = i as u32;
                for g in 0..n {
                    coeffs[i * n + g] = rest % rs;
                    rest /= rs;
                }
            }
            let mut ix = Indexed {
                coeffs,
                add: None,
                mul: None,
            };
            if total <= ALG_TABLE_LIMIT {
                let mut add = vec![0; total * total];
                let mut mul = vec![0; total * total];
                let mut buf = vec![RingElem(0); n];
                for a in 0..total {
                    for b in 0..total {
                        add[a * total + b] = self.add_slices(&ix, a as Idx, b as Idx);
                        self.mul_into(
                            &to_elems(&ix.coeffs[a * n..(a + 1) * n]),
                            &to_elems(&ix.coeffs[b * n..(b + 1) * n]),
                            &mut buf,
                        );
                        mul[a * total + b] = self.encode_slice(&buf);
                    }
                }
                ix.add = Some(add);
                ix.mul = Some(mul);
            }
            ix
        })
    }

    fn add_slices(&self, ix: &Indexed, a: Idx, b: Idx) -> Idx {
        let n = self.degree();
        let (a, b) = (a as usize, b as usize);
        let rs = self.ring.size() as u32;
        let mut out = 0u32;
        let mut stride = 1u32;
        for g in 0..n {
            let c = self.ring.add(
                RingElem(ix.coeffs[a * n + g]),
                RingElem(ix.coeffs[b * n + g]),
            );
            out += c.0 * stride;
            stride = stride.wrapping_mul(rs);
        }
        out
    }

    fn encode_slice(&self, coeffs: &[RingElem]) -> Idx {
        let rs = self.ring.size() as u32;
        coeffs.iter().rev().fold(0u32, |acc, c| acc * rs + c.0)
    }

    /// Index of an element. The algebra must be materializable.
    pub fn encode(&self, a: &AlgElem) -> Idx {
        self.encode_slice(&a.coeffs)
    }

    pub fn decode(&self, i: Idx) -> AlgElem {
        let n = self.degree();
        let rs = self.ring.size() as u32;
        let mut rest = i;
        AlgElem {
            coeffs: (0..n)
                .map(|_| {
                    let c = rest % rs;
                    rest /= rs;
                    RingElem(c)
                })
                .collect(),
        }
    }

    #[inline]
    pub fn add_idx(&self, a: Idx, b: Idx) -> Idx {
        let ix = self.indexed();
        match &ix.add {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => self.add_slices(ix, a, b),
        }
    }

    #[inline]
    pub fn mul_idx(&self, a: Idx, b: Idx) -> Idx {
        let ix = self.indexed();
        match &ix.mul {
            Some(t) => t[a as usize * self.len() + b as usize],
            None => {
                let n = self.degree();
                let (a, b) = (a as usize, b as usize);
                let mut buf = vec![RingElem(0); n];
                self.mul_into(
                    &to_elems(&ix.coeffs[a * n..(a + 1) * n]),
                    &to_elems(&ix.coeffs[b * n..(b + 1) * n]),
                    &mut buf,
                );
                self.encode_slice(&buf)
            }
        }
    }

    pub fn neg_idx(&self, a: Idx) -> Idx {
        self.encode(&self.neg(&self.decode(a)))
    }

    pub fn sub_idx(&self, a: Idx, b: Idx) -> Idx {
        self.add_idx(a, self.neg_idx(b))
    }

    pub fn adjoint_idx(&self, a: Idx) -> Idx {
        self.encode(&self.adjoint(&self.decode(a)))
    }

    pub fn one_idx(&self) -> Idx {
        self.encode(&self.one())
    }

    /// `⟨a, b⟩ == 0` on indices.
    pub fn orthogonal_idx(&self, a: Idx, b: Idx) -> bool {
        let ix = self.indexed();
        let n = self.degree();
        let (a, b) = (a as usize, b as usize);
        let mut acc = self.ring.zero();
        for g in 0..n {
            acc = self.ring.add(
                acc,
                self.ring.mul(
                    RingElem(ix.coeffs[a * n + g]),
                    RingElem(ix.coeffs[b * n + g]),
                ),
            );
        }
        acc == self.ring.zero()
    }

    pub fn format_idx(&self, a: Idx) -> String {
        self.format(&self.decode(a))
    }

    // ---- residue reduction ----

    /// The algebra `(R/J)G` over the residue field of a local base ring.
    pub fn residue_algebra(&self) -> Result<GroupAlgebra> {
        let quotient = self.ring.radical_quotient()?;
        Ok(GroupAlgebra::with_bounds(
            Arc::new(quotient),
            Arc::clone(&self.group),
            self.bounds,
        ))
    }

    /// Coefficientwise `π₀`. `residue` must come from
    /// [`GroupAlgebra::residue_algebra`] on this algebra.
    pub fn reduce_coeffs(&self, residue: &GroupAlgebra, a: &AlgElem) -> Result<AlgElem> {
        let res = residue
            .ring
            .as_residue()
            .filter(|r| r.base() == &*self.ring)
            .ok_or_else(|| GlabError::Mismatch("not the residue algebra of this algebra".into()))?;
        Ok(AlgElem {
            coeffs: a.coeffs.iter().map(|&c| res.project(c)).collect(),
        })
    }

    /// Coefficientwise least-representative lift from `(R/J)G`.
    pub fn least_lift(&self, residue: &GroupAlgebra, a: &AlgElem) -> Result<AlgElem> {
        let res = residue
            .ring
            .as_residue()
            .filter(|r| r.base() == &*self.ring)
            .ok_or_else(|| GlabError::Mismatch("not the residue algebra of this algebra".into()))?;
        Ok(AlgElem {
            coeffs: a.coeffs.iter().map(|&c| res.least_preimage(c)).collect(),
        })
    }
}

fn to_elems(s: &[u32]) -> Vec<RingElem> {
    s.iter().map(|&c| RingElem(c)).collect()
}
