//! Finite rings built compositionally, with exact table-driven arithmetic and
//! the structural data needed downstream: units, the Jacobson radical and its
//! nilpotency index, locality, and the Frobenius decision via generating
//! characters.
//!
//! Every element is stored as an index into the mixed-radix space of its
//! additive coordinates (first coordinate least significant). Addition is
//! always coordinatewise; multiplication depends on the ring kind.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{falsified, GlabError, Result};

/// Largest ring accepted by [`Ring::build`].
pub const MAX_RING_SIZE: usize = 1 << 16;

/// Rings up to this size get eagerly cached operation tables.
const TABLE_LIMIT: usize = 1024;

/// Default bound for the generating-character search.
pub const DEFAULT_FROBENIUS_BOUND: usize = 256;

/// Default bound for unit / radical computations (quadratic in |R|).
pub const DEFAULT_STRUCTURE_BOUND: usize = 4096;

/// Description of a finite ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Integers modulo `m`.
    Zmod(u32),
    /// `F_p[x]/(f)` for a monic irreducible `f`, coefficients low to high.
    PolyQuot { p: u32, modulus: Vec<u32> },
    /// Full `n x n` matrices over a base ring.
    Matrix { n: usize, base: Box<RingSpec> },
    /// Direct product; the first factor holds the least significant coordinates.
    Product(Vec<RingSpec>),
    /// `R / J(R)` of a local ring.
    RadicalQuotient(Box<RingSpec>),
    /// Additive group `Z_{m_1} x ... x Z_{m_k}` with an explicit multiplication
    /// table over element indices (row-major, `mul[a * |R| + b] = a * b`).
    /// Axioms are audited at load.
    Table { moduli: Vec<u32>, mul: Vec<u32> },
}

impl RingSpec {
    pub fn zmod(m: u32) -> Self {
        RingSpec::Zmod(m)
    }

    pub fn matrix(n: usize, base: RingSpec) -> Self {
        RingSpec::Matrix {
            n,
            base: Box::new(base),
        }
    }

    pub fn poly_quot(p: u32, modulus: Vec<u32>) -> Self {
        RingSpec::PolyQuot { p, modulus }
    }

    /// Build a [`RingSpec::Table`] from structure constants: `products[i * k + j]`
    /// is the coordinate vector of `b_i * b_j`, where `b_i` is the i-th unit
    /// coordinate vector and `k = moduli.len()`.
    pub fn from_structure_constants(moduli: Vec<u32>, products: &[Vec<u32>]) -> Result<Self> {
        let k = moduli.len();
        if products.len() != k * k {
            return Err(GlabError::Invalid(format!(
                "expected {} basis products, got {}",
                k * k,
                products.len()
            )));
        }
        if products.iter().any(|v| v.len() != k) {
            return Err(GlabError::Invalid(
                "basis product has wrong coordinate count".into(),
            ));
        }
        let shape = Shape::new(&moduli)?;
        let size = shape.size;
        let mut mul = vec![0u32; size * size];
        let mut out = vec![0u64; k];
        for a in 0..size {
            let ca = shape.decode(a as u32);
            for b in 0..size {
                let cb = shape.decode(b as u32);
                out.iter_mut().for_each(|o| *o = 0);
                for i in 0..k {
                    if ca[i] == 0 {
                        continue;
                    }
                    for j in 0..k {
                        if cb[j] == 0 {
                            continue;
                        }
                        let s = ca[i] as u64 * cb[j] as u64;
                        for (t, o) in out.iter_mut().enumerate() {
                            *o = (*o + s * products[i * k + j][t] as u64) % moduli[t] as u64;
                        }
                    }
                }
                let coords: Vec<u32> = out.iter().map(|&x| x as u32).collect();
                mul[a * size + b] = shape.encode(&coords);
            }
        }
        Ok(RingSpec::Table { moduli, mul })
    }

    /// `F_p[x]/(x^k)`, the chain ring with radical `(x)`.
    pub fn truncated_poly(p: u32, k: usize) -> Result<Self> {
        let moduli = vec![p; k];
        let mut products = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let mut v = vec![0; k];
                if i + j < k {
                    v[i + j] = 1;
                }
                products.push(v);
            }
        }
        Self::from_structure_constants(moduli, &products)
    }

    /// Upper-triangular `n x n` matrices over `Z/p`; basis `E_ij` (i <= j) in
    /// row-major order.
    pub fn upper_triangular(n: usize, p: u32) -> Result<Self> {
        let basis: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let k = basis.len();
        let mut products = Vec::with_capacity(k * k);
        for &(i, j) in &basis {
            for &(l, m) in &basis {
                let mut v = vec![0; k];
                if j == l {
                    let pos = basis.iter().position(|&e| e == (i, m)).unwrap();
                    v[pos] = 1;
                }
                products.push(v);
            }
        }
        Self::from_structure_constants(vec![p; k], &products)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(m) => write!(f, "zmod({m})"),
            RingSpec::PolyQuot { p, modulus } => write!(f, "polyquot({p}, {modulus:?})"),
            RingSpec::Matrix { n, base } => write!(f, "matrix({n}, {base})"),
            RingSpec::Product(parts) => {
                write!(f, "product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            RingSpec::RadicalQuotient(base) => write!(f, "radical_quotient({base})"),
            RingSpec::Table { moduli, .. } => write!(f, "table({moduli:?}, ..)"),
        }
    }
}

/// A ring element: canonical index into the ring's coordinate space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElem(pub u32);

impl RingElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Mixed-radix coordinate shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Shape {
    moduli: Vec<u32>,
    strides: Vec<u32>,
    size: usize,
}

impl Shape {
    fn new(moduli: &[u32]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(GlabError::Invalid("empty coordinate shape".into()));
        }
        let mut strides = Vec::with_capacity(moduli.len());
        let mut size: u128 = 1;
        for &m in moduli {
            if m < 2 {
                return Err(GlabError::Invalid(format!("modulus {m} < 2")));
            }
            strides.push(size.min(u32::MAX as u128) as u32);
            size *= m as u128;
            if size > MAX_RING_SIZE as u128 {
                return Err(GlabError::Scale {
                    what: "ring",
                    size,
                    bound: MAX_RING_SIZE as u128,
                });
            }
        }
        Ok(Shape {
            moduli: moduli.to_vec(),
            strides,
            size: size as usize,
        })
    }

    fn decode(&self, idx: u32) -> Vec<u32> {
        let mut rest = idx;
        self.moduli
            .iter()
            .map(|&m| {
                let c = rest % m;
                rest /= m;
                c
            })
            .collect()
    }

    fn encode(&self, coords: &[u32]) -> u32 {
        coords.iter().zip(&self.strides).map(|(&c, &s)| c * s).sum()
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let (mut ra, mut rb, mut out) = (a, b, 0u32);
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            let c = (ra % m + rb % m) % m;
            out += c * s;
            ra /= m;
            rb /= m;
        }
        out
    }

    fn neg(&self, a: u32) -> u32 {
        let (mut ra, mut out) = (a, 0u32);
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            let c = (m - ra % m) % m;
            out += c * s;
            ra /= m;
        }
        out
    }
}

#[derive(Debug, Clone)]
enum Arith {
    Zmod(u32),
    Poly { p: u32, modulus: Vec<u32> },
    Matrix { n: usize, base: Box<Ring> },
    Product(Vec<Ring>),
    Quotient(Box<Residue>),
    Table(Vec<u32>),
}

#[derive(Debug, Clone)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// A constructed finite ring.
#[derive(Debug, Clone)]
pub struct Ring {
    spec: RingSpec,
    shape: Shape,
    one: u32,
    arith: Arith,
    tables: Option<Tables>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Ring {}

impl Ring {
    pub fn build(spec: &RingSpec) -> Result<Ring> {
        let (shape, arith) = match spec {
            RingSpec::Zmod(m) => (Shape::new(&[*m])?, Arith::Zmod(*m)),
            RingSpec::PolyQuot { p, modulus } => {
                check_poly_modulus(*p, modulus)?;
                let d = modulus.len() - 1;
                (
                    Shape::new(&vec![*p; d])?,
                    Arith::Poly {
                        p: *p,
                        modulus: modulus.clone(),
                    },
                )
            }
            RingSpec::Matrix { n, base } => {
                if *n == 0 {
                    return Err(GlabError::Invalid("matrix size must be >= 1".into()));
                }
                let base = Ring::build(base)?;
                let moduli: Vec<u32> = std::iter::repeat_n(base.moduli(), n * n)
                    .flatten()
                    .copied()
                    .collect();
                (
                    Shape::new(&moduli)?,
                    Arith::Matrix {
                        n: *n,
                        base: Box::new(base),
                    },
                )
            }
            RingSpec::Product(parts) => {
                if parts.is_empty() {
                    return Err(GlabError::Invalid("empty product".into()));
                }
                let rings = parts.iter().map(Ring::build).collect::<Result<Vec<_>>>()?;
                let moduli: Vec<u32> = rings.iter().flat_map(|r| r.moduli().to_vec()).collect();
                (Shape::new(&moduli)?, Arith::Product(rings))
            }
            RingSpec::RadicalQuotient(base) => {
                let base = Ring::build(base)?;
                let residue = Residue::of(base)?;
                (
                    Shape::new(&residue.moduli)?,
                    Arith::Quotient(Box::new(residue)),
                )
            }
            RingSpec::Table { moduli, mul } => {
                let shape = Shape::new(moduli)?;
                let n = shape.size;
                if mul.len() != n * n {
                    return Err(GlabError::Invalid(format!(
                        "multiplication table has {} entries, expected {}",
                        mul.len(),
                        n * n
                    )));
                }
                if let Some(bad) = mul.iter().find(|&&x| x as usize >= n) {
                    return Err(GlabError::Invalid(format!(
                        "table entry {bad} out of range"
                    )));
                }
                (shape, Arith::Table(mul.clone()))
            }
        };
        let mut ring = Ring {
            spec: spec.clone(),
            shape,
            one: 0,
            arith,
            tables: None,
        };
        ring.one = ring.compute_one()?;
        if ring.size() <= TABLE_LIMIT {
            ring.tables = Some(ring.build_tables());
        }
        if matches!(spec, RingSpec::Table { .. }) {
            ring.audit()?;
        }
        Ok(ring)
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.shape.size
    }

    /// Additive coordinate shape (cyclic moduli).
    pub fn moduli(&self) -> &[u32] {
        &self.shape.moduli
    }

    pub fn zero(&self) -> RingElem {
        RingElem(0)
    }

    pub fn one(&self) -> RingElem {
        RingElem(self.one)
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElem> {
        (0..self.size() as u32).map(RingElem)
    }

    pub fn coords(&self, x: RingElem) -> Vec<u32> {
        self.shape.decode(x.0)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<RingElem> {
        if coords.len() != self.shape.moduli.len() {
            return Err(GlabError::Invalid(format!(
                "expected {} coordinates, got {}",
                self.shape.moduli.len(),
                coords.len()
            )));
        }
        for (&c, &m) in coords.iter().zip(&self.shape.moduli) {
            if c >= m {
                return Err(GlabError::Invalid(format!(
                    "coordinate {c} out of range for modulus {m}"
                )));
            }
        }
        Ok(RingElem(self.shape.encode(coords)))
    }

    /// Element with a single coordinate `v` reduced into range; convenient for
    /// `Z/m` and the prime field of a polynomial quotient.
    pub fn from_int(&self, v: i64) -> RingElem {
        let m = self.shape.moduli[0] as i64;
        let c = v.rem_euclid(m) as u32;
        let mut coords = vec![0; self.shape.moduli.len()];
        coords[0] = c;
        // a scalar n·1 is only a pure first coordinate for kinds whose 1 is (1,0,..)
        if self.one == 1 {
            RingElem(self.shape.encode(&coords))
        } else {
            self.times(self.one(), v)
        }
    }

    /// `n * x` as repeated addition (negative n negates).
    pub fn times(&self, x: RingElem, n: i64) -> RingElem {
        let mut acc = self.zero();
        let base = if n < 0 { self.neg(x) } else { x };
        for _ in 0..n.unsigned_abs() {
            acc = self.add(acc, base);
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.add[a.index() * self.size() + b.index()]),
            None => RingElem(self.shape.add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.neg[a.index()]),
            None => RingElem(self.shape.neg(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: RingElem, b: RingElem) -> RingElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: RingElem, b: RingElem) -> RingElem {
        match &self.tables {
            Some(t) => RingElem(t.mul[a.index() * self.size() + b.index()]),
            None => RingElem(self.mul_raw(a.0, b.0)),
        }
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Additive order of 1.
    pub fn characteristic(&self) -> u64 {
        let mut acc = self.one();
        let mut n = 1;
        while acc != self.zero() {
            acc = self.add(acc, self.one());
            n += 1;
        }
        n
    }

    /// Human-readable element: a bare integer for one-coordinate rings, else a
    /// coordinate tuple.
    pub fn format(&self, x: RingElem) -> String {
        let c = self.coords(x);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }

    /// Exhaustive audit of the ring axioms: two-sided identity, associativity,
    /// and both distributive laws.
    pub fn audit(&self) -> Result<()> {
        for a in self.elements() {
            if self.mul(self.one(), a) != a || self.mul(a, self.one()) != a {
                return Err(GlabError::RingAxiom(format!(
                    "1 is not a two-sided identity at element {}",
                    a.0
                )));
            }
        }
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GlabError::RingAxiom(format!(
                            "associativity fails at ({}, {}, {})",
                            a.0, b.0, c.0
                        )));
                    }
                    let bc = self.add(b, c);
                    if self.mul(a, bc) != self.add(ab, self.mul(a, c)) {
                        return Err(GlabError::RingAxiom(format!(
                            "left distributivity fails at ({}, {}, {})",
                            a.0, b.0, c.0
                        )));
                    }
                    if self.mul(self.add(a, b), c) != self.add(self.mul(a, c), self.mul(b, c)) {
                        return Err(GlabError::RingAxiom(format!(
                            "right distributivity fails at ({}, {}, {})",
                            a.0, b.0, c.0
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_one(&self) -> Result<u32> {
        Ok(match &self.arith {
            Arith::Zmod(_) | Arith::Poly { .. } => 1,
            Arith::Matrix { n, base } => {
                let bs = base.size() as u32;
                let mut idx = 0u32;
                let mut stride = 1u32;
                for i in 0..*n {
                    for j in 0..*n {
                        if i == j {
                            idx += base.one * stride;
                        }
                        stride = stride.saturating_mul(bs);
                    }
                }
                idx
            }
            Arith::Product(parts) => {
                let mut idx = 0u32;
                let mut stride = 1u32;
                for r in parts {
                    idx += r.one * stride;
                    stride = stride.saturating_mul(r.size() as u32);
                }
                idx
            }
            Arith::Quotient(res) => res.proj[res.base.one as usize],
            Arith::Table(mul) => {
                let n = self.shape.size;
                (0..n)
                    .find(|&e| {
                        (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x)
                    })
                    .ok_or_else(|| GlabError::RingAxiom("no two-sided identity in table".into()))?
                    as u32
            }
        })
    }

    fn build_tables(&self) -> Tables {
        let n = self.size();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        let mut neg = vec![0u32; n];
        for a in 0..n as u32 {
            neg[a as usize] = self.shape.neg(a);
            for b in 0..n as u32 {
                add[a as usize * n + b as usize] = self.shape.add(a, b);
                mul[a as usize * n + b as usize] = self.mul_raw(a, b);
            }
        }
        Tables { add, mul, neg }
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        match &self.arith {
            Arith::Zmod(m) => ((a as u64 * b as u64) % *m as u64) as u32,
            Arith::Poly { p, modulus } => {
                let ca = self.shape.decode(a);
                let cb = self.shape.decode(b);
                let prod = poly_mul_mod(&ca, &cb, modulus, *p);
                self.shape.encode(&prod)
            }
            Arith::Matrix { n, base } => {
                let n = *n;
                let bs = base.size() as u32;
                let split = |mut x: u32| -> Vec<RingElem> {
                    (0..n * n)
                        .map(|_| {
                            let e = x % bs;
                            x /= bs;
                            RingElem(e)
                        })
                        .collect()
                };
                let ma = split(a);
                let mb = split(b);
                let mut out = 0u32;
                let mut stride = 1u32;
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = base.zero();
                        for k in 0..n {
                            acc = base.add(acc, base.mul(ma[i * n + k], mb[k * n + j]));
                        }
                        out += acc.0 * stride;
                        stride = stride.saturating_mul(bs);
                    }
                }
                out
            }
            Arith::Product(parts) => {
                let (mut ra, mut rb, mut out, mut stride) = (a, b, 0u32, 1u32);
                for r in parts {
                    let s = r.size() as u32;
                    let c = r.mul(RingElem(ra % s), RingElem(rb % s));
                    out += c.0 * stride;
                    stride = stride.saturating_mul(s);
                    ra /= s;
                    rb /= s;
                }
                out
            }
            Arith::Quotient(res) => {
                let x = res.base.mul(
                    RingElem(res.reps[a as usize]),
                    RingElem(res.reps[b as usize]),
                );
                res.proj[x.index()]
            }
            Arith::Table(mul) => mul[a as usize * self.shape.size + b as usize],
        }
    }

    /// When this ring was built as a radical quotient, the projection data.
    pub fn as_residue(&self) -> Option<&Residue> {
        match &self.arith {
            Arith::Quotient(r) => Some(r),
            _ => None,
        }
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Multiply two coefficient vectors (low to high) over F_p and reduce modulo a
/// monic polynomial.
fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let d = modulus.len() - 1;
    let p64 = p as u64;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p64;
        }
    }
    for top in (d..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        // subtract c * x^(top-d) * modulus
        for (k, &m) in modulus.iter().enumerate() {
            let pos = top - d + k;
            prod[pos] = (prod[pos] + p64 - (c * m as u64) % p64) % p64;
        }
    }
    prod.truncate(d);
    prod.resize(d, 0);
    prod.into_iter().map(|x| x as u32).collect()
}

/// Remainder of `a` modulo monic `b` over F_p (coefficients low to high).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let db = b.len() - 1;
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top];
        if c != 0 {
            for (k, &m) in b.iter().enumerate() {
                let pos = top - db + k;
                r[pos] = (r[pos] + p64 - (c * m as u64) % p64) % p64;
            }
        }
        r.pop();
    }
    r.into_iter().map(|x| x as u32).collect()
}

pub(crate) fn poly_to_string(c: &[u32]) -> String {
    let mut terms = Vec::new();
    for (i, &v) in c.iter().enumerate().rev() {
        if v == 0 {
            continue;
        }
        let coef = if v == 1 && i > 0 {
            String::new()
        } else {
            v.to_string()
        };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn check_poly_modulus(p: u32, modulus: &[u32]) -> Result<()> {
    if !is_prime(p) {
        return Err(GlabError::Invalid(format!(
            "polynomial quotient needs a prime characteristic, got {p}"
        )));
    }
    if modulus.len() < 2 {
        return Err(GlabError::Invalid("modulus must have degree >= 1".into()));
    }
    if *modulus.last().unwrap() != 1 {
        return Err(GlabError::Invalid("modulus must be monic".into()));
    }
    if modulus.iter().any(|&c| c >= p) {
        return Err(GlabError::Invalid(
            "modulus coefficient out of range".into(),
        ));
    }
    let d = modulus.len() - 1;
    // trial division by every monic polynomial of degree 1..=d/2
    for deg in 1..=d / 2 {
        let count = (p as u64).pow(deg as u32);
        for code in 0..count {
            let mut cand = Vec::with_capacity(deg + 1);
            let mut rest = code;
            for _ in 0..deg {
                cand.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            cand.push(1);
            if poly_rem(modulus, &cand, p).iter().all(|&c| c == 0) {
                return Err(GlabError::ReducibleModulus {
                    modulus: poly_to_string(modulus),
                    factor: poly_to_string(&cand),
                });
            }
        }
    }
    Ok(())
}

/// `R / J(R)` for a local ring `R`, together with the projection and the
/// least-representative section.
#[derive(Debug, Clone)]
pub struct Residue {
    base: Ring,
    /// base index -> quotient index
    proj: Vec<u32>,
    /// quotient index -> least base representative of the coset
    reps: Vec<u32>,
    moduli: Vec<u32>,
}

impl Residue {
    fn of(base: Ring) -> Result<Residue> {
        base.check_structure_bound(DEFAULT_STRUCTURE_BOUND)?;
        let (_, j, _, is_local) = base.local_data()?;
        if !is_local {
            return Err(GlabError::NotLocal);
        }
        let n = base.size();
        let coset_min: Vec<u32> = (0..n as u32)
            .map(|x| {
                j.iter()
                    .map(|&r| base.add(RingElem(x), r).0)
                    .min()
                    .unwrap_or(x)
            })
            .collect();
        let mut reps: Vec<u32> = coset_min.clone();
        reps.sort_unstable();
        reps.dedup();
        // R/J is a finite field, so its additive group is elementary abelian.
        let char_order = |x: u32| -> u32 {
            let mut acc = x;
            let mut k = 1;
            while coset_min[acc as usize] != 0 {
                acc = base.add(RingElem(acc), RingElem(x)).0;
                k += 1;
            }
            k
        };
        let p = if reps.len() > 1 {
            char_order(reps[1])
        } else {
            1
        };
        if reps.len() > 1 && (!is_prime(p) || reps.iter().skip(1).any(|&r| char_order(r) != p)) {
            return Err(falsified(
                "residue-field",
                "quotient by the radical is not elementary abelian",
            ));
        }
        // Greedy F_p-basis over cosets in canonical order.
        let mut in_span = FixedBitSet::with_capacity(n);
        in_span.insert(0);
        let mut span: Vec<u32> = vec![0];
        let mut basis: Vec<u32> = Vec::new();
        for &r in reps.iter().skip(1) {
            if in_span.contains(r as usize) {
                continue;
            }
            basis.push(r);
            let old = span.clone();
            let mut mult = r;
            for _ in 1..p {
                for &s in &old {
                    let v = coset_min[base.add(RingElem(s), RingElem(mult)).index()];
                    if !in_span.contains(v as usize) {
                        in_span.insert(v as usize);
                        span.push(v);
                    }
                }
                mult = base.add(RingElem(mult), RingElem(r)).0;
            }
        }
        let moduli = if basis.is_empty() {
            // zero ring cannot occur for local rings; keep a one-point shape guard
            return Err(GlabError::Invalid("radical quotient is trivial".into()));
        } else {
            vec![p; basis.len()]
        };
        let q = reps.len();
        let mut qreps = vec![0u32; q];
        let mut proj = vec![0u32; n];
        let mut rep_to_q = std::collections::HashMap::new();
        for qi in 0..q as u32 {
            let mut rest = qi;
            let mut x = base.zero();
            for &b in &basis {
                let c = rest % p;
                rest /= p;
                x = base.add(x, base.times(RingElem(b), c as i64));
            }
            let rep = coset_min[x.index()];
            qreps[qi as usize] = rep;
            rep_to_q.insert(rep, qi);
        }
        for x in 0..n {
            proj[x] = rep_to_q[&coset_min[x]];
        }
        Ok(Residue {
            base,
            proj,
            reps: qreps,
            moduli,
        })
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    /// π₀: R → R/J.
    pub fn project(&self, x: RingElem) -> RingElem {
        RingElem(self.proj[x.index()])
    }

    /// Least element of the coset represented by `y`.
    pub fn least_preimage(&self, y: RingElem) -> RingElem {
        RingElem(self.reps[y.index()])
    }
}

/// A character of `(R, +)` valued in Q/Z: `x ↦ Σ nᵢ xᵢ / mᵢ (mod 1)` on the
/// additive coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub numerators: Vec<u32>,
    pub moduli: Vec<u32>,
}

impl Character {
    fn common_denominator(&self) -> u64 {
        self.moduli.iter().fold(1u64, |l, &m| lcm(l, m as u64))
    }

    /// Exact value as a reduced fraction `num/den` in `[0, 1)`.
    pub fn value(&self, ring: &Ring, x: RingElem) -> (u64, u64) {
        let den = self.common_denominator();
        let coords = ring.coords(x);
        let mut num = 0u64;
        for ((&c, &n), &m) in coords.iter().zip(&self.numerators).zip(&self.moduli) {
            num = (num + c as u64 * n as u64 * (den / m as u64)) % den;
        }
        let g = gcd(num, den);
        (num / g, den / g)
    }

    pub fn vanishes_at(&self, ring: &Ring, x: RingElem) -> bool {
        self.value(ring, x).0 == 0
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .numerators
            .iter()
            .zip(&self.moduli)
            .enumerate()
            .filter(|(_, (&n, _))| n != 0)
            .map(|(i, (n, m))| format!("{n}*x{i}/{m}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrobeniusStatus {
    Frobenius(Character),
    NotFrobenius,
    /// Ring too large for the exhaustive character search.
    Undecided {
        size: usize,
        bound: usize,
    },
}

impl FrobeniusStatus {
    pub fn is_frobenius(&self) -> Option<bool> {
        match self {
            FrobeniusStatus::Frobenius(_) => Some(true),
            FrobeniusStatus::NotFrobenius => Some(false),
            FrobeniusStatus::Undecided { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RingStructure {
    pub units: Vec<RingElem>,
    pub jacobson_radical: Vec<RingElem>,
    /// Smallest f with J^f = 0.
    pub nilpotency_index: usize,
    pub is_local: bool,
    pub frobenius: FrobeniusStatus,
}

impl Ring {
    fn check_structure_bound(&self, bound: usize) -> Result<()> {
        if self.size() > bound {
            return Err(GlabError::Scale {
                what: "ring",
                size: self.size() as u128,
                bound: bound as u128,
            });
        }
        Ok(())
    }

    /// Two-sided inverse, if any. Both products are checked.
    pub fn inverse(&self, x: RingElem) -> Option<RingElem> {
        let one = self.one();
        self.elements()
            .find(|&y| self.mul(x, y) == one && self.mul(y, x) == one)
    }

    pub fn units(&self) -> Vec<RingElem> {
        self.unit_mask()
            .ones()
            .map(|i| RingElem(i as u32))
            .collect()
    }

    fn unit_mask(&self) -> FixedBitSet {
        let n = self.size();
        let one = self.one();
        let mut mask = FixedBitSet::with_capacity(n);
        for x in self.elements() {
            for y in self.elements() {
                if self.mul(x, y) == one {
                    if self.mul(y, x) == one {
                        mask.insert(x.index());
                    }
                    break;
                }
            }
        }
        mask
    }

    /// `J = {x : 1 - r x is a unit for every r}`, its nilpotency index, and an
    /// audit that `J` is a two-sided ideal.
    pub fn jacobson_radical(&self) -> Result<(Vec<RingElem>, usize)> {
        let units = self.unit_mask();
        self.jacobson_with_units(&units)
    }

    fn jacobson_with_units(&self, units: &FixedBitSet) -> Result<(Vec<RingElem>, usize)> {
        let one = self.one();
        let j: Vec<RingElem> = self
            .elements()
            .filter(|&x| {
                self.elements()
                    .all(|r| units.contains(self.sub(one, self.mul(r, x)).index()))
            })
            .collect();
        let mut mask = FixedBitSet::with_capacity(self.size());
        j.iter().for_each(|x| mask.insert(x.index()));
        for &x in &j {
            for &y in &j {
                if !mask.contains(self.add(x, y).index()) {
                    return Err(falsified("jacobson-ideal", "radical not closed under +"));
                }
            }
            for r in self.elements() {
                if !mask.contains(self.mul(r, x).index()) || !mask.contains(self.mul(x, r).index())
                {
                    return Err(falsified(
                        "jacobson-ideal",
                        format!("radical not two-sided at x={}, r={}", x.0, r.0),
                    ));
                }
            }
        }
        // J^(k+1) = additive span of J^k * J
        let mut power = mask.clone();
        let mut f = 1;
        while power.count_ones(..) > 1 {
            let prods: Vec<RingElem> = power
                .ones()
                .flat_map(|a| j.iter().map(move |&b| (a, b)))
                .map(|(a, b)| self.mul(RingElem(a as u32), b))
                .collect();
            power = self.additive_span(&prods);
            f += 1;
            if f > self.size() + 1 {
                return Err(falsified("jacobson-nilpotent", "radical is not nilpotent"));
            }
        }
        Ok((j, f))
    }

    /// Additive subgroup generated by `gens`.
    pub(crate) fn additive_span(&self, gens: &[RingElem]) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.size());
        mask.insert(0);
        let mut list = vec![self.zero()];
        for &g in gens {
            if mask.contains(g.index()) {
                continue;
            }
            let old = list.clone();
            let mut mult = g;
            while !mask.contains(mult.index()) {
                for &s in &old {
                    let v = self.add(s, mult);
                    mask.insert(v.index());
                    list.push(v);
                }
                mult = self.add(mult, g);
            }
        }
        mask
    }

    pub fn is_local(&self) -> Result<bool> {
        self.check_structure_bound(DEFAULT_STRUCTURE_BOUND)?;
        Ok(self.local_data()?.3)
    }

    /// Units, radical, nilpotency index, locality.
    fn local_data(&self) -> Result<(FixedBitSet, Vec<RingElem>, usize, bool)> {
        let unit_mask = self.unit_mask();
        let (j, f) = self.jacobson_with_units(&unit_mask)?;
        let non_units = self.size() - unit_mask.count_ones(..);
        let is_local = non_units == j.len() && j.iter().all(|x| !unit_mask.contains(x.index()));
        Ok((unit_mask, j, f, is_local))
    }

    /// Generating-character search. A character works when its kernel contains
    /// no nonzero left ideal and no nonzero right ideal, i.e. for every `x != 0`
    /// both `Rx` and `xR` leave the kernel.
    pub fn is_frobenius(&self, bound: usize) -> FrobeniusStatus {
        if self.size() > bound {
            return FrobeniusStatus::Undecided {
                size: self.size(),
                bound,
            };
        }
        let n = self.size();
        for code in 1..n as u32 {
            let chi = Character {
                numerators: self.shape.decode(code),
                moduli: self.moduli().to_vec(),
            };
            let kernel: Vec<bool> = self.elements().map(|x| chi.vanishes_at(self, x)).collect();
            let generating = self.elements().skip(1).all(|x| {
                self.elements().any(|r| !kernel[self.mul(r, x).index()])
                    && self.elements().any(|r| !kernel[self.mul(x, r).index()])
            });
            if generating {
                return FrobeniusStatus::Frobenius(chi);
            }
        }
        FrobeniusStatus::NotFrobenius
    }

    pub fn structure(&self) -> Result<RingStructure> {
        self.structure_with_bound(DEFAULT_STRUCTURE_BOUND)
    }

    pub fn structure_with_bound(&self, bound: usize) -> Result<RingStructure> {
        self.check_structure_bound(bound)?;
        let (unit_mask, jacobson_radical, nilpotency_index, is_local) = self.local_data()?;
        Ok(RingStructure {
            units: unit_mask.ones().map(|i| RingElem(i as u32)).collect(),
            jacobson_radical,
            nilpotency_index,
            is_local,
            frobenius: self.is_frobenius(DEFAULT_FROBENIUS_BOUND.min(bound)),
        })
    }

    /// `R/J` with the projection `π₀`. Requires a local ring.
    pub fn radical_quotient(&self) -> Result<Ring> {
        let residue = Residue::of(self.clone())?;
        let spec = RingSpec::RadicalQuotient(Box::new(self.spec.clone()));
        let mut ring = Ring {
            spec,
            shape: Shape::new(&residue.moduli)?,
            one: 0,
            arith: Arith::Quotient(Box::new(residue)),
            tables: None,
        };
        ring.one = ring.compute_one()?;
        if ring.size() <= TABLE_LIMIT {
            ring.tables = Some(ring.build_tables());
        }
        Ok(ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: RingSpec) -> Ring {
        Ring::build(&spec).unwrap()
    }

    /// Independent radical oracle: intersection of the maximal right ideals,
    /// found by enumerating every subset closed under + and right
    /// multiplication. Only for |R| <= 16.
    fn radical_by_maximal_right_ideals(r: &Ring) -> Vec<u32> {
        let n = r.size();
        assert!(n <= 16);
        let mut ideals: Vec<u32> = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask & 1 == 0 {
                continue;
            }
            let has = |x: RingElem| mask >> x.0 & 1 == 1;
            let members: Vec<RingElem> = r.elements().filter(|&x| has(x)).collect();
            let closed = members.iter().all(|&a| {
                members.iter().all(|&b| has(r.add(a, b))) && r.elements().all(|s| has(r.mul(a, s)))
            });
            if closed && mask != (1u32 << n) - 1 {
                ideals.push(mask);
            }
        }
        let maximal: Vec<u32> = ideals
            .iter()
            .copied()
            .filter(|&a| !ideals.iter().any(|&b| b != a && b & a == a))
            .collect();
        let inter = maximal.iter().fold((1u32 << n) - 1, |acc, &m| acc & m);
        (0..n as u32).filter(|&i| inter >> i & 1 == 1).collect()
    }

    #[test]
    fn zmod4_basics() {
        let r = ring(RingSpec::zmod(4));
        assert_eq!(r.size(), 4);
        assert_eq!(r.characteristic(), 4);
        assert_eq!(r.units(), vec![RingElem(1), RingElem(3)]);
        let (j, f) = r.jacobson_radical().unwrap();
        assert_eq!(j, vec![RingElem(0), RingElem(2)]);
        assert_eq!(f, 2);
        assert!(r.is_local().unwrap());
    }

    #[test]
    fn matrix_ring_is_noncommutative_semisimple() {
        let r = ring(RingSpec::matrix(2, RingSpec::zmod(2)));
        assert_eq!(r.size(), 16);
        assert!(!r.is_commutative());
        assert_eq!(r.units().len(), 6);
        let (j, f) = r.jacobson_radical().unwrap();
        assert_eq!(j, vec![RingElem(0)]);
        assert_eq!(f, 1);
        assert!(!r.is_local().unwrap());
        r.audit().unwrap();
    }

    #[test]
    fn matrix_units_match_determinant_oracle() {
        let r = ring(RingSpec::matrix(2, RingSpec::zmod(3)));
        // det != 0 over F_3
        let by_det: Vec<RingElem> = r
            .elements()
            .filter(|&x| {
                let c = r.coords(x);
                !(c[0] * c[3] + 9 - (c[1] * c[2]) % 3).is_multiple_of(3)
            })
            .collect();
        assert_eq!(r.units(), by_det);
        assert_eq!(by_det.len(), 48);
    }

    #[test]
    fn gf4_every_nonzero_is_unit() {
        let r = ring(RingSpec::poly_quot(2, vec![1, 1, 1]));
        assert_eq!(r.size(), 4);
        assert_eq!(r.units().len(), 3);
        assert!(r.is_commutative());
        r.audit().unwrap();
    }

    #[test]
    fn reducible_modulus_names_factor() {
        let err = Ring::build(&RingSpec::poly_quot(2, vec![1, 0, 1])).unwrap_err();
        match err {
            GlabError::ReducibleModulus { factor, .. } => assert_eq!(factor, "x+1"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Ring::build(&RingSpec::poly_quot(2, vec![0, 1, 1])).is_err());
        assert!(Ring::build(&RingSpec::poly_quot(4, vec![1, 1, 1])).is_err());
        assert!(Ring::build(&RingSpec::poly_quot(2, vec![1, 1, 0])).is_err());
    }

    #[test]
    fn chain_ring_radical() {
        let r = ring(RingSpec::truncated_poly(2, 2).unwrap());
        let (j, f) = r.jacobson_radical().unwrap();
        // x is the second coordinate: index 2
        assert_eq!(j, vec![RingElem(0), RingElem(2)]);
        assert_eq!(f, 2);
        assert!(r.is_local().unwrap());
    }

    #[test]
    fn product_is_not_local() {
        let r = ring(RingSpec::Product(vec![
            RingSpec::zmod(2),
            RingSpec::zmod(2),
        ]));
        assert!(!r.is_local().unwrap());
        assert_eq!(r.one(), RingElem(3));
    }

    #[test]
    fn radical_matches_maximal_ideal_oracle() {
        let specs = vec![
            RingSpec::zmod(4),
            RingSpec::zmod(8),
            RingSpec::zmod(6),
            RingSpec::zmod(12),
            RingSpec::truncated_poly(2, 2).unwrap(),
            RingSpec::truncated_poly(2, 3).unwrap(),
            RingSpec::upper_triangular(2, 2).unwrap(),
            RingSpec::matrix(2, RingSpec::zmod(2)),
            RingSpec::Product(vec![RingSpec::zmod(2), RingSpec::zmod(4)]),
            RingSpec::poly_quot(2, vec![1, 1, 1]),
        ];
        for spec in specs {
            let r = ring(spec.clone());
            let (j, _) = r.jacobson_radical().unwrap();
            let j: Vec<u32> = j.iter().map(|x| x.0).collect();
            assert_eq!(j, radical_by_maximal_right_ideals(&r), "{spec}");
        }
    }

    #[test]
    fn frobenius_classification_on_fixtures() {
        let yes = vec![
            RingSpec::zmod(4),
            RingSpec::zmod(6),
            RingSpec::poly_quot(2, vec![1, 1, 1]),
            RingSpec::truncated_poly(2, 2).unwrap(),
            RingSpec::matrix(2, RingSpec::zmod(2)),
        ];
        for spec in yes {
            assert_eq!(
                ring(spec.clone()).is_frobenius(256).is_frobenius(),
                Some(true),
                "{spec}"
            );
        }
        let ut = ring(RingSpec::upper_triangular(2, 2).unwrap());
        assert_eq!(ut.size(), 8);
        assert_eq!(ut.is_frobenius(256), FrobeniusStatus::NotFrobenius);
        let big = ring(RingSpec::zmod(1000));
        assert!(matches!(
            big.is_frobenius(256),
            FrobeniusStatus::Undecided { .. }
        ));
    }

    #[test]
    fn zmod4_character_witness() {
        let r = ring(RingSpec::zmod(4));
        let FrobeniusStatus::Frobenius(chi) = r.is_frobenius(256) else {
            panic!("Z/4 is Frobenius");
        };
        assert_eq!(chi.numerators, vec![1]);
        assert_eq!(chi.value(&r, RingElem(2)), (1, 2));
        assert_eq!(chi.value(&r, RingElem(3)), (3, 4));
    }

    #[test]
    fn residue_maps() {
        let z4 = ring(RingSpec::zmod(4));
        let q = z4.radical_quotient().unwrap();
        assert_eq!(q.size(), 2);
        let res = q.as_residue().unwrap();
        assert_eq!(res.project(RingElem(3)), RingElem(1));
        assert_eq!(res.least_preimage(RingElem(1)), RingElem(1));

        let chain = ring(RingSpec::truncated_poly(2, 2).unwrap());
        let q = chain.radical_quotient().unwrap();
        assert_eq!(q.size(), 2);
        // 1 + x has coordinates (1, 1) = index 3
        assert_eq!(q.as_residue().unwrap().project(RingElem(3)), RingElem(1));

        let z2 = ring(RingSpec::zmod(2));
        let q = z2.radical_quotient().unwrap();
        let res = q.as_residue().unwrap();
        assert!(z2.elements().all(|x| res.project(x) == x));

        let m = ring(RingSpec::matrix(2, RingSpec::zmod(2)));
        assert_eq!(m.radical_quotient().unwrap_err(), GlabError::NotLocal);
    }

    #[test]
    fn residue_projection_is_surjective_homomorphism() {
        for spec in [
            RingSpec::zmod(8),
            RingSpec::zmod(9),
            RingSpec::truncated_poly(3, 2).unwrap(),
            RingSpec::matrix(1, RingSpec::zmod(4)),
        ] {
            let r = ring(spec.clone());
            let q = r.radical_quotient().unwrap();
            let res = q.as_residue().unwrap();
            let mut hit = FixedBitSet::with_capacity(q.size());
            for a in r.elements() {
                hit.insert(res.project(a).index());
                for b in r.elements() {
                    assert_eq!(
                        res.project(r.add(a, b)),
                        q.add(res.project(a), res.project(b))
                    );
                    assert_eq!(
                        res.project(r.mul(a, b)),
                        q.mul(res.project(a), res.project(b))
                    );
                }
            }
            assert_eq!(hit.count_ones(..), q.size(), "{spec}");
            // a residue field: every nonzero element is a unit
            assert_eq!(q.units().len(), q.size() - 1);
        }
    }

    #[test]
    fn radical_quotient_spec_builds() {
        let q = ring(RingSpec::RadicalQuotient(Box::new(RingSpec::zmod(9))));
        assert_eq!(q.size(), 3);
        q.audit().unwrap();
    }

    #[test]
    fn table_ring_rejects_bad_table() {
        // Z/2 additive group with the zero multiplication has no identity
        let err = Ring::build(&RingSpec::Table {
            moduli: vec![2],
            mul: vec![0, 0, 0, 0],
        })
        .unwrap_err();
        assert!(matches!(err, GlabError::RingAxiom(_)));
    }

    #[test]
    fn audits_pass_on_constructors() {
        for spec in [
            RingSpec::zmod(6),
            RingSpec::poly_quot(3, vec![1, 0, 1]),
            RingSpec::Product(vec![RingSpec::zmod(2), RingSpec::zmod(3)]),
            RingSpec::matrix(2, RingSpec::zmod(2)),
            RingSpec::upper_triangular(2, 2).unwrap(),
        ] {
            ring(spec).audit().unwrap();
        }
    }

    #[test]
    fn unit_group_closed_and_radical_absorbs() {
        for spec in [
            RingSpec::zmod(12),
            RingSpec::matrix(2, RingSpec::zmod(2)),
            RingSpec::upper_triangular(2, 2).unwrap(),
        ] {
            let r = ring(spec);
            let units = r.units();
            assert!(units.contains(&r.one()));
            for &a in &units {
                for &b in &units {
                    assert!(units.contains(&r.mul(a, b)));
                }
            }
            let (j, _) = r.jacobson_radical().unwrap();
            for &x in &j {
                for a in r.elements() {
                    for b in r.elements() {
                        assert!(j.contains(&r.mul(r.mul(a, x), b)));
                    }
                }
            }
        }
    }
}
