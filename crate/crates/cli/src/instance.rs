//! Instance files: one `key = value` per line, `#` comments.
//!
//! ```text
//! ring = matrix(2, zmod(2))
//! group = cyclic(3)
//! bound = 4096
//! census_bound = 256
//! elem e = [0, 1, 1]
//! elem f = complement(e)
//! ideal C = span_right(e)
//! ideal D = span_right(f)
//! ```

use std::collections::HashMap;

use glab_core::galg::Idx;
use glab_core::{AlgElem, GlabError, GroupAlgebra, GroupSpec, RingSpec, Side, SidedIdeal};

use crate::expr::{self, Expr};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Elem,
    Ideal,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub source: String,
    pub ring: RingSpec,
    pub group: Option<GroupSpec>,
    pub bound: Option<usize>,
    pub census_bound: Option<usize>,
    /// Named definitions in file order.
    defs: Vec<(String, Kind, Expr)>,
}

fn err(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError {
        line,
        msg: msg.into(),
    }
}

fn int_arg(e: &Expr, what: &str) -> Result<i64, String> {
    match e {
        Expr::Int(v) => Ok(*v),
        other => Err(format!("{what}: expected an integer, found {other}")),
    }
}

fn uint_arg(e: &Expr, what: &str) -> Result<u32, String> {
    let v = int_arg(e, what)?;
    u32::try_from(v).map_err(|_| format!("{what}: {v} out of range"))
}

fn int_list(e: &Expr, what: &str) -> Result<Vec<u32>, String> {
    match e {
        Expr::List(xs) => xs.iter().map(|x| uint_arg(x, what)).collect(),
        other => Err(format!("{what}: expected a list, found {other}")),
    }
}

fn arity(name: &str, args: &[Expr], n: usize) -> Result<(), String> {
    if args.len() != n {
        return Err(format!("{name} takes {n} argument(s), got {}", args.len()));
    }
    Ok(())
}

pub fn ring_spec(e: &Expr) -> Result<RingSpec, String> {
    let Expr::Call(name, args) = e else {
        return Err(format!("expected a ring, found {e}"));
    };
    let spec = match name.as_str() {
        "zmod" => {
            arity(name, args, 1)?;
            RingSpec::zmod(uint_arg(&args[0], "zmod")?)
        }
        "polyquot" => {
            arity(name, args, 2)?;
            RingSpec::poly_quot(
                uint_arg(&args[0], "polyquot")?,
                int_list(&args[1], "polyquot")?,
            )
        }
        "matrix" => {
            arity(name, args, 2)?;
            RingSpec::matrix(uint_arg(&args[0], "matrix")? as usize, ring_spec(&args[1])?)
        }
        "product" => {
            if args.is_empty() {
                return Err("product needs at least one factor".into());
            }
            RingSpec::Product(args.iter().map(ring_spec).collect::<Result<_, _>>()?)
        }
        "radical_quotient" => {
            arity(name, args, 1)?;
            RingSpec::RadicalQuotient(Box::new(ring_spec(&args[0])?))
        }
        "truncated" => {
            arity(name, args, 2)?;
            RingSpec::truncated_poly(
                uint_arg(&args[0], "truncated")?,
                uint_arg(&args[1], "truncated")? as usize,
            )
            .map_err(|e| e.to_string())?
        }
        "upper_triangular" => {
            arity(name, args, 2)?;
            RingSpec::upper_triangular(
                uint_arg(&args[0], "upper_triangular")? as usize,
                uint_arg(&args[1], "upper_triangular")?,
            )
            .map_err(|e| e.to_string())?
        }
        // structure constants: coordinates of b_i * b_j, row-major in (i, j)
        "basis" => {
            arity(name, args, 2)?;
            let moduli = int_list(&args[0], "basis moduli")?;
            let Expr::List(rows) = &args[1] else {
                return Err("basis: expected a list of products".into());
            };
            let products: Vec<Vec<u32>> = rows
                .iter()
                .map(|r| int_list(r, "basis product"))
                .collect::<Result<_, _>>()?;
            RingSpec::from_structure_constants(moduli, &products).map_err(|e| e.to_string())?
        }
        // full multiplication table over element indices
        "table" => {
            arity(name, args, 2)?;
            RingSpec::Table {
                moduli: int_list(&args[0], "table moduli")?,
                mul: int_list(&args[1], "table")?,
            }
        }
        other => return Err(format!("unknown ring constructor '{other}'")),
    };
    Ok(spec)
}

pub fn group_spec(e: &Expr) -> Result<GroupSpec, String> {
    let Expr::Call(name, args) = e else {
        return Err(format!("expected a group, found {e}"));
    };
    let one = |what: &str| -> Result<usize, String> {
        arity(name, args, 1)?;
        Ok(uint_arg(&args[0], what)? as usize)
    };
    let spec = match name.as_str() {
        "cyclic" => GroupSpec::Cyclic(one("cyclic")?),
        "dihedral" => GroupSpec::Dihedral(one("dihedral")?),
        "symmetric" => GroupSpec::Symmetric(one("symmetric")?),
        "product" => {
            if args.is_empty() {
                return Err("product needs at least one factor".into());
            }
            GroupSpec::Product(args.iter().map(group_spec).collect::<Result<_, _>>()?)
        }
        "cayley" => {
            arity(name, args, 1)?;
            let Expr::List(rows) = &args[0] else {
                return Err("cayley: expected a list of rows".into());
            };
            let table = rows
                .iter()
                .map(|r| {
                    int_list(r, "cayley row").map(|v| v.into_iter().map(|x| x as usize).collect())
                })
                .collect::<Result<_, _>>()?;
            GroupSpec::Cayley(table)
        }
        other => return Err(format!("unknown group constructor '{other}'")),
    };
    Ok(spec)
}

/// Names referenced by an element or ideal expression.
fn references(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Name(n) => out.push(n.clone()),
        Expr::List(xs) | Expr::Call(_, xs) => xs.iter().for_each(|x| references(x, out)),
        Expr::Int(_) => {}
    }
}

const ELEM_KEYWORDS: [&str; 2] = ["one", "zero"];
const IDEAL_KEYWORDS: [&str; 2] = ["whole", "nothing"];

impl Instance {
    pub fn parse(source: &str) -> Result<Instance, ParseError> {
        let mut ring = None;
        let mut group = None;
        let mut bound = None;
        let mut census_bound = None;
        let mut defs: Vec<(String, Kind, Expr)> = Vec::new();
        for (k, raw) in source.lines().enumerate() {
            let line = k + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let (lhs, rhs) = text
                .split_once('=')
                .ok_or_else(|| err(line, "expected 'key = value'"))?;
            let words: Vec<&str> = lhs.split_whitespace().collect();
            let value = expr::parse(rhs.trim()).map_err(|m| err(line, m))?;
            match words.as_slice() {
                ["ring"] => {
                    if ring.is_some() {
                        return Err(err(line, "duplicate key 'ring'"));
                    }
                    ring = Some(ring_spec(&value).map_err(|m| err(line, m))?);
                }
                ["group"] => {
                    if group.is_some() {
                        return Err(err(line, "duplicate key 'group'"));
                    }
                    group = Some(group_spec(&value).map_err(|m| err(line, m))?);
                }
                [key @ ("bound" | "census_bound")] => {
                    let slot = if *key == "bound" {
                        &mut bound
                    } else {
                        &mut census_bound
                    };
                    if slot.is_some() {
                        return Err(err(line, format!("duplicate key '{key}'")));
                    }
                    let v = int_arg(&value, key).map_err(|m| err(line, m))?;
                    *slot =
                        Some(usize::try_from(v).map_err(|_| err(line, "bound must be positive"))?);
                }
                [kind @ ("elem" | "ideal"), name] => {
                    let kind = if *kind == "elem" {
                        Kind::Elem
                    } else {
                        Kind::Ideal
                    };
                    if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                        || name.starts_with(|c: char| c.is_ascii_digit())
                    {
                        return Err(err(line, format!("bad name '{name}'")));
                    }
                    if defs.iter().any(|(n, _, _)| n == name)
                        || ELEM_KEYWORDS.contains(name)
                        || IDEAL_KEYWORDS.contains(name)
                    {
                        return Err(err(line, format!("'{name}' is already defined")));
                    }
                    let mut refs = Vec::new();
                    references(&value, &mut refs);
                    for r in refs {
                        let known = defs.iter().any(|(n, _, _)| *n == r)
                            || ELEM_KEYWORDS.contains(&r.as_str())
                            || IDEAL_KEYWORDS.contains(&r.as_str());
                        if !known {
                            return Err(err(line, format!("'{r}' is used before it is defined")));
                        }
                    }
                    defs.push((name.to_string(), kind, value));
                }
                _ => return Err(err(line, format!("unknown key '{}'", lhs.trim()))),
            }
        }
        let ring = ring.ok_or_else(|| err(0, "missing 'ring'"))?;
        Ok(Instance {
            source: source.to_string(),
            ring,
            group,
            bound,
            census_bound,
            defs,
        })
    }
}

/// Errors while evaluating definitions against a materialized algebra.
#[derive(Debug)]
pub enum EvalError {
    Usage(String),
    Core(GlabError),
}

impl From<GlabError> for EvalError {
    fn from(e: GlabError) -> Self {
        EvalError::Core(e)
    }
}

/// Definitions evaluated against one algebra.
pub struct Env<'a> {
    alg: &'a GroupAlgebra,
    inst: &'a Instance,
    elems: HashMap<String, AlgElem>,
    ideals: HashMap<String, SidedIdeal>,
}

impl<'a> Env<'a> {
    /// Elements are evaluated eagerly; ideals on first use, since they need
    /// the materialized index space.
    pub fn new(alg: &'a GroupAlgebra, inst: &'a Instance) -> Result<Env<'a>, EvalError> {
        let mut env = Env {
            alg,
            inst,
            elems: HashMap::new(),
            ideals: HashMap::new(),
        };
        for (name, kind, value) in &inst.defs {
            if *kind == Kind::Elem {
                let v = env.elem(value)?;
                env.elems.insert(name.clone(), v);
            }
        }
        Ok(env)
    }

    fn coefficient(&self, e: &Expr) -> Result<glab_core::RingElem, EvalError> {
        let ring = self.alg.ring();
        match e {
            Expr::Int(v) => Ok(ring.from_int(*v)),
            Expr::List(_) => {
                let coords = int_list(e, "coefficient").map_err(EvalError::Usage)?;
                Ok(ring.from_coords(&coords)?)
            }
            other => Err(EvalError::Usage(format!("bad coefficient {other}"))),
        }
    }

    pub fn elem(&self, e: &Expr) -> Result<AlgElem, EvalError> {
        let a = self.alg;
        let unary = |name: &str, args: &[Expr]| -> Result<AlgElem, EvalError> {
            arity(name, args, 1).map_err(EvalError::Usage)?;
            self.elem(&args[0])
        };
        match e {
            Expr::List(xs) => {
                let coeffs = xs
                    .iter()
                    .map(|x| self.coefficient(x))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(a.element(coeffs)?)
            }
            Expr::Name(n) if n == "one" => Ok(a.one()),
            Expr::Name(n) if n == "zero" => Ok(a.zero()),
            Expr::Name(n) => self
                .elems
                .get(n)
                .cloned()
                .ok_or_else(|| EvalError::Usage(format!("'{n}' is not an element"))),
            Expr::Call(name, args) => match name.as_str() {
                "complement" => Ok(a.sub(&a.one(), &unary(name, args)?)),
                "adjoint" => Ok(a.adjoint(&unary(name, args)?)),
                "neg" => Ok(a.neg(&unary(name, args)?)),
                "add" | "mul" | "sub" => {
                    arity(name, args, 2).map_err(EvalError::Usage)?;
                    let (x, y) = (self.elem(&args[0])?, self.elem(&args[1])?);
                    Ok(match name.as_str() {
                        "add" => a.add(&x, &y),
                        "sub" => a.sub(&x, &y),
                        _ => a.mul(&x, &y),
                    })
                }
                "basis" => {
                    arity(name, args, 1).map_err(EvalError::Usage)?;
                    let g = uint_arg(&args[0], "basis").map_err(EvalError::Usage)? as usize;
                    if g >= a.degree() {
                        return Err(EvalError::Usage(format!("group element {g} out of range")));
                    }
                    Ok(a.basis(g))
                }
                other => Err(EvalError::Usage(format!(
                    "unknown element operation '{other}'"
                ))),
            },
            Expr::Int(_) => Err(EvalError::Usage(format!("expected an element, found {e}"))),
        }
    }

    fn ideal_expr(&mut self, e: &Expr) -> Result<SidedIdeal, EvalError> {
        let a = self.alg;
        match e {
            Expr::Name(n) if n == "whole" => Ok(a.whole(Side::Right)?),
            Expr::Name(n) if n == "nothing" => Ok(a.zero_ideal(Side::Right)?),
            Expr::Name(n) => self.ideal(n),
            Expr::Call(name, args) => match name.as_str() {
                "span_right" | "span_left" => {
                    let side = if name == "span_right" {
                        Side::Right
                    } else {
                        Side::Left
                    };
                    let gens: Vec<Idx> = args
                        .iter()
                        .map(|x| self.elem(x).map(|v| a.encode(&v)))
                        .collect::<Result<_, _>>()?;
                    a.require("group algebra", a.bounds().op)?;
                    Ok(a.close(&gens, side)?)
                }
                "dual" | "ann_left" | "ann_right" => {
                    arity(name, args, 1).map_err(EvalError::Usage)?;
                    let inner = self.ideal_expr(&args[0])?;
                    Ok(match name.as_str() {
                        "dual" => a.dual(&inner)?,
                        "ann_left" => a.ann_left(&inner)?,
                        _ => a.ann_right(&inner)?,
                    })
                }
                other => Err(EvalError::Usage(format!(
                    "unknown ideal operation '{other}'"
                ))),
            },
            other => Err(EvalError::Usage(format!(
                "expected an ideal, found {other}"
            ))),
        }
    }

    pub fn ideal(&mut self, name: &str) -> Result<SidedIdeal, EvalError> {
        if let Some(i) = self.ideals.get(name) {
            return Ok(i.clone());
        }
        let inst = self.inst;
        let (_, kind, value) = inst
            .defs
            .iter()
            .find(|(n, _, _)| n == name)
            .ok_or_else(|| EvalError::Usage(format!("no ideal named '{name}'")))?;
        if *kind != Kind::Ideal {
            return Err(EvalError::Usage(format!(
                "'{name}' is an element, not an ideal"
            )));
        }
        let i = self.ideal_expr(value)?;
        self.ideals.insert(name.to_string(), i.clone());
        Ok(i)
    }
}
