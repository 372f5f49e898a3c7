use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlabError {
    /// Malformed ring/group description or element data.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("reducible modulus: {modulus} has factor {factor}")]
    ReducibleModulus { modulus: String, factor: String },

    #[error("group table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NonAssociative { a: usize, b: usize, c: usize },

    #[error(
        "group table is not a Latin square: row {row} repeats entry at columns {col1} and {col2}"
    )]
    NonLatin {
        row: usize,
        col1: usize,
        col2: usize,
    },

    #[error("ring axiom fails: {0}")]
    RingAxiom(String),

    #[error("residue construction requires local ring")]
    NotLocal,

    #[error("mismatched operands: {0}")]
    Mismatch(String),

    #[error("scale error: {what} has {size} elements, bound is {bound}")]
    Scale {
        what: &'static str,
        size: u128,
        bound: u128,
    },

    /// A verified identity failed. This would falsify a proven statement, so
    /// the instance is carried along for reproduction.
    #[error("internal falsification in {check}: {detail}")]
    Falsified { check: &'static str, detail: String },
}

pub type Result<T> = std::result::Result<T, GlabError>;

pub(crate) fn falsified(check: &'static str, detail: impl Into<String>) -> GlabError {
    GlabError::Falsified {
        check,
        detail: detail.into(),
    }
}
