use thiserror::Error;

use crate::colouring::Colour;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("edge endpoint `{0}` is not a declared vertex")]
    UnknownEndpoint(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("colouring domain does not match the graph: {0}")]
    DomainMismatch(String),
    #[error("colour {colour} is not below alpha {alpha}")]
    ColourOutOfRange { colour: Colour, alpha: Colour },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("invalid two-star sets: {0}")]
    InvalidSets(String),
    #[error("wrong graph variant: expected {expected}, got {found}")]
    VariantMismatch { expected: String, found: String },
    #[error("graphs were built from different family specs")]
    SpecMismatch,
    #[error("result is not a proper colouring: {0}")]
    NotProperResult(String),
    #[error("input is not a proper colouring")]
    NotProperInput,
    #[error("unsupported transfer {from} -> {to}")]
    UnsupportedPair { from: String, to: String },
    #[error("transfer lost the target property: {0}")]
    PropertyLost(String),
    #[error("colour {0} is not in the image of the colouring")]
    ColourNotInImage(Colour),
    #[error("cannot reduce colour {0} onto itself")]
    SameColour(Colour),
    #[error("chain elements do not come from the same base colouring")]
    DifferentBase,
    #[error("colouring does not satisfy {0}")]
    PropertyNotSatisfied(String),
    #[error("family is not {k}-acceptable (a set has {size} elements)")]
    NotKAcceptable { k: usize, size: usize },
    #[error("choice undefined for family {family} at level {level}")]
    ChoiceUndefined { family: usize, level: usize },
    #[error("map is not an injection into Y: {0}")]
    NotInjective(String),
    #[error("|X| = {x} exceeds |Y| = {y}")]
    SizeOrder { x: usize, y: usize },
    #[error("graph has a component isomorphic to K1 or K2")]
    K1K2Component,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
