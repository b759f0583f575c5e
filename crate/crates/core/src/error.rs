use thiserror::Error;

use crate::gem::Color;

/// Errors raised while building or querying a colored graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GemError {
    #[error("OddVertexCount: {0} vertices cannot carry a perfect matching")]
    OddVertexCount(usize),
    #[error("TooFewVertices: a colored graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("TooFewColors: a colored graph needs at least 2 colors, got {0}")]
    TooFewColors(usize),
    #[error("FixedPoint: color {color} maps vertex {vertex} to itself (loop)")]
    FixedPoint { color: Color, vertex: usize },
    #[error("NotInvolution: color {color} is not an involution at vertex {vertex}")]
    NotInvolution { color: Color, vertex: usize },
    #[error("VertexOutOfRange: color {color} refers to vertex {vertex}, valid range is 1..={n}")]
    VertexOutOfRange {
        color: Color,
        vertex: usize,
        n: usize,
    },
    #[error("MissingColor: color {0} is absent or incomplete")]
    MissingColor(Color),
    #[error("ColorOutOfRange: color {color} is not in 0..{count}")]
    ColorOutOfRange { color: Color, count: usize },
    #[error("SameColor: a bi-colored cycle needs two distinct colors, got {0} twice")]
    SameColor(Color),
    #[error("EmptyColorSet: a residue needs a nonempty color set")]
    EmptyColorSet,
    #[error("SingletonColorSet: a residue needs at least 2 colors")]
    SingletonColorSet,
    #[error("Disconnected: the operation requires a connected graph")]
    Disconnected,
    #[error("PermutationColorMismatch: permutation covers {perm} colors, graph has {graph}")]
    PermutationColorMismatch { perm: usize, graph: usize },
    #[error("InvalidPermutation: {0:?} is not a permutation of 0..{len}", len = .0.len())]
    InvalidPermutation(Vec<Color>),
    #[error("WrongRank: operation needs {expected} colors, graph has {found}")]
    WrongRank { expected: usize, found: usize },
}

/// Where a text-format diagnostic points.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Invalid(#[from] GemError),
}

impl ParseError {
    pub(crate) fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }

    pub(crate) fn invalid(line: usize, column: usize, err: GemError) -> Self {
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Invalid(err),
        }
    }
}
