use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: usize, vertex: usize },

    #[error("edge {edge} references vertex {vertex}, but the graph has {n} vertices")]
    DanglingVertex { edge: usize, vertex: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} exceeds the size cap ({size} > {cap})")]
    SizeCap { what: &'static str, size: u128, cap: u128 },

    #[error("function has {got} entries, expected {expected}")]
    NotTotal { got: usize, expected: usize },

    #[error("edge map does not fit the graphs: {0}")]
    GraphMismatch(String),

    #[error("spanning forest does not span the graph: {0}")]
    NotSpanning(String),

    #[error("{op} depends on edge orientation; undirected graphs are only accepted over Z_1 or Z_2")]
    OrientationSensitive { op: &'static str },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
