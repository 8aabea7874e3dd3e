use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("matrix has non-integral entries")]
    NotIntegral,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("bracket [e{i},e{j}] has {found} coefficients, algebra has dimension {dim}")]
    VectorLength {
        i: usize,
        j: usize,
        found: usize,
        dim: usize,
    },
    #[error("bracket index pair ({i},{j}) is invalid for dimension {dim}: need 1 <= i < j <= dim")]
    BadPair { i: usize, j: usize, dim: usize },
    #[error("[e{i},e{j}] is given twice")]
    DuplicatePair { i: usize, j: usize },
    #[error("vector has length {found}, algebra has dimension {dim}")]
    Length { found: usize, dim: usize },
    #[error("ambient dimensions differ: {left} vs {right}")]
    Ambient { left: usize, right: usize },
    #[error("lower central series stalls at dimension {stalled_at}: algebra is not nilpotent")]
    NotNilpotent { stalled_at: usize },
    #[error("Jacobi identity fails on {count} basis triple(s), first ({i},{j},{k})")]
    Jacobi { count: usize, i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("span is not closed under commutator: [{0},{1}] leaves the span")]
    NotCommutatorClosed(usize, usize),
    #[error("matrix {index} is {rows}x{cols}, expected {n}x{n}")]
    MatrixShape {
        index: usize,
        rows: usize,
        cols: usize,
        n: usize,
    },
    #[error("trace-power oracle limited to dimension {max}, got {n}")]
    TooLarge { n: usize, max: usize },
    #[error("derivation space of a characteristically nilpotent algebra violates {0}")]
    Inconsistent(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalcevError {
    #[error("matrix is {rows}x{cols}, algebra has dimension {dim}")]
    Size { rows: usize, cols: usize, dim: usize },
    #[error("vector has length {found}, algebra has dimension {dim}")]
    Length { found: usize, dim: usize },
    #[error("map is not a Lie homomorphism: fails on pair ({0},{1})")]
    NotHomomorphism(usize, usize),
    #[error("map is singular")]
    Singular,
    #[error("map does not preserve the integer lattice")]
    NotLatticePreserving,
    #[error("Z^n is not closed under the group law: {0}")]
    NotLatticeClosed(String),
    #[error("basis is not adapted: [e{0},e{1}] has a component on some e_k with k <= {1}")]
    BasisNotAdapted(usize, usize),
    #[error("coset enumeration exceeded the cap of {cap} cosets")]
    BoundExceeded { cap: usize },
    #[error("dimension mismatch: source {src}, target {dst}")]
    DimensionMismatch { src: usize, dst: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry `{0}`")]
    Unknown(String),
    #[error("invalid parameters for `{name}`: {reason}")]
    Params { name: String, reason: String },
    #[error("catalog entry `{0}` is absent: no data file")]
    Absent(String),
    #[error("catalog entry `{name}` failed revalidation: {reason}")]
    Stale { name: String, reason: String },
    #[error("catalog data file for `{name}`: {source}")]
    Parse {
        name: String,
        #[source]
        source: ParseError,
    },
}

/// Parse failure with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}
