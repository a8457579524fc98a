use thiserror::Error;

pub type Result<T, E = ComplexError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(u32),
    #[error("edge references undeclared vertex {0}")]
    DanglingEdge(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(String),
    #[error("vertex map has {got} entries, complex has {expected} vertices")]
    NotTotal { expected: usize, got: usize },
    #[error("vertex map is not a bijection")]
    NotBijective,
    #[error("vertex map is not an automorphism")]
    NotAutomorphism,
    #[error("an exchange needs two distinct vertices, got {0} twice")]
    SameVertex(u32),
    #[error("vertices {0} and {1} are not exchangeable")]
    NotExchangeable(u32, u32),
    #[error("vertex {0} appears in more than one exchange pair")]
    SharedVertex(u32),
    #[error("exchange supports are incompatible at vertex {0}")]
    IncompatibleSupports(u32),
    #[error("automorphism search exceeded its budget of {0} elements")]
    BudgetExceeded(usize),
    #[error("subgroup element is not in the ambient group")]
    NotSubgroup,
    #[error("subset index {index} out of range for exchange set of size {size}")]
    SubsetOutOfRange { index: usize, size: usize },
    #[error("malformed complex: {0}")]
    Malformed(String),
}
