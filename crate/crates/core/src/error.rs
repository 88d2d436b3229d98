use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("graph has star number 0; directories require at least one edge")]
    StarNumberZero,

    #[error("vertex set is not an independent dominating set: {0}")]
    NotADirectoryBase(String),

    #[error("subset is not contained in the directory")]
    NotInDirectory,

    #[error("vertex {0} has no neighbour in the directory and is not in it")]
    Undominated(usize),

    #[error("partial map assigns source vertex {0} twice")]
    DuplicateSource(usize),

    #[error("seed is not a local homomorphism: {0}")]
    SeedNotLocalMorphism(String),

    #[error("order {order} exceeds the limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("cone and co-cone sets overlap at vertex {0}")]
    OverlappingSets(usize),

    #[error("budget {budget} exhausted at requirement cone={cone:?} cocone={cocone:?}{}", if *.proven_absent { " (no witness exists)" } else { "" })]
    BudgetExhausted {
        cone: Vec<usize>,
        cocone: Vec<usize>,
        budget: usize,
        proven_absent: bool,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
