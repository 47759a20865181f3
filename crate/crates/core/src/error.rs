use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is not in the graph (universe {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("pair endpoint {0} is not a vertex of the graph")]
    PairEndpoint(usize),
    #[error("pair ({0}, {0}) has identical endpoints")]
    SelfPair(usize),
    #[error("W is not a vertex multicut of the terminal pairs")]
    WNotMulticut,
    #[error("{what} intersects W at vertex {vertex}")]
    TouchesW { what: &'static str, vertex: usize },
    #[error("contraction target {0} is not a vertex of W")]
    TargetNotInW(usize),
    #[error("cannot delete a vertex from an instance with budget 0")]
    NoBudget,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatorError {
    #[error("source and sink sets share vertex {0}")]
    Overlap(usize),
    #[error("vertex {0} is not in W")]
    NotInW(usize),
    #[error("vertex {0} cannot be separated from the rest of W (adjacent terminal)")]
    Inseparable(usize),
    #[error("separator {0:?} lies entirely inside the avoided set")]
    SeparatorInsideAvoided(alloc::vec::Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("vertex {0} is a terminal and carries no LP variable")]
    TerminalVertex(usize),
    #[error("the LP is infeasible: two terminals are adjacent")]
    Infeasible,
    #[error("vertex {0} is a non-zero vertex")]
    NonZeroVertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShadowError {
    #[error("vertex {0} is both in Y and in W")]
    OverlapsW(usize),
    #[error("splitter needs l >= r^2 (got r = {r}, l = {l})")]
    SplitterRange { r: usize, l: usize },
    #[error("gave up planting a shadow-removable set after {0} attempts")]
    PlantingExhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("witness {0:?} failed verification against the input instance")]
    WitnessRejected(alloc::vec::Vec<usize>),
    #[error("branching depth {depth} exceeded the cap {cap}")]
    DepthExceeded { depth: usize, cap: usize },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}
