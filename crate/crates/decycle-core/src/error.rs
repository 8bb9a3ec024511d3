use core::fmt;
use core::time::Duration;

use crate::fvs::DecyclingCertificate;

/// Crate-wide error type.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A graph must have at least one vertex.
    ZeroOrder,
    /// A graph may have at most [`crate::MAX_VERTICES`] vertices.
    OrderTooLarge(usize),
    /// An operation requires a larger graph than it was given.
    OrderTooSmall { order: usize, min: usize },
    /// Cycles need at least three vertices.
    CycleOrderTooSmall(usize),
    /// A vertex index is outside the owning graph's universe.
    VertexOutOfRange { vertex: usize, order: usize },
    /// Simple graphs only: an edge endpoint repeated.
    SelfLoop(usize),
    /// An operation that requires a nonempty vertex set received an empty one.
    EmptyVertexSet,
    /// The Cartesian product would exceed the vertex cap.
    ProductTooLarge { order1: usize, order2: usize },
    /// Two layer indices that must differ coincide.
    LayerIndexClash { index: usize },
    /// The operation is defined for trees only.
    NotATree,
    /// Tree enumeration is supported for orders 1..=12.
    EnumerationOrderOutOfRange(usize),
    /// Canonical tree code bytes failed to parse.
    MalformedTreeCode { offset: usize },
    /// The exact matching routine is capped.
    MatchingOrderTooLarge { order: usize, cap: usize },
    /// The subset oracle is capped.
    OracleCapExceeded { order: usize, cap: usize },
    /// Budget limits must be positive.
    InvalidBudget,
    /// A check was invoked outside its stated hypotheses.
    PreconditionViolated(&'static str),
    /// The branch-and-reduce search ran out of nodes or time.
    BudgetExhausted(BudgetExhausted),
    /// A certificate failed its soundness check against the graph.
    InvalidCertificate(&'static str),
}

/// Payload for [`Error::BudgetExhausted`]: never silently returned as
/// optimal, but carries what the search did establish.
#[derive(Clone, Debug, PartialEq)]
pub struct BudgetExhausted {
    /// Search nodes expanded before giving up.
    pub nodes: u64,
    /// Wall time consumed, zero when no clock was supplied.
    pub elapsed: Duration,
    /// Proven lower bound on the decycling number at the time of abort.
    pub lower_bound: usize,
    /// Best feasible decycling set found, if any.
    pub incumbent: Option<DecyclingCertificate>,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroOrder => write!(f, "graph order must be at least 1"),
            Error::OrderTooLarge(n) => {
                write!(
                    f,
                    "graph order {n} exceeds the {} vertex cap",
                    crate::MAX_VERTICES
                )
            }
            Error::OrderTooSmall { order, min } => {
                write!(f, "graph order {order} is below the required minimum {min}")
            }
            Error::CycleOrderTooSmall(n) => write!(f, "cycle order {n} is below 3"),
            Error::VertexOutOfRange { vertex, order } => {
                write!(f, "vertex {vertex} out of range for order {order}")
            }
            Error::SelfLoop(v) => write!(f, "self-loop at vertex {v} rejected"),
            Error::EmptyVertexSet => write!(f, "empty vertex set rejected"),
            Error::ProductTooLarge { order1, order2 } => write!(
                f,
                "product order {}*{} exceeds the {} vertex cap",
                order1,
                order2,
                crate::MAX_VERTICES
            ),
            Error::LayerIndexClash { index } => {
                write!(f, "layer indices must be distinct, got {index} twice")
            }
            Error::NotATree => write!(f, "input graph is not a tree"),
            Error::EnumerationOrderOutOfRange(n) => {
                write!(f, "tree enumeration supports orders 1..=12, got {n}")
            }
            Error::MalformedTreeCode { offset } => {
                write!(f, "malformed tree code at byte {offset}")
            }
            Error::MatchingOrderTooLarge { order, cap } => {
                write!(f, "matching routine capped at {cap} vertices, got {order}")
            }
            Error::OracleCapExceeded { order, cap } => {
                write!(f, "subset oracle capped at {cap} vertices, got {order}")
            }
            Error::InvalidBudget => write!(f, "budget limits must be positive"),
            Error::PreconditionViolated(what) => write!(f, "precondition violated: {what}"),
            Error::BudgetExhausted(b) => write!(
                f,
                "search budget exhausted after {} nodes (proven lower bound {})",
                b.nodes, b.lower_bound
            ),
            Error::InvalidCertificate(why) => write!(f, "invalid certificate: {why}"),
        }
    }
}

impl core::error::Error for Error {}
