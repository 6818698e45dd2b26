use thiserror::Error;

use crate::elem::Element;
use crate::oracle::VersionId;

/// Errors surfaced by the library.
///
/// Infeasibility of an application problem (e.g. a graph with no k disjoint
/// spanning trees) is *not* an error; solvers report it as a regular outcome.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unknown version {0:?}")]
    UnknownVersion(VersionId),
    #[error("element {0:?} already present in the set")]
    ElementAlreadyPresent(Element),
    #[error("element {0:?} not present in the set")]
    ElementAbsent(Element),
    #[error("element {0:?} outside the ground set")]
    ElementOutOfGroundSet(Element),
    #[error("malformed instance: {0}")]
    MalformedInstance(String),
    #[error("vertex degree precondition violated: {0}")]
    DegreePreconditionViolated(String),
    #[error("tree variant does not match the given X: {0}")]
    VariantSetMismatch(String),
    #[error("element {0:?} is on the wrong side of S for this tree variant")]
    WrongSideElement(Element),
    #[error("element {0:?} is not in the tree's X")]
    ElementNotInX(Element),
    #[error("element {0:?} is already in the tree's X")]
    ElementAlreadyInX(Element),
    #[error("update would make the maintained set dependent")]
    ResultingSetDependent,
    #[error("the given set is not independent in both matroids")]
    NotCommonIndependent,
    #[error("matroids are defined over different ground sets ({0} vs {1})")]
    GroundSetMismatch(usize, usize),
    #[error("ground set of size {0} is too large for brute force (max {1})")]
    GroundSetTooLarge(usize, usize),
    #[error("weights must be pairwise distinct")]
    DuplicateWeights,
    #[error("element {0:?} already present in the block structure")]
    ElementPresent(Element),
    #[error("packing is undefined for a rank-0 matroid")]
    ZeroRankMatroid,
    #[error("element {0:?} is a loop (its singleton is dependent); covering is impossible")]
    LoopElement(Element),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
