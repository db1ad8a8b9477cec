use thiserror::Error;

/// Crate-wide error type; variants carry the messages the operations promise.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("empty input")]
    EmptyInput,
    #[error("empty arc")]
    EmptyArc,
    #[error("not a Jordan curve: {0}")]
    NotJordan(String),
    #[error("degenerate split")]
    DegenerateSplit,
    #[error("self-intersecting trace; increase n")]
    SelfIntersectingTrace,
    #[error("k out of table range")]
    KOutOfRange,
    #[error("curve appears not locally connected at resolution")]
    NotLocallyConnected,
    #[error("theorem hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("candidate sets intersect")]
    CandidateSetsIntersect,
    #[error("degenerate region")]
    DegenerateRegion,
    #[error("annulus too thin for radius")]
    AnnulusTooThin,
    #[error("outside closed disk")]
    OutsideClosedDisk,
    #[error("not in domain")]
    NotInDomain,
    #[error("unsupported epsilon")]
    UnsupportedEpsilon,
    #[error("MLC table does not cover k")]
    TableDoesNotCover,
    #[error("soundness violation")]
    SoundnessViolation,
    #[error("cannot seed component")]
    CannotSeed,
    #[error("seeded component does not reach the marked boundary point; increase grid_n")]
    ComponentDoesNotReach,
    #[error("not a crosscut")]
    NotACrosscut,
    #[error("circle does not separate")]
    CircleDoesNotSeparate,
    #[error("r0 unresolvable; increase grid_n or r0")]
    R0Unresolvable,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
