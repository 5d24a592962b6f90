use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a taxa set needs at least 3 taxa, got {0}")]
    TooFewTaxa(usize),
    #[error("duplicate taxon label `{0}`")]
    DuplicateTaxon(String),
    #[error("taxon labels must be non-empty")]
    EmptyTaxonLabel,
    #[error("unknown taxon `{0}`")]
    UnknownTaxon(String),
    #[error("taxon index {index} out of range for {n} taxa")]
    TaxonOutOfRange { index: usize, n: usize },
    #[error("a split side must be a non-empty proper subset of the taxa")]
    DegenerateSplit,
    #[error("operands range over different taxa sets")]
    TaxaMismatch,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("split {split} cuts partition block {block}")]
    SplitCutsBlock { split: String, block: String },
    #[error("circular ordering must contain every taxon exactly once")]
    InvalidOrdering,
    #[error("adjacent-pair system needs at least 4 taxa; on 3 taxa every 2-split is trivial")]
    AdjacentPairsNeedFourTaxa,
    #[error("intersections are only defined for two distinct splits")]
    IdenticalSplits,
    #[error("I-intersection requires an incompatible pair")]
    CompatiblePair,
    #[error("closure exceeded the cap of {cap} splits")]
    ClosureCap { cap: usize },
    #[error("invalid network: {0}")]
    Network(String),
    #[error("network is not 1-nested")]
    NotOneNested,
    #[error("network is not maximal partially-resolved: {0}")]
    NotPartiallyResolved(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("split system is not compatible: {0} and {1} conflict")]
    NotCompatible(String, String),
    #[error("split system lacks the trivial split of taxon `{0}`")]
    MissingTrivialSplit(String),
    #[error("split system is not maximal circular: {0}")]
    NotMaximalCircular(String),
    #[error("split system is not circular: {0}")]
    NotCircular(String),
    #[error("Buneman graph exceeded {limit} vertices (explored {vertices} vertices, {edges} edges)")]
    VertexCap {
        limit: usize,
        vertices: usize,
        edges: usize,
    },
    #[error("vertex is not in the Buneman graph")]
    NotAVertex,
    #[error("block {0} is a cut-edge and carries no marguerite")]
    CutEdgeBlock(usize),
    #[error("oracle input too large: {0}")]
    OracleTooLarge(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by a configured size limit rather than bad input.
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            Error::ClosureCap { .. } | Error::VertexCap { .. } | Error::OracleTooLarge(_)
        )
    }

    /// True when the error encodes a negative answer to a decision question.
    pub fn is_negative_decision(&self) -> bool {
        matches!(self, Error::NotCircular(_) | Error::NotMaximalCircular(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
