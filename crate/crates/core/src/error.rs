use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^63")]
    InvalidPrime(u64),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("operands live over different prime fields")]
    FieldMismatch,

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is not invertible")]
    Singular,

    #[error("cannot sample from an empty affine space")]
    EmptySpace,

    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("bipartition {0} does not have equal alternating sums")]
    NotInQPrime(String),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("permutation {0} is not of the form sigma * w0 with sigma a fixed-point-free involution")]
    NotInR(String),

    #[error("subset {alpha:?} is not closed for {w}")]
    NotWClosed { w: String, alpha: Vec<usize> },

    #[error("cannot parse orbit parameter {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("gram matrix is not skew-symmetric")]
    NotSkew,

    #[error("rank grid is inconsistent with every permutation in R_2n")]
    InconsistentRanks,

    #[error("membership grid is inconsistent with every orbit parameter")]
    InconsistentMembership,

    #[error("no representative found for {0} within the search budget")]
    RepresentativeSearchFailed(String),

    #[error("partition recursion produced an invalid part sequence: {0}")]
    InvalidRecursion(String),

    #[error("endomorphism is not self-adjoint for the symplectic form")]
    NotSelfAdjoint,

    #[error("enhanced label {0} is not of the doubled form (m u m; n u n)")]
    NotDuplexPattern(String),

    #[error("endomorphism does not map V_i into V_(i-1)")]
    NotFlagTriangular,

    #[error("target {target} is not in the fibre over {base}")]
    FibreMismatch { target: String, base: String },

    #[error("no majority among {samples} samples for {param} (best count {best})")]
    GenericityUnstable { param: String, samples: usize, best: usize },

    #[error("correspondence is not bijective: {0}")]
    NotBijective(String),
}
