use alloc::string::String;
use core::fmt;

/// Errors shared across the crate.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Dimension outside `1..=MAX_DIM`.
    DimOutOfRange(u32),
    /// Two objects built over different cube dimensions were combined.
    DimMismatch { left: u32, right: u32 },
    /// Vertex index not below `2^n`.
    VertexOutOfRange { index: u64, n: u32 },
    /// Coordinate index not below `n`.
    CoordinateOutOfRange { coordinate: u32, n: u32 },
    /// The sets were required to be disjoint but overlap.
    NotDisjoint,
    /// The given sets do not partition the vertex set.
    NotAPartition,
    /// Bitmask string could not be parsed.
    BadMask(String),
    /// A permutation passed as an automorphism is not a bijection on `[n]`.
    BadPermutation,
    /// Probability vector entries invalid (negative, or sum far from 1).
    BadProbabilityVector,
    /// Bias entries must lie strictly inside (0, 1).
    BadBias,
    /// A `FunctionalSpec` violates its invariants.
    BadFunctionalSpec(&'static str),
    /// Set size outside the valid range for the requested operation.
    SizeOutOfRange { size: u64, n: u32 },
    /// Exhaustive scan requested beyond the supported dimension cap.
    ScanTooLarge { n: u32, cap: u32, flagged_cap: u32 },
    /// Stability hypotheses fail at every epsilon up to the configured cap.
    HypothesesNotMet { required_epsilon: f64, cap: f64 },
    /// Subcube recovery found no single dominant subcube.
    AmbiguousSubcube { dominant: usize },
    /// Search configuration invalid.
    BadSearchConfig(&'static str),
    /// Objective constraint violated by the supplied partition.
    ConstraintViolated(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimOutOfRange(n) => write!(f, "dimension {n} outside 1..={}", crate::cube::MAX_DIM),
            Error::DimMismatch { left, right } => write!(f, "dimension mismatch: {left} vs {right}"),
            Error::VertexOutOfRange { index, n } => write!(f, "vertex {index} out of range for Q_{n}"),
            Error::CoordinateOutOfRange { coordinate, n } => {
                write!(f, "coordinate {coordinate} out of range for Q_{n}")
            }
            Error::NotDisjoint => write!(f, "sets must be disjoint"),
            Error::NotAPartition => write!(f, "sets do not partition the cube"),
            Error::BadMask(s) => write!(f, "bad vertex-set mask: {s}"),
            Error::BadPermutation => write!(f, "permutation is not a bijection"),
            Error::BadProbabilityVector => write!(f, "invalid probability vector"),
            Error::BadBias => write!(f, "bias entries must lie in (0,1)"),
            Error::BadFunctionalSpec(why) => write!(f, "invalid functional spec: {why}"),
            Error::SizeOutOfRange { size, n } => write!(f, "set size {size} invalid for Q_{n}"),
            Error::ScanTooLarge { n, cap, flagged_cap } => write!(
                f,
                "exhaustive scan at n={n} unsupported (cap {cap}, {flagged_cap} behind --flag-large-n)"
            ),
            Error::HypothesesNotMet { required_epsilon, cap } => write!(
                f,
                "stability hypotheses need epsilon {required_epsilon} > cap {cap}"
            ),
            Error::AmbiguousSubcube { dominant } => {
                write!(f, "subcube recovery ambiguous: {dominant} dominant subcubes")
            }
            Error::BadSearchConfig(why) => write!(f, "invalid search config: {why}"),
            Error::ConstraintViolated(why) => write!(f, "objective constraint violated: {why}"),
        }
    }
}

impl core::error::Error for Error {}
