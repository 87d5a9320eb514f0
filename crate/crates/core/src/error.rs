use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("basis vectors are linearly dependent")]
    NotFullRank,
    #[error("not a sublattice: {0}")]
    NotASublattice(String),

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("weight is on the {found} side, expected {expected}")]
    WrongSide {
        expected: &'static str,
        found: &'static str,
    },
    #[error("root closure did not terminate within {bound} roots")]
    NonTerminating { bound: usize },
    #[error("Weyl group exceeds the configured bound of {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("weight {0:?} is not integral for this datum")]
    NonIntegralWeight(Vec<i64>),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("c(-1) is not central: root {root:?} pairs to {pairing}")]
    NotCentral { root: Vec<i64>, pairing: i64 },
    #[error("central element acts by different signs on weights {first:?} and {second:?}")]
    NotScalar { first: Vec<i64>, second: Vec<i64> },

    #[error("Shimura axiom violated: positive root {root:?} pairs with mu to {pairing}")]
    AxiomViolation { root: Vec<i64>, pairing: i64 },

    #[error("C-group isogeny check failed: {0}")]
    IsogenyCheckFailed(String),
    #[error("weight {0:?} does not lie in the quotient character lattice")]
    WeightNotInQuotientLattice(Vec<i64>),
    #[error("weight {0:?} has no integral coordinates in the quotient lattice basis")]
    CoordinateExpressionFailed(Vec<i64>),

    #[error("parse error in {source_name}: {message}")]
    Parse {
        source_name: String,
        message: String,
    },
    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Errors caused by the input rather than by a failed verification.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Io { .. }
                | Error::InvalidDatum(_)
                | Error::AxiomViolation { .. }
                | Error::DimensionMismatch(_)
                | Error::WrongSide { .. }
                | Error::NonTerminating { .. }
                | Error::GroupTooLarge { .. }
        )
    }
}
