use crate::kernel::Rational;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the zero vector has no primitive form")]
    ZeroVector,
    #[error("polynomials have {left} and {right} variables")]
    VariableMismatch { left: usize, right: usize },

    #[error("conormal of facet {facet} is not a primitive nonzero integer vector")]
    NotPrimitive { facet: usize },
    #[error("too many facets: {0} (limit {limit})", limit = crate::kernel::MAX_VARS)]
    TooManyFacets(usize),
    #[error("the polytope is empty")]
    Empty,
    #[error("the polytope is unbounded")]
    Unbounded,
    #[error("non-simple vertex: facets {facets:?} are all active at one point")]
    NonSimple { facets: Vec<usize> },
    #[error("half-space {facet} is redundant")]
    Redundant { facet: usize },
    #[error("not smooth: conormals {basis:?} at a vertex have determinant {det}")]
    NotSmooth { basis: Vec<usize>, det: Rational },
    #[error("the polytope has zero volume")]
    ZeroVolume,

    #[error("H is not mass linear")]
    NotMassLinear,
    #[error("face {0:?} is not symmetric")]
    NotSymmetricFace(Vec<usize>),
    #[error("facets {0:?} are pairwise equivalent but fail the class codimension condition")]
    InconsistentClass(Vec<usize>),
    #[error("{0:?} is not an equivalence class")]
    NotAClass(Vec<usize>),

    #[error("support numbers lie outside the chamber: {0}")]
    NotInChamber(String),
    #[error("facets {0:?} do not meet in a face")]
    NotAFace(Vec<usize>),
    #[error("face {0:?} has codimension below two")]
    CodimensionTooSmall(Vec<usize>),
    #[error("blowup size {eps} is not below the admissible bound {bound}")]
    EpsilonTooLarge { eps: Box<Rational>, bound: Box<Rational> },
    #[error("blowup size must be positive, got {0}")]
    EpsilonNotPositive(Rational),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("expected dimension {expected}, found {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::ZeroVector => "zero_vector",
            Error::VariableMismatch { .. } => "variable_mismatch",
            Error::NotPrimitive { .. } => "not_primitive",
            Error::TooManyFacets(_) => "too_many_facets",
            Error::Empty => "empty",
            Error::Unbounded => "unbounded",
            Error::NonSimple { .. } => "non_simple",
            Error::Redundant { .. } => "redundant",
            Error::NotSmooth { .. } => "not_smooth",
            Error::ZeroVolume => "zero_volume",
            Error::NotMassLinear => "not_mass_linear",
            Error::NotSymmetricFace(_) => "not_symmetric_face",
            Error::InconsistentClass(_) => "inconsistent_class",
            Error::NotAClass(_) => "not_a_class",
            Error::NotInChamber(_) => "not_in_chamber",
            Error::NotAFace(_) => "not_a_face",
            Error::CodimensionTooSmall(_) => "codimension_too_small",
            Error::EpsilonTooLarge { .. } => "epsilon_too_large",
            Error::EpsilonNotPositive(_) => "epsilon_not_positive",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::WrongDimension { .. } => "wrong_dimension",
            Error::Precondition(_) => "precondition",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
