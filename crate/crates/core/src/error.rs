use std::fmt;

/// Errors surfaced by the algebra kernel and the scheme-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values from different variable contexts were mixed.
    ContextMismatch,
    /// A matrix operation received a matrix of the wrong shape.
    Shape(String),
    /// A square matrix was singular where invertibility is required.
    SingularMatrix,
    /// A quotient ring did not have the expected vector-space dimension.
    Dimension { expected: usize, found: usize },
    /// An ideal is not zero-dimensional where finiteness is required.
    NotZeroDimensional,
    /// The unit ideal was passed where a proper ideal is required.
    UnitIdeal,
    /// A term set is not closed under divisors; carries a missing divisor.
    NotDivisorClosed(String),
    /// No border basis exists for the requested data.
    NoBorderBasis(String),
    /// A set is not a cornercut for the given term ordering.
    NotCornercut,
    /// Requested operation is not available in the current prebasis mode.
    UnsupportedMode(String),
    /// The minimal polynomial of the chosen linear form has degree < mu.
    NotNormalPosition { degree: usize, mu: usize },
    /// A seeded search ran out of attempts.
    SearchFailure { attempts: usize, what: String },
    /// A parameter value lies outside the chart of a local parametrization.
    OutsideChart,
    /// A family was evaluated at a puncture of its domain.
    OutsideDomain,
    /// A distraction tuple is too short for the requested exponent.
    Config(String),
    /// Text input did not match the polynomial grammar.
    Parse { line: usize, col: usize, msg: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ContextMismatch => write!(f, "values belong to different variable contexts"),
            Error::Shape(msg) => write!(f, "matrix shape error: {}", msg),
            Error::SingularMatrix => write!(f, "singular matrix"),
            Error::Dimension { expected, found } => {
                write!(f, "quotient dimension {} but expected {}", found, expected)
            }
            Error::NotZeroDimensional => write!(f, "ideal is not zero-dimensional"),
            Error::UnitIdeal => write!(f, "ideal is the unit ideal"),
            Error::NotDivisorClosed(t) => {
                write!(f, "term set is not divisor-closed: missing divisor {}", t)
            }
            Error::NoBorderBasis(msg) => write!(f, "no border basis: {}", msg),
            Error::NotCornercut => write!(f, "order ideal is not a cornercut for the ordering"),
            Error::UnsupportedMode(msg) => write!(f, "unsupported mode: {}", msg),
            Error::NotNormalPosition { degree, mu } => write!(
                f,
                "linear form is not in normal position: minimal polynomial degree {} < {}",
                degree, mu
            ),
            Error::SearchFailure { attempts, what } => {
                write!(f, "search for {} failed after {} attempts", what, attempts)
            }
            Error::OutsideChart => write!(f, "point lies outside the chart (det M = 0)"),
            Error::OutsideDomain => write!(f, "parameter value is a puncture of the family"),
            Error::Config(msg) => write!(f, "configuration error: {}", msg),
            Error::Parse { line, col, msg } => {
                write!(f, "parse error at {}:{}: {}", line, col, msg)
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
