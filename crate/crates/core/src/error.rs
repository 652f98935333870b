use crate::exactalg::ExactError;

/// Every failure the library reports. The CLI maps these onto exit codes
/// through [`Dp2Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Dp2Error {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("f must have degree 2 and g degree 4")]
    WrongDegrees,
    #[error("the branch quartic f^2 + 4g is singular")]
    SingularBranchCurve,
    #[error("point is not on the surface")]
    NotOnSurface,
    #[error("all of x, y, z are zero")]
    ZeroPoint,
    #[error("the origin is the singular point of the curve")]
    SingularOrigin,
    #[error("the group law reached the singular point of the curve")]
    SingularHit,
    #[error("the genus-1 curve is reducible")]
    ReducibleModel,
    #[error("the two points have the same image in the plane")]
    SameImage,
    #[error("the line is a bitangent of the branch quartic")]
    BitangentLine,
    #[error("the point is not very general")]
    NotVeryGeneral,
    #[error("elimination degenerated in every coordinate system tried")]
    EliminationDegenerate,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("{0} is not a good prime for this surface")]
    BadPrime(u64),
    #[error("section space has dimension {0}, expected 3")]
    UnexpectedDimension(usize),
    #[error("point does not reduce to a point of the surface mod p")]
    BadReduction,
}

impl Dp2Error {
    /// 1 for parse errors, 3 for internal degeneracies, 2 for domain and
    /// hypothesis failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Dp2Error::Parse(_) | Dp2Error::WrongDegrees => 1,
            Dp2Error::SingularHit
            | Dp2Error::SingularOrigin
            | Dp2Error::EliminationDegenerate
            | Dp2Error::UnexpectedDimension(_)
            | Dp2Error::Exact(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Dp2Error>;
