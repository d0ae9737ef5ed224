use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid Young function: {0}")]
    InvalidYoung(String),

    #[error("element is not self-adjoint (deviation {deviation:.3e})")]
    NotSelfAdjoint { deviation: f64 },

    #[error("element is not positive semidefinite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("function undefined at eigenvalue {eigenvalue}")]
    UndefinedAtEigenvalue { eigenvalue: f64 },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("state density is singular (smallest eigenvalue {min_eigenvalue:.3e})")]
    SingularDensity { min_eigenvalue: f64 },

    #[error("invalid projection pattern: {0}")]
    InvalidPattern(String),

    #[error("element is not in the Orlicz class of {0}")]
    NotInOrliczClass(String),

    #[error("solver did not converge: {0}")]
    Diverged(String),

    #[error("support left the model window; {required_padding} extra grid points required")]
    WindowOverflow { required_padding: usize },

    #[error("distribution at ε = {0:.3e} depends on values below the model window")]
    WindowLimited(f64),

    #[error("shift {0} is not a multiple of the grid spacing")]
    OffGridShift(f64),

    #[error("no admissible shift: {0}")]
    NoAdmissibleShift(String),

    #[error("not L^(cosh-1) regular in this window: {0}")]
    NotRegular(String),

    #[error("CFL condition violated: dt = {dt} > dx = {dx}")]
    Cfl { dt: f64, dx: f64 },

    #[error("light cone exits lattice: {0}")]
    LightConeExit(String),

    #[error("chart map is not invertible: {0}")]
    NonInvertibleChart(String),

    #[error("quadrature grids are misaligned: {0}")]
    MisalignedGrids(String),

    #[error("degenerate region: {0}")]
    DegenerateRegion(String),

    #[error("generators do not commute (commutator norm {0:.3e})")]
    NonCommutingGenerators(f64),

    #[error("mesh too coarse: {0}")]
    CoarseMesh(String),

    #[error("basis not closed under bracket: [B_{0}, B_{1}] leaves the span (residual {2:.3e})")]
    NotClosed(usize, usize, f64),

    #[error("basis is linearly dependent")]
    DependentBasis,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
