use std::fmt;

/// Failure modes shared by the geometry, planning, and simulation layers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An input violates a precondition (non-positive radius, bad range, ...).
    Domain(String),
    /// The cutting plane is parallel to the bore axis; the section is unbounded.
    DegenerateSection { inclination_deg: f64 },
    /// A ray was cast from a point on or outside the section boundary.
    CenterOutsideSection,
    /// An angular measure was requested for an empty sector.
    EmptySector,
    /// No admissible orientation exists; the maneuver cannot be planned.
    InfeasiblePlan(String),
    /// A phase commands motion but no contacting module can produce any.
    Stalled { t_s: f64 },
    /// Motion plan phases do not line up with the pipe network.
    PlanMismatch(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::DegenerateSection { inclination_deg } => write!(
                f,
                "degenerate section: inclination {inclination_deg} deg leaves the cut unbounded"
            ),
            Error::CenterOutsideSection => {
                write!(f, "ray origin lies on or outside the section boundary")
            }
            Error::EmptySector => write!(f, "sector is empty"),
            Error::InfeasiblePlan(msg) => write!(f, "infeasible plan: {msg}"),
            Error::Stalled { t_s } => write!(f, "robot stalled at t = {t_s:.3} s"),
            Error::PlanMismatch(msg) => write!(f, "plan does not match network: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
