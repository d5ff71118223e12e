use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant is a domain error except [`Error::ResourceCap`], which
/// signals that a configured search or size limit was exhausted.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("not a quandle: axiom {axiom} fails at {witness:?}")]
    NotAQuandle { axiom: u8, witness: Vec<usize> },

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("subgroup is not contained in the centralizer of {z}")]
    NotInCentralizer { z: usize },

    #[error("subset is not closed under conjugation: {0}")]
    NotClosed(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("shape mismatch: {0}")]
    Mismatch(String),

    #[error("invalid 2-cocycle: {0}")]
    InvalidCocycle(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("resource cap exhausted: {what} exceeds {cap}")]
    ResourceCap { what: String, cap: usize },
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }

    /// Stable snake_case name of the variant.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedTable(_) => "malformed_table",
            Error::NotAQuandle { .. } => "not_a_quandle",
            Error::NotAGroup(_) => "not_a_group",
            Error::NotASubgroup(_) => "not_a_subgroup",
            Error::NotInCentralizer { .. } => "not_in_centralizer",
            Error::NotClosed(_) => "not_closed",
            Error::Precondition(_) => "precondition",
            Error::Mismatch(_) => "mismatch",
            Error::InvalidCocycle(_) => "invalid_cocycle",
            Error::Parse(_) => "parse",
            Error::ResourceCap { .. } => "resource_cap",
        }
    }

    pub(crate) fn cap(what: impl Into<String>, cap: usize) -> Self {
        Error::ResourceCap { what: what.into(), cap }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
