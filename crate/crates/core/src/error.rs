use thiserror::Error;

/// Every failure the library reports. The variant name doubles as the
/// machine-readable code printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("MalformedMap: {0}")]
    MalformedMap(String),
    #[error("MalformedDivide: {0}")]
    MalformedDivide(String),
    #[error("DisconnectedDiagram: {0}")]
    DisconnectedDiagram(String),
    #[error("DisjointBranches: strands {0} and {1} never cross")]
    DisjointBranches(usize, usize),
    #[error("NonGenericIntersection: {0}")]
    NonGenericIntersection(String),
    #[error("EndpointInInterior: {0}")]
    EndpointInInterior(String),
    #[error("MoveNotApplicable: {0}")]
    MoveNotApplicable(String),
    #[error("InvalidPuiseux: {0}")]
    InvalidPuiseux(String),
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("IncoherentDivide: {0}")]
    IncoherentDivide(String),
    #[error("FaceCensusViolation: {0}")]
    FaceCensusViolation(String),
    #[error("ModelMismatch: {0}")]
    ModelMismatch(String),
    #[error("NotATree: {0}")]
    NotATree(String),
    #[error("NotEmbedded: {0}")]
    NotEmbedded(String),
    #[error("NoLegalVertex: {0}")]
    NoLegalVertex(String),
    #[error("NoCoherentOrientation: {0}")]
    NoCoherentOrientation(String),
    #[error("IncoherentTriangle: {0}")]
    IncoherentTriangle(String),
    #[error("ReplayMismatch: {0}")]
    ReplayMismatch(String),
    #[error("BadParams: {0}")]
    BadParams(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedMap(_) => "MalformedMap",
            Error::MalformedDivide(_) => "MalformedDivide",
            Error::DisconnectedDiagram(_) => "DisconnectedDiagram",
            Error::DisjointBranches(..) => "DisjointBranches",
            Error::NonGenericIntersection(_) => "NonGenericIntersection",
            Error::EndpointInInterior(_) => "EndpointInInterior",
            Error::MoveNotApplicable(_) => "MoveNotApplicable",
            Error::InvalidPuiseux(_) => "InvalidPuiseux",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::IncoherentDivide(_) => "IncoherentDivide",
            Error::FaceCensusViolation(_) => "FaceCensusViolation",
            Error::ModelMismatch(_) => "ModelMismatch",
            Error::NotATree(_) => "NotATree",
            Error::NotEmbedded(_) => "NotEmbedded",
            Error::NoLegalVertex(_) => "NoLegalVertex",
            Error::NoCoherentOrientation(_) => "NoCoherentOrientation",
            Error::IncoherentTriangle(_) => "IncoherentTriangle",
            Error::ReplayMismatch(_) => "ReplayMismatch",
            Error::BadParams(_) => "BadParams",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
