//! Symbolic engine for the minimal pre-quantizable level of moduli spaces of
//! flat bundles over surfaces, for compact simple Lie groups that are not
//! simply connected.
//!
//! The pipeline runs from mod-p Hopf algebra presentations ([`algebra`],
//! [`hopf`]) through Bockstein and Tor bookkeeping ([`torsion`]) to per-group
//! results ([`catalog`]). [`alcove`] holds the SU(n) alcove combinatorics used
//! for surfaces with marked points.

pub mod alcove;
pub mod algebra;
pub mod catalog;
pub mod cli;
pub mod hopf;
pub mod report;
pub mod torsion;
pub mod zp;

pub use algebra::{Element, GeneratorSpec, Presentation, Style, TensorElement};
pub use catalog::{Catalog, GroupId, L0Result};

/// Any error the engine can report, grouped by how a caller should react.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
    #[error(transparent)]
    Alcove(#[from] alcove::AlcoveError),
    #[error(transparent)]
    Hopf(#[from] hopf::HopfError),
    #[error(transparent)]
    Torsion(#[from] torsion::TorsionError),
    #[error(transparent)]
    Algebra(#[from] algebra::AlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input text.
    Parse,
    /// Well-formed input outside the supported domain.
    Domain,
    /// An internal invariant failed.
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        use alcove::AlcoveError as A;
        use catalog::CatalogError as C;
        match self {
            Error::Catalog(C::Parse(_)) | Error::Catalog(C::InvalidGroup(_)) => ErrorKind::Parse,
            Error::Catalog(C::IrrelevantPrime { .. }) | Error::Catalog(C::DegreeCapTooSmall(_)) => {
                ErrorKind::Domain
            }
            Error::Catalog(_) => ErrorKind::Internal,
            Error::Alcove(A::NonTermination(_)) => ErrorKind::Internal,
            Error::Alcove(A::Parse(_)) | Error::Alcove(A::WrongLength { .. }) => ErrorKind::Parse,
            Error::Alcove(_) => ErrorKind::Domain,
            Error::Hopf(_) | Error::Torsion(_) | Error::Algebra(_) => ErrorKind::Internal,
        }
    }
}
