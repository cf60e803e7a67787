//! Mutation classes of cluster quivers and the quivers of triangulated marked surfaces.
//!
//! The crate is organised around [`Quiver`], a skew-symmetric exchange matrix
//! with a trailing block of frozen vertices. On top of it sit canonical forms
//! ([`canonical`]), class enumeration and the finiteness/growth tools
//! ([`explorer`]), marked surfaces and their triangulations ([`surface`]),
//! complete-walk search ([`walk`]), shipped data files ([`data`]), the text
//! formats ([`io`]) and the command line ([`cli`]).

pub mod canonical;
pub mod cli;
pub mod data;
pub mod explorer;
pub mod io;
pub mod quiver;
pub mod surface;
pub mod walk;

pub use canonical::{are_isomorphic, canonical_form, CanonicalKey};
pub use explorer::{distribution_set, enumerate_class, ClassEnumeration, DistributionSet, Limits};
pub use quiver::{ArrowCount, Quiver, QuiverError};
pub use surface::{MarkedSurface, Side, Triangulation};
