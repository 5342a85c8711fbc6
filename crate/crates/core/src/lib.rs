//! Finite-dimensional presheaf formulation of quantum theory.
//!
//! Contexts (abelian subalgebras given by their atoms) are collected into a
//! [`poset::ContextPoset`]. Over it the library computes the spectral
//! presheaf, daseinisation of projections and operators, sieve-valued truth
//! values, quantity-value arrows and a search for global sections.

pub mod context;
pub mod dasein;
pub mod error;
pub mod hermitian;
pub mod json;
pub mod ks;
pub mod order;
pub mod pl;
pub mod poset;
pub mod quantity;
pub mod sieve;
pub mod spectral;
pub mod truth;

pub use context::{AtomSet, Context, ContextKey};
pub use dasein::Mode;
pub use error::{Error, Result};
pub use hermitian::{BorelSet, HermitianOperator, Projection, C64};
pub use order::Order;
pub use poset::{ContextPoset, PosetOptions};
pub use sieve::{OmegaElement, Sieve};
pub use spectral::ClopenSubobject;
