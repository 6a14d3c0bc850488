//! Linear-factor multiplicities of polynomials over hyperfields, tropical
//! plane curves, and sign bounds for polynomial systems from sparse
//! resultants.

pub mod error;
pub mod hyperfield;
pub mod multiplicity;
pub mod polyring;
pub mod polytope;
pub mod realcert;
pub mod resultant;
pub mod systems;
pub mod tropgeo;

pub use error::{Error, Result};
pub use hyperfield::{Base, HyperSubset, HyperValue, HyperfieldId, Morphism, Q};
pub use polyring::{HPoly, IntPoly, RatPoly};
pub use multiplicity::{bmult, mult, mult_single, MultValue, MultiplicityResult, SignSet, SignSetPoly};
pub use realcert::{FeasibilityOutcome, LinearSystem};
pub use resultant::{ResultantMatrix, SupportSystem};
pub use systems::{SystemBoundReport, TransversePoint};
pub use tropgeo::{EnrichedCurve, NewtonSubdivision, TropicalCurve};
