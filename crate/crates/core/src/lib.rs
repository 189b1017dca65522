//! Certified numerics for the volume bounds of hyperbolic 3-orbifolds whose
//! torsion orders are bounded below.
//!
//! Every quantity is carried as an [`Interval`] with outward-rounded MPFR
//! endpoints, so each reported number is backed by an enclosure of the true
//! value. The crate is organised in layers:
//!
//! * [`numerics`]: interval kernel, Taylor jets, sign certificates, certified
//!   quadrature and monotone inversion.
//! * [`tube_drill`]: torsion-dependent tube radii and drilling volume ratios.
//! * [`cusp_slopes`]: cusp lattices, slope lengths, inverse norms and the
//!   filling-slope sieve.
//! * [`hk_cone`]: volume-change brackets for Dehn filling and the
//!   verification of the large-torsion minimizer.
//! * [`symmetry`]: volume lower bounds for manifolds with symmetry.

pub mod cusp_slopes;
pub mod error;
pub mod hk_cone;
pub mod numerics;
pub mod symmetry;
pub mod tube_drill;

pub use error::{Error, Result};
pub use numerics::{Interval, Settings};
