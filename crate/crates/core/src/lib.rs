//! Exact computation of arithmetically enriched Bezout counts.
//!
//! Everything is generic over a field context ([`field::Field`]); the
//! aliases below fix the two base fields used by the verifiers.
//!
//! ```
//! use bezout_core::bezout::verify_main;
//! use bezout_core::geometry::HomogeneousPoly;
//! use bezout_core::intersect::CurvePair;
//! use bezout_core::poly::MPoly;
//! use bezout_core::Rationals;
//!
//! let vars = ["x0", "x1", "x2"];
//! let conic = MPoly::from_i64_terms(&Rationals, &vars, &[(1, &[1, 0, 1]), (-1, &[0, 2, 0])]);
//! let line = MPoly::from_i64_terms(&Rationals, &vars, &[(1, &[0, 0, 1]), (-1, &[1, 0, 0])]);
//! let pair = CurvePair::new(HomogeneousPoly::new(conic)?, HomogeneousPoly::new(line)?)?;
//! let report = verify_main(&pair, 0)?;
//! assert!(report.passed());
//! # Ok::<(), bezout_core::Error>(())
//! ```

pub mod arith;
pub mod bezout;
pub mod error;
pub mod field;
pub mod geometry;
pub mod gw;
pub mod intersect;
pub mod linalg;
pub mod localdeg;
pub mod poly;
pub mod series;
pub mod sturm;

pub use error::{Error, Result};
pub use field::{ExtElem, ExtensionField, Field, PrimeField, Rational, RationalFunctions, Rationals};
pub use gw::{gw_equal, GwElement};

pub type QPoly = poly::MPoly<Rationals>;
pub type FpPoly = poly::MPoly<PrimeField>;
pub type QUPoly = poly::UPoly<Rationals>;
pub type QExt = ExtensionField<Rationals>;
pub type FqExt = ExtensionField<PrimeField>;
pub type GwQ = GwElement<Rationals>;
pub type GwFp = GwElement<PrimeField>;
pub type GwCt = GwElement<RationalFunctions>;
pub type QCurvePair = intersect::CurvePair<Rationals>;
pub type FpCurvePair = intersect::CurvePair<PrimeField>;
pub type QPoint = intersect::IntersectionPoint<Rationals>;
pub type FpPoint = intersect::IntersectionPoint<PrimeField>;
