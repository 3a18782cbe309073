//! Exact computations with tropical linear spaces.
//!
//! A tropical linear space is described by a tropical Plücker vector `p`, a
//! rational number for every `d`-subset of `[n]`. This crate validates such
//! vectors, builds the matroid subdivision of the hypersimplex they induce,
//! counts the bounded faces of the space, and implements the standard
//! constructions: duals, minors, translations, stable intersections, tree
//! spaces and series-parallel matroids from coloured trees.
//!
//! ```
//! use tropls::{PlueckerVector, Subdivision};
//!
//! // the quartet tree ((1,2),(3,4)) as a rank 2 vector
//! let p = PlueckerVector::from_fn(4, 2, |i| {
//!     if i.bits() == 0b0011 || i.bits() == 0b1100 { 0.into() } else { (-1).into() }
//! }).unwrap();
//! assert!(p.validate().is_valid());
//! let sd = Subdivision::new(&p).unwrap();
//! assert_eq!(sd.bounded_f_vector(), vec![2, 1]);
//! ```

pub mod cli;
pub mod error;
pub mod generate;
pub mod json;
pub mod matroid;
pub mod plucker;
pub mod poly;
pub mod rational;
pub mod scan;
pub mod subdivision;
pub mod sptree;
pub mod stable;
pub mod subset;
pub mod tutte;

pub use error::{Error, Result};
pub use matroid::Matroid;
pub use poly::BivariatePoly;
pub use rational::{Point, Rat};
pub use subset::{binomial, enumerate_subsets, Subset};
pub use plucker::{PlueckerVector, Validity};
pub use subdivision::Subdivision;
