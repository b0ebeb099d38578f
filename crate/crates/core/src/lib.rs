//! Gröbner-Shirshov bases in free Lie algebras.
//!
//! The crate is organized bottom-up:
//!
//! * [`words`]: orders on words, Lyndon-Shirshov words, standard and special
//!   bracketings;
//! * [`liepoly`]: Lie polynomials in the NLSW basis and their associative
//!   expansions;
//! * [`gsb`]: compositions, normal forms, basis verification and `Irr(S)`;
//! * [`semigroup`]: string rewriting and Knuth-Bendix completion;
//! * [`kukin`]: the Lie algebra of a semigroup presentation and its word
//!   problem;
//! * [`drinfeld_kohno`]: the Drinfeld-Kohno Lie algebra `L_n` over ℤ;
//! * [`cli`]: presentation files and the command-line front end.

pub mod cli;
pub mod coeff;
pub mod drinfeld_kohno;
pub mod error;
pub mod gsb;
pub mod kukin;
pub mod liepoly;
pub mod linalg;
pub mod semigroup;
pub mod words;

pub use coeff::{Coeff, Ring};
pub use error::{Error, Result};
pub use gsb::{CompositionReport, Relation, RelationSet};
pub use liepoly::{AssocPoly, LiePoly};
pub use words::{Alphabet, BracketTree, Letter, Word};
