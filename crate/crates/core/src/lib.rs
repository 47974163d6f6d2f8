//! Exact commutative algebra for building and certifying orders over
//! polynomial rings: polynomials, Gröbner bases, finitely presented modules,
//! depth and reflexivity, structure-constant algebras, and order certificates.

pub mod azumaya;
pub mod error;
pub mod field;
pub mod fpmod;
pub mod groebner;
pub mod homological;
pub mod matrix;
pub mod monomial;
pub mod orders;
pub mod parse;
pub mod poly;
pub mod ring;

pub use azumaya::{AlgElem, EndAlgebra, SCAlgebra, TwistedModule};
pub use error::{Error, Result};
pub use field::{Coeff, Field};
pub use fpmod::{FPModule, ModuleMap};
pub use groebner::{Codim, FreeResolution, GroebnerBasis, Ideal};
pub use matrix::Matrix;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::Poly;
pub use ring::Ring;
