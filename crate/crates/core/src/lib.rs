pub mod brieskorn;
pub mod complex;
pub mod dilation;
pub mod document;
pub mod error;
pub mod linalg;
pub mod morphism;
pub mod spectral;
pub mod tensor;

pub use complex::{Generator, OperatorFamily, S1Complex};
pub use error::{Error, Result};
pub use linalg::{Rational, SparseMatrix, Subquotient, Vector};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/linear-algebra.md")]
    pub mod linear_algebra {}
    #[doc = include_str!("../../../book/src/s1-complexes.md")]
    pub mod s1_complexes {}
    #[doc = include_str!("../../../book/src/spectral-sequence.md")]
    pub mod spectral_sequence {}
    #[doc = include_str!("../../../book/src/dilations.md")]
    pub mod dilations {}
    #[doc = include_str!("../../../book/src/morphisms.md")]
    pub mod morphisms {}
    #[doc = include_str!("../../../book/src/products.md")]
    pub mod products {}
    #[doc = include_str!("../../../book/src/brieskorn.md")]
    pub mod brieskorn {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
