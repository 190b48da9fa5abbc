//! Künneth products of S¹-complexes.

use crate::complex::{Generator, OperatorFamily, S1Complex};
use crate::dilation::{Part, SplitS1Complex};
use crate::error::Result;
use crate::linalg::{MatrixBuilder, Rational, SparseMatrix, Vector};
use crate::morphism::S1Morphism;

/// Index of `a⊗b` in the product basis.
pub fn pair_index(d_dim: usize, a: usize, b: usize) -> usize {
    a * d_dim + b
}

/// `δʳ(a⊗b) = δʳa⊗b + (−1)^{|a|} a⊗δʳb`, truncated at `min(N_C, N_D)`.
///
/// Generators are named `a⊗b` and ordered by `(a, b)`.
pub fn tensor(c: &S1Complex, d: &S1Complex) -> Result<S1Complex> {
    let n = c.truncation().min(d.truncation());
    let (nc, nd) = (c.dim(), d.dim());
    let basis: Vec<Generator> = c
        .basis()
        .iter()
        .flat_map(|a| {
            d.basis()
                .iter()
                .map(move |b| Generator::new(format!("{}⊗{}", a.name, b.name), a.degree + b.degree))
        })
        .collect();
    let ops = (0..=n)
        .map(|r| {
            let mut m = MatrixBuilder::new(nc * nd, nc * nd);
            for (i, a, v) in c.delta(r).triplets() {
                for b in 0..nd {
                    m.add(pair_index(nd, i, b), pair_index(nd, a, b), v);
                }
            }
            for (j, b, v) in d.delta(r).triplets() {
                for (a, g) in c.basis().iter().enumerate() {
                    let signed = if g.degree.rem_euclid(2) == 1 { -v.clone() } else { v.clone() };
                    m.add(pair_index(nd, a, j), pair_index(nd, a, b), &signed);
                }
            }
            m.build()
        })
        .collect();
    S1Complex::new(basis, OperatorFamily::new(ops)?)
}

fn tensor_vectors(x: &[Rational], y: &[Rational]) -> Vector {
    x.iter().flat_map(|a| y.iter().map(move |b| a * b)).collect()
}

/// Product splitting: `C₀⊗D₀` is the zero part, everything mixed is in
/// the plus part, and the unit is `e_C⊗e_D`.
pub fn tensor_split(s: &SplitS1Complex, t: &SplitS1Complex) -> Result<SplitS1Complex> {
    let complex = tensor(s.complex(), t.complex())?;
    let parts = s
        .parts()
        .iter()
        .flat_map(|p| {
            t.parts()
                .iter()
                .map(move |q| if *p == Part::Zero && *q == Part::Zero { Part::Zero } else { Part::Plus })
        })
        .collect();
    SplitS1Complex::new(complex, parts, tensor_vectors(s.unit(), t.unit()))
}

/// The S¹-morphism `a ↦ a⊗e_T` from `C` (truncated to match) into `C⊗T`.
pub fn unit_embedding(c: &S1Complex, t: &SplitS1Complex) -> Result<S1Morphism> {
    let product = tensor(c, t.complex())?;
    let source = c.truncate(product.truncation())?;
    let nd = t.complex().dim();
    let mut phi0 = MatrixBuilder::new(product.dim(), c.dim());
    for a in 0..c.dim() {
        for (b, v) in t.unit().iter().enumerate() {
            phi0.add(pair_index(nd, a, b), a, v);
        }
    }
    S1Morphism::from_chain_map(&source, &product, phi0.build())
}

/// `Σ φ ⊗ id`: the product of a matrix on `C` with the identity on `D`.
pub fn tensor_with_identity(m: &SparseMatrix, d_dim: usize) -> SparseMatrix {
    let mut b = MatrixBuilder::new(m.nrows() * d_dim, m.ncols() * d_dim);
    for (i, a, v) in m.triplets() {
        for k in 0..d_dim {
            b.add(pair_index(d_dim, i, k), pair_index(d_dim, a, k), v);
        }
    }
    b.build()
}
