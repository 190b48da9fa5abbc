//! S¹-morphisms, S¹-homotopies and the maps `Φᵏ`.
//!
//! A morphism `φ: (C, δ) → (D, ∂)` is a family `φ⁰, …, φᴺ` with `φʳ` of
//! degree `−2r` and `Σ_{i+j=k} φⁱδʲ − ∂ʲφⁱ = 0` for `k ≤ N`. It acts on
//! `F^k C⁺` by `φ^{S¹} = Σ uʳ φʳ`.

use serde::Serialize;

use crate::complex::{filtered_operator, CohomologySpace, DegreeViolation, RelationStatus, S1Complex};
use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, zero_vector, Membership, SparseMatrix, Subquotient, Vector};
use crate::spectral::{b_space, delta_k_value, solve_closed_witness, z_space, Filtration};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct S1Morphism {
    source: S1Complex,
    target: S1Complex,
    phi: Vec<SparseMatrix>,
}

/// Outcome of [`S1Morphism::verify`] and [`S1Homotopy::verify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub degree_violations: Vec<DegreeViolation>,
    pub residuals: Vec<RelationStatus>,
    pub valid: bool,
}

fn degree_violations(source: &S1Complex, target: &S1Complex, maps: &[SparseMatrix], shift: impl Fn(usize) -> i64) -> Vec<DegreeViolation> {
    let mut out = Vec::new();
    for (order, m) in maps.iter().enumerate() {
        for (to, from, _) in m.triplets() {
            if target.basis()[to].degree - source.basis()[from].degree != shift(order) {
                out.push(DegreeViolation {
                    order,
                    from: source.basis()[from].name.clone(),
                    to: target.basis()[to].name.clone(),
                });
            }
        }
    }
    out
}

fn check_shapes(source: &S1Complex, target: &S1Complex, maps: &[SparseMatrix]) -> Result<()> {
    if source.truncation() != target.truncation() {
        return Err(Error::TruncationMismatch {
            left: source.truncation(),
            right: target.truncation(),
        });
    }
    if maps.len() != source.truncation() + 1 {
        return Err(Error::InvalidMorphism(format!(
            "expected {} components, found {}",
            source.truncation() + 1,
            maps.len()
        )));
    }
    for (r, m) in maps.iter().enumerate() {
        if m.nrows() != target.dim() || m.ncols() != source.dim() {
            return Err(Error::InvalidMorphism(format!(
                "component {r} is {}x{}, expected {}x{}",
                m.nrows(),
                m.ncols(),
                target.dim(),
                source.dim()
            )));
        }
    }
    Ok(())
}

impl S1Morphism {
    /// Checks shapes and equal truncations, not the relations.
    pub fn new(source: S1Complex, target: S1Complex, phi: Vec<SparseMatrix>) -> Result<Self> {
        check_shapes(&source, &target, &phi)?;
        Ok(S1Morphism { source, target, phi })
    }

    pub fn identity(c: &S1Complex) -> Self {
        let n = c.dim();
        let mut phi = vec![SparseMatrix::identity(n)];
        phi.extend((0..c.truncation()).map(|_| SparseMatrix::zeros(n, n)));
        S1Morphism {
            source: c.clone(),
            target: c.clone(),
            phi,
        }
    }

    pub fn zero(source: &S1Complex, target: &S1Complex) -> Result<Self> {
        let phi = (0..=source.truncation())
            .map(|_| SparseMatrix::zeros(target.dim(), source.dim()))
            .collect();
        Self::new(source.clone(), target.clone(), phi)
    }

    /// `(φ⁰, 0, …, 0)`.
    pub fn from_chain_map(source: &S1Complex, target: &S1Complex, phi0: SparseMatrix) -> Result<Self> {
        let mut phi = vec![phi0];
        phi.extend((0..source.truncation()).map(|_| SparseMatrix::zeros(target.dim(), source.dim())));
        Self::new(source.clone(), target.clone(), phi)
    }

    /// The null-homotopic morphism `Σ_{i+j=k} hⁱδʲ + ∂ʲhⁱ`.
    pub fn homotopy_boundary(source: &S1Complex, target: &S1Complex, h: &[SparseMatrix]) -> Result<Self> {
        check_shapes(source, target, h)?;
        let phi = (0..=source.truncation()).map(|k| homotopy_term(source, target, h, k)).collect();
        Ok(S1Morphism {
            source: source.clone(),
            target: target.clone(),
            phi,
        })
    }

    pub fn source(&self) -> &S1Complex {
        &self.source
    }

    pub fn target(&self) -> &S1Complex {
        &self.target
    }

    pub fn truncation(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self, r: usize) -> &SparseMatrix {
        &self.phi[r]
    }

    pub fn components(&self) -> &[SparseMatrix] {
        &self.phi
    }

    /// `Σ_{i+j=k} φⁱδʲ − ∂ʲφⁱ`.
    pub fn residual(&self, k: usize) -> SparseMatrix {
        let mut acc = SparseMatrix::zeros(self.target.dim(), self.source.dim());
        for i in 0..=k {
            let j = k - i;
            acc = &acc + &(&self.phi[i] * self.source.delta(j));
            acc = &acc - &(self.target.delta(j) * &self.phi[i]);
        }
        acc
    }

    pub fn verify(&self) -> MorphismReport {
        let degree_violations = degree_violations(&self.source, &self.target, &self.phi, |r| -2 * r as i64);
        let residuals: Vec<RelationStatus> = (0..=self.truncation())
            .map(|k| RelationStatus {
                k,
                holds: self.residual(k).is_zero(),
            })
            .collect();
        let valid = degree_violations.is_empty() && residuals.iter().all(|r| r.holds);
        MorphismReport {
            degree_violations,
            residuals,
            valid,
        }
    }

    /// `φ^{S¹}` as a matrix `F^k C⁺ → F^k D⁺`.
    pub fn plus_matrix(&self, k: usize) -> SparseMatrix {
        filtered_operator(&self.phi, self.target.dim(), self.source.dim(), k)
    }

    /// `φ^{S¹}(Σ u⁻ⁱ xᵢ)` by powers: entry `j` is `Σ_r φʳ x_{j+r}`.
    pub fn apply_s1(&self, components: &[Vector]) -> Vec<Vector> {
        let n = self.target.dim();
        (0..components.len())
            .map(|j| {
                let mut out = zero_vector(n);
                for (r, x) in components[j..].iter().enumerate().take(self.phi.len()) {
                    if is_zero_vector(x) {
                        continue;
                    }
                    for (o, t) in out.iter_mut().zip(self.phi[r].mul_vec(x).expect("shape")) {
                        *o += t;
                    }
                }
                out
            })
            .collect()
    }

    /// `self ∘ inner`, with `(φ̃∘φ)ᵏ = Σ_{i+j=k} φ̃ⁱφʲ`.
    pub fn compose(&self, inner: &S1Morphism) -> Result<S1Morphism> {
        if inner.target != self.source {
            return Err(Error::InvalidMorphism(
                "target of the inner morphism is not the source of the outer one".into(),
            ));
        }
        let phi = (0..=self.truncation())
            .map(|k| {
                (0..=k).fold(SparseMatrix::zeros(self.target.dim(), inner.source.dim()), |acc, i| {
                    &acc + &(&self.phi[i] * &inner.phi[k - i])
                })
            })
            .collect();
        Ok(S1Morphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            phi,
        })
    }

    pub fn truncate(&self, n: usize) -> Result<S1Morphism> {
        Ok(S1Morphism {
            source: self.source.truncate(n)?,
            target: self.target.truncate(n)?,
            phi: self.phi[..=n].to_vec(),
        })
    }

    /// The map induced by `φ^{S¹}` on `H(F^k C⁺) → H(F^k D⁺)`.
    pub fn induced_map(&self, k: usize) -> Result<InducedMap> {
        let source = self.source.filtered_plus(k)?.as_graded().cohomology_space()?;
        let target = self.target.filtered_plus(k)?.as_graded().cohomology_space()?;
        let m = self.plus_matrix(k);
        let columns = source
            .space
            .complement_basis()
            .iter()
            .map(|v| {
                target
                    .space
                    .coordinates(&m.mul_vec(v)?)?
                    .ok_or_else(|| Error::InvalidMorphism("image of a cycle is not closed".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = SparseMatrix::from_columns(target.dim(), &columns);
        Ok(InducedMap { source, target, matrix })
    }
}

fn homotopy_term(source: &S1Complex, target: &S1Complex, h: &[SparseMatrix], k: usize) -> SparseMatrix {
    let mut acc = SparseMatrix::zeros(target.dim(), source.dim());
    for (i, hi) in h.iter().enumerate().take(k + 1) {
        let j = k - i;
        acc = &acc + &(hi * source.delta(j));
        acc = &acc + &(target.delta(j) * hi);
    }
    acc
}

/// A map on cohomology in the fixed class bases of both sides.
#[derive(Debug, Clone)]
pub struct InducedMap {
    pub source: CohomologySpace,
    pub target: CohomologySpace,
    pub matrix: SparseMatrix,
}

/// `h⁰, …, hᴺ` with `hʳ` of degree `−2r − 1`, certifying `φ ≃ φ̃`.
#[derive(Debug, Clone)]
pub struct S1Homotopy {
    h: Vec<SparseMatrix>,
    from: S1Morphism,
    to: S1Morphism,
}

impl S1Homotopy {
    pub fn new(h: Vec<SparseMatrix>, from: S1Morphism, to: S1Morphism) -> Result<Self> {
        if from.source != to.source || from.target != to.target {
            return Err(Error::InvalidMorphism("homotopic morphisms must share source and target".into()));
        }
        check_shapes(&from.source, &from.target, &h)?;
        Ok(S1Homotopy { h, from, to })
    }

    pub fn components(&self) -> &[SparseMatrix] {
        &self.h
    }

    /// Checks `φᵏ − φ̃ᵏ = Σ_{i+j=k} hⁱδʲ + ∂ʲhⁱ` and the degrees of `hʳ`.
    pub fn verify(&self) -> MorphismReport {
        let (s, t) = (&self.from.source, &self.from.target);
        let degree_violations = degree_violations(s, t, &self.h, |r| -2 * r as i64 - 1);
        let residuals: Vec<RelationStatus> = (0..=self.from.truncation())
            .map(|k| {
                let diff = &self.from.phi[k] - &self.to.phi[k];
                RelationStatus {
                    k,
                    holds: (&diff - &homotopy_term(s, t, &self.h, k)).is_zero(),
                }
            })
            .collect();
        let valid = degree_violations.is_empty() && residuals.iter().all(|r| r.holds);
        MorphismReport {
            degree_violations,
            residuals,
            valid,
        }
    }
}

/// `Φᵏ: Z_k(C)/B₀(C) → H(D)/(Φ⁰, …, Φ^{k−1} images)`.
///
/// The domain is `ker Δᵏ` presented as `Z_k/B₀`. The codomain quotient is
/// by `im ∂⁰` plus the `u⁰` parts of `φ^{S¹}(X)` for closed `X ∈ F^{k−1}C⁺`,
/// which is exactly the indeterminacy of the formula.
#[derive(Debug, Clone)]
pub struct PhiKMap {
    pub k: usize,
    pub domain: Subquotient,
    pub codomain: Subquotient,
    pub matrix: SparseMatrix,
    pub domain_degrees: Vec<i64>,
    pub codomain_degrees: Vec<i64>,
}

impl PhiKMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// `Σ_{i=0}^{k} φⁱ(α_{k−i})` for a witness `α₀, …, α_k`.
pub fn phi_k_value(phi: &S1Morphism, alphas: &[Vector]) -> Vector {
    let k = alphas.len() - 1;
    let mut out = zero_vector(phi.target.dim());
    for i in 0..=k.min(phi.truncation()) {
        let term = phi.phi[i].mul_vec(&alphas[k - i]).expect("shape");
        for (o, t) in out.iter_mut().zip(term) {
            *o += t;
        }
    }
    out
}

fn degrees_of(space: &Subquotient, degrees: &[i64]) -> Vec<i64> {
    space
        .complement_basis()
        .iter()
        .map(|v| crate::complex::vector_degree(v, degrees).expect("nonzero class"))
        .collect()
}

pub fn phi_k(phi: &S1Morphism, k: usize) -> Result<PhiKMap> {
    let (c, d) = (&phi.source, &phi.target);
    if !d.has_trivial_higher_structure() {
        return Err(Error::NontrivialHigherStructure);
    }
    if k > c.truncation() {
        return Err(Error::LevelAboveTruncation {
            level: k,
            truncation: c.truncation(),
        });
    }
    let zk = z_space(c, k)?;
    let domain = Subquotient::new(c.dim(), &zk.vectors(), &b_space(c, 0)?.vectors())?;
    let mut indeterminacy = d.delta(0).image_basis();
    if k >= 1 {
        let f = c.filtered_plus(k - 1)?;
        for x in f.differential().kernel_basis() {
            let v = phi.apply_s1(&f.components(&x)).swap_remove(0);
            indeterminacy.push(v);
        }
    }
    let codomain = Subquotient::new(d.dim(), &d.delta(0).kernel_basis(), &indeterminacy)?;
    let columns = domain
        .complement_indices()
        .iter()
        .map(|&j| {
            codomain
                .coordinates(&phi_k_value(phi, zk.basis[j].alphas()))?
                .ok_or_else(|| Error::InvalidMorphism("Φᵏ value is not closed".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiKMap {
        k,
        matrix: SparseMatrix::from_columns(codomain.dim(), &columns),
        domain_degrees: degrees_of(&domain, &c.degrees()),
        codomain_degrees: degrees_of(&codomain, &d.degrees()),
        domain,
        codomain,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorialityLevel {
    pub k: usize,
    pub z_contained: bool,
    pub b_contained: bool,
    /// `φ⁰∘Δᵏ = Δ̃ᵏ∘φ⁰`, checked for `k ≥ 1`.
    pub commutes: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorialityReport {
    pub levels: Vec<FunctorialityLevel>,
    pub valid: bool,
}

/// Checks `φ⁰(Z_k) ⊆ Z_k(D)`, `φ⁰(B_k) ⊆ B_k(D)` and `φ⁰∘Δᵏ = Δ̃ᵏ∘φ⁰` for
/// every `k` with `2k ≤ N`. Witnesses on the target side are solved
/// afresh rather than pushed forward.
pub fn verify_functoriality(phi: &S1Morphism) -> Result<FunctorialityReport> {
    let (c, d) = (&phi.source, &phi.target);
    let half = c.truncation() / 2;
    let fc = Filtration::new(&c.truncate(2 * half)?)?;
    let fd = Filtration::new(&d.truncate(2 * half)?)?;
    let p0 = &phi.phi[0];
    let push = |vs: Vec<Vector>| -> Vec<Vector> { vs.iter().map(|v| p0.mul_vec(v).expect("shape")).collect() };
    let mut levels = Vec::new();
    for k in 0..=half {
        let z_contained = crate::linalg::span_contains(&fd.z(k).vectors(), &push(fc.z(k).vectors()), d.dim());
        let b_contained = crate::linalg::span_contains(&fd.b(k).vectors(), &push(fc.b(k).vectors()), d.dim());
        let commutes = if k >= 1 && z_contained {
            let domain = fc.quotient(k - 1, 0)?;
            let target = fd.quotient(0, k - 1)?;
            let mut ok = true;
            for &j in domain.complement_indices() {
                let w = &fc.z(k - 1).basis[j];
                let lhs = p0.mul_vec(&delta_k_value(c, k, w.alphas()))?;
                let image = p0.mul_vec(w.value())?;
                let Some(wd) = solve_closed_witness(d, k - 1, &image)? else {
                    ok = false;
                    break;
                };
                let rhs = delta_k_value(d, k, wd.alphas());
                let diff: Vector = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
                if target.membership(&diff)? != Membership::InB {
                    ok = false;
                    break;
                }
            }
            Some(ok)
        } else if k >= 1 {
            Some(false)
        } else {
            None
        };
        levels.push(FunctorialityLevel {
            k,
            z_contained,
            b_contained,
            commutes,
        });
    }
    let valid = levels.iter().all(|l| l.z_contained && l.b_contained && l.commutes != Some(false));
    Ok(FunctorialityReport { levels, valid })
}
