//! The u-adic filtration: the spaces `Z_k`, `B_k`, the operators `Δᵏ` and
//! the pages of the Leray spectral sequence of `F^N C⁺`.
//!
//! `Z_k` is the space of leading coefficients `α₀` of closed elements
//! `Σ_{i=0}^{k} u⁻ⁱ α_{k−i}` of `F^k C⁺`; `B_k` is the space of elements of
//! `C` that are exact in `F^k C⁺`. For `2k ≤ N` they form the chain
//! `B₀ ⊆ … ⊆ B_k ⊆ Z_k ⊆ … ⊆ Z₀`.

use std::collections::BTreeMap;

use num::Zero;
use serde::Serialize;

use crate::complex::{filtered_degree_indices, filtered_operator_block, vector_degree, S1Complex};
use crate::error::{Error, Result};
use crate::linalg::{independent_subset, is_zero_vector, solve, zero_vector, Rational, SparseMatrix, Subquotient, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WitnessKind {
    /// `δ^{S¹}(Σ u⁻ⁱ α_{k−i}) = 0`; the certified vector is `α₀`.
    Closed,
    /// `δ^{S¹}(Σ u⁻ⁱ α_{k−i}) = value`.
    Primitive,
}

/// A vector of `C` together with the chain `α₀, …, α_k` certifying that it
/// lies in `Z_k` or `B_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessedCycle {
    kind: WitnessKind,
    value: Vector,
    alphas: Vec<Vector>,
}

impl WitnessedCycle {
    /// Certifies `alphas[0] ∈ Z_k` with `k = alphas.len() − 1`.
    pub fn closed(c: &S1Complex, alphas: Vec<Vector>) -> Result<Self> {
        let w = WitnessedCycle {
            kind: WitnessKind::Closed,
            value: alphas.first().cloned().unwrap_or_default(),
            alphas,
        };
        w.check(c)?;
        Ok(w)
    }

    /// Certifies `value ∈ B_k` with `k = alphas.len() − 1`.
    pub fn primitive(c: &S1Complex, alphas: Vec<Vector>, value: Vector) -> Result<Self> {
        let w = WitnessedCycle {
            kind: WitnessKind::Primitive,
            value,
            alphas,
        };
        w.check(c)?;
        Ok(w)
    }

    fn check(&self, c: &S1Complex) -> Result<()> {
        if self.alphas.is_empty() {
            return Err(Error::InvalidComplex("empty witness".into()));
        }
        check_level(c, self.level())?;
        let image = c.apply_s1(&self.components());
        let ok = image.iter().enumerate().all(|(i, x)| match (self.kind, i) {
            (WitnessKind::Primitive, 0) => *x == self.value,
            _ => is_zero_vector(x),
        });
        if !ok {
            return Err(Error::InvalidComplex("witness does not satisfy its defining identity".into()));
        }
        Ok(())
    }

    /// `δ^{S¹}` applied to the witness chain, by powers of `u⁻¹`.
    pub fn evaluate(&self, c: &S1Complex) -> Vec<Vector> {
        c.apply_s1(&self.components())
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    pub fn level(&self) -> usize {
        self.alphas.len() - 1
    }

    pub fn value(&self) -> &Vector {
        &self.value
    }

    /// `α₀, …, α_k`; `α_j` is the coefficient of `u^{−(k−j)}`.
    pub fn alphas(&self) -> &[Vector] {
        &self.alphas
    }

    /// Coefficients by power: entry `i` is the coefficient of `u⁻ⁱ`.
    pub fn components(&self) -> Vec<Vector> {
        self.alphas.iter().rev().cloned().collect()
    }
}

fn from_components(components: Vec<Vector>) -> Vec<Vector> {
    components.into_iter().rev().collect()
}

/// A basis of `Z_k` or `B_k`, each vector with its witness.
#[derive(Debug, Clone)]
pub struct FiltrationSpace {
    pub kind: WitnessKind,
    pub level: usize,
    pub basis: Vec<WitnessedCycle>,
}

impl FiltrationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.basis.iter().map(|w| w.value.clone()).collect()
    }

    pub fn dims_by_degree(&self, degrees: &[i64]) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for w in &self.basis {
            let d = vector_degree(&w.value, degrees).expect("basis vectors are nonzero");
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }
}

fn check_level(c: &S1Complex, k: usize) -> Result<()> {
    if k > c.truncation() {
        return Err(Error::LevelAboveTruncation {
            level: k,
            truncation: c.truncation(),
        });
    }
    Ok(())
}

/// `Z_k`: the projection to the `u⁻ᵏ` coordinate of `ker δ^{S¹}` on `F^k C⁺`.
pub fn z_space(c: &S1Complex, k: usize) -> Result<FiltrationSpace> {
    check_level(c, k)?;
    let f = c.filtered_plus(k)?;
    let kernel = f.differential().kernel_basis();
    let leading: Vec<Vector> = kernel.iter().map(|x| f.component(x, k)).collect();
    let basis = independent_subset(&leading, c.dim())
        .into_iter()
        .map(|j| WitnessedCycle {
            kind: WitnessKind::Closed,
            value: leading[j].clone(),
            alphas: from_components(f.components(&kernel[j])),
        })
        .collect();
    Ok(FiltrationSpace {
        kind: WitnessKind::Closed,
        level: k,
        basis,
    })
}

/// `B_k`: the elements of `C = u⁰·C` that are `δ^{S¹}`-exact in `F^k C⁺`.
pub fn b_space(c: &S1Complex, k: usize) -> Result<FiltrationSpace> {
    check_level(c, k)?;
    let n = c.dim();
    let f = c.filtered_plus(k)?;
    let d = f.differential();
    let high: Vec<usize> = (n..f.dim()).collect();
    let low: Vec<usize> = (0..n).collect();
    let primitives = d.select_rows(&high).kernel_basis();
    let d_low = d.select_rows(&low);
    let values: Vec<Vector> = primitives.iter().map(|x| d_low.mul_vec(x).expect("shape")).collect();
    let basis = independent_subset(&values, n)
        .into_iter()
        .map(|j| WitnessedCycle {
            kind: WitnessKind::Primitive,
            value: values[j].clone(),
            alphas: from_components(f.components(&primitives[j])),
        })
        .collect();
    Ok(FiltrationSpace {
        kind: WitnessKind::Primitive,
        level: k,
        basis,
    })
}

/// Finds a closed element of `F^k C⁺` with leading coefficient `alpha0`,
/// or `None` when `alpha0 ∉ Z_k`.
pub fn solve_closed_witness(c: &S1Complex, k: usize, alpha0: &[Rational]) -> Result<Option<WitnessedCycle>> {
    check_level(c, k)?;
    let n = c.dim();
    let f = c.filtered_plus(k)?;
    let d = f.differential();
    let lower: Vec<usize> = (0..k * n).collect();
    let mut top = vec![zero_vector(n); k + 1];
    top[k] = alpha0.to_vec();
    let rhs: Vector = d.mul_vec(&f.assemble(&top))?.into_iter().map(|x| -x).collect();
    let Some(y) = solve(&d.select_columns(&lower), &rhs)? else {
        return Ok(None);
    };
    let mut components: Vec<Vector> = (0..k).map(|i| y[i * n..(i + 1) * n].to_vec()).collect();
    components.push(alpha0.to_vec());
    WitnessedCycle::closed(c, from_components(components)).map(Some)
}

/// Finds `A ∈ F^k C⁺` with `δ^{S¹} A = alpha` (placed at `u⁰`), or `None`
/// when `alpha ∉ B_k`.
///
/// Homogeneous targets are solved inside a single degree, so generators of
/// unrelated degrees cost nothing.
pub fn solve_primitive(c: &S1Complex, k: usize, alpha: &[Rational]) -> Result<Option<WitnessedCycle>> {
    check_level(c, k)?;
    let n = c.dim();
    let degrees = c.degrees();
    let Some(d) = vector_degree(alpha, &degrees) else {
        let alphas = vec![zero_vector(n); k + 1];
        return WitnessedCycle::primitive(c, alphas, alpha.to_vec()).map(Some);
    };
    let rows = filtered_degree_indices(&degrees, k, d);
    let cols = filtered_degree_indices(&degrees, k, d - 1);
    let block = filtered_operator_block(c.ops().as_slice(), n, n, &rows, &cols);
    let rhs: Vector = rows.iter().map(|&r| if r < n { alpha[r].clone() } else { Rational::zero() }).collect();
    let Some(x) = solve(&block, &rhs)? else {
        return Ok(None);
    };
    let mut full = zero_vector(n * (k + 1));
    for (&i, v) in cols.iter().zip(x) {
        full[i] = v;
    }
    let components = (0..=k).map(|i| full[i * n..(i + 1) * n].to_vec()).collect();
    WitnessedCycle::primitive(c, from_components(components), alpha.to_vec()).map(Some)
}

/// `Δᵏ(α₀) = Σ_{i=1}^{k} δⁱ(α_{k−i})` from a witness `α₀, …, α_{k−1}` of
/// `α₀ ∈ Z_{k−1}`.
pub fn delta_k_value(c: &S1Complex, k: usize, alphas: &[Vector]) -> Vector {
    assert_eq!(alphas.len(), k, "Δᵏ needs the witness α₀, …, α_(k−1)");
    let mut out = zero_vector(c.dim());
    for i in 1..=k.min(c.truncation()) {
        let term = c.delta(i).mul_vec(&alphas[k - i]).expect("shape");
        for (o, t) in out.iter_mut().zip(term) {
            *o += t;
        }
    }
    out
}

/// `Δᵏ: Z_{k−1}/B₀ → Z₀/B_{k−1}` in the complement bases of both quotients.
#[derive(Debug, Clone)]
pub struct DeltaKMap {
    pub k: usize,
    pub domain: Subquotient,
    pub codomain: Subquotient,
    /// `codomain.dim() × domain.dim()`.
    pub matrix: SparseMatrix,
    pub domain_degrees: Vec<i64>,
    pub codomain_degrees: Vec<i64>,
}

impl DeltaKMap {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn kernel_dim(&self) -> usize {
        self.domain.dim() - self.rank()
    }

    pub fn cokernel_dim(&self) -> usize {
        self.codomain.dim() - self.rank()
    }

    /// Rank of the restriction to domain classes of degree `d`.
    pub fn rank_in_degree(&self, d: i64) -> usize {
        let cols: Vec<usize> = (0..self.domain_degrees.len()).filter(|&i| self.domain_degrees[i] == d).collect();
        self.matrix.select_columns(&cols).rank()
    }
}

fn class_degrees(space: &Subquotient, degrees: &[i64]) -> Vec<i64> {
    space
        .complement_basis()
        .iter()
        .map(|v| vector_degree(v, degrees).expect("nonzero class"))
        .collect()
}

/// All `Z_j` and `B_j` for `j ≤ N`, computed once.
#[derive(Debug, Clone)]
pub struct Filtration {
    complex: S1Complex,
    z: Vec<FiltrationSpace>,
    b: Vec<FiltrationSpace>,
}

impl Filtration {
    pub fn new(c: &S1Complex) -> Result<Self> {
        let n = c.truncation();
        let z = (0..=n).map(|k| z_space(c, k)).collect::<Result<_>>()?;
        let b = (0..=n).map(|k| b_space(c, k)).collect::<Result<_>>()?;
        Ok(Filtration { complex: c.clone(), z, b })
    }

    pub fn complex(&self) -> &S1Complex {
        &self.complex
    }

    pub fn z(&self, k: usize) -> &FiltrationSpace {
        &self.z[k]
    }

    pub fn b(&self, k: usize) -> &FiltrationSpace {
        &self.b[k]
    }

    /// `Z_{zl} / B_{bl}` as a subquotient of `C`.
    pub fn quotient(&self, zl: usize, bl: usize) -> Result<Subquotient> {
        Ok(Subquotient::new(self.complex.dim(), &self.z[zl].vectors(), &self.b[bl].vectors())?)
    }

    pub fn delta_k(&self, k: usize) -> Result<DeltaKMap> {
        let c = &self.complex;
        if k == 0 || 2 * k > c.truncation() {
            return Err(Error::UnsupportedTruncation {
                k,
                truncation: c.truncation(),
            });
        }
        let domain = self.quotient(k - 1, 0)?;
        let codomain = self.quotient(0, k - 1)?;
        let matrix = self.induced(&domain, &self.z[k - 1], &codomain, |w| delta_k_value(c, k, w.alphas()))?;
        let degrees = c.degrees();
        Ok(DeltaKMap {
            k,
            domain_degrees: class_degrees(&domain, &degrees),
            codomain_degrees: class_degrees(&codomain, &degrees),
            domain,
            codomain,
            matrix,
        })
    }

    /// `Δ̄ᵏ` on `Z_{k−1}/B_{k−1}`, the differential whose homology is
    /// `Z_k/B_k`.
    pub fn delta_bar_k(&self, k: usize) -> Result<DeltaKMap> {
        let c = &self.complex;
        if k == 0 || 2 * k > c.truncation() {
            return Err(Error::UnsupportedTruncation {
                k,
                truncation: c.truncation(),
            });
        }
        let space = self.quotient(k - 1, k - 1)?;
        let matrix = self.induced(&space, &self.z[k - 1], &space, |w| delta_k_value(c, k, w.alphas()))?;
        let degrees = class_degrees(&space, &c.degrees());
        Ok(DeltaKMap {
            k,
            domain: space.clone(),
            codomain: space,
            matrix,
            domain_degrees: degrees.clone(),
            codomain_degrees: degrees,
        })
    }

    /// Matrix of `map` on the complement basis of `domain`, whose vectors
    /// are generators of `witnesses`.
    fn induced<F>(&self, domain: &Subquotient, witnesses: &FiltrationSpace, codomain: &Subquotient, map: F) -> Result<SparseMatrix>
    where
        F: Fn(&WitnessedCycle) -> Vector,
    {
        let columns = domain
            .complement_indices()
            .iter()
            .map(|&j| {
                codomain
                    .coordinates(&map(&witnesses.basis[j]))?
                    .ok_or_else(|| Error::InvalidComplex("induced value leaves the target space".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(codomain.dim(), &columns))
    }

    /// Page `E_{k+1} = ⊕_{i=0}^{N} u⁻ⁱ Z_{min(i,k)}/B_{min(k,N−i)}`.
    ///
    /// The `i = 0` column uses the same formula as the others. The page
    /// differential (induced by `Δ^{k+1}`) is attached when `2(k+1) ≤ N`.
    pub fn page(&self, k: usize) -> Result<LerayPage> {
        let c = &self.complex;
        let n = c.truncation();
        if k > n {
            return Err(Error::LevelAboveTruncation { level: k, truncation: n });
        }
        let degrees = c.degrees();
        let columns = (0..=n)
            .map(|i| {
                let (zl, bl) = (i.min(k), k.min(n - i));
                let space = self.quotient(zl, bl)?;
                let mut dims = BTreeMap::new();
                for d in class_degrees(&space, &degrees) {
                    *dims.entry(d - 2 * i as i64).or_insert(0) += 1;
                }
                Ok(PageColumn {
                    power: i,
                    z_level: zl,
                    b_level: bl,
                    space,
                    dims,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let differentials = if 2 * (k + 1) <= n {
            let mut out = Vec::new();
            for i in 0..=n - (k + 1) {
                let s = i + k + 1;
                let matrix = self.induced(&columns[s].space, &self.z[k], &columns[i].space, |w| delta_k_value(c, k + 1, w.alphas()))?;
                out.push(PageDifferential {
                    source_power: s,
                    target_power: i,
                    matrix,
                });
            }
            Some(out)
        } else {
            None
        };
        Ok(LerayPage {
            page: k + 1,
            truncation: n,
            columns,
            differentials,
        })
    }
}

/// One column `u⁻ⁱ Z/B` of a Leray page.
#[derive(Debug, Clone)]
pub struct PageColumn {
    pub power: usize,
    pub z_level: usize,
    pub b_level: usize,
    pub space: Subquotient,
    /// Dimensions by total degree (`|x| − 2i`).
    pub dims: BTreeMap<i64, usize>,
}

#[derive(Debug, Clone)]
pub struct PageDifferential {
    pub source_power: usize,
    pub target_power: usize,
    pub matrix: SparseMatrix,
}

#[derive(Debug, Clone)]
pub struct LerayPage {
    pub page: usize,
    pub truncation: usize,
    pub columns: Vec<PageColumn>,
    pub differentials: Option<Vec<PageDifferential>>,
}

impl LerayPage {
    /// Total dimension by total degree.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for col in &self.columns {
            for (&d, &m) in &col.dims {
                *out.entry(d).or_insert(0) += m;
            }
        }
        out
    }
}

/// `Δᵏ` of `C`; needs `1 ≤ k` and `2k ≤ N`.
pub fn delta_k(c: &S1Complex, k: usize) -> Result<DeltaKMap> {
    if k == 0 || 2 * k > c.truncation() {
        return Err(Error::UnsupportedTruncation {
            k,
            truncation: c.truncation(),
        });
    }
    // Only Z_{k−1}, Z₀, B₀, B_{k−1} are needed.
    Filtration::new(&c.truncate(2 * k)?)?.delta_k(k)
}

/// Page `k + 1` of the spectral sequence of `F^n C⁺`.
pub fn leray_page(c: &S1Complex, n: usize, k: usize) -> Result<LerayPage> {
    Filtration::new(&c.truncate(n)?)?.page(k)
}
