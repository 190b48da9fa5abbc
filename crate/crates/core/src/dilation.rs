//! Split complexes `0 → C₀ → C → C₊ → 0` and k-(semi)-dilations.

use std::ops::RangeInclusive;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{filtered_degree_indices, filtered_operator, filtered_operator_block, vector_degree, CohomologySpace, S1Complex};
use crate::error::{Error, Result};
use crate::linalg::{independent_subset, is_zero_vector, solve, span_rank, unit_vector, zero_vector, MatrixBuilder, Rational, SparseMatrix, Vector};
use crate::morphism::{phi_k, PhiKMap, S1Morphism};
use crate::spectral::{delta_k, solve_primitive, DeltaKMap, WitnessedCycle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Zero,
    Plus,
}

/// An S¹-complex with a splitting `C = C₀ ⊕ C₊` and a unit `e ∈ C₀`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitS1Complex {
    complex: S1Complex,
    parts: Vec<Part>,
    unit: Vector,
}

/// An operator entry that breaks the splitting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitViolation {
    pub order: usize,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub complex_valid: bool,
    /// Entries of `δ⁰` from `C₀` into `C₊`.
    pub not_subcomplex: Vec<SplitViolation>,
    /// Nonzero entries of `δʳ|_{C₀}`, `r ≥ 1`.
    pub higher_on_zero: Vec<SplitViolation>,
    pub unit_in_zero: bool,
    pub unit_degree_zero: bool,
    pub unit_closed: bool,
    pub unit_non_exact: bool,
    pub valid: bool,
}

impl SplitS1Complex {
    /// Checks only lengths; see [`SplitS1Complex::verify_splitting`].
    pub fn new(complex: S1Complex, parts: Vec<Part>, unit: Vector) -> Result<Self> {
        if parts.len() != complex.dim() || unit.len() != complex.dim() {
            return Err(Error::InvalidSplitting(format!(
                "complex has {} generators, partition has {}, unit has {}",
                complex.dim(),
                parts.len(),
                unit.len()
            )));
        }
        Ok(SplitS1Complex { complex, parts, unit })
    }

    /// `C₀` spanned by the generators named in `zero`, unit `e` given by name.
    pub fn from_names(complex: S1Complex, zero: &[&str], unit: &str) -> Result<Self> {
        let mut parts = vec![Part::Plus; complex.dim()];
        for name in zero {
            parts[complex.index_of(name)?] = Part::Zero;
        }
        let unit = unit_vector(complex.dim(), complex.index_of(unit)?);
        Self::new(complex, parts, unit)
    }

    pub fn complex(&self) -> &S1Complex {
        &self.complex
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn truncation(&self) -> usize {
        self.complex.truncation()
    }

    fn indices(&self, part: Part) -> Vec<usize> {
        (0..self.parts.len()).filter(|&i| self.parts[i] == part).collect()
    }

    pub fn zero_indices(&self) -> Vec<usize> {
        self.indices(Part::Zero)
    }

    pub fn plus_indices(&self) -> Vec<usize> {
        self.indices(Part::Plus)
    }

    /// `(C₀, δ₀)`.
    pub fn zero_complex(&self) -> S1Complex {
        self.complex.restrict(&self.zero_indices())
    }

    /// `(C₊, δ₊)`, the quotient complex.
    pub fn plus_complex(&self) -> S1Complex {
        self.complex.restrict(&self.plus_indices())
    }

    /// The unit in the coordinates of `C₀`.
    pub fn unit_in_zero(&self) -> Vector {
        self.zero_indices().iter().map(|&i| self.unit[i].clone()).collect()
    }

    /// Same truncation with `δʳ` dropped for `r > n`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        Self::new(self.complex.truncate(n)?, self.parts.clone(), self.unit.clone())
    }

    pub fn verify_splitting(&self) -> SplittingReport {
        let c = &self.complex;
        let name = |i: usize| c.basis()[i].name.clone();
        let mut not_subcomplex = Vec::new();
        let mut higher_on_zero = Vec::new();
        for r in 0..=c.truncation() {
            for (to, from, _) in c.delta(r).triplets() {
                if self.parts[from] != Part::Zero {
                    continue;
                }
                let v = SplitViolation {
                    order: r,
                    from: name(from),
                    to: name(to),
                };
                if r >= 1 {
                    higher_on_zero.push(v);
                } else if self.parts[to] == Part::Plus {
                    not_subcomplex.push(v);
                }
            }
        }
        let unit_in_zero = self.unit.iter().zip(&self.parts).all(|(x, p)| x.is_zero() || *p == Part::Zero);
        let unit_degree_zero = vector_degree(&self.unit, &c.degrees()) == Some(0);
        let unit_closed = c.delta(0).mul_vec(&self.unit).map(|v| is_zero_vector(&v)).unwrap_or(false);
        let unit_non_exact = unit_in_zero && unit_degree_zero && {
            let z = self.zero_complex();
            matches!(solve_primitive(&z.truncate(0).expect("level 0"), 0, &self.unit_in_zero()), Ok(None))
        };
        let complex_valid = c.verify_s1_relations().valid;
        let valid = complex_valid
            && not_subcomplex.is_empty()
            && higher_on_zero.is_empty()
            && unit_in_zero
            && unit_degree_zero
            && unit_closed
            && unit_non_exact;
        SplittingReport {
            complex_valid,
            not_subcomplex,
            higher_on_zero,
            unit_in_zero,
            unit_degree_zero,
            unit_closed,
            unit_non_exact,
            valid,
        }
    }

    fn require_valid(&self) -> Result<()> {
        let r = self.verify_splitting();
        if r.valid {
            Ok(())
        } else {
            Err(Error::InvalidSplitting(format!("{r:?}")))
        }
    }

    /// `δ₊,₀: C₊ → C₀[1]`, the blocks of `δʳ` from `C₊` to `C₀`.
    pub fn connecting_morphism(&self) -> S1Morphism {
        let (zero, plus) = (self.zero_indices(), self.plus_indices());
        let phi = self
            .complex
            .ops()
            .as_slice()
            .iter()
            .map(|d| d.select_rows(&zero).select_columns(&plus))
            .collect();
        S1Morphism::new(self.plus_complex(), self.zero_complex().shifted(), phi).expect("blocks have matching shapes")
    }

    /// The functional `π₀` on `C₀`: zero off degree 0, kills `im δ⁰₀`, and
    /// reads the `e`-coordinate of a degree-0 cycle.
    ///
    /// Degree-0 chains are written in the basis `e`, then a basis of
    /// `im δ⁰₀`, then of `ker δ⁰₀`, then standard vectors, each taken
    /// greedily; `π₀` is the first dual coordinate.
    pub fn pi0(&self) -> Result<Vector> {
        let z = self.zero_complex();
        let degrees = z.degrees();
        let at = |d: i64| -> Vec<usize> { (0..degrees.len()).filter(|&i| degrees[i] == d).collect() };
        let (deg0, deg_m1, deg1) = (at(0), at(-1), at(1));
        let v = deg0.len();
        let e0: Vector = deg0.iter().map(|&i| self.unit_in_zero()[i].clone()).collect();
        let d0 = z.delta(0);
        let boundaries = d0.select_rows(&deg0).select_columns(&deg_m1).image_basis();
        let cycles = d0.select_rows(&deg1).select_columns(&deg0).kernel_basis();
        if span_rank(&boundaries, v) == span_rank(&[boundaries.clone(), vec![e0.clone()]].concat(), v) {
            return Err(Error::InvalidSplitting("unit is exact in C₀".into()));
        }
        let candidates: Vec<Vector> = std::iter::once(e0)
            .chain(boundaries)
            .chain(cycles)
            .chain((0..v).map(|i| unit_vector(v, i)))
            .collect();
        let chosen: Vec<Vector> = independent_subset(&candidates, v).into_iter().map(|i| candidates[i].clone()).collect();
        let m = SparseMatrix::from_columns(v, &chosen);
        let lambda = solve(&m.transpose(), &unit_vector(v, 0))?.expect("basis matrix is invertible");
        let mut out = zero_vector(z.dim());
        for (&i, x) in deg0.iter().zip(lambda) {
            out[i] = x;
        }
        Ok(out)
    }
}

/// `Found(k)` or "not within the truncation".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Order {
    Found { k: usize },
    GreaterThanTruncation { truncation: usize },
}

impl Order {
    pub fn found(&self) -> Option<usize> {
        match self {
            Order::Found { k } => Some(*k),
            Order::GreaterThanTruncation { .. } => None,
        }
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Order::Found { k } => write!(f, "{k}"),
            Order::GreaterThanTruncation { truncation } => write!(f, "> {truncation}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilationCheck {
    pub k: usize,
    pub holds: bool,
    /// Components of the witness by power of `u⁻¹` (index 0 is `u⁰`).
    #[serde(serialize_with = "crate::linalg::serialize_chains")]
    pub witness: Option<Vec<Vector>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilationReport {
    pub truncation: usize,
    pub order: Order,
    /// Outcome for every `k ≤ N`.
    pub checks: Vec<bool>,
    #[serde(serialize_with = "crate::linalg::serialize_chains")]
    pub witness: Option<Vec<Vector>>,
}

fn check_k(s: &SplitS1Complex, k: usize) -> Result<()> {
    if k > s.truncation() {
        return Err(Error::LevelAboveTruncation {
            level: k,
            truncation: s.truncation(),
        });
    }
    Ok(())
}

/// Whether `e` is `δ^{S¹}`-exact in `F^k C⁺`.
pub fn has_k_dilation(s: &SplitS1Complex, k: usize) -> Result<DilationCheck> {
    check_k(s, k)?;
    let w = solve_primitive(&s.complex, k, &s.unit)?;
    Ok(DilationCheck {
        k,
        holds: w.is_some(),
        witness: w.as_ref().map(WitnessedCycle::components),
    })
}

/// What the semi-dilation checks at every level share: `C₊`, `δ₊,₀`, `π₀`
/// and the rows `λ·δʳ₊,₀` over the coordinates of `C₊`.
struct SemiContext {
    plus: S1Complex,
    conn: S1Morphism,
    lambda: Vector,
    mu: Vec<Vector>,
}

impl SemiContext {
    fn new(s: &SplitS1Complex) -> Result<Self> {
        s.require_valid()?;
        let conn = s.connecting_morphism();
        let lambda = s.pi0()?;
        let mu = conn
            .components()
            .iter()
            .map(|m| Ok(m.transpose().mul_vec(&lambda)?))
            .collect::<Result<_>>()?;
        Ok(SemiContext {
            plus: s.plus_complex(),
            conn,
            lambda,
            mu,
        })
    }

    fn check(&self, k: usize) -> Result<DilationCheck> {
        let plus = &self.plus;
        let n = plus.dim();
        let degrees = plus.degrees();
        let cols = filtered_degree_indices(&degrees, k, -1);
        let rows = filtered_degree_indices(&degrees, k, 0);
        let closed = filtered_operator_block(plus.ops().as_slice(), n, n, &rows, &cols);
        let mut b = MatrixBuilder::new(rows.len() + 1, cols.len());
        b.add_block(0, 0, &closed, &Rational::one());
        for (cp, &c) in cols.iter().enumerate() {
            let (i, g) = (c / n, c % n);
            b.add(rows.len(), cp, &self.mu[i][g]);
        }
        let mut rhs = zero_vector(rows.len() + 1);
        rhs[rows.len()] = Rational::one();
        let Some(x) = solve(&b.build(), &rhs)? else {
            return Ok(DilationCheck {
                k,
                holds: false,
                witness: None,
            });
        };
        let mut components = vec![zero_vector(n); k + 1];
        for (&c, v) in cols.iter().zip(x) {
            components[c / n][c % n] = v;
        }
        self.verify(&components)?;
        Ok(DilationCheck {
            k,
            holds: true,
            witness: Some(components),
        })
    }

    fn verify(&self, components: &[Vector]) -> Result<()> {
        if !self.plus.apply_s1(components).iter().all(|x| is_zero_vector(x)) {
            return Err(Error::InvalidComplex("semi-dilation witness is not closed".into()));
        }
        let image = self.conn.apply_s1(components).swap_remove(0);
        let value: Rational = self.lambda.iter().zip(&image).map(|(a, b)| a * b).sum();
        if !value.is_one() {
            return Err(Error::InvalidComplex(format!("semi-dilation witness has π₀ value {value}")));
        }
        Ok(())
    }
}

/// Whether a closed `A ∈ F^k C₊⁺` has `π₀[δ₊,₀(A)] = [e]`.
pub fn has_k_semidilation(s: &SplitS1Complex, k: usize) -> Result<DilationCheck> {
    check_k(s, k)?;
    SemiContext::new(s)?.check(k)
}

/// Re-checks a semi-dilation witness: `δ₊^{S¹} A = 0` and `π₀` of the
/// `u⁰` part of `δ₊,₀^{S¹}(A)` is 1.
pub fn verify_semidilation_witness(s: &SplitS1Complex, components: &[Vector]) -> Result<()> {
    SemiContext::new(s)?.verify(components)
}

fn scan<F>(n: usize, check: F) -> Result<DilationReport>
where
    F: Fn(usize) -> Result<DilationCheck>,
{
    let results = (0..=n).map(check).collect::<Result<Vec<_>>>()?;
    let first = results.iter().position(|r| r.holds);
    if let Some(found) = first {
        if let Some(failed) = results[found..].iter().position(|r| !r.holds) {
            return Err(Error::NotMonotone {
                found,
                failed: found + failed,
            });
        }
    }
    Ok(DilationReport {
        truncation: n,
        order: match first {
            Some(k) => Order::Found { k },
            None => Order::GreaterThanTruncation { truncation: n },
        },
        checks: results.iter().map(|r| r.holds).collect(),
        witness: first.and_then(|k| results[k].witness.clone()),
    })
}

/// Smallest `k ≤ n` with a k-dilation.
pub fn order_of_dilation(s: &SplitS1Complex, n: usize) -> Result<DilationReport> {
    s.require_valid()?;
    let s = s.truncate(n)?;
    scan(n, |k| has_k_dilation(&s, k))
}

/// Smallest `k ≤ n` with a k-semi-dilation.
pub fn order_of_semidilation(s: &SplitS1Complex, n: usize) -> Result<DilationReport> {
    let ctx = SemiContext::new(&s.truncate(n)?)?;
    scan(n, |k| ctx.check(k))
}

/// Torsion test at level `k`: a closed `x ∈ F^N C₊⁺` whose connecting class
/// is `[e]` (or only has `π₀`-image `[e]` when `semi`), with `u^{k+1}x`
/// exact in `F^{N−k−1}C₊⁺`.
pub fn torsion_check(s: &SplitS1Complex, k: usize, semi: bool) -> Result<DilationCheck> {
    check_k(s, k)?;
    s.require_valid()?;
    let big_n = s.truncation();
    let plus = s.plus_complex();
    let zero = s.zero_complex();
    let conn = s.connecting_morphism();
    let (np, n0) = (plus.dim(), zero.dim());
    let (dp, d0) = (plus.degrees(), zero.degrees());

    let cols_x = filtered_degree_indices(&dp, big_n, -1);
    let cols_z = if semi { Vec::new() } else { filtered_degree_indices(&d0, big_n, -1) };
    let low = (k < big_n).then(|| big_n - k - 1);
    let cols_y = low.map_or_else(Vec::new, |l| filtered_degree_indices(&dp, l, 2 * k as i64));

    let rows_closed = filtered_degree_indices(&dp, big_n, 0);
    let rows_unit = if semi { Vec::new() } else { filtered_degree_indices(&d0, big_n, 0) };
    let rows_torsion = low.map_or_else(Vec::new, |l| filtered_degree_indices(&dp, l, 2 * k as i64 + 1));

    let (ox, oz, oy) = (0, cols_x.len(), cols_x.len() + cols_z.len());
    let ncols = oy + cols_y.len();
    let r_unit = rows_closed.len();
    let r_torsion = r_unit + if semi { 1 } else { rows_unit.len() };
    let nrows = r_torsion + rows_torsion.len();
    let one = Rational::one();
    let mut b = MatrixBuilder::new(nrows, ncols);
    let mut rhs = zero_vector(nrows);

    b.add_block(
        0,
        ox,
        &filtered_operator_block(plus.ops().as_slice(), np, np, &rows_closed, &cols_x),
        &one,
    );
    if semi {
        let mu = SemiContext::new(s)?.mu;
        for (cp, &c) in cols_x.iter().enumerate() {
            b.add(r_unit, ox + cp, &mu[c / np][c % np]);
        }
        rhs[r_unit] = one.clone();
    } else {
        b.add_block(r_unit, ox, &filtered_operator_block(conn.components(), n0, np, &rows_unit, &cols_x), &one);
        b.add_block(
            r_unit,
            oz,
            &filtered_operator_block(zero.ops().as_slice(), n0, n0, &rows_unit, &cols_z),
            &one,
        );
        let e0 = s.unit_in_zero();
        for (rp, &r) in rows_unit.iter().enumerate() {
            if r < n0 {
                rhs[r_unit + rp] = e0[r].clone();
            }
        }
    }
    if !rows_torsion.is_empty() {
        let pos: std::collections::HashMap<usize, usize> = rows_torsion.iter().enumerate().map(|(p, &r)| (r, p)).collect();
        for (cp, &c) in cols_x.iter().enumerate() {
            let (i, g) = (c / np, c % np);
            if i > k {
                if let Some(&rp) = pos.get(&((i - k - 1) * np + g)) {
                    b.add(r_torsion + rp, ox + cp, &one);
                }
            }
        }
        let dy = filtered_operator_block(plus.ops().as_slice(), np, np, &rows_torsion, &cols_y);
        b.add_block(r_torsion, oy, &dy, &-one.clone());
    }
    let Some(sol) = solve(&b.build(), &rhs)? else {
        return Ok(DilationCheck {
            k,
            holds: false,
            witness: None,
        });
    };
    let mut components = vec![zero_vector(np); big_n + 1];
    for (&c, v) in cols_x.iter().zip(sol) {
        components[c / np][c % np] = v;
    }
    Ok(DilationCheck {
        k,
        holds: true,
        witness: Some(components),
    })
}

/// The order found through [`torsion_check`] instead of exactness of `e`.
pub fn order_via_torsion(s: &SplitS1Complex, n: usize) -> Result<DilationReport> {
    let s = s.truncate(n)?;
    scan(n, |k| torsion_check(&s, k, false))
}

/// Semi-dilation variant of [`order_via_torsion`].
pub fn semidilation_order_via_torsion(s: &SplitS1Complex, n: usize) -> Result<DilationReport> {
    let s = s.truncate(n)?;
    scan(n, |k| torsion_check(&s, k, true))
}

/// `Δᵏ₊`, i.e. `Δᵏ` of `(C₊, δ₊)`.
pub fn delta_plus_k(s: &SplitS1Complex, k: usize) -> Result<DeltaKMap> {
    delta_k(&s.plus_complex(), k)
}

/// `Δᵏ₊,₀`, the `Φᵏ` of the connecting morphism.
pub fn delta_plus0_k(s: &SplitS1Complex, k: usize) -> Result<PhiKMap> {
    phi_k(&s.connecting_morphism(), k)
}

/// `Δᵏ_∂`: `Δᵏ₊,₀` followed by a degree-0 cochain map `r: C₀ → D`.
pub fn delta_partial_k(s: &SplitS1Complex, r: &SparseMatrix, d: &S1Complex, k: usize) -> Result<PhiKMap> {
    if !d.has_trivial_higher_structure() {
        return Err(Error::NontrivialHigherStructure);
    }
    let zero = s.zero_complex();
    if r.nrows() != d.dim() || r.ncols() != zero.dim() {
        return Err(Error::InvalidMorphism(format!(
            "map is {}x{}, expected {}x{}",
            r.nrows(),
            r.ncols(),
            d.dim(),
            zero.dim()
        )));
    }
    let (dz, dd) = (zero.degrees(), d.degrees());
    let preserves_degree = r.triplets().all(|(i, j, _)| dd[i] == dz[j]);
    if !preserves_degree || (r * zero.delta(0)) != (d.delta(0) * r) {
        return Err(Error::NotACochainMap);
    }
    let d = S1Complex::with_differential(d.basis().to_vec(), d.delta(0).clone(), s.truncation())?;
    let rho = S1Morphism::from_chain_map(&zero.shifted(), &d.shifted(), r.clone())?;
    phi_k(&rho.compose(&s.connecting_morphism())?, k)
}

/// One term of the long exact sequence in a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LesNode {
    pub degree: i64,
    /// `"zero"`, `"full"` or `"plus"`.
    pub space: &'static str,
    pub dim: usize,
    pub rank_in: usize,
    pub rank_out: usize,
    pub compose_zero: bool,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub truncation: usize,
    pub nodes: Vec<LesNode>,
    pub exact: bool,
}

fn induced_on(source: &CohomologySpace, target: &CohomologySpace, m: &SparseMatrix) -> Result<SparseMatrix> {
    let columns = source
        .space
        .complement_basis()
        .iter()
        .map(|v| {
            target
                .space
                .coordinates(&m.mul_vec(v)?)?
                .ok_or_else(|| Error::InvalidComplex("map does not send cycles to cycles".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(target.dim(), &columns))
}

/// Exactness of `H(F^N C₀⁺) → H(F^N C⁺) → H(F^N C₊⁺) → H^{+1}(F^N C₀⁺)` at
/// every node with degree in `window`.
pub fn tautological_les(s: &SplitS1Complex, window: RangeInclusive<i64>) -> Result<LesReport> {
    s.require_valid()?;
    let big_n = s.truncation();
    let c = &s.complex;
    let (zero_idx, plus_idx) = (s.zero_indices(), s.plus_indices());
    let (n, n0, np) = (c.dim(), zero_idx.len(), plus_idx.len());
    let zero = s.zero_complex();
    let plus = s.plus_complex();
    let h0 = zero.filtered_plus(big_n)?.as_graded().cohomology_space()?;
    let h = c.filtered_plus(big_n)?.as_graded().cohomology_space()?;
    let hp = plus.filtered_plus(big_n)?.as_graded().cohomology_space()?;

    let one = Rational::one();
    let mut iota = MatrixBuilder::new(n * (big_n + 1), n0 * (big_n + 1));
    let mut pi = MatrixBuilder::new(np * (big_n + 1), n * (big_n + 1));
    for i in 0..=big_n {
        for (g0, &g) in zero_idx.iter().enumerate() {
            iota.add(i * n + g, i * n0 + g0, &one);
        }
        for (gp, &g) in plus_idx.iter().enumerate() {
            pi.add(i * np + gp, i * n + g, &one);
        }
    }
    let conn = s.connecting_morphism();
    let partial = filtered_operator(conn.components(), n0, np, big_n);
    let iota = induced_on(&h0, &h, &iota.build())?;
    let pi = induced_on(&h, &hp, &pi.build())?;
    let partial = induced_on(&hp, &h0, &partial)?;

    let restricted_rank = |m: &SparseMatrix, cols: &[usize]| m.select_columns(cols).rank();
    let mut nodes = Vec::new();
    for d in window {
        let specs: [(&'static str, &CohomologySpace, &SparseMatrix, &CohomologySpace, i64, &SparseMatrix); 3] = [
            ("zero", &h0, &partial, &hp, d - 1, &iota),
            ("full", &h, &iota, &h0, d, &pi),
            ("plus", &hp, &pi, &h, d, &partial),
        ];
        for (space, here, into, prev, prev_degree, out) in specs {
            let incoming = prev.classes_in_degree(prev_degree);
            let own = here.classes_in_degree(d);
            let rank_in = restricted_rank(into, &incoming);
            let rank_out = restricted_rank(out, &own);
            let compose_zero = (out * into).select_columns(&incoming).is_zero();
            let dim = own.len();
            nodes.push(LesNode {
                degree: d,
                space,
                dim,
                rank_in,
                rank_out,
                compose_zero,
                exact: compose_zero && rank_in + rank_out == dim,
            });
        }
    }
    let exact = nodes.iter().all(|x| x.exact);
    Ok(LesReport {
        truncation: big_n,
        nodes,
        exact,
    })
}
