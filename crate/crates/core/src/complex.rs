//! Truncated S¹-cochain complexes and the filtered complexes `F^k C⁺`.

use std::collections::{BTreeMap, HashMap};
use std::ops::RangeInclusive;

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{zero_vector, Rational, SparseMatrix, Subquotient, Vector};

/// A basis element of `C` with its cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// The operators `δ⁰, …, δᴺ` of an `N`-truncated structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorFamily {
    delta: Vec<SparseMatrix>,
}

impl OperatorFamily {
    /// `delta[r]` is `δʳ`; the truncation is `delta.len() - 1`.
    pub fn new(delta: Vec<SparseMatrix>) -> Result<Self> {
        if delta.is_empty() {
            return Err(Error::OperatorCount {
                truncation: 0,
                expected: 1,
                found: 0,
            });
        }
        Ok(OperatorFamily { delta })
    }

    /// `δ⁰ = d` and every higher operator zero.
    pub fn trivial(d: SparseMatrix, truncation: usize) -> Self {
        let n = d.nrows();
        let mut delta = vec![d];
        delta.extend((0..truncation).map(|_| SparseMatrix::zeros(n, n)));
        OperatorFamily { delta }
    }

    pub fn truncation(&self) -> usize {
        self.delta.len() - 1
    }

    pub fn delta(&self, r: usize) -> &SparseMatrix {
        &self.delta[r]
    }

    pub fn as_slice(&self) -> &[SparseMatrix] {
        &self.delta
    }
}

/// A finite-dimensional graded vector space `C` with an `N`-truncated
/// S¹-structure.
///
/// Construction only checks shapes and names. Use
/// [`S1Complex::verify_s1_relations`] to check degrees and the relations
/// `Σ_{i+j=k} δⁱδʲ = 0`; the algorithms in this crate assume a valid input.
#[derive(Debug, Clone)]
pub struct S1Complex {
    basis: Vec<Generator>,
    ops: OperatorFamily,
    index: HashMap<String, usize>,
}

impl PartialEq for S1Complex {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.ops == other.ops
    }
}

impl Eq for S1Complex {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeViolation {
    pub order: usize,
    pub from: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationStatus {
    pub k: usize,
    pub holds: bool,
}

/// Outcome of [`S1Complex::verify_s1_relations`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub truncation: usize,
    pub degree_violations: Vec<DegreeViolation>,
    pub relations: Vec<RelationStatus>,
    pub valid: bool,
}

impl S1Complex {
    pub fn new(basis: Vec<Generator>, ops: OperatorFamily) -> Result<Self> {
        let n = basis.len();
        let mut index = HashMap::with_capacity(n);
        for (i, g) in basis.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        for (order, d) in ops.as_slice().iter().enumerate() {
            if d.nrows() != n || d.ncols() != n {
                return Err(Error::OperatorShape {
                    order,
                    rows: d.nrows(),
                    cols: d.ncols(),
                    expected: n,
                });
            }
        }
        Ok(S1Complex { basis, ops, index })
    }

    /// A complex with differential `d` and no higher structure.
    pub fn with_differential(basis: Vec<Generator>, d: SparseMatrix, truncation: usize) -> Result<Self> {
        Self::new(basis, OperatorFamily::trivial(d, truncation))
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn truncation(&self) -> usize {
        self.ops.truncation()
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.basis.iter().map(|g| g.degree).collect()
    }

    pub fn ops(&self) -> &OperatorFamily {
        &self.ops
    }

    /// `δʳ`. Panics if `r > N`.
    pub fn delta(&self, r: usize) -> &SparseMatrix {
        self.ops.delta(r)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Whether `δʳ = 0` for all `r ≥ 1`.
    pub fn has_trivial_higher_structure(&self) -> bool {
        self.ops.as_slice()[1..].iter().all(SparseMatrix::is_zero)
    }

    /// The same operators, forgetting `δʳ` for `r > n`.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        if n > self.truncation() {
            return Err(Error::LevelAboveTruncation {
                level: n,
                truncation: self.truncation(),
            });
        }
        let ops = OperatorFamily::new(self.ops.as_slice()[..=n].to_vec())?;
        Self::new(self.basis.clone(), ops)
    }

    /// The shift `C[1]`: degrees lowered by one, every operator negated.
    pub fn shifted(&self) -> Self {
        let basis = self.basis.iter().map(|g| Generator::new(g.name.clone(), g.degree - 1)).collect();
        let ops = OperatorFamily {
            delta: self.ops.as_slice().iter().map(|d| -d).collect(),
        };
        S1Complex {
            basis,
            ops,
            index: self.index.clone(),
        }
    }

    /// Compresses every operator to the listed generators (`p δʳ ι`).
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let basis: Vec<Generator> = indices.iter().map(|&i| self.basis[i].clone()).collect();
        let ops = OperatorFamily {
            delta: self
                .ops
                .as_slice()
                .iter()
                .map(|d| d.select_rows(indices).select_columns(indices))
                .collect(),
        };
        Self::new(basis, ops).expect("restriction of a valid complex")
    }

    /// `Σ_{i+j=k} δⁱ δʲ`.
    pub fn relation(&self, k: usize) -> SparseMatrix {
        let n = self.dim();
        (0..=k).fold(SparseMatrix::zeros(n, n), |acc, i| &acc + &(self.delta(i) * self.delta(k - i)))
    }

    /// Checks degree shifts and the truncated relations for `k ≤ N`.
    pub fn verify_s1_relations(&self) -> RelationReport {
        let mut degree_violations = Vec::new();
        for (order, d) in self.ops.as_slice().iter().enumerate() {
            let shift = 1 - 2 * order as i64;
            for (to, from, _) in d.triplets() {
                if self.basis[to].degree - self.basis[from].degree != shift {
                    degree_violations.push(DegreeViolation {
                        order,
                        from: self.basis[from].name.clone(),
                        to: self.basis[to].name.clone(),
                    });
                }
            }
        }
        let relations: Vec<RelationStatus> = (0..=self.truncation())
            .map(|k| RelationStatus {
                k,
                holds: self.relation(k).is_zero(),
            })
            .collect();
        let valid = degree_violations.is_empty() && relations.iter().all(|r| r.holds);
        RelationReport {
            truncation: self.truncation(),
            degree_violations,
            relations,
            valid,
        }
    }

    /// `F^k C⁺` with differential `δ^{S¹} = Σ uʳ δʳ`.
    pub fn filtered_plus(&self, k: usize) -> Result<FilteredPlusComplex> {
        if k > self.truncation() {
            return Err(Error::LevelAboveTruncation {
                level: k,
                truncation: self.truncation(),
            });
        }
        let n = self.dim();
        let degrees = (0..=k).flat_map(|i| self.basis.iter().map(move |g| g.degree - 2 * i as i64)).collect();
        Ok(FilteredPlusComplex {
            level: k,
            generators: n,
            degrees,
            differential: filtered_operator(self.ops.as_slice(), n, n, k),
        })
    }

    /// `δ^{S¹}(Σ u⁻ⁱ xᵢ)` by powers: entry `j` is `Σ_r δʳ x_{j+r}`.
    pub fn apply_s1(&self, components: &[Vector]) -> Vec<Vector> {
        let n = self.dim();
        (0..components.len())
            .map(|j| {
                let mut out = zero_vector(n);
                for (r, x) in components[j..].iter().enumerate().take(self.truncation() + 1) {
                    if x.iter().all(Zero::is_zero) {
                        continue;
                    }
                    for (o, t) in out.iter_mut().zip(self.delta(r).mul_vec(x).expect("shape")) {
                        *o += t;
                    }
                }
                out
            })
            .collect()
    }

    /// `(C, δ⁰)` as a plain graded complex.
    pub fn underlying(&self) -> GradedComplex {
        GradedComplex::new(self.degrees(), self.delta(0).clone())
    }

    /// The vector `Σ coeff · g` from `(name, coeff)` pairs.
    pub fn chain(&self, terms: &[(&str, Rational)]) -> Result<Vector> {
        let mut v = zero_vector(self.dim());
        for (name, c) in terms {
            v[self.index_of(name)?] += c;
        }
        Ok(v)
    }
}

/// Matrix of `Σ uʳ opʳ` from `F^level` of a space of dimension `cols` to
/// `F^level` of a space of dimension `rows`. Index of `(g, i)` is `i·dim + g`.
pub(crate) fn filtered_operator(ops: &[SparseMatrix], rows: usize, cols: usize, level: usize) -> SparseMatrix {
    let mut b = crate::linalg::MatrixBuilder::new(rows * (level + 1), cols * (level + 1));
    for i in 0..=level {
        for (r, op) in ops.iter().enumerate().take(i + 1) {
            b.add_block((i - r) * rows, i * cols, op, &Rational::from_integer(1.into()));
        }
    }
    b.build()
}

/// Same matrix as [`filtered_operator`], restricted to chosen global row and
/// column indices. Avoids materializing large zero blocks.
pub(crate) fn filtered_operator_block(ops: &[SparseMatrix], rows: usize, cols: usize, row_indices: &[usize], col_indices: &[usize]) -> SparseMatrix {
    let row_pos: HashMap<usize, usize> = row_indices.iter().enumerate().map(|(p, &r)| (r, p)).collect();
    let col_pos: HashMap<usize, usize> = col_indices.iter().enumerate().map(|(p, &c)| (c, p)).collect();
    let level = col_indices.iter().map(|&c| c / cols.max(1)).max().unwrap_or(0);
    let mut b = crate::linalg::MatrixBuilder::new(row_indices.len(), col_indices.len());
    for (r, op) in ops.iter().enumerate().take(level + 1) {
        for (h, g, v) in op.triplets() {
            for i in r..=level {
                if let (Some(&cp), Some(&rp)) = (col_pos.get(&(i * cols + g)), row_pos.get(&((i - r) * rows + h))) {
                    b.add(rp, cp, v);
                }
            }
        }
    }
    b.build()
}

/// Global indices of `F^level` basis elements `(g, i)` with `|g| − 2i = d`.
pub(crate) fn filtered_degree_indices(degrees: &[i64], level: usize, d: i64) -> Vec<usize> {
    let n = degrees.len();
    (0..=level)
        .flat_map(|i| {
            degrees
                .iter()
                .enumerate()
                .filter(move |(_, &deg)| deg - 2 * i as i64 == d)
                .map(move |(g, _)| i * n + g)
        })
        .collect()
}

/// `F^k C⁺ = C ⊗ ⟨1, u⁻¹, …, u⁻ᵏ⟩` with its differential.
///
/// The basis element `(g, i)` stands for `g·u⁻ⁱ`, has degree `|g| − 2i` and
/// global index `i·dim(C) + g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredPlusComplex {
    level: usize,
    generators: usize,
    degrees: Vec<i64>,
    differential: SparseMatrix,
}

impl FilteredPlusComplex {
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn differential(&self) -> &SparseMatrix {
        &self.differential
    }

    pub fn index(&self, generator: usize, power: usize) -> usize {
        power * self.generators + generator
    }

    /// `(generator, power)` for each global index.
    pub fn basis_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.level).flat_map(move |i| (0..self.generators).map(move |g| (g, i)))
    }

    /// Builds `Σ u⁻ⁱ components[i]`.
    pub fn assemble(&self, components: &[Vector]) -> Vector {
        assemble(components, self.generators, self.level)
    }

    /// The coefficient of `u⁻ⁱ` in `x`.
    pub fn component(&self, x: &[Rational], power: usize) -> Vector {
        x[power * self.generators..(power + 1) * self.generators].to_vec()
    }

    pub fn components(&self, x: &[Rational]) -> Vec<Vector> {
        (0..=self.level).map(|i| self.component(x, i)).collect()
    }

    /// Multiplication by `uᵖ` into `F^{level−p}` (lowers every power by `p`,
    /// killing powers below `p`).
    pub fn u_power(&self, p: usize) -> SparseMatrix {
        let n = self.generators;
        let target = self.level.saturating_sub(p);
        let entries = (p..=self.level).flat_map(|i| (0..n).map(move |g| ((i - p) * n + g, i * n + g, Rational::from_integer(1.into()))));
        let rows = if p > self.level { 0 } else { n * (target + 1) };
        SparseMatrix::from_triplets(rows, self.dim(), entries).expect("u-action indices")
    }

    pub fn as_graded(&self) -> GradedComplex {
        GradedComplex::new(self.degrees.clone(), self.differential.clone())
    }

    pub fn cohomology(&self, range: RangeInclusive<i64>) -> Result<CohomologyReport> {
        self.as_graded().cohomology(range)
    }
}

pub(crate) fn assemble(components: &[Vector], generators: usize, level: usize) -> Vector {
    let mut x = zero_vector(generators * (level + 1));
    for (i, c) in components.iter().enumerate().take(level + 1) {
        x[i * generators..(i + 1) * generators].clone_from_slice(c);
    }
    x
}

/// The degree of a nonzero homogeneous vector.
pub fn vector_degree(v: &[Rational], degrees: &[i64]) -> Option<i64> {
    let mut found = None;
    for (x, &d) in v.iter().zip(degrees) {
        if !x.is_zero() {
            match found {
                None => found = Some(d),
                Some(e) => debug_assert_eq!(e, d, "vector is not homogeneous"),
            }
        }
    }
    found
}

/// A cochain complex given by basis degrees and a degree-one differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex {
    pub degrees: Vec<i64>,
    pub differential: SparseMatrix,
}

/// Per-degree cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub dim: usize,
    pub representatives: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degrees: BTreeMap<i64, DegreeCohomology>,
}

impl CohomologyReport {
    pub fn dim(&self, degree: i64) -> usize {
        self.degrees.get(&degree).map_or(0, |d| d.dim)
    }

    pub fn total_dim(&self) -> usize {
        self.degrees.values().map(|d| d.dim).sum()
    }
}

/// `ker d / im d` with a fixed basis of homogeneous classes.
#[derive(Debug, Clone)]
pub struct CohomologySpace {
    pub space: Subquotient,
    /// Degree of each basis class.
    pub class_degrees: Vec<i64>,
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn dims_by_degree(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for &d in &self.class_degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// Positions of the basis classes of degree `d`.
    pub fn classes_in_degree(&self, d: i64) -> Vec<usize> {
        (0..self.class_degrees.len()).filter(|&i| self.class_degrees[i] == d).collect()
    }
}

impl GradedComplex {
    pub fn new(degrees: Vec<i64>, differential: SparseMatrix) -> Self {
        GradedComplex { degrees, differential }
    }

    pub fn cohomology_space(&self) -> Result<CohomologySpace> {
        let n = self.degrees.len();
        let ker = self.differential.kernel_basis();
        let im = self.differential.image_basis();
        let space = Subquotient::new(n, &ker, &im).map_err(|_| Error::InvalidComplex("differential does not square to zero".into()))?;
        let class_degrees = space
            .complement_basis()
            .iter()
            .map(|v| vector_degree(v, &self.degrees).expect("basis class is nonzero"))
            .collect();
        Ok(CohomologySpace { space, class_degrees })
    }

    pub fn cohomology(&self, range: RangeInclusive<i64>) -> Result<CohomologyReport> {
        let h = self.cohomology_space()?;
        let reps = h.space.complement_basis();
        let mut degrees: BTreeMap<i64, DegreeCohomology> = range
            .map(|d| {
                (
                    d,
                    DegreeCohomology {
                        dim: 0,
                        representatives: Vec::new(),
                    },
                )
            })
            .collect();
        for (v, d) in reps.into_iter().zip(&h.class_degrees) {
            if let Some(entry) = degrees.get_mut(d) {
                entry.dim += 1;
                entry.representatives.push(v);
            }
        }
        Ok(CohomologyReport { degrees })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    fn pair() -> S1Complex {
        let basis = vec![Generator::new("x", 0), Generator::new("y", 1)];
        let d = SparseMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        S1Complex::with_differential(basis, d, 0).unwrap()
    }

    #[test]
    fn single_generator_is_valid() {
        let c = S1Complex::with_differential(vec![Generator::new("e", 0)], SparseMatrix::zeros(1, 1), 3).unwrap();
        assert!(c.verify_s1_relations().valid);
    }

    #[test]
    fn degree_violation_is_reported() {
        assert!(pair().verify_s1_relations().valid);
        let basis = vec![Generator::new("x", 0), Generator::new("y", 1)];
        let d = SparseMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        let bad = S1Complex::with_differential(basis, d, 0).unwrap();
        let report = bad.verify_s1_relations();
        assert!(!report.valid);
        assert_eq!(
            report.degree_violations,
            vec![DegreeViolation {
                order: 0,
                from: "y".into(),
                to: "x".into()
            }]
        );
    }

    #[test]
    fn duplicate_names_rejected() {
        let basis = vec![Generator::new("x", 0), Generator::new("x", 1)];
        let r = S1Complex::with_differential(basis, SparseMatrix::zeros(2, 2), 0);
        assert!(matches!(r, Err(Error::DuplicateGenerator(_))));
    }

    #[test]
    fn level_zero_is_delta_zero() {
        let c = pair();
        let f = c.filtered_plus(0).unwrap();
        assert_eq!(f.differential(), c.delta(0));
        assert!(c.filtered_plus(1).is_err());
    }

    #[test]
    fn higher_operator_lands_one_power_down() {
        // a (deg 1) with δ¹a = b (deg 0).
        let basis = vec![Generator::new("a", 1), Generator::new("b", 0)];
        let d1 = SparseMatrix::from_i64(&[&[0, 0], &[1, 0]]);
        let c = S1Complex::new(basis, OperatorFamily::new(vec![SparseMatrix::zeros(2, 2), d1]).unwrap()).unwrap();
        assert!(c.verify_s1_relations().valid);
        let f = c.filtered_plus(1).unwrap();
        assert_eq!(f.differential().get(f.index(1, 0), f.index(0, 1)), rat(1));
        assert_eq!(f.differential().nnz(), 1);
    }

    #[test]
    fn cohomology_of_trivial_and_acyclic() {
        let c = S1Complex::with_differential(
            vec![Generator::new("a", 0), Generator::new("b", 0), Generator::new("c", 2)],
            SparseMatrix::zeros(3, 3),
            0,
        )
        .unwrap();
        let h = c.underlying().cohomology(-1..=3).unwrap();
        assert_eq!(h.dim(0), 2);
        assert_eq!(h.dim(2), 1);
        assert_eq!(h.dim(1), 0);
        let h = pair().underlying().cohomology(-1..=2).unwrap();
        assert_eq!(h.total_dim(), 0);
    }

    #[test]
    fn shift_negates_and_lowers() {
        let s = pair().shifted();
        assert_eq!(s.degrees(), vec![-1, 0]);
        assert_eq!(s.delta(0).get(1, 0), rat(-1));
        assert!(s.verify_s1_relations().valid);
    }

    #[test]
    fn u_action_drops_powers() {
        let c = S1Complex::with_differential(vec![Generator::new("e", 0)], SparseMatrix::zeros(1, 1), 2).unwrap();
        let f = c.filtered_plus(2).unwrap();
        let u = f.u_power(1);
        assert_eq!((u.nrows(), u.ncols()), (2, 3));
        assert_eq!(u.mul_vec(&[rat(1), rat(2), rat(3)]).unwrap(), vec![rat(2), rat(3)]);
    }
}
