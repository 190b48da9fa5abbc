//! Reeb-orbit combinatorics of Brieskorn manifolds and the Milnor-fiber
//! model complexes.

use num::integer::lcm;
use num::{BigInt, One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Generator, OperatorFamily, S1Complex};
use crate::dilation::{Part, SplitS1Complex};
use crate::error::{Error, Result};
use crate::linalg::{zero_vector, MatrixBuilder, Rational, Vector};

/// Exponents `a₀, …, aₙ` of `Σ xᵢ^{aᵢ} = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrieskornData {
    exponents: Vec<u64>,
}

impl BrieskornData {
    pub fn new(exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() < 2 {
            return Err(Error::InvalidExponents(format!("need at least two exponents, got {}", exponents.len())));
        }
        if let Some(a) = exponents.iter().find(|&&a| a < 2) {
            return Err(Error::InvalidExponents(format!("exponent {a} is below 2")));
        }
        Ok(BrieskornData { exponents })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Complex dimension `n`.
    pub fn n(&self) -> usize {
        self.exponents.len() - 1
    }

    /// `{i : aᵢ | t}`.
    pub fn divisor_set(&self, t: u64) -> Vec<usize> {
        (0..self.exponents.len()).filter(|&i| t % self.exponents[i] == 0).collect()
    }

    /// Whether `Σ 1/aᵢ ≤ 1`.
    pub fn kodaira_obstruction(&self) -> bool {
        let sum: Rational = self.exponents.iter().map(|&a| Rational::new(BigInt::one(), BigInt::from(a))).sum();
        sum <= Rational::one()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrincipalPeriod {
    pub period: u64,
    pub indices: Vec<usize>,
}

/// Principal periods sorted by `T`.
pub fn principal_periods(a: &BrieskornData) -> Vec<PrincipalPeriod> {
    let mut values: Vec<u64> = a.exponents.clone();
    values.sort_unstable();
    values.dedup();
    let mut periods: Vec<u64> = (1u64..1 << values.len())
        .map(|mask| {
            values
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(1, |acc, (_, &v)| lcm(acc, v))
        })
        .collect();
    periods.sort_unstable();
    periods.dedup();
    periods
        .into_iter()
        .map(|period| PrincipalPeriod {
            period,
            indices: a.divisor_set(period),
        })
        .filter(|p| p.indices.len() >= 2)
        .collect()
}

/// A family of parametrized Reeb orbits of period `A = N·T`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitFamily {
    pub period: u64,
    pub multiplicity: u64,
    pub principal: PrincipalPeriod,
    pub dimension: usize,
    pub min_cz: i64,
}

/// Minimal Conley–Zehnder index of the family over `principal` with
/// multiplicity `multiplicity`.
pub fn min_cz(a: &BrieskornData, principal: &PrincipalPeriod, multiplicity: u64) -> i64 {
    let total = (multiplicity * principal.period) as i64;
    let mut sum = 0i64;
    for (i, &ai) in a.exponents.iter().enumerate() {
        let ai = ai as i64;
        sum += if principal.indices.contains(&i) {
            2 * (total / ai)
        } else {
            2 * total.div_euclid(ai)
        };
    }
    sum + a.exponents.len() as i64 - 2 * principal.indices.len() as i64 - 2 * total + 2
}

/// `f(T) = 2Σ⌊T/aᵢ⌋ + n + 3 − 2|I_T| − 2T` with `I_T` all divisors of `T`.
pub fn f_of_t(a: &BrieskornData, t: u64) -> i64 {
    let floors: i64 = a.exponents.iter().map(|&ai| (t / ai) as i64).sum();
    2 * floors + a.n() as i64 + 3 - 2 * a.divisor_set(t).len() as i64 - 2 * t as i64
}

/// Four times the largest principal period.
pub fn default_period_bound(a: &BrieskornData) -> Result<u64> {
    principal_periods(a).last().map(|p| 4 * p.period).ok_or(Error::NoPrincipalPeriod)
}

/// All families with period at most `bound`.
///
/// A period `A` gets one family for each principal period `T | A` that is
/// maximal under divisibility among the principal divisors of `A`.
pub fn orbit_families(a: &BrieskornData, bound: u64) -> Vec<OrbitFamily> {
    let principal = principal_periods(a);
    let mut out = Vec::new();
    for period in 1..=bound {
        let divisors: Vec<&PrincipalPeriod> = principal.iter().filter(|p| period % p.period == 0).collect();
        for p in &divisors {
            let maximal = !divisors.iter().any(|q| q.period != p.period && q.period % p.period == 0);
            if maximal {
                let multiplicity = period / p.period;
                out.push(OrbitFamily {
                    period,
                    multiplicity,
                    principal: (*p).clone(),
                    dimension: 2 * p.indices.len() - 3,
                    min_cz: min_cz(a, p, multiplicity),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlobalMinimum {
    pub min_cz: i64,
    pub family: OrbitFamily,
    pub attained_at_minimal_period: bool,
    pub period_bound: u64,
}

pub fn global_min_cz(a: &BrieskornData, bound: u64) -> Result<GlobalMinimum> {
    let families = orbit_families(a, bound);
    let first = families.first().ok_or(Error::NoPrincipalPeriod)?;
    let minimal_period = first.period;
    let best = families.iter().min_by_key(|f| (f.min_cz, f.period)).expect("nonempty");
    Ok(GlobalMinimum {
        min_cz: best.min_cz,
        attained_at_minimal_period: families.iter().any(|f| f.period == minimal_period && f.min_cz == best.min_cz),
        family: best.clone(),
        period_bound: bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyDegree {
    pub family: OrbitFamily,
    pub sft_degree: i64,
}

/// A check over periods up to `period_bound` only; not a proof of ADC.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdcCertificate {
    pub certified: bool,
    pub period_bound: u64,
    pub min_sft_degree: Option<i64>,
    pub families: Vec<FamilyDegree>,
}

/// SFT degree `μ_min + n − 3` of every family up to `bound`.
pub fn adc_certificate(a: &BrieskornData, bound: u64) -> AdcCertificate {
    let n = a.n() as i64;
    let families: Vec<FamilyDegree> = orbit_families(a, bound)
        .into_iter()
        .map(|family| FamilyDegree {
            sft_degree: family.min_cz + n - 3,
            family,
        })
        .collect();
    let min_sft_degree = families.iter().map(|f| f.sft_degree).min();
    AdcCertificate {
        certified: families.iter().all(|f| f.sft_degree > 0),
        period_bound: bound,
        min_sft_degree,
        families,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredictedOrder {
    /// `(n − μ_min + 1)/2`, when the hypotheses below allow it.
    pub order: Option<i64>,
    pub min_cz: i64,
    pub attained_at_minimal_period: bool,
    /// `Σ 1/aᵢ ≤ 1`: no dilation is expected.
    pub kodaira_obstruction: bool,
    /// The prediction presumes some dilation exists.
    pub existence_assumed: bool,
    pub period_bound: u64,
}

pub fn predicted_order(a: &BrieskornData, bound: u64) -> Result<PredictedOrder> {
    let g = global_min_cz(a, bound)?;
    let kodaira = a.kodaira_obstruction();
    let numerator = a.n() as i64 - g.min_cz + 1;
    let order = (g.attained_at_minimal_period && !kodaira && numerator >= 0 && numerator % 2 == 0).then_some(numerator / 2);
    Ok(PredictedOrder {
        order,
        min_cz: g.min_cz,
        attained_at_minimal_period: g.attained_at_minimal_period,
        kodaira_obstruction: kodaira,
        existence_assumed: true,
        period_bound: bound,
    })
}

/// Options for [`milnor_model_with`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MilnorOptions {
    /// Emit the `(k−1)^{m+1}` degree-`m` sphere classes.
    pub spheres: bool,
    /// Defaults to `2k`.
    pub truncation: Option<usize>,
    /// Adds a closed degree-0 generator `s` to `C₀` with
    /// `⟨δ⁰p̌_{m−k}, s⟩ = 1`. This breaks the dilation but keeps the
    /// semi-dilation.
    pub gap_generator: bool,
}

impl Default for MilnorOptions {
    fn default() -> Self {
        MilnorOptions {
            spheres: true,
            truncation: None,
            gap_generator: false,
        }
    }
}

/// Number of sphere classes `(k−1)^{m+1}`.
pub fn sphere_count(k: usize, m: usize) -> usize {
    (k - 1).pow(m as u32 + 1)
}

pub fn check_milnor_range(k: usize, m: usize) -> Result<()> {
    if k < 1 || k > m {
        return Err(Error::MilnorRange { k, m });
    }
    Ok(())
}

pub fn milnor_model(k: usize, m: usize) -> Result<SplitS1Complex> {
    milnor_model_with(k, m, &MilnorOptions::default())
}

/// Model of the Milnor fiber `W_{k,m}`.
///
/// `C₀` is `e` (degree 0) plus the sphere classes `s{α}` (degree `m`).
/// `C₊` holds `pcheck{j}` (degree `2k+2j−2m−1`) and `phat{j}` (degree
/// `2k+2j−2m−2`) for `m−k ≤ j < m`, with `δ⁰ pcheck_j = phat_{j+1}`,
/// `⟨δ⁰ pcheck_{m−k}, e⟩ = k!` and `δ¹ pcheck_j = phat_j`.
pub fn milnor_model_with(k: usize, m: usize, options: &MilnorOptions) -> Result<SplitS1Complex> {
    check_milnor_range(k, m)?;
    let truncation = options.truncation.unwrap_or(2 * k);
    let (k_i, m_i) = (k as i64, m as i64);
    let mut basis = vec![Generator::new("e", 0)];
    let mut parts = vec![Part::Zero];
    if options.gap_generator {
        basis.push(Generator::new("s", 0));
        parts.push(Part::Zero);
    }
    if options.spheres {
        for alpha in 0..sphere_count(k, m) {
            basis.push(Generator::new(format!("s{alpha}"), m_i));
            parts.push(Part::Zero);
        }
    }
    let first = basis.len();
    let pcheck = |j: usize| first + 2 * (j - (m - k));
    let phat = |j: usize| pcheck(j) + 1;
    for j in m - k..m {
        let j_i = j as i64;
        basis.push(Generator::new(format!("pcheck{j}"), 2 * k_i + 2 * j_i - 2 * m_i - 1));
        basis.push(Generator::new(format!("phat{j}"), 2 * k_i + 2 * j_i - 2 * m_i - 2));
        parts.push(Part::Plus);
        parts.push(Part::Plus);
    }
    let dim = basis.len();
    let one = Rational::one();
    let factorial: BigInt = (1..=k).map(BigInt::from).product();
    let mut d0 = MatrixBuilder::new(dim, dim);
    let mut d1 = MatrixBuilder::new(dim, dim);
    for j in m - k..m {
        if j + 1 < m {
            d0.add(phat(j + 1), pcheck(j), &one);
        }
        d1.add(phat(j), pcheck(j), &one);
    }
    d0.add(0, pcheck(m - k), &Rational::from_integer(factorial));
    if options.gap_generator {
        d0.add(1, pcheck(m - k), &one);
    }
    let mut ops = vec![d0.build()];
    if truncation >= 1 {
        ops.push(d1.build());
    }
    ops.extend((2..=truncation).map(|_| MatrixBuilder::new(dim, dim).build()));
    let complex = S1Complex::new(basis, OperatorFamily::new(ops)?)?;
    let unit = crate::linalg::unit_vector(dim, 0);
    SplitS1Complex::new(complex, parts, unit)
}

/// The chain `Σ_{i<k} (−1)ⁱ/k! · pcheck_{m−k+i} u⁻ⁱ` as components by power.
pub fn milnor_witness(s: &SplitS1Complex, k: usize, m: usize) -> Result<Vec<Vector>> {
    check_milnor_range(k, m)?;
    let c = s.complex();
    let factorial: BigInt = (1..=k).map(BigInt::from).product();
    (0..k)
        .map(|i| {
            let mut v = zero_vector(c.dim());
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            v[c.index_of(&format!("pcheck{}", m - k + i))?] = Rational::new(sign, factorial.clone());
            Ok(v)
        })
        .collect()
}

/// Whether `δ^{S¹}` of the components equals `target` at `u⁰` and vanishes
/// at every other power.
pub fn is_primitive_of(c: &S1Complex, components: &[Vector], target: &[Rational]) -> bool {
    c.apply_s1(components)
        .iter()
        .enumerate()
        .all(|(i, x)| if i == 0 { x == target } else { x.iter().all(Zero::is_zero) })
}
