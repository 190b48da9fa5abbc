//! JSON wire format for split S¹-complexes and S¹-morphisms.
//!
//! Coefficients are strings (`"p/q"` or `"p"`). The canonical form sorts
//! generators by name and entries by `(from, to)`, reduces coefficients
//! to lowest terms and drops zeros.

use std::collections::{BTreeMap, HashMap, HashSet};

use num::{BigInt, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::{Generator, OperatorFamily, S1Complex};
use crate::dilation::{Part, SplitS1Complex};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, zero_vector, Rational, SparseMatrix, Vector};
use crate::morphism::S1Morphism;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i64,
    #[serde(default = "default_part")]
    pub part: Part,
}

fn default_part() -> Part {
    Part::Plus
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub from: String,
    pub to: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorEntry {
    pub order: usize,
    pub entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainTerm {
    pub gen: String,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitSpec {
    Generator(String),
    Chain(Vec<ChainTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub schema_version: String,
    pub truncation: usize,
    pub generators: Vec<GeneratorEntry>,
    pub operators: Vec<OperatorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<UnitSpec>,
}

fn doc_error(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Document {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses `"p"` or `"p/q"` with `q ≠ 0`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((p, q)) => {
            let (p, q) = (p.trim().parse::<BigInt>().ok()?, q.trim().parse::<BigInt>().ok()?);
            (!q.is_zero()).then(|| Rational::new(p, q))
        }
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        doc_error(
            if path == "." { "$".to_string() } else { format!("$.{path}") },
            e.into_inner().to_string(),
        )
    })
}

/// Resolved name table plus operator matrices.
struct Resolved {
    basis: Vec<Generator>,
    index: HashMap<String, usize>,
}

fn resolve_generators(generators: &[GeneratorEntry], at: &str) -> Result<Resolved> {
    let mut index = HashMap::new();
    for (i, g) in generators.iter().enumerate() {
        if g.name.is_empty() {
            return Err(doc_error(format!("{at}.generators[{i}].name"), "empty generator name"));
        }
        if index.insert(g.name.clone(), i).is_some() {
            return Err(doc_error(
                format!("{at}.generators[{i}].name"),
                format!("duplicate generator `{}`", g.name),
            ));
        }
    }
    Ok(Resolved {
        basis: generators.iter().map(|g| Generator::new(g.name.clone(), g.degree)).collect(),
        index,
    })
}

fn lookup(table: &HashMap<String, usize>, name: &str, path: String) -> Result<usize> {
    table
        .get(name)
        .copied()
        .ok_or_else(|| doc_error(path, format!("unknown generator `{name}`")))
}

fn coefficient(s: &str, path: String) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| doc_error(path, format!("invalid coefficient `{s}`, expected \"p\" or \"p/q\"")))
}

/// Builds one matrix per order `0..=truncation` from operator entries.
fn resolve_operators(
    operators: &[OperatorEntry],
    truncation: usize,
    rows: &HashMap<String, usize>,
    cols: &HashMap<String, usize>,
    shape: (usize, usize),
    at: &str,
) -> Result<Vec<SparseMatrix>> {
    let mut triplets: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); truncation + 1];
    let mut seen_orders = HashSet::new();
    for (oi, op) in operators.iter().enumerate() {
        let here = format!("{at}[{oi}]");
        if op.order > truncation {
            return Err(doc_error(
                format!("{here}.order"),
                format!("order {} exceeds the truncation {truncation}", op.order),
            ));
        }
        if !seen_orders.insert(op.order) {
            return Err(doc_error(format!("{here}.order"), format!("order {} listed twice", op.order)));
        }
        let mut seen = HashSet::new();
        for (ei, e) in op.entries.iter().enumerate() {
            let p = format!("{here}.entries[{ei}]");
            let from = lookup(cols, &e.from, format!("{p}.from"))?;
            let to = lookup(rows, &e.to, format!("{p}.to"))?;
            let v = coefficient(&e.coeff, format!("{p}.coeff"))?;
            if !seen.insert((from, to)) {
                return Err(doc_error(p, format!("duplicate entry {} -> {}", e.from, e.to)));
            }
            if !v.is_zero() {
                triplets[op.order].push((to, from, v));
            }
        }
    }
    triplets
        .into_iter()
        .map(|t| Ok(SparseMatrix::from_triplets(shape.0, shape.1, t)?))
        .collect()
}

fn chain_vector(terms: &[ChainTerm], index: &HashMap<String, usize>, dim: usize, at: &str) -> Result<Vector> {
    let mut v = zero_vector(dim);
    for (i, t) in terms.iter().enumerate() {
        let g = lookup(index, &t.gen, format!("{at}[{i}].gen"))?;
        v[g] += coefficient(&t.coeff, format!("{at}[{i}].coeff"))?;
    }
    Ok(v)
}

/// The nonzero terms of `v`, in basis order.
pub fn chain_terms(c: &S1Complex, v: &[Rational]) -> Vec<ChainTerm> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| ChainTerm {
            gen: c.basis()[i].name.clone(),
            coeff: format_rational(x),
        })
        .collect()
}

fn operator_entries(m: &SparseMatrix, rows: &[Generator], cols: &[Generator], order: usize) -> OperatorEntry {
    let mut entries: Vec<Entry> = m
        .triplets()
        .map(|(to, from, v)| Entry {
            from: cols[from].name.clone(),
            to: rows[to].name.clone(),
            coeff: format_rational(v),
        })
        .collect();
    entries.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
    OperatorEntry { order, entries }
}

impl ComplexDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexDocument = parse_json(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(doc_error(
                "$.schema_version",
                format!("unsupported schema version `{}`, expected `{SCHEMA_VERSION}`", doc.schema_version),
            ));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize") + "\n"
    }

    /// The underlying complex. Does not check the S¹-relations.
    pub fn to_complex(&self) -> Result<S1Complex> {
        self.to_complex_at("$")
    }

    fn to_complex_at(&self, at: &str) -> Result<S1Complex> {
        let r = resolve_generators(&self.generators, at)?;
        let n = r.basis.len();
        let ops = resolve_operators(&self.operators, self.truncation, &r.index, &r.index, (n, n), &format!("{at}.operators"))?;
        S1Complex::new(r.basis, OperatorFamily::new(ops)?)
    }

    pub fn to_split(&self) -> Result<SplitS1Complex> {
        let complex = self.to_complex()?;
        let index: HashMap<String, usize> = self.generators.iter().enumerate().map(|(i, g)| (g.name.clone(), i)).collect();
        let unit = match &self.unit {
            None => return Err(doc_error("$.unit", "a split complex needs a unit")),
            Some(UnitSpec::Generator(name)) => crate::linalg::unit_vector(complex.dim(), lookup(&index, name, "$.unit".into())?),
            Some(UnitSpec::Chain(terms)) => chain_vector(terms, &index, complex.dim(), "$.unit")?,
        };
        SplitS1Complex::new(complex, self.generators.iter().map(|g| g.part).collect(), unit)
    }

    pub fn from_complex(c: &S1Complex, parts: Option<&[Part]>, unit: Option<&[Rational]>) -> Self {
        let generators = c
            .basis()
            .iter()
            .enumerate()
            .map(|(i, g)| GeneratorEntry {
                name: g.name.clone(),
                degree: g.degree,
                part: parts.map_or(Part::Plus, |p| p[i]),
            })
            .collect();
        let operators = (0..=c.truncation())
            .map(|r| operator_entries(c.delta(r), c.basis(), c.basis(), r))
            .collect();
        let unit = unit.map(|u| {
            let terms = chain_terms(c, u);
            match terms.as_slice() {
                [t] if t.coeff == "1" => UnitSpec::Generator(t.gen.clone()),
                _ => UnitSpec::Chain(terms),
            }
        });
        ComplexDocument {
            schema_version: SCHEMA_VERSION.into(),
            truncation: c.truncation(),
            generators,
            operators,
            unit,
        }
        .canonical()
    }

    pub fn from_split(s: &SplitS1Complex) -> Self {
        Self::from_complex(s.complex(), Some(s.parts()), Some(s.unit()))
    }

    /// Sorted generators, one operator per order with sorted nonzero
    /// entries, lowest-terms coefficients. Unparseable coefficients are
    /// left untouched.
    pub fn canonical(&self) -> Self {
        let mut generators = self.generators.clone();
        generators.sort_by(|a, b| a.name.cmp(&b.name));
        let mut by_order: BTreeMap<usize, Vec<Entry>> = (0..=self.truncation).map(|r| (r, Vec::new())).collect();
        for op in &self.operators {
            let entries = by_order.entry(op.order).or_default();
            for e in &op.entries {
                match parse_rational(&e.coeff) {
                    Some(v) if v.is_zero() => {}
                    Some(v) => entries.push(Entry {
                        coeff: format_rational(&v),
                        ..e.clone()
                    }),
                    None => entries.push(e.clone()),
                }
            }
        }
        let operators = by_order
            .into_iter()
            .map(|(order, mut entries)| {
                entries.sort_by(|a, b| (&a.from, &a.to).cmp(&(&b.from, &b.to)));
                OperatorEntry { order, entries }
            })
            .collect();
        let unit = self.unit.as_ref().map(|u| match u {
            UnitSpec::Generator(g) => UnitSpec::Generator(g.clone()),
            UnitSpec::Chain(terms) => {
                let mut terms: Vec<ChainTerm> = terms
                    .iter()
                    .filter(|t| parse_rational(&t.coeff).is_none_or(|v| !v.is_zero()))
                    .map(|t| ChainTerm {
                        gen: t.gen.clone(),
                        coeff: parse_rational(&t.coeff).map_or_else(|| t.coeff.clone(), |v| format_rational(&v)),
                    })
                    .collect();
                terms.sort_by(|a, b| a.gen.cmp(&b.gen));
                match terms.as_slice() {
                    [t] if t.coeff == "1" => UnitSpec::Generator(t.gen.clone()),
                    _ => UnitSpec::Chain(terms),
                }
            }
        });
        ComplexDocument {
            schema_version: self.schema_version.clone(),
            truncation: self.truncation,
            generators,
            operators,
            unit,
        }
    }
}

/// `source`, `target` and the components `φʳ` with entries named by
/// source (`from`) and target (`to`) generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    pub schema_version: String,
    pub source: ComplexDocument,
    pub target: ComplexDocument,
    pub components: Vec<OperatorEntry>,
}

impl MorphismDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MorphismDocument = parse_json(text)?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(doc_error(
                "$.schema_version",
                format!("unsupported schema version `{}`", doc.schema_version),
            ));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize") + "\n"
    }

    pub fn to_morphism(&self) -> Result<S1Morphism> {
        let source = self.source.to_complex_at("$.source")?;
        let target = self.target.to_complex_at("$.target")?;
        let s = resolve_generators(&self.source.generators, "$.source")?;
        let t = resolve_generators(&self.target.generators, "$.target")?;
        let phi = resolve_operators(
            &self.components,
            source.truncation(),
            &t.index,
            &s.index,
            (target.dim(), source.dim()),
            "$.components",
        )?;
        S1Morphism::new(source, target, phi)
    }

    pub fn from_morphism(phi: &S1Morphism) -> Self {
        let (s, t) = (phi.source(), phi.target());
        MorphismDocument {
            schema_version: SCHEMA_VERSION.into(),
            source: ComplexDocument::from_complex(s, None, None),
            target: ComplexDocument::from_complex(t, None, None),
            components: (0..=phi.truncation())
                .map(|r| operator_entries(phi.phi(r), t.basis(), s.basis(), r))
                .collect(),
        }
    }
}

/// Witness chain serialized by power of `u⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerTerms {
    pub power: usize,
    pub terms: Vec<ChainTerm>,
}

pub fn witness_terms(c: &S1Complex, components: &[Vector]) -> Vec<PowerTerms> {
    components
        .iter()
        .enumerate()
        .map(|(power, v)| PowerTerms {
            power,
            terms: chain_terms(c, v),
        })
        .filter(|p| !p.terms.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brieskorn::{milnor_model_with, MilnorOptions};

    const SMALL: &str = r#"{
        "schema_version": "1",
        "truncation": 1,
        "generators": [
            {"name": "x", "degree": -1, "part": "plus"},
            {"name": "e", "degree": 0, "part": "zero"}
        ],
        "operators": [
            {"order": 0, "entries": [{"from": "x", "to": "e", "coeff": "2/4"}]}
        ],
        "unit": [{"gen": "e", "coeff": "1"}]
    }"#;

    #[test]
    fn parse_and_canonicalize() {
        let doc = ComplexDocument::from_json(SMALL).unwrap();
        let s = doc.to_split().unwrap();
        assert!(s.verify_splitting().valid);
        let canon = doc.canonical();
        assert_eq!(canon.generators[0].name, "e");
        assert_eq!(canon.operators[0].entries[0].coeff, "1/2");
        assert_eq!(canon.operators.len(), 2);
        assert_eq!(canon.unit, Some(UnitSpec::Generator("e".into())));
        let again = ComplexDocument::from_json(&canon.to_json()).unwrap();
        assert_eq!(again.to_json(), canon.to_json());
        assert_eq!(ComplexDocument::from_split(&s).to_json(), canon.to_json());
    }

    #[test]
    fn positioned_errors() {
        let bad = SMALL.replace("\"2/4\"", "\"2/0\"");
        let err = ComplexDocument::from_json(&bad).unwrap().to_complex().unwrap_err().to_string();
        assert!(err.starts_with("$.operators[0].entries[0].coeff"), "{err}");
        let bad = SMALL.replace("\"to\": \"e\"", "\"to\": \"q\"");
        let err = ComplexDocument::from_json(&bad).unwrap().to_complex().unwrap_err().to_string();
        assert!(err.starts_with("$.operators[0].entries[0].to"), "{err}");
        let bad = SMALL.replace("\"degree\": 0", "\"degree\": \"zero\"");
        let err = ComplexDocument::from_json(&bad).unwrap_err().to_string();
        assert!(err.starts_with("$.generators[1].degree"), "{err}");
    }

    #[test]
    fn milnor_round_trip() {
        let s = milnor_model_with(3, 4, &MilnorOptions::default()).unwrap();
        let doc = ComplexDocument::from_split(&s);
        let parsed = ComplexDocument::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc);
        let back = parsed.to_split().unwrap();
        assert!(back.verify_splitting().valid);
        assert_eq!(ComplexDocument::from_split(&back), doc);
    }

    #[test]
    fn morphism_round_trip() {
        let s = milnor_model_with(2, 2, &MilnorOptions::default()).unwrap();
        let id = S1Morphism::identity(s.complex());
        let doc = MorphismDocument::from_morphism(&id);
        let back = MorphismDocument::from_json(&doc.to_json()).unwrap().to_morphism().unwrap();
        assert!(back.verify().valid);
        assert_eq!(MorphismDocument::from_morphism(&back), doc);
    }
}
