use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::anyhow;
use kdilation::brieskorn::{
    adc_certificate, default_period_bound, global_min_cz, milnor_model_with, orbit_families, predicted_order, principal_periods, BrieskornData,
    GlobalMinimum, MilnorOptions, OrbitFamily, PrincipalPeriod,
};
use kdilation::complex::{vector_degree, RelationReport};
use kdilation::dilation::{order_of_dilation, order_of_semidilation, tautological_les, DilationReport, Order, SplitS1Complex, SplittingReport};
use kdilation::document::{chain_terms, witness_terms, ChainTerm, ComplexDocument, PowerTerms};
use kdilation::linalg::format_rational;
use kdilation::spectral::{b_space, delta_k, z_space, Filtration, FiltrationSpace};
use kdilation::tensor::{tensor, tensor_split};
use kdilation::{S1Complex, SparseMatrix, Vector};
use rayon::prelude::*;
use serde::Serialize;

use crate::io::{emit_document, print_json, read_document, DegreeRange};
use crate::{BrieskornArgs, BrieskornCommand, Command, Input, OrderArgs};

/// Exit status 2 for `Input`, 1 for `Property`.
pub enum Failure {
    Input(anyhow::Error),
    Property(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<kdilation::Error> for Failure {
    fn from(e: kdilation::Error) -> Self {
        Failure::Input(e.into())
    }
}

pub type Outcome = Result<(), Failure>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Check(input) => check(&input.file),
        Command::Cohomology { input, level, degrees } => cohomology(&input, level, degrees),
        Command::Zb { input, k } => zb(&input, k),
        Command::Delta { input, k } => delta(&input, k),
        Command::Pages { input, n } => pages(&input, n),
        Command::Dilation(args) => order(&args, false),
        Command::Semidilation(args) => order(&args, true),
        Command::Les { input, degrees } => les(&input, degrees),
        Command::Tensor { a, b, output } => product(&a, &b, output.as_ref()),
        Command::Brieskorn(cmd) => brieskorn(cmd),
        Command::Milnor {
            k,
            m,
            truncation,
            no_spheres,
            gap,
            output,
        } => {
            let options = MilnorOptions {
                spheres: !no_spheres,
                truncation,
                gap_generator: gap,
            };
            let s = milnor_model_with(k, m, &options)?;
            Ok(emit_document(&ComplexDocument::from_split(&s), output.as_ref())?)
        }
        Command::Reproduce(cmd) => crate::reproduce::run(cmd),
    }
}

fn relation_problems(r: &RelationReport) -> Vec<String> {
    let degrees = r
        .degree_violations
        .iter()
        .map(|v| format!("degree violation: (r, from, to) = ({}, {}, {})", v.order, v.from, v.to));
    let relations = r.relations.iter().filter(|s| !s.holds).map(|s| format!("relation fails at k = {}", s.k));
    degrees.chain(relations).collect()
}

fn splitting_problems(r: &SplittingReport) -> Vec<String> {
    let mut out: Vec<String> = r
        .not_subcomplex
        .iter()
        .map(|v| {
            format!(
                "delta^{} maps the zero part generator {} to the plus part generator {}",
                v.order, v.from, v.to
            )
        })
        .chain(
            r.higher_on_zero
                .iter()
                .map(|v| format!("delta^{} is nonzero on the zero part: {} -> {}", v.order, v.from, v.to)),
        )
        .collect();
    let flags = [
        (r.unit_in_zero, "unit is not in the zero part"),
        (r.unit_degree_zero, "unit is not of degree 0"),
        (r.unit_closed, "unit is not closed"),
        (r.unit_non_exact, "unit is exact in the zero part"),
    ];
    out.extend(flags.iter().filter(|(ok, _)| !ok).map(|(_, m)| m.to_string()));
    out
}

fn invalid(problems: Vec<String>) -> Failure {
    Failure::Property(format!("invalid complex:\n  {}", problems.join("\n  ")))
}

fn load_complex(input: &Input) -> Result<S1Complex, Failure> {
    let c = read_document(&input.file)?.to_complex()?;
    let report = c.verify_s1_relations();
    if !report.valid {
        return Err(invalid(relation_problems(&report)));
    }
    Ok(c)
}

fn load_split(input: &Input) -> Result<SplitS1Complex, Failure> {
    let s = read_document(&input.file)?.to_split()?;
    let report = s.verify_splitting();
    if !report.valid {
        let mut problems = relation_problems(&s.complex().verify_s1_relations());
        problems.extend(splitting_problems(&report));
        return Err(invalid(problems));
    }
    Ok(s)
}

#[derive(Serialize)]
struct CheckReport {
    valid: bool,
    relations: RelationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    splitting: Option<SplittingReport>,
}

fn check(path: &Path) -> Outcome {
    let doc = read_document(path)?;
    let c = doc.to_complex()?;
    let relations = c.verify_s1_relations();
    let splitting = match doc.unit {
        Some(_) => Some(doc.to_split()?.verify_splitting()),
        None => None,
    };
    let valid = relations.valid && splitting.as_ref().is_none_or(|s| s.valid);
    let mut problems = relation_problems(&relations);
    if let Some(s) = &splitting {
        problems.extend(splitting_problems(s));
    }
    print_json(&CheckReport { valid, relations, splitting })?;
    if valid {
        Ok(())
    } else {
        Err(invalid(problems))
    }
}

fn degree_span(c: &S1Complex) -> (i64, i64) {
    let degrees = c.degrees();
    let lo = degrees.iter().copied().min().unwrap_or(0);
    let hi = degrees.iter().copied().max().unwrap_or(0);
    (lo, hi)
}

#[derive(Serialize)]
struct DegreeOut {
    degree: i64,
    dim: usize,
    /// Each representative by power of `u⁻¹`.
    representatives: Vec<Vec<PowerTerms>>,
}

#[derive(Serialize)]
struct CohomologyOut {
    level: usize,
    total_dim: usize,
    degrees: Vec<DegreeOut>,
}

fn cohomology(input: &Input, level: Option<usize>, degrees: Option<DegreeRange>) -> Outcome {
    let c = load_complex(input)?;
    let level = level.unwrap_or(c.truncation());
    let fp = c.filtered_plus(level)?;
    let (lo, hi) = degree_span(&c);
    let range = degrees.map_or(lo - 2 * level as i64..=hi, DegreeRange::inclusive);
    let report = fp.cohomology(range)?;
    let degrees = report
        .degrees
        .iter()
        .map(|(&degree, h)| DegreeOut {
            degree,
            dim: h.dim,
            representatives: h.representatives.iter().map(|v| witness_terms(&c, &fp.components(v))).collect(),
        })
        .collect();
    Ok(print_json(&CohomologyOut {
        level,
        total_dim: report.total_dim(),
        degrees,
    })?)
}

#[derive(Serialize)]
struct WitnessOut {
    value: Vec<ChainTerm>,
    witness: Vec<PowerTerms>,
}

#[derive(Serialize)]
struct SpaceOut {
    dim: usize,
    dims_by_degree: BTreeMap<i64, usize>,
    basis: Vec<WitnessOut>,
}

fn space_out(c: &S1Complex, space: &FiltrationSpace) -> SpaceOut {
    SpaceOut {
        dim: space.dim(),
        dims_by_degree: space.dims_by_degree(&c.degrees()),
        basis: space
            .basis
            .iter()
            .map(|w| WitnessOut {
                value: chain_terms(c, w.value()),
                witness: witness_terms(c, &w.components()),
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct ZbOut {
    k: usize,
    z: SpaceOut,
    b: SpaceOut,
}

fn zb(input: &Input, k: usize) -> Outcome {
    let c = load_complex(input)?;
    let (z, b) = (z_space(&c, k)?, b_space(&c, k)?);
    Ok(print_json(&ZbOut {
        k,
        z: space_out(&c, &z),
        b: space_out(&c, &b),
    })?)
}

#[derive(Serialize)]
struct ClassOut {
    degree: i64,
    representative: Vec<ChainTerm>,
}

#[derive(Serialize)]
struct DeltaOut {
    k: usize,
    degree: i64,
    rank: usize,
    kernel_dim: usize,
    image_dim: usize,
    cokernel_dim: usize,
    domain: Vec<ClassOut>,
    codomain: Vec<ClassOut>,
    /// Rows index codomain classes, columns domain classes.
    matrix: Vec<Vec<String>>,
}

fn classes(c: &S1Complex, basis: Vec<Vector>) -> Vec<ClassOut> {
    let degrees = c.degrees();
    basis
        .into_iter()
        .map(|v| ClassOut {
            degree: vector_degree(&v, &degrees).expect("classes are nonzero"),
            representative: chain_terms(c, &v),
        })
        .collect()
}

fn dense_strings(m: &SparseMatrix) -> Vec<Vec<String>> {
    m.to_dense().iter().map(|row| row.iter().map(format_rational).collect()).collect()
}

fn delta(input: &Input, k: usize) -> Outcome {
    let c = load_complex(input)?;
    let map = delta_k(&c, k)?;
    let rank = map.rank();
    Ok(print_json(&DeltaOut {
        k,
        degree: 1 - 2 * k as i64,
        rank,
        kernel_dim: map.kernel_dim(),
        image_dim: rank,
        cokernel_dim: map.cokernel_dim(),
        domain: classes(&c, map.domain.complement_basis()),
        codomain: classes(&c, map.codomain.complement_basis()),
        matrix: dense_strings(&map.matrix),
    })?)
}

#[derive(Serialize)]
struct ColumnOut {
    power: usize,
    z_level: usize,
    b_level: usize,
    dims: BTreeMap<i64, usize>,
}

#[derive(Serialize)]
struct DifferentialOut {
    source_power: usize,
    target_power: usize,
    rank: usize,
}

#[derive(Serialize)]
struct PageOut {
    page: usize,
    dims: BTreeMap<i64, usize>,
    columns: Vec<ColumnOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    differentials: Option<Vec<DifferentialOut>>,
}

#[derive(Serialize)]
struct PagesOut {
    truncation: usize,
    pages: Vec<PageOut>,
}

fn pages(input: &Input, n: Option<usize>) -> Outcome {
    let c = load_complex(input)?;
    let n = n.unwrap_or(c.truncation());
    let f = Filtration::new(&c.truncate(n)?)?;
    let pages = (0..=n)
        .into_par_iter()
        .map(|k| {
            let page = f.page(k)?;
            Ok(PageOut {
                page: page.page,
                dims: page.dims(),
                differentials: page.differentials.as_ref().map(|ds| {
                    ds.iter()
                        .map(|d| DifferentialOut {
                            source_power: d.source_power,
                            target_power: d.target_power,
                            rank: d.matrix.rank(),
                        })
                        .collect()
                }),
                columns: page
                    .columns
                    .into_iter()
                    .map(|col| ColumnOut {
                        power: col.power,
                        z_level: col.z_level,
                        b_level: col.b_level,
                        dims: col.dims,
                    })
                    .collect(),
            })
        })
        .collect::<kdilation::Result<Vec<_>>>()?;
    Ok(print_json(&PagesOut { truncation: n, pages })?)
}

#[derive(Serialize)]
struct OrderOut {
    kind: &'static str,
    truncation: usize,
    order: Order,
    checks: Vec<bool>,
    witness: Option<Vec<PowerTerms>>,
}

fn order_out(s: &SplitS1Complex, kind: &'static str, r: DilationReport) -> OrderOut {
    OrderOut {
        kind,
        truncation: r.truncation,
        order: r.order,
        checks: r.checks,
        witness: r.witness.map(|w| witness_terms(s.complex(), &w)),
    }
}

fn order(args: &OrderArgs, semi: bool) -> Outcome {
    let s = load_split(&args.input)?;
    let n = args.max_k.unwrap_or(s.truncation());
    let out = if semi {
        order_out(&s, "semidilation", order_of_semidilation(&s, n)?)
    } else {
        order_out(&s, "dilation", order_of_dilation(&s, n)?)
    };
    eprintln!("{} order: {}", out.kind, out.order);
    Ok(print_json(&out)?)
}

fn les(input: &Input, degrees: Option<DegreeRange>) -> Outcome {
    let s = load_split(input)?;
    let (lo, hi) = degree_span(s.complex());
    let window = degrees.map_or(lo - 2 * s.truncation() as i64 - 1..=hi + 1, DegreeRange::inclusive);
    let report = tautological_les(&s, window)?;
    print_json(&report)?;
    if report.exact {
        return Ok(());
    }
    let bad: Vec<String> = report
        .nodes
        .iter()
        .filter(|n| !n.exact)
        .map(|n| format!("not exact at H^{}({})", n.degree, n.space))
        .collect();
    Err(Failure::Property(bad.join("\n")))
}

fn product(a: &PathBuf, b: &PathBuf, output: Option<&PathBuf>) -> Outcome {
    if a == Path::new("-") && b == Path::new("-") {
        return Err(anyhow!("at most one input can be standard input").into());
    }
    let (da, db) = (read_document(a)?, read_document(b)?);
    let doc = if da.unit.is_some() && db.unit.is_some() {
        let (s, t) = (da.to_split()?, db.to_split()?);
        for x in [&s, &t] {
            let r = x.verify_splitting();
            if !r.valid {
                return Err(invalid(splitting_problems(&r)));
            }
        }
        ComplexDocument::from_split(&tensor_split(&s, &t)?)
    } else {
        let (c, d) = (da.to_complex()?, db.to_complex()?);
        for x in [&c, &d] {
            let r = x.verify_s1_relations();
            if !r.valid {
                return Err(invalid(relation_problems(&r)));
            }
        }
        ComplexDocument::from_complex(&tensor(&c, &d)?, None, None)
    };
    Ok(emit_document(&doc, output)?)
}

#[derive(Serialize)]
struct PeriodsOut {
    exponents: Vec<u64>,
    periods: Vec<PrincipalPeriod>,
}

#[derive(Serialize)]
struct CzOut {
    exponents: Vec<u64>,
    minimum: GlobalMinimum,
    families: Vec<OrbitFamily>,
}

fn brieskorn(cmd: BrieskornCommand) -> Outcome {
    let data = |e: &crate::Exponents| BrieskornData::new(e.0.clone());
    let bound = |a: &BrieskornData, args: &BrieskornArgs| args.bound.map_or_else(|| default_period_bound(a), Ok);
    match cmd {
        BrieskornCommand::Periods { exponents } => {
            let a = data(&exponents)?;
            print_json(&PeriodsOut {
                periods: principal_periods(&a),
                exponents: exponents.0,
            })?
        }
        BrieskornCommand::Cz(args) => {
            let a = data(&args.exponents)?;
            let b = bound(&a, &args)?;
            let minimum = global_min_cz(&a, b)?;
            eprintln!("min CZ {} at T = {}", minimum.min_cz, minimum.family.period);
            print_json(&CzOut {
                exponents: args.exponents.0,
                minimum,
                families: orbit_families(&a, b),
            })?
        }
        BrieskornCommand::Adc(args) => {
            let a = data(&args.exponents)?;
            print_json(&adc_certificate(&a, bound(&a, &args)?))?
        }
        BrieskornCommand::Predict(args) => {
            let a = data(&args.exponents)?;
            print_json(&predicted_order(&a, bound(&a, &args)?)?)?
        }
    }
    Ok(())
}
