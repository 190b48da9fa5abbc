mod common;

use common::*;
use kdilation::linalg::{solve, Subquotient};
use kdilation::{Rational, SparseMatrix};
use proptest::prelude::*;

const SEEDS: std::ops::Range<u64> = 0..40;

fn run(name: &str, f: impl Fn(u64) -> Check) {
    for seed in SEEDS {
        if let Err(e) = f(seed) {
            panic!("{name} fails for seed {seed}: {e}");
        }
    }
}

#[test]
fn random_complexes_square_to_zero() {
    run("square zero", |s| check_square_zero(&random_complex(s, 12, 5)));
}

#[test]
fn filtration_inclusions_and_dimensions() {
    run("inclusions", |s| check_inclusions(&random_complex(s, 10, 5)));
}

#[test]
fn delta_k_kernel_image_cokernel() {
    run("Δᵏ identities", |s| check_delta_identities(&random_complex(s, 10, 6)));
}

#[test]
fn delta_one_is_induced_by_delta1() {
    run("Δ¹", |s| check_delta_one(&random_complex(s, 12, 4)));
}

#[test]
fn dilation_hierarchy() {
    run("hierarchy", |s| check_hierarchy(&random_split_complex(s, 10, 5)));
}

#[test]
fn torsion_route_agrees_with_direct_route() {
    run("torsion", |s| check_torsion_agreement(&random_split_complex(s, 10, 5)));
}

#[test]
fn tautological_sequence_is_exact() {
    run("les", |s| check_les(&random_split_complex(s, 8, 4)));
}

#[test]
fn last_page_matches_cohomology() {
    run("E∞", |s| check_e_infinity(&random_complex(s, 10, 5)));
}

#[test]
fn functoriality_of_filtrations() {
    run("functoriality", |s| {
        let c = random_complex(s, 8, 4);
        let d = random_complex(s + 1000, 8, 4);
        let n = c.truncation().min(d.truncation());
        let (c, d) = (c.truncate(n).unwrap(), d.truncate(n).unwrap());
        check_functoriality(&random_morphism(s, &c, &d))?;
        check_functoriality(&random_morphism(s, &c, &flatten(&d)))
    });
}

#[test]
fn homotopic_morphisms_agree_on_cohomology() {
    run("homotopy", |s| {
        let c = random_complex(s, 8, 4);
        let d = random_complex(s + 2000, 8, 4);
        let n = c.truncation().min(d.truncation());
        let (c, d) = (c.truncate(n).unwrap(), d.truncate(n).unwrap());
        check_homotopy_invariance(s, &random_morphism(s, &c, &d))
    });
}

#[test]
fn generator_is_deterministic() {
    let a = random_split_complex(7, 10, 5);
    let b = random_split_complex(7, 10, 5);
    assert_eq!(a.complex(), b.complex());
    assert_eq!(a.unit(), b.unit());
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn to_sparse(rows: &[Vec<i64>]) -> SparseMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    SparseMatrix::from_i64(&refs)
}

proptest! {
    #[test]
    fn rank_matches_dense_oracle(rows in small_matrix()) {
        let m = to_sparse(&rows);
        prop_assert_eq!(m.rank(), matrix_rank(&m));
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in small_matrix()) {
        let m = to_sparse(&rows);
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len() + matrix_rank(&m), m.ncols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn solve_finds_preimages(rows in small_matrix(), coeffs in prop::collection::vec(-3i64..=3, 6)) {
        let m = to_sparse(&rows);
        let x: Vec<Rational> = coeffs[..m.ncols()].iter().map(|&c| q(c)).collect();
        let b = m.mul_vec(&x).unwrap();
        let y = solve(&m, &b).unwrap().expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
    }

    #[test]
    fn subquotient_dimension(rows in small_matrix()) {
        // Z = all of the column space's ambient, B = the column space.
        let m = to_sparse(&rows);
        let n = m.nrows();
        let z: Vec<_> = (0..n).map(|i| kdilation::linalg::unit_vector(n, i)).collect();
        let sq = Subquotient::new(n, &z, &m.columns()).unwrap();
        prop_assert_eq!(sq.dim(), n - matrix_rank(&m));
    }

    #[test]
    fn product_rank_is_bounded(
        (a, b) in (1usize..6, 1usize..6, 1usize..6).prop_flat_map(|(r, k, c)| (
            prop::collection::vec(prop::collection::vec(-3i64..=3, k), r),
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), k),
        ))
    ) {
        let (a, b) = (to_sparse(&a), to_sparse(&b));
        let p = &a * &b;
        prop_assert_eq!(dense(&p), dense_mul(&dense(&a), &dense(&b)));
        prop_assert!(p.rank() <= a.rank().min(b.rank()));
    }
}

#[test]
fn generated_complexes_are_not_degenerate() {
    let mut higher = 0;
    let mut deep = 0;
    for seed in SEEDS {
        let c = random_complex(seed, 10, 5);
        if (1..=c.truncation()).any(|r| !c.delta(r).is_zero()) {
            higher += 1;
        }
        if c.truncation() >= 3 {
            deep += 1;
        }
    }
    assert!(higher >= 10, "only {higher} complexes with higher operators");
    assert!(deep >= 10, "only {deep} complexes with N ≥ 3");
}
