//! Shared test utilities: a dense rational oracle written independently of
//! the library's sparse elimination, seeded random generators for valid
//! S¹-complexes and morphisms, and the property checks themselves.

#![allow(dead_code)]

use std::collections::BTreeMap;

use kdilation::complex::{Generator, OperatorFamily};
use kdilation::dilation::{
    has_k_dilation, has_k_semidilation, order_of_dilation, order_of_semidilation, order_via_torsion, semidilation_order_via_torsion,
    tautological_les, Part, SplitS1Complex,
};
use kdilation::linalg::{solve, MatrixBuilder};
use kdilation::morphism::{phi_k, phi_k_value, verify_functoriality, S1Homotopy, S1Morphism};
use kdilation::spectral::{delta_k, Filtration};
use kdilation::{Rational, S1Complex, SparseMatrix, Vector};
use num::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

// ---------------------------------------------------------------- oracle

/// Rank by plain fraction-exact Gaussian elimination on dense rows.
pub fn dense_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][c].clone();
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = &rows[r][c] / &pivot;
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r][c..cols].iter_mut().zip(&pivot_row[c..cols]) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn dense(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    (0..m.nrows())
        .map(|i| {
            let mut row = vec![Rational::zero(); m.ncols()];
            for (j, v) in m.row(i) {
                row[*j] = v.clone();
            }
            row
        })
        .collect()
}

pub fn dense_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).filter(|&k| !row[k].is_zero()).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Rank of a list of vectors (as rows).
pub fn span_dim(vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    dense_rank(vectors.to_vec())
}

pub fn contains(big: &[Vector], small: &[Vector]) -> bool {
    let mut all = big.to_vec();
    all.extend_from_slice(small);
    span_dim(big) == span_dim(&all)
}

pub fn matrix_rank(m: &SparseMatrix) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    dense_rank(dense(m))
}

fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

// ---------------------------------------------------------------- generators

fn small_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let v = *[-2i64, -1, 1, 1, 2, 3].choose(rng).unwrap();
    q(v)
}

/// Solves `A(X) = rhs` for a matrix `X` supported on `allowed` entries
/// `(row, col)`, where `A` is given by its action on unit matrices. Adds a
/// random element of the kernel.
fn solve_entries<F>(
    rng: &mut ChaCha8Rng,
    rows: usize,
    cols: usize,
    allowed: &[(usize, usize)],
    out_shape: (usize, usize),
    apply: F,
    rhs: &SparseMatrix,
) -> Option<SparseMatrix>
where
    F: Fn(usize, usize) -> SparseMatrix,
{
    let (orows, ocols) = out_shape;
    let mut b = MatrixBuilder::new(orows * ocols, allowed.len());
    for (u, &(t, s)) in allowed.iter().enumerate() {
        for (i, j, v) in apply(t, s).triplets() {
            b.add(i * ocols + j, u, v);
        }
    }
    let system = b.build();
    let mut target = vec![Rational::zero(); orows * ocols];
    for (i, j, v) in rhs.triplets() {
        target[i * ocols + j] = v.clone();
    }
    let mut x = solve(&system, &target).ok()??;
    let kernel = system.kernel_basis();
    if !kernel.is_empty() {
        for _ in 0..rng.gen_range(1..=3) {
            let k = &kernel[rng.gen_range(0..kernel.len())];
            let c = small_nonzero(rng);
            for (xi, ki) in x.iter_mut().zip(k) {
                *xi += &c * ki;
            }
        }
    }
    let entries = allowed.iter().zip(x).filter(|(_, v)| !v.is_zero()).map(|(&(t, s), v)| (t, s, v));
    let _ = (rows, cols);
    Some(SparseMatrix::from_triplets(orows, ocols, entries).unwrap())
}

fn unit_matrix(rows: usize, cols: usize, t: usize, s: usize) -> SparseMatrix {
    SparseMatrix::from_triplets(rows, cols, [(t, s, Rational::one())]).unwrap()
}

/// `δʳ` for `r = 1..=n` solved from the relations on top of `d0`, starting
/// from `planted` at `r = 1`. Stops early when a level is unsolvable.
fn solve_higher(
    rng: &mut ChaCha8Rng,
    degrees: &[i64],
    parts: Option<&[Part]>,
    d0: SparseMatrix,
    planted: SparseMatrix,
    n: usize,
) -> Vec<SparseMatrix> {
    let dim = degrees.len();
    let mut ops = vec![d0];
    for k in 1..=n {
        let shift = 1 - 2 * k as i64;
        let allowed: Vec<(usize, usize)> = (0..dim)
            .flat_map(|t| (0..dim).map(move |s| (t, s)))
            .filter(|&(t, s)| degrees[t] - degrees[s] == shift)
            .filter(|&(_, s)| parts.is_none_or(|p| p[s] == Part::Plus))
            .collect();
        let start = if k == 1 { planted.clone() } else { SparseMatrix::zeros(dim, dim) };
        let d0 = ops[0].clone();
        let mut rhs = &(&d0 * &start) + &(&start * &d0);
        rhs = -&rhs;
        for i in 1..k {
            rhs = &rhs - &(&ops[i] * &ops[k - i]);
        }
        let apply = |t: usize, s: usize| {
            let e = unit_matrix(dim, dim, t, s);
            &(&d0 * &e) + &(&e * &d0)
        };
        match solve_entries(rng, dim, dim, &allowed, (dim, dim), apply, &rhs) {
            Some(x) => ops.push(&start + &x),
            None => break,
        }
    }
    ops
}

/// A random invertible degree-preserving matrix and its inverse. When
/// `parts` is given, `C₀` is preserved.
fn conjugator(rng: &mut ChaCha8Rng, degrees: &[i64], parts: Option<&[Part]>) -> (SparseMatrix, SparseMatrix) {
    let dim = degrees.len();
    let mut p = SparseMatrix::identity(dim);
    let mut p_inv = SparseMatrix::identity(dim);
    for _ in 0..3 * dim {
        let (t, s) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        if t == s || degrees[t] != degrees[s] {
            continue;
        }
        if let Some(parts) = parts {
            if parts[s] == Part::Zero && parts[t] == Part::Plus {
                continue;
            }
        }
        let c = small_nonzero(rng);
        let e = SparseMatrix::from_triplets(dim, dim, [(t, s, c)]).unwrap();
        p = &p * &(&SparseMatrix::identity(dim) + &e);
        p_inv = &(&SparseMatrix::identity(dim) - &e) * &p_inv;
    }
    (p, p_inv)
}

/// Generators, parts and `δ⁰`, `δ¹` in a basis where `δ⁰` is a partial
/// pairing (plus an optional gap column).
struct Skeleton {
    degrees: Vec<i64>,
    parts: Vec<Part>,
    d0: Vec<(usize, usize, Rational)>,
    d1: Vec<(usize, usize, Rational)>,
}

impl Skeleton {
    fn push(&mut self, degree: i64, part: Part) -> usize {
        self.degrees.push(degree);
        self.parts.push(part);
        self.degrees.len() - 1
    }

    /// A chain `p̌_j` (degree `2j − 1`), `p̂_j` (degree `2j − 2`) for
    /// `j < len` with `δ⁰p̌₀ = c·e`, `δ⁰p̌_j = p̂_{j+1}`, `δ¹p̌_j = p̂_j`.
    fn plant_chain(&mut self, rng: &mut ChaCha8Rng, len: usize, gap: bool) {
        let pairs: Vec<(usize, usize)> = (0..len as i64)
            .map(|j| (self.push(2 * j - 1, Part::Plus), self.push(2 * j - 2, Part::Plus)))
            .collect();
        self.d0.push((0, pairs[0].0, small_nonzero(rng)));
        if gap {
            let s = self.push(0, Part::Zero);
            self.d0.push((s, pairs[0].0, Rational::one()));
        }
        for j in 0..len {
            if j + 1 < len {
                self.d0.push((pairs[j + 1].1, pairs[j].0, Rational::one()));
            }
            self.d1.push((pairs[j].1, pairs[j].0, small_nonzero(rng)));
        }
    }
}

fn skeleton(rng: &mut ChaCha8Rng, max_gens: usize, split: bool) -> Skeleton {
    let mut sk = Skeleton {
        degrees: Vec::new(),
        parts: Vec::new(),
        d0: Vec::new(),
        d1: Vec::new(),
    };
    sk.push(0, Part::Zero);
    if max_gens >= 4 && rng.gen_bool(0.6) {
        let len = rng.gen_range(1..=((max_gens - 2) / 2).min(3));
        let gap = sk.degrees.len() + 2 * len < max_gens && rng.gen_bool(0.3);
        sk.plant_chain(rng, len, gap);
    }
    let target = rng.gen_range(sk.degrees.len()..=max_gens.max(sk.degrees.len()));
    let random_part = |rng: &mut ChaCha8Rng| if split && rng.gen_bool(0.3) { Part::Zero } else { Part::Plus };
    while sk.degrees.len() < target {
        let d = rng.gen_range(-4..=3);
        let part = random_part(rng);
        if sk.degrees.len() + 1 < target && rng.gen_bool(0.6) {
            let s = sk.push(d, part);
            let t_part = if part == Part::Zero { Part::Zero } else { random_part(rng) };
            let t = sk.push(d + 1, t_part);
            sk.d0.push((t, s, small_nonzero(rng)));
        } else {
            sk.push(d, part);
        }
    }
    if !split {
        sk.parts.iter_mut().for_each(|p| *p = Part::Plus);
    }
    sk
}

/// Builds a valid family on a skeleton: higher operators solved in the
/// pairing basis, then everything conjugated by a random `P`.
fn build(rng: &mut ChaCha8Rng, sk: &Skeleton, n: usize, split: bool) -> (Vec<SparseMatrix>, SparseMatrix) {
    let dim = sk.degrees.len();
    let parts = split.then_some(sk.parts.as_slice());
    let d0 = SparseMatrix::from_triplets(dim, dim, sk.d0.clone()).unwrap();
    let d1 = SparseMatrix::from_triplets(dim, dim, sk.d1.clone()).unwrap();
    let ops = solve_higher(rng, &sk.degrees, parts, d0, d1, n);
    let (p, p_inv) = conjugator(rng, &sk.degrees, parts);
    let ops = ops.iter().map(|d| &(&p * d) * &p_inv).collect();
    (ops, p)
}

/// A random valid split complex with at most `max_gens` generators and
/// truncation at most `max_n`. Generator 0 is named `e`.
pub fn random_split_complex(seed: u64, max_gens: usize, max_n: usize) -> SplitS1Complex {
    let mut rng = rng(seed);
    let sk = skeleton(&mut rng, max_gens, true);
    let n = rng.gen_range(0..=max_n);
    let (ops, p) = build(&mut rng, &sk, n, true);
    let basis = sk
        .degrees
        .iter()
        .enumerate()
        .map(|(i, &d)| Generator::new(if i == 0 { "e".to_string() } else { format!("g{i}") }, d))
        .collect();
    let complex = S1Complex::new(basis, OperatorFamily::new(ops).unwrap()).unwrap();
    let s = SplitS1Complex::new(complex, sk.parts.clone(), p.column(0)).unwrap();
    let report = s.verify_splitting();
    assert!(report.valid, "generator produced an invalid split complex (seed {seed}): {report:?}");
    s
}

/// A random valid S¹-complex with no splitting constraints.
pub fn random_complex(seed: u64, max_gens: usize, max_n: usize) -> S1Complex {
    let mut rng = rng(seed ^ 0x5eed);
    let sk = skeleton(&mut rng, max_gens, false);
    let n = rng.gen_range(0..=max_n);
    let (ops, _) = build(&mut rng, &sk, n, false);
    let basis = sk.degrees.iter().enumerate().map(|(i, &d)| Generator::new(format!("x{i}"), d)).collect();
    let c = S1Complex::new(basis, OperatorFamily::new(ops).unwrap()).unwrap();
    assert!(c.verify_s1_relations().valid, "invalid random complex (seed {seed})");
    c
}

/// Random `h` with `hʳ` of degree `−2r − 1`.
pub fn random_homotopy(rng: &mut ChaCha8Rng, c: &S1Complex, d: &S1Complex) -> Vec<SparseMatrix> {
    (0..=c.truncation())
        .map(|r| {
            let shift = -2 * r as i64 - 1;
            let mut entries = Vec::new();
            for (t, gt) in d.basis().iter().enumerate() {
                for (s, gs) in c.basis().iter().enumerate() {
                    if gt.degree - gs.degree == shift && rng.gen_bool(0.3) {
                        entries.push((t, s, small_nonzero(rng)));
                    }
                }
            }
            SparseMatrix::from_triplets(d.dim(), c.dim(), entries).unwrap()
        })
        .collect()
}

/// A random S¹-morphism `C → D`, solved component by component. Falls
/// back to a null-homotopic morphism when the relations cannot be solved.
pub fn random_morphism(seed: u64, c: &S1Complex, d: &S1Complex) -> S1Morphism {
    let mut rng = rng(seed ^ 0x0f0f);
    let (nc, nd) = (c.dim(), d.dim());
    for _ in 0..5 {
        let mut phi: Vec<SparseMatrix> = Vec::new();
        for k in 0..=c.truncation() {
            let shift = -2 * k as i64;
            let allowed: Vec<(usize, usize)> = (0..nd)
                .flat_map(|t| (0..nc).map(move |s| (t, s)))
                .filter(|&(t, s)| d.basis()[t].degree - c.basis()[s].degree == shift)
                .collect();
            // φᵏδ⁰ − ∂⁰φᵏ = Σ_{i<k} ∂^{k−i}φⁱ − φⁱδ^{k−i}
            let mut rhs = SparseMatrix::zeros(nd, nc);
            for (i, p) in phi.iter().enumerate() {
                rhs = &rhs + &(d.delta(k - i) * p);
                rhs = &rhs - &(p * c.delta(k - i));
            }
            let apply = |t: usize, s: usize| {
                let e = unit_matrix(nd, nc, t, s);
                &(&e * c.delta(0)) - &(d.delta(0) * &e)
            };
            match solve_entries(&mut rng, nd, nc, &allowed, (nd, nc), apply, &rhs) {
                Some(x) => phi.push(x),
                None => break,
            }
        }
        if phi.len() == c.truncation() + 1 {
            let m = S1Morphism::new(c.clone(), d.clone(), phi).unwrap();
            assert!(m.verify().valid, "solved morphism is invalid (seed {seed})");
            return m;
        }
    }
    let h = random_homotopy(&mut rng, c, d);
    S1Morphism::homotopy_boundary(c, d, &h).unwrap()
}

// ---------------------------------------------------------------- checks

pub type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `(δ^{S¹})² = 0` on `F^N C⁺`, multiplied densely.
pub fn check_square_zero(c: &S1Complex) -> Check {
    let d = dense(c.filtered_plus(c.truncation()).unwrap().differential());
    let sq = dense_mul(&d, &d);
    ensure(sq.iter().all(|r| r.iter().all(Zero::is_zero)), || "δ^{S¹} does not square to zero".into())
}

/// Dimensions of `Z_k` and `B_k` from nullities and intersections.
fn oracle_zb_dims(c: &S1Complex, k: usize) -> (usize, usize) {
    let n = c.dim();
    let f = c.filtered_plus(k).unwrap();
    let d = dense(f.differential());
    let big = f.dim();
    let rank_k = dense_rank(d.clone());
    let nullity_k = big - rank_k;
    let nullity_below = if k == 0 {
        0
    } else {
        let g = c.filtered_plus(k - 1).unwrap();
        g.dim() - matrix_rank(g.differential())
    };
    // B_k = im D ∩ (u⁰ slot): dim U + dim W − dim(U + W).
    let mut cols: Vec<Vector> = (0..big).map(|j| d.iter().map(|r| r[j].clone()).collect()).collect();
    let image = if cols.is_empty() { 0 } else { span_dim(&cols) };
    for i in 0..n {
        let mut e = vec![Rational::zero(); big];
        e[i] = Rational::one();
        cols.push(e);
    }
    let sum = span_dim(&cols);
    (nullity_k - nullity_below, image + n - sum)
}

/// Inclusion chain, and `Z_k`, `B_k` dimensions against the oracle.
pub fn check_inclusions(c: &S1Complex) -> Check {
    let n = c.truncation();
    let f = Filtration::new(c).map_err(|e| e.to_string())?;
    for k in 0..=n {
        let (z, b) = (f.z(k).vectors(), f.b(k).vectors());
        let (zd, bd) = oracle_zb_dims(c, k);
        ensure(z.len() == zd && span_dim(&z) == zd, || {
            format!("dim Z_{k} = {} but oracle says {zd}", z.len())
        })?;
        ensure(b.len() == bd && span_dim(&b) == bd, || {
            format!("dim B_{k} = {} but oracle says {bd}", b.len())
        })?;
        if k < n {
            ensure(contains(&f.b(k + 1).vectors(), &b), || format!("B_{k} ⊄ B_{}", k + 1))?;
            ensure(contains(&z, &f.z(k + 1).vectors()), || format!("Z_{} ⊄ Z_{k}", k + 1))?;
        }
        if 2 * k <= n {
            ensure(contains(&z, &b), || format!("B_{k} ⊄ Z_{k}"))?;
        }
    }
    Ok(())
}

/// `ker Δᵏ = Z_k/B₀`, `im Δᵏ = B_k/B_{k−1}`, `coker Δᵏ = Z₀/B_k`.
pub fn check_delta_identities(c: &S1Complex) -> Check {
    let n = c.truncation();
    let f = Filtration::new(c).map_err(|e| e.to_string())?;
    let dim = |v: Vec<Vector>| span_dim(&v);
    for k in (1..).take_while(|k| 2 * k <= n) {
        let m = f.delta_k(k).map_err(|e| e.to_string())?;
        let rank = matrix_rank(&m.matrix);
        let kernel = m.domain.dim() - rank;
        let coker = m.codomain.dim() - rank;
        let (zk, b0, bk, bk1, z0) = (
            dim(f.z(k).vectors()),
            dim(f.b(0).vectors()),
            dim(f.b(k).vectors()),
            dim(f.b(k - 1).vectors()),
            dim(f.z(0).vectors()),
        );
        ensure(kernel == zk - b0, || format!("ker Δ^{k} has dim {kernel}, Z_k/B_0 has {}", zk - b0))?;
        ensure(rank == bk - bk1, || format!("im Δ^{k} has dim {rank}, B_k/B_(k-1) has {}", bk - bk1))?;
        ensure(coker == z0 - bk, || format!("coker Δ^{k} has dim {coker}, Z_0/B_k has {}", z0 - bk))?;
        // Recomputing with a perturbed witness gives the same classes.
        for (col, &j) in m.domain.complement_indices().iter().enumerate() {
            let w = &f.z(k - 1).basis[j];
            let mut alphas = w.alphas().to_vec();
            if k >= 2 {
                // add a closed element of F^{k−2}C⁺ to the lower part
                if let Some(y) = c.filtered_plus(k - 2).unwrap().differential().kernel_basis().first() {
                    let g = c.filtered_plus(k - 2).unwrap();
                    for (p, comp) in g.components(y).into_iter().enumerate() {
                        let idx = k - 1 - p;
                        alphas[idx] = alphas[idx].iter().zip(&comp).map(|(a, b)| a + b).collect();
                    }
                }
            }
            let value = kdilation::spectral::delta_k_value(c, k, &alphas);
            let coords = m.codomain.coordinates(&value).unwrap().ok_or("Δ value left Z_0")?;
            ensure(coords == m.matrix.column(col), || format!("Δ^{k} depends on the witness"))?;
        }
    }
    Ok(())
}

/// `Δ¹ = [δ¹]` on `H(C, δ⁰)`, checked entrywise against the oracle.
pub fn check_delta_one(c: &S1Complex) -> Check {
    if c.truncation() < 2 {
        return Ok(());
    }
    let m = delta_k(c, 1).map_err(|e| e.to_string())?;
    let boundaries = c.delta(0).columns();
    let reps = m.codomain.complement_basis();
    for (col, v) in m.domain.complement_basis().iter().enumerate() {
        let image = c.delta(1).mul_vec(v).unwrap();
        let coords = m.matrix.column(col);
        let mut predicted = vec![Rational::zero(); c.dim()];
        for (x, r) in coords.iter().zip(&reps) {
            for (p, y) in predicted.iter_mut().zip(r) {
                *p += x * y;
            }
        }
        let diff = sub(&image, &predicted);
        ensure(contains(&boundaries, &[diff]), || "Δ¹ differs from [δ¹]".into())?;
    }
    Ok(())
}

/// Dilation implies semi-dilation, and both persist to the next level.
pub fn check_hierarchy(s: &SplitS1Complex) -> Check {
    let n = s.truncation();
    let dil: Vec<bool> = (0..=n).map(|k| has_k_dilation(s, k).unwrap().holds).collect();
    let semi: Vec<bool> = (0..=n).map(|k| has_k_semidilation(s, k).unwrap().holds).collect();
    for k in 0..=n {
        ensure(!dil[k] || semi[k], || format!("dilation without semi-dilation at {k}"))?;
        if k < n {
            ensure(!semi[k] || semi[k + 1], || format!("semi-dilation lost at {}", k + 1))?;
            ensure(!dil[k] || dil[k + 1], || format!("dilation lost at {}", k + 1))?;
        }
    }
    Ok(())
}

/// Direct and torsion routes give the same orders.
pub fn check_torsion_agreement(s: &SplitS1Complex) -> Check {
    let n = s.truncation();
    let a = order_of_dilation(s, n).map_err(|e| e.to_string())?;
    let b = order_via_torsion(s, n).map_err(|e| e.to_string())?;
    ensure(a.order == b.order, || format!("dilation order {} vs torsion {}", a.order, b.order))?;
    let a = order_of_semidilation(s, n).map_err(|e| e.to_string())?;
    let b = semidilation_order_via_torsion(s, n).map_err(|e| e.to_string())?;
    ensure(a.order == b.order, || format!("semi-dilation order {} vs torsion {}", a.order, b.order))
}

pub fn degree_window(c: &S1Complex) -> std::ops::RangeInclusive<i64> {
    let lo = c.degrees().into_iter().min().unwrap_or(0) - 2 * c.truncation() as i64 - 1;
    let hi = c.degrees().into_iter().max().unwrap_or(0) + 1;
    lo..=hi
}

pub fn check_les(s: &SplitS1Complex) -> Check {
    let r = tautological_les(s, degree_window(s.complex())).map_err(|e| e.to_string())?;
    ensure(r.exact, || format!("not exact at {:?}", r.nodes.iter().find(|x| !x.exact)))
}

/// `dim H^d(F^N C⁺)` by dense ranks, per degree.
pub fn oracle_cohomology_dims(c: &S1Complex) -> BTreeMap<i64, usize> {
    let f = c.filtered_plus(c.truncation()).unwrap();
    let degrees = f.degrees().to_vec();
    let d = dense(f.differential());
    let block_rank = |from: i64| -> usize {
        let cols: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i] == from).collect();
        let rows: Vec<usize> = (0..degrees.len()).filter(|&i| degrees[i] == from + 1).collect();
        if cols.is_empty() || rows.is_empty() {
            return 0;
        }
        dense_rank(rows.iter().map(|&r| cols.iter().map(|&c| d[r][c].clone()).collect()).collect())
    };
    let mut out = BTreeMap::new();
    let mut present: Vec<i64> = degrees.clone();
    present.sort_unstable();
    present.dedup();
    for deg in present {
        let count = degrees.iter().filter(|&&x| x == deg).count();
        let dim = count - block_rank(deg) - block_rank(deg - 1);
        if dim > 0 {
            out.insert(deg, dim);
        }
    }
    out
}

/// The last page has the dimensions of `H(F^N C⁺)` in every degree.
pub fn check_e_infinity(c: &S1Complex) -> Check {
    let n = c.truncation();
    let page = Filtration::new(c).unwrap().page(n).map_err(|e| e.to_string())?;
    let mut dims = page.dims();
    dims.retain(|_, v| *v > 0);
    let oracle = oracle_cohomology_dims(c);
    ensure(dims == oracle, || format!("E_∞ {dims:?} vs H {oracle:?}"))
}

/// Containments and commutation, plus witness independence of `Φᵏ`.
pub fn check_functoriality(phi: &S1Morphism) -> Check {
    let r = verify_functoriality(phi).map_err(|e| e.to_string())?;
    ensure(r.valid, || format!("functoriality fails: {:?}", r.levels))?;
    let t = phi.target();
    if !t.has_trivial_higher_structure() {
        return Ok(());
    }
    let c = phi.source();
    for k in 1..=c.truncation().min(3) {
        let m = phi_k(phi, k).map_err(|e| e.to_string())?;
        let zk = kdilation::spectral::z_space(c, k).unwrap();
        let lower = c.filtered_plus(k - 1).unwrap();
        let extra = lower.differential().kernel_basis();
        for (col, &j) in m.domain.complement_indices().iter().enumerate() {
            let mut alphas = zk.basis[j].alphas().to_vec();
            if let Some(y) = extra.last() {
                for (p, comp) in lower.components(y).into_iter().enumerate() {
                    alphas[k - p] = alphas[k - p].iter().zip(&comp).map(|(a, b)| a + b).collect();
                }
            }
            let coords = m.codomain.coordinates(&phi_k_value(phi, &alphas)).unwrap().ok_or("Φ value not closed")?;
            ensure(coords == m.matrix.column(col), || format!("Φ^{k} depends on the witness"))?;
        }
    }
    Ok(())
}

/// Homotopic morphisms induce the same map on `H(F^N C⁺)`.
pub fn check_homotopy_invariance(seed: u64, phi: &S1Morphism) -> Check {
    let mut rng = rng(seed ^ 0xabcd);
    let h = random_homotopy(&mut rng, phi.source(), phi.target());
    let boundary = S1Morphism::homotopy_boundary(phi.source(), phi.target(), &h).unwrap();
    let other: Vec<SparseMatrix> = (0..=phi.truncation()).map(|r| phi.phi(r) - boundary.phi(r)).collect();
    let other = S1Morphism::new(phi.source().clone(), phi.target().clone(), other).unwrap();
    ensure(other.verify().valid, || "φ − (hδ + ∂h) is not a morphism".into())?;
    let homotopy = S1Homotopy::new(h, phi.clone(), other.clone()).unwrap();
    ensure(homotopy.verify().valid, || "homotopy does not verify".into())?;
    let n = phi.truncation();
    let (a, b) = (phi.induced_map(n).unwrap(), other.induced_map(n).unwrap());
    ensure(a.matrix == b.matrix, || "homotopic morphisms induce different maps".into())
}

/// A target with trivial higher structure, for the `Φᵏ` checks.
pub fn flatten(c: &S1Complex) -> S1Complex {
    S1Complex::with_differential(c.basis().to_vec(), c.delta(0).clone(), c.truncation()).unwrap()
}
