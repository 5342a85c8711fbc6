//! Seeded generators and brute-force oracles shared by the integration tests.
//! The oracles work directly on matrices and never call the library's
//! closed-form routines.
#![allow(dead_code)]

use nalgebra::DMatrix;
use qtopos::hermitian::CMatrix;
use qtopos::{AtomSet, Context, ContextPoset, HermitianOperator, PosetOptions, Projection, C64};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const EPS: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    (0..n).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

pub fn normalized(v: &[C64]) -> Vec<C64> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|z| z / norm).collect()
}

pub fn random_unit(rng: &mut impl Rng, n: usize) -> Vec<C64> {
    normalized(&random_vector(rng, n))
}

fn inner(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Columns of a random unitary, by Gram-Schmidt.
pub fn random_basis(rng: &mut impl Rng, n: usize) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    while out.len() < n {
        let mut v = random_vector(rng, n);
        for u in &out {
            let k = inner(u, &v);
            for (x, y) in v.iter_mut().zip(u) {
                *x -= k * y;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            out.push(v.iter().map(|z| z / norm).collect());
        }
    }
    out
}

pub fn standard_basis(n: usize) -> Vec<Vec<C64>> {
    (0..n).map(|i| (0..n).map(|k| c(if k == i { 1.0 } else { 0.0 })).collect()).collect()
}

pub fn outer_product(vs: &[&Vec<C64>], n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for v in vs {
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] += v[i] * v[j].conj();
            }
        }
    }
    m
}

pub fn span_projection(basis: &[Vec<C64>], indices: &[usize]) -> Projection {
    let n = basis[0].len();
    let vs: Vec<&Vec<C64>> = indices.iter().map(|&i| &basis[i]).collect();
    Projection::new(outer_product(&vs, n), 1e-8).unwrap()
}

/// Projection onto the span of arbitrary (not necessarily orthogonal) vectors.
pub fn projection_onto_span(vectors: &[Vec<C64>], n: usize) -> Projection {
    let mut ortho: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for u in &ortho {
            let k = inner(u, &w);
            for (x, y) in w.iter_mut().zip(u) {
                *x -= k * y;
            }
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-7 {
            ortho.push(w.iter().map(|z| z / norm).collect());
        }
    }
    let refs: Vec<&Vec<C64>> = ortho.iter().collect();
    Projection::new(outer_product(&refs, n), 1e-8).unwrap()
}

pub fn random_projection(rng: &mut impl Rng, n: usize, rank: usize) -> Projection {
    let b = random_basis(rng, n);
    span_projection(&b, &(0..rank).collect::<Vec<_>>())
}

/// `U diag(values) U†` for a random unitary `U`.
pub fn hermitian_with_spectrum(rng: &mut impl Rng, values: &[f64]) -> HermitianOperator {
    let n = values.len();
    let b = random_basis(rng, n);
    let mut m = CMatrix::zeros(n, n);
    for (v, &x) in b.iter().zip(values) {
        m += outer_product(&[v], n).scale(x);
    }
    HermitianOperator::new(m, 1e-8).unwrap()
}

/// Random Hermitian matrix; half the time with a degenerate integer spectrum.
pub fn random_hermitian(rng: &mut impl Rng, n: usize) -> HermitianOperator {
    if rng.gen_bool(0.5) {
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(-2..=2) as f64).collect();
        hermitian_with_spectrum(rng, &values)
    } else {
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        hermitian_with_spectrum(rng, &values)
    }
}

pub fn random_positive(rng: &mut impl Rng, n: usize) -> HermitianOperator {
    let values: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.3) { rng.gen_range(0..3) as f64 } else { rng.gen_range(0.0..3.0) }).collect();
    hermitian_with_spectrum(rng, &values)
}

pub fn context_from_partition(basis: &[Vec<C64>], blocks: &[Vec<usize>]) -> Context {
    let atoms = blocks.iter().map(|b| span_projection(basis, b)).collect();
    Context::new(atoms, 1e-8).unwrap()
}

/// All set partitions of `0..n`, blocks in order of first element.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(i);
            go(i + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![i]);
        go(i + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut out);
    out
}

/// A random partition of `0..n`.
pub fn random_partition(rng: &mut impl Rng, n: usize) -> Vec<Vec<usize>> {
    let all = set_partitions(n);
    all[rng.gen_range(0..all.len())].clone()
}

/// A chain of `len` non-trivial contexts over a random basis, each a strict
/// coarsening of the previous one.
pub fn random_chain(rng: &mut impl Rng, n: usize, len: usize) -> Vec<Context> {
    assert!(len < n, "a chain of {len} non-trivial contexts needs dimension > {len}");
    let basis = random_basis(rng, n);
    let mut blocks: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
    let mut out = vec![context_from_partition(&basis, &blocks)];
    while out.len() < len {
        blocks.shuffle(rng);
        let a = blocks.pop().unwrap();
        blocks[0].extend(a);
        blocks[0].sort();
        out.push(context_from_partition(&basis, &blocks));
    }
    out
}

pub fn poset(contexts: Vec<Context>) -> ContextPoset {
    ContextPoset::build(contexts, PosetOptions::default(), EPS).unwrap()
}

/// Two maximal contexts sharing one basis vector plus a coarsening of each:
/// a poset with non-trivial meets.
pub fn overlapping_poset(rng: &mut impl Rng, n: usize) -> ContextPoset {
    let a = random_basis(rng, n);
    let rest = random_basis(rng, n - 1);
    // rotate a[1..] by the unitary `rest`
    let b: Vec<Vec<C64>> = std::iter::once(a[0].clone())
        .chain(rest.iter().map(|coeffs| {
            let mut v = vec![C64::new(0.0, 0.0); n];
            for (k, w) in coeffs.iter().enumerate() {
                for i in 0..n {
                    v[i] += w * a[k + 1][i];
                }
            }
            v
        }))
        .collect();
    let fine_a = context_from_partition(&a, &(0..n).map(|i| vec![i]).collect::<Vec<_>>());
    let fine_b = context_from_partition(&b, &(0..n).map(|i| vec![i]).collect::<Vec<_>>());
    let mut ctxs = vec![fine_a, fine_b];
    if n >= 3 {
        ctxs.push(context_from_partition(&a, &[vec![0, 1], (2..n).collect()]));
    }
    poset(ctxs)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `P ⪯ Q` for projections, tested as `QP = P`.
pub fn proj_leq(p: &CMatrix, q: &CMatrix, tol: f64) -> bool {
    max_abs(&(q * p - p)) <= tol
}

/// All atom-sum projections of a context, indexed by subset mask.
pub fn atom_sums(ctx: &Context) -> Vec<CMatrix> {
    let n = ctx.dim();
    (0u64..1 << ctx.len())
        .map(|mask| {
            let mut m = CMatrix::zeros(n, n);
            for (i, a) in ctx.atoms().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    m += a.matrix();
                }
            }
            m
        })
        .collect()
}

/// Smallest projection of `ctx` above `p`, as the meet (intersection) of all
/// atom subsets whose projection dominates `p`.
pub fn brute_outer(p: &Projection, ctx: &Context) -> AtomSet {
    let sums = atom_sums(ctx);
    let mut acc = AtomSet::full(ctx.len());
    for (mask, q) in sums.iter().enumerate() {
        if proj_leq(p.matrix(), q, 1e-7) {
            acc = acc.intersection(AtomSet(mask as u64));
        }
    }
    acc
}

/// Largest projection of `ctx` below `p`, as the join (union) of all atom
/// subsets dominated by `p`.
pub fn brute_inner(p: &Projection, ctx: &Context) -> AtomSet {
    let sums = atom_sums(ctx);
    let mut acc = AtomSet::EMPTY;
    for (mask, q) in sums.iter().enumerate() {
        if proj_leq(q, p.matrix(), 1e-7) {
            acc = acc.union(AtomSet(mask as u64));
        }
    }
    acc
}

/// Eigenvalues via nalgebra's own Hermitian solver.
pub fn oracle_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = DMatrix::clone(m).symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

pub fn oracle_min_eigenvalue(m: &CMatrix) -> f64 {
    oracle_eigenvalues(m)[0]
}

/// Projection onto the range of a positive semidefinite matrix.
pub fn support(m: &CMatrix, tol: f64) -> CMatrix {
    let e = DMatrix::clone(m).symmetric_eigen();
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for (k, &x) in e.eigenvalues.iter().enumerate() {
        if x > tol {
            let col = e.eigenvectors.column(k);
            out += col * col.adjoint();
        }
    }
    out
}

/// `P ∨ Q` as the support of `P + Q`.
pub fn proj_join(p: &Projection, q: &Projection) -> Projection {
    Projection::new(support(&(p.matrix() + q.matrix()), 1e-8), 1e-7).unwrap()
}

/// `P ∧ Q = 1 − (P⊥ ∨ Q⊥)`.
pub fn proj_meet(p: &Projection, q: &Projection) -> Projection {
    proj_join(&p.complement(), &q.complement()).complement()
}
