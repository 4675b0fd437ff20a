//! Shared generators and oracles for the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use hypercohom_core::griffiths::{make_form, reduce_with_lift, split_numerator, FormSum};
use hypercohom_core::jacobian::JacobianError;
use hypercohom_core::linalg::{kernel_basis, QMatrix, Scalar};
use hypercohom_core::poly::{monomial_basis, GradedPoly};
use hypercohom_core::specseq::{CochainComplex, FilteredComplex};
use hypercohom_core::{build_context, reduce_once, HypersurfaceContext};
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Scalar {
    let num: i64 = rng.gen_range(-5..=5);
    let den: i64 = rng.gen_range(1..=3);
    Scalar::new(num.into(), den.into())
}

pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, degree: i64, density: f64) -> GradedPoly {
    if degree < 0 {
        return GradedPoly::zero(nvars, degree as i32);
    }
    let mut terms = Vec::new();
    for m in monomial_basis(nvars, degree as u32) {
        if rng.gen_bool(density) {
            terms.push((small_rational(rng), m));
        }
    }
    GradedPoly::from_terms(nvars, degree as i32, terms).unwrap()
}

/// Fermat plus a few random integer-coefficient monomials, retried until the
/// smoothness check passes.
pub fn random_smooth<R: Rng>(rng: &mut R, n: usize, d: u32) -> Arc<HypersurfaceContext> {
    let nvars = n + 2;
    let basis = monomial_basis(nvars, d);
    loop {
        let mut f = GradedPoly::fermat(nvars, d);
        for _ in 0..rng.gen_range(2..=5) {
            let m = basis.choose(rng).unwrap().clone();
            let c: i64 = rng.gen_range(-3..=3);
            let t = GradedPoly::term(Scalar::from_integer(c.into()), m);
            f = f.add(&t).unwrap();
        }
        if f == GradedPoly::fermat(nvars, d) {
            continue;
        }
        match build_context(n, f) {
            Ok(ctx) => return ctx,
            Err(JacobianError::SingularHypersurface { .. }) => continue,
            Err(e) => panic!("unexpected error: {e}"),
        }
    }
}

/// Random sum over pole orders `1..=n+2`, each present with probability ~2/3.
pub fn random_form_sum<R: Rng>(rng: &mut R, ctx: &Arc<HypersurfaceContext>, density: f64) -> FormSum {
    let mut s = FormSum::new(ctx);
    for k in 1..=ctx.n() + 2 {
        let deg = ctx.numerator_degree(k);
        if deg < 0 || rng.gen_bool(0.33) {
            continue;
        }
        let a = random_poly(rng, ctx.nvars(), deg, density);
        s.push(&make_form(ctx, a, k).unwrap()).unwrap();
    }
    s
}

/// Reduces J-parts at randomly chosen pole orders until every numerator is
/// canonical, then returns the numerators by pole order.
pub fn reduce_in_random_order<R: Rng>(rng: &mut R, s: &FormSum) -> HashMap<usize, GradedPoly> {
    let ctx = s.ctx().clone();
    let mut current = s.clone();
    loop {
        let reducible: Vec<usize> = current
            .forms()
            .iter()
            .filter(|f| !split_numerator(&ctx, f.numerator()).1.is_zero())
            .map(|f| f.pole_order())
            .collect();
        let Some(&j) = reducible.choose(rng) else { break };
        let a = current.numerator(j).unwrap().clone();
        let (rep, rest) = split_numerator(&ctx, &a);
        let lowered = reduce_once(&make_form(&ctx, rest, j).unwrap()).unwrap();
        let mut next = FormSum::new(&ctx);
        for f in current.forms() {
            if f.pole_order() != j {
                next.push(&f).unwrap();
            }
        }
        next.push(&make_form(&ctx, rep, j).unwrap()).unwrap();
        next.push(&lowered).unwrap();
        current = next;
    }
    current
        .forms()
        .into_iter()
        .map(|f| (f.pole_order(), f.numerator().clone()))
        .collect()
}

/// Random element of the kernel of the degree-`e` membership system.
pub fn random_syzygy<R: Rng>(rng: &mut R, ctx: &HypersurfaceContext, e: i64) -> Vec<Scalar> {
    type KernelCache = HashMap<(String, i64), Arc<(usize, Vec<Vec<Scalar>>)>>;
    thread_local! {
        static KERNELS: std::cell::RefCell<KernelCache> = Default::default();
    }
    // f determines the context, and keying by it survives reallocation
    let key = (ctx.f().to_string(), e);
    let cached = KERNELS.with(|k| k.borrow().get(&key).cloned());
    let entry = match cached {
        Some(v) => v,
        None => {
            let m = ctx.membership_matrix(e);
            let v = Arc::new((m.cols(), kernel_basis(&m)));
            KERNELS.with(|k| k.borrow_mut().insert(key, Arc::clone(&v)));
            v
        }
    };
    let (cols, kernel) = &*entry;
    let mut v = vec![Scalar::zero(); *cols];
    for k in kernel {
        let c = small_rational(rng);
        for (x, y) in v.iter_mut().zip(k) {
            *x += &c * y;
        }
    }
    v
}

/// Downward sweep like `normal_form`, but every lowering step uses the
/// canonical lift plus a random syzygy.
pub fn normal_form_with_perturbed_lifts<R: Rng>(rng: &mut R, s: &FormSum) -> HashMap<usize, GradedPoly> {
    let ctx = s.ctx().clone();
    let mut pending: std::collections::BTreeMap<usize, GradedPoly> =
        s.forms().into_iter().map(|f| (f.pole_order(), f.numerator().clone())).collect();
    let mut out = HashMap::new();
    while let Some((j, a)) = pending.pop_last() {
        let (rep, rest) = split_numerator(&ctx, &a);
        if !rep.is_zero() {
            out.insert(j, rep);
        }
        if rest.is_zero() {
            continue;
        }
        let e = ctx.numerator_degree(j);
        let lift = ctx.membership_lift(&rest).expect("J-part lifts");
        let syz = ctx.lift_from_vector(e, &random_syzygy(rng, &ctx, e));
        let lift: Vec<GradedPoly> = lift.iter().zip(&syz).map(|(x, y)| x.add(y).unwrap()).collect();
        let lowered = reduce_with_lift(&make_form(&ctx, rest, j).unwrap(), &lift).unwrap();
        let merged = match pending.remove(&(j - 1)) {
            Some(prev) => prev.add(lowered.numerator()).unwrap(),
            None => lowered.numerator().clone(),
        };
        if !merged.is_zero() {
            pending.insert(j - 1, merged);
        }
    }
    out
}

// ---------------------------------------------------------------- modular oracle

pub const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_611_686_018_427_387_847, 9_223_372_036_854_775_783];

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

/// Rank of an integer matrix modulo the prime `p`.
pub fn rank_mod_p(rows: usize, cols: usize, entries: &[i64], p: u64) -> usize {
    // all oracle primes are below 2^63, so the signed reduction is exact
    let mut a: Vec<u64> = entries.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + c] != 0) else { continue };
        for j in 0..cols {
            a.swap(piv * cols + j, rank * cols + j);
        }
        let inv = powmod(a[rank * cols + c], p - 2, p);
        for r in 0..rows {
            if r == rank || a[r * cols + c] == 0 {
                continue;
            }
            let f = mulmod(a[r * cols + c], inv, p);
            for j in 0..cols {
                let sub = mulmod(f, a[rank * cols + j], p);
                a[r * cols + j] = (a[r * cols + j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

pub fn to_i64_entries(m: &QMatrix) -> Vec<i64> {
    m.entries()
        .iter()
        .map(|x| {
            assert!(x.is_integer());
            x.to_integer().to_i64().unwrap()
        })
        .collect()
}

// ---------------------------------------------------------------- filtered complexes

fn random_int_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> QMatrix {
    let data: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-2..=2)).collect();
    QMatrix::from_i64(rows, cols, &data)
}

fn span_basis(m: &QMatrix) -> QMatrix {
    hypercohom_core::linalg::column_basis(m)
}

/// Random bounded complex with `d∘d = 0`: each differential factors through
/// the annihilator of the previous image.
pub fn random_complex<R: Rng>(rng: &mut R, max_len: usize, max_dim: usize) -> CochainComplex {
    let len = rng.gen_range(1..=max_len);
    let start: i64 = rng.gen_range(-1..=1);
    let dims: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut diffs: Vec<QMatrix> = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let (src, dst) = (dims[i], dims[i + 1]);
        let d = if i == 0 {
            let inner = rng.gen_range(0..=src.min(dst));
            random_int_matrix(rng, dst, inner)
                .mul(&random_int_matrix(rng, inner, src))
                .unwrap()
        } else {
            // rows of `ann` span the functionals vanishing on im d_{i-1}
            let prev = &diffs[i - 1];
            let ann_vecs = kernel_basis(&prev.transpose());
            let ann = QMatrix::from_columns(src, &ann_vecs).unwrap().transpose();
            let r = random_int_matrix(rng, dst, ann.rows());
            if ann.rows() == 0 {
                QMatrix::zeros(dst, src)
            } else {
                r.mul(&ann).unwrap()
            }
        };
        diffs.push(d);
    }
    CochainComplex::new(start, dims, diffs).unwrap()
}

/// Random decreasing filtration by subcomplexes with `levels` levels
/// (`F^0` is the whole complex). Also returns the bases, indexed by degree
/// and then level.
pub fn random_filtration<R: Rng>(
    rng: &mut R,
    c: &CochainComplex,
    levels: usize,
) -> (FilteredComplex, Vec<Vec<QMatrix>>) {
    let (a, b) = c.degrees();
    let n = c.len();
    // Build from the innermost level outward; each level is the previous one
    // plus random vectors, closed under d.
    let mut stack: Vec<Vec<QMatrix>> = Vec::new();
    let mut current: Vec<QMatrix> = (0..n).map(|i| QMatrix::zeros(c.dims()[i], 0)).collect();
    for _ in 1..levels {
        let mut next = Vec::with_capacity(n);
        for (i, m) in (a..=b).enumerate() {
            let dim = c.dims()[i];
            let extra_count = if dim == 0 { 0 } else { rng.gen_range(0..=dim.min(2)) };
            let extra = random_int_matrix(rng, dim, extra_count);
            let mut gens = current[i].hstack(&extra).unwrap();
            if i > 0 {
                let pushed = c.d(m - 1).mul(&next[i - 1]).unwrap();
                gens = gens.hstack(&pushed).unwrap();
            }
            next.push(span_basis(&gens));
        }
        stack.push(next.clone());
        current = next;
    }
    stack.reverse();
    let levels_per_degree: Vec<Vec<QMatrix>> = (0..n)
        .map(|i| {
            let mut row = vec![QMatrix::identity(c.dims()[i])];
            row.extend(stack.iter().map(|lvl| lvl[i].clone()));
            row
        })
        .collect();
    let fc = FilteredComplex::new(c.clone(), levels_per_degree.clone()).unwrap();
    (fc, levels_per_degree)
}
