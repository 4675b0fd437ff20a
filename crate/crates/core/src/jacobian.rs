//! The Jacobian ideal `J = (∂f/∂x0, ..., ∂f/∂x_{n+1})` of a projective
//! hypersurface and its graded quotients `(R/J)_e`.
//!
//! Each graded piece `J_e` is spanned by the products `m * ∂_i f` with `m`
//! running over monomials of degree `e - d + 1`. These spanning vectors are
//! eliminated, in the fixed order (variable-major, then monomials largest
//! first), into a sparse echelon basis whose columns are the degree-`e`
//! monomials in graded-lex order. The non-pivot monomials are the canonical
//! basis of `(R/J)_e`; reducing a polynomial against the echelon rows yields
//! its canonical coset representative.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{QMatrix, Scalar};
use crate::poly::{monomial_basis, GradedPoly, Monomial};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JacobianError {
    #[error("singular hypersurface: (R/J) is nonzero in degree {degree}")]
    SingularHypersurface { degree: i64 },
    #[error("degree too small: f must have degree at least 1")]
    DegreeTooSmall,
    #[error("dimension n must be at least 1, got {0}")]
    DimensionTooSmall(usize),
    #[error("polynomial has {got} variables, expected n + 2 = {expected}")]
    WrongVariableCount { expected: usize, got: usize },
}

type SparseVec = BTreeMap<usize, Scalar>;

/// One echelon row, remembered as
/// `row = scale * (generator − Σ factor * rows[s])` over earlier rows `s`,
/// so that lifts can be recovered by back-substitution.
#[derive(Debug, Clone)]
struct EchelonRow {
    /// Sorted by column; the first entry is the pivot and equals one.
    entries: Vec<(usize, Scalar)>,
    generator: usize,
    scale: Scalar,
    steps: Vec<(usize, Scalar)>,
}

impl EchelonRow {
    fn pivot(&self) -> usize {
        self.entries[0].0
    }
}


/// Decomposition of `R_e` into the pivot monomials of `J_e` and a canonical
/// complement spanning `(R/J)_e`.
#[derive(Debug)]
pub struct GradedPiece {
    degree: i64,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `(variable, multiplier)` for every spanning generator, in column order
    /// of the membership system.
    generators: Vec<(usize, Monomial)>,
    rows: Vec<EchelonRow>,
    pivot_row: Vec<Option<usize>>,
    coset_basis: Vec<usize>,
}

impl GradedPiece {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Basis of `R_e`, largest monomial first.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.coset_basis.len()
    }

    pub fn pivot_monomials(&self) -> Vec<Monomial> {
        let mut cols: Vec<usize> = self.rows.iter().map(EchelonRow::pivot).collect();
        cols.sort_unstable();
        cols.into_iter().map(|c| self.monomials[c].clone()).collect()
    }

    /// Non-pivot monomials; a basis of `(R/J)_e`.
    pub fn coset_basis(&self) -> Vec<Monomial> {
        self.coset_basis.iter().map(|&c| self.monomials[c].clone()).collect()
    }

    pub fn generators(&self) -> &[(usize, Monomial)] {
        &self.generators
    }

    fn to_sparse(&self, p: &GradedPoly) -> SparseVec {
        p.terms()
            .map(|(m, c)| (self.index[m], c.clone()))
            .collect()
    }

    fn sparse_to_poly(&self, nvars: usize, v: &SparseVec) -> GradedPoly {
        let mut p = GradedPoly::zero(nvars, self.degree as i32);
        for (&c, x) in v {
            p.add_term(self.monomials[c].clone(), x.clone());
        }
        p
    }
}

fn axpy(target: &mut SparseVec, factor: &Scalar, src: impl IntoIterator<Item = (usize, Scalar)>) {
    use std::collections::btree_map::Entry;
    for (c, x) in src {
        let delta = factor * x;
        match target.entry(c) {
            Entry::Vacant(v) => {
                v.insert(-delta);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() -= delta;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

/// Smooth degree-`d` hypersurface `Y = {f = 0}` in `P^(n+1)` with its
/// Jacobian data. Graded pieces are computed on demand and cached.
#[derive(Debug)]
pub struct HypersurfaceContext {
    n: usize,
    d: u32,
    f: GradedPoly,
    partials: Vec<GradedPoly>,
    cache: Mutex<HashMap<i64, Arc<GradedPiece>>>,
}

/// Builds and certifies a context; rejects singular `f`.
pub fn build_context(n: usize, f: GradedPoly) -> Result<Arc<HypersurfaceContext>, JacobianError> {
    HypersurfaceContext::new(n, f).map(Arc::new)
}

impl HypersurfaceContext {
    pub fn new(n: usize, f: GradedPoly) -> Result<Self, JacobianError> {
        if n < 1 {
            return Err(JacobianError::DimensionTooSmall(n));
        }
        if f.nvars() != n + 2 {
            return Err(JacobianError::WrongVariableCount {
                expected: n + 2,
                got: f.nvars(),
            });
        }
        if f.degree() < 1 {
            return Err(JacobianError::DegreeTooSmall);
        }
        let d = f.degree() as u32;
        let partials: Vec<GradedPoly> = (0..n + 2).map(|i| f.partial(i)).collect();
        let ctx = HypersurfaceContext {
            n,
            d,
            f,
            partials,
            cache: Mutex::new(HashMap::new()),
        };
        debug_assert!(ctx.euler_identity_holds());
        // A linear form is smooth iff it is nonzero; otherwise (R/J) must
        // vanish one degree past the socle.
        if ctx.f.is_zero() {
            return Err(JacobianError::SingularHypersurface { degree: 0 });
        }
        let top = ctx.socle_degree() + 1;
        if top >= 0 && ctx.graded_piece(top).quotient_dim() != 0 {
            return Err(JacobianError::SingularHypersurface { degree: top });
        }
        Ok(ctx)
    }

    /// Fermat hypersurface `x0^d + ... + x_{n+1}^d`.
    pub fn fermat(n: usize, d: u32) -> Result<Self, JacobianError> {
        Self::new(n, GradedPoly::fermat(n + 2, d))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn nvars(&self) -> usize {
        self.n + 2
    }

    pub fn f(&self) -> &GradedPoly {
        &self.f
    }

    pub fn jacobian_generators(&self) -> &[GradedPoly] {
        &self.partials
    }

    /// `σ = (n + 2)(d − 2)`, the top degree of `R/J`.
    pub fn socle_degree(&self) -> i64 {
        (self.n as i64 + 2) * (self.d as i64 - 2)
    }

    /// Degree of the numerator of a top form with pole order `k`:
    /// `k d − n − 2`.
    pub fn numerator_degree(&self, k: usize) -> i64 {
        k as i64 * self.d as i64 - self.n as i64 - 2
    }

    pub fn euler_identity_holds(&self) -> bool {
        let mut acc = GradedPoly::zero(self.nvars(), self.f.degree());
        for (i, p) in self.partials.iter().enumerate() {
            let term = GradedPoly::var(self.nvars(), i).mul(p).expect("same ring");
            acc = acc.add(&term).expect("same degree");
        }
        acc == self.f.scale(&Scalar::from_integer(self.d.into()))
    }

    /// Cached decomposition of `R_e`; `e` must be non-negative.
    pub fn graded_piece(&self, e: i64) -> Arc<GradedPiece> {
        assert!(e >= 0, "graded_piece: negative degree {e}");
        if let Some(p) = self.cache.lock().expect("cache poisoned").get(&e) {
            return Arc::clone(p);
        }
        let piece = Arc::new(self.compute_piece(e));
        let mut cache = self.cache.lock().expect("cache poisoned");
        Arc::clone(cache.entry(e).or_insert(piece))
    }

    fn generator_vectors(&self, e: i64, monomials_index: &HashMap<Monomial, usize>) -> (Vec<(usize, Monomial)>, Vec<SparseVec>) {
        let mult_deg = e - self.d as i64 + 1;
        let mut gens = Vec::new();
        let mut vecs = Vec::new();
        if mult_deg < 0 {
            return (gens, vecs);
        }
        let multipliers = monomial_basis(self.nvars(), mult_deg as u32);
        for (i, p) in self.partials.iter().enumerate() {
            for m in &multipliers {
                let v: SparseVec = p
                    .mul_monomial(m)
                    .terms()
                    .map(|(mm, c)| (monomials_index[mm], c.clone()))
                    .collect();
                gens.push((i, m.clone()));
                vecs.push(v);
            }
        }
        (gens, vecs)
    }

    fn eliminate(ncols: usize, vecs: Vec<SparseVec>) -> (Vec<EchelonRow>, Vec<Option<usize>>) {
        let mut rows: Vec<EchelonRow> = Vec::new();
        let mut pivot_row: Vec<Option<usize>> = vec![None; ncols];
        for (gi, mut v) in vecs.into_iter().enumerate() {
            let mut steps = Vec::new();
            // Clear every pivot column in increasing order; the first
            // surviving column without a pivot becomes the new leading entry.
            let mut lead = None;
            let mut cursor = 0usize;
            while let Some((&c, _)) = v.range(cursor..).next() {
                match pivot_row[c] {
                    Some(r) => {
                        let factor = v[&c].clone();
                        axpy(&mut v, &factor, rows[r].entries.iter().cloned());
                        steps.push((r, factor));
                    }
                    None => {
                        if lead.is_none() {
                            lead = Some(c);
                        }
                        cursor = c + 1;
                    }
                }
            }
            let Some(lead) = lead else { continue };
            let inv = v[&lead].recip();
            let entries: Vec<(usize, Scalar)> = v.into_iter().map(|(c, x)| (c, x * &inv)).collect();
            pivot_row[lead] = Some(rows.len());
            rows.push(EchelonRow {
                entries,
                generator: gi,
                scale: inv,
                steps,
            });
        }
        (rows, pivot_row)
    }

    fn compute_piece(&self, e: i64) -> GradedPiece {
        let monomials = monomial_basis(self.nvars(), e as u32);
        let index: HashMap<Monomial, usize> =
            monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let (generators, vecs) = self.generator_vectors(e, &index);
        let (rows, pivot_row) = Self::eliminate(monomials.len(), vecs);
        let coset_basis = (0..monomials.len()).filter(|&c| pivot_row[c].is_none()).collect();
        GradedPiece {
            degree: e,
            monomials,
            index,
            generators,
            rows,
            pivot_row,
            coset_basis,
        }
    }

    /// `dim (R/J)_e`.
    pub fn hilbert_function(&self, e: i64) -> usize {
        if e < 0 {
            return 0;
        }
        // Smoothness was certified at construction, so J_e = R_e past the socle.
        if e > self.socle_degree() {
            return 0;
        }
        self.graded_piece(e).quotient_dim()
    }

    /// Unique representative of `A + J` supported on the coset basis.
    pub fn canonical_rep(&self, a: &GradedPoly) -> GradedPoly {
        let e = a.degree() as i64;
        if a.is_zero() || e < 0 {
            return GradedPoly::zero(self.nvars(), a.degree());
        }
        let piece = self.graded_piece(e);
        let mut v = piece.to_sparse(a);
        let mut rem = SparseVec::new();
        while let Some((c, x)) = v.pop_first() {
            match piece.pivot_row[c] {
                Some(r) => {
                    let row = &piece.rows[r];
                    axpy(&mut v, &x, row.entries[1..].iter().cloned());
                }
                None => {
                    rem.insert(c, x);
                }
            }
        }
        piece.sparse_to_poly(self.nvars(), &rem)
    }

    /// Polynomials `B_0, ..., B_{n+1}` of degree `e − d + 1` with
    /// `Σ B_i ∂_i f = A`, or `None` when `A ∉ J`. The lift is the particular
    /// solution supported on the pivot generators of the membership system.
    pub fn membership_lift(&self, a: &GradedPoly) -> Option<Vec<GradedPoly>> {
        let e = a.degree() as i64;
        let lift_deg = a.degree() - self.d as i32 + 1;
        let zero_lift = || vec![GradedPoly::zero(self.nvars(), lift_deg); self.nvars()];
        if a.is_zero() {
            return Some(zero_lift());
        }
        if e < 0 {
            return None;
        }
        let piece = self.graded_piece(e);
        let mut v = piece.to_sparse(a);
        // a = Σ y_r rows[r]
        let mut y: Vec<Scalar> = vec![Scalar::zero(); piece.rows.len()];
        while let Some((c, x)) = v.pop_first() {
            let r = piece.pivot_row[c]?;
            axpy(&mut v, &x, piece.rows[r].entries[1..].iter().cloned());
            y[r] = x;
        }
        // Unwind the elimination, latest row first.
        let mut lift = zero_lift();
        for r in (0..piece.rows.len()).rev() {
            if y[r].is_zero() {
                continue;
            }
            let row = &piece.rows[r];
            let w = &y[r] * &row.scale;
            for (s, factor) in &row.steps {
                y[*s] -= &w * factor;
            }
            let (var, m) = &piece.generators[row.generator];
            lift[*var].add_term(m.clone(), w);
        }
        assert!(
            self.apply_lift(&lift) == *a,
            "membership_lift: re-substitution failed"
        );
        Some(lift)
    }

    /// `Σ B_i ∂_i f`.
    pub fn apply_lift(&self, lift: &[GradedPoly]) -> GradedPoly {
        assert_eq!(lift.len(), self.nvars());
        let mut acc = GradedPoly::zero(self.nvars(), lift[0].degree() + self.d as i32 - 1);
        for (b, p) in lift.iter().zip(&self.partials) {
            acc = acc.add(&b.mul(p).expect("same ring")).expect("same degree");
        }
        acc
    }

    /// Dense membership system of degree `e`: rows are the degree-`e`
    /// monomials, columns the generators `m * ∂_i f` in elimination order.
    pub fn membership_matrix(&self, e: i64) -> QMatrix {
        let piece = self.graded_piece(e);
        let (_, vecs) = self.generator_vectors(e, &piece.index);
        let mut m = QMatrix::zeros(piece.monomials.len(), vecs.len());
        for (j, v) in vecs.iter().enumerate() {
            for (&i, x) in v {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    /// Converts a coefficient vector over the degree-`e` generators into the
    /// corresponding lift polynomials.
    pub fn lift_from_vector(&self, e: i64, x: &[Scalar]) -> Vec<GradedPoly> {
        let piece = self.graded_piece(e);
        assert_eq!(x.len(), piece.generators.len());
        let lift_deg = e as i32 - self.d as i32 + 1;
        let mut lift = vec![GradedPoly::zero(self.nvars(), lift_deg); self.nvars()];
        for ((var, m), c) in piece.generators.iter().zip(x) {
            lift[*var].add_term(m.clone(), c.clone());
        }
        lift
    }
}

/// Coefficients of `(1 + t + ... + t^(d−2))^(n+2)` up to degree
/// `σ = (n+2)(d−2)`: the Hilbert series of a complete intersection of
/// `n + 2` forms of degree `d − 1`.
pub fn hilbert_series_oracle(n: usize, d: u32) -> Vec<u64> {
    if d < 2 {
        return Vec::new();
    }
    let factor = vec![1u64; d as usize - 1];
    let mut acc = vec![1u64];
    for _ in 0..n + 2 {
        let mut next = vec![0u64; acc.len() + factor.len() - 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    acc
}
