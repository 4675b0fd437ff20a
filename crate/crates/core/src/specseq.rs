//! Spectral sequences of finite filtered cochain complexes over `Q`.
//!
//! A filtration is a decreasing chain `F^0 = C ⊇ F^1 ⊇ ... ⊇ F^(L−1)` in each
//! degree, given by column-span matrices; `F^p = 0` for `p ≥ L`. Pages are
//! computed directly from
//!
//! ```text
//! Z_r^p   = F^p ∩ d^(−1)(F^(p+r))
//! E_r^p   = Z_r^p / (Z_(r−1)^(p+1) + d Z_(r−1)^(p−r+1))
//! ```
//!
//! with explicit representatives, so every page differential is an honest
//! matrix that can be composed and checked.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::linalg::{column_basis, kernel_basis, rref, solve, QMatrix, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecSeqError {
    #[error("invalid complex: {0}")]
    Shape(String),
    #[error("d^{degree} followed by d^{next} is not zero", next = degree + 1)]
    NotAComplex { degree: i64 },
    #[error("filtration in degree {degree}: level {level} is not contained in level {prev}", prev = level - 1)]
    NotNested { degree: i64, level: usize },
    #[error("filtration level {level} is not preserved by d^{degree}")]
    NotCompatible { degree: i64, level: usize },
    #[error("filtration in degree {degree} is not exhaustive: F^0 has dimension {got} < {dim}")]
    NotExhaustive { degree: i64, got: usize, dim: usize },
    #[error("two-term sequence needs exactly two filtration levels, found {0}")]
    NotTwoLevels(usize),
    #[error("malformed JSON: {0}")]
    Json(String),
}

/// Bounded cochain complex `C^a → ... → C^b` of finite-dimensional spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    start: i64,
    dims: Vec<usize>,
    /// `differentials[i]` maps degree `start + i` to `start + i + 1`.
    differentials: Vec<QMatrix>,
}

impl CochainComplex {
    pub fn new(start: i64, dims: Vec<usize>, differentials: Vec<QMatrix>) -> Result<Self, SpecSeqError> {
        if dims.is_empty() {
            return Err(SpecSeqError::Shape("complex has no degrees".into()));
        }
        if differentials.len() + 1 != dims.len() {
            return Err(SpecSeqError::Shape(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len() - 1,
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.rows() != dims[i + 1] || d.cols() != dims[i] {
                return Err(SpecSeqError::Shape(format!(
                    "d^{} is {}x{}, expected {}x{}",
                    start + i as i64,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        for i in 0..differentials.len().saturating_sub(1) {
            if !differentials[i + 1].mul(&differentials[i]).expect("shapes checked").is_zero() {
                return Err(SpecSeqError::NotAComplex {
                    degree: start + i as i64,
                });
            }
        }
        Ok(CochainComplex {
            start,
            dims,
            differentials,
        })
    }

    pub fn degrees(&self) -> (i64, i64) {
        (self.start, self.start + self.dims.len() as i64 - 1)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[QMatrix] {
        &self.differentials
    }

    fn idx(&self, m: i64) -> Option<usize> {
        let i = m - self.start;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    pub fn dim(&self, m: i64) -> usize {
        self.idx(m).map_or(0, |i| self.dims[i])
    }

    /// `d^m : C^m → C^(m+1)`; the zero map at the ends.
    pub fn d(&self, m: i64) -> QMatrix {
        match self.idx(m) {
            Some(i) if i < self.differentials.len() => self.differentials[i].clone(),
            _ => QMatrix::zeros(self.dim(m + 1), self.dim(m)),
        }
    }

    /// `dim H^m`, computed directly from ranks.
    pub fn cohomology_dim(&self, m: i64) -> usize {
        let dm = self.d(m);
        let kernel = self.dim(m) - dm.rank();
        kernel - self.d(m - 1).rank()
    }
}

/// Column-span representation of a subspace of `Q^ambient`; columns are
/// kept linearly independent.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Subspace {
    basis: QMatrix,
}

impl Subspace {
    fn zero(ambient: usize) -> Self {
        Subspace {
            basis: QMatrix::zeros(ambient, 0),
        }
    }

    fn full(ambient: usize) -> Self {
        Subspace {
            basis: QMatrix::identity(ambient),
        }
    }

    fn span(m: &QMatrix) -> Self {
        Subspace {
            basis: column_basis(m),
        }
    }

    fn dim(&self) -> usize {
        self.basis.cols()
    }

    fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.hstack(&other.basis).expect("same ambient"))
    }

    fn contains(&self, v: &[Scalar]) -> bool {
        solve(&self.basis, v).expect("same ambient").is_some()
    }

    fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.columns().iter().all(|c| self.contains(c))
    }

    /// `{ x ∈ self : map x ∈ target }`.
    fn preimage_within(&self, map: &QMatrix, target: &Subspace) -> Subspace {
        let image = map.mul(&self.basis).expect("shapes");
        let mut neg_target = target.basis.clone();
        for i in 0..neg_target.rows() {
            for j in 0..neg_target.cols() {
                let v = -neg_target[(i, j)].clone();
                neg_target[(i, j)] = v;
            }
        }
        let system = image.hstack(&neg_target).expect("same ambient");
        let kernel = kernel_basis(&system);
        let coords: Vec<Vec<Scalar>> = kernel.into_iter().map(|v| v[..self.dim()].to_vec()).collect();
        let vectors = QMatrix::from_columns(self.dim(), &coords).expect("lengths");
        Subspace::span(&self.basis.mul(&vectors).expect("shapes"))
    }

    fn image(&self, map: &QMatrix) -> Subspace {
        Subspace::span(&map.mul(&self.basis).expect("shapes"))
    }

    /// Columns of `self` completing `sub ⊆ self` to a basis: representatives
    /// of `self / sub`.
    fn complement_of(&self, sub: &Subspace) -> QMatrix {
        let stacked = sub.basis.hstack(&self.basis).expect("same ambient");
        let red = rref(&stacked);
        let cols: Vec<usize> = red
            .pivot_columns
            .iter()
            .filter(|&&c| c >= sub.dim())
            .copied()
            .collect();
        stacked.select_columns(&cols)
    }
}

/// Cochain complex with a finite decreasing filtration by subcomplexes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilteredComplex {
    complex: CochainComplex,
    /// `levels[i][p]` spans `F^p` in degree `start + i`, for `p < L`.
    levels: Vec<Vec<QMatrix>>,
}

impl FilteredComplex {
    /// Validates nesting, compatibility with `d` and exhaustiveness.
    pub fn new(complex: CochainComplex, levels: Vec<Vec<QMatrix>>) -> Result<Self, SpecSeqError> {
        if levels.len() != complex.len() {
            return Err(SpecSeqError::Shape(format!(
                "filtration given for {} degrees, complex has {}",
                levels.len(),
                complex.len()
            )));
        }
        let nlevels = levels.first().map_or(0, Vec::len);
        if nlevels == 0 {
            return Err(SpecSeqError::Shape("filtration needs at least one level".into()));
        }
        if levels.iter().any(|l| l.len() != nlevels) {
            return Err(SpecSeqError::Shape("every degree needs the same number of filtration levels".into()));
        }
        let (a, _) = complex.degrees();
        let mut spans = Vec::with_capacity(levels.len());
        for (i, per_degree) in levels.iter().enumerate() {
            let m = a + i as i64;
            let dim = complex.dims[i];
            let mut row = Vec::with_capacity(nlevels);
            for (p, mat) in per_degree.iter().enumerate() {
                if mat.rows() != dim {
                    return Err(SpecSeqError::Shape(format!(
                        "filtration matrix F^{p} in degree {m} has {} rows, expected {dim}",
                        mat.rows()
                    )));
                }
                let s = Subspace::span(mat);
                if p == 0 && s.dim() != dim {
                    return Err(SpecSeqError::NotExhaustive { degree: m, got: s.dim(), dim });
                }
                if p > 0 && !Subspace::contains_space(&row[p - 1], &s) {
                    return Err(SpecSeqError::NotNested { degree: m, level: p });
                }
                row.push(s);
            }
            spans.push(row);
        }
        for i in 0..complex.len().saturating_sub(1) {
            let d = &complex.differentials[i];
            for p in 0..nlevels {
                let img = spans[i][p].image(d);
                if !spans[i + 1][p].contains_space(&img) {
                    return Err(SpecSeqError::NotCompatible {
                        degree: a + i as i64,
                        level: p,
                    });
                }
            }
        }
        let levels = spans
            .into_iter()
            .map(|row| row.into_iter().map(|s| s.basis).collect())
            .collect();
        Ok(FilteredComplex { complex, levels })
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn num_levels(&self) -> usize {
        self.levels[0].len()
    }

    fn filt(&self, p: i64, m: i64) -> Subspace {
        let dim = self.complex.dim(m);
        let Some(i) = self.complex.idx(m) else {
            return Subspace::zero(0);
        };
        if p <= 0 {
            Subspace::full(dim)
        } else if p as usize >= self.num_levels() {
            Subspace::zero(dim)
        } else {
            Subspace {
                basis: self.levels[i][p as usize].clone(),
            }
        }
    }

    /// `Z_r^p` in degree `m`; for `r ≤ 0` this is `F^p` itself.
    fn cycles(&self, r: i64, p: i64, m: i64) -> Subspace {
        let f = self.filt(p, m);
        if r <= 0 {
            return f;
        }
        f.preimage_within(&self.complex.d(m), &self.filt(p + r, m + 1))
    }

    fn boundaries(&self, r: i64, p: i64, m: i64) -> Subspace {
        let lower = self.cycles(r - 1, p + 1, m);
        let from_below = self.cycles(r - 1, p - r + 1, m - 1).image(&self.complex.d(m - 1));
        lower.sum(&from_below)
    }

    /// Page index past which every differential vanishes.
    pub fn stabilization_bound(&self) -> usize {
        self.num_levels() + self.complex.len() + 1
    }

    /// The page `E_r` with its differential `d_r`.
    pub fn page(&self, r: usize) -> SpectralPage {
        let (a, b) = self.complex.degrees();
        let r_i = r as i64;
        let mut reps: BTreeMap<(i64, i64), (QMatrix, Subspace)> = BTreeMap::new();
        for m in a..=b {
            for p in 0..self.num_levels() as i64 {
                let z = self.cycles(r_i, p, m);
                let den = self.boundaries(r_i, p, m);
                debug_assert!(z.contains_space(&den));
                let rep = z.complement_of(&den);
                reps.insert((p, m - p), (rep, den));
            }
        }
        let mut entries = BTreeMap::new();
        let mut differentials = Vec::new();
        for (&(p, q), (rep, _)) in &reps {
            entries.insert((p, q), rep.cols());
            let target = (p + r_i, q - r_i + 1);
            let m = p + q;
            let Some((t_rep, t_den)) = reps.get(&target) else {
                continue;
            };
            if rep.cols() == 0 || t_rep.cols() == 0 {
                continue;
            }
            let images = self.complex.d(m).mul(rep).expect("shapes");
            let system = t_rep.hstack(&t_den.basis).expect("same ambient");
            let mut mat = QMatrix::zeros(t_rep.cols(), rep.cols());
            for (j, y) in images.columns().iter().enumerate() {
                let c = solve(&system, y)
                    .expect("shapes")
                    .expect("d maps Z_r^p into Z_r^(p+r)");
                for i in 0..t_rep.cols() {
                    mat[(i, j)] = c[i].clone();
                }
            }
            differentials.push(PageDifferential {
                source: (p, q),
                target,
                matrix: mat,
            });
        }
        SpectralPage {
            r,
            entries,
            differentials,
        }
    }

    /// `E_∞`, i.e. the page at the stabilization bound.
    pub fn infinity_page(&self) -> SpectralPage {
        self.page(self.stabilization_bound())
    }

    /// Smallest `r ≥ 1` after which all differentials vanish.
    pub fn degeneration_page(&self) -> usize {
        let bound = self.stabilization_bound();
        let mut first_quiet = bound;
        for r in (1..=bound).rev() {
            if self.page(r).differentials_vanish() {
                first_quiet = r;
            } else {
                break;
            }
        }
        first_quiet
    }

    pub fn to_json(&self) -> Value {
        let (a, b) = self.complex.degrees();
        let diffs: Vec<Value> = self
            .complex
            .differentials
            .iter()
            .map(|d| Value::Array(d.entries().iter().map(|x| Value::String(x.to_string())).collect()))
            .collect();
        let filtration: Vec<Value> = self
            .levels
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|m| {
                            Value::Array(
                                m.columns()
                                    .iter()
                                    .map(|c| Value::Array(c.iter().map(|x| Value::String(x.to_string())).collect()))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect();
        json!({
            "degrees": [a, b],
            "dims": self.complex.dims,
            "differentials": diffs,
            "filtration": filtration,
        })
    }

    /// Parses the JSON layout produced by [`FilteredComplex::to_json`]:
    /// differentials row-major, filtration matrices as lists of columns,
    /// rationals as `"p/q"` strings.
    pub fn from_json(v: &Value) -> Result<Self, SpecSeqError> {
        let bad = |msg: &str| SpecSeqError::Json(msg.to_string());
        let degrees = v["degrees"].as_array().ok_or_else(|| bad("missing \"degrees\""))?;
        if degrees.len() != 2 {
            return Err(bad("\"degrees\" must be [a, b]"));
        }
        let a = degrees[0].as_i64().ok_or_else(|| bad("degree bound is not an integer"))?;
        let b = degrees[1].as_i64().ok_or_else(|| bad("degree bound is not an integer"))?;
        if b < a {
            return Err(bad("empty degree range"));
        }
        let dims: Vec<usize> = v["dims"]
            .as_array()
            .ok_or_else(|| bad("missing \"dims\""))?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("dimension is not a count")))
            .collect::<Result<_, _>>()?;
        if dims.len() as i64 != b - a + 1 {
            return Err(bad("\"dims\" length does not match the degree range"));
        }
        let diffs_json = v["differentials"].as_array().ok_or_else(|| bad("missing \"differentials\""))?;
        if diffs_json.len() + 1 != dims.len() {
            return Err(bad("wrong number of differentials"));
        }
        let mut diffs = Vec::new();
        for (i, d) in diffs_json.iter().enumerate() {
            let entries = parse_rational_list(d)?;
            diffs.push(
                QMatrix::from_entries(dims[i + 1], dims[i], entries)
                    .map_err(|e| SpecSeqError::Json(format!("d^{}: {e}", a + i as i64)))?,
            );
        }
        let filt_json = v["filtration"].as_array().ok_or_else(|| bad("missing \"filtration\""))?;
        if filt_json.len() != dims.len() {
            return Err(bad("\"filtration\" length does not match the degree range"));
        }
        let mut levels = Vec::new();
        for (i, row) in filt_json.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| bad("filtration entry must be a list of matrices"))?;
            let mut mats = Vec::new();
            for mat in row {
                let cols = mat.as_array().ok_or_else(|| bad("filtration matrix must be a list of columns"))?;
                let cols: Vec<Vec<Scalar>> = cols.iter().map(parse_rational_list).collect::<Result<_, _>>()?;
                mats.push(
                    QMatrix::from_columns(dims[i], &cols)
                        .map_err(|e| SpecSeqError::Json(format!("filtration in degree {}: {e}", a + i as i64)))?,
                );
            }
            levels.push(mats);
        }
        let complex = CochainComplex::new(a, dims, diffs)?;
        FilteredComplex::new(complex, levels)
    }
}

fn parse_rational_list(v: &Value) -> Result<Vec<Scalar>, SpecSeqError> {
    v.as_array()
        .ok_or_else(|| SpecSeqError::Json("expected a list of rationals".into()))?
        .iter()
        .map(parse_rational)
        .collect()
}

/// Accepts `"p/q"`, `"p"` or a JSON integer.
pub fn parse_rational(v: &Value) -> Result<Scalar, SpecSeqError> {
    if let Some(i) = v.as_i64() {
        return Ok(Scalar::from_integer(i.into()));
    }
    let s = v
        .as_str()
        .ok_or_else(|| SpecSeqError::Json(format!("not a rational: {v}")))?;
    let err = || SpecSeqError::Json(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: num_bigint::BigInt = num.parse().map_err(|_| err())?;
    let den: num_bigint::BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Scalar::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageDifferential {
    pub source: (i64, i64),
    pub target: (i64, i64),
    pub matrix: QMatrix,
}

/// `E_r^(p,q)` dimensions and the nonzero-shaped blocks of `d_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPage {
    pub r: usize,
    pub entries: BTreeMap<(i64, i64), usize>,
    pub differentials: Vec<PageDifferential>,
}

impl SpectralPage {
    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    /// `Σ_{p+q=m} dim E^(p,q)`.
    pub fn total_dim(&self, m: i64) -> usize {
        self.entries.iter().filter(|((p, q), _)| p + q == m).map(|(_, &d)| d).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.entries
            .iter()
            .map(|((p, q), &d)| if (p + q).rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    pub fn differentials_vanish(&self) -> bool {
        self.differentials.iter().all(|d| d.matrix.is_zero())
    }

    fn differential_from(&self, source: (i64, i64)) -> Option<&PageDifferential> {
        self.differentials.iter().find(|d| d.source == source)
    }

    /// `d_r ∘ d_r = 0` on every composable pair.
    pub fn differential_squares_to_zero(&self) -> bool {
        self.differentials.iter().all(|d1| match self.differential_from(d1.target) {
            Some(d2) => d2.matrix.mul(&d1.matrix).expect("composable").is_zero(),
            None => true,
        })
    }

    /// `dim E_(r+1)^(p,q) = dim ker d_r − dim im d_r` at `(p, q)`.
    pub fn next_dim(&self, p: i64, q: i64) -> usize {
        let r = self.r as i64;
        let out_rank = self.differential_from((p, q)).map_or(0, |d| d.matrix.rank());
        let in_rank = self
            .differential_from((p - r, q + r - 1))
            .map_or(0, |d| d.matrix.rank());
        self.dim(p, q) - out_rank - in_rank
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|(&(p, q), &d)| json!({"p": p, "q": q, "dim": d}))
            .collect();
        let diffs: Vec<Value> = self
            .differentials
            .iter()
            .map(|d| {
                json!({
                    "source": [d.source.0, d.source.1],
                    "target": [d.target.0, d.target.1],
                    "rank": d.matrix.rank(),
                })
            })
            .collect();
        json!({"r": self.r, "entries": entries, "differentials": diffs})
    }
}

pub fn page(fc: &FilteredComplex, r: usize) -> SpectralPage {
    fc.page(r)
}

pub fn degeneration_page(fc: &FilteredComplex) -> usize {
    fc.degeneration_page()
}

/// Which truncation to use as the single proper filtration step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// `τ≤p`: everything below `p`, cocycles at `p`, nothing above.
    Canonical(i64),
    /// `σ≥q`: nothing below `q`, everything from `q` on.
    Stupid(i64),
}

/// Two-level filtration `F^0 = C ⊇ F^1 = truncation`.
pub fn make_filtration(complex: &CochainComplex, which: Truncation) -> FilteredComplex {
    let (a, b) = complex.degrees();
    let levels = (a..=b)
        .map(|m| {
            let dim = complex.dim(m);
            let sub = match which {
                Truncation::Canonical(p) if m < p => QMatrix::identity(dim),
                Truncation::Canonical(p) if m == p => kernel_matrix(&complex.d(m)),
                Truncation::Canonical(_) => QMatrix::zeros(dim, 0),
                Truncation::Stupid(q) if m >= q => QMatrix::identity(dim),
                Truncation::Stupid(_) => QMatrix::zeros(dim, 0),
            };
            vec![QMatrix::identity(dim), sub]
        })
        .collect();
    FilteredComplex::new(complex.clone(), levels).expect("truncations are subcomplexes")
}

/// Full stupid filtration `F^p = σ≥(a+p)`, one step per degree.
pub fn stupid_filtration(complex: &CochainComplex) -> FilteredComplex {
    let (a, b) = complex.degrees();
    let nlevels = (b - a + 1) as usize;
    let levels = (a..=b)
        .map(|m| {
            let dim = complex.dim(m);
            (0..nlevels)
                .map(|p| {
                    if m >= a + p as i64 {
                        QMatrix::identity(dim)
                    } else {
                        QMatrix::zeros(dim, 0)
                    }
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(complex.clone(), levels).expect("stupid truncations are subcomplexes")
}

/// Full canonical filtration `F^p = τ≤(b−p)`.
pub fn canonical_filtration(complex: &CochainComplex) -> FilteredComplex {
    let (a, b) = complex.degrees();
    let nlevels = (b - a + 1) as usize;
    let levels = (a..=b)
        .map(|m| {
            let dim = complex.dim(m);
            (0..nlevels)
                .map(|p| {
                    let cut = b - p as i64;
                    if m < cut {
                        QMatrix::identity(dim)
                    } else if m == cut {
                        kernel_matrix(&complex.d(m))
                    } else {
                        QMatrix::zeros(dim, 0)
                    }
                })
                .collect()
        })
        .collect();
    FilteredComplex::new(complex.clone(), levels).expect("canonical truncations are subcomplexes")
}

fn kernel_matrix(m: &QMatrix) -> QMatrix {
    QMatrix::from_columns(m.cols(), &kernel_basis(m)).expect("kernel vectors have the source length")
}

/// One group in the long exact sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LesNode {
    pub label: String,
    pub degree: i64,
    pub dim: usize,
    /// Rank of the incoming and outgoing maps.
    pub rank_in: usize,
    pub rank_out: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LesReport {
    pub nodes: Vec<LesNode>,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }
}

/// Complex given by explicit bases, used for the sub and quotient complexes.
struct CoordinateComplex {
    start: i64,
    dims: Vec<usize>,
    diffs: Vec<QMatrix>,
}

impl CoordinateComplex {
    fn d(&self, m: i64) -> QMatrix {
        let i = m - self.start;
        let dim = |k: i64| -> usize {
            let j = k - self.start;
            if j >= 0 && (j as usize) < self.dims.len() {
                self.dims[j as usize]
            } else {
                0
            }
        };
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            QMatrix::zeros(dim(m + 1), dim(m))
        }
    }

    fn cocycles(&self, m: i64) -> QMatrix {
        kernel_matrix(&self.d(m))
    }

    fn coboundaries(&self, m: i64) -> QMatrix {
        column_basis(&self.d(m - 1))
    }

    fn h(&self, m: i64) -> usize {
        self.cocycles(m).cols() - self.coboundaries(m).cols()
    }
}

/// Rank on cohomology of a map given on a basis of cocycles: images are the
/// columns of `images`, landing in a complex with coboundaries `target_b`.
fn induced_rank(images: &QMatrix, target_b: &QMatrix) -> usize {
    let both = images.hstack(target_b).expect("same ambient");
    both.rank() - target_b.rank()
}

/// Long exact sequence `H(W₀) → H(K) → H(K/W₀) → H(W₀)[1]` of a two-level
/// filtration, with exactness checked by rank identities at every node.
pub fn two_term_les(fc: &FilteredComplex) -> Result<LesReport, SpecSeqError> {
    if fc.num_levels() != 2 {
        return Err(SpecSeqError::NotTwoLevels(fc.num_levels()));
    }
    let k = &fc.complex;
    let (a, b) = k.degrees();
    let sub_bases: Vec<QMatrix> = (a..=b).map(|m| fc.filt(1, m).basis).collect();
    // Complement columns of W₀ in each degree, and the projection onto them.
    let mut sections = Vec::new();
    let mut projections = Vec::new();
    for (i, w) in sub_bases.iter().enumerate() {
        let dim = k.dims[i];
        let full = Subspace::full(dim);
        let s = full.complement_of(&Subspace { basis: w.clone() });
        let basis = w.hstack(&s).expect("same ambient");
        let mut proj = QMatrix::zeros(s.cols(), dim);
        for (j, e) in QMatrix::identity(dim).columns().iter().enumerate() {
            let c = solve(&basis, e).expect("shapes").expect("basis is invertible");
            for r in 0..s.cols() {
                proj[(r, j)] = c[w.cols() + r].clone();
            }
        }
        sections.push(s);
        projections.push(proj);
    }
    let n = k.len();
    let sub = CoordinateComplex {
        start: a,
        dims: sub_bases.iter().map(QMatrix::cols).collect(),
        diffs: (0..n - 1)
            .map(|i| {
                let image = k.differentials[i].mul(&sub_bases[i]).expect("shapes");
                let cols: Vec<Vec<Scalar>> = image
                    .columns()
                    .iter()
                    .map(|y| solve(&sub_bases[i + 1], y).expect("shapes").expect("subcomplex"))
                    .collect();
                QMatrix::from_columns(sub_bases[i + 1].cols(), &cols).expect("lengths")
            })
            .collect(),
    };
    let whole = CoordinateComplex {
        start: a,
        dims: k.dims.clone(),
        diffs: k.differentials.clone(),
    };
    let quot = CoordinateComplex {
        start: a,
        dims: sections.iter().map(QMatrix::cols).collect(),
        diffs: (0..n - 1)
            .map(|i| {
                projections[i + 1]
                    .mul(&k.differentials[i])
                    .and_then(|x| x.mul(&sections[i]))
                    .expect("shapes")
            })
            .collect(),
    };

    let mut dims = Vec::new();
    let mut ranks = Vec::new(); // rank of the map leaving node i
    for (i, m) in (a..=b).enumerate() {
        // H^m(W₀) → H^m(K)
        let z = sub.cocycles(m);
        let incl = sub_bases[i].mul(&z).expect("shapes");
        dims.push((format!("H^{m}(W0)"), m, sub.h(m)));
        ranks.push(induced_rank(&incl, &whole.coboundaries(m)));
        // H^m(K) → H^m(K/W₀)
        let z = whole.cocycles(m);
        let proj = projections[i].mul(&z).expect("shapes");
        dims.push((format!("H^{m}(K)"), m, whole.h(m)));
        ranks.push(induced_rank(&proj, &quot.coboundaries(m)));
        // δ: H^m(K/W₀) → H^(m+1)(W₀)
        dims.push((format!("H^{m}(K/W0)"), m, quot.h(m)));
        if m < b {
            let z = quot.cocycles(m);
            let lifted = k.differentials[i]
                .mul(&sections[i])
                .and_then(|x| x.mul(&z))
                .expect("shapes");
            let cols: Vec<Vec<Scalar>> = lifted
                .columns()
                .iter()
                .map(|y| {
                    solve(&sub_bases[i + 1], y)
                        .expect("shapes")
                        .expect("boundary of a relative cocycle lies in W0")
                })
                .collect();
            let delta = QMatrix::from_columns(sub_bases[i + 1].cols(), &cols).expect("lengths");
            ranks.push(induced_rank(&delta, &sub.coboundaries(m + 1)));
        } else {
            ranks.push(0);
        }
    }
    let nodes = dims
        .into_iter()
        .enumerate()
        .map(|(i, (label, degree, dim))| {
            let rank_in = if i == 0 { 0 } else { ranks[i - 1] };
            let rank_out = ranks[i];
            LesNode {
                label,
                degree,
                dim,
                rank_in,
                rank_out,
                exact: rank_in + rank_out == dim,
            }
        })
        .collect();
    Ok(LesReport { nodes })
}
