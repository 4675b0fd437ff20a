//! Rational top forms `A·Ω₀/f^k` on `P^(n+1)` and their cohomology classes.
//!
//! A class is put into normal form by sweeping pole orders from the top down:
//! the numerator at order `j` is split into its canonical Jacobian-ring
//! representative and a part lying in `J`; the latter is lowered to order
//! `j − 1` via
//!
//! ```text
//! (Σ B_i ∂_i f) Ω₀ / f^k  ≡  (1/(k−1)) (Σ ∂_i B_i) Ω₀ / f^(k−1)   (mod exact forms)
//! ```
//!
//! Two sums are cohomologous iff their normal forms agree term by term.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::jacobian::HypersurfaceContext;
use crate::linalg::Scalar;
use crate::poly::GradedPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GriffithsError {
    #[error("degree mismatch: numerator must have degree {expected}, got {got}")]
    DegreeMismatch { expected: i64, got: i64 },
    #[error("pole order {k} out of range 1..={max}")]
    PoleOrderOutOfRange { k: usize, max: usize },
    #[error("numerator is not in the Jacobian ideal")]
    NotInIdeal,
    #[error("cannot lower a form with pole order one")]
    PoleOrderOne,
    #[error("forms belong to different hypersurface contexts")]
    MixedContexts,
    #[error("supplied lift does not reproduce the numerator")]
    InvalidLift,
}

/// `A·Ω₀/f^k` with `deg A = k d − n − 2` and `1 ≤ k ≤ n + 2`.
#[derive(Debug, Clone)]
pub struct RationalTopForm {
    ctx: Arc<HypersurfaceContext>,
    k: usize,
    numerator: GradedPoly,
}

/// Validates and builds a rational top form.
pub fn make_form(
    ctx: &Arc<HypersurfaceContext>,
    numerator: GradedPoly,
    k: usize,
) -> Result<RationalTopForm, GriffithsError> {
    let max = ctx.n() + 2;
    if k < 1 || k > max {
        return Err(GriffithsError::PoleOrderOutOfRange { k, max });
    }
    let expected = ctx.numerator_degree(k);
    if numerator.degree() as i64 != expected || numerator.nvars() != ctx.nvars() {
        return Err(GriffithsError::DegreeMismatch {
            expected,
            got: numerator.degree() as i64,
        });
    }
    Ok(RationalTopForm {
        ctx: Arc::clone(ctx),
        k,
        numerator,
    })
}

impl RationalTopForm {
    pub fn ctx(&self) -> &Arc<HypersurfaceContext> {
        &self.ctx
    }

    pub fn pole_order(&self) -> usize {
        self.k
    }

    pub fn numerator(&self) -> &GradedPoly {
        &self.numerator
    }
}

/// One Griffiths–Dwork step using the canonical lift of the numerator.
pub fn reduce_once(form: &RationalTopForm) -> Result<RationalTopForm, GriffithsError> {
    if form.k < 2 {
        return Err(GriffithsError::PoleOrderOne);
    }
    let lift = form
        .ctx
        .membership_lift(&form.numerator)
        .ok_or(GriffithsError::NotInIdeal)?;
    reduce_with_lift(form, &lift)
}

/// One Griffiths–Dwork step with a caller-supplied lift `A = Σ B_i ∂_i f`.
pub fn reduce_with_lift(
    form: &RationalTopForm,
    lift: &[GradedPoly],
) -> Result<RationalTopForm, GriffithsError> {
    if form.k < 2 {
        return Err(GriffithsError::PoleOrderOne);
    }
    let ctx = &form.ctx;
    if lift.len() != ctx.nvars() || ctx.apply_lift(lift) != form.numerator {
        return Err(GriffithsError::InvalidLift);
    }
    let target_deg = ctx.numerator_degree(form.k - 1) as i32;
    let mut div = GradedPoly::zero(ctx.nvars(), target_deg);
    for (i, b) in lift.iter().enumerate() {
        div = div.add(&b.partial(i)).expect("divergence terms share a degree");
    }
    let factor = Scalar::new(1.into(), (form.k as i64 - 1).into());
    Ok(RationalTopForm {
        ctx: Arc::clone(ctx),
        k: form.k - 1,
        numerator: div.scale(&factor),
    })
}

/// Finite sum of top forms over one context, at most one numerator per pole
/// order.
#[derive(Debug, Clone)]
pub struct FormSum {
    ctx: Arc<HypersurfaceContext>,
    terms: BTreeMap<usize, GradedPoly>,
}

impl FormSum {
    pub fn new(ctx: &Arc<HypersurfaceContext>) -> Self {
        FormSum {
            ctx: Arc::clone(ctx),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_forms<'a>(
        ctx: &Arc<HypersurfaceContext>,
        forms: impl IntoIterator<Item = &'a RationalTopForm>,
    ) -> Result<Self, GriffithsError> {
        let mut s = Self::new(ctx);
        for f in forms {
            s.push(f)?;
        }
        Ok(s)
    }

    pub fn ctx(&self) -> &Arc<HypersurfaceContext> {
        &self.ctx
    }

    pub fn push(&mut self, form: &RationalTopForm) -> Result<(), GriffithsError> {
        if !Arc::ptr_eq(&self.ctx, &form.ctx) {
            return Err(GriffithsError::MixedContexts);
        }
        self.add_numerator(form.k, &form.numerator);
        Ok(())
    }

    fn add_numerator(&mut self, k: usize, a: &GradedPoly) {
        if a.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&k) {
            Some(prev) => prev.add(a).expect("pole order fixes the degree"),
            None => a.clone(),
        };
        if !merged.is_zero() {
            self.terms.insert(k, merged);
        }
    }

    /// Summands as forms, lowest pole order first.
    pub fn forms(&self) -> Vec<RationalTopForm> {
        self.terms
            .iter()
            .map(|(&k, a)| RationalTopForm {
                ctx: Arc::clone(&self.ctx),
                k,
                numerator: a.clone(),
            })
            .collect()
    }

    pub fn numerator(&self, k: usize) -> Option<&GradedPoly> {
        self.terms.get(&k)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FormSum) -> Result<FormSum, GriffithsError> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) {
            return Err(GriffithsError::MixedContexts);
        }
        let mut out = self.clone();
        for (&k, a) in &other.terms {
            out.add_numerator(k, a);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> FormSum {
        let mut out = FormSum::new(&self.ctx);
        for (&k, a) in &self.terms {
            out.add_numerator(k, &a.scale(c));
        }
        out
    }
}

/// Canonical Jacobian-ring representatives per pole order `j`, for
/// `1 ≤ j ≤ n + 1`. Only nonzero components are stored, so equality of
/// normal forms is equality of classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalForm {
    #[serde(skip)]
    nvars: usize,
    #[serde(serialize_with = "serialize_components")]
    components: BTreeMap<usize, GradedPoly>,
}

fn serialize_components<S: serde::Serializer>(
    c: &BTreeMap<usize, GradedPoly>,
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(c.len()))?;
    for (j, p) in c {
        m.serialize_entry(&j.to_string(), &p.to_string())?;
    }
    m.end()
}

impl NormalForm {
    pub fn zero(nvars: usize) -> Self {
        NormalForm {
            nvars,
            components: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, j: usize) -> Option<&GradedPoly> {
        self.components.get(&j)
    }

    /// Nonzero components, lowest pole order first.
    pub fn components(&self) -> impl Iterator<Item = (usize, &GradedPoly)> {
        self.components.iter().map(|(&j, p)| (j, p))
    }

    pub fn add(&self, other: &NormalForm) -> NormalForm {
        let mut out = self.clone();
        for (&j, p) in &other.components {
            let merged = match out.components.remove(&j) {
                Some(prev) => prev.add(p).expect("same pole order"),
                None => p.clone(),
            };
            if !merged.is_zero() {
                out.components.insert(j, merged);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> NormalForm {
        if c.is_zero() {
            return NormalForm::zero(self.nvars);
        }
        NormalForm {
            nvars: self.nvars,
            components: self.components.iter().map(|(&j, p)| (j, p.scale(c))).collect(),
        }
    }
}

/// Normal form of a single summand-split step, exposed so that alternative
/// reduction orders can be exercised: returns `(canonical part, J-part)`.
pub fn split_numerator(ctx: &HypersurfaceContext, a: &GradedPoly) -> (GradedPoly, GradedPoly) {
    let rep = ctx.canonical_rep(a);
    let rest = a.sub(&rep).expect("canonical_rep preserves the degree");
    (rep, rest)
}

/// Sweeps pole orders downward, recording canonical parts and lowering the
/// Jacobian parts, until every numerator is canonical.
pub fn normal_form(s: &FormSum) -> NormalForm {
    let ctx = &s.ctx;
    let mut pending = s.terms.clone();
    let mut out = NormalForm::zero(ctx.nvars());
    while let Some((j, a)) = pending.pop_last() {
        let (rep, rest) = split_numerator(ctx, &a);
        if !rep.is_zero() {
            out.components.insert(j, rep);
        }
        if rest.is_zero() {
            continue;
        }
        // J vanishes below degree d − 1, and pole order one has degree d − n − 2.
        assert!(j >= 2, "Jacobian part at pole order one");
        let form = RationalTopForm {
            ctx: Arc::clone(ctx),
            k: j,
            numerator: rest,
        };
        let lowered = reduce_once(&form).expect("J-part always lifts");
        if lowered.numerator.is_zero() {
            continue;
        }
        let merged = match pending.remove(&(j - 1)) {
            Some(prev) => prev.add(&lowered.numerator).expect("same pole order"),
            None => lowered.numerator,
        };
        if !merged.is_zero() {
            pending.insert(j - 1, merged);
        }
    }
    out
}

pub fn is_exact(s: &FormSum) -> bool {
    normal_form(s).is_zero()
}

pub const SECOND_KIND_JUSTIFICATION: &str =
    "second kind classes are the restrictions of H^(n+1)(P^(n+1), C), which vanishes; \
     hence second kind is equivalent to exact";

/// Exactness together with the second-kind verdict and its justification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SecondKindVerdict {
    pub exact: bool,
    pub second_kind: bool,
    pub justification: &'static str,
}

pub fn second_kind_verdict(s: &FormSum) -> SecondKindVerdict {
    let exact = is_exact(s);
    SecondKindVerdict {
        exact,
        second_kind: exact,
        justification: SECOND_KIND_JUSTIFICATION,
    }
}

pub fn is_second_kind(s: &FormSum) -> bool {
    second_kind_verdict(s).second_kind
}

/// `dim F^k H^(n+1)(X − Y) = Σ_{j=1}^{n+2−k} dim (R/J)_{j d − n − 2}`.
pub fn pole_filtration_dim(ctx: &HypersurfaceContext, k: usize) -> usize {
    let top = (ctx.n() + 2).saturating_sub(k);
    (1..=top)
        .map(|j| ctx.hilbert_function(ctx.numerator_degree(j)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jacobian::build_context;

    fn p(s: &str, nvars: usize) -> GradedPoly {
        GradedPoly::parse(s, nvars).unwrap()
    }

    fn cubic() -> Arc<HypersurfaceContext> {
        build_context(1, GradedPoly::fermat(3, 3)).unwrap()
    }

    #[test]
    fn make_form_degree_checks() {
        let ctx = cubic();
        assert!(make_form(&ctx, p("x0*x1*x2", 3), 2).is_ok());
        assert_eq!(
            make_form(&ctx, p("x0", 3), 2).unwrap_err(),
            GriffithsError::DegreeMismatch { expected: 3, got: 1 }
        );
        assert_eq!(
            make_form(&ctx, p("x0*x1*x2", 3), 4).unwrap_err(),
            GriffithsError::PoleOrderOutOfRange { k: 4, max: 3 }
        );
        let quartic = build_context(2, GradedPoly::fermat(4, 4)).unwrap();
        assert!(make_form(&quartic, GradedPoly::constant(4, Scalar::from_integer(1.into())), 1).is_ok());
    }

    #[test]
    fn reduce_once_kills_pure_square_cube() {
        let ctx = cubic();
        let form = make_form(&ctx, p("x0^2*x1^2*x2^2", 3), 3).unwrap();
        let low = reduce_once(&form).unwrap();
        assert_eq!(low.pole_order(), 2);
        assert!(low.numerator().is_zero());
    }

    #[test]
    fn reduce_once_divergence() {
        let ctx = cubic();
        // A = x0^2 * (2 x0 + 5 x2): lift (g/3, 0, 0), result ∂0 g / 3 = 2/3.
        let form = make_form(&ctx, p("2*x0^3 + 5*x0^2*x2", 3), 2).unwrap();
        let low = reduce_once(&form).unwrap();
        assert_eq!(low.pole_order(), 1);
        assert_eq!(low.numerator(), &p("2/3", 3));
    }

    #[test]
    fn reduce_once_errors() {
        let ctx = cubic();
        let f1 = make_form(&ctx, GradedPoly::zero(3, 0), 1).unwrap();
        assert_eq!(reduce_once(&f1).unwrap_err(), GriffithsError::PoleOrderOne);
        let f2 = make_form(&ctx, p("x0*x1*x2", 3), 2).unwrap();
        assert_eq!(reduce_once(&f2).unwrap_err(), GriffithsError::NotInIdeal);
        let f3 = make_form(&ctx, GradedPoly::zero(3, 6), 3).unwrap();
        let low = reduce_once(&f3).unwrap();
        assert!(low.numerator().is_zero());
        assert_eq!(low.pole_order(), 2);
    }

    #[test]
    fn normal_forms_on_the_cubic() {
        let ctx = cubic();
        let s = FormSum::from_forms(&ctx, [&make_form(&ctx, p("x0*x1*x2", 3), 2).unwrap()]).unwrap();
        let nf = normal_form(&s);
        assert_eq!(nf.component(2), Some(&p("x0*x1*x2", 3)));
        assert_eq!(nf.components().count(), 1);
        assert!(!is_exact(&s));

        let s = FormSum::from_forms(&ctx, [&make_form(&ctx, p("x0^2*x1^2*x2^2", 3), 3).unwrap()]).unwrap();
        assert!(normal_form(&s).is_zero());
        assert!(is_second_kind(&s));

        assert!(normal_form(&FormSum::new(&ctx)).is_zero());
    }

    #[test]
    fn difference_of_equal_forms_is_exact() {
        let ctx = cubic();
        let w = make_form(&ctx, p("x0*x1*x2 + 3*x1^3", 3), 2).unwrap();
        let s = FormSum::from_forms(&ctx, [&w]).unwrap();
        let diff = s.add(&s.scale(&Scalar::from_integer((-1).into()))).unwrap();
        assert!(diff.is_empty());
        assert!(is_exact(&diff));
    }

    #[test]
    fn mixed_contexts_rejected() {
        let a = cubic();
        let b = cubic();
        let w = make_form(&b, p("x0*x1*x2", 3), 2).unwrap();
        assert_eq!(
            FormSum::from_forms(&a, [&w]).unwrap_err(),
            GriffithsError::MixedContexts
        );
    }

    #[test]
    fn filtration_dims() {
        let quartic = build_context(2, GradedPoly::fermat(4, 4)).unwrap();
        let dims: Vec<usize> = (0..=3).map(|k| pole_filtration_dim(&quartic, k)).collect();
        assert_eq!(dims, vec![21, 21, 20, 1]);
        let ctx = cubic();
        let dims: Vec<usize> = (0..=2).map(|k| pole_filtration_dim(&ctx, k)).collect();
        assert_eq!(dims, vec![2, 2, 1]);
    }
}
