//! Residues of rational top forms into the primitive middle cohomology of
//! the hypersurface.
//!
//! For `X = P^(n+1)` the residue map is injective on `H^(n+1)(X − Y)`, so the
//! residue of a sum is read off from its normal form: the pole-order-`j`
//! component becomes the Hodge component of type `(n + 1 − j, j − 1)`.

use serde::Serialize;

use crate::griffiths::{normal_form, pole_filtration_dim, FormSum};
use crate::hodge::hodge_filtration_dims;
use crate::jacobian::HypersurfaceContext;
use crate::poly::GradedPoly;

/// One Hodge component of a residue class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypedComponent {
    pub pole_order: usize,
    pub hodge_type: (usize, usize),
    #[serde(serialize_with = "crate::residue::serialize_poly")]
    pub representative: GradedPoly,
}

pub(crate) fn serialize_poly<S: serde::Serializer>(p: &GradedPoly, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueClass {
    pub n: usize,
    /// Nonzero components, lowest pole order (highest `p`) first.
    pub components: Vec<TypedComponent>,
}

/// Hodge type carried by the pole-order-`j` component.
pub fn hodge_type(n: usize, j: usize) -> (usize, usize) {
    assert!((1..=n + 1).contains(&j), "pole order {j} out of residue range");
    (n + 1 - j, j - 1)
}

impl ResidueClass {
    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// Largest `k` with the class in `F^k H^n(Y)_0` (`n + 1` for zero,
    /// which lies in every step).
    pub fn hodge_level(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.hodge_type.0)
            .min()
            .unwrap_or(self.n + 1)
    }

    pub fn in_hodge_filtration(&self, k: usize) -> bool {
        self.hodge_level() >= k
    }
}

pub fn residue(s: &FormSum) -> ResidueClass {
    let n = s.ctx().n();
    let nf = normal_form(s);
    let components = nf
        .components()
        .map(|(j, p)| TypedComponent {
            pole_order: j,
            hodge_type: hodge_type(n, j),
            representative: p.clone(),
        })
        .collect();
    ResidueClass { n, components }
}

/// Containment data for `s ∈ I^(n+1)_(k+1)  ⇒  Rés(s) ∈ F^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationCheck {
    pub k: usize,
    /// Every normal-form component sits at pole order `≤ n + 1 − k`.
    pub in_pole_filtration: bool,
    /// Every residue component has type `(p, n − p)` with `p ≥ k`.
    pub residue_in_hodge_filtration: bool,
}

impl FiltrationCheck {
    pub fn implication_holds(&self) -> bool {
        !self.in_pole_filtration || self.residue_in_hodge_filtration
    }
}

pub fn residue_filtration_check(s: &FormSum, k: usize) -> FiltrationCheck {
    let n = s.ctx().n();
    let nf = normal_form(s);
    let bound = (n + 1).saturating_sub(k);
    let in_pole_filtration = k <= n + 1 && nf.components().all(|(j, _)| j <= bound);
    let res = residue(s);
    FiltrationCheck {
        k,
        in_pole_filtration,
        residue_in_hodge_filtration: res.in_hodge_filtration(k),
    }
}

/// `dim F^k H^n(Y)_0 = dim Rés(I^(n+1)_(k+1)) + dim r^n(...)`; the second
/// summand vanishes because projective space has no primitive cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub k: usize,
    pub hodge_filtration_dim: usize,
    pub residue_image_dim: usize,
    pub ambient_restriction_dim: usize,
    pub holds: bool,
}

pub fn theorem41_report(ctx: &HypersurfaceContext, k: usize) -> DecompositionReport {
    assert!(k <= ctx.n(), "k = {k} out of range 0..={}", ctx.n());
    let lhs = hodge_filtration_dims(ctx)[k];
    let residue_image_dim = pole_filtration_dim(ctx, k + 1);
    let ambient_restriction_dim = 0;
    DecompositionReport {
        k,
        hodge_filtration_dim: lhs,
        residue_image_dim,
        ambient_restriction_dim,
        holds: lhs == residue_image_dim + ambient_restriction_dim,
    }
}
