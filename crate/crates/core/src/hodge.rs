//! Hodge-theoretic invariants of a smooth hypersurface `Y ⊂ P^(n+1)` and of
//! its complement, assembled from Jacobian-ring dimensions.
//!
//! Everything here is dimension bookkeeping: primitive Hodge numbers come
//! from `dim (R/J)_{j d − n − 2}`, the remaining Betti numbers from weak
//! Lefschetz, and the complement from the Gysin sequence of `Y ⊂ P^(n+1)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::griffiths::pole_filtration_dim;
use crate::jacobian::HypersurfaceContext;

/// `h^(n,0)_prim, h^(n−1,1)_prim, ..., h^(0,n)_prim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimitiveHodgeNumbers {
    pub entries: Vec<usize>,
}

impl PrimitiveHodgeNumbers {
    pub fn total(&self) -> usize {
        self.entries.iter().sum()
    }

    pub fn is_palindromic(&self) -> bool {
        self.entries.iter().eq(self.entries.iter().rev())
    }

    /// `h^(p, n−p)_prim`.
    pub fn h(&self, p: usize) -> usize {
        let n = self.entries.len() - 1;
        self.entries[n - p]
    }
}

pub fn primitive_hodge_numbers(ctx: &HypersurfaceContext) -> PrimitiveHodgeNumbers {
    let entries = (1..=ctx.n() + 1)
        .map(|j| ctx.hilbert_function(ctx.numerator_degree(j)))
        .collect();
    PrimitiveHodgeNumbers { entries }
}

/// `dim F^k H^n(Y, C)_0` for `k = 0..=n`.
pub fn hodge_filtration_dims(ctx: &HypersurfaceContext) -> Vec<usize> {
    let h = primitive_hodge_numbers(ctx);
    let n = ctx.n();
    (0..=n).map(|k| (k..=n).map(|p| h.h(p)).sum()).collect()
}

/// `χ(Y) = ((1 − d)^(n+2) − 1)/d + (n + 2)` for a smooth degree-`d`
/// hypersurface of dimension `n`.
pub fn euler_characteristic(n: usize, d: u32) -> BigInt {
    assert!(d >= 1, "euler_characteristic: degree must be positive");
    let base = BigInt::one() - BigInt::from(d);
    let pow = num_traits::pow(base, n + 2);
    let (q, r) = (pow - BigInt::one()).div_rem(&BigInt::from(d));
    debug_assert!(r.is_zero());
    q + BigInt::from(n + 2)
}

/// `b_0(Y), ..., b_{2n}(Y)`.
pub fn betti_table(ctx: &HypersurfaceContext) -> Vec<usize> {
    let n = ctx.n();
    let prim = primitive_hodge_numbers(ctx).total();
    (0..=2 * n)
        .map(|q| {
            if q == n {
                prim + usize::from(n % 2 == 0)
            } else {
                usize::from(q % 2 == 0)
            }
        })
        .collect()
}

fn projective_betti(dim: usize, q: i64) -> usize {
    usize::from(q >= 0 && q <= 2 * dim as i64 && q % 2 == 0)
}

/// Weight-graded pieces of `H^(n+1)(X − Y)` in the shifted convention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightPiece {
    pub weight: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementCohomology {
    /// `dim H^q(X − Y, C)` for `q = 0..=2n+2`.
    pub dims: Vec<usize>,
    /// Weight pieces of the middle group, weights `n + 1` and `n + 2`.
    pub middle_weights: Vec<WeightPiece>,
    /// `dim F^k H^(n+1)(X − Y)` for `k = 0..=n+1`.
    pub hodge_filtration: Vec<usize>,
}

pub fn complement_cohomology(ctx: &HypersurfaceContext) -> ComplementCohomology {
    let n = ctx.n();
    let prim = primitive_hodge_numbers(ctx).total();
    let mut dims = vec![0; 2 * n + 3];
    dims[0] = 1;
    dims[n + 1] = prim;
    // A smooth hyperplane leaves affine space behind.
    if ctx.d() == 1 {
        debug_assert_eq!(prim, 0);
    }
    let hodge_filtration = (0..=n + 1).map(|k| pole_filtration_dim(ctx, k)).collect();
    ComplementCohomology {
        dims,
        middle_weights: vec![
            WeightPiece { weight: n + 1, dim: 0 },
            WeightPiece { weight: n + 2, dim: prim },
        ],
        hodge_filtration,
    }
}

/// Outcome of one dimension identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    pub checks: Vec<Check>,
}

impl ConsistencyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Middle Betti number forced by the Euler characteristic and weak
/// Lefschetz: `b_n = (−1)^n (χ − Σ_{q ≠ n} (−1)^q b_q)`.
pub fn middle_betti_from_euler(n: usize, d: u32) -> BigInt {
    let chi = euler_characteristic(n, d);
    let others: i64 = (0..=2 * n).filter(|&q| q != n && q % 2 == 0).count() as i64;
    let v = chi - BigInt::from(others);
    if n % 2 == 0 {
        v
    } else {
        -v
    }
}

pub fn consistency_report(ctx: &HypersurfaceContext) -> ConsistencyReport {
    let n = ctx.n();
    let betti = betti_table(ctx);
    let mut checks = Vec::new();

    let expected = middle_betti_from_euler(n, ctx.d());
    let chi = euler_characteristic(n, ctx.d());
    checks.push(Check {
        name: "euler_characteristic",
        passed: BigInt::from(betti[n]) == expected,
        detail: format!("chi = {chi}, b_{n} from primitive numbers = {}, implied = {expected}", betti[n]),
    });

    // H^{n-1}(Y) -> H^{n+1}(X) -> H^{n+1}(X-Y) -> H^n(Y) -> H^{n+2}(X)
    let comp = complement_cohomology(ctx);
    let x = n + 1;
    let b_y = |q: i64| -> i64 {
        if q < 0 || q > 2 * n as i64 {
            0
        } else {
            betti[q as usize] as i64
        }
    };
    let chased = b_y(n as i64) - projective_betti(x, n as i64 + 2) as i64
        + projective_betti(x, n as i64 + 1) as i64
        - b_y(n as i64 - 1);
    checks.push(Check {
        name: "gysin_sequence",
        passed: chased == comp.dims[n + 1] as i64,
        detail: format!("dim H^{} (X-Y) = {}, alternating sum = {chased}", n + 1, comp.dims[n + 1]),
    });

    let prim = primitive_hodge_numbers(ctx);
    let sigma = ctx.socle_degree();
    let gorenstein = (0..=sigma.max(-1)).all(|e| ctx.hilbert_function(e) == ctx.hilbert_function(sigma - e));
    checks.push(Check {
        name: "hodge_symmetry",
        passed: prim.is_palindromic() && gorenstein,
        detail: format!("primitive numbers {:?}, socle degree {sigma}", prim.entries),
    });

    let hard_lefschetz = (0..=x).all(|k| projective_betti(x, (x - k) as i64) == projective_betti(x, (x + k) as i64));
    checks.push(Check {
        name: "hard_lefschetz_ambient",
        passed: hard_lefschetz,
        detail: format!("b_(n+1-k)(P^{x}) = b_(n+1+k)(P^{x}) for 0 <= k <= {x}"),
    });

    ConsistencyReport { checks }
}

/// Euler characteristic of a Betti table.
pub fn alternating_sum(betti: &[usize]) -> BigInt {
    betti
        .iter()
        .enumerate()
        .map(|(q, &b)| if q % 2 == 0 { BigInt::from(b) } else { -BigInt::from(b) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_surface() {
        let ctx = HypersurfaceContext::fermat(2, 4).unwrap();
        assert_eq!(primitive_hodge_numbers(&ctx).entries, vec![1, 19, 1]);
        assert_eq!(hodge_filtration_dims(&ctx), vec![21, 20, 1]);
        assert_eq!(betti_table(&ctx), vec![1, 0, 22, 0, 1]);
        let c = complement_cohomology(&ctx);
        assert_eq!(&c.dims[..4], &[1, 0, 0, 21]);
        assert_eq!(c.hodge_filtration, vec![21, 21, 20, 1]);
        assert_eq!(c.middle_weights[1], WeightPiece { weight: 4, dim: 21 });
        assert!(consistency_report(&ctx).all_passed());
    }

    #[test]
    fn plane_cubic() {
        let ctx = HypersurfaceContext::fermat(1, 3).unwrap();
        assert_eq!(primitive_hodge_numbers(&ctx).entries, vec![1, 1]);
        assert_eq!(hodge_filtration_dims(&ctx), vec![2, 1]);
        assert_eq!(betti_table(&ctx), vec![1, 2, 1]);
        let c = complement_cohomology(&ctx);
        assert_eq!(c.dims[2], 2);
        assert_eq!(c.middle_weights[0], WeightPiece { weight: 2, dim: 0 });
        assert_eq!(c.middle_weights[1], WeightPiece { weight: 3, dim: 2 });
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(euler_characteristic(2, 4), BigInt::from(24));
        assert_eq!(euler_characteristic(3, 5), BigInt::from(-200));
        assert_eq!(euler_characteristic(1, 3), BigInt::from(0));
        assert_eq!(euler_characteristic(1, 2), BigInt::from(2));
        assert_eq!(euler_characteristic(4, 1), BigInt::from(5));
    }

    #[test]
    fn conic_is_a_sphere() {
        let ctx = HypersurfaceContext::fermat(1, 2).unwrap();
        assert_eq!(primitive_hodge_numbers(&ctx).entries, vec![0, 0]);
        assert_eq!(betti_table(&ctx), vec![1, 0, 1]);
        let r = consistency_report(&ctx);
        assert!(r.all_passed(), "{r:?}");
        assert_eq!(middle_betti_from_euler(1, 2), BigInt::from(0));
    }

    #[test]
    fn middle_betti_closed_form() {
        assert_eq!(middle_betti_from_euler(2, 4), BigInt::from(22));
        assert_eq!(middle_betti_from_euler(3, 5), BigInt::from(204));
    }

    #[test]
    fn hyperplane_is_projective_space() {
        let ctx = HypersurfaceContext::fermat(2, 1).unwrap();
        assert_eq!(primitive_hodge_numbers(&ctx).entries, vec![0, 0, 0]);
        assert_eq!(betti_table(&ctx), vec![1, 0, 1, 0, 1]);
        assert_eq!(alternating_sum(&betti_table(&ctx)), euler_characteristic(2, 1));
        assert!(consistency_report(&ctx).all_passed());
    }
}
