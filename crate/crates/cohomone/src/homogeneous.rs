//! Invariants of a homogeneous space G/K: dimension, corank, and the Euler
//! characteristic via the Weyl-order ratio, with the finite-cover division
//! for non-connected K.

use crate::groups::{self, GroupExpr};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientInvariants {
    pub dim_quotient: u64,
    pub corank: u32,
    pub euler: u128,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EulerError {
    #[error("K has rank {k} exceeding rank {g} of G")]
    RankExceeded { k: u32, g: u32 },
    #[error("K has dimension {k} exceeding dimension {g} of G")]
    DimExceeded { k: u64, g: u64 },
    #[error("G must be connected")]
    DisconnectedBase,
    #[error("Weyl order {k} of the identity component of K does not divide {g}")]
    WeylNotDivisible { g: u128, k: u128 },
    #[error("component count {c} does not divide the connected Euler characteristic {chi}")]
    ComponentNotDivisible { chi: u128, c: u64 },
}

/// chi(G/K). Zero exactly when corank(G, K) > 0; otherwise the ratio of
/// Weyl orders of G and the identity component of K, divided by the number
/// of components of K (G/K0 covers G/K with that multiplicity). Both
/// divisions must be exact; failure marks an inconsistent descriptor.
pub fn euler_char(g: &GroupExpr, k: &GroupExpr) -> Result<u128, EulerError> {
    let (rg, rk) = (groups::rank(g), groups::rank(k));
    if rk > rg {
        return Err(EulerError::RankExceeded { k: rk, g: rg });
    }
    if groups::dim(k) > groups::dim(g) {
        return Err(EulerError::DimExceeded { k: groups::dim(k), g: groups::dim(g) });
    }
    if !g.is_connected() {
        return Err(EulerError::DisconnectedBase);
    }
    if rk < rg {
        return Ok(0);
    }
    let og = groups::weyl_order(g);
    let ok = groups::weyl_order(k); // identity component by definition
    if og % ok != 0 {
        return Err(EulerError::WeylNotDivisible { g: og, k: ok });
    }
    let chi0 = og / ok;
    let c = k.component_order as u128;
    if chi0 % c != 0 {
        return Err(EulerError::ComponentNotDivisible { chi: chi0, c: k.component_order });
    }
    Ok(chi0 / c)
}

/// dim G - dim K; an error signals that K cannot be a subgroup.
pub fn dim_quotient(g: &GroupExpr, k: &GroupExpr) -> Result<u64, EulerError> {
    let (dg, dk) = (groups::dim(g), groups::dim(k));
    if dk > dg {
        return Err(EulerError::DimExceeded { k: dk, g: dg });
    }
    Ok(dg - dk)
}

pub fn corank(g: &GroupExpr, k: &GroupExpr) -> Result<u32, EulerError> {
    let (rg, rk) = (groups::rank(g), groups::rank(k));
    if rk > rg {
        return Err(EulerError::RankExceeded { k: rk, g: rg });
    }
    Ok(rg - rk)
}

pub fn invariants(g: &GroupExpr, k: &GroupExpr) -> Result<QuotientInvariants, EulerError> {
    Ok(QuotientInvariants {
        dim_quotient: dim_quotient(g, k)?,
        corank: corank(g, k)?,
        euler: euler_char(g, k)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    fn g(text: &str) -> GroupExpr {
        parse_group(text).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u128 {
        let mut acc: u128 = 1;
        for i in 0..k {
            acc = acc * (n - i) as u128 / (i + 1) as u128;
        }
        acc
    }

    #[test]
    fn projective_plane() {
        // complex projective plane: 3 cells
        assert_eq!(euler_char(&g("SU(3)"), &g("SU{1,2}")).unwrap(), 3);
    }

    #[test]
    fn full_flag() {
        // Bruhat cells of the full flag manifold: |W| = 6
        assert_eq!(euler_char(&g("SU(3)"), &g("T2")).unwrap(), 6);
    }

    #[test]
    fn lower_rank_kills_euler() {
        assert_eq!(euler_char(&g("SU(3)"), &g("SO(3)")).unwrap(), 0);
    }

    #[test]
    fn component_halving() {
        // chi(Sp(2)/Sp(1)Sp(1)) = 8/4 = 2, halved by a double cover
        assert_eq!(euler_char(&g("Sp(2)"), &g("Z2.Sp(1)xSp(1)")).unwrap(), 1);
        assert_eq!(euler_char(&g("Sp(2)"), &g("Sp(1)xSp(1)")).unwrap(), 2);
    }

    #[test]
    fn non_divisible_components_error() {
        let e = euler_char(&g("SU(3)"), &g("Z4.T2")).unwrap_err();
        assert!(matches!(e, EulerError::ComponentNotDivisible { .. }));
    }

    #[test]
    fn grassmannian_oracle() {
        // chi(SU(a+b)/S(U(a)U(b))) = C(a+b, a)
        for a in 1..=5u32 {
            for b in a..=5u32 {
                if a + b > 10 {
                    continue;
                }
                let big = g(&format!("SU({})", a + b));
                let sub = g(&format!("SU{{{a},{b}}}"));
                assert_eq!(
                    euler_char(&big, &sub).unwrap(),
                    binomial((a + b) as u64, a as u64),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn hermitian_and_even_sphere_oracles() {
        for n in 2..=8u32 {
            let big = g(&format!("SO({})", 2 * n));
            let sub = g(&format!("U({n})"));
            assert_eq!(euler_char(&big, &sub).unwrap(), 1u128 << (n - 1), "SO(2n)/U(n) n={n}");
        }
        for n in 1..=8u32 {
            let big = g(&format!("SO({})", 2 * n + 1));
            let sub = g(&format!("SO({})", 2 * n));
            assert_eq!(euler_char(&big, &sub).unwrap(), 2, "even sphere n={n}");
        }
    }

    #[test]
    fn dims_and_coranks() {
        assert_eq!(dim_quotient(&g("Spin(7)"), &g("G2")).unwrap(), 7);
        assert_eq!(dim_quotient(&g("SU(3)"), &g("SU(3)")).unwrap(), 0);
        assert_eq!(dim_quotient(&g("SO(9)"), &g("SO(8)")).unwrap(), 8);
        assert_eq!(corank(&g("SU(4)"), &g("S1xSU(2)")).unwrap(), 1);
        assert_eq!(corank(&g("SO(7)"), &g("SU(3)")).unwrap(), 1);
        assert_eq!(corank(&g("Sp(3)"), &g("Sp(3)")).unwrap(), 0);
    }

    #[test]
    fn multiplicative_identity() {
        // chi * |W(K)| = |W(G)| for connected full-rank K
        let cases = [("SU(4)", "SU{2,2}"), ("SO(9)", "SO(2)xSO(7)"), ("Sp(3)", "U(3)")];
        for (a, b) in cases {
            let big = g(a);
            let sub = g(b);
            let chi = euler_char(&big, &sub).unwrap();
            assert_eq!(
                chi * crate::groups::weyl_order(&sub),
                crate::groups::weyl_order(&big)
            );
        }
    }
}
