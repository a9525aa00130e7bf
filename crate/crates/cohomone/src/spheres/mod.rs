//! Recognition of quotients K/H as spheres, real projective spaces or
//! lens-type quotients, built on the classification of transitive effective
//! sphere actions and the two circle-isotropy families of U(n):
//!
//! * the sphere family S1_k with weights ((k+1)(n-1), -k, ..., -k), and
//! * the index computation for S1_{l,k}: the image of its fundamental
//!   group inside pi_1(U(n)) = Z has index |l - k(n-1)| / gcd(l, n-1);
//!   index 1 recognizes the sphere S^{2n-1}, index 2 the projective space
//!   RP^{2n-1}, and anything larger a lens-type quotient.
//!
//! Also home to the pi_1-surjectivity test for subgroups of SO(m), which
//! decides whether the preimage in Spin(m) is connected.

mod classify;

pub use classify::{classify_quotient, classify_quotient_full, ClassifyError, QuotientMatch};

use crate::groups::{
    Ambient, ClassicalFamily, FactorKind, GroupExpr, SpecialTag, WeightField,
};
use serde::Serialize;
use thiserror::Error;

/// One row of the transitive-sphere-action table, instantiated at a
/// concrete dimension. The isotropy-representation labels are recorded for
/// identification only; no representation arithmetic happens here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpherePattern {
    pub acting: Vec<FactorKind>,
    pub isotropy: Vec<FactorKind>,
    pub sphere_dim: u32,
    /// Factor count of the ineffective kernel left inside the acting group
    /// (zero for the effective table rows themselves).
    pub isotropy_kernel_factors: u32,
    pub label: &'static str,
}

fn pattern(
    acting: Vec<FactorKind>,
    isotropy: Vec<FactorKind>,
    sphere_dim: u32,
    label: &'static str,
) -> SpherePattern {
    SpherePattern { acting, isotropy, sphere_dim, isotropy_kernel_factors: 0, label }
}

/// All transitive effective actions on the sphere of dimension `m`,
/// by acting/isotropy pair. The orthogonal row applies in every dimension;
/// the unitary rows need m odd, the symplectic rows m = 3 mod 4, and the
/// exceptional rows their single dimensions. The m = 1 circle row is
/// included so that one-dimensional slice spheres are expressible.
pub fn transitive_pairs_on_sphere(m: u32) -> Vec<SpherePattern> {
    use FactorKind::*;
    assert!(m >= 1, "spheres start at dimension 1");
    let mut rows = Vec::new();
    rows.push(pattern(
        vec![SpecialOrthogonal(m + 1)],
        if m >= 2 { vec![SpecialOrthogonal(m)] } else { vec![] },
        m,
        "rho_n",
    ));
    if m == 1 {
        rows.push(pattern(vec![Torus(1)], vec![], 1, "circle"));
    }
    if m % 2 == 1 {
        let k = (m - 1) / 2;
        if k >= 1 {
            rows.push(pattern(
                vec![SpecialUnitary(k + 1)],
                if k >= 2 { vec![SpecialUnitary(k)] } else { vec![] },
                m,
                "mu_n + id",
            ));
        }
        rows.push(pattern(
            vec![Unitary(k + 1)],
            if k >= 1 { vec![Unitary(k)] } else { vec![] },
            m,
            "mu_n + id",
        ));
    }
    if m % 4 == 3 {
        let k = (m - 3) / 4;
        rows.push(pattern(
            vec![Symplectic(k + 1)],
            if k >= 1 { vec![Symplectic(k)] } else { vec![] },
            m,
            "nu_n + 3id",
        ));
        let mut iso = vec![];
        if k >= 1 {
            iso.push(Symplectic(k));
        }
        iso.push(Symplectic(1)); // the diagonal Sp(1)
        rows.push(pattern(
            vec![Symplectic(k + 1), Symplectic(1)],
            iso,
            m,
            "nu_n x nu_1 + id x rho_3",
        ));
        let mut iso = vec![];
        if k >= 1 {
            iso.push(Symplectic(k));
        }
        iso.push(Torus(1)); // the diagonal U(1)
        rows.push(pattern(
            vec![Symplectic(k + 1), Torus(1)],
            iso,
            m,
            "nu_n x phi + id x phi + id",
        ));
    }
    if m == 15 {
        rows.push(pattern(vec![SpinCover(9)], vec![SpinCover(7)], 15, "rho_7 + Delta_8"));
    }
    if m == 7 {
        rows.push(pattern(vec![SpinCover(7)], vec![ExceptionalG2], 7, "phi_7"));
    }
    if m == 6 {
        rows.push(pattern(vec![ExceptionalG2], vec![SpecialUnitary(3)], 6, "mu_3"));
    }
    rows
}

/// Weight vector of the circle S1_k inside U(n): the isotropy circle of
/// the U(n)-action by A |-> (det A)^k A on S^{2n-1}.
pub fn sphere_isotropy_circle(n: u32, k: i64) -> Vec<i64> {
    assert!(n >= 2);
    let mut w = Vec::with_capacity(n as usize);
    w.push((k + 1) * (n as i64 - 1));
    for _ in 1..n {
        w.push(-k);
    }
    w
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircleIndexError {
    #[error("(l, k) = (0, 0) does not define a circle")]
    ZeroCircle,
    #[error("gcd(l, k) = {0} must be 1 (reparametrize the circle first)")]
    NotPrimitive(u64),
    #[error("l = k(n-1): the circle meets every loop class; the isotropy group has full corank")]
    Degenerate,
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Index of the image of pi_1(S1_{l,k} SU(n-1)) inside pi_1(U(n)) = Z,
/// where S1_{l,k} = diag(z^l, z^-k, ..., z^-k) and gcd(l, k) = 1.
/// The generator of the isotropy group's fundamental group winds
/// (l - k(n-1)) / gcd(l, n-1) times around the determinant circle.
pub fn pi1_index_circle(l: i64, k: i64, n: u32) -> Result<u64, CircleIndexError> {
    assert!(n >= 2);
    if l == 0 && k == 0 {
        return Err(CircleIndexError::ZeroCircle);
    }
    let g = gcd(l.unsigned_abs(), k.unsigned_abs());
    if g != 1 {
        return Err(CircleIndexError::NotPrimitive(g));
    }
    let winding = l - k * (n as i64 - 1);
    if winding == 0 {
        return Err(CircleIndexError::Degenerate);
    }
    let a = gcd(l.unsigned_abs(), n as u64 - 1);
    debug_assert_eq!(winding.unsigned_abs() % a, 0);
    Ok(winding.unsigned_abs() / a)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurjectivityError {
    #[error("group needs an orthogonal ambient of size >= 3")]
    BadAmbient,
    #[error("factor {0} carries no embedding data")]
    AbstractFactor(usize),
}

/// Does the inclusion K -> SO(m) induce a surjection pi_1(K) -> pi_1(SO(m)) = Z/2?
/// Equivalently: is the preimage of K in Spin(m) connected?
///
/// Per-factor loop classes: an SO(j >= 2) block hits the generator; a U(j)
/// block does too (one rotating complex coordinate); a diagonal circle with
/// complex weights contributes the weight sum mod 2; quaternionic weights
/// double every coordinate and contribute nothing; simply connected factors
/// (SU, Sp, Spin blocks, G2, Spin(7) in SO(8)) contribute nothing; the
/// irreducible SO(3) in SO(5) has loop weights (1, 2) and does hit it.
pub fn pi1_surjective_in_so(k: &GroupExpr) -> Result<bool, SurjectivityError> {
    let ambient = k.ambient.ok_or(SurjectivityError::BadAmbient)?;
    if !matches!(ambient.family, ClassicalFamily::SO | ClassicalFamily::Spin) || ambient.size < 3 {
        return Err(SurjectivityError::BadAmbient);
    }
    let mut surjective = false;
    for (i, f) in k.factors.iter().enumerate() {
        if f.embedding.is_abstract() {
            return Err(SurjectivityError::AbstractFactor(i));
        }
        surjective |= factor_hits_generator(f, ambient);
    }
    Ok(surjective)
}

fn factor_hits_generator(f: &crate::groups::Factor, _ambient: Ambient) -> bool {
    if let Some(tag) = f.embedding.special {
        return match tag {
            SpecialTag::G2InSo7 => false,
            SpecialTag::Spin7InSo8 => false,
            SpecialTag::IrrSo3InSo5 => true,
            SpecialTag::IrrSo3InSu3 => false,
            SpecialTag::DeltaSp1 => false,
        };
    }
    if let Some((w, field)) = &f.embedding.weights {
        return match field {
            WeightField::Complex | WeightField::Real => {
                w.iter().sum::<i64>().rem_euclid(2) == 1
            }
            WeightField::Quaternionic => false,
        };
    }
    match &f.kind {
        FactorKind::SpecialOrthogonal(j) => *j >= 2,
        FactorKind::Unitary(_) => true,
        FactorKind::SUnitaryProduct(_) => false,
        FactorKind::SpecialUnitary(_)
        | FactorKind::Symplectic(_)
        | FactorKind::SpinCover(_)
        | FactorKind::ExceptionalG2 => false,
        // a block torus without weight data would be ambiguous; blocks of
        // tori do not occur, and abstract tori were rejected above
        FactorKind::Torus(_) => false,
    }
}

/// Recognition result for a quotient K/H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuotientId {
    Sphere(u32),
    Projective(u32),
    Lens(u64),
    NotRecognized,
}

impl QuotientId {
    pub fn is_sphere(&self) -> bool {
        matches!(self, QuotientId::Sphere(_))
    }

    pub fn is_sphere_or_projective(&self) -> bool {
        matches!(self, QuotientId::Sphere(_) | QuotientId::Projective(_))
    }

    pub fn dim(&self) -> Option<u32> {
        match self {
            QuotientId::Sphere(m) | QuotientId::Projective(m) => Some(*m),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    #[test]
    fn pairs_dimension_six() {
        let rows = transitive_pairs_on_sphere(6);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].acting, vec![FactorKind::SpecialOrthogonal(7)]);
        assert_eq!(rows[1].acting, vec![FactorKind::ExceptionalG2]);
        assert_eq!(rows[1].isotropy, vec![FactorKind::SpecialUnitary(3)]);
    }

    #[test]
    fn pairs_dimension_fifteen() {
        let rows = transitive_pairs_on_sphere(15);
        let actings: Vec<_> = rows.iter().map(|r| r.acting.clone()).collect();
        assert!(actings.contains(&vec![FactorKind::SpinCover(9)]));
        assert!(actings.contains(&vec![FactorKind::Symplectic(4)]));
        assert!(actings.contains(&vec![FactorKind::SpecialUnitary(8)]));
    }

    #[test]
    fn pairs_dimension_two() {
        let rows = transitive_pairs_on_sphere(2);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].acting, vec![FactorKind::SpecialOrthogonal(3)]);
        assert_eq!(rows[0].isotropy, vec![FactorKind::SpecialOrthogonal(2)]);
    }

    #[test]
    fn pattern_dims_match_group_dims() {
        // sphere_dim == dim(acting) - dim(isotropy) for every instantiation
        for m in 1..=23 {
            for row in transitive_pairs_on_sphere(m) {
                let da: u64 = row.acting.iter().map(|k| k.dim()).sum();
                let di: u64 = row.isotropy.iter().map(|k| k.dim()).sum();
                assert_eq!(da - di, row.sphere_dim as u64, "row {} at m={m}", row.label);
            }
        }
    }

    #[test]
    fn isotropy_circle_examples() {
        assert_eq!(sphere_isotropy_circle(3, 0), vec![2, 0, 0]);
        assert_eq!(sphere_isotropy_circle(3, 1), vec![4, -1, -1]);
        assert_eq!(sphere_isotropy_circle(4, -1), vec![0, 1, 1, 1]);
    }

    #[test]
    fn index_examples() {
        assert_eq!(pi1_index_circle(4, 3, 2).unwrap(), 1);
        assert_eq!(pi1_index_circle(6, 1, 3).unwrap(), 2);
        assert_eq!(pi1_index_circle(5, 2, 3).unwrap(), 1);
        assert_eq!(pi1_index_circle(2, 1, 3), Err(CircleIndexError::Degenerate));
        assert_eq!(pi1_index_circle(4, 2, 3), Err(CircleIndexError::NotPrimitive(2)));
        assert_eq!(pi1_index_circle(0, 0, 3), Err(CircleIndexError::ZeroCircle));
    }

    #[test]
    fn projective_family_closed_form() {
        // l = (k+2)(n-1) always lands on index 2 when primitive
        for n in 3..=10u32 {
            for k in (-9..=9i64).filter(|k| k % 2 != 0) {
                let l = (k + 2) * (n as i64 - 1);
                if gcd(l.unsigned_abs(), k.unsigned_abs()) != 1 {
                    continue;
                }
                assert_eq!(pi1_index_circle(l, k, n).unwrap(), 2, "l={l} k={k} n={n}");
            }
        }
    }

    #[test]
    fn surjectivity_rules() {
        let u_in_so = parse_group("U(3)@[1..3] in SO(6)").unwrap();
        assert!(pi1_surjective_in_so(&u_in_so).unwrap());

        // weight sum 2(n-1) is even for the projective-family circle
        let circ = parse_group("S1[w(6,-1,-1,0)]xSU(2)@[2..3] in SO(7)").unwrap();
        assert!(!pi1_surjective_in_so(&circ).unwrap());

        let g2 = parse_group("G2#g2so7 in SO(7)").unwrap();
        assert!(!pi1_surjective_in_so(&g2).unwrap());

        let so_block = parse_group("SO(5)@[3..7] in SO(7)").unwrap();
        assert!(pi1_surjective_in_so(&so_block).unwrap());

        let abstract_factor = parse_group("SU(3) in SO(7)").unwrap();
        assert!(pi1_surjective_in_so(&abstract_factor).is_err());
    }

    #[test]
    fn surjectivity_monotone_under_factors() {
        // adding a factor never flips true -> false
        let base = parse_group("U(2)@[1..2] in SO(7)").unwrap();
        assert!(pi1_surjective_in_so(&base).unwrap());
        let bigger = parse_group("U(2)@[1..2]xSU(2)@[3..4]? in SO(9)".replace('?', "").as_str())
            .unwrap();
        assert!(pi1_surjective_in_so(&bigger).unwrap());
    }
}
