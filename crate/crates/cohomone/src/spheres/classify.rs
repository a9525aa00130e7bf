//! Pattern matcher for quotients K/H.
//!
//! Both groups are expanded into simple slots plus a torus rank: U(n)
//! splits into SU(n) and its determinant circle, S(U(n1)...U(nk)) into its
//! SU parts and k-1 circles. One slot of K "shrinks" per an applicable
//! table row while every other slot must reappear in H (up to the fixed
//! low-rank identification table) as the ineffective kernel. Circle-family
//! shrinks consult the weight data and decide sphere vs projective vs
//! lens via the fundamental-group index.

use super::{pi1_index_circle, QuotientId};
use crate::groups::{
    self, abstractly_isomorphic, Ambient, ClassicalFamily, Factor, FactorKind, GroupExpr,
};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("H has dimension {h} not less than dimension {k} of K")]
    NotSmaller { h: u64, k: u64 },
    #[error(
        "pattern '{label}' matches the factor shapes but its quotient dimension {expected} \
         disagrees with dim K - dim H = {actual}"
    )]
    DimensionMismatch { label: &'static str, expected: u32, actual: u32 },
}

/// A simple factor after expansion, with its ambient footprint when known.
#[derive(Debug, Clone)]
struct Slot {
    kind: FactorKind,
    /// slots of the ambient the factor occupies (natural units), when known
    support: Option<BTreeSet<u32>>,
}

#[derive(Debug, Clone)]
struct Expanded {
    simples: Vec<Slot>,
    torus_rank: u32,
    /// explicit diagonal circles with their weight vectors (sigma applied)
    circles: Vec<Vec<i64>>,
    components: u64,
}

fn apply_sigma_to_slots(perm: &[i64], slots: &BTreeSet<u32>) -> BTreeSet<u32> {
    slots
        .iter()
        .map(|&s| {
            if (s as usize) <= perm.len() {
                perm[s as usize - 1].unsigned_abs() as u32
            } else {
                s
            }
        })
        .collect()
}

fn block_slots(f: &Factor, ambient: Option<Ambient>) -> Option<BTreeSet<u32>> {
    let (lo, hi) = f.embedding.block?;
    let so_ambient = matches!(
        ambient.map(|a| a.family),
        Some(ClassicalFamily::SO | ClassicalFamily::Spin)
    );
    let so_kind = matches!(
        f.kind,
        FactorKind::SpecialOrthogonal(_) | FactorKind::SpinCover(_) | FactorKind::ExceptionalG2
    );
    let base: BTreeSet<u32> = if so_ambient && !so_kind {
        // the block is given in complex slots already
        (lo..=hi).collect()
    } else if so_ambient && so_kind {
        // real coordinates; convert to the slots they touch
        (lo..=hi).map(|r| r.div_ceil(2).min(ambient.unwrap().slot_count())).collect()
    } else {
        (lo..=hi).collect()
    };
    match &f.embedding.sigma {
        Some(perm) if !so_kind => Some(apply_sigma_to_slots(perm, &base)),
        // sigma on SO-kind factors permutes real coordinates; map to slots
        Some(perm) => {
            let reals: BTreeSet<u32> = (lo..=hi).collect();
            let mapped: BTreeSet<u32> = reals
                .iter()
                .map(|&r| {
                    if (r as usize) <= perm.len() {
                        perm[r as usize - 1].unsigned_abs() as u32
                    } else {
                        r
                    }
                })
                .collect();
            Some(
                mapped
                    .iter()
                    .map(|&r| r.div_ceil(2).min(ambient.map(|a| a.slot_count()).unwrap_or(r)))
                    .collect(),
            )
        }
        None => Some(base),
    }
}

fn circle_weights_with_sigma(f: &Factor) -> Option<Vec<i64>> {
    let (w, _) = f.embedding.weights.as_ref()?;
    match &f.embedding.sigma {
        None => Some(w.clone()),
        Some(perm) => {
            let mut out = w.clone();
            for (i, &wi) in w.iter().enumerate() {
                if i < perm.len() {
                    let img = perm[i].unsigned_abs() as usize - 1;
                    let sign = if perm[i] < 0 { -1 } else { 1 };
                    if img < out.len() {
                        out[img] = sign * wi;
                    }
                }
            }
            if w.len() == perm.len() {
                // rebuild completely to avoid stale entries
                let mut rebuilt = vec![0i64; w.len()];
                for (i, &wi) in w.iter().enumerate() {
                    let img = perm[i].unsigned_abs() as usize - 1;
                    let sign = if perm[i] < 0 { -1 } else { 1 };
                    rebuilt[img] = sign * wi;
                }
                Some(rebuilt)
            } else {
                Some(out)
            }
        }
    }
}

fn expand(g: &GroupExpr) -> Expanded {
    let ambient = g.ambient;
    let mut simples = Vec::new();
    let mut torus_rank = 0u32;
    let mut circles = Vec::new();
    for f in &g.factors {
        if f.kind.is_trivial() {
            continue;
        }
        match &f.kind {
            FactorKind::Torus(r) => {
                torus_rank += r;
                if let Some(w) = circle_weights_with_sigma(f) {
                    circles.push(w);
                }
            }
            FactorKind::Unitary(n) => {
                torus_rank += 1;
                if *n >= 2 {
                    simples.push(Slot {
                        kind: FactorKind::SpecialUnitary(*n),
                        support: block_slots(f, ambient),
                    });
                }
            }
            FactorKind::SUnitaryProduct(parts) => {
                torus_rank += parts.len() as u32 - 1;
                // parts occupy consecutive slot ranges inside the block
                let base = f.embedding.block.map(|(lo, _)| lo).unwrap_or(1);
                let mut cursor = base;
                for &p in parts {
                    if p >= 2 {
                        let span: BTreeSet<u32> = (cursor..cursor + p).collect();
                        let span = match &f.embedding.sigma {
                            Some(perm) => apply_sigma_to_slots(perm, &span),
                            None => span,
                        };
                        simples.push(Slot {
                            kind: FactorKind::SpecialUnitary(p),
                            support: Some(span),
                        });
                    }
                    cursor += p;
                }
            }
            FactorKind::SpecialOrthogonal(2) => {
                torus_rank += 1;
                // an SO(2) block is a coordinate circle; record its slot as
                // a weight vector if the ambient gives us slot numbering
                if let (Some(slots), Some(amb)) = (block_slots(f, ambient), ambient) {
                    let mut w = vec![0i64; amb.slot_count() as usize];
                    for s in slots {
                        if (s as usize) <= w.len() {
                            w[s as usize - 1] = 1;
                        }
                    }
                    if w.iter().any(|&x| x != 0) {
                        circles.push(w);
                    }
                }
            }
            kind => {
                simples.push(Slot {
                    kind: kind.clone(),
                    support: block_slots(f, ambient),
                });
            }
        }
    }
    Expanded { simples, torus_rank, circles, components: g.component_order }
}

/// Simply-connected "spin size" of a kind, for the low-rank avatars of the
/// orthogonal sphere row: Spin(m)/Spin(m-1) = S^{m-1}.
fn spin_size(kind: &FactorKind) -> Option<u32> {
    match kind {
        FactorKind::SpinCover(n) => Some(*n),
        FactorKind::SpecialUnitary(2) | FactorKind::Symplectic(1) => Some(3),
        FactorKind::Symplectic(2) => Some(5),
        FactorKind::SpecialUnitary(4) => Some(6),
        _ => None,
    }
}

fn kinds_equivalent(a: &FactorKind, b: &FactorKind) -> bool {
    abstractly_isomorphic(a, b)
}

/// Try to match the remaining slots of K against the remaining slots of H
/// one-to-one (kernel factors). Supports, when both known, must nest or be
/// equal; kinds must agree up to the identification table.
fn kernel_match(rest_k: &[&Slot], rest_h: &[&Slot]) -> bool {
    if rest_k.len() != rest_h.len() {
        return false;
    }
    if rest_k.is_empty() {
        return true;
    }
    // backtracking bijection; factor counts are <= 4 so this is cheap
    let mut used = vec![false; rest_h.len()];
    fn go(i: usize, rest_k: &[&Slot], rest_h: &[&Slot], used: &mut Vec<bool>) -> bool {
        if i == rest_k.len() {
            return true;
        }
        for j in 0..rest_h.len() {
            if used[j] {
                continue;
            }
            let (a, b) = (rest_k[i], rest_h[j]);
            if !kinds_equivalent(&a.kind, &b.kind) {
                continue;
            }
            if let (Some(sa), Some(sb)) = (&a.support, &b.support) {
                if !sb.is_subset(sa) && !sa.is_subset(sb) {
                    continue;
                }
            }
            used[j] = true;
            if go(i + 1, rest_k, rest_h, used) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    go(0, rest_k, rest_h, &mut used)
}

struct Candidate {
    id: QuotientId,
    dim: u32,
    kernel: u32,
    label: &'static str,
}

/// Extract the (l, k) parameters of a circle restricted to a unitary block
/// of `n` slots, where `anchor` (the SU(n-1) slots of H) identifies the
/// distinguished coordinate. With no anchor (n = 2, or no SU part), any
/// assignment gives the same index. Returns the primitive (l, k).
fn family_parameters(
    circle: &[i64],
    block: &BTreeSet<u32>,
    anchor: Option<&BTreeSet<u32>>,
) -> Option<(i64, i64)> {
    let restricted: Vec<(u32, i64)> = block
        .iter()
        .map(|&s| (s, circle.get(s as usize - 1).copied().unwrap_or(0)))
        .collect();
    let (l_slots, k_slots): (Vec<_>, Vec<_>) = match anchor {
        Some(anchor) => restricted.iter().partition(|(s, _)| !anchor.contains(s)),
        None => {
            if restricted.len() != 2 {
                return None;
            }
            (vec![restricted[0]], vec![restricted[1]])
        }
    };
    if l_slots.len() != 1 {
        return None;
    }
    let l = l_slots[0].1;
    let c = match k_slots.first() {
        Some(&(_, c)) => c,
        None => 0,
    };
    if k_slots.iter().any(|&(_, w)| w != c) {
        return None;
    }
    // divide out the parametrization content
    let g = super::gcd(l.unsigned_abs(), c.unsigned_abs());
    if g == 0 {
        return None;
    }
    Some((l / g as i64, -(c / g as i64)))
}

fn circles_in_block<'a>(circles: &'a [Vec<i64>], block: &BTreeSet<u32>) -> Vec<&'a Vec<i64>> {
    circles
        .iter()
        .filter(|w| {
            w.iter().enumerate().any(|(i, &wi)| wi != 0 && block.contains(&(i as u32 + 1)))
        })
        .collect()
}

/// The matched pattern: the quotient, the factor count of the ineffective
/// kernel left inside the acting group, and the isotropy-representation
/// label of the matched table row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientMatch {
    pub id: QuotientId,
    pub kernel_factors: u32,
    pub pattern: Option<&'static str>,
}

/// Classify K/H. `NotRecognized` when no rule fires; an error when a rule
/// fires on the factor shapes but the dimension bookkeeping disagrees.
pub fn classify_quotient(k: &GroupExpr, h: &GroupExpr) -> Result<QuotientId, ClassifyError> {
    classify_quotient_full(k, h).map(|m| m.id)
}

/// As [`classify_quotient`], returning the kernel bookkeeping as well.
pub fn classify_quotient_full(
    k: &GroupExpr,
    h: &GroupExpr,
) -> Result<QuotientMatch, ClassifyError> {
    let (dk, dh) = (groups::dim(k), groups::dim(h));
    if dh >= dk {
        return Err(ClassifyError::NotSmaller { h: dh, k: dk });
    }
    let d = (dk - dh) as u32;
    let ek = expand(k);
    let eh = expand(h);
    let mut shape_matches: Vec<Candidate> = Vec::new();

    let comp_ratio = if ek.components > 0 && eh.components % ek.components == 0 {
        Some(eh.components / ek.components)
    } else {
        None
    };
    let connected_pair = ek.components == eh.components;

    // --- rules that shrink one simple slot -------------------------------
    for (i, slot) in ek.simples.iter().enumerate() {
        let rest_k: Vec<&Slot> = ek.simples.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, s)| s).collect();

        // candidate H-slot shrink targets
        for (u, hslot) in eh.simples.iter().enumerate() {
            let rest_h: Vec<&Slot> =
                eh.simples.iter().enumerate().filter(|(j, _)| *j != u).map(|(_, s)| s).collect();
            if !kernel_match(&rest_k, &rest_h) || ek.torus_rank != eh.torus_rank {
                continue;
            }
            if let (Some(sk), Some(sh)) = (&slot.support, &hslot.support) {
                if !sh.is_subset(sk) {
                    continue;
                }
            }
            let kernel = rest_k.len() as u32 + ek.torus_rank;
            // orthogonal row: SO(j+1) -> SO(j), including O(j)-marked H
            if let (FactorKind::SpecialOrthogonal(a), FactorKind::SpecialOrthogonal(b)) =
                (&slot.kind, &hslot.kind)
            {
                if *a == b + 1 && *b >= 2 {
                    let id = match comp_ratio {
                        Some(1) => Some(QuotientId::Sphere(*b)),
                        Some(2) => Some(QuotientId::Projective(*b)),
                        _ => None,
                    };
                    if let Some(id) = id {
                        shape_matches.push(Candidate { id, dim: *b, kernel, label: "rho_n" });
                    }
                }
            }
            // spin avatars of the orthogonal row: Spin(m)/Spin(m-1)
            if let (Some(a), Some(b)) = (spin_size(&slot.kind), spin_size(&hslot.kind)) {
                if a == b + 1 && connected_pair {
                    shape_matches.push(Candidate {
                        id: QuotientId::Sphere(b),
                        dim: b,
                        kernel,
                        label: "rho_n (spin form)",
                    });
                }
            }
            // unitary rows: SU(j+1) -> SU(j), with circle-family refinement
            if let (FactorKind::SpecialUnitary(a), FactorKind::SpecialUnitary(b)) =
                (&slot.kind, &hslot.kind)
            {
                if *a == b + 1 && *b >= 2 && connected_pair {
                    let sphere = 2 * b + 1;
                    let id = if ek.torus_rank >= 1 {
                        circle_family_id(&slot.support, &hslot.support, &eh.circles, *a, sphere)
                    } else {
                        Some(QuotientId::Sphere(sphere))
                    };
                    if let Some(id) = id {
                        shape_matches.push(Candidate {
                            id,
                            dim: sphere,
                            kernel,
                            label: "mu_n + id",
                        });
                    }
                }
            }
            // symplectic row: Sp(j+1) -> Sp(j)
            if let (FactorKind::Symplectic(a), FactorKind::Symplectic(b)) =
                (&slot.kind, &hslot.kind)
            {
                if *a == b + 1 && connected_pair {
                    shape_matches.push(Candidate {
                        id: QuotientId::Sphere(4 * b + 3),
                        dim: 4 * b + 3,
                        kernel,
                        label: "nu_n + 3id",
                    });
                }
            }
            // exceptional rows
            if matches!(
                (&slot.kind, &hslot.kind),
                (FactorKind::SpinCover(7), FactorKind::ExceptionalG2)
            ) && connected_pair
            {
                shape_matches.push(Candidate {
                    id: QuotientId::Sphere(7),
                    dim: 7,
                    kernel,
                    label: "phi_7",
                });
            }
            if matches!(
                (&slot.kind, &hslot.kind),
                (FactorKind::SpinCover(9), FactorKind::SpinCover(7))
            ) && connected_pair
            {
                shape_matches.push(Candidate {
                    id: QuotientId::Sphere(15),
                    dim: 15,
                    kernel,
                    label: "rho_7 + Delta_8",
                });
            }
            if matches!(
                (&slot.kind, &hslot.kind),
                (FactorKind::ExceptionalG2, FactorKind::SpecialUnitary(3))
            ) && connected_pair
            {
                shape_matches.push(Candidate {
                    id: QuotientId::Sphere(6),
                    dim: 6,
                    kernel,
                    label: "mu_3",
                });
            }
            // projective recognitions at the orthogonal level:
            // SO(5)/SU(2) and SO(6)/SU(3) are RP^7 (their spin covers are
            // Sp(2)/Sp(1) and SU(4)/SU(3), both S^7)
            if matches!(
                (&slot.kind, &hslot.kind),
                (FactorKind::SpecialOrthogonal(5), FactorKind::SpecialUnitary(2))
                    | (FactorKind::SpecialOrthogonal(5), FactorKind::Symplectic(1))
                    | (FactorKind::SpecialOrthogonal(6), FactorKind::SpecialUnitary(3))
            ) && connected_pair
            {
                shape_matches.push(Candidate {
                    id: QuotientId::Projective(7),
                    dim: 7,
                    kernel,
                    label: "projective spin image",
                });
            }
        }

        // shrinks that remove the whole simple slot
        let rest_h_all: Vec<&Slot> = eh.simples.iter().collect();
        if kernel_match(&rest_k, &rest_h_all) {
            let kernel = rest_k.len() as u32 + ek.torus_rank;
            // SU(2)/Sp(1)-type slot vanishes: S^3. The fundamental-group
            // index refinement only makes sense for complex unitary blocks;
            // a quaternionic Sp(1) coordinate always gives the sphere.
            if matches!(
                slot.kind,
                FactorKind::SpecialUnitary(2) | FactorKind::Symplectic(1) | FactorKind::SpinCover(3)
            ) && ek.torus_rank == eh.torus_rank
                && connected_pair
            {
                let id = if ek.torus_rank >= 1
                    && matches!(slot.kind, FactorKind::SpecialUnitary(2))
                {
                    circle_family_id(&slot.support, &None, &eh.circles, 2, 3)
                } else {
                    Some(QuotientId::Sphere(3))
                };
                if let Some(id) = id {
                    shape_matches.push(Candidate { id, dim: 3, kernel, label: "mu_1 + id" });
                }
            }
            // rank-one slot degrades to a circle: S^2
            if matches!(
                slot.kind,
                FactorKind::SpecialUnitary(2)
                    | FactorKind::Symplectic(1)
                    | FactorKind::SpinCover(3)
                    | FactorKind::SpecialOrthogonal(3)
            ) && eh.torus_rank == ek.torus_rank + 1
                && connected_pair
            {
                shape_matches.push(Candidate {
                    id: QuotientId::Sphere(2),
                    dim: 2,
                    kernel,
                    label: "rho_2",
                });
            }
        }

        // SO(4) degrades to U(2) = SU(2) + circle (hermitian S^2)
        if matches!(slot.kind, FactorKind::SpecialOrthogonal(4))
            && eh.torus_rank == ek.torus_rank + 1
            && connected_pair
        {
            for (u, hslot) in eh.simples.iter().enumerate() {
                if !matches!(
                    hslot.kind,
                    FactorKind::SpecialUnitary(2)
                        | FactorKind::Symplectic(1)
                        | FactorKind::SpinCover(3)
                ) {
                    continue;
                }
                if let (Some(sk), Some(sh)) = (&slot.support, &hslot.support) {
                    if !sh.is_subset(sk) {
                        continue;
                    }
                }
                let rest_h: Vec<&Slot> = eh
                    .simples
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != u)
                    .map(|(_, s)| s)
                    .collect();
                if kernel_match(&rest_k, &rest_h) {
                    shape_matches.push(Candidate {
                        id: QuotientId::Sphere(2),
                        dim: 2,
                        kernel: rest_k.len() as u32 + ek.torus_rank,
                        label: "rho_2 (hermitian form)",
                    });
                }
            }
        }
    }

    // --- circle-only shrinks ---------------------------------------------
    {
        let rest_k: Vec<&Slot> = ek.simples.iter().collect();
        let rest_h: Vec<&Slot> = eh.simples.iter().collect();
        if kernel_match(&rest_k, &rest_h) && ek.torus_rank == eh.torus_rank + 1 {
            // a circle factor of K dies (possibly onto a finite marker)
            if comp_ratio.is_some() || eh.components.is_multiple_of(ek.components.max(1)) {
                shape_matches.push(Candidate {
                    id: QuotientId::Sphere(1),
                    dim: 1,
                    kernel: rest_k.len() as u32 + eh.torus_rank,
                    label: "circle",
                });
            }
        }
    }

    // --- resolve against the actual dimension -----------------------------
    let mut best: Option<Candidate> = None;
    let mut had_shape_match: Option<(&'static str, u32)> = None;
    for c in shape_matches {
        if had_shape_match.is_none() {
            had_shape_match = Some((c.label, c.dim));
        }
        if c.dim == d {
            let better = match &best {
                None => true,
                Some(b) => {
                    // prefer recognized spheres, then projectives, then lens
                    let rank = |id: &QuotientId| match id {
                        QuotientId::Sphere(_) => 0,
                        QuotientId::Projective(_) => 1,
                        QuotientId::Lens(_) => 2,
                        QuotientId::NotRecognized => 3,
                    };
                    rank(&c.id) < rank(&b.id)
                }
            };
            if better {
                best = Some(c);
            }
        }
    }
    match best {
        Some(c) => Ok(QuotientMatch {
            id: c.id,
            kernel_factors: c.kernel,
            pattern: Some(c.label),
        }),
        None => match had_shape_match {
            // the factor shapes fit a table row but the dimension
            // bookkeeping disagrees: the descriptor is inconsistent
            Some((label, expected)) => {
                Err(ClassifyError::DimensionMismatch { label, expected, actual: d })
            }
            None => Ok(QuotientMatch {
                id: QuotientId::NotRecognized,
                kernel_factors: 0,
                pattern: None,
            }),
        },
    }
}

/// Identify the quotient of a unitary family shrink U(n) -> circle.SU(n-1)
/// from the explicit circle data, when available. `None` means the weight
/// data is present but incompatible with any family circle, so the rule
/// must not fire. Defaults to the sphere when no explicit weights exist.
fn circle_family_id(
    block: &Option<BTreeSet<u32>>,
    anchor: &Option<BTreeSet<u32>>,
    h_circles: &[Vec<i64>],
    n: u32,
    sphere_dim: u32,
) -> Option<QuotientId> {
    let block = match block {
        Some(b) => b,
        None => return Some(QuotientId::Sphere(sphere_dim)),
    };
    let inside = circles_in_block(h_circles, block);
    if inside.len() != 1 {
        // zero circles: the torus data lives elsewhere (kernel circles);
        // two or more: a torus acts, which is always a sphere-compatible
        // family at this level of bookkeeping
        return Some(QuotientId::Sphere(sphere_dim));
    }
    let anchor_ref = anchor.as_ref();
    match family_parameters(inside[0], block, anchor_ref) {
        Some((l, k)) => match pi1_index_circle(l, k, n) {
            Ok(1) => Some(QuotientId::Sphere(sphere_dim)),
            Ok(2) => Some(QuotientId::Projective(sphere_dim)),
            Ok(ix) => Some(QuotientId::Lens(ix)),
            Err(_) => None,
        },
        None => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    fn q(k: &str, h: &str) -> QuotientId {
        classify_quotient(&parse_group(k).unwrap(), &parse_group(h).unwrap()).unwrap()
    }

    #[test]
    fn exceptional_rows() {
        assert_eq!(q("G2", "SU(3)"), QuotientId::Sphere(6));
        assert_eq!(q("Spin(7)", "G2"), QuotientId::Sphere(7));
        assert_eq!(q("Spin(9)", "Spin(7)"), QuotientId::Sphere(15));
    }

    #[test]
    fn orthogonal_rows() {
        assert_eq!(q("SO(7) in SO(7)", "SO(6)@[1..6] in SO(7)"), QuotientId::Sphere(6));
        assert_eq!(
            q("Z2.SO(8) in SO(9)", "Z2.SO(7)@[1..7] in SO(9)"),
            QuotientId::Sphere(7)
        );
        // SO(j+1)/O(j) is projective
        assert_eq!(q("SO(6) in SO(6)", "Z2.SO(5)@[1..5] in SO(6)"), QuotientId::Projective(5));
    }

    #[test]
    fn unitary_circle_families() {
        // A.3 circles always give the sphere
        assert_eq!(
            q("U(3)@[1..3] in SO(7)", "S1[w(4,-1,-1,0)]xSU(2)@[2..3] in SO(7)"),
            QuotientId::Sphere(5)
        );
        // the projective family: l = (k+2)(n-1), k odd
        assert_eq!(
            q("U(3)@[1..3] in SO(7)", "S1[w(6,-1,-1,0)]xSU(2)@[2..3] in SO(7)"),
            QuotientId::Projective(5)
        );
        // lens-type indices are flagged, not errored
        assert_eq!(
            q("U(3)@[1..3] in SO(7)", "S1[w(10,-1,-1,0)]xSU(2)@[2..3] in SO(7)"),
            QuotientId::Lens(4)
        );
    }

    #[test]
    fn symplectic_pair_rows() {
        assert_eq!(
            q("Sp(2)@[1..2]xSp(1)@[3..3] in Sp(3)", "Sp(1)@[1..1]xSp(1)#dsp1@[2..3] in Sp(3)"),
            QuotientId::Sphere(7)
        );
        assert_eq!(
            q(
                "S1[w(1,0,0)]xSp(2)@[2..3] in Sp(3)",
                "S1[w(1,3,0)]xSp(1)@[3..3] in Sp(3)"
            ),
            QuotientId::Sphere(7)
        );
    }

    #[test]
    fn composite_shrinks() {
        // S(U(1)U(2)) over the circle diag(zbar, z, 1): a 3-sphere
        assert_eq!(q("SU{1,2} in SU(3)", "S1[w(-1,1,0)] in SU(3)"), QuotientId::Sphere(3));
        // S(U(2)U(2)) over S1 SU(2): the SU(2) slot vanishes
        assert_eq!(
            q("SU{2,2} in SU(4)", "S1[w(-2,4,-1,-1)]xSU(2)@[3..4] in SU(4)"),
            QuotientId::Sphere(3)
        );
        // S(U(1)U(3)) over the same group: the 5-sphere family
        assert_eq!(
            q("SU{1,3} in SU(4)", "S1[w(-2,4,-1,-1)]xSU(2)@[3..4] in SU(4)"),
            QuotientId::Sphere(5)
        );
    }

    #[test]
    fn sigma_conjugated_side() {
        assert_eq!(
            q("SU{1,3}#sigma(2,1,3,4) in SU(4)", "S1[w(1,-1,0,0)]xSU(2)@[3..4] in SU(4)"),
            QuotientId::Sphere(5)
        );
        assert_eq!(
            q("SU{1,3} in SU(4)", "S1[w(1,-1,0,0)]xSU(2)@[3..4] in SU(4)"),
            QuotientId::Sphere(5)
        );
    }

    #[test]
    fn low_rank_degenerations() {
        assert_eq!(q("SU(2)@[1..2] in SU(3)", "S1[w(1,-1,0)] in SU(3)"), QuotientId::Sphere(2));
        assert_eq!(q("SO(3) in SU(3)", "S1[w(1,-1,0)] in SU(3)"), QuotientId::Sphere(2));
        assert_eq!(q("SU{1,1,1} in SU(3)", "S1[w(1,-1,0)] in SU(3)"), QuotientId::Sphere(1));
        assert_eq!(
            q("Z3.SU{1,1,1} in SU(3)", "Z3.S1[w(1,-1,0)] in SU(3)"),
            QuotientId::Sphere(1)
        );
    }

    #[test]
    fn projective_spin_images() {
        assert_eq!(
            q("SO(2)@[1..2]xSO(5)@[3..7] in SO(7)", "S1[w(2,1,1,0)]xSU(2)@[2..3] in SO(7)"),
            QuotientId::Projective(7)
        );
        assert_eq!(q("SO(6) in SO(7)", "SU(3)@[1..3] in SO(7)"), QuotientId::Projective(7));
    }

    #[test]
    fn spin_avatar_rows() {
        // Spin(7)/Spin(6) = S^6 with Spin(6) presented as SU(4)
        assert_eq!(q("Spin(7)#spin7so8 in SO(8)", "SU(4)@[1..4] in SO(8)"), QuotientId::Sphere(6));
        // Spin(6)/Spin(5) = S^5 presented as SU(4)/Sp(2)
        assert_eq!(q("SU(4)", "Sp(2)"), QuotientId::Sphere(5));
    }

    #[test]
    fn two_circle_families_distinguish_sphere_from_projective() {
        // the two placements of the trivial plane of SU(4) inside SU(6):
        // one leaves a sphere, the other only a projective quotient
        // (the second circle meets the block with a non-primitive pattern)
        let h = "S1[w(1,0,-1,0,0,0)]xS1[w(-3,-3,-3,3,3,3)]xSU(3)@[4..6] in SU(6)";
        // the big block fixes e2 + e3: both circles meet it, a sphere
        let kp_sphere = "SU{1,1,4}#sigma(2,3,1,4,5,6) in SU(6)";
        assert_eq!(
            q(kp_sphere, h),
            QuotientId::Sphere(7),
            "two circles meet the block: the family acts as a sphere"
        );
        // the big block fixes e1 + e3: only the second circle meets it,
        // with the index-two pattern
        let kp_proj = "SU{1,1,4}#sigma(1,3,2,4,5,6) in SU(6)";
        assert_eq!(
            q(kp_proj, h),
            QuotientId::Projective(7),
            "one circle meets the block with the index-two pattern"
        );
    }

    #[test]
    fn not_recognized_and_errors() {
        assert_eq!(q("Sp(2)", "SU(2)"), QuotientId::NotRecognized);
        assert!(classify_quotient(
            &parse_group("SU(2)").unwrap(),
            &parse_group("SU(3)").unwrap()
        )
        .is_err());
    }
}
