//! Group diagrams {G, K-, K+, H} and their decidable necessary conditions.
//!
//! A diagram carries a sphere witness for each inclusion H < K±; the Euler
//! characteristic of the glued manifold is
//! chi(M) = chi(G/K-) + chi(G/K+) - chi(G/H)
//! and its dimension is dim G - dim H + 1.

use crate::groups::{
    self, factor_real_support, Ambient, CenterOrder, ClassicalFamily, Factor, FactorKind,
    GroupExpr, SpecialTag,
};
use crate::homogeneous::{self, EulerError};
use crate::spheres::{classify_quotient_full, QuotientId};
use serde::Serialize;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SphereWitness {
    pub quotient: QuotientId,
    /// dimension of the slice sphere, always dim K - dim H
    pub l: u32,
    pub kernel_factor_count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub g: GroupExpr,
    pub k_minus: GroupExpr,
    pub k_plus: GroupExpr,
    pub h: GroupExpr,
    pub w_minus: SphereWitness,
    pub w_plus: SphereWitness,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("isotropy group exceeds a singular group: {0}")]
    BadDimensions(String),
    #[error("euler characteristic failure: {0}")]
    Euler(#[from] EulerError),
    #[error("dim M = {dim} is odd while chi(M) = {chi} is positive")]
    OddPositive { dim: u64, chi: i128 },
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub verdict: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.verdict)
    }

    fn push(&mut self, check: &str, verdict: bool, detail: impl Into<String>) {
        self.checks.push(CheckResult { check: check.into(), verdict, detail: detail.into() });
    }
}

fn witness(k: &GroupExpr, h: &GroupExpr) -> SphereWitness {
    let matched = classify_quotient_full(k, h).ok();
    let quotient = matched.map(|m| m.id).unwrap_or(QuotientId::NotRecognized);
    let kernel = matched.map(|m| m.kernel_factors).unwrap_or(0);
    let l = groups::dim(k).saturating_sub(groups::dim(h)) as u32;
    SphereWitness { quotient, l, kernel_factor_count: kernel }
}

impl Diagram {
    /// Assemble a diagram, computing both sphere witnesses.
    pub fn assemble(
        g: GroupExpr,
        k_minus: GroupExpr,
        k_plus: GroupExpr,
        h: GroupExpr,
    ) -> Diagram {
        let w_minus = witness(&k_minus, &h);
        let w_plus = witness(&k_plus, &h);
        Diagram { g, k_minus, k_plus, h, w_minus, w_plus }
    }

    pub fn swapped(&self) -> Diagram {
        Diagram {
            g: self.g.clone(),
            k_minus: self.k_plus.clone(),
            k_plus: self.k_minus.clone(),
            h: self.h.clone(),
            w_minus: self.w_plus,
            w_plus: self.w_minus,
        }
    }
}

/// chi(M) by the Mayer-Vietoris consequence for the double disc bundle.
pub fn euler_char_m(d: &Diagram) -> Result<i128, DiagramError> {
    let a = homogeneous::euler_char(&d.g, &d.k_minus)? as i128;
    let b = homogeneous::euler_char(&d.g, &d.k_plus)? as i128;
    let c = homogeneous::euler_char(&d.g, &d.h)? as i128;
    Ok(a + b - c)
}

/// dim M = dim G/H + 1; it must be even whenever chi(M) > 0.
pub fn dim_m(d: &Diagram) -> Result<u64, DiagramError> {
    let dg = groups::dim(&d.g);
    let dh = groups::dim(&d.h);
    if dh >= dg {
        return Err(DiagramError::BadDimensions(format!(
            "dim H = {dh} must be smaller than dim G = {dg}"
        )));
    }
    let dim = dg - dh + 1;
    let chi = euler_char_m(d)?;
    if chi > 0 && dim % 2 == 1 {
        return Err(DiagramError::OddPositive { dim, chi });
    }
    Ok(dim)
}

// ---------------------------------------------------------------------------
// Factor-level inclusion checks
// ---------------------------------------------------------------------------

fn resolved_supports(g: &GroupExpr) -> Vec<Option<BTreeSet<u32>>> {
    let ambient = match g.ambient {
        Some(a) => a,
        None => return g.factors.iter().map(|_| None).collect(),
    };
    let mut supports: Vec<Option<BTreeSet<u32>>> =
        g.factors.iter().map(|f| factor_real_support(f, ambient)).collect();
    // a single unresolved named factor occupies what is left over
    let unresolved: Vec<usize> =
        supports.iter().enumerate().filter(|(_, s)| s.is_none()).map(|(i, _)| i).collect();
    if unresolved.len() == 1 {
        let idx = unresolved[0];
        if let Some(tag) = g.factors[idx].embedding.special {
            let span = groups::special_tag_span(tag) as usize;
            let taken: BTreeSet<u32> =
                supports.iter().flatten().flat_map(|s| s.iter().copied()).collect();
            let free: Vec<u32> = (1..=ambient.size).filter(|r| !taken.contains(r)).collect();
            if free.len() >= span {
                // by convention the trailing free coordinates
                supports[idx] = Some(free[free.len() - span..].iter().copied().collect());
            }
        }
    }
    supports
}

/// Can the subgroup factor `h` sit inside the factor `k` (coarse kind and
/// support compatibility)?
fn factor_fits(h: &Factor, hs: &Option<BTreeSet<u32>>, k: &Factor, ks: &Option<BTreeSet<u32>>) -> bool {
    if let (Some(hs), Some(ks)) = (hs, ks) {
        if !hs.is_subset(ks) {
            return false;
        }
    }
    use FactorKind::*;
    let hk = &h.kind;
    let kk = &k.kind;
    if groups::abstractly_isomorphic(hk, kk) {
        return true;
    }
    match (hk, kk) {
        (Torus(_), _) => true, // circles fit anywhere their support fits
        (SpecialUnitary(a), SpecialUnitary(b)) => a <= b,
        (SpecialUnitary(a), Unitary(b)) => a <= b,
        (SpecialUnitary(a), SUnitaryProduct(parts)) => parts.iter().any(|p| a <= p),
        (SpecialUnitary(a), SpecialOrthogonal(b)) => 2 * a <= *b,
        (SpecialUnitary(a), Symplectic(b)) => a <= b,
        (SpecialUnitary(3), ExceptionalG2) => true,
        (SpecialUnitary(4), SpinCover(7)) => true, // Spin(6) in Spin(7)
        (Unitary(a), Unitary(b)) => a <= b,
        (Unitary(a), SpecialOrthogonal(b)) => 2 * a <= *b,
        (Unitary(a), Symplectic(b)) => a <= b,
        (Unitary(a), SUnitaryProduct(parts)) => parts.iter().any(|p| a < p),
        (SpecialOrthogonal(a), SpecialOrthogonal(b)) => a <= b,
        (SpecialOrthogonal(a), SpecialUnitary(b)) => a <= b,
        (SpecialOrthogonal(a), Unitary(b)) => a <= b,
        (SpecialOrthogonal(a), Symplectic(b)) => a <= b,
        (SpecialOrthogonal(3), ExceptionalG2) => true,
        (SpinCover(a), SpinCover(b)) => a <= b,
        (Symplectic(a), Symplectic(b)) => a <= b,
        (Symplectic(a), SpecialUnitary(b)) => 2 * a <= *b,
        (Symplectic(a), Unitary(b)) => 2 * a <= *b,
        (Symplectic(2), SpinCover(7)) => true, // Spin(5) in Spin(7)
        (ExceptionalG2, SpinCover(7)) => true,
        (ExceptionalG2, SpecialOrthogonal(b)) => 7 <= *b,
        _ => false,
    }
}

fn inclusion_consistent(h: &GroupExpr, k: &GroupExpr) -> bool {
    let hs = resolved_supports(h);
    let ks = resolved_supports(k);
    // every H factor must fit inside some K factor or be a circle spread
    // across several of them (diagonal); model the latter by allowing
    // circles whose support is covered by the union of K supports
    let union_k: Option<BTreeSet<u32>> = {
        let mut acc = BTreeSet::new();
        let mut complete = true;
        for s in &ks {
            match s {
                Some(s) => acc.extend(s.iter().copied()),
                None => complete = false,
            }
        }
        if complete {
            Some(acc)
        } else {
            None
        }
    };
    'outer: for (i, hf) in h.factors.iter().enumerate() {
        // circles and diagonally embedded factors may spread across
        // several K factors; their support only needs to stay inside K
        let diagonal = matches!(hf.kind, FactorKind::Torus(_))
            || hf.embedding.special == Some(SpecialTag::DeltaSp1)
            || hf.embedding.du1.is_some();
        if diagonal {
            if let (Some(hsup), Some(uk)) = (&hs[i], &union_k) {
                if hsup.is_subset(uk) {
                    continue 'outer;
                }
                // fall through to per-factor matching before giving up
            } else {
                continue 'outer;
            }
        }
        if diagonal {
            for (j, kf) in k.factors.iter().enumerate() {
                if factor_fits(hf, &hs[i], kf, &ks[j]) {
                    continue 'outer;
                }
            }
            return false;
        }
        for (j, kf) in k.factors.iter().enumerate() {
            if factor_fits(hf, &hs[i], kf, &ks[j]) {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn embedding_consistent(g: &GroupExpr) -> bool {
    let ambient = match g.ambient {
        Some(a) => a,
        None => return true,
    };
    if groups::rank(g) > ambient.rank() || groups::dim(g) > ambient.dim() {
        return false;
    }
    let supports = resolved_supports(g);
    // diagonal embeddings legitimately share coordinates with blocks
    let plain_block = |f: &Factor| {
        f.embedding.block.is_some() && f.embedding.special.is_none() && f.embedding.du1.is_none()
    };
    for (i, f) in g.factors.iter().enumerate() {
        if f.embedding.block.is_none() {
            continue;
        }
        if let Some(s) = &supports[i] {
            if s.iter().any(|&r| r == 0 || r > ambient.size) {
                return false;
            }
            if !plain_block(f) {
                continue;
            }
            for (j, other) in g.factors.iter().enumerate() {
                if j <= i || !plain_block(other) {
                    continue;
                }
                if let Some(t) = &supports[j] {
                    if s.intersection(t).next().is_some() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// The validation report: witness recognition, positivity of the slice
/// dimensions, factor-level inclusions and coordinate consistency.
pub fn validate_diagram(d: &Diagram) -> Report {
    let mut report = Report { checks: vec![] };
    for (side, w, k) in
        [("-", &d.w_minus, &d.k_minus), ("+", &d.w_plus, &d.k_plus)]
    {
        report.push(
            &format!("witness{side}"),
            w.quotient.is_sphere_or_projective(),
            format!("K{side}/H = {:?}", w.quotient),
        );
        report.push(&format!("slice{side}"), w.l >= 1, format!("l{side} = {}", w.l));
        report.push(
            &format!("witness_dim{side}"),
            w.quotient.dim().map(|m| m == w.l).unwrap_or(true),
            format!("pattern dim vs l{side}"),
        );
        report.push(
            &format!("rank_chain{side}"),
            groups::rank(&d.h) <= groups::rank(k) && groups::rank(k) <= groups::rank(&d.g),
            format!(
                "rank H = {}, rank K{side} = {}, rank G = {}",
                groups::rank(&d.h),
                groups::rank(k),
                groups::rank(&d.g)
            ),
        );
        report.push(
            &format!("inclusion{side}"),
            inclusion_consistent(&d.h, k),
            format!("factor matching H into K{side}"),
        );
        report.push(
            &format!("embedding{side}"),
            embedding_consistent(k),
            format!("coordinate consistency of K{side}"),
        );
    }
    report.push(
        "embedding_h",
        embedding_consistent(&d.h),
        "coordinate consistency of H",
    );
    report
}

/// The five necessary conditions on a validated diagram.
pub fn necessary_filters(d: &Diagram) -> Report {
    let mut report = Report { checks: vec![] };
    let chi = euler_char_m(d).unwrap_or(0);
    let rg = groups::rank(&d.g);
    let (rkm, rkp) = (groups::rank(&d.k_minus), groups::rank(&d.k_plus));
    let (lm, lp) = (d.w_minus.l, d.w_plus.l);

    // F1: positive chi needs a full-rank singular group
    report.push(
        "F1_full_rank_side",
        chi <= 0 || rkm.max(rkp) == rg,
        format!("chi = {chi}, ranks {rkm}/{rkp} vs {rg}"),
    );

    // F2: a full-rank K+ with positive chi forces corank-1 H and odd l+
    let mut f2 = true;
    let mut f2_detail = String::from("not applicable");
    if chi > 0 {
        let rh = groups::rank(&d.h);
        if rkp == rg {
            f2 = rg - rh == 1 && lp % 2 == 1;
            f2_detail = format!("corank H = {}, l+ = {lp}", rg - rh);
        }
        if rkm == rg {
            f2 &= rg - rh == 1 && lm % 2 == 1;
            f2_detail = format!("corank H = {}, l- = {lm}, l+ = {lp}", rg - rh);
        }
    }
    report.push("F2_corank_one_odd_sphere", f2, f2_detail);

    // F3: connectivity forced by sphere dimensions
    let mut f3 = true;
    let mut notes = vec![];
    if lp > 1 && lm >= 1 && !d.k_minus.is_connected() {
        f3 = false;
        notes.push("K- must be connected (l+ > 1)");
    }
    if lm > 1 && lp >= 1 && !d.k_plus.is_connected() {
        f3 = false;
        notes.push("K+ must be connected (l- > 1)");
    }
    if lm > 1 && lp > 1 && !d.h.is_connected() {
        f3 = false;
        notes.push("H must be connected (both l > 1)");
    }
    report.push("F3_connectivity", f3, notes.join("; "));

    // F4: at most four factors on both singular sides
    let (fm, fp) = (groups::factor_count(&d.k_minus), groups::factor_count(&d.k_plus));
    report.push("F4_factor_bound", fm <= 4 && fp <= 4, format!("factors {fm}/{fp}"));

    // F5: kernel factors of K+ must occur among sphere isotropy factors,
    // and a four-factor K+ must split into an acting pair and an isotropy
    // pair of the transitive-action table
    let f5 = f5_kernel_and_split(&d.k_plus) && f5_kernel_and_split(&d.k_minus);
    report.push("F5_kernel_shapes", f5, "kernel factors match sphere isotropy shapes");

    report
}

fn f5_kernel_and_split(k: &GroupExpr) -> bool {
    // kernel factors (anything that could sit in H+) must be of a kind
    // occurring as an isotropy factor of a transitive sphere action:
    // all classical kinds, G2 and Spin(7) qualify; higher spin groups only
    // as the acting group
    for f in &k.factors {
        if let FactorKind::SpinCover(n) = f.kind {
            if n >= 8 && n != 9 {
                return false;
            }
        }
    }
    if groups::factor_count(k) == 4 {
        // collect the expanded factor kinds: (simple kinds, circle count)
        let mut simples: Vec<u32> = vec![]; // encoded: 0 circle, 1 su, 2 sp, 3 so, 4 other
        let mut circles = 0u32;
        for f in &k.factors {
            match &f.kind {
                FactorKind::Torus(r) => circles += r,
                FactorKind::Unitary(n) => {
                    circles += 1;
                    if *n >= 2 {
                        simples.push(1);
                    }
                }
                FactorKind::SUnitaryProduct(parts) => {
                    circles += parts.len() as u32 - 1;
                    for p in parts {
                        if *p >= 2 {
                            simples.push(1);
                        }
                    }
                }
                FactorKind::SpecialUnitary(_) => simples.push(1),
                FactorKind::Symplectic(_) => simples.push(2),
                FactorKind::SpecialOrthogonal(2) => circles += 1,
                FactorKind::SpecialOrthogonal(_) | FactorKind::SpinCover(_) => simples.push(3),
                FactorKind::ExceptionalG2 => simples.push(4),
            }
        }
        // acting pairs: {circle, SU} (unitary row), {Sp, Sp(1)-like},
        // {Sp, circle}; isotropy pairs: {circle, SU}, {Sp, Sp(1)}, {Sp, circle}
        let pair_ok = |a: u32, b: u32| -> bool {
            matches!(
                (a.min(b), a.max(b)),
                (0, 1) // circle + SU: the unitary row on either side
                | (0, 2) // circle + Sp
                | (2, 2) // Sp + Sp(1)
            )
        };
        let total = simples.len() as u32 + circles;
        if total == 4 {
            // enumerate 2+2 splits over the multiset
            let mut items: Vec<u32> = simples.clone();
            for _ in 0..circles {
                items.push(0);
            }
            let n = items.len();
            for i in 0..n {
                for j in i + 1..n {
                    let rest: Vec<u32> = (0..n)
                        .filter(|&t| t != i && t != j)
                        .map(|t| items[t])
                        .collect();
                    if pair_ok(items[i], items[j]) && pair_ok(rest[0], rest[1]) {
                        return true;
                    }
                }
            }
            return false;
        }
    }
    true
}

/// A sound detector for the easy non-primitivity witnesses: equality of
/// the singular groups, or a shared trivial coordinate (then both sit in
/// the corresponding stabilizer subgroup). Absence of a witness means
/// "unknown", never "primitive".
pub fn non_primitivity_witness(d: &Diagram) -> Option<String> {
    let km = groups::normalize_group(&d.k_minus);
    let kp = groups::normalize_group(&d.k_plus);
    if km == kp && groups::dim(&km) < groups::dim(&d.g) {
        return Some("the singular groups coincide".into());
    }
    let ambient = d.g.ambient.or_else(|| match &d.g.factors.first()?.kind {
        FactorKind::SpecialUnitary(n) => Some(Ambient::new(ClassicalFamily::SU, *n)),
        FactorKind::SpecialOrthogonal(n) => Some(Ambient::new(ClassicalFamily::SO, *n)),
        FactorKind::SpinCover(n) => Some(Ambient::new(ClassicalFamily::Spin, *n)),
        FactorKind::Symplectic(n) => Some(Ambient::new(ClassicalFamily::Sp, *n)),
        _ => None,
    })?;
    let coverage = |g: &GroupExpr| -> Option<BTreeSet<u32>> {
        let supports = resolved_supports(g);
        let mut acc = BTreeSet::new();
        for s in supports {
            acc.extend(s?);
        }
        Some(acc)
    };
    let cm = coverage(&d.k_minus)?;
    let cp = coverage(&d.k_plus)?;
    for r in 1..=ambient.size {
        if !cm.contains(&r) && !cp.contains(&r) {
            return Some(format!(
                "both singular groups act trivially on coordinate {r}"
            ));
        }
    }
    None
}

/// Normal form: normalize all four groups and orient the pair so that the
/// full-rank side (when unique) is K+, breaking ties by the canonical key.
pub fn normalize_diagram(d: &Diagram) -> Diagram {
    let g = groups::normalize_group(&d.g);
    let km = groups::normalize_group(&d.k_minus);
    let kp = groups::normalize_group(&d.k_plus);
    let h = groups::normalize_group(&d.h);
    let rg = groups::rank(&g);
    let (rm, rp) = (groups::rank(&km), groups::rank(&kp));
    let swap = if rm == rg && rp != rg {
        true
    } else if rp == rg && rm != rg {
        false
    } else {
        // canonical order on the formatted text
        groups::format_group(&km) > groups::format_group(&kp)
    };
    let (km, kp, wm, wp) = if swap {
        (kp, km, d.w_plus, d.w_minus)
    } else {
        (km, kp, d.w_minus, d.w_plus)
    };
    Diagram { g, k_minus: km, k_plus: kp, h, w_minus: wm, w_plus: wp }
}

// ---------------------------------------------------------------------------
// Kernel of the action: central elements of G inside H
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KernelOrder {
    Finite(u64),
    Infinite,
    Unknown,
}

/// Order of the intersection of H with the center of a simple classical G.
/// Central elements are scalars zeta * Id; membership in H is decided by
/// solving the weight congruences of H's circles together with the scalar
/// sets its blocks can realize.
pub fn action_kernel_order(d: &Diagram) -> KernelOrder {
    let center = match groups::center_order(&d.g) {
        Ok(CenterOrder::Finite(m)) => m,
        Ok(CenterOrder::Infinite) => return KernelOrder::Infinite,
        Err(_) => return KernelOrder::Unknown,
    };
    let ambient = match d.g.ambient.or_else(|| {
        d.g.factors.first().and_then(|f| match &f.kind {
            FactorKind::SpecialUnitary(n) => Some(Ambient::new(ClassicalFamily::SU, *n)),
            FactorKind::SpecialOrthogonal(n) => Some(Ambient::new(ClassicalFamily::SO, *n)),
            FactorKind::SpinCover(n) => Some(Ambient::new(ClassicalFamily::Spin, *n)),
            FactorKind::Symplectic(n) => Some(Ambient::new(ClassicalFamily::Sp, *n)),
            _ => None,
        })
    }) {
        Some(a) => a,
        None => return KernelOrder::Unknown,
    };
    if center == 1 {
        return KernelOrder::Finite(1);
    }
    let mut contained = 0u64;
    for j in 0..center {
        match central_element_in_group(&d.h, ambient, j, center) {
            Some(true) => contained += 1,
            Some(false) => {}
            None => return KernelOrder::Unknown,
        }
    }
    KernelOrder::Finite(contained.max(1))
}

/// Is zeta^j * Id in H, where zeta = exp(2 pi i / m) generates the center?
/// Works with exponents mod L = lcm of m and the weight spread.
fn central_element_in_group(h: &GroupExpr, ambient: Ambient, j: u64, m: u64) -> Option<bool> {
    if j == 0 {
        return Some(true);
    }
    // the scalar each ambient slot must receive, as an exponent mod m
    // (for Sp/SO ambients the center is {±1}: j = m/2 means -1)
    let slots = ambient.slot_count() as usize;

    // collect circles and block scalar freedoms
    let mut circles: Vec<Vec<i64>> = vec![];
    struct BlockInfo {
        slots: Vec<usize>,
        scalar_orders: Option<Vec<u64>>, // allowed scalar orders (None = any scalar)
    }
    let mut blocks: Vec<BlockInfo> = vec![];
    // natural slot width of a block-less factor, for greedy placement
    let natural_width = |kind: &FactorKind| -> Option<u32> {
        match kind {
            FactorKind::SpecialUnitary(n) | FactorKind::Unitary(n) => Some(*n),
            FactorKind::SUnitaryProduct(parts) => Some(parts.iter().sum()),
            FactorKind::Symplectic(n) => Some(*n),
            FactorKind::SpecialOrthogonal(n) | FactorKind::SpinCover(n) => {
                Some(n.div_ceil(2))
            }
            FactorKind::ExceptionalG2 => Some(4),
            FactorKind::Torus(_) => None,
        }
    };
    let mut cursor: u32 = 1;
    for f in &h.factors {
        if let Some((w, field)) = &f.embedding.weights {
            if f.embedding.sigma.is_some() {
                return None;
            }
            let _ = field;
            circles.push(w.clone());
            continue;
        }
        let span: Vec<usize> = match f.embedding.block {
            Some((lo, hi)) => {
                let so_kind = matches!(
                    f.kind,
                    FactorKind::SpecialOrthogonal(_)
                        | FactorKind::SpinCover(_)
                        | FactorKind::ExceptionalG2
                );
                let so_ambient = matches!(
                    ambient.family,
                    ClassicalFamily::SO | ClassicalFamily::Spin
                );
                if so_ambient && so_kind {
                    // real coordinates; slot set they cover
                    (lo..=hi).map(|r| (r.div_ceil(2) as usize).min(slots)).collect::<BTreeSet<_>>().into_iter().collect()
                } else {
                    (lo as usize..=hi as usize).collect()
                }
            }
            None => {
                if f.embedding.special.is_some() || f.embedding.sigma.is_some() {
                    // named specials without position data are undecidable
                    // for nontrivial scalars
                    return None;
                }
                match natural_width(&f.kind) {
                    Some(wd) => {
                        let lo = cursor;
                        cursor += wd;
                        if cursor as usize > slots + 1 {
                            return None;
                        }
                        (lo as usize..(lo + wd) as usize).collect()
                    }
                    None => return None,
                }
            }
        };
        let orders: Option<Vec<u64>> = match &f.kind {
            FactorKind::SpecialUnitary(n) => {
                Some((1..=*n as u64).filter(|d| n.is_multiple_of(&(*d as u32))).collect())
            }
            FactorKind::Unitary(_) => None, // any scalar
            FactorKind::SUnitaryProduct(_) => None, // the S-condition is checked globally
            FactorKind::Symplectic(_) => Some(vec![1, 2]),
            FactorKind::SpecialOrthogonal(n) => {
                if n % 2 == 0 {
                    Some(vec![1, 2])
                } else {
                    Some(vec![1])
                }
            }
            FactorKind::SpinCover(_) => return None,
            FactorKind::ExceptionalG2 => Some(vec![1]),
            FactorKind::Torus(_) => None,
        };
        // dsp1-decorated Sp(1): scalars +-1 on both coordinates
        let orders = if f.embedding.special == Some(SpecialTag::DeltaSp1)
            || f.embedding.du1.is_some()
        {
            Some(vec![1, 2])
        } else if matches!(
            f.embedding.special,
            Some(SpecialTag::G2InSo7 | SpecialTag::IrrSo3InSo5 | SpecialTag::IrrSo3InSu3)
        ) {
            Some(vec![1])
        } else if f.embedding.special == Some(SpecialTag::Spin7InSo8) {
            Some(vec![1, 2])
        } else {
            orders
        };
        blocks.push(BlockInfo { slots: span, scalar_orders: orders });
    }

    // uncovered slots must receive the identity; the target there is
    // zeta^j which is nontrivial, so any uncovered slot kills membership
    let mut covered = vec![false; slots];
    for c in &circles {
        for (i, &w) in c.iter().enumerate() {
            if w != 0 && i < slots {
                covered[i] = true;
            }
        }
    }
    for b in &blocks {
        for &s in &b.slots {
            if s >= 1 && s <= slots {
                covered[s - 1] = true;
            }
        }
    }
    // for SO(2n+1) the unpaired coordinate can only carry +1, and the
    // central element is trivial there anyway
    let relevant_slots = if ambient.has_odd_real_slot() { slots - 1 } else { slots };
    if covered[..relevant_slots].iter().any(|c| !c) {
        return Some(false);
    }

    if circles.len() > 2 {
        return None;
    }
    // search circle parameters as roots of unity of order dividing L
    let max_w = circles
        .iter()
        .flat_map(|c| c.iter().map(|w| w.unsigned_abs()))
        .max()
        .unwrap_or(1)
        .max(1);
    let l = lcm(m, lcm(max_w, 2 * m)).min(5040);
    let target = (j * l / m) % l; // exponent of zeta^j in units of 2pi/L

    let check_assignment = |t: &[u64]| -> bool {
        // per-slot exponent from the circles
        let mut need_block_scalar: Vec<Option<u64>> = vec![None; slots + 1];
        for s in 1..=relevant_slots {
            let mut e: i128 = 0;
            for (ci, c) in circles.iter().enumerate() {
                let w = c.get(s - 1).copied().unwrap_or(0) as i128;
                e += w * t[ci] as i128;
            }
            let e = e.rem_euclid(l as i128) as u64;
            // the blocks covering s must make up the difference
            let deficit = (target + l - e) % l;
            need_block_scalar[s] = Some(deficit);
        }
        // each block must realize a single scalar on all its slots
        for b in &blocks {
            let mut wanted: Option<u64> = None;
            for &s in &b.slots {
                if s > relevant_slots {
                    continue;
                }
                match (wanted, need_block_scalar[s]) {
                    (None, Some(d)) => wanted = Some(d),
                    (Some(w), Some(d)) if w != d => return false,
                    _ => {}
                }
            }
            let w = wanted.unwrap_or(0);
            if let Some(orders) = &b.scalar_orders {
                // w as a root of unity: order = L / gcd(L, w)
                let ord = l / gcd_u(l, w.max(0));
                if !orders.contains(&ord) {
                    return false;
                }
            }
        }
        // slots covered only by circles need zero deficit
        for s in 1..=relevant_slots {
            let in_block = blocks.iter().any(|b| b.slots.contains(&s));
            if !in_block {
                if need_block_scalar[s] != Some(0) {
                    return false;
                }
            }
        }
        true
    };

    match circles.len() {
        0 => Some(check_assignment(&[])),
        1 => Some((0..l).any(|t| check_assignment(&[t]))),
        2 => {
            if l > 720 {
                return None;
            }
            Some((0..l).any(|t1| (0..l).any(|t2| check_assignment(&[t1, t2]))))
        }
        _ => None,
    }
}

fn gcd_u(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd_u(a, b) * b
}

trait IsMultiple {
    fn is_multiple_of(&self, d: &u32) -> bool;
}

impl IsMultiple for u32 {
    fn is_multiple_of(&self, d: &u32) -> bool {
        *d != 0 && self % d == 0
    }
}
