//! Candidate enumeration: maximal-rank subgroups for K+, sphere isotropy
//! shapes for H, inverse pattern growth for K-, then the necessary-condition
//! filters. The output is deliberately a superset of any true classification:
//! conjugacy and primitivity are not decided here.

use crate::diagram::{
    euler_char_m, necessary_filters, normalize_diagram, validate_diagram, Diagram,
};
use crate::groups::{
    self, Ambient, ClassicalFamily, Factor, FactorKind, GroupExpr, SpecialTag,
    WeightField,
};
use crate::maxrank::maximal_rank_subgroups;
use crate::spheres::gcd;
use serde::Serialize;
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct EnumConfig {
    pub max_factors: u32,
    pub kmax: i64,
    pub rank_bound: u32,
    pub include_projective: bool,
    pub dedupe: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            max_factors: 4,
            kmax: 8,
            rank_bound: 12,
            include_projective: false,
            dedupe: true,
        }
    }
}

fn ambient_of(g: &GroupExpr) -> Option<Ambient> {
    match &g.factors.first()?.kind {
        FactorKind::SpecialUnitary(n) => Some(Ambient::new(ClassicalFamily::SU, *n)),
        FactorKind::SpecialOrthogonal(n) => Some(Ambient::new(ClassicalFamily::SO, *n)),
        FactorKind::SpinCover(n) => Some(Ambient::new(ClassicalFamily::SO, *n)),
        FactorKind::Symplectic(n) => Some(Ambient::new(ClassicalFamily::Sp, *n)),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// K+ enumeration: maximal-rank subgroups in enumeration-friendly layouts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Part {
    SoEven(u32),
    SoOdd(u32),
    U(u32),
    Sp(u32),
    SuPart(u32), // one U(n_i) part of S(U(n_1)...U(n_k))
}

fn composition_of(k: &GroupExpr) -> Vec<Part> {
    let mut parts = vec![];
    for f in &k.factors {
        match &f.kind {
            FactorKind::SpecialOrthogonal(n) => {
                if n % 2 == 0 {
                    parts.push(Part::SoEven(*n))
                } else {
                    parts.push(Part::SoOdd(*n))
                }
            }
            FactorKind::Unitary(n) => parts.push(Part::U(*n)),
            FactorKind::Symplectic(n) => parts.push(Part::Sp(*n)),
            FactorKind::SUnitaryProduct(sizes) => {
                for s in sizes {
                    parts.push(Part::SuPart(*s));
                }
            }
            _ => {}
        }
    }
    parts
}

/// Lay a maximal-rank composition out for enumeration. In orthogonal
/// ambients, SO(2) parts come first (slot aligned), then U parts, then the
/// larger SO parts with the largest one at the tail where it can absorb the
/// unpaired coordinate of an odd ambient.
fn relayout(ambient: Ambient, parts: &[Part]) -> GroupExpr {
    let mut so2: Vec<u32> = vec![];
    let mut us: Vec<u32> = vec![];
    let mut sos: Vec<u32> = vec![];
    let mut sps: Vec<u32> = vec![];
    let mut su_parts: Vec<u32> = vec![];
    for p in parts {
        match p {
            Part::SoEven(2) => so2.push(2),
            Part::SoEven(n) | Part::SoOdd(n) => sos.push(*n),
            Part::U(n) => us.push(*n),
            Part::Sp(n) => sps.push(*n),
            Part::SuPart(n) => su_parts.push(*n),
        }
    }
    us.sort_unstable_by(|a, b| b.cmp(a));
    sos.sort_unstable(); // ascending; the largest goes last
    sps.sort_unstable_by(|a, b| b.cmp(a));
    let mut factors: Vec<Factor> = vec![];
    match ambient.family {
        ClassicalFamily::SU => {
            let mut sizes = su_parts;
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            factors.push(Factor::block(
                FactorKind::SUnitaryProduct(sizes),
                1,
                ambient.size,
            ));
        }
        ClassicalFamily::Sp => {
            let mut cursor = 1u32;
            for &u in &us {
                factors.push(Factor::block(FactorKind::Unitary(u), cursor, cursor + u - 1));
                cursor += u;
            }
            for &s in &sps {
                factors.push(Factor::block(FactorKind::Symplectic(s), cursor, cursor + s - 1));
                cursor += s;
            }
        }
        ClassicalFamily::SO | ClassicalFamily::Spin => {
            let mut real_cursor = 1u32;
            for _ in &so2 {
                factors.push(Factor::block(
                    FactorKind::SpecialOrthogonal(2),
                    real_cursor,
                    real_cursor + 1,
                ));
                real_cursor += 2;
            }
            let mut slot_cursor = real_cursor.div_ceil(2);
            for &u in &us {
                factors.push(Factor::block(FactorKind::Unitary(u), slot_cursor, slot_cursor + u - 1));
                slot_cursor += u;
            }
            real_cursor = 2 * (slot_cursor - 1) + 1;
            // all but the largest SO block, ascending from the cursor
            if !sos.is_empty() {
                let tail = *sos.last().unwrap();
                for &b in &sos[..sos.len() - 1] {
                    factors.push(Factor::block(
                        FactorKind::SpecialOrthogonal(b),
                        real_cursor,
                        real_cursor + b - 1,
                    ));
                    real_cursor += b;
                }
                factors.push(Factor::block(
                    FactorKind::SpecialOrthogonal(tail),
                    ambient.size - tail + 1,
                    ambient.size,
                ));
            }
        }
    }
    GroupExpr::new(factors).with_ambient(ambient)
}

/// Possibilities for K+: the maximal-rank subgroups, relaid, screened by
/// the factor bound (four-factor candidates must admit the acting/isotropy
/// pair split, which `necessary_filters` re-checks later).
pub fn enumerate_kplus(g: &GroupExpr, cfg: &EnumConfig) -> Vec<GroupExpr> {
    let ambient = match ambient_of(g) {
        Some(a) => a,
        None => return vec![],
    };
    let raw = match maximal_rank_subgroups(g, cfg.max_factors, true) {
        Ok(v) => v,
        Err(_) => return vec![],
    };
    let mut out = vec![];
    let mut seen = BTreeSet::new();
    for k in raw {
        let relaid = relayout(ambient, &composition_of(&k));
        if relaid.factors.is_empty() {
            continue;
        }
        let key = groups::format_group(&relaid);
        if seen.insert(key) {
            out.push(relaid);
        }
    }
    out.sort_by_key(groups::format_group);
    out
}

// ---------------------------------------------------------------------------
// H enumeration: isotropy shapes of sphere actions of K+
// ---------------------------------------------------------------------------

fn slots_of_block(f: &Factor, ambient: Ambient) -> Vec<u32> {
    let (lo, hi) = match f.embedding.block {
        Some(b) => b,
        None => return vec![],
    };
    let so_kind = matches!(
        f.kind,
        FactorKind::SpecialOrthogonal(_) | FactorKind::SpinCover(_) | FactorKind::ExceptionalG2
    );
    let so_ambient = matches!(ambient.family, ClassicalFamily::SO | ClassicalFamily::Spin);
    if so_ambient && so_kind {
        let mut slots: BTreeSet<u32> = BTreeSet::new();
        for r in lo..=hi {
            slots.insert(r.div_ceil(2).min(ambient.slot_count()));
        }
        slots.into_iter().collect()
    } else {
        (lo..=hi).collect()
    }
}

fn field_of(ambient: Ambient) -> WeightField {
    match ambient.family {
        ClassicalFamily::Sp => WeightField::Quaternionic,
        _ => WeightField::Complex,
    }
}

fn circle(ambient: Ambient, entries: &[(u32, i64)]) -> Factor {
    let mut w = vec![0i64; ambient.slot_count() as usize];
    for &(s, v) in entries {
        w[s as usize - 1] = v;
    }
    Factor::circle(w, field_of(ambient))
}

struct Emission {
    h: GroupExpr,
}

/// All isotropy-group candidates for transitive sphere actions of `kplus`.
pub fn enumerate_h(kplus: &GroupExpr, cfg: &EnumConfig) -> Vec<GroupExpr> {
    let ambient = match kplus.ambient {
        Some(a) => a,
        None => return vec![],
    };
    let mut out: Vec<Emission> = vec![];
    let factors = &kplus.factors;

    // expanded circle positions of K+ (coordinate circles: SO(2)/U(1) blocks)
    let kernel_circle_slots: Vec<u32> = factors
        .iter()
        .filter_map(|f| match f.kind {
            FactorKind::SpecialOrthogonal(2) | FactorKind::Unitary(1) => {
                slots_of_block(f, ambient).first().copied()
            }
            _ => None,
        })
        .collect();

    let rest_of = |skip: usize| -> Vec<Factor> {
        factors
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != skip)
            .map(|(_, f)| f.clone())
            .collect()
    };

    for (i, f) in factors.iter().enumerate() {
        let rest = rest_of(i);
        match &f.kind {
            // orthogonal row: SO(j) acts on S^{j-1} with isotropy SO(j-1)
            FactorKind::SpecialOrthogonal(j) if *j >= 3 => {
                let (lo, hi) = f.embedding.block.unwrap_or((1, *j));
                for (nlo, nhi) in [(lo + 1, hi), (lo, hi - 1)] {
                    let mut h = rest.clone();
                    if *j - 1 >= 2 {
                        h.push(Factor::block(FactorKind::SpecialOrthogonal(j - 1), nlo, nhi));
                    }
                    out.push(Emission { h: GroupExpr::new(h).with_ambient(ambient) });
                    if *j - 1 < 2 {
                        break;
                    }
                }
            }
            // circle rows: SO(2) and U(1) act on S^1 with finite isotropy
            FactorKind::SpecialOrthogonal(2) | FactorKind::Unitary(1) => {
                out.push(Emission { h: GroupExpr::new(rest.clone()).with_ambient(ambient) });
            }
            // symplectic row, including the diagonal pair shapes
            FactorKind::Symplectic(j) => {
                let (lo, hi) = f.embedding.block.unwrap_or((1, *j));
                // plain shrink, both ends
                for (nlo, nhi) in [(lo, hi - 1), (lo + 1, hi)] {
                    let mut h = rest.clone();
                    if *j >= 2 {
                        h.push(Factor::block(FactorKind::Symplectic(j - 1), nlo, nhi));
                    }
                    out.push(Emission { h: GroupExpr::new(h).with_ambient(ambient) });
                    if *j < 2 {
                        break;
                    }
                }
                // diagonal Sp(1): needs a neighbouring Sp(1) block
                for (u, other) in factors.iter().enumerate() {
                    if u == i {
                        continue;
                    }
                    if other.kind == FactorKind::Symplectic(1) {
                        if let (Some((alo, _)), Some((blo, bhi))) =
                            (other.embedding.block, f.embedding.block)
                        {
                            // the diagonal lives on the last coordinate of
                            // this block and the Sp(1) coordinate
                            if alo == bhi + 1 || alo + 1 == blo {
                                let dlo = bhi.min(alo);
                                let dhi = bhi.max(alo);
                                if dhi == dlo + 1 {
                                    let mut h: Vec<Factor> = factors
                                        .iter()
                                        .enumerate()
                                        .filter(|(j2, _)| *j2 != i && *j2 != u)
                                        .map(|(_, x)| x.clone())
                                        .collect();
                                    if *j >= 2 {
                                        h.push(Factor::block(
                                            FactorKind::Symplectic(j - 1),
                                            lo,
                                            hi - 1,
                                        ));
                                    }
                                    let mut d = Factor::special(
                                        FactorKind::Symplectic(1),
                                        SpecialTag::DeltaSp1,
                                    );
                                    d.embedding.block = Some((dlo, dhi));
                                    h.push(d);
                                    out.push(Emission {
                                        h: GroupExpr::new(h).with_ambient(ambient),
                                    });
                                }
                            }
                        }
                    }
                }
                // diagonal circle: a kernel circle pairs with this block
                for &s0 in &kernel_circle_slots {
                    for l in -cfg.kmax..=cfg.kmax {
                        // any other kernel coordinate circle may also twist
                        // into the pair; (0, 0) is the untwisted case
                        let others: Vec<&Factor> = factors
                            .iter()
                            .enumerate()
                            .filter(|(u, other)| {
                                *u != i
                                    && matches!(
                                        other.kind,
                                        FactorKind::SpecialOrthogonal(2) | FactorKind::Unitary(1)
                                    )
                                    && slots_of_block(other, ambient).first() != Some(&s0)
                            })
                            .map(|(_, other)| other)
                            .collect();
                        let twist_slots: Vec<Option<u32>> = std::iter::once(None)
                            .chain(
                                others
                                    .iter()
                                    .filter_map(|o| slots_of_block(o, ambient).first().copied())
                                    .map(Some),
                            )
                            .collect();
                        for s1 in twist_slots {
                            let twists: &[(i64, i64)] = match s1 {
                                None => &[(0, 0)],
                                Some(_) => &[(1, 1), (1, -1), (-1, 1), (1, 0), (0, 1)],
                            };
                            for &(t, u2) in twists {
                                let mut h = vec![];
                                for (u, other) in factors.iter().enumerate() {
                                    if u == i {
                                        continue;
                                    }
                                    let oslot = slots_of_block(other, ambient).first().copied();
                                    let is_coord_circle = matches!(
                                        other.kind,
                                        FactorKind::SpecialOrthogonal(2) | FactorKind::Unitary(1)
                                    );
                                    if is_coord_circle && oslot == Some(s0) {
                                        continue; // consumed by the diagonal
                                    }
                                    if is_coord_circle && s1.is_some() && oslot == s1 {
                                        // replaced by its twisted version
                                        h.push(circle(
                                            ambient,
                                            &[(s1.unwrap(), 1), (s0, t), (lo, u2)],
                                        ));
                                        continue;
                                    }
                                    h.push(other.clone());
                                }
                                if *j >= 2 {
                                    h.push(Factor::block(
                                        FactorKind::Symplectic(j - 1),
                                        lo + 1,
                                        hi,
                                    ));
                                }
                                h.push(circle(ambient, &[(s0, 1), (lo, l)]));
                                out.push(Emission {
                                    h: GroupExpr::new(h).with_ambient(ambient),
                                });
                            }
                        }
                    }
                }
            }
            // unitary rows on a plain U block
            FactorKind::Unitary(j) if *j >= 2 => {
                let (lo, hi) = f.embedding.block.unwrap_or((1, *j));
                // determinant circle dies: U(j)/SU(j) = S^1
                let mut h = rest.clone();
                h.push(Factor::block(FactorKind::SpecialUnitary(*j), lo, hi));
                out.push(Emission { h: GroupExpr::new(h).with_ambient(ambient) });
                // direct shrink U(j)/U(j-1) = S^{2j-1}, both ends
                if *j >= 2 {
                    for (nlo, nhi) in [(lo, hi - 1), (lo + 1, hi)] {
                        let mut h = rest.clone();
                        if *j - 1 >= 1 {
                            h.push(Factor::block(FactorKind::Unitary(j - 1), nlo, nhi));
                        }
                        out.push(Emission { h: GroupExpr::new(h).with_ambient(ambient) });
                        if *j - 1 < 1 {
                            break;
                        }
                    }
                }
                // the circle families S1_k SU(j-1), anchored at either end
                for (anchor_lo, slo, shi) in [(lo, lo + 1, hi), (hi, lo, hi - 1)] {
                    for k in -cfg.kmax..=cfg.kmax {
                        let mut h = rest.clone();
                        if *j >= 3 {
                            h.push(Factor::block(FactorKind::SpecialUnitary(j - 1), slo, shi));
                        }
                        let mut entries = vec![(anchor_lo, (k + 1) * (*j as i64 - 1))];
                        for s in slo..=shi {
                            entries.push((s, -k));
                        }
                        if entries.iter().all(|&(_, v)| v == 0) {
                            continue;
                        }
                        h.push(circle(ambient, &entries));
                        out.push(Emission { h: GroupExpr::new(h).with_ambient(ambient) });
                        // twisted families: a kernel circle couples to the block
                        for &s0 in &kernel_circle_slots {
                            for jtw in -2i64..=2 {
                                if jtw == 0 {
                                    continue;
                                }
                                let mut h = vec![];
                                for (u, other) in factors.iter().enumerate() {
                                    if u == i {
                                        continue;
                                    }
                                    match other.kind {
                                        FactorKind::SpecialOrthogonal(2)
                                        | FactorKind::Unitary(1)
                                            if slots_of_block(other, ambient).first()
                                                == Some(&s0) => {}
                                        _ => h.push(other.clone()),
                                    }
                                }
                                if *j >= 3 {
                                    h.push(Factor::block(
                                        FactorKind::SpecialUnitary(j - 1),
                                        slo,
                                        shi,
                                    ));
                                }
                                // basis circles of the twisted isotropy
                                // torus; the complement is either the
                                // standard family circle or the plain
                                // determinant direction of the sub-block
                                let b1 = circle(ambient, &[(s0, k + 1), (anchor_lo, -jtw)]);
                                let mut family = vec![(anchor_lo, k * (*j as i64 - 1))];
                                let mut det = vec![];
                                for s in slo..=shi {
                                    family.push((s, -(k + 1)));
                                    det.push((s, 1));
                                }
                                for b2 in [family, det] {
                                    let mut h2 = h.clone();
                                    if !b2.iter().all(|&(_, v)| v == 0) {
                                        h2.push(circle(ambient, &b2));
                                    }
                                    h2.push(b1.clone());
                                    out.push(Emission {
                                        h: GroupExpr::new(h2).with_ambient(ambient),
                                    });
                                }
                            }
                        }
                    }
                }
                // projective-level isotropy inside orthogonal ambients
                if cfg.include_projective
                    && matches!(ambient.family, ClassicalFamily::SO | ClassicalFamily::Spin)
                {
                    for k in (-cfg.kmax..=cfg.kmax).filter(|k| k % 2 != 0) {
                        let l = (k + 2) * (*j as i64 - 1);
                        if gcd(l.unsigned_abs(), k.unsigned_abs()) != 1 {
                            continue;
                        }
                        let mut h = rest.clone();
                        if *j >= 3 {
                            h.push(Factor::block(FactorKind::SpecialUnitary(j - 1), lo + 1, hi));
                        }
                        let mut entries = vec![(lo, l)];
                        for s in lo + 1..=hi {
                            entries.push((s, -k));
                        }
                        h.push(circle(ambient, &entries));
                        out.push(Emission { h: GroupExpr::new(h).with_ambient(ambient) });
                    }
                }
            }
            FactorKind::SUnitaryProduct(sizes) => {
                // the composite S(U(n1)...U(nk)) inside SU(n): each part of
                // size >= 2 can act; the determinant compensation lands on
                // one of the other parts
                let base = f.embedding.block.map(|(lo, _)| lo).unwrap_or(1);
                let mut part_slots: Vec<(u32, u32)> = vec![];
                let mut cursor = base;
                for &s in sizes {
                    part_slots.push((cursor, cursor + s - 1));
                    cursor += s;
                }
                for (pi, &psize) in sizes.iter().enumerate() {
                    if psize < 2 {
                        continue;
                    }
                    let (plo, phi) = part_slots[pi];
                    // the acting part plays U(psize); SU part of H
                    for k in -cfg.kmax..=cfg.kmax {
                        for (qi, &qsize) in sizes.iter().enumerate() {
                            if qi == pi {
                                continue;
                            }
                            let (qlo, qhi) = part_slots[qi];
                            // compensation: the part sum of the family
                            // circle is psize-1; spread it over part qi
                            let total = psize as i64 - 1;
                            let g = gcd(total.unsigned_abs(), qsize as u64) as i64;
                            let scale = qsize as i64 / g;
                            let comp = -total / g;
                            let mut parts_rest: Vec<u32> = sizes.clone();
                            parts_rest.remove(pi);
                            let mut h: Vec<Factor> = rest.clone();
                            // remaining SU parts (with their slots) stay
                            for (ri, &rsize) in sizes.iter().enumerate() {
                                if ri == pi || rsize < 2 {
                                    continue;
                                }
                                let (rlo, rhi) = part_slots[ri];
                                h.push(Factor::block(
                                    FactorKind::SpecialUnitary(rsize),
                                    rlo,
                                    rhi,
                                ));
                            }
                            if psize >= 3 {
                                h.push(Factor::block(
                                    FactorKind::SpecialUnitary(psize - 1),
                                    plo + 1,
                                    phi,
                                ));
                            }
                            let mut entries =
                                vec![(plo, scale * (k + 1) * (psize as i64 - 1))];
                            for s in plo + 1..=phi {
                                entries.push((s, -k * scale));
                            }
                            for s in qlo..=qhi {
                                entries.push((s, comp));
                            }
                            if entries.iter().all(|&(_, v)| v == 0) {
                                continue;
                            }
                            h.push(circle(ambient, &entries));
                            out.push(Emission { h: GroupExpr::new(h).with_ambient(ambient) });
                        }
                    }
                }
                // all parts of size one: a torus; emit bounded subtori
                if sizes.iter().all(|&s| s == 1) {
                    let r = sizes.len() as u32;
                    let bound = cfg.kmax.min(2);
                    let mut tuple = vec![0i64; r as usize];
                    emit_subtori(&mut tuple, 0, bound, &mut |w| {
                        if w.iter().sum::<i64>() != 0 || w.iter().all(|&x| x == 0) {
                            return;
                        }
                        let entries: Vec<(u32, i64)> = w
                            .iter()
                            .enumerate()
                            .map(|(s, &v)| (base + s as u32, v))
                            .collect();
                        let h = vec![circle(ambient, &entries)];
                        out.push(Emission { h: GroupExpr::new(h).with_ambient(ambient) });
                    });
                }
            }
            // projective rows for spin-level runs: SO(5)/SU(2), SO(6)/SU(3)
            FactorKind::SpecialOrthogonal(j @ (5 | 6)) if cfg.include_projective => {
                let (lo, _hi) = f.embedding.block.unwrap_or((1, *j));
                let sub = if *j == 5 { 2 } else { 3 };
                let slo = lo.div_ceil(2).max(1);
                let mut h = rest.clone();
                h.push(Factor::block(FactorKind::SpecialUnitary(sub), slo, slo + sub - 1));
                out.push(Emission { h: GroupExpr::new(h).with_ambient(ambient) });
            }
            _ => {}
        }
    }
    let mut result = vec![];
    let mut seen = BTreeSet::new();
    for e in out {
        let h = groups::normalize_group(&e.h);
        if h.factors.is_empty() {
            continue;
        }
        if seen.insert(groups::format_group(&h)) {
            result.push(h);
        }
    }
    result.sort_by_key(groups::format_group);
    result
}

fn emit_subtori(tuple: &mut Vec<i64>, idx: usize, bound: i64, f: &mut impl FnMut(&[i64])) {
    if idx == tuple.len() {
        f(tuple);
        return;
    }
    for v in -bound..=bound {
        tuple[idx] = v;
        emit_subtori(tuple, idx + 1, bound, f);
    }
}

// ---------------------------------------------------------------------------
// K- enumeration: inverse growth of H along the sphere-action table
// ---------------------------------------------------------------------------

/// Real coordinates taken by block factors (circles are diagonal and do
/// not obstruct growth; overlaps they cause are culled by validation).
fn occupied_reals(h: &GroupExpr, ambient: Ambient, skip: Option<usize>) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    for (i, f) in h.factors.iter().enumerate() {
        if Some(i) == skip || f.embedding.block.is_none() {
            continue;
        }
        if let Some(s) = groups::factor_real_support(f, ambient) {
            out.extend(s);
        }
    }
    out
}

fn slot_free(ambient: Ambient, occupied: &BTreeSet<u32>, slot: u32) -> bool {
    if slot == 0 || slot > ambient.slot_count() {
        return false;
    }
    if ambient.has_odd_real_slot() && slot == ambient.slot_count() {
        return false; // the unpaired coordinate is not a full slot
    }
    match ambient.family {
        ClassicalFamily::SO | ClassicalFamily::Spin => {
            !occupied.contains(&(2 * slot - 1)) && !occupied.contains(&(2 * slot))
        }
        _ => !occupied.contains(&slot),
    }
}

/// Reduced weights of a circle divided by their content.
fn reduced(weights: &[i64]) -> Vec<i64> {
    let g = weights.iter().fold(0u64, |acc, &w| gcd(acc, w.unsigned_abs()));
    if g <= 1 {
        return weights.to_vec();
    }
    weights.iter().map(|w| w / g as i64).collect()
}

/// Build the composite S(U(...)) representation of a collection of unitary
/// parts with explicit slot sets inside SU(n); a sigma permutation maps the
/// standard contiguous layout onto the actual slots.
fn su_composite(ambient: Ambient, parts: &[(u32, Vec<u32>)]) -> Option<GroupExpr> {
    let n = ambient.size;
    let mut sizes: Vec<u32> = vec![];
    let mut layout: Vec<u32> = vec![];
    let mut used: BTreeSet<u32> = BTreeSet::new();
    let mut parts = parts.to_vec();
    parts.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (size, slots) in &parts {
        if slots.len() != *size as usize {
            return None;
        }
        for &s in slots {
            if !used.insert(s) {
                return None;
            }
        }
        sizes.push(*size);
        layout.extend(slots.iter().copied());
    }
    // leftover slots become U(1) parts
    for s in 1..=n {
        if !used.contains(&s) {
            sizes.push(1);
            layout.push(s);
        }
    }
    if sizes.len() < 2 {
        return None;
    }
    let perm: Vec<i64> = layout.iter().map(|&s| s as i64).collect();
    let identity = perm.iter().enumerate().all(|(i, &v)| v == i as i64 + 1);
    let mut f = Factor::block(FactorKind::SUnitaryProduct(sizes), 1, n);
    if !identity {
        f.embedding.sigma = Some(perm);
    }
    Some(GroupExpr::new(vec![f]).with_ambient(ambient))
}

/// Replace factor `idx` of `h` by `new_factors` (the rest stays verbatim).
fn replace_factor(h: &GroupExpr, idx: usize, new_factors: Vec<Factor>) -> GroupExpr {
    let mut factors: Vec<Factor> = vec![];
    for (i, f) in h.factors.iter().enumerate() {
        if i == idx {
            factors.extend(new_factors.iter().cloned());
        } else {
            factors.push(f.clone());
        }
    }
    let mut out = GroupExpr::new(factors);
    out.ambient = h.ambient;
    out.component_order = 1; // candidates are generated connected
    out
}

pub fn enumerate_kminus(h: &GroupExpr, g: &GroupExpr, cfg: &EnumConfig) -> Vec<GroupExpr> {
    let ambient = match ambient_of(g) {
        Some(a) => a,
        None => return vec![],
    };
    let mut out: Vec<GroupExpr> = vec![];
    let su_ambient = ambient.family == ClassicalFamily::SU;

    for (i, f) in h.factors.iter().enumerate() {
        let occupied = occupied_reals(h, ambient, Some(i));
        match &f.kind {
            FactorKind::SpecialOrthogonal(j) if f.embedding.special.is_none() => {
                // SO(j) -> SO(j+1), absorbing a free real coordinate at
                // either end (orthogonal ambients only)
                if matches!(ambient.family, ClassicalFamily::SO | ClassicalFamily::Spin) {
                    if let Some((lo, hi)) = f.embedding.block {
                        for (nlo, nhi) in [(lo.saturating_sub(1), hi), (lo, hi + 1)] {
                            if nlo == 0 || nhi > ambient.size || (nlo, nhi) == (lo, hi) {
                                continue;
                            }
                            let new_real = if nlo < lo { nlo } else { nhi };
                            if occupied.contains(&new_real) {
                                continue;
                            }
                            out.push(replace_factor(
                                h,
                                i,
                                vec![Factor::block(
                                    FactorKind::SpecialOrthogonal(j + 1),
                                    nlo,
                                    nhi,
                                )],
                            ));
                        }
                    }
                }
            }
            FactorKind::SpecialUnitary(j) => {
                let (lo, hi) = match f.embedding.block {
                    Some(b) => b,
                    None => continue,
                };
                let slots: Vec<u32> = (lo..=hi).collect();
                // SU(j) -> SU(j+1) on any free slot (circle weights do not
                // obstruct: the grown block may absorb a weighted slot)
                let mut candidates: Vec<u32> =
                    (1..=ambient.slot_count()).filter(|&c| !slots.contains(&c)).collect();
                candidates.retain(|&c| slot_free(ambient, &occupied, c));
                candidates.sort_unstable();
                candidates.dedup();
                for c in candidates {
                    if slots.contains(&c) || !slot_free(ambient, &occupied, c) {
                        continue;
                    }
                    let mut new_slots = slots.clone();
                    new_slots.push(c);
                    new_slots.sort_unstable();
                    grow_unitary(h, i, ambient, &new_slots, *j + 1, su_ambient, cfg, &mut out);
                }
                // SU(3) -> G2 and SU(4) -> Spin(7) in orthogonal ambients
                if matches!(ambient.family, ClassicalFamily::SO | ClassicalFamily::Spin) {
                    if *j == 3 && ambient.size >= 7 {
                        let span: BTreeSet<u32> =
                            groups::factor_real_support(f, ambient).unwrap_or_default();
                        let free = (1..=ambient.size)
                            .filter(|r| !occupied.contains(r) || span.contains(r))
                            .count();
                        if free >= 7 {
                            out.push(replace_factor(
                                h,
                                i,
                                vec![Factor::special(
                                    FactorKind::ExceptionalG2,
                                    SpecialTag::G2InSo7,
                                )],
                            ));
                        }
                    }
                    if *j == 4 && ambient.size >= 8 {
                        out.push(replace_factor(
                            h,
                            i,
                            vec![Factor::special(
                                FactorKind::SpinCover(7),
                                SpecialTag::Spin7InSo8,
                            )],
                        ));
                    }
                    // spin-level projective growth SU(2) -> SO(5)
                    if cfg.include_projective && *j == 2 {
                        let span: Vec<u32> =
                            groups::factor_real_support(f, ambient).unwrap_or_default().into_iter().collect();
                        if span.len() == 4 {
                            let (rlo, rhi) = (span[0], span[3]);
                            for (nlo, nhi) in [(rlo.saturating_sub(1), rhi), (rlo, rhi + 1)] {
                                if nlo == 0 || nhi > ambient.size || nhi - nlo != 4 {
                                    continue;
                                }
                                let new_real = if nlo < rlo { nlo } else { nhi };
                                if occupied.contains(&new_real) {
                                    continue;
                                }
                                out.push(replace_factor(
                                    h,
                                    i,
                                    vec![Factor::block(
                                        FactorKind::SpecialOrthogonal(5),
                                        nlo,
                                        nhi,
                                    )],
                                ));
                            }
                            // the tail coordinate of an odd ambient
                            if ambient.has_odd_real_slot()
                                && !occupied.contains(&ambient.size)
                                && rhi + 1 != ambient.size
                            {
                                let mut fblock =
                                    Factor::block(FactorKind::SpecialOrthogonal(5), rlo, rhi + 1);
                                // represented via a signed permutation that
                                // brings the tail coordinate next to the block
                                let mut perm: Vec<i64> =
                                    (1..=ambient.size as i64).collect();
                                perm.swap(rhi as usize, ambient.size as usize - 1);
                                fblock.embedding.sigma = Some(perm);
                                out.push(replace_factor(h, i, vec![fblock]));
                            }
                        }
                    }
                }
            }
            FactorKind::Symplectic(j) if f.embedding.special.is_none() => {
                let (lo, hi) = match f.embedding.block {
                    Some(b) => b,
                    None => continue,
                };
                for c in [lo.checked_sub(1), Some(hi + 1)].into_iter().flatten() {
                    if c == 0 || c > ambient.size || !slot_free(ambient, &occupied, c) {
                        continue;
                    }
                    let (nlo, nhi) = (lo.min(c), hi.max(c));
                    if nhi - nlo != hi - lo + 1 {
                        continue;
                    }
                    out.push(replace_factor(
                        h,
                        i,
                        vec![Factor::block(FactorKind::Symplectic(j + 1), nlo, nhi)],
                    ));
                }
            }
            FactorKind::Unitary(j) => {
                let (lo, hi) = match f.embedding.block {
                    Some(b) => b,
                    None => continue,
                };
                for c in [lo.checked_sub(1), Some(hi + 1)].into_iter().flatten() {
                    if c == 0 || c > ambient.slot_count() || !slot_free(ambient, &occupied, c) {
                        continue;
                    }
                    let (nlo, nhi) = (lo.min(c), hi.max(c));
                    if su_ambient {
                        let slots: Vec<u32> = (nlo..=nhi).collect();
                        grow_unitary(h, i, ambient, &slots, *j + 1, true, cfg, &mut out);
                    } else {
                        out.push(replace_factor(
                            h,
                            i,
                            vec![Factor::block(FactorKind::Unitary(j + 1), nlo, nhi)],
                        ));
                    }
                }
            }
            FactorKind::Torus(1) => {
                if let Some((w, field)) = &f.embedding.weights {
                    let red = reduced(w);
                    let support: Vec<u32> = red
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(s, _)| s as u32 + 1)
                        .collect();
                    // circle -> SU(2)/U(2) on a two-slot support
                    if support.len() == 2 {
                        let (s1, s2) = (support[0], support[1]);
                        let (a, b) = (red[s1 as usize - 1], red[s2 as usize - 1]);
                        if a + b == 0 && s2 == s1 + 1 && *field != WeightField::Quaternionic {
                            out.push(replace_factor(
                                h,
                                i,
                                vec![Factor::block(FactorKind::SpecialUnitary(2), s1, s2)],
                            ));
                        }
                        // quaternionic circles inside an Sp(2) block
                        if *field == WeightField::Quaternionic && s2 == s1 + 1 {
                            let pat = (a.abs().min(b.abs()), a.abs().max(b.abs()));
                            if pat == (1, 1) {
                                let mut d =
                                    Factor::special(FactorKind::Symplectic(1), SpecialTag::DeltaSp1);
                                d.embedding.block = Some((s1, s2));
                                out.push(replace_factor(h, i, vec![d]));
                            }
                            if pat == (1, 3) {
                                let mut d = Factor::special(
                                    FactorKind::Symplectic(1),
                                    SpecialTag::IrrSo3InSo5,
                                );
                                d.embedding.block = Some((s1, s2));
                                out.push(replace_factor(h, i, vec![d]));
                            }
                        }
                        // complex (1,-1)-patterns open into the SO(3) whose
                        // maximal torus is the given diagonal circle
                        if *field != WeightField::Quaternionic && a + b == 0 && su_ambient {
                            for s3 in 1..=ambient.slot_count() {
                                if support.contains(&s3) || !slot_free(ambient, &occupied, s3) {
                                    continue;
                                }
                                let mut slots = vec![s1, s2, s3];
                                slots.sort_unstable();
                                if slots[2] - slots[0] == 2 {
                                    out.push(replace_factor(
                                        h,
                                        i,
                                        vec![Factor::block(
                                            FactorKind::SpecialOrthogonal(3),
                                            slots[0],
                                            slots[2],
                                        )],
                                    ));
                                }
                                break;
                            }
                        }
                        // quaternionic (1,-1) in an Sp ambient: the SO(3)
                        // whose diagonal torus is the circle
                        if *field == WeightField::Quaternionic && a + b == 0 {
                            for (nlo, nhi) in
                                [(s1.checked_sub(1), Some(s2)), (Some(s1), s2.checked_add(1))]
                            {
                                let (Some(nlo), Some(nhi)) = (nlo, nhi) else { continue };
                                if nlo == 0 || nhi > ambient.size || nhi - nlo != 2 {
                                    continue;
                                }
                                let extra = if nlo < s1 { nlo } else { nhi };
                                if !slot_free(ambient, &occupied, extra) {
                                    continue;
                                }
                                out.push(replace_factor(
                                    h,
                                    i,
                                    vec![Factor::block(
                                        FactorKind::SpecialOrthogonal(3),
                                        nlo,
                                        nhi,
                                    )],
                                ));
                            }
                        }
                        // the irreducible SO(3) in SO(5): torus weights (1, 2);
                        // the five-dimensional room is the two weight slots
                        // plus the unpaired coordinate of an odd ambient
                        if *field != WeightField::Quaternionic
                            && matches!(
                                ambient.family,
                                ClassicalFamily::SO | ClassicalFamily::Spin
                            )
                            && (a.abs().min(b.abs()), a.abs().max(b.abs())) == (1, 2)
                            && ambient.has_odd_real_slot()
                            && !occupied.contains(&ambient.size)
                        {
                            let m = ambient.size;
                            let room = [2 * s1 - 1, 2 * s1, 2 * s2 - 1, 2 * s2, m];
                            let base = [m - 4, m - 3, m - 2, m - 1, m];
                            let mut irr = Factor::special(
                                FactorKind::SpecialOrthogonal(3),
                                SpecialTag::IrrSo3InSo5,
                            );
                            irr.embedding.block = Some((m - 4, m));
                            if room != base {
                                // build the permutation sending base[i] to
                                // room[i] by successive transpositions
                                let mut perm: Vec<i64> = (1..=m as i64).collect();
                                for (b, r) in base.iter().zip(room.iter()) {
                                    let want = *r as i64;
                                    let at = *b as usize - 1;
                                    if perm[at] != want {
                                        let j2 =
                                            perm.iter().position(|&p| p == want).unwrap();
                                        perm.swap(at, j2);
                                    }
                                }
                                irr.embedding.sigma = Some(perm);
                            }
                            out.push(replace_factor(h, i, vec![irr]));
                        }
                    }
                    // a single-slot circle inside an orthogonal ambient can
                    // open into the standard SO(3) on an adjacent real
                    if support.len() == 1
                        && matches!(
                            ambient.family,
                            ClassicalFamily::SO | ClassicalFamily::Spin
                        )
                    {
                        let s = support[0];
                        let (r1, r2) = (2 * s - 1, 2 * s);
                        for extra in [r1.checked_sub(1), Some(r2 + 1)].into_iter().flatten() {
                            if extra == 0 || extra > ambient.size || occupied.contains(&extra) {
                                continue;
                            }
                            let (nlo, nhi) = (r1.min(extra), r2.max(extra));
                            if nhi - nlo == 2 {
                                out.push(replace_factor(
                                    h,
                                    i,
                                    vec![Factor::block(
                                        FactorKind::SpecialOrthogonal(3),
                                        nlo,
                                        nhi,
                                    )],
                                ));
                            }
                        }
                    }
                    // a circle can open into U(2) on any slot pair meeting
                    // its support (the other slot may carry weight zero)
                    let mut pairs: Vec<(u32, u32)> = vec![];
                    if support.len() == 2 {
                        pairs.push((support[0], support[1]));
                    }
                    for &s1 in &support {
                        for c in 1..=ambient.slot_count() {
                            if c == s1 || !slot_free(ambient, &occupied, c) {
                                continue;
                            }
                            pairs.push((s1.min(c), s1.max(c)));
                        }
                    }
                    pairs.sort_unstable();
                    pairs.dedup();
                    for (a, b) in pairs {
                        if su_ambient {
                            grow_unitary(h, i, ambient, &[a, b], 2, true, cfg, &mut out);
                        } else if b == a + 1 {
                            out.push(replace_factor(
                                h,
                                i,
                                vec![Factor::block(FactorKind::Unitary(2), a, b)],
                            ));
                        }
                    }
                }
            }
            _ => {}
        }
    }

    // a free circle can always be adjoined (the S^1 row backwards)
    {
        let occupied = occupied_reals(h, ambient, None);
        for s in 1..=ambient.slot_count() {
            if !slot_free(ambient, &occupied, s) {
                continue;
            }
            if ambient.family == ClassicalFamily::SU {
                // the determinant condition could not be met by a lone
                // coordinate circle; skip (torus growths are emitted by
                // the unitary arm)
                break;
            }
            let mut factors = h.factors.clone();
            factors.push(circle(ambient, &[(s, 1)]));
            let mut k = GroupExpr::new(factors);
            k.ambient = h.ambient;
            k.component_order = 1;
            out.push(k);
            break; // one canonical position suffices
        }
        // the SO(2) rotating a diagonal Sp(1) block
        for (i, f) in h.factors.iter().enumerate() {
            let _ = i;
            if f.embedding.special == Some(SpecialTag::DeltaSp1) {
                if let Some((lo, hi)) = f.embedding.block {
                    let mut factors = h.factors.clone();
                    factors.push(Factor::block(FactorKind::SpecialOrthogonal(2), lo, hi));
                    let mut k = GroupExpr::new(factors);
                    k.ambient = h.ambient;
                    k.component_order = 1;
                    out.push(k);
                }
            }
        }
    }

    // normalize, бound by rank/dim, dedupe
    let mut result = vec![];
    let mut seen = BTreeSet::new();
    for k in out {
        if groups::rank(&k) > groups::rank(g) || groups::dim(&k) > groups::dim(g) {
            continue;
        }
        let k = groups::normalize_group(&k);
        if seen.insert(groups::format_group(&k)) {
            result.push(k);
        }
    }
    result.sort_by_key(groups::format_group);
    result
}

/// Emit the unitary growth of factor `idx` of `h` on the given slot set:
/// inside SU(n) this becomes an S(U...) composite (with a signed
/// permutation when the layout is not contiguous); elsewhere a plain U
/// block when the slots are contiguous.
#[allow(clippy::too_many_arguments)]
fn grow_unitary(
    h: &GroupExpr,
    idx: usize,
    ambient: Ambient,
    slots: &[u32],
    size: u32,
    su_ambient: bool,
    _cfg: &EnumConfig,
    out: &mut Vec<GroupExpr>,
) {
    if su_ambient {
        // collect the other non-circle factors as parts
        let mut parts: Vec<(u32, Vec<u32>)> = vec![(size, slots.to_vec())];
        for (i, f) in h.factors.iter().enumerate() {
            if i == idx {
                continue;
            }
            match &f.kind {
                FactorKind::SpecialUnitary(j) => {
                    if let Some((lo, hi)) = f.embedding.block {
                        parts.push((*j, (lo..=hi).collect()));
                    } else {
                        return;
                    }
                }
                FactorKind::Torus(_) => {}
                _ => return, // mixed kinds in SU ambients are out of scope
            }
        }
        if let Some(k) = su_composite(ambient, &parts) {
            out.push(k);
        }
    } else {
        let (lo, hi) = (slots[0], *slots.last().unwrap());
        if hi - lo + 1 != slots.len() as u32 {
            return; // non-contiguous U blocks outside SU are not needed
        }
        let mut factors: Vec<Factor> = vec![];
        for (i, f) in h.factors.iter().enumerate() {
            if i == idx {
                factors.push(Factor::block(FactorKind::Unitary(size), lo, hi));
            } else if f.embedding.weights.is_some() {
                // the family circle is absorbed into the grown U block when
                // its support lies inside; keep it otherwise
                let inside = f
                    .embedding
                    .weights
                    .as_ref()
                    .map(|(w, _)| {
                        w.iter()
                            .enumerate()
                            .all(|(s, &v)| v == 0 || slots.contains(&(s as u32 + 1)))
                    })
                    .unwrap_or(false);
                if !inside {
                    factors.push(f.clone());
                }
            } else {
                factors.push(f.clone());
            }
        }
        let mut k = GroupExpr::new(factors.clone());
        k.ambient = h.ambient;
        k.component_order = 1;
        out.push(k.clone());
        // a full-rank unitary group in an even orthogonal ambient has a
        // second, reflected embedding
        if matches!(ambient.family, ClassicalFamily::SO | ClassicalFamily::Spin)
            && ambient.size % 2 == 0
            && size == ambient.slot_count()
        {
            let mut perm: Vec<i64> = (1..=size as i64).collect();
            perm[0] = -1;
            let mut reflected = factors;
            for f in reflected.iter_mut() {
                if f.kind == FactorKind::Unitary(size) {
                    f.embedding.sigma = Some(perm.clone());
                }
            }
            let mut k2 = GroupExpr::new(reflected);
            k2.ambient = h.ambient;
            k2.component_order = 1;
            out.push(k2);
        }
    }
}

// ---------------------------------------------------------------------------
// Full pipeline + structural signatures
// ---------------------------------------------------------------------------

/// One comparable unit of a group: either a simple part with its real
/// support, or a circle with its reduced canonical weight vector. U blocks
/// split into their special-unitary part and determinant circle; composite
/// S(U...) factors split into parts and lose the global sigma (its content
/// reappears in the part supports).
enum Unit {
    Simple { token: String, support: Option<BTreeSet<u32>> },
    Circle { weights: Vec<i64> },
}

/// Canonical reduced form of a weight vector: divided by its content and
/// flipped so that the sorted value sequence is lexicographically least
/// (coordinate order must not matter).
fn canonical_circle(w: &[i64]) -> Vec<i64> {
    let r = reduced(w);
    let mut a: Vec<i64> = r.iter().copied().filter(|&v| v != 0).collect();
    let mut b: Vec<i64> = a.iter().map(|v| -v).collect();
    a.sort_unstable();
    b.sort_unstable();
    if b < a {
        r.iter().map(|v| -v).collect()
    } else {
        r
    }
}

fn slot_reals(ambient: Ambient, slot: u32) -> Vec<u32> {
    match ambient.family {
        ClassicalFamily::SO | ClassicalFamily::Spin => {
            if ambient.has_odd_real_slot() && slot == ambient.slot_count() {
                vec![ambient.size]
            } else {
                vec![2 * slot - 1, 2 * slot]
            }
        }
        _ => vec![slot],
    }
}

fn units_of(x: &GroupExpr, ambient: Ambient) -> Vec<Unit> {
    let mut units = vec![];
    for f in &x.factors {
        match &f.kind {
            FactorKind::Torus(r) => {
                if let Some((w, _)) = &f.embedding.weights {
                    let w = match &f.embedding.sigma {
                        Some(perm) => {
                            let mut out = vec![0i64; w.len()];
                            for (i, &wi) in w.iter().enumerate() {
                                if i < perm.len() {
                                    let img = perm[i].unsigned_abs() as usize - 1;
                                    let sign = if perm[i] < 0 { -1 } else { 1 };
                                    if img < out.len() {
                                        out[img] = sign * wi;
                                    }
                                }
                            }
                            out
                        }
                        None => w.clone(),
                    };
                    units.push(Unit::Circle { weights: canonical_circle(&w) });
                } else {
                    for _ in 0..*r {
                        units.push(Unit::Circle { weights: vec![] });
                    }
                }
            }
            FactorKind::Unitary(n) => {
                let slots: Vec<u32> = f
                    .embedding
                    .block
                    .map(|(lo, hi)| (lo..=hi).collect())
                    .unwrap_or_default();
                let mut w = vec![0i64; ambient.slot_count() as usize];
                for &s in &slots {
                    if (s as usize) <= w.len() {
                        // a signed permutation reverses the complex
                        // structure on negated slots
                        let sign = match &f.embedding.sigma {
                            Some(perm) if (s as usize) <= perm.len() && perm[s as usize - 1] < 0 => {
                                -1
                            }
                            _ => 1,
                        };
                        let img = match &f.embedding.sigma {
                            Some(perm) if (s as usize) <= perm.len() => {
                                perm[s as usize - 1].unsigned_abs() as usize
                            }
                            _ => s as usize,
                        };
                        if img >= 1 && img <= w.len() {
                            w[img - 1] = sign;
                        }
                    }
                }
                units.push(Unit::Circle { weights: canonical_circle(&w) });
                if *n >= 2 {
                    units.push(Unit::Simple {
                        token: format!("SU{n}"),
                        support: groups::factor_real_support(f, ambient),
                    });
                }
            }
            FactorKind::SpecialOrthogonal(2) => {
                let mut w = vec![0i64; ambient.slot_count() as usize];
                if let Some(sup) = groups::factor_real_support(f, ambient) {
                    for s in 1..=ambient.slot_count() {
                        if slot_reals(ambient, s).iter().all(|r| sup.contains(r)) {
                            w[s as usize - 1] = 1;
                        }
                    }
                }
                units.push(Unit::Circle { weights: canonical_circle(&w) });
            }
            FactorKind::SUnitaryProduct(sizes) => {
                // one determinant circle per extra part plus the SU parts,
                // each with its (sigma-resolved) support
                let base = f.embedding.block.map(|(lo, _)| lo).unwrap_or(1);
                let mut cursor = base;
                for &s in sizes {
                    if s >= 2 {
                        let slots: BTreeSet<u32> = (cursor..cursor + s).collect();
                        let slots = match &f.embedding.sigma {
                            Some(perm) => slots
                                .iter()
                                .map(|&sl| {
                                    if (sl as usize) <= perm.len() {
                                        perm[sl as usize - 1].unsigned_abs() as u32
                                    } else {
                                        sl
                                    }
                                })
                                .collect(),
                            None => slots,
                        };
                        let support: BTreeSet<u32> =
                            slots.iter().flat_map(|&sl| slot_reals(ambient, sl)).collect();
                        units.push(Unit::Simple {
                            token: format!("SU{s}"),
                            support: Some(support),
                        });
                    }
                    cursor += s;
                }
                for _ in 0..sizes.len() - 1 {
                    units.push(Unit::Circle { weights: vec![] });
                }
            }
            _ => {
                units.push(Unit::Simple {
                    token: factor_token(f),
                    support: groups::factor_real_support(f, ambient),
                });
            }
        }
    }
    units
}

/// A layout-free structural signature of a diagram: the abstract shape of
/// all four groups plus the relative position data of the isotropy circles
/// (their reduced weights restricted to each singular part's support).
/// Diagrams equal up to coordinate relabeling and swapping the singular
/// sides share a signature.
pub fn diagram_signature(d: &Diagram) -> String {
    let a = oriented_signature(d);
    let b = oriented_signature(&d.swapped());
    a.min(b)
}

fn oriented_signature(d: &Diagram) -> String {
    // normalize the groups but keep the given orientation; the caller
    // minimizes over both orientations
    let d = Diagram {
        g: groups::normalize_group(&d.g),
        k_minus: groups::normalize_group(&d.k_minus),
        k_plus: groups::normalize_group(&d.k_plus),
        h: groups::normalize_group(&d.h),
        w_minus: d.w_minus,
        w_plus: d.w_plus,
    };
    let ambient = match d.g.ambient.or_else(|| ambient_of(&d.g)) {
        Some(a) => a,
        None => return groups::format_group(&d.g),
    };
    let mut sig = String::new();
    sig.push_str(&groups::format_group(&d.g));
    sig.push('|');
    for x in [&d.k_minus, &d.k_plus, &d.h] {
        sig.push_str(&group_signature(x, ambient));
        sig.push('|');
    }
    // circle relations: the weights of every H circle restricted to the
    // support of every simple part on both singular sides; the global sign
    // of each circle is fixed by taking the lexicographically smaller of
    // the two orientations of its full relation record
    let h_units = units_of(&d.h, ambient);
    let minus_units = units_of(&d.k_minus, ambient);
    let plus_units = units_of(&d.k_plus, ambient);
    let line = |w: &[i64], units: &[Unit], side: &str| -> String {
        let mut per_part: Vec<String> = vec![];
        for ku in units {
            let (token, sup) = match ku {
                Unit::Simple { token, support: Some(s) } => (token.clone(), s),
                _ => continue,
            };
            let mut vals: Vec<i64> = vec![];
            for (s, &v) in w.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let slot = s as u32 + 1;
                if slot_reals(ambient, slot).iter().all(|r| sup.contains(r)) {
                    vals.push(v);
                }
            }
            vals.sort_unstable();
            per_part.push(format!("{token}{vals:?}"));
        }
        per_part.sort();
        let mut wk: Vec<i64> = w.iter().copied().filter(|&v| v != 0).collect();
        wk.sort_unstable();
        format!("{side}{wk:?}:{}", per_part.join(","))
    };
    let mut relations: Vec<String> = vec![];
    for u in &h_units {
        let w = match u {
            Unit::Circle { weights } if !weights.is_empty() => weights,
            _ => continue,
        };
        let neg: Vec<i64> = w.iter().map(|v| -v).collect();
        let rec_pos =
            format!("{}&{}", line(w, &minus_units, "-"), line(w, &plus_units, "+"));
        let rec_neg =
            format!("{}&{}", line(&neg, &minus_units, "-"), line(&neg, &plus_units, "+"));
        relations.push(rec_pos.min(rec_neg));
    }
    relations.sort();
    sig.push_str(&relations.join(";"));
    sig
}

fn factor_token(f: &Factor) -> String {
    let mut t = match &f.kind {
        FactorKind::SpecialUnitary(n) => format!("SU{n}"),
        FactorKind::SpecialOrthogonal(n) => format!("SO{n}"),
        FactorKind::SpinCover(n) => format!("Spin{n}"),
        FactorKind::Symplectic(n) => format!("Sp{n}"),
        FactorKind::Unitary(n) => format!("U{n}"),
        FactorKind::SUnitaryProduct(parts) => {
            let mut p = parts.clone();
            p.sort_unstable_by(|a, b| b.cmp(a));
            format!("S(U){p:?}")
        }
        FactorKind::ExceptionalG2 => "G2".into(),
        FactorKind::Torus(r) => format!("T{r}"),
    };
    if let Some(tag) = f.embedding.special {
        t.push('#');
        t.push_str(tag.token());
    }
    t
}

/// Abstract shape of one group: component count plus the sorted unit
/// tokens; circles contribute their canonical weight multisets.
fn group_signature(x: &GroupExpr, ambient: Ambient) -> String {
    let mut tokens: Vec<String> = vec![];
    for u in units_of(x, ambient) {
        match u {
            Unit::Simple { token, .. } => tokens.push(token),
            Unit::Circle { weights } => {
                let mut vals: Vec<i64> = weights.iter().copied().filter(|&v| v != 0).collect();
                vals.sort_unstable();
                tokens.push(format!("c{vals:?}"));
            }
        }
    }
    tokens.sort();
    format!("Z{}.{}", x.component_order, tokens.join("x"))
}

/// The assembled pipeline: K+ from the maximal-rank table, H from the
/// sphere-isotropy shapes, K- from inverse growth, filtered by validation,
/// the necessary conditions, and positivity of the Euler characteristic.
pub fn enumerate_candidates(g: &GroupExpr, cfg: &EnumConfig) -> Vec<Diagram> {
    if groups::rank(g) > cfg.rank_bound {
        return vec![];
    }
    let mut out: Vec<(String, Diagram)> = vec![];
    let mut seen: BTreeSet<String> = BTreeSet::new();
    let dedupe = cfg.dedupe;
    let projective_ok = cfg.include_projective;
    let push = move |d: Diagram, out: &mut Vec<(String, Diagram)>, seen: &mut BTreeSet<String>| {
        let Ok(chi) = euler_char_m(&d) else { return };
        if chi <= 0 {
            return;
        }
        if crate::diagram::dim_m(&d).is_err() {
            return;
        }
        // slice quotients must be honest spheres unless the run works at
        // the spin level, where projective images are expected
        if !projective_ok
            && !(d.w_minus.quotient.is_sphere() && d.w_plus.quotient.is_sphere())
        {
            return;
        }
        if !validate_diagram(&d).all_pass() || !necessary_filters(&d).all_pass() {
            return;
        }
        let sig = diagram_signature(&d);
        if seen.insert(sig.clone()) || !dedupe {
            out.push((sig, normalize_diagram(&d)));
        }
    };
    for kplus in enumerate_kplus(g, cfg) {
        for h in enumerate_h(&kplus, cfg) {
            for kminus in enumerate_kminus(&h, g, cfg) {
                let d = Diagram::assemble(g.clone(), kminus, kplus.clone(), h.clone());
                push(d.clone(), &mut out, &mut seen);
                // component-marked variants along one-dimensional slices
                for mark in [2u64, 3] {
                    if d.w_minus.l == 1 {
                        let mut v = d.clone();
                        v.h = v.h.with_components(mark);
                        v.k_plus = v.k_plus.with_components(mark);
                        let v = Diagram::assemble(v.g, v.k_minus, v.k_plus, v.h);
                        push(v, &mut out, &mut seen);
                    }
                    if d.w_plus.l == 1 {
                        let mut v = d.clone();
                        v.h = v.h.with_components(mark);
                        v.k_minus = v.k_minus.with_components(mark);
                        let v = Diagram::assemble(v.g, v.k_minus, v.k_plus, v.h);
                        push(v, &mut out, &mut seen);
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, d)| d).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub family: &'static str,
    pub n: u32,
    pub found: Vec<String>,
    pub missing: Vec<String>,
    pub candidates: usize,
}

impl CoverageReport {
    pub fn complete(&self) -> bool {
        self.missing.is_empty()
    }
}

/// Check that every applicable catalog entry shows up among the enumerated
/// candidates, matching by structural signature.
pub fn cross_check_catalog(
    family: crate::catalog::Family,
    n: u32,
    cfg: &EnumConfig,
) -> CoverageReport {
    use crate::catalog::{catalog, Family};
    let g = match family {
        Family::SU => groups::GroupExpr::single(FactorKind::SpecialUnitary(n)),
        Family::SOOdd => groups::GroupExpr::single(FactorKind::SpecialOrthogonal(2 * n + 1)),
        Family::SpinOdd => groups::GroupExpr::single(FactorKind::SpecialOrthogonal(2 * n + 1)),
        Family::Sp => groups::GroupExpr::single(FactorKind::Symplectic(n)),
        Family::SOEven => groups::GroupExpr::single(FactorKind::SpecialOrthogonal(2 * n)),
    };
    let mut cfg = *cfg;
    if family == Family::SpinOdd {
        cfg.include_projective = true;
    }
    let candidates = enumerate_candidates(&g, &cfg);
    let sigs: BTreeSet<String> = candidates.iter().map(diagram_signature).collect();
    let mut found = vec![];
    let mut missing = vec![];
    for entry in catalog() {
        if entry.family != family || !entry.in_range(n) {
            continue;
        }
        if let Some(d) = entry.instantiate(n) {
            let sig = diagram_signature(&d);
            if sigs.contains(&sig) {
                found.push(entry.id.to_string());
            } else {
                missing.push(entry.id.to_string());
            }
        }
    }
    CoverageReport {
        family: family.token(),
        n,
        found,
        missing,
        candidates: candidates.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    #[test]
    fn su3_candidates_contain_table_rows() {
        let g = parse_group("SU(3)").unwrap();
        let cfg = EnumConfig { kmax: 3, ..Default::default() };
        let candidates = enumerate_candidates(&g, &cfg);
        assert!(!candidates.is_empty());
        let report = cross_check_catalog(crate::catalog::Family::SU, 3, &cfg);
        assert!(report.complete(), "missing: {:?}", report.missing);
    }

    #[test]
    fn su2_is_empty() {
        let g = parse_group("SU(2)").unwrap();
        let candidates = enumerate_candidates(&g, &EnumConfig::default());
        assert!(candidates.is_empty(), "{:?}", candidates.len());
    }

    #[test]
    fn determinism() {
        let g = parse_group("Sp(2)").unwrap();
        let cfg = EnumConfig::default();
        let a: Vec<String> =
            enumerate_candidates(&g, &cfg).iter().map(diagram_signature).collect();
        let b: Vec<String> =
            enumerate_candidates(&g, &cfg).iter().map(diagram_signature).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn kmax_monotone() {
        let g = parse_group("SU(4)").unwrap();
        let small: BTreeSet<String> = enumerate_candidates(
            &g,
            &EnumConfig { kmax: 2, ..Default::default() },
        )
        .iter()
        .map(diagram_signature)
        .collect();
        let large: BTreeSet<String> = enumerate_candidates(
            &g,
            &EnumConfig { kmax: 4, ..Default::default() },
        )
        .iter()
        .map(diagram_signature)
        .collect();
        assert!(small.is_subset(&large));
    }

    #[test]
    fn candidates_satisfy_invariants() {
        let g = parse_group("Sp(2)").unwrap();
        for d in enumerate_candidates(&g, &EnumConfig::default()) {
            let chi = euler_char_m(&d).unwrap();
            assert!(chi > 0);
            let dim = crate::diagram::dim_m(&d).unwrap();
            assert!(dim % 2 == 0);
            assert!(d.w_minus.l >= 1 && d.w_plus.l >= 1);
        }
    }
}
