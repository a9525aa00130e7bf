//! Enumeration of the connected maximal-rank subgroups of the classical
//! simple groups, by block composition:
//!
//! * SU(n):     S(U(n1)...U(nk)), n1 + ... + nk = n
//! * SO(2n):    SO(2n1)...SO(2nk) U(m1)...U(ml)
//! * SO(2n+1):  SO(2k+1) SO(2n1)...SO(2nk) U(m1)...U(ml)
//! * Sp(n):     U(n1)...U(nk) Sp(m1)...Sp(ml)
//!
//! Compositions are unordered (conjugacy quotients out the block order);
//! canonical coordinates place SO blocks first, then U blocks, then Sp
//! blocks, sizes descending within each kind, the odd SO block last.

use crate::groups::{
    self, Ambient, ClassicalFamily, Factor, FactorKind, GroupExpr,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MaxRankError {
    #[error("maximal-rank enumeration needs a single classical simple group, got {0}")]
    NotClassicalSimple(String),
}

/// Partitions of `n` into at most `max_parts` parts (descending order).
fn partitions(n: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn go(n: u32, max_part: u32, left: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        if left == 0 {
            return;
        }
        let hi = n.min(max_part);
        for p in (1..=hi).rev() {
            prefix.push(p);
            go(n - p, p, left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = vec![];
    go(n, n, max_parts, &mut vec![], &mut out);
    out
}

/// Split `n` into two labelled multisets (a-parts, b-parts), unordered
/// within each label; either side may be empty.
fn two_kind_compositions(n: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = vec![];
    for a_total in 0..=n {
        let b_total = n - a_total;
        let a_parts = if a_total == 0 { vec![vec![]] } else { partitions(a_total, a_total as usize) };
        let b_parts = if b_total == 0 { vec![vec![]] } else { partitions(b_total, b_total as usize) };
        for ap in &a_parts {
            for bp in &b_parts {
                out.push((ap.clone(), bp.clone()));
            }
        }
    }
    out
}

fn su_subgroup(parts: &[u32], n: u32) -> GroupExpr {
    let mut sorted = parts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    GroupExpr::new(vec![Factor::block(FactorKind::SUnitaryProduct(sorted), 1, n)])
        .with_ambient(Ambient::new(ClassicalFamily::SU, n))
}

/// SO blocks first (real coordinates), then U blocks (complex slots), the
/// odd SO block last so that it absorbs the unpaired coordinate.
fn so_subgroup(
    so_even: &[u32],
    u_parts: &[u32],
    odd_block: Option<u32>,
    m: u32,
    family: ClassicalFamily,
) -> GroupExpr {
    let mut factors = vec![];
    let mut real_cursor = 1u32;
    for &b in so_even {
        factors.push(Factor::block(
            FactorKind::SpecialOrthogonal(2 * b),
            real_cursor,
            real_cursor + 2 * b - 1,
        ));
        real_cursor += 2 * b;
    }
    let mut slot_cursor = real_cursor.div_ceil(2);
    debug_assert_eq!(real_cursor % 2, 1, "even blocks keep slots aligned");
    for &u in u_parts {
        factors.push(Factor::block(FactorKind::Unitary(u), slot_cursor, slot_cursor + u - 1));
        slot_cursor += u;
    }
    if let Some(k) = odd_block {
        let size = 2 * k + 1;
        factors.push(Factor::block(
            FactorKind::SpecialOrthogonal(size),
            m - size + 1,
            m,
        ));
    }
    GroupExpr::new(factors).with_ambient(Ambient::new(family, m))
}

fn sp_subgroup(u_parts: &[u32], sp_parts: &[u32], n: u32) -> GroupExpr {
    let mut factors = vec![];
    let mut cursor = 1u32;
    for &u in u_parts {
        factors.push(Factor::block(FactorKind::Unitary(u), cursor, cursor + u - 1));
        cursor += u;
    }
    for &s in sp_parts {
        factors.push(Factor::block(FactorKind::Symplectic(s), cursor, cursor + s - 1));
        cursor += s;
    }
    GroupExpr::new(factors).with_ambient(Ambient::new(ClassicalFamily::Sp, n))
}

/// All connected rank-equal subgroups of the given classical simple group,
/// deduplicated by composition, filtered to at most `max_factors` factors.
/// `proper_only` drops the group itself. A Spin ambient enumerates at the
/// orthogonal level; the results keep the Spin ambient as the marker for
/// preimage interpretation.
pub fn maximal_rank_subgroups(
    g: &GroupExpr,
    max_factors: u32,
    proper_only: bool,
) -> Result<Vec<GroupExpr>, MaxRankError> {
    if g.factors.len() != 1 || !g.is_connected() {
        return Err(MaxRankError::NotClassicalSimple(groups::format_group(g)));
    }
    let (family, size) = match &g.factors[0].kind {
        FactorKind::SpecialUnitary(n) => (ClassicalFamily::SU, *n),
        FactorKind::SpecialOrthogonal(n) => (ClassicalFamily::SO, *n),
        FactorKind::SpinCover(n) => (ClassicalFamily::Spin, *n),
        FactorKind::Symplectic(n) => (ClassicalFamily::Sp, *n),
        other => {
            return Err(MaxRankError::NotClassicalSimple(format!("{other:?}")))
        }
    };
    let mut out: Vec<GroupExpr> = vec![];
    match family {
        ClassicalFamily::SU => {
            for parts in partitions(size, size as usize) {
                if proper_only && parts.len() == 1 {
                    continue;
                }
                if parts.len() == 1 {
                    out.push(
                        GroupExpr::single(FactorKind::SpecialUnitary(size))
                            .with_ambient(Ambient::new(ClassicalFamily::SU, size)),
                    );
                    continue;
                }
                out.push(su_subgroup(&parts, size));
            }
        }
        ClassicalFamily::SO | ClassicalFamily::Spin => {
            let n = size / 2;
            let odd = size % 2 == 1;
            for (so_parts, u_parts) in two_kind_compositions(n) {
                if odd {
                    // the odd block SO(2k+1) takes k from the rank; k = 0
                    // contributes nothing and is dropped. Here so_parts
                    // plays double duty: one of its entries may become the
                    // odd block. Enumerate the odd block size separately.
                    continue; // handled below
                }
                // even case: all SO blocks even, any U blocks
                if so_parts.iter().any(|&b| b == 0) {
                    continue;
                }
                let is_self = u_parts.is_empty() && so_parts.len() == 1 && so_parts[0] == n;
                if proper_only && is_self {
                    continue;
                }
                let expr = so_subgroup(&so_parts, &u_parts, None, size, family);
                push_filtered(&mut out, expr, max_factors);
            }
            if odd {
                for k in 0..=n {
                    let rest = n - k;
                    for (so_parts, u_parts) in two_kind_compositions(rest) {
                        let is_self =
                            so_parts.is_empty() && u_parts.is_empty() && k == n;
                        if proper_only && is_self {
                            continue;
                        }
                        let odd_block = if k > 0 { Some(k) } else { None };
                        let expr =
                            so_subgroup(&so_parts, &u_parts, odd_block, size, family);
                        push_filtered(&mut out, expr, max_factors);
                    }
                }
            } else {
                // dedupe and factor-filter happened in push_filtered
            }
        }
        ClassicalFamily::Sp => {
            for (u_parts, sp_parts) in two_kind_compositions(size) {
                let is_self = u_parts.is_empty() && sp_parts.len() == 1 && sp_parts[0] == size;
                if proper_only && is_self {
                    continue;
                }
                let expr = sp_subgroup(&u_parts, &sp_parts, size);
                push_filtered(&mut out, expr, max_factors);
            }
        }
    }
    if family == ClassicalFamily::SU {
        out.retain(|k| groups::factor_count(k) <= max_factors);
    }
    // dedupe by normalized form, deterministic order
    let mut seen = std::collections::BTreeSet::new();
    let mut deduped = vec![];
    for k in out {
        let key = groups::format_group(&k);
        if seen.insert(key) {
            deduped.push(k);
        }
    }
    deduped.sort_by_key(groups::format_group);
    Ok(deduped)
}

fn push_filtered(out: &mut Vec<GroupExpr>, expr: GroupExpr, max_factors: u32) {
    if expr.factors.is_empty() {
        return;
    }
    if groups::factor_count(&expr) <= max_factors {
        out.push(expr);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_group;

    fn names(g: &str, max_factors: u32, proper: bool) -> Vec<String> {
        maximal_rank_subgroups(&parse_group(g).unwrap(), max_factors, proper)
            .unwrap()
            .iter()
            .map(groups::format_group)
            .collect()
    }

    #[test]
    fn su3_subgroups() {
        let got = names("SU(3)", 4, true);
        assert_eq!(got, vec!["SU{1,1,1}@[1..3] in SU(3)", "SU{2,1}@[1..3] in SU(3)"]);
    }

    #[test]
    fn su5_subgroups() {
        let got = names("SU(5)", 4, true);
        // partitions of 5 into >= 2 parts with at most 4 factors:
        // 4+1, 3+2, 3+1+1, 2+2+1; 2+1+1+1 (T3 SU(2) side has (4-1)+1 = 4? no: k=4 parts
        // -> (k-1) + #big = 3 + 1 = 4) and 1^5 (rank-4 torus, 4 factors)
        assert!(got.contains(&"SU{4,1}@[1..5] in SU(5)".to_string()));
        assert!(got.contains(&"SU{3,2}@[1..5] in SU(5)".to_string()));
        assert!(got.contains(&"SU{3,1,1}@[1..5] in SU(5)".to_string()));
        assert!(got.contains(&"SU{2,2,1}@[1..5] in SU(5)".to_string()));
        assert!(got.contains(&"SU{2,1,1,1}@[1..5] in SU(5)".to_string()));
        assert!(got.contains(&"SU{1,1,1,1,1}@[1..5] in SU(5)".to_string()));
        assert_eq!(got.len(), 6);
    }

    #[test]
    fn sp2_subgroups() {
        let got = names("Sp(2)", 4, true);
        assert_eq!(
            got,
            vec![
                "Sp(1)@[1..1]xSp(1)@[2..2] in Sp(2)",
                "Sp(1)@[2..2]xU(1)@[1..1] in Sp(2)",
                "U(1)@[1..1]xU(1)@[2..2] in Sp(2)",
                "U(2)@[1..2] in Sp(2)",
            ]
        );
    }

    #[test]
    fn so9_contains_the_expected_shapes() {
        let got = names("SO(9)", 4, true);
        assert!(got.contains(&"SO(8)@[1..8] in SO(9)".to_string()));
        assert!(got.contains(&"SO(7)@[3..9]xSO(2)@[1..2] in SO(9)".to_string()));
        assert!(got.contains(&"U(4)@[1..4] in SO(9)".to_string()));
        assert!(got.contains(&"SO(2)@[1..2]xU(3)@[2..4] in SO(9)".to_string()));
        // rank equality throughout
        for k in maximal_rank_subgroups(&parse_group("SO(9)").unwrap(), 4, true).unwrap() {
            assert_eq!(groups::rank(&k), 4, "{}", groups::format_group(&k));
        }
    }

    #[test]
    fn monotone_in_max_factors() {
        for g in ["SU(6)", "SO(8)", "Sp(3)", "SO(9)"] {
            let small: std::collections::BTreeSet<_> = names(g, 3, true).into_iter().collect();
            let large: std::collections::BTreeSet<_> = names(g, 4, true).into_iter().collect();
            assert!(small.is_subset(&large), "{g}");
        }
    }

    #[test]
    fn su_count_matches_partition_count() {
        // number of partitions of n into >= 2 parts, computed directly
        fn partition_count(n: u32) -> usize {
            fn go(n: u32, max: u32) -> usize {
                if n == 0 {
                    return 1;
                }
                (1..=n.min(max)).map(|p| go(n - p, p)).sum()
            }
            go(n, n) - 1 // drop the single-part partition
        }
        for n in 2..=12u32 {
            let got = maximal_rank_subgroups(
                &parse_group(&format!("SU({n})")).unwrap(),
                u32::MAX,
                true,
            )
            .unwrap();
            assert_eq!(got.len(), partition_count(n), "n = {n}");
        }
    }

    #[test]
    fn no_duplicates_after_normalization() {
        for g in ["SU(8)", "SO(10)", "SO(11)", "Sp(4)"] {
            let list = maximal_rank_subgroups(&parse_group(g).unwrap(), 4, true).unwrap();
            let set: std::collections::BTreeSet<_> =
                list.iter().map(groups::format_group).collect();
            assert_eq!(set.len(), list.len(), "{g}");
        }
    }

    #[test]
    fn rejects_non_simple() {
        assert!(maximal_rank_subgroups(&parse_group("SU(2)xSU(2)").unwrap(), 4, true).is_err());
        assert!(maximal_rank_subgroups(&parse_group("G2").unwrap(), 4, true).is_err());
    }
}
