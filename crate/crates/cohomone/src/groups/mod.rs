//! Symbolic model of compact groups: typed factors with embedding data,
//! a finite component count, and an optional ambient classical group.
//!
//! Invariants (rank, dimension, Weyl group order, factor count, center) are
//! exact integer computations on the descriptor; no matrix realization is
//! ever built.

mod parser;

pub use parser::{parse_group, ParseError};

use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// One simple-or-torus factor kind. Low-rank coincidences such as
/// Spin(3) = Sp(1) are deliberately not collapsed: they change the center
/// and fundamental-group bookkeeping. Use [`abstractly_isomorphic`] to test
/// identification instead.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FactorKind {
    /// SU(n), n >= 2
    SpecialUnitary(u32),
    /// SO(n), n >= 2
    SpecialOrthogonal(u32),
    /// Spin(n), n >= 3
    SpinCover(u32),
    /// Sp(n), n >= 1 (compact symplectic)
    Symplectic(u32),
    /// U(n), n >= 1
    Unitary(u32),
    /// S(U(n1)...U(nk)) kept as a composite so that rank, Weyl order and
    /// factor count stay exact.
    SUnitaryProduct(Vec<u32>),
    /// The 14-dimensional exceptional group.
    ExceptionalG2,
    /// T^r
    Torus(u32),
}

/// Weight field tag for diagonal circles: one weight per complex pair (C/R)
/// or per quaternionic coordinate (H).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WeightField {
    Real,
    Complex,
    Quaternionic,
}

/// Named special embeddings that have no block/weight description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SpecialTag {
    /// G2 inside SO(7)
    G2InSo7,
    /// Spin(7) inside SO(8) via the 8-dimensional spin representation
    Spin7InSo8,
    /// the irreducible SO(3) in SO(5) (symmetric traceless 3x3 matrices)
    IrrSo3InSo5,
    /// the irreducible SO(3) in SU(3) (real form)
    IrrSo3InSu3,
    /// the diagonal Sp(1) in an Sp(2)-block
    DeltaSp1,
}

impl SpecialTag {
    pub fn token(self) -> &'static str {
        match self {
            SpecialTag::G2InSo7 => "g2so7",
            SpecialTag::Spin7InSo8 => "spin7so8",
            SpecialTag::IrrSo3InSo5 => "irr3in5",
            SpecialTag::IrrSo3InSu3 => "irr3in3c",
            SpecialTag::DeltaSp1 => "dsp1",
        }
    }
}

/// A signed coordinate permutation: entry i (0-based) holds the image of
/// coordinate i+1, negated when the coordinate is reversed. Units are the
/// natural coordinates of the factor it decorates.
pub type SignedPerm = Vec<i64>;

/// One factor together with its embedding data. All fields default to
/// "abstract" (no ambient information).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Default)]
pub struct EmbeddingData {
    /// `@[lo..hi]`, 1-based inclusive, in the factor's natural units.
    pub block: Option<(u32, u32)>,
    /// `[w(...)]` diagonal circle weights, one per ambient slot.
    pub weights: Option<(Vec<i64>, WeightField)>,
    /// `#tag`
    pub special: Option<SpecialTag>,
    /// `#du1(l)`: the diagonal circle (z^l, z) in an Sp(2)-block.
    pub du1: Option<i64>,
    /// `#sigma(p1,p2,...)`: conjugation by a signed coordinate permutation,
    /// applied on top of the rest of the embedding data.
    pub sigma: Option<SignedPerm>,
}

impl EmbeddingData {
    pub fn is_abstract(&self) -> bool {
        self.block.is_none()
            && self.weights.is_none()
            && self.special.is_none()
            && self.du1.is_none()
            && self.sigma.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub embedding: EmbeddingData,
}

impl Factor {
    pub fn abstract_kind(kind: FactorKind) -> Self {
        Factor { kind, embedding: EmbeddingData::default() }
    }

    pub fn block(kind: FactorKind, lo: u32, hi: u32) -> Self {
        Factor {
            kind,
            embedding: EmbeddingData { block: Some((lo, hi)), ..Default::default() },
        }
    }

    pub fn circle(weights: Vec<i64>, field: WeightField) -> Self {
        Factor {
            kind: FactorKind::Torus(1),
            embedding: EmbeddingData { weights: Some((weights, field)), ..Default::default() },
        }
    }

    pub fn special(kind: FactorKind, tag: SpecialTag) -> Self {
        Factor {
            kind,
            embedding: EmbeddingData { special: Some(tag), ..Default::default() },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ClassicalFamily {
    SU,
    SO,
    Spin,
    Sp,
}

impl ClassicalFamily {
    pub fn symbol(self) -> &'static str {
        match self {
            ClassicalFamily::SU => "SU",
            ClassicalFamily::SO => "SO",
            ClassicalFamily::Spin => "Spin",
            ClassicalFamily::Sp => "Sp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ambient {
    pub family: ClassicalFamily,
    pub size: u32,
}

impl Ambient {
    pub fn new(family: ClassicalFamily, size: u32) -> Self {
        Ambient { family, size }
    }

    /// Number of weight slots a diagonal circle carries in this ambient:
    /// complex coordinates for SU/U-type, quaternionic coordinates for Sp,
    /// complex pairs (plus one unpaired real coordinate, fixed) for SO/Spin.
    pub fn slot_count(self) -> u32 {
        match self.family {
            ClassicalFamily::SU => self.size,
            ClassicalFamily::Sp => self.size,
            ClassicalFamily::SO | ClassicalFamily::Spin => self.size.div_ceil(2),
        }
    }

    /// True when the last slot is an unpaired real coordinate that cannot
    /// carry a circle weight.
    pub fn has_odd_real_slot(self) -> bool {
        matches!(self.family, ClassicalFamily::SO | ClassicalFamily::Spin) && self.size % 2 == 1
    }

    pub fn rank(self) -> u32 {
        match self.family {
            ClassicalFamily::SU => self.size - 1,
            ClassicalFamily::SO | ClassicalFamily::Spin => self.size / 2,
            ClassicalFamily::Sp => self.size,
        }
    }

    pub fn dim(self) -> u64 {
        let n = self.size as u64;
        match self.family {
            ClassicalFamily::SU => n * n - 1,
            ClassicalFamily::SO | ClassicalFamily::Spin => n * (n - 1) / 2,
            ClassicalFamily::Sp => n * (2 * n + 1),
        }
    }

    pub fn to_kind(self) -> FactorKind {
        match self.family {
            ClassicalFamily::SU => FactorKind::SpecialUnitary(self.size),
            ClassicalFamily::SO => FactorKind::SpecialOrthogonal(self.size),
            ClassicalFamily::Spin => FactorKind::SpinCover(self.size),
            ClassicalFamily::Sp => FactorKind::Symplectic(self.size),
        }
    }
}

/// A compact group: a product of factors, a component count, and an
/// optional ambient group the factors embed into.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupExpr {
    pub factors: Vec<Factor>,
    /// |pi_0|, 1 = connected. Finite markers such as Z2, Z3 live here.
    pub component_order: u64,
    pub ambient: Option<Ambient>,
}

impl GroupExpr {
    pub fn new(factors: Vec<Factor>) -> Self {
        GroupExpr { factors, component_order: 1, ambient: None }
    }

    pub fn with_ambient(mut self, ambient: Ambient) -> Self {
        self.ambient = Some(ambient);
        self
    }

    pub fn with_components(mut self, order: u64) -> Self {
        self.component_order = order;
        self
    }

    pub fn single(kind: FactorKind) -> Self {
        GroupExpr::new(vec![Factor::abstract_kind(kind)])
    }

    pub fn is_connected(&self) -> bool {
        self.component_order == 1
    }

    /// The identity component: same factors, component count 1.
    pub fn identity_component(&self) -> GroupExpr {
        GroupExpr { factors: self.factors.clone(), component_order: 1, ambient: self.ambient }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CenterOrder {
    Finite(u64),
    Infinite,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("center order is defined per simple factor; got {0} factors")]
    NotSingleFactor(usize),
    #[error("center order is not defined for kind {0}")]
    CenterUndefined(String),
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product::<u128>().max(1)
}

fn pow2(n: u32) -> u128 {
    1u128 << n
}

impl FactorKind {
    pub fn rank(&self) -> u32 {
        match self {
            FactorKind::SpecialUnitary(n) => n - 1,
            FactorKind::SpecialOrthogonal(n) | FactorKind::SpinCover(n) => n / 2,
            FactorKind::Symplectic(n) => *n,
            FactorKind::Unitary(n) => *n,
            FactorKind::SUnitaryProduct(parts) => parts.iter().sum::<u32>() - 1,
            FactorKind::ExceptionalG2 => 2,
            FactorKind::Torus(r) => *r,
        }
    }

    pub fn dim(&self) -> u64 {
        match self {
            FactorKind::SpecialUnitary(n) => (*n as u64) * (*n as u64) - 1,
            FactorKind::SpecialOrthogonal(n) | FactorKind::SpinCover(n) => {
                (*n as u64) * (*n as u64 - 1) / 2
            }
            FactorKind::Symplectic(n) => (*n as u64) * (2 * *n as u64 + 1),
            FactorKind::Unitary(n) => (*n as u64) * (*n as u64),
            FactorKind::SUnitaryProduct(parts) => {
                parts.iter().map(|&p| (p as u64) * (p as u64)).sum::<u64>() - 1
            }
            FactorKind::ExceptionalG2 => 14,
            FactorKind::Torus(r) => *r as u64,
        }
    }

    pub fn weyl_order(&self) -> u128 {
        match self {
            FactorKind::SpecialUnitary(n) => factorial(*n),
            FactorKind::SpecialOrthogonal(n) | FactorKind::SpinCover(n) => {
                let k = n / 2;
                if n % 2 == 1 {
                    pow2(k) * factorial(k)
                } else if k == 0 {
                    1
                } else {
                    pow2(k - 1) * factorial(k)
                }
            }
            FactorKind::Symplectic(n) => pow2(*n) * factorial(*n),
            FactorKind::Unitary(n) => factorial(*n),
            FactorKind::SUnitaryProduct(parts) => parts.iter().map(|&p| factorial(p)).product(),
            FactorKind::ExceptionalG2 => 12,
            FactorKind::Torus(_) => 1,
        }
    }

    /// Torus rank plus number of simple factors of the finite cover.
    pub fn factor_count(&self) -> u32 {
        match self {
            FactorKind::SpecialUnitary(n) => {
                if *n >= 2 {
                    1
                } else {
                    0
                }
            }
            FactorKind::SpecialOrthogonal(n) | FactorKind::SpinCover(n) => match n {
                0..=1 => 0,
                2 => 1, // a circle
                4 => 2, // covered by SU(2) x SU(2)
                _ => 1,
            },
            FactorKind::Symplectic(n) => {
                if *n >= 1 {
                    1
                } else {
                    0
                }
            }
            FactorKind::Unitary(n) => {
                if *n >= 2 {
                    2
                } else {
                    1
                }
            }
            FactorKind::SUnitaryProduct(parts) => {
                (parts.len() as u32 - 1) + parts.iter().filter(|&&p| p >= 2).count() as u32
            }
            FactorKind::ExceptionalG2 => 1,
            FactorKind::Torus(r) => *r,
        }
    }

    /// Trivial groups arise from degenerate parameters during instantiation
    /// (SO(1), Sp(0), SU(1), ...); they are dropped by the builders.
    pub fn is_trivial(&self) -> bool {
        match self {
            FactorKind::SpecialUnitary(n) => *n <= 1,
            FactorKind::SpecialOrthogonal(n) | FactorKind::SpinCover(n) => *n <= 1,
            FactorKind::Symplectic(n) => *n == 0,
            FactorKind::Unitary(n) => *n == 0,
            FactorKind::SUnitaryProduct(parts) => parts.iter().sum::<u32>() <= 1,
            FactorKind::ExceptionalG2 => false,
            FactorKind::Torus(r) => *r == 0,
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            FactorKind::SpecialUnitary(_) => "SU",
            FactorKind::SpecialOrthogonal(_) => "SO",
            FactorKind::SpinCover(_) => "Spin",
            FactorKind::Symplectic(_) => "Sp",
            FactorKind::Unitary(_) => "U",
            FactorKind::SUnitaryProduct(_) => "SU{}",
            FactorKind::ExceptionalG2 => "G2",
            FactorKind::Torus(_) => "T",
        }
    }
}

pub fn rank(g: &GroupExpr) -> u32 {
    g.factors.iter().map(|f| f.kind.rank()).sum()
}

pub fn dim(g: &GroupExpr) -> u64 {
    g.factors.iter().map(|f| f.kind.dim()).sum()
}

/// Weyl group order of the identity component; multiplicative over factors.
pub fn weyl_order(g: &GroupExpr) -> u128 {
    g.factors.iter().map(|f| f.kind.weyl_order()).product()
}

/// Number of factors: torus rank of the finite cover of the identity
/// component plus its number of simple factors.
pub fn factor_count(g: &GroupExpr) -> u32 {
    g.factors.iter().map(|f| f.kind.factor_count()).sum()
}

/// Center order of a single classical simple factor or G2. Any torus
/// factor makes the center positive-dimensional.
pub fn center_order(g: &GroupExpr) -> Result<CenterOrder, GroupError> {
    if g.factors.len() != 1 {
        return Err(GroupError::NotSingleFactor(g.factors.len()));
    }
    let kind = &g.factors[0].kind;
    let order = match kind {
        FactorKind::SpecialUnitary(n) => CenterOrder::Finite(*n as u64),
        FactorKind::Symplectic(_) => CenterOrder::Finite(2),
        FactorKind::SpecialOrthogonal(n) => {
            if *n == 2 {
                CenterOrder::Infinite
            } else if n % 2 == 1 {
                CenterOrder::Finite(1)
            } else {
                CenterOrder::Finite(2)
            }
        }
        FactorKind::SpinCover(n) => {
            if n % 2 == 1 {
                CenterOrder::Finite(2)
            } else {
                CenterOrder::Finite(4)
            }
        }
        FactorKind::ExceptionalG2 => CenterOrder::Finite(1),
        FactorKind::Unitary(1) | FactorKind::Torus(_) => CenterOrder::Infinite,
        other => return Err(GroupError::CenterUndefined(format!("{other:?}"))),
    };
    Ok(order)
}

/// The fixed low-rank identification table:
/// Spin(3) ~ SU(2) ~ Sp(1), Spin(4) ~ Sp(1)^2, Spin(5) ~ Sp(2),
/// Spin(6) ~ SU(4), SO(2) ~ U(1) ~ S1. SO(4) ~ (Sp(1) x Sp(1))/Z2 is
/// flagged by `so4_is_quotient_of` and never silently identified.
pub fn abstractly_isomorphic(a: &FactorKind, b: &FactorKind) -> bool {
    if a == b {
        return true;
    }
    let key = |k: &FactorKind| -> Option<u32> {
        // A shared simply-connected key per isomorphism class.
        match k {
            FactorKind::SpinCover(3) | FactorKind::SpecialUnitary(2) | FactorKind::Symplectic(1) => {
                Some(1)
            }
            FactorKind::SpinCover(5) | FactorKind::Symplectic(2) => Some(2),
            FactorKind::SpinCover(6) | FactorKind::SpecialUnitary(4) => Some(3),
            FactorKind::SpecialOrthogonal(2) | FactorKind::Unitary(1) | FactorKind::Torus(1) => {
                Some(4)
            }
            _ => None,
        }
    };
    match (key(a), key(b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// SO(4) is covered by Sp(1) x Sp(1); this is the flagged identification
/// of the design notes (never applied silently).
pub fn so4_is_quotient_of(a: &FactorKind) -> bool {
    matches!(a, FactorKind::SpecialOrthogonal(4))
}

// ---------------------------------------------------------------------------
// Canonical ordering and normalization
// ---------------------------------------------------------------------------

fn kind_sort_key(kind: &FactorKind) -> (u8, Vec<i64>) {
    // Composite S(U..) kinds first, then simple kinds alphabetically by
    // symbol with parameter descending, then torus. Deterministic, nothing
    // more.
    match kind {
        FactorKind::SUnitaryProduct(parts) => {
            (0, parts.iter().map(|&p| -(p as i64)).collect())
        }
        FactorKind::ExceptionalG2 => (1, vec![]),
        FactorKind::SpecialOrthogonal(n) => (2, vec![-(*n as i64)]),
        FactorKind::SpecialUnitary(n) => (3, vec![-(*n as i64)]),
        FactorKind::Symplectic(n) => (4, vec![-(*n as i64)]),
        FactorKind::SpinCover(n) => (5, vec![-(*n as i64)]),
        FactorKind::Unitary(n) => (6, vec![-(*n as i64)]),
        FactorKind::Torus(r) => (7, vec![-(*r as i64)]),
    }
}

fn embedding_sort_key(e: &EmbeddingData) -> (u32, Vec<i64>, u8, i64) {
    let block_start = e.block.map(|(lo, _)| lo).unwrap_or(u32::MAX);
    let weights = e.weights.as_ref().map(|(w, _)| w.clone()).unwrap_or_default();
    let tag = e.special.map(|t| t as u8).unwrap_or(u8::MAX);
    let du1 = e.du1.unwrap_or(i64::MAX);
    (block_start, weights, tag, du1)
}

pub fn factor_sort_key(f: &Factor) -> ((u8, Vec<i64>), (u32, Vec<i64>, u8, i64)) {
    (kind_sort_key(&f.kind), embedding_sort_key(&f.embedding))
}

/// Sign-normalize a weight vector: flip the global sign so that the first
/// nonzero entry is positive (the z -> conj(z) reparametrization). The
/// content gcd is preserved on purpose.
pub fn normalize_weights(weights: &mut [i64]) {
    if let Some(first) = weights.iter().find(|&&w| w != 0) {
        if *first < 0 {
            for w in weights.iter_mut() {
                *w = -*w;
            }
        }
    }
}

/// Canonical normal form: abstract U(1)/SO(2) become circles, abstract
/// circles merge into one torus, weight vectors are sign-normalized, and
/// factors are sorted by the fixed total order. Idempotent.
pub fn normalize_group(g: &GroupExpr) -> GroupExpr {
    let mut factors: Vec<Factor> = Vec::with_capacity(g.factors.len());
    let mut abstract_torus_rank: u32 = 0;
    for f in &g.factors {
        let mut f = f.clone();
        if f.kind.is_trivial() {
            continue;
        }
        // Abstract rank-1 circles in disguise.
        if f.embedding.is_abstract() {
            match f.kind {
                FactorKind::Unitary(1) | FactorKind::SpecialOrthogonal(2) => {
                    f.kind = FactorKind::Torus(1);
                }
                _ => {}
            }
            if let FactorKind::Torus(r) = f.kind {
                abstract_torus_rank += r;
                continue;
            }
        }
        if let Some((w, _)) = f.embedding.weights.as_mut() {
            normalize_weights(w);
        }
        if let Some(perm) = &f.embedding.sigma {
            // Identity permutations carry no information.
            if perm.iter().enumerate().all(|(i, &v)| v == i as i64 + 1) {
                f.embedding.sigma = None;
            }
        }
        factors.push(f);
    }
    if abstract_torus_rank > 0 {
        factors.push(Factor::abstract_kind(FactorKind::Torus(abstract_torus_rank)));
    }
    factors.sort_by(|a, b| factor_sort_key(a).cmp(&factor_sort_key(b)));
    GroupExpr { factors, component_order: g.component_order, ambient: g.ambient }
}

// ---------------------------------------------------------------------------
// Supports (real-coordinate footprint inside the ambient group)
// ---------------------------------------------------------------------------

/// Real-coordinate span of one ambient slot.
fn slot_reals(ambient: Ambient, slot: u32) -> Vec<u32> {
    match ambient.family {
        ClassicalFamily::SU => vec![slot],
        ClassicalFamily::Sp => vec![slot],
        ClassicalFamily::SO | ClassicalFamily::Spin => {
            if ambient.has_odd_real_slot() && slot == ambient.slot_count() {
                vec![ambient.size]
            } else {
                vec![2 * slot - 1, 2 * slot]
            }
        }
    }
}

/// Convert a block in a factor's natural units into ambient real
/// coordinates. SO/Spin blocks inside SO/Spin ambients use real units
/// directly; everything else counts slots.
fn block_reals(kind: &FactorKind, ambient: Ambient, lo: u32, hi: u32) -> BTreeSet<u32> {
    let so_ambient =
        matches!(ambient.family, ClassicalFamily::SO | ClassicalFamily::Spin);
    let so_kind = matches!(
        kind,
        FactorKind::SpecialOrthogonal(_) | FactorKind::SpinCover(_) | FactorKind::ExceptionalG2
    );
    if !so_ambient || so_kind {
        // natural units == real units for this combination
        (lo..=hi).collect()
    } else {
        (lo..=hi).flat_map(|s| slot_reals(ambient, s)).collect()
    }
}

fn apply_perm_to_reals(
    perm: &SignedPerm,
    kind: &FactorKind,
    ambient: Ambient,
    reals: &BTreeSet<u32>,
) -> BTreeSet<u32> {
    // The permutation is given in the factor's natural units; expand it to
    // real coordinates first.
    let so_ambient = matches!(ambient.family, ClassicalFamily::SO | ClassicalFamily::Spin);
    let so_kind = matches!(
        kind,
        FactorKind::SpecialOrthogonal(_) | FactorKind::SpinCover(_) | FactorKind::ExceptionalG2
    );
    let unit_is_real = !so_ambient || so_kind;
    let image_of_real = |r: u32| -> u32 {
        if unit_is_real {
            if (r as usize) <= perm.len() {
                perm[r as usize - 1].unsigned_abs() as u32
            } else {
                r
            }
        } else {
            // unit = slot; map the slot, keep intra-slot position
            let slot = r.div_ceil(2);
            let offset = (r + 1) % 2; // 0 for odd (first), 1 for even
            if (slot as usize) <= perm.len() {
                let img = perm[slot as usize - 1].unsigned_abs() as u32;
                2 * img - 1 + offset
            } else {
                r
            }
        }
    };
    reals.iter().map(|&r| image_of_real(r)).collect()
}

/// The set of ambient real coordinates a factor acts on, when determinable
/// from its own data. `None` means unresolved (abstract factors, named
/// specials without position data).
pub fn factor_real_support(f: &Factor, ambient: Ambient) -> Option<BTreeSet<u32>> {
    let base: Option<BTreeSet<u32>> = if let Some((lo, hi)) = f.embedding.block {
        Some(block_reals(&f.kind, ambient, lo, hi))
    } else if let Some((w, field)) = &f.embedding.weights {
        let mut reals = BTreeSet::new();
        for (i, &wi) in w.iter().enumerate() {
            if wi != 0 {
                let slot = i as u32 + 1;
                match (ambient.family, field) {
                    (ClassicalFamily::SO | ClassicalFamily::Spin, _) => {
                        reals.extend(slot_reals(ambient, slot));
                    }
                    _ => {
                        reals.insert(slot);
                    }
                }
            }
        }
        Some(reals)
    } else {
        None
    };
    let base = base?;
    match &f.embedding.sigma {
        Some(perm) => Some(apply_perm_to_reals(perm, &f.kind, ambient, &base)),
        None => Some(base),
    }
}

/// Natural size of a named special embedding, in real coordinates of an
/// SO-type ambient (or natural coordinates otherwise).
pub fn special_tag_span(tag: SpecialTag) -> u32 {
    match tag {
        SpecialTag::G2InSo7 => 7,
        SpecialTag::Spin7InSo8 => 8,
        SpecialTag::IrrSo3InSo5 => 5,
        SpecialTag::IrrSo3InSu3 => 3,
        SpecialTag::DeltaSp1 => 2,
    }
}

// ---------------------------------------------------------------------------
// Formatting
// ---------------------------------------------------------------------------

fn write_factor(out: &mut String, f: &Factor) {
    use std::fmt::Write;
    match &f.kind {
        FactorKind::SpecialUnitary(n) => write!(out, "SU({n})").unwrap(),
        FactorKind::SpecialOrthogonal(n) => write!(out, "SO({n})").unwrap(),
        FactorKind::SpinCover(n) => write!(out, "Spin({n})").unwrap(),
        FactorKind::Symplectic(n) => write!(out, "Sp({n})").unwrap(),
        FactorKind::Unitary(n) => write!(out, "U({n})").unwrap(),
        FactorKind::SUnitaryProduct(parts) => {
            out.push_str("SU{");
            for (i, p) in parts.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{p}").unwrap();
            }
            out.push('}');
        }
        FactorKind::ExceptionalG2 => out.push_str("G2"),
        FactorKind::Torus(1) => out.push_str("S1"),
        FactorKind::Torus(r) => write!(out, "T{r}").unwrap(),
    }
    if let Some((lo, hi)) = f.embedding.block {
        write!(out, "@[{lo}..{hi}]").unwrap();
    }
    if let Some((w, field)) = &f.embedding.weights {
        out.push_str("[w(");
        for (i, wi) in w.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{wi}").unwrap();
        }
        out.push(')');
        match field {
            WeightField::Complex => {}
            WeightField::Real => out.push_str(":R"),
            WeightField::Quaternionic => out.push_str(":H"),
        }
        out.push(']');
    }
    if let Some(tag) = f.embedding.special {
        out.push('#');
        out.push_str(tag.token());
    }
    if let Some(l) = f.embedding.du1 {
        write!(out, "#du1({l})").unwrap();
    }
    if let Some(perm) = &f.embedding.sigma {
        out.push_str("#sigma(");
        for (i, p) in perm.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{p}").unwrap();
        }
        out.push(')');
    }
}

/// Canonical text form; `parse_group(format_group(g)) == normalize_group(g)`.
pub fn format_group(g: &GroupExpr) -> String {
    let g = normalize_group(g);
    let mut out = String::new();
    if g.component_order > 1 {
        out.push('Z');
        out.push_str(&g.component_order.to_string());
        out.push('.');
    }
    if g.factors.is_empty() {
        out.push('1');
    } else {
        for (i, f) in g.factors.iter().enumerate() {
            if i > 0 {
                out.push('x');
            }
            write_factor(&mut out, f);
        }
    }
    if let Some(ambient) = g.ambient {
        out.push_str(" in ");
        out.push_str(ambient.family.symbol());
        out.push('(');
        out.push_str(&ambient.size.to_string());
        out.push(')');
    }
    out
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_group(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(text: &str) -> GroupExpr {
        parse_group(text).unwrap()
    }

    #[test]
    fn rank_table() {
        assert_eq!(rank(&g("SU(4)")), 3);
        assert_eq!(rank(&g("SO(2)xSO(5)")), 3);
        assert_eq!(rank(&g("S1xSU(2)xSU(2)")), 3);
        assert_eq!(rank(&g("SU{1,2}")), 2);
        assert_eq!(rank(&g("G2")), 2);
        assert_eq!(rank(&g("T3")), 3);
        assert_eq!(rank(&g("Spin(7)")), 3);
    }

    #[test]
    fn dim_table() {
        assert_eq!(dim(&g("Sp(2)")), 10);
        assert_eq!(dim(&g("G2")), 14);
        assert_eq!(dim(&g("U(3)")), 9);
        assert_eq!(dim(&g("SU{2,2}")), 7);
        assert_eq!(dim(&g("SO(7)")), 21);
        assert_eq!(dim(&g("Spin(9)")), 36);
    }

    #[test]
    fn weyl_table() {
        assert_eq!(weyl_order(&g("SU(3)")), 6);
        assert_eq!(weyl_order(&g("SO(9)")), 384);
        assert_eq!(weyl_order(&g("T2")), 1);
        assert_eq!(weyl_order(&g("SO(8)")), 192);
        assert_eq!(weyl_order(&g("Sp(3)")), 48);
        assert_eq!(weyl_order(&g("U(4)")), 24);
        assert_eq!(weyl_order(&g("SU{1,3}")), 6);
        assert_eq!(weyl_order(&g("G2")), 12);
        assert_eq!(weyl_order(&g("SO(2)")), 1);
        assert_eq!(weyl_order(&g("SO(3)")), 2);
    }

    #[test]
    fn factor_count_table() {
        assert_eq!(factor_count(&g("T2")), 2);
        assert_eq!(factor_count(&g("SU{2,3}")), 3);
        assert_eq!(factor_count(&g("SU{1,2,2}")), 4);
        assert_eq!(factor_count(&g("U(3)")), 2);
        assert_eq!(factor_count(&g("U(1)")), 1);
        assert_eq!(factor_count(&g("SO(4)")), 2);
        assert_eq!(factor_count(&g("SO(5)")), 1);
        assert_eq!(factor_count(&g("SU(5)")), 1);
    }

    #[test]
    fn center_table() {
        assert_eq!(center_order(&g("SU(4)")).unwrap(), CenterOrder::Finite(4));
        assert_eq!(center_order(&g("Spin(8)")).unwrap(), CenterOrder::Finite(4));
        assert_eq!(center_order(&g("SO(7)")).unwrap(), CenterOrder::Finite(1));
        assert_eq!(center_order(&g("Spin(7)")).unwrap(), CenterOrder::Finite(2));
        assert_eq!(center_order(&g("SO(8)")).unwrap(), CenterOrder::Finite(2));
        assert_eq!(center_order(&g("Sp(3)")).unwrap(), CenterOrder::Finite(2));
        assert_eq!(center_order(&g("G2")).unwrap(), CenterOrder::Finite(1));
        assert_eq!(center_order(&g("S1")).unwrap(), CenterOrder::Infinite);
        assert!(center_order(&g("SU(2)xSU(2)")).is_err());
    }

    #[test]
    fn normalize_merges_abstract_circles() {
        let n = normalize_group(&g("S1xS1"));
        assert_eq!(format_group(&n), "T2");
        let n = normalize_group(&g("U(1)xSO(2)"));
        assert_eq!(format_group(&n), "T2");
    }

    #[test]
    fn normalize_weight_sign() {
        let n = normalize_group(&g("S1[w(-2,1,1,0)]"));
        match &n.factors[0].embedding.weights {
            Some((w, _)) => assert_eq!(w, &vec![2, -1, -1, 0]),
            None => panic!("weights lost"),
        }
    }

    #[test]
    fn normalize_idempotent_on_examples() {
        for text in [
            "SU(2)@[3..4]xS1[w(1,-1,0,0)] in SU(4)",
            "Z2.S1[w(1,-1,0,0)]xSU(2)@[3..4] in SU(4)",
            "G2#g2so7 in SO(7)",
            "Z3.SO(3) in SU(3)",
            "SU{1,3}#sigma(2,1,3,4) in SU(4)",
        ] {
            let once = normalize_group(&g(text));
            let twice = normalize_group(&once);
            assert_eq!(once, twice, "normalize not idempotent on {text}");
        }
    }

    #[test]
    fn abstract_isomorphism_table() {
        assert!(abstractly_isomorphic(
            &FactorKind::SpinCover(6),
            &FactorKind::SpecialUnitary(4)
        ));
        assert!(abstractly_isomorphic(&FactorKind::SpinCover(5), &FactorKind::Symplectic(2)));
        assert!(abstractly_isomorphic(
            &FactorKind::Symplectic(1),
            &FactorKind::SpecialUnitary(2)
        ));
        assert!(!abstractly_isomorphic(
            &FactorKind::SpecialOrthogonal(4),
            &FactorKind::Symplectic(1)
        ));
        assert!(so4_is_quotient_of(&FactorKind::SpecialOrthogonal(4)));
    }

    #[test]
    fn trivial_kinds() {
        assert!(FactorKind::SpecialOrthogonal(1).is_trivial());
        assert!(FactorKind::Symplectic(0).is_trivial());
        assert!(FactorKind::SpecialUnitary(1).is_trivial());
        assert!(!FactorKind::Torus(1).is_trivial());
    }
}
