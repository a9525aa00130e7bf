//! Recursive-descent parser for the group-expression grammar.
//!
//! ```text
//! group    := [ cyclic "." ] product [ "in" ambient ]
//! cyclic   := "Z" INT
//! product  := term { "x" term }
//! term     := simple { embed }
//! simple   := "SU(" INT ")" | "SO(" INT ")" | "Spin(" INT ")" | "Sp(" INT ")"
//!           | "U(" INT ")" | "SU{" INT {"," INT} "}" | "G2" | "T" INT | "S1"
//! embed    := "@[" INT ".." INT "]"
//!           | [ "[" ] "w(" SINT {"," SINT} ")" [":" ("R"|"C"|"H")] [ "]" ]
//!           | "#" TAG [ "(" SINT {"," SINT} ")" ]
//! ambient  := "SU(" INT ")" | "SO(" INT ")" | "Spin(" INT ")" | "Sp(" INT ")"
//! ```
//!
//! Whitespace is insignificant. Circle weights may be written bare
//! (`S1w(1,-1)`) or bracketed (`S1[w(1,-1)]`); the formatter always emits
//! the bracketed spelling.

use super::{
    Ambient, ClassicalFamily, EmbeddingData, Factor, FactorKind, GroupExpr, SpecialTag,
    WeightField,
};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src: src.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    /// Longest alphabetic run at the cursor, without consuming it.
    fn peek_word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.src.len() && (self.src[end] as char).is_ascii_alphabetic() {
            end += 1;
        }
        std::str::from_utf8(&self.src[start..end]).unwrap()
    }

    fn consume_word(&mut self, w: &str) {
        self.skip_ws();
        self.pos += w.len();
    }

    /// Longest alphanumeric run at the cursor (used for embedding tags).
    fn peek_tag(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.src.len() && (self.src[end] as char).is_ascii_alphanumeric() {
            end += 1;
        }
        std::str::from_utf8(&self.src[start..end]).unwrap()
    }

    fn parse_uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<u64>().map_err(|_| ParseError {
            offset: start,
            message: "integer out of range".into(),
        })
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let neg = self.eat(b'-');
        let v = self.parse_uint()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn parse_paren_uint(&mut self) -> Result<u32, ParseError> {
        self.expect(b'(')?;
        let n = self.parse_uint()?;
        self.expect(b')')?;
        Ok(n as u32)
    }

    fn parse_simple(&mut self) -> Result<FactorKind, ParseError> {
        let word = self.peek_word();
        // Maximal-munch words; "Spin" wins over "Sp", "SU" over "S".
        match word {
            "Spin" => {
                self.consume_word("Spin");
                let n = self.parse_paren_uint()?;
                if n < 3 {
                    return self.err("Spin(n) requires n >= 3");
                }
                Ok(FactorKind::SpinCover(n))
            }
            "SU" => {
                self.consume_word("SU");
                if self.peek() == Some(b'{') {
                    self.expect(b'{')?;
                    let mut parts = vec![self.parse_uint()? as u32];
                    while self.eat(b',') {
                        parts.push(self.parse_uint()? as u32);
                    }
                    self.expect(b'}')?;
                    if parts.len() < 2 {
                        return self.err("SU{..} needs at least two parts");
                    }
                    if parts.iter().any(|&p| p == 0) {
                        return self.err("SU{..} parts must be positive");
                    }
                    Ok(FactorKind::SUnitaryProduct(parts))
                } else {
                    let n = self.parse_paren_uint()?;
                    if n < 2 {
                        return self.err("SU(n) requires n >= 2");
                    }
                    Ok(FactorKind::SpecialUnitary(n))
                }
            }
            "SO" => {
                self.consume_word("SO");
                let n = self.parse_paren_uint()?;
                if n < 2 {
                    return self.err("SO(n) requires n >= 2");
                }
                Ok(FactorKind::SpecialOrthogonal(n))
            }
            "Sp" => {
                self.consume_word("Sp");
                let n = self.parse_paren_uint()?;
                if n < 1 {
                    return self.err("Sp(n) requires n >= 1");
                }
                Ok(FactorKind::Symplectic(n))
            }
            "U" => {
                self.consume_word("U");
                let n = self.parse_paren_uint()?;
                if n < 1 {
                    return self.err("U(n) requires n >= 1");
                }
                Ok(FactorKind::Unitary(n))
            }
            "G" => {
                self.consume_word("G");
                if self.eat(b'2') {
                    Ok(FactorKind::ExceptionalG2)
                } else {
                    self.err("expected G2")
                }
            }
            "T" => {
                self.consume_word("T");
                let r = self.parse_uint()? as u32;
                if r == 0 {
                    return self.err("T r requires r >= 1");
                }
                Ok(FactorKind::Torus(r))
            }
            "S" => {
                self.consume_word("S");
                if self.eat(b'1') {
                    Ok(FactorKind::Torus(1))
                } else {
                    self.err("expected S1")
                }
            }
            _ => self.err("expected a group symbol"),
        }
    }

    fn parse_weights(&mut self, e: &mut EmbeddingData) -> Result<(), ParseError> {
        // cursor sits on 'w'
        self.consume_word("w");
        self.expect(b'(')?;
        let mut weights = vec![self.parse_int()?];
        while self.eat(b',') {
            weights.push(self.parse_int()?);
        }
        self.expect(b')')?;
        let mut field = WeightField::Complex;
        if self.eat(b':') {
            field = match self.peek() {
                Some(b'R') => WeightField::Real,
                Some(b'C') => WeightField::Complex,
                Some(b'H') => WeightField::Quaternionic,
                _ => return self.err("expected field tag R, C or H"),
            };
            self.pos += 1;
        }
        if weights.iter().all(|&w| w == 0) {
            return self.err("weight vector must be nonzero");
        }
        if e.weights.is_some() {
            return self.err("duplicate weight vector");
        }
        e.weights = Some((weights, field));
        Ok(())
    }

    fn parse_embed(&mut self, e: &mut EmbeddingData) -> Result<bool, ParseError> {
        match self.peek() {
            Some(b'@') => {
                self.pos += 1;
                self.expect(b'[')?;
                let lo = self.parse_uint()? as u32;
                self.expect(b'.')?;
                self.expect(b'.')?;
                let hi = self.parse_uint()? as u32;
                self.expect(b']')?;
                if lo == 0 || hi < lo {
                    return self.err("block range must be 1-based and nonempty");
                }
                if e.block.is_some() {
                    return self.err("duplicate block range");
                }
                e.block = Some((lo, hi));
                Ok(true)
            }
            Some(b'[') => {
                // bracketed weight vector: [w(...)]
                let save = self.pos;
                self.pos += 1;
                if self.peek_word() != "w" {
                    self.pos = save;
                    return Ok(false);
                }
                self.parse_weights(e)?;
                self.expect(b']')?;
                Ok(true)
            }
            Some(b'w') => {
                // lookahead: only a weight list if '(' follows
                let save = self.pos;
                self.consume_word("w");
                if self.peek() != Some(b'(') {
                    self.pos = save;
                    return Ok(false);
                }
                self.pos = save;
                self.parse_weights(e)?;
                Ok(true)
            }
            Some(b'#') => {
                self.pos += 1;
                let run = self.peek_tag();
                // tags are matched by known prefix: the following factor
                // separator 'x' would otherwise be swallowed by the
                // alphanumeric run
                const TAGS: [(&str, SpecialTag); 5] = [
                    ("spin7so8", SpecialTag::Spin7InSo8),
                    ("irr3in3c", SpecialTag::IrrSo3InSu3),
                    ("irr3in5", SpecialTag::IrrSo3InSo5),
                    ("g2so7", SpecialTag::G2InSo7),
                    ("dsp1", SpecialTag::DeltaSp1),
                ];
                let word = TAGS
                    .iter()
                    .find(|(t, _)| run.starts_with(t))
                    .map(|(t, _)| *t)
                    .or(if run.starts_with("du1") {
                        Some("du1")
                    } else if run.starts_with("sigma") {
                        Some("sigma")
                    } else {
                        None
                    })
                    .unwrap_or("");
                match word {
                    "g2so7" | "spin7so8" | "irr3in5" | "irr3in3c" | "dsp1" => {
                        let tag = TAGS.iter().find(|(t, _)| *t == word).unwrap().1;
                        self.consume_word(word);
                        if e.special.is_some() {
                            return self.err("duplicate special tag");
                        }
                        e.special = Some(tag);
                        Ok(true)
                    }
                    "du1" => {
                        self.consume_word("du1");
                        self.expect(b'(')?;
                        let l = self.parse_int()?;
                        self.expect(b')')?;
                        if e.du1.is_some() {
                            return self.err("duplicate du1 tag");
                        }
                        e.du1 = Some(l);
                        Ok(true)
                    }
                    "sigma" => {
                        self.consume_word("sigma");
                        self.expect(b'(')?;
                        let mut perm = vec![self.parse_int()?];
                        while self.eat(b',') {
                            perm.push(self.parse_int()?);
                        }
                        self.expect(b')')?;
                        let mut seen = vec![false; perm.len()];
                        for &p in &perm {
                            let a = p.unsigned_abs() as usize;
                            if a == 0 || a > perm.len() || seen[a - 1] {
                                return self.err("sigma is not a signed permutation");
                            }
                            seen[a - 1] = true;
                        }
                        if e.sigma.is_some() {
                            return self.err("duplicate sigma tag");
                        }
                        e.sigma = Some(perm);
                        Ok(true)
                    }
                    _ => self.err("unknown embedding tag"),
                }
            }
            _ => Ok(false),
        }
    }

    fn parse_term(&mut self) -> Result<Factor, ParseError> {
        let kind = self.parse_simple()?;
        let mut embedding = EmbeddingData::default();
        while self.parse_embed(&mut embedding)? {}
        if embedding.weights.is_some() && !matches!(kind, FactorKind::Torus(1)) {
            return self.err("weight vectors only decorate circles (S1)");
        }
        Ok(Factor { kind, embedding })
    }

    fn parse_ambient(&mut self) -> Result<Ambient, ParseError> {
        let word = self.peek_word();
        let family = match word {
            "Spin" => ClassicalFamily::Spin,
            "SU" => ClassicalFamily::SU,
            "SO" => ClassicalFamily::SO,
            "Sp" => ClassicalFamily::Sp,
            _ => return self.err("expected an ambient group (SU/SO/Spin/Sp)"),
        };
        self.consume_word(word);
        let size = self.parse_paren_uint()?;
        Ok(Ambient { family, size })
    }

    fn parse_group(&mut self) -> Result<GroupExpr, ParseError> {
        let mut component_order = 1u64;
        // cyclic marker "Zk."
        self.skip_ws();
        if self.peek_word() == "Z" {
            let save = self.pos;
            self.consume_word("Z");
            match self.parse_uint() {
                Ok(k) if self.eat(b'.') => {
                    if k == 0 {
                        return self.err("component order must be positive");
                    }
                    component_order = k;
                }
                _ => self.pos = save,
            }
        }
        let mut factors = vec![self.parse_term()?];
        while self.peek() == Some(b'x') {
            self.pos += 1;
            factors.push(self.parse_term()?);
        }
        let mut ambient = None;
        if self.peek_word() == "in" {
            self.consume_word("in");
            ambient = Some(self.parse_ambient()?);
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("unexpected trailing input");
        }
        let g = GroupExpr { factors, component_order, ambient };
        validate_semantics(&g, self.src.len())?;
        Ok(g)
    }
}

fn validate_semantics(g: &GroupExpr, len: usize) -> Result<(), ParseError> {
    let fail = |m: String| ParseError { offset: len, message: m };
    if let Some(ambient) = g.ambient {
        if super::rank(g) > ambient.rank() {
            return Err(fail(format!(
                "rank {} exceeds ambient rank {}",
                super::rank(g),
                ambient.rank()
            )));
        }
        if super::dim(g) > ambient.dim() {
            return Err(fail(format!(
                "dimension {} exceeds ambient dimension {}",
                super::dim(g),
                ambient.dim()
            )));
        }
        let slots = ambient.slot_count();
        for f in &g.factors {
            if let Some((w, field)) = &f.embedding.weights {
                let expected = match (ambient.family, field) {
                    (ClassicalFamily::SO | ClassicalFamily::Spin, WeightField::Quaternionic) => {
                        return Err(fail(
                            "quaternionic weights do not fit an orthogonal ambient".into(),
                        ))
                    }
                    _ => slots,
                };
                if w.len() as u32 != expected {
                    return Err(fail(format!(
                        "weight vector length {} does not match the {} ambient slots",
                        w.len(),
                        expected
                    )));
                }
                if ambient.has_odd_real_slot() && *w.last().unwrap() != 0 {
                    return Err(fail(
                        "the unpaired real coordinate cannot carry a circle weight".into(),
                    ));
                }
            }
            if let Some(support) = super::factor_real_support(f, ambient) {
                if support.iter().any(|&r| r == 0 || r > ambient.size) {
                    return Err(fail("block range exceeds the ambient size".into()));
                }
            }
        }
        // Standard blocks of distinct factors must be pairwise disjoint;
        // diagonal embeddings (dsp1, du1) may share coordinates.
        let mut supports: Vec<std::collections::BTreeSet<u32>> = Vec::new();
        for f in &g.factors {
            if f.embedding.special.is_some() || f.embedding.du1.is_some() {
                continue;
            }
            if f.embedding.block.is_some() {
                if let Some(s) = super::factor_real_support(f, ambient) {
                    for old in &supports {
                        if old.intersection(&s).next().is_some() {
                            return Err(fail("overlapping standard blocks".into()));
                        }
                    }
                    supports.push(s);
                }
            }
        }
    }
    Ok(())
}

/// Parse a group expression; errors carry the byte offset of the failure.
pub fn parse_group(text: &str) -> Result<GroupExpr, ParseError> {
    Parser::new(text).parse_group()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{dim, format_group, normalize_group, rank};

    #[test]
    fn single_factor() {
        let g = parse_group("SU(4)").unwrap();
        assert_eq!(g.factors.len(), 1);
        assert_eq!(g.factors[0].kind, FactorKind::SpecialUnitary(4));
        assert_eq!(g.component_order, 1);
        assert!(g.ambient.is_none());
    }

    #[test]
    fn full_expression() {
        let g = parse_group("Z2.S1[w(1,-1,0,0)]xSU(2)@[3..4] in SU(4)").unwrap();
        assert_eq!(g.component_order, 2);
        assert_eq!(g.factors.len(), 2);
        assert_eq!(g.factors[0].kind, FactorKind::Torus(1));
        assert_eq!(
            g.factors[0].embedding.weights,
            Some((vec![1, -1, 0, 0], WeightField::Complex))
        );
        assert_eq!(g.factors[1].embedding.block, Some((3, 4)));
        assert_eq!(g.ambient, Some(Ambient::new(ClassicalFamily::SU, 4)));
    }

    #[test]
    fn named_special() {
        let g = parse_group("G2#g2so7 in SO(7)").unwrap();
        assert_eq!(g.factors[0].kind, FactorKind::ExceptionalG2);
        assert_eq!(g.factors[0].embedding.special, Some(SpecialTag::G2InSo7));
    }

    #[test]
    fn bare_and_bracketed_weights_agree() {
        let a = parse_group("S1w(1,-1,0) in SU(3)").unwrap();
        let b = parse_group("S1[w(1,-1,0)] in SU(3)").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn composite_and_sigma() {
        let g = parse_group("SU{1,3}#sigma(2,1,3,4) in SU(4)").unwrap();
        assert_eq!(g.factors[0].kind, FactorKind::SUnitaryProduct(vec![1, 3]));
        assert_eq!(g.factors[0].embedding.sigma, Some(vec![2, 1, 3, 4]));
    }

    #[test]
    fn error_offsets() {
        let e = parse_group("SU(4)xx").unwrap_err();
        assert!(e.offset >= 6);
        assert!(parse_group("Q7").is_err());
        assert!(parse_group("SU(1)").is_err());
        assert!(parse_group("S1w(0,0)").is_err());
    }

    #[test]
    fn overlapping_blocks_rejected() {
        assert!(parse_group("SU(2)@[1..2]xSU(2)@[2..3] in SU(4)").is_err());
        assert!(parse_group("SU(2)@[1..2]xSU(2)@[3..4] in SU(4)").is_ok());
    }

    #[test]
    fn weight_length_checked() {
        assert!(parse_group("S1[w(1,-1)] in SU(3)").is_err());
        assert!(parse_group("S1[w(2,1,1,0)] in SO(7)").is_ok());
        // unpaired real coordinate must stay fixed
        assert!(parse_group("S1[w(2,1,1,1)] in SO(7)").is_err());
    }

    #[test]
    fn round_trip_examples() {
        for text in [
            "SU(4)",
            "SU(3)",
            "T2",
            "Z2.SO(8)",
            "G2#g2so7 in SO(7)",
            "S1[w(2,-1,-1,0)]xSU(2)@[2..3] in SO(7)",
            "SU{1,3}#sigma(2,1,3,4) in SU(4)",
            "Sp(1)#irr3in5@[1..2]xSp(2)@[3..4] in Sp(4)",
        ] {
            let g = parse_group(text).unwrap();
            let formatted = format_group(&g);
            let reparsed = parse_group(&formatted).unwrap();
            assert_eq!(reparsed, normalize_group(&g), "round trip failed for {text}");
            assert_eq!(format_group(&reparsed), formatted);
        }
    }

    #[test]
    fn rank_dim_vs_ambient() {
        assert!(parse_group("SU(4)xSU(4) in SU(4)").is_err());
        let g = parse_group("SU(2)@[1..2] in SU(4)").unwrap();
        assert_eq!(rank(&g), 1);
        assert_eq!(dim(&g), 3);
    }
}
