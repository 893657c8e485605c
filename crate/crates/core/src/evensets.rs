//! GF(2) codes of 2-divisible sets of disjoint rational curves on a K3.
//!
//! Codewords are the supports of half-integral glue classes built from
//! disjoint (-2)-curves. On a K3 surface a nonzero such class has weight 8
//! or 16, and two distinct weight-8 classes meet in 0 or 4 positions; those
//! two laws are what [`validate_even_code`] enforces. Bit rows are stored in
//! machine words (positions fit easily in a u32) and weights come from
//! population count.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_CODE_DIMENSION: usize = 20;

/// A binary linear code given by generator rows over `m` positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    m: usize,
    generators: Vec<u32>,
}

impl BinaryCode {
    /// Generators must be linearly independent over GF(2).
    pub fn new(m: usize, generators: Vec<u32>) -> Result<BinaryCode> {
        if m > 32 {
            return Err(Error::Resource(format!("code length {m} exceeds 32")));
        }
        let mask = if m == 32 { u32::MAX } else { (1u32 << m) - 1 };
        for g in &generators {
            if g & !mask != 0 {
                return Err(Error::Shape(format!(
                    "generator {g:#b} uses positions beyond length {m}"
                )));
            }
        }
        if !independent(&generators) {
            return Err(Error::Shape("generators are linearly dependent".into()));
        }
        Ok(BinaryCode { m, generators })
    }

    /// Build from 1-based position lists, the way glue patterns are written.
    pub fn from_position_lists(m: usize, rows: &[&[usize]]) -> Result<BinaryCode> {
        let generators = rows
            .iter()
            .map(|row| {
                let mut w = 0u32;
                for &p in row.iter() {
                    assert!(p >= 1 && p <= m, "position {p} out of 1..={m}");
                    w |= 1 << (p - 1);
                }
                w
            })
            .collect();
        BinaryCode::new(m, generators)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    /// All 2^dim codewords, deduplicated.
    pub fn codewords(&self) -> Result<Vec<u32>> {
        if self.dimension() > MAX_CODE_DIMENSION {
            return Err(Error::Resource(format!(
                "enumeration of 2^{} codewords refused",
                self.dimension()
            )));
        }
        let mut words = vec![0u32];
        for g in &self.generators {
            let mut next = Vec::with_capacity(words.len() * 2);
            for w in &words {
                next.push(*w);
                next.push(*w ^ *g);
            }
            words = next;
        }
        words.sort_unstable();
        words.dedup();
        Ok(words)
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}] code", self.m, self.dimension())
    }
}

fn independent(rows: &[u32]) -> bool {
    let mut basis: Vec<u32> = Vec::new();
    for &row in rows {
        let mut r = row;
        for &b in &basis {
            let pivot = 1u32 << (31 - b.leading_zeros());
            if r & pivot != 0 {
                r ^= b;
            }
        }
        if r == 0 {
            return false;
        }
        basis.push(r);
        basis.sort_unstable_by_key(|b| std::cmp::Reverse(*b));
    }
    true
}

/// One broken rule found by [`validate_even_code`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// A nonzero codeword whose weight is not 8 or 16.
    Weight { word: Vec<usize>, weight: u32 },
    /// Two weight-8 codewords sharing a number of positions other than 0 or 4.
    Intersection {
        word_a: Vec<usize>,
        word_b: Vec<usize>,
        shared: u32,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct EvenSetVerdict {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

fn positions(word: u32) -> Vec<usize> {
    (0..32).filter(|i| word >> i & 1 == 1).map(|i| i + 1).collect()
}

/// Check the two even-set laws on every codeword and codeword pair.
pub fn validate_even_code(code: &BinaryCode) -> Result<EvenSetVerdict> {
    let words = code.codewords()?;
    let mut violations = Vec::new();
    for &w in &words {
        if w == 0 {
            continue;
        }
        let weight = w.count_ones();
        if weight != 8 && weight != 16 {
            violations.push(Violation::Weight {
                word: positions(w),
                weight,
            });
        }
    }
    let eights: Vec<u32> = words.iter().copied().filter(|w| w.count_ones() == 8).collect();
    for (i, &a) in eights.iter().enumerate() {
        for &b in eights.iter().skip(i + 1) {
            let shared = (a & b).count_ones();
            if shared != 0 && shared != 4 {
                violations.push(Violation::Intersection {
                    word_a: positions(a),
                    word_b: positions(b),
                    shared,
                });
            }
        }
    }
    Ok(EvenSetVerdict {
        valid: violations.is_empty(),
        violations,
    })
}

/// Identifiers of the five glue codes of the even-set lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EvenSetCodeId {
    /// 8 curves, one even eight.
    M1,
    /// 12 curves, two even eights.
    M2,
    /// 14 curves, three even eights.
    M3,
    /// 15 curves, four even eights.
    M4,
    /// 16 curves: the Kummer configuration.
    Kummer,
}

impl EvenSetCodeId {
    pub const ALL: [EvenSetCodeId; 5] = [
        EvenSetCodeId::M1,
        EvenSetCodeId::M2,
        EvenSetCodeId::M3,
        EvenSetCodeId::M4,
        EvenSetCodeId::Kummer,
    ];

    pub fn positions(self) -> usize {
        match self {
            EvenSetCodeId::M1 => 8,
            EvenSetCodeId::M2 => 12,
            EvenSetCodeId::M3 => 14,
            EvenSetCodeId::M4 => 15,
            EvenSetCodeId::Kummer => 16,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            EvenSetCodeId::M1 => "M_2e1",
            EvenSetCodeId::M2 => "M_2e2",
            EvenSetCodeId::M3 => "M_2e3",
            EvenSetCodeId::M4 => "M_2e4",
            EvenSetCodeId::Kummer => "K",
        }
    }
}

const ROW_1_8: &[usize] = &[1, 2, 3, 4, 5, 6, 7, 8];
const ROW_5_12: &[usize] = &[5, 6, 7, 8, 9, 10, 11, 12];
const ROW_PAIRS: &[usize] = &[1, 2, 5, 6, 9, 10, 13, 14];
const ROW_ODDS: &[usize] = &[1, 3, 5, 7, 9, 11, 13, 15];
const ROW_1_16: &[usize] = &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16];

/// The generator rows of the named glue code, with the standard index
/// patterns 1..8, 5..12, {1,2,5,6,9,10,13,14}, {1,3,5,7,9,11,13,15} and,
/// for the Kummer code, the all-ones row.
pub fn code_of(id: EvenSetCodeId) -> BinaryCode {
    let m = id.positions();
    let rows: Vec<&[usize]> = match id {
        EvenSetCodeId::M1 => vec![ROW_1_8],
        EvenSetCodeId::M2 => vec![ROW_1_8, ROW_5_12],
        EvenSetCodeId::M3 => vec![ROW_1_8, ROW_5_12, ROW_PAIRS],
        EvenSetCodeId::M4 => vec![ROW_1_8, ROW_5_12, ROW_PAIRS, ROW_ODDS],
        EvenSetCodeId::Kummer => vec![ROW_1_8, ROW_5_12, ROW_PAIRS, ROW_ODDS, ROW_1_16],
    };
    BinaryCode::from_position_lists(m, &rows).expect("fixed glue patterns are independent")
}

/// One entry of the minimal-primitive-lattice table for m disjoint rational
/// curves: an optional glue code plus a number of free <-2> summands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalPrimitiveOption {
    pub code: Option<EvenSetCodeId>,
    pub extra_minus_two: usize,
}

impl MinimalPrimitiveOption {
    pub fn code_dimension(&self) -> usize {
        match self.code {
            None => 0,
            Some(EvenSetCodeId::M1) => 1,
            Some(EvenSetCodeId::M2) => 2,
            Some(EvenSetCodeId::M3) => 3,
            Some(EvenSetCodeId::M4) => 4,
            Some(EvenSetCodeId::Kummer) => 5,
        }
    }
}

impl fmt::Display for MinimalPrimitiveOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.code, self.extra_minus_two) {
            (None, k) => write!(f, "<-2>^{k}"),
            (Some(c), 0) => write!(f, "{}", c.name()),
            (Some(c), k) => write!(f, "{} + <-2>^{k}", c.name()),
        }
    }
}

/// Minimal primitive sublattices containing m disjoint rational curves.
///
/// Every table line whose stated range contains m is returned; the ranges
/// overlap at m = 12 and both options are kept. m > 16 is impossible and
/// yields an empty list.
pub fn minimal_primitive_options(m: usize) -> Result<Vec<MinimalPrimitiveOption>> {
    if m == 0 {
        return Err(Error::Domain("need at least one curve".into()));
    }
    let mut out = Vec::new();
    if m <= 11 {
        out.push(MinimalPrimitiveOption {
            code: None,
            extra_minus_two: m,
        });
    }
    if (8..=12).contains(&m) {
        out.push(MinimalPrimitiveOption {
            code: Some(EvenSetCodeId::M1),
            extra_minus_two: m - 8,
        });
    }
    if (12..=13).contains(&m) {
        out.push(MinimalPrimitiveOption {
            code: Some(EvenSetCodeId::M2),
            extra_minus_two: m - 12,
        });
    }
    if m == 14 {
        out.push(MinimalPrimitiveOption {
            code: Some(EvenSetCodeId::M3),
            extra_minus_two: 0,
        });
    }
    if m == 15 {
        out.push(MinimalPrimitiveOption {
            code: Some(EvenSetCodeId::M4),
            extra_minus_two: 0,
        });
    }
    if m == 16 {
        out.push(MinimalPrimitiveOption {
            code: Some(EvenSetCodeId::Kummer),
            extra_minus_two: 0,
        });
    }
    Ok(out)
}

/// Smallest glue-code dimension a set of m disjoint rational curves forces.
pub fn forced_code_dimension(m: usize) -> Result<usize> {
    let options = minimal_primitive_options(m)?;
    options
        .iter()
        .map(|o| o.code_dimension())
        .min()
        .ok_or_else(|| Error::Domain(format!("no K3 surface carries {m} disjoint rational curves")))
}

/// Code JSON: `{"m": int, "generators": [[0|1, ...]]}`.
#[derive(Serialize, Deserialize)]
pub struct CodeJson {
    pub m: usize,
    pub generators: Vec<Vec<u8>>,
}

impl CodeJson {
    pub fn from_code(code: &BinaryCode) -> CodeJson {
        let generators = code
            .generators()
            .iter()
            .map(|&g| (0..code.len()).map(|i| ((g >> i) & 1) as u8).collect())
            .collect();
        CodeJson {
            m: code.len(),
            generators,
        }
    }

    pub fn to_code(&self) -> Result<BinaryCode> {
        let generators = self
            .generators
            .iter()
            .map(|bits| {
                let mut w = 0u32;
                for (i, &b) in bits.iter().enumerate() {
                    if b > 1 {
                        return Err(Error::Parse("code entries must be 0 or 1".into()));
                    }
                    if b == 1 {
                        w |= 1 << i;
                    }
                }
                if bits.len() != self.m {
                    return Err(Error::Shape("generator length != m".into()));
                }
                Ok(w)
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryCode::new(self.m, generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_code_has_zero_word() {
        let c = BinaryCode::new(8, vec![]).unwrap();
        assert_eq!(c.codewords().unwrap(), vec![0]);
    }

    #[test]
    fn two_even_eights_overlapping_in_four() {
        let c = code_of(EvenSetCodeId::M2);
        let words = c.codewords().unwrap();
        assert_eq!(words.len(), 4);
        let mut weights: Vec<u32> = words.iter().map(|w| w.count_ones()).collect();
        weights.sort_unstable();
        assert_eq!(weights, vec![0, 8, 8, 8]);
    }

    #[test]
    fn kummer_code_has_32_words_and_all_ones() {
        let c = code_of(EvenSetCodeId::Kummer);
        let words = c.codewords().unwrap();
        assert_eq!(words.len(), 32);
        assert!(words.contains(&0xFFFF));
    }

    #[test]
    fn five_glue_codes_validate() {
        for id in EvenSetCodeId::ALL {
            let verdict = validate_even_code(&code_of(id)).unwrap();
            assert!(verdict.valid, "{id:?}: {:?}", verdict.violations);
        }
    }

    #[test]
    fn generator_rows_match_the_index_patterns() {
        let rows = |id: EvenSetCodeId| -> Vec<Vec<usize>> {
            code_of(id).generators().iter().map(|&g| positions(g)).collect()
        };
        assert_eq!(rows(EvenSetCodeId::M1), vec![(1..=8).collect::<Vec<_>>()]);
        assert_eq!(
            rows(EvenSetCodeId::M3),
            vec![
                (1..=8).collect::<Vec<_>>(),
                (5..=12).collect::<Vec<_>>(),
                vec![1, 2, 5, 6, 9, 10, 13, 14],
            ]
        );
        let k = rows(EvenSetCodeId::Kummer);
        assert_eq!(k.len(), 5);
        assert_eq!(k[3], vec![1, 3, 5, 7, 9, 11, 13, 15]);
        assert_eq!(k[4], (1..=16).collect::<Vec<_>>());
    }

    #[test]
    fn weight_six_generator_invalid() {
        let c = BinaryCode::from_position_lists(8, &[&[1, 2, 3, 4, 5, 6]]).unwrap();
        let verdict = validate_even_code(&c).unwrap();
        assert!(!verdict.valid);
        assert!(matches!(verdict.violations[0], Violation::Weight { weight: 6, .. }));
    }

    #[test]
    fn overlap_two_reports_both_violations() {
        // weights 8 and 8 overlapping in 2: the pair violates the
        // intersection law and the sum (weight 12) violates the weight law
        let c = BinaryCode::from_position_lists(
            14,
            &[&[1, 2, 3, 4, 5, 6, 7, 8], &[7, 8, 9, 10, 11, 12, 13, 14]],
        )
        .unwrap();
        let verdict = validate_even_code(&c).unwrap();
        assert!(!verdict.valid);
        let has_weight = verdict
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Weight { weight: 12, .. }));
        let has_isect = verdict
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Intersection { shared: 2, .. }));
        assert!(has_weight && has_isect, "{:?}", verdict.violations);
    }

    #[test]
    fn dependent_generators_rejected() {
        assert!(BinaryCode::new(4, vec![0b0011, 0b0101, 0b0110]).is_err());
    }

    #[test]
    fn minimal_primitive_table() {
        let opt = |m: usize| minimal_primitive_options(m).unwrap();
        assert_eq!(
            opt(7),
            vec![MinimalPrimitiveOption { code: None, extra_minus_two: 7 }]
        );
        assert_eq!(opt(8).len(), 2);
        assert_eq!(
            opt(12),
            vec![
                MinimalPrimitiveOption { code: Some(EvenSetCodeId::M1), extra_minus_two: 4 },
                MinimalPrimitiveOption { code: Some(EvenSetCodeId::M2), extra_minus_two: 0 },
            ]
        );
        assert_eq!(
            opt(14),
            vec![MinimalPrimitiveOption { code: Some(EvenSetCodeId::M3), extra_minus_two: 0 }]
        );
        assert!(opt(17).is_empty());
        assert!(minimal_primitive_options(0).is_err());
    }

    #[test]
    fn forced_dimension_steps() {
        let dims: Vec<usize> = (1..=16).map(|m| forced_code_dimension(m).unwrap()).collect();
        assert_eq!(dims, vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 2, 3, 4, 5]);
        assert!(forced_code_dimension(17).is_err());
    }

    #[test]
    fn code_json_roundtrip() {
        let c = code_of(EvenSetCodeId::M3);
        let js = CodeJson::from_code(&c);
        let s = serde_json::to_string(&js).unwrap();
        let back: CodeJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back.to_code().unwrap(), c);
    }
}
