//! Named lattices of the double-cover classification, candidate lists for
//! the Neron-Severi groups, embedding checks against the K3 lattice, and
//! the fixed-locus bookkeeping of nonsymplectic involutions.

pub mod derive;

use num_bigint::BigInt;

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::evensets::{self, EvenSetCodeId};
use crate::exactlin::IntMatrix;
use crate::lattice::{GlueVector, Lattice};

/// One member of the L_n^(r) family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LnId {
    pub n: usize,
    pub r: usize,
}

impl fmt::Display for LnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L_{}_{}", self.n, self.r)
    }
}

/// Every lattice addressable by a string id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedLatticeId {
    Ln(LnId),
    EvenSet(EvenSetCodeId),
    U,
    U2,
    D4,
    /// Rank-one lattice <2d>, stored as the Gram entry 2d.
    RankOne(i64),
    /// Rank-10 2-elementary NS of the double plane branched on two cubics.
    TwoCubics,
}

impl NamedLatticeId {
    pub fn parse(s: &str) -> Result<NamedLatticeId> {
        match s {
            "U" => return Ok(NamedLatticeId::U),
            "U2" => return Ok(NamedLatticeId::U2),
            "D4" => return Ok(NamedLatticeId::D4),
            "K" => return Ok(NamedLatticeId::EvenSet(EvenSetCodeId::Kummer)),
            "TwoCubics" => return Ok(NamedLatticeId::TwoCubics),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("M_2e") {
            let id = match rest {
                "1" => EvenSetCodeId::M1,
                "2" => EvenSetCodeId::M2,
                "3" => EvenSetCodeId::M3,
                "4" => EvenSetCodeId::M4,
                _ => return Err(Error::UnknownId(s.into())),
            };
            return Ok(NamedLatticeId::EvenSet(id));
        }
        if let Some(rest) = s.strip_prefix("R2d:") {
            let v: i64 = rest
                .parse()
                .map_err(|_| Error::UnknownId(s.into()))?;
            if v == 0 || v % 2 != 0 {
                return Err(Error::Domain(format!(
                    "rank-one lattice must have even nonzero Gram entry, got {v}"
                )));
            }
            return Ok(NamedLatticeId::RankOne(v));
        }
        if let Some(rest) = s.strip_prefix("L_") {
            let mut parts = rest.split('_');
            let (Some(n), Some(r), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::UnknownId(s.into()));
            };
            let n: usize = n.parse().map_err(|_| Error::UnknownId(s.into()))?;
            let r: usize = r.parse().map_err(|_| Error::UnknownId(s.into()))?;
            return Ok(NamedLatticeId::Ln(LnId { n, r }));
        }
        Err(Error::UnknownId(s.into()))
    }

    pub fn build(&self) -> Result<Lattice> {
        let (base, glue) = self.recipe()?;
        if glue.is_empty() {
            return Ok(base);
        }
        let name = base.name.clone();
        Ok(base.glue_overlattice(&glue)?.lattice.named(name))
    }

    /// Base lattice plus the glue vectors that define the named lattice.
    pub fn recipe(&self) -> Result<(Lattice, Vec<GlueVector>)> {
        match self {
            NamedLatticeId::Ln(id) => ln_recipe(id.n, id.r),
            NamedLatticeId::EvenSet(id) => Ok(even_set_recipe(*id)),
            NamedLatticeId::U => Ok((build_u(), vec![])),
            NamedLatticeId::U2 => Ok((build_u2(), vec![])),
            NamedLatticeId::D4 => Ok((build_d4(), vec![])),
            NamedLatticeId::RankOne(v) => Ok((build_rank_one(*v)?, vec![])),
            NamedLatticeId::TwoCubics => Ok(two_cubics_recipe()),
        }
    }
}

/// The hyperbolic plane U.
pub fn build_u() -> Lattice {
    let gram = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
    Lattice::from_gram(gram, vec!["e".into(), "f".into()])
        .unwrap()
        .named("U")
}

/// U(2).
pub fn build_u2() -> Lattice {
    build_u().rescale(&BigInt::from(2)).unwrap().named("U2")
}

/// Negated Cartan matrix of D4: even, negative definite, determinant 4.
pub fn build_d4() -> Lattice {
    let gram = IntMatrix::from_rows(&[
        vec![-2, 1, 1, 1],
        vec![1, -2, 0, 0],
        vec![1, 0, -2, 0],
        vec![1, 0, 0, -2],
    ])
    .unwrap();
    let labels = (1..=4).map(|i| format!("a{i}")).collect();
    Lattice::from_gram(gram, labels).unwrap().named("D4")
}

/// <2d>, passed as the Gram entry 2d (must be even and nonzero).
pub fn build_rank_one(two_d: i64) -> Result<Lattice> {
    if two_d == 0 || two_d % 2 != 0 {
        return Err(Error::Domain(format!(
            "rank-one lattice needs an even nonzero Gram entry, got {two_d}"
        )));
    }
    let gram = IntMatrix::from_rows(&[vec![two_d]]).unwrap();
    Ok(Lattice::from_gram(gram, vec!["h".into()])?.named(format!("R2d:{two_d}")))
}

// glue masks shared with the even-set codes; bit i means r_{i+1}
fn glue_masks(count: usize) -> Vec<u32> {
    evensets::code_of(EvenSetCodeId::Kummer).generators()[..count].to_vec()
}

pub(crate) fn mask_to_glue(mask: u32, rank: usize, offset: usize) -> GlueVector {
    let positions: Vec<usize> = (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + offset)
        .collect();
    GlueVector::half_support(rank, &positions)
}

/// Domain of the L_n^(r) definitions: the least n for which the glue
/// pattern of index r fits among the n-1 rational classes.
pub fn ln_min_n(r: usize) -> Option<usize> {
    match r {
        1 => Some(6),
        2 => Some(9),
        4 => Some(13),
        8 => Some(15),
        16 => Some(16),
        _ => None,
    }
}

fn ln_recipe(n: usize, r: usize) -> Result<(Lattice, Vec<GlueVector>)> {
    let Some(min_n) = ln_min_n(r) else {
        return Err(Error::Domain(format!(
            "no lattice L_n^({r}): r must be one of 1, 2, 4, 8, 16"
        )));
    };
    if n < min_n {
        return Err(Error::Domain(format!(
            "L_{n}^({r}) undefined: needs n >= {min_n}"
        )));
    }
    // basis (d, r_1, ..., r_{n-1}): d^2 = r_i^2 = -2, d.r_i = 1, r_i.r_j = 0
    let mut gram = IntMatrix::zero(n, n);
    gram[(0, 0)] = BigInt::from(-2);
    for i in 1..n {
        gram[(0, i)] = BigInt::from(1);
        gram[(i, 0)] = BigInt::from(1);
        gram[(i, i)] = BigInt::from(-2);
    }
    let mut labels = vec!["d".to_string()];
    labels.extend((1..n).map(|i| format!("r{i}")));
    let base = Lattice::from_gram(gram, labels)?.named(format!("L_{n}_{r}"));
    let k = (r as u32).trailing_zeros() as usize;
    let glues = glue_masks(k)
        .into_iter()
        .map(|m| mask_to_glue(m, n, 1))
        .collect();
    Ok((base, glues))
}

/// L_n^(r) in the basis (d, r_1..r_{n-1}) extended by the glue half-sums.
pub fn build_ln(n: usize, r: usize) -> Result<Lattice> {
    NamedLatticeId::Ln(LnId { n, r }).build()
}

fn even_set_recipe(id: EvenSetCodeId) -> (Lattice, Vec<GlueVector>) {
    let m = id.positions();
    let diag: Vec<i64> = vec![-2; m];
    let gram = IntMatrix::diagonal(&diag);
    let labels = (1..=m).map(|i| format!("R{i}")).collect();
    let base = Lattice::from_gram(gram, labels).unwrap().named(id.name());
    let glues = evensets::code_of(id)
        .generators()
        .iter()
        .map(|&mask| mask_to_glue(mask, m, 0))
        .collect();
    (base, glues)
}

/// The lattice spanned by m disjoint (-2)-classes and the glue code of the
/// given even-set configuration.
pub fn build_even_set_lattice(id: EvenSetCodeId) -> Lattice {
    NamedLatticeId::EvenSet(id)
        .build()
        .expect("fixed even-set recipes glue cleanly")
}

fn two_cubics_recipe() -> (Lattice, Vec<GlueVector>) {
    // <2> + <-2>^9 glued by the half-sum of all ten basis classes
    let mut diag = vec![-2i64; 10];
    diag[0] = 2;
    let gram = IntMatrix::diagonal(&diag);
    let mut labels = vec!["c".to_string()];
    labels.extend((1..=9).map(|i| format!("r{i}")));
    let base = Lattice::from_gram(gram, labels).unwrap().named("TwoCubics");
    let glue = GlueVector::half_support(10, &(0..10).collect::<Vec<_>>());
    (base, vec![glue])
}

/// NS lattice of the K3 double plane branched along two cubics: rank 10,
/// 2-elementary of length 8 with integral discriminant form.
pub fn build_two_cubics_ns() -> Lattice {
    NamedLatticeId::TwoCubics.build().expect("fixed recipe")
}

/// The candidate list for NS(Y_n).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CandidateList {
    pub n: usize,
    pub entries: Vec<LnId>,
}

impl fmt::Display for CandidateList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "n={}: none", self.n);
        }
        let names: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "n={}: {}", self.n, names.join(", "))
    }
}

/// The classification's list of possible NS(Y_n) for branch loci with one
/// curve of genus n-4 >= 2 and n-1 rational curves.
pub fn ns_candidates(n: usize) -> CandidateList {
    let rs: &[usize] = match n {
        6..=8 => &[1],
        9..=12 => &[1, 2],
        13 => &[2, 4],
        14 => &[4],
        15 => &[8],
        16 => &[16],
        _ => &[],
    };
    CandidateList {
        n,
        entries: rs.iter().map(|&r| LnId { n, r }).collect(),
    }
}

/// All (n, r) pairs of the candidate family.
pub fn candidate_family() -> Vec<LnId> {
    (6..=16).flat_map(|n| ns_candidates(n).entries).collect()
}

/// Rederive the candidate list by brute force over glue classes.
pub fn derive_candidate_list(n: usize) -> Result<CandidateList> {
    Ok(derive::derive(n)?.list)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EmbeddingVerdict {
    Embeddable,
    NotEmbeddable,
    Undetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingStatus {
    pub verdict: EmbeddingVerdict,
    pub reason: String,
}

/// Can the lattice be primitively embedded in the K3 lattice (even,
/// unimodular, signature (3,19))?
///
/// NotEmbeddable when the necessary bound l(L) <= min(r, 22-r) fails;
/// Embeddable when the sufficient bound l(L) <= 20-r holds, or in the
/// boundary case when the discriminant form splits off a U(2) block
/// (the refined criterion used for the rank-12 index-1 candidate);
/// Undetermined otherwise.
pub fn embedding_status(l: &Lattice) -> Result<EmbeddingStatus> {
    let rank = l.rank();
    if !l.is_even() {
        return Err(Error::Domain("embedding check needs an even lattice".into()));
    }
    let (p, m, z) = l.signature();
    if !(p == 1 && z == 0 && m + 1 == rank) {
        return Err(Error::Domain(format!(
            "embedding check needs signature (1, rank-1), got ({p}, {m}, {z})"
        )));
    }
    let length = l.length()?;
    let bound = rank.min(22usize.saturating_sub(rank));
    if length > bound {
        return Ok(EmbeddingStatus {
            verdict: EmbeddingVerdict::NotEmbeddable,
            reason: format!("length {length} exceeds min(rank, 22 - rank) = {bound}"),
        });
    }
    let sufficient = 20usize.saturating_sub(rank);
    if length <= sufficient {
        return Ok(EmbeddingStatus {
            verdict: EmbeddingVerdict::Embeddable,
            reason: format!("length {length} <= 20 - rank = {sufficient}"),
        });
    }
    let dg = l.discriminant_group()?;
    if crate::lattice::splits_off_u2_form(&dg) {
        return Ok(EmbeddingStatus {
            verdict: EmbeddingVerdict::Embeddable,
            reason: "discriminant form splits off a U(2) block, which settles the \
                     boundary case of the embedding criterion"
                .into(),
        });
    }
    Ok(EmbeddingStatus {
        verdict: EmbeddingVerdict::Undetermined,
        reason: format!(
            "length {length} is between 20 - rank = {sufficient} and min(rank, 22 - rank) = {bound}, \
             and no U(2) splitting was found"
        ),
    })
}

/// Full invariant report of a lattice as a JSON value: rank, signature,
/// determinant, discriminant data and (when it applies) the 2-elementary
/// invariants and the K3 embedding verdict.
pub fn lattice_report(l: &Lattice) -> Result<serde_json::Value> {
    let (p, m, z) = l.signature();
    let degenerate = l.is_degenerate();
    let dg = if degenerate {
        None
    } else {
        Some(l.discriminant_group()?)
    };
    let two_elem = if degenerate {
        None
    } else {
        l.two_elementary_invariants()?
    };
    let embedding = if !degenerate && l.is_even() && p == 1 && z == 0 {
        Some(embedding_status(l)?)
    } else {
        None
    };
    Ok(serde_json::json!({
        "name": l.name,
        "rank": l.rank(),
        "labels": l.labels(),
        "even": l.is_even(),
        "degenerate": degenerate,
        "signature": {"plus": p, "minus": m, "zero": z},
        "det": if degenerate {
            serde_json::Value::Null
        } else {
            serde_json::Value::String(l.det_raw().to_string())
        },
        "elementary_divisors": dg.as_ref().map(|d| {
            d.elementary_divisors().iter().map(|x| x.to_string()).collect::<Vec<_>>()
        }),
        "qvalues": dg.as_ref().map(|d| {
            d.qvalues().iter().map(|q| q.to_string()).collect::<Vec<_>>()
        }),
        "length": dg.as_ref().map(|d| d.elementary_divisors().len()),
        "two_elementary": two_elem.map(|t| serde_json::json!({
            "r": t.rank, "a": t.length, "delta": t.delta,
        })),
        "embedding": embedding,
    }))
}

/// Fixed locus of the nonsymplectic involution attached to a 2-elementary
/// NS lattice with invariants (r, a, delta).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FixedLocus {
    /// One curve of genus g and k disjoint rational curves.
    Generic { genus: usize, rationals: usize },
    /// The (r, a) = (10, 8) case: two disjoint genus-1 curves.
    TwoElliptic,
}

impl fmt::Display for FixedLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixedLocus::Generic { genus, rationals } => match rationals {
                0 => write!(f, "one curve of genus {genus}"),
                1 => write!(f, "one curve of genus {genus} and 1 rational curve"),
                k => write!(f, "one curve of genus {genus} and {k} rational curves"),
            },
            FixedLocus::TwoElliptic => write!(f, "two disjoint curves of genus 1"),
        }
    }
}

pub fn fixed_locus_nonsymplectic(
    inv: &crate::lattice::TwoElementaryInvariants,
) -> Result<FixedLocus> {
    let (r, a) = (inv.rank, inv.length);
    if inv.delta > 1 || a > r || r > 20 {
        return Err(Error::Domain(format!(
            "not a valid 2-elementary triple: (r, a, delta) = ({r}, {a}, {})",
            inv.delta
        )));
    }
    if (r, a) == (10, 10) {
        return Err(Error::Domain(
            "(r, a) = (10, 10) is outside the supported fixed-locus table".into(),
        ));
    }
    if (r, a) == (10, 8) {
        return Ok(FixedLocus::TwoElliptic);
    }
    if (22 - r - a) % 2 != 0 {
        return Err(Error::Domain(format!(
            "22 - r - a = {} is odd; no fixed-locus descriptor",
            22 - r - a
        )));
    }
    Ok(FixedLocus::Generic {
        genus: (22 - r - a) / 2,
        rationals: (r - a) / 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::TwoElementaryInvariants;
    use num_traits::Zero;

    #[test]
    fn parse_ids() {
        assert_eq!(
            NamedLatticeId::parse("L_9_2").unwrap(),
            NamedLatticeId::Ln(LnId { n: 9, r: 2 })
        );
        assert_eq!(
            NamedLatticeId::parse("M_2e4").unwrap(),
            NamedLatticeId::EvenSet(EvenSetCodeId::M4)
        );
        assert_eq!(NamedLatticeId::parse("R2d:6").unwrap(), NamedLatticeId::RankOne(6));
        assert!(NamedLatticeId::parse("NO_SUCH").is_err());
        assert!(NamedLatticeId::parse("R2d:5").is_err());
    }

    #[test]
    fn u_is_unimodular_hyperbolic() {
        let u = build_u();
        assert_eq!(u.signature(), (1, 1, 0));
        assert_eq!(u.discriminant().unwrap(), BigInt::from(-1));
        assert_eq!(u.length().unwrap(), 0);
    }

    #[test]
    fn u2_gram() {
        let u2 = build_u2();
        assert_eq!(u2.gram()[(0, 1)], BigInt::from(2));
        assert_eq!(u2.gram()[(0, 0)], BigInt::zero());
    }

    #[test]
    fn d4_invariants() {
        let d4 = build_d4();
        assert!(d4.is_even());
        assert!(d4.is_negative_definite());
        assert_eq!(d4.discriminant().unwrap(), BigInt::from(4));
        let dg = d4.discriminant_group().unwrap();
        assert_eq!(dg.elementary_divisors(), &[BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn rank_one_from_parameters() {
        // 2d with d = 15 + 4h at h = -3 gives <6>
        let l = build_rank_one(15 * 2 + 4 * 2 * (-3)).unwrap();
        assert_eq!(l.gram()[(0, 0)], BigInt::from(6));
        assert!(build_rank_one(0).is_err());
        assert!(build_rank_one(7).is_err());
    }

    #[test]
    fn ln_domain_errors() {
        assert!(build_ln(6, 1).is_ok());
        assert!(build_ln(5, 1).is_err());
        assert!(build_ln(8, 2).is_err());
        assert!(build_ln(12, 4).is_err());
        assert!(build_ln(14, 8).is_err());
        assert!(build_ln(15, 16).is_err());
        assert!(build_ln(10, 3).is_err());
    }

    #[test]
    fn candidate_table() {
        assert_eq!(
            ns_candidates(10).entries,
            vec![LnId { n: 10, r: 1 }, LnId { n: 10, r: 2 }]
        );
        assert_eq!(ns_candidates(13).entries, vec![LnId { n: 13, r: 2 }, LnId { n: 13, r: 4 }]);
        assert!(ns_candidates(17).entries.is_empty());
        assert!(ns_candidates(5).entries.is_empty());
        assert_eq!(candidate_family().len(), 16);
        for n in 6..=16 {
            assert!(!ns_candidates(n).entries.is_empty());
        }
    }

    #[test]
    fn fixed_locus_table() {
        let t = |r, a, delta| TwoElementaryInvariants { rank: r, length: a, delta };
        assert_eq!(
            fixed_locus_nonsymplectic(&t(6, 4, 0)).unwrap(),
            FixedLocus::Generic { genus: 6, rationals: 1 }
        );
        assert_eq!(
            fixed_locus_nonsymplectic(&t(9, 7, 1)).unwrap(),
            FixedLocus::Generic { genus: 3, rationals: 1 }
        );
        assert_eq!(
            fixed_locus_nonsymplectic(&t(10, 8, 0)).unwrap(),
            FixedLocus::TwoElliptic
        );
        assert!(fixed_locus_nonsymplectic(&t(10, 10, 0)).is_err());
        assert!(fixed_locus_nonsymplectic(&t(9, 8, 0)).is_err());
        assert!(fixed_locus_nonsymplectic(&t(5, 6, 0)).is_err());
    }
}
