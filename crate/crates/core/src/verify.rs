//! One-shot verification suite: every published value reproduced by this
//! crate is recomputed and compared, and the known errata of the source
//! classification are reported as warnings (they are expected, not
//! failures).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::covers::{
    self, bidouble_pg, classify_branch, existence, genus1_branch_points, invariants_of_x,
    projection_residual, unstable_fiber_types, BranchConfig, KodairaDim,
};
use crate::evensets::{self, validate_even_code, EvenSetCodeId};
use crate::exactlin::{inertia, rank as matrix_rank, smith_normal_form};
use crate::k3lattices::{
    self, build_even_set_lattice, build_ln, build_rank_one, build_two_cubics_ns, build_u,
    candidate_family, derive_candidate_list, embedding_status, fixed_locus_nonsymplectic,
    ns_candidates, EmbeddingVerdict, FixedLocus, LnId,
};
use crate::lattice::{GlueVector, Lattice};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    /// What the value is, in the source classification.
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Warning {
    pub code: &'static str,
    pub text: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub warnings: Vec<Warning>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{mark} {}: expected {}, got {}  [{}]",
                c.name, c.expected, c.actual, c.source
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "WARN [{}] {}", w.code, w.text);
        }
        let _ = writeln!(
            out,
            "{} checks, {} failed, {} warnings",
            self.checks.len(),
            self.failures(),
            self.warnings.len()
        );
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,name,expected,actual,pass,source\n");
        let esc = |s: &str| -> String {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        };
        for c in &self.checks {
            let _ = writeln!(
                out,
                "check,{},{},{},{},{}",
                esc(&c.name),
                esc(&c.expected),
                esc(&c.actual),
                c.pass,
                esc(&c.source)
            );
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning,{},,,,{}", esc(w.code), esc(&w.text));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::json!({
            "checks": self.checks,
            "warnings": self.warnings,
            "passed": self.passed(),
            "counts": {
                "checks": self.checks.len(),
                "failures": self.failures(),
                "warnings": self.warnings.len(),
            },
        });
        serde_json::to_string_pretty(&value).expect("report serializes")
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn new() -> Suite {
        Suite { checks: Vec::new() }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        name: impl Into<String>,
        source: impl Into<String>,
        expected: T,
        actual: T,
    ) {
        self.checks.push(Check {
            name: name.into(),
            expected: format!("{expected:?}"),
            actual: format!("{actual:?}"),
            pass: expected == actual,
            source: source.into(),
        });
    }

    fn ok(&mut self, name: impl Into<String>, source: impl Into<String>, pass: bool, detail: String) {
        self.checks.push(Check {
            name: name.into(),
            expected: "true".into(),
            actual: detail,
            pass,
            source: source.into(),
        });
    }
}

/// Run the complete verification suite.
pub fn paper_report() -> VerificationReport {
    paper_report_impl(false)
}

/// Negative control: the same suite with one Gram entry deliberately
/// corrupted; at least one check must fail.
#[doc(hidden)]
pub fn paper_report_negative_control() -> VerificationReport {
    paper_report_impl(true)
}

fn paper_report_impl(tamper: bool) -> VerificationReport {
    let mut s = Suite::new();

    family_checks(&mut s, tamper);
    derivation_checks(&mut s);
    embedding_checks(&mut s);
    even_set_checks(&mut s);
    glue_law_checks(&mut s);
    cover_checks(&mut s);
    noether_sweep(&mut s);
    existence_checks(&mut s);
    involution_checks(&mut s);
    misc_numerics(&mut s);

    let warnings = vec![
        Warning {
            code: "family-list-r6",
            text: "the printed candidate-family table allows r = 6, but no index-6 overlattice \
                   is ever defined; the family is taken to be r in {1, 2, 4, 8, 16}"
                .into(),
        },
        Warning {
            code: "n1-hodge-numbers",
            text: "for a single branch curve (n = 1) the printed Hodge numbers are \
                   h^(1,0) = 3h and h^(2,0) = 3 + 4h, while the invariant formulas give \
                   q = 0 and p_g = 3 + h; both satisfy chi = 4 + h and both are reported"
                .into(),
        },
        Warning {
            code: "rank-bound-prose",
            text: "the printed proof excludes the index-1 lattice only for n > 13, but the \
                   length bound n - 2 <= min(n, 22 - n) already fails at n = 13; the final \
                   candidate table (index 1 only for n <= 12) is what this crate implements"
                .into(),
        },
    ];

    VerificationReport {
        checks: s.checks,
        warnings,
    }
}

// expected discriminant group Z/a x (Z/2)^k as a prime-power multiset
fn expected_group(a: i64, k: usize) -> BTreeMap<(u64, u32), usize> {
    let mut out: BTreeMap<(u64, u32), usize> = BTreeMap::new();
    let mut a = a.unsigned_abs();
    let mut p = 2u64;
    while a > 1 {
        if a % p == 0 {
            let mut e = 0;
            while a % p == 0 {
                a /= p;
                e += 1;
            }
            *out.entry((p, e)).or_default() += 1;
        }
        p += 1;
    }
    if k > 0 {
        *out.entry((2, 1)).or_default() += k;
    }
    out
}

fn group_of(divisors: &[BigInt]) -> BTreeMap<(u64, u32), usize> {
    let mut out: BTreeMap<(u64, u32), usize> = BTreeMap::new();
    for d in divisors {
        let mut d: u64 = d.to_string().parse().expect("small divisor");
        let mut p = 2u64;
        while d > 1 {
            if d % p == 0 {
                let mut e = 0;
                while d % p == 0 {
                    d /= p;
                    e += 1;
                }
                *out.entry((p, e)).or_default() += 1;
            }
            p += 1;
        }
    }
    out
}

fn group_string(g: &BTreeMap<(u64, u32), usize>) -> String {
    if g.is_empty() {
        return "trivial".into();
    }
    g.iter()
        .map(|(&(p, e), &c)| {
            let q = p.pow(e);
            if c == 1 {
                format!("Z/{q}")
            } else {
                format!("(Z/{q})^{c}")
            }
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

fn family_checks(s: &mut Suite, tamper: bool) {
    for LnId { n, r } in candidate_family() {
        let lattice = if tamper && (n, r) == (6, 1) {
            tampered_l6()
        } else {
            build_ln(n, r).expect("family member in domain")
        };
        let j = (r as u32).trailing_zeros();
        let ni = n as i64;
        // printed closed form, evaluated literally
        let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
        let formula = BigInt::from(sign) * BigInt::from(2).pow(n as u32 - 2 - 2 * j) * (ni - 5);
        let det = lattice.discriminant().expect("nondegenerate");
        s.eq(
            format!("det L_{n}_{r}"),
            format!("closed form (-1)^(n-1) 2^(n-2-2log2 r) (n-5) at (n,r)=({n},{r})"),
            formula.clone(),
            det.clone(),
        );
        s.eq(
            format!("|det| L_{n}_{r}"),
            "absolute discriminant from the closed form".to_string(),
            formula.abs(),
            det.abs(),
        );

        let dg = lattice.discriminant_group().expect("nondegenerate");
        let expected = if (n, r) == (9, 2) {
            expected_group(1, 7)
        } else {
            expected_group(2 * ni - 10, n - 3 - 2 * j as usize)
        };
        let actual = group_of(dg.elementary_divisors());
        s.eq(
            format!("disc group L_{n}_{r}"),
            format!("printed discriminant group for (n,r)=({n},{r})"),
            group_string(&expected),
            group_string(&actual),
        );

        let expected_len = if (n, r) == (9, 2) { 7 } else { n - 2 - 2 * j as usize };
        s.eq(
            format!("length L_{n}_{r}"),
            "printed length of the discriminant group".to_string(),
            expected_len,
            dg.elementary_divisors().len(),
        );

        s.eq(
            format!("signature L_{n}_{r}"),
            "hyperbolic lattice of rank n".to_string(),
            (1, n - 1, 0),
            lattice.signature(),
        );
        s.ok(
            format!("evenness L_{n}_{r}"),
            "NS lattices of K3 surfaces are even",
            lattice.is_even(),
            format!("{}", lattice.is_even()),
        );

        // overlattice chain: index 2^j over the r = 1 lattice
        if r > 1 {
            let base_det = build_ln(n, 1).unwrap().discriminant().unwrap();
            s.eq(
                format!("index law L_{n}_1 -> L_{n}_{r}"),
                "finite-index overlattice: det scales by the index squared".to_string(),
                base_det,
                det * BigInt::from(4).pow(j),
            );
        }
    }
}

fn tampered_l6() -> Lattice {
    let mut gram = build_ln(6, 1).unwrap().gram().clone();
    gram[(1, 2)] = BigInt::one();
    gram[(2, 1)] = BigInt::one();
    Lattice::from_gram(gram, vec![]).unwrap().named("L_6_1")
}

fn derivation_checks(s: &mut Suite) {
    for n in 6..=17 {
        let derived = derive_candidate_list(n).expect("derivation runs");
        s.eq(
            format!("candidate list n={n}"),
            "brute-force glue enumeration equals the printed candidate table".to_string(),
            ns_candidates(n),
            derived,
        );
    }
}

fn embedding_checks(s: &mut Suite) {
    let l13 = build_ln(13, 1).unwrap();
    s.eq(
        "embedding L_13_1",
        "length 11 exceeds min(13, 9)",
        EmbeddingVerdict::NotEmbeddable,
        embedding_status(&l13).unwrap().verdict,
    );
    let l10 = build_ln(10, 1).unwrap();
    s.eq(
        "embedding L_10_1",
        "length 8 <= 20 - 10",
        EmbeddingVerdict::Embeddable,
        embedding_status(&l10).unwrap().verdict,
    );
    let six_plus_k = build_rank_one(6)
        .unwrap()
        .direct_sum(&build_even_set_lattice(EvenSetCodeId::Kummer));
    s.eq(
        "rank <6> + K",
        "rank of the forced NS at n = 17",
        17,
        six_plus_k.rank(),
    );
    s.eq(
        "length <6> + K",
        "printed length 7 of the forced NS at n = 17",
        7,
        six_plus_k.length().unwrap(),
    );
    s.eq(
        "embedding <6> + K",
        "length 7 exceeds 22 - 17 = 5",
        EmbeddingVerdict::NotEmbeddable,
        embedding_status(&six_plus_k).unwrap().verdict,
    );

    // the rank-12 boundary case: refined criterion via the U(2) block
    let l12 = build_ln(12, 1).unwrap();
    s.eq(
        "embedding L_12_1",
        "refined criterion: discriminant form splits off U(2)",
        EmbeddingVerdict::Embeddable,
        embedding_status(&l12).unwrap().verdict,
    );
    printed_u2_generators_check(s, &l12);

    // every candidate is realized as an NS lattice, so all 16 must embed
    for LnId { n, r } in candidate_family() {
        let status = embedding_status(&build_ln(n, r).unwrap()).unwrap();
        s.eq(
            format!("embedding L_{n}_{r}"),
            "each candidate is the NS lattice of an existing surface",
            EmbeddingVerdict::Embeddable,
            status.verdict,
        );
    }
}

// the ten printed generators of the discriminant group of the rank-12
// index-1 lattice: the last two span a U(2) block orthogonal to the rest
fn printed_u2_generators_check(s: &mut Suite, l12: &Lattice) {
    let n = 12usize;
    let dg = l12.discriminant_group().unwrap();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let q14 = BigRational::new(BigInt::one(), BigInt::from(14));
    // vectors in the (c, r_i) presentation: (c-coefficient, [(i, coeff)])
    let printed: Vec<(BigRational, Vec<(usize, BigRational)>)> = vec![
        (q14.clone(), vec![(1, half.clone())]),
        (BigRational::zero(), vec![(1, half.clone()), (2, half.clone())]),
        (BigRational::zero(), vec![(2, half.clone()), (3, half.clone())]),
        (
            BigRational::zero(),
            vec![(3, half.clone()), (4, half.clone()), (7, half.clone()), (8, half.clone())],
        ),
        (BigRational::zero(), vec![(4, half.clone()), (5, half.clone())]),
        (BigRational::zero(), vec![(5, half.clone()), (6, half.clone())]),
        (BigRational::zero(), vec![(8, half.clone()), (9, half.clone())]),
        (BigRational::zero(), vec![(9, half.clone()), (10, half.clone())]),
        (
            BigRational::zero(),
            vec![(7, half.clone()), (8, half.clone()), (9, half.clone()), (10, half.clone())],
        ),
        (
            BigRational::zero(),
            vec![(4, half.clone()), (5, half.clone()), (6, half.clone()), (7, half.clone())],
        ),
    ];
    let coords: Vec<Vec<BigInt>> = printed
        .iter()
        .map(|(c, rs)| {
            let v = c_r_vector(n, c.clone(), rs);
            dg.coords_of(&v).expect("printed generators are dual vectors")
        })
        .collect();
    s.eq(
        "printed generators of disc(L_12_1) generate",
        "ten printed generators of Z/14 x (Z/2)^9",
        dg.order(),
        dg.subgroup_order(&coords),
    );
    let d9 = &coords[8];
    let d10 = &coords[9];
    s.eq(
        "q(d_9)",
        "U(2)-block generator has square 0 mod 2Z",
        BigRational::zero(),
        dg.q_of(d9),
    );
    s.eq(
        "q(d_10)",
        "U(2)-block generator has square 0 mod 2Z",
        BigRational::zero(),
        dg.q_of(d10),
    );
    s.eq(
        "b(d_9, d_10)",
        "U(2)-block generators pair to 1/2 mod Z",
        half,
        dg.b_of(d9, d10),
    );
    let orthogonal = (0..8).all(|i| {
        dg.b_of(&coords[i], d9).is_zero() && dg.b_of(&coords[i], d10).is_zero()
    });
    s.ok(
        "<d_9, d_10> orthogonal to <d_1..d_8>",
        "the U(2) block splits off orthogonally",
        orthogonal,
        format!("{orthogonal}"),
    );
}

// convert a vector given in the (c, r_1..r_{n-1}) rational presentation to
// coordinates in the (d, r_1..r_{n-1}) basis, using c = 2d + sum r_i
fn c_r_vector(n: usize, c_coeff: BigRational, rs: &[(usize, BigRational)]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); n];
    v[0] = BigRational::from(BigInt::from(2)) * &c_coeff;
    for i in 1..n {
        v[i] = c_coeff.clone();
    }
    for (i, coeff) in rs {
        v[*i] += coeff;
    }
    v
}

fn even_set_checks(s: &mut Suite) {
    for id in EvenSetCodeId::ALL {
        let code = evensets::code_of(id);
        let verdict = validate_even_code(&code).unwrap();
        s.ok(
            format!("even-set laws for {}", id.name()),
            "every nonzero word has weight 8 or 16; weight-8 words meet in 0 or 4",
            verdict.valid,
            format!("{} violations", verdict.violations.len()),
        );
        let dim = code.dimension();
        let lattice = build_even_set_lattice(id);
        let m = id.positions();
        let expected_det = BigInt::from(2).pow(m as u32) / BigInt::from(4).pow(dim as u32)
            * if m % 2 == 0 { BigInt::one() } else { BigInt::from(-1) };
        s.eq(
            format!("det {}", id.name()),
            "index law over <-2>^m with index 2^dim".to_string(),
            expected_det,
            lattice.discriminant().unwrap(),
        );
        s.ok(
            format!("{} negative definite", id.name()),
            "even sets of (-2)-curves span negative definite lattices",
            lattice.is_negative_definite() && lattice.is_even(),
            "checked".into(),
        );
    }
    let kummer = build_even_set_lattice(EvenSetCodeId::Kummer);
    s.eq(
        "disc group K",
        "the 16-curve lattice is 2-elementary of length 6",
        group_string(&expected_group(1, 6)),
        group_string(&group_of(
            kummer.discriminant_group().unwrap().elementary_divisors(),
        )),
    );
    let words = evensets::code_of(EvenSetCodeId::Kummer).codewords().unwrap();
    s.eq(
        "K code size",
        "five generators span 32 words",
        32usize,
        words.len(),
    );
    s.ok(
        "K code contains the all-ones word",
        "half the sum of all 16 curves is a class",
        words.contains(&0xFFFF),
        "checked".into(),
    );
    // minimal-primitive table rows
    let row = |m: usize| {
        evensets::minimal_primitive_options(m)
            .unwrap()
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join("; ")
    };
    s.eq(
        "minimal primitive m=7",
        "table row for m <= 11",
        "<-2>^7".to_string(),
        row(7),
    );
    s.eq(
        "minimal primitive m=14",
        "table row for m = 14",
        "M_2e3".to_string(),
        row(14),
    );
    s.eq(
        "minimal primitive m=17",
        "no K3 surface carries 17 disjoint rational curves",
        String::new(),
        row(17),
    );
}

fn glue_law_checks(s: &mut Suite) {
    // adjoining the even eight to the rank-9 base lattice
    let l9 = build_ln(9, 1).unwrap();
    s.eq(
        "det L_9_1",
        "closed form at n = 9",
        BigInt::from(512),
        l9.discriminant().unwrap(),
    );
    let glued = l9
        .glue_overlattice(&[GlueVector::half_support(9, &[1, 2, 3, 4, 5, 6, 7, 8])])
        .unwrap();
    s.eq(
        "index of even-eight gluing at n=9",
        "index-2 overlattice",
        BigInt::from(2),
        glued.index.clone(),
    );
    s.eq(
        "det L_9_2 via gluing",
        "512 / 4 = 128",
        BigInt::from(128),
        glued.lattice.discriminant().unwrap(),
    );

    // the third glue step: L_15_4 extended by {1,2,5,6,9,10,13,14}/2; the
    // glue class is written in the (d, r_i) coordinates and must be
    // re-expressed in the basis of L_15_4 before gluing
    let (base15, glues15) = k3lattices::NamedLatticeId::Ln(LnId { n: 15, r: 4 })
        .recipe()
        .unwrap();
    let glued4 = base15.glue_overlattice(&glues15).unwrap();
    let g = GlueVector::half_support(15, &[1, 2, 5, 6, 9, 10, 13, 14]);
    let g_in_l15_4 = crate::lattice::express_in_basis(&glued4.basis, &g.coords)
        .expect("glue lies in the rational span");
    let glued = glued4
        .lattice
        .glue_overlattice(&[GlueVector::new(g_in_l15_4)])
        .unwrap();
    let l15_8 = build_ln(15, 8).unwrap();
    s.eq(
        "L_15_4 + pair-pattern glue = L_15_8 (index)",
        "printed third glue class",
        BigInt::from(2),
        glued.index.clone(),
    );
    s.eq(
        "L_15_4 + pair-pattern glue = L_15_8 (det)",
        "printed third glue class",
        l15_8.discriminant().unwrap(),
        glued.lattice.discriminant().unwrap(),
    );
    s.eq(
        "L_15_4 + pair-pattern glue = L_15_8 (group)",
        "printed third glue class",
        group_string(&group_of(
            l15_8.discriminant_group().unwrap().elementary_divisors(),
        )),
        group_string(&group_of(
            glued.lattice.discriminant_group().unwrap().elementary_divisors(),
        )),
    );

    // invalid glue: e_1/2 in U pairs in half-integers
    let u = build_u();
    let bad = u.glue_overlattice(&[GlueVector::from_fractions(&[1, 0], 2)]);
    s.ok(
        "U + e1/2 is rejected",
        "glue classes must pair integrally with the lattice",
        bad.is_err(),
        format!("{:?}", bad.err().map(|e| e.to_string())),
    );

    // Kummer lattice determinant via the index law from <-2>^16
    let k = build_even_set_lattice(EvenSetCodeId::Kummer);
    s.eq(
        "det K via index law",
        "2^16 / (2^5)^2 = 64",
        BigInt::from(64),
        k.discriminant().unwrap(),
    );
}

fn cover_checks(s: &mut Suite) {
    // invariant formulas at the recorded instances
    s.eq(
        "invariants of X at (L^2, h0) = (-2, 1)",
        "chi 3, p_g 2, q 0 for the genus (n-4) covers",
        (3, 2, 0, -4, 40),
        invariants_of_x(-2, 1).unwrap(),
    );
    let (chi, pg, q, _, _) = invariants_of_x(0, 2).unwrap();
    s.eq(
        "invariants of X at (0, 1 + k/2), k = 2",
        "chi 4, p_g 3, q 0 for the all-fibers case",
        (4, 3, 0),
        (chi, pg, q),
    );

    let classify = |genera: &[u32]| classify_branch(&BranchConfig::new(genera.iter().copied()).unwrap());

    let r = classify(&[2, 0, 0, 0, 0, 0]);
    let rep = r.report().expect("admissible");
    s.eq(
        "Xmin invariants for genera {2,0^5}",
        "c1^2 = g(C) - 1, chi = 4 + h, c2 = 48 + 8h - (n-1)",
        (3, 1, 35),
        (rep.x_min.chi, rep.x_min.c1sq, rep.x_min.c2),
    );

    let r = classify(&[1, 1]);
    let rep = r.report().expect("admissible");
    s.eq(
        "c2(Xmin) for two fibers",
        "48 nodal fibers on the base-changed fibration",
        48,
        rep.x_min.c2,
    );
    s.eq(
        "(b, gA) for two fibers",
        "b = 2 branch points, rational base",
        Some(0),
        rep.base_genus.map(|g| g as i32),
    );

    let r = classify(&[1, 0, 0, 0, 0]);
    let rep = r.report().expect("admissible");
    s.eq(
        "c2(Xmin) for genera {1,0^4}",
        "36 nodal fibers",
        36,
        rep.x_min.c2,
    );
    s.eq(
        "h^(2,0) for genera {1,0^4}",
        "p_g = 2 in the one-unstable-fiber case",
        Some(2),
        rep.x.pg,
    );

    let r = classify(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0]);
    let rep = r.report().expect("admissible");
    s.eq(
        "c2(Xmin) for genera {1,1,0^8}",
        "24 nodal fibers over a genus-1 base",
        24,
        rep.x_min.c2,
    );
    s.eq(
        "gA for genera {1,1,0^8}",
        "elliptic fibration over a genus-1 curve",
        Some(1i64),
        rep.base_genus,
    );

    let r = classify(&[0; 8]);
    let rep = r.report().expect("admissible");
    s.eq(
        "minimal model for 8 rational branch curves",
        "blown-up K3",
        KodairaDim::ZeroK3.to_string(),
        rep.kodaira.to_string(),
    );
    s.eq(
        "Xmin invariants for 8 rational branch curves",
        "K3: chi 2, c1^2 0, c2 24",
        (2, 0, 24),
        (rep.x_min.chi, rep.x_min.c1sq, rep.x_min.c2),
    );
    let r = classify(&[0; 16]);
    let rep = r.report().expect("admissible");
    s.eq(
        "minimal model for 16 rational branch curves",
        "blown-up abelian surface",
        KodairaDim::ZeroAbelian.to_string(),
        rep.kodaira.to_string(),
    );
    s.eq(
        "Xmin invariants for 16 rational branch curves",
        "abelian: chi 0, c1^2 0, c2 0",
        (0, 0, 0),
        (rep.x_min.chi, rep.x_min.c1sq, rep.x_min.c2),
    );

    s.ok(
        "12 rational branch curves are inadmissible",
        "a 2-divisible set of disjoint rational curves has 8 or 16 members",
        !classify(&[0; 12]).is_admissible(),
        "rejected".into(),
    );
    s.ok(
        "genera {1,0,0} are inadmissible",
        "n - k must be divisible by 4",
        !classify(&[1, 0, 0]).is_admissible(),
        "rejected".into(),
    );

    s.eq(
        "branch points (2,2)",
        "two fibers, rational base",
        (2, 0),
        genus1_branch_points(2, 2).unwrap(),
    );
    s.eq(
        "branch points (5,1)",
        "one fiber and one unstable fiber",
        (2, 0),
        genus1_branch_points(5, 1).unwrap(),
    );
    s.eq(
        "branch points (10,2)",
        "two fibers and two unstable fibers",
        (4, 1),
        genus1_branch_points(10, 2).unwrap(),
    );

    for t in unstable_fiber_types() {
        s.eq(
            format!("odd-multiplicity components of {}", t.name),
            "each reducible unstable fiber has exactly 4",
            4,
            t.odd_mult_components,
        );
    }
    s.eq(
        "Euler number of I_0^*",
        "unstable fiber used in the one-unstable-fiber example",
        6,
        covers::i_m_star(0).euler,
    );
    s.eq(
        "Euler number of II^*",
        "largest unstable fiber",
        10,
        unstable_fiber_types()[3].euler,
    );

    // alternative even sets
    let shapes = |n: usize, r: usize| -> Vec<(usize, usize)> {
        covers::alternative_even_sets(n, r)
            .unwrap()
            .iter()
            .map(|d| (d.genus, d.rationals))
            .collect()
    };
    s.eq(
        "alternative even sets on Y_6",
        "a genus-2 set of 6 curves and a genus-1 set of 5",
        vec![(2, 5), (1, 4)],
        shapes(6, 1),
    );
    s.ok(
        "alternative even sets on Y_12 include (2,5) and (1,4)",
        "plane projection and the pencil through a node",
        shapes(12, 1).contains(&(2, 5)) && shapes(12, 1).contains(&(1, 4)),
        format!("{:?}", shapes(12, 1)),
    );
    s.ok(
        "alternative even sets on Y_13^(2) include (5,8)",
        "the conic-quartic projection model",
        shapes(13, 2).contains(&(5, 8)),
        format!("{:?}", shapes(13, 2)),
    );
}

fn noether_sweep(s: &mut Suite) {
    let mut violations = 0usize;
    let mut admissible = 0usize;
    for n in 1..=17usize {
        let mut configs: Vec<Vec<u32>> = vec![vec![0; n]];
        for k in 1..=n {
            let mut g = vec![1u32; k];
            g.extend(vec![0u32; n - k]);
            configs.push(g);
        }
        for g_c in 2..=20u32 {
            let mut g = vec![g_c];
            g.extend(vec![0u32; n - 1]);
            configs.push(g);
        }
        for genera in configs {
            let outcome = classify_branch(&BranchConfig::new(genera).unwrap());
            if let Some(rep) = outcome.report() {
                admissible += 1;
                if rep.x.c1sq + rep.x.c2 != 12 * rep.x.chi {
                    violations += 1;
                }
                if rep.x_min.c1sq + rep.x_min.c2 != 12 * rep.x_min.chi {
                    violations += 1;
                }
                if let (Some(pg), Some(q)) = (rep.x.pg, rep.x.q) {
                    if pg - q + 1 != rep.x.chi {
                        violations += 1;
                    }
                }
            }
        }
    }
    s.eq(
        "Noether sweep violations",
        "c1^2 + c2 = 12 chi for X and Xmin over every admissible configuration",
        0,
        violations,
    );
    s.ok(
        "Noether sweep coverage",
        "the sweep must actually hit admissible configurations",
        admissible > 50,
        format!("{admissible} admissible configurations"),
    );
}

fn existence_checks(s: &mut Suite) {
    for h in -3..=6i64 {
        let v = existence(17, h).unwrap();
        s.eq(
            format!("existence n=17, h={h}"),
            "exists iff h is even (Kummer of a (4+h)-polarized abelian surface)",
            h % 2 == 0,
            v.exists,
        );
    }
    for h in -3..=6i64 {
        let v = existence(16, h).unwrap();
        let d = 15 + 4 * h;
        s.ok(
            format!("existence n=16, h={h}"),
            "always exists; d = 15 + 4h is 3 mod 4",
            v.exists && d.rem_euclid(4) == 3,
            format!("exists={}, d={d}", v.exists),
        );
    }
    for h in -3..=6i64 {
        let r = existence(1, h);
        if h >= 1 {
            s.ok(
                format!("existence n=1, h={h}"),
                "a single 2-divisible curve C = 2D of genus 1 + 4h",
                r.as_ref().map(|v| v.exists).unwrap_or(false),
                format!("{r:?}"),
            );
        } else {
            s.ok(
                format!("existence n=1, h={h} out of domain"),
                "g(C) = 1 + 4h < 2",
                r.is_err(),
                format!("{:?}", r.err().map(|e| e.to_string())),
            );
        }
    }
}

fn involution_checks(s: &mut Suite) {
    // rank-6 candidate: 2-elementary (6, 4); delta is computed, not printed
    let l6 = build_ln(6, 1).unwrap();
    let inv6 = l6.two_elementary_invariants().unwrap().expect("2-elementary");
    s.eq(
        "(r, a) of L_6_1",
        "printed rank 6 and length 4",
        (6, 4),
        (inv6.rank, inv6.length),
    );
    s.eq(
        "fixed locus for L_6_1",
        "a rational curve and a curve of genus 6",
        FixedLocus::Generic { genus: 6, rationals: 1 },
        fixed_locus_nonsymplectic(&inv6).unwrap(),
    );

    // rank-9 index-2 candidate: (9, 7), fixed locus genus 3 + rational
    let l92 = build_ln(9, 2).unwrap();
    let inv9 = l92.two_elementary_invariants().unwrap().expect("2-elementary");
    s.eq(
        "(r, a) of L_9_2",
        "2-elementary of rank 9, length 7",
        (9, 7),
        (inv9.rank, inv9.length),
    );
    s.eq(
        "fixed locus for L_9_2",
        "a rational curve and a curve of genus 3",
        FixedLocus::Generic { genus: 3, rationals: 1 },
        fixed_locus_nonsymplectic(&inv9).unwrap(),
    );

    // the rank-12 index-1 candidate is not 2-elementary
    let l12 = build_ln(12, 1).unwrap();
    s.ok(
        "L_12_1 is not 2-elementary",
        "its discriminant group contains Z/14",
        l12.two_elementary_invariants().unwrap().is_none(),
        "checked".into(),
    );

    // the two-cubics NS lattice: (10, 8, 0), two genus-1 curves
    let tc = build_two_cubics_ns();
    let inv10 = tc.two_elementary_invariants().unwrap().expect("2-elementary");
    s.eq(
        "(r, a, delta) of the two-cubics NS",
        "rank 10, length 8, integral discriminant form",
        (10, 8, 0u8),
        (inv10.rank, inv10.length, inv10.delta),
    );
    s.eq(
        "fixed locus for the two-cubics NS",
        "the branch sextic splits into two cubics",
        FixedLocus::TwoElliptic,
        fixed_locus_nonsymplectic(&inv10).unwrap(),
    );
}

fn misc_numerics(s: &mut Suite) {
    for n in [7usize, 12, 16] {
        s.eq(
            format!("projection residual at n={n}"),
            "2 = (2n-10) - 2(n-6)",
            2,
            projection_residual(n).unwrap(),
        );
    }
    s.eq(
        "bidouble p_g (1,1,5)",
        "line + line + quintic, p_g = 2",
        2,
        bidouble_pg(1, 1, 5).unwrap(),
    );
    s.eq(
        "bidouble p_g (2,2,4)",
        "conic + conic + quartic, p_g = 2",
        2,
        bidouble_pg(2, 2, 4).unwrap(),
    );
    s.eq(
        "bidouble p_g (3,3,3)",
        "three cubics, p_g = 3",
        3,
        bidouble_pg(3, 3, 3).unwrap(),
    );

    // spot checks binding the exact linear algebra to the lattices
    let l6 = build_ln(6, 1).unwrap();
    let diag: Vec<BigInt> = smith_normal_form(l6.gram()).diagonal();
    s.eq(
        "SNF diagonal of the rank-6 Gram",
        "elementary divisors (1,1,2,2,2,2)",
        vec![1, 1, 2, 2, 2, 2]
            .into_iter()
            .map(BigInt::from)
            .collect::<Vec<_>>(),
        diag,
    );
    s.eq(
        "inertia of the rank-6 Gram",
        "signature (1, 5)",
        (1, 5, 0),
        inertia(l6.gram()).unwrap(),
    );
    s.eq(
        "rank of the rank-10 Gram",
        "hyperbolic lattice of rank n",
        10,
        matrix_rank(build_ln(10, 1).unwrap().gram()),
    );

    // standard lattices used by the genus-1 fibration examples
    let u = build_u();
    s.eq("signature of U", "hyperbolic plane", (1, 1, 0), u.signature());
    let u2 = k3lattices::build_u2();
    s.eq(
        "Gram of U(2)",
        "the lattice spanned by a fiber and fiber + bisection",
        BigInt::from(2),
        u2.gram()[(0, 1)].clone(),
    );
    let d4 = k3lattices::build_d4();
    s.eq(
        "det D4",
        "negated Cartan matrix of D4",
        BigInt::from(4),
        d4.discriminant().unwrap(),
    );
    s.eq(
        "disc group D4",
        "(Z/2)^2",
        group_string(&expected_group(1, 2)),
        group_string(&group_of(
            d4.discriminant_group().unwrap().elementary_divisors(),
        )),
    );
    s.eq(
        "<2d> at d = 15 + 4h, h = -3",
        "the degree-6 polarization of the n = 16 construction",
        BigInt::from(6),
        build_rank_one(6).unwrap().gram()[(0, 0)].clone(),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_report_passes() {
        let report = paper_report();
        let failing: Vec<&Check> = report.checks.iter().filter(|c| !c.pass).collect();
        assert!(
            failing.is_empty(),
            "failing checks: {:#?}",
            failing
        );
        assert_eq!(report.warnings.len(), 3);
        let codes: Vec<&str> = report.warnings.iter().map(|w| w.code).collect();
        assert_eq!(
            codes,
            vec!["family-list-r6", "n1-hodge-numbers", "rank-bound-prose"]
        );
    }

    #[test]
    fn negative_control_fails() {
        let report = paper_report_negative_control();
        assert!(!report.passed());
        assert!(report.failures() >= 1);
    }

    #[test]
    fn formats_render() {
        let report = paper_report();
        let text = report.to_text();
        assert!(text.contains("PASS"));
        assert!(text.contains("WARN"));
        let csv = report.to_csv();
        assert!(csv.starts_with("kind,name,expected"));
        let json = report.to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["passed"], true);
        assert_eq!(v["counts"]["warnings"], 3);
    }
}
