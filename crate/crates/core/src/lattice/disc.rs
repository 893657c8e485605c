//! Discriminant groups L*/L and their quadratic forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::Lattice;
use crate::error::{Error, Result};
use crate::exactlin::{smith_normal_form, IntMatrix};

/// The finite group L*/L of a nondegenerate lattice.
///
/// `generators[i]` has order `elementary_divisors[i]`; `qvalues[i]` is the
/// discriminant quadratic form q(g_i) = g_i^2 taken mod 2Z, normalized into
/// [0, 2). For even lattices q is well defined on classes mod L.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    divisors: Vec<BigInt>,
    generators: Vec<Vec<BigRational>>,
    qvalues: Vec<BigRational>,
    // pairwise generator products under the Gram form, for q/b of arbitrary
    // group elements
    pair: Vec<Vec<BigRational>>,
    // rows of U*Gram for the nontrivial factors: maps a dual vector to its
    // coefficient tuple over the generators
    coord_rows: Vec<Vec<BigInt>>,
}

impl DiscriminantGroup {
    pub fn elementary_divisors(&self) -> &[BigInt] {
        &self.divisors
    }

    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    pub fn qvalues(&self) -> &[BigRational] {
        &self.qvalues
    }

    pub fn order(&self) -> BigInt {
        self.divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    /// q of the element with coefficient tuple `a` over the generators,
    /// normalized into [0, 2).
    pub fn q_of(&self, a: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, aj) in a.iter().enumerate() {
                if aj.is_zero() {
                    continue;
                }
                acc += BigRational::from(ai * aj) * &self.pair[i][j];
            }
        }
        mod_2z(&acc)
    }

    /// Bilinear pairing b(x, y) mod Z, normalized into [0, 1).
    pub fn b_of(&self, x: &[BigInt], y: &[BigInt]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                acc += BigRational::from(xi * yj) * &self.pair[i][j];
            }
        }
        mod_1z(&acc)
    }

    /// All group elements as coefficient tuples (lexicographic order).
    /// Intended for the small groups that arise here.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![]];
        for d in &self.divisors {
            let mut next = Vec::new();
            for prefix in &out {
                let mut a = BigInt::zero();
                while &a < d {
                    let mut e = prefix.clone();
                    e.push(a.clone());
                    next.push(e);
                    a += 1;
                }
            }
            out = next;
        }
        out
    }

    /// Order of the element with coefficient tuple `a`.
    pub fn element_order(&self, a: &[BigInt]) -> BigInt {
        let mut ord = BigInt::one();
        for (ai, d) in a.iter().zip(&self.divisors) {
            if ai.is_zero() {
                continue;
            }
            let g = ai.gcd(d);
            ord = ord.lcm(&(d / g));
        }
        ord
    }

    /// Coefficient tuple of a dual vector's class over the generators.
    /// Errors when the vector is not in the dual lattice.
    pub fn coords_of(&self, v: &[BigRational]) -> Result<Vec<BigInt>> {
        let mut out = Vec::with_capacity(self.divisors.len());
        for (row, d) in self.coord_rows.iter().zip(&self.divisors) {
            let mut acc = BigRational::zero();
            for (r, c) in row.iter().zip(v) {
                acc += BigRational::from(r.clone()) * c;
            }
            if !acc.is_integer() {
                return Err(Error::Domain(format!(
                    "vector is not in the dual lattice (pairing {acc})"
                )));
            }
            out.push(acc.numer().mod_floor(d));
        }
        Ok(out)
    }

    /// Order of the subgroup generated by the given coefficient tuples.
    pub fn subgroup_order(&self, elements: &[Vec<BigInt>]) -> BigInt {
        let t = self.divisors.len();
        if t == 0 {
            return BigInt::one();
        }
        // |G/H| = |Z^t / (diag(d) + element rows)|, |H| = |G| / |G/H|
        let mut rows: Vec<BigInt> = Vec::new();
        for (i, d) in self.divisors.iter().enumerate() {
            let mut row = vec![BigInt::zero(); t];
            row[i] = d.clone();
            rows.extend(row);
        }
        for e in elements {
            assert_eq!(e.len(), t);
            rows.extend(e.iter().cloned());
        }
        let m = IntMatrix::new(t + elements.len(), t, rows).expect("relation matrix shape");
        let snf = smith_normal_form(&m);
        let quotient: BigInt = snf
            .diagonal()
            .iter()
            .filter(|x| !x.is_zero())
            .product();
        self.order() / quotient
    }
}

/// Normalize a rational into [0, 2) mod 2Z.
pub fn mod_2z(x: &BigRational) -> BigRational {
    let two = BigRational::from(BigInt::from(2));
    let q = (x / &two).floor();
    x - q * two
}

/// Normalize a rational into [0, 1) mod Z.
pub fn mod_1z(x: &BigRational) -> BigRational {
    x - x.floor()
}

pub(super) fn discriminant_group(l: &Lattice) -> Result<DiscriminantGroup> {
    if l.is_degenerate() {
        return Err(Error::DegenerateLattice(format!(
            "{}: discriminant group undefined",
            l.display_name()
        )));
    }
    let n = l.rank();
    let snf = smith_normal_form(l.gram());
    let diag = snf.diagonal();
    let ug = snf.u.mul(l.gram()).expect("U * Gram");
    let mut divisors = Vec::new();
    let mut generators: Vec<Vec<BigRational>> = Vec::new();
    let mut coord_rows: Vec<Vec<BigInt>> = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d <= &BigInt::one() {
            continue;
        }
        // generator of the Z/d_i factor: (i-th column of V) / d_i
        let coords: Vec<BigRational> = (0..n)
            .map(|r| BigRational::new(snf.v[(r, i)].clone(), d.clone()))
            .collect();
        divisors.push(d.clone());
        generators.push(coords);
        coord_rows.push(ug.row(i).to_vec());
    }
    let k = generators.len();
    let mut pair = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        for j in i..k {
            let p = l.pair(&generators[i], &generators[j]);
            pair[i][j] = p.clone();
            pair[j][i] = p;
        }
    }
    let qvalues = (0..k)
        .map(|i| mod_2z(&pair[i][i]))
        .collect();
    Ok(DiscriminantGroup {
        divisors,
        generators,
        qvalues,
        pair,
        coord_rows,
    })
}

/// Invariants (r, a, delta) of a 2-elementary lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoElementaryInvariants {
    pub rank: usize,
    pub length: usize,
    pub delta: u8,
}

pub(super) fn two_elementary(
    l: &Lattice,
    dg: &DiscriminantGroup,
) -> Option<TwoElementaryInvariants> {
    let two = BigInt::from(2);
    if !dg.divisors.iter().all(|d| *d == two) {
        return None;
    }
    // For a 2-elementary group, q takes integer values on every element iff
    // it does on each generator (pair sums contribute 2*b, an integer here).
    let delta = if dg.qvalues.iter().all(|q| q.is_integer()) {
        0
    } else {
        1
    };
    Some(TwoElementaryInvariants {
        rank: l.rank(),
        length: dg.divisors.len(),
        delta,
    })
}

/// Does the discriminant form contain an orthogonal direct summand whose
/// form is that of U(2)?
///
/// The U(2) discriminant form is two order-2 elements x, y with
/// q(x) = q(y) = 0 and b(x, y) = 1/2. When such a pair exists the subgroup
/// H = {0, x, y, x+y} carries a nondegenerate pairing (x, y pair to 1/2
/// with each other and to 0 with themselves), so G = H + H-perp splits
/// orthogonally with no further condition to check.
///
/// The search runs over the 2-torsion subgroup only, with q and b reduced
/// to bit arithmetic: for the order-2 generators u_i, q(u_i) is a multiple
/// of 1/2 mod 2Z and 2*b(u_i, u_j) is an integer mod 2.
pub fn splits_off_u2_form(dg: &DiscriminantGroup) -> bool {
    let two = BigInt::from(2);
    // order-2 part of each cyclic factor
    let mut units: Vec<Vec<BigInt>> = Vec::new();
    for (i, d) in dg.divisors.iter().enumerate() {
        if (d % &two).is_zero() {
            let mut tuple = vec![BigInt::zero(); dg.divisors.len()];
            tuple[i] = d / &two;
            units.push(tuple);
        }
    }
    let t = units.len();
    // t > 12 cannot occur for the rank <= 17 lattices handled here; the
    // caller treats `false` as "undetermined", which stays honest
    if t < 2 || t > 12 {
        return false;
    }
    // q(u_i) in half-units mod 4, and the parity of 2*b(u_i, u_j)
    let mut qh = vec![0u8; t];
    let mut brow = vec![0u32; t];
    for i in 0..t {
        let q = dg.q_of(&units[i]);
        let halves = (&q * BigRational::from(two.clone())).to_integer();
        qh[i] = (halves % 4i32).to_u8().unwrap_or(0);
        for j in 0..t {
            if i == j {
                continue;
            }
            let b = dg.b_of(&units[i], &units[j]);
            let halves = (&b * BigRational::from(two.clone())).to_integer();
            if !(halves % 2i32).is_zero() {
                brow[i] |= 1 << j;
            }
        }
    }
    let q_zero = |mask: u32| -> bool {
        let mut acc: u32 = 0;
        for i in 0..t {
            if mask >> i & 1 == 0 {
                continue;
            }
            acc += qh[i] as u32;
            // pairs inside the mask, counted once
            acc += 2 * (brow[i] & mask & !((2u32 << i) - 1)).count_ones();
        }
        acc % 4 == 0
    };
    // parity of 2*b(x, y); shared generators contribute their diagonal term
    // b(u_i, u_i) = q(u_i) mod 1
    let b_half = |x: u32, y: u32| -> bool {
        let mut parity = 0u32;
        for i in 0..t {
            if x >> i & 1 == 1 {
                parity ^= (brow[i] & y).count_ones() & 1;
            }
            if (x & y) >> i & 1 == 1 {
                parity ^= (qh[i] as u32) & 1;
            }
        }
        parity == 1
    };
    let masks: Vec<u32> = (1..(1u32 << t)).filter(|&m| q_zero(m)).collect();
    let tuple_of = |mask: u32| -> Vec<BigInt> {
        let mut a = vec![BigInt::zero(); dg.divisors.len()];
        let mut bit = 0usize;
        for (i, d) in dg.divisors.iter().enumerate() {
            if (d % &two).is_zero() {
                if mask >> bit & 1 == 1 {
                    a[i] = d / &two;
                }
                bit += 1;
            }
        }
        a
    };
    let half = BigRational::new(BigInt::one(), two.clone());
    for (i, &x) in masks.iter().enumerate() {
        for &y in masks.iter().skip(i + 1) {
            if !b_half(x, y) {
                continue;
            }
            // confirm the candidate pair in exact rational arithmetic
            let (xt, yt) = (tuple_of(x), tuple_of(y));
            if dg.q_of(&xt).is_zero() && dg.q_of(&yt).is_zero() && dg.b_of(&xt, &yt) == half {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::IntMatrix;

    fn lat(rows: &[Vec<i64>]) -> Lattice {
        Lattice::from_gram(IntMatrix::from_rows(rows).unwrap(), vec![]).unwrap()
    }

    #[test]
    fn unimodular_has_trivial_group() {
        let u = lat(&[vec![0, 1], vec![1, 0]]);
        let dg = u.discriminant_group().unwrap();
        assert!(dg.is_trivial());
        assert_eq!(dg.order(), BigInt::one());
    }

    #[test]
    fn a2_group_is_z3() {
        let a2 = lat(&[vec![2, 1], vec![1, 2]]);
        let dg = a2.discriminant_group().unwrap();
        assert_eq!(dg.elementary_divisors(), &[BigInt::from(3)]);
        assert_eq!(dg.order(), BigInt::from(3));
        // generator order matches its divisor
        let g = &dg.generators()[0];
        let denom_lcm = g.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        assert_eq!(denom_lcm, BigInt::from(3));
    }

    #[test]
    fn minus_two_q_value() {
        let l = lat(&[vec![-2]]);
        let dg = l.discriminant_group().unwrap();
        assert_eq!(dg.elementary_divisors(), &[BigInt::from(2)]);
        // q(e/2) = -1/2 = 3/2 mod 2Z
        assert_eq!(
            dg.qvalues()[0],
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );
    }

    #[test]
    fn two_elementary_of_minus_two() {
        let l = lat(&[vec![-2]]);
        let inv = l.two_elementary_invariants().unwrap().unwrap();
        assert_eq!((inv.rank, inv.length, inv.delta), (1, 1, 1));
    }

    #[test]
    fn not_two_elementary() {
        let a2 = lat(&[vec![2, 1], vec![1, 2]]);
        assert!(a2.two_elementary_invariants().unwrap().is_none());
    }

    #[test]
    fn u2_splits_its_own_form() {
        let u2 = lat(&[vec![0, 2], vec![2, 0]]);
        let dg = u2.discriminant_group().unwrap();
        assert_eq!(dg.elementary_divisors(), &[BigInt::from(2), BigInt::from(2)]);
        assert!(splits_off_u2_form(&dg));
    }

    #[test]
    fn minus_two_squared_does_not_split_u2() {
        // <-2>^2 has q-values 3/2 on the generators, not the U(2) pattern
        let l = lat(&[vec![-2, 0], vec![0, -2]]);
        let dg = l.discriminant_group().unwrap();
        assert!(!splits_off_u2_form(&dg));
    }

    #[test]
    fn u2_split_detection_on_sums_and_near_misses() {
        let split = |rows: &[Vec<i64>]| {
            splits_off_u2_form(&lat(rows).discriminant_group().unwrap())
        };
        assert!(split(&[vec![0, 2, 0], vec![2, 0, 0], vec![0, 0, -2]]));
        assert!(split(&[
            vec![0, 2, 0, 0],
            vec![2, 0, 0, 0],
            vec![0, 0, 0, 2],
            vec![0, 0, 2, 0],
        ]));
        // <2> + <-2>: only one order-2 element with q = 0, no pair
        assert!(!split(&[vec![2, 0], vec![0, -2]]));
        // D4: both generators have q = 1
        assert!(!split(&[
            vec![-2, 1, 1, 1],
            vec![1, -2, 0, 0],
            vec![1, 0, -2, 0],
            vec![1, 0, 0, -2],
        ]));
    }

    #[test]
    fn q_well_defined_mod_lattice_shifts() {
        let l = lat(&[vec![-2, 1], vec![1, -2]]);
        let dg = l.discriminant_group().unwrap();
        let g = &dg.generators()[0];
        let q0 = mod_2z(&l.norm(g));
        // shift by a few lattice vectors
        for (a, b) in [(1i64, 0i64), (0, 1), (2, -3), (-1, 4)] {
            let shifted: Vec<BigRational> = vec![
                &g[0] + BigRational::from(BigInt::from(a)),
                &g[1] + BigRational::from(BigInt::from(b)),
            ];
            assert_eq!(mod_2z(&l.norm(&shifted)), q0);
        }
    }
}
