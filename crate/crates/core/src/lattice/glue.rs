//! Overlattices obtained by adjoining glue vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use super::Lattice;
use crate::error::{Error, Result};
use crate::exactlin::{hermite_normal_form, IntMatrix};

/// A rational vector in the coordinates of a lattice basis, intended to be
/// adjoined to the lattice. Admission is checked by [`glue_overlattice`]:
/// the vector must not already lie in the lattice, must pair integrally
/// with every lattice vector and must have even self-pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueVector {
    pub coords: Vec<BigRational>,
}

impl GlueVector {
    pub fn new(coords: Vec<BigRational>) -> GlueVector {
        GlueVector { coords }
    }

    /// Coordinates from integer numerators over a common denominator.
    pub fn from_fractions(numerators: &[i64], denominator: i64) -> GlueVector {
        let den = BigInt::from(denominator);
        let coords = numerators
            .iter()
            .map(|&p| BigRational::new(BigInt::from(p), den.clone()))
            .collect();
        GlueVector { coords }
    }

    /// Half-sum vector supported on the given 0-based positions.
    pub fn half_support(rank: usize, positions: &[usize]) -> GlueVector {
        let mut nums = vec![0i64; rank];
        for &p in positions {
            nums[p] = 1;
        }
        GlueVector::from_fractions(&nums, 2)
    }

    pub fn parse(coords: &[String]) -> Result<GlueVector> {
        let parsed: std::result::Result<Vec<BigRational>, _> = coords
            .iter()
            .map(|s| BigRational::from_str(s.trim()))
            .collect();
        match parsed {
            Ok(coords) => Ok(GlueVector { coords }),
            Err(e) => Err(Error::Parse(format!("bad rational coordinate: {e}"))),
        }
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(|c| c.to_string()).collect()
    }
}

/// Result of a gluing: the overlattice, its basis expressed in the original
/// coordinates, and the index [new : old].
#[derive(Clone, Debug)]
pub struct Glued {
    pub lattice: Lattice,
    pub index: BigInt,
    /// Rows are the new basis vectors in the original basis coordinates.
    pub basis: Vec<Vec<BigRational>>,
}

pub(super) fn glue_overlattice(l: &Lattice, glues: &[GlueVector]) -> Result<Glued> {
    let n = l.rank();
    // current basis of the growing lattice, rows in original coordinates
    let mut basis: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();

    for (gi, g) in glues.iter().enumerate() {
        if g.coords.len() != n {
            return Err(Error::InvalidGlue(format!(
                "glue #{gi} has {} coordinates, lattice rank is {n}",
                g.coords.len()
            )));
        }
        // admission test against the lattice built so far
        for (bi, b) in basis.iter().enumerate() {
            let p = l.pair(b, &g.coords);
            if !p.is_integer() {
                return Err(Error::InvalidGlue(format!(
                    "glue #{gi} pairs non-integrally ({p}) with basis vector #{bi}"
                )));
            }
        }
        let norm = l.norm(&g.coords);
        if !norm.is_integer() || !(norm.numer() % 2i32).is_zero() {
            return Err(Error::InvalidGlue(format!(
                "glue #{gi} has non-even self-pairing {norm}"
            )));
        }
        if in_z_span(&basis, &g.coords) {
            return Err(Error::InvalidGlue(format!(
                "glue #{gi} already lies in the lattice"
            )));
        }
        // saturate: Hermite form of the stacked rational rows
        let mut stacked = basis.clone();
        stacked.push(g.coords.clone());
        basis = saturate(&stacked, n)?;
    }

    // re-Gram in the new basis
    let mut gram = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let p = l.pair(&basis[i], &basis[j]);
            if !p.is_integer() {
                return Err(Error::InvalidGlue(format!(
                    "internal: non-integral Gram entry {p} after saturation"
                )));
            }
            gram[(i, j)] = p.numer().clone();
        }
    }

    let labels = (1..=n).map(|i| format!("b{i}")).collect();
    let lattice = Lattice::from_gram(gram, labels)?;

    // evenness post-check; admission tests make a violation impossible for
    // an even input, so surface any breakage loudly
    if l.is_even() && !lattice.is_even() {
        return Err(Error::InvalidGlue(
            "internal: gluing broke evenness".into(),
        ));
    }

    // index from the determinant drop: det(old) = det(new) * index^2
    let index = index_from_basis(&basis)?;
    if !l.det_raw().is_zero() {
        let expected = lattice.det_raw() * &index * &index;
        if &expected != l.det_raw() {
            return Err(Error::InvalidGlue(format!(
                "internal: index law violated (index {index})"
            )));
        }
    }

    Ok(Glued {
        lattice,
        index,
        basis,
    })
}

/// Solve x * B = v over the rationals, where the rows of `basis` span the
/// ambient space. Returns the coordinate vector of v in that basis, or
/// `None` when v is outside the row span.
pub fn express_in_basis(
    basis: &[Vec<BigRational>],
    v: &[BigRational],
) -> Option<Vec<BigRational>> {
    let n = v.len();
    let k = basis.len();
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|col| {
            let mut row: Vec<BigRational> = (0..k).map(|r| basis[r][col].clone()).collect();
            row.push(v[col].clone());
            row
        })
        .collect();
    // columns of aug = unknowns x_r; eliminate
    let mut piv_rows: Vec<(usize, usize)> = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let pivot = aug[r][c].clone();
        for i in 0..n {
            if i == r || aug[i][c].is_zero() {
                continue;
            }
            let factor = &aug[i][c] / &pivot;
            for j in c..=k {
                let t = &factor * &aug[r][j];
                aug[i][j] -= t;
            }
        }
        piv_rows.push((r, c));
        r += 1;
        if r == n {
            break;
        }
    }
    // consistency: rows without pivot must have zero rhs
    for i in r..n {
        if !aug[i][k].is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); k];
    for &(row, c) in &piv_rows {
        x[c] = &aug[row][k] / &aug[row][c];
    }
    Some(x)
}

/// Is v in the Z-span of the basis rows? Coordinates are rational vectors
/// in a common ambient basis.
pub fn in_z_span(basis: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    match express_in_basis(basis, v) {
        Some(x) => x.iter().all(|c| c.is_integer()),
        None => false,
    }
}

// canonical basis of the Z-span of the rows (full rank n expected)
fn saturate(rows: &[Vec<BigRational>], n: usize) -> Result<Vec<Vec<BigRational>>> {
    let mut lcm = BigInt::one();
    for row in rows {
        for c in row {
            lcm = lcm.lcm(c.denom());
        }
    }
    let entries: Vec<BigInt> = rows
        .iter()
        .flat_map(|row| {
            row.iter()
                .map(|c| c.numer() * (&lcm / c.denom()))
                .collect::<Vec<_>>()
        })
        .collect();
    let m = IntMatrix::new(rows.len(), n, entries)?;
    let h = hermite_normal_form(&m);
    if h.rows() != n {
        return Err(Error::InvalidGlue(format!(
            "saturated span has rank {} (expected {n})",
            h.rows()
        )));
    }
    Ok((0..n)
        .map(|i| {
            h.row(i)
                .iter()
                .map(|e| BigRational::new(e.clone(), lcm.clone()))
                .collect()
        })
        .collect())
}

fn index_from_basis(basis: &[Vec<BigRational>]) -> Result<BigInt> {
    // |det(basis)| = 1 / index
    let n = basis.len();
    let det = rational_det(basis, n);
    if det.is_zero() {
        return Err(Error::InvalidGlue("degenerate overlattice basis".into()));
    }
    let inv = det.recip().abs();
    if !inv.is_integer() {
        return Err(Error::InvalidGlue(format!(
            "non-integral overlattice index {inv}"
        )));
    }
    Ok(inv.numer().clone())
}

fn rational_det(rows: &[Vec<BigRational>], n: usize) -> BigRational {
    let mut m: Vec<Vec<BigRational>> = rows.iter().map(|r| r.to_vec()).collect();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(k, p);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let t = &f * &m[k][j];
                m[i][j] -= t;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lat(rows: &[Vec<i64>]) -> Lattice {
        Lattice::from_gram(IntMatrix::from_rows(rows).unwrap(), vec![]).unwrap()
    }

    #[test]
    fn rejects_non_integral_pairing() {
        // e1/2 in U pairs with e2 in 1/2
        let u = lat(&[vec![0, 1], vec![1, 0]]);
        let g = GlueVector::from_fractions(&[1, 0], 2);
        let err = u.glue_overlattice(&[g]).unwrap_err();
        assert!(matches!(err, Error::InvalidGlue(_)), "{err}");
        assert!(err.to_string().contains("non-integrally"));
    }

    #[test]
    fn rejects_odd_norm() {
        // (e1+e2)/2 in <2> + <2>: norm = 1, integral pairings
        let l = lat(&[vec![2, 0], vec![0, 2]]);
        let g = GlueVector::from_fractions(&[1, 1], 2);
        let err = l.glue_overlattice(&[g]).unwrap_err();
        assert!(err.to_string().contains("self-pairing"));
    }

    #[test]
    fn rejects_lattice_vector_as_glue() {
        let l = lat(&[vec![-2]]);
        let g = GlueVector::from_fractions(&[3], 1);
        let err = l.glue_overlattice(&[g]).unwrap_err();
        assert!(err.to_string().contains("already lies"));
    }

    #[test]
    fn even_eight_gluing() {
        // <-2>^8 + half sum of all basis vectors: index 2, det 2^8/4 = 64
        let l = lat(&(0..8)
            .map(|i| {
                let mut row = vec![0i64; 8];
                row[i] = -2;
                row
            })
            .collect::<Vec<_>>());
        let g = GlueVector::half_support(8, &[0, 1, 2, 3, 4, 5, 6, 7]);
        let glued = l.glue_overlattice(&[g]).unwrap();
        assert_eq!(glued.index, BigInt::from(2));
        assert_eq!(glued.lattice.discriminant().unwrap(), BigInt::from(64));
        assert!(glued.lattice.is_even());
    }

    #[test]
    fn index_law_holds() {
        let l = lat(&[vec![2, 0], vec![0, -2]]);
        // (e1+e2)/2: pairings (1, -1), norm 0 -> valid
        let g = GlueVector::from_fractions(&[1, 1], 2);
        let glued = l.glue_overlattice(&[g]).unwrap();
        assert_eq!(glued.index, BigInt::from(2));
        let det_old = l.discriminant().unwrap();
        let det_new = glued.lattice.discriminant().unwrap();
        assert_eq!(det_new * BigInt::from(4), det_old);
    }

    #[test]
    fn glue_parse_roundtrip() {
        let g = GlueVector::from_fractions(&[1, -3, 0], 2);
        let strings = g.to_strings();
        assert_eq!(strings, vec!["1/2", "-3/2", "0"]);
        let back = GlueVector::parse(&strings).unwrap();
        assert_eq!(back, g);
        assert!(GlueVector::parse(&["x/y".to_string()]).is_err());
    }
}
