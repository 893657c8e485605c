//! Even integer lattices presented by Gram matrices.
//!
//! A [`Lattice`] is a symmetric integer Gram matrix together with basis
//! labels. Evenness and the determinant are computed eagerly at
//! construction, so shared values are read-only afterwards. Degenerate
//! lattices are representable, but every discriminant-side operation
//! refuses them with [`Error::DegenerateLattice`].

mod disc;
mod glue;

pub use disc::{mod_1z, mod_2z, splits_off_u2_form, DiscriminantGroup, TwoElementaryInvariants};
pub use glue::{express_in_basis, in_z_span, GlueVector, Glued};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{self, IntMatrix};

#[derive(Clone, Debug)]
pub struct Lattice {
    pub name: String,
    gram: IntMatrix,
    labels: Vec<String>,
    even: bool,
    det: BigInt,
}

impl Lattice {
    /// Build a lattice from a symmetric Gram matrix. Labels may be empty, in
    /// which case `e1..en` are generated.
    pub fn from_gram(gram: IntMatrix, labels: Vec<String>) -> Result<Lattice> {
        if !gram.is_symmetric() {
            return Err(Error::Shape("Gram matrix must be symmetric".into()));
        }
        let n = gram.rows();
        let labels = if labels.is_empty() {
            (1..=n).map(|i| format!("e{i}")).collect()
        } else if labels.len() == n {
            labels
        } else {
            return Err(Error::Shape(format!(
                "{} labels for a rank-{} lattice",
                labels.len(),
                n
            )));
        };
        let even = (0..n).all(|i| (&gram[(i, i)] % 2i32).is_zero());
        let det = exactlin::determinant(&gram)?;
        Ok(Lattice {
            name: String::new(),
            gram,
            labels,
            even,
            det,
        })
    }

    pub fn named(mut self, name: impl Into<String>) -> Lattice {
        self.name = name.into();
        self
    }

    /// The empty (rank 0) lattice, neutral element for direct sums.
    pub fn empty() -> Lattice {
        Lattice::from_gram(IntMatrix::zero(0, 0), vec![]).expect("empty lattice")
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    pub fn is_degenerate(&self) -> bool {
        self.det.is_zero() && self.rank() > 0
    }

    /// Determinant of the Gram matrix.
    pub fn discriminant(&self) -> Result<BigInt> {
        if self.is_degenerate() {
            return Err(Error::DegenerateLattice(format!(
                "{}: determinant is zero",
                self.display_name()
            )));
        }
        Ok(self.det.clone())
    }

    /// Determinant without the degeneracy guard (zero when degenerate).
    pub fn det_raw(&self) -> &BigInt {
        &self.det
    }

    /// (n_plus, n_minus, n_zero) of the Gram form.
    pub fn signature(&self) -> (usize, usize, usize) {
        exactlin::inertia(&self.gram).expect("gram is symmetric")
    }

    pub fn is_negative_definite(&self) -> bool {
        let (p, m, z) = self.signature();
        p == 0 && z == 0 && m == self.rank()
    }

    /// Orthogonal direct sum; labels are concatenated.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let gram = self.gram.block_diag(&other.gram);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        Lattice::from_gram(gram, labels).expect("block diagonal of symmetric is symmetric")
    }

    /// Multiply the Gram matrix entrywise by `k` (the twist L(k)).
    pub fn rescale(&self, k: &BigInt) -> Result<Lattice> {
        if k.is_zero() {
            return Err(Error::Domain("rescale by zero".into()));
        }
        let gram = self.gram.scale(k);
        Lattice::from_gram(gram, self.labels.clone())
    }

    /// Pairing of two rational coordinate vectors under the Gram form.
    pub fn pair(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.rank();
        assert_eq!(x.len(), n);
        assert_eq!(y.len(), n);
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                acc += &x[i] * &y[j] * BigRational::from(self.gram[(i, j)].clone());
            }
        }
        acc
    }

    pub fn norm(&self, x: &[BigRational]) -> BigRational {
        self.pair(x, x)
    }

    fn display_name(&self) -> &str {
        if self.name.is_empty() {
            "<unnamed lattice>"
        } else {
            &self.name
        }
    }

    /// Discriminant group L*/L with generators and q-values.
    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        disc::discriminant_group(self)
    }

    /// Minimal number of generators of the discriminant group.
    pub fn length(&self) -> Result<usize> {
        Ok(self.discriminant_group()?.elementary_divisors().len())
    }

    /// (rank, length, delta) when the discriminant group is 2-elementary,
    /// `None` otherwise.
    pub fn two_elementary_invariants(&self) -> Result<Option<TwoElementaryInvariants>> {
        let dg = self.discriminant_group()?;
        Ok(disc::two_elementary(self, &dg))
    }

    /// Adjoin glue vectors and return the saturated overlattice.
    pub fn glue_overlattice(&self, glues: &[GlueVector]) -> Result<Glued> {
        glue::glue_overlattice(self, glues)
    }
}

/// Wire format: `{"name", "labels", "gram", "glue"}` where `gram` is a plain
/// row array and glue coordinates are exact `"p/q"` strings.
#[derive(Serialize, Deserialize)]
pub struct LatticeJson {
    pub name: String,
    pub labels: Vec<String>,
    pub gram: Vec<Vec<serde_json::Number>>,
    #[serde(default)]
    pub glue: Vec<Vec<String>>,
}

impl LatticeJson {
    pub fn from_lattice(l: &Lattice, glue: &[GlueVector]) -> LatticeJson {
        let n = l.rank();
        let gram = (0..n)
            .map(|i| l.gram.row(i).iter().map(exactlin::bigint_to_number).collect())
            .collect();
        LatticeJson {
            name: l.name.clone(),
            labels: l.labels.clone(),
            gram,
            glue: glue.iter().map(|g| g.to_strings()).collect(),
        }
    }

    /// Base lattice as written, glue not yet applied.
    pub fn base_lattice(&self) -> Result<Lattice> {
        let n = self.gram.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in &self.gram {
            if row.len() != n {
                return Err(Error::Shape("gram must be square".into()));
            }
            for v in row {
                entries.push(
                    exactlin::number_to_bigint(v).map_err(Error::Parse)?,
                );
            }
        }
        let gram = IntMatrix::new(n, n, entries)?;
        Ok(Lattice::from_gram(gram, self.labels.clone())?.named(self.name.clone()))
    }

    /// Base lattice with all listed glue vectors applied.
    pub fn resolve(&self) -> Result<Lattice> {
        let base = self.base_lattice()?;
        if self.glue.is_empty() {
            return Ok(base);
        }
        let glues: Vec<GlueVector> = self
            .glue
            .iter()
            .map(|coords| GlueVector::parse(coords))
            .collect::<Result<_>>()?;
        let glued = base.glue_overlattice(&glues)?;
        Ok(glued.lattice.named(self.name.clone()))
    }
}
