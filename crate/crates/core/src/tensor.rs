//! Three-way tensors and their flattenings.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::{rank_exact, DenseMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor3 {
    dims: [usize; 3],
    // entries[(i * d2 + j) * d3 + k]
    entries: Vec<Scalar>,
}

/// Which factor becomes the row index of a flattening.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    First,
    Second,
    Third,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::First, Mode::Second, Mode::Third];

    pub fn from_index(i: usize) -> Result<Mode> {
        match i {
            1 => Ok(Mode::First),
            2 => Ok(Mode::Second),
            3 => Ok(Mode::Third),
            _ => Err(Error::InvalidArgument("flattening mode must be 1, 2 or 3")),
        }
    }
}

impl Tensor3 {
    pub fn zeros(dims: [usize; 3]) -> Self {
        Self {
            dims,
            entries: vec![Scalar::zero(); dims[0] * dims[1] * dims[2]],
        }
    }

    pub fn new(dims: [usize; 3], entries: Vec<Scalar>) -> Result<Self> {
        let n = dims[0] * dims[1] * dims[2];
        if entries.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.len(),
            });
        }
        Ok(Self { dims, entries })
    }

    /// Rank-one tensor `u ⊗ v ⊗ w`.
    pub fn outer(u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Self {
        let mut t = Self::zeros([u.len(), v.len(), w.len()]);
        t.add_outer(&Scalar::from_integer(1.into()), u, v, w)
            .expect("dimensions match by construction");
        t
    }

    /// `self += c · u ⊗ v ⊗ w`.
    pub fn add_outer(&mut self, c: &Scalar, u: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Result<()> {
        for (got, want) in [u.len(), v.len(), w.len()].into_iter().zip(self.dims) {
            if got != want {
                return Err(Error::DimensionMismatch {
                    expected: want,
                    found: got,
                });
            }
        }
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let cu = c * ui;
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let cuv = &cu * vj;
                for (k, wk) in w.iter().enumerate() {
                    let idx = self.index(i, j, k);
                    self.entries[idx] += &cuv * wk;
                }
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    /// Entry at zero-based `(i, j, k)`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.entries[self.index(i, j, k)]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// The `d_mode × (product of the other two)` unfolding.
    pub fn flattening(&self, mode: Mode) -> DenseMatrix {
        let [d1, d2, d3] = self.dims;
        let (rows, cols) = match mode {
            Mode::First => (d1, d2 * d3),
            Mode::Second => (d2, d1 * d3),
            Mode::Third => (d3, d1 * d2),
        };
        let mut m = DenseMatrix::zeros(rows, cols);
        for i in 0..d1 {
            for j in 0..d2 {
                for k in 0..d3 {
                    let (r, c) = match mode {
                        Mode::First => (i, j * d3 + k),
                        Mode::Second => (j, i * d3 + k),
                        Mode::Third => (k, i * d2 + j),
                    };
                    m.set(r, c, self.get(i, j, k).clone());
                }
            }
        }
        m
    }
}

/// Rank of a flattening; the maximum over the three modes lower-bounds the
/// tensor rank.
pub fn flattening_rank(t: &Tensor3, mode: Mode) -> usize {
    rank_exact(&t.flattening(mode))
}
