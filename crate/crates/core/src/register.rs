//! Labeled tensor-factor structure shared by states and unitaries.
//!
//! Amplitudes are stored row-major over the factor list: the first factor is
//! the most significant digit of the flat index.

use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};

/// Default amplitude budget (2^12).
pub const DEFAULT_CAPACITY: usize = 1 << 12;

/// Upper bound on the number of amplitudes a single state may hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capacity(pub usize);

impl Default for Capacity {
    fn default() -> Self {
        Capacity(DEFAULT_CAPACITY)
    }
}

impl Capacity {
    pub fn check(self, requested: usize) -> Result<()> {
        if requested == 0 || requested > self.0 {
            return Err(Error::Capacity {
                requested,
                limit: self.0,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factor {
    pub label: String,
    pub dim: usize,
}

impl Factor {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        Factor {
            label: label.into(),
            dim,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TensorRegister {
    factors: Vec<Factor>,
}

impl TensorRegister {
    /// Builds a register, rejecting duplicate labels and zero dimensions.
    /// Dimension 1 is accepted as an explicit padding factor.
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return arg("register needs at least one factor");
        }
        for (i, f) in factors.iter().enumerate() {
            if f.dim == 0 {
                return arg(format!("factor `{}` has dimension 0", f.label));
            }
            if factors[..i].iter().any(|g| g.label == f.label) {
                return arg(format!("duplicate factor label `{}`", f.label));
            }
        }
        let reg = TensorRegister { factors };
        reg.factors
            .iter()
            .try_fold(1usize, |acc, f| acc.checked_mul(f.dim))
            .ok_or_else(|| Error::Argument("total dimension overflows usize".into()))?;
        Ok(reg)
    }

    /// Convenience constructor from `(label, dim)` pairs.
    pub fn from_dims<S: AsRef<str>>(pairs: &[(S, usize)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|(l, d)| Factor::new(l.as_ref(), *d))
                .collect(),
        )
    }

    /// Register of `n` qubits labeled `q0..q{n-1}`.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| Factor::new(format!("q{i}"), 2)).collect())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim).product()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.factors.iter().map(|f| f.label.as_str())
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.label == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.position(label).is_some()
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        self.position(label)
            .map(|i| self.factors[i].dim)
            .ok_or_else(|| Error::Argument(format!("unknown label `{label}`")))
    }

    /// Product of the dimensions of the named factors.
    pub fn dim_of_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        labels
            .iter()
            .try_fold(1usize, |acc, l| Ok(acc * self.dim_of(l.as_ref())?))
    }

    /// Sub-register made of the named factors, in the order given.
    pub fn select<S: AsRef<str>>(&self, labels: &[S]) -> Result<TensorRegister> {
        let positions = self.positions(labels)?;
        Ok(TensorRegister {
            factors: positions.iter().map(|&p| self.factors[p].clone()).collect(),
        })
    }

    /// Factors not named in `labels`, in register order.
    pub fn complement<S: AsRef<str>>(&self, labels: &[S]) -> Vec<Factor> {
        self.factors
            .iter()
            .filter(|f| !labels.iter().any(|l| l.as_ref() == f.label))
            .cloned()
            .collect()
    }

    /// Resolves labels to factor positions; rejects unknown and repeated labels.
    pub fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            let p = self
                .position(l)
                .ok_or_else(|| Error::Argument(format!("unknown label `{l}`")))?;
            if out.contains(&p) {
                return arg(format!("label `{l}` listed twice"));
            }
            out.push(p);
        }
        Ok(out)
    }

    /// For every flat index, the index within the ordered `subset` and the
    /// index within the remaining factors (register order).
    pub fn split_index_map<S: AsRef<str>>(&self, subset: &[S]) -> Result<IndexSplit> {
        let sub_pos = self.positions(subset)?;
        let rest_pos: Vec<usize> = (0..self.len()).filter(|p| !sub_pos.contains(p)).collect();
        let dims: Vec<usize> = self.factors.iter().map(|f| f.dim).collect();
        let total = self.total_dim();

        // Stride of each factor inside the subset index and the rest index.
        let mut sub_stride = vec![0usize; self.len()];
        let mut s = 1;
        for &p in sub_pos.iter().rev() {
            sub_stride[p] = s;
            s *= dims[p];
        }
        let sub_dim = s;
        let mut rest_stride = vec![0usize; self.len()];
        let mut s = 1;
        for &p in rest_pos.iter().rev() {
            rest_stride[p] = s;
            s *= dims[p];
        }
        let rest_dim = s;

        let mut sub = vec![0usize; total];
        let mut rest = vec![0usize; total];
        let mut digits = vec![0usize; self.len()];
        for g in 0..total {
            let (mut a, mut b) = (0, 0);
            for p in 0..self.len() {
                a += digits[p] * sub_stride[p];
                b += digits[p] * rest_stride[p];
            }
            sub[g] = a;
            rest[g] = b;
            // odometer increment, last factor fastest
            for p in (0..self.len()).rev() {
                digits[p] += 1;
                if digits[p] < dims[p] {
                    break;
                }
                digits[p] = 0;
            }
        }
        Ok(IndexSplit {
            sub,
            rest,
            sub_dim,
            rest_dim,
        })
    }
}

/// Flat-index decomposition produced by [`TensorRegister::split_index_map`].
#[derive(Debug, Clone)]
pub struct IndexSplit {
    pub sub: Vec<usize>,
    pub rest: Vec<usize>,
    pub sub_dim: usize,
    pub rest_dim: usize,
}

impl IndexSplit {
    /// Inverse table: `flat[sub * rest_dim + rest]`.
    pub fn inverse(&self) -> Vec<usize> {
        let mut inv = vec![0usize; self.sub.len()];
        for (g, (&a, &b)) in self.sub.iter().zip(&self.rest).enumerate() {
            inv[a * self.rest_dim + b] = g;
        }
        inv
    }
}
