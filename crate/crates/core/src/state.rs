//! Dense pure states, density matrices and unitaries over a [`TensorRegister`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::entropy::spectrum_entropy;
use crate::error::{arg, Error, Result};
use crate::register::{Factor, TensorRegister};

pub type C64 = Complex64;

const NORM_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-10;

/// Anything a reduced density matrix (and hence an entropy) can be taken from.
pub trait QuantumState {
    fn register(&self) -> &TensorRegister;

    /// Reduced density matrix on `keep` (kept factors in the order given).
    fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix>;

    /// Von Neumann entropy (qunats) of the reduction onto `labels`.
    /// An empty label set has zero entropy.
    fn entropy_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<f64>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    register: TensorRegister,
    amplitudes: DVector<C64>,
}

impl PureState {
    /// Wraps an amplitude vector. The squared norm must be 1 within 1e-10;
    /// the stored vector is renormalized exactly.
    pub fn new(register: TensorRegister, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != register.total_dim() {
            return arg(format!(
                "{} amplitudes for a register of dimension {}",
                amplitudes.len(),
                register.total_dim()
            ));
        }
        let v = DVector::from_vec(amplitudes);
        let n2 = v.norm_squared();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(Error::Numerical(format!("squared norm {n2} is not 1")));
        }
        Ok(PureState {
            register,
            amplitudes: v.unscale(n2.sqrt()),
        })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(register: TensorRegister, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != register.total_dim() {
            return arg("amplitude count does not match register");
        }
        let v = DVector::from_vec(amplitudes);
        let n = v.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::Numerical("cannot normalize a zero vector".into()));
        }
        Ok(PureState {
            register,
            amplitudes: v.unscale(n),
        })
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(register: TensorRegister, index: usize) -> Result<Self> {
        let dim = register.total_dim();
        if index >= dim {
            return arg(format!("basis index {index} out of range for dimension {dim}"));
        }
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Ok(PureState {
            register,
            amplitudes: v,
        })
    }

    /// Product basis state with one digit per factor.
    pub fn product_basis(register: TensorRegister, digits: &[usize]) -> Result<Self> {
        if digits.len() != register.len() {
            return arg("one digit per factor required");
        }
        let mut idx = 0;
        for (d, f) in digits.iter().zip(register.factors()) {
            if *d >= f.dim {
                return arg(format!("digit {d} out of range for factor `{}`", f.label));
            }
            idx = idx * f.dim + d;
        }
        Self::basis(register, idx)
    }

    /// Tensor product `self ⊗ other`; labels must be disjoint.
    pub fn tensor(&self, other: &PureState) -> Result<PureState> {
        let mut factors = self.register.factors().to_vec();
        factors.extend_from_slice(other.register.factors());
        let register = TensorRegister::new(factors)?;
        let amplitudes = self.amplitudes.kronecker(&other.amplitudes);
        Ok(PureState {
            register,
            amplitudes,
        })
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// Same amplitudes under renamed factors (dimensions must agree).
    pub fn relabeled(&self, register: TensorRegister) -> Result<PureState> {
        let same_dims = register.len() == self.register.len()
            && register
                .factors()
                .iter()
                .zip(self.register.factors())
                .all(|(a, b)| a.dim == b.dim);
        if !same_dims {
            return arg("relabeling must preserve the factor dimensions");
        }
        Ok(PureState {
            register,
            amplitudes: self.amplitudes.clone(),
        })
    }

    /// Amplitudes arranged as a `(subset × rest)` matrix.
    fn as_matrix<S: AsRef<str>>(&self, subset: &[S]) -> Result<DMatrix<C64>> {
        let split = self.register.split_index_map(subset)?;
        let mut m = DMatrix::zeros(split.sub_dim, split.rest_dim);
        for (g, amp) in self.amplitudes.iter().enumerate() {
            m[(split.sub[g], split.rest[g])] = *amp;
        }
        Ok(m)
    }

    /// Applies `u` to the ordered `targets`.
    ///
    /// When `u`'s output structure equals its input structure the targets keep
    /// their labels. Otherwise the targets are replaced by `u`'s output factors,
    /// inserted where the first target sat.
    pub fn apply_unitary<S: AsRef<str>>(&self, u: &Unitary, targets: &[S]) -> Result<PureState> {
        let tdim = self.register.dim_of_set(targets)?;
        if tdim != u.dim() {
            return arg(format!(
                "targets span dimension {tdim} but unitary has dimension {}",
                u.dim()
            ));
        }
        let m = self.as_matrix(targets)?;
        let out = &u.matrix * m;

        if u.output == u.input {
            let split = self.register.split_index_map(targets)?;
            let amps: Vec<C64> = (0..self.amplitudes.len())
                .map(|g| out[(split.sub[g], split.rest[g])])
                .collect();
            return Ok(PureState {
                register: self.register.clone(),
                amplitudes: DVector::from_vec(amps),
            });
        }

        let positions = self.register.positions(targets)?;
        let first = *positions.iter().min().expect("targets nonempty");
        let mut factors: Vec<Factor> = Vec::new();
        for (p, f) in self.register.factors().iter().enumerate() {
            if p == first {
                factors.extend_from_slice(u.output.factors());
            }
            if !positions.contains(&p) {
                factors.push(f.clone());
            }
        }
        let register = TensorRegister::new(factors)?;
        let out_labels: Vec<&str> = u.output.labels().collect();
        let split = register.split_index_map(&out_labels)?;
        let amps: Vec<C64> = (0..register.total_dim())
            .map(|g| out[(split.sub[g], split.rest[g])])
            .collect();
        Ok(PureState {
            register,
            amplitudes: DVector::from_vec(amps),
        })
    }
}

impl QuantumState for PureState {
    fn register(&self) -> &TensorRegister {
        &self.register
    }

    fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return arg("keep set must be nonempty");
        }
        let m = self.as_matrix(keep)?;
        let rho = &m * m.adjoint();
        Ok(DensityMatrix {
            register: self.register.select(keep)?,
            matrix: rho,
        })
    }

    fn entropy_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<f64> {
        if labels.is_empty() {
            return Ok(0.0);
        }
        let m = self.as_matrix(labels)?;
        // Both reductions of a pure state share their nonzero spectrum;
        // diagonalize whichever side is smaller.
        let gram = if m.nrows() <= m.ncols() {
            &m * m.adjoint()
        } else {
            m.adjoint() * &m
        };
        spectrum_entropy(gram.symmetric_eigenvalues().as_slice())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    register: TensorRegister,
    matrix: DMatrix<C64>,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12) and unit trace (1e-10). Positivity is
    /// checked when the spectrum is taken.
    pub fn new(register: TensorRegister, matrix: DMatrix<C64>) -> Result<Self> {
        let d = register.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return arg(format!(
                "{}x{} matrix for a register of dimension {d}",
                matrix.nrows(),
                matrix.ncols()
            ));
        }
        let dev = max_abs_diff(&matrix, &matrix.adjoint());
        if dev > HERMITIAN_TOL {
            return Err(Error::Numerical(format!("not Hermitian (deviation {dev:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::Numerical(format!("trace {tr} is not 1")));
        }
        Ok(DensityMatrix { register, matrix })
    }

    pub fn from_pure(state: &PureState) -> Self {
        let v = state.amplitudes();
        DensityMatrix {
            register: state.register.clone(),
            matrix: v * v.adjoint(),
        }
    }

    /// `I/d` on the register.
    pub fn maximally_mixed(register: TensorRegister) -> Self {
        let d = register.total_dim();
        DensityMatrix {
            register,
            matrix: DMatrix::identity(d, d).unscale(d as f64),
        }
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Real eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.matrix.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

impl QuantumState for DensityMatrix {
    fn register(&self) -> &TensorRegister {
        &self.register
    }

    fn reduced<S: AsRef<str>>(&self, keep: &[S]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return arg("keep set must be nonempty");
        }
        let split = self.register.split_index_map(keep)?;
        let inv = split.inverse();
        let (ds, dr) = (split.sub_dim, split.rest_dim);
        let mut out = DMatrix::zeros(ds, ds);
        for a in 0..ds {
            for a2 in 0..ds {
                let mut acc = C64::new(0.0, 0.0);
                for b in 0..dr {
                    acc += self.matrix[(inv[a * dr + b], inv[a2 * dr + b])];
                }
                out[(a, a2)] = acc;
            }
        }
        Ok(DensityMatrix {
            register: self.register.select(keep)?,
            matrix: out,
        })
    }

    fn entropy_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<f64> {
        if labels.is_empty() {
            return Ok(0.0);
        }
        let rho = self.reduced(labels)?;
        spectrum_entropy(rho.matrix.symmetric_eigenvalues().as_slice())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    input: TensorRegister,
    output: TensorRegister,
    matrix: DMatrix<C64>,
}

impl Unitary {
    /// A unitary whose output factors are its input factors.
    pub fn new(register: TensorRegister, matrix: DMatrix<C64>) -> Result<Self> {
        Self::with_output(register.clone(), register, matrix)
    }

    /// A unitary that re-factorizes its output, e.g. `(N) -> (C, N', R')`.
    pub fn with_output(
        input: TensorRegister,
        output: TensorRegister,
        matrix: DMatrix<C64>,
    ) -> Result<Self> {
        let d = input.total_dim();
        if output.total_dim() != d {
            return arg(format!(
                "input dimension {d} differs from output dimension {}",
                output.total_dim()
            ));
        }
        if matrix.nrows() != d || matrix.ncols() != d {
            return arg("unitary matrix shape does not match its register");
        }
        let dev = max_abs_diff(&(matrix.adjoint() * &matrix), &DMatrix::identity(d, d));
        if dev > UNITARY_TOL {
            return Err(Error::Numerical(format!(
                "U†U deviates from identity by {dev:e}"
            )));
        }
        Ok(Unitary {
            input,
            output,
            matrix,
        })
    }

    pub fn identity(register: TensorRegister) -> Self {
        let d = register.total_dim();
        Unitary {
            output: register.clone(),
            input: register,
            matrix: DMatrix::identity(d, d),
        }
    }

    /// Permutation unitary from a map on computational basis indices.
    pub fn permutation(register: TensorRegister, map: impl Fn(usize) -> usize) -> Result<Self> {
        let d = register.total_dim();
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            let j = map(i);
            if j >= d {
                return arg("permutation image out of range");
            }
            m[(j, i)] = C64::new(1.0, 0.0);
        }
        Self::new(register, m)
    }

    /// Tensor product `self ⊗ other` (input and output factors concatenated).
    pub fn tensor(&self, other: &Unitary) -> Result<Unitary> {
        let mut inp = self.input.factors().to_vec();
        inp.extend_from_slice(other.input.factors());
        let mut out = self.output.factors().to_vec();
        out.extend_from_slice(other.output.factors());
        Ok(Unitary {
            input: TensorRegister::new(inp)?,
            output: TensorRegister::new(out)?,
            matrix: self.matrix.kronecker(&other.matrix),
        })
    }

    /// Same matrix, new labels with matching dimensions.
    pub fn relabeled(&self, input: TensorRegister, output: TensorRegister) -> Result<Unitary> {
        Unitary::with_output(input, output, self.matrix.clone())
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn input(&self) -> &TensorRegister {
        &self.input
    }

    pub fn output(&self) -> &TensorRegister {
        &self.output
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    /// Max element deviation of `U†U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        max_abs_diff(&(self.matrix.adjoint() * &self.matrix), &DMatrix::identity(d, d))
    }

    pub(crate) fn from_parts_unchecked(
        input: TensorRegister,
        output: TensorRegister,
        matrix: DMatrix<C64>,
    ) -> Self {
        Unitary {
            input,
            output,
            matrix,
        }
    }
}

pub(crate) fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
