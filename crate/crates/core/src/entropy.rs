//! Von Neumann entropy, quantum mutual information and the strong
//! subadditivity margin. All values are in qunats (natural logarithm).

use crate::error::{arg, Error, Result};
use crate::state::{DensityMatrix, QuantumState};

/// Eigenvalues in `[-NEGATIVE_TOL, 0)` are solver noise; below that the
/// matrix is not a state.
pub const NEGATIVE_TOL: f64 = 1e-10;
/// Eigenvalues below this contribute nothing.
pub const CLIP: f64 = 1e-12;

/// `-Σ λ ln λ` over a spectrum, with `0 ln 0 = 0`.
pub fn spectrum_entropy(eigenvalues: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in eigenvalues {
        if l < -NEGATIVE_TOL {
            return Err(Error::Numerical(format!(
                "eigenvalue {l:e} is below -{NEGATIVE_TOL:e}; not positive semidefinite"
            )));
        }
        if l > CLIP {
            s -= l * l.ln();
        }
    }
    Ok(s.max(0.0))
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    spectrum_entropy(&rho.eigenvalues())
}

fn ensure_disjoint<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<()> {
    for a in x {
        if y.iter().any(|b| b.as_ref() == a.as_ref()) {
            return arg(format!("label `{}` appears on both sides", a.as_ref()));
        }
    }
    Ok(())
}

fn union<'a, S: AsRef<str>>(sets: &[&'a [S]]) -> Vec<&'a str> {
    sets.iter()
        .flat_map(|s| s.iter().map(|l| l.as_ref()))
        .collect()
}

/// `S(x) + S(y) - S(x ∪ y)`.
pub fn mutual_information<Q: QuantumState, S: AsRef<str>>(
    state: &Q,
    x: &[S],
    y: &[S],
) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return arg("mutual information needs two nonempty label sets");
    }
    ensure_disjoint(x, y)?;
    let xy = union(&[x, y]);
    let sx = state.entropy_of(x)?;
    let sy = state.entropy_of(y)?;
    let sxy = state.entropy_of(&xy)?;
    Ok(sx + sy - sxy)
}

/// `S(w ∪ x : y) - S(x : y)`, non-negative for every state by strong
/// subadditivity. An empty `x` reduces the subtrahend to zero.
pub fn ssa_margin<Q: QuantumState, S: AsRef<str>>(
    state: &Q,
    w: &[S],
    x: &[S],
    y: &[S],
) -> Result<f64> {
    if w.is_empty() || y.is_empty() {
        return arg("ssa margin needs nonempty w and y");
    }
    ensure_disjoint(w, x)?;
    ensure_disjoint(w, y)?;
    ensure_disjoint(x, y)?;
    let wx = union(&[w, x]);
    let lhs = mutual_information(state, &wx, &union(&[y]))?;
    let rhs = if x.is_empty() {
        0.0
    } else {
        mutual_information(state, x, y)?
    };
    Ok(lhs - rhs)
}
