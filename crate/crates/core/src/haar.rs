//! Seeded Haar sampling.
//!
//! Every sampler draws from a ChaCha stream keyed by `(seed, stream)`, so a
//! trial's randomness depends only on its index, never on execution order.

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::Result;
use crate::register::{Capacity, TensorRegister};
use crate::state::{PureState, Unitary, C64};

/// Independent generator for trial `stream` under a run-level `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian, `E|z|² = 1`.
pub fn complex_gaussian<R: rand::Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn ginibre<R: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<C64> {
    DMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Haar-random isometry (`rows ≥ cols`): QR of a Ginibre matrix with the
/// phases of R's diagonal absorbed into Q.
pub fn haar_isometry<R: rand::Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> DMatrix<C64> {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = ginibre(rows, cols, rng);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..cols {
        let d = r[(j, j)];
        let n = d.norm();
        let phase = if n > 0.0 { d / n } else { C64::new(1.0, 0.0) };
        for i in 0..rows {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn haar_random_pure_with<R: rand::Rng + ?Sized>(
    register: TensorRegister,
    capacity: Capacity,
    rng: &mut R,
) -> Result<PureState> {
    let d = register.total_dim();
    capacity.check(d)?;
    // A normalized complex Gaussian vector is the first column of a Haar unitary.
    loop {
        let v: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
        if let Ok(psi) = PureState::normalized(register.clone(), v) {
            return Ok(psi);
        }
    }
}

/// Haar-uniform pure state on `register`, deterministic in `seed`.
pub fn haar_random_pure(register: TensorRegister, seed: u64) -> Result<PureState> {
    haar_random_pure_with(register, Capacity::default(), &mut stream_rng(seed, 0))
}

pub fn haar_random_unitary_on<R: rand::Rng + ?Sized>(
    register: TensorRegister,
    capacity: Capacity,
    rng: &mut R,
) -> Result<Unitary> {
    let d = register.total_dim();
    capacity.check(d)?;
    let q = haar_isometry(d, d, rng);
    Ok(Unitary::from_parts_unchecked(register.clone(), register, q))
}

/// Haar-random `dim × dim` unitary on a single factor labeled `u`.
pub fn haar_random_unitary(dim: usize, seed: u64) -> Result<Unitary> {
    let register = TensorRegister::from_dims(&[("u", dim)])?;
    haar_random_unitary_on(register, Capacity::default(), &mut stream_rng(seed, 0))
}

/// Length of the average Bloch vector over `samples` Haar qubit states.
pub fn mean_bloch_length(samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return crate::error::arg("need at least one sample");
    }
    let reg = TensorRegister::qubits(1)?;
    let mut sum = [0.0f64; 3];
    for t in 0..samples {
        let psi = haar_random_pure_with(reg.clone(), Capacity::default(), &mut stream_rng(seed, t as u64))?;
        let (a, b) = (psi.amplitudes()[0], psi.amplitudes()[1]);
        let coh = a.conj() * b;
        sum[0] += 2.0 * coh.re;
        sum[1] += 2.0 * coh.im;
        sum[2] += a.norm_sqr() - b.norm_sqr();
    }
    let n = samples as f64;
    Ok(sum.iter().map(|s| (s / n).powi(2)).sum::<f64>().sqrt())
}

/// Eigenphases in `[-π, π)` from the complex Schur form.
pub fn eigenphases(u: &Unitary) -> Vec<f64> {
    let (_, t) = u.matrix().clone().schur().unpack();
    (0..t.nrows()).map(|i| t[(i, i)].arg()).collect()
}

/// Kolmogorov–Smirnov distance between the pooled eigenphases of `samples`
/// Haar unitaries of dimension `dim` and the uniform law on the circle.
pub fn eigenphase_ks(dim: usize, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 || dim == 0 {
        return crate::error::arg("need at least one sample of positive dimension");
    }
    let reg = TensorRegister::from_dims(&[("u", dim)])?;
    let mut phases = Vec::with_capacity(dim * samples);
    for t in 0..samples {
        let u = haar_random_unitary_on(reg.clone(), Capacity::default(), &mut stream_rng(seed, t as u64))?;
        phases.extend(eigenphases(&u));
    }
    Ok(ks_uniform(&mut phases, -std::f64::consts::PI, std::f64::consts::PI))
}

/// KS statistic of `xs` against the uniform law on `[lo, hi]`.
pub fn ks_uniform(xs: &mut [f64], lo: f64, hi: f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = ((x - lo) / (hi - lo)).clamp(0.0, 1.0);
            (f - i as f64 / n).abs().max((f - (i + 1) as f64 / n).abs())
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn pure_state_is_normalized_and_deterministic() {
        let reg = TensorRegister::qubits(1).unwrap();
        let a = haar_random_pure(reg.clone(), 7).unwrap();
        assert!((a.norm_squared() - 1.0).abs() < 1e-12);
        let reg4 = TensorRegister::qubits(2).unwrap();
        assert_eq!(
            haar_random_pure(reg4.clone(), 7).unwrap(),
            haar_random_pure(reg4, 7).unwrap()
        );
    }

    #[test]
    fn capacity_enforced() {
        let reg = TensorRegister::qubits(13).unwrap();
        assert!(matches!(
            haar_random_pure(reg, 1),
            Err(Error::Capacity { .. })
        ));
        assert!(haar_random_unitary(0, 1).is_err());
    }

    #[test]
    fn dim_one_unitary_is_a_phase() {
        let u = haar_random_unitary(1, 5).unwrap();
        assert!((u.matrix()[(0, 0)].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sampled_unitary_is_unitary() {
        let u = haar_random_unitary(4, 3).unwrap();
        assert!(u.unitarity_defect() < 1e-10);
        let u = haar_random_unitary(64, 3).unwrap();
        assert!(u.unitarity_defect() < 1e-10);
    }

    #[test]
    fn uniformity_diagnostics() {
        assert!(mean_bloch_length(2000, 1).unwrap() < 0.1);
        assert!(eigenphase_ks(4, 200, 1).unwrap() < 0.1);
        let mut skewed: Vec<f64> = (0..100).map(|i| i as f64 / 200.0).collect();
        assert!((ks_uniform(&mut skewed, 0.0, 1.0) - 0.5).abs() < 0.02);
    }

    #[test]
    fn eigenphases_of_diagonal_unitary() {
        let reg = TensorRegister::from_dims(&[("u", 2)]).unwrap();
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::from_polar(1.0, 0.3),
            C64::from_polar(1.0, -2.0),
        ]));
        let mut p = eigenphases(&Unitary::new(reg, m).unwrap());
        p.sort_by(f64::total_cmp);
        assert!((p[0] + 2.0).abs() < 1e-12 && (p[1] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn streams_are_independent() {
        let mut a = stream_rng(1, 0);
        let mut b = stream_rng(1, 1);
        let za = complex_gaussian(&mut a);
        let zb = complex_gaussian(&mut b);
        assert_ne!(za, zb);
    }
}
