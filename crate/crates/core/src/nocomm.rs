//! Non-signaling unitaries built from two subprocesses joined by a one-way
//! channel, a detector for signaling, and sampled checks of the entropy
//! inequalities that rely on them.
//!
//! Local-horizon wiring: the exterior process `W` acts first on the near
//! horizon modes `N` (plus an ancilla `E`, and infalling matter `I` if
//! present) and emits the channel `C` together with the exterior outputs
//! `N'` and `R'`. The interior process `V` then absorbs `C` into the
//! interior, `(B, C) -> B'`. Nothing that enters through `B` can reach
//! `N'` or `R'`.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::entropy::mutual_information;
use crate::error::{arg, Result};
use crate::haar::{complex_gaussian, haar_isometry, haar_random_pure_with, stream_rng};
use crate::page_curve::run_trials;
use crate::register::{Capacity, Factor, TensorRegister};
use crate::state::{PureState, QuantumState, Unitary, C64};

/// Trace distance above which a unitary is declared signaling.
pub const SIGNALING_THRESHOLD: f64 = 1e-8;
/// Smallest acceptable inequality margin in sampled checks.
pub const MARGIN_FLOOR: f64 = -1e-9;

pub const B: &str = "B";
pub const N: &str = "N";
pub const I: &str = "I";
pub const E: &str = "E";
pub const C: &str = "C";
pub const B_OUT: &str = "B'";
pub const N_OUT: &str = "N'";
pub const R_OUT: &str = "R'";
pub const R: &str = "R";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoCommDims {
    pub b: usize,
    pub n: usize,
    /// Infalling matter entering through the exterior; 1 means none.
    pub infall: usize,
    pub ancilla: usize,
    pub c: usize,
    pub n_out: usize,
    pub r_out: usize,
}

impl NoCommDims {
    /// Two qubits each of `B` and `N`, one ancilla qubit, one channel qubit,
    /// one qubit each of `N'` and `R'`.
    pub fn qubits_2_2() -> Self {
        NoCommDims {
            b: 4,
            n: 4,
            infall: 1,
            ancilla: 2,
            c: 2,
            n_out: 2,
            r_out: 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.b, self.n, self.infall, self.ancilla, self.c, self.n_out, self.r_out];
        if all.contains(&0) {
            return arg("every circuit dimension must be at least 1");
        }
        let w_in = self.n * self.infall * self.ancilla;
        let w_out = self.c * self.n_out * self.r_out;
        if w_in != w_out {
            return arg(format!(
                "exterior process maps dimension {w_in} to {w_out}; they must agree"
            ));
        }
        Ok(())
    }

    pub fn b_out(&self) -> usize {
        self.b * self.c
    }

    pub fn input_dim(&self) -> usize {
        self.b * self.n * self.infall * self.ancilla
    }

    fn w_input(&self) -> TensorRegister {
        let mut f = vec![Factor::new(N, self.n)];
        if self.infall > 1 {
            f.push(Factor::new(I, self.infall));
        }
        f.push(Factor::new(E, self.ancilla));
        TensorRegister::new(f).expect("distinct labels")
    }

    fn w_output(&self) -> TensorRegister {
        TensorRegister::from_dims(&[(C, self.c), (N_OUT, self.n_out), (R_OUT, self.r_out)])
            .expect("distinct labels")
    }

    fn v_input(&self) -> TensorRegister {
        TensorRegister::from_dims(&[(B, self.b), (C, self.c)]).expect("distinct labels")
    }

    fn v_output(&self) -> TensorRegister {
        TensorRegister::from_dims(&[(B_OUT, self.b_out())]).expect("distinct labels")
    }

    /// Input factors of the composed unitary: `(B, N, [I], E)`.
    pub fn input_register(&self) -> TensorRegister {
        let mut f = vec![Factor::new(B, self.b)];
        f.extend_from_slice(self.w_input().factors());
        TensorRegister::new(f).expect("distinct labels")
    }

    /// Output factors of the composed unitary: `(B', N', R')`.
    pub fn output_register(&self) -> TensorRegister {
        TensorRegister::from_dims(&[(B_OUT, self.b_out()), (N_OUT, self.n_out), (R_OUT, self.r_out)])
            .expect("distinct labels")
    }

    fn input_labels(&self) -> Vec<&'static str> {
        if self.infall > 1 {
            vec![B, N, I, E]
        } else {
            vec![B, N, E]
        }
    }

    pub fn as_map(&self) -> BTreeMap<String, usize> {
        [
            ("B", self.b),
            ("N", self.n),
            ("I", self.infall),
            ("E", self.ancilla),
            ("C", self.c),
            ("N'", self.n_out),
            ("R'", self.r_out),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoCommCircuit {
    v: Unitary,
    w: Unitary,
    dims: NoCommDims,
    total: Unitary,
}

/// Composes `V` after `W`. `w` must have dimension `n·infall·ancilla` and `v`
/// dimension `b·c`; both are relabeled onto the canonical factors.
pub fn build_nonsignaling(v: &Unitary, w: &Unitary, dims: NoCommDims) -> Result<NoCommCircuit> {
    dims.validate()?;
    if w.dim() != dims.n * dims.infall * dims.ancilla {
        return arg(format!(
            "exterior unitary has dimension {} but N, I, E span {}",
            w.dim(),
            dims.n * dims.infall * dims.ancilla
        ));
    }
    if v.dim() != dims.b * dims.c {
        return arg(format!(
            "interior unitary has dimension {} but B, C span {}",
            v.dim(),
            dims.b * dims.c
        ));
    }
    let w = w.relabeled(dims.w_input(), dims.w_output())?;
    let v = v.relabeled(dims.v_input(), dims.v_output())?;
    let total = compose(&v, &w, &dims)?;
    Ok(NoCommCircuit { v, w, dims, total })
}

fn compose(v: &Unitary, w: &Unitary, dims: &NoCommDims) -> Result<Unitary> {
    let input = dims.input_register();
    let d = input.total_dim();
    let w_targets: Vec<&str> = dims.input_labels()[1..].to_vec();
    let mut m = DMatrix::zeros(d, d);
    for col in 0..d {
        let psi = PureState::basis(input.clone(), col)?;
        let mid = psi.apply_unitary(w, &w_targets)?;
        let out = mid.apply_unitary(v, &[B, C])?;
        let out = out.relabeled(dims.output_register())?;
        m.set_column(col, out.amplitudes());
    }
    Unitary::with_output(input, dims.output_register(), m)
}

impl NoCommCircuit {
    /// Haar-random `V` and `W` drawn from `rng`.
    pub fn random<G: Rng + ?Sized>(dims: NoCommDims, capacity: Capacity, rng: &mut G) -> Result<Self> {
        dims.validate()?;
        capacity.check(dims.input_dim())?;
        let wd = dims.n * dims.infall * dims.ancilla;
        let vd = dims.b * dims.c;
        let w = Unitary::new(
            TensorRegister::from_dims(&[("w", wd)])?,
            haar_isometry(wd, wd, rng),
        )?;
        let v = Unitary::new(
            TensorRegister::from_dims(&[("v", vd)])?,
            haar_isometry(vd, vd, rng),
        )?;
        build_nonsignaling(&v, &w, dims)
    }

    pub fn v(&self) -> &Unitary {
        &self.v
    }

    pub fn w(&self) -> &Unitary {
        &self.w
    }

    pub fn dims(&self) -> NoCommDims {
        self.dims
    }

    /// Composed unitary `(B, N, [I], E) -> (B', N', R')`.
    pub fn unitary(&self) -> &Unitary {
        &self.total
    }
}

/// Runs the circuit on `initial`, a state on `B`, `N`, `[I]` and spectators
/// such as `R`. The ancilla starts in `|0⟩`. Outputs replace the inputs at
/// `B`'s position; spectators are untouched.
pub fn simulate_fig3(circuit: &NoCommCircuit, initial: &PureState) -> Result<PureState> {
    let dims = circuit.dims;
    let reg = initial.register();
    for label in dims.input_labels().into_iter().filter(|&l| l != E) {
        let want = match label {
            B => dims.b,
            N => dims.n,
            _ => dims.infall,
        };
        if reg.dim_of(label)? != want {
            return arg(format!("factor `{label}` must have dimension {want}"));
        }
    }
    if reg.contains(E) {
        return arg("the initial state must not contain the ancilla factor `E`");
    }
    let ancilla = PureState::basis(TensorRegister::from_dims(&[(E, dims.ancilla)])?, 0)?;
    let full = initial.tensor(&ancilla)?;
    full.apply_unitary(&circuit.total, &dims.input_labels())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectMode {
    /// Every pair of matrix units on the sender and its complement.
    Exact,
    /// Random product probes.
    Sampled { probes: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignalingVerdict {
    pub signaling: bool,
    pub magnitude: f64,
    pub probes: usize,
}

impl SignalingVerdict {
    fn from_magnitude(magnitude: f64, probes: usize) -> Self {
        SignalingVerdict {
            signaling: magnitude > SIGNALING_THRESHOLD,
            magnitude,
            probes,
        }
    }
}

fn trace_norm(m: &DMatrix<C64>) -> f64 {
    m.singular_values().sum()
}

/// Whether anything prepared on input factors `sender` can change the
/// reduced state of output factors `receiver`.
///
/// Exact mode writes each input basis column `|i,k⟩` (sender `i`, the rest
/// `k`) as a receiver-by-rest matrix `M_ik` and forms
/// `R_{ik,jl} = M_ik M_jl†`, the receiver image of `|i,k⟩⟨j,l|`. The map is
/// non-signaling exactly when `R_{ik,jl} = δ_ij Q_{kl}`, so the magnitude is
/// the larger of the worst trace distance between diagonal blocks of two
/// sender preparations and the worst trace norm of an off-diagonal block.
pub fn detect_signaling<S: AsRef<str>>(
    u: &Unitary,
    sender: &[S],
    receiver: &[S],
    mode: DetectMode,
) -> Result<SignalingVerdict> {
    if sender.is_empty() || receiver.is_empty() {
        return arg("sender and receiver must be nonempty");
    }
    let in_split = u.input().split_index_map(sender)?;
    let out_split = u.output().split_index_map(receiver)?;
    let col_of = in_split.inverse();
    let (da, dk) = (in_split.sub_dim, in_split.rest_dim);
    let blocks: Vec<DMatrix<C64>> = (0..u.dim())
        .map(|col| {
            let c = u.matrix().column(col);
            let mut m = DMatrix::zeros(out_split.sub_dim, out_split.rest_dim);
            for (g, amp) in c.iter().enumerate() {
                m[(out_split.sub[g], out_split.rest[g])] = *amp;
            }
            m
        })
        .collect();
    let block = |i: usize, k: usize| &blocks[col_of[i * dk + k]];

    match mode {
        DetectMode::Exact => {
            let mut magnitude: f64 = 0.0;
            let mut probes = 0;
            for k in 0..dk {
                for l in 0..dk {
                    let images: Vec<DMatrix<C64>> =
                        (0..da).map(|i| block(i, k) * block(i, l).adjoint()).collect();
                    for i in 0..da {
                        for j in (i + 1)..da {
                            probes += 1;
                            magnitude = magnitude.max(0.5 * trace_norm(&(&images[i] - &images[j])));
                        }
                        for j in 0..da {
                            if j != i {
                                probes += 1;
                                magnitude =
                                    magnitude.max(trace_norm(&(block(i, k) * block(j, l).adjoint())));
                            }
                        }
                    }
                }
            }
            Ok(SignalingVerdict::from_magnitude(magnitude, probes.max(1)))
        }
        DetectMode::Sampled { probes, seed } => {
            if probes == 0 {
                return arg("sampled detection needs at least one probe");
            }
            let random_vec = |d: usize, rng: &mut rand_chacha::ChaCha8Rng| {
                let v: Vec<C64> = (0..d).map(|_| complex_gaussian(rng)).collect();
                let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                v.into_iter().map(|z| z / n).collect::<Vec<_>>()
            };
            let mut magnitude: f64 = 0.0;
            for p in 0..probes {
                let mut rng = stream_rng(seed, p as u64);
                let a0 = random_vec(da, &mut rng);
                let a1 = random_vec(da, &mut rng);
                let rest = random_vec(dk, &mut rng);
                let image = |a: &[C64]| {
                    let mut m = DMatrix::<C64>::zeros(out_split.sub_dim, out_split.rest_dim);
                    for (i, ai) in a.iter().enumerate() {
                        for (k, rk) in rest.iter().enumerate() {
                            m += block(i, k) * (ai * rk);
                        }
                    }
                    &m * m.adjoint()
                };
                magnitude = magnitude.max(0.5 * trace_norm(&(image(&a0) - image(&a1))));
            }
            Ok(SignalingVerdict::from_magnitude(magnitude, probes))
        }
    }
}

/// Sampled check result, `{check, samples, shape, min_margin, threshold, failures}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationResult {
    pub check: String,
    pub samples: usize,
    pub shape: BTreeMap<String, usize>,
    pub min_margin: f64,
    pub threshold: f64,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub sample: usize,
    pub margin: f64,
}

impl VerificationResult {
    fn from_margins(check: &str, shape: BTreeMap<String, usize>, margins: &[f64]) -> Self {
        let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
        VerificationResult {
            check: check.to_string(),
            samples: margins.len(),
            shape,
            min_margin,
            threshold: MARGIN_FLOOR,
            failures: margins
                .iter()
                .enumerate()
                .filter(|(_, &m)| m < MARGIN_FLOOR)
                .map(|(sample, &margin)| Failure { sample, margin })
                .collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Register dimensions for the unconstrained check: `(B, N)` evolve under an
/// arbitrary unitary into `(B', N', R')`, `R` purifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eq2Shape {
    pub b: usize,
    pub n: usize,
    pub r: usize,
    pub b_out: usize,
    pub n_out: usize,
    pub r_out: usize,
}

impl Default for Eq2Shape {
    fn default() -> Self {
        Eq2Shape {
            b: 4,
            n: 4,
            r: 4,
            b_out: 2,
            n_out: 2,
            r_out: 4,
        }
    }
}

impl Eq2Shape {
    pub fn validate(&self) -> Result<()> {
        if [self.b, self.n, self.r, self.b_out, self.n_out, self.r_out].contains(&0) {
            return arg("every dimension must be at least 1");
        }
        if self.b * self.n != self.b_out * self.n_out * self.r_out {
            return arg("output split must have the dimension of B·N");
        }
        Ok(())
    }

    fn as_map(&self) -> BTreeMap<String, usize> {
        [
            ("B", self.b),
            ("N", self.n),
            ("R", self.r),
            ("B'", self.b_out),
            ("N'", self.n_out),
            ("R'", self.r_out),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }
}

/// `S(B,N:R) - S(R':R)` over random states and arbitrary unitaries on `(B, N)`.
pub fn verify_eq2(samples: usize, shape: Eq2Shape, seed: u64, capacity: Capacity) -> Result<VerificationResult> {
    shape.validate()?;
    capacity.check(shape.b * shape.n * shape.r)?;
    let reg = TensorRegister::from_dims(&[(B, shape.b), (N, shape.n), (R, shape.r)])?;
    let u_in = TensorRegister::from_dims(&[(B, shape.b), (N, shape.n)])?;
    let u_out =
        TensorRegister::from_dims(&[(B_OUT, shape.b_out), (N_OUT, shape.n_out), (R_OUT, shape.r_out)])?;
    let margins = run_trials(samples, |t| {
        let mut rng = stream_rng(seed, t as u64);
        let psi = haar_random_pure_with(reg.clone(), capacity, &mut rng)?;
        let d = shape.b * shape.n;
        let u = Unitary::with_output(u_in.clone(), u_out.clone(), haar_isometry(d, d, &mut rng))?;
        let before = mutual_information(&psi, &[B, N], &[R])?;
        let out = psi.apply_unitary(&u, &[B, N])?;
        let after = mutual_information(&out, &[R_OUT], &[R])?;
        Ok(before - after)
    })?;
    Ok(VerificationResult::from_margins("eq2", shape.as_map(), &margins))
}

/// Circuit dimensions plus the purifying reference `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eq6Shape {
    pub circuit: NoCommDims,
    pub r: usize,
}

impl Default for Eq6Shape {
    fn default() -> Self {
        Eq6Shape {
            circuit: NoCommDims::qubits_2_2(),
            r: 4,
        }
    }
}

/// `S(N:R) - S(R':R)` over random constructed non-signaling circuits. With
/// infalling matter the left side is `S(N,I:R)` and `I` starts in an
/// independent random pure state.
pub fn verify_eq6(samples: usize, shape: Eq6Shape, seed: u64, capacity: Capacity) -> Result<VerificationResult> {
    let dims = shape.circuit;
    dims.validate()?;
    if shape.r == 0 {
        return arg("R must have dimension at least 1");
    }
    capacity.check(dims.input_dim() * shape.r)?;
    let bnr = TensorRegister::from_dims(&[(B, dims.b), (N, dims.n), (R, shape.r)])?;
    let infall = TensorRegister::from_dims(&[(I, dims.infall)])?;
    let margins = run_trials(samples, |t| {
        let mut rng = stream_rng(seed, t as u64);
        let circuit = NoCommCircuit::random(dims, capacity, &mut rng)?;
        let mut psi = haar_random_pure_with(bnr.clone(), capacity, &mut rng)?;
        let exterior: Vec<&str> = if dims.infall > 1 {
            psi = psi.tensor(&haar_random_pure_with(infall.clone(), capacity, &mut rng)?)?;
            vec![N, I]
        } else {
            vec![N]
        };
        let before = mutual_information(&psi, &exterior, &[R])?;
        let out = simulate_fig3(&circuit, &psi)?;
        let after = mutual_information(&out, &[R_OUT], &[R])?;
        Ok(before - after)
    })?;
    let mut map = dims.as_map();
    map.insert("R".into(), shape.r);
    Ok(VerificationResult::from_margins("eq6", map, &margins))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub s_n_r: f64,
    pub s_rout_r: f64,
    pub margin: f64,
    pub verdict: SignalingVerdict,
}

/// `B` maximally entangled with `R`, `N` in `|0⟩`, and a SWAP that carries
/// `B` out as `R'`: `S(N:R) = 0` but `S(R':R) = 2 ln 2`.
pub fn swap_counterexample() -> Result<Counterexample> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    let bell = PureState::new(
        TensorRegister::from_dims(&[(B, 2), (R, 2)])?,
        vec![C64::new(s, 0.0), z, z, C64::new(s, 0.0)],
    )?;
    let n0 = PureState::basis(TensorRegister::from_dims(&[(N, 2)])?, 0)?;
    let psi = bell.tensor(&n0)?;
    let swap = Unitary::permutation(TensorRegister::from_dims(&[(B, 2), (N, 2)])?, |x| {
        ((x & 1) << 1) | (x >> 1)
    })?;
    // first wire now carries N's content, second wire B's
    let swap = swap.relabeled(
        swap.input().clone(),
        TensorRegister::from_dims(&[(N_OUT, 2), (R_OUT, 2)])?,
    )?;
    let s_n_r = mutual_information(&psi, &[N], &[R])?;
    let out = psi.apply_unitary(&swap, &[B, N])?;
    let s_rout_r = mutual_information(&out, &[R_OUT], &[R])?;
    let verdict = detect_signaling(&swap, &[B], &[R_OUT], DetectMode::Exact)?;
    Ok(Counterexample {
        s_n_r,
        s_rout_r,
        margin: s_n_r - s_rout_r,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qubits(labels: &[&str]) -> TensorRegister {
        let pairs: Vec<(&str, usize)> = labels.iter().map(|&l| (l, 2)).collect();
        TensorRegister::from_dims(&pairs).unwrap()
    }

    fn cnot(control_first: bool) -> Unitary {
        Unitary::permutation(qubits(&["a", "b"]), move |x| {
            let (a, b) = (x >> 1, x & 1);
            if control_first {
                (a << 1) | (b ^ a)
            } else {
                ((a ^ b) << 1) | b
            }
        })
        .unwrap()
    }

    #[test]
    fn identity_circuit_composes_to_identity() {
        let dims = NoCommDims {
            b: 2,
            n: 2,
            infall: 1,
            ancilla: 1,
            c: 1,
            n_out: 2,
            r_out: 1,
        };
        let v = Unitary::identity(TensorRegister::from_dims(&[("v", 2)]).unwrap());
        let w = Unitary::identity(TensorRegister::from_dims(&[("w", 2)]).unwrap());
        let c = build_nonsignaling(&v, &w, dims).unwrap();
        let d = c.unitary().dim();
        assert_eq!(c.unitary().matrix(), &DMatrix::identity(d, d));
        let verdict = detect_signaling(c.unitary(), &[B], &[N_OUT], DetectMode::Exact).unwrap();
        assert!(!verdict.signaling);
        assert_eq!(verdict.magnitude, 0.0);
    }

    #[test]
    fn cnot_into_channel_is_non_signaling() {
        // W copies N into the channel qubit; V is trivial.
        let dims = NoCommDims {
            b: 2,
            n: 2,
            infall: 1,
            ancilla: 2,
            c: 2,
            n_out: 2,
            r_out: 1,
        };
        let v = Unitary::identity(TensorRegister::from_dims(&[("v", 4)]).unwrap());
        // (N, E) -> (C, N'): CNOT N→E, then swap so E becomes the leading C.
        let w = Unitary::permutation(qubits(&["n", "e"]), |x| {
            let (n, e) = (x >> 1, x & 1);
            ((e ^ n) << 1) | n
        })
        .unwrap();
        let c = build_nonsignaling(&v, &w, dims).unwrap();
        assert!(c.unitary().unitarity_defect() < 1e-12);
        let verdict = detect_signaling(c.unitary(), &[B], &[N_OUT, R_OUT], DetectMode::Exact).unwrap();
        assert!(!verdict.signaling, "{verdict:?}");
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let v = Unitary::identity(TensorRegister::from_dims(&[("v", 3)]).unwrap());
        let w = Unitary::identity(TensorRegister::from_dims(&[("w", 8)]).unwrap());
        assert!(build_nonsignaling(&v, &w, NoCommDims::qubits_2_2()).is_err());
        let bad = NoCommDims { r_out: 3, ..NoCommDims::qubits_2_2() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn random_circuits_do_not_signal() {
        for t in 0..5 {
            let mut rng = stream_rng(9, t);
            let c = NoCommCircuit::random(NoCommDims::qubits_2_2(), Capacity::default(), &mut rng).unwrap();
            assert!(c.unitary().unitarity_defect() < 1e-10);
            let v = detect_signaling(c.unitary(), &[B], &[N_OUT, R_OUT], DetectMode::Exact).unwrap();
            assert!(v.magnitude < 1e-9, "{v:?}");
            let s = detect_signaling(
                c.unitary(),
                &[B],
                &[N_OUT, R_OUT],
                DetectMode::Sampled { probes: 20, seed: t },
            )
            .unwrap();
            assert!(!s.signaling);
        }
    }

    #[test]
    fn curated_signaling_suite() {
        let swap = Unitary::permutation(qubits(&["a", "b"]), |x| ((x & 1) << 1) | (x >> 1)).unwrap();
        let v = detect_signaling(&swap, &["a"], &["b"], DetectMode::Exact).unwrap();
        assert!(v.signaling);
        assert!((v.magnitude - 1.0).abs() < 1e-12);

        let id = Unitary::identity(qubits(&["a", "b"]));
        let v = detect_signaling(&id, &["a"], &["b"], DetectMode::Exact).unwrap();
        assert!(!v.signaling);
        assert_eq!(v.magnitude, 0.0);

        for control_first in [true, false] {
            let v = detect_signaling(&cnot(control_first), &["a"], &["b"], DetectMode::Exact).unwrap();
            assert!(v.signaling, "control_first = {control_first}");
            assert!(v.magnitude >= 0.5);
        }

        let one = C64::new(1.0, 0.0);
        let cz = Unitary::new(
            qubits(&["a", "b"]),
            DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![one, one, one, -one])),
        )
        .unwrap();
        let v = detect_signaling(&cz, &["a"], &["b"], DetectMode::Exact).unwrap();
        assert!(v.signaling);
        assert!(detect_signaling(&swap, &["a"], &["b"], DetectMode::Sampled { probes: 16, seed: 1 })
            .unwrap()
            .signaling);
    }

    #[test]
    fn detector_rejects_bad_arguments() {
        let id = Unitary::identity(qubits(&["a", "b"]));
        assert!(detect_signaling(&id, &["z"], &["b"], DetectMode::Exact).is_err());
        assert!(detect_signaling::<&str>(&id, &[], &["b"], DetectMode::Exact).is_err());
        assert!(detect_signaling(&id, &["a"], &["b"], DetectMode::Sampled { probes: 0, seed: 0 }).is_err());
    }

    #[test]
    fn simulation_leaves_spectator_untouched() {
        let mut rng = stream_rng(4, 0);
        let c = NoCommCircuit::random(NoCommDims::qubits_2_2(), Capacity::default(), &mut rng).unwrap();
        let reg = TensorRegister::from_dims(&[(B, 4), (N, 4), (R, 4)]).unwrap();
        let psi = haar_random_pure_with(reg, Capacity::default(), &mut rng).unwrap();
        let out = simulate_fig3(&c, &psi).unwrap();
        let labels: Vec<&str> = out.register().labels().collect();
        assert_eq!(labels, vec![B_OUT, N_OUT, R_OUT, R]);
        let before = psi.reduced(&[R]).unwrap();
        let after = out.reduced(&[R]).unwrap();
        assert!(crate::state::max_abs_diff(before.matrix(), after.matrix()) < 1e-12);
    }

    #[test]
    fn product_initial_state_stays_uncorrelated() {
        let mut rng = stream_rng(5, 0);
        let c = NoCommCircuit::random(NoCommDims::qubits_2_2(), Capacity::default(), &mut rng).unwrap();
        let bn = haar_random_pure_with(
            TensorRegister::from_dims(&[(B, 4), (N, 4)]).unwrap(),
            Capacity::default(),
            &mut rng,
        )
        .unwrap();
        let r = PureState::basis(TensorRegister::from_dims(&[(R, 4)]).unwrap(), 2).unwrap();
        let out = simulate_fig3(&c, &bn.tensor(&r).unwrap()).unwrap();
        let mi = mutual_information(&out, &[N_OUT, R_OUT], &[R]).unwrap();
        assert!(mi.abs() < 1e-10);
    }

    #[test]
    fn simulation_checks_register() {
        let mut rng = stream_rng(5, 0);
        let c = NoCommCircuit::random(NoCommDims::qubits_2_2(), Capacity::default(), &mut rng).unwrap();
        let wrong = PureState::basis(TensorRegister::from_dims(&[(B, 2), (N, 4)]).unwrap(), 0).unwrap();
        assert!(simulate_fig3(&c, &wrong).is_err());
        let missing = PureState::basis(TensorRegister::from_dims(&[(B, 4)]).unwrap(), 0).unwrap();
        assert!(simulate_fig3(&c, &missing).is_err());
    }

    #[test]
    fn inequality_checks_hold_on_small_runs() {
        let r = verify_eq2(20, Eq2Shape::default(), 3, Capacity::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.samples, 20);
        let r = verify_eq6(20, Eq6Shape::default(), 3, Capacity::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        let with_matter = Eq6Shape {
            circuit: NoCommDims {
                infall: 2,
                ancilla: 1,
                ..NoCommDims::qubits_2_2()
            },
            r: 4,
        };
        let r = verify_eq6(10, with_matter, 3, Capacity::default()).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn verification_is_deterministic() {
        let a = verify_eq6(8, Eq6Shape::default(), 11, Capacity::default()).unwrap();
        let b = verify_eq6(8, Eq6Shape::default(), 11, Capacity::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn swap_breaks_the_local_inequality() {
        let c = swap_counterexample().unwrap();
        assert!(c.s_n_r.abs() < 1e-12);
        assert!((c.s_rout_r - 2.0 * 2f64.ln()).abs() < 1e-9);
        assert!((c.margin + 2.0 * 2f64.ln()).abs() < 1e-9);
        assert!(c.verdict.signaling);
    }

    #[test]
    fn eq2_capacity_enforced() {
        let big = Eq2Shape {
            b: 64,
            n: 64,
            r: 4,
            b_out: 64,
            n_out: 16,
            r_out: 4,
        };
        assert!(verify_eq2(1, big, 0, Capacity::default()).is_err());
    }
}
