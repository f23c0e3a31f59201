//! Vacuum entanglement of a one-dimensional harmonic chain.
//!
//! `H = Σ p_i²/(2m) + ½ xᵀ V x` with `V = m ω₀² I + κ L`, where `L` is the
//! chain Laplacian. Open chains are pinned to fixed walls at both ends, so
//! their `V` is positive definite even at `ω₀ = 0`; periodic chains need
//! `ω₀ > 0`. The ground state is Gaussian with no position–momentum
//! correlations, so every reduced state is fixed by its position and
//! momentum blocks.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::format::{round_sig12, sig12};

/// Symplectic eigenvalues below `½ - UNCERTAINTY_TOL` signal a broken covariance.
pub const UNCERTAINTY_TOL: f64 = 1e-10;
/// Mutual information at or below this is numerical noise for fitting.
pub const MI_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    Open,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicChain {
    pub n_sites: usize,
    pub mass: f64,
    pub self_freq: f64,
    pub coupling: f64,
    pub boundary: Boundary,
}

impl HarmonicChain {
    /// Open chain with unit mass and coupling and `ω₀ = 1`.
    pub fn unit(n_sites: usize) -> Self {
        HarmonicChain {
            n_sites,
            mass: 1.0,
            self_freq: 1.0,
            coupling: 1.0,
            boundary: Boundary::Open,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 {
            return arg(format!("a chain needs at least 2 sites, got {}", self.n_sites));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return arg(format!("mass must be positive, got {}", self.mass));
        }
        if !(self.self_freq >= 0.0 && self.self_freq.is_finite()) {
            return arg(format!("self_freq must be non-negative, got {}", self.self_freq));
        }
        // zero coupling is the uncoupled limit
        if !(self.coupling >= 0.0 && self.coupling.is_finite()) {
            return arg(format!("coupling must be non-negative, got {}", self.coupling));
        }
        Ok(())
    }

    /// Potential matrix `V`.
    pub fn dynamical_matrix(&self) -> DMatrix<f64> {
        let n = self.n_sites;
        let k = self.coupling;
        let mut v = DMatrix::from_diagonal_element(n, n, self.mass * self.self_freq * self.self_freq);
        for i in 0..n {
            v[(i, i)] += 2.0 * k;
            if i + 1 < n {
                v[(i, i + 1)] -= k;
                v[(i + 1, i)] -= k;
            }
        }
        if self.boundary == Boundary::Periodic {
            if n == 2 {
                // the wrap-around bond doubles the single bond
                v[(0, 1)] -= k;
                v[(1, 0)] -= k;
            } else {
                v[(0, n - 1)] -= k;
                v[(n - 1, 0)] -= k;
            }
        }
        v
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeCovariance {
    pub chain: HarmonicChain,
    /// `⟨x_i x_j⟩`.
    pub position_block: DMatrix<f64>,
    /// `⟨p_i p_j⟩`.
    pub momentum_block: DMatrix<f64>,
}

/// `f` applied to the eigenvalues of a symmetric matrix.
fn spectral_map(eig: &SymmetricEigen<f64, nalgebra::Dyn>, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(f));
    let m = &eig.eigenvectors * d * eig.eigenvectors.transpose();
    (&m + m.transpose()) * 0.5
}

/// Vacuum covariances `X = Ω⁻¹/(2m)` and `P = mΩ/2` with `Ω = (V/m)^{1/2}`.
pub fn ground_state_covariance(chain: &HarmonicChain) -> Result<LatticeCovariance> {
    chain.validate()?;
    let v = chain.dynamical_matrix() / chain.mass;
    let eig = SymmetricEigen::new(v);
    let max = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let min = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if min.is_nan() || min <= 1e-12 * max.max(1.0) {
        return Err(Error::Regulator {
            self_freq: chain.self_freq,
            detail: format!(
                "dynamical matrix is singular (smallest eigenvalue {min:e}); a periodic or uncoupled chain needs self_freq > 0"
            ),
        });
    }
    let m = chain.mass;
    Ok(LatticeCovariance {
        chain: *chain,
        position_block: spectral_map(&eig, |w2| 0.5 / (m * w2.sqrt())),
        momentum_block: spectral_map(&eig, |w2| 0.5 * m * w2.sqrt()),
    })
}

fn check_sites(n: usize, sites: &[usize]) -> Result<()> {
    if sites.is_empty() {
        return arg("a block needs at least one site");
    }
    let mut seen = vec![false; n];
    for &s in sites {
        if s >= n {
            return arg(format!("site {s} is outside a chain of {n} sites"));
        }
        if seen[s] {
            return arg(format!("site {s} is listed twice"));
        }
        seen[s] = true;
    }
    Ok(())
}

fn sub_block(m: &DMatrix<f64>, sites: &[usize]) -> DMatrix<f64> {
    DMatrix::from_fn(sites.len(), sites.len(), |i, j| m[(sites[i], sites[j])])
}

impl LatticeCovariance {
    /// Symplectic eigenvalues of the reduced state on `sites`:
    /// `ν = sqrt(eig(X_A^{1/2} P_A X_A^{1/2}))`, ascending.
    pub fn symplectic_eigenvalues(&self, sites: &[usize]) -> Result<Vec<f64>> {
        check_sites(self.chain.n_sites, sites)?;
        let xa = sub_block(&self.position_block, sites);
        let pa = sub_block(&self.momentum_block, sites);
        let x_half = spectral_map(&SymmetricEigen::new(xa), |x| x.max(0.0).sqrt());
        let mut m = &x_half * pa * &x_half;
        m = (&m + m.transpose()) * 0.5;
        let mut nu: Vec<f64> = SymmetricEigen::new(m)
            .eigenvalues
            .iter()
            .map(|&e| e.max(0.0).sqrt())
            .collect();
        nu.sort_by(f64::total_cmp);
        for v in nu.iter_mut() {
            if *v < 0.5 - UNCERTAINTY_TOL {
                return Err(Error::Uncertainty { nu: *v });
            }
            *v = v.max(0.5);
        }
        Ok(nu)
    }
}

fn mode_entropy(nu: f64) -> f64 {
    let plus = nu + 0.5;
    let minus = nu - 0.5;
    let tail = if minus > 0.0 { minus * minus.ln() } else { 0.0 };
    plus * plus.ln() - tail
}

pub fn block_entropy(cov: &LatticeCovariance, sites: &[usize]) -> Result<f64> {
    Ok(cov
        .symplectic_eigenvalues(sites)?
        .into_iter()
        .map(mode_entropy)
        .sum::<f64>()
        .max(0.0))
}

/// `S(A) + S(B) - S(A ∪ B)` for disjoint site sets.
pub fn cross_block_mutual_information(cov: &LatticeCovariance, a: &[usize], b: &[usize]) -> Result<f64> {
    if a.iter().any(|s| b.contains(s)) {
        return arg("blocks must be disjoint");
    }
    let ab: Vec<usize> = a.iter().chain(b).copied().collect();
    let sa = block_entropy(cov, a)?;
    let sb = block_entropy(cov, b)?;
    let sab = block_entropy(cov, &ab)?;
    Ok((sa + sb - sab).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayPoint {
    pub d: usize,
    pub mutual_information: f64,
}

/// Two blocks of `block_size` sites separated by `d` traced-out sites,
/// centered on the chain, for `d = 0..=d_max`.
pub fn entanglement_vs_separation(chain: &HarmonicChain, block_size: usize, d_max: usize) -> Result<Vec<DecayPoint>> {
    chain.validate()?;
    if block_size == 0 {
        return arg("block_size must be at least 1");
    }
    if 2 * block_size + d_max > chain.n_sites {
        return arg(format!(
            "two blocks of {block_size} with up to {d_max} sites between them do not fit in {} sites",
            chain.n_sites
        ));
    }
    let cov = ground_state_covariance(chain)?;
    (0..=d_max)
        .map(|d| {
            let start = (chain.n_sites - (2 * block_size + d)) / 2;
            let a: Vec<usize> = (start..start + block_size).collect();
            let b0 = start + block_size + d;
            let b: Vec<usize> = (b0..b0 + block_size).collect();
            Ok(DecayPoint {
                d,
                mutual_information: cross_block_mutual_information(&cov, &a, &b)?,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecayFit {
    /// Per-site decay rate, minus the slope of `ln(mi)` against `d`.
    pub rate: f64,
    pub r_squared: f64,
    pub floor: f64,
    pub points_used: usize,
}

/// Least-squares fit of `ln(mi)` against `d` over points above [`MI_FLOOR`].
pub fn fit_decay(series: &[DecayPoint]) -> Result<DecayFit> {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|p| p.mutual_information > MI_FLOOR)
        .map(|p| (p.d as f64, p.mutual_information.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::InsufficientData {
            usable: pts.len(),
            needed: 3,
        });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return arg("fit needs at least two distinct separations");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let r_squared = if syy == 0.0 { 1.0 } else { 1.0 - ss_res / syy };
    Ok(DecayFit {
        rate: -slope,
        r_squared,
        floor: MI_FLOOR,
        points_used: pts.len(),
    })
}

impl DecayFit {
    /// Same fit with every number rounded to 12 significant digits.
    pub fn rounded(&self) -> DecayFit {
        DecayFit {
            rate: round_sig12(self.rate),
            r_squared: round_sig12(self.r_squared),
            floor: self.floor,
            points_used: self.points_used,
        }
    }
}

/// `d,mutual_information_qunats` rows.
pub fn decay_csv(series: &[DecayPoint]) -> String {
    let mut out = String::from("d,mutual_information_qunats\n");
    for p in series {
        out.push_str(&format!("{},{}\n", p.d, sig12(p.mutual_information)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uncoupled(n: usize) -> HarmonicChain {
        HarmonicChain {
            coupling: 0.0,
            ..HarmonicChain::unit(n)
        }
    }

    #[test]
    fn uncoupled_vacuum_is_a_product() {
        let cov = ground_state_covariance(&uncoupled(6)).unwrap();
        for i in 0..6 {
            for j in 0..6 {
                if i != j {
                    assert!(cov.position_block[(i, j)].abs() < 1e-14);
                    assert!(cov.momentum_block[(i, j)].abs() < 1e-14);
                }
            }
            let nu = cov.symplectic_eigenvalues(&[i]).unwrap();
            assert!((nu[0] - 0.5).abs() < 1e-12);
        }
        assert!(block_entropy(&cov, &[1, 2, 3]).unwrap() < 1e-10);
        assert!(cross_block_mutual_information(&cov, &[0], &[1]).unwrap() < 1e-10);
    }

    #[test]
    fn two_site_closed_form() {
        let (m, w0, k) = (1.0, 1.0, 1.0);
        let chain = HarmonicChain {
            n_sites: 2,
            mass: m,
            self_freq: w0,
            coupling: k,
            boundary: Boundary::Open,
        };
        let cov = ground_state_covariance(&chain).unwrap();
        // with walls: V = [[mω₀²+2κ, -κ], [-κ, mω₀²+2κ]]
        let wp = ((m * w0 * w0 + k) / m).sqrt();
        let wm = ((m * w0 * w0 + 3.0 * k) / m).sqrt();
        let x12 = (1.0 / wp - 1.0 / wm) / (4.0 * m);
        let x11 = (1.0 / wp + 1.0 / wm) / (4.0 * m);
        assert!((cov.position_block[(0, 1)] - x12).abs() < 1e-13);
        assert!((cov.position_block[(0, 0)] - x11).abs() < 1e-13);
        assert!(x12 > 0.0);
    }

    #[test]
    fn whole_chain_is_pure_and_complements_agree() {
        let cov = ground_state_covariance(&HarmonicChain::unit(16)).unwrap();
        let all: Vec<usize> = (0..16).collect();
        assert!(block_entropy(&cov, &all).unwrap() < 1e-9);
        let a: Vec<usize> = (0..5).collect();
        let rest: Vec<usize> = (5..16).collect();
        let sa = block_entropy(&cov, &a).unwrap();
        assert!(sa > 0.0);
        assert!((sa - block_entropy(&cov, &rest).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn periodic_chain_is_circulant() {
        let chain = HarmonicChain {
            boundary: Boundary::Periodic,
            ..HarmonicChain::unit(64)
        };
        let cov = ground_state_covariance(&chain).unwrap();
        for i in 0..64 {
            for j in 0..64 {
                let shifted = cov.position_block[((i + 1) % 64, (j + 1) % 64)];
                assert!((cov.position_block[(i, j)] - shifted).abs() < 1e-12);
            }
        }
        let s0 = block_entropy(&cov, &[0]).unwrap();
        let s17 = block_entropy(&cov, &[17]).unwrap();
        assert!((s0 - s17).abs() < 1e-9);
    }

    #[test]
    fn regulator_required_for_periodic_chain() {
        let chain = HarmonicChain {
            self_freq: 0.0,
            boundary: Boundary::Periodic,
            ..HarmonicChain::unit(8)
        };
        assert!(matches!(
            ground_state_covariance(&chain),
            Err(Error::Regulator { .. })
        ));
        let open = HarmonicChain {
            self_freq: 0.0,
            ..HarmonicChain::unit(8)
        };
        assert!(ground_state_covariance(&open).is_ok());
        let dead = HarmonicChain {
            self_freq: 0.0,
            ..uncoupled(4)
        };
        assert!(ground_state_covariance(&dead).is_err());
    }

    #[test]
    fn invalid_chains_rejected() {
        assert!(HarmonicChain::unit(1).validate().is_err());
        assert!(HarmonicChain { mass: 0.0, ..HarmonicChain::unit(4) }.validate().is_err());
        assert!(HarmonicChain { coupling: -1.0, ..HarmonicChain::unit(4) }.validate().is_err());
    }

    #[test]
    fn broken_covariance_is_detected() {
        let mut cov = ground_state_covariance(&HarmonicChain::unit(4)).unwrap();
        cov.momentum_block *= 0.25;
        assert!(matches!(
            cov.symplectic_eigenvalues(&[0]),
            Err(Error::Uncertainty { .. })
        ));
    }

    #[test]
    fn site_validation() {
        let cov = ground_state_covariance(&HarmonicChain::unit(4)).unwrap();
        assert!(block_entropy(&cov, &[]).is_err());
        assert!(block_entropy(&cov, &[4]).is_err());
        assert!(block_entropy(&cov, &[1, 1]).is_err());
        assert!(cross_block_mutual_information(&cov, &[0, 1], &[1]).is_err());
    }

    #[test]
    fn decay_collapses_after_one_site() {
        let series = entanglement_vs_separation(&HarmonicChain::unit(60), 1, 8).unwrap();
        assert!(series[0].mutual_information > 0.0);
        assert!(series[1].mutual_information / series[0].mutual_information < 0.5);
        for w in series[1..].windows(2) {
            assert!(w[1].mutual_information < w[0].mutual_information);
        }
        let fit = fit_decay(&series[1..]).unwrap();
        assert!(fit.r_squared > 0.9);
        assert!(fit.rate > 0.0);
    }

    #[test]
    fn opposite_ends_are_nearly_uncorrelated() {
        let cov = ground_state_covariance(&HarmonicChain::unit(40)).unwrap();
        let adjacent = cross_block_mutual_information(&cov, &[19], &[20]).unwrap();
        let far = cross_block_mutual_information(&cov, &[0, 1], &[38, 39]).unwrap();
        assert!(far < 1e-6 * adjacent);
    }

    #[test]
    fn geometry_checked() {
        assert!(entanglement_vs_separation(&HarmonicChain::unit(10), 3, 5).is_err());
        assert!(entanglement_vs_separation(&HarmonicChain::unit(10), 0, 2).is_err());
        let zero = entanglement_vs_separation(&uncoupled(12), 2, 4).unwrap();
        assert!(zero.iter().all(|p| p.mutual_information < 1e-10));
    }

    #[test]
    fn synthetic_fit_is_exact() {
        let series: Vec<DecayPoint> = (0..8)
            .map(|d| DecayPoint {
                d,
                mutual_information: (-2.0 * d as f64).exp(),
            })
            .collect();
        let fit = fit_decay(&series).unwrap();
        assert!((fit.rate - 2.0).abs() < 1e-9);
        assert!((fit.r_squared - 1.0).abs() < 1e-12);
        assert_eq!(fit.points_used, 8);

        let zeros: Vec<DecayPoint> = (0..5).map(|d| DecayPoint { d, mutual_information: 0.0 }).collect();
        assert!(matches!(fit_decay(&zeros), Err(Error::InsufficientData { .. })));
    }

    #[test]
    fn csv_has_header() {
        let csv = decay_csv(&[DecayPoint { d: 0, mutual_information: 0.5 }]);
        assert_eq!(csv, "d,mutual_information_qunats\n0,0.5\n");
    }
}
