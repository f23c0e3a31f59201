//! Contradiction conditions of the two firewall theorems and their variants,
//! evaluated over an evaporation history.
//!
//! Each report compares a capacity-like quantity (`lhs`) with a demanded
//! quantity (`rhs`) and folds the comparison into a signed `margin`. The
//! report is contradictory when the margin breaks the report's
//! [`Requirement`]. Qualitative relations are made quantitative with a
//! single dominance threshold θ: `x ≫ y` holds when `y ≤ θ·x`, and `x ≈ y`
//! holds when `|x - y| ≤ θ·|y|`.

use serde::{Deserialize, Serialize};

use crate::error::{arg, Result};
use crate::format::{round_sig12, sig12};
use crate::page_curve::{mutual_information_unchecked, page_times_unchecked};

pub const DEFAULT_THETA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "T1")]
    T1,
    #[serde(rename = "T2")]
    T2,
    #[serde(rename = "T1-holographic")]
    T1Holographic,
    #[serde(rename = "T1-matter")]
    T1Matter,
    #[serde(rename = "T2-matter")]
    T2Matter,
    #[serde(rename = "pagetime-minimal")]
    PagetimeMinimal,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::T1Holographic,
        Theorem::T1Matter,
        Theorem::T2Matter,
        Theorem::PagetimeMinimal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T1Holographic => "T1-holographic",
            Theorem::T1Matter => "T1-matter",
            Theorem::T2Matter => "T2-matter",
            Theorem::PagetimeMinimal => "pagetime-minimal",
        }
    }

    /// Case-insensitive parse of the names above (`t1`, `t2-matter`, ...).
    pub fn parse(s: &str) -> Option<Theorem> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
    }

    /// Whether the report depends on the radiated amount.
    pub fn is_running(self) -> bool {
        matches!(self, Theorem::T1 | Theorem::T2 | Theorem::T1Holographic)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Assumption {
    #[serde(rename = "1.a")]
    UnitaryCompleteEvaporation,
    #[serde(rename = "1.b(i)")]
    ExteriorEquanimity,
    #[serde(rename = "1.b(ii)")]
    InteriorEquanimity,
    #[serde(rename = "1.c")]
    BekensteinHawkingInterior,
    #[serde(rename = "2.a")]
    UnitaryCompleteEvaporation2,
    #[serde(rename = "2.b")]
    LocalPhysics,
    #[serde(rename = "2.c")]
    ClassicalExterior,
}

impl Assumption {
    pub fn tag(self) -> &'static str {
        match self {
            Assumption::UnitaryCompleteEvaporation => "1.a",
            Assumption::ExteriorEquanimity => "1.b(i)",
            Assumption::InteriorEquanimity => "1.b(ii)",
            Assumption::BekensteinHawkingInterior => "1.c",
            Assumption::UnitaryCompleteEvaporation2 => "2.a",
            Assumption::LocalPhysics => "2.b",
            Assumption::ClassicalExterior => "2.c",
        }
    }
}

use Assumption::*;

const THEOREM1: &[Assumption] = &[
    UnitaryCompleteEvaporation,
    ExteriorEquanimity,
    InteriorEquanimity,
    BekensteinHawkingInterior,
];
const THEOREM2: &[Assumption] = &[UnitaryCompleteEvaporation2, LocalPhysics, ClassicalExterior];
const HOLOGRAPHIC: &[Assumption] = &[
    UnitaryCompleteEvaporation,
    ExteriorEquanimity,
    InteriorEquanimity,
];

/// Dominance threshold θ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Dominance {
    pub theta: f64,
}

impl Default for Dominance {
    fn default() -> Self {
        Dominance {
            theta: DEFAULT_THETA,
        }
    }
}

impl Dominance {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0 && theta < 1.0) {
            return arg(format!("theta must lie in (0, 1), got {theta}"));
        }
        Ok(Dominance { theta })
    }

    /// `x ≫ y`.
    pub fn much_greater(&self, x: f64, y: f64) -> bool {
        y <= self.theta * x
    }

    /// `x ≈ y` within a factor `1 ± θ` of `y`.
    pub fn approx_equal(&self, x: f64, y: f64) -> bool {
        (x - y).abs() <= self.theta * y.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtmosphereParams {
    /// Neighborhood area in units of the horizon area.
    pub mu: f64,
    pub s_bh: f64,
}

impl AtmosphereParams {
    pub fn new(mu: f64, s_bh: f64) -> Result<Self> {
        if !(mu > 0.0 && mu.is_finite()) {
            return arg(format!("mu must be positive, got {mu}"));
        }
        if !(s_bh > 0.0 && s_bh.is_finite()) {
            return arg(format!("s_bh must be positive, got {s_bh}"));
        }
        Ok(AtmosphereParams { mu, s_bh })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThooftBound {
    /// `2√2 (μ³/S_BH)^{1/4}`.
    pub prefactor: f64,
    /// `A_N^{3/4} = prefactor · S_BH`, with `A_N = 4 μ S_BH`.
    pub bound: f64,
}

/// Largest thermodynamic entropy ordinary (non-collapsing) matter can hold in
/// a neighborhood of area `4 μ S_BH`.
pub fn thooft_bound(a: &AtmosphereParams) -> ThooftBound {
    // (μ³/S)^{1/4} computed in log space; μ³ and S may be astronomically large.
    let quarter = 0.25 * (3.0 * a.mu.ln() - a.s_bh.ln());
    let prefactor = 2.0 * std::f64::consts::SQRT_2 * quarter.exp();
    ThooftBound {
        prefactor,
        bound: prefactor * a.s_bh,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TheoremParams {
    pub s_bh: f64,
    pub s_matter: f64,
    pub mu: f64,
    pub epsilon: f64,
    pub eta: f64,
    /// Interior log-dimension; `None` means the remaining Bekenstein–Hawking
    /// entropy at the evaluation point.
    pub log_dim_b: Option<f64>,
    pub theta: f64,
    /// Adds `√(4 μ s_bh)` to every atmosphere ceiling.
    pub stretched_horizon: bool,
}

impl Default for TheoremParams {
    fn default() -> Self {
        TheoremParams {
            s_bh: 100.0,
            s_matter: 0.0,
            mu: 1e4,
            epsilon: 0.05,
            eta: 0.05,
            log_dim_b: None,
            theta: DEFAULT_THETA,
            stretched_horizon: false,
        }
    }
}

impl TheoremParams {
    pub fn with_s_bh(s_bh: f64) -> Self {
        TheoremParams {
            s_bh,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.s_bh > 0.0 && self.s_bh.is_finite()) {
            return arg(format!("s_bh must be positive, got {}", self.s_bh));
        }
        if !(self.s_matter >= 0.0 && self.s_matter <= self.s_bh) {
            return arg(format!(
                "s_matter must lie in [0, s_bh], got {}",
                self.s_matter
            ));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return arg(format!("mu must be positive, got {}", self.mu));
        }
        if !(0.0..1.0).contains(&self.epsilon) {
            return arg(format!("epsilon must lie in [0, 1), got {}", self.epsilon));
        }
        if !(0.0..1.0).contains(&self.eta) {
            return arg(format!("eta must lie in [0, 1), got {}", self.eta));
        }
        if let Some(b) = self.log_dim_b {
            if !(b >= 0.0 && b.is_finite()) {
                return arg(format!("log_dim_b must be non-negative, got {b}"));
            }
        }
        Dominance::new(self.theta)?;
        Ok(())
    }

    pub fn dominance(&self) -> Dominance {
        Dominance { theta: self.theta }
    }

    fn check_r(&self, r: f64) -> Result<()> {
        self.validate()?;
        if !(r >= 0.0 && r <= self.s_bh) {
            return arg(format!("r must lie in [0, s_bh], got {r}"));
        }
        Ok(())
    }

    /// `S(R':R)` from the analytic Page-curve model.
    pub fn radiation_mi(&self, r: f64) -> f64 {
        mutual_information_unchecked(self.s_bh, self.s_matter, r)
    }

    fn allowance(&self) -> f64 {
        if self.stretched_horizon {
            (4.0 * self.mu * self.s_bh).sqrt()
        } else {
            0.0
        }
    }

    /// Last radiated amount at which the black hole is still far above the
    /// Planck scale.
    pub fn sweep_end(&self) -> f64 {
        (1.0 - 0.5 * self.epsilon) * self.s_bh
    }
}

/// Direction of the inequality the assumptions demand of `margin`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Requirement {
    /// `margin ≥ 0`; contradictory when `margin < 0`.
    NonNegative,
    /// `margin > 0`; contradictory when `margin ≤ 0` (saturation counts).
    Positive,
}

impl Requirement {
    pub fn violated_by(self, margin: f64) -> bool {
        match self {
            Requirement::NonNegative => margin < 0.0,
            Requirement::Positive => margin <= 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParadoxReport {
    pub theorem: Theorem,
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub requirement: Requirement,
    pub contradiction: bool,
    /// Assumptions any one of which, if rejected, removes the contradiction.
    /// Empty when there is no contradiction.
    pub violated_assumption_options: Vec<Assumption>,
    pub note: Option<String>,
}

impl ParadoxReport {
    fn build(
        theorem: Theorem,
        r: f64,
        lhs: f64,
        rhs: f64,
        margin: f64,
        requirement: Requirement,
        assumptions: &[Assumption],
    ) -> Self {
        let contradiction = requirement.violated_by(margin);
        ParadoxReport {
            theorem,
            r,
            lhs,
            rhs,
            margin,
            requirement,
            contradiction,
            violated_assumption_options: if contradiction {
                assumptions.to_vec()
            } else {
                Vec::new()
            },
            note: None,
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Slack of the "interior log-dimension ≈ remaining area" assumption:
/// negative while it holds.
fn interior_dimension_slack(log_dim_b: f64, expected: f64, theta: f64) -> f64 {
    (log_dim_b - expected).abs() - theta * expected
}

/// Interior saturation after `r` qunats.
///
/// The radiation-correlated interior entropy `½S(B:R)` must be at least
/// `½S(R':R)`. The report is contradictory once that demand fills the
/// interior (`lhs = log|B|`, `rhs = ½S(R':R)`, `margin = lhs - rhs ≤ 0`),
/// unless the chosen `log|B|` departs from the remaining area by more than
/// θ, in which case 1.c is rejected and the margin is that departure.
pub fn theorem1_report(p: &TheoremParams, r: f64) -> Result<ParadoxReport> {
    p.check_r(r)?;
    let remaining = p.s_bh - r;
    let capacity = p.log_dim_b.unwrap_or(remaining);
    let required = 0.5 * p.radiation_mi(r);
    let saturation = capacity - required;
    let slack_1c = interior_dimension_slack(capacity, remaining, p.theta);
    let margin = saturation.max(slack_1c);
    let report = ParadoxReport::build(
        Theorem::T1,
        r,
        capacity,
        required,
        margin,
        Requirement::Positive,
        THEOREM1,
    );
    Ok(if saturation <= 0.0 && slack_1c > 0.0 {
        report.with_note("interior saturated only because log|B| departs from the remaining area: 1.c rejected")
    } else if report.contradiction {
        report.with_note("interior filled with half of a maximally entangled state")
    } else {
        report
    })
}

/// Exterior correlations after `r` qunats under local dynamics.
///
/// `S(N:R) ≥ S(R':R)` must stay under the non-exotic ceiling `η S_BH`
/// (`lhs`), plus the stretched-horizon allowance when enabled.
pub fn theorem2_report(p: &TheoremParams, r: f64) -> Result<ParadoxReport> {
    p.check_r(r)?;
    let ceiling = p.eta * p.s_bh + p.allowance();
    let required = p.radiation_mi(r);
    Ok(ParadoxReport::build(
        Theorem::T2,
        r,
        ceiling,
        required,
        ceiling - required,
        Requirement::NonNegative,
        THEOREM2,
    ))
}

/// The late-stage form of Theorem 2 with infallen matter: early radiation up
/// to a Page time against radiation down to a remnant of `ε/2` of the area,
/// `S(R':R) = (1-ε) S_BH - S_matter ≤ S(N:R) ≤ η S_BH`. Dividing the margin
/// by `S_BH` gives `ε + η - (1 - S_matter/S_BH)`.
pub fn theorem2_matter_report(p: &TheoremParams) -> Result<ParadoxReport> {
    p.validate()?;
    let ceiling = p.eta * p.s_bh + p.allowance();
    let required = (1.0 - p.epsilon) * p.s_bh - p.s_matter;
    let report = ParadoxReport::build(
        Theorem::T2Matter,
        p.sweep_end(),
        ceiling,
        required,
        ceiling - required,
        Requirement::NonNegative,
        THEOREM2,
    );
    Ok(if !report.contradiction && p.s_matter > 0.0 {
        report.with_note("infallen matter carries almost all of the original entropy")
    } else {
        report
    })
}

/// Theorem 1 with infallen matter, pinned at the initial Page time: the
/// interior must satisfy `log|B| ≫ ½(S_BH + S_matter)` while 1.c sets the
/// two nearly equal.
pub fn theorem1_matter_report(p: &TheoremParams) -> Result<ParadoxReport> {
    p.validate()?;
    let r = page_times_unchecked(p.s_bh, p.s_matter).initial;
    let remaining = p.s_bh - r;
    let capacity = p.log_dim_b.unwrap_or(remaining);
    let required = 0.5 * (p.s_bh + p.s_matter);
    let dominance = p.theta * capacity - required;
    let slack_1c = interior_dimension_slack(capacity, remaining, p.theta);
    let report = ParadoxReport::build(
        Theorem::T1Matter,
        r,
        capacity,
        required,
        dominance.max(slack_1c),
        Requirement::NonNegative,
        THEOREM1,
    );
    Ok(if dominance < 0.0 && slack_1c >= 0.0 {
        report.with_note("log|B| is not close to the remaining area: 1.c rejected")
    } else {
        report
    })
}

/// Holographic variant without 1.c: the minimal area enclosing `½S(B:R)` is
/// `A_min = 4·½S(B:R)` and must lie well within the horizon,
/// `log|R'| ≫ ¼A_min`. `lhs = log|R'|`, `rhs = ¼A_min`, `margin = θ·lhs - rhs`.
pub fn holographic_variant(p: &TheoremParams, r: f64) -> Result<ParadoxReport> {
    p.check_r(r)?;
    let remaining = p.s_bh - r;
    let a_min = 4.0 * 0.5 * p.radiation_mi(r);
    let quarter_area = 0.25 * a_min;
    Ok(ParadoxReport::build(
        Theorem::T1Holographic,
        r,
        remaining,
        quarter_area,
        p.theta * remaining - quarter_area,
        Requirement::NonNegative,
        HOLOGRAPHIC,
    ))
}

/// Onset argument at the Page time: `½S(B,N:R) = ½S_BH`, of which at most the
/// atmosphere ceiling of the Page-time hole can sit outside. The rest must
/// fit in an interior of capacity `½S_BH`; the report is contradictory when it
/// fills that capacity to within θ (`margin = (1-θ)·lhs - rhs`).
pub fn pagetime_minimal_report(p: &TheoremParams) -> Result<ParadoxReport> {
    p.validate()?;
    let capacity = 0.5 * p.s_bh;
    let ceiling = thooft_bound(&AtmosphereParams::new(p.mu, capacity)?).bound + p.allowance();
    let required = (capacity - ceiling).max(0.0);
    let report = ParadoxReport::build(
        Theorem::PagetimeMinimal,
        capacity,
        capacity,
        required,
        (1.0 - p.theta) * capacity - required,
        Requirement::NonNegative,
        THEOREM1,
    );
    Ok(if ceiling >= capacity {
        report.with_note("outside large-black-hole regime: atmosphere ceiling exceeds half the entropy")
    } else {
        report
    })
}

/// Evaluates any theorem; running theorems need `r`, the others ignore it.
pub fn report(p: &TheoremParams, theorem: Theorem, r: f64) -> Result<ParadoxReport> {
    match theorem {
        Theorem::T1 => theorem1_report(p, r),
        Theorem::T2 => theorem2_report(p, r),
        Theorem::T1Holographic => holographic_variant(p, r),
        Theorem::T1Matter => theorem1_matter_report(p),
        Theorem::T2Matter => theorem2_matter_report(p),
        Theorem::PagetimeMinimal => pagetime_minimal_report(p),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub theorem: Theorem,
    pub params: TheoremParams,
    pub points: Vec<ParadoxReport>,
    pub onset_r: Option<f64>,
    /// Closed-form onset, when one exists for these parameters.
    pub predicted_onset_r: Option<f64>,
    /// Whether the grid onset brackets the prediction.
    pub onset_consistent: bool,
}

/// Grid `r_k = k·s_bh/steps`, cut off past `(1 - ε/2)·s_bh`.
pub fn sweep_grid(p: &TheoremParams, steps: usize) -> Vec<f64> {
    let end = p.sweep_end();
    (0..=steps)
        .map(|k| p.s_bh * k as f64 / steps as f64)
        .take_while(|&r| r <= end * (1.0 + 1e-12))
        .collect()
}

/// Sweeps a running theorem across the evaporation history.
pub fn evaporation_sweep(p: &TheoremParams, theorem: Theorem, steps: usize) -> Result<Sweep> {
    p.validate()?;
    if !theorem.is_running() {
        return arg(format!("{} is evaluated at a single point, not swept", theorem.name()));
    }
    if steps < 2 {
        return arg("steps must be at least 2");
    }
    let grid = sweep_grid(p, steps);
    let points: Vec<ParadoxReport> = grid
        .iter()
        .map(|&r| report(p, theorem, r))
        .collect::<Result<_>>()?;
    let onset_idx = points.iter().position(|rep| rep.contradiction);
    let onset_r = onset_idx.map(|i| points[i].r);
    let predicted = predicted_onset(p, theorem);
    let onset_consistent = match (onset_idx, predicted) {
        (Some(i), Some(x)) => {
            let prev = if i == 0 { f64::NEG_INFINITY } else { points[i - 1].r };
            prev <= x && x <= points[i].r
        }
        (None, Some(x)) => x >= *grid.last().expect("grid nonempty"),
        (None, None) => true,
        // no closed form to check against
        (Some(_), None) => p.log_dim_b.is_some(),
    };
    Ok(Sweep {
        theorem,
        params: *p,
        points,
        onset_r,
        predicted_onset_r: predicted,
        onset_consistent,
    })
}

/// Single-point theorems as a one-row sweep; running theorems as a full sweep.
pub fn evaluate(p: &TheoremParams, theorem: Theorem, steps: usize) -> Result<Sweep> {
    if theorem.is_running() {
        return evaporation_sweep(p, theorem, steps);
    }
    let rep = report(p, theorem, 0.0)?;
    let onset_r = rep.contradiction.then_some(rep.r);
    Ok(Sweep {
        theorem,
        params: *p,
        onset_r,
        predicted_onset_r: None,
        onset_consistent: true,
        points: vec![rep],
    })
}

/// First radiated amount at which a running theorem turns contradictory,
/// from the piecewise-linear model. `None` when it never does, or when
/// `log_dim_b` is overridden.
pub fn predicted_onset(p: &TheoremParams, theorem: Theorem) -> Option<f64> {
    let t = page_times_unchecked(p.s_bh, p.s_matter);
    let plateau = p.s_bh - p.s_matter;
    match theorem {
        Theorem::T1 if p.log_dim_b.is_none() => Some(t.final_),
        Theorem::T2 => {
            let ceiling = p.eta * p.s_bh + p.allowance();
            (ceiling < plateau).then_some(0.5 * ceiling)
        }
        Theorem::T1Holographic => {
            if plateau <= 0.0 {
                return None;
            }
            let th = p.theta;
            let rising = th * p.s_bh / (1.0 + th);
            if rising < t.initial {
                return Some(rising);
            }
            let on_plateau = t.initial.max(p.s_bh - plateau / (2.0 * th));
            if on_plateau < t.final_ {
                return Some(on_plateau);
            }
            (t.final_ < p.s_bh).then_some(t.final_)
        }
        _ => None,
    }
}

/// Serialized form: `{theorem, params, theta, points:[...], onset_r}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub theorem: Theorem,
    pub params: TheoremParams,
    pub theta: f64,
    pub points: Vec<PointDocument>,
    pub onset_r: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointDocument {
    pub r: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub contradiction: bool,
    pub assumptions: Vec<Assumption>,
}

impl Sweep {
    /// Schema view with every number rounded to 12 significant digits.
    pub fn document(&self) -> SweepDocument {
        let p = &self.params;
        SweepDocument {
            theorem: self.theorem,
            params: TheoremParams {
                s_bh: round_sig12(p.s_bh),
                s_matter: round_sig12(p.s_matter),
                mu: round_sig12(p.mu),
                epsilon: round_sig12(p.epsilon),
                eta: round_sig12(p.eta),
                log_dim_b: p.log_dim_b.map(round_sig12),
                theta: round_sig12(p.theta),
                stretched_horizon: p.stretched_horizon,
            },
            theta: round_sig12(p.theta),
            points: self
                .points
                .iter()
                .map(|rep| PointDocument {
                    r: round_sig12(rep.r),
                    lhs: round_sig12(rep.lhs),
                    rhs: round_sig12(rep.rhs),
                    margin: round_sig12(rep.margin),
                    contradiction: rep.contradiction,
                    assumptions: rep.violated_assumption_options.clone(),
                })
                .collect(),
            onset_r: self.onset_r.map(round_sig12),
        }
    }

    /// One row per point: `r,lhs,rhs,margin,contradiction,assumptions`.
    pub fn csv(&self) -> String {
        let mut out = String::from("r,lhs,rhs,margin,contradiction,assumptions\n");
        for rep in &self.points {
            let tags: Vec<&str> = rep.violated_assumption_options.iter().map(|a| a.tag()).collect();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                sig12(rep.r),
                sig12(rep.lhs),
                sig12(rep.rhs),
                sig12(rep.margin),
                rep.contradiction,
                tags.join(";")
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1(s_bh: f64) -> TheoremParams {
        TheoremParams::with_s_bh(s_bh)
    }

    #[test]
    fn thooft_prefactor_examples() {
        let b = thooft_bound(&AtmosphereParams::new(1e4, 1e77).unwrap());
        let want = 2.0 * 2f64.sqrt() * (1e12f64 / 1e77).powf(0.25);
        assert!((b.prefactor / want - 1.0).abs() < 1e-12);
        assert!((b.prefactor - 1.59054e-16).abs() < 1e-21);

        let s = 1e9;
        let mu = (s / 64.0f64).cbrt();
        let b = thooft_bound(&AtmosphereParams::new(mu, s).unwrap());
        assert!((b.prefactor - 1.0).abs() < 1e-12);
        assert!((b.bound / s - 1.0).abs() < 1e-12);

        let a = thooft_bound(&AtmosphereParams::new(3.0, 500.0).unwrap());
        let c = thooft_bound(&AtmosphereParams::new(3.0, 8000.0).unwrap());
        assert!((c.prefactor / a.prefactor - 0.5).abs() < 1e-12);
    }

    #[test]
    fn atmosphere_validation() {
        assert!(AtmosphereParams::new(0.0, 1.0).is_err());
        assert!(AtmosphereParams::new(1.0, -1.0).is_err());
    }

    #[test]
    fn theorem1_at_page_time_saturates() {
        let mut p = t1(100.0);
        p.log_dim_b = Some(50.0);
        let rep = theorem1_report(&p, 50.0).unwrap();
        assert_eq!(rep.lhs, 50.0);
        assert_eq!(rep.rhs, 50.0);
        assert!(rep.contradiction);
        assert!(rep.violated_assumption_options.contains(&InteriorEquanimity));
    }

    #[test]
    fn theorem1_consistent_before_page_time() {
        let p = t1(100.0);
        let rep = theorem1_report(&p, 0.0).unwrap();
        assert!(!rep.contradiction);
        assert_eq!(rep.rhs, 0.0);
        let mut p = t1(100.0);
        p.log_dim_b = Some(75.0);
        let rep = theorem1_report(&p, 25.0).unwrap();
        assert_eq!(rep.rhs, 25.0);
        assert!(!rep.contradiction);
        assert!(rep.violated_assumption_options.is_empty());
    }

    #[test]
    fn theorem1_rejects_out_of_range_r() {
        assert!(theorem1_report(&t1(100.0), 101.0).is_err());
        assert!(theorem1_report(&t1(100.0), -1.0).is_err());
    }

    #[test]
    fn theorem1_huge_interior_rejects_1c() {
        let mut p = t1(100.0);
        p.log_dim_b = Some(1e6);
        let rep = theorem1_report(&p, 80.0).unwrap();
        assert!(!rep.contradiction);
    }

    #[test]
    fn theorem2_examples() {
        let p = TheoremParams { epsilon: 0.05, eta: 0.05, ..t1(100.0) };
        let rep = theorem2_matter_report(&p).unwrap();
        assert!(rep.contradiction);
        // 1 ≤ ε + η in units of S_BH
        assert!((rep.margin / p.s_bh - (0.1 - 1.0)).abs() < 1e-12);

        let q = TheoremParams { s_matter: 100.0, ..p };
        assert!(!theorem2_matter_report(&q).unwrap().contradiction);
        for k in 0..=20 {
            assert!(!theorem2_report(&q, 5.0 * k as f64).unwrap().contradiction);
        }

        let early = TheoremParams { eta: 0.01, ..t1(100.0) };
        assert!(!theorem2_report(&early, 0.4).unwrap().contradiction);
        assert!(theorem2_report(&early, 0.6).unwrap().contradiction);
    }

    #[test]
    fn theorem1_matter_examples() {
        let p = TheoremParams { s_matter: 20.0, ..t1(100.0) };
        let rep = theorem1_matter_report(&p).unwrap();
        assert_eq!(rep.r, 40.0);
        assert_eq!(rep.lhs, 60.0);
        assert_eq!(rep.rhs, 60.0);
        assert!(rep.contradiction);

        let big = TheoremParams { log_dim_b: Some(10.0 * 120.0), ..p };
        let rep = theorem1_matter_report(&big).unwrap();
        assert!(!rep.contradiction);
        assert!(rep.note.unwrap().contains("1.c"));
    }

    #[test]
    fn theorem1_matter_reduces_to_theorem1_without_matter() {
        let p = t1(100.0);
        let m = theorem1_matter_report(&p).unwrap();
        let t = theorem1_report(&p, 50.0).unwrap();
        assert_eq!(m.r, t.r);
        assert_eq!((m.lhs, m.rhs), (t.lhs, t.rhs));
        assert_eq!(m.contradiction, t.contradiction);
    }

    #[test]
    fn holographic_examples() {
        let p = t1(100.0);
        let at_pt = holographic_variant(&p, 50.0).unwrap();
        assert_eq!(at_pt.lhs, at_pt.rhs);
        assert!(at_pt.contradiction);
        let start = holographic_variant(&p, 0.0).unwrap();
        assert_eq!(start.rhs, 0.0);
        assert!(!start.contradiction);
        let mid = holographic_variant(&p, 40.0).unwrap();
        assert!(((mid.lhs - mid.rhs) - 20.0).abs() < 1e-12);
        assert!(mid.contradiction);
    }

    #[test]
    fn pagetime_minimal_examples() {
        let p = TheoremParams { mu: 1e4, ..t1(1e77) };
        let rep = pagetime_minimal_report(&p).unwrap();
        assert!(rep.contradiction);
        assert!(rep.rhs / rep.lhs > 1.0 - 1e-15);

        let tiny = TheoremParams { mu: 1e4, ..t1(10.0) };
        let rep = pagetime_minimal_report(&tiny).unwrap();
        assert!(!rep.contradiction);
        assert!(rep.note.unwrap().contains("outside large-black-hole regime"));

        let flat = TheoremParams { mu: 1e-300, ..t1(100.0) };
        let rep = pagetime_minimal_report(&flat).unwrap();
        assert!(rep.contradiction);
        assert_eq!(rep.rhs / rep.lhs, 1.0);
    }

    #[test]
    fn sweep_onsets() {
        let p = TheoremParams { epsilon: 0.0, ..t1(100.0) };
        let s = evaporation_sweep(&p, Theorem::T1, 200).unwrap();
        assert_eq!(s.onset_r, Some(50.0));
        assert!(s.onset_consistent);

        let q = TheoremParams { eta: 0.01, ..t1(100.0) };
        let s = evaporation_sweep(&q, Theorem::T2, 200).unwrap();
        let onset = s.onset_r.unwrap();
        assert!(onset > 0.5 && onset <= 0.5 + 0.5 + 1e-12);
        assert!(s.onset_consistent);

        let s = evaporation_sweep(&p, Theorem::T1, 2).unwrap();
        assert!(!s.points[0].contradiction);
        assert!(evaporation_sweep(&p, Theorem::T1, 1).is_err());
        assert!(evaporation_sweep(&p, Theorem::T2Matter, 10).is_err());
    }

    #[test]
    fn holographic_sweep_matches_prediction() {
        for s_m in [0.0, 30.0, 90.0] {
            let p = TheoremParams { s_matter: s_m, ..t1(100.0) };
            let s = evaporation_sweep(&p, Theorem::T1Holographic, 1000).unwrap();
            assert!(s.onset_consistent, "s_matter = {s_m}: {:?} vs {:?}", s.onset_r, s.predicted_onset_r);
        }
    }

    #[test]
    fn grid_respects_planck_cutoff() {
        let p = TheoremParams { epsilon: 0.1, ..t1(100.0) };
        let g = sweep_grid(&p, 10);
        assert_eq!(g.last().copied(), Some(90.0));
        assert_eq!(g.len(), 10);
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::parse(t.name()), Some(t));
        }
        assert_eq!(Theorem::parse("t1"), Some(Theorem::T1));
        assert_eq!(Theorem::parse("t5"), None);
    }

    #[test]
    fn dominance_threshold() {
        let d = Dominance::default();
        assert!(d.much_greater(1.0, 0.01));
        assert!(!d.much_greater(1.0, 0.02));
        assert!(d.approx_equal(101.0, 100.0));
        assert!(!d.approx_equal(102.0, 100.0));
        assert!(Dominance::new(0.0).is_err());
    }
}
