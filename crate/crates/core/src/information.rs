//! Entropy, information flow, and degree of dependence for the one-parameter
//! family of Bell-state joint distributions. All values are in nats; a log2
//! display option exists only at the CLI layer.

use std::f64::consts::LN_2;
use std::fmt;

use crate::error::Error;
use crate::measurement::{marginal, JointDistribution, MarginalSide};
use crate::operator::BellKind;
use crate::Result;

/// |θ − ¼| at or below this counts as informationally independent when
/// classifying a report.
pub const CLASS_TOLERANCE: f64 = 1e-9;

/// The single parameter θ = ½sin²((μ + (−1)^s ν)/2) ∈ [0, ½] that determines
/// the whole Bell-state joint distribution ξ = (θ, ½−θ, ½−θ, θ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaParam {
    value: f64,
}

impl ThetaParam {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=0.5).contains(&value) {
            Ok(Self { value })
        } else {
            Err(Error::ThetaOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.value
    }
}

/// θ for the gate pair (μ, ν) on the Bell state ψ_s.
pub fn theta_param(mu: f64, nu: f64, kind: BellKind) -> Result<ThetaParam> {
    let mu = crate::operator::polar_angle("mu", mu)?;
    let nu = crate::operator::polar_angle("nu", nu)?;
    let half_angle = (mu + kind.sign() * nu) / 2.0;
    // sin² keeps the value in [0, ½] up to rounding; clamp the boundary dust
    ThetaParam::new((0.5 * half_angle.sin().powi(2)).clamp(0.0, 0.5))
}

fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Joint entropy E(θ) = −2θ ln θ − 2(½−θ) ln(½−θ), with 0·ln 0 = 0.
/// Range [ln 2, 2 ln 2]; maximum uniquely at θ = ¼; symmetric under θ ↦ ½−θ.
pub fn entropy(theta: ThetaParam) -> f64 {
    let t = theta.value();
    -2.0 * xlnx(t) - 2.0 * xlnx(0.5 - t)
}

/// Shannon entropy −Σ ξ ln ξ of an arbitrary 4-outcome distribution; the
/// oracle tying `entropy` to the real 4-point formula.
pub fn entropy_of_distribution(dist: &JointDistribution) -> f64 {
    -dist.xi().iter().copied().map(xlnx).sum::<f64>()
}

/// Information flow (mutual information) I(θ) = 2 ln 2 − E(θ) ∈ [0, ln 2],
/// using that both Bell-state marginals are exactly uniform. Zero exactly at
/// θ = ¼.
pub fn information_flow(theta: ThetaParam) -> f64 {
    (2.0 * LN_2 - entropy(theta)).max(0.0)
}

/// Mutual information H_A + H_B − H_joint of any joint distribution, computed
/// from its actual marginals — the general route that `information_flow`
/// shortcuts for Bell states.
pub fn mutual_information(dist: &JointDistribution) -> f64 {
    let a = marginal(dist, MarginalSide::A);
    let b = marginal(dist, MarginalSide::B);
    let h_a = -xlnx(a.p_plus) - xlnx(a.p_minus);
    let h_b = -xlnx(b.p_plus) - xlnx(b.p_minus);
    (h_a + h_b - entropy_of_distribution(dist)).max(0.0)
}

/// Signed, normalized dependence e(θ) = sign(θ−¼) · I(θ)/ln 2 ∈ [−1, 1].
/// Zero iff independent; +1 at θ = ½ (outcomes always agree); −1 at θ = 0
/// (outcomes always disagree).
pub fn degree_of_dependence(theta: ThetaParam) -> f64 {
    let magnitude = (information_flow(theta) / LN_2).min(1.0);
    let t = theta.value();
    let signed = if t > 0.25 {
        magnitude
    } else if t < 0.25 {
        -magnitude
    } else {
        0.0
    };
    // normalize -0.0 so emitted records have a single zero representation
    if signed == 0.0 {
        0.0
    } else {
        signed
    }
}

/// Dependence classification of a gate pair by θ against ¼.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DependenceClass {
    Independent,
    AgreementCorrelated,
    DisagreementCorrelated,
}

impl fmt::Display for DependenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Independent => "independent",
            Self::AgreementCorrelated => "agreement_correlated",
            Self::DisagreementCorrelated => "disagreement_correlated",
        })
    }
}

/// Consistent bundle of θ, entropy, flow, degree, and class for one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoReport {
    pub theta: ThetaParam,
    pub entropy: f64,
    pub flow: f64,
    pub degree: f64,
    pub class: DependenceClass,
}

/// Evaluate the full information bundle for gates (μ, ν) on ψ_s.
pub fn info_report(mu: f64, nu: f64, kind: BellKind) -> Result<InfoReport> {
    let theta = theta_param(mu, nu, kind)?;
    let t = theta.value();
    let class = if (t - 0.25).abs() <= CLASS_TOLERANCE {
        DependenceClass::Independent
    } else if t > 0.25 {
        DependenceClass::AgreementCorrelated
    } else {
        DependenceClass::DisagreementCorrelated
    };
    Ok(InfoReport {
        theta,
        entropy: entropy(theta),
        flow: information_flow(theta),
        degree: degree_of_dependence(theta),
        class,
    })
}
