//! One-parameter solution families of the stationary cubic NLS on the half
//! line and on the Dirichlet interval.
//!
//! With spectral parameter µ = k² > 0, the solutions vanishing at the
//! origin are
//!
//! ```text
//! χ⁺(x) = k √(2m/(1+m))        sn(kx/√(1+m), m)                 g = +1
//! χ⁻(x) = k √(2m(1-m)/(1-2m))  sn(kx/√(1-2m), m)/dn(kx/√(1-2m), m)   g = -1
//! ```
//!
//! parameterised by the deformation parameter m — m ∈ (0, 1] repulsive,
//! m ∈ (0, 1/2) attractive; m → 0 recovers a sine of vanishing amplitude.
//! On an interval of length ℓ the Dirichlet condition at the far end
//! quantises 2ℓ = n Λ(m, k), with n the number of nodal domains, giving
//! the spectral curves k_{n,ℓ}(m) and, through the L²-norm N_{n,ℓ}(m),
//! the physically natural form k_{n,ℓ}(N).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::elliptic::{
    self, jacobi_sn_cn_dn, k_minus_e, pi_mm_minus_k, sd_squared_integral, sn_squared_integral,
    EllipticError,
};
use crate::roots;

/// Sign of the cubic interaction term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Interaction {
    /// g = +1.
    Repulsive,
    /// g = -1.
    Attractive,
}

impl Interaction {
    /// Coupling constant as a float.
    pub fn g(self) -> f64 {
        match self {
            Interaction::Repulsive => 1.0,
            Interaction::Attractive => -1.0,
        }
    }

    /// Supremum of the admissible deformation-parameter range:
    /// m ∈ (0, 1] repulsive, m ∈ (0, 1/2) attractive.
    pub fn m_sup(self) -> f64 {
        match self {
            Interaction::Repulsive => 1.0,
            Interaction::Attractive => 0.5,
        }
    }
}

impl From<Interaction> for i8 {
    fn from(g: Interaction) -> i8 {
        match g {
            Interaction::Repulsive => 1,
            Interaction::Attractive => -1,
        }
    }
}

impl TryFrom<i8> for Interaction {
    type Error = String;
    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(Interaction::Repulsive),
            -1 => Ok(Interaction::Attractive),
            other => Err(format!("interaction sign must be +1 or -1, got {other}")),
        }
    }
}

impl std::fmt::Display for Interaction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Interaction::Repulsive => write!(f, "repulsive (g=+1)"),
            Interaction::Attractive => write!(f, "attractive (g=-1)"),
        }
    }
}

/// Domain failures of the interval-family routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("deformation parameter m = {m} outside {range} for {g}")]
    DeformationOutOfRange {
        m: f64,
        range: &'static str,
        g: &'static str,
    },
    #[error("k = {k} outside the admissible interval ({lo}, {hi}) for this family")]
    WaveNumberOutOfRange { k: f64, lo: f64, hi: f64 },
    #[error("norm N = {norm} outside the admissible range (0, {max})")]
    NormOutOfRange { norm: f64, max: f64 },
    #[error("{name} = {value} must be positive")]
    NonPositive { name: &'static str, value: f64 },
    #[error(transparent)]
    Elliptic(#[from] EllipticError),
}

type Result<T> = std::result::Result<T, IntervalError>;

/// A sampled member of an interval family: deformation parameter together
/// with the derived spectral quantities.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IntervalFamilyPoint {
    pub g: Interaction,
    pub n: u32,
    pub ell: f64,
    pub m: f64,
    pub k: f64,
    pub norm: f64,
    pub wavelength: f64,
    pub amplitude: f64,
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(IntervalError::NonPositive { name, value })
    }
}

/// m admissibility; the closed lower endpoint m = 0 is allowed as the
/// trivial/linear limit so that brackets and boundary evaluations work.
fn check_m(g: Interaction, m: f64) -> Result<()> {
    let ok = match g {
        Interaction::Repulsive => (0.0..=1.0).contains(&m),
        Interaction::Attractive => (0.0..0.5).contains(&m),
    };
    if ok {
        Ok(())
    } else {
        Err(IntervalError::DeformationOutOfRange {
            m,
            range: match g {
                Interaction::Repulsive => "[0, 1]",
                Interaction::Attractive => "[0, 1/2)",
            },
            g: match g {
                Interaction::Repulsive => "g=+1",
                Interaction::Attractive => "g=-1",
            },
        })
    }
}

/// Scaling factor √(1+m) (repulsive) or √(1-2m) (attractive) relating the
/// Jacobi argument to the physical coordinate.
fn arg_scale(g: Interaction, m: f64) -> f64 {
    match g {
        Interaction::Repulsive => (1.0 + m).sqrt(),
        // 1-2m is exact near m = 1/2, no compensation needed
        Interaction::Attractive => (1.0 - 2.0 * m).sqrt(),
    }
}

/// Profile χ±(x) of the half-line solution with parameters (m, k).
pub fn chi(g: Interaction, m: f64, k: f64, x: f64) -> Result<f64> {
    check_positive("k", k)?;
    check_m(g, m)?;
    if x < 0.0 {
        return Err(IntervalError::NonPositive { name: "x", value: x });
    }
    if m == 0.0 {
        return Ok(0.0);
    }
    let s = arg_scale(g, m);
    match g {
        Interaction::Repulsive => {
            let amp = k * (2.0 * m / (1.0 + m)).sqrt();
            Ok(amp * elliptic::jacobi_sn(k * x / s, m)?)
        }
        Interaction::Attractive => {
            let amp = k * (2.0 * m * (1.0 - m) / (1.0 - 2.0 * m)).sqrt();
            let (sn, _, dn) = jacobi_sn_cn_dn(k * x / s, m)?;
            Ok(amp * sn / dn)
        }
    }
}

/// Analytic x-derivative of χ±. At x = 0 equals √2 k² θ±(m).
pub fn chi_derivative(g: Interaction, m: f64, k: f64, x: f64) -> Result<f64> {
    check_positive("k", k)?;
    check_m(g, m)?;
    if x < 0.0 {
        return Err(IntervalError::NonPositive { name: "x", value: x });
    }
    if m == 0.0 {
        return Ok(0.0);
    }
    let s = arg_scale(g, m);
    let (sn, cn, dn) = jacobi_sn_cn_dn(k * x / s, m)?;
    match g {
        Interaction::Repulsive => {
            // A · (k/s) · cn·dn with A = k√(2m/(1+m))
            Ok(k * k * (2.0 * m).sqrt() / (1.0 + m) * cn * dn)
        }
        Interaction::Attractive => {
            // d/dy (sn/dn) = cn/dn² since dn² + m sn² = 1
            let _ = sn;
            Ok(k * k * (2.0 * m * (1.0 - m)).sqrt() / (1.0 - 2.0 * m) * cn / (dn * dn))
        }
    }
}

/// Nonlinear wavelength Λ±(m, k) = 4·s(m)·K(m)/k.
pub fn wavelength(g: Interaction, m: f64, k: f64) -> Result<f64> {
    check_positive("k", k)?;
    check_m(g, m)?;
    Ok(4.0 * arg_scale(g, m) * elliptic::ellip_k(m)? / k)
}

/// Amplitude A±(m, k) = max_x |χ±|, attained at Λ/4.
pub fn amplitude(g: Interaction, m: f64, k: f64) -> Result<f64> {
    check_positive("k", k)?;
    check_m(g, m)?;
    match g {
        Interaction::Repulsive => Ok(k * (2.0 * m / (1.0 + m)).sqrt()),
        Interaction::Attractive => Ok(k * (2.0 * m / (1.0 - 2.0 * m)).sqrt()),
    }
}

fn k_of_m_real(g: Interaction, nu: f64, ell: f64, m: f64) -> Result<f64> {
    // factored so that k_{n} = n * k_{1} holds exactly in floating point
    Ok(nu * (2.0 * arg_scale(g, m) * elliptic::ellip_k(m)? / ell))
}

fn norm_of_m_real(g: Interaction, nu: f64, ell: f64, m: f64) -> Result<f64> {
    if m == 0.0 {
        return Ok(0.0);
    }
    let kk = elliptic::ellip_k(m)?;
    match g {
        Interaction::Repulsive => Ok(8.0 * nu * nu / ell * kk * k_minus_e(m)?),
        Interaction::Attractive => {
            Ok(8.0 * nu * nu * (1.0 - m) / ell * kk * pi_mm_minus_k(m)?)
        }
    }
}

/// Interval spectral curve k±_{n,ℓ}(m) = 2n·s(m)·K(m)/ℓ.
///
/// Strictly increasing in m for g = +1 and strictly decreasing for g = -1;
/// linear in n.
pub fn k_of_m(g: Interaction, n: u32, ell: f64, m: f64) -> Result<f64> {
    check_positive("ell", ell)?;
    check_positive("n", n as f64)?;
    check_m(g, m)?;
    k_of_m_real(g, n as f64, ell, m)
}

/// Admissible open k-interval of the (n, ℓ) family: (nπ/ℓ, ∞) repulsive,
/// (0, nπ/ℓ) attractive.
pub fn k_range(g: Interaction, n: u32, ell: f64) -> (f64, f64) {
    let edge = n as f64 * std::f64::consts::PI / ell;
    match g {
        Interaction::Repulsive => (edge, f64::INFINITY),
        Interaction::Attractive => (0.0, edge),
    }
}

/// Inverse of [`k_of_m`]: the unique m with k±_{n,ℓ}(m) = k.
///
/// Converges to a relative k-residual of ~1e-13 wherever the map is
/// resolvable in f64; very deep in the repulsive regime (kℓ/n ≳ 50) the
/// residual is limited by the spacing of representable m below 1.
pub fn m_of_k(g: Interaction, n: u32, ell: f64, k: f64) -> Result<f64> {
    check_positive("ell", ell)?;
    check_positive("n", n as f64)?;
    let edge = n as f64 * std::f64::consts::PI / ell;
    let (lo, hi) = k_range(g, n, ell);
    if k == edge {
        return Ok(0.0);
    }
    if !(k > lo && k < hi) {
        return Err(IntervalError::WaveNumberOutOfRange { k, lo, hi });
    }
    let m_hi = match g {
        Interaction::Repulsive => 1f64.next_down(),
        Interaction::Attractive => 0.5f64.next_down(),
    };
    // The target function is monotone (increasing for g=+1, decreasing for
    // g=-1) with f(0) and f(m_hi) of opposite sign unless k is beyond the
    // f64-representable end of the curve, where the endpoint is returned.
    let f = |m: f64| k_of_m_real(g, n as f64, ell, m).unwrap() - k;
    let f_hi = f(m_hi);
    if (g == Interaction::Repulsive && f_hi <= 0.0)
        || (g == Interaction::Attractive && f_hi >= 0.0)
    {
        return Ok(m_hi);
    }
    let m = roots::brent(f, 0.0, m_hi, 0.0, 1e-13 * k.max(edge)).expect("bracketed by range check");
    Ok(m.clamp(0.0, m_hi))
}

/// L²-norm N±_{n,ℓ}(m) of the n-domain interval solution, in terms of
/// complete elliptic integrals; strictly increasing in m.
pub fn norm_of_m(g: Interaction, n: u32, ell: f64, m: f64) -> Result<f64> {
    check_positive("ell", ell)?;
    check_positive("n", n as f64)?;
    check_m(g, m)?;
    norm_of_m_real(g, n as f64, ell, m)
}

/// Supremum of N⁻_{n,ℓ}(m) over m ∈ (0, 1/2):
/// N_max = (4n²/ℓ)·K(1/2)·[Π(1|1/2,1/2) - K(1/2)].
pub fn max_norm(n: u32, ell: f64) -> f64 {
    let kk = elliptic::ellip_k(0.5).unwrap();
    4.0 * (n as f64).powi(2) / ell * kk * pi_mm_minus_k(0.5).unwrap()
}

/// Inverse of [`norm_of_m`]: m±_{n,ℓ}(N).
pub fn m_of_norm(g: Interaction, n: u32, ell: f64, norm: f64) -> Result<f64> {
    check_positive("ell", ell)?;
    check_positive("n", n as f64)?;
    let max = match g {
        Interaction::Repulsive => f64::INFINITY,
        Interaction::Attractive => max_norm(n, ell),
    };
    if !(norm > 0.0 && norm < max) {
        return Err(IntervalError::NormOutOfRange { norm, max });
    }
    let m_hi = g.m_sup().next_down();
    let f = |m: f64| norm_of_m_real(g, n as f64, ell, m).unwrap() - norm;
    if f(m_hi) <= 0.0 {
        // beyond the f64-representable end of the (repulsive) curve
        return Ok(m_hi);
    }
    let m = roots::brent(f, 0.0, m_hi, 0.0, 1e-12 * norm.max(1.0))
        .expect("bracketed by range check");
    Ok(m.clamp(0.0, m_hi))
}

/// Flow in the (N, k) plane: the pair (N_{τ,ℓ}(m), k_{τ,ℓ}(m)) with the
/// nodal count n extended to a real parameter τ. Along fixed m the flow
/// lines are k = γ√N.
pub fn flow_point(g: Interaction, tau: f64, ell: f64, m: f64) -> Result<(f64, f64)> {
    check_positive("tau", tau)?;
    check_positive("ell", ell)?;
    check_m(g, m)?;
    Ok((
        norm_of_m_real(g, tau, ell, m)?,
        k_of_m_real(g, tau, ell, m)?,
    ))
}

/// ∫₀^ℓ χ±(x)² dx for arbitrary ℓ (the edge length need not be an integer
/// number of half-wavelengths). Closed form via integrals of sn² and
/// (sn/dn)².
pub fn profile_norm_sq(g: Interaction, m: f64, k: f64, ell: f64) -> Result<f64> {
    check_positive("k", k)?;
    check_positive("ell", ell)?;
    check_m(g, m)?;
    if m == 0.0 {
        return Ok(0.0);
    }
    let s = arg_scale(g, m);
    let y = k * ell / s;
    match g {
        Interaction::Repulsive => Ok(2.0 * m * k / s * sn_squared_integral(y, m)?),
        Interaction::Attractive => {
            Ok(2.0 * m * (1.0 - m) * k / s * sd_squared_integral(y, m)?)
        }
    }
}

/// Bundle (m, k, N, Λ, A) for one family member; rows of the `interval`
/// command's table.
pub fn family_point(g: Interaction, n: u32, ell: f64, m: f64) -> Result<IntervalFamilyPoint> {
    let k = k_of_m(g, n, ell, m)?;
    Ok(IntervalFamilyPoint {
        g,
        n,
        ell,
        m,
        k,
        norm: norm_of_m(g, n, ell, m)?,
        wavelength: wavelength(g, m, k)?,
        amplitude: amplitude(g, m, k)?,
    })
}
