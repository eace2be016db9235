//! Star-graph model and constructive existence of central Dirichlet
//! solutions.
//!
//! A star graph is E edges of lengths ℓ₁ < … < ℓ_E glued at a common
//! centre, with Kirchhoff matching there (continuity plus vanishing sum of
//! outgoing derivatives) and Dirichlet conditions at the boundary
//! vertices. Candidate states are assembled edge-wise from the interval
//! families as φₑ(xₑ) = σₑ χ±(mₑ, k, ℓₑ - xₑ), which satisfies the NLS
//! equation and the boundary condition for free; the matching conditions
//! become algebraic equations in {σₑ, mₑ}.
//!
//! A solution with one nodal domain per edge and a node at the centre
//! exists at any root of
//!
//! ```text
//! f_σ(k) = Σₑ σₑ θ±(m±_{1,ℓₑ}(k)),   θ⁺ = √m/(1+m),  θ⁻ = √(m(1-m))/(1-2m)
//! ```
//!
//! since √2 k² f_σ(k) is the derivative sum of the single-domain profiles.
//! The sign choices and root brackets implemented here come with checkable
//! sufficient conditions on the edge lengths: for g = +1 an odd number of
//! edges always works, while an even count constrains the ratios
//! ℓ_{E/2+1}/ℓ₁ and ℓ_{E/2+2}/ℓ₁; for g = -1 the condition compares
//! partial sums of 1/ℓₑ². Prescribed per-edge nodal counts reduce to the
//! same construction on the star of fractional lengths ℓₑ/nₑ, and pairs of
//! equal-length edges can be split off beforehand because opposite signs
//! make their derivative contributions cancel identically.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{self, Interaction, IntervalError};
use crate::roots;

const PI: f64 = std::f64::consts::PI;

/// Relative tolerance under which two edge lengths count as equal.
pub const LENGTH_EQUALITY_RTOL: f64 = 1e-9;

/// k·ℓ beyond which the repulsive centre-derivative deviation switches to
/// its exponential asymptotics (the deformation parameter is no longer
/// resolvable in f64 there).
const DEV_ASYMPTOTIC_KL: f64 = 28.0;

/// Errors from graph construction and the central-Dirichlet solvers.
#[derive(Debug, Error)]
pub enum GraphError {
    #[error("a star graph needs at least {min} edges here, got {got}")]
    TooFewEdges { got: usize, min: usize },
    #[error("edge length {value} must be positive and finite")]
    BadLength { value: f64 },
    #[error("edges {i} and {j} have (nearly) equal length {value}; remove equal pairs first")]
    DuplicateLengths { i: usize, j: usize, value: f64 },
    #[error("reduced lengths l{i}/n{i} and l{j}/n{j} coincide at {value}")]
    DuplicateReducedLength { i: usize, j: usize, value: f64 },
    #[error("wrong interaction sign for this operation: expected {expected}")]
    WrongInteraction { expected: &'static str },
    #[error("k = {k} outside [{lo}, {hi}]")]
    KOutOfRange { k: f64, lo: f64, hi: f64 },
    #[error("sign vector has {got} entries for {edges} edges")]
    SigmaMismatch { got: usize, edges: usize },
    #[error("nodal vector has {got} entries for {edges} edges")]
    NodalVectorMismatch { got: usize, edges: usize },
    #[error("nodal counts must be positive integers")]
    BadNodalCount,
    #[error("existence condition not satisfied: {reason}")]
    ConditionFailed { reason: String },
    #[error(
        "f_sigma has no sign change on the scanned interval [{lo}, {hi}] (f = {f_lo} .. {f_hi})"
    )]
    NoRoot { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("fewer than 3 edges remain after removing equal pairs ({remaining})")]
    ReducedGraphTooSmall { remaining: usize },
    #[error("equal pair of length {length} carries no nodal-domain profile at k = {k}")]
    PairInadmissible { length: f64, k: f64 },
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

type Result<T> = std::result::Result<T, GraphError>;

// ---------------------------------------------------------------------------
// Model types
// ---------------------------------------------------------------------------

/// A metric star graph: edge lengths (kept sorted ascending) and the
/// interaction sign.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StarGraph {
    lengths: Vec<f64>,
    g: Interaction,
}

impl StarGraph {
    /// Builds a star graph; lengths are sorted ascending. At least one
    /// positive finite edge is required.
    pub fn new(lengths: &[f64], g: Interaction) -> Result<Self> {
        if lengths.is_empty() {
            return Err(GraphError::TooFewEdges { got: 0, min: 1 });
        }
        for &l in lengths {
            if !(l > 0.0 && l.is_finite()) {
                return Err(GraphError::BadLength { value: l });
            }
        }
        let mut lengths = lengths.to_vec();
        lengths.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(StarGraph { lengths, g })
    }

    pub fn edge_count(&self) -> usize {
        self.lengths.len()
    }

    /// Edge lengths in ascending order.
    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn g(&self) -> Interaction {
        self.g
    }

    pub fn min_length(&self) -> f64 {
        self.lengths[0]
    }

    pub fn max_length(&self) -> f64 {
        *self.lengths.last().unwrap()
    }

    /// Indices (i, j) of the first pair of (nearly) equal lengths, if any.
    pub fn equal_pair(&self) -> Option<(usize, usize)> {
        self.lengths
            .windows(2)
            .position(|w| nearly_equal(w[0], w[1]))
            .map(|i| (i, i + 1))
    }

    /// The theorem-level constructors need at least three pairwise
    /// distinct edges.
    fn require_theorem_shape(&self) -> Result<()> {
        if self.edge_count() < 3 {
            return Err(GraphError::TooFewEdges { got: self.edge_count(), min: 3 });
        }
        if let Some((i, j)) = self.equal_pair() {
            return Err(GraphError::DuplicateLengths { i, j, value: self.lengths[i] });
        }
        Ok(())
    }
}

fn nearly_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= LENGTH_EQUALITY_RTOL * a.abs().max(b.abs())
}

/// Per-edge data of an assembled state: overall sign, deformation
/// parameter and nodal-domain count. `m == 0` marks an edge on which the
/// wavefunction vanishes identically (non-regular solutions).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EdgeProfile {
    pub length: f64,
    pub sigma: i8,
    pub m: f64,
    pub n: u32,
}

/// A full stationary state on the star: the wavefunction on edge e is
/// φₑ(xₑ) = σₑ χ±(mₑ, k, ℓₑ - xₑ).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSolution {
    pub g: Interaction,
    pub k: f64,
    pub profiles: Vec<EdgeProfile>,
    /// Squared L²-norm summed over all edges.
    pub norm: f64,
    /// Per-edge nodal-domain counts; `None` on identically-zero edges.
    pub nodal: Vec<Option<u32>>,
    /// Common value φₑ(0) at the centre (averaged over edges).
    pub centre_value: f64,
    /// Sum of outgoing derivatives at the centre.
    pub centre_flux: f64,
}

impl GraphSolution {
    pub fn edge_count(&self) -> usize {
        self.profiles.len()
    }

    /// Wavefunction on edge `e` at coordinate `x` measured from the centre.
    pub fn edge_value(&self, e: usize, x: f64) -> Result<f64> {
        let p = &self.profiles[e];
        if p.m == 0.0 {
            return Ok(0.0);
        }
        Ok(p.sigma as f64 * interval::chi(self.g, p.m, self.k, p.length - x)?)
    }

    /// Largest per-edge amplitude, the natural scale of continuity gaps.
    pub fn amplitude(&self) -> f64 {
        self.profiles
            .iter()
            .filter(|p| p.m > 0.0)
            .map(|p| interval::amplitude(self.g, p.m, self.k).unwrap_or(0.0))
            .fold(0.0, f64::max)
    }

    /// Values φₑ(0) at the centre, one per edge.
    pub fn centre_values(&self) -> Result<Vec<f64>> {
        self.profiles
            .iter()
            .map(|p| {
                if p.m == 0.0 {
                    Ok(0.0)
                } else {
                    Ok(p.sigma as f64 * interval::chi(self.g, p.m, self.k, p.length)?)
                }
            })
            .collect()
    }

    /// Recomputes the Kirchhoff mismatch from the stored profiles:
    /// (max spread of the centre values, sum of outgoing derivatives).
    pub fn matching_gaps(&self) -> Result<(f64, f64)> {
        let values = self.centre_values()?;
        let spread = values.iter().cloned().fold(f64::MIN, f64::max)
            - values.iter().cloned().fold(f64::MAX, f64::min);
        let mut flux = 0.0;
        for p in &self.profiles {
            if p.m > 0.0 {
                flux -= p.sigma as f64 * interval::chi_derivative(self.g, p.m, self.k, p.length)?;
            }
        }
        Ok((spread, flux))
    }

    /// True when the state vanishes at the centre within `rtol` relative
    /// to the profile amplitude.
    pub fn is_central_dirichlet(&self, rtol: f64) -> bool {
        self.centre_value.abs() <= rtol * self.amplitude().max(f64::MIN_POSITIVE)
    }

    /// Checks the Kirchhoff residual bounds: continuity spread against
    /// `tol`·amplitude and flux against `tol`·k².
    pub fn validate(&self, tol: f64) -> Result<()> {
        let (spread, flux) = self.matching_gaps()?;
        let amp = self.amplitude().max(f64::MIN_POSITIVE);
        if spread.abs() > tol * amp || flux.abs() > tol * self.k * self.k {
            return Err(GraphError::ConditionFailed {
                reason: format!(
                    "Kirchhoff residual too large: spread {spread:.3e} (scale {amp:.3e}), flux {flux:.3e} (scale {:.3e})",
                    self.k * self.k
                ),
            });
        }
        Ok(())
    }

    /// Assembles a state from raw per-edge data, recomputing norm, nodal
    /// counts and centre diagnostics.
    pub fn assemble(
        g: Interaction,
        k: f64,
        lengths: &[f64],
        sigma: &[i8],
        m: &[f64],
    ) -> Result<GraphSolution> {
        assert_eq!(lengths.len(), sigma.len());
        assert_eq!(lengths.len(), m.len());
        let mut profiles = Vec::with_capacity(lengths.len());
        let mut nodal = Vec::with_capacity(lengths.len());
        let mut norm = 0.0;
        let mut flux = 0.0;
        let mut centre_sum = 0.0;
        for ((&l, &s), &me) in lengths.iter().zip(sigma).zip(m) {
            let n = if me == 0.0 {
                nodal.push(None);
                1
            } else {
                let count = edge_nodal_count(g, me, k, l)?;
                nodal.push(Some(count));
                norm += interval::profile_norm_sq(g, me, k, l)?;
                flux -= s as f64 * interval::chi_derivative(g, me, k, l)?;
                centre_sum += s as f64 * interval::chi(g, me, k, l)?;
                count
            };
            profiles.push(EdgeProfile { length: l, sigma: s, m: me, n });
        }
        Ok(GraphSolution {
            g,
            k,
            profiles,
            norm,
            nodal,
            centre_value: centre_sum / lengths.len() as f64,
            centre_flux: flux,
        })
    }
}

/// Number of nodal domains of χ±(m, k, ·) on an edge of length ℓ,
/// determined analytically from the nonlinear wavelength. A node within
/// relative distance 1e-9 of the centre counts as sitting on it.
pub fn edge_nodal_count(g: Interaction, m: f64, k: f64, ell: f64) -> Result<u32> {
    let lam = interval::wavelength(g, m, k)?;
    let q = 2.0 * ell / lam;
    let r = q.round();
    if (q - r).abs() <= 1e-9 * q.max(1.0) && r >= 1.0 {
        Ok(r as u32)
    } else {
        Ok(q.ceil().max(1.0) as u32)
    }
}

// ---------------------------------------------------------------------------
// Centre derivatives
// ---------------------------------------------------------------------------

/// θ±(m) = χ±'(0) / (√2 k²): √m/(1+m) for g = +1 and √(m(1-m))/(1-2m)
/// for g = -1. Depends on k only through m.
pub fn theta(g: Interaction, m: f64) -> Result<f64> {
    match g {
        Interaction::Repulsive => {
            if !(0.0..=1.0).contains(&m) {
                return Err(IntervalError::DeformationOutOfRange {
                    m,
                    range: "[0, 1]",
                    g: "g=+1",
                }
                .into());
            }
            Ok(0.5 - theta_deviation_repulsive(m))
        }
        Interaction::Attractive => {
            if !(0.0..0.5).contains(&m) {
                return Err(IntervalError::DeformationOutOfRange {
                    m,
                    range: "[0, 1/2)",
                    g: "g=-1",
                }
                .into());
            }
            Ok((m * (1.0 - m)).sqrt() / (1.0 - 2.0 * m))
        }
    }
}

/// 1/2 - θ⁺(m) = (1-m)² / (2 (1+m) (1+√m)²), exact as m → 1 where the
/// direct difference would round to zero.
fn theta_deviation_repulsive(m: f64) -> f64 {
    let d = 1.0 - m;
    let s = 1.0 + m.sqrt();
    d * d / (2.0 * (1.0 + m) * s * s)
}

/// Deviation 1/2 - θ⁺(m⁺_{1,ℓ}(k)); beyond the f64-resolvable part of the
/// spectral curve it continues with the asymptotic 16·exp(-√2 k ℓ).
fn repulsive_edge_deviation(k: f64, ell: f64) -> Result<f64> {
    if k * ell <= PI {
        return Ok(0.5);
    }
    if k * ell > DEV_ASYMPTOTIC_KL {
        return Ok(16.0 * (-std::f64::consts::SQRT_2 * k * ell).exp());
    }
    let m = interval::m_of_k(Interaction::Repulsive, 1, ell, k)?;
    Ok(theta_deviation_repulsive(m))
}

/// f_σ(k) = Σₑ σₑ θ⁺(m⁺_{1,ℓₑ}(k)) for k ≥ π/ℓ₁ (repulsive). Edges with
/// k ≤ π/ℓₑ contribute their continuous boundary value 0. Evaluated in
/// deviation form (Σσₑ)/2 - Σ σₑ (1/2 - θₑ) so that the exponentially
/// small large-k tail keeps its sign.
pub fn f_sigma_repulsive(graph: &StarGraph, sigma: &[i8], k: f64) -> Result<f64> {
    if graph.g() != Interaction::Repulsive {
        return Err(GraphError::WrongInteraction { expected: "repulsive (g=+1)" });
    }
    if sigma.len() != graph.edge_count() {
        return Err(GraphError::SigmaMismatch { got: sigma.len(), edges: graph.edge_count() });
    }
    let lo = PI / graph.min_length();
    if k < lo {
        return Err(GraphError::KOutOfRange { k, lo, hi: f64::INFINITY });
    }
    let sigma_sum: f64 = sigma.iter().map(|&s| s as f64).sum();
    let mut dev_sum = 0.0;
    for (&l, &s) in graph.lengths().iter().zip(sigma) {
        dev_sum += s as f64 * repulsive_edge_deviation(k, l)?;
    }
    Ok(0.5 * sigma_sum - dev_sum)
}

/// k² θ⁻ per edge: 4 √(m(1-m)) K(m)² / ℓ², continuous down to k = 0 where
/// m = 1/2 gives 2 K(1/2)²/ℓ².
fn attractive_edge_term(k: f64, ell: f64) -> Result<f64> {
    let edge = PI / ell;
    if k >= edge {
        return Ok(0.0);
    }
    let m = if k == 0.0 { 0.5 } else { interval::m_of_k(Interaction::Attractive, 1, ell, k)? };
    let kk = crate::elliptic::ellip_k(m).map_err(IntervalError::from)?;
    Ok(4.0 * (m * (1.0 - m)).sqrt() * kk * kk / (ell * ell))
}

/// f_σ(k) = Σₑ σₑ · 4√(mₑ(1-mₑ)) K(mₑ)²/ℓₑ² with mₑ = m⁻_{1,ℓₑ}(k), the
/// k²-scaled derivative sum of the attractive construction, defined on
/// 0 ≤ k ≤ π/ℓ_E (the longest edge's term vanishes at the right end).
pub fn f_sigma_attractive(graph: &StarGraph, sigma: &[i8], k: f64) -> Result<f64> {
    if graph.g() != Interaction::Attractive {
        return Err(GraphError::WrongInteraction { expected: "attractive (g=-1)" });
    }
    if sigma.len() != graph.edge_count() {
        return Err(GraphError::SigmaMismatch { got: sigma.len(), edges: graph.edge_count() });
    }
    let hi = PI / graph.max_length();
    if !(0.0..=hi).contains(&k) {
        return Err(GraphError::KOutOfRange { k, lo: 0.0, hi });
    }
    let mut sum = 0.0;
    for (&l, &s) in graph.lengths().iter().zip(sigma) {
        sum += s as f64 * attractive_edge_term(k, l)?;
    }
    Ok(sum)
}

// ---------------------------------------------------------------------------
// Existence conditions
// ---------------------------------------------------------------------------

/// Decision record of the repulsive existence condition.
#[derive(Debug, Clone, Serialize)]
pub struct RepulsiveConditionReport {
    pub edges: usize,
    pub odd: bool,
    pub satisfied: bool,
    /// m from K(m)√(1+m) = (π/2)·ℓ_{E/2+2}/ℓ₁ (even E only).
    pub m_plus: Option<f64>,
    /// m from K(m)√(1+m) = (π/2)·ℓ_{E/2+1}/ℓ₁ (even E only).
    pub m_minus: Option<f64>,
    /// √(m₊/m₋)·(1+m₋)/(1+m₊), to exceed E/(E-2).
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
}

/// Checks the repulsive existence condition: satisfied outright for odd E;
/// for even E the ratio condition on ℓ₁, ℓ_{E/2+1}, ℓ_{E/2+2} is evaluated.
pub fn check_thm1_condition(graph: &StarGraph) -> Result<RepulsiveConditionReport> {
    if graph.g() != Interaction::Repulsive {
        return Err(GraphError::WrongInteraction { expected: "repulsive (g=+1)" });
    }
    graph.require_theorem_shape()?;
    let e = graph.edge_count();
    if e % 2 == 1 {
        return Ok(RepulsiveConditionReport {
            edges: e,
            odd: true,
            satisfied: true,
            m_plus: None,
            m_minus: None,
            lhs: None,
            rhs: None,
        });
    }
    let l = graph.lengths();
    let half = e / 2;
    // 1-based ℓ_{E/2+1}, ℓ_{E/2+2} live at indices half, half+1
    let ratio_minus = l[half] / l[0];
    let ratio_plus = l[half + 1] / l[0];
    let m_minus = interval::m_of_k(Interaction::Repulsive, 1, 1.0, PI * ratio_minus)?;
    let m_plus = interval::m_of_k(Interaction::Repulsive, 1, 1.0, PI * ratio_plus)?;
    let lhs = (m_plus / m_minus).sqrt() * (1.0 + m_minus) / (1.0 + m_plus);
    let rhs = e as f64 / (e as f64 - 2.0);
    Ok(RepulsiveConditionReport {
        edges: e,
        odd: false,
        satisfied: lhs > rhs,
        m_plus: Some(m_plus),
        m_minus: Some(m_minus),
        lhs: Some(lhs),
        rhs: Some(rhs),
    })
}

/// One candidate split M of the attractive condition.
#[derive(Debug, Clone, Serialize)]
pub struct AttractiveSplit {
    /// Number of short edges taking σ = +1.
    pub split: usize,
    /// Σ_{e ≤ M} 1/ℓₑ².
    pub short_sum: f64,
    /// Σ_{M < e ≤ E-1} 1/ℓₑ².
    pub long_sum_excl: f64,
    /// Σ_{M < e ≤ E} 1/ℓₑ².
    pub long_sum: f64,
    /// long_sum_excl < short_sum < long_sum.
    pub admissible: bool,
    /// ℓ_M/ℓ_{M+1} < √(M/(E-M-1)).
    pub ratio_ok: bool,
    /// ℓ₁/ℓ_E > √(M/(E-M)).
    pub span_ok: bool,
    /// Both sufficient inequalities hold (these imply admissibility).
    pub sufficient: bool,
}

/// Decision record of the attractive existence condition.
#[derive(Debug, Clone, Serialize)]
pub struct AttractiveConditionReport {
    pub edges: usize,
    pub candidates: Vec<AttractiveSplit>,
    /// All admissible M < E/2.
    pub admissible: Vec<usize>,
}

impl AttractiveConditionReport {
    pub fn satisfied(&self) -> bool {
        !self.admissible.is_empty()
    }
}

/// Checks the attractive existence condition for every integer M < E/2,
/// recording the inverse-square length sums and the easier sufficient
/// inequalities.
pub fn check_thm2_condition(graph: &StarGraph) -> Result<AttractiveConditionReport> {
    if graph.g() != Interaction::Attractive {
        return Err(GraphError::WrongInteraction { expected: "attractive (g=-1)" });
    }
    graph.require_theorem_shape()?;
    let e = graph.edge_count();
    let l = graph.lengths();
    let inv2: Vec<f64> = l.iter().map(|x| 1.0 / (x * x)).collect();
    let mut candidates = Vec::new();
    let mut admissible = Vec::new();
    let mut split = 1usize;
    while 2 * split < e {
        let short_sum: f64 = inv2[..split].iter().sum();
        let long_sum_excl: f64 = inv2[split..e - 1].iter().sum();
        let long_sum: f64 = inv2[split..].iter().sum();
        let ok = long_sum_excl < short_sum && short_sum < long_sum;
        let m = split as f64;
        let ratio_ok = l[split - 1] / l[split] < (m / (e as f64 - m - 1.0)).sqrt();
        let span_ok = l[0] / l[e - 1] > (m / (e as f64 - m)).sqrt();
        if ok {
            admissible.push(split);
        }
        candidates.push(AttractiveSplit {
            split,
            short_sum,
            long_sum_excl,
            long_sum,
            admissible: ok,
            ratio_ok,
            span_ok,
            sufficient: ratio_ok && span_ok,
        });
        split += 1;
    }
    Ok(AttractiveConditionReport { edges: e, candidates, admissible })
}

// ---------------------------------------------------------------------------
// Sign choices
// ---------------------------------------------------------------------------

/// Strategy for assigning the per-edge signs σₑ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignMode {
    /// Odd E: σ₁ = -1, the remaining signs balanced with f_σ(π/ℓ₁) > 0.
    Odd,
    /// Even E = 2M: σₑ = +1 for e = 1 and e ≥ M+2, -1 for 2 ≤ e ≤ M+1.
    EvenBalanced,
    /// Even E, exploratory: one more negative than positive sign,
    /// positives placed on the longest edges.
    EvenMajorityNegative,
    /// Attractive: +1 on the `split` shortest edges, -1 on the rest.
    Attractive { split: usize },
}

/// Chooses the edge signs for the requested strategy. For `Odd` the
/// balanced half carrying +1 goes to the longest edges, which maximises
/// f_σ(π/ℓ₁) (their θ-values at that k are the largest); positivity there
/// is then automatic.
pub fn choose_signs(graph: &StarGraph, mode: SignMode) -> Result<Vec<i8>> {
    let e = graph.edge_count();
    match mode {
        SignMode::Odd => {
            if e < 3 || e % 2 == 0 {
                return Err(GraphError::ConditionFailed {
                    reason: format!("odd sign mode needs an odd edge count >= 3, got {e}"),
                });
            }
            let mut sigma = vec![-1i8; e];
            for s in sigma.iter_mut().skip(1 + (e - 1) / 2) {
                *s = 1;
            }
            debug_assert_eq!(sigma.iter().skip(1).map(|&s| s as i32).sum::<i32>(), 0);
            Ok(sigma)
        }
        SignMode::EvenBalanced => {
            if e < 4 || e % 2 == 1 {
                return Err(GraphError::ConditionFailed {
                    reason: format!("balanced sign mode needs an even edge count >= 4, got {e}"),
                });
            }
            let half = e / 2;
            let mut sigma = vec![-1i8; e];
            sigma[0] = 1;
            for s in sigma.iter_mut().skip(half + 1) {
                *s = 1;
            }
            Ok(sigma)
        }
        SignMode::EvenMajorityNegative => {
            if e < 4 || e % 2 == 1 {
                return Err(GraphError::ConditionFailed {
                    reason: format!(
                        "majority-negative mode needs an even edge count >= 4, got {e}"
                    ),
                });
            }
            // E/2 - 1 positives on the longest edges
            let mut sigma = vec![-1i8; e];
            for s in sigma.iter_mut().skip(e - (e / 2 - 1)) {
                *s = 1;
            }
            Ok(sigma)
        }
        SignMode::Attractive { split } => {
            if split == 0 || 2 * split >= e {
                return Err(GraphError::ConditionFailed {
                    reason: format!(
                        "attractive split M = {split} must satisfy 1 <= M < E/2 = {}",
                        e as f64 / 2.0
                    ),
                });
            }
            let mut sigma = vec![-1i8; e];
            for s in sigma.iter_mut().take(split) {
                *s = 1;
            }
            Ok(sigma)
        }
    }
}

// ---------------------------------------------------------------------------
// Central Dirichlet solvers
// ---------------------------------------------------------------------------

/// How the root of f_σ was isolated, kept for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct SearchRecord {
    pub sigma: Vec<i8>,
    /// Attractive split M, when applicable.
    pub split: Option<usize>,
    /// Full scanned k-interval.
    pub scanned: (f64, f64),
    /// First sign-change bracket found on the scan grid.
    pub bracket: (f64, f64),
    /// f_σ at the bracket ends.
    pub f_at_bracket: (f64, f64),
    /// Located root.
    pub k_root: f64,
}

/// A constructed central Dirichlet solution together with its search record.
#[derive(Debug, Clone)]
pub struct CentralDirichlet {
    pub solution: GraphSolution,
    pub search: SearchRecord,
}

const SCAN_POINTS: usize = 256;

/// Repulsive scan cap: k_max = 50·π/ℓ₁.
const REPULSIVE_KMAX_FACTOR: f64 = 50.0;

fn locate_root(graph: &StarGraph, sigma: &[i8], split: Option<usize>) -> Result<SearchRecord> {
    let (lo, hi, geometric) = match graph.g() {
        Interaction::Repulsive => {
            let lo = PI / graph.min_length();
            (lo, REPULSIVE_KMAX_FACTOR * lo, true)
        }
        Interaction::Attractive => (0.0, PI / graph.max_length(), false),
    };
    let f = |k: f64| -> f64 {
        match graph.g() {
            Interaction::Repulsive => f_sigma_repulsive(graph, sigma, k).unwrap(),
            Interaction::Attractive => f_sigma_attractive(graph, sigma, k).unwrap(),
        }
    };
    let grid = |i: usize| -> f64 {
        let t = i as f64 / SCAN_POINTS as f64;
        if geometric {
            lo * (hi / lo).powf(t)
        } else {
            lo + (hi - lo) * t
        }
    };
    let bracket = roots::first_sign_change(f, grid, SCAN_POINTS).ok_or(GraphError::NoRoot {
        lo,
        hi,
        f_lo: f(lo),
        f_hi: f(hi),
    })?;
    let k_root = roots::brent(f, bracket.lo, bracket.hi, 1e-13 * bracket.hi, 0.0)
        .expect("sign change bracketed");
    Ok(SearchRecord {
        sigma: sigma.to_vec(),
        split,
        scanned: (lo, hi),
        bracket: (bracket.lo, bracket.hi),
        f_at_bracket: (bracket.f_lo, bracket.f_hi),
        k_root,
    })
}

fn assemble_single_domain(graph: &StarGraph, record: SearchRecord) -> Result<CentralDirichlet> {
    let k = record.k_root;
    let mut m = Vec::with_capacity(graph.edge_count());
    for &l in graph.lengths() {
        m.push(interval::m_of_k(graph.g(), 1, l, k)?);
    }
    let solution = GraphSolution::assemble(graph.g(), k, graph.lengths(), &record.sigma, &m)?;
    Ok(CentralDirichlet { solution, search: record })
}

fn default_sign_mode(graph: &StarGraph, split: Option<usize>) -> Result<SignMode> {
    Ok(match graph.g() {
        Interaction::Repulsive => {
            if graph.edge_count() % 2 == 1 {
                SignMode::Odd
            } else {
                SignMode::EvenBalanced
            }
        }
        Interaction::Attractive => SignMode::Attractive {
            split: match split {
                Some(m) => m,
                None => {
                    let report = check_thm2_condition(graph)?;
                    *report.admissible.first().ok_or_else(|| GraphError::ConditionFailed {
                        reason: "no admissible split M for the attractive condition".into(),
                    })?
                }
            },
        },
    })
}

/// Constructs a regular central Dirichlet solution with one nodal domain
/// per edge, after verifying the applicable existence condition. The root
/// of f_σ is isolated on a 256-point scan (geometric on (π/ℓ₁, 50π/ℓ₁) for
/// g = +1, linear on (0, π/ℓ_E) for g = -1) and refined to |Δk| ≤ 1e-13·k.
pub fn find_central_dirichlet(graph: &StarGraph) -> Result<CentralDirichlet> {
    graph.require_theorem_shape()?;
    match graph.g() {
        Interaction::Repulsive => {
            let report = check_thm1_condition(graph)?;
            if !report.satisfied {
                return Err(GraphError::ConditionFailed {
                    reason: format!(
                        "even-count ratio condition fails: lhs {:.6} <= rhs {:.6}",
                        report.lhs.unwrap(),
                        report.rhs.unwrap()
                    ),
                });
            }
            find_central_dirichlet_unchecked(graph, None)
        }
        Interaction::Attractive => {
            let report = check_thm2_condition(graph)?;
            let split = *report.admissible.first().ok_or_else(|| GraphError::ConditionFailed {
                reason: "no admissible split M: inverse-square sums violate the condition".into(),
            })?;
            find_central_dirichlet_unchecked(graph, Some(split))
        }
    }
}

/// As [`find_central_dirichlet`] but without verifying the existence
/// condition first; the scan simply reports `NoRoot` when f_σ does not
/// change sign. For g = -1 an explicit split may be supplied, otherwise
/// the first admissible (or largest possible) M is tried.
pub fn find_central_dirichlet_unchecked(
    graph: &StarGraph,
    split: Option<usize>,
) -> Result<CentralDirichlet> {
    graph.require_theorem_shape()?;
    let split = match (graph.g(), split) {
        (Interaction::Attractive, None) => {
            let fallback = (graph.edge_count() - 1) / 2;
            Some(match check_thm2_condition(graph) {
                Ok(report) => report.admissible.first().copied().unwrap_or(fallback),
                Err(_) => fallback,
            })
        }
        (_, s) => s,
    };
    let mode = default_sign_mode(graph, split)?;
    let sigma = choose_signs(graph, mode)?;
    let record = locate_root(graph, &sigma, split)?;
    assemble_single_domain(graph, record)
}

/// Constructs a regular central Dirichlet solution whose per-edge
/// nodal-domain counts equal the prescribed vector `n`.
///
/// Each edge is divided into nₑ fractions ℓ̃ₑ = ℓₑ/nₑ; the fractions must
/// be pairwise distinct and the star of fractional lengths must satisfy
/// the applicable existence condition. The solution on that reduced star
/// extends periodically to the full edges.
pub fn find_central_dirichlet_with_nodal_vector(
    graph: &StarGraph,
    n: &[u32],
) -> Result<CentralDirichlet> {
    let e = graph.edge_count();
    if n.len() != e {
        return Err(GraphError::NodalVectorMismatch { got: n.len(), edges: e });
    }
    if n.iter().any(|&ne| ne == 0) {
        return Err(GraphError::BadNodalCount);
    }
    let reduced: Vec<f64> =
        graph.lengths().iter().zip(n).map(|(&l, &ne)| l / ne as f64).collect();
    for i in 0..e {
        for j in i + 1..e {
            if nearly_equal(reduced[i], reduced[j]) {
                return Err(GraphError::DuplicateReducedLength { i, j, value: reduced[i] });
            }
        }
    }
    let reduced_graph = StarGraph::new(&reduced, graph.g())?;
    let base = find_central_dirichlet(&reduced_graph)?;
    let k = base.search.k_root;
    // the reduced solve orders edges by ascending fraction; map signs back
    let mut order: Vec<usize> = (0..e).collect();
    order.sort_by(|&a, &b| reduced[a].partial_cmp(&reduced[b]).unwrap());
    let mut sigma = vec![0i8; e];
    let mut m = vec![0.0f64; e];
    for (pos, &edge) in order.iter().enumerate() {
        let proof_sign = base.search.sigma[pos];
        // boundary-anchored sign flips once per extra nodal domain
        sigma[edge] = if n[edge] % 2 == 1 { proof_sign } else { -proof_sign };
        m[edge] = interval::m_of_k(graph.g(), n[edge], graph.lengths()[edge], k)?;
    }
    let solution = GraphSolution::assemble(graph.g(), k, graph.lengths(), &sigma, &m)?;
    Ok(CentralDirichlet { solution, search: base.search })
}

// ---------------------------------------------------------------------------
// Equal-length pairs
// ---------------------------------------------------------------------------

/// A removed pair of equal-length edges. Opposite signs make the two
/// derivative contributions cancel for every admissible k.
#[derive(Debug, Clone, Serialize)]
pub struct EqualPair {
    pub length: f64,
    /// Positions of the two edges in the full graph's sorted length list.
    pub indices: (usize, usize),
    pub sigma: (i8, i8),
}

/// Splits off pairs of (nearly) equal edge lengths until the remaining
/// lengths are pairwise distinct. Triples keep one unpaired edge.
pub fn reduce_equal_pairs(graph: &StarGraph) -> Result<(StarGraph, Vec<EqualPair>)> {
    let l = graph.lengths();
    let mut pairs = Vec::new();
    let mut keep = Vec::new();
    let mut i = 0;
    while i < l.len() {
        if i + 1 < l.len() && nearly_equal(l[i], l[i + 1]) {
            pairs.push(EqualPair { length: l[i], indices: (i, i + 1), sigma: (1, -1) });
            i += 2;
        } else {
            keep.push(l[i]);
            i += 1;
        }
    }
    if keep.len() < 3 {
        return Err(GraphError::ReducedGraphTooSmall { remaining: keep.len() });
    }
    Ok((StarGraph::new(&keep, graph.g())?, pairs))
}

/// Extends a central Dirichlet solution found on the pair-reduced graph
/// back to the full graph: each removed pair receives the single- (or for
/// g = -1 possibly multi-) domain profile vanishing at the centre, with
/// opposite signs on the two partners.
pub fn extend_with_pairs(
    graph: &StarGraph,
    base: &CentralDirichlet,
    pairs: &[EqualPair],
) -> Result<CentralDirichlet> {
    let g = graph.g();
    let k = base.search.k_root;
    let e = graph.edge_count();
    let mut sigma = vec![0i8; e];
    let mut m = vec![0.0f64; e];
    let mut taken = vec![false; e];
    for pair in pairs {
        let domains = match g {
            Interaction::Repulsive => {
                if k <= PI / pair.length {
                    return Err(GraphError::PairInadmissible { length: pair.length, k });
                }
                1
            }
            // a short enough half-wavelength always exists attractively
            Interaction::Attractive => (k * pair.length / PI).floor() as u32 + 1,
        };
        let m_pair = interval::m_of_k(g, domains, pair.length, k)?;
        let (i, j) = pair.indices;
        let flip = if domains % 2 == 1 { 1 } else { -1 };
        sigma[i] = pair.sigma.0 * flip;
        sigma[j] = pair.sigma.1 * flip;
        m[i] = m_pair;
        m[j] = m_pair;
        taken[i] = true;
        taken[j] = true;
    }
    let mut reduced_pos = 0usize;
    for edge in 0..e {
        if !taken[edge] {
            let p = &base.solution.profiles[reduced_pos];
            debug_assert!(nearly_equal(p.length, graph.lengths()[edge]));
            sigma[edge] = p.sigma;
            m[edge] = p.m;
            reduced_pos += 1;
        }
    }
    let solution = GraphSolution::assemble(g, k, graph.lengths(), &sigma, &m)?;
    Ok(CentralDirichlet { solution, search: base.search.clone() })
}

/// Convenience: reduce equal pairs, solve on the reduced graph, extend.
pub fn solve_with_equal_pairs(graph: &StarGraph) -> Result<CentralDirichlet> {
    let (reduced, pairs) = reduce_equal_pairs(graph)?;
    let base = find_central_dirichlet(&reduced)?;
    extend_with_pairs(graph, &base, &pairs)
}

// ---------------------------------------------------------------------------
// Nodal bookkeeping
// ---------------------------------------------------------------------------

/// Nodal-structure summary of a solution: per-edge domain counts, total
/// nodal points ξ (boundary nodes included, the centre counted once) and
/// total nodal domains ν.
#[derive(Debug, Clone, Serialize)]
pub struct NodalSummary {
    pub per_edge: Vec<Option<u32>>,
    /// Total nodal points ξ; `None` when some edge vanishes identically.
    pub points: Option<u32>,
    /// Total nodal domains ν; `None` when some edge vanishes identically.
    pub domains: Option<u32>,
    pub central_dirichlet: bool,
}

/// Computes the nodal structure of a solution analytically from the
/// per-edge wavelengths. For regular solutions the totals obey
/// ν = ξ + 1 - E away from the centre-Dirichlet set and ν = ξ - 1 on it.
pub fn nodal_counts(solution: &GraphSolution) -> Result<NodalSummary> {
    let central = solution.is_central_dirichlet(1e-8);
    let mut per_edge = Vec::with_capacity(solution.edge_count());
    for p in &solution.profiles {
        if p.m == 0.0 {
            per_edge.push(None);
        } else {
            per_edge.push(Some(edge_nodal_count(solution.g, p.m, solution.k, p.length)?));
        }
    }
    let regular = per_edge.iter().all(|c| c.is_some());
    let (points, domains) = if regular {
        let total: u32 = per_edge.iter().map(|c| c.unwrap()).sum();
        if central {
            (Some(total + 1), Some(total))
        } else {
            (Some(total), Some(total + 1 - solution.edge_count() as u32))
        }
    } else {
        (None, None)
    };
    Ok(NodalSummary { per_edge, points, domains, central_dirichlet: central })
}

#[cfg(test)]
mod tests {
    use super::*;

    const REP: Interaction = Interaction::Repulsive;
    const ATT: Interaction = Interaction::Attractive;

    fn base_graph() -> StarGraph {
        StarGraph::new(&[1.0, 1.2, 1.5], REP).unwrap()
    }

    /// Five-edge attractive graph built from the two-length recipe around
    /// M = 2 (ratio 0.9 ∈ (√(2/3), 1)), perturbed ~1% to break ties.
    fn attractive_graph() -> StarGraph {
        StarGraph::new(&[0.891, 0.9, 0.99, 1.0, 1.01], ATT).unwrap()
    }

    #[test]
    fn graph_construction_sorts_and_validates() {
        let g = StarGraph::new(&[2.0, 1.0, 1.5], REP).unwrap();
        assert_eq!(g.lengths(), &[1.0, 1.5, 2.0]);
        assert!(StarGraph::new(&[], REP).is_err());
        assert!(StarGraph::new(&[1.0, -2.0], REP).is_err());
        assert!(StarGraph::new(&[1.0, f64::INFINITY], REP).is_err());
    }

    #[test]
    fn theta_endpoints_and_monotonicity() {
        assert_eq!(theta(REP, 0.0).unwrap(), 0.0);
        assert!((theta(REP, 1.0).unwrap() - 0.5).abs() < 1e-15);
        let mut prev = 0.0;
        for i in 1..100 {
            let t = theta(REP, i as f64 / 100.0).unwrap();
            assert!(t > prev);
            prev = t;
        }
        assert!(theta(ATT, 0.5).is_err());
        assert!(theta(REP, 1.1).is_err());
        // deviation form agrees with the direct formula at moderate m
        for &m in &[0.2f64, 0.5, 0.9] {
            let direct = m.sqrt() / (1.0 + m);
            assert!((theta(REP, m).unwrap() - direct).abs() < 1e-15);
        }
    }

    #[test]
    fn theta_attractive_matches_profile_slope() {
        let (m, k) = (0.4, 1.1);
        let h = 1e-7;
        let slope =
            (interval::chi(ATT, m, k, h).unwrap() - interval::chi(ATT, m, k, 0.0).unwrap()) / h;
        let want = 2f64.sqrt() * k * k * theta(ATT, m).unwrap();
        assert!((slope - want).abs() < 1e-7 * want.abs().max(1.0));
    }

    #[test]
    fn f_sigma_repulsive_limits() {
        // single edge, sigma = (+1): boundary value 0
        let single = StarGraph::new(&[1.0], REP).unwrap();
        let v = f_sigma_repulsive(&single, &[1], PI).unwrap();
        assert_eq!(v, 0.0);
        // large-k limit (1/2)Σσ for Σσ = -1
        let g = base_graph();
        let f = f_sigma_repulsive(&g, &[-1, -1, 1], 200.0).unwrap();
        assert!((f + 0.5).abs() < 0.01);
        // balanced signs on E=4: negative at k = 30/ℓ₁, strictly
        let g4 = StarGraph::new(&[1.0, 1.1, 1.2, 1.3], REP).unwrap();
        let f4 = f_sigma_repulsive(&g4, &[1, -1, -1, 1], 30.0).unwrap();
        assert!(f4 < 0.0, "expected strictly negative tail, got {f4}");
        assert!(f_sigma_repulsive(&g, &[1, 1, -1], 1.0).is_err());
    }

    #[test]
    fn f_sigma_attractive_limits() {
        let g = attractive_graph();
        let sigma = choose_signs(&g, SignMode::Attractive { split: 2 }).unwrap();
        // value at k = 0
        let kk = crate::elliptic::ellip_k(0.5).unwrap();
        let want: f64 = g
            .lengths()
            .iter()
            .zip(&sigma)
            .map(|(&l, &s)| 2.0 * s as f64 * kk * kk / (l * l))
            .sum();
        let got = f_sigma_attractive(&g, &sigma, 0.0).unwrap();
        assert!((got - want).abs() < 1e-12 * want.abs());
        // longest edge contributes 0 at the right end of the interval
        let hi = PI / g.max_length();
        let all_but_last: f64 = f_sigma_attractive(&g, &[0, 0, 0, 0, -1], hi).unwrap();
        assert_eq!(all_but_last, 0.0);
        // per-edge term decreasing in k
        let term = |k: f64| attractive_edge_term(k, 1.0).unwrap();
        assert!(term(0.1 * PI) > term(0.9 * PI));
    }

    #[test]
    fn f_sigma_is_continuous_under_refinement() {
        // away from the left endpoint, where θ(m(k)) has a √(k-π/ℓ) cusp
        let g = base_graph();
        let sigma = choose_signs(&g, SignMode::Odd).unwrap();
        let lo = PI / g.min_length() * 1.05;
        let hi = 4.0 * lo;
        let incr = |n: usize| -> f64 {
            let mut worst = 0.0f64;
            let mut prev = f_sigma_repulsive(&g, &sigma, lo).unwrap();
            for i in 1..=n {
                let k = lo + (hi - lo) * i as f64 / n as f64;
                let v = f_sigma_repulsive(&g, &sigma, k).unwrap();
                worst = worst.max((v - prev).abs());
                prev = v;
            }
            worst
        };
        let coarse = incr(200);
        let fine = incr(400);
        assert!(fine <= 0.6 * coarse + 1e-12, "fine {fine} vs coarse {coarse}");
    }

    #[test]
    fn thm1_odd_is_always_satisfied() {
        let report = check_thm1_condition(&base_graph()).unwrap();
        assert!(report.odd && report.satisfied);
    }

    #[test]
    fn thm1_even_ratio_near_one_satisfies() {
        // ℓ_{E/2+1}/ℓ₁ → 1 drives m₋ → 0 and the lhs without bound
        let g = StarGraph::new(&[1.0, 1.0005, 1.001, 3.0], REP).unwrap();
        let report = check_thm1_condition(&g).unwrap();
        assert!(!report.odd && report.satisfied);
        assert!(report.lhs.unwrap() > 10.0);
    }

    #[test]
    fn thm1_even_matches_independent_evaluation() {
        // independent route: solve K(m)√(1+m) = (π/2)·r by bisection on a
        // direct numerical quadrature of K
        let quad_k = |m: f64| -> f64 {
            let n = 20_000;
            let mut acc = 0.0;
            for i in 0..n {
                let t = std::f64::consts::FRAC_PI_2 * (i as f64 + 0.5) / n as f64;
                acc += 1.0 / (1.0 - m * t.sin().powi(2)).sqrt();
            }
            acc * std::f64::consts::FRAC_PI_2 / n as f64
        };
        let solve = |r: f64| -> f64 {
            let target = std::f64::consts::FRAC_PI_2 * r;
            let (mut lo, mut hi) = (0.0f64, 1.0 - 1e-12);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if quad_k(mid) * (1.0 + mid).sqrt() < target {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        };
        let g = StarGraph::new(&[1.0, 1.05, 1.0605, 3.0], REP).unwrap();
        let report = check_thm1_condition(&g).unwrap();
        let (m_minus, m_plus) = (solve(1.0605), solve(3.0));
        let lhs = (m_plus / m_minus).sqrt() * (1.0 + m_minus) / (1.0 + m_plus);
        assert!((report.lhs.unwrap() - lhs).abs() < 1e-5 * lhs);
        assert_eq!(report.satisfied, lhs > report.rhs.unwrap());
    }

    #[test]
    fn thm2_two_length_recipe_admits_middle_split() {
        let report = check_thm2_condition(&attractive_graph()).unwrap();
        assert!(report.admissible.contains(&2), "admissible: {:?}", report.admissible);
        // sufficient inequalities imply admissibility wherever they hold
        for c in &report.candidates {
            if c.sufficient {
                assert!(c.admissible);
            }
        }
    }

    #[test]
    fn thm2_direct_sum_counterexample() {
        let g = StarGraph::new(&[1.0, 10.0, 11.0], ATT).unwrap();
        let report = check_thm2_condition(&g).unwrap();
        // M = 1: the right inequality 1 < 1/100 + 1/121 fails
        assert!(report.admissible.is_empty());
        let c = &report.candidates[0];
        assert!(c.long_sum_excl < c.short_sum && !(c.short_sum < c.long_sum));
    }

    #[test]
    fn sign_choices_match_stated_patterns() {
        let g = base_graph();
        let s = choose_signs(&g, SignMode::Odd).unwrap();
        assert_eq!(s, vec![-1, -1, 1]);
        assert!(f_sigma_repulsive(&g, &s, PI / g.min_length() + 1e-9).unwrap() > 0.0);
        let g4 = StarGraph::new(&[1.0, 1.1, 1.2, 1.3], REP).unwrap();
        assert_eq!(choose_signs(&g4, SignMode::EvenBalanced).unwrap(), vec![1, -1, -1, 1]);
        let g5 = attractive_graph();
        assert_eq!(
            choose_signs(&g5, SignMode::Attractive { split: 2 }).unwrap(),
            vec![1, 1, -1, -1, -1]
        );
        assert!(choose_signs(&g4, SignMode::Odd).is_err());
    }

    #[test]
    fn odd_sign_choice_invariants() {
        for lengths in [vec![1.0, 1.2, 1.5], vec![0.7, 1.1, 1.9, 2.3, 3.1]] {
            let g = StarGraph::new(&lengths, REP).unwrap();
            let s = choose_signs(&g, SignMode::Odd).unwrap();
            assert_eq!(s[0], -1);
            assert_eq!(s.iter().skip(1).map(|&x| x as i32).sum::<i32>(), 0);
            let f = f_sigma_repulsive(&g, &s, PI / g.min_length() + 1e-9).unwrap();
            assert!(f > 0.0);
        }
    }

    #[test]
    fn base_central_dirichlet_solution() {
        let g = base_graph();
        let found = find_central_dirichlet(&g).unwrap();
        let sol = &found.solution;
        assert!(sol.k > PI);
        assert!(sol.k < REPULSIVE_KMAX_FACTOR * PI);
        assert_eq!(sol.nodal, vec![Some(1), Some(1), Some(1)]);
        sol.validate(1e-10).unwrap();
        assert!(sol.is_central_dirichlet(1e-10));
        // flux recomputed independently from the analytic profile slope
        let (spread, flux) = sol.matching_gaps().unwrap();
        assert!(spread.abs() <= 1e-10 * sol.amplitude());
        assert!(flux.abs() <= 1e-10 * sol.k * sol.k);
    }

    #[test]
    fn attractive_central_dirichlet_solution() {
        let g = attractive_graph();
        let found = find_central_dirichlet(&g).unwrap();
        let sol = &found.solution;
        assert!(sol.k > 0.0 && sol.k < PI / g.max_length());
        sol.validate(1e-10).unwrap();
        // the proof brackets: f(0) < 0 < f(π/ℓ_E)
        let sigma = &found.search.sigma;
        assert!(f_sigma_attractive(&g, sigma, 0.0).unwrap() < 0.0);
        assert!(f_sigma_attractive(&g, sigma, PI / g.max_length()).unwrap() > 0.0);
        assert_eq!(sol.nodal.iter().flatten().copied().collect::<Vec<_>>(), vec![1; 5]);
    }

    #[test]
    fn too_few_edges_rejected() {
        let single = StarGraph::new(&[1.0], REP).unwrap();
        assert!(matches!(find_central_dirichlet(&single), Err(GraphError::TooFewEdges { .. })));
        let two = StarGraph::new(&[1.0, 2.0], REP).unwrap();
        assert!(matches!(find_central_dirichlet(&two), Err(GraphError::TooFewEdges { .. })));
    }

    #[test]
    fn nodal_vector_construction() {
        let g = StarGraph::new(&[1.0, 2.4, 4.5], REP).unwrap();
        let found = find_central_dirichlet_with_nodal_vector(&g, &[1, 2, 3]).unwrap();
        let sol = &found.solution;
        assert_eq!(sol.nodal, vec![Some(1), Some(2), Some(3)]);
        sol.validate(1e-10).unwrap();
        // reduced core equals the plain base solve
        let base = find_central_dirichlet(&base_graph()).unwrap();
        assert!((sol.k - base.solution.k).abs() <= 1e-10 * base.solution.k);
        // trivial nodal vector reduces to the plain construction
        let same = find_central_dirichlet_with_nodal_vector(&base_graph(), &[1, 1, 1]).unwrap();
        assert!((same.solution.k - base.solution.k).abs() <= 1e-12 * base.solution.k);
        // per-edge m of the n = (1,2,3) solve agrees with the base solve's
        for (a, b) in sol.profiles.iter().zip(&base.solution.profiles) {
            assert!((a.m - b.m).abs() <= 1e-9 * b.m.max(1e-12));
        }
    }

    #[test]
    fn nodal_vector_rejects_duplicate_fractions() {
        let g = StarGraph::new(&[1.0, 2.0, 3.0], REP).unwrap();
        assert!(matches!(
            find_central_dirichlet_with_nodal_vector(&g, &[1, 2, 3]),
            Err(GraphError::DuplicateReducedLength { .. })
        ));
        assert!(matches!(
            find_central_dirichlet_with_nodal_vector(&g, &[1, 2]),
            Err(GraphError::NodalVectorMismatch { .. })
        ));
        assert!(matches!(
            find_central_dirichlet_with_nodal_vector(&g, &[1, 0, 2]),
            Err(GraphError::BadNodalCount)
        ));
    }

    #[test]
    fn nodal_positions_match_wavelength_grid() {
        let g = StarGraph::new(&[1.0, 2.4, 4.5], REP).unwrap();
        let found = find_central_dirichlet_with_nodal_vector(&g, &[1, 2, 3]).unwrap();
        let sol = &found.solution;
        for (e, p) in sol.profiles.iter().enumerate() {
            let lam = interval::wavelength(sol.g, p.m, sol.k).unwrap();
            // nodes measured from the boundary at multiples of Λ/2
            for j in 0..=p.n {
                let x = p.length - j as f64 * lam / 2.0;
                assert!(x > -1e-9);
                let v = sol.edge_value(e, x.max(0.0)).unwrap();
                assert!(v.abs() < 1e-9 * sol.amplitude());
            }
        }
    }

    #[test]
    fn equal_pair_reduction() {
        let g = StarGraph::new(&[1.0, 1.0, 1.2, 1.5, 2.0], REP).unwrap();
        let (reduced, pairs) = reduce_equal_pairs(&g).unwrap();
        assert_eq!(reduced.lengths(), &[1.2, 1.5, 2.0]);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].indices, (0, 1));
        assert_eq!(pairs[0].sigma, (1, -1));
        // all-distinct graph reduces to itself
        let (same, none) = reduce_equal_pairs(&base_graph()).unwrap();
        assert_eq!(same.lengths(), base_graph().lengths());
        assert!(none.is_empty());
        // too small after reduction
        let tiny = StarGraph::new(&[1.0, 1.0, 2.0], REP).unwrap();
        assert!(matches!(
            reduce_equal_pairs(&tiny),
            Err(GraphError::ReducedGraphTooSmall { remaining: 1 })
        ));
    }

    #[test]
    fn equal_pair_extension_with_admissible_pair() {
        // pair of long edges added to the base graph: the base root k₀ ≈ 3.17
        // exceeds π/2, so the pair carries a single-domain profile
        let g = StarGraph::new(&[1.0, 1.2, 1.5, 2.0, 2.0], REP).unwrap();
        let full = solve_with_equal_pairs(&g).unwrap();
        full.solution.validate(1e-10).unwrap();
        let base = find_central_dirichlet(&base_graph()).unwrap();
        assert!((full.solution.k - base.solution.k).abs() < 1e-12 * base.solution.k);
        // pair edges share m and carry opposite signs
        let p3 = &full.solution.profiles[3];
        let p4 = &full.solution.profiles[4];
        assert_eq!(p3.m, p4.m);
        assert_eq!(p3.sigma, -p4.sigma);
    }

    #[test]
    fn equal_pair_extension_can_be_inadmissible() {
        // the reduced graph (1.2, 1.5, 2) has its root below π/1, so a pair
        // of unit edges cannot carry any repulsive node-at-centre profile
        let g = StarGraph::new(&[1.0, 1.0, 1.2, 1.5, 2.0], REP).unwrap();
        let (reduced, pairs) = reduce_equal_pairs(&g).unwrap();
        let base = find_central_dirichlet(&reduced).unwrap();
        assert!(base.search.k_root < PI);
        assert!(matches!(
            extend_with_pairs(&g, &base, &pairs),
            Err(GraphError::PairInadmissible { .. })
        ));
    }

    #[test]
    fn attractive_equal_pair_extension_picks_higher_domain_count() {
        // attractive: a pair longer than every reduced edge still extends,
        // with the nodal count raised until k < nπ/ℓ
        let g = StarGraph::new(&[0.891, 0.9, 0.99, 1.0, 1.01, 2.3, 2.3], ATT).unwrap();
        let full = solve_with_equal_pairs(&g).unwrap();
        full.solution.validate(1e-10).unwrap();
        let pair_n = full.solution.profiles.last().unwrap().n;
        assert!(pair_n >= 1);
    }

    #[test]
    fn nodal_totals_follow_the_counting_identities() {
        let base = find_central_dirichlet(&base_graph()).unwrap();
        let summary = nodal_counts(&base.solution).unwrap();
        assert!(summary.central_dirichlet);
        assert_eq!(summary.per_edge, vec![Some(1); 3]);
        assert_eq!(summary.points, Some(4));
        assert_eq!(summary.domains, Some(3));
        let g = StarGraph::new(&[1.0, 2.4, 4.5], REP).unwrap();
        let cor = find_central_dirichlet_with_nodal_vector(&g, &[1, 2, 3]).unwrap();
        let summary = nodal_counts(&cor.solution).unwrap();
        assert_eq!(summary.domains, Some(6));
        assert_eq!(summary.points, Some(7));
    }

    #[test]
    fn nodal_counts_match_grid_scan() {
        // sign changes of the sampled wavefunction against the analytic count
        let solutions = [
            find_central_dirichlet(&base_graph()).unwrap(),
            find_central_dirichlet(&attractive_graph()).unwrap(),
            find_central_dirichlet_with_nodal_vector(
                &StarGraph::new(&[1.0, 2.4, 4.5], REP).unwrap(),
                &[1, 2, 3],
            )
            .unwrap(),
            find_central_dirichlet_with_nodal_vector(
                &StarGraph::new(&[0.9, 2.0, 3.3], REP).unwrap(),
                &[1, 2, 3],
            )
            .unwrap(),
            find_central_dirichlet_with_nodal_vector(
                // sorted lengths put the doubled edge last
                &StarGraph::new(&[2.0 * 0.891, 0.9, 0.99, 1.0, 1.01], ATT).unwrap(),
                &[1, 1, 1, 1, 2],
            )
            .unwrap(),
        ];
        for found in &solutions {
            let sol = &found.solution;
            for (e, p) in sol.profiles.iter().enumerate() {
                let samples = 10_000;
                let mut changes = 0u32;
                let mut last = sol.edge_value(e, p.length * 0.5 / samples as f64).unwrap();
                for i in 1..samples {
                    let x = p.length * (i as f64 + 0.5) / samples as f64;
                    let v = sol.edge_value(e, x).unwrap();
                    if v.signum() != last.signum() {
                        changes += 1;
                    }
                    last = v;
                }
                // interior sign changes = domains - 1
                assert_eq!(changes, p.n - 1, "edge {e} of {:?}", sol.profiles);
            }
        }
    }

    #[test]
    fn rescaling_lengths_rescales_k_only() {
        let lambda = 2.7;
        let g1 = base_graph();
        let g2 = StarGraph::new(&[lambda, 1.2 * lambda, 1.5 * lambda], REP).unwrap();
        let s1 = find_central_dirichlet(&g1).unwrap();
        let s2 = find_central_dirichlet(&g2).unwrap();
        assert!((s2.solution.k - s1.solution.k / lambda).abs() < 1e-9 * s1.solution.k);
        for (a, b) in s1.solution.profiles.iter().zip(&s2.solution.profiles) {
            assert!((a.m - b.m).abs() < 1e-9 * a.m.max(1e-9));
        }
        assert_eq!(s1.solution.nodal, s2.solution.nodal);
    }
}
