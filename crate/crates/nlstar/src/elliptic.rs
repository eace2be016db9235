//! Elliptic integrals in Jacobi form and Jacobi elliptic functions.
//!
//! Conventions used throughout the crate:
//!
//! ```text
//! F(x|m)   = ∫₀ˣ du / (√(1-u²) √(1-m u²))          0 ≤ x ≤ 1, m ≤ 1
//! K(m)     = F(1|m)
//! E(x|m)   = ∫₀ˣ √(1-m u²) / √(1-u²) du
//! Π(x|a,m) = ∫₀ˣ du / (√(1-u²) √(1-m u²) (1-a u²))  a ≤ 1
//! ```
//!
//! with `sn(·,m)` the inverse of `F(·|m)` on `[0, K(m)]`, extended to the
//! real line by `sn(K+x) = sn(K-x)`, `sn(-x) = -sn(x)` and period `4K(m)`;
//! `cn` is the continuous root of `cn² = 1 - sn²` with `cn(0) = 1` and
//! `dn = √(1 - m sn²)`.
//!
//! Translation to NIST conventions: set `x = sin φ`, `m = k²`, `a = α²`.
//! The parameter here is always `m`, never the modulus `k`.
//!
//! Integrals are evaluated through the Carlson symmetric forms R_F, R_C,
//! R_D, R_J with the standard duplication iteration (Carlson, Numerische
//! Mathematik 33, 1979), which is accurate to a few ulp over the whole
//! admissible range, including negative `m` and `a`. The Jacobi functions
//! use the descending arithmetic-geometric-mean recursion (A&S 16.4).

use thiserror::Error;

/// Numerical-domain failures of the elliptic routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EllipticError {
    /// An argument is outside the range where the integral is defined.
    #[error("{name} = {value} outside admissible range {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },
    /// The integral diverges for the requested arguments.
    #[error("integral diverges at {name} = {value}")]
    Divergence { name: &'static str, value: f64 },
}

type Result<T> = std::result::Result<T, EllipticError>;

fn check(cond: bool, name: &'static str, value: f64, range: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(EllipticError::Domain { name, value, range })
    }
}

// ---------------------------------------------------------------------------
// Carlson symmetric forms
// ---------------------------------------------------------------------------

/// Carlson's R_F(x, y, z). Arguments nonnegative, at most one zero.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0 && z >= 0.0);
    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * f64::EPSILON).powf(-1.0 / 6.0)
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (mut xn, mut yn, mut zn, mut an) = (x, y, z, a0);
    let mut scale = 1.0;
    while q * scale > an.abs() {
        let (sx, sy, sz) = (xn.sqrt(), yn.sqrt(), zn.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        xn = 0.25 * (xn + lam);
        yn = 0.25 * (yn + lam);
        zn = 0.25 * (zn + lam);
        an = 0.25 * (an + lam);
        scale *= 0.25;
    }
    let dx = (a0 - x) * scale / an;
    let dy = (a0 - y) * scale / an;
    let dz = -(dx + dy);
    let e2 = dx * dy - dz * dz;
    let e3 = dx * dy * dz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / an.sqrt()
}

/// Carlson's degenerate form R_C(x, y) = R_F(x, y, y), y > 0.
pub fn carlson_rc(x: f64, y: f64) -> f64 {
    debug_assert!(x >= 0.0 && y > 0.0);
    let a0 = (x + 2.0 * y) / 3.0;
    let q = (3.0 * f64::EPSILON).powf(-1.0 / 8.0) * (a0 - x).abs();
    let (mut xn, mut yn, mut an) = (x, y, a0);
    let mut scale = 1.0;
    while q * scale > an.abs() {
        let lam = 2.0 * xn.sqrt() * yn.sqrt() + yn;
        xn = 0.25 * (xn + lam);
        yn = 0.25 * (yn + lam);
        an = 0.25 * (an + lam);
        scale *= 0.25;
    }
    let s = (y - a0) * scale / an;
    let p = 1.0
        + s * s
            * (0.3
                + s * (1.0 / 7.0
                    + s * (0.375 + s * (9.0 / 22.0 + s * (159.0 / 208.0 + s * 9.0 / 8.0)))));
    p / an.sqrt()
}

/// Carlson's R_D(x, y, z) = R_J(x, y, z, z). Requires z > 0, x + y > 0.
pub fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0 && z > 0.0 && x + y > 0.0);
    let a0 = (x + y + 3.0 * z) / 5.0;
    let q = (0.25 * f64::EPSILON).powf(-1.0 / 6.0)
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let (mut xn, mut yn, mut zn, mut an) = (x, y, z, a0);
    let mut scale = 1.0;
    let mut sum = 0.0;
    while q * scale > an.abs() {
        let (sx, sy, sz) = (xn.sqrt(), yn.sqrt(), zn.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        sum += scale / (sz * (zn + lam));
        xn = 0.25 * (xn + lam);
        yn = 0.25 * (yn + lam);
        zn = 0.25 * (zn + lam);
        an = 0.25 * (an + lam);
        scale *= 0.25;
    }
    let dx = (a0 - x) * scale / an;
    let dy = (a0 - y) * scale / an;
    let dz = -(dx + dy) / 3.0;
    let e2 = dx * dy - 6.0 * dz * dz;
    let e3 = (3.0 * dx * dy - 8.0 * dz * dz) * dz;
    let e4 = 3.0 * (dx * dy - dz * dz) * dz * dz;
    let e5 = dx * dy * dz * dz * dz;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    scale * series / (an * an.sqrt()) + 3.0 * sum
}

/// Carlson's R_J(x, y, z, p) for p > 0.
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> f64 {
    debug_assert!(x >= 0.0 && y >= 0.0 && z >= 0.0 && p > 0.0);
    let a0 = (x + y + z + 2.0 * p) / 5.0;
    let delta = (p - x) * (p - y) * (p - z);
    let q = (0.25 * f64::EPSILON).powf(-1.0 / 6.0)
        * (a0 - x)
            .abs()
            .max((a0 - y).abs())
            .max((a0 - z).abs())
            .max((a0 - p).abs());
    let (mut xn, mut yn, mut zn, mut pn, mut an) = (x, y, z, p, a0);
    let mut scale = 1.0;
    let mut sum = 0.0;
    while q * scale > an.abs() {
        let (sx, sy, sz, sp) = (xn.sqrt(), yn.sqrt(), zn.sqrt(), pn.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        let den = (sp + sx) * (sp + sy) * (sp + sz);
        let en = delta * scale * scale * scale / (den * den);
        sum += scale * carlson_rc(1.0, 1.0 + en) / den;
        xn = 0.25 * (xn + lam);
        yn = 0.25 * (yn + lam);
        zn = 0.25 * (zn + lam);
        pn = 0.25 * (pn + lam);
        an = 0.25 * (an + lam);
        scale *= 0.25;
    }
    let dx = (a0 - x) * scale / an;
    let dy = (a0 - y) * scale / an;
    let dz = (a0 - z) * scale / an;
    let dp = -(dx + dy + dz) / 2.0;
    let e2 = dx * dy + dy * dz + dz * dx - 3.0 * dp * dp;
    let e3 = dx * dy * dz + 2.0 * e2 * dp + 4.0 * dp * dp * dp;
    let e4 = (2.0 * dx * dy * dz + e2 * dp + 3.0 * dp * dp * dp) * dp;
    let e5 = dx * dy * dz * dp * dp;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    scale * series / (an * an.sqrt()) + 6.0 * sum
}

// ---------------------------------------------------------------------------
// Legendre-form integrals in the Jacobi-argument convention
// ---------------------------------------------------------------------------

/// Threshold above which K(m) switches to its logarithmic asymptotics.
const K_LOG_THRESHOLD: f64 = 1.0 - 1e-10;

/// Incomplete elliptic integral of the first kind F(x|m).
pub fn ellip_f(x: f64, m: f64) -> Result<f64> {
    check((0.0..=1.0).contains(&x), "x", x, "[0, 1]")?;
    check(m <= 1.0, "m", m, "(-inf, 1]")?;
    if x == 1.0 {
        return ellip_k(m);
    }
    if m == 1.0 {
        // F(x|1) = atanh(x)
        return Ok(x.atanh());
    }
    let c = (1.0 - x) * (1.0 + x);
    Ok(x * carlson_rf(c, f64::mul_add(-m, x * x, 1.0), 1.0))
}

/// Complete elliptic integral of the first kind K(m) = F(1|m).
///
/// Strictly increasing in m, diverging logarithmically as m → 1⁻. Very
/// close to the singularity (m > 1 - 1e-10) the expansion
/// K(1-δ) = -ln(δ)/2 + 2 ln 2 + O(δ ln δ) is used.
pub fn ellip_k(m: f64) -> Result<f64> {
    check(m <= 1.0, "m", m, "(-inf, 1)")?;
    if m == 1.0 {
        return Err(EllipticError::Divergence { name: "m", value: m });
    }
    if m > K_LOG_THRESHOLD {
        let delta = 1.0 - m;
        return Ok(-0.5 * delta.ln() + 2.0 * std::f64::consts::LN_2);
    }
    Ok(carlson_rf(0.0, 1.0 - m, 1.0))
}

/// Incomplete elliptic integral of the second kind E(x|m).
pub fn ellip_e(x: f64, m: f64) -> Result<f64> {
    check((0.0..=1.0).contains(&x), "x", x, "[0, 1]")?;
    check(m <= 1.0, "m", m, "(-inf, 1]")?;
    if m == 1.0 {
        // E(x|1) = ∫₀ˣ du = x
        return Ok(x);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let c = (1.0 - x) * (1.0 + x);
    let d = f64::mul_add(-m, x * x, 1.0);
    Ok(x * carlson_rf(c, d, 1.0) - m * x * x * x * carlson_rd(c, d, 1.0) / 3.0)
}

/// Incomplete elliptic integral of the third kind Π(x|a,m).
pub fn ellip_pi(x: f64, a: f64, m: f64) -> Result<f64> {
    check((0.0..=1.0).contains(&x), "x", x, "[0, 1]")?;
    check(m <= 1.0, "m", m, "(-inf, 1]")?;
    check(a <= 1.0, "a", a, "(-inf, 1]")?;
    if x == 1.0 && a == 1.0 {
        return Err(EllipticError::Divergence { name: "a", value: a });
    }
    if x == 1.0 && m == 1.0 {
        return Err(EllipticError::Divergence { name: "m", value: m });
    }
    if a == 0.0 {
        return ellip_f(x, m);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let c = (1.0 - x) * (1.0 + x);
    let d = f64::mul_add(-m, x * x, 1.0);
    let p = f64::mul_add(-a, x * x, 1.0);
    Ok(x * carlson_rf(c, d, 1.0) + a * x * x * x * carlson_rj(c, d, 1.0, p) / 3.0)
}

/// K(m) - E(1|m), evaluated without cancellation as (m/3)·R_D(0, 1-m, 1).
///
/// Vanishes like πm/4 as m → 0; computing the difference directly would
/// lose all significance there.
pub fn k_minus_e(m: f64) -> Result<f64> {
    check(m < 1.0, "m", m, "(-inf, 1)")?;
    Ok(m * carlson_rd(0.0, 1.0 - m, 1.0) / 3.0)
}

/// Π(1|m,m) - K(m), evaluated without cancellation as (m/3)·R_J(0, 1-m, 1, 1-m).
pub fn pi_mm_minus_k(m: f64) -> Result<f64> {
    check((0.0..1.0).contains(&m) || m == 0.0, "m", m, "[0, 1)")?;
    if m == 0.0 {
        return Ok(0.0);
    }
    Ok(m * carlson_rj(0.0, 1.0 - m, 1.0, 1.0 - m) / 3.0)
}

// ---------------------------------------------------------------------------
// Jacobi elliptic functions
// ---------------------------------------------------------------------------

const AGM_MAX: usize = 24;

fn check_jacobi_m(m: f64) -> Result<()> {
    check((0.0..=1.0).contains(&m), "m", m, "[0, 1]")
}

/// Jacobi sn, cn, dn evaluated together at (x, m) for m ∈ [0, 1].
///
/// Descending AGM (A&S 16.4): build aₙ, cₙ until cₙ is negligible, seed the
/// amplitude with φₙ = 2ⁿ aₙ x and unwind via
/// φₙ₋₁ = (φₙ + asin(cₙ sin φₙ / aₙ)) / 2. Then sn = sin φ₀, cn = cos φ₀
/// and dn = √(1 - m sn²).
pub fn jacobi_sn_cn_dn(x: f64, m: f64) -> Result<(f64, f64, f64)> {
    check_jacobi_m(m)?;
    if m == 0.0 {
        return Ok((x.sin(), x.cos(), 1.0));
    }
    if m == 1.0 {
        let sech = 1.0 / x.cosh();
        return Ok((x.tanh(), sech, sech));
    }
    let mut a = [0.0f64; AGM_MAX + 1];
    let mut c = [0.0f64; AGM_MAX + 1];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = (1.0 - m).sqrt();
    let mut n = 0;
    while c[n].abs() > f64::EPSILON * a[n] && n < AGM_MAX {
        n += 1;
        a[n] = 0.5 * (a[n - 1] + b);
        c[n] = 0.5 * (a[n - 1] - b);
        b = (a[n - 1] * b).sqrt();
    }
    let mut phi = (1u64 << n) as f64 * a[n] * x;
    for i in (1..=n).rev() {
        let s = (c[i] / a[i] * phi.sin()).clamp(-1.0, 1.0);
        phi = 0.5 * (phi + s.asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = f64::mul_add(-m, sn * sn, 1.0).max(0.0).sqrt();
    Ok((sn, cn, dn))
}

/// Jacobi elliptic sine sn(x, m).
pub fn jacobi_sn(x: f64, m: f64) -> Result<f64> {
    Ok(jacobi_sn_cn_dn(x, m)?.0)
}

/// Jacobi elliptic cosine cn(x, m).
pub fn jacobi_cn(x: f64, m: f64) -> Result<f64> {
    Ok(jacobi_sn_cn_dn(x, m)?.1)
}

/// Jacobi delta amplitude dn(x, m) = √(1 - m sn²(x, m)).
pub fn jacobi_dn(x: f64, m: f64) -> Result<f64> {
    Ok(jacobi_sn_cn_dn(x, m)?.2)
}

/// Derivatives (sn', cn', dn') = (cn·dn, -sn·dn, -m·sn·cn) at (x, m).
pub fn jacobi_derivatives(x: f64, m: f64) -> Result<(f64, f64, f64)> {
    let (sn, cn, dn) = jacobi_sn_cn_dn(x, m)?;
    Ok((cn * dn, -sn * dn, -m * sn * cn))
}

// ---------------------------------------------------------------------------
// Integrals of squared Jacobi functions (Jacobi-epsilon relatives)
// ---------------------------------------------------------------------------

/// ∫₀ʸ sn²(t, m) dt for y ≥ 0, m ∈ [0, 1).
///
/// On the principal range [0, K] this is x³ R_D(1-x², 1-m x², 1) / 3 with
/// x = sn(y), which stays fully accurate as m → 0 (no (y - ε)/m
/// cancellation). Extended by sn²(2K - t) = sn²(t) and 2K-periodicity.
pub fn sn_squared_integral(y: f64, m: f64) -> Result<f64> {
    check(m < 1.0, "m", m, "[0, 1)")?;
    check(y >= 0.0, "y", y, "[0, inf)")?;
    if m == 0.0 {
        return Ok(0.5 * y - 0.25 * (2.0 * y).sin());
    }
    let kc = ellip_k(m)?;
    let half_period = 2.0 * kc;
    let per_period = carlson_rd(0.0, 1.0 - m, 1.0) * 2.0 / 3.0;
    let j = (y / half_period).floor();
    let r = (y - j * half_period).clamp(0.0, half_period);
    let principal = |t: f64| -> Result<f64> {
        let x = jacobi_sn(t, m)?.clamp(-1.0, 1.0);
        let c = (1.0 - x) * (1.0 + x);
        let d = f64::mul_add(-m, x * x, 1.0);
        Ok(x * x * x * carlson_rd(c, d, 1.0) / 3.0)
    };
    let partial = if r <= kc {
        principal(r)?
    } else {
        per_period - principal(half_period - r)?
    };
    Ok(j * per_period + partial)
}

/// ∫₀ʸ (sn/dn)²(t, m) dt for y ≥ 0, m ∈ [0, 1).
///
/// Uses the antiderivative (y - ∫sn² - sn·cn/dn) / (1-m).
pub fn sd_squared_integral(y: f64, m: f64) -> Result<f64> {
    check(m < 1.0, "m", m, "[0, 1)")?;
    let s2 = sn_squared_integral(y, m)?;
    let (sn, cn, dn) = jacobi_sn_cn_dn(y, m)?;
    Ok((y - s2 - sn * cn / dn) / (1.0 - m))
}
