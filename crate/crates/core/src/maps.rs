//! Chaotic map kernels.
//!
//! Two families live here. The rational maps [`phi1`] and [`phi2`] act on
//! `[0, 1]` and are written through Chebyshev polynomials. Their conjugates
//! under `h(x) = (1 - x) / x` are the trigonometric maps [`f1`] and [`f2`] on
//! `[0, inf)`, which drive the coupled lattice:
//!
//! ```text
//! f1(x) = tan^2(N atan(sqrt x)) / a^2
//! f2(x) = cot^2(N atan(1 / sqrt x)) / a^2
//! ```
//!
//! With `x = cos^2(t)` one has `h(x) = tan^2(t)`, so `f1(h(x)) = h(phi1(x))`
//! holds exactly when `phi1` uses `T_N(cos t) = cos(N t)`. For the second map
//! `x = sin^2(t)` and the matching polynomial is
//! `sin(N t) = sqrt(x) * U_{N-1}(sqrt(1 - x))`.
//!
//! All transcendental functions go through `libm` so that results are
//! bit-identical on every target.

use crate::error::{domain, Error, Result};
use std::f64::consts::{FRAC_PI_2, PI};

/// Values at or beyond this bound (including poles) are replaced by it.
pub const X_CAP: f64 = 1e15;

/// Smallest state admitted where a map needs a strictly positive input.
pub const MIN_STATE: f64 = 1e-12;

/// Distance to a pole of `tan`/`cot` below which the cap is returned.
const POLE_TOLERANCE: f64 = 1e-12;

/// Control parameter `a` and degree `N` of one chaotic map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    a: f64,
    n: u32,
}

impl MapParams {
    pub fn new(a: f64, n: u32) -> Result<Self> {
        if !(a.is_finite() && a > 0.0) {
            return Err(domain("MapParams", a, "a > 0, finite"));
        }
        if n < 1 {
            return Err(domain("MapParams", n as f64, "n >= 1"));
        }
        Ok(Self { a, n })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Lower (exclusive) bound of the logistic rate.
pub const LOGISTIC_R_MIN: f64 = 3.99996;
/// Upper (exclusive) bound of the logistic rate.
pub const LOGISTIC_R_MAX: f64 = 4.0;

/// Rate `r` and seed `x0` of the logistic map `x -> r x (1 - x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticParams {
    r: f64,
    x0: f64,
}

impl LogisticParams {
    pub fn new(r: f64, x0: f64) -> Result<Self> {
        if !(r > LOGISTIC_R_MIN && r < LOGISTIC_R_MAX) {
            return Err(domain("LogisticParams", r, "3.99996 < r < 4"));
        }
        if !(x0 > 0.0 && x0 < 1.0) {
            return Err(domain("LogisticParams", x0, "0 < x0 < 1"));
        }
        Ok(Self { r, x0 })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }
}

/// Chebyshev polynomial of the first kind by three-term recurrence.
pub fn chebyshev_t(n: u32, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => x,
        _ => {
            let (mut prev, mut cur) = (1.0, x);
            for _ in 1..n {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Chebyshev polynomial of the second kind by three-term recurrence.
pub fn chebyshev_u(n: u32, x: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0 * x,
        _ => {
            let (mut prev, mut cur) = (1.0, 2.0 * x);
            for _ in 1..n {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

// s2 is a squared cosine or sine; rounding in the recurrence can push it
// a few ulps past 1
fn rational(s2: f64, a: f64) -> f64 {
    let s2 = s2.min(1.0);
    let a2 = a * a;
    (a2 * s2 / (1.0 + (a2 - 1.0) * s2)).min(1.0)
}

fn check_unit(op: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(domain(op, x, "[0, 1]"))
    }
}

/// First rational map: `a^2 T^2 / (1 + (a^2 - 1) T^2)` with `T = T_N(sqrt x)`.
pub fn phi1(x: f64, p: &MapParams) -> Result<f64> {
    check_unit("phi1", x)?;
    let t = chebyshev_t(p.n, libm::sqrt(x));
    Ok(rational(t * t, p.a))
}

/// Second rational map: `a^2 S^2 / (1 + (a^2 - 1) S^2)` with
/// `S = sqrt(x) U_{N-1}(sqrt(1 - x))`, i.e. `S = sin(N t)` for `x = sin^2 t`.
pub fn phi2(x: f64, p: &MapParams) -> Result<f64> {
    check_unit("phi2", x)?;
    let s = libm::sqrt(x) * chebyshev_u(p.n - 1, libm::sqrt(1.0 - x));
    Ok(rational(s * s, p.a))
}

fn cap(v: f64) -> f64 {
    if v.is_finite() && v <= X_CAP {
        v
    } else {
        X_CAP
    }
}

// Unchecked kernels shared by the public wrappers and the lattice update.

pub(crate) fn f1_raw(x: f64, p: &MapParams) -> f64 {
    let arg = p.n as f64 * libm::atan(libm::sqrt(x));
    // nearest odd multiple of pi/2
    let k = ((arg / FRAC_PI_2 - 1.0) / 2.0).round();
    if (arg - (2.0 * k + 1.0) * FRAC_PI_2).abs() < POLE_TOLERANCE {
        return X_CAP;
    }
    let t = libm::tan(arg);
    cap(t * t / (p.a * p.a))
}

pub(crate) fn f2_raw(x: f64, p: &MapParams) -> f64 {
    let x = if x == 0.0 { MIN_STATE } else { x };
    let arg = p.n as f64 * libm::atan(1.0 / libm::sqrt(x));
    let k = (arg / PI).round();
    if (arg - k * PI).abs() < POLE_TOLERANCE {
        return X_CAP;
    }
    let t = libm::tan(arg);
    cap(1.0 / (p.a * p.a * t * t))
}

/// `tan^2(N atan(sqrt x)) / a^2`, capped at [`X_CAP`] near poles.
pub fn f1(x: f64, p: &MapParams) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(domain("f1", x, "[0, inf), finite"));
    }
    Ok(f1_raw(x, p))
}

/// `cot^2(N atan(1 / sqrt x)) / a^2`, capped at [`X_CAP`] near poles.
///
/// An input of exactly zero is evaluated at [`MIN_STATE`].
pub fn f2(x: f64, p: &MapParams) -> Result<f64> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(domain("f2", x, "[0, inf), finite"));
    }
    Ok(f2_raw(x, p))
}

/// The conjugacy `h(x) = (1 - x) / x`, mapping `(0, 1]` onto `[0, inf)`.
pub fn conjugacy_h(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(domain("conjugacy_h", x, "(0, 1]"));
    }
    Ok((1.0 - x) / x)
}

/// Inverse of [`conjugacy_h`]: `1 / (1 + y)`.
pub fn conjugacy_h_inv(y: f64) -> Result<f64> {
    if !(y.is_finite() && y >= 0.0) {
        return Err(domain("conjugacy_h_inv", y, "[0, inf), finite"));
    }
    Ok(1.0 / (1.0 + y))
}

pub(crate) fn logistic_raw(x: f64, r: f64) -> f64 {
    (r * x * (1.0 - x)).clamp(MIN_STATE, 1.0 - MIN_STATE)
}

/// One logistic step `r x (1 - x)`, clamped into `[MIN_STATE, 1 - MIN_STATE]`.
pub fn logistic_step(x: f64, p: &LogisticParams) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain {
            op: "logistic_step",
            value: x,
            domain: "(0, 1)",
        });
    }
    Ok(logistic_raw(x, p.r))
}
