//! The two-site coupled map lattice and its quantized mask streams.
//!
//! Each step updates both sites from the pre-step state:
//!
//! ```text
//! x' = (1 - eps) f1(x) + eps f2(y)
//! y' = (1 - eps) f1(y) + eps f2(x)
//! ```
//!
//! and emits `floor(x' * 1e14) mod M`, `floor(y' * 1e14) mod M` with `M` the
//! pixel count of the target image.

use crate::error::{Error, Result};
use crate::key::{CipherKey, EpsMode};
use crate::maps::{f1_raw, f2_raw, logistic_raw, logistic_step, LogisticParams, X_CAP};
use std::fmt::Write as _;

/// Scale applied to a state before flooring it into an integer mask.
pub const MASK_SCALE: f64 = 1e14;
/// Largest admissible mask modulus.
pub const MAX_MODULUS: u32 = 1 << 31;

/// Runs the logistic map `n_logistic` times from the seed in `lp`.
pub fn derive_epsilon(lp: &LogisticParams, n_logistic: u32) -> Result<f64> {
    if n_logistic == 0 {
        return Err(Error::InvalidKey("n_logistic must be at least 1".into()));
    }
    let mut x = lp.x0();
    for _ in 0..n_logistic {
        x = logistic_step(x, lp)?;
    }
    Ok(x)
}

/// Evolving lattice state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmlState {
    pub x: f64,
    pub y: f64,
    /// Coupling strength.
    pub eps: f64,
    /// Current point of the logistic orbit that supplies `eps`.
    pub logistic_x: f64,
    pub step: u64,
}

impl CmlState {
    /// Seeds the lattice from the key; `eps` comes from the logistic warm-up.
    pub fn new(key: &CipherKey) -> Result<Self> {
        let eps = derive_epsilon(&key.lp, key.n_logistic)?;
        Ok(Self {
            x: key.x0,
            y: key.y0,
            eps,
            logistic_x: eps,
            step: 0,
        })
    }
}

/// One simultaneous update of both sites.
pub fn cml_step(s: &CmlState, key: &CipherKey) -> CmlState {
    let (p1, p2) = (&key.p1, &key.p2);
    let e = s.eps;
    let x = (1.0 - e) * f1_raw(s.x, p1) + e * f2_raw(s.y, p2);
    let y = (1.0 - e) * f1_raw(s.y, p1) + e * f2_raw(s.x, p2);
    let (eps, logistic_x) = match key.eps_mode {
        EpsMode::Fixed => (s.eps, s.logistic_x),
        EpsMode::PerStep => {
            let next = logistic_raw(s.logistic_x, key.lp.r());
            (next, next)
        }
    };
    CmlState {
        x: x.min(X_CAP),
        y: y.min(X_CAP),
        eps,
        logistic_x,
        step: s.step + 1,
    }
}

pub(crate) fn quantize_raw(x: f64, modulus: u32) -> u32 {
    // x <= 1e15 keeps the product below 1e29 < 2^128
    let scaled = (x * MASK_SCALE).floor() as u128;
    (scaled % modulus as u128) as u32
}

/// `floor(x * 1e14) mod modulus`, reduced in exact integer arithmetic.
pub fn quantize_mask(x: f64, modulus: u32) -> Result<u32> {
    if !(x.is_finite() && (0.0..=X_CAP).contains(&x)) {
        return Err(Error::Domain {
            op: "quantize_mask",
            value: x,
            domain: "[0, 1e15]",
        });
    }
    if !(2..=MAX_MODULUS).contains(&modulus) {
        return Err(Error::Domain {
            op: "quantize_mask",
            value: modulus as f64,
            domain: "modulus in [2, 2^31]",
        });
    }
    Ok(quantize_raw(x, modulus))
}

/// Quantized masks of one lattice step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaskPair {
    pub mx: u32,
    pub my: u32,
}

impl MaskPair {
    /// `(mx mod 256) xor (my mod 256)`, the byte both cipher modes end up using.
    pub fn combined_byte(&self) -> u8 {
        (self.mx as u8) ^ (self.my as u8)
    }
}

/// Endless mask generator for one key; burn-in happens in [`Keystream::new`].
#[derive(Debug, Clone)]
pub struct Keystream {
    key: CipherKey,
    state: CmlState,
    modulus: u32,
}

impl Keystream {
    pub fn new(key: &CipherKey, modulus: u32) -> Result<Self> {
        key.validate()?;
        if !(2..=MAX_MODULUS).contains(&modulus) {
            return Err(Error::Domain {
                op: "keystream",
                value: modulus as f64,
                domain: "modulus in [2, 2^31]",
            });
        }
        let mut state = CmlState::new(key)?;
        for _ in 0..key.n_burn {
            state = cml_step(&state, key);
        }
        Ok(Self {
            key: *key,
            state,
            modulus,
        })
    }

    pub fn state(&self) -> &CmlState {
        &self.state
    }
}

impl Iterator for Keystream {
    type Item = MaskPair;

    fn next(&mut self) -> Option<MaskPair> {
        self.state = cml_step(&self.state, &self.key);
        Some(MaskPair {
            mx: quantize_raw(self.state.x, self.modulus),
            my: quantize_raw(self.state.y, self.modulus),
        })
    }
}

/// The first `count` mask pairs for `key`.
pub fn keystream(key: &CipherKey, count: usize, modulus: u32) -> Result<Vec<MaskPair>> {
    Ok(Keystream::new(key, modulus)?.take(count).collect())
}

/// Serializes masks as `modulus count` followed by one `mx my` line per pair.
pub fn format_vectors(modulus: u32, masks: &[MaskPair]) -> String {
    let mut out = format!("{modulus} {}\n", masks.len());
    for m in masks {
        let _ = writeln!(out, "{} {}", m.mx, m.my);
    }
    out
}

/// Parses the format written by [`format_vectors`].
pub fn parse_vectors(text: &str) -> Result<(u32, Vec<MaskPair>)> {
    let err = |line: usize, reason: &str| Error::VectorFormat {
        line,
        reason: reason.to_string(),
    };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [modulus, count] = fields[..] else {
        return Err(err(1, "expected `modulus count`"));
    };
    let modulus: u32 = modulus.parse().map_err(|_| err(1, "bad modulus"))?;
    let count: usize = count.parse().map_err(|_| err(1, "bad count"))?;
    let mut masks = Vec::with_capacity(count);
    for (i, line) in lines {
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [mx, my] = fields[..] else {
            return Err(err(i + 1, "expected `mx my`"));
        };
        let mx: u32 = mx.parse().map_err(|_| err(i + 1, "bad mx"))?;
        let my: u32 = my.parse().map_err(|_| err(i + 1, "bad my"))?;
        if mx >= modulus || my >= modulus {
            return Err(err(i + 1, "mask not below modulus"));
        }
        masks.push(MaskPair { mx, my });
    }
    if masks.len() != count {
        return Err(err(count + 1, "pair count differs from header"));
    }
    Ok((modulus, masks))
}
