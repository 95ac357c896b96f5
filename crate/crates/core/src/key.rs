//! Cipher keys: validation, generation and health screening.

use crate::analysis::chi_square_uniform;
use crate::error::{Error, Result};
use crate::keystream::{cml_step, quantize_raw, CmlState};
use crate::maps::{LogisticParams, MapParams, X_CAP};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// Largest map degree a key may carry.
pub const MAX_DEGREE: u32 = 4096;
/// Range admitted for the map control parameters `a1`, `a2`.
pub const A_RANGE: (f64, f64) = (0.25, 4.0);
/// Upper bound for both warm-up counts.
pub const MAX_WARMUP: u32 = 1_000_000;

pub const DEFAULT_N_LOGISTIC: u32 = 100;
pub const DEFAULT_N_BURN: u32 = 200;

/// Logistic seeds that fall onto short cycles or into the fixed point at 0.
const DEGENERATE_SEEDS: [f64; 3] = [0.25, 0.5, 0.75];

/// How the coupling strength evolves along the keystream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EpsMode {
    /// Computed once from the logistic warm-up, then held.
    #[default]
    Fixed,
    /// Advanced by one logistic step after every lattice step.
    PerStep,
}

/// Which diffusion rule the cipher applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CipherMode {
    /// `C = (K1 xor P) xor (K2 xor P)` exactly as written; plaintext cancels.
    PaperLiteral,
    /// `C = P xor K1 xor K2`, an invertible stream cipher.
    #[default]
    Repaired,
}

impl fmt::Display for EpsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EpsMode::Fixed => "fixed",
            EpsMode::PerStep => "per_step",
        })
    }
}

impl FromStr for EpsMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "fixed" => Ok(EpsMode::Fixed),
            "per_step" => Ok(EpsMode::PerStep),
            other => Err(format!("unknown eps_mode `{other}` (fixed|per_step)")),
        }
    }
}

impl fmt::Display for CipherMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CipherMode::PaperLiteral => "paper_literal",
            CipherMode::Repaired => "repaired",
        })
    }
}

impl FromStr for CipherMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "paper_literal" | "literal" => Ok(CipherMode::PaperLiteral),
            "repaired" => Ok(CipherMode::Repaired),
            other => Err(format!(
                "unknown cipher_mode `{other}` (paper_literal|repaired)"
            )),
        }
    }
}

/// The complete secret key.
///
/// Fields are public so tests and experiments can build deliberately
/// degenerate keys; everything that consumes a key for encryption calls
/// [`CipherKey::validate`] first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CipherKey {
    /// Lattice seed of site X.
    pub x0: f64,
    /// Lattice seed of site Y.
    pub y0: f64,
    pub p1: MapParams,
    pub p2: MapParams,
    pub lp: LogisticParams,
    /// Logistic iterations producing the coupling strength.
    pub n_logistic: u32,
    /// Lattice iterations discarded before the first mask.
    pub n_burn: u32,
    pub eps_mode: EpsMode,
    pub cipher_mode: CipherMode,
}

/// The parameter window `1/N < a < N` outside which `0` or `inf` attracts.
fn ergodic_window(n: u32) -> (f64, f64) {
    let n = n as f64;
    ((1.0 / n).max(A_RANGE.0), n.min(A_RANGE.1))
}

fn in_window(a: f64, n: u32) -> bool {
    let n = n as f64;
    a > 1.0 / n && a < n && (A_RANGE.0..=A_RANGE.1).contains(&a)
}

impl CipherKey {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidKey(msg));
        for (name, v) in [("x0", self.x0), ("y0", self.y0)] {
            if !(v > 0.0 && v < 1.0) {
                return bad(format!("{name} = {v} outside (0, 1)"));
            }
        }
        if self.x0 == self.y0 {
            return bad("x0 == y0 locks both lattice sites together".into());
        }
        for (name, p) in [("1", &self.p1), ("2", &self.p2)] {
            if !(2..=MAX_DEGREE).contains(&p.n()) {
                return bad(format!("n{name} = {} outside [2, {MAX_DEGREE}]", p.n()));
            }
            if !in_window(p.a(), p.n()) {
                let (lo, hi) = ergodic_window(p.n());
                return bad(format!(
                    "a{name} = {} outside the chaotic window ({lo}, {hi}) for n{name} = {}",
                    p.a(),
                    p.n()
                ));
            }
        }
        if DEGENERATE_SEEDS.contains(&self.lp.x0()) {
            return bad(format!("logistic seed {} is degenerate", self.lp.x0()));
        }
        if !(1..=MAX_WARMUP).contains(&self.n_logistic) {
            return bad(format!(
                "n_logistic = {} outside [1, {MAX_WARMUP}]",
                self.n_logistic
            ));
        }
        if self.n_burn > MAX_WARMUP {
            return bad(format!(
                "n_burn = {} outside [0, {MAX_WARMUP}]",
                self.n_burn
            ));
        }
        Ok(())
    }

    /// Draws a valid key that passes [`health_check`].
    pub fn generate<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let key = draw(rng);
            if key.validate().is_ok() && matches!(health_check(&key), Ok(None)) {
                return key;
            }
        }
    }
}

fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let v: f64 = rng.random();
        if v > 0.0 {
            return v;
        }
    }
}

fn open_range<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    loop {
        let v = rng.random_range(lo..hi);
        if v > lo {
            return v;
        }
    }
}

fn draw<R: Rng + ?Sized>(rng: &mut R) -> CipherKey {
    let mut params = || {
        let n = rng.random_range(2..=12u32);
        let (lo, hi) = ergodic_window(n);
        MapParams::new(open_range(rng, lo, hi), n).expect("window is positive")
    };
    let p1 = params();
    let p2 = params();
    let r = open_range(
        rng,
        crate::maps::LOGISTIC_R_MIN,
        crate::maps::LOGISTIC_R_MAX,
    );
    let lp = LogisticParams::new(r, open_unit(rng)).expect("drawn inside bounds");
    CipherKey {
        x0: open_unit(rng),
        y0: open_unit(rng),
        p1,
        p2,
        lp,
        n_logistic: DEFAULT_N_LOGISTIC,
        n_burn: DEFAULT_N_BURN,
        eps_mode: EpsMode::Fixed,
        cipher_mode: CipherMode::Repaired,
    }
}

/// Steps examined by [`health_check`] after the burn-in.
pub const HEALTH_STEPS: usize = 4096;
/// Chi-square bound for the combined mask byte (0.1% critical value, 255 dof).
pub const HEALTH_CHI_SQUARE: f64 = 330.52;

/// Ways a key can produce a useless keystream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Degeneracy {
    /// The two sites coincide, so every combined mask is zero from here on.
    Synchronized { step: u64 },
    /// A site sat at the cap on consecutive steps.
    StuckAtCap { step: u64 },
    /// The combined mask byte is far from uniform.
    Biased { chi_square: f64 },
}

/// Runs the lattice past burn-in and looks for known failure modes.
pub fn health_check(key: &CipherKey) -> Result<Option<Degeneracy>> {
    let mut state = CmlState::new(key)?;
    for _ in 0..key.n_burn {
        state = cml_step(&state, key);
    }
    let mut counts = [0u64; 256];
    let mut prev_capped = false;
    for _ in 0..HEALTH_STEPS {
        state = cml_step(&state, key);
        if state.x == state.y {
            return Ok(Some(Degeneracy::Synchronized { step: state.step }));
        }
        let capped = state.x >= X_CAP || state.y >= X_CAP;
        if capped && prev_capped {
            return Ok(Some(Degeneracy::StuckAtCap { step: state.step }));
        }
        prev_capped = capped;
        let byte = (quantize_raw(state.x, 1 << 16) ^ quantize_raw(state.y, 1 << 16)) as u8;
        counts[byte as usize] += 1;
    }
    let chi_square = chi_square_uniform(&counts);
    if chi_square > HEALTH_CHI_SQUARE {
        return Ok(Some(Degeneracy::Biased { chi_square }));
    }
    Ok(None)
}
