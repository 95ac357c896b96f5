//! Key-space accounting.
//!
//! Each real parameter resolved to `10^-p` contributes `p log2(10)` bits and
//! each integer parameter `log2(hi - lo + 1)`. Stages combine by product, so
//! the bit counts add.

use crate::key::{MAX_DEGREE, MAX_WARMUP};
use std::fmt::Write as _;

/// Bit count the key space is commonly claimed to exceed.
pub const REFERENCE_CLAIM_LOG2: f64 = 302.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamRange {
    /// A real number resolved at the report's precision.
    Real,
    /// Inclusive integer range.
    Integer { lo: u64, hi: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KeyRole {
    /// Chaotic-map and coupling parameters.
    Confusion,
    /// Lattice seeds and warm-up driving the pixel masks.
    Diffusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KeyParam {
    pub name: &'static str,
    pub range: ParamRange,
    pub role: KeyRole,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeySchema {
    pub params: Vec<KeyParam>,
}

impl Default for KeySchema {
    /// The parameters of a [`CipherKey`](crate::key::CipherKey) with the ranges
    /// its validation enforces.
    fn default() -> Self {
        use KeyRole::*;
        use ParamRange::*;
        let p = |name, range, role| KeyParam { name, range, role };
        let degree = Integer {
            lo: 2,
            hi: MAX_DEGREE as u64,
        };
        Self {
            params: vec![
                p("x0", Real, Diffusion),
                p("y0", Real, Diffusion),
                p("a1", Real, Confusion),
                p("a2", Real, Confusion),
                p("logistic_x0", Real, Confusion),
                p("logistic_r", Real, Confusion),
                p("n1", degree, Confusion),
                p("n2", degree, Confusion),
                p(
                    "n_logistic",
                    Integer {
                        lo: 1,
                        hi: MAX_WARMUP as u64,
                    },
                    Confusion,
                ),
                p(
                    "n_burn",
                    Integer {
                        lo: 0,
                        hi: MAX_WARMUP as u64,
                    },
                    Diffusion,
                ),
            ],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeySpaceReport {
    pub precision_exponent: u32,
    /// `(parameter, log2 cardinality)` in schema order.
    pub entries: Vec<(KeyParam, f64)>,
    pub confusion_log2: f64,
    pub diffusion_log2: f64,
    pub total_log2: f64,
}

pub fn keyspace_report(precision_exponent: u32, schema: &KeySchema) -> KeySpaceReport {
    let real_bits = precision_exponent as f64 * std::f64::consts::LOG2_10;
    let entries: Vec<(KeyParam, f64)> = schema
        .params
        .iter()
        .map(|&p| {
            let bits = match p.range {
                ParamRange::Real => real_bits,
                ParamRange::Integer { lo, hi } => ((hi - lo + 1) as f64).log2(),
            };
            (p, bits)
        })
        .collect();
    let sum = |role| {
        entries
            .iter()
            .filter(|(p, _)| p.role == role)
            .map(|(_, b)| b)
            .sum::<f64>()
    };
    let confusion_log2 = sum(KeyRole::Confusion);
    let diffusion_log2 = sum(KeyRole::Diffusion);
    KeySpaceReport {
        precision_exponent,
        entries,
        confusion_log2,
        diffusion_log2,
        total_log2: confusion_log2 + diffusion_log2,
    }
}

impl KeySpaceReport {
    /// Bits contributed by real-valued parameters alone.
    pub fn real_log2(&self) -> f64 {
        self.entries
            .iter()
            .filter(|(p, _)| p.range == ParamRange::Real)
            .map(|(_, b)| b)
            .sum()
    }

    pub fn exceeds_reference(&self) -> bool {
        self.total_log2 > REFERENCE_CLAIM_LOG2
    }

    pub fn to_key_value(&self) -> String {
        let mut out = format!("precision_exponent={}\n", self.precision_exponent);
        for (p, bits) in &self.entries {
            let _ = writeln!(out, "param.{}.log2={bits:.6}", p.name);
        }
        let _ = write!(
            out,
            "real_log2={:.6}\nconfusion_log2={:.6}\ndiffusion_log2={:.6}\ntotal_log2={:.6}\n\
             reference_claim_log2={REFERENCE_CLAIM_LOG2:.1}\nexceeds_reference={}\n",
            self.real_log2(),
            self.confusion_log2,
            self.diffusion_log2,
            self.total_log2,
            self.exceeds_reference()
        );
        out
    }

    pub fn to_table(&self) -> String {
        let mut out = format!(
            "Key space at precision 1e-{}\n{:<14}{:<11}{:>12}\n",
            self.precision_exponent, "parameter", "stage", "log2 size"
        );
        for (p, bits) in &self.entries {
            let role = match p.role {
                KeyRole::Confusion => "confusion",
                KeyRole::Diffusion => "diffusion",
            };
            let _ = writeln!(out, "{:<14}{:<11}{:>12.3}", p.name, role, bits);
        }
        let _ = write!(
            out,
            "{:<25}{:>12.3}\n{:<25}{:>12.3}\n{:<25}{:>12.3}\n{:<25}{:>12.3}\n\
             {:<25}{:>12}\n{}\n",
            "real parameters only",
            self.real_log2(),
            "confusion stage",
            self.confusion_log2,
            "diffusion stage",
            self.diffusion_log2,
            "total",
            self.total_log2,
            "reference claim",
            "> 302",
            if self.exceeds_reference() {
                "total exceeds the reference claim"
            } else {
                "total does NOT exceed the reference claim"
            }
        );
        out.push_str(
            "note: stage key spaces multiply (log2 sizes add); a sum S = S1 + S2 \
             of the raw sizes would understate the total.\n",
        );
        out
    }
}
