use crate::error::Result;
use crate::image::Image;
use std::fmt;
use std::str::FromStr;

/// Which pixels count towards NPCR.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NpcrDefinition {
    /// A pixel counts when the two ciphertexts differ there.
    #[default]
    Standard,
    /// A pixel counts when the two ciphertexts agree there.
    PaperInverted,
}

impl fmt::Display for NpcrDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Standard => "standard",
            Self::PaperInverted => "paper",
        })
    }
}

impl FromStr for NpcrDefinition {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "standard" => Ok(Self::Standard),
            "paper" | "paper_inverted" => Ok(Self::PaperInverted),
            other => Err(format!(
                "unknown NPCR definition `{other}` (standard|paper)"
            )),
        }
    }
}

/// Number of pixels change rate, in percent.
pub fn npcr(c1: &Image, c2: &Image, definition: NpcrDefinition) -> Result<f64> {
    c1.same_shape(c2)?;
    let changed = c1
        .flatten()
        .iter()
        .zip(c2.flatten())
        .filter(|(a, b)| a != b)
        .count();
    let counted = match definition {
        NpcrDefinition::Standard => changed,
        NpcrDefinition::PaperInverted => c1.len() - changed,
    };
    Ok(counted as f64 * 100.0 / c1.len() as f64)
}

/// Unified average changing intensity, in percent: mean `|c1 - c2| / 255`.
pub fn uaci(c1: &Image, c2: &Image) -> Result<f64> {
    c1.same_shape(c2)?;
    let sum: u64 = c1
        .flatten()
        .iter()
        .zip(c2.flatten())
        .map(|(&a, &b)| a.abs_diff(b) as u64)
        .sum();
    Ok(sum as f64 * 100.0 / (255.0 * c1.len() as f64))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffReport {
    pub npcr_percent: f64,
    pub uaci_percent: f64,
    pub definition: NpcrDefinition,
}

impl DiffReport {
    pub fn to_key_value(&self) -> String {
        format!(
            "npcr_definition={}\nnpcr_percent={:.6}\nuaci_percent={:.6}\n",
            self.definition, self.npcr_percent, self.uaci_percent
        )
    }
}

pub fn diff_report(c1: &Image, c2: &Image, definition: NpcrDefinition) -> Result<DiffReport> {
    Ok(DiffReport {
        npcr_percent: npcr(c1, c2, definition)?,
        uaci_percent: uaci(c1, c2)?,
        definition,
    })
}
