//! On-disk form of a [`PuzzleTranscript`].
//!
//! One JSON object per file, fields in the order
//! `k, r, generator, big_number, steps, final`, every number a decimal
//! string. Missing answers are `null`.

use serde::{Deserialize, Serialize};

use crate::natural::Natural;
use crate::puzzle::{PuzzleError, PuzzleInstance, PuzzleTranscript, TranscriptStep};
use crate::repetition::{DigitGuard, Generator};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StepRecord {
    pub divisor: String,
    pub quotient: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranscriptRecord {
    pub k: String,
    pub r: String,
    pub generator: String,
    pub big_number: String,
    pub steps: Vec<StepRecord>,
    #[serde(rename = "final")]
    pub final_claim: Option<String>,
}

impl From<&PuzzleTranscript> for TranscriptRecord {
    fn from(t: &PuzzleTranscript) -> Self {
        let inst = t.instance();
        TranscriptRecord {
            k: inst.length().to_string(),
            r: inst.replication().to_string(),
            generator: inst.generator().to_string(),
            big_number: t.replicated().to_string(),
            steps: t
                .steps()
                .iter()
                .map(|s| StepRecord {
                    divisor: s.divisor.to_string(),
                    quotient: s.quotient.as_ref().map(Natural::to_string),
                })
                .collect(),
            final_claim: t.final_claim().map(Natural::to_string),
        }
    }
}

fn number(field: &str, s: &str) -> Result<Natural, PuzzleError> {
    s.parse()
        .map_err(|e| PuzzleError::malformed(field, format!("{e}")))
}

fn count(field: &str, s: &str) -> Result<usize, PuzzleError> {
    let n = number(field, s)?;
    n.to_u64()
        .and_then(|v| usize::try_from(v).ok())
        .filter(|&v| v > 0)
        .ok_or_else(|| PuzzleError::malformed(field, format!("{s} is not a positive count")))
}

impl TranscriptRecord {
    /// Rebuilds the transcript, checking the chain against `s(k, r)`.
    pub fn into_transcript(self, guard: DigitGuard) -> Result<PuzzleTranscript, PuzzleError> {
        let k = count("k", &self.k)?;
        let r = count("r", &self.r)?;
        let generator = Generator::parse(&self.generator)
            .map_err(|e| PuzzleError::malformed("generator", e.to_string()))?;
        if generator.length() != k {
            return Err(PuzzleError::malformed(
                "k",
                format!(
                    "generator {} has {} digits, not {k}",
                    self.generator,
                    generator.length()
                ),
            ));
        }
        let replicated = number("big_number", &self.big_number)?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            let divisor = number(&format!("steps[{i}].divisor"), &s.divisor)?;
            let quotient = s
                .quotient
                .as_deref()
                .map(|q| number(&format!("steps[{i}].quotient"), q))
                .transpose()?;
            steps.push(TranscriptStep { divisor, quotient });
        }
        let final_claim = self
            .final_claim
            .as_deref()
            .map(|q| number("final", q))
            .transpose()?;
        let chain = steps.iter().map(|s| s.divisor.clone()).collect();
        let instance = PuzzleInstance::new(generator, r, chain, guard).map_err(|e| match e {
            PuzzleError::InvalidInstance(reason) => PuzzleError::malformed("steps", reason),
            other => other,
        })?;
        PuzzleTranscript::new(instance, replicated, steps, final_claim)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("transcript serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, PuzzleError> {
        serde_json::from_str(text).map_err(|e| PuzzleError::malformed("transcript", e.to_string()))
    }
}

/// Serializes a transcript to its file text.
pub fn write_transcript(t: &PuzzleTranscript) -> String {
    TranscriptRecord::from(t).to_json()
}

/// Parses and validates transcript file text.
pub fn read_transcript(text: &str, guard: DigitGuard) -> Result<PuzzleTranscript, PuzzleError> {
    TranscriptRecord::from_json(text)?.into_transcript(guard)
}
