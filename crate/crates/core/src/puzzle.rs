//! Division-chain puzzles.
//!
//! A `k`-digit generator `g` is written out `r` times to give `n = g_r`.
//! Dividing `n` in turn by every prime factor of `s(k, r)` (the chain)
//! leaves `g`, with no remainder at any step and in any order.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::factor::{is_prime, FactorError, Factorization, Factorizer};
use crate::natural::{divide_exact, Natural};
use crate::repetition::{co_divisor, replicate, DigitGuard, Generator, RepetitionError};

/// Chains longer than this are sampled rather than fully permuted.
pub const MAX_ENUMERATED_CHAIN: usize = 8;

/// Number of shuffles yielded by [`permuted_chains`] for long chains.
pub const SAMPLED_PERMUTATIONS: usize = 1024;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ChainOrder {
    #[default]
    Ascending,
    /// Shuffled with the puzzle's seed.
    Shuffled,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PuzzleError {
    #[error(transparent)]
    Repetition(#[from] RepetitionError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error("could not fully factor s({k},{r}) within the budget ({factorization})")]
    BudgetExhausted {
        k: usize,
        r: usize,
        factorization: Factorization,
    },
    #[error("malformed transcript: {field}: {reason}")]
    MalformedTranscript { field: String, reason: String },
    #[error("invalid puzzle: {0}")]
    InvalidInstance(String),
}

impl PuzzleError {
    pub(crate) fn malformed(field: impl Into<String>, reason: impl Into<String>) -> Self {
        PuzzleError::MalformedTranscript {
            field: field.into(),
            reason: reason.into(),
        }
    }
}

/// A replicated number and the chain of primes that undoes the replication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuzzleInstance {
    generator: Generator,
    replication: usize,
    big_number: Natural,
    chain: Vec<Natural>,
}

impl PuzzleInstance {
    /// Checks that `chain` consists of primes whose product is `s(k, r)`.
    pub fn new(
        generator: Generator,
        replication: usize,
        chain: Vec<Natural>,
        guard: DigitGuard,
    ) -> Result<Self, PuzzleError> {
        let big_number = replicate(&generator, replication, guard)?.value().clone();
        let s = co_divisor(generator.length(), replication, guard)?;
        if let Some(d) = chain.iter().find(|d| !is_prime(d)) {
            return Err(PuzzleError::InvalidInstance(format!(
                "chain element {d} is not prime"
            )));
        }
        let product: Natural = chain.iter().product();
        if &product != s.value() {
            return Err(PuzzleError::InvalidInstance(format!(
                "chain multiplies to {product}, not s({},{replication}) = {}",
                generator.length(),
                s.value()
            )));
        }
        Ok(PuzzleInstance {
            generator,
            replication,
            big_number,
            chain,
        })
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn length(&self) -> usize {
        self.generator.length()
    }

    pub fn replication(&self) -> usize {
        self.replication
    }

    pub fn big_number(&self) -> &Natural {
        &self.big_number
    }

    pub fn chain(&self) -> &[Natural] {
        &self.chain
    }

    fn with_chain(&self, chain: Vec<Natural>) -> Self {
        PuzzleInstance {
            chain,
            ..self.clone()
        }
    }
}

/// Draws a `k`-digit generator (first digit 1-9, others 0-9).
pub fn random_generator(k: usize, rng: &mut impl Rng) -> Result<Generator, PuzzleError> {
    if k == 0 {
        return Err(RepetitionError::InvalidParameter("length must be at least 1".into()).into());
    }
    let mut digits = String::with_capacity(k);
    digits.push(char::from(b'0' + rng.gen_range(1..=9u8)));
    for _ in 1..k {
        digits.push(char::from(b'0' + rng.gen_range(0..=9u8)));
    }
    Ok(Generator::parse(&digits)?)
}

/// A fresh puzzle with a seeded random `k`-digit generator replicated `r` times.
pub fn new_puzzle(
    k: usize,
    r: usize,
    seed: u64,
    order: ChainOrder,
    factorizer: &Factorizer,
    guard: DigitGuard,
) -> Result<PuzzleInstance, PuzzleError> {
    let s = co_divisor(k, r, guard)?;
    let factorization = factorizer.factorize(s.value())?;
    if !factorization.is_complete() {
        return Err(PuzzleError::BudgetExhausted {
            k,
            r,
            factorization,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generator = random_generator(k, &mut rng)?;
    let mut chain = factorization.primes_with_multiplicity();
    if order == ChainOrder::Shuffled {
        chain.shuffle(&mut rng);
    }
    let big_number = replicate(&generator, r, guard)?.value().clone();
    Ok(PuzzleInstance {
        generator,
        replication: r,
        big_number,
        chain,
    })
}

/// The quotient after each division of the chain, ending in the generator.
/// With an empty chain this is just `[big_number]`.
///
/// Panics if a division is inexact, which the instance invariants rule out.
pub fn solve(instance: &PuzzleInstance) -> Vec<Natural> {
    if instance.chain.is_empty() {
        return vec![instance.big_number.clone()];
    }
    let mut current = instance.big_number.clone();
    instance
        .chain
        .iter()
        .map(|d| {
            current = divide_exact(&current, d)
                .unwrap_or_else(|e| panic!("inexact division by {d} in a valid puzzle: {e}"));
            current.clone()
        })
        .collect()
}

/// Where a transcript first went wrong.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailedAt {
    /// Relay position: step 0 is the replicated number, step `i` the
    /// quotient after `i` divisions (so `steps[i - 1]`).
    Step(usize),
    /// Every step was right but the final answer was not the generator.
    Final,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail {
        at: FailedAt,
        expected: Natural,
        /// `None` when no answer was written down.
        claimed: Option<Natural>,
    },
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// One division in a relay: the divisor handed over and the answer written down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscriptStep {
    pub divisor: Natural,
    pub quotient: Option<Natural>,
}

/// A puzzle with the answers written down by each participant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuzzleTranscript {
    instance: PuzzleInstance,
    replicated: Natural,
    steps: Vec<TranscriptStep>,
    final_claim: Option<Natural>,
}

impl PuzzleTranscript {
    /// Fails with `MalformedTranscript` if the step divisors are not the instance chain.
    /// `replicated` is the number as written down by the first participant.
    pub fn new(
        instance: PuzzleInstance,
        replicated: Natural,
        steps: Vec<TranscriptStep>,
        final_claim: Option<Natural>,
    ) -> Result<Self, PuzzleError> {
        if steps.len() != instance.chain.len() {
            return Err(PuzzleError::malformed(
                "steps",
                format!(
                    "{} steps for a chain of {} divisors",
                    steps.len(),
                    instance.chain.len()
                ),
            ));
        }
        if let Some(i) = steps
            .iter()
            .zip(&instance.chain)
            .position(|(s, d)| &s.divisor != d)
        {
            return Err(PuzzleError::malformed(
                format!("steps[{i}].divisor"),
                format!("expected {}, found {}", instance.chain[i], steps[i].divisor),
            ));
        }
        Ok(PuzzleTranscript {
            instance,
            replicated,
            steps,
            final_claim,
        })
    }

    /// The transcript handed out before anyone has divided.
    pub fn skeleton(instance: PuzzleInstance) -> Self {
        let steps = instance
            .chain
            .iter()
            .map(|d| TranscriptStep {
                divisor: d.clone(),
                quotient: None,
            })
            .collect();
        PuzzleTranscript {
            replicated: instance.big_number.clone(),
            instance,
            steps,
            final_claim: None,
        }
    }

    /// The transcript with every answer filled in correctly.
    pub fn solved(instance: PuzzleInstance) -> Self {
        let quotients = solve(&instance);
        let final_claim = quotients.last().cloned();
        let steps = instance
            .chain
            .iter()
            .zip(quotients)
            .map(|(d, q)| TranscriptStep {
                divisor: d.clone(),
                quotient: Some(q),
            })
            .collect();
        PuzzleTranscript {
            replicated: instance.big_number.clone(),
            instance,
            steps,
            final_claim,
        }
    }

    pub fn instance(&self) -> &PuzzleInstance {
        &self.instance
    }

    pub fn replicated(&self) -> &Natural {
        &self.replicated
    }

    pub fn set_replicated(&mut self, n: Natural) {
        self.replicated = n;
    }

    pub fn steps(&self) -> &[TranscriptStep] {
        &self.steps
    }

    pub fn steps_mut(&mut self) -> &mut [TranscriptStep] {
        &mut self.steps
    }

    pub fn final_claim(&self) -> Option<&Natural> {
        self.final_claim.as_ref()
    }

    pub fn set_final_claim(&mut self, claim: Option<Natural>) {
        self.final_claim = claim;
    }
}

/// Checks every written answer against exact division.
///
/// Reports the first wrong (or missing) answer; a wrong final answer is
/// reported only when all steps are right. Checking the final answer alone
/// is the classroom shortcut: it is right exactly when the chain was
/// carried out in full, because each step divides out one prime.
pub fn verify_transcript(t: &PuzzleTranscript) -> Verdict {
    if t.replicated != t.instance.big_number {
        return Verdict::Fail {
            at: FailedAt::Step(0),
            expected: t.instance.big_number.clone(),
            claimed: Some(t.replicated.clone()),
        };
    }
    let expected = solve(&t.instance);
    for (i, step) in t.steps.iter().enumerate() {
        if step.quotient.as_ref() != Some(&expected[i]) {
            return Verdict::Fail {
                at: FailedAt::Step(i + 1),
                expected: expected[i].clone(),
                claimed: step.quotient.clone(),
            };
        }
    }
    let g = t.instance.generator.value();
    if t.final_claim.as_ref() != Some(&g) {
        return Verdict::Fail {
            at: FailedAt::Final,
            expected: g,
            claimed: t.final_claim.clone(),
        };
    }
    Verdict::Pass
}

/// Same instance with the chain reordered.
///
/// Chains of up to [`MAX_ENUMERATED_CHAIN`] divisors yield every distinct
/// ordering once, in lexicographic order; longer chains yield
/// [`SAMPLED_PERMUTATIONS`] seeded shuffles.
pub fn permuted_chains(instance: &PuzzleInstance) -> ChainPermutations {
    permuted_chains_sampled(instance, SAMPLED_PERMUTATIONS, 0)
}

/// [`permuted_chains`] with an explicit sample size and seed for long chains.
pub fn permuted_chains_sampled(
    instance: &PuzzleInstance,
    samples: usize,
    seed: u64,
) -> ChainPermutations {
    let mut sorted = instance.chain.clone();
    sorted.sort();
    let mode = if sorted.len() <= MAX_ENUMERATED_CHAIN {
        Mode::Enumerate(Some(sorted))
    } else {
        Mode::Sample {
            rng: Box::new(ChaCha8Rng::seed_from_u64(seed)),
            remaining: samples,
            chain: sorted,
        }
    };
    ChainPermutations {
        base: instance.clone(),
        mode,
    }
}

#[derive(Debug)]
enum Mode {
    Enumerate(Option<Vec<Natural>>),
    Sample {
        rng: Box<ChaCha8Rng>,
        remaining: usize,
        chain: Vec<Natural>,
    },
}

/// Iterator returned by [`permuted_chains`].
#[derive(Debug)]
pub struct ChainPermutations {
    base: PuzzleInstance,
    mode: Mode,
}

/// Advances to the next lexicographic permutation; false after the last one.
fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|x| *x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

impl Iterator for ChainPermutations {
    type Item = PuzzleInstance;

    fn next(&mut self) -> Option<PuzzleInstance> {
        match &mut self.mode {
            Mode::Enumerate(state) => {
                let current = state.take()?;
                let mut following = current.clone();
                if next_permutation(&mut following) {
                    *state = Some(following);
                }
                Some(self.base.with_chain(current))
            }
            Mode::Sample {
                rng,
                remaining,
                chain,
            } => {
                if *remaining == 0 {
                    return None;
                }
                *remaining -= 1;
                let mut c = chain.clone();
                c.shuffle(rng);
                Some(self.base.with_chain(c))
            }
        }
    }
}
