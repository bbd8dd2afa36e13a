//! Prime factorization: trial division, perfect-power detection and
//! Pollard–Brent rho, with an optional persistent result cache.

mod cache;
mod primality;
mod rho;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::{Mutex, OnceLock};

use num_traits::ToPrimitive;

use crate::natural::{divide_exact, Natural};

pub use cache::{CacheError, FactorCache, FactorCacheEntry};
pub use primality::{
    is_prime, is_prime_u64, primality, Primality, DETERMINISTIC_BOUND, PROBABLE_ROUNDS, WITNESSES,
};
pub use rho::{pollard_rho, pollard_rho_with_budget, BudgetExhausted};

/// Primes below this bound are removed by trial division before rho runs.
pub const TRIAL_DIVISION_LIMIT: u32 = 1_000_000;

/// Default total number of rho iterations allowed per input.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Total rho iterations available for one input.
    pub budget: u64,
    pub seed: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            budget: DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("0 has no prime factorization")]
    Zero,
}

/// Prime decomposition of a positive integer.
///
/// When the budget runs out, the part that could not be split is kept in
/// `unresolved` so that the product of all parts still equals the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    input: Natural,
    factors: Vec<(Natural, u32)>,
    unresolved: Option<Natural>,
}

impl Factorization {
    /// Builds a factorization from prime powers in any order, merging repeats.
    ///
    /// Panics if the parts do not multiply back to `input`.
    pub fn from_parts(
        input: Natural,
        primes: impl IntoIterator<Item = (Natural, u32)>,
        unresolved: Option<Natural>,
    ) -> Self {
        let mut merged: BTreeMap<Natural, u32> = BTreeMap::new();
        for (p, e) in primes {
            if e > 0 {
                *merged.entry(p).or_default() += e;
            }
        }
        let unresolved = unresolved.filter(|u| !u.is_one());
        let f = Factorization {
            input,
            factors: merged.into_iter().collect(),
            unresolved,
        };
        assert_eq!(
            f.product(),
            f.input,
            "factorization does not reproduce its input"
        );
        f
    }

    pub fn input(&self) -> &Natural {
        &self.input
    }

    /// `(prime, multiplicity)` pairs, primes strictly ascending.
    pub fn factors(&self) -> &[(Natural, u32)] {
        &self.factors
    }

    pub fn unresolved(&self) -> Option<&Natural> {
        self.unresolved.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.unresolved.is_none()
    }

    /// Primes repeated according to multiplicity, ascending.
    pub fn primes_with_multiplicity(&self) -> Vec<Natural> {
        self.factors
            .iter()
            .flat_map(|(p, e)| std::iter::repeat_n(p.clone(), *e as usize))
            .collect()
    }

    pub fn product(&self) -> Natural {
        let primes: Natural = self.factors.iter().map(|(p, e)| p.pow(*e)).product();
        match &self.unresolved {
            Some(u) => primes * u,
            None => primes,
        }
    }
}

/// Renders as `3^2 · 757 · 333667`; the empty product is `1` and an
/// unresolved cofactor is shown in brackets.
impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self
            .factors
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect();
        if let Some(u) = &self.unresolved {
            terms.push(format!("[{u}]"));
        }
        if terms.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&terms.join(" · "))
        }
    }
}

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit];
        let mut primes = Vec::with_capacity(78_498);
        for i in 2..limit {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Result of stripping small primes.
struct Stripped {
    found: Vec<(Natural, u32)>,
    cofactor: Natural,
    /// The cofactor is 1 or prime (trial division passed its square root).
    settled: bool,
}

fn strip_word(mut m: u64, found: &mut Vec<(Natural, u32)>) -> (u64, bool) {
    for &p in small_primes() {
        let p = p as u64;
        if p * p > m {
            return (m, true);
        }
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            found.push((Natural::from(p), e));
        }
    }
    let limit = TRIAL_DIVISION_LIMIT as u64;
    (m, m < limit * limit)
}

fn strip_small_primes(n: &Natural) -> Stripped {
    let mut found = Vec::new();
    let mut m = n.as_biguint().clone();
    for &p in small_primes() {
        if let Some(w) = m.to_u64() {
            let (rest, settled) = strip_word(w, &mut found);
            return Stripped {
                found,
                cofactor: Natural::from(rest),
                settled,
            };
        }
        let mut e = 0;
        while (&m % p).to_u32() == Some(0) {
            m /= p;
            e += 1;
        }
        if e > 0 {
            found.push((Natural::from(p), e));
        }
    }
    Stripped {
        found,
        cofactor: Natural::from(m),
        settled: false,
    }
}

/// Largest `e >= 2` and base `b` with `b^e = n`, if any.
fn perfect_power(n: &Natural) -> Option<(Natural, u32)> {
    let n = n.as_biguint();
    let max_exp = u32::try_from(n.bits()).ok()?;
    (2..=max_exp).rev().find_map(|e| {
        let root = n.nth_root(e);
        (root.pow(e) == *n && root > num_bigint::BigUint::from(1u32))
            .then(|| (Natural::from(root), e))
    })
}

/// Factors `n` into primes.
///
/// Primes below [`TRIAL_DIVISION_LIMIT`] are removed first; what remains is
/// split by perfect-power detection and Pollard–Brent rho. If the rho budget
/// runs out the result is returned with an unresolved cofactor.
pub fn factorize(n: &Natural, config: &FactorConfig) -> Result<Factorization, FactorError> {
    if n.is_zero() {
        return Err(FactorError::Zero);
    }
    let Stripped {
        mut found,
        cofactor,
        settled,
    } = strip_small_primes(n);

    let mut unresolved = Natural::one();
    if settled {
        if !cofactor.is_one() {
            found.push((cofactor, 1));
        }
    } else {
        let mut budget = config.budget;
        let mut attempt = 0u64;
        let mut pending = vec![(cofactor, 1u32)];
        while let Some((c, mult)) = pending.pop() {
            if c.is_one() {
                continue;
            }
            if is_prime(&c) {
                found.push((c, mult));
                continue;
            }
            if let Some((base, e)) = perfect_power(&c) {
                pending.push((base, mult * e));
                continue;
            }
            let seed = config.seed.wrapping_add(attempt);
            attempt += 1;
            match pollard_rho_with_budget(&c, seed, &mut budget) {
                Ok(d) => {
                    let rest = divide_exact(&c, &d).expect("rho factor divides its input");
                    pending.push((d, mult));
                    pending.push((rest, mult));
                }
                Err(BudgetExhausted) => {
                    unresolved = unresolved * c.pow(mult);
                }
            }
        }
    }
    Ok(Factorization::from_parts(
        n.clone(),
        found,
        Some(unresolved),
    ))
}

/// A proper divisor `1 < d < n`, or `None` when `n` is 1 or prime.
///
/// Trial division is tried first, so the smallest prime factor is returned
/// whenever it is below [`TRIAL_DIVISION_LIMIT`].
pub fn find_nontrivial_factor(
    n: &Natural,
    config: &FactorConfig,
) -> Result<Option<Natural>, BudgetExhausted> {
    if n.to_u64().is_some_and(|v| v < 4) {
        return Ok(None);
    }
    let big = n.as_biguint();
    for &p in small_primes() {
        if (big % p).to_u32() == Some(0) {
            let p = Natural::from(p);
            return Ok((&p != n).then_some(p));
        }
    }
    if is_prime(n) {
        return Ok(None);
    }
    if let Some((base, _)) = perfect_power(n) {
        return Ok(Some(base));
    }
    pollard_rho(n, config.seed, config.budget).map(Some)
}

/// Factorization front-end that consults and fills a [`FactorCache`].
#[derive(Debug)]
pub struct Factorizer {
    config: FactorConfig,
    cache: Mutex<FactorCache>,
}

impl Factorizer {
    /// A factorizer with an in-memory cache only.
    pub fn new(config: FactorConfig) -> Self {
        Factorizer {
            config,
            cache: Mutex::new(FactorCache::in_memory()),
        }
    }

    /// A factorizer backed by the cache file at `path`.
    ///
    /// If the file fails validation the factorizer falls back to an
    /// in-memory cache and the error is returned as a warning.
    pub fn with_cache_file(config: FactorConfig, path: &Path) -> (Self, Option<CacheError>) {
        let (cache, warning) = match FactorCache::open(path) {
            Ok(cache) => (cache, None),
            Err(e) => {
                log::warn!("ignoring factor cache {}: {e}", path.display());
                (FactorCache::in_memory(), Some(e))
            }
        };
        (
            Factorizer {
                config,
                cache: Mutex::new(cache),
            },
            warning,
        )
    }

    pub fn config(&self) -> &FactorConfig {
        &self.config
    }

    pub fn factorize(&self, n: &Natural) -> Result<Factorization, FactorError> {
        if let Some(hit) = self.cache.lock().expect("cache lock").get(n) {
            return Ok(hit);
        }
        let f = factorize(n, &self.config)?;
        if f.is_complete() {
            if let Err(e) = self.cache.lock().expect("cache lock").put(&f) {
                log::warn!("could not persist factorization of {n}: {e}");
            }
        }
        Ok(f)
    }
}
