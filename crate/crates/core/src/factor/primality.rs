//! Miller–Rabin primality testing.
//!
//! Below [`DETERMINISTIC_BOUND`] the first thirteen primes form a complete
//! witness set, so the answer is exact. Above it, 64 pseudo-random rounds
//! are run and a passing number is reported as [`Primality::ProbablePrime`].

use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::natural::Natural;

/// Every composite below this number fails Miller–Rabin for some base in [`WITNESSES`].
pub const DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// 41 is needed: 318665857834031151167461 is a strong pseudoprime to every base up to 37.
pub const WITNESSES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Number of random bases used above [`DETERMINISTIC_BOUND`].
pub const PROBABLE_ROUNDS: usize = 64;

const BASE_SEED: u64 = 0x005E_ED0F_C0D1_7150;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Primality {
    Composite,
    Prime,
    /// Passed every random round; error probability below `4^-64`.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exact primality for any `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn deterministic_bound() -> &'static BigUint {
    static BOUND: OnceLock<BigUint> = OnceLock::new();
    BOUND.get_or_init(|| BigUint::from(DETERMINISTIC_BOUND))
}

/// One Miller–Rabin round; `true` means `a` is not a witness of compositeness.
fn strong_probable_prime(
    n: &BigUint,
    n_minus_1: &BigUint,
    d: &BigUint,
    s: u64,
    a: &BigUint,
) -> bool {
    let mut x = a.modpow(d, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
    }
    false
}

pub fn primality(n: &Natural) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    let n = n.as_biguint();
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;

    if n < deterministic_bound() {
        let all_pass = WITNESSES
            .iter()
            .all(|&a| strong_probable_prime(n, &n_minus_1, &d, s, &BigUint::from(a)));
        return if all_pass {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }

    // Bases depend only on n, so the verdict is reproducible.
    let low = n.iter_u64_digits().next().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(BASE_SEED ^ low);
    let two = BigUint::from(2u32);
    let upper = &n_minus_1 - 1u32;
    if !strong_probable_prime(n, &n_minus_1, &d, s, &two) {
        return Primality::Composite;
    }
    for _ in 0..PROBABLE_ROUNDS {
        let a = rng.gen_biguint_range(&two, &upper);
        if !strong_probable_prime(n, &n_minus_1, &d, s, &a) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

/// Whether `n` is prime (0 and 1 are not). Exact below [`DETERMINISTIC_BOUND`].
pub fn is_prime(n: &Natural) -> bool {
    primality(n).is_prime()
}
