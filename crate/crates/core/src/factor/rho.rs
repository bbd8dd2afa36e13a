//! Pollard's rho with Brent's cycle detection and batched gcd.

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::natural::Natural;

/// Number of `|x - y|` products accumulated between gcd evaluations.
const BATCH: u64 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("iteration budget exhausted before a factor was found")]
pub struct BudgetExhausted;

/// Arithmetic modulo the number being split.
trait RhoRing {
    type Elem: Clone + PartialEq;

    /// `y^2 + c mod n`.
    fn step(&self, y: &Self::Elem, c: &Self::Elem) -> Self::Elem;
    /// `q * |x - y| mod n`.
    fn accumulate(&self, q: &Self::Elem, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn gcd_n(&self, v: &Self::Elem) -> Self::Elem;
    fn gcd_diff(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_one(&self, v: &Self::Elem) -> bool;
    fn is_modulus(&self, v: &Self::Elem) -> bool;
}

struct Word(u64);

impl RhoRing for Word {
    type Elem = u64;

    fn step(&self, y: &u64, c: &u64) -> u64 {
        ((*y as u128 * *y as u128 + *c as u128) % self.0 as u128) as u64
    }

    fn accumulate(&self, q: &u64, x: &u64, y: &u64) -> u64 {
        ((*q as u128 * x.abs_diff(*y) as u128) % self.0 as u128) as u64
    }

    fn gcd_n(&self, v: &u64) -> u64 {
        v.gcd(&self.0)
    }

    fn gcd_diff(&self, x: &u64, y: &u64) -> u64 {
        x.abs_diff(*y).gcd(&self.0)
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_one(&self, v: &u64) -> bool {
        *v == 1
    }

    fn is_modulus(&self, v: &u64) -> bool {
        *v == self.0 || *v == 0
    }
}

struct Big(BigUint);

impl Big {
    fn abs_diff(x: &BigUint, y: &BigUint) -> BigUint {
        if x >= y {
            x - y
        } else {
            y - x
        }
    }
}

impl RhoRing for Big {
    type Elem = BigUint;

    fn step(&self, y: &BigUint, c: &BigUint) -> BigUint {
        (y * y + c) % &self.0
    }

    fn accumulate(&self, q: &BigUint, x: &BigUint, y: &BigUint) -> BigUint {
        (q * Big::abs_diff(x, y)) % &self.0
    }

    fn gcd_n(&self, v: &BigUint) -> BigUint {
        v.gcd(&self.0)
    }

    fn gcd_diff(&self, x: &BigUint, y: &BigUint) -> BigUint {
        Big::abs_diff(x, y).gcd(&self.0)
    }

    fn one(&self) -> BigUint {
        BigUint::one()
    }

    fn is_one(&self, v: &BigUint) -> bool {
        v.is_one()
    }

    fn is_modulus(&self, v: &BigUint) -> bool {
        v == &self.0 || v.is_zero()
    }
}

/// One Brent run with fixed start `y0` and increment `c`. `None` when the
/// run degenerates (gcd hits `n`) or the budget runs out.
fn brent<R: RhoRing>(ring: &R, y0: R::Elem, c: R::Elem, budget: &mut u64) -> Option<R::Elem> {
    let mut y = y0;
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = ring.one();
    let mut g = ring.one();
    let mut r: u64 = 1;

    while ring.is_one(&g) {
        x = y.clone();
        for _ in 0..r {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            y = ring.step(&y, &c);
        }
        let mut k = 0;
        while k < r && ring.is_one(&g) {
            ys = y.clone();
            let batch = BATCH.min(r - k);
            if *budget < batch {
                *budget = 0;
                return None;
            }
            *budget -= batch;
            for _ in 0..batch {
                y = ring.step(&y, &c);
                q = ring.accumulate(&q, &x, &y);
            }
            g = ring.gcd_n(&q);
            k += BATCH;
        }
        r *= 2;
    }

    if ring.is_modulus(&g) {
        // The batch overshot; replay it one step at a time.
        loop {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            ys = ring.step(&ys, &c);
            g = ring.gcd_diff(&x, &ys);
            if !ring.is_one(&g) {
                break;
            }
        }
    }
    if ring.is_modulus(&g) {
        None
    } else {
        Some(g)
    }
}

/// Finds a nontrivial factor of the composite `n`, retrying with fresh
/// random parameters drawn from `seed` until one is found. Each function
/// evaluation costs one unit of `budget`.
pub fn pollard_rho_with_budget(
    n: &Natural,
    seed: u64,
    budget: &mut u64,
) -> Result<Natural, BudgetExhausted> {
    if n.is_even() && n.to_u64() != Some(2) {
        return Ok(Natural::from(2u32));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if let Some(m) = n.to_u64() {
        if m < 4 {
            return Err(BudgetExhausted);
        }
        let ring = Word(m);
        while *budget > 0 {
            let y0 = rng.gen_range(1..m);
            let c = rng.gen_range(1..m - 1);
            if let Some(f) = brent(&ring, y0, c, budget) {
                return Ok(Natural::from(f));
            }
        }
    } else {
        let m = n.as_biguint().clone();
        let one = BigUint::one();
        let upper = &m - 1u32;
        let ring = Big(m);
        while *budget > 0 {
            let y0 = rng.gen_biguint_range(&one, &upper);
            let c = rng.gen_biguint_range(&one, &upper);
            if let Some(f) = brent(&ring, y0, c, budget) {
                return Ok(Natural::from(f));
            }
        }
    }
    Err(BudgetExhausted)
}

/// [`pollard_rho_with_budget`] with a fresh budget of `max_iterations`.
pub fn pollard_rho(
    n: &Natural,
    seed: u64,
    max_iterations: u64,
) -> Result<Natural, BudgetExhausted> {
    let mut budget = max_iterations;
    pollard_rho_with_budget(n, seed, &mut budget)
}
