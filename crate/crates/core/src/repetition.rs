//! Digit-string algebra of repetitive numbers.
//!
//! A repetitive number `n = g_r` is the decimal block `g` written `r` times
//! in a row. Writing `k` for the length of `g`, the identity
//! `n = g * s(k, r)` holds, where the co-divisor
//! `s(k, r) = 1 (0^{k-1} 1)^{r-1} = sum_{j<r} 10^{k j}`.

use std::fmt;
use std::str::FromStr;

use crate::natural::Natural;

/// Default upper bound on the number of decimal digits any constructed number may have.
pub const DEFAULT_DIGIT_GUARD: usize = 1_000_000;

/// Upper bound on the decimal length of numbers built by replication.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DigitGuard(usize);

impl DigitGuard {
    pub const fn new(max_digits: usize) -> Self {
        DigitGuard(max_digits)
    }

    pub const fn max_digits(self) -> usize {
        self.0
    }

    fn check(self, digits: Option<usize>) -> Result<usize, RepetitionError> {
        match digits {
            Some(d) if d <= self.0 => Ok(d),
            _ => Err(RepetitionError::LimitExceeded {
                digits,
                limit: self.0,
            }),
        }
    }
}

impl Default for DigitGuard {
    fn default() -> Self {
        DigitGuard(DEFAULT_DIGIT_GUARD)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RepetitionError {
    /// `digits` is `None` when the length itself overflows.
    #[error("result would have {} digits, above the limit of {limit}", .digits.map_or("too many".to_string(), |d| d.to_string()))]
    LimitExceeded { digits: Option<usize>, limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid digit string {0:?}: digits must be 0-9 with a nonzero first digit")]
    InvalidDigits(String),
}

/// Nonempty base-10 digit sequence whose first digit is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DigitString(String);

impl DigitString {
    pub fn new(s: &str) -> Result<Self, RepetitionError> {
        let valid = s.bytes().all(|b| b.is_ascii_digit())
            && s.as_bytes().first().is_some_and(|&b| b != b'0');
        if valid {
            Ok(DigitString(s.to_string()))
        } else {
            Err(RepetitionError::InvalidDigits(s.to_string()))
        }
    }

    /// Digits of a positive natural number.
    pub fn from_natural(n: &Natural) -> Result<Self, RepetitionError> {
        DigitString::new(&n.to_string())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self) -> Natural {
        self.0.parse().expect("digit string is canonical decimal")
    }
}

impl FromStr for DigitString {
    type Err = RepetitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DigitString::new(s)
    }
}

impl fmt::Display for DigitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// The block `g` that is replicated to form a repetitive number.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator(DigitString);

impl Generator {
    pub fn new(digits: DigitString) -> Self {
        Generator(digits)
    }

    pub fn parse(s: &str) -> Result<Self, RepetitionError> {
        DigitString::new(s).map(Generator)
    }

    pub fn from_natural(n: &Natural) -> Result<Self, RepetitionError> {
        DigitString::from_natural(n).map(Generator)
    }

    pub fn digits(&self) -> &DigitString {
        &self.0
    }

    /// Number of digits `k` of the generator.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn value(&self) -> Natural {
        self.0.value()
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A number `n = g_r` together with the generator and replication count that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepetitiveNumber {
    value: Natural,
    generator: Generator,
    replication: usize,
}

impl RepetitiveNumber {
    /// Pairs `value` with a claimed generator, checking that `value` really is `generator` repeated.
    pub fn from_parts(
        value: Natural,
        generator: Generator,
        replication: usize,
    ) -> Result<Self, RepetitionError> {
        if replication == 0 {
            return Err(RepetitionError::InvalidParameter(
                "replication must be at least 1".into(),
            ));
        }
        let digits = value.to_string();
        let k = generator.length();
        let matches = digits.len() == k * replication
            && digits
                .as_bytes()
                .chunks(k)
                .all(|block| block == generator.digits().as_str().as_bytes());
        if !matches {
            return Err(RepetitionError::InvalidParameter(format!(
                "{value} is not {generator} replicated {replication} times"
            )));
        }
        Ok(RepetitiveNumber {
            value,
            generator,
            replication,
        })
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn generator(&self) -> &Generator {
        &self.generator
    }

    pub fn replication(&self) -> usize {
        self.replication
    }
}

/// The co-divisor `s(k, r)` of every `k`-digit generator replicated `r` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoDivisor {
    length: usize,
    replication: usize,
    value: Natural,
}

impl CoDivisor {
    pub fn length(&self) -> usize {
        self.length
    }

    pub fn replication(&self) -> usize {
        self.replication
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    pub fn into_value(self) -> Natural {
        self.value
    }
}

/// Writes `g` out `r` times.
pub fn replicate(
    g: &Generator,
    r: usize,
    guard: DigitGuard,
) -> Result<RepetitiveNumber, RepetitionError> {
    if r == 0 {
        return Err(RepetitionError::InvalidParameter(
            "replication must be at least 1".into(),
        ));
    }
    guard.check(g.length().checked_mul(r))?;
    let value = g
        .digits()
        .as_str()
        .repeat(r)
        .parse()
        .expect("repeated canonical digits are canonical");
    Ok(RepetitiveNumber {
        value,
        generator: g.clone(),
        replication: r,
    })
}

/// Builds `s(k, r)` from its digit pattern and checks it against
/// `s(k, r) * (10^k - 1) = 10^{k r} - 1`.
///
/// Panics if the two constructions disagree.
pub fn co_divisor(k: usize, r: usize, guard: DigitGuard) -> Result<CoDivisor, RepetitionError> {
    if k == 0 || r == 0 {
        return Err(RepetitionError::InvalidParameter(format!(
            "length and replication must be positive (got k={k}, r={r})"
        )));
    }
    let digits = k.checked_mul(r - 1).and_then(|d| d.checked_add(1));
    let total = guard.check(digits)?;

    let mut pattern = String::with_capacity(total);
    pattern.push('1');
    let block = format!("{}1", "0".repeat(k - 1));
    for _ in 1..r {
        pattern.push_str(&block);
    }
    let value: Natural = pattern.parse().expect("co-divisor pattern is canonical");

    let nines: Natural = "9".repeat(k).parse().expect("canonical");
    assert_eq!(
        &value * &nines + Natural::one(),
        Natural::pow10(k * r),
        "co-divisor digit pattern disagrees with closed form for k={k}, r={r}"
    );

    Ok(CoDivisor {
        length: k,
        replication: r,
        value,
    })
}

/// Prefix-function (KMP failure table) of a byte string.
fn prefix_function(s: &[u8]) -> Vec<usize> {
    let mut pi = vec![0; s.len()];
    for i in 1..s.len() {
        let mut j = pi[i - 1];
        while j > 0 && s[i] != s[j] {
            j = pi[j - 1];
        }
        if s[i] == s[j] {
            j += 1;
        }
        pi[i] = j;
    }
    pi
}

/// Smallest block length `p` dividing `s.len()` such that `s` is that block repeated.
fn minimal_block_length(s: &[u8]) -> usize {
    let len = s.len();
    let period = len - prefix_function(s).last().copied().unwrap_or(0);
    if len.is_multiple_of(period) {
        period
    } else {
        len
    }
}

fn positive_digits(n: &Natural) -> Result<DigitString, RepetitionError> {
    if n.is_zero() {
        return Err(RepetitionError::InvalidParameter(
            "0 has no generator".into(),
        ));
    }
    DigitString::from_natural(n)
}

/// The shortest generator of `n` and its replication number.
///
/// A number that is not repetitive generates itself with replication 1.
pub fn minimal_generator(n: &Natural) -> Result<(Generator, usize), RepetitionError> {
    let digits = positive_digits(n)?;
    let s = digits.as_str();
    let p = minimal_block_length(s.as_bytes());
    let g = Generator(DigitString(s[..p].to_string()));
    Ok((g, s.len() / p))
}

/// Every `(g, r)` with `g_r = n`, shortest generator first. Always includes `(n, 1)`.
pub fn all_generators(n: &Natural) -> Result<Vec<(Generator, usize)>, RepetitionError> {
    let digits = positive_digits(n)?;
    let s = digits.as_str();
    let len = s.len();
    let p = minimal_block_length(s.as_bytes());
    Ok((p..=len)
        .step_by(p)
        .filter(|d| len % d == 0)
        .map(|d| (Generator(DigitString(s[..d].to_string())), len / d))
        .collect())
}

/// Splits `n = g_r` into the `r` shifted copies `g*10^{k(r-1)}, ..., g*10^k, g`.
pub fn decompose_as_shifted_sum(n: &RepetitiveNumber) -> Vec<Natural> {
    let g = n.generator.value();
    let k = n.generator.length();
    (0..n.replication)
        .rev()
        .map(|j| &g * &Natural::pow10(k * j))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::natural::divides;

    fn n(s: &str) -> Natural {
        s.parse().unwrap()
    }

    fn g(s: &str) -> Generator {
        Generator::parse(s).unwrap()
    }

    #[test]
    fn replicate_examples() {
        let guard = DigitGuard::default();
        assert_eq!(
            replicate(&g("394"), 2, guard).unwrap().value(),
            &n("394394")
        );
        assert_eq!(
            replicate(&g("721"), 4, guard).unwrap().value(),
            &n("721721721721")
        );
        assert_eq!(replicate(&g("2019"), 1, guard).unwrap().value(), &n("2019"));
        assert!(matches!(
            replicate(&g("1"), 0, guard),
            Err(RepetitionError::InvalidParameter(_))
        ));
    }

    #[test]
    fn guard_is_enforced() {
        let guard = DigitGuard::new(64);
        assert!(replicate(&g("2019"), 16, guard).is_ok());
        assert_eq!(
            replicate(&g("2019"), 17, guard),
            Err(RepetitionError::LimitExceeded {
                digits: Some(68),
                limit: 64
            })
        );
        assert!(co_divisor(9, 8, guard).is_ok());
        assert!(co_divisor(13, 6, guard).is_err());
        assert!(matches!(
            co_divisor(usize::MAX, 3, guard),
            Err(RepetitionError::LimitExceeded { digits: None, .. })
        ));
    }

    #[test]
    fn co_divisor_examples() {
        let guard = DigitGuard::default();
        assert_eq!(co_divisor(3, 2, guard).unwrap().value(), &n("1001"));
        for k in 1..6 {
            assert_eq!(co_divisor(k, 1, guard).unwrap().value(), &Natural::one());
        }
        assert_eq!(
            co_divisor(4, 8, guard).unwrap().value(),
            &n("10001000100010001000100010001")
        );
        assert!(matches!(
            co_divisor(0, 2, guard),
            Err(RepetitionError::InvalidParameter(_))
        ));
        assert!(matches!(
            co_divisor(2, 0, guard),
            Err(RepetitionError::InvalidParameter(_))
        ));
    }

    #[test]
    fn co_divisor_near_default_guard() {
        let c = co_divisor(1000, 1000, DigitGuard::default()).unwrap();
        assert_eq!(c.value().digit_len(), 999_001);
    }

    #[test]
    fn generator_examples() {
        assert_eq!(minimal_generator(&n("394394")).unwrap(), (g("394"), 2));
        assert_eq!(minimal_generator(&n("111111")).unwrap(), (g("1"), 6));
        assert_eq!(minimal_generator(&n("223344")).unwrap(), (g("223344"), 1));
        assert_eq!(
            all_generators(&n("111111")).unwrap(),
            vec![(g("1"), 6), (g("11"), 3), (g("111"), 2), (g("111111"), 1)]
        );
        assert_eq!(
            all_generators(&n("223344")).unwrap(),
            vec![(g("223344"), 1)]
        );
        assert_eq!(
            all_generators(&n("121212")).unwrap(),
            vec![(g("12"), 3), (g("121212"), 1)]
        );
        assert!(minimal_generator(&Natural::zero()).is_err());
    }

    #[test]
    fn periodic_but_not_repetitive() {
        // "12121" has period 2 but 2 does not divide 5.
        assert_eq!(minimal_generator(&n("12121")).unwrap(), (g("12121"), 1));
        assert_eq!(minimal_generator(&n("1010")).unwrap(), (g("10"), 2));
    }

    #[test]
    fn decompose_examples() {
        let guard = DigitGuard::default();
        let x = replicate(&g("394"), 2, guard).unwrap();
        assert_eq!(decompose_as_shifted_sum(&x), vec![n("394000"), n("394")]);
        let x = replicate(&g("721"), 4, guard).unwrap();
        assert_eq!(
            decompose_as_shifted_sum(&x),
            vec![n("721000000000"), n("721000000"), n("721000"), n("721")]
        );
        let x = replicate(&g("98"), 1, guard).unwrap();
        assert_eq!(decompose_as_shifted_sum(&x), vec![n("98")]);
    }

    #[test]
    fn digit_string_validation() {
        assert!(DigitString::new("0").is_err());
        assert!(DigitString::new("012").is_err());
        assert!(DigitString::new("").is_err());
        assert!(DigitString::new("1a").is_err());
        assert!(DigitString::new("907").is_ok());
    }

    #[test]
    fn from_parts_validates() {
        assert!(RepetitiveNumber::from_parts(n("394394"), g("394"), 2).is_ok());
        assert!(RepetitiveNumber::from_parts(n("394395"), g("394"), 2).is_err());
        assert!(RepetitiveNumber::from_parts(n("394394"), g("394"), 3).is_err());
    }

    #[test]
    fn small_generators_exhaustive_identity() {
        let guard = DigitGuard::default();
        for gv in 1u64..100 {
            let gen = Generator::from_natural(&Natural::from(gv)).unwrap();
            for r in 1..=5 {
                let rep = replicate(&gen, r, guard).unwrap();
                let s = co_divisor(gen.length(), r, guard).unwrap();
                assert_eq!(rep.value(), &(gen.value() * s.value()));
                assert!(divides(&gen.value(), rep.value()).unwrap());
                assert!(divides(s.value(), rep.value()).unwrap());
                let parts = decompose_as_shifted_sum(&rep);
                assert_eq!(parts.len(), r);
                assert_eq!(&parts.iter().sum::<Natural>(), rep.value());
            }
        }
    }
}
