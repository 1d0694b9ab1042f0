//! Scalar fields used by the linear algebra: exact rationals and a word-sized prime field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;
use std::str::FromStr;

/// The operations the elimination routines need.
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; panics on zero.
    fn inv(&self) -> Self;
    /// `self - a * b`, the inner step of every row operation.
    fn sub_mul(&self, a: &Self, b: &Self) -> Self {
        self.sub(&a.mul(b))
    }
    /// True when results in this field are only correct with high probability.
    fn probabilistic() -> bool {
        false
    }
}

/// Exact rational with an inline fast path for values that fit in `i64`.
#[derive(Clone)]
pub enum Q {
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Q {
    pub fn new(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::from_i128(n as i128, d as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Q {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Q::Small(a, b),
            _ => Q::Big(Box::new(BigRational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Q::Small(n, d)
        } else {
            Q::Big(Box::new(r))
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(b) => (**b).clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Q {
        if self.is_negative() {
            Field::neg(self)
        } else {
            self.clone()
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Q::Small(n, 1) => Some(*n),
            _ => None,
        }
    }

    /// Image in `Z/p`; panics if the denominator is divisible by `p`.
    pub fn to_fp(&self, p: u64) -> u64 {
        let big = self.to_big();
        let pm = BigInt::from(p);
        let n = big.numer().mod_floor(&pm).to_u64().unwrap();
        let d = big.denom().mod_floor(&pm).to_u64().unwrap();
        assert!(d != 0, "denominator vanishes modulo {p}");
        mul_mod(n, pow_mod(d, p - 2, p), p)
    }
}

impl PartialEq for Q {
    fn eq(&self, o: &Q) -> bool {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            _ => self.to_big() == o.to_big(),
        }
    }
}
impl Eq for Q {}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Q {
    fn cmp(&self, o: &Q) -> std::cmp::Ordering {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => ((*a as i128) * (*d as i128)).cmp(&((*c as i128) * (*b as i128))),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl std::hash::Hash for Q {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        let b = self.to_big();
        b.numer().hash(h);
        b.denom().hash(h);
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(b) => write!(f, "{b}"),
        }
    }
}

impl FromStr for Q {
    type Err = String;
    fn from_str(s: &str) -> Result<Q, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|e| format!("bad rational {s:?}: {e}"))?;
        let d = BigInt::from_str(d).map_err(|e| format!("bad rational {s:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("bad rational {s:?}: zero denominator"));
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

impl From<i64> for Q {
    fn from(v: i64) -> Q {
        Q::Small(v, 1)
    }
}

impl Field for Q {
    fn zero() -> Q {
        Q::Small(0, 1)
    }
    fn one() -> Q {
        Q::Small(1, 1)
    }
    fn from_i64(v: i64) -> Q {
        Q::Small(v, 1)
    }
    fn is_zero(&self) -> bool {
        match self {
            Q::Small(n, _) => *n == 0,
            Q::Big(b) => b.is_zero(),
        }
    }
    fn add(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if b == d {
                    return Q::from_i128(*a as i128 + *c as i128, *b as i128);
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                    (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                        Some(s) => Q::from_i128(s, z),
                        None => Q::from_big(self.to_big() + o.to_big()),
                    },
                    _ => Q::from_big(self.to_big() + o.to_big()),
                }
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }
    fn sub(&self, o: &Q) -> Q {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(c), b.checked_mul(d)) {
                    (Some(n), Some(m)) => Q::from_i128(n, m),
                    _ => Q::from_big(self.to_big() * o.to_big()),
                }
            }
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }
    fn neg(&self) -> Q {
        match self {
            Q::Small(n, d) if *n != i64::MIN => Q::Small(-n, *d),
            _ => Q::from_big(-self.to_big()),
        }
    }
    fn inv(&self) -> Q {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Q::Small(n, d) => Q::from_i128(*d as i128, *n as i128),
            Q::Big(b) => Q::from_big(b.recip()),
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
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

/// Default modulus for the prime-field mode (largest prime below 2^62).
pub const DEFAULT_PRIME: u64 = 4_611_686_018_427_387_847;

static PRIME: std::sync::atomic::AtomicU64 = std::sync::atomic::AtomicU64::new(DEFAULT_PRIME);

/// Element of `Z/p` for the process-wide modulus set by [`set_prime`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(pub u64);

/// Selects the modulus for [`Fp`]. Must be prime and below 2^63.
pub fn set_prime(p: u64) -> Result<(), String> {
    if p >= 1 << 63 || !is_prime_u64(p) {
        return Err(format!("{p} is not a prime below 2^63"));
    }
    PRIME.store(p, std::sync::atomic::Ordering::SeqCst);
    Ok(())
}

pub fn prime() -> u64 {
    PRIME.load(std::sync::atomic::Ordering::Relaxed)
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Field for Fp {
    fn zero() -> Fp {
        Fp(0)
    }
    fn one() -> Fp {
        Fp(1)
    }
    fn from_i64(v: i64) -> Fp {
        let p = prime() as i128;
        Fp((v as i128).rem_euclid(p) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Fp) -> Fp {
        let p = prime();
        let s = self.0 + o.0;
        Fp(if s >= p { s - p } else { s })
    }
    fn sub(&self, o: &Fp) -> Fp {
        let p = prime();
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + p - o.0 })
    }
    fn mul(&self, o: &Fp) -> Fp {
        Fp(mul_mod(self.0, o.0, prime()))
    }
    fn neg(&self) -> Fp {
        if self.0 == 0 {
            *self
        } else {
            Fp(prime() - self.0)
        }
    }
    fn inv(&self) -> Fp {
        assert!(self.0 != 0, "inverse of zero");
        let p = prime();
        Fp(pow_mod(self.0, p - 2, p))
    }
    fn probabilistic() -> bool {
        true
    }
}

/// Converts an exact rational into any field.
pub trait FromQ: Field {
    fn from_q(q: &Q) -> Self;
}

impl FromQ for Q {
    fn from_q(q: &Q) -> Q {
        q.clone()
    }
}

impl FromQ for Fp {
    fn from_q(q: &Q) -> Fp {
        Fp(q.to_fp(prime()))
    }
}

pub fn big_to_q(b: &BigInt) -> Q {
    Q::from_big(BigRational::from_integer(b.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_reduces() {
        let a = Q::new(2, 4);
        assert_eq!(a, Q::new(1, 2));
        assert_eq!(a.add(&Q::new(1, 3)), Q::new(5, 6));
        assert_eq!(a.mul(&Q::new(-4, 3)), Q::new(-2, 3));
        assert_eq!(Q::new(-3, 7).inv(), Q::new(-7, 3));
    }

    #[test]
    fn overflow_promotes_to_big() {
        let big = Q::from_i64(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Q::Big(_)));
        let back = sq.mul(&big.inv()).mul(&big.inv());
        assert_eq!(back, Q::one());
        assert!(matches!(back, Q::Small(1, 1)));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "-5", "3/4", "-12/7"] {
            assert_eq!(Q::from_str(s).unwrap().to_string(), s);
        }
        assert!(Q::from_str("1/0").is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let x = Fp::from_i64(-12345);
        assert_eq!(x.mul(&x.inv()), Fp::one());
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(!is_prime_u64(DEFAULT_PRIME + 2));
        assert_eq!(Fp::from_q(&Q::new(1, 2)).mul(&Fp::from_i64(2)), Fp::one());
    }
}
