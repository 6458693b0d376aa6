use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::poly::Rational;

/// A field whose elements know how to produce the constants of their own
/// field. Prime fields carry their modulus in every element, so the constants
/// are taken relative to an existing element.
pub trait Field: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn int_like(&self, v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// Element of the prime field `Z/pZ`, `p < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp {
    pub value: u64,
    pub modulus: u64,
}

impl Fp {
    pub fn new(value: u64, modulus: u64) -> Self {
        Fp {
            value: value % modulus,
            modulus,
        }
    }

    /// Reduce a rational; `None` when the denominator vanishes mod p.
    pub fn from_rational(r: &Rational, modulus: u64) -> Option<Self> {
        let m = BigInt::from(modulus);
        let num = r.numer().mod_floor(&m).to_u64()?;
        let den = r.denom().mod_floor(&m).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(Fp::new(num, modulus).mul(&Fp::new(den, modulus).inv()))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Field for Fp {
    fn zero_like(&self) -> Self {
        Fp::new(0, self.modulus)
    }
    fn one_like(&self) -> Self {
        Fp::new(1, self.modulus)
    }
    fn int_like(&self, v: i64) -> Self {
        let m = self.modulus as i128;
        Fp::new((v as i128).rem_euclid(m) as u64, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp::new(
            ((self.value as u128 + o.value as u128) % self.modulus as u128) as u64,
            self.modulus,
        )
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        Fp::new(mulmod(self.value, o.value, self.modulus), self.modulus)
    }
    fn neg(&self) -> Self {
        Fp::new((self.modulus - self.value) % self.modulus, self.modulus)
    }
    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero in F_p");
        self.pow(self.modulus - 2)
    }
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime with exactly `bits` bits (`8 <= bits <= 62`).
pub fn random_prime<R: Rng>(rng: &mut R, bits: u32) -> u64 {
    let bits = bits.clamp(8, 62);
    let lo = 1u64 << (bits - 1);
    loop {
        let candidate = rng.gen_range(lo..(lo << 1)) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn miller_rabin_known_values() {
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64((1 << 61) + 1));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(561));
    }

    #[test]
    fn fp_inverse_and_rational_reduction() {
        let p = 1_000_000_007;
        let a = Fp::new(123_456, p);
        assert!(a.mul(&a.inv()).is_one());
        let r = Fp::from_rational(&ratio(-3, 4), p).unwrap();
        assert_eq!(r.mul(&Fp::new(4, p)), Fp::new(p - 3, p));
        assert!(Fp::from_rational(&ratio(1, 7), 7).is_none());
    }
}
