//! Exact rings: prime fields, and the integers, rationals and `ℤ[1/p]` as
//! subrings of the rationals.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub trait Ring: Clone + Debug + Send + Sync {
    type E: Clone + Debug + PartialEq + Eq + Hash + Ord + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn unit_inv(&self, a: &Self::E) -> Option<Self::E>;
    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }
    fn is_unit(&self, a: &Self::E) -> bool {
        self.unit_inv(a).is_some()
    }
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }
    /// `|R|` when finite.
    fn size(&self) -> Option<u128> {
        None
    }
    fn elements(&self) -> Option<Vec<Self::E>> {
        None
    }
    fn units(&self) -> Option<Vec<Self::E>> {
        None
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::E;
    fn random_unit(&self, rng: &mut ChaCha8Rng) -> Self::E;
    fn format(&self, a: &Self::E) -> String;
    fn parse(&self, s: &str) -> Result<Self::E, String>;
}

/// The prime field `𝔽_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
}

impl Fp {
    pub fn new(p: u32) -> Result<Fp, String> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(format!("{p} is not prime"));
        }
        Ok(Fp { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
}

impl Ring for Fp {
    type E = u32;

    fn name(&self) -> String {
        format!("F{}", self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn unit_inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat
        let (mut base, mut e, mut r) = (*a as u64, self.p as u64 - 2, 1u64);
        let p = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Some(r as u32)
    }
    fn size(&self) -> Option<u128> {
        Some(self.p as u128)
    }
    fn elements(&self) -> Option<Vec<u32>> {
        Some((0..self.p).collect())
    }
    fn units(&self) -> Option<Vec<u32>> {
        Some((1..self.p).collect())
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn random_unit(&self, rng: &mut ChaCha8Rng) -> u32 {
        rng.gen_range(1..self.p)
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u32, String> {
        let v: i64 = s.trim().parse().map_err(|_| format!("bad field element {s:?}"))?;
        Ok(v.rem_euclid(self.p as i64) as u32)
    }
}

/// Which subring of the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exact {
    Integers,
    Rationals,
    /// `ℤ[1/p]`: denominators are powers of `p`.
    Localized(u64),
}

impl Exact {
    fn contains(&self, a: &BigRational) -> bool {
        match self {
            Exact::Integers => a.is_integer(),
            Exact::Rationals => true,
            Exact::Localized(p) => {
                let mut d = a.denom().clone();
                let p = BigInt::from(*p);
                while (&d % &p).is_zero() {
                    d /= &p;
                }
                d.is_one()
            }
        }
    }
}

impl Ring for Exact {
    type E = BigRational;

    fn name(&self) -> String {
        match self {
            Exact::Integers => "Z".into(),
            Exact::Rationals => "Q".into(),
            Exact::Localized(p) => format!("Z[1/p]:{p}"),
        }
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn unit_inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            return None;
        }
        let r = a.recip();
        self.contains(&r).then_some(r)
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> BigRational {
        let num = BigInt::from(rng.gen_range(-5i64..=5));
        match self {
            Exact::Integers => BigRational::from_integer(num),
            Exact::Rationals => BigRational::new(num, BigInt::from(rng.gen_range(1i64..=4))),
            Exact::Localized(p) => {
                let e = rng.gen_range(0u32..=2);
                BigRational::new(num, BigInt::from(*p).pow(e))
            }
        }
    }
    fn random_unit(&self, rng: &mut ChaCha8Rng) -> BigRational {
        let sign = if rng.gen_bool(0.5) { 1i64 } else { -1 };
        match self {
            Exact::Integers => BigRational::from_integer(BigInt::from(sign)),
            Exact::Rationals => {
                BigRational::new(BigInt::from(sign * rng.gen_range(1i64..=4)), BigInt::from(rng.gen_range(1i64..=4)))
            }
            Exact::Localized(p) => {
                let e = rng.gen_range(-2i32..=2);
                let pe = BigRational::from_integer(BigInt::from(*p).pow(e.unsigned_abs()));
                let v = if e < 0 { pe.recip() } else { pe };
                v * BigRational::from_integer(BigInt::from(sign))
            }
        }
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse(&self, s: &str) -> Result<BigRational, String> {
        let s = s.trim();
        let v = match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| format!("bad numerator {n:?}"))?;
                let d: BigInt = d.trim().parse().map_err(|_| format!("bad denominator {d:?}"))?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| format!("bad number {s:?}"))?),
        };
        if !self.contains(&v) {
            return Err(format!("{s} is not in {}", self.name()));
        }
        Ok(v)
    }
}

/// Ring named by `Z`, `Q`, `Z[1/p]:p` or `Fp:p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Exact(Exact),
    Field(Fp),
}

impl RingSpec {
    pub fn parse(s: &str) -> Result<RingSpec, String> {
        let s = s.trim();
        let prime = |t: &str| -> Result<u32, String> { t.trim().parse::<u32>().map_err(|_| format!("bad prime {t:?}")) };
        match s {
            "Z" => Ok(RingSpec::Exact(Exact::Integers)),
            "Q" => Ok(RingSpec::Exact(Exact::Rationals)),
            _ => {
                if let Some(p) = s.strip_prefix("Z[1/p]:") {
                    let p = prime(p)?;
                    Fp::new(p)?;
                    Ok(RingSpec::Exact(Exact::Localized(p as u64)))
                } else if let Some(p) = s.strip_prefix("Fp:") {
                    Ok(RingSpec::Field(Fp::new(prime(p)?)?))
                } else if let Some(p) = s.strip_prefix('F') {
                    Ok(RingSpec::Field(Fp::new(prime(p)?)?))
                } else {
                    Err(format!("unknown ring {s:?}"))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn field_inverse() {
        let f = Fp::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.unit_inv(&a).unwrap()), 1);
        }
        assert!(Fp::new(9).is_err());
        assert_eq!(f.parse("-1").unwrap(), 6);
    }

    #[test]
    fn localized_units() {
        let r = Exact::Localized(3);
        let third = r.parse("1/3").unwrap();
        assert!(r.is_unit(&third));
        assert!(!r.is_unit(&r.parse("2").unwrap()));
        assert!(r.parse("1/2").is_err());
        assert!(Exact::Integers.is_unit(&Exact::Integers.parse("-1").unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let u = r.random_unit(&mut rng);
            assert!(r.is_unit(&u));
            assert!(r.contains(&r.random(&mut rng)));
        }
    }

    #[test]
    fn ring_names() {
        assert_eq!(RingSpec::parse("F2").unwrap(), RingSpec::Field(Fp::new(2).unwrap()));
        assert_eq!(RingSpec::parse("Fp:3").unwrap(), RingSpec::Field(Fp::new(3).unwrap()));
        assert_eq!(RingSpec::parse("Z[1/p]:5").unwrap(), RingSpec::Exact(Exact::Localized(5)));
        assert!(RingSpec::parse("R").is_err());
    }
}
