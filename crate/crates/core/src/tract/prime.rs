use super::{field_solve_unit, Field, NullConstraint, Tract};
use crate::error::{Error, Result};

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

/// Fields up to this size report their elements for exhaustive checks.
const ENUMERABLE: u64 = 1024;

fn is_prime(p: u64) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }
}

impl Tract for PrimeField {
    type Elem = u64;

    fn name(&self) -> String {
        format!("Fp:{}", self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn minus_one(&self) -> u64 {
        self.p - 1
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }

    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(*a, self.p - 2))
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }

    fn is_null(&self, terms: &[u64]) -> bool {
        terms.iter().fold(0, |acc, t| (acc + t) % self.p) == 0
    }

    fn elements(&self) -> Option<Vec<u64>> {
        (self.p <= ENUMERABLE).then(|| (0..self.p).collect())
    }

    fn solve_unit(&self, constraints: &[NullConstraint<u64>]) -> Option<u64> {
        field_solve_unit(self, constraints)
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let v: i64 = s
            .trim()
            .parse()
            .map_err(|_| Error::ParseElem(s.to_string()))?;
        Ok(self.from_i64(v))
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
}

impl Field for PrimeField {
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}
