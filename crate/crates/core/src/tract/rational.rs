use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{field_solve_unit, Field, NullConstraint, Tract};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// The rationals with exact arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RationalField;

/// Parses `p`, `p/q` or a decimal such as `-1.25`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::ParseElem(s.to_string());
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().map_err(|_| bad())?,
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = BigRational::new(int_part * &scale + frac_part, scale);
        return Ok(if negative { -mag } else { mag });
    }
    t.parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

impl Tract for RationalField {
    type Elem = Rational;

    fn name(&self) -> String {
        "Q".into()
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn one(&self) -> Rational {
        Rational::one()
    }

    fn minus_one(&self) -> Rational {
        -Rational::one()
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn inv(&self, a: &Rational) -> Result<Rational> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(a.recip())
        }
    }

    fn neg(&self, a: &Rational) -> Rational {
        -a
    }

    fn is_null(&self, terms: &[Rational]) -> bool {
        terms
            .iter()
            .fold(Rational::zero(), |acc, t| acc + t)
            .is_zero()
    }

    fn solve_unit(&self, constraints: &[NullConstraint<Rational>]) -> Option<Rational> {
        field_solve_unit(self, constraints)
    }

    fn parse_elem(&self, s: &str) -> Result<Rational> {
        parse_rational(s)
    }

    fn format_elem(&self, a: &Rational) -> String {
        a.to_string()
    }
}

impl Field for RationalField {
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }

    fn from_i64(&self, v: i64) -> Rational {
        Rational::from_integer(v.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        let q = RationalField;
        assert_eq!(parse_rational("3").unwrap(), q.from_i64(3));
        assert_eq!(
            parse_rational("-6/4").unwrap(),
            BigRational::new((-3).into(), 2.into())
        );
        assert_eq!(
            parse_rational("-1.25").unwrap(),
            BigRational::new((-5).into(), 4.into())
        );
        assert_eq!(
            parse_rational("-0.5").unwrap(),
            BigRational::new((-1).into(), 2.into())
        );
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn solve_unit_pins_and_checks() {
        let q = RationalField;
        let e = |v: i64| q.from_i64(v);
        let ks = vec![
            NullConstraint {
                partial: vec![e(2), e(4)],
                z: e(3),
            },
            NullConstraint {
                partial: vec![e(4)],
                z: e(2),
            },
        ];
        assert_eq!(q.solve_unit(&ks), Some(e(-2)));
        let clash = vec![
            NullConstraint {
                partial: vec![e(1)],
                z: e(1),
            },
            NullConstraint {
                partial: vec![e(1)],
                z: e(2),
            },
        ];
        assert_eq!(q.solve_unit(&clash), None);
        let forced_zero = vec![NullConstraint {
            partial: vec![e(0)],
            z: e(1),
        }];
        assert_eq!(q.solve_unit(&forced_zero), None);
    }
}
