//! Exact rational scalars and the small helpers the rest of the crate leans on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// `x^k` with the convention `0^0 = 1`.
pub fn pow(x: &Scalar, k: u32) -> Scalar {
    if k == 0 {
        return one();
    }
    Scalar::new_raw(x.numer().pow(k), x.denom().pow(k))
}

/// Integer power allowing negative exponents; errors on `0^{-k}`.
pub fn powi(x: &Scalar, k: i64) -> Result<Scalar> {
    if k >= 0 {
        Ok(pow(x, k as u32))
    } else if x.is_zero() {
        Err(Error::Domain("zero raised to a negative power".into()))
    } else {
        Ok(pow(&x.recip(), (-k) as u32))
    }
}

pub fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn abs(x: &Scalar) -> Scalar {
    x.abs()
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.25`.
pub fn parse(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Scalar::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip = ip.trim_start_matches(['-', '+']);
        if !ip.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let digits: BigInt = format!("{}{}", if ip.is_empty() { "0" } else { ip }, fp)
            .parse()
            .ok()?;
        let den = BigInt::from(10u32).pow(fp.len() as u32);
        let v = Scalar::new(digits, den);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Scalar::from_integer)
}

/// Canonical text form: `p/q` in lowest terms, `/1` omitted.
pub fn format(x: &Scalar) -> String {
    x.to_string()
}

/// Product of rationals, multiplying numerators and denominators in a balanced
/// tree and reducing once at the end.
pub fn product<I: IntoIterator<Item = Scalar>>(items: I) -> Scalar {
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for x in items {
        if x.is_zero() {
            return zero();
        }
        let (n, d) = x.into_raw();
        nums.push(n);
        dens.push(d);
    }
    Scalar::new(tree_product(nums), tree_product(dens))
}

fn tree_product(mut v: Vec<BigInt>) -> BigInt {
    if v.is_empty() {
        return BigInt::one();
    }
    while v.len() > 1 {
        let mut next = Vec::with_capacity(v.len().div_ceil(2));
        let mut it = v.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a * b),
                None => next.push(a),
            }
        }
        v = next;
    }
    v.pop().unwrap()
}

/// Product of rationals rounded to the nearest multiple of `2^{-bits}`,
/// without reducing the full-precision intermediate.
pub fn product_rounded<I: IntoIterator<Item = Scalar>>(items: I, bits: u32) -> Scalar {
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for x in items {
        if x.is_zero() {
            return zero();
        }
        let (n, d) = x.into_raw();
        nums.push(n);
        dens.push(d);
    }
    let (n, d) = (tree_product(nums), tree_product(dens));
    let scaled = (n << (bits + 1)) / &d;
    let rounded = (scaled + BigInt::one()) >> 1u32;
    Scalar::new(rounded, BigInt::one() << bits)
}

/// Sum of rationals with a single reduction per pairwise merge.
pub fn sum<I: IntoIterator<Item = Scalar>>(items: I) -> Scalar {
    let mut v: Vec<Scalar> = items.into_iter().collect();
    if v.is_empty() {
        return zero();
    }
    while v.len() > 1 {
        let mut next = Vec::with_capacity(v.len().div_ceil(2));
        let mut it = v.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a + b),
                None => next.push(a),
            }
        }
        v = next;
    }
    v.pop().unwrap()
}

pub fn parse_list(s: &str) -> Option<Vec<Scalar>> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.trim().is_empty() {
        return Some(Vec::new());
    }
    s.split(',').map(parse).collect()
}

pub fn format_list(xs: &[Scalar]) -> String {
    let parts: Vec<String> = xs.iter().map(format).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/3", "-2/7", "5", "0"] {
            assert_eq!(format(&parse(s).unwrap()), s);
        }
        assert_eq!(format(&parse("2/4").unwrap()), "1/2");
        assert_eq!(format(&parse("0.25").unwrap()), "1/4");
        assert_eq!(format(&parse("-1.5").unwrap()), "-3/2");
        assert!(parse("1/0").is_none());
        assert!(parse("abc").is_none());
        assert!(parse("1.").is_none());
    }

    #[test]
    fn pow_conventions() {
        assert_eq!(pow(&zero(), 0), one());
        assert_eq!(pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(powi(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert!(powi(&zero(), -1).is_err());
    }

    #[test]
    fn tree_reductions_match_folds() {
        let xs: Vec<Scalar> = (1..20).map(|k| rat(k, k + 3)).collect();
        let p = xs.iter().fold(one(), |acc, x| acc * x);
        let s = xs.iter().fold(zero(), |acc, x| acc + x);
        assert_eq!(product(xs.clone()), p);
        assert_eq!(sum(xs), s);
    }
}
