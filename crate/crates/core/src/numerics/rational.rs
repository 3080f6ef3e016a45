//! Exact rational scalars and their text forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::NumericsError;

/// Arbitrary-precision rational, always normalized (positive denominator, reduced).
pub type ExactRational = BigRational;

pub fn rat(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn big(n: &BigInt) -> ExactRational {
    BigRational::from_integer(n.clone())
}

/// Parses `"-12.5e-3"`, `"7/22"` or `"3"` exactly.
pub fn parse_rational(s: &str) -> Result<ExactRational, NumericsError> {
    let bad = || NumericsError::Parse(s.to_string());
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}").parse().unwrap_or_else(|_| BigInt::zero());
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// `"p/q"` with the denominator always written, e.g. `"3/1"`.
pub fn to_pq(q: &ExactRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

/// floor(log10 |q|) for q != 0.
fn decimal_exponent(q: &ExactRational) -> i64 {
    let a = q.abs();
    let n = a.numer().to_string().len() as i64;
    let d = a.denom().to_string().len() as i64;
    let mut e = n - d;
    // adjust so 10^e <= a < 10^(e+1)
    loop {
        let p = ten_pow(e);
        if a < p {
            e -= 1;
        } else if a >= ten_pow(e + 1) {
            e += 1;
        } else {
            return e;
        }
    }
}

fn ten_pow(e: i64) -> ExactRational {
    if e >= 0 {
        BigRational::from_integer(pow10(e as u32))
    } else {
        BigRational::new(BigInt::one(), pow10((-e) as u32))
    }
}

/// Decimal string with `sig` significant digits, rounded toward -inf (`up = false`)
/// or +inf (`up = true`). The result brackets `q` in the requested direction.
pub fn to_decimal(q: &ExactRational, sig: u32, up: bool) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let e = decimal_exponent(q);
    let shift = sig as i64 - 1 - e;
    let scaled = q * ten_pow(shift);
    let m = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    if m.is_zero() {
        return "0".to_string();
    }
    let neg = m.is_negative();
    let mut digits = m.abs().to_string();
    let mut exp10 = -shift;
    // strip trailing zeros into the exponent
    while digits.len() > 1 && digits.ends_with('0') {
        digits.pop();
        exp10 += 1;
    }
    let sign = if neg { "-" } else { "" };
    let len = digits.len() as i64;
    // value = digits * 10^exp10
    let point = len + exp10; // digits before the decimal point
    if (-6..=21).contains(&point) {
        if exp10 >= 0 {
            format!("{sign}{digits}{}", "0".repeat(exp10 as usize))
        } else if point > 0 {
            let (a, b) = digits.split_at(point as usize);
            format!("{sign}{a}.{b}")
        } else {
            format!("{sign}0.{}{digits}", "0".repeat((-point) as usize))
        }
    } else {
        let (a, b) = digits.split_at(1);
        let e = point - 1;
        if b.is_empty() {
            format!("{sign}{a}e{e}")
        } else {
            format!("{sign}{a}.{b}e{e}")
        }
    }
}

/// Nearest f64 (for display and screening only).
pub fn to_f64(q: &ExactRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // extreme magnitudes: go through the decimal form
        to_decimal(q, 20, false).parse().unwrap_or(f64::NAN)
    })
}

pub fn from_f64(x: f64) -> ExactRational {
    BigRational::from_float(x).expect("finite float")
}

/// Ceiling of |q| as an unsigned count, for loop bounds.
pub fn ceil_u64(q: &ExactRational) -> u64 {
    use num_traits::ToPrimitive;
    q.ceil().to_integer().to_u64().unwrap_or(0)
}

/// Rising factorial (x)_n.
pub fn pochhammer(x: &ExactRational, n: u64) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut t = x.clone();
    for _ in 0..n {
        acc *= &t;
        t += ExactRational::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn is_integer(q: &ExactRational) -> bool {
    q.denom().is_one()
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("0.33").unwrap(), rat(33, 100));
        assert_eq!(parse_rational("-1.5e-3").unwrap(), rat(-3, 2000));
        assert_eq!(parse_rational("22/7").unwrap(), rat(22, 7));
        assert_eq!(parse_rational("853.33").unwrap(), rat(85333, 100));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn decimal_brackets() {
        let q = rat(113, 88);
        let lo = parse_rational(&to_decimal(&q, 12, false)).unwrap();
        let hi = parse_rational(&to_decimal(&q, 12, true)).unwrap();
        assert!(lo <= q && q <= hi);
        assert_eq!(to_decimal(&rat(1, 2), 10, false), "0.5");
        assert_eq!(to_decimal(&rat(-1, 3), 3, false), "-0.334");
        assert_eq!(to_decimal(&rat(-1, 3), 3, true), "-0.333");
        assert_eq!(to_decimal(&int(120), 5, true), "120");
        let tiny = rat(1, 7) * ten_pow(-30);
        let s = to_decimal(&tiny, 4, true);
        assert!(s.contains('e'));
        assert!(parse_rational(&s).unwrap() >= tiny);
    }

    #[test]
    fn pq_form() {
        assert_eq!(to_pq(&rat(6, 4)), "3/2");
        assert_eq!(to_pq(&int(-3)), "-3/1");
    }
}
