//! Closed intervals with dyadic fixed-point endpoints.
//!
//! An interval at precision `p` stores `lo`, `hi` as integers meaning `lo / 2^p`
//! and `hi / 2^p`. Addition is exact; every other operation rounds the lower
//! endpoint toward -inf and the upper endpoint toward +inf, so the result always
//! contains the exact image of its arguments.

use std::cmp::{max, min};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{to_decimal, ExactRational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

pub(crate) fn floor_shr(x: &BigInt, s: u32) -> BigInt {
    // num-bigint's arithmetic shift rounds toward -inf
    x >> s
}

pub(crate) fn ceil_shr(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

fn ceil_div(x: &BigInt, y: &BigInt) -> BigInt {
    -((-x).div_floor(y))
}

impl Interval {
    /// Raw constructor; `lo <= hi` is the caller's responsibility.
    pub(crate) fn from_raw(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Self::from_raw(BigInt::zero(), BigInt::zero(), prec)
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        let v = BigInt::from(n) << prec;
        Self::from_raw(v.clone(), v, prec)
    }

    /// Smallest interval at `prec` fractional bits containing `q`.
    pub fn from_rational(q: &ExactRational, prec: u32) -> Self {
        let num = q.numer() << prec;
        let lo = num.div_floor(q.denom());
        let hi = ceil_div(&num, q.denom());
        Self::from_raw(lo, hi, prec)
    }

    /// Smallest interval containing `[a, b]`.
    pub fn from_bounds(a: &ExactRational, b: &ExactRational, prec: u32) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let lo = (a.numer() << prec).div_floor(a.denom());
        let hi = ceil_div(&(b.numer() << prec), b.denom());
        Self::from_raw(lo, hi, prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        Self::from_rational(&super::rational::from_f64(x), prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lo(&self) -> ExactRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn hi(&self) -> ExactRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub(crate) fn lo_raw(&self) -> &BigInt {
        &self.lo
    }

    pub(crate) fn hi_raw(&self) -> &BigInt {
        &self.hi
    }

    pub fn mid(&self) -> ExactRational {
        BigRational::new(&self.lo + &self.hi, BigInt::one() << (self.prec + 1))
    }

    pub fn width(&self) -> ExactRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << self.prec)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn lo_f64(&self) -> f64 {
        super::rational::to_f64(&self.lo())
    }

    pub fn hi_f64(&self) -> f64 {
        super::rational::to_f64(&self.hi())
    }

    pub fn mid_f64(&self) -> f64 {
        super::rational::to_f64(&self.mid())
    }

    /// Re-expresses at another precision, rounding outward when coarsening.
    pub fn with_prec(&self, prec: u32) -> Self {
        use std::cmp::Ordering::*;
        match prec.cmp(&self.prec) {
            Equal => self.clone(),
            Greater => {
                let s = prec - self.prec;
                Self::from_raw(&self.lo << s, &self.hi << s, prec)
            }
            Less => {
                let s = self.prec - prec;
                Self::from_raw(floor_shr(&self.lo, s), ceil_shr(&self.hi, s), prec)
            }
        }
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let p = max(a.prec, b.prec);
        (a.with_prec(p), b.with_prec(p))
    }

    pub fn contains(&self, q: &ExactRational) -> bool {
        self.lo() <= *q && *q <= self.hi()
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.lo <= b.lo && b.hi <= a.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        let (a, b) = Self::aligned(self, other);
        a.lo <= b.hi && b.lo <= a.hi
    }

    pub fn hull(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        Self::from_raw(min(a.lo, b.lo), max(a.hi, b.hi), a.prec)
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let (a, b) = Self::aligned(self, other);
        let lo = max(a.lo, b.lo);
        let hi = min(a.hi, b.hi);
        (lo <= hi).then(|| Self::from_raw(lo, hi, a.prec))
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.lo.is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn abs(&self) -> Self {
        if self.is_nonnegative() {
            self.clone()
        } else if !self.hi.is_positive() {
            -self
        } else {
            Self::from_raw(BigInt::zero(), max(-&self.lo, self.hi.clone()), self.prec)
        }
    }

    pub fn max(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        Self::from_raw(max(a.lo, b.lo), max(a.hi, b.hi), a.prec)
    }

    pub fn min(&self, other: &Self) -> Self {
        let (a, b) = Self::aligned(self, other);
        Self::from_raw(min(a.lo, b.lo), min(a.hi, b.hi), a.prec)
    }

    pub fn sqr(&self) -> Self {
        let a = self.abs();
        let p = a.prec;
        Self::from_raw(floor_shr(&(&a.lo * &a.lo), p), ceil_shr(&(&a.hi * &a.hi), p), p)
    }

    pub fn powi(&self, n: u32) -> Self {
        match n {
            0 => Self::from_int(1, self.prec),
            1 => self.clone(),
            _ if n.is_multiple_of(2) => self.powi(n / 2).sqr(),
            _ => &self.powi(n - 1) * self,
        }
    }

    pub fn recip(&self) -> Option<Self> {
        Self::from_int(1, self.prec).checked_div(self)
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.contains_zero() {
            return None;
        }
        let (a, b) = Self::aligned(self, rhs);
        let p = a.prec;
        let al = &a.lo << p;
        let ah = &a.hi << p;
        let cands = [(&al, &b.lo), (&al, &b.hi), (&ah, &b.lo), (&ah, &b.hi)];
        let lo = cands.iter().map(|(x, y)| x.div_floor(y)).min().unwrap();
        let hi = cands.iter().map(|(x, y)| ceil_div(x, y)).max().unwrap();
        Some(Self::from_raw(lo, hi, p))
    }

    pub fn scale_rational(&self, q: &ExactRational) -> Self {
        self * &Self::from_rational(q, self.prec)
    }

    /// Comparisons that hold for every point of the interval.
    pub fn certainly_lt(&self, q: &ExactRational) -> bool {
        self.hi() < *q
    }

    pub fn certainly_le(&self, q: &ExactRational) -> bool {
        self.hi() <= *q
    }

    pub fn certainly_gt(&self, q: &ExactRational) -> bool {
        self.lo() > *q
    }

    pub fn certainly_ge(&self, q: &ExactRational) -> bool {
        self.lo() >= *q
    }

    /// Splits at the midpoint (at one extra bit of precision).
    pub fn bisect(&self) -> (Self, Self) {
        let p = self.prec + 1;
        let lo = &self.lo << 1;
        let hi = &self.hi << 1;
        let m: BigInt = (&lo + &hi) >> 1u32;
        (Self::from_raw(lo, m.clone(), p), Self::from_raw(m, hi, p))
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]@{}",
            to_decimal(&self.lo(), 20, false),
            to_decimal(&self.hi(), 20, true),
            self.prec
        )
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        let (a, b) = Interval::aligned(self, rhs);
        Interval::from_raw(a.lo + b.lo, a.hi + b.hi, a.prec)
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        let (a, b) = Interval::aligned(self, rhs);
        Interval::from_raw(a.lo - b.hi, a.hi - b.lo, a.prec)
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let (a, b) = Interval::aligned(self, rhs);
        let p = a.prec;
        let (lo, hi) = if a.is_nonnegative() && b.is_nonnegative() {
            (&a.lo * &b.lo, &a.hi * &b.hi)
        } else {
            let c = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
            (c.iter().min().unwrap().clone(), c.iter().max().unwrap().clone())
        };
        Interval::from_raw(floor_shr(&lo, p), ceil_shr(&hi, p), p)
    }
}

impl<'a> Div<&'a Interval> for &'a Interval {
    type Output = Interval;
    /// Panics when the divisor contains zero; use `checked_div` where that can happen.
    fn div(self, rhs: &Interval) -> Interval {
        self.checked_div(rhs).expect("interval division by an interval containing zero")
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::from_raw(-&self.hi, -&self.lo, self.prec)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval { (&self).$m(rhs) }
        }
        impl<'a> $tr<Interval> for &'a Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval { self.$m(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

/// `interval_from_rational` under its operation name.
pub fn interval_from_rational(q: &ExactRational, prec: u32) -> Interval {
    Interval::from_rational(q, prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{int, rat};

    #[test]
    fn shifts_round_outward_for_negatives() {
        let x = BigInt::from(-5);
        assert_eq!(floor_shr(&x, 1), BigInt::from(-3));
        assert_eq!(ceil_shr(&x, 1), BigInt::from(-2));
        assert_eq!(floor_shr(&BigInt::from(5), 1), BigInt::from(2));
        assert_eq!(ceil_shr(&BigInt::from(5), 1), BigInt::from(3));
    }

    #[test]
    fn dyadic_is_exact() {
        let h = Interval::from_rational(&rat(1, 2), 64);
        assert!(h.is_point());
        assert_eq!(h.lo(), rat(1, 2));
    }

    #[test]
    fn non_dyadic_is_tight() {
        let q = rat(22, 7);
        let i = Interval::from_rational(&q, 64);
        assert!(i.contains(&q));
        assert!(i.width() <= rat(2, 1) / int(1i64 << 62) / int(4));
    }

    #[test]
    fn arithmetic_contains_exact() {
        let p = 80;
        let a = rat(-3, 7);
        let b = rat(5, 11);
        let ia = Interval::from_rational(&a, p);
        let ib = Interval::from_rational(&b, p);
        assert!((&ia + &ib).contains(&(&a + &b)));
        assert!((&ia - &ib).contains(&(&a - &b)));
        assert!((&ia * &ib).contains(&(&a * &b)));
        assert!((&ia / &ib).contains(&(&a / &b)));
        assert!(ia.sqr().contains(&(&a * &a)));
        assert!(ia.powi(5).contains(&(&a * &a * &a * &a * &a)));
    }

    #[test]
    fn division_by_zero_interval_is_refused() {
        let z = Interval::from_bounds(&rat(-1, 2), &rat(1, 2), 32);
        assert!(Interval::from_int(1, 32).checked_div(&z).is_none());
    }

    #[test]
    fn sqr_of_straddling_interval_starts_at_zero() {
        let z = Interval::from_bounds(&rat(-1, 2), &rat(1, 4), 32);
        let s = z.sqr();
        assert_eq!(s.lo(), int(0));
        assert_eq!(s.hi(), rat(1, 4));
    }
}
