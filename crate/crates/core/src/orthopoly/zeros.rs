//! Bounds on the largest zero of F_n^ν.

use num_traits::{Signed, Zero};

use super::polynomial::Polynomial;
use crate::numerics::elementary::{cos, pi, sqrt};
use crate::numerics::rational::{int, ExactRational};
use crate::numerics::{HalfInteger, Interval};

/// Enclosure of √((n-1)(n+2ν-2)/((n+ν-2)(n+ν-1))) · cos(π/(n+1)).
pub fn largest_zero_upper_bound(n: usize, nu: HalfInteger, prec: u32) -> Interval {
    assert!(n >= 2, "needs n >= 2");
    let nq = int(n as i64);
    let v = nu.value();
    let ratio = (&nq - int(1)) * (&nq + &v * int(2) - int(2)) / ((&nq + &v - int(2)) * (&nq + &v - int(1)));
    let w = prec + 16;
    let root = sqrt(&Interval::from_rational(&ratio, w), w).expect("ratio is positive");
    let angle = pi(w).checked_div(&Interval::from_int(n as i64 + 1, w)).expect("nonzero");
    (&root * &cos(&angle, w)).with_prec(prec)
}

/// Budan–Fourier: if p and all its derivatives are positive at b, p has no zero in [b, ∞).
pub fn no_zero_at_or_above(p: &Polynomial, b: &ExactRational) -> bool {
    if p.is_zero() {
        return false;
    }
    let mut q = p.clone();
    loop {
        if !q.eval_rational(b).is_positive() {
            return false;
        }
        if q.degree() == Some(0) {
            return true;
        }
        q = q.derivative();
        if q.is_zero() {
            return true;
        }
    }
}

/// Checks that F has no zero in (bound, 1], using a rational point at or below the bound.
pub fn bound_excludes_zeros(p: &Polynomial, bound: &Interval) -> bool {
    let b = bound.lo();
    if b.is_zero() && p.eval_rational(&b).is_zero() {
        return false;
    }
    no_zero_at_or_above(p, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::{parse_rational, rat};
    use crate::orthopoly::gegenbauer::{normalized_gegenbauer, NU_5_2, NU_7_2, NU_9_2};

    #[test]
    fn n2_formula() {
        let b = largest_zero_upper_bound(2, NU_9_2, 128);
        // √(9/((9/2)(11/2))) · 1/2 = √(4/11)/2 = 0.30151134457776362...
        assert!(b.contains(&parse_rational("0.3015113445777636").unwrap()) || b.lo() > parse_rational("0.30151134457776").unwrap());
        assert!(b.hi() < parse_rational("0.30151134457777").unwrap());
    }

    #[test]
    fn f2_largest_zero_is_below_bound() {
        // largest zero of (7x²-1)/6 is 1/√7 ≈ 0.37796
        // and the bound is attained here: it equals 1/√7 exactly
        let b = largest_zero_upper_bound(2, NU_5_2, 128);
        assert!(b.hi() * b.hi() >= rat(1, 7));
        assert!(b.lo() * b.lo() <= rat(1, 7));
        assert!(!no_zero_at_or_above(&normalized_gegenbauer(2, NU_5_2), &rat(1, 3)));
        assert!(no_zero_at_or_above(&normalized_gegenbauer(2, NU_5_2), &rat(38, 100)));
        let b6 = largest_zero_upper_bound(6, NU_7_2, 128);
        assert!(bound_excludes_zeros(&normalized_gegenbauer(6, NU_7_2), &b6));
    }

    #[test]
    fn minpt_at_201() {
        let k = 201usize;
        let b = largest_zero_upper_bound(k - 2, NU_9_2, 128);
        let target = int(1) - rat(25, 2) / int((k * k) as i64);
        assert!(b.certainly_lt(&target));
    }
}
