//! Sign checks of v′(θ) for v(θ) = sin²θ F_n^ν(cos θ) at the two ends of the window
//! that contains the first extremum, with
//! v′(θ) = sin θ (2 cos θ F_n^ν - n(n+2ν)/(2ν+1) sin²θ F_{n-1}^{ν+1}).

use crate::numerics::elementary::{arcsin, cos, sin, sqrt};
use crate::numerics::rational::{int, rat, to_decimal, ExactRational};
use crate::numerics::{HalfInteger, Interval};
use crate::orthopoly::gegenbauer::normalized_gegenbauer;
use crate::verifier::certificate::{params, Certificate, Claim, Computed, Mode};

/// δ = (ν - √ν + 1/2)/(ν + 1/2).
pub fn delta(nu: HalfInteger, prec: u32) -> Interval {
    let v = Interval::from_rational(&nu.value(), prec);
    let root = sqrt(&v, prec).expect("ν > 0");
    let half = Interval::from_rational(&rat(1, 2), prec);
    (&(&v - &root) + &half).checked_div(&(&v + &half)).expect("positive")
}

/// 2 cos θ F_n^ν(cos θ) - n(n+2ν)/(2ν+1) sin²θ F_{n-1}^{ν+1}(cos θ), i.e. v′(θ)/sin θ.
pub fn v_prime_over_sin(n: usize, nu: HalfInteger, c: &Interval, s2: &Interval, prec: u32) -> Interval {
    let f = normalized_gegenbauer(n, nu).eval(c);
    let g = normalized_gegenbauer(n - 1, nu.plus_one()).eval(c);
    let nq = int(n as i64);
    let v = nu.value();
    let kq = &nq * (&nq + &v * int(2)) / (&v * int(2) + int(1));
    let two = Interval::from_int(2, prec);
    &(&two * &(c * &f)) - &(&Interval::from_rational(&kq, prec) * &(s2 * &g))
}

/// Claim: max(v′(θ̄)/sin θ̄, -v′(θ)/sin θ at θ = θ̲(1 - 10⁻³)) < 0.
pub fn theta_window_samples(n: usize, nu: HalfInteger, prec: u32, mode: Mode) -> Certificate {
    let w = prec.max(128) + 64;
    let nq = int(n as i64);
    let v = nu.value();
    let s_bar: ExactRational = (&v * int(4) + int(2)) / (&nq * (&nq + &v * int(2)));
    let s2_bar = Interval::from_rational(&s_bar, w);
    let c_bar = sqrt(&(&Interval::from_int(1, w) - &s2_bar), w).expect("s̄ < 1");
    let upper_end = v_prime_over_sin(n, nu, &c_bar, &s2_bar, w);

    let d = delta(nu, w);
    let s_low = sqrt(&(&d * &s2_bar), w).expect("positive");
    let theta_low = arcsin(&s_low, w).expect("in range");
    let theta = &theta_low * &Interval::from_rational(&rat(999, 1000), w);
    let c = cos(&theta, w);
    let s = sin(&theta, w);
    let lower_end = -v_prime_over_sin(n, nu, &c, &s.sqr(), w);

    let lo = std::cmp::max(upper_end.lo(), lower_end.lo());
    let hi = std::cmp::max(upper_end.hi(), lower_end.hi());
    let m = if mode == Mode::Float64 { Mode::Float64 } else { Mode::Interval };
    Certificate::judge(
        format!("one-minus-x2.theta-window.n{n}.nu{}", nu.twice()),
        params([("n", n.to_string()), ("nu", nu.to_string())]),
        Claim::negative(),
        Computed::range(lo, hi),
        m,
        prec,
        format!(
            "sampled sanity check: v'(theta_bar)/sin in [{}, {}], v'(0.999 theta_low)/sin in [{}, {}]",
            to_decimal(&upper_end.lo(), 8, false),
            to_decimal(&upper_end.hi(), 8, true),
            to_decimal(&(-lower_end.hi()), 8, false),
            to_decimal(&(-lower_end.lo()), 8, true)
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::gegenbauer::{NU_7_2, NU_9_2};
    use crate::verifier::certificate::Verdict;

    #[test]
    fn samples_hold() {
        assert_eq!(theta_window_samples(13, NU_7_2, 128, Mode::Interval).verdict, Verdict::Pass);
        assert_eq!(theta_window_samples(20, NU_9_2, 128, Mode::Interval).verdict, Verdict::Pass);
    }

    #[test]
    fn delta_seven_halves() {
        // (7/2 - √(7/2) + 1/2)/4 = 0.532291...
        let d = delta(NU_7_2, 128);
        let r = crate::numerics::rational::parse_rational("0.5322928266532573268").unwrap();
        assert!(num_traits::Signed::abs(&(d.mid() - r)) < crate::numerics::rational::parse_rational("1e-16").unwrap());
    }
}
