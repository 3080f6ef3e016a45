//! The constant C̃_ν bounding |(1-x²)F_n^ν|, the c_n tail it gives past n = 428, and a
//! certified grid check of the bound itself.

use num_traits::{One, Zero};

use super::certificate::{params, Certificate, Claim, Computed, Mode};
use super::context::effective_mode;
use crate::asymptotics::theta::theta_window_samples;
use crate::numerics::elementary::sqrt;
use crate::numerics::rational::{int, parse_rational, pochhammer, rat, to_decimal, ExactRational};
use crate::numerics::{HalfInteger, Interval};
use crate::orthopoly::cosine::CosineSeries;
use crate::orthopoly::extremum::{certified_max_of, Target};
use crate::orthopoly::gegenbauer::{NU_7_2, NU_9_2};

/// First index at which the tail bound takes over from the computed c_n.
pub const TAIL_START: u64 = 429;

fn dec(s: &str) -> ExactRational {
    parse_rational(s).expect("decimal literal")
}

/// C̃_ν for ν < 5: (4ν+2) Σ_{k=0}^{4} (-1)^k (6-k)_k (6+ν)_k / (k! (ν+1/2)_k) z^k,
/// z = (ν - √ν + 1/2) / ((11/2)(ν + 11/2)); for ν ≥ 5, m = ν in place of m = 5.
pub fn c_tilde(nu: HalfInteger, prec: u32) -> Interval {
    let v = nu.value();
    let w = prec + 32;
    let root = sqrt(&Interval::from_rational(&v, w), w).expect("nu > 0");
    let big = v >= int(5);
    // m is the smallest admissible half-index: 5 below ν = 5, ν from there on
    let m = if big { v.clone() } else { int(5) };
    let num = &Interval::from_rational(&(&v + rat(1, 2)), w) - &root;
    let den = (&m + rat(1, 2)) * (&m + &v + rat(1, 2));
    let z = num.scale_rational(&(int(1) / den));
    let mut sum = Interval::zero(w);
    let mut zk = Interval::from_int(1, w);
    let mut fact = ExactRational::one();
    for k in 0..=4u64 {
        if k > 0 {
            fact *= int(k as i64);
            zk = &zk * &z;
        }
        let c = pochhammer(&(&m - int(k as i64) + int(1)), k) * pochhammer(&(&m + &v + int(1)), k)
            / (&fact * pochhammer(&(&v + rat(1, 2)), k));
        let c = if k % 2 == 1 { -c } else { c };
        sum = &sum + &zk.scale_rational(&c);
    }
    sum.scale_rational(&(&v * int(4) + int(2))).with_prec(prec)
}

/// (1/n)(C̃_{7/2}/(n+8) + C̃_{9/2}).
pub fn tail_bound(n: u64, prec: u32) -> Interval {
    let a = c_tilde(NU_7_2, prec).scale_rational(&rat(1, (n + 8) as i64));
    (&a + &c_tilde(NU_9_2, prec)).scale_rational(&rat(1, n as i64))
}

/// C̃_{7/2} ≤ 9.19, C̃_{9/2} ≤ 11.02, the tail at n = 429, and the coarser 11.1/(n-1) form.
pub fn tail_certificates(mode: Mode, prec: u32) -> Vec<Certificate> {
    let m = effective_mode(mode, false);
    let c72 = c_tilde(NU_7_2, prec);
    let c92 = c_tilde(NU_9_2, prec);
    let n = TAIL_START;
    // c_n = c^{7/2}_{n-1} ≤ (1/(n-1))(C̃_{7/2}/(n+7) + C̃_{9/2}), and the bracket decreases in n
    let bracket = &c72.scale_rational(&rat(1, (n + 7) as i64)) + &c92;
    vec![
        Certificate::judge(
            "one-minus-x2.c-tilde.nu7",
            params([("nu", "7/2".to_string())]),
            Claim::at_most(dec("9.19")),
            Computed::enclosure(&c72),
            m,
            prec,
            "",
        ),
        Certificate::judge(
            "one-minus-x2.c-tilde.nu9",
            params([("nu", "9/2".to_string())]),
            Claim::at_most(dec("11.02")),
            Computed::enclosure(&c92),
            m,
            prec,
            "",
        ),
        Certificate::judge(
            format!("one-minus-x2.tail.n{n}"),
            params([("n", n.to_string())]),
            Claim::less_than(rat(13, 500)),
            Computed::enclosure(&tail_bound(n, prec)),
            m,
            prec,
            "(1/n)(C_7/2/(n+8) + C_9/2), decreasing in n",
        ),
        Certificate::judge(
            format!("one-minus-x2.tail-coarse.n{n}"),
            params([("n", n.to_string())]),
            Claim::at_most(dec("11.1")),
            Computed::enclosure(&bracket),
            m,
            prec,
            format!("C_7/2/(n+7) + C_9/2; then c_n <= 11.1/(n-1) <= {} for n >= {n}", to_decimal(&(dec("11.1") / int((n - 1) as i64)), 6, true)),
        ),
        Certificate::judge(
            format!("one-minus-x2.tail-coarse-value.n{n}"),
            params([("n", n.to_string())]),
            Claim::less_than(rat(13, 500)),
            Computed::exact(dec("11.1") / int((n - 1) as i64)),
            effective_mode(mode, true),
            0,
            "11.1/(n-1)",
        ),
    ]
}

/// n(n+2ν) max_{[0,1]} |(1-x²)F_n^ν(x)| - C̃_ν ≤ 0; F_n^ν has parity n, so [0, 1] covers [-1, 1].
pub fn check_one_minus_x2_bound(n: u64, nu: HalfInteger, mode: Mode, prec: u32) -> Certificate {
    let series = CosineSeries::normalized_gegenbauer(n as usize, nu).times_sin2();
    let e = certified_max_of(&series, Target::Abs, (&ExactRational::zero(), &ExactRational::one()));
    let scale = int(n as i64) * (int(n as i64) + nu.value() * int(2));
    let v = &e.value_enclosure.with_prec(prec).scale_rational(&scale) - &c_tilde(nu, prec);
    Certificate::judge(
        format!("one-minus-x2.grid.n{n}.nu{}", nu.twice()),
        params([("n", n.to_string()), ("nu", nu.to_string())]),
        Claim::at_most(ExactRational::zero()),
        Computed::enclosure(&v),
        effective_mode(mode, false),
        prec,
        format!("n(n+2nu) max |(1-x^2)F| - C_nu; maximum near x = {:.6}", e.location),
    )
}

/// Smallest n the bound is stated for: max(2ν+2, 12).
pub fn first_n(nu: HalfInteger) -> u64 {
    std::cmp::max(u64::from(nu.twice()) + 2, 12)
}

/// Grid checks and θ-window samples for both orders at n.
pub fn grid_certificates(n: u64, mode: Mode, prec: u32) -> Vec<Certificate> {
    let mut out = Vec::new();
    for nu in [NU_7_2, NU_9_2] {
        if n >= first_n(nu) {
            out.push(check_one_minus_x2_bound(n, nu, mode, prec));
            out.push(theta_window_samples(n as usize, nu, prec, mode));
        }
    }
    out
}
