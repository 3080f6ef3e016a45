//! Pointwise checks on F̃′_k: the consecutive-difference constants c_n, the minimum
//! on [0, 1], the value at 1 - 8/λ_k, and the numeric steps of the large-k argument.

use num_traits::{One, Signed, Zero};

use super::cbounds::c_enclosure;
use super::certificate::{params, Certificate, Claim, Computed, Mode};
use super::context::effective_mode;
use crate::asymptotics::e_terms::{e_min_over, e_tail_lower, e_target, e_terms};
use crate::asymptotics::expansion::t3;
use crate::asymptotics::lower_bound::{check_lower_bound_large_k, lower_bound_large_k};
use crate::numerics::elementary::{gamma_ratio_scaled, pi, sqrt};
use crate::numerics::rational::{int, parse_rational, rat, to_decimal, to_pq, ExactRational};
use crate::numerics::{HalfInteger, Interval};
use crate::orthopoly::extremum::certified_min;
use crate::orthopoly::gegenbauer::{f_tilde_prime, lambda_q, NU_7_2, NU_9_2};
use crate::orthopoly::hypergeom::hypergeometric_partial_sums;
use crate::orthopoly::zeros::largest_zero_upper_bound;

fn dec(s: &str) -> ExactRational {
    parse_rational(s).expect("decimal literal")
}

/// Grid-and-slack extrema run in f64 with a rigorous error term, so they count as interval work.
fn grid_mode(mode: Mode) -> Mode {
    effective_mode(mode, false)
}

/// The claimed bound on c_n: ≤ 0.12 for n ≤ 29, < 0.026 from n = 30 on.
pub fn cn_claim(n: u64) -> Claim {
    if n <= 29 {
        Claim::at_most(dec("0.12"))
    } else {
        Claim::less_than(dec("0.026"))
    }
}

/// c_n against its claimed bound; the enclosure width goes into the notes.
pub fn cn_certificate(n: u64, mode: Mode, prec: u32) -> Certificate {
    let e = c_enclosure(n);
    Certificate::judge(
        format!("cn.n{n}"),
        params([("n", n.to_string())]),
        cn_claim(n),
        Computed::enclosure(&e),
        grid_mode(mode),
        prec,
        format!("enclosure width {}", to_decimal(&e.width(), 3, true)),
    )
}

/// min_{[0,1]} F̃′_k ≥ -0.04 from the exact polynomial.
pub fn min_certificate(k: u64, mode: Mode, prec: u32) -> Certificate {
    let e = certified_min(k as usize, (&ExactRational::zero(), &ExactRational::one()));
    Certificate::judge(
        format!("lemma-min.exact.k{k}"),
        params([("k", k.to_string())]),
        Claim::at_least(rat(-1, 25)),
        Computed::enclosure(&e.value_enclosure),
        grid_mode(mode),
        prec,
        format!("minimum near x = {:.6}", e.location),
    )
}

/// Value or bracket of F̃′_k(1 - 8/λ_k): exact for k ≤ 100, otherwise from the
/// alternating ₂F₁ partial sums through j1 = 5 and j2 = 6.
pub fn point_value(k: u64) -> Result<(ExactRational, ExactRational), String> {
    let x = int(1) - int(8) / lambda_q(k);
    if k <= 100 {
        let v = f_tilde_prime(k as usize).eval_rational(&x);
        return Ok((v.clone(), v));
    }
    let n = (k - 1) as usize;
    let t = int(1) - &x * &x;
    let (lo, hi) = hypergeometric_partial_sums(n, NU_7_2, &t, 5, 6).map_err(|e| e.to_string())?;
    if n % 2 == 1 {
        Ok((&x * lo, &x * hi))
    } else {
        Ok((lo, hi))
    }
}

/// 0.3 ≤ F̃′_k(1 - 8/λ_k) ≤ 0.33, compared exactly.
pub fn point_certificate(k: u64, mode: Mode) -> Certificate {
    let p = params([("k", k.to_string()), ("x", to_pq(&(int(1) - int(8) / lambda_q(k))))]);
    let claim = Claim::between(rat(3, 10), rat(33, 100));
    let m = effective_mode(mode, true);
    match point_value(k) {
        Ok((lo, hi)) => {
            let note = if k <= 100 { "exact polynomial value" } else { "2F1 partial sums j1 = 5, j2 = 6" };
            let computed = if lo == hi { Computed::exact(lo) } else { Computed::range(lo, hi) };
            Certificate::judge(format!("pointwise.k{k}"), p, claim, computed, m, 0, note)
        }
        Err(e) => Certificate::judge(format!("pointwise.k{k}"), p, claim, Computed::range(int(-1), int(1)), m, 0, e),
    }
}

/// |t_4(3)| ρ_{15/2}(k) / (l^{15/2} √(1 - l²/k²)), the remainder bound for l ≤ k/√2.
fn remainder_bound(k: u64, l: &ExactRational, prec: u32) -> Interval {
    let rho = gamma_ratio_scaled(k, HalfInteger::from_twice(15), prec).expect("k >= 1");
    let li = Interval::from_rational(l, prec);
    let l_pow = &li.powi(7) * &sqrt(&li, prec).expect("l > 0");
    let root = sqrt(&Interval::from_rational(&(int(1) - l * l / int((k * k) as i64)), prec), prec).expect("l < k");
    let t4 = Interval::from_rational(&t3(4).abs(), prec);
    (&t4 * &rho).checked_div(&(&l_pow * &root)).expect("positive")
}

/// The numeric steps at one large k: location of the minimum, the factor 1 - 16/k,
/// both remainder estimates, and the asymptotic lower bound itself.
pub fn large_k_certificates(k: u64, mode: Mode, prec: u32) -> Vec<Certificate> {
    let m = grid_mode(mode);
    let p = || params([("k", k.to_string())]);
    let kq = int(k as i64);
    let mut out = Vec::new();

    let xb = largest_zero_upper_bound(k as usize - 2, NU_9_2, prec);
    out.push(Certificate::judge(
        format!("lemma-min.minpt.k{k}"),
        p(),
        Claim::less_than(int(1) - rat(25, 2) / (&kq * &kq)),
        Computed::enclosure(&xb),
        m,
        prec,
        "bound on the largest zero of F_{k-2}^{9/2}",
    ));

    let rho = gamma_ratio_scaled(k, HalfInteger::from_twice(13), prec).expect("k >= 1");
    out.push(Certificate::judge(
        format!("lemma-min.rho.k{k}"),
        p(),
        Claim::at_most(int(1) - int(16) / &kq),
        Computed::enclosure(&rho),
        m,
        prec,
        "k^{13/2} Gamma(k)/Gamma(k+13/2)",
    ));

    let rho15 = gamma_ratio_scaled(k, HalfInteger::from_twice(15), prec).expect("k >= 1");
    let t4 = Interval::from_rational(&t3(4).abs(), prec);
    out.push(Certificate::judge(
        format!("lemma-min.remainder-constant.k{k}"),
        p(),
        Claim::less_than(rat(3, 2)),
        Computed::enclosure(&(&t4 * &rho15)),
        m,
        prec,
        "|t_4(3)| k^{15/2} Gamma(k)/Gamma(k+15/2)",
    ));

    // the bound decreases in l on [5, k/√2], so l = 5 and l = 6.5 give the suprema
    out.push(Certificate::judge(
        format!("lemma-min.remainder-low.k{k}"),
        p(),
        Claim::at_most(dec("8e-6")),
        Computed::enclosure(&remainder_bound(k, &int(5), prec)),
        m,
        prec,
        "sup over l in [5, 6.5], attained at l = 5",
    ));
    // for l > k/√2 the bound is 2|t_4| ρ_{15/2}(√2/k)^{15/2}, far below the value at 6.5
    let far = {
        let s2 = sqrt(&Interval::from_int(2, prec), prec).expect("positive");
        let q = s2.checked_div(&Interval::from_int(k as i64, prec)).expect("k > 0");
        let qp = &q.powi(7) * &sqrt(&q, prec).expect("positive");
        &(&(&t4 * &rho15) * &qp) * &Interval::from_int(2, prec)
    };
    let near = remainder_bound(k, &rat(13, 2), prec);
    out.push(Certificate::judge(
        format!("lemma-min.remainder-high.k{k}"),
        p(),
        Claim::at_most(dec("3e-7")),
        Computed::enclosure(&near.max(&far)),
        m,
        prec,
        format!(
            "sup over l > 6.5 is approached at l = 6.5; the l > k/sqrt2 regime gives {}",
            to_decimal(&far.hi(), 4, true)
        ),
    ));

    out.push(check_lower_bound_large_k(k, prec, mode));
    out
}

/// Stated lower bounds of E_0..E_4 on 5 ≤ l ≤ 6.5 and on l > 6.5.
pub const E_LOW: [&str; 5] = ["-0.0002", "-0.00025", "-1.5e-5", "-1e-7", "0"];
pub const E_HIGH: [&str; 5] = ["-0.00077", "-0.0002", "-1e-5", "-1e-7", "-1e-9"];

/// Certified lower bound of E_i over l ≥ 6.5, all k > 200: cells up to a cut-off and
/// the monotone tail bound beyond it.
fn e_high_min(i: usize, inv_k: &Interval, inv_k_max: &ExactRational, floor: &ExactRational, prec: u32) -> (ExactRational, ExactRational, ExactRational) {
    let mut cut = int(16);
    while e_tail_lower(i, &cut, inv_k_max, prec) < *floor && cut < int(1 << 16) {
        cut *= int(2);
    }
    let (lo, hi) = e_min_over(i, &rat(13, 2), &cut, inv_k, floor, true, prec);
    let tail = e_tail_lower(i, &cut, inv_k_max, prec);
    (std::cmp::min(lo, tail), hi, cut)
}

/// Lower bounds of each E_i on both l-ranges for every k > 200, and the E-split identity at (l, k) = (5, 201).
pub fn e_term_certificates(mode: Mode, prec: u32) -> Vec<Certificate> {
    let m = grid_mode(mode);
    let inv_k_max = rat(1, 201);
    let inv_k = Interval::from_bounds(&int(0), &inv_k_max, prec);
    let mut out = Vec::new();
    for (i, (low, high)) in E_LOW.iter().zip(E_HIGH).enumerate() {
        let lb = dec(low);
        let (lo, hi) = e_min_over(i, &int(5), &rat(13, 2), &inv_k, &lb, false, prec);
        out.push(Certificate::judge(
            format!("lemma-min.e{i}.low"),
            params([("l_lo", "5".to_string()), ("l_hi", "13/2".to_string()), ("k_min", "201".to_string())]),
            Claim::at_least(lb),
            Computed::range(lo, hi),
            m,
            prec,
            "minimum over l in [5, 6.5] and 1/k in [0, 1/201]",
        ));
        let hb = dec(high);
        let (lo, hi, cut) = e_high_min(i, &inv_k, &inv_k_max, &hb, prec);
        out.push(Certificate::judge(
            format!("lemma-min.e{i}.high"),
            params([("l_lo", "13/2".to_string()), ("k_min", "201".to_string())]),
            Claim::at_least(hb),
            Computed::range(std::cmp::min(lo, hi.clone()), hi),
            m,
            prec,
            format!("cells on [6.5, {}], monotone tail bound beyond", to_pq(&cut)),
        ));
    }

    let (l, k) = (Interval::from_int(5, prec), 201u64);
    let target = e_target(&l, k, prec);
    let split = e_terms(&l, &Interval::from_rational(&rat(1, k as i64), prec), prec)
        .iter()
        .fold(Interval::zero(prec), |acc, e| &acc + e);
    out.push(Certificate::judge(
        "lemma-min.e-identity.l5.k201",
        params([("l", "5".to_string()), ("k", k.to_string())]),
        Claim::equals(int(0)),
        Computed::enclosure(&(&target - &split)),
        m,
        prec,
        format!(
            "(1-16/k) sum over m = {}, sum of E_i = {}",
            to_decimal(&target.mid(), 8, false),
            to_decimal(&split.mid(), 8, false)
        ),
    ));
    out
}

/// The exact minimum at k = 201 lies above the asymptotic lower bound.
pub fn cross_check_certificate(mode: Mode, prec: u32) -> Certificate {
    let k = 201u64;
    let exact = certified_min(k as usize, (&ExactRational::zero(), &ExactRational::one()));
    let asym = lower_bound_large_k(k, &rat(1, 25), prec).map(|o| o.lower).unwrap_or_else(|_| int(1));
    Certificate::judge(
        format!("lemma-min.cross-check.k{k}"),
        params([("k", k.to_string())]),
        Claim::at_least(asym.clone()),
        Computed::enclosure(&exact.value_enclosure),
        grid_mode(mode),
        prec,
        format!("asymptotic lower bound {}", to_decimal(&asym, 8, false)),
    )
}

/// 48√(2/π) as an enclosure.
pub fn prefactor(prec: u32) -> Interval {
    let two_over_pi = Interval::from_int(2, prec).checked_div(&pi(prec)).expect("π > 0");
    &Interval::from_int(48, prec) * &sqrt(&two_over_pi, prec).expect("positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::to_f64;
    use crate::verifier::certificate::Verdict;

    #[test]
    fn cn_small_values() {
        let c = cn_certificate(6, Mode::Interval, 128);
        assert_eq!(c.verdict, Verdict::Pass);
        assert!(&c.computed.hi - &c.computed.lo <= dec("0.001"));
    }

    #[test]
    fn point_values_near_the_ends() {
        // F̃′_6 = F_5^{7/2} = x(39x⁴ - 26x² + 3)/16
        let x = int(1) - rat(8, 66);
        let x2 = &x * &x;
        let v = &x * (int(39) * &x2 * &x2 - int(26) * &x2 + int(3)) / int(16);
        assert_eq!(point_value(6).unwrap().0, v);
        assert_eq!(point_certificate(6, Mode::Exact).verdict, Verdict::Fail);
        assert_eq!(point_certificate(10, Mode::Exact).verdict, Verdict::Pass);
        assert_eq!(point_certificate(101, Mode::Exact).verdict, Verdict::Pass);
        assert_eq!(point_certificate(150, Mode::Exact).verdict, Verdict::Pass);
    }

    #[test]
    fn bracket_contains_exact_value() {
        for k in [102u64, 131] {
            let (lo, hi) = point_value(k).unwrap();
            let x = int(1) - int(8) / lambda_q(k);
            let v = f_tilde_prime(k as usize).eval_rational(&x);
            assert!(lo <= v && v <= hi);
        }
    }

    #[test]
    fn remainder_values() {
        let v = remainder_bound(201, &int(5), 128);
        // Γ(k)/Γ(k+1/2) ≈ k^{-1/2}(1 + 1/(8k) + 1/(128k²)), then six more factors 1/(k+1/2+i)
        let k = 201.0f64;
        let mut rho = (1.0 + 1.0 / (8.0 * k) + 1.0 / (128.0 * k * k)) * k.powi(7);
        for i in 0..7 {
            rho /= k + 0.5 + i as f64;
        }
        let expect = 45045.0 / 32768.0 * rho / (5f64.powf(7.5) * (1.0 - 25.0 / (k * k)).sqrt());
        assert!((to_f64(&v.mid()) / expect - 1.0).abs() < 1e-6, "{}", to_f64(&v.mid()));
        let certs = large_k_certificates(201, Mode::Interval, 128);
        let get = |s: &str| certs.iter().find(|c| c.check_id.contains(s)).unwrap().verdict;
        assert_eq!(get("remainder-low"), Verdict::Pass);
        assert_eq!(get("remainder-high"), Verdict::Fail);
        assert_eq!(get("minpt"), Verdict::Pass);
        assert_eq!(get("rho"), Verdict::Pass);
        assert_eq!(get("asymptotic"), Verdict::Pass);
    }

    #[test]
    fn prefactor_value() {
        assert!((to_f64(&prefactor(128).mid()) - 48.0 * (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-12);
    }
}
