//! Standalone numeric inequalities of the λ = 1 reduction, the quotient bounds over
//! their case split, the large-n aggregates, and the assembly of the large-k lower bound.

use num_traits::{Signed, Zero};

use super::certificate::{params, Certificate, Claim, Computed, Mode};
use super::context::{effective_mode, induction_indices, VerificationContext};
use super::induction::g_component_certificates;
use super::pointwise::{prefactor, E_HIGH, E_LOW};
use super::quotients::{case_max, QuotientCase};
use crate::numerics::rational::{int, parse_rational, rat, to_decimal, to_pq, ExactRational};
use crate::numerics::Interval;
use crate::orthopoly::gegenbauer::lambda_q;

fn dec(s: &str) -> ExactRational {
    parse_rational(s).expect("decimal literal")
}

struct Consts {
    b: ExactRational,
    m0: ExactRational,
    c_small: ExactRational,
    c_large: ExactRational,
}

fn consts() -> Consts {
    Consts { b: rat(33, 100), m0: rat(1, 25), c_small: dec("0.12"), c_large: dec("0.026") }
}

fn exact_cert(id: &str, claim: Claim, value: ExactRational, mode: Mode, note: impl Into<String>) -> Certificate {
    Certificate::judge(format!("ledger.{id}"), params([]), claim, Computed::exact(value), effective_mode(mode, true), 0, note)
}

/// Inequalities that involve only b, m_0 and the c_k bounds.
fn scalar_items(mode: Mode) -> Vec<Certificate> {
    let Consts { b, m0, c_small, c_large } = consts();
    let b2 = &b * &b;
    let one_b = int(1) - &b;
    let w = &one_b / int(2);
    let quad = (int(7) * &b2 + int(10) * &b - int(1)) / int(16);
    let mut out = vec![
        exact_cert("case1.bracket", Claim::at_least(dec("0.191")), quad.clone(), mode, "(7b^2+10b-1)/16"),
        exact_cert(
            "case1.bracket-at-w",
            Claim::equals(quad.clone()),
            int(1) - int(3) * &w + rat(7, 4) * &w * &w,
            mode,
            "1 - 3w + 7w^2/4 at w = (1-b)/2",
        ),
        exact_cert(
            "case1.w-below-vertex",
            Claim::less_than(rat(6, 7)),
            w.clone(),
            mode,
            "1 - 3w + 7w^2/4 decreases for w < 6/7",
        ),
        exact_cert("case1.margin", Claim::greater_than(int(0)), dec("0.191") - &c_small - dec("0.054"), mode, "0.191 - 0.12 - 0.054"),
    ];
    let phi = &b2 + (&b + int(1)) * (int(3) * &b - int(1)) / int(4);
    out.push(exact_cert("case2.phi-prime-bracket", Claim::at_least(dec("0.105")), phi, mode, "b^2 + (b+1)(3b-1)/4"));
    out.push(exact_cert(
        "case2.phi-prime-margin",
        Claim::greater_than(int(0)),
        dec("0.105") - int(2) * &c_large,
        mode,
        "0.105 - 2c_k with c_k < 0.026",
    ));
    out.push(exact_cert(
        "case2.sub-margin",
        Claim::greater_than(int(0)),
        dec("0.02746") - &c_large - dec("0.016") * &m0,
        mode,
        "0.02746 - c_k - 0.016 m_0",
    ));
    out.push(exact_cert(
        "case2.rest-margin",
        Claim::greater_than(int(0)),
        dec("0.05") - &c_large - rat(2, 3) * &m0,
        mode,
        "0.05 - c_k - (2/3) m_0",
    ));
    out.push(exact_cert(
        "case3.bracket",
        Claim::at_least(dec("0.04")),
        (&b2 - &c_large) / int(2),
        mode,
        "(b^2 - c_k)/2 with c_k < 0.026",
    ));
    out.push(exact_cert("case3.constant", Claim::equals(dec("1.7956")), int(4) * &one_b * &one_b, mode, "4(1-b)^2"));
    out.push(exact_cert("case3.margin", Claim::greater_than(int(0)), dec("0.04") - dec("0.035"), mode, "0.04 - 0.035"));
    out
}

/// 1.7956/d0² ≤ 0.0071, which turns 1.7956/(λ_k a)² into 0.0071(λ_{n+4}/λ_k)² for a ≥ d0/λ_{n+4}.
fn case3_scale(d0: u64, mode: Mode) -> Certificate {
    let v = dec("1.7956") / int((d0 * d0) as i64);
    Certificate::judge(
        "ledger.case3.scale",
        params([("d0", d0.to_string())]),
        Claim::at_most(dec("0.0071")),
        Computed::exact(v),
        effective_mode(mode, true),
        0,
        "1.7956/d0^2",
    )
}

/// min over X ≥ 1/2 of 3b²/2 + (1-b)b X - (1 - (1-b)/(4X))²/2, the bracket of φ(1/2) with
/// X = d/(2λ_k a). It increases for X ≥ 1, so cells on [1/2, 1] suffice; on a cell
/// [x0, x1] the value is at least 3b²/2 + (1-b)b x0 - (1 - (1-b)/(4x1))²/2.
pub fn case2_sub_bracket_min(floor: &ExactRational) -> (ExactRational, ExactRational) {
    let b = rat(33, 100);
    let base = rat(3, 2) * &b * &b;
    let slope = (int(1) - &b) * &b;
    let c = (int(1) - &b) / int(4);
    let f_lo = |x0: &ExactRational, x1: &ExactRational| {
        let t = int(1) - &c / x1;
        &base + &slope * x0 - &t * &t / int(2)
    };
    let f = |x: &ExactRational| f_lo(x, x);
    let mut lower: Option<ExactRational> = None;
    let mut upper: Option<ExactRational> = None;
    let mut stack = vec![(rat(1, 2), int(1), 0u32)];
    while let Some((x0, x1, depth)) = stack.pop() {
        let lo = f_lo(&x0, &x1);
        if lo < *floor && depth < 30 {
            let mid = (&x0 + &x1) / int(2);
            stack.push((mid.clone(), x1, depth + 1));
            stack.push((x0, mid, depth + 1));
            continue;
        }
        let v = f(&x0);
        lower = Some(lower.map_or(lo.clone(), |z| std::cmp::min(z, lo)));
        upper = Some(upper.map_or(v.clone(), |z| std::cmp::min(z, v)));
    }
    (lower.expect("cells"), upper.expect("cells"))
}

/// Inf over k ≥ 31 of 3b²/2 + (1-b)b/2 - (1 - (λ_k/λ_{k+1})(1-b)/2)²/2; the ratio
/// λ_k/λ_{k+1} increases with k, so k = 31 attains it.
pub fn case2_rest_bracket(k: u64) -> ExactRational {
    let b = rat(33, 100);
    let r = lambda_q(k) / lambda_q(k + 1);
    let t = int(1) - r * (int(1) - &b) / int(2);
    rat(3, 2) * &b * &b + (int(1) - &b) * &b / int(2) - &t * &t / int(2)
}

fn bracket_items(mode: Mode) -> Vec<Certificate> {
    let floor = dec("0.02746");
    let (lo, hi) = case2_sub_bracket_min(&floor);
    let m = effective_mode(mode, true);
    vec![
        Certificate::judge(
            "ledger.case2.sub-bracket",
            params([("x_min", "1/2".to_string())]),
            Claim::at_least(floor),
            Computed::range(lo, hi),
            m,
            0,
            "min over X = d/(2 lambda_k a) >= 1/2 of 3b^2/2 + (1-b)bX - (1-(1-b)/(4X))^2/2",
        ),
        Certificate::judge(
            "ledger.case2.rest-bracket",
            params([("k_min", "31".to_string())]),
            Claim::at_least(dec("0.05")),
            Computed::exact(case2_rest_bracket(31)),
            m,
            0,
            "infimum over k >= 31 of 3b^2/2 + (1-b)b/2 - (1 - (lambda_k/lambda_{k+1})(1-b)/2)^2/2, at k = 31",
        ),
    ]
}

/// Claim per case: bd1 < 0.054, case-2 max < 1/3, case-2 sub < 0.008, bd2 ≤ 0.004, case 3 ≤ 0.035.
pub fn case_claim(case: QuotientCase) -> Claim {
    match case {
        QuotientCase::Bd1 => Claim::less_than(dec("0.054")),
        QuotientCase::Case2Max => Claim::less_than(rat(1, 3)),
        QuotientCase::Case2Sub => Claim::less_than(dec("0.008")),
        QuotientCase::Bd2 => Claim::at_most(dec("0.004")),
        QuotientCase::Case3 => Claim::at_most(dec("0.035")),
    }
}

/// Maxima of the quotient quantities over n ≡ 1 (mod 4) in [from, to] and both α endpoints.
/// Each (n, k) value is monotone in α, so the larger endpoint maximum is the supremum.
pub fn quotient_items(from: u64, to: u64, d0: u64, mode: Mode) -> Vec<Certificate> {
    let ctx = VerificationContext::with_d0(from, d0);
    let split = (8u64, 2 * d0);
    let m = effective_mode(mode, true);
    let mut out = Vec::new();
    for case in QuotientCase::ALL {
        let maxima: Vec<_> = ctx.alpha_endpoints().iter().filter_map(|a| case_max(case, from, to, a, split)).collect();
        let p = params([("n_from", from.to_string()), ("n_to", to.to_string()), ("d0", d0.to_string())]);
        let id = format!("ledger.quotient.{}", case.id());
        match maxima.iter().max_by(|x, y| x.value.cmp(&y.value)) {
            Some(best) => {
                let note = format!(
                    "max at n = {}, k = {} ({}); alpha endpoints give {}",
                    best.n,
                    best.k,
                    to_decimal(&best.value, 8, true),
                    maxima.iter().map(|x| to_decimal(&x.value, 8, true)).collect::<Vec<_>>().join(", ")
                );
                out.push(Certificate::judge(id, p, case_claim(case), Computed::exact(best.value.clone()), m, 0, note));
            }
            None => out.push(Certificate::judge(id, p, case_claim(case), Computed::exact(int(0)), m, 0, "case is empty on this range")),
        }
    }
    out
}

/// The two closed-form quotient bounds, maximized over n in [from, to] and both α endpoints.
fn stated_quotient_items(from: u64, to: u64, mode: Mode) -> Vec<Certificate> {
    let ctx = VerificationContext::new(from);
    let q_max = |n: i64, a: &ExactRational| {
        let u = int(7) * a * int(2 * n + 5);
        (&u - int(11)) / (int(n + 2) * (int(3) * &u + int(22)))
    };
    let q_bd2 = |n: i64, a: &ExactRational| {
        (int(7) * a * int(n * n + 16 * n + 36) + int(44)) / (int(n + 2) * (int(21) * a * int(n * n + 8 * n + 14) + int(44)))
    };
    let mut best = [(ExactRational::zero(), 0u64), (ExactRational::zero(), 0u64)];
    for n in induction_indices(from, to) {
        for a in ctx.alpha_endpoints() {
            for (slot, v) in [q_max(n as i64, &a), q_bd2(n as i64, &a)].into_iter().enumerate() {
                if v > best[slot].0 {
                    best[slot] = (v, n);
                }
            }
        }
    }
    let m = effective_mode(mode, true);
    let p = || params([("n_from", from.to_string()), ("n_to", to.to_string())]);
    let [(v1, n1), (v2, n2)] = best;
    vec![
        Certificate::judge(
            "ledger.quotient.case2-max-closed-form",
            p(),
            Claim::less_than(rat(1, 3)),
            Computed::exact(v1),
            m,
            0,
            format!("(7a(2n+5)-11)/((n+2)(21a(2n+5)+22)), max at n = {n1}"),
        ),
        Certificate::judge(
            "ledger.quotient.bd2-closed-form",
            p(),
            Claim::at_most(dec("0.004")),
            Computed::exact(v2),
            m,
            0,
            format!("(7a(n^2+16n+36)+44)/((n+2)(21a(n^2+8n+14)+44)), max at n = {n2}"),
        ),
    ]
}

/// The large-n aggregates, plus the stated constants added up.
fn aggregate_items(d0: u64, mode: Mode) -> Vec<Certificate> {
    let mut out: Vec<Certificate> = g_component_certificates(10001, d0, mode)
        .into_iter()
        .map(|mut c| {
            c.check_id = c.check_id.replacen("induction.", "ledger.", 1);
            c
        })
        .collect();
    let sum = dec("-853.33") + dec("571.123") + dec("280.95");
    out.push(exact_cert(
        "aggregate.stated-sum",
        Claim::less_than(dec("-1.257")),
        sum,
        mode,
        "-853.33 + 571.123 + 280.95, against the strict inequality as stated",
    ));
    out
}

/// -48√(2/π) s ≥ -0.04 for the stated multipliers s and for the sums of the stated E_i and remainder bounds.
fn assembly_items(mode: Mode, prec: u32) -> Vec<Certificate> {
    let pf = prefactor(prec);
    let m = effective_mode(mode, false);
    let sum_abs = |xs: &[&str], rem: &str| xs.iter().map(|s| dec(s).abs()).fold(dec(rem), |a, x| a + x);
    let items: [(&str, ExactRational, String); 4] = [
        ("low-stated", dec("0.005"), "multiplier 0.005 as stated".to_string()),
        ("high-stated", dec("0.01"), "multiplier 0.01 as stated".to_string()),
        ("low-sum", sum_abs(&E_LOW, "8e-6"), "sum of the l in [5, 6.5] bounds on -E_i and |R|".to_string()),
        ("high-sum", sum_abs(&E_HIGH, "3e-7"), "sum of the l > 6.5 bounds on -E_i and |R|".to_string()),
    ];
    items
        .into_iter()
        .map(|(id, s, note)| {
            let v: Interval = -(pf.scale_rational(&s));
            Certificate::judge(
                format!("ledger.e-assembly.{id}"),
                params([("multiplier", to_pq(&s))]),
                Claim::at_least(rat(-1, 25)),
                Computed::enclosure(&v),
                m,
                prec,
                note,
            )
        })
        .collect()
}

/// The whole ledger. Quotient maxima run over n ≡ 1 (mod 4) in [from, to], n ≥ 65.
pub fn scalar_ledger(from: u64, to: u64, d0: u64, mode: Mode, prec: u32) -> Vec<Certificate> {
    let from = from.max(65);
    let mut out = scalar_items(mode);
    out.push(case3_scale(d0, mode));
    out.extend(bracket_items(mode));
    if from <= to {
        out.extend(quotient_items(from, to, d0, mode));
        out.extend(stated_quotient_items(from, to, mode));
    }
    out.extend(aggregate_items(d0, mode));
    out.extend(assembly_items(mode, prec));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::to_f64;
    use crate::verifier::certificate::Verdict;

    fn verdict(certs: &[Certificate], id: &str) -> Verdict {
        certs.iter().find(|c| c.check_id == id).unwrap_or_else(|| panic!("{id}")).verdict
    }

    #[test]
    fn scalar_values() {
        let c = scalar_items(Mode::Exact);
        assert_eq!(c[0].computed.exact, Some(dec("0.19139375")));
        assert_eq!(verdict(&c, "ledger.case1.bracket-at-w"), Verdict::Pass);
        assert_eq!(verdict(&c, "ledger.case2.phi-prime-bracket"), Verdict::Pass);
        assert_eq!(verdict(&c, "ledger.case2.rest-margin"), Verdict::Fail);
        assert_eq!(verdict(&c, "ledger.case3.constant"), Verdict::Pass);
    }

    #[test]
    fn sub_bracket_min_near_stated_constant() {
        let (lo, hi) = case2_sub_bracket_min(&dec("0.02746"));
        assert!(lo >= dec("0.02746"));
        assert!(hi < dec("0.02748"));
        // a direct scan at step 1/10000 never goes below the certified lower end
        let b = 0.33f64;
        let f = |x: f64| 1.5 * b * b + (1.0 - b) * b * x - 0.5 * (1.0 - (1.0 - b) / (4.0 * x)).powi(2);
        let scan = (0..=5000).map(|i| f(0.5 + i as f64 / 10000.0)).fold(f64::INFINITY, f64::min);
        assert!(scan >= to_f64(&lo) - 1e-12 && scan <= to_f64(&hi) + 1e-9);
    }

    #[test]
    fn rest_bracket_at_31_and_limit() {
        assert!((to_f64(&case2_rest_bracket(31)) - 0.0398).abs() < 1e-3);
        assert!(case2_rest_bracket(31) < case2_rest_bracket(32));
        assert!(to_f64(&case2_rest_bracket(100_000)) > 0.0527);
    }

    #[test]
    fn assembly() {
        let c = assembly_items(Mode::Interval, 128);
        assert_eq!(verdict(&c, "ledger.e-assembly.low-stated"), Verdict::Fail);
        assert_eq!(verdict(&c, "ledger.e-assembly.high-stated"), Verdict::Fail);
        assert_eq!(verdict(&c, "ledger.e-assembly.low-sum"), Verdict::Pass);
        assert_eq!(verdict(&c, "ledger.e-assembly.high-sum"), Verdict::Pass);
    }

    #[test]
    fn short_range_ledger() {
        let c = scalar_ledger(65, 101, 16, Mode::Exact, 128);
        assert!(c.len() >= 12);
        assert_eq!(verdict(&c, "ledger.aggregate.stated-sum"), Verdict::Fail);
        assert_eq!(verdict(&c, "ledger.quotient.bd2-closed-form"), Verdict::Fail);
        assert_eq!(verdict(&c, "ledger.quotient.case2-max"), Verdict::Pass);
        let ids: std::collections::BTreeSet<_> = c.iter().map(|c| c.check_id.clone()).collect();
        assert_eq!(ids.len(), c.len());
    }
}
