//! The per-k upper bound f_{k,a}(λ) on paired coefficient terms as a function of the mass
//! split λ = a_+/a, and a grid check that λ = 1 is the worst case.

use num_traits::{Signed, Zero};

use super::cbounds::c_enclosure;
use super::certificate::{params, Certificate, Claim, Computed, Mode};
use super::context::{effective_mode, VerificationContext};
use super::envelope::{envelope_auto, large_form, small_form, Side};
use crate::numerics::rational::{int, rat, to_decimal, to_pq, ExactRational};
use crate::orthopoly::gegenbauer::lambda_q;

/// Last n at which the conclusion carries the extra (1/2)(B_k + B_{k+1}) c_k a² term.
pub const CK_LAST: u64 = 65;

/// 𝓐_j^+(λa)² + 𝓐_j^-((1-λ)a)². On the minus side the parabola is used up to its
/// tangency point a_- = d/(2λ_j), which contains the a_- ≤ 4/λ_n range of the envelope.
fn envelope_square_sum(ctx: &VerificationContext, j: u64, a: &ExactRational, lam: &ExactRational) -> ExactRational {
    let plus = envelope_auto(ctx, Side::Plus, &(lam * a), j, true).expect("k + 1 <= n");
    let minus_mass = (int(1) - lam) * a;
    let minus = if minus_mass <= &ctx.d / (int(2) * lambda_q(j)) {
        small_form(ctx, &minus_mass, j)
    } else {
        large_form(ctx, &minus_mass, j, !minus_mass.is_zero())
    };
    &plus * &plus + &minus * &minus
}

/// B_j = β_j (p_j α² + (11/7) α) with β_j = (9/32)(2j+5), p_j = Λ - λ_j.
fn b_parts(ctx: &VerificationContext, j: u64) -> (ExactRational, ExactRational) {
    let beta = rat(9, 32) * int(2 * j as i64 + 5);
    let p = ctx.big_lambda() - lambda_q(j);
    (&beta * p, beta * rat(11, 7))
}

/// f_{k,a}(λ) at one α and c_k; the R_{k,3} branch follows the sign of B_{k+1} - B_k.
pub fn f_k_a(ctx: &VerificationContext, k: u64, a: &ExactRational, lam: &ExactRational, alpha: &ExactRational, c_k: &ExactRational) -> ExactRational {
    let bk = ctx.b_coeff(k, alpha);
    let bk1 = ctx.b_coeff(k + 1, alpha);
    let a2 = a * a;
    let split = lam * (int(1) - lam);
    let r1 = &bk * envelope_square_sum(ctx, k, a, lam) + &bk1 * envelope_square_sum(ctx, k + 1, a, lam);
    let r2 = int(2) * (&bk + &bk1) * c_k * &split * &a2;
    let r3 = if bk <= bk1 {
        int(2) * (&bk1 - &bk) * &split * &a2
    } else {
        int(2) * (&bk - &bk1) * &ctx.m0 * (int(1) - lam) * &a2
    };
    r1 + r2 + r3
}

/// max of q2 x² + q1 x over [lo, hi].
fn max_quadratic(q2: &ExactRational, q1: &ExactRational, lo: &ExactRational, hi: &ExactRational) -> ExactRational {
    let f = |x: &ExactRational| q2 * x * x + q1 * x;
    let mut best = std::cmp::max(f(lo), f(hi));
    if q2.is_negative() {
        let v = -q1 / (int(2) * q2);
        if *lo < v && v < *hi {
            best = std::cmp::max(best, f(&v));
        }
    }
    best
}

/// Worst case of a grid check, for the certificate note.
#[derive(Clone, Debug)]
pub struct GridWorst {
    pub value: ExactRational,
    pub k: u64,
    pub lam: ExactRational,
    pub a: ExactRational,
}

/// max over α in the context range of f(λ) - f(1) - extra·(1/2)(B_k + B_{k+1}) c_k a², with
/// c_k at the end of its enclosure that maximizes it. Each piece is a quadratic in α with no
/// constant term; pieces are cut where B_{k+1} - B_k changes sign.
pub fn excess_max(ctx: &VerificationContext, k: u64, a: &ExactRational, lam: &ExactRational, with_ck: bool) -> ExactRational {
    let (pk, qk) = b_parts(ctx, k);
    let (pk1, qk1) = b_parts(ctx, k + 1);
    let a2 = a * a;
    let split = lam * (int(1) - lam);
    let one = int(1);
    let env_k = envelope_square_sum(ctx, k, a, lam) - envelope_square_sum(ctx, k, a, &one);
    let env_k1 = envelope_square_sum(ctx, k + 1, a, lam) - envelope_square_sum(ctx, k + 1, a, &one);
    // R3 = (B_{k+1} - B_k) y
    let y_up = int(2) * &split * &a2;
    let y_down = -(int(2) * &ctx.m0 * (int(1) - lam) * &a2);
    // B_{k+1} - B_k = α (u α + v)
    let u = &pk1 - &pk;
    let v = &qk1 - &qk;
    let (lo, hi) = (&ctx.alpha.0, &ctx.alpha.1);
    let mut cuts = vec![lo.clone()];
    if !u.is_zero() {
        let s = -&v / &u;
        if *lo < s && s < *hi {
            cuts.push(s);
        }
    }
    cuts.push(hi.clone());
    let ck = c_enclosure(k);
    let mut best: Option<ExactRational> = None;
    for c in [ck.lo(), ck.hi()] {
        let r2 = int(2) * &c * &split * &a2;
        let shift = if with_ck { &r2 - &c * &a2 / int(2) } else { r2 };
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / int(2);
            let y = if &u * &mid + &v >= ExactRational::zero() { &y_up } else { &y_down };
            let xk = &env_k + &shift - y;
            let xk1 = &env_k1 + &shift + y;
            let q2 = &pk * &xk + &pk1 * &xk1;
            let q1 = &qk * &xk + &qk1 * &xk1;
            let m = max_quadratic(&q2, &q1, &w[0], &w[1]);
            best = Some(best.map_or(m.clone(), |b| std::cmp::max(b, m)));
        }
    }
    best.expect("at least one piece")
}

/// λ ∈ {1/2, 51/100, …, 1}.
pub fn lambda_grid() -> Vec<ExactRational> {
    (50..=100).map(|i| rat(i, 100)).collect()
}

/// Max of the excess over even k in [6, n-1], both ends of the a-range, and the λ grid.
pub fn grid_worst(n: u64, d0: u64, with_ck: bool) -> GridWorst {
    let ctx = VerificationContext::with_d0(n, d0);
    let mut worst: Option<GridWorst> = None;
    let lams = lambda_grid();
    for k in (6..n).step_by(2) {
        for a in [&ctx.a_range.0, &ctx.a_range.1] {
            for lam in &lams {
                let v = excess_max(&ctx, k, a, lam, with_ck);
                if worst.as_ref().is_none_or(|w| v > w.value) {
                    worst = Some(GridWorst { value: v, k, lam: lam.clone(), a: a.clone() });
                }
            }
        }
    }
    worst.expect("n > 6")
}

/// Certificates at n: the form with the c_k term for n ≤ 65, the plain form for n ≥ 65.
pub fn prop_grid_certificates(n: u64, d0: u64, mode: Mode, prec: u32) -> Vec<Certificate> {
    let mut out = Vec::new();
    let d0_tag = if d0 == 16 { String::new() } else { format!(".d0-{d0}") };
    for with_ck in [false, true] {
        // the c_k term is part of the claim up to n = 61; 65 is run both ways
        if (with_ck && n > CK_LAST) || (!with_ck && n < CK_LAST) {
            continue;
        }
        let w = grid_worst(n, d0, with_ck);
        let variant = if with_ck { "ck" } else { "plain" };
        out.push(Certificate::judge(
            format!("prop-grid{d0_tag}.n{n}.{variant}"),
            params([("n", n.to_string()), ("d0", d0.to_string()), ("lambda_step", "1/100".to_string())]),
            Claim::at_most(ExactRational::zero()),
            Computed::exact(w.value.clone()),
            effective_mode(mode, false),
            prec,
            format!(
                "max of f(lambda) - f(1){} over even k, a-range ends, lambda grid, alpha range: {} at k = {}, lambda = {}, a = {}",
                if with_ck { " - (B_k+B_{k+1})c_k a^2/2" } else { "" },
                to_decimal(&w.value, 8, true),
                w.k,
                to_pq(&w.lam),
                to_pq(&w.a)
            ),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::certificate::Verdict;

    #[test]
    fn lambda_one_drops_small_terms() {
        let ctx = VerificationContext::new(65);
        let a = ctx.a_range.1.clone();
        let alpha = rat(1, 2);
        let c = rat(1, 10);
        let one = int(1);
        // at λ = 1 the value is B_k 𝓐_k^+(a)² + B_{k+1} 𝓐_{k+1}^+(a)², independent of c_k
        let v = f_k_a(&ctx, 6, &a, &one, &alpha, &c);
        let w = f_k_a(&ctx, 6, &a, &one, &alpha, &int(0));
        assert_eq!(v, w);
        let s = ctx.shrink();
        let direct = |j: u64| {
            let e = &a - &s * lambda_q(j) * &a * &a;
            ctx.b_coeff(j, &alpha) * &e * &e
        };
        assert_eq!(v, direct(6) + direct(7));
    }

    #[test]
    fn excess_matches_direct_evaluation() {
        // the piecewise-quadratic maximum dominates direct sampling over α and both c_k ends
        let ctx = VerificationContext::new(65);
        for k in [6u64, 20, 40, 64] {
            for a in [&ctx.a_range.0, &ctx.a_range.1] {
                for lam in [rat(1, 2), rat(3, 4), rat(99, 100)] {
                    let m = excess_max(&ctx, k, a, &lam, false);
                    let ck = c_enclosure(k);
                    let mut sampled = None::<ExactRational>;
                    for i in 0..=8 {
                        let alpha = &ctx.alpha.0 + (&ctx.alpha.1 - &ctx.alpha.0) * rat(i, 8);
                        for c in [ck.lo(), ck.hi()] {
                            let d = f_k_a(&ctx, k, a, &lam, &alpha, &c) - f_k_a(&ctx, k, a, &int(1), &alpha, &c);
                            sampled = Some(sampled.map_or(d.clone(), |s| std::cmp::max(s, d)));
                        }
                    }
                    let s = sampled.unwrap();
                    assert!(m >= s, "k={k} lam={lam}");
                    assert!(&m - &s < rat(1, 1000) * (m.abs() + int(1)));
                }
            }
        }
    }

    #[test]
    fn spec_example_n65_k6() {
        let ctx = VerificationContext::new(65);
        let a = ctx.a_range.1.clone();
        for lam in lambda_grid() {
            assert!(excess_max(&ctx, 6, &a, &lam, false) <= ExactRational::zero());
        }
    }

    #[test]
    fn certificates_at_41() {
        let c = prop_grid_certificates(41, 16, Mode::Exact, 128);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].check_id, "prop-grid.n41.ck");
        assert_eq!(c[0].verdict, Verdict::Pass);
        let b = prop_grid_certificates(65, 16, Mode::Exact, 128);
        assert_eq!(b.iter().map(|x| x.check_id.as_str()).collect::<Vec<_>>(), ["prop-grid.n65.plain", "prop-grid.n65.ck"]);
    }
}
