//! The induction step as a polynomial in a, and its endpoint certificates.
//!
//! With W_k = (128/9)(Λ - λ_k + 22/7)(2k+5), q_k = ((1-b)/d)λ_k and the low/high index
//! blocks of the sums module,
//!
//! g̃_n(a) = -(512/7)(Λ+51/7)(1 - 7a/6) + (512/7)(Λ+100/7)(1 - 7a/6)² + 22528/(63α) a²
//!        + Σ_low W_k [(1 - q_k a)² + ½c_kχ] a² + Σ_high W_k [(ba + (1-b)d/(4λ_k))² + ½c_kχ a²],
//!
//! a quartic C0 + C1 a + C2 a² + C3 a³ + C4 a⁴ whose coefficients reduce to the seven sums.
//! χ is 1 for 5 ≤ n ≤ 61 and 0 otherwise.

use super::cbounds::c_enclosure;
use super::certificate::{params, Certificate, Claim, Computed, Mode};
use super::context::{effective_mode, induction_indices, recorded_precision, VerificationContext};
use super::sums::{block_sums, s5_enclosure_fast, s5_exact, BlockSums};
use crate::numerics::rational::{int, rat, to_pq, ExactRational};
use crate::numerics::Interval;
use crate::orthopoly::gegenbauer::lambda_q;

/// Largest n at which the c_k correction is kept.
pub const CHI_LAST: u64 = 61;

pub fn chi_default(n: u64) -> bool {
    (5..=CHI_LAST).contains(&n)
}

/// Σ_{k=2}^{n} W_k c_k / 2 as an enclosure.
fn chi_sum(n: u64, prec: u32) -> Interval {
    let big = lambda_q(n + 1) + rat(22, 7);
    let mut acc = Interval::zero(prec);
    for k in 2..=n {
        let w = rat(64, 9) * (&big - lambda_q(k)) * int(2 * k as i64 + 5);
        acc = &acc + &c_enclosure(k).with_prec(prec).scale_rational(&w);
    }
    acc
}

/// The α- and c-independent parts of the quartic, exact except for S5.
struct Parts {
    c0: (ExactRational, ExactRational),
    c1: (ExactRational, ExactRational),
    c2: ExactRational,
    c3: ExactRational,
    c4: ExactRational,
}

/// Coefficients as (rational part, multiplier of S5) where S5 enters.
fn parts(ctx: &VerificationContext, s: &BlockSums) -> Parts {
    let lam = ctx.big_lambda();
    let big = &lam + rat(22, 7);
    let w = rat(128, 9);
    let q = ctx.shrink();
    let one_b = int(1) - &ctx.b;
    let d4 = &ctx.d / int(4);
    let lin = int(2) * &ctx.b * &one_b * &d4;
    let quad = &one_b * &one_b * &d4 * &d4;
    Parts {
        // (128/9)(1-b)²(d/4)² (Λ' S7 - S5)
        c0: (int(512) + &w * &quad * &big * &s.s7, -(&w * &quad)),
        // (128/9) 2b(1-b)(d/4) (Λ' S5 - S6)
        c1: (rat(-512, 6) * (&lam + rat(149, 7)) - &w * &lin * &s.s6, &w * &lin * &big),
        c2: rat(512, 7) * (&lam + rat(100, 7)) * rat(49, 36) + &w * (&s.s1 + &ctx.b * &ctx.b * &s.s4),
        c3: int(-2) * &w * &q * &s.s2,
        c4: &w * &q * &q * &s.s3,
    }
}

/// Quartic coefficients of g̃_n at one α, as enclosures.
pub fn quartic(ctx: &VerificationContext, alpha: &ExactRational, chi: bool, prec: u32) -> [Interval; 5] {
    let s = block_sums(ctx.n);
    let p = parts(ctx, &s);
    let s5 = s5_enclosure_fast(ctx.n, prec);
    let iv = |q: &ExactRational| Interval::from_rational(q, prec);
    let c0 = &iv(&p.c0.0) + &s5.scale_rational(&p.c0.1);
    let c1 = &iv(&p.c1.0) + &s5.scale_rational(&p.c1.1);
    let mut c2 = iv(&(p.c2 + rat(22528, 63) / alpha));
    if chi {
        c2 = &c2 + &chi_sum(ctx.n, prec);
    }
    [c0, c1, c2, iv(&p.c3), iv(&p.c4)]
}

fn horner(c: &[Interval; 5], a: &ExactRational) -> Interval {
    c.iter().rev().fold(Interval::zero(c[0].prec()), |acc, ci| &acc.scale_rational(a) + ci)
}

/// g̃_n(a) over the α-interval: g̃ decreases in α, so the hull of the endpoint values encloses it.
pub fn g_tilde(ctx: &VerificationContext, a: &ExactRational, chi: bool, prec: u32) -> Interval {
    let [lo, hi] = ctx.alpha_endpoints().map(|al| horner(&quartic(ctx, &al, chi, prec), a));
    lo.hull(&hi)
}

/// Lower enclosure of min g̃″ on the a-range: g̃″ = 2C2 + 6C3 a + 12C4 a² is a convex
/// quadratic, so endpoints and the vertex value bound it.
fn second_derivative_min(c: &[Interval; 5], range: &(ExactRational, ExactRational)) -> Interval {
    let at = |a: &ExactRational| {
        let a_sq = a * a;
        &(&c[2].scale_rational(&int(2)) + &c[3].scale_rational(&(int(6) * a))) + &c[4].scale_rational(&(int(12) * a_sq))
    };
    let mut m = at(&range.0).min(&at(&range.1));
    let four_c4 = c[4].scale_rational(&int(4));
    if let Some(vertex) = (-&c[3]).checked_div(&four_c4) {
        if vertex.hi() >= range.0 && vertex.lo() <= range.1 {
            // 2C2 - 3C3²/(4C4)
            let drop = c[3].sqr().scale_rational(&int(3)).checked_div(&four_c4).expect("C4 > 0");
            m = m.min(&(&c[2].scale_rational(&int(2)) - &drop));
        }
    }
    m
}

#[derive(Clone, Debug)]
pub struct StepResult {
    pub n: u64,
    pub g_lo: Interval,
    pub g_hi: Interval,
    pub a2: Interval,
    pub convexity: Interval,
}

/// g̃_n at both ends of the a-range, the a²-coefficient and min g̃″, each hulled over α.
pub fn step(ctx: &VerificationContext, chi: bool, prec: u32) -> StepResult {
    let mut out: Option<StepResult> = None;
    for al in ctx.alpha_endpoints() {
        let c = quartic(ctx, &al, chi, prec);
        let r = StepResult {
            n: ctx.n,
            g_lo: horner(&c, &ctx.a_range.0),
            g_hi: horner(&c, &ctx.a_range.1),
            a2: c[2].clone(),
            convexity: second_derivative_min(&c, &ctx.a_range),
        };
        out = Some(match out {
            None => r,
            Some(p) => StepResult {
                n: p.n,
                g_lo: p.g_lo.hull(&r.g_lo),
                g_hi: p.g_hi.hull(&r.g_hi),
                a2: p.a2.hull(&r.a2),
                convexity: p.convexity.hull(&r.convexity),
            },
        });
    }
    out.expect("two alpha endpoints")
}

fn id_prefix(ctx: &VerificationContext, tag: &str) -> String {
    let d0 = if ctx.d0 == int(16) { String::new() } else { format!(".d0-{}", to_pq(&ctx.d0)) };
    format!("induction{d0}{tag}.n{}", ctx.n)
}

/// Certificates for one n: both endpoints negative, positive a²-coefficient, and convexity.
pub fn step_certificates(ctx: &VerificationContext, chi: bool, tag: &str, mode: Mode, prec: u32) -> (StepResult, Vec<Certificate>) {
    let m = effective_mode(mode, false);
    let pr = recorded_precision(m, prec);
    let r = step(ctx, chi, prec);
    let base = id_prefix(ctx, tag);
    let p = || {
        params([
            ("n", ctx.n.to_string()),
            ("a_lo", to_pq(&ctx.a_range.0)),
            ("a_hi", to_pq(&ctx.a_range.1)),
            ("chi", (chi as u8).to_string()),
        ])
    };
    let note = if chi { "includes the c_k correction" } else { "" };
    let certs = vec![
        Certificate::judge(format!("{base}.g-lo"), p(), Claim::negative(), Computed::enclosure(&r.g_lo), m, pr, note),
        Certificate::judge(format!("{base}.g-hi"), p(), Claim::negative(), Computed::enclosure(&r.g_hi), m, pr, note),
        Certificate::judge(format!("{base}.a2-coefficient"), p(), Claim::positive(), Computed::enclosure(&r.a2), m, pr, ""),
        Certificate::judge(
            format!("{base}.convex"),
            p(),
            Claim::positive(),
            Computed::enclosure(&r.convexity),
            m,
            pr,
            "min of the second derivative over the a-range",
        ),
    ];
    (r, certs)
}

/// The sweep over n ≡ 1 (mod 4) in [from, to] with the default χ.
pub fn sweep(from: u64, to: u64, d0: u64, mode: Mode, prec: u32) -> Vec<(StepResult, Vec<Certificate>)> {
    induction_indices(from, to)
        .into_iter()
        .map(|n| step_certificates(&VerificationContext::with_d0(n, d0), chi_default(n), "", mode, prec))
        .collect()
}

/// n = 61 and n = 65 with the c_k correction both on and off.
pub fn boundary_certificates(d0: u64, mode: Mode, prec: u32) -> Vec<Certificate> {
    let mut out = Vec::new();
    for n in [61u64, 65] {
        for chi in [true, false] {
            let tag = if chi { ".boundary-chi-on" } else { ".boundary-chi-off" };
            let (_, c) = step_certificates(&VerificationContext::with_d0(n, d0), chi, tag, mode, prec);
            out.extend(c.into_iter().filter(|c| c.check_id.ends_with(".g-lo") || c.check_id.ends_with(".g-hi")));
        }
    }
    out
}

/// The three pieces g_{n,1}, g_{n,2}, g_{n,3} of the uncorrected step, exact at one α and a.
///
/// g_{n,2} replaces a by d0/λ_{n+4} inside the squared low-block factor; S2 and S3 are
/// the true sums.
pub fn g_components_at(ctx: &VerificationContext, alpha: &ExactRational, a: &ExactRational) -> [ExactRational; 3] {
    let s = block_sums(ctx.n);
    let s5 = s5_exact(ctx.n);
    g_components_with(ctx, &s, &s5, alpha, a)
}

fn g_components_with(
    ctx: &VerificationContext,
    s: &BlockSums,
    s5: &ExactRational,
    alpha: &ExactRational,
    a: &ExactRational,
) -> [ExactRational; 3] {
    let lam = ctx.big_lambda();
    let big = &lam + rat(22, 7);
    let u = int(1) - rat(7, 6) * a;
    let a2 = a * a;
    let g1 = rat(-512, 7) * (&lam + rat(51, 7)) * &u + rat(512, 7) * (&lam + rat(100, 7)) * &u * &u + rat(22528, 63) / alpha * &a2;
    let t = ctx.shrink() * &ctx.d0 / lambda_q(ctx.n + 4);
    let g2 = rat(128, 9) * (&s.s1 - int(2) * &t * &s.s2 + &t * &t * &s.s3) * &a2;
    let one_b = int(1) - &ctx.b;
    let d4 = &ctx.d / int(4);
    let g3 = rat(128, 9)
        * (&ctx.b * &ctx.b * &s.s4 * &a2
            + int(2) * &ctx.b * &one_b * &d4 * (&big * s5 - &s.s6) * a
            + &one_b * &one_b * &d4 * &d4 * (&big * &s.s7 - s5));
    [g1, g2, g3]
}

/// Maxima over the a-range and the α-interval of g_{n,1}, g_{n,2}, g_{n,3} and their sum.
/// Each is a quadratic in a with nonnegative leading coefficient, so the a-endpoints
/// carry the maximum; g_{n,1} decreases in α.
pub fn g_component_maxima(ctx: &VerificationContext) -> [ExactRational; 4] {
    let s = block_sums(ctx.n);
    let s5 = s5_exact(ctx.n);
    let mut best: Option<[ExactRational; 4]> = None;
    for a in [&ctx.a_range.0, &ctx.a_range.1] {
        let g = g_components_with(ctx, &s, &s5, &ctx.alpha.0, a);
        let total = &g[0] + &g[1] + &g[2];
        let v = [g[0].clone(), g[1].clone(), g[2].clone(), total];
        best = Some(match best {
            None => v,
            Some(b) => std::array::from_fn(|i| std::cmp::max(b[i].clone(), v[i].clone())),
        });
    }
    best.expect("two endpoints")
}

/// Certificates for the component bounds at n (stated at n = 10001) with margin 10⁻³.
pub fn g_component_certificates(n: u64, d0: u64, mode: Mode) -> Vec<Certificate> {
    let ctx = VerificationContext::with_d0(n, d0);
    let m = effective_mode(mode, true);
    let maxima = g_component_maxima(&ctx);
    let bounds = [
        ("g1", rat(-85333, 100)),
        ("g2", rat(571123, 1000)),
        ("g3", rat(28095, 100)),
        ("total", rat(-1257, 1000)),
    ];
    let margin = rat(1, 1000);
    let mut out = Vec::new();
    for ((name, bound), value) in bounds.into_iter().zip(maxima) {
        let note = format!("max over a in [{}, {}] and the alpha-interval; bound {} less margin 1e-3", to_pq(&ctx.a_range.0), to_pq(&ctx.a_range.1), to_pq(&bound));
        out.push(Certificate::judge(
            format!("induction.components.n{n}.{name}"),
            params([("n", n.to_string()), ("d0", to_pq(&ctx.d0))]),
            Claim::at_most(bound - &margin),
            Computed::exact(value),
            m,
            0,
            note,
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::to_f64;
    use crate::verifier::cbounds::c_upper;
    use crate::verifier::certificate::Verdict;
    use crate::verifier::sums::direct_sums;

    /// Direct evaluation of g̃ term by term, exact, with c_k replaced by a rational.
    fn oracle(n: u64, alpha: &ExactRational, a: &ExactRational, c: &dyn Fn(u64) -> ExactRational, chi: bool) -> ExactRational {
        let lam = lambda_q(n + 1);
        let u = int(1) - rat(7, 6) * a;
        let mut g = rat(-512, 7) * (&lam + rat(51, 7)) * &u + rat(512, 7) * (&lam + rat(100, 7)) * &u * &u + rat(22528, 63) / alpha * a * a;
        let (b, d) = (rat(33, 100), int(8));
        for k in 2..=n {
            let lk = lambda_q(k);
            let w = rat(128, 9) * (&lam - &lk + rat(22, 7)) * int(2 * k as i64 + 5);
            let corr = if chi { rat(1, 2) * c(k) } else { int(0) };
            let term = if k <= (n - 3) / 2 {
                let f = int(1) - (int(1) - &b) / &d * &lk * a;
                (&f * &f + corr) * a * a
            } else {
                let f = &b * a + (int(1) - &b) * &d / (int(4) * &lk);
                &f * &f + corr * a * a
            };
            g += w * term;
        }
        g
    }

    #[test]
    fn quartic_matches_direct_evaluation() {
        for n in [9u64, 29, 65, 101] {
            let ctx = VerificationContext::new(n);
            let chi = chi_default(n);
            for a in [ctx.a_range.0.clone(), ctx.a_range.1.clone(), rat(1, 1000)] {
                let al = rat(1, 2);
                let c = quartic(&ctx, &al, chi, 192);
                let v = horner(&c, &a);
                let lo = oracle(n, &al, &a, &|k| c_enclosure(k).lo(), chi);
                let hi = oracle(n, &al, &a, &|k| c_upper(k), chi);
                assert!(v.lo() <= lo && hi <= v.hi(), "n={n}");
                assert!(to_f64(&v.width()) < 1e-20 * (1.0 + to_f64(&hi).abs()) || chi);
            }
        }
    }

    #[test]
    fn components_sum_to_the_uncorrected_step_with_a_lo_inside() {
        // g2 uses d0/λ_{n+4} inside the square, so it equals the low block at a = a_lo
        let n = 101;
        let ctx = VerificationContext::new(n);
        let a = ctx.a_range.0.clone();
        let al = rat(1, 2);
        let g = g_components_at(&ctx, &al, &a);
        let direct = oracle(n, &al, &a, &|_| int(0), false);
        assert_eq!(&g[0] + &g[1] + &g[2], direct);
    }

    #[test]
    fn sums_in_components_are_the_true_sums() {
        let d = direct_sums(45);
        let s = block_sums(45);
        assert_eq!(s.s2, d[1]);
        assert_eq!(s5_exact(45), d[4]);
    }

    #[test]
    fn mid_range_steps_pass() {
        for n in [65u64, 201, 1001] {
            let (_, certs) = step_certificates(&VerificationContext::new(n), false, "", Mode::Interval, 128);
            assert!(certs.iter().all(|c| c.verdict == Verdict::Pass), "n={n}: {certs:?}");
        }
    }

    #[test]
    fn c_correction_breaks_n41() {
        let (r, _) = step_certificates(&VerificationContext::new(41), true, "", Mode::Interval, 128);
        assert!(r.g_lo.lo() > int(0));
    }

    #[test]
    fn component_maxima_at_10001() {
        let ctx = VerificationContext::new(10001);
        let m = g_component_maxima(&ctx);
        let f: Vec<f64> = m.iter().map(to_f64).collect();
        assert!((f[0] + 852.5).abs() < 0.1, "{f:?}");
        assert!((f[1] - 570.3).abs() < 0.1, "{f:?}");
        assert!((f[2] - 280.9).abs() < 0.1, "{f:?}");
        assert!(f[3] < -1.257);
    }
}
