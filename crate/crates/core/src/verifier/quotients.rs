//! The ratio (B_{k+1} - B_k)/(B_{k+1} + B_k) and its maxima over the case split.
//!
//! Q = ((n²+7n-3k²-18k-15) + 11/(7α)) / ((k+3)((2n²+14n-2k²-12k+5) + 22/(7α))).
//! Maxima over many (n, k) are located with an f64 screen and then confirmed
//! exactly on every pair within a relative 10⁻⁶ of the screened maximum.

use super::context::induction_indices;
use crate::numerics::rational::{int, rat, to_f64, ExactRational};
use crate::orthopoly::gegenbauer::lambda;

fn nd(n: u64, k: u64) -> (i64, i64) {
    let (n, k) = (n as i64, k as i64);
    (n * n + 7 * n - 3 * k * k - 18 * k - 15, 2 * n * n + 14 * n - 2 * k * k - 12 * k + 5)
}

/// Exact quotient at one α.
pub fn quotient_at(n: u64, k: u64, alpha: &ExactRational) -> ExactRational {
    let (num, den) = nd(n, k);
    let u = rat(11, 7) / alpha;
    (int(num) + &u) / (int(k as i64 + 3) * (int(den) + &u * int(2)))
}

fn quotient_f64(n: u64, k: u64, alpha: f64) -> f64 {
    let (num, den) = nd(n, k);
    let u = 11.0 / (7.0 * alpha);
    (num as f64 + u) / ((k as f64 + 3.0) * (den as f64 + 2.0 * u))
}

/// Range of the quotient over the α-interval; it is a Möbius function of 1/α, so the
/// endpoints bound it.
pub fn b_quotient(n: u64, k: u64, alpha: &(ExactRational, ExactRational)) -> (ExactRational, ExactRational) {
    let a = quotient_at(n, k, &alpha.0);
    let b = quotient_at(n, k, &alpha.1);
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientCase {
    /// Case 1, λ_7 ≤ λ_{k+1} ≤ dλ_n/(2d0): Q.
    Bd1,
    /// Case 2 with B_{k+1} ≤ B_k: -Q.
    Case2Max,
    /// Case 2 with B_{k+1} ≤ B_k and 2λ_{k+1} ≤ λ_{n+4}: -Q.
    Case2Sub,
    /// Case 2 with B_k < B_{k+1}: Q.
    Bd2,
    /// Case 3, 2λ_{k+1} > λ_n: 0.0071(λ_{n+4}/λ_k)² - 0.04 Q.
    Case3,
}

impl QuotientCase {
    pub const ALL: [QuotientCase; 5] =
        [QuotientCase::Bd1, QuotientCase::Case2Max, QuotientCase::Case2Sub, QuotientCase::Bd2, QuotientCase::Case3];

    pub fn id(self) -> &'static str {
        match self {
            QuotientCase::Bd1 => "bd1",
            QuotientCase::Case2Max => "case2-max",
            QuotientCase::Case2Sub => "case2-sub",
            QuotientCase::Bd2 => "bd2",
            QuotientCase::Case3 => "case3",
        }
    }

    /// Whether (n, k) belongs to the case at this α (sign of Q decides the Case-2 split).
    fn member(self, n: u64, k: u64, q_nonpositive: bool, d_over_2d0: (u64, u64)) -> bool {
        let (lk1, ln, ln4) = (lambda(k + 1) as u128, lambda(n) as u128, lambda(n + 4) as u128);
        let (p, q) = (d_over_2d0.0 as u128, d_over_2d0.1 as u128);
        // λ_{k+1} ≤ (p/q) λ_n
        let small = q * lk1 <= p * ln;
        let case2 = !small && lk1 <= ln;
        match self {
            QuotientCase::Bd1 => k >= 6 && small,
            QuotientCase::Case2Max => case2 && q_nonpositive,
            QuotientCase::Case2Sub => case2 && q_nonpositive && 2 * lk1 <= ln4,
            QuotientCase::Bd2 => case2 && !q_nonpositive,
            QuotientCase::Case3 => 2 * lk1 > ln && lk1 <= ln,
        }
    }

    fn value_f64(self, n: u64, k: u64, alpha: f64) -> f64 {
        let q = quotient_f64(n, k, alpha);
        match self {
            QuotientCase::Bd1 | QuotientCase::Bd2 => q,
            QuotientCase::Case2Max | QuotientCase::Case2Sub => -q,
            QuotientCase::Case3 => {
                let r = lambda(n + 4) as f64 / lambda(k) as f64;
                0.0071 * r * r - 0.04 * q
            }
        }
    }

    pub fn value(self, n: u64, k: u64, alpha: &ExactRational) -> ExactRational {
        let q = quotient_at(n, k, alpha);
        match self {
            QuotientCase::Bd1 | QuotientCase::Bd2 => q,
            QuotientCase::Case2Max | QuotientCase::Case2Sub => -q,
            QuotientCase::Case3 => {
                let r = rat(lambda(n + 4) as i64, lambda(k) as i64);
                rat(71, 10_000) * &r * &r - rat(1, 25) * q
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseMax {
    pub value: ExactRational,
    pub n: u64,
    pub k: u64,
}

/// Exact maximum of the case quantity over n ≡ 1 (mod 4) in [n_from, n_to] and even k ≥ 6
/// in the case, at one α; None if the case is empty. `d_over_2d0` is d/(2d0) as p/q.
pub fn case_max(case: QuotientCase, n_from: u64, n_to: u64, alpha: &ExactRational, d_over_2d0: (u64, u64)) -> Option<CaseMax> {
    let af = to_f64(alpha);
    let mut screened: Vec<(f64, u64, u64)> = Vec::new();
    let mut best = f64::NEG_INFINITY;
    for n in induction_indices(n_from, n_to) {
        for k in (6..n).step_by(2) {
            let q_nonpos = quotient_at_sign_nonpositive(n, k, alpha);
            if !case.member(n, k, q_nonpos, d_over_2d0) {
                continue;
            }
            let v = case.value_f64(n, k, af);
            if v >= best - 1e-6 * best.abs().max(1e-12) {
                best = best.max(v);
                screened.push((v, n, k));
            }
        }
    }
    let cut = best - 1e-6 * best.abs().max(1e-12);
    screened
        .into_iter()
        .filter(|&(v, _, _)| v >= cut)
        .map(|(_, n, k)| CaseMax { value: case.value(n, k, alpha), n, k })
        .max_by(|a, b| a.value.cmp(&b.value).then(b.n.cmp(&a.n)).then(b.k.cmp(&a.k)))
}

/// Sign of Q decided exactly: Q ≤ 0 iff N + 11/(7α) ≤ 0 (the denominator is positive for k ≤ n).
fn quotient_at_sign_nonpositive(n: u64, k: u64, alpha: &ExactRational) -> bool {
    let (num, _) = nd(n, k);
    let p = i128::try_from(alpha.numer()).expect("small alpha numerator");
    let q = i128::try_from(alpha.denom()).expect("small alpha denominator");
    // α = p/q > 0: N + 11q/(7p) ≤ 0 iff 7pN + 11q ≤ 0
    7 * p * num as i128 + 11 * q <= 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::context::VerificationContext;

    #[test]
    fn formula_matches_b_coefficients() {
        for n in [65u64, 101, 1001] {
            let ctx = VerificationContext::new(n);
            for k in [6u64, 10, n / 2, n - 1] {
                for a in ctx.alpha_endpoints() {
                    let bk = ctx.b_coeff(k, &a);
                    let bk1 = ctx.b_coeff(k + 1, &a);
                    assert_eq!(quotient_at(n, k, &a), (&bk1 - &bk) / (&bk1 + &bk), "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn bd1_closed_form_at_k6() {
        // k = 6 gives ((n²+7n-231) + 11/(7α)) / (9((2n²+14n-139) + 22/(7α)))
        let a = rat(1, 2);
        let n = 65i64;
        let expect = (int(n * n + 7 * n - 231) + rat(22, 7)) / (int(9) * (int(2 * n * n + 14 * n - 139) + rat(44, 7)));
        assert_eq!(quotient_at(65, 6, &a), expect);
    }

    #[test]
    fn bd1_tends_to_one_eighteenth() {
        let m = case_max(QuotientCase::Bd1, 65, 401, &rat(1, 2), (1, 4)).unwrap();
        assert_eq!(m.k, 6);
        assert!(m.value < rat(1, 18));
        assert!(m.value > rat(54, 1000));
    }

    #[test]
    fn screen_agrees_with_brute_force() {
        let a = rat(289, 500);
        for case in QuotientCase::ALL {
            let fast = case_max(case, 65, 81, &a, (1, 4));
            let mut brute: Option<CaseMax> = None;
            for n in induction_indices(65, 81) {
                for k in (6..n).step_by(2) {
                    let nonpos = quotient_at_sign_nonpositive(n, k, &a);
                    if case.member(n, k, nonpos, (1, 4)) {
                        let v = case.value(n, k, &a);
                        if brute.as_ref().is_none_or(|b| v > b.value) {
                            brute = Some(CaseMax { value: v, n, k });
                        }
                    }
                }
            }
            assert_eq!(fast.map(|m| m.value), brute.map(|m| m.value), "{case:?}");
        }
    }
}
