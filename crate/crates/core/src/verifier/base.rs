//! Starting bounds: β from below, α from above, and the resulting a = (6/7)(1 - αβ).

use num_traits::Signed;

use super::certificate::{params, Certificate, Claim, Computed, Mode};
use super::context::effective_mode;
use crate::numerics::rational::{int, parse_rational, rat, to_decimal, to_pq, ExactRational};
use crate::orthopoly::gegenbauer::lambda_q;

/// (9/440)(29 - 74/(9α))(7 - 1/α).
pub fn beta_lower_at(alpha: &ExactRational) -> ExactRational {
    let x = int(1) / alpha;
    rat(9, 440) * (int(29) - rat(74, 9) * &x) * (int(7) - x)
}

/// (256/35)(74/(9α) - 29)(7 - 1/α) + (512/7)(13/(9α) + 2)/α.
pub fn alpha_function(alpha: &ExactRational) -> ExactRational {
    let x = int(1) / alpha;
    rat(256, 35) * (rat(74, 9) * &x - int(29)) * (int(7) - &x) + rat(512, 7) * (rat(13, 9) * &x + int(2)) * x
}

/// Bracket [lo, hi] around the sign change of `alpha_function` in [1/2, 1], of width ≤ 2^-iterations / 2.
pub fn alpha_root(iterations: u32) -> (ExactRational, ExactRational) {
    let (mut lo, mut hi) = (rat(1, 2), int(1));
    debug_assert!(alpha_function(&lo).is_positive() && alpha_function(&hi).is_negative());
    for _ in 0..iterations {
        let mid = (&lo + &hi) / int(2);
        if alpha_function(&mid).is_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// (6/7)(1 - α β_lower(α)).
pub fn a_upper_at(alpha: &ExactRational) -> ExactRational {
    rat(6, 7) * (int(1) - alpha * beta_lower_at(alpha))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseBounds {
    /// Range of β_lower over the α-interval; its lower end is the bound on β.
    pub beta_lower: (ExactRational, ExactRational),
    /// Bisection bracket of the α root.
    pub alpha_upper: (ExactRational, ExactRational),
    /// Range of (6/7)(1 - αβ_lower(α)) over α ∈ [α_lo, root]; its upper end bounds a.
    pub a_upper: (ExactRational, ExactRational),
}

fn ordered(a: ExactRational, b: ExactRational) -> (ExactRational, ExactRational) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Both factors of β_lower are positive and increasing in α on [1/2, 1), so β_lower and
/// αβ_lower are increasing there and endpoint values bound them.
pub fn base_bounds(alpha: &(ExactRational, ExactRational)) -> BaseBounds {
    let root = alpha_root(48);
    let beta_lower = ordered(beta_lower_at(&alpha.0), beta_lower_at(&alpha.1));
    let top = std::cmp::min(alpha.1.clone(), root.1.clone());
    let a_upper = ordered(a_upper_at(&top), a_upper_at(&alpha.0));
    BaseBounds { beta_lower, alpha_upper: root, a_upper }
}

/// Certificates for the starting bounds.
pub fn check_base_bounds(alpha: &(ExactRational, ExactRational), mode: Mode) -> Vec<Certificate> {
    let m = effective_mode(mode, true);
    let bb = base_bounds(alpha);
    let half = rat(1, 2);
    let arange = params([("alpha_lo", to_pq(&alpha.0)), ("alpha_hi", to_pq(&alpha.1))]);
    let a_claim = rat(221, 1000) + rat(1, 1000);
    vec![
        Certificate::judge(
            "base.beta-at-half",
            params([("alpha", to_pq(&half))]),
            Claim::equals(rat(113, 88)),
            Computed::exact(beta_lower_at(&half)),
            m,
            0,
            "",
        ),
        Certificate::judge(
            "base.beta-lower",
            arange.clone(),
            Claim::at_least(rat(113, 88)),
            Computed::exact(bb.beta_lower.0.clone()),
            m,
            0,
            "minimum over the alpha-range is at alpha_lo",
        ),
        Certificate::judge(
            "base.alpha-root",
            params([("iterations", "48".to_string())]),
            Claim::between(parse_rational("0.577").expect("literal"), parse_rational("0.578").expect("literal")),
            Computed::range(bb.alpha_upper.0.clone(), bb.alpha_upper.1.clone()),
            m,
            0,
            format!("exact-sign bisection bracket [{}, {}]", to_decimal(&bb.alpha_upper.0, 12, false), to_decimal(&bb.alpha_upper.1, 12, true)),
        ),
        Certificate::judge(
            "base.alpha-upper",
            params([("iterations", "48".to_string())]),
            Claim::less_than(parse_rational("0.578").expect("literal")),
            Computed::range(bb.alpha_upper.0.clone(), bb.alpha_upper.1.clone()),
            m,
            0,
            "",
        ),
        Certificate::judge(
            "base.a-upper",
            arange.clone(),
            Claim::at_most(a_claim),
            Computed::exact(bb.a_upper.1.clone()),
            m,
            0,
            format!(
                "sup over alpha of (6/7)(1 - alpha*beta_lower(alpha)) is at alpha = 1/2: (6/7)(63/176) = {}; claimed 0.221 with tolerance 1e-3",
                to_decimal(&bb.a_upper.1, 10, true)
            ),
        ),
        Certificate::judge(
            "base.induction-start",
            arange,
            Claim::at_most(int(16) / lambda_q(5)),
            Computed::exact(bb.a_upper.1.clone()),
            m,
            0,
            "a <= 16/lambda_5 = 0.32 starts the induction at n = 5",
        ),
    ]
}
