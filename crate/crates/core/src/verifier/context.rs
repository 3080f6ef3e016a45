//! Constants of the argument and the induction index they are applied at.

use crate::numerics::rational::{int, rat, ExactRational};
use crate::orthopoly::gegenbauer::lambda_q;
use crate::verifier::certificate::Mode;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationContext {
    /// Admissible α, as [lo, hi].
    pub alpha: (ExactRational, ExactRational),
    pub b: ExactRational,
    pub d: ExactRational,
    pub d0: ExactRational,
    pub m0: ExactRational,
    pub n: u64,
    /// [d0/λ_{n+4}, d0/λ_n].
    pub a_range: (ExactRational, ExactRational),
}

impl VerificationContext {
    pub fn new(n: u64) -> Self {
        Self::with_d0(n, 16)
    }

    pub fn with_d0(n: u64, d0: u64) -> Self {
        let d0 = int(d0 as i64);
        let a_range = (&d0 / lambda_q(n + 4), &d0 / lambda_q(n));
        VerificationContext {
            alpha: (rat(1, 2), rat(289, 500)),
            b: rat(33, 100),
            d: int(8),
            d0,
            m0: rat(1, 25),
            n,
            a_range,
        }
    }

    pub fn alpha_endpoints(&self) -> [ExactRational; 2] {
        [self.alpha.0.clone(), self.alpha.1.clone()]
    }

    /// λ_{n+1}, written Λ below.
    pub fn big_lambda(&self) -> ExactRational {
        lambda_q(self.n + 1)
    }

    /// B_k = (9α²/32)(Λ - λ_k + 11/(7α))(2k+5).
    pub fn b_coeff(&self, k: u64, alpha: &ExactRational) -> ExactRational {
        let inner = self.big_lambda() - lambda_q(k) + rat(11, 7) / alpha;
        rat(9, 32) * alpha * alpha * inner * int(2 * k as i64 + 5)
    }

    /// (1-b)/d.
    pub fn shrink(&self) -> ExactRational {
        (int(1) - &self.b) / &self.d
    }
}

/// Mode recorded for a check: float64 screening stays float64; otherwise the
/// backend the check actually ran on.
pub fn effective_mode(requested: Mode, rational: bool) -> Mode {
    match (requested, rational) {
        (Mode::Float64, _) => Mode::Float64,
        (_, true) => Mode::Exact,
        (_, false) => Mode::Interval,
    }
}

/// Precision recorded with a certificate: 0 for pure rational work.
pub fn recorded_precision(mode: Mode, prec: u32) -> u32 {
    if mode == Mode::Exact {
        0
    } else {
        prec
    }
}

/// Odd indices n ≡ 1 (mod 4) in [from, to].
pub fn induction_indices(from: u64, to: u64) -> Vec<u64> {
    let start = from.max(5);
    let first = start + (4 - (start + 3) % 4) % 4;
    (first..=to).step_by(4).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = VerificationContext::new(5);
        assert_eq!(c.a_range, (rat(16, 126), rat(16, 50)));
        assert_eq!(c.shrink(), rat(67, 800));
        assert_eq!(c.big_lambda(), int(66));
    }

    #[test]
    fn indices() {
        assert_eq!(induction_indices(5, 17), vec![5, 9, 13, 17]);
        assert_eq!(induction_indices(6, 17), vec![9, 13, 17]);
        assert_eq!(induction_indices(1, 4), Vec::<u64>::new());
        assert_eq!(induction_indices(41, 41), vec![41]);
    }
}
