//! Upper envelopes 𝓐_k^± of the half-line moments A_k^±.
//!
//! Small branch: a - ((1-b)/d) λ_k a². Large branch: b a + (1-b) d/(4λ_k), with
//! the constant dropped on the minus side when χ is off. The line is tangent to
//! the parabola at a = d/(2λ_k), so the large branch dominates the small one.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::context::VerificationContext;
use crate::numerics::rational::{int, ExactRational};
use crate::orthopoly::gegenbauer::lambda_q;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    SmallLambda,
    LargeLambda,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEnvelope {
    pub side: Side,
    pub branch: Branch,
    /// a_+ or a_-.
    pub mass: ExactRational,
    pub k: u64,
    /// χ_{λ≠1}; only read on the minus side.
    pub chi_flag: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnvelopeError {
    #[error("mass must lie in [0, 1]")]
    Mass,
    #[error("branch {0:?} does not apply on the {1:?} side for these inputs")]
    Branch(Branch, Side),
}

pub fn small_form(ctx: &VerificationContext, mass: &ExactRational, k: u64) -> ExactRational {
    mass - ctx.shrink() * lambda_q(k) * mass * mass
}

pub fn large_form(ctx: &VerificationContext, mass: &ExactRational, k: u64, constant: bool) -> ExactRational {
    let c = if constant {
        (int(1) - &ctx.b) * &ctx.d / (int(4) * lambda_q(k))
    } else {
        ExactRational::zero()
    };
    &ctx.b * mass + c
}

/// The branch the case split assigns, or None when neither applies.
pub fn select_branch(ctx: &VerificationContext, side: Side, mass: &ExactRational, k: u64) -> Option<Branch> {
    let ln = lambda_q(ctx.n);
    match side {
        Side::Plus => {
            let lk = lambda_q(k);
            if lk <= &ln / int(4) {
                Some(Branch::SmallLambda)
            } else if lk <= ln {
                Some(Branch::LargeLambda)
            } else {
                None
            }
        }
        Side::Minus => {
            if *mass <= int(4) / &ln {
                Some(Branch::SmallLambda)
            } else if *mass <= int(8) / &ln {
                Some(Branch::LargeLambda)
            } else {
                None
            }
        }
    }
}

#[allow(non_snake_case)]
pub fn envelope_A(env: &BoundEnvelope, ctx: &VerificationContext) -> Result<ExactRational, EnvelopeError> {
    if env.mass.is_negative() || env.mass > ExactRational::one() {
        return Err(EnvelopeError::Mass);
    }
    if select_branch(ctx, env.side, &env.mass, env.k) != Some(env.branch) {
        return Err(EnvelopeError::Branch(env.branch, env.side));
    }
    Ok(match env.branch {
        Branch::SmallLambda => small_form(ctx, &env.mass, env.k),
        Branch::LargeLambda => large_form(ctx, &env.mass, env.k, env.side == Side::Plus || env.chi_flag),
    })
}

/// Envelope with the branch picked by the case split.
pub fn envelope_auto(ctx: &VerificationContext, side: Side, mass: &ExactRational, k: u64, chi_flag: bool) -> Result<ExactRational, EnvelopeError> {
    let branch = select_branch(ctx, side, mass, k).ok_or(EnvelopeError::Branch(Branch::LargeLambda, side))?;
    envelope_A(&BoundEnvelope { side, branch, mass: mass.clone(), k, chi_flag }, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    #[test]
    fn zero_mass() {
        let ctx = VerificationContext::new(65);
        for k in [2, 10, 30] {
            let v = envelope_auto(&ctx, Side::Plus, &ExactRational::zero(), k, true).unwrap();
            if select_branch(&ctx, Side::Plus, &ExactRational::zero(), k) == Some(Branch::SmallLambda) {
                assert!(v.is_zero());
            }
        }
        assert!(envelope_auto(&ctx, Side::Minus, &ExactRational::zero(), 40, true).unwrap().is_zero());
    }

    #[test]
    fn parabola_vertex() {
        // derivative 1 - 2((1-b)/d)λ_k a vanishes at a = d/(2λ_k(1-b)); value d/(4λ_k(1-b))
        let ctx = VerificationContext::new(65);
        let k = 6;
        let lk = lambda_q(k);
        let vertex = &ctx.d / (int(2) * &lk * (int(1) - &ctx.b));
        let top = small_form(&ctx, &vertex, k);
        assert_eq!(top, &ctx.d / (int(4) * &lk * (int(1) - &ctx.b)));
        let eps = rat(1, 10_000);
        assert!(small_form(&ctx, &(&vertex + &eps), k) < top);
        assert!(small_form(&ctx, &(&vertex - &eps), k) < top);
    }

    #[test]
    fn large_branch_at_top_of_range() {
        let n = 65;
        let ctx = VerificationContext::new(n);
        let ln = lambda_q(n);
        let a = int(16) / &ln;
        let v = envelope_A(&BoundEnvelope { side: Side::Plus, branch: Branch::LargeLambda, mass: a.clone(), k: n, chi_flag: true }, &ctx).unwrap();
        assert_eq!(v, rat(33, 100) * int(16) / &ln + rat(67, 100) * int(2) / &ln);
    }

    #[test]
    fn branch_mismatch_rejected() {
        let ctx = VerificationContext::new(65);
        let env = BoundEnvelope { side: Side::Plus, branch: Branch::SmallLambda, mass: rat(1, 100), k: 60, chi_flag: true };
        assert!(envelope_A(&env, &ctx).is_err());
        let env = BoundEnvelope { side: Side::Minus, branch: Branch::SmallLambda, mass: rat(1, 100), k: 10, chi_flag: true };
        assert!(envelope_A(&env, &ctx).is_err());
        let env = BoundEnvelope { side: Side::Minus, branch: Branch::LargeLambda, mass: rat(2, 1), k: 10, chi_flag: true };
        assert_eq!(envelope_A(&env, &ctx), Err(EnvelopeError::Mass));
    }

    #[test]
    fn branches_touch_at_tangency() {
        let ctx = VerificationContext::new(101);
        for k in [6u64, 20, 50] {
            let t = &ctx.d / (int(2) * lambda_q(k));
            assert_eq!(small_form(&ctx, &t, k), large_form(&ctx, &t, k, true));
            let off = &t * rat(3, 2);
            assert!(small_form(&ctx, &off, k) < large_form(&ctx, &off, k, true));
        }
    }
}
