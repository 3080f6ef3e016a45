//! Terminating ₂F₁ forms of F_n^ν and alternating partial-sum brackets.
//!
//! With t = 1 - x² and c = ν + 1/2, F_{2m}^ν(x) = ₂F₁(-m, m+ν; c; t) and
//! F_{2m+1}^ν(x) = x ₂F₁(-m, m+ν+1; c; t). The series is Σ (-1)^i γ_i t^i
//! with γ_i = C(m, i) (b)_i / (c)_i ≥ 0.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::numerics::rational::{int, ExactRational};
use crate::numerics::HalfInteger;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergeomError {
    #[error("j1 must be odd and j2 even (got {0}, {1})")]
    Parity(usize, usize),
    #[error("t must lie in [0, 1]")]
    Range,
    #[error("terms are not decreasing beyond index {0}: γ_i/γ_(i+1) <= t at i = {1}")]
    Sandwich(usize, usize),
}

/// (m, b, c) with F_n^ν = x^(n mod 2) ₂F₁(-m, b; c; 1 - x²).
pub fn parameters(n: usize, nu: HalfInteger) -> (usize, ExactRational, ExactRational) {
    let m = n / 2;
    let v = nu.value();
    let b = int(m as i64) + &v + int((n % 2) as i64);
    let c = v + ExactRational::new(1.into(), 2.into());
    (m, b, c)
}

/// γ_0..γ_m.
pub fn gammas(n: usize, nu: HalfInteger) -> Vec<ExactRational> {
    let (m, b, c) = parameters(n, nu);
    let mut g = Vec::with_capacity(m + 1);
    let mut cur = ExactRational::one();
    g.push(cur.clone());
    for i in 0..m {
        let iq = int(i as i64);
        // γ_{i+1} = γ_i (m-i)(b+i) / ((i+1)(c+i))
        cur = cur * int((m - i) as i64) * (&b + &iq) / ((&iq + int(1)) * (&c + &iq));
        g.push(cur.clone());
    }
    g
}

fn partial(g: &[ExactRational], t: &ExactRational, j: usize) -> ExactRational {
    let mut s = ExactRational::zero();
    let mut tp = ExactRational::one();
    for (i, gi) in g.iter().enumerate().take(j + 1) {
        if i % 2 == 0 {
            s += gi * &tp;
        } else {
            s -= gi * &tp;
        }
        tp *= t;
    }
    s
}

/// Partial sums through index j1 (odd, a lower bound) and j2 (even, an upper
/// bound) of the ₂F₁ factor of F_n^ν at t, after checking exactly that
/// γ_i/γ_{i+1} > t for every i past the shorter sum.
pub fn hypergeometric_partial_sums(
    n: usize,
    nu: HalfInteger,
    t: &ExactRational,
    j1: usize,
    j2: usize,
) -> Result<(ExactRational, ExactRational), HypergeomError> {
    if j1.is_multiple_of(2) || j2 % 2 == 1 {
        return Err(HypergeomError::Parity(j1, j2));
    }
    if *t < ExactRational::zero() || *t > ExactRational::one() {
        return Err(HypergeomError::Range);
    }
    let g = gammas(n, nu);
    let m = g.len() - 1;
    let j0 = j1.min(j2);
    for i in (j0 + 1)..m {
        if !t.is_zero() && &g[i] / &g[i + 1] <= *t {
            return Err(HypergeomError::Sandwich(j0, i));
        }
    }
    Ok((partial(&g, t, j1), partial(&g, t, j2)))
}

/// The full terminating sum.
pub fn hypergeometric_full(n: usize, nu: HalfInteger, t: &ExactRational) -> ExactRational {
    let g = gammas(n, nu);
    let m = g.len() - 1;
    partial(&g, t, m)
}
