//! Certified lower bound of F̃′_k on [0, 1] for large k.
//!
//! The minimum sits at or below the largest zero of F_{k-2}^{9/2}, so only
//! sin ζ ≥ √(1 - x_b²) matters, where x_b bounds that zero. Writing sin ζ = l/k,
//! the l-range is covered by geometric cells (ratio 21/20, bisected when a cell
//! is too coarse) until the crude bound |F̃′_k| ≤ 48√(2/π)(Σ|t_m|/l^{m+7/2} +
//! 2|t_4|/l^{15/2}), which decreases in l, is below the target for the rest.

use num_traits::{One, Zero};

use super::expansion::{t3, Expansion, ExpansionError, DEFAULT_TERMS};
use crate::numerics::elementary::sqrt;
use crate::numerics::rational::{int, rat, to_decimal, ExactRational};
use crate::numerics::Interval;
use crate::orthopoly::gegenbauer::NU_9_2;
use crate::orthopoly::zeros::largest_zero_upper_bound;
use crate::verifier::certificate::{params, Certificate, Claim, Computed, Mode};

const MAX_DEPTH: u32 = 14;

#[derive(Clone, Debug)]
pub struct LowerBoundOutcome {
    pub k: u64,
    /// Certified lower bound of min F̃′_k on [0, 1].
    pub lower: ExactRational,
    /// A value F̃′_k certainly attains or undercuts somewhere.
    pub upper: ExactRational,
    pub l_min: ExactRational,
    /// Where the crude tail bound took over.
    pub crude_from: ExactRational,
    pub cells: usize,
}

/// Rational lower bound of k √(1 - x_b²), rounded down to a multiple of 2^-20.
fn l_min(k: u64, prec: u32) -> ExactRational {
    let xb = largest_zero_upper_bound(k as usize - 2, NU_9_2, prec);
    let one = Interval::from_int(1, prec);
    let xh = Interval::from_rational(&xb.hi(), prec);
    let s = sqrt(&(&one - &xh.sqr()).max(&Interval::zero(prec)), prec).expect("nonnegative");
    let l = (&s * &Interval::from_int(k as i64, prec)).lo();
    let scale = int(1 << 20);
    (l * &scale).floor() / scale
}

/// 48√(2/π)(Σ_{m<4}|t_m| ρ_m / l^{m+7/2} + 2|t_4| ρ_4 / l^{15/2}), an upper bound of |F̃′_k| for sin ζ ≥ l/k.
pub fn crude_bound(e: &Expansion, l: &ExactRational) -> Interval {
    let w = e.precision();
    let li = Interval::from_rational(l, w);
    let root = sqrt(&li, w).expect("l > 0");
    let mut lp = &li.powi(3) * &root;
    let mut acc = Interval::zero(w);
    for m in 0..=DEFAULT_TERMS {
        let mut c = num_traits::Signed::abs(&t3(m));
        if m == DEFAULT_TERMS {
            c *= int(2);
        }
        acc = &acc + &(&Interval::from_rational(&c, w) * e.rho(m)).checked_div(&lp).expect("l > 0");
        lp = &lp * &li;
    }
    e.prefactor() * &acc
}

pub fn lower_bound_large_k(k: u64, target: &ExactRational, prec: u32) -> Result<LowerBoundOutcome, ExpansionError> {
    let e = Expansion::new(k, DEFAULT_TERMS, prec)?;
    let kq = int(k as i64);
    let lmin = l_min(k, prec);
    let ratio = rat(21, 20);
    let neg_target = -target.clone();
    let mut lower: Option<ExactRational> = None;
    let mut upper: Option<ExactRational> = None;
    let mut cells = 0usize;
    let mut la = lmin.clone();
    let crude_from;
    loop {
        let crude = crude_bound(&e, &la);
        if crude.hi() < *target || la >= kq {
            crude_from = la.clone();
            if la < kq {
                let c = -crude.hi();
                lower = Some(lower.map_or(c.clone(), |v| std::cmp::min(v, c)));
            }
            break;
        }
        let lb = std::cmp::min(&la * &ratio, kq.clone());
        let mut stack = vec![(la.clone(), lb.clone(), 0u32)];
        while let Some((a, b, depth)) = stack.pop() {
            let v = e.f_tilde_prime_by_sine(&(&a / &kq), &(&b / &kq))?;
            cells += 1;
            if v.lo() < neg_target && depth < MAX_DEPTH && v.hi() >= neg_target {
                let mid = (&a + &b) / int(2);
                stack.push((mid.clone(), b, depth + 1));
                stack.push((a, mid, depth + 1));
                continue;
            }
            lower = Some(lower.map_or(v.lo(), |x| std::cmp::min(x, v.lo())));
            upper = Some(upper.map_or(v.hi(), |x| std::cmp::min(x, v.hi())));
        }
        la = lb;
    }
    let lower = lower.unwrap_or_else(ExactRational::zero);
    let upper = upper.unwrap_or_else(ExactRational::one);
    let upper = std::cmp::max(upper, lower.clone());
    Ok(LowerBoundOutcome { k, lower, upper, l_min: lmin, crude_from, cells })
}

/// Claim: min_{[0,1]} F̃′_k ≥ -0.04, for k > 200.
pub fn check_lower_bound_large_k(k: u64, prec: u32, mode: Mode) -> Certificate {
    let m0 = rat(1, 25);
    let p = params([("k", k.to_string())]);
    match lower_bound_large_k(k, &m0, prec) {
        Ok(o) => Certificate::judge(
            format!("lemma-min.asymptotic.k{k}"),
            p,
            Claim::at_least(-m0),
            Computed::range(o.lower, o.upper),
            if mode == Mode::Float64 { Mode::Float64 } else { Mode::Interval },
            prec,
            format!(
                "N=4 expansion with remainder on {} l-cells from l={} ; crude tail bound from l={}",
                o.cells,
                to_decimal(&o.l_min, 8, false),
                to_decimal(&o.crude_from, 8, false)
            ),
        ),
        Err(err) => Certificate::judge(
            format!("lemma-min.asymptotic.k{k}"),
            p,
            Claim::at_least(-m0),
            Computed::range(int(-1), int(1)),
            Mode::Interval,
            prec,
            format!("evaluation failed: {err}"),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopoly::certified_min;
    use crate::verifier::certificate::Verdict;

    #[test]
    fn k201_passes_and_agrees_with_exact_path() {
        let o = lower_bound_large_k(201, &rat(1, 25), 128).unwrap();
        assert!(o.lower >= rat(-1, 25));
        let exact = certified_min(201, (&int(0), &int(1)));
        // the exact minimum lies above the asymptotic lower bound
        assert!(exact.value_enclosure.lo() >= o.lower);
        assert!(o.l_min >= int(5));
    }

    #[test]
    fn k10000_passes() {
        let c = check_lower_bound_large_k(10_000, 128, Mode::Interval);
        assert_eq!(c.verdict, Verdict::Pass, "{c:?}");
    }
}
