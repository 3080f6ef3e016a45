//! The five-term split Σ E_i of the leading part of the expansion, with sin ζ = l/k.
//!
//! Each E_i is Σ c_j l^j trig_j / (D_i k^i l^{p_i}) where trig_j is 1,
//! cos(l+π/4) or cos(l-π/4). The table form gives both interval evaluation and
//! the monotone tail bound Σ|c_j| L^{j-p_i} / D_i for l ≥ L.

use super::expansion::t3;
use crate::numerics::elementary::{cos, pi, sqrt};
use crate::numerics::rational::{int, pochhammer, rat, ExactRational};
use crate::numerics::Interval;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Trig {
    One,
    Plus,
    Minus,
}

struct ETerm {
    monomials: &'static [(i64, u32, Trig)],
    divisor: i64,
    k_power: u32,
    /// twice the power of l in the denominator
    l_twice: u32,
}

use Trig::{Minus, One, Plus};

const E: [ETerm; 5] = [
    ETerm {
        monomials: &[(1024, 3, Plus), (-1920, 2, Minus), (-840, 1, Plus), (-315, 0, Minus)],
        divisor: 1024,
        k_power: 0,
        l_twice: 13,
    },
    ETerm {
        monomials: &[
            (-1536, 3, One),
            (-3840, 2, One),
            (6912, 2, Plus),
            (-2100, 1, One),
            (5760, 1, Minus),
            (-2310, 0, Plus),
            (945, 0, One),
        ],
        divisor: 512,
        k_power: 1,
        l_twice: 11,
    },
    ETerm {
        monomials: &[(-10368, 2, One), (11520, 1, One), (15296, 1, Plus), (64920, 0, Minus), (-5775, 0, One)],
        divisor: 256,
        k_power: 2,
        l_twice: 9,
    },
    ETerm {
        monomials: &[(-1434, 2, One), (8115, 1, One), (693, 1, Plus), (5940, 0, Minus)],
        divisor: 8,
        k_power: 3,
        l_twice: 9,
    },
    ETerm { monomials: &[(-2079, 1, One), (23760, 0, One)], divisor: 8, k_power: 4, l_twice: 7 },
];

/// l^{t/2} for l > 0.
fn half_power(l: &Interval, twice: u32, prec: u32) -> Interval {
    let p = l.powi(twice / 2);
    if twice % 2 == 1 {
        &p * &sqrt(l, prec).expect("l > 0")
    } else {
        p
    }
}

/// Enclosures of E_0..E_4 for all l in `l` (l > 0) and 1/k in `inv_k`.
pub fn e_terms(l: &Interval, inv_k: &Interval, prec: u32) -> [Interval; 5] {
    let q = pi(prec).checked_div(&Interval::from_int(4, prec)).expect("nonzero");
    let cp = cos(&(l + &q), prec);
    let cm = cos(&(l - &q), prec);
    std::array::from_fn(|i| {
        let e = &E[i];
        let mut num = Interval::zero(prec);
        for &(c, j, t) in e.monomials {
            let mut v = &Interval::from_int(c, prec) * &l.powi(j);
            v = match t {
                One => v,
                Plus => &v * &cp,
                Minus => &v * &cm,
            };
            num = &num + &v;
        }
        let den = &Interval::from_int(e.divisor, prec) * &half_power(l, e.l_twice, prec);
        let v = num.checked_div(&den).expect("l > 0");
        &v * &inv_k.powi(e.k_power)
    })
}

/// Lower bound of E_i valid for every l ≥ big_l and 0 ≤ 1/k ≤ inv_k_max.
pub fn e_tail_lower(i: usize, big_l: &ExactRational, inv_k_max: &ExactRational, prec: u32) -> ExactRational {
    let e = &E[i];
    let l = Interval::from_rational(big_l, prec);
    let mut acc = Interval::zero(prec);
    for &(c, j, _) in e.monomials {
        acc = &acc + &(&Interval::from_int(c.abs(), prec) * &l.powi(j));
    }
    let den = &Interval::from_int(e.divisor, prec) * &half_power(&l, e.l_twice, prec);
    let kp = Interval::from_rational(&inv_k_max.pow(e.k_power as i32), prec);
    -(&acc.checked_div(&den).expect("l > 0") * &kp).hi()
}

/// (1-16/k) Σ_{m<4} t_m(3) (k+7/2+m)_{3-m} / (k^{3-m} l^{m+7/2}) (cos(l-(7/2-m)π/2) - (3+m) l/k),
/// the quantity the E_i are meant to split.
pub fn e_target(l: &Interval, k: u64, prec: u32) -> Interval {
    let kq = int(k as i64);
    let half_pi = pi(prec).checked_div(&Interval::from_int(2, prec)).expect("nonzero");
    let mut sum = Interval::zero(prec);
    for m in 0..4usize {
        let poch = pochhammer(&(&kq + rat(7, 2) + int(m as i64)), (3 - m) as u64) / kq.pow(3 - m as i32);
        let coef = Interval::from_rational(&(t3(m) * poch), prec);
        let phase = l - &(&Interval::from_rational(&(rat(7, 2) - int(m as i64)), prec) * &half_pi);
        let drift = Interval::from_rational(&(int(3 + m as i64) / &kq), prec);
        let inner = &cos(&phase, prec) - &(&drift * l);
        let term = (&coef * &inner).checked_div(&half_power(l, 2 * m as u32 + 7, prec)).expect("l > 0");
        sum = &sum + &term;
    }
    &sum * &Interval::from_rational(&(int(1) - rat(16, 1) / kq), prec)
}

/// Minimum of E_i over l ∈ [a, b]: (certified lower bound, an upper bound of the minimum).
/// Cells of width at most `cell` are bisected while the lower bound is below `floor`.
pub fn e_min_over(
    i: usize,
    a: &ExactRational,
    b: &ExactRational,
    inv_k: &Interval,
    floor: &ExactRational,
    geometric: bool,
    prec: u32,
) -> (ExactRational, ExactRational) {
    let mut lower: Option<ExactRational> = None;
    let mut upper: Option<ExactRational> = None;
    let mut x = a.clone();
    let step = rat(1, 64);
    let ratio = rat(101, 100);
    while x < *b {
        let y = if geometric { &x * &ratio } else { &x + &step };
        let y = std::cmp::min(y, b.clone());
        let mut stack = vec![(x.clone(), y.clone(), 0u32)];
        while let Some((p, q, d)) = stack.pop() {
            let v = e_terms(&Interval::from_bounds(&p, &q, prec), inv_k, prec)[i].clone();
            if v.lo() < *floor && d < 10 {
                let mid = (&p + &q) / int(2);
                stack.push((mid.clone(), q, d + 1));
                stack.push((p, mid, d + 1));
                continue;
            }
            lower = Some(lower.map_or(v.lo(), |z| std::cmp::min(z, v.lo())));
            upper = Some(upper.map_or(v.hi(), |z| std::cmp::min(z, v.hi())));
        }
        x = y;
    }
    (lower.expect("nonempty range"), upper.expect("nonempty range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::parse_rational;
    use num_traits::Signed;

    #[test]
    fn e4_vanishes_at_80_over_7() {
        let l = Interval::from_rational(&rat(80, 7), 128);
        let inv_k = Interval::from_rational(&rat(1, 300), 128);
        let e = e_terms(&l, &inv_k, 128);
        assert!(e[4].contains(&int(0)));
        assert!(e[4].width() < parse_rational("1e-30").unwrap());
    }

    #[test]
    fn e0_at_five() {
        // E_0(5) from a 30-digit evaluation of the stated formula
        let l = Interval::from_int(5, 128);
        let e = e_terms(&l, &Interval::zero(128), 128);
        let v = parse_rational("0.00368518975167667510274828573869").unwrap();
        assert!((e[0].mid() - v).abs() < parse_rational("1e-15").unwrap(), "{:?}", e[0]);
    }

    #[test]
    fn tail_bound_is_below_values() {
        let big = int(50);
        let inv = rat(1, 201);
        for i in 0..5 {
            let t = e_tail_lower(i, &big, &inv, 128);
            let v = e_terms(&Interval::from_int(60, 128), &Interval::from_rational(&inv, 128), 128)[i].lo();
            assert!(t <= v);
        }
    }
}
