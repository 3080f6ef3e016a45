//! Cosine-series form of F_n^ν(cos θ) with exact coefficients.

use num_traits::{Signed, Zero};

use crate::numerics::elementary::cos;
use crate::numerics::rational::{int, to_f64, ExactRational};
use crate::numerics::{HalfInteger, Interval};

use super::gegenbauer::NU_7_2;

/// Σ_m coeffs[m] cos(mθ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosineSeries {
    coeffs: Vec<ExactRational>,
}

impl CosineSeries {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        CosineSeries { coeffs }
    }

    /// F_n^ν(cos θ) = Σ_j w_j cos((n-2j)θ), w_0 = (ν)_n/(2ν)_n,
    /// w_{j+1} = w_j (ν+j)(n-j) / ((j+1)(ν+n-j-1)).
    pub fn normalized_gegenbauer(n: usize, nu: HalfInteger) -> Self {
        let nuq = nu.value();
        let mut w0 = ExactRational::from_integer(1.into());
        for i in 0..n {
            let iq = int(i as i64);
            w0 *= (&nuq + &iq) / (&nuq * int(2) + &iq);
        }
        let mut coeffs = vec![ExactRational::zero(); n + 1];
        let mut w = w0;
        for j in 0..=n {
            let m = (n as i64 - 2 * j as i64).unsigned_abs() as usize;
            coeffs[m] += &w;
            if j < n {
                let jq = int(j as i64);
                let nj = int((n - j) as i64);
                w = w * (&nuq + &jq) * &nj / ((&jq + int(1)) * (&nuq + &nj - int(1)));
            }
        }
        Self::new(coeffs)
    }

    /// F̃′_k(cos θ).
    pub fn f_tilde_prime(k: usize) -> Self {
        assert!(k >= 1);
        Self::normalized_gegenbauer(k - 1, NU_7_2)
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Highest frequency present.
    pub fn order(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &[ExactRational], i: usize| v.get(i).cloned().unwrap_or_else(ExactRational::zero);
        Self::new((0..n).map(|i| get(&self.coeffs, i) - get(&rhs.coeffs, i)).collect())
    }

    /// Multiplication by sin²θ = 1 - x², via
    /// sin²θ cos mθ = cos(mθ)/2 - cos((m+2)θ)/4 - cos((m-2)θ)/4.
    pub fn times_sin2(&self) -> Self {
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + 2];
        let half = ExactRational::new(1.into(), 2.into());
        let quarter = ExactRational::new(1.into(), 4.into());
        for (m, a) in self.coeffs.iter().enumerate() {
            out[m] += a * &half;
            out[m + 2] -= a * &quarter;
            let lower = (m as i64 - 2).unsigned_abs() as usize;
            out[lower] -= a * &quarter;
        }
        Self::new(out)
    }

    /// Σ |a_m| m^p.
    pub fn weighted_abs_sum(&self, p: u32) -> ExactRational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(m, a)| a.abs() * int((m as i64).pow(p)))
            .sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }

    /// Enclosure at an interval angle.
    pub fn eval_interval(&self, theta: &Interval, prec: u32) -> Interval {
        let mut acc = Interval::zero(prec);
        for (m, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let arg = theta * &Interval::from_int(m as i64, prec);
            acc = &acc + &(&cos(&arg, prec) * &Interval::from_rational(a, prec));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;
    use crate::orthopoly::gegenbauer::{normalized_gegenbauer, NU_5_2};

    #[test]
    fn matches_polynomial_at_rational_cosines() {
        // θ = π/3 gives x = 1/2; compare interval cosine sums with exact polynomial values
        let theta = crate::numerics::elementary::pi(128).checked_div(&Interval::from_int(3, 128)).unwrap();
        for (n, nu) in [(2, NU_5_2), (7, NU_7_2), (12, NU_5_2)] {
            let s = CosineSeries::normalized_gegenbauer(n, nu);
            let v = s.eval_interval(&theta, 128);
            let exact = normalized_gegenbauer(n, nu).eval_rational(&rat(1, 2));
            assert!(v.contains(&exact), "n={n}");
        }
    }

    #[test]
    fn weights_sum_to_one() {
        let s = CosineSeries::normalized_gegenbauer(9, NU_7_2);
        assert_eq!(s.coeffs().iter().cloned().sum::<ExactRational>(), int(1));
    }

    #[test]
    fn sin2_product_vanishes_at_theta_zero() {
        let s = CosineSeries::normalized_gegenbauer(6, NU_7_2).times_sin2();
        assert_eq!(s.coeffs().iter().cloned().sum::<ExactRational>(), int(0));
    }
}
