//! Large-degree expansion of F̃′_k(cos ζ) = F_{k-1}^{7/2}(cos ζ) with a rigorous remainder.
//!
//! F̃′_k(cos ζ) = 48√(2/π) (Σ_{m<N} t_m(3) Γ(k)/Γ(k+m+7/2) cos δ_m / sin^{m+7/2} ζ + R̃),
//! δ_m = (k+m+5/2)ζ - (7/2-m)π/2, and
//! |R̃| ≤ |t_N(3)| Γ(k)/Γ(k+N+7/2) sin^{-(N+7/2)} ζ · (sec ζ for ζ ≤ π/4, 2 sin ζ above).

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::numerics::elementary::{arcsin, cos, gamma_ratio_scaled, pi, sin, sqrt};
use crate::numerics::rational::{factorial, int, pochhammer, rat, ExactRational};
use crate::numerics::{HalfInteger, Interval, NumericsError};

pub const DEFAULT_TERMS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("the angle interval must stay inside (0, π)")]
    AngleRange,
    #[error("need k >= 2 and N >= 3")]
    Parameters,
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// t_m(μ) = (1/2-μ)_m (1/2+μ)_m / ((-2)^m m!).
pub fn t_coeff(m: usize, mu: HalfInteger) -> ExactRational {
    let half = rat(1, 2);
    let muq = mu.value();
    let num = pochhammer(&(&half - &muq), m as u64) * pochhammer(&(&half + &muq), m as u64);
    let den = ExactRational::from_integer(BigInt::from(-2).pow(m as u32) * factorial(m as u64));
    num / den
}

pub fn t3(m: usize) -> ExactRational {
    t_coeff(m, HalfInteger::from_twice(6))
}

/// One summand, with every irrational factor enclosed.
#[derive(Clone, Debug)]
pub struct ExpansionTerm {
    pub m: usize,
    pub t_coeff: ExactRational,
    /// Γ(k)/Γ(k+m+7/2).
    pub gamma_ratio: Interval,
    /// cos δ_m.
    pub phase_cos: Interval,
    /// sin^{m+7/2} ζ.
    pub sine_power: Interval,
}

#[derive(Clone, Debug)]
pub struct RemainderBound {
    pub n_terms: usize,
    pub zeta: Interval,
    pub bound: Interval,
}

/// Data fixed by (k, N, precision).
#[derive(Clone, Debug)]
pub struct Expansion {
    k: u64,
    n_terms: usize,
    prec: u32,
    t: Vec<ExactRational>,
    /// ρ_{m+7/2}(k) = k^{m+7/2} Γ(k)/Γ(k+m+7/2) for m = 0..=N.
    rho: Vec<Interval>,
    prefactor: Interval,
    pi: Interval,
}

fn half_int(twice: u32) -> HalfInteger {
    HalfInteger::from_twice(twice)
}

impl Expansion {
    pub fn new(k: u64, n_terms: usize, prec: u32) -> Result<Self, ExpansionError> {
        if k < 2 || n_terms < 3 {
            return Err(ExpansionError::Parameters);
        }
        let w = prec + 32;
        let t = (0..=n_terms).map(t3).collect();
        let rho = (0..=n_terms)
            .map(|m| gamma_ratio_scaled(k, half_int(2 * m as u32 + 7), w))
            .collect::<Result<Vec<_>, _>>()?;
        let p = pi(w);
        // 48 √(2/π)
        let prefactor = &Interval::from_int(48, w) * &sqrt(&Interval::from_int(2, w).checked_div(&p).expect("π > 0"), w)?;
        Ok(Expansion { k, n_terms, prec: w, t, rho, prefactor, pi: p })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn prefactor(&self) -> &Interval {
        &self.prefactor
    }

    pub fn rho(&self, m: usize) -> &Interval {
        &self.rho[m]
    }

    fn half_pi(&self) -> Interval {
        self.pi.checked_div(&Interval::from_int(2, self.prec)).expect("nonzero")
    }

    fn quarter_pi(&self) -> Interval {
        self.pi.checked_div(&Interval::from_int(4, self.prec)).expect("nonzero")
    }

    /// δ_m = (k+m+5/2)ζ - (7/2-m)π/2.
    fn phase(&self, m: usize, zeta: &Interval) -> Interval {
        let w = self.prec;
        let a = Interval::from_rational(&(int(self.k as i64 + m as i64) + rat(5, 2)), w);
        let b = Interval::from_rational(&(rat(7, 2) - int(m as i64)), w);
        &(&a * zeta) - &(&b * &self.half_pi())
    }

    /// Remainder factor: sec ζ on (0, π/4], 2 sin ζ on (π/4, π/2].
    fn remainder_factor(&self, zeta: &Interval, s: &Interval) -> Interval {
        let w = self.prec;
        let q = self.quarter_pi();
        let mut hi = int(0);
        if zeta.lo() <= q.hi() {
            let top = if zeta.hi() <= q.hi() { zeta.hi() } else { q.hi() };
            let c = cos(&Interval::from_rational(&top, w), w);
            let sec = Interval::from_int(1, w).checked_div(&c).expect("cos > 0 below π/4");
            hi = std::cmp::max(hi, sec.hi());
        }
        if zeta.hi() > q.lo() {
            hi = std::cmp::max(hi, s.hi() * int(2));
        }
        Interval::from_bounds(&int(0), &hi, w)
    }

    /// Σ_{m<N} and the remainder bound, both without the 48√(2/π) prefactor,
    /// for ζ ⊆ (0, π/2] with s = sin ζ given as an enclosure.
    fn sum_and_remainder(&self, zeta: &Interval, s: &Interval) -> (Interval, Interval) {
        let w = self.prec;
        let l = s * &Interval::from_int(self.k as i64, w);
        let root_l = sqrt(&l, w).expect("positive");
        let mut sum = Interval::zero(w);
        // l^{m+7/2} = l^{m+3} √l
        let mut lpow = &l.powi(3) * &root_l;
        for m in 0..self.n_terms {
            let c = cos(&self.phase(m, zeta), w);
            let term = (&(&self.rho[m] * &c) * &Interval::from_rational(&self.t[m], w))
                .checked_div(&lpow)
                .expect("l > 0");
            sum = &sum + &term;
            lpow = &lpow * &l;
        }
        let tn = Interval::from_rational(&self.t[self.n_terms].abs(), w);
        let rem = (&(&tn * &self.rho[self.n_terms]) * &self.remainder_factor(zeta, s))
            .checked_div(&lpow)
            .expect("l > 0");
        (sum, rem)
    }

    fn check_angle(&self, zeta: &Interval) -> Result<(), ExpansionError> {
        if !zeta.is_positive() || zeta.hi() >= self.pi.lo() {
            return Err(ExpansionError::AngleRange);
        }
        Ok(())
    }

    /// Enclosure of F̃′_k(cos ζ) for every ζ in `zeta` ⊆ (0, π).
    pub fn f_tilde_prime(&self, zeta: &Interval) -> Result<Interval, ExpansionError> {
        self.check_angle(zeta)?;
        let w = self.prec;
        let hp = self.half_pi();
        if zeta.hi() <= hp.lo() {
            let s = sin(zeta, w);
            return Ok(self.assemble(zeta, &s));
        }
        if zeta.lo() >= hp.hi() {
            // F̃′_k(-x) = (-1)^{k-1} F̃′_k(x)
            let r = &self.pi - zeta;
            let v = self.f_tilde_prime(&r)?;
            return Ok(if self.k.is_multiple_of(2) { -v } else { v });
        }
        // straddles π/2: split there
        let left = Interval::from_bounds(&zeta.lo(), &hp.lo(), w);
        let right = Interval::from_bounds(&hp.lo(), &zeta.hi(), w);
        let a = self.f_tilde_prime(&left)?;
        let r = &self.pi - &right;
        let r = Interval::from_bounds(&std::cmp::min(r.lo(), hp.lo()), &r.hi(), w);
        let b = self.f_tilde_prime(&r)?;
        let b = if self.k.is_multiple_of(2) { -b } else { b };
        Ok(a.hull(&b))
    }

    /// Enclosure of F̃′_k over the ζ-range with sin ζ ∈ [s_lo, s_hi] ⊆ (0, 1], ζ ≤ π/2.
    pub fn f_tilde_prime_by_sine(&self, s_lo: &ExactRational, s_hi: &ExactRational) -> Result<Interval, ExpansionError> {
        let w = self.prec;
        let s = Interval::from_bounds(s_lo, s_hi, w);
        if !s.is_positive() || s.hi() > ExactRational::one() {
            return Err(ExpansionError::AngleRange);
        }
        let zeta = arcsin(&s, w)?;
        Ok(self.assemble(&zeta, &s))
    }

    fn assemble(&self, zeta: &Interval, s: &Interval) -> Interval {
        let (sum, rem) = self.sum_and_remainder(zeta, s);
        let r = Interval::from_bounds(&-rem.hi(), &rem.hi(), self.prec);
        (&self.prefactor * &(&sum + &r)).with_prec(self.prec)
    }

    pub fn terms(&self, zeta: &Interval) -> Result<Vec<ExpansionTerm>, ExpansionError> {
        self.check_angle(zeta)?;
        let w = self.prec;
        let s = sin(zeta, w);
        let root_s = sqrt(&s, w)?;
        let kk = Interval::from_int(self.k as i64, w);
        (0..self.n_terms)
            .map(|m| {
                let sp = &s.powi(m as u32 + 3) * &root_s;
                let kp = &kk.powi(m as u32 + 3) * &sqrt(&kk, w)?;
                Ok(ExpansionTerm {
                    m,
                    t_coeff: self.t[m].clone(),
                    gamma_ratio: self.rho[m].checked_div(&kp).expect("k > 0"),
                    phase_cos: cos(&self.phase(m, zeta), w),
                    sine_power: sp,
                })
            })
            .collect()
    }

    pub fn remainder(&self, zeta: &Interval) -> Result<RemainderBound, ExpansionError> {
        self.check_angle(zeta)?;
        if zeta.hi() > self.half_pi().hi() {
            return Err(ExpansionError::AngleRange);
        }
        let s = sin(zeta, self.prec);
        let (_, rem) = self.sum_and_remainder(zeta, &s);
        Ok(RemainderBound { n_terms: self.n_terms, zeta: zeta.clone(), bound: rem })
    }
}

/// Enclosure of F̃′_k(cos ζ) from the N-term expansion.
pub fn f_tilde_prime_asymptotic(k: u64, zeta: &Interval, n_terms: usize, prec: u32) -> Result<Interval, ExpansionError> {
    Ok(Expansion::new(k, n_terms, prec)?.f_tilde_prime(zeta)?.with_prec(prec))
}

/// Enclosure of C_{k-1}^{7/2}(cos ζ) = F̃′_k(cos ζ) · λ_k(λ_k+4)(λ_k+6)/720.
pub fn asymptotic_enclosure(k: u64, zeta: &Interval, n_terms: usize, prec: u32) -> Result<Interval, ExpansionError> {
    let f = Expansion::new(k, n_terms, prec)?.f_tilde_prime(zeta)?;
    let lam = (k * (k + 5)) as i64;
    let scale = int(lam) * int(lam + 4) * int(lam + 6) / int(720);
    Ok((&f * &Interval::from_rational(&scale, f.prec())).with_prec(prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::parse_rational;
    use crate::orthopoly::CosineSeries;

    #[test]
    fn t_values() {
        assert_eq!(t3(0), int(1));
        assert_eq!(t3(1), rat(35, 8));
        assert_eq!(t3(2), rat(945, 128));
        assert_eq!(t3(3), rat(3465, 1024));
        assert_eq!(t3(4), rat(-45045, 32768));
    }

    #[test]
    fn overlaps_exact_at_201_quarter_pi() {
        let w = 128;
        let zeta = pi(w).checked_div(&Interval::from_int(4, w)).unwrap();
        let a = f_tilde_prime_asymptotic(201, &zeta, 4, w).unwrap();
        let exact = CosineSeries::f_tilde_prime(201).eval_interval(&zeta, 192);
        assert!(a.intersects(&exact), "{a:?} vs {exact:?}");
        assert!(a.width() < parse_rational("1e-6").unwrap());
    }

    #[test]
    fn reflection_and_rescaling() {
        let w = 128;
        let zeta = Interval::from_rational(&rat(2, 1), w);
        let a = f_tilde_prime_asymptotic(150, &zeta, 4, w).unwrap();
        let exact = CosineSeries::f_tilde_prime(150).eval_interval(&zeta, 192);
        assert!(a.intersects(&exact));
        let c = asymptotic_enclosure(150, &zeta, 4, w).unwrap();
        assert!(c.width() > a.width());
    }

    #[test]
    fn rejects_endpoints() {
        let z = Interval::zero(64);
        assert!(f_tilde_prime_asymptotic(201, &z, 4, 64).is_err());
        assert!(f_tilde_prime_asymptotic(1, &Interval::from_int(1, 64), 4, 64).is_err());
    }
}
