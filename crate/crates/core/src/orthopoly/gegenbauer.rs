//! Normalized Gegenbauer polynomials and their defining identities.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use crate::numerics::rational::{int, pochhammer, rat, ExactRational};
use crate::numerics::HalfInteger;

pub const MAX_DEGREE: usize = 4096;

pub const NU_5_2: HalfInteger = HalfInteger::from_twice(5);
pub const NU_7_2: HalfInteger = HalfInteger::from_twice(7);
pub const NU_9_2: HalfInteger = HalfInteger::from_twice(9);

/// λ_k = k(k+5).
pub fn lambda(k: u64) -> u64 {
    k * (k + 5)
}

pub fn lambda_q(k: u64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(lambda(k)))
}

#[derive(Default)]
struct Family {
    classical: Vec<Arc<Polynomial>>,
    normalized: Vec<Arc<Polynomial>>,
}

fn cache() -> &'static Mutex<HashMap<HalfInteger, Family>> {
    static CACHE: OnceLock<Mutex<HashMap<HalfInteger, Family>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn extend(fam: &mut Family, nu: HalfInteger, k: usize) {
    let nuq = nu.value();
    let two_nu = &nuq * int(2);
    while fam.classical.len() <= k {
        let j = fam.classical.len();
        // k C_k = 2(k+ν-1) x C_{k-1} - (k+2ν-2) C_{k-2}
        let c = match j {
            0 => Polynomial::constant(ExactRational::one()),
            1 => Polynomial::x().scale(&two_nu),
            _ => {
                let jq = int(j as i64);
                let a = (&jq + &nuq - int(1)) * int(2) / &jq;
                let b = (&jq + &two_nu - int(2)) / &jq;
                &fam.classical[j - 1].shift().scale(&a) - &fam.classical[j - 2].scale(&b)
            }
        };
        // C_k(1) = (2ν)_k / k!
        let at_one = pochhammer(&two_nu, j as u64)
            / ExactRational::from_integer(crate::numerics::rational::factorial(j as u64));
        fam.normalized.push(Arc::new(c.scale(&at_one.recip())));
        fam.classical.push(Arc::new(c));
    }
}

fn with_family<T>(nu: HalfInteger, k: usize, f: impl FnOnce(&Family) -> T) -> T {
    assert!(k <= MAX_DEGREE, "degree {k} exceeds the cap {MAX_DEGREE}");
    let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
    let fam = map.entry(nu).or_default();
    extend(fam, nu, k);
    f(fam)
}

/// The classical C_k^ν.
pub fn gegenbauer_c(k: usize, nu: HalfInteger) -> Arc<Polynomial> {
    with_family(nu, k, |f| f.classical[k].clone())
}

/// F_k^ν, normalized so that F_k^ν(1) = 1.
pub fn normalized_gegenbauer(k: usize, nu: HalfInteger) -> Arc<Polynomial> {
    with_family(nu, k, |f| f.normalized[k].clone())
}

/// F̃′_k = F_{k-1}^{7/2}.
pub fn f_tilde_prime(k: usize) -> Arc<Polynomial> {
    assert!(k >= 1, "F̃′_k needs k >= 1");
    normalized_gegenbauer(k - 1, NU_7_2)
}

/// (1-x²)p'' - (2ν+1)x p' + k(k+2ν)p.
pub fn ode_residual(p: &Polynomial, k: usize, nu: HalfInteger) -> Polynomial {
    let nuq = nu.value();
    let d1 = p.derivative();
    let d2 = d1.derivative();
    let one_minus_x2 = Polynomial::new(vec![int(1), int(0), int(-1)]);
    let ev = int(k as i64) * (int(k as i64) + &nuq * int(2));
    let t1 = &one_minus_x2 * &d2;
    let t2 = d1.shift().scale(&(&nuq * int(2) + int(1)));
    &(&t1 - &t2) + &p.scale(&ev)
}

pub fn check_ode_identity(k: usize, nu: HalfInteger) -> bool {
    ode_residual(&normalized_gegenbauer(k, nu), k, nu).is_zero()
}

/// (F_k^ν)' - k(k+2ν)/(2ν+1) F_{k-1}^{ν+1} for arbitrary stand-ins of the two polynomials.
pub fn derivative_residual(f_k: &Polynomial, f_km1_next: &Polynomial, k: usize, nu: HalfInteger) -> Polynomial {
    let nuq = nu.value();
    let kq = int(k as i64);
    let c = &kq * (&kq + &nuq * int(2)) / (&nuq * int(2) + int(1));
    &f_k.derivative() - &f_km1_next.scale(&c)
}

/// At k = 0 the coefficient k(k+2ν)/(2ν+1) vanishes and the identity reads F_0' = 0.
pub fn check_derivative_identity(k: usize, nu: HalfInteger) -> bool {
    if k == 0 {
        return normalized_gegenbauer(0, nu).derivative().is_zero();
    }
    derivative_residual(&normalized_gegenbauer(k, nu), &normalized_gegenbauer(k - 1, nu.plus_one()), k, nu)
        .is_zero()
}

/// ∫_{-1}^{1} (1-x²)² F_k F_l dx for ν = 5/2.
pub fn weighted_inner_product(k: usize, l: usize) -> ExactRational {
    if (k + l) % 2 == 1 {
        return ExactRational::zero();
    }
    let w = Polynomial::new(vec![int(1), int(0), int(-2), int(0), int(1)]);
    let fk = normalized_gegenbauer(k, NU_5_2);
    let fl = normalized_gegenbauer(l, NU_5_2);
    (&(&w * &fk) * &fl).integrate_symmetric()
}

/// 128/((2k+5)(λ_k+4)(λ_k+6)).
pub fn orthogonality_constant(k: u64) -> ExactRational {
    let l = lambda(k) as i64;
    rat(128, 1) / (int(2 * k as i64 + 5) * int(l + 4) * int(l + 6))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_values() {
        assert_eq!(lambda(0), 0);
        assert_eq!(lambda(2), 14);
        assert_eq!(lambda(5), 50);
        assert_eq!(rat(16, 50), rat(8, 25));
    }

    #[test]
    fn low_degree_forms() {
        assert_eq!(*normalized_gegenbauer(1, NU_5_2), Polynomial::x());
        let f2 = Polynomial::new(vec![rat(-1, 6), int(0), rat(7, 6)]);
        assert_eq!(*normalized_gegenbauer(2, NU_5_2), f2);
        assert_eq!(*f_tilde_prime(3), Polynomial::new(vec![rat(-1, 8), int(0), rat(9, 8)]));
        assert_eq!(*f_tilde_prime(4), Polynomial::new(vec![int(0), rat(-3, 8), int(0), rat(11, 8)]));
        let f5 = Polynomial::new(vec![rat(3, 80), int(0), rat(-66, 80), int(0), rat(143, 80)]);
        assert_eq!(*f_tilde_prime(5), f5);
    }

    #[test]
    fn identities() {
        assert!(check_ode_identity(2, NU_5_2));
        assert!(check_ode_identity(7, NU_7_2));
        let perturbed = &*normalized_gegenbauer(2, NU_5_2) + &Polynomial::x();
        assert!(!ode_residual(&perturbed, 2, NU_5_2).is_zero());
        assert!(check_derivative_identity(3, NU_5_2));
        assert!(check_derivative_identity(10, NU_5_2));
        let wrong = derivative_residual(&normalized_gegenbauer(3, NU_5_2), &normalized_gegenbauer(2, NU_5_2), 3, NU_5_2);
        assert!(!wrong.is_zero());
    }

    #[test]
    fn inner_products() {
        assert_eq!(weighted_inner_product(2, 3), int(0));
        assert_eq!(weighted_inner_product(2, 2), rat(16, 405));
        assert_eq!(weighted_inner_product(0, 0), rat(16, 15));
        assert_eq!(orthogonality_constant(2), rat(16, 405));
    }

    /// Independent construction from the explicit coefficient formula
    /// c_{k-2j} = (-1)^j (ν)_{k-j} 2^{k-2j} / (j! (k-2j)!).
    fn explicit_c(k: usize, nu: HalfInteger) -> Polynomial {
        let nuq = nu.value();
        let mut c = vec![ExactRational::zero(); k + 1];
        for j in 0..=k / 2 {
            let p = k - 2 * j;
            let mut v = pochhammer(&nuq, (k - j) as u64) * ExactRational::from_integer(BigInt::one() << p);
            v /= ExactRational::from_integer(
                crate::numerics::rational::factorial(j as u64) * crate::numerics::rational::factorial(p as u64),
            );
            c[p] = if j % 2 == 1 { -v } else { v };
        }
        Polynomial::new(c)
    }

    #[test]
    fn recurrence_matches_explicit_formula() {
        for nu in [NU_5_2, NU_7_2, NU_9_2] {
            for k in [0, 1, 2, 5, 17, 40] {
                assert_eq!(*gegenbauer_c(k, nu), explicit_c(k, nu), "k={k} nu={nu}");
            }
        }
    }
}
