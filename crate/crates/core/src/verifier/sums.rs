//! The seven sums over the two index blocks of the induction step, their closed
//! forms, and exact comparison against direct summation.
//!
//! With Λ = λ_{n+1}, low block k = 2..(n-3)/2 and high block k = (n-1)/2..n:
//! S1..S3 = Σ_low (Λ - λ_k + 22/7)(2k+5) λ_k^{0,1,2}, S4 = Σ_high (Λ - λ_k + 22/7)(2k+5),
//! S5 = Σ_high (2k+5)/λ_k, S6 = Σ_high (2k+5), S7 = Σ_high (2k+5)/λ_k².

use num_bigint::BigInt;
use num_traits::Zero;

use super::certificate::{params, Certificate, Claim, Computed, Mode};
use super::context::{effective_mode, recorded_precision};
use crate::numerics::rational::{int, parse_rational, rat, to_decimal, ExactRational};
use crate::numerics::Interval;
use crate::orthopoly::gegenbauer::lambda_q;

/// Coefficients in descending powers of n, as stated.
const S1: &[(i64, i64)] = &[(7, 32), (23, 8), (-115, 112), (-4265, 56), (-20075, 224)];
const S2_STATED: &[(i64, i64)] =
    &[(5, 192), (1, 2), (3611, 1344), (-9, 28), (-100207, 5376), (-1393237, 896), (-1040985, 1024)];
const S2_CORRECTED: &[(i64, i64)] =
    &[(5, 192), (1, 2), (3611, 1344), (-9, 28), (-100207, 1344), (-9437, 28), (-3795, 64)];
const S3_STATED: &[(i64, i64)] = &[
    (13, 3072),
    (41, 384),
    (1525, 1792),
    (3011, 2688),
    (-48697, 3584),
    (-14917, 384),
    (1000525, 5376),
    (-1393237, 896),
    (-1040985, 1024),
];
const S3_CORRECTED: &[(i64, i64)] = &[
    (13, 3072),
    (41, 384),
    (1525, 1792),
    (3011, 2688),
    (-48697, 3584),
    (-14917, 384),
    (-1000525, 5376),
    (-1393237, 896),
    (-1040985, 1024),
];
const S4: &[(i64, i64)] = &[(9, 32), (33, 8), (2763, 112), (3753, 56), (15147, 224)];
const S6: &[(i64, i64)] = &[(3, 4), (9, 2), (27, 4)];

fn horner(coeffs: &[(i64, i64)], n: &ExactRational) -> ExactRational {
    coeffs.iter().fold(ExactRational::zero(), |acc, &(p, q)| acc * n + rat(p, q))
}

/// (1/5)(3/(n+1)² - 1/(n+2)² + 3/(n+3)² - 1/(n+4)² + 3/(n+5)² + 4/(n+7)² + 4/(n-1)²).
fn s7_stated(n: &ExactRational) -> ExactRational {
    let t = |c: i64, s: i64| {
        let m = n + int(s);
        int(c) / (&m * &m)
    };
    (t(3, 1) - t(1, 2) + t(3, 3) - t(1, 4) + t(3, 5) + t(4, 7) + t(4, -1)) / int(5)
}

/// Σ_{k=lo}^{hi} (1/k² - 1/(k+5)²)/5, telescoped.
fn s7_telescoped(lo: u64, hi: u64) -> ExactRational {
    let inv2 = |k: u64| rat(1, (k * k) as i64);
    let mut s = ExactRational::zero();
    for k in lo..lo + 5 {
        s += inv2(k);
    }
    for k in hi + 1..hi + 6 {
        s -= inv2(k);
    }
    s / int(5)
}

fn blocks(n: u64) -> ((u64, u64), (u64, u64)) {
    ((2, (n - 3) / 2), ((n - 1) / 2, n))
}

/// Exact direct summation of S1..S7, n odd, n ≥ 5.
pub fn direct_sums(n: u64) -> [ExactRational; 7] {
    let ((l0, l1), (h0, h1)) = blocks(n);
    let big = lambda_q(n + 1) + rat(22, 7);
    let mut s: [ExactRational; 7] = Default::default();
    for k in l0..=l1 {
        let lk = lambda_q(k);
        let w = (&big - &lk) * int(2 * k as i64 + 5);
        s[1] += &w * &lk;
        s[2] += &w * &lk * &lk;
        s[0] += w;
    }
    for k in h0..=h1 {
        let lk = lambda_q(k);
        let odd = int(2 * k as i64 + 5);
        s[3] += (&big - &lk) * &odd;
        s[4] += &odd / &lk;
        s[6] += &odd / (&lk * &lk);
        s[5] += odd;
    }
    s
}

/// S1..S7 with S1-S4 from the stated closed forms and S5-S7 by direct summation.
pub fn closed_form_sums(n: u64) -> [ExactRational; 7] {
    let nq = int(n as i64);
    let d = direct_sums(n);
    [
        horner(S1, &nq),
        horner(S2_STATED, &nq),
        horner(S3_STATED, &nq),
        horner(S4, &nq),
        d[4].clone(),
        d[5].clone(),
        d[6].clone(),
    ]
}

/// Stated closed form of S_i (i = 1..7; none for S5).
pub fn stated_closed_form(i: usize, n: u64) -> Option<ExactRational> {
    let nq = int(n as i64);
    Some(match i {
        1 => horner(S1, &nq),
        2 => horner(S2_STATED, &nq),
        3 => horner(S3_STATED, &nq),
        4 => horner(S4, &nq),
        6 => horner(S6, &nq),
        7 => s7_stated(&nq),
        _ => return None,
    })
}

/// Closed form of S_i that matches direct summation (S2 and S3 differ from the stated ones).
pub fn corrected_closed_form(i: usize, n: u64) -> Option<ExactRational> {
    let nq = int(n as i64);
    match i {
        2 => Some(horner(S2_CORRECTED, &nq)),
        3 => Some(horner(S3_CORRECTED, &nq)),
        7 => {
            let (_, (h0, h1)) = blocks(n);
            Some(s7_telescoped(h0, h1))
        }
        _ => stated_closed_form(i, n),
    }
}

/// Enclosure of S5 by interval summation (cheap for large n).
pub fn s5_enclosure(n: u64, prec: u32) -> Interval {
    let (_, (h0, h1)) = blocks(n);
    let mut acc = Interval::zero(prec);
    for k in h0..=h1 {
        let v = Interval::from_rational(&rat(2 * k as i64 + 5, (k * (k + 5)) as i64), prec);
        acc = &acc + &v;
    }
    acc
}

/// S1, S2, S3, S4, S6 by exact integer summation and S7 telescoped; S5 is left to
/// [`s5_exact`] or [`s5_enclosure_fast`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSums {
    pub s1: ExactRational,
    pub s2: ExactRational,
    pub s3: ExactRational,
    pub s4: ExactRational,
    pub s6: ExactRational,
    pub s7: ExactRational,
}

pub fn block_sums(n: u64) -> BlockSums {
    let ((l0, l1), (h0, h1)) = blocks(n);
    let lam = |k: u64| (k * (k + 5)) as i128;
    let big7 = 7 * lam(n + 1) + 22;
    let (mut t0, mut t1, mut t2, mut t4, mut t6) = (0i128, 0i128, 0i128, 0i128, 0i128);
    let ovf = "sums fit in i128 for n below 10^5";
    for k in l0..=l1 {
        let lk = lam(k);
        let w = (big7 - 7 * lk).checked_mul(2 * k as i128 + 5).expect(ovf);
        t0 = t0.checked_add(w).expect(ovf);
        t1 = t1.checked_add(w.checked_mul(lk).expect(ovf)).expect(ovf);
        t2 = t2.checked_add(w.checked_mul(lk * lk).expect(ovf)).expect(ovf);
    }
    for k in h0..=h1 {
        let lk = lam(k);
        t4 = t4.checked_add((big7 - 7 * lk).checked_mul(2 * k as i128 + 5).expect(ovf)).expect(ovf);
        t6 += 2 * k as i128 + 5;
    }
    let q = |t: i128| ExactRational::new(t.into(), 7.into());
    BlockSums { s1: q(t0), s2: q(t1), s3: q(t2), s4: q(t4), s6: ExactRational::from_integer(t6.into()), s7: s7_telescoped(h0, h1) }
}

/// Σ_{k=a}^{b} 1/k as an unreduced (numerator, denominator) pair, by binary splitting.
fn harmonic_split(a: u64, b: u64) -> (BigInt, BigInt) {
    if a == b {
        return (BigInt::from(1), BigInt::from(a));
    }
    let m = (a + b) / 2;
    let (p1, q1) = harmonic_split(a, m);
    let (p2, q2) = harmonic_split(m + 1, b);
    (p1 * &q2 + p2 * &q1, q1 * q2)
}

/// Exact S5 = Σ_high (1/k + 1/(k+5)), reduced once at the end.
pub fn s5_exact(n: u64) -> ExactRational {
    let (_, (h0, h1)) = blocks(n);
    let (p1, q1) = harmonic_split(h0, h1);
    let (p2, q2) = harmonic_split(h0 + 5, h1 + 5);
    ExactRational::new(p1 * &q2 + p2 * &q1, q1 * q2)
}

fn harmonic_table(len: u64, prec: u32) -> Vec<Interval> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    static TABLES: OnceLock<Mutex<HashMap<u32, Vec<Interval>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().expect("table lock");
    let t = guard.entry(prec).or_insert_with(|| vec![Interval::zero(prec)]);
    while (t.len() as u64) <= len {
        let k = t.len() as i64;
        let next = &t[t.len() - 1] + &Interval::from_rational(&rat(1, k), prec);
        t.push(next);
    }
    t[..=len as usize].to_vec()
}

/// Enclosure of S5 from a cached table of harmonic-number enclosures.
pub fn s5_enclosure_fast(n: u64, prec: u32) -> Interval {
    let (_, (h0, h1)) = blocks(n);
    let t = harmonic_table(h1 + 5, prec);
    let seg = |a: u64, b: u64| &t[b as usize] - &t[a as usize - 1];
    &seg(h0, h1) + &seg(h0 + 5, h1 + 5)
}

/// Claim: stated closed form of S_i equals direct summation at n.
pub fn check_identity(i: usize, n: u64, mode: Mode) -> Option<Certificate> {
    let closed = stated_closed_form(i, n)?;
    let direct = direct_sums(n)[i - 1].clone();
    let diff = &closed - &direct;
    let mut notes = String::new();
    if !diff.is_zero() {
        if let Some(c) = corrected_closed_form(i, n) {
            if c == direct {
                notes = "stated closed form differs from direct summation; the corrected closed form agrees".into();
            }
        }
    }
    let m = effective_mode(mode, true);
    Some(Certificate::judge(
        format!("sums.S{i}.identity.n{n}"),
        params([("n", n.to_string()), ("sum", format!("S{i}"))]),
        Claim::equals(ExactRational::zero()),
        Computed::exact(diff),
        m,
        recorded_precision(m, 0),
        notes,
    ))
}

/// Claim: S5 ≥ 1.3863.
pub fn check_s5_lower(n: u64, mode: Mode, prec: u32) -> Certificate {
    let claim = Claim::at_least(parse_rational("1.3863").expect("literal"));
    let p = params([("n", n.to_string())]);
    if n <= 2001 {
        let m = effective_mode(mode, true);
        let v = direct_sums(n)[4].clone();
        Certificate::judge(format!("sums.S5.lower.n{n}"), p, claim, Computed::exact(v), m, 0, "")
    } else {
        let m = effective_mode(mode, false);
        let v = s5_enclosure(n, prec);
        Certificate::judge(format!("sums.S5.lower.n{n}"), p, claim, Computed::enclosure(&v), m, prec, "S5 decreases towards 2 ln 2 = 1.386294...")
    }
}

/// Claim: S7 ≤ 3/n².
pub fn check_s7_upper(n: u64, mode: Mode) -> Certificate {
    let (_, (h0, h1)) = blocks(n);
    let v = s7_telescoped(h0, h1);
    let m = effective_mode(mode, true);
    Certificate::judge(
        format!("sums.S7.upper.n{n}"),
        params([("n", n.to_string())]),
        Claim::at_most(rat(3, (n * n) as i64)),
        Computed::exact(v),
        m,
        0,
        "",
    )
}

/// Claim: 11/(7α) ≤ 22/7 on the α-range, so 22/7 in the closed forms is an upper bound.
pub fn check_alpha_substitution(alpha: &(ExactRational, ExactRational), mode: Mode) -> Certificate {
    let at = |a: &ExactRational| rat(11, 7) / a;
    let (lo, hi) = {
        let (x, y) = (at(&alpha.0), at(&alpha.1));
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    };
    let m = effective_mode(mode, true);
    Certificate::judge(
        "sums.alpha-substitution",
        params([("alpha_lo", crate::numerics::rational::to_pq(&alpha.0)), ("alpha_hi", crate::numerics::rational::to_pq(&alpha.1))]),
        Claim::at_most(rat(22, 7)),
        Computed::range(lo.clone(), hi.clone()),
        m,
        0,
        format!("11/(7 alpha) decreasing in alpha; range [{}, {}]", to_decimal(&lo, 8, false), to_decimal(&hi, 8, true)),
    )
}
