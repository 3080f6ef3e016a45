//! Certified extrema of cosine series over x = cos θ ∈ [x0, x1] ⊆ [0, 1].
//!
//! The angle range [0, π/2] is split into `GRID` equal cells. A series is
//! evaluated in f64 at grid angles using a rigorously computed cosine table and
//! an a-priori bound on the float error; between grid points the value can move
//! by at most min(K h²/8, L h/2) above the larger endpoint, with K = Σ|a_m|m²
//! and L = Σ|a_m|m. Cells start coarse and are bisected only while they could
//! still hold the extremum.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::cosine::CosineSeries;
use crate::numerics::elementary::{cos, pi};
use crate::numerics::rational::{from_f64, rat, to_f64, ExactRational};
use crate::numerics::Interval;

/// log2 of the number of cells on [0, π/2].
const GRID_BITS: u32 = 16;
const GRID: usize = 1 << GRID_BITS;
const COARSE_STRIDE: usize = 256;
/// Rational upper bound on the finest cell width π / 2^17.
const FINEST_STEP: (i64, i64) = (1, 41_720);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Clone, Debug)]
pub struct CertifiedExtremum {
    pub kind: ExtremumKind,
    pub domain: (ExactRational, ExactRational),
    pub value_enclosure: Interval,
    /// Finest angular step used.
    pub grid_step: ExactRational,
    /// Σ|a_m| m, bounding |d/dθ|.
    pub lipschitz_bound: ExactRational,
    /// Σ|a_m| m², bounding |d²/dθ²|.
    pub curvature_bound: ExactRational,
    /// x = cos θ at the best grid point (display only).
    pub location: f64,
}

struct CosTable {
    /// cos(π r / (2 GRID)) for r = 0..=GRID.
    values: Vec<f64>,
    /// Bound on |values[r] - cos(π r / (2 GRID))|.
    error: f64,
}

fn table() -> &'static CosTable {
    static TABLE: OnceLock<CosTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let prec = 80;
        let p = pi(prec);
        let mut values = Vec::with_capacity(GRID + 1);
        let mut err = ExactRational::zero();
        for r in 0..=GRID {
            let arg = (&p * &Interval::from_int(r as i64, prec)).with_prec(prec + GRID_BITS + 1);
            let arg = Interval::from_rational(&(arg.lo() / ExactRational::from_integer((2 * GRID).into())), prec)
                .hull(&Interval::from_rational(
                    &(arg.hi() / ExactRational::from_integer((2 * GRID).into())),
                    prec,
                ));
            let c = cos(&arg, prec);
            let v = to_f64(&c.mid());
            let vq = from_f64(v);
            let e = std::cmp::max((&vq - c.lo()).abs_val(), (c.hi() - &vq).abs_val());
            if e > err {
                err = e;
            }
            values.push(v);
        }
        // one extra relative ulp covers the conversion of the bound itself
        let error = to_f64(&err) * (1.0 + 1e-12) + f64::MIN_POSITIVE;
        CosTable { values, error }
    })
}

trait AbsVal {
    fn abs_val(self) -> Self;
}

impl AbsVal for ExactRational {
    fn abs_val(self) -> Self {
        num_traits::Signed::abs(&self)
    }
}

/// cos(π r / (2 GRID)) for any r.
#[inline]
fn table_cos(t: &CosTable, r: usize) -> f64 {
    let r = r % (4 * GRID);
    let (q, rr) = (r / GRID, r % GRID);
    match q {
        0 => t.values[rr],
        1 => -t.values[GRID - rr],
        2 => -t.values[rr],
        _ => t.values[GRID - rr],
    }
}

/// Evaluates Σ a_m cos(m θ_i) with θ_i = π i / (2 GRID).
#[inline]
fn eval_at(t: &CosTable, a: &[f64], i: usize) -> f64 {
    let period = 4 * GRID;
    let step = i % period;
    let mut idx = 0usize;
    let mut s = 0.0;
    for &c in a {
        s += c * table_cos(t, idx);
        idx += step;
        if idx >= period {
            idx -= period;
        }
    }
    s
}

/// Which quantity is maximized: |f|, f, or -f.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Abs,
    Value,
    Negated,
}

struct Search<'a> {
    t: &'static CosTable,
    a: &'a [f64],
    target: Target,
    /// index range of grid angles whose cosine may lie in the domain
    i_lo: usize,
    i_hi: usize,
    x_range: (f64, f64),
}

impl Search<'_> {
    fn value(&self, i: usize) -> f64 {
        let f = eval_at(self.t, self.a, i);
        match self.target {
            Target::Abs => f.abs(),
            Target::Value => f,
            Target::Negated => -f,
        }
    }

    /// Is grid point i certainly inside the domain?
    fn inside(&self, i: usize) -> bool {
        let x = self.t.values[i];
        let e = self.t.error;
        x - e >= self.x_range.0 && x + e <= self.x_range.1
    }
}

/// Certified enclosure of max over the domain of |f|, f or -f for a cosine series.
pub fn certified_max_of(series: &CosineSeries, target: Target, domain: (&ExactRational, &ExactRational)) -> CertifiedExtremum {
    let (x0, x1) = domain;
    assert!(x0 <= x1, "domain must be ordered");
    assert!(*x0 >= ExactRational::zero() && *x1 <= ExactRational::one(), "domain must lie in [0, 1]");
    let kind = if target == Target::Negated { ExtremumKind::Min } else { ExtremumKind::Max };
    let lipschitz = series.weighted_abs_sum(1);
    let curvature = series.weighted_abs_sum(2);
    let abs_sum = series.weighted_abs_sum(0);
    let prec = 128;
    let finish = |lo: ExactRational, hi: ExactRational, step: ExactRational, location: f64| {
        let (lo, hi) = if kind == ExtremumKind::Min { (-hi, -lo) } else { (lo, hi) };
        CertifiedExtremum {
            kind,
            domain: (x0.clone(), x1.clone()),
            value_enclosure: Interval::from_bounds(&lo, &hi, prec),
            grid_step: step,
            lipschitz_bound: lipschitz.clone(),
            curvature_bound: curvature.clone(),
            location,
        }
    };
    if series.order() == 0 {
        let c = series.coeffs().first().cloned().unwrap_or_else(ExactRational::zero);
        let v = match target {
            Target::Abs => num_traits::Signed::abs(&c),
            Target::Value => c,
            Target::Negated => -c,
        };
        return finish(v.clone(), v, ExactRational::zero(), to_f64(x1));
    }

    let t = table();
    let a = series.to_f64();
    let m = a.len() as f64;
    let u = f64::EPSILON / 2.0;
    // float error of one evaluation, as a rational
    let eval_err = from_f64((2.0 * (m + 4.0) * u * 1.01 + t.error) * to_f64(&abs_sum) * 1.01);

    // grid angle range covering the domain: θ ∈ [acos x1, acos x0]
    let th_lo = to_f64(x1).clamp(0.0, 1.0).acos();
    let th_hi = to_f64(x0).clamp(0.0, 1.0).acos();
    let scale = GRID as f64 / std::f64::consts::FRAC_PI_2;
    let i_lo = ((th_lo * scale).floor() as usize).saturating_sub(1);
    let i_hi = std::cmp::min(GRID, (th_hi * scale).ceil() as usize + 1);
    let s = Search { t, a: &a, target, i_lo, i_hi, x_range: (to_f64(x0), to_f64(x1)) };

    let h = rat(FINEST_STEP.0, FINEST_STEP.1);
    let cell_slack = |stride: usize| -> ExactRational {
        let hs = &h * ExactRational::from_integer(stride.into());
        let second = &curvature * &hs * &hs / ExactRational::from_integer(8.into());
        let first = &lipschitz * &hs / ExactRational::from_integer(2.into());
        std::cmp::min(second, first) + &eval_err
    };
    let slack_f: Vec<(usize, f64, ExactRational)> = (0..=COARSE_STRIDE.trailing_zeros())
        .map(|b| {
            let st = 1usize << b;
            let q = cell_slack(st);
            (st, to_f64(&q), q)
        })
        .collect();
    let slack_of = |stride: usize| &slack_f[stride.trailing_zeros() as usize];

    let mut best = f64::NEG_INFINITY;
    let mut best_i = s.i_lo;
    let consider = |i: usize, v: f64, best: &mut f64, best_i: &mut usize| {
        if v > *best && s.inside(i) {
            *best = v;
            *best_i = i;
        }
    };

    // coarse cells aligned to the stride; the first and last may be clipped
    let mut stack: Vec<(usize, usize, f64, f64)> = Vec::new();
    let mut i = s.i_lo;
    let mut vi = s.value(i);
    consider(i, vi, &mut best, &mut best_i);
    while i < s.i_hi {
        let j = std::cmp::min((i / COARSE_STRIDE + 1) * COARSE_STRIDE, s.i_hi);
        let vj = s.value(j);
        consider(j, vj, &mut best, &mut best_i);
        stack.push((i, j - i, vi, vj));
        i = j;
        vi = vj;
    }
    stack.reverse();
    // per-stride maximum over finalized cells of the larger endpoint value
    let mut final_max: Vec<f64> = vec![f64::NEG_INFINITY; slack_f.len()];
    let tol = 1e-9;
    while let Some((i, len, vi, vj)) = stack.pop() {
        let top = vi.max(vj);
        let stride = len.next_power_of_two();
        let (_, sl, _) = slack_of(stride);
        if len > 1 && top + sl > best + tol {
            let mid = i + len / 2;
            let vm = s.value(mid);
            consider(mid, vm, &mut best, &mut best_i);
            stack.push((mid, len - len / 2, vm, vj));
            stack.push((i, len / 2, vi, vm));
        } else {
            let slot = stride.trailing_zeros() as usize;
            if top > final_max[slot] {
                final_max[slot] = top;
            }
        }
    }
    let mut hi: Option<ExactRational> = None;
    for (slot, &fm) in final_max.iter().enumerate() {
        if fm == f64::NEG_INFINITY {
            continue;
        }
        let v = from_f64(fm) + &slack_f[slot].2;
        hi = Some(match hi {
            Some(h0) if h0 >= v => h0,
            _ => v,
        });
    }
    let hi = hi.expect("at least one cell");
    let lo = if best.is_finite() { from_f64(best) - &eval_err } else { hi.clone() - ExactRational::one() };
    let lo = std::cmp::min(lo, hi.clone());
    finish(lo, hi, h, t.values[best_i])
}

/// max_{[x0,x1]} |F̃′_{n+1} - F̃′_n|, i.e. c_n.
pub fn certified_max_abs_difference(n: usize, domain: (&ExactRational, &ExactRational)) -> CertifiedExtremum {
    let d = CosineSeries::f_tilde_prime(n + 1).sub(&CosineSeries::f_tilde_prime(n));
    certified_max_of(&d, Target::Abs, domain)
}

/// min_{[x0,x1]} F̃′_k.
pub fn certified_min(k: usize, domain: (&ExactRational, &ExactRational)) -> CertifiedExtremum {
    certified_max_of(&CosineSeries::f_tilde_prime(k), Target::Negated, domain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::parse_rational;

    fn unit() -> (ExactRational, ExactRational) {
        (ExactRational::zero(), ExactRational::one())
    }

    #[test]
    fn table_is_accurate() {
        let t = table();
        assert!(t.error < 2e-16);
        assert_eq!(t.values[0], 1.0);
        assert!(t.values[GRID].abs() < 1e-16);
    }

    #[test]
    fn c6_matches_dense_grid() {
        // dense-grid brute force (2·10^5 angles) gives c_6 = 0.1112502598
        let (a, b) = unit();
        let e = certified_max_abs_difference(6, (&a, &b));
        let oracle = parse_rational("0.1112502598").unwrap();
        assert!(e.value_enclosure.lo() <= &oracle + parse_rational("1e-9").unwrap());
        assert!(e.value_enclosure.hi() >= oracle);
        assert!(e.value_enclosure.width() < parse_rational("1e-3").unwrap());
        assert!(e.value_enclosure.hi() < parse_rational("0.12").unwrap());
    }

    #[test]
    fn min_f8_is_below_minus_004() {
        // F̃′_8 dips to -0.0406773 near x = 0.7374
        let (a, b) = unit();
        let e = certified_min(8, (&a, &b));
        let v = parse_rational("-0.04067732").unwrap();
        assert!(e.value_enclosure.contains(&v) || (e.value_enclosure.lo() - &v).abs_val() < parse_rational("1e-7").unwrap());
        assert!((e.location - 0.7374).abs() < 1e-3);
    }

    #[test]
    fn constant_series_is_exact() {
        let (a, b) = unit();
        let s = CosineSeries::new(vec![rat(-1, 3)]);
        let e = certified_max_of(&s, Target::Abs, (&a, &b));
        assert!(e.value_enclosure.contains(&rat(1, 3)));
        assert!(e.value_enclosure.width() < parse_rational("1e-30").unwrap());
    }

    #[test]
    fn subdomain_excludes_outside_points() {
        // F̃′_3 = (9x²-1)/8 on [0, 1/2]: max is at x = 1/2 with value 5/32, min at 0 with -1/8
        let s = CosineSeries::f_tilde_prime(3);
        let (a, b) = (ExactRational::zero(), rat(1, 2));
        let e = certified_max_of(&s, Target::Value, (&a, &b));
        assert!(e.value_enclosure.hi() >= rat(5, 32));
        assert!(e.value_enclosure.lo() <= rat(5, 32));
        assert!(e.value_enclosure.hi() < rat(5, 32) + parse_rational("1e-4").unwrap());
        let e = certified_max_of(&s, Target::Negated, (&a, &b));
        assert!(e.value_enclosure.contains(&rat(-1, 8)));
    }
}
