//! Containment cases shared by the property tests and the acceptance run.

#![allow(dead_code)]

use proptest::prelude::*;
use qcv::numerics::elementary::{cos, ln, sin, sqrt};
use qcv::numerics::rational::{int, rat};
use qcv::numerics::{ExactRational, Interval};
use qcv::orthopoly::gegenbauer::{normalized_gegenbauer, NU_5_2, NU_7_2, NU_9_2};
use qcv::orthopoly::eval_polynomial;

/// A point x and an interval [x - dl, x + dr] around it.
#[derive(Clone, Debug)]
pub struct Ball {
    pub x: ExactRational,
    pub lo: ExactRational,
    pub hi: ExactRational,
}

impl Ball {
    pub fn interval(&self, prec: u32) -> Interval {
        Interval::from_bounds(&self.lo, &self.hi, prec)
    }
}

fn small_rational(range: i64) -> impl Strategy<Value = ExactRational> {
    (-range * 1000..=range * 1000, 1i64..=50).prop_map(|(n, d)| rat(n, 1000) + rat(1, 3 * d))
}

pub fn ball(range: i64) -> impl Strategy<Value = Ball> {
    (small_rational(range), 0i64..=1000, 0i64..=1000).prop_map(|(x, a, b)| Ball {
        lo: &x - rat(a, 4096),
        hi: &x + rat(b, 4096),
        x,
    })
}

#[derive(Clone, Debug)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Div,
    Powi(u32),
    Gegenbauer { k: usize, nu: u8 },
    Sin,
    Cos,
    Sqrt,
    Ln,
}

pub fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        Just(Op::Add),
        Just(Op::Sub),
        Just(Op::Mul),
        Just(Op::Div),
        (2u32..=7).prop_map(Op::Powi),
        (0usize..=24, 0u8..=2).prop_map(|(k, nu)| Op::Gegenbauer { k, nu }),
        Just(Op::Sin),
        Just(Op::Cos),
        Just(Op::Sqrt),
        Just(Op::Ln),
    ]
}

#[derive(Clone, Debug)]
pub struct Case {
    pub a: Ball,
    pub b: Ball,
    pub op: Op,
    pub prec: u32,
}

pub fn case() -> impl Strategy<Value = Case> {
    (ball(8), ball(8), op(), prop::sample::select(vec![64u32, 128, 256])).prop_map(|(a, b, op, prec)| Case { a, b, op, prec })
}

fn abs_ball(b: &Ball, floor: ExactRational) -> Ball {
    let shift = if b.lo < floor { &floor - &b.lo } else { int(0) };
    Ball { x: &b.x + &shift, lo: &b.lo + &shift, hi: &b.hi + &shift }
}

/// Checks that the enclosure over the interval contains the exact image of the point, or for
/// transcendental functions that it meets a tight enclosure of the point image.
pub fn check_case(c: &Case) -> Result<(), String> {
    let p = c.prec;
    let (xa, xb) = (c.a.interval(p), c.b.interval(p));
    let exact = |v: &Interval, q: &ExactRational, what: &str| {
        if v.contains(q) {
            Ok(())
        } else {
            Err(format!("{what}: {q} not in {v:?}"))
        }
    };
    let meets = |v: &Interval, f: &dyn Fn(&Interval, u32) -> Interval, x: &ExactRational, what: &str| {
        let point = f(&Interval::from_rational(x, 512), 512);
        if v.intersects(&point) {
            Ok(())
        } else {
            Err(format!("{what}: {v:?} misses {point:?} at x = {x}"))
        }
    };
    match &c.op {
        Op::Add => exact(&(&xa + &xb), &(&c.a.x + &c.b.x), "add"),
        Op::Sub => exact(&(&xa - &xb), &(&c.a.x - &c.b.x), "sub"),
        Op::Mul => exact(&(&xa * &xb), &(&c.a.x * &c.b.x), "mul"),
        Op::Div => match xa.checked_div(&xb) {
            Some(v) => exact(&v, &(&c.a.x / &c.b.x), "div"),
            None if xb.contains_zero() => Ok(()),
            None => Err(format!("div refused a divisor without zero: {xb:?}")),
        },
        Op::Powi(n) => exact(&xa.powi(*n), &num_traits::Pow::pow(&c.a.x, *n as i32), "powi"),
        Op::Gegenbauer { k, nu } => {
            let nu = [NU_5_2, NU_7_2, NU_9_2][*nu as usize];
            let poly = normalized_gegenbauer(*k, nu);
            let v = eval_polynomial(&poly, &xa);
            exact(&v, &eval_polynomial(&poly, &c.a.x), "gegenbauer")
        }
        Op::Sin => {
            let v = sin(&xa, p);
            meets(&v, &|x, q| sin(x, q), &c.a.x, "sin")?;
            let one = &v.sqr() + &cos(&xa, p).sqr();
            if xa.is_point() { exact(&one, &int(1), "sin^2 + cos^2") } else { Ok(()) }
        }
        Op::Cos => meets(&cos(&xa, p), &|x, q| cos(x, q), &c.a.x, "cos"),
        Op::Sqrt => {
            let b = abs_ball(&c.a, int(0));
            let v = sqrt(&b.interval(p), p).map_err(|e| e.to_string())?;
            exact(&v.sqr(), &b.x, "sqrt^2")?;
            meets(&v, &|x, q| sqrt(x, q).expect("nonnegative"), &b.x, "sqrt")
        }
        Op::Ln => {
            let b = abs_ball(&c.a, rat(1, 64));
            let v = ln(&b.interval(p), p).map_err(|e| e.to_string())?;
            meets(&v, &|x, q| ln(x, q).expect("positive"), &b.x, "ln")
        }
    }
}
