//! The three number backends behind one small trait.

use num_traits::Zero;

use super::interval::Interval;
use super::rational::{to_f64, ExactRational};

/// Ring operations plus a way to lift rational constants next to an existing value.
pub trait Scalar: Clone {
    fn lift(q: &ExactRational, like: &Self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
}

impl Scalar for ExactRational {
    fn lift(q: &ExactRational, _: &Self) -> Self {
        q.clone()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Scalar for Interval {
    fn lift(q: &ExactRational, like: &Self) -> Self {
        if q.is_zero() {
            Interval::zero(like.prec())
        } else {
            Interval::from_rational(q, like.prec())
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}

impl Scalar for f64 {
    fn lift(q: &ExactRational, _: &Self) -> Self {
        to_f64(q)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
}
