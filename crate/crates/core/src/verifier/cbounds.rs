//! Cached enclosures of c_k = max_{[0,1]} |F̃′_{k+1} - F̃′_k|.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::numerics::rational::ExactRational;
use crate::numerics::Interval;
use crate::orthopoly::extremum::certified_max_abs_difference;

fn cache() -> &'static Mutex<HashMap<u64, Interval>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Interval>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Certified enclosure of c_k, k ≥ 1.
pub fn c_enclosure(k: u64) -> Interval {
    if let Some(v) = cache().lock().expect("cache lock").get(&k) {
        return v.clone();
    }
    let e = certified_max_abs_difference(k as usize, (&ExactRational::zero(), &ExactRational::one()));
    let v = e.value_enclosure;
    cache().lock().expect("cache lock").entry(k).or_insert(v).clone()
}

/// Rational upper bound of c_k.
pub fn c_upper(k: u64) -> ExactRational {
    c_enclosure(k).hi()
}

/// Rational lower bound of c_k.
pub fn c_lower(k: u64) -> ExactRational {
    c_enclosure(k).lo()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::parse_rational;

    #[test]
    fn c6_cached() {
        let a = c_enclosure(6);
        let b = c_enclosure(6);
        assert_eq!(a, b);
        assert!(a.contains(&parse_rational("0.11125026").unwrap()) || a.lo() > parse_rational("0.1112").unwrap());
        assert!(c_upper(6) < parse_rational("0.12").unwrap());
    }
}
