//! Certificates: a claimed range, a computed enclosure, and the verdict relating them.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::numerics::rational::{to_decimal, to_pq, ExactRational};
use crate::numerics::Interval;

/// Significant digits of the outward-rounded decimal endpoints in JSON and CSV.
pub const DECIMAL_DIGITS: u32 = 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float64,
    Interval,
    Exact,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Float64 => "float64",
            Mode::Interval => "interval",
            Mode::Exact => "exact",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    pub value: ExactRational,
    pub strict: bool,
}

/// A claimed range; a missing side is unbounded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub lo: Option<Bound>,
    pub hi: Option<Bound>,
}

impl Claim {
    pub fn at_most(q: ExactRational) -> Self {
        Claim { lo: None, hi: Some(Bound { value: q, strict: false }) }
    }
    pub fn less_than(q: ExactRational) -> Self {
        Claim { lo: None, hi: Some(Bound { value: q, strict: true }) }
    }
    pub fn at_least(q: ExactRational) -> Self {
        Claim { lo: Some(Bound { value: q, strict: false }), hi: None }
    }
    pub fn greater_than(q: ExactRational) -> Self {
        Claim { lo: Some(Bound { value: q, strict: true }), hi: None }
    }
    pub fn between(lo: ExactRational, hi: ExactRational) -> Self {
        Claim { lo: Some(Bound { value: lo, strict: false }), hi: Some(Bound { value: hi, strict: false }) }
    }
    pub fn equals(q: ExactRational) -> Self {
        Self::between(q.clone(), q)
    }
    pub fn negative() -> Self {
        Self::less_than(ExactRational::zero())
    }
    pub fn positive() -> Self {
        Self::greater_than(ExactRational::zero())
    }

    fn admits(&self, v: &ExactRational) -> bool {
        let lo_ok = self.lo.as_ref().is_none_or(|b| if b.strict { *v > b.value } else { *v >= b.value });
        let hi_ok = self.hi.as_ref().is_none_or(|b| if b.strict { *v < b.value } else { *v <= b.value });
        lo_ok && hi_ok
    }

    /// Pass if every point of [lo, hi] satisfies the claim, Fail if none does.
    pub fn judge(&self, lo: &ExactRational, hi: &ExactRational) -> Verdict {
        if self.admits(lo) && self.admits(hi) {
            return Verdict::Pass;
        }
        let below = self.lo.as_ref().is_some_and(|b| if b.strict { *hi <= b.value } else { *hi < b.value });
        let above = self.hi.as_ref().is_some_and(|b| if b.strict { *lo >= b.value } else { *lo > b.value });
        let empty = match (&self.lo, &self.hi) {
            (Some(a), Some(b)) => a.value > b.value || (a.value == b.value && (a.strict || b.strict)),
            _ => false,
        };
        if below || above || empty {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

/// Computed enclosure; `exact` is set when the value is known as a rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computed {
    pub lo: ExactRational,
    pub hi: ExactRational,
    pub exact: Option<ExactRational>,
}

impl Computed {
    pub fn exact(q: ExactRational) -> Self {
        Computed { lo: q.clone(), hi: q.clone(), exact: Some(q) }
    }
    pub fn enclosure(i: &Interval) -> Self {
        Computed { lo: i.lo(), hi: i.hi(), exact: None }
    }
    pub fn range(lo: ExactRational, hi: ExactRational) -> Self {
        Computed { lo, hi, exact: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    pub claimed: Claim,
    pub computed: Computed,
    pub verdict: Verdict,
    pub mode: Mode,
    pub precision_bits: u32,
    pub runtime_ms: u64,
    pub notes: String,
}

impl Certificate {
    /// Judges `computed` against `claimed`. Float64 results are screening only,
    /// so they are reported as Inconclusive with the would-be verdict in the notes.
    pub fn judge(
        check_id: impl Into<String>,
        params: BTreeMap<String, String>,
        claimed: Claim,
        computed: Computed,
        mode: Mode,
        precision_bits: u32,
        notes: impl Into<String>,
    ) -> Self {
        let mut notes = notes.into();
        let mut verdict = claimed.judge(&computed.lo, &computed.hi);
        if mode == Mode::Float64 {
            let screened = format!("float64 screening suggests {}", verdict.as_str());
            notes = if notes.is_empty() { screened } else { format!("{notes}; {screened}") };
            verdict = Verdict::Inconclusive;
        }
        Certificate {
            check_id: check_id.into(),
            params,
            claimed,
            computed,
            verdict,
            mode,
            precision_bits,
            runtime_ms: 0,
            notes,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Builds a parameter map from `(key, value)` pairs.
pub fn params<const N: usize>(pairs: [(&str, String); N]) -> BTreeMap<String, String> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

struct ClaimJson<'a>(&'a Claim);

impl Serialize for ClaimJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c = self.0;
        let mut st = s.serialize_struct("Claim", 4)?;
        st.serialize_field("lo", &c.lo.as_ref().map_or("-inf".to_string(), |b| to_pq(&b.value)))?;
        st.serialize_field("hi", &c.hi.as_ref().map_or("+inf".to_string(), |b| to_pq(&b.value)))?;
        st.serialize_field("lo_strict", &c.lo.as_ref().is_some_and(|b| b.strict))?;
        st.serialize_field("hi_strict", &c.hi.as_ref().is_some_and(|b| b.strict))?;
        st.end()
    }
}

struct ComputedJson<'a>(&'a Computed);

impl Serialize for ComputedJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let c = self.0;
        let mut st = s.serialize_struct("Computed", 3)?;
        st.serialize_field("lo", &to_decimal(&c.lo, DECIMAL_DIGITS, false))?;
        st.serialize_field("hi", &to_decimal(&c.hi, DECIMAL_DIGITS, true))?;
        st.serialize_field("exact", &c.exact.as_ref().map(to_pq))?;
        st.end()
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Certificate", 9)?;
        st.serialize_field("check_id", &self.check_id)?;
        st.serialize_field("params", &self.params)?;
        st.serialize_field("claimed", &ClaimJson(&self.claimed))?;
        st.serialize_field("computed", &ComputedJson(&self.computed))?;
        st.serialize_field("verdict", &self.verdict)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("precision_bits", &self.precision_bits)?;
        st.serialize_field("runtime_ms", &self.runtime_ms)?;
        st.serialize_field("notes", &self.notes)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::rational::rat;

    #[test]
    fn judging() {
        let c = Claim::less_than(rat(26, 1000));
        assert_eq!(c.judge(&rat(25, 1000), &rat(259, 10000)), Verdict::Pass);
        assert_eq!(c.judge(&rat(25, 1000), &rat(26, 1000)), Verdict::Inconclusive);
        assert_eq!(c.judge(&rat(26, 1000), &rat(27, 1000)), Verdict::Fail);
        let e = Claim::equals(rat(1, 3));
        assert_eq!(e.judge(&rat(1, 3), &rat(1, 3)), Verdict::Pass);
        assert_eq!(e.judge(&rat(1, 2), &rat(1, 2)), Verdict::Fail);
        let b = Claim::between(rat(3, 10), rat(33, 100));
        assert_eq!(b.judge(&rat(34, 100), &rat(34, 100)), Verdict::Fail);
    }

    #[test]
    fn float64_never_decides() {
        let c = Certificate::judge("x", BTreeMap::new(), Claim::positive(), Computed::exact(rat(1, 1)), Mode::Float64, 53, "");
        assert_eq!(c.verdict, Verdict::Inconclusive);
        let c = Certificate::judge("x", BTreeMap::new(), Claim::positive(), Computed::exact(rat(-1, 1)), Mode::Float64, 53, "");
        assert_eq!(c.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn json_shape() {
        let c = Certificate::judge(
            "base.beta",
            params([("alpha", "1/2".into())]),
            Claim::at_least(rat(113, 88)),
            Computed::exact(rat(113, 88)),
            Mode::Exact,
            0,
            "",
        );
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["claimed"]["lo"], "113/88");
        assert_eq!(v["claimed"]["hi"], "+inf");
        assert_eq!(v["computed"]["exact"], "113/88");
        assert_eq!(v["verdict"], "pass");
    }
}
