//! Work units of each suite and how each one is run.

use super::config::{RunConfig, Suite};
use crate::verifier::base::check_base_bounds;
use crate::verifier::context::induction_indices;
use crate::verifier::fka::prop_grid_certificates;
use crate::verifier::induction::{chi_default, g_component_certificates, step_certificates};
use crate::verifier::ledger::scalar_ledger;
use crate::verifier::one_minus_x2::{first_n, grid_certificates, tail_certificates, TAIL_START};
use crate::verifier::pointwise::{
    cn_certificate, cross_check_certificate, e_term_certificates, large_k_certificates, min_certificate, point_certificate,
};
use crate::verifier::sums::{check_alpha_substitution, check_identity, check_s5_lower, check_s7_upper};
use crate::verifier::{Certificate, Mode, VerificationContext, Verdict};
use crate::orthopoly::gegenbauer::{NU_7_2, NU_9_2};

/// Last k handled by the exact-polynomial minimum.
pub const EXACT_MIN_LAST: u64 = 200;
/// Degrees checked on the asymptotic path.
pub const ASYMPTOTIC_K: [u64; 4] = [201, 500, 1000, 10000];
/// Last n of the sum-identity sweep.
pub const SUMS_LAST: u64 = 101;
/// Index of the large-n aggregates.
pub const AGGREGATE_N: u64 = 10001;
/// Last n of the induction sweep.
pub const SWEEP_LAST: u64 = 9997;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Job {
    Cn,
    ExactMin,
    LargeK,
    ETerms,
    CrossCheck,
    Point,
    OneMinusX2Grid,
    Tail,
    SumsAt,
    AlphaSubstitution,
    Base,
    Ledger { to: u64 },
    Step,
    Boundary { chi: bool },
    Components,
    PropGrid,
}

/// One schedulable piece of a suite; units sort by suite, then index, then job.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unit {
    pub suite: Suite,
    pub index: u64,
    pub job: Job,
}

impl Unit {
    fn new(suite: Suite, index: u64, job: Job) -> Self {
        Unit { suite, index, job }
    }

    /// Stable key recorded in the checkpoint.
    pub fn key(&self) -> String {
        format!("{}:{}:{:?}", self.suite, self.index, self.job)
    }
}

fn within(i: u64, r: (u64, u64)) -> bool {
    r.0 <= i && i <= r.1
}

/// Units of one concrete suite over the configured range, sorted.
pub fn units_for(suite: Suite, cfg: &RunConfig) -> Vec<Unit> {
    let r = cfg.range_for(suite);
    let mut out = Vec::new();
    let mut push = |index: u64, job: Job| out.push(Unit::new(suite, index, job));
    match suite {
        Suite::Cn => (r.0.max(6)..=r.1.min(TAIL_START - 1)).for_each(|n| push(n, Job::Cn)),
        Suite::LemmaMin => {
            (r.0.max(8)..=r.1.min(EXACT_MIN_LAST)).for_each(|k| push(k, Job::ExactMin));
            for k in ASYMPTOTIC_K.into_iter().filter(|&k| within(k, r)) {
                push(k, Job::LargeK);
            }
            if within(ASYMPTOTIC_K[0], r) {
                push(ASYMPTOTIC_K[0], Job::ETerms);
                push(ASYMPTOTIC_K[0], Job::CrossCheck);
            }
        }
        Suite::Pointwise => (r.0.max(6)..=r.1).for_each(|k| push(k, Job::Point)),
        Suite::OneMinusX2 => {
            let start = std::cmp::min(first_n(NU_7_2), first_n(NU_9_2));
            (r.0.max(start)..=r.1.min(TAIL_START - 1)).for_each(|n| push(n, Job::OneMinusX2Grid));
            if within(TAIL_START, r) {
                push(TAIL_START, Job::Tail);
            }
        }
        Suite::Sums => {
            if within(5, r) {
                push(5, Job::AlphaSubstitution);
            }
            for n in induction_indices(r.0, r.1.min(SUMS_LAST)) {
                push(n, Job::SumsAt);
            }
            if within(AGGREGATE_N, r) {
                push(AGGREGATE_N, Job::SumsAt);
            }
        }
        Suite::Ledger => {
            if within(0, r) {
                push(0, Job::Base);
            }
            push(r.0.max(65), Job::Ledger { to: r.1.min(SWEEP_LAST) });
        }
        Suite::Induction => {
            for n in induction_indices(r.0, r.1.min(SWEEP_LAST)) {
                push(n, Job::Step);
                if n == 61 || n == 65 {
                    push(n, Job::Boundary { chi: true });
                    push(n, Job::Boundary { chi: false });
                }
            }
            if within(AGGREGATE_N, r) {
                push(AGGREGATE_N, Job::Components);
            }
        }
        Suite::PropGrid => {
            for n in induction_indices(r.0.max(41), r.1) {
                push(n, Job::PropGrid);
            }
        }
        Suite::All => unreachable!("expanded into concrete suites"),
    }
    out.sort();
    out
}

/// All units of the configured suite (or of every suite under `all`).
pub fn units(cfg: &RunConfig) -> Vec<Unit> {
    let mut out: Vec<Unit> = cfg.suite.parts().into_iter().flat_map(|s| units_for(s, cfg)).collect();
    out.sort();
    out
}

fn run_at(unit: &Unit, d0: u64, mode: Mode, prec: u32) -> Vec<Certificate> {
    let i = unit.index;
    match unit.job {
        Job::Cn => vec![cn_certificate(i, mode, prec)],
        Job::ExactMin => vec![min_certificate(i, mode, prec)],
        Job::LargeK => large_k_certificates(i, mode, prec),
        Job::ETerms => e_term_certificates(mode, prec),
        Job::CrossCheck => vec![cross_check_certificate(mode, prec)],
        Job::Point => vec![point_certificate(i, mode)],
        Job::OneMinusX2Grid => grid_certificates(i, mode, prec),
        Job::Tail => tail_certificates(mode, prec),
        Job::SumsAt => {
            let mut v: Vec<Certificate> = if i <= SUMS_LAST { (1..=7).filter_map(|s| check_identity(s, i, mode)).collect() } else { Vec::new() };
            v.push(check_s5_lower(i, mode, prec));
            v.push(check_s7_upper(i, mode));
            v
        }
        Job::AlphaSubstitution => vec![check_alpha_substitution(&VerificationContext::new(5).alpha, mode)],
        Job::Base => check_base_bounds(&VerificationContext::new(5).alpha, mode),
        Job::Ledger { to } => scalar_ledger(i, to, d0, mode, prec),
        Job::Step => step_certificates(&VerificationContext::with_d0(i, d0), chi_default(i), "", mode, prec).1,
        Job::Boundary { chi } => {
            let tag = if chi { ".boundary-chi-on" } else { ".boundary-chi-off" };
            step_certificates(&VerificationContext::with_d0(i, d0), chi, tag, mode, prec)
                .1
                .into_iter()
                .filter(|c| c.check_id.ends_with(".g-lo") || c.check_id.ends_with(".g-hi"))
                .collect()
        }
        Job::Components => g_component_certificates(i, d0, mode),
        Job::PropGrid => prop_grid_certificates(i, d0, mode, prec),
    }
}

/// Runs a unit; interval work that comes back Inconclusive is retried at 256 and then 512 bits.
pub fn run_unit(unit: &Unit, cfg: &RunConfig) -> Vec<Certificate> {
    let mut certs = run_at(unit, cfg.d0, cfg.mode, cfg.precision_bits);
    if cfg.mode == Mode::Float64 {
        return certs;
    }
    for prec in [256, 512] {
        let retry = prec > cfg.precision_bits
            && certs.iter().any(|c| c.verdict == Verdict::Inconclusive && c.mode == Mode::Interval);
        if !retry {
            break;
        }
        certs = run_at(unit, cfg.d0, cfg.mode, prec);
    }
    certs
}
