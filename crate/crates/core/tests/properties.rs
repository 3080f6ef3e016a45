mod common;

use proptest::prelude::*;
use qcv::cli_report::plot::render_svg;
use qcv::numerics::elementary::sin;
use qcv::numerics::rational::{int, rat};
use qcv::numerics::{ExactRational, Interval};
use qcv::orthopoly::eval_polynomial;
use qcv::orthopoly::gegenbauer::{
    check_derivative_identity, check_ode_identity, normalized_gegenbauer, orthogonality_constant, weighted_inner_product,
    NU_5_2, NU_7_2, NU_9_2,
};
use qcv::verifier::envelope::{envelope_auto, Side};
use qcv::verifier::{Certificate, Claim, Computed, Mode, VerificationContext, Verdict};

fn rational() -> impl Strategy<Value = ExactRational> {
    (-10_000i64..=10_000, 1i64..=997).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn interval_containment(c in common::case()) {
        prop_assert!(common::check_case(&c).is_ok(), "{:?}", common::check_case(&c));
    }
}

proptest! {
    #[test]
    fn rational_arithmetic_is_exact(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if b != int(0) {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn doubling_precision_never_widens(a in common::ball(4), b in common::ball(4), k in 0usize..=20, p in prop::sample::select(vec![64u32, 128, 256])) {
        let poly = normalized_gegenbauer(k, NU_7_2);
        let at = |prec: u32| {
            let (x, y) = (a.interval(prec), b.interval(prec));
            [&x * &y, &x + &y, eval_polynomial(&poly, &x), sin(&x, prec)]
        };
        for (coarse, fine) in at(p).iter().zip(at(2 * p).iter()) {
            prop_assert!(fine.width() <= coarse.width(), "{:?} wider than {:?}", fine, coarse);
        }
    }

    #[test]
    fn pass_implies_strict_claim(lo in rational(), w in 0i64..=50, bound in rational(), strict: bool, upper: bool) {
        let hi = &lo + rat(w, 7);
        let claim = match (upper, strict) {
            (true, true) => Claim::less_than(bound.clone()),
            (true, false) => Claim::at_most(bound.clone()),
            (false, true) => Claim::greater_than(bound.clone()),
            (false, false) => Claim::at_least(bound.clone()),
        };
        for mode in [Mode::Float64, Mode::Interval, Mode::Exact] {
            let c = Certificate::judge("p", Default::default(), claim.clone(), Computed::range(lo.clone(), hi.clone()), mode, 128, "");
            if mode == Mode::Float64 {
                prop_assert_ne!(c.verdict, Verdict::Pass);
            }
            if c.verdict == Verdict::Pass {
                let ok = match (upper, strict) {
                    (true, true) => hi < bound,
                    (true, false) => hi <= bound,
                    (false, true) => lo > bound,
                    (false, false) => lo >= bound,
                };
                prop_assert!(ok);
            }
        }
    }

    #[test]
    fn envelopes_are_nonnegative(n in (10u64..=2500).prop_map(|i| 4 * i + 1), k in 2u64..=40, m in 0i64..=1000, chi: bool) {
        let ctx = VerificationContext::new(n);
        let mass = &ctx.a_range.1 * rat(m, 1000);
        for side in [Side::Plus, Side::Minus] {
            if let Ok(v) = envelope_auto(&ctx, side, &mass, k, chi) {
                prop_assert!(v >= int(0), "{:?} {}", side, v);
            }
        }
    }

    #[test]
    fn svg_has_one_marker_per_point(pts in prop::collection::vec((-1e6f64..1e6, -1e3f64..1e3), 1..60)) {
        let svg = render_svg(&pts, "x", "y").unwrap();
        prop_assert_eq!(svg.matches("<circle").count(), pts.len());
        prop_assert!(svg.starts_with("<svg") && svg.contains(r#"viewBox="0 0 960 540""#));
        prop_assert!(!svg.contains("script"));
    }
}

#[test]
fn exact_identities_up_to_60() {
    for nu in [NU_5_2, NU_7_2, NU_9_2] {
        for k in 0..=60 {
            assert!(check_ode_identity(k, nu), "ODE identity k = {k}, nu = {nu:?}");
            assert!(check_derivative_identity(k, nu), "derivative identity k = {k}, nu = {nu:?}");
            let p = normalized_gegenbauer(k, nu);
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            assert_eq!(p.reflect(), p.scale(&sign), "parity k = {k}");
        }
    }
}

#[test]
fn orthogonality_up_to_30() {
    for k in 0..=30 {
        for l in 0..=30 {
            let v = weighted_inner_product(k, l);
            let want = if k == l { orthogonality_constant(k as u64) } else { int(0) };
            assert_eq!(v, want, "({k}, {l})");
        }
    }
    assert_eq!(orthogonality_constant(0), rat(128, 5 * 4 * 6));
}

#[test]
fn bounded_by_one_on_a_grid() {
    for nu in [NU_5_2, NU_7_2, NU_9_2] {
        for k in [1usize, 2, 7, 20, 33, 60] {
            let p = normalized_gegenbauer(k, nu);
            for i in -1000i64..=1000 {
                let x = Interval::from_rational(&rat(i, 1000), 128);
                let v = eval_polynomial(&p, &x);
                assert!(v.abs().lo() <= int(1), "k = {k}, x = {i}/1000");
            }
        }
    }
}
