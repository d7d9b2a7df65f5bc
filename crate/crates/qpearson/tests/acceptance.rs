//! Acceptance gate: every exit criterion runs at full depth with exact
//! (bit-level) tolerances and prints one pass/fail line. Expensive suite
//! runs are shared between criteria through `OnceLock`.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use qpearson::hahn::{self, HahnContext, HahnVerdict};
use qpearson::pearson::{self, Verdict};
use qpearson::poly::{parse_poly, Poly};
use qpearson::report::SuiteResult;
use qpearson::scalar::{Mode, QContext, Scalar};
use qpearson::structure;
use qpearson::suites::{self, results_agree};

const N: usize = 40;

fn t_half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

fn sym() -> QContext {
    QContext::symbolic()
}

fn rat() -> QContext {
    QContext::rational(t_half()).unwrap()
}

fn report(criterion: &str, pass: bool) {
    println!(
        "acceptance {criterion}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
}

fn prop41_sym() -> &'static (SuiteResult, Duration) {
    static CELL: OnceLock<(SuiteResult, Duration)> = OnceLock::new();
    CELL.get_or_init(|| {
        let start = Instant::now();
        let result = suites::run_prop41(N, &sym()).expect("prop41 symbolic");
        (result, start.elapsed())
    })
}

fn prop41_rat() -> &'static SuiteResult {
    static CELL: OnceLock<SuiteResult> = OnceLock::new();
    CELL.get_or_init(|| suites::run_prop41(N, &rat()).expect("prop41 rational"))
}

fn cor43_sym() -> &'static SuiteResult {
    static CELL: OnceLock<SuiteResult> = OnceLock::new();
    CELL.get_or_init(|| suites::run_cor43(30, &sym()).expect("cor43 symbolic"))
}

fn classical_sym() -> &'static SuiteResult {
    static CELL: OnceLock<SuiteResult> = OnceLock::new();
    CELL.get_or_init(|| suites::run_classical_reference(N, &sym()).expect("classical symbolic"))
}

#[test]
fn criterion_1_operator_identities() {
    let start = Instant::now();
    let symbolic = suites::run_lemma_ops(8, 100, 24718, &sym()).expect("lemma symbolic");
    let rational = suites::run_lemma_ops(8, 100, 24718, &rat()).expect("lemma rational");
    let elapsed = start.elapsed();
    let pass = symbolic.pass() && rational.pass() && elapsed < Duration::from_secs(120);
    report("criterion 1 (operator identity suite, 100 seeded trials)", pass);
    assert!(symbolic.pass(), "{symbolic}");
    assert!(rational.pass(), "{rational}");
    assert!(
        elapsed < Duration::from_secs(120),
        "runtime {elapsed:?} exceeds 2 minutes"
    );
}

#[test]
fn criterion_2_counterexample_reproduction() {
    let (result, elapsed) = prop41_sym();
    let pass = result.pass() && *elapsed < Duration::from_secs(300);
    report("criterion 2 (class-two counterexample, n <= 40 symbolic)", pass);
    assert!(result.pass(), "{result}");
    assert!(
        *elapsed < Duration::from_secs(300),
        "runtime {elapsed:?} exceeds 5 minutes"
    );
}

#[test]
fn criterion_3_second_order_relation() {
    let result = cor43_sym();
    report("criterion 3 (second-order relation, 6 <= n <= 30)", result.pass());
    assert!(result.pass(), "{result}");
}

#[test]
fn criterion_4_band_round_trip() {
    let ctx = sym();
    let mut pass = true;

    // classical reference, phi = 1
    {
        let fam = suites::q_hermite_family(&ctx, N + 8).unwrap();
        let u = fam.moments(N + 8).unwrap();
        let one = Poly::constant(ctx.int(1));
        let band = structure::extract_band(&fam, &one, N, &ctx).unwrap();
        let rev = structure::thm31_reverse(&band, &fam, &u, N, &ctx).unwrap();
        pass &= rev.dq_residuals.is_pass()
            && rev.sq_residuals.is_pass()
            && rev.admissibility.is_admissible();
        let fwd =
            structure::thm31_forward(&fam, &one, &rev.psi, &rev.rho, &u, 20, &ctx).unwrap();
        pass &= fwd.zeros_below.is_pass() && fwd.lowest_formula.is_pass();
        for (n, j, v) in band.entries() {
            if n <= 20 {
                pass &= fwd.band.get(&(n, j)) == Some(v);
            }
        }
        for (&(n, j), v) in &fwd.band {
            if n <= 20 {
                pass &= band.entry(n, j) == Some(v);
            }
        }
    }

    // counterexample family, phi = U_2
    {
        let fam = suites::prop41_family(&ctx, N + 8).unwrap();
        let u = fam.moments(N + 8).unwrap();
        let u2 = qpearson::awops::u2(&ctx);
        let band = structure::extract_band(&fam, &u2, N, &ctx).unwrap();
        let rev = structure::thm31_reverse(&band, &fam, &u, N, &ctx).unwrap();
        pass &= rev.dq_residuals.is_pass()
            && rev.sq_residuals.is_pass()
            && rev.admissibility.is_admissible();
        let fwd =
            structure::thm31_forward(&fam, &u2, &rev.psi, &rev.rho, &u, 20, &ctx).unwrap();
        pass &= fwd.zeros_below.is_pass() && fwd.lowest_formula.is_pass();
        for (n, j, v) in band.entries() {
            if n <= 20 {
                pass &= fwd.band.get(&(n, j)) == Some(v);
            }
        }
        for (&(n, j), v) in &fwd.band {
            if n <= 20 {
                pass &= band.entry(n, j) == Some(v);
            }
        }
    }

    report("criterion 4 (band <-> Pearson round trip)", pass);
    assert!(pass);
}

#[test]
fn criterion_5_class_pipeline() {
    // the class checks live inside the two big suites; pull them out
    let p41 = &prop41_sym().0;
    let classical = classical_sym();
    let names = [
        "class_verdict",
        "normal_equation_on_moments",
        "pipeline_pearson_on_moments",
    ];
    let mut pass = true;
    for name in names {
        pass &= p41.check(name).is_some_and(|c| c.is_pass());
        pass &= classical.check(name).is_some_and(|c| c.is_pass());
    }
    report(
        "criterion 5 (classical verdict and class-two verdict from the band pipeline)",
        pass,
    );
    assert!(pass, "prop41:\n{p41}\nclassical:\n{classical}");
}

#[test]
fn criterion_6_regularity_criterion() {
    let ctx = sym();
    // the derived pair from the classical band passes to n = 50
    let fam = suites::q_hermite_family(&ctx, 16).unwrap();
    let u = fam.moments(16).unwrap();
    let one = Poly::constant(ctx.int(1));
    let band = structure::extract_band(&fam, &one, 6, &ctx).unwrap();
    let rev = structure::thm31_reverse(&band, &fam, &u, 6, &ctx).unwrap();
    let pair = pearson::triple_to_pearson(&rev.psi, &rev.rho, &ctx).unwrap();
    let reg = pearson::regularity_thm23(&pair.phi, &pair.psi, 50, &ctx).unwrap();

    // an engineered failing pair is rejected at the predicted index
    let n0 = 7i64;
    let bad_phi = parse_poly("x^2", &ctx).unwrap();
    let d = (-&ctx.gamma_n(n0)).try_div(&ctx.alpha_n(n0)).unwrap();
    let bad_psi = Poly::monomial(d, 1);
    let bad = pearson::regularity_thm23(&bad_phi, &bad_psi, 12, &ctx).unwrap();
    let rejected = bad.failures.iter().any(|f| f.n == n0 as usize);

    let pass = reg.is_pass() && rejected;
    report("criterion 6 (regularity criterion, n <= 50)", pass);
    assert!(reg.is_pass(), "{:?}", reg.failures);
    assert!(rejected, "{:?}", bad.failures);
}

#[test]
fn criterion_7_hahn() {
    // (a) Al-Salam-Carlitz closed forms: symbolically and at three
    // rational parameter choices
    let sym_ctx = HahnContext::symbolic(Scalar::ratio(Mode::Symbolic, 1, 3).unwrap()).unwrap();
    let r = sym_ctx.int(2);
    let s = sym_ctx.ratio(-1, 2);
    let asc_sym = suites::run_hahn_asc(&r, &s, N, &sym_ctx).unwrap();
    let mut pass = asc_sym.pass();

    let rational_choices = [
        ((1i64, 3), (0i64, 1), (1i64, 1), (2i64, 1)),
        ((2, 5), (1, 2), (-1, 2), (3, 1)),
        ((3, 4), (-1, 3), (1, 3), (1, 2)),
    ];
    for (q, w, rr, ss) in rational_choices {
        let ctx = HahnContext::rational(
            BigRational::new(BigInt::from(q.0), BigInt::from(q.1)),
            BigRational::new(BigInt::from(w.0), BigInt::from(w.1)),
        )
        .unwrap();
        let rv = ctx.ratio(rr.0, rr.1);
        let sv = ctx.ratio(ss.0, ss.1);
        let out = suites::run_hahn_asc(&rv, &sv, N, &ctx).unwrap();
        pass &= out.pass();
    }

    // (b) the class-one family: structure relation, classifier branch
    // through the inequality, Pearson equation on moments (a = 2, b = 1,
    // w = 0, q = t)
    let ctx0 = HahnContext::symbolic(Scalar::int(Mode::Symbolic, 0)).unwrap();
    let a = ctx0.int(2);
    let b = ctx0.int(1);
    let class_one = suites::run_hahn_class_one(&a, &b, N, &ctx0).unwrap();
    pass &= class_one.pass();

    // (c) an Al-Salam-Carlitz family through the classifier: Classical
    pass &= asc_sym
        .check("classifier_verdict")
        .is_some_and(|c| c.is_pass());

    report("criterion 7 (Hahn operator: regularity formulas, class one, classifier)", pass);
    assert!(asc_sym.pass(), "{asc_sym}");
    assert!(class_one.pass(), "{class_one}");
    assert!(pass);
}

#[test]
fn criterion_8_cross_mode_consistency() {
    let t0 = t_half();
    let mut pass = true;

    // suite-level: symbolic and rational runs agree check-for-check
    pass &= results_agree(&prop41_sym().0, prop41_rat()).is_ok();
    let cor43_rat = suites::run_cor43(30, &rat()).unwrap();
    pass &= results_agree(cor43_sym(), &cor43_rat).is_ok();
    let classical_rat = suites::run_classical_reference(N, &rat()).unwrap();
    pass &= results_agree(classical_sym(), &classical_rat).is_ok();

    let hs = HahnContext::symbolic(Scalar::int(Mode::Symbolic, 0)).unwrap();
    let hr = HahnContext::rational(t0.clone(), BigRational::new(0.into(), 1.into())).unwrap();
    let c1_sym = suites::run_hahn_class_one(&hs.int(2), &hs.int(1), 20, &hs).unwrap();
    let c1_rat = suites::run_hahn_class_one(&hr.int(2), &hr.int(1), 20, &hr).unwrap();
    pass &= results_agree(&c1_sym, &c1_rat).is_ok();

    // value-level: golden polynomials specialize to the rational run
    let golden_sym = suites::prop41_golden(&sym());
    let golden_rat = suites::prop41_golden(&rat());
    pass &= golden_sym.q3.specialize(&t0).unwrap() == golden_rat.q3;
    pass &= golden_sym.q4.specialize(&t0).unwrap() == golden_rat.q4;
    pass &= golden_sym.r4.specialize(&t0).unwrap() == golden_rat.r4;
    pass &= golden_sym.cap_phi.specialize(&t0).unwrap() == golden_rat.cap_phi;
    pass &= golden_sym.cap_psi.specialize(&t0).unwrap() == golden_rat.cap_psi;

    // operator-level spot check: the class pipeline outputs specialize
    let ctx = sym();
    let rctx = rat();
    let fam_s = suites::prop41_family(&ctx, 16).unwrap();
    let fam_r = suites::prop41_family(&rctx, 16).unwrap();
    let u2_s = qpearson::awops::u2(&ctx);
    let u2_r = qpearson::awops::u2(&rctx);
    let band_s = structure::extract_band(&fam_s, &u2_s, 10, &ctx).unwrap();
    let band_r = structure::extract_band(&fam_r, &u2_r, 10, &rctx).unwrap();
    for (n, j, v) in band_s.entries() {
        pass &= band_r.entry(n, j) == Some(&v.specialize(&t0).unwrap());
    }

    report("criterion 8 (symbolic runs specialize to rational runs)", pass);
    assert!(pass);
}

#[test]
fn class_verdicts_pinned() {
    // redundant belt-and-braces on the two headline verdicts
    let p41 = &prop41_sym().0;
    assert!(p41.check("class_verdict").is_some_and(|c| c.is_pass()));
    let ctx = sym();
    let fam = suites::prop41_family(&ctx, 18).unwrap();
    let u = fam.moments(18).unwrap();
    let band = structure::extract_band(&fam, &qpearson::awops::u2(&ctx), 10, &ctx).unwrap();
    let out = structure::thm32_pipeline(&band, &fam, &u, 10, &ctx).unwrap();
    assert_eq!(out.class.verdict, Verdict::Semiclassical(2));
    assert_eq!(out.class.s_naive, Some(2));

    let hctx = HahnContext::symbolic(Scalar::int(Mode::Symbolic, 0)).unwrap();
    let asc = hahn::al_salam_carlitz_family(&hctx.int(2), &hctx.int(1), 14, &hctx).unwrap();
    let rep = hahn::thm65_classify(&asc, &hctx.x0(), 8, &hctx).unwrap();
    assert_eq!(rep.verdict, HahnVerdict::Classical);
}
