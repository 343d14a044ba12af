use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};
use singspec::asymp::predict_coeff_decay;
use singspec::descr::{format, parse, DescrSite, Descriptor, Factor, Smooth};
use singspec::expand::Basis;
use singspec::specfun::JacobiParams;

fn site() -> impl Strategy<Value = DescrSite> {
    prop_oneof![
        Just(DescrSite::Right),
        Just(DescrSite::Left),
        (-0.99f64..0.99).prop_map(DescrSite::Interior),
    ]
}

fn factor() -> impl Strategy<Value = Factor> {
    prop_oneof![
        (site(), -0.45f64..4.0).prop_map(|(site, exponent)| Factor::Alg { site, exponent }),
        (site(), 1u32..4).prop_map(|(site, power)| Factor::Log { site, power }),
        (1u32..4).prop_map(|power| Factor::LogOneMinusX2 { power }),
        Just(Factor::Smooth(Smooth::Sin)),
        Just(Factor::Smooth(Smooth::Cos)),
        Just(Factor::Smooth(Smooth::Exp)),
        proptest::collection::vec(-1e3f64..1e3, 1..6).prop_map(|c| Factor::Smooth(Smooth::Poly(c))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn format_then_parse_is_identity(ast in proptest::collection::vec(factor(), 1..7)) {
        let text = format(&ast);
        let d = Descriptor::parse(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(&d.ast, &ast);
        prop_assert_eq!(d.to_string(), text);
    }

    #[test]
    fn arbitrary_text_never_panics(src in "[-+*^|()a-z0-9., ]{0,40}") {
        if let Err(e) = parse(&src) {
            prop_assert!(e.offset <= src.len());
        }
    }

    #[test]
    fn mangled_descriptors_report_offsets(ast in proptest::collection::vec(factor(), 1..4), cut in 0usize..60) {
        let text = format(&ast);
        let cut = cut.min(text.len());
        if let Err(e) = parse(&text[..cut]) {
            prop_assert!(e.offset <= cut);
        }
    }
}

fn check_against(src: &str, g: impl Fn(f64) -> f64) {
    let f = parse(src).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let x: f64 = rng.gen_range(-0.999..0.999);
        let (a, b) = (f.eval(x), g(x));
        assert!((a - b).abs() <= 1e-14 * b.abs(), "{src} at {x}: {a} vs {b}");
    }
}

#[test]
fn evaluation_matches_closures() {
    check_against("(1-x)^0.5*log(1-x)", |x| (1.0 - x).sqrt() * (1.0 - x).ln());
    check_against("|x-0.5|^3*log|x-0.5|*cos(x)", |x| (x - 0.5).abs().powi(3) * (x - 0.5).abs().ln() * x.cos());
    check_against("(1-x)^0.3*(1+x)^0.7*log^2(1-x^2)*sin(x)", |x| {
        (1.0 - x).powf(0.3) * (1.0 + x).powf(0.7) * (-x * x).ln_1p().powi(2) * x.sin()
    });
    check_against("poly(1,-2,0.5)*exp(x)*(1+x)^1.25", |x| (1.0 - 2.0 * x + 0.5 * x * x) * x.exp() * (1.0 + x).powf(1.25));
    check_against("log^2(1-x)*(1-x)^1.6", |x| (1.0 - x).powf(1.6) * (1.0 - x).ln().powi(2));
}

#[test]
fn log_one_minus_x_squared_has_consistent_forms() {
    // product form for evaluation
    let f = parse("log^2(1-x^2)").unwrap();
    let g = parse("log(1-x)*log(1+x)").unwrap();
    for x in [-0.9f64, -0.3, 0.2, 0.75] {
        let sum = (-x * x).ln_1p();
        assert!((f.eval(x) - sum * sum).abs() < 1e-14 * (sum * sum));
        assert!((g.eval(x) - (1.0 - x).ln() * (1.0 + x).ln()).abs() < 1e-14);
    }
    // per-site logs for prediction
    let a = parse("(1-x)^0.3*(1+x)^0.7*log^2(1-x^2)*sin(x)").unwrap();
    let b = parse("(1-x)^0.3*log^2(1-x)*(1+x)^0.7*log^2(1+x)*sin(x)").unwrap();
    for basis in [Basis::Chebyshev, Basis::Legendre, Basis::Jacobi(JacobiParams::new(1.0, 2.0).unwrap())] {
        let (pa, pb) = (predict_coeff_decay(&a, &basis).unwrap(), predict_coeff_decay(&b, &basis).unwrap());
        assert_eq!((pa.exponent, pa.log_power), (pb.exponent, pb.log_power));
    }
}
