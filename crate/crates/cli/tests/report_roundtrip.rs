use proptest::prelude::*;

use volcert::certificate::global_minimum;
use volcert::packing::PaperConstants;
use volcert_cli::report::{parse_report, CertificationReport, CheckResult};

fn constants(scale: f64) -> PaperConstants {
    PaperConstants {
        d_inf: 0.853_276_088 * scale,
        c1: 1.931_851_652_578_137,
        c2: 0.929_781_307_593,
        k3_inf: 0.5 * 1.5f64.ln(),
        v_ideal: 1.014_941_606_409_653_6,
    }
}

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e300f64..1e300,
        -1.0f64..1.0,
        Just(0.0),
        Just(f64::INFINITY),
        Just(f64::MIN_POSITIVE),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn emit_then_parse_is_identity(
        scale in 0.99f64..1.01,
        checks in prop::collection::vec(("[a-z][a-z0-9_]{0,12}", any::<bool>(), finite(), finite()), 0..12),
    ) {
        let mut seen = std::collections::HashSet::new();
        let checks: Vec<CheckResult> = checks
            .into_iter()
            .filter(|(n, ..)| seen.insert(n.clone()))
            .map(|(n, pass, a, t)| CheckResult::new(&n, pass, a, t))
            .collect();
        let case = global_minimum(&constants(scale), 1e-3).unwrap();
        let report = CertificationReport::new(&case, checks).unwrap();
        let text = report.emit();
        let back = parse_report(&text).unwrap();
        prop_assert_eq!(&back, &report);
        prop_assert_eq!(back.emit(), text);
    }
}
