#![no_main]
use libfuzzer_sys::fuzz_target;
use volcert_cli::report::parse_report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(report) = parse_report(text) {
        let emitted = report.emit();
        let again = parse_report(&emitted).expect("emitted report parses");
        assert_eq!(again, report);
        assert_eq!(again.emit(), emitted);
    }
});
