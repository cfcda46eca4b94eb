#![no_main]

use libfuzzer_sys::fuzz_target;
use qcorr_core::input::parse_metrics;

fuzz_target!(|list: &str| {
    if let Ok(metrics) = parse_metrics(list) {
        assert!(!metrics.is_empty());
        for m in metrics {
            assert_eq!(m.name().parse().ok(), Some(m));
        }
    }
});
