#![no_main]

use libfuzzer_sys::fuzz_target;
use qcorr_core::evaluate::{evaluate_metrics, is_applicable, Metric};
use qcorr_core::input::Family;

fuzz_target!(|spec: &str| {
    let Ok(family) = spec.parse::<Family>() else {
        return;
    };
    // Display must parse back to the same family.
    assert_eq!(family.to_string().parse::<Family>().ok(), Some(family));
    if let Ok(subject) = family.subject() {
        let metrics: Vec<Metric> = Metric::ALL.into_iter().filter(|&m| is_applicable(&subject, m)).collect();
        let _ = evaluate_metrics(&subject, &metrics);
    }
});
