//! Arbitrary bytes as a scenario document. Parsing, resolution and witness
//! evaluation may fail but must not panic, and every value they return must
//! be finite.
#![no_main]

use libfuzzer_sys::fuzz_target;
use qcorr_core::evaluate::{evaluate_metrics, is_applicable, Metric};
use qcorr_core::input::InputDocument;

fuzz_target!(|data: &[u8]| {
    let Ok(doc) = InputDocument::from_slice(data) else {
        return;
    };
    let Ok(subject) = doc.resolve() else {
        return;
    };
    let metrics: Vec<Metric> = Metric::ALL.into_iter().filter(|&m| is_applicable(&subject, m)).collect();
    if let Ok(values) = evaluate_metrics(&subject, &metrics) {
        assert!(values.iter().all(|v| v.is_finite()));
    }
});
