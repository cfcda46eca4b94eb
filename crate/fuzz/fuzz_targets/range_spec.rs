#![no_main]

use libfuzzer_sys::fuzz_target;
use qcorr_core::input::RangeSpec;

fuzz_target!(|spec: &str| {
    if let Ok(range) = spec.parse::<RangeSpec>() {
        let points = range.points();
        assert_eq!(points.len(), range.steps);
        assert_eq!(points[0], range.start);
        assert_eq!(points[range.steps - 1], range.stop);
    }
});
