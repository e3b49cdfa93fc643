mod common;

use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use stabgraph::io::{read_coincidence, record_from_json, record_to_json, write_xi_text, xi_to_json};
use stabgraph::*;

#[test]
fn random_codes_agree_with_oracle() {
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..40 {
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(0..n);
        let code = random_code(&mut rng, n, k);
        let rec = run_pipeline(&code, &PipelineOptions::default()).unwrap();
        let agreement = rec.agreement.as_ref().expect("small codes are cross-checked");
        assert!(
            agreement.agrees(),
            "{}: {:?}",
            code.to_text(),
            agreement.disagreements()
        );
    }
}

#[test]
fn record_survives_json() {
    let rec = run_pipeline(&catalog::steane_7_1_3(), &PipelineOptions::default()).unwrap();
    let json = record_to_json(&rec);
    let back = record_from_json(&json).unwrap();
    assert_eq!(back, rec);
    assert!(back.replay().unwrap());
    let xi = rec.coincidence().unwrap();
    assert_eq!(read_coincidence(&json).unwrap(), xi);
    assert_eq!(read_coincidence(&xi_to_json(&xi)).unwrap(), xi);
    assert_eq!(read_coincidence(&write_xi_text(&xi)).unwrap(), xi);
}

#[test]
fn catalog_codes_are_valid_and_detect() {
    for (name, code) in [
        ("gottesman", catalog::gottesman_8_3_3()),
        ("five", catalog::five_qubit()),
        ("steane", catalog::steane_7_1_3()),
    ] {
        assert!(code.validate().is_valid(), "{name}");
        let rec = run_pipeline(&code, &PipelineOptions::default()).unwrap();
        assert!(rec.detection.corrects(), "{name}");
    }
}

#[test]
fn four_two_two_detects_single_errors_only() {
    let rec = run_pipeline(
        &catalog::four_two_two(),
        &PipelineOptions {
            e: 1,
            mode: DetectionMode::Weak,
            ..PipelineOptions::default()
        },
    )
    .unwrap();
    let xi = rec.coincidence().unwrap();
    for v in 1..=4 {
        let e = ErrorConfiguration::from_labels(&[v]).unwrap();
        assert!(detect_weak(&xi, &e).unwrap(), "single error on {v}");
    }
    assert!(!rec.detection.corrects());
    assert!(rec.agreement.unwrap().agrees());
}
