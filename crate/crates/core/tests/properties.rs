mod common;

use proptest::prelude::*;
use svm_cosim::accel::{decide, run_accelerator, Label};
use svm_cosim::host::{batch_classify, cosim, run_oracle, run_software_reference, CosimOptions};
use svm_cosim::model_io::{
    emit_stream, frame_len, load_dataset, make_synthetic, parse_native_model, parse_stream, parse_svmlight_model,
    parse_test_instance, LabeledDataset,
};
use svm_cosim::synth::{dominates, estimate, estimate_latency, explore, Regime};
use svm_cosim::{CalibrationSet, ClockPair, DirectiveConfig, TestInstance, TrainedModel};

fn model_and_test(max_sv: usize, max_fl: usize, bound: f32) -> impl Strategy<Value = (TrainedModel, TestInstance)> {
    (1..=max_sv, 1..=max_fl).prop_flat_map(move |(s, fl)| {
        (
            prop::collection::vec(-bound..=bound, s * fl),
            prop::collection::vec(-bound..=bound, s),
            -bound..=bound,
            prop::collection::vec(-bound..=bound, fl),
        )
            .prop_map(move |(svs, ay, b, test)| {
                (TrainedModel::new(s, fl, svs, ay, b).unwrap(), TestInstance::new(test).unwrap())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn stream_round_trip_is_bit_exact((m, t) in model_and_test(40, 30, 1e6)) {
        let frame = emit_stream(&m, &t).unwrap();
        prop_assert_eq!(frame.len(), frame_len(m.sv_count(), m.feature_count()));
        let (payload, test) = parse_stream(&frame, m.sv_count(), m.feature_count()).unwrap();
        let bits = |v: &[f32]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&payload.support_vectors), bits(m.support_vectors()));
        prop_assert_eq!(bits(&payload.alpha_y), bits(m.alpha_y()));
        prop_assert_eq!(payload.bias.to_bits(), m.bias().to_bits());
        prop_assert_eq!(bits(&test), bits(t.features()));
    }

    #[test]
    fn hardware_and_software_paths_agree((m, t) in model_and_test(60, 40, 100.0), th in -10.0f32..10.0) {
        let sw = run_software_reference(&m, &t, th).unwrap();
        let frame = emit_stream(&m, &t).unwrap();
        let hw = run_accelerator(&frame, m.sv_count(), m.feature_count(), th).unwrap();
        prop_assert!(hw.bit_identical(&sw));
    }

    #[test]
    fn label_follows_distance((m, t) in model_and_test(30, 30, 10.0), th in -50.0f32..50.0) {
        let r = run_software_reference(&m, &t, th).unwrap();
        prop_assert_eq!(r.label == Label::Positive, r.distance >= th);
        prop_assert_eq!(r.distance.to_bits(), (r.raw_distance - m.bias()).to_bits());
    }

    #[test]
    fn oracle_agrees_away_from_the_boundary((m, t) in model_and_test(50, 40, 10.0)) {
        let (oracle_label, d) = run_oracle(&m, &t, 0.0).unwrap();
        let raw = d + f64::from(m.bias());
        prop_assume!(d.abs() > 1e-3 * (1.0 + raw.abs()));
        prop_assert_eq!(run_software_reference(&m, &t, 0.0).unwrap().label, oracle_label);
    }

    #[test]
    fn oracle_label_is_scale_invariant((m, t) in model_and_test(20, 20, 10.0), c in 1e-3f32..1e3) {
        let scaled = TrainedModel::new(
            m.sv_count(),
            m.feature_count(),
            m.support_vectors().to_vec(),
            m.alpha_y().iter().map(|a| a * c).collect(),
            m.bias() * c,
        ).unwrap();
        // compare signs of the exact-in-double products so rounding of `a * c`
        // in binary32 does not enter the argument
        let (_, d) = run_oracle(&m, &t, 0.0).unwrap();
        let (_, ds) = run_oracle(&scaled, &t, 0.0).unwrap();
        let tol = 1e-5 * (d.abs() + 1.0);
        prop_assume!(d.abs() > tol);
        prop_assert_eq!(d > 0.0, ds > 0.0);
    }

    #[test]
    fn zero_model_classifies_positive((m, t) in model_and_test(20, 20, 10.0)) {
        let zero = TrainedModel::new(
            m.sv_count(), m.feature_count(), m.support_vectors().to_vec(), vec![0.0; m.sv_count()], 0.0,
        ).unwrap();
        let r = run_software_reference(&zero, &t, 0.0).unwrap();
        prop_assert_eq!(r.distance, 0.0);
        prop_assert_eq!(r.label, Label::Positive);
    }

    #[test]
    fn decide_boundary_is_inclusive(x in -1e6f32..1e6) {
        prop_assert_eq!(decide(x, x, 0.0).0, Label::Positive);
    }

    #[test]
    fn parsers_never_panic(text in "[ -~\n\t]{0,400}", fl in 1usize..8) {
        let _ = parse_svmlight_model(&text);
        let _ = parse_native_model(&text, &text);
        let _ = parse_test_instance(&text, fl);
        let _ = load_dataset(&text);
    }

    #[test]
    fn svmlight_parser_total_on_structured_noise(
        lines in prop::collection::vec("[0-9.:# e-]{0,30}", 0..20),
    ) {
        let mut text = String::from("SVM-light Version V6.02\n0 # kernel type\n");
        text.push_str(&lines.join("\n"));
        let _ = parse_svmlight_model(&text);
    }

    #[test]
    fn accuracy_is_permutation_invariant(seed in 0u64..1000, rot in 0usize..64) {
        let (m, d) = make_synthetic(5, 4, seed).unwrap();
        let mut flipped = d.clone();
        for (i, item) in flipped.instances.iter_mut().enumerate() {
            if i % 3 == 0 { item.1 = item.1.flipped(); }
        }
        let mut rotated = flipped.instances.clone();
        let n = rotated.len();
        rotated.rotate_left(rot % n);
        let a = batch_classify(&m, &flipped, 0.0).unwrap();
        let b = batch_classify(&m, &LabeledDataset { instances: rotated }, 0.0).unwrap();
        prop_assert_eq!((a.correct, a.total), (b.correct, b.total));
        prop_assert_eq!(a.accuracy_percent, 100.0 * a.correct as f64 / a.total as f64);
    }

    #[test]
    fn latency_monotone_and_interval_is_latency_plus_one(s in 1usize..2000) {
        let cal = CalibrationSet::shipped();
        for regime in cal.regimes() {
            for d in cal.directives(regime) {
                let Ok(e) = estimate_latency(&cal, s, 27, d, regime) else { continue };
                prop_assert_eq!(e.throughput_interval_cycles, e.latency_cycles + 1);
                if let Ok(next) = estimate_latency(&cal, s + 1, 27, d, regime) {
                    prop_assert!(next.latency_cycles >= e.latency_cycles, "{} not monotone at S={}", d, s);
                }
            }
        }
    }

    #[test]
    fn pareto_front_is_sound_and_complete(s in 1usize..1000) {
        let cal = CalibrationSet::shipped();
        let front = explore(&cal, s, 27, Regime::MHZ_100, None).unwrap();
        let all: Vec<_> = cal
            .directives(Regime::MHZ_100)
            .into_iter()
            .filter_map(|d| estimate(&cal, s, 27, d, Regime::MHZ_100).ok().map(|e| (d, e)))
            .collect();
        for f in &front {
            prop_assert!(!all.iter().any(|(_, e)| dominates(e, &f.estimate)));
        }
        for (d, e) in &all {
            let dominated = all.iter().any(|(_, o)| dominates(o, e));
            prop_assert_eq!(!dominated, front.iter().any(|f| f.directive == *d));
        }
        for w in front.windows(2) {
            prop_assert!(
                (w[0].estimate.latency_cycles, w[0].directive.name())
                    <= (w[1].estimate.latency_cycles, w[1].directive.name())
            );
        }
    }

    #[test]
    fn cosim_speedups_are_cycle_ratios(seed in 0u64..50, s in 2usize..400, th in -1.0f32..1.0) {
        let cal = CalibrationSet::shipped();
        let (m, d) = svm_cosim::model_io::make_synthetic_with(s, 27, seed, 1).unwrap();
        let clocks = ClockPair::new(100.0, 666.67).unwrap();
        let r = cosim(&cal, &m, &d.instances[0].0, DirectiveConfig::PIPELINE_INNER, clocks, th, CosimOptions::default())
            .unwrap();
        prop_assert!(r.results_match);
        prop_assert_eq!(r.speedup1, r.sw_cycles as f64 / r.hw_cycles as f64);
        prop_assert_eq!(r.speedup2, r.sw_cycles_optimized as f64 / r.hw_cycles as f64);
        prop_assert_eq!(r.hw_time_us, r.hw_cycles as f64 / 100.0);
    }
}

#[test]
fn accumulation_matches_double_oracle_on_well_conditioned_input() {
    use svm_cosim::accel::{accumulate_weight_vector, dot_distance};
    let mut rng = common::rng(11);
    use rand::Rng;
    for _ in 0..200 {
        // S=3, Fl=2 with positive entries: no cancellation
        let svs: Vec<f32> = (0..6).map(|_| rng.gen_range(0.1f32..=1.0)).collect();
        let ay: Vec<f32> = (0..3).map(|_| rng.gen_range(0.1f32..=1.0)).collect();
        let acc = accumulate_weight_vector(3, 2, &svs, &ay);
        for f in 0..2 {
            let exact: f64 = (0..3).map(|s| f64::from(ay[s]) * f64::from(svs[s * 2 + f])).sum();
            assert!((f64::from(acc.values()[f]) - exact).abs() <= 1e-5 * exact.abs());
        }
        let x: Vec<f32> = (0..2).map(|_| rng.gen_range(0.1f32..=1.0)).collect();
        let d = dot_distance(&acc, &x).unwrap();
        let exact: f64 = acc.values().iter().zip(&x).map(|(a, b)| f64::from(*a) * f64::from(*b)).sum();
        assert!((f64::from(d) - exact).abs() <= 1e-5 * exact.abs());
    }
}

#[test]
fn length_27_dot_product_matches_double() {
    use rand::Rng;
    use svm_cosim::accel::{accumulate_weight_vector, dot_distance};
    let mut rng = common::rng(27);
    for _ in 0..500 {
        let w: Vec<f32> = (0..27).map(|_| rng.gen_range(-1.0f32..=1.0)).collect();
        let acc = accumulate_weight_vector(1, 27, &w, &[1.0]);
        let x: Vec<f32> = (0..27).map(|_| rng.gen_range(-1.0f32..=1.0)).collect();
        let exact: f64 = w.iter().zip(&x).map(|(a, b)| f64::from(*a) * f64::from(*b)).sum();
        let magnitude: f64 = w.iter().zip(&x).map(|(a, b)| (f64::from(*a) * f64::from(*b)).abs()).sum();
        // away from cancellation
        if exact.abs() < 0.1 * magnitude {
            continue;
        }
        let d = f64::from(dot_distance(&acc, &x).unwrap());
        assert!((d - exact).abs() <= 1e-5 * exact.abs(), "{d} vs {exact}");
    }
}
