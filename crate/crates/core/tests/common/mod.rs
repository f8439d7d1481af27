//! Seeded random fixtures shared by the integration suites.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use svm_cosim::{TestInstance, TrainedModel};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform values in `[-bound, bound]`.
pub fn uniform_pair(seed: u64, max_sv: usize, max_fl: usize, bound: f32) -> (TrainedModel, TestInstance) {
    let mut r = rng(seed);
    let s = r.gen_range(1..=max_sv);
    let fl = r.gen_range(1..=max_fl);
    let draw = |r: &mut ChaCha8Rng| r.gen_range(-bound..=bound);
    let svs: Vec<f32> = (0..s * fl).map(|_| draw(&mut r)).collect();
    let ay: Vec<f32> = (0..s).map(|_| draw(&mut r)).collect();
    let b = draw(&mut r);
    let test: Vec<f32> = (0..fl).map(|_| draw(&mut r)).collect();
    (TrainedModel::new(s, fl, svs, ay, b).unwrap(), TestInstance::new(test).unwrap())
}

/// Mixed-magnitude values: random sign and mantissa, binary exponent in
/// `[-20, 20]`, so sums lose low bits and ordering matters.
pub fn wide_pair(seed: u64, max_sv: usize, max_fl: usize) -> (TrainedModel, TestInstance) {
    let mut r = rng(seed);
    let s = r.gen_range(1..=max_sv);
    let fl = r.gen_range(1..=max_fl);
    let draw = |r: &mut ChaCha8Rng| {
        let m: f32 = r.gen_range(1.0..2.0);
        let e: i32 = r.gen_range(-20..=20);
        let v = m * 2f32.powi(e);
        if r.gen_bool(0.5) {
            v
        } else {
            -v
        }
    };
    let svs: Vec<f32> = (0..s * fl).map(|_| draw(&mut r)).collect();
    let ay: Vec<f32> = (0..s).map(|_| draw(&mut r)).collect();
    let b = draw(&mut r);
    let test: Vec<f32> = (0..fl).map(|_| draw(&mut r)).collect();
    (TrainedModel::new(s, fl, svs, ay, b).unwrap(), TestInstance::new(test).unwrap())
}
