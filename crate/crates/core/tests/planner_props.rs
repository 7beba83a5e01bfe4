// Copyright 2026 The klm-prep Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

use std::f64::consts::PI;

use klm_prep::planner::{klm_amplitudes, min_phase, FIDELITY_TOL};
use klm_prep::search::maximize;
use klm_prep::{
    optimal_phase, p_cphase, plan, required_ratios, simulate_plan, tau_epsilon, ComplexAmp,
    KlmSpec, Strategy,
};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

fn spec(min_n: usize, max_n: usize) -> impl proptest::strategy::Strategy<Value = KlmSpec> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), min_n + 1..=max_n + 1).prop_filter_map(
        "degenerate",
        |v| {
            let raw: Vec<ComplexAmp> = v
                .into_iter()
                .map(|(re, im)| ComplexAmp::new(re, im))
                .collect();
            KlmSpec::new(&raw).ok()
        },
    )
}

/// Spec with some amplitudes forced to zero.
fn sparse_spec() -> impl proptest::strategy::Strategy<Value = KlmSpec> {
    prop::collection::vec(
        ((-1.0..1.0f64, -1.0..1.0f64), prop::bool::weighted(0.3)),
        3..=7,
    )
    .prop_filter_map("degenerate", |v| {
        let raw: Vec<ComplexAmp> = v
            .into_iter()
            .map(|((re, im), zero)| {
                if zero {
                    ComplexAmp::new(0.0, 0.0)
                } else {
                    ComplexAmp::new(re, im)
                }
            })
            .collect();
        KlmSpec::new(&raw).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn every_strategy_prepares_the_target(s in spec(2, 8)) {
        for strategy in Strategy::ALL {
            let p = plan(&s, strategy).unwrap();
            let sim = simulate_plan(&p).unwrap();
            prop_assert!(sim.fidelity >= 1.0 - FIDELITY_TOL, "{strategy}: {}", sim.fidelity);
        }
    }

    #[test]
    fn sparse_targets_are_prepared(s in sparse_spec()) {
        for strategy in Strategy::ALL {
            let p = plan(&s, strategy).unwrap();
            let sim = simulate_plan(&p).unwrap();
            prop_assert!(sim.fidelity >= 1.0 - FIDELITY_TOL, "{strategy}: {}", sim.fidelity);
        }
    }

    #[test]
    fn phases_are_exact_after_fix(s in spec(2, 7)) {
        let p = plan(&s, Strategy::Optimal).unwrap();
        let got = klm_amplitudes(&simulate_plan(&p).unwrap().state);
        let target = s.alphas();
        // global phase from the first amplitude, which is real positive in the target
        let g = ComplexAmp::from_polar(1.0, -got[0].arg());
        for (a, t) in got.iter().zip(target) {
            prop_assert!((a * g - t).norm() < 1e-10, "{a} vs {t}");
        }
    }

    #[test]
    fn optimal_dominates_fixed_strategies(s in spec(2, 8)) {
        let opt = plan(&s, Strategy::Optimal).unwrap().report.total;
        let pi = plan(&s, Strategy::FransonPi).unwrap().report.total;
        let min = plan(&s, Strategy::MinPhase).unwrap().report.total;
        prop_assert!(opt >= pi * (1.0 - 1e-12));
        prop_assert!(opt >= min * (1.0 - 1e-12));
    }

    #[test]
    fn success_depends_only_on_ratios(s in spec(2, 7), phases in prop::collection::vec(-PI..PI, 9)) {
        let rotated: Vec<ComplexAmp> = s
            .alphas()
            .iter()
            .zip(&phases)
            .map(|(a, &ph)| a * ComplexAmp::from_polar(1.0, ph))
            .collect();
        let other = KlmSpec::new(&rotated).unwrap();
        for strategy in Strategy::ALL {
            let a = plan(&s, strategy).unwrap().report;
            let b = plan(&other, strategy).unwrap().report;
            prop_assert!((a.total - b.total).abs() <= 1e-12 * a.total);
        }
    }

    #[test]
    fn steps_reach_their_ratio(s in spec(2, 8)) {
        for strategy in Strategy::ALL {
            let p = plan(&s, strategy).unwrap();
            for step in &p.steps {
                let te = tau_epsilon(step.signal.theta(), step.signal.phi(), step.gate_phase).unwrap();
                let r = step.required_ratio;
                prop_assert!(step.gate_phase >= min_phase(r).unwrap() - 1e-12);
                prop_assert!(
                    (te.ratio() - r).abs() <= 1e-7 * r.max(1.0),
                    "{strategy}: wanted {r}, got {}", te.ratio()
                );
            }
        }
    }

    #[test]
    fn total_is_product_of_per_step_optima(s in spec(2, 8)) {
        let p = plan(&s, Strategy::Optimal).unwrap();
        let product: f64 = required_ratios(&s)
            .iter()
            .map(|&r| optimal_phase(r).unwrap().p)
            .product();
        prop_assert!((p.report.total - product).abs() <= 1e-14);
    }

    #[test]
    fn optimal_phase_matches_numeric_search(r in 0.0..5.0f64) {
        let choice = optimal_phase(r).unwrap();
        let lo = min_phase(r).unwrap();
        let (_, best) = maximize(|x| p_cphase(x).unwrap(), lo, PI, 512, 1e-12);
        prop_assert!(choice.p >= best - 1e-12, "closed {} vs search {best}", choice.p);
        prop_assert!((choice.p - p_cphase(choice.phase).unwrap()).abs() < 1e-15);
    }
}
