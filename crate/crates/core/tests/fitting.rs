use proptest::prelude::*;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use probphrase::experiment::pair_universe;
use probphrase::fitting::{best_split, ols_fit, per_phrase_regression, split_errors};
use probphrase::{
    fit_selection_function, generate_tasks, simulate_responses, table1_function, Boundary,
    Classifier, Direction, Error, HypothesisModel, HypothesisName, NoiseModel, Phrase,
    PhraseClassifier, ResponseDataset, ResponseRecord, UpdatePair,
};

fn agreement(a: &Classifier, b: &Classifier, pairs: &[UpdatePair]) -> f64 {
    let same = pairs
        .iter()
        .filter(|p| a.classify(**p).unwrap() == b.classify(**p).unwrap())
        .count();
    same as f64 / pairs.len() as f64
}

fn planted(truth: &Classifier, subjects: usize, noise: NoiseModel, seed: u64) -> ResponseDataset {
    let sheets = generate_tasks(subjects, 40, seed).unwrap();
    simulate_responses(&sheets, truth, noise, seed).unwrap()
}

#[test]
fn recovers_unit_slope_lines() {
    let h2 = HypothesisModel::default_for(HypothesisName::H2);
    let data = planted(&h2.into(), 20, NoiseModel::None, 0);
    assert_eq!(data.len(), 800);
    let fit = fit_selection_function(&data, 20).unwrap();
    for b in Boundary::ALL {
        let line = fit.fitted.line(b);
        let target = h2.thresholds().threshold(b);
        assert!(
            (line.slope - 1.0).abs() <= 0.05,
            "{b}: slope {}",
            line.slope
        );
        assert!(
            (line.intercept - target).abs() <= 2.0,
            "{b}: intercept {} vs {target}",
            line.intercept
        );
    }
    assert!(fit.overall_accuracy() >= 0.98, "{}", fit.overall_accuracy());
}

#[test]
fn recovers_from_score_noise() {
    let h2: Classifier = HypothesisModel::default_for(HypothesisName::H2).into();
    let data = planted(&h2, 20, NoiseModel::ScoreGaussian { sigma: 5.0 }, 11);
    let fit = fit_selection_function(&data, 20).unwrap();
    let rate = agreement(&fit.fitted.into(), &h2, &pair_universe());
    assert!(rate >= 0.85, "agreement {rate}");
}

#[test]
fn fitting_is_deterministic() {
    let t1: Classifier = table1_function().into();
    let data = planted(&t1, 20, NoiseModel::AdjacentFlip { epsilon: 0.1 }, 5);
    assert_eq!(
        fit_selection_function(&data, 20).unwrap(),
        fit_selection_function(&data, 20).unwrap()
    );
    assert_eq!(
        data,
        planted(&t1, 20, NoiseModel::AdjacentFlip { epsilon: 0.1 }, 5)
    );
}

#[test]
fn two_bands_still_fit() {
    let data = planted(&table1_function().into(), 20, NoiseModel::None, 2);
    let fit = fit_selection_function(&data, 2).unwrap();
    for b in &fit.boundaries {
        assert_eq!(b.points.len(), 2, "{}", b.boundary);
    }
}

#[test]
fn missing_phrase_names_the_boundary() {
    let data = planted(&table1_function().into(), 20, NoiseModel::None, 3);
    let trimmed: ResponseDataset = data
        .iter()
        .filter(|r| r.phrase() != Phrase::GreatDealMore)
        .cloned()
        .collect();
    match fit_selection_function(&trimmed, 20) {
        Err(Error::Underdetermined { boundary, .. }) => {
            assert_eq!(boundary, Boundary::new(Direction::More, 3));
            assert_eq!(boundary.label(), "quite_a_bit_more/great_deal_more");
        }
        other => panic!("expected an underdetermined boundary, got {other:?}"),
    }
}

#[test]
fn every_phrase_appears_with_25_subjects() {
    let t1: Classifier = table1_function().into();
    for seed in 0..5 {
        let data = planted(&t1, 25, NoiseModel::None, seed);
        for p in Phrase::RESPONSES {
            assert!(data.count(p) > 0, "seed {seed}: no {p}");
        }
    }
}

#[test]
fn noise_never_flips_direction() {
    let t1: Classifier = table1_function().into();
    for noise in [
        NoiseModel::AdjacentFlip { epsilon: 1.0 },
        NoiseModel::AdjacentFlip { epsilon: 0.5 },
    ] {
        let data = planted(&t1, 10, noise, 9);
        for r in data.iter() {
            assert_eq!(r.phrase().direction(), r.pair().direction());
        }
    }
}

#[test]
fn fit_beats_chance_on_fresh_sample_under_flip_noise() {
    let t1: Classifier = table1_function().into();
    let data = planted(&t1, 20, NoiseModel::AdjacentFlip { epsilon: 0.15 }, 21);
    let fit: Classifier = fit_selection_function(&data, 20).unwrap().fitted.into();
    let grid = pair_universe();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let fresh: Vec<UpdatePair> = sample(&mut rng, grid.len(), 2000)
        .into_iter()
        .map(|i| grid[i])
        .collect();
    assert!(agreement(&fit, &t1, &fresh) >= 0.85);
}

#[test]
fn quadratic_term_tracks_curvature() {
    let linear: ResponseDataset = (0..30)
        .map(|i| {
            let p1 = 2.0 + 2.5 * i as f64;
            ResponseRecord::new(
                "s",
                UpdatePair::new(p1, (p1 + 18.0).min(100.0)).unwrap(),
                Phrase::QuiteABitMore,
            )
            .unwrap()
        })
        .filter(|r| r.pair().p2() < 100.0)
        .collect();
    let regs = per_phrase_regression(&linear);
    assert!(regs.significant_quadratic().is_empty());
    let (_, r) = &regs.fitted[0];
    assert!(r.quadratic().unwrap().abs() < 1e-9);

    let h3 = HypothesisModel::default_for(HypothesisName::H3);
    let curved: ResponseDataset = (5..=95)
        .map(|p1| {
            let p1 = p1 as f64;
            let odds = 5.0 * p1 / (100.0 - p1);
            let p2 = 100.0 * odds / (1.0 + odds);
            ResponseRecord::new("s", UpdatePair::new(p1, p2).unwrap(), Phrase::QuiteABitMore)
                .unwrap()
        })
        .collect();
    assert_eq!(h3.thresholds().more()[1], 5.0);
    assert_eq!(
        per_phrase_regression(&curved).significant_quadratic(),
        vec![Phrase::QuiteABitMore]
    );

    let few: ResponseDataset = (0..3)
        .map(|i| {
            ResponseRecord::new(
                "s",
                UpdatePair::new(10.0 + i as f64, 50.0).unwrap(),
                Phrase::GreatDealMore,
            )
            .unwrap()
        })
        .collect();
    let regs = per_phrase_regression(&few);
    assert!(regs.fitted.is_empty());
    assert!(regs.skipped.contains(&(Phrase::GreatDealMore, 3)));
}

fn brute_force(points: &[(f64, bool)]) -> usize {
    let mut values: Vec<f64> = points.iter().map(|p| p.0).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    if values.len() == 1 {
        return split_errors(points, values[0]);
    }
    values
        .windows(2)
        .map(|w| {
            let at = (w[0] + w[1]) / 2.0;
            points
                .iter()
                .filter(|(u, outer)| (*outer && *u < at) || (!*outer && *u >= at))
                .count()
        })
        .min()
        .unwrap()
}

proptest! {
    #[test]
    fn split_matches_brute_force(points in proptest::collection::vec((0u8..15, any::<bool>()), 1..12)) {
        let points: Vec<(f64, bool)> = points.into_iter().map(|(u, o)| (f64::from(u), o)).collect();
        let split = best_split(&points).unwrap();
        prop_assert_eq!(split.misclassified, brute_force(&points));
        prop_assert_eq!(split_errors(&points, split.at), split.misclassified);
    }

    #[test]
    fn residuals_are_orthogonal_to_design(
        xs in proptest::collection::vec(0.0..100.0f64, 5..40),
        noise in proptest::collection::vec(-5.0..5.0f64, 40),
        degree in 1usize..=2,
    ) {
        let ys: Vec<f64> = xs.iter().zip(&noise).map(|(x, e)| 3.0 + 0.7 * x - 0.002 * x * x + e).collect();
        let r = ols_fit(&xs, &ys, degree).unwrap();
        for power in 0..=degree as i32 {
            let dot: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - r.predict(*x)) * x.powi(power)).sum();
            let scale: f64 = xs.iter().map(|x| x.powi(power).abs()).sum::<f64>().max(1.0);
            prop_assert!(dot.abs() / scale <= 1e-6, "power {}: {}", power, dot);
        }
    }
}
