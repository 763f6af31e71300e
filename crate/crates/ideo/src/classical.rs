//! Classical baselines over dense feature vectors: a linear SVM trained
//! with Pegasos-style SGD, and Naive Bayes in multinomial and gaussian
//! flavors.
//!
//! Both models are binary: labels are 0 or 1. Sparse features are
//! densified by the caller before reaching this module.

use ndarray::{Array1, Array2, ArrayView1};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Pegasos hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmConfig {
    /// L2 regularization coefficient λ.
    pub lambda: f64,
    pub epochs: usize,
    pub seed: u64,
}

impl Default for SvmConfig {
    fn default() -> Self {
        SvmConfig {
            lambda: 1e-4,
            epochs: 50,
            seed: 42,
        }
    }
}

/// A trained linear separator: `margin(x) = w·x + b`, class 1 iff the
/// margin is ≥ 0 (ties go to the positive class).
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSvmModel {
    pub weights: Array1<f64>,
    pub bias: f64,
    pub config: SvmConfig,
}

impl LinearSvmModel {
    pub fn margin(&self, x: ArrayView1<'_, f64>) -> f64 {
        self.weights.dot(&x) + self.bias
    }

    pub fn predict(&self, x: ArrayView1<'_, f64>) -> usize {
        usize::from(self.margin(x) >= 0.0)
    }
}

fn check_training_set(features: &[Array1<f64>], labels: &[usize]) -> Result<usize> {
    if features.is_empty() {
        return Err(Error::EmptyFit);
    }
    if features.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: features.len(),
            found: labels.len(),
        });
    }
    let dim = features[0].len();
    for x in features {
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: x.len(),
            });
        }
    }
    if let Some(&bad) = labels.iter().find(|&&y| y > 1) {
        return Err(Error::InvalidConfig(format!(
            "labels must be 0 or 1, found {bad}"
        )));
    }
    if labels.iter().all(|&y| y == 0) || labels.iter().all(|&y| y == 1) {
        return Err(Error::SingleClass);
    }
    Ok(dim)
}

/// Primal SVM objective: `λ/2·‖w‖² + mean_i max(0, 1 − y_i(w·x_i + b))`
/// with y ∈ {−1, +1}. The bias is unregularized.
pub fn svm_objective(model: &LinearSvmModel, features: &[Array1<f64>], labels: &[usize]) -> f64 {
    let hinge_sum: f64 = features
        .iter()
        .zip(labels)
        .map(|(x, &label)| {
            let y = if label == 1 { 1.0 } else { -1.0 };
            (1.0 - y * model.margin(x.view())).max(0.0)
        })
        .sum();
    0.5 * model.config.lambda * model.weights.dot(&model.weights)
        + hinge_sum / features.len() as f64
}

/// Pegasos SGD: visit samples in a freshly shuffled order each epoch; at
/// global step t (1-based across epochs) use step size η = 1/(λt), shrink
/// `w ← (1 − ηλ)w`, and on a margin violation add `η·y·x` to `w` and
/// `η·y` to the unregularized bias.
pub fn train_svm(
    features: &[Array1<f64>],
    labels: &[usize],
    config: &SvmConfig,
) -> Result<LinearSvmModel> {
    let dim = check_training_set(features, labels)?;
    if !(config.lambda > 0.0 && config.lambda.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "lambda {} must be positive",
            config.lambda
        )));
    }
    let mut rng = SplitMix64::new(config.seed);
    let mut w = Array1::zeros(dim);
    let mut b = 0.0;
    let mut order: Vec<usize> = (0..features.len()).collect();
    let mut t = 0u64;
    for _ in 0..config.epochs {
        rng.shuffle(&mut order);
        for &i in &order {
            t += 1;
            let eta = 1.0 / (config.lambda * t as f64);
            let y = if labels[i] == 1 { 1.0 } else { -1.0 };
            let violated = y * (w.dot(&features[i]) + b) < 1.0;
            w *= 1.0 - eta * config.lambda;
            if violated {
                w.scaled_add(eta * y, &features[i]);
                b += eta * y;
            }
        }
    }
    Ok(LinearSvmModel {
        weights: w,
        bias: b,
        config: config.clone(),
    })
}

/// Which Naive Bayes likelihood to fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NbVariant {
    /// Count-style features (e.g. term weights); requires nonnegative
    /// values. `alpha` is the additive smoothing constant.
    Multinomial { alpha: f64 },
    /// Real-valued features; per-class normal likelihoods with a variance
    /// floor of 1e-9.
    Gaussian,
}

/// Floor applied to every gaussian variance.
pub const VARIANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum NbParams {
    /// `feature_log_prob[[c, i]] = ln P(feature i | class c)`; per class,
    /// the probabilities sum to 1.
    Multinomial {
        alpha: f64,
        feature_log_prob: Array2<f64>,
    },
    /// Per-class per-feature mean and floored population variance.
    Gaussian {
        means: Array2<f64>,
        variances: Array2<f64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayesModel {
    /// `ln(class count / N)` per class.
    pub class_log_priors: [f64; 2],
    pub params: NbParams,
}

/// Fit priors and per-class likelihoods.
///
/// Multinomial: `P(i|c) = (Σ_{x∈c} x_i + α) / (Σ_{x∈c} Σ_j x_j + α·dim)`.
/// Gaussian: per-class mean and population variance, floored.
pub fn train_nb(
    features: &[Array1<f64>],
    labels: &[usize],
    variant: NbVariant,
) -> Result<NaiveBayesModel> {
    let dim = check_training_set(features, labels)?;
    let n = features.len() as f64;
    let counts = [
        labels.iter().filter(|&&y| y == 0).count() as f64,
        labels.iter().filter(|&&y| y == 1).count() as f64,
    ];
    let class_log_priors = [(counts[0] / n).ln(), (counts[1] / n).ln()];

    let params = match variant {
        NbVariant::Multinomial { alpha } => {
            if !(alpha > 0.0 && alpha.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "alpha {alpha} must be positive"
                )));
            }
            for x in features {
                if let Some((i, &v)) = x.iter().enumerate().find(|(_, &v)| v < 0.0) {
                    return Err(Error::NegativeFeature { index: i, value: v });
                }
            }
            let mut sums = Array2::zeros((2, dim));
            for (x, &y) in features.iter().zip(labels) {
                let mut row = sums.row_mut(y);
                row += x;
            }
            let mut feature_log_prob = Array2::zeros((2, dim));
            for c in 0..2 {
                let total: f64 = sums.row(c).sum();
                let denom = total + alpha * dim as f64;
                for i in 0..dim {
                    feature_log_prob[[c, i]] = ((sums[[c, i]] + alpha) / denom).ln();
                }
            }
            NbParams::Multinomial {
                alpha,
                feature_log_prob,
            }
        }
        NbVariant::Gaussian => {
            let mut means = Array2::zeros((2, dim));
            for (x, &y) in features.iter().zip(labels) {
                let mut row = means.row_mut(y);
                row += x;
            }
            for (mut row, &count) in means.rows_mut().into_iter().zip(&counts) {
                row /= count;
            }
            let mut variances: Array2<f64> = Array2::zeros((2, dim));
            for (x, &y) in features.iter().zip(labels) {
                for i in 0..dim {
                    let d = x[i] - means[[y, i]];
                    variances[[y, i]] += d * d;
                }
            }
            for c in 0..2 {
                for i in 0..dim {
                    variances[[c, i]] = (variances[[c, i]] / counts[c]).max(VARIANCE_FLOOR);
                }
            }
            NbParams::Gaussian { means, variances }
        }
    };
    Ok(NaiveBayesModel {
        class_log_priors,
        params,
    })
}

/// Unnormalized per-class log scores: log-prior + log-likelihood.
pub fn nb_log_scores(model: &NaiveBayesModel, x: ArrayView1<'_, f64>) -> [f64; 2] {
    let mut scores = model.class_log_priors;
    match &model.params {
        NbParams::Multinomial {
            feature_log_prob, ..
        } => {
            for (c, score) in scores.iter_mut().enumerate() {
                *score += feature_log_prob.row(c).dot(&x);
            }
        }
        NbParams::Gaussian { means, variances } => {
            const LN_2PI: f64 = 1.8378770664093453;
            for (c, score) in scores.iter_mut().enumerate() {
                for i in 0..x.len() {
                    let var = variances[[c, i]];
                    let d = x[i] - means[[c, i]];
                    *score += -0.5 * (LN_2PI + var.ln()) - d * d / (2.0 * var);
                }
            }
        }
    }
    scores
}

/// Argmax of [`nb_log_scores`]; an exact tie goes to class 0.
pub fn predict_nb(model: &NaiveBayesModel, x: ArrayView1<'_, f64>) -> usize {
    let [s0, s1] = nb_log_scores(model, x);
    usize::from(s1 > s0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn features(rows: &[&[f64]]) -> Vec<Array1<f64>> {
        rows.iter().map(|r| Array1::from(r.to_vec())).collect()
    }

    #[test]
    fn svm_separates_a_trivial_problem() {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for _ in 0..10 {
            xs.push(Array1::from(vec![0.0, 0.0]));
            ys.push(0);
            xs.push(Array1::from(vec![2.0, 2.0]));
            ys.push(1);
        }
        let model = train_svm(&xs, &ys, &SvmConfig::default()).unwrap();
        let correct = xs
            .iter()
            .zip(&ys)
            .filter(|(x, &y)| model.predict(x.view()) == y)
            .count();
        assert_eq!(correct, xs.len());
    }

    #[test]
    fn heavy_regularization_shrinks_the_weights() {
        let xs = features(&[&[0.0, 0.0], &[2.0, 2.0], &[0.1, 0.0], &[1.9, 2.1]]);
        let ys = vec![0, 1, 0, 1];
        let config = SvmConfig {
            lambda: 1e6,
            ..SvmConfig::default()
        };
        let model = train_svm(&xs, &ys, &config).unwrap();
        let norm = model.weights.dot(&model.weights).sqrt();
        assert!(norm < 1e-2, "‖w‖ = {norm}");
    }

    #[test]
    fn zero_model_ties_to_class_one() {
        let model = LinearSvmModel {
            weights: Array1::zeros(2),
            bias: 0.0,
            config: SvmConfig::default(),
        };
        assert_eq!(model.predict(Array1::from(vec![5.0, -3.0]).view()), 1);
        assert_eq!(model.margin(Array1::from(vec![5.0, -3.0]).view()), 0.0);
    }

    #[test]
    fn svm_objective_descends_after_warmup() {
        // With one PRNG stream consumed epoch by epoch, training e epochs
        // reproduces the first e epochs of a longer run, so per-epoch
        // objectives can be read off retrained prefixes.
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for k in 0..12 {
            let offset = (k as f64) * 0.1;
            xs.push(Array1::from(vec![offset, offset * 0.5]));
            ys.push(0);
            xs.push(Array1::from(vec![3.0 - offset, 2.5 + offset]));
            ys.push(1);
        }
        let objectives: Vec<f64> = (1..=12)
            .map(|epochs| {
                let config = SvmConfig {
                    lambda: 1e-2,
                    epochs,
                    seed: 3,
                };
                let model = train_svm(&xs, &ys, &config).unwrap();
                svm_objective(&model, &xs, &ys)
            })
            .collect();
        for e in 6..objectives.len() {
            assert!(
                objectives[e] <= objectives[e - 1] * 1.05,
                "objective rose at epoch {}: {} → {}",
                e + 1,
                objectives[e - 1],
                objectives[e]
            );
        }
    }

    #[test]
    fn svm_is_deterministic() {
        let xs = features(&[&[0.0, 1.0], &[1.0, 0.0], &[0.2, 0.8], &[0.9, 0.1]]);
        let ys = vec![0, 1, 0, 1];
        let a = train_svm(&xs, &ys, &SvmConfig::default()).unwrap();
        let b = train_svm(&xs, &ys, &SvmConfig::default()).unwrap();
        assert_eq!(a.weights, b.weights);
        assert_eq!(a.bias, b.bias);
    }

    #[test]
    fn svm_rejects_degenerate_input() {
        let xs = features(&[&[1.0], &[2.0]]);
        assert!(matches!(
            train_svm(&xs, &[0, 0], &SvmConfig::default()),
            Err(Error::SingleClass)
        ));
        assert!(matches!(
            train_svm(&[], &[], &SvmConfig::default()),
            Err(Error::EmptyFit)
        ));
        assert!(matches!(
            train_svm(&xs, &[0], &SvmConfig::default()),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(train_svm(&xs, &[0, 2], &SvmConfig::default()).is_err());
        let bad = SvmConfig {
            lambda: 0.0,
            ..SvmConfig::default()
        };
        assert!(train_svm(&xs, &[0, 1], &bad).is_err());
    }

    #[test]
    fn multinomial_probabilities_match_hand_arithmetic() {
        // class 0 doc (2,0), class 1 doc (0,2), α = 1:
        // P(a|c0) = (2+1)/(2+2) = 0.75
        let xs = features(&[&[2.0, 0.0], &[0.0, 2.0]]);
        let ys = vec![0, 1];
        let model = train_nb(&xs, &ys, NbVariant::Multinomial { alpha: 1.0 }).unwrap();
        let NbParams::Multinomial {
            feature_log_prob, ..
        } = &model.params
        else {
            panic!("wrong variant")
        };
        assert!((feature_log_prob[[0, 0]].exp() - 0.75).abs() < 1e-12);
        assert!((feature_log_prob[[0, 1]].exp() - 0.25).abs() < 1e-12);
        // per-class probabilities sum to 1
        for c in 0..2 {
            let sum: f64 = feature_log_prob.row(c).iter().map(|l| l.exp()).sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
        // equal class counts → both log-priors ln(0.5)
        assert!((model.class_log_priors[0] - 0.5f64.ln()).abs() < 1e-15);
        assert_eq!(model.class_log_priors[0], model.class_log_priors[1]);
    }

    #[test]
    fn multinomial_prediction_hand_check() {
        // scores for x = (3,0): c0 = ln½ + 3·ln¾ ≈ −1.556,
        // c1 = ln½ + 3·ln¼ ≈ −4.852 → class 0
        let xs = features(&[&[2.0, 0.0], &[0.0, 2.0]]);
        let ys = vec![0, 1];
        let model = train_nb(&xs, &ys, NbVariant::Multinomial { alpha: 1.0 }).unwrap();
        let x = Array1::from(vec![3.0, 0.0]);
        let [s0, s1] = nb_log_scores(&model, x.view());
        assert!((s0 - (-1.556193397915288)).abs() < 1e-12);
        assert!((s1 - (-4.852030263919617)).abs() < 1e-12);
        assert_eq!(predict_nb(&model, x.view()), 0);
    }

    #[test]
    fn zero_vector_falls_back_to_priors() {
        // class 1 has two docs → larger prior wins on the zero vector
        let xs = features(&[&[2.0, 0.0], &[0.0, 2.0], &[0.0, 1.0]]);
        let ys = vec![0, 1, 1];
        let model = train_nb(&xs, &ys, NbVariant::Multinomial { alpha: 1.0 }).unwrap();
        let zero = Array1::zeros(2);
        assert_eq!(predict_nb(&model, zero.view()), 1);
    }

    #[test]
    fn exact_tie_goes_to_class_zero() {
        // symmetric data → symmetric model → the zero vector ties exactly
        let xs = features(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let ys = vec![0, 1];
        let model = train_nb(&xs, &ys, NbVariant::Multinomial { alpha: 1.0 }).unwrap();
        let zero = Array1::zeros(2);
        let [s0, s1] = nb_log_scores(&model, zero.view());
        assert_eq!(s0, s1);
        assert_eq!(predict_nb(&model, zero.view()), 0);
    }

    #[test]
    fn negative_feature_is_rejected_with_its_index() {
        let xs = features(&[&[1.0, -0.5], &[0.0, 1.0]]);
        let ys = vec![0, 1];
        match train_nb(&xs, &ys, NbVariant::Multinomial { alpha: 1.0 }) {
            Err(Error::NegativeFeature { index: 1, value }) => assert_eq!(value, -0.5),
            other => panic!("expected NegativeFeature, got {other:?}"),
        }
        // gaussian accepts negatives
        assert!(train_nb(&xs, &ys, NbVariant::Gaussian).is_ok());
    }

    #[test]
    fn gaussian_constant_feature_hits_the_floor() {
        let xs = features(&[&[1.0, 3.0], &[1.0, 5.0], &[1.0, -2.0], &[1.0, 0.0]]);
        let ys = vec![0, 0, 1, 1];
        let model = train_nb(&xs, &ys, NbVariant::Gaussian).unwrap();
        let NbParams::Gaussian { means, variances } = &model.params else {
            panic!("wrong variant")
        };
        assert_eq!(variances[[0, 0]], VARIANCE_FLOOR);
        assert_eq!(variances[[1, 0]], VARIANCE_FLOOR);
        assert_eq!(means[[0, 1]], 4.0);
        assert_eq!(variances[[0, 1]], 1.0);
        // scoring stays finite
        let [s0, s1] = nb_log_scores(&model, Array1::from(vec![1.0, 4.0]).view());
        assert!(s0.is_finite() && s1.is_finite());
        assert_eq!(predict_nb(&model, Array1::from(vec![1.0, 4.0]).view()), 0);
    }

    #[test]
    fn gaussian_separates_shifted_clusters() {
        let xs = features(&[
            &[0.0, 0.1],
            &[0.2, -0.1],
            &[-0.1, 0.0],
            &[5.0, 5.1],
            &[4.8, 4.9],
            &[5.2, 5.0],
        ]);
        let ys = vec![0, 0, 0, 1, 1, 1];
        let model = train_nb(&xs, &ys, NbVariant::Gaussian).unwrap();
        for (x, &y) in xs.iter().zip(&ys) {
            assert_eq!(predict_nb(&model, x.view()), y);
        }
    }

    #[test]
    fn equal_prior_multinomial_argmax_survives_scaling() {
        let xs = features(&[&[3.0, 1.0], &[1.0, 4.0]]);
        let ys = vec![0, 1];
        let model = train_nb(&xs, &ys, NbVariant::Multinomial { alpha: 1.0 }).unwrap();
        for point in [[2.0, 1.0], [1.0, 3.0], [4.0, 0.5]] {
            let x = Array1::from(point.to_vec());
            let base = predict_nb(&model, x.view());
            for scale in [0.5, 2.0, 10.0] {
                let scaled = x.mapv(|v| v * scale);
                assert_eq!(predict_nb(&model, scaled.view()), base);
            }
        }
    }

    #[test]
    fn nb_rejects_degenerate_input() {
        let xs = features(&[&[1.0], &[2.0]]);
        assert!(matches!(
            train_nb(&xs, &[1, 1], NbVariant::Gaussian),
            Err(Error::SingleClass)
        ));
        assert!(matches!(
            train_nb(&[], &[], NbVariant::Gaussian),
            Err(Error::EmptyFit)
        ));
        assert!(train_nb(&xs, &[0, 1], NbVariant::Multinomial { alpha: 0.0 }).is_err());
    }
}
