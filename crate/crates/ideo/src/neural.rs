//! From-scratch recurrent classifiers: LSTM and GRU cells, a two-unit
//! dense softmax head, categorical cross-entropy, exact
//! backpropagation-through-time, and an RMSprop training loop.
//!
//! Inputs come in two shapes. `Sequence` runs the cell over the embedded
//! tokens of an [`IndexSequence`] (the embedding table is frozen — it
//! receives no gradient); `SingleStep` feeds one dense feature vector as a
//! length-1 sequence. Feeding an input whose shape disagrees with the
//! configuration is a programming error and panics.
//!
//! All arithmetic is `f64` so gradients can be checked tightly against
//! central finite differences.

use ndarray::{Array1, Array2};
use serde::{Deserialize, Serialize};

use crate::embedding::{EmbeddingMatrix, IndexSequence};
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// The classifiers are binary throughout.
pub const NUM_CLASSES: usize = 2;

/// Loss clamp: probabilities below this contribute `−ln(1e-12)`.
const PROB_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CellKind {
    Lstm,
    Gru,
}

impl CellKind {
    /// LSTM gates are ordered [forget, input, output, candidate];
    /// GRU gates [update, reset, candidate].
    pub fn n_gates(self) -> usize {
        match self {
            CellKind::Lstm => 4,
            CellKind::Gru => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputMode {
    /// Embedded token sequence; requires an embedding matrix whose
    /// dimensionality equals `input_dim`.
    Sequence,
    /// One dense feature vector of length `input_dim`, run as a single
    /// timestep.
    SingleStep,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RnnConfig {
    pub cell: CellKind,
    pub input_mode: InputMode,
    /// Embedding dimensionality (sequence mode) or feature-vector length
    /// (single-step mode).
    pub input_dim: usize,
    pub hidden_units: usize,
    pub lr: f64,
    pub rho: f64,
    pub epsilon: f64,
    pub batch_size: usize,
    pub epochs: usize,
    pub clip_norm: f64,
    pub seed: u64,
}

impl RnnConfig {
    pub fn defaults(
        cell: CellKind,
        input_mode: InputMode,
        input_dim: usize,
        epochs: usize,
    ) -> Self {
        RnnConfig {
            cell,
            input_mode,
            input_dim,
            hidden_units: 300,
            lr: 1e-3,
            rho: 0.9,
            epsilon: 1e-7,
            batch_size: 32,
            epochs,
            clip_norm: 5.0,
            seed: 42,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.hidden_units == 0 {
            return Err(Error::InvalidConfig("hidden_units must be ≥ 1".into()));
        }
        if self.input_dim == 0 {
            return Err(Error::InvalidConfig("input_dim must be ≥ 1".into()));
        }
        if !(self.rho > 0.0 && self.rho < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "rho {} must lie in (0, 1)",
                self.rho
            )));
        }
        // NaN must fail these checks too, so compare in the accepting
        // direction and negate.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon {} must be > 0",
                self.epsilon
            )));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.clip_norm > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "clip_norm {} must be > 0",
                self.clip_norm
            )));
        }
        if self.batch_size == 0 {
            return Err(Error::InvalidConfig("batch_size must be ≥ 1".into()));
        }
        if !(self.lr >= 0.0 && self.lr.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "lr {} must be finite and ≥ 0",
                self.lr
            )));
        }
        Ok(())
    }
}

/// One gate's parameters: input weights `w` (hidden × input), recurrent
/// weights `u` (hidden × hidden), bias `b` (hidden).
#[derive(Debug, Clone, PartialEq)]
pub struct GateParam {
    pub w: Array2<f64>,
    pub u: Array2<f64>,
    pub b: Array1<f64>,
}

/// All trainable parameters of one classifier. The same shape doubles as
/// gradient storage and RMSprop accumulator storage.
#[derive(Debug, Clone, PartialEq)]
pub struct RnnParams {
    /// Cell gates in [`CellKind`] order.
    pub gates: Vec<GateParam>,
    /// Dense head: (NUM_CLASSES × hidden) weights and per-class bias.
    pub head_w: Array2<f64>,
    pub head_b: Array1<f64>,
}

impl RnnParams {
    fn zeros_like(&self) -> RnnParams {
        RnnParams {
            gates: self
                .gates
                .iter()
                .map(|g| GateParam {
                    w: Array2::zeros(g.w.raw_dim()),
                    u: Array2::zeros(g.u.raw_dim()),
                    b: Array1::zeros(g.b.raw_dim()),
                })
                .collect(),
            head_w: Array2::zeros(self.head_w.raw_dim()),
            head_b: Array1::zeros(self.head_b.raw_dim()),
        }
    }

    /// Flat views over every parameter array, in a frozen order: per gate
    /// `w` (row-major), `u`, `b`; then `head_w`, `head_b`. Owned arrays
    /// are contiguous, so the slice views always exist.
    fn flat_views(&self) -> Vec<&[f64]> {
        let mut out = Vec::with_capacity(self.gates.len() * 3 + 2);
        for g in &self.gates {
            out.push(g.w.as_slice().expect("contiguous"));
            out.push(g.u.as_slice().expect("contiguous"));
            out.push(g.b.as_slice().expect("contiguous"));
        }
        out.push(self.head_w.as_slice().expect("contiguous"));
        out.push(self.head_b.as_slice().expect("contiguous"));
        out
    }

    fn flat_views_mut(&mut self) -> Vec<&mut [f64]> {
        let mut out = Vec::with_capacity(self.gates.len() * 3 + 2);
        for g in &mut self.gates {
            out.push(g.w.as_slice_mut().expect("contiguous"));
            out.push(g.u.as_slice_mut().expect("contiguous"));
            out.push(g.b.as_slice_mut().expect("contiguous"));
        }
        out.push(self.head_w.as_slice_mut().expect("contiguous"));
        out.push(self.head_b.as_slice_mut().expect("contiguous"));
        out
    }

    /// Total scalar parameter count.
    pub fn n_params(&self) -> usize {
        self.flat_views().iter().map(|v| v.len()).sum()
    }

    /// Read the `i`-th scalar in flat order (gradient-check support).
    pub fn get_flat(&self, mut i: usize) -> f64 {
        for view in self.flat_views() {
            if i < view.len() {
                return view[i];
            }
            i -= view.len();
        }
        panic!("flat index out of range");
    }

    /// Write the `i`-th scalar in flat order (gradient-check support).
    pub fn set_flat(&mut self, mut i: usize, value: f64) {
        for view in self.flat_views_mut() {
            if i < view.len() {
                view[i] = value;
                return;
            }
            i -= view.len();
        }
        panic!("flat index out of range");
    }
}

/// √(Σ g² ) over every array in `grads`.
pub fn global_norm(grads: &RnnParams) -> f64 {
    grads
        .flat_views()
        .iter()
        .map(|v| v.iter().map(|g| g * g).sum::<f64>())
        .sum::<f64>()
        .sqrt()
}

/// Scale all gradients so the global norm is at most `clip_norm`.
/// Returns the pre-clip norm.
pub fn clip_gradients(grads: &mut RnnParams, clip_norm: f64) -> f64 {
    let norm = global_norm(grads);
    if norm > clip_norm {
        let factor = clip_norm / norm;
        for view in grads.flat_views_mut() {
            for g in view {
                *g *= factor;
            }
        }
    }
    norm
}

/// Glorot-uniform initialization: weights uniform in ±√(6/(fan_in+fan_out)),
/// drawn row-major in gate order (`w` then `u` per gate, then the head);
/// biases zero except the LSTM forget-gate bias, which starts at 1.0.
pub fn init_params(config: &RnnConfig, rng: &mut SplitMix64) -> RnnParams {
    let h = config.hidden_units;
    let d = config.input_dim;
    let glorot = |rng: &mut SplitMix64, rows: usize, cols: usize, fan_in: usize, fan_out: usize| {
        let limit = (6.0 / (fan_in + fan_out) as f64).sqrt();
        let mut m = Array2::zeros((rows, cols));
        for r in 0..rows {
            for c in 0..cols {
                m[[r, c]] = rng.uniform(-limit, limit);
            }
        }
        m
    };
    let mut gates = Vec::with_capacity(config.cell.n_gates());
    for gate_idx in 0..config.cell.n_gates() {
        let w = glorot(rng, h, d, d, h);
        let u = glorot(rng, h, h, h, h);
        let mut b = Array1::zeros(h);
        if config.cell == CellKind::Lstm && gate_idx == 0 {
            b.fill(1.0);
        }
        gates.push(GateParam { w, u, b });
    }
    let head_w = glorot(rng, NUM_CLASSES, h, h, NUM_CLASSES);
    let head_b = Array1::zeros(NUM_CLASSES);
    RnnParams {
        gates,
        head_w,
        head_b,
    }
}

/// A classifier input: either an encoded token sequence (sequence mode)
/// or one dense feature vector (single-step mode).
#[derive(Debug, Clone, PartialEq)]
pub enum RnnInput {
    Seq(IndexSequence),
    Dense(Array1<f64>),
}

/// A labeled training example.
pub type Sample = (RnnInput, usize);

fn sigmoid(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

fn softmax(logits: &Array1<f64>) -> Array1<f64> {
    let max = logits.fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let exps = logits.mapv(|l| (l - max).exp());
    let sum = exps.sum();
    exps / sum
}

/// Categorical cross-entropy of a softmax pair against a one-hot label:
/// `−ln(max(probs[label], 1e-12))`. A NaN probability propagates (it must
/// not be masked by the clamp — the training loop aborts on it).
pub fn loss(probs: &Array1<f64>, label: usize) -> f64 {
    let p = probs[label];
    let clamped = if p < PROB_FLOOR { PROB_FLOOR } else { p };
    -clamped.ln()
}

/// Resolve the timestep inputs for one sample. Sequence mode embeds the
/// first `true_length` ids (the recurrence never sees PAD positions);
/// single-step mode yields exactly one step.
fn step_inputs(
    config: &RnnConfig,
    input: &RnnInput,
    embedding: Option<&EmbeddingMatrix>,
) -> Vec<Array1<f64>> {
    match (config.input_mode, input) {
        (InputMode::Sequence, RnnInput::Seq(seq)) => {
            let m = embedding.expect("sequence mode requires an embedding matrix");
            assert_eq!(
                m.dim(),
                config.input_dim,
                "embedding dimensionality must match the configured input_dim"
            );
            seq.ids[..seq.true_length]
                .iter()
                .map(|&id| m.row(id).to_owned())
                .collect()
        }
        (InputMode::SingleStep, RnnInput::Dense(x)) => {
            assert_eq!(
                x.len(),
                config.input_dim,
                "feature vector length must match input_dim"
            );
            vec![x.clone()]
        }
        _ => panic!("input shape does not match the configured input mode"),
    }
}

/// Everything the backward pass needs from one forward run.
struct ForwardTrace {
    /// Timestep inputs (empty for a zero-length sequence).
    xs: Vec<Array1<f64>>,
    /// Hidden states; `hs[0]` is the initial zero state, `hs[t+1]` follows
    /// step `t`.
    hs: Vec<Array1<f64>>,
    /// LSTM cell states aligned with `hs`; unused for GRU.
    cs: Vec<Array1<f64>>,
    /// Gate activations per step, in [`CellKind`] gate order
    /// (the candidate activation is the tanh one).
    gates: Vec<Vec<Array1<f64>>>,
    probs: Array1<f64>,
}

fn forward_trace(
    params: &RnnParams,
    config: &RnnConfig,
    input: &RnnInput,
    embedding: Option<&EmbeddingMatrix>,
) -> ForwardTrace {
    let xs = step_inputs(config, input, embedding);
    let h0 = Array1::zeros(config.hidden_units);
    let mut hs = vec![h0.clone()];
    let mut cs = vec![h0];
    let mut gates = Vec::with_capacity(xs.len());
    for x in &xs {
        let h_prev = hs.last().unwrap();
        match config.cell {
            CellKind::Lstm => {
                let c_prev = cs.last().unwrap();
                let pre = |g: &GateParam| g.w.dot(x) + g.u.dot(h_prev) + &g.b;
                let f = pre(&params.gates[0]).mapv(sigmoid);
                let i = pre(&params.gates[1]).mapv(sigmoid);
                let o = pre(&params.gates[2]).mapv(sigmoid);
                let g = pre(&params.gates[3]).mapv(f64::tanh);
                let c = &f * c_prev + &i * &g;
                let h = &o * &c.mapv(f64::tanh);
                hs.push(h);
                cs.push(c);
                gates.push(vec![f, i, o, g]);
            }
            CellKind::Gru => {
                let pre = |g: &GateParam, rec: &Array1<f64>| g.w.dot(x) + g.u.dot(rec) + &g.b;
                let z = pre(&params.gates[0], h_prev).mapv(sigmoid);
                let r = pre(&params.gates[1], h_prev).mapv(sigmoid);
                let g = pre(&params.gates[2], &(&r * h_prev)).mapv(f64::tanh);
                let h = (1.0 - &z) * h_prev + &z * &g;
                hs.push(h);
                cs.push(cs.last().unwrap().clone());
                gates.push(vec![z, r, g]);
            }
        }
    }
    let h_final = hs.last().unwrap();
    let logits = params.head_w.dot(h_final) + &params.head_b;
    let probs = softmax(&logits);
    ForwardTrace {
        xs,
        hs,
        cs,
        gates,
        probs,
    }
}

/// Class probabilities for one input; always sums to 1.
pub fn forward(
    params: &RnnParams,
    config: &RnnConfig,
    input: &RnnInput,
    embedding: Option<&EmbeddingMatrix>,
) -> Array1<f64> {
    forward_trace(params, config, input, embedding).probs
}

/// Predicted class and its probability; an exact tie goes to class 0.
pub fn predict(
    params: &RnnParams,
    config: &RnnConfig,
    input: &RnnInput,
    embedding: Option<&EmbeddingMatrix>,
) -> (usize, f64) {
    let probs = forward(params, config, input, embedding);
    let class = if probs[1] > probs[0] { 1 } else { 0 };
    (class, probs[class])
}

/// `m[j, :] += a[j] * b` for every `j` — the outer-product accumulation
/// used by every weight gradient.
fn add_outer(m: &mut Array2<f64>, a: &Array1<f64>, b: &Array1<f64>) {
    for (j, &aj) in a.iter().enumerate() {
        if aj != 0.0 {
            m.row_mut(j).scaled_add(aj, b);
        }
    }
}

/// Accumulate one sample's loss gradients into `grads` (summed, not yet
/// averaged). The embedding matrix is frozen: inputs receive no gradient.
fn backward_sample(
    params: &RnnParams,
    config: &RnnConfig,
    trace: &ForwardTrace,
    label: usize,
    grads: &mut RnnParams,
) {
    // Softmax + cross-entropy head: dlogits = p − onehot(label).
    let mut dlogits = trace.probs.clone();
    dlogits[label] -= 1.0;
    let h_final = trace.hs.last().unwrap();
    add_outer(&mut grads.head_w, &dlogits, h_final);
    grads.head_b += &dlogits;

    let mut dh = params.head_w.t().dot(&dlogits);
    let mut dc = Array1::zeros(config.hidden_units);
    for t in (0..trace.xs.len()).rev() {
        let x = &trace.xs[t];
        let h_prev = &trace.hs[t];
        match config.cell {
            CellKind::Lstm => {
                let [f, i, o, g] = &trace.gates[t][..] else {
                    unreachable!()
                };
                let c = &trace.cs[t + 1];
                let c_prev = &trace.cs[t];
                let tanh_c = c.mapv(f64::tanh);

                let d_o = &dh * &tanh_c;
                dc = dc + &dh * o * tanh_c.mapv(|v| 1.0 - v * v);
                let d_f = &dc * c_prev;
                let d_i = &dc * g;
                let d_g = &dc * i;
                dc = &dc * f;

                let a_f = &d_f * f * &(1.0 - f);
                let a_i = &d_i * i * &(1.0 - i);
                let a_o = &d_o * o * &(1.0 - o);
                let a_g = &d_g * &g.mapv(|v| 1.0 - v * v);

                dh = Array1::zeros(config.hidden_units);
                for (gate_idx, a) in [&a_f, &a_i, &a_o, &a_g].into_iter().enumerate() {
                    add_outer(&mut grads.gates[gate_idx].w, a, x);
                    add_outer(&mut grads.gates[gate_idx].u, a, h_prev);
                    grads.gates[gate_idx].b += a;
                    dh += &params.gates[gate_idx].u.t().dot(a);
                }
            }
            CellKind::Gru => {
                let [z, r, g] = &trace.gates[t][..] else {
                    unreachable!()
                };

                let d_z = &dh * &(g - h_prev);
                let d_g = &dh * z;
                let mut dh_prev = &dh * &(1.0 - z);

                let a_g = &d_g * &g.mapv(|v| 1.0 - v * v);
                add_outer(&mut grads.gates[2].w, &a_g, x);
                add_outer(&mut grads.gates[2].u, &a_g, &(r * h_prev));
                grads.gates[2].b += &a_g;

                let d_rh = params.gates[2].u.t().dot(&a_g);
                let d_r = &d_rh * h_prev;
                dh_prev += &(&d_rh * r);

                let a_z = &d_z * z * &(1.0 - z);
                let a_r = &d_r * r * &(1.0 - r);
                for (gate_idx, a) in [(0, &a_z), (1, &a_r)] {
                    add_outer(&mut grads.gates[gate_idx].w, a, x);
                    add_outer(&mut grads.gates[gate_idx].u, a, h_prev);
                    grads.gates[gate_idx].b += a;
                    dh_prev += &params.gates[gate_idx].u.t().dot(a);
                }
                dh = dh_prev;
            }
        }
    }
}

fn batch_grads_and_loss(
    params: &RnnParams,
    config: &RnnConfig,
    batch: &[&Sample],
    embedding: Option<&EmbeddingMatrix>,
) -> (RnnParams, f64) {
    let mut grads = params.zeros_like();
    let mut loss_sum = 0.0;
    for (input, label) in batch {
        let trace = forward_trace(params, config, input, embedding);
        loss_sum += loss(&trace.probs, *label);
        backward_sample(params, config, &trace, *label, &mut grads);
    }
    let scale = 1.0 / batch.len() as f64;
    for view in grads.flat_views_mut() {
        for g in view {
            *g *= scale;
        }
    }
    (grads, loss_sum * scale)
}

/// Exact gradients of the mean batch loss with respect to every parameter.
pub fn backward(
    params: &RnnParams,
    config: &RnnConfig,
    batch: &[Sample],
    embedding: Option<&EmbeddingMatrix>,
) -> RnnParams {
    assert!(!batch.is_empty(), "backward requires a non-empty batch");
    let refs: Vec<&Sample> = batch.iter().collect();
    batch_grads_and_loss(params, config, &refs, embedding).0
}

/// Mean loss of a set under fixed parameters (no training).
pub fn evaluate_mean_loss(
    params: &RnnParams,
    config: &RnnConfig,
    set: &[Sample],
    embedding: Option<&EmbeddingMatrix>,
) -> f64 {
    let total: f64 = set
        .iter()
        .map(|(input, label)| loss(&forward(params, config, input, embedding), *label))
        .sum();
    total / set.len() as f64
}

/// One epoch's loss record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpochLoss {
    pub epoch: usize,
    pub train_loss: f64,
    pub valid_loss: Option<f64>,
}

/// Minibatch training with RMSprop.
///
/// Determinism contract (frozen): one PRNG stream seeded from the config
/// initializes parameters, then shuffles sample order once per epoch.
/// Per batch, the mean-loss gradient is clipped to `clip_norm` by global
/// norm, then each parameter follows
/// `s ← ρ·s + (1−ρ)·g²`, `θ ← θ − lr·g/(√s + ε)`.
/// The reported train loss is the sample-weighted mean of batch losses as
/// visited during the epoch (each measured before that batch's update).
pub fn train(
    config: &RnnConfig,
    train_set: &[Sample],
    valid_set: Option<&[Sample]>,
    embedding: Option<&EmbeddingMatrix>,
) -> Result<(RnnParams, Vec<EpochLoss>)> {
    config.validate()?;
    if train_set.is_empty() {
        return Err(Error::EmptyFit);
    }
    if config.input_mode == InputMode::Sequence {
        let m = embedding.ok_or_else(|| {
            Error::InvalidConfig("sequence mode requires an embedding matrix".into())
        })?;
        if m.dim() != config.input_dim {
            return Err(Error::DimensionMismatch {
                expected: config.input_dim,
                found: m.dim(),
            });
        }
    }

    let mut rng = SplitMix64::new(config.seed);
    let mut params = init_params(config, &mut rng);
    let mut state = params.zeros_like();
    let mut history = Vec::with_capacity(config.epochs);
    let n = train_set.len();
    let mut order: Vec<usize> = (0..n).collect();

    for epoch in 0..config.epochs {
        rng.shuffle(&mut order);
        let mut loss_sum = 0.0;
        for (batch_idx, chunk) in order.chunks(config.batch_size).enumerate() {
            let batch: Vec<&Sample> = chunk.iter().map(|&i| &train_set[i]).collect();
            let (mut grads, batch_loss) = batch_grads_and_loss(&params, config, &batch, embedding);
            if !batch_loss.is_finite() {
                return Err(Error::NonFiniteLoss {
                    epoch,
                    batch: batch_idx,
                });
            }
            loss_sum += batch_loss * chunk.len() as f64;
            clip_gradients(&mut grads, config.clip_norm);
            let (mut p_views, g_views, mut s_views) = (
                params.flat_views_mut(),
                grads.flat_views(),
                state.flat_views_mut(),
            );
            for ((p, g), s) in p_views
                .iter_mut()
                .zip(g_views.iter())
                .zip(s_views.iter_mut())
            {
                for ((p, &g), s) in p.iter_mut().zip(g.iter()).zip(s.iter_mut()) {
                    *s = config.rho * *s + (1.0 - config.rho) * g * g;
                    *p -= config.lr * g / (s.sqrt() + config.epsilon);
                }
            }
        }
        history.push(EpochLoss {
            epoch,
            train_loss: loss_sum / n as f64,
            valid_loss: valid_set.map(|v| evaluate_mean_loss(&params, config, v, embedding)),
        });
    }
    Ok((params, history))
}
