//! Bernoulli-Bernoulli restricted Boltzmann machine trained with persistent
//! contrastive divergence (PCD).
//!
//! Visible inputs are min-max scaled features in [0, 1] and are treated as
//! Bernoulli probabilities. The negative phase runs a fixed set of Gibbs
//! chains that persist across parameter updates instead of being restarted
//! from the data.
//!
//! All randomness comes from one `Xoshiro256PlusPlus` stream seeded through
//! `seed_from_u64` (SplitMix64 expansion), consumed in a fixed order: weight
//! initialisation, chain initialisation, then Gibbs sampling.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2, Axis};
use rand::{Rng, SeedableRng};
use rand_distr::{Distribution, Normal};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{SentenceFeatureMatrix, N_FEATURES};

pub type RbmRng = Xoshiro256PlusPlus;

pub fn seeded_rng(seed: u64) -> RbmRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Standard deviation of the initial weights.
pub const DEFAULT_INIT_STD: f64 = 0.01;

pub fn sigmoid(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rbm {
    /// `n_hidden x n_visible`.
    pub weights: Array2<f64>,
    pub visible_bias: Array1<f64>,
    pub hidden_bias: Array1<f64>,
}

/// Sufficient statistics of one phase: `<h v^T>`, `<v>` and `<h>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statistics {
    pub hv: Array2<f64>,
    pub v: Array1<f64>,
    pub h: Array1<f64>,
}

impl Rbm {
    pub fn zeros(n_visible: usize, n_hidden: usize) -> Self {
        Rbm {
            weights: Array2::zeros((n_hidden, n_visible)),
            visible_bias: Array1::zeros(n_visible),
            hidden_bias: Array1::zeros(n_hidden),
        }
    }

    /// Weights from `N(0, std^2)`, zero biases.
    pub fn random(n_visible: usize, n_hidden: usize, std: f64, rng: &mut RbmRng) -> Self {
        let mut rbm = Rbm::zeros(n_visible, n_hidden);
        if std > 0.0 {
            let normal = Normal::new(0.0, std).expect("positive finite std");
            rbm.weights.iter_mut().for_each(|w| *w = normal.sample(rng));
        }
        rbm
    }

    pub fn n_visible(&self) -> usize {
        self.weights.ncols()
    }

    pub fn n_hidden(&self) -> usize {
        self.weights.nrows()
    }

    pub fn is_finite(&self) -> bool {
        self.weights
            .iter()
            .chain(&self.visible_bias)
            .chain(&self.hidden_bias)
            .all(|x| x.is_finite())
    }

    /// `sigmoid(c + W v)`.
    pub fn hidden_probabilities(&self, v: ArrayView1<f64>) -> Array1<f64> {
        (self.weights.dot(&v) + &self.hidden_bias).mapv(sigmoid)
    }

    /// `sigmoid(b + W^T h)`.
    pub fn visible_probabilities(&self, h: ArrayView1<f64>) -> Array1<f64> {
        (self.weights.t().dot(&h) + &self.visible_bias).mapv(sigmoid)
    }

    fn check_width(&self, width: usize) -> Result<()> {
        if width != self.n_visible() {
            return Err(Error::DimensionMismatch {
                expected: self.n_visible(),
                found: width,
            });
        }
        Ok(())
    }

    /// Mean statistics over the rows of `visible`, using hidden
    /// probabilities rather than samples.
    pub fn phase_statistics(&self, visible: ArrayView2<f64>) -> Result<Statistics> {
        self.check_width(visible.ncols())?;
        let rows = visible.nrows().max(1) as f64;
        let mut stats = Statistics {
            hv: Array2::zeros(self.weights.raw_dim()),
            v: Array1::zeros(self.n_visible()),
            h: Array1::zeros(self.n_hidden()),
        };
        for v in visible.rows() {
            let h = self.hidden_probabilities(v);
            for (j, &hj) in h.iter().enumerate() {
                stats.hv.row_mut(j).scaled_add(hj, &v);
            }
            stats.v += &v;
            stats.h += &h;
        }
        stats.hv /= rows;
        stats.v /= rows;
        stats.h /= rows;
        Ok(stats)
    }

    /// Exact model expectations by enumerating every joint binary state.
    ///
    /// Only meant for tiny machines; panics above 20 units in total.
    pub fn exact_model_statistics(&self) -> Statistics {
        let (nv, nh) = (self.n_visible(), self.n_hidden());
        assert!(nv + nh <= 20, "exact enumeration is limited to 20 units");
        let bits =
            |state: usize, n: usize| Array1::from_iter((0..n).map(|i| ((state >> i) & 1) as f64));
        let mut states = Vec::with_capacity(1 << (nv + nh));
        for vs in 0..1usize << nv {
            let v = bits(vs, nv);
            for hs in 0..1usize << nh {
                let h = bits(hs, nh);
                let neg_energy = self.visible_bias.dot(&v)
                    + self.hidden_bias.dot(&h)
                    + h.dot(&self.weights.dot(&v));
                states.push((neg_energy, v.clone(), h));
            }
        }
        let max = states.iter().map(|s| s.0).fold(f64::NEG_INFINITY, f64::max);
        let z: f64 = states.iter().map(|s| (s.0 - max).exp()).sum();
        let mut stats = Statistics {
            hv: Array2::zeros((nh, nv)),
            v: Array1::zeros(nv),
            h: Array1::zeros(nh),
        };
        for (neg_energy, v, h) in &states {
            let p = (neg_energy - max).exp() / z;
            for (j, &hj) in h.iter().enumerate() {
                stats.hv.row_mut(j).scaled_add(p * hj, v);
            }
            stats.v.scaled_add(p, v);
            stats.h.scaled_add(p, h);
        }
        stats
    }

    /// `theta += learning_rate * (positive - negative)`.
    pub fn apply_update(
        &mut self,
        positive: &Statistics,
        negative: &Statistics,
        learning_rate: f64,
    ) {
        self.weights
            .scaled_add(learning_rate, &(&positive.hv - &negative.hv));
        self.visible_bias
            .scaled_add(learning_rate, &(&positive.v - &negative.v));
        self.hidden_bias
            .scaled_add(learning_rate, &(&positive.h - &negative.h));
    }

    pub fn weights_row_major(&self) -> Vec<f64> {
        self.weights.iter().copied().collect()
    }
}

/// Weights from `N(0, 0.01^2)` drawn from `seeded_rng(seed)`, zero biases.
pub fn init_rbm(n_visible: usize, n_hidden: usize, seed: u64) -> Rbm {
    Rbm::random(n_visible, n_hidden, DEFAULT_INIT_STD, &mut seeded_rng(seed))
}

fn bernoulli(p: &Array1<f64>, rng: &mut RbmRng) -> Array1<f64> {
    p.mapv(|p| if rng.random::<f64>() < p { 1.0 } else { 0.0 })
}

/// One alternating Gibbs sweep `v -> h -> v'` with Bernoulli samples.
pub fn gibbs_step(rbm: &Rbm, v: ArrayView1<f64>, rng: &mut RbmRng) -> Array1<f64> {
    let h = bernoulli(&rbm.hidden_probabilities(v), rng);
    bernoulli(&rbm.visible_probabilities(h.view()), rng)
}

/// Visible states of the persistent chains, one row per chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainState {
    pub visible: Array2<f64>,
}

impl ChainState {
    /// Independent fair-coin visible states.
    pub fn random(n_chains: usize, n_visible: usize, rng: &mut RbmRng) -> Self {
        let half = Array1::from_elem(n_visible, 0.5);
        let mut visible = Array2::zeros((n_chains, n_visible));
        for mut row in visible.rows_mut() {
            row.assign(&bernoulli(&half, rng));
        }
        ChainState { visible }
    }

    pub fn n_chains(&self) -> usize {
        self.visible.nrows()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub n_chains: usize,
    pub gibbs_steps_per_update: usize,
    pub n_hidden: usize,
    pub init_std: f64,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.1,
            epochs: 5,
            batch_size: 4,
            n_chains: 4,
            gibbs_steps_per_update: 1,
            n_hidden: N_FEATURES,
            init_std: DEFAULT_INIT_STD,
            seed: 42,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidConfig(m.into()));
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return fail("learning_rate must be positive");
        }
        if self.batch_size < 1 {
            return fail("batch_size must be at least 1");
        }
        if self.n_chains < 1 {
            return fail("n_chains must be at least 1");
        }
        if self.n_hidden < 1 {
            return fail("n_hidden must be at least 1");
        }
        if !(self.init_std >= 0.0 && self.init_std.is_finite()) {
            return fail("init_std must be non-negative");
        }
        Ok(())
    }
}

/// One PCD parameter update.
///
/// The positive phase uses hidden probabilities given the batch rows. The
/// chains are advanced `gibbs_steps_per_update` sweeps from where the
/// previous update left them, and the negative phase is taken from their new
/// states.
pub fn pcd_update(
    rbm: &mut Rbm,
    batch: ArrayView2<f64>,
    chains: &mut ChainState,
    config: &TrainConfig,
    rng: &mut RbmRng,
) -> Result<()> {
    let positive = rbm.phase_statistics(batch)?;
    for mut chain in chains.visible.rows_mut() {
        let mut v = chain.to_owned();
        for _ in 0..config.gibbs_steps_per_update {
            v = gibbs_step(rbm, v.view(), rng);
        }
        chain.assign(&v);
    }
    let negative = rbm.phase_statistics(chains.visible.view())?;
    rbm.apply_update(&positive, &negative, config.learning_rate);
    if !rbm.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Mean over rows of the binary cross-entropy between each row and its
/// mean-field reconstruction `p(v | p(h | row))`.
pub fn reconstruction_cross_entropy(rbm: &Rbm, data: ArrayView2<f64>) -> f64 {
    const EPS: f64 = 1e-12;
    let total: f64 = data
        .rows()
        .into_iter()
        .map(|v| {
            let r = rbm.visible_probabilities(rbm.hidden_probabilities(v).view());
            v.iter()
                .zip(&r)
                .map(|(&x, &p)| {
                    let p = p.clamp(EPS, 1.0 - EPS);
                    -(x * p.ln() + (1.0 - x) * (1.0 - p).ln())
                })
                .sum::<f64>()
        })
        .sum();
    total / data.nrows().max(1) as f64
}

#[derive(Debug, Clone)]
pub struct TrainedRbm {
    pub rbm: Rbm,
    /// Reconstruction cross-entropy over the whole matrix after each epoch.
    pub epoch_losses: Vec<f64>,
}

/// Train a fresh RBM on the rows of `data`, in order, in consecutive
/// batches of `batch_size` (the last one may be short).
pub fn train_array(data: ArrayView2<f64>, config: &TrainConfig) -> Result<TrainedRbm> {
    config.validate()?;
    let mut rng = seeded_rng(config.seed);
    let mut rbm = Rbm::random(data.ncols(), config.n_hidden, config.init_std, &mut rng);
    let mut chains = ChainState::random(config.n_chains, data.ncols(), &mut rng);
    let mut epoch_losses = Vec::with_capacity(config.epochs);
    for _ in 0..config.epochs {
        for batch in data.axis_chunks_iter(Axis(0), config.batch_size) {
            pcd_update(&mut rbm, batch, &mut chains, config, &mut rng)?;
        }
        epoch_losses.push(reconstruction_cross_entropy(&rbm, data));
    }
    Ok(TrainedRbm { rbm, epoch_losses })
}

pub fn train(matrix: &SentenceFeatureMatrix, config: &TrainConfig) -> Result<TrainedRbm> {
    train_array(matrix.to_array2().view(), config)
}

/// Hidden activation probabilities for every sentence.
#[derive(Debug, Clone, PartialEq)]
pub struct EnhancedMatrix {
    pub rows: Array2<f64>,
    pub normalized: bool,
}

impl EnhancedMatrix {
    pub fn n_sentences(&self) -> usize {
        self.rows.nrows()
    }
}

pub fn enhance_array(data: ArrayView2<f64>, rbm: &Rbm) -> Result<Array2<f64>> {
    rbm.check_width(data.ncols())?;
    let mut out = Array2::zeros((data.nrows(), rbm.n_hidden()));
    for (v, mut row) in data.rows().into_iter().zip(out.rows_mut()) {
        row.assign(&rbm.hidden_probabilities(v));
    }
    Ok(out)
}

pub fn enhance(matrix: &SentenceFeatureMatrix, rbm: &Rbm) -> Result<EnhancedMatrix> {
    Ok(EnhancedMatrix {
        rows: enhance_array(matrix.to_array2().view(), rbm)?,
        normalized: matrix.normalized,
    })
}

/// Trained layers of a one- or two-layer stack and the final activations.
#[derive(Debug, Clone)]
pub struct Stack {
    pub layers: Vec<TrainedRbm>,
    pub enhanced: EnhancedMatrix,
}

/// Train and enhance with one RBM, or with two stacked RBMs where the second
/// is trained on, and applied to, the output of the first. Layer `l`
/// (0-based) uses `config.seed + l`.
pub fn train_stack(
    matrix: &SentenceFeatureMatrix,
    config: &TrainConfig,
    layers: usize,
) -> Result<Stack> {
    if !(1..=2).contains(&layers) {
        return Err(Error::InvalidConfig(format!(
            "layers must be 1 or 2, got {layers}"
        )));
    }
    let mut data = matrix.to_array2();
    let mut trained_layers = Vec::with_capacity(layers);
    for layer in 0..layers {
        let cfg = TrainConfig {
            seed: config.seed.wrapping_add(layer as u64),
            ..*config
        };
        let trained = train_array(data.view(), &cfg)?;
        data = enhance_array(data.view(), &trained.rbm)?;
        trained_layers.push(trained);
    }
    Ok(Stack {
        layers: trained_layers,
        enhanced: EnhancedMatrix {
            rows: data,
            normalized: matrix.normalized,
        },
    })
}

pub fn stack_enhance(
    matrix: &SentenceFeatureMatrix,
    config: &TrainConfig,
    layers: usize,
) -> Result<EnhancedMatrix> {
    Ok(train_stack(matrix, config, layers)?.enhanced)
}
