//! The random network channel acting on subspaces (dimension deletions and
//! insertions) and the end-to-end experiment runner. The operational
//! packet-network model is abstracted to the subspace level: a deletion
//! drops one dimension of the sent word, an insertion adjoins one uniformly
//! random dimension from outside it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::decode::{list_decode, DecodeError, DecodeMethod};
use crate::field::{Field, FieldElement};
use crate::gabidulin::LiftedCode;
use crate::linalg::Matrix;
use crate::subspace::{Metric, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChannelError {
    #[error(
        "infeasible channel: {deletions} deletions and {insertions} insertions \
         on a {dim}-dimensional word in ambient dimension {ambient}"
    )]
    Infeasible { deletions: usize, insertions: usize, dim: usize, ambient: usize },
    #[error(transparent)]
    Decode(#[from] DecodeError),
}

/// Channel configuration: `deletions` dimension decreases, `insertions`
/// dimension increases, all randomness derived from `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChannelParams {
    pub deletions: usize,
    pub insertions: usize,
    pub seed: u64,
}

fn random_row(field: &Field, elems: &[FieldElement], n: usize, rng: &mut impl Rng) -> Matrix {
    let data: Vec<FieldElement> =
        (0..n).map(|_| elems[rng.gen_range(0..elems.len())].clone()).collect();
    Matrix::new(field, 1, n, data)
}

/// Send `v` through the channel with explicit randomness: keep a uniformly
/// random `(dim - deletions)`-dimensional subspace of `v`, then adjoin
/// `insertions` uniformly random dimensions outside the current span. The
/// output dimension is exactly `dim - deletions + insertions`.
pub fn transmit_with_rng(
    v: &Subspace,
    deletions: usize,
    insertions: usize,
    rng: &mut impl Rng,
) -> Result<Subspace, ChannelError> {
    let (k, n) = (v.dim(), v.ambient_dim());
    if deletions > k || k - deletions + insertions > n {
        return Err(ChannelError::Infeasible { deletions, insertions, dim: k, ambient: n });
    }
    let field = v.field().clone();
    let elems: Vec<FieldElement> = field.elements().collect();
    let kept = k - deletions;
    // a uniformly random full-rank (kept x k) matrix hits every
    // kept-dimensional subspace of v with the same number of bases
    let mut rows = loop {
        let mut data = Vec::with_capacity(kept * k);
        for _ in 0..kept * k {
            data.push(elems[rng.gen_range(0..elems.len())].clone());
        }
        let m = Matrix::new(&field, kept, k, data);
        if m.rank() == kept {
            break m.mat_mul(v.basis());
        }
    };
    for _ in 0..insertions {
        loop {
            let candidate = random_row(&field, &elems, n, rng);
            if rows.stack(&candidate).rank() == rows.rows() + 1 {
                rows = rows.stack(&candidate);
                break;
            }
        }
    }
    if rows.rows() == 0 {
        return Ok(Subspace::trivial(&field, n));
    }
    Ok(Subspace::from_rows(&rows).expect("channel output basis has full rank"))
}

/// `transmit_with_rng` with the generator seeded from the parameters.
pub fn transmit(v: &Subspace, p: &ChannelParams) -> Result<Subspace, ChannelError> {
    let mut rng = ChaCha20Rng::seed_from_u64(p.seed);
    transmit_with_rng(v, p.deletions, p.insertions, &mut rng)
}

/// One encode-transmit-decode round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub sent_index: u64,
    pub received_dim: usize,
    pub list_size: usize,
    pub success: bool,
}

/// Aggregate of an experiment; serializes deterministically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub trials: usize,
    pub deletions: usize,
    pub insertions: usize,
    pub seed: u64,
    pub method: String,
    pub metric: String,
    pub radius: usize,
    pub success_rate: f64,
    pub avg_list_size: f64,
    pub records: Vec<TrialRecord>,
}

impl ExperimentReport {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Run `trials` independent rounds: pick a uniformly random codeword, send
/// it through the channel, decode, and record whether the list contains the
/// sent word. Trial `i` draws its randomness from `seed + i`, so trials are
/// independent of execution order and the report is reproducible
/// byte-for-byte.
pub fn run_experiment(
    code: &LiftedCode,
    p: &ChannelParams,
    method: DecodeMethod,
    metric: Metric,
    radius: usize,
    trials: usize,
) -> Result<ExperimentReport, ChannelError> {
    let count = code.codeword_count();
    let per_trial = crate::exec::map_indexed(trials, |trial| {
        let mut rng = ChaCha20Rng::seed_from_u64(p.seed.wrapping_add(trial as u64));
        let sent_index = rng.gen_range(0..count);
        let sent = code.codeword(sent_index);
        let received = transmit_with_rng(&sent, p.deletions, p.insertions, &mut rng)?;
        let list = list_decode(code, &received, method, metric, radius)?;
        Ok::<TrialRecord, ChannelError>(TrialRecord {
            trial,
            sent_index: sent_index as u64,
            received_dim: received.dim(),
            list_size: list.len(),
            success: list.contains(&sent),
        })
    });
    let records = per_trial.into_iter().collect::<Result<Vec<_>, _>>()?;
    let denom = trials.max(1) as f64;
    let success_rate = records.iter().filter(|r| r.success).count() as f64 / denom;
    let avg_list_size = records.iter().map(|r| r.list_size as f64).sum::<f64>() / denom;
    Ok(ExperimentReport {
        trials,
        deletions: p.deletions,
        insertions: p.insertions,
        seed: p.seed,
        method: method.name().to_string(),
        metric: metric.name().to_string(),
        radius,
        success_rate,
        avg_list_size,
        records,
    })
}
