use crate::error::{Error, Result};

/// Stopping rule for the direct spectral sums.
///
/// A sum over blocks `n = 0, 1, …` stops after block `n` once all of the
/// following hold:
///
/// * at least `n_min` blocks were summed,
/// * every energy in the block exceeds the previous block's (the parabola
///   minimum has been passed),
/// * every energy in the block has `β (E − E_ref) > 40`,
/// * the block's weight is below `tail_tol` of the running sum.
///
/// Running out of `n_max` blocks first is a [`Error::TruncationFailure`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub tail_tol: f64,
    pub n_min: usize,
    pub n_max: usize,
}

/// `β ΔE` above which a level counts as thermally inaccessible.
pub(crate) const INACCESSIBLE_EXPONENT: f64 = 40.0;

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            tail_tol: 1e-12,
            n_min: 16,
            n_max: 200_000,
        }
    }
}

impl TruncationPolicy {
    pub fn new(tail_tol: f64, n_min: usize, n_max: usize) -> Result<Self> {
        let policy = Self {
            tail_tol,
            n_min,
            n_max,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tail_tol > 0.0 && self.tail_tol < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "tail_tol must lie in (0, 1), got {}",
                self.tail_tol
            )));
        }
        if self.n_max == 0 || self.n_min > self.n_max {
            return Err(Error::InvalidParameter(format!(
                "need 0 < n_min <= n_max, got n_min = {}, n_max = {}",
                self.n_min, self.n_max
            )));
        }
        Ok(())
    }
}

/// Result of [`stable_boltzmann_sum`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoltzmannSum {
    /// `ln Σ e^{−βE}`
    pub log_sum: f64,
    /// `⟨E⟩`
    pub mean_energy: f64,
    /// `⟨E²⟩`
    pub mean_sq_energy: f64,
    /// Number of blocks summed.
    pub blocks: usize,
    variance: f64,
}

impl BoltzmannSum {
    /// `⟨E²⟩ − ⟨E⟩²`, accumulated about the ground state to avoid cancellation.
    pub fn variance(&self) -> f64 {
        self.variance
    }
}

/// Shifted accumulator: weights are `e^{−β(E − reference)}` with
/// `reference` the lowest energy seen so far, moments are about `reference`.
struct Accumulator {
    beta: f64,
    reference: f64,
    s0: f64,
    s1: f64,
    s2: f64,
}

impl Accumulator {
    fn new(beta: f64) -> Self {
        Self {
            beta,
            reference: f64::INFINITY,
            s0: 0.0,
            s1: 0.0,
            s2: 0.0,
        }
    }

    fn rebase(&mut self, new_reference: f64) {
        if self.s0 > 0.0 {
            let shift = self.reference - new_reference;
            let scale = (-self.beta * shift).exp();
            let (s0, s1, s2) = (self.s0, self.s1, self.s2);
            self.s0 = scale * s0;
            self.s1 = scale * (s1 + shift * s0);
            self.s2 = scale * (s2 + 2.0 * shift * s1 + shift * shift * s0);
        }
        self.reference = new_reference;
    }

    /// Adds one level and returns its weight relative to the current reference.
    fn push(&mut self, energy: f64) -> f64 {
        if energy < self.reference {
            self.rebase(energy);
        }
        let x = energy - self.reference;
        let w = (-self.beta * x).exp();
        self.s0 += w;
        self.s1 += w * x;
        self.s2 += w * x * x;
        w
    }
}

/// Overflow-safe `ln Σ e^{−βE}` with the first two energy moments.
///
/// `blocks` yields the spectrum grouped by the principal quantum number, one
/// slice of energies per block, in increasing block order. A finite stream
/// is summed completely; an unbounded one is cut by `policy`.
pub fn stable_boltzmann_sum<I, B>(blocks: I, beta: f64, policy: &TruncationPolicy) -> Result<BoltzmannSum>
where
    I: IntoIterator<Item = B>,
    B: AsRef<[f64]>,
{
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::InvalidParameter(format!("beta must be finite and > 0, got {beta}")));
    }
    policy.validate()?;

    let mut acc = Accumulator::new(beta);
    let mut previous: Vec<f64> = Vec::new();
    let mut count = 0usize;
    let mut converged = false;
    let mut ratio = f64::INFINITY;

    for block in blocks {
        if count == policy.n_max {
            break;
        }
        let block = block.as_ref();
        let mut block_weight = 0.0;
        let mut block_reference = acc.reference;
        for &e in block {
            if !e.is_finite() {
                return Err(Error::InvalidParameter(format!("non-finite energy {e} in block {count}")));
            }
            let w = acc.push(e);
            // a rebase inside the block rescales earlier weights of the block
            if acc.reference != block_reference {
                block_weight *= (-beta * (block_reference - acc.reference)).exp();
                block_reference = acc.reference;
            }
            block_weight += w;
        }
        count += 1;

        ratio = block_weight / acc.s0;
        let rising = previous.len() == block.len() && block.iter().zip(&previous).all(|(e, p)| e >= p);
        let inaccessible = block
            .iter()
            .all(|&e| beta * (e - acc.reference) > INACCESSIBLE_EXPONENT);
        if count >= policy.n_min && rising && inaccessible && ratio <= policy.tail_tol {
            converged = true;
            break;
        }
        previous.clear();
        previous.extend_from_slice(block);
    }

    if count == 0 || acc.s0 == 0.0 {
        return Err(Error::InvalidParameter("empty energy stream".into()));
    }
    if !converged && count == policy.n_max {
        return Err(Error::TruncationFailure {
            n_max: policy.n_max,
            ratio,
        });
    }

    let m1 = acc.s1 / acc.s0;
    let variance = (acc.s2 / acc.s0 - m1 * m1).max(0.0);
    let mean_energy = acc.reference + m1;
    Ok(BoltzmannSum {
        log_sum: acc.s0.ln() - beta * acc.reference,
        mean_energy,
        mean_sq_energy: variance + mean_energy * mean_energy,
        blocks: count,
        variance,
    })
}
