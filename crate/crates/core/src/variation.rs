//! Real-coded variation: simulated binary crossover (SBX) and polynomial
//! mutation (PM), both with clipping repair at the box bounds.

use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationParams {
    /// Probability that a parent pair is recombined at all.
    pub crossover_prob: f64,
    /// Per-variable mutation probability.
    pub mutation_prob: f64,
    pub crossover_eta: f64,
    pub mutation_eta: f64,
}

impl VariationParams {
    /// `p_c = 1`, `p_m = 1/d`, both distribution indexes 20.
    pub fn standard(num_variables: usize) -> Self {
        Self {
            crossover_prob: 1.0,
            mutation_prob: 1.0 / num_variables as f64,
            crossover_eta: 20.0,
            mutation_eta: 20.0,
        }
    }

    pub fn is_valid(&self) -> bool {
        (0.0..=1.0).contains(&self.crossover_prob)
            && (0.0..=1.0).contains(&self.mutation_prob)
            && self.crossover_eta > 0.0
            && self.mutation_eta > 0.0
    }
}

/// SBX spread factor for a uniform draw `u` in `[0, 1)`.
pub(crate) fn sbx_spread(u: f64, eta: f64) -> f64 {
    let exponent = 1.0 / (eta + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(exponent)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(exponent)
    }
}

/// Children of the parent values `y1 <= y2` for spread factor `beta`.
fn sbx_pair(y1: f64, y2: f64, beta: f64) -> (f64, f64) {
    let mid = 0.5 * (y1 + y2);
    let half = 0.5 * beta * (y2 - y1);
    (mid - half, mid + half)
}

/// Simulated binary crossover. Each variable is recombined with probability
/// 0.5 and the two child values are swapped with probability 0.5.
pub fn sbx_crossover<R: Rng + ?Sized>(
    parent1: &[f64],
    parent2: &[f64],
    lower: &[f64],
    upper: &[f64],
    params: &VariationParams,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    assert_eq!(parent1.len(), parent2.len());
    let mut c1 = parent1.to_vec();
    let mut c2 = parent2.to_vec();
    if rng.random::<f64>() >= params.crossover_prob {
        return (c1, c2);
    }
    for i in 0..c1.len() {
        if rng.random::<f64>() > 0.5 {
            continue;
        }
        let (a, b) = (parent1[i], parent2[i]);
        if (a - b).abs() <= 1e-14 {
            continue;
        }
        let beta = sbx_spread(rng.random::<f64>(), params.crossover_eta);
        let (low, high) = sbx_pair(a.min(b), a.max(b), beta);
        let (mut v1, mut v2) = if a <= b { (low, high) } else { (high, low) };
        if rng.random::<f64>() < 0.5 {
            std::mem::swap(&mut v1, &mut v2);
        }
        c1[i] = v1.clamp(lower[i], upper[i]);
        c2[i] = v2.clamp(lower[i], upper[i]);
    }
    (c1, c2)
}

/// Bounded polynomial mutation of a single value for uniform draw `u`.
pub(crate) fn pm_value(y: f64, lower: f64, upper: f64, u: f64, eta: f64) -> f64 {
    let span = upper - lower;
    if span <= 0.0 {
        return y;
    }
    let exponent = 1.0 / (eta + 1.0);
    let delta = if u < 0.5 {
        let xy = 1.0 - (y - lower) / span;
        let val = 2.0 * u + (1.0 - 2.0 * u) * xy.powf(eta + 1.0);
        val.powf(exponent) - 1.0
    } else {
        let xy = 1.0 - (upper - y) / span;
        let val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * xy.powf(eta + 1.0);
        1.0 - val.powf(exponent)
    };
    (y + delta * span).clamp(lower, upper)
}

/// Polynomial mutation in place; each variable mutates with probability
/// `params.mutation_prob`.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    x: &mut [f64],
    lower: &[f64],
    upper: &[f64],
    params: &VariationParams,
    rng: &mut R,
) {
    for i in 0..x.len() {
        if rng.random::<f64>() < params.mutation_prob {
            let u = rng.random::<f64>();
            x[i] = pm_value(x[i], lower[i], upper[i], u, params.mutation_eta);
        }
    }
}
