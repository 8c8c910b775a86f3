//! Tchebycheff scalarizing function (weight-division form) and the ideal-point
//! estimate it is measured from.

/// Floor applied to weight components before dividing.
pub const WEIGHT_FLOOR: f64 = 1e-6;

/// Amount by which the reference point undercuts the best value seen.
pub const REFERENCE_OFFSET: f64 = 1e-4;

const SIMPLEX_TOLERANCE: f64 = 1e-9;

/// A point on the unit simplex: a subproblem's search direction.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight(Vec<f64>);

impl Weight {
    /// Panics if `lambda` has a negative component or does not sum to one.
    pub fn new(lambda: Vec<f64>) -> Self {
        let w = Self(lambda);
        assert!(w.is_valid(), "not a simplex point: {:?}", w.0);
        w
    }

    pub fn uniform(m: usize) -> Self {
        Self(vec![1.0 / m as f64; m])
    }

    pub fn is_valid(&self) -> bool {
        let sum: f64 = self.0.iter().sum();
        !self.0.is_empty()
            && self.0.iter().all(|&l| l >= 0.0 && l.is_finite())
            && (sum - 1.0).abs() <= SIMPLEX_TOLERANCE
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl AsRef<[f64]> for Weight {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// Running estimate of the ideal point, kept `REFERENCE_OFFSET` below the
/// best value seen in every objective.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePoint {
    z: Vec<f64>,
}

impl ReferencePoint {
    /// A reference point that has seen nothing yet (all components +inf).
    pub fn unset(m: usize) -> Self {
        Self {
            z: vec![f64::INFINITY; m],
        }
    }

    pub fn from_values(z: Vec<f64>) -> Self {
        Self { z }
    }

    /// Componentwise minimum of `points` minus the offset.
    pub fn from_points<'a, I>(m: usize, points: I) -> Self
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut z = Self::unset(m);
        for f in points {
            z.update(f);
        }
        z
    }

    pub fn update(&mut self, f: &[f64]) {
        for (zi, &fi) in self.z.iter_mut().zip(f) {
            let candidate = fi - REFERENCE_OFFSET;
            if candidate < *zi {
                *zi = candidate;
            }
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.z
    }
}

/// `max_i (f_i - z_i) / max(lambda_i, WEIGHT_FLOOR)`; smaller is better.
pub fn tchebycheff(f: &[f64], w: &Weight, z: &ReferencePoint) -> f64 {
    f.iter()
        .zip(w.as_slice())
        .zip(z.as_slice())
        .map(|((&fi, &li), &zi)| (fi - zi) / li.max(WEIGHT_FLOOR))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// The weight under which `f` lies exactly on the search direction from `z`,
/// i.e. every ratio `(f_i - z_i) / lambda_i` is equal.
pub fn optimal_weight(f: &[f64], z: &ReferencePoint) -> Weight {
    let gaps: Vec<f64> = f
        .iter()
        .zip(z.as_slice())
        .map(|(&fi, &zi)| (fi - zi).max(0.0))
        .collect();
    let total: f64 = gaps.iter().sum();
    if total < 1e-12 {
        return Weight::uniform(f.len());
    }
    Weight(gaps.into_iter().map(|g| g / total).collect())
}
