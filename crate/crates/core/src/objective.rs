//! Objective-space primitives shared by every other module.
//!
//! All problems are minimization problems, so "better" always means smaller.

/// A decision vector together with its evaluated objective vector.
///
/// `id` names the individual. Copies of the same individual (for instance one
/// held in the archive and one held by a subproblem) keep the same id, which is
/// what weight deletion uses to detect several weights sharing one solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub id: u64,
    pub x: Vec<f64>,
    pub f: Vec<f64>,
}

impl Solution {
    pub fn new(id: u64, x: Vec<f64>, f: Vec<f64>) -> Self {
        Self { id, x, f }
    }

    /// Two solutions are the same individual if they share an id or have
    /// exactly equal objective vectors.
    pub fn same_individual(&self, other: &Solution) -> bool {
        self.id == other.id || self.f == other.f
    }
}

/// Strict Pareto dominance for minimization.
///
/// Panics if the vectors have different lengths.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    assert_eq!(a.len(), b.len(), "objective vectors differ in length");
    let mut strictly_better = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strictly_better = true;
        }
    }
    strictly_better
}

pub fn euclidean_distance(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "objective vectors differ in length");
    squared_distance(a, b).sqrt()
}

#[inline]
pub(crate) fn squared_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Per-objective minimum and maximum of a nonempty set.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl Bounds {
    /// Panics if `points` is empty.
    pub fn of<'a, I>(points: I) -> Self
    where
        I: IntoIterator<Item = &'a [f64]>,
    {
        let mut iter = points.into_iter();
        let first = iter.next().expect("bounds of an empty set");
        let mut min = first.to_vec();
        let mut max = first.to_vec();
        for p in iter {
            for (i, &v) in p.iter().enumerate() {
                if v < min[i] {
                    min[i] = v;
                }
                if v > max[i] {
                    max[i] = v;
                }
            }
        }
        Self { min, max }
    }

    /// Rescales `p` into the unit box. An objective with zero spread maps to 0.
    pub fn normalize(&self, p: &[f64]) -> Vec<f64> {
        p.iter()
            .enumerate()
            .map(|(i, &v)| {
                let span = self.max[i] - self.min[i];
                if span > 0.0 {
                    (v - self.min[i]) / span
                } else {
                    0.0
                }
            })
            .collect()
    }
}

/// Rescales every objective of the set to `[0, 1]` by the set's own minimum
/// and maximum.
pub fn normalize<P: AsRef<[f64]>>(set: &[P]) -> Vec<Vec<f64>> {
    assert!(!set.is_empty(), "cannot normalize an empty set");
    let bounds = Bounds::of(set.iter().map(|p| p.as_ref()));
    set.iter().map(|p| bounds.normalize(p.as_ref())).collect()
}

/// Indices of the mutually nondominated members of `points`. Exact duplicates
/// are kept once (the first occurrence).
pub fn nondominated_indices<P: AsRef<[f64]>>(points: &[P]) -> Vec<usize> {
    // Sorting lexicographically means a point can only be dominated by one that
    // comes before it.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (points[a].as_ref(), points[b].as_ref());
        pa.iter()
            .zip(pb)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut kept: Vec<usize> = Vec::new();
    for idx in order {
        let p = points[idx].as_ref();
        let beaten = kept.iter().any(|&k| {
            let q = points[k].as_ref();
            q == p || dominates(q, p)
        });
        if !beaten {
            kept.push(idx);
        }
    }
    kept.sort_unstable();
    kept
}

/// Median of a nonempty slice; the mean of the two middle values for even
/// lengths.
pub(crate) fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        0.5 * (values[n / 2 - 1] + values[n / 2])
    }
}
