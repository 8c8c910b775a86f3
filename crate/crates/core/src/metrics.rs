//! Inverted generational distance.

use crate::objective::squared_distance;

/// Mean, over the reference points, of the Euclidean distance to the closest
/// member of `set`, in raw objective units.
///
/// Panics if `set` or `reference` is empty.
pub fn igd<R: AsRef<[f64]>, S: AsRef<[f64]>>(reference: &[R], set: &[S]) -> f64 {
    assert!(!set.is_empty(), "IGD of an empty solution set");
    assert!(!reference.is_empty(), "IGD against an empty reference front");
    let total: f64 = reference
        .iter()
        .map(|r| {
            set.iter()
                .map(|s| squared_distance(r.as_ref(), s.as_ref()))
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .sum();
    total / reference.len() as f64
}
