//! Initial weight sets from the simplex lattice, and weight neighborhoods.

use crate::objective::squared_distance;
use crate::scalarization::Weight;

/// Number of points in the `m`-objective lattice with `h` divisions,
/// `C(h + m - 1, m - 1)`.
pub fn lattice_size(m: usize, h: usize) -> usize {
    binomial(h + m - 1, m - 1)
}

fn binomial(n: usize, k: usize) -> usize {
    debug_assert!(k <= n);
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// The number of divisions whose single-layer lattice has exactly `n` points,
/// if there is one.
pub fn divisions_for_size(m: usize, n: usize) -> Option<usize> {
    if m < 2 {
        return None;
    }
    let mut h = 1;
    loop {
        let size = lattice_size(m, h);
        if size == n {
            return Some(h);
        }
        if size > n {
            return None;
        }
        h += 1;
    }
}

/// All weights with components in `{0, 1/h, ..., 1}` summing to one, ordered
/// lexicographically by their integer numerators.
pub fn simplex_lattice(m: usize, h: usize) -> Vec<Weight> {
    assert!(m >= 1 && h >= 1, "lattice needs m >= 1 and h >= 1");
    let mut out = Vec::with_capacity(lattice_size(m, h));
    let mut prefix = Vec::with_capacity(m);
    enumerate(m, h, &mut prefix, &mut |counts| {
        out.push(Weight::new(
            counts.iter().map(|&c| c as f64 / h as f64).collect(),
        ));
    });
    out
}

fn enumerate(m: usize, left: usize, prefix: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if m == 1 {
        prefix.push(left);
        emit(prefix);
        prefix.pop();
        return;
    }
    for c in 0..=left {
        prefix.push(c);
        enumerate(m - 1, left - c, prefix, emit);
        prefix.pop();
    }
}

/// For each weight, the indices of its `t` closest weights (itself included),
/// nearest first, ties broken by lower index.
pub fn compute_neighbors<W: AsRef<[f64]>>(weights: &[W], t: usize) -> Vec<Vec<usize>> {
    assert!(t <= weights.len(), "neighborhood larger than the weight set");
    weights
        .iter()
        .map(|w| nearest(weights, w.as_ref(), t))
        .collect()
}

/// Indices of the `t` members of `weights` closest to `target`.
pub fn nearest<W: AsRef<[f64]>>(weights: &[W], target: &[f64], t: usize) -> Vec<usize> {
    let mut order: Vec<(f64, usize)> = weights
        .iter()
        .enumerate()
        .map(|(j, other)| (squared_distance(target, other.as_ref()), j))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    order.truncate(t);
    order.into_iter().map(|(_, j)| j).collect()
}
