//! Reference-front samplers for IGD.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::FRAC_PI_4;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{convexify, dtlz7_h, scale, sch2, spherical, vnt2, zdt3_h, Family, Problem};
use crate::objective::nondominated_indices;
use crate::weights::{lattice_size, simplex_lattice};

/// Fixed seed for the random samplers used above three objectives.
const FRONT_SEED: u64 = 0x5eed_f207;

pub(super) fn sample(problem: &Problem, n: usize) -> Vec<Vec<f64>> {
    let m = problem.num_objectives();
    use Family::*;
    let raw: Vec<Vec<f64>> = match problem.family() {
        Dtlz1 => simplex_points(m, n).into_iter().map(halve).collect(),
        InvertedDtlz1 => simplex_points(m, n)
            .into_iter()
            .map(|p| p.into_iter().map(|v| 0.5 - 0.5 * v).collect())
            .collect(),
        ScaledDtlz1 => simplex_points(m, n)
            .into_iter()
            .map(|p| scale(halve(p)))
            .collect(),
        Dtlz2 => sphere_points(m, n),
        InvertedDtlz2 => sphere_points(m, n)
            .into_iter()
            .map(|p| p.into_iter().map(|v| 1.0 - v).collect())
            .collect(),
        ScaledDtlz2 => sphere_points(m, n).into_iter().map(scale).collect(),
        ConvexDtlz2 => sphere_points(m, n).into_iter().map(convexify).collect(),
        Dtlz5 => {
            // Optimal decision vectors: first position variable swept, the
            // remaining angles fixed at pi/4.
            let mut angles = vec![FRAC_PI_4; m - 1];
            grid(n)
                .map(|t| {
                    angles[0] = t * FRAC_PI_2;
                    spherical(&angles, m, 1.0)
                })
                .collect()
        }
        Dtlz7 => {
            // Sweep the position variables on a square grid with g = 1, keep
            // the nondominated patches, thin to n.
            let side = ((4 * n) as f64).sqrt().ceil() as usize;
            let mut pts = Vec::with_capacity(side * side);
            for a in grid(side) {
                for b in grid(side) {
                    let head = [a, b];
                    let mut f = head.to_vec();
                    f.push(2.0 * dtlz7_h(&head, 1.0, m));
                    pts.push(f);
                }
            }
            return thin(filter(pts), n);
        }
        Sch1 => grid(n).map(|t| {
            let x = 2.0 * t;
            vec![x * x, (x - 2.0) * (x - 2.0)]
        })
        .collect(),
        Sch2 => {
            // Optimal set is [1, 2) together with [4, 5].
            let first = n / 2;
            let second = n - first;
            let mut pts: Vec<Vec<f64>> = (0..first)
                .map(|i| sch2(1.0 + i as f64 / first as f64))
                .collect();
            pts.extend(grid(second).map(|t| sch2(4.0 + t)));
            pts
        }
        Fon => {
            let c = 1.0 / 3f64.sqrt();
            grid(n)
                .map(|t| {
                    let v = -c + 2.0 * c * t;
                    let a = 3.0 * (v - c) * (v - c);
                    let b = 3.0 * (v + c) * (v + c);
                    vec![1.0 - (-a).exp(), 1.0 - (-b).exp()]
                })
                .collect()
        }
        Zdt3 => {
            let pts = grid(20 * n).map(|f1| vec![f1, zdt3_h(f1, 1.0)]).collect();
            return thin(filter(pts), n);
        }
        Vnt2 => {
            // All three objectives are strictly convex quadratics, so the
            // Pareto set is traced by the minimizers of their weighted sums.
            simplex_points(3, n)
                .into_iter()
                .map(|w| {
                    let (x, y) = vnt2_weighted_minimizer(&w);
                    vnt2(x, y)
                })
                .collect()
        }
    };
    filter(raw)
}

/// Minimizer of `sum_i w_i f_i` for the VNT2 objectives. Each gradient is
/// affine in (x, y), so the stationarity condition is a 2x2 linear system.
fn vnt2_weighted_minimizer(w: &[f64]) -> (f64, f64) {
    // Gradients of the three objectives as [[dx/dx, dx/dy, dx_0], [dy/dx, dy/dy, dy_0]].
    let grads: [[[f64; 3]; 2]; 3] = [
        [[1.0, 0.0, -2.0], [0.0, 2.0 / 13.0, 2.0 / 13.0]],
        [
            [1.0 / 18.0 + 0.25, 1.0 / 18.0 - 0.25, -3.0 / 18.0 - 0.5],
            [1.0 / 18.0 - 0.25, 1.0 / 18.0 + 0.25, -3.0 / 18.0 + 0.5],
        ],
        [
            [2.0 / 175.0 + 2.0 / 17.0, 4.0 / 175.0 - 4.0 / 17.0, -2.0 / 175.0],
            [4.0 / 175.0 - 4.0 / 17.0, 8.0 / 175.0 + 8.0 / 17.0, -4.0 / 175.0],
        ],
    ];
    let mut a = [[0.0; 3]; 2];
    for (wi, g) in w.iter().zip(&grads) {
        for r in 0..2 {
            for c in 0..3 {
                a[r][c] += wi * g[r][c];
            }
        }
    }
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let x = (-a[0][2] * a[1][1] + a[0][1] * a[1][2]) / det;
    let y = (-a[0][0] * a[1][2] + a[1][0] * a[0][2]) / det;
    (x, y)
}

/// `k` evenly spaced values covering `[0, 1]` inclusive.
fn grid(k: usize) -> impl Iterator<Item = f64> {
    let denom = (k.max(2) - 1) as f64;
    (0..k).map(move |i| i as f64 / denom)
}

fn halve(p: Vec<f64>) -> Vec<f64> {
    p.into_iter().map(|v| 0.5 * v).collect()
}

fn filter(points: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let keep = nondominated_indices(&points);
    let mut keep = keep.into_iter().peekable();
    points
        .into_iter()
        .enumerate()
        .filter_map(|(i, p)| {
            if keep.peek() == Some(&i) {
                keep.next();
                Some(p)
            } else {
                None
            }
        })
        .collect()
}

/// Evenly strided subset of at most `n` points, first and last included.
fn thin(points: Vec<Vec<f64>>, n: usize) -> Vec<Vec<f64>> {
    let len = points.len();
    if len <= n {
        return points;
    }
    let picks: Vec<usize> = (0..n)
        .map(|i| ((i as f64) * (len - 1) as f64 / (n - 1) as f64).round() as usize)
        .collect();
    picks.into_iter().map(|i| points[i].clone()).collect()
}

/// Points on the unit simplex: the largest lattice with at most `n` points for
/// up to three objectives, uniform random samples beyond that.
fn simplex_points(m: usize, n: usize) -> Vec<Vec<f64>> {
    if m <= 3 {
        let mut h = 1;
        while lattice_size(m, h + 1) <= n {
            h += 1;
        }
        simplex_lattice(m, h)
            .into_iter()
            .map(|w| w.as_slice().to_vec())
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(FRONT_SEED);
        (0..n)
            .map(|_| {
                // Normalized exponentials are uniform on the simplex.
                let e: Vec<f64> = (0..m)
                    .map(|_| -(1.0 - rng.random::<f64>()).ln())
                    .collect();
                let s: f64 = e.iter().sum();
                e.into_iter().map(|v| v / s).collect()
            })
            .collect()
    }
}

/// Points on the positive orthant of the unit sphere.
fn sphere_points(m: usize, n: usize) -> Vec<Vec<f64>> {
    if m <= 3 {
        simplex_points(m, n).into_iter().map(unit).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(FRONT_SEED);
        (0..n)
            .map(|_| unit((0..m).map(|_| standard_normal(&mut rng).abs()).collect()))
            .collect()
    }
}

fn unit(p: Vec<f64>) -> Vec<f64> {
    let norm = p.iter().map(|v| v * v).sum::<f64>().sqrt();
    p.into_iter().map(|v| v / norm).collect()
}

fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    // Box-Muller; one variate per call is plenty here.
    let u1 = 1.0 - rng.random::<f64>();
    let u2 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

#[cfg(test)]
mod tests {
    use crate::objective::dominates;
    use crate::problems::{make_problem, PROBLEM_NAMES};
    use approx::assert_relative_eq;

    #[test]
    fn sch1_three_points() {
        let p = make_problem("SCH1").unwrap();
        assert_eq!(
            p.sample_front(3),
            vec![vec![0.0, 4.0], vec![1.0, 1.0], vec![4.0, 0.0]]
        );
    }

    #[test]
    fn dtlz1_front_lies_on_plane() {
        for name in ["DTLZ1", "IDTLZ1", "IDTLZ1-10"] {
            let p = make_problem(name).unwrap();
            let m = p.num_objectives() as f64;
            let target = if name == "DTLZ1" { 0.5 } else { 0.5 * (m - 1.0) };
            for f in p.sample_front(p.reference_front_size()) {
                assert_relative_eq!(f.iter().sum::<f64>(), target, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn dtlz2_front_lies_on_sphere() {
        for name in ["DTLZ2", "DTLZ2-10", "DTLZ5", "DTLZ5(2,10)"] {
            let p = make_problem(name).unwrap();
            for f in p.sample_front(500) {
                assert_relative_eq!(f.iter().map(|v| v * v).sum::<f64>(), 1.0, epsilon = 1e-9);
            }
        }
        let p = make_problem("IDTLZ2").unwrap();
        for f in p.sample_front(500) {
            let s: f64 = f.iter().map(|v| (1.0 - v) * (1.0 - v)).sum();
            assert_relative_eq!(s, 1.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn scaled_fronts_are_scaled_copies() {
        for (plain, scaled) in [("DTLZ1", "SDTLZ1"), ("DTLZ2", "SDTLZ2")] {
            let a = make_problem(plain).unwrap().sample_front(5000);
            let b = make_problem(scaled).unwrap().sample_front(5000);
            assert_eq!(a.len(), b.len());
            for (p, q) in a.iter().zip(&b) {
                for i in 0..3 {
                    assert_relative_eq!(q[i], p[i] * 10f64.powi(i as i32), max_relative = 1e-12);
                }
            }
        }
    }

    #[test]
    fn fronts_are_mutually_nondominated_and_sized() {
        for name in PROBLEM_NAMES {
            let p = make_problem(name).unwrap();
            let n = if p.num_objectives() == 10 { 1500 } else { p.reference_front_size() };
            let front = p.sample_front(n);
            assert!(front.len() <= n, "{name}: {}", front.len());
            assert!(front.len() >= n / 2, "{name}: only {} points", front.len());
            for a in &front {
                assert_eq!(a.len(), p.num_objectives());
                for b in &front {
                    assert!(!dominates(a, b), "{name}: {a:?} dominates {b:?}");
                }
            }
        }
    }

    #[test]
    fn front_points_are_attainable() {
        // Evaluating optimal decision vectors lands on points no front point dominates.
        for name in ["ZDT3", "FON", "SCH2", "VNT2"] {
            let p = make_problem(name).unwrap();
            let front = p.sample_front(p.reference_front_size());
            let x: Vec<f64> = match name {
                "ZDT3" => {
                    let mut x = vec![0.0; 30];
                    x[0] = 0.0;
                    x
                }
                "FON" => vec![0.1; 3],
                "SCH2" => vec![4.5],
                _ => vec![2.0, -1.0],
            };
            let f = p.evaluate(&x);
            assert!(front.iter().all(|q| !dominates(q, &f)), "{name}");
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        for name in ["DTLZ2-10", "VNT2", "ZDT3"] {
            let p = make_problem(name).unwrap();
            assert_eq!(p.sample_front(1000), p.sample_front(1000));
        }
    }
}
