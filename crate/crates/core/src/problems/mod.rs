//! The benchmark problems: evaluators, box bounds and Pareto-front samplers.

mod fronts;

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Every problem name accepted by [`make_problem`].
pub const PROBLEM_NAMES: [&str; 17] = [
    "DTLZ1",
    "DTLZ2",
    "CDTLZ2",
    "IDTLZ1",
    "IDTLZ2",
    "SCH1",
    "FON",
    "ZDT3",
    "DTLZ7",
    "DTLZ5",
    "VNT2",
    "SDTLZ1",
    "SDTLZ2",
    "SCH2",
    "DTLZ2-10",
    "IDTLZ1-10",
    "DTLZ5(2,10)",
];

/// Half-width of the SCH1 search interval.
const SCH1_BOUND: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Family {
    Dtlz1,
    Dtlz2,
    ConvexDtlz2,
    InvertedDtlz1,
    InvertedDtlz2,
    ScaledDtlz1,
    ScaledDtlz2,
    /// Covers both the 3-objective DTLZ5 and DTLZ5(2, M): with two essential
    /// objectives the reduced form is the original DTLZ5 formula.
    Dtlz5,
    Dtlz7,
    Sch1,
    Sch2,
    Fon,
    Zdt3,
    Vnt2,
}

/// A box-constrained minimization benchmark.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    name: &'static str,
    family: Family,
    num_objectives: usize,
    lower: Vec<f64>,
    upper: Vec<f64>,
}

/// Looks a benchmark up by name (case-insensitive).
pub fn make_problem(name: &str) -> Result<Problem> {
    let canonical = PROBLEM_NAMES
        .iter()
        .copied()
        .find(|n| n.eq_ignore_ascii_case(name.trim()))
        .ok_or_else(|| {
            Error::config(format!(
                "unknown problem '{name}' (expected one of {})",
                PROBLEM_NAMES.join(", ")
            ))
        })?;
    use Family::*;
    let (family, m, d) = match canonical {
        "DTLZ1" => (Dtlz1, 3, 3 + 4),
        "DTLZ2" => (Dtlz2, 3, 3 + 9),
        "CDTLZ2" => (ConvexDtlz2, 3, 3 + 9),
        "IDTLZ1" => (InvertedDtlz1, 3, 3 + 4),
        "IDTLZ2" => (InvertedDtlz2, 3, 3 + 9),
        "SDTLZ1" => (ScaledDtlz1, 3, 3 + 4),
        "SDTLZ2" => (ScaledDtlz2, 3, 3 + 9),
        "DTLZ5" => (Dtlz5, 3, 3 + 9),
        "DTLZ7" => (Dtlz7, 3, 3 + 19),
        "DTLZ2-10" => (Dtlz2, 10, 10 + 9),
        "IDTLZ1-10" => (InvertedDtlz1, 10, 10 + 4),
        "DTLZ5(2,10)" => (Dtlz5, 10, 10 + 9),
        "SCH1" => (Sch1, 2, 1),
        "SCH2" => (Sch2, 2, 1),
        "FON" => (Fon, 2, 3),
        "ZDT3" => (Zdt3, 2, 30),
        "VNT2" => (Vnt2, 3, 2),
        _ => unreachable!("name list and table disagree"),
    };
    let (lo, hi) = match family {
        Sch1 => (-SCH1_BOUND, SCH1_BOUND),
        Sch2 => (-5.0, 10.0),
        Fon | Vnt2 => (-4.0, 4.0),
        _ => (0.0, 1.0),
    };
    Ok(Problem {
        name: canonical,
        family,
        num_objectives: m,
        lower: vec![lo; d],
        upper: vec![hi; d],
    })
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        make_problem(s)
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name)
    }
}

impl Problem {
    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn num_objectives(&self) -> usize {
        self.num_objectives
    }

    pub fn num_variables(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub(crate) fn family(&self) -> Family {
        self.family
    }

    /// Population size used for this objective count: 100, 105 or 220.
    pub fn default_population_size(&self) -> usize {
        match self.num_objectives {
            2 => 100,
            3 => 105,
            _ => 220,
        }
    }

    /// Evaluation budget used for this objective count.
    pub fn default_eval_budget(&self) -> usize {
        match self.num_objectives {
            2 => 25_000,
            3 => 30_000,
            _ => 100_000,
        }
    }

    /// Number of points in the reference front used for IGD.
    pub fn reference_front_size(&self) -> usize {
        match self.num_objectives {
            2 => 1_000,
            3 => 5_000,
            _ => 10_000,
        }
    }

    /// Objective vector of `x`. `x` must have `num_variables()` entries.
    pub fn evaluate(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.num_variables(), "wrong decision dimension");
        let m = self.num_objectives;
        use Family::*;
        match self.family {
            Dtlz1 => dtlz1(x, m),
            InvertedDtlz1 => {
                let g = dtlz1_g(&x[m - 1..]);
                let mut f = dtlz1(x, m);
                for v in &mut f {
                    *v = 0.5 * (1.0 + g) - *v;
                }
                f
            }
            ScaledDtlz1 => scale(dtlz1(x, m)),
            Dtlz2 => dtlz2(x, m),
            InvertedDtlz2 => {
                let g = sphere_g(&x[m - 1..]);
                let mut f = dtlz2(x, m);
                for v in &mut f {
                    *v = (1.0 + g) - *v;
                }
                f
            }
            ScaledDtlz2 => scale(dtlz2(x, m)),
            ConvexDtlz2 => convexify(dtlz2(x, m)),
            Dtlz5 => dtlz5(x, m),
            Dtlz7 => dtlz7(x, m),
            Sch1 => {
                let v = x[0];
                vec![v * v, (v - 2.0) * (v - 2.0)]
            }
            Sch2 => sch2(x[0]),
            Fon => {
                let c = 1.0 / 3f64.sqrt();
                let a: f64 = x.iter().map(|v| (v - c) * (v - c)).sum();
                let b: f64 = x.iter().map(|v| (v + c) * (v + c)).sum();
                vec![1.0 - (-a).exp(), 1.0 - (-b).exp()]
            }
            Zdt3 => {
                let f1 = x[0];
                let g = 1.0 + 9.0 * x[1..].iter().sum::<f64>() / (x.len() - 1) as f64;
                vec![f1, g * zdt3_h(f1, g)]
            }
            Vnt2 => vnt2(x[0], x[1]),
        }
    }

    /// Points on (or, for fronts without a closed form, densely sampled and
    /// filtered onto) the Pareto front; at most `n` of them, mutually
    /// nondominated. Deterministic.
    pub fn sample_front(&self, n: usize) -> Vec<Vec<f64>> {
        assert!(n >= 2, "a front sample needs at least two points");
        fronts::sample(self, n)
    }
}

fn dtlz1_g(tail: &[f64]) -> f64 {
    let sum: f64 = tail
        .iter()
        .map(|&v| (v - 0.5) * (v - 0.5) - (20.0 * PI * (v - 0.5)).cos())
        .sum();
    100.0 * (tail.len() as f64 + sum)
}

fn sphere_g(tail: &[f64]) -> f64 {
    tail.iter().map(|&v| (v - 0.5) * (v - 0.5)).sum()
}

/// Linear DTLZ1 front coordinates of position variables `pos` (length m-1),
/// scaled by `radius`.
pub(crate) fn linear_front(pos: &[f64], m: usize, radius: f64) -> Vec<f64> {
    (0..m)
        .map(|i| {
            let mut v = radius;
            for &p in &pos[..m - 1 - i] {
                v *= p;
            }
            if i > 0 {
                v *= 1.0 - pos[m - 1 - i];
            }
            v
        })
        .collect()
}

/// Spherical coordinates: `m - 1` angles in radians to a point of norm `radius`.
pub(crate) fn spherical(angles: &[f64], m: usize, radius: f64) -> Vec<f64> {
    (0..m)
        .map(|i| {
            let mut v = radius;
            for &a in &angles[..m - 1 - i] {
                v *= a.cos();
            }
            if i > 0 {
                v *= angles[m - 1 - i].sin();
            }
            v
        })
        .collect()
}

fn dtlz1(x: &[f64], m: usize) -> Vec<f64> {
    let g = dtlz1_g(&x[m - 1..]);
    linear_front(&x[..m - 1], m, 0.5 * (1.0 + g))
}

fn dtlz2(x: &[f64], m: usize) -> Vec<f64> {
    let g = sphere_g(&x[m - 1..]);
    let angles: Vec<f64> = x[..m - 1].iter().map(|v| v * FRAC_PI_2).collect();
    spherical(&angles, m, 1.0 + g)
}

fn dtlz5(x: &[f64], m: usize) -> Vec<f64> {
    let g = sphere_g(&x[m - 1..]);
    let angles: Vec<f64> = x[..m - 1]
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if i == 0 {
                v * FRAC_PI_2
            } else {
                PI / (4.0 * (1.0 + g)) * (1.0 + 2.0 * g * v)
            }
        })
        .collect();
    spherical(&angles, m, 1.0 + g)
}

fn dtlz7(x: &[f64], m: usize) -> Vec<f64> {
    let tail = &x[m - 1..];
    let g = 1.0 + 9.0 * tail.iter().sum::<f64>() / tail.len() as f64;
    let mut f: Vec<f64> = x[..m - 1].to_vec();
    f.push((1.0 + g) * dtlz7_h(&f, g, m));
    f
}

pub(crate) fn dtlz7_h(head: &[f64], g: f64, m: usize) -> f64 {
    m as f64
        - head
            .iter()
            .map(|&fi| fi / (1.0 + g) * (1.0 + (3.0 * PI * fi).sin()))
            .sum::<f64>()
}

/// Objective `i` multiplied by `10^i`.
pub(crate) fn scale(mut f: Vec<f64>) -> Vec<f64> {
    for (i, v) in f.iter_mut().enumerate() {
        *v *= 10f64.powi(i as i32);
    }
    f
}

/// Fourth power of every objective but the last, which is squared.
pub(crate) fn convexify(mut f: Vec<f64>) -> Vec<f64> {
    let last = f.len() - 1;
    for v in &mut f[..last] {
        *v = v.powi(4);
    }
    f[last] = f[last].powi(2);
    f
}

pub(crate) fn zdt3_h(f1: f64, g: f64) -> f64 {
    let ratio = f1 / g;
    1.0 - ratio.sqrt() - ratio * (10.0 * PI * f1).sin()
}

pub(crate) fn sch2(x: f64) -> Vec<f64> {
    let f1 = if x <= 1.0 {
        -x
    } else if x <= 3.0 {
        x - 2.0
    } else if x <= 4.0 {
        4.0 - x
    } else {
        x - 4.0
    };
    vec![f1, (x - 5.0) * (x - 5.0)]
}

pub(crate) fn vnt2(x: f64, y: f64) -> Vec<f64> {
    vec![
        (x - 2.0).powi(2) / 2.0 + (y + 1.0).powi(2) / 13.0 + 3.0,
        (x + y - 3.0).powi(2) / 36.0 + (-x + y + 2.0).powi(2) / 8.0 - 17.0,
        (x + 2.0 * y - 1.0).powi(2) / 175.0 + (2.0 * y - x).powi(2) / 17.0 - 13.0,
    ]
}
