//! Browser bindings: step an optimizer interactively and fetch fronts and
//! weight sets as flat arrays for plotting.

use adaw::experiment::Algorithm;
use adaw::optimizer::Optimizer;
use adaw::weights::{divisions_for_size, simplex_lattice};
use adaw::{igd, make_problem, AlgorithmParams, Problem};
use wasm_bindgen::prelude::*;

fn flatten<P: AsRef<[f64]>>(points: &[P]) -> Vec<f64> {
    points.iter().flat_map(|p| p.as_ref().iter().copied()).collect()
}

fn js_err(e: adaw::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// One optimization run that the page advances a few generations at a time.
#[wasm_bindgen]
pub struct Session {
    optimizer: Optimizer,
    reference: Vec<Vec<f64>>,
}

#[wasm_bindgen]
impl Session {
    /// `algorithm` is "moead" or "adaw". The population size and evaluation
    /// budget are the problem's defaults.
    #[wasm_bindgen(constructor)]
    pub fn new(problem: &str, algorithm: &str, seed: u32) -> Result<Session, JsError> {
        let problem = make_problem(problem).map_err(js_err)?;
        let algorithm: Algorithm = algorithm.parse().map_err(js_err)?;
        let params = AlgorithmParams::defaults_for(&problem, algorithm.is_adaptive(), seed.into())
            .map_err(js_err)?;
        let optimizer = Optimizer::new(&problem, params).map_err(js_err)?;
        // A coarser reference set keeps the per-frame IGD cheap.
        let reference = problem.sample_front(reference_size(&problem));
        Ok(Session {
            optimizer,
            reference,
        })
    }

    /// Advances up to `generations` generations; returns how many adaptation
    /// rounds happened along the way.
    pub fn step(&mut self, generations: u32) -> u32 {
        let mut rounds = 0;
        for _ in 0..generations {
            if self.optimizer.is_finished() {
                break;
            }
            if self.optimizer.step().adaptation.is_some() {
                rounds += 1;
            }
        }
        rounds
    }

    pub fn generation(&self) -> u32 {
        self.optimizer.generation() as u32
    }

    #[wasm_bindgen(js_name = maxGenerations)]
    pub fn max_generations(&self) -> u32 {
        self.optimizer.params().max_generations as u32
    }

    pub fn finished(&self) -> bool {
        self.optimizer.is_finished()
    }

    #[wasm_bindgen(js_name = numObjectives)]
    pub fn num_objectives(&self) -> u32 {
        self.optimizer.problem().num_objectives() as u32
    }

    pub fn evaluations(&self) -> u32 {
        self.optimizer.evaluations() as u32
    }

    /// Objective vectors of the population, concatenated.
    pub fn population(&self) -> Vec<f64> {
        let objs: Vec<&[f64]> = self
            .optimizer
            .subproblems()
            .iter()
            .map(|s| s.solution.f.as_slice())
            .collect();
        flatten(&objs)
    }

    /// Current weight vectors, concatenated.
    pub fn weights(&self) -> Vec<f64> {
        let ws: Vec<&[f64]> = self
            .optimizer
            .subproblems()
            .iter()
            .map(|s| s.weight.as_slice())
            .collect();
        flatten(&ws)
    }

    /// Objective vectors of the archive, concatenated.
    pub fn archive(&self) -> Vec<f64> {
        flatten(&self.optimizer.archive().objectives())
    }

    /// Reference front the IGD is measured against, concatenated.
    pub fn front(&self) -> Vec<f64> {
        flatten(&self.reference)
    }

    /// IGD of the current population.
    pub fn igd(&self) -> f64 {
        let objs: Vec<&[f64]> = self
            .optimizer
            .subproblems()
            .iter()
            .map(|s| s.solution.f.as_slice())
            .collect();
        igd(&self.reference, &objs)
    }
}

fn reference_size(problem: &Problem) -> usize {
    problem.reference_front_size().min(1000)
}

/// Up to `n` points sampled on the problem's Pareto front, concatenated.
#[wasm_bindgen(js_name = sampleFront)]
pub fn sample_front(problem: &str, n: u32) -> Result<Vec<f64>, JsError> {
    let problem = make_problem(problem).map_err(js_err)?;
    if n < 2 {
        return Err(JsError::new("need at least two points"));
    }
    Ok(flatten(&problem.sample_front(n as usize)))
}

/// The simplex-lattice weights with `divisions` steps per axis, concatenated.
#[wasm_bindgen(js_name = simplexLattice)]
pub fn lattice(m: u32, divisions: u32) -> Result<Vec<f64>, JsError> {
    if m < 2 || divisions < 1 {
        return Err(JsError::new("need m >= 2 and at least one division"));
    }
    Ok(flatten(&simplex_lattice(m as usize, divisions as usize)))
}

/// Divisions giving a lattice of exactly `n` weights in `m` objectives, or
/// undefined when there is none.
#[wasm_bindgen(js_name = latticeDivisions)]
pub fn lattice_divisions(m: u32, n: u32) -> Option<u32> {
    divisions_for_size(m as usize, n as usize).map(|h| h as u32)
}
