//! The MOEA/D main loop with optional weight adaptation.
//!
//! Each generation visits every subproblem in index order: pick a mating pool
//! (the neighborhood with probability `delta`, otherwise the whole
//! population), recombine the subproblem's own solution with one pool member,
//! update the reference point, and let the offspring replace up to
//! `max_replacements` pool solutions it improves on. Every offspring is also
//! offered to the archive, which is truncated once per generation.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adaptation::{adapt, AdaptationRecord, AdaptationSchedule, Subproblem};
use crate::archive::Archive;
use crate::error::{Error, Result};
use crate::objective::Solution;
use crate::problems::Problem;
use crate::scalarization::{tchebycheff, ReferencePoint, Weight};
use crate::variation::{polynomial_mutation, sbx_crossover, VariationParams};
use crate::weights::{compute_neighbors, divisions_for_size, simplex_lattice};

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmParams {
    pub population_size: usize,
    pub neighborhood_size: usize,
    /// Probability of mating within the neighborhood (`delta`).
    pub neighbor_mating_prob: f64,
    /// Cap on solutions replaced by one offspring (`nr`).
    pub max_replacements: usize,
    pub archive_capacity: usize,
    pub max_generations: usize,
    pub variation: VariationParams,
    pub schedule: AdaptationSchedule,
    pub seed: u64,
    /// `false` runs plain MOEA/D.
    pub adaptive: bool,
}

impl AlgorithmParams {
    /// Standard settings for `problem`: T = 10% of N, delta = 0.9,
    /// nr = 1% of N, archive capacity 2N, and as many generations as the
    /// evaluation budget allows after initialization.
    pub fn new(
        problem: &Problem,
        population_size: usize,
        eval_budget: usize,
        adaptive: bool,
        seed: u64,
    ) -> Result<Self> {
        if eval_budget < population_size {
            return Err(Error::config(format!(
                "evaluation budget {eval_budget} is smaller than the population size {population_size}"
            )));
        }
        let n = population_size as f64;
        let max_generations = (eval_budget - population_size) / population_size.max(1);
        let params = Self {
            population_size,
            neighborhood_size: (0.1 * n).round() as usize,
            neighbor_mating_prob: 0.9,
            max_replacements: ((0.01 * n).round() as usize).max(1),
            archive_capacity: 2 * population_size,
            max_generations,
            variation: VariationParams::standard(problem.num_variables()),
            schedule: AdaptationSchedule::new(max_generations),
            seed,
            adaptive,
        };
        params.validate(problem)?;
        Ok(params)
    }

    /// Settings with the population size and budget used for `problem`'s
    /// objective count.
    pub fn defaults_for(problem: &Problem, adaptive: bool, seed: u64) -> Result<Self> {
        Self::new(
            problem,
            problem.default_population_size(),
            problem.default_eval_budget(),
            adaptive,
            seed,
        )
    }

    pub fn validate(&self, problem: &Problem) -> Result<()> {
        let n = self.population_size;
        let m = problem.num_objectives();
        if divisions_for_size(m, n).is_none() {
            return Err(Error::config(format!(
                "no {m}-objective simplex lattice has exactly {n} weights"
            )));
        }
        if self.neighborhood_size < 2 || self.neighborhood_size > n {
            return Err(Error::config(format!(
                "neighborhood size {} must lie in [2, {n}]",
                self.neighborhood_size
            )));
        }
        if self.max_replacements < 1 || self.max_replacements > n {
            return Err(Error::config("replacement cap must lie in [1, N]"));
        }
        if self.archive_capacity < n {
            return Err(Error::config("archive capacity must be at least N"));
        }
        if !(0.0..=1.0).contains(&self.neighbor_mating_prob) {
            return Err(Error::config("neighbor mating probability must lie in [0, 1]"));
        }
        if !self.variation.is_valid() || !self.schedule.is_valid() {
            return Err(Error::config("invalid variation or schedule parameters"));
        }
        Ok(())
    }
}

/// One accepted replacement, with both scalarizing values measured against
/// the reference point in force when it happened.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Replacement {
    pub subproblem: usize,
    pub before: f64,
    pub after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub generation: usize,
    pub replacements: Vec<Replacement>,
    pub adaptation: Option<AdaptationRecord>,
}

#[derive(Debug, Clone)]
pub struct RunResult {
    /// One solution per subproblem, in subproblem order (may repeat).
    pub population: Vec<Solution>,
    pub weights: Vec<Weight>,
    pub archive: Archive,
    pub evaluations: usize,
    pub adaptations: Vec<AdaptationRecord>,
}

impl RunResult {
    pub fn population_objectives(&self) -> Vec<Vec<f64>> {
        self.population.iter().map(|s| s.f.clone()).collect()
    }
}

/// A single optimization run, advanced one generation at a time.
#[derive(Debug, Clone)]
pub struct Optimizer {
    problem: Problem,
    params: AlgorithmParams,
    subproblems: Vec<Subproblem>,
    archive: Archive,
    reference: ReferencePoint,
    rng: ChaCha8Rng,
    evaluations: usize,
    generation: usize,
    next_id: u64,
    adaptations: Vec<AdaptationRecord>,
}

impl Optimizer {
    /// Random initial population, lattice weights associated with it by a
    /// random permutation, archive seeded with the nondominated members.
    pub fn new(problem: &Problem, params: AlgorithmParams) -> Result<Self> {
        params.validate(problem)?;
        let m = problem.num_objectives();
        let n = params.population_size;
        let h = divisions_for_size(m, n).expect("validated above");
        let weights = simplex_lattice(m, h);
        let neighbors = compute_neighbors(&weights, params.neighborhood_size);

        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let mut solutions: Vec<Solution> = (0..n as u64)
            .map(|id| {
                let x: Vec<f64> = problem
                    .lower()
                    .iter()
                    .zip(problem.upper())
                    .map(|(&lo, &hi)| lo + (hi - lo) * rng.random::<f64>())
                    .collect();
                let f = problem.evaluate(&x);
                Solution::new(id, x, f)
            })
            .collect();

        let reference = ReferencePoint::from_points(m, solutions.iter().map(|s| s.f.as_slice()));
        let mut archive = Archive::new(params.archive_capacity);
        for s in &solutions {
            archive.insert(s);
        }
        solutions.shuffle(&mut rng);

        let subproblems = weights
            .into_iter()
            .zip(neighbors)
            .zip(solutions)
            .map(|((weight, neighbors), solution)| Subproblem {
                weight,
                solution,
                neighbors,
            })
            .collect();

        Ok(Self {
            problem: problem.clone(),
            params,
            subproblems,
            archive,
            reference,
            rng,
            evaluations: n,
            generation: 0,
            next_id: n as u64,
            adaptations: Vec::new(),
        })
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn params(&self) -> &AlgorithmParams {
        &self.params
    }

    pub fn subproblems(&self) -> &[Subproblem] {
        &self.subproblems
    }

    pub fn archive(&self) -> &Archive {
        &self.archive
    }

    pub fn reference(&self) -> &ReferencePoint {
        &self.reference
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    /// Generations completed so far.
    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn is_finished(&self) -> bool {
        self.generation >= self.params.max_generations
    }

    pub fn adaptations(&self) -> &[AdaptationRecord] {
        &self.adaptations
    }

    /// Runs one generation, then archive truncation, then (when scheduled)
    /// weight adaptation.
    pub fn step(&mut self) -> StepReport {
        let n = self.subproblems.len();
        let mut replacements = Vec::new();
        for i in 0..n {
            let from_neighbors = self.rng.random::<f64>() < self.params.neighbor_mating_prob;
            let mut pool: Vec<usize> = if from_neighbors {
                self.subproblems[i].neighbors.clone()
            } else {
                (0..n).collect()
            };

            let child = self.make_offspring(i, &pool);
            self.reference.update(&child.f);

            pool.shuffle(&mut self.rng);
            let mut replaced = 0;
            for &j in &pool {
                if replaced >= self.params.max_replacements {
                    break;
                }
                let sub = &mut self.subproblems[j];
                let after = tchebycheff(&child.f, &sub.weight, &self.reference);
                let before = tchebycheff(&sub.solution.f, &sub.weight, &self.reference);
                if after < before {
                    sub.solution = child.clone();
                    replacements.push(Replacement {
                        subproblem: j,
                        before,
                        after,
                    });
                    replaced += 1;
                }
            }
            self.archive.insert(&child);
        }
        if self.archive.len() > self.archive.capacity() {
            self.archive.maintain(self.problem.num_objectives());
        }
        self.generation += 1;

        let adaptation = if self.params.adaptive && self.params.schedule.should_adapt(self.generation) {
            let mut record = adapt(
                &mut self.subproblems,
                self.archive.members(),
                self.params.population_size,
                self.params.neighborhood_size,
                &self.reference,
                self.problem.num_objectives(),
            );
            record.generation = self.generation;
            self.adaptations.push(record);
            Some(record)
        } else {
            None
        };

        StepReport {
            generation: self.generation,
            replacements,
            adaptation,
        }
    }

    /// Recombines subproblem `i`'s solution with a different member of
    /// `pool`, keeps one of the two children at random and mutates it.
    fn make_offspring(&mut self, i: usize, pool: &[usize]) -> Solution {
        let others: Vec<usize> = pool.iter().copied().filter(|&j| j != i).collect();
        let mate = others.choose(&mut self.rng).copied().unwrap_or(i);
        let lower = self.problem.lower();
        let upper = self.problem.upper();
        let (a, b) = sbx_crossover(
            &self.subproblems[i].solution.x,
            &self.subproblems[mate].solution.x,
            lower,
            upper,
            &self.params.variation,
            &mut self.rng,
        );
        let mut x = if self.rng.random::<bool>() { a } else { b };
        polynomial_mutation(&mut x, lower, upper, &self.params.variation, &mut self.rng);
        let f = self.problem.evaluate(&x);
        self.evaluations += 1;
        let id = self.next_id;
        self.next_id += 1;
        Solution::new(id, x, f)
    }

    pub fn run_to_end(mut self) -> RunResult {
        while !self.is_finished() {
            self.step();
        }
        self.into_result()
    }

    pub fn into_result(self) -> RunResult {
        RunResult {
            population: self.subproblems.iter().map(|s| s.solution.clone()).collect(),
            weights: self.subproblems.into_iter().map(|s| s.weight).collect(),
            archive: self.archive,
            evaluations: self.evaluations,
            adaptations: self.adaptations,
        }
    }
}

/// Runs `params.max_generations` generations from a fresh initialization.
pub fn run(problem: &Problem, params: AlgorithmParams) -> Result<RunResult> {
    Ok(Optimizer::new(problem, params)?.run_to_end())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::dominates;
    use crate::problems::make_problem;

    fn small(problem: &str, adaptive: bool, seed: u64, evals: usize) -> (Problem, AlgorithmParams) {
        let p = make_problem(problem).unwrap();
        let n = p.default_population_size();
        let params = AlgorithmParams::new(&p, n, evals, adaptive, seed).unwrap();
        (p, params)
    }

    #[test]
    fn standard_parameters() {
        let p = make_problem("ZDT3").unwrap();
        let a = AlgorithmParams::defaults_for(&p, true, 0).unwrap();
        assert_eq!(a.population_size, 100);
        assert_eq!(a.neighborhood_size, 10);
        assert_eq!(a.max_replacements, 1);
        assert_eq!(a.archive_capacity, 200);
        assert_eq!(a.max_generations, 249);
        assert_eq!(a.variation.mutation_prob, 1.0 / 30.0);

        let p = make_problem("DTLZ2").unwrap();
        let a = AlgorithmParams::defaults_for(&p, true, 0).unwrap();
        assert_eq!((a.population_size, a.neighborhood_size, a.max_generations), (105, 11, 284));

        let p = make_problem("IDTLZ1-10").unwrap();
        let a = AlgorithmParams::defaults_for(&p, true, 0).unwrap();
        assert_eq!((a.population_size, a.neighborhood_size, a.max_replacements), (220, 22, 2));
        assert_eq!(a.max_generations, 453);
    }

    #[test]
    fn population_size_must_match_a_lattice() {
        let p = make_problem("DTLZ2").unwrap();
        assert!(matches!(
            AlgorithmParams::new(&p, 100, 30_000, true, 0),
            Err(Error::Config(_))
        ));
        assert!(AlgorithmParams::new(&p, 105, 30_000, true, 0).is_ok());
        assert!(AlgorithmParams::new(&p, 105, 50, true, 0).is_err());
    }

    #[test]
    fn initialization_contract() {
        let (p, params) = small("DTLZ2", true, 3, 3_000);
        let opt = Optimizer::new(&p, params).unwrap();
        assert_eq!(opt.subproblems().len(), 105);
        assert_eq!(opt.evaluations(), 105);
        let members = opt.archive().members();
        for a in members {
            for b in members {
                assert!(!dominates(&a.f, &b.f));
            }
        }
        for s in opt.subproblems() {
            for (zi, fi) in opt.reference().as_slice().iter().zip(&s.solution.f) {
                assert!(zi < fi);
            }
            assert_eq!(s.neighbors.len(), 11);
        }
    }

    #[test]
    fn replacement_cap_is_respected() {
        let (p, params) = small("ZDT3", false, 4, 2_000);
        let mut opt = Optimizer::new(&p, params).unwrap();
        for _ in 0..5 {
            let report = opt.step();
            // Each of the N offspring may replace at most nr = 1 solution.
            assert!(report.replacements.len() <= 100);
            for r in &report.replacements {
                assert!(r.after < r.before);
            }
        }
    }

    #[test]
    fn baseline_keeps_initial_lattice() {
        let (p, params) = small("DTLZ2", false, 5, 5_000);
        let result = run(&p, params).unwrap();
        let lattice = simplex_lattice(3, 13);
        assert_eq!(result.weights, lattice);
        assert!(result.adaptations.is_empty());
    }

    #[test]
    fn evaluation_budget_is_exact() {
        let (p, params) = small("SCH1", true, 6, 25_000);
        let result = run(&p, params).unwrap();
        assert_eq!(result.evaluations, 25_000);
    }

    #[test]
    fn same_seed_same_result() {
        let (p, params) = small("DTLZ7", true, 7, 6_000);
        let a = run(&p, params.clone()).unwrap();
        let b = run(&p, params).unwrap();
        assert_eq!(a.population, b.population);
        assert_eq!(a.weights, b.weights);
        assert_eq!(a.archive.members(), b.archive.members());
    }

    #[test]
    fn global_mating_with_full_neighborhood_runs() {
        let (p, mut params) = small("SCH1", false, 8, 3_000);
        params.neighborhood_size = params.population_size;
        params.neighbor_mating_prob = 1.0;
        let result = run(&p, params).unwrap();
        assert_eq!(result.population.len(), 100);
    }
}
