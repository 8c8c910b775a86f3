//! Weight-vector adaptation.
//!
//! Periodically the evolutionary population is contrasted with the archive.
//! Archive members whose niche holds no population solution ("undeveloped")
//! and that beat every neighboring subproblem on their own optimal weight
//! ("promising") enter the population together with that weight. Weights are
//! then deleted until the population is back to its nominal size: first the
//! worst weight of the solution shared by the most subproblems, and once no
//! solution is shared, the subproblem holding the most crowded solution.

use std::collections::BTreeMap;

use crate::archive::crowding_truncation;
use crate::objective::{median, squared_distance, Bounds, Solution};
use crate::scalarization::{optimal_weight, tchebycheff, ReferencePoint, Weight};
use crate::weights::{compute_neighbors, nearest};

/// One decomposition subproblem: a search direction and the solution
/// currently associated with it.
#[derive(Debug, Clone, PartialEq)]
pub struct Subproblem {
    pub weight: Weight,
    pub solution: Solution,
    pub neighbors: Vec<usize>,
}

impl Subproblem {
    pub fn value(&self, z: &ReferencePoint) -> f64 {
        tchebycheff(&self.solution.f, &self.weight, z)
    }
}

/// When adaptation runs: every `period_fraction` of the generations, but never
/// during the final `freeze_fraction` of the run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdaptationSchedule {
    pub period_fraction: f64,
    pub freeze_fraction: f64,
    pub max_generations: usize,
}

impl AdaptationSchedule {
    pub fn new(max_generations: usize) -> Self {
        Self {
            period_fraction: 0.05,
            freeze_fraction: 0.10,
            max_generations,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.period_fraction > 0.0
            && self.period_fraction < 1.0
            && (0.0..1.0).contains(&self.freeze_fraction)
    }

    /// Generations between adaptation events (at least one).
    pub fn period(&self) -> usize {
        ((self.period_fraction * self.max_generations as f64).round() as usize).max(1)
    }

    pub fn should_adapt(&self, generation: usize) -> bool {
        let cutoff = (1.0 - self.freeze_fraction) * self.max_generations as f64;
        generation > 0 && generation.is_multiple_of(self.period()) && (generation as f64) < cutoff
    }
}

/// Summary of one adaptation round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AdaptationRecord {
    pub generation: usize,
    pub added: usize,
    pub deleted_shared: usize,
    pub deleted_crowded: usize,
}

impl std::fmt::Display for AdaptationRecord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "gen={} added={} deleted_shared={} deleted_crowded={}",
            self.generation, self.added, self.deleted_shared, self.deleted_crowded
        )
    }
}

/// Distance test shared by the initial undeveloped scan and the re-check made
/// before each addition.
struct NicheTest {
    bounds: Bounds,
    radius_sq: f64,
}

impl NicheTest {
    /// Returns `None` when the archive is too small to define a radius.
    fn new(archive: &[Solution], population: &[Subproblem]) -> Option<Self> {
        if archive.len() < 2 {
            return None;
        }
        let bounds = Bounds::of(
            archive
                .iter()
                .map(|s| s.f.as_slice())
                .chain(population.iter().map(|p| p.solution.f.as_slice())),
        );
        let points: Vec<Vec<f64>> = archive.iter().map(|s| bounds.normalize(&s.f)).collect();
        let mut nearest: Vec<f64> = (0..points.len())
            .map(|i| {
                (0..points.len())
                    .filter(|&j| j != i)
                    .map(|j| squared_distance(&points[i], &points[j]))
                    .fold(f64::INFINITY, f64::min)
                    .sqrt()
            })
            .collect();
        let radius = median(&mut nearest);
        Some(Self {
            bounds,
            radius_sq: radius * radius,
        })
    }

    fn is_undeveloped(&self, candidate: &[f64], population: &[Subproblem]) -> bool {
        let c = self.bounds.normalize(candidate);
        population.iter().all(|p| {
            squared_distance(&c, &self.bounds.normalize(&p.solution.f)) > self.radius_sq
        })
    }
}

/// Indices of archive members with no population solution within the niche
/// radius. The radius is the median distance from each archive member to its
/// nearest archive neighbor; distances are measured after normalizing over
/// the archive and the population together.
pub fn find_undeveloped(archive: &[Solution], population: &[Subproblem]) -> Vec<usize> {
    let Some(test) = NicheTest::new(archive, population) else {
        return Vec::new();
    };
    archive
        .iter()
        .enumerate()
        .filter(|(_, q)| test.is_undeveloped(&q.f, population))
        .map(|(i, _)| i)
        .collect()
}

/// Whether `q` beats, on its own weight `w_q`, the solution of each of the
/// `t` population weights nearest to `w_q`. Equal scalarizing values are
/// decided by the smaller objective sum.
pub fn is_promising(
    q: &Solution,
    w_q: &Weight,
    population: &[Subproblem],
    t: usize,
    z: &ReferencePoint,
) -> bool {
    let weights: Vec<&Weight> = population.iter().map(|p| &p.weight).collect();
    let neighbors = nearest(&weights, w_q.as_slice(), t.min(population.len()));
    outperforms_all(q, w_q, population, &neighbors, z)
}

fn outperforms_all(
    q: &Solution,
    w_q: &Weight,
    population: &[Subproblem],
    neighbors: &[usize],
    z: &ReferencePoint,
) -> bool {
    let g_q = tchebycheff(&q.f, w_q, z);
    let sum_q: f64 = q.f.iter().sum();
    neighbors.iter().all(|&j| {
        let p = &population[j].solution;
        let g_p = tchebycheff(&p.f, w_q, z);
        g_q < g_p || (g_q == g_p && sum_q < p.f.iter().sum::<f64>())
    })
}

/// Adds a subproblem for every undeveloped, promising archive member, in
/// archive order, each test seeing earlier additions. After an addition the
/// new solution also takes over any of its `t` nearest subproblems it
/// improves. Returns the number of subproblems added. Neighbor lists are not
/// refreshed here.
pub fn add_weights(
    population: &mut Vec<Subproblem>,
    archive: &[Solution],
    t: usize,
    z: &ReferencePoint,
) -> usize {
    let Some(test) = NicheTest::new(archive, population) else {
        return 0;
    };
    let candidates: Vec<usize> = archive
        .iter()
        .enumerate()
        .filter(|(_, q)| test.is_undeveloped(&q.f, population))
        .map(|(i, _)| i)
        .collect();

    let mut added = 0;
    for idx in candidates {
        let q = &archive[idx];
        if added > 0 && !test.is_undeveloped(&q.f, population) {
            continue;
        }
        let w_q = optimal_weight(&q.f, z);
        if population.iter().any(|p| p.weight == w_q) {
            continue;
        }
        let weights: Vec<&Weight> = population.iter().map(|p| &p.weight).collect();
        let neighbors = nearest(&weights, w_q.as_slice(), t.min(population.len()));
        if !outperforms_all(q, &w_q, population, &neighbors, z) {
            continue;
        }
        for &j in &neighbors {
            let sub = &mut population[j];
            if tchebycheff(&q.f, &sub.weight, z) < tchebycheff(&sub.solution.f, &sub.weight, z) {
                sub.solution = q.clone();
            }
        }
        population.push(Subproblem {
            weight: w_q,
            solution: q.clone(),
            neighbors: Vec::new(),
        });
        added += 1;
    }
    added
}

/// Deletes subproblems until `target` remain. Returns how many went because
/// their solution was shared and how many by crowding.
pub fn delete_weights(
    population: &mut Vec<Subproblem>,
    target: usize,
    z: &ReferencePoint,
    k: usize,
) -> (usize, usize) {
    let mut shared = 0;
    while population.len() > target {
        match worst_shared_weight(population, z) {
            Some(i) => {
                population.remove(i);
                shared += 1;
            }
            None => break,
        }
    }
    let mut crowded = 0;
    if population.len() > target {
        let objectives: Vec<Vec<f64>> = population.iter().map(|p| p.solution.f.clone()).collect();
        let mut removed = crowding_truncation(&objectives, target, k);
        crowded = removed.len();
        removed.sort_unstable();
        for i in removed.into_iter().rev() {
            population.remove(i);
        }
    }
    (shared, crowded)
}

/// Among the solutions shared by the largest number (at least two) of
/// subproblems, the subproblem whose weight scores its shared solution worst.
fn worst_shared_weight(population: &[Subproblem], z: &ReferencePoint) -> Option<usize> {
    // Exact objective equality stands in for identity: the same individual
    // always evaluates to the same vector.
    let mut groups: BTreeMap<Vec<u64>, Vec<usize>> = BTreeMap::new();
    for (i, p) in population.iter().enumerate() {
        let key = p.solution.f.iter().map(|v| (v + 0.0).to_bits()).collect();
        groups.entry(key).or_default().push(i);
    }
    let largest = groups.values().map(Vec::len).max()?;
    if largest < 2 {
        return None;
    }
    let mut best: Option<(f64, usize)> = None;
    for members in groups.values().filter(|g| g.len() == largest) {
        for &i in members {
            let g = population[i].value(z);
            let better = match best {
                None => true,
                Some((bg, bi)) => g > bg || (g == bg && i < bi),
            };
            if better {
                best = Some((g, i));
            }
        }
    }
    best.map(|(_, i)| i)
}

/// One full adaptation round: add, delete back to `target`, refresh every
/// neighbor list.
pub fn adapt(
    population: &mut Vec<Subproblem>,
    archive: &[Solution],
    target: usize,
    t: usize,
    z: &ReferencePoint,
    k: usize,
) -> AdaptationRecord {
    let added = add_weights(population, archive, t, z);
    let (deleted_shared, deleted_crowded) = delete_weights(population, target, z, k);
    let weights: Vec<&Weight> = population.iter().map(|p| &p.weight).collect();
    let neighbors = compute_neighbors(&weights, t.min(population.len()));
    for (p, nb) in population.iter_mut().zip(neighbors) {
        p.neighbors = nb;
    }
    AdaptationRecord {
        generation: 0,
        added,
        deleted_shared,
        deleted_crowded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::simplex_lattice;

    fn sol(id: u64, f: &[f64]) -> Solution {
        Solution::new(id, vec![], f.to_vec())
    }

    fn sub(w: &[f64], s: Solution) -> Subproblem {
        Subproblem {
            weight: Weight::new(w.to_vec()),
            solution: s,
            neighbors: Vec::new(),
        }
    }

    fn origin() -> ReferencePoint {
        ReferencePoint::from_values(vec![0.0, 0.0])
    }

    /// A 2-objective population on the lattice with solutions on the line
    /// f1 + f2 = 1 at the lattice points.
    fn line_population(h: usize) -> Vec<Subproblem> {
        simplex_lattice(2, h)
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                let f = w.as_slice().to_vec();
                Subproblem {
                    weight: w,
                    solution: sol(i as u64, &f),
                    neighbors: Vec::new(),
                }
            })
            .collect()
    }

    #[test]
    fn schedule_examples() {
        let s = AdaptationSchedule::new(100);
        assert!(s.should_adapt(5));
        assert!(s.should_adapt(50));
        assert!(!s.should_adapt(92));
        assert!(!s.should_adapt(90));
        assert!(s.should_adapt(85));
        assert!(!s.should_adapt(7));
        let s = AdaptationSchedule::new(249);
        assert_eq!(s.period(), 12);
        let events: Vec<usize> = (1..=249).filter(|&g| s.should_adapt(g)).collect();
        assert_eq!(events.first(), Some(&12));
        assert_eq!(events.last(), Some(&216));
        assert_eq!(events.len(), 18);
    }

    #[test]
    fn undeveloped_empty_when_archive_matches_population() {
        let pop = line_population(4);
        let archive: Vec<Solution> = pop.iter().map(|p| p.solution.clone()).collect();
        assert!(find_undeveloped(&archive, &pop).is_empty());
    }

    #[test]
    fn undeveloped_finds_isolated_member() {
        let pop = line_population(4);
        let mut archive: Vec<Solution> = pop.iter().map(|p| p.solution.clone()).collect();
        // Pull one population solution away from the archive member it mirrors.
        let mut pop = pop;
        pop[2].solution = pop[1].solution.clone();
        archive.push(sol(99, &[0.6, 0.4]));
        // r = 0.283 (median nearest-archive distance); (0.5, 0.5) is 0.354 from
        // the nearest population point, (0.6, 0.4) only 0.212.
        assert_eq!(find_undeveloped(&archive, &pop), vec![2]);
    }

    #[test]
    fn undeveloped_needs_two_archive_members() {
        let pop = line_population(2);
        assert!(find_undeveloped(&[sol(0, &[5.0, 5.0])], &pop).is_empty());
    }

    #[test]
    fn promising_examples() {
        let z = origin();
        let w = Weight::new(vec![0.5, 0.5]);
        let q = sol(0, &[1.0, 1.0]);
        // Single neighbor far worse at q's weight: g(q) = 2, g(p) = 6.
        let pop = vec![sub(&[0.5, 0.5], sol(1, &[3.0, 0.2]))];
        assert!(is_promising(&q, &w, &pop, 1, &z));
        // Dominated neighbors.
        let pop = vec![
            sub(&[0.4, 0.6], sol(1, &[1.5, 1.2])),
            sub(&[0.6, 0.4], sol(2, &[1.1, 1.3])),
        ];
        assert!(is_promising(&q, &w, &pop, 2, &z));
        // A neighbor equal in objectives blocks it.
        let pop = vec![
            sub(&[0.4, 0.6], sol(1, &[1.5, 1.2])),
            sub(&[0.6, 0.4], sol(2, &[1.0, 1.0])),
        ];
        assert!(!is_promising(&q, &w, &pop, 2, &z));
    }

    #[test]
    fn promising_tie_broken_by_objective_sum() {
        let z = origin();
        let w = Weight::new(vec![0.5, 0.5]);
        let q = sol(0, &[1.0, 0.5]);
        // Both score 2.0 at (0.5, 0.5); q has the smaller sum.
        let pop = vec![sub(&[0.5, 0.5], sol(1, &[1.0, 1.0]))];
        assert!(is_promising(&q, &w, &pop, 1, &z));
        let q = sol(0, &[1.0, 1.0]);
        let pop = vec![sub(&[0.5, 0.5], sol(1, &[1.0, 0.5]))];
        assert!(!is_promising(&q, &w, &pop, 1, &z));
    }

    #[test]
    fn add_weights_without_candidates_is_identity() {
        let mut pop = line_population(4);
        let archive: Vec<Solution> = pop.iter().map(|p| p.solution.clone()).collect();
        let before = pop.clone();
        assert_eq!(add_weights(&mut pop, &archive, 2, &origin()), 0);
        assert_eq!(pop, before);
    }

    #[test]
    fn add_weights_admits_undeveloped_promising_member() {
        // The population sits on the line f1 + f2 = 1, but two subproblems
        // share a poor solution; the archive knows a better point in between.
        let mut pop = line_population(4);
        let shared = sol(50, &[0.9, 0.9]);
        pop[1].solution = shared.clone();
        pop[2].solution = shared.clone();
        let mut archive: Vec<Solution> = line_population(4)
            .iter()
            .map(|p| p.solution.clone())
            .filter(|s| s.id != 1 && s.id != 2)
            .collect();
        let q = sol(77, &[0.3, 0.4]);
        archive.push(q.clone());
        let z = origin();
        let n = pop.len();
        let added = add_weights(&mut pop, &archive, 2, &z);
        assert_eq!(added, 1);
        assert_eq!(pop.len(), n + 1);
        let last = pop.last().unwrap();
        assert_eq!(last.solution, q);
        assert!((last.weight.as_slice()[0] - 3.0 / 7.0).abs() < 1e-12);
        // q's two nearest weights are (0.5, 0.5) [index 2] and (0.25, 0.75)
        // [index 1]; q improves on the shared solution at both.
        assert_eq!(pop[1].solution, q);
        assert_eq!(pop[2].solution, q);
        // The others are untouched.
        assert_eq!(pop[0].solution.id, 0);
        assert_eq!(pop[4].solution.id, 4);
    }

    #[test]
    fn add_weights_rejects_unpromising_member() {
        let mut pop = line_population(4);
        pop[1].solution = sol(51, &[0.15, 0.1]);
        pop[2].solution = sol(52, &[0.1, 0.1]);
        pop[3].solution = sol(53, &[0.1, 0.15]);
        // q is far from every population solution, but the solution held at
        // (0.5, 0.5) scores far better on q's own weight.
        let q = sol(77, &[0.6, 0.62]);
        let archive = vec![sol(0, &[0.0, 0.9]), sol(4, &[0.9, 0.0]), q.clone()];
        let z = origin();
        let w_q = optimal_weight(&q.f, &z);
        let g_q = tchebycheff(&q.f, &w_q, &z);
        let g_p = tchebycheff(&pop[2].solution.f, &w_q, &z);
        assert!(g_p < g_q);
        assert!(find_undeveloped(&archive, &pop).contains(&2));
        let before = pop.clone();
        assert_eq!(add_weights(&mut pop, &archive, 2, &z), 0);
        assert_eq!(pop, before);
    }

    #[test]
    fn delete_worst_weight_of_shared_solution() {
        let z = origin();
        let s5 = sol(5, &[0.5, 0.5]);
        let mut pop = vec![
            sub(&[0.0, 1.0], sol(1, &[0.0, 1.0])),
            sub(&[0.3, 0.7], s5.clone()),
            sub(&[0.5, 0.5], s5.clone()),
            sub(&[1.0, 0.0], sol(2, &[1.0, 0.0])),
        ];
        // g(s5, (0.3,0.7)) = 0.5/0.3 = 1.67 > g(s5, (0.5,0.5)) = 1.
        let (shared, crowded) = delete_weights(&mut pop, 3, &z, 2);
        assert_eq!((shared, crowded), (1, 0));
        assert_eq!(pop.len(), 3);
        assert_eq!(pop[1].weight.as_slice(), &[0.5, 0.5]);
    }

    #[test]
    fn delete_compares_worst_weights_across_solutions() {
        let z = origin();
        let a = sol(1, &[0.2, 0.8]);
        let b = sol(2, &[0.8, 0.2]);
        let mut pop = vec![
            sub(&[0.2, 0.8], a.clone()),
            sub(&[0.4, 0.6], a.clone()),
            sub(&[0.8, 0.2], b.clone()),
            sub(&[0.9, 0.1], b.clone()),
        ];
        // Worst for a: (0.4,0.6) -> max(0.5, 1.33) = 1.33.
        // Worst for b: (0.9,0.1) -> max(0.89, 2.0) = 2.0, deleted.
        delete_weights(&mut pop, 3, &z, 2);
        let ws: Vec<Vec<f64>> = pop.iter().map(|p| p.weight.as_slice().to_vec()).collect();
        assert_eq!(ws, vec![vec![0.2, 0.8], vec![0.4, 0.6], vec![0.8, 0.2]]);
    }

    #[test]
    fn delete_at_target_is_identity() {
        let mut pop = line_population(4);
        let before = pop.clone();
        assert_eq!(delete_weights(&mut pop, 5, &origin(), 2), (0, 0));
        assert_eq!(pop, before);
    }

    #[test]
    fn crowding_fallback_removes_a_near_duplicate() {
        // Unique solutions along a line with one near-duplicate pair (indices
        // 2 and 3). Brute-force crowding: the pair members carry the highest
        // degrees.
        let pts = [0.0, 0.25, 0.5, 0.51, 0.75, 1.0];
        let mut pop: Vec<Subproblem> = pts
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let w = [t, 1.0 - t];
                sub(&w, sol(i as u64, &w))
            })
            .collect();
        let (shared, crowded) = delete_weights(&mut pop, 5, &origin(), 2);
        assert_eq!((shared, crowded), (0, 1));
        let ids: Vec<u64> = pop.iter().map(|p| p.solution.id).collect();
        assert!(ids == vec![0, 1, 3, 4, 5] || ids == vec![0, 1, 2, 4, 5], "{ids:?}");
    }

    #[test]
    fn adapt_restores_size_and_neighbors() {
        let mut pop = line_population(9);
        let shared = sol(50, &[0.9, 0.9]);
        for p in &mut pop[3..6] {
            p.solution = shared.clone();
        }
        let archive: Vec<Solution> = line_population(9)
            .iter()
            .map(|p| p.solution.clone())
            .collect();
        // Offset reference so candidate weights never coincide with lattice points.
        let z = ReferencePoint::from_values(vec![-0.1, -0.1]);
        let rec = adapt(&mut pop, &archive, 10, 3, &z, 2);
        assert_eq!(pop.len(), 10);
        assert!(rec.added >= 1);
        assert_eq!(rec.added, rec.deleted_shared + rec.deleted_crowded);
        for (i, p) in pop.iter().enumerate() {
            assert!(p.weight.is_valid());
            assert_eq!(p.neighbors.len(), 3);
            assert_eq!(p.neighbors[0], i);
        }
    }
}
