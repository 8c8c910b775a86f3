//! Bounded archive of nondominated solutions, truncated by crowding degree.
//!
//! The crowding degree of a member `p` is `1 - prod_{q != p} R(p, q)`, where
//! `R(p, q) = d(p, q) / r` inside the niche radius `r` and 1 outside it.
//! Distances are taken after normalizing the set to the unit box, and `r` is
//! the median distance from each member to its k-th nearest other member.

use crate::objective::{dominates, euclidean_distance, median, normalize, Solution};

#[derive(Debug, Clone)]
pub struct Archive {
    members: Vec<Solution>,
    capacity: usize,
}

impl Archive {
    pub fn new(capacity: usize) -> Self {
        Self {
            members: Vec::with_capacity(capacity + 1),
            capacity,
        }
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn objectives(&self) -> Vec<Vec<f64>> {
        self.members.iter().map(|s| s.f.clone()).collect()
    }

    /// Adds `candidate` unless a member dominates it or has the same objective
    /// vector; members it dominates are dropped. Returns whether it was added.
    pub fn insert(&mut self, candidate: &Solution) -> bool {
        if self
            .members
            .iter()
            .any(|q| q.f == candidate.f || dominates(&q.f, &candidate.f))
        {
            return false;
        }
        self.members.retain(|q| !dominates(&candidate.f, &q.f));
        self.members.push(candidate.clone());
        true
    }

    /// Shrinks the archive to its capacity by repeatedly dropping the most
    /// crowded member. `k` selects the k-th nearest neighbor for the niche
    /// radius. Returns the number of members removed.
    pub fn maintain(&mut self, k: usize) -> usize {
        if self.members.len() <= self.capacity || self.members.len() < 2 {
            return 0;
        }
        let removed = crowding_truncation(&self.objectives(), self.capacity, k);
        let mut drop = vec![false; self.members.len()];
        for &i in &removed {
            drop[i] = true;
        }
        let mut idx = 0;
        self.members.retain(|_| {
            let keep = !drop[idx];
            idx += 1;
            keep
        });
        removed.len()
    }
}

/// Median distance from each point to its `k`-th nearest other point. With
/// fewer than `k + 1` points the farthest other point is used instead.
pub fn niche_radius<P: AsRef<[f64]>>(points: &[P], k: usize) -> f64 {
    let n = points.len();
    if n < 2 {
        return 0.0;
    }
    let rank = k.clamp(1, n - 1) - 1;
    let mut kth: Vec<f64> = (0..n)
        .map(|i| {
            let mut d: Vec<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| euclidean_distance(points[i].as_ref(), points[j].as_ref()))
                .collect();
            *d.select_nth_unstable_by(rank, |a, b| a.total_cmp(b)).1
        })
        .collect();
    median(&mut kth)
}

/// Niche factor `R(p, q)` for a pair at distance `d`.
#[inline]
fn niche_factor(d: f64, r: f64) -> f64 {
    if d <= r {
        if r > 0.0 {
            d / r
        } else {
            0.0
        }
    } else {
        1.0
    }
}

/// Crowding degree of `points[p]` within `points` for niche radius `r`. The
/// points are used as given; callers normalize first.
pub fn crowding_degree<P: AsRef<[f64]>>(p: usize, points: &[P], r: f64) -> f64 {
    let product: f64 = points
        .iter()
        .enumerate()
        .filter(|&(q, _)| q != p)
        .map(|(_, q)| niche_factor(euclidean_distance(points[p].as_ref(), q.as_ref()), r))
        .product();
    1.0 - product
}

/// Removes members of `objectives` one at a time, always the one with the
/// largest crowding degree (lowest index on ties), until `target` remain.
///
/// Normalization and the niche radius are fixed from the full set; crowding
/// degrees are updated after every removal. Returns the removed indices in
/// removal order.
pub fn crowding_truncation(objectives: &[Vec<f64>], target: usize, k: usize) -> Vec<usize> {
    let n = objectives.len();
    if n <= target {
        return Vec::new();
    }
    let points = normalize(objectives);
    let r = niche_radius(&points, k);

    // Only pairs inside the niche change the product, so keep just those.
    let mut in_niche: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let d = euclidean_distance(&points[i], &points[j]);
            let factor = niche_factor(d, r);
            if factor < 1.0 {
                in_niche[i].push((j, factor));
                in_niche[j].push((i, factor));
            }
        }
    }
    let degree = |list: &[(usize, f64)]| 1.0 - list.iter().map(|&(_, f)| f).product::<f64>();
    let mut crowding: Vec<f64> = in_niche.iter().map(|l| degree(l)).collect();
    let mut alive = vec![true; n];
    let mut removed = Vec::with_capacity(n - target);

    while removed.len() < n - target {
        let mut worst = usize::MAX;
        for i in (0..n).filter(|&i| alive[i]) {
            if worst == usize::MAX || crowding[i] > crowding[worst] {
                worst = i;
            }
        }
        alive[worst] = false;
        removed.push(worst);
        let neighbors = std::mem::take(&mut in_niche[worst]);
        for (q, _) in neighbors {
            in_niche[q].retain(|&(j, _)| j != worst);
            crowding[q] = degree(&in_niche[q]);
        }
    }
    removed
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn sol(id: u64, f: &[f64]) -> Solution {
        Solution::new(id, vec![], f.to_vec())
    }

    fn objs(a: &Archive) -> Vec<Vec<f64>> {
        a.objectives()
    }

    #[test]
    fn insert_examples() {
        let mut a = Archive::new(10);
        assert!(a.insert(&sol(0, &[1.0, 2.0])));
        assert!(a.insert(&sol(1, &[2.0, 1.0])));
        assert_eq!(objs(&a), vec![vec![1.0, 2.0], vec![2.0, 1.0]]);

        assert!(a.insert(&sol(2, &[0.0, 0.0])));
        assert_eq!(objs(&a), vec![vec![0.0, 0.0]]);

        assert!(!a.insert(&sol(3, &[1.0, 1.0])));
        assert_eq!(objs(&a), vec![vec![0.0, 0.0]]);
    }

    #[test]
    fn duplicate_objectives_rejected() {
        let mut a = Archive::new(10);
        assert!(a.insert(&sol(0, &[1.0, 2.0])));
        assert!(!a.insert(&sol(1, &[1.0, 2.0])));
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn crowding_degree_examples() {
        assert_eq!(crowding_degree(0, &[vec![0.5, 0.5]], 0.1), 0.0);
        let far = [vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(crowding_degree(0, &far, 0.5), 0.0);
        let half = [vec![0.0, 0.0], vec![0.25, 0.0], vec![5.0, 5.0]];
        assert_relative_eq!(crowding_degree(0, &half, 0.5), 0.5);
    }

    #[test]
    fn maintain_drops_one_of_the_near_duplicates() {
        let mut a = Archive::new(2);
        for (i, f) in [[0.0, 1.0], [0.5, 0.5], [0.49, 0.51]].iter().enumerate() {
            assert!(a.insert(&sol(i as u64, f)));
        }
        // Normalized: (0,1), (1,0), (0.98,0.02). r = median 2nd-nearest = sqrt(2).
        // D = 0.02, 0.98, 0.9804 -> the third member goes.
        assert_eq!(a.maintain(2), 1);
        assert_eq!(objs(&a), vec![vec![0.0, 1.0], vec![0.5, 0.5]]);
    }

    #[test]
    fn maintain_within_capacity_is_identity() {
        let mut a = Archive::new(5);
        a.insert(&sol(0, &[0.0, 1.0]));
        a.insert(&sol(1, &[1.0, 0.0]));
        assert_eq!(a.maintain(2), 0);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn degenerate_line_keeps_endpoints() {
        // Uniformly spaced points on a line in three objectives: k = 3 gives
        // r = 2s, interior D = 0.75, endpoint D = 0.5.
        let pts: Vec<Vec<f64>> = (0..9)
            .map(|i| {
                let t = i as f64 / 8.0;
                vec![t, 1.0 - t, 0.5 - 0.5 * t]
            })
            .collect();
        let normalized = normalize(&pts);
        let r = niche_radius(&normalized, 3);
        assert_relative_eq!(r, 2.0 * euclidean_distance(&normalized[0], &normalized[1]), max_relative = 1e-12);
        assert_relative_eq!(crowding_degree(0, &normalized, r), 0.5, epsilon = 1e-12);
        assert_relative_eq!(crowding_degree(4, &normalized, r), 0.75, epsilon = 1e-12);
        let removed = crowding_truncation(&pts, 8, 3);
        assert_eq!(removed.len(), 1);
        assert!(removed[0] != 0 && removed[0] != 8);
    }

    #[test]
    fn small_sets_use_farthest_neighbor() {
        let pts = [vec![0.0, 0.0], vec![0.3, 0.0], vec![1.0, 0.0]];
        // k = 5 > n - 1: farthest other point; distances 1.0, 0.7, 1.0.
        assert_relative_eq!(niche_radius(&pts, 5), 1.0);
    }

    /// Brute-force truncation straight from the definition.
    fn oracle_truncation(objectives: &[Vec<f64>], target: usize, k: usize) -> Vec<usize> {
        let points = normalize(objectives);
        let r = niche_radius(&points, k);
        let mut alive: Vec<usize> = (0..points.len()).collect();
        let mut removed = Vec::new();
        while alive.len() > target {
            let subset: Vec<Vec<f64>> = alive.iter().map(|&i| points[i].clone()).collect();
            let degrees: Vec<f64> = (0..subset.len())
                .map(|p| crowding_degree(p, &subset, r))
                .collect();
            let mut best = 0;
            for (i, &d) in degrees.iter().enumerate() {
                if d > degrees[best] {
                    best = i;
                }
            }
            removed.push(alive.remove(best));
        }
        removed
    }

    fn front_points() -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec(0.0f64..1.0, 3), 2..50)
    }

    proptest! {
        #[test]
        fn truncation_matches_brute_force(pts in front_points(), keep in 1usize..50, k in 1usize..4) {
            let target = keep.min(pts.len());
            let fast = crowding_truncation(&pts, target, k);
            let slow = oracle_truncation(&pts, target, k);
            prop_assert_eq!(fast, slow);
        }

        #[test]
        fn archive_stays_nondominated(
            pts in prop::collection::vec(prop::collection::vec((0i32..6).prop_map(f64::from), 2), 1..60),
            cap in 1usize..8,
        ) {
            let mut a = Archive::new(cap);
            for (i, f) in pts.iter().enumerate() {
                a.insert(&sol(i as u64, f));
                let m = a.members();
                for p in m {
                    for q in m {
                        prop_assert!(!dominates(&p.f, &q.f));
                    }
                }
                a.maintain(2);
                prop_assert!(a.len() <= cap);
            }
        }

        #[test]
        fn empty_niches_are_never_removed_first(pts in front_points()) {
            let target = pts.len() / 2;
            prop_assume!(target >= 1);
            let points = normalize(&pts);
            let r = niche_radius(&points, 3);
            let degrees: Vec<f64> = (0..points.len()).map(|p| crowding_degree(p, &points, r)).collect();
            let removed = crowding_truncation(&pts, target, 3);
            if degrees.iter().any(|&d| d > 0.0) {
                prop_assert!(degrees[removed[0]] > 0.0);
            }
        }

        #[test]
        fn crowding_degree_in_unit_interval(pts in front_points(), r in 0.01f64..2.0) {
            for p in 0..pts.len() {
                let d = crowding_degree(p, &pts, r);
                prop_assert!((0.0..=1.0).contains(&d));
            }
        }

        #[test]
        fn closer_neighbor_raises_crowding(d1 in 0.0f64..1.0, shrink in 0.0f64..1.0) {
            let r = 0.8;
            let a = [vec![0.0, 0.0], vec![d1, 0.0]];
            let b = [vec![0.0, 0.0], vec![d1 * shrink, 0.0]];
            prop_assert!(crowding_degree(0, &b, r) >= crowding_degree(0, &a, r));
        }
    }
}
