//! Single-linkage clustering of projective points under a distance tolerance.

use num_complex::Complex64;
use serde::Serialize;

use super::proj::{projective_distance, CVec};

#[derive(Clone, Debug, Serialize)]
pub struct ClusterSet {
    pub representatives: Vec<CVec>,
    pub multiplicities: Vec<usize>,
    /// Cluster index of every input point.
    pub assignment: Vec<usize>,
    pub tolerance: f64,
}

impl ClusterSet {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Smallest distance between two representatives (infinite for < 2).
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for i in 0..self.len() {
            for j in 0..i {
                best = best.min(projective_distance(&self.representatives[i], &self.representatives[j]));
            }
        }
        best
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Points closer than `tol` (sine of the angle between representatives) are
/// linked; clusters are the connected components. Each cluster is represented
/// by its first member in input order and clusters are listed in order of
/// first appearance, so the result depends only on the input order.
pub fn cluster_with_tolerance(points: &[CVec], tol: f64) -> ClusterSet {
    cluster_by(points.len(), tol, |i, j| projective_distance(&points[i], &points[j]), |i| points[i].clone())
}

/// Clustering with a caller-supplied metric.
pub fn cluster_by<D, R>(n: usize, tol: f64, dist: D, rep: R) -> ClusterSet
where
    D: Fn(usize, usize) -> f64,
    R: Fn(usize) -> Vec<Complex64>,
{
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in 0..i {
            if dist(i, j) <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut assignment = vec![0; n];
    let mut multiplicities = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        let idx = match roots.iter().position(|&x| x == r) {
            Some(k) => k,
            None => {
                roots.push(r);
                multiplicities.push(0);
                roots.len() - 1
            }
        };
        assignment[i] = idx;
        multiplicities[idx] += 1;
    }
    ClusterSet {
        representatives: roots.iter().map(|&r| rep(r)).collect(),
        multiplicities,
        assignment,
        tolerance: tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::proj::c64;
    use proptest::prelude::*;

    #[test]
    fn small_example() {
        let pts = vec![
            vec![c64(1.0, 0.0), c64(0.0, 0.0)],
            vec![c64(1.0, 0.0), c64(1e-9, 0.0)],
            vec![c64(0.0, 0.0), c64(1.0, 0.0)],
        ];
        let cs = cluster_with_tolerance(&pts, 1e-6);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs.multiplicities, vec![2, 1]);
        assert!(cluster_with_tolerance(&[], 1e-6).is_empty());
    }

    proptest! {
        #[test]
        fn idempotent_and_separated(raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0, 0usize..4), 1..30)) {
            // Points drawn near four anchors, some within tolerance.
            let anchors = [[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -2.0]];
            let pts: Vec<CVec> = raw.iter().map(|&(a, b, k)| {
                vec![c64(anchors[k][0] + 1e-9 * a, 0.0), c64(anchors[k][1] + 1e-9 * b, 0.0)]
            }).collect();
            let cs = cluster_with_tolerance(&pts, 1e-6);
            prop_assert_eq!(cs.multiplicities.iter().sum::<usize>(), pts.len());
            prop_assert!(cs.min_separation() > 1e-6);
            let again = cluster_with_tolerance(&cs.representatives, 1e-6);
            prop_assert_eq!(&again.representatives, &cs.representatives);
            prop_assert!(again.multiplicities.iter().all(|&m| m == 1));
        }
    }
}
