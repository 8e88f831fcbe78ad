//! Ascending runs.
//!
//! A run is a maximal ascending iteration path `i < f(i) < f²(i) < …`. Its
//! first element is a node none of whose preimages (children, for trees)
//! carries a smaller label, so the number of runs equals the number of such
//! run starts.

use serde::Serialize;

use crate::{CayleyTree, Mapping};

/// A labelled functional structure: every node has at most one successor.
pub trait Successors {
    fn size(&self) -> usize;
    /// 0-based successor of the 0-based node `v`, or `None` for a root.
    fn successor(&self, v: usize) -> Option<usize>;
}

impl Successors for Mapping {
    fn size(&self) -> usize {
        self.len()
    }
    fn successor(&self, v: usize) -> Option<usize> {
        Some(self.as_zero_based()[v] as usize)
    }
}

impl Successors for CayleyTree {
    fn size(&self) -> usize {
        self.len()
    }
    fn successor(&self, v: usize) -> Option<usize> {
        (v + 1 != self.root()).then(|| self.as_zero_based()[v] as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunProfile {
    /// Run starts, increasing (1-based).
    pub starts: Vec<usize>,
    pub count: usize,
}

/// `j` starts a run iff no predecessor `i` with successor `j` has `i < j`.
pub fn run_profile<G: Successors + ?Sized>(g: &G) -> RunProfile {
    let n = g.size();
    let mut entered_from_below = vec![false; n];
    for i in 0..n {
        if let Some(j) = g.successor(i) {
            if i < j {
                entered_from_below[j] = true;
            }
        }
    }
    let starts: Vec<usize> = (0..n)
        .filter(|&j| !entered_from_below[j])
        .map(|j| j + 1)
        .collect();
    RunProfile {
        count: starts.len(),
        starts,
    }
}

pub fn run_starts_mapping(m: &Mapping) -> RunProfile {
    run_profile(m)
}

pub fn run_starts_tree(t: &CayleyTree) -> RunProfile {
    run_profile(t)
}

/// Number of runs of a 0-based image (or parent) array: `n` minus the number
/// of distinct targets of ascents.
pub(crate) fn run_count_raw(image: &[u32]) -> usize {
    let n = image.len();
    if n <= 64 {
        let mut hit = 0u64;
        for (i, &x) in image.iter().enumerate() {
            if (i as u32) < x {
                hit |= 1 << x;
            }
        }
        n - hit.count_ones() as usize
    } else {
        let mut hit = vec![false; n];
        let mut distinct = 0;
        for (i, &x) in image.iter().enumerate() {
            if (i as u32) < x && !hit[x as usize] {
                hit[x as usize] = true;
                distinct += 1;
            }
        }
        n - distinct
    }
}

pub fn count_runs(m: &Mapping) -> usize {
    run_count_raw(m.as_zero_based())
}

/// The root's self-loop never counts as an ascent, so a tree has exactly the
/// runs of its parent array read as a mapping.
pub fn count_tree_runs(t: &CayleyTree) -> usize {
    run_count_raw(t.as_zero_based())
}

/// `|{i : f(i) > i}|`.
pub fn count_ascents(m: &Mapping) -> usize {
    m.as_zero_based()
        .iter()
        .enumerate()
        .filter(|&(i, &x)| x as usize > i)
        .count()
}

/// Nodes that are not ascents, `|{i : f(i) ≤ i}|` (fixed points included).
pub fn count_descents(m: &Mapping) -> usize {
    m.len() - count_ascents(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::figures::*;
    use crate::structure::for_each_array_with_prefix;

    const FIG_STARTS: [usize; 13] = [1, 2, 3, 4, 5, 6, 8, 9, 12, 13, 15, 18, 19];

    fn chain(n: usize) -> Mapping {
        let img: Vec<usize> = (1..=n).map(|i| (i + 1).min(n)).collect();
        Mapping::new(&img).unwrap()
    }

    #[test]
    fn mapping_examples() {
        let fig1 = Mapping::new(&FIG1_MAPPING_IMAGE).unwrap();
        let p = run_starts_mapping(&fig1);
        assert_eq!(p.starts, FIG_STARTS);
        assert_eq!(p.count, 13);
        assert_eq!(count_runs(&fig1), 13);

        let id = Mapping::identity(6).unwrap();
        assert_eq!(run_starts_mapping(&id).count, 6);

        let p = run_starts_mapping(&chain(5));
        assert_eq!((p.starts, p.count), (vec![1], 1));
    }

    #[test]
    fn tree_examples() {
        let fig2 = CayleyTree::new(&FIG2_TREE_PARENT).unwrap();
        let p = run_starts_tree(&fig2);
        assert_eq!(p.starts, FIG_STARTS);
        assert_eq!(count_tree_runs(&fig2), 13);
        assert_eq!(run_starts_tree(&CayleyTree::singleton()).count, 1);

        // root 1, parent[v] = v - 1: every child is larger than its parent
        let path = CayleyTree::new(&[1, 1, 2]).unwrap();
        let p = run_starts_tree(&path);
        assert_eq!((p.starts, p.count), (vec![1, 2, 3], 3));
    }

    #[test]
    fn ascent_examples() {
        let fig1 = Mapping::new(&FIG1_MAPPING_IMAGE).unwrap();
        assert_eq!(count_ascents(&fig1), 10);
        assert_eq!(count_descents(&fig1), 9);
        assert_eq!(count_ascents(&Mapping::identity(4).unwrap()), 0);
        assert_eq!(count_ascents(&chain(7)), 6);
    }

    // brute-force oracle evaluating the predicate directly from preimage sets
    fn starts_by_preimages(m: &Mapping) -> Vec<usize> {
        (1..=m.len())
            .filter(|&j| m.preimages(j).iter().all(|&i| i >= j))
            .collect()
    }

    #[test]
    fn predicate_and_bounds_exhaustive() {
        for n in 1..=5 {
            for_each_array_with_prefix(n, &[], |a| {
                let m = Mapping::from_zero_based(a.to_vec()).unwrap();
                let p = run_starts_mapping(&m);
                assert_eq!(p.starts, starts_by_preimages(&m));
                assert_eq!(p.count, count_runs(&m));
                assert!((1..=n).contains(&p.count));
                // terminal nodes are always starts
                for j in 1..=n {
                    if m.preimages(j).is_empty() {
                        assert!(p.starts.contains(&j));
                    }
                }
                if let Ok(t) = CayleyTree::from_zero_based(a.to_vec()) {
                    assert_eq!(run_starts_tree(&t), run_starts_mapping(&t.to_mapping()));
                    let by_children: Vec<usize> = (1..=n)
                        .filter(|&v| t.children(v).iter().all(|&x| x > v))
                        .collect();
                    assert_eq!(run_starts_tree(&t).starts, by_children);
                }
            });
        }
    }

    #[test]
    fn wide_raw_counter_agrees() {
        let img: Vec<usize> = (1..=100).map(|i| (i * 37 % 100) + 1).collect();
        let m = Mapping::new(&img).unwrap();
        assert_eq!(count_runs(&m), run_starts_mapping(&m).count);
    }
}
