//! Labelled rooted trees and mappings on `[n] = {1, …, n}`.
//!
//! Both types store 0-based `u32` arrays internally and speak 1-based labels
//! at every public boundary (constructors, accessors, text and JSON).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A function `f : [n] → [n]`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MappingJson", into = "MappingJson")]
pub struct Mapping {
    image: Vec<u32>,
}

/// An unordered rooted labelled tree, stored as a parent array with the root
/// pointing to itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct CayleyTree {
    parent: Vec<u32>,
    root: u32,
}

/// One weakly connected component of a functional digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// All labels of the component, increasing.
    pub nodes: Vec<usize>,
    /// The cyclic labels of the component, increasing.
    pub cyclic: Vec<usize>,
}

/// The weakly connected components of a mapping, ordered by smallest label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
}

impl ComponentDecomposition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn cyclic_nodes(&self) -> BTreeSet<usize> {
        self.components
            .iter()
            .flat_map(|c| c.cyclic.iter().copied())
            .collect()
    }
}

fn validate_labels(labels: &[usize]) -> Result<Vec<u32>> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > u32::MAX as usize {
        return Err(Error::SizeTooLarge {
            n,
            bound: u32::MAX as usize,
        });
    }
    labels
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            if (1..=n).contains(&l) {
                Ok((l - 1) as u32)
            } else {
                Err(Error::LabelOutOfRange {
                    position: i + 1,
                    label: l,
                    n,
                })
            }
        })
        .collect()
}

/// Marks the cyclic nodes of the functional graph given by a 0-based image
/// array. Each node is visited a bounded number of times.
pub(crate) fn cyclic_flags(image: &[u32]) -> Vec<bool> {
    let n = image.len();
    // 0 = unvisited, 1 = on the current walk, 2 = finished
    let mut state = vec![0u8; n];
    let mut cyclic = vec![false; n];
    let mut path = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut v = start;
        while state[v] == 0 {
            state[v] = 1;
            path.push(v);
            v = image[v] as usize;
        }
        if state[v] == 1 {
            let entry = v;
            loop {
                cyclic[v] = true;
                v = image[v] as usize;
                if v == entry {
                    break;
                }
            }
        }
        for &p in &path {
            state[p] = 2;
        }
        path.clear();
    }
    cyclic
}

/// Cycle statistics of a small functional graph, using caller-owned scratch
/// space so that exhaustive enumeration does not allocate per array.
#[derive(Debug, Default)]
pub(crate) struct CycleScratch {
    state: Vec<u8>,
    path: Vec<usize>,
}

impl CycleScratch {
    /// Returns `(number of cycles, number of cyclic nodes)`.
    pub(crate) fn summarize(&mut self, image: &[u32]) -> (usize, usize) {
        let n = image.len();
        self.state.clear();
        self.state.resize(n, 0);
        self.path.clear();
        let mut cycles = 0;
        let mut cyclic = 0;
        for start in 0..n {
            if self.state[start] != 0 {
                continue;
            }
            let mut v = start;
            while self.state[v] == 0 {
                self.state[v] = 1;
                self.path.push(v);
                v = image[v] as usize;
            }
            if self.state[v] == 1 {
                cycles += 1;
                let entry = v;
                loop {
                    cyclic += 1;
                    v = image[v] as usize;
                    if v == entry {
                        break;
                    }
                }
            }
            for &p in &self.path {
                self.state[p] = 2;
            }
            self.path.clear();
        }
        (cycles, cyclic)
    }
}

impl Mapping {
    /// Validates a 1-based image array.
    pub fn new(image: &[usize]) -> Result<Self> {
        Ok(Mapping {
            image: validate_labels(image)?,
        })
    }

    /// Builds a mapping from a 0-based image array.
    pub fn from_zero_based(image: Vec<u32>) -> Result<Self> {
        let n = image.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if let Some((i, &x)) = image.iter().enumerate().find(|(_, &x)| x as usize >= n) {
            return Err(Error::LabelOutOfRange {
                position: i + 1,
                label: x as usize + 1,
                n,
            });
        }
        Ok(Mapping { image })
    }

    pub(crate) fn from_zero_based_unchecked(image: Vec<u32>) -> Self {
        debug_assert!(!image.is_empty());
        debug_assert!(image.iter().all(|&x| (x as usize) < image.len()));
        Mapping { image }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_zero_based((0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    /// `f(label)`, 1-based.
    pub fn image(&self, label: usize) -> usize {
        self.image[label - 1] as usize + 1
    }

    pub fn as_zero_based(&self) -> &[u32] {
        &self.image
    }

    pub fn to_labels(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize + 1).collect()
    }

    /// `{i : f(i) = j}`.
    pub fn preimages(&self, j: usize) -> BTreeSet<usize> {
        let target = (j - 1) as u32;
        self.image
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == target)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Preimage lists for every node (0-based, each list increasing).
    pub fn preimage_lists(&self) -> Vec<Vec<u32>> {
        let mut pre = vec![Vec::new(); self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            pre[x as usize].push(i as u32);
        }
        pre
    }

    pub fn cyclic_nodes(&self) -> BTreeSet<usize> {
        cyclic_flags(&self.image)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn components(&self) -> ComponentDecomposition {
        let n = self.len();
        let cyclic = cyclic_flags(&self.image);
        const UNSET: usize = usize::MAX;
        let mut comp = vec![UNSET; n];
        let mut count = 0;
        for v in 0..n {
            if cyclic[v] && comp[v] == UNSET {
                let mut u = v;
                loop {
                    comp[u] = count;
                    u = self.image[u] as usize;
                    if u == v {
                        break;
                    }
                }
                count += 1;
            }
        }
        let mut path = Vec::new();
        for v in 0..n {
            let mut u = v;
            while comp[u] == UNSET {
                path.push(u);
                u = self.image[u] as usize;
            }
            let c = comp[u];
            for &p in &path {
                comp[p] = c;
            }
            path.clear();
        }
        let mut components = vec![
            Component {
                nodes: Vec::new(),
                cyclic: Vec::new(),
            };
            count
        ];
        for v in 0..n {
            components[comp[v]].nodes.push(v + 1);
            if cyclic[v] {
                components[comp[v]].cyclic.push(v + 1);
            }
        }
        components.sort_by_key(|c| c.nodes[0]);
        ComponentDecomposition { components }
    }

    pub fn is_connected(&self) -> bool {
        CycleScratch::default().summarize(&self.image).0 == 1
    }

    /// Space-separated 1-based images.
    pub fn to_text(&self) -> String {
        join_labels(&self.to_labels())
    }

    /// Parses either the one-line text form or the JSON form.
    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim();
        if trimmed.starts_with('{') {
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))
        } else {
            Mapping::new(&parse_label_line(trimmed)?)
        }
    }
}

impl CayleyTree {
    /// Validates a 1-based parent array in which the root is its own parent.
    pub fn new(parent: &[usize]) -> Result<Self> {
        Self::from_zero_based(validate_labels(parent)?)
    }

    pub fn from_zero_based(parent: Vec<u32>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if let Some((i, &x)) = parent.iter().enumerate().find(|(_, &x)| x as usize >= n) {
            return Err(Error::LabelOutOfRange {
                position: i + 1,
                label: x as usize + 1,
                n,
            });
        }
        let roots: Vec<usize> = (0..n).filter(|&v| parent[v] as usize == v).collect();
        match roots.len() {
            0 => return Err(Error::NoRoot),
            1 => {}
            _ => {
                return Err(Error::MultipleRoots {
                    roots: roots.iter().map(|r| r + 1).collect(),
                })
            }
        }
        let root = roots[0];
        if let Some(v) = cyclic_flags(&parent)
            .iter()
            .enumerate()
            .position(|(v, &c)| c && v != root)
        {
            return Err(Error::CycleDetected { node: v + 1 });
        }
        Ok(CayleyTree {
            parent,
            root: root as u32,
        })
    }

    pub(crate) fn from_zero_based_unchecked(parent: Vec<u32>, root: u32) -> Self {
        debug_assert_eq!(parent[root as usize], root);
        CayleyTree { parent, root }
    }

    /// The single-node tree.
    pub fn singleton() -> Self {
        CayleyTree {
            parent: vec![0],
            root: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> usize {
        self.root as usize + 1
    }

    /// `T(v)`, 1-based; the root is its own parent.
    pub fn parent(&self, v: usize) -> usize {
        self.parent[v - 1] as usize + 1
    }

    pub fn as_zero_based(&self) -> &[u32] {
        &self.parent
    }

    pub fn to_labels(&self) -> Vec<usize> {
        self.parent.iter().map(|&x| x as usize + 1).collect()
    }

    /// Children of `v`, increasing. The root is not its own child.
    pub fn children(&self, v: usize) -> BTreeSet<usize> {
        let target = (v - 1) as u32;
        self.parent
            .iter()
            .enumerate()
            .filter(|&(x, &p)| p == target && x as u32 != self.root)
            .map(|(x, _)| x + 1)
            .collect()
    }

    /// The nodes `w = v_1, T(v_1), …, root`.
    pub fn path_to_root(&self, w: usize) -> Vec<usize> {
        let mut path = vec![w];
        let mut v = (w - 1) as u32;
        while v != self.root {
            v = self.parent[v as usize];
            path.push(v as usize + 1);
        }
        path
    }

    /// Depth of `v`: number of edges to the root.
    pub fn depth(&self, v: usize) -> usize {
        self.path_to_root(v).len() - 1
    }

    /// The mapping obtained by reading the parent array as an image array
    /// (the root becomes a fixed point).
    pub fn to_mapping(&self) -> Mapping {
        Mapping::from_zero_based_unchecked(self.parent.clone())
    }

    pub fn to_text(&self) -> String {
        join_labels(&self.to_labels())
    }

    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim();
        if trimmed.starts_with('{') {
            serde_json::from_str(trimmed).map_err(|e| Error::Parse(e.to_string()))
        } else {
            CayleyTree::new(&parse_label_line(trimmed)?)
        }
    }
}

/// Parses a line of whitespace-separated positive integers.
pub fn parse_label_line(line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|e| Error::Parse(format!("bad label {tok:?}: {e}")))
        })
        .collect()
}

fn join_labels(labels: &[usize]) -> String {
    let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    parts.join(" ")
}

impl fmt::Display for Mapping {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for CayleyTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Mapping {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Mapping::parse(s)
    }
}

impl FromStr for CayleyTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CayleyTree::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct MappingJson {
    n: usize,
    image: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    n: usize,
    parent: Vec<usize>,
}

impl TryFrom<MappingJson> for Mapping {
    type Error = Error;
    fn try_from(j: MappingJson) -> Result<Self> {
        if j.n != j.image.len() {
            return Err(Error::SizeMismatch {
                declared: j.n,
                actual: j.image.len(),
            });
        }
        Mapping::new(&j.image)
    }
}

impl From<Mapping> for MappingJson {
    fn from(m: Mapping) -> Self {
        MappingJson {
            n: m.len(),
            image: m.to_labels(),
        }
    }
}

impl TryFrom<TreeJson> for CayleyTree {
    type Error = Error;
    fn try_from(j: TreeJson) -> Result<Self> {
        if j.n != j.parent.len() {
            return Err(Error::SizeMismatch {
                declared: j.n,
                actual: j.parent.len(),
            });
        }
        CayleyTree::new(&j.parent)
    }
}

impl From<CayleyTree> for TreeJson {
    fn from(t: CayleyTree) -> Self {
        TreeJson {
            n: t.len(),
            parent: t.to_labels(),
        }
    }
}

/// Calls `visit` on every 0-based array of length `n` over `[0, n)` whose
/// leading entries equal `prefix`, in lexicographic order.
pub(crate) fn for_each_array_with_prefix(n: usize, prefix: &[u32], mut visit: impl FnMut(&[u32])) {
    let mut a = vec![0u32; n];
    a[..prefix.len()].copy_from_slice(prefix);
    let free = prefix.len();
    loop {
        visit(&a);
        let mut i = n;
        loop {
            if i == free {
                return;
            }
            i -= 1;
            a[i] += 1;
            if (a[i] as usize) < n {
                break;
            }
            a[i] = 0;
        }
    }
}

/// Example data: the 19-node tree and mapping used throughout the tests.
pub mod figures {
    /// Parent array of the 19-node tree rooted at 10.
    pub const FIG2_TREE_PARENT: [usize; 19] = [
        7, 1, 10, 14, 17, 7, 11, 10, 16, 10, 17, 7, 17, 10, 7, 4, 4, 13, 13,
    ];
    /// Image array of the 19-mapping with three components.
    pub const FIG1_MAPPING_IMAGE: [usize; 19] = [
        7, 1, 10, 14, 17, 7, 11, 10, 16, 10, 17, 7, 17, 4, 7, 4, 1, 13, 13,
    ];
}
