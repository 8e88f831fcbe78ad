//! Two bijections.
//!
//! * [`phi`] sends a tree with a marked node to a mapping; the right-to-left
//!   maxima on the path from the mark to the root become the cycles. Its
//!   inverse is [`phi_inverse`]. Both directions keep ascents, small
//!   preimages and therefore run starts node by node.
//! * [`encode_partition`] cuts a mapping into its ascending runs, ordered by
//!   decreasing largest element, and records where each run's largest element
//!   points. [`decode_partition`] inverts it on valid pairs.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::structure::cyclic_flags;
use crate::{CayleyTree, Error, Mapping, Result};

/// A tree together with a distinguished node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedTree {
    pub tree: CayleyTree,
    mark: usize,
}

impl MarkedTree {
    pub fn new(tree: CayleyTree, mark: usize) -> Result<Self> {
        if !(1..=tree.len()).contains(&mark) {
            return Err(Error::MarkOutOfRange {
                mark,
                n: tree.len(),
            });
        }
        Ok(MarkedTree { tree, mark })
    }

    pub fn mark(&self) -> usize {
        self.mark
    }
}

/// The path from the marked node to the root and the positions of its
/// right-to-left maxima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathToRoot {
    /// `v_1 = w, v_2 = T(v_1), …, v_r = root`.
    pub nodes: Vec<usize>,
    /// 0-based indices into `nodes`, increasing; always ends with `r - 1`.
    pub maxima_indices: Vec<usize>,
}

impl PathToRoot {
    pub fn new(mt: &MarkedTree) -> Self {
        let nodes = mt.tree.path_to_root(mt.mark);
        let mut maxima_indices = Vec::new();
        let mut best = 0;
        for (i, &v) in nodes.iter().enumerate().rev() {
            if v > best {
                best = v;
                maxima_indices.push(i);
            }
        }
        maxima_indices.reverse();
        PathToRoot {
            nodes,
            maxima_indices,
        }
    }

    /// The right-to-left maxima themselves, in path order.
    pub fn maxima(&self) -> Vec<usize> {
        self.maxima_indices.iter().map(|&i| self.nodes[i]).collect()
    }
}

pub fn phi(mt: &MarkedTree) -> Mapping {
    let path = PathToRoot::new(mt);
    let mut image = mt.tree.as_zero_based().to_vec();
    let first = path.nodes[0];
    for (l, &idx) in path.maxima_indices.iter().enumerate() {
        let v = path.nodes[idx];
        let target = if l == 0 {
            first
        } else {
            // T(v_{i_{l-1}}) is the node right after the previous maximum
            path.nodes[path.maxima_indices[l - 1] + 1]
        };
        image[v - 1] = (target - 1) as u32;
    }
    Mapping::from_zero_based_unchecked(image)
}

pub fn phi_inverse(m: &Mapping) -> MarkedTree {
    let image = m.as_zero_based();
    let cyclic = cyclic_flags(image);
    let mut seen = vec![false; image.len()];
    // largest cyclic element of each component, 0-based
    let mut leaders = Vec::new();
    for v in 0..image.len() {
        if cyclic[v] && !seen[v] {
            let mut best = v;
            let mut u = v;
            loop {
                seen[u] = true;
                best = best.max(u);
                u = image[u] as usize;
                if u == v {
                    break;
                }
            }
            leaders.push(best);
        }
    }
    leaders.sort_unstable_by(|a, b| b.cmp(a));
    let links: Vec<u32> = leaders.iter().map(|&c| image[c]).collect();
    let mut parent = image.to_vec();
    for i in 0..leaders.len() - 1 {
        parent[leaders[i]] = links[i + 1];
    }
    let root = *leaders.last().expect("a mapping has at least one cycle");
    parent[root] = root as u32;
    MarkedTree {
        tree: CayleyTree::from_zero_based_unchecked(parent, root as u32),
        mark: links[0] as usize + 1,
    }
}

/// Blocks of `[n]` ordered by strictly decreasing maximum. Each block is
/// stored in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<usize>>,
}

impl OrderedSetPartition {
    /// Validates that the blocks are non-empty, cover `[n]` exactly for
    /// `n` = total number of elements, and have decreasing maxima.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        let mut blocks = blocks;
        for block in blocks.iter_mut() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            block.sort_unstable_by(|a, b| b.cmp(a));
            for &x in block.iter() {
                if !(1..=n).contains(&x) {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside [1, {n}]"
                    )));
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::InvalidPartition(format!("element {x} repeated")));
                }
            }
        }
        if blocks.windows(2).any(|w| w[0][0] <= w[1][0]) {
            return Err(Error::InvalidPartition(
                "blocks are not ordered by decreasing maximum".into(),
            ));
        }
        Ok(OrderedSetPartition { blocks })
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn max_of(&self, j: usize) -> usize {
        self.blocks[j][0]
    }

    /// For each block `j`, the links it may not use:
    /// `{ min{l ∈ S_i : l > max S_j} : i < j }`.
    pub fn forbidden_links(&self) -> Vec<Vec<usize>> {
        (0..self.blocks.len())
            .map(|j| {
                let top = self.max_of(j);
                self.blocks[..j]
                    .iter()
                    .map(|b| {
                        *b.iter()
                            .filter(|&&l| l > top)
                            .min()
                            .expect("earlier blocks have a larger maximum")
                    })
                    .collect()
            })
            .collect()
    }

    pub fn check_links(&self, links: &LinkSequence) -> Result<()> {
        let n = self.size();
        if links.0.len() != self.blocks.len() {
            return Err(Error::InvalidPartition(format!(
                "{} links for {} blocks",
                links.0.len(),
                self.blocks.len()
            )));
        }
        for (j, (forbidden, &link)) in self.forbidden_links().iter().zip(&links.0).enumerate() {
            if !(1..=n).contains(&link) || forbidden.contains(&link) {
                return Err(Error::InvalidLinkSequence { block: j + 1, link });
            }
        }
        Ok(())
    }
}

/// The images `n_1, …, n_m` of the blocks' largest elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkSequence(pub Vec<usize>);

/// JSON form `{"blocks":[[…],…],"links":[…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionEncoding {
    pub blocks: Vec<Vec<usize>>,
    pub links: Vec<usize>,
}

impl PartitionEncoding {
    pub fn from_parts(s: &OrderedSetPartition, x: &LinkSequence) -> Self {
        PartitionEncoding {
            blocks: s.blocks.clone(),
            links: x.0.clone(),
        }
    }

    pub fn into_parts(self) -> Result<(OrderedSetPartition, LinkSequence)> {
        Ok((
            OrderedSetPartition::new(self.blocks)?,
            LinkSequence(self.links),
        ))
    }
}

pub fn encode_partition(m: &Mapping) -> (OrderedSetPartition, LinkSequence) {
    let n = m.len();
    let image = m.as_zero_based();
    let pre = m.preimage_lists();
    let mut coloured = vec![false; n];
    let mut blocks = Vec::new();
    let mut links = Vec::new();
    let mut top = n;
    loop {
        while top > 0 && coloured[top - 1] {
            top -= 1;
        }
        if top == 0 {
            break;
        }
        let start = top - 1;
        let mut block = vec![start + 1];
        coloured[start] = true;
        let mut cur = start;
        loop {
            let below = pre[cur].partition_point(|&x| (x as usize) < cur);
            if below == 0 {
                break;
            }
            cur = pre[cur][below - 1] as usize;
            debug_assert!(!coloured[cur]);
            coloured[cur] = true;
            block.push(cur + 1);
        }
        links.push(image[start] as usize + 1);
        blocks.push(block);
    }
    (OrderedSetPartition { blocks }, LinkSequence(links))
}

pub fn decode_partition(s: &OrderedSetPartition, x: &LinkSequence) -> Result<Mapping> {
    s.check_links(x)?;
    let mut image = vec![0u32; s.size()];
    for (block, &link) in s.blocks.iter().zip(&x.0) {
        // blocks are stored decreasing: the successor of b_{k+1} is b_k
        for w in block.windows(2) {
            image[w[1] - 1] = (w[0] - 1) as u32;
        }
        image[block[0] - 1] = (link - 1) as u32;
    }
    Ok(Mapping::from_zero_based_unchecked(image))
}

/// All ordered set partitions of `[n]` into `m` blocks, via restricted growth
/// strings.
pub fn set_partitions(n: usize, m: usize) -> Vec<OrderedSetPartition> {
    let mut out = Vec::new();
    if n == 0 || m == 0 || m > n {
        return out;
    }
    let mut rgs = vec![0usize; n];
    fn rec(
        pos: usize,
        used: usize,
        n: usize,
        m: usize,
        rgs: &mut Vec<usize>,
        out: &mut Vec<OrderedSetPartition>,
    ) {
        if pos == n {
            if used == m {
                let mut blocks = vec![Vec::new(); m];
                for (i, &b) in rgs.iter().enumerate() {
                    blocks[b].push(i + 1);
                }
                for b in blocks.iter_mut() {
                    b.reverse();
                }
                blocks.sort_unstable_by(|a, b| b[0].cmp(&a[0]));
                out.push(OrderedSetPartition { blocks });
            }
            return;
        }
        if used + (n - pos) < m {
            return;
        }
        for b in 0..=used.min(m - 1) {
            rgs[pos] = b;
            rec(pos + 1, used.max(b + 1), n, m, rgs, out);
        }
    }
    rec(0, 0, n, m, &mut rgs, &mut out);
    out
}

/// Calls `visit` on every valid link sequence of `s`, found by testing all
/// `n^m` candidate sequences.
pub fn for_each_valid_links(s: &OrderedSetPartition, mut visit: impl FnMut(&LinkSequence)) {
    let n = s.size();
    let m = s.len();
    let forbidden = s.forbidden_links();
    let mut links = LinkSequence(vec![1; m]);
    loop {
        let valid = links.0.iter().zip(&forbidden).all(|(l, f)| !f.contains(l));
        if valid {
            visit(&links);
        }
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            links.0[i] += 1;
            if links.0[i] <= n {
                break;
            }
            links.0[i] = 1;
        }
    }
}

/// Default largest `n` for [`count_valid_pairs`].
pub const VALID_PAIRS_BOUND: usize = 7;

/// Number of valid `(S, x)` pairs with `m` blocks over `[n]`, by exhaustive
/// generation.
pub fn count_valid_pairs(n: usize, m: usize, bound: usize, exec: Execution) -> Result<BigUint> {
    if n > bound {
        return Err(Error::SizeTooLarge { n, bound });
    }
    if n == 0 || m == 0 || m > n {
        return Err(Error::InvalidArgument { n, m });
    }
    let partitions = set_partitions(n, m);
    let counts = exec.map_chunks(partitions.len(), |i| {
        let mut c = 0u64;
        for_each_valid_links(&partitions[i], |_| c += 1);
        c
    });
    Ok(counts.into_iter().map(BigUint::from).sum())
}
