use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::apta::Apta;
use super::sample::Label;
use crate::Exec;

/// Inconsistency graph over APTA nodes: `(v, w)` is an edge iff merging
/// `v` and `w` (and, transitively, every pair of same-symbol successors the
/// merge forces together) puts an accepting and a rejecting node into one
/// state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyGraph {
    adjacency: Vec<FixedBitSet>,
    edges: Vec<(usize, usize)>,
}

impl ConsistencyGraph {
    pub fn build(apta: &Apta) -> Self {
        Self::build_with(apta, Exec::default())
    }

    pub fn build_with(apta: &Apta, exec: Exec) -> Self {
        let n = apta.len();
        let (tin, tout) = apta.euler_times();
        let is_ancestor = |v: usize, w: usize| tin[v] <= tin[w] && tout[w] <= tout[v];

        // rows[v] holds conflict(v, w) for w > v. A pair of nodes in disjoint
        // subtrees only ever merges pairwise, so its verdict follows from the
        // verdicts of its children pairs, which have strictly larger indices.
        // Ancestor pairs fold the tree onto itself and need the full closure.
        let mut rows: Vec<FixedBitSet> = vec![FixedBitSet::new(); n];
        for v in (0..n).rev() {
            let computed = {
                let rows = &rows;
                exec.map_range(v + 1..n, |w| {
                    if is_ancestor(v, w) {
                        merge_conflicts(apta, v, w)
                    } else {
                        label_clash(apta, v, w)
                            || (0..apta.symbols()).any(|s| {
                                match (apta.child(v, s), apta.child(w, s)) {
                                    (Some(a), Some(b)) => {
                                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                                        rows[lo].contains(hi)
                                    }
                                    _ => false,
                                }
                            })
                    }
                })
            };
            let mut row = FixedBitSet::with_capacity(n);
            for (offset, conflict) in computed.into_iter().enumerate() {
                if conflict {
                    row.insert(v + 1 + offset);
                }
            }
            rows[v] = row;
        }

        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        let mut edges = Vec::new();
        for v in 0..n {
            for w in rows[v].ones() {
                edges.push((v, w));
                adjacency[v].insert(w);
                adjacency[w].insert(v);
            }
        }
        ConsistencyGraph { adjacency, edges }
    }

    /// Graph with explicitly given edges; mostly useful for tests.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adjacency = vec![FixedBitSet::with_capacity(n); n];
        let mut list = Vec::new();
        for &(a, b) in edges {
            assert!(a != b, "consistency graphs are irreflexive");
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            if !adjacency[a].contains(b) {
                adjacency[a].insert(b);
                adjacency[b].insert(a);
                list.push((a, b));
            }
        }
        list.sort_unstable();
        ConsistencyGraph {
            adjacency,
            edges: list,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(v, w)` with `v < w`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, v: usize, w: usize) -> bool {
        self.adjacency[v].contains(w)
    }

    pub fn neighbours(&self, v: usize) -> &FixedBitSet {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].count_ones(..)
    }
}

fn label_clash(apta: &Apta, v: usize, w: usize) -> bool {
    matches!(
        (apta.label(v), apta.label(w)),
        (Some(a), Some(b)) if a != b
    )
}

/// Union-find closure of merging `v` and `w`, touching only the nodes the
/// merge reaches.
fn merge_conflicts(apta: &Apta, v: usize, w: usize) -> bool {
    struct Class {
        label: Option<Label>,
        children: Vec<Option<usize>>,
    }
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut classes: HashMap<usize, Class> = HashMap::new();

    fn find(parent: &mut HashMap<usize, usize>, mut x: usize) -> usize {
        let mut path = Vec::new();
        while let Some(&p) = parent.get(&x) {
            if p == x {
                break;
            }
            path.push(x);
            x = p;
        }
        for y in path {
            parent.insert(y, x);
        }
        x
    }

    let mut queue = vec![(v, w)];
    while let Some((a, b)) = queue.pop() {
        let ra = find(&mut parent, a);
        let rb = find(&mut parent, b);
        if ra == rb {
            continue;
        }
        for r in [ra, rb] {
            classes.entry(r).or_insert_with(|| Class {
                label: apta.label(r),
                children: apta.node(r).children.clone(),
            });
        }
        let cb = classes.remove(&rb).expect("class initialised above");
        let ca = classes.get_mut(&ra).expect("class initialised above");
        match (ca.label, cb.label) {
            (Some(x), Some(y)) if x != y => return true,
            (None, Some(y)) => ca.label = Some(y),
            _ => {}
        }
        for (s, kb) in cb.children.into_iter().enumerate() {
            match (ca.children[s], kb) {
                (Some(ka), Some(kb)) => queue.push((ka, kb)),
                (None, Some(kb)) => ca.children[s] = Some(kb),
                _ => {}
            }
        }
        parent.insert(rb, ra);
        parent.entry(ra).or_insert(ra);
    }
    false
}

/// Greedy clique: repeatedly take the candidate with the most neighbours
/// among the remaining candidates (lowest index on ties), then restrict the
/// candidates to its neighbourhood. The result is sorted by node index.
pub fn find_greedy_clique(cg: &ConsistencyGraph) -> Vec<usize> {
    let n = cg.node_count();
    let mut candidates = FixedBitSet::with_capacity(n);
    candidates.insert_range(..);
    let mut clique = Vec::new();
    while !candidates.is_clear() {
        let mut best: Option<(usize, usize)> = None;
        for v in candidates.ones() {
            let degree = cg.neighbours(v).intersection(&candidates).count();
            if best.is_none_or(|(_, d)| degree > d) {
                best = Some((v, degree));
            }
        }
        let (v, _) = best.expect("candidate set is non-empty");
        clique.push(v);
        candidates.intersect_with(cg.neighbours(v));
    }
    clique.sort_unstable();
    clique
}
