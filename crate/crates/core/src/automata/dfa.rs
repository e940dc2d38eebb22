use std::collections::VecDeque;

use super::sample::{Alphabet, Label, Sample};
use crate::{Error, Result};

/// Traversal order that defines a canonical state numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Order {
    Bfs,
    Dfs,
}

/// Complete DFA. States are `0..size` with start state 0 (printed as 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Alphabet,
    size: usize,
    delta: Vec<usize>,
    accepting: Vec<bool>,
}

impl Dfa {
    /// `delta[state * |alphabet| + symbol]` is the successor state.
    pub fn new(alphabet: Alphabet, size: usize, delta: Vec<usize>, accepting: Vec<bool>) -> Result<Dfa> {
        if size == 0 {
            return Err(Error::Parameter("a DFA needs at least one state".into()));
        }
        if delta.len() != size * alphabet.len() || accepting.len() != size {
            return Err(Error::Parameter(format!(
                "transition table of {} entries and {} labels do not fit {} states over {} symbols",
                delta.len(),
                accepting.len(),
                size,
                alphabet.len()
            )));
        }
        if let Some(&t) = delta.iter().find(|&&t| t >= size) {
            return Err(Error::Parameter(format!("transition target {t} out of range")));
        }
        Ok(Dfa {
            alphabet,
            size,
            delta,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.delta[state * self.symbols() + symbol]
    }

    pub fn table(&self) -> &[usize] {
        &self.delta
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting(&self) -> &[bool] {
        &self.accepting
    }

    pub fn run(&self, word: &[usize]) -> usize {
        word.iter().fold(0, |q, &s| self.next(q, s))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting[self.run(word)]
    }

    /// Like [`Dfa::accepts`] but for raw symbols; unknown symbols are an error.
    pub fn accepts_symbols<S: AsRef<str>>(&self, word: &[S]) -> Result<bool> {
        Ok(self.accepts(&self.alphabet.encode(word)?))
    }

    /// Number of sample strings whose label disagrees with this automaton.
    pub fn misclassified(&self, sample: &Sample) -> usize {
        sample
            .entries()
            .iter()
            .filter(|(w, l)| self.accepts(w) != l.is_accept())
            .count()
    }

    /// True iff at most `flips` sample labels disagree with the automaton.
    pub fn consistent(&self, sample: &Sample, flips: usize) -> bool {
        self.misclassified(sample) <= flips
    }

    pub fn label_of(&self, word: &[usize]) -> Label {
        Label::from_accepting(self.accepts(word))
    }

    /// Order in which `order` traversal from the start state discovers
    /// states, children expanded in alphabet order.
    pub fn traversal(&self, order: Order) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut visit = Vec::with_capacity(self.size);
        seen[0] = true;
        visit.push(0);
        match order {
            Order::Bfs => {
                let mut queue = VecDeque::from([0]);
                while let Some(q) = queue.pop_front() {
                    for s in 0..self.symbols() {
                        let t = self.next(q, s);
                        if !seen[t] {
                            seen[t] = true;
                            visit.push(t);
                            queue.push_back(t);
                        }
                    }
                }
            }
            Order::Dfs => {
                // Explicit stack of (state, next symbol to examine).
                let mut stack = vec![(0usize, 0usize)];
                while let Some(top) = stack.last_mut() {
                    let (q, s) = *top;
                    if s == self.symbols() {
                        stack.pop();
                        continue;
                    }
                    top.1 += 1;
                    let t = self.next(q, s);
                    if !seen[t] {
                        seen[t] = true;
                        visit.push(t);
                        stack.push((t, 0));
                    }
                }
            }
        }
        visit
    }

    pub fn is_reachable(&self) -> bool {
        self.traversal(Order::Bfs).len() == self.size
    }

    /// Number of states of the minimal automaton for the same language,
    /// by Moore partition refinement over the reachable states.
    pub fn minimized_size(&self) -> usize {
        let reachable = self.traversal(Order::Bfs);
        let l = self.symbols();
        let mut class = vec![usize::MAX; self.size];
        for &q in &reachable {
            class[q] = usize::from(self.accepting[q]);
        }
        let mut count = reachable
            .iter()
            .map(|&q| class[q])
            .collect::<std::collections::HashSet<_>>()
            .len();
        loop {
            let mut ids = std::collections::HashMap::new();
            let mut next = vec![usize::MAX; self.size];
            for &q in &reachable {
                let signature: Vec<usize> = std::iter::once(class[q])
                    .chain((0..l).map(|s| class[self.next(q, s)]))
                    .collect();
                let fresh = ids.len();
                next[q] = *ids.entry(signature).or_insert(fresh);
            }
            let refined = ids.len();
            class = next;
            if refined == count {
                return count;
            }
            count = refined;
        }
    }

    /// True iff every state is reachable and the traversal discovers states
    /// in numeric order.
    pub fn is_canonical(&self, order: Order) -> bool {
        let visit = self.traversal(order);
        visit.len() == self.size && visit.iter().enumerate().all(|(i, &q)| i == q)
    }

    /// Renumbers states in traversal order.
    pub fn canonicalize(&self, order: Order) -> Result<Dfa> {
        let visit = self.traversal(order);
        if visit.len() != self.size {
            let state = (0..self.size).find(|q| !visit.contains(q)).unwrap_or(0);
            return Err(Error::Unreachable { state: state + 1 });
        }
        let mut rank = vec![0; self.size];
        for (i, &q) in visit.iter().enumerate() {
            rank[q] = i;
        }
        Ok(self.permuted(&visit, &rank))
    }

    /// Automaton whose state `i` is old state `order[i]`.
    fn permuted(&self, order: &[usize], rank: &[usize]) -> Dfa {
        let l = self.symbols();
        let mut delta = vec![0; self.delta.len()];
        let mut accepting = vec![false; self.size];
        for (i, &q) in order.iter().enumerate() {
            accepting[i] = self.accepting[q];
            for s in 0..l {
                delta[i * l + s] = rank[self.next(q, s)];
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            size: self.size,
            delta,
            accepting,
        }
    }

    /// Applies a state renaming; `rename[old] = new`. `rename[0]` must be 0.
    pub fn renamed(&self, rename: &[usize]) -> Result<Dfa> {
        let mut order = vec![usize::MAX; self.size];
        for (old, &new) in rename.iter().enumerate() {
            if new >= self.size || order[new] != usize::MAX {
                return Err(Error::Parameter("renaming is not a permutation".into()));
            }
            order[new] = old;
        }
        if rename.len() != self.size || rename[0] != 0 {
            return Err(Error::Parameter("renaming must fix the start state".into()));
        }
        Ok(self.permuted(&order, rename))
    }

    /// Isomorphism fixing the start state. Reachable parts are matched by
    /// simultaneous traversal; unreachable leftovers by backtracking.
    pub fn isomorphic(&self, other: &Dfa) -> bool {
        if self.size != other.size || self.alphabet != other.alphabet {
            return false;
        }
        let mut map = vec![usize::MAX; self.size];
        let mut used = vec![false; self.size];
        self.extend_iso(other, &mut map, &mut used, 0, 0)
    }

    fn extend_iso(&self, other: &Dfa, map: &mut [usize], used: &mut [bool], a: usize, b: usize) -> bool {
        let mut assigned = Vec::new();
        let ok = self.propagate_iso(other, map, used, a, b, &mut assigned);
        if ok {
            match (0..self.size).find(|&q| map[q] == usize::MAX) {
                None => return true,
                Some(q) => {
                    for t in 0..self.size {
                        if !used[t] && self.extend_iso(other, map, used, q, t) {
                            return true;
                        }
                    }
                }
            }
        }
        for q in assigned {
            used[map[q]] = false;
            map[q] = usize::MAX;
        }
        false
    }

    fn propagate_iso(
        &self,
        other: &Dfa,
        map: &mut [usize],
        used: &mut [bool],
        a: usize,
        b: usize,
        assigned: &mut Vec<usize>,
    ) -> bool {
        let mut work = vec![(a, b)];
        while let Some((p, q)) = work.pop() {
            if map[p] != usize::MAX {
                if map[p] != q {
                    return false;
                }
                continue;
            }
            if used[q] || self.accepting[p] != other.accepting[q] {
                return false;
            }
            map[p] = q;
            used[q] = true;
            assigned.push(p);
            for s in 0..self.symbols() {
                work.push((self.next(p, s), other.next(q, s)));
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    /// Three-state automaton for S+ = {ab, b, ba, bbb}, S- = {abbb, baba}
    /// with 1 -a-> 3 and 1 -b-> 2 (one-based).
    pub(crate) fn running_example() -> Dfa {
        Dfa::new(ab(), 3, vec![2, 1, 1, 2, 2, 0], vec![true, true, false]).unwrap()
    }

    #[test]
    fn running_example_is_consistent_but_not_canonical() {
        let d = running_example();
        let s = Sample::from_strs(&["ab", "b", "ba", "bbb"], &["abbb", "baba"]).unwrap();
        assert!(d.accepts_symbols(&["b"]).unwrap());
        assert!(d.consistent(&s, 0));
        assert!(!d.is_canonical(Order::Dfs));
        assert!(!d.is_canonical(Order::Bfs));
        let c = d.canonicalize(Order::Bfs).unwrap();
        assert!(c.is_canonical(Order::Bfs));
        assert!(c.isomorphic(&d));
        assert_eq!(c, d.renamed(&[0, 2, 1]).unwrap());
    }

    #[test]
    fn accepts_basics() {
        let one = Dfa::new(ab(), 1, vec![0, 0], vec![true]).unwrap();
        assert!(one.accepts(&[0, 1, 1, 0]));
        assert!(one.accepts(&[]));
        let d = running_example();
        assert_eq!(d.accepts(&[]), d.is_accepting(0));
        assert!(matches!(
            d.accepts_symbols(&["c"]),
            Err(Error::UnknownSymbol { .. })
        ));
    }

    #[test]
    fn consistency_counts_misclassifications() {
        // accepts exactly the words ending in b
        let d = Dfa::new(ab(), 2, vec![0, 1, 0, 1], vec![false, true]).unwrap();
        let s = Sample::from_strs_with(ab(), &["b", "ab", "a"], &["aa", "bb"]).unwrap();
        assert_eq!(d.misclassified(&s), 2);
        assert!(!d.consistent(&s, 1));
        assert!(d.consistent(&s, 2));
        assert!(d.consistent(&Sample::empty(ab()), 0));
    }

    #[test]
    fn canonical_three_states() {
        let good = Dfa::new(ab(), 3, vec![1, 2, 1, 1, 2, 2], vec![false; 3]).unwrap();
        assert!(good.is_canonical(Order::Bfs));
        assert!(good.is_canonical(Order::Dfs));
        let bad = Dfa::new(ab(), 3, vec![2, 1, 1, 1, 2, 2], vec![false; 3]).unwrap();
        assert!(!bad.is_canonical(Order::Bfs));
        assert!(!bad.is_canonical(Order::Dfs));
        assert!(good.isomorphic(&bad));
        let one = Dfa::new(ab(), 1, vec![0, 0], vec![false]).unwrap();
        assert!(one.is_canonical(Order::Bfs) && one.is_canonical(Order::Dfs));
        assert_eq!(one.canonicalize(Order::Bfs).unwrap(), one);
    }

    #[test]
    fn dfs_and_bfs_orders_differ() {
        // 0 -a-> 1, 0 -b-> 2, 1 -a-> 3: DFS visits 0 1 3 2, BFS 0 1 2 3.
        let d = Dfa::new(ab(), 4, vec![1, 2, 3, 1, 2, 2, 3, 3], vec![false; 4]).unwrap();
        assert_eq!(d.traversal(Order::Dfs), vec![0, 1, 3, 2]);
        assert_eq!(d.traversal(Order::Bfs), vec![0, 1, 2, 3]);
        let c = d.canonicalize(Order::Dfs).unwrap();
        assert!(c.is_canonical(Order::Dfs));
        assert!(c.isomorphic(&d));
    }

    #[test]
    fn unreachable_states() {
        let d = Dfa::new(ab(), 2, vec![0, 0, 1, 1], vec![false, true]).unwrap();
        assert!(!d.is_canonical(Order::Bfs));
        assert!(matches!(d.canonicalize(Order::Bfs), Err(Error::Unreachable { state: 2 })));
        let e = Dfa::new(ab(), 2, vec![0, 0, 1, 1], vec![false, false]).unwrap();
        assert!(!d.isomorphic(&e));
        assert!(d.isomorphic(&d.clone()));
    }

    #[test]
    fn two_states_isomorphic_only_if_equal() {
        let a = Dfa::new(ab(), 2, vec![1, 0, 1, 1], vec![false, true]).unwrap();
        let b = Dfa::new(ab(), 2, vec![1, 1, 1, 1], vec![false, true]).unwrap();
        assert!(a.isomorphic(&a));
        assert!(!a.isomorphic(&b));
    }

    #[test]
    fn renaming_round_trip() {
        let d = running_example();
        let r = d.renamed(&[0, 2, 1]).unwrap();
        assert!(r.isomorphic(&d));
        assert_eq!(r.renamed(&[0, 2, 1]).unwrap(), d);
        assert!(d.renamed(&[1, 0, 2]).is_err());
    }

    #[test]
    fn minimized_size_merges_equivalent_states() {
        assert_eq!(running_example().minimized_size(), 3);
        // States 1 and 2 both accept everything.
        let d = Dfa::new(ab(), 3, vec![1, 2, 1, 1, 2, 2], vec![false, true, true]).unwrap();
        assert_eq!(d.minimized_size(), 2);
        let unreachable = Dfa::new(ab(), 3, vec![0, 0, 1, 2, 2, 2], vec![true, false, false]).unwrap();
        assert_eq!(unreachable.minimized_size(), 1);
    }
}
