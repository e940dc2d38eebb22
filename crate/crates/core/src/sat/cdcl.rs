//! Conflict-driven clause learning solver.
//!
//! Internal literals are `2 * var + sign` with zero-based variables; the
//! public surface speaks [`Lit`]. Binary clauses live only in the watch
//! lists. Longer clauses are stored back to back in a `u32` arena behind a
//! two-word header (size, then `lbd << 2 | learnt | deleted`).

use std::cmp::Ordering;
use std::time::Instant;

use crate::cnf::{CnfFormula, Lit};

const UNDEF: u8 = 2;
const NO_REASON: u32 = u32::MAX;
const BINARY_TAG: u32 = 1 << 31;
const HEADER: usize = 2;
const LEARNT: u32 = 1;
const DELETED: u32 = 2;

#[inline]
fn var_of(lit: u32) -> usize {
    (lit >> 1) as usize
}

#[inline]
fn to_internal(lit: Lit) -> u32 {
    let v = lit.var().index() - 1;
    2 * v + u32::from(!lit.is_positive())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Sat,
    Unsat,
    Unknown,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub restarts: u64,
    pub reductions: u64,
}

#[derive(Clone, Copy)]
struct Watch {
    cref: u32,
    blocker: u32,
}

const BINARY_WATCH: u32 = u32::MAX;

enum Conflict {
    Long(u32),
    Binary(u32, u32),
}

#[derive(Default)]
struct VarHeap {
    heap: Vec<u32>,
    pos: Vec<u32>,
}

const NOT_IN_HEAP: u32 = u32::MAX;

impl VarHeap {
    fn grow(&mut self, n: usize) {
        self.pos.resize(n, NOT_IN_HEAP);
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v] != NOT_IN_HEAP
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v] = self.heap.len() as u32;
        self.heap.push(v as u32);
        self.up(self.heap.len() - 1, act);
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            self.up(self.pos[v] as usize, act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = NOT_IN_HEAP;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.down(0, act);
        }
        Some(top as usize)
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let parent = (i - 1) / 2;
            let pv = self.heap[parent];
            if act[pv as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = pv;
            self.pos[pv as usize] = i as u32;
            i = parent;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as u32;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        let n = self.heap.len();
        loop {
            let left = 2 * i + 1;
            if left >= n {
                break;
            }
            let right = left + 1;
            let child = if right < n && act[self.heap[right] as usize] > act[self.heap[left] as usize] {
                right
            } else {
                left
            };
            let cv = self.heap[child];
            if act[cv as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = cv;
            self.pos[cv as usize] = i as u32;
            i = child;
        }
        self.heap[i] = v;
        self.pos[v as usize] = i as u32;
    }
}

/// Finite Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}

pub struct Solver {
    num_vars: usize,
    values: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    polarity: Vec<bool>,
    activity: Vec<f64>,
    var_inc: f64,
    heap: VarHeap,
    seen: Vec<bool>,
    watches: Vec<Vec<Watch>>,
    arena: Vec<u32>,
    originals: Vec<u32>,
    learnts: Vec<u32>,
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    unsat: bool,
    scratch: Vec<u32>,
    to_clear: Vec<u32>,
    level_stamp: Vec<u64>,
    stamp: u64,
    next_reduce: u64,
    reduce_step: u64,
    model: Vec<bool>,
    stats: Stats,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            num_vars: 0,
            values: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            polarity: Vec::new(),
            activity: Vec::new(),
            var_inc: 1.0,
            heap: VarHeap::default(),
            seen: Vec::new(),
            watches: Vec::new(),
            arena: Vec::new(),
            originals: Vec::new(),
            learnts: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            unsat: false,
            scratch: Vec::new(),
            to_clear: Vec::new(),
            level_stamp: vec![0],
            stamp: 0,
            next_reduce: 2000,
            reduce_step: 300,
            model: Vec::new(),
            stats: Stats::default(),
        }
    }

    pub fn from_formula(formula: &CnfFormula) -> Self {
        let mut s = Self::new();
        s.reserve_vars(formula.num_vars());
        for c in formula.clauses() {
            s.add_clause(c);
        }
        s
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn reserve_vars(&mut self, n: u32) {
        let n = n as usize;
        if n <= self.num_vars {
            return;
        }
        self.values.resize(2 * n, UNDEF);
        self.level.resize(n, 0);
        self.reason.resize(n, NO_REASON);
        self.polarity.resize(n, false);
        self.activity.resize(n, 0.0);
        self.seen.resize(n, false);
        self.watches.resize_with(2 * n, Vec::new);
        self.heap.grow(n);
        for v in self.num_vars..n {
            self.heap.insert(v, &self.activity);
        }
        self.level_stamp.resize(n + 1, 0);
        self.num_vars = n;
    }

    /// Adds a clause, growing the variable range as needed. Returns false
    /// once the formula is known to be unsatisfiable.
    pub fn add_clause(&mut self, clause: &[Lit]) -> bool {
        let max_var = clause.iter().map(|l| l.var().index()).max().unwrap_or(0);
        self.reserve_vars(max_var);
        if self.unsat {
            return false;
        }
        self.backtrack(0);

        let mut lits: Vec<u32> = clause.iter().map(|&l| to_internal(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return true;
        }
        if lits.iter().any(|&l| self.values[l as usize] == 1) {
            return true;
        }
        lits.retain(|&l| self.values[l as usize] == UNDEF);
        match lits.len() {
            0 => self.unsat = true,
            1 => {
                self.enqueue(lits[0], NO_REASON);
                if self.propagate().is_some() {
                    self.unsat = true;
                }
            }
            2 => self.attach_binary(lits[0], lits[1]),
            _ => {
                let cref = self.alloc(&lits, false, 0);
                self.originals.push(cref);
            }
        }
        !self.unsat
    }

    fn attach_binary(&mut self, a: u32, b: u32) {
        self.watches[(a ^ 1) as usize].push(Watch { cref: BINARY_WATCH, blocker: b });
        self.watches[(b ^ 1) as usize].push(Watch { cref: BINARY_WATCH, blocker: a });
    }

    fn alloc(&mut self, lits: &[u32], learnt: bool, lbd: u32) -> u32 {
        let cref = self.arena.len() as u32;
        assert!(cref < BINARY_TAG, "clause arena overflow");
        self.arena.push(lits.len() as u32);
        self.arena.push((lbd << 2) | if learnt { LEARNT } else { 0 });
        self.arena.extend_from_slice(lits);
        self.watches[(lits[0] ^ 1) as usize].push(Watch { cref, blocker: lits[1] });
        self.watches[(lits[1] ^ 1) as usize].push(Watch { cref, blocker: lits[0] });
        cref
    }

    #[inline]
    fn clause_len(&self, cref: u32) -> usize {
        self.arena[cref as usize] as usize
    }

    #[inline]
    fn lit_value(&self, lit: u32) -> u8 {
        self.values[lit as usize]
    }

    #[inline]
    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, lit: u32, reason: u32) {
        let v = var_of(lit);
        self.values[lit as usize] = 1;
        self.values[(lit ^ 1) as usize] = 0;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    fn propagate(&mut self) -> Option<Conflict> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[p as usize]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if self.lit_value(w.blocker) == 1 {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                if w.cref == BINARY_WATCH {
                    ws[j] = w;
                    j += 1;
                    if self.lit_value(w.blocker) == 0 {
                        conflict = Some(Conflict::Binary(w.blocker, false_lit));
                        break;
                    }
                    self.enqueue(w.blocker, BINARY_TAG | false_lit);
                    continue;
                }
                let c = w.cref as usize;
                let start = c + HEADER;
                if self.arena[start] == false_lit {
                    self.arena.swap(start, start + 1);
                }
                let first = self.arena[start];
                let w_new = Watch { cref: w.cref, blocker: first };
                if first != w.blocker && self.lit_value(first) == 1 {
                    ws[j] = w_new;
                    j += 1;
                    continue;
                }
                let len = self.arena[c] as usize;
                let mut moved = false;
                for k in 2..len {
                    let l = self.arena[start + k];
                    if self.lit_value(l) != 0 {
                        self.arena.swap(start + 1, start + k);
                        self.watches[(l ^ 1) as usize].push(w_new);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = w_new;
                j += 1;
                if self.lit_value(first) == 0 {
                    conflict = Some(Conflict::Long(w.cref));
                    break;
                }
                self.enqueue(first, w.cref);
            }
            while i < ws.len() {
                ws[j] = ws[i];
                i += 1;
                j += 1;
            }
            ws.truncate(j);
            self.watches[p as usize] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                break;
            }
        }
        conflict
    }

    /// Literals of a reason other than the implied one.
    fn reason_others(&self, reason: u32, out: &mut Vec<u32>) {
        out.clear();
        if reason & BINARY_TAG != 0 {
            out.push(reason & !BINARY_TAG);
        } else {
            let c = reason as usize;
            let len = self.arena[c] as usize;
            out.extend_from_slice(&self.arena[c + HEADER + 1..c + HEADER + len]);
        }
    }

    fn bump_var(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v, &self.activity);
    }

    fn analyze(&mut self, conflict: Conflict) -> (Vec<u32>, u32, u32) {
        let mut learnt = vec![0u32];
        let mut buf = std::mem::take(&mut self.scratch);
        buf.clear();
        match conflict {
            Conflict::Binary(a, b) => buf.extend_from_slice(&[a, b]),
            Conflict::Long(c) => {
                let len = self.clause_len(c);
                let s = c as usize + HEADER;
                buf.extend_from_slice(&self.arena[s..s + len]);
            }
        }
        let current = self.decision_level();
        let mut path = 0usize;
        let mut index = self.trail.len();
        let p = loop {
            for &q in &buf {
                let v = var_of(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.bump_var(v);
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var_of(self.trail[index])] {
                    break;
                }
            }
            let p = self.trail[index];
            let v = var_of(p);
            self.seen[v] = false;
            path -= 1;
            if path == 0 {
                break p;
            }
            self.reason_others(self.reason[v], &mut buf);
        };
        learnt[0] = p ^ 1;

        self.to_clear.clear();
        self.to_clear.extend_from_slice(&learnt);
        let abstract_levels = learnt[1..]
            .iter()
            .fold(0u32, |acc, &l| acc | (1 << (self.level[var_of(l)] & 31)));
        let mut kept = 1;
        for i in 1..learnt.len() {
            let l = learnt[i];
            if self.reason[var_of(l)] == NO_REASON || !self.redundant(l, abstract_levels, &mut buf) {
                learnt[kept] = l;
                kept += 1;
            }
        }
        learnt.truncate(kept);
        for &l in &self.to_clear {
            self.seen[var_of(l)] = false;
        }
        self.scratch = buf;

        let mut back = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[var_of(learnt[i])] > self.level[var_of(learnt[max_i])] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            back = self.level[var_of(learnt[1])];
        }

        self.stamp += 1;
        let mut lbd = 0;
        for &l in &learnt {
            let lv = self.level[var_of(l)] as usize;
            if self.level_stamp[lv] != self.stamp {
                self.level_stamp[lv] = self.stamp;
                lbd += 1;
            }
        }
        (learnt, back, lbd)
    }

    fn redundant(&mut self, lit: u32, abstract_levels: u32, buf: &mut Vec<u32>) -> bool {
        let top = self.to_clear.len();
        let mut stack = vec![lit];
        while let Some(q) = stack.pop() {
            self.reason_others(self.reason[var_of(q)], buf);
            for &l in buf.iter() {
                let v = var_of(l);
                if self.seen[v] || self.level[v] == 0 {
                    continue;
                }
                if self.reason[v] != NO_REASON && (1 << (self.level[v] & 31)) & abstract_levels != 0 {
                    self.seen[v] = true;
                    stack.push(l);
                    self.to_clear.push(l);
                } else {
                    for &c in &self.to_clear[top..] {
                        self.seen[var_of(c)] = false;
                    }
                    self.to_clear.truncate(top);
                    return false;
                }
            }
        }
        true
    }

    fn backtrack(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.trail_lim[level as usize];
        for i in (start..self.trail.len()).rev() {
            let lit = self.trail[i];
            let v = var_of(lit);
            self.values[lit as usize] = UNDEF;
            self.values[(lit ^ 1) as usize] = UNDEF;
            self.reason[v] = NO_REASON;
            self.polarity[v] = lit & 1 == 0;
            self.heap.insert(v, &self.activity);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(level as usize);
        self.qhead = start;
    }

    fn pick_branch(&mut self) -> Option<u32> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.values[2 * v] == UNDEF {
                return Some(2 * v as u32 + u32::from(!self.polarity[v]));
            }
        }
        None
    }

    fn locked(&self, cref: u32) -> bool {
        let first = self.arena[cref as usize + HEADER];
        self.lit_value(first) == 1 && self.reason[var_of(first)] == cref
    }

    fn reduce(&mut self) {
        self.stats.reductions += 1;
        let arena = &self.arena;
        let key = |c: &u32| {
            let c = *c as usize;
            (arena[c + 1] >> 2, arena[c])
        };
        self.learnts.sort_by(|a, b| match key(a).cmp(&key(b)) {
            Ordering::Equal => a.cmp(b),
            o => o,
        });
        let half = self.learnts.len() / 2;
        let mut kept = Vec::with_capacity(self.learnts.len());
        for (i, &c) in self.learnts.iter().enumerate() {
            let lbd = self.arena[c as usize + 1] >> 2;
            if i < half || lbd <= 2 || self.locked(c) {
                kept.push(c);
            } else {
                self.arena[c as usize + 1] |= DELETED;
            }
        }
        self.learnts = kept;
        self.collect_garbage();
    }

    fn collect_garbage(&mut self) {
        const MOVED: u32 = u32::MAX;
        let mut fresh = Vec::with_capacity(self.arena.len());
        for list in [&mut self.originals, &mut self.learnts] {
            for c in list.iter_mut() {
                let old = *c as usize;
                let len = self.arena[old] as usize;
                *c = fresh.len() as u32;
                fresh.extend_from_slice(&self.arena[old..old + HEADER + len]);
                self.arena[old] = MOVED;
                self.arena[old + 1] = *c;
            }
        }
        let arena = &self.arena;
        for ws in &mut self.watches {
            ws.retain_mut(|w| {
                if w.cref == BINARY_WATCH {
                    return true;
                }
                let old = w.cref as usize;
                if arena[old] != MOVED {
                    return false;
                }
                w.cref = arena[old + 1];
                true
            });
        }
        for &lit in &self.trail {
            let r = &mut self.reason[var_of(lit)];
            if *r != NO_REASON && *r & BINARY_TAG == 0 {
                debug_assert_eq!(arena[*r as usize], MOVED);
                *r = arena[*r as usize + 1];
            }
        }
        self.arena = fresh;
    }

    fn restart_limit(&self) -> u64 {
        luby(self.stats.restarts) * 100
    }

    /// Runs the search; `Unknown` means the deadline passed first.
    pub fn solve(&mut self, deadline: Option<Instant>) -> Outcome {
        if self.unsat {
            return Outcome::Unsat;
        }
        self.backtrack(0);
        if self.propagate().is_some() {
            self.unsat = true;
            return Outcome::Unsat;
        }
        if deadline.is_some_and(|d| Instant::now() >= d) {
            return Outcome::Unknown;
        }
        let mut conflicts_here = 0u64;
        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                conflicts_here += 1;
                if self.decision_level() == 0 {
                    self.unsat = true;
                    return Outcome::Unsat;
                }
                let (learnt, back, lbd) = self.analyze(conflict);
                self.backtrack(back);
                match learnt.len() {
                    1 => self.enqueue(learnt[0], NO_REASON),
                    2 => {
                        self.attach_binary(learnt[0], learnt[1]);
                        self.enqueue(learnt[0], BINARY_TAG | learnt[1]);
                    }
                    _ => {
                        let cref = self.alloc(&learnt, true, lbd);
                        self.learnts.push(cref);
                        self.enqueue(learnt[0], cref);
                    }
                }
                self.var_inc /= 0.95;
                if self.stats.conflicts % 256 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                    self.backtrack(0);
                    return Outcome::Unknown;
                }
                continue;
            }
            if conflicts_here >= self.restart_limit() {
                conflicts_here = 0;
                self.stats.restarts += 1;
                self.backtrack(0);
            }
            if self.stats.conflicts >= self.next_reduce {
                self.next_reduce = self.stats.conflicts + 2000 + self.reduce_step * self.stats.reductions;
                self.reduce();
            }
            match self.pick_branch() {
                None => {
                    self.model = (0..self.num_vars).map(|v| self.values[2 * v] == 1).collect();
                    self.backtrack(0);
                    return Outcome::Sat;
                }
                Some(lit) => {
                    self.stats.decisions += 1;
                    if self.stats.decisions % 1024 == 0 && deadline.is_some_and(|d| Instant::now() >= d) {
                        self.backtrack(0);
                        return Outcome::Unknown;
                    }
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(lit, NO_REASON);
                }
            }
        }
    }

    /// Value of every variable in the last model, 1-based (index 0 unused).
    pub fn model(&self) -> Vec<bool> {
        let mut m = Vec::with_capacity(self.model.len() + 1);
        m.push(false);
        m.extend_from_slice(&self.model);
        m.resize(self.num_vars + 1, false);
        m
    }
}
