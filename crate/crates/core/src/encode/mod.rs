//! CNF encodings of DFA identification.
//!
//! Colours are zero-based here; colour `i` is state `i + 1` in printed output.
//! Variables are laid out family by family (`x`, `z`, `y`, then the noisy,
//! symmetry-breaking and loop-forcing families when present) so that every
//! literal is computed arithmetically rather than looked up.

mod exact;
mod loops;
mod noisy;
mod sbp;

use std::fmt;
use std::str::FromStr;

use crate::automata::{Alphabet, Dfa};
use crate::cnf::{CnfFormula, Lit, Var, VarKey, VariableRegistry};
use crate::sat::Model;
use crate::{Error, Result};

/// How isomorphic solutions are pruned.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SbpStrategy {
    #[default]
    None,
    /// Fix the colours of a greedy clique of the consistency graph.
    Clique,
    Dfs,
    Bfs,
}

impl SbpStrategy {
    pub const ALL: [SbpStrategy; 4] = [SbpStrategy::None, SbpStrategy::Clique, SbpStrategy::Dfs, SbpStrategy::Bfs];

    pub fn order(self) -> Option<crate::Order> {
        match self {
            SbpStrategy::Dfs => Some(crate::Order::Dfs),
            SbpStrategy::Bfs => Some(crate::Order::Bfs),
            _ => None,
        }
    }
}

impl FromStr for SbpStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(SbpStrategy::None),
            "clique" => Ok(SbpStrategy::Clique),
            "dfs" => Ok(SbpStrategy::Dfs),
            "bfs" => Ok(SbpStrategy::Bfs),
            _ => Err(Error::Parameter(format!("unknown strategy `{s}`"))),
        }
    }
}

impl fmt::Display for SbpStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SbpStrategy::None => "none",
            SbpStrategy::Clique => "clique",
            SbpStrategy::Dfs => "dfs",
            SbpStrategy::Bfs => "bfs",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodeOptions {
    pub strategy: SbpStrategy,
    /// Emit the at-most-one-colour, at-least-one-target and colour
    /// propagation families, which are implied by the rest.
    pub redundant: bool,
    pub loop_forcing: bool,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            strategy: SbpStrategy::None,
            redundant: true,
            loop_forcing: false,
        }
    }
}

impl EncodeOptions {
    pub fn with_strategy(strategy: SbpStrategy) -> Self {
        EncodeOptions {
            strategy,
            ..Self::default()
        }
    }
}

macro_rules! rows {
    ($($(#[$doc:meta])* $name:ident),* $(,)?) => {
        /// Clause families, used to tally what an encoding emitted.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Row {
            $($(#[$doc])* $name),*
        }

        impl Row {
            pub const ALL: &'static [Row] = &[$(Row::$name),*];
        }
    };
}

rows! {
    /// `¬x(v,i) ∨ z(i)` for accepting nodes (plus `f(v)` when noisy).
    AcceptingColor,
    /// `¬x(v,i) ∨ ¬z(i)` for rejecting nodes (plus `f(v)` when noisy).
    RejectingColor,
    AtLeastOneColor,
    /// `y(l(v),i,j) ∨ ¬x(p(v),i) ∨ ¬x(v,j)`.
    ParentTransition,
    AtMostOneTarget,
    AtMostOneColor,
    AtLeastOneTarget,
    /// `¬y(l(v),i,j) ∨ ¬x(p(v),i) ∨ x(v,j)`.
    TransitionColor,
    ConflictingColors,
    CliqueColor,
    RootColor,
    FlipToSlots,
    SlotToFlip,
    SlotToOrder,
    SlotToNextOrder,
    OrderToSlot,
    LastSlot,
    LastNodeOnlyInLastSlot,
    OrderMonotone,
    OrderIncreasing,
    LinkToTransitions,
    TransitionToLink,
    ParentToLink,
    ParentExists,
    MinToTransition,
    MinExcludesSmaller,
    TransitionToMin,
    DfsParentIsLast,
    DfsParentDefinition,
    DfsParentOrder,
    DfsSiblingOrder,
    DfsEarlierSymbolFirst,
    BfsParentIsFirst,
    BfsParentDefinition,
    BfsParentOrder,
    BfsSiblingOrder,
    UsedToColors,
    ColorToUsed,
    UnusedLoop,
}

#[derive(Clone, Debug)]
struct NoisyBlock {
    budget: usize,
    labeled: Vec<usize>,
    position: Vec<Option<usize>>,
    f0: u32,
    r0: u32,
    o0: u32,
}

#[derive(Clone, Copy, Debug)]
struct SbpBlock {
    t0: u32,
    p0: u32,
    m0: Option<u32>,
}

/// Index of the pair `i < j` in row-major upper-triangle order.
fn tri(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// Decoded automaton plus the state each solver colour became.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub dfa: Dfa,
    /// `state_of_color[c]` is the DFA state of colour `c`.
    pub state_of_color: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Encoding {
    registry: VariableRegistry,
    formula: CnfFormula,
    tally: Vec<usize>,
    alphabet: Alphabet,
    nodes: usize,
    colors: usize,
    options: EncodeOptions,
    clique: Vec<usize>,
    x0: u32,
    z0: u32,
    y0: u32,
    noisy: Option<NoisyBlock>,
    sbp: Option<SbpBlock>,
    u0: Option<u32>,
}

impl Encoding {
    fn empty(alphabet: Alphabet, nodes: usize, colors: usize, options: EncodeOptions) -> Result<Encoding> {
        if colors == 0 {
            return Err(Error::Parameter("at least one colour is needed".into()));
        }
        let mut enc = Encoding {
            registry: VariableRegistry::new(),
            formula: CnfFormula::new(),
            tally: vec![0; Row::ALL.len()],
            alphabet,
            nodes,
            colors,
            options,
            clique: Vec::new(),
            x0: 0,
            z0: 0,
            y0: 0,
            noisy: None,
            sbp: None,
            u0: None,
        };
        enc.x0 = enc.next_var();
        for node in 0..nodes {
            for color in 0..colors {
                enc.alloc(VarKey::Color { node, color });
            }
        }
        enc.z0 = enc.next_var();
        for color in 0..colors {
            enc.alloc(VarKey::Accepting { color });
        }
        enc.y0 = enc.next_var();
        for symbol in 0..enc.symbols() {
            for from in 0..colors {
                for to in 0..colors {
                    enc.alloc(VarKey::Transition { symbol, from, to });
                }
            }
        }
        Ok(enc)
    }

    fn next_var(&self) -> u32 {
        self.registry.len() as u32 + 1
    }

    fn alloc(&mut self, key: VarKey) -> Var {
        let v = self.registry.new_var(key).expect("encoder keys are unique");
        self.formula.reserve_vars(v.index());
        v
    }

    fn emit(&mut self, row: Row, clause: &[Lit]) {
        self.formula
            .add_clause(clause)
            .expect("encoder literals are allocated before use");
        self.tally[row as usize] += 1;
    }

    pub fn formula(&self) -> &CnfFormula {
        &self.formula
    }

    pub fn into_formula(self) -> CnfFormula {
        self.formula
    }

    /// Moves the clauses out, leaving what decoding needs.
    pub fn take_formula(&mut self) -> CnfFormula {
        std::mem::take(&mut self.formula)
    }

    pub fn registry(&self) -> &VariableRegistry {
        &self.registry
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn options(&self) -> EncodeOptions {
        self.options
    }

    /// Clique nodes whose colours were fixed, in colour order.
    pub fn clique(&self) -> &[usize] {
        &self.clique
    }

    pub fn budget(&self) -> Option<usize> {
        self.noisy.as_ref().map(|n| n.budget)
    }

    pub fn num_clauses(&self) -> usize {
        self.formula.num_clauses()
    }

    /// Number of clauses emitted for one family.
    pub fn count(&self, row: Row) -> usize {
        self.tally[row as usize]
    }

    pub fn x(&self, node: usize, color: usize) -> Var {
        debug_assert!(node < self.nodes && color < self.colors);
        Var::new(self.x0 + (node * self.colors + color) as u32)
    }

    pub fn z(&self, color: usize) -> Var {
        Var::new(self.z0 + color as u32)
    }

    pub fn y(&self, symbol: usize, from: usize, to: usize) -> Var {
        Var::new(self.y0 + ((symbol * self.colors + from) * self.colors + to) as u32)
    }

    /// Flip variable of an APTA node; `None` outside noisy mode or for
    /// unlabeled nodes.
    pub fn f(&self, node: usize) -> Option<Var> {
        let n = self.noisy.as_ref()?;
        let w = (*n.position.get(node)?)?;
        (n.budget > 0).then(|| Var::new(n.f0 + w as u32))
    }

    fn f_at(&self, w: usize) -> Var {
        Var::new(self.noisy.as_ref().unwrap().f0 + w as u32)
    }

    /// Slot variable `r(slot, v_w)` by labeled-node position `w`.
    fn r_at(&self, slot: usize, w: usize) -> Var {
        let n = self.noisy.as_ref().unwrap();
        Var::new(n.r0 + (slot * n.labeled.len() + w) as u32)
    }

    fn o_at(&self, slot: usize, w: usize) -> Var {
        let n = self.noisy.as_ref().unwrap();
        Var::new(n.o0 + (slot * n.labeled.len() + w) as u32)
    }

    fn t(&self, from: usize, to: usize) -> Var {
        Var::new(self.sbp.unwrap().t0 + tri(from, to) as u32)
    }

    fn p(&self, child: usize, parent: usize) -> Var {
        Var::new(self.sbp.unwrap().p0 + tri(parent, child) as u32)
    }

    fn m(&self, symbol: usize, from: usize, to: usize) -> Var {
        let pairs = self.colors * (self.colors - 1) / 2;
        Var::new(self.sbp.unwrap().m0.unwrap() + (symbol * pairs + tri(from, to)) as u32)
    }

    fn u(&self, symbol: usize, color: usize) -> Var {
        Var::new(self.u0.unwrap() + (symbol * self.colors + color) as u32)
    }

    pub fn decode(&self, model: &Model) -> Result<Decoded> {
        let (c, l) = (self.colors, self.symbols());
        let root = (0..c)
            .find(|&i| model.value(self.x(0, i)))
            .ok_or_else(|| Error::MalformedModel("root has no colour".into()))?;
        let mut state_of_color: Vec<usize> = (0..c).collect();
        state_of_color.swap(0, root);
        let mut delta = vec![0; c * l];
        let mut accepting = vec![false; c];
        for i in 0..c {
            for s in 0..l {
                let mut targets = (0..c).filter(|&j| model.value(self.y(s, i, j)));
                let j = targets.next().ok_or_else(|| {
                    Error::MalformedModel(format!("no transition from colour {} on symbol {s}", i + 1))
                })?;
                if targets.next().is_some() {
                    return Err(Error::MalformedModel(format!(
                        "several transitions from colour {} on symbol {s}",
                        i + 1
                    )));
                }
                delta[state_of_color[i] * l + s] = state_of_color[j];
            }
            accepting[state_of_color[i]] = model.value(self.z(i));
        }
        Ok(Decoded {
            dfa: Dfa::new(self.alphabet.clone(), c, delta, accepting)?,
            state_of_color,
        })
    }

    /// Labeled nodes whose flip variable is true, in index order.
    pub fn decode_flips(&self, model: &Model) -> Vec<usize> {
        match &self.noisy {
            Some(n) if n.budget > 0 => (0..n.labeled.len())
                .filter(|&w| model.value(self.f_at(w)))
                .map(|w| n.labeled[w])
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Negation of every transition literal of a decoded automaton, over
    /// the colours the model used.
    pub fn blocking_clause(&self, decoded: &Decoded) -> Vec<Lit> {
        let (c, l) = (self.colors, self.symbols());
        let mut color_of_state = vec![0; c];
        for (color, &state) in decoded.state_of_color.iter().enumerate() {
            color_of_state[state] = color;
        }
        let mut clause = Vec::with_capacity(c * l);
        for i in 0..c {
            for s in 0..l {
                let target = decoded.dfa.next(decoded.state_of_color[i], s);
                clause.push(self.y(s, i, color_of_state[target]).neg());
            }
        }
        clause
    }

    /// Transition and acceptance variables, the part of a model that
    /// determines the automaton once the root colour is fixed.
    pub fn projection_vars(&self) -> Vec<Var> {
        let (c, l) = (self.colors, self.symbols());
        let mut vars: Vec<Var> = (0..c).map(|i| self.z(i)).collect();
        vars.extend((0..l).flat_map(|s| (0..c).flat_map(move |i| (0..c).map(move |j| (s, i, j)))).map(|(s, i, j)| self.y(s, i, j)));
        vars.extend((0..c).map(|i| self.x(0, i)));
        vars
    }
}
