use std::collections::HashMap;
use std::fmt;

use super::{CnfError, Var};

/// Name of a variable in one of the encoding families. Nodes, colours,
/// positions and symbols are zero-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKey {
    /// x: APTA node has colour.
    Color { node: usize, color: usize },
    /// y: transition on symbol from colour to colour.
    Transition { symbol: usize, from: usize, to: usize },
    /// z: colour is accepting.
    Accepting { color: usize },
    /// f: label of node may be wrong.
    Flip { node: usize },
    /// r: correction slot holds node.
    Slot { position: usize, node: usize },
    /// o: order-encoded correction slot reaches node.
    Order { position: usize, node: usize },
    /// p: `parent` is the traversal parent of `child`.
    Parent { child: usize, parent: usize },
    /// t: some transition from `from` to `to`.
    Link { from: usize, to: usize },
    /// m: `symbol` is the smallest symbol on transitions `from -> to`.
    MinSymbol { symbol: usize, from: usize, to: usize },
    /// u: some node of this colour has an outgoing edge on `symbol`.
    Used { symbol: usize, color: usize },
}

impl fmt::Display for VarKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            VarKey::Color { node, color } => write!(f, "x {node} {color}"),
            VarKey::Transition { symbol, from, to } => write!(f, "y {symbol} {from} {to}"),
            VarKey::Accepting { color } => write!(f, "z {color}"),
            VarKey::Flip { node } => write!(f, "f {node}"),
            VarKey::Slot { position, node } => write!(f, "r {position} {node}"),
            VarKey::Order { position, node } => write!(f, "o {position} {node}"),
            VarKey::Parent { child, parent } => write!(f, "p {child} {parent}"),
            VarKey::Link { from, to } => write!(f, "t {from} {to}"),
            VarKey::MinSymbol { symbol, from, to } => write!(f, "m {symbol} {from} {to}"),
            VarKey::Used { symbol, color } => write!(f, "u {symbol} {color}"),
        }
    }
}

/// Injective map from variable names to consecutive solver variables.
#[derive(Clone, Debug, Default)]
pub struct VariableRegistry {
    keys: Vec<VarKey>,
    index: HashMap<VarKey, Var>,
}

impl VariableRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn new_var(&mut self, key: VarKey) -> Result<Var, CnfError> {
        if self.index.contains_key(&key) {
            return Err(CnfError::DuplicateKey { key });
        }
        self.keys.push(key);
        let var = Var::new(self.keys.len() as u32);
        self.index.insert(key, var);
        Ok(var)
    }

    pub fn get(&self, key: &VarKey) -> Option<Var> {
        self.index.get(key).copied()
    }

    pub fn key(&self, var: Var) -> Option<VarKey> {
        self.keys.get(var.index() as usize - 1).copied()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, VarKey)> + '_ {
        self.keys
            .iter()
            .enumerate()
            .map(|(i, &k)| (Var::new(i as u32 + 1), k))
    }
}
