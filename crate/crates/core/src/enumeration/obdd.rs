//! Reduced ordered binary decision diagrams.
//!
//! Nodes are hash-consed in a unique table, so within one [`ObddBuilder`]
//! equivalent formulas get the same root. Formulas are compiled bottom-up with
//! memoized `apply` over the Shannon cofactors of the top variable.

use std::collections::{BTreeSet, HashMap};

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::formula::{Atom, Formula, Literal};
use crate::limits::Limits;

use super::{Engine, EnumResult, Mode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef(u32);

impl NodeRef {
    pub const FALSE: NodeRef = NodeRef(0);
    pub const TRUE: NodeRef = NodeRef(1);

    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Node {
    var: u32,
    low: NodeRef,
    high: NodeRef,
}

const TERMINAL_VAR: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum BinOp {
    And,
    Or,
    Implies,
    Iff,
}

pub struct ObddBuilder {
    order: Vec<Atom>,
    var_of: HashMap<Atom, u32>,
    nodes: Vec<Node>,
    unique: HashMap<Node, NodeRef>,
    apply_cache: HashMap<(BinOp, NodeRef, NodeRef), NodeRef>,
    not_cache: HashMap<NodeRef, NodeRef>,
    node_budget: usize,
}

impl ObddBuilder {
    pub fn new(order: Vec<Atom>, node_budget: usize) -> Result<ObddBuilder> {
        let mut var_of = HashMap::new();
        for (i, a) in order.iter().enumerate() {
            if var_of.insert(a.clone(), i as u32).is_some() {
                return Err(Error::Precondition(format!("{a} appears twice in the variable order")));
            }
        }
        let terminal = |_| Node {
            var: TERMINAL_VAR,
            low: NodeRef::FALSE,
            high: NodeRef::FALSE,
        };
        Ok(ObddBuilder {
            order,
            var_of,
            nodes: vec![terminal(0), terminal(1)],
            unique: HashMap::new(),
            apply_cache: HashMap::new(),
            not_cache: HashMap::new(),
            node_budget,
        })
    }

    fn var(&self, n: NodeRef) -> u32 {
        self.nodes[n.0 as usize].var
    }

    fn mk(&mut self, var: u32, low: NodeRef, high: NodeRef) -> Result<NodeRef> {
        if low == high {
            return Ok(low);
        }
        let node = Node { var, low, high };
        if let Some(&r) = self.unique.get(&node) {
            return Ok(r);
        }
        if self.nodes.len() - 2 >= self.node_budget {
            return Err(Error::NodeBudget(self.node_budget));
        }
        let r = NodeRef(self.nodes.len() as u32);
        self.nodes.push(node);
        self.unique.insert(node, r);
        Ok(r)
    }

    fn cofactors(&self, n: NodeRef, var: u32) -> (NodeRef, NodeRef) {
        let node = self.nodes[n.0 as usize];
        if node.var == var {
            (node.low, node.high)
        } else {
            (n, n)
        }
    }

    fn not(&mut self, u: NodeRef) -> Result<NodeRef> {
        match u {
            NodeRef::FALSE => return Ok(NodeRef::TRUE),
            NodeRef::TRUE => return Ok(NodeRef::FALSE),
            _ => {}
        }
        if let Some(&r) = self.not_cache.get(&u) {
            return Ok(r);
        }
        let node = self.nodes[u.0 as usize];
        let low = self.not(node.low)?;
        let high = self.not(node.high)?;
        let r = self.mk(node.var, low, high)?;
        self.not_cache.insert(u, r);
        Ok(r)
    }

    fn apply(&mut self, op: BinOp, u: NodeRef, v: NodeRef) -> Result<NodeRef> {
        use NodeRef as N;
        let shortcut = match op {
            BinOp::And => match (u, v) {
                (N::FALSE, _) | (_, N::FALSE) => Some(N::FALSE),
                (N::TRUE, x) | (x, N::TRUE) => Some(x),
                _ if u == v => Some(u),
                _ => None,
            },
            BinOp::Or => match (u, v) {
                (N::TRUE, _) | (_, N::TRUE) => Some(N::TRUE),
                (N::FALSE, x) | (x, N::FALSE) => Some(x),
                _ if u == v => Some(u),
                _ => None,
            },
            BinOp::Implies => match (u, v) {
                (N::FALSE, _) | (_, N::TRUE) => Some(N::TRUE),
                (N::TRUE, x) => Some(x),
                (x, N::FALSE) => return self.not(x),
                _ if u == v => Some(N::TRUE),
                _ => None,
            },
            BinOp::Iff => match (u, v) {
                (N::TRUE, x) | (x, N::TRUE) => Some(x),
                (N::FALSE, x) | (x, N::FALSE) => return self.not(x),
                _ if u == v => Some(N::TRUE),
                _ => None,
            },
        };
        if let Some(r) = shortcut {
            return Ok(r);
        }
        if let Some(&r) = self.apply_cache.get(&(op, u, v)) {
            return Ok(r);
        }
        let var = self.var(u).min(self.var(v));
        let (ul, uh) = self.cofactors(u, var);
        let (vl, vh) = self.cofactors(v, var);
        let low = self.apply(op, ul, vl)?;
        let high = self.apply(op, uh, vh)?;
        let r = self.mk(var, low, high)?;
        self.apply_cache.insert((op, u, v), r);
        Ok(r)
    }

    /// Compiles `f`; every atom of `f` must be in the order.
    pub fn build(&mut self, f: &Formula) -> Result<NodeRef> {
        match f {
            Formula::Const(b) => Ok(if *b { NodeRef::TRUE } else { NodeRef::FALSE }),
            Formula::Atom(a) => {
                let var = *self.var_of.get(a).ok_or_else(|| {
                    Error::Precondition(format!("variable order does not cover {a}"))
                })?;
                self.mk(var, NodeRef::FALSE, NodeRef::TRUE)
            }
            Formula::Not(g) => {
                let g = self.build(g)?;
                self.not(g)
            }
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                let op = match f {
                    Formula::And(..) => BinOp::And,
                    Formula::Or(..) => BinOp::Or,
                    Formula::Implies(..) => BinOp::Implies,
                    _ => BinOp::Iff,
                };
                let l = self.build(l)?;
                let r = self.build(r)?;
                self.apply(op, l, r)
            }
        }
    }

    /// Freezes the store into an immutable diagram rooted at `root`.
    pub fn finish(self, root: NodeRef) -> Obdd {
        Obdd {
            order: self.order,
            nodes: self.nodes,
            root,
        }
    }
}

/// An immutable OBDD: variable order, node store and root.
#[derive(Debug, Clone)]
pub struct Obdd {
    order: Vec<Atom>,
    nodes: Vec<Node>,
    root: NodeRef,
}

impl Obdd {
    pub fn root(&self) -> NodeRef {
        self.root
    }

    pub fn order(&self) -> &[Atom] {
        &self.order
    }

    /// Internal nodes reachable from the root.
    pub fn node_count(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.root];
        while let Some(n) = stack.pop() {
            if n.is_terminal() || !seen.insert(n) {
                continue;
            }
            let node = self.nodes[n.0 as usize];
            stack.push(node.low);
            stack.push(node.high);
        }
        seen.len()
    }

    /// Follows a total assignment from the root to a terminal.
    pub fn eval(&self, eta: &Assignment) -> Result<bool> {
        let mut n = self.root;
        while !n.is_terminal() {
            let node = self.nodes[n.0 as usize];
            let atom = &self.order[node.var as usize];
            n = match eta.get(atom) {
                Some(true) => node.high,
                Some(false) => node.low,
                None => return Err(Error::NotTotal(atom.clone())),
            };
        }
        Ok(n == NodeRef::TRUE)
    }

    /// One partial assignment per root-to-true path, high branches first.
    pub fn paths(&self) -> Vec<Assignment> {
        let mut out = Vec::new();
        self.walk(self.root, &mut Vec::new(), &mut out);
        out
    }

    fn walk(&self, n: NodeRef, path: &mut Vec<Literal>, out: &mut Vec<Assignment>) {
        match n {
            NodeRef::TRUE => out.push(
                Assignment::from_literals(path.iter().cloned()).expect("ordered paths never repeat a variable"),
            ),
            NodeRef::FALSE => {}
            _ => {
                let node = self.nodes[n.0 as usize];
                let atom = self.order[node.var as usize].clone();
                for (value, child) in [(true, node.high), (false, node.low)] {
                    path.push(Literal::new(atom.clone(), value));
                    self.walk(child, path, out);
                    path.pop();
                }
            }
        }
    }

    /// Checks the ordering and reduction invariants of the reachable part.
    pub fn is_well_formed(&self) -> bool {
        let mut stack = vec![self.root];
        let mut seen = HashMap::new();
        while let Some(n) = stack.pop() {
            if n.is_terminal() {
                continue;
            }
            let node = self.nodes[n.0 as usize];
            if node.low == node.high {
                return false;
            }
            for child in [node.low, node.high] {
                if !child.is_terminal() && self.nodes[child.0 as usize].var <= node.var {
                    return false;
                }
                stack.push(child);
            }
            if let Some(other) = seen.insert(node, n) {
                if other != n {
                    return false;
                }
            }
        }
        true
    }
}

/// Builds the OBDD of `f`; the default order is the atoms of `f` by name.
pub fn build_obdd(f: &Formula, order: Option<&[Atom]>, limits: &Limits) -> Result<Obdd> {
    let order = match order {
        Some(o) => o.to_vec(),
        None => f.atoms().into_iter().collect(),
    };
    let mut builder = ObddBuilder::new(order, limits.node_budget)?;
    let root = builder.build(f)?;
    Ok(builder.finish(root))
}

/// The paths to `true`; each one entails the source formula.
pub fn obdd_enumerate(b: &Obdd) -> EnumResult {
    EnumResult {
        engine: Engine::Obdd,
        mode: Mode::Entailing,
        assignments: b.paths(),
    }
}
