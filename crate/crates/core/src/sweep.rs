//! Exhaustive truth-table sweeps.
//!
//! A formula is compiled into a postfix program over 64-lane words and
//! evaluated with dual-rail (strong Kleene) semantics: every value is a pair
//! of words `(is_true, is_false)`, so one pass evaluates 64 rows. Atoms that
//! are not swept evaluate to unknown in every lane. With the `parallel`
//! feature, blocks of rows are searched with rayon; results are always the
//! lowest matching row, so both executions return the same answer.
//!
//! Row `r` of a sweep over `atoms` binds `atoms[j]` to `true` iff bit
//! `atoms.len() - 1 - j` of `r` is zero, which is the order used by
//! [`Assignment::extensions`](crate::Assignment::extensions).

use std::collections::HashMap;
use std::ops::Range;

use crate::assignment::{row_bindings, Assignment};
use crate::formula::{Atom, Formula};

/// How a sweep distributes its blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Below this many work items a parallel search runs sequentially anyway.
#[cfg(feature = "parallel")]
const PARALLEL_THRESHOLD: u64 = 64;

impl Execution {
    /// Lowest `i` in `range` with `pred(i)`.
    pub fn find_first<F>(self, range: Range<u64>, pred: F) -> Option<u64>
    where
        F: Fn(u64) -> bool + Sync + Send,
    {
        self.find_map_first(range, |i| pred(i).then_some(i))
    }

    /// First `Some` produced over `range`, in index order.
    pub fn find_map_first<T, F>(self, range: Range<u64>, f: F) -> Option<T>
    where
        T: Send,
        F: Fn(u64) -> Option<T> + Sync + Send,
    {
        match self {
            Execution::Sequential => range.into_iter().find_map(f),
            #[cfg(feature = "parallel")]
            Execution::Parallel => {
                use rayon::prelude::*;
                if range.end - range.start < PARALLEL_THRESHOLD {
                    range.into_iter().find_map(f)
                } else {
                    range.into_par_iter().find_map_first(f)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Const(bool),
    Var(usize),
    Unknown,
    Not,
    And,
    Or,
    Implies,
    Iff,
}

/// What a sweep is looking for in a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Want {
    True,
    /// False or unknown.
    NotTrue,
}

const LANE_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// A formula compiled for sweeping over a fixed atom list.
#[derive(Debug, Clone)]
pub struct Kernel {
    ops: Vec<Op>,
    width: usize,
    depth: usize,
}

impl Kernel {
    /// Compiles `f`; atoms of `f` missing from `sweep` are unknown throughout.
    pub fn compile(f: &Formula, sweep: &[Atom]) -> Kernel {
        let index: HashMap<&Atom, usize> = sweep.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut ops = Vec::with_capacity(f.size());
        let depth = emit(f, &index, &mut ops);
        Kernel {
            ops,
            width: sweep.len(),
            depth,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> u64 {
        1u64 << self.width
    }

    fn var_word(&self, var: usize, block: u64) -> u64 {
        let bit = self.width - 1 - var;
        if bit < 6 {
            !LANE_PATTERNS[bit]
        } else if (block >> (bit - 6)) & 1 == 0 {
            !0
        } else {
            0
        }
    }

    /// Evaluates 64 consecutive rows starting at `block * 64`.
    fn eval_block(&self, block: u64, stack: &mut Vec<(u64, u64)>) -> (u64, u64) {
        stack.clear();
        for op in &self.ops {
            let v = match *op {
                Op::Const(true) => (!0, 0),
                Op::Const(false) => (0, !0),
                Op::Unknown => (0, 0),
                Op::Var(i) => {
                    let w = self.var_word(i, block);
                    (w, !w)
                }
                Op::Not => {
                    let (t, f) = stack.pop().unwrap();
                    (f, t)
                }
                bin => {
                    let (rt, rf) = stack.pop().unwrap();
                    let (lt, lf) = stack.pop().unwrap();
                    match bin {
                        Op::And => (lt & rt, lf | rf),
                        Op::Or => (lt | rt, lf & rf),
                        Op::Implies => (lf | rt, lt & rf),
                        Op::Iff => ((lt & rt) | (lf & rf), (lt & rf) | (lf & rt)),
                        _ => unreachable!(),
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().unwrap()
    }

    fn lane_mask(&self, block: u64, range: &Range<u64>) -> u64 {
        let base = block * 64;
        let lo = range.start.saturating_sub(base).min(64);
        let hi = (range.end - base).min(64);
        if hi <= lo {
            return 0;
        }
        let upper = if hi == 64 { !0 } else { (1u64 << hi) - 1 };
        upper & !((1u64 << lo) - 1)
    }

    fn search_block(&self, block: u64, range: &Range<u64>, want: Want) -> Option<u64> {
        let mut stack = Vec::with_capacity(self.depth);
        let (t, _) = self.eval_block(block, &mut stack);
        let hits = match want {
            Want::True => t,
            Want::NotTrue => !t,
        } & self.lane_mask(block, range);
        (hits != 0).then(|| block * 64 + hits.trailing_zeros() as u64)
    }

    /// Lowest row in `range` matching `want`, scanned sequentially.
    pub fn first_row_in(&self, range: Range<u64>, want: Want) -> Option<u64> {
        if range.is_empty() {
            return None;
        }
        let blocks = range.start / 64..(range.end - 1) / 64 + 1;
        blocks
            .into_iter()
            .find_map(|b| self.search_block(b, &range, want))
    }

    /// Lowest row of the whole table matching `want`.
    pub fn first_row(&self, want: Want, exec: Execution) -> Option<u64> {
        let rows = 0..self.rows();
        let blocks = 0..self.rows().div_ceil(64);
        exec.find_map_first(blocks, |b| self.search_block(b, &rows, want))
    }
}

/// Appends the postfix program for `f`; returns the stack depth it needs.
fn emit(f: &Formula, index: &HashMap<&Atom, usize>, ops: &mut Vec<Op>) -> usize {
    match f {
        Formula::Const(b) => {
            ops.push(Op::Const(*b));
            1
        }
        Formula::Atom(a) => {
            ops.push(index.get(a).map_or(Op::Unknown, |&i| Op::Var(i)));
            1
        }
        Formula::Not(g) => {
            let d = emit(g, index, ops);
            ops.push(Op::Not);
            d
        }
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            let dl = emit(l, index, ops);
            let dr = emit(r, index, ops);
            ops.push(match f {
                Formula::And(..) => Op::And,
                Formula::Or(..) => Op::Or,
                Formula::Implies(..) => Op::Implies,
                _ => Op::Iff,
            });
            dl.max(dr + 1)
        }
    }
}

/// The assignment for row `row` of a sweep over `atoms`.
pub fn row_assignment(atoms: &[Atom], row: u64) -> Assignment {
    let mut out = Assignment::empty();
    for (a, v) in row_bindings(atoms, row) {
        out.insert(&crate::formula::Literal::new(a, v))
            .expect("fresh atoms never conflict");
    }
    out
}
