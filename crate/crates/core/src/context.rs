use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Identifies a named block of variables inside a [`VarContext`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockId(pub(crate) usize);

#[derive(Debug, Clone)]
struct Block {
    name: String,
    start: usize,
    len: usize,
}

/// A fixed, ordered set of named variables, partitioned into blocks.
///
/// Every polynomial carries a reference to exactly one context; contexts are
/// immutable after construction and compared by pointer identity first and
/// by structure as a fallback, so cloned contexts still interoperate.
#[derive(Debug)]
pub struct VarContext {
    names: Vec<String>,
    blocks: Vec<Block>,
}

impl PartialEq for VarContext {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.names == other.names
                && self.blocks.len() == other.blocks.len()
                && self
                    .blocks
                    .iter()
                    .zip(&other.blocks)
                    .all(|(a, b)| a.name == b.name && a.start == b.start && a.len == b.len))
    }
}

impl Eq for VarContext {}

impl VarContext {
    pub fn builder() -> ContextBuilder {
        ContextBuilder { names: Vec::new(), blocks: Vec::new() }
    }

    /// Single-block context with the given variable names.
    pub fn simple(block: &str, names: &[&str]) -> Arc<VarContext> {
        let mut b = VarContext::builder();
        b.add_block(block, names.iter().map(|s| s.to_string()).collect());
        b.build()
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn var_name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn block(&self, name: &str) -> Option<BlockId> {
        self.blocks.iter().position(|b| b.name == name).map(BlockId)
    }

    pub fn block_name(&self, id: BlockId) -> &str {
        &self.blocks[id.0].name
    }

    pub fn block_range(&self, id: BlockId) -> std::ops::Range<usize> {
        let b = &self.blocks[id.0];
        b.start..b.start + b.len
    }

    pub fn block_of_var(&self, idx: usize) -> BlockId {
        for (i, b) in self.blocks.iter().enumerate() {
            if idx >= b.start && idx < b.start + b.len {
                return BlockId(i);
            }
        }
        unreachable!("variable index out of range")
    }

    pub fn block_ids(&self) -> impl Iterator<Item = BlockId> {
        (0..self.blocks.len()).map(BlockId)
    }

    /// Builds a sub-context keeping only the named blocks (in the given order),
    /// together with the index mapping old -> new per retained variable.
    pub fn subcontext(&self, keep: &[BlockId]) -> (Arc<VarContext>, Vec<Option<usize>>) {
        let mut b = VarContext::builder();
        let mut map = vec![None; self.num_vars()];
        let mut next = 0usize;
        for &id in keep {
            let blk = &self.blocks[id.0];
            let names: Vec<String> =
                (blk.start..blk.start + blk.len).map(|i| self.names[i].clone()).collect();
            for (off, _) in names.iter().enumerate() {
                map[blk.start + off] = Some(next + off);
            }
            next += blk.len;
            b.add_block(&blk.name, names);
        }
        (b.build(), map)
    }

    /// A copy of this context with one extra block appended.
    pub fn extended(&self, block_name: &str, vars: Vec<String>) -> (Arc<VarContext>, BlockId) {
        let mut b = VarContext::builder();
        for blk in &self.blocks {
            b.add_block(
                &blk.name,
                self.names[blk.start..blk.start + blk.len].to_vec(),
            );
        }
        let id = b.add_block(block_name, vars);
        (b.build(), id)
    }

    /// Maps variables of `self` into `other` by name; errors on a missing name.
    pub fn embedding(&self, other: &VarContext) -> Result<Vec<usize>> {
        self.names
            .iter()
            .map(|n| other.var_index(n).ok_or(Error::ContextMismatch))
            .collect()
    }
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in &self.blocks {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            write!(f, "{}[", b.name)?;
            for (i, n) in self.names[b.start..b.start + b.len].iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", n)?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

pub struct ContextBuilder {
    names: Vec<String>,
    blocks: Vec<Block>,
}

impl ContextBuilder {
    pub fn add_block(&mut self, name: &str, vars: Vec<String>) -> BlockId {
        for v in &vars {
            assert!(
                !self.names.contains(v),
                "duplicate variable name `{}` in context",
                v
            );
        }
        let start = self.names.len();
        let len = vars.len();
        self.names.extend(vars);
        self.blocks.push(Block { name: name.to_string(), start, len });
        BlockId(self.blocks.len() - 1)
    }

    /// Standard x-block named x1..xn (or custom names).
    pub fn x_block(&mut self, n: usize) -> BlockId {
        self.add_block("x", (1..=n).map(|i| format!("x{}", i)).collect())
    }

    /// Coefficient block c_i_j for i in 1..=mu, j in 1..=alpha (row-major).
    pub fn c_block(&mut self, mu: usize, alpha: usize) -> BlockId {
        self.indexed_block("c", mu, alpha)
    }

    /// Point-coordinate block y_i_k for i in 1..=mu, k in 1..=n.
    pub fn y_block(&mut self, mu: usize, n: usize) -> BlockId {
        self.indexed_block("y", mu, n)
    }

    pub fn indexed_block(&mut self, letter: &str, rows: usize, cols: usize) -> BlockId {
        let mut names = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                names.push(format!("{}_{}_{}", letter, i, j));
            }
        }
        self.add_block(letter, names)
    }

    pub fn single(&mut self, name: &str) -> BlockId {
        self.add_block(name, vec![name.to_string()])
    }

    pub fn build(self) -> Arc<VarContext> {
        Arc::new(VarContext { names: self.names, blocks: self.blocks })
    }
}

/// Index of the variable `letter_i_j` inside an indexed block laid out row-major.
pub fn indexed_var(base: usize, cols: usize, i: usize, j: usize) -> usize {
    base + (i - 1) * cols + (j - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_and_lookup() {
        let mut b = VarContext::builder();
        let xb = b.x_block(2);
        let cb = b.c_block(2, 3);
        let ctx = b.build();
        assert_eq!(ctx.num_vars(), 8);
        assert_eq!(ctx.var_name(0), "x1");
        assert_eq!(ctx.var_name(2), "c_1_1");
        assert_eq!(ctx.var_index("c_2_3"), Some(7));
        assert_eq!(ctx.block_range(xb), 0..2);
        assert_eq!(ctx.block_range(cb), 2..8);
        assert_eq!(ctx.block_of_var(5), cb);
    }

    #[test]
    fn subcontext_mapping() {
        let mut b = VarContext::builder();
        let _x = b.x_block(2);
        let c = b.c_block(1, 2);
        let ctx = b.build();
        let (sub, map) = ctx.subcontext(&[c]);
        assert_eq!(sub.num_vars(), 2);
        assert_eq!(map, vec![None, None, Some(0), Some(1)]);
        assert_eq!(sub.var_name(0), "c_1_1");
    }
}
