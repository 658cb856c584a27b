use std::cmp::Ordering;

use crate::context::{BlockId, VarContext};
use crate::term::Term;

/// A term ordering on the power products of a context.
///
/// All kinds are total, multiplicative and (for the kinds used here) well
/// orderings, so they are valid Groebner bases orderings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TermOrdering {
    /// Degree-reverse-lexicographic; variable significance = context order.
    DegRevLex,
    /// Pure lexicographic; variable significance = context order.
    Lex,
    /// Compare by the rows of a weight matrix first, then fall back to
    /// degrevlex. A single all-positive row gives a degree-compatible order.
    Weighted { rows: Vec<Vec<i64>> },
    /// Eliminates the listed blocks: compares their restriction by degrevlex
    /// first, then the remaining variables by degrevlex.
    BlockElim { first: Vec<BlockId> },
}

impl TermOrdering {
    pub fn weights(row: Vec<i64>) -> Self {
        TermOrdering::Weighted { rows: vec![row] }
    }

    pub fn compare(&self, ctx: &VarContext, a: &Term, b: &Term) -> Ordering {
        debug_assert_eq!(a.num_vars(), ctx.num_vars());
        debug_assert_eq!(b.num_vars(), ctx.num_vars());
        match self {
            TermOrdering::DegRevLex => a.cmp_degrevlex(b),
            TermOrdering::Lex => a.cmp_lex(b),
            TermOrdering::Weighted { rows } => {
                for row in rows {
                    let wa: i64 =
                        a.exps().iter().zip(row).map(|(&e, &w)| e as i64 * w).sum();
                    let wb: i64 =
                        b.exps().iter().zip(row).map(|(&e, &w)| e as i64 * w).sum();
                    if wa != wb {
                        return wa.cmp(&wb);
                    }
                }
                a.cmp_degrevlex(b)
            }
            TermOrdering::BlockElim { first } => {
                for &blk in first {
                    let r = ctx.block_range(blk);
                    let ord = a.restrict(r.clone()).cmp_degrevlex(&b.restrict(r));
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                a.cmp_degrevlex(b)
            }
        }
    }

    /// True if terms supported outside the eliminated blocks compare below any
    /// term involving them (always holds for BlockElim; trivially for others
    /// this returns the eliminated ranges involved).
    pub fn eliminated_blocks(&self) -> &[BlockId] {
        match self {
            TermOrdering::BlockElim { first } => first,
            _ => &[],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[u32]) -> Term {
        Term::from_exps(e.to_vec())
    }

    #[test]
    fn degrevlex_examples() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let ord = TermOrdering::DegRevLex;
        // x^2 vs xy
        assert_eq!(ord.compare(&ctx, &t(&[2, 0]), &t(&[1, 1])), Ordering::Greater);
        assert_eq!(ord.compare(&ctx, &t(&[1, 1]), &t(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn weighted_example() {
        // deg_W(x1) = 3, deg_W(x2) = 1: x1 > x2^2 because 3 > 2.
        let ctx = VarContext::simple("x", &["x1", "x2"]);
        let ord = TermOrdering::weights(vec![3, 1]);
        assert_eq!(ord.compare(&ctx, &t(&[1, 0]), &t(&[0, 2])), Ordering::Greater);
    }

    #[test]
    fn lex_vs_degrevlex() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        // x > y^5 under lex, but x < y^5 under degrevlex.
        assert_eq!(
            TermOrdering::Lex.compare(&ctx, &t(&[1, 0]), &t(&[0, 5])),
            Ordering::Greater
        );
        assert_eq!(
            TermOrdering::DegRevLex.compare(&ctx, &t(&[1, 0]), &t(&[0, 5])),
            Ordering::Less
        );
    }

    #[test]
    fn block_elimination_dominates() {
        let mut b = VarContext::builder();
        let xb = b.x_block(1);
        let _tb = b.single("t");
        let ctx = b.build();
        let ord = TermOrdering::BlockElim { first: vec![xb] };
        // x1 beats t^9 because the x block is compared first.
        assert_eq!(ord.compare(&ctx, &t(&[1, 0]), &t(&[0, 9])), Ordering::Greater);
    }

    #[test]
    fn multiplicative() {
        let ctx = VarContext::simple("x", &["x", "y", "z"]);
        let s = t(&[1, 2, 0]);
        for ord in [
            TermOrdering::DegRevLex,
            TermOrdering::Lex,
            TermOrdering::weights(vec![2, 1, 1]),
        ] {
            let a = t(&[1, 0, 3]);
            let b = t(&[0, 2, 2]);
            assert_eq!(
                ord.compare(&ctx, &a, &b),
                ord.compare(&ctx, &a.mul(&s), &b.mul(&s))
            );
        }
    }
}
