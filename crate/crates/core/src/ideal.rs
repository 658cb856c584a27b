use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::context::{BlockId, VarContext};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ordering::TermOrdering;
use crate::poly::Polynomial;
use crate::term::Term;

/// A polynomial ideal given by generators, with cached reduced Groebner bases
/// per term ordering. Values are immutable; the cache is shared by clones.
#[derive(Clone)]
pub struct Ideal {
    ctx: Arc<VarContext>,
    gens: Vec<Polynomial>,
    cache: Arc<Mutex<HashMap<TermOrdering, Arc<GroebnerBasis>>>>,
}

impl Ideal {
    pub fn new(ctx: &Arc<VarContext>, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ctx: ctx.clone(), gens, cache: Arc::new(Mutex::new(HashMap::new())) }
    }

    pub fn zero(ctx: &Arc<VarContext>) -> Self {
        Ideal::new(ctx, Vec::new())
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// The reduced Groebner basis for the ordering, computed once and cached.
    pub fn groebner_basis(&self, ord: &TermOrdering) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.cache.lock().unwrap().get(ord) {
            return gb.clone();
        }
        let gb = Arc::new(GroebnerBasis::compute(&self.ctx, &self.gens, ord.clone()));
        self.cache
            .lock()
            .unwrap()
            .entry(ord.clone())
            .or_insert(gb)
            .clone()
    }

    pub fn normal_form(&self, f: &Polynomial, ord: &TermOrdering) -> Result<Polynomial> {
        self.groebner_basis(ord).normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f, &TermOrdering::DegRevLex)?.is_zero())
    }

    /// Generators of the elimination ideal `I ∩ K[vars outside the blocks]`,
    /// returned over the sub-context without the eliminated blocks.
    pub fn eliminate(&self, blocks: &[BlockId]) -> Result<Ideal> {
        let ord = TermOrdering::BlockElim { first: blocks.to_vec() };
        let gb = self.groebner_basis(&ord);
        let keep: Vec<BlockId> = self
            .ctx
            .block_ids()
            .filter(|b| !blocks.contains(b))
            .collect();
        let (sub, map) = self.ctx.subcontext(&keep);
        let eliminated_ranges: Vec<std::ops::Range<usize>> =
            blocks.iter().map(|&b| self.ctx.block_range(b)).collect();
        let mut gens = Vec::new();
        for p in gb.elements() {
            let free = p.terms().all(|(t, _)| {
                eliminated_ranges.iter().all(|r| t.degree_in(r.clone()) == 0)
            });
            if free {
                gens.push(p.project(&sub, &map)?);
            }
        }
        Ok(Ideal::new(&sub, gens))
    }

    /// Ideal intersection through a tag variable: eliminate t from
    /// t*I + (1-t)*J.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let (big, tag_block) = self.ctx.extended("tag", vec!["t_tag".to_string()]);
        let tag = Polynomial::var_named(&big, "t_tag")?;
        let one = Polynomial::one(&big);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.map_context(&big)?.mul(&tag));
        }
        for g in &other.gens {
            gens.push(g.map_context(&big)?.mul(&one.sub(&tag)));
        }
        let elim = Ideal::new(&big, gens).eliminate(&[tag_block])?;
        // The sub-context after dropping the tag has the same variables as
        // the original context; map the generators back.
        let gens_back: Result<Vec<Polynomial>> = elim
            .generators()
            .iter()
            .map(|p| p.map_context(&self.ctx))
            .collect();
        Ok(Ideal::new(&self.ctx, gens_back?))
    }

    /// The terms outside the leading-term ideal, sorted ascending under the
    /// ordering. Errors if the ideal is not zero-dimensional.
    pub fn quotient_basis(&self, ord: &TermOrdering) -> Result<Vec<Term>> {
        let gb = self.groebner_basis(ord);
        if gb.is_unit_ideal() {
            return Ok(Vec::new());
        }
        let lts = gb.leading_terms();
        let n = self.ctx.num_vars();
        // Zero-dimensional iff every variable has a pure power among the
        // leading terms.
        let mut bound = vec![0u32; n];
        for v in 0..n {
            let pure = lts.iter().find_map(|t| {
                let e = t.exp(v);
                if e > 0 && t.degree() == e {
                    Some(e)
                } else {
                    None
                }
            });
            match pure {
                Some(e) => bound[v] = e,
                None => return Err(Error::NotZeroDimensional),
            }
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; n];
        enumerate_staircase(&mut exps, 0, &bound, &lts, &mut out);
        out.sort_by(|a, b| ord.compare(&self.ctx, a, b));
        Ok(out)
    }

    /// Combinatorial Krull dimension of the leading term ideal (which equals
    /// the dimension of the ideal): the size of a maximal set of variables S
    /// such that no leading term is supported entirely inside S.
    pub fn krull_dimension(&self) -> Result<usize> {
        let gb = self.groebner_basis(&TermOrdering::DegRevLex);
        if gb.is_unit_ideal() {
            return Err(Error::UnitIdeal);
        }
        let n = self.ctx.num_vars();
        assert!(n <= 64, "krull_dimension supports up to 64 variables");
        let supports: Vec<u64> = gb
            .leading_terms()
            .iter()
            .map(|t| {
                let mut m = 0u64;
                for (i, &e) in t.exps().iter().enumerate() {
                    if e > 0 {
                        m |= 1 << i;
                    }
                }
                m
            })
            .collect();
        let mut best = 0usize;
        search_independent(0, 0u64, 0, n, &supports, &mut best);
        Ok(best)
    }

    /// True iff the two ideals have the same reduced degrevlex basis.
    pub fn ideal_equal(&self, other: &Ideal) -> Result<bool> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        let a = self.groebner_basis(&TermOrdering::DegRevLex);
        let b = other.groebner_basis(&TermOrdering::DegRevLex);
        Ok(a.elements() == b.elements())
    }
}

fn enumerate_staircase(
    exps: &mut Vec<u32>,
    var: usize,
    bound: &[u32],
    lts: &[Term],
    out: &mut Vec<Term>,
) {
    if var == exps.len() {
        let t = Term::from_exps(exps.clone());
        if !lts.iter().any(|l| l.divides(&t)) {
            out.push(t);
        }
        return;
    }
    for e in 0..bound[var] {
        exps[var] = e;
        enumerate_staircase(exps, var + 1, bound, lts, out);
    }
    exps[var] = 0;
}

fn search_independent(
    var: usize,
    set: u64,
    size: usize,
    n: usize,
    supports: &[u64],
    best: &mut usize,
) {
    if size + (n - var) <= *best {
        return;
    }
    if var == n {
        if size > *best {
            *best = size;
        }
        return;
    }
    // Try including `var`.
    let with = set | (1 << var);
    if supports.iter().all(|&s| s & !with != 0) {
        search_independent(var + 1, with, size + 1, n, supports, best);
    }
    search_independent(var + 1, set, size, n, supports, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_poly_list};

    fn ideal(ctx: &Arc<VarContext>, gens: &str) -> Ideal {
        Ideal::new(ctx, parse_poly_list(ctx, gens).unwrap())
    }

    #[test]
    fn eliminate_parabola() {
        let mut b = VarContext::builder();
        let _x = b.add_block("x", vec!["x".into(), "y".into()]);
        let tb = b.add_block("t", vec!["t".into()]);
        let ctx = b.build();
        let i = ideal(&ctx, "x - t, y - t^2");
        let e = i.eliminate(&[tb]).unwrap();
        let strs: Vec<String> = e.generators().iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["x^2-y"]);
    }

    #[test]
    fn intersect_coordinate_axes() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let i = ideal(&ctx, "x");
        let j = ideal(&ctx, "y");
        let m = i.intersect(&j).unwrap();
        let gb = m.groebner_basis(&TermOrdering::DegRevLex);
        let strs: Vec<String> = gb.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["x*y"]);
    }

    #[test]
    fn intersect_self_is_identity() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let i = ideal(&ctx, "x^2-y, y^2-1");
        let m = i.intersect(&i).unwrap();
        assert!(m.ideal_equal(&i).unwrap());
    }

    #[test]
    fn quotient_basis_square() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let i = ideal(&ctx, "x^2, y^2");
        let q = i.quotient_basis(&TermOrdering::DegRevLex).unwrap();
        assert_eq!(q.len(), 4);
        let strs: Vec<String> = q
            .iter()
            .map(|t| {
                Polynomial::from_term(&ctx, t.clone(), crate::rational::Rational::one())
                    .to_string()
            })
            .collect();
        assert_eq!(strs, vec!["1", "y", "x", "x*y"]);
    }

    #[test]
    fn quotient_basis_rejects_positive_dimension() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let i = ideal(&ctx, "x*y");
        assert!(matches!(
            i.quotient_basis(&TermOrdering::DegRevLex),
            Err(Error::NotZeroDimensional)
        ));
    }

    #[test]
    fn krull_dimension_examples() {
        let ctx8 = {
            let mut b = VarContext::builder();
            b.x_block(8);
            b.build()
        };
        assert_eq!(Ideal::zero(&ctx8).krull_dimension().unwrap(), 8);

        let ctx = VarContext::simple("x", &["x", "y"]);
        let i = ideal(&ctx, "x*y");
        assert_eq!(i.krull_dimension().unwrap(), 1);

        let unit = ideal(&ctx, "1");
        assert!(matches!(unit.krull_dimension(), Err(Error::UnitIdeal)));
    }

    #[test]
    fn ideal_equal_monic_normalization() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let i = ideal(&ctx, "x");
        let j = ideal(&ctx, "2*x");
        assert!(i.ideal_equal(&j).unwrap());
    }

    #[test]
    fn quotient_basis_size_ordering_independent() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let i = ideal(&ctx, "x^2+y, y^3-y, x*y^2-x");
        let a = i.quotient_basis(&TermOrdering::DegRevLex).unwrap().len();
        let b = i.quotient_basis(&TermOrdering::Lex).unwrap().len();
        assert_eq!(a, b);
    }

    #[test]
    fn two_block_elimination_is_order_independent() {
        let mut b = VarContext::builder();
        let _x = b.add_block("x", vec!["x".into(), "y".into()]);
        let s = b.add_block("s", vec!["s".into()]);
        let u = b.add_block("u", vec!["u".into()]);
        let ctx = b.build();
        let i = ideal(&ctx, "x - s - u, y - s*u, s^2 - 2, u^2 - 3");
        let a = i.eliminate(&[s, u]).unwrap();
        let via_s = i.eliminate(&[s]).unwrap();
        let u2 = via_s.context().block("u").unwrap();
        let b2 = via_s.eliminate(&[u2]).unwrap();
        let ga = a.groebner_basis(&TermOrdering::DegRevLex);
        let gbb = b2.groebner_basis(&TermOrdering::DegRevLex);
        assert_eq!(
            ga.elements().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            gbb.elements().iter().map(|p| p.to_string()).collect::<Vec<_>>()
        );
    }
}
