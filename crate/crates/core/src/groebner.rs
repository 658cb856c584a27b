//! Buchberger's algorithm and normal forms.
//!
//! The engine works on term lists kept sorted in descending order for the
//! active term ordering, with Gebauer-Moeller pair elimination and the
//! product criterion. Intermediate results are scaled to primitive integer
//! form to keep coefficient growth in check.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::context::VarContext;
use crate::error::{Error, Result};
use crate::ordering::TermOrdering;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::term::Term;

/// A reduced Groebner basis: monic, autoreduced, unique for (ideal, ordering).
#[derive(Clone, PartialEq)]
pub struct GroebnerBasis {
    ctx: Arc<VarContext>,
    ordering: TermOrdering,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn ordering(&self) -> &TermOrdering {
        &self.ordering
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant() && !self.elements[0].is_zero()
    }

    /// Leading terms of the basis elements.
    pub fn leading_terms(&self) -> Vec<Term> {
        self.elements
            .iter()
            .map(|p| p.leading(&self.ordering).expect("GB elements are nonzero").0.clone())
            .collect()
    }

    /// The unique remainder of `f` modulo the ideal for this ordering.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.context() != &self.ctx {
            return Err(Error::ContextMismatch);
        }
        let reducers: Vec<GPoly> = self
            .elements
            .iter()
            .map(|p| GPoly::from_poly(p, &self.ordering, &self.ctx))
            .collect();
        let g = GPoly::from_poly(f, &self.ordering, &self.ctx);
        let nf = normal_form_engine(g, &reducers, &self.ordering, &self.ctx);
        Ok(nf.into_poly(&self.ctx))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Groebner basis from generators; the entry point used by `Ideal`.
    pub fn compute(ctx: &Arc<VarContext>, gens: &[Polynomial], ordering: TermOrdering) -> Self {
        let elements = buchberger_engine(ctx, gens, &ordering);
        GroebnerBasis { ctx: ctx.clone(), ordering, elements }
    }

    /// Wraps a set of polynomials already known (and verified by the caller
    /// through `compute`-equality in tests) to be a reduced basis.
    pub(crate) fn from_reduced_parts(
        ctx: &Arc<VarContext>,
        ordering: TermOrdering,
        elements: Vec<Polynomial>,
    ) -> Self {
        GroebnerBasis { ctx: ctx.clone(), ordering, elements }
    }
}

// ---------------------------------------------------------------------------
// Engine representation
// ---------------------------------------------------------------------------

#[derive(Clone)]
struct GPoly {
    /// Terms in strictly descending order for the active ordering.
    terms: Vec<(Term, Rational)>,
}

impl GPoly {
    fn from_poly(p: &Polynomial, ord: &TermOrdering, ctx: &VarContext) -> GPoly {
        let mut terms: Vec<(Term, Rational)> =
            p.terms().map(|(t, c)| (t.clone(), c.clone())).collect();
        terms.sort_by(|(a, _), (b, _)| ord.compare(ctx, b, a));
        GPoly { terms }
    }

    fn into_poly(self, ctx: &Arc<VarContext>) -> Polynomial {
        Polynomial::from_terms(ctx, self.terms)
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lt(&self) -> &(Term, Rational) {
        &self.terms[0]
    }

    /// self - c * t * other, where the caller guarantees the leading terms
    /// cancel when intended. Both inputs sorted; output sorted.
    fn sub_scaled(
        &self,
        start: usize,
        other: &GPoly,
        t: &Term,
        c: &Rational,
        ord: &TermOrdering,
        ctx: &VarContext,
    ) -> GPoly {
        let a = &self.terms[start..];
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < a.len() && j < other.terms.len() {
            let bt = other.terms[j].0.mul(t);
            match ord.compare(ctx, &a[i].0, &bt) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((bt, -&(&other.terms[j].1 * c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let coeff = &a[i].1 - &(&other.terms[j].1 * c);
                    if !coeff.is_zero() {
                        out.push((a[i].0.clone(), coeff));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        while i < a.len() {
            out.push(a[i].clone());
            i += 1;
        }
        while j < other.terms.len() {
            out.push((other.terms[j].0.mul(t), -&(&other.terms[j].1 * c)));
            j += 1;
        }
        GPoly { terms: out }
    }

    /// Scales to integer coefficients with content one, positive lead.
    fn make_primitive(&mut self) {
        use num::bigint::BigInt;
        use num::{Integer, One, Zero};
        if self.terms.is_empty() {
            return;
        }
        let mut lcm = BigInt::one();
        for (_, c) in &self.terms {
            lcm = lcm.lcm(c.denominator());
        }
        let mut gcd = BigInt::zero();
        for (_, c) in &self.terms {
            gcd = gcd.gcd(&(c.numerator() * (&lcm / c.denominator())));
        }
        if gcd.is_zero() {
            gcd = BigInt::one();
        }
        if self.terms[0].1.is_negative() {
            gcd = -gcd;
        }
        let f = Rational::from_parts(lcm, gcd);
        if !f.is_one() {
            for (_, c) in &mut self.terms {
                *c *= &f;
            }
        }
    }

    fn make_monic(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let inv = self.terms[0].1.recip();
        if !inv.is_one() {
            for (_, c) in &mut self.terms {
                *c *= &inv;
            }
        }
    }
}

/// Fully reduces `f` against `reducers`: no term of the result is divisible
/// by any reducer's leading term.
fn normal_form_engine(
    f: GPoly,
    reducers: &[GPoly],
    ord: &TermOrdering,
    ctx: &VarContext,
) -> GPoly {
    let mut done: Vec<(Term, Rational)> = Vec::new();
    let mut work = f;
    let mut start = 0usize;
    'outer: while start < work.terms.len() {
        let (lt, lc) = &work.terms[start];
        for g in reducers {
            let (gt, gc) = g.lt();
            if gt.divides(lt) {
                let factor_t = gt.div_into(lt);
                let factor_c = lc / gc;
                work = work.sub_scaled(start, g, &factor_t, &factor_c, ord, ctx);
                start = 0;
                continue 'outer;
            }
        }
        done.push(work.terms[start].clone());
        start += 1;
    }
    GPoly { terms: done }
}

// ---------------------------------------------------------------------------
// Buchberger with Gebauer-Moeller pair handling
// ---------------------------------------------------------------------------

struct Pair {
    i: usize,
    j: usize,
    lcm: Term,
}

fn spoly(a: &GPoly, b: &GPoly, lcm: &Term, ord: &TermOrdering, ctx: &VarContext) -> GPoly {
    let (at, ac) = a.lt();
    let (bt, bc) = b.lt();
    let ua = at.div_into(lcm);
    let ub = bt.div_into(lcm);
    let left = GPoly {
        terms: a
            .terms
            .iter()
            .map(|(t, c)| (t.mul(&ua), c / ac))
            .collect(),
    };
    left.sub_scaled(0, b, &ub, &(&Rational::one() / bc), ord, ctx)
}

/// Computes the reduced Groebner basis of the given generators.
pub fn buchberger_engine(
    ctx: &Arc<VarContext>,
    gens: &[Polynomial],
    ord: &TermOrdering,
) -> Vec<Polynomial> {
    let mut basis: Vec<GPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in gens {
        if g.is_zero() {
            continue;
        }
        let gp = GPoly::from_poly(g, ord, ctx);
        let mut nf = normal_form_engine(gp, &basis, ord, ctx);
        if !nf.is_zero() {
            nf.make_primitive();
            add_element(&mut basis, &mut pairs, nf, ord, ctx);
        }
    }

    while !pairs.is_empty() {
        let idx = select_pair(&pairs, ord, ctx);
        let pair = pairs.swap_remove(idx);
        let s = spoly(&basis[pair.i], &basis[pair.j], &pair.lcm, ord, ctx);
        let mut nf = normal_form_engine(s, &basis, ord, ctx);
        if !nf.is_zero() {
            nf.make_primitive();
            add_element(&mut basis, &mut pairs, nf, ord, ctx);
        }
    }

    reduce_basis(basis, ord, ctx)
}

fn select_pair(pairs: &[Pair], ord: &TermOrdering, ctx: &VarContext) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        if ord.compare(ctx, &pairs[k].lcm, &pairs[best].lcm) == Ordering::Less {
            best = k;
        }
    }
    best
}

fn add_element(
    basis: &mut Vec<GPoly>,
    pairs: &mut Vec<Pair>,
    h: GPoly,
    _ord: &TermOrdering,
    _ctx: &VarContext,
) {
    let t = basis.len();
    let ht = h.lt().0.clone();

    // Candidate pairs (i, t).
    let cand: Vec<Pair> = (0..t)
        .map(|i| Pair { i, j: t, lcm: basis[i].lt().0.lcm(&ht) })
        .collect();

    // Criterion M: drop (i, t) when another lcm(j, t) strictly divides its lcm.
    let mut keep_m = vec![true; cand.len()];
    for i in 0..cand.len() {
        if !keep_m[i] {
            continue;
        }
        for j in 0..cand.len() {
            if i == j {
                continue;
            }
            if cand[j].lcm.divides(&cand[i].lcm) && cand[j].lcm != cand[i].lcm {
                keep_m[i] = false;
                break;
            }
        }
    }

    // Criterion F + product criterion: one pair per lcm class, none at all if
    // some pair in the class has coprime leading terms.
    let mut survivors: Vec<Pair> = Vec::new();
    let mut used = vec![false; cand.len()];
    for i in 0..cand.len() {
        if !keep_m[i] || used[i] {
            continue;
        }
        let mut class = vec![i];
        for j in i + 1..cand.len() {
            if keep_m[j] && !used[j] && cand[j].lcm == cand[i].lcm {
                used[j] = true;
                class.push(j);
            }
        }
        let coprime = class
            .iter()
            .any(|&k| basis[cand[k].i].lt().0.gcd_is_one(&ht));
        if !coprime {
            survivors.push(Pair {
                i: cand[class[0]].i,
                j: t,
                lcm: cand[class[0]].lcm.clone(),
            });
        }
    }

    // Criterion B on old pairs.
    pairs.retain(|p| {
        let lij = &p.lcm;
        if !ht.divides(lij) {
            return true;
        }
        let li = basis[p.i].lt().0.lcm(&ht);
        let lj = basis[p.j].lt().0.lcm(&ht);
        li == *lij || lj == *lij
    });

    pairs.extend(survivors);
    basis.push(h);
}

fn reduce_basis(mut basis: Vec<GPoly>, ord: &TermOrdering, ctx: &Arc<VarContext>) -> Vec<Polynomial> {
    // Keep only elements with minimal leading terms.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (ti, _) = basis[i].lt();
            let (tj, _) = basis[j].lt();
            if tj.divides(ti) && (ti != tj || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<GPoly> = basis
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| if k { Some(g) } else { None })
        .collect();

    // Tail-reduce until stable.
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<GPoly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            let mut nf = normal_form_engine(minimal[i].clone(), &others, ord, ctx);
            nf.make_primitive();
            if nf.terms != minimal[i].terms {
                changed = true;
                minimal[i] = nf;
            }
        }
        if !changed {
            break;
        }
    }

    for g in &mut minimal {
        g.make_monic();
    }
    minimal.sort_by(|a, b| ord.compare(ctx, &a.lt().0, &b.lt().0));
    minimal.into_iter().map(|g| g.into_poly(ctx)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn gb(ctx: &Arc<VarContext>, gens: &[&str], ord: TermOrdering) -> GroebnerBasis {
        let polys: Vec<Polynomial> =
            gens.iter().map(|s| parse_poly(ctx, s).unwrap()).collect();
        GroebnerBasis::compute(ctx, &polys, ord)
    }

    #[test]
    fn already_reduced() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let g = gb(&ctx, &["x^2", "x*y"], TermOrdering::DegRevLex);
        let strs: Vec<String> = g.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["x*y", "x^2"]);
    }

    #[test]
    fn substitution_consequence() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let g = gb(&ctx, &["x-1", "x*y-1"], TermOrdering::DegRevLex);
        let strs: Vec<String> = g.elements().iter().map(|p| p.to_string()).collect();
        assert!(strs.contains(&"y-1".to_string()), "basis was {:?}", strs);
    }

    #[test]
    fn generators_have_zero_normal_form() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let gens = ["x^2+y^2-1", "x*y-2", "x^3-y^3+x"];
        let g = gb(&ctx, &gens, TermOrdering::DegRevLex);
        for s in gens {
            let p = parse_poly(&ctx, s).unwrap();
            assert!(g.contains(&p).unwrap());
        }
    }

    #[test]
    fn linchange_image_ideal() {
        // (x1-x2)^2 - 1 and (x1+x2)^2 - 1 generate the same ideal as
        // {x1^2 + x2^2 - 1, x1*x2}.
        let ctx = VarContext::simple("x", &["x1", "x2"]);
        let g = gb(
            &ctx,
            &["x1^2-2*x1*x2+x2^2-1", "x1^2+2*x1*x2+x2^2-1"],
            TermOrdering::DegRevLex,
        );
        let h = gb(&ctx, &["x1^2+x2^2-1", "x1*x2"], TermOrdering::DegRevLex);
        assert_eq!(g.elements(), h.elements());
    }

    #[test]
    fn katsura_3_lex_vs_degrevlex_membership() {
        let ctx = VarContext::simple("x", &["x", "y", "z"]);
        let gens = ["x+2*y+2*z-1", "x^2+2*y^2+2*z^2-x", "2*x*y+2*y*z-y"];
        let a = gb(&ctx, &gens, TermOrdering::DegRevLex);
        let b = gb(&ctx, &gens, TermOrdering::Lex);
        // Same ideal: all elements of one basis reduce to zero in the other.
        for p in a.elements() {
            assert!(b.contains(p).unwrap());
        }
        for p in b.elements() {
            assert!(a.contains(p).unwrap());
        }
    }

    #[test]
    fn normal_form_is_canonical() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let g = gb(&ctx, &["x^2-y", "y^2-1"], TermOrdering::DegRevLex);
        let f = parse_poly(&ctx, "x^4").unwrap();
        // x^4 = (x^2)^2 -> y^2 -> 1
        assert_eq!(g.normal_form(&f).unwrap().to_string(), "1");
    }
}
