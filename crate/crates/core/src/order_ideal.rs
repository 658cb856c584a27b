use std::collections::HashSet;
use std::sync::Arc;

use crate::context::{BlockId, VarContext};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ordering::TermOrdering;
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::term::Term;

/// A finite, divisor-closed set of power products in n variables, kept
/// sorted ascending by degrevlex. This is combinatorial data; instantiate
/// terms into a concrete context with [`OrderIdeal::term_in`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrderIdeal {
    n: usize,
    elems: Vec<Vec<u32>>,
}

fn sort_exps(v: &mut [Vec<u32>]) {
    v.sort_by(|a, b| {
        Term::from_exps(a.clone()).cmp_degrevlex(&Term::from_exps(b.clone()))
    });
}

fn exps_name(e: &[u32]) -> String {
    if e.iter().all(|&x| x == 0) {
        return "1".to_string();
    }
    let names = ["x", "y", "z"];
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(i, &x)| {
            let base = if e.len() <= 3 {
                names[i].to_string()
            } else {
                format!("x{}", i + 1)
            };
            if x == 1 {
                base
            } else {
                format!("{}^{}", base, x)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl OrderIdeal {
    /// Validates divisor closure; the diagnostic names a missing divisor.
    pub fn new(n: usize, mut elems: Vec<Vec<u32>>) -> Result<Self> {
        assert!(elems.iter().all(|e| e.len() == n), "exponent arity mismatch");
        elems.sort();
        elems.dedup();
        let have: HashSet<&Vec<u32>> = elems.iter().collect();
        for e in &elems {
            for i in 0..n {
                if e[i] > 0 {
                    let mut d = e.clone();
                    d[i] -= 1;
                    if !have.contains(&d) {
                        return Err(Error::NotDivisorClosed(exps_name(&d)));
                    }
                }
            }
        }
        if elems.is_empty() {
            return Err(Error::NotDivisorClosed("1".into()));
        }
        let mut elems = elems;
        sort_exps(&mut elems);
        Ok(OrderIdeal { n, elems })
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn mu(&self) -> usize {
        self.elems.len()
    }

    pub fn exps(&self) -> &[Vec<u32>] {
        &self.elems
    }

    pub fn contains(&self, e: &[u32]) -> bool {
        self.elems.iter().any(|f| f == e)
    }

    /// The border: (x_1 O ∪ ... ∪ x_n O) \ O, ascending degrevlex.
    pub fn border(&self) -> Vec<Vec<u32>> {
        let have: HashSet<&Vec<u32>> = self.elems.iter().collect();
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for e in &self.elems {
            for i in 0..self.n {
                let mut b = e.clone();
                b[i] += 1;
                if !have.contains(&b) && seen.insert(b.clone()) {
                    out.push(b);
                }
            }
        }
        sort_exps(&mut out);
        out
    }

    /// The corner set: minimal monomial generators of the complement.
    pub fn corners(&self) -> Vec<Vec<u32>> {
        let border = self.border();
        let mut out: Vec<Vec<u32>> = Vec::new();
        for b in &border {
            let minimal = border.iter().all(|c| {
                c == b || !Term::from_exps(c.clone()).divides(&Term::from_exps(b.clone()))
            });
            if minimal {
                out.push(b.clone());
            }
        }
        sort_exps(&mut out);
        out
    }

    /// True iff every corner exceeds every element of O under the ordering.
    pub fn is_cornercut(&self, ord: &TermOrdering) -> bool {
        let scratch = scratch_ctx(self.n);
        self.corners().iter().all(|c| {
            let ct = Term::from_exps(c.clone());
            self.elems.iter().all(|t| {
                ord.compare(&scratch, &ct, &Term::from_exps(t.clone()))
                    == std::cmp::Ordering::Greater
            })
        })
    }

    /// Instantiates element k as a term of `ctx` inside the x block.
    pub fn term_in(&self, ctx: &Arc<VarContext>, x_block: BlockId, k: usize) -> Term {
        place(ctx, x_block, &self.elems[k])
    }

    pub fn terms_in(&self, ctx: &Arc<VarContext>, x_block: BlockId) -> Vec<Term> {
        (0..self.mu()).map(|k| self.term_in(ctx, x_block, k)).collect()
    }

    /// All order ideals of the given cardinality, deterministically ordered.
    pub fn enumerate(n: usize, mu: usize) -> Vec<OrderIdeal> {
        let trivial = vec![vec![0u32; n]];
        let mut layer: Vec<Vec<Vec<u32>>> = vec![trivial];
        for _ in 1..mu {
            let mut next: Vec<Vec<Vec<u32>>> = Vec::new();
            let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
            for d in &layer {
                let oi = OrderIdeal { n, elems: d.clone() };
                let have: HashSet<&Vec<u32>> = d.iter().collect();
                for b in oi.border() {
                    let closed = (0..n).all(|i| {
                        if b[i] == 0 {
                            return true;
                        }
                        let mut c = b.clone();
                        c[i] -= 1;
                        have.contains(&c)
                    });
                    if closed {
                        let mut nd = d.clone();
                        nd.push(b);
                        nd.sort();
                        if seen.insert(nd.clone()) {
                            next.push(nd);
                        }
                    }
                }
            }
            layer = next;
        }
        let mut out: Vec<OrderIdeal> = layer
            .into_iter()
            .map(|mut elems| {
                sort_exps(&mut elems);
                OrderIdeal { n, elems }
            })
            .collect();
        out.sort_by(|a, b| a.elems.cmp(&b.elems));
        out
    }

    /// Renders like `1, y, x, x*y` using the context's variable names.
    pub fn display_in(&self, ctx: &Arc<VarContext>, x_block: BlockId) -> String {
        self.terms_in(ctx, x_block)
            .iter()
            .map(|t| {
                Polynomial::from_term(ctx, t.clone(), Rational::one()).to_string()
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn scratch_ctx(n: usize) -> Arc<VarContext> {
    let mut b = VarContext::builder();
    b.x_block(n);
    b.build()
}

/// Places an exponent vector into the x block of a larger context.
pub fn place(ctx: &Arc<VarContext>, x_block: BlockId, exps: &[u32]) -> Term {
    let range = ctx.block_range(x_block);
    assert_eq!(range.len(), exps.len(), "x block arity mismatch");
    let mut full = vec![0u32; ctx.num_vars()];
    full[range].copy_from_slice(exps);
    Term::from_exps(full)
}

/// Parses a comma-separated term list into an order ideal over the x block.
pub fn parse_order_ideal(
    ctx: &Arc<VarContext>,
    x_block: BlockId,
    src: &str,
) -> Result<OrderIdeal> {
    let polys = crate::parse::parse_poly_list(ctx, src)?;
    let range = ctx.block_range(x_block);
    let mut elems = Vec::new();
    for p in polys {
        let mut it = p.terms();
        match (it.next(), it.next()) {
            (Some((t, c)), None) if c.is_one() => {
                if !t.supported_in(range.clone()) {
                    return Err(Error::ContextMismatch);
                }
                elems.push(t.exps()[range.clone()].to_vec());
            }
            _ => {
                return Err(Error::Parse {
                    line: 1,
                    col: 1,
                    msg: "order ideal entries must be single terms".into(),
                })
            }
        }
    }
    OrderIdeal::new(range.len(), elems)
}

/// An invertible affine change of coordinates x_i -> a_i0 + sum_j a_ij x_j.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearChange {
    translation: Vec<Rational>,
    mat: Matrix<Rational>,
}

impl LinearChange {
    pub fn new(translation: Vec<Rational>, mat: Matrix<Rational>) -> Result<Self> {
        if mat.rows() != mat.cols() || mat.rows() != translation.len() {
            return Err(Error::Shape("linear change must be n x n with n offsets".into()));
        }
        if mat.det_bareiss()?.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(LinearChange { translation, mat })
    }

    pub fn identity(n: usize) -> Self {
        LinearChange {
            translation: vec![Rational::zero(); n],
            mat: Matrix::identity_like(&Rational::one(), n),
        }
    }

    pub fn translation_by(offsets: Vec<Rational>) -> Self {
        let n = offsets.len();
        LinearChange {
            translation: offsets,
            mat: Matrix::identity_like(&Rational::one(), n),
        }
    }

    pub fn n(&self) -> usize {
        self.translation.len()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.mat
    }

    pub fn translation(&self) -> &[Rational] {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self == &LinearChange::identity(self.n())
    }

    /// The image of variable i as a polynomial of `ctx`.
    pub fn image_of_var(
        &self,
        ctx: &Arc<VarContext>,
        x_block: BlockId,
        i: usize,
    ) -> Polynomial {
        let range = ctx.block_range(x_block);
        let mut p = Polynomial::constant(ctx, self.translation[i].clone());
        for j in 0..self.n() {
            let c = self.mat.at(i, j);
            if !crate::matrix::Scalar::is_zero(c) {
                p.add_term(Term::var(ctx.num_vars(), range.start + j), c.clone());
            }
        }
        p
    }

    /// Applies the substitution x_i -> a_i0 + sum_j a_ij x_j to f.
    pub fn apply(&self, f: &Polynomial, x_block: BlockId) -> Polynomial {
        let ctx = f.context();
        let range = ctx.block_range(x_block);
        let assign: Vec<(usize, Polynomial)> = (0..self.n())
            .map(|i| (range.start + i, self.image_of_var(ctx, x_block, i)))
            .collect();
        f.substitute(&assign)
    }

    /// The inverse change: linear part A^-1, translation -A^-1 a0.
    pub fn inverse(&self) -> LinearChange {
        let inv = self
            .mat
            .inverse_adjugate()
            .expect("linear change matrices are invertible by construction");
        let n = self.n();
        let b = Matrix::from_fn(n, 1, |i, _| self.translation[i].clone());
        let ab = inv.mul(&b);
        LinearChange {
            translation: (0..n).map(|i| -ab.at(i, 0)).collect(),
            mat: inv,
        }
    }
}

/// Border mode pairs an order ideal with its border; cornercut mode with its
/// corner set, for a certifying term ordering.
#[derive(Clone, PartialEq, Debug)]
pub enum PseudoMode {
    Border,
    Cornercut(TermOrdering),
}

/// The image of an order ideal (or cornercut) under an affine change of
/// coordinates, together with the matching pseudo border.
#[derive(Clone, PartialEq, Debug)]
pub struct PseudoOrderIdeal {
    base: OrderIdeal,
    change: LinearChange,
    mode: PseudoMode,
}

impl PseudoOrderIdeal {
    pub fn new(base: OrderIdeal, change: LinearChange, mode: PseudoMode) -> Result<Self> {
        if change.n() != base.num_vars() {
            return Err(Error::Shape("change arity differs from order ideal".into()));
        }
        if let PseudoMode::Cornercut(ord) = &mode {
            if !base.is_cornercut(ord) {
                return Err(Error::NotCornercut);
            }
        }
        Ok(PseudoOrderIdeal { base, change, mode })
    }

    /// An order ideal viewed as a pseudo order ideal (identity change).
    pub fn plain(base: OrderIdeal) -> Self {
        let n = base.num_vars();
        PseudoOrderIdeal { base, change: LinearChange::identity(n), mode: PseudoMode::Border }
    }

    pub fn base(&self) -> &OrderIdeal {
        &self.base
    }

    pub fn change(&self) -> &LinearChange {
        &self.change
    }

    pub fn mode(&self) -> &PseudoMode {
        &self.mode
    }

    pub fn mu(&self) -> usize {
        self.base.mu()
    }

    pub fn is_plain(&self) -> bool {
        matches!(self.mode, PseudoMode::Border) && self.change.is_identity()
    }

    /// Exponent vectors of the base border (border mode) or corner set.
    pub fn base_border_exps(&self) -> Vec<Vec<u32>> {
        match &self.mode {
            PseudoMode::Border => self.base.border(),
            PseudoMode::Cornercut(_) => self.base.corners(),
        }
    }

    pub fn alpha(&self) -> usize {
        self.base_border_exps().len()
    }

    /// The polynomials phi(t_1), ..., phi(t_mu) in the given context.
    pub fn elements(&self, ctx: &Arc<VarContext>, x_block: BlockId) -> Vec<Polynomial> {
        self.base
            .exps()
            .iter()
            .map(|e| self.image_of(ctx, x_block, e))
            .collect()
    }

    /// The pseudo border polynomials phi(b_1), ..., phi(b_alpha).
    pub fn pseudo_border(&self, ctx: &Arc<VarContext>, x_block: BlockId) -> Vec<Polynomial> {
        self.base_border_exps()
            .iter()
            .map(|e| self.image_of(ctx, x_block, e))
            .collect()
    }

    fn image_of(&self, ctx: &Arc<VarContext>, x_block: BlockId, exps: &[u32]) -> Polynomial {
        let t = place(ctx, x_block, exps);
        let mono = Polynomial::from_term(ctx, t, Rational::one());
        if self.change.is_identity() {
            mono
        } else {
            self.change.apply(&mono, x_block)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn oi(n: usize, elems: &[&[u32]]) -> OrderIdeal {
        OrderIdeal::new(n, elems.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn border_of_unit() {
        let o = oi(2, &[&[0, 0]]);
        assert_eq!(o.border(), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(o.corners(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn border_of_o5() {
        // O = {1, y, x, xy}: border {y^2, x^2, xy^2, x^2y}, ascending degrevlex.
        let o = oi(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        assert_eq!(
            o.border(),
            vec![vec![0, 2], vec![2, 0], vec![1, 2], vec![2, 1]]
        );
        assert_eq!(o.corners(), vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn border_of_x_powers() {
        // O = {1, x, x^2, x^3} in 2 vars: border {y, xy, x^2y, x^3y, x^4}.
        let o = oi(2, &[&[0, 0], &[1, 0], &[2, 0], &[3, 0]]);
        assert_eq!(
            o.border(),
            vec![
                vec![0, 1],
                vec![1, 1],
                vec![2, 1],
                vec![3, 1],
                vec![4, 0]
            ]
        );
        assert_eq!(o.corners(), vec![vec![0, 1], vec![4, 0]]);
    }

    #[test]
    fn corners_of_o3() {
        // O3 = {1, x, y, x^2}: corner set {xy, y^2, x^3}, ascending degrevlex.
        let o = oi(2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 0]]);
        assert_eq!(o.corners(), vec![vec![0, 2], vec![1, 1], vec![3, 0]]);
    }

    #[test]
    fn divisor_closure_diagnostic() {
        let r = OrderIdeal::new(2, vec![vec![0, 0], vec![1, 1]]);
        match r {
            Err(Error::NotDivisorClosed(s)) => assert!(s == "x" || s == "y"),
            other => panic!("expected NotDivisorClosed, got {:?}", other),
        }
    }

    #[test]
    fn cornercut_checks() {
        // O = {1, x, x^2, x^3} with weights deg(x)=1, deg(y)=4 is a cornercut.
        let o = oi(2, &[&[0, 0], &[1, 0], &[2, 0], &[3, 0]]);
        assert!(o.is_cornercut(&TermOrdering::weights(vec![1, 4])));
        // O5 is not a cornercut for degrevlex, lex either way, or small weights.
        let o5 = oi(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        assert!(!o5.is_cornercut(&TermOrdering::DegRevLex));
        assert!(!o5.is_cornercut(&TermOrdering::Lex));
        for wx in 1..=10 {
            for wy in 1..=10 {
                assert!(
                    !o5.is_cornercut(&TermOrdering::weights(vec![wx, wy])),
                    "unexpected cornercut with weights ({}, {})",
                    wx,
                    wy
                );
            }
        }
        // O = {1} is a cornercut for any ordering.
        let unit = oi(2, &[&[0, 0]]);
        assert!(unit.is_cornercut(&TermOrdering::DegRevLex));
    }

    #[test]
    fn enumerate_colength_four() {
        let all = OrderIdeal::enumerate(2, 4);
        assert_eq!(all.len(), 5);
        let mus: Vec<usize> = all.iter().map(|o| o.mu()).collect();
        assert_eq!(mus, vec![4; 5]);
    }

    #[test]
    fn apply_change_and_inverse() {
        let ctx = VarContext::simple("x", &["x1", "x2"]);
        let xb = ctx.block("x").unwrap();
        // phi(x1) = x1 + x2, phi(x2) = x1 - x2
        let ch = LinearChange::new(
            vec![Rational::zero(), Rational::zero()],
            Matrix::new(
                2,
                2,
                vec![
                    Rational::from_int(1),
                    Rational::from_int(1),
                    Rational::from_int(1),
                    Rational::from_int(-1),
                ],
            ),
        )
        .unwrap();
        let f = parse_poly(&ctx, "x1^2-1").unwrap();
        let g = ch.apply(&f, xb);
        assert_eq!(g.to_string(), "x1^2+2*x1*x2+x2^2-1");
        let back = ch.inverse().apply(&g, xb);
        assert_eq!(back, f);
    }

    #[test]
    fn translation_inverse() {
        let ctx = VarContext::simple("x", &["x1", "x2"]);
        let xb = ctx.block("x").unwrap();
        let ch = LinearChange::translation_by(vec![
            Rational::from_int(1),
            Rational::from_int(1),
        ]);
        let inv = ch.inverse();
        assert_eq!(inv.translation(), &[Rational::from_int(-1), Rational::from_int(-1)]);
        let f = parse_poly(&ctx, "x1*x2").unwrap();
        assert_eq!(inv.apply(&ch.apply(&f, xb), xb), f);
    }

    #[test]
    fn singular_change_rejected() {
        let m = Matrix::new(
            2,
            2,
            vec![
                Rational::from_int(1),
                Rational::from_int(2),
                Rational::from_int(2),
                Rational::from_int(4),
            ],
        );
        assert!(matches!(
            LinearChange::new(vec![Rational::zero(), Rational::zero()], m),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn cornercut_mode_rejects_non_cornercut() {
        let o5 = oi(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
        let r = PseudoOrderIdeal::new(
            o5,
            LinearChange::identity(2),
            PseudoMode::Cornercut(TermOrdering::DegRevLex),
        );
        assert!(matches!(r, Err(Error::NotCornercut)));
    }

    #[test]
    fn parse_and_reject() {
        let ctx = VarContext::simple("x", &["x", "y"]);
        let xb = ctx.block("x").unwrap();
        let o = parse_order_ideal(&ctx, xb, "1, y, x, x*y").unwrap();
        assert_eq!(o.mu(), 4);
        match parse_order_ideal(&ctx, xb, "1, x*y") {
            Err(Error::NotDivisorClosed(_)) => {}
            other => panic!("expected NotDivisorClosed, got {:?}", other),
        }
    }
}
