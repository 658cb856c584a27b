use std::cmp::Ordering;
use std::fmt;

/// A power product, stored as an exponent vector aligned with a context's
/// variable order. The context itself is carried by the enclosing polynomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    exps: Box<[u32]>,
}

impl Term {
    pub fn one(num_vars: usize) -> Self {
        Term { exps: vec![0; num_vars].into_boxed_slice() }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Term { exps: exps.into_boxed_slice() }
    }

    pub fn var(num_vars: usize, idx: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[idx] = 1;
        Term { exps: e.into_boxed_slice() }
    }

    pub fn var_pow(num_vars: usize, idx: usize, pow: u32) -> Self {
        let mut e = vec![0; num_vars];
        e[idx] = pow;
        Term { exps: e.into_boxed_slice() }
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn degree_in(&self, range: std::ops::Range<usize>) -> u32 {
        self.exps[range].iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// True if the support lies inside the index range.
    pub fn supported_in(&self, range: std::ops::Range<usize>) -> bool {
        self.exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || (i >= range.start && i < range.end))
    }

    pub fn mul(&self, other: &Term) -> Term {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Term {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul_var(&self, idx: usize) -> Term {
        let mut e = self.exps.to_vec();
        e[idx] += 1;
        Term { exps: e.into_boxed_slice() }
    }

    pub fn divides(&self, other: &Term) -> bool {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// other / self; caller must ensure divisibility.
    pub fn div_into(&self, other: &Term) -> Term {
        debug_assert!(self.divides(other));
        Term {
            exps: other
                .exps
                .iter()
                .zip(self.exps.iter())
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn min_of(a: &Term, b: &Term) -> Term {
        Term {
            exps: a
                .exps
                .iter()
                .zip(b.exps.iter())
                .map(|(x, y)| *x.min(y))
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Term) -> Term {
        Term {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd_is_one(&self, other: &Term) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Restricts the exponent vector to a range, zeroing everything else.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Term {
        let mut e = vec![0; self.exps.len()];
        e[range.clone()].copy_from_slice(&self.exps[range]);
        Term { exps: e.into_boxed_slice() }
    }

    /// Re-index into a target context given an index map (see VarContext::embedding).
    pub fn remap(&self, map: &[usize], target_vars: usize) -> Term {
        let mut e = vec![0; target_vars];
        for (i, &x) in self.exps.iter().enumerate() {
            if x > 0 {
                e[map[i]] += x;
            }
        }
        Term { exps: e.into_boxed_slice() }
    }

    /// Degree-reverse-lexicographic comparison with respect to the intrinsic
    /// variable order (earlier index = larger variable).
    pub fn cmp_degrevlex(&self, other: &Term) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        // Same degree: larger term has the *smaller* exponent on the last
        // variable where they differ.
        for i in (0..self.exps.len()).rev() {
            let (a, b) = (self.exps[i], other.exps[i]);
            if a != b {
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }

    /// Lexicographic comparison (earlier index = larger variable).
    pub fn cmp_lex(&self, other: &Term) -> Ordering {
        for i in 0..self.exps.len() {
            let (a, b) = (self.exps[i], other.exps[i]);
            if a != b {
                return a.cmp(&b);
            }
        }
        Ordering::Equal
    }
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_degrevlex(other)
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: &[u32]) -> Term {
        Term::from_exps(e.to_vec())
    }

    #[test]
    fn degrevlex_two_vars() {
        // x = (1,0), y = (0,1); x > y under degrevlex.
        assert_eq!(t(&[1, 0]).cmp_degrevlex(&t(&[0, 1])), Ordering::Greater);
        // x^2 > xy > y^2
        assert_eq!(t(&[2, 0]).cmp_degrevlex(&t(&[1, 1])), Ordering::Greater);
        assert_eq!(t(&[1, 1]).cmp_degrevlex(&t(&[0, 2])), Ordering::Greater);
        // xy^2 < x^2y
        assert_eq!(t(&[1, 2]).cmp_degrevlex(&t(&[2, 1])), Ordering::Less);
    }

    #[test]
    fn division() {
        let a = t(&[1, 2]);
        let b = t(&[2, 2]);
        assert!(a.divides(&b));
        assert_eq!(a.div_into(&b), t(&[1, 0]));
        assert!(!b.divides(&a));
    }
}
