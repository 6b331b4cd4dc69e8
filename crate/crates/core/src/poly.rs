//! Commutative polynomials in the coordinates of `V` with exact scalar
//! coefficients. Serves both as the polynomial module of the Weyl algebra
//! and as the symmetric-algebra part of Hecke normal forms.

use crate::scalar::{Q, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Sparse polynomial; keys are exponent vectors of length `n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CPoly {
    pub n: usize,
    pub terms: BTreeMap<Vec<u32>, Scalar>,
}

impl CPoly {
    pub fn zero(n: usize) -> CPoly {
        CPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> CPoly {
        CPoly::constant(n, Scalar::one())
    }

    pub fn constant(n: usize, c: Scalar) -> CPoly {
        let mut p = CPoly::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn var(n: usize, i: usize) -> CPoly {
        let mut m = vec![0; n];
        m[i] = 1;
        let mut p = CPoly::zero(n);
        p.add_term(m, Scalar::one());
        p
    }

    /// Linear form with the given rational coordinates.
    pub fn linear(coeffs: &[Q]) -> CPoly {
        let n = coeffs.len();
        let mut p = CPoly::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = vec![0; n];
                m[i] = 1;
                p.add_term(m, Scalar::from_q(c.clone()));
            }
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &CPoly) -> CPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> CPoly {
        CPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> CPoly {
        let mut out = CPoly::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &CPoly) -> CPoly {
        let mut out = CPoly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Vec<u32> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> CPoly {
        let mut out = CPoly::one(self.n);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Partial derivative in variable `i`.
    pub fn deriv(&self, i: usize) -> CPoly {
        let mut out = CPoly::zero(self.n);
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut m2 = m.clone();
                m2[i] -= 1;
                out.add_term(m2, c.scale(&Q::from_integer(m[i].into())));
            }
        }
        out
    }

    /// Directional derivative with rational direction coefficients.
    pub fn deriv_dir(&self, dir: &[Q]) -> CPoly {
        let mut out = CPoly::zero(self.n);
        for (i, d) in dir.iter().enumerate() {
            if !d.is_zero() {
                out = out.add(&self.deriv(i).scale(&Scalar::from_q(d.clone())));
            }
        }
        out
    }

    /// Linear substitution `v_i -> sum_j A[i][j] v_j`.
    pub fn subst_linear(&self, a: &[Vec<Q>]) -> CPoly {
        let images: Vec<CPoly> = (0..self.n).map(|i| CPoly::linear(&a[i])).collect();
        let mut out = CPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut acc = CPoly::constant(self.n, c.clone());
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&images[i]);
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Exact quotient by a linear form, if the division is exact.
    pub fn divide_by_linear(&self, l: &[Q]) -> Option<CPoly> {
        let pivot = l.iter().position(|c| !c.is_zero())?;
        let lp = CPoly::linear(l);
        let mut quot = CPoly::zero(self.n);
        let mut rem = self.clone();
        while !rem.is_zero() {
            // leading term in pivot-graded order
            let (m, c) = rem
                .terms
                .iter()
                .max_by_key(|(m, _)| (m[pivot], (*m).clone()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .unwrap();
            if m[pivot] == 0 {
                return None;
            }
            let mut qm = m.clone();
            qm[pivot] -= 1;
            let qc = c.scale(&l[pivot].recip());
            let mut qpoly = CPoly::zero(self.n);
            qpoly.add_term(qm, qc);
            rem = rem.sub(&qpoly.mul(&lp));
            quot = quot.add(&qpoly);
        }
        Some(quot)
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, x: &[Q]) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = Q::one();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    v *= &x[i];
                }
            }
            out = &out + &c.scale(&v);
        }
        out
    }

    /// Degree-d homogeneous part.
    pub fn homogeneous(&self, d: u32) -> CPoly {
        CPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.iter().sum::<u32>() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&vec![0; self.n])
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }
}

/// All exponent vectors of total degree `d` in `n` variables, sorted.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=d {
            cur.push(a);
            rec(n - 1, d - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out.sort();
    out
}
