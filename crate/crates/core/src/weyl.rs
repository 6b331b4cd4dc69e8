//! The Weyl algebra `W(V + V*, omega)` with normal-ordered exact arithmetic,
//! the linear isomorphism `eta` onto the symmetric algebra and its inverse
//! quantization map, the `so(V, B)` and `sl(2)` embeddings, the polynomial
//! module and the contraction pairing.
//!
//! Conventions: `e_i` is the image of the i-th basis vector of `V`, `f_i`
//! the image of its dual. The defining relation is `[f_j, e_i] = delta_ij`,
//! equivalently `omega(f_j, e_i) = delta_ij` and `omega(e_i, f_j) =
//! -delta_ij`. Normal order puts every `e` left of every `f`.

use crate::matrix::{q_identity, q_inverse, q_mat_mul, q_transpose};
use crate::poly::CPoly;
use crate::scalar::{q, qq, Q, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Normal-ordered monomial `e^a f^b`; also reused as a commutative monomial
/// of the symmetric algebra `S(V + V*)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct WMono {
    pub e: Vec<u32>,
    pub f: Vec<u32>,
}

impl WMono {
    pub fn one(n: usize) -> WMono {
        WMono {
            e: vec![0; n],
            f: vec![0; n],
        }
    }

    pub fn degree(&self) -> u32 {
        self.e.iter().sum::<u32>() + self.f.iter().sum::<u32>()
    }

    pub fn display(&self) -> String {
        let mut parts = Vec::new();
        for (i, &a) in self.e.iter().enumerate() {
            if a == 1 {
                parts.push(format!("e{}", i + 1));
            } else if a > 1 {
                parts.push(format!("e{}^{}", i + 1, a));
            }
        }
        for (i, &b) in self.f.iter().enumerate() {
            if b == 1 {
                parts.push(format!("f{}", i + 1));
            } else if b > 1 {
                parts.push(format!("f{}^{}", i + 1, b));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

pub fn binom_pub(n: u32, k: u32) -> Q {
    binom(n, k)
}

fn binom(n: u32, k: u32) -> Q {
    if k > n {
        return Q::zero();
    }
    let mut v = Q::one();
    for i in 0..k {
        v *= qq((n - i) as i64, (i + 1) as i64);
    }
    v
}

fn factorial(n: u32) -> Q {
    let mut v = Q::one();
    for i in 2..=n {
        v *= q(i as i64);
    }
    v
}

/// Element of the Weyl algebra in normal-ordered form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeylElt {
    pub n: usize,
    pub terms: BTreeMap<WMono, Scalar>,
}

impl WeylElt {
    pub fn zero(n: usize) -> WeylElt {
        WeylElt {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> WeylElt {
        WeylElt::constant(n, Scalar::one())
    }

    pub fn constant(n: usize, c: Scalar) -> WeylElt {
        let mut x = WeylElt::zero(n);
        x.add_term(WMono::one(n), c);
        x
    }

    pub fn gen_e(n: usize, i: usize) -> WeylElt {
        let mut m = WMono::one(n);
        m.e[i] = 1;
        let mut x = WeylElt::zero(n);
        x.add_term(m, Scalar::one());
        x
    }

    pub fn gen_f(n: usize, i: usize) -> WeylElt {
        let mut m = WMono::one(n);
        m.f[i] = 1;
        let mut x = WeylElt::zero(n);
        x.add_term(m, Scalar::one());
        x
    }

    /// `sum_i c_i e_i`.
    pub fn e_linear(coeffs: &[Q]) -> WeylElt {
        let n = coeffs.len();
        let mut x = WeylElt::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = WMono::one(n);
                m.e[i] = 1;
                x.add_term(m, Scalar::from_q(c.clone()));
            }
        }
        x
    }

    /// `sum_i c_i f_i`.
    pub fn f_linear(coeffs: &[Q]) -> WeylElt {
        let n = coeffs.len();
        let mut x = WeylElt::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = WMono::one(n);
                m.f[i] = 1;
                x.add_term(m, Scalar::from_q(c.clone()));
            }
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: WMono, c: Scalar) {
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

    pub fn add(&self, other: &WeylElt) -> WeylElt {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WeylElt) -> WeylElt {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> WeylElt {
        let mut out = WeylElt::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Normal-ordered product.
    pub fn mul(&self, other: &WeylElt) -> WeylElt {
        assert_eq!(self.n, other.n, "mixed Weyl algebra dimensions");
        let mut out = WeylElt::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let c = c1 * c2;
                for (m, w) in mono_mul(m1, m2) {
                    out.add_term(m, c.scale(&w));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &WeylElt) -> WeylElt {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn pow(&self, e: u32) -> WeylElt {
        let mut out = WeylElt::one(self.n);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(m, c)| (m.display(), c.to_string()))
            .collect();
        serde_json::to_value(map).unwrap()
    }
}

/// Product of two normal-ordered monomials as a sum of normal-ordered
/// monomials: `f_i^p e_i^q = sum_m binom(p,m) binom(q,m) m! e^(q-m) f^(p-m)`
/// independently in each variable.
pub fn mono_mul(a: &WMono, b: &WMono) -> Vec<(WMono, Q)> {
    let n = a.e.len();
    let mut out: Vec<(WMono, Q)> = vec![(
        WMono {
            e: a.e.clone(),
            f: vec![0; n],
        },
        Q::one(),
    )];
    for i in 0..n {
        let p = a.f[i];
        let qd = b.e[i];
        let top = p.min(qd);
        let mut next = Vec::new();
        for (m0, c0) in &out {
            for m in 0..=top {
                let w = &binom(p, m) * &binom(qd, m) * factorial(m);
                let mut mm = m0.clone();
                mm.e[i] += qd - m;
                mm.f[i] += p - m;
                next.push((mm, c0 * &w));
            }
        }
        out = next;
    }
    for (m, _) in out.iter_mut() {
        for i in 0..n {
            m.f[i] += b.f[i];
        }
    }
    out
}

/// Element of the symmetric algebra `S(V + V*)`, commutative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymPoly {
    pub n: usize,
    pub terms: BTreeMap<WMono, Scalar>,
}

impl SymPoly {
    pub fn zero(n: usize) -> SymPoly {
        SymPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> SymPoly {
        let mut p = SymPoly::zero(n);
        p.add_term(WMono::one(n), Scalar::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: WMono, c: Scalar) {
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

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> SymPoly {
        let mut out = SymPoly::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m = WMono {
                    e: m1.e.iter().zip(&m2.e).map(|(x, y)| x + y).collect(),
                    f: m1.f.iter().zip(&m2.f).map(|(x, y)| x + y).collect(),
                };
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    /// Degree-d homogeneous component.
    pub fn component(&self, d: u32) -> SymPoly {
        SymPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.keys().map(|m| m.degree()).collect();
        ds.sort();
        ds.dedup();
        ds
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&WMono::one(self.n))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn mul_e(&self, i: usize) -> SymPoly {
        let mut out = SymPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm.e[i] += 1;
            out.add_term(mm, c.clone());
        }
        out
    }

    fn mul_f(&self, i: usize) -> SymPoly {
        let mut out = SymPoly::zero(self.n);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm.f[i] += 1;
            out.add_term(mm, c.clone());
        }
        out
    }

    fn d_e(&self, i: usize) -> SymPoly {
        let mut out = SymPoly::zero(self.n);
        for (m, c) in &self.terms {
            if m.e[i] > 0 {
                let mut mm = m.clone();
                mm.e[i] -= 1;
                out.add_term(mm, c.scale(&q(m.e[i] as i64)));
            }
        }
        out
    }

    fn d_f(&self, i: usize) -> SymPoly {
        let mut out = SymPoly::zero(self.n);
        for (m, c) in &self.terms {
            if m.f[i] > 0 {
                let mut mm = m.clone();
                mm.f[i] -= 1;
                out.add_term(mm, c.scale(&q(m.f[i] as i64)));
            }
        }
        out
    }
}

/// `gamma(e_i) P = e_i P - 1/2 d/df_i P` (since `omega(e_i, f_j) = -delta`).
fn gamma_e(p: &SymPoly, i: usize) -> SymPoly {
    p.mul_e(i).sub(&p.d_f(i).scale(&Scalar::frac(1, 2)))
}

/// `gamma(f_i) P = f_i P + 1/2 d/de_i P`.
fn gamma_f(p: &SymPoly, i: usize) -> SymPoly {
    p.mul_f(i).add(&p.d_e(i).scale(&Scalar::frac(1, 2)))
}

/// The linear isomorphism `eta(x) = gamma(x)(1)` onto `S(V + V*)`.
pub fn eta(x: &WeylElt) -> SymPoly {
    let n = x.n;
    let mut out = SymPoly::zero(n);
    for (m, c) in &x.terms {
        let mut p = SymPoly::one(n);
        for i in (0..n).rev() {
            for _ in 0..m.f[i] {
                p = gamma_f(&p, i);
            }
        }
        for i in (0..n).rev() {
            for _ in 0..m.e[i] {
                p = gamma_e(&p, i);
            }
        }
        out = out.add(&p.scale(c));
    }
    out
}

/// Degree-d component of `eta(x)`.
pub fn degree_component(x: &WeylElt, d: u32) -> SymPoly {
    eta(x).component(d)
}

/// Quantization: full symmetrization, the inverse of `eta`.
pub fn quantize(p: &SymPoly) -> WeylElt {
    let n = p.n;
    let mut out = WeylElt::zero(n);
    for (m, c) in &p.terms {
        // the monomial as a word of generators
        let mut word: Vec<(bool, usize)> = Vec::new();
        for (i, &a) in m.e.iter().enumerate() {
            for _ in 0..a {
                word.push((true, i));
            }
        }
        for (i, &b) in m.f.iter().enumerate() {
            for _ in 0..b {
                word.push((false, i));
            }
        }
        let d = word.len();
        if d == 0 {
            out.add_term(WMono::one(n), c.clone());
            continue;
        }
        let mut idx: Vec<usize> = (0..d).collect();
        let mut acc = WeylElt::zero(n);
        permute(&mut idx, 0, &mut |perm| {
            let mut x = WeylElt::one(n);
            for &p in perm {
                let (is_e, i) = word[p];
                let g = if is_e {
                    WeylElt::gen_e(n, i)
                } else {
                    WeylElt::gen_f(n, i)
                };
                x = x.mul(&g);
            }
            acc = acc.add(&x);
        });
        let inv_fact = Scalar::from_q(factorial(d as u32).recip());
        out = out.add(&acc.scale(&(c * &inv_fact)));
    }
    out
}

fn permute(idx: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == idx.len() {
        visit(idx);
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, visit);
        idx.swap(k, i);
    }
}

/// Checks `X^t G + G X = 0` (B-skewness).
pub fn is_b_skew(x: &[Vec<Q>], gram: &[Vec<Q>]) -> bool {
    let xt = q_transpose(x);
    let lhs = q_mat_mul(&xt, gram);
    let rhs = q_mat_mul(gram, x);
    lhs.iter()
        .zip(&rhs)
        .all(|(r1, r2)| r1.iter().zip(r2).all(|(a, b)| (a + b).is_zero()))
}

/// The embedding `nu'(X) = sum_i (X v_i) v_i^*` of `so(V, B)`.
/// Panics if `X` is not B-skew.
pub fn nu_prime(x: &[Vec<Q>], gram: &[Vec<Q>]) -> WeylElt {
    assert!(is_b_skew(x, gram), "nu' requires a B-skew matrix");
    let n = x.len();
    let mut out = WeylElt::zero(n);
    for i in 0..n {
        for j in 0..n {
            // X v_i = sum_j X[j][i] v_j, paired with f_i
            if !x[j][i].is_zero() {
                let mut m = WMono::one(n);
                m.e[j] = 1;
                m.f[i] = 1;
                out.add_term(m, Scalar::from_q(x[j][i].clone()));
            }
        }
    }
    out
}

/// Basis `G^{-1} (E_ij - E_ji)`, `i < j`, of the B-skew matrices.
pub fn so_basis(gram: &[Vec<Q>]) -> Vec<Vec<Vec<Q>>> {
    let n = gram.len();
    let ginv = q_inverse(gram).expect("Gram matrix invertible");
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut skew = vec![vec![Q::zero(); n]; n];
            for (r, row) in skew.iter_mut().enumerate() {
                row[j] = ginv[r][i].clone();
                let v = &row[i] - &ginv[r][j];
                row[i] = v;
            }
            out.push(skew);
        }
    }
    out
}

/// The commuting `sl(2)` inside the Weyl algebra, relative to a Gram matrix.
pub struct Sl2 {
    pub n: usize,
    /// `Delta = sum G_ij f_i f_j`, the B-Laplacian.
    pub delta: WeylElt,
    /// `r^2 = sum (G^{-1})_ij e_i e_j`.
    pub r2: WeylElt,
    /// `E = sum_i e_i f_i`.
    pub euler: WeylElt,
    pub x: WeylElt,
    pub h: WeylElt,
    pub y: WeylElt,
    /// `Omega(sl2) = H^2 + 2(XY + YX)`.
    pub casimir: WeylElt,
}

/// Builds `X = -Delta/2, H = -E - n/2, Y = r^2/2` for the given Gram matrix.
pub fn sl2_triple(gram: &[Vec<Q>]) -> Sl2 {
    let n = gram.len();
    let ginv = q_inverse(gram).expect("Gram matrix invertible");
    let mut delta = WeylElt::zero(n);
    let mut r2 = WeylElt::zero(n);
    let mut euler = WeylElt::zero(n);
    for i in 0..n {
        for j in 0..n {
            if !gram[i][j].is_zero() {
                let mut m = WMono::one(n);
                m.f[i] += 1;
                m.f[j] += 1;
                delta.add_term(m, Scalar::from_q(gram[i][j].clone()));
            }
            if !ginv[i][j].is_zero() {
                let mut m = WMono::one(n);
                m.e[i] += 1;
                m.e[j] += 1;
                r2.add_term(m, Scalar::from_q(ginv[i][j].clone()));
            }
        }
        let mut m = WMono::one(n);
        m.e[i] = 1;
        m.f[i] = 1;
        euler.add_term(m, Scalar::one());
    }
    let x = delta.scale(&Scalar::frac(-1, 2));
    let h = euler
        .scale(&Scalar::int(-1))
        .sub(&WeylElt::constant(n, Scalar::frac(n as i64, 2)));
    let y = r2.scale(&Scalar::frac(1, 2));
    let xy = x.mul(&y);
    let yx = y.mul(&x);
    let casimir = h.mul(&h).add(&xy.add(&yx).scale(&Scalar::int(2)));
    Sl2 {
        n,
        delta,
        r2,
        euler,
        x,
        h,
        y,
        casimir,
    }
}

pub fn sl2_triple_orthonormal(n: usize) -> Sl2 {
    sl2_triple(&q_identity(n))
}

/// Action of a Weyl element on the polynomial module `P = S(V)`:
/// `e_i` multiplies, `f_i` differentiates.
pub fn poly_action(x: &WeylElt, p: &CPoly) -> CPoly {
    assert_eq!(x.n, p.n, "polynomial module dimension mismatch");
    let mut out = CPoly::zero(p.n);
    for (m, c) in &x.terms {
        let mut cur = p.clone();
        for (i, &b) in m.f.iter().enumerate() {
            for _ in 0..b {
                cur = cur.deriv(i);
            }
        }
        if cur.is_zero() {
            continue;
        }
        let mut emono = vec![0u32; p.n];
        emono.copy_from_slice(&m.e);
        let mut shifted = CPoly::zero(p.n);
        for (pm, pc) in &cur.terms {
            let mm: Vec<u32> = pm.iter().zip(&emono).map(|(a, b)| a + b).collect();
            shifted.add_term(mm, pc.clone());
        }
        out = out.add(&shifted.scale(c));
    }
    out
}

/// Contraction pairing on `P = S(V)` adapted to `B`: `<p1, p2>` is the
/// constant term of `p2(D) p1` where `D_i = sum_j G_ij d/dv_j`. Positive
/// definite for positive `G`; multiplication by `iota(alpha)` is adjoint to
/// the directional derivative `d_alpha`.
pub fn pairing(p1: &CPoly, p2: &CPoly, gram: &[Vec<Q>]) -> Scalar {
    let mut result = Scalar::zero();
    for (m, c) in &p2.terms {
        let mut acc = p1.clone();
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                acc = acc.deriv_dir(&gram[i]);
                if acc.is_zero() {
                    break;
                }
            }
        }
        result = &result + &(&acc.constant_term() * c);
    }
    result
}

/// Conjugate-linear star on the Weyl algebra: `v* = iota(v)` on generators,
/// extended as an anti-homomorphism. On rational data the conjugation is
/// the identity.
pub fn weyl_star(x: &WeylElt, gram: &[Vec<Q>]) -> WeylElt {
    let n = x.n;
    let ginv = q_inverse(gram).expect("Gram matrix invertible");
    let mut out = WeylElt::zero(n);
    for (m, c) in &x.terms {
        // (e^a f^b)* = (f^b)* (e^a)*; f_i* is an e-combination, e_i* an
        // f-combination, so the product is already normal ordered.
        let mut epart = WeylElt::one(n);
        for (i, &b) in m.f.iter().enumerate() {
            let img = WeylElt::e_linear(&ginv[i]);
            for _ in 0..b {
                epart = epart.mul(&img);
            }
        }
        let mut fpart = WeylElt::one(n);
        for (i, &a) in m.e.iter().enumerate() {
            let img = WeylElt::f_linear(&gram[i]);
            for _ in 0..a {
                fpart = fpart.mul(&img);
            }
        }
        out = out.add(&epart.mul(&fpart).scale(c));
    }
    out
}

/// Quadratic part of the inverse moment map followed by quantization:
/// an independent route to `nu'` used as a test oracle.
/// `mu^{-1}(X) = sum_ij X_ij e_i . f_j` in `S^2`, and `Q(mu^{-1}(X)) =
/// nu'(X) + tr(X)/2`.
pub fn mu_inv_sym(x: &[Vec<Q>]) -> SymPoly {
    let n = x.len();
    let mut p = SymPoly::zero(n);
    for (i, row) in x.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                let mut m = WMono::one(n);
                m.e[i] += 1;
                m.f[j] += 1;
                p.add_term(m, Scalar::from_q(v.clone()));
            }
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::q_nullspace;

    fn k() -> Scalar {
        Scalar::sym(crate::scalar::Sym::k())
    }

    // slow oracle: multiply words by the single rewrite f e -> e f + 1
    fn word_mul_oracle(a: &WMono, b: &WMono) -> WeylElt {
        #[derive(Clone)]
        struct Term(Vec<(bool, usize)>, Q); // letters (is_e, var)
        let n = a.e.len();
        let mut letters = Vec::new();
        for (m, _) in [(a, 0), (b, 1)] {
            for (i, &c) in m.e.iter().enumerate() {
                for _ in 0..c {
                    letters.push((true, i));
                }
            }
            for (i, &c) in m.f.iter().enumerate() {
                for _ in 0..c {
                    letters.push((false, i));
                }
            }
        }
        let mut stack = vec![Term(letters, Q::one())];
        let mut out = WeylElt::zero(n);
        while let Some(Term(w, c)) = stack.pop() {
            // find an inversion f_i e_j
            let pos = (0..w.len().saturating_sub(1))
                .find(|&p| !w[p].0 && w[p + 1].0);
            match pos {
                None => {
                    let mut m = WMono::one(n);
                    for &(is_e, i) in &w {
                        if is_e {
                            m.e[i] += 1;
                        } else {
                            m.f[i] += 1;
                        }
                    }
                    out.add_term(m, Scalar::from_q(c));
                }
                Some(p) => {
                    let (fi, ej) = (w[p].1, w[p + 1].1);
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    stack.push(Term(swapped, c.clone()));
                    if fi == ej {
                        let mut dropped = w.clone();
                        dropped.drain(p..=p + 1);
                        stack.push(Term(dropped, c));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn defining_relation() {
        let n = 1;
        let e = WeylElt::gen_e(n, 0);
        let f = WeylElt::gen_f(n, 0);
        // f e = e f + 1
        let fe = f.mul(&e);
        let expect = e.mul(&f).add(&WeylElt::one(n));
        assert_eq!(fe, expect);
        // 1 x = x
        assert_eq!(WeylElt::one(n).mul(&e), e);
    }

    #[test]
    fn squared_relation() {
        // f^2 e^2 = e^2 f^2 + 4 e f + 2
        let n = 1;
        let e = WeylElt::gen_e(n, 0);
        let f = WeylElt::gen_f(n, 0);
        let lhs = f.mul(&f).mul(&e).mul(&e);
        let e2f2 = e.pow(2).mul(&f.pow(2));
        let expect = e2f2
            .add(&e.mul(&f).scale(&Scalar::int(4)))
            .add(&WeylElt::constant(n, Scalar::int(2)));
        assert_eq!(lhs, expect);
    }

    #[test]
    fn monomial_product_matches_rewrite_oracle() {
        let mk = |e: Vec<u32>, f: Vec<u32>| WMono { e, f };
        let cases = vec![
            (mk(vec![0, 1], vec![2, 0]), mk(vec![1, 1], vec![0, 1])),
            (mk(vec![2, 0], vec![1, 1]), mk(vec![1, 2], vec![1, 0])),
            (mk(vec![0, 0], vec![3, 0]), mk(vec![2, 1], vec![0, 0])),
        ];
        for (a, b) in cases {
            let mut direct = WeylElt::zero(2);
            for (m, c) in mono_mul(&a, &b) {
                direct.add_term(m, Scalar::from_q(c));
            }
            assert_eq!(direct, word_mul_oracle(&a, &b));
        }
    }

    #[test]
    fn associativity_on_random_triples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let rand_elt = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut x = WeylElt::zero(2);
                for _ in 0..2 {
                    let m = WMono {
                        e: vec![rng.gen_range(0..3), rng.gen_range(0..2)],
                        f: vec![rng.gen_range(0..2), rng.gen_range(0..3)],
                    };
                    x.add_term(m, Scalar::int(rng.gen_range(-3..4)));
                }
                x
            };
            let (a, b, c) = (rand_elt(&mut rng), rand_elt(&mut rng), rand_elt(&mut rng));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }
    }

    #[test]
    fn eta_basics() {
        let n = 1;
        let e = WeylElt::gen_e(n, 0);
        assert_eq!(eta(&e).terms.len(), 1);
        // eta(e f) = e.f - 1/2
        let ef = e.mul(&WeylElt::gen_f(n, 0));
        let img = eta(&ef);
        let mut expect = SymPoly::zero(n);
        expect.add_term(
            WMono {
                e: vec![1],
                f: vec![1],
            },
            Scalar::one(),
        );
        expect.add_term(WMono::one(n), Scalar::frac(-1, 2));
        assert_eq!(img, expect);
    }

    #[test]
    fn eta_of_h_is_minus_euler() {
        for n in 1..=3 {
            let sl2 = sl2_triple_orthonormal(n);
            let img = eta(&sl2.h);
            let mut expect = SymPoly::zero(n);
            for i in 0..n {
                let mut m = WMono::one(n);
                m.e[i] = 1;
                m.f[i] = 1;
                expect.add_term(m, Scalar::int(-1));
            }
            assert_eq!(img, expect);
        }
    }

    #[test]
    fn quantize_inverts_eta() {
        // Q(e.f) = e f + 1/2 and a degree <= 4 round trip
        let n = 2;
        let mut p = SymPoly::zero(n);
        p.add_term(
            WMono {
                e: vec![1, 0],
                f: vec![1, 0],
            },
            Scalar::one(),
        );
        let qz = quantize(&p);
        let mut expect = WeylElt::zero(n);
        expect.add_term(
            WMono {
                e: vec![1, 0],
                f: vec![1, 0],
            },
            Scalar::one(),
        );
        expect.add_term(WMono::one(n), Scalar::frac(1, 2));
        assert_eq!(qz, expect);

        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let mut x = WeylElt::zero(2);
            for _ in 0..3 {
                let m = WMono {
                    e: vec![rng.gen_range(0..2), rng.gen_range(0..2)],
                    f: vec![rng.gen_range(0..2), rng.gen_range(0..2)],
                };
                x.add_term(m, Scalar::int(rng.gen_range(-2..3)));
            }
            assert_eq!(quantize(&eta(&x)), x, "Q(eta(x)) = x");
        }
    }

    #[test]
    fn nu_prime_formula_and_lie_homomorphism() {
        let gram = q_identity(2);
        let x = vec![vec![q(0), q(1)], vec![q(-1), q(0)]]; // E12 - E21
        let img = nu_prime(&x, &gram);
        // nu'(E12 - E21) = e1 f2 - e2 f1
        let mut expect = WeylElt::zero(2);
        expect.add_term(
            WMono {
                e: vec![1, 0],
                f: vec![0, 1],
            },
            Scalar::one(),
        );
        expect.add_term(
            WMono {
                e: vec![0, 1],
                f: vec![1, 0],
            },
            Scalar::int(-1),
        );
        assert_eq!(img, expect);

        // m(nu'(X)) acts on S(V) as X does
        let p = CPoly::var(2, 0); // v0
        let image = poly_action(&img, &p);
        let mut want = CPoly::zero(2);
        want.add_term(vec![0, 1], Scalar::int(-1)); // X v0 = -v1
        assert_eq!(image, want);

        // Lie homomorphism on the so(3, Cartan-Gram) basis
        let rs = crate::roots::RootSystem::build(crate::roots::CartanType::A, 3).unwrap();
        let basis = so_basis(&rs.gram);
        for a in &basis {
            for b in &basis {
                let ab = q_mat_mul(a, b);
                let ba = q_mat_mul(b, a);
                let lie: Vec<Vec<Q>> = ab
                    .iter()
                    .zip(&ba)
                    .map(|(r1, r2)| r1.iter().zip(r2).map(|(x, y)| x - y).collect())
                    .collect();
                let lhs = nu_prime(&lie, &rs.gram);
                let rhs = nu_prime(a, &rs.gram).commutator(&nu_prime(b, &rs.gram));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn nu_prime_agrees_with_quantized_moment_map() {
        let gram = q_identity(3);
        for x in so_basis(&gram) {
            assert_eq!(nu_prime(&x, &gram), quantize(&mu_inv_sym(&x)));
        }
    }

    #[test]
    fn sl2_relations_hold_for_any_gram() {
        let a2 = crate::roots::RootSystem::build(crate::roots::CartanType::A, 2).unwrap();
        let g2 = crate::roots::RootSystem::build(crate::roots::CartanType::G, 2).unwrap();
        let grams = vec![q_identity(1), q_identity(3), a2.gram, g2.gram];
        for gram in grams {
            let s = sl2_triple(&gram);
            assert_eq!(s.h.commutator(&s.x), s.x.scale(&Scalar::int(2)));
            assert_eq!(s.h.commutator(&s.y), s.y.scale(&Scalar::int(-2)));
            assert_eq!(s.x.commutator(&s.y), s.h);
            // sl(2) commutes with so(V, B)
            for skew in so_basis(&gram) {
                let img = nu_prime(&skew, &gram);
                assert!(s.x.commutator(&img).is_zero());
                assert!(s.h.commutator(&img).is_zero());
                assert!(s.y.commutator(&img).is_zero());
                assert!(s.casimir.commutator(&img).is_zero());
            }
        }
    }

    #[test]
    fn sl2_generators_rank_one() {
        // H = -e1 f1 - 1/2, X = -f1^2/2, Y = e1^2/2 for the orthonormal form
        let s = sl2_triple_orthonormal(1);
        let mut h = WeylElt::zero(1);
        h.add_term(WMono { e: vec![1], f: vec![1] }, Scalar::int(-1));
        h.add_term(WMono::one(1), Scalar::frac(-1, 2));
        assert_eq!(s.h, h);
        let mut x = WeylElt::zero(1);
        x.add_term(WMono { e: vec![0], f: vec![2] }, Scalar::frac(-1, 2));
        assert_eq!(s.x, x);
        let mut y = WeylElt::zero(1);
        y.add_term(WMono { e: vec![2], f: vec![0] }, Scalar::frac(1, 2));
        assert_eq!(s.y, y);
    }

    #[test]
    fn sl2_casimir_eta_closed_form() {
        for n in 1..=4usize {
            let s = sl2_triple_orthonormal(n);
            let img = eta(&s.casimir);
            // eta(Omega) = eta(H)^2 - eta(Delta) eta(r^2) - 3n/4
            let eh = eta(&s.h);
            let rhs = eh
                .mul(&eh)
                .sub(&eta(&s.delta).mul(&eta(&s.r2)))
                .sub(&SymPoly::one(n).scale(&Scalar::frac(3 * n as i64, 4)));
            assert_eq!(img, rhs);
            // degree-0 component is -3n/4, support in degrees {0, 4}
            assert_eq!(
                img.constant_term(),
                Scalar::frac(-3 * n as i64, 4)
            );
            assert!(img.degrees().iter().all(|&d| d == 0 || d == 4));
            assert!(degree_component(&s.casimir, 2).is_zero());
        }
    }

    #[test]
    fn laplacian_kernel_dimensions() {
        // harmonic polynomials in 2 variables: dim ker(Delta | degree l) = 2
        let n = 2;
        let s = sl2_triple_orthonormal(n);
        for l in 1..=4u32 {
            // basis of degree-l monomials
            let mut monos = Vec::new();
            for a in 0..=l {
                monos.push(vec![a, l - a]);
            }
            // matrix of Delta from degree l to degree l-2
            let mut target = Vec::new();
            if l >= 2 {
                for a in 0..=(l - 2) {
                    target.push(vec![a, l - 2 - a]);
                }
            }
            let mut rows = vec![vec![Q::zero(); monos.len()]; target.len().max(1)];
            for (j, m) in monos.iter().enumerate() {
                let mut p = CPoly::zero(n);
                p.add_term(m.clone(), Scalar::one());
                let img = poly_action(&s.delta, &p);
                for (tm, c) in &img.terms {
                    let i = target.iter().position(|t| t == tm).unwrap();
                    rows[i][j] = c.as_q().unwrap();
                }
            }
            let kern = q_nullspace(&rows);
            assert_eq!(kern.len(), 2, "degree {}", l);
        }
    }

    #[test]
    fn poly_action_is_a_representation() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for _ in 0..15 {
            let rand_w = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut x = WeylElt::zero(2);
                for _ in 0..2 {
                    let m = WMono {
                        e: vec![rng.gen_range(0..2), rng.gen_range(0..2)],
                        f: vec![rng.gen_range(0..2), rng.gen_range(0..2)],
                    };
                    x.add_term(m, Scalar::int(rng.gen_range(-3..4)));
                }
                x
            };
            let x = rand_w(&mut rng);
            let y = rand_w(&mut rng);
            let mut p = CPoly::zero(2);
            for _ in 0..3 {
                p.add_term(
                    vec![rng.gen_range(0..3), rng.gen_range(0..3)],
                    Scalar::int(rng.gen_range(-2..3)),
                );
            }
            assert_eq!(
                poly_action(&x.mul(&y), &p),
                poly_action(&x, &poly_action(&y, &p))
            );
        }
    }

    #[test]
    fn pairing_values_and_adjointness() {
        let gram = q_identity(2);
        let e1 = CPoly::var(2, 0);
        let e2 = CPoly::var(2, 1);
        assert_eq!(pairing(&e1, &e1, &gram), Scalar::one());
        assert_eq!(pairing(&e1.mul(&e1), &e1.mul(&e1), &gram), Scalar::int(2));
        assert_eq!(pairing(&e1, &e2, &gram), Scalar::zero());

        // with a non-identity Gram: multiplication by iota(alpha) is adjoint
        // to the directional derivative d_alpha
        let rs = crate::roots::RootSystem::build(crate::roots::CartanType::A, 2).unwrap();
        let alpha = &rs.pos_roots[2];
        let iota = rs.iota(alpha);
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut p = CPoly::zero(2);
                for _ in 0..3 {
                    p.add_term(
                        vec![rng.gen_range(0..3), rng.gen_range(0..3)],
                        Scalar::int(rng.gen_range(-3..4)),
                    );
                }
                p
            };
            let p = rand_poly(&mut rng);
            let qp = rand_poly(&mut rng);
            let lhs = pairing(&CPoly::linear(&iota).mul(&p), &qp, &rs.gram);
            let rhs = pairing(&p, &qp.deriv_dir(alpha), &rs.gram);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn star_is_an_involution_and_swaps_generators() {
        let gram = q_identity(2);
        let e1 = WeylElt::gen_e(2, 0);
        assert_eq!(weyl_star(&e1, &gram), WeylElt::gen_f(2, 0));
        use rand::{Rng, SeedableRng};
        let rs = crate::roots::RootSystem::build(crate::roots::CartanType::A, 2).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let mut x = WeylElt::zero(2);
            for _ in 0..3 {
                let m = WMono {
                    e: vec![rng.gen_range(0..2), rng.gen_range(0..2)],
                    f: vec![rng.gen_range(0..2), rng.gen_range(0..2)],
                };
                x.add_term(m, Scalar::int(rng.gen_range(-3..4)));
            }
            for gram in [&q_identity(2), &rs.gram] {
                assert_eq!(weyl_star(&weyl_star(&x, gram), gram), x);
                let y = {
                    let mut y = WeylElt::zero(2);
                    y.add_term(
                        WMono {
                            e: vec![1, 1],
                            f: vec![0, 0],
                        },
                        k(),
                    );
                    y
                };
                // anti-homomorphism
                assert_eq!(
                    weyl_star(&x.mul(&y), gram),
                    weyl_star(&y, gram).mul(&weyl_star(&x, gram))
                );
            }
        }
    }

    #[test]
    fn kostant_degree_support_of_skew_squares() {
        let rs = crate::roots::RootSystem::build(crate::roots::CartanType::A, 3).unwrap();
        for gram in [&q_identity(3), &rs.gram] {
            for xm in so_basis(gram) {
                let img = nu_prime(&xm, gram);
                let sq = eta(&img.mul(&img));
                assert!(sq.degrees().iter().all(|&d| d == 0 || d == 4));
            }
        }
    }
}
