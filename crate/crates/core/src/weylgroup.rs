//! Weyl groups as exact matrix groups, their group algebras and the central
//! elements built from pairs of reflections.

use crate::matrix::{q_mat_vec, q_rank};
use crate::roots::RootSystem;
use crate::scalar::{q, qq, Q, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the enumeration cap of {0}")]
    CapExceeded(usize),
}

pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// Element of the Weyl group: its matrix on V, row major, canonical rationals.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElt(pub Vec<Q>);

impl GroupElt {
    pub fn identity(n: usize) -> GroupElt {
        let mut m = vec![Q::zero(); n * n];
        for i in 0..n {
            m[i * n + i] = q(1);
        }
        GroupElt(m)
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> GroupElt {
        GroupElt(rows.iter().flat_map(|r| r.iter().cloned()).collect())
    }

    pub fn dim(&self) -> usize {
        let mut n = 0;
        while n * n < self.0.len() {
            n += 1;
        }
        n
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        (0..n).map(|i| self.0[i * n..(i + 1) * n].to_vec()).collect()
    }

    pub fn mul(&self, other: &GroupElt) -> GroupElt {
        let n = self.dim();
        let mut out = vec![Q::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.0[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = &out[i * n + j] + &(a * &other.0[k * n + j]);
                    out[i * n + j] = v;
                }
            }
        }
        GroupElt(out)
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        q_mat_vec(&self.rows(), v)
    }
}

/// An enumerated Weyl group with reduced words and fast lookups.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub n: usize,
    /// Elements sorted canonically; index 0..|W|.
    pub elements: Vec<GroupElt>,
    index: BTreeMap<GroupElt, usize>,
    /// One reduced word (as simple-reflection indices) per element.
    pub words: Vec<Vec<usize>>,
    /// Indices of the simple reflections.
    pub simple: Vec<usize>,
    /// Index of the identity.
    pub id: usize,
    /// Index of each positive-root reflection.
    pub reflections: Vec<usize>,
    pub inverse: Vec<usize>,
}

impl WeylGroup {
    pub fn enumerate(rs: &RootSystem, cap: usize) -> Result<WeylGroup, GroupError> {
        let n = rs.rank;
        let gens: Vec<GroupElt> = rs
            .simple_idx
            .iter()
            .map(|&i| GroupElt::from_rows(&rs.reflection_matrix(i)))
            .collect();
        let id = GroupElt::identity(n);
        let mut seen: BTreeMap<GroupElt, Vec<usize>> = BTreeMap::new();
        seen.insert(id.clone(), Vec::new());
        let mut frontier = vec![id];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in &frontier {
                let word = seen[w].clone();
                for (gi, g) in gens.iter().enumerate() {
                    let wg = w.mul(g);
                    if !seen.contains_key(&wg) {
                        let mut nw = word.clone();
                        nw.push(gi);
                        seen.insert(wg.clone(), nw);
                        next.push(wg);
                        if seen.len() > cap {
                            return Err(GroupError::CapExceeded(cap));
                        }
                    }
                }
            }
            frontier = next;
        }

        let elements: Vec<GroupElt> = seen.keys().cloned().collect();
        let index: BTreeMap<GroupElt, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let words: Vec<Vec<usize>> = elements.iter().map(|e| seen[e].clone()).collect();
        let simple: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let id = index[&GroupElt::identity(n)];
        let reflections: Vec<usize> = (0..rs.num_positive())
            .map(|i| index[&GroupElt::from_rows(&rs.reflection_matrix(i))])
            .collect();
        let inverse: Vec<usize> = elements
            .iter()
            .map(|e| {
                // w^{-1} = product of the reduced word reversed
                let mut inv = GroupElt::identity(n);
                for &gi in seen[e].iter().rev() {
                    inv = inv.mul(&gens[gi]);
                }
                index[&inv]
            })
            .collect();
        Ok(WeylGroup {
            n,
            elements,
            index,
            words,
            simple,
            id,
            reflections,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn lookup(&self, e: &GroupElt) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn mul_idx(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b])]
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }
}

/// Finitely supported map from group elements to exact scalars.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupAlgElt {
    pub terms: BTreeMap<usize, Scalar>,
}

impl GroupAlgElt {
    pub fn zero() -> GroupAlgElt {
        GroupAlgElt::default()
    }

    pub fn single(w: usize, c: Scalar) -> GroupAlgElt {
        let mut e = GroupAlgElt::zero();
        e.add_term(w, c);
        e
    }

    pub fn identity_times(wg: &WeylGroup, c: Scalar) -> GroupAlgElt {
        GroupAlgElt::single(wg.id, c)
    }

    pub fn add_term(&mut self, w: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
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

    pub fn add(&self, other: &GroupAlgElt) -> GroupAlgElt {
        let mut out = self.clone();
        for (&w, c) in &other.terms {
            out.add_term(w, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &GroupAlgElt) -> GroupAlgElt {
        let mut out = self.clone();
        for (&w, c) in &other.terms {
            out.add_term(w, -c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> GroupAlgElt {
        let mut out = GroupAlgElt::zero();
        for (&w, v) in &self.terms {
            out.add_term(w, v * c);
        }
        out
    }

    pub fn mul(&self, other: &GroupAlgElt, wg: &WeylGroup) -> GroupAlgElt {
        let mut out = GroupAlgElt::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                out.add_term(wg.mul_idx(a, b), ca * cb);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn commutes_with(&self, w: usize, wg: &WeylGroup) -> bool {
        let g = GroupAlgElt::single(w, Scalar::one());
        self.mul(&g, wg) == g.mul(self, wg)
    }

    pub fn is_central(&self, wg: &WeylGroup) -> bool {
        wg.simple.iter().all(|&s| self.commutes_with(s, wg))
    }

    pub fn to_json(&self, wg: &WeylGroup) -> serde_json::Value {
        let map: BTreeMap<String, String> = self
            .terms
            .iter()
            .map(|(&w, c)| {
                let word = wg.word(w);
                let name = if word.is_empty() {
                    "1".to_string()
                } else {
                    word.iter()
                        .map(|i| format!("s{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                };
                (name, c.to_string())
            })
            .collect();
        serde_json::to_value(map).unwrap()
    }
}

/// `Omega_W = 1/4 sum_{alpha,beta>0} k_a k_b B(alpha,beta) s_a s_b`,
/// either over all ordered pairs or restricted to `s_alpha(beta) < 0`.
pub fn omega_w(rs: &RootSystem, wg: &WeylGroup, restricted: bool) -> GroupAlgElt {
    let pairs: Vec<(usize, usize)> = if restricted {
        rs.negative_pairs()
    } else {
        (0..rs.num_positive())
            .flat_map(|i| (0..rs.num_positive()).map(move |j| (i, j)))
            .collect()
    };
    let quarter = qq(1, 4);
    let mut out = GroupAlgElt::zero();
    for (i, j) in pairs {
        let b = rs.dual_form(&rs.pos_roots[i], &rs.pos_roots[j]);
        if b.is_zero() {
            continue;
        }
        let w = wg.mul_idx(wg.reflections[i], wg.reflections[j]);
        let coeff = (&Scalar::sym(rs.params[i]) * &Scalar::sym(rs.params[j])).scale(&(b * &quarter));
        out.add_term(w, coeff);
    }
    out
}

/// `Omega'_W = 1/16 sum_{s_alpha(beta)<0, alpha != beta}
///   k_a k_b B(alpha^vee,beta^vee)^{-1} [s_a, s_b]^2`.
///
/// The restricted sum never meets an orthogonal pair, so the coroot pairing
/// in the denominator is always nonzero.
pub fn omega_w_prime(rs: &RootSystem, wg: &WeylGroup) -> GroupAlgElt {
    let mut out = GroupAlgElt::zero();
    for (i, j) in rs.negative_pairs() {
        if i == j {
            continue;
        }
        let denom = rs.coroot_form(i, j);
        assert!(!denom.is_zero(), "restricted pair with orthogonal coroots");
        let coeff = (&Scalar::sym(rs.params[i]) * &Scalar::sym(rs.params[j]))
            .scale(&(qq(1, 16) / denom));
        let sa = wg.reflections[i];
        let sb = wg.reflections[j];
        let ab = wg.mul_idx(sa, sb);
        let ba = wg.mul_idx(sb, sa);
        // [s_a, s_b]^2 = (s_a s_b)^2 + (s_b s_a)^2 - 2
        out.add_term(wg.mul_idx(ab, ab), coeff.clone());
        out.add_term(wg.mul_idx(ba, ba), coeff.clone());
        out.add_term(wg.id, coeff.scale(&q(-2)));
    }
    out
}

/// Same element from the unrestricted pair sum (orthogonal pairs dropped:
/// their commutator vanishes identically).
pub fn omega_w_prime_full(rs: &RootSystem, wg: &WeylGroup) -> GroupAlgElt {
    let mut out = GroupAlgElt::zero();
    for i in 0..rs.num_positive() {
        for j in 0..rs.num_positive() {
            if i == j {
                continue;
            }
            let denom = rs.coroot_form(i, j);
            if denom.is_zero() {
                continue;
            }
            let coeff = (&Scalar::sym(rs.params[i]) * &Scalar::sym(rs.params[j]))
                .scale(&(qq(1, 16) / denom));
            let sa = wg.reflections[i];
            let sb = wg.reflections[j];
            let ab = wg.mul_idx(sa, sb);
            let ba = wg.mul_idx(sb, sa);
            out.add_term(wg.mul_idx(ab, ab), coeff.clone());
            out.add_term(wg.mul_idx(ba, ba), coeff.clone());
            out.add_term(wg.id, coeff.scale(&q(-2)));
        }
    }
    out
}

/// Sum of the conjugacy class of `rep` (coefficient 1 on each member).
pub fn class_sum(wg: &WeylGroup, rep: usize) -> GroupAlgElt {
    let mut class = vec![rep];
    let mut seen: BTreeMap<usize, ()> = BTreeMap::new();
    seen.insert(rep, ());
    let mut i = 0;
    while i < class.len() {
        let w = class[i];
        i += 1;
        for &s in &wg.simple {
            let c = wg.mul_idx(wg.mul_idx(s, w), s);
            if seen.insert(c, ()).is_none() {
                class.push(c);
            }
        }
    }
    let mut out = GroupAlgElt::zero();
    for w in class {
        out.add_term(w, Scalar::one());
    }
    out
}

/// Dimension of the span of the commutators `[s_alpha, s_beta]` inside the
/// space of matrices; equals `dim so(V, B) = n(n-1)/2` for rank >= 2.
pub fn commutator_span_dimension(wg: &WeylGroup) -> usize {
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for &si in &wg.reflections {
        for &sj in &wg.reflections {
            let ab = &wg.elements[wg.mul_idx(si, sj)];
            let ba = &wg.elements[wg.mul_idx(sj, si)];
            let row: Vec<Q> = ab.0.iter().zip(&ba.0).map(|(x, y)| x - y).collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return 0;
    }
    q_rank(&rows)
}

/// Jucys-Murphy element `T_i = (1,i) + (2,i) + ... + (i-1,i)` in the type
/// `A_{n-1}` realization, `i` counted from 1.
pub fn jucys_murphy(rs: &RootSystem, wg: &WeylGroup, i: usize) -> GroupAlgElt {
    let mut out = GroupAlgElt::zero();
    for j in 1..i {
        let idx = transposition_root_index(rs, j, i);
        out.add_term(wg.reflections[idx], Scalar::one());
    }
    out
}

/// Index of the positive root `e_j - e_i` (j < i) of type `A_{n-1}`:
/// the root with simple-root expansion `alpha_j + ... + alpha_{i-1}`.
pub fn transposition_root_index(rs: &RootSystem, j: usize, i: usize) -> usize {
    let target: Vec<Q> = (1..=rs.rank)
        .map(|m| if j <= m && m < i { q(1) } else { q(0) })
        .collect();
    rs.expansions
        .iter()
        .position(|e| *e == target)
        .expect("transposition root exists")
}

/// Lemma-level identity: `Omega_{S_n} = 1/4 (n(n-1)/2 + sum_i T_i^2)`.
pub fn jm_identity_holds(rs: &RootSystem, wg: &WeylGroup) -> bool {
    let n = rs.rank + 1; // S_n = W(A_{n-1})
    let omega = omega_w(rs, wg, false).substitute_k_one(rs, wg);
    let mut rhs = GroupAlgElt::identity_times(wg, Scalar::frac((n * (n - 1) / 2) as i64, 4));
    for i in 1..=n {
        let t = jucys_murphy(rs, wg, i);
        rhs = rhs.add(&t.mul(&t, wg).scale(&Scalar::frac(1, 4)));
    }
    omega == rhs
}

impl GroupAlgElt {
    /// Specializes every root parameter to 1.
    pub fn substitute_k_one(&self, rs: &RootSystem, _wg: &WeylGroup) -> GroupAlgElt {
        self.substitute(&rs.bind_all(q(1)))
    }

    pub fn substitute(&self, bindings: &[(crate::scalar::Sym, Q)]) -> GroupAlgElt {
        let mut out = GroupAlgElt::zero();
        for (&w, c) in &self.terms {
            out.add_term(w, c.substitute(bindings));
        }
        out
    }
}
