//! Crystallographic root systems in rational realizations.
//!
//! Types B, C, D, F are realized in the standard epsilon coordinates with
//! the identity Gram matrix. Types A, E, G are realized on the simple-coroot
//! basis of the rank-dimensional root span, so the ambient dimension always
//! equals the rank; the Gram matrix carries the bilinear form. Either way
//! every `B(alpha, beta)` value agrees with the usual normalization
//! (long roots of squared length 2 in the simply-laced types, `B(e_i, e_j) =
//! delta_ij` for types B/C/D).
//!
//! Roots are stored as covectors: the coordinate vector of `alpha` holds the
//! pairings with the chosen basis of `V`, so `alpha(v)` is a plain dot
//! product.

use crate::matrix::{q_dot, q_identity, q_inverse, q_mat_vec};
use crate::scalar::{q, qq, Q, Scalar, Sym};
use num_traits::Zero;
use serde_json::json;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn parse(s: &str) -> Option<CartanType> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Some(CartanType::A),
            "B" => Some(CartanType::B),
            "C" => Some(CartanType::C),
            "D" => Some(CartanType::D),
            "E" => Some(CartanType::E),
            "F" => Some(CartanType::F),
            "G" => Some(CartanType::G),
            _ => None,
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        };
        write!(f, "{}", c)
    }
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum RootError {
    #[error("invalid Cartan type/rank pair {0}{1}")]
    InvalidPair(CartanType, usize),
}

/// A built root system: positive roots, coroots, Gram data and the
/// length-orbit parameter symbols.
#[derive(Clone, Debug)]
pub struct RootSystem {
    pub cartan: CartanType,
    pub rank: usize,
    /// Gram matrix of B on V in the chosen basis.
    pub gram: Vec<Vec<Q>>,
    /// Inverse Gram matrix; Gram matrix of the dual form on V*.
    pub gram_inv: Vec<Vec<Q>>,
    /// Positive roots as covectors, sorted by (height, expansion).
    pub pos_roots: Vec<Vec<Q>>,
    /// Expansion of each positive root in the simple roots.
    pub expansions: Vec<Vec<Q>>,
    /// Coroots `alpha^vee = 2 iota(alpha)/B(alpha,alpha)` in V coordinates.
    pub coroots: Vec<Vec<Q>>,
    /// Parameter symbol of each positive root (constant on W-orbits).
    pub params: Vec<Sym>,
    /// Indices of the simple roots inside `pos_roots` (always `0..rank`).
    pub simple_idx: Vec<usize>,
    pos_set: BTreeMap<Vec<Q>, usize>,
}

impl RootSystem {
    pub fn build(cartan: CartanType, rank: usize) -> Result<RootSystem, RootError> {
        let (simples, gram) = simple_data(cartan, rank)?;
        Ok(RootSystem::from_simple_data(cartan, rank, simples, gram))
    }

    /// Rank one with `B(alpha^vee, alpha^vee) = c` instead of the standard 2.
    pub fn build_a1_rescaled(c: Q) -> RootSystem {
        RootSystem::from_simple_data(CartanType::A, 1, vec![vec![q(2)]], vec![vec![c]])
    }

    fn from_simple_data(
        cartan: CartanType,
        rank: usize,
        simples: Vec<Vec<Q>>,
        gram: Vec<Vec<Q>>,
    ) -> RootSystem {
        let gram_inv = q_inverse(&gram).expect("Gram matrix is invertible");

        let coroot_of = |alpha: &[Q]| -> Vec<Q> {
            let iota = q_mat_vec(&gram_inv, alpha);
            let norm = q_dot(alpha, &iota);
            iota.iter().map(|x| x * &(q(2) / &norm)).collect()
        };

        // Orbit of the simple roots under the simple reflections.
        let simple_coroots: Vec<Vec<Q>> = simples.iter().map(|a| coroot_of(a)).collect();
        let mut all: BTreeMap<Vec<Q>, ()> = BTreeMap::new();
        let mut queue: Vec<Vec<Q>> = simples.clone();
        while let Some(r) = queue.pop() {
            if all.contains_key(&r) {
                continue;
            }
            all.insert(r.clone(), ());
            for (a, av) in simples.iter().zip(&simple_coroots) {
                let c = q_dot(&r, av);
                let image: Vec<Q> = r
                    .iter()
                    .zip(a)
                    .map(|(ri, ai)| ri - &(&c * ai))
                    .collect();
                if !all.contains_key(&image) {
                    queue.push(image);
                }
            }
        }

        // Positivity test via expansion in the simple roots.
        let simple_mat: Vec<Vec<Q>> = (0..rank)
            .map(|i| (0..rank).map(|j| simples[j][i].clone()).collect())
            .collect();
        let simple_mat_inv = q_inverse(&simple_mat).expect("simple roots form a basis");
        let mut positives: Vec<(Vec<Q>, Vec<Q>)> = Vec::new();
        for (r, _) in &all {
            let exp = q_mat_vec(&simple_mat_inv, r);
            if exp.iter().all(|c| c >= &Q::zero()) {
                positives.push((exp, r.clone()));
            }
        }
        positives.sort_by(|(ea, ra), (eb, rb)| {
            let ha: Q = ea.iter().sum();
            let hb: Q = eb.iter().sum();
            ha.cmp(&hb).then(ea.cmp(eb)).then(ra.cmp(rb))
        });
        debug_assert_eq!(2 * positives.len(), all.len());

        let pos_roots: Vec<Vec<Q>> = positives.iter().map(|(_, r)| r.clone()).collect();
        let expansions: Vec<Vec<Q>> = positives.iter().map(|(e, _)| e.clone()).collect();
        let coroots: Vec<Vec<Q>> = pos_roots.iter().map(|r| coroot_of(r)).collect();

        // One parameter symbol per root length.
        let norms: Vec<Q> = pos_roots
            .iter()
            .map(|r| q_dot(r, &q_mat_vec(&gram_inv, r)))
            .collect();
        let mut distinct: Vec<Q> = norms.clone();
        distinct.sort();
        distinct.dedup();
        let params: Vec<Sym> = match distinct.len() {
            1 => vec![Sym::k(); pos_roots.len()],
            2 => norms
                .iter()
                .map(|n| if *n == distinct[0] { Sym::k_s() } else { Sym::k_l() })
                .collect(),
            _ => unreachable!("at most two root lengths in a reduced irreducible system"),
        };

        let pos_set: BTreeMap<Vec<Q>, usize> = pos_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let simple_idx: Vec<usize> = simples
            .iter()
            .map(|s| *pos_set.get(s).expect("simple root is positive"))
            .collect();

        RootSystem {
            cartan,
            rank,
            gram,
            gram_inv,
            pos_roots,
            expansions,
            coroots,
            params,
            simple_idx,
            pos_set,
        }
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.cartan, self.rank)
    }

    pub fn num_positive(&self) -> usize {
        self.pos_roots.len()
    }

    /// `B(alpha, beta)` for covectors (the dual form).
    pub fn dual_form(&self, a: &[Q], b: &[Q]) -> Q {
        q_dot(a, &q_mat_vec(&self.gram_inv, b))
    }

    /// `B(v, w)` for vectors in V.
    pub fn form(&self, v: &[Q], w: &[Q]) -> Q {
        q_dot(v, &q_mat_vec(&self.gram, w))
    }

    /// `iota(alpha)`: the vector with `alpha(v) = B(iota(alpha), v)`.
    pub fn iota(&self, alpha: &[Q]) -> Vec<Q> {
        q_mat_vec(&self.gram_inv, alpha)
    }

    /// `B(alpha^vee, beta^vee)` for positive roots by index.
    pub fn coroot_form(&self, i: usize, j: usize) -> Q {
        self.form(&self.coroots[i], &self.coroots[j])
    }

    /// Index of a positive root given its covector, if positive.
    pub fn pos_index(&self, r: &[Q]) -> Option<usize> {
        self.pos_set.get(r).copied()
    }

    pub fn is_negative_root(&self, r: &[Q]) -> bool {
        let neg: Vec<Q> = r.iter().map(|x| -x.clone()).collect();
        self.pos_set.contains_key(&neg)
    }

    /// Reflection image `s_alpha(beta)` on covectors.
    pub fn reflect_root(&self, alpha_idx: usize, beta: &[Q]) -> Vec<Q> {
        let c = q_dot(beta, &self.coroots[alpha_idx]);
        beta.iter()
            .zip(&self.pos_roots[alpha_idx])
            .map(|(b, a)| b - &(&c * a))
            .collect()
    }

    /// Matrix of `s_alpha` on V: `v - alpha(v) alpha^vee`.
    pub fn reflection_matrix(&self, alpha_idx: usize) -> Vec<Vec<Q>> {
        let n = self.rank;
        let alpha = &self.pos_roots[alpha_idx];
        let av = &self.coroots[alpha_idx];
        let mut m = q_identity(n);
        for (a, row) in m.iter_mut().enumerate() {
            for (b, entry) in row.iter_mut().enumerate() {
                let v = &*entry - &(&av[a] * &alpha[b]);
                *entry = v;
            }
        }
        m
    }

    /// `rho_k = (1/2) sum_{alpha > 0} k_alpha alpha`, symbolic coefficients.
    pub fn rho_k(&self) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.rank];
        for (r, sym) in self.pos_roots.iter().zip(&self.params) {
            let ks = Scalar::sym(*sym);
            for (o, c) in out.iter_mut().zip(r) {
                *o = &*o + &ks.scale(&(c * &qq(1, 2)));
            }
        }
        out
    }

    /// `B(rho_k, rho_k)` as a polynomial in the parameters.
    pub fn rho_k_norm(&self) -> Scalar {
        let rho = self.rho_k();
        crate::matrix::scalar_quad_form(&self.gram_inv, &rho, &rho)
    }

    /// Ordered pairs `(alpha, beta)` of positive roots with `s_alpha(beta) < 0`,
    /// including the diagonal.
    pub fn negative_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.pos_roots.len() {
            for j in 0..self.pos_roots.len() {
                if self.is_negative_root(&self.reflect_root(i, &self.pos_roots[j])) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Parameter symbols actually used (one or two).
    pub fn param_syms(&self) -> Vec<Sym> {
        let mut syms = self.params.clone();
        syms.sort();
        syms.dedup();
        syms
    }

    /// Bindings sending every parameter to the given rational.
    pub fn bind_all(&self, v: Q) -> Vec<(Sym, Q)> {
        self.param_syms().into_iter().map(|s| (s, v.clone())).collect()
    }

    /// Order of the Weyl group by the standard product formula.
    pub fn weyl_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |m: u128| (1..=m).product::<u128>();
        match self.cartan {
            CartanType::A => fact(n + 1),
            CartanType::B | CartanType::C => (1u128 << n) * fact(n),
            CartanType::D => (1u128 << (n - 1)) * fact(n),
            CartanType::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            CartanType::F => 1152,
            CartanType::G => 12,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "type": self.cartan.to_string(),
            "rank": self.rank,
            "positive_roots": self.pos_roots.iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "simple_roots": self.simple_idx,
            "gram": self.gram.iter()
                .map(|row| row.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "parameters": self.params.iter().map(|s| s.name()).collect::<Vec<_>>(),
        })
    }
}

fn cartan_matrix_a(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        q(2)
                    } else if i.abs_diff(j) == 1 {
                        q(-1)
                    } else {
                        q(0)
                    }
                })
                .collect()
        })
        .collect()
}

fn cartan_matrix_e(n: usize) -> Vec<Vec<Q>> {
    // Bourbaki numbering: node 2 hangs off node 4 of the chain 1-3-4-5-...
    let mut edges = vec![(1, 3), (3, 4), (4, 5), (2, 4)];
    for i in 5..n {
        edges.push((i, i + 1));
    }
    let mut m = vec![vec![q(0); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = q(2);
    }
    for (a, b) in edges {
        m[a - 1][b - 1] = q(-1);
        m[b - 1][a - 1] = q(-1);
    }
    m
}

fn eps(n: usize, entries: &[(usize, i64)]) -> Vec<Q> {
    let mut v = vec![q(0); n];
    for &(i, c) in entries {
        v[i] = q(c);
    }
    v
}

#[allow(clippy::type_complexity)]
fn simple_data(cartan: CartanType, n: usize) -> Result<(Vec<Vec<Q>>, Vec<Vec<Q>>), RootError> {
    let bad = RootError::InvalidPair(cartan, n);
    match cartan {
        CartanType::A => {
            if n < 1 {
                return Err(bad);
            }
            let g = cartan_matrix_a(n);
            Ok((g.clone(), g))
        }
        CartanType::B => {
            if n < 2 {
                return Err(bad);
            }
            let mut s: Vec<Vec<Q>> = (0..n - 1)
                .map(|i| eps(n, &[(i, 1), (i + 1, -1)]))
                .collect();
            s.push(eps(n, &[(n - 1, 1)]));
            Ok((s, q_identity(n)))
        }
        CartanType::C => {
            if n < 2 {
                return Err(bad);
            }
            let mut s: Vec<Vec<Q>> = (0..n - 1)
                .map(|i| eps(n, &[(i, 1), (i + 1, -1)]))
                .collect();
            s.push(eps(n, &[(n - 1, 2)]));
            Ok((s, q_identity(n)))
        }
        CartanType::D => {
            if n < 3 {
                return Err(bad);
            }
            let mut s: Vec<Vec<Q>> = (0..n - 1)
                .map(|i| eps(n, &[(i, 1), (i + 1, -1)]))
                .collect();
            s.push(eps(n, &[(n - 2, 1), (n - 1, 1)]));
            Ok((s, q_identity(n)))
        }
        CartanType::E => {
            if !(6..=8).contains(&n) {
                return Err(bad);
            }
            let g = cartan_matrix_e(n);
            Ok((g.clone(), g))
        }
        CartanType::F => {
            if n != 4 {
                return Err(bad);
            }
            let half = qq(1, 2);
            let s = vec![
                eps(4, &[(1, 1), (2, -1)]),
                eps(4, &[(2, 1), (3, -1)]),
                eps(4, &[(3, 1)]),
                vec![half.clone(), -half.clone(), -half.clone(), -half],
            ];
            Ok((s, q_identity(4)))
        }
        CartanType::G => {
            if n != 2 {
                return Err(bad);
            }
            // Simple-coroot basis; alpha_1 short, alpha_2 long.
            let s = vec![vec![q(2), q(-1)], vec![q(-3), q(2)]];
            let g = vec![vec![q(2), q(-1)], vec![q(-1), qq(2, 3)]];
            Ok((s, g))
        }
    }
}

/// All systems named in the degree-0 constants table.
pub fn table_systems() -> Vec<(CartanType, usize)> {
    let mut v = vec![
        (CartanType::A, 1),
        (CartanType::A, 2),
        (CartanType::A, 3),
        (CartanType::A, 4),
        (CartanType::B, 2),
        (CartanType::B, 3),
        (CartanType::B, 4),
        (CartanType::C, 2),
        (CartanType::C, 3),
        (CartanType::C, 4),
        (CartanType::D, 4),
        (CartanType::F, 4),
        (CartanType::G, 2),
    ];
    v.extend([(CartanType::E, 6), (CartanType::E, 7), (CartanType::E, 8)]);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_has_one_root_of_self_pairing_two() {
        let rs = RootSystem::build(CartanType::A, 1).unwrap();
        assert_eq!(rs.num_positive(), 1);
        assert_eq!(rs.coroot_form(0, 0), q(2));
        assert_eq!(rs.dual_form(&rs.pos_roots[0], &rs.pos_roots[0]), q(2));
    }

    #[test]
    fn a2_positive_roots_close_under_addition() {
        let rs = RootSystem::build(CartanType::A, 2).unwrap();
        assert_eq!(rs.num_positive(), 3);
        let gamma: Vec<Q> = rs.pos_roots[0]
            .iter()
            .zip(&rs.pos_roots[1])
            .map(|(a, b)| a + b)
            .collect();
        assert!(rs.pos_index(&gamma).is_some());
    }

    #[test]
    fn b2_realization_is_epsilon_coordinates() {
        let rs = RootSystem::build(CartanType::B, 2).unwrap();
        assert_eq!(rs.num_positive(), 4);
        let mut roots = rs.pos_roots.clone();
        roots.sort();
        let expected: Vec<Vec<Q>> = vec![
            vec![q(0), q(1)],
            vec![q(1), q(-1)],
            vec![q(1), q(0)],
            vec![q(1), q(1)],
        ];
        assert_eq!(roots, expected);
    }

    #[test]
    fn root_counts_match_standard_values() {
        for (t, n, count) in [
            (CartanType::A, 4, 10),
            (CartanType::B, 3, 9),
            (CartanType::C, 4, 16),
            (CartanType::D, 4, 12),
            (CartanType::F, 4, 24),
            (CartanType::G, 2, 6),
            (CartanType::E, 6, 36),
            (CartanType::E, 7, 63),
            (CartanType::E, 8, 120),
        ] {
            let rs = RootSystem::build(t, n).unwrap();
            assert_eq!(rs.num_positive(), count, "{}{}", t, n);
        }
    }

    #[test]
    fn reflections_permute_roots_and_preserve_form() {
        for (t, n) in [
            (CartanType::A, 2),
            (CartanType::B, 2),
            (CartanType::G, 2),
            (CartanType::F, 4),
        ] {
            let rs = RootSystem::build(t, n).unwrap();
            for i in 0..rs.num_positive() {
                for j in 0..rs.num_positive() {
                    let im = rs.reflect_root(i, &rs.pos_roots[j]);
                    assert!(
                        rs.pos_index(&im).is_some() || rs.is_negative_root(&im),
                        "reflection closure fails for {}{}",
                        t,
                        n
                    );
                }
                // s_alpha is a B-isometry with s^2 = 1.
                let m = rs.reflection_matrix(i);
                let m2 = crate::matrix::q_mat_mul(&m, &m);
                assert_eq!(m2, q_identity(rs.rank));
                let mt = crate::matrix::q_transpose(&m);
                let gm = crate::matrix::q_mat_mul(&crate::matrix::q_mat_mul(&mt, &rs.gram), &m);
                assert_eq!(gm, rs.gram);
            }
        }
    }

    #[test]
    fn crystallographic_pairings_are_integers() {
        for (t, n) in table_systems() {
            let rs = RootSystem::build(t, n).unwrap();
            for i in 0..rs.num_positive() {
                for j in 0..rs.num_positive() {
                    let c = q_dot(&rs.pos_roots[j], &rs.coroots[i]);
                    assert!(c.is_integer(), "{}{}: non-integral Cartan pairing", t, n);
                }
                assert_eq!(q_dot(&rs.pos_roots[i], &rs.coroots[i]), q(2));
            }
        }
    }

    #[test]
    fn a1_negative_pairs_is_diagonal_only() {
        let rs = RootSystem::build(CartanType::A, 1).unwrap();
        assert_eq!(rs.negative_pairs(), vec![(0, 0)]);
    }

    #[test]
    fn a2_negative_pairs() {
        let rs = RootSystem::build(CartanType::A, 2).unwrap();
        let pairs = rs.negative_pairs();
        assert_eq!(pairs.len(), 5);
        // brute-force oracle: all 9 ordered pairs, keep those sent negative
        let mut expected = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if rs.is_negative_root(&rs.reflect_root(i, &rs.pos_roots[j])) {
                    expected.push((i, j));
                }
            }
        }
        assert_eq!(pairs, expected);
        // three diagonal pairs plus (gamma, alpha), (gamma, beta)
        let gamma = 2; // the height-2 root
        assert!(pairs.contains(&(gamma, 0)) && pairs.contains(&(gamma, 1)));
    }

    #[test]
    fn rho_k_values() {
        // A1: rho = k/2 alpha, B(rho, rho) = k^2/2
        let rs = RootSystem::build(CartanType::A, 1).unwrap();
        let expect = Scalar::sym(Sym::k()).pow(2).scale(&qq(1, 2));
        assert_eq!(rs.rho_k_norm(), expect);

        // A2 at k = 1: B(rho, rho) = 2
        let rs = RootSystem::build(CartanType::A, 2).unwrap();
        let v = rs.rho_k_norm().substitute(&rs.bind_all(q(1)));
        assert_eq!(v, Scalar::int(2));

        // B2: rho_k = (k_s/2)(e1 + e2) + (k_l/2)(2 e1)
        let rs = RootSystem::build(CartanType::B, 2).unwrap();
        let rho = rs.rho_k();
        let ks = Scalar::sym(Sym::k_s());
        let kl = Scalar::sym(Sym::k_l());
        assert_eq!(rho[0], &ks.scale(&qq(1, 2)) + &kl);
        assert_eq!(rho[1], ks.scale(&qq(1, 2)));
    }

    #[test]
    fn invalid_pairs_are_rejected() {
        assert!(RootSystem::build(CartanType::B, 1).is_err());
        assert!(RootSystem::build(CartanType::E, 5).is_err());
        assert!(RootSystem::build(CartanType::G, 3).is_err());
        assert!(RootSystem::build(CartanType::F, 3).is_err());
    }
}
